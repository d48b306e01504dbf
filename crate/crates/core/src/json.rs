//! JSON schemas for inputs and the conversions to and from library types.
//! Everything is keyed by string ids; maps are `BTreeMap`s so that output
//! has a stable key order.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::descent::{CosimplicialCat, GrpdPresheaf};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, Functor};
use crate::grothendieck::{CatPresheaf, PseudoFunctor};
use crate::group::FiniteGroup;
use crate::presheaf::SetPresheaf;
use crate::reedy::ReedyCat;
use crate::simplicial::TruncSimpSet;
use crate::site::{FinSite, FiniteSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A category by its full composition table: `compose` lists `[f, g, f;g]`
/// for every composable pair, identities included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

impl CategoryJson {
    pub fn from_cat(c: &FinCat) -> CategoryJson {
        let mut compose: Vec<[String; 3]> = c
            .compose_table()
            .iter()
            .map(|(&(f, g), &h)| [c.morphism_id(f).to_string(), c.morphism_id(g).to_string(), c.morphism_id(h).to_string()])
            .collect();
        compose.sort();
        CategoryJson {
            objects: c.object_ids().to_vec(),
            morphisms: c
                .morphisms()
                .map(|f| MorphismJson { id: c.morphism_id(f).into(), src: c.object_id(c.src(f)).into(), tgt: c.object_id(c.tgt(f)).into() })
                .collect(),
            identities: c.objects().map(|x| (c.object_id(x).to_string(), c.morphism_id(c.id(x)).to_string())).collect(),
            compose,
        }
    }

    /// Builds the category and checks every axiom.
    pub fn build(&self) -> Result<FinCat> {
        let morphisms = self.morphisms.iter().map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone())).collect();
        let compose: BTreeMap<(String, String), String> = self.compose.iter().map(|[f, g, h]| ((f.clone(), g.clone()), h.clone())).collect();
        let c = FinCat::from_named(self.objects.clone(), morphisms, &self.identities, &compose)?;
        if let Some(v) = c.check().violations.first() {
            return Err(Error::Malformed(format!("category axiom fails: {v:?}")));
        }
        Ok(c)
    }
}

/// Object and morphism assignments of a functor between known categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMapJson {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

impl FunctorMapJson {
    pub fn from_functor(f: &Functor) -> FunctorMapJson {
        FunctorMapJson {
            objects: f.src.objects().map(|x| (f.src.object_id(x).to_string(), f.tgt.object_id(f.obj(x)).to_string())).collect(),
            morphisms: f.src.morphisms().map(|m| (f.src.morphism_id(m).to_string(), f.tgt.morphism_id(f.mor(m)).to_string())).collect(),
        }
    }

    pub fn build(&self, src: &Arc<FinCat>, tgt: &Arc<FinCat>) -> Result<Functor> {
        let lookup = |map: &BTreeMap<String, String>, key: &str| map.get(key).cloned().ok_or_else(|| Error::Malformed(format!("functor misses `{key}`")));
        let omap = src.objects().map(|x| tgt.object(&lookup(&self.objects, src.object_id(x))?)).collect::<Result<Vec<_>>>()?;
        let mmap = src.morphisms().map(|m| tgt.morphism(&lookup(&self.morphisms, src.morphism_id(m))?)).collect::<Result<Vec<_>>>()?;
        let f = Functor::new(src.clone(), tgt.clone(), omap, mmap)?;
        if let Some(v) = f.violations().first() {
            return Err(Error::Malformed(format!("not a functor: {v:?}")));
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub src: CategoryJson,
    pub tgt: CategoryJson,
    #[serde(flatten)]
    pub map: FunctorMapJson,
}

impl FunctorJson {
    pub fn from_functor(f: &Functor) -> FunctorJson {
        FunctorJson { src: CategoryJson::from_cat(&f.src), tgt: CategoryJson::from_cat(&f.tgt), map: FunctorMapJson::from_functor(f) }
    }

    pub fn build(&self) -> Result<Functor> {
        self.map.build(&Arc::new(self.src.build()?), &Arc::new(self.tgt.build()?))
    }
}

/// One level of a truncated simplicial set: `faces[i][x] = d_i x` and
/// `degeneracies[j][x] = s_j x`, by index into the neighbouring level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelJson {
    pub cells: Vec<String>,
    #[serde(default)]
    pub faces: Vec<Vec<usize>>,
    #[serde(default)]
    pub degeneracies: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpSetJson {
    pub levels: Vec<LevelJson>,
}

impl SimpSetJson {
    pub fn from_sset(x: &TruncSimpSet) -> SimpSetJson {
        SimpSetJson {
            levels: (0..=x.trunc())
                .map(|p| LevelJson { cells: x.names(p).to_vec(), faces: x.face_table(p).to_vec(), degeneracies: x.degen_table(p).to_vec() })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<TruncSimpSet> {
        TruncSimpSet::from_tables(
            self.levels.iter().map(|l| l.cells.clone()).collect(),
            self.levels.iter().map(|l| l.faces.clone()).collect(),
            self.levels.iter().map(|l| l.degeneracies.clone()).collect(),
        )
    }
}

/// A presheaf of sets: along `f: x → y`, `restrictions[f]` lists the image
/// in `F(x)` of each element of `F(y)`, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafJson {
    pub base: CategoryJson,
    pub elements: BTreeMap<String, Vec<String>>,
    pub restrictions: BTreeMap<String, Vec<String>>,
}

impl PresheafJson {
    pub fn from_presheaf(f: &SetPresheaf) -> PresheafJson {
        let c = &f.base;
        PresheafJson {
            base: CategoryJson::from_cat(c),
            elements: c.objects().map(|x| (c.object_id(x).to_string(), f.elements[x].clone())).collect(),
            restrictions: c
                .morphisms()
                .map(|m| (c.morphism_id(m).to_string(), f.restrictions[m].iter().map(|&a| f.elements[c.src(m)][a].clone()).collect()))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<SetPresheaf> {
        self.build_on(Arc::new(self.base.build()?))
    }

    pub fn build_on(&self, base: Arc<FinCat>) -> Result<SetPresheaf> {
        let c = &base;
        let elements: Vec<Vec<String>> = c
            .objects()
            .map(|x| self.elements.get(c.object_id(x)).cloned().ok_or_else(|| Error::Malformed(format!("no elements over `{}`", c.object_id(x)))))
            .collect::<Result<_>>()?;
        let mut restrictions = Vec::new();
        for m in c.morphisms() {
            let images = self.restrictions.get(c.morphism_id(m)).ok_or_else(|| Error::UnknownMorphism(c.morphism_id(m).into()))?;
            let src = &elements[c.src(m)];
            let r = images
                .iter()
                .map(|e| src.iter().position(|n| n == e).ok_or_else(|| Error::Malformed(format!("`{e}` is not an element over the source of `{}`", c.morphism_id(m)))))
                .collect::<Result<Vec<_>>>()?;
            restrictions.push(r);
        }
        SetPresheaf::new(base, elements, restrictions)
    }
}

/// A presheaf of categories: `fibers` by object id, and one functor per
/// morphism. Covariant for [`CatPresheaf`], contravariant for [`GrpdPresheaf`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatPresheafJson {
    pub base: CategoryJson,
    pub fibers: BTreeMap<String, CategoryJson>,
    pub restrictions: BTreeMap<String, FunctorMapJson>,
}

type Parts = (Arc<FinCat>, Vec<Arc<FinCat>>, Vec<Functor>);

impl CatPresheafJson {
    fn from_parts(base: &FinCat, fibers: &[Arc<FinCat>], restrictions: &[Functor]) -> CatPresheafJson {
        CatPresheafJson {
            base: CategoryJson::from_cat(base),
            fibers: base.objects().map(|x| (base.object_id(x).to_string(), CategoryJson::from_cat(&fibers[x]))).collect(),
            restrictions: base.morphisms().map(|m| (base.morphism_id(m).to_string(), FunctorMapJson::from_functor(&restrictions[m]))).collect(),
        }
    }

    fn parts(&self, base: Arc<FinCat>, covariant: bool) -> Result<Parts> {
        let fibers: Vec<Arc<FinCat>> = base
            .objects()
            .map(|x| {
                let j = self.fibers.get(base.object_id(x)).ok_or_else(|| Error::Malformed(format!("no fiber over `{}`", base.object_id(x))))?;
                Ok(Arc::new(j.build()?))
            })
            .collect::<Result<_>>()?;
        let restrictions = base
            .morphisms()
            .map(|m| {
                let j = self.restrictions.get(base.morphism_id(m)).ok_or_else(|| Error::UnknownMorphism(base.morphism_id(m).into()))?;
                let (s, t) = if covariant { (base.src(m), base.tgt(m)) } else { (base.tgt(m), base.src(m)) };
                j.build(&fibers[s], &fibers[t])
            })
            .collect::<Result<_>>()?;
        Ok((base, fibers, restrictions))
    }

    pub fn from_cat_presheaf(a: &CatPresheaf) -> CatPresheafJson {
        CatPresheafJson::from_parts(&a.base, &a.fibers, &a.restrictions)
    }

    pub fn from_grpd_presheaf(f: &GrpdPresheaf) -> CatPresheafJson {
        CatPresheafJson::from_parts(&f.base, &f.fibers, &f.restrictions)
    }

    pub fn build_cat_presheaf(&self) -> Result<CatPresheaf> {
        let (b, f, r) = self.parts(Arc::new(self.base.build()?), true)?;
        CatPresheaf::new(b, f, r)
    }

    pub fn build_grpd_presheaf_on(&self, base: Arc<FinCat>) -> Result<GrpdPresheaf> {
        if CategoryJson::from_cat(&base) != self.base && self.base.build()? != *base {
            return Err(Error::Malformed("presheaf base differs from the site category".into()));
        }
        let (b, f, r) = self.parts(base, false)?;
        GrpdPresheaf::new(b, f, r)
    }
}

/// A pseudofunctor: a presheaf of categories with coherence cells, keyed by
/// fiber object id. Omitted cells are identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PseudoFunctorJson {
    #[serde(flatten)]
    pub presheaf: CatPresheafJson,
    #[serde(default)]
    pub unit: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub gamma: Vec<GammaJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaJson {
    pub first: String,
    pub then: String,
    pub cells: BTreeMap<String, String>,
}

impl PseudoFunctorJson {
    /// Records only the cells that are not identities.
    pub fn from_pseudo(p: &PseudoFunctor) -> PseudoFunctorJson {
        let b = &p.base;
        let presheaf = CatPresheafJson::from_parts(b, &p.fibers, &p.restrictions);
        let mut unit = BTreeMap::new();
        for x in b.objects() {
            let fib = &p.fibers[x];
            let cells: BTreeMap<String, String> = fib
                .objects()
                .filter(|&a| !fib.is_identity(p.unit[x][a]))
                .map(|a| (fib.object_id(a).to_string(), fib.morphism_id(p.unit[x][a]).to_string()))
                .collect();
            if !cells.is_empty() {
                unit.insert(b.object_id(x).to_string(), cells);
            }
        }
        let mut gamma = Vec::new();
        for (&(f, g), cells) in &p.gamma {
            let (src, tgt) = (&p.fibers[b.src(f)], &p.fibers[b.tgt(g)]);
            let cells: BTreeMap<String, String> = src
                .objects()
                .filter(|&a| !tgt.is_identity(cells[a]))
                .map(|a| (src.object_id(a).to_string(), tgt.morphism_id(cells[a]).to_string()))
                .collect();
            if !cells.is_empty() {
                gamma.push(GammaJson { first: b.morphism_id(f).into(), then: b.morphism_id(g).into(), cells });
            }
        }
        PseudoFunctorJson { presheaf, unit, gamma }
    }

    pub fn build(&self) -> Result<PseudoFunctor> {
        let (base, fibers, restrictions) = self.presheaf.parts(Arc::new(self.presheaf.base.build()?), true)?;
        let strict = CatPresheaf { base: base.clone(), fibers, restrictions };
        let mut p = PseudoFunctor::from_strict(&strict);
        for (x, cells) in &self.unit {
            let x = base.object(x)?;
            let fib = &p.fibers[x];
            for (a, m) in cells {
                p.unit[x][fib.object(a)?] = fib.morphism(m)?;
            }
        }
        for g in &self.gamma {
            let (f, h) = (base.morphism(&g.first)?, base.morphism(&g.then)?);
            let key = (f, h);
            let (src, tgt) = (p.fibers[base.src(f)].clone(), p.fibers[base.tgt(h)].clone());
            let row = p.gamma.get_mut(&key).ok_or_else(|| Error::Malformed(format!("`{}` and `{}` do not compose", g.first, g.then)))?;
            for (a, m) in &g.cells {
                row[src.object(a)?] = tgt.morphism(m)?;
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenJson {
    pub name: String,
    pub points: Vec<String>,
}

/// A site, either as the opens of a finite space or as a category with
/// covering families by morphism id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SiteJson {
    Opens { points: Vec<String>, opens: Vec<OpenJson> },
    Covers { category: CategoryJson, covers: BTreeMap<String, Vec<Vec<String>>> },
}

impl SiteJson {
    pub fn from_site(s: &FinSite) -> SiteJson {
        let c = &s.cat;
        match &s.space {
            Some(FiniteSpace { points, opens }) => SiteJson::Opens {
                points: points.clone(),
                opens: opens
                    .iter()
                    .enumerate()
                    .map(|(x, u)| OpenJson { name: c.object_id(x).into(), points: u.iter().map(|&p| points[p].clone()).collect() })
                    .collect(),
            },
            None => SiteJson::Covers {
                category: CategoryJson::from_cat(c),
                covers: c
                    .objects()
                    .map(|x| {
                        let fams = s.covers[x].iter().map(|fam| fam.iter().map(|&f| c.morphism_id(f).to_string()).collect()).collect();
                        (c.object_id(x).to_string(), fams)
                    })
                    .collect(),
            },
        }
    }

    pub fn build(&self) -> Result<FinSite> {
        match self {
            SiteJson::Opens { points, opens } => {
                let index = |p: &String| points.iter().position(|q| q == p).ok_or_else(|| Error::InvalidSite(format!("unknown point `{p}`")));
                let opens = opens
                    .iter()
                    .map(|o| Ok((o.name.clone(), o.points.iter().map(index).collect::<Result<BTreeSet<usize>>>()?)))
                    .collect::<Result<Vec<_>>>()?;
                FinSite::from_opens(points.clone(), opens)
            }
            SiteJson::Covers { category, covers } => {
                let c = Arc::new(category.build()?);
                for key in covers.keys() {
                    c.object(key)?;
                }
                let table = c
                    .objects()
                    .map(|x| {
                        covers
                            .get(c.object_id(x))
                            .map(|fams| fams.iter().map(|fam| fam.iter().map(|f| c.morphism(f)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
                            .unwrap_or(Ok(Vec::new()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                FinSite::new(c, table)
            }
        }
    }
}

/// A finite group: `Z/n`, `S3`, or an explicit table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Named(String),
    Table { elements: Vec<String>, table: Vec<Vec<usize>> },
}

impl GroupJson {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupJson::Named(n) if n == "S3" => Ok(FiniteGroup::symmetric3()),
            GroupJson::Named(n) => match n.strip_prefix("Z/").and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if k > 0 => Ok(FiniteGroup::cyclic(k)),
                _ => Err(Error::Malformed(format!("unknown group `{n}`"))),
            },
            GroupJson::Table { elements, table } => FiniteGroup::from_table(elements.clone(), table.clone()),
        }
    }
}

/// A presheaf of groupoids on a site, explicitly or by a standard recipe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrpdPresheafJson {
    Table(CatPresheafJson),
    Terminal,
    ConstantDelooping { group: GroupJson },
    SheafifiedDelooping { group: GroupJson },
    Discrete { presheaf: PresheafJson },
}

impl GrpdPresheafJson {
    pub fn build(&self, site: &FinSite) -> Result<GrpdPresheaf> {
        match self {
            GrpdPresheafJson::Table(t) => t.build_grpd_presheaf_on(site.cat.clone()),
            GrpdPresheafJson::Terminal => Ok(GrpdPresheaf::terminal(site.cat.clone())),
            GrpdPresheafJson::ConstantDelooping { group } => Ok(GrpdPresheaf::constant_delooping(site.cat.clone(), &group.build()?)),
            GrpdPresheafJson::SheafifiedDelooping { group } => GrpdPresheaf::sheafified_delooping(site, &group.build()?),
            GrpdPresheafJson::Discrete { presheaf } => Ok(GrpdPresheaf::discrete(&presheaf.build_on(site.cat.clone())?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReedyJson {
    pub category: CategoryJson,
    pub degree: BTreeMap<String, usize>,
    pub direct: Vec<String>,
    pub inverse: Vec<String>,
}

impl ReedyJson {
    pub fn from_reedy(r: &ReedyCat) -> ReedyJson {
        let c = &r.cat;
        let ids = |pred: &dyn Fn(usize) -> bool| c.morphisms().filter(|&m| pred(m)).map(|m| c.morphism_id(m).to_string()).collect();
        ReedyJson {
            category: CategoryJson::from_cat(c),
            degree: c.objects().map(|x| (c.object_id(x).to_string(), r.degree[x])).collect(),
            direct: ids(&|m| r.is_direct(m)),
            inverse: ids(&|m| r.is_inverse(m)),
        }
    }

    pub fn build(&self) -> Result<ReedyCat> {
        let c = Arc::new(self.category.build()?);
        let degree = c.objects().map(|x| self.degree.get(c.object_id(x)).copied().ok_or_else(|| Error::Malformed(format!("no degree for `{}`", c.object_id(x))))).collect::<Result<Vec<_>>>()?;
        let direct = self.direct.iter().map(|m| c.morphism(m)).collect::<Result<Vec<_>>>()?;
        let inverse = self.inverse.iter().map(|m| c.morphism(m)).collect::<Result<Vec<_>>>()?;
        ReedyCat::new(c, degree, direct, inverse)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosimplicialJson {
    pub levels: [CategoryJson; 3],
    pub d1: [FunctorMapJson; 2],
    pub d2: [FunctorMapJson; 3],
    pub s0: FunctorMapJson,
}

impl CosimplicialJson {
    pub fn from_cosimplicial(a: &CosimplicialCat) -> CosimplicialJson {
        CosimplicialJson {
            levels: a.levels.clone().map(|c| CategoryJson::from_cat(&c)),
            d1: a.d1.clone().map(|f| FunctorMapJson::from_functor(&f)),
            d2: a.d2.clone().map(|f| FunctorMapJson::from_functor(&f)),
            s0: FunctorMapJson::from_functor(&a.s0),
        }
    }

    pub fn build(&self) -> Result<CosimplicialCat> {
        let [a0, a1, a2] = [&self.levels[0], &self.levels[1], &self.levels[2]].map(|c| c.build().map(Arc::new));
        let (a0, a1, a2) = (a0?, a1?, a2?);
        let d1 = [self.d1[0].build(&a0, &a1)?, self.d1[1].build(&a0, &a1)?];
        let d2 = [self.d2[0].build(&a1, &a2)?, self.d2[1].build(&a1, &a2)?, self.d2[2].build(&a1, &a2)?];
        let s0 = self.s0.build(&a1, &a0)?;
        CosimplicialCat::new([a0, a1, a2], d1, d2, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(v: &T) {
        let text = serde_json::to_string(v).unwrap();
        assert_eq!(&serde_json::from_str::<T>(&text).unwrap(), v);
    }

    #[test]
    fn categories_round_trip() {
        for (_, c) in corpus::categories() {
            let j = CategoryJson::from_cat(&c);
            round_trip(&j);
            assert_eq!(j.build().unwrap(), c);
        }
    }

    #[test]
    fn sites_round_trip() {
        for (_, s) in corpus::sites() {
            let j = SiteJson::from_site(&s);
            round_trip(&j);
            let t = j.build().unwrap();
            assert_eq!(*t.cat, *s.cat);
            assert_eq!(t.covers, s.covers);
        }
    }

    #[test]
    fn pseudofunctor_round_trip() {
        let p = corpus::twisted_associator();
        let j = PseudoFunctorJson::from_pseudo(&p);
        round_trip(&j);
        assert_eq!(j.gamma.len(), 1);
        let q = j.build().unwrap();
        assert_eq!(q.gamma, p.gamma);
    }

    #[test]
    fn presheaves_round_trip() {
        let s = corpus::pseudo_circle_site();
        for (_, f) in corpus::grpd_presheaves(&s) {
            let j = GrpdPresheafJson::Table(CatPresheafJson::from_grpd_presheaf(&f));
            round_trip(&j);
            let g = j.build(&s).unwrap();
            assert_eq!(g.fibers.len(), f.fibers.len());
            assert!(g.fibers.iter().zip(&f.fibers).all(|(a, b)| a == b));
        }
        let named: GrpdPresheafJson = serde_json::from_str(r#"{"kind":"sheafified_delooping","group":"Z/2"}"#).unwrap();
        assert!(named.build(&s).is_ok());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<MorphismJson>(r#"{"id":"f","src":"a","tgt":"b","extra":1}"#).is_err());
    }
}
