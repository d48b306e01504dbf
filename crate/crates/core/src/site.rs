//! Finite Grothendieck sites given by generating covering families, the
//! plus construction and sheafification of set-valued presheaves.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{builtins, FinCat, Mor, Obj};
use crate::presheaf::{lim, sieve_generated, PresheafMap, SetDiagram, SetPresheaf, Sieve};

/// Points and opens of a finite topological space, when the site comes
/// from one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    pub points: Vec<String>,
    /// The point set of each object of the site.
    pub opens: Vec<BTreeSet<usize>>,
}

impl FiniteSpace {
    /// Connected components of an open, as the components of the
    /// comparability graph of the specialization preorder restricted to it.
    pub fn components(&self, u: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        // x lies in the closure of y when every open containing x contains y
        let special = |x: usize, y: usize| self.opens.iter().all(|o| !o.contains(&x) || o.contains(&y));
        let pts: Vec<usize> = u.iter().copied().collect();
        let mut comp: Vec<usize> = (0..pts.len()).collect();
        loop {
            let mut changed = false;
            for (i, j) in (0..pts.len()).tuple_combinations() {
                if comp[i] != comp[j] && (special(pts[i], pts[j]) || special(pts[j], pts[i])) {
                    let (a, b) = (comp[i].min(comp[j]), comp[i].max(comp[j]));
                    comp.iter_mut().filter(|c| **c == b).for_each(|c| *c = a);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut out: Vec<BTreeSet<usize>> = Vec::new();
        for label in comp.iter().copied().unique() {
            out.push(pts.iter().zip(&comp).filter(|(_, &c)| c == label).map(|(&p, _)| p).collect());
        }
        out
    }
}

/// A finite category with covering sieves given by generating families.
/// A sieve on `x` covers when it is maximal or contains the sieve generated
/// by one of the families listed for `x`.
#[derive(Clone, Debug)]
pub struct FinSite {
    pub cat: Arc<FinCat>,
    pub covers: Vec<Vec<Vec<Mor>>>,
    pub space: Option<FiniteSpace>,
    generated: Vec<Vec<Sieve>>,
    covering: Vec<Vec<Sieve>>,
}

impl FinSite {
    pub fn new(cat: Arc<FinCat>, covers: Vec<Vec<Vec<Mor>>>) -> Result<FinSite> {
        if covers.len() != cat.num_objects() {
            return Err(Error::InvalidSite("one list of covering families per object is required".into()));
        }
        let mut generated = Vec::new();
        for x in cat.objects() {
            let mut g = Vec::new();
            for fam in &covers[x] {
                g.push(sieve_generated(&cat, x, fam)?);
            }
            generated.push(g);
        }
        let covering = cat
            .objects()
            .map(|x| {
                Sieve::all(&cat, x)
                    .into_iter()
                    .filter(|s| s.is_maximal(&cat) || generated[x].iter().any(|g| g.is_subset(s)))
                    .collect()
            })
            .collect();
        Ok(FinSite { cat, covers, space: None, generated, covering })
    }

    /// The coarsest topology: only maximal sieves cover.
    pub fn coarse(cat: Arc<FinCat>) -> FinSite {
        let n = cat.num_objects();
        FinSite::new(cat, vec![Vec::new(); n]).expect("empty cover table")
    }

    /// The site of opens of a finite space ordered by inclusion. The listed
    /// opens must contain `∅` and the whole space and be closed under unions
    /// and intersections. Each open is covered by the inclusion-minimal
    /// families of subopens with union equal to it (`∅` by the empty family).
    pub fn from_opens(points: Vec<String>, opens: Vec<(String, BTreeSet<usize>)>) -> Result<FinSite> {
        let sets: Vec<BTreeSet<usize>> = opens.iter().map(|(_, s)| s.clone()).collect();
        let all: BTreeSet<usize> = (0..points.len()).collect();
        if !sets.contains(&BTreeSet::new()) || !sets.contains(&all) {
            return Err(Error::InvalidSite("opens must include the empty set and the whole space".into()));
        }
        if sets.iter().any(|s| s.iter().any(|&p| p >= points.len())) {
            return Err(Error::InvalidSite("open mentions an unknown point".into()));
        }
        for (a, b) in sets.iter().tuple_combinations() {
            let (i, u) = (a.intersection(b).copied().collect(), a.union(b).copied().collect());
            if !sets.contains(&i) || !sets.contains(&u) {
                return Err(Error::InvalidSite("opens must be closed under unions and intersections".into()));
            }
        }
        let names: Vec<String> = opens.iter().map(|(n, _)| n.clone()).collect();
        let cat = Arc::new(builtins::poset(&names, |i, j| sets[i].is_subset(&sets[j])));
        let mut covers = Vec::new();
        for (x, u) in sets.iter().enumerate() {
            let subs: Vec<usize> = (0..sets.len()).filter(|&v| sets[v].is_subset(u)).collect();
            let mut fams: Vec<Vec<usize>> = Vec::new();
            for k in 0..=subs.len() {
                for fam in subs.iter().copied().combinations(k) {
                    let union: BTreeSet<usize> = fam.iter().flat_map(|&v| sets[v].iter().copied()).collect();
                    if &union != u {
                        continue;
                    }
                    if fams.iter().any(|f| f.iter().all(|v| fam.contains(v))) {
                        continue;
                    }
                    fams.push(fam);
                }
            }
            covers.push(fams.into_iter().map(|fam| fam.iter().map(|&v| cat.hom(v, x)[0]).collect()).collect());
        }
        let mut site = FinSite::new(cat, covers)?;
        site.space = Some(FiniteSpace { points, opens: sets });
        Ok(site)
    }

    pub fn covering_sieves(&self, x: Obj) -> &[Sieve] {
        &self.covering[x]
    }

    pub fn generated_sieves(&self, x: Obj) -> &[Sieve] {
        &self.generated[x]
    }

    pub fn is_covering(&self, s: &Sieve) -> bool {
        s.is_maximal(&self.cat) || self.generated[s.target].iter().any(|g| g.is_subset(s))
    }

    /// The intersection of all covering sieves on `x`; itself covering on a
    /// valid site.
    pub fn minimal_covering(&self, x: Obj) -> Sieve {
        self.covering[x].iter().fold(Sieve::maximal(&self.cat, x), |acc, s| acc.intersect(s))
    }

    /// The object whose points are the intersection, when `cat` is a poset
    /// of opens; in general the meet in the preorder if it exists.
    pub fn meet(&self, a: Obj, b: Obj) -> Option<Obj> {
        let c = &self.cat;
        let lower: Vec<Obj> = c.objects().filter(|&z| !c.hom(z, a).is_empty() && !c.hom(z, b).is_empty()).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&z| !c.hom(z, m).is_empty()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SiteReport {
    pub maximal: Vec<String>,
    pub stability: Vec<String>,
    pub local_character: Vec<String>,
    pub intersection: Vec<String>,
}

impl SiteReport {
    pub fn is_valid(&self) -> bool {
        self.maximal.is_empty() && self.stability.is_empty() && self.local_character.is_empty() && self.intersection.is_empty()
    }
}

/// Checks the topology axioms exhaustively on all sieves.
pub fn check_site(site: &FinSite) -> SiteReport {
    let c = &*site.cat;
    let mut r = SiteReport::default();
    let show = |s: &Sieve| format!("{{{}}}", s.render(c).join(","));
    for x in c.objects() {
        if !site.is_covering(&Sieve::maximal(c, x)) {
            r.maximal.push(c.object_id(x).into());
        }
        for s in site.covering_sieves(x) {
            for f in c.into(x) {
                if !site.is_covering(&s.pullback(c, f)) {
                    r.stability.push(format!("{} pulled back along {}", show(s), c.morphism_id(f)));
                }
            }
        }
        for rs in Sieve::all(c, x) {
            if site.is_covering(&rs) {
                continue;
            }
            for s in site.covering_sieves(x) {
                if s.arrows.iter().all(|&f| site.is_covering(&rs.pullback(c, f))) {
                    r.local_character.push(format!("{} is locally covering on {} but not covering", show(&rs), show(s)));
                    break;
                }
            }
        }
        for (a, b) in site.covering_sieves(x).iter().tuple_combinations() {
            if !site.is_covering(&a.intersect(b)) {
                r.intersection.push(format!("{} ∩ {}", show(a), show(b)));
            }
        }
    }
    r
}

/// Families `(s_f)_{f ∈ S}` with `s_f ∈ F(dom f)` compatible under
/// restriction; components follow the order of `S`'s arrows.
pub fn matching_families(f: &SetPresheaf, s: &Sieve) -> Vec<Vec<usize>> {
    let c = &*f.base;
    let arrows: Vec<Mor> = s.arrows.iter().copied().collect();
    let index: HashMap<Mor, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut d = SetDiagram::new(arrows.iter().map(|&a| f.size(c.src(a))).collect());
    for (i, &a) in arrows.iter().enumerate() {
        for g in c.into(c.src(a)) {
            if !c.is_identity(g) {
                d.arrow(i, index[&c.then(g, a)], f.restrictions[g].clone());
            }
        }
    }
    lim(&d).families
}

/// The canonical map `F(x) → lim_S F`.
pub fn restrict_to_sieve(f: &SetPresheaf, s: &Sieve, a: usize) -> Vec<usize> {
    s.arrows.iter().map(|&g| f.restrict(g, a)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheafFailure {
    pub object: String,
    pub sieve: Vec<String>,
    /// `not_injective` (not separated) or `not_surjective`.
    pub kind: String,
}

/// For every object and every covering sieve, whether `F(x) → lim_S F` is
/// a bijection.
pub fn sheaf_condition(f: &SetPresheaf, site: &FinSite) -> Vec<SheafFailure> {
    let c = &*site.cat;
    let mut out = Vec::new();
    for x in c.objects() {
        for s in site.covering_sieves(x) {
            let fams = matching_families(f, s);
            let images: BTreeSet<Vec<usize>> = (0..f.size(x)).map(|a| restrict_to_sieve(f, s, a)).collect();
            let fail = |kind: &str| SheafFailure { object: c.object_id(x).into(), sieve: s.render(c), kind: kind.into() };
            if images.len() < f.size(x) {
                out.push(fail("not_injective"));
            } else if images.len() < fams.len() {
                out.push(fail("not_surjective"));
            }
        }
    }
    out
}

pub fn is_sheaf(f: &SetPresheaf, site: &FinSite) -> bool {
    sheaf_condition(f, site).is_empty()
}

/// `F⁺` with the canonical map `F → F⁺`.
#[derive(Clone, Debug)]
pub struct Plus {
    pub presheaf: SetPresheaf,
    pub unit: PresheafMap,
    /// The minimal covering sieve used at each object.
    pub sieves: Vec<Sieve>,
}

/// `F⁺(x) = colim_{S covering} lim_S F`, evaluated at the minimal covering
/// sieve, which is cofinal on a valid finite site.
pub fn plus_construction(f: &SetPresheaf, site: &FinSite) -> Result<Plus> {
    let report = check_site(site);
    if !report.is_valid() {
        return Err(Error::InvalidSite(format!("topology axioms fail: {report:?}")));
    }
    let c = &*site.cat;
    let sieves: Vec<Sieve> = c.objects().map(|x| site.minimal_covering(x)).collect();
    let fams: Vec<Vec<Vec<usize>>> = sieves.iter().map(|s| matching_families(f, s)).collect();
    let fam_index: Vec<HashMap<&Vec<usize>, usize>> =
        fams.iter().map(|fs| fs.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let pos: Vec<HashMap<Mor, usize>> =
        sieves.iter().map(|s| s.arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect()).collect();
    let elements = c
        .objects()
        .map(|x| {
            fams[x]
                .iter()
                .map(|fam| {
                    let parts = sieves[x].arrows.iter().zip(fam).map(|(&g, &v)| f.element_name(c.src(g), v));
                    format!("({})", parts.into_iter().join(","))
                })
                .collect()
        })
        .collect();
    let mut restrictions = Vec::with_capacity(c.num_morphisms());
    for h in c.morphisms() {
        let (x0, x1) = (c.src(h), c.tgt(h));
        let mut r = Vec::with_capacity(fams[x1].len());
        for fam in &fams[x1] {
            let t: Vec<usize> = sieves[x0]
                .arrows
                .iter()
                .map(|&g| {
                    let k = pos[x1].get(&c.then(g, h)).ok_or_else(|| {
                        Error::InvalidSite(format!("minimal sieves are not stable along {}", c.morphism_id(h)))
                    })?;
                    Ok(fam[*k])
                })
                .collect::<Result<_>>()?;
            r.push(fam_index[x0][&t]);
        }
        restrictions.push(r);
    }
    let presheaf = SetPresheaf { base: site.cat.clone(), elements, restrictions };
    let unit = PresheafMap {
        components: c
            .objects()
            .map(|x| (0..f.size(x)).map(|a| fam_index[x][&restrict_to_sieve(f, &sieves[x], a)]).collect())
            .collect(),
    };
    Ok(Plus { presheaf, unit, sieves })
}

/// Two passes of the plus construction, with the composite map `F → F⁺⁺`.
pub fn sheafify(f: &SetPresheaf, site: &FinSite) -> Result<(SetPresheaf, PresheafMap)> {
    let p1 = plus_construction(f, site)?;
    let p2 = plus_construction(&p1.presheaf, site)?;
    Ok((p2.presheaf, p1.unit.then(&p2.unit)))
}
