use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::sections::{pseudo_sections, Section, SectionKind, Sections};
use super::CatPresheaf;
use crate::error::{Error, Result};
use crate::fincat::{build_category, check_equivalence, EquivalenceVerdict, FinCat, Functor, Labeled, Mor, Obj};

/// A pseudofunctor `Y → Cat`: restriction functors with invertible cells
/// `unit_y: 1 ⇒ res(id_y)` and `gamma_{f,g}: res_g ∘ res_f ⇒ res_{f;g}`.
#[derive(Clone, Debug)]
pub struct PseudoFunctor {
    pub base: Arc<FinCat>,
    pub fibers: Vec<Arc<FinCat>>,
    pub restrictions: Vec<Functor>,
    /// `unit[y][a]: a → res_{id_y}(a)`.
    pub unit: Vec<Vec<Mor>>,
    /// `gamma[(f, g)][a]: res_g(res_f(a)) → res_{f;g}(a)`, for every composable pair.
    pub gamma: BTreeMap<(Mor, Mor), Vec<Mor>>,
}

impl PseudoFunctor {
    /// A strict presheaf with identity coherence cells.
    pub fn from_strict(a: &CatPresheaf) -> PseudoFunctor {
        let y = &*a.base;
        let unit = y.objects().map(|p| a.fibers[p].objects().map(|o| a.fibers[p].id(o)).collect()).collect();
        let mut gamma = BTreeMap::new();
        for f in y.morphisms() {
            for g in y.out_of(y.tgt(f)) {
                let fib = &a.fibers[y.tgt(g)];
                gamma.insert((f, g), a.fibers[y.src(f)].objects().map(|o| fib.id(a.res(f).then(a.res(g)).obj(o))).collect());
            }
        }
        PseudoFunctor { base: a.base.clone(), fibers: a.fibers.clone(), restrictions: a.restrictions.clone(), unit, gamma }
    }

    pub fn res(&self, f: Mor) -> &Functor {
        &self.restrictions[f]
    }

    pub fn gamma(&self, f: Mor, g: Mor, a: Obj) -> Mor {
        self.gamma[&(f, g)][a]
    }

    /// All failures of typing, invertibility, naturality, associativity and
    /// unit coherence, each naming its witness.
    pub fn violations(&self) -> Vec<String> {
        let y = &*self.base;
        let name = |f: Mor| y.morphism_id(f).to_string();
        let mut out = Vec::new();
        if self.fibers.len() != y.num_objects() || self.restrictions.len() != y.num_morphisms() || self.unit.len() != y.num_objects() {
            return vec!["one fiber and unit per object and one functor per morphism are required".into()];
        }
        for f in y.morphisms() {
            let r = self.res(f);
            if *r.src != *self.fibers[y.src(f)] || *r.tgt != *self.fibers[y.tgt(f)] || !r.is_valid() {
                out.push(format!("restriction along {} is not a functor between the fibers", name(f)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // a cell is a family of invertible arrows between two functors, natural in the argument
        let cell_ok = |fib: &FinCat, src: &Functor, tgt: &Functor, comps: &[Mor]| {
            let dom = &*src.src;
            comps.len() == dom.num_objects()
                && dom.objects().all(|o| {
                    let c = comps[o];
                    fib.src(c) == src.obj(o) && fib.tgt(c) == tgt.obj(o) && fib.is_iso(c)
                })
                && dom.morphisms().all(|m| fib.then(src.mor(m), comps[dom.tgt(m)]) == fib.then(comps[dom.src(m)], tgt.mor(m)))
        };
        for p in y.objects() {
            let fib = &*self.fibers[p];
            if !cell_ok(fib, &Functor::identity(self.fibers[p].clone()), self.res(y.id(p)), &self.unit[p]) {
                out.push(format!("unit at {} is not a natural isomorphism", y.object_id(p)));
            }
        }
        for f in y.morphisms() {
            for g in y.out_of(y.tgt(f)) {
                let ok = self.gamma.get(&(f, g)).is_some_and(|comps| {
                    cell_ok(&self.fibers[y.tgt(g)], &self.res(f).then(self.res(g)), self.res(y.then(f, g)), comps)
                });
                if !ok {
                    out.push(format!("gamma({}, {}) is missing or not a natural isomorphism", name(f), name(g)));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in y.morphisms() {
            for g in y.out_of(y.tgt(f)) {
                for h in y.out_of(y.tgt(g)) {
                    let fib = &*self.fibers[y.tgt(h)];
                    let (fg, gh) = (y.then(f, g), y.then(g, h));
                    let ok = self.fibers[y.src(f)].objects().all(|a| {
                        let lhs = fib.then(self.res(h).mor(self.gamma(f, g, a)), self.gamma(fg, h, a));
                        let rhs = fib.then(self.gamma(g, h, self.res(f).obj(a)), self.gamma(f, gh, a));
                        lhs == rhs
                    });
                    if !ok {
                        out.push(format!("associativity fails on ({}, {}, {})", name(f), name(g), name(h)));
                    }
                }
            }
        }
        for f in y.morphisms() {
            let (p, q) = (y.src(f), y.tgt(f));
            let fib = &*self.fibers[q];
            let ok = self.fibers[p].objects().all(|a| {
                let fa = self.res(f).obj(a);
                let left = fib.then(self.res(f).mor(self.unit[p][a]), self.gamma(y.id(p), f, a));
                let right = fib.then(self.unit[q][fa], self.gamma(f, y.id(q), a));
                left == fib.id(fa) && right == fib.id(fa)
            });
            if !ok {
                out.push(format!("unit coherence fails along {}", name(f)));
            }
        }
        out
    }

    pub fn is_coherent(&self) -> bool {
        self.violations().is_empty()
    }

    /// `P ∘ F` for a functor `F: B → Y`.
    pub fn pull_back(&self, along: &Functor) -> PseudoFunctor {
        let b = &*along.src;
        let fibers = b.objects().map(|p| self.fibers[along.obj(p)].clone()).collect();
        let restrictions = b.morphisms().map(|k| self.restrictions[along.mor(k)].clone()).collect();
        let unit = b.objects().map(|p| self.unit[along.obj(p)].clone()).collect();
        let mut gamma = BTreeMap::new();
        for k in b.morphisms() {
            for l in b.out_of(b.tgt(k)) {
                gamma.insert((k, l), self.gamma[&(along.mor(k), along.mor(l))].clone());
            }
        }
        PseudoFunctor { base: along.src.clone(), fibers, restrictions, unit, gamma }
    }
}

/// A strict presheaf with, at each object, the comparison `P(y) → G(y)` and
/// its equivalence verdict.
#[derive(Clone, Debug)]
pub struct Strictification {
    pub presheaf: CatPresheaf,
    pub comparisons: Vec<Functor>,
    pub verdicts: Vec<EquivalenceVerdict>,
}

impl Strictification {
    pub fn all_equivalences(&self) -> bool {
        self.verdicts.iter().all(|v| v.is_equivalence())
    }
}

fn coslice(y: &FinCat, at: Obj) -> Labeled<Mor, Mor> {
    build_category(
        y.out_of(at).collect(),
        |&u, &v| y.hom(y.tgt(u), y.tgt(v)).iter().copied().filter(|&k| y.then(u, k) == v).collect(),
        |&u| y.id(y.tgt(u)),
        |_, _, _, &k, &l| y.then(k, l),
        |&u| y.morphism_id(u).to_string(),
        |&u, _, &k| format!("{}@{}", y.morphism_id(k), y.morphism_id(u)),
    )
    .expect("coslices are categories")
}

/// `G(y)` is the category of eq-sections of `P` pulled back to the coslice
/// `y/Y`; along `g: y → y'` it acts by precomposition with `u ↦ g;u`, which is
/// strictly functorial. The comparison sends `a` to `(res_u a)_u` with
/// transition cells `gamma`.
pub fn strictify(p: &PseudoFunctor) -> Result<Strictification> {
    if let Some(v) = p.violations().into_iter().next() {
        return Err(Error::Incoherent(v));
    }
    let y = &*p.base;
    let slices: Vec<Labeled<Mor, Mor>> = y.objects().map(|at| coslice(y, at)).collect();
    let mut fibers: Vec<Sections> = Vec::new();
    for s in &slices {
        let cat = Arc::new(s.cat.clone());
        let proj = Functor::from_fn(cat.clone(), p.base.clone(), |o| y.tgt(s.objs[o]), |m| s.mors[m]);
        fibers.push(pseudo_sections(&p.pull_back(&proj), SectionKind::Eq));
    }
    let index: Vec<HashMap<&Section, Obj>> =
        fibers.iter().map(|f| f.sections.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let hom_index: Vec<HashMap<(Obj, Obj, &Vec<Mor>), Mor>> = fibers
        .iter()
        .map(|f| f.cat.morphisms().map(|m| ((f.cat.src(m), f.cat.tgt(m), &f.components[m]), m)).collect())
        .collect();

    let mut restrictions = Vec::new();
    for g in y.morphisms() {
        let (from, to) = (y.src(g), y.tgt(g));
        let (sf, st) = (&slices[from], &slices[to]);
        // objects and arrows of y'/Y sent into y/Y
        let obj_map: Vec<Obj> = st.objs.iter().map(|&u| sf.obj(&y.then(g, u)).expect("precomposite")).collect();
        let mor_map: Vec<Mor> = st
            .cat
            .morphisms()
            .map(|k| sf.mor(obj_map[st.cat.src(k)], obj_map[st.cat.tgt(k)], &st.mors[k]).expect("same arrow"))
            .collect();
        let pull = |s: &Section| Section {
            objects: obj_map.iter().map(|&o| s.objects[o]).collect(),
            arrows: mor_map.iter().map(|&m| s.arrows[m]).collect(),
        };
        let omap: Vec<Obj> = fibers[from].sections.iter().map(|s| index[to][&pull(s)]).collect();
        let fc = &fibers[from].cat;
        let mmap: Vec<Mor> = fc
            .morphisms()
            .map(|m| {
                let comps: Vec<Mor> = obj_map.iter().map(|&o| fibers[from].components[m][o]).collect();
                hom_index[to][&(omap[fc.src(m)], omap[fc.tgt(m)], &comps)]
            })
            .collect();
        restrictions.push(Functor::new(fibers[from].cat.clone(), fibers[to].cat.clone(), omap, mmap)?);
    }
    let presheaf = CatPresheaf::new(p.base.clone(), fibers.iter().map(|f| f.cat.clone()).collect(), restrictions)?;

    let mut comparisons = Vec::new();
    for (at, s) in slices.iter().enumerate() {
        let fib = &*p.fibers[at];
        let section_of = |a: Obj| Section {
            objects: s.objs.iter().map(|&u| p.res(u).obj(a)).collect(),
            arrows: s.cat.morphisms().map(|k| p.gamma(s.objs[s.cat.src(k)], s.mors[k], a)).collect(),
        };
        let omap: Vec<Obj> = fib.objects().map(|a| index[at][&section_of(a)]).collect();
        let mmap: Vec<Mor> = fib
            .morphisms()
            .map(|r| {
                let comps: Vec<Mor> = s.objs.iter().map(|&u| p.res(u).mor(r)).collect();
                hom_index[at][&(omap[fib.src(r)], omap[fib.tgt(r)], &comps)]
            })
            .collect();
        comparisons.push(Functor::new(p.fibers[at].clone(), fibers[at].cat.clone(), omap, mmap)?);
    }
    let verdicts = comparisons.iter().map(check_equivalence).collect();
    Ok(Strictification { presheaf, comparisons, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twisted(n: usize, pairs: &[(&str, &str)]) -> PseudoFunctor {
        crate::corpus::twisted_pseudofunctor(n, pairs)
    }

    #[test]
    fn strict_input_is_coherent() {
        assert!(twisted(2, &[]).is_coherent());
        let s = strictify(&twisted(2, &[])).unwrap();
        assert!(s.all_equivalences());
    }

    #[test]
    fn twisted_associator_strictifies() {
        let p = twisted(2, &[("0->1", "1->2")]);
        assert!(p.is_coherent());
        let s = strictify(&p).unwrap();
        assert!(s.presheaf.violations().is_empty());
        assert_eq!(s.verdicts.len(), 3);
        assert!(s.all_equivalences());
    }

    #[test]
    fn corrupted_associativity_names_the_triple() {
        let p = twisted(3, &[("0->1", "1->2")]);
        let v = p.violations();
        assert!(v.iter().any(|m| m.contains("(0->1, 1->2, 2->3)")), "{v:?}");
        assert!(matches!(strictify(&p), Err(Error::Incoherent(_))));
    }
}
