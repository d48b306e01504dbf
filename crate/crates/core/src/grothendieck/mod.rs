//! Presheaves of finite categories over a finite base (covariant), the
//! Grothendieck construction, sections and strictification.

mod pseudo;
mod sections;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{build_category, FinCat, Functor, Mor, Obj};
use crate::presheaf::SetPresheaf;

pub use pseudo::{strictify, PseudoFunctor, Strictification};
pub(crate) use sections::{enumerate_sections, section_category};
pub use sections::{
    eq_sections, evaluation, gamma_vs_eq_sections, pseudo_sections, sections, strict_sections, Section, SectionKind, Sections,
};

/// A strict functor `A: Y → Cat`; along `f: y → z` the restriction is a
/// functor `A(y) → A(z)`.
#[derive(Clone, Debug)]
pub struct CatPresheaf {
    pub base: Arc<FinCat>,
    pub fibers: Vec<Arc<FinCat>>,
    pub restrictions: Vec<Functor>,
}

impl CatPresheaf {
    pub fn new(base: Arc<FinCat>, fibers: Vec<Arc<FinCat>>, restrictions: Vec<Functor>) -> Result<CatPresheaf> {
        let a = CatPresheaf { base, fibers, restrictions };
        if let Some(v) = a.violations().into_iter().next() {
            return Err(Error::Malformed(v));
        }
        Ok(a)
    }

    pub fn violations(&self) -> Vec<String> {
        let y = &*self.base;
        if self.fibers.len() != y.num_objects() || self.restrictions.len() != y.num_morphisms() {
            return vec!["one fiber per object and one functor per morphism are required".into()];
        }
        let mut out = Vec::new();
        for f in y.morphisms() {
            let r = &self.restrictions[f];
            if *r.src != *self.fibers[y.src(f)] || *r.tgt != *self.fibers[y.tgt(f)] {
                out.push(format!("restriction along {} has the wrong endpoints", y.morphism_id(f)));
            } else if !r.is_valid() {
                out.push(format!("restriction along {} is not a functor", y.morphism_id(f)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in y.objects() {
            let r = &self.restrictions[y.id(x)];
            if r.omap.iter().enumerate().any(|(i, &j)| i != j) || r.mmap.iter().enumerate().any(|(i, &j)| i != j) {
                out.push(format!("restriction along id_{} is not the identity", y.object_id(x)));
            }
        }
        for f in y.morphisms() {
            for g in y.out_of(y.tgt(f)) {
                let (lhs, rhs) = (self.restrictions[f].then(&self.restrictions[g]), &self.restrictions[y.then(f, g)]);
                if lhs.omap != rhs.omap || lhs.mmap != rhs.mmap {
                    out.push(format!("restrictions along {} and {} do not compose", y.morphism_id(f), y.morphism_id(g)));
                }
            }
        }
        out
    }

    /// Every fiber `E`, every restriction the identity.
    pub fn constant(base: Arc<FinCat>, e: Arc<FinCat>) -> CatPresheaf {
        let fibers = vec![e.clone(); base.num_objects()];
        let restrictions = base.morphisms().map(|_| Functor::identity(e.clone())).collect();
        CatPresheaf { base, fibers, restrictions }
    }

    /// A presheaf of sets on `X` as a functor `X^o → Cat` with discrete fibers.
    pub fn discrete(f: &SetPresheaf) -> CatPresheaf {
        let x = &*f.base;
        let base = Arc::new(x.opposite());
        let fibers: Vec<Arc<FinCat>> = x.objects().map(|o| Arc::new(crate::fincat::builtins::discrete(&f.elements[o]))).collect();
        let restrictions = x
            .morphisms()
            .map(|m| {
                let (s, t) = (fibers[x.tgt(m)].clone(), fibers[x.src(m)].clone());
                let map = f.restrictions[m].clone();
                Functor::from_fn(s, t.clone(), |a| map[a], |g| t.id(map[g]))
            })
            .collect();
        CatPresheaf { base, fibers, restrictions }
    }

    pub fn res(&self, f: Mor) -> &Functor {
        &self.restrictions[f]
    }

    pub fn is_groupoidal(&self) -> bool {
        self.fibers.iter().all(|c| c.is_groupoid())
    }

    /// `A ∘ F` for a functor `F: B → Y`.
    pub fn pull_back(&self, along: &Functor) -> CatPresheaf {
        let b = along.src.clone();
        let fibers = b.objects().map(|p| self.fibers[along.obj(p)].clone()).collect();
        let restrictions = b.morphisms().map(|k| self.restrictions[along.mor(k)].clone()).collect();
        CatPresheaf { base: b, fibers, restrictions }
    }
}

/// `∫_Y A` with its projection and the labels `(y, a)`, `(f, r)`.
#[derive(Clone, Debug)]
pub struct Total {
    pub cat: Arc<FinCat>,
    pub projection: Functor,
    pub objects: Vec<(Obj, Obj)>,
    pub morphisms: Vec<(Mor, Mor)>,
}

/// Objects `(y, a)` with `a ∈ A(y)`; morphisms `(y, a) → (z, b)` are pairs
/// `(f, r)` with `f: y → z` and `r: res_f(a) → b`.
pub fn total_category(a: &CatPresheaf) -> Total {
    let y = &*a.base;
    let objects: Vec<(Obj, Obj)> = y.objects().flat_map(|p| a.fibers[p].objects().map(move |o| (p, o))).collect();
    let labeled = build_category(
        objects,
        |&(p, o), &(q, o2)| {
            y.hom(p, q).iter().flat_map(|&f| a.fibers[q].hom(a.res(f).obj(o), o2).iter().map(move |&r| (f, r))).collect()
        },
        |&(p, o)| (y.id(p), a.fibers[p].id(o)),
        |_, _, &(_, _), &(f, r), &(g, s)| (y.then(f, g), a.fibers[y.tgt(g)].then(a.res(g).mor(r), s)),
        |&(p, o)| format!("({},{})", y.object_id(p), a.fibers[p].object_id(o)),
        |_, _, &(f, r)| format!("({},{})", y.morphism_id(f), a.fibers[y.tgt(f)].morphism_id(r)),
    )
    .expect("the Grothendieck construction is a category");
    let cat = Arc::new(labeled.cat);
    let objects = labeled.objs;
    let morphisms = labeled.mors;
    let projection = Functor::from_fn(cat.clone(), a.base.clone(), |o| objects[o].0, |m| morphisms[m].0);
    Total { cat, projection, objects, morphisms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins;
    use crate::group::FiniteGroup;

    /// `A(0)` terminal, `A(1) = BG`, restriction the inclusion.
    fn point_into_group() -> CatPresheaf {
        let base = Arc::new(builtins::interval());
        let pt = Arc::new(builtins::terminal());
        let bg = Arc::new(builtins::delooping(&FiniteGroup::cyclic(2), "*"));
        let f = base.morphism("0->1").unwrap();
        let restrictions = base
            .morphisms()
            .map(|m| match (m == f, base.src(m)) {
                (true, _) => Functor::from_fn(pt.clone(), bg.clone(), |_| 0, |_| bg.id(0)),
                (false, 0) => Functor::identity(pt.clone()),
                (false, _) => Functor::identity(bg.clone()),
            })
            .collect();
        CatPresheaf::new(base, vec![pt, bg], restrictions).unwrap()
    }

    #[test]
    fn hom_formula_over_an_arrow() {
        let t = total_category(&point_into_group());
        assert_eq!(t.cat.num_objects(), 2);
        assert_eq!(t.cat.hom(0, 1).len(), 2);
        assert!(t.cat.check().is_valid());
        assert!(t.projection.is_valid());
    }

    #[test]
    fn constant_total_is_a_product() {
        let base = Arc::new(builtins::chain(2));
        let e = Arc::new(builtins::iso_interval());
        let t = total_category(&CatPresheaf::constant(base.clone(), e.clone()));
        let p = builtins::product(&base, &e);
        assert_eq!(t.cat.num_objects(), p.num_objects());
        assert_eq!(t.cat.num_morphisms(), p.num_morphisms());
    }

    #[test]
    fn broken_functoriality_is_reported() {
        let mut a = point_into_group();
        let one = a.base.id(1);
        a.restrictions[one] = Functor::from_fn(a.fibers[1].clone(), a.fibers[1].clone(), |o| o, |_| 0);
        assert!(!a.violations().is_empty());
    }
}
