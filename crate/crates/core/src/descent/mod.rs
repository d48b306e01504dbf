//! Presheaves of groupoids on finite sites: descent data, truncated
//! totalizations, the stack condition and stackification.

mod cosimplicial;
mod data;
mod stack;

use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fincat::{builtins, FinCat, Functor, Mor, Obj};
use crate::grothendieck::CatPresheaf;
use crate::group::FiniteGroup;
use crate::presheaf::SetPresheaf;
use crate::site::FinSite;

pub use cosimplicial::{cech_cosimplicial, holim_delta2, holim_vs_descent, CosimplicialCat, Holim, HolimMode};
pub use data::{descent_category, DescentCategory, DescentDatum};
pub use stack::{
    disjoint_sum_check, protochamp_check, protochamp_failure, pseudo_limit, sieve_diagram, stack_check, stackify, DisjointSum, DisjointSumReport,
    ObjectVerdict, SieveDiagram, StackReport, StackVerdict, Stackification,
};

/// A contravariant functor from a finite category to finite groupoids:
/// along `f: x → y` the restriction is a functor `F(y) → F(x)`.
#[derive(Clone, Debug)]
pub struct GrpdPresheaf {
    pub base: Arc<FinCat>,
    pub fibers: Vec<Arc<FinCat>>,
    pub restrictions: Vec<Functor>,
}

impl GrpdPresheaf {
    pub fn new(base: Arc<FinCat>, fibers: Vec<Arc<FinCat>>, restrictions: Vec<Functor>) -> Result<GrpdPresheaf> {
        let f = GrpdPresheaf { base, fibers, restrictions };
        if let Some(v) = f.violations().into_iter().next() {
            return Err(Error::Malformed(v));
        }
        Ok(f)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .fibers
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_groupoid())
            .map(|(x, _)| format!("fiber over {} is not a groupoid", self.base.object_id(x)))
            .collect();
        if self.fibers.len() == self.base.num_objects() && self.restrictions.len() == self.base.num_morphisms() {
            out.extend(self.as_cat_presheaf().violations());
        } else {
            out.push("one fiber per object and one functor per morphism are required".into());
        }
        out
    }

    /// The same data as a covariant functor on the opposite category.
    pub fn as_cat_presheaf(&self) -> CatPresheaf {
        CatPresheaf { base: Arc::new(self.base.opposite()), fibers: self.fibers.clone(), restrictions: self.restrictions.clone() }
    }

    pub fn res(&self, f: Mor) -> &Functor {
        &self.restrictions[f]
    }

    /// A presheaf of sets as a presheaf of discrete groupoids.
    pub fn discrete(f: &SetPresheaf) -> GrpdPresheaf {
        let c = CatPresheaf::discrete(f);
        GrpdPresheaf { base: f.base.clone(), fibers: c.fibers, restrictions: c.restrictions }
    }

    pub fn terminal(base: Arc<FinCat>) -> GrpdPresheaf {
        let pt = Arc::new(builtins::terminal());
        let restrictions = base.morphisms().map(|_| Functor::identity(pt.clone())).collect();
        GrpdPresheaf { fibers: vec![pt; base.num_objects()], base, restrictions }
    }

    /// `BG` at every object with identity restrictions.
    pub fn constant_delooping(base: Arc<FinCat>, g: &FiniteGroup) -> GrpdPresheaf {
        let bg = Arc::new(builtins::delooping(g, "*"));
        let restrictions = base.morphisms().map(|_| Functor::identity(bg.clone())).collect();
        GrpdPresheaf { fibers: vec![bg; base.num_objects()], base, restrictions }
    }

    /// `B` of the sheafified constant group on a site of opens: the fiber
    /// over `U` is `B(G^{π0 U})` and restriction sends a tuple indexed by the
    /// components of `U` to the tuple over the components of `V`, each taking
    /// the entry of the component containing it.
    pub fn sheafified_delooping(site: &FinSite, g: &FiniteGroup) -> Result<GrpdPresheaf> {
        let space = site.space.as_ref().ok_or_else(|| Error::InvalidSite("the site does not come from a finite space".into()))?;
        let c = &*site.cat;
        let comps: Vec<Vec<_>> = space.opens.iter().map(|u| space.components(u)).collect();
        let fibers: Vec<Arc<FinCat>> =
            c.objects().map(|x| Arc::new(builtins::delooping(&g.power(comps[x].len()), "*"))).collect();
        let restrictions = c
            .morphisms()
            .map(|f| {
                let (v, u) = (c.src(f), c.tgt(f));
                let parent: Vec<usize> = comps[v]
                    .iter()
                    .map(|cv| comps[u].iter().position(|cu| cv.is_subset(cu)).expect("components refine"))
                    .collect();
                let (ku, kv) = (comps[u].len(), comps[v].len());
                let map = |x: usize| {
                    let t = g.tuple_of(ku, x);
                    g.tuple_index(&parent.iter().map(|&p| t[p]).collect_vec())
                };
                debug_assert_eq!(kv, parent.len());
                Functor::from_fn(fibers[u].clone(), fibers[v].clone(), |_| 0, map)
            })
            .collect();
        GrpdPresheaf::new(site.cat.clone(), fibers, restrictions)
    }
}

/// A limit of the cospan `src(maps[i]) → X` over all `i`, found by checking the
/// universal property against every cone; the projections are returned.
pub fn wide_fiber_product(c: &FinCat, maps: &[Mor]) -> Option<(Obj, Vec<Mor>)> {
    let x = c.tgt(*maps.first()?);
    if maps.iter().any(|&m| c.tgt(m) != x) {
        return None;
    }
    let cones = |z: Obj| -> Vec<Vec<Mor>> {
        maps.iter()
            .map(|&m| c.hom(z, c.src(m)).to_vec())
            .multi_cartesian_product()
            .filter(|legs| legs.iter().zip(maps).map(|(&l, &m)| c.then(l, m)).all_equal())
            .collect()
    };
    let all: Vec<(Obj, Vec<Vec<Mor>>)> = c.objects().map(|z| (z, cones(z))).collect();
    for (p, legs_p) in &all {
        for legs in legs_p {
            let universal = all.iter().all(|(z, cs)| {
                cs.iter().all(|other| {
                    c.hom(*z, *p).iter().filter(|&&m| legs.iter().zip(other).all(|(&l, &o)| c.then(m, l) == o)).count() == 1
                })
            });
            if universal {
                return Some((*p, legs.clone()));
            }
        }
    }
    None
}

pub fn fiber_product(c: &FinCat, f: Mor, g: Mor) -> Option<(Obj, Mor, Mor)> {
    wide_fiber_product(c, &[f, g]).map(|(p, legs)| (p, legs[0], legs[1]))
}

/// The unique arrow `z → p` into a limit whose composites with `legs` are `into`.
pub(crate) fn factor_through(c: &FinCat, p: Obj, legs: &[Mor], z: Obj, into: &[Mor]) -> Option<Mor> {
    c.hom(z, p).iter().copied().find(|&m| legs.iter().zip(into).all(|(&l, &o)| c.then(m, l) == o))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn meets_are_fiber_products_in_posets() {
        let s = corpus::square_site();
        let c = &s.cat;
        let (a, b) = (c.morphism("a->X").unwrap(), c.morphism("b->X").unwrap());
        let (p, _, _) = fiber_product(c, a, b).unwrap();
        assert_eq!(c.object_id(p), "u");
    }

    #[test]
    fn missing_fiber_product() {
        // a and b have no common lower bound
        let c = builtins::poset(&["a".into(), "b".into(), "X".into()], |i, j| i == j || j == 2);
        let (a, b) = (c.morphism("a->X").unwrap(), c.morphism("b->X").unwrap());
        assert!(fiber_product(&c, a, b).is_none());
        assert!(fiber_product(&c, a, a).is_some());
    }

    #[test]
    fn sheafified_delooping_on_the_pseudo_circle() {
        let s = corpus::pseudo_circle_site();
        let f = GrpdPresheaf::sheafified_delooping(&s, &FiniteGroup::cyclic(2)).unwrap();
        let ab = s.cat.object("ab").unwrap();
        assert_eq!(f.fibers[ab].num_morphisms(), 4);
        let x = s.cat.object("X").unwrap();
        assert_eq!(f.fibers[x].num_morphisms(), 2);
    }
}
