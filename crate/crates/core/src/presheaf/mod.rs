//! Presheaves of finite sets, finite limits and colimits, sieves and the
//! functors `p^*`, `p_*`, `p_!` along a functor of finite categories.

mod diagram;
mod kan;
mod sieve;

use std::sync::Arc;

use serde::Serialize;

pub use diagram::{colim, lim, Colimit, Limit, SetDiagram};
pub use kan::{
    pullback, pullback_map, pushforward, pushforward_map, shriek, shriek_counit, shriek_map, shriek_triangle_holds, shriek_unit,
    star_counit, star_unit, verify_adjunction, AdjunctionReport, Pushforward, Shriek,
};
pub use sieve::{sieve_generated, Sieve};

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Mor, Obj};

/// A contravariant functor from a finite category to finite sets: along
/// `f: x → y` the restriction maps `F(y) → F(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPresheaf {
    pub base: Arc<FinCat>,
    /// Element names of each `F(x)`.
    pub elements: Vec<Vec<String>>,
    /// `restrictions[f][b]` is the restriction of `b ∈ F(tgt f)` to `F(src f)`.
    pub restrictions: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresheafViolation {
    Shape { morphism: String },
    Identity { object: String },
    Composition { f: String, g: String },
}

impl SetPresheaf {
    pub fn new(base: Arc<FinCat>, elements: Vec<Vec<String>>, restrictions: Vec<Vec<usize>>) -> Result<SetPresheaf> {
        let f = SetPresheaf { base, elements, restrictions };
        if let Some(v) = f.violations().into_iter().next() {
            return Err(Error::Malformed(format!("presheaf is not functorial: {v:?}")));
        }
        Ok(f)
    }

    /// Builds from element counts and a restriction closure, naming elements
    /// by their index.
    pub fn from_fn(base: Arc<FinCat>, sizes: Vec<usize>, restrict: impl Fn(Mor, usize) -> usize) -> Result<SetPresheaf> {
        let elements = sizes.iter().map(|&n| (0..n).map(|i| i.to_string()).collect()).collect();
        let restrictions = base.morphisms().map(|f| (0..sizes[base.tgt(f)]).map(|b| restrict(f, b)).collect()).collect();
        SetPresheaf::new(base, elements, restrictions)
    }

    /// Every object gets the same set and every restriction is the identity.
    pub fn constant(base: Arc<FinCat>, names: &[String]) -> SetPresheaf {
        let elements = vec![names.to_vec(); base.num_objects()];
        let restrictions = base.morphisms().map(|_| (0..names.len()).collect()).collect();
        SetPresheaf { base, elements, restrictions }
    }

    pub fn terminal(base: Arc<FinCat>) -> SetPresheaf {
        SetPresheaf::constant(base, &["*".to_string()])
    }

    /// The representable presheaf `Hom(-, x)`.
    pub fn representable(base: Arc<FinCat>, x: Obj) -> SetPresheaf {
        let elements: Vec<Vec<String>> =
            base.objects().map(|y| base.hom(y, x).iter().map(|&g| base.morphism_id(g).to_string()).collect()).collect();
        let restrictions = base
            .morphisms()
            .map(|f| {
                let (s, t) = (base.src(f), base.tgt(f));
                base.hom(t, x)
                    .iter()
                    .map(|&g| {
                        let h = base.then(f, g);
                        base.hom(s, x).iter().position(|&k| k == h).unwrap()
                    })
                    .collect()
            })
            .collect();
        SetPresheaf { base, elements, restrictions }
    }

    pub fn size(&self, x: Obj) -> usize {
        self.elements[x].len()
    }

    pub fn restrict(&self, f: Mor, b: usize) -> usize {
        self.restrictions[f][b]
    }

    pub fn element_name(&self, x: Obj, a: usize) -> &str {
        &self.elements[x][a]
    }

    pub fn violations(&self) -> Vec<PresheafViolation> {
        let c = &*self.base;
        let mut out = Vec::new();
        if self.elements.len() != c.num_objects() || self.restrictions.len() != c.num_morphisms() {
            out.push(PresheafViolation::Shape { morphism: String::new() });
            return out;
        }
        for f in c.morphisms() {
            let r = &self.restrictions[f];
            if r.len() != self.size(c.tgt(f)) || r.iter().any(|&a| a >= self.size(c.src(f))) {
                out.push(PresheafViolation::Shape { morphism: c.morphism_id(f).into() });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in c.objects() {
            if self.restrictions[c.id(x)].iter().enumerate().any(|(i, &j)| i != j) {
                out.push(PresheafViolation::Identity { object: c.object_id(x).into() });
            }
        }
        for f in c.morphisms() {
            for g in c.out_of(c.tgt(f)) {
                let h = c.then(f, g);
                let ok = (0..self.size(c.tgt(g))).all(|b| self.restrict(h, b) == self.restrict(f, self.restrict(g, b)));
                if !ok {
                    out.push(PresheafViolation::Composition { f: c.morphism_id(f).into(), g: c.morphism_id(g).into() });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Restriction to a full subcategory given by the inclusion's object
    /// and morphism lists.
    pub fn restrict_to(&self, sub: Arc<FinCat>, objs: &[Obj], mors: &[Mor]) -> SetPresheaf {
        let elements = objs.iter().map(|&x| self.elements[x].clone()).collect();
        let restrictions = mors.iter().map(|&f| self.restrictions[f].clone()).collect();
        SetPresheaf { base: sub, elements, restrictions }
    }
}

/// A natural transformation between set-valued presheaves on one base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMap {
    pub components: Vec<Vec<usize>>,
}

impl PresheafMap {
    pub fn identity(f: &SetPresheaf) -> PresheafMap {
        PresheafMap { components: f.base.objects().map(|x| (0..f.size(x)).collect()).collect() }
    }

    pub fn then(&self, next: &PresheafMap) -> PresheafMap {
        let components = self.components.iter().zip(&next.components).map(|(a, b)| a.iter().map(|&i| b[i]).collect()).collect();
        PresheafMap { components }
    }

    /// Naturality with respect to every morphism of the base.
    pub fn is_natural(&self, from: &SetPresheaf, to: &SetPresheaf) -> bool {
        let c = &*from.base;
        c.morphisms().all(|f| {
            let (s, t) = (c.src(f), c.tgt(f));
            (0..from.size(t)).all(|b| to.restrict(f, self.components[t][b]) == self.components[s][from.restrict(f, b)])
        })
    }

    pub fn is_iso(&self, from: &SetPresheaf, to: &SetPresheaf) -> bool {
        self.components.iter().enumerate().all(|(x, comp)| {
            let mut seen = vec![false; to.size(x)];
            comp.len() == to.size(x) && comp.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        }) && from.base.objects().all(|x| from.size(x) == to.size(x))
    }
}

/// True when two presheaves on one base are isomorphic, by searching for
/// objectwise bijections compatible with restrictions.
pub fn isomorphic(a: &SetPresheaf, b: &SetPresheaf) -> bool {
    let c = &*a.base;
    if c.objects().any(|x| a.size(x) != b.size(x)) {
        return false;
    }
    fn go(a: &SetPresheaf, b: &SetPresheaf, x: usize, comps: &mut Vec<Vec<usize>>) -> bool {
        let c = &*a.base;
        if x == c.num_objects() {
            return PresheafMap { components: comps.clone() }.is_natural(a, b);
        }
        for perm in itertools::Itertools::permutations(0..a.size(x), a.size(x)) {
            comps.push(perm);
            // prune using arrows among already chosen objects
            let ok = c.morphisms().filter(|&f| c.src(f) <= x && c.tgt(f) <= x).all(|f| {
                let (s, t) = (c.src(f), c.tgt(f));
                (0..a.size(t)).all(|e| b.restrict(f, comps[t][e]) == comps[s][a.restrict(f, e)])
            });
            if ok && go(a, b, x + 1, comps) {
                return true;
            }
            comps.pop();
        }
        false
    }
    go(a, b, 0, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins;

    #[test]
    fn representable_is_valid() {
        let c = Arc::new(builtins::product(&builtins::interval(), &builtins::interval()));
        for x in c.objects() {
            assert!(SetPresheaf::representable(c.clone(), x).is_valid());
        }
    }

    #[test]
    fn broken_composition_is_reported() {
        let c = Arc::new(builtins::chain(2));
        let mut f = SetPresheaf::constant(c.clone(), &["a".into(), "b".into()]);
        let g = c.morphism("0->2").unwrap();
        f.restrictions[g] = vec![1, 0];
        assert!(matches!(f.violations()[0], PresheafViolation::Composition { .. }));
    }

    #[test]
    fn isomorphism_search() {
        let c = Arc::new(builtins::interval());
        let a = SetPresheaf::from_fn(c.clone(), vec![2, 2], |f, b| if c.is_identity(f) { b } else { 1 - b }).unwrap();
        let b = SetPresheaf::constant(c.clone(), &["x".into(), "y".into()]);
        assert!(isomorphic(&a, &b));
        let d = SetPresheaf::from_fn(c.clone(), vec![2, 2], |f, b| if c.is_identity(f) { b } else { 0 }).unwrap();
        assert!(!isomorphic(&d, &b));
    }
}
