use std::collections::HashMap;

use serde::Serialize;

use super::category::{FinCat, Mor};
use super::functor::Functor;

/// Outcome of [`check_equivalence`]; failures carry object/morphism ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EquivalenceVerdict {
    Equivalence,
    /// Two distinct morphisms `x → y` with the same image.
    NotFaithful { x: String, y: String, f: String, g: String },
    /// A morphism `Fx → Fy` not hit by any morphism `x → y`.
    NotFull { x: String, y: String, missing: String },
    /// A target object isomorphic to no object in the image.
    NotEssentiallySurjective { object: String },
}

impl EquivalenceVerdict {
    pub fn is_equivalence(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalence)
    }
}

/// Decides whether `f` is an equivalence by checking that every hom-map is
/// a bijection and every target object is isomorphic to an image object.
pub fn check_equivalence(f: &Functor) -> EquivalenceVerdict {
    let (c, d) = (&*f.src, &*f.tgt);
    for x in c.objects() {
        for y in c.objects() {
            let mut seen: HashMap<Mor, Mor> = HashMap::new();
            for &m in c.hom(x, y) {
                if let Some(prev) = seen.insert(f.mor(m), m) {
                    return EquivalenceVerdict::NotFaithful {
                        x: c.object_id(x).into(),
                        y: c.object_id(y).into(),
                        f: c.morphism_id(prev).into(),
                        g: c.morphism_id(m).into(),
                    };
                }
            }
            if let Some(&missing) = d.hom(f.obj(x), f.obj(y)).iter().find(|g| !seen.contains_key(g)) {
                return EquivalenceVerdict::NotFull {
                    x: c.object_id(x).into(),
                    y: c.object_id(y).into(),
                    missing: d.morphism_id(missing).into(),
                };
            }
        }
    }
    let mut hit = vec![false; d.num_objects()];
    for x in c.objects() {
        hit[f.obj(x)] = true;
    }
    for z in d.objects() {
        if !hit[z] && !d.objects().any(|w| hit[w] && d.are_isomorphic(w, z)) {
            return EquivalenceVerdict::NotEssentiallySurjective { object: d.object_id(z).into() };
        }
    }
    EquivalenceVerdict::Equivalence
}

/// The maximal subgroupoid: all objects, invertible morphisms only.
pub fn max_subgroupoid(c: &FinCat) -> FinCat {
    let isos: Vec<Mor> = c.morphisms().filter(|&f| c.is_iso(f)).collect();
    c.wide_subcategory(&isos).0
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::builtins;

    #[test]
    fn identity_is_equivalence() {
        for c in [builtins::terminal(), builtins::chain(2), builtins::iso_chain(3)] {
            assert!(check_equivalence(&Functor::identity(Arc::new(c))).is_equivalence());
        }
    }

    #[test]
    fn point_into_iso_interval() {
        let t = Arc::new(builtins::terminal());
        let ib = Arc::new(builtins::iso_interval());
        let f = Functor::from_fn(t, ib.clone(), |_| 0, |_| ib.id(0));
        assert!(check_equivalence(&f).is_equivalence());
    }

    #[test]
    fn point_into_interval_misses_one() {
        let t = Arc::new(builtins::terminal());
        let i = Arc::new(builtins::interval());
        let f = Functor::from_fn(t, i.clone(), |_| 0, |_| i.id(0));
        assert_eq!(check_equivalence(&f), EquivalenceVerdict::NotEssentiallySurjective { object: "1".into() });
    }

    #[test]
    fn subgroupoid_examples() {
        let g = max_subgroupoid(&builtins::interval());
        assert_eq!(g.num_objects(), 2);
        assert_eq!(g.num_morphisms(), 2);
        assert_eq!(max_subgroupoid(&builtins::iso_interval()), builtins::iso_interval());
        assert!(max_subgroupoid(&builtins::chain(3)).is_groupoid());
    }
}
