use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Mor, Obj};

/// A set of morphisms into `target` closed under precomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sieve {
    pub target: Obj,
    pub arrows: BTreeSet<Mor>,
}

impl Sieve {
    pub fn maximal(c: &FinCat, x: Obj) -> Sieve {
        Sieve { target: x, arrows: c.into(x).collect() }
    }

    pub fn empty(x: Obj) -> Sieve {
        Sieve { target: x, arrows: BTreeSet::new() }
    }

    pub fn contains(&self, f: Mor) -> bool {
        self.arrows.contains(&f)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_maximal(&self, c: &FinCat) -> bool {
        self.contains(c.id(self.target))
    }

    /// Checks targets and closure under precomposition.
    pub fn is_valid(&self, c: &FinCat) -> bool {
        self.arrows.iter().all(|&f| c.tgt(f) == self.target && c.into(c.src(f)).all(|g| self.contains(c.then(g, f))))
    }

    /// `f^*S = {g : g;f ∈ S}` for `f: y → target`.
    pub fn pullback(&self, c: &FinCat, f: Mor) -> Sieve {
        let y = c.src(f);
        Sieve { target: y, arrows: c.into(y).filter(|&g| self.contains(c.then(g, f))).collect() }
    }

    pub fn intersect(&self, other: &Sieve) -> Sieve {
        Sieve { target: self.target, arrows: self.arrows.intersection(&other.arrows).copied().collect() }
    }

    pub fn is_subset(&self, other: &Sieve) -> bool {
        self.arrows.is_subset(&other.arrows)
    }

    pub fn render(&self, c: &FinCat) -> Vec<String> {
        self.arrows.iter().map(|&f| c.morphism_id(f).to_string()).collect()
    }

    /// Every sieve on `x`, enumerated as down-sets of the factorization
    /// preorder on arrows into `x`.
    pub fn all(c: &FinCat, x: Obj) -> Vec<Sieve> {
        let arrows: Vec<Mor> = c.into(x).collect();
        let n = arrows.len();
        // below[i][j]: arrows[j] factors through arrows[i]
        let below: Vec<Vec<bool>> = arrows
            .iter()
            .map(|&g| arrows.iter().map(|&f| c.into(c.src(g)).any(|h| c.then(h, g) == f)).collect())
            .collect();
        // each arrow decides membership; including one forces everything below it
        let mut out = Vec::new();
        let mut state: Vec<Option<bool>> = vec![None; n];
        fn go(i: usize, arrows: &[Mor], below: &[Vec<bool>], state: &mut Vec<Option<bool>>, x: Obj, out: &mut Vec<Sieve>) {
            if i == arrows.len() {
                out.push(Sieve { target: x, arrows: (0..arrows.len()).filter(|&k| state[k] == Some(true)).map(|k| arrows[k]).collect() });
                return;
            }
            if state[i].is_some() {
                go(i + 1, arrows, below, state, x, out);
                return;
            }
            for choice in [false, true] {
                let saved = state.clone();
                let ok = if choice {
                    (0..arrows.len()).filter(|&j| below[i][j]).all(|j| {
                        if state[j] == Some(false) {
                            return false;
                        }
                        state[j] = Some(true);
                        true
                    })
                } else {
                    (0..arrows.len()).filter(|&j| below[j][i]).all(|j| {
                        if state[j] == Some(true) {
                            return false;
                        }
                        state[j] = Some(false);
                        true
                    })
                };
                if ok {
                    go(i + 1, arrows, below, state, x, out);
                }
                *state = saved;
            }
        }
        go(0, &arrows, &below, &mut state, x, &mut out);
        out.sort();
        out
    }
}

/// The sieve on `target` generated by a family of morphisms into it.
pub fn sieve_generated(c: &FinCat, target: Obj, family: &[Mor]) -> Result<Sieve> {
    if let Some(&f) = family.iter().find(|&&f| c.tgt(f) != target) {
        return Err(Error::MixedTargets(c.object_id(target).into(), c.object_id(c.tgt(f)).into()));
    }
    let mut arrows = BTreeSet::new();
    for &f in family {
        for g in c.into(c.src(f)) {
            arrows.insert(c.then(g, f));
        }
    }
    Ok(Sieve { target, arrows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins;

    fn square() -> FinCat {
        // ∅ ⊂ a, b ⊂ X
        let names: Vec<String> = ["e", "a", "b", "X"].iter().map(|s| s.to_string()).collect();
        builtins::poset(&names, |i, j| i == j || i == 0 || j == 3)
    }

    #[test]
    fn generated_examples() {
        let c = square();
        let x = c.object("X").unwrap();
        assert_eq!(sieve_generated(&c, x, &[c.id(x)]).unwrap(), Sieve::maximal(&c, x));
        assert!(sieve_generated(&c, x, &[]).unwrap().is_empty());
        let fam = [c.morphism("a->X").unwrap(), c.morphism("b->X").unwrap()];
        let s = sieve_generated(&c, x, &fam).unwrap();
        assert_eq!(s.render(&c), vec!["e->X", "a->X", "b->X"]);
        assert!(s.is_valid(&c));
    }

    #[test]
    fn mixed_targets() {
        let c = square();
        let x = c.object("X").unwrap();
        assert!(matches!(sieve_generated(&c, x, &[c.morphism("e->a").unwrap()]), Err(Error::MixedTargets(..))));
    }

    #[test]
    fn sieve_enumeration_counts() {
        let c = square();
        // down-sets of {e < a, b}: ∅, {e}, {e,a}, {e,b}, {e,a,b}, plus the maximal sieve
        assert_eq!(Sieve::all(&c, c.object("X").unwrap()).len(), 6);
        assert!(Sieve::all(&c, 0).len() == 2);
        let g = builtins::delooping(&crate::group::FiniteGroup::cyclic(3), "*");
        assert_eq!(Sieve::all(&g, 0).len(), 2);
    }
}
