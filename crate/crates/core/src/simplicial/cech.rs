//! The Čech nerve of a covering family evaluated objectwise, and its
//! fundamental groupoids.

use itertools::Itertools;
use serde::Serialize;

use super::sset::sequences;
use super::{components, fundamental_groupoid, TruncSimpSet};
use crate::error::Result;
use crate::fincat::presentation::Presentation;
use crate::fincat::{Mor, Obj};
use crate::presheaf::{sieve_generated, Sieve};
use crate::site::FinSite;

/// The part of `D(Y)` lying over one map `g: Y → X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CechFiber {
    pub over: String,
    pub in_sieve: bool,
    pub lifts: Vec<String>,
    pub components: usize,
}

/// `P(U)(Y)` and `D(Y)` for one object `Y`.
#[derive(Clone, Debug)]
pub struct CechObject {
    pub object: Obj,
    /// Lifts `(α, ℓ: Y → U_α)`, the vertices of `P(U)(Y)`.
    pub lifts: Vec<(usize, Mor)>,
    pub nerve: TruncSimpSet,
    pub groupoid: Presentation,
    pub components: usize,
    pub fibers: Vec<CechFiber>,
}

#[derive(Clone, Debug)]
pub struct CechResolution {
    pub target: Obj,
    pub cover: Vec<Mor>,
    pub sieve: Sieve,
    pub objects: Vec<CechObject>,
    /// Along `h: Y' → Y`, the image of each lift of `Y` among the lifts of `Y'`.
    pub restrictions: Vec<Vec<usize>>,
}

/// `P(U)(Y)_p` is the set of `(p+1)`-tuples of lifts `Y → U_α` with a common
/// composite to `X`; `D(Y)` is its fundamental groupoid.
pub fn cech_resolution(site: &FinSite, cover: &[Mor], n: usize) -> Result<CechResolution> {
    let c = &*site.cat;
    let target = match cover.first() {
        Some(&u) => c.tgt(u),
        None => return Err(crate::Error::Malformed("the empty family has no target; use an explicit sieve".into())),
    };
    let sieve = sieve_generated(c, target, cover)?;
    let mut objects = Vec::new();
    for y in c.objects() {
        let lifts: Vec<(usize, Mor)> =
            cover.iter().enumerate().flat_map(|(a, &u)| c.hom(y, c.src(u)).iter().map(move |&l| (a, l))).collect();
        let over = |i: usize| c.then(lifts[i].1, cover[lifts[i].0]);
        let levels: Vec<Vec<Vec<usize>>> = (0..=n)
            .map(|p| {
                (0..p + 1)
                    .map(|_| 0..lifts.len())
                    .multi_cartesian_product()
                    .filter(|t| t.iter().map(|&i| over(i)).all_equal())
                    .collect()
            })
            .collect();
        let names: Vec<String> =
            lifts.iter().map(|&(a, l)| format!("{};{}", c.morphism_id(l), c.morphism_id(cover[a]))).collect();
        let nerve = sequences(levels, |s| s.iter().map(|&i| names[i].as_str()).join(","));
        let (count, comp) = components(&nerve);
        let fibers = c
            .hom(y, target)
            .iter()
            .copied()
            .map(|g| {
                let members: Vec<usize> = (0..lifts.len()).filter(|&i| over(i) == g).collect();
                CechFiber {
                    over: c.morphism_id(g).into(),
                    in_sieve: sieve.contains(g),
                    lifts: members.iter().map(|&i| names[i].clone()).collect(),
                    components: members.iter().map(|&i| comp[i]).unique().count(),
                }
            })
            .collect();
        let groupoid = fundamental_groupoid(&nerve);
        objects.push(CechObject { object: y, lifts, nerve, groupoid, components: count, fibers });
    }
    let restrictions = c
        .morphisms()
        .map(|h| {
            let (src, tgt) = (c.src(h), c.tgt(h));
            objects[tgt]
                .lifts
                .iter()
                .map(|&(a, l)| objects[src].lifts.iter().position(|&m| m == (a, c.then(h, l))).expect("lifts restrict"))
                .collect()
        })
        .collect();
    Ok(CechResolution { target, cover: cover.to_vec(), sieve, objects, restrictions })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn two_point() -> FinSite {
        let opens = vec![
            ("e".to_string(), BTreeSet::new()),
            ("a".to_string(), BTreeSet::from([0])),
            ("b".to_string(), BTreeSet::from([1])),
            ("X".to_string(), BTreeSet::from([0, 1])),
        ];
        FinSite::from_opens(vec!["p".into(), "q".into()], opens).unwrap()
    }

    #[test]
    fn identity_cover_is_contractible_everywhere() {
        let s = two_point();
        let x = s.cat.object("X").unwrap();
        let r = cech_resolution(&s, &[s.cat.id(x)], 2).unwrap();
        for o in &r.objects {
            assert_eq!(o.components, 1);
        }
    }

    #[test]
    fn fibers_follow_the_sieve() {
        let s = two_point();
        let c = &s.cat;
        let cover = [c.morphism("a->X").unwrap(), c.morphism("b->X").unwrap()];
        let r = cech_resolution(&s, &cover, 2).unwrap();
        let x = c.object("X").unwrap();
        assert_eq!(r.objects[x].components, 0);
        assert!(r.objects[x].nerve.level_size(0) == 0);
        let e = c.object("e").unwrap();
        // the empty open lifts through both members: one edge each way plus loops
        assert_eq!(r.objects[e].nerve.level_size(1), 4);
        assert_eq!(r.objects[e].components, 1);
        assert!(r.objects.iter().flat_map(|o| &o.fibers).all(|f| (f.components == 1) == f.in_sieve));
    }
}
