//! Truncated simplicial sets, Segal maps, fundamental categories, categories
//! of simplices and the Čech resolution of a covering family.

mod cech;
mod faces;
mod sset;
mod subdivision;

use std::collections::BTreeSet;

use serde::Serialize;

pub use cech::{cech_resolution, CechFiber, CechResolution};
pub use faces::{faces_union_check, FacesReport};
pub use sset::{boundary, cosk0, delta, faces_union, from_graph, horn, nerve, simplex_subcomplex, standard_simplex, TruncSimpSet};
pub use subdivision::{bd_certificate, poset_subdivision, simplex_category, BdCertificate, BdMethod, PosetSubdivision, SimplexCategory};

use crate::fincat::presentation::{Generator, Letter, Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SegalStatus {
    Bijective,
    InjectiveOnly,
    SurjectiveOnly,
    Neither,
}

/// The Segal map `X_p → X_1 ×_{X_0} … ×_{X_0} X_1` at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalLevel {
    pub level: usize,
    pub status: SegalStatus,
    /// Two cells with the same spine.
    pub collision: Option<(String, String)>,
    /// A composable string of edges that is not a spine.
    pub unfilled: Option<Vec<String>>,
}

/// The spine of `x ∈ X_p`: its edges `(i, i+1)`.
pub fn spine(x: &TruncSimpSet, p: usize, c: usize) -> Vec<usize> {
    (0..p).map(|i| x.pull(&[i, i + 1], p, c).expect("level 1 is stored")).collect()
}

/// Reports, for each stored level `2 ≤ p ≤ N`, whether the Segal map is
/// injective and surjective, with witnesses.
pub fn segal_check(x: &TruncSimpSet) -> Vec<SegalLevel> {
    let mut out = Vec::new();
    if x.trunc() < 1 {
        return out;
    }
    let src = |e: usize| x.face(1, 1, e);
    let tgt = |e: usize| x.face(1, 0, e);
    for p in 2..=x.trunc() {
        let mut seen = std::collections::HashMap::new();
        let mut collision = None;
        for c in 0..x.level_size(p) {
            if let Some(prev) = seen.insert(spine(x, p, c), c) {
                collision.get_or_insert((x.name(p, prev).to_string(), x.name(p, c).to_string()));
            }
        }
        // enumerate composable strings of p edges
        let mut unfilled = None;
        let mut stack: Vec<Vec<usize>> = (0..x.level_size(1)).map(|e| vec![e]).collect();
        while let Some(s) = stack.pop() {
            if s.len() == p {
                if !seen.contains_key(&s) {
                    unfilled = Some(s.iter().map(|&e| x.name(1, e).to_string()).collect());
                    break;
                }
                continue;
            }
            let end = tgt(*s.last().unwrap());
            for e in 0..x.level_size(1) {
                if src(e) == end {
                    let mut t = s.clone();
                    t.push(e);
                    stack.push(t);
                }
            }
        }
        let status = match (collision.is_none(), unfilled.is_none()) {
            (true, true) => SegalStatus::Bijective,
            (true, false) => SegalStatus::InjectiveOnly,
            (false, true) => SegalStatus::SurjectiveOnly,
            (false, false) => SegalStatus::Neither,
        };
        out.push(SegalLevel { level: p, status, collision, unfilled });
    }
    out
}

/// Presentation of the fundamental category: one generator per 1-cell,
/// degenerate edges equal identities, and every 2-cell `σ` imposes
/// `d2σ · d0σ = d1σ` (paths in diagrammatic order).
pub fn fundamental_category(x: &TruncSimpSet) -> Presentation {
    let objects = x.names(0).to_vec();
    let n1 = if x.trunc() >= 1 { x.level_size(1) } else { 0 };
    let generators = (0..n1)
        .map(|e| Generator { id: x.name(1, e).to_string(), src: x.face(1, 1, e), tgt: x.face(1, 0, e) })
        .collect();
    let mut relations = Vec::new();
    if x.trunc() >= 1 {
        for v in 0..x.level_size(0) {
            relations.push((Word::of(v, vec![Letter::gen(x.degen(0, 0, v))]), Word::empty(v)));
        }
    }
    if x.trunc() >= 2 {
        for s in 0..x.level_size(2) {
            let (d0, d1, d2) = (x.face(2, 0, s), x.face(2, 1, s), x.face(2, 2, s));
            let start = x.face(1, 1, d2);
            relations.push((Word::of(start, vec![Letter::gen(d2), Letter::gen(d0)]), Word::of(start, vec![Letter::gen(d1)])));
        }
    }
    Presentation { objects, generators, relations, invertible: BTreeSet::new() }
}

/// The fundamental groupoid presentation: as [`fundamental_category`] with
/// every generator invertible.
pub fn fundamental_groupoid(x: &TruncSimpSet) -> Presentation {
    let mut p = fundamental_category(x);
    p.invertible = (0..p.generators.len()).collect();
    p
}

/// Connected components of the 1-skeleton, as a component index per vertex.
pub fn components(x: &TruncSimpSet) -> (usize, Vec<usize>) {
    let n0 = x.level_size(0);
    let mut parent: Vec<usize> = (0..n0).collect();
    fn find(parent: &mut [usize], a: usize) -> usize {
        let mut r = a;
        while parent[r] != r {
            r = parent[r];
        }
        let mut a = a;
        while parent[a] != r {
            let next = parent[a];
            parent[a] = r;
            a = next;
        }
        r
    }
    if x.trunc() >= 1 {
        for e in 0..x.level_size(1) {
            let (a, b) = (find(&mut parent, x.face(1, 0, e)), find(&mut parent, x.face(1, 1, e)));
            parent[a] = b;
        }
    }
    let mut label = vec![usize::MAX; n0];
    let mut count = 0;
    let mut comp = Vec::with_capacity(n0);
    for v in 0..n0 {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        comp.push(label[r]);
    }
    (count, comp)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::presentation::{RewriteBounds, RewriteSystem};
    use crate::fincat::{builtins, FinCat};

    fn tau1_category(x: &TruncSimpSet) -> Arc<FinCat> {
        let p = fundamental_category(x);
        RewriteSystem::complete(&p, RewriteBounds::default()).unwrap().category().unwrap().cat
    }

    #[test]
    fn nerves_are_segal() {
        for c in [builtins::interval(), builtins::iso_interval(), builtins::chain(2), builtins::delooping(&crate::group::FiniteGroup::cyclic(2), "*")] {
            for level in segal_check(&nerve(&c, 3)) {
                assert_eq!(level.status, SegalStatus::Bijective);
            }
        }
    }

    #[test]
    fn inner_horn_and_boundary_are_not_surjective() {
        let h = segal_check(&horn(2, 1, 2));
        assert_eq!(h[0].status, SegalStatus::InjectiveOnly);
        assert_eq!(h[0].unfilled.as_deref(), Some(&["01".to_string(), "12".to_string()][..]));
        let b = segal_check(&boundary(2, 2));
        assert_eq!(b[0].status, SegalStatus::InjectiveOnly);
    }

    #[test]
    fn tau1_of_simplex_is_chain() {
        let c = tau1_category(&standard_simplex(2, 2));
        assert_eq!(c.num_objects(), 3);
        assert_eq!(c.num_morphisms(), 6);
        assert!(c.is_poset());
    }

    #[test]
    fn tau1_of_nerve_recovers_counts() {
        for c in [builtins::iso_chain(2), builtins::product(&builtins::interval(), &builtins::interval())] {
            let t = tau1_category(&nerve(&c, 2));
            assert_eq!(t.num_objects(), c.num_objects());
            assert_eq!(t.num_morphisms(), c.num_morphisms());
        }
    }

    #[test]
    fn circle_components() {
        let c = from_graph(&["v".into(), "w".into()], &[("e".into(), 0, 0)], 1);
        assert_eq!(components(&c).0, 2);
    }
}
