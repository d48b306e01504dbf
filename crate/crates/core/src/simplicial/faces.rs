use std::sync::Arc;

use serde::Serialize;

use super::fundamental_category;
use super::sset::faces_union;
use crate::error::{Error, Result};
use crate::fincat::presentation::{RewriteBounds, RewriteSystem};
use crate::fincat::{builtins, check_equivalence, EquivalenceVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacesReport {
    pub p: usize,
    pub removed: Vec<usize>,
    /// The union contains the first and last faces but not every face.
    pub hypothesis_holds: bool,
    pub verdict: EquivalenceVerdict,
}

/// Builds `U = ⋃ V^i ⊆ Δ^p` over the listed `i` (the face opposite vertex
/// `i`) and checks whether `τ₁(U) → I^(p)` is an equivalence.
pub fn faces_union_check(p: usize, removed: &[usize], bounds: RewriteBounds) -> Result<FacesReport> {
    if p == 0 || p > 4 || removed.iter().any(|&i| i > p) {
        return Err(Error::Malformed(format!("faces of Δ^{p} are indexed 0..={p}, with 1 <= p <= 4")));
    }
    let mut removed = removed.to_vec();
    removed.sort_unstable();
    removed.dedup();
    let hypothesis_holds = removed.contains(&0) && removed.contains(&p) && removed.len() < p + 1;
    let u = faces_union(p, &removed, 2);
    let pres = fundamental_category(&u);
    let rs = RewriteSystem::complete(&pres, bounds)?;
    let normal = rs.category()?;
    let chain = Arc::new(builtins::chain(p));
    let digit = |s: &str, k: usize| s.as_bytes()[k] as usize - b'0' as usize;
    let omap = pres.objects.iter().map(|v| digit(v, 0)).collect();
    let functor = normal.induced_functor(&pres, chain.clone(), omap, |g| {
        let e = &pres.generators[g].id;
        chain.hom(digit(e, 0), digit(e, 1))[0]
    })?;
    Ok(FacesReport { p, removed, hypothesis_holds, verdict: check_equivalence(&functor) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spine_of_two_simplex() {
        let r = faces_union_check(2, &[0, 2], RewriteBounds::default()).unwrap();
        assert!(r.hypothesis_holds);
        assert!(r.verdict.is_equivalence());
    }

    #[test]
    fn boundary_fails() {
        let r = faces_union_check(2, &[0, 1, 2], RewriteBounds::default()).unwrap();
        assert!(!r.hypothesis_holds);
        assert!(matches!(r.verdict, EquivalenceVerdict::NotFaithful { .. }));
    }

    #[test]
    fn outer_faces_of_three_simplex() {
        let r = faces_union_check(3, &[0, 3], RewriteBounds::new(8)).unwrap();
        assert!(r.verdict.is_equivalence());
    }
}
