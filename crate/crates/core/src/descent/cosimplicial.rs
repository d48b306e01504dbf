use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{descent_category, factor_through, wide_fiber_product, GrpdPresheaf};
use crate::error::{Error, Result};
use crate::fincat::{build_category, check_equivalence, EquivalenceVerdict, FinCat, Functor, Mor, Obj};
use crate::site::FinSite;

/// Levels `A⁰, A¹, A²` with cofaces `d⁰, d¹: A⁰ → A¹`, `d⁰, d¹, d²: A¹ → A²`
/// and the codegeneracy `s⁰: A¹ → A⁰`.
#[derive(Clone, Debug)]
pub struct CosimplicialCat {
    pub levels: [Arc<FinCat>; 3],
    pub d1: [Functor; 2],
    pub d2: [Functor; 3],
    pub s0: Functor,
}

impl CosimplicialCat {
    pub fn new(levels: [Arc<FinCat>; 3], d1: [Functor; 2], d2: [Functor; 3], s0: Functor) -> Result<CosimplicialCat> {
        let a = CosimplicialCat { levels, d1, d2, s0 };
        if let Some(v) = a.violations().into_iter().next() {
            return Err(Error::Malformed(v));
        }
        Ok(a)
    }

    /// The constant diagram on `c` with identity structure maps.
    pub fn constant(c: Arc<FinCat>) -> CosimplicialCat {
        let id = Functor::identity(c.clone());
        CosimplicialCat {
            levels: [c.clone(), c.clone(), c],
            d1: [id.clone(), id.clone()],
            d2: [id.clone(), id.clone(), id.clone()],
            s0: id,
        }
    }

    /// Typing, functoriality and the cosimplicial identities on the stored levels.
    pub fn violations(&self) -> Vec<String> {
        let [a0, a1, a2] = &self.levels;
        let mut out = Vec::new();
        let typed = |f: &Functor, s: &Arc<FinCat>, t: &Arc<FinCat>| *f.src == **s && *f.tgt == **t && f.is_valid();
        for (i, d) in self.d1.iter().enumerate() {
            if !typed(d, a0, a1) {
                out.push(format!("d{i}: A0 -> A1 is not a functor"));
            }
        }
        for (i, d) in self.d2.iter().enumerate() {
            if !typed(d, a1, a2) {
                out.push(format!("d{i}: A1 -> A2 is not a functor"));
            }
        }
        if !typed(&self.s0, a1, a0) {
            out.push("s0: A1 -> A0 is not a functor".into());
        }
        if !out.is_empty() {
            return out;
        }
        let same = |f: &Functor, g: &Functor| f.omap == g.omap && f.mmap == g.mmap;
        // d^j d^i = d^i d^{j-1} for i < j, and s^0 d^0 = s^0 d^1 = id
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if !same(&self.d1[i].then(&self.d2[j]), &self.d1[j - 1].then(&self.d2[i])) {
                out.push(format!("d{j} d{i} differs from d{i} d{}", j - 1));
            }
        }
        let id = Functor::identity(a0.clone());
        for i in 0..2 {
            if !same(&self.d1[i].then(&self.s0), &id) {
                out.push(format!("s0 d{i} is not the identity"));
            }
        }
        out
    }
}

/// `F` along the Čech nerve of a single arrow `U → X`: `A^p = F(U^{p+1})`,
/// with `d^i` restriction along the projection forgetting factor `i`.
pub fn cech_cosimplicial(site: &FinSite, u: Mor, f: &GrpdPresheaf) -> Result<CosimplicialCat> {
    let c = &*site.cat;
    let missing = || Error::MissingFiberProduct(c.morphism_id(u).into(), c.morphism_id(u).into());
    let (p, pl) = wide_fiber_product(c, &[u, u]).ok_or_else(missing)?;
    let (t, tl) = wide_fiber_product(c, &[u, u, u]).ok_or_else(missing)?;
    let q = |i: usize, j: usize| factor_through(c, p, &pl, t, &[tl[i], tl[j]]).expect("pair product is universal");
    let id = c.id(c.src(u));
    let diagonal = factor_through(c, p, &pl, c.src(u), &[id, id]).expect("diagonal");
    let levels = [f.fibers[c.src(u)].clone(), f.fibers[p].clone(), f.fibers[t].clone()];
    let res = |m: Mor| f.res(m).clone();
    CosimplicialCat::new(levels, [res(pl[1]), res(pl[0])], [res(q(1, 2)), res(q(0, 2)), res(q(0, 1))], res(diagonal))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HolimMode {
    /// `φ` invertible.
    #[default]
    Descent,
    /// `φ` arbitrary.
    Lax,
}

/// The truncated totalization: objects `(x, φ: d¹x → d⁰x)` and morphisms
/// `u: x → x'` in `A⁰`.
#[derive(Clone, Debug)]
pub struct Holim {
    pub cat: Arc<FinCat>,
    pub objects: Vec<(Obj, Mor)>,
    pub components: Vec<Mor>,
}

/// Objects satisfy `d²φ ; d⁰φ = d¹φ` and `s⁰φ = id`; morphisms satisfy
/// `d¹u ; φ' = φ ; d⁰u`.
pub fn holim_delta2(a: &CosimplicialCat, mode: HolimMode) -> Holim {
    let [a0, a1, a2] = &a.levels;
    let [e0, e1] = &a.d1;
    let [f0, f1, f2] = &a.d2;
    let mut objects = Vec::new();
    for x in a0.objects() {
        for &phi in a1.hom(e1.obj(x), e0.obj(x)) {
            if mode == HolimMode::Descent && !a1.is_iso(phi) {
                continue;
            }
            if a2.then(f2.mor(phi), f0.mor(phi)) == f1.mor(phi) && a0.is_identity(a.s0.mor(phi)) {
                objects.push((x, phi));
            }
        }
    }
    let labeled = build_category(
        objects,
        |&(x, phi), &(y, psi)| {
            a0.hom(x, y).iter().copied().filter(|&u| a1.then(e1.mor(u), psi) == a1.then(phi, e0.mor(u))).collect()
        },
        |&(x, _)| a0.id(x),
        |_, _, _, &u, &v| a0.then(u, v),
        |&(x, phi)| format!("({},{})", a0.object_id(x), a1.morphism_id(phi)),
        |_, _, &u| a0.morphism_id(u).to_string(),
    )
    .expect("totalization is a category");
    Holim { cat: Arc::new(labeled.cat), objects: labeled.objs, components: labeled.mors }
}

/// Compares the totalization along a single arrow with its descent
/// category: `(x, φ)` is the datum with one local object and one transition.
pub fn holim_vs_descent(site: &FinSite, u: Mor, f: &GrpdPresheaf) -> Result<EquivalenceVerdict> {
    let h = holim_delta2(&cech_cosimplicial(site, u, f)?, HolimMode::Descent);
    let d = descent_category(site, &[u], f)?;
    let index: HashMap<(Obj, Mor), Obj> = d.data.iter().enumerate().map(|(i, dd)| ((dd.objects[0], dd.transitions[0]), i)).collect();
    let omap: Vec<Obj> = h.objects.iter().map(|o| index[o]).collect();
    let mmap: Vec<Mor> = h
        .cat
        .morphisms()
        .map(|m| {
            let (s, t) = (omap[h.cat.src(m)], omap[h.cat.tgt(m)]);
            d.cat.hom(s, t).iter().copied().find(|&n| d.components[n] == [h.components[m]]).expect("same compatibility condition")
        })
        .collect();
    Ok(check_equivalence(&Functor::new(h.cat.clone(), d.cat.clone(), omap, mmap)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fincat::builtins;
    use crate::group::FiniteGroup;

    #[test]
    fn constant_groupoids_totalize_to_themselves() {
        for c in [builtins::iso_chain(2), builtins::delooping(&FiniteGroup::symmetric3(), "*")] {
            let c = Arc::new(c);
            let h = holim_delta2(&CosimplicialCat::constant(c.clone()), HolimMode::Descent);
            let ev = Functor::from_fn(h.cat.clone(), c, |o| h.objects[o].0, |m| h.components[m]);
            assert!(check_equivalence(&ev).is_equivalence());
        }
    }

    #[test]
    fn empty_first_level() {
        let e = Arc::new(builtins::discrete(&[]));
        assert_eq!(holim_delta2(&CosimplicialCat::constant(e), HolimMode::Lax).cat.num_objects(), 0);
    }

    #[test]
    fn corrupted_identity_is_rejected() {
        let mut a = CosimplicialCat::constant(Arc::new(builtins::discrete(&["p".into(), "q".into()])));
        a.d2[1].omap = vec![1, 0];
        a.d2[1].mmap = vec![1, 0];
        assert!(a.violations().iter().any(|v| v.contains("d1 d0")));
    }

    #[test]
    fn single_arrow_cover_matches_descent() {
        let s = corpus::chain_site();
        let u = s.cat.morphism("0->1").unwrap();
        for (_, f) in corpus::grpd_presheaves(&s) {
            assert!(holim_vs_descent(&s, u, &f).unwrap().is_equivalence());
        }
    }
}
