use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use super::{factor_through, wide_fiber_product, GrpdPresheaf};
use crate::error::{Error, Result};
use crate::fincat::{build_category, check_equivalence, EquivalenceVerdict, FinCat, Functor, Mor, Obj};
use crate::site::FinSite;

/// Local objects `a_α ∈ F(U_α)` and transitions `φ_αβ: p1*a_α → p2*a_β` in
/// `F(U_α ×_X U_β)`, one per ordered pair in [`DescentCategory::pairs`] order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DescentDatum {
    pub objects: Vec<Obj>,
    pub transitions: Vec<Mor>,
}

/// The chosen fiber products of a cover.
#[derive(Clone, Debug)]
struct Overlaps {
    /// `(α, β, P, p1, p2)`.
    pairs: Vec<(usize, usize, Obj, Mor, Mor)>,
    /// `(α, β, γ, T, q12, q23, q13)` with each `q` landing in the pair object.
    triples: Vec<(usize, usize, usize, Obj, Mor, Mor, Mor)>,
    /// `δ_α: U_α → U_α ×_X U_α`.
    diagonals: Vec<Mor>,
}

fn overlaps(c: &FinCat, cover: &[Mor]) -> Result<Overlaps> {
    let n = cover.len();
    let missing = |a: usize, b: usize| Error::MissingFiberProduct(c.morphism_id(cover[a]).into(), c.morphism_id(cover[b]).into());
    let mut pairs = Vec::new();
    let mut pair_legs = HashMap::new();
    for (a, b) in (0..n).cartesian_product(0..n) {
        let (p, legs) = wide_fiber_product(c, &[cover[a], cover[b]]).ok_or_else(|| missing(a, b))?;
        pair_legs.insert((a, b), (p, legs.clone()));
        pairs.push((a, b, p, legs[0], legs[1]));
    }
    let mut triples = Vec::new();
    for t in (0..3).map(|_| 0..n).multi_cartesian_product() {
        let (a, b, g) = (t[0], t[1], t[2]);
        let (w, legs) = wide_fiber_product(c, &[cover[a], cover[b], cover[g]]).ok_or_else(|| missing(a, g))?;
        let into = |i: usize, j: usize| {
            let (p, pl) = &pair_legs[&(t[i], t[j])];
            factor_through(c, *p, pl, w, &[legs[i], legs[j]]).expect("pair product is universal")
        };
        triples.push((a, b, g, w, into(0, 1), into(1, 2), into(0, 2)));
    }
    let diagonals = (0..n)
        .map(|a| {
            let (p, pl) = &pair_legs[&(a, a)];
            let id = c.id(c.src(cover[a]));
            factor_through(c, *p, pl, c.src(cover[a]), &[id, id]).expect("diagonal")
        })
        .collect();
    Ok(Overlaps { pairs, triples, diagonals })
}

/// The category of descent data of `F` along a cover, with the comparison
/// `F(X) → Desc` sending `x` to its restrictions and identity transitions.
#[derive(Clone, Debug)]
pub struct DescentCategory {
    pub cat: Arc<FinCat>,
    pub data: Vec<DescentDatum>,
    /// Components `u_α` of each morphism.
    pub components: Vec<Vec<Mor>>,
    /// Ordered pairs `(α, β)` indexing the transitions.
    pub pairs: Vec<(usize, usize)>,
    pub comparison: Functor,
}

impl DescentCategory {
    pub fn iso_class_count(&self) -> usize {
        self.cat.iso_classes().len()
    }

    pub fn comparison_verdict(&self) -> EquivalenceVerdict {
        check_equivalence(&self.comparison)
    }
}

/// Descent data for a family `U_α → X` whose pairwise and triple fiber
/// products exist. Transitions must be invertible, satisfy `δ*φ_αα = id` and
/// `q12*φ_αβ ; q23*φ_βγ = q13*φ_αγ`; morphisms are families `u_α` with
/// `p1*u_α ; φ'_αβ = φ_αβ ; p2*u_β`.
pub fn descent_category(site: &FinSite, cover: &[Mor], f: &GrpdPresheaf) -> Result<DescentCategory> {
    let c = &*site.cat;
    let Some(&first) = cover.first() else {
        return Err(Error::Malformed("descent needs a nonempty family".into()));
    };
    let x = c.tgt(first);
    if let Some(&bad) = cover.iter().find(|&&u| c.tgt(u) != x) {
        return Err(Error::MixedTargets(c.morphism_id(first).into(), c.morphism_id(bad).into()));
    }
    let ov = overlaps(c, cover)?;
    let pair_index: HashMap<(usize, usize), usize> = ov.pairs.iter().enumerate().map(|(i, &(a, b, ..))| ((a, b), i)).collect();

    let mut data = Vec::new();
    for objects in cover.iter().map(|&u| f.fibers[c.src(u)].objects()).multi_cartesian_product() {
        let candidates: Vec<Vec<Mor>> = ov
            .pairs
            .iter()
            .map(|&(a, b, p, p1, p2)| {
                let fib = &*f.fibers[p];
                let (s, t) = (f.res(p1).obj(objects[a]), f.res(p2).obj(objects[b]));
                let isos = fib.hom(s, t).iter().copied().filter(|&m| fib.is_iso(m));
                if a == b {
                    // the unit condition pins φ_αα down wherever the diagonal sees it
                    let d = ov.diagonals[a];
                    isos.filter(|&m| f.fibers[c.src(d)].is_identity(f.res(d).mor(m))).collect()
                } else {
                    isos.collect()
                }
            })
            .collect();
        let cocycle = |phi: &[Mor]| {
            ov.triples.iter().all(|&(a, b, g, w, q12, q23, q13)| {
                let fib = &*f.fibers[w];
                let at = |i: usize, j: usize, q: Mor| f.res(q).mor(phi[pair_index[&(i, j)]]);
                fib.then(at(a, b, q12), at(b, g, q23)) == at(a, g, q13)
            })
        };
        for phi in candidates.into_iter().multi_cartesian_product() {
            if cocycle(&phi) {
                data.push(DescentDatum { objects: objects.clone(), transitions: phi });
            }
        }
    }

    let homs = |s: &DescentDatum, t: &DescentDatum| -> Vec<Vec<Mor>> {
        cover
            .iter()
            .enumerate()
            .map(|(a, &u)| f.fibers[c.src(u)].hom(s.objects[a], t.objects[a]).to_vec())
            .multi_cartesian_product()
            .filter(|us| {
                ov.pairs.iter().enumerate().all(|(i, &(a, b, p, p1, p2))| {
                    let fib = &*f.fibers[p];
                    fib.then(f.res(p1).mor(us[a]), t.transitions[i]) == fib.then(s.transitions[i], f.res(p2).mor(us[b]))
                })
            })
            .collect()
    };
    let show = |d: &DescentDatum| {
        let objs = cover.iter().enumerate().map(|(a, &u)| f.fibers[c.src(u)].object_id(d.objects[a])).join(",");
        let phis = ov.pairs.iter().zip(&d.transitions).map(|(&(_, _, p, ..), &m)| f.fibers[p].morphism_id(m)).join(",");
        format!("[{objs}|{phis}]")
    };
    let idx: Vec<usize> = (0..data.len()).collect();
    let labeled = build_category(
        idx,
        |&i, &j| homs(&data[i], &data[j]),
        |&i| cover.iter().enumerate().map(|(a, &u)| f.fibers[c.src(u)].id(data[i].objects[a])).collect(),
        |_, _, _, u: &Vec<Mor>, v: &Vec<Mor>| cover.iter().enumerate().map(|(a, &w)| f.fibers[c.src(w)].then(u[a], v[a])).collect(),
        |&i| show(&data[i]),
        |_, _, u| format!("({})", cover.iter().enumerate().map(|(a, &w)| f.fibers[c.src(w)].morphism_id(u[a])).join(",")),
    )?;
    let cat = Arc::new(labeled.cat.clone());

    let fx = &f.fibers[x];
    let index: HashMap<&DescentDatum, Obj> = data.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let restricted = |o: Obj| DescentDatum {
        objects: cover.iter().map(|&u| f.res(u).obj(o)).collect(),
        transitions: ov.pairs.iter().map(|&(a, _, p, p1, _)| f.fibers[p].id(f.res(p1).obj(f.res(cover[a]).obj(o)))).collect(),
    };
    let omap: Vec<Obj> = fx.objects().map(|o| index[&restricted(o)]).collect();
    let mmap: Vec<Mor> = fx
        .morphisms()
        .map(|r| {
            let comps: Vec<Mor> = cover.iter().map(|&u| f.res(u).mor(r)).collect();
            labeled.mor(omap[fx.src(r)], omap[fx.tgt(r)], &comps).expect("restriction of a morphism is compatible")
        })
        .collect();
    let comparison = Functor::new(fx.clone(), cat.clone(), omap, mmap)?;
    Ok(DescentCategory {
        cat,
        data,
        components: labeled.mors,
        pairs: ov.pairs.iter().map(|&(a, b, ..)| (a, b)).collect(),
        comparison,
    })
}
