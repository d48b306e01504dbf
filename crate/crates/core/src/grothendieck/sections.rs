use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use super::{CatPresheaf, PseudoFunctor};
use crate::fincat::{build_category, check_equivalence, EquivalenceVerdict, FinCat, Functor, Mor, Obj};

/// A section of `∫A → Y`: an object over each `y` and, over each `f: y → z`,
/// an arrow `res_f σ(y) → σ(z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Section {
    pub objects: Vec<Obj>,
    /// Indexed by every morphism of the base, identities included.
    pub arrows: Vec<Mor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    /// Arbitrary transition arrows.
    Lax,
    /// Invertible transition arrows.
    Eq,
    /// Identity transition arrows, so `res_f σ(y) = σ(z)`; strict presheaves only.
    Strict,
}

/// A category of sections with, for each of its morphisms, the component
/// over each base object.
#[derive(Clone, Debug)]
pub struct Sections {
    pub cat: Arc<FinCat>,
    pub sections: Vec<Section>,
    pub components: Vec<Vec<Mor>>,
}

/// Sections of a pseudofunctor. Transition arrows satisfy
/// `res_l(σ(k)) ; σ(l) = γ_{k,l} ; σ(k;l)` and `unit ; σ(id) = id`;
/// morphisms are families `u` with `res_k(u_p) ; τ(k) = σ(k) ; u_q`.
pub fn pseudo_sections(p: &PseudoFunctor, kind: SectionKind) -> Sections {
    section_category(p, enumerate_sections(p, kind, None))
}

/// All sections of the given kind, optionally with the object over each base
/// object drawn from `allowed`.
pub(crate) fn enumerate_sections(p: &PseudoFunctor, kind: SectionKind, allowed: Option<&[Vec<Obj>]>) -> Vec<Section> {
    let b = &*p.base;
    let non_id: Vec<Mor> = b.morphisms().filter(|&k| !b.is_identity(k)).collect();
    let pos: HashMap<Mor, usize> = non_id.iter().enumerate().map(|(i, &k)| (k, i + 1)).collect();
    let at = |k: Mor| pos.get(&k).copied().unwrap_or(0);
    // pairs checked as soon as their last member is assigned
    let mut ready: Vec<Vec<(Mor, Mor)>> = vec![Vec::new(); non_id.len() + 1];
    for k in b.morphisms() {
        for l in b.out_of(b.tgt(k)) {
            ready[at(k).max(at(l)).max(at(b.then(k, l)))].push((k, l));
        }
    }
    let holds = |arrows: &[Mor], objects: &[Obj], (k, l): (Mor, Mor)| {
        let fib = &*p.fibers[b.tgt(l)];
        fib.then(p.res(l).mor(arrows[k]), arrows[l]) == fib.then(p.gamma(k, l, objects[b.src(k)]), arrows[b.then(k, l)])
    };

    let mut sections = Vec::new();
    let pool = |x: Obj| -> Vec<Obj> {
        match allowed {
            Some(a) => a[x].clone(),
            None => p.fibers[x].objects().collect(),
        }
    };
    let choices = b.objects().map(pool).multi_cartesian_product();
    for objects in choices {
        let mut arrows = vec![usize::MAX; b.num_morphisms()];
        let mut ok = true;
        for x in b.objects() {
            let fib = &*p.fibers[x];
            match fib.inverse(p.unit[x][objects[x]]) {
                Some(m) => arrows[b.id(x)] = m,
                None => ok = false,
            }
        }
        if !ok || !ready[0].iter().all(|&kl| holds(&arrows, &objects, kl)) {
            continue;
        }
        let candidates = |k: Mor| -> Vec<Mor> {
            let fib = &*p.fibers[b.tgt(k)];
            let src = p.res(k).obj(objects[b.src(k)]);
            let dst = objects[b.tgt(k)];
            match kind {
                SectionKind::Strict => (src == dst).then(|| fib.id(dst)).into_iter().collect(),
                SectionKind::Eq => fib.hom(src, dst).iter().copied().filter(|&r| fib.is_iso(r)).collect(),
                SectionKind::Lax => fib.hom(src, dst).to_vec(),
            }
        };
        fn go(
            i: usize,
            non_id: &[Mor],
            arrows: &mut Vec<Mor>,
            candidates: &dyn Fn(Mor) -> Vec<Mor>,
            check: &dyn Fn(&[Mor], usize) -> bool,
            out: &mut Vec<Vec<Mor>>,
        ) {
            if i == non_id.len() {
                out.push(arrows.clone());
                return;
            }
            for r in candidates(non_id[i]) {
                arrows[non_id[i]] = r;
                if check(arrows, i + 1) {
                    go(i + 1, non_id, arrows, candidates, check, out);
                }
            }
            arrows[non_id[i]] = usize::MAX;
        }
        let check = |arrows: &[Mor], level: usize| ready[level].iter().all(|&kl| holds(arrows, &objects, kl));
        let mut found = Vec::new();
        go(0, &non_id, &mut arrows, &candidates, &check, &mut found);
        sections.extend(found.into_iter().map(|arrows| Section { objects: objects.clone(), arrows }));
    }
    sections
}

/// Morphisms `s → t`: families `u` natural with respect to the transitions.
fn section_homs(p: &PseudoFunctor, s: &Section, t: &Section) -> Vec<Vec<Mor>> {
    let b = &*p.base;
    let mut out = Vec::new();
    let mut u: Vec<Mor> = Vec::with_capacity(b.num_objects());
    fn go(b: &FinCat, p: &PseudoFunctor, s: &Section, t: &Section, u: &mut Vec<Mor>, out: &mut Vec<Vec<Mor>>) {
        let x = u.len();
        if x == b.num_objects() {
            out.push(u.clone());
            return;
        }
        let fib = &*p.fibers[x];
        for &r in fib.hom(s.objects[x], t.objects[x]) {
            u.push(r);
            let natural = b.morphisms().filter(|&k| b.src(k).max(b.tgt(k)) == x).all(|k| {
                let f = &*p.fibers[b.tgt(k)];
                f.then(p.res(k).mor(u[b.src(k)]), t.arrows[k]) == f.then(s.arrows[k], u[b.tgt(k)])
            });
            if natural {
                go(b, p, s, t, u, out);
            }
            u.pop();
        }
    }
    go(b, p, s, t, &mut u, &mut out);
    out
}

/// The full subcategory of sections on the given list, in that order.
pub(crate) fn section_category(p: &PseudoFunctor, sections: Vec<Section>) -> Sections {
    let b = &*p.base;
    let show = |s: &Section| {
        let objs = b.objects().map(|x| p.fibers[x].object_id(s.objects[x])).join(",");
        let twists: Vec<String> = b
            .morphisms()
            .filter(|&k| !b.is_identity(k) && !p.fibers[b.tgt(k)].is_identity(s.arrows[k]))
            .map(|k| format!("{}:{}", b.morphism_id(k), p.fibers[b.tgt(k)].morphism_id(s.arrows[k])))
            .collect();
        if twists.is_empty() {
            format!("[{objs}]")
        } else {
            format!("[{objs}|{}]", twists.join(","))
        }
    };
    let idx: Vec<usize> = (0..sections.len()).collect();
    let labeled = build_category(
        idx,
        |&i, &j| section_homs(p, &sections[i], &sections[j]),
        |&i| b.objects().map(|x| p.fibers[x].id(sections[i].objects[x])).collect(),
        |_, _, _, u: &Vec<Mor>, v: &Vec<Mor>| b.objects().map(|x| p.fibers[x].then(u[x], v[x])).collect(),
        |&i| show(&sections[i]),
        |_, _, u| format!("({})", b.objects().map(|x| p.fibers[x].morphism_id(u[x])).join(",")),
    )
    .expect("sections form a category");
    let sections = labeled.objs.iter().map(|&i| sections[i].clone()).collect();
    Sections { cat: Arc::new(labeled.cat), sections, components: labeled.mors }
}

pub fn sections(a: &CatPresheaf) -> Sections {
    pseudo_sections(&PseudoFunctor::from_strict(a), SectionKind::Lax)
}

pub fn eq_sections(a: &CatPresheaf) -> Sections {
    pseudo_sections(&PseudoFunctor::from_strict(a), SectionKind::Eq)
}

/// `Γ(Y, A)`: sections with identity transitions.
pub fn strict_sections(a: &CatPresheaf) -> Sections {
    pseudo_sections(&PseudoFunctor::from_strict(a), SectionKind::Strict)
}

/// Evaluation at a base object, into the fiber there.
pub fn evaluation(s: &Sections, fiber: Arc<FinCat>, at: Obj) -> Functor {
    Functor::from_fn(s.cat.clone(), fiber, |i| s.sections[i].objects[at], |m| s.components[m][at])
}

/// Whether the inclusion of strict sections into eq-sections is an
/// equivalence.
pub fn gamma_vs_eq_sections(a: &CatPresheaf) -> EquivalenceVerdict {
    let (g, e) = (strict_sections(a), eq_sections(a));
    let index: HashMap<&Section, Obj> = e.sections.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let hom: HashMap<(Obj, Obj, &Vec<Mor>), Mor> =
        e.cat.morphisms().map(|m| ((e.cat.src(m), e.cat.tgt(m), &e.components[m]), m)).collect();
    let omap: Vec<Obj> = g.sections.iter().map(|s| index[s]).collect();
    let mmap = g.cat.morphisms().map(|m| hom[&(omap[g.cat.src(m)], omap[g.cat.tgt(m)], &g.components[m])]).collect();
    check_equivalence(&Functor { src: g.cat.clone(), tgt: e.cat.clone(), omap, mmap })
}
