//! Restriction `p^*` and its two adjoints along `p: Z → X`:
//! `p_*(A)(x) = lim` over pairs `(z, f: p(z) → x)` and
//! `p_!(A)(x) = colim` over pairs `(z, i: x → p(z))`.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use super::diagram::{colim, lim, SetDiagram};
use super::{PresheafMap, SetPresheaf};
use crate::fincat::{Functor, Mor, Obj};

/// `p^*B = B ∘ p`.
pub fn pullback(p: &Functor, b: &SetPresheaf) -> SetPresheaf {
    let z = &p.src;
    let elements = z.objects().map(|o| b.elements[p.obj(o)].clone()).collect();
    let restrictions = z.morphisms().map(|g| b.restrictions[p.mor(g)].clone()).collect();
    SetPresheaf { base: z.clone(), elements, restrictions }
}

/// `p_*A` with the data needed to map into and out of it.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub presheaf: SetPresheaf,
    /// The pairs `(z, f: p(z) → x)` indexing the limit at each `x`.
    pub comma: Vec<Vec<(Obj, Mor)>>,
    /// Each element of `p_*A(x)` as its family of components.
    pub families: Vec<Vec<Vec<usize>>>,
    comma_index: Vec<HashMap<(Obj, Mor), usize>>,
    family_index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Pushforward {
    pub fn component_at(&self, x: Obj, s: usize, z: Obj, f: Mor) -> usize {
        self.families[x][s][self.comma_index[x][&(z, f)]]
    }

    pub fn element_of(&self, x: Obj, family: &[usize]) -> usize {
        self.family_index[x][family]
    }
}

pub fn pushforward(p: &Functor, a: &SetPresheaf) -> Pushforward {
    let (zc, xc) = (&*p.src, &*p.tgt);
    let mut comma: Vec<Vec<(Obj, Mor)>> = Vec::new();
    let mut comma_index: Vec<HashMap<(Obj, Mor), usize>> = Vec::new();
    let mut families: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut family_index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    for x in xc.objects() {
        let objs: Vec<(Obj, Mor)> = zc.objects().flat_map(|z| xc.hom(p.obj(z), x).iter().map(move |&f| (z, f))).collect::<Vec<_>>();
        let index: HashMap<(Obj, Mor), usize> = objs.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut d = SetDiagram::new(objs.iter().map(|&(z, _)| a.size(z)).collect());
        for (i, &(z, f)) in objs.iter().enumerate() {
            for g in zc.into(z) {
                // g: z0 → z is a morphism (z0, p(g);f) → (z, f)
                let z0 = zc.src(g);
                let j = index[&(z0, xc.then(p.mor(g), f))];
                d.arrow(i, j, a.restrictions[g].clone());
            }
        }
        let fams = lim(&d).families;
        family_index.push(fams.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect());
        families.push(fams);
        comma.push(objs);
        comma_index.push(index);
    }
    let elements = xc
        .objects()
        .map(|x| {
            families[x]
                .iter()
                .map(|s| format!("({})", s.iter().enumerate().map(|(i, &v)| a.element_name(comma[x][i].0, v)).join(",")))
                .collect()
        })
        .collect();
    let restrictions = xc
        .morphisms()
        .map(|h| {
            let (x0, x1) = (xc.src(h), xc.tgt(h));
            families[x1]
                .iter()
                .map(|s| {
                    let t: Vec<usize> = comma[x0].iter().map(|&(z, f)| s[comma_index[x1][&(z, xc.then(f, h))]]).collect();
                    family_index[x0][&t]
                })
                .collect()
        })
        .collect();
    let presheaf = SetPresheaf { base: p.tgt.clone(), elements, restrictions };
    Pushforward { presheaf, comma, families, comma_index, family_index }
}

/// `p_!A` with representatives of its classes.
#[derive(Clone, Debug)]
pub struct Shriek {
    pub presheaf: SetPresheaf,
    /// The pairs `(z, i: x → p(z))` indexing the colimit at each `x`.
    pub comma: Vec<Vec<(Obj, Mor)>>,
    /// `class[x][k][a]`: class of `a ∈ A(z)` at the `k`-th pair.
    pub class: Vec<Vec<Vec<usize>>>,
    /// A representative `(pair index, element)` of each class.
    pub reps: Vec<Vec<(usize, usize)>>,
    comma_index: Vec<HashMap<(Obj, Mor), usize>>,
}

impl Shriek {
    pub fn class_of(&self, x: Obj, z: Obj, i: Mor, a: usize) -> usize {
        self.class[x][self.comma_index[x][&(z, i)]][a]
    }
}

pub fn shriek(p: &Functor, a: &SetPresheaf) -> Shriek {
    let (zc, xc) = (&*p.src, &*p.tgt);
    let mut comma = Vec::new();
    let mut comma_index = Vec::new();
    let mut class = Vec::new();
    let mut reps = Vec::new();
    for x in xc.objects() {
        let objs: Vec<(Obj, Mor)> = zc.objects().flat_map(|z| xc.hom(x, p.obj(z)).iter().map(move |&i| (z, i))).collect();
        let index: HashMap<(Obj, Mor), usize> = objs.iter().enumerate().map(|(k, &o)| (o, k)).collect();
        let mut d = SetDiagram::new(objs.iter().map(|&(z, _)| a.size(z)).collect());
        for (k, &(z, i)) in objs.iter().enumerate() {
            for g in zc.out_of(z) {
                // g: z → z1 is a morphism (z, i) → (z1, i;p(g)); A(g) goes back
                let k1 = index[&(zc.tgt(g), xc.then(i, p.mor(g)))];
                d.arrow(k1, k, a.restrictions[g].clone());
            }
        }
        let c = colim(&d);
        let mut r = vec![(usize::MAX, 0); c.classes];
        for (k, inj) in c.injections.iter().enumerate() {
            for (e, &cl) in inj.iter().enumerate() {
                if r[cl].0 == usize::MAX {
                    r[cl] = (k, e);
                }
            }
        }
        class.push(c.injections);
        reps.push(r);
        comma.push(objs);
        comma_index.push(index);
    }
    let elements = xc
        .objects()
        .map(|x| {
            reps[x]
                .iter()
                .map(|&(k, e)| {
                    let (z, i) = comma[x][k];
                    format!("[{}@{}]", a.element_name(z, e), xc.morphism_id(i))
                })
                .collect()
        })
        .collect();
    let restrictions = xc
        .morphisms()
        .map(|h| {
            let (x0, x1) = (xc.src(h), xc.tgt(h));
            reps[x1]
                .iter()
                .map(|&(k, e)| {
                    let (z, i) = comma[x1][k];
                    class[x0][comma_index[x0][&(z, xc.then(h, i))]][e]
                })
                .collect()
        })
        .collect();
    let presheaf = SetPresheaf { base: p.tgt.clone(), elements, restrictions };
    Shriek { presheaf, comma, class, reps, comma_index }
}

/// `η: A → p^*p_!A`, `a ↦ [a at (z, id)]`.
pub fn shriek_unit(p: &Functor, a: &SetPresheaf, sh: &Shriek) -> PresheafMap {
    let components = p
        .src
        .objects()
        .map(|z| {
            let pz = p.obj(z);
            (0..a.size(z)).map(|e| sh.class_of(pz, z, p.tgt.id(pz), e)).collect()
        })
        .collect();
    PresheafMap { components }
}

/// `ε: p_!p^*B → B`, `[b at (z, i)] ↦ B(i)(b)`. `sh` must be `p_!(p^*B)`.
pub fn shriek_counit(_p: &Functor, b: &SetPresheaf, sh: &Shriek) -> PresheafMap {
    let components = b
        .base
        .objects()
        .map(|x| sh.reps[x].iter().map(|&(k, e)| b.restrict(sh.comma[x][k].1, e)).collect())
        .collect();
    PresheafMap { components }
}

/// `η: B → p_*p^*B`, `b ↦ (B(f)(b))_(z, f)`. `pf` must be `p_*(p^*B)`.
pub fn star_unit(_p: &Functor, b: &SetPresheaf, pf: &Pushforward) -> PresheafMap {
    let components = b
        .base
        .objects()
        .map(|x| {
            (0..b.size(x))
                .map(|e| {
                    let fam: Vec<usize> = pf.comma[x].iter().map(|&(_, f)| b.restrict(f, e)).collect();
                    pf.element_of(x, &fam)
                })
                .collect()
        })
        .collect();
    PresheafMap { components }
}

/// `ε: p^*p_*A → A`, a family goes to its component at `(z, id)`.
pub fn star_counit(p: &Functor, a: &SetPresheaf, pf: &Pushforward) -> PresheafMap {
    let components = p
        .src
        .objects()
        .map(|z| {
            let pz = p.obj(z);
            (0..pf.presheaf.size(pz)).map(|s| pf.component_at(pz, s, z, p.tgt.id(pz))).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    debug_assert!(components.iter().enumerate().all(|(z, c)| c.iter().all(|&v| v < a.size(z))));
    PresheafMap { components }
}

/// `p^*` applied to a map of presheaves on the target.
pub fn pullback_map(p: &Functor, alpha: &PresheafMap) -> PresheafMap {
    PresheafMap { components: p.src.objects().map(|z| alpha.components[p.obj(z)].clone()).collect() }
}

/// `p_!` applied to `α: A → A'`.
pub fn shriek_map(from: &Shriek, to: &Shriek, alpha: &PresheafMap) -> PresheafMap {
    let components = from
        .reps
        .iter()
        .enumerate()
        .map(|(x, reps)| {
            reps.iter()
                .map(|&(k, e)| {
                    let (z, i) = from.comma[x][k];
                    to.class_of(x, z, i, alpha.components[z][e])
                })
                .collect()
        })
        .collect();
    PresheafMap { components }
}

/// `p_*` applied to `α: A → A'`.
pub fn pushforward_map(from: &Pushforward, to: &Pushforward, alpha: &PresheafMap) -> PresheafMap {
    let components = from
        .families
        .iter()
        .enumerate()
        .map(|(x, fams)| {
            fams.iter()
                .map(|s| {
                    let t: Vec<usize> = s.iter().enumerate().map(|(k, &v)| alpha.components[from.comma[x][k].0][v]).collect();
                    to.element_of(x, &t)
                })
                .collect()
        })
        .collect();
    PresheafMap { components }
}

/// First triangle of `p_! ⊣ p^*` at `A` for a given unit component:
/// `p_!A → p_!p^*p_!A → p_!A` must be the identity.
pub fn shriek_triangle_holds(p: &Functor, a: &SetPresheaf, unit: &PresheafMap) -> bool {
    let sh = shriek(p, a);
    let back = pullback(p, &sh.presheaf);
    let sh2 = shriek(p, &back);
    let eps = shriek_counit(p, &sh.presheaf, &sh2);
    unit.is_natural(a, &back) && shriek_map(&sh, &sh2, unit).then(&eps) == PresheafMap::identity(&sh.presheaf)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub shriek_triangles: bool,
    pub star_triangles: bool,
    pub failures: Vec<String>,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.shriek_triangles && self.star_triangles
    }
}

/// Checks both triangle identities of `p_! ⊣ p^*` and `p^* ⊣ p_*` on the
/// given presheaves over the source (`on_src`) and target (`on_tgt`), and
/// naturality of every unit and counit involved.
pub fn verify_adjunction(p: &Functor, on_src: &[SetPresheaf], on_tgt: &[SetPresheaf]) -> AdjunctionReport {
    let mut failures = Vec::new();
    for (n, a) in on_src.iter().enumerate() {
        let sh = shriek(p, a);
        if !shriek_triangle_holds(p, a, &shriek_unit(p, a, &sh)) {
            failures.push(format!("p_! triangle fails on source presheaf {n}"));
        }
        let pf = pushforward(p, a);
        let back = pullback(p, &pf.presheaf);
        let pf2 = pushforward(p, &back);
        let eta = star_unit(p, &pf.presheaf, &pf2);
        let eps = star_counit(p, a, &pf);
        let tri = eta.then(&pushforward_map(&pf2, &pf, &eps));
        if !eta.is_natural(&pf.presheaf, &pf2.presheaf) || !eps.is_natural(&back, a) || tri != PresheafMap::identity(&pf.presheaf) {
            failures.push(format!("p_* triangle fails on source presheaf {n}"));
        }
    }
    let shriek_src = failures.iter().filter(|f| f.starts_with("p_!")).count();
    let star_src = failures.len() - shriek_src;
    let (mut shriek_tgt, mut star_tgt) = (0, 0);
    for (n, b) in on_tgt.iter().enumerate() {
        let pb = pullback(p, b);
        let sh = shriek(p, &pb);
        let eta = shriek_unit(p, &pb, &sh);
        let eps = shriek_counit(p, b, &sh);
        if !eps.is_natural(&sh.presheaf, b) || eta.then(&pullback_map(p, &eps)) != PresheafMap::identity(&pb) {
            failures.push(format!("p_! triangle fails on target presheaf {n}"));
            shriek_tgt += 1;
        }
        let pf = pushforward(p, &pb);
        let eta = star_unit(p, b, &pf);
        let eps = star_counit(p, &pb, &pf);
        if !eta.is_natural(b, &pf.presheaf) || pullback_map(p, &eta).then(&eps) != PresheafMap::identity(&pb) {
            failures.push(format!("p_* triangle fails on target presheaf {n}"));
            star_tgt += 1;
        }
    }
    AdjunctionReport { shriek_triangles: shriek_src + shriek_tgt == 0, star_triangles: star_src + star_tgt == 0, failures }
}
