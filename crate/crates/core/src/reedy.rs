//! Reedy structures on finite categories with bounded degrees, latching and
//! matching data, and the filtration of a nerve by regular simplices.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{build_category, FinCat, Mor, Obj};
use crate::presheaf::{colim, lim, SetDiagram, SetPresheaf};

#[derive(Clone, Debug)]
pub struct ReedyCat {
    pub cat: Arc<FinCat>,
    pub degree: Vec<usize>,
    /// Both sets contain every identity.
    pub direct: BTreeSet<Mor>,
    pub inverse: BTreeSet<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReedyViolation {
    DirectNotRaising { morphism: String },
    InverseNotLowering { morphism: String },
    NotClosed { f: String, g: String },
    NoFactorization { morphism: String },
    SeveralFactorizations { morphism: String, count: usize },
}

impl ReedyCat {
    pub fn new(cat: Arc<FinCat>, degree: Vec<usize>, direct: impl IntoIterator<Item = Mor>, inverse: impl IntoIterator<Item = Mor>) -> Result<ReedyCat> {
        if degree.len() != cat.num_objects() {
            return Err(Error::Malformed("one degree per object is required".into()));
        }
        let ids = cat.objects().map(|x| cat.id(x));
        let direct: BTreeSet<Mor> = direct.into_iter().chain(ids.clone()).collect();
        let inverse: BTreeSet<Mor> = inverse.into_iter().chain(ids).collect();
        if let Some(f) = direct.iter().chain(&inverse).find(|&&f| f >= cat.num_morphisms()) {
            return Err(Error::UnknownMorphism(format!("#{f}")));
        }
        Ok(ReedyCat { cat, degree, direct, inverse })
    }

    /// Non-identity arrows raising the degree are direct, those lowering it
    /// inverse; arrows between equal degrees are in neither class.
    pub fn by_degree(cat: Arc<FinCat>, degree: Vec<usize>) -> ReedyCat {
        let direct: Vec<Mor> = cat.morphisms().filter(|&f| degree[cat.src(f)] < degree[cat.tgt(f)]).collect();
        let inverse: Vec<Mor> = cat.morphisms().filter(|&f| degree[cat.src(f)] > degree[cat.tgt(f)]).collect();
        ReedyCat::new(cat, degree, direct, inverse).expect("degrees cover every object")
    }

    /// For categories of monotone maps labelled by their values, with the
    /// degree of an object its dimension: injections are direct and
    /// surjections inverse.
    pub fn simplicial(cat: Arc<FinCat>, degree: Vec<usize>, maps: &[Vec<usize>]) -> ReedyCat {
        let injective = |f: Mor| maps[f].windows(2).all(|w| w[0] < w[1]);
        let surjective = |f: Mor| (0..=degree[cat.tgt(f)]).all(|v| maps[f].contains(&v));
        let direct: Vec<Mor> = cat.morphisms().filter(|&f| injective(f)).collect();
        let inverse: Vec<Mor> = cat.morphisms().filter(|&f| surjective(f)).collect();
        ReedyCat::new(cat, degree, direct, inverse).expect("degrees cover every object")
    }

    /// The same degrees on the opposite category, with the two classes swapped.
    pub fn opposite(&self) -> ReedyCat {
        ReedyCat {
            cat: Arc::new(self.cat.opposite()),
            degree: self.degree.clone(),
            direct: self.inverse.clone(),
            inverse: self.direct.clone(),
        }
    }

    pub fn is_direct(&self, f: Mor) -> bool {
        self.direct.contains(&f)
    }

    pub fn is_inverse(&self, f: Mor) -> bool {
        self.inverse.contains(&f)
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// All ways of writing `f` as an inverse arrow followed by a direct one.
    pub fn factorizations(&self, f: Mor) -> Vec<(Mor, Mor)> {
        let c = &*self.cat;
        c.out_of(c.src(f))
            .filter(|&i| self.is_inverse(i))
            .flat_map(|i| c.hom(c.tgt(i), c.tgt(f)).iter().map(move |&d| (i, d)))
            .filter(|&(i, d)| self.is_direct(d) && c.then(i, d) == f)
            .collect()
    }

    pub fn factor(&self, f: Mor) -> Option<(Mor, Mor)> {
        match self.factorizations(f).as_slice() {
            [one] => Some(*one),
            _ => None,
        }
    }

    /// Objects of degree at most `d` in index order.
    pub fn filtration_objects(&self, d: usize) -> Vec<Obj> {
        self.cat.objects().filter(|&x| self.degree[x] <= d).collect()
    }
}

pub fn check_reedy(r: &ReedyCat) -> Vec<ReedyViolation> {
    let c = &*r.cat;
    let name = |f: Mor| c.morphism_id(f).to_string();
    let mut out = Vec::new();
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        if r.is_direct(f) && r.degree[c.src(f)] >= r.degree[c.tgt(f)] {
            out.push(ReedyViolation::DirectNotRaising { morphism: name(f) });
        }
        if r.is_inverse(f) && r.degree[c.src(f)] <= r.degree[c.tgt(f)] {
            out.push(ReedyViolation::InverseNotLowering { morphism: name(f) });
        }
    }
    for class in [&r.direct, &r.inverse] {
        for &f in class {
            for g in c.out_of(c.tgt(f)) {
                if class.contains(&g) && !class.contains(&c.then(f, g)) {
                    out.push(ReedyViolation::NotClosed { f: name(f), g: name(g) });
                }
            }
        }
    }
    for f in c.morphisms() {
        match r.factorizations(f).len() {
            0 => out.push(ReedyViolation::NoFactorization { morphism: name(f) }),
            1 => {}
            count => out.push(ReedyViolation::SeveralFactorizations { morphism: name(f), count }),
        }
    }
    out
}

/// A latching or matching category with its forgetful functor.
#[derive(Clone, Debug)]
pub struct Slice {
    pub cat: FinCat,
    /// The arrow of the ambient category each object stands for.
    pub objects: Vec<Mor>,
    /// The ambient arrow underlying each morphism.
    pub morphisms: Vec<Mor>,
}

impl Slice {
    /// Ambient object each slice object is sent to.
    pub fn underlying(&self, r: &ReedyCat, k: Obj, latching: bool) -> Obj {
        let f = self.objects[k];
        if latching {
            r.cat.src(f)
        } else {
            r.cat.tgt(f)
        }
    }
}

/// `Latch(y)`: non-identity direct arrows into `y`; `Match(y)`: non-identity
/// inverse arrows out of `y`. Morphisms are direct (resp. inverse) arrows
/// making the triangle commute.
pub fn latch_match_categories(r: &ReedyCat, y: Obj) -> (Slice, Slice) {
    let c = &*r.cat;
    let latch_objs: Vec<Mor> = c.into(y).filter(|&f| !c.is_identity(f) && r.is_direct(f)).collect();
    let match_objs: Vec<Mor> = c.out_of(y).filter(|&g| !c.is_identity(g) && r.is_inverse(g)).collect();
    let latch = build_category(
        latch_objs,
        |&f, &f2| c.hom(c.src(f), c.src(f2)).iter().copied().filter(|&u| r.is_direct(u) && c.then(u, f2) == f).collect(),
        |&f| c.id(c.src(f)),
        |_, _, _, &u, &v| c.then(u, v),
        |&f| c.morphism_id(f).to_string(),
        |&f, _, &u| format!("{}@{}", c.morphism_id(u), c.morphism_id(f)),
    )
    .expect("slices of a category are categories");
    let matching = build_category(
        match_objs,
        |&g, &g2| c.hom(c.tgt(g), c.tgt(g2)).iter().copied().filter(|&v| r.is_inverse(v) && c.then(g, v) == g2).collect(),
        |&g| c.id(c.tgt(g)),
        |_, _, _, &u, &v| c.then(u, v),
        |&g| c.morphism_id(g).to_string(),
        |&g, _, &v| format!("{}@{}", c.morphism_id(v), c.morphism_id(g)),
    )
    .expect("slices of a category are categories");
    (
        Slice { objects: latch.objs.clone(), morphisms: latch.mors.clone(), cat: latch.cat },
        Slice { objects: matching.objs.clone(), morphisms: matching.mors.clone(), cat: matching.cat },
    )
}

/// Latching and matching sets of a diagram with canonical maps
/// `latch → σ(y) → match`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatchMatchObjects {
    pub latch_size: usize,
    pub latch_map: Vec<usize>,
    pub match_families: Vec<Vec<usize>>,
    pub match_map: Vec<usize>,
}

/// `σ` is a presheaf on the opposite of `r.cat` (same morphism indices), so
/// it is a covariant diagram on `r.cat`; for a simplicial set take `r` a
/// Reedy structure on `Δ≤N^o`.
pub fn latch_match_objects(r: &ReedyCat, sigma: &SetPresheaf, y: Obj) -> Result<LatchMatchObjects> {
    let c = &*r.cat;
    let b = &*sigma.base;
    let same = b.num_objects() == c.num_objects()
        && b.num_morphisms() == c.num_morphisms()
        && c.morphisms().all(|f| b.src(f) == c.tgt(f) && b.tgt(f) == c.src(f));
    if !same {
        return Err(Error::Malformed("the diagram must live on the opposite of the Reedy category".into()));
    }
    let act = |f: Mor, a: usize| sigma.restrict(f, a);
    let (latch, matching) = latch_match_categories(r, y);

    let mut ld = SetDiagram::new((0..latch.cat.num_objects()).map(|k| sigma.size(latch.underlying(r, k, true))).collect());
    for m in latch.cat.morphisms().filter(|&m| !latch.cat.is_identity(m)) {
        let u = latch.morphisms[m];
        ld.arrow(latch.cat.src(m), latch.cat.tgt(m), sigma.restrictions[u].clone());
    }
    let co = colim(&ld);
    let mut latch_map = vec![usize::MAX; co.classes];
    for (k, inj) in co.injections.iter().enumerate() {
        for (a, &class) in inj.iter().enumerate() {
            latch_map[class] = act(latch.objects[k], a);
        }
    }

    let mut md = SetDiagram::new((0..matching.cat.num_objects()).map(|k| sigma.size(matching.underlying(r, k, false))).collect());
    for m in matching.cat.morphisms().filter(|&m| !matching.cat.is_identity(m)) {
        let v = matching.morphisms[m];
        md.arrow(matching.cat.src(m), matching.cat.tgt(m), sigma.restrictions[v].clone());
    }
    let families = lim(&md).families;
    let index: HashMap<&Vec<usize>, usize> = families.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let match_map = (0..sigma.size(y))
        .map(|a| index[&matching.objects.iter().map(|&g| act(g, a)).collect::<Vec<_>>()])
        .collect();
    Ok(LatchMatchObjects { latch_size: co.classes, latch_map, match_families: families, match_map })
}

/// Number of `q`-simplices of the nerve, for `q = 0..=n`, of the category on
/// `k` objects with the given hom-set sizes.
fn nerve_counts(k: usize, hom: impl Fn(usize, usize) -> usize, n: usize) -> Vec<usize> {
    let mut cur = vec![1usize; k];
    let mut out = vec![k];
    for _ in 0..n {
        cur = (0..k).map(|y| (0..k).map(|x| cur[x] * hom(x, y)).sum()).collect();
        out.push(cur.iter().sum());
    }
    out
}

/// A composable string of non-identity arrows, each direct or inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RegularSimplex {
    pub start: Obj,
    pub arrows: Vec<Mor>,
}

impl RegularSimplex {
    pub fn vertices(&self, c: &FinCat) -> Vec<Obj> {
        std::iter::once(self.start).chain(self.arrows.iter().map(|&f| c.tgt(f))).collect()
    }

    /// Interior vertices entered by an inverse arrow and left by a direct one.
    pub fn valleys(&self, r: &ReedyCat) -> Vec<usize> {
        (1..self.arrows.len())
            .filter(|&i| !r.cat.is_identity(self.arrows[i - 1]) && r.is_inverse(self.arrows[i - 1]) && r.is_direct(self.arrows[i]))
            .collect()
    }

    pub fn non_valleys(&self, r: &ReedyCat) -> Vec<usize> {
        let v = self.valleys(r);
        (0..=self.arrows.len()).filter(|i| !v.contains(i)).collect()
    }
}

/// Regular simplices with at most `max_non_valleys` non-valley vertices.
pub fn regular_simplices(r: &ReedyCat, objects: &[Obj], max_non_valleys: usize) -> Vec<RegularSimplex> {
    let c = &*r.cat;
    let allowed: BTreeSet<Obj> = objects.iter().copied().collect();
    let step = |f: Mor| !c.is_identity(f) && (r.is_direct(f) || r.is_inverse(f)) && allowed.contains(&c.tgt(f));
    let mut out = Vec::new();
    // (simplex, non-valleys among all vertices but the last)
    let mut stack: Vec<(RegularSimplex, usize)> = objects.iter().map(|&x| (RegularSimplex { start: x, arrows: vec![] }, 0)).collect();
    while let Some((s, settled)) = stack.pop() {
        if settled + 1 > max_non_valleys {
            continue;
        }
        let end = s.arrows.last().map_or(s.start, |&f| c.tgt(f));
        for f in c.out_of(end).filter(|&f| step(f)) {
            let valley = s.arrows.last().is_some_and(|&g| r.is_inverse(g) && !r.is_direct(g)) && r.is_direct(f);
            let mut t = s.clone();
            t.arrows.push(f);
            stack.push((t, settled + usize::from(!valley)));
        }
        out.push(s);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationLevel {
    pub degree: usize,
    /// `|ν F^d Y_q|` by enumeration, `q = 0..=N`.
    pub direct: Vec<usize>,
    /// `|ν F^{d-1} Y_q| + Σ_y |ν(L+y+M)_q| - |ν(L+M)_q|`.
    pub glued: Vec<usize>,
    /// Simplices contributed by regular simplices with a valley.
    pub attached: Vec<usize>,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub trunc: usize,
    pub levels: Vec<FiltrationLevel>,
    /// Every simplex of `ν Y` up to level `N` arises from exactly one regular
    /// simplex by deleting valleys and inserting identities.
    pub unique_regularization: bool,
}

impl FiltrationReport {
    pub fn holds(&self) -> bool {
        self.unique_regularization && self.levels.iter().all(|l| l.exact)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Nondecreasing sequences of length `q+1` in `[p]` whose image contains a
/// fixed set of `k` vertices: choose the `j` further vertices, then a
/// sequence with exactly that image.
fn covering_sequences(p: usize, q: usize, k: usize) -> usize {
    (0..=p + 1 - k).map(|j| binomial(p + 1 - k, j) * binomial(q, (k + j).saturating_sub(1))).sum()
}

/// The filtration `F^0 ⊆ F^1 ⊆ …` of `ν Y` by degree, checked at the level of
/// simplex counts: `F^d` is `F^{d-1}` glued with `ν(Latch(y)+y+Match(y))`
/// along `ν(Latch(y)+Match(y))` for each `y` of degree `d`, followed by the
/// cells attached by regular simplices having a valley.
pub fn regular_filtration(r: &ReedyCat, n: usize) -> FiltrationReport {
    let c = &*r.cat;
    let mut levels = Vec::new();
    let mut previous = vec![0usize; n + 1];
    for d in 0..=r.max_degree() {
        let objs = r.filtration_objects(d);
        let direct = nerve_counts(objs.len(), |i, j| c.hom(objs[i], objs[j]).len(), n);
        let mut glued = previous.clone();
        for y in c.objects().filter(|&y| r.degree[y] == d) {
            let (latch, matching) = latch_match_categories(r, y);
            let (nl, nm) = (latch.cat.num_objects(), matching.cat.num_objects());
            // objects: latch, then matching, then y
            let hom = |i: usize, j: usize| -> usize {
                match (i < nl, j < nl) {
                    (true, true) => latch.cat.hom(i, j).len(),
                    (true, false) => 1,
                    (false, true) => 0,
                    (false, false) if i == nl + nm => 1,
                    (false, false) if j == nl + nm => 0,
                    (false, false) => matching.cat.hom(i - nl, j - nl).len(),
                }
            };
            let with_y = nerve_counts(nl + nm + 1, hom, n);
            let without = nerve_counts(nl + nm, hom, n);
            for q in 0..=n {
                glued[q] += with_y[q] - without[q];
            }
        }
        let mut attached = vec![0usize; n + 1];
        for s in regular_simplices(r, &objs, n + 1) {
            let has_top = s.vertices(c).iter().any(|&v| r.degree[v] == d);
            let valleys = s.valleys(r);
            if !has_top || valleys.is_empty() {
                continue;
            }
            let k = s.non_valleys(r).len();
            for (q, slot) in attached.iter_mut().enumerate() {
                *slot += covering_sequences(s.arrows.len(), q, k);
            }
        }
        let exact = (0..=n).all(|q| glued[q] + attached[q] == direct[q]);
        levels.push(FiltrationLevel { degree: d, direct: direct.clone(), glued, attached, exact });
        previous = direct;
    }
    FiltrationReport { trunc: n, levels, unique_regularization: unique_regularization(r, n) }
}

/// Splits every arrow of a simplex into its inverse and direct parts and
/// drops identities; the simplex is recovered from the result by deleting
/// the inserted vertices and repeating the ones standing for identities.
pub fn regularize(r: &ReedyCat, start: Obj, arrows: &[Mor]) -> Option<(RegularSimplex, Vec<usize>)> {
    let c = &*r.cat;
    let mut out = RegularSimplex { start, arrows: Vec::new() };
    let mut seq = vec![0];
    for &f in arrows {
        if !c.is_identity(f) {
            let (i, d) = r.factor(f)?;
            out.arrows.extend([i, d].into_iter().filter(|&g| !c.is_identity(g)));
        }
        seq.push(out.arrows.len());
    }
    Some((out, seq))
}

/// Checks that `(regular simplex, nondecreasing sequence through all its
/// non-valleys)` parametrizes each simplex of `ν Y_q` exactly once:
/// regularization is a left inverse of pulling back along the sequence, so
/// it is injective, and the two sides have the same size.
fn unique_regularization(r: &ReedyCat, n: usize) -> bool {
    let c = &*r.cat;
    let all: Vec<Obj> = c.objects().collect();
    let regular = regular_simplices(r, &all, n + 1);
    let pairs: Vec<usize> = (0..=n)
        .map(|q| regular.iter().map(|s| covering_sequences(s.arrows.len(), q, s.non_valleys(r).len())).sum())
        .collect();
    let mut chains: Vec<(Obj, Vec<Mor>)> = all.iter().map(|&x| (x, vec![])).collect();
    for q in 0..=n {
        if chains.len() != pairs[q] {
            return false;
        }
        for (x, arrows) in &chains {
            let Some((s, seq)) = regularize(r, *x, arrows) else { return false };
            let verts = s.vertices(c);
            let back: Vec<Mor> =
                seq.windows(2).map(|w| if w[0] == w[1] { c.id(verts[w[0]]) } else { c.then_all(&s.arrows[w[0]..w[1]]) }).collect();
            let need = s.non_valleys(r);
            if verts[0] != *x || &back != arrows || !need.iter().all(|v| seq.contains(v)) {
                return false;
            }
        }
        if q < n {
            chains = chains
                .into_iter()
                .flat_map(|(x, a)| {
                    let end = a.last().map_or(x, |&f| c.tgt(f));
                    c.out_of(end).map(move |f| (x, [a.clone(), vec![f]].concat())).collect::<Vec<_>>()
                })
                .collect();
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins;
    use crate::simplicial::{delta, simplex_category, standard_simplex};

    fn delta_reedy(n: usize) -> ReedyCat {
        let d = delta(n);
        ReedyCat::simplicial(Arc::new(d.cat), d.objs.clone(), &d.mors)
    }

    #[test]
    fn delta_is_reedy() {
        assert_eq!(check_reedy(&delta_reedy(2)), vec![]);
    }

    #[test]
    fn simplex_category_of_edge_is_reedy() {
        let s = simplex_category(&standard_simplex(1, 2));
        let degree = s.cells.iter().map(|&(p, _)| p).collect();
        assert!(check_reedy(&ReedyCat::simplicial(s.cat.clone(), degree, &s.maps)).is_empty());
    }

    #[test]
    fn isomorphism_across_degrees_is_rejected() {
        let r = ReedyCat::by_degree(Arc::new(builtins::iso_interval()), vec![0, 1]);
        let v = check_reedy(&r);
        assert!(v.iter().any(|v| matches!(v, ReedyViolation::SeveralFactorizations { .. })));
    }

    #[test]
    fn latch_of_edge_in_delta_op() {
        let r = delta_reedy(2).opposite();
        let sigma = standard_simplex(1, 2).to_presheaf();
        let at0 = latch_match_objects(&r, &sigma, 0).unwrap();
        assert_eq!(at0.latch_size, 0);
        assert_eq!(at0.match_families.len(), 1);
        let at1 = latch_match_objects(&r, &sigma, 1).unwrap();
        assert_eq!(at1.latch_size, 2);
        let mut images = at1.latch_map.clone();
        images.sort_unstable();
        let degenerate: Vec<usize> = (0..2).map(|v| standard_simplex(1, 2).degen(0, 0, v)).collect();
        assert_eq!(images, degenerate);
    }

    #[test]
    fn chain_filtration_is_exact() {
        let r = ReedyCat::by_degree(Arc::new(builtins::interval()), vec![0, 1]);
        let rep = regular_filtration(&r, 3);
        assert!(rep.holds());
        assert!(rep.levels.iter().all(|l| l.attached.iter().all(|&a| a == 0)));
    }

    #[test]
    fn delta_one_needs_attached_cells() {
        let rep = regular_filtration(&delta_reedy(1), 2);
        assert!(rep.holds());
        let top = &rep.levels[1];
        assert_eq!((top.glued[1], top.attached[1], top.direct[1]), (5, 2, 7));
    }

    #[test]
    fn larger_filtrations_are_exact() {
        assert!(regular_filtration(&delta_reedy(2), 3).holds());
        let s = simplex_category(&standard_simplex(1, 2));
        let degree = s.cells.iter().map(|&(p, _)| p).collect();
        assert!(regular_filtration(&ReedyCat::simplicial(s.cat.clone(), degree, &s.maps), 3).holds());
    }
}
