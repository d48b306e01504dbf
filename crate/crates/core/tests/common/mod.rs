//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the code under test beyond constructors.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use itertools::Itertools;
use rand::Rng;

use champ_core::fincat::presentation::{RewriteBounds, RewriteSystem};
use champ_core::fincat::{build_category, builtins, FinCat, Functor, Mor, Obj};
use champ_core::group::FiniteGroup;
use champ_core::presheaf::SetPresheaf;
use champ_core::simplicial::{fundamental_category, TruncSimpSet};
use champ_core::site::FinSite;

/// `C/x` with its projection to `C`.
pub fn slice(c: &Arc<FinCat>, x: Obj) -> Functor {
    let objs: Vec<Mor> = FinCat::into(c, x).collect();
    let labeled = build_category(
        objs.clone(),
        |&f, &g| c.hom(c.src(f), c.src(g)).iter().copied().filter(|&h| c.then(h, g) == f).collect(),
        |&f| c.id(c.src(f)),
        |_, _, _, &h: &Mor, &k: &Mor| c.then(h, k),
        |&f| c.morphism_id(f).to_string(),
        |_, _, &h| c.morphism_id(h).to_string(),
    )
    .expect("slice category");
    let s = Arc::new(labeled.cat.clone());
    Functor::from_fn(s, c.clone(), |o| c.src(labeled.objs[o]), |m| labeled.mors[m])
}

/// Inclusion of a full subcategory.
pub fn inclusion(c: &Arc<FinCat>, objs: &[Obj]) -> Functor {
    let (sub, mors) = c.full_subcategory(objs);
    Functor::new(Arc::new(sub), c.clone(), objs.to_vec(), mors).expect("inclusion")
}

/// Object sets closed under precomposition, excluding the whole category.
pub fn cribles(c: &FinCat) -> Vec<Vec<Obj>> {
    c.objects()
        .powerset()
        .filter(|s| s.len() < c.num_objects())
        .filter(|s| s.iter().all(|&y| c.objects().all(|z| s.contains(&z) || c.hom(z, y).is_empty())))
        .collect()
}

/// A random subpresheaf of a random coproduct of at most `copies`
/// representables per object, generated by a random set of elements.
pub fn random_presheaf(c: &Arc<FinCat>, copies: usize, rng: &mut impl Rng) -> SetPresheaf {
    let copies: Vec<Obj> = c.objects().flat_map(|x| std::iter::repeat_n(x, rng.gen_range(0..=copies))).collect();
    let ambient: Vec<(usize, Mor)> = copies.iter().enumerate().flat_map(|(i, &x)| FinCat::into(c, x).map(move |h| (i, h))).collect();
    let mut kept: HashSet<(usize, Mor)> = HashSet::new();
    for &(i, h) in &ambient {
        if rng.gen_bool(0.4) {
            kept.extend(FinCat::into(c, c.src(h)).map(|f| (i, c.then(f, h))));
        }
    }
    let at: Vec<Vec<(usize, Mor)>> =
        c.objects().map(|z| ambient.iter().copied().filter(|e| kept.contains(e) && c.src(e.1) == z).collect()).collect();
    let index: HashMap<(usize, Mor), usize> = at.iter().flat_map(|v| v.iter().enumerate().map(|(k, &e)| (e, k))).collect();
    SetPresheaf::from_fn(c.clone(), at.iter().map(Vec::len).collect(), |f, b| {
        let (i, h) = at[c.tgt(f)][b];
        index[&(i, c.then(f, h))]
    })
    .expect("subpresheaf of representables")
}

/// Partial orders on `0..n` up to isomorphism, as `leq` matrices.
pub fn posets_up_to_iso(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).filter(|(i, j)| i != j).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u32..(1 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        (0..n).for_each(|i| leq[i][i] = true);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            leq[i][j] = bits >> k & 1 == 1;
        }
        let antisymmetric = pairs.iter().all(|&(i, j)| !(leq[i][j] && leq[j][i]));
        let transitive = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])));
        if !antisymmetric || !transitive {
            continue;
        }
        let canonical = (0..n)
            .permutations(n)
            .map(|p| (0..n).flat_map(|i| (0..n).map(|j| leq[p[i]][p[j]]).collect::<Vec<_>>()).collect::<Vec<_>>())
            .min()
            .unwrap_or_default();
        if seen.insert(canonical) {
            out.push(leq);
        }
    }
    out
}

pub fn poset_category(leq: &[Vec<bool>]) -> FinCat {
    let names: Vec<String> = (0..leq.len()).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    builtins::poset(&names, |i, j| leq[i][j])
}

/// Composable pairs `(f, g)` of `C` counted by direct search.
pub fn composable_pairs(c: &FinCat) -> usize {
    c.morphisms().cartesian_product(c.morphisms()).filter(|&(f, g)| c.tgt(f) == c.src(g)).count()
}

/// Functors `[2] → C` by trying every assignment of the three arrows.
pub fn functors_from_chain2(c: &FinCat) -> usize {
    (0..3)
        .map(|_| c.morphisms())
        .multi_cartesian_product()
        .filter(|m| c.tgt(m[0]) == c.src(m[1]) && c.src(m[2]) == c.src(m[0]) && c.tgt(m[2]) == c.tgt(m[1]) && c.then(m[0], m[1]) == m[2])
        .count()
}

/// `τ1(X) → C` sending each 1-cell to the morphism of the same name.
pub fn tau1_comparison(x: &TruncSimpSet, c: &Arc<FinCat>) -> Functor {
    let p = fundamental_category(x);
    let rs = RewriteSystem::complete(&p, RewriteBounds::new(8)).expect("nerves are finite");
    let normal = rs.category().expect("normal forms");
    let omap = p.objects.iter().map(|o| c.object(o).unwrap()).collect();
    normal
        .induced_functor(&p, c.clone(), omap, |g| c.morphism(&p.generators[g].id).unwrap())
        .expect("well typed")
}

/// Orbits of `G × G` acting on `G^k` by `(u, v)·(g_i) = (u g_i v⁻¹)`: the
/// isomorphism classes of `G`-torsor gluings across a two-open cover whose
/// overlap has `k` connected components.
pub fn two_sided_orbits(g: &FiniteGroup, k: usize) -> usize {
    let n = g.order();
    let tuples: Vec<Vec<usize>> = (0..k).map(|_| 0..n).multi_cartesian_product().collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut orbits = 0;
    for t in &tuples {
        if !seen.insert(t.clone()) {
            continue;
        }
        orbits += 1;
        for (u, v) in (0..n).cartesian_product(0..n) {
            seen.insert(t.iter().map(|&x| g.mul(g.mul(u, x), g.inv(v))).collect());
        }
    }
    orbits
}

pub fn conjugacy_classes(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut seen = HashSet::new();
    (0..n).filter(|&x| seen.insert((0..n).map(|u| g.mul(g.mul(u, x), g.inv(u))).min().unwrap())).count()
}

/// Connected components of the intersection of two opens, by flood fill
/// over the specialization order of the points.
pub fn overlap_components(site: &FinSite, u: &str, v: &str) -> usize {
    let space = site.space.as_ref().expect("site of opens");
    let open = |name: &str| space.opens[site.cat.object(name).unwrap()].clone();
    let meet: BTreeSet<usize> = open(u).intersection(&open(v)).copied().collect();
    let adjacent = |p: usize, q: usize| space.opens.iter().filter(|o| o.contains(&q)).all(|o| o.contains(&p));
    let mut comp = 0;
    let mut seen = BTreeSet::new();
    for &p in &meet {
        if seen.contains(&p) {
            continue;
        }
        comp += 1;
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            if seen.insert(q) {
                stack.extend(meet.iter().copied().filter(|&r| adjacent(q, r) || adjacent(r, q)));
            }
        }
    }
    comp
}
