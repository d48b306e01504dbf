//! Named small examples shared by tests, the acceptance suite and the CLI.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::descent::GrpdPresheaf;
use crate::fincat::{build_category, builtins, FinCat, Functor};
use crate::grothendieck::{CatPresheaf, PseudoFunctor};
use crate::group::FiniteGroup;
use crate::presheaf::SetPresheaf;
use crate::reedy::ReedyCat;
use crate::simplicial::{delta, simplex_category, standard_simplex};
use crate::site::FinSite;

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

/// One object, `e;e = e`.
pub fn idempotent() -> FinCat {
    build_category(
        vec![()],
        |_, _| vec![false, true],
        |_| false,
        |_, _, _, &a, &b| a || b,
        |_| "*".into(),
        |_, _, &e| if e { "e".into() } else { "id_*".into() },
    )
    .expect("idempotent monoid")
    .cat
}

/// Two parallel arrows `f, g: 0 → 1`.
pub fn parallel_pair() -> FinCat {
    build_category(
        vec![0usize, 1],
        |&x, &y| match (x, y) {
            (0, 1) => vec!["f", "g"],
            _ if x == y => vec!["id"],
            _ => vec![],
        },
        |_| "id",
        |_, _, _, &a, &b| if a == "id" { b } else { a },
        |x| x.to_string(),
        |x, _, &m| if m == "id" { format!("id_{x}") } else { m.to_string() },
    )
    .expect("parallel pair")
    .cat
}

/// Categories with at most four objects.
pub fn categories() -> Vec<(&'static str, FinCat)> {
    let z2 = FiniteGroup::cyclic(2);
    vec![
        ("terminal", builtins::terminal()),
        ("interval", builtins::interval()),
        ("iso_interval", builtins::iso_interval()),
        ("chain2", builtins::chain(2)),
        ("chain3", builtins::chain(3)),
        ("iso_chain2", builtins::iso_chain(2)),
        ("discrete2", builtins::discrete(&names(&["p", "q"]))),
        ("span", builtins::poset(&names(&["c", "a", "b"]), |i, j| i == j || i == 0)),
        ("square", builtins::product(&builtins::interval(), &builtins::interval())),
        ("bz2", builtins::delooping(&z2, "*")),
        ("bz3", builtins::delooping(&FiniteGroup::cyclic(3), "*")),
        ("bs3", builtins::delooping(&FiniteGroup::symmetric3(), "*")),
        ("bz2_times_interval", builtins::product(&builtins::delooping(&z2, "*"), &builtins::interval())),
        ("idempotent", idempotent()),
        ("parallel_pair", parallel_pair()),
    ]
}

fn opens_site(points: &[&str], opens: &[(&str, &[usize])]) -> FinSite {
    let opens = opens.iter().map(|(n, s)| (n.to_string(), s.iter().copied().collect::<BTreeSet<usize>>())).collect();
    FinSite::from_opens(names(points), opens).expect("corpus space")
}

/// Four points `a, b, c, d` with `c` and `d` each specializing to both `a`
/// and `b`; the union of `A = {a,b,c}` and `B = {a,b,d}` is everything and
/// `A ∩ B = ab` has two components.
pub fn pseudo_circle_site() -> FinSite {
    opens_site(
        &["a", "b", "c", "d"],
        &[("empty", &[]), ("a", &[0]), ("b", &[1]), ("ab", &[0, 1]), ("A", &[0, 1, 2]), ("B", &[0, 1, 3]), ("X", &[0, 1, 2, 3])],
    )
}

/// Opens `∅, u, a, b, X` with `a ∩ b = u` connected.
pub fn square_site() -> FinSite {
    opens_site(&["p", "q", "r"], &[("empty", &[]), ("u", &[0]), ("a", &[0, 1]), ("b", &[0, 2]), ("X", &[0, 1, 2])])
}

/// The discrete space on two points.
pub fn two_point_site() -> FinSite {
    opens_site(&["p", "q"], &[("empty", &[]), ("p", &[0]), ("q", &[1]), ("X", &[0, 1])])
}

/// `0 → 1` with that single arrow covering `1`.
pub fn chain_site() -> FinSite {
    let cat = Arc::new(builtins::interval());
    let f = cat.morphism("0->1").expect("arrow");
    FinSite::new(cat, vec![Vec::new(), vec![vec![f]]]).expect("chain site")
}

pub fn sites() -> Vec<(&'static str, FinSite)> {
    vec![
        ("pseudo_circle", pseudo_circle_site()),
        ("square", square_site()),
        ("two_point", two_point_site()),
        ("chain", chain_site()),
        ("coarse_span", FinSite::coarse(Arc::new(builtins::poset(&names(&["c", "a", "b"]), |i, j| i == j || i == 0)))),
    ]
}

pub fn reedy_categories() -> Vec<(&'static str, ReedyCat)> {
    let simplicial = |n: usize| {
        let d = delta(n);
        ReedyCat::simplicial(Arc::new(d.cat), d.objs.clone(), &d.mors)
    };
    let s = simplex_category(&standard_simplex(1, 2));
    let degree = s.cells.iter().map(|&(p, _)| p).collect();
    vec![
        ("interval", ReedyCat::by_degree(Arc::new(builtins::interval()), vec![0, 1])),
        ("chain2", ReedyCat::by_degree(Arc::new(builtins::chain(2)), vec![0, 1, 2])),
        ("delta1", simplicial(1)),
        ("delta2", simplicial(2)),
        ("simplices_of_edge", ReedyCat::simplicial(s.cat.clone(), degree, &s.maps)),
    ]
}

/// `A(0) → A(1)` over the interval.
pub fn over_interval(a0: Arc<FinCat>, a1: Arc<FinCat>, r: Functor) -> CatPresheaf {
    let base = Arc::new(builtins::interval());
    let f = base.morphism("0->1").expect("arrow");
    let restrictions = base
        .morphisms()
        .map(|m| {
            if m == f {
                r.clone()
            } else if base.src(m) == 0 {
                Functor::identity(a0.clone())
            } else {
                Functor::identity(a1.clone())
            }
        })
        .collect();
    CatPresheaf::new(base, vec![a0, a1], restrictions).expect("presheaf over the interval")
}

pub fn presheaves_over_interval() -> Vec<(&'static str, CatPresheaf)> {
    let pt = Arc::new(builtins::terminal());
    let two = Arc::new(builtins::discrete(&names(&["p", "q"])));
    let ib = Arc::new(builtins::iso_interval());
    let i = Arc::new(builtins::interval());
    let bg = Arc::new(builtins::delooping(&FiniteGroup::cyclic(2), "*"));
    let to_point = |c: &Arc<FinCat>| Functor::from_fn(c.clone(), pt.clone(), |_| 0, |_| 0);
    vec![
        ("discrete_identity", over_interval(two.clone(), two.clone(), Functor::identity(two.clone()))),
        ("point_into_iso", over_interval(pt.clone(), ib.clone(), Functor::from_fn(pt.clone(), ib.clone(), |_| 0, |_| ib.id(0)))),
        ("collapse_into_iso", over_interval(two.clone(), ib.clone(), Functor::from_fn(two.clone(), ib.clone(), |_| 0, |_| ib.id(0)))),
        ("point_into_interval", over_interval(pt.clone(), i.clone(), Functor::from_fn(pt.clone(), i.clone(), |_| 0, |_| i.id(0)))),
        ("bz2_identity", over_interval(bg.clone(), bg.clone(), Functor::identity(bg.clone()))),
        ("interval_to_point", over_interval(i.clone(), pt.clone(), to_point(&i))),
        ("bz2_to_point", over_interval(bg.clone(), pt.clone(), to_point(&bg))),
    ]
}

/// `BZ/2` over `[n]` with identity restrictions and the nontrivial element
/// as the coherence cell on each listed pair.
pub fn twisted_pseudofunctor(n: usize, twisted_pairs: &[(&str, &str)]) -> PseudoFunctor {
    let base = Arc::new(builtins::chain(n));
    let bg = Arc::new(builtins::delooping(&FiniteGroup::cyclic(2), "*"));
    let mut p = PseudoFunctor::from_strict(&CatPresheaf::constant(base.clone(), bg));
    for (f, g) in twisted_pairs {
        let key = (base.morphism(f).expect("listed arrow"), base.morphism(g).expect("listed arrow"));
        p.gamma.insert(key, vec![1]);
    }
    p
}

/// The coherent twist on `[2]`.
pub fn twisted_associator() -> PseudoFunctor {
    twisted_pseudofunctor(2, &[("0->1", "1->2")])
}

/// The sheaf of locally constant functions with the given number of values on a
/// site of opens: one value per component.
pub fn locally_constant(site: &FinSite, values: usize) -> SetPresheaf {
    let space = site.space.as_ref().expect("site of opens");
    let comps: Vec<_> = space.opens.iter().map(|u| space.components(u)).collect();
    let count = |k: usize| values.pow(k as u32);
    let digits = |k: usize, mut x: usize| {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = x % values;
            x /= values;
        }
        d
    };
    let c = site.cat.clone();
    SetPresheaf::from_fn(
        c.clone(),
        c.objects().map(|x| count(comps[x].len())).collect(),
        |f, a| {
            let (v, u) = (c.src(f), c.tgt(f));
            let t = digits(comps[u].len(), a);
            comps[v]
                .iter()
                .map(|cv| t[comps[u].iter().position(|cu| cv.is_subset(cu)).expect("components refine")])
                .fold(0, |acc, d| acc * values + d)
        },
    )
    .expect("restriction of locally constant functions is functorial")
}

/// Groupoid presheaves on a site used by the descent checks.
pub fn grpd_presheaves(site: &FinSite) -> Vec<(&'static str, GrpdPresheaf)> {
    let z2 = FiniteGroup::cyclic(2);
    let mut out = vec![
        ("terminal", GrpdPresheaf::terminal(site.cat.clone())),
        ("constant_bz2", GrpdPresheaf::constant_delooping(site.cat.clone(), &z2)),
        ("constant_set", GrpdPresheaf::discrete(&SetPresheaf::constant(site.cat.clone(), &names(&["0", "1"])))),
    ];
    if site.space.is_some() {
        out.push(("sheafified_bz2", GrpdPresheaf::sheafified_delooping(site, &z2).expect("site of opens")));
        out.push(("locally_constant", GrpdPresheaf::discrete(&locally_constant(site, 2))));
    }
    out
}
