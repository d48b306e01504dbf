//! Small named categories used throughout the crate.

use std::collections::HashMap;

use super::category::{build_category, FinCat, MorphismData};
use crate::group::FiniteGroup;

/// The category with one object and one morphism.
pub fn terminal() -> FinCat {
    chain(0)
}

/// `I`: two objects and a single arrow `0 -> 1`.
pub fn interval() -> FinCat {
    chain(1)
}

/// `Ī`: two objects with exactly one morphism between any ordered pair.
pub fn iso_interval() -> FinCat {
    iso_chain(1)
}

/// `I^(p)`: objects `0..=p`, one arrow `i -> j` whenever `i <= j`.
pub fn chain(p: usize) -> FinCat {
    let names: Vec<String> = (0..=p).map(|i| i.to_string()).collect();
    poset(&names, |i, j| i <= j)
}

/// `Ī^(p)`: objects `0..=p`, exactly one arrow between any ordered pair.
pub fn iso_chain(p: usize) -> FinCat {
    let names: Vec<String> = (0..=p).map(|i| i.to_string()).collect();
    codiscrete(&names)
}

/// Discrete category on the given objects.
pub fn discrete(names: &[String]) -> FinCat {
    poset(names, |i, j| i == j)
}

/// Codiscrete (indiscrete) groupoid on the given objects.
pub fn codiscrete(names: &[String]) -> FinCat {
    let morphisms_for = |i: usize, j: usize| if i == j { format!("id_{}", names[i]) } else { format!("{}->{}", names[i], names[j]) };
    relation_category(names, |_, _| true, morphisms_for)
}

/// Category of a preorder given by index relation `leq`, which must be
/// reflexive and transitive. Arrows are named `a->b`, identities `id_a`.
pub fn poset(names: &[String], leq: impl Fn(usize, usize) -> bool) -> FinCat {
    let morphisms_for = |i: usize, j: usize| if i == j { format!("id_{}", names[i]) } else { format!("{}->{}", names[i], names[j]) };
    relation_category(names, leq, morphisms_for)
}

fn relation_category(names: &[String], rel: impl Fn(usize, usize) -> bool, name: impl Fn(usize, usize) -> String) -> FinCat {
    let n = names.len();
    let mut idx = HashMap::new();
    let mut data = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rel(i, j) {
                idx.insert((i, j), data.len());
                data.push(MorphismData { id: name(i, j), src: i, tgt: j });
            }
        }
    }
    let identity = (0..n).map(|i| idx[&(i, i)]).collect();
    let mut compose = HashMap::new();
    for (&(i, j), &f) in &idx {
        for k in 0..n {
            if let Some(&g) = idx.get(&(j, k)) {
                let h = *idx.get(&(i, k)).expect("relation must be transitive");
                compose.insert((f, g), h);
            }
        }
    }
    FinCat::from_tables(names.to_vec(), data, identity, compose).expect("relation category")
}

/// One-object groupoid `BG`; morphisms are the group elements and
/// `then(g, h)` is the product `g·h`.
pub fn delooping(group: &FiniteGroup, object: &str) -> FinCat {
    let obj = object.to_string();
    build_category(
        vec![()],
        |_, _| (0..group.order()).collect(),
        |_| group.identity(),
        |_, _, _, &g, &h| group.mul(g, h),
        |_| obj.clone(),
        |_, _, &g| group.element_name(g).to_string(),
    )
    .expect("delooping")
    .cat
}

/// Product category; objects and morphisms are named `(a,b)`.
pub fn product(a: &FinCat, b: &FinCat) -> FinCat {
    build_category(
        itertools::iproduct!(a.objects(), b.objects()).collect(),
        |&(x, u), &(y, v)| itertools::iproduct!(a.hom(x, y).iter().copied(), b.hom(u, v).iter().copied()).collect(),
        |&(x, u)| (a.id(x), b.id(u)),
        |_, _, _, &(f, r), &(g, s)| (a.then(f, g), b.then(r, s)),
        |&(x, u)| format!("({},{})", a.object_id(x), b.object_id(u)),
        |_, _, &(f, r)| format!("({},{})", a.morphism_id(f), b.morphism_id(r)),
    )
    .expect("product category")
    .cat
}
