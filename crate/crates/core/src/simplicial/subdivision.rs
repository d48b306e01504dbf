use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use super::sset::{nerve, TruncSimpSet};
use crate::error::{Error, Result};
use crate::fincat::presentation::{localize, RewriteBounds};
use crate::fincat::{
    build_category, builtins, certify_equivalence_via_chains, check_equivalence, CertificateVerdict, ChainLink, EquivalenceVerdict,
    FinCat, Functor, Mor, NatTrans, Obj,
};

/// The category of simplices `β(X)` of a truncated simplicial set together
/// with the subcategory `δ(X)` of maps preserving the last vertex.
///
/// Only stored levels are used, so `β` of a truncation differs from `β` of
/// the full simplicial set.
#[derive(Clone, Debug)]
pub struct SimplexCategory {
    pub cat: Arc<FinCat>,
    /// The simplex `(p, x)` behind each object.
    pub cells: Vec<(usize, usize)>,
    /// The monotone map `θ: [p] → [q]` behind each morphism.
    pub maps: Vec<Vec<usize>>,
    pub delta: Vec<Mor>,
}

impl SimplexCategory {
    pub fn object_of(&self, p: usize, x: usize) -> Option<Obj> {
        self.cells.iter().position(|&c| c == (p, x))
    }

    pub fn in_delta(&self, f: Mor) -> bool {
        let theta = &self.maps[f];
        let q = self.cells[self.cat.tgt(f)].0;
        theta[theta.len() - 1] == q
    }
}

/// Objects are simplices `(p, x)`; a morphism `(p, x) → (q, y)` is a monotone
/// `θ: [p] → [q]` with `θ^* y = x`.
pub fn simplex_category(x: &TruncSimpSet) -> SimplexCategory {
    let objects: Vec<(usize, usize)> = (0..=x.trunc()).flat_map(|p| (0..x.level_size(p)).map(move |c| (p, c))).collect();
    let labeled = build_category(
        objects,
        |&(p, a), &(q, b)| (0..=q).combinations_with_replacement(p + 1).filter(|t| x.pull(t, q, b) == Some(a)).collect(),
        |&(p, _)| (0..=p).collect::<Vec<usize>>(),
        |_, _, _, theta: &Vec<usize>, phi: &Vec<usize>| theta.iter().map(|&i| phi[i]).collect(),
        |&(p, a)| format!("{p}:{}", x.name(p, a)),
        |&(p, a), &(q, b), t| format!("{p}:{}>{q}:{}@{}", x.name(p, a), x.name(q, b), t.iter().join("")),
    )
    .expect("simplex categories are categories");
    let cells = labeled.objs.clone();
    let maps = labeled.mors.clone();
    let cat = Arc::new(labeled.cat);
    let delta = cat.morphisms().filter(|&f| maps[f][maps[f].len() - 1] == cells[cat.tgt(f)].0).collect();
    SimplexCategory { cat, cells, maps, delta }
}

/// The subdivision poset on nondegenerate simplices with its marked part.
#[derive(Clone, Debug)]
pub struct PosetSubdivision {
    /// Objects are nondegenerate simplices; there is an arrow `x → y` when
    /// `y` is a face of `x`.
    pub cat: Arc<FinCat>,
    pub cells: Vec<(usize, usize)>,
    /// Arrows onto faces containing the first vertex of the source.
    pub marked: Vec<Mor>,
    /// Objects touched by a non-identity marked arrow.
    pub marked_objects: Vec<Obj>,
}

pub fn poset_subdivision(x: &TruncSimpSet) -> PosetSubdivision {
    let cells: Vec<(usize, usize)> = (0..=x.trunc()).flat_map(|p| x.nondegenerate(p).into_iter().map(move |c| (p, c))).collect();
    let index: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    // face relation through injective θ, remembering whether some θ keeps vertex 0
    let mut face_of: HashMap<(usize, usize), bool> = HashMap::new();
    for (i, &(q, b)) in cells.iter().enumerate() {
        for p in 0..=q {
            for theta in (0..=q).combinations(p + 1) {
                let a = x.pull(&theta, q, b).expect("stored level");
                if let Some(&j) = index.get(&(p, a)) {
                    let keeps_first = theta[0] == 0;
                    let e = face_of.entry((i, j)).or_insert(false);
                    *e |= keeps_first;
                }
            }
        }
    }
    let names: Vec<String> = cells.iter().map(|&(p, c)| format!("{p}:{}", x.name(p, c))).collect();
    let cat = builtins::poset(&names, |i, j| face_of.contains_key(&(i, j)));
    let marked: Vec<Mor> = cat.morphisms().filter(|&f| face_of.get(&(cat.src(f), cat.tgt(f))).copied().unwrap_or(false)).collect();
    let mut marked_objects: Vec<Obj> =
        marked.iter().filter(|&&f| !cat.is_identity(f)).flat_map(|&f| [cat.src(f), cat.tgt(f)]).collect();
    marked_objects.sort_unstable();
    marked_objects.dedup();
    PosetSubdivision { cat: Arc::new(cat), cells, marked, marked_objects }
}

/// How [`bd_certificate`] established its verdict.
#[derive(Clone, Debug)]
pub enum BdMethod {
    /// Every principal down-set is a chain: the section `a` sending `y` to
    /// the chain below it, and `η: 1 → a∘b` built from vertex positions.
    Chains { section: Functor, eta: NatTrans, verdict: CertificateVerdict },
    /// Otherwise the localization `β[δ⁻¹]` is computed from its presentation
    /// and the induced functor is checked directly.
    Localization { objects: usize, morphisms: usize, verdict: EquivalenceVerdict },
}

#[derive(Clone, Debug)]
pub struct BdCertificate {
    pub trunc: usize,
    pub beta: SimplexCategory,
    /// `b`: the last-vertex functor `β(νY) → Y`.
    pub last_vertex: Functor,
    pub method: BdMethod,
    /// Whether each object of `β` is a nondegenerate simplex.
    pub nondegenerate: Vec<bool>,
}

#[derive(Serialize)]
struct BdSummary<'a> {
    trunc: usize,
    beta_objects: usize,
    beta_morphisms: usize,
    delta_morphisms: usize,
    method: &'a str,
    certified: bool,
    delta_to_identities: bool,
}

impl BdCertificate {
    pub fn is_certified(&self) -> bool {
        match &self.method {
            BdMethod::Chains { verdict, .. } => verdict.is_certified(),
            BdMethod::Localization { verdict, .. } => verdict.is_equivalence(),
        }
    }

    pub fn sends_delta_to_identities(&self) -> bool {
        self.beta.delta.iter().all(|&f| self.last_vertex.tgt.is_identity(self.last_vertex.mor(f)))
    }

    /// On nondegenerate simplices an arrow goes to an identity exactly when
    /// it preserves the last vertex.
    pub fn inverts_exactly_delta(&self) -> bool {
        let b = &self.beta;
        b.cat.morphisms().all(|f| {
            let (s, t) = (b.cat.src(f), b.cat.tgt(f));
            if !(self.nondegenerate[s] && self.nondegenerate[t]) {
                return true;
            }
            self.last_vertex.tgt.is_identity(self.last_vertex.mor(f)) == b.in_delta(f)
        })
    }

    pub fn summary(&self) -> serde_json::Value {
        serde_json::to_value(BdSummary {
            trunc: self.trunc,
            beta_objects: self.beta.cat.num_objects(),
            beta_morphisms: self.beta.cat.num_morphisms(),
            delta_morphisms: self.beta.delta.len(),
            method: match self.method {
                BdMethod::Chains { .. } => "chains",
                BdMethod::Localization { .. } => "localization",
            },
            certified: self.is_certified(),
            delta_to_identities: self.sends_delta_to_identities(),
        })
        .expect("summary serializes")
    }
}

/// Longest strictly increasing chain, counted in arrows.
fn height(y: &FinCat) -> usize {
    let mut best = vec![0usize; y.num_objects()];
    // objects sorted so that strict predecessors come first
    let mut order: Vec<Obj> = y.objects().collect();
    order.sort_by_key(|&v| y.objects().filter(|&u| u != v && !y.hom(u, v).is_empty()).count());
    for &v in &order {
        for u in y.objects() {
            if u != v && !y.hom(u, v).is_empty() {
                best[v] = best[v].max(best[u] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Shows that `β(νY) → Y` (last vertex) becomes an equivalence after
/// inverting `δ`, for a finite poset `Y`.
pub fn bd_certificate(y: &Arc<FinCat>, bounds: RewriteBounds) -> Result<BdCertificate> {
    if !y.is_poset() {
        return Err(Error::NotPoset(format!("{} objects, {} morphisms", y.num_objects(), y.num_morphisms())));
    }
    let trunc = height(y).max(2);
    let x = nerve(y, trunc);
    let beta = simplex_category(&x);
    let bc = beta.cat.clone();
    let arrow = |a: Obj, b: Obj| y.hom(a, b)[0];
    let last = |o: Obj| {
        let (p, c) = beta.cells[o];
        x.vertex(p, c, p)
    };
    let last_vertex = Functor::from_fn(bc.clone(), y.clone(), last, |f| arrow(last(bc.src(f)), last(bc.tgt(f))));
    let below = |v: Obj| -> Vec<Obj> {
        let mut d: Vec<Obj> = y.objects().filter(|&u| !y.hom(u, v).is_empty()).collect();
        d.sort_by_key(|&u| y.objects().filter(|&w| !y.hom(w, u).is_empty()).count());
        d
    };
    let is_chain = |d: &[Obj]| d.iter().tuple_combinations().all(|(&a, &b)| !y.hom(a, b).is_empty() || !y.hom(b, a).is_empty());
    let method = if y.objects().all(|v| is_chain(&below(v))) {
        let by_vertices: HashMap<Vec<Obj>, Obj> =
            (0..bc.num_objects()).map(|o| (x.vertices(beta.cells[o].0, beta.cells[o].1), o)).collect();
        let sec_obj: Vec<Obj> = y.objects().map(|v| by_vertices[&below(v)]).collect();
        let position = |v: Obj, chain_top: Obj| below(chain_top).iter().position(|&u| u == v).expect("vertex in down-set");
        let beta_arrow = |from: Obj, to: Obj, theta: Vec<usize>| {
            bc.hom(from, to).iter().copied().find(|&f| beta.maps[f] == theta).expect("θ realizes the face")
        };
        let sec_mor: Vec<Mor> = y
            .morphisms()
            .map(|f| {
                let (a, b) = (y.src(f), y.tgt(f));
                let theta = below(a).iter().map(|&u| position(u, b)).collect();
                beta_arrow(sec_obj[a], sec_obj[b], theta)
            })
            .collect();
        let section = Functor::new(y.clone(), bc.clone(), sec_obj, sec_mor)?;
        let gf = last_vertex.then(&section);
        let comps = bc
            .objects()
            .map(|o| {
                let (p, c) = beta.cells[o];
                let top = last(o);
                let theta = x.vertices(p, c).iter().map(|&u| position(u, top)).collect();
                beta_arrow(o, gf.obj(o), theta)
            })
            .collect();
        let eta = NatTrans::new(Functor::identity(bc.clone()), gf, comps)?;
        let chain = [ChainLink { trans: eta.clone(), forward: false }];
        let verdict = certify_equivalence_via_chains(&last_vertex, &section, &chain, &[], &beta.delta, &[])?;
        BdMethod::Chains { section, eta, verdict }
    } else {
        let loc = localize(&bc, &beta.delta, bounds)?;
        let l = &loc.normalized;
        let omap = l.cat.objects().map(|o| last_vertex.obj(o)).collect();
        let gens: Vec<Mor> = bc.morphisms().filter(|&f| !bc.is_identity(f)).collect();
        let induced = l.induced_functor(&loc.presentation, y.clone(), omap, |g| last_vertex.mor(gens[g]))?;
        let verdict = if induced.is_valid() {
            check_equivalence(&induced)
        } else {
            return Err(Error::Incoherent("last-vertex functor does not descend to the localization".into()));
        };
        BdMethod::Localization { objects: l.cat.num_objects(), morphisms: l.cat.num_morphisms(), verdict }
    };
    let nondegenerate = beta.cells.iter().map(|&(p, c)| !x.is_degenerate(p, c)).collect();
    Ok(BdCertificate { trunc, beta, last_vertex, method, nondegenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sset::standard_simplex;

    #[test]
    fn simplex_category_counts() {
        let b0 = simplex_category(&standard_simplex(0, 1));
        assert_eq!(b0.cat.num_objects(), 2);
        let b1 = simplex_category(&standard_simplex(1, 1));
        assert_eq!(b1.cat.num_objects(), 5);
        assert!(b1.cat.check().is_valid());
        // δ is a subcategory
        let d: std::collections::HashSet<Mor> = b1.delta.iter().copied().collect();
        for &f in &b1.delta {
            for g in b1.cat.out_of(b1.cat.tgt(f)) {
                if d.contains(&g) {
                    assert!(d.contains(&b1.cat.then(f, g)));
                }
            }
        }
    }

    #[test]
    fn subdivision_of_edge() {
        let s = poset_subdivision(&standard_simplex(1, 1));
        assert_eq!(s.cat.num_objects(), 3);
        assert!(s.cat.is_poset());
        let marked: Vec<&str> = s.marked_objects.iter().map(|&o| s.cat.object_id(o)).collect();
        assert_eq!(marked, vec!["0:0", "1:01"]);
        assert_eq!(poset_subdivision(&standard_simplex(0, 2)).cat.num_objects(), 1);
    }

    #[test]
    fn bd_on_chains() {
        for p in 0..=2 {
            let y = Arc::new(builtins::chain(p));
            let cert = bd_certificate(&y, RewriteBounds::default()).unwrap();
            assert!(matches!(cert.method, BdMethod::Chains { .. }));
            assert!(cert.is_certified(), "chain {p}");
            assert!(cert.sends_delta_to_identities());
            assert!(cert.inverts_exactly_delta());
        }
    }

    #[test]
    fn bd_on_a_vee() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let y = Arc::new(builtins::poset(&names, |i, j| i == j || j == 2));
        let cert = bd_certificate(&y, RewriteBounds::default()).unwrap();
        assert!(matches!(cert.method, BdMethod::Localization { .. }));
        assert!(cert.is_certified());
    }

    #[test]
    fn bd_rejects_non_posets() {
        let y = Arc::new(builtins::iso_interval());
        assert!(matches!(bd_certificate(&y, RewriteBounds::default()), Err(Error::NotPoset(_))));
    }
}
