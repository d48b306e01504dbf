use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use itertools::Itertools;

use crate::error::{Error, Result};
use std::sync::Arc;

use crate::fincat::{build_category, FinCat, Labeled, Mor, Obj};
use crate::presheaf::SetPresheaf;

/// A simplicial set truncated at level `n`: cells in degrees `0..=n` with
/// face maps `d_i: X_p → X_{p-1}` and degeneracies `s_j: X_p → X_{p+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSimpSet {
    n: usize,
    names: Vec<Vec<String>>,
    /// `faces[p][i][x]` is `d_i x` for `x ∈ X_p`, `p ≥ 1`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[p][j][x]` is `s_j x` for `x ∈ X_p`, `p < n`.
    degens: Vec<Vec<Vec<usize>>>,
}

impl TruncSimpSet {
    /// Builds a truncated simplicial set from raw tables and checks every
    /// simplicial identity.
    pub fn from_tables(names: Vec<Vec<String>>, faces: Vec<Vec<Vec<usize>>>, degens: Vec<Vec<Vec<usize>>>) -> Result<TruncSimpSet> {
        if names.is_empty() {
            return Err(Error::Malformed("a simplicial set needs level 0".into()));
        }
        let n = names.len() - 1;
        let shape_ok = faces.len() == n + 1
            && degens.len() == n + 1
            && (0..=n).all(|p| {
                let fp_ok = if p == 0 {
                    faces[0].is_empty()
                } else {
                    faces[p].len() == p + 1
                        && faces[p].iter().all(|d| d.len() == names[p].len() && d.iter().all(|&y| y < names[p - 1].len()))
                };
                let dp_ok = if p == n {
                    degens[p].is_empty()
                } else {
                    degens[p].len() == p + 1
                        && degens[p].iter().all(|s| s.len() == names[p].len() && s.iter().all(|&y| y < names[p + 1].len()))
                };
                fp_ok && dp_ok
            });
        if !shape_ok {
            return Err(Error::Malformed("face/degeneracy tables have the wrong shape".into()));
        }
        let x = TruncSimpSet { n, names, faces, degens };
        if let Some(v) = x.identity_violations().into_iter().next() {
            return Err(Error::Malformed(format!("simplicial identity fails: {v}")));
        }
        Ok(x)
    }

    /// Builds from explicit cells with face and degeneracy operations; cells
    /// are deduplicated per level and every image must be listed.
    pub fn from_action<T: Clone + Eq + Hash>(
        levels: Vec<Vec<T>>,
        face: impl Fn(usize, usize, &T) -> T,
        degen: impl Fn(usize, usize, &T) -> T,
        name: impl Fn(usize, &T) -> String,
    ) -> Result<TruncSimpSet> {
        let n = levels.len() - 1;
        let index: Vec<HashMap<&T, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, t)| (t, i)).collect()).collect();
        let look = |p: usize, t: &T| {
            index[p].get(t).copied().ok_or_else(|| Error::Malformed(format!("image cell missing at level {p}")))
        };
        let mut faces = vec![Vec::new()];
        let mut degens = Vec::new();
        for p in 0..=n {
            if p > 0 {
                let mut fp = Vec::new();
                for i in 0..=p {
                    fp.push(levels[p].iter().map(|t| look(p - 1, &face(p, i, t))).collect::<Result<Vec<_>>>()?);
                }
                faces.push(fp);
            }
            let mut dp = Vec::new();
            if p < n {
                for j in 0..=p {
                    dp.push(levels[p].iter().map(|t| look(p + 1, &degen(p, j, t))).collect::<Result<Vec<_>>>()?);
                }
            }
            degens.push(dp);
        }
        let names = levels.iter().enumerate().map(|(p, l)| l.iter().map(|t| name(p, t)).collect()).collect();
        TruncSimpSet::from_tables(names, faces, degens)
    }

    pub fn trunc(&self) -> usize {
        self.n
    }

    pub fn level_size(&self, p: usize) -> usize {
        self.names[p].len()
    }

    pub fn name(&self, p: usize, x: usize) -> &str {
        &self.names[p][x]
    }

    pub fn names(&self, p: usize) -> &[String] {
        &self.names[p]
    }

    pub fn cell(&self, p: usize, name: &str) -> Option<usize> {
        self.names[p].iter().position(|n| n == name)
    }

    pub fn face(&self, p: usize, i: usize, x: usize) -> usize {
        self.faces[p][i][x]
    }

    pub fn degen(&self, p: usize, j: usize, x: usize) -> usize {
        self.degens[p][j][x]
    }

    pub fn face_table(&self, p: usize) -> &[Vec<usize>] {
        &self.faces[p]
    }

    pub fn degen_table(&self, p: usize) -> &[Vec<usize>] {
        &self.degens[p]
    }

    /// Lists every failing simplicial identity on the stored levels.
    pub fn identity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.n;
        for p in 2..=n {
            for x in 0..self.level_size(p) {
                for j in 1..=p {
                    for i in 0..j {
                        if self.face(p - 1, i, self.face(p, j, x)) != self.face(p - 1, j - 1, self.face(p, i, x)) {
                            out.push(format!("d{i} d{j} = d{} d{i} at {}", j - 1, self.name(p, x)));
                        }
                    }
                }
            }
        }
        for p in 1..n.saturating_sub(1) {
            for x in 0..self.level_size(p) {
                for j in 1..=p {
                    for i in 0..j {
                        if self.degen(p + 1, i, self.degen(p, j - 1, x)) != self.degen(p + 1, j, self.degen(p, i, x)) {
                            out.push(format!("s{i} s{} = s{j} s{i} at {}", j - 1, self.name(p, x)));
                        }
                    }
                }
            }
        }
        for p in 0..n {
            for x in 0..self.level_size(p) {
                for j in 0..=p {
                    let y = self.degen(p, j, x);
                    for i in 0..=p + 1 {
                        let lhs = self.face(p + 1, i, y);
                        let expected = if i < j {
                            // d_i s_j = s_{j-1} d_i
                            if p == 0 {
                                continue;
                            }
                            self.degen(p - 1, j - 1, self.face(p, i, x))
                        } else if i == j || i == j + 1 {
                            x
                        } else {
                            if p == 0 {
                                continue;
                            }
                            self.degen(p - 1, j, self.face(p, i - 1, x))
                        };
                        if lhs != expected {
                            out.push(format!("d{i} s{j} at {}", self.name(p, x)));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_degenerate(&self, p: usize, x: usize) -> bool {
        p > 0 && (0..p).any(|j| self.degen(p - 1, j, self.face(p, j, x)) == x)
    }

    pub fn nondegenerate(&self, p: usize) -> Vec<usize> {
        (0..self.level_size(p)).filter(|&x| !self.is_degenerate(p, x)).collect()
    }

    /// `θ^* y` for a monotone `θ: [p] → [q]` (given by its values) and
    /// `y ∈ X_q`, computed through the epi-mono factorization of `θ`.
    /// Returns `None` when `p` exceeds the truncation.
    pub fn pull(&self, theta: &[usize], q: usize, y: usize) -> Option<usize> {
        let p = theta.len() - 1;
        if p > self.n || q > self.n {
            return None;
        }
        debug_assert!(theta.windows(2).all(|w| w[0] <= w[1]) && theta[p] <= q);
        let image: BTreeSet<usize> = theta.iter().copied().collect();
        let (mut level, mut cell) = (q, y);
        for k in (0..=q).rev() {
            if !image.contains(&k) {
                cell = self.face(level, k, cell);
                level -= 1;
            }
        }
        for j in 0..p {
            if theta[j] == theta[j + 1] {
                cell = self.degen(level, j, cell);
                level += 1;
            }
        }
        Some(cell)
    }

    /// The `k`-th vertex of `x ∈ X_p`.
    pub fn vertex(&self, p: usize, x: usize, k: usize) -> usize {
        self.pull(&[k], p, x).expect("level 0 is stored")
    }

    pub fn vertices(&self, p: usize, x: usize) -> Vec<usize> {
        (0..=p).map(|k| self.vertex(p, x, k)).collect()
    }

    /// The same simplicial set truncated lower.
    pub fn truncate(&self, n: usize) -> TruncSimpSet {
        let n = n.min(self.n);
        let mut degens: Vec<_> = self.degens[..=n].to_vec();
        degens[n] = Vec::new();
        TruncSimpSet { n, names: self.names[..=n].to_vec(), faces: self.faces[..=n].to_vec(), degens }
    }
}

/// Nerve of a finite category truncated at `n`: `p`-cells are composable
/// chains of `p` morphisms (objects in degree 0).
pub fn nerve(c: &FinCat, n: usize) -> TruncSimpSet {
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct Chain(Obj, Vec<Mor>);
    let mut levels: Vec<Vec<Chain>> = vec![c.objects().map(|x| Chain(x, Vec::new())).collect()];
    for p in 1..=n {
        let mut next = Vec::new();
        for ch in &levels[p - 1] {
            let end = ch.1.last().map(|&f| c.tgt(f)).unwrap_or(ch.0);
            for g in c.out_of(end) {
                let mut ms = ch.1.clone();
                ms.push(g);
                next.push(Chain(ch.0, ms));
            }
        }
        levels.push(next);
    }
    let face = |p: usize, i: usize, ch: &Chain| {
        let ms = &ch.1;
        if i == 0 {
            let start = c.tgt(ms[0]);
            Chain(start, ms[1..].to_vec())
        } else if i == p {
            Chain(ch.0, ms[..p - 1].to_vec())
        } else {
            let mut out = ms[..i - 1].to_vec();
            out.push(c.then(ms[i - 1], ms[i]));
            out.extend_from_slice(&ms[i + 1..]);
            Chain(ch.0, out)
        }
    };
    let degen = |_p: usize, j: usize, ch: &Chain| {
        let ms = &ch.1;
        let at = if j == 0 { ch.0 } else { c.tgt(ms[j - 1]) };
        let mut out = ms[..j].to_vec();
        out.push(c.id(at));
        out.extend_from_slice(&ms[j..]);
        Chain(ch.0, out)
    };
    let name = |_p: usize, ch: &Chain| {
        if ch.1.is_empty() {
            c.object_id(ch.0).to_string()
        } else {
            ch.1.iter().map(|&f| c.morphism_id(f)).join("|")
        }
    };
    TruncSimpSet::from_action(levels, face, degen, name).expect("nerves are simplicial")
}

/// `Δ≤n`: objects `[0]..[n]` and monotone maps, labelled by their values.
pub fn delta(n: usize) -> Labeled<usize, Vec<usize>> {
    build_category(
        (0..=n).collect(),
        |&p, &q| (0..=q).combinations_with_replacement(p + 1).collect(),
        |&p| (0..=p).collect(),
        |_, _, _, theta: &Vec<usize>, phi: &Vec<usize>| theta.iter().map(|&i| phi[i]).collect(),
        |p| format!("[{p}]"),
        |p, q, t| format!("{p}>{q}:{}", t.iter().join("")),
    )
    .expect("monotone maps compose")
}

impl TruncSimpSet {
    /// The simplicial set as a presheaf on `Δ≤N`.
    pub fn to_presheaf(&self) -> SetPresheaf {
        let d = delta(self.n);
        let restrictions = d
            .cat
            .morphisms()
            .map(|f| {
                let q = d.objs[d.cat.tgt(f)];
                (0..self.level_size(q)).map(|y| self.pull(&d.mors[f], q, y).expect("stored level")).collect()
            })
            .collect();
        SetPresheaf { base: Arc::new(d.cat), elements: self.names.clone(), restrictions }
    }
}

/// Simplicial set whose `p`-cells are all `(p+1)`-tuples of a finite set
/// (the 0-coskeleton), with faces deleting and degeneracies repeating entries.
pub fn cosk0(points: &[String], n: usize) -> TruncSimpSet {
    let levels: Vec<Vec<Vec<usize>>> = (0..=n)
        .map(|p| (0..p + 1).map(|_| 0..points.len()).multi_cartesian_product().collect())
        .collect();
    sequences(levels, |s| s.iter().map(|&i| points[i].as_str()).join(","))
}

/// The standard simplex `Δ^m` truncated at `n`: `p`-cells are nondecreasing
/// sequences of length `p+1` in `[m]`.
pub fn standard_simplex(m: usize, n: usize) -> TruncSimpSet {
    simplex_subcomplex(m, n, |_| true)
}

/// The subcomplex of `Δ^m` whose simplices have vertex sets accepted by
/// `contains`; the predicate must be closed under taking subsets.
pub fn simplex_subcomplex(m: usize, n: usize, contains: impl Fn(&BTreeSet<usize>) -> bool) -> TruncSimpSet {
    let levels: Vec<Vec<Vec<usize>>> = (0..=n)
        .map(|p| {
            (0..=m)
                .combinations_with_replacement(p + 1)
                .filter(|s| contains(&s.iter().copied().collect()))
                .collect()
        })
        .collect();
    sequences(levels, |s| s.iter().join(""))
}

/// `∂Δ^m`: all proper faces.
pub fn boundary(m: usize, n: usize) -> TruncSimpSet {
    simplex_subcomplex(m, n, |s| s.len() <= m)
}

/// The horn `Λ^m_k`: all faces except the whole simplex and the `k`-th face.
pub fn horn(m: usize, k: usize, n: usize) -> TruncSimpSet {
    simplex_subcomplex(m, n, |s| s.len() <= m && !(s.len() == m && !s.contains(&k)))
}

/// Union of the faces `V^i` (the face opposite vertex `i`) for the listed
/// indices inside `Δ^m`.
pub fn faces_union(m: usize, removed: &[usize], n: usize) -> TruncSimpSet {
    simplex_subcomplex(m, n, |s| removed.iter().any(|i| !s.contains(i)))
}

pub(crate) fn sequences(levels: Vec<Vec<Vec<usize>>>, name: impl Fn(&[usize]) -> String) -> TruncSimpSet {
    TruncSimpSet::from_action(
        levels,
        |_, i, s: &Vec<usize>| {
            let mut t = s.clone();
            t.remove(i);
            t
        },
        |_, j, s: &Vec<usize>| {
            let mut t = s.clone();
            t.insert(j, s[j]);
            t
        },
        |_, s| name(s),
    )
    .expect("sequence complexes are simplicial")
}

/// A one-dimensional simplicial set generated by a directed graph: vertices
/// and nondegenerate edges `(id, src, tgt)`; all higher cells are degenerate.
pub fn from_graph(vertices: &[String], edges: &[(String, usize, usize)], n: usize) -> TruncSimpSet {
    // a p-cell is a vertex, or an edge whose first `k` vertices sit at the source
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum Cell {
        Vertex(usize),
        Edge(usize, usize),
    }
    let levels: Vec<Vec<Cell>> = (0..=n)
        .map(|p| {
            let mut l: Vec<Cell> = (0..vertices.len()).map(Cell::Vertex).collect();
            for e in 0..edges.len() {
                for k in 1..=p {
                    l.push(Cell::Edge(e, k));
                }
            }
            l
        })
        .collect();
    let face = |p: usize, i: usize, c: &Cell| match *c {
        Cell::Vertex(v) => Cell::Vertex(v),
        Cell::Edge(e, k) => {
            let k2 = if i < k { k - 1 } else { k };
            if k2 == 0 {
                Cell::Vertex(edges[e].2)
            } else if k2 == p {
                Cell::Vertex(edges[e].1)
            } else {
                Cell::Edge(e, k2)
            }
        }
    };
    let degen = |_p: usize, j: usize, c: &Cell| match *c {
        Cell::Vertex(v) => Cell::Vertex(v),
        Cell::Edge(e, k) => Cell::Edge(e, if j < k { k + 1 } else { k }),
    };
    let name = |p: usize, c: &Cell| match *c {
        Cell::Vertex(v) if p == 0 => vertices[v].clone(),
        Cell::Vertex(v) => format!("s{}({})", "0".repeat(p), vertices[v]),
        Cell::Edge(e, _) if p == 1 => edges[e].0.clone(),
        Cell::Edge(e, k) => format!("{}[{}|{}]", edges[e].0, k, p + 1 - k),
    };
    TruncSimpSet::from_action(levels, face, degen, name).expect("graph complexes are simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins;

    #[test]
    fn nerve_counts() {
        let x = nerve(&builtins::interval(), 2);
        assert_eq!((x.level_size(0), x.level_size(1), x.level_size(2)), (2, 3, 4));
        assert_eq!(nerve(&builtins::iso_interval(), 1).level_size(1), 4);
        let t = nerve(&builtins::terminal(), 2);
        assert!((0..=2).all(|p| t.level_size(p) == 1));
    }

    #[test]
    fn standard_simplex_counts() {
        let d = standard_simplex(2, 2);
        assert_eq!((d.level_size(0), d.level_size(1), d.level_size(2)), (3, 6, 10));
        assert_eq!(d.nondegenerate(2).len(), 1);
        assert_eq!(boundary(2, 2).nondegenerate(2).len(), 0);
        assert_eq!(horn(2, 1, 2).nondegenerate(1).len(), 2);
    }

    #[test]
    fn pull_matches_vertex_composition_on_simplex() {
        let d = standard_simplex(3, 3);
        for q in 0..=3 {
            for y in 0..d.level_size(q) {
                let ys: Vec<usize> = d.name(q, y).chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
                for p in 0..=3 {
                    for theta in (0..=q).combinations_with_replacement(p + 1) {
                        let x = d.pull(&theta, q, y).unwrap();
                        let expected: String = theta.iter().map(|&t| ys[t].to_string()).collect();
                        assert_eq!(d.name(p, x), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn graph_circle() {
        let c = from_graph(&["v".into()], &[("e".into(), 0, 0)], 2);
        assert_eq!(c.level_size(1), 2);
        assert_eq!(c.nondegenerate(1).len(), 1);
        assert!(c.nondegenerate(2).is_empty());
        assert!(c.identity_violations().is_empty());
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let x = standard_simplex(1, 1);
        let mut faces = x.faces.clone();
        faces[1][0].swap(0, 2);
        assert!(TruncSimpSet::from_tables(x.names.clone(), faces, x.degens.clone()).is_err());
    }
}
