/// A covariant diagram of finite sets over a finite index: `sizes[j]` is
/// the size of the set at `j` and each arrow `(j, k, map)` sends the set at
/// `j` to the set at `k`. Only generating arrows need to be listed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetDiagram {
    pub sizes: Vec<usize>,
    pub arrows: Vec<(usize, usize, Vec<usize>)>,
}

impl SetDiagram {
    pub fn new(sizes: Vec<usize>) -> SetDiagram {
        SetDiagram { sizes, arrows: Vec::new() }
    }

    pub fn arrow(&mut self, from: usize, to: usize, map: Vec<usize>) {
        debug_assert_eq!(map.len(), self.sizes[from]);
        self.arrows.push((from, to, map));
    }
}

/// Compatible families: `families[k][j]` is the component at `j` of the
/// `k`-th element of the limit (so `families[k][j]` is also the projection).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub families: Vec<Vec<usize>>,
}

/// `injections[j][a]` is the class of `a` at index `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub classes: usize,
    pub injections: Vec<Vec<usize>>,
}

/// The limit: families `(s_j)` with `map(s_j) = s_k` for every arrow.
/// Enumerated by backtracking in index order, so the output is sorted
/// lexicographically.
pub fn lim(d: &SetDiagram) -> Limit {
    let n = d.sizes.len();
    // constraints checked as soon as both endpoints are assigned
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, (a, b, _)) in d.arrows.iter().enumerate() {
        checks[(*a).max(*b)].push(i);
    }
    let mut families = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(d: &SetDiagram, checks: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let j = cur.len();
        if j == d.sizes.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..d.sizes[j] {
            cur.push(a);
            let ok = checks[j].iter().all(|&i| {
                let (s, t, m) = &d.arrows[i];
                m[cur[*s]] == cur[*t]
            });
            if ok {
                go(d, checks, cur, out);
            }
            cur.pop();
        }
    }
    go(d, &checks, &mut cur, &mut families);
    Limit { families }
}

/// The colimit: the disjoint union modulo `a ~ map(a)`, computed by
/// union-find. Classes are numbered by first occurrence.
pub fn colim(d: &SetDiagram) -> Colimit {
    let offsets: Vec<usize> = d
        .sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total: usize = d.sizes.iter().sum();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for (s, t, m) in &d.arrows {
        for (a, &b) in m.iter().enumerate() {
            let (x, y) = (find(&mut parent, offsets[*s] + a), find(&mut parent, offsets[*t] + b));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let mut label = vec![usize::MAX; total];
    let mut classes = 0;
    let mut injections = Vec::with_capacity(d.sizes.len());
    for (j, &s) in d.sizes.iter().enumerate() {
        let mut inj = Vec::with_capacity(s);
        for a in 0..s {
            let r = find(&mut parent, offsets[j] + a);
            if label[r] == usize::MAX {
                label[r] = classes;
                classes += 1;
            }
            inj.push(label[r]);
        }
        injections.push(inj);
    }
    Colimit { classes, injections }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parallel_pair() -> SetDiagram {
        let mut d = SetDiagram::new(vec![2, 2]);
        d.arrow(0, 1, vec![0, 1]);
        d.arrow(0, 1, vec![0, 0]);
        d
    }

    #[test]
    fn equalizer_and_coequalizer() {
        let d = parallel_pair();
        assert_eq!(lim(&d).families, vec![vec![0, 0]]);
        assert_eq!(colim(&d).classes, 1);
    }

    #[test]
    fn discrete_gives_product_and_sum() {
        let d = SetDiagram::new(vec![2, 3]);
        assert_eq!(lim(&d).families.len(), 6);
        assert_eq!(colim(&d).classes, 5);
    }

    #[test]
    fn constant_over_connected_index() {
        let mut d = SetDiagram::new(vec![3, 3, 3]);
        d.arrow(0, 1, vec![0, 1, 2]);
        d.arrow(2, 1, vec![0, 1, 2]);
        assert_eq!(lim(&d).families.len(), 3);
        assert_eq!(colim(&d).classes, 3);
    }

    #[test]
    fn empty_diagram() {
        let d = SetDiagram::default();
        assert_eq!(lim(&d).families, vec![Vec::<usize>::new()]);
        assert_eq!(colim(&d).classes, 0);
    }
}
