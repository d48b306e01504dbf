//! Finite groups given by multiplication tables.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    /// `table[a][b]` is the product `a·b`.
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Malformed("group table must be square over the element list".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Malformed("group table has no identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Malformed(format!("element `{}` has no inverse", names[a])))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Malformed("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table, identity, inverses })
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(names, table).expect("cyclic group")
    }

    /// The symmetric group on three letters, elements written as images of
    /// `(0,1,2)`; `a·b` means "apply `a`, then `b`".
    pub fn symmetric3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let names = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([b[a[0]], b[a[1]], b[a[2]]])).collect())
            .collect();
        FiniteGroup::from_table(names, table).expect("S3")
    }

    /// Direct power `G^k`; elements are tuples, names joined by commas.
    pub fn power(&self, k: usize) -> FiniteGroup {
        let n = self.order();
        let size = n.pow(k as u32);
        let digits = |mut x: usize| {
            let mut d = vec![0; k];
            for slot in d.iter_mut().rev() {
                *slot = x % n;
                x /= n;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * n + x);
        let names = (0..size)
            .map(|x| {
                let d = digits(x);
                format!("({})", d.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join(","))
            })
            .collect();
        let table = (0..size)
            .map(|a| {
                let da = digits(a);
                (0..size)
                    .map(|b| {
                        let db = digits(b);
                        let prod: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| self.table[x][y]).collect();
                        encode(&prod)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(names, table).expect("power of a group")
    }

    /// Index in `G^k` of a tuple of elements of `G`, matching [`Self::power`].
    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.order() + x)
    }

    /// The tuple of elements of `G` standing for `x ∈ G^k`.
    pub fn tuple_of(&self, k: usize, mut x: usize) -> Vec<usize> {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = x % self.order();
            x /= self.order();
        }
        d
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_of_order_6() {
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.element_name(g.identity()), "012");
    }

    #[test]
    fn power_order() {
        let g = FiniteGroup::cyclic(2).power(3);
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        assert_eq!(FiniteGroup::cyclic(3).power(0).order(), 1);
    }
}
