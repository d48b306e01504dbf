use std::sync::Arc;

use serde::Serialize;

use super::category::{FinCat, Mor, Obj};
use crate::error::{Error, Result};

/// A functor between finite categories, given by its object and morphism maps.
#[derive(Clone, Debug)]
pub struct Functor {
    pub src: Arc<FinCat>,
    pub tgt: Arc<FinCat>,
    pub omap: Vec<Obj>,
    pub mmap: Vec<Mor>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.omap == other.omap && self.mmap == other.mmap && *self.src == *other.src && *self.tgt == *other.tgt
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctorViolation {
    Endpoints { morphism: String },
    Identity { object: String },
    Composition { f: String, g: String },
}

impl Functor {
    pub fn new(src: Arc<FinCat>, tgt: Arc<FinCat>, omap: Vec<Obj>, mmap: Vec<Mor>) -> Result<Functor> {
        if omap.len() != src.num_objects() || mmap.len() != src.num_morphisms() {
            return Err(Error::Malformed("functor maps must cover the source category".into()));
        }
        if omap.iter().any(|&y| y >= tgt.num_objects()) || mmap.iter().any(|&g| g >= tgt.num_morphisms()) {
            return Err(Error::Malformed("functor maps land outside the target category".into()));
        }
        Ok(Functor { src, tgt, omap, mmap })
    }

    pub fn identity(c: Arc<FinCat>) -> Functor {
        let omap = c.objects().collect();
        let mmap = c.morphisms().collect();
        Functor { src: c.clone(), tgt: c, omap, mmap }
    }

    /// Builds the functor from closures, e.g. when both maps are computed.
    pub fn from_fn(src: Arc<FinCat>, tgt: Arc<FinCat>, omap: impl Fn(Obj) -> Obj, mmap: impl Fn(Mor) -> Mor) -> Functor {
        let o = src.objects().map(omap).collect();
        let m = src.morphisms().map(mmap).collect();
        Functor { src, tgt, omap: o, mmap: m }
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.omap[x]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.mmap[f]
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &Functor) -> Functor {
        let omap = self.omap.iter().map(|&y| next.omap[y]).collect();
        let mmap = self.mmap.iter().map(|&g| next.mmap[g]).collect();
        Functor { src: self.src.clone(), tgt: next.tgt.clone(), omap, mmap }
    }

    /// Exhaustive check of endpoints, identities and composition.
    pub fn violations(&self) -> Vec<FunctorViolation> {
        let (c, d) = (&*self.src, &*self.tgt);
        let mut out = Vec::new();
        for f in c.morphisms() {
            let g = self.mmap[f];
            if d.src(g) != self.omap[c.src(f)] || d.tgt(g) != self.omap[c.tgt(f)] {
                out.push(FunctorViolation::Endpoints { morphism: c.morphism_id(f).into() });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in c.objects() {
            if self.mmap[c.id(x)] != d.id(self.omap[x]) {
                out.push(FunctorViolation::Identity { object: c.object_id(x).into() });
            }
        }
        for f in c.morphisms() {
            for g in c.out_of(c.tgt(f)) {
                if self.mmap[c.then(f, g)] != d.then(self.mmap[f], self.mmap[g]) {
                    out.push(FunctorViolation::Composition { f: c.morphism_id(f).into(), g: c.morphism_id(g).into() });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// True when the functor is a bijection on objects and on morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let bij = |map: &[usize], n: usize| {
            let mut seen = vec![false; n];
            map.len() == n && map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        };
        bij(&self.omap, self.tgt.num_objects()) && bij(&self.mmap, self.tgt.num_morphisms())
    }
}

/// A natural transformation `src ⇒ tgt` between parallel functors.
#[derive(Clone, Debug)]
pub struct NatTrans {
    pub src: Functor,
    pub tgt: Functor,
    pub components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(src: Functor, tgt: Functor, components: Vec<Mor>) -> Result<NatTrans> {
        if *src.src != *tgt.src || *src.tgt != *tgt.tgt {
            return Err(Error::Malformed("natural transformation between non-parallel functors".into()));
        }
        if components.len() != src.src.num_objects() {
            return Err(Error::Malformed("one component per source object is required".into()));
        }
        Ok(NatTrans { src, tgt, components })
    }

    pub fn identity(f: &Functor) -> NatTrans {
        let components = f.src.objects().map(|x| f.tgt.id(f.omap[x])).collect();
        NatTrans { src: f.clone(), tgt: f.clone(), components }
    }

    /// Objects whose component has the wrong endpoints, then morphisms whose
    /// naturality square fails.
    pub fn violations(&self) -> Vec<String> {
        let (c, d) = (&*self.src.src, &*self.src.tgt);
        let mut out = Vec::new();
        for x in c.objects() {
            let a = self.components[x];
            if d.src(a) != self.src.omap[x] || d.tgt(a) != self.tgt.omap[x] {
                out.push(format!("component at `{}` has wrong endpoints", c.object_id(x)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in c.morphisms() {
            let (x, y) = (c.src(f), c.tgt(f));
            let lhs = d.then(self.src.mmap[f], self.components[y]);
            let rhs = d.then(self.components[x], self.tgt.mmap[f]);
            if lhs != rhs {
                out.push(format!("naturality fails at `{}`", c.morphism_id(f)));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins;

    #[test]
    fn identity_functor_is_valid_iso() {
        let c = Arc::new(builtins::chain(2));
        let f = Functor::identity(c);
        assert!(f.is_valid());
        assert!(f.is_isomorphism());
    }

    #[test]
    fn collapsing_interval_is_a_functor() {
        let i = Arc::new(builtins::interval());
        let t = Arc::new(builtins::terminal());
        let f = Functor::from_fn(i, t, |_| 0, |_| 0);
        assert!(f.is_valid());
        assert!(!f.is_isomorphism());
    }

    #[test]
    fn bad_functor_reports_endpoints() {
        let i = Arc::new(builtins::interval());
        // swap the objects but keep the arrow: endpoints no longer match
        let f = Functor::new(i.clone(), i.clone(), vec![1, 0], i.morphisms().collect()).unwrap();
        assert!(matches!(f.violations()[0], FunctorViolation::Endpoints { .. }));
    }

    #[test]
    fn natural_transformation_to_terminal_constant() {
        // the unique map from id_I to the constant functor at 1
        let i = Arc::new(builtins::interval());
        let one = i.object("1").unwrap();
        let idf = Functor::identity(i.clone());
        let constant = Functor::from_fn(i.clone(), i.clone(), |_| one, |_| i.id(one));
        let comps = i.objects().map(|x| i.hom(x, one)[0]).collect();
        let eta = NatTrans::new(idf, constant, comps).unwrap();
        assert!(eta.is_valid());
    }
}
