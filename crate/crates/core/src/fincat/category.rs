use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of an object inside one [`FinCat`].
pub type Obj = usize;
/// Index of a morphism inside one [`FinCat`].
pub type Mor = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    pub id: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category stored as explicit tables.
///
/// Composition is written in diagrammatic order: `then(f, g)` is defined
/// when `tgt f = src g` and denotes "first `f`, then `g`", i.e. `g ∘ f`.
/// The table may be invalid (that is what [`FinCat::check`] is for); every
/// other operation assumes it passed.
#[derive(Clone, Debug)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identity: Vec<Mor>,
    compose: HashMap<(Mor, Mor), Mor>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
    homs: HashMap<(Obj, Obj), Vec<Mor>>,
    outs: Vec<Vec<Mor>>,
    ins: Vec<Vec<Mor>>,
    inverse: Vec<Option<Mor>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.compose == other.compose
    }
}

impl Eq for FinCat {}

impl FinCat {
    /// Assembles a category from index-based tables, checking only that
    /// ids are unique and indices are in range.
    pub fn from_tables(
        objects: Vec<String>,
        morphisms: Vec<MorphismData>,
        identity: Vec<Mor>,
        compose: HashMap<(Mor, Mor), Mor>,
    ) -> Result<FinCat> {
        let mut obj_index = HashMap::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::DuplicateId(o.clone()));
            }
        }
        let mut mor_index = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if mor_index.insert(m.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(m.id.clone()));
            }
            if m.src >= objects.len() || m.tgt >= objects.len() {
                return Err(Error::Malformed(format!("morphism `{}` has an endpoint out of range", m.id)));
            }
        }
        if identity.len() != objects.len() {
            return Err(Error::Malformed("identity table must cover every object".into()));
        }
        if let Some(bad) = identity.iter().find(|&&m| m >= morphisms.len()) {
            return Err(Error::Malformed(format!("identity index {bad} out of range")));
        }
        for (&(f, g), &h) in &compose {
            if f >= morphisms.len() || g >= morphisms.len() || h >= morphisms.len() {
                return Err(Error::Malformed("composition table index out of range".into()));
            }
        }
        let mut homs: HashMap<(Obj, Obj), Vec<Mor>> = HashMap::new();
        let mut outs = vec![Vec::new(); objects.len()];
        let mut ins = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            homs.entry((m.src, m.tgt)).or_default().push(i);
            outs[m.src].push(i);
            ins[m.tgt].push(i);
        }
        let mut cat = FinCat {
            objects,
            morphisms,
            identity,
            compose,
            obj_index,
            mor_index,
            homs,
            outs,
            ins,
            inverse: Vec::new(),
        };
        cat.inverse = (0..cat.morphisms.len()).map(|f| cat.find_inverse(f)).collect();
        Ok(cat)
    }

    /// Assembles a category from string ids, the form used by the JSON schema.
    /// `compose` maps `(f, g)` (diagrammatic) to the composite id.
    pub fn from_named(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identity: &BTreeMap<String, String>,
        compose: &BTreeMap<(String, String), String>,
    ) -> Result<FinCat> {
        let obj_pos: HashMap<&str, Obj> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mut mdata = Vec::with_capacity(morphisms.len());
        for (id, s, t) in &morphisms {
            let src = *obj_pos.get(s.as_str()).ok_or_else(|| Error::UnknownObject(s.clone()))?;
            let tgt = *obj_pos.get(t.as_str()).ok_or_else(|| Error::UnknownObject(t.clone()))?;
            mdata.push(MorphismData { id: id.clone(), src, tgt });
        }
        let mor_pos: HashMap<&str, Mor> = morphisms.iter().enumerate().map(|(i, m)| (m.0.as_str(), i)).collect();
        let lookup = |id: &str| mor_pos.get(id).copied().ok_or_else(|| Error::UnknownMorphism(id.to_string()));
        let mut ids = Vec::with_capacity(objects.len());
        for o in &objects {
            let m = identity.get(o).ok_or_else(|| Error::Malformed(format!("object `{o}` has no identity")))?;
            ids.push(lookup(m)?);
        }
        for o in identity.keys() {
            if !obj_pos.contains_key(o.as_str()) {
                return Err(Error::UnknownObject(o.clone()));
            }
        }
        let mut comp = HashMap::with_capacity(compose.len());
        for ((f, g), h) in compose {
            comp.insert((lookup(f)?, lookup(g)?), lookup(h)?);
        }
        FinCat::from_tables(objects, mdata, ids, comp)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_id(&self, x: Obj) -> &str {
        &self.objects[x]
    }

    pub fn morphism_id(&self, f: Mor) -> &str {
        &self.morphisms[f].id
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_data(&self) -> &[MorphismData] {
        &self.morphisms
    }

    pub fn object(&self, id: &str) -> Result<Obj> {
        self.obj_index.get(id).copied().ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    pub fn morphism(&self, id: &str) -> Result<Mor> {
        self.mor_index.get(id).copied().ok_or_else(|| Error::UnknownMorphism(id.to_string()))
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: Mor) -> Obj {
        self.morphisms[f].tgt
    }

    pub fn id(&self, x: Obj) -> Mor {
        self.identity[x]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        let x = self.src(f);
        self.identity[x] == f
    }

    /// Diagrammatic composite: first `f`, then `g`.
    ///
    /// Panics when the pair is not in the table; call [`FinCat::check`] on
    /// untrusted input first.
    pub fn then(&self, f: Mor, g: Mor) -> Mor {
        match self.compose.get(&(f, g)) {
            Some(&h) => h,
            None => panic!(
                "composite of `{}` then `{}` missing from the table",
                self.morphism_id(f),
                self.morphism_id(g)
            ),
        }
    }

    pub fn try_then(&self, f: Mor, g: Mor) -> Option<Mor> {
        self.compose.get(&(f, g)).copied()
    }

    /// Composite of a nonempty path given in diagrammatic order.
    pub fn then_all(&self, path: &[Mor]) -> Mor {
        let (&first, rest) = path.split_first().expect("empty path");
        rest.iter().fold(first, |acc, &g| self.then(acc, g))
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        self.homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn compose_table(&self) -> &HashMap<(Mor, Mor), Mor> {
        &self.compose
    }

    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse[f].is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        self.inverse.iter().all(Option::is_some)
    }

    /// True when at most one morphism joins any ordered pair of objects and
    /// the only isomorphisms are identities.
    pub fn is_poset(&self) -> bool {
        self.homs.values().all(|h| h.len() <= 1) && self.morphisms().all(|f| !self.is_iso(f) || self.is_identity(f))
    }

    fn find_inverse(&self, f: Mor) -> Option<Mor> {
        let (x, y) = (self.src(f), self.tgt(f));
        self.hom(y, x).iter().copied().find(|&g| {
            self.compose.get(&(f, g)) == Some(&self.identity[x]) && self.compose.get(&(g, f)) == Some(&self.identity[y])
        })
    }

    pub fn are_isomorphic(&self, x: Obj, y: Obj) -> bool {
        self.hom(x, y).iter().any(|&f| self.is_iso(f))
    }

    /// Isomorphism classes of objects, each listed in increasing order.
    pub fn iso_classes(&self) -> Vec<Vec<Obj>> {
        let mut class_of: Vec<Option<usize>> = vec![None; self.num_objects()];
        let mut classes: Vec<Vec<Obj>> = Vec::new();
        for x in self.objects() {
            if class_of[x].is_some() {
                continue;
            }
            let c = classes.len();
            let members: Vec<Obj> = self.objects().filter(|&y| y == x || self.are_isomorphic(x, y)).collect();
            for &y in &members {
                class_of[y] = Some(c);
            }
            classes.push(members);
        }
        classes
    }

    /// Checks every category axiom exhaustively.
    pub fn check(&self) -> CategoryReport {
        let mut violations = Vec::new();
        let name = |f: Mor| self.morphism_id(f).to_string();
        for x in self.objects() {
            let i = self.identity[x];
            if self.src(i) != x || self.tgt(i) != x {
                violations.push(Violation::IdentityNotEndo { object: self.objects[x].clone(), morphism: name(i) });
            }
        }
        for (&(f, g), &h) in &self.compose {
            if self.tgt(f) != self.src(g) {
                violations.push(Violation::NotComposable { f: name(f), g: name(g) });
            } else if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                violations.push(Violation::WrongEndpoints { f: name(f), g: name(g), composite: name(h) });
            }
        }
        for f in self.morphisms() {
            for g in self.out_of(self.tgt(f)) {
                if !self.compose.contains_key(&(f, g)) {
                    violations.push(Violation::MissingComposite { f: name(f), g: name(g) });
                }
            }
        }
        if !violations.is_empty() {
            violations.sort();
            return CategoryReport { violations };
        }
        for f in self.morphisms() {
            let (x, y) = (self.src(f), self.tgt(f));
            if self.then(self.identity[x], f) != f {
                violations.push(Violation::LeftUnit { f: name(f) });
            }
            if self.then(f, self.identity[y]) != f {
                violations.push(Violation::RightUnit { f: name(f) });
            }
        }
        for f in self.morphisms() {
            for g in self.out_of(self.tgt(f)) {
                let fg = self.then(f, g);
                for h in self.out_of(self.tgt(g)) {
                    if self.then(fg, h) != self.then(f, self.then(g, h)) {
                        violations.push(Violation::Associativity { f: name(f), g: name(g), h: name(h) });
                    }
                }
            }
        }
        violations.sort();
        CategoryReport { violations }
    }

    /// Morphisms with the given source, in index order.
    pub fn out_of(&self, x: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.outs[x].iter().copied()
    }

    /// Morphisms with the given target, in index order.
    pub fn into(&self, y: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.ins[y].iter().copied()
    }

    /// The opposite category; ids are kept.
    pub fn opposite(&self) -> FinCat {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorphismData { id: m.id.clone(), src: m.tgt, tgt: m.src })
            .collect();
        let compose = self.compose.iter().map(|(&(f, g), &h)| ((g, f), h)).collect();
        FinCat::from_tables(self.objects.clone(), morphisms, self.identity.clone(), compose)
            .expect("opposite of a well-formed table")
    }

    /// Full subcategory on the given objects (kept in the given order).
    pub fn full_subcategory(&self, objs: &[Obj]) -> (FinCat, Vec<Mor>) {
        let keep: HashMap<Obj, Obj> = objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mors: Vec<Mor> = self
            .morphisms()
            .filter(|&f| keep.contains_key(&self.src(f)) && keep.contains_key(&self.tgt(f)))
            .collect();
        self.restrict(objs, &keep, &mors)
    }

    /// Subcategory on all objects and the given morphisms, which must contain
    /// the identities and be closed under composition.
    pub fn wide_subcategory(&self, mors: &[Mor]) -> (FinCat, Vec<Mor>) {
        let objs: Vec<Obj> = self.objects().collect();
        let keep: HashMap<Obj, Obj> = objs.iter().map(|&x| (x, x)).collect();
        let mut sorted = mors.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.restrict(&objs, &keep, &sorted)
    }

    fn restrict(&self, objs: &[Obj], keep: &HashMap<Obj, Obj>, mors: &[Mor]) -> (FinCat, Vec<Mor>) {
        let mpos: HashMap<Mor, Mor> = mors.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let morphisms = mors
            .iter()
            .map(|&f| MorphismData { id: self.morphisms[f].id.clone(), src: keep[&self.src(f)], tgt: keep[&self.tgt(f)] })
            .collect();
        let mut compose = HashMap::new();
        for &f in mors {
            for &g in mors {
                if self.tgt(f) == self.src(g) {
                    let h = self.then(f, g);
                    compose.insert((mpos[&f], mpos[&g]), mpos[&h]);
                }
            }
        }
        let identity = objs.iter().map(|&x| mpos[&self.identity[x]]).collect();
        let names = objs.iter().map(|&x| self.objects[x].clone()).collect();
        let cat = FinCat::from_tables(names, morphisms, identity, compose).expect("restriction of a valid category");
        (cat, mors.to_vec())
    }
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat({} objects, {} morphisms)", self.num_objects(), self.num_morphisms())
    }
}

/// A single violated axiom, with the offending ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    IdentityNotEndo { object: String, morphism: String },
    NotComposable { f: String, g: String },
    MissingComposite { f: String, g: String },
    WrongEndpoints { f: String, g: String, composite: String },
    LeftUnit { f: String },
    RightUnit { f: String },
    Associativity { f: String, g: String, h: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CategoryReport {
    pub violations: Vec<Violation>,
}

impl CategoryReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite category together with the labels it was generated from.
#[derive(Clone, Debug)]
pub struct Labeled<O, M> {
    pub cat: FinCat,
    pub objs: Vec<O>,
    pub mors: Vec<M>,
    obj_lookup: HashMap<O, Obj>,
    mor_lookup: HashMap<(Obj, Obj, M), Mor>,
}

impl<O: Clone + Eq + Hash, M: Clone + Eq + Hash> Labeled<O, M> {
    pub fn obj(&self, o: &O) -> Option<Obj> {
        self.obj_lookup.get(o).copied()
    }

    pub fn mor(&self, x: Obj, y: Obj, m: &M) -> Option<Mor> {
        self.mor_lookup.get(&(x, y, m.clone())).copied()
    }
}

/// Generates a finite category from labelled objects and hom-sets.
///
/// `hom(x, y)` lists the morphisms `x → y`, `identity(x)` names the identity
/// and `compose(x, y, z, f, g)` returns the label of "first `f`, then `g`",
/// which must appear in `hom(x, z)`.
pub fn build_category<O, M>(
    objects: Vec<O>,
    hom: impl Fn(&O, &O) -> Vec<M>,
    identity: impl Fn(&O) -> M,
    compose: impl Fn(&O, &O, &O, &M, &M) -> M,
    obj_name: impl Fn(&O) -> String,
    mor_name: impl Fn(&O, &O, &M) -> String,
) -> Result<Labeled<O, M>>
where
    O: Clone + Eq + Hash,
    M: Clone + Eq + Hash,
{
    let n = objects.len();
    let obj_lookup: HashMap<O, Obj> = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
    if obj_lookup.len() != n {
        return Err(Error::Malformed("duplicate object label".into()));
    }
    let mut mors = Vec::new();
    let mut data = Vec::new();
    let mut mor_lookup = HashMap::new();
    let mut out: Vec<Vec<Mor>> = vec![Vec::new(); n];
    let mut used_names: HashMap<String, usize> = HashMap::new();
    for (x, ox) in objects.iter().enumerate() {
        for (y, oy) in objects.iter().enumerate() {
            for m in hom(ox, oy) {
                let idx = mors.len();
                if mor_lookup.insert((x, y, m.clone()), idx).is_some() {
                    return Err(Error::Malformed(format!("duplicate morphism label in hom({}, {})", obj_name(ox), obj_name(oy))));
                }
                let mut name = mor_name(ox, oy, &m);
                let count = used_names.entry(name.clone()).or_insert(0);
                if *count > 0 {
                    name = format!("{name}#{count}");
                }
                *count += 1;
                data.push(MorphismData { id: name, src: x, tgt: y });
                out[x].push(idx);
                mors.push(m);
            }
        }
    }
    let mut ids = Vec::with_capacity(n);
    for (x, ox) in objects.iter().enumerate() {
        let m = identity(ox);
        let f = *mor_lookup
            .get(&(x, x, m))
            .ok_or_else(|| Error::Malformed(format!("identity of {} missing from its hom-set", obj_name(ox))))?;
        ids.push(f);
    }
    let mut comp = HashMap::new();
    for f in 0..mors.len() {
        let (x, y) = (data[f].src, data[f].tgt);
        for &g in &out[y] {
            let z = data[g].tgt;
            let h = compose(&objects[x], &objects[y], &objects[z], &mors[f], &mors[g]);
            let hi = *mor_lookup.get(&(x, z, h)).ok_or_else(|| {
                Error::Malformed(format!("composite of {} then {} not in its hom-set", data[f].id, data[g].id))
            })?;
            comp.insert((f, g), hi);
        }
    }
    let names: Vec<String> = objects.iter().map(&obj_name).collect();
    let cat = FinCat::from_tables(names, data, ids, comp)?;
    Ok(Labeled { cat, objs: objects, mors, obj_lookup, mor_lookup })
}
