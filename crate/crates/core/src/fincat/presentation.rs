//! Presentations of categories by generators and relations, and a bounded
//! Knuth–Bendix completion used to decide equality of words.
//!
//! Words are typed paths written in diagrammatic order. Letters are
//! generators or formal inverses of generators marked invertible. Rules are
//! oriented by shortlex order (length first, then lexicographic on letter
//! ids), so every rule strictly shortens or lexicographically lowers a word.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::category::{FinCat, Mor, MorphismData, Obj};
use super::functor::Functor;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub id: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A generator or the formal inverse of an invertible generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(gen: usize) -> Letter {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Letter {
        Letter { gen, inverse: true }
    }
}

/// A path starting at `start`; the empty word is the identity there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub start: Obj,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty(start: Obj) -> Word {
        Word { start, letters: Vec::new() }
    }

    pub fn of(start: Obj, letters: Vec<Letter>) -> Word {
        Word { start, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub objects: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<(Word, Word)>,
    pub invertible: BTreeSet<usize>,
}

impl Presentation {
    pub fn letter_src(&self, l: Letter) -> Obj {
        let g = &self.generators[l.gen];
        if l.inverse {
            g.tgt
        } else {
            g.src
        }
    }

    pub fn letter_tgt(&self, l: Letter) -> Obj {
        let g = &self.generators[l.gen];
        if l.inverse {
            g.src
        } else {
            g.tgt
        }
    }

    pub fn letter_id(&self, l: Letter) -> String {
        let id = &self.generators[l.gen].id;
        if l.inverse {
            format!("{id}^-1")
        } else {
            id.clone()
        }
    }

    /// Endpoint of a word, or an error naming the first ill-typed junction.
    pub fn word_end(&self, w: &Word) -> Result<Obj> {
        if w.start >= self.objects.len() {
            return Err(Error::IllTyped(format!("start object index {} out of range", w.start)));
        }
        let mut at = w.start;
        for &l in &w.letters {
            if l.gen >= self.generators.len() {
                return Err(Error::IllTyped(format!("generator index {} out of range", l.gen)));
            }
            if l.inverse && !self.invertible.contains(&l.gen) {
                return Err(Error::IllTyped(format!("`{}` is not invertible", self.generators[l.gen].id)));
            }
            if self.letter_src(l) != at {
                return Err(Error::IllTyped(format!(
                    "`{}` starts at `{}` but the path is at `{}`",
                    self.letter_id(l),
                    self.objects[self.letter_src(l)],
                    self.objects[at]
                )));
            }
            at = self.letter_tgt(l);
        }
        Ok(at)
    }

    /// Checks that every relation is a pair of well-typed parallel words.
    pub fn validate(&self) -> Result<()> {
        for (i, (u, v)) in self.relations.iter().enumerate() {
            let (eu, ev) = (self.word_end(u)?, self.word_end(v)?);
            if u.start != v.start || eu != ev {
                return Err(Error::IllTyped(format!("relation {i} relates non-parallel words")));
            }
        }
        Ok(())
    }

    pub fn render(&self, w: &Word) -> String {
        if w.letters.is_empty() {
            format!("id_{}", self.objects[w.start])
        } else {
            w.letters.iter().map(|&l| self.letter_id(l)).collect::<Vec<_>>().join("·")
        }
    }

    /// Parses a word written as letter ids joined by `·` (or `.`), with
    /// `^-1` marking inverses and `id_<object>` for the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if let Some(obj) = text.strip_prefix("id_") {
            if let Some(x) = self.objects.iter().position(|o| o == obj) {
                return Ok(Word::empty(x));
            }
        }
        let mut letters = Vec::new();
        for part in text.split(['·', '.']).map(str::trim).filter(|p| !p.is_empty()) {
            let (name, inverse) = match part.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (part, false),
            };
            let gen = self
                .generators
                .iter()
                .position(|g| g.id == name)
                .ok_or_else(|| Error::IllTyped(format!("unknown generator `{name}`")))?;
            letters.push(Letter { gen, inverse });
        }
        let first = letters.first().ok_or_else(|| Error::IllTyped("empty word needs the form id_<object>".into()))?;
        let w = Word::of(self.letter_src(*first), letters);
        self.word_end(&w)?;
        Ok(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

/// Limits for completion. `max_word_len` bounds the left-hand side of any
/// rule and the length of enumerated normal forms.
#[derive(Clone, Copy, Debug)]
pub struct RewriteBounds {
    pub max_word_len: usize,
    pub max_rules: usize,
    pub max_steps: usize,
}

impl RewriteBounds {
    pub fn new(max_word_len: usize) -> RewriteBounds {
        RewriteBounds { max_word_len, max_rules: 200_000, max_steps: 5_000_000 }
    }
}

impl Default for RewriteBounds {
    fn default() -> Self {
        RewriteBounds::new(8)
    }
}

/// A confluent, terminating string rewriting system for a presentation,
/// obtained by completion.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    presentation: Presentation,
    letters: Vec<Letter>,
    letter_index: HashMap<Letter, u32>,
    /// Shortlex rank of each alphabet letter.
    rank: Vec<u32>,
    rules: Vec<Rule>,
    by_last: HashMap<u32, Vec<usize>>,
    bound: usize,
}

impl RewriteSystem {
    pub fn complete(p: &Presentation, bounds: RewriteBounds) -> Result<RewriteSystem> {
        p.validate()?;
        let mut letters: Vec<Letter> = (0..p.generators.len()).map(Letter::gen).collect();
        letters.extend(p.invertible.iter().map(|&g| Letter::inv(g)));
        let letter_index: HashMap<Letter, u32> = letters.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
        let mut order: Vec<usize> = (0..letters.len()).collect();
        order.sort_by(|&a, &b| p.letter_id(letters[a]).cmp(&p.letter_id(letters[b])).then(a.cmp(&b)));
        let mut rank = vec![0u32; letters.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r as u32;
        }
        let encode = |w: &Word| w.letters.iter().map(|l| letter_index[l]).collect::<Vec<u32>>();
        let mut initial: Vec<(Vec<u32>, Vec<u32>)> = p.relations.iter().map(|(u, v)| (encode(u), encode(v))).collect();
        for &g in &p.invertible {
            let (a, b) = (letter_index[&Letter::gen(g)], letter_index[&Letter::inv(g)]);
            initial.push((vec![a, b], vec![]));
            initial.push((vec![b, a], vec![]));
        }
        let mut kb = Completion::new(rank.clone(), bounds);
        kb.run(initial)?;
        let rules: Vec<Rule> = kb.rules.into_iter().flatten().collect();
        let mut by_last: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_last.entry(*r.lhs.last().unwrap()).or_default().push(i);
        }
        Ok(RewriteSystem {
            presentation: p.clone(),
            letters,
            letter_index,
            rank,
            rules,
            by_last,
            bound: bounds.max_word_len,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn encode(&self, w: &Word) -> Vec<u32> {
        w.letters.iter().map(|l| self.letter_index[l]).collect()
    }

    pub fn decode(&self, start: Obj, w: &[u32]) -> Word {
        Word::of(start, w.iter().map(|&i| self.letters[i as usize]).collect())
    }

    /// Shortlex comparison of encoded words.
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        shortlex(&self.rank, a, b)
    }

    fn reduce_raw(&self, w: &[u32]) -> Vec<u32> {
        reduce_with(w, &self.rules, &self.by_last)
    }

    /// Normal form of a well-typed word.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        self.presentation.word_end(w)?;
        Ok(self.decode(w.start, &self.reduce_raw(&self.encode(w))))
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.normalize(u)? == self.normalize(v)?)
    }

    /// All one-step rewrites of an encoded word (any rule, any position).
    pub fn one_step_rewrites(&self, w: &[u32]) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for r in &self.rules {
            let n = r.lhs.len();
            if n > w.len() {
                continue;
            }
            for i in 0..=w.len() - n {
                if w[i..i + n] == r.lhs[..] {
                    let mut v = w[..i].to_vec();
                    v.extend_from_slice(&r.rhs);
                    v.extend_from_slice(&w[i + n..]);
                    out.push(v);
                }
            }
        }
        out
    }

    fn is_irreducible_suffix(&self, w: &[u32]) -> bool {
        let Some(last) = w.last() else { return true };
        self.by_last
            .get(last)
            .map(|rs| rs.iter().all(|&r| !w.ends_with(&self.rules[r].lhs)))
            .unwrap_or(true)
    }

    /// Enumerates all normal forms and assembles the presented category.
    ///
    /// Normal forms are closed under taking prefixes, so the hom-sets are
    /// finite exactly when some length admits no normal form; if normal forms
    /// of length `bound + 1` exist the result is inconclusive.
    pub fn category(&self) -> Result<NormalizedCategory> {
        let p = &self.presentation;
        let mut words: Vec<Word> = Vec::new();
        let mut encoded: Vec<Vec<u32>> = Vec::new();
        let mut layer: Vec<(Obj, Vec<u32>, Obj)> = p.objects.iter().enumerate().map(|(x, _)| (x, Vec::new(), x)).collect();
        let mut out_letters: Vec<Vec<u32>> = vec![Vec::new(); p.objects.len()];
        for (i, &l) in self.letters.iter().enumerate() {
            out_letters[p.letter_src(l)].push(i as u32);
        }
        let mut len = 0;
        while !layer.is_empty() {
            if len > self.bound {
                return Err(Error::Inconclusive {
                    bound: self.bound,
                    detail: "normal forms longer than the bound exist; the presented category may be infinite".into(),
                });
            }
            let mut next = Vec::new();
            for (start, w, end) in layer {
                for &a in &out_letters[end] {
                    let mut v = w.clone();
                    v.push(a);
                    if self.is_irreducible_suffix(&v) {
                        next.push((start, v, p.letter_tgt(self.letters[a as usize])));
                    }
                }
                words.push(self.decode(start, &w));
                encoded.push(w);
            }
            layer = next;
            len += 1;
        }
        let mut index: HashMap<(Obj, Vec<u32>), Mor> = HashMap::new();
        let mut data = Vec::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            index.insert((w.start, encoded[i].clone()), i);
            let end = p.word_end(w).expect("normal forms are typed");
            data.push(MorphismData { id: p.render(w), src: w.start, tgt: end });
        }
        let identity: Vec<Mor> = (0..p.objects.len()).map(|x| index[&(x, Vec::new())]).collect();
        let mut outs: Vec<Vec<Mor>> = vec![Vec::new(); p.objects.len()];
        for (i, d) in data.iter().enumerate() {
            outs[d.src].push(i);
        }
        let mut compose = HashMap::new();
        for f in 0..words.len() {
            for &g in &outs[data[f].tgt] {
                let mut cat = encoded[f].clone();
                cat.extend_from_slice(&encoded[g]);
                let h = index[&(data[f].src, self.reduce_raw(&cat))];
                compose.insert((f, g), h);
            }
        }
        let cat = FinCat::from_tables(p.objects.clone(), data, identity, compose)?;
        Ok(NormalizedCategory { cat: Arc::new(cat), words, index })
    }
}

/// The category presented by a completed rewriting system: morphisms are
/// normal forms, composition is concatenation followed by reduction.
#[derive(Clone, Debug)]
pub struct NormalizedCategory {
    pub cat: Arc<FinCat>,
    pub words: Vec<Word>,
    index: HashMap<(Obj, Vec<u32>), Mor>,
}

impl NormalizedCategory {
    /// The morphism named by a word; the word is normalized first.
    pub fn morphism_of(&self, rs: &RewriteSystem, w: &Word) -> Result<Mor> {
        let n = rs.normalize(w)?;
        Ok(self.index[&(n.start, rs.encode(&n))])
    }
}

impl NormalizedCategory {
    /// The functor out of the presented category determined by where each
    /// letter goes; inverse letters go to the inverse of their image, which
    /// must exist. Relations are not re-checked here, so callers should
    /// validate the result.
    pub fn induced_functor(
        &self,
        p: &Presentation,
        target: Arc<FinCat>,
        omap: Vec<Obj>,
        letter: impl Fn(usize) -> Mor,
    ) -> Result<Functor> {
        let mut mmap = Vec::with_capacity(self.words.len());
        for w in &self.words {
            let mut m = target.id(omap[w.start]);
            for l in &w.letters {
                let g = letter(l.gen);
                let g = if l.inverse {
                    target.inverse(g).ok_or_else(|| {
                        Error::IllTyped(format!("image of `{}` is not invertible", p.generators[l.gen].id))
                    })?
                } else {
                    g
                };
                m = target
                    .try_then(m, g)
                    .ok_or_else(|| Error::IllTyped(format!("images along `{}` do not compose", p.render(w))))?;
            }
            mmap.push(m);
        }
        Functor::new(self.cat.clone(), target, omap, mmap)
    }
}

/// Outcome of [`normalize`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NormalForm {
    Normal { word: String },
    Inconclusive { bound: usize, detail: String },
}

/// Normal form of `word` in the presentation, completing with the given
/// bound on word length.
pub fn normalize(p: &Presentation, word: &Word, bound: usize) -> Result<NormalForm> {
    p.word_end(word)?;
    match RewriteSystem::complete(p, RewriteBounds::new(bound)) {
        Ok(rs) => Ok(NormalForm::Normal { word: p.render(&rs.normalize(word)?) }),
        Err(Error::Inconclusive { bound, detail }) => Ok(NormalForm::Inconclusive { bound, detail }),
        Err(e) => Err(e),
    }
}

/// The presentation of `C[W⁻¹]`: generators are the non-identity morphisms
/// of `C`, relations are the composition table, and every non-identity
/// member of `W` is declared invertible.
pub fn localize_presentation(c: &FinCat, w: &[Mor]) -> Presentation {
    let gens: Vec<Mor> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
    let gen_of: HashMap<Mor, usize> = gens.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let as_word = |f: Mor| match gen_of.get(&f) {
        Some(&g) => Word::of(c.src(f), vec![Letter::gen(g)]),
        None => Word::empty(c.src(f)),
    };
    let generators = gens.iter().map(|&f| Generator { id: c.morphism_id(f).into(), src: c.src(f), tgt: c.tgt(f) }).collect();
    let mut relations = Vec::new();
    for &f in &gens {
        for g in c.out_of(c.tgt(f)) {
            if c.is_identity(g) {
                continue;
            }
            let lhs = Word::of(c.src(f), vec![Letter::gen(gen_of[&f]), Letter::gen(gen_of[&g])]);
            relations.push((lhs, as_word(c.then(f, g))));
        }
    }
    let invertible = w.iter().filter_map(|f| gen_of.get(f).copied()).collect();
    Presentation { objects: c.object_ids().to_vec(), generators, relations, invertible }
}

/// A localization computed to the end: the presented category together with
/// the canonical functor out of the original category.
#[derive(Clone, Debug)]
pub struct Localization {
    pub presentation: Presentation,
    pub system: RewriteSystem,
    pub normalized: NormalizedCategory,
    pub functor: Functor,
}

pub fn localize(c: &Arc<FinCat>, w: &[Mor], bounds: RewriteBounds) -> Result<Localization> {
    let presentation = localize_presentation(c, w);
    let system = RewriteSystem::complete(&presentation, bounds)?;
    let normalized = system.category()?;
    let gen_of: HashMap<&str, usize> =
        presentation.generators.iter().enumerate().map(|(i, g)| (g.id.as_str(), i)).collect();
    let mut mmap = Vec::with_capacity(c.num_morphisms());
    for f in c.morphisms() {
        let word = match gen_of.get(c.morphism_id(f)) {
            Some(&g) if !c.is_identity(f) => Word::of(c.src(f), vec![Letter::gen(g)]),
            _ => Word::empty(c.src(f)),
        };
        mmap.push(normalized.morphism_of(&system, &word)?);
    }
    let functor = Functor::new(c.clone(), normalized.cat.clone(), c.objects().collect(), mmap)?;
    Ok(Localization { presentation, system, normalized, functor })
}

fn shortlex(rank: &[u32], a: &[u32], b: &[u32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (&x, &y) in a.iter().zip(b) {
            match rank[x as usize].cmp(&rank[y as usize]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

fn reduce_with(w: &[u32], rules: &[Rule], by_last: &HashMap<u32, Vec<usize>>) -> Vec<u32> {
    let mut input: Vec<u32> = w.iter().rev().copied().collect();
    let mut out: Vec<u32> = Vec::with_capacity(w.len());
    while let Some(a) = input.pop() {
        out.push(a);
        if let Some(cands) = by_last.get(&a) {
            if let Some(r) = cands.iter().map(|&i| &rules[i]).find(|r| out.ends_with(&r.lhs)) {
                out.truncate(out.len() - r.lhs.len());
                input.extend(r.rhs.iter().rev());
            }
        }
    }
    out
}

struct Completion {
    rank: Vec<u32>,
    bounds: RewriteBounds,
    rules: Vec<Option<Rule>>,
    by_first: HashMap<u32, Vec<usize>>,
    by_last: HashMap<u32, Vec<usize>>,
    live: usize,
    pending: BinaryHeap<Reverse<(usize, u64, Vec<u32>, Vec<u32>)>>,
    seq: u64,
}

impl Completion {
    fn new(rank: Vec<u32>, bounds: RewriteBounds) -> Completion {
        Completion {
            rank,
            bounds,
            rules: Vec::new(),
            by_first: HashMap::new(),
            by_last: HashMap::new(),
            live: 0,
            pending: BinaryHeap::new(),
            seq: 0,
        }
    }

    fn push(&mut self, a: Vec<u32>, b: Vec<u32>) {
        self.seq += 1;
        self.pending.push(Reverse((a.len() + b.len(), self.seq, a, b)));
    }

    fn reduce(&self, w: &[u32]) -> Vec<u32> {
        let mut input: Vec<u32> = w.iter().rev().copied().collect();
        let mut out: Vec<u32> = Vec::with_capacity(w.len());
        while let Some(a) = input.pop() {
            out.push(a);
            if let Some(cands) = self.by_last.get(&a) {
                let hit = cands.iter().filter_map(|&i| self.rules[i].as_ref()).find(|r| out.ends_with(&r.lhs));
                if let Some(r) = hit {
                    out.truncate(out.len() - r.lhs.len());
                    input.extend(r.rhs.iter().rev());
                }
            }
        }
        out
    }

    fn run(&mut self, initial: Vec<(Vec<u32>, Vec<u32>)>) -> Result<()> {
        for (a, b) in initial {
            self.push(a, b);
        }
        let mut steps = 0usize;
        while let Some(Reverse((_, _, a, b))) = self.pending.pop() {
            steps += 1;
            if steps > self.bounds.max_steps {
                return Err(Error::Inconclusive {
                    bound: self.bounds.max_word_len,
                    detail: format!("completion exceeded {} steps", self.bounds.max_steps),
                });
            }
            let (a, b) = (self.reduce(&a), self.reduce(&b));
            let (lhs, rhs) = match shortlex(&self.rank, &a, &b) {
                Ordering::Equal => continue,
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
            };
            if lhs.len() > self.bounds.max_word_len {
                return Err(Error::Inconclusive {
                    bound: self.bounds.max_word_len,
                    detail: format!("completion needs a rule of length {}", lhs.len()),
                });
            }
            self.add_rule(Rule { lhs, rhs })?;
        }
        Ok(())
    }

    fn add_rule(&mut self, rule: Rule) -> Result<()> {
        // Rules whose left side contains the new left side go back to the queue;
        // right sides are re-reduced.
        let mut evicted = Vec::new();
        for i in 0..self.rules.len() {
            let Some(r) = &self.rules[i] else { continue };
            if contains(&r.lhs, &rule.lhs) {
                evicted.push(i);
            }
        }
        for i in evicted {
            let r = self.rules[i].take().unwrap();
            self.live -= 1;
            self.push(r.lhs, r.rhs);
        }
        let idx = self.rules.len();
        self.by_first.entry(rule.lhs[0]).or_default().push(idx);
        self.by_last.entry(*rule.lhs.last().unwrap()).or_default().push(idx);
        self.rules.push(Some(rule));
        self.live += 1;
        if self.live > self.bounds.max_rules {
            return Err(Error::Inconclusive {
                bound: self.bounds.max_word_len,
                detail: format!("completion exceeded {} rules", self.bounds.max_rules),
            });
        }
        let new_lhs = self.rules[idx].as_ref().unwrap().lhs.clone();
        for i in 0..self.rules.len() {
            if i == idx {
                continue;
            }
            let needs = matches!(&self.rules[i], Some(r) if contains(&r.rhs, &new_lhs));
            if needs {
                let rhs = self.rules[i].as_ref().unwrap().rhs.clone();
                let reduced = self.reduce(&rhs);
                self.rules[i].as_mut().unwrap().rhs = reduced;
            }
        }
        self.critical_pairs(idx);
        Ok(())
    }

    fn critical_pairs(&mut self, idx: usize) {
        let r = self.rules[idx].clone().unwrap();
        let n = r.lhs.len();
        let mut found: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        // suffix of the new rule overlapping a prefix of another
        for i in 1..n {
            let Some(cands) = self.by_first.get(&r.lhs[i]) else { continue };
            let k = n - i;
            for &j in cands {
                let Some(s) = &self.rules[j] else { continue };
                if s.lhs.len() > k && s.lhs[..k] == r.lhs[i..] {
                    let mut left = r.rhs.clone();
                    left.extend_from_slice(&s.lhs[k..]);
                    let mut right = r.lhs[..i].to_vec();
                    right.extend_from_slice(&s.rhs);
                    found.push((left, right));
                }
            }
        }
        // suffix of another rule overlapping a prefix of the new one
        for k in 1..n {
            let Some(cands) = self.by_last.get(&r.lhs[k - 1]) else { continue };
            for &j in cands {
                if j == idx {
                    continue;
                }
                let Some(s) = &self.rules[j] else { continue };
                let m = s.lhs.len();
                if m > k && s.lhs[m - k..] == r.lhs[..k] {
                    let mut left = s.rhs.clone();
                    left.extend_from_slice(&r.lhs[k..]);
                    let mut right = s.lhs[..m - k].to_vec();
                    right.extend_from_slice(&r.rhs);
                    found.push((left, right));
                }
            }
        }
        for (a, b) in found {
            self.push(a, b);
        }
    }
}

fn contains(hay: &[u32], needle: &[u32]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// All irreducible words reachable from `w` by applying rules in every
/// possible order, exploring words up to `max_len` letters. Used to confirm
/// that the outcome of rewriting does not depend on the order of steps.
pub fn terminal_forms(rs: &RewriteSystem, w: &Word, max_len: usize) -> HashSet<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut stack = vec![rs.encode(w)];
    let mut terminal = HashSet::new();
    while let Some(v) = stack.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        let next = rs.one_step_rewrites(&v);
        if next.is_empty() {
            terminal.insert(v);
        }
        stack.extend(next.into_iter().filter(|u| u.len() <= max_len));
    }
    terminal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins;

    fn circle() -> Presentation {
        // one vertex v, degenerate edge s0v and a free loop e
        Presentation {
            objects: vec!["v".into()],
            generators: vec![
                Generator { id: "e".into(), src: 0, tgt: 0 },
                Generator { id: "s0v".into(), src: 0, tgt: 0 },
            ],
            relations: vec![(Word::of(0, vec![Letter::gen(1)]), Word::empty(0))],
            invertible: BTreeSet::new(),
        }
    }

    #[test]
    fn circle_powers_stay_distinct() {
        let p = circle();
        let rs = RewriteSystem::complete(&p, RewriteBounds::new(6)).unwrap();
        let e2 = Word::of(0, vec![Letter::gen(0); 2]);
        let e3 = Word::of(0, vec![Letter::gen(0); 3]);
        assert!(!rs.equal(&e2, &e3).unwrap());
        assert_eq!(rs.normalize(&Word::of(0, vec![Letter::gen(1), Letter::gen(0)])).unwrap(), Word::of(0, vec![Letter::gen(0)]));
        // the presented monoid is free on e, hence infinite
        assert!(matches!(rs.category(), Err(Error::Inconclusive { .. })));
    }

    #[test]
    fn inverse_cancels() {
        let i = Arc::new(builtins::interval());
        let f = i.morphism("0->1").unwrap();
        let p = localize_presentation(&i, &[f]);
        let w = Word::of(0, vec![Letter::gen(0), Letter::inv(0)]);
        assert_eq!(normalize(&p, &w, 8).unwrap(), NormalForm::Normal { word: "id_0".into() });
    }

    #[test]
    fn relation_sides_are_equal() {
        let c = builtins::chain(2);
        let p = localize_presentation(&c, &[]);
        let rs = RewriteSystem::complete(&p, RewriteBounds::default()).unwrap();
        for (u, v) in &p.relations {
            assert!(rs.equal(u, v).unwrap());
        }
    }

    #[test]
    fn localizing_interval_gives_iso_interval() {
        let i = Arc::new(builtins::interval());
        let f = i.morphism("0->1").unwrap();
        let loc = localize(&i, &[f], RewriteBounds::default()).unwrap();
        let l = &loc.normalized.cat;
        assert_eq!(l.num_objects(), 2);
        for x in l.objects() {
            for y in l.objects() {
                assert_eq!(l.hom(x, y).len(), 1);
            }
        }
        assert!(l.check().is_valid());
    }

    #[test]
    fn localizing_at_nothing_recovers_category() {
        for c in [builtins::chain(3), builtins::iso_chain(2), builtins::product(&builtins::interval(), &builtins::interval())] {
            let c = Arc::new(c);
            let loc = localize(&c, &[], RewriteBounds::default()).unwrap();
            assert!(loc.functor.is_valid());
            assert!(loc.functor.is_isomorphism());
        }
    }

    #[test]
    fn ill_typed_word_is_an_error() {
        let c = builtins::chain(2);
        let p = localize_presentation(&c, &[]);
        let g01 = p.generators.iter().position(|g| g.id == "0->1").unwrap();
        let bad = Word::of(0, vec![Letter::gen(g01), Letter::gen(g01)]);
        assert!(matches!(normalize(&p, &bad, 8), Err(Error::IllTyped(_))));
    }

    #[test]
    fn parse_and_render_round_trip() {
        let i = Arc::new(builtins::interval());
        let p = localize_presentation(&i, &[i.morphism("0->1").unwrap()]);
        let w = p.parse_word("0->1·0->1^-1").unwrap();
        assert_eq!(p.render(&w), "0->1·0->1^-1");
        assert_eq!(p.parse_word("id_1").unwrap(), Word::empty(1));
    }
}
