//! Words, relations and the truncated quotient.
//!
//! Words of `hom(x, y)` are ordered by weight, then lexicographically by
//! letter id. The relation space of a hom is the span of all products
//! `u r v` of a generator `r` with words `u`, `v` whose every term has
//! weight at most `L`. Its echelon basis takes pivots at the largest word,
//! so the words left without a pivot form a basis of the quotient and
//! their weights give the bucket dimensions.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::LetterSource;
use crate::error::{Error, Result};
use crate::kernel::sparse::{add_entry, SparseEchelon, SparseVec};
use crate::kernel::{Field, Scalar};
use crate::report::Report;

pub(crate) type WordKey = Vec<u32>;
type Poly = BTreeMap<WordKey, Scalar>;

/// The letter `ι^(i)(b)` in `hom(src, tgt)`; `b` is a basis vector of
/// `A_{src,tgt}` for even `index` and of `A_{tgt,src}` for odd `index`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LetterInfo {
    pub src: usize,
    pub tgt: usize,
    pub index: usize,
    pub base: usize,
    pub weight: usize,
}

impl LetterInfo {
    /// The hom of the input that `base` lives in.
    pub fn base_hom(&self) -> (usize, usize) {
        if self.index % 2 == 0 {
            (self.src, self.tgt)
        } else {
            (self.tgt, self.src)
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    /// Union-find on word classes when every generator has at most two
    /// terms, sparse elimination otherwise.
    #[default]
    Auto,
    Echelon,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BucketDims {
    pub x: usize,
    pub y: usize,
    pub len: usize,
    pub words: usize,
    pub quotient: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct HomWords {
    pub(crate) words: Vec<WordKey>,
    weights: Vec<usize>,
    lookup: HashMap<WordKey, usize>,
    /// `starts[ℓ]` is the index of the first word of weight `ℓ`.
    starts: Vec<usize>,
}

impl HomWords {
    fn upto(&self, weight: usize) -> &[WordKey] {
        let end = self.starts[(weight + 1).min(self.starts.len() - 1)];
        &self.words[..end]
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Relation {
    pub(crate) src: usize,
    pub(crate) tgt: usize,
    weight: usize,
    pub(crate) terms: Poly,
}

/// Word classes under binomial relations: `w_i = ratio[i] · w_root[i]`,
/// or zero.
#[derive(Clone, Debug)]
struct Classes {
    parent: Vec<usize>,
    ratio: Vec<Scalar>,
    zero: Vec<bool>,
}

impl Classes {
    fn new(field: Field, n: usize) -> Self {
        Classes {
            parent: (0..n).collect(),
            ratio: vec![field.one(); n],
            zero: vec![false; n],
        }
    }

    fn find(&mut self, i: usize) -> (usize, Scalar) {
        let mut path = Vec::new();
        let mut r = i;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        for &p in path.iter().rev() {
            let par = self.parent[p];
            if par != r {
                self.ratio[p] = &self.ratio[p] * &self.ratio[par];
                self.parent[p] = r;
            }
        }
        if i == r {
            (r, self.ratio[r].field().one())
        } else {
            (r, self.ratio[i].clone())
        }
    }

    fn relate(&mut self, terms: &[(usize, Scalar)]) {
        match terms {
            [] => {}
            [(i, _)] => {
                let (r, _) = self.find(*i);
                self.zero[r] = true;
            }
            [(i, ci), (j, cj)] => {
                let (ri, ai) = self.find(*i);
                let (rj, aj) = self.find(*j);
                let (ci, cj) = (ci * &ai, cj * &aj);
                if ri == rj {
                    if !(&ci + &cj).is_zero() {
                        self.zero[ri] = true;
                    }
                    return;
                }
                let ((lo, clo), (hi, chi)) = if ri < rj { ((ri, ci), (rj, cj)) } else { ((rj, cj), (ri, ci)) };
                self.parent[hi] = lo;
                self.ratio[hi] = -&(&clo * &chi.inv().expect("nonzero"));
                self.zero[lo] |= self.zero[hi];
            }
            _ => unreachable!("binomial relations only"),
        }
    }

    fn finish(mut self) -> ClassTable {
        let n = self.parent.len();
        let mut root = Vec::with_capacity(n);
        let mut ratio = Vec::with_capacity(n);
        let mut zero = Vec::with_capacity(n);
        for i in 0..n {
            let (r, a) = self.find(i);
            root.push(r);
            ratio.push(a);
            zero.push(self.zero[r]);
        }
        ClassTable { root, ratio, zero }
    }
}

#[derive(Clone, Debug)]
struct ClassTable {
    root: Vec<usize>,
    ratio: Vec<Scalar>,
    zero: Vec<bool>,
}

#[derive(Clone, Debug)]
enum Presentation {
    Classes(ClassTable),
    Echelon(SparseEchelon),
}

impl Presentation {
    fn is_basis(&self, i: usize) -> bool {
        match self {
            Presentation::Classes(t) => t.root[i] == i && !t.zero[i],
            Presentation::Echelon(e) => !e.is_pivot(i),
        }
    }

    fn normal_form(&self, v: &SparseVec) -> SparseVec {
        match self {
            Presentation::Classes(t) => {
                let mut out = SparseVec::new();
                for (k, c) in v {
                    if !t.zero[*k] {
                        add_entry(&mut out, t.root[*k], &(c * &t.ratio[*k]));
                    }
                }
                out
            }
            Presentation::Echelon(e) => e.reduce(v),
        }
    }
}

/// A truncation of the free Hopf category: words of weight at most `L` in
/// letters of index at most `I_max`, modulo the relations that fit.
#[derive(Clone, Debug)]
pub struct TruncatedFreeHopf {
    field: Field,
    objects: Vec<String>,
    max_len: usize,
    i_max: usize,
    pub(crate) source_dims: Vec<usize>,
    pub(crate) units: Vec<Option<usize>>,
    pub(crate) letters: Vec<LetterInfo>,
    letter_lookup: HashMap<(usize, usize, usize, usize), u32>,
    letter_delta: Vec<Vec<(WordKey, WordKey, Scalar)>>,
    letter_counit: Vec<Scalar>,
    pub(crate) homs: Vec<HomWords>,
    pub(crate) generators: Vec<Relation>,
    presentations: Vec<Presentation>,
    binomial: bool,
}

pub fn free_hopf_truncated<S: LetterSource + ?Sized>(a: &S, max_len: usize, i_max: usize) -> Result<TruncatedFreeHopf> {
    free_hopf_truncated_with(a, max_len, i_max, Method::Auto)
}

pub fn free_hopf_truncated_with<S: LetterSource + ?Sized>(
    a: &S,
    max_len: usize,
    i_max: usize,
    method: Method,
) -> Result<TruncatedFreeHopf> {
    if max_len == 0 {
        return Err(Error::Precondition("the word weight bound must be at least 1".into()));
    }
    if i_max == 0 {
        return Err(Error::Precondition("the letter index bound must be at least 1".into()));
    }
    let field = a.field();
    let objects = a.objects().to_vec();
    let n = objects.len();
    let source_dims: Vec<usize> = (0..n * n).map(|k| a.hom_dim(k / n, k % n)).collect();
    let units: Vec<Option<usize>> = (0..n).map(|x| a.unit_basis(x)).collect();

    let mut t = TruncatedFreeHopf {
        field,
        objects,
        max_len,
        i_max,
        source_dims,
        units,
        letters: Vec::new(),
        letter_lookup: HashMap::new(),
        letter_delta: Vec::new(),
        letter_counit: Vec::new(),
        homs: Vec::new(),
        generators: Vec::new(),
        presentations: Vec::new(),
        binomial: false,
    };

    for x in 0..n {
        for y in 0..n {
            for i in 0..=i_max {
                let (u, v) = if i % 2 == 0 { (x, y) } else { (y, x) };
                for b in 0..a.hom_dim(u, v) {
                    if u == v && t.units[u] == Some(b) {
                        continue;
                    }
                    let weight = a.weight(u, v, b);
                    if weight == 0 {
                        return Err(Error::Invalid(format!(
                            "basis vector {b} of ({}, {}) has weight 0 but is not the unit",
                            t.objects[u], t.objects[v]
                        )));
                    }
                    if weight > max_len {
                        continue;
                    }
                    t.letter_lookup.insert((x, y, i, b), t.letters.len() as u32);
                    t.letters.push(LetterInfo {
                        src: x,
                        tgt: y,
                        index: i,
                        base: b,
                        weight,
                    });
                }
            }
        }
    }

    for l in t.letters.clone() {
        let (u, v) = l.base_hom();
        let mut terms = Vec::new();
        for (p, q, c) in a.delta(u, v, l.base) {
            let (p, q) = if l.index % 2 == 0 { (p, q) } else { (q, p) };
            let (Some(pw), Some(qw)) = (t.letter_word(l.src, l.tgt, l.index, p), t.letter_word(l.src, l.tgt, l.index, q)) else {
                return Err(Error::Invalid("comultiplication raises the weight of a basis vector".into()));
            };
            if t.weight_of(&pw) > l.weight || t.weight_of(&qw) > l.weight {
                return Err(Error::Invalid("comultiplication raises the weight of a basis vector".into()));
            }
            terms.push((pw, qw, c));
        }
        t.letter_delta.push(terms);
        t.letter_counit.push(a.counit(u, v, l.base));
    }

    t.homs = enumerate_words(&t);
    t.generators = generators(a, &t);
    t.binomial = method == Method::Auto && t.generators.iter().all(|r| r.terms.len() <= 2);
    t.presentations = (0..n * n)
        .into_par_iter()
        .map(|k| close(&t, k / n, k % n))
        .collect();
    Ok(t)
}

fn enumerate_words(t: &TruncatedFreeHopf) -> Vec<HomWords> {
    let n = t.objects.len();
    let l = t.max_len;
    let mut out_letters: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (id, letter) in t.letters.iter().enumerate() {
        out_letters[letter.src].push(id as u32);
    }
    let mut raw: Vec<Vec<(usize, WordKey)>> = vec![Vec::new(); n * n];
    for x in 0..n {
        let mut stack: Vec<(usize, usize, WordKey)> = vec![(x, 0, Vec::new())];
        while let Some((at, w, word)) = stack.pop() {
            for &id in &out_letters[at] {
                let letter = &t.letters[id as usize];
                if w + letter.weight <= l {
                    let mut next = word.clone();
                    next.push(id);
                    stack.push((letter.tgt, w + letter.weight, next));
                }
            }
            raw[x * n + at].push((w, word));
        }
    }
    raw.into_iter()
        .map(|mut ws| {
            ws.sort();
            let mut starts = vec![0; l + 2];
            for (w, _) in &ws {
                starts[w + 1] += 1;
            }
            for k in 1..starts.len() {
                starts[k] += starts[k - 1];
            }
            let weights = ws.iter().map(|(w, _)| *w).collect();
            let words: Vec<WordKey> = ws.into_iter().map(|(_, w)| w).collect();
            let lookup = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
            HomWords {
                words,
                weights,
                lookup,
                starts,
            }
        })
        .collect()
}

fn generators<S: LetterSource + ?Sized>(a: &S, t: &TruncatedFreeHopf) -> Vec<Relation> {
    let n = t.objects.len();
    let field = t.field;
    let mut out = Vec::new();
    let mut push = |src: usize, tgt: usize, terms: Poly| {
        if terms.is_empty() {
            return;
        }
        let weight = terms.keys().map(|w| t.weight_of(w)).max().unwrap_or(0);
        if weight <= t.max_len {
            out.push(Relation { src, tgt, weight, terms });
        }
    };

    // functoriality of each ι^(i)
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for pa in 0..a.hom_dim(x, y) {
                    if x == y && t.units[x] == Some(pa) {
                        continue;
                    }
                    for pb in 0..a.hom_dim(y, z) {
                        if y == z && t.units[y] == Some(pb) {
                            continue;
                        }
                        if a.weight(x, y, pa) + a.weight(y, z, pb) > t.max_len {
                            continue;
                        }
                        let Some(prod) = a.compose(x, y, z, pa, pb) else {
                            continue;
                        };
                        for i in 0..=t.i_max {
                            let (s, e) = if i % 2 == 0 { (x, z) } else { (z, x) };
                            let Some(mut terms) = t.iota(s, e, i, &prod) else {
                                continue;
                            };
                            let pair = if i % 2 == 0 {
                                t.letter_word(x, y, i, pa).zip(t.letter_word(y, z, i, pb))
                            } else {
                                t.letter_word(z, y, i, pb).zip(t.letter_word(y, x, i, pa))
                            };
                            let Some((p, q)) = pair else {
                                continue;
                            };
                            poly_add(&mut terms, concat(&p, &q), &-&field.one());
                            push(s, e, terms);
                        }
                    }
                }
            }
        }
    }

    // units, where the unit is not itself a basis vector
    for x in 0..n {
        if t.units[x].is_some() {
            continue;
        }
        let j = a.unit(x);
        for i in 0..=t.i_max {
            if let Some(mut terms) = t.iota(x, x, i, &j) {
                poly_add(&mut terms, Vec::new(), &-&field.one());
                push(x, x, terms);
            }
        }
    }

    // the candidate antipode on letters
    for (id, l) in t.letters.iter().enumerate() {
        if l.index >= t.i_max {
            continue;
        }
        let eps = &t.letter_counit[id];
        let mut left = Poly::new();
        let mut right = Poly::new();
        let mut ok = true;
        for (p, q, c) in &t.letter_delta[id] {
            match (t.antipode_key(q), t.antipode_key(p)) {
                (Some(sq), Some(sp)) => {
                    poly_add(&mut left, concat(p, &sq), c);
                    poly_add(&mut right, concat(&sp, q), c);
                }
                _ => ok = false,
            }
        }
        if !ok {
            continue;
        }
        poly_add(&mut left, Vec::new(), &-eps);
        poly_add(&mut right, Vec::new(), &-eps);
        push(l.src, l.src, left);
        push(l.tgt, l.tgt, right);
    }
    out
}

fn concat(a: &[u32], b: &[u32]) -> WordKey {
    let mut w = Vec::with_capacity(a.len() + b.len());
    w.extend_from_slice(a);
    w.extend_from_slice(b);
    w
}

fn poly_add(p: &mut Poly, w: WordKey, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(e) => {
            let s = &*e + c;
            if s.is_zero() {
                p.remove(&w);
            } else {
                *e = s;
            }
        }
        None => {
            p.insert(w, c.clone());
        }
    }
}

/// The relation space of `hom(w, z)`.
fn close(t: &TruncatedFreeHopf, w: usize, z: usize) -> Presentation {
    let n = t.objects.len();
    let target = &t.homs[w * n + z];
    let mut classes = t.binomial.then(|| Classes::new(t.field, target.words.len()));
    let mut echelon = (!t.binomial).then(|| SparseEchelon::new(t.field));
    for r in &t.generators {
        let room = t.max_len - r.weight;
        let lefts = t.homs[w * n + r.src].upto(room);
        let rights = &t.homs[r.tgt * n + z];
        for u in lefts {
            let wu = t.weight_of(u);
            for v in rights.upto(room - wu) {
                let terms: Vec<(usize, Scalar)> = r
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let mut word = concat(u, m);
                        word.extend_from_slice(v);
                        (target.lookup[&word], c.clone())
                    })
                    .collect();
                if let Some(cl) = classes.as_mut() {
                    cl.relate(&terms);
                } else if let Some(e) = echelon.as_mut() {
                    let mut v = SparseVec::new();
                    for (k, c) in &terms {
                        add_entry(&mut v, *k, c);
                    }
                    e.insert(&v);
                }
            }
        }
    }
    match (classes, echelon) {
        (Some(c), _) => Presentation::Classes(c.finish()),
        (None, Some(e)) => Presentation::Echelon(e),
        (None, None) => unreachable!(),
    }
}

impl TruncatedFreeHopf {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn i_max(&self) -> usize {
        self.i_max
    }

    pub fn letters(&self) -> &[LetterInfo] {
        &self.letters
    }

    /// Whether the relations were resolved by union-find on classes.
    pub fn is_binomial(&self) -> bool {
        self.binomial
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn hom(&self, x: usize, y: usize) -> &HomWords {
        &self.homs[x * self.len() + y]
    }

    fn presentation(&self, x: usize, y: usize) -> &Presentation {
        &self.presentations[x * self.len() + y]
    }

    pub(crate) fn weight_of(&self, w: &[u32]) -> usize {
        w.iter().map(|&l| self.letters[l as usize].weight).sum()
    }

    /// The word for `ι^(i)` of basis vector `b`: empty for the unit,
    /// `None` if the letter is heavier than `L`.
    pub(crate) fn letter_word(&self, x: usize, y: usize, i: usize, b: usize) -> Option<WordKey> {
        let (u, v) = if i % 2 == 0 { (x, y) } else { (y, x) };
        if u == v && self.units[u] == Some(b) {
            return Some(Vec::new());
        }
        self.letter_lookup.get(&(x, y, i, b)).map(|&id| vec![id])
    }

    fn iota(&self, x: usize, y: usize, i: usize, v: &SparseVec) -> Option<Poly> {
        let mut p = Poly::new();
        for (b, c) in v {
            poly_add(&mut p, self.letter_word(x, y, i, *b)?, c);
        }
        Some(p)
    }

    fn antipode_key(&self, w: &[u32]) -> Option<WordKey> {
        w.iter()
            .rev()
            .map(|&id| {
                let l = &self.letters[id as usize];
                if l.index >= self.i_max {
                    return None;
                }
                self.letter_lookup.get(&(l.tgt, l.src, l.index + 1, l.base)).copied()
            })
            .collect()
    }

    pub fn word_count(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).words.len()
    }

    pub fn word(&self, x: usize, y: usize, idx: usize) -> &[u32] {
        &self.hom(x, y).words[idx]
    }

    pub fn word_weight(&self, x: usize, y: usize, idx: usize) -> usize {
        self.hom(x, y).weights[idx]
    }

    pub fn index_of_word(&self, x: usize, y: usize, w: &[u32]) -> Option<usize> {
        self.hom(x, y).lookup.get(w).copied()
    }

    /// Number of words of weight exactly `len`.
    pub fn word_bucket_dim(&self, x: usize, y: usize, len: usize) -> usize {
        if len > self.max_len {
            return 0;
        }
        let s = &self.hom(x, y).starts;
        s[len + 1] - s[len]
    }

    /// Dimension of the weight-`len` layer of the quotient: words of that
    /// weight that are not leading terms of relations.
    pub fn bucket_dim(&self, x: usize, y: usize, len: usize) -> usize {
        if len > self.max_len {
            return 0;
        }
        let s = &self.hom(x, y).starts;
        let p = self.presentation(x, y);
        (s[len]..s[len + 1]).filter(|&i| p.is_basis(i)).count()
    }

    /// Dimension of the relation space in the weight-`len` layer.
    pub fn relation_rank(&self, x: usize, y: usize, len: usize) -> usize {
        self.word_bucket_dim(x, y, len) - self.bucket_dim(x, y, len)
    }

    pub fn quotient_dim(&self, x: usize, y: usize) -> usize {
        (0..=self.max_len).map(|l| self.bucket_dim(x, y, l)).sum()
    }

    /// Word and quotient dimensions per object pair and weight. The
    /// quotient figures are truncated upper bounds.
    pub fn bucket_report(&self) -> Vec<BucketDims> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for len in 0..=self.max_len {
                    out.push(BucketDims {
                        x,
                        y,
                        len,
                        words: self.word_bucket_dim(x, y, len),
                        quotient: self.bucket_dim(x, y, len),
                    });
                }
            }
        }
        out
    }

    /// Indices of the words forming the quotient basis, in word order.
    pub fn basis(&self, x: usize, y: usize) -> Vec<usize> {
        let p = self.presentation(x, y);
        (0..self.word_count(x, y)).filter(|&i| p.is_basis(i)).collect()
    }

    /// The quotient map on a combination of words: the representative
    /// supported on basis words.
    pub fn normal_form(&self, x: usize, y: usize, v: &SparseVec) -> SparseVec {
        self.presentation(x, y).normal_form(v)
    }

    pub fn class_of_word(&self, x: usize, y: usize, idx: usize) -> SparseVec {
        self.normal_form(x, y, &SparseVec::from([(idx, self.field.one())]))
    }

    /// `q ∘ ι^(i)` on basis vector `b`.
    pub fn class_of_letter(&self, x: usize, y: usize, i: usize, b: usize) -> Result<SparseVec> {
        if i > self.i_max {
            return Err(Error::Invalid(format!("letter index {i} exceeds {}", self.i_max)));
        }
        let w = self
            .letter_word(x, y, i, b)
            .ok_or_else(|| Error::Invalid(format!("basis vector {b} is not a letter within the truncation")))?;
        let idx = self.index_of_word(x, y, &w).expect("letters are words");
        Ok(self.class_of_word(x, y, idx))
    }

    /// `Δ` of a word as pairs of word indices of the same hom.
    pub fn word_delta(&self, x: usize, y: usize, idx: usize) -> Vec<(usize, usize, Scalar)> {
        let mut terms: Vec<(WordKey, WordKey, Scalar)> = vec![(Vec::new(), Vec::new(), self.field.one())];
        for &id in self.word(x, y, idx) {
            let col = &self.letter_delta[id as usize];
            terms = terms
                .iter()
                .flat_map(|(p, q, c)| col.iter().map(move |(u, v, s)| (concat(p, u), concat(q, v), c * s)))
                .collect();
        }
        let h = self.hom(x, y);
        let mut acc: HashMap<(usize, usize), Scalar> = HashMap::new();
        for (p, q, c) in terms {
            let key = (h.lookup[&p], h.lookup[&q]);
            let e = acc.entry(key).or_insert_with(|| self.field.zero());
            *e = &*e + &c;
        }
        let mut out: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((p, q), c)| (p, q, c)).collect();
        out.sort_by_key(|(p, q, _)| (*p, *q));
        out
    }

    pub fn word_counit(&self, x: usize, y: usize, idx: usize) -> Scalar {
        self.word(x, y, idx)
            .iter()
            .fold(self.field.one(), |acc, &id| &acc * &self.letter_counit[id as usize])
    }

    /// The candidate antipode on a word: reversed, every letter index
    /// raised by one; `None` if a letter is already at `I_max`.
    pub fn antipode_word(&self, x: usize, y: usize, idx: usize) -> Option<usize> {
        let w = self.antipode_key(self.word(x, y, idx))?;
        self.index_of_word(y, x, &w)
    }

    /// Whether both legs of `Δ` of every word have the word's weight.
    pub fn preserves_length(&self) -> bool {
        let n = self.len();
        (0..n * n).into_par_iter().all(|k| {
            let (x, y) = (k / n, k % n);
            (0..self.word_count(x, y)).all(|i| {
                let w = self.word_weight(x, y, i);
                self.word_delta(x, y, i)
                    .iter()
                    .all(|(p, q, _)| self.word_weight(x, y, *p) == w && self.word_weight(x, y, *q) == w)
            })
        })
    }

    /// Checks that the relation space of every hom is a coideal
    /// (`(q ⊗ q) Δ r = 0` and `ε r = 0` on a spanning set) and that the
    /// candidate antipode satisfies both antipode equations on basis words
    /// `w` with `2 · weight(w) ≤ L` and all letter indices below `I_max`.
    pub fn validate(&self) -> Report {
        let n = self.len();
        let reports: Vec<Report> = (0..n * n)
            .into_par_iter()
            .map(|k| self.validate_hom(k / n, k % n))
            .collect();
        let mut r = Report::new();
        for part in reports {
            r.extend(part);
        }
        r
    }

    fn validate_hom(&self, x: usize, y: usize) -> Report {
        let mut report = Report::new();
        let field = self.field;
        let p = self.presentation(x, y);
        for i in 0..self.word_count(x, y) {
            if p.is_basis(i) {
                continue;
            }
            // e_i - q(e_i) spans the relation space as i runs over non-basis words
            let nf = self.class_of_word(x, y, i);
            let mut rel: Vec<(usize, Scalar)> = vec![(i, field.one())];
            rel.extend(nf.iter().map(|(k, c)| (*k, -c)));
            let mut acc: HashMap<(usize, usize), Scalar> = HashMap::new();
            let mut eps = field.zero();
            for (w, c) in &rel {
                eps = &eps + &(c * &self.word_counit(x, y, *w));
                for (l, r, d) in self.word_delta(x, y, *w) {
                    let coeff = c * &d;
                    let (ql, qr) = (self.class_of_word(x, y, l), self.class_of_word(x, y, r));
                    for (a, ca) in &ql {
                        for (b, cb) in &qr {
                            let e = acc.entry((*a, *b)).or_insert_with(|| field.zero());
                            *e = &*e + &(&coeff * &(ca * cb));
                        }
                    }
                }
            }
            if acc.values().any(|c| !c.is_zero()) {
                report.push("coideal", vec![x, y], Some(i));
            }
            if !eps.is_zero() {
                report.push("counit ideal", vec![x, y], Some(i));
            }
        }
        for i in self.basis(x, y) {
            if 2 * self.word_weight(x, y, i) > self.max_len {
                continue;
            }
            let w = self.word(x, y, i);
            if w.iter().any(|&id| self.letters[id as usize].index >= self.i_max) {
                continue;
            }
            let eps = self.word_counit(x, y, i);
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for (l, r, c) in self.word_delta(x, y, i) {
                let sr = self.antipode_key(self.word(x, y, r)).expect("indices below I_max");
                let sl = self.antipode_key(self.word(x, y, l)).expect("indices below I_max");
                let lw = concat(self.word(x, y, l), &sr);
                let rw = concat(&sl, self.word(x, y, r));
                add_entry(&mut left, self.index_of_word(x, x, &lw).expect("within L"), &c);
                add_entry(&mut right, self.index_of_word(y, y, &rw).expect("within L"), &c);
            }
            add_entry(&mut left, self.index_of_word(x, x, &[]).expect("empty word"), &-&eps);
            add_entry(&mut right, self.index_of_word(y, y, &[]).expect("empty word"), &-&eps);
            if !self.normal_form(x, x, &left).is_empty() {
                report.push("antipode left", vec![x, y], Some(i));
            }
            if !self.normal_form(y, y, &right).is_empty() {
                report.push("antipode right", vec![x, y], Some(i));
            }
        }
        report
    }

    /// `e3(x,y)` for an even letter, `S^2 e3(x,y)` for index 2; the pair
    /// names the hom of the input the basis vector lives in.
    pub fn render_word(&self, x: usize, y: usize, idx: usize) -> String {
        let w = self.word(x, y, idx);
        if w.is_empty() {
            return format!("1_{}", self.objects[x]);
        }
        w.iter()
            .map(|&id| {
                let l = &self.letters[id as usize];
                let (u, v) = l.base_hom();
                let base = format!("e{}({},{})", l.base, self.objects[u], self.objects[v]);
                if l.index == 0 {
                    base
                } else {
                    format!("S^{} {base}", l.index)
                }
            })
            .collect::<Vec<_>>()
            .join(" · ")
    }
}
