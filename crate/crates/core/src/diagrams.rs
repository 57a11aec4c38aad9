//! Index sets for the classification: words over `{1,2,3}`, row-2-coloured
//! composition diagrams (shapes), multisets of shapes of fixed degree, and
//! labelled configurations of nations and counties on `{1..n}`.
//!
//! The transversal `T_N` is the image of the multisets under book order; the
//! full labelled set `S_N` is every valid configuration, and `canonicalize`
//! maps each element of `S_N` to the unique transversal element in its
//! `Σ_N`-orbit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A word over `{1,2,3}`.
///
/// Ordered by word order: longer words come first, equal lengths compare
/// in dictionary order (`111 < 112 < 11 < 1 < ε`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| !(1..=3).contains(&l)) {
            return Err(Error::Parse(format!("letter {l} not in {{1,2,3}}")));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boxes in the corresponding shape.
    pub fn degree(&self) -> usize {
        self.0.len() + 1
    }

    pub fn shape(&self) -> Shape {
        shape_of_word(self)
    }

    /// All words of the given length, ascending in word order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        if len == 0 {
            itertools::Either::Left(std::iter::once(Word::empty()))
        } else {
            itertools::Either::Right(
                std::iter::repeat_n([1u8, 2, 3], len)
                    .multi_cartesian_product()
                    .map(Word),
            )
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        word_order(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Word::empty());
        }
        let letters = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

/// Longer words first; ties broken by dictionary order on letters.
pub fn word_order(w1: &Word, w2: &Word) -> Ordering {
    w2.len().cmp(&w1.len()).then_with(|| w1.0.cmp(&w2.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    pub len: usize,
    pub shaded: bool,
}

/// A row-2-coloured composition diagram: rows of boxes, the first row unshaded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ShapeRepr", into = "ShapeRepr")]
pub struct Shape {
    rows: Vec<Row>,
}

#[derive(Serialize, Deserialize)]
struct ShapeRepr {
    rows: Vec<Row>,
}

impl TryFrom<ShapeRepr> for Shape {
    type Error = Error;

    fn try_from(r: ShapeRepr) -> Result<Self> {
        Shape::new(r.rows)
    }
}

impl From<Shape> for ShapeRepr {
    fn from(s: Shape) -> Self {
        ShapeRepr { rows: s.rows }
    }
}

impl Shape {
    pub fn new(rows: Vec<Row>) -> Result<Self> {
        match rows.first() {
            None => return Err(Error::Parse("shape needs at least one row".into())),
            Some(r) if r.shaded => {
                return Err(Error::Parse("first row of a shape must be unshaded".into()))
            }
            _ => {}
        }
        if rows.iter().any(|r| r.len == 0) {
            return Err(Error::Parse("shape rows must be nonempty".into()));
        }
        Ok(Shape { rows })
    }

    pub fn one_box() -> Self {
        Shape {
            rows: vec![Row { len: 1, shaded: false }],
        }
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn boxes(&self) -> usize {
        self.rows.iter().map(|r| r.len).sum()
    }

    pub fn word(&self) -> Word {
        word_of_shape(self)
    }
}

pub fn shape_of_word(w: &Word) -> Shape {
    let mut rows = vec![Row { len: 1, shaded: false }];
    for &l in w.letters() {
        match l {
            1 => rows.last_mut().expect("nonempty").len += 1,
            2 => rows.push(Row { len: 1, shaded: false }),
            _ => rows.push(Row { len: 1, shaded: true }),
        }
    }
    Shape { rows }
}

pub fn word_of_shape(s: &Shape) -> Word {
    let mut letters = Vec::with_capacity(s.boxes());
    for (i, row) in s.rows.iter().enumerate() {
        if i > 0 {
            letters.push(if row.shaded { 3 } else { 2 });
        }
        letters.extend(std::iter::repeat_n(1, row.len - 1));
    }
    Word(letters)
}

/// A multiset of shapes, keyed by their words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramMultiset {
    entries: BTreeMap<Word, usize>,
}

impl DiagramMultiset {
    pub fn new(entries: BTreeMap<Word, usize>) -> Self {
        let entries = entries.into_iter().filter(|(_, m)| *m > 0).collect();
        DiagramMultiset { entries }
    }

    pub fn entries(&self) -> &BTreeMap<Word, usize> {
        &self.entries
    }

    pub fn degree(&self) -> usize {
        self.entries.iter().map(|(w, m)| w.degree() * m).sum()
    }

    /// Words in word order, repeats adjacent.
    pub fn words(&self) -> Vec<Word> {
        self.entries
            .iter()
            .flat_map(|(w, &m)| std::iter::repeat_n(w.clone(), m))
            .collect()
    }
}

/// All multisets of total degree `n`, ordered by their word sequences
/// (word order, compared element by element).
pub fn enumerate_multisets(n: usize) -> Vec<DiagramMultiset> {
    assert!(n >= 1, "degree must be positive");
    let words: Vec<Word> = (0..n).rev().flat_map(Word::all_of_length).collect();

    fn go(
        words: &[Word],
        start: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<DiagramMultiset>,
    ) {
        if remaining == 0 {
            let mut entries = BTreeMap::new();
            for &i in chosen.iter() {
                *entries.entry(words[i].clone()).or_insert(0) += 1;
            }
            out.push(DiagramMultiset { entries });
            return;
        }
        for i in start..words.len() {
            if words[i].degree() > remaining {
                continue;
            }
            chosen.push(i);
            go(words, i, remaining - words[i].degree(), chosen, out);
            chosen.pop();
        }
    }

    let mut out = Vec::new();
    go(&words, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Euler transform of `a_m = 3^(m-1)` at `n`.
pub fn euler_count(n: usize) -> u128 {
    assert!(n >= 1, "degree must be positive");
    let a = |m: usize| 3u128.pow(m as u32 - 1);
    // c_k = sum over d | k of d * a_d
    let c: Vec<u128> = (0..=n)
        .map(|k| {
            if k == 0 {
                0
            } else {
                (1..=k).filter(|d| k % d == 0).map(|d| d as u128 * a(d)).sum()
            }
        })
        .collect();
    let mut b = vec![0u128; n + 1];
    b[0] = 1;
    for m in 1..=n {
        let s: u128 = (1..=m).map(|k| c[k] * b[m - k]).sum();
        b[m] = s / m as u128;
    }
    b[n]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    First,
    Second,
}

impl Part {
    pub fn other(self) -> Part {
        match self {
            Part::First => Part::Second,
            Part::Second => Part::First,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct County {
    pub vertices: Vec<usize>,
    pub part: Part,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Nation {
    /// Counties in their order `ρ`.
    pub counties: Vec<County>,
}

impl Nation {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.counties.iter().flat_map(|c| c.vertices.iter().copied())
    }

    pub fn size(&self) -> usize {
        self.counties.iter().map(|c| c.vertices.len()).sum()
    }

    pub fn min_vertex(&self) -> usize {
        self.vertices().min().unwrap_or(0)
    }

    /// Shape read off with the `ρ`-first county's part as the unshaded colour.
    pub fn shape(&self) -> Shape {
        let first = self.counties[0].part;
        Shape {
            rows: self
                .counties
                .iter()
                .map(|c| Row {
                    len: c.vertices.len(),
                    shaded: c.part != first,
                })
                .collect(),
        }
    }
}

/// A labelled classification datum `(p, q, ρ, s)` on `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationRepr", into = "ConfigurationRepr")]
pub struct Configuration {
    n: usize,
    nations: Vec<Nation>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationRepr {
    n: usize,
    nations: Vec<Nation>,
}

impl TryFrom<ConfigurationRepr> for Configuration {
    type Error = Error;

    fn try_from(r: ConfigurationRepr) -> Result<Self> {
        Configuration::new(r.n, r.nations)
    }
}

impl From<Configuration> for ConfigurationRepr {
    fn from(c: Configuration) -> Self {
        ConfigurationRepr {
            n: c.n,
            nations: c.nations,
        }
    }
}

impl Configuration {
    /// Validates and stores the datum; county vertex lists are sorted.
    pub fn new(n: usize, mut nations: Vec<Nation>) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidConfiguration(m));
        if n == 0 {
            return invalid("n must be positive".into());
        }
        let mut seen = vec![false; n];
        for nation in &mut nations {
            if nation.counties.is_empty() {
                return invalid("empty nation".into());
            }
            for county in &mut nation.counties {
                if county.vertices.is_empty() {
                    return invalid("empty county".into());
                }
                county.vertices.sort_unstable();
                for &v in &county.vertices {
                    if v == 0 || v > n {
                        return invalid(format!("vertex {v} outside 1..{n}"));
                    }
                    if std::mem::replace(&mut seen[v - 1], true) {
                        return invalid(format!("vertex {v} appears twice"));
                    }
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return invalid(format!("vertex {} not covered", v + 1));
        }
        Ok(Configuration { n, nations })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nations(&self) -> &[Nation] {
        &self.nations
    }

    /// Nation index and county index (within the nation) of each vertex,
    /// indexed by `v - 1`.
    pub fn locate(&self) -> Vec<(usize, usize)> {
        let mut loc = vec![(0, 0); self.n];
        for (i, nation) in self.nations.iter().enumerate() {
            for (k, county) in nation.counties.iter().enumerate() {
                for &v in &county.vertices {
                    loc[v - 1] = (i, k);
                }
            }
        }
        loc
    }

    /// Representative of this element of `S_N`: nations sorted by least
    /// vertex and, in each nation, the part of the `ρ`-first county named
    /// `First`.
    pub fn normalized(&self) -> Configuration {
        let mut nations: Vec<Nation> = self
            .nations
            .iter()
            .map(|nation| {
                let swap = nation.counties[0].part == Part::Second;
                Nation {
                    counties: nation
                        .counties
                        .iter()
                        .map(|c| County {
                            vertices: c.vertices.clone(),
                            part: if swap { c.part.other() } else { c.part },
                        })
                        .collect(),
                }
            })
            .collect();
        nations.sort_by_key(|n| n.min_vertex());
        Configuration { n: self.n, nations }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalized()
    }

    /// The multiset of nation shapes.
    pub fn multiset(&self) -> DiagramMultiset {
        let mut entries = BTreeMap::new();
        for nation in &self.nations {
            *entries.entry(nation.shape().word()).or_insert(0) += 1;
        }
        DiagramMultiset { entries }
    }
}

/// Shapes in word order, vertices numbered along rows, row by row, shape by
/// shape.
pub fn book_order(f: &DiagramMultiset) -> Configuration {
    let mut next = 1;
    let mut nations = Vec::new();
    for word in f.words() {
        let shape = word.shape();
        let counties = shape
            .rows()
            .iter()
            .map(|row| {
                let vertices = (next..next + row.len).collect();
                next += row.len;
                County {
                    vertices,
                    part: if row.shaded { Part::Second } else { Part::First },
                }
            })
            .collect();
        nations.push(Nation { counties });
    }
    Configuration {
        n: next - 1,
        nations,
    }
}

pub fn enumerate_transversal(n: usize) -> Vec<Configuration> {
    enumerate_multisets(n).iter().map(book_order).collect()
}

/// Relabels every vertex `v` as `ω(v)`.
pub fn configuration_perm(c: &Configuration, omega: &Permutation) -> Configuration {
    assert_eq!(c.n, omega.n(), "permutation size mismatch");
    let nations = c
        .nations
        .iter()
        .map(|nation| Nation {
            counties: nation
                .counties
                .iter()
                .map(|county| {
                    let mut vertices: Vec<usize> =
                        county.vertices.iter().map(|&v| omega.apply(v)).collect();
                    vertices.sort_unstable();
                    County {
                        vertices,
                        part: county.part,
                    }
                })
                .collect(),
        })
        .collect();
    Configuration { n: c.n, nations }
}

/// Reverses the county order in every nation.
pub fn flip_configuration(c: &Configuration) -> Configuration {
    let nations = c
        .nations
        .iter()
        .map(|nation| Nation {
            counties: nation.counties.iter().rev().cloned().collect(),
        })
        .collect();
    Configuration { n: c.n, nations }
}

/// The transversal element in the `Σ_N`-orbit of `c`, with a witness `ω`
/// such that `configuration_perm(c, ω)` is that element (up to part naming
/// and nation order, which `normalized` fixes).
pub fn canonicalize(c: &Configuration) -> (Configuration, Permutation) {
    let normal = c.normalized();
    let mut order: Vec<(Word, usize, &Nation)> = normal
        .nations
        .iter()
        .map(|nation| (nation.shape().word(), nation.min_vertex(), nation))
        .collect();
    order.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut images = vec![0; c.n];
    let mut next = 1;
    let mut nations = Vec::with_capacity(order.len());
    for (_, _, nation) in order {
        let counties = nation
            .counties
            .iter()
            .map(|county| {
                let vertices: Vec<usize> = county
                    .vertices
                    .iter()
                    .map(|&v| {
                        images[v - 1] = next;
                        next += 1;
                        next - 1
                    })
                    .collect();
                County {
                    vertices,
                    part: county.part,
                }
            })
            .collect();
        nations.push(Nation { counties });
    }
    let omega = Permutation::from_images(images).expect("book order labels every vertex once");
    (Configuration { n: c.n, nations }, omega)
}

/// Set partitions of `items` (restricted growth order).
pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn go(items: &[usize], i: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == items.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(items[i]);
            go(items, i + 1, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![items[i]]);
        go(items, i + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(items, 0, &mut Vec::new(), &mut out);
    out
}

/// Every county structure on a fixed vertex set: counties, their order and
/// a 2-colouring with the first county coloured `First`.
fn nation_structures(vertices: &[usize]) -> Vec<Nation> {
    let mut out = Vec::new();
    for q in set_partitions(vertices) {
        let k = q.len();
        for rho in (0..k).permutations(k) {
            for mask in 0..(1usize << (k - 1)) {
                let counties = rho
                    .iter()
                    .enumerate()
                    .map(|(pos, &idx)| County {
                        vertices: q[idx].clone(),
                        part: if pos > 0 && mask >> (pos - 1) & 1 == 1 {
                            Part::Second
                        } else {
                            Part::First
                        },
                    })
                    .collect();
                out.push(Nation { counties });
            }
        }
    }
    out
}

/// The full labelled set `S_N`, each element in normalized form.
/// A single-nation configuration from its edge labels over `0 f a`, listed
/// in edge order `12, 13, 23, 14, 24, 34, …`. Counties are the `0` classes
/// ordered by least vertex; `a` edges join counties of different colours.
pub fn one_nation_from_edge_word(n: usize, word: &str) -> Result<Configuration> {
    let bad = |m: String| Err(Error::InvalidConfiguration(m));
    let labels: Vec<char> = word.chars().collect();
    if labels.len() != n * (n - 1) / 2 || labels.iter().any(|c| !"0fa".contains(*c)) {
        return bad(format!("need {} labels over 0 f a for n = {n}: {word:?}", n * (n - 1) / 2));
    }
    let label = |v: usize, w: usize| {
        let (i, j) = (v.min(w), v.max(w));
        labels[(j - 1) * (j - 2) / 2 + (i - 1)]
    };
    let mut counties: Vec<Vec<usize>> = Vec::new();
    for v in 1..=n {
        match counties.iter_mut().find(|c| label(c[0], v) == '0') {
            Some(c) => c.push(v),
            None => counties.push(vec![v]),
        }
    }
    let parts: Vec<Part> = counties
        .iter()
        .map(|c| if c[0] != 1 && label(1, c[0]) == 'a' { Part::Second } else { Part::First })
        .collect();
    for (x, cx) in counties.iter().enumerate() {
        for (y, cy) in counties.iter().enumerate() {
            for &v in cx {
                for &w in cy {
                    if v == w {
                        continue;
                    }
                    let expected = if x == y {
                        '0'
                    } else if parts[x] == parts[y] {
                        'f'
                    } else {
                        'a'
                    };
                    if label(v, w) != expected {
                        return bad(format!("edge {v},{w} of {word:?} is inconsistent"));
                    }
                }
            }
        }
    }
    let counties = counties
        .into_iter()
        .zip(parts)
        .map(|(vertices, part)| County { vertices, part })
        .collect();
    Configuration::new(n, vec![Nation { counties }])
}

pub fn enumerate_labelled(n: usize) -> Vec<Configuration> {
    let vertices: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    for p in set_partitions(&vertices) {
        let per_nation: Vec<Vec<Nation>> = p.iter().map(|nat| nation_structures(nat)).collect();
        for choice in per_nation.iter().multi_cartesian_product() {
            let nations: Vec<Nation> = choice.into_iter().cloned().collect();
            out.push(Configuration { n, nations }.normalized());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn row(len: usize, shaded: bool) -> Row {
        Row { len, shaded }
    }

    #[test]
    fn j_map_examples() {
        assert_eq!(shape_of_word(&w("")).rows(), &[row(1, false)]);
        assert_eq!(shape_of_word(&w("1")).rows(), &[row(2, false)]);
        assert_eq!(
            shape_of_word(&w("121311")).rows(),
            &[row(2, false), row(2, false), row(3, true)]
        );
        assert_eq!(word_of_shape(&Shape::one_box()), Word::empty());
        let s = Shape::new(vec![row(2, false), row(2, false), row(3, true)]).unwrap();
        assert_eq!(word_of_shape(&s), w("121311"));
        assert_eq!(word_of_shape(&Shape::new(vec![row(3, false)]).unwrap()), w("11"));
    }

    #[test]
    fn j_map_is_bijective_up_to_length_8() {
        for len in 0..=8 {
            for word in Word::all_of_length(len) {
                assert_eq!(word.shape().word(), word);
                assert_eq!(word.shape().boxes(), len + 1);
            }
        }
    }

    #[test]
    fn word_order_examples() {
        assert_eq!(word_order(&w("111"), &w("11")), Ordering::Less);
        assert_eq!(word_order(&w("111"), &w("112")), Ordering::Less);
        assert_eq!(word_order(&w("12"), &w("12")), Ordering::Equal);
        assert_eq!(word_order(&w("1"), &w("")), Ordering::Less);
    }

    #[test]
    fn words_of_length_are_sorted() {
        let ws: Vec<Word> = Word::all_of_length(3).collect();
        assert_eq!(ws.len(), 27);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(Word::all_of_length(0).collect::<Vec<_>>(), vec![Word::empty()]);
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::new(vec![]).is_err());
        assert!(Shape::new(vec![row(1, true)]).is_err());
        assert!(Shape::new(vec![row(0, false)]).is_err());
        let json = r#"{"rows":[{"len":2,"shaded":false},{"len":1,"shaded":true}]}"#;
        let s: Shape = serde_json::from_str(json).unwrap();
        assert_eq!(s.word(), w("13"));
        assert_eq!(serde_json::to_string(&s).unwrap(), json);
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(enumerate_multisets(1).len(), 1);
        assert_eq!(enumerate_multisets(2).len(), 4);
        assert_eq!(enumerate_multisets(5).len(), 154);
        for n in 1..=7 {
            let ms = enumerate_multisets(n);
            assert_eq!(ms.len() as u128, euler_count(n), "n = {n}");
            assert!(ms.iter().all(|m| m.degree() == n));
            assert!(ms.windows(2).all(|p| p[0].words() < p[1].words()));
        }
        assert_eq!(euler_count(1), 1);
        assert_eq!(euler_count(3), 13);
        assert_eq!(euler_count(5), 154);
    }

    #[test]
    fn book_order_examples() {
        let two_boxes = DiagramMultiset::new(BTreeMap::from([(Word::empty(), 2)]));
        let c = book_order(&two_boxes);
        assert_eq!(c.nations().len(), 2);
        assert_eq!(c.nations()[0].counties[0].vertices, vec![1]);
        assert_eq!(c.nations()[1].counties[0].vertices, vec![2]);

        let f = DiagramMultiset::new(BTreeMap::from([(w("1321"), 1), (w("131"), 1), (Word::empty(), 2)]));
        let c = book_order(&f);
        assert_eq!(c.n(), 11);
        let sizes: Vec<usize> = c.nations().iter().map(|n| n.size()).collect();
        assert_eq!(sizes, vec![5, 4, 1, 1]);
        let reading: Vec<usize> = c.nations().iter().flat_map(|n| n.vertices()).collect();
        assert_eq!(reading, (1..=11).collect::<Vec<_>>());
        // 1321: rows (2,u), (1,s), (2,u)
        assert_eq!(c.nations()[0].counties[1].part, Part::Second);
        assert_eq!(c.nations()[0].counties[2].vertices, vec![4, 5]);

        let f = DiagramMultiset::new(BTreeMap::from([(w("3"), 1)]));
        let c = book_order(&f);
        assert_eq!(c.nations().len(), 1);
        let counties = &c.nations()[0].counties;
        assert_eq!(counties[0], County { vertices: vec![1], part: Part::First });
        assert_eq!(counties[1], County { vertices: vec![2], part: Part::Second });
    }

    #[test]
    fn transversal_counts_and_distinctness() {
        for (n, expected) in [(1, 1), (2, 4), (3, 13), (4, 46)] {
            let t = enumerate_transversal(n);
            assert_eq!(t.len(), expected);
            let distinct: std::collections::BTreeSet<_> = t.iter().collect();
            assert_eq!(distinct.len(), expected);
        }
    }

    #[test]
    fn perm_and_flip_examples() {
        let c = Configuration::new(
            2,
            vec![Nation {
                counties: vec![
                    County { vertices: vec![1], part: Part::First },
                    County { vertices: vec![2], part: Part::First },
                ],
            }],
        )
        .unwrap();
        assert_eq!(configuration_perm(&c, &Permutation::identity(2)), c);
        let swapped = configuration_perm(&c, &Permutation::transposition(2, 1, 2));
        assert_eq!(swapped.nations()[0].counties[0].vertices, vec![2]);
        assert_eq!(swapped.nations()[0].counties[1].vertices, vec![1]);

        let c3 = Configuration::new(
            3,
            vec![Nation {
                counties: vec![
                    County { vertices: vec![1, 2], part: Part::First },
                    County { vertices: vec![3], part: Part::First },
                ],
            }],
        )
        .unwrap();
        let f = flip_configuration(&c3);
        assert_eq!(f.nations()[0].counties[0].vertices, vec![3]);
        assert_eq!(f.nations()[0].counties[1].vertices, vec![1, 2]);
        assert_eq!(flip_configuration(&f), c3);
    }

    #[test]
    fn s2_single_nation_orbits() {
        let s2 = enumerate_labelled(2);
        assert_eq!(s2.len(), 6);
        let one_nation_two_counties: Vec<_> = s2
            .iter()
            .filter(|c| c.nations().len() == 1 && c.nations()[0].counties.len() == 2)
            .collect();
        assert_eq!(one_nation_two_counties.len(), 4);
        let mut classes = std::collections::BTreeSet::new();
        for c in &one_nation_two_counties {
            let orbit: std::collections::BTreeSet<Configuration> = Permutation::all(2)
                .map(|w| configuration_perm(c, &w).normalized())
                .collect();
            classes.insert(orbit);
        }
        assert_eq!(classes.len(), 2);
        let all_classes: std::collections::BTreeSet<_> =
            s2.iter().map(|c| canonicalize(c).0).collect();
        assert_eq!(all_classes.len(), 4);
    }

    #[test]
    fn canonicalize_examples() {
        for c in enumerate_transversal(4) {
            let (canon, omega) = canonicalize(&c);
            assert_eq!(canon, c);
            assert!(omega.is_identity());
        }
        let c = Configuration::new(
            2,
            vec![Nation {
                counties: vec![
                    County { vertices: vec![2], part: Part::First },
                    County { vertices: vec![1], part: Part::First },
                ],
            }],
        )
        .unwrap();
        let (canon, omega) = canonicalize(&c);
        assert!(enumerate_transversal(2).contains(&canon));
        assert_eq!(canon.nations()[0].counties[0].vertices, vec![1]);
        assert_eq!(omega, Permutation::transposition(2, 1, 2));
        assert_eq!(configuration_perm(&c, &omega), canon);
    }

    #[test]
    fn configuration_json_round_trip() {
        let c = enumerate_transversal(4).swap_remove(7);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"n":4,"nations":[{"counties":[{"vertices":"#));
        let back: Configuration = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = r#"{"n":2,"nations":[{"counties":[{"vertices":[1],"part":"first"}]}]}"#;
        assert!(serde_json::from_str::<Configuration>(bad).is_err());
    }

    #[test]
    fn edge_words() {
        let c = one_nation_from_edge_word(3, "afa").unwrap();
        let parts: Vec<Part> = c.nations()[0].counties.iter().map(|q| q.part).collect();
        assert_eq!(parts, vec![Part::First, Part::Second, Part::First]);
        let c = one_nation_from_edge_word(4, "0aaaa0").unwrap();
        assert_eq!(c.nations()[0].counties.len(), 2);
        assert!(one_nation_from_edge_word(3, "0a0").is_err());
        assert!(one_nation_from_edge_word(3, "aaa").is_err());
        assert!(one_nation_from_edge_word(3, "ff").is_err());
    }
}
