//! Charge-conserving operators.
//!
//! A level-(2,2) operator on an `n`-letter alphabet is stored in alpha-form:
//! one scalar per vertex `i` (the `(ii, ii)` entry) and one 2×2 block per
//! edge `i < j`, with rows and columns ordered `(ij), (ji)`. Higher levels
//! are handled by [`SparseOp`], keyed by pairs of words.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::{Coeff, Scalar, ScalarStr};

/// The block `[[a, b], [c, d]]` on edge `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeBlock<T = Scalar> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Coeff> EdgeBlock<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        EdgeBlock { a, b, c, d }
    }

    /// `x · I`.
    pub fn scalar(x: T) -> Self {
        let z = x.zero_like();
        EdgeBlock::new(x.clone(), z.clone(), z, x)
    }

    /// `μ · [[0,1],[1,0]]`.
    pub fn slash(mu: T) -> Self {
        let z = mu.zero_like();
        EdgeBlock::new(z.clone(), mu.clone(), mu, z)
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    /// The same block seen from `(j, i)`: `[[d, c], [b, a]]`.
    pub fn reversed(&self) -> Self {
        EdgeBlock::new(self.d.clone(), self.c.clone(), self.b.clone(), self.a.clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> EdgeBlock<U> {
        EdgeBlock {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }
}

/// Position of edge `(i, j)`, `i < j`, in the order 12, 13, 23, 14, 24, 34, ...
pub fn edge_index(i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j);
    (j - 1) * (j - 2) / 2 + (i - 1)
}

/// Edges `(i, j)` in alpha-form order.
pub fn edge_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (2..=n).flat_map(|j| (1..j).map(move |i| (i, j)))
}

/// A charge-conserving operator at level (2,2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatchMatrix2<T = Scalar> {
    vertex: Vec<T>,
    edges: Vec<EdgeBlock<T>>,
}

impl<T: Coeff> MatchMatrix2<T> {
    /// `edges` must be in alpha-form order (see [`edge_pairs`]).
    pub fn new(vertex: Vec<T>, edges: Vec<EdgeBlock<T>>) -> Result<Self> {
        let n = vertex.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("n must be positive".into()));
        }
        if edges.len() != n * (n - 1) / 2 {
            return Err(Error::InvalidMatrix(format!(
                "expected {} edge blocks for n = {n}, got {}",
                n * (n - 1) / 2,
                edges.len()
            )));
        }
        Ok(MatchMatrix2 { vertex, edges })
    }

    pub fn from_fn(
        n: usize,
        mut vertex: impl FnMut(usize) -> T,
        mut edge: impl FnMut(usize, usize) -> EdgeBlock<T>,
    ) -> Self {
        MatchMatrix2 {
            vertex: (1..=n).map(&mut vertex).collect(),
            edges: edge_pairs(n).map(|(i, j)| edge(i, j)).collect(),
        }
    }

    /// Every vertex `x`, every edge `x · I`.
    pub fn scalar_identity(n: usize, x: T) -> Self {
        Self::from_fn(n, |_| x.clone(), |_, _| EdgeBlock::scalar(x.clone()))
    }

    pub fn n(&self) -> usize {
        self.vertex.len()
    }

    pub fn vertex(&self, i: usize) -> &T {
        &self.vertex[i - 1]
    }

    pub fn vertices(&self) -> &[T] {
        &self.vertex
    }

    /// Block on `(i, j)` with `i < j`.
    pub fn edge(&self, i: usize, j: usize) -> &EdgeBlock<T> {
        assert!(i < j && j <= self.n(), "edge ({i},{j}) out of range");
        &self.edges[edge_index(i, j)]
    }

    /// Block seen from `(i, j)` in either orientation, using
    /// `a_ji = d_ij`, `b_ji = c_ij`.
    pub fn edge_oriented(&self, i: usize, j: usize) -> EdgeBlock<T> {
        if i < j {
            self.edge(i, j).clone()
        } else {
            self.edge(j, i).reversed()
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), &EdgeBlock<T>)> {
        edge_pairs(self.n()).zip(self.edges.iter())
    }

    pub fn set_vertex(&mut self, i: usize, x: T) {
        self.vertex[i - 1] = x;
    }

    pub fn set_edge(&mut self, i: usize, j: usize, block: EdgeBlock<T>) {
        assert!(i < j && j <= self.n(), "edge ({i},{j}) out of range");
        self.edges[edge_index(i, j)] = block;
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> MatchMatrix2<U> {
        MatchMatrix2 {
            vertex: self.vertex.iter().map(&f).collect(),
            edges: self.edges.iter().map(|e| e.map(&f)).collect(),
        }
    }
}

/// Words are sequences of letters `1..=n`.
pub type Letters = Vec<u8>;

/// A sparse operator at level `m` on an `n`-letter alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOp<T = Scalar> {
    level: usize,
    alphabet: usize,
    entries: BTreeMap<(Letters, Letters), T>,
}

impl<T: Coeff> SparseOp<T> {
    pub fn new(level: usize, alphabet: usize) -> Self {
        SparseOp {
            level,
            alphabet,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(level: usize, alphabet: usize, one: T) -> Self {
        let mut op = Self::new(level, alphabet);
        for w in all_words(level, alphabet) {
            op.entries.insert((w.clone(), w), one.clone());
        }
        op
    }

    /// The operator sending the basis word `x_1..x_m` to `ω(x_1)..ω(x_m)`.
    pub fn letter_permutation(level: usize, omega: &Permutation, one: T) -> Self {
        let mut op = Self::new(level, omega.n());
        for w in all_words(level, omega.n()) {
            let image: Letters = w.iter().map(|&x| omega.apply(x as usize) as u8).collect();
            op.entries.insert((image, w), one.clone());
        }
        op
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn entries(&self) -> &BTreeMap<(Letters, Letters), T> {
        &self.entries
    }

    pub fn get(&self, row: &[u8], col: &[u8]) -> Option<&T> {
        self.entries.get(&(row.to_vec(), col.to_vec()))
    }

    /// Stores `x` at `(row, col)`, dropping the entry when `x` is zero.
    pub fn insert(&mut self, row: Letters, col: Letters, x: T) {
        debug_assert!(row.len() == self.level && col.len() == self.level);
        if x.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every stored entry has its column word a rearrangement of its row word.
    pub fn is_charge_conserving(&self) -> bool {
        self.entries.keys().all(|(r, c)| {
            let mut r = r.clone();
            let mut c = c.clone();
            r.sort_unstable();
            c.sort_unstable();
            r == c
        })
    }

    /// `(A ⊗ B)_{iI, jJ} = A_{ij} B_{IJ}`.
    pub fn kron(&self, other: &SparseOp<T>) -> SparseOp<T> {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut out = SparseOp::new(self.level + other.level, self.alphabet);
        for ((r1, c1), x) in &self.entries {
            for ((r2, c2), y) in &other.entries {
                let row = [r1.as_slice(), r2.as_slice()].concat();
                let col = [c1.as_slice(), c2.as_slice()].concat();
                out.insert(row, col, x.clone() * y.clone());
            }
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &SparseOp<T>) -> SparseOp<T> {
        assert_eq!(self.level, other.level, "level mismatch");
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut by_row: BTreeMap<&Letters, Vec<(&Letters, &T)>> = BTreeMap::new();
        for ((r, c), x) in &other.entries {
            by_row.entry(r).or_default().push((c, x));
        }
        let mut acc: BTreeMap<(Letters, Letters), T> = BTreeMap::new();
        for ((r, k), x) in &self.entries {
            let Some(row) = by_row.get(k) else { continue };
            for (c, y) in row {
                let term = x.clone() * (*y).clone();
                match acc.entry((r.clone(), (*c).clone())) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(term);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().clone() + term;
                        *e.get_mut() = s;
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SparseOp {
            level: self.level,
            alphabet: self.alphabet,
            entries: acc,
        }
    }

    pub fn sub(&self, other: &SparseOp<T>) -> SparseOp<T> {
        assert_eq!(self.level, other.level, "level mismatch");
        let mut out = self.clone();
        for (k, y) in &other.entries {
            let v = match out.entries.get(k) {
                Some(x) => x.clone() - y.clone(),
                None => -y.clone(),
            };
            out.insert(k.0.clone(), k.1.clone(), v);
        }
        out
    }
}

fn all_words(level: usize, alphabet: usize) -> Vec<Letters> {
    let mut words = vec![Vec::new()];
    for _ in 0..level {
        words = words
            .into_iter()
            .flat_map(|w| {
                (1..=alphabet as u8).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    words
}

pub fn to_sparse<T: Coeff>(m: &MatchMatrix2<T>) -> SparseOp<T> {
    let mut op = SparseOp::new(2, m.n());
    for i in 1..=m.n() {
        let l = i as u8;
        op.insert(vec![l, l], vec![l, l], m.vertex(i).clone());
    }
    for ((i, j), e) in m.edges() {
        let (i, j) = (i as u8, j as u8);
        op.insert(vec![i, j], vec![i, j], e.a.clone());
        op.insert(vec![i, j], vec![j, i], e.b.clone());
        op.insert(vec![j, i], vec![i, j], e.c.clone());
        op.insert(vec![j, i], vec![j, i], e.d.clone());
    }
    op
}

/// Inverse of [`to_sparse`]; `zero` fills absent entries.
pub fn from_sparse<T: Coeff>(op: &SparseOp<T>, zero: T) -> Result<MatchMatrix2<T>> {
    if op.level() != 2 {
        return Err(Error::InvalidMatrix(format!("level {} is not 2", op.level())));
    }
    if !op.is_charge_conserving() {
        return Err(Error::InvalidMatrix("operator is not charge-conserving".into()));
    }
    let get = |r: [usize; 2], c: [usize; 2]| {
        op.get(&[r[0] as u8, r[1] as u8], &[c[0] as u8, c[1] as u8])
            .cloned()
            .unwrap_or_else(|| zero.clone())
    };
    Ok(MatchMatrix2::from_fn(
        op.alphabet(),
        |i| get([i, i], [i, i]),
        |i, j| EdgeBlock::new(get([i, j], [i, j]), get([i, j], [j, i]), get([j, i], [i, j]), get([j, i], [j, i])),
    ))
}

/// Restriction to the letters `subset` (strictly increasing), relabelled `1..=|subset|`.
pub fn restrict<T: Coeff>(m: &MatchMatrix2<T>, subset: &[usize]) -> MatchMatrix2<T> {
    assert!(!subset.is_empty(), "empty subset");
    assert!(subset.windows(2).all(|p| p[0] < p[1]), "subset must be increasing");
    assert!(*subset.last().unwrap() <= m.n(), "subset out of range");
    MatchMatrix2::from_fn(
        subset.len(),
        |k| m.vertex(subset[k - 1]).clone(),
        |k, l| m.edge(subset[k - 1], subset[l - 1]).clone(),
    )
}

/// Transport along `ω`: the data on vertex `i` moves to `ω(i)`, the block on
/// `(i, j)` to `(ω(i), ω(j))`, reversed when the pair's order flips.
pub fn act_perm<T: Coeff>(m: &MatchMatrix2<T>, omega: &Permutation) -> MatchMatrix2<T> {
    assert_eq!(m.n(), omega.n(), "permutation size mismatch");
    let inv = omega.inverse();
    MatchMatrix2::from_fn(
        m.n(),
        |i| m.vertex(inv.apply(i)).clone(),
        |i, j| m.edge_oriented(inv.apply(i), inv.apply(j)),
    )
}

/// Swaps diagonal and skew-diagonal on every block; vertices unchanged.
pub fn act_flip<T: Coeff>(m: &MatchMatrix2<T>) -> MatchMatrix2<T> {
    MatchMatrix2 {
        vertex: m.vertex.clone(),
        edges: m.edges.iter().map(EdgeBlock::reversed).collect(),
    }
}

/// Diagonal gauge fixing per edge: lower-1 form `(a, bc, 1, d)` when
/// `c ≠ 0`, else upper-1 form `(a, 1, 0, d)` when `b ≠ 0`.
pub fn x_normalize<T: Coeff>(m: &MatchMatrix2<T>) -> MatchMatrix2<T> {
    MatchMatrix2 {
        vertex: m.vertex.clone(),
        edges: m.edges.iter().map(x_normalize_block).collect(),
    }
}

pub fn x_normalize_block<T: Coeff>(e: &EdgeBlock<T>) -> EdgeBlock<T> {
    if !e.c.is_zero() {
        EdgeBlock::new(e.a.clone(), e.b.clone() * e.c.clone(), e.c.one_like(), e.d.clone())
    } else if !e.b.is_zero() {
        EdgeBlock::new(e.a.clone(), e.b.one_like(), e.c.clone(), e.d.clone())
    } else {
        e.clone()
    }
}

/// Conjugate by some invertible diagonal matrix.
pub fn x_equivalent<T: Coeff>(m1: &MatchMatrix2<T>, m2: &MatchMatrix2<T>) -> bool {
    m1.n() == m2.n()
        && m1.vertex == m2.vertex
        && m1.edges.iter().zip(&m2.edges).all(|(e, f)| {
            e.a == f.a
                && e.d == f.d
                && e.b.is_zero() == f.b.is_zero()
                && e.c.is_zero() == f.c.is_zero()
                && e.b.clone() * e.c.clone() == f.b.clone() * f.c.clone()
        })
}

pub fn invertible<T: Coeff>(m: &MatchMatrix2<T>) -> bool {
    m.vertex.iter().all(|x| !x.is_zero()) && m.edges.iter().all(|e| !e.det().is_zero())
}

pub fn inverse(m: &MatchMatrix2<Scalar>) -> Result<MatchMatrix2<Scalar>> {
    if let Some(i) = m.vertex.iter().position(Coeff::is_zero) {
        return Err(Error::Singular(format!("vertex {} is zero", i + 1)));
    }
    let mut edges = Vec::with_capacity(m.edges.len());
    for ((i, j), e) in m.edges() {
        let det = e.det();
        if det.is_zero() {
            return Err(Error::Singular(format!("edge ({i},{j}) has zero determinant")));
        }
        edges.push(EdgeBlock::new(
            &e.d / &det,
            -(&e.b / &det),
            -(&e.c / &det),
            &e.a / &det,
        ));
    }
    Ok(MatchMatrix2 {
        vertex: m.vertex.iter().map(|x| x.recip()).collect(),
        edges,
    })
}

impl fmt::Display for MatchMatrix2<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::scalar::format_scalar as s;
        write!(f, "(")?;
        for (k, x) in self.vertex.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", s(x))?;
        }
        for (_, e) in self.edges() {
            write!(f, ", [[{}, {}], [{}, {}]]", s(&e.a), s(&e.b), s(&e.c), s(&e.d))?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeRepr {
    i: usize,
    j: usize,
    a: ScalarStr,
    b: ScalarStr,
    c: ScalarStr,
    d: ScalarStr,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    vertices: Vec<ScalarStr>,
    edges: Vec<EdgeRepr>,
}

impl Serialize for MatchMatrix2<Scalar> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            n: self.n(),
            vertices: self.vertex.iter().cloned().map(ScalarStr).collect(),
            edges: self
                .edges()
                .map(|((i, j), e)| EdgeRepr {
                    i,
                    j,
                    a: ScalarStr(e.a.clone()),
                    b: ScalarStr(e.b.clone()),
                    c: ScalarStr(e.c.clone()),
                    d: ScalarStr(e.d.clone()),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatchMatrix2<Scalar> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = MatrixRepr::deserialize(d)?;
        if r.vertices.len() != r.n {
            return Err(D::Error::custom(format!(
                "expected {} vertex scalars, got {}",
                r.n,
                r.vertices.len()
            )));
        }
        let mut blocks: Vec<Option<EdgeBlock<Scalar>>> = vec![None; r.n * r.n.saturating_sub(1) / 2];
        for e in r.edges {
            if !(1 <= e.i && e.i < e.j && e.j <= r.n) {
                return Err(D::Error::custom(format!("bad edge ({},{})", e.i, e.j)));
            }
            let slot = &mut blocks[edge_index(e.i, e.j)];
            if slot.is_some() {
                return Err(D::Error::custom(format!("duplicate edge ({},{})", e.i, e.j)));
            }
            *slot = Some(EdgeBlock::new(e.a.0, e.b.0, e.c.0, e.d.0));
        }
        let edges = blocks
            .into_iter()
            .zip(edge_pairs(r.n))
            .map(|(b, (i, j))| b.ok_or_else(|| D::Error::custom(format!("missing edge ({i},{j})"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MatchMatrix2::new(r.vertices.into_iter().map(|x| x.0).collect(), edges)
            .map_err(D::Error::custom)
    }
}
