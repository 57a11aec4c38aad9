//! Solution tests for the braid relation: the direct level-3 check, the
//! closed-form constraint system evaluated on all triple images, and the
//! reduction to 3-vertex restrictions.

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::json;

use crate::matchcat::{act_perm, invertible, restrict, to_sparse, Letters, MatchMatrix2, SparseOp};
use crate::perm::Permutation;
use crate::scalar::{format_scalar, Coeff, Scalar};

/// Witnesses kept per report.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Constraints,
    Subsets,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Constraints => "constraints",
            Method::Subsets => "subsets",
        }
    }
}

/// A nonzero residual.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness<T = Scalar> {
    /// Entry of `F1 F2 F1 − F2 F1 F2`.
    Entry { row: Letters, col: Letters, value: T },
    /// A named constraint evaluated on the `image`-relabelling of the
    /// restriction to `triple` (a pair when `n = 2`).
    Constraint { triple: Vec<usize>, image: Permutation, equation: &'static str, value: T },
    /// Entry of the direct residual of the restriction to `subset`, with
    /// letters in the restricted alphabet.
    Subset { subset: Vec<usize>, row: Letters, col: Letters, value: T },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport<T = Scalar> {
    pub zero: bool,
    /// Number of nonzero residuals found, before truncation.
    pub nonzero: usize,
    pub witnesses: Vec<Witness<T>>,
    pub source: Method,
}

impl<T> ResidualReport<T> {
    fn collect(source: Method, all: impl IntoIterator<Item = Witness<T>>) -> Self {
        let mut witnesses = Vec::new();
        let mut nonzero = 0;
        for w in all {
            nonzero += 1;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(w);
            }
        }
        ResidualReport { zero: nonzero == 0, nonzero, witnesses, source }
    }
}

fn letters_str(l: &[u8]) -> String {
    l.iter().map(|x| x.to_string()).join("")
}

impl Witness<Scalar> {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Witness::Entry { row, col, value } => json!({
                "kind": "entry", "row": letters_str(row), "col": letters_str(col),
                "value": format_scalar(value),
            }),
            Witness::Constraint { triple, image, equation, value } => json!({
                "kind": "constraint", "vertices": triple, "image": image.images(),
                "equation": equation, "value": format_scalar(value),
            }),
            Witness::Subset { subset, row, col, value } => json!({
                "kind": "subset", "subset": subset, "row": letters_str(row),
                "col": letters_str(col), "value": format_scalar(value),
            }),
        }
    }
}

impl ResidualReport<Scalar> {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "method": self.source.name(),
            "zero": self.zero,
            "nonzero": self.nonzero,
            "witnesses": self.witnesses.iter().map(Witness::to_json).collect::<Vec<_>>(),
        })
    }
}

fn direct_entries<T: Coeff>(m: &MatchMatrix2<T>) -> Vec<(Letters, Letters, T)> {
    let n = m.n();
    let one = match m.vertices().first() {
        Some(x) => x.one_like(),
        None => return Vec::new(),
    };
    let s = to_sparse(m);
    let id = SparseOp::identity(1, n, one);
    let f1 = s.kron(&id);
    let f2 = id.kron(&s);
    let lhs = f1.compose(&f2).compose(&f1);
    let rhs = f2.compose(&f1).compose(&f2);
    lhs.sub(&rhs)
        .entries()
        .iter()
        .map(|((r, c), x)| (r.clone(), c.clone(), x.clone()))
        .collect()
}

/// `F1 F2 F1 − F2 F1 F2` with `F1 = S ⊗ 1`, `F2 = 1 ⊗ S`.
pub fn ybe_residual_direct<T: Coeff>(m: &MatchMatrix2<T>) -> ResidualReport<T> {
    ResidualReport::collect(
        Method::Direct,
        direct_entries(m)
            .into_iter()
            .map(|(row, col, value)| Witness::Entry { row, col, value }),
    )
}

/// Equations involving only vertices 1, 2 and the edge between them.
fn pair_equations<T: Coeff>(m: &MatchMatrix2<T>) -> Vec<(&'static str, T)> {
    let a1 = m.vertex(1).clone();
    let a2 = m.vertex(2).clone();
    let e = m.edge(1, 2);
    let (a, b, c, d) = (e.a.clone(), e.b.clone(), e.c.clone(), e.d.clone());
    let bc = b.clone() * c.clone();
    vec![
        (
            "vertex-eigen-1",
            a.clone() * (a1.clone() * a1.clone() - a.clone() * a1 - bc.clone()),
        ),
        (
            "vertex-eigen-2",
            a.clone() * (a2.clone() * a2.clone() - a.clone() * a2 - bc),
        ),
        ("acd", a.clone() * c.clone() * d.clone()),
        ("abd", a.clone() * b * d.clone()),
        ("ad-balance", a.clone() * d.clone() * (a - d)),
    ]
}

/// The base equations on vertices 1, 2, 3 of a 3-vertex matrix.
fn triple_equations<T: Coeff>(m: &MatchMatrix2<T>) -> Vec<(&'static str, T)> {
    let mut out = pair_equations(m);
    let e12 = m.edge(1, 2);
    let e13 = m.edge(1, 3);
    let e23 = m.edge(2, 3);
    let (a12, c12, d12) = (e12.a.clone(), e12.c.clone(), e12.d.clone());
    let (a13, d13) = (e13.a.clone(), e13.d.clone());
    let (a23, d23) = (e23.a.clone(), e23.d.clone());
    out.push((
        "c-path-d",
        c12.clone() * (d13.clone() * d23.clone() - d12.clone() * d23.clone() - a12.clone() * d13),
    ));
    out.push((
        "c-path-a",
        c12 * (a12.clone() * a23.clone() - a13.clone() * a23 + d12 * a13.clone()),
    ));
    out.push((
        "bc-balance",
        a13.clone() * a13.clone() * d23.clone() - a13 * d23.clone() * d23
            + a12.clone() * (e13.b.clone() * e13.c.clone())
            - a12 * (e23.b.clone() * e23.c.clone()),
    ));
    out
}

/// Every base equation on every relabelling of every restriction to a
/// triple (or the pair, when `n = 2`).
pub fn constraint_residuals<T: Coeff>(m: &MatchMatrix2<T>) -> ResidualReport<T> {
    let n = m.n();
    if n < 2 {
        return ResidualReport::collect(Method::Constraints, std::iter::empty());
    }
    let k = n.min(3);
    let subsets: Vec<Vec<usize>> = (1..=n).combinations(k).collect();
    let found: Vec<Witness<T>> = subsets
        .par_iter()
        .flat_map_iter(|subset| {
            let sub = restrict(m, subset);
            Permutation::all(k).flat_map(move |image| {
                let moved = act_perm(&sub, &image);
                let eqs = if k == 2 { pair_equations(&moved) } else { triple_equations(&moved) };
                let subset = subset.clone();
                eqs.into_iter().filter(|(_, v)| !v.is_zero()).map(move |(equation, value)| {
                    Witness::Constraint { triple: subset.clone(), image: image.clone(), equation, value }
                })
            })
        })
        .collect();
    ResidualReport::collect(Method::Constraints, found)
}

/// Direct check of every restriction to three vertices.
pub fn is_solution_by_subsets<T: Coeff>(m: &MatchMatrix2<T>) -> ResidualReport<T> {
    let n = m.n();
    if n < 3 {
        let mut r = ybe_residual_direct(m);
        r.source = Method::Subsets;
        return r;
    }
    let subsets: Vec<Vec<usize>> = (1..=n).combinations(3).collect();
    let found: Vec<Witness<T>> = subsets
        .par_iter()
        .flat_map_iter(|subset| {
            direct_entries(&restrict(m, subset))
                .into_iter()
                .map(move |(row, col, value)| Witness::Subset { subset: subset.clone(), row, col, value })
        })
        .collect();
    ResidualReport::collect(Method::Subsets, found)
}

/// Invertible and satisfying the braid relation.
pub fn is_solution<T: Coeff>(m: &MatchMatrix2<T>) -> bool {
    invertible(m) && ybe_residual_direct(m).zero
}

/// Dispatches one of the three tests.
pub fn residual<T: Coeff>(m: &MatchMatrix2<T>, method: Method) -> ResidualReport<T> {
    match method {
        Method::Direct => ybe_residual_direct(m),
        Method::Constraints => constraint_residuals(m),
        Method::Subsets => is_solution_by_subsets(m),
    }
}
