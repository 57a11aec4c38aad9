//! Brute-force evidence over prime fields: exhaustive search of the
//! 3-vertex solutions with a prescribed edge-label pattern.
//!
//! The search runs over representatives for two free symmetries of the
//! solution set, both of which preserve every label: global rescaling
//! (fixed by `a₁ = 1`) and the diagonal gauge (fixed by `c = 1` on every
//! edge with `c ≠ 0`). The full fibre has `(p − 1)^(1 + k)` points per
//! representative, `k` the number of edges with `c ≠ 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::classify::{label_edge, EdgeLabelH, EdgeLabelI, TriangleType};
use crate::error::{Error, Result};
use crate::matchcat::{act_flip, invertible, x_normalize, EdgeBlock, MatchMatrix2};
use crate::scalar::{Coeff, Scalar};
use crate::ybe::{constraint_residuals, ybe_residual_direct};

pub const DEFAULT_PRIME: u32 = 11;

/// Residue modulo an odd prime carried alongside the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Self {
        Fp { v: v.rem_euclid(p as i64) as u32, p }
    }

    pub fn value(self) -> u32 {
        self.v
    }

    pub fn prime(self) -> u32 {
        self.p
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp { v: 1, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        (self.v != 0).then(|| self.pow(self.p as u64 - 2))
    }

    /// Reduction of a rational whose denominator is a unit mod `p`.
    pub fn from_rational(x: &Scalar, p: u32) -> Option<Self> {
        let reduce = |n: &num_bigint::BigInt| {
            let r = n.mod_floor(&num_bigint::BigInt::from(p));
            Fp::new(r.to_i64().expect("residue fits"), p)
        };
        let num = reduce(x.numer());
        let den = reduce(x.denom());
        den.inverse().map(|d| num * d)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        Fp { v: (self.v + o.v) % self.p, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        Fp { v: (self.v + self.p - o.v) % self.p, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp { v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
}

impl Coeff for Fp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }

    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Edge labels prescribed on the edges `12, 13, 23`, coarse or fine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FibreType {
    H(TriangleType),
    I([EdgeLabelI; 3]),
}

impl FibreType {
    pub fn coarse(&self) -> TriangleType {
        match self {
            FibreType::H(t) => *t,
            FibreType::I(ls) => TriangleType(ls.map(EdgeLabelI::coarse)),
        }
    }

    fn accepts(&self, slot: usize, label: EdgeLabelI) -> bool {
        match self {
            FibreType::H(t) => t.0[slot] == label.coarse(),
            FibreType::I(ls) => ls[slot] == label,
        }
    }
}

impl fmt::Display for FibreType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibreType::H(t) => write!(f, "{}", t.0.map(|l| l.symbol().to_string()).join(",")),
            FibreType::I(ls) => write!(f, "{}", ls.map(|l| l.symbol()).join(",")),
        }
    }
}

impl std::str::FromStr for FibreType {
    type Err = Error;

    /// `"/,+,+"`, `"/++"`, or fine labels such as `"0,a,f"` (`f_`, `a_`
    /// for the minus forms).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad triangle type {s:?}"));
        let tokens: Vec<String> = if s.contains(',') {
            s.split(',').map(|t| t.trim().to_string()).collect()
        } else {
            s.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
        };
        if tokens.len() != 3 {
            return Err(bad());
        }
        let fine = |t: &str| match t {
            "0" => Some(EdgeLabelI::Zero),
            "/" => Some(EdgeLabelI::Slash),
            "f" | "f+" => Some(EdgeLabelI::FPlus),
            "a" | "a+" => Some(EdgeLabelI::APlus),
            "f_" | "f-" => Some(EdgeLabelI::FMinus),
            "a_" | "a-" => Some(EdgeLabelI::AMinus),
            _ => None,
        };
        let coarse = |t: &str| {
            let mut cs = t.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => EdgeLabelH::from_symbol(c),
                _ => None,
            }
        };
        if let Some(ls) = tokens.iter().map(|t| coarse(t)).collect::<Option<Vec<_>>>() {
            return Ok(FibreType::H(TriangleType([ls[0], ls[1], ls[2]])));
        }
        let ls = tokens.iter().map(|t| fine(t)).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
        Ok(FibreType::I([ls[0], ls[1], ls[2]]))
    }
}

/// Block representatives with the zero pattern of `label`.
fn block_candidates(label: EdgeLabelH, p: u32) -> Vec<EdgeBlock<Fp>> {
    let units: Vec<Fp> = (1..p).map(|v| Fp::new(v as i64, p)).collect();
    let (zero, one) = (Fp::new(0, p), Fp::new(1, p));
    let mut out = Vec::new();
    for &x in &units {
        match label {
            EdgeLabelH::Zero => out.extend(units.iter().map(|&y| EdgeBlock::new(x, zero, zero, y))),
            EdgeLabelH::Slash => out.push(EdgeBlock::new(zero, x, one, zero)),
            EdgeLabelH::Plus => out.extend(units.iter().map(|&b| EdgeBlock::new(x, b, one, zero))),
            EdgeLabelH::Minus => out.extend(units.iter().map(|&b| EdgeBlock::new(zero, b, one, x))),
        }
    }
    out
}

/// Blocks that solve the 2-vertex problem with the given vertex scalars.
struct PairTable {
    table: BTreeMap<(u32, u32), Vec<EdgeBlock<Fp>>>,
}

impl PairTable {
    fn new(label: EdgeLabelH, p: u32) -> Self {
        let candidates = block_candidates(label, p);
        let mut table = BTreeMap::new();
        for x in 1..p {
            for y in 1..p {
                let (fx, fy) = (Fp::new(x as i64, p), Fp::new(y as i64, p));
                let ok = candidates
                    .iter()
                    .filter(|e| {
                        let m = MatchMatrix2::new(vec![fx, fy], vec![(*e).clone()]).expect("shape");
                        ybe_residual_direct(&m).zero
                    })
                    .cloned()
                    .collect();
                table.insert((x, y), ok);
            }
        }
        PairTable { table }
    }

    fn get(&self, x: Fp, y: Fp) -> &[EdgeBlock<Fp>] {
        &self.table[&(x.value(), y.value())]
    }
}

/// The search result for one type and prime.
#[derive(Clone, Debug)]
pub struct Fibre {
    pub fibre_type: FibreType,
    pub prime: u32,
    /// Representatives with `a₁ = 1` and `c = 1` wherever `c ≠ 0`.
    pub representatives: Vec<MatchMatrix2<Fp>>,
    /// Size of the full fibre.
    pub total: u128,
}

/// Every solution over `F_p` whose edge labels match `t`, up to rescaling
/// and gauge.
pub fn enumerate_fibre(t: FibreType, p: u32) -> Result<Fibre> {
    if p == 2 || !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let coarse = t.coarse();
    let tables: Vec<PairTable> = coarse.0.iter().map(|&l| PairTable::new(l, p)).collect();
    let one = Fp::new(1, p);
    let mut reps = Vec::new();
    for a2 in (1..p).map(|v| Fp::new(v as i64, p)) {
        for a3 in (1..p).map(|v| Fp::new(v as i64, p)) {
            for e12 in tables[0].get(one, a2) {
                for e13 in tables[1].get(one, a3) {
                    for e23 in tables[2].get(a2, a3) {
                        let m = MatchMatrix2::new(vec![one, a2, a3], vec![e12.clone(), e13.clone(), e23.clone()])
                            .expect("shape");
                        if !invertible(&m) || !constraint_residuals(&m).zero {
                            continue;
                        }
                        let labels_ok = [(1, 2), (1, 3), (2, 3)]
                            .iter()
                            .enumerate()
                            .all(|(slot, &(i, j))| label_edge(&m, i, j).is_ok_and(|l| t.accepts(slot, l)));
                        if labels_ok {
                            reps.push(m);
                        }
                    }
                }
            }
        }
    }
    let k = coarse.0.iter().filter(|&&l| l != EdgeLabelH::Zero).count() as u32;
    let total = reps.len() as u128 * (p as u128 - 1).pow(1 + k);
    Ok(Fibre { fibre_type: t, prime: p, representatives: reps, total })
}

/// Representative of `m` under rescaling and gauge, when `a₁ ≠ 0`.
pub fn representative(m: &MatchMatrix2<Fp>) -> Option<MatchMatrix2<Fp>> {
    let inv = m.vertex(1).inverse()?;
    Some(x_normalize(&m.map(|x| *x * inv)))
}

pub fn reduce_mod_p(m: &MatchMatrix2, p: u32) -> Option<MatchMatrix2<Fp>> {
    let vertex = m.vertices().iter().map(|x| Fp::from_rational(x, p)).collect::<Option<Vec<_>>>()?;
    let edges = m
        .edges()
        .map(|(_, e)| {
            Some(EdgeBlock::new(
                Fp::from_rational(&e.a, p)?,
                Fp::from_rational(&e.b, p)?,
                Fp::from_rational(&e.c, p)?,
                Fp::from_rational(&e.d, p)?,
            ))
        })
        .collect::<Option<Vec<_>>>()?;
    MatchMatrix2::new(vertex, edges).ok()
}

/// `[[α+β, −αβ],[1,0]]` with `α = x`, if the block has that form; returns `β`.
fn plus_partner(e: &EdgeBlock<Fp>, x: Fp) -> Option<Fp> {
    let beta = e.a - x;
    let ok = e.d.is_zero() && e.c == x.one_like() && e.b == -(x * beta) && !beta.is_zero();
    ok.then_some(beta)
}

fn is_slash(e: &EdgeBlock<Fp>) -> bool {
    e.a.is_zero() && e.d.is_zero() && e.c == e.c.one_like() && !e.b.is_zero()
}

fn is_scalar(e: &EdgeBlock<Fp>, x: Fp) -> bool {
    e.a == x && e.d == x && e.b.is_zero() && e.c.is_zero()
}

fn v(m: &MatchMatrix2<Fp>, i: usize) -> Fp {
    *m.vertex(i)
}

/// A family description and its membership test.
type Family = (&'static str, fn(&MatchMatrix2<Fp>) -> bool);

/// Parametrised families of the nonempty fibres, in lower-1 form.
fn family(t: &TriangleType) -> Option<Family> {
    let fam: Family = match t.to_string().as_str() {
        "///" => ("(a1,a2,a3; [0,l12;1,0], [0,l13;1,0], [0,l23;1,0])", |m| {
            m.edges().all(|(_, e)| is_slash(e))
        }),
        "//+" => ("(a1,a2,a3; [0,l;1,0], [0,l;1,0], [a2+b,-a2 b;1,0]), a3 in {a2,b}", |m| {
            let (e12, e13, e23) = (m.edge(1, 2), m.edge(1, 3), m.edge(2, 3));
            is_slash(e12)
                && is_slash(e13)
                && e12.b == e13.b
                && plus_partner(e23, v(m, 2)).is_some_and(|b| v(m, 3) == v(m, 2) || v(m, 3) == b)
        }),
        "+++" => ("(a1,a2,a3; P, P, P), P = [a+b,-ab;1,0], a = a1, each ai in {a,b}", |m| {
            let e = m.edge(1, 2);
            plus_partner(e, v(m, 1)).is_some_and(|b| {
                m.edge(1, 3) == e && m.edge(2, 3) == e && (1..=3).all(|i| v(m, i) == v(m, 1) || v(m, i) == b)
            })
        }),
        "0//" => ("(a1,a1,a3; a1 I, [0,l;1,0], [0,l;1,0])", |m| {
            v(m, 1) == v(m, 2)
                && is_scalar(m.edge(1, 2), v(m, 1))
                && is_slash(m.edge(1, 3))
                && m.edge(1, 3) == m.edge(2, 3)
        }),
        "0++" => ("(a,a,a3; a I, P, P), P = [a+b,-ab;1,0], a3 in {a,b}", |m| {
            let x = v(m, 1);
            v(m, 2) == x
                && is_scalar(m.edge(1, 2), x)
                && m.edge(1, 3) == m.edge(2, 3)
                && plus_partner(m.edge(1, 3), x).is_some_and(|b| v(m, 3) == x || v(m, 3) == b)
        }),
        "000" => ("(x,x,x; x I, x I, x I)", |m| {
            let x = v(m, 1);
            (1..=3).all(|i| v(m, i) == x) && m.edges().all(|(_, e)| is_scalar(e, x))
        }),
        _ => return None,
    };
    Some(fam)
}

/// Checks a solution of coarse type `t` against the stated family, using
/// the flip for the sign-reversed types. `None` when no family is stated.
pub fn matches_family(t: &TriangleType, m: &MatchMatrix2<Fp>) -> Option<bool> {
    if let Some((_, f)) = family(t) {
        return Some(f(&x_normalize(m)));
    }
    let (_, f) = family(&t.flipped())?;
    Some(f(&x_normalize(&act_flip(m))))
}

pub fn family_description(t: &TriangleType) -> Option<String> {
    match family(t) {
        Some((d, _)) => Some(d.to_string()),
        None => family(&t.flipped()).map(|(d, _)| format!("flip of {d}")),
    }
}

/// One line of the fibre report.
#[derive(Clone, Debug, Serialize)]
pub struct FibreRow {
    #[serde(rename = "type")]
    pub fibre_type: String,
    pub prime: u32,
    pub solutions: usize,
    pub total: String,
    pub nonempty: bool,
    pub family: Option<String>,
    pub matches_family: Option<bool>,
}

impl FibreRow {
    pub fn from_fibre(f: &Fibre) -> Self {
        let t = f.fibre_type.coarse();
        let matches = family(&t).or_else(|| family(&t.flipped())).map(|_| {
            f.representatives.iter().all(|m| matches_family(&t, m) == Some(true))
        });
        FibreRow {
            fibre_type: f.fibre_type.to_string(),
            prime: f.prime,
            solutions: f.representatives.len(),
            total: f.total.to_string(),
            nonempty: !f.representatives.is_empty(),
            family: family_description(&t),
            matches_family: if f.representatives.is_empty() { None } else { matches },
        }
    }
}

/// First element of each orbit row of the triangle-type table.
pub const TABLE_TRANSVERSAL: [&str; 13] = [
    "///", "//-", "/--", "/-+", "---", "-+-", "0//", "0/+", "0-+", "0--", "00/", "00+", "000",
];

/// Emptiness and family membership for each orbit representative.
pub fn fibre_report(p: u32) -> Result<Vec<FibreRow>> {
    TABLE_TRANSVERSAL
        .iter()
        .map(|s| {
            let t: TriangleType = s.parse()?;
            Ok(FibreRow::from_fibre(&enumerate_fibre(FibreType::H(t), p)?))
        })
        .collect()
}
