//! Parameter points on the type-space of a configuration and the recipe
//! sending a germ to its candidate solution matrix.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagrams::{configuration_perm, flip_configuration, Configuration, Nation};
use crate::error::{Error, Result};
use crate::matchcat::{EdgeBlock, MatchMatrix2};
use crate::perm::Permutation;
use crate::scalar::{int, ratio, Scalar, ScalarStr};

/// Values for the type-space variables. Nation indices are 0-based
/// positions in the configuration's nation list.
///
/// Each nation pair carries either `μ` (block `μ·[[0,1],[1,0]]`) or, when
/// only the product is known, `μ²` (block `[[0,μ²],[1,0]]`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParamPoint {
    pub mu: BTreeMap<(usize, usize), Scalar>,
    pub mu_squared: BTreeMap<(usize, usize), Scalar>,
    pub alpha: BTreeMap<usize, Scalar>,
    pub beta: BTreeMap<usize, Scalar>,
}

impl ParamPoint {
    pub fn validate(&self, c: &Configuration) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let k = c.nations().len();
        for i in 0..k {
            for j in i + 1..k {
                let has = [self.mu.get(&(i, j)), self.mu_squared.get(&(i, j))];
                match has {
                    [Some(x), None] | [None, Some(x)] if !x.is_zero() => {}
                    [None, None] => return bad(format!("missing mu for nations {},{}", i + 1, j + 1)),
                    [Some(_), Some(_)] => {
                        return bad(format!("both mu and mu_squared for nations {},{}", i + 1, j + 1))
                    }
                    _ => return bad(format!("mu for nations {},{} is zero", i + 1, j + 1)),
                }
            }
        }
        let pair_ok = |&(i, j): &(usize, usize)| i < j && j < k;
        if !self.mu.keys().chain(self.mu_squared.keys()).all(pair_ok) {
            return bad("mu indexed by a pair that is not two distinct nations".into());
        }
        for (i, nation) in c.nations().iter().enumerate() {
            match self.alpha.get(&i) {
                Some(a) if !a.is_zero() => {}
                _ => return bad(format!("alpha for nation {} missing or zero", i + 1)),
            }
            let needs_beta = nation.counties.len() > 1;
            match (self.beta.get(&i), needs_beta) {
                (Some(b), true) => {
                    if b.is_zero() {
                        return bad(format!("beta for nation {} is zero", i + 1));
                    }
                    if (b + &self.alpha[&i]).is_zero() {
                        return bad(format!("alpha + beta vanishes for nation {}", i + 1));
                    }
                }
                (None, false) => {}
                (None, true) => return bad(format!("nation {} needs beta", i + 1)),
                (Some(_), false) => return bad(format!("nation {} has one county but a beta", i + 1)),
            }
        }
        if self.alpha.keys().any(|&i| i >= k) {
            return bad("alpha for a nonexistent nation".into());
        }
        Ok(())
    }

    /// Product `μ²` for the nation pair, in either representation.
    pub fn mu_product(&self, i: usize, j: usize) -> Scalar {
        let key = (i.min(j), i.max(j));
        match self.mu.get(&key) {
            Some(m) => m * m,
            None => self.mu_squared[&key].clone(),
        }
    }
}

/// A configuration with a point of its type-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    config: Configuration,
    params: ParamPoint,
}

impl Germ {
    pub fn new(config: Configuration, params: ParamPoint) -> Result<Self> {
        params.validate(&config)?;
        Ok(Germ { config, params })
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn params(&self) -> &ParamPoint {
        &self.params
    }

    /// Relabels vertices; parameters stay attached to the same nations.
    pub fn permuted(&self, omega: &Permutation) -> Germ {
        Germ {
            config: configuration_perm(&self.config, omega),
            params: self.params.clone(),
        }
    }

    /// Reverses county orders, renaming `α ↔ β` in nations whose first
    /// county changes colour.
    pub fn flipped(&self) -> Germ {
        let config = flip_configuration(&self.config);
        let mut params = self.params.clone();
        for (i, nation) in self.config.nations().iter().enumerate() {
            let first = nation.counties[0].part;
            let last = nation.counties.last().expect("nonempty").part;
            if first != last {
                let a = params.alpha.remove(&i).expect("validated");
                let b = params.beta.remove(&i).expect("validated");
                params.alpha.insert(i, b);
                params.beta.insert(i, a);
            }
        }
        Germ { config, params }
    }
}

fn plus_block(alpha: &Scalar, beta: &Scalar) -> EdgeBlock {
    EdgeBlock::new(alpha + beta, -(alpha * beta), int(1), int(0))
}

fn minus_block(alpha: &Scalar, beta: &Scalar) -> EdgeBlock {
    EdgeBlock::new(int(0), -(alpha * beta), int(1), alpha + beta)
}

fn vertex_value<'a>(nation: &Nation, county: usize, alpha: &'a Scalar, beta: Option<&'a Scalar>) -> &'a Scalar {
    if nation.counties[county].part == nation.counties[0].part {
        alpha
    } else {
        beta.expect("two colours imply two counties")
    }
}

/// The recipe: slash blocks between nations, scalar blocks inside counties,
/// and signed blocks between counties of one nation (`+` when the county
/// order agrees with the vertex order).
pub fn rec(g: &Germ) -> MatchMatrix2 {
    let c = &g.config;
    let p = &g.params;
    let loc = c.locate();
    let value = |v: usize| {
        let (i, k) = loc[v - 1];
        vertex_value(&c.nations()[i], k, &p.alpha[&i], p.beta.get(&i)).clone()
    };
    MatchMatrix2::from_fn(c.n(), value, |v, w| {
        let (nv, kv) = loc[v - 1];
        let (nw, kw) = loc[w - 1];
        if nv != nw {
            let key = (nv.min(nw), nv.max(nw));
            match p.mu.get(&key) {
                Some(mu) => EdgeBlock::slash(mu.clone()),
                None => EdgeBlock::new(int(0), p.mu_squared[&key].clone(), int(1), int(0)),
            }
        } else if kv == kw {
            EdgeBlock::scalar(value(v))
        } else {
            let alpha = &p.alpha[&nv];
            let beta = &p.beta[&nv];
            if kv < kw {
                plus_block(alpha, beta)
            } else {
                minus_block(alpha, beta)
            }
        }
    })
}

/// Deterministic pseudorandom point at which all vertex values, `±μ` values
/// and `α + β` are pairwise distinct and nonzero.
pub fn generic_point(c: &Configuration, seed: u64) -> ParamPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = c.nations().len();
    let needed = c.nations().iter().map(|n| 1 + usize::from(n.counties.len() > 1)).sum::<usize>() + k * (k - 1);
    let bound = 8 + 4 * needed as i64;
    loop {
        let mut sample = || {
            let num = rng.random_range(1..=bound) * if rng.random_bool(0.5) { 1 } else { -1 };
            let den = rng.random_range(1..=3);
            ratio(num, den)
        };
        let mut p = ParamPoint::default();
        for (i, nation) in c.nations().iter().enumerate() {
            p.alpha.insert(i, sample());
            if nation.counties.len() > 1 {
                p.beta.insert(i, sample());
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                p.mu.insert((i, j), sample());
            }
        }
        if is_generic(&p) {
            return p;
        }
    }
}

/// All of `α_i`, `β_i`, `±μ_ij` pairwise distinct and nonzero, `α_i + β_i ≠ 0`.
pub fn is_generic(p: &ParamPoint) -> bool {
    let mut values: Vec<Scalar> = p.alpha.values().chain(p.beta.values()).cloned().collect();
    for m in p.mu.values() {
        values.push(m.clone());
        values.push(-m);
    }
    let distinct: BTreeSet<&Scalar> = values.iter().collect();
    distinct.len() == values.len()
        && values.iter().all(|v| !v.is_zero())
        && p.beta.iter().all(|(i, b)| !(b + &p.alpha[i]).is_zero())
        && p.mu_squared.is_empty()
}

#[derive(Serialize, Deserialize)]
struct GermRepr {
    #[serde(flatten)]
    config: serde_json::Value,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    mu: BTreeMap<String, ScalarStr>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    mu_squared: BTreeMap<String, ScalarStr>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    alpha: BTreeMap<String, ScalarStr>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    beta: BTreeMap<String, ScalarStr>,
}

fn parse_index(s: &str) -> Result<usize> {
    match s.trim().parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(Error::Parse(format!("bad nation index {s:?}"))),
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("bad nation pair {s:?}")))?;
    let (i, j) = (parse_index(a)?, parse_index(b)?);
    if i >= j {
        return Err(Error::Parse(format!("nation pair {s:?} must be increasing")));
    }
    Ok((i, j))
}

/// Parses germ JSON (configuration fields plus optional `mu`, `mu_squared`,
/// `alpha`, `beta` maps keyed by 1-based nation indices). Returns `None`
/// for the parameters when none are given.
pub fn germ_from_json(s: &str) -> Result<(Configuration, Option<ParamPoint>)> {
    let repr: GermRepr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let config: Configuration =
        serde_json::from_value(repr.config).map_err(|e| Error::Parse(e.to_string()))?;
    if repr.mu.is_empty() && repr.mu_squared.is_empty() && repr.alpha.is_empty() && repr.beta.is_empty() {
        return Ok((config, None));
    }
    let mut p = ParamPoint::default();
    for (k, v) in repr.mu {
        p.mu.insert(parse_pair(&k)?, v.0);
    }
    for (k, v) in repr.mu_squared {
        p.mu_squared.insert(parse_pair(&k)?, v.0);
    }
    for (k, v) in repr.alpha {
        p.alpha.insert(parse_index(&k)?, v.0);
    }
    for (k, v) in repr.beta {
        p.beta.insert(parse_index(&k)?, v.0);
    }
    p.validate(&config)?;
    Ok((config, Some(p)))
}

pub fn germ_to_json(g: &Germ) -> serde_json::Value {
    let p = &g.params;
    let pair = |&(i, j): &(usize, usize)| format!("{},{}", i + 1, j + 1);
    let repr = GermRepr {
        config: serde_json::to_value(&g.config).expect("configuration serializes"),
        mu: p.mu.iter().map(|(k, v)| (pair(k), ScalarStr(v.clone()))).collect(),
        mu_squared: p.mu_squared.iter().map(|(k, v)| (pair(k), ScalarStr(v.clone()))).collect(),
        alpha: p.alpha.iter().map(|(k, v)| ((k + 1).to_string(), ScalarStr(v.clone()))).collect(),
        beta: p.beta.iter().map(|(k, v)| ((k + 1).to_string(), ScalarStr(v.clone()))).collect(),
    };
    serde_json::to_value(repr).expect("germ serializes")
}
