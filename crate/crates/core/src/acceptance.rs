//! The acceptance suite: ten end-to-end checks of the library, shared by
//! the integration test target and the command-line self-test.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{classify, g3_orbits, label_edges, no_minus_rep, EdgeLabelI, TriangleType};
use crate::diagrams::{
    configuration_perm, enumerate_transversal, euler_count, flip_configuration, one_nation_from_edge_word,
    Configuration, County, Nation, Part,
};
use crate::matchcat::{act_flip, act_perm, restrict, x_equivalent, x_normalize, EdgeBlock, MatchMatrix2};
use crate::oracle::{enumerate_fibre, matches_family, FibreType, TABLE_TRANSVERSAL};
use crate::perm::Permutation;
use crate::recipe::{generic_point, rec, Germ};
use crate::scalar::int;
use crate::signature::{signature_check, signature_formula, Signature};
use crate::ybe::{constraint_residuals, is_solution, is_solution_by_subsets, ybe_residual_direct};

/// How much of each criterion to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Reduced sizes for a fast smoke run.
    Quick,
    /// The full stated scope.
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{:.3}", d.as_secs_f64()))
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Time limits for the criteria that state one.
pub const LIMIT_COUNTS: Duration = Duration::from_secs(5);
pub const LIMIT_REC: Duration = Duration::from_secs(300);
pub const LIMIT_FIBRES: Duration = Duration::from_secs(600);

/// Thresholds for the agreement pool.
pub const RANDOM_POOL: usize = 500;
pub const CORRUPTIONS: usize = 50;
pub const MIN_EACH_VERDICT: usize = 20;

type Outcome = Result<String, String>;

fn run(id: usize, title: &'static str, f: impl FnOnce() -> Outcome) -> CriterionReport {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionReport { id, title, passed, detail, elapsed }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn germ(c: &Configuration, seed: u64) -> Germ {
    Germ::new(c.clone(), generic_point(c, seed)).expect("generic points are valid")
}

fn seeds(base: u64, k: usize) -> impl Iterator<Item = u64> {
    (0..k as u64).map(move |i| base.wrapping_add(i.wrapping_mul(0x9e37_79b9)))
}

pub fn transversal_counts(_level: Level) -> CriterionReport {
    run(1, "transversal counts", || {
        let start = Instant::now();
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_transversal(n).len()).collect();
        ensure(counts == [1, 4, 13, 46, 154], || format!("counts {counts:?}"))?;
        let euler: Vec<u128> = (1..=5).map(euler_count).collect();
        ensure(euler == [1, 4, 13, 46, 154], || format!("euler transform {euler:?}"))?;
        ensure(start.elapsed() < LIMIT_COUNTS, || format!("took {:?}", start.elapsed()))?;
        Ok(format!("|T_N| = {}", counts.iter().join(",")))
    })
}

pub fn rec_completeness(level: Level, seed: u64) -> CriterionReport {
    run(2, "rec outputs solve the braid relation", || {
        let start = Instant::now();
        let (max_n, k) = if level == Level::Full { (5, 3) } else { (4, 2) };
        let mut checked = 0;
        for n in 1..=max_n {
            for c in enumerate_transversal(n) {
                for s in seeds(seed, k) {
                    let m = rec(&germ(&c, s));
                    ensure(ybe_residual_direct(&m).zero, || format!("nonzero residual for {c:?}"))?;
                    checked += 1;
                }
            }
        }
        ensure(start.elapsed() < LIMIT_REC, || format!("took {:?}", start.elapsed()))?;
        Ok(format!("{checked} germs, N <= {max_n}, {k} seeds each"))
    })
}

/// Random charge-conserving matrix with entries in `-2..=2`.
pub fn random_small_matrix(rng: &mut impl Rng, n: usize) -> MatchMatrix2 {
    let mut x = || int(rng.random_range(-2..=2));
    let vertex: Vec<_> = (0..n).map(|_| x()).collect();
    let edges = (0..n * (n - 1) / 2).map(|_| EdgeBlock::new(x(), x(), x(), x())).collect();
    MatchMatrix2::new(vertex, edges).expect("sizes match")
}

/// Adds a nonzero integer to one randomly chosen entry.
fn corrupt_entry(m: &MatchMatrix2, rng: &mut impl Rng) -> MatchMatrix2 {
    let mut out = m.clone();
    let delta = int(*[1, 2, -1, 3].choose(rng).expect("nonempty"));
    let n = m.n();
    let slots = n + 4 * n * (n - 1) / 2;
    let k = rng.random_range(0..slots);
    if k < n {
        out.set_vertex(k + 1, m.vertex(k + 1) + &delta);
    } else {
        let (e, which) = ((k - n) / 4, (k - n) % 4);
        let (i, j) = crate::matchcat::edge_pairs(n).nth(e).expect("edge exists");
        let mut b = m.edge(i, j).clone();
        match which {
            0 => b.a = &b.a + &delta,
            1 => b.b = &b.b + &delta,
            2 => b.c = &b.c + &delta,
            _ => b.d = &b.d + &delta,
        }
        out.set_edge(i, j, b);
    }
    out
}

pub fn constraint_equivalence(level: Level, seed: u64) -> CriterionReport {
    run(3, "direct, constraint and subset verdicts agree", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pool: Vec<MatchMatrix2> = (0..RANDOM_POOL).map(|k| random_small_matrix(&mut rng, 3 + k % 2)).collect();
        let max_n = if level == Level::Full { 4 } else { 3 };
        let recs: Vec<MatchMatrix2> = (1..=max_n)
            .flat_map(enumerate_transversal)
            .map(|c| rec(&germ(&c, seed)))
            .collect();
        for _ in 0..CORRUPTIONS {
            let m = recs.choose(&mut rng).expect("nonempty");
            pool.push(corrupt_entry(m, &mut rng));
        }
        pool.extend(recs);
        let (mut yes, mut no) = (0, 0);
        for m in &pool {
            let d = ybe_residual_direct(m).zero;
            let c = constraint_residuals(m).zero;
            let s = is_solution_by_subsets(m).zero;
            ensure(d == c && c == s, || format!("disagreement (direct {d}, constraints {c}, subsets {s}) on\n{m}"))?;
            if d {
                yes += 1;
            } else {
                no += 1;
            }
        }
        ensure(yes >= MIN_EACH_VERDICT && no >= MIN_EACH_VERDICT, || {
            format!("pool too one-sided: {yes} solutions, {no} non-solutions")
        })?;
        Ok(format!("{} matrices agree ({yes} solutions, {no} non-solutions)", pool.len()))
    })
}

pub fn subset_reduction(level: Level, seed: u64) -> CriterionReport {
    run(4, "3-subset corruption flips both verdicts", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
        let trials = if level == Level::Full { 10 } else { 4 };
        for n in [4, 5] {
            let configs = enumerate_transversal(n);
            for _ in 0..trials {
                let c = configs.choose(&mut rng).expect("nonempty");
                let m = rec(&germ(c, rng.random()));
                let subset: Vec<usize> = rand::seq::index::sample(&mut rng, n, 3)
                    .into_iter()
                    .map(|v| v + 1)
                    .sorted()
                    .collect();
                let (i, j) = (subset[0], subset[1 + rng.random_range(0..2)]);
                let mut bad = m.clone();
                let e = m.edge(i, j);
                // A diagonal block with distinct entries never solves the
                // pair problem, whatever the vertex values.
                let x = [&e.a, &e.d].into_iter().find(|v| !v.is_zero()).cloned().unwrap_or_else(|| int(1));
                bad.set_edge(i, j, EdgeBlock::new(x.clone() * int(2), int(0), int(0), x));
                ensure(!ybe_residual_direct(&restrict(&bad, &subset)).zero, || {
                    format!("corruption of {subset:?} left it a solution")
                })?;
                let direct = ybe_residual_direct(&bad).zero;
                let subsets = is_solution_by_subsets(&bad);
                ensure(!direct && !subsets.zero, || format!("verdicts did not flip for {subset:?} on {c:?}"))?;
                ensure(ybe_residual_direct(&m).zero && is_solution_by_subsets(&m).zero, || {
                    format!("uncorrupted matrix failed for {c:?}")
                })?;
            }
        }
        Ok(format!("{} corruptions each for N = 4, 5", trials))
    })
}

pub fn round_trip(level: Level, seed: u64) -> CriterionReport {
    run(5, "classify inverts rec", || {
        let max_n = if level == Level::Full { 5 } else { 4 };
        let perm_n = if level == Level::Full { 4 } else { 3 };
        let mut count = 0;
        let check = |m: &MatchMatrix2, expected: &Configuration| -> Result<(), String> {
            let (c2, p2) = classify(m).map_err(|e| format!("classify failed: {e}"))?;
            ensure(&c2 == expected, || format!("recovered {c2:?}, expected {expected:?}"))?;
            let back = rec(&Germ::new(c2, p2).map_err(|e| e.to_string())?);
            ensure(x_equivalent(&back, m), || format!("rec of classification differs for {expected:?}"))
        };
        for n in 1..=max_n {
            for c in enumerate_transversal(n) {
                let m = rec(&germ(&c, seed));
                check(&m, &c)?;
                count += 1;
                if n <= perm_n {
                    for omega in Permutation::all(n) {
                        check(&act_perm(&m, &omega), &configuration_perm(&c, &omega).normalized())?;
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} matrices round-trip (images under all relabellings for N <= {perm_n})"))
    })
}

fn two_nations(sizes: [usize; 2], first: Option<Part>) -> Configuration {
    // Nation one either a single county or two singleton counties with the
    // given second part; nation two a single county.
    let n = sizes[0] + sizes[1];
    let one = match first {
        None => Nation { counties: vec![County { vertices: (1..=sizes[0]).collect(), part: Part::First }] },
        Some(part) => Nation {
            counties: vec![County { vertices: vec![1], part: Part::First }, County { vertices: vec![2], part }],
        },
    };
    let two = Nation { counties: vec![County { vertices: (sizes[0] + 1..=n).collect(), part: Part::First }] };
    Configuration::new(n, vec![one, two]).expect("valid")
}

fn singletons(n: usize) -> Configuration {
    let nations = (1..=n)
        .map(|v| Nation { counties: vec![County { vertices: vec![v], part: Part::First }] })
        .collect();
    Configuration::new(n, nations).expect("valid")
}

/// The rank-3 table: configuration and its signature.
pub fn rank_three_table() -> Vec<(String, Configuration, Vec<usize>)> {
    let mut rows: Vec<(String, Configuration, Vec<usize>)> = [
        ("000", vec![9]),
        ("0aa", vec![6, 3]),
        ("0ff", vec![7, 2]),
        ("afa", vec![5, 4]),
        ("faa", vec![5, 4]),
        ("fff", vec![6, 3]),
    ]
    .into_iter()
    .map(|(w, s)| (w.to_string(), one_nation_from_edge_word(3, w).expect("valid word"), s))
    .collect();
    rows.push(("0//".into(), two_nations([2, 1], None), vec![4, 2, 2, 1]));
    rows.push(("f//".into(), two_nations([2, 1], Some(Part::First)), vec![3, 2, 2, 1, 1]));
    rows.push(("a//".into(), two_nations([2, 1], Some(Part::Second)), vec![2, 2, 2, 2, 1]));
    rows.push(("///".into(), singletons(3), vec![1; 9]));
    rows
}

/// The rank-4 one-nation table.
pub const RANK_FOUR_TABLE: [(&str, &[usize]); 12] = [
    ("000000", &[16]),
    ("000aaa", &[12, 4]),
    ("000fff", &[13, 3]),
    ("0aaaa0", &[8, 8]),
    ("0ffff0", &[12, 4]),
    ("aa0faa", &[9, 7]),
    ("aa0aff", &[10, 6]),
    ("ff0aaa", &[10, 6]),
    ("ff0fff", &[11, 5]),
    ("faaaaf", &[8, 8]),
    ("fffaaa", &[9, 7]),
    ("ffffff", &[10, 6]),
];

pub fn signature_tables(level: Level, seed: u64) -> CriterionReport {
    run(6, "signature tables", || {
        let k = if level == Level::Full { 3 } else { 1 };
        let check = |name: &str, c: &Configuration, expected: &[usize]| -> Result<(), String> {
            let want = Signature::new(expected.to_vec());
            let formula = signature_formula(c);
            ensure(formula == want, || format!("{name}: formula {formula}, table {want}"))?;
            for s in seeds(seed, k) {
                let check = signature_check(&germ(c, s)).map_err(|e| format!("{name}: {e}"))?;
                ensure(check.observed == want, || format!("{name}: sampled {}, table {want}", check.observed))?;
            }
            Ok(())
        };
        let rank_two: BTreeSet<Signature> = enumerate_transversal(2).iter().map(signature_formula).collect();
        let want_two: BTreeSet<Signature> =
            [vec![4], vec![3, 1], vec![2, 2], vec![1; 4]].into_iter().map(Signature::new).collect();
        ensure(rank_two == want_two, || format!("rank 2 signatures {rank_two:?}"))?;
        for c in enumerate_transversal(2) {
            check("rank 2", &c, signature_formula(&c).parts())?;
        }
        let three = rank_three_table();
        for (name, c, parts) in &three {
            check(name, c, parts)?;
        }
        let from_transversal: BTreeSet<Signature> = enumerate_transversal(3).iter().map(signature_formula).collect();
        let from_table: BTreeSet<Signature> = three.iter().map(|(_, _, p)| Signature::new(p.clone())).collect();
        ensure(from_transversal == from_table, || "rank 3 transversal signatures differ from the table".into())?;
        for (word, parts) in RANK_FOUR_TABLE {
            let c = one_nation_from_edge_word(4, word).map_err(|e| e.to_string())?;
            check(word, &c, parts)?;
        }
        Ok(format!("4 + {} + {} entries reproduced, {k} seed(s) each", three.len(), RANK_FOUR_TABLE.len()))
    })
}

/// Rows of the triangle-type table given without decorations.
pub const CLEAN_TABLE_ROWS: [&[&str]; 9] = [
    &["///"],
    &["//-", "//+", "/-/", "/+/", "+//", "-//"],
    &["/-+", "/+-", "-/-", "+/+", "+-/", "-+/"],
    &["-+-", "+-+"],
    &["0//", "/0/", "//0"],
    &["0-+", "0+-", "-0-", "+0+", "+-0", "-+0"],
    &["00/", "0/0", "/00"],
    &["00+", "00-", "0+0", "0-0", "+00", "-00"],
    &["000"],
];

pub fn table_orbits(_level: Level) -> CriterionReport {
    run(7, "triangle-type orbits", || {
        let orbits = g3_orbits();
        let total: usize = orbits.iter().map(Vec::len).sum();
        ensure(total == 64, || format!("orbit sizes sum to {total}"))?;
        let parse = |s: &&str| s.parse::<TriangleType>().map_err(|e| e.to_string());
        for row in CLEAN_TABLE_ROWS {
            let mut want: Vec<TriangleType> = row.iter().map(parse).collect::<Result<_, _>>()?;
            want.sort();
            ensure(orbits.contains(&want), || format!("row {row:?} is not an orbit"))?;
        }
        let firsts: Vec<TriangleType> = TABLE_TRANSVERSAL.iter().map(parse).collect::<Result<_, _>>()?;
        let hit: BTreeSet<usize> = firsts
            .iter()
            .map(|t| orbits.iter().position(|o| o.contains(t)).expect("every type lies in an orbit"))
            .collect();
        ensure(hit.len() == firsts.len(), || "first-column types share an orbit".into())?;
        ensure(orbits.len() == firsts.len(), || format!("{} orbits computed", orbits.len()))?;
        Ok(format!("{} orbits, {} clean rows matched", orbits.len(), CLEAN_TABLE_ROWS.len()))
    })
}

pub const EMPTY_FIBRES: [&str; 7] = ["/++", "/+-", "0/+", "00/", "+-+", "0-+", "00-"];
pub const NONEMPTY_FIBRES: [&str; 6] = ["///", "//+", "+++", "0//", "000", "0++"];

pub fn fibre_oracle(level: Level) -> CriterionReport {
    run(8, "finite-field fibres", || {
        let start = Instant::now();
        let primes: &[u32] = if level == Level::Full { &[7, 11] } else { &[7] };
        let mut hits = 0;
        for &p in primes {
            for t in EMPTY_FIBRES {
                let ft: FibreType = t.parse().map_err(|e: crate::Error| e.to_string())?;
                let f = enumerate_fibre(ft, p).map_err(|e| e.to_string())?;
                ensure(f.representatives.is_empty(), || format!("{t} nonempty over F_{p}"))?;
            }
            for t in NONEMPTY_FIBRES {
                let ft: FibreType = t.parse().map_err(|e: crate::Error| e.to_string())?;
                let f = enumerate_fibre(ft, p).map_err(|e| e.to_string())?;
                ensure(!f.representatives.is_empty(), || format!("{t} empty over F_{p}"))?;
                let coarse = ft.coarse();
                ensure(f.representatives.iter().all(|m| matches_family(&coarse, m) == Some(true)), || {
                    format!("{t} over F_{p} has a hit outside its family")
                })?;
                hits += f.representatives.len();
            }
        }
        ensure(start.elapsed() < LIMIT_FIBRES, || format!("took {:?}", start.elapsed()))?;
        Ok(format!(
            "primes {:?}: {} empty, {} nonempty with {hits} representatives all in family",
            primes,
            EMPTY_FIBRES.len(),
            NONEMPTY_FIBRES.len()
        ))
    })
}

pub fn no_minus(level: Level, seed: u64) -> CriterionReport {
    run(9, "minus-free representatives", || {
        let max_n = if level == Level::Full { 4 } else { 3 };
        let mut count = 0;
        for n in 1..=max_n {
            for c in enumerate_transversal(n) {
                for omega in Permutation::all(n) {
                    let image = configuration_perm(&c, &omega);
                    let (d, _) = no_minus_rep(&image);
                    let labels = label_edges(&rec(&germ(&d, seed))).map_err(|e| e.to_string())?;
                    ensure(
                        labels.values().all(|l| !matches!(l, EdgeLabelI::FMinus | EdgeLabelI::AMinus)),
                        || format!("minus edge remains in {d:?}"),
                    )?;
                    for nation in d.nations() {
                        let slots: Vec<usize> = nation.vertices().sorted().collect();
                        let mut at = 0;
                        for county in &nation.counties {
                            let k = county.vertices.len();
                            ensure(county.vertices[..] == slots[at..at + k], || {
                                format!("county {:?} not consecutive in {d:?}", county.vertices)
                            })?;
                            at += k;
                        }
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} relabelled configurations normalized, N <= {max_n}"))
    })
}

pub fn symmetry_suite(level: Level, seed: u64) -> CriterionReport {
    run(10, "symmetry suite", || {
        let max_n = if level == Level::Full { 4 } else { 3 };
        let mut count = 0;
        for n in 1..=max_n {
            for c in enumerate_transversal(n) {
                let m = rec(&germ(&c, seed));
                let xn = x_normalize(&m);
                ensure(x_normalize(&xn) == xn, || format!("x_normalize not idempotent on {c:?}"))?;
                ensure(act_flip(&act_flip(&m)) == m, || "matrix flip is not an involution".into())?;
                ensure(flip_configuration(&flip_configuration(&c)) == c, || {
                    "configuration flip is not an involution".into()
                })?;
                ensure(is_solution(&act_flip(&m)) && is_solution(&xn), || format!("symmetry broke {c:?}"))?;
                for omega in Permutation::all(n) {
                    let pm = act_perm(&m, &omega);
                    ensure(act_flip(&pm) == act_perm(&act_flip(&m), &omega), || "flip and relabelling do not commute".into())?;
                    ensure(
                        flip_configuration(&configuration_perm(&c, &omega))
                            == configuration_perm(&flip_configuration(&c), &omega),
                        || "configuration flip and relabelling do not commute".into(),
                    )?;
                    ensure(is_solution(&pm), || format!("relabelling broke {c:?}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} (matrix, relabelling) pairs, N <= {max_n}"))
    })
}

/// Runs all ten criteria in order.
pub fn run_all(level: Level, seed: u64) -> Vec<CriterionReport> {
    vec![
        transversal_counts(level),
        rec_completeness(level, seed),
        constraint_equivalence(level, seed),
        subset_reduction(level, seed),
        round_trip(level, seed),
        signature_tables(level, seed),
        table_orbits(level),
        fibre_oracle(level),
        no_minus(level, seed),
        symmetry_suite(level, seed),
    ]
}

/// Default seed for generic points and random pools.
pub const DEFAULT_SEED: u64 = 20240611;
