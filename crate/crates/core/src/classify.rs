//! From solution matrices back to configurations: edge labels, triangle
//! rules, recovery of nations/counties/order/colours, and orbit tools.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::diagrams::{configuration_perm, flip_configuration, Configuration, County, Nation, Part};
use crate::error::{Error, Result};
use crate::matchcat::{edge_pairs, invertible, MatchMatrix2};
use crate::perm::Permutation;
use crate::recipe::ParamPoint;
use crate::scalar::{rational_sqrt, Coeff, Scalar};
use crate::ybe::{constraint_residuals, is_solution};

/// Fine edge labels: `f` edges join counties of one colour, `a` edges join
/// counties of different colours; the sign records the county order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabelI {
    Zero,
    Slash,
    FPlus,
    APlus,
    FMinus,
    AMinus,
}

/// Coarse edge labels, forgetting colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabelH {
    Zero,
    Slash,
    Plus,
    Minus,
}

impl EdgeLabelI {
    pub fn coarse(self) -> EdgeLabelH {
        match self {
            EdgeLabelI::Zero => EdgeLabelH::Zero,
            EdgeLabelI::Slash => EdgeLabelH::Slash,
            EdgeLabelI::FPlus | EdgeLabelI::APlus => EdgeLabelH::Plus,
            EdgeLabelI::FMinus | EdgeLabelI::AMinus => EdgeLabelH::Minus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            EdgeLabelI::Zero => "0",
            EdgeLabelI::Slash => "/",
            EdgeLabelI::FPlus => "f",
            EdgeLabelI::APlus => "a",
            EdgeLabelI::FMinus => "f_",
            EdgeLabelI::AMinus => "a_",
        }
    }
}

impl EdgeLabelH {
    pub const ALL: [EdgeLabelH; 4] = [EdgeLabelH::Zero, EdgeLabelH::Slash, EdgeLabelH::Plus, EdgeLabelH::Minus];

    pub fn symbol(self) -> char {
        match self {
            EdgeLabelH::Zero => '0',
            EdgeLabelH::Slash => '/',
            EdgeLabelH::Plus => '+',
            EdgeLabelH::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        EdgeLabelH::ALL.into_iter().find(|l| l.symbol() == c)
    }

    /// The label seen when the edge's endpoints are listed in reverse.
    pub fn reversed(self) -> Self {
        match self {
            EdgeLabelH::Plus => EdgeLabelH::Minus,
            EdgeLabelH::Minus => EdgeLabelH::Plus,
            other => other,
        }
    }
}

/// Labels of the edges `12, 13, 23` of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleType(pub [EdgeLabelH; 3]);

impl TriangleType {
    /// All 64 triangle types.
    pub fn all() -> Vec<TriangleType> {
        let mut out = Vec::with_capacity(64);
        for x in EdgeLabelH::ALL {
            for y in EdgeLabelH::ALL {
                for z in EdgeLabelH::ALL {
                    out.push(TriangleType([x, y, z]));
                }
            }
        }
        out
    }

    /// Label of the edge `{i, j}` read from `i` to `j` (`i ≠ j` in `1..=3`).
    pub fn oriented(&self, i: usize, j: usize) -> EdgeLabelH {
        let (lo, hi) = (i.min(j), i.max(j));
        let slot = match (lo, hi) {
            (1, 2) => 0,
            (1, 3) => 1,
            (2, 3) => 2,
            _ => panic!("not a triangle edge: {i},{j}"),
        };
        if i < j {
            self.0[slot]
        } else {
            self.0[slot].reversed()
        }
    }

    /// Relabel vertices by `ω ∈ Σ_3`.
    pub fn permuted(&self, omega: &Permutation) -> TriangleType {
        let inv = omega.inverse();
        let mut out = [EdgeLabelH::Zero; 3];
        for (slot, (i, j)) in [(1, 2), (1, 3), (2, 3)].into_iter().enumerate() {
            out[slot] = self.oriented(inv.apply(i), inv.apply(j));
        }
        TriangleType(out)
    }

    pub fn flipped(&self) -> TriangleType {
        TriangleType(self.0.map(EdgeLabelH::reversed))
    }
}

impl fmt::Display for TriangleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.0 {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for TriangleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels: Vec<EdgeLabelH> = s.chars().map(EdgeLabelH::from_symbol).collect::<Option<_>>().ok_or_else(|| {
            Error::Parse(format!("triangle type must use 0 / + -: {s:?}"))
        })?;
        let arr: [EdgeLabelH; 3] = labels
            .try_into()
            .map_err(|_| Error::Parse(format!("triangle type needs three labels: {s:?}")))?;
        Ok(TriangleType(arr))
    }
}

/// Label of the edge `i < j` of a solution.
pub fn label_edge<T: Coeff>(m: &MatchMatrix2<T>, i: usize, j: usize) -> Result<EdgeLabelI> {
    let e = m.edge(i, j);
    let (ai, aj) = (m.vertex(i), m.vertex(j));
    let bc_zero = e.b.is_zero() && e.c.is_zero();
    let bc_unit = !e.b.is_zero() && !e.c.is_zero();
    let label = match (e.a.is_zero(), e.d.is_zero()) {
        _ if bc_zero && !e.a.is_zero() && e.a == e.d && &e.a == ai && ai == aj => EdgeLabelI::Zero,
        (true, true) if bc_unit => EdgeLabelI::Slash,
        (false, true) if bc_unit => {
            if ai == aj {
                EdgeLabelI::FPlus
            } else {
                EdgeLabelI::APlus
            }
        }
        (true, false) if bc_unit => {
            if ai == aj {
                EdgeLabelI::FMinus
            } else {
                EdgeLabelI::AMinus
            }
        }
        _ => return Err(Error::InadmissibleEdge(i, j)),
    };
    Ok(label)
}

/// All edge labels, keyed by `(i, j)` with `i < j`.
pub fn label_edges<T: Coeff>(m: &MatchMatrix2<T>) -> Result<BTreeMap<(usize, usize), EdgeLabelI>> {
    edge_pairs(m.n()).map(|(i, j)| Ok(((i, j), label_edge(m, i, j)?))).collect()
}

/// Coarse type of the restriction to `i < j < k`.
pub fn triangle_type<T: Coeff>(m: &MatchMatrix2<T>, i: usize, j: usize, k: usize) -> Result<TriangleType> {
    Ok(TriangleType([
        label_edge(m, i, j)?.coarse(),
        label_edge(m, i, k)?.coarse(),
        label_edge(m, j, k)?.coarse(),
    ]))
}

/// Invertible, every edge labellable, and every constraint satisfied.
pub fn admissible<T: Coeff>(m: &MatchMatrix2<T>) -> bool {
    invertible(m) && label_edges(m).is_ok() && constraint_residuals(m).zero
}

/// Reading `+` on `i → j` as "`i`'s county precedes `j`'s": whenever two
/// edges chain with the same orientation, the closing edge carries it too.
pub fn six_rule_check(t: &TriangleType) -> bool {
    for u in 1..=3 {
        for v in 1..=3 {
            for w in 1..=3 {
                if u == v || v == w || u == w {
                    continue;
                }
                if t.oriented(u, v) == EdgeLabelH::Plus
                    && t.oriented(v, w) == EdgeLabelH::Plus
                    && t.oriented(u, w) != EdgeLabelH::Plus
                {
                    return false;
                }
            }
        }
    }
    true
}

/// No triangle carries exactly one slash.
pub fn slash_rule_check(t: &TriangleType) -> bool {
    t.0.iter().filter(|&&l| l == EdgeLabelH::Slash).count() != 1
}

/// Two vertices joined by a `0` edge see the third vertex identically.
pub fn zero_rule_check(t: &TriangleType) -> bool {
    for (u, v, w) in [(1, 2, 3), (1, 3, 2), (2, 3, 1)] {
        if t.oriented(u, v) == EdgeLabelH::Zero && t.oriented(u, w) != t.oriented(v, w) {
            return false;
        }
    }
    true
}

/// Triangle types realised by some configuration.
pub fn triangle_realisable(t: &TriangleType) -> bool {
    six_rule_check(t) && slash_rule_check(t) && zero_rule_check(t)
}

fn not_solution(msg: impl Into<String>) -> Error {
    Error::NotASolution(msg.into())
}

/// Classes of a relation given by a predicate on edges, checked to be
/// cliques (so the relation is an equivalence). Classes sorted by minimum.
fn clique_classes(
    vertices: &[usize],
    related: impl Fn(usize, usize) -> bool,
    what: &str,
) -> Result<Vec<Vec<usize>>> {
    let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut uf = UnionFind::<usize>::new(vertices.len());
    for (x, &v) in vertices.iter().enumerate() {
        for &w in &vertices[x + 1..] {
            if related(v, w) {
                uf.union(index[&v], index[&w]);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in vertices {
        classes.entry(uf.find(index[&v])).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = classes.into_values().collect();
    for class in &classes {
        for (x, &v) in class.iter().enumerate() {
            for &w in &class[x + 1..] {
                if !related(v, w) {
                    return Err(not_solution(format!("{what} relation not transitive at {v},{w}")));
                }
            }
        }
    }
    classes.sort();
    Ok(classes)
}

struct Labelled<'a> {
    m: &'a MatchMatrix2,
    labels: BTreeMap<(usize, usize), EdgeLabelI>,
}

impl<'a> Labelled<'a> {
    fn new(m: &'a MatchMatrix2) -> Result<Self> {
        if !is_solution(m) {
            return Err(not_solution("matrix is not an invertible braid solution"));
        }
        Ok(Labelled { m, labels: label_edges(m)? })
    }

    fn label(&self, v: usize, w: usize) -> EdgeLabelI {
        self.labels[&(v.min(w), v.max(w))]
    }

    /// Coarse label read from `v` to `w`.
    fn oriented(&self, v: usize, w: usize) -> EdgeLabelH {
        let l = self.label(v, w).coarse();
        if v < w {
            l
        } else {
            l.reversed()
        }
    }

    fn nations(&self) -> Result<Vec<Vec<usize>>> {
        let all: Vec<usize> = (1..=self.m.n()).collect();
        let nations = clique_classes(&all, |v, w| self.label(v, w) != EdgeLabelI::Slash, "nation")?;
        for (x, p) in nations.iter().enumerate() {
            for q in &nations[x + 1..] {
                let products: BTreeSet<Scalar> = p
                    .iter()
                    .flat_map(|&v| q.iter().map(move |&w| (v, w)))
                    .map(|(v, w)| {
                        let e = self.m.edge(v.min(w), v.max(w));
                        &e.b * &e.c
                    })
                    .collect();
                if products.len() != 1 {
                    return Err(not_solution(format!(
                        "unequal slash parameters between nations at {} and {}",
                        p[0], q[0]
                    )));
                }
            }
        }
        Ok(nations)
    }

    fn counties(&self, nation: &[usize]) -> Result<Vec<Vec<usize>>> {
        clique_classes(nation, |v, w| self.label(v, w) == EdgeLabelI::Zero, "county")
    }

    /// Counties of one nation sorted by the order their signed edges induce.
    fn order(&self, counties: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>> {
        let k = counties.len();
        let mut before = vec![vec![false; k]; k];
        for x in 0..k {
            for y in 0..k {
                if x == y {
                    continue;
                }
                let signs: BTreeSet<EdgeLabelH> = counties[x]
                    .iter()
                    .flat_map(|&v| counties[y].iter().map(move |&w| (v, w)))
                    .map(|(v, w)| self.oriented(v, w))
                    .collect();
                match signs.iter().collect::<Vec<_>>()[..] {
                    [EdgeLabelH::Plus] => before[x][y] = true,
                    [EdgeLabelH::Minus] => {}
                    _ => {
                        return Err(not_solution(format!(
                            "counties at {} and {} have mixed orientation",
                            counties[x][0], counties[y][0]
                        )))
                    }
                }
            }
        }
        let mut ranked: Vec<(usize, Vec<usize>)> = counties
            .into_iter()
            .enumerate()
            .map(|(x, county)| ((0..k).filter(|&y| before[y][x]).count(), county))
            .collect();
        ranked.sort();
        if ranked.iter().enumerate().any(|(r, (rank, _))| r != *rank) {
            return Err(not_solution("county order is cyclic"));
        }
        for (x, (_, _)) in ranked.iter().enumerate() {
            for (y, _) in ranked.iter().enumerate().skip(x + 1) {
                let (v, w) = (ranked[x].1[0], ranked[y].1[0]);
                if self.oriented(v, w) != EdgeLabelH::Plus {
                    return Err(not_solution("county order is not transitive"));
                }
            }
        }
        Ok(ranked.into_iter().map(|(_, c)| c).collect())
    }

    /// Parts for ordered counties: the first county is `First`.
    fn colours(&self, counties: &[Vec<usize>]) -> Result<Vec<Part>> {
        let mut parts = vec![Part::First; counties.len()];
        for y in 1..counties.len() {
            let l = self.label(counties[0][0], counties[y][0]);
            if matches!(l, EdgeLabelI::APlus | EdgeLabelI::AMinus) {
                parts[y] = Part::Second;
            }
        }
        for x in 0..counties.len() {
            for y in x + 1..counties.len() {
                for &v in &counties[x] {
                    for &w in &counties[y] {
                        let across = matches!(self.label(v, w), EdgeLabelI::APlus | EdgeLabelI::AMinus);
                        if across != (parts[x] != parts[y]) {
                            return Err(not_solution(format!("colouring fails at edge {v},{w}")));
                        }
                    }
                }
            }
        }
        Ok(parts)
    }
}

/// Nations: classes of the non-slash relation.
pub fn recover_nations(m: &MatchMatrix2) -> Result<Vec<Vec<usize>>> {
    Labelled::new(m)?.nations()
}

/// Counties within each nation: classes of the `0` relation.
pub fn recover_counties(m: &MatchMatrix2) -> Result<Vec<Vec<Vec<usize>>>> {
    let l = Labelled::new(m)?;
    l.nations()?.iter().map(|p| l.counties(p)).collect()
}

/// Counties of each nation in their order.
pub fn recover_order(m: &MatchMatrix2) -> Result<Vec<Vec<Vec<usize>>>> {
    let l = Labelled::new(m)?;
    l.nations()?.iter().map(|p| l.order(l.counties(p)?)).collect()
}

/// Parts of the ordered counties of each nation.
pub fn recover_colours(m: &MatchMatrix2) -> Result<Vec<Vec<Part>>> {
    let l = Labelled::new(m)?;
    l.nations()?
        .iter()
        .map(|p| l.colours(&l.order(l.counties(p)?)?))
        .collect()
}

/// The configuration and parameters of a solution. `rec` of the result is
/// X-equivalent to `m`.
pub fn classify(m: &MatchMatrix2) -> Result<(Configuration, ParamPoint)> {
    let l = Labelled::new(m)?;
    let nation_sets = l.nations()?;
    let mut params = ParamPoint::default();
    let mut nations = Vec::with_capacity(nation_sets.len());
    for (i, p) in nation_sets.iter().enumerate() {
        let ordered = l.order(l.counties(p)?)?;
        let parts = l.colours(&ordered)?;
        let alpha = m.vertex(ordered[0][0]).clone();
        if ordered.len() > 1 {
            let e = m.edge(ordered[0][0].min(ordered[1][0]), ordered[0][0].max(ordered[1][0]));
            let beta = &e.a + &e.d - &alpha;
            for (county, part) in ordered.iter().zip(&parts) {
                let expected = if *part == Part::First { &alpha } else { &beta };
                if county.iter().any(|&v| m.vertex(v) != expected) {
                    return Err(not_solution("vertex values disagree with county colours"));
                }
            }
            params.beta.insert(i, beta);
        } else if ordered[0].iter().any(|&v| m.vertex(v) != &alpha) {
            return Err(not_solution("vertex values differ within a county"));
        }
        params.alpha.insert(i, alpha);
        nations.push(Nation {
            counties: ordered
                .into_iter()
                .zip(parts)
                .map(|(vertices, part)| County { vertices, part })
                .collect(),
        });
    }
    for (i, p) in nation_sets.iter().enumerate() {
        for (j, q) in nation_sets.iter().enumerate().skip(i + 1) {
            let e = m.edge(p[0].min(q[0]), p[0].max(q[0]));
            let product = &e.b * &e.c;
            match rational_sqrt(&product) {
                Some(mu) => params.mu.insert((i, j), mu),
                None => params.mu_squared.insert((i, j), product),
            };
        }
    }
    let config = Configuration::new(m.n(), nations)?;
    params.validate(&config)?;
    Ok((config, params))
}

/// A relabelling of `c` in which every county occupies consecutive labels
/// of its nation's vertex set, in county order; no edge is then `−`.
pub fn no_minus_rep(c: &Configuration) -> (Configuration, Permutation) {
    let mut images = vec![0; c.n()];
    for nation in c.nations() {
        let mut slots: Vec<usize> = nation.vertices().collect();
        slots.sort_unstable();
        let mut slots = slots.into_iter();
        for county in &nation.counties {
            for &v in &county.vertices {
                images[v - 1] = slots.next().expect("same size");
            }
        }
    }
    let omega = Permutation::from_images(images).expect("bijection within nations");
    (configuration_perm(c, &omega), omega)
}

/// Orbits of `{0,/,+,−}³` under vertex relabelling and global sign flip,
/// each sorted, in order of their least element.
pub fn g3_orbits() -> Vec<Vec<TriangleType>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for t in TriangleType::all() {
        if seen.contains(&t) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for omega in Permutation::all(3) {
            let moved = t.permuted(&omega);
            orbit.insert(moved);
            orbit.insert(moved.flipped());
        }
        seen.extend(orbit.iter().copied());
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

/// Largest `n` accepted by [`orbit`].
pub const MAX_ORBIT_N: usize = 8;

/// Distinct normalized images of `c` under `Σ_n` (and the flip, if asked).
pub fn orbit(c: &Configuration, include_flip: bool) -> Result<BTreeSet<Configuration>> {
    if c.n() > MAX_ORBIT_N {
        return Err(Error::OrbitTooLarge(c.n()));
    }
    let perms: Vec<Permutation> = Permutation::all(c.n()).collect();
    let flipped = flip_configuration(c);
    Ok(perms
        .par_iter()
        .flat_map_iter(|omega| {
            let mut images = vec![configuration_perm(c, omega).normalized()];
            if include_flip {
                images.push(configuration_perm(&flipped, omega).normalized());
            }
            images
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{enumerate_labelled, enumerate_transversal};
    use crate::matchcat::{act_perm, x_equivalent, EdgeBlock};
    use crate::recipe::{generic_point, rec, Germ};
    use crate::scalar::int;

    fn t(s: &str) -> TriangleType {
        s.parse().unwrap()
    }

    fn rec_at(c: &Configuration, seed: u64) -> MatchMatrix2 {
        rec(&Germ::new(c.clone(), generic_point(c, seed)).unwrap())
    }

    #[test]
    fn labels_of_standard_blocks() {
        let m = MatchMatrix2::new(vec![int(2), int(7)], vec![EdgeBlock::slash(int(3))]).unwrap();
        assert_eq!(label_edge(&m, 1, 2).unwrap(), EdgeLabelI::Slash);
        let plus = EdgeBlock::new(int(5), int(-6), int(1), int(0));
        let m = MatchMatrix2::new(vec![int(2), int(2)], vec![plus.clone()]).unwrap();
        assert_eq!(label_edge(&m, 1, 2).unwrap(), EdgeLabelI::FPlus);
        let m = MatchMatrix2::new(vec![int(2), int(3)], vec![plus]).unwrap();
        assert_eq!(label_edge(&m, 1, 2).unwrap(), EdgeLabelI::APlus);
        let m = MatchMatrix2::new(vec![int(2), int(3)], vec![EdgeBlock::new(int(1), int(1), int(0), int(0))]).unwrap();
        assert_eq!(label_edge(&m, 1, 2), Err(Error::InadmissibleEdge(1, 2)));
    }

    #[test]
    fn six_rule_examples() {
        assert!(six_rule_check(&t("+++")));
        assert!(!six_rule_check(&t("+-+")));
        assert!(!six_rule_check(&t("+0+")));
        assert!(six_rule_check(&t("00+")));
    }

    #[test]
    fn realised_triangle_types() {
        let mut from_solutions = BTreeSet::new();
        for c in enumerate_labelled(3) {
            let m = rec_at(&c, 2);
            assert!(admissible(&m));
            from_solutions.insert(triangle_type(&m, 1, 2, 3).unwrap());
        }
        let realisable: BTreeSet<TriangleType> =
            TriangleType::all().into_iter().filter(triangle_realisable).collect();
        assert_eq!(from_solutions, realisable);
        assert_eq!(realisable.len(), 23);
    }

    #[test]
    fn slash_plus_plus_is_inadmissible() {
        let plus = EdgeBlock::new(int(5), int(-6), int(1), int(0));
        let m = MatchMatrix2::new(
            vec![int(2), int(2), int(2)],
            vec![EdgeBlock::slash(int(3)), plus.clone(), plus],
        )
        .unwrap();
        assert!(invertible(&m));
        assert!(!admissible(&m));
        assert!(admissible(&MatchMatrix2::scalar_identity(3, int(1))));
    }

    #[test]
    fn orbit_rows() {
        let orbits = g3_orbits();
        assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), 64);
        let find = |x: &str| orbits.iter().find(|o| o.contains(&t(x))).unwrap().clone();
        assert_eq!(find("///"), vec![t("///")]);
        assert_eq!(find("000"), vec![t("000")]);
        let mut row: Vec<_> = ["00/", "0/0", "/00"].map(t).to_vec();
        row.sort();
        assert_eq!(find("00/"), row);
    }

    fn as_set(row: &[&str]) -> Vec<TriangleType> {
        let mut v: Vec<_> = row.iter().map(|x| t(x)).collect();
        v.sort();
        v
    }

    #[test]
    fn table_rows_are_orbits() {
        let orbits = g3_orbits();
        let rows: [&[&str]; 9] = [
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
        for row in rows {
            assert!(orbits.contains(&as_set(row)), "{row:?}");
        }
    }

    #[test]
    fn decorated_rows_match_without_decorations() {
        let orbits = g3_orbits();
        let rows: [&[&str]; 3] = [
            &["/--", "/++", "-/+", "+/-", "++/", "--/"],
            &["---", "+++", "+--", "-++", "--+", "++-"],
            &["0--", "0++", "+0-", "-0+", "++0", "--0"],
        ];
        for row in rows {
            assert!(orbits.contains(&as_set(row)), "{row:?}");
        }
        let partial = as_set(&["0/+", "0/-", "0+/", "0-/", "/0-", "/0+", "-0/"]);
        let row = orbits.iter().find(|o| o.contains(&partial[0])).unwrap();
        assert!(partial.iter().all(|x| row.contains(x)));
        assert_eq!(row.len(), 12);
        assert_eq!(orbits.len(), 13);
    }

    #[test]
    fn recoveries_on_examples() {
        let m = MatchMatrix2::new(
            vec![int(1), int(2), int(3)],
            vec![EdgeBlock::slash(int(2)), EdgeBlock::slash(int(5)), EdgeBlock::slash(int(7))],
        )
        .unwrap();
        assert_eq!(recover_nations(&m).unwrap(), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(recover_counties(&m).unwrap(), vec![vec![vec![1]], vec![vec![2]], vec![vec![3]]]);
        let id = MatchMatrix2::scalar_identity(4, int(3));
        assert_eq!(recover_nations(&id).unwrap(), vec![vec![1, 2, 3, 4]]);
        assert_eq!(recover_counties(&id).unwrap(), vec![vec![vec![1, 2, 3, 4]]]);
        assert_eq!(recover_colours(&id).unwrap(), vec![vec![Part::First]]);
        let (c, p) = classify(&id).unwrap();
        assert_eq!(c.nations().len(), 1);
        assert_eq!(p.alpha[&0], int(3));
    }

    #[test]
    fn round_trip_on_transversal() {
        for n in 1..=5 {
            for c in enumerate_transversal(n) {
                let g = Germ::new(c.clone(), generic_point(&c, n as u64)).unwrap();
                let m = rec(&g);
                let (c2, p2) = classify(&m).unwrap();
                assert_eq!(c2, c);
                assert!(x_equivalent(&rec(&Germ::new(c2, p2).unwrap()), &m));
            }
        }
    }

    #[test]
    fn round_trip_on_labelled() {
        for c in enumerate_labelled(4) {
            let m = rec_at(&c, 6);
            let (c2, p2) = classify(&m).unwrap();
            assert_eq!(c2, c.normalized());
            assert!(x_equivalent(&rec(&Germ::new(c2, p2).unwrap()), &m));
        }
    }

    #[test]
    fn classify_is_equivariant() {
        for c in enumerate_transversal(4) {
            let m = rec_at(&c, 8);
            for omega in Permutation::all(4) {
                let (c2, _) = classify(&act_perm(&m, &omega)).unwrap();
                assert_eq!(c2, configuration_perm(&c, &omega).normalized());
            }
        }
    }

    #[test]
    fn reversed_pair_order() {
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
        let m = rec_at(&c, 1);
        assert_eq!(recover_order(&m).unwrap(), vec![vec![vec![2], vec![1]]]);
        let (d, omega) = no_minus_rep(&c);
        assert_eq!(omega, Permutation::transposition(2, 1, 2));
        assert_eq!(d.nations()[0].counties[0].vertices, vec![1]);
    }

    #[test]
    fn no_minus_representatives() {
        for c in enumerate_transversal(5) {
            let (d, omega) = no_minus_rep(&c);
            assert_eq!(d, c);
            assert!(omega.is_identity());
        }
        for c in enumerate_labelled(4) {
            let (d, omega) = no_minus_rep(&c);
            assert_eq!(configuration_perm(&c, &omega), d);
            let labels = label_edges(&rec_at(&d, 3)).unwrap();
            assert!(labels.values().all(|l| !matches!(l, EdgeLabelI::FMinus | EdgeLabelI::AMinus)));
        }
    }

    #[test]
    fn orbits_cover_labelled_configurations() {
        for n in 1..=4 {
            let mut union = BTreeSet::new();
            for c in enumerate_transversal(n) {
                let o = orbit(&c, false).unwrap();
                assert_eq!((1..=n).product::<usize>() % o.len(), 0);
                union.extend(o);
            }
            let all: BTreeSet<Configuration> = enumerate_labelled(n).into_iter().collect();
            assert_eq!(union, all);
        }
        let big = enumerate_transversal(9).swap_remove(0);
        assert_eq!(orbit(&big, false), Err(Error::OrbitTooLarge(9)));
    }
}
