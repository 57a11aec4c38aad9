//! Exact spectra and their degeneracy partitions, with the closed-form
//! prediction from a configuration.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_integer::binomial;
use serde::Serialize;

use crate::diagrams::Configuration;
use crate::error::{Error, Result};
use crate::matchcat::MatchMatrix2;
use crate::recipe::{rec, Germ};
use crate::scalar::{format_scalar, int, rational_sqrt, Scalar};

/// A partition of `N²`: eigenvalue multiplicities, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Signature {
    parts: Vec<usize>,
}

impl Signature {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Signature { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// Eigenvalues with multiplicity, sorted. Vertex scalars contribute
/// themselves; each block contributes `(tr ± √(tr² − 4 det)) / 2`.
pub fn spectrum(m: &MatchMatrix2) -> Result<Vec<Scalar>> {
    let mut out: Vec<Scalar> = m.vertices().to_vec();
    for (_, e) in m.edges() {
        let (tr, det) = (e.trace(), e.det());
        let disc = &tr * &tr - int(4) * &det;
        let r = rational_sqrt(&disc).ok_or_else(|| Error::IrrationalSpectrum {
            trace: format_scalar(&tr),
            det: format_scalar(&det),
        })?;
        let half = Scalar::new(1.into(), 2.into());
        out.push((&tr + &r) * &half);
        out.push((&tr - &r) * &half);
    }
    out.sort();
    Ok(out)
}

pub fn degeneracy_partition(spectrum: &[Scalar]) -> Signature {
    let mut counts: BTreeMap<&Scalar, usize> = BTreeMap::new();
    for x in spectrum {
        *counts.entry(x).or_default() += 1;
    }
    Signature::new(counts.into_values().collect())
}

/// Per-nation and between-nation contributions to the generic signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureParts {
    /// `ν_i` for each nation, in configuration order.
    pub nations: Vec<Vec<usize>>,
    /// `φ`: two parts `N_i N_j` per nation pair.
    pub slash: Vec<usize>,
}

impl SignatureParts {
    pub fn flatten(&self) -> Signature {
        Signature::new(self.nations.iter().flatten().chain(&self.slash).copied().collect())
    }

    /// `(ν_1; …; ν_m : φ)`, omitting `: φ` when there is one nation.
    pub fn notation(&self) -> String {
        let nations = self.nations.iter().map(|nu| nu.iter().join(",")).join(";");
        if self.slash.is_empty() {
            format!("({nations})")
        } else {
            let mut slash = self.slash.clone();
            slash.sort_unstable_by(|a, b| b.cmp(a));
            format!("({nations}:{})", slash.iter().join(","))
        }
    }
}

/// Generic eigenvalue multiplicities predicted from the configuration.
///
/// A nation of size `N_i` has eigenvalue `α` with multiplicity
/// `C(N_i,2) + #0₁ − #0₂ + |s₁|` and `β` with `C(N_i,2) + #0₂ − #0₁ + |s₂|`,
/// where `#0_k` counts pairs of vertices sharing a county of colour `k`
/// and `s_k` the vertices of colour `k`. Every inter-county edge
/// contributes one `α` and one `β`; every intra-county edge two copies of
/// its county's value.
pub fn signature_parts(c: &Configuration) -> SignatureParts {
    let sizes: Vec<usize> = c.nations().iter().map(|n| n.size()).collect();
    let nations = c
        .nations()
        .iter()
        .map(|nation| {
            let first = nation.counties[0].part;
            let mut zeros = [0usize; 2];
            let mut verts = [0usize; 2];
            for county in &nation.counties {
                let k = usize::from(county.part != first);
                zeros[k] += binomial(county.vertices.len(), 2);
                verts[k] += county.vertices.len();
            }
            let pairs = binomial(nation.size(), 2);
            let nu = [
                pairs + zeros[0] + verts[0] - zeros[1],
                pairs + zeros[1] + verts[1] - zeros[0],
            ];
            let mut nu: Vec<usize> = nu.into_iter().filter(|&x| x > 0).collect();
            nu.sort_unstable_by(|a, b| b.cmp(a));
            nu
        })
        .collect();
    let slash = sizes
        .iter()
        .tuple_combinations()
        .flat_map(|(a, b)| [a * b, a * b])
        .collect();
    SignatureParts { nations, slash }
}

pub fn signature_formula(c: &Configuration) -> Signature {
    signature_parts(c).flatten()
}

/// Formula versus the partition actually observed at a germ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureCheck {
    pub formula: Signature,
    pub observed: Signature,
    pub notation: String,
}

impl SignatureCheck {
    pub fn agrees(&self) -> bool {
        self.formula == self.observed
    }
}

/// Compares the formula with the spectrum of `rec(g)`. Off the generic
/// locus a mismatch is expected and simply reported.
pub fn signature_check(g: &Germ) -> Result<SignatureCheck> {
    let observed = degeneracy_partition(&spectrum(&rec(g))?);
    let parts = signature_parts(g.config());
    Ok(SignatureCheck { formula: parts.flatten(), observed, notation: parts.notation() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{
        configuration_perm, enumerate_transversal, flip_configuration, one_nation_from_edge_word, County, Nation, Part,
    };
    use crate::matchcat::EdgeBlock;
    use crate::perm::Permutation;
    use crate::recipe::{generic_point, ParamPoint};

    fn sig(p: &[usize]) -> Signature {
        Signature::new(p.to_vec())
    }

    fn one_nation(n: usize, word: &str) -> Configuration {
        one_nation_from_edge_word(n, word).unwrap()
    }

    fn singles(n: usize, sizes: &[usize]) -> Configuration {
        let mut next = 1;
        let nations = sizes
            .iter()
            .map(|&s| {
                let vertices: Vec<usize> = (next..next + s).collect();
                next += s;
                Nation { counties: vec![County { vertices, part: Part::First }] }
            })
            .collect();
        Configuration::new(n, nations).unwrap()
    }

    /// Two singleton counties in one nation, plus a singleton nation.
    fn pair_and_single(second: Part) -> Configuration {
        let county = |v, part| County { vertices: vec![v], part };
        Configuration::new(
            3,
            vec![
                Nation { counties: vec![county(1, Part::First), county(2, second)] },
                Nation { counties: vec![county(3, Part::First)] },
            ],
        )
        .unwrap()
    }

    #[test]
    fn spectra_of_blocks() {
        let m = MatchMatrix2::new(vec![int(2), int(5)], vec![EdgeBlock::slash(int(3))]).unwrap();
        assert_eq!(spectrum(&m).unwrap(), vec![int(-3), int(2), int(3), int(5)]);
        let plus = EdgeBlock::new(int(5), int(-6), int(1), int(0));
        let m = MatchMatrix2::new(vec![int(2), int(2)], vec![plus]).unwrap();
        assert_eq!(spectrum(&m).unwrap(), vec![int(2), int(2), int(2), int(3)]);
        let m = MatchMatrix2::scalar_identity(2, int(4));
        assert_eq!(spectrum(&m).unwrap(), vec![int(4); 4]);
        let m = MatchMatrix2::new(vec![int(2), int(5)], vec![EdgeBlock::new(int(0), int(2), int(1), int(0))]).unwrap();
        assert!(matches!(spectrum(&m), Err(Error::IrrationalSpectrum { .. })));
    }

    #[test]
    fn partitions() {
        assert_eq!(degeneracy_partition(&[int(2), int(5), int(3), int(-3)]), sig(&[1, 1, 1, 1]));
        assert_eq!(degeneracy_partition(&vec![int(7); 9]), sig(&[9]));
        assert_eq!(degeneracy_partition(&[int(1), int(2), int(1), int(1)]), sig(&[3, 1]));
    }

    #[test]
    fn rank_three_table() {
        let cases = [
            (one_nation(3, "000"), "(9)"),
            (one_nation(3, "0aa"), "(6,3)"),
            (one_nation(3, "0ff"), "(7,2)"),
            (one_nation(3, "afa"), "(5,4)"),
            (one_nation(3, "faa"), "(5,4)"),
            (one_nation(3, "fff"), "(6,3)"),
            (singles(3, &[2, 1]), "(4;1:2,2)"),
            (pair_and_single(Part::First), "(3,1;1:2,2)"),
            (pair_and_single(Part::Second), "(2,2;1:2,2)"),
            (singles(3, &[1, 1, 1]), "(1;1;1:1,1,1,1,1,1)"),
        ];
        for (c, notation) in cases {
            assert_eq!(signature_parts(&c).notation(), notation, "{c:?}");
        }
    }

    #[test]
    fn rank_four_table() {
        for (word, parts) in [
            ("000000", vec![16]),
            ("000aaa", vec![12, 4]),
            ("000fff", vec![13, 3]),
            ("0aaaa0", vec![8, 8]),
            ("0ffff0", vec![12, 4]),
            ("aa0faa", vec![9, 7]),
            ("aa0aff", vec![10, 6]),
            ("ff0aaa", vec![10, 6]),
            ("ff0fff", vec![11, 5]),
            ("faaaaf", vec![8, 8]),
            ("fffaaa", vec![9, 7]),
            ("ffffff", vec![10, 6]),
        ] {
            let c = one_nation(4, word);
            assert_eq!(signature_formula(&c), Signature::new(parts), "{word}");
            let g = Germ::new(c.clone(), generic_point(&c, 3)).unwrap();
            assert!(signature_check(&g).unwrap().agrees(), "{word}");
        }
        assert_eq!(signature_parts(&singles(4, &[3, 1])).notation(), "(9;1:3,3)");
        assert_eq!(signature_parts(&singles(4, &[2, 2])).notation(), "(4;4:4,4)");
    }

    #[test]
    fn formula_matches_spectra() {
        for n in 1..=4 {
            for c in enumerate_transversal(n) {
                for seed in 0..3 {
                    let g = Germ::new(c.clone(), generic_point(&c, seed)).unwrap();
                    let check = signature_check(&g).unwrap();
                    assert!(check.agrees(), "{c:?}: {check:?}");
                }
            }
        }
    }

    #[test]
    fn rank_two_list() {
        let sigs: Vec<Signature> = enumerate_transversal(2).iter().map(signature_formula).collect();
        for s in [sig(&[4]), sig(&[3, 1]), sig(&[2, 2]), sig(&[1, 1, 1, 1])] {
            assert!(sigs.contains(&s), "{s}");
        }
    }

    #[test]
    fn sums_and_symmetry() {
        for n in 1..=7 {
            for c in enumerate_transversal(n) {
                let s = signature_formula(&c);
                assert_eq!(s.total(), n * n);
                assert_eq!(signature_formula(&flip_configuration(&c)), s);
                if n <= 4 {
                    for omega in Permutation::all(n) {
                        assert_eq!(signature_formula(&configuration_perm(&c, &omega)), s);
                    }
                }
            }
        }
    }

    #[test]
    fn collision_is_reported() {
        let c = singles(2, &[1, 1]);
        let mut p = ParamPoint::default();
        p.alpha.insert(0, int(3));
        p.alpha.insert(1, int(5));
        p.mu.insert((0, 1), int(3));
        let check = signature_check(&Germ::new(c, p).unwrap()).unwrap();
        assert!(!check.agrees());
        assert_eq!(check.observed, sig(&[2, 1, 1]));
    }
}
