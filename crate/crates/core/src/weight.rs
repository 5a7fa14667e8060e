//! Lee and Hamming weight enumerators, the MacWilliams transform, power
//! moments and per-column value profiles.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::code::{AdditiveCode, BitWord};
use crate::error::{Error, Result};
use crate::ring::RingElem;

/// Exact weight distribution `{i -> A_i}` of a code of Gray length `N`.
///
/// Only nonzero counts are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeEnumerator {
    big_n: usize,
    counts: BTreeMap<usize, u128>,
}

impl LeeEnumerator {
    pub fn new(big_n: usize, counts: impl IntoIterator<Item = (usize, u128)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, c) in counts {
            if w > big_n {
                return Err(Error::PreconditionViolation(format!("weight {w} exceeds N = {big_n}")));
            }
            if c > 0 {
                *map.entry(w).or_insert(0) += c;
            }
        }
        Ok(LeeEnumerator { big_n, counts: map })
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn count(&self, weight: usize) -> u128 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    /// Nonzero `(weight, count)` pairs in increasing weight.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u128)> + '_ {
        self.counts.iter().map(|(&w, &c)| (w, c))
    }

    /// `A_0, ..., A_N`.
    pub fn dense(&self) -> Vec<u128> {
        (0..=self.big_n).map(|w| self.count(w)).collect()
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    /// Weights other than 0 that occur.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    /// Smallest nonzero weight present.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    /// `x^N + A x^(N-m) y^m + ...`, increasing y-degree, unit coefficients
    /// and exponents omitted.
    pub fn to_polynomial(&self) -> String {
        let power = |var: &str, e: usize| match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        let terms: Vec<String> = self
            .iter()
            .map(|(w, c)| {
                let monomial = format!("{}{}", power("x", self.big_n - w), power("y", w));
                match (c, monomial.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => monomial,
                    _ => format!("{c}{monomial}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("enumerator serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

impl fmt::Display for LeeEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_polynomial())
    }
}

#[derive(Serialize, Deserialize)]
struct EnumeratorJson {
    #[serde(rename = "N")]
    big_n: usize,
    counts: Vec<(usize, u128)>,
}

impl Serialize for LeeEnumerator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EnumeratorJson {
            big_n: self.big_n,
            counts: self.iter().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LeeEnumerator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = EnumeratorJson::deserialize(d)?;
        LeeEnumerator::new(raw.big_n, raw.counts).map_err(D::Error::custom)
    }
}

/// Lee weight distribution of a code.
pub fn lee_enumerator(code: &AdditiveCode) -> LeeEnumerator {
    let mut dense = vec![0u128; code.shape().big_n() + 1];
    for c in code.codewords() {
        dense[c.lee_weight() as usize] += 1;
    }
    LeeEnumerator::new(code.shape().big_n(), dense.into_iter().enumerate()).expect("weights bounded by N")
}

/// Hamming weight distribution of a set of equal-length binary words.
pub fn hamming_enumerator(words: &[BitWord]) -> Result<LeeEnumerator> {
    let first = words
        .first()
        .ok_or_else(|| Error::PreconditionViolation("empty word set".into()))?;
    let n = first.len();
    let mut dense = vec![0u128; n + 1];
    for w in words {
        if w.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: w.len(),
            });
        }
        dense[w.weight() as usize] += 1;
    }
    LeeEnumerator::new(n, dense.into_iter().enumerate())
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::one(); i + 1];
        for k in 1..i {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

fn power_of_two_log(x: u128) -> Option<usize> {
    x.is_power_of_two().then(|| x.trailing_zeros() as usize)
}

/// Dual distribution `{B_j}` from `{A_i}` via
/// `sum_i A_i (x+y)^(N-i) (x-y)^i = |C| · sum_j B_j x^(N-j) y^j`.
pub fn macwilliams(enumerator: &LeeEnumerator, code_size: u128) -> Result<LeeEnumerator> {
    let n = enumerator.big_n;
    if enumerator.total() != code_size {
        return Err(Error::PreconditionViolation(format!(
            "code size {code_size} differs from the enumerator total {}",
            enumerator.total()
        )));
    }
    match power_of_two_log(code_size) {
        Some(k) if k <= n => {}
        _ => {
            return Err(Error::PreconditionViolation(format!("code size {code_size} does not divide 2^{n}")));
        }
    }
    let binom = binomials(n);
    let size = BigInt::from(code_size);
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = BigInt::zero();
        for (i, a) in enumerator.iter() {
            // coefficient of x^(N-j) y^j in (x+y)^(N-i) (x-y)^i
            let mut kraw = BigInt::zero();
            for k in j.saturating_sub(n - i)..=i.min(j) {
                let term = &binom[i][k] * &binom[n - i][j - k];
                if k % 2 == 0 {
                    kraw += term;
                } else {
                    kraw -= term;
                }
            }
            acc += kraw * BigInt::from(a);
        }
        if acc.is_negative() || !(&acc % &size).is_zero() {
            return Err(Error::NonIntegralTransform(format!("coefficient of weight {j} is {acc}/{code_size}")));
        }
        let b = (acc / &size)
            .to_u128()
            .ok_or_else(|| Error::NonIntegralTransform(format!("coefficient of weight {j} overflows")))?;
        out.push((j, b));
    }
    LeeEnumerator::new(n, out)
}

/// Outcome of the three power-moment identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerMoments {
    /// `sum A_i = |C|` and `|C|` divides `2^N`.
    pub cardinality: bool,
    /// `sum i·A_i = (|C|/2)(N - B_1)`.
    pub first_moment: bool,
    /// `sum i^2·A_i = (|C|/2)(N(N+1)/2 - N·B_1 + B_2)`.
    pub second_moment: bool,
}

impl PowerMoments {
    pub fn all(&self) -> bool {
        self.cardinality && self.first_moment && self.second_moment
    }
}

pub fn power_moments(enumerator: &LeeEnumerator, code_size: u128, b1: u128, b2: u128) -> PowerMoments {
    let n = enumerator.big_n as i128;
    let size = code_size as i128;
    let (b1, b2) = (b1 as i128, b2 as i128);
    let (mut s1, mut s2) = (0i128, 0i128);
    for (w, c) in enumerator.iter() {
        let (w, c) = (w as i128, c as i128);
        s1 += w * c;
        s2 += w * w * c;
    }
    PowerMoments {
        cardinality: enumerator.total() == code_size
            && power_of_two_log(code_size).is_some_and(|k| k <= enumerator.big_n),
        first_moment: 2 * s1 == size * (n - b1),
        second_moment: 4 * s2 == size * (n * (n + 1) - 2 * n * b1 + 2 * b2),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BinaryColumnKind {
    Balanced,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RingColumnKind {
    /// Takes `0, 1, u, 1+u` equally often.
    Full,
    /// Takes `0` and `u` equally often.
    Half,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryColumn {
    pub kind: BinaryColumnKind,
    /// Occurrences of 0 and 1.
    pub counts: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingColumn {
    pub kind: RingColumnKind,
    /// Occurrences of `0, 1, u, 1+u`.
    pub counts: [usize; 4],
}

impl RingColumn {
    /// Sum of Lee weights down the column.
    pub fn weight_sum(&self) -> usize {
        RingElem::ALL
            .iter()
            .zip(self.counts)
            .map(|(r, c)| r.lee_weight() as usize * c)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnProfile {
    pub binary: Vec<BinaryColumn>,
    pub ring: Vec<RingColumn>,
    /// Number of [`RingColumnKind::Full`] columns.
    pub n1: usize,
}

impl ColumnProfile {
    pub fn has_zero_columns(&self) -> bool {
        self.binary.iter().any(|c| c.kind == BinaryColumnKind::Zero) || self.ring.iter().any(|c| c.kind == RingColumnKind::Zero)
    }
}

pub fn column_profile(code: &AdditiveCode) -> ColumnProfile {
    let shape = code.shape();
    let mut bin = vec![[0usize; 2]; shape.alpha()];
    let mut ring = vec![[0usize; 4]; shape.beta()];
    for c in code.codewords() {
        for (i, counts) in bin.iter_mut().enumerate() {
            counts[c.bin(i) as usize] += 1;
        }
        for (j, counts) in ring.iter_mut().enumerate() {
            counts[c.ring(j).index() as usize] += 1;
        }
    }
    let binary: Vec<BinaryColumn> = bin
        .into_iter()
        .map(|counts| BinaryColumn {
            kind: if counts[1] == 0 {
                BinaryColumnKind::Zero
            } else {
                BinaryColumnKind::Balanced
            },
            counts,
        })
        .collect();
    let ring: Vec<RingColumn> = ring
        .into_iter()
        .map(|counts| RingColumn {
            kind: if counts[1] + counts[3] > 0 {
                RingColumnKind::Full
            } else if counts[2] > 0 {
                RingColumnKind::Half
            } else {
                RingColumnKind::Zero
            },
            counts,
        })
        .collect();
    let n1 = ring.iter().filter(|c| c.kind == RingColumnKind::Full).count();
    ColumnProfile { binary, ring, n1 }
}

/// `sum_{c in C} w_L(c) == (|C|/2)(alpha + 2·beta)`; requires a code without
/// all-zero columns.
pub fn weight_sum_identity(code: &AdditiveCode) -> Result<bool> {
    let (zb, zr) = code.zero_columns();
    if !(zb.is_empty() && zr.is_empty()) {
        return Err(Error::ZeroColumnPresent(format!("binary {zb:?}, ring {zr:?}")));
    }
    let total: u128 = code.codewords().iter().map(|c| c.lee_weight() as u128).sum();
    Ok(2 * total == code.cardinality() as u128 * code.shape().big_n() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{span, AmbientShape, MixedVector};
    use crate::matrix_file::parse_matrix;

    fn code(text: &str) -> AdditiveCode {
        let m = parse_matrix(text).unwrap();
        span(m.shape, &m.rows).unwrap()
    }

    fn en(n: usize, pairs: &[(usize, u128)]) -> LeeEnumerator {
        LeeEnumerator::new(n, pairs.iter().copied()).unwrap()
    }

    const EX36: &str = "1 1 1 0 0 0 1 | u\n0 0 0 1 1 1 1 | u\n";

    #[test]
    fn enumerator_of_small_codes() {
        let e = lee_enumerator(&code(EX36));
        assert_eq!(e, en(9, &[(0, 1), (6, 3)]));
        assert_eq!(e.to_polynomial(), "x^9 + 3x^3y^6");
        let z = lee_enumerator(&AdditiveCode::zero(AmbientShape::new(2, 1).unwrap()));
        assert_eq!(z, en(4, &[(0, 1)]));
    }

    #[test]
    fn polynomial_rendering() {
        assert_eq!(en(2, &[(0, 1), (1, 1)]).to_polynomial(), "x^2 + xy");
        assert_eq!(en(1, &[(0, 1), (1, 1)]).to_polynomial(), "x + y");
        assert_eq!(en(16, &[(0, 1), (8, 30), (16, 1)]).to_polynomial(), "x^16 + 30x^8y^8 + y^16");
        assert_eq!(en(2, &[(0, 1), (2, 1)]).to_polynomial(), "x^2 + y^2");
    }

    #[test]
    fn json_shape() {
        let e = en(9, &[(0, 1), (6, 3)]);
        assert_eq!(e.to_json(), r#"{"N":9,"counts":[[0,1],[6,3]]}"#);
        assert_eq!(LeeEnumerator::from_json(&e.to_json()).unwrap(), e);
        assert!(LeeEnumerator::from_json(r#"{"N":2,"counts":[[3,1]]}"#).is_err());
    }

    #[test]
    fn hamming_enumerator_checks_lengths() {
        let words = [BitWord::from_bits(&[0, 0, 0]), BitWord::from_bits(&[1, 1, 0])];
        assert_eq!(hamming_enumerator(&words).unwrap(), en(3, &[(0, 1), (2, 1)]));
        let bad = [BitWord::from_bits(&[0, 0]), BitWord::from_bits(&[1, 1, 0])];
        assert!(matches!(hamming_enumerator(&bad), Err(Error::LengthMismatch { .. })));
        assert!(hamming_enumerator(&[]).is_err());
        assert_eq!(hamming_enumerator(&[BitWord::from_bits(&[0, 0])]).unwrap(), en(2, &[(0, 1)]));
    }

    #[test]
    fn macwilliams_examples() {
        let b = macwilliams(&en(16, &[(0, 1), (8, 30), (16, 1)]), 32).unwrap();
        assert_eq!(b, en(16, &[(0, 1), (4, 140), (6, 448), (8, 870), (10, 448), (12, 140), (16, 1)]));
        assert_eq!(macwilliams(&en(2, &[(0, 1)]), 1).unwrap(), en(2, &[(0, 1), (1, 2), (2, 1)]));
        let b = macwilliams(&en(14, &[(0, 1), (7, 8), (8, 7)]), 16).unwrap();
        let want = [(0, 1), (3, 28), (4, 77), (5, 112), (6, 168), (7, 232), (8, 203), (9, 112), (10, 56), (11, 28), (12, 7)];
        assert_eq!(b, en(14, &want));
        assert_eq!(b.total(), 1024);
    }

    #[test]
    fn macwilliams_rejects_invalid_input() {
        assert!(matches!(macwilliams(&en(3, &[(0, 1), (1, 1), (2, 2)]), 4), Err(Error::NonIntegralTransform(_))));
        assert!(matches!(macwilliams(&en(3, &[(0, 1), (1, 1)]), 4), Err(Error::PreconditionViolation(_))));
        assert!(matches!(macwilliams(&en(2, &[(0, 1), (1, 2)]), 3), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn power_moment_examples() {
        let a = en(14, &[(0, 1), (7, 8), (8, 7)]);
        assert!(power_moments(&a, 16, 0, 0).all());
        let a = en(14, &[(0, 1), (8, 7)]);
        let b = macwilliams(&a, 8).unwrap();
        assert_eq!(b.count(1), 0);
        let pm = power_moments(&a, 8, b.count(1), b.count(2));
        assert!(pm.all());
        assert!(!power_moments(&a, 8, 1, b.count(2)).first_moment);
        let z = en(5, &[(0, 1)]);
        assert!(power_moments(&z, 1, 5, 10).all());
    }

    #[test]
    fn column_profiles() {
        let c = code(EX36);
        let p = column_profile(&c);
        assert_eq!(p.ring[0].kind, RingColumnKind::Half);
        assert_eq!(p.ring[0].counts, [2, 0, 2, 0]);
        assert_eq!(p.n1, 0);
        assert!(p.binary.iter().all(|b| b.kind == BinaryColumnKind::Balanced && b.counts == [2, 2]));

        let z = column_profile(&AdditiveCode::zero(AmbientShape::new(2, 2).unwrap()));
        assert!(z.binary.iter().all(|b| b.kind == BinaryColumnKind::Zero));
        assert!(z.ring.iter().all(|r| r.kind == RingColumnKind::Zero));
        assert_eq!(z.n1, 0);

        let c = code("1 0 | v u\n0 1 | u 0\n");
        let p = column_profile(&c);
        assert_eq!(p.ring[0].kind, RingColumnKind::Full);
        let q = c.cardinality() / 4;
        assert_eq!(p.ring[0].counts, [q, q, q, q]);
        assert_eq!(p.ring[0].weight_sum(), c.cardinality());
        assert_eq!(p.n1, 1);
    }

    #[test]
    fn weight_sum_examples() {
        assert!(weight_sum_identity(&code(EX36)).unwrap());
        let s = AmbientShape::new(1, 1).unwrap();
        let rep = span(s, &[MixedVector::ones_u(s)]).unwrap();
        assert!(weight_sum_identity(&rep).unwrap());
        let zc = code("1 0 | u\n");
        assert!(matches!(weight_sum_identity(&zc), Err(Error::ZeroColumnPresent(_))));
    }
}
