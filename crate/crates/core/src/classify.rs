//! Weight-class predicates and mechanical checks of the one- and two-weight
//! structure results.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::code::{dual_brute, min_lee_weight, AdditiveCode, AmbientShape, MixedVector, DUAL_BRUTE_LIMIT};
use crate::error::{Error, Result};
use crate::standard_form::type_of;
use crate::weight::{lee_enumerator, macwilliams, LeeEnumerator};

/// Largest Gray length at which the dual enumerator is computed both ways.
pub const CROSS_CHECK_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    pub nonzero_weights: Vec<usize>,
    pub counts: Vec<u128>,
    /// `2m/|C|` for a one-weight code when integral.
    pub lambda: Option<u64>,
    /// `alpha + 2·beta == lambda(|C| - 1)`, for one-weight codes with integral lambda.
    pub length_relation_holds: Option<bool>,
    pub m1: Option<usize>,
    pub m2: Option<usize>,
    pub has_zero_columns: bool,
}

impl WeightProfile {
    pub fn is_one_weight(&self) -> bool {
        self.nonzero_weights.len() == 1
    }

    pub fn is_two_weight(&self) -> bool {
        self.nonzero_weights.len() == 2
    }
}

pub fn weight_profile(code: &AdditiveCode) -> Result<WeightProfile> {
    if code.cardinality() < 2 {
        return Err(Error::TrivialCode);
    }
    let e = lee_enumerator(code);
    Ok(profile_from_enumerator(&e, code.cardinality() as u128, code.has_zero_columns()))
}

fn profile_from_enumerator(e: &LeeEnumerator, size: u128, has_zero_columns: bool) -> WeightProfile {
    let nonzero_weights = e.nonzero_weights();
    let counts = nonzero_weights.iter().map(|&w| e.count(w)).collect();
    let (mut lambda, mut length_relation_holds, mut m1, mut m2) = (None, None, None, None);
    match *nonzero_weights.as_slice() {
        [m] => {
            if (2 * m as u128).is_multiple_of(size) {
                let l = (2 * m as u128 / size) as u64;
                lambda = Some(l);
                length_relation_holds = Some(e.big_n() as u128 == l as u128 * (size - 1));
            } else {
                length_relation_holds = Some(false);
            }
        }
        [a, b] => {
            m1 = Some(a);
            m2 = Some(b);
        }
        _ => {}
    }
    WeightProfile {
        nonzero_weights,
        counts,
        lambda,
        length_relation_holds,
        m1,
        m2,
        has_zero_columns,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DualSource {
    Brute,
    Macwilliams,
}

/// Weight distribution of `C⊥` and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualDistribution {
    pub enumerator: LeeEnumerator,
    pub size: u128,
    pub source: DualSource,
    /// Both computations ran and agreed.
    pub cross_checked: bool,
}

impl DualDistribution {
    pub fn min_weight(&self) -> Option<usize> {
        self.enumerator.min_nonzero_weight()
    }
}

/// Brute force when the ambient space is scannable, the transform otherwise;
/// both (and compared) up to [`CROSS_CHECK_LIMIT`].
pub fn dual_distribution(code: &AdditiveCode) -> Result<DualDistribution> {
    let n = code.shape().big_n();
    let size = code.cardinality() as u128;
    let dual_size = 1u128 << (n - code.dimension());
    let brute = if n <= DUAL_BRUTE_LIMIT {
        match dual_brute(code) {
            Ok(d) => Some(lee_enumerator(&d)),
            Err(Error::TooManyCodewords { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let transformed = if brute.is_none() || n <= CROSS_CHECK_LIMIT {
        Some(macwilliams(&lee_enumerator(code), size)?)
    } else {
        None
    };
    match (brute, transformed) {
        (Some(b), Some(t)) => {
            if b != t {
                return Err(Error::InternalVerificationFailure(format!(
                    "brute-force dual enumerator {b} differs from MacWilliams transform {t}"
                )));
            }
            Ok(DualDistribution {
                enumerator: b,
                size: dual_size,
                source: DualSource::Brute,
                cross_checked: true,
            })
        }
        (Some(b), None) => Ok(DualDistribution {
            enumerator: b,
            size: dual_size,
            source: DualSource::Brute,
            cross_checked: false,
        }),
        (None, Some(t)) => Ok(DualDistribution {
            enumerator: t,
            size: dual_size,
            source: DualSource::Macwilliams,
            cross_checked: false,
        }),
        (None, None) => unreachable!(),
    }
}

fn projective_from(dual: &DualDistribution) -> bool {
    dual.enumerator.count(1) == 0 && dual.enumerator.count(2) == 0
}

/// Dual minimum Lee weight at least 3, with that minimum (`None` when
/// `C⊥ = {0}`).
pub fn is_projective(code: &AdditiveCode) -> Result<(bool, Option<usize>)> {
    let dual = dual_distribution(code)?;
    Ok((projective_from(&dual), dual.min_weight()))
}

fn fsd_size_pretest(code: &AdditiveCode) -> bool {
    2 * code.dimension() == code.shape().big_n()
}

pub fn is_formally_self_dual(code: &AdditiveCode) -> Result<bool> {
    if !fsd_size_pretest(code) {
        return Ok(false);
    }
    Ok(dual_distribution(code)?.enumerator == lee_enumerator(code))
}

pub fn is_self_orthogonal(code: &AdditiveCode) -> bool {
    let basis = code.z2_basis();
    basis
        .iter()
        .enumerate()
        .all(|(i, x)| basis[i..].iter().all(|y| x.inner_product_unchecked(y).is_zero()))
}

pub fn is_self_dual(code: &AdditiveCode) -> bool {
    fsd_size_pretest(code) && is_self_orthogonal(code)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub shape: AmbientShape,
    pub cardinality: usize,
    pub has_zero_columns: bool,
    pub one_lee_weight: bool,
    pub two_lee_weight: bool,
    pub projective: bool,
    pub formally_self_dual: bool,
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub weights: Vec<usize>,
    pub dual_min_weight: Option<usize>,
    pub dual_source: DualSource,
    pub dual_cross_checked: bool,
}

pub fn classify(code: &AdditiveCode) -> Result<ClassificationReport> {
    let dual = dual_distribution(code)?;
    classify_with_dual(code, &dual)
}

pub fn classify_with_dual(code: &AdditiveCode, dual: &DualDistribution) -> Result<ClassificationReport> {
    let e = lee_enumerator(code);
    let weights = e.nonzero_weights();
    let self_orthogonal = is_self_orthogonal(code);
    let fsd = fsd_size_pretest(code) && dual.enumerator == e;
    let report = ClassificationReport {
        shape: code.shape(),
        cardinality: code.cardinality(),
        has_zero_columns: code.has_zero_columns(),
        one_lee_weight: weights.len() == 1,
        two_lee_weight: weights.len() == 2,
        projective: projective_from(dual),
        formally_self_dual: fsd,
        self_orthogonal,
        self_dual: self_orthogonal && fsd_size_pretest(code),
        weights,
        dual_min_weight: dual.min_weight(),
        dual_source: dual.source,
        dual_cross_checked: dual.cross_checked,
    };
    if report.self_dual && !report.formally_self_dual {
        return Err(Error::InternalVerificationFailure(
            "self-dual code whose enumerator differs from its dual's".into(),
        ));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoWeightReport {
    pub m1: usize,
    pub m2: usize,
    pub a_m1: u128,
    pub a_m2: u128,
    /// `N^2 - N(2m1 + 2m2 - 1) + m1·m2(4 - 4/|C|)` as an exact fraction.
    pub quadratic_value: String,
    pub quadratic_vanishes: bool,
    pub predicted_a_m1: String,
    pub predicted_a_m2: String,
    pub counts_match: bool,
    /// Which of the two weights equals `N/2`, if either.
    pub half_length_weight: Option<usize>,
    /// Which of the two weights equals `|C|/2`, if either.
    pub half_size_weight: Option<usize>,
    /// The weights are exactly `{N/2, |C|/2}`.
    pub half_pattern: bool,
}

impl TwoWeightReport {
    pub fn relations_hold(&self) -> bool {
        self.quadratic_vanishes && self.counts_match
    }
}

fn rational(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn verify_two_weight_relations(code: &AdditiveCode) -> Result<TwoWeightReport> {
    let e = lee_enumerator(code);
    let (m1, m2) = match e.nonzero_weights().as_slice() {
        &[a, b] => (a, b),
        _ => return Err(Error::NotTwoWeight),
    };
    let (projective, dual_min) = is_projective(code)?;
    if !projective {
        return Err(Error::NotProjective(dual_min.map(|d| d as u32)));
    }
    let size = code.cardinality() as i128;
    let n = code.shape().big_n() as i128;
    let (w1, w2) = (m1 as i128, m2 as i128);

    let quad = rational(n * n) - rational(n * (2 * w1 + 2 * w2 - 1))
        + rational(w1 * w2) * (rational(4) - BigRational::new(BigInt::from(4), BigInt::from(size)));
    let half = BigRational::new(BigInt::from(size * n), BigInt::from(2));
    let predict = |own: i128, other: i128| (half.clone() - rational(other * (size - 1))) / rational(own - other);
    let p1 = predict(w1, w2);
    let p2 = predict(w2, w1);
    let (a_m1, a_m2) = (e.count(m1), e.count(m2));
    let counts_match = p1 == rational(a_m1 as i128) && p2 == rational(a_m2 as i128);

    let half_len = (n % 2 == 0).then_some((n / 2) as usize);
    let half_size = (size / 2) as usize;
    let pick = |target: Option<usize>| target.filter(|t| *t == m1 || *t == m2);
    let half_length_weight = pick(half_len);
    let half_size_weight = pick(Some(half_size));
    let half_pattern = match half_len {
        Some(h) => {
            let mut want = [h, half_size];
            want.sort_unstable();
            want == [m1, m2]
        }
        None => false,
    };
    Ok(TwoWeightReport {
        m1,
        m2,
        a_m1,
        a_m2,
        quadratic_value: quad.to_string(),
        quadratic_vanishes: quad.is_zero(),
        predicted_a_m1: p1.to_string(),
        predicted_a_m2: p2.to_string(),
        counts_match,
        half_length_weight,
        half_size_weight,
        half_pattern,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneWeightReport {
    pub weight: usize,
    pub lambda: Option<u64>,
    pub length_relation_holds: bool,
    /// Statements below assume no all-zero columns.
    pub has_zero_columns: bool,
    pub dual_b1: u128,
    pub dual_b2: u128,
    pub dual_b1_zero: bool,
    /// `B2 == (N/2)(lambda - 1)`.
    pub dual_b2_formula_holds: Option<bool>,
    /// Set when lambda = 1: then `B2 == 0`.
    pub unit_lambda_projective: Option<bool>,
    /// Set when the weight is odd: the code is `{0, (1..1|u..u)}`.
    pub odd_weight_repetition: Option<bool>,
    /// As above, restricted to the nonzero columns.
    pub odd_weight_repetition_on_support: Option<bool>,
    pub gray_parameters: [usize; 3],
    /// `[alpha + 2beta, k0 + 2k1 + k2, lambda|C|/2]` from the type and lambda.
    pub predicted_gray_parameters: Option<[usize; 3]>,
    pub gray_parameters_match: bool,
}

impl OneWeightReport {
    /// All claims that apply to this code hold.
    pub fn holds(&self) -> bool {
        if self.has_zero_columns {
            return self.odd_weight_repetition_on_support != Some(false);
        }
        self.length_relation_holds
            && self.dual_b1_zero
            && self.dual_b2_formula_holds != Some(false)
            && self.unit_lambda_projective != Some(false)
            && self.odd_weight_repetition != Some(false)
            && self.gray_parameters_match
    }
}

/// Every entry is 0, 1 (binary) or 0, u (ring).
fn is_all_ones_u_on_support(c: &MixedVector) -> bool {
    c.masks().1 == 0
}

pub fn verify_one_weight_theorems(code: &AdditiveCode) -> Result<OneWeightReport> {
    let profile = weight_profile(code).map_err(|_| Error::NotOneWeight)?;
    if !profile.is_one_weight() {
        return Err(Error::NotOneWeight);
    }
    let m = profile.nonzero_weights[0];
    let shape = code.shape();
    let n = shape.big_n();
    let size = code.cardinality();
    let dual = dual_distribution(code)?;
    let (b1, b2) = (dual.enumerator.count(1), dual.enumerator.count(2));

    let dual_b2_formula_holds = profile
        .lambda
        .map(|l| 2 * b2 == n as u128 * (l as u128 - 1));
    let unit_lambda_projective = (profile.lambda == Some(1)).then_some(b2 == 0);

    let (odd_weight_repetition, odd_weight_repetition_on_support) = if m % 2 == 1 {
        let on_support = size == 2 && {
            let c = code.codewords().iter().find(|c| !c.is_zero()).expect("nonzero word");
            is_all_ones_u_on_support(c)
        };
        let full = on_support && code.contains(&MixedVector::ones_u(shape));
        (Some(full), Some(on_support))
    } else {
        (None, None)
    };

    let d = min_lee_weight(code)? as usize;
    let gray_parameters = [n, code.dimension(), d];
    let k = type_of(code)?;
    let predicted = profile
        .lambda
        .map(|l| [n, k.k0 + 2 * k.k1 + k.k2, l as usize * size / 2]);
    Ok(OneWeightReport {
        weight: m,
        lambda: profile.lambda,
        length_relation_holds: profile.length_relation_holds == Some(true),
        has_zero_columns: profile.has_zero_columns,
        dual_b1: b1,
        dual_b2: b2,
        dual_b1_zero: b1 == 0,
        dual_b2_formula_holds,
        unit_lambda_projective,
        odd_weight_repetition,
        odd_weight_repetition_on_support,
        gray_parameters,
        predicted_gray_parameters: predicted,
        gray_parameters_match: predicted == Some(gray_parameters),
    })
}

/// For a one-weight formally self-dual code: the weight is even exactly when
/// `(1..1|u..u)` is a codeword and `alpha` is even.
pub fn verify_fsd_even_weight_criterion(code: &AdditiveCode) -> Result<bool> {
    let profile = weight_profile(code).map_err(|_| Error::PreconditionViolation("code is {0}".into()))?;
    if !profile.is_one_weight() {
        return Err(Error::PreconditionViolation("code is not one-Lee-weight".into()));
    }
    if !is_formally_self_dual(code)? {
        return Err(Error::PreconditionViolation("code is not formally self-dual".into()));
    }
    let even = profile.nonzero_weights[0] % 2 == 0;
    let shape = code.shape();
    let rhs = code.contains(&MixedVector::ones_u(shape)) && shape.alpha().is_multiple_of(2);
    Ok(even == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::span;
    use crate::matrix_file::parse_matrix;

    fn code(text: &str) -> AdditiveCode {
        let m = parse_matrix(text).unwrap();
        span(m.shape, &m.rows).unwrap()
    }

    const EX36: &str = "1 1 1 0 0 0 1 | u\n0 0 0 1 1 1 1 | u\n";
    const EX38: &str = "1 1 1 1 | u 0 u 0 0\n0 0 1 1 | u u 0 u 0\n0 0 0 0 | u u u 0 u\n";

    #[test]
    fn profiles() {
        let p = weight_profile(&code(EX36)).unwrap();
        assert_eq!(p.nonzero_weights, vec![6]);
        assert_eq!(p.lambda, Some(3));
        assert_eq!(p.length_relation_holds, Some(true));

        let p = weight_profile(&code("1 1 |\n")).unwrap();
        assert_eq!((p.nonzero_weights.clone(), p.lambda, p.length_relation_holds), (vec![2], Some(2), Some(true)));

        let z = AdditiveCode::zero(AmbientShape::new(1, 1).unwrap());
        assert!(matches!(weight_profile(&z), Err(Error::TrivialCode)));
    }

    #[test]
    fn small_self_duality() {
        let c = code("1 1 |\n");
        assert!(is_formally_self_dual(&c).unwrap());
        assert!(is_self_dual(&c));
        let c = code("| u\n");
        assert!(is_self_dual(&c));
        let c = code("1 0 |\n");
        assert!(is_formally_self_dual(&c).unwrap());
        assert!(!is_self_dual(&c));
        assert!(!is_self_orthogonal(&c));
        assert!(!is_formally_self_dual(&code(EX36)).unwrap());
    }

    #[test]
    fn self_orthogonality_agrees_with_dual_containment() {
        for text in [EX36, "1 1 |\n", "| u\n", "1 1 | u\n", "| 1 u\n", "1 1 0 0 | u\n"] {
            let c = code(text);
            let d = dual_brute(&c).unwrap();
            let contained = c.codewords().iter().all(|w| d.contains(w));
            assert_eq!(is_self_orthogonal(&c), contained, "{text}");
        }
    }

    #[test]
    fn projectivity() {
        let (p, d) = is_projective(&code(EX36)).unwrap();
        assert!(!p);
        assert_eq!(d, Some(2));
        let full = code("| 1\n");
        assert_eq!(is_projective(&full).unwrap(), (true, None));
    }

    #[test]
    fn one_weight_checks() {
        let r = verify_one_weight_theorems(&code(EX36)).unwrap();
        assert_eq!(r.gray_parameters, [9, 2, 6]);
        assert_eq!(r.lambda, Some(3));
        assert!(r.holds());

        let r = verify_one_weight_theorems(&code("1 | u\n")).unwrap();
        assert_eq!(r.weight, 3);
        assert_eq!(r.odd_weight_repetition, Some(true));
        assert_eq!(r.lambda, Some(3));
        assert!(r.holds());

        let r = verify_one_weight_theorems(&code("1 0 |\n")).unwrap();
        assert!(r.has_zero_columns);
        assert_eq!(r.odd_weight_repetition, Some(false));
        assert_eq!(r.odd_weight_repetition_on_support, Some(true));
        assert!(r.holds());

        assert!(matches!(verify_one_weight_theorems(&code("1 0 |\n0 1 |\n")), Err(Error::NotOneWeight)));
    }

    #[test]
    fn example_3_8_one_weight() {
        let c = code(EX38);
        let r = verify_one_weight_theorems(&c).unwrap();
        assert_eq!(r.gray_parameters, [14, 3, 8]);
        assert_eq!(r.dual_b1, 0);
        assert_eq!(r.lambda, Some(2));
        assert_eq!(r.dual_b2_formula_holds, Some(true));
        assert!(r.holds());
    }

    #[test]
    fn two_weight_rejections() {
        assert!(matches!(verify_two_weight_relations(&code(EX36)), Err(Error::NotTwoWeight)));
        // {0, (1,0|), (0,1|), (1,1|)} has weights 1, 2 but its dual is {0}.
        let r = verify_two_weight_relations(&code("1 0 |\n0 1 |\n"));
        assert!(r.is_ok());
        // weights {2, 4} with a dual word of weight 2
        let r = verify_two_weight_relations(&code("1 1 0 0 |\n0 0 1 1 |\n"));
        assert!(matches!(r, Err(Error::NotProjective(Some(2)))));
    }

    #[test]
    fn fsd_criterion() {
        for text in ["1 1 |\n", "1 0 |\n", "0 1 |\n", "| u\n"] {
            assert!(verify_fsd_even_weight_criterion(&code(text)).unwrap(), "{text}");
        }
        assert!(matches!(
            verify_fsd_even_weight_criterion(&code(EX36)),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn report_key_order_is_stable() {
        let r = classify(&code("1 1 |\n")).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"shape":{"alpha":2,"beta":0},"cardinality":2,"has_zero_columns":false,"one_lee_weight":true"#), "{json}");
        assert!(r.self_dual && r.formally_self_dual && r.self_orthogonal);
    }
}
