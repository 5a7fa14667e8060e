//! Exhaustive and seeded random searches over small generator spaces.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{classify_with_dual, dual_distribution, ClassificationReport};
use crate::code::{low_mask, span, AdditiveCode, AmbientShape, Z2Basis};
use crate::error::{Error, Result};
use crate::matrix_file::format_matrix;
use crate::standard_form::{standard_form, CodeType};
use crate::weight::{lee_enumerator, LeeEnumerator};

/// Exhaustive spaces may hold at most `2^EXHAUSTIVE_LOG2_LIMIT` tuples per shape.
pub const EXHAUSTIVE_LOG2_LIMIT: u64 = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    OneWeight,
    TwoWeightProjective,
    FsdOneWeight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Every non-decreasing tuple of `rows` packed words, per shape.
    Exhaustive,
    /// Shape and generator words drawn uniformly.
    Random,
    /// Each row is drawn uniformly from one of three kinds chosen uniformly:
    /// any word, words with ring entries in `{0, u}`, and words that are zero
    /// on the binary part with ring entries in `{0, u}`.
    Stratified,
}

#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub alpha: RangeInclusive<usize>,
    pub beta: RangeInclusive<usize>,
    pub rows: usize,
    pub mode: Mode,
    /// Number of draws in the random modes.
    pub budget: u64,
    pub target: Target,
    pub seed: u64,
}

impl SearchSpace {
    pub fn shapes(&self) -> Result<Vec<AmbientShape>> {
        let mut out = Vec::new();
        for a in self.alpha.clone() {
            for b in self.beta.clone() {
                if a + b > 0 {
                    out.push(AmbientShape::new(a, b)?);
                }
            }
        }
        Ok(out)
    }

    fn check(&self) -> Result<Vec<AmbientShape>> {
        let shapes = self.shapes()?;
        if self.mode == Mode::Exhaustive {
            if let Some(worst) = shapes.iter().map(|s| (self.rows * s.big_n()) as u64).max() {
                if worst > EXHAUSTIVE_LOG2_LIMIT {
                    return Err(Error::SpaceTooLarge {
                        log2_candidates: worst,
                        limit: EXHAUSTIVE_LOG2_LIMIT,
                    });
                }
            }
        }
        Ok(shapes)
    }
}

/// `u·w` on packed words: the unit mask moves into the nil mask.
fn u_times(word: u64, beta: usize) -> u64 {
    if beta == 0 {
        0
    } else {
        (word >> beta) & low_mask(beta)
    }
}

fn basis_of(shape: AmbientShape, words: &[u64]) -> Z2Basis {
    let mut basis = Z2Basis::default();
    for &w in words {
        basis.insert(w);
        basis.insert(u_times(w, shape.beta()));
    }
    basis
}

enum Source {
    Exhaustive { shape_idx: usize, tuple: Vec<u64>, fresh: bool },
    Random { rng: Box<ChaCha8Rng>, remaining: u64 },
}

/// Distinct codes spanned by candidate generator tuples, deduplicated by
/// their reduced Z2 basis.
pub struct Candidates {
    shapes: Vec<AmbientShape>,
    rows: usize,
    mode: Mode,
    source: Source,
    seen: HashSet<(AmbientShape, Vec<u64>)>,
    examined: u64,
}

impl Candidates {
    /// Generator tuples drawn or visited so far.
    pub fn examined(&self) -> u64 {
        self.examined
    }

    fn next_tuple(&mut self) -> Option<(AmbientShape, Vec<u64>)> {
        let rows = self.rows;
        match &mut self.source {
            Source::Exhaustive { shape_idx, tuple, fresh } => loop {
                let shape = *self.shapes.get(*shape_idx)?;
                if *fresh {
                    *fresh = false;
                    return Some((shape, tuple.clone()));
                }
                let top = (1u64 << shape.big_n()) - 1;
                match (0..rows).rev().find(|&i| tuple[i] < top) {
                    Some(i) => {
                        let v = tuple[i] + 1;
                        tuple[i..].iter_mut().for_each(|t| *t = v);
                        return Some((shape, tuple.clone()));
                    }
                    None => {
                        *shape_idx += 1;
                        tuple.iter_mut().for_each(|t| *t = 0);
                        *fresh = true;
                    }
                }
            },
            Source::Random { rng, remaining } => {
                if *remaining == 0 || self.shapes.is_empty() {
                    return None;
                }
                *remaining -= 1;
                let shape = self.shapes[rng.gen_range(0..self.shapes.len())];
                let (a, b) = (shape.alpha(), shape.beta());
                let nil = low_mask(b);
                let bin = low_mask(a) << (2 * b);
                let all = low_mask(shape.big_n());
                let tuple = (0..rows)
                    .map(|_| {
                        let w: u64 = rng.gen();
                        match self.mode {
                            Mode::Stratified => match rng.gen_range(0..3) {
                                0 => w & all,
                                1 => w & (bin | nil),
                                _ => w & nil,
                            },
                            _ => w & all,
                        }
                    })
                    .collect();
                Some((shape, tuple))
            }
        }
    }
}

impl Iterator for Candidates {
    type Item = AdditiveCode;

    fn next(&mut self) -> Option<AdditiveCode> {
        loop {
            let (shape, tuple) = self.next_tuple()?;
            self.examined += 1;
            let basis = basis_of(shape, &tuple);
            if self.seen.contains(&(shape, basis.rows().to_vec())) {
                continue;
            }
            self.seen.insert((shape, basis.rows().to_vec()));
            let gens: Vec<_> = tuple.iter().filter(|&&w| w != 0).map(|&w| shape.unpack(w)).collect();
            return Some(span(shape, &gens).expect("small shapes stay below the dimension bound"));
        }
    }
}

pub fn enumerate_candidates(space: &SearchSpace) -> Result<Candidates> {
    let shapes = space.check()?;
    let rows = space.rows.max(1);
    let source = match space.mode {
        Mode::Exhaustive => Source::Exhaustive {
            shape_idx: 0,
            tuple: vec![0; rows],
            fresh: true,
        },
        Mode::Random | Mode::Stratified => Source::Random {
            rng: Box::new(ChaCha8Rng::seed_from_u64(space.seed)),
            remaining: space.budget,
        },
    };
    Ok(Candidates {
        shapes,
        rows,
        mode: space.mode,
        source,
        seen: HashSet::new(),
        examined: 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Optimal,
    Suboptimal,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Optimal => "optimal",
            Verdict::Suboptimal => "suboptimal",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Best minimum distances for the binary `[n, k]` pairs realised by the
/// built-in examples.
#[derive(Clone, Debug)]
pub struct OptimalityTable {
    entries: BTreeMap<(usize, usize), usize>,
}

impl OptimalityTable {
    pub fn builtin() -> Self {
        let entries = [
            ((9, 2), 6),
            ((14, 3), 8),
            ((16, 4), 8),
            ((14, 4), 7),
            ((14, 10), 3),
            ((24, 5), 12),
            ((24, 19), 3),
            ((16, 5), 8),
            ((16, 11), 4),
        ]
        .into_iter()
        .collect();
        OptimalityTable { entries }
    }

    pub fn best(&self, n: usize, k: usize) -> Option<usize> {
        self.entries.get(&(n, k)).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn check(&self, n: usize, k: usize, d: usize) -> Verdict {
        match self.best(n, k) {
            None => Verdict::Unknown,
            Some(best) if d >= best => Verdict::Optimal,
            Some(_) => Verdict::Suboptimal,
        }
    }
}

pub fn optimality_check(n: usize, k: usize, d: usize) -> Verdict {
    OptimalityTable::builtin().check(n, k, d)
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub shape: AmbientShape,
    pub generators: String,
    pub code_type: CodeType,
    pub enumerator: LeeEnumerator,
    pub polynomial: String,
    pub classification: ClassificationReport,
    pub gray_parameters: [usize; 3],
    pub optimality: Verdict,
    #[serde(skip)]
    pub code: AdditiveCode,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub target: Target,
    pub mode: Mode,
    pub seed: u64,
    pub tuples_examined: u64,
    pub distinct_codes: u64,
    pub pruned: u64,
    pub hits: Vec<SearchHit>,
}

/// Cheap necessary conditions for the target; `false` means the candidate
/// cannot match.
fn passes_pruners(target: Target, code: &AdditiveCode, e: &LeeEnumerator) -> bool {
    let n = code.shape().big_n() as i128;
    let size = code.cardinality() as i128;
    let weights = e.nonzero_weights();
    match target {
        Target::OneWeight => size > 1 && n % (size - 1) == 0 && weights.len() == 1,
        Target::FsdOneWeight => 2 * code.dimension() == code.shape().big_n() && weights.len() == 1,
        Target::TwoWeightProjective => match weights.as_slice() {
            &[m1, m2] => {
                let (m1, m2) = (m1 as i128, m2 as i128);
                size * n * n - size * n * (2 * m1 + 2 * m2 - 1) + 4 * m1 * m2 * (size - 1) == 0
            }
            _ => false,
        },
    }
}

fn matches_target(target: Target, report: &ClassificationReport) -> bool {
    match target {
        Target::OneWeight => report.one_lee_weight && !report.has_zero_columns,
        Target::TwoWeightProjective => report.two_lee_weight && report.projective && !report.has_zero_columns,
        Target::FsdOneWeight => report.one_lee_weight && report.formally_self_dual,
    }
}

pub fn analyse_hit(code: &AdditiveCode) -> Result<(SearchHit, ClassificationReport)> {
    let e = lee_enumerator(code);
    let dual = dual_distribution(code)?;
    let report = classify_with_dual(code, &dual)?;
    let sf = standard_form(code)?;
    let d = e.min_nonzero_weight().unwrap_or(0);
    let n = code.shape().big_n();
    let hit = SearchHit {
        shape: code.shape(),
        generators: format_matrix(sf.reduced_rows()),
        code_type: sf.code_type(),
        polynomial: e.to_polynomial(),
        enumerator: e,
        classification: report.clone(),
        gray_parameters: [n, code.dimension(), d],
        optimality: optimality_check(n, code.dimension(), d),
        code: code.clone(),
    };
    Ok((hit, report))
}

/// Codes in `space` matching its target, sorted by shape then reduced basis.
pub fn search(space: &SearchSpace, prune: bool) -> Result<SearchOutcome> {
    let mut candidates = enumerate_candidates(space)?;
    let mut hits = Vec::new();
    let (mut distinct, mut pruned) = (0u64, 0u64);
    for code in candidates.by_ref() {
        distinct += 1;
        if code.cardinality() < 2 {
            continue;
        }
        if prune {
            let e = lee_enumerator(&code);
            if !passes_pruners(space.target, &code, &e) {
                pruned += 1;
                continue;
            }
        }
        let (hit, report) = analyse_hit(&code)?;
        if matches_target(space.target, &report) {
            hits.push(hit);
        }
    }
    hits.sort_by_key(|h| h.code.fingerprint());
    Ok(SearchOutcome {
        target: space.target,
        mode: space.mode,
        seed: space.seed,
        tuples_examined: candidates.examined(),
        distinct_codes: distinct,
        pruned,
        hits,
    })
}

pub fn search_with_pruning(space: &SearchSpace) -> Result<SearchOutcome> {
    search(space, true)
}

/// Largest per-shape tuple length used by the classification check.
pub const CLASSIFICATION_MAX_ROWS: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationCheck {
    pub max_alpha: usize,
    pub max_beta: usize,
    /// Generator rows enumerated per shape.
    pub rows_per_shape: Vec<(AmbientShape, usize)>,
    pub distinct_codes: u64,
    /// Survivors in compact set notation with their weight.
    pub survivors: Vec<(String, usize)>,
    pub expected: Vec<String>,
}

impl ClassificationCheck {
    pub fn summary(&self) -> String {
        format!(
            "{} survivors, classification matches expected set",
            self.survivors.len()
        )
    }
}

/// The one-weight formally self-dual codes of length at most the given
/// bounds: `{(0,0|),(1,1|)}` and `{(|0),(|u)}` of weight 2, `{(0,0|),(1,0|)}`
/// and `{(0,0|),(0,1|)}` of weight 1.
pub fn expected_fsd_one_weight(max_alpha: usize, max_beta: usize) -> Vec<String> {
    let mut out = Vec::new();
    if max_alpha >= 2 {
        out.extend(["{(0,0|),(0,1|)}", "{(0,0|),(1,0|)}", "{(0,0|),(1,1|)}"].map(String::from));
    }
    if max_beta >= 1 {
        out.push("{(|0),(|u)}".into());
    }
    out.sort();
    out
}

/// Enumerates every code spanned by up to `min(3, floor(26 / N))` rows in
/// each shape with `alpha <= max_alpha`, `beta <= max_beta`, and checks that
/// the one-weight formally self-dual survivors are exactly
/// [`expected_fsd_one_weight`].
pub fn verify_fsd_one_weight_classification(max_alpha: usize, max_beta: usize) -> Result<ClassificationCheck> {
    if max_alpha > 6 || max_beta > 3 {
        return Err(Error::PreconditionViolation(format!(
            "classification check supports alpha <= 6 and beta <= 3, got {max_alpha} and {max_beta}"
        )));
    }
    let mut rows_per_shape = Vec::new();
    let mut survivors = Vec::new();
    let mut distinct = 0u64;
    for a in 0..=max_alpha {
        for b in 0..=max_beta {
            if a + b == 0 {
                continue;
            }
            let n = a + 2 * b;
            let rows = (EXHAUSTIVE_LOG2_LIMIT as usize / n).clamp(1, CLASSIFICATION_MAX_ROWS);
            let shape = AmbientShape::new(a, b)?;
            rows_per_shape.push((shape, rows));
            let space = SearchSpace {
                alpha: a..=a,
                beta: b..=b,
                rows,
                mode: Mode::Exhaustive,
                budget: 0,
                target: Target::FsdOneWeight,
                seed: 0,
            };
            let outcome = search(&space, true)?;
            distinct += outcome.distinct_codes;
            for hit in outcome.hits {
                survivors.push((hit.code.compact(), hit.gray_parameters[2]));
            }
        }
    }
    survivors.sort();
    let expected = expected_fsd_one_weight(max_alpha, max_beta);
    let found: Vec<String> = survivors.iter().map(|(s, _)| s.clone()).collect();
    let unexpected: Vec<String> = found.iter().filter(|s| !expected.contains(s)).cloned().collect();
    let missing: Vec<String> = expected.iter().filter(|s| !found.contains(s)).cloned().collect();
    if !unexpected.is_empty() || !missing.is_empty() {
        return Err(Error::ClassificationViolation { unexpected, missing });
    }
    Ok(ClassificationCheck {
        max_alpha,
        max_beta,
        rows_per_shape,
        distinct_codes: distinct,
        survivors,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(alpha: RangeInclusive<usize>, beta: RangeInclusive<usize>, rows: usize, target: Target) -> SearchSpace {
        SearchSpace {
            alpha,
            beta,
            rows,
            mode: Mode::Exhaustive,
            budget: 0,
            target,
            seed: 0,
        }
    }

    #[test]
    fn single_row_binary_codes() {
        let codes: Vec<String> = enumerate_candidates(&space(2..=2, 0..=0, 1, Target::OneWeight))
            .unwrap()
            .map(|c| c.compact())
            .collect();
        assert_eq!(codes, ["{(0,0|)}", "{(0,0|),(0,1|)}", "{(0,0|),(1,0|)}", "{(0,0|),(1,1|)}"]);
    }

    #[test]
    fn single_row_ring_codes() {
        let codes: Vec<AdditiveCode> = enumerate_candidates(&space(0..=0, 1..=1, 1, Target::OneWeight))
            .unwrap()
            .collect();
        let mut sizes: Vec<usize> = codes.iter().map(AdditiveCode::cardinality).collect();
        sizes.sort();
        assert_eq!(sizes, [1, 2, 4]);
    }

    #[test]
    fn u_times_matches_scalar_multiplication() {
        let shape = AmbientShape::new(3, 2).unwrap();
        for w in 0..(1u64 << shape.big_n()) {
            let v = shape.unpack(w);
            assert_eq!(u_times(w, 2), v.scalar_mul(crate::ring::RingElem::U).pack());
        }
    }

    #[test]
    fn oversized_space_rejected() {
        let s = space(20..=20, 20..=20, 5, Target::OneWeight);
        assert!(matches!(enumerate_candidates(&s), Err(Error::SpaceTooLarge { .. })));
    }

    #[test]
    fn empty_range_gives_no_hits() {
        let s = space(0..=0, 0..=0, 1, Target::OneWeight);
        assert!(search(&s, true).unwrap().hits.is_empty());
    }

    #[test]
    fn random_stream_is_reproducible() {
        let mut s = space(2..=3, 1..=2, 2, Target::OneWeight);
        s.mode = Mode::Random;
        s.budget = 200;
        s.seed = 11;
        let a: Vec<_> = enumerate_candidates(&s).unwrap().map(|c| c.fingerprint()).collect();
        let b: Vec<_> = enumerate_candidates(&s).unwrap().map(|c| c.fingerprint()).collect();
        assert_eq!(a, b);
        s.seed = 12;
        let c: Vec<_> = enumerate_candidates(&s).unwrap().map(|c| c.fingerprint()).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn pruning_does_not_change_results() {
        for target in [Target::OneWeight, Target::TwoWeightProjective, Target::FsdOneWeight] {
            let s = space(0..=3, 0..=2, 2, target);
            let a: Vec<_> = search(&s, true).unwrap().hits.iter().map(|h| h.code.fingerprint()).collect();
            let b: Vec<_> = search(&s, false).unwrap().hits.iter().map(|h| h.code.fingerprint()).collect();
            assert_eq!(a, b, "{target:?}");
        }
    }

    #[test]
    fn optimality_verdicts() {
        assert_eq!(optimality_check(16, 4, 8), Verdict::Optimal);
        assert_eq!(optimality_check(9, 7, 2), Verdict::Unknown);
        assert_eq!(optimality_check(14, 3, 7), Verdict::Suboptimal);
        assert_eq!(OptimalityTable::builtin().entries().count(), 9);
    }

    #[test]
    fn small_classification() {
        let r = verify_fsd_one_weight_classification(2, 1).unwrap();
        let weights: BTreeMap<String, usize> = r.survivors.iter().cloned().collect();
        assert_eq!(weights["{(0,0|),(1,1|)}"], 2);
        assert_eq!(weights["{(|0),(|u)}"], 2);
        assert_eq!(weights["{(0,0|),(1,0|)}"], 1);
        assert_eq!(weights["{(0,0|),(0,1|)}"], 1);
        assert_eq!(r.summary(), "4 survivors, classification matches expected set");
        assert!(verify_fsd_one_weight_classification(7, 1).is_err());
    }
}
