//! Reduction of a generator matrix to the block standard form
//!
//! ```text
//! ( I_k0  A1  0     0       uT      )
//! ( 0     S   I_k1  A       B1 + uB2 )
//! ( 0     0   0     u I_k2  uD      )
//! ```
//!
//! up to a permutation of the binary columns and of the ring columns.
//! The type `(alpha, beta; k0, k1, k2)` satisfies `|C| = 2^(k0 + 2k1 + k2)`.

use std::fmt;

use serde::Serialize;

use crate::code::{span, AdditiveCode, AmbientShape, MixedVector};
use crate::error::{Error, Result};
use crate::matrix_file::format_matrix;
use crate::ring::RingElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CodeType {
    pub alpha: usize,
    pub beta: usize,
    pub k0: usize,
    pub k1: usize,
    pub k2: usize,
}

impl CodeType {
    /// `k0 + 2·k1 + k2`, the base-2 logarithm of the cardinality.
    pub fn log2_cardinality(&self) -> usize {
        self.k0 + 2 * self.k1 + self.k2
    }

    pub fn triple(&self) -> (usize, usize, usize) {
        (self.k0, self.k1, self.k2)
    }
}

impl fmt::Display for CodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{},{})", self.alpha, self.beta, self.k0, self.k1, self.k2)
    }
}

#[derive(Clone, Debug)]
pub struct StandardFormMatrix {
    rows: Vec<MixedVector>,
    reduced_rows: Vec<MixedVector>,
    binary_order: Vec<usize>,
    ring_order: Vec<usize>,
    code_type: CodeType,
    zero_binary_columns: Vec<usize>,
    zero_ring_columns: Vec<usize>,
}

impl StandardFormMatrix {
    /// Rows after the column permutation, blocks in order k0, k1, k2.
    pub fn rows(&self) -> &[MixedVector] {
        &self.rows
    }

    pub fn k0_rows(&self) -> &[MixedVector] {
        &self.rows[..self.code_type.k0]
    }

    pub fn k1_rows(&self) -> &[MixedVector] {
        &self.rows[self.code_type.k0..self.code_type.k0 + self.code_type.k1]
    }

    pub fn k2_rows(&self) -> &[MixedVector] {
        &self.rows[self.code_type.k0 + self.code_type.k1..]
    }

    /// The same rows before permuting columns; they generate the input code.
    pub fn reduced_rows(&self) -> &[MixedVector] {
        &self.reduced_rows
    }

    /// Position `p` of the permuted binary part holds original column
    /// `binary_order()[p]`.
    pub fn binary_order(&self) -> &[usize] {
        &self.binary_order
    }

    pub fn ring_order(&self) -> &[usize] {
        &self.ring_order
    }

    pub fn code_type(&self) -> CodeType {
        self.code_type
    }

    /// All-zero columns in original indexing `(binary, ring)`.
    pub fn zero_columns(&self) -> (&[usize], &[usize]) {
        (&self.zero_binary_columns, &self.zero_ring_columns)
    }

    pub fn has_zero_columns(&self) -> bool {
        !(self.zero_binary_columns.is_empty() && self.zero_ring_columns.is_empty())
    }

    /// Undoes the column permutation on a vector in permuted coordinates.
    pub fn unpermute(&self, v: &MixedVector) -> MixedVector {
        let mut out = MixedVector::zero(v.shape());
        for (p, &orig) in self.binary_order.iter().enumerate() {
            out.set_bin(orig, v.bin(p));
        }
        for (p, &orig) in self.ring_order.iter().enumerate() {
            out.set_ring(orig, v.ring(p));
        }
        out
    }

    /// Matrix-file rendering with column orders, zero-column warnings and a
    /// trailing `# type = ...` line.
    pub fn to_matrix_file(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        out.push_str(&format!("# binary column order: {}\n", join(&self.binary_order)));
        out.push_str(&format!("# ring column order: {}\n", join(&self.ring_order)));
        if self.has_zero_columns() {
            out.push_str(&format!(
                "# warning: all-zero columns (binary: [{}], ring: [{}])\n",
                join(&self.zero_binary_columns),
                join(&self.zero_ring_columns)
            ));
        }
        out.push_str(&format_matrix(&self.rows));
        out.push_str(&format!("# type = {}\n", self.code_type));
        out
    }
}

fn permute(v: &MixedVector, binary_order: &[usize], ring_order: &[usize]) -> MixedVector {
    let mut out = MixedVector::zero(v.shape());
    for (p, &orig) in binary_order.iter().enumerate() {
        out.set_bin(p, v.bin(orig));
    }
    for (p, &orig) in ring_order.iter().enumerate() {
        out.set_ring(p, v.ring(orig));
    }
    out
}

/// `row - e·pivot`, written as a sum since every element has order 2.
fn eliminate(row: &mut MixedVector, e: RingElem, pivot: &MixedVector) {
    if !e.is_zero() {
        *row = row.xor(&pivot.scalar_mul(e));
    }
}

/// Topmost row having `pred` at the leftmost column where any row has it.
fn find_pivot(rows: &[MixedVector], columns: usize, pred: impl Fn(&MixedVector, usize) -> bool) -> Option<(usize, usize)> {
    (0..columns).find_map(|col| rows.iter().position(|r| pred(r, col)).map(|row| (row, col)))
}

pub fn standard_form(code: &AdditiveCode) -> Result<StandardFormMatrix> {
    let shape = code.shape();
    let (alpha, beta) = (shape.alpha(), shape.beta());
    let start = if code.generators().is_empty() {
        code.z2_basis()
    } else {
        code.generators().to_vec()
    };
    let mut rest: Vec<MixedVector> = start.into_iter().filter(|r| !r.is_zero()).collect();

    // Phase 1: unit pivots in ring columns.
    let mut k1_rows: Vec<MixedVector> = Vec::new();
    let mut k1_cols: Vec<usize> = Vec::new();
    while let Some((pi, col)) = find_pivot(&rest, beta, |r, c| r.ring(c).is_unit()) {
        let mut pivot = rest.remove(pi);
        let inv = pivot.ring(col).inverse().expect("pivot entry is a unit");
        pivot = pivot.scalar_mul(inv);
        for r in rest.iter_mut().chain(k1_rows.iter_mut()) {
            let e = r.ring(col);
            eliminate(r, e, &pivot);
        }
        rest.retain(|r| !r.is_zero());
        k1_rows.push(pivot);
        k1_cols.push(col);
    }

    // Phase 2: binary pivots among rows whose ring entries lie in {0, u}.
    let mut k0_rows: Vec<MixedVector> = Vec::new();
    let mut k0_cols: Vec<usize> = Vec::new();
    while let Some((pi, col)) = find_pivot(&rest, alpha, |r, c| r.bin(c) == 1) {
        let pivot = rest.remove(pi);
        for r in rest.iter_mut().chain(k0_rows.iter_mut()).chain(k1_rows.iter_mut()) {
            if r.bin(col) == 1 {
                eliminate(r, RingElem::ONE, &pivot);
            }
        }
        rest.retain(|r| !r.is_zero());
        k0_rows.push(pivot);
        k0_cols.push(col);
    }

    // Phase 3: u pivots among rows with zero binary part.
    let mut k2_rows: Vec<MixedVector> = Vec::new();
    let mut k2_cols: Vec<usize> = Vec::new();
    while let Some((pi, col)) = find_pivot(&rest, beta, |r, c| r.ring(c) == RingElem::U) {
        let pivot = rest.remove(pi);
        for r in rest
            .iter_mut()
            .chain(k0_rows.iter_mut())
            .chain(k1_rows.iter_mut())
            .chain(k2_rows.iter_mut())
        {
            if r.ring(col).nil_part() == 1 {
                eliminate(r, RingElem::ONE, &pivot);
            }
        }
        rest.retain(|r| !r.is_zero());
        k2_rows.push(pivot);
        k2_cols.push(col);
    }

    if !rest.is_empty() {
        return Err(Error::InternalVerificationFailure(format!(
            "{} rows left unreduced after all pivot phases",
            rest.len()
        )));
    }

    let mut binary_order = k0_cols.clone();
    binary_order.extend((0..alpha).filter(|c| !k0_cols.contains(c)));
    let mut ring_order = k1_cols.clone();
    ring_order.extend(k2_cols.iter().copied());
    ring_order.extend((0..beta).filter(|c| !k1_cols.contains(c) && !k2_cols.contains(c)));

    let reduced_rows: Vec<MixedVector> = k0_rows.into_iter().chain(k1_rows).chain(k2_rows).collect();
    let rows: Vec<MixedVector> = reduced_rows
        .iter()
        .map(|r| permute(r, &binary_order, &ring_order))
        .collect();
    let code_type = CodeType {
        alpha,
        beta,
        k0: k0_cols.len(),
        k1: k1_cols.len(),
        k2: k2_cols.len(),
    };
    let (zero_binary_columns, zero_ring_columns) = code.zero_columns();

    let sf = StandardFormMatrix {
        rows,
        reduced_rows,
        binary_order,
        ring_order,
        code_type,
        zero_binary_columns,
        zero_ring_columns,
    };
    verify(code, &sf)?;
    Ok(sf)
}

fn verify(code: &AdditiveCode, sf: &StandardFormMatrix) -> Result<()> {
    let fail = |msg: String| Err(Error::InternalVerificationFailure(msg));
    let t = sf.code_type;
    if t.log2_cardinality() != code.dimension() {
        return fail(format!("type {t} predicts 2^{} codewords, code has 2^{}", t.log2_cardinality(), code.dimension()));
    }
    let regenerated = span(code.shape(), &sf.reduced_rows)?;
    if regenerated != *code {
        return fail("reduced rows do not regenerate the input span".into());
    }
    let unpermuted: Vec<MixedVector> = sf.rows.iter().map(|r| sf.unpermute(r)).collect();
    if unpermuted != sf.reduced_rows {
        return fail("column permutation is not invertible on the reduced rows".into());
    }
    check_blocks(sf).map_or(Ok(()), fail)
}

/// Returns a description of the first entry that breaks the block layout.
fn check_blocks(sf: &StandardFormMatrix) -> Option<String> {
    let CodeType { alpha, beta, k0, k1, k2 } = sf.code_type;
    let kron = |i: usize, j: usize| u8::from(i == j);
    for (i, r) in sf.k0_rows().iter().enumerate() {
        if (0..k0).any(|c| r.bin(c) != kron(i, c)) {
            return Some(format!("k0 row {i} is not an identity row"));
        }
        if (0..k1 + k2).any(|c| !r.ring(c).is_zero()) || (0..beta).any(|c| r.ring(c).is_unit()) {
            return Some(format!("k0 row {i} ring part is not of the form (0 0 uT)"));
        }
    }
    for (i, r) in sf.k1_rows().iter().enumerate() {
        if (0..k0).any(|c| r.bin(c) != 0) {
            return Some(format!("k1 row {i} has nonzero entries over the k0 identity"));
        }
        if (0..k1).any(|c| r.ring(c) != RingElem::new(kron(i, c), 0)) {
            return Some(format!("k1 row {i} is not a unit identity row"));
        }
        if (k1..k1 + k2).any(|c| r.ring(c).nil_part() != 0) {
            return Some(format!("k1 row {i} has a non-binary entry in the k2 columns"));
        }
    }
    for (i, r) in sf.k2_rows().iter().enumerate() {
        if (0..alpha).any(|c| r.bin(c) != 0) || (0..k1).any(|c| !r.ring(c).is_zero()) {
            return Some(format!("k2 row {i} has entries outside its block"));
        }
        if (0..k2).any(|c| r.ring(k1 + c) != RingElem::new(0, kron(i, c))) {
            return Some(format!("k2 row {i} is not a u-identity row"));
        }
        if (0..beta).any(|c| r.ring(c).is_unit()) {
            return Some(format!("k2 row {i} has a unit entry"));
        }
    }
    None
}

/// The type `(alpha, beta; k0, k1, k2)` obtained by reduction.
pub fn type_of(code: &AdditiveCode) -> Result<CodeType> {
    Ok(standard_form(code)?.code_type)
}

/// `|u·C|`; equals `2^k1`.
pub fn u_multiple_count(code: &AdditiveCode) -> usize {
    let mut set: Vec<MixedVector> = code.codewords().iter().map(|c| c.scalar_mul(RingElem::U)).collect();
    set.sort_unstable();
    set.dedup();
    set.len()
}

/// Permuted copy of a code generated by the standard-form rows.
pub fn permuted_code(sf: &StandardFormMatrix, shape: AmbientShape) -> Result<AdditiveCode> {
    span(shape, &sf.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_file::parse_matrix;

    fn code(text: &str) -> AdditiveCode {
        let m = parse_matrix(text).unwrap();
        span(m.shape, &m.rows).unwrap()
    }

    #[test]
    fn example_types() {
        let c = code("1 1 1 0 0 0 1 | u\n0 0 0 1 1 1 1 | u\n");
        assert_eq!(type_of(&c).unwrap().triple(), (2, 0, 0));
        let c = code("1 1 1 1 | u 0 u 0 0\n0 0 1 1 | u u 0 u 0\n0 0 0 0 | u u u 0 u\n");
        let t = type_of(&c).unwrap();
        assert_eq!((t.alpha, t.beta, t.k0, t.k1, t.k2), (4, 5, 2, 0, 1));
    }

    #[test]
    fn repetition_row() {
        for (a, b) in [(1, 1), (3, 2), (5, 0)] {
            let s = AmbientShape::new(a, b).unwrap();
            let c = span(s, &[MixedVector::ones_u(s)]).unwrap();
            let sf = standard_form(&c).unwrap();
            assert_eq!(sf.code_type().triple(), (1, 0, 0));
            assert_eq!(c.cardinality(), 2);
            assert!(sf.k0_rows()[0].ring_part().iter().all(|&r| r == RingElem::U || b == 0));
        }
    }

    #[test]
    fn zero_code_type() {
        let s = AmbientShape::new(3, 2).unwrap();
        let t = type_of(&AdditiveCode::zero(s)).unwrap();
        assert_eq!((t.alpha, t.beta, t.k0, t.k1, t.k2), (3, 2, 0, 0, 0));
    }

    #[test]
    fn unit_rows_give_k1() {
        let c = code("1 0 | 1 u\n0 1 | u 0\n");
        let sf = standard_form(&c).unwrap();
        assert_eq!(1usize << sf.code_type().k1, u_multiple_count(&c));
        assert_eq!(1usize << sf.code_type().log2_cardinality(), c.cardinality());
    }

    #[test]
    fn ring_only_and_binary_only() {
        let c = code("| u u\n| 0 u\n");
        assert_eq!(type_of(&c).unwrap().triple(), (0, 0, 2));
        let c = code("| 1 v\n| 0 u\n");
        assert_eq!(type_of(&c).unwrap().triple(), (0, 1, 1));
        let c = code("1 1 0 |\n0 1 1 |\n1 0 1 |\n");
        assert_eq!(type_of(&c).unwrap().triple(), (2, 0, 0));
    }

    #[test]
    fn matrix_file_has_trailing_type_line() {
        let c = code("1 0 | 0\n0 0 | 0\n");
        let text = standard_form(&c).unwrap().to_matrix_file();
        assert!(text.ends_with("# type = (2,1;1,0,0)\n"));
        assert!(text.contains("# warning: all-zero columns (binary: [1], ring: [0])"));
        let reparsed = parse_matrix(&text).unwrap();
        assert_eq!(reparsed.rows.len(), 1);
    }

    #[test]
    fn idempotent_on_own_rows() {
        let c = code("1 1 0 1 | 1 u v 0\n0 1 1 0 | u 0 u u\n1 0 0 1 | 0 u 0 u\n");
        let sf = standard_form(&c).unwrap();
        let again = standard_form(&permuted_code(&sf, c.shape()).unwrap()).unwrap();
        assert_eq!(again.code_type(), sf.code_type());
        assert_eq!(again.rows(), sf.rows());
    }
}
