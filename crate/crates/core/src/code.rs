//! The ambient module `Z2^alpha x R^beta`, its vectors, and additive codes.
//!
//! A [`MixedVector`] keeps three bit masks: the binary coordinates, the
//! unit parts and the `u`-parts of the ring coordinates. Coordinate `i` of a
//! block of length `n` lives at bit `n - 1 - i`, so comparing masks as
//! integers gives the big-endian canonical order.
//!
//! Vector addition is XOR on all three masks, which makes an additive code a
//! binary linear subspace of the packed word `bin ‖ unit ‖ nil`. Spans and
//! duals are computed on that packed form.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::thread;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::RingElem;

/// Largest Gray length supported by the packed representation.
pub const MAX_GRAY_LEN: usize = 64;
/// Largest Gray length for which [`dual_brute`] scans the ambient space.
pub const DUAL_BRUTE_LIMIT: usize = 26;
/// Largest code dimension (log2 of the cardinality) that is materialised.
pub const MAX_CODE_DIMENSION: usize = 22;

static WORKER_THREADS: AtomicUsize = AtomicUsize::new(0);

/// Sets the number of worker threads used by ambient scans; `0` means one
/// per available core.
pub fn set_worker_threads(n: usize) {
    WORKER_THREADS.store(n, AtomicOrdering::Relaxed);
}

fn worker_threads() -> usize {
    match WORKER_THREADS.load(AtomicOrdering::Relaxed) {
        0 => thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    }
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Moves bit `t` of the low 32 bits to bit `2t`.
#[inline]
pub(crate) fn spread_bits(x: u64) -> u64 {
    let mut x = x & 0xFFFF_FFFF;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// `x << n`, zero when `n == 64`.
#[inline]
fn shl(x: u64, n: usize) -> u64 {
    x.checked_shl(n as u32).unwrap_or(0)
}

#[inline]
fn parity(x: u64) -> u8 {
    (x.count_ones() & 1) as u8
}

/// `(alpha, beta)` with Gray length `N = alpha + 2·beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AmbientShape {
    alpha: u8,
    beta: u8,
}

impl AmbientShape {
    pub fn new(alpha: usize, beta: usize) -> Result<Self> {
        if alpha + beta == 0 {
            return Err(Error::InvalidShape("alpha + beta must be at least 1".into()));
        }
        if alpha + 2 * beta > MAX_GRAY_LEN {
            return Err(Error::InvalidShape(format!(
                "Gray length {} exceeds {MAX_GRAY_LEN}",
                alpha + 2 * beta
            )));
        }
        Ok(AmbientShape {
            alpha: alpha as u8,
            beta: beta as u8,
        })
    }

    #[inline]
    pub fn alpha(self) -> usize {
        self.alpha as usize
    }

    #[inline]
    pub fn beta(self) -> usize {
        self.beta as usize
    }

    /// Gray length `alpha + 2·beta`.
    #[inline]
    pub fn big_n(self) -> usize {
        self.alpha() + 2 * self.beta()
    }

    /// Number of vectors in the ambient module, `2^N`.
    pub fn ambient_size(self) -> u128 {
        1u128 << self.big_n()
    }

    /// Decodes the packed word `bin ‖ unit ‖ nil` (see [`MixedVector::pack`]).
    #[inline]
    pub fn unpack(self, word: u64) -> MixedVector {
        let b = self.beta();
        MixedVector {
            shape: self,
            bin: word.checked_shr(2 * b as u32).unwrap_or(0) & low_mask(self.alpha()),
            unit: (word >> b) & low_mask(b),
            nil: word & low_mask(b),
        }
    }
}

impl fmt::Display for AmbientShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// A word of `Z2^n`, `n <= 64`, with coordinate `i` at bit `n - 1 - i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    len: usize,
    bits: u64,
}

impl BitWord {
    pub fn new(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "bit words hold at most 64 coordinates");
        BitWord {
            len,
            bits: bits & low_mask(len),
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let word = bits.iter().fold(0u64, |acc, &b| (acc << 1) | (b & 1) as u64);
        BitWord::new(bits.len(), word)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> u8 {
        ((self.bits >> (self.len - 1 - i)) & 1) as u8
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn distance(&self, other: &BitWord) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

/// A point of `Z2^alpha x R^beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MixedVector {
    shape: AmbientShape,
    bin: u64,
    unit: u64,
    nil: u64,
}

impl MixedVector {
    pub fn zero(shape: AmbientShape) -> Self {
        MixedVector {
            shape,
            bin: 0,
            unit: 0,
            nil: 0,
        }
    }

    pub fn new(shape: AmbientShape, bin: &[u8], ring: &[RingElem]) -> Result<Self> {
        if bin.len() != shape.alpha() || ring.len() != shape.beta() {
            return Err(Error::InvalidShape(format!(
                "vector with {} binary and {} ring coordinates does not fit {shape}",
                bin.len(),
                ring.len()
            )));
        }
        let mut v = MixedVector::zero(shape);
        for (i, &b) in bin.iter().enumerate() {
            v.set_bin(i, b);
        }
        for (j, &r) in ring.iter().enumerate() {
            v.set_ring(j, r);
        }
        Ok(v)
    }

    /// All-ones binary part and all-`u` ring part.
    pub fn ones_u(shape: AmbientShape) -> Self {
        MixedVector {
            shape,
            bin: low_mask(shape.alpha()),
            unit: 0,
            nil: low_mask(shape.beta()),
        }
    }

    #[inline]
    pub fn shape(&self) -> AmbientShape {
        self.shape
    }

    #[inline]
    pub fn bin(&self, i: usize) -> u8 {
        ((self.bin >> (self.shape.alpha() - 1 - i)) & 1) as u8
    }

    #[inline]
    pub fn ring(&self, j: usize) -> RingElem {
        let s = self.shape.beta() - 1 - j;
        RingElem::new(((self.unit >> s) & 1) as u8, ((self.nil >> s) & 1) as u8)
    }

    pub fn set_bin(&mut self, i: usize, b: u8) {
        let s = self.shape.alpha() - 1 - i;
        self.bin = (self.bin & !(1 << s)) | (((b & 1) as u64) << s);
    }

    pub fn set_ring(&mut self, j: usize, r: RingElem) {
        let s = self.shape.beta() - 1 - j;
        self.unit = (self.unit & !(1 << s)) | ((r.unit_part() as u64) << s);
        self.nil = (self.nil & !(1 << s)) | ((r.nil_part() as u64) << s);
    }

    pub fn bin_part(&self) -> Vec<u8> {
        (0..self.shape.alpha()).map(|i| self.bin(i)).collect()
    }

    pub fn ring_part(&self) -> Vec<RingElem> {
        (0..self.shape.beta()).map(|j| self.ring(j)).collect()
    }

    /// Raw masks `(binary, unit parts, u-parts)`.
    #[inline]
    pub fn masks(&self) -> (u64, u64, u64) {
        (self.bin, self.unit, self.nil)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        (self.bin | self.unit | self.nil) == 0
    }

    /// Packs into `bin ‖ unit ‖ nil`; a Z2-linear bijection onto `Z2^N`.
    #[inline]
    pub fn pack(&self) -> u64 {
        let b = self.shape.beta();
        if b == 0 {
            self.bin
        } else {
            shl(self.bin, 2 * b) | (self.unit << b) | self.nil
        }
    }

    fn check_shape(&self, other: &MixedVector) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape,
                right: other.shape,
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn xor(&self, other: &MixedVector) -> MixedVector {
        MixedVector {
            shape: self.shape,
            bin: self.bin ^ other.bin,
            unit: self.unit ^ other.unit,
            nil: self.nil ^ other.nil,
        }
    }

    pub fn add(&self, other: &MixedVector) -> Result<MixedVector> {
        self.check_shape(other)?;
        Ok(self.xor(other))
    }

    /// `c · v` with `c = r + q·u`: the binary part is scaled by `r`, the ring
    /// part by `c`.
    #[inline]
    pub fn scalar_mul(&self, c: RingElem) -> MixedVector {
        let r = (c.unit_part() as u64).wrapping_neg();
        let q = (c.nil_part() as u64).wrapping_neg();
        MixedVector {
            shape: self.shape,
            bin: self.bin & r,
            unit: self.unit & r,
            nil: (self.nil & r) ^ (self.unit & q),
        }
    }

    /// `u·Σ v_i w_i` over binary coordinates plus `Σ v_j w_j` over ring
    /// coordinates.
    pub fn inner_product(&self, other: &MixedVector) -> Result<RingElem> {
        self.check_shape(other)?;
        Ok(self.inner_product_unchecked(other))
    }

    #[inline]
    pub(crate) fn inner_product_unchecked(&self, w: &MixedVector) -> RingElem {
        let a = parity(self.unit & w.unit);
        let b = parity(self.bin & w.bin) ^ parity(self.unit & w.nil) ^ parity(self.nil & w.unit);
        RingElem::new(a, b)
    }

    #[inline]
    pub fn lee_weight(&self) -> u32 {
        self.bin.count_ones() + self.unit.count_ones() + 2 * (self.nil & !self.unit).count_ones()
    }

    pub fn lee_distance(&self, other: &MixedVector) -> Result<u32> {
        Ok(self.add(other)?.lee_weight())
    }

    /// Gray image: binary part verbatim, then `psi` of each ring coordinate.
    #[inline]
    pub fn gray_map(&self) -> BitWord {
        let b = self.shape.beta();
        let ring = (spread_bits(self.nil) << 1) | spread_bits(self.unit ^ self.nil);
        let bits = if b == 0 { self.bin } else { shl(self.bin, 2 * b) | ring };
        BitWord::new(self.shape.big_n(), bits)
    }

    /// `(b0,b1,...|r0,r1,...)`.
    pub fn compact(&self) -> String {
        let bin: Vec<String> = self.bin_part().iter().map(u8::to_string).collect();
        let ring: Vec<&str> = self.ring_part().iter().map(|r| r.token()).collect();
        format!("({}|{})", bin.join(","), ring.join(","))
    }

    fn ring_key(&self) -> u64 {
        (spread_bits(self.nil) << 1) | spread_bits(self.unit)
    }
}

impl Ord for MixedVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shape
            .cmp(&other.shape)
            .then(self.bin.cmp(&other.bin))
            .then_with(|| self.ring_key().cmp(&other.ring_key()))
    }
}

impl PartialOrd for MixedVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MixedVector {
    /// Matrix-file row syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens: Vec<String> = self.bin_part().iter().map(u8::to_string).collect();
        tokens.push("|".into());
        tokens.extend(self.ring_part().iter().map(|r| r.token().to_string()));
        f.write_str(&tokens.join(" "))
    }
}

/// Row-reduced echelon basis over Z2 of packed words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct Z2Basis {
    rows: Vec<u64>,
}

impl Z2Basis {
    fn reduce(&self, mut w: u64) -> u64 {
        for &r in &self.rows {
            let lead = 63 - r.leading_zeros();
            if (w >> lead) & 1 == 1 {
                w ^= r;
            }
        }
        w
    }

    /// Inserts `w`, keeping rows fully reduced and sorted by leading bit.
    /// Returns whether the dimension grew.
    pub(crate) fn insert(&mut self, w: u64) -> bool {
        let w = self.reduce(w);
        if w == 0 {
            return false;
        }
        let lead = 63 - w.leading_zeros();
        for r in &mut self.rows {
            if (*r >> lead) & 1 == 1 {
                *r ^= w;
            }
        }
        let pos = self.rows.partition_point(|&r| r.leading_zeros() < w.leading_zeros());
        self.rows.insert(pos, w);
        true
    }

    pub(crate) fn contains(&self, w: u64) -> bool {
        self.reduce(w) == 0
    }

    pub(crate) fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Every vector of the span, in Gray-code traversal order.
    pub(crate) fn elements(&self) -> Vec<u64> {
        let k = self.rows.len();
        let mut out = Vec::with_capacity(1 << k);
        let mut acc = 0u64;
        out.push(acc);
        for i in 1u64..(1u64 << k) {
            acc ^= self.rows[i.trailing_zeros() as usize];
            out.push(acc);
        }
        out
    }
}

/// An `R`-submodule of `Z2^alpha x R^beta` together with its generators.
#[derive(Clone, Debug)]
pub struct AdditiveCode {
    shape: AmbientShape,
    generators: Vec<MixedVector>,
    basis: Z2Basis,
    codewords: Vec<MixedVector>,
}

impl PartialEq for AdditiveCode {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.basis == other.basis
    }
}

impl Eq for AdditiveCode {}

impl AdditiveCode {
    fn from_basis(shape: AmbientShape, generators: Vec<MixedVector>, basis: Z2Basis) -> Result<Self> {
        if basis.dimension() > MAX_CODE_DIMENSION {
            return Err(Error::TooManyCodewords {
                dimension: basis.dimension(),
                limit: MAX_CODE_DIMENSION,
            });
        }
        let mut codewords: Vec<MixedVector> =
            basis.elements().into_iter().map(|w| shape.unpack(w)).collect();
        codewords.sort_unstable();
        Ok(AdditiveCode {
            shape,
            generators,
            basis,
            codewords,
        })
    }

    /// The code `{0}`.
    pub fn zero(shape: AmbientShape) -> Self {
        AdditiveCode {
            shape,
            generators: Vec::new(),
            basis: Z2Basis::default(),
            codewords: vec![MixedVector::zero(shape)],
        }
    }

    pub fn shape(&self) -> AmbientShape {
        self.shape
    }

    pub fn generators(&self) -> &[MixedVector] {
        &self.generators
    }

    /// Codewords in canonical order (zero first).
    pub fn codewords(&self) -> &[MixedVector] {
        &self.codewords
    }

    pub fn cardinality(&self) -> usize {
        self.codewords.len()
    }

    /// `log2 |C|`, the dimension of the binary image.
    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    pub fn contains(&self, v: &MixedVector) -> bool {
        v.shape == self.shape && self.basis.contains(v.pack())
    }

    /// A Z2-basis of the code (also an `R`-generating set).
    pub fn z2_basis(&self) -> Vec<MixedVector> {
        self.basis.rows().iter().map(|&w| self.shape.unpack(w)).collect()
    }

    /// Canonical fingerprint: equal for two codes iff they are equal as sets.
    pub fn fingerprint(&self) -> (AmbientShape, Vec<u64>) {
        (self.shape, self.basis.rows().to_vec())
    }

    pub fn gray_image(&self) -> Vec<BitWord> {
        self.codewords.iter().map(MixedVector::gray_map).collect()
    }

    /// True when the codeword set is closed under addition and under
    /// multiplication by every ring element.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&MixedVector> = self.codewords.iter().collect();
        if !set.contains(&MixedVector::zero(self.shape)) {
            return false;
        }
        let gens = self.z2_basis();
        self.codewords.iter().all(|c| {
            RingElem::ALL.iter().all(|&s| set.contains(&c.scalar_mul(s)))
                && gens.iter().all(|g| set.contains(&c.xor(g)))
        })
    }

    /// Binary columns and ring columns that are zero in every codeword.
    pub fn zero_columns(&self) -> (Vec<usize>, Vec<usize>) {
        let (mut bin, mut unit, mut nil) = (0u64, 0u64, 0u64);
        for w in self.basis.rows() {
            let v = self.shape.unpack(*w);
            bin |= v.bin;
            unit |= v.unit;
            nil |= v.nil;
        }
        let probe = MixedVector {
            shape: self.shape,
            bin,
            unit,
            nil,
        };
        let zb = (0..self.shape.alpha()).filter(|&i| probe.bin(i) == 0).collect();
        let zr = (0..self.shape.beta()).filter(|&j| probe.ring(j).is_zero()).collect();
        (zb, zr)
    }

    pub fn has_zero_columns(&self) -> bool {
        let (b, r) = self.zero_columns();
        !(b.is_empty() && r.is_empty())
    }

    /// Compact set notation, e.g. `{(0,0|),(1,1|)}`.
    pub fn compact(&self) -> String {
        let words: Vec<String> = self.codewords.iter().map(MixedVector::compact).collect();
        format!("{{{}}}", words.join(","))
    }
}

/// The `R`-submodule generated by `rows`.
pub fn span(shape: AmbientShape, rows: &[MixedVector]) -> Result<AdditiveCode> {
    let mut basis = Z2Basis::default();
    for r in rows {
        if r.shape != shape {
            return Err(Error::ShapeMismatch {
                left: shape,
                right: r.shape,
            });
        }
        // R-span = Z2-span of {r, u·r}; (1+u)·r = r + u·r.
        basis.insert(r.pack());
        basis.insert(r.scalar_mul(RingElem::U).pack());
        if basis.dimension() > MAX_CODE_DIMENSION {
            return Err(Error::TooManyCodewords {
                dimension: basis.dimension(),
                limit: MAX_CODE_DIMENSION,
            });
        }
    }
    AdditiveCode::from_basis(shape, rows.to_vec(), basis)
}

/// Orthogonality to `g` as two parity checks on packed words.
fn orthogonality_masks(g: &MixedVector) -> [u64; 2] {
    let b = g.shape.beta();
    let f_unit = if b == 0 { 0 } else { g.unit << b };
    let f_nil = if b == 0 {
        g.bin
    } else {
        shl(g.bin, 2 * b) | (g.nil << b) | g.unit
    };
    [f_unit, f_nil]
}

/// `C⊥` by scanning the whole ambient space once against the generators.
pub fn dual_brute(code: &AdditiveCode) -> Result<AdditiveCode> {
    dual_brute_partitioned(code, worker_threads())
}

/// [`dual_brute`] with the scan split into `parts` contiguous slices.
pub fn dual_brute_partitioned(code: &AdditiveCode, parts: usize) -> Result<AdditiveCode> {
    let shape = code.shape;
    let n = shape.big_n();
    if n > DUAL_BRUTE_LIMIT {
        return Err(Error::AmbientTooLarge {
            big_n: n,
            limit: DUAL_BRUTE_LIMIT,
        });
    }
    let mut masks: Vec<u64> = code
        .z2_basis()
        .iter()
        .flat_map(orthogonality_masks)
        .filter(|&m| m != 0)
        .collect();
    masks.sort_unstable();
    masks.dedup();

    let dual_dim = n - code.dimension();
    if dual_dim > MAX_CODE_DIMENSION {
        return Err(Error::TooManyCodewords {
            dimension: dual_dim,
            limit: MAX_CODE_DIMENSION,
        });
    }

    let total = 1u64 << n;
    let parts = parts.clamp(1, 64).min(total as usize);
    let chunk = total.div_ceil(parts as u64);
    let scan = |lo: u64, hi: u64| -> Vec<u64> {
        (lo..hi)
            .filter(|&x| masks.iter().all(|&m| (x & m).count_ones() & 1 == 0))
            .collect()
    };
    let words: Vec<u64> = if parts == 1 {
        scan(0, total)
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..parts as u64)
                .map(|p| {
                    let (lo, hi) = (p * chunk, ((p + 1) * chunk).min(total));
                    s.spawn(move || scan(lo, hi))
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("dual scan worker panicked"))
                .collect()
        })
    };

    let mut basis = Z2Basis::default();
    for &w in &words {
        basis.insert(w);
        if (1usize << basis.dimension()) >= words.len() {
            break;
        }
    }
    if (1usize << basis.dimension()) != words.len() {
        return Err(Error::InternalVerificationFailure(format!(
            "dual scan found {} words, not a power of two matching rank {}",
            words.len(),
            basis.dimension()
        )));
    }
    let generators = basis.rows().iter().map(|&w| shape.unpack(w)).collect();
    let mut codewords: Vec<MixedVector> = words.into_iter().map(|w| shape.unpack(w)).collect();
    codewords.sort_unstable();
    Ok(AdditiveCode {
        shape,
        generators,
        basis,
        codewords,
    })
}

/// Minimum Lee weight over nonzero codewords.
pub fn min_lee_weight(code: &AdditiveCode) -> Result<u32> {
    code.codewords
        .iter()
        .filter(|c| !c.is_zero())
        .map(MixedVector::lee_weight)
        .min()
        .ok_or(Error::TrivialCode)
}
