#![allow(dead_code)]

use rand::Rng;
use z2z2u::code::AmbientShape;
use z2z2u::{span, AdditiveCode, MixedVector};

pub fn random_vector<R: Rng>(rng: &mut R, shape: AmbientShape) -> MixedVector {
    shape.unpack(rng.gen::<u64>() & ((1u64 << shape.big_n()) - 1))
}

/// A code spanned by `1..=max_rows` uniform rows in a uniform shape with
/// `alpha <= max_alpha`, `beta <= max_beta` and Gray length at most `max_n`.
pub fn random_code<R: Rng>(rng: &mut R, max_alpha: usize, max_beta: usize, max_rows: usize, max_n: usize) -> AdditiveCode {
    let shape = loop {
        let (a, b) = (rng.gen_range(0..=max_alpha), rng.gen_range(0..=max_beta));
        if a + b > 0 && a + 2 * b <= max_n {
            break AmbientShape::new(a, b).unwrap();
        }
    };
    let rows: Vec<MixedVector> = (0..rng.gen_range(1..=max_rows)).map(|_| random_vector(rng, shape)).collect();
    span(shape, &rows).unwrap()
}
