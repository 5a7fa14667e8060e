//! Built-in example codes with their published properties.

use crate::code::{span, AdditiveCode};
use crate::error::{Error, Result};
use crate::matrix_file::parse_matrix;

/// Properties claimed for a preset. `None` means no claim.
#[derive(Clone, Debug)]
pub struct Expected {
    pub enumerator: &'static [(usize, u128)],
    pub gray: [usize; 3],
    pub dual_gray: Option<[usize; 3]>,
    pub dual_enumerator: Option<&'static [(usize, u128)]>,
    /// `C⊥` in compact set notation.
    pub dual_set: Option<&'static str>,
    /// `(k0, k1, k2)` as published.
    pub stated_type: Option<(usize, usize, usize)>,
    pub one_weight: bool,
    pub two_weight: bool,
    pub projective: Option<bool>,
    pub formally_self_dual: Option<bool>,
    pub self_dual: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Preset {
    pub id: &'static str,
    pub file_name: &'static str,
    pub matrix: &'static str,
    /// Alternative matrix known to disagree with [`Expected::enumerator`].
    pub variant: Option<(&'static str, &'static str)>,
    pub expected: Expected,
}

impl Preset {
    pub fn code(&self) -> Result<AdditiveCode> {
        code_from_text(self.matrix)
    }
}

pub fn code_from_text(text: &str) -> Result<AdditiveCode> {
    let m = parse_matrix(text)?;
    span(m.shape, &m.rows)
}

const ONE_WEIGHT_9: &[(usize, u128)] = &[(0, 1), (6, 3)];

const DUAL_5_5: &[(usize, u128)] = &[
    (0, 1),
    (3, 28),
    (4, 77),
    (5, 112),
    (6, 168),
    (7, 232),
    (8, 203),
    (9, 112),
    (10, 56),
    (11, 28),
    (12, 7),
];

const DUAL_5_6: &[(usize, u128)] = &[
    (0, 1),
    (3, 64),
    (4, 378),
    (5, 1344),
    (6, 4032),
    (7, 10752),
    (8, 23439),
    (9, 40960),
    (10, 60480),
    (11, 77952),
    (12, 85484),
    (13, 77952),
    (14, 60480),
    (15, 40960),
    (16, 23439),
    (17, 10752),
    (18, 4032),
    (19, 1344),
    (20, 378),
    (21, 64),
    (24, 1),
];

const DUAL_5_7: &[(usize, u128)] = &[(0, 1), (4, 140), (6, 448), (8, 870), (10, 448), (12, 140), (16, 1)];

pub const PRESETS: &[Preset] = &[
    Preset {
        id: "3.6",
        file_name: "ex3_6.txt",
        matrix: include_str!("../data/ex3_6.txt"),
        variant: None,
        expected: Expected {
            enumerator: ONE_WEIGHT_9,
            gray: [9, 2, 6],
            dual_gray: Some([9, 7, 2]),
            dual_enumerator: None,
            dual_set: None,
            stated_type: Some((1, 0, 1)),
            one_weight: true,
            two_weight: false,
            projective: Some(false),
            formally_self_dual: None,
            self_dual: None,
        },
    },
    Preset {
        id: "3.7",
        file_name: "ex3_7.txt",
        matrix: include_str!("../data/ex3_7.txt"),
        variant: None,
        expected: Expected {
            enumerator: ONE_WEIGHT_9,
            gray: [9, 2, 6],
            dual_gray: None,
            dual_enumerator: None,
            dual_set: None,
            stated_type: Some((1, 0, 1)),
            one_weight: true,
            two_weight: false,
            projective: None,
            formally_self_dual: None,
            self_dual: None,
        },
    },
    Preset {
        id: "3.8",
        file_name: "ex3_8.txt",
        matrix: include_str!("../data/ex3_8.txt"),
        variant: None,
        expected: Expected {
            enumerator: &[(0, 1), (8, 7)],
            gray: [14, 3, 8],
            dual_gray: Some([14, 11, 2]),
            dual_enumerator: None,
            dual_set: None,
            stated_type: Some((2, 0, 1)),
            one_weight: true,
            two_weight: false,
            projective: None,
            formally_self_dual: None,
            self_dual: None,
        },
    },
    Preset {
        id: "4.3a",
        file_name: "ex4_3a.txt",
        matrix: include_str!("../data/ex4_3a.txt"),
        variant: None,
        expected: Expected {
            enumerator: &[(0, 1), (2, 1)],
            gray: [2, 1, 2],
            dual_gray: Some([2, 1, 2]),
            dual_enumerator: Some(&[(0, 1), (2, 1)]),
            dual_set: Some("{(0,0|),(1,1|)}"),
            stated_type: None,
            one_weight: true,
            two_weight: false,
            projective: None,
            formally_self_dual: Some(true),
            self_dual: Some(true),
        },
    },
    Preset {
        id: "4.3b",
        file_name: "ex4_3b.txt",
        matrix: include_str!("../data/ex4_3b.txt"),
        variant: None,
        expected: Expected {
            enumerator: &[(0, 1), (1, 1)],
            gray: [2, 1, 1],
            dual_gray: Some([2, 1, 1]),
            dual_enumerator: Some(&[(0, 1), (1, 1)]),
            dual_set: Some("{(0,0|),(0,1|)}"),
            stated_type: None,
            one_weight: true,
            two_weight: false,
            projective: None,
            formally_self_dual: Some(true),
            self_dual: Some(false),
        },
    },
    Preset {
        id: "5.4",
        file_name: "ex5_4.txt",
        matrix: include_str!("../data/ex5_4.txt"),
        variant: Some(("ex5_4_printed.txt", include_str!("../data/ex5_4_printed.txt"))),
        expected: Expected {
            enumerator: &[(0, 1), (8, 7), (9, 8)],
            gray: [16, 4, 8],
            dual_gray: None,
            dual_enumerator: None,
            dual_set: None,
            stated_type: Some((2, 0, 2)),
            one_weight: false,
            two_weight: true,
            projective: None,
            formally_self_dual: None,
            self_dual: None,
        },
    },
    Preset {
        id: "5.5",
        file_name: "ex5_5.txt",
        matrix: include_str!("../data/ex5_5.txt"),
        variant: None,
        expected: Expected {
            enumerator: &[(0, 1), (7, 8), (8, 7)],
            gray: [14, 4, 7],
            dual_gray: Some([14, 10, 3]),
            dual_enumerator: Some(DUAL_5_5),
            dual_set: None,
            stated_type: Some((2, 0, 2)),
            one_weight: false,
            two_weight: true,
            projective: Some(true),
            formally_self_dual: None,
            self_dual: None,
        },
    },
    Preset {
        id: "5.6",
        file_name: "ex5_6.txt",
        matrix: include_str!("../data/ex5_6.txt"),
        variant: None,
        expected: Expected {
            enumerator: &[(0, 1), (12, 28), (16, 3)],
            gray: [24, 5, 12],
            dual_gray: Some([24, 19, 3]),
            dual_enumerator: Some(DUAL_5_6),
            dual_set: None,
            stated_type: Some((3, 0, 2)),
            one_weight: false,
            two_weight: true,
            projective: Some(true),
            formally_self_dual: None,
            self_dual: None,
        },
    },
    Preset {
        id: "5.7",
        file_name: "ex5_7.txt",
        matrix: include_str!("../data/ex5_7.txt"),
        variant: None,
        expected: Expected {
            enumerator: &[(0, 1), (8, 30), (16, 1)],
            gray: [16, 5, 8],
            dual_gray: Some([16, 11, 4]),
            dual_enumerator: Some(DUAL_5_7),
            dual_set: None,
            stated_type: Some((3, 0, 2)),
            one_weight: false,
            two_weight: true,
            projective: Some(true),
            formally_self_dual: None,
            self_dual: None,
        },
    },
];

pub fn preset(id: &str) -> Result<&'static Preset> {
    PRESETS
        .iter()
        .find(|p| p.id == id)
        .ok_or_else(|| Error::UnknownPreset(id.to_string()))
}

pub fn preset_ids() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|p| p.id)
}
