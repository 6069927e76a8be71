//! Known 15-nodal plane septics of the family over small prime fields.

/// One known parameter tuple: `a1..a5` (with `a6 = a7 = 1`), the split
/// line as printed, `z = slope*x - w`, and the attached value of `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownRow {
    pub p: u64,
    pub a: [i64; 5],
    pub printed_slope: i64,
    pub alpha: i64,
}

impl KnownRow {
    /// The printed line in the form `z + t*x + w`: `t = -slope`.
    pub fn printed_t(&self) -> i64 {
        -self.printed_slope
    }
}

const fn row(p: u64, a: [i64; 5], printed_slope: i64, alpha: i64) -> KnownRow {
    KnownRow {
        p,
        a,
        printed_slope,
        alpha,
    }
}

pub const KNOWN_ROWS: [KnownRow; 14] = [
    row(11, [2, 3, 5, 2, -5], 1, -3),
    row(19, [-7, -2, 7, 1, 8], 8, 7),
    row(19, [2, 0, 1, 9, 7], 9, -4),
    row(19, [5, -9, 7, -3, -1], 2, -3),
    row(23, [-5, 11, 10, 1, 7], -9, -2),
    row(31, [-15, -13, -5, 13, -10], -2, -13),
    row(31, [1, -2, 14, -9, 11], 15, -11),
    row(31, [14, -10, -13, -14, -11], -13, -7),
    row(43, [-11, 15, 0, -13, -6], -6, 7),
    row(43, [20, 16, -1, -14, 10], -12, 14),
    row(43, [-9, 3, -3, -11, 5], 18, -21),
    row(53, [-8, 20, 14, 18, 11], 25, 4),
    row(53, [-2, -10, -14, -26, 16], -9, 24),
    row(53, [10, 25, -4, 22, 25], -16, 25),
];

/// The printed line of the `F_11` row does not divide the curve; the line
/// that does is `z = -x - w`.
pub const F11_ACTUAL_SLOPE: i64 = -1;
