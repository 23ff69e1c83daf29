//! Rank-two cases as data. Each case fixes a designated root `z`, writes
//! `q11`, `q22` and the edge `q12·q21` in terms of `z`, and adds arithmetic
//! conditions on `m = ord(z)`. Keeping the root relations apart from the
//! arithmetic lets each half be evaluated on its own.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::braiding::RootExp;
use crate::error::Error;
use crate::modarith::{factorize, legendre};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    T2_1,
    T2_2a,
    T2_2b,
    T2_3,
    T3_1a,
    T3_1b,
    T3_2a,
    T3_2b,
    T3_3,
    T4_1,
    T4_2,
    T5_1,
    T5_2,
    T6,
    T7_1,
    T7_2,
    T8_1,
    T8_2a,
    T8_2b,
    T8_3,
    T9,
    T10,
    T11_1,
    T11_2,
    T12,
    T13,
    T14,
    T15,
    T16_1,
    T16_2,
    T17,
    T18,
    T20,
    T21,
    Rank3I,
    Rank3II,
    Rank3III,
    Infinite,
    NotRealizable,
    Disconnected,
}

const NAMES: &[(CaseLabel, &str)] = &[
    (CaseLabel::T2_1, "T2(1)"),
    (CaseLabel::T2_2a, "T2(2)_1"),
    (CaseLabel::T2_2b, "T2(2)_2"),
    (CaseLabel::T2_3, "T2(3)"),
    (CaseLabel::T3_1a, "T3(1)_1"),
    (CaseLabel::T3_1b, "T3(1)_2"),
    (CaseLabel::T3_2a, "T3(2)_1"),
    (CaseLabel::T3_2b, "T3(2)_2"),
    (CaseLabel::T3_3, "T3(3)"),
    (CaseLabel::T4_1, "T4(1)"),
    (CaseLabel::T4_2, "T4(2)"),
    (CaseLabel::T5_1, "T5(1)"),
    (CaseLabel::T5_2, "T5(2)"),
    (CaseLabel::T6, "T6"),
    (CaseLabel::T7_1, "T7(1)"),
    (CaseLabel::T7_2, "T7(2)"),
    (CaseLabel::T8_1, "T8(1)"),
    (CaseLabel::T8_2a, "T8(2)_1"),
    (CaseLabel::T8_2b, "T8(2)_2"),
    (CaseLabel::T8_3, "T8(3)"),
    (CaseLabel::T9, "T9"),
    (CaseLabel::T10, "T10"),
    (CaseLabel::T11_1, "T11(1)"),
    (CaseLabel::T11_2, "T11(2)"),
    (CaseLabel::T12, "T12"),
    (CaseLabel::T13, "T13"),
    (CaseLabel::T14, "T14"),
    (CaseLabel::T15, "T15"),
    (CaseLabel::T16_1, "T16(1)"),
    (CaseLabel::T16_2, "T16(2)"),
    (CaseLabel::T17, "T17"),
    (CaseLabel::T18, "T18"),
    (CaseLabel::T20, "T20"),
    (CaseLabel::T21, "T21"),
    (CaseLabel::Rank3I, "rank3(i)"),
    (CaseLabel::Rank3II, "rank3(ii)"),
    (CaseLabel::Rank3III, "rank3(iii)"),
    (CaseLabel::Infinite, "infinite"),
    (CaseLabel::NotRealizable, "not-realizable"),
    (CaseLabel::Disconnected, "disconnected"),
];

impl CaseLabel {
    pub fn name(self) -> &'static str {
        NAMES.iter().find(|(l, _)| *l == self).map(|(_, s)| *s).expect("every label is named")
    }

    pub fn all() -> impl Iterator<Item = CaseLabel> {
        NAMES.iter().map(|(l, _)| *l)
    }

    pub fn is_rank2_case(self) -> bool {
        self < CaseLabel::Rank3I
    }

    pub fn is_rank3_class(self) -> bool {
        matches!(self, CaseLabel::Rank3I | CaseLabel::Rank3II | CaseLabel::Rank3III)
    }

    /// A label naming a finite-dimensional class.
    pub fn is_finite(self) -> bool {
        self.is_rank2_case() || self.is_rank3_class()
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseLabel {
    type Err = Error;

    /// Accepts the display name or the identifier, e.g. `T2(2)_1` or `T2_2a`.
    fn from_str(s: &str) -> Result<Self, Error> {
        CaseLabel::all()
            .find(|l| l.name().eq_ignore_ascii_case(s) || format!("{l:?}").eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown label {s:?}")))
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A root written in terms of the designated root `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootExpr {
    /// `(−1)^neg · z^exp`
    Pow { neg: bool, exp: i64 },
    /// Any root of exactly this order.
    OfOrder(u64),
}

const fn z(exp: i64) -> RootExpr {
    RootExpr::Pow { neg: false, exp }
}

const fn minus_z(exp: i64) -> RootExpr {
    RootExpr::Pow { neg: true, exp }
}

const MINUS_ONE: RootExpr = minus_z(0);

impl RootExpr {
    pub fn holds(self, q: RootExp, zr: RootExp) -> bool {
        match self {
            RootExpr::OfOrder(k) => q.order() == k,
            RootExpr::Pow { neg, exp } => {
                let mut want = zr.pow(exp);
                if neg {
                    match RootExp::minus_one(q.modulus()) {
                        Some(m1) => want = want * m1,
                        None => return false,
                    }
                }
                want == q
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZOrder {
    AtLeast(u64),
    Exactly(u64),
}

impl ZOrder {
    pub fn admits(self, m: u64) -> bool {
        match self {
            ZOrder::AtLeast(k) => m >= k,
            ZOrder::Exactly(k) => m == k,
        }
    }
}

/// Side conditions on the factorization of `m = ord(z)`, with
/// `α1 = v₂(m)`, `α2 = v₃(m)` and `p` ranging over primes above 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    None,
    /// `α1 = 0`, `α2 ≤ 1`, `(−3/p) = 1`.
    EisensteinSplit,
    /// `α1 = 0` or `α1 > 1`.
    NotTwiceOdd,
    /// `α1 ≤ 1`, `α2 = 0`, `p ≡ 1 (mod 4)`.
    GaussianSplit,
    /// `α1 ∉ {2, 3}`.
    TwoAdicNotTwoOrThree,
    /// `3 ∤ m`, or `m·s/3 ≢ 2 (mod 3)` where `q11 = z^{(m/3)·s}`, `s ∈ {1, 2}`.
    CubeRoot,
}

impl Arithmetic {
    pub fn holds(self, m: u64, q11: RootExp, zr: RootExp) -> bool {
        let f = factorize(m);
        let (a1, a2) = (f.exponent(2), f.exponent(3));
        let big = || f.primes().filter(|&p| p > 3);
        match self {
            Arithmetic::None => true,
            Arithmetic::EisensteinSplit => {
                a1 == 0 && a2 <= 1 && big().all(|p| legendre(-3, p) == Ok(1))
            }
            Arithmetic::NotTwiceOdd => a1 != 1,
            Arithmetic::GaussianSplit => a1 <= 1 && a2 == 0 && big().all(|p| p % 4 == 1),
            Arithmetic::TwoAdicNotTwoOrThree => a1 != 2 && a1 != 3,
            Arithmetic::CubeRoot => {
                if m % 3 != 0 {
                    return true;
                }
                (1..=2i64)
                    .find(|&s| zr.pow((m / 3) as i64 * s) == q11)
                    .is_some_and(|s| ((m / 3) as i64 * s).rem_euclid(3) != 2)
            }
        }
    }
}

/// Root relations of one case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub z_order: ZOrder,
    pub q11: RootExpr,
    pub q22: RootExpr,
    pub edge: RootExpr,
}

impl Shape {
    /// The designated root, when one makes all three relations hold.
    pub fn designated_root(&self, q11: RootExp, q22: RootExp, edge: RootExp) -> Option<RootExp> {
        let n = q11.modulus();
        (0..n as i64).map(|e| RootExp::new(e, n)).find(|&zr| {
            self.z_order.admits(zr.order())
                && self.q11.holds(q11, zr)
                && self.q22.holds(q22, zr)
                && self.edge.holds(edge, zr)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseConditions {
    pub label: CaseLabel,
    pub shape: Shape,
    pub arithmetic: Arithmetic,
    /// The case's stated `m` when it differs from `ord(z)`.
    pub stated_m: Option<u64>,
}

const fn case(label: CaseLabel, z_order: ZOrder, q11: RootExpr, q22: RootExpr, edge: RootExpr) -> CaseConditions {
    CaseConditions { label, shape: Shape { z_order, q11, q22, edge }, arithmetic: Arithmetic::None, stated_m: None }
}

const fn with(mut c: CaseConditions, a: Arithmetic) -> CaseConditions {
    c.arithmetic = a;
    c
}

const fn stated(mut c: CaseConditions, m: u64) -> CaseConditions {
    c.stated_m = Some(m);
    c
}

use CaseLabel as L;
use ZOrder::{AtLeast, Exactly};

/// In listing order, which is also the tie-breaking order.
pub const RANK2_CASES: &[CaseConditions] = &[
    with(case(L::T2_1, AtLeast(2), z(-1), z(-1), z(1)), Arithmetic::EisensteinSplit),
    with(case(L::T2_2a, AtLeast(2), MINUS_ONE, z(-1), z(1)), Arithmetic::NotTwiceOdd),
    with(case(L::T2_2b, AtLeast(2), z(-1), MINUS_ONE, z(1)), Arithmetic::NotTwiceOdd),
    with(case(L::T2_3, AtLeast(2), MINUS_ONE, MINUS_ONE, z(1)), Arithmetic::NotTwiceOdd),
    with(case(L::T3_1a, AtLeast(3), z(1), z(2), z(-2)), Arithmetic::GaussianSplit),
    with(case(L::T3_1b, AtLeast(3), z(1), MINUS_ONE, z(-2)), Arithmetic::TwoAdicNotTwoOrThree),
    with(case(L::T3_2a, AtLeast(4), RootExpr::OfOrder(3), z(1), z(-1)), Arithmetic::CubeRoot),
    stated(case(L::T3_2b, Exactly(3), z(1), MINUS_ONE, MINUS_ONE), 6),
    stated(case(L::T3_3, Exactly(3), z(1), MINUS_ONE, minus_z(1)), 6),
    case(L::T4_1, Exactly(12), z(4), minus_z(2), z(-3)),
    case(L::T4_2, Exactly(12), minus_z(2), minus_z(2), z(1)),
    case(L::T5_1, Exactly(12), minus_z(2), MINUS_ONE, z(1)),
    case(L::T5_2, Exactly(12), z(4), MINUS_ONE, z(-3)),
    case(L::T6, Exactly(18), z(1), minus_z(3), z(-2)),
    case(L::T7_1, Exactly(12), z(1), MINUS_ONE, z(-3)),
    case(L::T7_2, Exactly(12), z(-3), MINUS_ONE, z(1)),
    with(case(L::T8_1, AtLeast(4), z(1), z(3), z(-3)), Arithmetic::EisensteinSplit),
    case(L::T8_2a, Exactly(8), minus_z(1), MINUS_ONE, z(1)),
    case(L::T8_2b, Exactly(8), z(-2), MINUS_ONE, z(1)),
    case(L::T8_3, Exactly(8), z(2), z(-1), z(1)),
    stated(case(L::T9, Exactly(9), z(-3), MINUS_ONE, z(1)), 18),
    case(L::T10, Exactly(24), z(-6), z(-8), z(1)),
    stated(case(L::T11_1, Exactly(5), z(1), MINUS_ONE, z(-3)), 10),
    case(L::T11_2, Exactly(20), z(1), MINUS_ONE, z(-3)),
    case(L::T12, Exactly(30), z(1), minus_z(5), z(-3)),
    case(L::T13, Exactly(24), z(6), z(-1), z(1)),
    case(L::T14, Exactly(18), z(1), MINUS_ONE, z(-4)),
    case(L::T15, Exactly(30), minus_z(-3), z(-1), z(1)),
    case(L::T16_1, Exactly(10), z(1), MINUS_ONE, z(-4)),
    case(L::T16_2, Exactly(20), z(-4), MINUS_ONE, z(1)),
    case(L::T17, Exactly(24), minus_z(4), MINUS_ONE, z(1)),
    case(L::T18, Exactly(30), minus_z(5), MINUS_ONE, z(1)),
    case(L::T20, Exactly(30), z(-6), MINUS_ONE, z(1)),
    case(L::T21, Exactly(24), z(1), MINUS_ONE, z(-5)),
];

/// Diagrams with finite root systems that never come from ℤₙ: the normal
/// forms `x² + 3x + 7` and `x² + 5x + 7 (mod 14)` have no roots.
pub const EXCLUDED_SHAPES: &[(&str, Shape)] = &[
    ("T19", Shape { z_order: Exactly(14), q11: z(1), q22: MINUS_ONE, edge: z(-3) }),
    ("T22", Shape { z_order: Exactly(14), q11: z(1), q22: MINUS_ONE, edge: z(-5) }),
];

pub fn conditions(label: CaseLabel) -> Option<&'static CaseConditions> {
    RANK2_CASES.iter().find(|c| c.label == label)
}

/// Result of matching one case against `(q11, q22, edge)` in one orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseMatch {
    pub label: CaseLabel,
    pub swapped: bool,
    pub z: RootExp,
    pub m: u64,
    pub arithmetic_holds: bool,
}

impl CaseConditions {
    /// Tries both vertex orientations; prefers one where the arithmetic holds.
    pub fn evaluate(&self, q11: RootExp, q22: RootExp, edge: RootExp) -> Option<CaseMatch> {
        let mut found = None;
        for swapped in [false, true] {
            let (a, b) = if swapped { (q22, q11) } else { (q11, q22) };
            if let Some(zr) = self.shape.designated_root(a, b, edge) {
                let m = zr.order();
                let ok = self.arithmetic.holds(m, a, zr);
                let hit = CaseMatch { label: self.label, swapped, z: zr, m: self.stated_m.unwrap_or(m), arithmetic_holds: ok };
                if ok {
                    return Some(hit);
                }
                found.get_or_insert(hit);
            }
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for l in CaseLabel::all() {
            assert_eq!(l.name().parse::<CaseLabel>().unwrap(), l);
            assert_eq!(format!("{l:?}").parse::<CaseLabel>().unwrap(), l);
        }
        assert_eq!(RANK2_CASES.len(), 34);
        assert!(RANK2_CASES.iter().all(|c| c.label.is_rank2_case()));
    }

    #[test]
    fn expressions() {
        let n = 12;
        let zr = RootExp::new(1, n);
        assert!(minus_z(2).holds(RootExp::new(8, n), zr));
        assert!(MINUS_ONE.holds(RootExp::new(6, n), zr));
        assert!(!MINUS_ONE.holds(RootExp::new(0, 7), RootExp::new(1, 7)));
        assert!(RootExpr::OfOrder(3).holds(RootExp::new(4, n), zr));
    }

    #[test]
    fn t4_1_example() {
        let n = 12;
        let c = conditions(CaseLabel::T4_1).unwrap();
        let hit = c.evaluate(RootExp::new(4, n), RootExp::new(8, n), RootExp::new(9, n)).unwrap();
        assert!(hit.arithmetic_holds);
        assert_eq!(hit.z, RootExp::new(1, n));
    }

    #[test]
    fn arithmetic_clauses() {
        let one = RootExp::new(0, 1);
        assert!(Arithmetic::EisensteinSplit.holds(7, one, one));
        assert!(Arithmetic::EisensteinSplit.holds(21, one, one));
        assert!(!Arithmetic::EisensteinSplit.holds(5, one, one));
        assert!(!Arithmetic::EisensteinSplit.holds(9, one, one));
        assert!(!Arithmetic::NotTwiceOdd.holds(10, one, one));
        assert!(Arithmetic::NotTwiceOdd.holds(4, one, one));
        assert!(Arithmetic::GaussianSplit.holds(10, one, one));
        assert!(!Arithmetic::GaussianSplit.holds(4, one, one));
        assert!(!Arithmetic::TwoAdicNotTwoOrThree.holds(8, one, one));
        assert!(Arithmetic::TwoAdicNotTwoOrThree.holds(16, one, one));
        // m = 6, z = ω, q11 = z^{2s}: s = 1 gives 2s = 2 ≡ 2, rejected; s = 2 gives 4 ≡ 1.
        let n = 6;
        let zr = RootExp::new(1, n);
        assert!(!Arithmetic::CubeRoot.holds(6, RootExp::new(2, n), zr));
        assert!(Arithmetic::CubeRoot.holds(6, RootExp::new(4, n), zr));
    }
}
