//! PBW generators and dimensions for the finite rank-three classes, plus
//! two rank-two predicates.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::braiding::{gdd_of, BraidingMatrix};
use crate::classify::CaseLabel;
use crate::error::{Error, Result};
use crate::modarith::gcd;

/// A bracketed word in the generators `x1, …, xr` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BracketWord {
    Letter(usize),
    Bracket(Box<BracketWord>, Box<BracketWord>),
}

impl BracketWord {
    pub fn bracket(a: BracketWord, b: BracketWord) -> Self {
        BracketWord::Bracket(Box::new(a), Box::new(b))
    }

    /// Number of occurrences of each generator, indexed from 0.
    pub fn degree(&self, rank: usize) -> Vec<u32> {
        let mut d = vec![0; rank];
        self.count(&mut d);
        d
    }

    fn count(&self, d: &mut [u32]) {
        match self {
            BracketWord::Letter(i) => d[i - 1] += 1,
            BracketWord::Bracket(a, b) => {
                a.count(d);
                b.count(d);
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            BracketWord::Letter(_) => 1,
            BracketWord::Bracket(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_letter(&self) -> usize {
        match self {
            BracketWord::Letter(i) => *i,
            BracketWord::Bracket(a, b) => a.max_letter().max(b.max_letter()),
        }
    }
}

/// Single letters print bare; the listed PBW sets write them as `[x1]`.
impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Letter(i) => write!(f, "x{i}"),
            BracketWord::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl Serialize for BracketWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn x(i: usize) -> BracketWord {
    BracketWord::Letter(i)
}

fn br(a: BracketWord, b: BracketWord) -> BracketWord {
    BracketWord::bracket(a, b)
}

/// `[x1], [x2], [x3], [x1,x2], [x1,x3], [[x1,x3],x2]`, common to all classes.
fn common_words() -> Vec<BracketWord> {
    vec![x(1), x(2), x(3), br(x(1), x(2)), br(x(1), x(3)), br(br(x(1), x(3)), x(2))]
}

pub fn rank3_pbw(label: CaseLabel) -> Result<Vec<BracketWord>> {
    let x12 = || br(x(1), x(2));
    let x13 = || br(x(1), x(3));
    let x132 = || br(x13(), x(2));
    let mut words = common_words();
    match label {
        CaseLabel::Rank3I => {}
        CaseLabel::Rank3II => words.extend([
            br(x12(), x13()),
            br(x12(), x132()),
            br(x13(), x132()),
            br(br(x12(), x132()), x13()),
        ]),
        CaseLabel::Rank3III => words.push(br(x12(), x13())),
        other => return Err(Error::invalid(format!("{other} is not a rank-3 class"))),
    }
    Ok(words)
}

/// `2⁴m²`, `2⁷3⁴` or `2⁴m²m′²/gcd(m, m′)`.
pub fn rank3_dimension(label: CaseLabel, m: Option<u64>, m2: Option<u64>) -> Result<u128> {
    match label {
        CaseLabel::Rank3I => {
            let m = m.ok_or_else(|| Error::invalid("class (i) needs m"))?;
            if m <= 2 {
                return Err(Error::invalid(format!("class (i) needs m > 2, got {m}")));
            }
            Ok(16 * (m as u128).pow(2))
        }
        CaseLabel::Rank3II => match m {
            None | Some(3) => Ok(128 * 81),
            Some(m) => Err(Error::invalid(format!("class (ii) has m = 3, got {m}"))),
        },
        CaseLabel::Rank3III => {
            let (m, m2) = match (m, m2) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::invalid("class (iii) needs m and m2")),
            };
            if m <= 1 || m2 <= 1 {
                return Err(Error::invalid(format!("class (iii) needs m, m2 > 1, got {m}, {m2}")));
            }
            Ok(16 * (m as u128).pow(2) * (m2 as u128).pow(2) / gcd(m, m2) as u128)
        }
        other => Err(Error::invalid(format!("{other} is not a rank-3 class"))),
    }
}

/// `{x1, x2, [x1,x2]}` when `q11 = −1` and `(q22 + 1)(q22·q12·q21 − 1) = 0`.
pub fn rank2_pbw_special(b: &BraidingMatrix) -> Option<Vec<BracketWord>> {
    if b.rank() != 2 {
        return None;
    }
    let g = gdd_of(b);
    if !g.has_edge(0, 1) || !g.vertex(0).is_minus_one() {
        return None;
    }
    let q22 = g.vertex(1);
    (q22.is_minus_one() || (q22 * g.edge_root(0, 1)).is_one()).then(|| vec![x(1), x(2), br(x(1), x(2))])
}

pub fn is_quantum_linear_space(b: &BraidingMatrix) -> bool {
    gdd_of(b).edge_list().is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NicholsSummary {
    pub label: CaseLabel,
    pub pbw: Vec<BracketWord>,
    pub dimension: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<u64>,
}

impl NicholsSummary {
    /// Rank-two cases carry no dimension and no word list.
    pub fn new(label: CaseLabel, m: Option<u64>, m2: Option<u64>) -> Result<Self> {
        if label.is_rank3_class() {
            Ok(NicholsSummary { label, pbw: rank3_pbw(label)?, dimension: Some(rank3_dimension(label, m, m2)?), m, m2 })
        } else {
            Ok(NicholsSummary { label, pbw: Vec::new(), dimension: None, m, m2 })
        }
    }
}
