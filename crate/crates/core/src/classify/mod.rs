//! Finite-dimensionality verdicts for connected diagrams over ℤₙ.
//!
//! Rank two matches the case table in [`cases`]; rank three searches the
//! Weyl orbit for one of three path templates; rank four and up is always
//! infinite. Every positive verdict carries a realization witness.

pub mod cases;
pub mod weyl;

use std::collections::BTreeMap;

use serde::Serialize;

pub use cases::{CaseConditions, CaseLabel, CaseMatch, RANK2_CASES};
pub use weyl::{cartan_row, weyl_orbit, weyl_orbit_gdd, weyl_reflect, weyl_reflect_gdd, Orbit, ReflectionData, DEFAULT_ORBIT_LIMIT};

use crate::braiding::{is_connected, Gdd, RootExp};
use crate::error::{Error, Result};
use crate::nichols::rank3_dimension;
use crate::realize::{mixed_chain_solvable, realize_gdd, Budget, Realization};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub label: CaseLabel,
    pub m: Option<u64>,
    pub m2: Option<u64>,
    pub witness: Option<Realization>,
    pub diagnostics: Vec<String>,
}

impl Verdict {
    fn bare(label: CaseLabel) -> Self {
        Verdict { label, m: None, m2: None, witness: None, diagnostics: Vec::new() }
    }
}

/// All table cases whose root relations hold, in listing order.
pub fn rank2_matches(g: &Gdd) -> Vec<CaseMatch> {
    let (q11, q22, e) = (g.vertex(0), g.vertex(1), g.edge_root(0, 1));
    RANK2_CASES.iter().filter_map(|c| c.evaluate(q11, q22, e)).collect()
}

fn excluded_match(g: &Gdd) -> Option<&'static str> {
    let (q11, q22, e) = (g.vertex(0), g.vertex(1), g.edge_root(0, 1));
    cases::EXCLUDED_SHAPES.iter().find_map(|(name, shape)| {
        let hit = shape.designated_root(q11, q22, e).is_some() || shape.designated_root(q22, q11, e).is_some();
        hit.then_some(*name)
    })
}

pub fn rank2_verdict(g: &Gdd, budget: Budget) -> Result<Verdict> {
    if g.rank() != 2 {
        return Err(Error::invalid(format!("expected rank 2, got {}", g.rank())));
    }
    if !g.has_edge(0, 1) {
        return Ok(Verdict::bare(CaseLabel::Disconnected));
    }
    let matches = rank2_matches(g);
    let mut diagnostics: Vec<String> = matches
        .iter()
        .map(|c| {
            let arith = if c.arithmetic_holds { "holds" } else { "fails" };
            format!("{} root relations hold (z = {}, m = {}); arithmetic {arith}", c.label, c.z, c.m)
        })
        .collect();
    if let Some(name) = excluded_match(g) {
        diagnostics.push(format!("{name} root relations hold; that diagram is never realizable"));
    }
    let Some(witness) = realize_gdd(g, budget)? else {
        return Ok(Verdict { diagnostics, ..Verdict::bare(CaseLabel::NotRealizable) });
    };
    match matches.iter().find(|c| c.arithmetic_holds) {
        Some(c) => Ok(Verdict { label: c.label, m: Some(c.m), m2: None, witness: Some(witness), diagnostics }),
        None => {
            if !matches.is_empty() {
                diagnostics.push("realizable but no case's arithmetic holds".into());
            }
            Ok(Verdict { label: CaseLabel::Infinite, m: None, m2: None, witness: Some(witness), diagnostics })
        }
    }
}

pub fn rank2_case(g: &Gdd) -> Result<CaseLabel> {
    Ok(rank2_verdict(g, Budget::from_env())?.label)
}

/// A path `a - c - b` as `(a, c, b)`.
fn path(g: &Gdd) -> Option<(usize, usize, usize)> {
    if g.rank() != 3 || g.edge_list().len() != 2 {
        return None;
    }
    let c = (0..3).find(|&i| g.neighbors(i).count() == 2)?;
    let mut ends = (0..3).filter(|&i| i != c);
    Some((ends.next()?, c, ends.next()?))
}

/// The three finite rank-three templates. `m ≤ m2` for class (iii).
pub fn rank3_template(g: &Gdd) -> Result<Option<(CaseLabel, u64, Option<u64>)>> {
    let Some((a, c, b)) = path(g) else { return Ok(None) };
    let n = g.modulus();
    let (qa, qc, qb) = (g.vertex(a), g.vertex(c), g.vertex(b));
    let (ea, eb) = (g.edge_root(a, c), g.edge_root(b, c));
    if !qc.is_minus_one() {
        return Ok(None);
    }
    if qa.is_minus_one() && qb.is_minus_one() {
        if ea == eb && ea.order() == 3 {
            return Ok(Some((CaseLabel::Rank3II, 3, None)));
        }
        if (ea * eb).is_one() && ea.order() > 2 {
            return Ok(Some((CaseLabel::Rank3I, ea.order(), None)));
        }
    }
    let (m, mp) = (qa.order(), qb.order());
    if ea == qa.inv() && eb == qb.inv() && m > 1 && mp > 1 && qa != qb && !(qa * qb).is_one() {
        let s = |q: RootExp, m: u64| (q.exp() / (n / m)) as i64;
        if mixed_chain_solvable(m, mp, s(qa, m), s(qb, mp), n)? {
            return Ok(Some((CaseLabel::Rank3III, m.min(mp), Some(m.max(mp)))));
        }
    }
    Ok(None)
}

pub fn rank3_verdict(g: &Gdd, budget: Budget) -> Result<Verdict> {
    rank3_verdict_with(g, budget, DEFAULT_ORBIT_LIMIT)
}

pub fn rank3_verdict_with(g: &Gdd, budget: Budget, orbit_limit: usize) -> Result<Verdict> {
    if g.rank() != 3 {
        return Err(Error::invalid(format!("expected rank 3, got {}", g.rank())));
    }
    if !is_connected(g) {
        return Ok(Verdict::bare(CaseLabel::Disconnected));
    }
    let Some(witness) = realize_gdd(g, budget)? else {
        return Ok(Verdict::bare(CaseLabel::NotRealizable));
    };
    let orbit = weyl_orbit_gdd(g, orbit_limit);
    let mut diagnostics = vec![format!("Weyl orbit has {} diagrams", orbit.len())];
    if orbit.truncated {
        diagnostics.push(format!("orbit truncated at {orbit_limit} diagrams"));
    }
    for member in &orbit.members {
        if let Some((label, m, m2)) = rank3_template(member)? {
            diagnostics.push(format!("template {label} at {member}"));
            return Ok(Verdict { label, m: Some(m), m2, witness: Some(witness), diagnostics });
        }
    }
    Ok(Verdict { label: CaseLabel::Infinite, m: None, m2: None, witness: Some(witness), diagnostics })
}

pub fn rank3_case(g: &Gdd) -> Result<CaseLabel> {
    Ok(rank3_verdict(g, Budget::from_env())?.label)
}

/// Connected diagrams of rank four or more never have finite-dimensional
/// Nichols algebras over ℤₙ.
pub fn rank_ge4_verdict(g: &Gdd) -> Result<CaseLabel> {
    if g.rank() < 4 {
        return Err(Error::invalid(format!("expected rank at least 4, got {}", g.rank())));
    }
    if !is_connected(g) {
        return Err(Error::invalid("diagram is not connected"));
    }
    Ok(CaseLabel::Infinite)
}

/// Dispatches on rank.
pub fn classify(g: &Gdd, budget: Budget) -> Result<Verdict> {
    match g.rank() {
        2 => rank2_verdict(g, budget),
        3 => rank3_verdict(g, budget),
        r if r >= 4 => {
            if !is_connected(g) {
                return Ok(Verdict::bare(CaseLabel::Disconnected));
            }
            rank_ge4_verdict(g).map(Verdict::bare)
        }
        r => Err(Error::invalid(format!("rank {r} is not classified"))),
    }
}

/// One finite class in an enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub gdd: Gdd,
    pub label: CaseLabel,
    pub m: Option<u64>,
    pub m2: Option<u64>,
    pub dimension: Option<u128>,
    pub witness: Realization,
}

/// Connected rank-two classes over ℤₙ with finite-dimensional Nichols
/// algebra, one per vertex-swap class, sorted.
pub fn enumerate_rank2(n: u64, budget: Budget) -> Result<Vec<ClassRow>> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut rows = Vec::new();
    for d1 in 0..n as i64 {
        for d2 in d1..n as i64 {
            for e in 1..n as i64 {
                let g = Gdd::rank2(n, d1, d2, e);
                let v = rank2_verdict(&g, budget)?;
                if let (true, Some(witness)) = (v.label.is_finite(), v.witness) {
                    rows.push(ClassRow { gdd: g.canonical(), label: v.label, m: v.m, m2: None, dimension: None, witness });
                }
            }
        }
    }
    rows.sort_by(|a, b| a.gdd.cmp(&b.gdd));
    Ok(rows)
}

/// Instances of the three templates over ℤₙ, before any arithmetic check.
fn template_instances(n: u64) -> Vec<Gdd> {
    let mut out = Vec::new();
    if n % 2 != 0 {
        return out;
    }
    let h = (n / 2) as i64;
    let ni = n as i64;
    let chain = |d: [i64; 3], e1: i64, e2: i64| Gdd::new(n, &d, &[((0, 1), e1), ((1, 2), e2)]).expect("valid chain");
    for e in 1..ni {
        if RootExp::new(e, n).order() > 2 {
            out.push(chain([h, h, h], e, -e));
        }
        if RootExp::new(e, n).order() == 3 {
            out.push(chain([h, h, h], e, e));
        }
    }
    for a in 1..ni {
        for b in a + 1..ni {
            if a + b != ni {
                out.push(chain([a, h, b], -a, -b));
            }
        }
    }
    out
}

/// Connected rank-three classes over ℤₙ with finite-dimensional Nichols
/// algebra: the union of the Weyl orbits of realizable template instances,
/// each member carrying its own witness.
pub fn enumerate_rank3(n: u64, budget: Budget) -> Result<Vec<ClassRow>> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut found: BTreeMap<Gdd, ClassRow> = BTreeMap::new();
    for t in template_instances(n) {
        if found.contains_key(&t.canonical()) {
            continue;
        }
        let Some((label, m, m2)) = rank3_template(&t)? else { continue };
        if realize_gdd(&t, budget)?.is_none() {
            continue;
        }
        let dimension = Some(rank3_dimension(label, Some(m), m2)?);
        let orbit = weyl_orbit_gdd(&t, DEFAULT_ORBIT_LIMIT);
        if orbit.truncated {
            return Err(Error::BudgetExceeded(DEFAULT_ORBIT_LIMIT as u64));
        }
        for g in orbit.members {
            if found.contains_key(&g) {
                continue;
            }
            let witness = realize_gdd(&g, budget)?
                .ok_or_else(|| Error::invalid(format!("orbit member {g} has no witness")))?;
            found.insert(g.clone(), ClassRow { gdd: g, label, m: Some(m), m2, dimension, witness });
        }
    }
    Ok(found.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    fn label2(n: u64, d1: i64, d2: i64, e: i64) -> CaseLabel {
        rank2_verdict(&Gdd::rank2(n, d1, d2, e), b()).unwrap().label
    }

    #[test]
    fn rank2_examples() {
        assert_eq!(label2(12, 4, 8, 9), CaseLabel::T4_1);
        assert_eq!(label2(7, 6, 6, 1), CaseLabel::T2_1);
        assert_eq!(label2(10, 5, 5, 2), CaseLabel::T2_3);
        assert_eq!(label2(4, 2, 2, 2), CaseLabel::NotRealizable);
        assert_eq!(label2(5, 1, 2, 0), CaseLabel::Disconnected);
    }

    #[test]
    fn rank2_verdict_carries_witness_and_m() {
        let g = Gdd::rank2(12, 4, 8, 9);
        let v = rank2_verdict(&g, b()).unwrap();
        assert_eq!(v.m, Some(12));
        assert!(v.witness.unwrap().satisfies(&g.clone().into()));
        assert!(!v.diagnostics.is_empty());
    }

    #[test]
    fn t19_and_t22_never_positive() {
        let n = 14;
        for z in (1..14).filter(|z| z % 2 == 1 && z % 7 != 0) {
            for edge in [-3 * z, -5 * z] {
                for (d1, d2) in [(z, 7), (7, z)] {
                    assert_eq!(label2(n, d1, d2, edge), CaseLabel::NotRealizable);
                }
            }
        }
    }

    #[test]
    fn rank3_examples() {
        let ii = Gdd::new(6, &[3, 3, 3], &[((0, 1), 2), ((1, 2), 2)]).unwrap();
        let v = rank3_verdict(&ii, b()).unwrap();
        assert_eq!(v.label, CaseLabel::Rank3II);
        assert!(v.witness.unwrap().satisfies(&ii.into()));
        // Cartan chain q -q⁻¹- q -q⁻¹- q at q = ω over ℤ₇.
        let row1 = Gdd::new(7, &[1, 1, 1], &[((0, 1), -1), ((1, 2), -1)]).unwrap();
        assert_eq!(rank3_case(&row1).unwrap(), CaseLabel::NotRealizable);
        // q -q⁻¹- −1 -q- q⁻¹ over ℤ₁₀ lies in the orbit of class (i).
        let row8 = Gdd::new(10, &[2, 5, 8], &[((0, 1), 8), ((1, 2), 2)]).unwrap();
        assert_eq!(rank3_case(&row8).unwrap(), CaseLabel::Rank3I);
        let disc = Gdd::new(6, &[3, 3, 3], &[((0, 1), 2)]).unwrap();
        assert_eq!(rank3_case(&disc).unwrap(), CaseLabel::Disconnected);
    }

    #[test]
    fn rank3_class_iii() {
        // q -q⁻¹- −1 -r⁻¹- r with q of order 4, r of order 3 over ℤ₁₂.
        let g = Gdd::new(12, &[3, 6, 4], &[((0, 1), -3), ((1, 2), -4)]).unwrap();
        let v = rank3_verdict(&g, b()).unwrap();
        assert_eq!(v.label, CaseLabel::Rank3III);
        assert_eq!((v.m, v.m2), (Some(3), Some(4)));
    }

    #[test]
    fn rank_ge4() {
        let g = Gdd::new(5, &[1, 1, 1, 1], &[((0, 1), 1), ((1, 2), 1), ((2, 3), 1)]).unwrap();
        assert_eq!(rank_ge4_verdict(&g), Ok(CaseLabel::Infinite));
        let g5 = Gdd::new(5, &[1; 5], &[((0, 1), 1), ((1, 2), 1), ((2, 3), 1), ((3, 4), 2)]).unwrap();
        assert_eq!(rank_ge4_verdict(&g5), Ok(CaseLabel::Infinite));
        let d = Gdd::new(5, &[1, 1, 1, 1], &[((0, 1), 1)]).unwrap();
        assert!(rank_ge4_verdict(&d).is_err());
    }

    #[test]
    fn enumerate_small() {
        let three = enumerate_rank2(3, b()).unwrap();
        assert_eq!(three.len(), 2);
        assert!(three.iter().all(|r| r.label == CaseLabel::T2_1));
        assert!(enumerate_rank2(2, b()).unwrap().is_empty());
        assert!(enumerate_rank2(1, b()).unwrap().is_empty());
        assert!(enumerate_rank3(2, b()).unwrap().is_empty());
        let six = enumerate_rank3(6, b()).unwrap();
        let chain = Gdd::new(6, &[3, 3, 3], &[((0, 1), 2), ((1, 2), 2)]).unwrap().canonical();
        assert!(six.iter().any(|r| r.gdd == chain && r.label == CaseLabel::Rank3II));
    }

    #[test]
    fn enumerated_rank3_rows_agree_with_verdicts() {
        for n in [4, 6, 8, 12] {
            for row in enumerate_rank3(n, b()).unwrap() {
                assert!(row.witness.satisfies(&row.gdd.clone().into()));
                let v = rank3_verdict(&row.gdd, b()).unwrap();
                assert_eq!(v.label, row.label, "{}", row.gdd);
                assert_eq!(rank3_dimension(v.label, v.m, v.m2).ok(), row.dimension, "{}", row.gdd);
            }
        }
    }

    #[test]
    fn row_json_shape() {
        let rows = enumerate_rank2(3, b()).unwrap();
        let v = serde_json::to_value(&rows[0]).unwrap();
        assert_eq!(v["label"], "T2(1)");
        assert_eq!(v["gdd"]["n"], 3);
        assert!(v["witness"]["x"].is_array());
    }
}
