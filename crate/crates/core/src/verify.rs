//! Self-checks of the classification against exhaustive searches and the
//! witness table shipped in `data/`. Each check reports pass or fail with a
//! short detail line; the CLI `verify` verb and the acceptance test run them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braiding::{gdd_of, BraidingMatrix, Gdd, RootExp};
use crate::classify::{
    enumerate_rank2, enumerate_rank3, rank2_matches, rank2_verdict, rank3_verdict, rank_ge4_verdict, weyl_orbit_gdd,
    CaseLabel, DEFAULT_ORBIT_LIMIT,
};
use crate::error::{Error, Result};
use crate::modarith::{gcd, lcm, legendre, solve_quadratic, QuadCongruence};
use crate::nichols::{is_quantum_linear_space, rank3_dimension, rank3_pbw};
use crate::realize::{
    mixed_chain_solvable, mixed_chain_system, oracle_realize, realize_gdd, realize_matrix, BilinearSystem, Budget,
    Realization,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Rank2,
    Rank3,
    Rank4,
    Corollaries,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Rank2, Suite::Rank3, Suite::Rank4, Suite::Corollaries];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rank2 => "thm1.7",
            Suite::Rank3 => "thm2.2",
            Suite::Rank4 => "thm3.1",
            Suite::Corollaries => "corollaries",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?}; expected thm1.7, thm2.2, thm3.1 or corollaries")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failures: Vec<String>, checked: usize) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{checked} cases")
        } else {
            let shown: Vec<_> = failures.iter().take(5).cloned().collect();
            format!("{} of {checked} failed: {}", failures.len(), shown.join("; "))
        };
        Check { name: name.to_string(), passed, detail }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

pub fn run_suite(suite: Suite, budget: Budget) -> Result<Vec<Check>> {
    match suite {
        Suite::Rank2 => Ok(vec![witness_table()?, quadratic_exclusions()?, rank2_equivalence(2..=24, budget)?]),
        Suite::Rank3 => Ok(vec![rank3_spot_checks(budget)?, mixed_chain_agreement(30, budget)?, dimension_goldens()?]),
        Suite::Rank4 => Ok(vec![rank4_exclusions(budget)?, rank_ge4_infinite()]),
        Suite::Corollaries => Ok(vec![prime_power_rank2(budget)?, z2_quantum_linear(budget)?, prime_power_rank3(budget)?]),
    }
}

/// A known root of one rank-2 quadratic congruence.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct WitnessRow {
    pub label: String,
    /// Uses `t2·x² − t3·x + t1` in place of `t1·x² − t3·x + t2`.
    pub variant: bool,
    pub m: u64,
    pub t1: i64,
    pub t2: i64,
    pub t3: i64,
    pub d: i64,
}

impl WitnessRow {
    pub fn congruence(&self) -> QuadCongruence {
        if self.variant {
            QuadCongruence::new(self.t2, -self.t3, self.t1, self.m)
        } else {
            QuadCongruence::new(self.t1, -self.t3, self.t2, self.m)
        }
    }
}

const WITNESSES: &str = include_str!("../data/quadratic_witnesses.csv");

pub fn witness_rows() -> Result<Vec<WitnessRow>> {
    csv::Reader::from_reader(WITNESSES.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::invalid(format!("witness table: {e}")))
}

/// Each tabulated `d` solves its congruence and the row's label parses.
pub fn witness_table() -> Result<Check> {
    let rows = witness_rows()?;
    let mut failures = Vec::new();
    for r in &rows {
        if r.label.parse::<CaseLabel>().is_err() {
            failures.push(format!("{}: unknown label", r.label));
        }
        if !solve_quadratic(&r.congruence())?.contains(r.d) {
            failures.push(format!("{}: d = {} does not solve {}", r.label, r.d, r.congruence()));
        }
    }
    Ok(Check::new("known roots solve their congruences", failures, rows.len()))
}

/// `x² + 3x + 7` and `x² + 5x + 7` have no roots mod 14.
pub fn quadratic_exclusions() -> Result<Check> {
    let mut failures = Vec::new();
    for b in [3, 5] {
        let s = solve_quadratic(&QuadCongruence::new(1, b, 7, 14))?;
        if !s.is_empty() {
            failures.push(format!("x^2+{b}x+7 has roots {:?}", s.residues()));
        }
    }
    Ok(Check::new("x^2+3x+7 and x^2+5x+7 have no roots mod 14", failures, 2))
}

/// Over every `n` in range and every connected rank-two diagram:
/// (exhaustively realizable and some case's root relations hold) exactly
/// when the verdict is a case label.
pub fn rank2_equivalence(ns: impl IntoIterator<Item = u64>, budget: Budget) -> Result<Check> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in ns {
        for d1 in 0..n as i64 {
            for d2 in 0..n as i64 {
                for e in 1..n as i64 {
                    let g = Gdd::rank2(n, d1, d2, e);
                    let oracle = oracle_realize(&BilinearSystem::new(g.clone()), budget)?;
                    let lhs = oracle.is_some() && !rank2_matches(&g).is_empty();
                    let v = rank2_verdict(&g, budget)?;
                    checked += 1;
                    if lhs != v.label.is_rank2_case() {
                        failures.push(format!("{g}: oracle+relations {lhs}, verdict {}", v.label));
                    }
                    if v.label.is_finite() && oracle.is_none() {
                        failures.push(format!("{g}: verdict {} without exhaustive witness", v.label));
                    }
                }
            }
        }
    }
    Ok(Check::new("rank-2 verdicts match exhaustive realizability", failures, checked))
}

fn gdd3(n: u64, d: [i64; 3], e12: i64, e13: i64, e23: i64) -> Result<Gdd> {
    Gdd::new(n, &d, &[((0, 1), e12), ((0, 2), e13), ((1, 2), e23)])
}

pub fn rank3_spot_checks(budget: Budget) -> Result<Check> {
    let mut failures = Vec::new();
    let chain = gdd3(6, [3, 3, 3], 2, 0, 2)?;
    let v = rank3_verdict(&chain, budget)?;
    if v.label != CaseLabel::Rank3II {
        failures.push(format!("Z6 chain: got {}", v.label));
    }
    if !v.witness.is_some_and(|w| w.satisfies(&chain.clone().into())) {
        failures.push("Z6 chain: witness missing or wrong".into());
    }
    // The listed witness x = (4,1,5), y = (2,3,3) belongs to a diagram in the same orbit.
    let listed = Realization::new(6, vec![4, 1, 5], vec![2, 3, 3]);
    let listed_gdd = gdd_of(&listed.matrix());
    let orbit = weyl_orbit_gdd(&chain, DEFAULT_ORBIT_LIMIT);
    if !orbit.members.contains(&listed_gdd.canonical()) {
        failures.push(format!("listed witness diagram {listed_gdd} not in the chain's orbit"));
    }
    if rank3_verdict(&listed_gdd, budget)?.label != CaseLabel::Rank3II {
        failures.push("listed witness diagram not class (ii)".into());
    }
    let row1 = gdd3(7, [1, 1, 1], -1, 0, -1)?;
    let r = rank3_verdict(&row1, budget)?.label;
    if r != CaseLabel::NotRealizable {
        failures.push(format!("Z7 Cartan chain: got {r}"));
    }
    Ok(Check::new("rank-3 spot checks", failures, 4))
}

/// The closed-form criterion for `q -q⁻¹- (−1) -r⁻¹- r` agrees with the
/// exhaustive search for all orders with `lcm(m, m') ≤ bound`, all unit
/// pairs, at `n = lcm(2, m, m')`.
pub fn mixed_chain_agreement(bound: u64, budget: Budget) -> Result<Check> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for m in 2..=bound {
        for mp in 2..=bound {
            if lcm(m, mp) > bound {
                continue;
            }
            let n = lcm(2, lcm(m, mp));
            for s in (1..m as i64).filter(|&s| gcd(s as u64, m) == 1) {
                for sp in (1..mp as i64).filter(|&s| gcd(s as u64, mp) == 1) {
                    let closed = mixed_chain_solvable(m, mp, s, sp, n)?;
                    let exhaustive = oracle_realize(&mixed_chain_system(m, mp, s, sp, n)?, budget)?.is_some();
                    checked += 1;
                    if closed != exhaustive {
                        failures.push(format!("m={m} m'={mp} s={s} s'={sp}: formula {closed}, search {exhaustive}"));
                    }
                }
            }
        }
    }
    Ok(Check::new("class (iii) criterion matches exhaustive search", failures, checked))
}

pub fn dimension_goldens() -> Result<Check> {
    use CaseLabel::*;
    let cases: [(CaseLabel, Option<u64>, Option<u64>, u128); 6] = [
        (Rank3I, Some(3), None, 144),
        (Rank3I, Some(4), None, 256),
        (Rank3I, Some(5), None, 400),
        (Rank3II, None, None, 10368),
        (Rank3III, Some(3), Some(2), 576),
        (Rank3III, Some(2), Some(3), 576),
    ];
    let mut failures = Vec::new();
    for (l, m, m2, want) in cases {
        let got = rank3_dimension(l, m, m2)?;
        if got != want {
            failures.push(format!("{l} {m:?} {m2:?}: {got} != {want}"));
        }
    }
    for (l, len, last) in [
        (Rank3I, 6, "[[x1,x3],x2]"),
        (Rank3II, 10, "[[[x1,x2],[[x1,x3],x2]],[x1,x3]]"),
        (Rank3III, 7, "[[x1,x2],[x1,x3]]"),
    ] {
        let words = rank3_pbw(l)?;
        if words.len() != len || words.last().map(|w| w.to_string()).as_deref() != Some(last) {
            failures.push(format!("{l}: PBW list has {} words", words.len()));
        }
    }
    Ok(Check::new("dimension formulas and PBW lists", failures, 9))
}

/// Sub-systems that rule out the four remaining rank-four diagrams, searched
/// exhaustively for `k = 1, 2, 3` and every unit `s`.
pub fn rank4_exclusions(budget: Budget) -> Result<Check> {
    // (diag, e12, e13, e23) multiplied by s·k mod 6k.
    const ROWS: [([i64; 3], i64, i64, i64); 3] = [
        ([-2, -2, 2], 2, 0, 2),
        ([2, 2, -2], -2, 0, 2),
        ([2, 2, 2], -2, 0, -2),
    ];
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 1..=3u64 {
        for (d, e12, e13, e23) in ROWS {
            let n = 6 * k;
            for s in [1i64, 5] {
                let f = s * k as i64;
                let g = gdd3(n, [d[0] * f, d[1] * f, d[2] * f], e12 * f, e13 * f, e23 * f)?;
                checked += 1;
                if let Some(w) = oracle_realize(&g.clone().into(), budget)? {
                    failures.push(format!("diag {d:?} edges ({e12},{e13},{e23}) k={k} s={s}: witness x={:?} y={:?}", w.x, w.y));
                }
            }
        }
        let n = 4 * k;
        for s in [1i64, 3] {
            let f = s * k as i64;
            let g = Gdd::rank2(n, f, 3 * f, f);
            checked += 1;
            if let Some(w) = oracle_realize(&g.into(), budget)? {
                failures.push(format!("rank-2 (1,3;1) k={k} s={s}: witness x={:?} y={:?}", w.x, w.y));
            }
        }
    }
    Ok(Check::new("rank-4 exclusion sub-systems have no solution", failures, checked))
}

pub fn rank_ge4_infinite() -> Check {
    let samples = [
        Gdd::new(5, &[1, 1, 1, 1], &[((0, 1), 4), ((1, 2), 4), ((2, 3), 4)]),
        Gdd::new(6, &[3, 3, 3, 3], &[((0, 1), 2), ((1, 2), 4), ((1, 3), 2)]),
        Gdd::new(7, &[1, 2, 3, 4, 5], &[((0, 1), 1), ((1, 2), 1), ((2, 3), 1), ((3, 4), 1)]),
    ];
    let mut failures = Vec::new();
    for g in samples.iter().flatten() {
        if rank_ge4_verdict(g) != Ok(CaseLabel::Infinite) {
            failures.push(format!("{g}"));
        }
    }
    let disc = Gdd::new(5, &[1, 1, 1, 1], &[((0, 1), 1)]).expect("valid");
    if rank_ge4_verdict(&disc).is_ok() {
        failures.push("disconnected input accepted".into());
    }
    Check::new("rank >= 4 connected diagrams are infinite", failures, samples.len() + 1)
}

/// Labels the prime and prime-power specializations assign to `(q11, q22, edge)`
/// in this orientation, written directly from their statements.
fn specialization_labels(n: u64, q11: RootExp, q22: RootExp, e: RootExp) -> Vec<CaseLabel> {
    use CaseLabel::*;
    let f = crate::modarith::factorize(n);
    let Some(&(p, beta)) = f.factors().first().filter(|_| f.factors().len() == 1) else {
        return Vec::new();
    };
    let m1 = |q: RootExp| q.is_minus_one();
    let mut out = Vec::new();
    let mut add = |l: CaseLabel, ok: bool| {
        if ok {
            out.push(l)
        }
    };
    let eisenstein = p > 3 && legendre(-3, p) == Ok(1);
    let alpha = |q: RootExp| {
        let o = q.order();
        (o > 1).then(|| crate::modarith::factorize(o).exponent(p))
    };
    let t2_1 = (q11 * e).is_one() && (e * q22).is_one();
    let t2_2a = m1(q11) && (e * q22).is_one();
    let t2_2b = m1(q22) && (e * q11).is_one();
    let t2_3 = m1(q11) && m1(q22);
    let t3_1a = e == q11.pow(-2) && q22 == q11.pow(2);
    let t3_1b = e == q11.pow(-2) && m1(q22);
    let t8_1 = e == q11.pow(-3) && q22 == q11.pow(3);
    if beta == 1 {
        let prime = e.order() == p;
        add(T2_1, t2_1 && prime && (p == 3 || eisenstein));
        add(T2_2a, t2_2a && prime && p > 2);
        add(T2_2b, t2_2b && prime && p > 2);
        add(T2_3, t2_3 && prime && p > 2);
        let q_prime = q11.order() == p;
        add(T3_1a, t3_1a && q_prime && p > 3 && p % 4 == 1);
        add(T3_1b, t3_1b && q_prime && p > 2);
        add(T8_1, t8_1 && q_prime && eisenstein);
        return out;
    }
    let a_e = alpha(e);
    let a_q = alpha(q11);
    let low_two = |a: Option<u32>| a.is_some_and(|a| (p == 2 && a > 1) || p > 2);
    add(T2_1, t2_1 && a_e.is_some_and(|a| (p == 3 && a == 1) || (a > 0 && eisenstein)));
    add(T2_2a, t2_2a && low_two(a_e));
    add(T2_2b, t2_2b && low_two(a_e));
    add(T2_3, t2_3 && low_two(a_e));
    let big = q11.order() > 2;
    add(T3_1a, t3_1a && big && a_q.is_some() && p > 3 && p % 4 == 1);
    add(T3_1b, t3_1b && big && a_q.is_some_and(|a| (p == 2 && a > 3) || p > 2));
    // q11 of order 3, q22 of order m > 3, edge·q22 = 1, p = 3 and α > 1.
    add(T3_2a, q11.order() == 3 && q22.order() > 3 && (e * q22).is_one() && p == 3 && alpha(q22).is_some_and(|a| a > 1));
    add(T8_1, t8_1 && q11.order() > 3 && eisenstein);
    let e8 = e.order() == 8 && p == 2;
    add(T8_2a, e8 && m1(q22) && RootExp::minus_one(n).is_some_and(|mo| e == mo * q11));
    add(T8_2b, e8 && m1(q22) && q11 == e.pow(-2));
    add(T8_3, e8 && q11 == e.pow(2) && q22 == e.inv());
    out
}

fn specialization_labels_any(g: &Gdd) -> Vec<CaseLabel> {
    let (a, b, e) = (g.vertex(0), g.vertex(1), g.edge_root(0, 1));
    let mut l = specialization_labels(g.modulus(), a, b, e);
    l.extend(specialization_labels(g.modulus(), b, a, e));
    l
}

/// Enumerations over `ℤ_p` and `ℤ_{p^β}` match the specialized case lists.
pub fn prime_power_rank2(budget: Budget) -> Result<Check> {
    let mut failures = Vec::new();
    let ns = [2u64, 3, 5, 7, 13, 8, 9];
    for n in ns {
        let rows = enumerate_rank2(n, budget)?;
        let got: BTreeSet<Gdd> = rows.iter().map(|r| r.gdd.clone()).collect();
        let mut want = BTreeSet::new();
        for d1 in 0..n as i64 {
            for d2 in 0..n as i64 {
                for e in 1..n as i64 {
                    let g = Gdd::rank2(n, d1, d2, e);
                    if !specialization_labels_any(&g).is_empty() {
                        want.insert(g.canonical());
                    }
                }
            }
        }
        for g in want.symmetric_difference(&got) {
            let side = if got.contains(g) { "extra" } else { "missing" };
            failures.push(format!("n={n}: {side} {g}"));
        }
        for r in &rows {
            if !specialization_labels_any(&r.gdd).contains(&r.label) {
                failures.push(format!("n={n}: {} labelled {}", r.gdd, r.label));
            }
        }
    }
    Ok(Check::new("rank-2 prime and prime-power lists", failures, ns.len()))
}

/// Over ℤ₂ nothing connected is finite, so every finite verdict on a
/// realizable matrix is a quantum linear space.
pub fn z2_quantum_linear(budget: Budget) -> Result<Check> {
    let mut failures = Vec::new();
    if !enumerate_rank2(2, budget)?.is_empty() {
        failures.push("rank-2 enumeration over Z2 is not empty".into());
    }
    if !enumerate_rank3(2, budget)?.is_empty() {
        failures.push("rank-3 enumeration over Z2 is not empty".into());
    }
    let mut checked = 2;
    for r in [2usize, 3] {
        for bits in 0u32..1 << (r * r) {
            let b = BraidingMatrix::from_fn(2, r, |i, j| ((bits >> (i * r + j)) & 1) as i64);
            if realize_matrix(&b, budget)?.is_none() {
                continue;
            }
            checked += 1;
            let g = gdd_of(&b);
            let finite = crate::classify::classify(&g, budget)?.label.is_finite();
            if finite && !is_quantum_linear_space(&b) {
                failures.push(format!("{b}"));
            }
        }
    }
    Ok(Check::new("over Z2 finite means quantum linear space", failures, checked))
}

/// Rank three over ℤ_p is empty; over `ℤ_{2^β}` the classes are the orbits
/// of `−1 -q- −1 -q⁻¹- −1` with `ord(q) = 2^α`, `α > 1`, and class (iii)
/// never occurs; over odd prime powers nothing occurs.
pub fn prime_power_rank3(budget: Budget) -> Result<Check> {
    let mut failures = Vec::new();
    let ns = [2u64, 3, 5, 7, 4, 8, 9, 16];
    for n in ns {
        let got: BTreeSet<Gdd> = enumerate_rank3(n, budget)?
            .into_iter()
            .map(|r| {
                if r.label != CaseLabel::Rank3I {
                    failures.push(format!("n={n}: {} labelled {}", r.gdd, r.label));
                }
                r.gdd
            })
            .collect();
        let mut want = BTreeSet::new();
        if n.is_power_of_two() && n > 2 {
            let h = (n / 2) as i64;
            for e in 1..n as i64 {
                if RootExp::new(e, n).order() > 2 {
                    let g = gdd3(n, [h, h, h], e, 0, -e)?;
                    want.extend(weyl_orbit_gdd(&g, DEFAULT_ORBIT_LIMIT).members);
                }
            }
        }
        for g in want.symmetric_difference(&got) {
            let side = if got.contains(g) { "extra" } else { "missing" };
            failures.push(format!("n={n}: {side} {g}"));
        }
        for g in &want {
            if realize_gdd(g, budget)?.is_none() {
                failures.push(format!("n={n}: {g} has no witness"));
            }
        }
    }
    Ok(Check::new("rank-3 prime and prime-power lists", failures, ns.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm9".parse::<Suite>().is_err());
    }

    #[test]
    fn table_loads() {
        let rows = witness_rows().unwrap();
        assert_eq!(rows.len(), 26);
        assert_eq!(rows.iter().filter(|r| r.variant).count(), 2);
        assert!(witness_table().unwrap().passed);
    }

    #[test]
    fn specializations_at_seven() {
        // −1 is not a root over ℤ₇, so only T2(1) and T8(1) can occur.
        let labels = specialization_labels(7, RootExp::new(6, 7), RootExp::new(6, 7), RootExp::new(1, 7));
        assert_eq!(labels, vec![CaseLabel::T2_1]);
        let z = RootExp::new(1, 7);
        assert_eq!(specialization_labels(7, z, z.pow(3), z.pow(-3)), vec![CaseLabel::T8_1]);
    }

    #[test]
    fn small_checks_pass() {
        let b = Budget::default();
        assert!(quadratic_exclusions().unwrap().passed);
        assert!(dimension_goldens().unwrap().passed);
        assert!(rank_ge4_infinite().passed);
        let c = rank2_equivalence(2..=8, b).unwrap();
        assert!(c.passed, "{c}");
    }
}
