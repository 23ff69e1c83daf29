//! Realizability of diagonal braidings as Yetter–Drinfeld modules over ℤₙ.
//!
//! A braiding `q_ij = ω^{a_ij}` comes from ℤₙ exactly when the exponent
//! matrix has a rank-one decomposition `a_ij ≡ x_i·y_j (mod n)`. At the
//! diagram level only `x_i y_i ≡ d_i` and `x_i y_j + x_j y_i ≡ e_ij` matter.

use serde::Serialize;

use crate::braiding::{BraidingMatrix, Gdd};
use crate::error::{Error, Result};
use crate::modarith::{factorize, gcd, lcm, linear_coset, mul_mod, reduce, solve_quadratic, Coset, QuadCongruence};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const BUDGET_ENV: &str = "NICHOLS_ZN_BUDGET";

/// Upper bound on elementary search steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// Reads `NICHOLS_ZN_BUDGET`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }
}

struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    fn new(b: Budget) -> Self {
        Meter { used: 0, limit: b.0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded(self.limit));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Realization {
    #[serde(skip)]
    pub n: u64,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

impl Realization {
    pub fn new(n: u64, x: Vec<i64>, y: Vec<i64>) -> Self {
        Realization {
            n,
            x: x.into_iter().map(|v| reduce(v, n)).collect(),
            y: y.into_iter().map(|v| reduce(v, n)).collect(),
        }
    }

    fn prod(&self, i: usize, j: usize) -> u64 {
        mul_mod(self.x[i], self.y[j], self.n)
    }

    pub fn satisfies_matrix(&self, b: &BraidingMatrix) -> bool {
        let r = b.rank();
        self.n == b.modulus()
            && self.x.len() == r
            && self.y.len() == r
            && (0..r).all(|i| (0..r).all(|j| self.prod(i, j) == b.get(i, j)))
    }

    pub fn satisfies(&self, s: &BilinearSystem) -> bool {
        let g = s.gdd();
        let r = g.rank();
        if self.n != g.modulus() || self.x.len() != r || self.y.len() != r {
            return false;
        }
        (0..r).all(|i| {
            self.prod(i, i) == g.diag(i)
                && (i + 1..r).all(|j| (self.prod(i, j) + self.prod(j, i)) % self.n == g.edge(i, j))
        })
    }

    /// The braiding matrix this witness realizes.
    pub fn matrix(&self) -> BraidingMatrix {
        BraidingMatrix::outer(self.n, &self.x, &self.y)
    }

    /// Entry `a` of the result is entry `order[a]` of `self`.
    fn reordered(&self, order: &[usize]) -> Self {
        Realization {
            n: self.n,
            x: order.iter().map(|&i| self.x[i]).collect(),
            y: order.iter().map(|&i| self.y[i]).collect(),
        }
    }
}

/// The symmetrized congruences `x_i y_i ≡ d_i`, `x_i y_j + x_j y_i ≡ e_ij (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearSystem {
    gdd: Gdd,
}

impl BilinearSystem {
    pub fn new(gdd: Gdd) -> Self {
        BilinearSystem { gdd }
    }

    pub fn gdd(&self) -> &Gdd {
        &self.gdd
    }

    pub fn modulus(&self) -> u64 {
        self.gdd.modulus()
    }

    pub fn rank(&self) -> usize {
        self.gdd.rank()
    }

    /// Targets `t_i·s·k (mod km)`. Rank 2 takes `(t1, t2, t3)` with `t3` on the
    /// edge; rank 3 takes `(t1..t6)` with `t4, t5, t6` on edges 12, 13, 23.
    pub fn normal_form(t: &[i64], k: u64, s: i64, m: u64) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::ZeroModulus);
        }
        let n = k * m;
        let sk = |ti: i64| (ti as i128 * s as i128 * k as i128).rem_euclid(n as i128) as i64;
        let gdd = match t {
            [t1, t2, t3] => Gdd::new(n, &[sk(*t1), sk(*t2)], &[((0, 1), sk(*t3))])?,
            [t1, t2, t3, t4, t5, t6] => Gdd::new(
                n,
                &[sk(*t1), sk(*t2), sk(*t3)],
                &[((0, 1), sk(*t4)), ((0, 2), sk(*t5)), ((1, 2), sk(*t6))],
            )?,
            _ => return Err(Error::invalid("normal form takes 3 or 6 targets")),
        };
        Ok(BilinearSystem { gdd })
    }
}

impl From<Gdd> for BilinearSystem {
    fn from(gdd: Gdd) -> Self {
        BilinearSystem { gdd }
    }
}

/// Candidates for `x_1`. Scaling `(x, y) ↦ (u·x, u⁻¹·y)` by a unit preserves
/// every congruence and sends `x_1` to `gcd(x_1, n)`, so the lexicographically
/// least witness has `x_1 = 0` or a proper divisor of `n`.
fn first_coordinate_candidates(n: u64) -> Vec<u64> {
    let mut c = vec![0];
    c.extend((1..n).filter(|d| n % d == 0));
    c
}

/// Exhaustive witness search for the symmetrized system. Coordinates are
/// chosen in the order `x_1, y_1, x_2, y_2, …`, each `y_i` ranging over the
/// coset cut out by its linear congruences, so the first witness found is
/// the lexicographically least one.
pub fn oracle_realize(s: &BilinearSystem, budget: Budget) -> Result<Option<Realization>> {
    let g = s.gdd();
    let n = g.modulus();
    let r = g.rank();
    let mut x = vec![0u64; r];
    let mut y = vec![0u64; r];
    let mut meter = Meter::new(budget);
    let firsts = first_coordinate_candidates(n);
    if search_gdd(g, 0, &firsts, &mut x, &mut y, &mut meter)? {
        return Ok(Some(Realization { n, x, y }));
    }
    Ok(None)
}

fn search_gdd(g: &Gdd, i: usize, firsts: &[u64], x: &mut [u64], y: &mut [u64], meter: &mut Meter) -> Result<bool> {
    let r = g.rank();
    if i == r {
        return Ok(true);
    }
    let n = g.modulus();
    let all: Vec<u64>;
    let candidates = if i == 0 {
        firsts
    } else {
        all = (0..n).collect();
        &all
    };
    for &xi in candidates {
        meter.tick()?;
        let Some(mut coset) = linear_coset(xi as i64, -(g.diag(i) as i64), n) else {
            continue;
        };
        let mut feasible = true;
        for j in 0..i {
            // x_j·y_i ≡ e_ji − x_i·y_j
            let rhs = (g.edge(j, i) as i128 - mul_mod(xi, y[j], n) as i128).rem_euclid(n as i128) as i64;
            match linear_coset(x[j] as i64, -rhs, n).and_then(|c| coset.intersect(&c)) {
                Some(c) => coset = c,
                None => {
                    feasible = false;
                    break;
                }
            }
        }
        if !feasible {
            continue;
        }
        x[i] = xi;
        for yi in coset.iter() {
            meter.tick()?;
            y[i] = yi;
            if search_gdd(g, i + 1, firsts, x, y, meter)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Exhaustive search for `a_ij ≡ x_i·y_j`. Coordinates are chosen in the
/// order `x_1, y_1, …, y_r`, after which each remaining `x_i` is the least
/// element of a coset, so the witness is least in the order `(x_1, y, x_2..x_r)`.
pub fn oracle_realize_matrix(b: &BraidingMatrix, budget: Budget) -> Result<Option<Realization>> {
    let n = b.modulus();
    let r = b.rank();
    let mut meter = Meter::new(budget);
    let mut y = vec![0u64; r];
    for x1 in first_coordinate_candidates(n) {
        meter.tick()?;
        let rows: Vec<Coset> = vec![Coset::full(n); r];
        if let Some(xs) = search_matrix(b, x1, 0, &mut y, rows, &mut meter)? {
            let mut x = xs;
            x[0] = x1;
            return Ok(Some(Realization { n, x, y }));
        }
    }
    Ok(None)
}

/// `rows[i]` holds the admissible `x_i` given `y_0..y_{j-1}`.
fn search_matrix(
    b: &BraidingMatrix,
    x1: u64,
    j: usize,
    y: &mut [u64],
    rows: Vec<Coset>,
    meter: &mut Meter,
) -> Result<Option<Vec<u64>>> {
    let n = b.modulus();
    let r = b.rank();
    if j == r {
        return Ok(Some(rows.iter().map(|c| c.residue).collect()));
    }
    let Some(ys) = linear_coset(x1 as i64, -(b.get(0, j) as i64), n) else {
        return Ok(None);
    };
    'next: for yj in ys.iter() {
        meter.tick()?;
        let mut narrowed = rows.clone();
        for (i, row) in narrowed.iter_mut().enumerate().skip(1) {
            match linear_coset(yj as i64, -(b.get(i, j) as i64), n).and_then(|c| row.intersect(&c)) {
                Some(c) => *row = c,
                None => continue 'next,
            }
        }
        y[j] = yj;
        if let Some(xs) = search_matrix(b, x1, j + 1, y, narrowed, meter)? {
            return Ok(Some(xs));
        }
    }
    Ok(None)
}

fn check_unit(s: i64, m: u64) -> Result<()> {
    if gcd(reduce(s, m), m) != 1 {
        return Err(Error::invalid(format!("s = {s} is not a unit mod {m}")));
    }
    Ok(())
}

/// Rank-2 normal form. A root `d` of `t1·x² − t3·x + t2 ≡ 0 (mod m)` yields the
/// witness `x = (1, d)`, `y = (t1·s·k, (t3 − d·t1)·s·k)`; failing that, a root of
/// `t2·x² − t3·x + t1` yields the mirrored witness `x = (d, 1)`.
pub fn rank2_solve(t1: i64, t2: i64, t3: i64, k: u64, s: i64, m: u64) -> Result<Option<Realization>> {
    let sys = BilinearSystem::normal_form(&[t1, t2, t3], k, s, m)?;
    check_unit(s, m)?;
    let n = k * m;
    let sk = s as i128 * k as i128;
    let wide = |v: i128| v.rem_euclid(n as i128) as i64;
    if let Some(d) = solve_quadratic(&QuadCongruence::new(t1, -t3, t2, m))?.first() {
        let d = d as i128;
        let w = Realization::new(n, vec![1, d as i64], vec![wide(t1 as i128 * sk), wide((t3 as i128 - d * t1 as i128) * sk)]);
        if w.satisfies(&sys) {
            return Ok(Some(w));
        }
    }
    if let Some(d) = solve_quadratic(&QuadCongruence::new(t2, -t3, t1, m))?.first() {
        let d = d as i128;
        let w = Realization::new(n, vec![d as i64, 1], vec![wide((t3 as i128 - d * t2 as i128) * sk), wide(t2 as i128 * sk)]);
        if w.satisfies(&sys) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Solvability of the rank-2 normal form with `k = s = 1`. With `t1` a unit mod
/// `m` this is solvability of `x² − t3·x + t1·t2 ≡ 0 (mod m)`; otherwise the
/// oracle decides.
pub fn rank2_solvable(t1: i64, t2: i64, t3: i64, m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if gcd(reduce(t1, m), m) == 1 {
        let c = (t1 as i128 * t2 as i128).rem_euclid(m as i128) as i64;
        return Ok(!solve_quadratic(&QuadCongruence::new(1, -t3, c, m))?.is_empty());
    }
    let sys = BilinearSystem::normal_form(&[t1, t2, t3], 1, 1, m)?;
    Ok(oracle_realize(&sys, Budget::default())?.is_some())
}

fn rank3_two_quadratics(t: &[i64; 6], k: u64, s: i64, m: u64) -> Result<Option<Realization>> {
    let sys = BilinearSystem::normal_form(t, k, s, m)?;
    let [t1, t2, t3, t4, t5, t6] = *t;
    let roots2 = solve_quadratic(&QuadCongruence::new(t1, -t4, t2, m))?;
    if roots2.is_empty() {
        return Ok(None);
    }
    let roots3 = solve_quadratic(&QuadCongruence::new(t1, -t5, t3, m))?;
    let n = k * m;
    let sk = s as i128 * k as i128;
    let wide = |v: i128| v.rem_euclid(n as i128) as i64;
    for x2 in roots2.iter() {
        for x3 in roots3.iter() {
            let (a, b) = (x2 as i128, x3 as i128);
            // 2·t1·x2·x3 − t4·x3 − t5·x2 ≡ −t6 (mod m)
            let cross = 2 * t1 as i128 * a * b - t4 as i128 * b - t5 as i128 * a + t6 as i128;
            if cross.rem_euclid(m as i128) != 0 {
                continue;
            }
            let w = Realization::new(
                n,
                vec![1, a as i64, b as i64],
                vec![wide(t1 as i128 * sk), wide((t4 as i128 - a * t1 as i128) * sk), wide((t5 as i128 - b * t1 as i128) * sk)],
            );
            if w.satisfies(&sys) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Rank-3 normal form with `t1 ≡ 1 (mod m)`: roots `x2`, `x3` of
/// `t1·x² − t4·x + t2` and `t1·x² − t5·x + t3` joined by the cross condition
/// give the witness `x = (1, x2, x3)`.
pub fn rank3_solve_t1_unit(t: [i64; 6], k: u64, s: i64, m: u64) -> Result<Option<Realization>> {
    if m == 0 || k == 0 {
        return Err(Error::ZeroModulus);
    }
    check_unit(s, m)?;
    if reduce(t[0], m) != 1 % m {
        return Err(Error::invalid(format!("t1 = {} is not 1 mod {m}", t[0])));
    }
    rank3_two_quadratics(&t, k, s, m)
}

/// Rank-3 system mod `m` with `gcd(t1, m) = 1`. Any witness has `x_1` a unit,
/// so scaling to `x_1 = 1` loses nothing.
pub fn rank3_solve_coprime(t: [i64; 6], m: u64) -> Result<Option<Realization>> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    check_unit(t[0], m)?;
    rank3_two_quadratics(&t, 1, 1, m)
}

fn validate_mixed_chain(m: u64, mp: u64, s: i64, sp: i64) -> Result<()> {
    if m <= 1 || mp <= 1 {
        return Err(Error::invalid("orders m and m' must exceed 1"));
    }
    check_unit(s, m)?;
    check_unit(sp, mp)
}

/// The system `x1y1 ≡ n/2`, `x2y2 ≡ sn/m`, `x3y3 ≡ s'n/m'`, `x1y2 + x2y1 ≡ −sn/m`,
/// `x1y3 + x3y1 ≡ −s'n/m'`, `x2y3 + x3y2 ≡ 0`: the diagram
/// `q -q⁻¹- (−1) -r⁻¹- r` with the `−1` vertex first.
pub fn mixed_chain_system(m: u64, mp: u64, s: i64, sp: i64, n: u64) -> Result<BilinearSystem> {
    validate_mixed_chain(m, mp, s, sp)?;
    if n % lcm(2, lcm(m, mp)) != 0 {
        return Err(Error::invalid(format!("n = {n} is not a multiple of lcm(2, {m}, {mp})")));
    }
    let q = (s as i128 * (n / m) as i128) as i64;
    let r = (sp as i128 * (n / mp) as i128) as i64;
    Ok(BilinearSystem::new(Gdd::new(n, &[(n / 2) as i64, q, r], &[((0, 1), -q), ((0, 2), -r)])?))
}

/// Solvability of [`mixed_chain_system`]. With `q = ω^{ns/m}`, `r = ω^{ns'/m'}`:
/// every prime `p` dividing both orders appears to the same power in each and
/// does not divide the order of `q·r`, and neither order is `2 (mod 4)`.
pub fn mixed_chain_solvable(m: u64, mp: u64, s: i64, sp: i64, n: u64) -> Result<bool> {
    mixed_chain_system(m, mp, s, sp, n)?;
    if m % 4 == 2 || mp % 4 == 2 {
        return Ok(false);
    }
    let f = factorize(m);
    let fp = factorize(mp);
    let l = lcm(m, mp);
    let qr = (reduce(s, m) as u128 * (l / m) as u128 + reduce(sp, mp) as u128 * (l / mp) as u128) % l as u128;
    let qr_order = l / gcd(qr as u64, l);
    for &(p, a) in f.factors() {
        let b = fp.exponent(p);
        if b == 0 {
            continue;
        }
        if a != b || qr_order % p == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The congruence criterion: matching prime exponents, plus
/// `−s ≡ m''s' (mod m')` when `m = m''m'` and `−s' ≡ m''s (mod m)` when
/// `m' = m''m`, the cofactor `m''` coprime to the other order.
pub fn mixed_chain_congruence_criterion(m: u64, mp: u64, s: i64, sp: i64) -> Result<bool> {
    validate_mixed_chain(m, mp, s, sp)?;
    let f = factorize(m);
    let fp = factorize(mp);
    for p in f.primes().chain(fp.primes()) {
        let (a, b) = (f.exponent(p), fp.exponent(p));
        if a != 0 && b != 0 && a != b {
            return Ok(false);
        }
    }
    let mut ok = true;
    if m % mp == 0 && gcd(m / mp, mp) == 1 {
        let mpp = (m / mp) as i128;
        ok &= (-(s as i128) - mpp * sp as i128).rem_euclid(mp as i128) == 0;
    }
    if mp % m == 0 && gcd(mp / m, m) == 1 {
        let mpp = (mp / m) as i128;
        ok &= (-(sp as i128) - mpp * s as i128).rem_euclid(m as i128) == 0;
    }
    Ok(ok)
}

/// Normal-form framing of a diagram: `k = gcd(all targets, n)`, `m = n/k` and
/// the targets divided by `k`.
fn framing(g: &Gdd) -> (u64, u64, Vec<i64>) {
    let n = g.modulus();
    let mut k = n;
    for &d in g.diagonal() {
        k = gcd(k, d);
    }
    for (_, e) in g.edge_list() {
        k = gcd(k, e);
    }
    let t = g.diagonal().iter().map(|&d| (d / k) as i64).collect();
    (k, n / k, t)
}

/// Diagram-level realizability. Structured solvers run first where their
/// hypotheses hold; the oracle decides everything else.
pub fn realize_gdd(g: &Gdd, budget: Budget) -> Result<Option<Realization>> {
    let sys = BilinearSystem::new(g.clone());
    let (k, m, t) = framing(g);
    let witness = match g.rank() {
        2 => rank2_solve(t[0], t[1], (g.edge(0, 1) / k) as i64, k, 1, m)?,
        3 => rank3_structured(g, k, m, &t)?,
        _ => None,
    };
    if let Some(w) = witness.filter(|w| w.satisfies(&sys)) {
        return Ok(Some(w));
    }
    oracle_realize(&sys, budget)
}

/// Puts a vertex whose target is a unit mod `m` first and rescales by that
/// unit, so the `t1 ≡ 1` solver applies.
fn rank3_structured(g: &Gdd, k: u64, m: u64, t: &[i64]) -> Result<Option<Realization>> {
    if m == 1 {
        return Ok(None);
    }
    let Some(lead) = (0..3).find(|&i| gcd(reduce(t[i], m), m) == 1) else {
        return Ok(None);
    };
    let order: Vec<usize> = std::iter::once(lead).chain((0..3).filter(|&i| i != lead)).collect();
    let s = reduce(t[lead], m);
    let inv = crate::modarith::inverse_mod(s, m).expect("unit");
    let e = |i: usize, j: usize| (g.edge(order[i], order[j]) / k) as i64;
    let rescale = |v: i64| mul_mod(reduce(v, m), inv, m) as i64;
    let tt = [
        1 % m as i64,
        rescale(t[order[1]]),
        rescale(t[order[2]]),
        rescale(e(0, 1)),
        rescale(e(0, 2)),
        rescale(e(1, 2)),
    ];
    let Some(w) = rank3_solve_t1_unit(tt, k, s as i64, m)? else {
        return Ok(None);
    };
    // Vertex a of the solved system is vertex order[a] of g.
    let mut back = vec![0; 3];
    for (a, &i) in order.iter().enumerate() {
        back[i] = a;
    }
    Ok(Some(w.reordered(&back)))
}

/// Matrix-level realizability. When some `a_ii` is a unit, `x_i` must be a
/// unit, and scaling it to 1 determines the rest; otherwise the oracle decides.
pub fn realize_matrix(b: &BraidingMatrix, budget: Budget) -> Result<Option<Realization>> {
    let n = b.modulus();
    let r = b.rank();
    if let Some(i) = (0..r).find(|&i| gcd(b.get(i, i), n) == 1) {
        let inv = crate::modarith::inverse_mod(b.get(i, i), n).expect("unit");
        let y: Vec<u64> = (0..r).map(|j| b.get(i, j)).collect();
        let x: Vec<u64> = (0..r).map(|l| mul_mod(b.get(l, i), inv, n)).collect();
        let w = Realization { n, x, y };
        return Ok(w.satisfies_matrix(b).then_some(w));
    }
    oracle_realize_matrix(b, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: u64, d: &[i64], e: &[((usize, usize), i64)]) -> BilinearSystem {
        BilinearSystem::new(Gdd::new(n, d, e).unwrap())
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn oracle_examples() {
        let s = sys(6, &[2, 3, 3], &[((0, 1), 2), ((0, 2), 4)]);
        let w = oracle_realize(&s, b()).unwrap().unwrap();
        assert!(w.satisfies(&s));
        let known = Realization::new(6, vec![4, 1, 5], vec![2, 3, 3]);
        assert!(known.satisfies(&s));

        let row1 = sys(7, &[1, 1, 1], &[((0, 1), 6), ((0, 2), 6)]);
        assert_eq!(oracle_realize(&row1, b()).unwrap(), None);

        let w = oracle_realize(&sys(5, &[3], &[]), b()).unwrap().unwrap();
        assert_eq!((w.x, w.y), (vec![1], vec![3]));

        assert_eq!(oracle_realize(&sys(4, &[2, 2], &[((0, 1), 2)]), b()).unwrap(), None);
    }

    #[test]
    fn oracle_witness_is_lexicographically_least() {
        // Full scan over (x1, y1, x2, y2) in that priority order.
        for n in 1..=6u64 {
            for d1 in 0..n as i64 {
                for d2 in 0..n as i64 {
                    for e in 0..n as i64 {
                        let s = sys(n, &[d1, d2], &[((0, 1), e)]);
                        let mut want = None;
                        'scan: for x1 in 0..n {
                            for y1 in 0..n {
                                for x2 in 0..n {
                                    for y2 in 0..n {
                                        let w = Realization { n, x: vec![x1, x2], y: vec![y1, y2] };
                                        if w.satisfies(&s) {
                                            want = Some(w);
                                            break 'scan;
                                        }
                                    }
                                }
                            }
                        }
                        assert_eq!(oracle_realize(&s, b()).unwrap(), want, "{}", s.gdd());
                    }
                }
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let s = sys(7, &[1, 1, 1], &[((0, 1), 6), ((0, 2), 6)]);
        assert_eq!(oracle_realize(&s, Budget(10)), Err(Error::BudgetExceeded(10)));
    }

    #[test]
    fn rank2_solve_examples() {
        let w = rank2_solve(2, 3, 5, 1, 1, 6).unwrap().unwrap();
        assert_eq!((w.x.clone(), w.y.clone()), (vec![1, 1], vec![2, 3]));
        for m in [7u64, 13, 21, 49] {
            assert!(rank2_solve(1, 1, -1, 1, 1, m).unwrap().is_some(), "m = {m}");
        }
        let w = rank2_solve(1, 1, 2, 1, 1, 9).unwrap().unwrap();
        assert_eq!((w.x, w.y), (vec![1, 1], vec![1, 1]));
        assert!(rank2_solve(1, 1, 1, 1, 2, 6).is_err());
    }

    #[test]
    fn rank2_solvable_examples() {
        assert!(rank2_solvable(1, 1, -1, 7).unwrap());
        assert!(!rank2_solvable(1, 1, -1, 2).unwrap());
        assert!(!rank2_solvable(1, 2, 2, 3).unwrap());
        assert!(rank2_solvable(2, 3, 5, 6).unwrap());
    }

    #[test]
    fn rank3_examples() {
        assert_eq!(rank3_solve_t1_unit([1, 1, 1, -1, -1, 0], 1, 1, 7).unwrap(), None);
        let w = rank3_solve_t1_unit([1, 1, 1, 2, 2, 2], 1, 1, 11).unwrap().unwrap();
        assert_eq!(&w.x, &[1, 1, 1]);
        // Exclusion sub-systems over ℤ₃ with the unit vertex first.
        assert_eq!(rank3_solve_t1_unit([1, -1, -1, 0, 1, 1], 1, 1, 3).unwrap(), None);
        assert_eq!(rank3_solve_coprime([1, 1, -1, -1, 0, 1], 3).unwrap(), None);
        assert_eq!(rank3_solve_coprime([1, 1, 1, -1, 0, -1], 3).unwrap(), None);
        assert!(rank3_solve_t1_unit([2, 1, 1, 0, 0, 0], 1, 1, 5).is_err());
    }

    #[test]
    fn mixed_chain_examples() {
        assert!(mixed_chain_solvable(5, 5, 1, 4, 10).unwrap());
        assert!(!mixed_chain_solvable(5, 5, 1, 1, 10).unwrap());
        for s in [1, 2] {
            for sp in [1, 2, 4, 5, 7, 8] {
                assert!(!mixed_chain_solvable(3, 9, s, sp, 18).unwrap());
                assert!(!mixed_chain_congruence_criterion(3, 9, s, sp).unwrap());
            }
        }
        assert!(mixed_chain_solvable(1, 5, 1, 1, 10).is_err());
        // The congruence criterion accepts m = m' = 2; the system has no solution.
        assert!(mixed_chain_congruence_criterion(2, 2, 1, 1).unwrap());
        assert!(!mixed_chain_solvable(2, 2, 1, 1, 2).unwrap());
        assert_eq!(oracle_realize(&mixed_chain_system(2, 2, 1, 1, 2).unwrap(), b()).unwrap(), None);
    }

    #[test]
    fn matrix_examples() {
        let ones = BraidingMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let w = realize_matrix(&ones, b()).unwrap().unwrap();
        assert_eq!((w.x.clone(), w.y.clone()), (vec![1, 1], vec![1, 1]));
        let bad = BraidingMatrix::from_rows(4, &[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(realize_matrix(&bad, b()).unwrap(), None);
        let outer = BraidingMatrix::outer(6, &[2, 3], &[4, 1]);
        assert!(realize_matrix(&outer, b()).unwrap().unwrap().satisfies_matrix(&outer));
    }

    #[test]
    fn matrix_oracle_agrees_with_outer_products() {
        for n in 1..=6u64 {
            let mut realizable = std::collections::HashSet::new();
            for x1 in 0..n {
                for x2 in 0..n {
                    for y1 in 0..n {
                        for y2 in 0..n {
                            realizable.insert(BraidingMatrix::outer(n, &[x1, x2], &[y1, y2]));
                        }
                    }
                }
            }
            for code in 0..n.pow(4) {
                let e: Vec<i64> = (0..4).map(|i| ((code / n.pow(i)) % n) as i64).collect();
                let bm = BraidingMatrix::from_fn(n, 2, |i, j| e[2 * i + j]);
                let got = oracle_realize_matrix(&bm, b()).unwrap();
                assert_eq!(got.is_some(), realizable.contains(&bm), "{bm}");
                if let Some(w) = got {
                    assert!(w.satisfies_matrix(&bm));
                }
                assert_eq!(realize_matrix(&bm, b()).unwrap().is_some(), realizable.contains(&bm));
            }
        }
    }
}
