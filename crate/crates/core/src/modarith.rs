//! Exact modular arithmetic: factorization, Legendre symbols, linear and
//! quadratic congruences, Hensel lifting and the Chinese remainder theorem.
//!
//! Moduli are `u64`; intermediate products go through `u128`, so any
//! modulus below 2^63 is safe.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default bound on a prime power that may be enumerated exhaustively.
pub const DEFAULT_EXHAUSTIVE_BOUND: u64 = 1_000_000;

/// Reduces a signed integer into `[0, m)`.
pub fn reduce(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn reduce_wide(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128 % m as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Evaluates an integer polynomial (coefficients low degree first) at `x` mod `m`.
pub fn eval_poly(f: &[i64], x: u64, m: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = add_mod(mul_mod(acc, x, m), reduce(c, m), m);
    }
    acc
}

fn derivative(f: &[i64]) -> Vec<i64> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as i64)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p`, zero when `p` does not divide the value.
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, a)| a)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, a)| p.pow(a)).product()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, a)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

/// Trial division. Panics on zero.
pub fn factorize(mut n: u64) -> PrimeFactorization {
    assert!(n >= 1, "factorize: n must be positive");
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            factors.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    PrimeFactorization { factors }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let r = reduce(a, p);
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// The solutions of a congruence, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SolutionSet {
    modulus: u64,
    residues: Vec<u64>,
}

impl SolutionSet {
    pub fn new(modulus: u64, mut residues: Vec<u64>) -> Self {
        residues.sort_unstable();
        residues.dedup();
        SolutionSet { modulus, residues }
    }

    pub fn empty(modulus: u64) -> Self {
        SolutionSet { modulus, residues: Vec::new() }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.residues.binary_search(&reduce(x, self.modulus)).is_ok()
    }

    pub fn first(&self) -> Option<u64> {
        self.residues.first().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.residues.iter().copied()
    }
}

/// A residue class `x ≡ residue (mod step)` inside `[0, modulus)`, where
/// `step` divides `modulus`. Solution sets of linear congruences have this shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coset {
    pub residue: u64,
    pub step: u64,
    pub modulus: u64,
}

impl Coset {
    pub fn full(modulus: u64) -> Self {
        Coset { residue: 0, step: 1, modulus }
    }

    pub fn len(&self) -> u64 {
        self.modulus / self.step
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        let Coset { residue, step, modulus } = *self;
        (0..modulus / step).map(move |i| residue + i * step)
    }

    /// Generalized CRT on two classes with the same ambient modulus.
    pub fn intersect(&self, other: &Coset) -> Option<Coset> {
        debug_assert_eq!(self.modulus, other.modulus);
        let (s1, s2) = (self.step, other.step);
        let g = gcd(s1, s2);
        let diff = other.residue as i128 - self.residue as i128;
        if diff.rem_euclid(g as i128) != 0 {
            return None;
        }
        let l = s1 / g * s2;
        let m2 = s2 / g;
        let t = if m2 == 1 {
            0
        } else {
            let inv = inverse_mod((s1 / g) % m2, m2).expect("coprime after dividing by gcd");
            mul_mod(reduce_wide(diff / g as i128, m2), inv, m2)
        };
        let residue = ((self.residue as u128 + s1 as u128 * t as u128) % l as u128) as u64;
        Some(Coset { residue, step: l, modulus: self.modulus })
    }
}

/// All `x` with `a·x + b ≡ 0 (mod m)`, as a coset.
pub fn linear_coset(a: i64, b: i64, m: u64) -> Option<Coset> {
    let a = reduce(a, m);
    let b = reduce(b, m);
    let g = gcd(a, m);
    if b % g != 0 {
        return None;
    }
    let step = m / g;
    let residue = if step == 1 {
        0
    } else {
        let inv = inverse_mod((a / g) % step, step).expect("unit after dividing by gcd");
        mul_mod((step - (b / g) % step) % step, inv, step)
    };
    Some(Coset { residue, step, modulus: m })
}

/// Solutions of `a·x + b ≡ 0 (mod m)`; there are `gcd(a, m)` of them when `gcd(a, m) | b`.
pub fn solve_linear(a: i64, b: i64, m: u64) -> Result<SolutionSet> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok(match linear_coset(a, b, m) {
        Some(c) => SolutionSet::new(m, c.iter().collect()),
        None => SolutionSet::empty(m),
    })
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// All square roots of `a` modulo `p^k`, for `p ∤ a`.
pub fn sqrt_mod_prime_power(a: i64, p: u64, k: u32) -> Result<SolutionSet> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::invalid("exponent k must be at least 1"));
    }
    if reduce(a, p) == 0 {
        return Err(Error::DivisibleByPrime { a, p });
    }
    let pk = p.checked_pow(k).ok_or_else(|| Error::invalid("p^k overflows"))?;
    let a = reduce(a, pk);
    if p == 2 {
        return Ok(sqrt_mod_power_of_two(a, k));
    }
    let Some(r) = tonelli_shanks(a % p, p) else {
        return Ok(SolutionSet::empty(pk));
    };
    let f = [-(a as i64), 0, 1];
    let x = hensel_lift(&f, r, p, k)?;
    Ok(SolutionSet::new(pk, vec![x, pk - x]))
}

fn sqrt_mod_power_of_two(a: u64, k: u32) -> SolutionSet {
    let pk = 1u64 << k;
    match k {
        1 => SolutionSet::new(2, vec![1]),
        2 if a % 4 == 1 => SolutionSet::new(4, vec![1, 3]),
        2 => SolutionSet::empty(4),
        _ if a % 8 != 1 => SolutionSet::empty(pk),
        _ => {
            // r² ≡ a holds mod 8 for r = 1; fix one more bit per step.
            let mut r = 1u64;
            for j in 3..k {
                let m = 1u64 << (j + 1);
                if mul_mod(r, r, m) != a % m {
                    r += 1 << (j - 1);
                }
            }
            let half = pk / 2;
            SolutionSet::new(pk, vec![r, pk - r, (r + half) % pk, (pk - r + half) % pk])
        }
    }
}

/// Lifts a simple root of `f` mod `p` to a root mod `p^k`.
pub fn hensel_lift(f: &[i64], root: u64, p: u64, k: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::invalid("target exponent must be at least 1"));
    }
    let root = root % p;
    if eval_poly(f, root, p) != 0 {
        return Err(Error::NotARoot { root, p });
    }
    let df = derivative(f);
    let inv = inverse_mod(eval_poly(&df, root, p), p).ok_or(Error::DerivativeVanishes { root, p })?;
    let mut x = root;
    let mut pj = p;
    for _ in 1..k {
        let next = pj.checked_mul(p).ok_or_else(|| Error::invalid("p^k overflows"))?;
        let fx = eval_poly(f, x, next);
        let t = mul_mod((fx / pj) % p, inv, p);
        x = (x + next - mul_mod(t, pj, next)) % next;
        pj = next;
    }
    Ok(x)
}

/// Combines `x ≡ r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt_combine(constraints: &[(u64, u64)]) -> Result<(u64, u64)> {
    let mut acc = (0u64, 1u64);
    for &(r, m) in constraints {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        if gcd(acc.1, m) != 1 {
            return Err(Error::NotCoprime(acc.1, m));
        }
        let joined = Coset { residue: acc.0, step: acc.1, modulus: acc.1 * m }
            .intersect(&Coset { residue: r % m, step: m, modulus: acc.1 * m })
            .expect("coprime moduli always intersect");
        acc = (joined.residue, joined.step);
    }
    Ok(acc)
}

/// `a·x² + b·x + c ≡ 0 (mod m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadCongruence {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub m: u64,
}

impl QuadCongruence {
    pub fn new(a: i64, b: i64, c: i64, m: u64) -> Self {
        QuadCongruence { a, b, c, m }
    }

    pub fn eval(&self, x: u64, modulus: u64) -> u64 {
        eval_poly(&[self.c, self.b, self.a], x, modulus)
    }

    pub fn holds(&self, x: i64) -> bool {
        self.eval(reduce(x, self.m), self.m) == 0
    }
}

impl fmt::Display for QuadCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x^2 + {}x + {} = 0 (mod {})", self.a, self.b, self.c, self.m)
    }
}

/// Solver configuration; only the exhaustive fallback bound is tunable.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub exhaustive_bound: u64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { exhaustive_bound: DEFAULT_EXHAUSTIVE_BOUND }
    }
}

pub fn solve_quadratic(q: &QuadCongruence) -> Result<SolutionSet> {
    solve_quadratic_with(q, &QuadConfig::default())
}

/// Factor the modulus, solve per prime power, recombine with CRT.
pub fn solve_quadratic_with(q: &QuadCongruence, cfg: &QuadConfig) -> Result<SolutionSet> {
    if q.m == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut partial: Vec<(u64, u64)> = vec![(0, 1)];
    for &(p, k) in factorize(q.m).factors() {
        let pk = p.pow(k);
        let roots = solve_prime_power(q, p, k, cfg)?;
        if roots.is_empty() {
            return Ok(SolutionSet::empty(q.m));
        }
        let mut next = Vec::with_capacity(partial.len() * roots.len());
        for &(r, m) in &partial {
            for &s in &roots {
                next.push(crt_combine(&[(r, m), (s, pk)])?);
            }
        }
        partial = next;
    }
    Ok(SolutionSet::new(q.m, partial.into_iter().map(|(r, _)| r).collect()))
}

fn solve_prime_power(q: &QuadCongruence, p: u64, k: u32, cfg: &QuadConfig) -> Result<Vec<u64>> {
    let pk = p.pow(k);
    let (a, b, c) = (reduce(q.a, pk), reduce(q.b, pk), reduce(q.c, pk));
    let local = QuadCongruence::new(a as i64, b as i64, c as i64, pk);

    if p != 2 && a % p != 0 {
        // (2ax + b)² ≡ b² − 4ac
        let disc = reduce_wide(b as i128 * b as i128 - 4 * a as i128 * c as i128, pk);
        if disc % p != 0 {
            let inv2a = inverse_mod(mul_mod(2, a, pk), pk).expect("2a is a unit");
            let ys = sqrt_mod_prime_power(disc as i64, p, k)?;
            return Ok(ys.iter().map(|y| mul_mod((y + pk - b) % pk, inv2a, pk)).collect());
        }
    }
    if p == 2 && a % 2 == 1 && b % 2 == 0 {
        // (ax + b/2)² ≡ (b/2)² − ac
        let h = b / 2;
        let rhs = reduce_wide(h as i128 * h as i128 - a as i128 * c as i128, pk);
        if rhs % 2 == 1 {
            let inva = inverse_mod(a, pk).expect("a is odd");
            let zs = sqrt_mod_prime_power(rhs as i64, 2, k)?;
            return Ok(zs.iter().map(|z| mul_mod((z + pk - h % pk) % pk, inva, pk)).collect());
        }
    }
    if p <= cfg.exhaustive_bound {
        let df = [b as i64, 2 * a as i64];
        let base: Vec<u64> = (0..p).filter(|&x| local.eval(x, p) == 0).collect();
        if base.iter().all(|&r| eval_poly(&df, r, p) != 0) {
            let f = [c as i64, b as i64, a as i64];
            return base.iter().map(|&r| hensel_lift(&f, r, p, k)).collect();
        }
    }
    if pk > cfg.exhaustive_bound {
        return Err(Error::UnsupportedModulus { modulus: pk, bound: cfg.exhaustive_bound });
    }
    Ok((0..pk).filter(|&x| local.eval(x, pk) == 0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: i64, b: i64, c: i64, m: u64) -> Vec<u64> {
        (0..m).filter(|&x| QuadCongruence::new(a, b, c, m).eval(x, m) == 0).collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(60).factors(), &[(2, 2), (3, 1), (5, 1)]);
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(24).factors(), &[(2, 3), (3, 1)]);
        assert_eq!(factorize(97).factors(), &[(97, 1)]);
        assert_eq!(factorize(60).to_string(), "2^2 * 3 * 5");
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(-3, 7), Ok(1));
        assert_eq!(legendre(-3, 5), Ok(-1));
        assert_eq!(legendre(14, 7), Ok(0));
        assert_eq!(legendre(1, 2), Err(Error::NotOddPrime(2)));
        assert_eq!(legendre(1, 9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn linear_examples() {
        assert_eq!(solve_linear(4, 2, 6).unwrap().residues(), &[1, 4]);
        assert!(solve_linear(2, 1, 4).unwrap().is_empty());
        assert_eq!(solve_linear(1, 5, 9).unwrap().residues(), &[4]);
        assert_eq!(solve_linear(0, 0, 3).unwrap().residues(), &[0, 1, 2]);
    }

    #[test]
    fn coset_intersection_matches_filter() {
        let m = 36;
        for s1 in [1, 2, 3, 4, 6, 9, 12, 18, 36] {
            for s2 in [1, 2, 3, 4, 6, 9, 12, 18, 36] {
                for r1 in 0..s1 {
                    for r2 in 0..s2 {
                        let a = Coset { residue: r1, step: s1, modulus: m };
                        let b = Coset { residue: r2, step: s2, modulus: m };
                        let want: Vec<u64> = (0..m).filter(|x| x % s1 == r1 && x % s2 == r2).collect();
                        let got: Vec<u64> = a.intersect(&b).map(|c| c.iter().collect()).unwrap_or_default();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod_prime_power(1, 2, 3).unwrap().residues(), &[1, 3, 5, 7]);
        assert!(sqrt_mod_prime_power(5, 2, 3).unwrap().is_empty());
        assert_eq!(sqrt_mod_prime_power(2, 7, 1).unwrap().residues(), &[3, 4]);
        assert!(matches!(sqrt_mod_prime_power(9, 3, 2), Err(Error::DivisibleByPrime { .. })));
        assert_eq!(sqrt_mod_prime_power(17, 2, 6).unwrap().len(), 4);
    }

    #[test]
    fn sqrt_matches_brute_force() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for k in 1..=4 {
                let pk = p.pow(k);
                for a in 1..pk as i64 {
                    if a as u64 % p == 0 {
                        continue;
                    }
                    let want: Vec<u64> = (0..pk).filter(|&x| (x * x) % pk == a as u64).collect();
                    assert_eq!(sqrt_mod_prime_power(a, p, k).unwrap().residues(), &want[..], "{a} mod {p}^{k}");
                }
            }
        }
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_lift(&[1, 1, 1], 2, 7, 2), Ok(30));
        assert_eq!(hensel_lift(&[1, 1, 1], 2, 7, 1), Ok(2));
        assert_eq!(hensel_lift(&[-1, 0, 1], 1, 2, 2), Err(Error::DerivativeVanishes { root: 1, p: 2 }));
        assert_eq!(hensel_lift(&[1, 0, 1], 1, 7, 2), Err(Error::NotARoot { root: 1, p: 7 }));
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_combine(&[(1, 3), (2, 4)]), Ok((10, 12)));
        assert_eq!(crt_combine(&[(0, 7)]), Ok((0, 7)));
        assert_eq!(crt_combine(&[(1, 3), (1, 5)]), Ok((1, 15)));
        assert_eq!(crt_combine(&[(1, 4), (1, 6)]), Err(Error::NotCoprime(4, 6)));
    }

    #[test]
    fn quadratic_examples() {
        assert!(solve_quadratic(&QuadCongruence::new(2, 3, 3, 6)).unwrap().contains(3));
        assert!(solve_quadratic(&QuadCongruence::new(4, -9, 8, 12)).unwrap().contains(4));
        assert!(solve_quadratic(&QuadCongruence::new(1, 3, 7, 14)).unwrap().is_empty());
        assert!(solve_quadratic(&QuadCongruence::new(1, 1, 1, 2)).unwrap().is_empty());
        assert_eq!(solve_quadratic(&QuadCongruence::new(0, 0, 0, 1)).unwrap().residues(), &[0]);
    }

    #[test]
    fn quadratic_matches_brute_force_small() {
        for m in 1..=40u64 {
            for a in 0..m as i64 {
                for b in 0..m as i64 {
                    for c in 0..m as i64 {
                        let got = solve_quadratic(&QuadCongruence::new(a, b, c, m)).unwrap();
                        assert_eq!(got.residues(), &brute(a, b, c, m)[..], "{a} {b} {c} mod {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn large_prime_power_structured_or_rejected() {
        let cfg = QuadConfig { exhaustive_bound: 100 };
        // 3^7 = 2187: unit leading coefficient, nonzero discriminant mod 3.
        let q = QuadCongruence::new(1, 0, -7, 2187);
        let s = solve_quadratic_with(&q, &cfg).unwrap();
        assert!(s.iter().all(|x| q.holds(x as i64)));
        // x² ≡ 0 mod 3^7 has a double root at 0 mod 3.
        let q = QuadCongruence::new(1, 0, 0, 2187);
        assert!(matches!(solve_quadratic_with(&q, &cfg), Err(Error::UnsupportedModulus { .. })));
    }
}
