//! Diagonal braidings over ℤₙ. Every root of unity is stored as an exponent
//! of one fixed primitive n-th root ω, so `q = ω^a` is the pair `(a, n)`.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{gcd, reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootExp {
    exp: u64,
    n: u64,
}

impl RootExp {
    pub fn new(exp: i64, n: u64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        RootExp { exp: reduce(exp, n), n }
    }

    pub fn exp(self) -> u64 {
        self.exp
    }

    pub fn modulus(self) -> u64 {
        self.n
    }

    pub fn order(self) -> u64 {
        self.n / gcd(self.exp, self.n)
    }

    pub fn is_one(self) -> bool {
        self.exp == 0
    }

    pub fn is_minus_one(self) -> bool {
        self.n % 2 == 0 && self.exp == self.n / 2
    }


    pub fn pow(self, k: i64) -> RootExp {
        RootExp::new((self.exp as i128 * k as i128).rem_euclid(self.n as i128) as i64, self.n)
    }

    pub fn inv(self) -> RootExp {
        self.pow(-1)
    }

    /// `−1` as a root, when `n` is even.
    pub fn minus_one(n: u64) -> Option<RootExp> {
        (n % 2 == 0).then_some(RootExp { exp: n / 2, n })
    }
}

impl fmt::Display for RootExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^{}", self.exp)
    }
}

impl std::ops::Mul for RootExp {
    type Output = RootExp;

    fn mul(self, other: RootExp) -> RootExp {
        debug_assert_eq!(self.n, other.n);
        RootExp { exp: (self.exp + other.exp) % self.n, n: self.n }
    }
}

/// Order of `q`, the `m` with `q ∈ R_m`.
pub fn order(q: RootExp) -> u64 {
    q.order()
}

/// Exponent matrix `a_ij` with `q_ij = ω^{a_ij}`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidingMatrix {
    n: u64,
    rank: usize,
    entries: Vec<u64>,
}

impl BraidingMatrix {
    /// Negative exponents are reduced mod `n`; exponents `≥ n` are rejected.
    pub fn from_rows(n: u64, rows: &[Vec<i64>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::invalid("rank must be at least 1"));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::invalid(format!("row {} has {} entries, expected {rank}", i + 1, row.len())));
            }
            for &a in row {
                if a >= n as i64 {
                    return Err(Error::invalid(format!("exponent {a} out of range for n = {n}")));
                }
                entries.push(reduce(a, n));
            }
        }
        Ok(BraidingMatrix { n, rank, entries })
    }

    /// Builds a matrix from arbitrary integers, reducing every entry mod `n`.
    pub fn from_fn(n: u64, rank: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        assert!(n >= 1 && rank >= 1);
        let entries = (0..rank * rank).map(|k| reduce(f(k / rank, k % rank), n)).collect();
        BraidingMatrix { n, rank, entries }
    }

    /// The rank-one matrix `a_ij = x_i·y_j`.
    pub fn outer(n: u64, x: &[u64], y: &[u64]) -> Self {
        assert_eq!(x.len(), y.len());
        BraidingMatrix::from_fn(n, x.len(), |i, j| ((x[i] as u128 * y[j] as u128) % n as u128) as i64)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.rank + j]
    }

    pub fn q(&self, i: usize, j: usize) -> RootExp {
        RootExp { exp: self.get(i, j), n: self.n }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.rank).map(<[u64]>::to_vec).collect()
    }

    /// `B'` with `B'[σ(i)][σ(j)] = B[i][j]`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        let r = self.rank;
        let mut entries = vec![0; r * r];
        for i in 0..r {
            for j in 0..r {
                entries[sigma[i] * r + sigma[j]] = self.get(i, j);
            }
        }
        BraidingMatrix { n: self.n, rank: r, entries }
    }
}

impl fmt::Display for BraidingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(|r| format!("[{}]", r.iter().join(","))).collect();
        write!(f, "[{}] mod {}", rows.join(","), self.n)
    }
}

/// Generalized Dynkin diagram: vertex labels `d_i = a_ii` and edge labels
/// `e_ij = a_ij + a_ji`; an edge is present exactly when `e_ij ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gdd {
    n: u64,
    rank: usize,
    diag: Vec<u64>,
    /// Upper triangle, row by row.
    edges: Vec<u64>,
}

fn tri_index(rank: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * rank - i * (i + 1) / 2 + (j - i - 1)
}

impl Gdd {
    /// `edges` lists `((i, j), e_ij)` with 0-based `i ≠ j`; unlisted pairs get 0.
    pub fn new(n: u64, diag: &[i64], edges: &[((usize, usize), i64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let rank = diag.len();
        if rank == 0 {
            return Err(Error::invalid("rank must be at least 1"));
        }
        let mut g = Gdd {
            n,
            rank,
            diag: diag.iter().map(|&d| reduce(d, n)).collect(),
            edges: vec![0; rank * (rank - 1) / 2],
        };
        for &((i, j), e) in edges {
            if i >= rank || j >= rank || i == j {
                return Err(Error::invalid(format!("bad edge ({}, {}) for rank {rank}", i + 1, j + 1)));
            }
            g.edges[tri_index(rank, i, j)] = reduce(e, n);
        }
        Ok(g)
    }

    pub fn rank2(n: u64, d1: i64, d2: i64, e: i64) -> Self {
        Gdd::new(n, &[d1, d2], &[((0, 1), e)]).expect("valid rank-2 data")
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn diag(&self, i: usize) -> u64 {
        self.diag[i]
    }

    pub fn diagonal(&self) -> &[u64] {
        &self.diag
    }

    pub fn edge(&self, i: usize, j: usize) -> u64 {
        if i == j {
            return 0;
        }
        self.edges[tri_index(self.rank, i, j)]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edge(i, j) != 0
    }

    pub fn vertex(&self, i: usize) -> RootExp {
        RootExp { exp: self.diag[i], n: self.n }
    }

    pub fn edge_root(&self, i: usize, j: usize) -> RootExp {
        RootExp { exp: self.edge(i, j), n: self.n }
    }

    /// Present edges as 0-based `((i, j), e_ij)` with `i < j`.
    pub fn edge_list(&self) -> Vec<((usize, usize), u64)> {
        (0..self.rank)
            .tuple_combinations()
            .map(|(i, j)| ((i, j), self.edge(i, j)))
            .filter(|&(_, e)| e != 0)
            .collect()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&j| self.has_edge(i, j))
    }

    /// A matrix with this diagram: `a_ii = d_i`, `a_ij = e_ij` for `i < j`, zero below.
    pub fn to_matrix(&self) -> BraidingMatrix {
        BraidingMatrix::from_fn(self.n, self.rank, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.diag[i] as i64,
            std::cmp::Ordering::Less => self.edge(i, j) as i64,
            std::cmp::Ordering::Greater => 0,
        })
    }

    /// Diagonal plus symmetrized edges; two diagrams are isomorphic exactly
    /// when these matrices are permutation similar.
    pub fn symmetric_matrix(&self) -> BraidingMatrix {
        BraidingMatrix::from_fn(self.n, self.rank, |i, j| {
            if i == j { self.diag[i] as i64 } else { self.edge(i, j) as i64 }
        })
    }

    fn from_symmetric(b: &BraidingMatrix) -> Self {
        let r = b.rank();
        Gdd {
            n: b.modulus(),
            rank: r,
            diag: (0..r).map(|i| b.get(i, i)).collect(),
            edges: (0..r).tuple_combinations().map(|(i, j)| b.get(i, j)).collect(),
        }
    }

    /// Vertex `i` of the input becomes vertex `σ(i)`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        Gdd::from_symmetric(&self.symmetric_matrix().permuted(sigma))
    }

    /// Representative of the isomorphism class.
    pub fn canonical(&self) -> Self {
        Gdd::from_symmetric(&canonical_form(&self.symmetric_matrix()))
    }

    /// Changes the modulus from `n` to `n·k`, mapping `ω ↦ ω'^k`.
    pub fn scaled(&self, k: u64) -> Self {
        Gdd {
            n: self.n * k,
            rank: self.rank,
            diag: self.diag.iter().map(|d| d * k).collect(),
            edges: self.edges.iter().map(|e| e * k).collect(),
        }
    }
}

impl fmt::Display for Gdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d=({})", self.diag.iter().join(","))?;
        for ((i, j), e) in self.edge_list() {
            write!(f, " e{}{}={}", i + 1, j + 1, e)?;
        }
        write!(f, " mod {}", self.n)
    }
}

pub fn gdd_of(b: &BraidingMatrix) -> Gdd {
    let r = b.rank();
    let n = b.modulus();
    Gdd {
        n,
        rank: r,
        diag: (0..r).map(|i| b.get(i, i)).collect(),
        edges: (0..r).tuple_combinations().map(|(i, j)| (b.get(i, j) + b.get(j, i)) % n).collect(),
    }
}

pub fn is_connected(g: &Gdd) -> bool {
    let mut seen = vec![false; g.rank()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in g.neighbors(i) {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A permutation `σ` with `B2[σ(i)][σ(j)] = B1[i][j]`, if one exists.
pub fn permutation_similar(b1: &BraidingMatrix, b2: &BraidingMatrix) -> Option<Vec<usize>> {
    if b1.modulus() != b2.modulus() || b1.rank() != b2.rank() {
        return None;
    }
    let r = b1.rank();
    let mut d1: Vec<u64> = (0..r).map(|i| b1.get(i, i)).collect();
    let mut d2: Vec<u64> = (0..r).map(|i| b2.get(i, i)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return None;
    }
    (0..r)
        .permutations(r)
        .find(|sigma| (0..r).all(|i| (0..r).all(|j| b2.get(sigma[i], sigma[j]) == b1.get(i, j))))
}

/// Lexicographically least row-major entry sequence over all simultaneous
/// row and column permutations.
pub fn canonical_form(b: &BraidingMatrix) -> BraidingMatrix {
    let r = b.rank();
    if r == 1 {
        return b.clone();
    }
    (0..r)
        .permutations(r)
        .map(|sigma| b.permuted(&sigma))
        .min_by(|x, y| x.entries.cmp(&y.entries))
        .expect("at least one permutation")
}

/// The free abelian group on `e_1..e_r` with `χ₀(e_i, e_j) = q_ij`.
#[derive(Debug, Clone)]
pub struct DegreeLattice {
    braiding: BraidingMatrix,
}

impl DegreeLattice {
    pub fn new(braiding: BraidingMatrix) -> Self {
        DegreeLattice { braiding }
    }

    pub fn rank(&self) -> usize {
        self.braiding.rank()
    }

    pub fn chi0(&self, i: usize, j: usize) -> RootExp {
        self.braiding.q(i, j)
    }

    /// Bicharacter extended to degree vectors.
    pub fn chi(&self, a: &[i64], b: &[i64]) -> RootExp {
        let n = self.braiding.modulus();
        let mut acc: i128 = 0;
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                acc += ai as i128 * bj as i128 * self.braiding.get(i, j) as i128;
            }
        }
        RootExp::new(acc.rem_euclid(n as i128) as i64, n)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub n: u64,
    pub rank: usize,
    pub exponents: Vec<Vec<i64>>,
}

impl MatrixDoc {
    pub fn into_matrix(self) -> Result<BraidingMatrix> {
        if self.exponents.len() != self.rank {
            return Err(Error::invalid(format!("rank is {} but {} rows given", self.rank, self.exponents.len())));
        }
        BraidingMatrix::from_rows(self.n, &self.exponents)
    }
}

impl From<&BraidingMatrix> for MatrixDoc {
    fn from(b: &BraidingMatrix) -> Self {
        MatrixDoc {
            n: b.modulus(),
            rank: b.rank(),
            exponents: b.rows().into_iter().map(|r| r.into_iter().map(|a| a as i64).collect()).collect(),
        }
    }
}

/// GDD document: `{"n", "rank", "diag", "edges": {"i,j": e}}` with 1-based
/// indices. `n` may be left out and supplied separately.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GddDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub rank: usize,
    pub diag: Vec<i64>,
    #[serde(default)]
    pub edges: std::collections::BTreeMap<String, i64>,
}

impl GddDoc {
    pub fn into_gdd(self) -> Result<Gdd> {
        self.into_gdd_with(None)
    }

    /// `n` from the argument when the document has none; the two must agree
    /// when both are present.
    pub fn into_gdd_with(self, n: Option<u64>) -> Result<Gdd> {
        let n = match (self.n, n) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::invalid(format!("document has n = {a} but n = {b} was given")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::invalid("modulus n is missing")),
        };
        if self.diag.len() != self.rank {
            return Err(Error::invalid(format!("rank is {} but {} diagonal entries given", self.rank, self.diag.len())));
        }
        let mut edges = Vec::new();
        for (key, &e) in &self.edges {
            let parsed: Option<(usize, usize)> = key
                .split(',')
                .map(|s| s.trim().parse::<usize>().ok())
                .collect::<Option<Vec<_>>>()
                .and_then(|v| (v.len() == 2).then(|| (v[0], v[1])));
            match parsed {
                Some((i, j)) if i >= 1 && j >= 1 => edges.push(((i - 1, j - 1), e)),
                _ => return Err(Error::invalid(format!("edge key {key:?} is not of the form \"i,j\""))),
            }
        }
        for &d in self.diag.iter().chain(edges.iter().map(|(_, e)| e)) {
            if d >= n as i64 {
                return Err(Error::invalid(format!("exponent {d} out of range for n = {n}")));
            }
        }
        Gdd::new(n, &self.diag, &edges)
    }
}

impl From<&Gdd> for GddDoc {
    fn from(g: &Gdd) -> Self {
        GddDoc {
            n: Some(g.modulus()),
            rank: g.rank(),
            diag: g.diagonal().iter().map(|&d| d as i64).collect(),
            edges: g
                .edge_list()
                .into_iter()
                .map(|((i, j), e)| (format!("{},{}", i + 1, j + 1), e as i64))
                .collect(),
        }
    }
}

impl Serialize for Gdd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GddDoc::from(self).serialize(s)
    }
}

impl Serialize for BraidingMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixDoc::from(self).serialize(s)
    }
}
