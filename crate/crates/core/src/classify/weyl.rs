//! Weyl reflections on exponent matrices and their orbits.

use std::collections::{BTreeSet, VecDeque};

use crate::braiding::{gdd_of, BraidingMatrix, Gdd};
use crate::error::{Error, Result};
use crate::modarith::reduce_wide;

pub const DEFAULT_ORBIT_LIMIT: usize = 512;

/// The Cartan-like integers at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionData {
    pub vertex: usize,
    /// `m[i] = −2` at the reflecting vertex.
    pub m: Vec<i64>,
}

/// Least `m ≥ 0` with `(m+1)_{q_ii} = 0` or `q_ii^m·q_ij·q_ji = 1`, given
/// exponents `d = a_ii` and `e = a_ij + a_ji`.
fn cartan_entry(d: u64, e: u64, n: u64) -> Option<i64> {
    let ord = n / crate::modarith::gcd(d, n);
    if d % n == 0 {
        return (e % n == 0).then_some(0);
    }
    (0..ord).find(|&m| (m + 1) % ord == 0 || (d * m + e) % n == 0).map(|m| m as i64)
}

pub fn cartan_row(b: &BraidingMatrix, i: usize) -> Result<ReflectionData> {
    let n = b.modulus();
    let m = (0..b.rank())
        .map(|j| {
            if j == i {
                Ok(-2)
            } else {
                let e = (b.get(i, j) + b.get(j, i)) % n;
                cartan_entry(b.get(i, i), e, n).ok_or(Error::ReflectionUndefined(i))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReflectionData { vertex: i, m })
}

/// `a′_jl = a_jl + m_ij·a_il + m_il·a_ji + m_ij·m_il·a_ii (mod n)`.
pub fn weyl_reflect(b: &BraidingMatrix, i: usize) -> Result<BraidingMatrix> {
    if i >= b.rank() {
        return Err(Error::invalid(format!("vertex {} out of range for rank {}", i + 1, b.rank())));
    }
    let data = cartan_row(b, i)?;
    let n = b.modulus();
    let a = |r: usize, c: usize| b.get(r, c) as i128;
    Ok(BraidingMatrix::from_fn(n, b.rank(), |j, l| {
        let (mj, ml) = (data.m[j] as i128, data.m[l] as i128);
        reduce_wide(a(j, l) + mj * a(i, l) + ml * a(j, i) + mj * ml * a(i, i), n) as i64
    }))
}

/// Reflection at GDD level; the result depends only on the diagram.
pub fn weyl_reflect_gdd(g: &Gdd, i: usize) -> Result<Gdd> {
    Ok(gdd_of(&weyl_reflect(&g.to_matrix(), i)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Canonical GDDs in sorted order.
    pub members: Vec<Gdd>,
    pub truncated: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Breadth-first closure under all defined reflections, deduplicated by
/// canonical form and stopped once `max_size` diagrams are known.
pub fn weyl_orbit_gdd(g: &Gdd, max_size: usize) -> Orbit {
    let start = g.canonical();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut truncated = false;
    'bfs: while let Some(cur) = queue.pop_front() {
        for i in 0..cur.rank() {
            let Ok(next) = weyl_reflect_gdd(&cur, i) else { continue };
            let next = next.canonical();
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= max_size {
                truncated = true;
                break 'bfs;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Orbit { members: seen.into_iter().collect(), truncated }
}

pub fn weyl_orbit(b: &BraidingMatrix, max_size: usize) -> Orbit {
    weyl_orbit_gdd(&gdd_of(b), max_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::permutation_similar;

    #[test]
    fn cartan_entries() {
        // q_ii = −1 over ℤ₄: m = 1 from (2)_{−1} = 0.
        assert_eq!(cartan_entry(2, 1, 4), Some(1));
        // A₂ edge: q_ii·q_ij·q_ji = 1 at m = 1.
        assert_eq!(cartan_entry(1, 6, 7), Some(1));
        assert_eq!(cartan_entry(0, 3, 7), None);
        assert_eq!(cartan_entry(0, 0, 7), Some(0));
        assert_eq!(cartan_entry(3, 0, 7), Some(0));
    }

    #[test]
    fn a2_is_fixed() {
        let g = Gdd::rank2(7, 3, 3, -3);
        for i in 0..2 {
            assert_eq!(weyl_reflect_gdd(&g, i).unwrap().canonical(), g.canonical());
        }
        assert_eq!(weyl_orbit_gdd(&g, 16).len(), 1);
    }

    #[test]
    fn disconnected_vertex_is_fixed() {
        let b = BraidingMatrix::from_rows(5, &[vec![1, 2, 0], vec![3, 2, 1], vec![0, 0, 4]]).unwrap();
        let g = gdd_of(&b);
        let r = gdd_of(&weyl_reflect(&b, 0).unwrap());
        assert_eq!(r, g);
        let d = BraidingMatrix::from_rows(5, &[vec![1, 0], vec![0, 2]]).unwrap();
        assert_eq!(weyl_orbit(&d, 8).len(), 1);
    }

    #[test]
    fn undefined_reflection() {
        let g = Gdd::rank2(6, 0, 3, 2);
        assert_eq!(weyl_reflect_gdd(&g, 0), Err(Error::ReflectionUndefined(0)));
        assert!(weyl_reflect_gdd(&g, 1).is_ok());
    }

    #[test]
    fn reflection_is_an_involution() {
        let n = 12;
        for d1 in 0..n as i64 {
            for d2 in 0..n as i64 {
                for e in 1..n as i64 {
                    let g = Gdd::rank2(n, d1, d2, e);
                    for i in 0..2 {
                        if let Ok(r) = weyl_reflect_gdd(&g, i) {
                            let back = weyl_reflect_gdd(&r, i).unwrap();
                            assert!(permutation_similar(&back.symmetric_matrix(), &g.symmetric_matrix()).is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn super_type_chain_orbit() {
        // −1 -ζ- −1 -ζ- −1 over ℤ₆, ζ of order 3.
        let g = Gdd::new(6, &[3, 3, 3], &[((0, 1), 2), ((1, 2), 2)]).unwrap();
        let orbit = weyl_orbit_gdd(&g, DEFAULT_ORBIT_LIMIT);
        assert!(!orbit.truncated);
        assert!(orbit.len() > 1);
    }

    #[test]
    fn truncation_is_flagged() {
        let g = Gdd::new(6, &[3, 3, 3], &[((0, 1), 2), ((1, 2), 2)]).unwrap();
        let orbit = weyl_orbit_gdd(&g, 1);
        assert!(orbit.truncated);
        assert_eq!(orbit.len(), 1);
    }
}
