use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ln_biguint, Approx};
use crate::count::Count;
use crate::graph::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("vertex {vertex} has degree {degree}, outside the family {family:?}")]
    DegreeOutOfFamily {
        vertex: usize,
        degree: usize,
        family: &'static [usize],
    },
}

/// `2^(a/s) · 3^(b/s) · 198^(c/s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundExpr {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub s: u32,
}

pub const P_FAMILY: &[usize] = &[2, 3];
pub const Q_FAMILY: &[usize] = &[2, 3, 4];

fn check_family(g: &MultiGraph, family: &'static [usize]) -> Result<(), BoundError> {
    for (vertex, &degree) in g.degrees().iter().enumerate() {
        if !family.contains(&degree) {
            return Err(BoundError::DegreeOutOfFamily {
                vertex,
                degree,
                family,
            });
        }
    }
    Ok(())
}

fn count_of(counts: &[usize], d: usize) -> i64 {
    counts.get(d).copied().unwrap_or(0) as i64
}

/// `2^(n2 + n3 - 1) · 3^((n3 + 2) / 4)` for graphs with degrees in {2, 3}.
pub fn p_bound(g: &MultiGraph) -> Result<BoundExpr, BoundError> {
    check_family(g, P_FAMILY)?;
    let dc = g.degree_counts();
    let (n2, n3) = (count_of(&dc, 2), count_of(&dc, 3));
    Ok(BoundExpr {
        a: 4 * (n2 + n3 - 1),
        b: n3 + 2,
        c: 0,
        s: 4,
    })
}

/// `2^(n2 + (3 n3 + n4 - 9) / 5) · 198^((n3 + 2 n4 + 2) / 10)` for degrees in {2, 3, 4}.
pub fn q_bound(g: &MultiGraph) -> Result<BoundExpr, BoundError> {
    check_family(g, Q_FAMILY)?;
    let dc = g.degree_counts();
    let (n2, n3, n4) = (count_of(&dc, 2), count_of(&dc, 3), count_of(&dc, 4));
    Ok(BoundExpr {
        a: 10 * n2 + 2 * (3 * n3 + n4 - 9),
        b: 0,
        c: n3 + 2 * n4 + 2,
        s: 10,
    })
}

fn pow_prime(p: u32, e: i64) -> BigUint {
    if e <= 0 {
        BigUint::one()
    } else {
        BigUint::from(p).pow(e as u32)
    }
}

impl BoundExpr {
    /// Exponents of 2, 3 and 11 in `expr^s` (198 = 2 · 3² · 11).
    fn prime_exponents(&self) -> [(u32, i64); 3] {
        [(2, self.a + self.c), (3, self.b + 2 * self.c), (11, self.c)]
    }

    /// Exact comparison of `f` against this bound: `f^s` versus the prime
    /// product, with negative exponents moved to the left side.
    pub fn compare(&self, f: &Count) -> Ordering {
        let mut lhs = f.pow(self.s);
        let mut rhs = BigUint::one();
        for (p, e) in self.prime_exponents() {
            if e >= 0 {
                rhs *= pow_prime(p, e);
            } else {
                lhs *= pow_prime(p, -e);
            }
        }
        lhs.cmp(&rhs)
    }

    pub fn ln(&self) -> f64 {
        (self.a as f64 * 2f64.ln() + self.b as f64 * 3f64.ln() + self.c as f64 * 198f64.ln())
            / self.s as f64
    }

    pub fn value(&self) -> f64 {
        self.ln().exp()
    }

    /// `expr^(1/n)`, the per-vertex form of the bound.
    pub fn per_vertex(&self, n: usize) -> f64 {
        (self.ln() / n as f64).exp()
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (base, e) in [(2, self.a), (3, self.b), (198, self.c)] {
            if e != 0 {
                parts.push(format!("{base}^({e}/{})", self.s));
            }
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Convenience wrapper: `compare` with the count first.
pub fn compare(f: &Count, bound: &BoundExpr) -> Ordering {
    bound.compare(f)
}

/// `F^(1/n)` evaluated in log space with an error bound.
pub fn per_vertex_root(f: &Count, n: usize) -> Approx {
    let (ln, ln_err) = ln_biguint(f);
    Approx::from_ln(ln / n as f64, ln_err / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_minus_e() -> MultiGraph {
        MultiGraph::complete(4).delete_edge(0, 1).unwrap()
    }

    #[test]
    fn p_of_diamond_is_tight() {
        let p = p_bound(&k4_minus_e()).unwrap();
        assert_eq!((p.a, p.b, p.c, p.s), (12, 4, 0, 4));
        assert_eq!(p.compare(&Count::from(24u32)), Ordering::Equal);
        assert_eq!(p.compare(&Count::from(23u32)), Ordering::Less);
    }

    #[test]
    fn k4_falls_short_of_p() {
        let p = p_bound(&MultiGraph::complete(4)).unwrap();
        assert_eq!(p.compare(&Count::from(38u32)), Ordering::Less);
        assert_eq!(p.compare(&Count::from(42u32)), Ordering::Greater);
    }

    #[test]
    fn k33_clears_p() {
        let p = p_bound(&MultiGraph::complete_bipartite(3, 3)).unwrap();
        assert_eq!(p.compare(&Count::from(288u32)), Ordering::Equal);
        assert_eq!(p.compare(&Count::from(328u32)), Ordering::Greater);
    }

    #[test]
    fn q_of_k5_has_negative_power_of_two() {
        let q = q_bound(&MultiGraph::complete(5)).unwrap();
        assert_eq!((q.a, q.c, q.s), (-8, 12, 10));
        assert_eq!(q.compare(&Count::from(291u32)), Ordering::Less);
        assert!((q.value() - 2f64.powf(-0.8) * 198f64.powf(1.2)).abs() < 1e-9);
    }

    #[test]
    fn family_check() {
        assert!(matches!(
            p_bound(&MultiGraph::complete(5)),
            Err(BoundError::DegreeOutOfFamily { degree: 4, .. })
        ));
        assert!(q_bound(&MultiGraph::path(3)).is_err());
    }

    #[test]
    fn display_skips_zero_terms() {
        let p = p_bound(&k4_minus_e()).unwrap();
        assert_eq!(p.to_string(), "2^(12/4) 3^(4/4)");
    }
}
