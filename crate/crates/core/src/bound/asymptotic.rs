use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{ln_biguint, Approx};
use crate::count::{count_forests, quotient, Count, MemoCache};
use crate::graph::{GraphError, MultiGraph};

pub const DEFAULT_FD_CAP: u32 = 6;
/// Ring members up to this many copies are also built and counted directly.
pub const DEFAULT_DIRECT_CAP: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticError {
    #[error("d = {d} is outside 3..={cap}")]
    CapExceeded { d: u32, cap: u32 },
    #[error("edge {0}-{1} is a bridge")]
    BridgeEdge(usize, usize),
    #[error("seed graph is disconnected")]
    Disconnected,
    #[error("ring size must be at least 1")]
    ZeroCopies,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `radicand^(1/index)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Radical {
    #[serde(serialize_with = "crate::harness::serialize_count")]
    pub radicand: Count,
    pub index: u32,
}

impl Radical {
    pub fn new(radicand: Count, index: u32) -> Self {
        assert!(index > 0, "zero index");
        Radical { radicand, index }
    }

    /// Product of `base^(num/den)` factors as a single radical over the lcm of the
    /// denominators. Exponents must be nonnegative.
    pub fn from_factors(factors: &[(u64, u32, u32)]) -> Self {
        let index = factors.iter().fold(1u32, |acc, &(_, _, den)| acc.lcm(&den));
        let radicand = factors.iter().fold(BigUint::one(), |acc, &(base, num, den)| {
            acc * BigUint::from(base).pow(num * (index / den))
        });
        Radical { radicand, index }
    }

    /// Exact equality of the real values: `r1^(i2) = r2^(i1)`.
    pub fn same_value(&self, other: &Radical) -> bool {
        self.radicand.pow(other.index) == other.radicand.pow(self.index)
    }

    pub fn approx(&self) -> Approx {
        let (ln, err) = ln_biguint(&self.radicand);
        Approx::from_ln(ln / self.index as f64, err / self.index as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpperBound {
    pub d: u32,
    pub radical: Radical,
    pub value: Approx,
}

/// `[2 F(K_{d+1} - e)]^(1/(d+1))`.
pub fn upper_bound_fd(d: u32) -> Result<UpperBound, AsymptoticError> {
    upper_bound_fd_with_cap(d, DEFAULT_FD_CAP)
}

pub fn upper_bound_fd_with_cap(d: u32, cap: u32) -> Result<UpperBound, AsymptoticError> {
    if !(3..=cap).contains(&d) {
        return Err(AsymptoticError::CapExceeded { d, cap });
    }
    let g = MultiGraph::complete(d as usize + 1).delete_edge(0, 1)?;
    let radical = Radical::new(count_forests(&g, &MemoCache::default()) * 2u32, d + 1);
    let value = radical.approx();
    Ok(UpperBound { d, radical, value })
}

/// `(d-1)^(d-1) / (d² - 2d - 1)^(d/2 - 1)`, the large-girth limit of `F^(1/n)`
/// for `d`-regular graphs.
pub fn girth_limit(d: u32) -> f64 {
    let d = d as f64;
    (d - 1.0).powf(d - 1.0) / (d * d - 2.0 * d - 1.0).powf(d / 2.0 - 1.0)
}

/// The classical upper bound on `F^(1/n)` for `d`-regular graphs:
/// `(d+1)/η · ((d-1)/(d-η))^((d-2)/2)` with
/// `η = ((d+1)² - (d+1) sqrt(d² - 2d + 5)) / (2(d-1))`.
pub fn kahale_schulman(d: u32) -> f64 {
    let d = d as f64;
    let eta = ((d + 1.0).powi(2) - (d + 1.0) * (d * d - 2.0 * d + 5.0).sqrt()) / (2.0 * (d - 1.0));
    (d + 1.0) / eta * ((d - 1.0) / (d - eta)).powf((d - 2.0) / 2.0)
}

/// `m` copies of `g - uv` chained in a ring by the edges `v_i u_{i+1}` (indices mod
/// `m`). Copy `i` occupies ids `i·r .. (i+1)·r`. With `m = 1` this is `g` again.
pub fn ring_graph(g: &MultiGraph, u: usize, v: usize, m: usize) -> Result<MultiGraph, AsymptoticError> {
    if m == 0 {
        return Err(AsymptoticError::ZeroCopies);
    }
    let h = g.delete_edge(u, v)?;
    let r = g.vertex_count();
    let mut ring = MultiGraph::empty(0);
    for _ in 0..m {
        ring = ring.disjoint_union(&h);
    }
    for i in 0..m {
        let j = (i + 1) % m;
        ring = ring.with_edge(i * r + v, j * r + u)?;
    }
    Ok(ring)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub m: usize,
    #[serde(serialize_with = "crate::harness::serialize_count")]
    pub forests: Count,
    #[serde(serialize_with = "crate::harness::serialize_opt_count")]
    pub direct: Option<Count>,
    /// `F(G_m)^(1/(m r))`
    pub root: Approx,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySeries {
    #[serde(skip)]
    pub seed: MultiGraph,
    pub edge: (usize, usize),
    pub order: usize,
    /// `F(G - uv)`
    #[serde(serialize_with = "crate::harness::serialize_count")]
    pub a: Count,
    /// `F(G - uv) - F((G - uv) / {u, v})`
    #[serde(serialize_with = "crate::harness::serialize_count")]
    pub b: Count,
    /// `(2A)^(1/r)`
    pub limit: Approx,
    pub rows: Vec<FamilyRow>,
}

impl FamilySeries {
    /// Closed form and direct count agree wherever both exist.
    pub fn direct_counts_agree(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.direct.as_ref().is_none_or(|d| *d == r.forests))
    }

    /// Roots strictly increase with `m` (rows taken in increasing `m`).
    pub fn roots_increase(&self) -> bool {
        let mut rows: Vec<&FamilyRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| r.m);
        rows.windows(2).all(|w| {
            w[0].m == w[1].m || w[0].root.value + w[0].root.err < w[1].root.value + w[1].root.err
        })
    }
}

/// Exact forest counts `F(G_m) = 2^m A^m - B^m` of the ring family over `g` and
/// the non-bridge edge `uv`.
pub fn ring_family(g: &MultiGraph, u: usize, v: usize, ms: &[usize]) -> Result<FamilySeries, AsymptoticError> {
    ring_family_with_cap(g, u, v, ms, DEFAULT_DIRECT_CAP)
}

pub fn ring_family_with_cap(
    g: &MultiGraph,
    u: usize,
    v: usize,
    ms: &[usize],
    direct_cap: usize,
) -> Result<FamilySeries, AsymptoticError> {
    if !g.is_connected() {
        return Err(AsymptoticError::Disconnected);
    }
    let h = g.delete_edge(u, v)?;
    if !h.is_connected() {
        return Err(AsymptoticError::BridgeEdge(u, v));
    }
    if ms.contains(&0) {
        return Err(AsymptoticError::ZeroCopies);
    }
    let cache = MemoCache::default();
    let a = count_forests(&h, &cache);
    let joined = quotient(&h, &[vec![u, v]]).expect("valid block");
    let b = &a - count_forests(&joined, &cache);
    let r = g.vertex_count();
    let two_a = &a * 2u32;
    let (ln_2a, err_2a) = ln_biguint(&two_a);
    let limit = Approx::from_ln(ln_2a / r as f64, err_2a / r as f64);
    let rows = ms
        .par_iter()
        .map(|&m| -> Result<FamilyRow, AsymptoticError> {
            let forests = two_a.pow(m as u32) - b.pow(m as u32);
            let direct = if m <= direct_cap {
                Some(count_forests(&ring_graph(g, u, v, m)?, &cache))
            } else {
                None
            };
            let (ln, err) = ln_biguint(&forests);
            let scale = (m * r) as f64;
            Ok(FamilyRow {
                m,
                forests,
                direct,
                root: Approx::from_ln(ln / scale, err / scale),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FamilySeries {
        seed: g.clone(),
        edge: (u, v),
        order: r,
        a,
        b,
        limit,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radicals_from_factors() {
        let r = Radical::from_factors(&[(2, 1, 1), (3, 1, 4)]);
        assert_eq!((r.radicand.clone(), r.index), (Count::from(48u32), 4));
        let s = Radical::from_factors(&[(2, 2, 5), (99, 1, 5)]);
        assert_eq!((s.radicand.clone(), s.index), (Count::from(396u32), 5));
        assert!(Radical::new(Count::from(4u32), 2).same_value(&Radical::new(Count::from(8u32), 3)));
        assert!(!r.same_value(&s));
    }

    #[test]
    fn fd_bounds_for_three_and_four() {
        let u3 = upper_bound_fd(3).unwrap();
        assert_eq!(u3.radical.radicand, Count::from(48u32));
        assert!(u3.value.within(2.0 * 3f64.powf(0.25), 1e-12));
        let u4 = upper_bound_fd(4).unwrap();
        assert_eq!(u4.radical.radicand, Count::from(396u32));
        assert!(upper_bound_fd(2).is_err());
        assert!(upper_bound_fd(7).is_err());
    }

    #[test]
    fn girth_limits() {
        assert!((girth_limit(3) - 2f64.powf(1.5)).abs() < 1e-12);
        assert!((girth_limit(4) - 27.0 / 7.0).abs() < 1e-12);
        assert!((girth_limit(5) - 256.0 / 14f64.powf(1.5)).abs() < 1e-12);
    }

    #[test]
    fn kahale_schulman_exceeds_girth_limit() {
        for d in 3..=9 {
            let ks = kahale_schulman(d);
            assert!(ks > girth_limit(d));
            assert!(ks < d as f64 + 1.0);
        }
    }

    #[test]
    fn ring_of_one_is_the_seed() {
        let k4 = MultiGraph::complete(4);
        assert_eq!(ring_graph(&k4, 0, 1, 1).unwrap(), k4);
        let r2 = ring_graph(&k4, 0, 1, 2).unwrap();
        assert_eq!(r2.vertex_count(), 8);
        assert!(r2.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn bridge_rejected() {
        let p = MultiGraph::path(3);
        assert_eq!(ring_family(&p, 0, 1, &[1]), Err(AsymptoticError::BridgeEdge(0, 1)));
    }
}
