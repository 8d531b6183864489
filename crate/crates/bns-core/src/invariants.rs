//! Top-level invariant extraction: s over fields, the integral s tuple, the
//! graded length, Σ_p, thinness, and the slice genus bound.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Fp, GroupDescriptor, PieceGroup, Qq, Zz};
use crate::bncomplex;
use crate::diagram::PlanarDiagram;
use crate::{Error, Result};

/// The full output record for one knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SInvariantReport {
    /// s^Q, an even integer.
    pub s_rational: i64,
    /// s^{F_p} per computed prime.
    pub s_mod_p: BTreeMap<u64, i64>,
    /// Number of filtration steps below s^Q carrying nonzero pieces.
    pub graded_length: usize,
    /// Orders of the cyclic pieces at q = s^Q - 2l for l = 1..gl; an
    /// interior Zero piece is recorded as 1 to keep positions meaningful.
    pub torsion_orders: Vec<u64>,
    /// (s^Q - s^{F_p}) / 2 per computed prime.
    pub sigma_p: BTreeMap<u64, i64>,
    /// max(|s^Q|/2, |s^Q/2 - gl|).
    pub genus_lower_bound: u64,
}

fn require_knot(d: &PlanarDiagram) -> Result<()> {
    if d.is_knot() {
        Ok(())
    } else {
        Err(Error::NotAKnot(d.component_count()))
    }
}

fn s_field_impl<F: Field>(d: &PlanarDiagram, f: F) -> Result<i64> {
    let bn = bncomplex::build(d, f, true, true)?;
    let s = bn
        .complex
        .graded_image_dims(0)
        .into_iter()
        .filter(|&(_, dim)| dim > 0)
        .map(|(q, _)| q)
        .max()
        .expect("reduced H^0 of a knot has rank 1 over a field");
    debug_assert_eq!(s.rem_euclid(2), 0);
    Ok(s)
}

/// s^F(K) for F = Q (characteristic 0) or F_p.
pub fn s_over_field(d: &PlanarDiagram, characteristic: u64) -> Result<i64> {
    require_knot(d)?;
    if characteristic == 0 {
        s_field_impl(d, Qq)
    } else {
        s_field_impl(d, Fp::new(characteristic))
    }
}

/// The integral data at h = 0 of the reduced complex: s^Q, gl, and the
/// cyclic orders below the free piece (exact, as big integers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralData {
    pub s_rational: i64,
    pub graded_length: usize,
    pub torsion_orders: Vec<BigInt>,
}

impl IntegralData {
    /// The tuple (s^Q, |H^(s-2)|, ..., |H^(s-2gl)|).
    pub fn tuple(&self) -> Vec<BigInt> {
        let mut t = vec![BigInt::from(self.s_rational)];
        t.extend(self.torsion_orders.iter().cloned());
        t
    }
}

/// The integral s-invariant tuple, read off the graded pieces of reduced
/// H^0 over Z.
pub fn s_integral(d: &PlanarDiagram) -> Result<IntegralData> {
    require_knot(d)?;
    let bn = bncomplex::build(d, Zz, true, true)?;
    let pieces = bn.complex.graded_pieces(0)?;
    let mut s_rational: Option<i64> = None;
    let mut below: Vec<(i64, Option<BigInt>)> = Vec::new();
    for p in &pieces {
        match &p.group {
            PieceGroup::Free => {
                assert!(
                    s_rational.is_none(),
                    "more than one free graded piece at h = 0"
                );
                s_rational = Some(p.q);
            }
            PieceGroup::Cyclic(t) => {
                assert!(
                    s_rational.is_some(),
                    "torsion piece above the free one at q = {}",
                    p.q
                );
                below.push((p.q, Some(t.clone())));
            }
            PieceGroup::Zero => {
                if s_rational.is_some() {
                    below.push((p.q, None));
                }
            }
        }
    }
    let s = s_rational.expect("reduced H^0 of a knot carries a free piece");
    // gl = largest l with a nonzero piece at s - 2l; interior zeros
    // contribute order 1.
    let gl = below
        .iter()
        .enumerate()
        .filter(|(_, (_, t))| t.is_some())
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0);
    let torsion_orders: Vec<BigInt> = below[..gl]
        .iter()
        .map(|(_, t)| t.clone().unwrap_or_else(|| BigInt::from(1)))
        .collect();
    Ok(IntegralData {
        s_rational: s,
        graded_length: gl,
        torsion_orders,
    })
}

/// Whether no graded piece of reduced H^0 has an element of order p.
pub fn is_graded_p_torsion_free(d: &PlanarDiagram, p: u64) -> Result<bool> {
    let data = s_integral(d)?;
    let p = BigInt::from(p);
    Ok(data
        .torsion_orders
        .iter()
        .all(|t| (t % &p) != BigInt::from(0)))
}

/// Reduced integral Khovanov homology in homological degrees k..=l:
/// smallest n such that the nonzero groups lie on n adjacent diagonals
/// q - 2h, plus whether any torsion is present.
pub fn thinness(d: &PlanarDiagram, k: i64, l: i64) -> Result<(usize, bool)> {
    require_knot(d)?;
    assert!(k <= l);
    let table = khovanov_table(d, true)?;
    let mut dmin = i64::MAX;
    let mut dmax = i64::MIN;
    let mut torsion = false;
    for (&(h, q), g) in &table {
        if h < k || h > l || g.is_zero() {
            continue;
        }
        let diag = q - 2 * h;
        dmin = dmin.min(diag);
        dmax = dmax.max(diag);
        torsion |= !g.torsion.is_empty();
    }
    let n = if dmin > dmax {
        0
    } else {
        ((dmax - dmin) / 2 + 1) as usize
    };
    Ok((n, torsion))
}

/// Integral Khovanov homology of the diagram (reduced or unreduced) as a
/// table (h, q) -> group; zero groups are omitted.
pub fn khovanov_table(
    d: &PlanarDiagram,
    reduced: bool,
) -> Result<BTreeMap<(i64, i64), GroupDescriptor>> {
    let bn = bncomplex::build(d, Zz, reduced, true)?;
    Ok(bn.complex.integral_homology_table())
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All invariants for one knot: integral data plus s^{F_p} for the
/// requested primes and every prime dividing a torsion order.
pub fn full_report(d: &PlanarDiagram, primes: &[u64]) -> Result<SInvariantReport> {
    let data = s_integral(d)?;
    let torsion_orders: Vec<u64> = data
        .torsion_orders
        .iter()
        .map(|t| t.to_u64().expect("torsion order exceeds u64"))
        .collect();
    let mut wanted: BTreeSet<u64> = primes.iter().copied().collect();
    for &t in &torsion_orders {
        wanted.extend(prime_factors(t));
    }
    let mut s_mod_p = BTreeMap::new();
    let mut sigma_p = BTreeMap::new();
    for &p in &wanted {
        let sp = s_over_field(d, p)?;
        s_mod_p.insert(p, sp);
        let sigma = (data.s_rational - sp) / 2;
        assert!(
            data.graded_length as i64 >= sigma,
            "gl = {} < sigma_{p} = {sigma}",
            data.graded_length
        );
        sigma_p.insert(p, sigma);
    }
    let half = (data.s_rational / 2).unsigned_abs();
    let alt = (data.s_rational / 2 - data.graded_length as i64).unsigned_abs();
    Ok(SInvariantReport {
        s_rational: data.s_rational,
        s_mod_p,
        graded_length: data.graded_length,
        torsion_orders,
        sigma_p,
        genus_lower_bound: half.max(alt),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEFT_TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn unknot_report() {
        let d = PlanarDiagram::unknot();
        let r = full_report(&d, &[2]).unwrap();
        assert_eq!(r.s_rational, 0);
        assert_eq!(r.graded_length, 0);
        assert!(r.torsion_orders.is_empty());
        assert_eq!(r.s_mod_p[&2], 0);
        assert_eq!(r.genus_lower_bound, 0);
    }

    #[test]
    fn left_trefoil_s_is_minus_two() {
        let d = PlanarDiagram::parse(LEFT_TREFOIL).unwrap();
        assert_eq!(s_over_field(&d, 0).unwrap(), -2);
        assert_eq!(s_over_field(&d, 2).unwrap(), -2);
        let data = s_integral(&d).unwrap();
        assert_eq!(data.s_rational, -2);
        assert_eq!(data.graded_length, 0);
    }

    #[test]
    fn mirror_antisymmetry_trefoil() {
        let d = PlanarDiagram::parse(LEFT_TREFOIL).unwrap();
        let m = d.mirror();
        for c in [0, 2, 3] {
            assert_eq!(s_over_field(&m, c).unwrap(), -s_over_field(&d, c).unwrap());
        }
    }

    #[test]
    fn figure_eight_thin_and_slice() {
        let d = PlanarDiagram::parse("dt:4 6 8 2").unwrap();
        let r = full_report(&d, &[2, 3]).unwrap();
        assert_eq!(r.s_rational, 0);
        assert_eq!(r.graded_length, 0);
        assert_eq!(r.genus_lower_bound, 0);
        let (n, torsion) = thinness(&d, -2, 2).unwrap();
        assert_eq!(n, 1);
        assert!(!torsion);
    }

    #[test]
    fn links_are_rejected() {
        // Hopf link.
        let d = PlanarDiagram::parse("X(1,3,2,4) X(3,1,4,2)").unwrap();
        assert!(matches!(s_over_field(&d, 0), Err(Error::NotAKnot(2))));
    }

    #[test]
    fn trefoil_khovanov_table() {
        // Reduced Khovanov homology of the left trefoil: Z at
        // (0,-2), (-2,-6), (-3,-8); torsion-free.
        let d = PlanarDiagram::parse(LEFT_TREFOIL).unwrap();
        let t = khovanov_table(&d, true).unwrap();
        let nonzero: Vec<((i64, i64), String)> = t
            .iter()
            .filter(|(_, g)| !g.is_zero())
            .map(|(&k, g)| (k, g.to_string()))
            .collect();
        assert_eq!(
            nonzero,
            vec![
                ((-3, -8), "Z".to_string()),
                ((-2, -6), "Z".to_string()),
                ((0, -2), "Z".to_string()),
            ]
        );
    }

    #[test]
    fn basepoint_independence_trefoil() {
        let d = PlanarDiagram::parse(LEFT_TREFOIL).unwrap();
        let base = full_report(&d, &[2]).unwrap();
        for &e in d.edge_ids() {
            let moved = d.clone().with_basepoint(e).unwrap();
            assert_eq!(full_report(&moved, &[2]).unwrap(), base);
        }
    }
}
