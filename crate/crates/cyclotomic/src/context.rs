//! The ambient ring `Z[zeta_m]`: cyclotomic polynomial, power basis, and the
//! table expressing every `zeta_m^i` (0 <= i < m) in the basis
//! `1, zeta, ..., zeta^{phi(m)-1}`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Shared, immutable description of `Z[zeta_m]`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicContext {
    m: u64,
    phi: usize,
    /// Coefficients of `Phi_m`, constant term first, length `phi + 1`, monic.
    cyclo_poly: Vec<BigInt>,
    /// Row `i` holds the power-basis coefficients of `zeta^i`, `0 <= i < m`.
    reduction_table: Vec<Vec<BigInt>>,
}

pub type Ctx = Arc<CyclotomicContext>;

impl CyclotomicContext {
    pub fn new(m: u64) -> Result<Ctx> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "m must be at least 2, got {m}"
            )));
        }
        let cyclo_poly = cyclotomic_polynomial(m);
        let phi = cyclo_poly.len() - 1;
        // zeta^{i+1} = reduce(x * zeta^i) mod Phi_m.
        let mut reduction_table = Vec::with_capacity(m as usize);
        let mut row = vec![BigInt::zero(); phi];
        row[0] = BigInt::one();
        for _ in 0..m {
            reduction_table.push(row.clone());
            row = shift_reduce(&row, &cyclo_poly);
        }
        debug_assert_eq!(row, reduction_table[0], "zeta^m must reduce to 1");
        Ok(Arc::new(CyclotomicContext {
            m,
            phi,
            cyclo_poly,
            reduction_table,
        }))
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `phi(m)`, the rank of `Z[zeta_m]` as a `Z`-module.
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn cyclo_poly(&self) -> &[BigInt] {
        &self.cyclo_poly
    }

    /// Power-basis coefficients of `zeta^i` (any integer `i`, reduced mod m).
    pub fn zeta_row(&self, i: i64) -> &[BigInt] {
        let r = i.rem_euclid(self.m as i64) as usize;
        &self.reduction_table[r]
    }

    /// Reduces an arbitrary-degree coefficient vector modulo `Phi_m`.
    pub fn reduce_poly(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut work = coeffs.to_vec();
        while work.len() > self.phi {
            let deg = work.len() - 1;
            let lead = work.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            // Subtract lead * x^(deg - phi) * Phi_m (monic, top term cancels).
            let off = deg - self.phi;
            for (k, c) in self.cyclo_poly[..self.phi].iter().enumerate() {
                let t = &lead * c;
                work[off + k] -= t;
            }
        }
        work.resize(self.phi, BigInt::zero());
        work
    }
}

/// `Phi_m` by recursive exact division: `x^m - 1` divided by every `Phi_d`
/// for proper divisors `d | m`. Integer arithmetic throughout.
fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of polynomials over `Z` with monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(One::is_one).unwrap_or(false), "monic divisor");
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, d) in den.iter().enumerate() {
            let t = &c * d;
            rem[k + j] -= t;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division must be exact");
    quot
}

fn shift_reduce(row: &[BigInt], cyclo: &[BigInt]) -> Vec<BigInt> {
    let phi = row.len();
    let mut shifted = vec![BigInt::zero(); phi + 1];
    for (i, c) in row.iter().enumerate() {
        shifted[i + 1] = c.clone();
    }
    let lead = shifted.pop().unwrap();
    if !lead.is_zero() {
        for (k, c) in cyclo[..phi].iter().enumerate() {
            let t = &lead * c;
            shifted[k] -= t;
        }
    }
    shifted
}
