//! Elements of `Z[zeta_m]` as integer coefficient vectors in the power basis
//! `1, zeta, ..., zeta^{phi(m)-1}`, with exact ring arithmetic, the field
//! norm, Manhattan weight, torsion units, associates and exact division.

use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::intmat::{self, Mat};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// An element of `Z[zeta_m]`.
#[derive(Clone)]
pub struct CycInt {
    ctx: Ctx,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.m() == other.ctx.m() && self.coeffs == other.coeffs
    }
}
impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(m={}, {:?})", self.ctx.m(), self.coeffs)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl CycInt {
    pub fn from_coeffs(ctx: &Ctx, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != ctx.phi() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                ctx.phi(),
                coeffs.len()
            )));
        }
        Ok(CycInt {
            ctx: Arc::clone(ctx),
            coeffs,
        })
    }

    pub fn from_i64(ctx: &Ctx, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(ctx, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(ctx: &Ctx) -> Self {
        CycInt {
            ctx: Arc::clone(ctx),
            coeffs: vec![BigInt::zero(); ctx.phi()],
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        let mut coeffs = vec![BigInt::zero(); ctx.phi()];
        coeffs[0] = BigInt::one();
        CycInt {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    /// `zeta^i` for any integer `i` (taken mod m).
    pub fn zeta_power(ctx: &Ctx, i: i64) -> Self {
        CycInt {
            ctx: Arc::clone(ctx),
            coeffs: ctx.zeta_row(i).to_vec(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn guard(&self, other: &Self) -> Result<()> {
        if self.ctx.m() == other.ctx.m() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.guard(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.guard(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Ring product: polynomial multiplication reduced modulo `Phi_m`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.guard(other)?;
        let phi = self.ctx.phi();
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Ok(CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.ctx.reduce_poly(&prod),
        })
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Columns of the multiplication-by-self matrix: column `j` holds the
    /// power-basis coefficients of `self * zeta^j`.
    pub fn mult_matrix(&self) -> Mat {
        let phi = self.ctx.phi();
        let mut cols = Vec::with_capacity(phi);
        let mut cur = self.clone();
        cols.push(cur.coeffs.clone());
        let zeta = CycInt::zeta_power(&self.ctx, 1);
        for _ in 1..phi {
            cur = cur.mul(&zeta).expect("same context");
            cols.push(cur.coeffs.clone());
        }
        // Row-major matrix whose column j is cols[j].
        let mut m = intmat::zeros(phi, phi);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..phi {
                m[i][j] = col[i].clone();
            }
        }
        m
    }

    /// `|N(self)|`, the absolute field norm. Zero iff `self` is zero; for
    /// cyclotomic fields the field norm is already nonnegative.
    pub fn field_norm(&self) -> BigUint {
        intmat::det(&self.mult_matrix()).magnitude().clone()
    }

    /// Sum of the absolute values of the power-basis coefficients.
    pub fn manhattan_weight(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.magnitude())
            .fold(BigUint::zero(), |acc, c| acc + c)
    }

    /// Exact quotient `self / den` in `Z[zeta_m]`, or `None` when `den` does
    /// not divide `self`. Solves the phi x phi integer system given by the
    /// multiplication matrix of `den`.
    pub fn exact_divide(&self, den: &Self) -> Result<Option<Self>> {
        self.guard(den)?;
        if den.is_zero() {
            return Err(Error::InvalidParameter(
                "division by the zero element".into(),
            ));
        }
        let m = den.mult_matrix();
        Ok(intmat::solve_integer(&m, &self.coeffs).map(|q| CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs: q,
        }))
    }

    /// Eisenstein-Jacobi coordinates `(x, y)` with `self = x + y*rho`,
    /// `rho = -zeta_3`. Only defined for m = 3.
    pub fn to_rho_coords(&self) -> Result<(BigInt, BigInt)> {
        if self.ctx.m() != 3 {
            return Err(Error::InvalidParameter(
                "rho coordinates are specific to m = 3".into(),
            ));
        }
        Ok((self.coeffs[0].clone(), -&self.coeffs[1]))
    }

    /// Builds `x + y*rho` (m = 3 only); inverse of [`CycInt::to_rho_coords`].
    pub fn from_rho_coords(ctx: &Ctx, x: BigInt, y: BigInt) -> Result<Self> {
        if ctx.m() != 3 {
            return Err(Error::InvalidParameter(
                "rho coordinates are specific to m = 3".into(),
            ));
        }
        Self::from_coeffs(ctx, vec![x, -y])
    }
}

/// The torsion units `{+-zeta^i}`: `2m` elements for odd `m`, `m` for even
/// `m` (where `-1` is itself a power of `zeta`).
pub fn torsion_units(ctx: &Ctx) -> Vec<CycInt> {
    let mut seen = BTreeSet::new();
    let mut units = Vec::new();
    for i in 0..ctx.m() as i64 {
        for sign in [1i64, -1] {
            let u = CycInt::zeta_power(ctx, i);
            let u = if sign < 0 { u.neg() } else { u };
            let key: Vec<String> = u.coeffs().iter().map(|c| c.to_string()).collect();
            if seen.insert(key) {
                units.push(u);
            }
        }
    }
    units
}

/// Outcome of a torsion-associate test. For m outside {2, 3, 4, 6} the unit
/// group of `Z[zeta_m]` is strictly larger than the torsion subgroup, so a
/// negative answer only means "not associate by a root of unity"; the
/// `units_complete` flag records whether torsion is the whole unit group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssociateVerdict {
    pub associate: bool,
    pub units_complete: bool,
}

/// Tests whether `y = u * x` for some torsion unit `u`.
pub fn is_associate(x: &CycInt, y: &CycInt) -> Result<AssociateVerdict> {
    if x.ctx().m() != y.ctx().m() {
        return Err(Error::ContextMismatch);
    }
    let units_complete = matches!(x.ctx().m(), 2 | 3 | 4 | 6);
    let associate = torsion_units(x.ctx())
        .iter()
        .any(|u| &u.mul(x).expect("same context") == y);
    Ok(AssociateVerdict {
        associate,
        units_complete,
    })
}
