//! Nonzero ideals of `Z[zeta_m]` as full-rank integer sublattices of the
//! coefficient space, kept in canonical column-style Hermite normal form.

use crate::context::Ctx;
use crate::cycint::CycInt;
use crate::error::{Error, Result};
use crate::intmat::{self, Mat};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::Arc;

/// A nonzero ideal `A` of `Z[zeta_m]`, stored as the HNF basis of its
/// coefficient lattice. Equality of ideals is equality of HNF matrices.
#[derive(Clone)]
pub struct IdealLattice {
    ctx: Ctx,
    /// `hnf[i][j]`: row i of basis column j. Upper-triangular, positive
    /// diagonal, entries right of the diagonal reduced into [0, diagonal).
    hnf: Mat,
    norm: BigUint,
}

impl PartialEq for IdealLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.m() == other.ctx.m() && self.hnf == other.hnf
    }
}
impl Eq for IdealLattice {}

impl std::fmt::Debug for IdealLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IdealLattice(m={}, norm={})", self.ctx.m(), self.norm)
    }
}

impl IdealLattice {
    /// The ideal generated by `gens`: the lattice spanned by `g * zeta^j`
    /// over all generators and `0 <= j < phi(m)`.
    pub fn from_generators(ctx: &Ctx, gens: &[CycInt]) -> Result<Self> {
        if gens.iter().all(CycInt::is_zero) {
            return Err(Error::ZeroIdeal);
        }
        let phi = ctx.phi();
        let zeta = CycInt::zeta_power(ctx, 1);
        let mut cols = Vec::with_capacity(gens.len() * phi);
        for g in gens {
            if g.ctx().m() != ctx.m() {
                return Err(Error::ContextMismatch);
            }
            let mut cur = g.clone();
            for _ in 0..phi {
                cols.push(cur.coeffs().to_vec());
                cur = cur.mul(&zeta)?;
            }
        }
        let hnf = intmat::hnf_columns(&cols, phi)
            .ok_or_else(|| Error::Internal("nonzero ideal lattice must be full rank".into()))?;
        Ok(Self::from_hnf(ctx, hnf))
    }

    /// Shorthand for the principal ideal `(alpha)`.
    pub fn principal(alpha: &CycInt) -> Result<Self> {
        Self::from_generators(alpha.ctx(), std::slice::from_ref(alpha))
    }

    /// Builds an ideal from raw lattice columns, verifying full rank and
    /// closure under multiplication by `zeta`.
    pub fn from_lattice_columns(ctx: &Ctx, cols: &[Vec<BigInt>]) -> Result<Self> {
        let phi = ctx.phi();
        let hnf = intmat::hnf_columns(cols, phi)
            .ok_or_else(|| Error::InvalidParameter("lattice is not full rank".into()))?;
        let ideal = Self::from_hnf(ctx, hnf);
        let zeta = CycInt::zeta_power(ctx, 1);
        for j in 0..phi {
            let shifted = ideal.basis_element(j).mul(&zeta)?;
            if !ideal.contains(&shifted) {
                return Err(Error::InvalidParameter(
                    "lattice is not closed under multiplication by zeta".into(),
                ));
            }
        }
        Ok(ideal)
    }

    fn from_hnf(ctx: &Ctx, hnf: Mat) -> Self {
        let norm = (0..hnf.len())
            .map(|i| hnf[i][i].magnitude().clone())
            .fold(BigUint::one(), |acc, d| acc * d);
        IdealLattice {
            ctx: Arc::clone(ctx),
            hnf,
            norm,
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn hnf(&self) -> &Mat {
        &self.hnf
    }

    /// `N(A) = |Z[zeta_m]/A|`, the product of the HNF diagonal.
    pub fn norm(&self) -> &BigUint {
        &self.norm
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm.is_one()
    }

    /// Basis column `j` as a ring element.
    pub fn basis_element(&self, j: usize) -> CycInt {
        let col = (0..self.ctx.phi()).map(|i| self.hnf[i][j].clone()).collect();
        CycInt::from_coeffs(&self.ctx, col).expect("basis column has length phi")
    }

    /// Membership by back-substitution against the triangular basis.
    pub fn contains(&self, x: &CycInt) -> bool {
        self.contains_coeffs(x.coeffs())
    }

    pub fn contains_coeffs(&self, coeffs: &[BigInt]) -> bool {
        let phi = self.ctx.phi();
        let mut v = coeffs.to_vec();
        for i in (0..phi).rev() {
            let (q, r) = v[i].div_rem(&self.hnf[i][i]);
            if !r.is_zero() {
                return false;
            }
            if q.is_zero() {
                continue;
            }
            for (row, entry) in v.iter_mut().enumerate().take(i + 1) {
                *entry -= &q * &self.hnf[row][i];
            }
        }
        true
    }

    /// Whether `other` is contained in `self` (every basis vector of `other`
    /// is a member).
    pub fn contains_ideal(&self, other: &IdealLattice) -> bool {
        (0..self.ctx.phi()).all(|j| self.contains(&other.basis_element(j)))
    }

    /// Canonical coset representative: the fundamental-parallelepiped point
    /// with coordinate `i` reduced into `[0, hnf[i][i])`, top-down.
    pub fn reduce(&self, x: &CycInt) -> CycInt {
        let phi = self.ctx.phi();
        let mut v = x.coeffs().to_vec();
        for i in (0..phi).rev() {
            let q = v[i].div_floor(&self.hnf[i][i]);
            if q.is_zero() {
                continue;
            }
            for (row, entry) in v.iter_mut().enumerate().take(i + 1) {
                *entry -= &q * &self.hnf[row][i];
            }
        }
        CycInt::from_coeffs(&self.ctx, v).expect("reduction preserves length")
    }

    /// Deterministic byte key for deduplication and ordering.
    pub fn dedup_key(&self) -> String {
        let mut parts = Vec::new();
        for row in &self.hnf {
            for e in row {
                parts.push(e.to_string());
            }
        }
        parts.join(",")
    }
}
