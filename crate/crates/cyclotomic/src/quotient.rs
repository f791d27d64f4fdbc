//! The finite quotient ring `Z[zeta_m]/A`: canonical residues, an invertible
//! index <-> residue map built from the Smith normal form of the ideal
//! lattice, residue arithmetic, and enumeration of intermediate ideals.

use crate::context::Ctx;
use crate::cycint::CycInt;
use crate::error::{Error, Result};
use crate::ideal::IdealLattice;
use crate::intmat::{self, Mat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Default guard for residue-indexed enumerations.
pub const DEFAULT_ENUM_BOUND: u64 = 1_000_000;

/// `Z[zeta_m]/A` with a bijective index map onto `{0, ..., N(A)-1}`.
///
/// The Smith normal form `U * H * V = diag(d)` of the ideal basis gives
/// coordinates `t_k = (U x)_k mod d_k` for a coefficient vector `x`; the
/// mixed-radix composition of the `t_k` is the residue index.
#[derive(Debug)]
pub struct QuotientRing {
    ideal: IdealLattice,
    order: u64,
    snf_diag: Vec<u64>,
    strides: Vec<u64>,
    to_snf: Mat,
    from_snf: Mat,
}

/// One element of a quotient ring: its index and the canonical
/// fundamental-domain representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub index: u64,
    pub rep: CycInt,
}

impl QuotientRing {
    pub fn new(ideal: IdealLattice) -> Result<Arc<Self>> {
        if ideal.is_unit_ideal() {
            return Err(Error::UnitIdeal);
        }
        let order = ideal.norm().to_u64().ok_or_else(|| {
            Error::ResourceLimit(format!("quotient order {} exceeds u64", ideal.norm()))
        })?;
        let (diag, u, u_inv) = intmat::snf_with_left_transform(ideal.hnf());
        let snf_diag: Vec<u64> = diag
            .iter()
            .map(|d| d.to_u64().expect("divisor of the order fits u64"))
            .collect();
        let mut strides = Vec::with_capacity(snf_diag.len());
        let mut acc = 1u64;
        for &d in &snf_diag {
            strides.push(acc);
            acc = acc.checked_mul(d).ok_or_else(|| {
                Error::ResourceLimit("SNF diagonal product exceeds u64".into())
            })?;
        }
        debug_assert_eq!(acc, order);
        Ok(Arc::new(QuotientRing {
            ideal,
            order,
            snf_diag,
            strides,
            to_snf: u,
            from_snf: u_inv,
        }))
    }

    pub fn ctx(&self) -> &Ctx {
        self.ideal.ctx()
    }

    pub fn ideal(&self) -> &IdealLattice {
        &self.ideal
    }

    /// `N(A)`, the number of residues.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The invariant factors `d_1 | d_2 | ... | d_phi` of the additive group.
    pub fn snf_diag(&self) -> &[u64] {
        &self.snf_diag
    }

    fn index_of_coeffs(&self, coeffs: &[BigInt]) -> u64 {
        let t = intmat::mat_vec(&self.to_snf, coeffs);
        let mut index = 0u64;
        for (k, v) in t.iter().enumerate() {
            let d = BigInt::from(self.snf_diag[k]);
            let tk = v.mod_floor(&d).to_u64().expect("reduced coordinate");
            index += tk * self.strides[k];
        }
        index
    }

    /// The residue of an arbitrary ring element.
    pub fn residue_of(&self, x: &CycInt) -> Residue {
        Residue {
            index: self.index_of_coeffs(x.coeffs()),
            rep: self.ideal.reduce(x),
        }
    }

    /// The residue with the given index (`0 <= index < N(A)`).
    pub fn residue_from_index(&self, index: u64) -> Residue {
        assert!(index < self.order, "residue index out of range");
        let mut t = Vec::with_capacity(self.snf_diag.len());
        for (k, &d) in self.snf_diag.iter().enumerate() {
            t.push(BigInt::from((index / self.strides[k]) % d));
        }
        let x = intmat::mat_vec(&self.from_snf, &t);
        let x = CycInt::from_coeffs(self.ctx(), x).expect("length phi");
        let rep = self.ideal.reduce(&x);
        debug_assert_eq!(self.index_of_coeffs(rep.coeffs()), index);
        Residue { index, rep }
    }

    pub fn zero(&self) -> Residue {
        Residue {
            index: 0,
            rep: CycInt::zero(self.ctx()),
        }
    }

    pub fn one(&self) -> Residue {
        self.residue_of(&CycInt::one(self.ctx()))
    }

    pub fn add(&self, a: &Residue, b: &Residue) -> Residue {
        self.residue_of(&a.rep.add(&b.rep).expect("same context"))
    }

    pub fn neg(&self, a: &Residue) -> Residue {
        self.residue_of(&a.rep.neg())
    }

    pub fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        self.residue_of(&a.rep.sub(&b.rep).expect("same context"))
    }

    /// Lift to canonical representatives, multiply in `Z[zeta_m]`, reduce.
    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        self.residue_of(&a.rep.mul(&b.rep).expect("same context"))
    }

    /// All residues in index order.
    pub fn residues(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.order).map(|i| self.residue_from_index(i))
    }
}

/// Result of the intermediate-ideal enumeration. The enumerator walks
/// `D = A + (r)` over all residues `r`, so it is complete exactly for the
/// ideals `D` whose image `D/A` is a principal ideal of the quotient ring
/// (all of them when `Z[zeta_m]` is a principal ideal domain).
#[derive(Debug, Clone)]
pub struct IntermediateIdeals {
    pub ideals: Vec<IdealLattice>,
    /// Restriction of the enumeration strategy, surfaced to callers.
    pub principal_quotients_only: bool,
}

/// All ideals `D` with `A <= D <= Z[zeta_m]` and `D/A` principal, sorted by
/// norm and then by HNF key. Always contains `A` itself and the unit ideal.
pub fn intermediate_ideals(q: &QuotientRing, bound: u64) -> Result<IntermediateIdeals> {
    if q.order() > bound {
        return Err(Error::ResourceLimit(format!(
            "N(A) = {} exceeds the enumeration bound {}",
            q.order(),
            bound
        )));
    }
    let ctx = q.ctx();
    let phi = ctx.phi();
    let base: Vec<CycInt> = (0..phi).map(|j| q.ideal().basis_element(j)).collect();
    let mut seen: BTreeMap<String, IdealLattice> = BTreeMap::new();
    for r in q.residues() {
        let mut gens = base.clone();
        gens.push(r.rep);
        let d = IdealLattice::from_generators(ctx, &gens)?;
        seen.entry(d.dedup_key()).or_insert(d);
    }
    let mut ideals: Vec<IdealLattice> = seen.into_values().collect();
    ideals.sort_by(|a, b| a.norm().cmp(b.norm()).then(a.dedup_key().cmp(&b.dedup_key())));
    Ok(IntermediateIdeals {
        ideals,
        principal_quotients_only: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::CyclotomicContext;
    use num_bigint::BigUint;
    use num_traits::Zero;

    fn ctx(m: u64) -> Ctx {
        CyclotomicContext::new(m).unwrap()
    }

    fn el(ctx: &Ctx, cs: &[i64]) -> CycInt {
        CycInt::from_i64(ctx, cs).unwrap()
    }

    fn quotient(m: u64, gen: &[i64]) -> Arc<QuotientRing> {
        let c = ctx(m);
        QuotientRing::new(IdealLattice::principal(&el(&c, gen)).unwrap()).unwrap()
    }

    #[test]
    fn order_and_unit_rejection() {
        let q = quotient(4, &[7, 4]);
        assert_eq!(q.order(), 65);
        let c3 = ctx(3);
        let unit = IdealLattice::principal(&CycInt::one(&c3)).unwrap();
        assert!(matches!(QuotientRing::new(unit), Err(Error::UnitIdeal)));
    }

    #[test]
    fn snf_product_is_norm() {
        let q = quotient(3, &[1, -9]);
        let prod: u64 = q.snf_diag().iter().product();
        assert_eq!(prod, 91);
    }

    #[test]
    fn index_map_is_bijective_on_canonical_reps() {
        for (m, gen) in [(4u64, vec![7i64, 4]), (3, vec![1, -9]), (5, vec![2, 1, 0, 0])] {
            let q = quotient(m, &gen);
            let mut reps = std::collections::BTreeSet::new();
            for r in q.residues() {
                // Canonical representative is reduce-fixed and re-indexes to
                // the same index.
                assert_eq!(q.ideal().reduce(&r.rep), r.rep);
                assert_eq!(q.residue_of(&r.rep).index, r.index);
                reps.insert(format!("{}", r.rep));
            }
            assert_eq!(reps.len() as u64, q.order());
        }
    }

    #[test]
    fn zero_is_index_zero() {
        let q = quotient(4, &[7, 4]);
        assert_eq!(q.residue_of(&CycInt::zero(q.ctx())).index, 0);
        assert_eq!(q.residue_from_index(0).rep, CycInt::zero(q.ctx()));
    }

    #[test]
    fn residue_ring_identity() {
        let q = quotient(4, &[2, 1]);
        let one = q.one();
        for r in q.residues() {
            assert_eq!(q.mul(&one, &r), r);
        }
    }

    #[test]
    fn coset_invariance() {
        let q = quotient(3, &[1, -9]);
        let x = el(q.ctx(), &[5, 3]);
        let member = q.ideal().basis_element(1).scalar_mul(&BigInt::from(7));
        let r1 = q.residue_of(&x);
        let r2 = q.residue_of(&x.add(&member).unwrap());
        assert_eq!(r1, r2);
    }

    #[test]
    fn example_code_members_are_distinct() {
        // The thirteen multiples j * (1 + 2 rho), j = 0..12, land in
        // pairwise distinct residues mod (1 + 9 rho).
        let q = quotient(3, &[1, -9]);
        let g = el(q.ctx(), &[1, -2]); // 1 + 2 rho
        let mut seen = std::collections::BTreeSet::new();
        for j in 0..13i64 {
            let x = g.scalar_mul(&BigInt::from(j));
            seen.insert(q.residue_of(&x).index);
        }
        assert_eq!(seen.len(), 13);
    }

    #[test]
    fn intermediate_ideals_of_91() {
        let q = quotient(3, &[1, -9]);
        let res = intermediate_ideals(&q, DEFAULT_ENUM_BOUND).unwrap();
        let norms: Vec<u64> = res
            .ideals
            .iter()
            .map(|d| d.norm().to_u64().unwrap())
            .collect();
        assert_eq!(norms, vec![1, 7, 13, 91]);
        for d in &res.ideals {
            assert!(d.contains_ideal(q.ideal()));
            assert!((q.ideal().norm() % d.norm()).is_zero());
        }
        assert!(res.principal_quotients_only);
    }

    #[test]
    fn intermediate_ideals_prime_norm() {
        let q = quotient(4, &[2, 1]);
        let res = intermediate_ideals(&q, DEFAULT_ENUM_BOUND).unwrap();
        let norms: Vec<u64> = res
            .ideals
            .iter()
            .map(|d| d.norm().to_u64().unwrap())
            .collect();
        assert_eq!(norms, vec![1, 5]);
    }

    #[test]
    fn intermediate_ideals_of_five() {
        let c4 = ctx(4);
        let q = QuotientRing::new(IdealLattice::principal(&el(&c4, &[5, 0])).unwrap()).unwrap();
        let res = intermediate_ideals(&q, DEFAULT_ENUM_BOUND).unwrap();
        let two_plus_i = IdealLattice::principal(&el(&c4, &[2, 1])).unwrap();
        let two_minus_i = IdealLattice::principal(&el(&c4, &[2, -1])).unwrap();
        assert!(res.ideals.contains(&two_plus_i));
        assert!(res.ideals.contains(&two_minus_i));
        assert_eq!(res.ideals.len(), 4);
        assert_eq!(
            res.ideals[1].norm(),
            &BigUint::from(5u32),
        );
    }

    #[test]
    fn enumeration_bound_enforced() {
        let q = quotient(3, &[1, -9]);
        assert!(matches!(
            intermediate_ideals(&q, 50),
            Err(Error::ResourceLimit(_))
        ));
    }
}
