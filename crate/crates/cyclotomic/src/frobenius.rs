//! Classification of 2p-valent first-kind Frobenius circulants, the
//! definitional brute-force oracle, and the bridge identifying each such
//! circulant with a cyclotomic graph.

use crate::context::Ctx;
use crate::cycint::CycInt;
use crate::error::{Error, Result};
use crate::graph::{
    build_circulant, build_cyclotomic_graph, cyclic_connection_set, verify_isomorphism,
    CayleyGraph, GraphKind, IsoWitness,
};
use crate::ideal::IdealLattice;
use crate::quotient::QuotientRing;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::sync::Arc;

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1u128;
    let nn = n as u128;
    let mut b = (base % n) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % nn;
        }
        b = b * b % nn;
        exp >>= 1;
    }
    acc as u64
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Multiplicative order of `a` mod `n` (requires `gcd(a, n) = 1`).
pub fn mult_order(a: u64, n: u64) -> u64 {
    let mut cur = a % n;
    let mut ord = 1u64;
    while cur != 1 {
        cur = (cur as u128 * a as u128 % n as u128) as u64;
        ord += 1;
    }
    ord
}

/// Whether `<[a]>` acts semiregularly on `Z_n \ {0}`: every `h != 1` in the
/// subgroup must have `h - 1` invertible mod n.
pub fn is_semiregular(n: u64, a: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidParameter("modulus must be at least 2".into()));
    }
    if gcd(a % n, n) != 1 {
        return Err(Error::InvalidParameter(format!(
            "gcd({a}, {n}) != 1: a must be a unit"
        )));
    }
    Ok(cyclic_connection_set(n, a % n)
        .into_iter()
        .filter(|&h| h != 1)
        .all(|h| gcd(h + n - 1, n) == 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CandidateChecks {
    /// `n = 1 mod 2p`.
    pub congruence: bool,
    /// `a^p + 1 = 0 mod n`.
    pub power: bool,
    /// `gcd(a^i +- 1, n) = 1` for `1 <= i <= p-1`.
    pub gcd_battery: bool,
}

/// A generator passing the 2p-valent first-kind Frobenius conditions.
#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusCandidate {
    pub n: u64,
    pub p: u64,
    pub a: u64,
    /// The connection set `<[a]>`, sorted.
    pub s: Vec<u64>,
    pub checks: CandidateChecks,
    /// Smallest generator producing the same connection set; candidates
    /// sharing it describe the same graph.
    pub canonical_a: u64,
}

fn candidate_checks(n: u64, p: u64, a: u64) -> CandidateChecks {
    let power = pow_mod(a, p, n) == n - 1;
    let mut gcd_battery = true;
    let mut ai = 1u64;
    for _ in 1..p {
        ai = (ai as u128 * a as u128 % n as u128) as u64;
        if gcd((ai + 1) % n, n) != 1 || gcd((ai + n - 1) % n, n) != 1 {
            gcd_battery = false;
            break;
        }
    }
    CandidateChecks {
        congruence: n % (2 * p) == 1,
        power,
        gcd_battery,
    }
}

/// All generators `a` in `[2, n-2]` of 2p-valent first-kind Frobenius
/// circulants on `Z_n`: `a^p + 1 = 0 mod n` and `gcd(a^i +- 1, n) = 1` for
/// `1 <= i <= p-1`. Empty when `n != 1 mod 2p`. Candidates with the same
/// connection set share a `canonical_a` tag.
pub fn classify_2p(n: u64, p: u64) -> Result<Vec<FrobeniusCandidate>> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not an odd prime")));
    }
    if n < 2 * p + 1 {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is below 2p + 1 = {}",
            2 * p + 1
        )));
    }
    let mut out: Vec<FrobeniusCandidate> = Vec::new();
    if n % (2 * p) != 1 {
        return Ok(out);
    }
    for a in 2..n.saturating_sub(1) {
        if gcd(a, n) != 1 {
            continue;
        }
        let checks = candidate_checks(n, p, a);
        if !(checks.power && checks.gcd_battery && checks.congruence) {
            continue;
        }
        let s = cyclic_connection_set(n, a);
        debug_assert_eq!(s.len(), 2 * p as usize);
        let canonical_a = out
            .iter()
            .find(|c| c.s == s)
            .map(|c| c.canonical_a)
            .unwrap_or(a);
        out.push(FrobeniusCandidate {
            n,
            p,
            a,
            s,
            checks,
            canonical_a,
        });
    }
    Ok(out)
}

/// Definitional oracle, independent of the classification: `Cay(Z_n, S)`
/// with `1 in S` is a first-kind Frobenius circulant with cyclic kernel iff
/// `S` is a subgroup of `Z_n^*` of even order that is semiregular on the
/// nonzero residues and generates `Z_n` additively.
pub fn brute_force_frobenius(n: u64, s: &[u64]) -> bool {
    if n < 3 {
        return false;
    }
    let mut set: Vec<u64> = s.iter().map(|&x| x % n).collect();
    set.sort_unstable();
    set.dedup();
    if set.len() != s.len() || set.is_empty() || set[0] == 0 {
        return false;
    }
    // Symmetric connection set containing the identity.
    if set.binary_search(&1).is_err() {
        return false;
    }
    if !set.iter().all(|&x| set.binary_search(&(n - x)).is_ok()) {
        return false;
    }
    // Subgroup of the unit group, of even order > 1.
    if set.iter().any(|&x| gcd(x, n) != 1) {
        return false;
    }
    for &x in &set {
        for &y in &set {
            let prod = (x as u128 * y as u128 % n as u128) as u64;
            if set.binary_search(&prod).is_err() {
                return false;
            }
        }
    }
    if !set.len().is_multiple_of(2) {
        return false;
    }
    // Semiregular on Z_n \ {0}.
    if !set
        .iter()
        .filter(|&&h| h != 1)
        .all(|&h| gcd((h + n - 1) % n, n) == 1)
    {
        return false;
    }
    // Generates Z_n additively (automatic for units, kept as a check).
    let g = set.iter().fold(n, |acc, &x| gcd(acc, x));
    g == 1
}

/// All subgroups of `Z_n^*` of the given order that are valid connection
/// sets (symmetric, i.e. containing `-1`), for classifier-vs-oracle sweeps.
/// Subgroups of order 2p of an abelian group are cyclic, so enumerating
/// cyclic subgroups is exhaustive.
pub fn symmetric_cyclic_subgroups(n: u64, order: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    for a in 1..n {
        if gcd(a, n) != 1 {
            continue;
        }
        if mult_order(a, n) != order {
            continue;
        }
        let s = cyclic_connection_set(n, a);
        if s.binary_search(&(n - 1)).is_err() {
            continue;
        }
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// The ideal `A_{m,n,a}`: coefficient vectors with `sum a_i a^i = 0 mod n`.
/// Every hypothesis of the circulant-to-cyclotomic construction is verified
/// numerically before the lattice is accepted.
pub fn build_a_mna(ctx: &Ctx, n: u64, a: u64) -> Result<IdealLattice> {
    let m = ctx.m();
    if m.is_multiple_of(2) {
        return Err(Error::HypothesisViolation(format!("m = {m} must be odd")));
    }
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::HypothesisViolation(format!(
            "n = {n} must be odd and at least 3"
        )));
    }
    let a = a % n;
    if a == 0 || gcd(a, n) != 1 {
        return Err(Error::HypothesisViolation(format!(
            "a = {a} must be a positive unit mod {n}"
        )));
    }
    if pow_mod(a, m, n) != 1 {
        return Err(Error::HypothesisViolation(format!(
            "a^m = {} mod {n}, expected 1",
            pow_mod(a, m, n)
        )));
    }
    let mut ai = 1u64;
    for i in 1..m {
        ai = (ai as u128 * a as u128 % n as u128) as u64;
        if ai == 1 || ai == n - 1 {
            return Err(Error::HypothesisViolation(format!(
                "a^{i} = +-1 mod {n}: the connection subgroup collapses"
            )));
        }
    }
    // The zeta-power reduction identities must hold for a mod n; this is
    // what makes the kernel lattice an ideal.
    let phi = ctx.phi();
    let nn = BigInt::from(n);
    for i in phi as i64..m as i64 {
        let lhs = BigInt::from(pow_mod(a, i as u64, n));
        let mut rhs = BigInt::from(0);
        for (j, c) in ctx.zeta_row(i).iter().enumerate() {
            rhs += c * BigInt::from(pow_mod(a, j as u64, n));
        }
        if !(lhs - rhs).mod_floor(&nn).is_zero() {
            return Err(Error::HypothesisViolation(format!(
                "reduction identity fails for zeta^{i} at a = {a} mod {n}"
            )));
        }
    }
    // Kernel of v -> sum v_j a^j mod n: spanned by n e_0 and e_j - a^j e_0.
    let mut cols = Vec::with_capacity(phi);
    let mut col0 = vec![BigInt::from(0); phi];
    col0[0] = BigInt::from(n);
    cols.push(col0);
    for j in 1..phi {
        let mut col = vec![BigInt::from(0); phi];
        col[0] = -BigInt::from(pow_mod(a, j as u64, n));
        col[j] = BigInt::from(1);
        cols.push(col);
    }
    let ideal = IdealLattice::from_lattice_columns(ctx, &cols)?;
    if ideal.norm().to_u64() != Some(n) {
        return Err(Error::Internal(format!(
            "A_(m,n,a) norm {} differs from n = {n}",
            ideal.norm()
        )));
    }
    Ok(ideal)
}

/// A verified identification of a circulant with a cyclotomic graph.
#[derive(Debug)]
pub struct BridgeResult {
    pub ideal: IdealLattice,
    pub quotient: Arc<QuotientRing>,
    pub cyclotomic: CayleyGraph,
    pub circulant: CayleyGraph,
    /// Vertex map: residue index in the cyclotomic graph to element of Z_n.
    pub vertex_map: Vec<usize>,
    pub iso: IsoWitness,
}

/// Builds `G_m(A_{m,n,a})` and `Cay(Z_n, <[-a]>)` and certifies the vertex
/// bijection induced by evaluating canonical representatives at `a` mod n.
pub fn circulant_to_cyclotomic(ctx: &Ctx, n: u64, a: u64) -> Result<BridgeResult> {
    let ideal = build_a_mna(ctx, n, a)?;
    let quotient = QuotientRing::new(ideal.clone())?;
    let cyclotomic = build_cyclotomic_graph(&quotient, GraphKind::FullCyclotomic)?;
    if cyclotomic.valency() != 2 * ctx.m() as usize {
        return Err(Error::Internal(format!(
            "expected valency {}, built {}",
            2 * ctx.m(),
            cyclotomic.valency()
        )));
    }
    let neg_a = (n - a % n) % n;
    let circulant = build_circulant(n, &cyclic_connection_set(n, neg_a))?;

    let eval = |x: &CycInt| -> usize {
        let nn = BigInt::from(n);
        let mut acc = BigInt::from(0);
        for (j, c) in x.coeffs().iter().enumerate() {
            acc += c * BigInt::from(pow_mod(a, j as u64, n));
        }
        acc.mod_floor(&nn).to_usize().expect("reduced mod n")
    };
    let vertex_map: Vec<usize> = (0..quotient.order())
        .map(|i| eval(&quotient.residue_from_index(i).rep))
        .collect();
    let iso = verify_isomorphism(&cyclotomic, &circulant, &vertex_map)?;
    if !iso.verified {
        return Err(Error::Internal(
            "vertex map failed the isomorphism certificate".into(),
        ));
    }
    Ok(BridgeResult {
        ideal,
        quotient,
        cyclotomic,
        circulant,
        vertex_map,
        iso,
    })
}

/// Bridge for a classified Frobenius candidate: the circulant
/// `Cay(Z_n, <[a]>)` is isomorphic to `G_p(A_{p,n,-a})`.
pub fn frobenius_to_cyclotomic(ctx: &Ctx, n: u64, a: u64) -> Result<BridgeResult> {
    let p = ctx.m();
    if !is_odd_prime(p) {
        return Err(Error::HypothesisViolation(format!(
            "context order {p} is not an odd prime"
        )));
    }
    let checks = candidate_checks(n, p, a % n);
    if !(checks.congruence && checks.power && checks.gcd_battery) {
        return Err(Error::HypothesisViolation(format!(
            "(p, n, a) = ({p}, {n}, {a}) fails the Frobenius conditions: {checks:?}"
        )));
    }
    // <[-(-a)]> = <[a]>, and the ideal is A_{p, n, -a}.
    circulant_to_cyclotomic(ctx, n, (n - a % n) % n)
}
