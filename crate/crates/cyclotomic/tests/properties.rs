//! Invariant coverage: ring laws, norm identities, weight axioms, residue
//! ring axioms, and the structural suite on the moduli not exercised by the
//! acceptance sweep.

use cyclotomic::codes::{
    ball, is_perfect_t_code, mannheim_weights_all, rho_taxicab, rho_taxicab_full_scan, CodeSet,
};
use cyclotomic::context::{Ctx, CyclotomicContext};
use cyclotomic::cycint::{is_associate, torsion_units, CycInt};
use cyclotomic::graph::{
    build_cyclotomic_graph, check_complete_rotation, verify_valency_theorem, GraphKind,
};
use cyclotomic::ideal::IdealLattice;
use cyclotomic::quotient::{intermediate_ideals, QuotientRing, DEFAULT_ENUM_BOUND};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use std::sync::Arc;

fn ctx(m: u64) -> Ctx {
    CyclotomicContext::new(m).unwrap()
}

fn elem(ctx: &Ctx, coeffs: &[i64]) -> CycInt {
    CycInt::from_i64(ctx, coeffs).unwrap()
}

prop_compose! {
    fn coeff_vec(len: usize, bound: i64)(v in prop::collection::vec(-bound..=bound, len)) -> Vec<i64> {
        v
    }
}

fn arb_m() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(7), Just(8), Just(9), Just(12)]
}

proptest! {
    #[test]
    fn ring_laws(m in arb_m(), seed in 0u64..1_000_000) {
        let c = ctx(m);
        let phi = c.phi();
        let mut vals = Vec::new();
        let mut state = seed;
        for _ in 0..3 {
            let coeffs: Vec<i64> = (0..phi)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % 11) as i64 - 5
                })
                .collect();
            vals.push(elem(&c, &coeffs));
        }
        let (x, y, z) = (&vals[0], &vals[1], &vals[2]);
        prop_assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
        prop_assert_eq!(x.mul(y).unwrap().mul(z).unwrap(), x.mul(&y.mul(z).unwrap()).unwrap());
        let lhs = x.mul(&y.add(z).unwrap()).unwrap();
        let rhs = x.mul(y).unwrap().add(&x.mul(z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // zeta^m = 1 after reduction.
        let mut pow = CycInt::one(&c);
        let zeta = CycInt::zeta_power(&c, 1);
        for _ in 0..m {
            pow = pow.mul(&zeta).unwrap();
        }
        prop_assert_eq!(pow, CycInt::one(&c));
    }

    #[test]
    fn norm_is_multiplicative(
        m in prop_oneof![Just(3u64), Just(4), Just(5), Just(8), Just(12), Just(16)],
        a in coeff_vec(8, 5),
        b in coeff_vec(8, 5),
    ) {
        let c = ctx(m);
        let x = elem(&c, &a[..c.phi()]);
        let y = elem(&c, &b[..c.phi()]);
        prop_assert_eq!(
            x.mul(&y).unwrap().field_norm(),
            x.field_norm() * y.field_norm()
        );
    }

    #[test]
    fn norm_closed_forms(a in -50i64..=50, b in -50i64..=50) {
        let c4 = ctx(4);
        let expected = (a * a + b * b) as u64;
        prop_assert_eq!(elem(&c4, &[a, b]).field_norm(), BigUint::from(expected));
        let c3 = ctx(3);
        let x = CycInt::from_rho_coords(&c3, BigInt::from(a), BigInt::from(b)).unwrap();
        let expected = a * a + a * b + b * b;
        prop_assert_eq!(x.field_norm(), BigUint::from(expected as u64));
    }

    #[test]
    fn manhattan_is_a_norm(m in arb_m(), a in coeff_vec(8, 20), b in coeff_vec(8, 20)) {
        let c = ctx(m);
        let x = elem(&c, &a[..c.phi()]);
        let y = elem(&c, &b[..c.phi()]);
        prop_assert_eq!(x.manhattan_weight(), x.neg().manhattan_weight());
        prop_assert!(
            x.add(&y).unwrap().manhattan_weight() <= x.manhattan_weight() + y.manhattan_weight()
        );
        prop_assert_eq!(x.manhattan_weight() == BigUint::zero(), x.is_zero());
    }

    #[test]
    fn exact_divide_inverts_multiplication(
        m in prop_oneof![Just(3u64), Just(4), Just(5), Just(8)],
        a in coeff_vec(4, 5),
        b in coeff_vec(4, 5),
    ) {
        let c = ctx(m);
        let x = elem(&c, &a[..c.phi()]);
        let y = elem(&c, &b[..c.phi()]);
        prop_assume!(!y.is_zero());
        let q = x.mul(&y).unwrap().exact_divide(&y).unwrap();
        prop_assert_eq!(q, Some(x));
    }

    #[test]
    fn associates_form_an_equivalence(
        m in prop_oneof![Just(3u64), Just(4)],
        a in coeff_vec(2, 6),
        u1 in 0usize..6,
        u2 in 0usize..6,
    ) {
        let c = ctx(m);
        let x = elem(&c, &a[..c.phi()]);
        prop_assume!(!x.is_zero());
        let units = torsion_units(&c);
        let y = units[u1 % units.len()].mul(&x).unwrap();
        let z = units[u2 % units.len()].mul(&y).unwrap();
        // Reflexive, symmetric, transitive on the orbit.
        prop_assert!(is_associate(&x, &x).unwrap().associate);
        prop_assert!(is_associate(&x, &y).unwrap().associate);
        prop_assert!(is_associate(&y, &x).unwrap().associate);
        prop_assert!(is_associate(&x, &z).unwrap().associate);
    }

    #[test]
    fn principal_ideal_norm_is_field_norm(
        m in prop_oneof![Just(3u64), Just(4), Just(5), Just(8), Just(12)],
        a in coeff_vec(4, 4),
    ) {
        let c = ctx(m);
        let x = elem(&c, &a[..c.phi()]);
        prop_assume!(!x.is_zero());
        let ideal = IdealLattice::principal(&x).unwrap();
        prop_assert_eq!(ideal.norm(), &x.field_norm());
    }

    #[test]
    fn taxicab_breakpoints_equal_full_scan(x in -40i64..=40, y in -40i64..=40) {
        let c3 = ctx(3);
        let g = CycInt::from_rho_coords(&c3, BigInt::from(x), BigInt::from(y)).unwrap();
        prop_assert_eq!(rho_taxicab(&g).unwrap(), rho_taxicab_full_scan(&g).unwrap());
    }
}

fn quotient(m: u64, gen: &[i64]) -> Arc<QuotientRing> {
    let c = ctx(m);
    QuotientRing::new(IdealLattice::principal(&elem(&c, gen)).unwrap()).unwrap()
}

/// Residue arithmetic is a commutative ring: checked on every pair and
/// triple through precomputed operation tables.
#[test]
fn residue_ring_axioms_exhaustive() {
    let q = quotient(3, &[1, -9]);
    let n = q.order() as usize;
    let residues: Vec<_> = q.residues().collect();
    let mut add = vec![vec![0usize; n]; n];
    let mut mul = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            add[i][j] = q.add(&residues[i], &residues[j]).index as usize;
            mul[i][j] = q.mul(&residues[i], &residues[j]).index as usize;
        }
    }
    let one = q.one().index as usize;
    for i in 0..n {
        assert_eq!(add[i][0], i);
        assert_eq!(mul[i][one], i);
        for j in 0..n {
            assert_eq!(add[i][j], add[j][i]);
            assert_eq!(mul[i][j], mul[j][i]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                assert_eq!(add[add[i][j]][k], add[i][add[j][k]]);
                assert_eq!(mul[mul[i][j]][k], mul[i][mul[j][k]]);
                assert_eq!(mul[i][add[j][k]], add[mul[i][j]][mul[i][k]]);
            }
        }
    }
}

/// Enumerating residues yields exactly N(A) distinct reduce-fixed
/// representatives, across several moduli.
#[test]
fn residue_enumeration_is_canonical() {
    for (m, gen) in [
        (3u64, vec![3i64, 4]),
        (4, vec![4, 7]),
        (5, vec![2, 1, 0, 0]),
        (8, vec![2, 1, 1, 0]),
        (12, vec![2, 0, 1, 0]),
    ] {
        let q = quotient(m, &gen);
        let mut seen = std::collections::BTreeSet::new();
        for r in q.residues() {
            assert_eq!(q.ideal().reduce(&r.rep), r.rep);
            seen.insert(r.rep.to_string());
        }
        assert_eq!(seen.len() as u64, q.order());
    }
}

/// Every intermediate ideal contains A, has norm dividing N(A), and the
/// collection is deduplicated.
#[test]
fn intermediate_ideals_are_intermediate() {
    for (m, gen) in [(3u64, vec![1i64, -9]), (4, vec![5, 0]), (5, vec![2, 1, 0, 0])] {
        let q = quotient(m, &gen);
        let res = intermediate_ideals(&q, DEFAULT_ENUM_BOUND).unwrap();
        let mut keys = std::collections::BTreeSet::new();
        for d in &res.ideals {
            assert!(d.contains_ideal(q.ideal()));
            assert!((q.ideal().norm() % d.norm()).is_zero());
            assert!(keys.insert(d.dedup_key()));
        }
        // A itself and the unit ideal are always present.
        assert!(res.ideals.iter().any(|d| d == q.ideal()));
        assert!(res.ideals.iter().any(|d| d.is_unit_ideal()));
    }
}

/// Mannheim weight axioms over all residue pairs on a 91-vertex and a
/// 275-vertex quotient: zero iff zero, negation symmetry, triangle
/// inequality.
#[test]
fn mannheim_weight_axioms_all_pairs() {
    for (m, gen) in [(3u64, vec![1i64, -9]), (4, vec![14, 7])] {
        let q = quotient(m, &gen);
        let w = mannheim_weights_all(&q).unwrap();
        let n = q.order();
        assert!(n <= 300);
        let residues: Vec<_> = q.residues().collect();
        for i in 0..n as usize {
            assert_eq!(w[i] == 0, i == 0);
            let neg = q.neg(&residues[i]).index as usize;
            assert_eq!(w[i], w[neg]);
            for j in 0..n as usize {
                let sum = q.add(&residues[i], &residues[j]).index as usize;
                assert!(w[sum] <= w[i] + w[j], "triangle fails at ({i}, {j})");
            }
        }
    }
}

/// Perfect verdicts imply the two-sided partition identity, re-derived from
/// individual balls.
#[test]
fn perfect_code_partition_duality() {
    let q = quotient(4, &[7, 4]);
    let g = build_cyclotomic_graph(&q, GraphKind::FullCyclotomic).unwrap();
    let d = IdealLattice::principal(&elem(q.ctx(), &[1, 2])).unwrap();
    let members: Vec<usize> = q
        .residues()
        .filter(|r| d.contains(&r.rep))
        .map(|r| r.index as usize)
        .collect();
    let verdict = is_perfect_t_code(&g, &CodeSet::new(members.clone(), 1)).unwrap();
    assert!(verdict.is_perfect);
    let mut covered = vec![0u32; g.n_vertices];
    let mut total = 0usize;
    for &c in &members {
        let b = ball(&g, c, 1);
        total += b.len();
        for v in b {
            covered[v] += 1;
        }
    }
    assert_eq!(total, g.n_vertices);
    assert!(covered.iter().all(|&c| c == 1));
}

/// Valency clause predictions and rotation witnesses on the moduli the
/// acceptance sweep leaves out (m = 7, 12), small deterministic ideals.
#[test]
fn valency_and_rotation_on_extra_moduli() {
    let gens: [(u64, Vec<Vec<i64>>); 2] = [
        (
            7,
            vec![
                vec![2, 1, 0, 0, 0, 0],
                vec![1, 1, 0, 0, 0, 0],
                vec![2, 0, 0, 1, 0, 0],
                vec![3, 1, 0, 0, 0, 0],
            ],
        ),
        (
            12,
            vec![
                vec![2, 0, 1, 0],
                vec![1, 1, 1, 0],
                vec![3, 1, 0, 0],
                vec![2, 1, 1, 1],
            ],
        ),
    ];
    let mut checked = 0;
    for (m, list) in gens {
        let c = ctx(m);
        for coeffs in list {
            let alpha = elem(&c, &coeffs);
            if alpha.field_norm() < BigUint::from(2u32)
                || alpha.field_norm() > BigUint::from(2000u32)
            {
                continue;
            }
            let q = QuotientRing::new(IdealLattice::principal(&alpha).unwrap()).unwrap();
            let report = verify_valency_theorem(&q).unwrap();
            assert!(
                report.matches,
                "valency mismatch at m={m}, gen={coeffs:?}: {report:?}"
            );
            let g = build_cyclotomic_graph(&q, GraphKind::FullCyclotomic).unwrap();
            let rot = check_complete_rotation(&q, &g).unwrap();
            assert!(rot.holds);
            assert_eq!(rot.cycle_len, g.valency());
            // Valency divides 2m.
            assert_eq!((2 * m as usize) % g.valency(), 0);
            checked += 1;
        }
    }
    assert!(checked >= 6, "only {checked} ideals were in range");
}

/// The second-kind graph is a spanning subgraph of the full graph and the
/// Mannheim weight of every connection-set residue is 1.
#[test]
fn second_kind_is_spanning_subgraph() {
    for (m, gen) in [(3u64, vec![1i64, -9]), (5, vec![2, 1, 0, 0]), (8, vec![2, 1, 1, 0])] {
        let q = quotient(m, &gen);
        let full = build_cyclotomic_graph(&q, GraphKind::FullCyclotomic).unwrap();
        let second = build_cyclotomic_graph(&q, GraphKind::SecondKind).unwrap();
        assert_eq!(full.n_vertices, second.n_vertices);
        for &s in &second.connection_set {
            assert!(full.connection_set.binary_search(&s).is_ok());
        }
        let w = mannheim_weights_all(&q).unwrap();
        for &s in &second.connection_set {
            assert_eq!(w[s], 1);
        }
    }
}

/// Valency of the full cyclotomic graph divides 2m across a deterministic
/// spread of ideals (the divisor claim of the basic theorem).
#[test]
fn valency_divides_2m() {
    for (m, gens) in [
        (3u64, vec![vec![1i64, -9], vec![2, 0], vec![3, 0], vec![5, 1]]),
        (4, vec![vec![7, 4], vec![1, 1], vec![2, 0], vec![3, 0]]),
        (5, vec![vec![2, 1, 0, 0], vec![1, -1, 0, 0], vec![2, 0, 0, 0]]),
        (8, vec![vec![2, 1, 1, 0], vec![1, 1, 0, 0], vec![3, 0, 0, 0]]),
    ] {
        let c = ctx(m);
        for gen in gens {
            let alpha = elem(&c, &gen);
            let ideal = IdealLattice::principal(&alpha).unwrap();
            if ideal.is_unit_ideal() {
                continue;
            }
            let q = QuotientRing::new(ideal).unwrap();
            let g = build_cyclotomic_graph(&q, GraphKind::FullCyclotomic).unwrap();
            assert_eq!(
                (2 * m as usize) % g.valency(),
                0,
                "valency {} does not divide 2m = {} (m = {m}, gen = {gen:?})",
                g.valency(),
                2 * m
            );
        }
    }
}

/// SNF diagonal product equals |det(HNF)| for a spread of ideals.
#[test]
fn snf_hnf_agreement() {
    for (m, gen) in [
        (3u64, vec![4i64, -2]),
        (4, vec![6, 3]),
        (5, vec![2, 1, 1, 0]),
        (12, vec![2, 1, 0, 1]),
    ] {
        let q = quotient(m, &gen);
        let prod: u64 = q.snf_diag().iter().product();
        assert_eq!(Some(prod), q.ideal().norm().to_u64());
        // Divisibility chain d_1 | d_2 | ...
        for w in q.snf_diag().windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }
}
