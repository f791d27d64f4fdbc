//! Weight and distance machinery (Mannheim, rho-taxicab, EJ), balls and
//! shells, perfect t-code verification, exhaustive ideal-code search, and
//! the Gaussian / Eisenstein-Jacobi perfect-code theorem cross-checkers.

use crate::context::Ctx;
use crate::cycint::{torsion_units, CycInt};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, build_cyclotomic_graph, CayleyGraph, GraphKind};
use crate::ideal::IdealLattice;
use crate::quotient::{intermediate_ideals, QuotientRing, DEFAULT_ENUM_BOUND};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Distance from the zero residue to `r` in `G*_m(A)`; by the Mannheim
/// equivalence this is the Mannheim weight of `r`.
pub fn mannheim_weight_bfs(q: &QuotientRing, r_index: u64) -> Result<usize> {
    let table = mannheim_weights_all(q)?;
    Ok(table[r_index as usize])
}

/// Mannheim weight of every residue at once (one graph build, one BFS).
pub fn mannheim_weights_all(q: &QuotientRing) -> Result<Vec<usize>> {
    let g = build_cyclotomic_graph(q, GraphKind::SecondKind)?;
    Ok(bfs_distances(&g, 0))
}

/// EJ weight (distance in the full graph `EJ_alpha = G_3(alpha)`) of every
/// residue. m = 3 only.
pub fn ej_weights_all(q: &QuotientRing) -> Result<Vec<usize>> {
    if q.ctx().m() != 3 {
        return Err(Error::InvalidParameter("EJ weights require m = 3".into()));
    }
    let g = build_cyclotomic_graph(q, GraphKind::FullCyclotomic)?;
    Ok(bfs_distances(&g, 0))
}

pub fn ej_weight_bfs(q: &QuotientRing, r_index: u64) -> Result<usize> {
    let table = ej_weights_all(q)?;
    Ok(table[r_index as usize])
}

/// All integer vectors of dimension `dim` with L1 norm at most `radius`.
fn l1_ball_vectors(dim: usize, radius: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; dim];
    fn rec(out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, pos: usize, left: i64) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in -left..=left {
            cur[pos] = v;
            rec(out, cur, pos + 1, left - v.abs());
        }
        cur[pos] = 0;
    }
    rec(&mut out, &mut cur, 0, radius as i64);
    out
}

/// Independent brute-force Mannheim oracle for one residue: enumerate every
/// coefficient vector of Manhattan weight `<= radius_hint` and test whether
/// it represents the same coset. `None` when no representative was found
/// inside the hint (a hint below the true weight).
pub fn mannheim_weight_oracle(
    q: &QuotientRing,
    r_index: u64,
    radius_hint: usize,
) -> Option<usize> {
    let rep = q.residue_from_index(r_index).rep;
    let a = q.ideal();
    let mut best: Option<usize> = None;
    for v in l1_ball_vectors(q.ctx().phi(), radius_hint) {
        let w = v.iter().map(|c| c.unsigned_abs() as usize).sum::<usize>();
        if best.map(|b| w >= b).unwrap_or(false) {
            continue;
        }
        let coeffs: Vec<BigInt> = rep
            .coeffs()
            .iter()
            .zip(&v)
            .map(|(c, &d)| c - BigInt::from(d))
            .collect();
        if a.contains_coeffs(&coeffs) {
            best = Some(w);
        }
    }
    best
}

/// Batch Mannheim oracle: one sweep of the L1 ball of the given radius,
/// reduced residue by residue. Entry `i` is the least Manhattan weight of a
/// representative of residue `i` found within the radius.
pub fn mannheim_oracle_all(q: &QuotientRing, radius: usize) -> Vec<Option<usize>> {
    let n = q.order() as usize;
    let mut best: Vec<Option<usize>> = vec![None; n];
    for v in l1_ball_vectors(q.ctx().phi(), radius) {
        let w = v.iter().map(|c| c.unsigned_abs() as usize).sum::<usize>();
        let coeffs: Vec<BigInt> = v.iter().map(|&d| BigInt::from(d)).collect();
        let x = CycInt::from_coeffs(q.ctx(), coeffs).expect("length phi");
        let idx = q.residue_of(&x).index as usize;
        if best[idx].map(|b| w < b).unwrap_or(true) {
            best[idx] = Some(w);
        }
    }
    best
}

/// rho-taxicab norm of an Eisenstein-Jacobi integer: the least
/// `|x| + |y| + |z|` over representations `gamma = x + y rho + z rho^2`.
/// With `rho^2 = rho - 1` the representations form the one-parameter family
/// `x = c + z, y = d - z` for `gamma = c + d rho`, and the weight is a
/// convex piecewise-linear function of `z` minimised at a breakpoint.
pub fn rho_taxicab(gamma: &CycInt) -> Result<BigUint> {
    let (c, d) = gamma.to_rho_coords()?;
    let weight = |z: &BigInt| -> BigUint {
        ((&c + z).abs() + (&d - z).abs() + z.abs())
            .to_biguint()
            .expect("nonnegative")
    };
    let candidates = [BigInt::zero(), -&c, d.clone()];
    Ok(candidates.iter().map(weight).min().expect("nonempty"))
}

/// Full-scan reference for [`rho_taxicab`]: scans every `z` in
/// `[-(|c|+|d|), |c|+|d|]`.
pub fn rho_taxicab_full_scan(gamma: &CycInt) -> Result<BigUint> {
    let (c, d) = gamma.to_rho_coords()?;
    let span = (c.abs() + d.abs())
        .to_i64()
        .ok_or_else(|| Error::ResourceLimit("full scan span exceeds i64".into()))?;
    let weight = |z: &BigInt| -> BigUint {
        ((&c + z).abs() + (&d - z).abs() + z.abs())
            .to_biguint()
            .expect("nonnegative")
    };
    Ok((-span..=span)
        .map(|z| weight(&BigInt::from(z)))
        .min()
        .expect("nonempty range"))
}

/// Batch EJ-weight oracle (m = 3): minimise the rho-taxicab norm over every
/// representative `x + y rho + z rho^2` with `|x|+|y|+|z| <= radius`.
pub fn ej_oracle_all(q: &QuotientRing, radius: usize) -> Result<Vec<Option<usize>>> {
    if q.ctx().m() != 3 {
        return Err(Error::InvalidParameter("EJ oracle requires m = 3".into()));
    }
    let n = q.order() as usize;
    let mut best: Vec<Option<usize>> = vec![None; n];
    for v in l1_ball_vectors(3, radius) {
        let (x, y, z) = (v[0], v[1], v[2]);
        let w = (x.unsigned_abs() + y.unsigned_abs() + z.unsigned_abs()) as usize;
        // x + y rho + z rho^2 = (x - z) + (y + z) rho.
        let e = CycInt::from_rho_coords(q.ctx(), BigInt::from(x - z), BigInt::from(y + z))?;
        let idx = q.residue_of(&e).index as usize;
        if best[idx].map(|b| w < b).unwrap_or(true) {
            best[idx] = Some(w);
        }
    }
    Ok(best)
}

/// The ball `B_t(v)`: all vertices within distance `t` of `v`.
pub fn ball(g: &CayleyGraph, v: usize, t: usize) -> Vec<usize> {
    let dist = bfs_distances(g, v);
    (0..g.n_vertices).filter(|&u| dist[u] <= t).collect()
}

/// Shell sizes `|{v : d(0, v) = t}|` for `t = 0..=t_max`.
pub fn shell_series(g: &CayleyGraph, t_max: usize) -> Result<Vec<usize>> {
    let dist = bfs_distances(g, 0);
    let diameter = dist.iter().copied().max().unwrap_or(0);
    if t_max > diameter {
        return Err(Error::InvalidParameter(format!(
            "t_max {t_max} exceeds the diameter {diameter}"
        )));
    }
    let mut shells = vec![0usize; t_max + 1];
    for &d in &dist {
        if d <= t_max {
            shells[d] += 1;
        }
    }
    Ok(shells)
}

/// A code in a graph: a set of vertex indices together with the radius.
#[derive(Debug, Clone)]
pub struct CodeSet {
    pub members: Vec<usize>,
    pub t: usize,
}

impl CodeSet {
    pub fn new(mut members: Vec<usize>, t: usize) -> Self {
        members.sort_unstable();
        members.dedup();
        CodeSet { members, t }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CodeWitness {
    /// A vertex not covered by any ball.
    Uncovered { vertex: usize },
    /// A vertex covered by two distinct code members.
    Overlap {
        vertex: usize,
        first_center: usize,
        second_center: usize,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeVerdict {
    pub is_perfect: bool,
    pub ball_size_at_zero: usize,
    /// Distance from vertex 0 to the nearest other code member, when vertex
    /// 0 belongs to the code.
    pub min_nonzero_weight: Option<usize>,
    pub witness: Option<CodeWitness>,
}

/// Decides whether the balls of radius `t` around the code members
/// partition the vertex set, by counting how often each vertex is covered.
/// The witness records the first overlap or the first uncovered vertex.
pub fn is_perfect_t_code(g: &CayleyGraph, code: &CodeSet) -> Result<CodeVerdict> {
    if code.t == 0 {
        return Err(Error::InvalidParameter(
            "perfect codes are defined for t >= 1".into(),
        ));
    }
    if code.members.is_empty() {
        return Err(Error::InvalidParameter("code must be nonempty".into()));
    }
    if code.members.iter().any(|&v| v >= g.n_vertices) {
        return Err(Error::InvalidParameter("code member out of range".into()));
    }
    let n = g.n_vertices;
    let mut count = vec![0u32; n];
    let mut owner = vec![usize::MAX; n];
    let mut witness: Option<CodeWitness> = None;

    // Truncated BFS from each member; the stamp array gives O(ball) work
    // per member.
    let mut stamp = vec![usize::MAX; n];
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    for (ord, &c) in code.members.iter().enumerate() {
        frontier.clear();
        frontier.push(c);
        stamp[c] = ord;
        let mut depth = 0usize;
        loop {
            for &v in frontier.iter() {
                count[v] += 1;
                if count[v] == 2 && witness.is_none() {
                    witness = Some(CodeWitness::Overlap {
                        vertex: v,
                        first_center: owner[v],
                        second_center: c,
                    });
                }
                owner[v] = c;
            }
            if depth == code.t {
                break;
            }
            next.clear();
            for &v in frontier.iter() {
                for &w in &g.adjacency[v] {
                    if stamp[w] != ord {
                        stamp[w] = ord;
                        next.push(w);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            depth += 1;
            if frontier.is_empty() {
                break;
            }
        }
    }
    if witness.is_none() {
        if let Some(v) = (0..n).find(|&v| count[v] == 0) {
            witness = Some(CodeWitness::Uncovered { vertex: v });
        }
    }
    let is_perfect = count.iter().all(|&c| c == 1);

    let dist0 = bfs_distances(g, 0);
    let ball_size_at_zero = dist0.iter().filter(|&&d| d <= code.t).count();
    let min_nonzero_weight = if code.members.binary_search(&0).is_ok() {
        code.members
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| dist0[c])
            .min()
    } else {
        None
    };
    Ok(CodeVerdict {
        is_perfect,
        ball_size_at_zero,
        min_nonzero_weight,
        witness: if is_perfect { None } else { witness },
    })
}

/// Residue indices of `D/A` inside the quotient by `A`.
pub fn ideal_code_members(q: &QuotientRing, d: &IdealLattice) -> Result<Vec<usize>> {
    if !d.contains_ideal(q.ideal()) {
        return Err(Error::InvalidParameter(
            "code ideal must contain the graph ideal".into(),
        ));
    }
    Ok(q.residues()
        .filter(|r| d.contains(&r.rep))
        .map(|r| r.index as usize)
        .collect())
}

/// Report for the two ideal-code conditions: ball size `|B_t(0)| = N(D)`
/// and least nonzero Mannheim weight of `D/A` at least `2t + 1`; for the
/// second-kind graph the conditions are equivalent to perfection, for the
/// full graph they are only necessary.
#[derive(Debug, Clone, Serialize)]
pub struct IdealCodeReport {
    pub kind: GraphKind,
    pub t: usize,
    pub norm_d: u64,
    pub member_count: usize,
    pub ball_size_at_zero: usize,
    pub ball_matches_norm: bool,
    /// Least Mannheim weight over the nonzero members of `D/A`.
    pub min_nonzero_weight: Option<usize>,
    pub weight_condition: bool,
    pub conditions_hold: bool,
    pub is_perfect: bool,
    /// Second kind: `conditions <=> perfect`; full: `perfect => conditions`.
    pub direction_ok: bool,
}

pub fn verify_ideal_code_conditions(
    q: &QuotientRing,
    d: &IdealLattice,
    t: usize,
    kind: GraphKind,
) -> Result<IdealCodeReport> {
    let g = build_cyclotomic_graph(q, kind)?;
    let mannheim = mannheim_weights_all(q)?;
    ideal_code_report(q, &g, &mannheim, d, t)
}

/// Same as [`verify_ideal_code_conditions`] with the graph and the Mannheim
/// table precomputed, for search loops.
pub fn ideal_code_report(
    q: &QuotientRing,
    g: &CayleyGraph,
    mannheim: &[usize],
    d: &IdealLattice,
    t: usize,
) -> Result<IdealCodeReport> {
    if t == 0 {
        return Err(Error::InvalidParameter(
            "perfect codes are defined for t >= 1".into(),
        ));
    }
    let members = ideal_code_members(q, d)?;
    let norm_d = d.norm().to_u64().ok_or_else(|| {
        Error::ResourceLimit("ideal norm exceeds u64".into())
    })?;
    let dist0 = bfs_distances(g, 0);
    let ball_size_at_zero = dist0.iter().filter(|&&x| x <= t).count();
    let ball_matches_norm = ball_size_at_zero as u64 == norm_d;
    let min_nonzero_weight = members
        .iter()
        .filter(|&&v| v != 0)
        .map(|&v| mannheim[v])
        .min();
    let weight_condition = min_nonzero_weight.map(|w| w > 2 * t).unwrap_or(true);
    let conditions_hold = ball_matches_norm && weight_condition;
    let verdict = is_perfect_t_code(g, &CodeSet::new(members.clone(), t))?;
    let direction_ok = match g.kind {
        GraphKind::SecondKind => conditions_hold == verdict.is_perfect,
        _ => !verdict.is_perfect || conditions_hold,
    };
    Ok(IdealCodeReport {
        kind: g.kind,
        t,
        norm_d,
        member_count: members.len(),
        ball_size_at_zero,
        ball_matches_norm,
        min_nonzero_weight,
        weight_condition,
        conditions_hold,
        is_perfect: verdict.is_perfect,
        direction_ok,
    })
}

/// Tests every intermediate ideal `A <= D <= Z[zeta_m]` and returns those
/// whose cosets form a perfect t-code in the requested graph, sorted by
/// norm and HNF key.
pub fn search_perfect_ideal_codes(
    q: &QuotientRing,
    t: usize,
    kind: GraphKind,
    bound: u64,
) -> Result<Vec<(IdealLattice, IdealCodeReport)>> {
    let g = build_cyclotomic_graph(q, kind)?;
    let mannheim = mannheim_weights_all(q)?;
    let mut out = Vec::new();
    for d in intermediate_ideals(q, bound)?.ideals {
        let report = ideal_code_report(q, &g, &mannheim, &d, t)?;
        if report.is_perfect {
            out.push((d, report));
        }
    }
    Ok(out)
}

/// Normalises a nonzero Gaussian integer to the associate with both
/// coordinates nonnegative.
pub fn normalize_gaussian(alpha: &CycInt) -> Result<CycInt> {
    if alpha.ctx().m() != 4 {
        return Err(Error::InvalidParameter("expected m = 4".into()));
    }
    for u in torsion_units(alpha.ctx()) {
        let c = u.mul(alpha)?;
        if c.coeffs().iter().all(|x| !x.is_negative()) {
            return Ok(c);
        }
    }
    Err(Error::InvalidParameter(
        "no associate with nonnegative coordinates (zero input?)".into(),
    ))
}

/// Normalises a nonzero EJ integer to the associate with both rho
/// coordinates nonnegative.
pub fn normalize_ej(alpha: &CycInt) -> Result<CycInt> {
    if alpha.ctx().m() != 3 {
        return Err(Error::InvalidParameter("expected m = 3".into()));
    }
    for u in torsion_units(alpha.ctx()) {
        let c = u.mul(alpha)?;
        let (x, y) = c.to_rho_coords()?;
        if !x.is_negative() && !y.is_negative() {
            return Ok(c);
        }
    }
    Err(Error::InvalidParameter(
        "no associate with nonnegative rho coordinates (zero input?)".into(),
    ))
}

/// Which perfect-code class an ideal belongs to, for m = 3, 4 reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssociateClass {
    /// `t + (t+1) i` (Gaussian) or `(t+1) + t rho` (EJ).
    Primary,
    /// `t - (t+1) i` (Gaussian) or `t + (t+1) rho` (EJ).
    Secondary,
}

/// The two predicted generator classes for radius `t`, as ideals.
pub fn predicted_code_ideals(ctx: &Ctx, t: usize) -> Result<Vec<(AssociateClass, IdealLattice)>> {
    let t = BigInt::from(t);
    let t1: BigInt = &t + 1;
    let (beta1, beta2) = match ctx.m() {
        4 => (
            CycInt::from_coeffs(ctx, vec![t.clone(), t1.clone()])?,
            CycInt::from_coeffs(ctx, vec![t.clone(), -&t1])?,
        ),
        3 => (
            CycInt::from_rho_coords(ctx, t1.clone(), t.clone())?,
            CycInt::from_rho_coords(ctx, t.clone(), t1.clone())?,
        ),
        m => {
            return Err(Error::InvalidParameter(format!(
                "perfect-code classes are known for m = 3, 4 only, got {m}"
            )))
        }
    };
    Ok(vec![
        (AssociateClass::Primary, IdealLattice::principal(&beta1)?),
        (AssociateClass::Secondary, IdealLattice::principal(&beta2)?),
    ])
}

/// Two-sided reconciliation of the perfect-code classification for
/// `G_m(alpha)`, m = 3 or 4: the divisors that yield perfect t-codes by
/// exhaustive partition testing must be exactly the divisors in the two
/// predicted associate classes.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub m: u64,
    /// Coordinates of the normalised alpha: `(a, b)` with `alpha = a + b i`
    /// or `alpha = a + b rho`.
    pub alpha_coords: (BigInt, BigInt),
    pub norm_alpha: BigUint,
    pub t: usize,
    pub predicted: Vec<(AssociateClass, IdealLattice)>,
    pub observed: Vec<IdealLattice>,
    pub agreement: bool,
}

fn coords_of(alpha: &CycInt) -> Result<(BigInt, BigInt)> {
    match alpha.ctx().m() {
        4 => Ok((alpha.coeffs()[0].clone(), alpha.coeffs()[1].clone())),
        3 => alpha.to_rho_coords(),
        _ => Err(Error::InvalidParameter("expected m = 3 or 4".into())),
    }
}

fn theorem_check(alpha: &CycInt, t: usize, min_norm: u64) -> Result<TheoremReport> {
    let ctx = alpha.ctx();
    let norm_alpha = alpha.field_norm();
    if norm_alpha < BigUint::from(min_norm) {
        return Err(Error::InvalidParameter(format!(
            "N(alpha) = {norm_alpha} is below the theorem's bound {min_norm}"
        )));
    }
    let normalized = match ctx.m() {
        4 => normalize_gaussian(alpha)?,
        3 => normalize_ej(alpha)?,
        _ => unreachable!("guarded by predicted_code_ideals"),
    };
    let (a, b) = coords_of(&normalized)?;
    let ab = (&a + &b)
        .to_u64()
        .ok_or_else(|| Error::ResourceLimit("alpha too large".into()))?;
    let t_max = (ab.saturating_sub(1)) / 2;
    if t < 1 || t as u64 > t_max {
        return Err(Error::InvalidParameter(format!(
            "t = {t} is outside the theorem's range [1, {t_max}]"
        )));
    }
    let q = QuotientRing::new(IdealLattice::principal(alpha)?)?;
    let predicted: Vec<(AssociateClass, IdealLattice)> = predicted_code_ideals(ctx, t)?
        .into_iter()
        .filter(|(_, d)| d.contains_ideal(q.ideal()))
        .collect();
    let observed: Vec<IdealLattice> =
        search_perfect_ideal_codes(&q, t, GraphKind::FullCyclotomic, DEFAULT_ENUM_BOUND)?
            .into_iter()
            .map(|(d, _)| d)
            .collect();
    let mut predicted_keys: Vec<String> = predicted.iter().map(|(_, d)| d.dedup_key()).collect();
    predicted_keys.sort();
    predicted_keys.dedup();
    let mut observed_keys: Vec<String> = observed.iter().map(|d| d.dedup_key()).collect();
    observed_keys.sort();
    observed_keys.dedup();
    Ok(TheoremReport {
        m: ctx.m(),
        alpha_coords: (a, b),
        norm_alpha,
        t,
        predicted,
        observed,
        agreement: predicted_keys == observed_keys,
    })
}

/// Gaussian reconciliation: perfect ideal t-codes of `G_4(alpha)` are the
/// divisors associate to `t + (t+1) i` or `t - (t+1) i`.
pub fn gaussian_theorem_check(alpha: &CycInt, t: usize) -> Result<TheoremReport> {
    if alpha.ctx().m() != 4 {
        return Err(Error::InvalidParameter("expected m = 4".into()));
    }
    theorem_check(alpha, t, 5)
}

/// EJ reconciliation: perfect ideal t-codes of `G_3(alpha)` are the
/// divisors associate to `(t+1) + t rho` or `t + (t+1) rho`.
pub fn ej_theorem_check(alpha: &CycInt, t: usize) -> Result<TheoremReport> {
    if alpha.ctx().m() != 3 {
        return Err(Error::InvalidParameter("expected m = 3".into()));
    }
    theorem_check(alpha, t, 7)
}
