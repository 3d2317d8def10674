//! Truncated-Jacobian rank machinery and exact torus solving.
//!
//! The Milnor number oracle computes the colength of the truncated Jacobian
//! subspace J_delta(f) inside P(n, delta) by exact sparse elimination,
//! raising delta until two consecutive colengths agree. Agreement certifies
//! stabilization: the increments are the Hilbert function of the graded
//! Milnor algebra, and once one increment vanishes Nakayama forces all later
//! ones to vanish as well.
//!
//! The torus solver locates common zeros of bivariate systems away from the
//! coordinate axes by square-free resultant factors plus per-root fiber gcds
//! in Q[u]/(q), with dynamic splitting of the modulus.

pub mod quotient;

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseRow};
use crate::poly::{gcd_bivariate, rat, resultant, Exponents, Polynomial, Rational, UniPoly};
use quotient::{invert, run_branches, vgcd, vgcd_list, BranchResult, Residue, Split, VPoly};

/// Caps for the stabilization loops.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Truncation degree at which the oracle gives up.
    pub delta_cap: u32,
    /// Optional override for the starting truncation degree.
    pub delta_start: Option<u32>,
    /// When a closed-form Milnor number is already known, oracle runs whose
    /// expected value exceeds this budget are skipped rather than driven
    /// into hopeless truncation degrees.
    pub mu_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            delta_cap: 16,
            delta_start: None,
            mu_budget: 200,
        }
    }
}

/// Result of a colength stabilization run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColengthResult {
    /// The stabilized colength, i.e. the Milnor number; `None` when the
    /// values kept growing up to the cap (non-isolated singularity, or a cap
    /// that is too small for the germ at hand).
    pub colength: Option<u64>,
    pub delta_used: u32,
    pub stabilized: bool,
}

/// The matrix B_delta(f): columns are the truncations of M_i * df/dx_j in
/// the monomial basis of P(n, delta).
pub struct TruncatedJacobian {
    pub n: usize,
    pub delta: u32,
    /// dim P(n, delta)
    pub dim: usize,
    columns: Vec<SparseRow>,
}

impl TruncatedJacobian {
    pub fn new(f: &Polynomial, delta: u32) -> Self {
        let n = f.arity();
        let monomials = monomial_basis(n, delta);
        let index: HashMap<Exponents, usize> =
            monomials.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut columns = Vec::new();
        for j in 0..n {
            let fj = f.partial_derivative(j);
            if fj.is_zero() {
                continue;
            }
            let min_deg = fj.min_total_degree().unwrap();
            for m in &monomials {
                if m.total_degree() + min_deg > delta {
                    continue;
                }
                let mut row: SparseRow = Vec::new();
                for (e, c) in fj.terms() {
                    let prod = m.add(e);
                    if prod.total_degree() <= delta {
                        row.push((index[&prod], c.clone()));
                    }
                }
                if row.is_empty() {
                    continue;
                }
                row.sort_by(|a, b| b.0.cmp(&a.0));
                columns.push(row);
            }
        }
        TruncatedJacobian {
            n,
            delta,
            dim: monomials.len(),
            columns,
        }
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        let mut ech = SparseEchelon::new();
        for col in &self.columns {
            ech.insert(col.clone());
        }
        ech.rank()
    }
}

/// All exponent vectors of total degree <= delta in n variables, in the
/// canonical graded order.
fn monomial_basis(n: usize, delta: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    match n {
        1 => {
            for a in 0..=delta {
                out.push(Exponents::new(&[a]));
            }
        }
        2 => {
            for a in 0..=delta {
                for b in 0..=delta - a {
                    out.push(Exponents::new(&[a, b]));
                }
            }
        }
        3 => {
            for a in 0..=delta {
                for b in 0..=delta - a {
                    for c in 0..=delta - a - b {
                        out.push(Exponents::new(&[a, b, c]));
                    }
                }
            }
        }
        _ => panic!("arity must be 1..=3"),
    }
    out.sort();
    out
}

/// dim P(n, delta) / J_delta(f), by exact rank.
pub fn truncated_colength(f: &Polynomial, delta: u32) -> u64 {
    let tj = TruncatedJacobian::new(f, delta);
    (tj.dim - tj.rank()) as u64
}

/// Milnor number oracle: stabilized truncated colength.
pub fn milnor_rank_oracle(f: &Polynomial, config: &OracleConfig) -> Result<ColengthResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.has_critical_origin() {
        return Err(Error::NotSingular);
    }
    let mult = f.min_total_degree().unwrap();
    let start = config.delta_start.unwrap_or((2 * mult).max(2));
    let mut prev: Option<u64> = None;
    let mut delta = start.min(config.delta_cap);
    loop {
        let c = truncated_colength(f, delta);
        if let Some(p) = prev {
            debug_assert!(c >= p, "colength must be nondecreasing in delta");
            if c == p {
                return Ok(ColengthResult {
                    colength: Some(c),
                    delta_used: delta,
                    stabilized: true,
                });
            }
        }
        if delta >= config.delta_cap {
            return Ok(ColengthResult {
                colength: None,
                delta_used: delta,
                stabilized: false,
            });
        }
        prev = Some(c);
        delta += 1;
    }
}

/// Milnor number of a 2-variable germ at a rational singular point, via the
/// rank oracle on the shifted germ.
pub fn local_milnor_at_rational_point(
    f: &Polynomial,
    point: (&Rational, &Rational),
    config: &OracleConfig,
) -> Result<u64> {
    if f.arity() != 2 {
        return Err(Error::Arity {
            expected: 2,
            got: f.arity(),
        });
    }
    let (a, b) = point;
    let vals = [a.clone(), b.clone()];
    if !f.eval(&vals).is_zero()
        || !f.partial_derivative(0).eval(&vals).is_zero()
        || !f.partial_derivative(1).eval(&vals).is_zero()
    {
        return Err(Error::NotSingular);
    }
    let shifted = shift_origin(f, a, b);
    let res = milnor_rank_oracle(&shifted, config)?;
    res.colength.ok_or_else(|| {
        Error::CapExceeded(format!(
            "local colength did not stabilize below delta = {}",
            res.delta_used
        ))
    })
}

/// f(u + a, v + b).
pub fn shift_origin(f: &Polynomial, a: &Rational, b: &Rational) -> Polynomial {
    let ua = &Polynomial::var(2, 0) + &Polynomial::constant(2, a.clone());
    let vb = &Polynomial::var(2, 1) + &Polynomial::constant(2, b.clone());
    f.substitute_poly(0, &ua).substitute_poly(1, &vb)
}

/// One cluster of torus solutions, grouped by a square-free factor of the
/// eliminating resultant.
#[derive(Debug, Clone)]
pub struct ClusterReport {
    pub factor_degree: usize,
    pub points: usize,
    pub resultant_multiplicity: usize,
}

/// Summary of the torus zero set of a polynomial system.
#[derive(Debug, Clone, Default)]
pub struct ZeroSetSummary {
    pub count: usize,
    pub clusters: Vec<ClusterReport>,
}

impl ZeroSetSummary {
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

/// Exact count of common zeros with both coordinates nonzero, for a system
/// of 2-variable polynomials generating a zero-dimensional ideal after
/// torus saturation.
pub fn torus_system_solve(system: &[Polynomial]) -> Result<ZeroSetSummary> {
    let mut sat: Vec<Polynomial> = Vec::new();
    let mut saw_poly = false;
    for s in system {
        if s.arity() != 2 {
            return Err(Error::Arity {
                expected: 2,
                got: s.arity(),
            });
        }
        if s.is_zero() {
            continue;
        }
        saw_poly = true;
        let (_, stripped) = s.strip_monomial_content();
        if stripped.total_degree() == Some(0) {
            // A unit times a monomial never vanishes on the torus.
            return Ok(ZeroSetSummary::default());
        }
        sat.push(stripped);
    }
    if sat.is_empty() {
        if saw_poly {
            unreachable!("nonzero polynomials never saturate to zero");
        }
        return Err(Error::PositiveDimensional);
    }
    if sat.len() == 1 {
        return Err(Error::PositiveDimensional);
    }
    let mut common = sat[0].clone();
    for s in &sat[1..] {
        common = gcd_bivariate(&common, s);
        common = common.strip_monomial_content().1;
        if common.total_degree() == Some(0) {
            break;
        }
    }
    if common.total_degree() != Some(0) {
        return Err(Error::PositiveDimensional);
    }

    let (a, b) = elimination_pair(&sat)?;
    let r = resultant(&a, &b, 1)?;
    if r.is_zero() {
        return Err(Error::InvalidInput(
            "elimination pair produced a zero resultant".into(),
        ));
    }
    let r = r.to_unipoly();
    let r = strip_u_power(&r);

    let mut summary = ZeroSetSummary::default();
    if r.degree() == Some(0) {
        return Ok(summary);
    }
    // A further system element prunes the candidate factors before any
    // quotient arithmetic happens.
    let filter = sat
        .iter()
        .find(|s| **s != a && **s != b)
        .and_then(|c| resultant(&a, c, 1).ok())
        .filter(|s| !s.is_zero())
        .map(|s| s.to_unipoly().squarefree_part());
    for (q, mult) in r.squarefree_decomposition() {
        let q = match &filter {
            Some(s) => {
                let shared = q.gcd(s);
                if shared.degree().unwrap_or(0) == 0 {
                    continue;
                }
                shared
            }
            None => q,
        };
        let sysv = sat.clone();
        let branches = run_branches(q.clone(), move |qb| fiber_root_count(&sysv, qb));
        let mut points = 0;
        for (qb, roots) in branches {
            points += qb.degree().unwrap() * roots;
        }
        if points > 0 {
            summary.count += points;
            summary.clusters.push(ClusterReport {
                factor_degree: q.degree().unwrap(),
                points,
                resultant_multiplicity: mult,
            });
        }
    }
    Ok(summary)
}

/// Number of distinct common v-roots with v != 0 above each root of the
/// branch modulus.
fn fiber_root_count(system: &[Polynomial], qb: &UniPoly) -> BranchResult<usize> {
    let vpolys: Vec<VPoly> = system.iter().map(|s| to_vpoly(s, qb)).collect();
    let w = vgcd_list(&vpolys, qb)?;
    if w.is_zero() {
        // Every system element vanishes identically over this branch; ruled
        // out by the full-gcd zero-dimensionality test.
        return Err(Split(qb.clone()));
    }
    match w.degree() {
        Some(0) => Ok(0),
        _ => {
            let wsf = squarefree_part_v(&w, qb)?;
            let stripped = strip_v_root(&wsf, qb)?;
            Ok(stripped.degree().unwrap_or(0))
        }
    }
}

fn to_vpoly(p: &Polynomial, qb: &UniPoly) -> VPoly {
    VPoly::from_coeffs(p.coefficients_in(1), qb)
}

/// Square-free part of a VPoly on a branch, monic.
fn squarefree_part_v(w: &VPoly, qb: &UniPoly) -> BranchResult<VPoly> {
    let wm = w.clone().normalize(qb)?.monic(qb)?;
    let d = wm.derivative(qb);
    if d.is_zero() {
        return Ok(wm);
    }
    let g = vgcd(&wm, &d, qb)?;
    if g.degree() == Some(0) {
        Ok(wm)
    } else {
        Ok(wm.div_exact_monic(&g, qb))
    }
}

/// Removes the v = 0 root when present (input square-free).
fn strip_v_root(w: &VPoly, qb: &UniPoly) -> BranchResult<VPoly> {
    if w.is_zero() {
        return Ok(w.clone());
    }
    match invert(&w.constant_coeff(), qb)? {
        Residue::Unit(_) => Ok(w.clone()),
        Residue::Zero => {
            let mut coeffs = w.coeffs.clone();
            coeffs.remove(0);
            Ok(VPoly { coeffs })
        }
    }
}

fn strip_u_power(r: &UniPoly) -> UniPoly {
    let coeffs = r.coeffs();
    let k = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(coeffs.len());
    UniPoly::new(coeffs[k..].to_vec())
}

/// Finds a coprime pair for elimination, trying plain pairs first and then
/// small deterministic combinations.
fn elimination_pair(sat: &[Polynomial]) -> Result<(Polynomial, Polynomial)> {
    let mut order: Vec<usize> = (0..sat.len()).collect();
    order.sort_by_key(|&i| sat[i].total_degree().unwrap_or(0));
    for ai in 0..order.len() {
        for bi in ai + 1..order.len() {
            let (f, g) = (&sat[order[ai]], &sat[order[bi]]);
            let d = gcd_bivariate(f, g).strip_monomial_content().1;
            if d.total_degree() == Some(0) {
                return Ok((f.clone(), g.clone()));
            }
        }
    }
    // All plain pairs share factors; try combinations s_i + c^k s_k.
    for i in 0..sat.len() {
        for c in 1..=6i64 {
            let mut combo = Polynomial::zero(2);
            let mut w = Rational::from_integer(1.into());
            for (k, s) in sat.iter().enumerate() {
                if k == i {
                    continue;
                }
                combo = &combo + &s.scale(&w);
                w *= rat(c);
            }
            if combo.is_zero() {
                continue;
            }
            let d = gcd_bivariate(&sat[i], &combo).strip_monomial_content().1;
            if d.total_degree() == Some(0) {
                return Ok((sat[i].clone(), combo));
            }
        }
    }
    Err(Error::InvalidInput(
        "could not find a coprime elimination pair for the torus system".into(),
    ))
}

/// Per-point Milnor number assignment for a cluster of singular points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuAssignment {
    /// Certified exactly, by intersection-multiplicity accounting or by the
    /// local rank oracle at a rational point.
    Certified(u64),
    /// The uniform-distribution candidate T/c; needs external confirmation.
    Candidate(u64),
    Unknown,
}

/// A cluster of torus singular points of a plane curve sharing a square-free
/// factor of the eliminating resultant of the partials.
#[derive(Debug, Clone)]
pub struct SingularCluster {
    pub points: usize,
    pub mu: MuAssignment,
    /// Exact coordinates when the cluster is a single rational point.
    pub rational_point: Option<(Rational, Rational)>,
}

/// Torus singular points of the affine curve g = 0 with per-point Milnor
/// numbers.
#[derive(Debug, Clone)]
pub struct TorusSingularities {
    pub count: usize,
    pub clusters: Vec<SingularCluster>,
}

impl TorusSingularities {
    pub fn all_certified(&self) -> bool {
        self.clusters
            .iter()
            .all(|c| matches!(c.mu, MuAssignment::Certified(_)))
    }

    /// Sum of all Milnor numbers when every cluster has an assignment.
    pub fn mu_total(&self) -> Option<u64> {
        let mut sum = 0;
        for c in &self.clusters {
            match c.mu {
                MuAssignment::Certified(m) | MuAssignment::Candidate(m) => {
                    sum += m * c.points as u64
                }
                MuAssignment::Unknown => return None,
            }
        }
        Some(sum)
    }
}

/// Unimodular coordinate frames tried in order until the intersection
/// accounting is clean. The matrix expresses the original coordinates in
/// terms of the frame coordinates.
const FRAMES: [[i64; 4]; 8] = [
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [1, 1, 0, 1],
    [1, -1, 0, 1],
    [1, 0, 1, 1],
    [1, 0, -1, 1],
    [1, 2, 0, 1],
    [2, 1, 1, 1],
];

/// Locates all singular points of the reduced curve g = 0 lying in the
/// torus, grouped into Galois-stable clusters, and certifies the local
/// Milnor numbers where the resultant accounting permits.
pub fn torus_singular_points(
    g: &Polynomial,
    config: &OracleConfig,
) -> Result<TorusSingularities> {
    if g.arity() != 2 {
        return Err(Error::Arity {
            expected: 2,
            got: g.arity(),
        });
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // Monomial factors carry no torus points and are units near the others.
    let g = g.strip_monomial_content().1;
    if g.total_degree() == Some(0) {
        return Ok(TorusSingularities {
            count: 0,
            clusters: Vec::new(),
        });
    }
    // Power-substitution descent: when every exponent of one variable is a
    // multiple of s >= 2, the curve is a pullback through v -> v^s. That map
    // is unramified away from v = 0, so each torus singular point downstairs
    // has exactly s torus preimages with the same local Milnor number.
    for var in [1, 0] {
        let s = exponent_gcd(&g, var);
        if s >= 2 {
            let descended = divide_exponents(&g, var, s);
            let base = torus_singular_points(&descended, config)?;
            let clusters = base
                .clusters
                .into_iter()
                .map(|c| SingularCluster {
                    points: c.points * s as usize,
                    mu: c.mu,
                    rational_point: None,
                })
                .collect();
            return Ok(TorusSingularities {
                count: base.count * s as usize,
                clusters,
            });
        }
    }
    let mut best: Option<TorusSingularities> = None;
    for frame in FRAMES {
        match analyze_in_frame(&g, frame, config) {
            Ok(result) => {
                if let Some(prev) = &best {
                    if prev.count != result.count {
                        return Err(Error::InvalidInput(format!(
                            "frame disagreement on singular point count: {} vs {}",
                            prev.count, result.count
                        )));
                    }
                }
                if result.all_certified() {
                    return Ok(result);
                }
                if best.is_none() {
                    best = Some(result);
                }
            }
            Err(Error::PositiveDimensional) => return Err(Error::PositiveDimensional),
            Err(_) => continue,
        }
    }
    best.ok_or_else(|| Error::InvalidInput("curve analysis failed in every frame".into()))
}

/// Gcd of the exponents of `var` over the support (0 when the variable does
/// not appear).
fn exponent_gcd(g: &Polynomial, var: usize) -> u32 {
    let mut acc = 0u32;
    for (e, _) in g.terms() {
        acc = acc.gcd(&e.get(var));
        if acc == 1 {
            break;
        }
    }
    acc
}

/// Divides every exponent of `var` by s.
fn divide_exponents(g: &Polynomial, var: usize, s: u32) -> Polynomial {
    let mut out = Polynomial::zero(g.arity());
    for (e, c) in g.terms() {
        let mut ne = *e;
        ne.0[var] = e.get(var) / s;
        out.add_term(ne, c.clone());
    }
    out
}

struct FiberOutcome {
    crit_roots: usize,
    torus_on_curve_roots: usize,
    lc_ok: bool,
    /// Constant coefficient of the monic linear fiber factor, when unique.
    point_v: Option<UniPoly>,
}

fn analyze_in_frame(
    g: &Polynomial,
    frame: [i64; 4],
    config: &OracleConfig,
) -> Result<TorusSingularities> {
    let [a, b, c, d] = frame;
    let gf = compose_frame(g, frame);
    let gu = gf.partial_derivative(0);
    let gv = gf.partial_derivative(1);
    if gu.is_zero() || gv.is_zero() {
        return Err(Error::InvalidInput("degenerate frame".into()));
    }
    let mut pu = gu.strip_monomial_content().1;
    let mut pv = gv.strip_monomial_content().1;
    let shared = gcd_bivariate(&pu, &pv).strip_monomial_content().1;
    if shared.total_degree() != Some(0) {
        // The critical locus has a one-dimensional part. If it meets the
        // curve in the torus the singularities are not isolated; otherwise
        // it can be divided out without affecting on-curve multiplicities.
        match torus_system_solve(&[gf.clone(), shared.clone()]) {
            Ok(summary) if summary.is_empty() => {}
            Ok(_) => return Err(Error::PositiveDimensional),
            Err(Error::PositiveDimensional) => return Err(Error::PositiveDimensional),
            Err(e) => return Err(e),
        }
        pu = div_exact_bivariate(&pu, &shared);
        pv = div_exact_bivariate(&pv, &shared);
    }
    let r = resultant(&pu, &pv, 1)?;
    if r.is_zero() {
        return Err(Error::InvalidInput("resultant vanished".into()));
    }
    let r = r.to_unipoly();

    // On-curve pre-filter: singular points of the curve also kill the
    // resultant of (g, dg/du), so factors coprime to it carry only off-curve
    // critical points and never need fiber analysis. This keeps the large
    // junk clusters out of the quotient arithmetic.
    let curve_filter = match resultant(&gf, &pu, 1) {
        Ok(s) if !s.is_zero() => Some(s.to_unipoly().squarefree_part()),
        _ => None,
    };

    // Original coordinates as linear forms in the frame coordinates.
    let x_form = linear_form(a, b);
    let y_form = linear_form(c, d);

    let mut clusters = Vec::new();
    let mut count = 0usize;
    for (q, mult) in r.squarefree_decomposition() {
        let q = match &curve_filter {
            Some(s) => {
                let shared = q.gcd(s);
                if shared.degree().unwrap_or(0) == 0 {
                    continue;
                }
                shared
            }
            None => q,
        };
        let task_gf = gf.clone();
        let task_pu = pu.clone();
        let task_pv = pv.clone();
        let task_x = x_form.clone();
        let task_y = y_form.clone();
        let branches = run_branches(q, move |qb| {
            cluster_fiber(&task_gf, &task_pu, &task_pv, &task_x, &task_y, qb)
        });
        for (qb, outcome) in branches {
            let deg_q = qb.degree().unwrap();
            let pts = deg_q * outcome.torus_on_curve_roots;
            if pts == 0 {
                continue;
            }
            count += pts;
            let clean = outcome.lc_ok && outcome.crit_roots == outcome.torus_on_curve_roots;
            let mu = if clean {
                if outcome.torus_on_curve_roots == 1 {
                    MuAssignment::Certified(mult as u64)
                } else if mult == outcome.torus_on_curve_roots {
                    // Each point contributes at least one to the multiplicity.
                    MuAssignment::Certified(1)
                } else if mult % outcome.torus_on_curve_roots == 0 {
                    MuAssignment::Candidate((mult / outcome.torus_on_curve_roots) as u64)
                } else {
                    MuAssignment::Unknown
                }
            } else {
                MuAssignment::Unknown
            };
            // A degree-one cluster with a single fiber root is a rational
            // point; recover its coordinates in the original frame.
            let rational_point = if deg_q == 1 && outcome.torus_on_curve_roots == 1 {
                outcome.point_v.as_ref().map(|v_res| {
                    let u_frame = -qb.coeff(0);
                    let v_frame = -v_res.coeff(0);
                    let ux = rat(a) * &u_frame + rat(b) * &v_frame;
                    let uy = rat(c) * &u_frame + rat(d) * &v_frame;
                    (ux, uy)
                })
            } else {
                None
            };
            let mu = match &rational_point {
                Some((px, py)) => {
                    let oracle_mu = local_milnor_at_rational_point(g, (px, py), config)?;
                    if let MuAssignment::Certified(m) = &mu {
                        if *m != oracle_mu {
                            return Err(Error::InvalidInput(format!(
                                "intersection accounting ({m}) disagrees with rank oracle \
                                 ({oracle_mu}) at a rational point"
                            )));
                        }
                    }
                    MuAssignment::Certified(oracle_mu)
                }
                None => mu,
            };
            clusters.push(SingularCluster {
                points: pts,
                mu,
                rational_point,
            });
        }
    }
    Ok(TorusSingularities { count, clusters })
}

/// Fiber analysis over one branch: distinct critical roots, the on-curve
/// torus part, and whether the leading coefficients stayed units.
fn cluster_fiber(
    gf: &Polynomial,
    pu: &Polynomial,
    pv: &Polynomial,
    x_form: &Polynomial,
    y_form: &Polynomial,
    qb: &UniPoly,
) -> BranchResult<FiberOutcome> {
    let lc_ok = {
        let lu = pu.coefficients_in(1).last().cloned().unwrap_or_else(UniPoly::zero);
        let lv = pv.coefficients_in(1).last().cloned().unwrap_or_else(UniPoly::zero);
        matches!(invert(&lu, qb)?, Residue::Unit(_)) && matches!(invert(&lv, qb)?, Residue::Unit(_))
    };
    let av = to_vpoly(pu, qb);
    let bv = to_vpoly(pv, qb);
    let w = vgcd(&av, &bv, qb)?;
    if w.is_zero() || w.degree() == Some(0) {
        return Ok(FiberOutcome {
            crit_roots: 0,
            torus_on_curve_roots: 0,
            lc_ok,
            point_v: None,
        });
    }
    let wsf = squarefree_part_v(&w, qb)?;
    let crit_roots = wsf.degree().unwrap_or(0);
    // On-curve part of the fiber.
    let gvp = to_vpoly(gf, qb);
    let on_curve = vgcd(&wsf, &gvp, qb)?;
    if on_curve.is_zero() || on_curve.degree() == Some(0) {
        return Ok(FiberOutcome {
            crit_roots,
            torus_on_curve_roots: 0,
            lc_ok,
            point_v: None,
        });
    }
    // Remove roots where either original coordinate vanishes.
    let mut torus_part = on_curve;
    for form in [x_form, y_form] {
        torus_part = remove_form_zeros(&torus_part, form, qb)?;
        if torus_part.degree() == Some(0) {
            return Ok(FiberOutcome {
                crit_roots,
                torus_on_curve_roots: 0,
                lc_ok,
                point_v: None,
            });
        }
    }
    let roots = torus_part.degree().unwrap_or(0);
    // For a single root the monic fiber factor is v + c0 with c0 in the
    // branch field; keep c0 so rational coordinates can be recovered.
    let point_v = if roots == 1 {
        Some(torus_part.coeffs[0].clone())
    } else {
        None
    };
    Ok(FiberOutcome {
        crit_roots,
        torus_on_curve_roots: roots,
        lc_ok,
        point_v,
    })
}

/// Removes from `w` the roots where the linear form vanishes.
fn remove_form_zeros(w: &VPoly, form: &Polynomial, qb: &UniPoly) -> BranchResult<VPoly> {
    let fv = to_vpoly(form, qb).normalize(qb)?;
    if fv.is_zero() {
        // The form vanishes identically over this branch: nothing survives.
        return Ok(VPoly {
            coeffs: vec![UniPoly::one()],
        });
    }
    if fv.degree() == Some(0) {
        // Constant in v: either a unit (no roots killed) or zero handled above.
        return Ok(w.clone());
    }
    let shared = vgcd(w, &fv, qb)?;
    if shared.degree().unwrap_or(0) == 0 {
        Ok(w.clone())
    } else {
        Ok(w.div_exact_monic(&shared, qb))
    }
}

fn linear_form(a: i64, b: i64) -> Polynomial {
    let mut p = Polynomial::zero(2);
    p.add_term(Exponents::new(&[1, 0]), rat(a));
    p.add_term(Exponents::new(&[0, 1]), rat(b));
    p
}

/// g(a*u + b*v, c*u + d*v) for the frame matrix [[a, b], [c, d]].
fn compose_frame(g: &Polynomial, frame: [i64; 4]) -> Polynomial {
    let [a, b, c, d] = frame;
    if frame == [1, 0, 0, 1] {
        return g.clone();
    }
    let fu = linear_form(a, b);
    let fv = linear_form(c, d);
    let mut out = Polynomial::zero(2);
    for (e, coeff) in g.terms() {
        let term = &fu.pow(e.get(0)) * &fv.pow(e.get(1));
        out = &out + &term.scale(coeff);
    }
    out
}

/// Exact division of bivariate polynomials (long division in (Q[u])[v]).
pub fn div_exact_bivariate(f: &Polynomial, d: &Polynomial) -> Polynomial {
    assert_eq!(f.arity(), 2);
    assert_eq!(d.arity(), 2);
    if d.total_degree() == Some(0) {
        let inv = Rational::from_integer(1.into()) / d.constant_term();
        return f.scale(&inv);
    }
    let fc = f.coefficients_in(1);
    let dc = d.coefficients_in(1);
    let dd = dc.len() - 1;
    let mut rem = fc;
    let mut quo: Vec<UniPoly> = vec![UniPoly::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let top = rem.last().unwrap();
        if top.is_zero() {
            rem.pop();
            continue;
        }
        let qc = top.div_exact(&dc[dd]);
        let shift = rem.len() - 1 - dd;
        for (j, c) in dc.iter().enumerate() {
            rem[shift + j] = rem[shift + j].sub(&qc.mul(c));
        }
        quo[shift] = qc;
        debug_assert!(rem.last().unwrap().is_zero());
        rem.pop();
    }
    assert!(
        rem.iter().all(UniPoly::is_zero),
        "inexact bivariate division"
    );
    Polynomial::from_coefficients_in(1, &quo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p2(s: &str) -> Polynomial {
        parse(s, &["u", "v"]).unwrap()
    }
    fn p3(s: &str) -> Polynomial {
        parse(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn colength_examples() {
        assert_eq!(truncated_colength(&p2("u^2 + v^2"), 3), 1);
        assert_eq!(truncated_colength(&p2("u^2 + v^3"), 4), 2);
        // Non-isolated: colengths keep growing.
        let f = p2("u^2*v");
        let c5 = truncated_colength(&f, 5);
        let c7 = truncated_colength(&f, 7);
        assert!(c7 > c5);
    }

    #[test]
    fn oracle_basic_values() {
        let cfg = OracleConfig::default();
        assert_eq!(
            milnor_rank_oracle(&p2("u^3 + u*v^3"), &cfg)
                .unwrap()
                .colength,
            Some(7)
        );
        assert_eq!(
            milnor_rank_oracle(&p3("x^2 + y^2 + z^2"), &cfg)
                .unwrap()
                .colength,
            Some(1)
        );
        // Non-isolated input hits the cap.
        let r = milnor_rank_oracle(
            &p2("u^2*v"),
            &OracleConfig {
                delta_cap: 8,
                ..OracleConfig::default()
            },
        )
        .unwrap();
        assert_eq!(r.colength, None);
        assert!(!r.stabilized);
    }

    #[test]
    fn brieskorn_law() {
        let cfg = OracleConfig::default();
        for a in 2..=5u32 {
            for b in 2..=5u32 {
                let f = parse(&format!("u^{a} + v^{b}"), &["u", "v"]).unwrap();
                let mu = milnor_rank_oracle(&f, &cfg).unwrap().colength.unwrap();
                assert_eq!(mu, ((a - 1) * (b - 1)) as u64, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn local_milnor_examples() {
        let cfg = OracleConfig::default();
        let node = p2("u*v");
        assert_eq!(
            local_milnor_at_rational_point(&node, (&rat(0), &rat(0)), &cfg).unwrap(),
            1
        );
        // Translated cusp at (1, 1).
        let f = p2("(u - 1)^2 - (v - 1)^3");
        assert_eq!(
            local_milnor_at_rational_point(&f, (&rat(1), &rat(1)), &cfg).unwrap(),
            2
        );
        // Tacnode.
        let f = p2("(v - u^2)*(v + u^2)");
        assert_eq!(
            local_milnor_at_rational_point(&f, (&rat(0), &rat(0)), &cfg).unwrap(),
            3
        );
        // Not singular.
        assert!(matches!(
            local_milnor_at_rational_point(&p2("u + v"), (&rat(0), &rat(0)), &cfg),
            Err(Error::NotSingular)
        ));
    }

    #[test]
    fn torus_solve_examples() {
        // Inconsistent system.
        let sys = [p2("u - 1"), p2("v - 1"), p2("u*v - 2")];
        assert!(torus_system_solve(&sys).unwrap().is_empty());

        // Two torus points.
        let sys = [p2("u^2 - 1"), p2("v - u")];
        let s = torus_system_solve(&sys).unwrap();
        assert_eq!(s.count, 2);

        // Solutions on the axes are not counted.
        let sys = [p2("u^2 - u"), p2("v - u")];
        let s = torus_system_solve(&sys).unwrap();
        assert_eq!(s.count, 1);

        // Positive-dimensional.
        assert!(matches!(
            torus_system_solve(&[p2("u - v"), p2("2*u - 2*v")]),
            Err(Error::PositiveDimensional)
        ));
    }

    #[test]
    fn quartic_nodes_certified() {
        // Two transverse conics: four nodes at (+-1/sqrt3, +-1/sqrt3).
        let g = p2("(u^2 + 2*v^2 - 1)*(2*u^2 + v^2 - 1)");
        let cfg = OracleConfig::default();
        let sing = torus_singular_points(&g, &cfg).unwrap();
        assert_eq!(sing.count, 4);
        assert!(sing.all_certified());
        assert_eq!(sing.mu_total(), Some(4));
        for c in &sing.clusters {
            assert_eq!(c.mu, MuAssignment::Certified(1));
        }
    }

    #[test]
    fn rational_singular_point_found_with_mu() {
        // Node at (1, 1): (v - u)(v - u^2) has singular point where both
        // branches meet.
        let g = p2("(v - u)*(v - u^2)");
        let cfg = OracleConfig::default();
        let sing = torus_singular_points(&g, &cfg).unwrap();
        assert_eq!(sing.count, 1);
        let c = &sing.clusters[0];
        assert_eq!(c.mu, MuAssignment::Certified(1));
        assert_eq!(
            c.rational_point,
            Some((rat(1), rat(1)))
        );
    }

    #[test]
    fn cusp_cluster_mu_two() {
        // y^2 = x^3 shifted into the torus: cusp at (1, 0)? Keep it in the
        // torus instead: cusp at (1, 1).
        let g = shift_origin(&p2("v^2 - u^3"), &rat(-1), &rat(-1));
        let cfg = OracleConfig::default();
        let sing = torus_singular_points(&g, &cfg).unwrap();
        assert_eq!(sing.count, 1);
        assert_eq!(sing.clusters[0].mu, MuAssignment::Certified(2));
    }
}
