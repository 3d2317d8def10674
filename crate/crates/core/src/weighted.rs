//! Weight vectors, weighted degrees and initial forms, weighted
//! homogenization, the branched-cover pullback, and membership tests for the
//! weighted-Le-Yomdin decompositions g = f + h.
//!
//! All torus computations run on the slice z = 1 of the affine cone: a
//! weighted-homogeneous polynomial is scaled along orbits, every torus orbit
//! meets the slice in exactly p3 points with trivial stabilizer, and the
//! slice germ is locally isomorphic to the weighted projective curve germ.
//! Counting on the slice and dividing by p3 therefore agrees with counting
//! on the p1*p2*p3-fold covering, at much smaller degrees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local::{
    milnor_rank_oracle, torus_singular_points, torus_system_solve, ColengthResult, MuAssignment,
    OracleConfig,
};
use crate::newton::{nd_check_face, NewtonPolyhedron};
use crate::poly::{rat, Exponents, Polynomial, Rational};

/// A primitive weight vector p1 >= p2 >= p3 >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[u32; 3]", into = "[u32; 3]")]
pub struct WeightVector {
    pub p1: u32,
    pub p2: u32,
    pub p3: u32,
}

impl WeightVector {
    pub fn new(p1: u32, p2: u32, p3: u32) -> Result<Self> {
        if p1 < p2 || p2 < p3 || p3 < 1 {
            return Err(Error::InvalidInput(format!(
                "weights must satisfy p1 >= p2 >= p3 >= 1, got ({p1}, {p2}, {p3})"
            )));
        }
        let g = gcd3(p1, p2, p3);
        if g != 1 {
            return Err(Error::InvalidInput(format!(
                "weights must be primitive, got gcd {g}"
            )));
        }
        Ok(WeightVector { p1, p2, p3 })
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn product(&self) -> u64 {
        self.p1 as u64 * self.p2 as u64 * self.p3 as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.p1 == 1 && self.p2 == 1 && self.p3 == 1
    }
}

impl TryFrom<[u32; 3]> for WeightVector {
    type Error = Error;
    fn try_from(v: [u32; 3]) -> Result<Self> {
        WeightVector::new(v[0], v[1], v[2])
    }
}

impl From<WeightVector> for [u32; 3] {
    fn from(p: WeightVector) -> [u32; 3] {
        p.as_array()
    }
}

fn gcd3(a: u32, b: u32, c: u32) -> u32 {
    use num_integer::Integer;
    a.gcd(&b).gcd(&c)
}

/// Minimum and maximum weighted degree over the support.
pub fn p_degree(f: &Polynomial, p: &WeightVector) -> Result<(u64, u64)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let w = p.as_array();
    let degs = f.support().iter().map(|e| e.weighted_degree(&w)).collect::<Vec<_>>();
    Ok((
        *degs.iter().min().unwrap(),
        *degs.iter().max().unwrap(),
    ))
}

/// The sum of the terms of minimal weighted degree.
pub fn initial_form(g: &Polynomial, p: &WeightVector) -> Result<Polynomial> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let w = p.as_array();
    let min = g
        .support()
        .iter()
        .map(|e| e.weighted_degree(&w))
        .min()
        .unwrap();
    let mut out = Polynomial::zero(g.arity());
    for (e, c) in g.terms() {
        if e.weighted_degree(&w) == min {
            out.add_term(*e, c.clone());
        }
    }
    Ok(out)
}

/// Weighted homogenization of a 2-variable polynomial with respect to
/// (p1, p2, 1): each term x^a y^b becomes x^a y^b z^(d - p1 a - p2 b) for d
/// the maximum weighted degree.
pub fn weighted_homogenize(f2: &Polynomial, p: &WeightVector) -> Result<Polynomial> {
    if f2.arity() != 2 {
        return Err(Error::Arity {
            expected: 2,
            got: f2.arity(),
        });
    }
    if p.p3 != 1 {
        return Err(Error::InvalidInput(
            "weighted homogenization requires p3 = 1".into(),
        ));
    }
    if f2.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let w = [p.p1, p.p2];
    let d = f2
        .support()
        .iter()
        .map(|e| e.weighted_degree(&w))
        .max()
        .unwrap();
    let mut out = Polynomial::zero(3);
    for (e, c) in f2.terms() {
        let (a, b) = (e.get(0), e.get(1));
        let zexp = d - (p.p1 as u64 * a as u64 + p.p2 as u64 * b as u64);
        out.add_term(Exponents::new(&[a, b, zexp as u32]), c.clone());
    }
    Ok(out)
}

/// The branched-cover pullback f(x^p1, y^p2, z^p3).
pub fn cover_pullback(f: &Polynomial, p: &WeightVector) -> Polynomial {
    assert_eq!(f.arity(), 3);
    f.substitute_power(0, p.p1)
        .substitute_power(1, p.p2)
        .substitute_power(2, p.p3)
}

/// Multiplicity at the origin: the minimum total degree over the support.
pub fn multiplicity(g: &Polynomial) -> Result<u64> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !g.constant_term().eq(&Rational::from_integer(0.into())) {
        return Err(Error::InvalidInput(
            "polynomial does not vanish at the origin".into(),
        ));
    }
    Ok(g.min_total_degree().unwrap() as u64)
}

/// Outcome of a membership check, with the first failed condition named.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub ok: bool,
    pub failure: Option<String>,
    /// Conditions that passed only through a theorem-backed route rather
    /// than a finished computation (e.g. the rank-oracle isolation check
    /// exceeding its cap on large instances).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    fn pass() -> Self {
        CheckReport {
            ok: true,
            failure: None,
            notes: Vec::new(),
        }
    }
    fn fail(msg: impl Into<String>) -> Self {
        CheckReport {
            ok: false,
            failure: Some(msg.into()),
            notes: Vec::new(),
        }
    }
}

/// Membership in W'_{P,d}(Delta): critical point at the origin, Newton
/// boundary equal to the given 2-face, and Newton non-degeneracy on every
/// proper face of it.
pub fn check_w_prime(
    f: &Polynomial,
    p: &WeightVector,
    delta: &crate::newton::Face,
) -> Result<CheckReport> {
    if f.arity() != 3 {
        return Err(Error::Arity {
            expected: 3,
            got: f.arity(),
        });
    }
    if delta.dim != 2 {
        return Err(Error::InvalidInput("delta must be a 2-face".into()));
    }
    let pw: Vec<u64> = p.as_array().iter().map(|&x| x as u64).collect();
    if delta.covector != pw {
        return Err(Error::InvalidInput(format!(
            "delta covector {:?} does not match weights {:?}",
            delta.covector, pw
        )));
    }
    if f.is_zero() {
        return Ok(CheckReport::fail("zero polynomial"));
    }
    if !f.is_weighted_homogeneous(&p.as_array()) {
        return Ok(CheckReport::fail("not weighted homogeneous"));
    }
    if !f.has_critical_origin() {
        return Ok(CheckReport::fail("no critical point at the origin"));
    }
    // Coordinate factors are impossible in the closure of the isolated
    // stratum: a vanishing coordinate-plane restriction fails immediately.
    for (var, name) in [(0usize, "x"), (1, "y"), (2, "z")] {
        if f.substitute_value(var, &Rational::from_integer(0.into()))
            .is_zero()
        {
            return Ok(CheckReport::fail(format!(
                "restriction to {name} = 0 vanishes identically"
            )));
        }
    }
    let np = NewtonPolyhedron::new(f)?;
    match np.unique_top_face() {
        Some(top) => {
            if top.vertices != delta.vertices {
                return Ok(CheckReport::fail(format!(
                    "newton boundary {:?} differs from delta {:?}",
                    top.vertices, delta.vertices
                )));
            }
        }
        None => return Ok(CheckReport::fail("newton boundary is not a 2-face")),
    }
    for face in np.faces() {
        if face.dim == 2 {
            continue;
        }
        if !nd_check_face(f, face)? {
            return Ok(CheckReport::fail(format!(
                "degenerate proper face with vertices {:?}",
                face.vertices
            )));
        }
    }
    Ok(CheckReport::pass())
}

/// A weighted-Le-Yomdin decomposition g = f + h.
#[derive(Debug, Clone, PartialEq)]
pub struct WlyTriple {
    pub f: Polynomial,
    pub h: Polynomial,
    pub p: WeightVector,
    pub d: u64,
    pub m: u64,
    pub cap_m: u64,
}

impl WlyTriple {
    /// Builds a triple, inferring d and m from the weighted degrees.
    pub fn new(f: Polynomial, h: Polynomial, p: WeightVector) -> Result<Self> {
        let (dmin, dmax) = p_degree(&f, &p)?;
        if dmin != dmax {
            return Err(Error::InvalidInput(
                "initial part is not weighted homogeneous".into(),
            ));
        }
        let (hmin, _) = p_degree(&h, &p)?;
        if hmin <= dmin {
            return Err(Error::InvalidInput(format!(
                "tail degree {hmin} does not exceed initial degree {dmin}"
            )));
        }
        let d = dmin;
        let m = hmin - dmin;
        let cap_m = 4 * (d + m);
        Ok(WlyTriple {
            f,
            h,
            p,
            d,
            m,
            cap_m,
        })
    }

    pub fn polynomial(&self) -> Polynomial {
        &self.f + &self.h
    }

    /// The weighted homogeneous initial polynomial of the tail.
    pub fn tail_initial(&self) -> Result<Polynomial> {
        initial_form(&self.h, &self.p)
    }
}

#[derive(Serialize, Deserialize)]
struct WlyTripleRepr {
    f: String,
    h: String,
    #[serde(rename = "P")]
    p: [u32; 3],
    d: u64,
    m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cap_m: Option<u64>,
}

impl Serialize for WlyTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WlyTripleRepr {
            f: self.f.to_string(),
            h: self.h.to_string(),
            p: self.p.as_array(),
            d: self.d,
            m: self.m,
            cap_m: Some(self.cap_m),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WlyTriple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = WlyTripleRepr::deserialize(d)?;
        let vars = ["x", "y", "z"];
        let f = crate::poly::parse(&repr.f, &vars).map_err(DeError::custom)?;
        let h = crate::poly::parse(&repr.h, &vars).map_err(DeError::custom)?;
        let p = WeightVector::new(repr.p[0], repr.p[1], repr.p[2]).map_err(DeError::custom)?;
        let mut t = WlyTriple::new(f, h, p).map_err(DeError::custom)?;
        if t.d != repr.d || t.m != repr.m {
            return Err(DeError::custom(format!(
                "stated (d, m) = ({}, {}) disagree with computed ({}, {})",
                repr.d, repr.m, t.d, t.m
            )));
        }
        if let Some(cap) = repr.cap_m {
            t.cap_m = cap;
        }
        Ok(t)
    }
}

/// Numeric shadow of the singularity list of the weighted projective curve:
/// point count, local Milnor numbers, and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityProfile {
    pub k: usize,
    /// Sorted multiset of local Milnor numbers, one entry per point.
    pub local_mu: Vec<u64>,
    pub mu_tot: u64,
    /// Whether every local Milnor number was certified exactly (as opposed
    /// to accepted through the uniform-cluster candidate rule).
    #[serde(default)]
    pub certified: bool,
}

impl SingularityProfile {
    pub fn empty() -> Self {
        SingularityProfile {
            k: 0,
            local_mu: Vec::new(),
            mu_tot: 0,
            certified: true,
        }
    }

    /// The multiset repeated `times` per entry.
    pub fn duplicated(&self, times: usize) -> Self {
        let mut local_mu = Vec::with_capacity(self.k * times);
        for &m in &self.local_mu {
            for _ in 0..times {
                local_mu.push(m);
            }
        }
        local_mu.sort();
        SingularityProfile {
            k: self.k * times,
            local_mu,
            mu_tot: self.mu_tot * times as u64,
            certified: self.certified,
        }
    }
}

/// Singular points of the weighted projective curve V_P(f) in the torus,
/// with local Milnor numbers, computed on the slice z = 1 and divided by p3.
pub fn singularity_profile(
    f: &Polynomial,
    p: &WeightVector,
    cfg: &OracleConfig,
) -> Result<SingularityProfile> {
    let (dmin, dmax) = p_degree(f, p)?;
    if dmin != dmax {
        return Err(Error::InvalidInput(
            "profile requires a weighted homogeneous polynomial".into(),
        ));
    }
    let slice = f.substitute_value(2, &rat(1));
    if slice.is_zero() {
        return Err(Error::InvalidInput("slice z = 1 vanished".into()));
    }
    let sing = torus_singular_points(&slice, cfg)?;
    let p3 = p.p3 as usize;
    if sing.count % p3 != 0 {
        return Err(Error::InvalidInput(format!(
            "slice point count {} is not divisible by p3 = {p3}",
            sing.count
        )));
    }
    let k = sing.count / p3;

    // Per-point values on the slice; resolve any uncertified clusters
    // against the reverse mu_+ total when the global oracle is feasible.
    let mut resolved: Vec<(usize, u64, bool)> = Vec::new();
    let mut unknown: Vec<usize> = Vec::new();
    for (i, c) in sing.clusters.iter().enumerate() {
        match c.mu {
            MuAssignment::Certified(m) => resolved.push((c.points, m, true)),
            MuAssignment::Candidate(m) => resolved.push((c.points, m, false)),
            MuAssignment::Unknown => unknown.push(i),
        }
    }
    let mut certified = unknown.is_empty() && resolved.iter().all(|&(_, _, cert)| cert);
    if !certified {
        let target = reverse_mu_total_on_slice(f, p, dmin, cfg)?;
        match target {
            Some(slice_total) => {
                let assigned: u64 = resolved.iter().map(|&(n, m, _)| n as u64 * m).sum();
                if unknown.is_empty() {
                    if assigned != slice_total {
                        return Err(Error::MuDistributionAmbiguous(format!(
                            "cluster candidates sum to {assigned}, expected {slice_total}"
                        )));
                    }
                    certified = true;
                } else if unknown.len() == 1 {
                    let c = &sing.clusters[unknown[0]];
                    let rest = slice_total.checked_sub(assigned).ok_or_else(|| {
                        Error::MuDistributionAmbiguous(
                            "assigned local numbers exceed the global total".into(),
                        )
                    })?;
                    if rest % c.points as u64 != 0 || rest == 0 {
                        return Err(Error::MuDistributionAmbiguous(format!(
                            "remainder {rest} does not distribute over {} points",
                            c.points
                        )));
                    }
                    resolved.push((c.points, rest / c.points as u64, true));
                    certified = true;
                } else {
                    return Err(Error::MuDistributionAmbiguous(
                        "more than one uncertified cluster".into(),
                    ));
                }
            }
            None => {
                if !unknown.is_empty() {
                    return Err(Error::MuDistributionAmbiguous(
                        "uncertified cluster and the global oracle exceeded its cap".into(),
                    ));
                }
                // Candidate values stand without a global check.
            }
        }
    }

    let mut slice_mu: Vec<u64> = Vec::new();
    for &(n, m, _) in &resolved {
        for _ in 0..n {
            slice_mu.push(m);
        }
    }
    slice_mu.sort();
    // Each weighted-curve point appears p3 times on the slice with the same
    // local number.
    let mut local_mu = Vec::with_capacity(k);
    let mut i = 0;
    while i < slice_mu.len() {
        let v = slice_mu[i];
        let run = slice_mu[i..].iter().take_while(|&&x| x == v).count();
        if run % p3 != 0 {
            return Err(Error::InvalidInput(format!(
                "slice multiplicity of mu = {v} is not divisible by p3"
            )));
        }
        for _ in 0..run / p3 {
            local_mu.push(v);
        }
        i += run;
    }
    let mu_tot: u64 = local_mu.iter().sum();
    Ok(SingularityProfile {
        k,
        local_mu,
        mu_tot,
        certified,
    })
}

/// Expected slice total p3 * mu_tot via the reverse mu_+ route: attach a
/// monomial tail of minimal weighted degree above d, compute mu(f + h) by
/// the rank oracle, and solve the mu_+ identity for mu_tot. Returns `None`
/// when the oracle exceeds its cap.
fn reverse_mu_total_on_slice(
    f: &Polynomial,
    p: &WeightVector,
    d: u64,
    cfg: &OracleConfig,
) -> Result<Option<u64>> {
    let (h, m) = monomial_tail(f, p, d)?;
    let g = f + &h;
    let oracle = milnor_rank_oracle(&g, cfg)?;
    let Some(mu) = oracle.colength else {
        return Ok(None);
    };
    let base = weighted_homogeneous_mu(p, d)?;
    let diff = (mu as i64) - base;
    if diff < 0 || diff as u64 % m != 0 {
        return Err(Error::NonIntegral(format!(
            "(mu - prod) = {diff} is not a non-negative multiple of m = {m}"
        )));
    }
    Ok(Some((diff as u64 / m) * p.p3 as u64))
}

/// Product (d/p1 - 1)(d/p2 - 1)(d/p3 - 1) as an exact integer.
pub fn weighted_homogeneous_mu(p: &WeightVector, d: u64) -> Result<i64> {
    let mut acc = Rational::from_integer(1.into());
    for w in p.as_array() {
        acc *= Rational::new((d as i64).into(), (w as i64).into()) - rat(1);
    }
    if !acc.is_integer() {
        return Err(Error::NonIntegral(format!(
            "product formula gave {acc} for weights {:?} and degree {d}",
            p.as_array()
        )));
    }
    let v = num_traits::ToPrimitive::to_i64(&acc.to_integer())
        .ok_or_else(|| Error::InvalidInput("mu overflow".into()))?;
    Ok(v)
}

/// Picks a monomial of minimal weighted degree d + m (m >= 1) inside the
/// Newton polyhedron of f, to serve as a tail with automatically valid
/// condition (3'): a monomial vanishes nowhere on the torus.
pub fn monomial_tail(f: &Polynomial, p: &WeightVector, d: u64) -> Result<(Polynomial, u64)> {
    let np = NewtonPolyhedron::new(f)?;
    let w = p.as_array();
    for m in 1..=(2 * d) {
        let target = d + m;
        // Pure powers first, then shallow mixed monomials.
        let mut candidates: Vec<Exponents> = Vec::new();
        for (i, &wi) in w.iter().enumerate() {
            if target % wi as u64 == 0 {
                let mut e = [0u32; 3];
                e[i] = (target / wi as u64) as u32;
                candidates.push(Exponents(e));
            }
        }
        let bound = (target / w[2] as u64) as u32 + 1;
        for a in 0..=bound {
            for b in 0..=bound {
                let partial = a as u64 * w[0] as u64 + b as u64 * w[1] as u64;
                if partial > target {
                    continue;
                }
                let rem = target - partial;
                if rem % w[2] as u64 == 0 {
                    candidates.push(Exponents::new(&[a, b, (rem / w[2] as u64) as u32]));
                }
            }
        }
        for e in candidates {
            if np.contains(&e) {
                return Ok((Polynomial::monomial(3, e, rat(1)), m));
            }
        }
    }
    Err(Error::InvalidInput(
        "no monomial tail found inside the Newton polyhedron".into(),
    ))
}

/// Full membership check for g = f + h in W''_{P,d,m}(Delta): the numbered
/// tail conditions, W' membership of the initial part, and isolatedness of
/// the singular point of g at the origin.
pub fn check_w_doubleprime(t: &WlyTriple, cfg: &OracleConfig) -> Result<CheckReport> {
    // W' membership of f against its own boundary.
    let np_f = NewtonPolyhedron::new(&t.f)?;
    let Some(delta) = np_f.unique_top_face() else {
        return Ok(CheckReport::fail("initial part has no unique 2-face"));
    };
    let report = check_w_prime(&t.f, &t.p, delta)?;
    if !report.ok {
        return Ok(CheckReport::fail(format!(
            "initial part not in W': {}",
            report.failure.unwrap_or_default()
        )));
    }

    // (1) Newton polyhedron containment.
    let np_h = NewtonPolyhedron::new(&t.h)?;
    if !np_f.contains_polyhedron(&np_h) {
        return Ok(CheckReport::fail(
            "condition (1): tail support leaves the Newton polyhedron of f",
        ));
    }
    // (2) weighted degree of the tail.
    let (hmin, hmax) = p_degree(&t.h, &t.p)?;
    if hmin != t.d + t.m {
        return Ok(CheckReport::fail(format!(
            "condition (2): d(P, h) = {hmin}, expected {}",
            t.d + t.m
        )));
    }
    if hmax > t.cap_m {
        return Ok(CheckReport::fail(format!(
            "tail degree {hmax} exceeds the cap {}",
            t.cap_m
        )));
    }
    // (3') the initial tail misses the torus singularities of V_P(f).
    let slice = t.f.substitute_value(2, &rat(1));
    let hp = t.tail_initial()?;
    let hp_slice = hp.substitute_value(2, &rat(1));
    let system = [
        slice.clone(),
        slice.partial_derivative(0),
        slice.partial_derivative(1),
        hp_slice,
    ];
    match torus_system_solve(&system) {
        Ok(summary) => {
            if !summary.is_empty() {
                return Ok(CheckReport::fail(
                    "condition (3'): the initial tail meets a torus singular point of V_P(f)",
                ));
            }
        }
        Err(Error::PositiveDimensional) => {
            return Ok(CheckReport::fail(
                "condition (3'): positive-dimensional intersection with the singular locus",
            ))
        }
        Err(e) => return Err(e),
    }
    // Isolated critical point of g at the origin, by the rank oracle when
    // the expected Milnor number fits the budget; otherwise conditions
    // (1)-(3') together with W' membership already force isolatedness and
    // the oracle is skipped.
    let g = t.polynomial();
    if !g.has_critical_origin() {
        return Ok(CheckReport::fail("g has no critical point at the origin"));
    }
    let mut report = CheckReport::pass();
    let expected = match (weighted_homogeneous_mu(&t.p, t.d), singularity_profile(&t.f, &t.p, cfg))
    {
        (Ok(base), Ok(profile)) if base >= 0 => Some(base as u64 + t.m * profile.mu_tot),
        _ => None,
    };
    match expected {
        Some(mu_plus) if mu_plus > cfg.mu_budget => {
            report.notes.push(format!(
                "isolation oracle skipped: expected mu = {mu_plus} exceeds the budget {}; \
                 isolatedness holds by the weighted-Le-Yomdin conditions",
                cfg.mu_budget
            ));
        }
        _ => {
            let oracle = milnor_rank_oracle(&g, cfg)?;
            match (oracle.colength, expected) {
                (Some(mu), Some(mu_plus)) if mu != mu_plus => {
                    return Ok(CheckReport::fail(format!(
                        "rank oracle gave mu = {mu} but the closed formula expects {mu_plus}"
                    )));
                }
                (None, _) => {
                    report.notes.push(format!(
                        "isolation oracle exceeded its cap at delta = {}; isolatedness holds \
                         by the weighted-Le-Yomdin conditions",
                        oracle.delta_used
                    ));
                }
                _ => {}
            }
        }
    }
    Ok(report)
}

/// Oracle result for mu(f + h) when within cap, used by callers that want
/// the cross-check value.
pub fn wly_oracle_mu(t: &WlyTriple, cfg: &OracleConfig) -> Result<ColengthResult> {
    milnor_rank_oracle(&t.polynomial(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p3v(s: &str) -> Polynomial {
        parse(s, &["x", "y", "z"]).unwrap()
    }
    fn p2v(s: &str) -> Polynomial {
        parse(s, &["x", "y"]).unwrap()
    }
    fn wv(a: u32, b: u32, c: u32) -> WeightVector {
        WeightVector::new(a, b, c).unwrap()
    }

    #[test]
    fn p_degree_examples() {
        assert_eq!(
            p_degree(&p3v("x^2 + y^3 + z^6"), &wv(3, 2, 1)).unwrap(),
            (6, 6)
        );
        assert_eq!(p_degree(&p3v("x^5 + x^2*y^2"), &wv(1, 1, 1)).unwrap(), (4, 5));
        assert_eq!(p_degree(&p3v("z"), &wv(5, 4, 2)).unwrap(), (2, 2));
    }

    #[test]
    fn initial_form_examples() {
        let g = p3v("x^2 + y^3 + z^6 + x^5");
        assert_eq!(
            initial_form(&g, &wv(3, 2, 1)).unwrap(),
            p3v("x^2 + y^3 + z^6")
        );
        let f = p3v("x^2 + y^3 + z^6");
        assert_eq!(initial_form(&f, &wv(3, 2, 1)).unwrap(), f);
        assert_eq!(
            initial_form(&p3v("x^5 + z^5"), &wv(1, 1, 1)).unwrap(),
            p3v("x^5 + z^5")
        );
    }

    #[test]
    fn homogenize_examples() {
        assert_eq!(
            weighted_homogenize(&p2v("x^2 + y^3"), &wv(3, 2, 1)).unwrap(),
            p3v("x^2 + y^3")
        );
        assert_eq!(
            weighted_homogenize(&p2v("x^2 + y^3"), &wv(1, 1, 1)).unwrap(),
            p3v("x^2*z + y^3")
        );
        assert_eq!(
            weighted_homogenize(&p2v("x"), &wv(2, 1, 1)).unwrap(),
            p3v("x")
        );
    }

    #[test]
    fn homogenize_dehomogenize_roundtrip() {
        let f2 = p2v("x^3 + 2*x*y^2 - 7/2*y^5 + 1");
        for p in [wv(3, 2, 1), wv(2, 1, 1), wv(1, 1, 1), wv(5, 3, 1)] {
            let f = weighted_homogenize(&f2, &p).unwrap();
            assert!(f.is_weighted_homogeneous(&p.as_array()));
            assert_eq!(f.substitute_value(2, &rat(1)), f2);
        }
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(
            cover_pullback(&p3v("x^2 + y^3"), &wv(3, 2, 1)),
            p3v("x^6 + y^6")
        );
        let f = p3v("x^2 + y^3 + z^6");
        assert_eq!(cover_pullback(&f, &wv(1, 1, 1)), f);
        assert_eq!(cover_pullback(&f, &wv(3, 2, 1)), p3v("x^6 + y^6 + z^6"));
        // P-degree d maps to plain degree d.
        let g = p3v("x^2*z^2 + y^3*z^3 + z^6 + x*y^2*z^2");
        assert!(g.is_weighted_homogeneous(&[2, 1, 1]));
        let cov = cover_pullback(&g, &wv(2, 1, 1));
        assert_eq!(p_degree(&cov, &wv(1, 1, 1)).unwrap(), (6, 6));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&p3v("x^2 + y^3 + z^6")).unwrap(), 2);
        let quartic = p3v("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2) + x^5");
        assert_eq!(multiplicity(&quartic).unwrap(), 4);
        assert_eq!(multiplicity(&p3v("x")).unwrap(), 1);
        assert!(multiplicity(&p3v("x + 1")).is_err());
    }

    #[test]
    fn w_prime_examples() {
        let f = p3v("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");
        let np = NewtonPolyhedron::new(&f).unwrap();
        let delta = np.unique_top_face().unwrap().clone();
        let p = wv(1, 1, 1);
        assert!(check_w_prime(&f, &p, &delta).unwrap().ok);

        // A coordinate factor kills membership.
        let bad = p3v("(x + y + z)*(x^2 + y^2 + z^2)*x");
        let r = check_w_prime(&bad, &p, &delta).unwrap();
        assert!(!r.ok);
        assert!(r.failure.unwrap().contains("x = 0"));

        let brieskorn = p3v("x^2 + y^3 + z^6");
        let np = NewtonPolyhedron::new(&brieskorn).unwrap();
        let delta = np.unique_top_face().unwrap().clone();
        assert!(check_w_prime(&brieskorn, &wv(3, 2, 1), &delta).unwrap().ok);
    }

    #[test]
    fn w_doubleprime_examples() {
        let cfg = OracleConfig::default();
        let p = wv(1, 1, 1);
        let f = p3v("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");

        let good = WlyTriple::new(f.clone(), p3v("x^5"), p).unwrap();
        assert_eq!((good.d, good.m), (4, 1));
        let r = check_w_doubleprime(&good, &cfg).unwrap();
        assert!(r.ok, "{:?}", r.failure);

        // The tail initial form passes through the nodes at y^2 = x^2.
        let bad = WlyTriple::new(f.clone(), p3v("(y^2 - x^2)*x^3"), p).unwrap();
        let r = check_w_doubleprime(&bad, &cfg).unwrap();
        assert!(!r.ok);
        assert!(r.failure.unwrap().contains("(3')"));

        let brieskorn = WlyTriple::new(p3v("x^2 + y^3 + z^6"), p3v("z^7"), wv(3, 2, 1)).unwrap();
        assert!(check_w_doubleprime(&brieskorn, &cfg).unwrap().ok);
    }

    #[test]
    fn profile_quartic_nodes() {
        let cfg = OracleConfig::default();
        let f = p3v("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");
        let prof = singularity_profile(&f, &wv(1, 1, 1), &cfg).unwrap();
        assert_eq!(prof.k, 4);
        assert_eq!(prof.local_mu, vec![1, 1, 1, 1]);
        assert_eq!(prof.mu_tot, 4);
        assert!(prof.certified);
    }

    #[test]
    fn profile_brieskorn_empty() {
        let cfg = OracleConfig::default();
        let prof = singularity_profile(&p3v("x^2 + y^3 + z^6"), &wv(3, 2, 1), &cfg).unwrap();
        assert_eq!(prof.k, 0);
        assert_eq!(prof.mu_tot, 0);
    }

    #[test]
    fn profile_weighted_nodes_and_cover_consistency() {
        // Nodal cubic with torus node at (1,1), pulled through y -> y^2 and
        // homogenized for P = (2,1,1): two torus nodes on the weighted curve.
        let cfg = OracleConfig::default();
        let h2 = p2v("(y - 1)^2 - x*(x - 1)^2");
        let f2 = h2.substitute_power(1, 2);
        let p = wv(2, 1, 1);
        let f = weighted_homogenize(&f2, &p).unwrap();
        let prof = singularity_profile(&f, &p, &cfg).unwrap();
        assert_eq!(prof.k, 2);
        assert_eq!(prof.local_mu, vec![1, 1]);
        assert_eq!(prof.mu_tot, 2);

        // Covering consistency: the pullback curve carries p1 p2 p3 copies
        // of each singular point with the same local numbers.
        let cov = cover_pullback(&f, &p);
        let cov_slice = cov.substitute_value(2, &rat(1));
        let sing = torus_singular_points(&cov_slice, &cfg).unwrap();
        assert_eq!(sing.count as u64, p.product() * prof.k as u64);
        assert_eq!(sing.mu_total(), Some(p.product() * prof.mu_tot));
    }

    #[test]
    fn triple_serde_roundtrip() {
        let p = wv(1, 1, 1);
        let f = p3v("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");
        let t = WlyTriple::new(f, p3v("x^5"), p).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: WlyTriple = serde_json::from_str(&json).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn monomial_tail_is_contained() {
        let f = p3v("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");
        let (h, m) = monomial_tail(&f, &wv(1, 1, 1), 4).unwrap();
        assert_eq!(m, 1);
        assert_eq!(h.num_terms(), 1);
        let npf = NewtonPolyhedron::new(&f).unwrap();
        let nph = NewtonPolyhedron::new(&h).unwrap();
        assert!(npf.contains_polyhedron(&nph));
    }
}
