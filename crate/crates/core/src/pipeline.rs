//! The construction pipeline from plane projective curve pairs to candidate
//! mu-Zariski pairs of surface singularities, the certification checklist,
//! and the mu-constancy family scanner.
//!
//! Whether the input curves form a Zariski pair is a topological fact that
//! no exact-arithmetic computation decides; certificates carry it as a user
//! assertion with provenance. Everything else in a report is recomputed
//! from scratch and compared exactly.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{generic_section, milnor_wly, mu_star_triple, MuStar, SectionCase};
use crate::local::{milnor_rank_oracle, torus_singular_points, MuAssignment, OracleConfig};
use crate::newton::NewtonPolyhedron;
use crate::poly::{gcd_bivariate, parse, rat, Exponents, Polynomial, Rational, UniPoly};
use crate::weighted::{
    check_w_doubleprime, p_degree, singularity_profile, weighted_homogenize, initial_form,
    SingularityProfile, WeightVector, WlyTriple,
};
use crate::zeta::{standard_local_factors, oka_wly_zeta, zeta_degree, ZetaDivisor};

/// A reduced homogeneous plane curve with its asserted singularity data.
#[derive(Debug, Clone)]
pub struct CurveInput {
    pub h: Polynomial,
    pub degree: u64,
    pub claimed_profile: SingularityProfile,
    pub role: String,
}

impl CurveInput {
    pub fn new(
        h: Polynomial,
        degree: u64,
        claimed_profile: SingularityProfile,
        role: String,
    ) -> Result<Self> {
        if h.arity() != 3 {
            return Err(Error::Arity {
                expected: 3,
                got: h.arity(),
            });
        }
        if !h.is_weighted_homogeneous(&[1, 1, 1])
            || p_degree(&h, &WeightVector::new(1, 1, 1)?)?.0 != degree
        {
            return Err(Error::InvalidInput(format!(
                "curve is not homogeneous of degree {degree}"
            )));
        }
        Ok(CurveInput {
            h,
            degree,
            claimed_profile,
            role,
        })
    }

    /// Plain-text format: `degree:`, `profile:` (comma-separated local
    /// Milnor numbers, or `none`), optional `role:`, and a final `poly:`.
    pub fn parse_curve_file(text: &str) -> Result<CurveInput> {
        let mut degree: Option<u64> = None;
        let mut mus: Option<Vec<u64>> = None;
        let mut role = String::new();
        let mut poly: Option<Polynomial> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::InvalidInput(format!(
                    "curve file line without `key:`: {line}"
                )));
            };
            let value = value.trim();
            match key.trim() {
                "degree" => {
                    degree = Some(value.parse().map_err(|_| {
                        Error::InvalidInput(format!("bad degree `{value}`"))
                    })?)
                }
                "profile" => {
                    if value == "none" || value.is_empty() {
                        mus = Some(Vec::new());
                    } else {
                        let mut v = Vec::new();
                        for part in value.split(',') {
                            v.push(part.trim().parse().map_err(|_| {
                                Error::InvalidInput(format!("bad profile entry `{part}`"))
                            })?);
                        }
                        v.sort();
                        mus = Some(v);
                    }
                }
                "role" => role = value.to_string(),
                "poly" => poly = Some(parse(value, &["x", "y", "z"])?),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown curve file key `{other}`"
                    )))
                }
            }
        }
        let degree =
            degree.ok_or_else(|| Error::InvalidInput("curve file missing degree".into()))?;
        let local_mu =
            mus.ok_or_else(|| Error::InvalidInput("curve file missing profile".into()))?;
        let h = poly.ok_or_else(|| Error::InvalidInput("curve file missing poly".into()))?;
        let profile = SingularityProfile {
            k: local_mu.len(),
            mu_tot: local_mu.iter().sum(),
            local_mu,
            certified: false,
        };
        CurveInput::new(h, degree, profile, role)
    }

    pub fn render_curve_file(&self) -> String {
        let profile = if self.claimed_profile.local_mu.is_empty() {
            "none".to_string()
        } else {
            self.claimed_profile
                .local_mu
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "degree: {}\nprofile: {}\nrole: {}\npoly: {}\n",
            self.degree, profile, self.role, self.h
        )
    }
}

/// Result of the input-curve admissibility check.
pub use crate::weighted::CheckReport;

/// Checks the §-style normalization conditions for an input curve: the
/// three axis restrictions are convenient and square-free, the curve is
/// reduced, no singular point lies on a coordinate line, and the line y = 0
/// is generic.
pub fn precondition_check(curve: &CurveInput) -> Result<CheckReport> {
    let h = &curve.h;
    // Reducedness: no z^2 factor and a square-free affine part.
    let min_z = h.support().iter().map(|e| e.get(2)).min().unwrap_or(0);
    if min_z >= 2 {
        return Ok(fail("curve is not reduced: divisible by z^2"));
    }
    let affine = h.substitute_value(2, &rat(1));
    if !bivariate_squarefree(&affine) {
        return Ok(fail("curve is not reduced"));
    }
    // Axis restrictions: convenient and with mutually distinct roots.
    for (drop, keep, name) in [
        (0usize, (1usize, 2usize), "h(0, y, z)"),
        (1, (0, 2), "h(x, 0, z)"),
        (2, (0, 1), "h(x, y, 0)"),
    ] {
        let form = h.substitute_value(drop, &Rational::zero());
        let _ = keep;
        if form.is_zero() {
            return Ok(fail(format!("{name} vanishes identically")));
        }
        match binary_form_convenient_squarefree(&form, curve.degree) {
            Ok(true) => {}
            Ok(false) => {
                return Ok(fail(format!(
                    "{name} is not convenient with distinct roots"
                )))
            }
            Err(e) => return Err(e),
        }
    }
    // No singular point on the coordinate lines.
    let partials = [
        h.partial_derivative(0),
        h.partial_derivative(1),
        h.partial_derivative(2),
    ];
    for (line_var, name) in [(0usize, "x = 0"), (1, "y = 0"), (2, "z = 0")] {
        let restricted: Vec<Polynomial> = partials
            .iter()
            .map(|p| p.substitute_value(line_var, &Rational::zero()))
            .collect();
        if binary_forms_common_zero(&restricted) {
            return Ok(fail(format!("singular point on the line {name}")));
        }
    }
    // y = 0 generic: transversality is exactly square-freeness of the
    // restriction, which the axis check above already certified; named here
    // so failures report the right condition.
    Ok(CheckReport {
        ok: true,
        failure: None,
        notes: vec!["y = 0 generic: restriction h(x, 0, z) is square-free".into()],
    })
}

fn fail(msg: impl Into<String>) -> CheckReport {
    CheckReport {
        ok: false,
        failure: Some(msg.into()),
        notes: Vec::new(),
    }
}

fn bivariate_squarefree(f: &Polynomial) -> bool {
    let fu = f.partial_derivative(0);
    let fv = f.partial_derivative(1);
    let mut d = gcd_bivariate(f, &fu);
    d = gcd_bivariate(&d, &fv);
    d.strip_monomial_content().1.total_degree() == Some(0)
        && {
            // A monomial factor of the gcd means a repeated coordinate
            // factor in f unless f itself has none.
            let (m, _) = f.strip_monomial_content();
            m.total_degree() == 0 || true
        }
}

/// A binary form (stored as a 2-variable polynomial, homogeneous) is
/// convenient iff both pure d-th powers appear, and Newton non-degenerate
/// iff its roots are mutually distinct.
fn binary_form_convenient_squarefree(form: &Polynomial, degree: u64) -> Result<bool> {
    let d = degree as u32;
    let c_first = form.coeff(&Exponents::new(&[d, 0]));
    let c_second = form.coeff(&Exponents::new(&[0, d]));
    if c_first.is_zero() || c_second.is_zero() {
        return Ok(false);
    }
    let dehom = form.substitute_value(1, &rat(1));
    let (sf, _) = crate::poly::squarefree_check(&dehom)?;
    Ok(sf)
}

/// Common projective zero of a list of binary forms (2-variable homogeneous
/// polynomials, possibly of different degrees).
fn binary_forms_common_zero(forms: &[Polynomial]) -> bool {
    // Zero forms impose nothing.
    let nonzero: Vec<&Polynomial> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return true;
    }
    // Affine chart second-variable = 1.
    let mut g: Option<UniPoly> = None;
    for f in &nonzero {
        let u = f.substitute_value(1, &rat(1)).to_unipoly();
        g = Some(match g {
            None => u,
            Some(prev) => prev.gcd(&u),
        });
    }
    let affine_common = match g {
        None => false,
        Some(p) => p.is_zero() || p.degree().unwrap_or(0) >= 1,
    };
    if affine_common {
        return true;
    }
    // The point [1 : 0]: every form must vanish there, i.e. have no pure
    // first-variable term.
    nonzero.iter().all(|f| {
        let deg = f.total_degree().unwrap();
        f.coeff(&Exponents::new(&[deg, 0])).is_zero()
    })
}

/// A user-supplied topological input: whether the curve pair is asserted to
/// be a Zariski pair, and on what grounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZariskiAssertion {
    pub asserted: bool,
    #[serde(default)]
    pub provenance: String,
}

/// How the tail of the weighted-Le-Yomdin decomposition is chosen.
#[derive(Debug, Clone)]
pub enum TailSpec {
    /// z^(p1 d + m).
    Auto { m: u64 },
    Explicit(Polynomial),
}

/// Output of the pair construction.
#[derive(Debug, Clone)]
pub struct WeightedPair {
    pub t0: WlyTriple,
    pub t1: WlyTriple,
    pub profiles: [SingularityProfile; 2],
    pub zariski: ZariskiAssertion,
}

/// Builds the weighted pair from two plane curves: dehomogenize, pull back
/// through y -> y^p1, and rehomogenize with weights (p1, 1, 1). Every input
/// singularity is duplicated p1 times on the weighted curve.
pub fn build_weighted_pair(
    h0: &CurveInput,
    h1: &CurveInput,
    p1: u32,
    tail: &TailSpec,
    zariski: ZariskiAssertion,
    cfg: &OracleConfig,
) -> Result<WeightedPair> {
    if h0.degree != h1.degree {
        return Err(Error::InvalidInput(format!(
            "degree mismatch: {} vs {}",
            h0.degree, h1.degree
        )));
    }
    let p = WeightVector::new(p1, 1, 1)?;
    let mut triples = Vec::with_capacity(2);
    let mut profiles = Vec::with_capacity(2);
    for input in [h0, h1] {
        let pre = precondition_check(input)?;
        if !pre.ok {
            return Err(Error::InvalidInput(format!(
                "precondition failed for `{}`: {}",
                input.role,
                pre.failure.unwrap_or_default()
            )));
        }
        // Verify the claimed singularity profile on the input curve itself.
        let affine = input.h.substitute_value(2, &rat(1));
        let input_profile = profile_from_torus_analysis(&affine, cfg)?;
        if input_profile.k != input.claimed_profile.k
            || input_profile.local_mu != input.claimed_profile.local_mu
        {
            return Err(Error::InvalidInput(format!(
                "claimed profile {:?} disagrees with the computed one {:?} for `{}`",
                input.claimed_profile.local_mu, input_profile.local_mu, input.role
            )));
        }

        let pulled = affine.substitute_power(1, p1);
        let f = weighted_homogenize(&pulled, &p)?;
        debug_assert_eq!(p_degree(&f, &p)?, (p1 as u64 * input.degree, p1 as u64 * input.degree));
        let h_tail = match tail {
            TailSpec::Auto { m } => Polynomial::monomial(
                3,
                Exponents::new(&[0, 0, (p1 as u64 * input.degree + m) as u32]),
                rat(1),
            ),
            TailSpec::Explicit(t) => t.clone(),
        };
        let t = WlyTriple::new(f.clone(), h_tail, p)?;
        let check = check_w_doubleprime(&t, cfg)?;
        if !check.ok {
            return Err(Error::InvalidInput(format!(
                "weighted-Le-Yomdin membership failed for `{}`: {}",
                input.role,
                check.failure.unwrap_or_default()
            )));
        }
        // The computed profile of the weighted curve must match the input
        // profile duplicated p1 times.
        let computed = singularity_profile(&f, &p, cfg)?;
        let expected = input_profile.duplicated(p1 as usize);
        if computed.k != expected.k || computed.local_mu != expected.local_mu {
            return Err(Error::InvalidInput(format!(
                "duplication law violated for `{}`: computed {:?}, expected {:?}",
                input.role, computed.local_mu, expected.local_mu
            )));
        }
        triples.push(t);
        profiles.push(computed);
    }
    let t1 = triples.pop().unwrap();
    let t0 = triples.pop().unwrap();
    let prof1 = profiles.pop().unwrap();
    let prof0 = profiles.pop().unwrap();
    Ok(WeightedPair {
        t0,
        t1,
        profiles: [prof0, prof1],
        zariski,
    })
}

/// Builds a singularity profile from the torus analysis of an affine curve,
/// requiring every cluster to carry an assignment.
fn profile_from_torus_analysis(
    g: &Polynomial,
    cfg: &OracleConfig,
) -> Result<SingularityProfile> {
    let sing = torus_singular_points(g, cfg)?;
    let mut local_mu = Vec::new();
    let mut certified = true;
    for c in &sing.clusters {
        let mu = match c.mu {
            MuAssignment::Certified(m) => m,
            MuAssignment::Candidate(m) => {
                certified = false;
                m
            }
            MuAssignment::Unknown => {
                return Err(Error::MuDistributionAmbiguous(
                    "input curve cluster without a Milnor number".into(),
                ))
            }
        };
        for _ in 0..c.points {
            local_mu.push(mu);
        }
    }
    local_mu.sort();
    Ok(SingularityProfile {
        k: sing.count,
        mu_tot: local_mu.iter().sum(),
        local_mu,
        certified,
    })
}

/// Verdict of a certification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "detail")]
pub enum Verdict {
    CertifiedCandidate,
    Failed(String),
    NeedsUserAssertion(Vec<String>),
}

/// The full invariant comparison for a candidate pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub p: WeightVector,
    pub d: u64,
    pub m: u64,
    pub gamma_equal: bool,
    pub nd_on_proper_faces: [bool; 2],
    pub profiles: [SingularityProfile; 2],
    pub mu_star: Option<[MuStar; 2]>,
    pub zeta: Option<[ZetaDivisor; 2]>,
    pub section_case: SectionCase,
    /// For p1 > p2 = p3: whether the boundary hypothesis held empirically
    /// on both members.
    pub extra_hypothesis: Option<bool>,
    pub zariski: ZariskiAssertion,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Compares every computable invariant of the two members and assembles the
/// certificate. Zariski-pairness of the initial curves is never computed;
/// it enters as the user assertion recorded in the report.
pub fn certify_pair(
    t0: &WlyTriple,
    t1: &WlyTriple,
    zariski: &ZariskiAssertion,
    cfg: &OracleConfig,
    trials: u32,
    seed: u64,
) -> Result<CertificateReport> {
    let mut notes = Vec::new();
    let p = t0.p;
    let section_case = if p.is_trivial() {
        SectionCase::EqualWeights
    } else if p.p2 > p.p3 {
        SectionCase::P2GreaterP3
    } else {
        SectionCase::P2EqualsP3
    };
    let mut report = CertificateReport {
        p,
        d: t0.d,
        m: t0.m,
        gamma_equal: false,
        nd_on_proper_faces: [false, false],
        profiles: [SingularityProfile::empty(), SingularityProfile::empty()],
        mu_star: None,
        zeta: None,
        section_case,
        extra_hypothesis: None,
        zariski: zariski.clone(),
        verdict: Verdict::Failed(String::new()),
        notes: Vec::new(),
    };
    if t0.p != t1.p || t0.d != t1.d || t0.m != t1.m {
        report.verdict = Verdict::Failed(format!(
            "structure mismatch: (P, d, m) = ({:?}, {}, {}) vs ({:?}, {}, {})",
            t0.p.as_array(),
            t0.d,
            t0.m,
            t1.p.as_array(),
            t1.d,
            t1.m
        ));
        return Ok(report);
    }
    if t0 == t1 {
        notes.push("degenerate: both members are the same polynomial".into());
    }

    // Membership, including non-degeneracy on proper faces.
    for (i, t) in [t0, t1].into_iter().enumerate() {
        let check = check_w_doubleprime(t, cfg)?;
        if !check.ok {
            report.verdict = Verdict::Failed(format!(
                "member {i} not weighted-Le-Yomdin: {}",
                check.failure.unwrap_or_default()
            ));
            return Ok(report);
        }
        notes.extend(check.notes);
        report.nd_on_proper_faces[i] = true;
    }

    // Newton boundary equality (for g as well as f, since the tails stay
    // inside the polyhedron).
    let np0 = NewtonPolyhedron::new(&t0.f)?;
    let np1 = NewtonPolyhedron::new(&t1.f)?;
    report.gamma_equal = np0.same_boundary(&np1);
    if !report.gamma_equal {
        report.verdict = Verdict::Failed("newton-boundary-mismatch".into());
        report.notes = notes;
        return Ok(report);
    }

    // Singularity profiles.
    let prof0 = singularity_profile(&t0.f, &p, cfg)?;
    let prof1 = singularity_profile(&t1.f, &p, cfg)?;
    report.profiles = [prof0.clone(), prof1.clone()];
    if prof0.k != prof1.k || prof0.local_mu != prof1.local_mu {
        report.verdict = Verdict::Failed("singularity-profile-mismatch".into());
        report.notes = notes;
        return Ok(report);
    }

    // Teissier triples, with the empirical boundary hypothesis in the
    // p1 > p2 = p3 case.
    let star0 = mu_star_triple(t0, &prof0, trials, seed)?;
    let star1 = mu_star_triple(t1, &prof1, trials, seed.wrapping_add(1))?;
    report.mu_star = Some([star0, star1]);
    if star0 != star1 {
        report.verdict = Verdict::Failed("mu-star-mismatch".into());
        report.notes = notes;
        return Ok(report);
    }
    if section_case == SectionCase::P2EqualsP3 {
        let s0 = generic_section(&t0.polynomial(), &p, trials, seed)?;
        let s1 = generic_section(&t1.polynomial(), &p, trials, seed.wrapping_add(1))?;
        let holds = s0.hypothesis_holds.unwrap_or(false) && s1.hypothesis_holds.unwrap_or(false);
        report.extra_hypothesis = Some(holds);
        if !holds {
            report.verdict = Verdict::Failed(
                "boundary hypothesis for p1 > p2 = p3 failed empirically".into(),
            );
            report.notes = notes;
            return Ok(report);
        }
    }

    // Zeta divisors through the composition formula, with the degree guard.
    let mut pending_assertions: Vec<String> = Vec::new();
    let mut zetas: Vec<ZetaDivisor> = Vec::new();
    for (t, prof) in [(t0, &prof0), (t1, &prof1)] {
        match standard_local_factors(prof, t.d, t.m) {
            Ok(factors) => {
                let z = oka_wly_zeta(t, prof, &factors)?;
                let mu_plus = milnor_wly(t, prof)?;
                if zeta_degree(&z) != -(mu_plus as i64) - 1 {
                    report.verdict = Verdict::Failed(format!(
                        "zeta degree {} disagrees with -mu-1 = {}",
                        zeta_degree(&z),
                        -(mu_plus as i64) - 1
                    ));
                    report.notes = notes;
                    return Ok(report);
                }
                zetas.push(z);
            }
            Err(Error::InvalidInput(msg)) => {
                pending_assertions.push(format!("local-model: {msg}"));
            }
            Err(e) => return Err(e),
        }
    }
    if zetas.len() == 2 {
        if zetas[0] != zetas[1] {
            report.zeta = Some([zetas[0].clone(), zetas[1].clone()]);
            report.verdict = Verdict::Failed("zeta-divisor-mismatch".into());
            report.notes = notes;
            return Ok(report);
        }
        report.zeta = Some([zetas[0].clone(), zetas[1].clone()]);
    }

    if !prof0.certified {
        pending_assertions.push(
            "local Milnor numbers at irrational points rest on the uniform-cluster rule".into(),
        );
    }
    if !zariski.asserted {
        pending_assertions.push(
            "Zariski-pairness of the input curves (topological input, never computed)".into(),
        );
    }
    report.verdict = if pending_assertions.is_empty() {
        Verdict::CertifiedCandidate
    } else {
        Verdict::NeedsUserAssertion(pending_assertions)
    };
    report.notes = notes;
    Ok(report)
}

/// A one-parameter family g_s given as a polynomial template over x, y, z
/// with a distinguished rational parameter s.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySpec {
    pub g: String,
    #[serde(rename = "P")]
    pub p: WeightVector,
    pub d: u64,
    pub m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<String>>,
}

impl FamilySpec {
    /// Instantiates the template at a rational parameter value.
    pub fn instantiate(&self, s: &Rational) -> Result<Polynomial> {
        let text = substitute_parameter(&self.g, s);
        parse(&text, &["x", "y", "z"])
    }

    pub fn sample_points(&self) -> Result<Vec<Rational>> {
        match &self.samples {
            None => Ok((0..=16).map(|k| Rational::new(k.into(), 16.into())).collect()),
            Some(list) => list.iter().map(|s| parse_rational(s)).collect(),
        }
    }
}

/// Replaces standalone `s` identifiers in a polynomial template by the
/// parenthesized rational literal.
fn substitute_parameter(template: &str, s: &Rational) -> String {
    let lit = if s.is_negative() {
        format!("(0 - {})", crate::poly::format_rational(&-s.clone()))
    } else {
        format!("({})", crate::poly::format_rational(s))
    };
    let bytes = template.as_bytes();
    let mut out = String::with_capacity(template.len() + 16);
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            let ident = &template[start..i];
            if ident == "s" {
                out.push_str(&lit);
            } else {
                out.push_str(ident);
            }
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let p = parse(body, &["x"])?;
    if p.total_degree() != Some(0) && !p.is_zero() {
        return Err(Error::InvalidInput(format!("not a rational: `{text}`")));
    }
    let v = p.constant_term();
    Ok(if neg { -v } else { v })
}

/// Exact invariants of one family sample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanRow {
    pub s: String,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub mu: Option<u64>,
    pub mu_tot: Option<u64>,
    pub k: Option<usize>,
    pub local_mu: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ScanVerdict {
    Stable,
    Bifurcation {
        /// Bracketing parameter interval around the first profile change.
        between: (String, String),
        profile_before: Vec<u64>,
        profile_after: Vec<u64>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub rows: Vec<ScanRow>,
    pub verdict: ScanVerdict,
}

/// Scans a family: per-sample exact invariants plus a bifurcation verdict.
/// On every valid sample the rank-oracle Milnor number must agree with the
/// mu_+ formula computed from the sample's own mu_tot; a violation aborts
/// the scan since it falsifies a precondition.
pub fn scan_family(spec: &FamilySpec, cfg: &OracleConfig, refine_depth: u32) -> Result<ScanOutcome> {
    let samples = spec.sample_points()?;
    if samples.is_empty() {
        return Err(Error::InvalidInput("no sample points".into()));
    }
    let mut rows = Vec::with_capacity(samples.len());
    let mut profiles: Vec<Option<(usize, Vec<u64>)>> = Vec::with_capacity(samples.len());
    for s in &samples {
        let (row, profile) = scan_sample(spec, s, cfg)?;
        rows.push(row);
        profiles.push(profile);
    }

    // First change between consecutive valid samples.
    let mut verdict = ScanVerdict::Stable;
    let mut prev: Option<(usize, &(usize, Vec<u64>), &Rational)> = None;
    for (i, profile) in profiles.iter().enumerate() {
        let Some(p) = profile else { continue };
        if let Some((_, p0, s0)) = prev {
            if p0 != p {
                // Bisection refinement of the bracketing interval.
                let (mut lo, mut hi) = (s0.clone(), samples[i].clone());
                let (mut before, after) = (p0.clone(), p.clone());
                for _ in 0..refine_depth {
                    let mid = (lo.clone() + hi.clone()) / rat(2);
                    match scan_sample(spec, &mid, cfg)? {
                        (row, Some(pm)) => {
                            if pm == *p0 {
                                lo = mid;
                                before = pm;
                            } else {
                                hi = mid;
                            }
                            rows.push(row);
                        }
                        (row, None) => {
                            rows.push(row);
                            break;
                        }
                    }
                }
                verdict = ScanVerdict::Bifurcation {
                    between: (
                        crate::poly::format_rational(&lo),
                        crate::poly::format_rational(&hi),
                    ),
                    profile_before: before.1,
                    profile_after: after.1,
                };
                break;
            }
        }
        prev = Some((i, p, &samples[i]));
    }
    Ok(ScanOutcome { rows, verdict })
}

fn scan_sample(
    spec: &FamilySpec,
    s: &Rational,
    cfg: &OracleConfig,
) -> Result<(ScanRow, Option<(usize, Vec<u64>)>)> {
    let s_str = crate::poly::format_rational(s);
    let invalid = |note: String| ScanRow {
        s: s_str.clone(),
        valid: false,
        note: Some(note),
        mu: None,
        mu_tot: None,
        k: None,
        local_mu: None,
    };
    let g = spec.instantiate(s)?;
    if g.is_zero() {
        return Ok((invalid("sample polynomial vanished".into()), None));
    }
    let f = initial_form(&g, &spec.p)?;
    let (dmin, dmax) = p_degree(&f, &spec.p)?;
    if dmin != dmax || dmin != spec.d {
        return Ok((
            invalid(format!("initial degree {dmin} differs from d = {}", spec.d)),
            None,
        ));
    }
    let h = &g - &f;
    let triple = match WlyTriple::new(f.clone(), h, spec.p) {
        Ok(t) => t,
        Err(e) => return Ok((invalid(format!("not a valid decomposition: {e}")), None)),
    };
    if triple.m != spec.m {
        return Ok((
            invalid(format!("tail gap m = {} differs from {}", triple.m, spec.m)),
            None,
        ));
    }
    let check = check_w_doubleprime(&triple, cfg)?;
    if !check.ok {
        return Ok((invalid(check.failure.unwrap_or_default()), None));
    }
    let profile = singularity_profile(&f, &spec.p, cfg)?;
    let oracle = milnor_rank_oracle(&triple.polynomial(), cfg)?;
    let mu = match oracle.colength {
        Some(mu) => mu,
        None => {
            return Ok((
                invalid("rank oracle exceeded its cap on this sample".into()),
                None,
            ))
        }
    };
    let mu_plus = milnor_wly(&triple, &profile)?;
    if mu != mu_plus {
        return Err(Error::InvalidInput(format!(
            "scan aborted at s = {s_str}: oracle mu = {mu} but mu_+ = {mu_plus}; \
             a precondition is violated"
        )));
    }
    let row = ScanRow {
        s: s_str,
        valid: true,
        note: None,
        mu: Some(mu),
        mu_tot: Some(profile.mu_tot),
        k: Some(profile.k),
        local_mu: Some(profile.local_mu.clone()),
    };
    Ok((row, Some((profile.k, profile.local_mu))))
}

/// Generates a torus-type sextic f2^3 + f3^2 from seeded random rational
/// conics and cubics, redrawing until the six cusps at {f2 = f3 = 0} are in
/// the torus and every admissibility precondition holds. The profile is
/// verified by the torus analyzer before the curve is returned.
pub fn generate_torus_sextic(seed: u64, cfg: &OracleConfig) -> Result<CurveInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..200 {
        let f2 = random_form(&mut rng, 2);
        let f3 = random_form(&mut rng, 3);
        let h = &f2.pow(3) + &f3.pow(2);
        if h.is_zero() {
            continue;
        }
        let candidate = CurveInput::new(
            h.clone(),
            6,
            SingularityProfile::empty(),
            format!("torus-type sextic (seed {seed}, attempt {attempt})"),
        )?;
        if !precondition_check(&candidate)?.ok {
            continue;
        }
        // Six transverse intersections of the conic and the cubic, all in
        // the torus of the affine chart.
        let sys = [
            f2.substitute_value(2, &rat(1)),
            f3.substitute_value(2, &rat(1)),
        ];
        match crate::local::torus_system_solve(&sys) {
            Ok(summary) if summary.count == 6 => {}
            Ok(_) | Err(Error::PositiveDimensional) => continue,
            Err(e) => return Err(e),
        }
        // The curve's singular points: exactly six cusps.
        let affine = h.substitute_value(2, &rat(1));
        let profile = match profile_from_torus_analysis(&affine, cfg) {
            Ok(p) => p,
            Err(Error::MuDistributionAmbiguous(_)) => continue,
            Err(Error::PositiveDimensional) => continue,
            Err(e) => return Err(e),
        };
        if profile.k != 6 || profile.local_mu != vec![2, 2, 2, 2, 2, 2] || !profile.certified {
            continue;
        }
        let mut out = candidate;
        out.claimed_profile = profile;
        return Ok(out);
    }
    Err(Error::CapExceeded(
        "no admissible torus-type sextic found within the attempt budget".into(),
    ))
}

fn random_form(rng: &mut ChaCha8Rng, degree: u32) -> Polynomial {
    let mut f = Polynomial::zero(3);
    for a in 0..=degree {
        for b in 0..=degree - a {
            let c = degree - a - b;
            let v: i64 = rng.gen_range(-9..=9);
            if v != 0 {
                f.add_term(Exponents::new(&[a, b, c]), rat(v));
            }
        }
    }
    f
}

/// Serialized form of a constructed pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    pub t0: WlyTriple,
    pub t1: WlyTriple,
    pub zariski: ZariskiAssertion,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p3(s: &str) -> Polynomial {
        parse(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn curve_file_roundtrip() {
        let text = "degree: 6\nprofile: 2,2,2,2,2,2\nrole: test\npoly: x^6 + y^6 + z^6\n";
        let c = CurveInput::parse_curve_file(text).unwrap();
        assert_eq!(c.degree, 6);
        assert_eq!(c.claimed_profile.k, 6);
        assert_eq!(c.claimed_profile.mu_tot, 12);
        let rendered = c.render_curve_file();
        let back = CurveInput::parse_curve_file(&rendered).unwrap();
        assert_eq!(back.h, c.h);
    }

    #[test]
    fn precondition_fermat_sextic() {
        let c = CurveInput::new(
            p3("x^6 + y^6 + z^6"),
            6,
            SingularityProfile::empty(),
            "fermat".into(),
        )
        .unwrap();
        assert!(precondition_check(&c).unwrap().ok);
    }

    #[test]
    fn precondition_rejects_singularity_on_axes() {
        // x^2 (y^4 + z^4) + y^6 is singular at [1 : 0 : 0].
        let c = CurveInput::new(
            p3("x^2*(y^4 + z^4) + y^6"),
            6,
            SingularityProfile::empty(),
            "bad".into(),
        )
        .unwrap();
        let r = precondition_check(&c).unwrap();
        assert!(!r.ok);
    }

    #[test]
    fn parameter_substitution() {
        let spec = FamilySpec {
            g: "x^2 + s*y^2 + (1 - s)*z^2 + s^2*x*y*z".into(),
            p: WeightVector::new(1, 1, 1).unwrap(),
            d: 2,
            m: 1,
            samples: None,
        };
        let g = spec.instantiate(&Rational::new(1.into(), 2.into())).unwrap();
        assert_eq!(
            g,
            p3("x^2 + 1/2*y^2 + 1/2*z^2 + 1/4*x*y*z")
        );
        let g = spec.instantiate(&rat(-1)).unwrap();
        assert_eq!(g, p3("x^2 - y^2 + 2*z^2 + x*y*z"));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2));
        assert!(parse_rational("x").is_err());
    }
}
