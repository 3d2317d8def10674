//! Closed-form Milnor numbers, the Teissier triple, and generic plane
//! sections.
//!
//! The section-boundary predictor reconstructs the Newton boundary of a
//! generic plane section f(x, y, ax + by) purely from the boundary data of
//! f: the restriction to z = 0 supplies the on-line segment, the sloped
//! coordinate-plane edges supply the axis intercepts, and a term x^alpha z
//! (or y^beta z) supplies the near-axis points that appear when an endpoint
//! of the segment sits away from the axes. Generic draws are then checked
//! against the prediction, never averaged.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local::OracleConfig;
use crate::newton::{newton_number_2d, newton_number_stabilized, is_convenient, NewtonPolyhedron};
use crate::poly::{rat, Exponents, Polynomial, Rational};
use crate::weighted::{
    initial_form, multiplicity, p_degree, weighted_homogeneous_mu, SingularityProfile,
    WeightVector, WlyTriple,
};

/// The Teissier triple: Milnor number of the germ, of its generic plane
/// section, and the multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuStar {
    pub mu: u64,
    pub mu2: u64,
    pub mult: u64,
}

/// Which case of the section theorem applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionCase {
    EqualWeights,
    P2GreaterP3,
    P2EqualsP3,
}

/// Predicted Newton boundary of a generic plane section, with the special
/// points that the case analysis produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionPrediction {
    /// Vertices of the predicted boundary, sorted by increasing x.
    pub predicted_boundary: Vec<(u32, u32)>,
    pub case: SectionCase,
    /// Named constructed points with their origin.
    pub special_points: Vec<(String, (u32, u32))>,
    /// Whether the covered cases of the theorem promise non-degeneracy.
    pub nd_predicted: bool,
    /// In the p1 > p2 = p3 case the theorem needs the boundary hypothesis
    /// checked per draw.
    pub needs_extra_hypothesis: bool,
    /// Both segment endpoints sit away from the axes; the construction was
    /// applied on both sides and the union hulled. Flagged for review.
    pub both_sides_interior: bool,
}

/// The product formula (d/p1 - 1)(d/p2 - 1)(d/p3 - 1), which must come out
/// a non-negative integer.
pub fn milnor_weighted_homogeneous(p: &WeightVector, d: u64) -> Result<u64> {
    let v = weighted_homogeneous_mu(p, d)?;
    if v < 0 {
        return Err(Error::NonIntegral(format!(
            "negative product {v}: no isolated representative"
        )));
    }
    Ok(v as u64)
}

/// mu_+ = (d/p1 - 1)(d/p2 - 1)(d/p3 - 1) + m * mu_tot.
pub fn milnor_wly(t: &WlyTriple, profile: &SingularityProfile) -> Result<u64> {
    let base = milnor_weighted_homogeneous(&t.p, t.d)?;
    Ok(base + t.m * profile.mu_tot)
}

/// Solves the mu_+ identity for mu_tot using the rank oracle on g = f + h.
pub fn mu_tot_reverse(t: &WlyTriple, cfg: &OracleConfig) -> Result<u64> {
    let oracle = crate::local::milnor_rank_oracle(&t.polynomial(), cfg)?;
    let mu = oracle.colength.ok_or_else(|| {
        Error::CapExceeded(format!(
            "rank oracle for g did not stabilize below delta = {}",
            oracle.delta_used
        ))
    })?;
    let base = milnor_weighted_homogeneous(&t.p, t.d)?;
    let diff = mu
        .checked_sub(base)
        .ok_or_else(|| Error::NonIntegral(format!("mu(g) = {mu} below the product {base}")))?;
    if diff % t.m != 0 {
        return Err(Error::NonIntegral(format!(
            "mu(g) - product = {diff} is not divisible by m = {}",
            t.m
        )));
    }
    Ok(diff / t.m)
}

/// Predicts the Newton boundary of a generic plane section of a
/// weighted-homogeneous f on the boundary data alone.
pub fn predict_section_boundary(
    f: &Polynomial,
    p: &WeightVector,
) -> Result<SectionPrediction> {
    if f.arity() != 3 {
        return Err(Error::Arity {
            expected: 3,
            got: f.arity(),
        });
    }
    let (dmin, dmax) = p_degree(f, p)?;
    if dmin != dmax {
        return Err(Error::InvalidInput(
            "prediction requires a weighted homogeneous polynomial".into(),
        ));
    }
    let d = dmin;

    if p.is_trivial() {
        // Generic section of a reduced plane of degree d: the full segment.
        let dd = d as u32;
        return Ok(SectionPrediction {
            predicted_boundary: vec![(0, dd), (dd, 0)],
            case: SectionCase::EqualWeights,
            special_points: Vec::new(),
            nd_predicted: true,
            needs_extra_hypothesis: false,
            both_sides_interior: false,
        });
    }

    let fxy = f.substitute_value(2, &Rational::zero());
    if fxy.is_zero() {
        return Err(Error::InvalidInput(
            "restriction to z = 0 vanishes; the polynomial is not in W'".into(),
        ));
    }
    // Endpoints of the segment on the line p1 x + p2 y = d.
    let seg: Vec<(u32, u32)> = fxy
        .support()
        .iter()
        .map(|e| (e.get(0), e.get(1)))
        .collect();
    let a_end = *seg.iter().max_by_key(|&&(x, _)| x).unwrap();
    let b_end = *seg.iter().min_by_key(|&&(x, _)| x).unwrap();

    let mut special = vec![
        ("A".to_string(), a_end),
        ("B".to_string(), b_end),
    ];

    if p.p2 == p.p3 {
        // p1 > p2 = p3: the boundary hypothesis must be verified per draw.
        let boundary = lower_hull(&[a_end, b_end]);
        return Ok(SectionPrediction {
            predicted_boundary: boundary,
            case: SectionCase::P2EqualsP3,
            special_points: special,
            nd_predicted: true,
            needs_extra_hypothesis: true,
            both_sides_interior: false,
        });
    }

    // p2 > p3. Substituted terms from z^j h_j land strictly above the line,
    // so the section boundary is the segment extended by the axis intercepts
    // and, when an endpoint sits away from its axis, by the image of the
    // forced x^alpha z (resp. y^beta z) term.
    let mut candidates = vec![a_end, b_end];

    let fxz = f.substitute_value(1, &Rational::zero());
    if fxz.is_zero() {
        return Err(Error::InvalidInput(
            "restriction to y = 0 vanishes; the polynomial is not in W'".into(),
        ));
    }
    let dx = fxz
        .support()
        .iter()
        .map(|e| e.get(0) + e.get(1))
        .min()
        .unwrap();
    candidates.push((dx, 0));
    special.push(("D_x".to_string(), (dx, 0)));

    let fyz = f.substitute_value(0, &Rational::zero());
    if fyz.is_zero() {
        return Err(Error::InvalidInput(
            "restriction to x = 0 vanishes; the polynomial is not in W'".into(),
        ));
    }
    let dy = fyz
        .support()
        .iter()
        .map(|e| e.get(0) + e.get(1))
        .min()
        .unwrap();
    candidates.push((0, dy));
    special.push(("D_y".to_string(), (0, dy)));

    let x_interior = a_end.1 >= 2;
    let y_interior = b_end.0 >= 2;
    let mut nd_predicted = true;
    if x_interior {
        // The forced term x^alpha z substitutes to x^alpha y and x^(alpha+1).
        match forced_axis_term(f, p, d, 0) {
            Some(alpha) => {
                candidates.push((alpha, 1));
                candidates.push((alpha + 1, 0));
                special.push(("C".to_string(), (alpha, 1)));
                special.push(("C'".to_string(), (alpha + 1, 0)));
            }
            None => nd_predicted = false,
        }
    }
    if y_interior {
        match forced_axis_term(f, p, d, 1) {
            Some(beta) => {
                candidates.push((1, beta));
                candidates.push((0, beta + 1));
                special.push(("C_y".to_string(), (1, beta)));
                special.push(("C_y'".to_string(), (0, beta + 1)));
            }
            None => nd_predicted = false,
        }
    }

    Ok(SectionPrediction {
        predicted_boundary: lower_hull(&candidates),
        case: SectionCase::P2GreaterP3,
        special_points: special,
        nd_predicted,
        needs_extra_hypothesis: false,
        both_sides_interior: x_interior && y_interior,
    })
}

/// Exponent alpha of the term x^alpha z (var = 0) or y^alpha z (var = 1)
/// that an interior segment endpoint forces into f.
fn forced_axis_term(f: &Polynomial, p: &WeightVector, d: u64, var: usize) -> Option<u32> {
    let w = if var == 0 { p.p1 } else { p.p2 } as u64;
    let num = d.checked_sub(p.p3 as u64)?;
    if num % w != 0 {
        return None;
    }
    let alpha = (num / w) as u32;
    let mut e = [0u32; 3];
    e[var] = alpha;
    e[2] = 1;
    if f.coeff(&Exponents(e)).is_zero() {
        None
    } else {
        Some(alpha)
    }
}

/// Vertices of the staircase hull of a 2-dimensional point set, sorted by
/// increasing x.
fn lower_hull(points: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut formal = Polynomial::zero(2);
    for &(x, y) in points {
        let e = Exponents::new(&[x, y]);
        if formal.coeff(&e).is_zero() {
            formal.add_term(e, rat(1));
        }
    }
    let np = NewtonPolyhedron::new(&formal).expect("nonempty point set");
    let mut out: Vec<(u32, u32)> = np
        .vertices()
        .iter()
        .map(|e| (e.get(0), e.get(1)))
        .collect();
    out.sort();
    out
}

/// One generic-section draw: the slope pair, boundary, and Newton number.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionDraw {
    pub a: String,
    pub b: String,
    pub boundary: Vec<(u32, u32)>,
    pub nu: i64,
}

/// Result of the randomized generic-section analysis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenericSection {
    pub nu: i64,
    pub boundary: Vec<(u32, u32)>,
    /// All draws agreed, and the boundary matched the prediction whenever
    /// the covered cases apply.
    pub consistency: bool,
    pub prediction_match: Option<bool>,
    /// For p1 > p2 = p3: whether the extra boundary hypothesis held on
    /// every draw.
    pub hypothesis_holds: Option<bool>,
    pub draws: Vec<SectionDraw>,
}

/// Computes the Newton boundary and Newton number of g(x, y, ax + by) for
/// seeded random draws of (a, b) and checks the results against each other
/// and against the predictor.
pub fn generic_section(
    g: &Polynomial,
    p: &WeightVector,
    trials: u32,
    seed: u64,
) -> Result<GenericSection> {
    if g.arity() != 3 {
        return Err(Error::Arity {
            expected: 3,
            got: g.arity(),
        });
    }
    if trials == 0 {
        return Err(Error::InvalidInput("at least one trial required".into()));
    }
    let f = initial_form(g, p)?;
    let prediction = predict_section_boundary(&f, p)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws: Vec<SectionDraw> = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        let a = draw_nonzero(&mut rng);
        let b = draw_nonzero(&mut rng);
        let fh = g.substitute_linear(&a, &b)?;
        if fh.is_zero() {
            return Err(Error::GenericityFailure(
                "section vanished identically".into(),
            ));
        }
        let np = NewtonPolyhedron::new(&fh)?;
        let mut boundary: Vec<(u32, u32)> =
            np.vertices().iter().map(|e| (e.get(0), e.get(1))).collect();
        boundary.sort();
        let nu = if is_convenient(&fh) {
            newton_number_2d(&fh)?
        } else {
            newton_number_stabilized(&fh, 60)?
        };
        draws.push(SectionDraw {
            a: crate::poly::format_rational(&a),
            b: crate::poly::format_rational(&b),
            boundary,
            nu,
        });
    }

    let nu = draws[0].nu;
    let boundary = draws[0].boundary.clone();
    let agree = draws
        .iter()
        .all(|d| d.nu == nu && d.boundary == boundary);
    if !agree {
        let mut report = String::from("draws disagree:");
        for d in &draws {
            report.push_str(&format!(
                " [(a,b)=({},{}) nu={} boundary={:?}]",
                d.a, d.b, d.nu, d.boundary
            ));
        }
        return Err(Error::GenericityFailure(report));
    }

    let (prediction_match, hypothesis_holds) = match prediction.case {
        SectionCase::EqualWeights | SectionCase::P2GreaterP3 => {
            (Some(boundary == prediction.predicted_boundary), None)
        }
        SectionCase::P2EqualsP3 => {
            let holds = boundary == prediction.predicted_boundary;
            (None, Some(holds))
        }
    };
    let consistency = agree && prediction_match.unwrap_or(true);
    Ok(GenericSection {
        nu,
        boundary,
        consistency,
        prediction_match,
        hypothesis_holds,
        draws,
    })
}

fn draw_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let v: i64 = rng.gen_range(-10_000..=10_000);
        if v != 0 {
            return rat(v);
        }
    }
}

/// The Teissier triple of a weighted-Le-Yomdin polynomial: the closed-form
/// Milnor number, the common section value, and the multiplicity. The chain
/// mu >= mu2 >= mult - 1 is enforced.
pub fn mu_star_triple(
    t: &WlyTriple,
    profile: &SingularityProfile,
    trials: u32,
    seed: u64,
) -> Result<MuStar> {
    let mu = milnor_wly(t, profile)?;
    let g = t.polynomial();
    let section = generic_section(&g, &t.p, trials, seed)?;
    if !section.consistency {
        return Err(Error::GenericityFailure(
            "section boundary disagreed with the prediction".into(),
        ));
    }
    if section.nu < 0 {
        return Err(Error::InvalidInput("negative section number".into()));
    }
    let mu2 = section.nu as u64;
    let mult = multiplicity(&g)?;
    if !(mu >= mu2 && mu2 + 1 >= mult) {
        return Err(Error::InvalidInput(format!(
            "Teissier chain violated: mu = {mu}, mu2 = {mu2}, mult = {mult}"
        )));
    }
    Ok(MuStar { mu, mu2, mult })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::OracleConfig;
    use crate::poly::parse;
    use crate::weighted::singularity_profile;

    fn p3(s: &str) -> Polynomial {
        parse(s, &["x", "y", "z"]).unwrap()
    }
    fn wv(a: u32, b: u32, c: u32) -> WeightVector {
        WeightVector::new(a, b, c).unwrap()
    }

    #[test]
    fn product_formula_values() {
        assert_eq!(milnor_weighted_homogeneous(&wv(3, 2, 1), 6).unwrap(), 10);
        assert_eq!(milnor_weighted_homogeneous(&wv(1, 1, 1), 4).unwrap(), 27);
        assert_eq!(milnor_weighted_homogeneous(&wv(2, 1, 1), 12).unwrap(), 605);
        // Non-integral data is rejected: (7/5 - 1)(7/3 - 1)(7 - 1) = 16/5.
        assert!(milnor_weighted_homogeneous(&wv(5, 3, 1), 7).is_err());
    }

    #[test]
    fn mu_wly_and_reverse_on_quartic() {
        let cfg = OracleConfig::default();
        let p = wv(1, 1, 1);
        let f = p3("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");
        let t = WlyTriple::new(f.clone(), p3("x^5"), p).unwrap();
        let profile = singularity_profile(&f, &p, &cfg).unwrap();
        assert_eq!(milnor_wly(&t, &profile).unwrap(), 31);
        assert_eq!(mu_tot_reverse(&t, &cfg).unwrap(), 4);

        // m = 2 tail with zero extra contribution on a smooth initial part.
        let t = WlyTriple::new(p3("x^2 + y^3 + z^6"), p3("z^8"), wv(3, 2, 1)).unwrap();
        assert_eq!(mu_tot_reverse(&t, &cfg).unwrap(), 0);
    }

    #[test]
    fn prediction_pure_powers() {
        // x^4 + y^5 + z^10 with weights (5, 4, 2): both endpoints on axes.
        let f = p3("x^4 + y^5 + z^10");
        let pred = predict_section_boundary(&f, &wv(5, 4, 2)).unwrap();
        assert_eq!(pred.case, SectionCase::P2GreaterP3);
        assert_eq!(pred.predicted_boundary, vec![(0, 5), (4, 0)]);
        assert!(pred.nd_predicted);
        assert!(!pred.both_sides_interior);
    }

    #[test]
    fn prediction_equal_weights() {
        let f = p3("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");
        let pred = predict_section_boundary(&f, &wv(1, 1, 1)).unwrap();
        assert_eq!(pred.case, SectionCase::EqualWeights);
        assert_eq!(pred.predicted_boundary, vec![(0, 4), (4, 0)]);
    }

    #[test]
    fn prediction_with_interior_endpoint() {
        // f = x^3 y^2 + y^7 + x^4 z + z^21, weights (5, 3, 1): the endpoint
        // A = (3, 2) sits away from the x-axis and forces x^4 z; C' = (5, 0)
        // lands on the line through A and C, so the boundary is A -- C'.
        let f = p3("x^3*y^2 + y^7 + x^4*z + z^21");
        let p = wv(5, 3, 1);
        assert!(f.is_weighted_homogeneous(&p.as_array()));
        let pred = predict_section_boundary(&f, &p).unwrap();
        assert_eq!(pred.case, SectionCase::P2GreaterP3);
        assert_eq!(pred.predicted_boundary, vec![(0, 7), (3, 2), (5, 0)]);
        assert!(pred
            .special_points
            .iter()
            .any(|(n, pt)| n == "C" && *pt == (4, 1)));
    }

    #[test]
    fn prediction_sloped_axis_term() {
        // f = x^5 + y^6 + x z^12, weights (6, 5, 2): the x-intercept of the
        // section comes from the xz-edge endpoint with the smaller z power.
        let f = p3("x^5 + y^6 + x*z^12");
        let p = wv(6, 5, 2);
        assert!(f.is_weighted_homogeneous(&p.as_array()));
        let pred = predict_section_boundary(&f, &p).unwrap();
        assert_eq!(pred.predicted_boundary, vec![(0, 6), (5, 0)]);
    }

    #[test]
    fn section_quartic_nu_nine() {
        let g = p3("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2) + x^5");
        let p = wv(1, 1, 1);
        let s = generic_section(&g, &p, 5, 42).unwrap();
        assert_eq!(s.nu, 9);
        assert!(s.consistency);
        assert_eq!(s.prediction_match, Some(true));
    }

    #[test]
    fn section_pure_powers_nu() {
        let g = p3("x^4 + y^5 + z^10");
        let s = generic_section(&g, &wv(5, 4, 2), 5, 7).unwrap();
        assert_eq!(s.nu, 12);
        assert!(s.consistency);
    }

    #[test]
    fn section_brieskorn_matches_oracle() {
        let cfg = OracleConfig::default();
        let g = p3("x^2 + y^3 + z^6");
        let p = wv(3, 2, 1);
        let s = generic_section(&g, &p, 5, 11).unwrap();
        // Cross-check one draw against the rank oracle.
        let fh = g
            .substitute_linear(&rat(17), &rat(-23))
            .unwrap();
        let mu = crate::local::milnor_rank_oracle(&fh, &cfg)
            .unwrap()
            .colength
            .unwrap();
        assert_eq!(s.nu as u64, mu);
        assert_eq!(s.nu, 2);
    }

    #[test]
    fn mu_star_quartic() {
        let cfg = OracleConfig::default();
        let p = wv(1, 1, 1);
        let f = p3("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");
        let t = WlyTriple::new(f.clone(), p3("x^5"), p).unwrap();
        let profile = singularity_profile(&f, &p, &cfg).unwrap();
        let star = mu_star_triple(&t, &profile, 5, 42).unwrap();
        assert_eq!(
            star,
            MuStar {
                mu: 31,
                mu2: 9,
                mult: 4
            }
        );
    }

    #[test]
    fn mu_star_brieskorn() {
        let cfg = OracleConfig::default();
        let p = wv(3, 2, 1);
        let f = p3("x^2 + y^3 + z^6");
        let t = WlyTriple::new(f.clone(), p3("z^7"), p).unwrap();
        let profile = singularity_profile(&f, &p, &cfg).unwrap();
        let star = mu_star_triple(&t, &profile, 5, 42).unwrap();
        assert_eq!(
            star,
            MuStar {
                mu: 10,
                mu2: 2,
                mult: 2
            }
        );
    }
}
