//! Monodromy zeta functions as exact divisors.
//!
//! A zeta function is stored as the exponent map of a product
//! prod_k (1 - t^k)^(e_k). The convention is
//! zeta(t) = prod_q det(I - t h_q)^((-1)^(q+1)), pinned by the cusp value
//! (1 - t^6)/((1 - t^2)(1 - t^3)) and by the degree law
//! deg zeta = (-1)^n mu - 1 for an isolated singularity in n variables.
//! Both closed-form evaluators below were calibrated against worked examples
//! before being trusted; the unit tests keep those anchors.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::newton::NewtonPolyhedron;
use crate::poly::{rat, Exponents, Polynomial, Rational};
use crate::weighted::{SingularityProfile, WlyTriple};

/// Formal product prod_k (1 - t^k)^(e_k) with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZetaDivisor {
    exponents: BTreeMap<u64, i64>,
}

impl ZetaDivisor {
    pub fn one() -> Self {
        ZetaDivisor::default()
    }

    pub fn from_pairs(pairs: &[(u64, i64)]) -> Self {
        let mut z = ZetaDivisor::default();
        for &(k, e) in pairs {
            z.add_factor(k, e);
        }
        z
    }

    /// Multiplies by (1 - t^k)^e.
    pub fn add_factor(&mut self, k: u64, e: i64) {
        if e == 0 {
            return;
        }
        assert!(k > 0, "factor index must be positive");
        let entry = self.exponents.entry(k).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.exponents.remove(&k);
        }
    }

    /// Product of zeta functions: exponent-wise sum.
    pub fn mul(&self, other: &ZetaDivisor) -> ZetaDivisor {
        let mut out = self.clone();
        for (&k, &e) in &other.exponents {
            out.add_factor(k, e);
        }
        out
    }

    pub fn pow(&self, n: i64) -> ZetaDivisor {
        let mut out = ZetaDivisor::default();
        for (&k, &e) in &self.exponents {
            out.add_factor(k, e * n);
        }
        out
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exponents.iter().map(|(&k, &e)| (k, e))
    }

    pub fn exponent(&self, k: u64) -> i64 {
        self.exponents.get(&k).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// deg zeta = sum k * e_k.
    pub fn degree(&self) -> i64 {
        self.exponents.iter().map(|(&k, &e)| k as i64 * e).sum()
    }

    /// Smallest factor index, when any.
    pub fn min_index(&self) -> Option<u64> {
        self.exponents.keys().next().copied()
    }
}

impl fmt::Display for ZetaDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        let part = |positive: bool| -> Vec<String> {
            self.exponents
                .iter()
                .filter(|(_, &e)| (e > 0) == positive && e != 0)
                .map(|(&k, &e)| {
                    let base = format!("(1 - t^{k})");
                    if e.abs() == 1 {
                        base
                    } else {
                        format!("{base}^{}", e.abs())
                    }
                })
                .collect()
        };
        let num = part(true);
        let den = part(false);
        let num_s = if num.is_empty() {
            "1".to_string()
        } else {
            num.join("*")
        };
        if den.is_empty() {
            f.write_str(&num_s)
        } else {
            write!(f, "{num_s} / ({})", den.join("*"))
        }
    }
}

impl Serialize for ZetaDivisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(u64, i64)> = self.exponents().collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaDivisor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(u64, i64)> = Vec::deserialize(d)?;
        Ok(ZetaDivisor::from_pairs(&pairs))
    }
}

/// Finite sum of formal symbols Lambda_a with rational coefficients, under
/// the product rule Lambda_a * Lambda_b = gcd(a,b) * Lambda_{lcm(a,b)}.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LambdaExpr {
    coefficients: BTreeMap<u64, Rational>,
}

impl LambdaExpr {
    pub fn zero() -> Self {
        LambdaExpr::default()
    }

    /// c * Lambda_a.
    pub fn term(a: u64, c: Rational) -> Self {
        let mut e = LambdaExpr::default();
        e.add_term(a, c);
        e
    }

    /// Lambda_1, the multiplicative identity.
    pub fn one() -> Self {
        LambdaExpr::term(1, Rational::one())
    }

    /// The symbol for a rational index: Lambda_{a/c} = (1/c) Lambda_a in
    /// lowest terms.
    pub fn rational_index(u: &Rational) -> Self {
        let a = u.numer().to_u64().expect("positive index");
        let c = u.denom().to_u64().expect("positive index");
        LambdaExpr::term(a, Rational::new(1.into(), c.into()))
    }

    pub fn add_term(&mut self, a: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        assert!(a > 0);
        let entry = self
            .coefficients
            .entry(a)
            .or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&a);
        }
    }

    pub fn add(&self, other: &LambdaExpr) -> LambdaExpr {
        let mut out = self.clone();
        for (&a, c) in &other.coefficients {
            out.add_term(a, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LambdaExpr) -> LambdaExpr {
        let mut out = self.clone();
        for (&a, c) in &other.coefficients {
            out.add_term(a, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> LambdaExpr {
        let mut out = LambdaExpr::default();
        for (&a, c) in &self.coefficients {
            out.coefficients.insert(a, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> LambdaExpr {
        let mut out = LambdaExpr::default();
        for (&a, c) in &self.coefficients {
            let v = c * s;
            if !v.is_zero() {
                out.coefficients.insert(a, v);
            }
        }
        out
    }

    /// Bilinear extension of Lambda_a * Lambda_b = gcd * Lambda_lcm.
    pub fn mul(&self, other: &LambdaExpr) -> LambdaExpr {
        let mut out = LambdaExpr::default();
        for (&a, ca) in &self.coefficients {
            for (&b, cb) in &other.coefficients {
                let g = a.gcd(&b);
                let l = a / g * b;
                out.add_term(l, ca * cb * rat(g as i64));
            }
        }
        out
    }

    /// Interprets the expression as a zeta divisor; every coefficient must
    /// be an integer.
    pub fn into_divisor(self) -> Result<ZetaDivisor> {
        let mut z = ZetaDivisor::default();
        for (a, c) in self.coefficients {
            if !c.is_integer() {
                return Err(Error::NonIntegral(format!(
                    "divisor coefficient {c} at index {a}"
                )));
            }
            z.add_factor(a, c.to_integer().to_i64().expect("exponent fits i64"));
        }
        Ok(z)
    }
}

/// Zeta function of an isolated weighted homogeneous singularity from the
/// weights and degree alone:
/// div zeta = (-1)^n prod_i (Lambda_{d/w_i} - Lambda_1) - Lambda_1.
pub fn mo_zeta(weights: &[u32], d: u64) -> Result<ZetaDivisor> {
    if weights.is_empty() || weights.len() > 3 {
        return Err(Error::Arity {
            expected: 3,
            got: weights.len(),
        });
    }
    // The associated Milnor number must be a non-negative integer for the
    // data to describe an isolated singularity.
    let mut mu = Rational::one();
    for &w in weights {
        mu *= Rational::new((d as i64).into(), (w as i64).into()) - rat(1);
    }
    if !mu.is_integer() || mu.is_negative() {
        return Err(Error::NonIntegral(format!(
            "mu = {mu} for weights {weights:?}, degree {d}"
        )));
    }
    let one = LambdaExpr::one();
    let mut prod = LambdaExpr::one();
    for &w in weights {
        let u = Rational::new((d as i64).into(), (w as i64).into());
        prod = prod.mul(&LambdaExpr::rational_index(&u).sub(&one));
    }
    if weights.len() % 2 == 1 {
        prod = prod.neg();
    }
    prod.sub(&one).into_divisor()
}

/// Zeta function of a Newton non-degenerate germ by the alternating face
/// sum: div(zeta^{-1}) is the sum over nonempty variable subsets I and over
/// the facets sigma of the Newton boundary of f restricted to I of
/// (-1)^(|I|-1) (|I|-1)! vol(sigma) Lambda_{d(sigma)}, skipping restrictions
/// that vanish identically. Non-degeneracy on the participating faces is the
/// caller's contract.
pub fn varchenko_zeta(f: &Polynomial) -> Result<ZetaDivisor> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.arity();
    let mut inv = LambdaExpr::zero();
    for mask in 1u32..(1 << n) {
        let vars: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let restricted = restrict_to(f, &vars);
        let Some(fi) = restricted else { continue };
        let size = vars.len();
        let sign = if size % 2 == 1 { 1i64 } else { -1 };
        let factorial: i64 = (1..size as i64).product();
        if size == 1 {
            let k = fi.min_total_degree().unwrap() as u64;
            inv.add_term(k, rat(sign * factorial));
            continue;
        }
        let np = NewtonPolyhedron::new(&fi)?;
        for face in np.faces_of_dim(size - 1) {
            let coeff = face.lattice_volume.clone() * rat(sign * factorial);
            inv.add_term(face.d_value, coeff);
        }
    }
    inv.neg().into_divisor()
}

/// Restriction of f to the coordinate subspace of the given variables
/// (others set to zero); `None` when it vanishes identically.
fn restrict_to(f: &Polynomial, vars: &[usize]) -> Option<Polynomial> {
    let mut g = f.clone();
    if vars.len() == f.arity() {
        return Some(g);
    }
    for v in (0..f.arity()).rev() {
        if !vars.contains(&v) {
            if g.arity() == 1 {
                return None;
            }
            g = g.substitute_value(v, &Rational::zero());
        }
    }
    if g.is_zero() {
        None
    } else {
        Some(g)
    }
}

/// The standard Newton non-degenerate local model for a plane curve
/// singularity of the given Milnor number: node, cusp, tacnode. Higher
/// types are not determined by mu and must be supplied by the caller.
pub fn standard_local_model(mu: u64) -> Option<Polynomial> {
    let model = |s: &str| crate::poly::parse(s, &["v", "w"]).unwrap();
    match mu {
        1 => Some(model("v*w")),
        2 => Some(model("v^2 + w^3")),
        3 => Some(model("v^2 + w^4")),
        _ => None,
    }
}

/// Zeta function of the local model u^d (phi(v, w) + c u^m) attached to a
/// singular point of the weighted projective curve with local equation phi.
pub fn local_model_zeta(phi: &Polynomial, d: u64, m: u64) -> Result<ZetaDivisor> {
    if phi.arity() != 2 {
        return Err(Error::Arity {
            expected: 2,
            got: phi.arity(),
        });
    }
    let mut f = Polynomial::zero(3);
    for (e, c) in phi.terms() {
        f.add_term(Exponents::new(&[d as u32, e.get(0), e.get(1)]), c.clone());
    }
    f.add_term(Exponents::new(&[(d + m) as u32, 0, 0]), rat(1));
    varchenko_zeta(&f)
}

/// The composition formula for a weighted-Le-Yomdin polynomial g = f + h:
/// the weighted homogeneous part contributes mo_zeta(P, d), the singular
/// points of V_P(f) contribute the middle factor (1 - t^d)^{mu_tot} and one
/// local factor each, whose indices must all exceed d.
pub fn oka_wly_zeta(
    t: &WlyTriple,
    profile: &SingularityProfile,
    local_factors: &[ZetaDivisor],
) -> Result<ZetaDivisor> {
    if local_factors.len() != profile.k {
        return Err(Error::InvalidInput(format!(
            "expected one local factor per singular point: {} points, {} factors",
            profile.k,
            local_factors.len()
        )));
    }
    let mut z = mo_zeta(&t.p.as_array(), t.d)?;
    z.add_factor(t.d, profile.mu_tot as i64);
    for lf in local_factors {
        if let Some(k) = lf.min_index() {
            if k <= t.d {
                return Err(Error::InvalidInput(format!(
                    "local factor index {k} does not exceed d = {}",
                    t.d
                )));
            }
        }
        z = z.mul(lf);
    }
    Ok(z)
}

/// Builds the local factors for a profile from the standard models, in
/// multiset order. Fails when some local Milnor number has no standard
/// Newton non-degenerate model.
pub fn standard_local_factors(
    profile: &SingularityProfile,
    d: u64,
    m: u64,
) -> Result<Vec<ZetaDivisor>> {
    let mut out = Vec::with_capacity(profile.k);
    for &mu in &profile.local_mu {
        let phi = standard_local_model(mu).ok_or_else(|| {
            Error::InvalidInput(format!(
                "no standard local model for mu = {mu}; supply one explicitly"
            ))
        })?;
        out.push(local_model_zeta(&phi, d, m)?);
    }
    Ok(out)
}

/// deg zeta, the alternating sum of the ranks of the monodromy spaces.
pub fn zeta_degree(z: &ZetaDivisor) -> i64 {
    z.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::weighted::WeightVector;

    fn p2(s: &str) -> Polynomial {
        parse(s, &["x", "y"]).unwrap()
    }
    fn p3(s: &str) -> Polynomial {
        parse(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn lambda_product_rules() {
        let l2 = LambdaExpr::term(2, rat(1));
        let l3 = LambdaExpr::term(3, rat(1));
        assert_eq!(l2.mul(&l3), LambdaExpr::term(6, rat(1)));
        assert_eq!(l2.mul(&l2), LambdaExpr::term(2, rat(2)));
        let x = LambdaExpr::term(5, rat(3)).add(&LambdaExpr::term(7, rat(-2)));
        assert_eq!(LambdaExpr::one().mul(&x), x);
    }

    #[test]
    fn mo_zeta_cusp_anchor() {
        let z = mo_zeta(&[3, 2], 6).unwrap();
        assert_eq!(z, ZetaDivisor::from_pairs(&[(6, 1), (2, -1), (3, -1)]));
        assert_eq!(z.degree(), 1);
        assert_eq!(z.to_string(), "(1 - t^6) / ((1 - t^2)*(1 - t^3))");
    }

    #[test]
    fn mo_zeta_three_variables() {
        let z = mo_zeta(&[1, 1, 1], 2).unwrap();
        assert_eq!(z, ZetaDivisor::from_pairs(&[(2, -1)]));
        assert_eq!(z.degree(), -2);

        let z = mo_zeta(&[1, 1, 1], 4).unwrap();
        assert_eq!(z, ZetaDivisor::from_pairs(&[(4, -7)]));
        assert_eq!(z.degree(), -28);
    }

    #[test]
    fn mo_zeta_rational_weight_rule() {
        // x^3 + x y^3: weights (3, 2), degree 9, mu = 7.
        let z = mo_zeta(&[3, 2], 9).unwrap();
        assert_eq!(z, ZetaDivisor::from_pairs(&[(9, 1), (3, -1)]));
        assert_eq!(z.degree(), 6);
    }

    #[test]
    fn degree_law_brieskorn() {
        // deg zeta = (-1)^n mu - 1.
        for a in 2..=5u64 {
            for b in 2..=5u64 {
                let g = a.gcd(&b);
                let z = mo_zeta(&[(b / g) as u32, (a / g) as u32], a * b / g).unwrap();
                let mu = ((a - 1) * (b - 1)) as i64;
                assert_eq!(z.degree(), mu - 1, "a={a} b={b}");
            }
        }
        for a in 2..=5u64 {
            for b in 2..=5u64 {
                for c in 2..=5u64 {
                    let l = a.lcm(&b).lcm(&c);
                    let z = mo_zeta(&[(l / a) as u32, (l / b) as u32, (l / c) as u32], l);
                    let mu = ((a - 1) * (b - 1) * (c - 1)) as i64;
                    assert_eq!(z.unwrap().degree(), -mu - 1, "a={a} b={b} c={c}");
                }
            }
        }
    }

    #[test]
    fn varchenko_matches_mo_on_anchors() {
        let z = varchenko_zeta(&p2("x^2 + y^3")).unwrap();
        assert_eq!(z, mo_zeta(&[3, 2], 6).unwrap());

        let z = varchenko_zeta(&p3("x^2 + y^2 + z^2")).unwrap();
        assert_eq!(z, ZetaDivisor::from_pairs(&[(2, -1)]));
    }

    #[test]
    fn varchenko_wly_local_model() {
        // u^4 v w + u^5: only the u-axis vertex contributes.
        let f = parse("u^4*v*w + u^5", &["u", "v", "w"]).unwrap();
        let z = varchenko_zeta(&f).unwrap();
        assert_eq!(z, ZetaDivisor::from_pairs(&[(5, -1)]));
    }

    #[test]
    fn local_model_node_and_cusp() {
        // Node model at d = 4, m = 1.
        let node = standard_local_model(1).unwrap();
        let z = local_model_zeta(&node, 4, 1).unwrap();
        assert_eq!(z, ZetaDivisor::from_pairs(&[(5, -1)]));
        assert_eq!(z.degree(), -5);

        // Cusp model at d = 12, m = 1: degree -(d + m) mu = -26.
        let cusp = standard_local_model(2).unwrap();
        let z = local_model_zeta(&cusp, 12, 1).unwrap();
        assert_eq!(
            z,
            ZetaDivisor::from_pairs(&[(13, -1), (26, 1), (39, 1), (78, -1)])
        );
        assert_eq!(z.degree(), -26);
    }

    #[test]
    fn composition_quartic_end_to_end() {
        let f = p3("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");
        let p = WeightVector::new(1, 1, 1).unwrap();
        let t = WlyTriple::new(f, p3("x^5"), p).unwrap();
        let profile = SingularityProfile {
            k: 4,
            local_mu: vec![1, 1, 1, 1],
            mu_tot: 4,
            certified: true,
        };
        let factors = standard_local_factors(&profile, t.d, t.m).unwrap();
        let z = oka_wly_zeta(&t, &profile, &factors).unwrap();
        assert_eq!(z, ZetaDivisor::from_pairs(&[(4, -3), (5, -4)]));
        assert_eq!(z.degree(), -32);
    }

    #[test]
    fn composition_empty_product() {
        let t = WlyTriple::new(
            p3("x^2 + y^3 + z^6"),
            p3("z^7"),
            WeightVector::new(3, 2, 1).unwrap(),
        )
        .unwrap();
        let profile = SingularityProfile::empty();
        let z = oka_wly_zeta(&t, &profile, &[]).unwrap();
        assert_eq!(z, mo_zeta(&[3, 2, 1], 6).unwrap());
    }

    #[test]
    fn local_factor_index_guard() {
        let t = WlyTriple::new(
            p3("x^2 + y^3 + z^6"),
            p3("z^7"),
            WeightVector::new(3, 2, 1).unwrap(),
        )
        .unwrap();
        let profile = SingularityProfile {
            k: 1,
            local_mu: vec![1],
            mu_tot: 1,
            certified: true,
        };
        let bad = ZetaDivisor::from_pairs(&[(3, -1)]);
        assert!(oka_wly_zeta(&t, &profile, &[bad]).is_err());
    }

    #[test]
    fn divisor_serde_and_empty() {
        let z = ZetaDivisor::from_pairs(&[(6, 1), (2, -1), (3, -1)]);
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, "[[2,-1],[3,-1],[6,1]]");
        let back: ZetaDivisor = serde_json::from_str(&json).unwrap();
        assert_eq!(z, back);
        assert_eq!(ZetaDivisor::one().degree(), 0);
    }
}
