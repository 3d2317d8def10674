//! Sylvester resultants of bivariate polynomials and a primitive-PRS
//! bivariate gcd.
//!
//! The resultant is the determinant of the Sylvester matrix whose entries are
//! univariate polynomials in the kept variable. Rather than eliminating over
//! the polynomial ring, the matrix is evaluated at enough sample points and
//! the determinant interpolated; the matrix shape is fixed by the original
//! degrees, so evaluation and determinant commute and leading-coefficient
//! vanishing at a sample is harmless.

use num_traits::{One, Zero};

use super::{Polynomial, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::linalg::det_rational;

/// Sylvester resultant of two bivariate polynomials, eliminating `var`.
/// Returns a polynomial of arity 1 in the other variable.
pub fn resultant(f: &Polynomial, g: &Polynomial, var: usize) -> Result<Polynomial> {
    if f.arity() != 2 || g.arity() != 2 {
        return Err(Error::Arity {
            expected: 2,
            got: f.arity().max(g.arity()),
        });
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let (df, dg) = (fc.len() - 1, gc.len() - 1);
    if df == 0 && dg == 0 {
        return Ok(Polynomial::one(1));
    }
    if df == 0 {
        // Res = f0^{deg g}
        let mut acc = UniPoly::one();
        for _ in 0..dg {
            acc = acc.mul(&fc[0]);
        }
        return Ok(acc.to_polynomial());
    }
    if dg == 0 {
        let mut acc = UniPoly::one();
        for _ in 0..df {
            acc = acc.mul(&gc[0]);
        }
        return Ok(acc.to_polynomial());
    }

    // Degree bound for the resultant in the kept variable.
    let dv_f = fc.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let dv_g = gc.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let bound = df * dv_g + dg * dv_f;

    let n = df + dg;
    let mut samples: Vec<(Rational, Rational)> = Vec::with_capacity(bound + 1);
    for k in 0..=bound {
        let x = sample_point(k);
        // Sylvester matrix evaluated at x: dg rows of f-coefficients, df rows
        // of g-coefficients, highest degree first.
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (r, row) in m.iter_mut().enumerate().take(dg) {
            for (j, c) in fc.iter().rev().enumerate() {
                row[r + j] = c.eval(&x);
            }
        }
        for (r, row) in m.iter_mut().enumerate().skip(dg) {
            let r0 = r - dg;
            for (j, c) in gc.iter().rev().enumerate() {
                row[r0 + j] = c.eval(&x);
            }
        }
        samples.push((x, det_rational(&m)));
    }
    Ok(interpolate(&samples).to_polynomial())
}

fn sample_point(k: usize) -> Rational {
    // 0, 1, -1, 2, -2, ...
    let half = ((k + 1) / 2) as i64;
    if k % 2 == 1 {
        super::rat(half)
    } else {
        super::rat(-half)
    }
}

/// Newton-form interpolation through the given (node, value) pairs.
fn interpolate(samples: &[(Rational, Rational)]) -> UniPoly {
    let n = samples.len();
    // Divided differences.
    let mut dd: Vec<Rational> = samples.iter().map(|(_, v)| v.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &samples[i].0 - &samples[i - level].0;
            dd[i] = num / den;
        }
    }
    // Horner expansion of the Newton form.
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        let lin = UniPoly::new(vec![-samples[i].0.clone(), Rational::one()]);
        acc = acc.mul(&lin).add(&UniPoly::constant(dd[i].clone()));
    }
    acc
}

/// Gcd of two bivariate polynomials by a primitive remainder sequence over
/// the univariate coefficient ring. The result is primitive in the chosen
/// direction and normalized to have a monic leading coefficient.
pub fn gcd_bivariate(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.arity(), 2);
    assert_eq!(g.arity(), 2);
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    // Eliminate in the variable where degrees are smallest.
    let var = if f.degree_in(0).unwrap_or(0) + g.degree_in(0).unwrap_or(0)
        <= f.degree_in(1).unwrap_or(0) + g.degree_in(1).unwrap_or(0)
    {
        0
    } else {
        1
    };
    let a = BiPoly::from_poly(f, var);
    let b = BiPoly::from_poly(g, var);
    let (ca, pa) = a.primitive();
    let (cb, pb) = b.primitive();
    let content_gcd = ca.gcd(&cb);
    let core = prs_gcd(pa, pb);
    let mut result = core.mul_coeff(&content_gcd);
    // Normalize: monic leading univariate coefficient.
    let lc = result.coeffs.last().unwrap().leading();
    if !lc.is_one() {
        let inv = Rational::one() / lc;
        for c in result.coeffs.iter_mut() {
            *c = c.scale(&inv);
        }
    }
    result.to_poly(var)
}

/// Bivariate polynomial viewed as univariate in one variable with `UniPoly`
/// coefficients in the other.
struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    fn from_poly(p: &Polynomial, var: usize) -> Self {
        BiPoly {
            coeffs: p.coefficients_in(var),
        }
    }

    fn to_poly(&self, var: usize) -> Polynomial {
        Polynomial::from_coefficients_in(var, &self.coeffs)
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(UniPoly::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn content(&self) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in &self.coeffs {
            acc = acc.gcd(c);
            if acc.degree() == Some(0) {
                return UniPoly::one();
            }
        }
        acc
    }

    fn primitive(&self) -> (UniPoly, BiPoly) {
        let c = self.content();
        if c.is_zero() {
            return (UniPoly::zero(), BiPoly { coeffs: Vec::new() });
        }
        let coeffs = self.coeffs.iter().map(|a| a.div_exact(&c)).collect();
        (c, BiPoly { coeffs })
    }

    fn mul_coeff(&self, c: &UniPoly) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Pseudo-remainder of self by div in the main variable.
    fn pseudo_rem(&self, div: &BiPoly) -> BiPoly {
        let dd = div.degree();
        let lc = div.coeffs.last().unwrap().clone();
        let mut r = BiPoly {
            coeffs: self.coeffs.clone(),
        };
        while !r.is_zero() && r.degree() >= dd {
            let lr = r.coeffs.last().unwrap().clone();
            let shift = r.degree() - dd;
            for c in r.coeffs.iter_mut() {
                *c = c.mul(&lc);
            }
            for j in 0..dd {
                let delta = lr.mul(&div.coeffs[j]);
                r.coeffs[shift + j] = r.coeffs[shift + j].sub(&delta);
            }
            r.coeffs.pop();
            r = r.trim();
        }
        r
    }
}

fn prs_gcd(mut a: BiPoly, mut b: BiPoly) -> BiPoly {
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return a.primitive().1;
        }
        if b.degree() == 0 {
            // Nonzero univariate content already stripped: coprime in the
            // main variable.
            return BiPoly {
                coeffs: vec![UniPoly::one()],
            };
        }
        let r = a.pseudo_rem(&b).primitive().1;
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn p2(s: &str) -> Polynomial {
        parse(s, &["u", "v"]).unwrap()
    }
    fn p1(s: &str) -> Polynomial {
        parse(s, &["v"]).unwrap()
    }

    #[test]
    fn resultant_linear_pair() {
        // 2x2 Sylvester determinant.
        let r = resultant(&p2("u - v"), &p2("u + v"), 0).unwrap();
        assert_eq!(r, p1("2*v"));
    }

    #[test]
    fn resultant_common_factor_vanishes() {
        let r = resultant(&p2("u^2"), &p2("u^3"), 0).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn resultant_substitution() {
        let r = resultant(&p2("u^2 - v"), &p2("u - 1"), 0).unwrap();
        assert_eq!(r, p1("1 - v"));
    }

    #[test]
    fn resultant_vs_gcd_detection() {
        // Shared factor (u + v) forces a zero resultant.
        let f = p2("u^2 - v^2");
        let g = p2("u^2 + 2*u*v + v^2");
        let r = resultant(&f, &g, 0).unwrap();
        assert!(r.is_zero());
        let d = gcd_bivariate(&f, &g);
        assert_eq!(d, p2("u + v"));
    }

    #[test]
    fn gcd_coprime() {
        let d = gcd_bivariate(&p2("u^2 + v"), &p2("u - 1"));
        assert_eq!(d.total_degree(), Some(0));
    }

    #[test]
    fn gcd_with_content() {
        // Common factor v * (u - v).
        let f = p2("u^2*v - u*v^2");
        let g = p2("u*v^2 - v^3");
        let d = gcd_bivariate(&f, &g);
        let (_, stripped) = d.strip_monomial_content();
        assert_eq!(stripped, p2("u - v"));
        assert_eq!(d, p2("u*v - v^2"));
    }
}
