//! Sparse multivariate polynomials over the rationals in at most three
//! variables, with the substitutions and eliminations the rest of the crate
//! is built on.
//!
//! Coefficients are `BigRational` and every operation is exact. Terms live in
//! a `BTreeMap` keyed by [`Exponents`] whose `Ord` is graded-lex, so iteration
//! order, printing and hashing are all canonical.

mod parse;
mod resultant;
mod unipoly;

pub use parse::parse;
pub use resultant::{gcd_bivariate, resultant};
pub use unipoly::UniPoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exponent vector of a monomial. Always stores three slots; entries at or
/// beyond the owning polynomial's arity must be zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponents(pub [u32; 3]);

impl Exponents {
    pub fn new(e: &[u32]) -> Self {
        let mut a = [0u32; 3];
        a[..e.len()].copy_from_slice(e);
        Exponents(a)
    }

    pub fn zero() -> Self {
        Exponents([0, 0, 0])
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// Weighted degree with respect to integer weights (one per slot).
    pub fn weighted_degree(&self, w: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(w.iter())
            .map(|(&e, &p)| e as u64 * p as u64)
            .sum()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded-lex: lower total degree first; within a degree, larger power
        // of the earliest variable first (so x^2 prints before x*y).
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial with a fixed arity in 1..=3.
///
/// Invariants: no zero coefficient is stored, and every exponent vector is
/// zero at slots >= arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        assert!((1..=3).contains(&arity), "arity must be 1..=3");
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(arity);
        p.add_term(Exponents::zero(), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Polynomial::constant(arity, Rational::one())
    }

    /// The monomial `coeff * x_var`.
    pub fn var(arity: usize, var: usize) -> Self {
        assert!(var < arity);
        let mut e = [0u32; 3];
        e[var] = 1;
        Polynomial::monomial(arity, Exponents(e), Rational::one())
    }

    pub fn monomial(arity: usize, exps: Exponents, coeff: Rational) -> Self {
        let mut p = Polynomial::zero(arity);
        p.add_term(exps, coeff);
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponents> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, e: &Exponents) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Exponents::zero())
    }

    /// Adds a term, cancelling and pruning zeros.
    pub fn add_term(&mut self, exps: Exponents, coeff: Rational) {
        for i in self.arity..3 {
            assert_eq!(exps.0[i], 0, "exponent beyond arity");
        }
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    /// Minimum total degree over the support (the multiplicity at the origin).
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total_degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        let mut out = Polynomial::zero(self.arity);
        for (e, a) in &self.terms {
            out.terms.insert(*e, a * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one(self.arity);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.arity);
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.terms {
            let k = e.get(var);
            if k == 0 {
                continue;
            }
            let mut ne = *e;
            ne.0[var] = k - 1;
            out.add_term(ne, c * rat(k as i64));
        }
        out
    }

    /// Multiplies the exponent of `var` by `p` in every term.
    pub fn substitute_power(&self, var: usize, p: u32) -> Polynomial {
        assert!(var < self.arity);
        assert!(p >= 1, "power substitution requires p >= 1");
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne.0[var] = e.get(var) * p;
            out.add_term(ne, c.clone());
        }
        out
    }

    /// For a 3-variable polynomial, returns `f(x, y, a*x + b*y)` as a
    /// 2-variable polynomial, fully expanded.
    pub fn substitute_linear(&self, a: &Rational, b: &Rational) -> Result<Polynomial> {
        if self.arity != 3 {
            return Err(Error::Arity {
                expected: 3,
                got: self.arity,
            });
        }
        let mut out = Polynomial::zero(2);
        for (e, c) in &self.terms {
            let (i, j, k) = (e.get(0), e.get(1), e.get(2));
            // (a x + b y)^k expanded by the binomial theorem.
            let mut binom = Rational::one();
            for t in 0..=k {
                let coeff = &binom * c * pow_rat(a, k - t) * pow_rat(b, t);
                out.add_term(Exponents::new(&[i + (k - t), j + t]), coeff);
                // binom: C(k, t+1) = C(k, t) * (k - t) / (t + 1)
                binom = binom * rat((k - t) as i64) / rat((t + 1) as i64);
            }
        }
        Ok(out)
    }

    /// Substitutes the exact value `val` for `var` and drops that variable.
    /// Remaining variables keep their order.
    pub fn substitute_value(&self, var: usize, val: &Rational) -> Polynomial {
        assert!(var < self.arity);
        assert!(self.arity >= 2, "cannot drop the last variable");
        let mut out = Polynomial::zero(self.arity - 1);
        for (e, c) in &self.terms {
            let coeff = c * pow_rat(val, e.get(var));
            if coeff.is_zero() {
                continue;
            }
            let mut ne = Vec::with_capacity(self.arity - 1);
            for i in 0..self.arity {
                if i != var {
                    ne.push(e.get(i));
                }
            }
            out.add_term(Exponents::new(&ne), coeff);
        }
        out
    }

    /// Substitutes a polynomial for `var`. Arities must match, with the
    /// replacement not involving `var` itself if you want a plain evaluation.
    pub fn substitute_poly(&self, var: usize, rep: &Polynomial) -> Polynomial {
        assert!(var < self.arity);
        assert_eq!(rep.arity, self.arity);
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(self.arity, c.clone());
            let mut base = *e;
            base.0[var] = 0;
            term = &term * &Polynomial::monomial(self.arity, base, Rational::one());
            term = &term * &rep.pow(e.get(var));
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                v *= pow_rat(x, e.get(i));
            }
            acc += v;
        }
        acc
    }

    /// True when every term has the same weighted degree.
    pub fn is_weighted_homogeneous(&self, w: &[u32]) -> bool {
        let mut it = self.terms.keys().map(|e| e.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// True when f(0) = 0 and the gradient vanishes at the origin, i.e. every
    /// term has total degree at least two.
    pub fn has_critical_origin(&self) -> bool {
        self.terms.keys().all(|e| e.total_degree() >= 2)
    }

    /// Renders with the given variable names (one per arity slot).
    pub fn to_string_with(&self, vars: &[&str]) -> String {
        assert!(vars.len() >= self.arity);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.total_degree() == 0 {
                factors.push(format_rational(&abs));
            }
            for i in 0..self.arity {
                match e.get(i) {
                    0 => {}
                    1 => factors.push(vars[i].to_string()),
                    k => factors.push(format!("{}^{}", vars[i], k)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Converts an arity-1 polynomial to a dense univariate representation.
    pub fn to_unipoly(&self) -> UniPoly {
        assert_eq!(self.arity, 1);
        let deg = self.degree_in(0).map(|d| d as usize);
        let mut coeffs = vec![Rational::zero(); deg.map_or(0, |d| d + 1)];
        for (e, c) in &self.terms {
            coeffs[e.get(0) as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// Views an arity-2 polynomial as univariate in `var` with univariate
    /// coefficients in the other variable. Index = degree in `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<UniPoly> {
        assert_eq!(self.arity, 2);
        assert!(var < 2);
        let other = 1 - var;
        let d = self.degree_in(var).map_or(0, |d| d as usize);
        let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let k = e.get(var) as usize;
            let j = e.get(other) as usize;
            if rows[k].len() <= j {
                rows[k].resize(j + 1, Rational::zero());
            }
            rows[k][j] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    /// Inverse of [`coefficients_in`]: rebuilds an arity-2 polynomial.
    pub fn from_coefficients_in(var: usize, coeffs: &[UniPoly]) -> Polynomial {
        assert!(var < 2);
        let other = 1 - var;
        let mut out = Polynomial::zero(2);
        for (k, c) in coeffs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut e = [0u32; 3];
                e[var] = k as u32;
                e[other] = j as u32;
                out.add_term(Exponents(e), a.clone());
            }
        }
        out
    }

    /// Strips the largest common monomial factor, returning it alongside the
    /// reduced polynomial. Used for torus saturation.
    pub fn strip_monomial_content(&self) -> (Exponents, Polynomial) {
        if self.is_zero() {
            return (Exponents::zero(), self.clone());
        }
        let mut min = [u32::MAX; 3];
        for e in self.terms.keys() {
            for i in 0..3 {
                min[i] = min[i].min(e.0[i]);
            }
        }
        let shift = Exponents(min);
        if shift.total_degree() == 0 {
            return (shift, self.clone());
        }
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.terms {
            let ne = Exponents([e.0[0] - min[0], e.0[1] - min[1], e.0[2] - min[2]]);
            out.terms.insert(ne, c.clone());
        }
        (shift, out)
    }
}

pub(crate) fn pow_rat(x: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

pub(crate) fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = match self.arity {
            1 => &["t"],
            2 => &["x", "y"],
            _ => &["x", "y", "z"],
        };
        f.write_str(&self.to_string_with(names))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.terms {
            out.terms.insert(*e, -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = Polynomial::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

/// Square-freeness test for a univariate polynomial, with the repeated-factor
/// gcd as witness when it fails.
pub fn squarefree_check(f: &Polynomial) -> Result<(bool, Option<Polynomial>)> {
    if f.arity() != 1 {
        return Err(Error::Arity {
            expected: 1,
            got: f.arity(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let u = f.to_unipoly();
    let g = u.gcd(&u.derivative());
    if g.degree() == Some(0) || g.is_zero() {
        Ok((true, None))
    } else {
        Ok((false, Some(g.to_polynomial())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(s: &str) -> Polynomial {
        parse(s, &["x", "y", "z"]).unwrap()
    }
    fn p2(s: &str) -> Polynomial {
        parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn graded_lex_order_and_printing() {
        let f = p3("z^6*(-7/2) + x^2*y");
        assert_eq!(f.to_string(), "x^2*y - 7/2*z^6");
        let g = p2("y^2 + x*y + x^2");
        assert_eq!(g.to_string(), "x^2 + x*y + y^2");
    }

    #[test]
    fn cancellation_gives_zero() {
        let f = p2("2*x*y - 2*x*y");
        assert!(f.is_zero());
        assert_eq!(f.num_terms(), 0);
    }

    #[test]
    fn substitute_linear_examples() {
        let f = p3("z^2");
        let got = f.substitute_linear(&rat(1), &rat(1)).unwrap();
        assert_eq!(got, p2("x^2 + 2*x*y + y^2"));

        let f = p3("x^2 + y^3 + z^6");
        let got = f.substitute_linear(&rat(0), &rat(0)).unwrap();
        assert_eq!(got, p2("x^2 + y^3"));

        let f = p3("x*z");
        let got = f.substitute_linear(&rat(2), &rat(3)).unwrap();
        assert_eq!(got, p2("2*x^2 + 3*x*y"));
    }

    #[test]
    fn substitute_power_examples() {
        let f = p2("x^2 + y^3");
        assert_eq!(f.substitute_power(1, 2), p2("x^2 + y^6"));
        assert_eq!(f.substitute_power(1, 1), f);
        assert_eq!(p2("x*y").substitute_power(0, 3), p2("x^3*y"));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p2("x^2 + y^3").partial_derivative(0), p2("2*x"));
        assert!(p2("5").partial_derivative(0).is_zero());
        assert_eq!(p2("x^3 + x*y^3").partial_derivative(1), p2("3*x*y^2"));
    }

    #[test]
    fn squarefree_examples() {
        let t2 = parse("t^2 - 1", &["t"]).unwrap();
        assert_eq!(squarefree_check(&t2).unwrap(), (true, None));

        let sq = parse("t^2 - 2*t + 1", &["t"]).unwrap();
        let (ok, w) = squarefree_check(&sq).unwrap();
        assert!(!ok);
        assert_eq!(w.unwrap(), parse("t - 1", &["t"]).unwrap());

        let t3 = parse("t^3", &["t"]).unwrap();
        let (ok, w) = squarefree_check(&t3).unwrap();
        assert!(!ok);
        assert_eq!(w.unwrap(), parse("t^2", &["t"]).unwrap());
    }

    #[test]
    fn strip_monomial() {
        let f = p2("x^3*y + x^2*y^2");
        let (m, g) = f.strip_monomial_content();
        assert_eq!(m, Exponents::new(&[2, 1]));
        assert_eq!(g, p2("x + y"));
    }
}
