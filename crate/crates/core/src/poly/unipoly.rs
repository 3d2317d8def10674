//! Dense univariate polynomials over the rationals. The gcd goes through an
//! integer primitive remainder sequence so coefficient growth stays close to
//! the subresultant bound even for the large eliminating resultants produced
//! by the torus solver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    /// coeffs[i] is the coefficient of t^i; the last entry is nonzero.
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn monomial(deg: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * super::rat(i as i64))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly::new(coeffs)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        UniPoly::new(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (UniPoly::zero(), self.clone());
        }
        let mut quo = vec![Rational::zero(); rem.len() - dd];
        let inv_lc = Rational::one() / div.leading();
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] * &inv_lc;
            if q.is_zero() {
                continue;
            }
            for (j, c) in div.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                let delta = c * &q;
                rem[idx] -= delta;
            }
            quo[k - dd] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    /// Exact division; panics when the remainder is nonzero.
    pub fn div_exact(&self, div: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Clears denominators and removes integer content, returning integer
    /// coefficients with positive leading coefficient.
    fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
        ints
    }

    /// Monic gcd over the rationals via an integer primitive remainder
    /// sequence.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        let mut a = self.primitive_int();
        let mut b = rhs.primitive_int();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_empty() {
                break;
            }
            if b.len() == 1 {
                // Nonzero constant: coprime.
                return UniPoly::one();
            }
            let r = pseudo_rem_int(&a, &b);
            a = b;
            b = primitive_part(r);
        }
        let coeffs = a.into_iter().map(Rational::from_integer).collect();
        UniPoly::new(coeffs).monic()
    }

    /// Yun's square-free decomposition: returns `(g_i, i)` with
    /// `f = lc * prod g_i^i`, each `g_i` monic square-free, deg g_i >= 1.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        if a0.degree() == Some(0) {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut i = 1;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().unwrap_or(0) >= 1 {
                    out.push((b.monic(), i));
                }
                break;
            }
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) >= 1 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g);
            c = d.div_exact(&g);
            i += 1;
        }
        out
    }

    /// The product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) || g.is_zero() {
            self.monic()
        } else {
            self.div_exact(&g).monic()
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero(1);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(super::Exponents::new(&[i as u32]), c.clone());
        }
        p
    }
}

/// Integer pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
fn pseudo_rem_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for j in 0..db {
            let delta = &lr * &b[j];
            r[shift + j] -= delta;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        content = -content;
    }
    for c in v.iter_mut() {
        *c = &*c / &content;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::super::{parse, rat};
    use super::*;

    fn u(s: &str) -> UniPoly {
        parse(s, &["t"]).unwrap().to_unipoly()
    }

    #[test]
    fn gcd_basic() {
        let f = u("t^3 - t");
        let g = u("t^2 - 1");
        assert_eq!(f.gcd(&g), u("t^2 - 1"));
        let f = u("t^2 + 1");
        let g = u("t + 1");
        assert_eq!(f.gcd(&g), UniPoly::one());
    }

    #[test]
    fn gcd_with_fractions() {
        let f = u("1/2*t^2 - 1/2");
        let g = u("3*t - 3");
        assert_eq!(f.gcd(&g), u("t - 1"));
    }

    #[test]
    fn division() {
        let f = u("t^4 - 1");
        let g = u("t^2 + 1");
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, u("t^2 - 1"));
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^2 (t+2)^3 t
        let f = u("t - 1")
            .mul(&u("t - 1"))
            .mul(&u("t + 2"))
            .mul(&u("t + 2"))
            .mul(&u("t + 2"))
            .mul(&u("t"));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (u("t"), 1));
        assert_eq!(dec[1], (u("t - 1"), 2));
        assert_eq!(dec[2], (u("t + 2"), 3));
        let sf = f.squarefree_part();
        assert_eq!(sf, u("t").mul(&u("t - 1")).mul(&u("t + 2")).monic());
    }

    #[test]
    fn eval_horner() {
        let f = u("t^3 - 2*t + 5");
        assert_eq!(f.eval(&rat(2)), rat(9));
    }
}
