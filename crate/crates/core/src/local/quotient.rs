//! Arithmetic in Q[u]/(q) for a monic square-free modulus q, with dynamic
//! splitting: when an operation needs to invert a zero divisor, it reports a
//! proper factor of the modulus and the computation is replayed on each
//! factor. Since q is square-free the quotient is a product of fields and
//! every run is valid componentwise as long as no zero divisor is hit.

use num_traits::One;

use crate::poly::{Rational, UniPoly};

/// A proper monic factor of the current modulus, raised when a computation
/// cannot proceed uniformly over all components.
#[derive(Debug, Clone)]
pub struct Split(pub UniPoly);

pub type BranchResult<T> = Result<T, Split>;

/// Runs `task` over the branch decomposition of `modulus`, splitting on
/// demand. Returns one `(branch_modulus, value)` pair per final branch.
pub fn run_branches<T>(
    modulus: UniPoly,
    task: impl Fn(&UniPoly) -> BranchResult<T>,
) -> Vec<(UniPoly, T)> {
    let mut stack = vec![modulus];
    let mut out = Vec::new();
    while let Some(q) = stack.pop() {
        match task(&q) {
            Ok(v) => out.push((q, v)),
            Err(Split(g)) => {
                let g = g.monic();
                let h = q.div_exact(&g);
                debug_assert!(g.degree().unwrap_or(0) >= 1);
                debug_assert!(h.degree().unwrap_or(0) >= 1);
                stack.push(g);
                stack.push(h);
            }
        }
    }
    out
}

/// Residue classification of an element of Q[u]/(q).
pub enum Residue {
    Unit(UniPoly),
    Zero,
}

/// Reduces an element modulo q.
pub fn reduce(a: &UniPoly, q: &UniPoly) -> UniPoly {
    if a.degree() < q.degree() {
        a.clone()
    } else {
        a.div_rem(q).1
    }
}

/// Classifies `a` as unit (returning the inverse) or zero, splitting when it
/// is a zero divisor on a proper sub-product of components.
pub fn invert(a: &UniPoly, q: &UniPoly) -> BranchResult<Residue> {
    let a = reduce(a, q);
    if a.is_zero() {
        return Ok(Residue::Zero);
    }
    let g = a.gcd(q);
    if g.degree() == Some(0) {
        Ok(Residue::Unit(inverse_coprime(&a, q)))
    } else if g.degree() == q.degree() {
        Ok(Residue::Zero)
    } else {
        Err(Split(g))
    }
}

/// Extended Euclid for gcd(a, q) = 1: returns a^{-1} mod q.
fn inverse_coprime(a: &UniPoly, q: &UniPoly) -> UniPoly {
    // Bezout: s*a + t*q = 1.
    let (mut r0, mut r1) = (q.clone(), a.clone());
    let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (quo, rem) = r0.div_rem(&r1);
        let s2 = s0.sub(&quo.mul(&s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r0 = gcd (a nonzero constant); normalize.
    debug_assert_eq!(r0.degree(), Some(0));
    let inv = Rational::one() / r0.leading();
    reduce(&s0.scale(&inv), q)
}

pub fn mul_mod(a: &UniPoly, b: &UniPoly, q: &UniPoly) -> UniPoly {
    reduce(&a.mul(b), q)
}

/// Polynomials in v with coefficients in Q[u]/(q), dense in v.
#[derive(Debug, Clone)]
pub struct VPoly {
    /// coeffs[i] multiplies v^i; reduced mod q but possibly with zero tail.
    pub coeffs: Vec<UniPoly>,
}

impl VPoly {
    pub fn from_coeffs(coeffs: Vec<UniPoly>, q: &UniPoly) -> Self {
        let mut v = VPoly {
            coeffs: coeffs.iter().map(|c| reduce(c, q)).collect(),
        };
        v.trim();
        v
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(UniPoly::is_zero) {
            self.coeffs.pop();
        }
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

    pub fn constant_coeff(&self) -> UniPoly {
        self.coeffs.first().cloned().unwrap_or_else(UniPoly::zero)
    }

    /// Drops leading coefficients that vanish identically on the branch;
    /// splits when a leading coefficient is a zero divisor.
    pub fn normalize(mut self, q: &UniPoly) -> BranchResult<VPoly> {
        loop {
            match self.coeffs.last() {
                None => return Ok(self),
                Some(lc) => match invert(lc, q)? {
                    Residue::Zero => {
                        self.coeffs.pop();
                    }
                    Residue::Unit(_) => return Ok(self),
                },
            }
        }
    }

    /// Makes the polynomial monic; requires a normalized nonzero input.
    pub fn monic(&self, q: &UniPoly) -> BranchResult<VPoly> {
        let lc = self.coeffs.last().expect("monic of zero");
        match invert(lc, q)? {
            Residue::Zero => unreachable!("normalize first"),
            Residue::Unit(inv) => {
                let coeffs = self.coeffs.iter().map(|c| mul_mod(c, &inv, q)).collect();
                Ok(VPoly { coeffs })
            }
        }
    }

    pub fn sub(&self, rhs: &VPoly, q: &UniPoly) -> VPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![UniPoly::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].add(c);
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].sub(c);
        }
        let mut v = VPoly {
            coeffs: coeffs.iter().map(|c| reduce(c, q)).collect(),
        };
        v.trim();
        v
    }

    pub fn scale(&self, s: &UniPoly, q: &UniPoly) -> VPoly {
        let mut v = VPoly {
            coeffs: self.coeffs.iter().map(|c| mul_mod(c, s, q)).collect(),
        };
        v.trim();
        v
    }

    pub fn shift_mul_v(&self, k: usize) -> VPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![UniPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        VPoly { coeffs }
    }

    /// Remainder of self by a monic divisor. Monic division never needs to
    /// invert, so it is valid on every component without splitting.
    pub fn rem_monic(&self, div: &VPoly, q: &UniPoly) -> VPoly {
        let dd = div.degree().expect("division by zero");
        let mut r = self.clone();
        while r.degree().is_some_and(|d| d >= dd) {
            let d = r.degree().unwrap();
            let lr = r.coeffs.last().unwrap().clone();
            let scaled = div.scale(&lr, q).shift_mul_v(d - dd);
            r = r.sub(&scaled, q);
            debug_assert!(r.degree().is_none_or(|nd| nd < d));
        }
        r
    }

    /// Exact division by a monic divisor.
    pub fn div_exact_monic(&self, div: &VPoly, q: &UniPoly) -> VPoly {
        let dd = div.degree().expect("division by zero");
        let mut r = self.clone();
        let sd = match r.degree() {
            None => return VPoly { coeffs: vec![] },
            Some(d) => d,
        };
        assert!(sd >= dd);
        let mut quo = vec![UniPoly::zero(); sd - dd + 1];
        while r.degree().is_some_and(|d| d >= dd) {
            let d = r.degree().unwrap();
            let lr = r.coeffs.last().unwrap().clone();
            quo[d - dd] = lr.clone();
            let scaled = div.scale(&lr, q).shift_mul_v(d - dd);
            r = r.sub(&scaled, q);
            debug_assert!(r.degree().is_none_or(|nd| nd < d));
        }
        assert!(r.is_zero(), "inexact VPoly division");
        let mut v = VPoly { coeffs: quo };
        v.trim();
        v
    }

    /// Formal derivative in v.
    pub fn derivative(&self, q: &UniPoly) -> VPoly {
        if self.coeffs.len() <= 1 {
            return VPoly { coeffs: vec![] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| reduce(&c.scale(&crate::poly::rat(i as i64)), q))
            .collect();
        let mut v = VPoly { coeffs };
        v.trim();
        v
    }

    /// Is this polynomial identically zero on the branch? Splits when the
    /// answer differs across components.
    pub fn is_zero_uniform(&self, q: &UniPoly) -> BranchResult<bool> {
        for c in &self.coeffs {
            if let Residue::Unit(_) = invert(c, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Monic gcd of a list of VPolys on a branch.
pub fn vgcd_list(polys: &[VPoly], q: &UniPoly) -> BranchResult<VPoly> {
    let mut acc: Option<VPoly> = None;
    for p in polys {
        let p = p.clone().normalize(q)?;
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p,
            Some(d) => vgcd(&d, &p, q)?,
        });
        if acc.as_ref().unwrap().degree() == Some(0) {
            break;
        }
    }
    Ok(acc.unwrap_or(VPoly { coeffs: vec![] }))
}

/// Monic gcd of two normalized VPolys.
pub fn vgcd(a: &VPoly, b: &VPoly, q: &UniPoly) -> BranchResult<VPoly> {
    let mut a = a.clone().normalize(q)?;
    let mut b = b.clone().normalize(q)?;
    loop {
        if b.is_zero() {
            if a.is_zero() {
                return Ok(a);
            }
            return a.monic(q);
        }
        let bm = b.monic(q)?;
        let r = a.rem_monic(&bm, q).normalize(q)?;
        a = bm;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, rat};

    fn u(s: &str) -> UniPoly {
        parse(s, &["u"]).unwrap().to_unipoly()
    }

    #[test]
    fn inverse_in_field() {
        // Q[u]/(u^2 - 2): invert u  ->  u/2.
        let q = u("u^2 - 2");
        match invert(&u("u"), &q).unwrap() {
            Residue::Unit(inv) => {
                let prod = mul_mod(&u("u"), &inv, &q);
                assert_eq!(prod, UniPoly::one());
            }
            _ => panic!("expected unit"),
        }
    }

    #[test]
    fn zero_divisor_splits() {
        // Q[u]/((u-1)(u-2)): u - 1 is a zero divisor.
        let q = u("u^2 - 3*u + 2");
        match invert(&u("u - 1"), &q) {
            Err(Split(g)) => assert_eq!(g, u("u - 1")),
            _ => panic!("expected split"),
        }
    }

    #[test]
    fn branch_driver_splits_to_components() {
        let q = u("u^2 - 3*u + 2");
        let results = run_branches(q, |q| match invert(&u("u - 1"), q)? {
            Residue::Zero => Ok("zero"),
            Residue::Unit(_) => Ok("unit"),
        });
        let mut tags: Vec<_> = results
            .iter()
            .map(|(m, t)| (m.coeff(0), *t))
            .collect();
        tags.sort_by_key(|(c, _)| c.clone());
        assert_eq!(tags.len(), 2);
        // u - 2 has constant -2, u - 1 has constant -1.
        assert_eq!(tags[0], (rat(-2), "unit"));
        assert_eq!(tags[1], (rat(-1), "zero"));
    }

    #[test]
    fn vpoly_gcd_over_quotient() {
        // K = Q[u]/(u^2 - 2). gcd(v^2 - 2, v - u) = v - u (since u^2 = 2).
        let q = u("u^2 - 2");
        let a = VPoly::from_coeffs(vec![u("-2"), u("0"), UniPoly::one()], &q);
        let b = VPoly::from_coeffs(vec![u("0").sub(&u("u")), UniPoly::one()], &q);
        let g = vgcd(&a, &b, &q).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert_eq!(g.coeffs[0], u("-u").div_rem(&q).1);
    }
}
