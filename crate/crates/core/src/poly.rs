//! Univariate polynomials over a [`Field`], used as matrix entries during
//! elimination over the polynomial ring.

use crate::field::{Fe, Field};

/// Little-endian coefficients with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<Fe>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Poly {
        Poly(vec![Fe::ONE])
    }

    /// c·z^k
    pub fn monomial(c: Fe, k: usize) -> Poly {
        let mut v = vec![Fe::ZERO; k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<Fe>) -> Poly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Poly(v)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Fe {
        self.0.get(k).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.0.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.0.len() == 1
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly(self.0.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.mul_add(a, b, out[i + j]);
            }
        }
        Poly::from_coeffs(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &Field, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.lead()).expect("nonzero lead");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for (i, &di) in d.0.iter().enumerate() {
                r[k - dd + i] = f.sub(r[k - dd + i], f.mul(c, di));
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self, f: &Field) -> Poly {
        match f.inv(self.lead()) {
            Some(li) => self.scale(f, li),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &Field, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        self.0.iter().rev().fold(Fe::ZERO, |acc, &c| f.mul_add(acc, x, c))
    }
}
