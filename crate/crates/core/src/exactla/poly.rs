use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::ExactMatrix;
use crate::field::{FieldSpec, Scalar};

/// A polynomial over a [`FieldSpec`], coefficients in ascending degree with
/// no trailing zeros (so the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(spec: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.spec() != spec) {
            return Err(Error::FieldMismatch(spec, c.spec()));
        }
        let mut p = Polynomial { spec, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn from_i64(spec: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(spec, coeffs.iter().map(|&c| spec.from_i64(c)).collect()).expect("same field")
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Polynomial {
            spec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::monomial(spec, 0)
    }

    /// `x^degree`.
    pub fn monomial(spec: FieldSpec, degree: usize) -> Self {
        let mut coeffs = vec![spec.zero(); degree + 1];
        coeffs[degree] = spec.one();
        Polynomial { spec, coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.spec.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.spec, other.spec))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Polynomial::new(self.spec, coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(&-self.spec.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Polynomial::new(self.spec, coeffs).expect("same field")
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.spec));
        }
        let mut coeffs = vec![self.spec.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::new(self.spec, coeffs)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Polynomial::zero(self.spec), self.clone()));
        };
        let mut quot = vec![self.spec.zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        Ok((
            Polynomial::new(self.spec, quot)?,
            Polynomial::new(self.spec, rem)?,
        ))
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.spec.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation `f(A)`, the constant term contributing `c * I`.
    pub fn eval_matrix(&self, a: &ExactMatrix) -> Result<ExactMatrix> {
        if self.spec != a.spec() {
            return Err(Error::FieldMismatch(self.spec, a.spec()));
        }
        let n = a.square_size()?;
        let mut acc = ExactMatrix::zeros(self.spec, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?;
            for i in 0..n {
                let d = &acc[(i, i)] + c;
                acc[(i, i)] = d;
            }
        }
        Ok(acc)
    }

    /// Writes `g(x) = x^m f(x)` with `f(0) != 0`.
    pub fn split_trailing_power(&self) -> Result<PolySplit> {
        let m = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroPolynomial)?;
        let f = Polynomial::new(self.spec, self.coeffs[m..].to_vec())?;
        Ok(PolySplit { m, f })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = deg == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 if show_coeff => write!(f, "*x")?,
                1 => write!(f, "x")?,
                _ if show_coeff => write!(f, "*x^{deg}")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        Ok(())
    }
}

/// `g(x) = x^m * f(x)` with `f(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySplit {
    pub m: usize,
    pub f: Polynomial,
}

impl PolySplit {
    pub fn reconstruct(&self) -> Polynomial {
        Polynomial::monomial(self.f.spec(), self.m)
            .mul(&self.f)
            .expect("same field")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn trimming_and_degree() {
        let p = Polynomial::from_i64(q(), &[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_i64(q(), &[0, 0]).degree(), None);
        assert!(Polynomial::from_i64(f2(), &[1, 0, 2]).degree() == Some(0));
    }

    #[test]
    fn split_examples() {
        let s = Polynomial::from_i64(q(), &[0, 0, 1, 1])
            .split_trailing_power()
            .unwrap();
        assert_eq!(s.m, 2);
        assert_eq!(s.f, Polynomial::from_i64(q(), &[1, 1]));

        let s = Polynomial::monomial(q(), 1).split_trailing_power().unwrap();
        assert_eq!((s.m, s.f), (1, Polynomial::one(q())));

        let g = Polynomial::from_i64(q(), &[1, 0, 1]);
        let s = g.split_trailing_power().unwrap();
        assert_eq!((s.m, &s.f), (0, &g));
        assert_eq!(s.reconstruct(), g);

        assert_eq!(
            Polynomial::zero(q()).split_trailing_power(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn division() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let a = Polynomial::from_i64(q(), &[-1, 0, 0, 1]);
        let b = Polynomial::from_i64(q(), &[-1, 1]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quot, Polynomial::from_i64(q(), &[1, 1, 1]));
        assert!(rem.is_zero());
        let (quot, rem) = b.div_rem(&a).unwrap();
        assert!(quot.is_zero());
        assert_eq!(rem, b);
        assert!(a.div_rem(&Polynomial::zero(q())).is_err());
    }

    #[test]
    fn evaluation() {
        let p = Polynomial::from_i64(q(), &[1, -3, 2]);
        assert_eq!(p.eval(&q().from_i64(2)), q().from_i64(3));
        let one = Polynomial::one(q());
        let m = ExactMatrix::from_i64_rows(q(), &[&[1, 2], &[3, 4]]);
        assert_eq!(one.eval_matrix(&m).unwrap(), ExactMatrix::identity(q(), 2));
        assert_eq!(Polynomial::monomial(q(), 1).eval_matrix(&m).unwrap(), m);
    }

    #[test]
    fn eval_x_plus_one_mod_two() {
        let b = ExactMatrix::from_i64_rows(f2(), &[&[1, 1], &[1, 1]]);
        let f = Polynomial::from_i64(f2(), &[1, 1]);
        let fb = f.eval_matrix(&b).unwrap();
        assert_eq!(fb, ExactMatrix::from_i64_rows(f2(), &[&[0, 1], &[1, 0]]));
        assert!(fb.determinant().unwrap().is_one());
    }

    #[test]
    fn display() {
        assert_eq!(
            Polynomial::from_i64(q(), &[-1, 0, 1]).to_string(),
            "x^2 - 1"
        );
        assert_eq!(
            Polynomial::from_i64(q(), &[0, -2, 3]).to_string(),
            "3*x^2 - 2*x"
        );
        assert_eq!(Polynomial::from_i64(f2(), &[1, 1]).to_string(), "x + 1");
        assert_eq!(Polynomial::zero(q()).to_string(), "0");
        assert_eq!(Polynomial::monomial(q(), 1).to_string(), "x");
    }
}
