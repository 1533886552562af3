//! Coefficient fields.
//!
//! Everything algebraic in this crate is generic over [`Field`]. The residue
//! and form machinery is instantiated at [`GaussianRational`], the exact
//! stand-in for the complex numbers; plain [`BigRational`] works for the
//! ideal-theoretic layers as well.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

/// An exact field usable as polynomial coefficients.
///
/// Owned arithmetic only; callers clone where needed. Equality must be
/// structural (canonical representatives), since Gröbner reduction relies on
/// `is_zero` being decisive.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }

    fn from_i64(v: i64) -> Self;
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Complex conjugation; the identity on real fields.
pub trait Conjugate {
    fn conjugate(&self) -> Self;
}

impl Conjugate for BigRational {
    fn conjugate(&self) -> Self {
        self.clone()
    }
}

impl Conjugate for GaussianRational {
    fn conjugate(&self) -> Self {
        self.conj()
    }
}

/// Coefficients that can be sampled as complex floating point numbers.
pub trait ToComplex {
    fn to_complex<F: Float>(&self) -> Complex<F>;
}

impl ToComplex for BigRational {
    fn to_complex<F: Float>(&self) -> Complex<F> {
        Complex::new(rational_to_float(self), F::zero())
    }
}

pub(crate) fn rational_to_float<F: Float>(q: &BigRational) -> F {
    // Ratio::to_f64 handles huge numerators/denominators without overflow.
    F::from(q.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan)
}

/// An element `re + im·i` of the Gaussian rationals Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_i64(re), BigRational::from_i64(im))
    }

    /// `num/den + 0i`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_integers(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|c|²`, always rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders in the polynomial expression grammar: `3/2`, `-i`, `2*i`,
/// `(1/2-3*i)`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let imag = |f: &mut fmt::Formatter<'_>, v: &BigRational| -> fmt::Result {
            if v.is_one() {
                write!(f, "i")
            } else {
                write!(f, "{v}*i")
            }
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            }
            return imag(f, &self.im.abs());
        }
        write!(f, "({}", self.re)?;
        write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
        imag(f, &self.im.abs())?;
        write!(f, ")")
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        let q = self * rhs.conj();
        Self::new(q.re / &n, q.im / n)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_integers(1, 0)
    }
}

impl Field for GaussianRational {
    fn from_i64(v: i64) -> Self {
        Self::from_integers(v, 0)
    }
}

impl ToComplex for GaussianRational {
    fn to_complex<F: Float>(&self) -> Complex<F> {
        Complex::new(rational_to_float(&self.re), rational_to_float(&self.im))
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_squares_to_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i, GaussianRational::from(-1));
    }

    #[test]
    fn division_is_exact() {
        let a = GaussianRational::new(BigRational::new(3.into(), 2.into()), BigRational::from_i64(1));
        let b = GaussianRational::from_integers(2, -5);
        assert_eq!((a.clone() / b.clone()) * b, a);
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(GaussianRational::from_integers(0, -1).to_string(), "-i");
        assert_eq!(GaussianRational::from_integers(0, 2).to_string(), "2*i");
        let c = GaussianRational::new(BigRational::new(3.into(), 2.into()), BigRational::from_i64(1));
        assert_eq!(c.to_string(), "(3/2+i)");
        assert_eq!(GaussianRational::from_integers(1, -3).to_string(), "(1-3*i)");
    }

    #[test]
    fn lowest_terms_equality_is_structural() {
        assert_eq!(GaussianRational::ratio(2, 4), GaussianRational::ratio(1, 2));
        assert_eq!(GaussianRational::ratio(1, -2), GaussianRational::ratio(-1, 2));
    }
}
