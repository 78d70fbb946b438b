use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial in `eta` with rational coefficients.
///
/// `coeffs[k]` is the coefficient of `eta^k`. Trailing zeros are never stored,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn eta() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `eta - root`
    pub fn linear(root: BigRational) -> Self {
        Self::from_coeffs(vec![-root, BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Substitutes `eta -> scale*eta + offset`.
    pub fn compose_affine(&self, scale: &BigRational, offset: &BigRational) -> Self {
        let mut out = Self::zero();
        let lin = Self::from_coeffs(vec![offset.clone(), scale.clone()]);
        // Horner in the substituted variable.
        for c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &Self::constant(c.clone());
        }
        out
    }

    /// Substitutes `eta -> eta + k`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.is_constant() {
            return self.clone();
        }
        self.compose_affine(&BigRational::one(), &BigRational::from_integer(k.into()))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Positive rational `s` such that `s*self` has coprime integer coefficients
    /// with a positive leading coefficient. Zero maps to one.
    pub fn primitive_scale(&self) -> BigRational {
        primitive_scale_of(self.coeffs.iter())
    }

    /// Rational roots, each listed once, in increasing order.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let mut p = self.clone();
        let mut roots = Vec::new();
        // Strip factors of eta first; the candidate test below needs a nonzero constant.
        if p.coeffs[0].is_zero() {
            roots.push(BigRational::zero());
            while !p.is_zero() && p.coeffs[0].is_zero() {
                p.coeffs.remove(0);
            }
        }
        let ints = p.scale(&p.primitive_scale());
        let a0 = ints.coeffs[0].to_integer().abs();
        let an = ints.leading().unwrap().to_integer().abs();
        for q in divisors(&an) {
            for num in divisors(&a0) {
                for sign in [1, -1] {
                    let cand = BigRational::new(&num * BigInt::from(sign), q.clone());
                    if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    pub(crate) fn fmt_with(&self, f: &mut impl fmt::Write, spaced: bool) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (plus, minus) = if spaced { (" + ", " - ") } else { ("+", "-") };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { minus } else { plus })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("eta")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

pub(crate) fn primitive_scale_of<'a>(coeffs: impl Iterator<Item = &'a BigRational>) -> BigRational {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return BigRational::one();
    }
    BigRational::new(den_lcm, num_gcd)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, true)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut c = long.coeffs.clone();
        for (a, b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Polynomial::from_coeffs(c)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(c)
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top down. Only used for
/// deterministic sorting.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
    }

    #[test]
    fn gcd_with_one_is_one() {
        let a = Polynomial::from_ints(&[3, 0, 5, 1]);
        assert!(a.gcd(&Polynomial::one()).unwrap().is_one());
    }

    #[test]
    fn gcd_of_zeros_is_an_error() {
        assert!(matches!(
            Polynomial::zero().gcd(&Polynomial::zero()),
            Err(Error::GcdOfZeros)
        ));
    }

    #[test]
    fn gcd_with_zero_is_monic_other() {
        let a = Polynomial::from_ints(&[2, 4]);
        assert_eq!(Polynomial::zero().gcd(&a).unwrap(), Polynomial::from_coeffs(vec![q(1, 2), q(1, 1)]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = Polynomial::from_ints(&[5, -3, 0, 2, 7]);
        let d = Polynomial::from_ints(&[1, 0, 3]);
        let (qq, r) = a.div_rem(&d).unwrap();
        assert_eq!(&(&qq * &d) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn shift_substitutes() {
        // (eta - 2) shifted by 1 is eta - 1
        let p = Polynomial::from_ints(&[-2, 1]);
        assert_eq!(p.shift(1), Polynomial::from_ints(&[-1, 1]));
        let p = Polynomial::from_ints(&[0, 0, 1]);
        assert_eq!(p.shift(-3), Polynomial::from_ints(&[9, -6, 1]));
    }

    #[test]
    fn rational_roots_of_product() {
        // (2 eta - 1)(eta + 3) eta
        let p = &(&Polynomial::from_ints(&[-1, 2]) * &Polynomial::from_ints(&[3, 1])) * &Polynomial::eta();
        assert_eq!(p.rational_roots(), vec![q(-3, 1), q(0, 1), q(1, 2)]);
        assert!(Polynomial::from_ints(&[1, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Polynomial::from_ints(&[-2, 1]).to_string(), "eta - 2");
        assert_eq!(Polynomial::from_coeffs(vec![q(0, 1), q(4, 3)]).to_string(), "4/3*eta");
        assert_eq!(Polynomial::from_ints(&[1, 0, -3]).to_string(), "-3*eta^2 + 1");
        let mut s = String::new();
        Polynomial::from_ints(&[-2, 2]).fmt_with(&mut s, false).unwrap();
        assert_eq!(s, "2*eta-2");
    }
}
