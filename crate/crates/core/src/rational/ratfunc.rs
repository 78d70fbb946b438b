use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{primitive_scale_of, Polynomial};
use crate::error::{Error, Result};

/// Element of the rational function field `Q(eta)` in canonical form:
/// numerator and denominator coprime, denominator monic, zero stored as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let c = den.leading().unwrap().recip();
            return Self {
                num: num.scale(&c),
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den).expect("nonzero numerator");
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
        };
        let lc = den.leading().unwrap().recip();
        Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn eta() -> Self {
        Self::from_poly(Polynomial::eta())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Polynomial::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational constant, if it does not depend on `eta`.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.constant_term())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Self {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// `eta -> eta + k`. A field automorphism, so canonical form is kept without
    /// a gcd pass (a shifted monic polynomial is still monic).
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.num.is_constant() && self.den.is_one() {
            return self.clone();
        }
        Self {
            num: self.num.shift(k),
            den: self.den.shift(k),
        }
    }

    /// `eta -> scale*eta + offset`, with `scale != 0`.
    pub fn compose_affine(&self, scale: &BigRational, offset: &BigRational) -> Self {
        assert!(!scale.is_zero(), "affine substitution needs a nonzero scale");
        Self::canonical(
            self.num.compose_affine(scale, offset),
            self.den.compose_affine(scale, offset),
        )
    }

    /// `eta -> -eta`
    pub fn reflect(&self) -> Self {
        self.compose_affine(&-BigRational::one(), &BigRational::zero())
    }

    /// Specializes `eta` to a rational value. Denominator zeros are poles, not
    /// silently extended.
    pub fn eval(&self, at: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole(at.to_string()));
        }
        Ok(self.num.eval(at) / d)
    }

    /// Rational values of `eta` where the denominator vanishes.
    pub fn poles(&self) -> Vec<BigRational> {
        self.den.rational_roots()
    }

    /// Rendering in the fixed text grammar, e.g. `1 - 2/(eta-2)`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write_text(&mut s).unwrap();
        s
    }

    fn write_text(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let (quot, rem) = self.num.div_rem(&self.den).expect("nonzero denominator");
        if rem.is_zero() {
            return quot.fmt_with(f, true);
        }
        // Scale remainder and denominator jointly to coprime integers.
        let s = primitive_scale_of(rem.coeffs().iter().chain(self.den.coeffs()));
        let mut top = rem.scale(&s);
        let bottom = self.den.scale(&s);
        let negative = top.leading().unwrap().is_negative();
        if negative {
            top = -&top;
        }
        if !quot.is_zero() {
            quot.fmt_with(f, true)?;
            f.write_str(if negative { " - " } else { " + " })?;
        } else if negative {
            f.write_str("-")?;
        }
        if top.term_count() > 1 {
            f.write_str("(")?;
            top.fmt_with(f, false)?;
            f.write_str(")")?;
        } else {
            top.fmt_with(f, false)?;
        }
        f.write_str("/(")?;
        bottom.fmt_with(f, false)?;
        f.write_str(")")
    }

    /// True when the rendering is a single signed product (no top-level `+`,
    /// `-` between terms, or division), so it can prefix a monomial unparenthesized.
    pub(crate) fn is_simple(&self) -> bool {
        self.den.is_one() && self.num.term_count() <= 1
    }

    pub(crate) fn leading_sign_negative(&self) -> bool {
        let (quot, rem) = self.num.div_rem(&self.den).unwrap();
        match quot.leading() {
            Some(c) => c.is_negative(),
            None => rem.leading().is_some_and(|c| c.is_negative()),
        }
    }

    /// LaTeX rendering with `\eta` and displayed fractions.
    pub fn to_latex(&self) -> String {
        let (quot, rem) = self.num.div_rem(&self.den).unwrap();
        let poly_tex = |p: &Polynomial| p.to_string().replace("eta", "\\eta").replace('*', " ");
        if rem.is_zero() {
            return poly_tex(&quot);
        }
        let s = primitive_scale_of(rem.coeffs().iter().chain(self.den.coeffs()));
        let mut top = rem.scale(&s);
        let bottom = self.den.scale(&s);
        let negative = top.leading().unwrap().is_negative();
        if negative {
            top = -&top;
        }
        let frac = format!("\\frac{{{}}}{{{}}}", poly_tex(&top), poly_tex(&bottom));
        match (quot.is_zero(), negative) {
            (true, false) => frac,
            (true, true) => format!("-{frac}"),
            (false, false) => format!("{} + {frac}", poly_tex(&quot)),
            (false, true) => format!("{} - {frac}", poly_tex(&quot)),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f)
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::rational::parse::parse_rational_function(s)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalFunction::from_poly(num);
            }
            return RationalFunction::canonical(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying to keep intermediate degrees down.
        let g1 = self.num.gcd(&rhs.den).unwrap();
        let g2 = rhs.num.gcd(&self.den).unwrap();
        let div = |p: &Polynomial, g: &Polynomial| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_rem(g).unwrap().0
            }
        };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        let lc = den.leading().unwrap().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn like_terms_add() {
        assert_eq!(rf("1/(eta-2)") + rf("1/(eta-2)"), rf("2/(eta-2)"));
        let f = rf("(3*eta^2-1)/(eta+5)");
        assert_eq!(&f + &RationalFunction::zero(), f);
    }

    #[test]
    fn correction_term_cancels() {
        assert!((rf("1 - 2/(eta-2)") + rf("2/(eta-2)")).is_one());
    }

    #[test]
    fn inverse_pair_and_zero() {
        assert!((rf("(eta-1)/(eta-2)") * rf("(eta-2)/(eta-1)")).is_one());
        assert!((rf("eta^3") * RationalFunction::zero()).is_zero());
    }

    #[test]
    fn gcd_reduction_on_construction() {
        let f = RationalFunction::new(Polynomial::from_ints(&[-2, 2]), Polynomial::from_ints(&[-4, 4])).unwrap();
        assert_eq!(f, RationalFunction::ratio(1, 2));
    }

    #[test]
    fn inversion() {
        assert_eq!(rf("eta-2").inv().unwrap(), rf("1/(eta-2)"));
        assert_eq!(RationalFunction::ratio(1, 2).inv().unwrap(), RationalFunction::from_int(2));
        let f = rf("(3*eta^2-1)/(eta+5)");
        assert_eq!(f.inv().unwrap().inv().unwrap(), f);
        assert!(matches!(RationalFunction::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn shift_substitutes_eta() {
        assert_eq!(rf("1 - 2/(eta-2)").shift(1), rf("1 - 2/(eta-1)"));
        let f = rf("(eta^2+eta-7)/(2*eta^3-eta+11)");
        assert_eq!(f.shift(0), f);
        assert_eq!(f.shift(3).shift(-3), f);
    }

    #[test]
    fn eval_rejects_poles() {
        let f = rf("1/(eta-2)");
        assert!(matches!(f.eval(&BigRational::from_integer(2.into())), Err(Error::Pole(_))));
        assert_eq!(f.eval(&BigRational::from_integer(3.into())).unwrap(), BigRational::one());
    }

    #[test]
    fn rendering() {
        assert_eq!(rf("1 - 2/(eta-2)").to_string(), "1 - 2/(eta-2)");
        assert_eq!(rf("1/(2*eta-2)").to_string(), "1/(2*eta-2)");
        assert_eq!(rf("-1/(2*eta-2)").to_string(), "-1/(2*eta-2)");
        assert_eq!(rf("2*eta").to_string(), "2*eta");
        assert_eq!(rf("4*eta/3").to_string(), "4/3*eta");
        assert_eq!(rf("0").to_string(), "0");
        assert_eq!(rf("(eta+1)/(eta^2+1)").to_string(), "(eta+1)/(eta^2+1)");
        assert_eq!(rf("eta - 1/(eta^2+1)").to_string(), "eta - 1/(eta^2+1)");
    }

    #[test]
    fn latex() {
        assert_eq!(rf("1 - 2/(eta-2)").to_latex(), "1 - \\frac{2}{\\eta - 2}");
    }
}
