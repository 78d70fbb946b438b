use num_bigint::BigInt;
use num_rational::BigRational;

use super::RationalFunction;
use crate::error::{Error, Result};
use crate::expr::{parse_err, parse_tokens, tokenize, ExprBuilder, Token};

struct CoefficientBuilder;

impl ExprBuilder for CoefficientBuilder {
    type Value = RationalFunction;

    fn int(&self, n: BigInt) -> Result<RationalFunction> {
        Ok(RationalFunction::from_rational(BigRational::from_integer(n)))
    }

    fn ident(&self, name: &str, tok: &Token) -> Result<RationalFunction> {
        match name {
            "eta" => Ok(RationalFunction::eta()),
            _ => Err(parse_err(tok, format!("unknown symbol '{name}' in coefficient"))),
        }
    }

    fn add(&self, a: RationalFunction, b: RationalFunction) -> Result<RationalFunction> {
        Ok(a + b)
    }

    fn sub(&self, a: RationalFunction, b: RationalFunction) -> Result<RationalFunction> {
        Ok(a - b)
    }

    fn mul(&self, a: RationalFunction, b: RationalFunction) -> Result<RationalFunction> {
        Ok(a * b)
    }

    fn div(&self, a: RationalFunction, b: RationalFunction, tok: &Token) -> Result<RationalFunction> {
        a.try_div(&b).map_err(|_| parse_err(tok, "division by zero"))
    }

    fn neg(&self, a: RationalFunction) -> Result<RationalFunction> {
        Ok(-a)
    }

    fn pow(&self, a: RationalFunction, e: i64, tok: &Token) -> Result<RationalFunction> {
        let e = i32::try_from(e).map_err(|_| parse_err(tok, "exponent out of range"))?;
        a.pow(e).map_err(|_| parse_err(tok, "negative power of zero"))
    }
}

/// Parses the coefficient grammar: integers, `eta`, `+ - * / ^` and parentheses.
pub fn parse_rational_function(src: &str) -> Result<RationalFunction> {
    let toks = tokenize(src, 1, 1, &|_| false)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "empty expression".into(),
        });
    }
    parse_tokens(&toks, &CoefficientBuilder, (1, src.chars().count() + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_powers() {
        let f = parse_rational_function("-eta^2 + 2*eta/4 - 1").unwrap();
        assert_eq!(f.to_string(), "-eta^2 + 1/2*eta - 1");
        let g = parse_rational_function("eta^-2").unwrap();
        assert_eq!(g.to_string(), "1/(eta^2)");
    }

    #[test]
    fn alpha_expression() {
        let a = parse_rational_function("4/((eta+1)*(eta-2))*(1 - 9/(2*(2*eta-1)*(2*eta-3)))").unwrap();
        let expect = parse_rational_function("(16*eta^2 - 32*eta - 6)/((eta+1)*(eta-2)*(2*eta-1)*(2*eta-3))").unwrap();
        assert_eq!(a, expect);
    }

    #[test]
    fn errors_carry_position() {
        match parse_rational_function("1 + x") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_rational_function("1/(eta-eta)").is_err());
        assert!(parse_rational_function("(eta").is_err());
        assert!(parse_rational_function("").is_err());
    }
}
