use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::RationalFunction;

/// A generator of the step algebra: `v<i>` (image of the multiplet generator
/// with index `i`) or the central `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ZLetter {
    V(i64),
    R,
}

impl ZLetter {
    /// `[eta, v_i] = -i v_i`, matching the weight of the multiplet generator.
    pub fn weight(self) -> i64 {
        match self {
            ZLetter::V(i) => -i,
            ZLetter::R => 0,
        }
    }

    /// Index reversal `v_i -> v_{-i}`, `r -> r`.
    pub fn reversed(self) -> Self {
        match self {
            ZLetter::V(i) => ZLetter::V(-i),
            ZLetter::R => ZLetter::R,
        }
    }
}

impl fmt::Display for ZLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZLetter::V(i) => write!(f, "v{i}"),
            ZLetter::R => f.write_str("r"),
        }
    }
}

/// Word over [`ZLetter`]s with a left coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZWord {
    pub coefficient: RationalFunction,
    pub letters: Vec<ZLetter>,
}

impl ZWord {
    pub fn new(letters: Vec<ZLetter>) -> Self {
        Self {
            coefficient: RationalFunction::one(),
            letters,
        }
    }

    pub fn one() -> Self {
        Self::new(Vec::new())
    }

    pub fn with_coefficient(mut self, c: RationalFunction) -> Self {
        self.coefficient = c;
        self
    }

    pub fn weight(&self) -> i64 {
        self.letters.iter().map(|l| l.weight()).sum()
    }

    /// Index sum of the `v` letters.
    pub fn index_sum(&self) -> i64 {
        -self.weight()
    }

    /// Letter shape rendered without the coefficient, e.g. `v-2*v-1` or `1`.
    pub fn shape(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == self.letters[i] {
                j += 1;
            }
            out.push(if j - i == 1 {
                self.letters[i].to_string()
            } else {
                format!("{}^{}", self.letters[i], j - i)
            });
            i = j;
        }
        out.join("*")
    }

    /// Parses a letter shape: `v-1*v-2`, `v0^2`, `r`, `1`.
    pub fn parse_shape(src: &str) -> Result<Self> {
        let s = src.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let bad = || Error::Invalid(format!("cannot parse word '{src}'"));
        let mut letters = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<usize>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let letter = if base == "r" {
                ZLetter::R
            } else {
                let idx = base.strip_prefix('v').ok_or_else(bad)?;
                ZLetter::V(idx.parse().map_err(|_| bad())?)
            };
            letters.extend(std::iter::repeat_n(letter, exp));
        }
        if letters.is_empty() {
            return Err(bad());
        }
        Ok(Self::new(letters))
    }
}

impl fmt::Display for ZWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficient.is_one() {
            return f.write_str(&self.shape());
        }
        if self.letters.is_empty() {
            return write!(f, "{}", self.coefficient);
        }
        write!(f, "({})*{}", self.coefficient, self.shape())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_round_trip() {
        for s in ["v-2*v-1", "v0^2", "r", "1", "v1*v2", "v-1"] {
            assert_eq!(ZWord::parse_shape(s).unwrap().shape(), s);
        }
        assert!(ZWord::parse_shape("w1").is_err());
        assert_eq!(ZWord::parse_shape("v-1*v-2").unwrap().index_sum(), -3);
    }
}
