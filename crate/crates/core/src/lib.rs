pub mod algebras;
pub mod error;
mod expr;
pub mod ncpoly;
pub mod rational;
pub mod rewrite;
pub mod stepalgebra;

pub use algebras::{builtin_crw_sl2, builtin_u_sl2, parse_presentation, Presentation};
pub use error::{Error, Result};
pub use ncpoly::{Convention, Element, GenId, Generator, GeneratorSet, Monomial};
pub use rational::{Polynomial, RationalFunction};
pub use rewrite::{Mirror, OverlapReport, RewriteRule, RuleSet};
pub use stepalgebra::{ProjectorSeries, QuotientElement, StepAlgebra, ZLetter, ZRelationReport, ZWord};
