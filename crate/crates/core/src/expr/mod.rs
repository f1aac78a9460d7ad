//! Ring expressions: the rings whose cores the engine knows how to compute.
//!
//! ```text
//! expr      := term { "x" term }
//! term      := "Z" | "Q" | "Zhat" | "Field(0)"
//!            | "Z/" nat [ "Z" ]
//!            | "Z[" inv "]"
//!            | "Z_(" prime ")"
//!            | "Z_" prime
//!            | "Poly(" expr ")"
//!            | "Prod(p in " primeset ")" ( "Z/p^" expspec | "Z_p" )
//!            | "(" expr ")"
//! inv       := "1/" prime { "," "1/" prime }  |  primeset "^-1"
//! expspec   := nat | expfun-text
//! ```
//!
//! Whitespace is allowed between any two tokens. `x` is left-associative.

mod parse;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::ParseError;
use crate::expfun::ExpFun;
use crate::extnat::ExtNat;
use crate::prime::{Prime, PrimeSet, SetMode};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingExpr {
    /// `Z`
    Integers,
    /// `Q`
    Rationals,
    /// `Z/n`, `n >= 1`.
    Cyclic(BigUint),
    /// `Z[J^-1]`
    Localized(PrimeSet),
    /// `Z_(p)`, the localization at the prime ideal `(p)`.
    LocalAt(Prime),
    /// `Z_p`, the p-adic integers.
    Padic(Prime),
    /// `Zhat`, the profinite completion of `Z`.
    Profinite,
    /// `Field(0)`: some field of characteristic zero.
    Field0,
    Product(Box<RingExpr>, Box<RingExpr>),
    /// `prod_{p in index} factor(p)`
    IndexedProd { index: PrimeSet, factor: Factor },
    /// Polynomial ring over the base in any set of indeterminates.
    Poly(Box<RingExpr>),
}

/// The factor of an indexed product at the index prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `Z/p^e(p)`; `e` is finite on the index.
    CyclicPow(ExpFun),
    /// `Z_p`
    Padic,
}

impl RingExpr {
    pub fn product(a: RingExpr, b: RingExpr) -> RingExpr {
        RingExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn poly(base: RingExpr) -> RingExpr {
        RingExpr::Poly(Box::new(base))
    }

    pub fn cyclic(n: u64) -> RingExpr {
        RingExpr::Cyclic(BigUint::from(n))
    }

    /// `Prod(p in index) Z/p^exp`, rejecting exponents that are `inf` on
    /// some index prime (the offending prime is returned).
    pub fn indexed_cyclic(index: PrimeSet, exp: ExpFun) -> Result<RingExpr, Prime> {
        if let Some(p) = infinite_on(&index, &exp) {
            return Err(p);
        }
        Ok(RingExpr::IndexedProd { index, factor: Factor::CyclicPow(exp) })
    }

    /// Rewrites `Z[{}^-1]` to `Z` and `Z[P^-1]` to `Q`, everywhere.
    pub fn normalize(&self) -> RingExpr {
        match self {
            RingExpr::Localized(set) if set.is_empty() => RingExpr::Integers,
            RingExpr::Localized(set) if set.is_all() => RingExpr::Rationals,
            RingExpr::Product(a, b) => RingExpr::product(a.normalize(), b.normalize()),
            RingExpr::Poly(base) => RingExpr::poly(base.normalize()),
            other => other.clone(),
        }
    }
}

/// Some index prime where `exp` is infinite, if any.
fn infinite_on(index: &PrimeSet, exp: &ExpFun) -> Option<Prime> {
    match index.mode() {
        SetMode::Finite => index.exceptions().iter().copied().find(|&p| !exp.eval(p).is_finite()),
        SetMode::Cofinite => {
            if let Some((&p, _)) = exp
                .exceptions()
                .iter()
                .find(|(p, v)| !v.is_finite() && index.contains(**p))
            {
                return Some(p);
            }
            if exp.default_value().is_finite() {
                return None;
            }
            // The default is inf: any index prime that is not a finite exception.
            let mut p = Prime::TWO;
            loop {
                if index.contains(p) && !exp.eval(p).is_finite() {
                    return Some(p);
                }
                p = p.next();
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Padic => f.write_str("Z_p"),
            Factor::CyclicPow(exp) => match exp.default_value() {
                ExtNat::Fin(n) if exp.exceptions().is_empty() => write!(f, "Z/p^{n}"),
                _ => write!(f, "Z/p^{exp}"),
            },
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Integers => f.write_str("Z"),
            RingExpr::Rationals => f.write_str("Q"),
            RingExpr::Cyclic(n) => write!(f, "Z/{n}"),
            RingExpr::Localized(set) if set.is_empty() => f.write_str("Z"),
            RingExpr::Localized(set) if set.is_all() => f.write_str("Q"),
            RingExpr::Localized(set) => match set.mode() {
                SetMode::Finite => {
                    f.write_str("Z[")?;
                    for (i, p) in set.exceptions().iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "1/{p}")?;
                    }
                    f.write_str("]")
                }
                SetMode::Cofinite => write!(f, "Z[{set}^-1]"),
            },
            RingExpr::LocalAt(p) => write!(f, "Z_({p})"),
            RingExpr::Padic(p) => write!(f, "Z_{p}"),
            RingExpr::Profinite => f.write_str("Zhat"),
            RingExpr::Field0 => f.write_str("Field(0)"),
            RingExpr::Product(a, b) => {
                if matches!(**b, RingExpr::Product(..)) {
                    write!(f, "{a} x ({b})")
                } else {
                    write!(f, "{a} x {b}")
                }
            }
            RingExpr::IndexedProd { index, factor } => write!(f, "Prod(p in {index}) {factor}"),
            RingExpr::Poly(base) => write!(f, "Poly({base})"),
        }
    }
}

impl FromStr for RingExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}
