use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::text::{Cursor, PResult};

/// A natural number or `+inf`. `Fin(a) < Inf` for every `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(a) => Some(a),
            ExtNat::Inf => None,
        }
    }

    /// `0 < self < inf`
    pub fn is_torsion_exponent(self) -> bool {
        matches!(self, ExtNat::Fin(a) if a > 0)
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> PResult<ExtNat> {
        if cur.eat("inf") {
            return Ok(ExtNat::Inf);
        }
        Ok(ExtNat::Fin(cur.u64()?))
    }
}

impl From<u64> for ExtNat {
    fn from(a: u64) -> Self {
        ExtNat::Fin(a)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(a) => write!(f, "{a}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let v = ExtNat::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(v)
    }
}
