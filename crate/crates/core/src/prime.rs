//! Verified primes and finite/cofinite sets of primes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::arith::is_prime_u64;
use crate::error::{Error, ParseError};
use crate::text::{Cursor, PResult};

/// A prime number; primality is checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(n: u64) -> Result<Prime, Error> {
        if is_prime_u64(n) {
            Ok(Prime(n))
        } else {
            Err(Error::NotPrime(n.to_string()))
        }
    }

    pub(crate) fn new_unchecked(n: u64) -> Prime {
        debug_assert!(is_prime_u64(n), "{n} is not prime");
        Prime(n)
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// The smallest prime strictly above this one.
    pub fn next(self) -> Prime {
        Prime(crate::arith::next_prime(self.0))
    }

    pub const TWO: Prime = Prime(2);
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(n: u64) -> Result<Self, Self::Error> {
        Prime::new(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetMode {
    /// Exactly the listed primes.
    Finite,
    /// Every prime except the listed ones.
    Cofinite,
}

/// A finite or cofinite set of primes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeSet {
    mode: SetMode,
    exceptions: BTreeSet<Prime>,
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet { mode: SetMode::Finite, exceptions: BTreeSet::new() }
    }

    /// The set of all primes.
    pub fn all() -> Self {
        PrimeSet { mode: SetMode::Cofinite, exceptions: BTreeSet::new() }
    }

    pub fn finite(primes: impl IntoIterator<Item = Prime>) -> Self {
        PrimeSet { mode: SetMode::Finite, exceptions: primes.into_iter().collect() }
    }

    pub fn all_except(primes: impl IntoIterator<Item = Prime>) -> Self {
        PrimeSet { mode: SetMode::Cofinite, exceptions: primes.into_iter().collect() }
    }

    pub fn mode(&self) -> SetMode {
        self.mode
    }

    /// The listed primes: members for a finite set, non-members for a cofinite one.
    pub fn exceptions(&self) -> &BTreeSet<Prime> {
        &self.exceptions
    }

    pub fn is_finite(&self) -> bool {
        self.mode == SetMode::Finite
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.exceptions.is_empty()
    }

    pub fn is_all(&self) -> bool {
        !self.is_finite() && self.exceptions.is_empty()
    }

    pub fn contains(&self, p: Prime) -> bool {
        match self.mode {
            SetMode::Finite => self.exceptions.contains(&p),
            SetMode::Cofinite => !self.exceptions.contains(&p),
        }
    }

    pub fn complement(&self) -> PrimeSet {
        let mode = match self.mode {
            SetMode::Finite => SetMode::Cofinite,
            SetMode::Cofinite => SetMode::Finite,
        };
        PrimeSet { mode, exceptions: self.exceptions.clone() }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        use SetMode::*;
        let exceptions = match (self.mode, other.mode) {
            (Finite, Finite) => return PrimeSet::finite(self.exceptions.union(&other.exceptions).copied()),
            (Cofinite, Cofinite) => self.exceptions.intersection(&other.exceptions).copied().collect(),
            (Cofinite, Finite) => self.exceptions.difference(&other.exceptions).copied().collect(),
            (Finite, Cofinite) => other.exceptions.difference(&self.exceptions).copied().collect(),
        };
        PrimeSet { mode: Cofinite, exceptions }
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &PrimeSet) -> PrimeSet {
        self.intersection(&other.complement())
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> PResult<PrimeSet> {
        if cur.eat("P") {
            if cur.eat("\\") {
                let listed = parse_braced(cur)?;
                return Ok(PrimeSet::all_except(listed));
            }
            return Ok(PrimeSet::all());
        }
        if cur.peek_is("{") {
            return Ok(PrimeSet::finite(parse_braced(cur)?));
        }
        Err(cur.syntax("expected a prime set (`P`, `{...}` or `P\\{...}`)".to_string()))
    }
}

fn parse_braced(cur: &mut Cursor<'_>) -> PResult<BTreeSet<Prime>> {
    cur.expect("{")?;
    let mut out = BTreeSet::new();
    if cur.eat("}") {
        return Ok(out);
    }
    loop {
        out.insert(cur.prime()?);
        if cur.eat("}") {
            return Ok(out);
        }
        cur.expect(",")?;
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, primes: &BTreeSet<Prime>) -> fmt::Result {
    f.write_str("{")?;
    for (i, p) in primes.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str("}")
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            SetMode::Finite => write_list(f, &self.exceptions),
            SetMode::Cofinite if self.exceptions.is_empty() => f.write_str("P"),
            SetMode::Cofinite => {
                f.write_str("P\\")?;
                write_list(f, &self.exceptions)
            }
        }
    }
}

impl FromStr for PrimeSet {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let set = PrimeSet::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(set)
    }
}
