//! Eventually constant exponent functions `P -> N ∪ {inf}` and their lattice
//! operations.
//!
//! An [`ExpFun`] is a default value plus finitely many exceptions. The
//! representation is kept in normal form (no exception equals the default),
//! so derived equality is pointwise equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::extnat::ExtNat;
use crate::prime::{Prime, PrimeSet, SetMode};
use crate::text::{Cursor, PResult};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpFun {
    default: ExtNat,
    exceptions: BTreeMap<Prime, ExtNat>,
}

/// The set `{p : e(p) > 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    Finite(BTreeSet<Prime>),
    Infinite,
}

impl ExpFun {
    pub fn constant(value: ExtNat) -> Self {
        ExpFun { default: value, exceptions: BTreeMap::new() }
    }

    pub fn new(default: ExtNat, exceptions: impl IntoIterator<Item = (Prime, ExtNat)>) -> Self {
        let exceptions = exceptions.into_iter().filter(|(_, v)| *v != default).collect();
        ExpFun { default, exceptions }
    }

    pub fn default_value(&self) -> ExtNat {
        self.default
    }

    pub fn exceptions(&self) -> &BTreeMap<Prime, ExtNat> {
        &self.exceptions
    }

    pub fn eval(&self, p: Prime) -> ExtNat {
        self.exceptions.get(&p).copied().unwrap_or(self.default)
    }

    /// Returns a copy with `e(p)` replaced.
    pub fn with(&self, p: Prime, value: ExtNat) -> Self {
        let mut out = self.clone();
        if value == out.default {
            out.exceptions.remove(&p);
        } else {
            out.exceptions.insert(p, value);
        }
        out
    }

    /// `value` on `set`, `other` elsewhere.
    pub fn indicator(set: &PrimeSet, value: ExtNat, other: ExtNat) -> Self {
        match set.mode() {
            SetMode::Finite => ExpFun::new(other, set.exceptions().iter().map(|&p| (p, value))),
            SetMode::Cofinite => ExpFun::new(value, set.exceptions().iter().map(|&p| (p, other))),
        }
    }

    /// Pointwise combination; the result is again eventually constant.
    pub fn zip_with(&self, other: &ExpFun, f: impl Fn(ExtNat, ExtNat) -> ExtNat) -> ExpFun {
        let default = f(self.default, other.default);
        let keys: BTreeSet<Prime> = self.exceptions.keys().chain(other.exceptions.keys()).copied().collect();
        ExpFun::new(default, keys.into_iter().map(|p| (p, f(self.eval(p), other.eval(p)))))
    }

    pub fn map(&self, f: impl Fn(ExtNat) -> ExtNat) -> ExpFun {
        ExpFun::new(f(self.default), self.exceptions.iter().map(|(&p, &v)| (p, f(v))))
    }

    pub fn min(&self, other: &ExpFun) -> ExpFun {
        self.zip_with(other, std::cmp::min)
    }

    pub fn max(&self, other: &ExpFun) -> ExpFun {
        self.zip_with(other, std::cmp::max)
    }

    /// Pointwise supremum of a nonempty finite family.
    pub fn sup<'a>(family: impl IntoIterator<Item = &'a ExpFun>) -> Option<ExpFun> {
        family.into_iter().fold(None, |acc, e| match acc {
            None => Some(e.clone()),
            Some(a) => Some(a.max(e)),
        })
    }

    /// Supremum of a family indexed by `index`, where the member at `p` is
    /// zero away from `p` and equals `own(p)` at `p`. Off the index the
    /// result is `0`, the value of an empty supremum.
    pub fn sup_indexed(index: &PrimeSet, own: &ExpFun) -> ExpFun {
        own.restrict(index, ExtNat::ZERO)
    }

    /// Keeps the values on `set` and puts `outside` everywhere else.
    pub fn restrict(&self, set: &PrimeSet, outside: ExtNat) -> ExpFun {
        match set.mode() {
            SetMode::Finite => ExpFun::new(outside, set.exceptions().iter().map(|&p| (p, self.eval(p)))),
            SetMode::Cofinite => ExpFun::new(
                self.default,
                self.exceptions
                    .iter()
                    .filter(|(p, _)| set.contains(**p))
                    .map(|(&p, &v)| (p, v))
                    .chain(set.exceptions().iter().map(|&p| (p, outside))),
            ),
        }
    }

    /// `{p : e(p) > 0}`, which is infinite exactly when the default is positive.
    pub fn support_positive(&self) -> Support {
        if self.default > ExtNat::ZERO {
            Support::Infinite
        } else {
            Support::Finite(self.exceptions.keys().copied().collect())
        }
    }

    /// `{p : pred(e(p))}` as a finite or cofinite set.
    pub fn level_set(&self, pred: impl Fn(ExtNat) -> bool) -> PrimeSet {
        if pred(self.default) {
            PrimeSet::all_except(self.exceptions.iter().filter(|(_, v)| !pred(**v)).map(|(p, _)| *p))
        } else {
            PrimeSet::finite(self.exceptions.iter().filter(|(_, v)| pred(**v)).map(|(p, _)| *p))
        }
    }

    pub fn is_everywhere_finite(&self) -> bool {
        self.default.is_finite() && self.exceptions.values().all(|v| v.is_finite())
    }

    /// `self(p) >= other(p)` for every prime.
    pub fn dominates(&self, other: &ExpFun) -> bool {
        self.default >= other.default
            && self
                .exceptions
                .keys()
                .chain(other.exceptions.keys())
                .all(|&p| self.eval(p) >= other.eval(p))
    }

    /// A prime above every exception, standing in for "all other primes".
    pub fn sentinel_prime(&self) -> Prime {
        self.exceptions.keys().next_back().map_or(Prime::TWO, |p| p.next())
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> PResult<ExpFun> {
        cur.expect("e")?;
        cur.expect("(")?;
        cur.expect("default")?;
        cur.expect("=")?;
        let default = ExtNat::parse_from(cur)?;
        let mut exceptions = BTreeMap::new();
        if cur.eat(";") {
            loop {
                cur.skip_ws();
                let at = cur.pos();
                let p = cur.prime()?;
                cur.expect("=>")?;
                let v = ExtNat::parse_from(cur)?;
                if exceptions.insert(p, v).is_some() {
                    return Err(cur.error(
                        at,
                        crate::error::ParseErrorKind::Invalid(format!("duplicate entry for prime {p}")),
                    ));
                }
                if !cur.eat(",") {
                    break;
                }
            }
        }
        cur.expect(")")?;
        Ok(ExpFun::new(default, exceptions))
    }
}

impl fmt::Display for ExpFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(default={}", self.default)?;
        for (i, (p, v)) in self.exceptions.iter().enumerate() {
            f.write_str(if i == 0 { "; " } else { ", " })?;
            write!(f, "{p}=>{v}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for ExpFun {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let e = ExpFun::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(e)
    }
}
