//! Classification data of solid rings: an exponent function together with a
//! binary parameter `q`.
//!
//! For `q = 0` the data names the coproduct of the rings `Z[1/p] x Z/p^e(p)`
//! over the primes with finite `e(p)`; for `q = 1` it names the cyclic ring
//! `Z/n` with `n = prod p^e(p)`. The zero ring is `(e = 0, q = 1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{pow_big, prime_factors};
use crate::error::{Error, ParseErrorKind, Result};
use crate::expfun::{ExpFun, Support};
use crate::extnat::ExtNat;
use crate::prime::{Prime, PrimeSet};
use crate::text::{Cursor, PResult};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolidData {
    e: ExpFun,
    q: bool,
}

/// The four kinds of solid ring, plus the zero ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolidType {
    /// `Z/n`, `n >= 2`.
    Cyclic,
    /// `Z[J^-1]`.
    SubringOfQ,
    /// `Z[J^-1] x Z/n`.
    ProductType,
    /// Infinitely many torsion primes.
    Colimit,
    ZeroRing,
}

impl fmt::Display for SolidType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolidType::Cyclic => "cyclic",
            SolidType::SubringOfQ => "subring-of-Q",
            SolidType::ProductType => "product",
            SolidType::Colimit => "colimit",
            SolidType::ZeroRing => "zero-ring",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionInvariants {
    /// `e(p)` where `0 < e(p) < inf`, and `0` elsewhere.
    pub torsion: ExpFun,
    /// `{p : e(p) < inf}`; the torsion-free quotient is `Z[J^-1]`.
    pub quotient_j: PrimeSet,
}

/// Result of bounding the core of a colimit from its members' cores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitBound {
    /// Upper bound for the exponent function and lower bound for `q`.
    pub bound: SolidData,
    /// Whether the bound is known to be the actual core.
    pub exact: bool,
}

impl SolidData {
    /// Validates `(e, q)`; `q = 1` needs `e` finite everywhere with finite
    /// positive support.
    pub fn new(e: ExpFun, q: u8) -> Result<SolidData> {
        match q {
            0 => Ok(SolidData { e, q: false }),
            1 => {
                if let Some(p) = e.exceptions().iter().find(|(_, v)| !v.is_finite()).map(|(p, _)| p) {
                    return Err(Error::InfiniteExponentWithFiniteChar(p.to_string()));
                }
                match e.default_value() {
                    ExtNat::Inf => Err(Error::InfiniteExponentWithFiniteChar("all but finitely many primes".into())),
                    d if d > ExtNat::ZERO => Err(Error::InfiniteSupportWithFiniteChar(d.to_string())),
                    _ => Ok(SolidData { e, q: true }),
                }
            }
            other => Err(Error::BadParameter(other)),
        }
    }

    pub fn zero_ring() -> Self {
        SolidData { e: ExpFun::constant(ExtNat::ZERO), q: true }
    }

    /// `Z`
    pub fn integers() -> Self {
        SolidData { e: ExpFun::constant(ExtNat::Inf), q: false }
    }

    /// `Q`
    pub fn rationals() -> Self {
        SolidData { e: ExpFun::constant(ExtNat::ZERO), q: false }
    }

    /// `Z/n`; `n = 1` is the zero ring.
    pub fn cyclic(n: &BigUint) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let e = ExpFun::new(ExtNat::ZERO, prime_factors(n)?.into_iter().map(|(p, k)| (p, ExtNat::Fin(k))));
        Ok(SolidData { e, q: true })
    }

    /// `Z[J^-1]`
    pub fn localization(inverted: &PrimeSet) -> Self {
        SolidData { e: ExpFun::indicator(inverted, ExtNat::ZERO, ExtNat::Inf), q: false }
    }

    /// The basic ring `Z[1/p] x Z/p^a`.
    pub fn basic(p: Prime, a: u64) -> Self {
        SolidData { e: ExpFun::new(ExtNat::Inf, [(p, ExtNat::Fin(a))]), q: false }
    }

    pub fn e(&self) -> &ExpFun {
        &self.e
    }

    pub fn q(&self) -> u8 {
        self.q as u8
    }

    pub fn has_nonzero_char(&self) -> bool {
        self.q
    }

    /// `0` when `q = 0`, otherwise `prod p^e(p)` (`1` for the zero ring).
    pub fn characteristic(&self) -> BigUint {
        if !self.q {
            return BigUint::zero();
        }
        self.e
            .exceptions()
            .iter()
            .map(|(&p, v)| pow_big(p, v.finite().expect("validated finite")))
            .product::<BigUint>()
            .max(BigUint::one())
    }

    pub fn classify(&self) -> SolidType {
        if self.q {
            if self.e.default_value() == ExtNat::ZERO && self.e.exceptions().is_empty() {
                return SolidType::ZeroRing;
            }
            return SolidType::Cyclic;
        }
        if self.e.default_value().is_torsion_exponent() {
            return SolidType::Colimit;
        }
        if self.e.exceptions().values().any(|v| v.is_torsion_exponent()) {
            SolidType::ProductType
        } else {
            SolidType::SubringOfQ
        }
    }

    pub fn torsion_invariants(&self) -> Result<TorsionInvariants> {
        if self.q {
            return Err(Error::TorsionOfCyclicRing);
        }
        let torsion = self.e.map(|v| if v.is_torsion_exponent() { v } else { ExtNat::ZERO });
        let quotient_j = self.inverted_primes();
        Ok(TorsionInvariants { torsion, quotient_j })
    }

    /// `{p : e(p) < inf}`, the primes inverted in the torsion-free part.
    pub fn inverted_primes(&self) -> PrimeSet {
        self.e.level_set(ExtNat::is_finite)
    }

    pub fn iso(&self, other: &SolidData) -> bool {
        self == other
    }

    /// Coproduct (tensor product over `Z`) of solid rings: pointwise minimum
    /// of exponents, maximum of `q`.
    pub fn coproduct<'a>(family: impl IntoIterator<Item = &'a SolidData>) -> Result<SolidData> {
        let mut iter = family.into_iter();
        let first = iter.next().ok_or(Error::EmptyFamily)?.clone();
        let (e, q) = iter.fold((first.e, first.q), |(e, q), s| (e.min(&s.e), q || s.q));
        SolidData::new(e, q as u8)
    }

    /// Core data of the limit of a diagram from its members' core data:
    /// pointwise supremum, and `q = 1` only if every member has `q = 1` and
    /// the supremum is a finite, finitely supported function.
    pub fn limit_sup<'a>(family: impl IntoIterator<Item = &'a SolidData>) -> Result<SolidData> {
        let family: Vec<&SolidData> = family.into_iter().collect();
        let e = ExpFun::sup(family.iter().map(|s| &s.e)).ok_or(Error::EmptyFamily)?;
        let finite_char = family.iter().all(|s| s.q)
            && e.is_everywhere_finite()
            && matches!(e.support_positive(), Support::Finite(_));
        SolidData::new(e, finite_char as u8)
    }

    /// Bound on the core of a colimit. Exact for a singleton, or when the
    /// caller asserts every member is itself solid (then the colimit is the
    /// coproduct).
    pub fn colimit_bound<'a>(
        family: impl IntoIterator<Item = &'a SolidData>,
        all_members_solid: bool,
    ) -> Result<ColimitBound> {
        let family: Vec<&SolidData> = family.into_iter().collect();
        let singleton = family.len() == 1;
        let bound = SolidData::coproduct(family)?;
        Ok(ColimitBound { bound, exact: singleton || all_members_solid })
    }

    /// The `n` of a type-(1) or type-(3) ring: `prod p^e(p)` over `0 < e(p) < inf`.
    fn torsion_order(&self) -> Option<BigUint> {
        if self.e.default_value().is_torsion_exponent() {
            return None;
        }
        Some(
            self.e
                .exceptions()
                .iter()
                .filter(|(_, v)| v.is_torsion_exponent())
                .map(|(&p, v)| pow_big(p, v.finite().unwrap()))
                .product(),
        )
    }

    /// Canonical ring name, injective on solid data.
    pub fn ring_name(&self) -> String {
        match self.classify() {
            SolidType::ZeroRing => "Z/1".to_string(),
            SolidType::Cyclic => format!("Z/{}", self.characteristic()),
            SolidType::SubringOfQ => localization_name(&self.e.level_set(|v| v == ExtNat::ZERO)),
            SolidType::ProductType => format!(
                "{} x Z/{}",
                localization_name(&self.inverted_primes()),
                self.torsion_order().expect("finitely many torsion primes")
            ),
            SolidType::Colimit => format!("Solid(J={}; e={})", self.inverted_primes(), self.e),
        }
    }

    /// `solid(q=..; e(..))`
    pub fn data_text(&self) -> String {
        format!("solid(q={}; {})", self.q(), self.e)
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> PResult<std::result::Result<SolidData, Error>> {
        cur.expect("solid")?;
        cur.expect("(")?;
        cur.expect("q")?;
        cur.expect("=")?;
        cur.skip_ws();
        let at = cur.pos();
        let q = cur.u64()?;
        if q > 1 {
            return Err(cur.error(at, ParseErrorKind::Invalid(format!("q must be 0 or 1, got {q}"))));
        }
        cur.expect(";")?;
        let e = ExpFun::parse_from(cur)?;
        cur.expect(")")?;
        Ok(SolidData::new(e, q as u8))
    }
}

fn localization_name(inverted: &PrimeSet) -> String {
    if inverted.is_empty() {
        "Z".to_string()
    } else if inverted.is_all() {
        "Q".to_string()
    } else {
        format!("Z[{inverted}^-1]")
    }
}

/// The canonical line: `solid(q=..; e(..))  ring=<name>`.
impl fmt::Display for SolidData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  ring={}", self.data_text(), self.ring_name())
    }
}

/// Accepts `solid(...)`, optionally followed by `ring=<name>` (which must
/// agree with the data) and optionally preceded by a `key:` label such as
/// the `core:` of command output.
impl FromStr for SolidData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        if !cur.peek_is("solid") {
            if let Some(colon) = cur.rest().find(':') {
                let label = &cur.rest()[..colon];
                if !label.is_empty() && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
                    cur.eat(label);
                    cur.expect(":")?;
                }
            }
        }
        let data = SolidData::parse_from(&mut cur)??;
        if cur.eat("ring") {
            cur.expect("=")?;
            cur.skip_ws();
            let at = cur.pos();
            let name = cur.rest().trim_end();
            if name != data.ring_name() {
                return Err(cur
                    .error(
                        at,
                        ParseErrorKind::Invalid(format!(
                            "ring name `{name}` does not match the data (expected `{}`)",
                            data.ring_name()
                        )),
                    )
                    .into());
            }
            return Ok(data);
        }
        cur.expect_end()?;
        Ok(data)
    }
}
