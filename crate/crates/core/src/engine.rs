//! Cores of ring expressions, and morphism existence out of solid rings.
//!
//! The core of a ring is recorded as the minimal exponent `e(p)` for which
//! `Z[1/p] x Z/p^e(p)` maps into the ring, plus `q = 1` when the ring has
//! nonzero characteristic `c`, in which case the core is exactly `Z/c`.
//! Each constructor has its own rule; products go through the limit rule
//! (pointwise supremum).

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::char_lcm;
use crate::error::Result;
use crate::expfun::{ExpFun, Support};
use crate::expr::{Factor, RingExpr};
use crate::extnat::ExtNat;
use crate::prime::Prime;
use crate::solid::SolidData;

/// Name of a rule applied while computing a core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `Z` receives no basic ring `Z[1/p] x Z/p^a`: `p r^2 = r` forces `r = 0`.
    Integers,
    /// A characteristic-zero field contains `Q`.
    CharZeroField,
    /// A ring of characteristic `c != 0` has core `Z/c`.
    NonzeroChar,
    /// `Z[J^-1]` is itself solid.
    Localization,
    /// `Z_(p)` is `Z[(P \ {p})^-1]`.
    LocalAtPrime,
    /// `Z_p` is the limit of `Z/p^n`; the supremum is `inf` at `p`.
    PadicTower,
    /// `Zhat` is the product of all `Z_p`.
    Profinite,
    /// Core of a finite product is the supremum of the factors' cores.
    LimitSup,
    /// Indexed products: each factor contributes at its own index prime.
    IndexedSup,
    /// Adjoining indeterminates does not change the core.
    Polynomial,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Integers => "integers",
            Rule::CharZeroField => "char0-field",
            Rule::NonzeroChar => "nonzero-char",
            Rule::Localization => "localization",
            Rule::LocalAtPrime => "local-at-prime",
            Rule::PadicTower => "padic-tower-sup",
            Rule::Profinite => "profinite-sup",
            Rule::LimitSup => "limit-sup",
            Rule::IndexedSup => "indexed-sup",
            Rule::Polynomial => "polynomial",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreResult {
    pub data: SolidData,
    /// Characteristic of the input ring (`0` for characteristic zero).
    pub characteristic: BigUint,
    /// Rules in the order they were applied (children first).
    pub derivation: Vec<Rule>,
}

impl CoreResult {
    fn leaf(data: SolidData, characteristic: BigUint, rule: Rule) -> Self {
        CoreResult { data, characteristic, derivation: vec![rule] }
    }

    pub fn derivation_text(&self) -> String {
        self.derivation.iter().map(|r| r.name()).collect::<Vec<_>>().join(",")
    }
}

/// Core data and characteristic of `expr`.
pub fn core(expr: &RingExpr) -> Result<CoreResult> {
    let zero = BigUint::zero;
    Ok(match expr {
        RingExpr::Integers => CoreResult::leaf(SolidData::integers(), zero(), Rule::Integers),
        RingExpr::Rationals | RingExpr::Field0 => {
            CoreResult::leaf(SolidData::rationals(), zero(), Rule::CharZeroField)
        }
        RingExpr::Cyclic(n) => CoreResult::leaf(SolidData::cyclic(n)?, n.clone(), Rule::NonzeroChar),
        RingExpr::Localized(set) => CoreResult::leaf(SolidData::localization(set), zero(), Rule::Localization),
        RingExpr::LocalAt(p) => CoreResult::leaf(local_at(*p), zero(), Rule::LocalAtPrime),
        RingExpr::Padic(p) => CoreResult::leaf(local_at(*p), zero(), Rule::PadicTower),
        RingExpr::Profinite => CoreResult::leaf(SolidData::integers(), zero(), Rule::Profinite),
        RingExpr::Product(a, b) => {
            let ca = core(a)?;
            let cb = core(b)?;
            let data = SolidData::limit_sup([&ca.data, &cb.data])?;
            let characteristic = char_lcm(&ca.characteristic, &cb.characteristic);
            let mut derivation = ca.derivation;
            derivation.extend(cb.derivation);
            derivation.push(Rule::LimitSup);
            CoreResult { data, characteristic, derivation }
        }
        RingExpr::IndexedProd { index, factor } => {
            let (data, characteristic) = match factor {
                Factor::CyclicPow(exp) => {
                    let e = ExpFun::sup_indexed(index, exp);
                    // Every factor is cyclic, so the limit rule gives q = 1
                    // exactly when finitely many factors are nonzero.
                    match e.support_positive() {
                        Support::Finite(_) => {
                            let data = SolidData::new(e, 1)?;
                            let c = data.characteristic();
                            (data, c)
                        }
                        Support::Infinite => (SolidData::new(e, 0)?, zero()),
                    }
                }
                Factor::Padic if index.is_empty() => (SolidData::zero_ring(), BigUint::one()),
                Factor::Padic => (SolidData::new(ExpFun::indicator(index, ExtNat::Inf, ExtNat::ZERO), 0)?, zero()),
            };
            CoreResult::leaf(data, characteristic, Rule::IndexedSup)
        }
        RingExpr::Poly(base) => {
            let mut c = core(base)?;
            c.derivation.push(Rule::Polynomial);
            c
        }
    })
}

/// `Z_(p)`: `inf` at `p`, `0` elsewhere.
fn local_at(p: Prime) -> SolidData {
    SolidData::new(ExpFun::new(ExtNat::ZERO, [(p, ExtNat::Inf)]), 0).expect("q = 0 is always valid")
}

/// Whether the solid ring named by `source` maps to a ring with core `target`.
///
/// A solid ring is the coproduct of its basic subrings, so it maps to `R`
/// iff each of them does: that is pointwise `source.e >= target.e`, and for
/// `q = 1` sources additionally that `R` has nonzero characteristic.
pub fn hom_exists(source: &SolidData, target: &CoreResult) -> bool {
    source.e().dominates(target.data.e()) && (!source.has_nonzero_char() || !target.characteristic.is_zero())
}

/// Least `a` such that `Z[1/p] x Z/p^a` maps to the target.
pub fn min_exponent(p: Prime, target: &CoreResult) -> ExtNat {
    target.data.e().eval(p)
}

/// Solid data of `expr` when the expression is recognizably a solid ring
/// itself (not just a ring with a core). `None` means "not known to be solid".
pub fn solid_form(expr: &RingExpr) -> Result<Option<SolidData>> {
    Ok(match expr {
        RingExpr::Integers
        | RingExpr::Rationals
        | RingExpr::Cyclic(_)
        | RingExpr::Localized(_)
        | RingExpr::LocalAt(_) => Some(core(expr)?.data),
        // A x B is solid iff A and B are and A ⊗ B = 0.
        RingExpr::Product(a, b) => match (solid_form(a)?, solid_form(b)?) {
            (Some(sa), Some(sb)) if SolidData::coproduct([&sa, &sb])? == SolidData::zero_ring() => {
                Some(SolidData::limit_sup([&sa, &sb])?)
            }
            _ => None,
        },
        // Finitely many nonzero factors Z/p^k at distinct primes: a cyclic ring.
        RingExpr::IndexedProd { .. } => {
            let c = core(expr)?;
            c.data.has_nonzero_char().then_some(c.data)
        }
        RingExpr::Poly(base) => solid_form(base)?.filter(|s| *s == SolidData::zero_ring()),
        RingExpr::Padic(_) | RingExpr::Profinite | RingExpr::Field0 => None,
    })
}
