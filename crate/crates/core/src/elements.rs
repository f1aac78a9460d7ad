//! Element arithmetic in `q = 0` solid rings.
//!
//! Such a ring is the colimit of the tower
//! `Z[J_n^-1] x prod_{p in K_n} Z/p^e(p)` over growing finite sets `K_n` of
//! torsion primes. An element is a rational number together with finitely
//! many residues that deviate from it; at every other torsion prime the
//! element's residue is the rational's own residue.
//!
//! Normal form: residues live in `[0, p^e(p))`, a residue equal to the
//! rational's residue is dropped, and at a torsion prime dividing the
//! denominator a residue is always stored (the rational has none there).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{pow_big, prime_factors};
use crate::engine::core;
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::expfun::{ExpFun, Support};
use crate::expr::{Factor, RingExpr};
use crate::extnat::ExtNat;
use crate::prime::{Prime, PrimeSet};
use crate::solid::SolidData;
use crate::text::{Cursor, PResult};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolidElement {
    ring: SolidData,
    rat: Rational,
    deviations: BTreeMap<Prime, BigUint>,
}

/// `p^e(p)` when `0 < e(p) < inf`.
fn torsion_modulus(e: &ExpFun, p: Prime) -> Option<BigUint> {
    match e.eval(p) {
        ExtNat::Fin(k) if k > 0 => Some(pow_big(p, k)),
        _ => None,
    }
}

fn denominator(rat: &Rational) -> BigUint {
    rat.denom().magnitude().clone()
}

/// `rat mod m`, or `None` when the denominator is not invertible mod `m`.
pub fn rational_residue(rat: &Rational, m: &BigUint) -> Option<BigUint> {
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let den = denominator(rat) % m;
    let inv = den.modinv(m)?;
    let num = rat.numer().mod_floor(&m_int).magnitude().clone();
    Some((num * inv) % m)
}

/// Checks the denominator of `rat` against `e`: every prime factor must be
/// invertible (`e(p) < inf`), and the torsion ones must carry a residue.
fn check_denominator(e: &ExpFun, rat: &Rational, residues: &BTreeMap<Prime, BigUint>) -> Result<()> {
    for p in prime_factors(&denominator(rat))?.into_keys() {
        match e.eval(p) {
            ExtNat::Inf => return Err(Error::DenominatorNotInvertible(p)),
            v if v.is_torsion_exponent() && !residues.contains_key(&p) => {
                return Err(Error::MissingResidue(p));
            }
            _ => {}
        }
    }
    Ok(())
}

impl SolidElement {
    /// Builds an element in normal form.
    pub fn new(ring: &SolidData, rat: Rational, residues: BTreeMap<Prime, BigUint>) -> Result<SolidElement> {
        if ring.has_nonzero_char() {
            return Err(Error::ElementsNeedCharZero);
        }
        let mut reduced = BTreeMap::new();
        for (p, r) in residues {
            let m = torsion_modulus(ring.e(), p).ok_or(Error::IllegalResidue(p))?;
            reduced.insert(p, r % m);
        }
        check_denominator(ring.e(), &rat, &reduced)?;
        Ok(SolidElement::normalized(ring.clone(), rat, reduced))
    }

    fn normalized(ring: SolidData, rat: Rational, mut deviations: BTreeMap<Prime, BigUint>) -> SolidElement {
        deviations.retain(|&p, r| {
            let m = torsion_modulus(ring.e(), p).expect("residues only at torsion primes");
            rational_residue(&rat, &m).as_ref() != Some(r)
        });
        SolidElement { ring, rat, deviations }
    }

    pub fn from_integer(ring: &SolidData, n: impl Into<BigInt>) -> Result<SolidElement> {
        SolidElement::new(ring, Rational::from_integer(n.into()), BTreeMap::new())
    }

    pub fn zero(ring: &SolidData) -> Result<SolidElement> {
        SolidElement::from_integer(ring, 0)
    }

    pub fn one(ring: &SolidData) -> Result<SolidElement> {
        SolidElement::from_integer(ring, 1)
    }

    pub fn ring(&self) -> &SolidData {
        &self.ring
    }

    pub fn rational(&self) -> &Rational {
        &self.rat
    }

    pub fn deviations(&self) -> &BTreeMap<Prime, BigUint> {
        &self.deviations
    }

    /// The raw parts, accepted back by [`SolidElement::new`].
    pub fn decompose(&self) -> (Rational, BTreeMap<Prime, BigUint>) {
        (self.rat.clone(), self.deviations.clone())
    }

    /// Residue at a torsion prime `p` (`None` when `p` is not a torsion prime).
    pub fn residue(&self, p: Prime) -> Option<BigUint> {
        let m = torsion_modulus(self.ring.e(), p)?;
        match self.deviations.get(&p) {
            Some(r) => Some(r.clone()),
            None => Some(rational_residue(&self.rat, &m).expect("normal form stores residues where rat has none")),
        }
    }

    fn combine(
        &self,
        other: &SolidElement,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        res: impl Fn(&BigUint, &BigUint) -> BigUint,
    ) -> Result<SolidElement> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let primes: Vec<Prime> = self.deviations.keys().chain(other.deviations.keys()).copied().collect();
        let deviations = primes
            .into_iter()
            .map(|p| {
                let m = torsion_modulus(self.ring.e(), p).expect("torsion prime");
                let a = self.residue(p).expect("torsion prime");
                let b = other.residue(p).expect("torsion prime");
                (p, res(&a, &b) % m)
            })
            .collect();
        Ok(SolidElement::normalized(self.ring.clone(), rat(&self.rat, &other.rat), deviations))
    }

    pub fn add(&self, other: &SolidElement) -> Result<SolidElement> {
        self.combine(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn mul(&self, other: &SolidElement) -> Result<SolidElement> {
        self.combine(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn neg(&self) -> SolidElement {
        let deviations = self
            .deviations
            .iter()
            .map(|(&p, r)| {
                let m = torsion_modulus(self.ring.e(), p).expect("torsion prime");
                (p, (&m - r) % &m)
            })
            .collect();
        SolidElement { ring: self.ring.clone(), rat: -self.rat.clone(), deviations }
    }

    pub fn sub(&self, other: &SolidElement) -> Result<SolidElement> {
        self.add(&other.neg())
    }

    /// Equality of normal forms; errors on elements of different rings.
    pub fn equals(&self, other: &SolidElement) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self == other)
    }

    pub fn from_literal(ring: &SolidData, lit: &ElementLiteral) -> Result<SolidElement> {
        if lit.tail.is_some() {
            return Err(Error::Unsupported("a ring element takes no `tail=` clause".into()));
        }
        SolidElement::new(ring, lit.rat.clone(), lit.residues.clone())
    }
}

fn write_residues(f: &mut fmt::Formatter<'_>, rat: &Rational, residues: &BTreeMap<Prime, BigUint>) -> fmt::Result {
    write!(f, "({rat}")?;
    for (i, (p, r)) in residues.iter().enumerate() {
        f.write_str(if i == 0 { "; " } else { ", " })?;
        write!(f, "{p}={r}")?;
    }
    Ok(())
}

/// `(<rat>; p=r, ...)`
impl fmt::Display for SolidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_residues(f, &self.rat, &self.deviations)?;
        f.write_str(")")
    }
}

/// How the coordinates of a product element continue past the listed ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    /// The residue of the rational part.
    FollowRational,
    /// The same integer `c` at every remaining prime.
    Constant(BigInt),
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::FollowRational => f.write_str("tail=follow"),
            Tail::Constant(c) => write!(f, "tail=const:{c}"),
        }
    }
}

/// A parsed element literal: `(<rat>; p=r, ...)`, optionally with
/// `; tail=follow` or `; tail=const:<int>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementLiteral {
    pub rat: Rational,
    pub residues: BTreeMap<Prime, BigUint>,
    pub tail: Option<Tail>,
}

fn integer(cur: &mut Cursor<'_>) -> PResult<BigInt> {
    let negative = cur.eat("-");
    let n = BigInt::from_biguint(Sign::Plus, cur.nat()?);
    Ok(if negative { -n } else { n })
}

impl ElementLiteral {
    fn parse_from(cur: &mut Cursor<'_>) -> PResult<ElementLiteral> {
        cur.expect("(")?;
        let num = integer(cur)?;
        let rat = if cur.eat("/") {
            cur.skip_ws();
            let at = cur.pos();
            let den = cur.nat()?;
            if den.is_zero() {
                return Err(cur.error(at, ParseErrorKind::Invalid("zero denominator".into())));
            }
            Rational::new(num, BigInt::from_biguint(Sign::Plus, den))
        } else {
            Rational::from_integer(num)
        };
        let mut residues = BTreeMap::new();
        let mut tail = None;
        while tail.is_none() && cur.eat(";") {
            if cur.eat("tail") {
                cur.expect("=")?;
                tail = Some(if cur.eat("follow") {
                    Tail::FollowRational
                } else if cur.eat("const") {
                    cur.expect(":")?;
                    Tail::Constant(integer(cur)?)
                } else {
                    return Err(cur.syntax("expected `follow` or `const:<int>`".into()));
                });
                break;
            }
            if cur.peek_is(")") || cur.peek_is(";") {
                continue;
            }
            loop {
                cur.skip_ws();
                let at = cur.pos();
                let p = cur.prime()?;
                cur.expect("=")?;
                let r = cur.nat()?;
                if residues.insert(p, r).is_some() {
                    return Err(cur.error(at, ParseErrorKind::Invalid(format!("duplicate residue for prime {p}"))));
                }
                if !cur.eat(",") {
                    break;
                }
            }
        }
        cur.expect(")")?;
        Ok(ElementLiteral { rat, residues, tail })
    }
}

impl FromStr for ElementLiteral {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let lit = ElementLiteral::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(lit)
    }
}

/// An element `(r/s, a_p ...)` of the product ring
/// `Z[J^-1] x prod_p Z/p^e(p)`, given by finitely many listed coordinates
/// and a rule for the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductElementSpec {
    pub rat: Rational,
    pub exceptions: BTreeMap<Prime, BigUint>,
    pub tail: Tail,
}

impl From<ElementLiteral> for ProductElementSpec {
    fn from(lit: ElementLiteral) -> Self {
        ProductElementSpec {
            rat: lit.rat,
            exceptions: lit.residues,
            tail: lit.tail.unwrap_or(Tail::FollowRational),
        }
    }
}

impl fmt::Display for ProductElementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_residues(f, &self.rat, &self.exceptions)?;
        write!(f, "; {})", self.tail)
    }
}

/// The product ring `Z[J^-1] x prod_p Z/p^e(p)` (factors with `e(p) = 0`
/// are the zero ring and drop out).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    pub inverted: PrimeSet,
    pub e: ExpFun,
}

impl Ambient {
    pub fn new(inverted: PrimeSet, e: ExpFun) -> Result<Ambient> {
        if !e.is_everywhere_finite() {
            return Err(Error::Unsupported("ambient exponents must be finite".into()));
        }
        Ok(Ambient { inverted, e })
    }

    /// Reads `L x Prod(p in K) Z/p^e` with `L` one of `Z`, `Q`, `Z[J^-1]`, `Z_(p)`.
    pub fn from_expr(expr: &RingExpr) -> Result<Ambient> {
        let shape_error = || {
            Error::Unsupported(format!(
                "expected `<Z | Q | Z[J^-1] | Z_(p)> x Prod(p in K) Z/p^e`, got `{expr}`"
            ))
        };
        let RingExpr::Product(left, right) = expr else {
            return Err(shape_error());
        };
        let inverted = match &**left {
            RingExpr::Integers => PrimeSet::empty(),
            RingExpr::Rationals => PrimeSet::all(),
            RingExpr::Localized(set) => set.clone(),
            RingExpr::LocalAt(p) => PrimeSet::all_except([*p]),
            _ => return Err(shape_error()),
        };
        let RingExpr::IndexedProd { index, factor: Factor::CyclicPow(exp) } = &**right else {
            return Err(shape_error());
        };
        Ambient::new(inverted, ExpFun::sup_indexed(index, exp))
    }

    /// Solid data of the ambient ring's core.
    pub fn core(&self) -> Result<SolidData> {
        let expr = RingExpr::product(
            RingExpr::Localized(self.inverted.clone()),
            RingExpr::indexed_cyclic(PrimeSet::all(), self.e.clone()).expect("finite exponents"),
        );
        Ok(core(&expr)?.data)
    }

    /// Whether `spec` lies in the core: only finitely many coordinates may
    /// differ from the rational part.
    pub fn in_core(&self, spec: &ProductElementSpec) -> Result<bool> {
        for p in prime_factors(&denominator(&spec.rat))?.into_keys() {
            if !self.inverted.contains(p) {
                return Err(Error::DenominatorNotInvertible(p));
            }
        }
        for &p in spec.exceptions.keys() {
            if torsion_modulus(&self.e, p).is_none() {
                return Err(Error::IllegalResidue(p));
            }
        }
        check_denominator(&self.e, &spec.rat, &spec.exceptions)?;
        if let Support::Finite(_) = self.e.support_positive() {
            // Finitely many nonzero factors: every element has finitely many
            // coordinates, so everything is in the core.
            return Ok(true);
        }
        Ok(match &spec.tail {
            Tail::FollowRational => true,
            // c - r/s is nonzero mod p for all but finitely many p unless r/s = c.
            Tail::Constant(c) => spec.rat.is_integer() && spec.rat.numer() == c,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rational(num: i64, den: u64) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn ring_e1() -> SolidData {
        "solid(q=0; e(default=1))".parse().unwrap()
    }

    fn elem(ring: &SolidData, text: &str) -> SolidElement {
        SolidElement::from_literal(ring, &text.parse().unwrap()).unwrap()
    }

    fn residues(pairs: &[(u64, u64)]) -> BTreeMap<Prime, BigUint> {
        pairs.iter().map(|&(q, r)| (p(q), BigUint::from(r))).collect()
    }

    #[test]
    fn construction() {
        let r = ring_e1();
        let x = SolidElement::new(&r, small_rational(1, 2), residues(&[(2, 0)])).unwrap();
        assert_eq!(x.to_string(), "(1/2; 2=0)");
        let x = SolidElement::new(&r, small_rational(3, 1), residues(&[(5, 3)])).unwrap();
        assert!(x.deviations().is_empty());
        let q = SolidData::rationals();
        let x = SolidElement::new(&q, small_rational(1, 2), BTreeMap::new()).unwrap();
        assert_eq!(x.to_string(), "(1/2)");
        assert_eq!(SolidElement::new(&q, small_rational(1, 1), residues(&[(2, 1)])), Err(Error::IllegalResidue(p(2))));
    }

    #[test]
    fn construction_errors() {
        let r = ring_e1();
        assert_eq!(SolidElement::new(&r, small_rational(1, 2), BTreeMap::new()), Err(Error::MissingResidue(p(2))));
        let z = SolidData::integers();
        assert_eq!(SolidElement::new(&z, small_rational(1, 3), BTreeMap::new()), Err(Error::DenominatorNotInvertible(p(3))));
        let z_mod = SolidData::cyclic(&BigUint::from(4u32)).unwrap();
        assert_eq!(SolidElement::one(&z_mod), Err(Error::ElementsNeedCharZero));
        let partial: SolidData = "solid(q=0; e(default=1; 3=>inf, 5=>0))".parse().unwrap();
        assert_eq!(SolidElement::new(&partial, small_rational(1, 1), residues(&[(3, 1)])), Err(Error::IllegalResidue(p(3))));
        assert_eq!(SolidElement::new(&partial, small_rational(1, 1), residues(&[(5, 1)])), Err(Error::IllegalResidue(p(5))));
        // 5 is inverted with no torsion: no residue needed.
        SolidElement::new(&partial, small_rational(1, 5), BTreeMap::new()).unwrap();
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring_e1();
        let a = elem(&r, "(1/2; 2=0)");
        let b = elem(&r, "(1/2; 2=1)");
        assert_eq!(a.add(&b).unwrap(), elem(&r, "(1)"));
        assert_eq!(a.mul(&b).unwrap().to_string(), "(1/4; 2=0)");
        let one = SolidElement::one(&r).unwrap();
        assert_eq!(a.mul(&one).unwrap(), a);
        assert_eq!(a.add(&a.neg()).unwrap(), SolidElement::zero(&r).unwrap());
        // residues wrap modulo p^e
        let big: SolidData = "solid(q=0; e(default=0; 3=>2))".parse().unwrap();
        let x = elem(&big, "(1; 3=8)");
        assert_eq!(x.add(&x).unwrap().to_string(), "(2; 3=7)");
        assert_eq!(x.neg().to_string(), "(-1; 3=1)");
    }

    #[test]
    fn equality() {
        let r = ring_e1();
        assert!(elem(&r, "(1)").equals(&elem(&r, "(1)")).unwrap());
        assert!(!elem(&r, "(0; 2=1)").equals(&elem(&r, "(0)")).unwrap());
        assert!(elem(&r, "(2/2)").equals(&elem(&r, "(1)")).unwrap());
        let q = SolidData::rationals();
        assert_eq!(elem(&r, "(1)").equals(&elem(&q, "(1)")), Err(Error::RingMismatch));
        assert_eq!(elem(&r, "(1)").add(&elem(&q, "(1)")), Err(Error::RingMismatch));
    }

    #[test]
    fn literal_syntax() {
        let lit: ElementLiteral = "(0; 2=1; tail=follow)".parse().unwrap();
        assert_eq!(lit.tail, Some(Tail::FollowRational));
        assert_eq!(lit.residues, residues(&[(2, 1)]));
        let lit: ElementLiteral = "( -3/6 ; tail=const:-1)".parse().unwrap();
        assert_eq!(lit.rat, small_rational(-1, 2));
        assert_eq!(lit.tail, Some(Tail::Constant(BigInt::from(-1))));
        assert!("(1; 4=1)".parse::<ElementLiteral>().is_err());
        assert!("(1/0)".parse::<ElementLiteral>().is_err());
        assert!("(1; 2=1, 2=0)".parse::<ElementLiteral>().is_err());
        let spec = ProductElementSpec::from("(0; 2=1)".parse::<ElementLiteral>().unwrap());
        assert_eq!(spec.to_string(), "(0; 2=1; tail=follow)");
    }

    #[test]
    fn membership() {
        let amb = Ambient::new(PrimeSet::all(), ExpFun::constant(ExtNat::Fin(1))).unwrap();
        let spec = |s: &str| ProductElementSpec::from(s.parse::<ElementLiteral>().unwrap());
        assert!(amb.in_core(&spec("(0; 2=1; tail=follow)")).unwrap());
        assert!(!amb.in_core(&spec("(0; tail=const:1)")).unwrap());
        assert!(amb.in_core(&spec("(5; tail=const:5)")).unwrap());
        assert!(amb.in_core(&spec("(1/2; 2=1; tail=follow)")).unwrap());
        assert_eq!(amb.in_core(&spec("(1/2; tail=follow)")), Err(Error::MissingResidue(p(2))));
        assert!(!amb.in_core(&spec("(1/2; 2=1; tail=const:1)")).unwrap());

        let z_amb = Ambient::new(PrimeSet::empty(), ExpFun::constant(ExtNat::Fin(1))).unwrap();
        assert_eq!(z_amb.in_core(&spec("(1/3; 3=1)")), Err(Error::DenominatorNotInvertible(p(3))));

        // Finitely many nonzero factors: the ambient ring is already solid.
        let finite = Ambient::new(PrimeSet::all(), "e(default=0; 2=>1, 3=>1)".parse().unwrap()).unwrap();
        assert!(finite.in_core(&spec("(0; tail=const:1)")).unwrap());
        assert_eq!(finite.in_core(&spec("(0; 5=1)")), Err(Error::IllegalResidue(p(5))));
    }

    #[test]
    fn ambient_from_expression() {
        let amb = Ambient::from_expr(&"Q x Prod(p in P) Z/p^1".parse().unwrap()).unwrap();
        assert_eq!(amb, Ambient::new(PrimeSet::all(), ExpFun::constant(ExtNat::Fin(1))).unwrap());
        assert_eq!(amb.core().unwrap(), ring_e1());
        let amb = Ambient::from_expr(&"Z_(3) x Prod(p in P\\{2}) Z/p^2".parse().unwrap()).unwrap();
        assert_eq!(amb.e, "e(default=2; 2=>0)".parse().unwrap());
        assert_eq!(amb.inverted, PrimeSet::all_except([p(3)]));
        assert!(Ambient::from_expr(&"Q x Z/2".parse().unwrap()).is_err());
    }

    fn arb_element(ring: SolidData) -> impl Strategy<Value = SolidElement> {
        let primes = [2u64, 3, 5, 7, 11];
        (
            -30i64..30,
            proptest::sample::select(&[1u64, 1, 1, 2, 3, 4, 5, 6, 9, 10, 35][..]),
            proptest::collection::btree_map(proptest::sample::select(primes.to_vec()), 0u64..11, 0..3),
        )
            .prop_map(move |(num, den, mut res)| {
                let rat = small_rational(num, den);
                for q in crate::arith::factorize_u64(den).into_keys() {
                    res.entry(q).or_insert(num.unsigned_abs() % q);
                }
                let res = res.into_iter().map(|(q, r)| (p(q), BigUint::from(r))).collect();
                SolidElement::new(&ring, rat, res).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn ring_axioms(
            x in arb_element(ring_e1()),
            y in arb_element(ring_e1()),
            z in arb_element(ring_e1()),
        ) {
            let r = ring_e1();
            let zero = SolidElement::zero(&r).unwrap();
            let one = SolidElement::one(&r).unwrap();
            prop_assert_eq!(x.add(&y)?.add(&z)?, x.add(&y.add(&z)?)?);
            prop_assert_eq!(x.mul(&y)?.mul(&z)?, x.mul(&y.mul(&z)?)?);
            prop_assert_eq!(x.add(&y)?, y.add(&x)?);
            prop_assert_eq!(x.mul(&y)?, y.mul(&x)?);
            prop_assert_eq!(x.mul(&y.add(&z)?)?, x.mul(&y)?.add(&x.mul(&z)?)?);
            prop_assert_eq!(x.add(&x.neg())?, zero.clone());
            prop_assert_eq!(x.add(&zero)?, x.clone());
            prop_assert_eq!(x.mul(&one)?, x.clone());
            prop_assert_eq!(x.mul(&zero)?, zero);
        }

        #[test]
        fn decompose_round_trip(x in arb_element(ring_e1())) {
            let (rat, res) = x.decompose();
            prop_assert_eq!(SolidElement::new(x.ring(), rat, res)?, x);
        }

        #[test]
        fn integers_embed_as_a_ring_map(a in -1000i64..1000, b in -1000i64..1000) {
            let r = ring_e1();
            let f = |n: i64| SolidElement::from_integer(&r, n).unwrap();
            prop_assert_eq!(f(a).add(&f(b))?, f(a + b));
            prop_assert_eq!(f(a).mul(&f(b))?, f(a * b));
        }

        #[test]
        fn membership_ignores_agreeing_exceptions(num in -50i64..50, q in proptest::sample::select(&[3u64, 5, 7, 11][..]), follow in any::<bool>()) {
            let amb = Ambient::new(PrimeSet::all(), ExpFun::constant(ExtNat::Fin(1))).unwrap();
            let tail = if follow { Tail::FollowRational } else { Tail::Constant(BigInt::from(num)) };
            let base = ProductElementSpec { rat: small_rational(num, 1), exceptions: BTreeMap::new(), tail };
            let mut with = base.clone();
            with.exceptions.insert(p(q), BigUint::from(num.rem_euclid(q as i64) as u64));
            prop_assert_eq!(amb.in_core(&base)?, amb.in_core(&with)?);
        }
    }
}
