use num_traits::Zero;

use super::{Factor, RingExpr};
use crate::error::{ParseError, ParseErrorKind};
use crate::expfun::ExpFun;
use crate::extnat::ExtNat;
use crate::prime::PrimeSet;
use crate::text::{Cursor, PResult};

pub(super) fn parse(src: &str) -> Result<RingExpr, ParseError> {
    let mut cur = Cursor::new(src);
    let e = expr(&mut cur)?;
    cur.expect_end()?;
    Ok(e)
}

fn expr(cur: &mut Cursor<'_>) -> PResult<RingExpr> {
    let mut acc = term(cur)?;
    while cur.eat("x") {
        let rhs = term(cur)?;
        acc = RingExpr::product(acc, rhs);
    }
    Ok(acc)
}

fn term(cur: &mut Cursor<'_>) -> PResult<RingExpr> {
    if cur.eat("Zhat") {
        return Ok(RingExpr::Profinite);
    }
    if cur.eat("Z") {
        if cur.eat("_") {
            if cur.eat("(") {
                let p = cur.prime()?;
                cur.expect(")")?;
                return Ok(RingExpr::LocalAt(p));
            }
            return Ok(RingExpr::Padic(cur.prime()?));
        }
        if cur.eat("/") {
            cur.skip_ws();
            let at = cur.pos();
            let n = cur.nat()?;
            if n.is_zero() {
                return Err(cur.error(at, ParseErrorKind::Invalid("modulus must be at least 1".into())));
            }
            cur.eat("Z");
            return Ok(RingExpr::Cyclic(n));
        }
        if cur.eat("[") {
            let set = inverted(cur)?;
            cur.expect("]")?;
            return Ok(RingExpr::Localized(set));
        }
        return Ok(RingExpr::Integers);
    }
    if cur.eat("Q") {
        return Ok(RingExpr::Rationals);
    }
    if cur.eat("Field") {
        cur.expect("(")?;
        let (at, digits) = cur.digits()?;
        if digits.bytes().any(|b| b != b'0') {
            return Err(cur.error(
                at,
                ParseErrorKind::Invalid("only characteristic-zero fields are supported: Field(0)".into()),
            ));
        }
        cur.expect(")")?;
        return Ok(RingExpr::Field0);
    }
    if cur.eat("Poly") {
        cur.expect("(")?;
        let base = expr(cur)?;
        cur.expect(")")?;
        return Ok(RingExpr::poly(base));
    }
    if cur.eat("Prod") {
        return indexed_product(cur);
    }
    if cur.eat("(") {
        let inner = expr(cur)?;
        cur.expect(")")?;
        return Ok(inner);
    }
    Err(cur.syntax("expected a ring term".to_string()))
}

fn inverted(cur: &mut Cursor<'_>) -> PResult<PrimeSet> {
    if cur.peek_is("P") || cur.peek_is("{") {
        let set = PrimeSet::parse_from(cur)?;
        cur.expect("^")?;
        cur.expect("-1")?;
        return Ok(set);
    }
    let mut primes = Vec::new();
    loop {
        let (at, one) = cur.digits()?;
        if one != "1" {
            return Err(cur.error(at, ParseErrorKind::Syntax(format!("expected `1/<prime>`, found `{one}`"))));
        }
        cur.expect("/")?;
        primes.push(cur.prime()?);
        if !cur.eat(",") {
            return Ok(PrimeSet::finite(primes));
        }
    }
}

fn indexed_product(cur: &mut Cursor<'_>) -> PResult<RingExpr> {
    cur.expect("(")?;
    cur.expect("p")?;
    cur.expect("in")?;
    let index = PrimeSet::parse_from(cur)?;
    cur.expect(")")?;
    cur.expect("Z")?;
    if cur.eat("_") {
        cur.expect("p")?;
        return Ok(RingExpr::IndexedProd { index, factor: Factor::Padic });
    }
    cur.expect("/")?;
    cur.expect("p")?;
    cur.expect("^")?;
    cur.skip_ws();
    let at = cur.pos();
    let exp = if cur.peek_is("e") {
        ExpFun::parse_from(cur)?
    } else {
        ExpFun::constant(ExtNat::Fin(cur.u64()?))
    };
    RingExpr::indexed_cyclic(index, exp).map_err(|p| cur.error(at, ParseErrorKind::InfiniteExponent(p)))
}
