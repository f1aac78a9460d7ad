//! Brute-force checks on finite rings.
//!
//! Everything here enumerates: tuples of a finite product ring, residues of
//! `Z/n`, sample inputs of an explicit morphism. The results are meant to be
//! compared against the closed-form answers of [`crate::engine`] and
//! [`crate::solid`].

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::arith::{pow_mod, vp};
use crate::error::{Error, Result};
use crate::prime::{Prime, PrimeSet};
use crate::solid::{SolidData, SolidType};

/// Tuples enumerated by [`tensor_grid_core`] before it gives up.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// `prod_i Z/n_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteProductRing {
    moduli: Vec<u64>,
}

impl FiniteProductRing {
    pub fn new(moduli: Vec<u64>) -> Result<FiniteProductRing> {
        if moduli.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if moduli.contains(&0) {
            return Err(Error::ZeroModulus);
        }
        Ok(FiniteProductRing { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn size(&self) -> u128 {
        self.moduli.iter().map(|&n| n as u128).product()
    }

    pub fn lcm(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    /// `{(k mod n_i)_i : 0 <= k < lcm}`, the image of `Z`.
    pub fn image_of_integers(&self) -> BTreeSet<Vec<u64>> {
        (0..self.lcm()).map(|k| self.moduli.iter().map(|&n| k % n).collect()).collect()
    }

    fn check_size(&self) -> Result<()> {
        let size = self.size();
        if size > ENUMERATION_LIMIT {
            return Err(Error::EnumerationTooLarge { size, limit: ENUMERATION_LIMIT });
        }
        Ok(())
    }
}

/// The core of a finite product ring, computed twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCore {
    /// Built coordinate by coordinate under the pairwise gcd constraints.
    pub grid: BTreeSet<Vec<u64>>,
    /// Every tuple of the ring tested against `x (x) 1 = 1 (x) x`.
    pub enumerated: BTreeSet<Vec<u64>>,
}

impl GridCore {
    pub fn agree(&self) -> bool {
        self.grid == self.enumerated
    }
}

/// The absolute elements of `prod_i Z/n_i`.
///
/// `R (x) R` splits as `prod_{i,j} Z/gcd(n_i, n_j)`, where `x (x) 1` has
/// coordinates `x_i` and `1 (x) x` has coordinates `x_j`.
pub fn tensor_grid_core(ring: &FiniteProductRing) -> Result<GridCore> {
    ring.check_size()?;
    let n = &ring.moduli;
    let k = n.len();
    let gcds: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| n[i].gcd(&n[j])).collect()).collect();

    let mut grid = BTreeSet::new();
    let mut partial = Vec::with_capacity(k);
    fn extend(n: &[u64], gcds: &[Vec<u64>], partial: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        let i = partial.len();
        if i == n.len() {
            out.insert(partial.clone());
            return;
        }
        for x in 0..n[i] {
            if (0..i).all(|j| x % gcds[i][j] == partial[j] % gcds[i][j]) {
                partial.push(x);
                extend(n, gcds, partial, out);
                partial.pop();
            }
        }
    }
    extend(n, &gcds, &mut partial, &mut grid);

    let mut enumerated = BTreeSet::new();
    let mut x = vec![0u64; k];
    'tuples: loop {
        let absolute = (0..k).all(|i| (0..k).all(|j| x[i] % gcds[i][j] == x[j] % gcds[i][j]));
        if absolute {
            enumerated.insert(x.clone());
        }
        for i in (0..k).rev() {
            x[i] += 1;
            if x[i] < n[i] {
                continue 'tuples;
            }
            x[i] = 0;
        }
        break;
    }
    Ok(GridCore { grid, enumerated })
}

/// An element `r` of `Z/n` with `p r^2 = r` and `p^(a+1) r = p^a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HomWitness {
    pub p: Prime,
    pub a: u64,
    pub n: u64,
    pub r: u64,
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Every witness in `Z/n`, in increasing order.
pub fn all_witnesses(n: u64, p: Prime, a: u64) -> Result<Vec<HomWitness>> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let pm = p.get() % n;
    let pa = pow_mod(p.get(), a, n);
    let pa1 = mul_mod(pa, pm, n);
    Ok((0..n)
        .filter(|&r| mul_mod(pm, mul_mod(r, r, n), n) == r % n && mul_mod(pa1, r, n) == pa % n)
        .map(|r| HomWitness { p, a, n, r })
        .collect())
}

/// The first witness found by scanning `Z/n`.
pub fn find_r(n: u64, p: Prime, a: u64) -> Result<Option<HomWitness>> {
    Ok(all_witnesses(n, p, a)?.into_iter().next())
}

/// An element `(m / p^t, x)` of `Z[1/p] x Z/p^a`; `x` is any lift of the
/// residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicElement {
    pub m: i128,
    pub t: u32,
    pub x: u128,
}

impl BasicElement {
    pub fn new(m: i128, t: u32, x: u128) -> BasicElement {
        BasicElement { m, t, x }
    }
}

/// `phi(m/p^t, x) = p r^(t+1) m + (1 - p r) x` into `Z/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicHom {
    witness: HomWitness,
}

/// Builds the morphism `Z[1/p] x Z/p^a -> Z/n` attached to a witness.
pub fn build_hom(witness: HomWitness) -> BasicHom {
    BasicHom { witness }
}

impl BasicHom {
    pub fn witness(&self) -> HomWitness {
        self.witness
    }

    /// `p^a`, when it fits in 128 bits.
    fn source_modulus(&self) -> Option<u128> {
        (self.witness.p.get() as u128).checked_pow(u32::try_from(self.witness.a).ok()?)
    }

    pub fn eval(&self, v: &BasicElement) -> u64 {
        let HomWitness { p, n, r, .. } = self.witness;
        let n128 = n as u128;
        let pr = mul_mod(p.get() % n, r, n) as u128;
        let head = (p.get() as u128 % n128) * pow_mod(r, v.t as u64 + 1, n) as u128 % n128;
        let m = v.m.rem_euclid(n as i128) as u128;
        let tail = (1 + n128 - pr) % n128 * (v.x % n128) % n128;
        ((head * m + tail) % n128) as u64
    }

    fn add(&self, u: &BasicElement, v: &BasicElement) -> BasicElement {
        let p = self.witness.p.get() as i128;
        let t = u.t.max(v.t);
        let m = u.m * p.pow(t - u.t) + v.m * p.pow(t - v.t);
        BasicElement { m, t, x: u.x + v.x }
    }

    fn mul(&self, u: &BasicElement, v: &BasicElement) -> BasicElement {
        BasicElement { m: u.m * v.m, t: u.t + v.t, x: u.x * v.x }
    }

    /// A small spread of source elements: numerators `0, 1, 2, n-1, -1`,
    /// denominators `p^t` with `t <= max_t`, residues `0, 1, p^a - 1`.
    pub fn sample(&self, max_t: u32) -> Vec<BasicElement> {
        let n = self.witness.n as i128;
        let mut residues = vec![0, 1];
        if let Some(top) = self.source_modulus() {
            residues.push(top.saturating_sub(1));
        }
        residues.sort_unstable();
        residues.dedup();
        let mut numerators = vec![0, 1, 2, n - 1, -1];
        numerators.sort_unstable();
        numerators.dedup();
        let mut out = Vec::new();
        for &m in &numerators {
            for t in 0..=max_t {
                for &x in &residues {
                    out.push(BasicElement::new(m, t, x));
                }
            }
        }
        out
    }

    /// Checks unitality, additivity, multiplicativity and independence of
    /// the chosen representative on all pairs from [`BasicHom::sample`].
    pub fn check(&self, max_t: u32) -> std::result::Result<(), String> {
        let n = self.witness.n;
        let top = self.source_modulus().ok_or("p^a does not fit in 128 bits")?;
        if self.eval(&BasicElement::new(1, 0, 1)) != 1 % n {
            return Err(format!("phi(1) = {} in Z/{n}", self.eval(&BasicElement::new(1, 0, 1))));
        }
        let sample = self.sample(max_t);
        let p = self.witness.p.get() as i128;
        for u in &sample {
            let fu = self.eval(u);
            if self.eval(&BasicElement { m: u.m * p, t: u.t + 1, x: u.x }) != fu {
                return Err(format!("phi depends on the representative of {}/p^{}", u.m, u.t));
            }
            if self.eval(&BasicElement { x: u.x + top, ..*u }) != fu {
                return Err(format!("phi depends on the lift of residue {}", u.x));
            }
            for v in &sample {
                let fv = self.eval(v);
                if self.eval(&self.add(u, v)) != (fu + fv) % n {
                    return Err(format!("phi not additive on {u:?}, {v:?}"));
                }
                if self.eval(&self.mul(u, v)) != mul_mod(fu, fv, n) {
                    return Err(format!("phi not multiplicative on {u:?}, {v:?}"));
                }
            }
        }
        Ok(())
    }
}

/// Number of unital ring maps `Z/m -> Z/n`, by trying every image of `1`.
pub fn count_cyclic_homs(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok((0..n)
        .filter(|&y| {
            let well_defined = mul_mod(m % n, y, n) == 0;
            let multiplicative = mul_mod(y, y, n) == y;
            let unital = y == 1 % n;
            well_defined && multiplicative && unital
        })
        .count() as u64)
}

/// `Z[A^-1] x Z/m` (the localization part may be absent).
#[derive(Debug, Clone, PartialEq, Eq)]
struct Split {
    inverted: Option<PrimeSet>,
    modulus: BigUint,
}

fn split(s: &SolidData) -> Result<Split> {
    let inverted = match s.classify() {
        SolidType::Cyclic | SolidType::ZeroRing => None,
        SolidType::SubringOfQ | SolidType::ProductType => Some(s.inverted_primes()),
        SolidType::Colimit => {
            return Err(Error::Unsupported(format!("infinitely many torsion primes in {}", s.ring_name())));
        }
    };
    let mut modulus = BigUint::one();
    for (&p, v) in s.e().exceptions() {
        if v.is_torsion_exponent() {
            modulus *= crate::arith::pow_big(p, v.finite().expect("finite"));
        }
    }
    Ok(Split { inverted, modulus })
}

/// `n` with the primes of `inverted` removed: `Z[A^-1] (x) Z/n`.
fn strip(n: &BigUint, inverted: &PrimeSet) -> Result<BigUint> {
    let mut out = BigUint::one();
    for (p, k) in crate::arith::prime_factors(n)? {
        if !inverted.contains(p) {
            out *= crate::arith::pow_big(p, k);
        }
    }
    Ok(out)
}

/// The two routes to the coproduct of two solid rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductCheck {
    pub by_exponents: SolidData,
    pub by_tensor: SolidData,
}

impl CoproductCheck {
    pub fn agree(&self) -> bool {
        self.by_exponents == self.by_tensor
    }
}

/// Compares the pointwise-minimum coproduct with the tensor product
/// expanded factor by factor:
/// `(Z[A^-1] x Z/m) (x) (Z[B^-1] x Z/n)
///   = Z[(A u B)^-1] x Z/m' x Z/n' x Z/gcd(m, n)`.
pub fn coproduct_crosscheck(a: &SolidData, b: &SolidData) -> Result<CoproductCheck> {
    let sa = split(a)?;
    let sb = split(b)?;
    let mut terms = Vec::new();
    if let (Some(x), Some(y)) = (&sa.inverted, &sb.inverted) {
        terms.push(SolidData::localization(&x.union(y)));
    }
    if let Some(x) = &sa.inverted {
        terms.push(SolidData::cyclic(&strip(&sb.modulus, x)?)?);
    }
    if let Some(y) = &sb.inverted {
        terms.push(SolidData::cyclic(&strip(&sa.modulus, y)?)?);
    }
    terms.push(SolidData::cyclic(&sa.modulus.gcd(&sb.modulus))?);
    Ok(CoproductCheck {
        by_exponents: SolidData::coproduct([a, b])?,
        by_tensor: SolidData::limit_sup(terms.iter())?,
    })
}

/// Whether `p` divides `n` to at most the power `a`.
pub fn witness_criterion(n: u64, p: Prime, a: u64) -> bool {
    vp(p, &BigUint::from(n)).map(|v| a >= v).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn solid(s: &str) -> SolidData {
        s.parse().unwrap()
    }

    #[test]
    fn grid_examples() {
        let ring = FiniteProductRing::new(vec![4, 6]).unwrap();
        let core = tensor_grid_core(&ring).unwrap();
        assert!(core.agree());
        assert_eq!(core.grid.len(), 12);
        assert_eq!(core.grid, ring.image_of_integers());

        let ring = FiniteProductRing::new(vec![9]).unwrap();
        assert_eq!(tensor_grid_core(&ring).unwrap().enumerated.len(), 9);
        let ring = FiniteProductRing::new(vec![2, 3]).unwrap();
        assert_eq!(tensor_grid_core(&ring).unwrap().enumerated.len(), 6);
        let ring = FiniteProductRing::new(vec![1, 1]).unwrap();
        assert_eq!(tensor_grid_core(&ring).unwrap().grid, BTreeSet::from([vec![0, 0]]));
    }

    #[test]
    fn grid_guard_and_errors() {
        let ring = FiniteProductRing::new(vec![1000, 1001]).unwrap();
        assert_eq!(
            tensor_grid_core(&ring),
            Err(Error::EnumerationTooLarge { size: 1_001_000, limit: ENUMERATION_LIMIT })
        );
        assert_eq!(FiniteProductRing::new(vec![]), Err(Error::EmptyFamily));
        assert_eq!(FiniteProductRing::new(vec![3, 0]), Err(Error::ZeroModulus));
    }

    #[test]
    fn grid_core_is_image_of_integers() {
        for moduli in [vec![2, 4, 8], vec![6, 10, 15], vec![12, 18], vec![5, 7, 35], vec![9, 27, 4]] {
            let ring = FiniteProductRing::new(moduli).unwrap();
            let core = tensor_grid_core(&ring).unwrap();
            assert!(core.agree());
            assert_eq!(core.enumerated, ring.image_of_integers());
        }
    }

    #[test]
    fn witnesses() {
        assert_eq!(find_r(12, p(2), 2).unwrap().map(|w| w.r), Some(8));
        assert_eq!(find_r(12, p(2), 1).unwrap(), None);
        assert_eq!(find_r(7, p(7), 0).unwrap(), None);
        assert_eq!(find_r(7, p(7), 1).unwrap().map(|w| w.r), Some(0));
        // p invertible mod n: r = 1/p.
        assert_eq!(find_r(7, p(2), 0).unwrap().map(|w| w.r), Some(4));
        assert_eq!(find_r(1, p(3), 0).unwrap().map(|w| w.r), Some(0));
        assert_eq!(find_r(0, p(3), 0), Err(Error::ZeroModulus));
    }

    #[test]
    fn witness_existence_and_uniqueness() {
        for n in 1..=120u64 {
            for q in [2u64, 3, 5, 7] {
                for a in 0..=4 {
                    let all = all_witnesses(n, p(q), a).unwrap();
                    assert_eq!(!all.is_empty(), witness_criterion(n, p(q), a), "n={n} p={q} a={a}");
                    assert!(all.len() <= 1, "n={n} p={q} a={a}: {all:?}");
                }
            }
        }
    }

    #[test]
    fn morphism_values() {
        let w = find_r(12, p(2), 2).unwrap().unwrap();
        let phi = build_hom(w);
        assert_eq!(phi.eval(&BasicElement::new(1, 1, 0)), 8);
        assert_eq!(phi.eval(&BasicElement::new(1, 0, 1)), 1);
        for x in 0..4u64 {
            // (1 - 2*8) x = -15 x = 9x mod 12
            assert_eq!(phi.eval(&BasicElement::new(0, 0, x as u128)), (9 * x) % 12);
        }
        phi.check(3).unwrap();
    }

    #[test]
    fn morphisms_pass_checks() {
        for n in [1u64, 2, 7, 12, 24, 40, 45, 60, 90] {
            for q in [2u64, 3, 5] {
                for a in 0..=3 {
                    if let Some(w) = find_r(n, p(q), a).unwrap() {
                        build_hom(w).check(2).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn a_bad_witness_is_caught() {
        let phi = build_hom(HomWitness { p: p(2), a: 2, n: 12, r: 4 });
        assert!(phi.check(2).is_err());
    }

    #[test]
    fn cyclic_hom_counts() {
        assert_eq!(count_cyclic_homs(6, 3).unwrap(), 1);
        assert_eq!(count_cyclic_homs(3, 6).unwrap(), 0);
        for m in 1..=60 {
            for n in 1..=60 {
                assert_eq!(count_cyclic_homs(m, n).unwrap(), u64::from(m % n == 0), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn coproduct_routes() {
        let z12 = SolidData::cyclic(&BigUint::from(12u32)).unwrap();
        let z8 = SolidData::cyclic(&BigUint::from(8u32)).unwrap();
        let check = coproduct_crosscheck(&z12, &z8).unwrap();
        assert!(check.agree());
        assert_eq!(check.by_tensor.ring_name(), "Z/4");

        let a = solid("solid(q=0; e(default=inf; 2=>3))");
        let b = solid("solid(q=0; e(default=inf; 3=>2))");
        let check = coproduct_crosscheck(&a, &b).unwrap();
        assert!(check.agree());
        assert_eq!(check.by_tensor.ring_name(), "Z[{2,3}^-1] x Z/72");

        for s in [&z12, &a, &SolidData::integers(), &SolidData::rationals(), &SolidData::zero_ring()] {
            let check = coproduct_crosscheck(s, s).unwrap();
            assert!(check.agree());
            assert_eq!(&check.by_tensor, s);
        }
        let q = SolidData::rationals();
        assert_eq!(coproduct_crosscheck(&q, &z12).unwrap().by_tensor, SolidData::zero_ring());
    }

    #[test]
    fn coproduct_needs_finite_support() {
        let colimit = solid("solid(q=0; e(default=1))");
        assert!(coproduct_crosscheck(&colimit, &SolidData::integers()).is_err());
    }
}
