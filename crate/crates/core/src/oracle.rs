//! Independent integer model of R_N over a prime residue field:
//! `Z[t]/(f(t), t^(N+1), p^m)`, with normal forms on the retained pi-power
//! basis and exact integer arithmetic. This is the second route against
//! which the Greenberg-algebra coordinates are verified.

use crate::error::{Error, Result};
use crate::ff::FieldElem;
use crate::greenberg::{CharCase, GaElement, GreenbergAlgebra, RamificationData};
use crate::ring::FieldOps;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Normal form: component i carries the coefficient of pi^i, reduced mod
/// `p^(lengths[i])`.
pub type OracleElem = Vec<BigInt>;

#[derive(Debug, Clone)]
pub struct OracleRing {
    case: CharCase,
    p: u64,
    level: usize,
    rho: usize,
    eisenstein: Vec<BigInt>,
    pub lengths: Vec<usize>,
    moduli: Vec<BigInt>,
}

impl OracleRing {
    pub fn new(ga: &GreenbergAlgebra) -> Result<OracleRing> {
        let spec = ga.base();
        if spec.k.deg() != 1 {
            return Err(Error::NotPrimeField);
        }
        let ram: &RamificationData = ga.ram();
        let p = spec.k.p();
        let moduli = ram
            .lengths
            .iter()
            .map(|&n| BigInt::from(p).pow(n as u32))
            .collect();
        Ok(OracleRing {
            case: spec.case,
            p,
            level: ga.level(),
            rho: spec.rho(),
            eisenstein: spec.eisenstein.clone(),
            lengths: ram.lengths.clone(),
            moduli,
        })
    }

    pub fn rank(&self) -> usize {
        self.lengths.len()
    }

    pub fn order(&self) -> u128 {
        self.lengths
            .iter()
            .map(|&n| (self.p as u128).pow(n as u32))
            .product()
    }

    pub fn zero(&self) -> OracleElem {
        vec![BigInt::ZERO; self.rank()]
    }

    pub fn one(&self) -> OracleElem {
        let mut v = self.zero();
        v[0] = BigInt::one();
        self.normalize(v)
    }

    /// The class of the uniformizer.
    pub fn pi(&self) -> OracleElem {
        if self.level == 0 {
            return self.zero();
        }
        match self.case {
            CharCase::Equal => {
                let mut v = self.zero();
                v[1] = BigInt::one();
                v
            }
            CharCase::Mixed => {
                if self.rho >= 2 {
                    let mut v = self.zero();
                    v[1] = BigInt::one();
                    self.normalize(v)
                } else if self.eisenstein.is_empty() {
                    self.from_int(&BigInt::from(self.p))
                } else {
                    self.from_int(&(-self.eisenstein[0].clone()))
                }
            }
        }
    }

    fn normalize(&self, mut v: OracleElem) -> OracleElem {
        for (c, m) in v.iter_mut().zip(&self.moduli) {
            *c = c.mod_floor(m);
        }
        v
    }

    pub fn add(&self, a: &OracleElem, b: &OracleElem) -> OracleElem {
        self.normalize(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &OracleElem) -> OracleElem {
        self.normalize(a.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &OracleElem, b: &OracleElem) -> OracleElem {
        // Integer convolution on full-degree representatives.
        let deg = match self.case {
            CharCase::Equal => self.level + 1,
            CharCase::Mixed => self.rho,
        };
        let lift = |v: &OracleElem| -> Vec<BigInt> {
            let mut out = vec![BigInt::ZERO; deg];
            for (i, c) in v.iter().enumerate() {
                out[i] = c.clone();
            }
            out
        };
        let (x, y) = (lift(a), lift(b));
        let mut conv = vec![BigInt::ZERO; 2 * deg - 1];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                conv[i + j] += xi * yj;
            }
        }
        match self.case {
            CharCase::Equal => {
                // t^(N+1) = 0: drop high coefficients.
                conv.truncate(self.level + 1);
            }
            CharCase::Mixed => {
                // Reduce by the monic Eisenstein relation, then truncate to
                // the retained pi-powers (those above the level vanish).
                for l in (self.rho..conv.len()).rev() {
                    let q = std::mem::take(&mut conv[l]);
                    if q.is_zero() {
                        continue;
                    }
                    for (jm1, aj) in self.eisenstein.iter().enumerate() {
                        let j = jm1 + 1;
                        conv[l - j] -= aj * &q;
                    }
                }
                conv.truncate(self.rho);
            }
        }
        conv.truncate(self.rank());
        self.normalize(conv)
    }

    pub fn from_int(&self, n: &BigInt) -> OracleElem {
        let mut v = self.zero();
        v[0] = n.clone();
        self.normalize(v)
    }

    pub fn elem_from_index(&self, mut idx: u128) -> OracleElem {
        let mut v = Vec::with_capacity(self.rank());
        for &n in &self.lengths {
            let m = (self.p as u128).pow(n as u32);
            v.push(BigInt::from(idx % m));
            idx /= m;
        }
        v
    }

    pub fn enumerate(&self) -> impl Iterator<Item = OracleElem> + '_ {
        (0..self.order()).map(|i| self.elem_from_index(i))
    }

    pub fn elem_index(&self, v: &OracleElem) -> u128 {
        let mut idx = 0u128;
        for (c, &n) in v.iter().zip(&self.lengths).rev() {
            let m = (self.p as u128).pow(n as u32);
            idx = idx * m + c.to_u128().unwrap();
        }
        idx
    }

    /// Verifies the commutative-ring axioms exhaustively on all triples,
    /// through precomputed pair tables.
    pub fn verify_ring_axioms(&self, triple_guard: u128) -> Result<()> {
        let n = self.order();
        if n.checked_pow(3).is_none_or(|t| t > triple_guard) {
            return Err(Error::SizeGuard(format!(
                "oracle axiom check needs {n}^3 triples"
            )));
        }
        let n = n as usize;
        let elems: Vec<OracleElem> = self.enumerate().collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let s = self.elem_index(&self.add(&elems[i], &elems[j])) as u32;
                let m = self.elem_index(&self.mul(&elems[i], &elems[j])) as u32;
                add[i * n + j] = s;
                add[j * n + i] = s;
                mul[i * n + j] = m;
                mul[j * n + i] = m;
            }
        }
        let one = self.elem_index(&self.one()) as usize;
        let addf = |i: usize, j: usize| add[i * n + j] as usize;
        let mulf = |i: usize, j: usize| mul[i * n + j] as usize;
        for i in 0..n {
            if mulf(one, i) != i {
                return Err(Error::CarrierMismatch);
            }
            for j in 0..n {
                for l in 0..n {
                    if mulf(mulf(i, j), l) != mulf(i, mulf(j, l))
                        || mulf(i, addf(j, l)) != addf(mulf(i, j), mulf(i, l))
                        || addf(addf(i, j), l) != addf(i, addf(j, l))
                    {
                        return Err(Error::CarrierMismatch);
                    }
                }
            }
        }
        Ok(())
    }
}

/// The claimed bijection from oracle normal forms to Greenberg coordinates:
/// (c_0, ..., c_r) maps to sum_i int(c_i) * pi^i computed with the
/// structure laws over k.
pub fn oracle_to_ga(ga: &GreenbergAlgebra, c: &OracleElem) -> Result<GaElement<FieldElem>> {
    let ops = FieldOps(ga.k());
    let pi = ga.pi_elem();
    let mut acc = ga.zero_elem();
    let mut pi_pow = ga.one_elem();
    for coeff in c {
        let term = ga.ga_mul(&ops, &ga.int_image(coeff)?, &pi_pow)?;
        acc = ga.ga_add(&ops, &acc, &term)?;
        pi_pow = ga.ga_mul(&ops, &pi_pow, &pi)?;
    }
    Ok(acc)
}

/// Exhaustively verifies that [`oracle_to_ga`] is a ring isomorphism,
/// through compiled structure laws and index tables.
pub fn verify_oracle_isomorphism(ga: &GreenbergAlgebra, guard: u128) -> Result<()> {
    use crate::algebra::FiniteAlgebra;
    use crate::greenberg::GaEvaluator;
    let oracle = OracleRing::new(ga)?;
    let n = oracle.order();
    if n > guard {
        return Err(Error::SizeGuard(format!("oracle has {n} elements")));
    }
    let n = n as usize;
    let elems: Vec<OracleElem> = oracle.enumerate().collect();
    let images: Vec<GaElement<FieldElem>> = elems
        .iter()
        .map(|c| oracle_to_ga(ga, c))
        .collect::<Result<_>>()?;
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != images.len() {
        return Err(Error::CarrierMismatch);
    }
    if images[oracle.elem_index(&oracle.one()) as usize] != ga.one_elem() {
        return Err(Error::CarrierMismatch);
    }
    let field_alg = FiniteAlgebra::field(ga.k().clone());
    let ev = GaEvaluator::new(ga, &field_alg)?;
    // Greenberg coordinates as one-dimensional algebra tuples.
    let wrapped: Vec<Vec<crate::algebra::AlgElem>> = images
        .iter()
        .map(|g| g.coords.iter().map(|c| vec![c.clone()]).collect())
        .collect();
    let unwrap = |coords: Vec<crate::algebra::AlgElem>| -> GaElement<FieldElem> {
        GaElement::new(coords.into_iter().map(|mut c| c.pop().unwrap()).collect())
    };
    for i in 0..n {
        for j in i..n {
            let sum = &images[oracle.elem_index(&oracle.add(&elems[i], &elems[j])) as usize];
            if *sum != unwrap(ev.add(&wrapped[i], &wrapped[j])) {
                return Err(Error::CarrierMismatch);
            }
            let prod = &images[oracle.elem_index(&oracle.mul(&elems[i], &elems[j])) as usize];
            if *prod != unwrap(ev.mul(&wrapped[i], &wrapped[j])) {
                return Err(Error::CarrierMismatch);
            }
        }
    }
    Ok(())
}

/// |R_N| for a prime-field base, handy for reports.
pub fn oracle_order(ga: &GreenbergAlgebra) -> Result<u128> {
    Ok(OracleRing::new(ga)?.order())
}

#[allow(dead_code)]
fn to_u64(n: &BigInt) -> u64 {
    n.to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cache::LawCache;
    use crate::ff::FiniteField;
    use crate::greenberg::BaseRingSpec;
    use std::sync::Arc;

    fn f(p: u64) -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(p).unwrap())
    }

    #[test]
    fn unramified_oracle_is_z_mod_p_power() {
        let ga = GreenbergAlgebra::build(&BaseRingSpec::unramified(f(2)), 2, &LawCache::disabled())
            .unwrap();
        let oracle = OracleRing::new(&ga).unwrap();
        assert_eq!(oracle.order(), 8);
        assert_eq!(oracle.rank(), 1);
        oracle.verify_ring_axioms(1 << 21).unwrap();
        verify_oracle_isomorphism(&ga, 4096).unwrap();
    }

    #[test]
    fn ramified_degree_two_oracle() {
        let spec = BaseRingSpec::mixed(f(2), vec![BigInt::from(0), BigInt::from(-2)]).unwrap();
        let ga = GreenbergAlgebra::build(&spec, 3, &LawCache::disabled()).unwrap();
        let oracle = OracleRing::new(&ga).unwrap();
        // Z[pi]/(pi^2-2, pi^4) = Z/4[pi]/(pi^2-2): 16 elements.
        assert_eq!(oracle.order(), 16);
        assert_eq!(oracle.lengths, vec![2, 2]);
        let pi = oracle.pi();
        let pi2 = oracle.mul(&pi, &pi);
        assert_eq!(pi2, oracle.from_int(&BigInt::from(2)));
        oracle.verify_ring_axioms(1 << 21).unwrap();
        verify_oracle_isomorphism(&ga, 4096).unwrap();
    }

    #[test]
    fn ramified_degree_three_collapses_p() {
        let spec = BaseRingSpec::mixed(
            f(2),
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(-2)],
        )
        .unwrap();
        let ga = GreenbergAlgebra::build(&spec, 2, &LawCache::disabled()).unwrap();
        let oracle = OracleRing::new(&ga).unwrap();
        // Z[pi]/(pi^3-2, pi^3) = F_2[pi]/(pi^3): 8 elements, p = 0.
        assert_eq!(oracle.order(), 8);
        assert_eq!(oracle.from_int(&BigInt::from(2)), oracle.zero());
        oracle.verify_ring_axioms(1 << 21).unwrap();
        verify_oracle_isomorphism(&ga, 4096).unwrap();
    }

    #[test]
    fn equal_case_oracle() {
        let ga =
            GreenbergAlgebra::build(&BaseRingSpec::equal(f(3)), 2, &LawCache::disabled()).unwrap();
        let oracle = OracleRing::new(&ga).unwrap();
        assert_eq!(oracle.order(), 27);
        verify_oracle_isomorphism(&ga, 4096).unwrap();
    }

    #[test]
    fn extension_residue_field_is_rejected() {
        let f4 = Arc::new(FiniteField::new(2, vec![1, 1, 1]).unwrap());
        let ga = GreenbergAlgebra::build(&BaseRingSpec::unramified(f4), 1, &LawCache::disabled())
            .unwrap();
        assert_eq!(OracleRing::new(&ga).unwrap_err().code(), "NotPrimeField");
    }
}
