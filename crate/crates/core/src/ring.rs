//! Abstract ring-operation interface for evaluating polynomials in
//! arbitrary carriers: finite fields, finite algebras, or polynomial rings
//! themselves (symbolic evaluation).

use crate::algebra::{AlgElem, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::ff::{FieldElem, FiniteField};
use num_bigint::BigInt;

#[allow(clippy::wrong_self_convention)]
pub trait RingOps {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Image of an integer under the unique ring map from Z.
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    /// Lift of a finite-field coefficient; fails when the carrier has no
    /// declared image of that field.
    fn from_field(&self, field: &FiniteField, c: &FieldElem) -> Result<Self::Elem>;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// A finite field as a carrier.
pub struct FieldOps<'a>(pub &'a FiniteField);

impl RingOps for FieldOps<'_> {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        self.0.zero()
    }
    fn one(&self) -> FieldElem {
        self.0.one()
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.0.add(a, b)
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        self.0.neg(a)
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        self.0.is_zero(a)
    }
    fn from_int(&self, n: &BigInt) -> FieldElem {
        self.0.from_bigint(n)
    }
    fn from_field(&self, field: &FiniteField, c: &FieldElem) -> Result<FieldElem> {
        lift_field_to_field(field, self.0, c)
    }
}

/// A finite algebra as a carrier.
pub struct AlgebraOps<'a>(pub &'a FiniteAlgebra);

impl RingOps for AlgebraOps<'_> {
    type Elem = AlgElem;

    fn zero(&self) -> AlgElem {
        self.0.zero()
    }
    fn one(&self) -> AlgElem {
        self.0.one()
    }
    fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.0.add(a, b)
    }
    fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &AlgElem) -> AlgElem {
        self.0.neg(a)
    }
    fn is_zero(&self, a: &AlgElem) -> bool {
        self.0.is_zero(a)
    }
    fn from_int(&self, n: &BigInt) -> AlgElem {
        let c = self.0.base().from_bigint(n);
        self.0.scalar(&c, &self.0.one())
    }
    fn from_field(&self, field: &FiniteField, c: &FieldElem) -> Result<AlgElem> {
        let lifted = lift_field_to_field(field, self.0.base(), c)?;
        Ok(self.0.scalar(&lifted, &self.0.one()))
    }
}

/// Lifts a coefficient of `src` into `dst`: identity when the fields agree,
/// the integer image for a prime source field, otherwise via embedding
/// search.
pub fn lift_field_to_field(
    src: &FiniteField,
    dst: &FiniteField,
    c: &FieldElem,
) -> Result<FieldElem> {
    if src == dst {
        return Ok(c.clone());
    }
    if src.deg() == 1 && src.p() == dst.p() {
        return Ok(dst.from_i64(c[0] as i64));
    }
    if let Some(images) = src.embedding_into(dst) {
        let mut acc = dst.zero();
        for (j, img) in images.iter().enumerate() {
            acc = dst.add(&acc, &dst.scalar_mul(c[j], img));
        }
        return Ok(acc);
    }
    Err(Error::CoefficientLiftUndefined(format!(
        "no image of F_{} in F_{}",
        src.order(),
        dst.order()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn int_image_in_algebra() {
        let f3 = Arc::new(FiniteField::prime(3).unwrap());
        let a = FiniteAlgebra::field(f3);
        let ops = AlgebraOps(&a);
        assert_eq!(ops.from_int(&BigInt::from(5)), vec![vec![2]]);
        assert_eq!(ops.from_int(&BigInt::from(-1)), vec![vec![2]]);
    }

    #[test]
    fn prime_field_lifts_into_extension() {
        let f2 = FiniteField::prime(2).unwrap();
        let f4 = FiniteField::new(2, vec![1, 1, 1]).unwrap();
        let ops = FieldOps(&f4);
        assert_eq!(ops.from_field(&f2, &vec![1]).unwrap(), f4.one());
        let f3 = FiniteField::prime(3).unwrap();
        assert!(ops.from_field(&f3, &vec![1]).is_err());
    }
}
