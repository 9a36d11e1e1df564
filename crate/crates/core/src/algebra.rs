//! Enumerable finite k-algebras given by structure constants.
//!
//! These are the test carriers for all point counting: fields, dual numbers
//! `F_q[e]/(e^m)` and binary products. Multiplication is defined bilinearly
//! by a basis table which is checked for commutativity, associativity and
//! unitality over all basis triples when the algebra is built.

use crate::error::{Error, Result};
use crate::ff::{FieldElem, FiniteField};
use std::sync::Arc;

/// Element of a [`FiniteAlgebra`]: one base-field coordinate per basis slot.
pub type AlgElem = Vec<FieldElem>;

/// Default cap on algebra cardinality.
pub const DEFAULT_SIZE_GUARD: u64 = 4096;

#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    base: Arc<FiniteField>,
    dim: usize,
    table: Vec<Vec<AlgElem>>,
    unit: AlgElem,
    label: String,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.table == other.table && self.unit == other.unit
    }
}

impl FiniteAlgebra {
    /// Wraps a field as a one-dimensional algebra over itself.
    pub fn field(base: Arc<FiniteField>) -> FiniteAlgebra {
        let unit = vec![base.one()];
        let table = vec![vec![vec![base.one()]]];
        let label = if base.deg() == 1 {
            format!("F_{}", base.p())
        } else {
            format!("F_{}", base.order())
        };
        let a = FiniteAlgebra {
            base,
            dim: 1,
            table,
            unit,
            label,
        };
        a.verify_axioms().expect("field axioms");
        a
    }

    /// Dual numbers `F_q[e]/(e^m)`, m >= 2. Basis 1, e, ..., e^(m-1).
    pub fn dual_numbers(base: Arc<FiniteField>, m: usize, guard: u64) -> Result<FiniteAlgebra> {
        assert!(m >= 2, "dual numbers need m >= 2");
        let count = (base.order() as u128).checked_pow(m as u32);
        if count.is_none_or(|c| c > guard as u128) {
            return Err(Error::SizeGuard(format!(
                "|F_{}[e]/(e^{m})| exceeds {guard}",
                base.order()
            )));
        }
        let mut table = vec![vec![vec![base.zero(); m]; m]; m];
        #[allow(clippy::needless_range_loop)]
        for i in 0..m {
            for j in 0..m {
                let mut v = vec![base.zero(); m];
                if i + j < m {
                    v[i + j] = base.one();
                }
                table[i][j] = v;
            }
        }
        let mut unit = vec![base.zero(); m];
        unit[0] = base.one();
        let label = format!("F_{}[e]/(e^{m})", base.order());
        let a = FiniteAlgebra {
            base,
            dim: m,
            table,
            unit,
            label,
        };
        a.verify_axioms()?;
        Ok(a)
    }

    /// Componentwise product of two algebras over the same base field.
    pub fn product(
        left: &FiniteAlgebra,
        right: &FiniteAlgebra,
        guard: u64,
    ) -> Result<FiniteAlgebra> {
        if left.base != right.base {
            return Err(Error::BaseMismatch);
        }
        let dim = left.dim + right.dim;
        let count = (left.base.order() as u128).checked_pow(dim as u32);
        if count.is_none_or(|c| c > guard as u128) {
            return Err(Error::SizeGuard(format!(
                "product algebra size exceeds {guard}"
            )));
        }
        let base = left.base.clone();
        let zero = || vec![base.zero(); dim];
        let mut table = vec![vec![zero(); dim]; dim];
        #[allow(clippy::needless_range_loop)]
        for i in 0..dim {
            for j in 0..dim {
                let mut v = zero();
                if i < left.dim && j < left.dim {
                    v[..left.table[i][j].len()].clone_from_slice(&left.table[i][j]);
                } else if i >= left.dim && j >= left.dim {
                    let src = &right.table[i - left.dim][j - left.dim];
                    v[left.dim..left.dim + src.len()].clone_from_slice(src);
                }
                table[i][j] = v;
            }
        }
        let mut unit = zero();
        for (k, c) in left.unit.iter().enumerate() {
            unit[k] = c.clone();
        }
        for (k, c) in right.unit.iter().enumerate() {
            unit[left.dim + k] = c.clone();
        }
        let label = format!("{} x {}", left.label, right.label);
        let a = FiniteAlgebra {
            base,
            dim,
            table,
            unit,
            label,
        };
        a.verify_axioms()?;
        Ok(a)
    }

    /// Checks commutativity, associativity and unitality on all basis
    /// triples; bilinearity makes that sufficient.
    fn verify_axioms(&self) -> Result<()> {
        let t = self.dim;
        for i in 0..t {
            let ei = self.basis_elem(i);
            let ue = self.mul(&self.unit, &ei);
            if ue != ei {
                return Err(Error::CarrierMismatch);
            }
            for j in 0..t {
                let ej = self.basis_elem(j);
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::CarrierMismatch);
                }
                for k in 0..t {
                    let ek = self.basis_elem(k);
                    let lhs = self.mul(&self.mul(&ei, &ej), &ek);
                    let rhs = self.mul(&ei, &self.mul(&ej, &ek));
                    if lhs != rhs {
                        return Err(Error::CarrierMismatch);
                    }
                }
            }
        }
        Ok(())
    }

    fn basis_elem(&self, i: usize) -> AlgElem {
        let mut v = vec![self.base.zero(); self.dim];
        v[i] = self.base.one();
        v
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Cardinality `q^t`.
    pub fn order(&self) -> u64 {
        self.base.order().pow(self.dim as u32)
    }

    pub fn zero(&self) -> AlgElem {
        vec![self.base.zero(); self.dim]
    }

    pub fn one(&self) -> AlgElem {
        self.unit.clone()
    }

    pub fn is_zero(&self, a: &AlgElem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    pub fn neg(&self, a: &AlgElem) -> AlgElem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut acc = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.base.is_zero(y) {
                    continue;
                }
                let xy = self.base.mul(x, y);
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !self.base.is_zero(c) {
                        acc[k] = self.base.add(&acc[k], &self.base.mul(&xy, c));
                    }
                }
            }
        }
        acc
    }

    /// Scalar action of the base field.
    pub fn scalar(&self, c: &FieldElem, a: &AlgElem) -> AlgElem {
        a.iter().map(|x| self.base.mul(c, x)).collect()
    }

    pub fn pow(&self, a: &AlgElem, mut e: u64) -> AlgElem {
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

    pub fn from_i64(&self, n: i64) -> AlgElem {
        self.scalar(&self.base.from_i64(n), &self.unit)
    }

    /// The p-th power map. Not surjective on non-reduced algebras.
    pub fn frobenius(&self, a: &AlgElem) -> AlgElem {
        self.pow(a, self.base.p())
    }

    /// Whether the algebra has no nonzero nilpotents; for finite
    /// F_p-algebras this is equivalent to the Frobenius being surjective.
    pub fn is_reduced(&self) -> bool {
        self.enumerate()
            .all(|x| self.is_zero(&x) || !self.is_zero(&self.pow(&x, self.order())))
    }

    pub fn elem_index(&self, a: &AlgElem) -> u64 {
        let q = self.base.order();
        let mut idx = 0u64;
        for c in a.iter().rev() {
            idx = idx * q + self.base.elem_index(c);
        }
        idx
    }

    pub fn elem_from_index(&self, mut idx: u64) -> AlgElem {
        let q = self.base.order();
        let mut v = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            v.push(self.base.elem_from_index(idx % q));
            idx /= q;
        }
        v
    }

    /// All `q^t` elements in the deterministic enumeration order
    /// (basis slot 0 is the fastest digit).
    pub fn enumerate(&self) -> impl Iterator<Item = AlgElem> + '_ {
        (0..self.order()).map(|i| self.elem_from_index(i))
    }

    pub fn render(&self, a: &AlgElem) -> String {
        if self.dim == 1 {
            self.base.render(&a[0])
        } else {
            let parts: Vec<String> = a.iter().map(|c| self.base.render(c)).collect();
            format!("({})", parts.join(","))
        }
    }
}

/// A verified homomorphism of finite algebras, stored as a full value table.
#[derive(Debug, Clone)]
pub struct AlgebraHom {
    src: Arc<FiniteAlgebra>,
    dst: Arc<FiniteAlgebra>,
    images: Vec<AlgElem>,
}

impl AlgebraHom {
    /// Builds a homomorphism from images of the source base-field power
    /// basis and the source algebra basis, then verifies it exhaustively.
    pub fn new(
        src: Arc<FiniteAlgebra>,
        dst: Arc<FiniteAlgebra>,
        base_images: Vec<AlgElem>,
        basis_images: Vec<AlgElem>,
    ) -> Result<AlgebraHom> {
        assert_eq!(base_images.len(), src.base().deg());
        assert_eq!(basis_images.len(), src.dim());
        let value = |a: &AlgElem| -> AlgElem {
            let mut acc = dst.zero();
            for (i, c) in a.iter().enumerate() {
                // c = sum_j c_j t^j in the source base field.
                let mut scal = dst.zero();
                for (j, &cj) in c.iter().enumerate() {
                    let mut term = base_images[j].clone();
                    term = dst.scalar(&dst.base().from_i64(cj as i64), &term);
                    scal = dst.add(&scal, &term);
                }
                acc = dst.add(&acc, &dst.mul(&scal, &basis_images[i]));
            }
            acc
        };
        let images: Vec<AlgElem> = src.enumerate().map(|a| value(&a)).collect();
        let hom = AlgebraHom { src, dst, images };
        hom.verify()?;
        Ok(hom)
    }

    pub fn identity(alg: Arc<FiniteAlgebra>) -> AlgebraHom {
        let base_images = (0..alg.base().deg())
            .map(|j| {
                let mut c = alg.base().zero();
                c[j] = 1;
                alg.scalar(&c, &alg.one())
            })
            .collect();
        let basis_images = (0..alg.dim()).map(|i| alg.basis_elem(i)).collect();
        AlgebraHom::new(alg.clone(), alg, base_images, basis_images).expect("identity is a hom")
    }

    /// Inclusion of one field algebra into a larger one, found by embedding
    /// search on the moduli.
    pub fn field_inclusion(src: Arc<FiniteAlgebra>, dst: Arc<FiniteAlgebra>) -> Result<AlgebraHom> {
        if src.dim() != 1 || dst.dim() != 1 {
            return Err(Error::NotAnExtension(
                dst.label().into(),
                src.label().into(),
            ));
        }
        let emb = src
            .base()
            .embedding_into(dst.base())
            .ok_or_else(|| Error::NotAnExtension(dst.label().into(), src.label().into()))?;
        let base_images: Vec<AlgElem> = emb.into_iter().map(|e| vec![e]).collect();
        let basis_images = vec![dst.one()];
        AlgebraHom::new(src, dst, base_images, basis_images)
    }

    fn verify(&self) -> Result<()> {
        let n = self.src.order();
        if self.value(&self.src.one()) != self.dst.one() {
            return Err(Error::CarrierMismatch);
        }
        for i in 0..n {
            let a = self.src.elem_from_index(i);
            for j in 0..n {
                let b = self.src.elem_from_index(j);
                let sum = self.value(&self.src.add(&a, &b));
                if sum != self.dst.add(&self.value(&a), &self.value(&b)) {
                    return Err(Error::CarrierMismatch);
                }
                let prod = self.value(&self.src.mul(&a, &b));
                if prod != self.dst.mul(&self.value(&a), &self.value(&b)) {
                    return Err(Error::CarrierMismatch);
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, a: &AlgElem) -> AlgElem {
        self.images[self.src.elem_index(a) as usize].clone()
    }

    pub fn src(&self) -> &Arc<FiniteAlgebra> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FiniteAlgebra> {
        &self.dst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(2).unwrap())
    }

    fn f4() -> Arc<FiniteField> {
        Arc::new(FiniteField::new(2, vec![1, 1, 1]).unwrap())
    }

    #[test]
    fn dual_numbers_enumeration() {
        let a = FiniteAlgebra::dual_numbers(f2(), 2, DEFAULT_SIZE_GUARD).unwrap();
        assert_eq!(a.order(), 4);
        let elems: Vec<AlgElem> = a.enumerate().collect();
        // 0, 1, e, 1+e
        assert_eq!(elems[0], vec![vec![0], vec![0]]);
        assert_eq!(elems[1], vec![vec![1], vec![0]]);
        assert_eq!(elems[2], vec![vec![0], vec![1]]);
        assert_eq!(elems[3], vec![vec![1], vec![1]]);
        // e * e = 0
        let e = &elems[2];
        assert!(a.is_zero(&a.mul(e, e)));
    }

    #[test]
    fn product_algebra() {
        let fa = FiniteAlgebra::field(f2());
        let prod = FiniteAlgebra::product(&fa, &fa, DEFAULT_SIZE_GUARD).unwrap();
        assert_eq!(prod.order(), 4);
        assert_eq!(prod.one(), vec![vec![1], vec![1]]);
    }

    #[test]
    fn base_mismatch_rejected() {
        let fa = FiniteAlgebra::field(f2());
        let fb = FiniteAlgebra::field(Arc::new(FiniteField::prime(3).unwrap()));
        assert_eq!(
            FiniteAlgebra::product(&fa, &fb, DEFAULT_SIZE_GUARD)
                .unwrap_err()
                .code(),
            "BaseMismatch"
        );
    }

    #[test]
    fn frobenius_not_surjective_on_dual_numbers() {
        let a = FiniteAlgebra::dual_numbers(f2(), 2, DEFAULT_SIZE_GUARD).unwrap();
        let mut images: Vec<AlgElem> = a.enumerate().map(|x| a.frobenius(&x)).collect();
        images.sort();
        images.dedup();
        assert!(images.len() < a.order() as usize);
        // e has no preimage.
        let e = a.elem_from_index(2);
        assert!(!images.contains(&e));
    }

    #[test]
    fn ring_axioms_exhaustive_on_small_corpus() {
        let algebras = vec![
            FiniteAlgebra::field(f4()),
            FiniteAlgebra::dual_numbers(f2(), 2, DEFAULT_SIZE_GUARD).unwrap(),
        ];
        for a in &algebras {
            let elems: Vec<AlgElem> = a.enumerate().collect();
            for x in &elems {
                assert_eq!(a.mul(&a.one(), x), *x);
                for y in &elems {
                    assert_eq!(a.mul(x, y), a.mul(y, x));
                    assert_eq!(a.add(x, y), a.add(y, x));
                    for z in &elems {
                        assert_eq!(a.mul(&a.mul(x, y), z), a.mul(x, &a.mul(y, z)));
                        assert_eq!(a.add(&a.add(x, y), z), a.add(x, &a.add(y, z)));
                        assert_eq!(a.mul(x, &a.add(y, z)), a.add(&a.mul(x, y), &a.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn field_inclusion_hom() {
        let src = Arc::new(FiniteAlgebra::field(f2()));
        let dst = Arc::new(FiniteAlgebra::field(f4()));
        let hom = AlgebraHom::field_inclusion(src, dst.clone()).unwrap();
        assert_eq!(hom.value(&vec![vec![1]]), dst.one());
    }
}
