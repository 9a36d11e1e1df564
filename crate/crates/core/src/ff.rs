//! Prime fields and small finite-field extensions.
//!
//! A field is described by its characteristic `p` and a monic irreducible
//! modulus over `F_p` given in ascending coefficient order. Elements are
//! coordinate tuples in the power basis of the modulus. The prime field is
//! written with the placeholder modulus `[1]`.
//!
//! Everything here is desk-scale by design: primality is trial division and
//! irreducibility is exhaustive root/factor search for degrees up to
//! [`MAX_EXTENSION_DEGREE`].

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Hard bound on extension degrees; the exhaustive irreducibility search is
/// only meaningful below this.
pub const MAX_EXTENSION_DEGREE: usize = 4;

/// Hard bound on the characteristic: everything here is desk-scale
/// enumeration, and p^MAX_EXTENSION_DEGREE must stay inside u64.
pub const MAX_CHARACTERISTIC: u64 = 1 << 15;

/// Element of a [`FiniteField`]: coordinates in the power basis, length
/// equal to the field degree, entries reduced mod `p`.
pub type FieldElem = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    modulus: Vec<u64>,
    deg: usize,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    /// Builds a field descriptor, verifying primality of `p`, monicity and
    /// irreducibility of the modulus.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<FiniteField> {
        if p > MAX_CHARACTERISTIC {
            return Err(Error::SizeGuard(format!(
                "characteristic {p} exceeds the desk-scale bound {MAX_CHARACTERISTIC}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.is_empty() {
            return Err(Error::Parse {
                path: "modulus".into(),
                msg: "empty coefficient list".into(),
            });
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Parse {
                path: "modulus".into(),
                msg: format!("coefficients must lie in 0..{p}"),
            });
        }
        if modulus.len() == 1 {
            if modulus[0] != 1 {
                return Err(Error::Parse {
                    path: "modulus".into(),
                    msg: "the prime field is written [1]".into(),
                });
            }
            return Ok(FiniteField { p, modulus, deg: 1 });
        }
        let deg = modulus.len() - 1;
        if deg < 2 {
            return Err(Error::Parse {
                path: "modulus".into(),
                msg: "degree-1 moduli are written as the prime field [1]".into(),
            });
        }
        if deg > MAX_EXTENSION_DEGREE {
            return Err(Error::DegreeTooLarge(deg, MAX_EXTENSION_DEGREE));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Parse {
                path: "modulus".into(),
                msg: "modulus must be monic".into(),
            });
        }
        let f = FiniteField { p, modulus, deg };
        f.check_irreducible()?;
        Ok(f)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FiniteField> {
        FiniteField::new(p, vec![1])
    }

    fn check_irreducible(&self) -> Result<()> {
        // Root search kills all reducible quadratics and cubics.
        for a in 0..self.p {
            let mut acc: u64 = 0;
            let mut pw: u64 = 1;
            for &c in &self.modulus {
                acc = (acc + c * pw) % self.p;
                pw = (pw * a) % self.p;
            }
            if acc == 0 {
                return Err(Error::Reducible(format!("root t={a} over F_{}", self.p)));
            }
        }
        if self.deg == 4 {
            // No roots: the only remaining factorization is quadratic times
            // quadratic. Try every monic quadratic divisor.
            for b in 0..self.p {
                for c in 0..self.p {
                    if self.divisible_by_quadratic(b, c) {
                        return Err(Error::Reducible(format!(
                            "factor t^2+{b}*t+{c} over F_{}",
                            self.p
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn divisible_by_quadratic(&self, b: u64, c: u64) -> bool {
        // Remainder of the modulus by t^2 + b t + c over F_p.
        let p = self.p;
        let mut rem = self.modulus.clone();
        for i in (2..rem.len()).rev() {
            let q = rem[i];
            rem[i] = 0;
            // t^i = t^(i-2) * t^2 = t^(i-2) * (-b t - c)
            rem[i - 1] = (rem[i - 1] + q * (p - b % p) % p) % p;
            rem[i - 2] = (rem[i - 2] + q * (p - c % p) % p) % p;
        }
        rem[0] == 0 && rem[1] == 0
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements `p^deg`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.deg as u32)
    }

    pub fn zero(&self) -> FieldElem {
        vec![0; self.deg]
    }

    pub fn one(&self) -> FieldElem {
        let mut e = vec![0; self.deg];
        e[0] = 1;
        e
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if self.deg == 1 {
            return vec![mulmod(a[0], b[0], self.p)];
        }
        let d = self.deg;
        let mut conv = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                conv[i + j] = (conv[i + j] + mulmod(x, y, self.p)) % self.p;
            }
        }
        // Reduce t^i for i >= d via t^d = -(m_0 + ... + m_{d-1} t^{d-1}).
        for i in (d..conv.len()).rev() {
            let q = conv[i];
            if q == 0 {
                continue;
            }
            conv[i] = 0;
            for j in 0..d {
                let m = self.modulus[j] % self.p;
                conv[i - d + j] = (conv[i - d + j] + mulmod(q, self.p - m, self.p)) % self.p;
            }
        }
        conv.truncate(d);
        conv
    }

    pub fn scalar_mul(&self, c: u64, a: &FieldElem) -> FieldElem {
        a.iter().map(|&x| mulmod(c % self.p, x, self.p)).collect()
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
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

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    /// The p-th power map.
    pub fn frobenius(&self, a: &FieldElem) -> FieldElem {
        self.pow(a, self.p)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        let p = self.p as i64;
        let r = ((n % p) + p) % p;
        let mut e = self.zero();
        e[0] = r as u64;
        e
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        let p = BigInt::from(self.p);
        let mut r = n.mod_floor(&p);
        if r.is_negative() {
            r += &p;
        }
        let mut e = self.zero();
        e[0] = r.to_u64().unwrap();
        e
    }

    /// Index of an element in the enumeration order (coordinate 0 is the
    /// fastest digit).
    pub fn elem_index(&self, a: &FieldElem) -> u64 {
        let mut idx = 0u64;
        for &c in a.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn elem_from_index(&self, mut idx: u64) -> FieldElem {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        e
    }

    /// All `p^deg` elements in the deterministic enumeration order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order()).map(|i| self.elem_from_index(i))
    }

    /// Renders an element: a bare integer for the prime field, a bracketed
    /// coordinate list otherwise.
    pub fn render(&self, a: &FieldElem) -> String {
        if self.deg == 1 {
            format!("{}", a[0])
        } else {
            let coords: Vec<String> = a.iter().map(|c| c.to_string()).collect();
            format!("[{}]", coords.join(","))
        }
    }

    /// Images of this field's power basis under an embedding into `sup`,
    /// found by exhaustive root search; `None` when no embedding exists.
    pub fn embedding_into(&self, sup: &FiniteField) -> Option<Vec<FieldElem>> {
        if self.p != sup.p {
            return None;
        }
        if self.deg == 1 {
            return Some(vec![sup.one()]);
        }
        if !sup.deg.is_multiple_of(self.deg) {
            return None;
        }
        'roots: for r in sup.enumerate() {
            let mut acc = sup.zero();
            let mut pw = sup.one();
            for &c in &self.modulus {
                acc = sup.add(&acc, &sup.scalar_mul(c, &pw));
                pw = sup.mul(&pw, &r);
            }
            if !sup.is_zero(&acc) {
                continue 'roots;
            }
            let mut images = Vec::with_capacity(self.deg);
            let mut pw = sup.one();
            for _ in 0..self.deg {
                images.push(pw.clone());
                pw = sup.mul(&pw, &r);
            }
            return Some(images);
        }
        None
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_builds() {
        let f2 = FiniteField::new(2, vec![1]).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.enumerate().collect::<Vec<_>>(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn f4_builds_and_enumerates() {
        let f4 = FiniteField::new(2, vec![1, 1, 1]).unwrap();
        assert_eq!(f4.order(), 4);
        let elems: Vec<FieldElem> = f4.enumerate().collect();
        assert_eq!(elems, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        // u^2 = u + 1 under t^2 + t + 1.
        let u = vec![0, 1];
        assert_eq!(f4.mul(&u, &u), vec![1, 1]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        let err = FiniteField::new(2, vec![1, 0, 1]).unwrap_err();
        assert_eq!(err.code(), "Reducible");
    }

    #[test]
    fn not_prime_rejected() {
        assert_eq!(FiniteField::new(4, vec![1]).unwrap_err().code(), "NotPrime");
    }

    #[test]
    fn quartic_factor_search() {
        // t^4 + t^2 + 1 = (t^2 + t + 1)^2 over F_2: no roots yet reducible.
        let err = FiniteField::new(2, vec![1, 0, 1, 0, 1]).unwrap_err();
        assert_eq!(err.code(), "Reducible");
        // t^4 + t + 1 is irreducible over F_2.
        assert!(FiniteField::new(2, vec![1, 1, 0, 0, 1]).is_ok());
    }

    #[test]
    fn inverses() {
        let f9 = FiniteField::new(3, vec![1, 0, 1]).unwrap();
        for a in f9.enumerate().skip(1) {
            let inv = f9.inv(&a).unwrap();
            assert_eq!(f9.mul(&a, &inv), f9.one());
        }
    }

    #[test]
    fn frobenius_is_bijective_on_fields() {
        for f in [
            FiniteField::new(2, vec![1, 1, 1]).unwrap(),
            FiniteField::new(3, vec![1, 0, 1]).unwrap(),
        ] {
            let mut images: Vec<FieldElem> = f.enumerate().map(|a| f.frobenius(&a)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len() as u64, f.order());
        }
    }

    #[test]
    fn embedding_f2_into_f4() {
        let f2 = FiniteField::prime(2).unwrap();
        let f4 = FiniteField::new(2, vec![1, 1, 1]).unwrap();
        let emb = f2.embedding_into(&f4).unwrap();
        assert_eq!(emb, vec![f4.one()]);
        assert!(f4.embedding_into(&f2).is_none());
    }
}
