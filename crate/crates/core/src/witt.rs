//! p-typical Witt vectors of finite length.
//!
//! The sum/product/negation structure polynomials are constructed over Z by
//! ghost recursion and verified against the ghost identities symbolically
//! before use. Truncated Witt arithmetic over any carrier then evaluates the
//! mod-p reductions of these laws through the ring-operation interface.

use crate::cache::LawCache;
use crate::error::{Error, Result};
use crate::ff::FiniteField;
use crate::poly::{Coeff, CoeffRing, Poly};
use crate::ring::RingOps;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Cap on intermediate term counts during law construction.
pub const DEFAULT_TERM_GUARD: usize = 1_000_000;

/// The universal integer structure polynomials for length-`len` Witt
/// vectors: `sum[j]`, `prod[j]` and `neg[j]` give coordinate `j` of the
/// respective law in the variables `x0..x{len-1}`, `y0..y{len-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WittLaws {
    pub p: u64,
    pub len: usize,
    pub sum: Vec<Poly>,
    pub prod: Vec<Poly>,
    pub neg: Vec<Poly>,
}

/// The ghost polynomial `w_j = sum_{i<=j} p^i X_i^(p^(j-i))` in variables
/// `{prefix}0..{prefix}j`.
pub fn ghost_poly(p: u64, j: usize, prefix: &str) -> Poly {
    let mut acc = Poly::zero(CoeffRing::Int);
    for i in 0..=j {
        let v = Poly::var(&format!("{prefix}{i}"), CoeffRing::Int);
        let pw = v.pow(p.pow((j - i) as u32)).unwrap();
        let coeff = Poly::constant(CoeffRing::Int, Coeff::Int(BigInt::from(p).pow(i as u32)));
        acc = acc.add(&coeff.mul(&pw).unwrap()).unwrap();
    }
    acc
}

impl WittLaws {
    /// Ghost recursion. Exact division by `p^j` at each step asserts the
    /// integrality of the laws; the ghost identities are re-verified
    /// symbolically before returning.
    pub fn build(p: u64, len: usize, term_guard: usize) -> Result<WittLaws> {
        assert!(len >= 1);
        let mut sum: Vec<Poly> = Vec::with_capacity(len);
        let mut prod: Vec<Poly> = Vec::with_capacity(len);
        let mut neg: Vec<Poly> = Vec::with_capacity(len);
        for j in 0..len {
            let gx = ghost_poly(p, j, "x");
            let gy = ghost_poly(p, j, "y");
            let targets = [gx.add(&gy)?, gx.mul(&gy)?, gx.neg()];
            let built = [&sum, &prod, &neg];
            let mut out: Vec<Poly> = Vec::with_capacity(3);
            for (rhs0, lower) in targets.iter().zip(built) {
                let mut rhs = rhs0.clone();
                for (i, li) in lower.iter().enumerate() {
                    let pw = li.pow(p.pow((j - i) as u32))?;
                    if pw.num_terms() > term_guard {
                        return Err(Error::SizeGuard(format!(
                            "law construction exceeded {term_guard} terms"
                        )));
                    }
                    let scale =
                        Poly::constant(CoeffRing::Int, Coeff::Int(BigInt::from(p).pow(i as u32)));
                    rhs = rhs.sub(&scale.mul(&pw)?)?;
                }
                let law = rhs.div_exact_int(&BigInt::from(p).pow(j as u32))?;
                if law.num_terms() > term_guard {
                    return Err(Error::SizeGuard(format!(
                        "law construction exceeded {term_guard} terms"
                    )));
                }
                out.push(law);
            }
            neg.push(out.pop().unwrap());
            prod.push(out.pop().unwrap());
            sum.push(out.pop().unwrap());
        }
        let laws = WittLaws {
            p,
            len,
            sum,
            prod,
            neg,
        };
        laws.verify_ghost_identities()?;
        Ok(laws)
    }

    /// Checks `w_j(S) = w_j(X) + w_j(Y)`, `w_j(P) = w_j(X) w_j(Y)` and
    /// `w_j(N) = -w_j(X)` as exact polynomial identities over Z.
    pub fn verify_ghost_identities(&self) -> Result<()> {
        let p = self.p;
        for j in 0..self.len {
            let gx = ghost_poly(p, j, "x");
            let gy = ghost_poly(p, j, "y");
            let subst = |laws: &[Poly]| -> Result<Poly> {
                let mut map = BTreeMap::new();
                for (i, li) in laws.iter().enumerate().take(j + 1) {
                    map.insert(format!("x{i}"), li.clone());
                }
                gx.substitute(&map)
            };
            if subst(&self.sum)? != gx.add(&gy)? {
                return Err(Error::NotDivisible(
                    format!("ghost sum identity at j={j}"),
                    "p".into(),
                ));
            }
            if subst(&self.prod)? != gx.mul(&gy)? {
                return Err(Error::NotDivisible(
                    format!("ghost product identity at j={j}"),
                    "p".into(),
                ));
            }
            if subst(&self.neg)? != gx.neg() {
                return Err(Error::NotDivisible(
                    format!("ghost negation identity at j={j}"),
                    "p".into(),
                ));
            }
        }
        Ok(())
    }

    /// Coordinate `j` of any law may only involve variables of index <= j;
    /// this is what makes dropping the last coordinate a ring map.
    pub fn verify_truncation_support(&self) -> bool {
        let ok = |polys: &[Poly]| {
            polys.iter().enumerate().all(|(j, poly)| {
                poly.vars()
                    .iter()
                    .all(|v| v[1..].parse::<usize>().map(|i| i <= j).unwrap_or(false))
            })
        };
        ok(&self.sum) && ok(&self.prod) && ok(&self.neg)
    }

    pub fn cache_file_name(p: u64, len: usize) -> String {
        format!("witt_p{p}_n{len}.txt")
    }

    pub fn to_cache_text(&self) -> String {
        let mut out = format!("witt p={} n={}\n", self.p, self.len);
        for (label, polys) in [("sum", &self.sum), ("prod", &self.prod), ("neg", &self.neg)] {
            for (j, poly) in polys.iter().enumerate() {
                out.push_str(&format!("[{label} {j}]\n{}\n", poly.render()));
            }
        }
        out
    }

    pub fn from_cache_text(text: &str) -> Result<WittLaws> {
        let perr = |msg: String| Error::Parse {
            path: "witt cache".into(),
            msg,
        };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| perr("empty file".into()))?;
        let header = header
            .strip_prefix("witt p=")
            .ok_or_else(|| perr("bad header".into()))?;
        let (p_str, n_str) = header
            .split_once(" n=")
            .ok_or_else(|| perr("bad header".into()))?;
        let p: u64 = p_str.parse().map_err(|_| perr("bad p".into()))?;
        let len: usize = n_str.parse().map_err(|_| perr("bad n".into()))?;
        let mut sections: BTreeMap<String, Poly> = BTreeMap::new();
        let mut current: Option<String> = None;
        for line in lines {
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                current = Some(name.to_string());
            } else {
                let key = current
                    .take()
                    .ok_or_else(|| perr(format!("stray line {line:?}")))?;
                sections.insert(key, Poly::parse(line, CoeffRing::Int)?);
            }
        }
        let grab = |label: &str| -> Result<Vec<Poly>> {
            (0..len)
                .map(|j| {
                    sections
                        .get(&format!("{label} {j}"))
                        .cloned()
                        .ok_or_else(|| perr(format!("missing section {label} {j}")))
                })
                .collect()
        };
        let laws = WittLaws {
            p,
            len,
            sum: grab("sum")?,
            prod: grab("prod")?,
            neg: grab("neg")?,
        };
        laws.verify_ghost_identities()?;
        Ok(laws)
    }
}

type LawsKey = (u64, usize);

fn laws_registry() -> &'static Mutex<HashMap<LawsKey, Arc<WittLaws>>> {
    static REG: OnceLock<Mutex<HashMap<LawsKey, Arc<WittLaws>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Fetches the laws for `(p, len)` from the in-process registry, the disk
/// cache, or a fresh build (in that order). The shorter truncations of a
/// cached longer law set are derived by slicing.
pub fn witt_laws(p: u64, len: usize, cache: &LawCache) -> Result<Arc<WittLaws>> {
    let name = WittLaws::cache_file_name(p, len);
    if let Some(found) = laws_registry().lock().unwrap().get(&(p, len)) {
        if cache.dir().is_some() && cache.read(&name).is_none() {
            cache.write(&name, &found.to_cache_text())?;
        }
        return Ok(found.clone());
    }
    let laws = match cache
        .read(&name)
        .and_then(|t| WittLaws::from_cache_text(&t).ok())
    {
        Some(l) if l.p == p && l.len == len => l,
        _ => {
            let built = WittLaws::build(p, len, DEFAULT_TERM_GUARD)?;
            cache.write(&name, &built.to_cache_text())?;
            built
        }
    };
    let arc = Arc::new(laws);
    laws_registry()
        .lock()
        .unwrap()
        .insert((p, len), arc.clone());
    Ok(arc)
}

/// Length-`len` Witt vectors with the laws reduced into a base field; the
/// arithmetic itself runs in any carrier through [`RingOps`].
#[derive(Debug, Clone)]
pub struct WittStructure {
    field: Arc<FiniteField>,
    len: usize,
    sum: Vec<Poly>,
    prod: Vec<Poly>,
    neg: Vec<Poly>,
}

impl WittStructure {
    pub fn new(field: Arc<FiniteField>, laws: &WittLaws) -> Result<WittStructure> {
        assert_eq!(field.p(), laws.p, "laws built for a different prime");
        let reduce = |polys: &[Poly]| -> Result<Vec<Poly>> {
            polys.iter().map(|q| q.map_coeffs(&field)).collect()
        };
        Ok(WittStructure {
            len: laws.len,
            sum: reduce(&laws.sum)?,
            prod: reduce(&laws.prod)?,
            neg: reduce(&laws.neg)?,
            field,
        })
    }

    pub fn for_field(
        field: Arc<FiniteField>,
        len: usize,
        cache: &LawCache,
    ) -> Result<WittStructure> {
        let laws = witt_laws(field.p(), len, cache)?;
        WittStructure::new(field, &laws)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn sum_polys(&self) -> &[Poly] {
        &self.sum
    }

    pub fn prod_polys(&self) -> &[Poly] {
        &self.prod
    }

    pub fn neg_polys(&self) -> &[Poly] {
        &self.neg
    }

    fn check_len<E>(&self, a: &[E], b: &[E]) -> Result<()> {
        if a.len() != self.len || b.len() != self.len {
            return Err(Error::LengthMismatch(a.len(), b.len()));
        }
        Ok(())
    }

    fn apply<R: RingOps>(
        &self,
        ops: &R,
        polys: &[Poly],
        a: &[R::Elem],
        b: Option<&[R::Elem]>,
    ) -> Result<Vec<R::Elem>> {
        let mut assign: BTreeMap<String, R::Elem> = BTreeMap::new();
        for (i, v) in a.iter().enumerate() {
            assign.insert(format!("x{i}"), v.clone());
        }
        if let Some(b) = b {
            for (i, v) in b.iter().enumerate() {
                assign.insert(format!("y{i}"), v.clone());
            }
        }
        polys.iter().map(|q| q.eval(ops, &assign)).collect()
    }

    pub fn add<R: RingOps>(&self, ops: &R, a: &[R::Elem], b: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.check_len(a, b)?;
        self.apply(ops, &self.sum, a, Some(b))
    }

    pub fn mul<R: RingOps>(&self, ops: &R, a: &[R::Elem], b: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.check_len(a, b)?;
        self.apply(ops, &self.prod, a, Some(b))
    }

    pub fn neg<R: RingOps>(&self, ops: &R, a: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.check_len(a, a)?;
        self.apply(ops, &self.neg, a, None)
    }

    pub fn sub<R: RingOps>(&self, ops: &R, a: &[R::Elem], b: &[R::Elem]) -> Result<Vec<R::Elem>> {
        let nb = self.neg(ops, b)?;
        self.add(ops, a, &nb)
    }

    pub fn zero<R: RingOps>(&self, ops: &R) -> Vec<R::Elem> {
        vec![ops.zero(); self.len]
    }

    pub fn one<R: RingOps>(&self, ops: &R) -> Vec<R::Elem> {
        self.teichmueller(ops, &ops.one())
    }

    /// `[x] = (x, 0, ..., 0)`, the multiplicative section.
    pub fn teichmueller<R: RingOps>(&self, ops: &R, x: &R::Elem) -> Vec<R::Elem> {
        let mut v = self.zero(ops);
        v[0] = x.clone();
        v
    }

    /// `V(a_0, ..., a_{n-1}) = (0, a_0, ..., a_{n-2})`.
    pub fn verschiebung<R: RingOps>(&self, ops: &R, a: &[R::Elem]) -> Vec<R::Elem> {
        let mut v = self.zero(ops);
        v[1..self.len].clone_from_slice(&a[..self.len - 1]);
        v
    }

    /// Coordinatewise p-th power: the Witt-vector Frobenius in
    /// characteristic p.
    pub fn frobenius<R: RingOps>(&self, ops: &R, a: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().map(|x| ops.pow(x, self.field.p())).collect()
    }

    /// Multiplication by p as V(F(a)); valid over F_p-algebras.
    pub fn mul_by_p<R: RingOps>(&self, ops: &R, a: &[R::Elem]) -> Vec<R::Elem> {
        let f = self.frobenius(ops, a);
        self.verschiebung(ops, &f)
    }

    /// The image of an integer under the unique ring map Z -> W_n, by
    /// binary double-and-add.
    pub fn from_int<R: RingOps>(&self, ops: &R, n: &BigInt) -> Result<Vec<R::Elem>> {
        use num_traits::Signed;
        let negate = n.is_negative();
        let mut mag = n.abs();
        let mut bits = Vec::new();
        while mag > BigInt::ZERO {
            bits.push((&mag % 2u8) == BigInt::one());
            mag /= 2u8;
        }
        let mut acc = self.zero(ops);
        let one = self.one(ops);
        for &bit in bits.iter().rev() {
            acc = self.add(ops, &acc, &acc)?;
            if bit {
                acc = self.add(ops, &acc, &one)?;
            }
        }
        if negate {
            acc = self.neg(ops, &acc)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraHom, FiniteAlgebra, DEFAULT_SIZE_GUARD};
    use crate::ring::{AlgebraOps, FieldOps};

    fn laws(p: u64, n: usize) -> Arc<WittLaws> {
        witt_laws(p, n, &LawCache::disabled()).unwrap()
    }

    #[test]
    fn length_one_laws_are_plain_ring_ops() {
        let l = laws(2, 1);
        assert_eq!(l.sum[0].render(), "x0 + y0");
        assert_eq!(l.prod[0].render(), "x0*y0");
        assert_eq!(l.neg[0].render(), "-1*x0");
    }

    #[test]
    fn length_two_laws_match_hand_recursion() {
        let l = laws(2, 2);
        assert_eq!(l.sum[1].render(), "-1*x0*y0 + x1 + y1");
        assert_eq!(l.prod[1].render(), "x0^2*y1 + x1*y0^2 + 2*x1*y1");
    }

    #[test]
    fn ghost_identities_hold_for_small_grid() {
        for (p, n) in [(2, 3), (3, 2), (5, 2)] {
            let l = laws(p, n);
            l.verify_ghost_identities().unwrap();
            assert!(l.verify_truncation_support());
        }
    }

    #[test]
    fn witt_sum_in_w2_f2() {
        let f2 = Arc::new(FiniteField::prime(2).unwrap());
        let w = WittStructure::for_field(f2.clone(), 2, &LawCache::disabled()).unwrap();
        let ops = FieldOps(&f2);
        let a = vec![f2.one(), f2.zero()];
        let sum = w.add(&ops, &a, &a).unwrap();
        assert_eq!(sum, vec![f2.zero(), f2.one()]);
        let prod = w.mul(&ops, &a, &a).unwrap();
        assert_eq!(prod, a);
        for i in 0..4u64 {
            let v = vec![f2.elem_from_index(i % 2), f2.elem_from_index(i / 2)];
            assert_eq!(w.add(&ops, &v, &w.zero(&ops)).unwrap(), v);
        }
    }

    #[test]
    fn verschiebung_and_frobenius() {
        let f2 = Arc::new(FiniteField::prime(2).unwrap());
        let w = WittStructure::for_field(f2.clone(), 2, &LawCache::disabled()).unwrap();
        let ops = FieldOps(&f2);
        assert_eq!(
            w.verschiebung(&ops, &[f2.one(), f2.one()]),
            vec![f2.zero(), f2.one()]
        );
        let eps_alg = FiniteAlgebra::dual_numbers(f2.clone(), 2, DEFAULT_SIZE_GUARD).unwrap();
        let aops = AlgebraOps(&eps_alg);
        let w_eps = WittStructure::for_field(f2, 2, &LawCache::disabled()).unwrap();
        let eps = eps_alg.elem_from_index(2);
        let v = vec![eps, eps_alg.zero()];
        assert_eq!(
            w_eps.frobenius(&aops, &v),
            vec![eps_alg.zero(), eps_alg.zero()]
        );
    }

    #[test]
    fn vf_is_mul_by_p_on_w3_f3() {
        let f3 = Arc::new(FiniteField::prime(3).unwrap());
        let alg = FiniteAlgebra::field(f3.clone());
        let ops = AlgebraOps(&alg);
        let w = WittStructure::for_field(f3, 3, &LawCache::disabled()).unwrap();
        for idx in 0..27u64 {
            let a: Vec<_> = (0..3)
                .map(|i| alg.elem_from_index((idx / 3u64.pow(i)) % 3))
                .collect();
            let vf = w.mul_by_p(&ops, &a);
            let sum3 = w.add(&ops, &w.add(&ops, &a, &a).unwrap(), &a).unwrap();
            assert_eq!(vf, sum3);
        }
    }

    #[test]
    fn from_int_values() {
        let f2 = Arc::new(FiniteField::prime(2).unwrap());
        let w = WittStructure::for_field(f2.clone(), 2, &LawCache::disabled()).unwrap();
        let ops = FieldOps(&f2);
        assert_eq!(
            w.from_int(&ops, &BigInt::from(3)).unwrap(),
            vec![f2.one(), f2.one()]
        );
        assert_eq!(w.from_int(&ops, &BigInt::from(0)).unwrap(), w.zero(&ops));
        for p in [2u64, 3, 5] {
            let fp = Arc::new(FiniteField::prime(p).unwrap());
            let wp = WittStructure::for_field(fp.clone(), 2, &LawCache::disabled()).unwrap();
            let fops = FieldOps(&fp);
            assert_eq!(
                wp.from_int(&fops, &BigInt::from(p)).unwrap(),
                vec![fp.zero(), fp.one()]
            );
        }
    }

    #[test]
    fn w2_fp_is_z_mod_p2() {
        for p in [2u64, 3] {
            let fp = Arc::new(FiniteField::prime(p).unwrap());
            let w = WittStructure::for_field(fp.clone(), 2, &LawCache::disabled()).unwrap();
            let ops = FieldOps(&fp);
            let m = p * p;
            let images: Vec<_> = (0..m)
                .map(|i| w.from_int(&ops, &BigInt::from(i)).unwrap())
                .collect();
            for i in 0..m {
                for j in 0..m {
                    assert_eq!(
                        w.add(&ops, &images[i as usize], &images[j as usize])
                            .unwrap(),
                        images[((i + j) % m) as usize]
                    );
                    assert_eq!(
                        w.mul(&ops, &images[i as usize], &images[j as usize])
                            .unwrap(),
                        images[((i * j) % m) as usize]
                    );
                }
            }
            let mut distinct = images.clone();
            distinct.sort();
            distinct.dedup();
            assert_eq!(distinct.len() as u64, m);
        }
    }

    #[test]
    fn coordinatewise_hom_respects_witt_ops() {
        let f2 = Arc::new(FiniteField::prime(2).unwrap());
        let f4 = Arc::new(FiniteField::new(2, vec![1, 1, 1]).unwrap());
        let a2 = Arc::new(FiniteAlgebra::field(f2.clone()));
        let a4 = Arc::new(FiniteAlgebra::field(f4));
        let hom = AlgebraHom::field_inclusion(a2.clone(), a4.clone()).unwrap();
        let w = WittStructure::for_field(f2, 2, &LawCache::disabled()).unwrap();
        let src_ops = AlgebraOps(&a2);
        let dst_ops = AlgebraOps(&a4);
        let map = |v: &[crate::algebra::AlgElem]| -> Vec<crate::algebra::AlgElem> {
            v.iter().map(|c| hom.value(c)).collect()
        };
        for i in 0..4u64 {
            let a: Vec<_> = (0..2)
                .map(|k| a2.elem_from_index((i / 2u64.pow(k)) % 2))
                .collect();
            for j in 0..4u64 {
                let b: Vec<_> = (0..2)
                    .map(|k| a2.elem_from_index((j / 2u64.pow(k)) % 2))
                    .collect();
                let lhs = map(&w.add(&src_ops, &a, &b).unwrap());
                let rhs = w.add(&dst_ops, &map(&a), &map(&b)).unwrap();
                assert_eq!(lhs, rhs);
                let lhs = map(&w.mul(&src_ops, &a, &b).unwrap());
                let rhs = w.mul(&dst_ops, &map(&a), &map(&b)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn concurrent_duplicate_builds_share_one_cache_file() {
        let dir = std::env::temp_dir().join(format!("witt-cache-conc-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let dir = dir.clone();
                std::thread::spawn(move || {
                    let cache = LawCache::at(dir);
                    witt_laws(3, 3, &cache).unwrap().to_cache_text()
                })
            })
            .collect();
        let texts: Vec<String> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(texts.windows(2).all(|w| w[0] == w[1]));
        let on_disk = LawCache::at(&dir)
            .read(&WittLaws::cache_file_name(3, 3))
            .unwrap();
        assert_eq!(on_disk, texts[0]);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn teichmueller_is_multiplicative() {
        let f4 = Arc::new(FiniteField::new(2, vec![1, 1, 1]).unwrap());
        let alg = FiniteAlgebra::field(f4.clone());
        let ops = AlgebraOps(&alg);
        let w = WittStructure::for_field(f4, 3, &LawCache::disabled()).unwrap();
        for x in alg.enumerate() {
            for y in alg.enumerate() {
                let lhs = w
                    .mul(&ops, &w.teichmueller(&ops, &x), &w.teichmueller(&ops, &y))
                    .unwrap();
                let rhs = w.teichmueller(&ops, &alg.mul(&x, &y));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn frobenius_is_additive_even_over_dual_numbers() {
        // Coordinatewise p-th power respects the Witt sum because the sum
        // polynomials have F_p coefficients; no perfectness is needed.
        let f2 = Arc::new(FiniteField::prime(2).unwrap());
        let alg = FiniteAlgebra::dual_numbers(f2.clone(), 2, DEFAULT_SIZE_GUARD).unwrap();
        let ops = AlgebraOps(&alg);
        let w = WittStructure::for_field(f2, 2, &LawCache::disabled()).unwrap();
        let vectors: Vec<Vec<crate::algebra::AlgElem>> = (0..16u64)
            .map(|i| vec![alg.elem_from_index(i % 4), alg.elem_from_index(i / 4)])
            .collect();
        for a in &vectors {
            for b in &vectors {
                let lhs = w.frobenius(&ops, &w.add(&ops, a, b).unwrap());
                let rhs = w
                    .add(&ops, &w.frobenius(&ops, a), &w.frobenius(&ops, b))
                    .unwrap();
                assert_eq!(lhs, rhs);
                let lhs = w.frobenius(&ops, &w.mul(&ops, a, b).unwrap());
                let rhs = w
                    .mul(&ops, &w.frobenius(&ops, a), &w.frobenius(&ops, b))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn corrupt_cache_file_is_rebuilt() {
        let dir = std::env::temp_dir().join(format!("witt-cache-bad-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let cache = LawCache::at(&dir);
        let name = WittLaws::cache_file_name(7, 2);
        cache
            .write(&name, "witt p=7 n=2\n[sum 0]\nx0 + x0\n")
            .unwrap();
        let laws = witt_laws(7, 2, &cache).unwrap();
        laws.verify_ghost_identities().unwrap();
        // The bad file was replaced by the rebuilt canonical text.
        let on_disk = cache.read(&name).unwrap();
        assert_eq!(on_disk, laws.to_cache_text());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("witt-cache-test-{}", std::process::id()));
        let cache = LawCache::at(&dir);
        let built = witt_laws(2, 3, &cache).unwrap();
        // Drop the registry entry indirectly by reading the file back.
        let text = cache.read(&WittLaws::cache_file_name(2, 3)).unwrap();
        let reread = WittLaws::from_cache_text(&text).unwrap();
        assert_eq!(*built, reread);
        std::fs::remove_dir_all(&dir).ok();
    }
}
