//! Greenberg algebras: the ring scheme structure on affine (N+1)-space
//! over the residue field whose A-points realize R/m^(N+1) functorially.
//!
//! Three base-ring cases are supported: equal characteristic `R = k[[t]]`,
//! the absolutely unramified mixed case `R = W(k)`, and totally ramified
//! mixed extensions `W(k)[t]/(f)` for an Eisenstein polynomial `f` with
//! integer coefficients.
//!
//! In the mixed case the laws are computed at the master level
//! `N* = m*rho - 1`, where `R_(N*) = W_m(k)[pi]/(f)` is free of rank rho
//! over `W_m(k)`: an element is a rho-tuple of length-m Witt vectors, addition is
//! componentwise Witt addition, and multiplication is Witt convolution
//! followed by repeated reduction of pi^l (l >= rho) through the Eisenstein
//! relation. Lower levels are coordinate truncations of the master laws;
//! the build asserts that every retained output coordinate only mentions
//! retained inputs before returning.

use crate::algebra::{AlgElem, FiniteAlgebra};
use crate::cache::LawCache;
use crate::error::{Error, Result};
use crate::ff::{FieldElem, FiniteField};
use crate::poly::{Coeff, CoeffRing, Poly, PolyOps};
use crate::ring::{AlgebraOps, FieldOps, RingOps};
use crate::witt::WittStructure;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharCase {
    Equal,
    Mixed,
}

/// Descriptor of the complete discrete valuation ring R.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseRingSpec {
    pub case: CharCase,
    pub k: Arc<FiniteField>,
    /// Eisenstein coefficients (a_1, ..., a_rho) of f = t^rho + a_1
    /// t^(rho-1) + ... + a_rho. Empty in the equal case and for R = W(k).
    pub eisenstein: Vec<BigInt>,
}

impl BaseRingSpec {
    pub fn equal(k: Arc<FiniteField>) -> BaseRingSpec {
        BaseRingSpec {
            case: CharCase::Equal,
            k,
            eisenstein: Vec::new(),
        }
    }

    pub fn unramified(k: Arc<FiniteField>) -> BaseRingSpec {
        BaseRingSpec {
            case: CharCase::Mixed,
            k,
            eisenstein: Vec::new(),
        }
    }

    pub fn mixed(k: Arc<FiniteField>, eisenstein: Vec<BigInt>) -> Result<BaseRingSpec> {
        let spec = BaseRingSpec {
            case: CharCase::Mixed,
            k,
            eisenstein,
        };
        spec.validate_eisenstein()?;
        Ok(spec)
    }

    fn validate_eisenstein(&self) -> Result<()> {
        if self.eisenstein.is_empty() {
            return Ok(());
        }
        let p = BigInt::from(self.k.p());
        for (i, a) in self.eisenstein.iter().enumerate() {
            if !a.mod_floor(&p).is_zero() {
                return Err(Error::NotEisenstein(format!(
                    "p does not divide a_{}",
                    i + 1
                )));
            }
        }
        let last = self.eisenstein.last().unwrap();
        if last.mod_floor(&(&p * &p)).is_zero() {
            return Err(Error::NotEisenstein(format!(
                "p^2 divides a_{}",
                self.eisenstein.len()
            )));
        }
        Ok(())
    }

    /// Absolute ramification index; 1 when R = W(k). The equal case has no
    /// finite value, reported as 0 and never used.
    pub fn rho(&self) -> usize {
        match self.case {
            CharCase::Equal => 0,
            CharCase::Mixed => self.eisenstein.len().max(1),
        }
    }

    pub fn label(&self) -> String {
        let kname = if self.k.deg() == 1 {
            format!("F_{}", self.k.p())
        } else {
            format!("F_{}", self.k.order())
        };
        match self.case {
            CharCase::Equal => format!("{kname}[[t]]"),
            CharCase::Mixed if self.eisenstein.is_empty() => format!("W({kname})"),
            CharCase::Mixed => {
                let rho = self.eisenstein.len();
                let mut f = format!("t^{rho}");
                for (i, a) in self.eisenstein.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let deg = rho - 1 - i;
                    let sign = if a >= &BigInt::ZERO { "+" } else { "-" };
                    let mag = a.magnitude();
                    match deg {
                        0 => f.push_str(&format!("{sign}{mag}")),
                        1 => f.push_str(&format!("{sign}{mag}t")),
                        _ => f.push_str(&format!("{sign}{mag}t^{deg}")),
                    }
                }
                format!("W({kname})[t]/({f})")
            }
        }
    }
}

/// How the level-N truncation decomposes over the Witt coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationData {
    pub level: usize,
    /// Characteristic exponent: R_N has characteristic p^m (mixed case).
    pub m: usize,
    /// Top retained pi-power index.
    pub r: usize,
    /// `lengths[i]` = number of retained Witt slots of component i.
    pub lengths: Vec<usize>,
}

impl RamificationData {
    pub fn compute(spec: &BaseRingSpec, level: usize) -> RamificationData {
        match spec.case {
            CharCase::Equal => RamificationData {
                level,
                m: 1,
                r: level,
                lengths: vec![1; level + 1],
            },
            CharCase::Mixed => {
                let rho = spec.rho();
                let m = (level + 1).div_ceil(rho);
                let r = rho.saturating_sub(1).min(level);
                let lengths: Vec<usize> = (0..=r).map(|i| (level - i) / rho + 1).collect();
                debug_assert_eq!(lengths.iter().sum::<usize>(), level + 1);
                RamificationData {
                    level,
                    m,
                    r,
                    lengths,
                }
            }
        }
    }
}

/// An element of R_N(-) with entries in an arbitrary carrier: field or
/// algebra elements for points, polynomials for symbolic work.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaElement<E> {
    pub coords: Vec<E>,
}

impl<E> GaElement<E> {
    pub fn new(coords: Vec<E>) -> Self {
        GaElement { coords }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaOp {
    Add,
    Mul,
    Neg,
}

#[derive(Debug, Clone)]
pub struct GreenbergAlgebra {
    base: BaseRingSpec,
    level: usize,
    ram: RamificationData,
    add: Vec<Poly>,
    mul: Vec<Poly>,
    neg: Vec<Poly>,
    one: Vec<FieldElem>,
    pi: Vec<FieldElem>,
}

impl PartialEq for GreenbergAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.level == other.level
    }
}

fn ga_registry() -> &'static Mutex<HashMap<String, Arc<GreenbergAlgebra>>> {
    static REG: OnceLock<Mutex<HashMap<String, Arc<GreenbergAlgebra>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GreenbergAlgebra {
    /// The residue field itself, presented as the level-0 algebra of the
    /// equal-characteristic base. R_0(A) = A for every case.
    pub fn field(k: Arc<FiniteField>) -> Arc<GreenbergAlgebra> {
        GreenbergAlgebra::build(&BaseRingSpec::equal(k), 0, &LawCache::disabled())
            .expect("level-0 build cannot fail")
    }

    /// Builds the structure laws of R_N over the residue field.
    ///
    /// ```
    /// use greenberg_core::cache::LawCache;
    /// use greenberg_core::ff::FiniteField;
    /// use greenberg_core::greenberg::{BaseRingSpec, GreenbergAlgebra};
    /// use std::sync::Arc;
    ///
    /// let k = Arc::new(FiniteField::prime(2).unwrap());
    /// let spec = BaseRingSpec::unramified(k);
    /// let ga = GreenbergAlgebra::build(&spec, 1, &LawCache::disabled()).unwrap();
    /// // The second addition coordinate carries the Witt sum's carry term.
    /// assert_eq!(ga.add_polys()[1].render(), "x0*y0 + x1 + y1");
    /// ```
    pub fn build(
        spec: &BaseRingSpec,
        level: usize,
        cache: &LawCache,
    ) -> Result<Arc<GreenbergAlgebra>> {
        spec.validate_eisenstein()?;
        let key = GreenbergAlgebra::cache_file_name(spec, level);
        if let Some(found) = ga_registry().lock().unwrap().get(&key) {
            return Ok(found.clone());
        }
        let ga = if let Some(text) = cache.read(&key) {
            match GreenbergAlgebra::from_cache_text(spec, level, &text) {
                Ok(g) => g,
                Err(_) => {
                    let built = GreenbergAlgebra::construct(spec, level, cache)?;
                    cache.write(&key, &built.to_cache_text())?;
                    built
                }
            }
        } else {
            let built = GreenbergAlgebra::construct(spec, level, cache)?;
            cache.write(&key, &built.to_cache_text())?;
            built
        };
        ga.verify_unit_law()?;
        ga.verify_uniformizer()?;
        let arc = Arc::new(ga);
        ga_registry().lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    fn construct(spec: &BaseRingSpec, level: usize, cache: &LawCache) -> Result<GreenbergAlgebra> {
        let ram = RamificationData::compute(spec, level);
        let k = spec.k.clone();
        let ring = CoeffRing::FF(k.clone());
        let n1 = level + 1;
        let xv = |v: usize| Poly::var(&format!("x{v}"), ring.clone());
        let yv = |v: usize| Poly::var(&format!("y{v}"), ring.clone());

        let (add, mul, neg) = if level == 0 {
            // S R_0 = A^1 with the plain k-algebra laws, regardless of case.
            (
                vec![xv(0).add(&yv(0))?],
                vec![xv(0).mul(&yv(0))?],
                vec![xv(0).neg()],
            )
        } else {
            match spec.case {
                CharCase::Equal => {
                    let mut add = Vec::with_capacity(n1);
                    let mut mul = Vec::with_capacity(n1);
                    let mut neg = Vec::with_capacity(n1);
                    for l in 0..n1 {
                        add.push(xv(l).add(&yv(l))?);
                        neg.push(xv(l).neg());
                        let mut conv = Poly::zero(ring.clone());
                        for i in 0..=l {
                            conv = conv.add(&xv(i).mul(&yv(l - i))?)?;
                        }
                        mul.push(conv);
                    }
                    (add, mul, neg)
                }
                CharCase::Mixed => Self::construct_mixed(spec, level, &ram, cache)?,
            }
        };

        let mut one = vec![k.zero(); n1];
        one[0] = k.one();
        let mut pi = vec![k.zero(); n1];
        if level >= 1 {
            pi[1] = k.one();
        }

        let mut ga = GreenbergAlgebra {
            base: spec.clone(),
            level,
            ram,
            add,
            mul,
            neg,
            one,
            pi,
        };
        // With rho = 1 and an explicit Eisenstein relation t + a_1 = 0 the
        // uniformizer is -a_1, a unit multiple of p; the slot-one vector
        // would only be p itself.
        if spec.case == CharCase::Mixed && spec.rho() == 1 && !spec.eisenstein.is_empty() {
            ga.pi = ga.int_image(&-spec.eisenstein[0].clone())?.coords;
        }
        ga.verify_grading()?;
        ga.verify_uniformizer()?;
        Ok(ga)
    }

    /// Asserts the defining relation of the uniformizer: pi^(N+1) = 0 in
    /// the equal case, f(pi) = 0 (with f = t - p understood for R = W(k))
    /// in the mixed case.
    fn verify_uniformizer(&self) -> Result<()> {
        let ops = FieldOps(&self.base.k);
        let pi = self.pi_elem();
        match self.base.case {
            CharCase::Equal => {
                let mut acc = self.one_elem();
                for _ in 0..=self.level {
                    acc = self.ga_mul(&ops, &acc, &pi)?;
                }
                if !self.is_zero_elem(&acc) {
                    return Err(Error::GradingViolation(
                        "pi^(N+1) is nonzero".into(),
                        "pi".into(),
                    ));
                }
            }
            CharCase::Mixed if self.base.eisenstein.is_empty() => {
                if pi != self.int_image(&BigInt::from(self.base.k.p()))? {
                    return Err(Error::GradingViolation(
                        "pi differs from the image of p".into(),
                        "pi".into(),
                    ));
                }
            }
            CharCase::Mixed => {
                let rho = self.base.rho();
                let mut acc = self.one_elem();
                for _ in 0..rho {
                    acc = self.ga_mul(&ops, &acc, &pi)?;
                }
                for (j, a) in self.base.eisenstein.iter().enumerate() {
                    let mut term = self.int_image(a)?;
                    for _ in 0..(rho - 1 - j) {
                        term = self.ga_mul(&ops, &term, &pi)?;
                    }
                    acc = self.ga_add(&ops, &acc, &term)?;
                }
                if !self.is_zero_elem(&acc) {
                    return Err(Error::GradingViolation(
                        "f(pi) is nonzero".into(),
                        "pi".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Master-level construction for the mixed case, truncated to `level`.
    fn construct_mixed(
        spec: &BaseRingSpec,
        level: usize,
        ram: &RamificationData,
        cache: &LawCache,
    ) -> Result<(Vec<Poly>, Vec<Poly>, Vec<Poly>)> {
        let k = spec.k.clone();
        let rho = spec.rho();
        let m = ram.m;
        let ring = CoeffRing::FF(k.clone());
        let ws = WittStructure::for_field(k.clone(), m, cache)?;
        let pops = PolyOps { ring: ring.clone() };

        // Component i, slot s lives at flat coordinate i + rho*s.
        let flat = |i: usize, s: usize| i + rho * s;
        let comp_vars = |prefix: &str, i: usize| -> Vec<Poly> {
            (0..m)
                .map(|s| Poly::var(&format!("{prefix}{}", flat(i, s)), ring.clone()))
                .collect()
        };
        let xcomp: Vec<Vec<Poly>> = (0..rho).map(|i| comp_vars("x", i)).collect();
        let ycomp: Vec<Vec<Poly>> = (0..rho).map(|i| comp_vars("y", i)).collect();

        // Addition and negation are componentwise Witt laws.
        let mut master_add = vec![Poly::zero(ring.clone()); rho * m];
        let mut master_neg = vec![Poly::zero(ring.clone()); rho * m];
        for i in 0..rho {
            let a = ws.add(&pops, &xcomp[i], &ycomp[i])?;
            let n = ws.neg(&pops, &xcomp[i])?;
            for s in 0..m {
                master_add[flat(i, s)] = a[s].clone();
                master_neg[flat(i, s)] = n[s].clone();
            }
        }

        // Multiplication: Witt convolution, then reduction of pi^l for
        // l >= rho via pi^rho = -(a_1 pi^(rho-1) + ... + a_rho), with the
        // constants taken into W_m(k) by the integer embedding.
        let fops = FieldOps(&k);
        let abar: Vec<Vec<FieldElem>> = spec
            .eisenstein
            .iter()
            .map(|a| ws.from_int(&fops, a))
            .collect::<Result<_>>()?;
        let abar_polys: Vec<Vec<Poly>> = abar
            .iter()
            .map(|c| {
                c.iter()
                    .map(|e| Poly::constant(ring.clone(), Coeff::FF(e.clone())))
                    .collect()
            })
            .collect();

        let mut conv: Vec<Vec<Poly>> = vec![ws.zero(&pops); 2 * rho - 1];
        for i in 0..rho {
            for j in 0..rho {
                let prod = ws.mul(&pops, &xcomp[i], &ycomp[j])?;
                conv[i + j] = ws.add(&pops, &conv[i + j], &prod)?;
            }
        }
        for l in (rho..2 * rho - 1).rev() {
            let z = std::mem::replace(&mut conv[l], ws.zero(&pops));
            for (jm1, aj) in abar_polys.iter().enumerate() {
                let j = jm1 + 1;
                let contrib = ws.mul(&pops, aj, &z)?;
                conv[l - j] = ws.sub(&pops, &conv[l - j], &contrib)?;
            }
        }
        let mut master_mul = vec![Poly::zero(ring.clone()); rho * m];
        for (i, comp) in conv.iter().take(rho).enumerate() {
            for s in 0..m {
                master_mul[flat(i, s)] = comp[s].clone();
            }
        }

        // Truncate to the retained layout {flat v : v <= level}.
        let take =
            |polys: &[Poly]| -> Vec<Poly> { (0..=level).map(|v| polys[v].clone()).collect() };
        Ok((take(&master_add), take(&master_mul), take(&master_neg)))
    }

    /// Asserts that retained output coordinates only mention retained input
    /// coordinates.
    fn verify_grading(&self) -> Result<()> {
        for (label, polys) in [("add", &self.add), ("mul", &self.mul), ("neg", &self.neg)] {
            for (v, poly) in polys.iter().enumerate() {
                for var in poly.vars() {
                    let idx: usize = var[1..].parse().map_err(|_| Error::Parse {
                        path: "structure poly".into(),
                        msg: format!("unexpected variable {var}"),
                    })?;
                    if idx > self.level {
                        return Err(Error::GradingViolation(
                            format!("{label}[{v}]"),
                            var.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Symbolic sanity check: multiplying by the unit is the identity.
    fn verify_unit_law(&self) -> Result<()> {
        let ring = CoeffRing::FF(self.base.k.clone());
        let mut map = BTreeMap::new();
        for (v, c) in self.one.iter().enumerate() {
            map.insert(
                format!("y{v}"),
                Poly::constant(ring.clone(), Coeff::FF(c.clone())),
            );
        }
        for (v, law) in self.mul.iter().enumerate() {
            let specialized = law.substitute(&map)?;
            if specialized != Poly::var(&format!("x{v}"), ring.clone()) {
                return Err(Error::GradingViolation(
                    format!("mul[{v}] is not unital"),
                    "one".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &BaseRingSpec {
        &self.base
    }

    pub fn k(&self) -> &Arc<FiniteField> {
        &self.base.k
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn ram(&self) -> &RamificationData {
        &self.ram
    }

    pub fn add_polys(&self) -> &[Poly] {
        &self.add
    }

    pub fn mul_polys(&self) -> &[Poly] {
        &self.mul
    }

    pub fn neg_polys(&self) -> &[Poly] {
        &self.neg
    }

    pub fn zero_elem(&self) -> GaElement<FieldElem> {
        GaElement::new(vec![self.base.k.zero(); self.level + 1])
    }

    pub fn one_elem(&self) -> GaElement<FieldElem> {
        GaElement::new(self.one.clone())
    }

    pub fn pi_elem(&self) -> GaElement<FieldElem> {
        GaElement::new(self.pi.clone())
    }

    pub fn is_zero_elem(&self, a: &GaElement<FieldElem>) -> bool {
        a.coords.iter().all(|c| self.base.k.is_zero(c))
    }

    /// Evaluates one structure law in an arbitrary carrier.
    pub fn op<R: RingOps>(
        &self,
        ops: &R,
        op: GaOp,
        a: &GaElement<R::Elem>,
        b: Option<&GaElement<R::Elem>>,
    ) -> Result<GaElement<R::Elem>> {
        let n1 = self.level + 1;
        if a.coords.len() != n1 || b.is_some_and(|b| b.coords.len() != n1) {
            return Err(Error::CarrierMismatch);
        }
        let mut assign: BTreeMap<String, R::Elem> = BTreeMap::new();
        for (v, c) in a.coords.iter().enumerate() {
            assign.insert(format!("x{v}"), c.clone());
        }
        if let Some(b) = b {
            for (v, c) in b.coords.iter().enumerate() {
                assign.insert(format!("y{v}"), c.clone());
            }
        }
        let polys = match op {
            GaOp::Add => &self.add,
            GaOp::Mul => &self.mul,
            GaOp::Neg => &self.neg,
        };
        let coords = polys
            .iter()
            .map(|q| q.eval(ops, &assign))
            .collect::<Result<Vec<_>>>()?;
        Ok(GaElement::new(coords))
    }

    pub fn ga_add<R: RingOps>(
        &self,
        ops: &R,
        a: &GaElement<R::Elem>,
        b: &GaElement<R::Elem>,
    ) -> Result<GaElement<R::Elem>> {
        self.op(ops, GaOp::Add, a, Some(b))
    }

    pub fn ga_mul<R: RingOps>(
        &self,
        ops: &R,
        a: &GaElement<R::Elem>,
        b: &GaElement<R::Elem>,
    ) -> Result<GaElement<R::Elem>> {
        self.op(ops, GaOp::Mul, a, Some(b))
    }

    pub fn ga_neg<R: RingOps>(
        &self,
        ops: &R,
        a: &GaElement<R::Elem>,
    ) -> Result<GaElement<R::Elem>> {
        self.op(ops, GaOp::Neg, a, None)
    }

    pub fn ga_sub<R: RingOps>(
        &self,
        ops: &R,
        a: &GaElement<R::Elem>,
        b: &GaElement<R::Elem>,
    ) -> Result<GaElement<R::Elem>> {
        let nb = self.ga_neg(ops, b)?;
        self.ga_add(ops, a, &nb)
    }

    /// The image of an integer in R_N(k), by double-and-add over k.
    pub fn int_image(&self, n: &BigInt) -> Result<GaElement<FieldElem>> {
        use num_traits::Signed;
        let ops = FieldOps(&self.base.k);
        let negate = n.is_negative();
        let mut mag = n.abs();
        let mut bits = Vec::new();
        while mag > BigInt::ZERO {
            bits.push(mag.is_odd());
            mag /= 2u8;
        }
        let mut acc = self.zero_elem();
        let one = self.one_elem();
        for &bit in bits.iter().rev() {
            acc = self.ga_add(&ops, &acc, &acc)?;
            if bit {
                acc = self.ga_add(&ops, &acc, &one)?;
            }
        }
        if negate {
            acc = self.ga_neg(&ops, &acc)?;
        }
        Ok(acc)
    }

    /// Horner evaluation of an integer-coefficient polynomial in pi of
    /// degree <= N, in R_N(k). Coefficients ascend: `coeffs[d]` multiplies
    /// the d-th power of pi.
    pub fn const_in_pi(&self, coeffs: &[BigInt]) -> Result<GaElement<FieldElem>> {
        if coeffs.len() > self.level + 1 {
            return Err(Error::DegreeTooHigh(coeffs.len() - 1, self.level));
        }
        let ops = FieldOps(&self.base.k);
        let pi = self.pi_elem();
        let mut acc = self.zero_elem();
        for c in coeffs.iter().rev() {
            acc = self.ga_mul(&ops, &acc, &pi)?;
            acc = self.ga_add(&ops, &acc, &self.int_image(c)?)?;
        }
        Ok(acc)
    }

    /// Coordinate restriction onto a lower level: a surjective ring map.
    pub fn truncate_to<E: Clone>(
        &self,
        target: &GreenbergAlgebra,
        a: &GaElement<E>,
    ) -> Result<GaElement<E>> {
        if target.base != self.base || target.level > self.level {
            return Err(Error::LevelMismatch(format!(
                "cannot truncate level {} to level {}",
                self.level, target.level
            )));
        }
        Ok(GaElement::new(a.coords[..=target.level].to_vec()))
    }

    /// Lifts an element of R_N(k) along k -> A, coordinatewise.
    pub fn lift_to_algebra(
        &self,
        alg: &FiniteAlgebra,
        a: &GaElement<FieldElem>,
    ) -> Result<GaElement<AlgElem>> {
        let ops = AlgebraOps(alg);
        let coords = a
            .coords
            .iter()
            .map(|c| ops.from_field(&self.base.k, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(GaElement::new(coords))
    }

    /// Number of A-points: |A|^(N+1), saturating so that guards reject
    /// anything beyond range instead of wrapping.
    pub fn point_count(&self, alg: &FiniteAlgebra) -> u128 {
        (alg.order() as u128)
            .checked_pow(self.level as u32 + 1)
            .unwrap_or(u128::MAX)
    }

    pub fn point_from_index(&self, alg: &FiniteAlgebra, mut idx: u128) -> GaElement<AlgElem> {
        let q = alg.order() as u128;
        let mut coords = Vec::with_capacity(self.level + 1);
        for _ in 0..=self.level {
            coords.push(alg.elem_from_index((idx % q) as u64));
            idx /= q;
        }
        GaElement::new(coords)
    }

    pub fn point_index(&self, alg: &FiniteAlgebra, a: &GaElement<AlgElem>) -> u128 {
        let q = alg.order() as u128;
        let mut idx = 0u128;
        for c in a.coords.iter().rev() {
            idx = idx * q + alg.elem_index(c) as u128;
        }
        idx
    }

    /// All points of R_N(A) in deterministic order, guarded.
    pub fn points(
        &self,
        alg: &FiniteAlgebra,
        guard: u128,
    ) -> Result<impl Iterator<Item = GaElement<AlgElem>> + '_> {
        let total = self.point_count(alg);
        if total > guard {
            return Err(Error::SizeGuard(format!(
                "|R_{}({})| = {total} exceeds {guard}",
                self.level,
                alg.label()
            )));
        }
        let alg = alg.clone();
        Ok((0..total).map(move |i| self.point_from_index(&alg, i)))
    }

    /// Brute-force ideal power: M_N(A)^j computed as additive closures of
    /// products of pi-multiples, never from a coordinate-shape assumption.
    /// j = 0 yields the whole ring.
    ///
    /// Over a non-perfect carrier in mixed characteristic this additive
    /// span of pi-multiples can be strictly smaller than the points of the
    /// ideal subscheme (multiplication by p runs through Frobenius); see
    /// [`GreenbergAlgebra::truncation_kernel`] for the subscheme side.
    pub fn ideal_power_members(
        &self,
        alg: &FiniteAlgebra,
        j: usize,
        guard: u128,
    ) -> Result<BTreeSet<GaElement<AlgElem>>> {
        let ev = GaEvaluator::new(self, alg)?;
        let all: Vec<GaElement<AlgElem>> = self.points(alg, guard)?.collect();
        if j == 0 {
            return Ok(all.into_iter().collect());
        }
        let pi = self.lift_to_algebra(alg, &self.pi_elem())?;
        let mut maximal: BTreeSet<GaElement<AlgElem>> = BTreeSet::new();
        for x in &all {
            maximal.insert(GaElement::new(ev.mul(&pi.coords, &x.coords)));
        }
        let maximal = additive_closure(&ev, maximal);
        self.power_span(alg, &maximal, j)
    }

    /// Additive span of j-fold products of the generator set.
    pub fn power_span(
        &self,
        alg: &FiniteAlgebra,
        generators: &BTreeSet<GaElement<AlgElem>>,
        j: usize,
    ) -> Result<BTreeSet<GaElement<AlgElem>>> {
        assert!(j >= 1);
        let ev = GaEvaluator::new(self, alg)?;
        let base = additive_closure(&ev, generators.clone());
        let mut power = base.clone();
        for _ in 1..j {
            let mut next: BTreeSet<GaElement<AlgElem>> = BTreeSet::new();
            for a in &power {
                for b in &base {
                    next.insert(GaElement::new(ev.mul(&a.coords, &b.coords)));
                }
            }
            power = additive_closure(&ev, next);
        }
        Ok(power)
    }

    /// The kernel of the truncation map onto the given level: the A-points
    /// of the ideal subscheme M_N^(M+1), computed from the map itself.
    pub fn truncation_kernel(
        &self,
        target: &GreenbergAlgebra,
        alg: &FiniteAlgebra,
        guard: u128,
    ) -> Result<BTreeSet<GaElement<AlgElem>>> {
        let mut kernel = BTreeSet::new();
        for x in self.points(alg, guard)? {
            let t = self.truncate_to(target, &x)?;
            if t.coords.iter().all(|c| alg.is_zero(c)) {
                kernel.insert(x);
            }
        }
        Ok(kernel)
    }

    pub fn cache_file_name(spec: &BaseRingSpec, level: usize) -> String {
        let case = match spec.case {
            CharCase::Equal => "eq",
            CharCase::Mixed => "mx",
        };
        let modulus: Vec<String> = spec.k.modulus().iter().map(|c| c.to_string()).collect();
        let eis: Vec<String> = spec
            .eisenstein
            .iter()
            .map(|a| a.to_string().replace('-', "m"))
            .collect();
        format!(
            "ga_{case}_p{}_k{}_f{}_N{level}.txt",
            spec.k.p(),
            modulus.join("-"),
            eis.join("-")
        )
    }

    pub fn to_cache_text(&self) -> String {
        let k = &self.base.k;
        let mut out = format!("greenberg level={}\n", self.level);
        for (label, polys) in [("add", &self.add), ("mul", &self.mul), ("neg", &self.neg)] {
            for (v, poly) in polys.iter().enumerate() {
                out.push_str(&format!("[{label} {v}]\n{}\n", poly.render()));
            }
        }
        let consts = |c: &[FieldElem]| -> String {
            c.iter().map(|e| k.render(e)).collect::<Vec<_>>().join(";")
        };
        out.push_str(&format!("[one]\n{}\n", consts(&self.one)));
        out.push_str(&format!("[pi]\n{}\n", consts(&self.pi)));
        out
    }

    fn from_cache_text(spec: &BaseRingSpec, level: usize, text: &str) -> Result<GreenbergAlgebra> {
        let perr = |msg: String| Error::Parse {
            path: "greenberg cache".into(),
            msg,
        };
        let k = spec.k.clone();
        let ring = CoeffRing::FF(k.clone());
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| perr("empty".into()))?;
        if header != format!("greenberg level={level}") {
            return Err(perr("level mismatch".into()));
        }
        let mut sections: BTreeMap<String, String> = BTreeMap::new();
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
                sections.insert(key, line.to_string());
            }
        }
        let grab = |label: &str| -> Result<Vec<Poly>> {
            (0..=level)
                .map(|v| {
                    let text = sections
                        .get(&format!("{label} {v}"))
                        .ok_or_else(|| perr(format!("missing {label} {v}")))?;
                    Poly::parse(text, ring.clone())
                })
                .collect()
        };
        let parse_consts = |label: &str| -> Result<Vec<FieldElem>> {
            let text = sections
                .get(label)
                .ok_or_else(|| perr(format!("missing {label}")))?;
            text.split(';')
                .map(|tok| {
                    let tok = tok.trim();
                    if let Some(inner) = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                        inner
                            .split(',')
                            .map(|s| s.trim().parse::<u64>().map_err(|e| perr(e.to_string())))
                            .collect()
                    } else {
                        Ok(vec![tok.parse::<u64>().map_err(|e| perr(e.to_string()))?])
                    }
                })
                .collect()
        };
        let ga = GreenbergAlgebra {
            base: spec.clone(),
            level,
            ram: RamificationData::compute(spec, level),
            add: grab("add")?,
            mul: grab("mul")?,
            neg: grab("neg")?,
            one: parse_consts("one")?,
            pi: parse_consts("pi")?,
        };
        ga.verify_grading()?;
        Ok(ga)
    }
}

fn additive_closure(
    ev: &GaEvaluator<'_>,
    start: BTreeSet<GaElement<AlgElem>>,
) -> BTreeSet<GaElement<AlgElem>> {
    let mut set = start;
    loop {
        let mut grew = false;
        let snapshot: Vec<GaElement<AlgElem>> = set.iter().cloned().collect();
        for a in &snapshot {
            for b in &snapshot {
                let s = GaElement::new(ev.add(&a.coords, &b.coords));
                if set.insert(s) {
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

/// Structure polynomials compiled against a fixed finite algebra, for the
/// enumeration-heavy paths. Variable slots 0..=N are the x-coordinates and
/// N+1..=2N+1 the y-coordinates.
pub struct GaEvaluator<'a> {
    pub ga: &'a GreenbergAlgebra,
    pub alg: &'a FiniteAlgebra,
    add: Vec<CompiledPoly>,
    mul: Vec<CompiledPoly>,
    neg: Vec<CompiledPoly>,
}

pub(crate) struct CompiledPoly {
    terms: Vec<(AlgElem, Vec<(usize, u32)>)>,
}

pub(crate) fn compile_poly(
    poly: &Poly,
    alg: &FiniteAlgebra,
    slot_of: impl Fn(&str) -> usize,
) -> Result<CompiledPoly> {
    let ops = AlgebraOps(alg);
    let mut terms = Vec::with_capacity(poly.num_terms());
    for (mono, coeff) in poly.terms() {
        let lifted = match (coeff, poly.ring()) {
            (Coeff::Int(n), _) => ops.from_int(n),
            (Coeff::FF(e), CoeffRing::FF(f)) => ops.from_field(f, e)?,
            _ => unreachable!(),
        };
        let mut factors = Vec::new();
        for (i, &e) in mono.0.iter().enumerate() {
            if e > 0 {
                factors.push((slot_of(&poly.vars()[i]), e));
            }
        }
        terms.push((lifted, factors));
    }
    Ok(CompiledPoly { terms })
}

impl CompiledPoly {
    pub(crate) fn eval(&self, alg: &FiniteAlgebra, values: &[AlgElem]) -> AlgElem {
        let mut acc = alg.zero();
        for (coeff, factors) in &self.terms {
            let mut term = coeff.clone();
            for &(slot, e) in factors {
                term = alg.mul(&term, &alg.pow(&values[slot], e as u64));
            }
            acc = alg.add(&acc, &term);
        }
        acc
    }
}

impl<'a> GaEvaluator<'a> {
    pub fn new(ga: &'a GreenbergAlgebra, alg: &'a FiniteAlgebra) -> Result<GaEvaluator<'a>> {
        let n1 = ga.level + 1;
        let slot_of = |v: &str| -> usize {
            let idx: usize = v[1..].parse().expect("structure variable");
            match v.as_bytes()[0] {
                b'x' => idx,
                b'y' => n1 + idx,
                _ => panic!("structure variable"),
            }
        };
        let compile_all = |polys: &[Poly]| -> Result<Vec<CompiledPoly>> {
            polys
                .iter()
                .map(|q| compile_poly(q, alg, slot_of))
                .collect()
        };
        Ok(GaEvaluator {
            ga,
            alg,
            add: compile_all(&ga.add)?,
            mul: compile_all(&ga.mul)?,
            neg: compile_all(&ga.neg)?,
        })
    }

    fn apply(&self, polys: &[CompiledPoly], a: &[AlgElem], b: Option<&[AlgElem]>) -> Vec<AlgElem> {
        let n1 = self.ga.level + 1;
        let mut values = Vec::with_capacity(2 * n1);
        values.extend_from_slice(a);
        match b {
            Some(b) => values.extend_from_slice(b),
            None => values.extend(std::iter::repeat_n(self.alg.zero(), n1)),
        }
        polys.iter().map(|q| q.eval(self.alg, &values)).collect()
    }

    pub fn add(&self, a: &[AlgElem], b: &[AlgElem]) -> Vec<AlgElem> {
        self.apply(&self.add, a, Some(b))
    }

    pub fn mul(&self, a: &[AlgElem], b: &[AlgElem]) -> Vec<AlgElem> {
        self.apply(&self.mul, a, Some(b))
    }

    pub fn neg(&self, a: &[AlgElem]) -> Vec<AlgElem> {
        self.apply(&self.neg, a, None)
    }

    pub fn sub(&self, a: &[AlgElem], b: &[AlgElem]) -> Vec<AlgElem> {
        self.add(a, &self.neg(b))
    }

    pub fn zero(&self) -> Vec<AlgElem> {
        vec![self.alg.zero(); self.ga.level + 1]
    }

    pub fn is_zero(&self, a: &[AlgElem]) -> bool {
        a.iter().all(|c| self.alg.is_zero(c))
    }
}
