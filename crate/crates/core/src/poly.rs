//! Exact sparse multivariate polynomials over Z and over finite fields.
//!
//! Polynomials are kept in canonical form at all times: variables are the
//! sorted list of names that actually occur, terms are stored under a
//! graded-lexicographic order, and no zero coefficient is ever retained.
//! Equal polynomials therefore have identical serialized forms, which the
//! golden-file tests rely on.
//!
//! The canonical text form is terms like `3*x0^2*y1` joined by ` + `,
//! highest grade first.

use crate::error::{Error, Result};
use crate::ff::{FieldElem, FiniteField};
use crate::ring::RingOps;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponents above this are rejected; the Witt laws stay far below it.
pub const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffRing {
    Int,
    FF(Arc<FiniteField>),
}

impl CoeffRing {
    pub fn same(&self, other: &CoeffRing) -> bool {
        match (self, other) {
            (CoeffRing::Int, CoeffRing::Int) => true,
            (CoeffRing::FF(a), CoeffRing::FF(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    Int(BigInt),
    FF(FieldElem),
}

/// Exponent tuple; arity always matches the owning polynomial's variable
/// list. Ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

type TermList = Vec<(Monomial, Coeff)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: CoeffRing,
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero(ring: CoeffRing) -> Poly {
        Poly {
            ring,
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: CoeffRing, c: Coeff) -> Poly {
        let mut p = Poly::zero(ring);
        if !p.coeff_is_zero(&c) {
            p.terms.insert(Monomial(Vec::new()), c);
        }
        p
    }

    pub fn int_constant(n: i64) -> Poly {
        Poly::constant(CoeffRing::Int, Coeff::Int(BigInt::from(n)))
    }

    pub fn var(name: &str, ring: CoeffRing) -> Poly {
        let one = match &ring {
            CoeffRing::Int => Coeff::Int(BigInt::one()),
            CoeffRing::FF(f) => Coeff::FF(f.one()),
        };
        Poly {
            ring,
            vars: vec![name.to_string()],
            terms: BTreeMap::from([(Monomial(vec![1]), one)]),
        }
    }

    /// Builds from explicit (variable list, term list) data, normalizing.
    pub fn from_terms(
        ring: CoeffRing,
        vars: Vec<String>,
        terms: Vec<(Vec<u32>, Coeff)>,
    ) -> Result<Poly> {
        let mut p = Poly {
            ring,
            vars,
            terms: BTreeMap::new(),
        };
        let arity = p.vars.len();
        for (exps, c) in terms {
            assert_eq!(exps.len(), arity, "exponent tuple arity");
            p.add_term_in_place(Monomial(exps), c)?;
        }
        p.normalize();
        Ok(p)
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// The constant coefficient.
    pub fn constant_coeff(&self) -> Coeff {
        self.terms
            .get(&Monomial(vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_else(|| self.zero_coeff())
    }

    fn zero_coeff(&self) -> Coeff {
        match &self.ring {
            CoeffRing::Int => Coeff::Int(BigInt::zero()),
            CoeffRing::FF(f) => Coeff::FF(f.zero()),
        }
    }

    fn coeff_is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(n) => n.is_zero(),
            Coeff::FF(e) => e.iter().all(|&x| x == 0),
        }
    }

    fn coeff_add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, &self.ring) {
            (Coeff::Int(x), Coeff::Int(y), _) => Coeff::Int(x + y),
            (Coeff::FF(x), Coeff::FF(y), CoeffRing::FF(f)) => Coeff::FF(f.add(x, y)),
            _ => unreachable!("mixed coefficients inside one polynomial"),
        }
    }

    fn coeff_mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, &self.ring) {
            (Coeff::Int(x), Coeff::Int(y), _) => Coeff::Int(x * y),
            (Coeff::FF(x), Coeff::FF(y), CoeffRing::FF(f)) => Coeff::FF(f.mul(x, y)),
            _ => unreachable!("mixed coefficients inside one polynomial"),
        }
    }

    fn coeff_neg(&self, a: &Coeff) -> Coeff {
        match (a, &self.ring) {
            (Coeff::Int(x), _) => Coeff::Int(-x),
            (Coeff::FF(x), CoeffRing::FF(f)) => Coeff::FF(f.neg(x)),
            _ => unreachable!(),
        }
    }

    fn add_term_in_place(&mut self, m: Monomial, c: Coeff) -> Result<()> {
        if m.total_degree() > MAX_EXPONENT {
            return Err(Error::ExponentOverflow(m.total_degree()));
        }
        if self.coeff_is_zero(&c) {
            return Ok(());
        }
        let merged = match self.terms.remove(&m) {
            Some(old) => self.coeff_add(&old, &c),
            None => c,
        };
        if !self.coeff_is_zero(&merged) {
            self.terms.insert(m, merged);
        }
        Ok(())
    }

    /// Prunes variables with no occurrence, keeping canonical form.
    fn normalize(&mut self) {
        let arity = self.vars.len();
        let mut used = vec![false; arity];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..arity).filter(|&i| used[i]).collect();
        self.vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let old = std::mem::take(&mut self.terms);
        for (m, c) in old {
            let slim: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            self.terms.insert(Monomial(slim), c);
        }
    }

    /// Remaps both operands onto the merged, sorted variable list.
    fn aligned(&self, other: &Poly) -> (Vec<String>, TermList, TermList) {
        let mut vars: Vec<String> = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        let remap = |p: &Poly| -> TermList {
            let idx: Vec<usize> = p
                .vars
                .iter()
                .map(|v| vars.iter().position(|w| w == v).unwrap())
                .collect();
            p.terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0u32; vars.len()];
                    for (i, &x) in m.0.iter().enumerate() {
                        e[idx[i]] = x;
                    }
                    (Monomial(e), c.clone())
                })
                .collect()
        };
        (vars.clone(), remap(self), remap(other))
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let (vars, a, b) = self.aligned(other);
        let mut out = Poly {
            ring: self.ring.clone(),
            vars,
            terms: BTreeMap::new(),
        };
        for (m, c) in a.into_iter().chain(b) {
            out.add_term_in_place(m, c)?;
        }
        out.normalize();
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        let terms = std::mem::take(&mut out.terms);
        out.terms = terms
            .into_iter()
            .map(|(m, c)| {
                let n = out.coeff_neg(&c);
                (m, n)
            })
            .collect();
        out
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let (vars, a, b) = self.aligned(other);
        let mut out = Poly {
            ring: self.ring.clone(),
            vars,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let mut e = ma.0.clone();
                for (i, &x) in mb.0.iter().enumerate() {
                    e[i] += x;
                }
                let c = out.coeff_mul(ca, cb);
                out.add_term_in_place(Monomial(e), c)?;
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Result<Poly> {
        if e > MAX_EXPONENT {
            return Err(Error::ExponentOverflow(e));
        }
        let mut acc = Poly::constant(
            self.ring.clone(),
            match &self.ring {
                CoeffRing::Int => Coeff::Int(BigInt::one()),
                CoeffRing::FF(f) => Coeff::FF(f.one()),
            },
        );
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact division of every integer coefficient by `c`. Failure signals
    /// an internal construction bug, never a user error.
    pub fn div_exact_int(&self, c: &BigInt) -> Result<Poly> {
        assert!(!c.is_zero(), "division by zero constant");
        if !matches!(self.ring, CoeffRing::Int) {
            return Err(Error::RingMismatch);
        }
        let mut out = self.clone();
        let terms = std::mem::take(&mut out.terms);
        let mut new_terms = BTreeMap::new();
        for (m, coeff) in terms {
            let Coeff::Int(n) = coeff else { unreachable!() };
            let (q, r) = n.div_rem(c);
            if !r.is_zero() {
                return Err(Error::NotDivisible(n.to_string(), c.to_string()));
            }
            new_terms.insert(m, Coeff::Int(q));
        }
        out.terms = new_terms;
        Ok(out)
    }

    /// Reduces integer coefficients into the prime subfield of `target` and
    /// lifts them; terms vanishing mod p are dropped.
    pub fn map_coeffs(&self, target: &Arc<FiniteField>) -> Result<Poly> {
        match &self.ring {
            CoeffRing::FF(f) => {
                if f == target {
                    Ok(self.clone())
                } else {
                    Err(Error::RingMismatch)
                }
            }
            CoeffRing::Int => {
                let mut out = Poly {
                    ring: CoeffRing::FF(target.clone()),
                    vars: self.vars.clone(),
                    terms: BTreeMap::new(),
                };
                for (m, c) in &self.terms {
                    let Coeff::Int(n) = c else { unreachable!() };
                    let e = target.from_bigint(n);
                    out.add_term_in_place(m.clone(), Coeff::FF(e))?;
                }
                out.normalize();
                Ok(out)
            }
        }
    }

    /// Evaluates in an arbitrary carrier through the ring-operation
    /// interface. The assignment must cover every variable.
    pub fn eval<R: RingOps>(&self, ops: &R, assign: &BTreeMap<String, R::Elem>) -> Result<R::Elem> {
        for v in &self.vars {
            if !assign.contains_key(v) {
                return Err(Error::MissingVariable(v.clone()));
            }
        }
        let values: Vec<&R::Elem> = self.vars.iter().map(|v| &assign[v]).collect();
        let mut acc = ops.zero();
        for (m, c) in &self.terms {
            let mut term = self.lift_coeff(ops, c)?;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = ops.mul(&term, &ops.pow(values[i], e as u64));
                }
            }
            acc = ops.add(&acc, &term);
        }
        Ok(acc)
    }

    fn lift_coeff<R: RingOps>(&self, ops: &R, c: &Coeff) -> Result<R::Elem> {
        match (c, &self.ring) {
            (Coeff::Int(n), _) => Ok(ops.from_int(n)),
            (Coeff::FF(e), CoeffRing::FF(f)) => ops.from_field(f, e),
            _ => unreachable!(),
        }
    }

    /// Full symbolic composition; variables absent from the map stay fixed.
    pub fn substitute(&self, map: &BTreeMap<String, Poly>) -> Result<Poly> {
        for p in map.values() {
            if !p.ring.same(&self.ring) {
                return Err(Error::RingMismatch);
            }
        }
        let ops = PolyOps {
            ring: self.ring.clone(),
        };
        let mut assign: BTreeMap<String, Poly> = BTreeMap::new();
        for v in &self.vars {
            let img = map
                .get(v)
                .cloned()
                .unwrap_or_else(|| Poly::var(v, self.ring.clone()));
            assign.insert(v.clone(), img);
        }
        self.eval(&ops, &assign)
    }

    /// Formal partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Poly {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return Poly::zero(self.ring.clone());
        };
        let mut out = Poly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let factor = match &self.ring {
                CoeffRing::Int => Coeff::Int(BigInt::from(e)),
                CoeffRing::FF(f) => Coeff::FF(f.from_i64(e as i64)),
            };
            let scaled = out.coeff_mul(c, &factor);
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term_in_place(Monomial(exps), scaled).unwrap();
        }
        out.normalize();
        out
    }

    fn render_coeff(&self, c: &Coeff) -> String {
        match (c, &self.ring) {
            (Coeff::Int(n), _) => n.to_string(),
            (Coeff::FF(e), CoeffRing::FF(f)) => f.render(e),
            _ => unreachable!(),
        }
    }

    fn coeff_is_one(&self, c: &Coeff) -> bool {
        match (c, &self.ring) {
            (Coeff::Int(n), _) => n.is_one(),
            (Coeff::FF(e), CoeffRing::FF(f)) => *e == f.one(),
            _ => unreachable!(),
        }
    }

    /// Canonical text form.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if m.total_degree() == 0 || !self.coeff_is_one(c) {
                factors.push(self.render_coeff(c));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    /// Parses the canonical text form back into a polynomial.
    pub fn parse(text: &str, ring: CoeffRing) -> Result<Poly> {
        let perr = |msg: String| Error::Parse {
            path: "poly".into(),
            msg,
        };
        let text = text.trim();
        let mut out = Poly::zero(ring.clone());
        if text == "0" {
            return Ok(out);
        }
        for term in text.split(" + ") {
            let mut coeff: Option<Coeff> = None;
            let mut vars: Vec<(String, u32)> = Vec::new();
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(perr(format!("empty factor in {term:?}")));
                }
                let first = factor.chars().next().unwrap();
                if first.is_ascii_digit() || first == '-' || first == '[' {
                    let c = match (&ring, first) {
                        (_, '[') => {
                            let inner = factor
                                .strip_prefix('[')
                                .and_then(|s| s.strip_suffix(']'))
                                .ok_or_else(|| perr(format!("bad coordinates {factor:?}")))?;
                            let coords: Vec<u64> = inner
                                .split(',')
                                .map(|s| s.trim().parse::<u64>())
                                .collect::<std::result::Result<_, _>>()
                                .map_err(|e| perr(e.to_string()))?;
                            Coeff::FF(coords)
                        }
                        (CoeffRing::Int, _) => {
                            Coeff::Int(factor.parse::<BigInt>().map_err(|e| perr(e.to_string()))?)
                        }
                        (CoeffRing::FF(f), _) => {
                            let n = factor.parse::<i64>().map_err(|e| perr(e.to_string()))?;
                            Coeff::FF(f.from_i64(n))
                        }
                    };
                    if coeff.is_some() {
                        return Err(perr(format!("two coefficients in {term:?}")));
                    }
                    coeff = Some(c);
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (
                            n.to_string(),
                            e.parse::<u32>().map_err(|e| perr(e.to_string()))?,
                        ),
                        None => (factor.to_string(), 1),
                    };
                    vars.push((name, exp));
                }
            }
            let coeff = coeff.unwrap_or(match &ring {
                CoeffRing::Int => Coeff::Int(BigInt::one()),
                CoeffRing::FF(f) => Coeff::FF(f.one()),
            });
            let mut term_poly = Poly::constant(ring.clone(), coeff);
            for (name, exp) in vars {
                term_poly = term_poly.mul(&Poly::var(&name, ring.clone()).pow(exp as u64)?)?;
            }
            out = out.add(&term_poly)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A polynomial ring as an evaluation carrier (symbolic evaluation).
pub struct PolyOps {
    pub ring: CoeffRing,
}

impl RingOps for PolyOps {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero(self.ring.clone())
    }
    fn one(&self) -> Poly {
        Poly::constant(
            self.ring.clone(),
            match &self.ring {
                CoeffRing::Int => Coeff::Int(BigInt::one()),
                CoeffRing::FF(f) => Coeff::FF(f.one()),
            },
        )
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b).expect("carrier ring is fixed")
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b).expect("carrier ring is fixed")
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: &BigInt) -> Poly {
        match &self.ring {
            CoeffRing::Int => Poly::constant(CoeffRing::Int, Coeff::Int(n.clone())),
            CoeffRing::FF(f) => Poly::constant(self.ring.clone(), Coeff::FF(f.from_bigint(n))),
        }
    }
    fn from_field(&self, field: &FiniteField, c: &FieldElem) -> Result<Poly> {
        match &self.ring {
            CoeffRing::Int => Err(Error::CoefficientLiftUndefined(
                "field coefficient in an integer polynomial ring".into(),
            )),
            CoeffRing::FF(f) => {
                let lifted = crate::ring::lift_field_to_field(field, f, c)?;
                Ok(Poly::constant(self.ring.clone(), Coeff::FF(lifted)))
            }
        }
    }
}

/// Convenience: the sign of an integer polynomial's leading term, used by
/// tests that compare generators up to sign.
pub fn leading_is_negative(p: &Poly) -> bool {
    match p.terms.iter().next_back() {
        Some((_, Coeff::Int(n))) => n.is_negative(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(2).unwrap())
    }

    fn x() -> Poly {
        Poly::var("x", CoeffRing::Int)
    }

    fn y() -> Poly {
        Poly::var("y", CoeffRing::Int)
    }

    #[test]
    fn arithmetic_basics() {
        let sum = x().add(&y()).unwrap();
        assert_eq!(sum.render(), "x + y");
        let prod = sum.mul(&x().sub(&y()).unwrap()).unwrap();
        assert_eq!(prod.render(), "x^2 + -1*y^2");
    }

    #[test]
    fn char_two_binomial() {
        let ring = CoeffRing::FF(f2());
        let s = Poly::var("x0", ring.clone())
            .add(&Poly::var("y0", ring))
            .unwrap();
        assert_eq!(s.pow(2).unwrap().render(), "x0^2 + y0^2");
    }

    #[test]
    fn exact_division() {
        let p = x().mul(&Poly::int_constant(2)).unwrap();
        let p = p.add(&Poly::int_constant(4)).unwrap();
        assert_eq!(p.div_exact_int(&BigInt::from(2)).unwrap().render(), "x + 2");
        // (x^2 + y^2 - (x+y)^2)/2 = -xy
        let lhs = x()
            .pow(2)
            .unwrap()
            .add(&y().pow(2).unwrap())
            .unwrap()
            .sub(&x().add(&y()).unwrap().pow(2).unwrap())
            .unwrap();
        assert_eq!(
            lhs.div_exact_int(&BigInt::from(2)).unwrap().render(),
            "-1*x*y"
        );
        let bad = x().add(&Poly::int_constant(1)).unwrap();
        assert_eq!(
            bad.div_exact_int(&BigInt::from(2)).unwrap_err().code(),
            "NotDivisible"
        );
    }

    #[test]
    fn substitution() {
        let p = x().pow(2).unwrap();
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), y().add(&Poly::int_constant(1)).unwrap());
        assert_eq!(p.substitute(&map).unwrap().render(), "y^2 + 2*y + 1");
        let p2 = p.map_coeffs(&f2()).unwrap();
        let mut map2 = BTreeMap::new();
        map2.insert(
            "x".to_string(),
            Poly::var("y", CoeffRing::FF(f2()))
                .add(&Poly::constant(CoeffRing::FF(f2()), Coeff::FF(vec![1])))
                .unwrap(),
        );
        assert_eq!(p2.substitute(&map2).unwrap().render(), "y^2 + 1");
    }

    #[test]
    fn eval_in_field() {
        let p = x().pow(2).unwrap().add(&Poly::int_constant(1)).unwrap();
        let f = f2();
        let ops = crate::ring::FieldOps(&f);
        let mut assign = BTreeMap::new();
        assign.insert("x".to_string(), f.one());
        assert_eq!(p.eval(&ops, &assign).unwrap(), f.zero());
        assign.clear();
        assert_eq!(p.eval(&ops, &assign).unwrap_err().code(), "MissingVariable");
    }

    #[test]
    fn map_coeffs_drops_vanishing_terms() {
        let f3 = Arc::new(FiniteField::prime(3).unwrap());
        let p = Poly::int_constant(6).mul(&x()).unwrap().mul(&y()).unwrap();
        assert!(p.map_coeffs(&f3).unwrap().is_zero());
        let q = Poly::int_constant(2)
            .mul(&x())
            .unwrap()
            .add(&Poly::int_constant(3))
            .unwrap();
        assert_eq!(q.map_coeffs(&f2()).unwrap().render(), "1");
    }

    #[test]
    fn canonical_order_matches_golden_form() {
        // S_1 mod 2 must print as "x0*y0 + x1 + y1".
        let ring = CoeffRing::FF(f2());
        let p = Poly::var("x1", ring.clone())
            .add(&Poly::var("y1", ring.clone()))
            .unwrap()
            .add(
                &Poly::var("x0", ring.clone())
                    .mul(&Poly::var("y0", ring))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(p.render(), "x0*y0 + x1 + y1");
    }

    #[test]
    fn parse_round_trip() {
        let p = x()
            .pow(3)
            .unwrap()
            .mul(&Poly::int_constant(-2))
            .unwrap()
            .add(&y())
            .unwrap()
            .add(&Poly::int_constant(7))
            .unwrap();
        let text = p.render();
        assert_eq!(Poly::parse(&text, CoeffRing::Int).unwrap(), p);
    }

    #[test]
    fn exponent_overflow_guard() {
        let p = x().pow(40_000).unwrap();
        assert_eq!(p.mul(&p).unwrap_err().code(), "ExponentOverflow");
        assert_eq!(x().pow(1 << 17).unwrap_err().code(), "ExponentOverflow");
    }

    #[test]
    fn derivative_rule() {
        let p = x().pow(3).unwrap().mul(&y()).unwrap();
        assert_eq!(p.derivative("x").render(), "3*x^2*y");
        assert_eq!(p.derivative("y").render(), "x^3");
        assert!(p.derivative("z").is_zero());
    }
}
