//! Affine presentations over a coordinate-presented ring (a Greenberg
//! algebra; level 0 is the residue field itself), morphism presentations,
//! products, level reduction, group-scheme metadata and brute-force point
//! enumeration.
//!
//! Ideal-level equality is never decided symbolically: every scheme-level
//! claim in the test suites is checked on enumerated points.

use crate::algebra::{AlgElem, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::ff::FieldElem;
use crate::greenberg::{GaElement, GaEvaluator, GreenbergAlgebra};
use crate::poly::{Coeff, CoeffRing, Monomial, Poly};
use crate::ring::FieldOps;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Default cap on candidate tuples enumerated by the solver.
pub const DEFAULT_CANDIDATE_GUARD: u128 = 1 << 24;

type GaTermList = Vec<(Monomial, GaElement<FieldElem>)>;
type CompiledTerm = (Vec<AlgElem>, Vec<(usize, u32)>);

/// A polynomial whose coefficients are elements of R_N(k), i.e. Greenberg
/// coordinates over the residue field. Kept in canonical form: sorted,
/// pruned variable list; no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct GaPoly {
    ring: Arc<GreenbergAlgebra>,
    vars: Vec<String>,
    terms: BTreeMap<Monomial, GaElement<FieldElem>>,
}

impl GaPoly {
    pub fn zero(ring: Arc<GreenbergAlgebra>) -> GaPoly {
        GaPoly {
            ring,
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Arc<GreenbergAlgebra>, c: GaElement<FieldElem>) -> GaPoly {
        let mut p = GaPoly::zero(ring);
        p.insert_term(Monomial(Vec::new()), c);
        p
    }

    pub fn var(ring: Arc<GreenbergAlgebra>, name: &str) -> GaPoly {
        let one = ring.one_elem();
        GaPoly {
            ring,
            vars: vec![name.to_string()],
            terms: BTreeMap::from([(Monomial(vec![1]), one)]),
        }
    }

    pub fn from_terms(
        ring: Arc<GreenbergAlgebra>,
        vars: Vec<String>,
        terms: Vec<(Vec<u32>, GaElement<FieldElem>)>,
    ) -> GaPoly {
        let mut p = GaPoly {
            ring,
            vars,
            terms: BTreeMap::new(),
        };
        let arity = p.vars.len();
        for (e, c) in terms {
            assert_eq!(e.len(), arity);
            p.insert_term(Monomial(e), c);
        }
        p.normalize();
        p
    }

    fn insert_term(&mut self, m: Monomial, c: GaElement<FieldElem>) {
        if self.ring.is_zero_elem(&c) {
            return;
        }
        let ops = FieldOps(self.ring.k());
        let merged = match self.terms.remove(&m) {
            Some(old) => self.ring.ga_add(&ops, &old, &c).expect("same ring"),
            None => c,
        };
        if !self.ring.is_zero_elem(&merged) {
            self.terms.insert(m, merged);
        }
    }

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
        let mut keep: Vec<usize> = (0..arity).filter(|&i| used[i]).collect();
        let mut names: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        names.sort();
        keep = order.iter().map(|&i| keep[i]).collect();
        if names == self.vars {
            return;
        }
        self.vars = names;
        let old = std::mem::take(&mut self.terms);
        for (m, c) in old {
            let slim: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            self.terms.insert(Monomial(slim), c);
        }
    }

    pub fn ring(&self) -> &Arc<GreenbergAlgebra> {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaElement<FieldElem>)> {
        self.terms.iter()
    }

    fn check_ring(&self, other: &GaPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn aligned(&self, other: &GaPoly) -> (Vec<String>, GaTermList, GaTermList) {
        let mut vars: Vec<String> = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        let remap = |p: &GaPoly| -> GaTermList {
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

    pub fn add(&self, other: &GaPoly) -> Result<GaPoly> {
        self.check_ring(other)?;
        let (vars, a, b) = self.aligned(other);
        let mut out = GaPoly {
            ring: self.ring.clone(),
            vars,
            terms: BTreeMap::new(),
        };
        for (m, c) in a.into_iter().chain(b) {
            out.insert_term(m, c);
        }
        out.normalize();
        Ok(out)
    }

    pub fn neg(&self) -> GaPoly {
        let ops = FieldOps(self.ring.k());
        let mut out = self.clone();
        let terms = std::mem::take(&mut out.terms);
        out.terms = terms
            .into_iter()
            .map(|(m, c)| {
                let n = self.ring.ga_neg(&ops, &c).expect("same ring");
                (m, n)
            })
            .collect();
        out
    }

    pub fn sub(&self, other: &GaPoly) -> Result<GaPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GaPoly) -> Result<GaPoly> {
        self.check_ring(other)?;
        let ops = FieldOps(self.ring.k());
        let (vars, a, b) = self.aligned(other);
        let mut out = GaPoly {
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
                let c = self.ring.ga_mul(&ops, ca, cb)?;
                out.insert_term(Monomial(e), c);
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn scale(&self, c: &GaElement<FieldElem>) -> GaPoly {
        let ops = FieldOps(self.ring.k());
        let mut out = GaPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, coeff) in &self.terms {
            let scaled = self.ring.ga_mul(&ops, coeff, c).expect("same ring");
            out.insert_term(m.clone(), scaled);
        }
        out.normalize();
        out
    }

    pub fn pow(&self, e: u32) -> Result<GaPoly> {
        let mut acc = GaPoly::constant(self.ring.clone(), self.ring.one_elem());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Truncates every coefficient onto a lower level; terms whose
    /// coefficient dies (for instance pi at level 0) are dropped.
    pub fn reduce_level(&self, target: &Arc<GreenbergAlgebra>) -> Result<GaPoly> {
        let mut out = GaPoly {
            ring: target.clone(),
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let t = self.ring.truncate_to(target, c)?;
            out.insert_term(m.clone(), t);
        }
        out.normalize();
        Ok(out)
    }

    pub fn rename_vars(&self, rename: &BTreeMap<String, String>) -> GaPoly {
        let mut out = self.clone();
        out.vars = out
            .vars
            .iter()
            .map(|v| rename.get(v).cloned().unwrap_or_else(|| v.clone()))
            .collect();
        out.normalize();
        out
    }

    /// For level-0 rings: the generator as a plain field polynomial.
    pub fn to_field_poly(&self) -> Result<Poly> {
        if self.ring.level() != 0 {
            return Err(Error::LevelMismatch(
                "field polynomial conversion needs level 0".into(),
            ));
        }
        let ring = CoeffRing::FF(self.ring.k().clone());
        Poly::from_terms(
            ring,
            self.vars.clone(),
            self.terms
                .iter()
                .map(|(m, c)| (m.0.clone(), Coeff::FF(c.coords[0].clone())))
                .collect(),
        )
    }

    pub fn from_field_poly(ring: Arc<GreenbergAlgebra>, poly: &Poly) -> Result<GaPoly> {
        assert_eq!(ring.level(), 0);
        let mut terms = Vec::new();
        for (m, c) in poly.terms() {
            let coords = match c {
                Coeff::FF(e) => vec![e.clone()],
                Coeff::Int(n) => vec![ring.k().from_bigint(n)],
            };
            terms.push((m.0.clone(), GaElement::new(coords)));
        }
        Ok(GaPoly::from_terms(ring, poly.vars().to_vec(), terms))
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let k = self.ring.k();
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let coeff_strs: Vec<String> = c.coords.iter().map(|e| k.render(e)).collect();
            let is_one = *c == self.ring.one_elem();
            if m.total_degree() == 0 || !is_one {
                factors.push(format!("({})", coeff_strs.join(";")));
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
}

/// Variables plus ideal generators over a coordinate-presented ring.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinePresentation {
    pub ring: Arc<GreenbergAlgebra>,
    pub vars: Vec<String>,
    pub gens: Vec<GaPoly>,
}

impl AffinePresentation {
    pub fn new(
        ring: Arc<GreenbergAlgebra>,
        vars: Vec<String>,
        gens: Vec<GaPoly>,
    ) -> Result<AffinePresentation> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.clone()) {
                return Err(Error::Parse {
                    path: "scheme".into(),
                    msg: format!("duplicate variable {v}"),
                });
            }
        }
        for g in &gens {
            if *g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            for v in g.vars() {
                if !vars.contains(v) {
                    return Err(Error::MissingVariable(v.clone()));
                }
            }
        }
        Ok(AffinePresentation { ring, vars, gens })
    }

    /// Affine space: no generators.
    pub fn affine_space(ring: Arc<GreenbergAlgebra>, vars: &[&str]) -> AffinePresentation {
        AffinePresentation {
            ring,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            gens: Vec::new(),
        }
    }

    /// Product: disjoint-union variables, concatenated generators. Colliding
    /// names are prefixed on both sides.
    pub fn product(&self, other: &AffinePresentation) -> Result<AffinePresentation> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let collision = self.vars.iter().any(|v| other.vars.contains(v));
        let (lmap, rmap): (BTreeMap<String, String>, BTreeMap<String, String>) = if collision {
            (
                self.vars
                    .iter()
                    .map(|v| (v.clone(), format!("l_{v}")))
                    .collect(),
                other
                    .vars
                    .iter()
                    .map(|v| (v.clone(), format!("r_{v}")))
                    .collect(),
            )
        } else {
            (BTreeMap::new(), BTreeMap::new())
        };
        let map_name = |map: &BTreeMap<String, String>, v: &String| {
            map.get(v).cloned().unwrap_or_else(|| v.clone())
        };
        let mut vars: Vec<String> = self.vars.iter().map(|v| map_name(&lmap, v)).collect();
        vars.extend(other.vars.iter().map(|v| map_name(&rmap, v)));
        let mut gens: Vec<GaPoly> = self.gens.iter().map(|g| g.rename_vars(&lmap)).collect();
        gens.extend(other.gens.iter().map(|g| g.rename_vars(&rmap)));
        AffinePresentation::new(self.ring.clone(), vars, gens)
    }

    /// Base change to a lower level: coefficients truncated, shapes kept.
    pub fn reduce_level(&self, target: &Arc<GreenbergAlgebra>) -> Result<AffinePresentation> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.reduce_level(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(AffinePresentation {
            ring: target.clone(),
            vars: self.vars.clone(),
            gens,
        })
    }

    pub fn candidate_count(&self, alg: &FiniteAlgebra) -> Option<u128> {
        let per_var = self.ring.point_count(alg);
        let mut total: u128 = 1;
        for _ in &self.vars {
            total = total.checked_mul(per_var)?;
        }
        Some(total)
    }
}

/// A point over A: one element of R_N(A) per presentation variable.
pub type SchemePoint = Vec<GaElement<AlgElem>>;

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub count: u128,
    pub points: Vec<SchemePoint>,
}

struct CompiledGen {
    terms: Vec<CompiledTerm>,
}

/// Exhaustive solver: enumerates all R_N(A)-tuples, evaluates generators
/// through the compiled structure laws and keeps exact matches. Points come
/// out in the deterministic candidate order.
pub fn solve(
    pres: &AffinePresentation,
    alg: &FiniteAlgebra,
    candidate_guard: u128,
    keep_points: bool,
) -> Result<SolveOutcome> {
    let total = pres
        .candidate_count(alg)
        .ok_or_else(|| Error::SizeGuard("candidate count overflows".into()))?;
    if total > candidate_guard {
        return Err(Error::SizeGuard(format!(
            "{total} candidate tuples exceed the guard {candidate_guard}"
        )));
    }
    let ev = GaEvaluator::new(&pres.ring, alg)?;
    let nvars = pres.vars.len();
    let var_slot: BTreeMap<&str, usize> = pres
        .vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let compiled: Vec<CompiledGen> = pres
        .gens
        .iter()
        .map(|g| -> Result<CompiledGen> {
            let terms = g
                .terms()
                .map(|(m, c)| -> Result<CompiledTerm> {
                    let lifted = pres.ring.lift_to_algebra(alg, c)?.coords;
                    let factors =
                        m.0.iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(i, &e)| (var_slot[g.vars()[i].as_str()], e))
                            .collect();
                    Ok((lifted, factors))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CompiledGen { terms })
        })
        .collect::<Result<Vec<_>>>()?;

    let per_var = pres.ring.point_count(alg);
    let mut count: u128 = 0;
    let mut points = Vec::new();
    let mut values: Vec<Vec<AlgElem>> = vec![Vec::new(); nvars];
    for idx in 0..total {
        let mut rest = idx;
        for slot in values.iter_mut() {
            *slot = pres.ring.point_from_index(alg, rest % per_var).coords;
            rest /= per_var;
        }
        let mut ok = true;
        'gens: for gen in &compiled {
            let mut acc = ev.zero();
            for (coeff, factors) in &gen.terms {
                let mut term = coeff.clone();
                for &(slot, e) in factors {
                    let mut pw = values[slot].clone();
                    for _ in 1..e {
                        pw = ev.mul(&pw, &values[slot]);
                    }
                    term = ev.mul(&term, &pw);
                }
                acc = ev.add(&acc, &term);
            }
            if !ev.is_zero(&acc) {
                ok = false;
                break 'gens;
            }
        }
        if ok {
            count += 1;
            if keep_points {
                points.push(values.iter().cloned().map(GaElement::new).collect());
            }
        }
    }
    Ok(SolveOutcome { count, points })
}

/// A morphism presentation: images of target variables as polynomials over
/// the source variables. Ideal containment is never checked symbolically;
/// it is exercised on points by the tests.
#[derive(Debug, Clone)]
pub struct MorphismPresentation {
    pub source: AffinePresentation,
    pub target: AffinePresentation,
    pub images: BTreeMap<String, GaPoly>,
}

impl MorphismPresentation {
    pub fn new(
        source: AffinePresentation,
        target: AffinePresentation,
        images: BTreeMap<String, GaPoly>,
    ) -> Result<MorphismPresentation> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch);
        }
        for v in &target.vars {
            let img = images
                .get(v)
                .ok_or_else(|| Error::MissingVariable(v.clone()))?;
            for w in img.vars() {
                if !source.vars.contains(w) {
                    return Err(Error::MissingVariable(w.clone()));
                }
            }
        }
        Ok(MorphismPresentation {
            source,
            target,
            images,
        })
    }

    pub fn identity(pres: &AffinePresentation) -> MorphismPresentation {
        let images = pres
            .vars
            .iter()
            .map(|v| (v.clone(), GaPoly::var(pres.ring.clone(), v)))
            .collect();
        MorphismPresentation {
            source: pres.clone(),
            target: pres.clone(),
            images,
        }
    }

    /// Evaluates the morphism on an A-point of the source.
    pub fn apply(&self, alg: &FiniteAlgebra, point: &SchemePoint) -> Result<SchemePoint> {
        let ev = GaEvaluator::new(&self.source.ring, alg)?;
        let slot: BTreeMap<&str, usize> = self
            .source
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        self.target
            .vars
            .iter()
            .map(|v| -> Result<GaElement<AlgElem>> {
                let img = &self.images[v];
                let mut acc = ev.zero();
                for (m, c) in img.terms() {
                    let mut term = self.source.ring.lift_to_algebra(alg, c)?.coords;
                    for (i, &e) in m.0.iter().enumerate() {
                        let val = &point[slot[img.vars()[i].as_str()]].coords;
                        for _ in 0..e {
                            term = ev.mul(&term, val);
                        }
                    }
                    acc = ev.add(&acc, &term);
                }
                Ok(GaElement::new(acc))
            })
            .collect()
    }

    pub fn reduce_level(
        &self,
        target_ring: &Arc<GreenbergAlgebra>,
    ) -> Result<MorphismPresentation> {
        let images = self
            .images
            .iter()
            .map(|(v, g)| Ok((v.clone(), g.reduce_level(target_ring)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        MorphismPresentation::new(
            self.source.reduce_level(target_ring)?,
            self.target.reduce_level(target_ring)?,
            images,
        )
    }
}

/// Group-scheme metadata over the base ring: presentation, identity point
/// and (optionally) the composition law as a morphism from the product.
#[derive(Debug, Clone)]
pub struct GroupSchemeSpec {
    pub pres: AffinePresentation,
    pub identity: Vec<GaElement<FieldElem>>,
    pub law: Option<MorphismPresentation>,
    pub smooth: bool,
}

impl GroupSchemeSpec {
    pub fn new(
        pres: AffinePresentation,
        identity: Vec<GaElement<FieldElem>>,
        law: Option<MorphismPresentation>,
        smooth: bool,
    ) -> Result<GroupSchemeSpec> {
        assert_eq!(identity.len(), pres.vars.len());
        let g = GroupSchemeSpec {
            pres,
            identity,
            law,
            smooth,
        };
        g.check_identity()?;
        Ok(g)
    }

    fn check_identity(&self) -> Result<()> {
        let ring = &self.pres.ring;
        let ops = FieldOps(ring.k());
        let slot: BTreeMap<&str, usize> = self
            .pres
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        for g in &self.pres.gens {
            let mut acc = ring.zero_elem();
            for (m, c) in g.terms() {
                let mut term = c.clone();
                for (i, &e) in m.0.iter().enumerate() {
                    let val = &self.identity[slot[g.vars()[i].as_str()]];
                    for _ in 0..e {
                        term = ring.ga_mul(&ops, &term, val)?;
                    }
                }
                acc = ring.ga_add(&ops, &acc, &term)?;
            }
            if !ring.is_zero_elem(&acc) {
                return Err(Error::IdentityNotOnScheme);
            }
        }
        Ok(())
    }

    /// dim Lie of the special fiber: number of variables minus the rank of
    /// the Jacobian of the level-0 generators at the identity.
    pub fn lie_dim(&self) -> Result<usize> {
        let ring0 = GreenbergAlgebra::build(
            self.pres.ring.base(),
            0,
            &crate::cache::LawCache::disabled(),
        )?;
        let pres0 = self.pres.reduce_level(&ring0)?;
        let k = ring0.k().clone();
        let ops = FieldOps(&k);
        let assign: BTreeMap<String, FieldElem> = pres0
            .vars
            .iter()
            .zip(&self.identity)
            .map(|(v, c)| (v.clone(), c.coords[0].clone()))
            .collect();
        let mut rows: Vec<Vec<FieldElem>> = Vec::new();
        for g in &pres0.gens {
            let poly = g.to_field_poly()?;
            let row = pres0
                .vars
                .iter()
                .map(|v| poly.derivative(v).eval(&ops, &assign))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let rank = field_matrix_rank(&k, rows);
        Ok(pres0.vars.len() - rank)
    }
}

/// Gaussian elimination over a finite field.
pub fn field_matrix_rank(k: &crate::ff::FiniteField, mut rows: Vec<Vec<FieldElem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    #[allow(clippy::needless_range_loop)]
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !k.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = k.inv(&rows[rank][col]).unwrap();
        for c in col..ncols {
            rows[rank][c] = k.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r != rank && !k.is_zero(&rows[r][col]) {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let sub = k.mul(&factor, &rows[rank][c]);
                    rows[r][c] = k.sub(&rows[r][c], &sub);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_SIZE_GUARD;
    use crate::cache::LawCache;
    use crate::ff::FiniteField;
    use crate::greenberg::BaseRingSpec;

    fn f(p: u64) -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(p).unwrap())
    }

    fn witt_base(p: u64, level: usize) -> Arc<GreenbergAlgebra> {
        GreenbergAlgebra::build(
            &BaseRingSpec::unramified(f(p)),
            level,
            &LawCache::disabled(),
        )
        .unwrap()
    }

    fn gm(ring: &Arc<GreenbergAlgebra>) -> AffinePresentation {
        let x = GaPoly::var(ring.clone(), "x");
        let u = GaPoly::var(ring.clone(), "u");
        let one = GaPoly::constant(ring.clone(), ring.one_elem());
        let gen = x.mul(&u).unwrap().sub(&one).unwrap();
        AffinePresentation::new(ring.clone(), vec!["x".into(), "u".into()], vec![gen]).unwrap()
    }

    #[test]
    fn solve_x_squared_minus_one_mod_nine() {
        let ring = witt_base(3, 1);
        let x = GaPoly::var(ring.clone(), "x");
        let one = GaPoly::constant(ring.clone(), ring.one_elem());
        let gen = x.mul(&x).unwrap().sub(&one).unwrap();
        let pres = AffinePresentation::new(ring, vec!["x".into()], vec![gen]).unwrap();
        let alg = FiniteAlgebra::field(f(3));
        let out = solve(&pres, &alg, DEFAULT_CANDIDATE_GUARD, true).unwrap();
        assert_eq!(out.count, 2);
    }

    #[test]
    fn solve_units_mod_nine() {
        let ring = witt_base(3, 1);
        let pres = gm(&ring);
        let alg = FiniteAlgebra::field(f(3));
        let out = solve(&pres, &alg, DEFAULT_CANDIDATE_GUARD, false).unwrap();
        assert_eq!(out.count, 6);
    }

    #[test]
    fn affine_space_counts() {
        let ring = witt_base(2, 1);
        let pres = AffinePresentation::affine_space(ring, &["x"]);
        let alg = FiniteAlgebra::field(f(2));
        assert_eq!(solve(&pres, &alg, 1 << 20, false).unwrap().count, 4);
    }

    #[test]
    fn solve_over_residue_field() {
        // x^2 + x over F_2: both elements are roots.
        let ring = GreenbergAlgebra::field(f(2));
        let x = GaPoly::var(ring.clone(), "x");
        let gen = x.mul(&x).unwrap().add(&x).unwrap();
        let pres = AffinePresentation::new(ring, vec!["x".into()], vec![gen]).unwrap();
        let alg = FiniteAlgebra::field(f(2));
        assert_eq!(solve(&pres, &alg, 1 << 20, false).unwrap().count, 2);
    }

    #[test]
    fn graph_of_squaring_over_dual_numbers() {
        // x^2 - u over F_2 with A = F_2[e]/(e^2): u is forced to x^2, so
        // there is one solution per x; e is not a square but (e, 0) simply
        // never occurs as (x, u) with u = e.
        let ring = GreenbergAlgebra::field(f(2));
        let x = GaPoly::var(ring.clone(), "x");
        let u = GaPoly::var(ring.clone(), "u");
        let gen = x.mul(&x).unwrap().sub(&u).unwrap();
        let pres = AffinePresentation::new(ring, vec!["x".into(), "u".into()], vec![gen]).unwrap();
        let alg = FiniteAlgebra::dual_numbers(f(2), 2, DEFAULT_SIZE_GUARD).unwrap();
        let out = solve(&pres, &alg, 1 << 20, true).unwrap();
        assert_eq!(out.count, 4);
        let squares: std::collections::BTreeSet<_> =
            out.points.iter().map(|p| p[1].clone()).collect();
        assert_eq!(squares.len(), 2); // the image {0, 1}: e is not a square
    }

    #[test]
    fn product_and_reduce_level() {
        let ring1 = witt_base(2, 1);
        let a1 = AffinePresentation::affine_space(ring1.clone(), &["x"]);
        let prod = a1.product(&a1).unwrap();
        assert_eq!(prod.vars, vec!["l_x".to_string(), "r_x".to_string()]);
        let alg = FiniteAlgebra::field(f(2));
        assert_eq!(solve(&prod, &alg, 1 << 20, false).unwrap().count, 16);

        let gm1 = gm(&ring1);
        let gm2 = gm(&ring1);
        let p = gm1.product(&gm2).unwrap();
        assert_eq!(p.vars.len(), 4);
        assert_eq!(p.gens.len(), 2);

        let ring0 = witt_base(2, 0);
        let reduced = gm1.reduce_level(&ring0).unwrap();
        assert_eq!(reduced.ring.level(), 0);
        assert_eq!(solve(&reduced, &alg, 1 << 20, false).unwrap().count, 1);
    }

    #[test]
    fn reduce_level_drops_pi_terms() {
        // y^2 - pi*x at level 1 reduces to y^2 at level 0.
        let spec = BaseRingSpec::equal(f(3));
        let ring1 = GreenbergAlgebra::build(&spec, 1, &LawCache::disabled()).unwrap();
        let ring0 = GreenbergAlgebra::build(&spec, 0, &LawCache::disabled()).unwrap();
        let y = GaPoly::var(ring1.clone(), "y");
        let x = GaPoly::var(ring1.clone(), "x");
        let pix = x.scale(&ring1.pi_elem());
        let gen = y.mul(&y).unwrap().sub(&pix).unwrap();
        let pres = AffinePresentation::new(ring1, vec!["x".into(), "y".into()], vec![gen]).unwrap();
        let red = pres.reduce_level(&ring0).unwrap();
        assert_eq!(red.gens[0].to_field_poly().unwrap().render(), "y^2");
        assert_eq!(red.vars, vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn lie_dims() {
        let ring = witt_base(2, 1);
        let gmp = gm(&ring);
        let id = vec![ring.one_elem(), ring.one_elem()];
        let g = GroupSchemeSpec::new(gmp, id, None, true).unwrap();
        assert_eq!(g.lie_dim().unwrap(), 1);

        let ga_pres = AffinePresentation::affine_space(ring.clone(), &["x"]);
        let ga_grp = GroupSchemeSpec::new(ga_pres, vec![ring.zero_elem()], None, true).unwrap();
        assert_eq!(ga_grp.lie_dim().unwrap(), 1);

        // mu_p over F_p: x^p - 1, Jacobian row vanishes, d = 1.
        let ring0 = GreenbergAlgebra::field(f(2));
        let x = GaPoly::var(ring0.clone(), "x");
        let one = GaPoly::constant(ring0.clone(), ring0.one_elem());
        let gen = x.mul(&x).unwrap().sub(&one).unwrap();
        let mu = AffinePresentation::new(ring0.clone(), vec!["x".into()], vec![gen]).unwrap();
        let mu_grp = GroupSchemeSpec::new(mu, vec![ring0.one_elem()], None, false).unwrap();
        assert_eq!(mu_grp.lie_dim().unwrap(), 1);

        let bad = GroupSchemeSpec::new(
            gm(&ring),
            vec![ring.zero_elem(), ring.zero_elem()],
            None,
            true,
        );
        assert_eq!(bad.unwrap_err().code(), "IdentityNotOnScheme");
    }

    #[test]
    fn morphism_identity_and_apply() {
        let ring = witt_base(3, 1);
        let pres = gm(&ring);
        let id = MorphismPresentation::identity(&pres);
        let alg = FiniteAlgebra::field(f(3));
        let out = solve(&pres, &alg, 1 << 20, true).unwrap();
        for pt in &out.points {
            assert_eq!(&id.apply(&alg, pt).unwrap(), pt);
        }
    }

    #[test]
    fn squaring_morphism_matches_witt_squares() {
        let ring = witt_base(2, 1);
        let a1 = AffinePresentation::affine_space(ring.clone(), &["x"]);
        let x = GaPoly::var(ring.clone(), "x");
        let sq = x.mul(&x).unwrap();
        let m = MorphismPresentation::new(
            a1.clone(),
            a1.clone(),
            BTreeMap::from([("x".to_string(), sq)]),
        )
        .unwrap();
        let alg = FiniteAlgebra::field(f(2));
        let pts = solve(&a1, &alg, 1 << 20, true).unwrap().points;
        let ev = GaEvaluator::new(&ring, &alg).unwrap();
        for pt in &pts {
            let img = m.apply(&alg, pt).unwrap();
            let direct = ev.mul(&pt[0].coords, &pt[0].coords);
            assert_eq!(img[0].coords, direct);
        }
    }

    #[test]
    fn solve_counts_ignore_renaming_and_generator_order() {
        let ring = witt_base(2, 1);
        let alg = FiniteAlgebra::field(f(2));
        let x = GaPoly::var(ring.clone(), "x");
        let y = GaPoly::var(ring.clone(), "y");
        let one = GaPoly::constant(ring.clone(), ring.one_elem());
        let g1 = x.mul(&y).unwrap().sub(&one).unwrap();
        let g2 = x.mul(&x).unwrap().sub(&x).unwrap();
        let pres = AffinePresentation::new(
            ring.clone(),
            vec!["x".into(), "y".into()],
            vec![g1.clone(), g2.clone()],
        )
        .unwrap();
        let permuted =
            AffinePresentation::new(ring.clone(), vec!["x".into(), "y".into()], vec![g2, g1])
                .unwrap();
        let rename: BTreeMap<String, String> = BTreeMap::from([
            ("x".to_string(), "a".to_string()),
            ("y".to_string(), "b".to_string()),
        ]);
        let renamed = AffinePresentation::new(
            ring,
            vec!["a".into(), "b".into()],
            pres.gens.iter().map(|g| g.rename_vars(&rename)).collect(),
        )
        .unwrap();
        let count = solve(&pres, &alg, 1 << 20, false).unwrap().count;
        assert_eq!(solve(&permuted, &alg, 1 << 20, false).unwrap().count, count);
        assert_eq!(solve(&renamed, &alg, 1 << 20, false).unwrap().count, count);
    }

    #[test]
    fn scheme_file_rejects_undeclared_vars() {
        let ring = witt_base(2, 1);
        let y = GaPoly::var(ring.clone(), "y");
        assert_eq!(
            AffinePresentation::new(ring, vec!["x".into()], vec![y])
                .unwrap_err()
                .code(),
            "MissingVariable"
        );
    }
}
