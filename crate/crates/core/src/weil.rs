//! Weil restriction of affine presentations along finite free ring
//! extensions with an explicit basis and multiplication table.
//!
//! Three builders cover the extensions the test corpus needs: residue-field
//! extensions k'/k, mixed-characteristic extensions R'_(ne-1) over
//! R_(n-1) = W_n(F_p), and equal-characteristic truncation extensions
//! R_(N') over R_M. In every case the decomposition of a top-ring element
//! into base coordinates is realized by a total lookup table built from the
//! free-module structure; a collision while building it would signal a
//! non-free situation and is reported as DecompositionFailure.

use crate::algebra::{AlgElem, FiniteAlgebra};
use crate::cache::LawCache;
use crate::error::{Error, Result};
use crate::ff::FieldElem;
use crate::greenberg::{BaseRingSpec, GaElement, GreenbergAlgebra};
use crate::ring::{lift_field_to_field, FieldOps};
use crate::scheme::{solve, AffinePresentation, GaPoly, SchemePoint};
use crate::transform::gr_transform;
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// How base-ring elements embed into the top ring (on k-points).
#[derive(Debug, Clone)]
enum BaseEmbed {
    /// Both rings are fields: coefficient lift.
    Field,
    /// Base is W_n(F_p): decode through the integer bijection, then take
    /// the integer image upstairs.
    IntDecode(BTreeMap<GaElement<FieldElem>, BigInt>),
    /// Equal-characteristic: the uniformizer downstairs is pi^e upstairs.
    Stride(usize),
}

#[derive(Debug, Clone)]
pub struct ExtensionData {
    pub top: Arc<GreenbergAlgebra>,
    pub base: Arc<GreenbergAlgebra>,
    pub rank: usize,
    pub basis: Vec<GaElement<FieldElem>>,
    pub basis_labels: Vec<String>,
    /// basis_i * basis_j expressed in base coordinates.
    pub mult_table: Vec<Vec<Vec<GaElement<FieldElem>>>>,
    /// Cardinality of the geometric fiber; documentation only.
    pub gamma: usize,
    pub label: String,
    embed: BaseEmbed,
    decomp: BTreeMap<GaElement<FieldElem>, Vec<GaElement<FieldElem>>>,
}

/// gamma(f) for the extension, per builder.
#[derive(Debug, Clone)]
pub struct GammaReport {
    pub extension: String,
    pub gamma: usize,
}

impl ExtensionData {
    /// Embeds a base element into the top ring (k-points).
    pub fn embed_elem(&self, b: &GaElement<FieldElem>) -> Result<GaElement<FieldElem>> {
        match &self.embed {
            BaseEmbed::Field => {
                let lifted = lift_field_to_field(self.base.k(), self.top.k(), &b.coords[0])?;
                Ok(GaElement::new(vec![lifted]))
            }
            BaseEmbed::IntDecode(table) => {
                let n = table.get(b).ok_or_else(|| {
                    Error::DecompositionFailure("base element outside the integer table".into())
                })?;
                self.top.int_image(n)
            }
            BaseEmbed::Stride(e) => {
                let mut coords = vec![self.top.k().zero(); self.top.level() + 1];
                for (j, c) in b.coords.iter().enumerate() {
                    coords[j * e] = c.clone();
                }
                Ok(GaElement::new(coords))
            }
        }
    }

    /// sum_j iota(b_j) * B_j computed in the top ring.
    pub fn compose(&self, coords: &[GaElement<FieldElem>]) -> Result<GaElement<FieldElem>> {
        let ops = FieldOps(self.top.k());
        let mut acc = self.top.zero_elem();
        for (b, basis) in coords.iter().zip(&self.basis) {
            let term = self.top.ga_mul(&ops, &self.embed_elem(b)?, basis)?;
            acc = self.top.ga_add(&ops, &acc, &term)?;
        }
        Ok(acc)
    }

    /// Base coordinates of a top element; total by freeness.
    pub fn decompose(&self, a: &GaElement<FieldElem>) -> Result<Vec<GaElement<FieldElem>>> {
        self.decomp.get(a).cloned().ok_or_else(|| {
            Error::DecompositionFailure("element missing from the decomposition table".into())
        })
    }

    fn build_tables(&mut self, guard: u128) -> Result<()> {
        let base_count = self
            .base
            .point_count(&FiniteAlgebra::field(self.base.k().clone()));
        let top_count = self
            .top
            .point_count(&FiniteAlgebra::field(self.top.k().clone()));
        let table_size = base_count.checked_pow(self.rank as u32);
        if table_size.is_none_or(|s| s > guard) {
            return Err(Error::SizeGuard(format!(
                "decomposition table would need {base_count}^{} entries",
                self.rank
            )));
        }
        if table_size != Some(top_count) {
            return Err(Error::DecompositionFailure(format!(
                "rank {} cannot be free: |base|^rank = {:?} but |top| = {top_count}",
                self.rank, table_size
            )));
        }
        let base_alg = FiniteAlgebra::field(self.base.k().clone());
        let mut decomp = BTreeMap::new();
        let mut idx = vec![0u128; self.rank];
        loop {
            let coords: Vec<GaElement<FieldElem>> = idx
                .iter()
                .map(|&i| {
                    let pt = self.base.point_from_index(&base_alg, i);
                    GaElement::new(pt.coords.into_iter().map(|c| c[0].clone()).collect())
                })
                .collect();
            let value = self.compose(&coords)?;
            if decomp.insert(value, coords).is_some() {
                return Err(Error::DecompositionFailure(
                    "two coordinate vectors compose to the same element".into(),
                ));
            }
            // Odometer.
            let mut carry = 0;
            loop {
                if carry == self.rank {
                    // All combinations visited.
                    if decomp.len() as u128 != top_count {
                        return Err(Error::DecompositionFailure(
                            "composition map is not surjective".into(),
                        ));
                    }
                    self.decomp = decomp;
                    self.fill_mult_table()?;
                    return Ok(());
                }
                idx[carry] += 1;
                if idx[carry] < base_count {
                    break;
                }
                idx[carry] = 0;
                carry += 1;
            }
        }
    }

    fn fill_mult_table(&mut self) -> Result<()> {
        let ops = FieldOps(self.top.k());
        let mut table = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let mut row = Vec::with_capacity(self.rank);
            for j in 0..self.rank {
                let prod = self.top.ga_mul(&ops, &self.basis[i], &self.basis[j])?;
                row.push(self.decompose(&prod)?);
            }
            table.push(row);
        }
        self.mult_table = table;
        self.verify_table()
    }

    /// Multiplies coordinate vectors through the table; used both by the
    /// table verification and by the symbolic expansion.
    fn vec_mul_elems(
        &self,
        a: &[GaElement<FieldElem>],
        b: &[GaElement<FieldElem>],
    ) -> Result<Vec<GaElement<FieldElem>>> {
        let ops = FieldOps(self.base.k());
        let mut out = vec![self.base.zero_elem(); self.rank];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                let ab = self.base.ga_mul(&ops, ai, bj)?;
                for (c, t) in self.mult_table[i][j].iter().enumerate() {
                    let term = self.base.ga_mul(&ops, &ab, t)?;
                    out[c] = self.base.ga_add(&ops, &out[c], &term)?;
                }
            }
        }
        Ok(out)
    }

    fn verify_table(&self) -> Result<()> {
        let unit = self.decompose(&self.top.one_elem())?;
        let e = |i: usize| -> Vec<GaElement<FieldElem>> {
            (0..self.rank)
                .map(|j| {
                    if i == j {
                        self.base.one_elem()
                    } else {
                        self.base.zero_elem()
                    }
                })
                .collect()
        };
        for i in 0..self.rank {
            if self.vec_mul_elems(&unit, &e(i))? != e(i) {
                return Err(Error::DecompositionFailure("table is not unital".into()));
            }
            for j in 0..self.rank {
                if self.mult_table[i][j] != self.mult_table[j][i] {
                    return Err(Error::DecompositionFailure(
                        "table is not commutative".into(),
                    ));
                }
                for l in 0..self.rank {
                    let lhs = self.vec_mul_elems(&self.vec_mul_elems(&e(i), &e(j))?, &e(l))?;
                    let rhs = self.vec_mul_elems(&e(i), &self.vec_mul_elems(&e(j), &e(l))?)?;
                    if lhs != rhs {
                        return Err(Error::DecompositionFailure(
                            "table is not associative".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn gamma_report(&self) -> GammaReport {
        GammaReport {
            extension: self.label.clone(),
            gamma: self.gamma,
        }
    }
}

/// Residue-field extension k'/k with the power basis of k' over the image
/// of k. gamma = [k':k].
pub fn ext_build_field(
    sub: &Arc<crate::ff::FiniteField>,
    sup: &Arc<crate::ff::FiniteField>,
    guard: u128,
) -> Result<ExtensionData> {
    if sub.embedding_into(sup).is_none() {
        return Err(Error::NotAnExtension(
            format!("F_{}", sup.order()),
            format!("F_{}", sub.order()),
        ));
    }
    let rank = sup.deg() / sub.deg();
    let top = GreenbergAlgebra::field(sup.clone());
    let base = GreenbergAlgebra::field(sub.clone());
    // Power basis of the generator of k'.
    let gen = if sup.deg() == 1 {
        sup.one()
    } else {
        sup.elem_from_index(sup.p())
    };
    let mut basis = Vec::with_capacity(rank);
    let mut labels = Vec::with_capacity(rank);
    let mut pw = sup.one();
    for a in 0..rank {
        basis.push(GaElement::new(vec![pw.clone()]));
        labels.push(if a == 0 { "1".into() } else { format!("u^{a}") });
        pw = sup.mul(&pw, &gen);
    }
    let mut ext = ExtensionData {
        top,
        base,
        rank,
        basis,
        basis_labels: labels,
        mult_table: Vec::new(),
        gamma: rank,
        label: format!("F_{}/F_{}", sup.order(), sub.order()),
        embed: BaseEmbed::Field,
        decomp: BTreeMap::new(),
    };
    ext.build_tables(guard)?;
    Ok(ext)
}

/// Mixed-characteristic extension: R' given by (k', Eisenstein f of degree
/// e) over R = W(F_p), at level pair (ne-1, n-1). Basis u^a pi^b with
/// a < [k':F_p], b < e; the free-module decomposition over Z/p^n is realized
/// by the total composition table. gamma = [k':F_p].
pub fn ext_build_mixed(
    top_spec: &BaseRingSpec,
    n: usize,
    cache: &LawCache,
    guard: u128,
) -> Result<ExtensionData> {
    assert!(n >= 1);
    if top_spec.case != crate::greenberg::CharCase::Mixed {
        return Err(Error::PatternMismatch("top ring must be mixed".into()));
    }
    let kp = Arc::new(crate::ff::FiniteField::prime(top_spec.k.p())?);
    let base_spec = BaseRingSpec::unramified(kp.clone());
    let e = top_spec.rho();
    let d = top_spec.k.deg();
    let top = GreenbergAlgebra::build(top_spec, n * e - 1, cache)?;
    let base = GreenbergAlgebra::build(&base_spec, n - 1, cache)?;
    // Integer decode table for W_n(F_p).
    let mut int_table = BTreeMap::new();
    let pn = BigInt::from(kp.p()).pow(n as u32);
    let mut i = BigInt::ZERO;
    while i < pn {
        let img = base.int_image(&i)?;
        if int_table.insert(img, i.clone()).is_some() {
            return Err(Error::DecompositionFailure(
                "integer images collide in W_n(F_p)".into(),
            ));
        }
        i += 1;
    }
    // Basis u^a pi^b, index b*d + a.
    let kprime = top_spec.k.clone();
    let ops = FieldOps(&kprime);
    let u = {
        let mut coords = vec![kprime.zero(); top.level() + 1];
        coords[0] = if kprime.deg() == 1 {
            kprime.one()
        } else {
            kprime.elem_from_index(kprime.p())
        };
        GaElement::new(coords)
    };
    let pi = top.pi_elem();
    let mut basis = Vec::with_capacity(d * e);
    let mut labels = Vec::with_capacity(d * e);
    let mut pi_pow = top.one_elem();
    for b in 0..e {
        let mut cur = pi_pow.clone();
        for a in 0..d {
            basis.push(cur.clone());
            labels.push(match (a, b) {
                (0, 0) => "1".into(),
                (0, _) => format!("pi^{b}"),
                (_, 0) => format!("u^{a}"),
                _ => format!("u^{a}*pi^{b}"),
            });
            cur = top.ga_mul(&ops, &cur, &u)?;
        }
        pi_pow = top.ga_mul(&ops, &pi_pow, &pi)?;
    }
    let mut ext = ExtensionData {
        label: format!("{}/{} at n={n}", top_spec.label(), base_spec.label()),
        top,
        base,
        rank: d * e,
        basis,
        basis_labels: labels,
        mult_table: Vec::new(),
        gamma: d,
        embed: BaseEmbed::IntDecode(int_table),
        decomp: BTreeMap::new(),
    };
    ext.build_tables(guard)?;
    Ok(ext)
}

/// Equal-characteristic truncation extension R_(N') over R_M with
/// N' + 1 = (M + 1) e; basis pi^b, b < e. gamma = 1.
pub fn ext_build_equal(
    k: &Arc<crate::ff::FiniteField>,
    base_level: usize,
    e: usize,
    cache: &LawCache,
    guard: u128,
) -> Result<ExtensionData> {
    if e == 0 {
        return Err(Error::PatternMismatch("e must be positive".into()));
    }
    let spec = BaseRingSpec::equal(k.clone());
    let top_level = (base_level + 1) * e - 1;
    let top = GreenbergAlgebra::build(&spec, top_level, cache)?;
    let base = GreenbergAlgebra::build(&spec, base_level, cache)?;
    let ops = FieldOps(k);
    let pi = top.pi_elem();
    let mut basis = Vec::with_capacity(e);
    let mut labels = Vec::with_capacity(e);
    let mut cur = top.one_elem();
    for b in 0..e {
        basis.push(cur.clone());
        labels.push(if b == 0 {
            "1".into()
        } else {
            format!("pi^{b}")
        });
        cur = top.ga_mul(&ops, &cur, &pi)?;
    }
    let mut ext = ExtensionData {
        label: format!("R_{top_level}/R_{base_level} equal over F_{}", k.order()),
        top,
        base,
        rank: e,
        basis,
        basis_labels: labels,
        mult_table: Vec::new(),
        gamma: 1,
        embed: BaseEmbed::Stride(e),
        decomp: BTreeMap::new(),
    };
    ext.build_tables(guard)?;
    Ok(ext)
}

fn coordinate_var_names(v: &str, rank: usize) -> Vec<String> {
    if rank == 1 {
        vec![v.to_string()]
    } else {
        (0..rank).map(|j| format!("{v}_{j}")).collect()
    }
}

/// Weil restriction of an affine presentation along the extension: every
/// top variable becomes `rank` base variables and every generator expands
/// through the multiplication table into `rank` base-coordinate generators.
pub fn res_affine(z: &AffinePresentation, ext: &ExtensionData) -> Result<AffinePresentation> {
    if z.ring != ext.top {
        return Err(Error::RingMismatch);
    }
    let base = ext.base.clone();
    let var_map: BTreeMap<String, Vec<String>> = z
        .vars
        .iter()
        .map(|v| (v.clone(), coordinate_var_names(v, ext.rank)))
        .collect();
    let mut out_vars = Vec::with_capacity(ext.rank * z.vars.len());
    for v in &z.vars {
        out_vars.extend(var_map[v].iter().cloned());
    }
    let distinct: BTreeSet<&String> = out_vars.iter().collect();
    if distinct.len() != out_vars.len() {
        return Err(Error::Parse {
            path: "weil".into(),
            msg: "coordinate variable names collide".into(),
        });
    }
    let zero_vec = || vec![GaPoly::zero(base.clone()); ext.rank];
    let var_vec = |v: &str| -> Vec<GaPoly> {
        var_map[v]
            .iter()
            .map(|name| GaPoly::var(base.clone(), name))
            .collect()
    };
    let vec_add = |a: &[GaPoly], b: &[GaPoly]| -> Result<Vec<GaPoly>> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    };
    let vec_mul = |a: &[GaPoly], b: &[GaPoly]| -> Result<Vec<GaPoly>> {
        let mut out = zero_vec();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.mul(bj)?;
                for (c, t) in ext.mult_table[i][j].iter().enumerate() {
                    let term = ab.scale(t);
                    out[c] = out[c].add(&term)?;
                }
            }
        }
        Ok(out)
    };

    let mut out_gens = Vec::with_capacity(ext.rank * z.gens.len());
    for g in &z.gens {
        let mut acc = zero_vec();
        for (mono, coeff) in g.terms() {
            let mut term: Vec<GaPoly> = ext
                .decompose(coeff)?
                .into_iter()
                .map(|c| GaPoly::constant(base.clone(), c))
                .collect();
            for (i, &e) in mono.0.iter().enumerate() {
                let vv = var_vec(&g.vars()[i]);
                for _ in 0..e {
                    term = vec_mul(&term, &vv)?;
                }
            }
            acc = vec_add(&acc, &term)?;
        }
        out_gens.extend(acc);
    }
    AffinePresentation::new(base, out_vars, out_gens)
}

/// Checks the defining point bijection of the restriction at the residue
/// level: base points of the restriction against top points of Z, with the
/// explicit basis-coordinate bijection.
pub fn res_points_bijection_at_k(
    z: &AffinePresentation,
    ext: &ExtensionData,
    candidate_guard: u128,
) -> Result<(u128, u128, bool)> {
    let restricted = res_affine(z, ext)?;
    let base_alg = FiniteAlgebra::field(ext.base.k().clone());
    let top_alg = FiniteAlgebra::field(ext.top.k().clone());
    let base_out = solve(&restricted, &base_alg, candidate_guard, true)?;
    let top_out = solve(z, &top_alg, candidate_guard, true)?;
    // Map each base solution through the basis composition and compare the
    // resulting top-point sets.
    let to_field = |g: &GaElement<AlgElem>| -> GaElement<FieldElem> {
        GaElement::new(g.coords.iter().map(|c| c[0].clone()).collect())
    };
    let mut mapped: BTreeSet<Vec<GaElement<FieldElem>>> = BTreeSet::new();
    for pt in &base_out.points {
        let mut composed = Vec::with_capacity(z.vars.len());
        for (vi, _) in z.vars.iter().enumerate() {
            let coords: Vec<GaElement<FieldElem>> = (0..ext.rank)
                .map(|j| to_field(&pt[vi * ext.rank + j]))
                .collect();
            composed.push(ext.compose(&coords)?);
        }
        mapped.insert(composed);
    }
    let top_keys: BTreeSet<Vec<GaElement<FieldElem>>> = top_out
        .points
        .iter()
        .map(|pt| pt.iter().map(to_field).collect())
        .collect();
    let ok = mapped == top_keys && base_out.count == top_out.count;
    Ok((base_out.count, top_out.count, ok))
}

/// One grid cell of the restriction/transform commutation check.
#[derive(Debug, Clone)]
pub struct WrGrCell {
    pub algebra: String,
    pub lhs: u128,
    pub rhs: u128,
    pub witness: Option<String>,
}

impl WrGrCell {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// For Z over the top ring of a mixed or equal extension: compares
/// |Res_{k'/k}(Gr^{R'}(Z))(A)| against |Gr^{R}(Res(Z))(A)| over the given
/// test algebras.
pub fn wr_gr_check(
    z: &AffinePresentation,
    ext: &ExtensionData,
    field_ext: &ExtensionData,
    algebras: &[Arc<FiniteAlgebra>],
    candidate_guard: u128,
) -> Result<Vec<WrGrCell>> {
    // Left side: transform upstairs, then restrict the residue fields.
    let upstairs = gr_transform(z)?;
    let lhs_pres = res_affine(&upstairs.result, field_ext)?;
    // Right side: restrict the rings, then transform downstairs.
    let downstairs = res_affine(z, ext)?;
    let rhs_pres = gr_transform(&downstairs)?.result;
    let mut cells = Vec::new();
    for alg in algebras {
        let lhs = solve(&lhs_pres, alg, candidate_guard, false)?.count;
        let rhs = solve(&rhs_pres, alg, candidate_guard, false)?.count;
        let witness = if lhs != rhs {
            Some(format!(
                "lhs vars {:?} vs rhs vars {:?}",
                lhs_pres.vars.len(),
                rhs_pres.vars.len()
            ))
        } else {
            None
        };
        cells.push(WrGrCell {
            algebra: alg.label().to_string(),
            lhs,
            rhs,
            witness,
        });
    }
    Ok(cells)
}

/// Totally ramified comparison: Gr^{R'}(Z) itself (already a k-scheme since
/// k' = k) must agree with Gr^{R}(Res(Z)) on points.
pub fn tot_gr_check(
    z: &AffinePresentation,
    ext: &ExtensionData,
    algebras: &[Arc<FiniteAlgebra>],
    candidate_guard: u128,
) -> Result<Vec<WrGrCell>> {
    if ext.top.k() != ext.base.k() {
        return Err(Error::PatternMismatch(
            "totally ramified check needs equal residue fields".into(),
        ));
    }
    let direct = gr_transform(z)?.result;
    let downstairs = res_affine(z, ext)?;
    let through_base = gr_transform(&downstairs)?.result;
    let mut cells = Vec::new();
    for alg in algebras {
        let lhs = solve(&direct, alg, candidate_guard, false)?.count;
        let rhs = solve(&through_base, alg, candidate_guard, false)?.count;
        cells.push(WrGrCell {
            algebra: alg.label().to_string(),
            lhs,
            rhs,
            witness: None,
        });
    }
    Ok(cells)
}

/// Reads the coordinates of a solved point as field elements; helper for
/// report rendering.
pub fn render_point(alg: &FiniteAlgebra, pt: &SchemePoint) -> String {
    let parts: Vec<String> = pt
        .iter()
        .map(|g| {
            let coords: Vec<String> = g.coords.iter().map(|c| alg.render(c)).collect();
            coords.join(",")
        })
        .collect();
    format!("({})", parts.join(" | "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FiniteField;
    use crate::scheme::DEFAULT_CANDIDATE_GUARD;

    fn f(p: u64) -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(p).unwrap())
    }

    fn f4() -> Arc<FiniteField> {
        Arc::new(FiniteField::new(2, vec![1, 1, 1]).unwrap())
    }

    fn cache() -> LawCache {
        LawCache::disabled()
    }

    #[test]
    fn field_extension_f4_over_f2() {
        let ext = ext_build_field(&f(2), &f4(), 4096).unwrap();
        assert_eq!(ext.rank, 2);
        assert_eq!(ext.gamma, 2);
        // x^2 + x + 1 = 0 has the two roots u, u+1 in F_4 and the
        // restriction must see them over F_2; x^2 + x + u has none since u
        // is outside the Artin-Schreier image {0, 1}.
        let top_ring = ext.top.clone();
        let x = GaPoly::var(top_ring.clone(), "x");
        let one = GaPoly::constant(top_ring.clone(), ext.top.one_elem());
        let gen = x.mul(&x).unwrap().add(&x).unwrap().add(&one).unwrap();
        let z = AffinePresentation::new(top_ring.clone(), vec!["x".into()], vec![gen]).unwrap();
        let (b, t, ok) = res_points_bijection_at_k(&z, &ext, DEFAULT_CANDIDATE_GUARD).unwrap();
        assert_eq!((b, t), (2, 2));
        assert!(ok);
        let u_const = GaPoly::constant(
            top_ring.clone(),
            GaElement::new(vec![ext.top.k().elem_from_index(2)]),
        );
        let x2 = GaPoly::var(top_ring.clone(), "x");
        let gen2 = x2
            .mul(&x2)
            .unwrap()
            .add(&x2)
            .unwrap()
            .add(&u_const)
            .unwrap();
        let z2 = AffinePresentation::new(top_ring, vec!["x".into()], vec![gen2]).unwrap();
        let (b2, t2, ok2) = res_points_bijection_at_k(&z2, &ext, DEFAULT_CANDIDATE_GUARD).unwrap();
        assert_eq!((b2, t2), (0, 0));
        assert!(ok2);
    }

    #[test]
    fn trivial_field_extension() {
        let ext = ext_build_field(&f(2), &f(2), 4096).unwrap();
        assert_eq!(ext.rank, 1);
        assert_eq!(ext.gamma, 1);
        let err = ext_build_field(&f4(), &f(2), 4096).unwrap_err();
        assert_eq!(err.code(), "NotAnExtension");
    }

    #[test]
    fn equal_extension_square_zero() {
        let ext = ext_build_equal(&f(3), 0, 2, &cache(), 4096).unwrap();
        assert_eq!(ext.rank, 2);
        assert_eq!(ext.basis_labels, vec!["1", "pi^1"]);
        // pi * pi = 0 at the top level 1.
        assert!(ext.mult_table[1][1]
            .iter()
            .all(|c| ext.base.is_zero_elem(c)));
        // Restriction of y^2 - pi x matches the transform term for term.
        let top = ext.top.clone();
        let y = GaPoly::var(top.clone(), "y");
        let x = GaPoly::var(top.clone(), "x");
        let gen = y.mul(&y).unwrap().sub(&x.scale(&top.pi_elem())).unwrap();
        let z = AffinePresentation::new(top, vec!["x".into(), "y".into()], vec![gen]).unwrap();
        let restricted = res_affine(&z, &ext).unwrap();
        let transformed = gr_transform(&z).unwrap().result;
        assert_eq!(restricted.vars, transformed.vars);
        let rendered = |p: &AffinePresentation| -> Vec<String> {
            p.gens
                .iter()
                .map(|g| g.to_field_poly().unwrap().render())
                .collect()
        };
        assert_eq!(rendered(&restricted), rendered(&transformed));
    }

    #[test]
    fn mixed_totally_ramified_rank_two() {
        let spec = BaseRingSpec::mixed(f(2), vec![BigInt::from(0), BigInt::from(-2)]).unwrap();
        let ext = ext_build_mixed(&spec, 1, &cache(), 4096).unwrap();
        // R'_1 = F_2[pi]/(pi^2), free of rank 2 over F_2.
        assert_eq!(ext.rank, 2);
        assert_eq!(ext.gamma, 1);
        assert_eq!(ext.base.level(), 0);
        // x^2 - pi x over the top: solutions have x_0 = 0.
        let top = ext.top.clone();
        let x = GaPoly::var(top.clone(), "x");
        let gen = x.mul(&x).unwrap().sub(&x.scale(&top.pi_elem())).unwrap();
        let z = AffinePresentation::new(top, vec!["x".into()], vec![gen]).unwrap();
        let (b, t, ok) = res_points_bijection_at_k(&z, &ext, DEFAULT_CANDIDATE_GUARD).unwrap();
        assert_eq!((b, t), (2, 2));
        assert!(ok);
    }

    #[test]
    fn mixed_unramified_w2_f4() {
        let spec = BaseRingSpec::unramified(f4());
        let ext = ext_build_mixed(&spec, 2, &cache(), 4096).unwrap();
        // W_2(F_4) of rank 2 over Z/4.
        assert_eq!(ext.rank, 2);
        assert_eq!(ext.gamma, 2);
        assert_eq!(ext.base.level(), 1);
        let top = ext.top.clone();
        let alg4 = FiniteAlgebra::field(f4());
        assert_eq!(top.point_count(&alg4), 16);
    }

    #[test]
    fn wr_gr_totally_ramified_example() {
        let spec = BaseRingSpec::mixed(f(2), vec![BigInt::from(0), BigInt::from(-2)]).unwrap();
        let ext = ext_build_mixed(&spec, 1, &cache(), 4096).unwrap();
        let field_ext = ext_build_field(&f(2), &f(2), 4096).unwrap();
        let top = ext.top.clone();
        let x = GaPoly::var(top.clone(), "x");
        let gen = x.mul(&x).unwrap().sub(&x.scale(&top.pi_elem())).unwrap();
        let z = AffinePresentation::new(top, vec!["x".into()], vec![gen]).unwrap();
        let algs = vec![Arc::new(FiniteAlgebra::field(f(2)))];
        let cells = wr_gr_check(&z, &ext, &field_ext, &algs, DEFAULT_CANDIDATE_GUARD).unwrap();
        assert!(cells.iter().all(|c| c.equal()));
        assert_eq!(cells[0].lhs, 2);
        let tot = tot_gr_check(&z, &ext, &algs, DEFAULT_CANDIDATE_GUARD).unwrap();
        assert!(tot.iter().all(|c| c.lhs == c.rhs));
    }

    #[test]
    fn wr_gr_unramified_gm() {
        let spec = BaseRingSpec::unramified(f4());
        let ext = ext_build_mixed(&spec, 2, &cache(), 4096).unwrap();
        let field_ext = ext_build_field(&f(2), &f4(), 4096).unwrap();
        let top = ext.top.clone();
        let x = GaPoly::var(top.clone(), "x");
        let u = GaPoly::var(top.clone(), "u");
        let one = GaPoly::constant(top.clone(), top.one_elem());
        let gen = x.mul(&u).unwrap().sub(&one).unwrap();
        let z = AffinePresentation::new(top, vec!["x".into(), "u".into()], vec![gen]).unwrap();
        let algs = vec![Arc::new(FiniteAlgebra::field(f(2)))];
        let cells = wr_gr_check(&z, &ext, &field_ext, &algs, DEFAULT_CANDIDATE_GUARD).unwrap();
        assert!(cells.iter().all(|c| c.equal()));
        // |W_2(F_4)^x| = 12.
        assert_eq!(cells[0].lhs, 12);
    }
}
