//! The Greenberg transform: affine presentations over R_N become affine
//! presentations over the residue field by evaluating every generator in
//! the Greenberg algebra with symbolic polynomial carriers and reading off
//! coordinate polynomials.
//!
//! The defining contract, exercised relentlessly by the test suites, is the
//! point identity |Gr_N(Z)(A)| = |Z(R_N(A))| with an explicit coordinate
//! bijection.

use crate::algebra::{AlgElem, FiniteAlgebra};
use crate::cache::LawCache;
use crate::error::{Error, Result};
use crate::greenberg::{GaElement, GreenbergAlgebra};
use crate::poly::{CoeffRing, Poly, PolyOps};
use crate::ring::RingOps;
use crate::scheme::{
    solve, AffinePresentation, GaPoly, GroupSchemeSpec, MorphismPresentation, SchemePoint,
    SolveOutcome,
};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone)]
pub struct TransformResult {
    pub source: AffinePresentation,
    /// The transformed presentation over k (a level-0 ring).
    pub result: AffinePresentation,
    /// Source variable -> ordered coordinate-variable list.
    pub var_map: BTreeMap<String, Vec<String>>,
    pub level: usize,
}

fn coordinate_var_names(v: &str, level: usize) -> Vec<String> {
    if level == 0 {
        vec![v.to_string()]
    } else {
        (0..=level).map(|i| format!("{v}_{i}")).collect()
    }
}

/// Rewrites a level-0 presentation over any base onto the canonical
/// field ring, so transforms of different bases are directly comparable.
pub fn to_field_ring(pres: &AffinePresentation) -> Result<AffinePresentation> {
    if pres.ring.level() != 0 {
        return Err(Error::LevelMismatch(
            "expected a level-0 presentation".into(),
        ));
    }
    let ring = GreenbergAlgebra::field(pres.ring.k().clone());
    let gens = pres
        .gens
        .iter()
        .map(|g| GaPoly::from_field_poly(ring.clone(), &g.to_field_poly()?))
        .collect::<Result<Vec<_>>>()?;
    AffinePresentation::new(ring, pres.vars.clone(), gens)
}

/// Expands a generator symbolically: every source variable becomes the
/// tuple of its coordinate variables and the whole expression is evaluated
/// through the structure laws in the polynomial carrier.
fn expand_symbolic(
    ga: &GreenbergAlgebra,
    g: &GaPoly,
    var_elems: &BTreeMap<String, GaElement<Poly>>,
) -> Result<GaElement<Poly>> {
    let pops = PolyOps {
        ring: CoeffRing::FF(ga.k().clone()),
    };
    let constant = |c: &GaElement<crate::ff::FieldElem>| -> GaElement<Poly> {
        GaElement::new(
            c.coords
                .iter()
                .map(|e| {
                    Poly::constant(
                        CoeffRing::FF(ga.k().clone()),
                        crate::poly::Coeff::FF(e.clone()),
                    )
                })
                .collect(),
        )
    };
    let mut acc = GaElement::new(vec![pops.zero(); ga.level() + 1]);
    for (mono, coeff) in g.terms() {
        let mut term = constant(coeff);
        for (i, &e) in mono.0.iter().enumerate() {
            let var_elem = &var_elems[g.vars()[i].as_str()];
            for _ in 0..e {
                term = ga.ga_mul(&pops, &term, var_elem)?;
            }
        }
        acc = ga.ga_add(&pops, &acc, &term)?;
    }
    Ok(acc)
}

fn symbolic_var_elems(
    ga: &GreenbergAlgebra,
    vars: &[String],
    level: usize,
) -> BTreeMap<String, GaElement<Poly>> {
    let ring = CoeffRing::FF(ga.k().clone());
    vars.iter()
        .map(|v| {
            let coords = coordinate_var_names(v, level)
                .iter()
                .map(|name| Poly::var(name, ring.clone()))
                .collect();
            (v.clone(), GaElement::new(coords))
        })
        .collect()
}

/// The Greenberg transform of an affine presentation. At level 0 this is
/// the identity on presentations (up to the canonical field ring).
///
/// ```
/// use greenberg_core::cache::LawCache;
/// use greenberg_core::corpus;
/// use greenberg_core::greenberg::{BaseRingSpec, GreenbergAlgebra};
/// use greenberg_core::transform::gr_transform;
///
/// // y^2 - pi x over k[[t]]/(t^2) for k = F_3 becomes the pair of
/// // coordinate equations y_0^2 and 2 y_0 y_1 - x_0 over k.
/// let spec = BaseRingSpec::equal(corpus::f3());
/// let ga = GreenbergAlgebra::build(&spec, 1, &LawCache::disabled()).unwrap();
/// let t = gr_transform(&corpus::scheme_y2_minus_pix(&ga)).unwrap();
/// let gens: Vec<String> = t
///     .result
///     .gens
///     .iter()
///     .map(|g| g.to_field_poly().unwrap().render())
///     .collect();
/// assert_eq!(gens, vec!["y_0^2", "2*y_0*y_1 + 2*x_0"]);
/// ```
pub fn gr_transform(z: &AffinePresentation) -> Result<TransformResult> {
    let ga = &z.ring;
    let level = ga.level();
    let field_ring = GreenbergAlgebra::field(ga.k().clone());
    if level == 0 {
        let result = to_field_ring(z)?;
        let var_map = z
            .vars
            .iter()
            .map(|v| (v.clone(), vec![v.clone()]))
            .collect();
        return Ok(TransformResult {
            source: z.clone(),
            result,
            var_map,
            level,
        });
    }
    let var_map: BTreeMap<String, Vec<String>> = z
        .vars
        .iter()
        .map(|v| (v.clone(), coordinate_var_names(v, level)))
        .collect();
    let mut out_vars: Vec<String> = Vec::with_capacity((level + 1) * z.vars.len());
    for v in &z.vars {
        out_vars.extend(var_map[v].iter().cloned());
    }
    let distinct: BTreeSet<&String> = out_vars.iter().collect();
    if distinct.len() != out_vars.len() {
        return Err(Error::Parse {
            path: "transform".into(),
            msg: "coordinate variable names collide".into(),
        });
    }
    let var_elems = symbolic_var_elems(ga, &z.vars, level);
    let mut out_gens = Vec::with_capacity((level + 1) * z.gens.len());
    for g in &z.gens {
        let expanded = expand_symbolic(ga, g, &var_elems)?;
        for coord in &expanded.coords {
            out_gens.push(GaPoly::from_field_poly(field_ring.clone(), coord)?);
        }
    }
    let result = AffinePresentation::new(field_ring, out_vars, out_gens)?;
    Ok(TransformResult {
        source: z.clone(),
        result,
        var_map,
        level,
    })
}

/// Transforms a morphism presentation: every target coordinate variable is
/// sent to the matching coordinate polynomial of the expanded image.
pub fn gr_transform_morphism(
    f: &MorphismPresentation,
    source_t: &TransformResult,
    target_t: &TransformResult,
) -> Result<MorphismPresentation> {
    let ga = &f.source.ring;
    if *ga != f.target.ring || source_t.level != ga.level() {
        return Err(Error::LevelMismatch("morphism levels disagree".into()));
    }
    let field_ring = source_t.result.ring.clone();
    let var_elems = symbolic_var_elems(ga, &f.source.vars, ga.level());
    let mut images: BTreeMap<String, GaPoly> = BTreeMap::new();
    for w in &f.target.vars {
        let expanded = expand_symbolic(ga, &f.images[w], &var_elems)?;
        for (i, coord) in expanded.coords.iter().enumerate() {
            let name = target_t.var_map[w][i].clone();
            images.insert(name, GaPoly::from_field_poly(field_ring.clone(), coord)?);
        }
    }
    MorphismPresentation::new(source_t.result.clone(), target_t.result.clone(), images)
}

/// The transform of Z at its own level together with the reduced scheme and
/// transform at a lower level, plus the coordinate-projection morphism
/// between them.
pub struct ChangeOfLevel {
    pub high: TransformResult,
    pub low: TransformResult,
    pub reduced: AffinePresentation,
    pub morphism: MorphismPresentation,
}

/// Builds the change-of-level morphism Gr_N(Z) -> Gr_M(Z_M): each level-M
/// coordinate variable maps to the same-named level-N coordinate variable.
pub fn change_level(
    z: &AffinePresentation,
    target_level: usize,
    cache: &LawCache,
) -> Result<ChangeOfLevel> {
    let n = z.ring.level();
    if target_level > n {
        return Err(Error::LevelMismatch(format!(
            "target level {target_level} exceeds source level {n}"
        )));
    }
    let high = gr_transform(z)?;
    let low_ring = GreenbergAlgebra::build(z.ring.base(), target_level, cache)?;
    let reduced = z.reduce_level(&low_ring)?;
    let low = gr_transform(&reduced)?;
    let field_ring = high.result.ring.clone();
    let mut images: BTreeMap<String, GaPoly> = BTreeMap::new();
    for v in &z.vars {
        for i in 0..=target_level {
            images.insert(
                low.var_map[v][i].clone(),
                GaPoly::var(field_ring.clone(), &high.var_map[v][i]),
            );
        }
    }
    let morphism = MorphismPresentation::new(high.result.clone(), low.result.clone(), images)?;
    Ok(ChangeOfLevel {
        high,
        low,
        reduced,
        morphism,
    })
}

type PointKey = Vec<Vec<AlgElem>>;

fn point_key(p: &SchemePoint) -> PointKey {
    p.iter().map(|g| g.coords.clone()).collect()
}

/// Surjectivity report for the change-of-level map on A-points.
#[derive(Debug, Clone)]
pub struct LiftReport {
    pub low_count: u128,
    pub high_count: u128,
    pub unlifted: Vec<String>,
    pub all_images_valid: bool,
}

impl LiftReport {
    pub fn surjective(&self) -> bool {
        self.unlifted.is_empty()
    }
}

/// Checks that every A-point of Gr_m(Z_m) lifts along the change-of-level
/// morphism from level m+i, reporting every non-lifting point.
pub fn check_surjective_lift(
    z: &AffinePresentation,
    target_level: usize,
    alg: &FiniteAlgebra,
    candidate_guard: u128,
    cache: &LawCache,
) -> Result<LiftReport> {
    let col = change_level(z, target_level, cache)?;
    let high = solve(&col.high.result, alg, candidate_guard, true)?;
    let low = solve(&col.low.result, alg, candidate_guard, true)?;
    let low_keys: BTreeSet<PointKey> = low.points.iter().map(point_key).collect();
    let mut image_keys: BTreeSet<PointKey> = BTreeSet::new();
    let mut all_images_valid = true;
    for pt in &high.points {
        let img = col.morphism.apply(alg, pt)?;
        let key = point_key(&img);
        if !low_keys.contains(&key) {
            all_images_valid = false;
        }
        image_keys.insert(key);
    }
    let mut unlifted = Vec::new();
    for pt in &low.points {
        if !image_keys.contains(&point_key(pt)) {
            let rendered: Vec<String> = pt
                .iter()
                .map(|g| {
                    let coords: Vec<String> = g.coords.iter().map(|c| alg.render(c)).collect();
                    coords.join(",")
                })
                .collect();
            unlifted.push(format!("({})", rendered.join(" | ")));
        }
    }
    Ok(LiftReport {
        low_count: low.count,
        high_count: high.count,
        unlifted,
        all_images_valid,
    })
}

/// Cartesian-square report for a (formally etale flagged) morphism.
#[derive(Debug, Clone)]
pub struct CartesianReport {
    pub high_count: u128,
    pub fiber_product_count: u128,
    pub injective: bool,
}

impl CartesianReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.high_count == self.fiber_product_count
    }
}

/// Verifies on A-points that Gr_{m+i}(Z) maps bijectively onto the fiber
/// product Gr_m(Z_m) x_{Gr_m(Z'_m)} Gr_{m+i}(Z').
pub fn check_cartesian(
    f: &MorphismPresentation,
    target_level: usize,
    alg: &FiniteAlgebra,
    candidate_guard: u128,
    cache: &LawCache,
) -> Result<CartesianReport> {
    let col_src = change_level(&f.source, target_level, cache)?;
    let col_tgt = change_level(&f.target, target_level, cache)?;
    let f_high = gr_transform_morphism(f, &col_src.high, &col_tgt.high)?;
    let low_ring = col_src.reduced.ring.clone();
    let f_low_raw = f.reduce_level(&low_ring)?;
    let f_low = gr_transform_morphism(&f_low_raw, &col_src.low, &col_tgt.low)?;

    let src_high = solve(&col_src.high.result, alg, candidate_guard, true)?;
    let src_low = solve(&col_src.low.result, alg, candidate_guard, true)?;
    let tgt_high = solve(&col_tgt.high.result, alg, candidate_guard, true)?;

    // Fiber product pairs (t1, t2) with f_low(t1) = rho_{Z'}(t2).
    let mut fiber_count: u128 = 0;
    let mut fiber_keys: BTreeSet<(PointKey, PointKey)> = BTreeSet::new();
    for t1 in &src_low.points {
        let img1 = point_key(&f_low.apply(alg, t1)?);
        for t2 in &tgt_high.points {
            let img2 = point_key(&col_tgt.morphism.apply(alg, t2)?);
            if img1 == img2 {
                fiber_count += 1;
                fiber_keys.insert((point_key(t1), point_key(t2)));
            }
        }
    }
    // The canonical map.
    let mut seen: BTreeSet<(PointKey, PointKey)> = BTreeSet::new();
    let mut injective = true;
    for pt in &src_high.points {
        let a = point_key(&col_src.morphism.apply(alg, pt)?);
        let b = point_key(&f_high.apply(alg, pt)?);
        if !seen.insert((a.clone(), b.clone())) {
            injective = false;
        }
        if !fiber_keys.contains(&(a, b)) {
            injective = false;
        }
    }
    Ok(CartesianReport {
        high_count: src_high.count,
        fiber_product_count: fiber_count,
        injective,
    })
}

/// Counts the A-points of Gr_{m+i}(G) lying over the identity of
/// Gr_m(G_m); for smooth G this must be |A|^(i*d).
pub fn ker_change_level_count(
    g: &GroupSchemeSpec,
    target_level: usize,
    alg: &FiniteAlgebra,
    candidate_guard: u128,
    cache: &LawCache,
) -> Result<u128> {
    let col = change_level(&g.pres, target_level, cache)?;
    let low_ring = col.reduced.ring.clone();
    let high = solve(&col.high.result, alg, candidate_guard, true)?;
    // Identity coordinates at the target level, lifted into A.
    let mut expected: Vec<GaElement<AlgElem>> = Vec::new();
    for id in &g.identity {
        let truncated = g.pres.ring.truncate_to(&low_ring, id)?;
        let lifted = low_ring.lift_to_algebra(alg, &truncated)?;
        for c in lifted.coords {
            expected.push(GaElement::new(vec![c]));
        }
    }
    let expected_key = point_key(&expected);
    let mut count: u128 = 0;
    for pt in &high.points {
        let img = col.morphism.apply(alg, pt)?;
        if point_key(&img) == expected_key {
            count += 1;
        }
    }
    Ok(count)
}

/// |Gr_N(Z)(A)| and |Z(R_N(A))| with the explicit coordinate bijection:
/// the sets must agree after reading transform points as R_N(A)-tuples.
pub fn rat_pts_check(
    z: &AffinePresentation,
    alg: &FiniteAlgebra,
    candidate_guard: u128,
) -> Result<(u128, u128, bool)> {
    let t = gr_transform(z)?;
    let transformed: SolveOutcome = solve(&t.result, alg, candidate_guard, true)?;
    let direct: SolveOutcome = solve(z, alg, candidate_guard, true)?;
    // Reassemble each transform point into an R_N(A)-tuple via var_map.
    let slot: BTreeMap<&str, usize> = t
        .result
        .vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let mut reassembled: BTreeSet<PointKey> = BTreeSet::new();
    for pt in &transformed.points {
        let tuple: SchemePoint = z
            .vars
            .iter()
            .map(|v| {
                GaElement::new(
                    t.var_map[v]
                        .iter()
                        .map(|name| pt[slot[name.as_str()]].coords[0].clone())
                        .collect::<Vec<AlgElem>>(),
                )
            })
            .collect();
        reassembled.insert(point_key(&tuple));
    }
    let direct_keys: BTreeSet<PointKey> = direct.points.iter().map(point_key).collect();
    let bijection = reassembled == direct_keys && transformed.count == direct.count;
    Ok((transformed.count, direct.count, bijection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FiniteField;
    use crate::greenberg::BaseRingSpec;
    use crate::scheme::DEFAULT_CANDIDATE_GUARD;
    use num_bigint::BigInt;
    use std::sync::Arc;

    fn f(p: u64) -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(p).unwrap())
    }

    fn cache() -> LawCache {
        LawCache::disabled()
    }

    fn equal_base(p: u64, level: usize) -> Arc<GreenbergAlgebra> {
        GreenbergAlgebra::build(&BaseRingSpec::equal(f(p)), level, &cache()).unwrap()
    }

    fn witt_base(p: u64, level: usize) -> Arc<GreenbergAlgebra> {
        GreenbergAlgebra::build(&BaseRingSpec::unramified(f(p)), level, &cache()).unwrap()
    }

    fn y2_minus_pix(ring: &Arc<GreenbergAlgebra>) -> AffinePresentation {
        let y = GaPoly::var(ring.clone(), "y");
        let x = GaPoly::var(ring.clone(), "x");
        let pix = x.scale(&ring.pi_elem());
        let gen = y.mul(&y).unwrap().sub(&pix).unwrap();
        AffinePresentation::new(ring.clone(), vec!["x".into(), "y".into()], vec![gen]).unwrap()
    }

    #[test]
    fn square_zero_transform_of_y2_minus_pix() {
        // Equal case, p = 3, level 1: generators y_0^2 and 2 y_0 y_1 - x_0.
        let ring = equal_base(3, 1);
        let t = gr_transform(&y2_minus_pix(&ring)).unwrap();
        assert_eq!(t.result.vars, vec!["x_0", "x_1", "y_0", "y_1"]);
        let rendered: Vec<String> = t
            .result
            .gens
            .iter()
            .map(|g| g.to_field_poly().unwrap().render())
            .collect();
        assert_eq!(rendered, vec!["y_0^2", "2*y_0*y_1 + 2*x_0"]);
        // 2 = -1 mod 3, so the second generator is -(x_0 - 2 y_0 y_1).
    }

    #[test]
    fn affine_line_transforms_to_affine_space() {
        let ring = witt_base(2, 2);
        let a1 = AffinePresentation::affine_space(ring, &["x"]);
        let t = gr_transform(&a1).unwrap();
        assert_eq!(t.result.vars.len(), 3);
        assert!(t.result.gens.is_empty());
    }

    #[test]
    fn transform_count_matches_mod_four() {
        let ring = witt_base(2, 1);
        let x = GaPoly::var(ring.clone(), "x");
        let one = GaPoly::constant(ring.clone(), ring.one_elem());
        let gen = x.mul(&x).unwrap().sub(&one).unwrap();
        let z = AffinePresentation::new(ring, vec!["x".into()], vec![gen]).unwrap();
        let alg = FiniteAlgebra::field(f(2));
        let (t_count, d_count, bij) = rat_pts_check(&z, &alg, DEFAULT_CANDIDATE_GUARD).unwrap();
        assert_eq!((t_count, d_count), (2, 2));
        assert!(bij);
    }

    #[test]
    fn level_zero_transform_is_identity() {
        let ring = witt_base(2, 0);
        let x = GaPoly::var(ring.clone(), "x");
        let gen = x.mul(&x).unwrap().sub(&x).unwrap();
        let z = AffinePresentation::new(ring, vec!["x".into()], vec![gen]).unwrap();
        let t = gr_transform(&z).unwrap();
        assert_eq!(t.result.vars, z.vars);
        assert_eq!(
            t.result.gens[0].to_field_poly().unwrap().render(),
            "x^2 + x"
        );
    }

    #[test]
    fn constant_morphism_transforms_to_constant_coordinates() {
        // x maps to pi: the coordinate images are the constants (0, 1).
        let ring = witt_base(2, 1);
        let a1 = AffinePresentation::affine_space(ring.clone(), &["x"]);
        let m = MorphismPresentation::new(
            a1.clone(),
            a1.clone(),
            BTreeMap::from([(
                "x".to_string(),
                GaPoly::constant(ring.clone(), ring.pi_elem()),
            )]),
        )
        .unwrap();
        let t = gr_transform(&a1).unwrap();
        let tm = gr_transform_morphism(&m, &t, &t).unwrap();
        let k = ring.k().clone();
        let expect = |name: &str, value: crate::ff::FieldElem| {
            let img = tm.images[name].to_field_poly().unwrap();
            assert_eq!(
                img,
                crate::poly::Poly::constant(
                    crate::poly::CoeffRing::FF(k.clone()),
                    crate::poly::Coeff::FF(value),
                )
            );
        };
        expect("x_0", k.zero());
        expect("x_1", k.one());
    }

    #[test]
    fn squaring_morphism_transform_is_witt_square() {
        let ring = witt_base(2, 1);
        let a1 = AffinePresentation::affine_space(ring.clone(), &["x"]);
        let x = GaPoly::var(ring.clone(), "x");
        let m = MorphismPresentation::new(
            a1.clone(),
            a1.clone(),
            BTreeMap::from([("x".to_string(), x.mul(&x).unwrap())]),
        )
        .unwrap();
        let t = gr_transform(&a1).unwrap();
        let tm = gr_transform_morphism(&m, &t, &t).unwrap();
        // Image of x_0 is x_0^2 and of x_1 is the second Witt square
        // coordinate; verify on all four points of W_2(F_2).
        let alg = FiniteAlgebra::field(f(2));
        let pts = solve(&t.result, &alg, 1 << 20, true).unwrap().points;
        let ev = crate::greenberg::GaEvaluator::new(&ring, &alg).unwrap();
        for pt in &pts {
            let img = tm.apply(&alg, pt).unwrap();
            let witt: Vec<AlgElem> = ev.mul(
                &[pt[0].coords[0].clone(), pt[1].coords[0].clone()],
                &[pt[0].coords[0].clone(), pt[1].coords[0].clone()],
            );
            assert_eq!(img[0].coords[0], witt[0]);
            assert_eq!(img[1].coords[0], witt[1]);
        }
    }

    #[test]
    fn gm_change_level_fibers() {
        // G_m over W(F_3), level 1 -> 0: units of Z/9 project onto units of
        // F_3 with fibers of size 3.
        let ring = witt_base(3, 1);
        let x = GaPoly::var(ring.clone(), "x");
        let u = GaPoly::var(ring.clone(), "u");
        let one = GaPoly::constant(ring.clone(), ring.one_elem());
        let gen = x.mul(&u).unwrap().sub(&one).unwrap();
        let z = AffinePresentation::new(ring, vec!["x".into(), "u".into()], vec![gen]).unwrap();
        let alg = FiniteAlgebra::field(f(3));
        let report = check_surjective_lift(&z, 0, &alg, 1 << 20, &cache()).unwrap();
        assert!(report.surjective());
        assert!(report.all_images_valid);
        assert_eq!((report.high_count, report.low_count), (6, 2));
    }

    #[test]
    fn change_level_to_same_level_is_identity() {
        let ring = witt_base(2, 1);
        let z = y2_minus_pix(&ring);
        let col = change_level(&z, 1, &cache()).unwrap();
        assert_eq!(col.high.result, col.low.result);
        for (target, img) in &col.morphism.images {
            assert_eq!(img, &GaPoly::var(col.high.result.ring.clone(), target));
        }
    }

    #[test]
    fn xy_minus_pi_has_a_non_lifting_point() {
        let ring = witt_base(2, 1);
        let x = GaPoly::var(ring.clone(), "x");
        let y = GaPoly::var(ring.clone(), "y");
        let pi = GaPoly::constant(ring.clone(), ring.pi_elem());
        let gen = x.mul(&y).unwrap().sub(&pi).unwrap();
        let z = AffinePresentation::new(ring, vec!["x".into(), "y".into()], vec![gen]).unwrap();
        let alg = FiniteAlgebra::field(f(2));
        let report = check_surjective_lift(&z, 0, &alg, 1 << 20, &cache()).unwrap();
        assert!(!report.surjective());
        assert!(report.all_images_valid);
        // The point (0, 0) of xy = 0 cannot lift to xy = 2 in Z/4.
        assert_eq!(report.unlifted, vec!["(0 | 0)"]);
    }

    #[test]
    fn standard_etale_map_is_cartesian() {
        // Z = Spec R[x,y,t]/(y^2 - x, 2yt - 1) -> Z' = Spec R[x] over
        // W(F_3), levels 1 -> 0.
        let ring = witt_base(3, 1);
        let x = GaPoly::var(ring.clone(), "x");
        let y = GaPoly::var(ring.clone(), "y");
        let t = GaPoly::var(ring.clone(), "t");
        let one = GaPoly::constant(ring.clone(), ring.one_elem());
        let two = GaPoly::constant(ring.clone(), ring.int_image(&BigInt::from(2)).unwrap());
        let g1 = y.mul(&y).unwrap().sub(&x).unwrap();
        let g2 = two.mul(&y).unwrap().mul(&t).unwrap().sub(&one).unwrap();
        let source = AffinePresentation::new(
            ring.clone(),
            vec!["x".into(), "y".into(), "t".into()],
            vec![g1, g2],
        )
        .unwrap();
        let target = AffinePresentation::affine_space(ring.clone(), &["x"]);
        let f_map = MorphismPresentation::new(
            source,
            target,
            BTreeMap::from([("x".to_string(), GaPoly::var(ring.clone(), "x"))]),
        )
        .unwrap();
        let alg = FiniteAlgebra::field(f(3));
        let report = check_cartesian(&f_map, 0, &alg, 1 << 22, &cache()).unwrap();
        assert!(report.bijective());
        assert_eq!(report.high_count, 6);
    }

    #[test]
    fn morphism_transform_is_functorial_on_points() {
        // Gr(g o f) = Gr(g) o Gr(f) on points: squaring twice is the
        // fourth power on the affine line over W_2(F_3).
        let ring = witt_base(3, 1);
        let a1 = AffinePresentation::affine_space(ring.clone(), &["x"]);
        let x = GaPoly::var(ring.clone(), "x");
        let sq = MorphismPresentation::new(
            a1.clone(),
            a1.clone(),
            BTreeMap::from([("x".to_string(), x.mul(&x).unwrap())]),
        )
        .unwrap();
        let x4 = x.mul(&x).unwrap().mul(&x).unwrap().mul(&x).unwrap();
        let fourth = MorphismPresentation::new(
            a1.clone(),
            a1.clone(),
            BTreeMap::from([("x".to_string(), x4)]),
        )
        .unwrap();
        let t = gr_transform(&a1).unwrap();
        let t_sq = gr_transform_morphism(&sq, &t, &t).unwrap();
        let t_fourth = gr_transform_morphism(&fourth, &t, &t).unwrap();
        let alg = FiniteAlgebra::field(f(3));
        let pts = solve(&t.result, &alg, 1 << 20, true).unwrap().points;
        for pt in &pts {
            let twice = t_sq.apply(&alg, &t_sq.apply(&alg, pt).unwrap()).unwrap();
            let direct = t_fourth.apply(&alg, pt).unwrap();
            assert_eq!(twice, direct);
        }
    }

    #[test]
    fn kernel_counts_for_groups() {
        // G_a: kernel of the projection is |A|^i.
        let ring = witt_base(3, 1);
        let ga_pres = AffinePresentation::affine_space(ring.clone(), &["x"]);
        let ga_grp = GroupSchemeSpec::new(ga_pres, vec![ring.zero_elem()], None, true).unwrap();
        let alg = FiniteAlgebra::field(f(3));
        assert_eq!(
            ker_change_level_count(&ga_grp, 0, &alg, 1 << 20, &cache()).unwrap(),
            3
        );
        // G_m over W(F_3): units congruent to 1 mod 3.
        let x = GaPoly::var(ring.clone(), "x");
        let u = GaPoly::var(ring.clone(), "u");
        let one = GaPoly::constant(ring.clone(), ring.one_elem());
        let gen = x.mul(&u).unwrap().sub(&one).unwrap();
        let gm =
            AffinePresentation::new(ring.clone(), vec!["x".into(), "u".into()], vec![gen]).unwrap();
        let gm_grp =
            GroupSchemeSpec::new(gm, vec![ring.one_elem(), ring.one_elem()], None, true).unwrap();
        assert_eq!(
            ker_change_level_count(&gm_grp, 0, &alg, 1 << 20, &cache()).unwrap(),
            3
        );
    }
}
