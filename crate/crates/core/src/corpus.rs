//! The default desk-scale test corpus: fields, point-counting algebras,
//! base rings, schemes and groups shared by the verification suites and the
//! acceptance tests.

use crate::algebra::FiniteAlgebra;
use crate::cache::LawCache;
use crate::error::Result;
use crate::ff::FiniteField;
use crate::greenberg::{BaseRingSpec, GaElement, GreenbergAlgebra};
use crate::scheme::{AffinePresentation, GaPoly, GroupSchemeSpec, MorphismPresentation};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Enumeration and blow-up guards, overridable from the CLI.
#[derive(Debug, Clone)]
pub struct Guards {
    /// Cap on algebra cardinality.
    pub size: u64,
    /// Cap on candidate tuples in the brute-force solver.
    pub candidates: u128,
    /// Cap on exhaustive ring-axiom triples.
    pub axiom_triples: u128,
    /// Cap on enumerated point sets (kernels, ideal powers).
    pub points: u128,
}

impl Default for Guards {
    fn default() -> Guards {
        Guards {
            size: crate::algebra::DEFAULT_SIZE_GUARD,
            candidates: crate::scheme::DEFAULT_CANDIDATE_GUARD,
            axiom_triples: 1 << 21,
            points: (crate::algebra::DEFAULT_SIZE_GUARD as u128).pow(2),
        }
    }
}

pub fn f2() -> Arc<FiniteField> {
    Arc::new(FiniteField::prime(2).unwrap())
}

pub fn f3() -> Arc<FiniteField> {
    Arc::new(FiniteField::prime(3).unwrap())
}

pub fn f5() -> Arc<FiniteField> {
    Arc::new(FiniteField::prime(5).unwrap())
}

pub fn f4() -> Arc<FiniteField> {
    Arc::new(FiniteField::new(2, vec![1, 1, 1]).unwrap())
}

pub fn f9() -> Arc<FiniteField> {
    Arc::new(FiniteField::new(3, vec![1, 0, 1]).unwrap())
}

/// Point-counting algebras of characteristic p, including the non-perfect
/// dual numbers in characteristic 2.
pub fn point_algebras(p: u64, guard: u64) -> Vec<Arc<FiniteAlgebra>> {
    match p {
        2 => vec![
            Arc::new(FiniteAlgebra::field(f2())),
            Arc::new(FiniteAlgebra::field(f4())),
            Arc::new(FiniteAlgebra::dual_numbers(f2(), 2, guard).unwrap()),
        ],
        3 => vec![Arc::new(FiniteAlgebra::field(f3()))],
        5 => vec![Arc::new(FiniteAlgebra::field(f5()))],
        _ => Vec::new(),
    }
}

/// The base-ring corpus: equal characteristic, absolutely unramified, and
/// the three ramified Eisenstein extensions.
pub fn base_specs() -> Vec<BaseRingSpec> {
    vec![
        BaseRingSpec::equal(f2()),
        BaseRingSpec::equal(f3()),
        BaseRingSpec::unramified(f2()),
        BaseRingSpec::unramified(f3()),
        BaseRingSpec::mixed(f2(), vec![BigInt::from(0), BigInt::from(-2)]).unwrap(),
        BaseRingSpec::mixed(f3(), vec![BigInt::from(0), BigInt::from(-3)]).unwrap(),
        BaseRingSpec::mixed(f2(), vec![BigInt::ZERO, BigInt::ZERO, BigInt::from(-2)]).unwrap(),
    ]
}

pub fn mixed_base_specs() -> Vec<BaseRingSpec> {
    base_specs()
        .into_iter()
        .filter(|s| s.case == crate::greenberg::CharCase::Mixed)
        .collect()
}

fn constant(ring: &Arc<GreenbergAlgebra>, c: GaElement<crate::ff::FieldElem>) -> GaPoly {
    GaPoly::constant(ring.clone(), c)
}

pub fn scheme_a1(ring: &Arc<GreenbergAlgebra>) -> AffinePresentation {
    AffinePresentation::affine_space(ring.clone(), &["x"])
}

pub fn scheme_a2(ring: &Arc<GreenbergAlgebra>) -> AffinePresentation {
    AffinePresentation::affine_space(ring.clone(), &["x", "y"])
}

pub fn scheme_gm(ring: &Arc<GreenbergAlgebra>) -> AffinePresentation {
    let x = GaPoly::var(ring.clone(), "x");
    let u = GaPoly::var(ring.clone(), "u");
    let gen = x
        .mul(&u)
        .unwrap()
        .sub(&constant(ring, ring.one_elem()))
        .unwrap();
    AffinePresentation::new(ring.clone(), vec!["x".into(), "u".into()], vec![gen]).unwrap()
}

pub fn scheme_x2_minus_1(ring: &Arc<GreenbergAlgebra>) -> AffinePresentation {
    let x = GaPoly::var(ring.clone(), "x");
    let gen = x
        .mul(&x)
        .unwrap()
        .sub(&constant(ring, ring.one_elem()))
        .unwrap();
    AffinePresentation::new(ring.clone(), vec!["x".into()], vec![gen]).unwrap()
}

pub fn scheme_y2_minus_pix(ring: &Arc<GreenbergAlgebra>) -> AffinePresentation {
    let x = GaPoly::var(ring.clone(), "x");
    let y = GaPoly::var(ring.clone(), "y");
    let gen = y.mul(&y).unwrap().sub(&x.scale(&ring.pi_elem())).unwrap();
    AffinePresentation::new(ring.clone(), vec!["x".into(), "y".into()], vec![gen]).unwrap()
}

pub fn scheme_xy_minus_pi(ring: &Arc<GreenbergAlgebra>) -> AffinePresentation {
    let x = GaPoly::var(ring.clone(), "x");
    let y = GaPoly::var(ring.clone(), "y");
    let gen = x
        .mul(&y)
        .unwrap()
        .sub(&constant(ring, ring.pi_elem()))
        .unwrap();
    AffinePresentation::new(ring.clone(), vec!["x".into(), "y".into()], vec![gen]).unwrap()
}

pub fn scheme_x2_plus_x_plus_1(ring: &Arc<GreenbergAlgebra>) -> AffinePresentation {
    let x = GaPoly::var(ring.clone(), "x");
    let gen = x
        .mul(&x)
        .unwrap()
        .add(&x)
        .unwrap()
        .add(&constant(ring, ring.one_elem()))
        .unwrap();
    AffinePresentation::new(ring.clone(), vec!["x".into()], vec![gen]).unwrap()
}

/// The rat-pts scheme corpus with display names.
pub fn scheme_corpus(ring: &Arc<GreenbergAlgebra>) -> Vec<(&'static str, AffinePresentation)> {
    vec![
        ("A1", scheme_a1(ring)),
        ("A2", scheme_a2(ring)),
        ("Gm", scheme_gm(ring)),
        ("x2-1", scheme_x2_minus_1(ring)),
        ("y2-pix", scheme_y2_minus_pix(ring)),
        ("xy-pi", scheme_xy_minus_pi(ring)),
        ("x2+x+1", scheme_x2_plus_x_plus_1(ring)),
    ]
}

pub fn group_ga(ring: &Arc<GreenbergAlgebra>) -> GroupSchemeSpec {
    GroupSchemeSpec::new(scheme_a1(ring), vec![ring.zero_elem()], None, true).unwrap()
}

pub fn group_gm(ring: &Arc<GreenbergAlgebra>) -> GroupSchemeSpec {
    let pres = scheme_gm(ring);
    let law = gm_law(&pres);
    GroupSchemeSpec::new(
        pres,
        vec![ring.one_elem(), ring.one_elem()],
        Some(law),
        true,
    )
    .unwrap()
}

/// The multiplication morphism G_m x G_m -> G_m as a presentation.
fn gm_law(gm: &AffinePresentation) -> MorphismPresentation {
    let prod = gm.product(gm).unwrap();
    let ring = gm.ring.clone();
    let images = BTreeMap::from([
        (
            "x".to_string(),
            GaPoly::var(ring.clone(), "l_x")
                .mul(&GaPoly::var(ring.clone(), "r_x"))
                .unwrap(),
        ),
        (
            "u".to_string(),
            GaPoly::var(ring.clone(), "l_u")
                .mul(&GaPoly::var(ring.clone(), "r_u"))
                .unwrap(),
        ),
    ]);
    MorphismPresentation::new(prod, gm.clone(), images).unwrap()
}

pub fn group_gm2(ring: &Arc<GreenbergAlgebra>) -> GroupSchemeSpec {
    let pres = scheme_gm(ring).product(&scheme_gm(ring)).unwrap();
    let id = vec![
        ring.one_elem(),
        ring.one_elem(),
        ring.one_elem(),
        ring.one_elem(),
    ];
    GroupSchemeSpec::new(pres, id, None, true).unwrap()
}

/// Standard etale morphism `Spec R[x,y,t]/(y^2 - x, 2yt - 1) -> Spec R[x]`;
/// needs p odd.
pub fn etale_standard(ring: &Arc<GreenbergAlgebra>) -> Result<MorphismPresentation> {
    let x = GaPoly::var(ring.clone(), "x");
    let y = GaPoly::var(ring.clone(), "y");
    let t = GaPoly::var(ring.clone(), "t");
    let two = constant(ring, ring.int_image(&BigInt::from(2))?);
    let one = constant(ring, ring.one_elem());
    let g1 = y.mul(&y)?.sub(&x)?;
    let g2 = two.mul(&y)?.mul(&t)?.sub(&one)?;
    let source = AffinePresentation::new(
        ring.clone(),
        vec!["x".into(), "y".into(), "t".into()],
        vec![g1, g2],
    )?;
    let target = AffinePresentation::affine_space(ring.clone(), &["x"]);
    MorphismPresentation::new(
        source,
        target,
        BTreeMap::from([("x".to_string(), GaPoly::var(ring.clone(), "x"))]),
    )
}

/// Open-immersion-style morphism `Spec R[x,t]/(xt - 1) -> Spec R[x]`.
pub fn etale_basic_open(ring: &Arc<GreenbergAlgebra>) -> Result<MorphismPresentation> {
    let x = GaPoly::var(ring.clone(), "x");
    let t = GaPoly::var(ring.clone(), "t");
    let one = constant(ring, ring.one_elem());
    let gen = x.mul(&t)?.sub(&one)?;
    let source = AffinePresentation::new(ring.clone(), vec!["x".into(), "t".into()], vec![gen])?;
    let target = AffinePresentation::affine_space(ring.clone(), &["x"]);
    MorphismPresentation::new(
        source,
        target,
        BTreeMap::from([("x".to_string(), GaPoly::var(ring.clone(), "x"))]),
    )
}

/// Builds every corpus base at the given level.
pub fn build_bases(level: usize, cache: &LawCache) -> Result<Vec<Arc<GreenbergAlgebra>>> {
    base_specs()
        .iter()
        .map(|s| GreenbergAlgebra::build(s, level, cache))
        .collect()
}
