//! Structured-text (JSON-shaped) file formats for fields, algebras, base
//! rings, schemes, morphisms, groups and extensions.
//!
//! Parsers are strict: unknown keys are rejected and every error carries a
//! JSON-pointer-style path. The exact grammar is documented in the README.

use crate::algebra::FiniteAlgebra;
use crate::cache::LawCache;
use crate::error::{Error, Result};
use crate::ff::{FieldElem, FiniteField};
use crate::greenberg::{BaseRingSpec, CharCase, GaElement, GreenbergAlgebra};
use crate::ring::FieldOps;
use crate::scheme::{AffinePresentation, GaPoly, GroupSchemeSpec, MorphismPresentation};
use crate::weil::{ext_build_equal, ext_build_field, ext_build_mixed, ExtensionData};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

fn perr(path: &str, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        msg: msg.into(),
    }
}

pub fn parse_json_text(text: &str, origin: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        perr(
            origin,
            format!("line {}, column {}: {e}", e.line(), e.column()),
        )
    })
}

pub fn load_json_file(path: &std::path::Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_json_text(&text, &path.display().to_string())
}

fn as_object<'a>(v: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr(path, "expected an object"))?;
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(perr(path, format!("unknown key {key:?}")));
        }
    }
    Ok(obj)
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| perr(path, format!("missing key {key:?}")))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| perr(path, "expected a nonnegative integer"))
}

fn as_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| perr(path, "expected an integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| perr(path, "expected a string"))
}

// ------------------------------------------------------------- readers --

/// `{"p": 2, "modulus": [1, 1, 1]}`
pub fn parse_field(v: &Value, path: &str) -> Result<Arc<FiniteField>> {
    let obj = as_object(v, path, &["p", "modulus"])?;
    let p = as_u64(get(obj, "p", path)?, &format!("{path}.p"))?;
    let modulus = parse_modulus(get(obj, "modulus", path)?, &format!("{path}.modulus"))?;
    Ok(Arc::new(FiniteField::new(p, modulus)?))
}

fn parse_modulus(v: &Value, path: &str) -> Result<Vec<u64>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, c)| as_u64(c, &format!("{path}[{i}]")))
        .collect()
}

/// A residue field given only by its modulus; `p` comes from the caller.
fn parse_residue(v: &Value, p: u64, path: &str) -> Result<Arc<FiniteField>> {
    let obj = as_object(v, path, &["modulus"])?;
    let modulus = parse_modulus(get(obj, "modulus", path)?, &format!("{path}.modulus"))?;
    Ok(Arc::new(FiniteField::new(p, modulus)?))
}

/// `{"kind": "field" | "dual_numbers" | "product", ...}`
pub fn parse_algebra(v: &Value, path: &str, guard: u64) -> Result<Arc<FiniteAlgebra>> {
    let obj = as_object(v, path, &["kind", "base", "m", "left", "right"])?;
    let kind = as_str(get(obj, "kind", path)?, &format!("{path}.kind"))?;
    match kind {
        "field" => {
            let base = parse_field(get(obj, "base", path)?, &format!("{path}.base"))?;
            Ok(Arc::new(FiniteAlgebra::field(base)))
        }
        "dual_numbers" => {
            let base = parse_field(get(obj, "base", path)?, &format!("{path}.base"))?;
            let m = as_u64(get(obj, "m", path)?, &format!("{path}.m"))? as usize;
            if m < 2 {
                return Err(perr(&format!("{path}.m"), "dual numbers need m >= 2"));
            }
            Ok(Arc::new(FiniteAlgebra::dual_numbers(base, m, guard)?))
        }
        "product" => {
            let left = parse_algebra(get(obj, "left", path)?, &format!("{path}.left"), guard)?;
            let right = parse_algebra(get(obj, "right", path)?, &format!("{path}.right"), guard)?;
            Ok(Arc::new(FiniteAlgebra::product(&left, &right, guard)?))
        }
        other => Err(perr(
            &format!("{path}.kind"),
            format!("unknown kind {other:?}"),
        )),
    }
}

/// `{"case": "equal" | "mixed", "p": 2, "residue": {...}, "eisenstein": [...]}`
pub fn parse_base_ring(v: &Value, path: &str) -> Result<BaseRingSpec> {
    let obj = as_object(v, path, &["case", "p", "residue", "eisenstein"])?;
    let case = as_str(get(obj, "case", path)?, &format!("{path}.case"))?;
    let p = as_u64(get(obj, "p", path)?, &format!("{path}.p"))?;
    let k = parse_residue(get(obj, "residue", path)?, p, &format!("{path}.residue"))?;
    let eisenstein: Vec<BigInt> = match obj.get("eisenstein") {
        None => Vec::new(),
        Some(e) => as_array(e, &format!("{path}.eisenstein"))?
            .iter()
            .enumerate()
            .map(|(i, c)| as_i64(c, &format!("{path}.eisenstein[{i}]")).map(BigInt::from))
            .collect::<Result<_>>()?,
    };
    match case {
        "equal" => {
            if !eisenstein.is_empty() {
                return Err(perr(
                    &format!("{path}.eisenstein"),
                    "the equal-characteristic case takes no Eisenstein data",
                ));
            }
            Ok(BaseRingSpec::equal(k))
        }
        "mixed" => {
            if eisenstein.is_empty() {
                Ok(BaseRingSpec::unramified(k))
            } else {
                BaseRingSpec::mixed(k, eisenstein)
            }
        }
        other => Err(perr(
            &format!("{path}.case"),
            format!("unknown case {other:?}"),
        )),
    }
}

/// `{"level": N, "base": {...}}` or `{"field": {...}}`
pub fn parse_ring(v: &Value, path: &str, cache: &LawCache) -> Result<Arc<GreenbergAlgebra>> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr(path, "expected an object"))?;
    if obj.contains_key("field") {
        as_object(v, path, &["field"])?;
        let k = parse_field(get(obj, "field", path)?, &format!("{path}.field"))?;
        return Ok(GreenbergAlgebra::field(k));
    }
    let obj = as_object(v, path, &["level", "base"])?;
    let level = as_u64(get(obj, "level", path)?, &format!("{path}.level"))? as usize;
    if level > 64 {
        return Err(perr(
            &format!("{path}.level"),
            "levels beyond 64 are outside desk scale",
        ));
    }
    let spec = parse_base_ring(get(obj, "base", path)?, &format!("{path}.base"))?;
    GreenbergAlgebra::build(&spec, level, cache)
}

/// A coefficient: the product of atoms `["int", n]`, `["pi", e]`,
/// `["coords", [...]]`.
fn parse_coeff(
    atoms: &Value,
    ring: &Arc<GreenbergAlgebra>,
    path: &str,
) -> Result<GaElement<FieldElem>> {
    let ops = FieldOps(ring.k());
    let mut acc = ring.one_elem();
    for (i, atom) in as_array(atoms, path)?.iter().enumerate() {
        let apath = format!("{path}[{i}]");
        let parts = as_array(atom, &apath)?;
        if parts.len() != 2 {
            return Err(perr(&apath, "expected a [tag, value] pair"));
        }
        let tag = as_str(&parts[0], &apath)?;
        let factor = match tag {
            "int" => {
                let n = as_i64(&parts[1], &format!("{apath}[1]"))?;
                ring.int_image(&BigInt::from(n))?
            }
            "pi" => {
                let e = as_u64(&parts[1], &format!("{apath}[1]"))?;
                let pi = ring.pi_elem();
                let mut pw = ring.one_elem();
                for _ in 0..e {
                    pw = ring.ga_mul(&ops, &pw, &pi)?;
                }
                pw
            }
            "coords" => {
                let coords = as_array(&parts[1], &format!("{apath}[1]"))?;
                if coords.len() != ring.level() + 1 {
                    return Err(perr(
                        &format!("{apath}[1]"),
                        format!("expected {} coordinates", ring.level() + 1),
                    ));
                }
                let k = ring.k();
                let parsed: Vec<FieldElem> = coords
                    .iter()
                    .enumerate()
                    .map(|(j, c)| -> Result<FieldElem> {
                        let cpath = format!("{apath}[1][{j}]");
                        match c {
                            Value::Number(_) => {
                                let n = as_i64(c, &cpath)?;
                                Ok(k.from_i64(n))
                            }
                            Value::Array(parts) => {
                                if parts.len() != k.deg() {
                                    return Err(perr(
                                        &cpath,
                                        format!("expected {} field coordinates", k.deg()),
                                    ));
                                }
                                parts
                                    .iter()
                                    .map(|x| as_u64(x, &cpath))
                                    .collect::<Result<Vec<u64>>>()
                                    .and_then(|v| {
                                        if v.iter().any(|&c| c >= k.p()) {
                                            Err(perr(&cpath, "coordinate out of range"))
                                        } else {
                                            Ok(v)
                                        }
                                    })
                            }
                            _ => Err(perr(&cpath, "expected an integer or coordinate list")),
                        }
                    })
                    .collect::<Result<_>>()?;
                GaElement::new(parsed)
            }
            other => return Err(perr(&apath, format!("unknown coefficient atom {other:?}"))),
        };
        acc = ring.ga_mul(&ops, &acc, &factor)?;
    }
    Ok(acc)
}

fn parse_term(
    v: &Value,
    ring: &Arc<GreenbergAlgebra>,
    vars: &[String],
    path: &str,
) -> Result<(Vec<u32>, GaElement<FieldElem>)> {
    let obj = as_object(v, path, &["c", "e", "sign"])?;
    let mut coeff = parse_coeff(get(obj, "c", path)?, ring, &format!("{path}.c"))?;
    let exps = as_array(get(obj, "e", path)?, &format!("{path}.e"))?;
    if exps.len() != vars.len() {
        return Err(perr(
            &format!("{path}.e"),
            format!("expected {} exponents (one per variable)", vars.len()),
        ));
    }
    let e: Vec<u32> = exps
        .iter()
        .enumerate()
        .map(|(i, x)| as_u64(x, &format!("{path}.e[{i}]")).map(|v| v as u32))
        .collect::<Result<_>>()?;
    if let Some(sign) = obj.get("sign") {
        match as_i64(sign, &format!("{path}.sign"))? {
            1 => {}
            -1 => {
                let ops = FieldOps(ring.k());
                coeff = ring.ga_neg(&ops, &coeff)?;
            }
            other => {
                return Err(perr(
                    &format!("{path}.sign"),
                    format!("sign must be 1 or -1, got {other}"),
                ))
            }
        }
    }
    Ok((e, coeff))
}

/// `{"ring": {...}, "vars": [...], "gens": [[term, ...], ...]}`
pub fn parse_scheme(v: &Value, path: &str, cache: &LawCache) -> Result<AffinePresentation> {
    let obj = as_object(v, path, &["ring", "vars", "gens"])?;
    let ring = parse_ring(get(obj, "ring", path)?, &format!("{path}.ring"), cache)?;
    let vars: Vec<String> = as_array(get(obj, "vars", path)?, &format!("{path}.vars"))?
        .iter()
        .enumerate()
        .map(|(i, v)| as_str(v, &format!("{path}.vars[{i}]")).map(str::to_string))
        .collect::<Result<_>>()?;
    let mut gens = Vec::new();
    for (gi, gen) in as_array(get(obj, "gens", path)?, &format!("{path}.gens"))?
        .iter()
        .enumerate()
    {
        let gpath = format!("{path}.gens[{gi}]");
        let mut terms = Vec::new();
        for (ti, term) in as_array(gen, &gpath)?.iter().enumerate() {
            terms.push(parse_term(term, &ring, &vars, &format!("{gpath}[{ti}]"))?);
        }
        gens.push(GaPoly::from_terms(ring.clone(), vars.clone(), terms));
    }
    AffinePresentation::new(ring, vars, gens)
}

/// `{"source": scheme, "target": scheme, "images": {var: [term, ...]}}`
pub fn parse_morphism(v: &Value, path: &str, cache: &LawCache) -> Result<MorphismPresentation> {
    let obj = as_object(v, path, &["source", "target", "images"])?;
    let source = parse_scheme(get(obj, "source", path)?, &format!("{path}.source"), cache)?;
    let target = parse_scheme(get(obj, "target", path)?, &format!("{path}.target"), cache)?;
    let images_obj = get(obj, "images", path)?
        .as_object()
        .ok_or_else(|| perr(&format!("{path}.images"), "expected an object"))?;
    let mut images = BTreeMap::new();
    for (var, terms) in images_obj {
        let ipath = format!("{path}.images.{var}");
        let mut parsed = Vec::new();
        for (ti, term) in as_array(terms, &ipath)?.iter().enumerate() {
            parsed.push(parse_term(
                term,
                &source.ring,
                &source.vars,
                &format!("{ipath}[{ti}]"),
            )?);
        }
        images.insert(
            var.clone(),
            GaPoly::from_terms(source.ring.clone(), source.vars.clone(), parsed),
        );
    }
    MorphismPresentation::new(source, target, images)
}

/// `{"scheme": {...}, "identity": [[atom, ...] per variable], "smooth": bool}`
pub fn parse_group(v: &Value, path: &str, cache: &LawCache) -> Result<GroupSchemeSpec> {
    let obj = as_object(v, path, &["scheme", "identity", "smooth"])?;
    let pres = parse_scheme(get(obj, "scheme", path)?, &format!("{path}.scheme"), cache)?;
    let ids = as_array(get(obj, "identity", path)?, &format!("{path}.identity"))?;
    if ids.len() != pres.vars.len() {
        return Err(perr(
            &format!("{path}.identity"),
            format!("expected {} identity coordinates", pres.vars.len()),
        ));
    }
    let identity = ids
        .iter()
        .enumerate()
        .map(|(i, atoms)| parse_coeff(atoms, &pres.ring, &format!("{path}.identity[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let smooth = get(obj, "smooth", path)?
        .as_bool()
        .ok_or_else(|| perr(&format!("{path}.smooth"), "expected a boolean"))?;
    GroupSchemeSpec::new(pres, identity, None, smooth)
}

/// `{"type": "field" | "mixed" | "equal", ...}`
pub fn parse_extension(
    v: &Value,
    path: &str,
    cache: &LawCache,
    guard: u128,
) -> Result<ExtensionData> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr(path, "expected an object"))?;
    let ty = as_str(get(obj, "type", path)?, &format!("{path}.type"))?;
    match ty {
        "field" => {
            let obj = as_object(v, path, &["type", "p", "sub", "sup"])?;
            let p = as_u64(get(obj, "p", path)?, &format!("{path}.p"))?;
            let sub = parse_residue(get(obj, "sub", path)?, p, &format!("{path}.sub"))?;
            let sup = parse_residue(get(obj, "sup", path)?, p, &format!("{path}.sup"))?;
            ext_build_field(&sub, &sup, guard)
        }
        "mixed" => {
            let obj = as_object(v, path, &["type", "p", "residue_top", "eisenstein", "n"])?;
            let p = as_u64(get(obj, "p", path)?, &format!("{path}.p"))?;
            let k = parse_residue(
                get(obj, "residue_top", path)?,
                p,
                &format!("{path}.residue_top"),
            )?;
            let eisenstein: Vec<BigInt> = match obj.get("eisenstein") {
                None => Vec::new(),
                Some(e) => as_array(e, &format!("{path}.eisenstein"))?
                    .iter()
                    .enumerate()
                    .map(|(i, c)| as_i64(c, &format!("{path}.eisenstein[{i}]")).map(BigInt::from))
                    .collect::<Result<_>>()?,
            };
            let n = as_u64(get(obj, "n", path)?, &format!("{path}.n"))? as usize;
            if n == 0 {
                return Err(perr(&format!("{path}.n"), "n must be positive"));
            }
            let spec = if eisenstein.is_empty() {
                BaseRingSpec::unramified(k)
            } else {
                BaseRingSpec::mixed(k, eisenstein)?
            };
            ext_build_mixed(&spec, n, cache, guard)
        }
        "equal" => {
            let obj = as_object(v, path, &["type", "p", "residue", "base_level", "e"])?;
            let p = as_u64(get(obj, "p", path)?, &format!("{path}.p"))?;
            let k = parse_residue(get(obj, "residue", path)?, p, &format!("{path}.residue"))?;
            let base_level =
                as_u64(get(obj, "base_level", path)?, &format!("{path}.base_level"))? as usize;
            let e = as_u64(get(obj, "e", path)?, &format!("{path}.e"))? as usize;
            ext_build_equal(&k, base_level, e, cache, guard)
        }
        other => Err(perr(
            &format!("{path}.type"),
            format!("unknown extension type {other:?}"),
        )),
    }
}

// ------------------------------------------------------------- writers --

pub fn field_to_value(f: &FiniteField) -> Value {
    json!({"p": f.p(), "modulus": f.modulus()})
}

pub fn base_ring_to_value(spec: &BaseRingSpec) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "case".into(),
        Value::String(
            match spec.case {
                CharCase::Equal => "equal",
                CharCase::Mixed => "mixed",
            }
            .into(),
        ),
    );
    obj.insert("p".into(), json!(spec.k.p()));
    obj.insert("residue".into(), json!({"modulus": spec.k.modulus()}));
    if !spec.eisenstein.is_empty() {
        let coeffs: Vec<i64> = spec
            .eisenstein
            .iter()
            .map(|a| i64::try_from(a).expect("desk-scale Eisenstein coefficients"))
            .collect();
        obj.insert("eisenstein".into(), json!(coeffs));
    }
    Value::Object(obj)
}

pub fn ring_to_value(ring: &GreenbergAlgebra) -> Value {
    if ring.level() == 0 && ring.base().case == CharCase::Equal {
        json!({"field": field_to_value(ring.k())})
    } else {
        json!({"level": ring.level(), "base": base_ring_to_value(ring.base())})
    }
}

fn coords_to_value(ring: &GreenbergAlgebra, c: &GaElement<FieldElem>) -> Value {
    let k = ring.k();
    let coords: Vec<Value> = c
        .coords
        .iter()
        .map(|e| if k.deg() == 1 { json!(e[0]) } else { json!(e) })
        .collect();
    json!([["coords", coords]])
}

pub fn scheme_to_value(pres: &AffinePresentation) -> Value {
    let gens: Vec<Value> = pres
        .gens
        .iter()
        .map(|g| {
            let var_pos: BTreeMap<&str, usize> = pres
                .vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.as_str(), i))
                .collect();
            let terms: Vec<Value> = g
                .terms()
                .map(|(m, c)| {
                    let mut e = vec![0u32; pres.vars.len()];
                    for (i, &x) in m.0.iter().enumerate() {
                        e[var_pos[g.vars()[i].as_str()]] = x;
                    }
                    json!({"c": coords_to_value(&pres.ring, c), "e": e})
                })
                .collect();
            Value::Array(terms)
        })
        .collect();
    json!({
        "ring": ring_to_value(&pres.ring),
        "vars": pres.vars,
        "gens": gens,
    })
}

/// Canonical pretty text for any report or config value; serde_json keeps
/// object keys sorted, so output is byte-stable.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::solve;

    fn cache() -> LawCache {
        LawCache::disabled()
    }

    #[test]
    fn parse_field_and_reject_unknown_keys() {
        let v: Value = serde_json::from_str(r#"{"p":2,"modulus":[1,1,1]}"#).unwrap();
        let f = parse_field(&v, "field").unwrap();
        assert_eq!(f.order(), 4);
        let bad: Value = serde_json::from_str(r#"{"p":2,"modulus":[1],"extra":0}"#).unwrap();
        assert_eq!(parse_field(&bad, "field").unwrap_err().code(), "Parse");
    }

    #[test]
    fn parse_algebra_kinds() {
        let v: Value =
            serde_json::from_str(r#"{"kind":"dual_numbers","base":{"p":2,"modulus":[1]},"m":2}"#)
                .unwrap();
        let a = parse_algebra(&v, "alg", 4096).unwrap();
        assert_eq!(a.order(), 4);
        let v: Value = serde_json::from_str(
            r#"{"kind":"product","left":{"kind":"field","base":{"p":2,"modulus":[1]}},
                "right":{"kind":"field","base":{"p":2,"modulus":[1]}}}"#,
        )
        .unwrap();
        assert_eq!(parse_algebra(&v, "alg", 4096).unwrap().order(), 4);
    }

    #[test]
    fn parse_scheme_from_the_documented_example() {
        // y^2 - pi x over the mixed base W(F_2)[t]/(t^2 - 2) at level 1.
        let text = r#"{
            "ring": {"level": 1, "base": {"case": "mixed", "p": 2,
                     "residue": {"modulus": [1]}, "eisenstein": [0, -2]}},
            "vars": ["x", "y"],
            "gens": [[
                {"c": [["int", 1]], "e": [0, 2]},
                {"c": [["pi", 1]], "e": [1, 0], "sign": -1}
            ]]
        }"#;
        let v: Value = serde_json::from_str(text).unwrap();
        let pres = parse_scheme(&v, "scheme", &cache()).unwrap();
        assert_eq!(pres.vars, vec!["x", "y"]);
        assert_eq!(pres.gens.len(), 1);
        let alg = FiniteAlgebra::field(Arc::new(FiniteField::prime(2).unwrap()));
        // Solutions of y^2 = pi x in F_2[pi]/(pi^2): y in {0, pi} forces
        // y^2 = 0, so pi x = 0, i.e. x in {0, 1, pi, 1+pi} with pi x = 0:
        // x in {0, pi}. 2 * 2 = 4 solutions... enumerate to be sure.
        let out = solve(&pres, &alg, 1 << 20, false).unwrap();
        assert_eq!(out.count, 4);
    }

    #[test]
    fn scheme_value_round_trip() {
        let v: Value = serde_json::from_str(
            r#"{"ring":{"field":{"p":3,"modulus":[1]}},"vars":["x"],
                "gens":[[{"c":[["int",2]],"e":[2]},{"c":[["int",1]],"e":[0]}]]}"#,
        )
        .unwrap();
        let pres = parse_scheme(&v, "scheme", &cache()).unwrap();
        let rendered = scheme_to_value(&pres);
        let reparsed = parse_scheme(&rendered, "scheme", &cache()).unwrap();
        assert_eq!(pres, reparsed);
    }

    #[test]
    fn parse_extension_configs() {
        let v: Value = serde_json::from_str(
            r#"{"type":"mixed","p":2,"residue_top":{"modulus":[1,1,1]},"eisenstein":[0,-2],"n":1}"#,
        )
        .unwrap();
        let ext = parse_extension(&v, "ext", &cache(), 4096).unwrap();
        assert_eq!(ext.rank, 4);
        let v: Value = serde_json::from_str(
            r#"{"type":"field","p":2,"sub":{"modulus":[1]},"sup":{"modulus":[1,1,1]}}"#,
        )
        .unwrap();
        assert_eq!(parse_extension(&v, "ext", &cache(), 4096).unwrap().rank, 2);
        let v: Value = serde_json::from_str(
            r#"{"type":"equal","p":3,"residue":{"modulus":[1]},"base_level":0,"e":2}"#,
        )
        .unwrap();
        assert_eq!(parse_extension(&v, "ext", &cache(), 4096).unwrap().rank, 2);
    }

    #[test]
    fn strict_unknown_key_rejection_everywhere() {
        let v: Value = serde_json::from_str(
            r#"{"ring":{"field":{"p":2,"modulus":[1]}},"vars":["x"],"gens":[],"typo":1}"#,
        )
        .unwrap();
        assert!(parse_scheme(&v, "scheme", &cache()).is_err());
    }
}
