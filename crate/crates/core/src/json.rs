//! Canonical JSON wire formats.
//!
//! Serialization is byte-stable: UTF-8, fixed key order per type, no
//! whitespace, rationals as canonical strings, never floating point.
//! `serialize(parse(serialize(x)))` reproduces `serialize(x)` exactly,
//! which is what makes golden files and round-trip tests byte-identical.
//!
//! Formats:
//!
//! ```text
//! algebra:      {"dim":n,"q":"p/q","basis":["e0",...],
//!                "products":[{"i":i,"j":j,"coeffs":{"k":"p/q",...}},...]}
//! bimodule:     {"algebra":<algebra or "path">,"vdim":m,"l":[...],"r":[...]}
//! matched pair: {"algA":...,"algB":...,"lA":[...],"rA":[...],"lB":[...],"rB":[...]}
//! double:       {"primal":<algebra>,"dualProducts":[<products>]}
//! ```
//!
//! Omitted `(i, j)` pairs are zero products and omitted `k` keys are zero
//! coefficients. Matrices are row-major flat arrays of rational strings.

use serde_json::Value;

use crate::algebra::{AlgebraRef, AlgebraSpec};
use crate::bimodule::Bimodule;
use crate::double::DoubleSpec;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tensor3};
use crate::matched_pair::MatchedPair;
use crate::rational::Rat;

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn push_products(out: &mut String, structure: &Tensor3) {
    out.push('[');
    let mut first_pair = true;
    let mut current: Option<(usize, usize)> = None;
    for (&(i, j, k), c) in structure.iter_nonzero() {
        if current != Some((i, j)) {
            if current.is_some() {
                out.push_str("}}");
            }
            if !first_pair {
                out.push(',');
            }
            first_pair = false;
            current = Some((i, j));
            out.push_str(&format!("{{\"i\":{i},\"j\":{j},\"coeffs\":{{"));
            out.push_str(&format!("\"{k}\":\"{c}\""));
        } else {
            out.push_str(&format!(",\"{k}\":\"{c}\""));
        }
    }
    if current.is_some() {
        out.push_str("}}");
    }
    out.push(']');
}

pub fn algebra_to_json(alg: &AlgebraSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\"dim\":{},\"q\":\"{}\",\"basis\":[",
        alg.dim(),
        alg.q()
    ));
    for (idx, name) in alg.basis_names().iter().enumerate() {
        if idx > 0 {
            out.push(',');
        }
        out.push_str(&format!("\"{}\"", escape_json(name)));
    }
    out.push_str("],\"products\":");
    push_products(&mut out, alg.structure());
    out.push('}');
    out
}

fn push_matrix_family(out: &mut String, maps: &[Matrix]) {
    out.push('[');
    for (idx, m) in maps.iter().enumerate() {
        if idx > 0 {
            out.push(',');
        }
        out.push('[');
        for (eidx, entry) in m.row_major().iter().enumerate() {
            if eidx > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{entry}\""));
        }
        out.push(']');
    }
    out.push(']');
}

pub fn bimodule_to_json(b: &Bimodule) -> String {
    let mut out = String::new();
    out.push_str("{\"algebra\":");
    out.push_str(&algebra_to_json(b.algebra()));
    out.push_str(&format!(",\"vdim\":{},\"l\":", b.vdim()));
    push_matrix_family(&mut out, b.left_maps());
    out.push_str(",\"r\":");
    push_matrix_family(&mut out, b.right_maps());
    out.push('}');
    out
}

pub fn matched_pair_to_json(p: &MatchedPair) -> String {
    let (l_a, r_a, l_b, r_b) = p.maps();
    let mut out = String::new();
    out.push_str("{\"algA\":");
    out.push_str(&algebra_to_json(p.alg_a()));
    out.push_str(",\"algB\":");
    out.push_str(&algebra_to_json(p.alg_b()));
    out.push_str(",\"lA\":");
    push_matrix_family(&mut out, l_a);
    out.push_str(",\"rA\":");
    push_matrix_family(&mut out, r_a);
    out.push_str(",\"lB\":");
    push_matrix_family(&mut out, l_b);
    out.push_str(",\"rB\":");
    push_matrix_family(&mut out, r_b);
    out.push('}');
    out
}

pub fn double_to_json(d: &DoubleSpec) -> String {
    let mut out = String::new();
    out.push_str("{\"primal\":");
    out.push_str(&algebra_to_json(d.primal()));
    out.push_str(",\"dualProducts\":");
    push_products(&mut out, d.dual().structure());
    out.push('}');
    out
}

fn syntax_error(e: serde_json::Error) -> Error {
    Error::parse(
        format!("line {} column {}", e.line(), e.column()),
        e.to_string(),
    )
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(at, "expected an object"))
}

fn field<'a>(v: &'a Value, name: &str, at: &str) -> Result<&'a Value> {
    as_object(v, at)?
        .get(name)
        .ok_or_else(|| Error::parse(format!("{at}.{name}"), "missing field"))
}

fn as_usize(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::parse(at, "expected a nonnegative integer"))
}

fn as_str<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::parse(at, "expected a string"))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(at, "expected an array"))
}

fn parse_rat(v: &Value, at: &str) -> Result<Rat> {
    let s = as_str(v, at)?;
    s.parse()
        .map_err(|_| Error::parse(at, format!("invalid rational {s:?}")))
}

fn parse_products(v: &Value, at: &str, dim: usize) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(dim);
    let mut seen = std::collections::BTreeSet::new();
    for (idx, entry) in as_array(v, at)?.iter().enumerate() {
        let here = format!("{at}[{idx}]");
        let i = as_usize(field(entry, "i", &here)?, &format!("{here}.i"))?;
        let j = as_usize(field(entry, "j", &here)?, &format!("{here}.j"))?;
        if i >= dim || j >= dim {
            return Err(Error::parse(
                &here,
                format!("indices ({i},{j}) out of range for dim {dim}"),
            ));
        }
        if !seen.insert((i, j)) {
            return Err(Error::parse(
                &here,
                format!("duplicate product entry for ({i},{j})"),
            ));
        }
        let coeffs = field(entry, "coeffs", &here)?;
        let coeffs_at = format!("{here}.coeffs");
        for (key, value) in as_object(coeffs, &coeffs_at)? {
            let k: usize = key
                .parse()
                .map_err(|_| Error::parse(&coeffs_at, format!("invalid index key {key:?}")))?;
            if k >= dim {
                return Err(Error::parse(
                    &coeffs_at,
                    format!("index {k} out of range for dim {dim}"),
                ));
            }
            let c = parse_rat(value, &format!("{coeffs_at}.{key}"))?;
            t.set(i, j, k, c)?;
        }
    }
    Ok(t)
}

fn parse_algebra_value(v: &Value, at: &str) -> Result<AlgebraRef> {
    let dim = as_usize(field(v, "dim", at)?, &format!("{at}.dim"))?;
    let q = parse_rat(field(v, "q", at)?, &format!("{at}.q"))?;
    let basis_at = format!("{at}.basis");
    let basis_values = as_array(field(v, "basis", at)?, &basis_at)?;
    if basis_values.len() != dim {
        return Err(Error::parse(
            &basis_at,
            format!("expected {dim} names, found {}", basis_values.len()),
        ));
    }
    let mut names = Vec::with_capacity(dim);
    for (idx, name) in basis_values.iter().enumerate() {
        names.push(as_str(name, &format!("{basis_at}[{idx}]"))?.to_string());
    }
    let structure = parse_products(field(v, "products", at)?, &format!("{at}.products"), dim)?;
    Ok(AlgebraSpec::new(q, names, structure)?.shared())
}

pub fn parse_algebra_json(s: &str) -> Result<AlgebraRef> {
    let v: Value = serde_json::from_str(s).map_err(syntax_error)?;
    parse_algebra_value(&v, "$")
}

fn parse_matrix_family(v: &Value, at: &str, dim: usize) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    for (idx, m) in as_array(v, at)?.iter().enumerate() {
        let here = format!("{at}[{idx}]");
        let flat = as_array(m, &here)?;
        if flat.len() != dim * dim {
            return Err(Error::parse(
                &here,
                format!(
                    "expected {} entries for a {dim}x{dim} matrix, found {}",
                    dim * dim,
                    flat.len()
                ),
            ));
        }
        let mut entries = Vec::with_capacity(flat.len());
        for (eidx, e) in flat.iter().enumerate() {
            entries.push(parse_rat(e, &format!("{here}[{eidx}]"))?);
        }
        out.push(Matrix::from_flat(dim, entries)?);
    }
    Ok(out)
}

/// The `algebra` field of a bimodule document: either inline or a path
/// to another file, resolved by the caller.
#[derive(Clone, Debug)]
pub enum AlgebraSource {
    Inline(AlgebraRef),
    FileRef(String),
}

/// Parsed bimodule document; the algebra may still need resolving.
#[derive(Clone, Debug)]
pub struct BimoduleDoc {
    pub algebra: Option<AlgebraSource>,
    pub vdim: usize,
    pub l: Vec<Matrix>,
    pub r: Vec<Matrix>,
}

impl BimoduleDoc {
    /// Finishes construction against an explicit algebra, ignoring any
    /// embedded source.
    pub fn with_algebra(self, algebra: AlgebraRef) -> Result<Bimodule> {
        Bimodule::new(algebra, self.vdim, self.l, self.r)
    }

    /// Finishes construction, resolving a file reference through the
    /// supplied loader.
    pub fn resolve(self, load: impl FnOnce(&str) -> Result<AlgebraRef>) -> Result<Bimodule> {
        let algebra = match &self.algebra {
            Some(AlgebraSource::Inline(alg)) => alg.clone(),
            Some(AlgebraSource::FileRef(path)) => load(path)?,
            None => {
                return Err(Error::parse(
                    "$.algebra",
                    "missing algebra; supply one inline or as a file reference",
                ))
            }
        };
        self.with_algebra(algebra)
    }
}

pub fn parse_bimodule_json(s: &str) -> Result<BimoduleDoc> {
    let v: Value = serde_json::from_str(s).map_err(syntax_error)?;
    let at = "$";
    let algebra = match as_object(&v, at)?.get("algebra") {
        None => None,
        Some(Value::String(path)) => Some(AlgebraSource::FileRef(path.clone())),
        Some(inner) => Some(AlgebraSource::Inline(parse_algebra_value(
            inner,
            "$.algebra",
        )?)),
    };
    let vdim = as_usize(field(&v, "vdim", at)?, "$.vdim")?;
    let l = parse_matrix_family(field(&v, "l", at)?, "$.l", vdim)?;
    let r = parse_matrix_family(field(&v, "r", at)?, "$.r", vdim)?;
    Ok(BimoduleDoc {
        algebra,
        vdim,
        l,
        r,
    })
}

pub fn parse_matched_pair_json(s: &str) -> Result<MatchedPair> {
    let v: Value = serde_json::from_str(s).map_err(syntax_error)?;
    let at = "$";
    let alg_a = parse_algebra_value(field(&v, "algA", at)?, "$.algA")?;
    let alg_b = parse_algebra_value(field(&v, "algB", at)?, "$.algB")?;
    let l_a = parse_matrix_family(field(&v, "lA", at)?, "$.lA", alg_b.dim())?;
    let r_a = parse_matrix_family(field(&v, "rA", at)?, "$.rA", alg_b.dim())?;
    let l_b = parse_matrix_family(field(&v, "lB", at)?, "$.lB", alg_a.dim())?;
    let r_b = parse_matrix_family(field(&v, "rB", at)?, "$.rB", alg_a.dim())?;
    MatchedPair::new(alg_a, alg_b, l_a, r_a, l_b, r_b)
}

pub fn parse_double_json(s: &str) -> Result<DoubleSpec> {
    let v: Value = serde_json::from_str(s).map_err(syntax_error)?;
    let primal = parse_algebra_value(field(&v, "primal", "$")?, "$.primal")?;
    let dual = parse_products(
        field(&v, "dualProducts", "$")?,
        "$.dualProducts",
        primal.dim(),
    )?;
    DoubleSpec::new(primal, dual)
}

/// Parses a bare `{"dualProducts":[...]}` document (or a full algebra
/// document, in which case its products are taken) against a known
/// primal dimension.
pub fn parse_dual_products_json(s: &str, dim: usize) -> Result<Tensor3> {
    let v: Value = serde_json::from_str(s).map_err(syntax_error)?;
    let obj = as_object(&v, "$")?;
    if let Some(products) = obj.get("dualProducts") {
        return parse_products(products, "$.dualProducts", dim);
    }
    if obj.contains_key("products") {
        let alg = parse_algebra_value(&v, "$")?;
        if alg.dim() != dim {
            return Err(Error::parse(
                "$.dim",
                format!("dual structure has dim {}, primal has dim {dim}", alg.dim()),
            ));
        }
        return Ok(alg.structure().clone());
    }
    Err(Error::parse(
        "$",
        "expected dualProducts or an algebra document",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::octonion::build_octonion;

    #[test]
    fn algebra_round_trip_is_byte_identical() {
        let alg = build_octonion(Rat::from(-1));
        let once = algebra_to_json(&alg);
        let parsed = parse_algebra_json(&once).unwrap();
        assert_eq!(*parsed, *alg);
        assert_eq!(algebra_to_json(&parsed), once);
    }

    #[test]
    fn rationals_serialize_canonically() {
        let alg = fixtures::scaled_one_dim(Rat::new(-2, 4), Rat::new(3, 6));
        let json = algebra_to_json(&alg);
        assert_eq!(
            json,
            "{\"dim\":1,\"q\":\"-1/2\",\"basis\":[\"e0\"],\"products\":[{\"i\":0,\"j\":0,\"coeffs\":{\"0\":\"1/2\"}}]}"
        );
    }

    #[test]
    fn omitted_products_mean_zero() {
        let json = "{\"dim\":2,\"q\":\"0\",\"basis\":[\"e0\",\"e1\"],\"products\":[]}";
        let alg = parse_algebra_json(json).unwrap();
        assert!(alg.basis_product(0, 0).is_zero());
        // Explicit zero coefficients are accepted and canonicalized away.
        let json2 = "{\"dim\":2,\"q\":\"0\",\"basis\":[\"e0\",\"e1\"],\"products\":[{\"i\":0,\"j\":0,\"coeffs\":{\"1\":\"0\"}}]}";
        let alg2 = parse_algebra_json(json2).unwrap();
        assert_eq!(algebra_to_json(&alg2), json);
    }

    #[test]
    fn parse_errors_carry_locations() {
        let err = parse_algebra_json("{\"dim\":2}").unwrap_err();
        assert!(matches!(&err, Error::Parse { at, .. } if at == "$.q"));
        let err = parse_algebra_json("not json").unwrap_err();
        assert!(matches!(&err, Error::Parse { at, .. } if at.starts_with("line ")));
        let err = parse_algebra_json(
            "{\"dim\":1,\"q\":\"1\",\"basis\":[\"e0\"],\"products\":[{\"i\":0,\"j\":3,\"coeffs\":{}}]}",
        )
        .unwrap_err();
        assert!(matches!(&err, Error::Parse { at, .. } if at == "$.products[0]"));
        let err =
            parse_algebra_json("{\"dim\":1,\"q\":\"1/0\",\"basis\":[\"e0\"],\"products\":[]}")
                .unwrap_err();
        assert!(matches!(&err, Error::Parse { at, .. } if at == "$.q"));
    }

    #[test]
    fn bimodule_round_trip() {
        let alg = fixtures::dual_numbers(Rat::zero());
        let b = Bimodule::regular(&alg);
        let json = bimodule_to_json(&b);
        let doc = parse_bimodule_json(&json).unwrap();
        let parsed = doc.resolve(|_| panic!("inline algebra expected")).unwrap();
        assert_eq!(bimodule_to_json(&parsed), json);
    }

    #[test]
    fn bimodule_file_reference_is_surfaced() {
        let json = "{\"algebra\":\"base.json\",\"vdim\":1,\"l\":[[\"1\"]],\"r\":[[\"1\"]]}";
        let doc = parse_bimodule_json(json).unwrap();
        assert!(matches!(doc.algebra, Some(AlgebraSource::FileRef(ref p)) if p == "base.json"));
        let alg = fixtures::one_dim_idempotent(Rat::zero());
        let b = doc.resolve(|_| Ok(alg.clone())).unwrap();
        assert!(b.check().verdict);
    }

    #[test]
    fn matched_pair_round_trip() {
        let pair = MatchedPair::direct_sum(
            fixtures::dual_numbers(Rat::one()),
            fixtures::diagonal_pair(Rat::one()),
        )
        .unwrap();
        let json = matched_pair_to_json(&pair);
        let parsed = parse_matched_pair_json(&json).unwrap();
        assert_eq!(matched_pair_to_json(&parsed), json);
    }

    #[test]
    fn double_round_trip_and_dual_products_forms() {
        let d = DoubleSpec::with_zero_dual(fixtures::dual_numbers(Rat::zero()));
        let json = double_to_json(&d);
        let parsed = parse_double_json(&json).unwrap();
        assert_eq!(double_to_json(&parsed), json);

        let t = parse_dual_products_json("{\"dualProducts\":[]}", 2).unwrap();
        assert_eq!(t.nonzero_count(), 0);
        let alg_json = algebra_to_json(&fixtures::dual_numbers(Rat::zero()));
        let t = parse_dual_products_json(&alg_json, 2).unwrap();
        assert_eq!(t.nonzero_count(), 3);
        assert!(parse_dual_products_json(&alg_json, 3).is_err());
    }
}
