//! Canonical JSON form of certificates. Objects have sorted keys, rationals
//! are `"num/den"` strings in lowest terms and algebraic numbers carry a
//! primitive integer defining polynomial, an isolating interval and a root
//! index.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use super::{Bound, Certificate, CoveringInterval, FORMAT_VERSION};
use crate::arith::rational::{format_rational, parse_canonical_rational};
use crate::arith::{BigRational, MultiPoly, UPoly, VarOrder};
use crate::formula::{Constraint, Relation};
use crate::realroots::line::End;
use crate::realroots::RealAlgebraicNumber;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

fn schema(path: &str, message: impl Into<String>) -> CertificateError {
    CertificateError::Schema { path: path.to_string(), message: message.into() }
}

fn rational_json(q: &BigRational) -> Value {
    Value::String(format_rational(q))
}

fn poly_json(p: &MultiPoly) -> Value {
    Value::Array(p.terms().map(|(m, c)| json!([format_rational(c), m.exponents().to_vec()])).collect())
}

fn number_json(r: &RealAlgebraicNumber) -> Value {
    match r {
        RealAlgebraicNumber::Rational(q) => rational_json(q),
        RealAlgebraicNumber::Algebraic(a) => {
            let coeffs: Vec<Value> = a
                .defpoly()
                .integer_coeffs()
                .iter()
                .map(|c| Value::Number(Number::from_str(&c.to_string()).expect("integer literal")))
                .collect();
            json!({
                "defpoly": coeffs,
                "hi": format_rational(a.hi()),
                "index": a.index(),
                "lo": format_rational(a.lo()),
            })
        }
    }
}

fn bound_json(b: &Bound, infinite: &str) -> Value {
    match b {
        End::Infinite => json!({ "type": infinite }),
        End::Finite { value, closed } => json!({ "closed": closed, "type": "value", "value": number_json(value) }),
    }
}

fn interval_json(iv: &CoveringInterval) -> Value {
    let mut m = Map::new();
    m.insert("characterization".into(), Value::Array(iv.characterization.iter().map(poly_json).collect()));
    if let Some(ch) = &iv.children {
        m.insert("children".into(), Value::Array(ch.iter().map(interval_json).collect()));
    }
    m.insert("lower".into(), bound_json(&iv.lower, "neginf"));
    m.insert("reasons".into(), json!(iv.reasons));
    m.insert("sample".into(), number_json(&iv.sample));
    m.insert("upper".into(), bound_json(&iv.upper, "posinf"));
    Value::Object(m)
}

impl Certificate {
    pub fn to_json_value(&self) -> Value {
        let constraints: Vec<Value> = self
            .constraints
            .iter()
            .map(|c| json!({ "id": c.id, "poly": poly_json(&c.poly), "rel": c.relation.symbol() }))
            .collect();
        json!({
            "constraints": constraints,
            "covering": self.covering.iter().map(interval_json).collect::<Vec<_>>(),
            "producer": self.producer,
            "variables": self.order.names(),
            "version": FORMAT_VERSION,
        })
    }

    /// Canonical single-line JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
        let v: Value = serde_json::from_str(text).map_err(|e| CertificateError::Json(e.to_string()))?;
        Certificate::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Certificate, CertificateError> {
        let top = object(v, "$")?;
        let version = field(top, "version", "$")?.as_u64();
        if version != Some(FORMAT_VERSION) {
            return Err(schema("$.version", format!("expected {FORMAT_VERSION}")));
        }
        let names: Vec<String> = array(field(top, "variables", "$")?, "$.variables")?
            .iter()
            .enumerate()
            .map(|(i, n)| {
                n.as_str().map(str::to_string).ok_or_else(|| schema(&format!("$.variables[{i}]"), "expected a name"))
            })
            .collect::<Result<_, _>>()?;
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(schema("$.variables", "duplicate variable"));
        }
        let order = VarOrder::new(names);
        let mut constraints = Vec::new();
        for (i, c) in array(field(top, "constraints", "$")?, "$.constraints")?.iter().enumerate() {
            let path = format!("$.constraints[{i}]");
            let o = object(c, &path)?;
            let id = usize_of(field(o, "id", &path)?, &format!("{path}.id"))?;
            let poly = parse_poly(field(o, "poly", &path)?, &order, &format!("{path}.poly"))?;
            let rel = field(o, "rel", &path)?
                .as_str()
                .and_then(|s| s.parse::<Relation>().ok())
                .ok_or_else(|| schema(&format!("{path}.rel"), "expected a relation"))?;
            if constraints.iter().any(|d: &Constraint| d.id == id) {
                return Err(schema(&format!("{path}.id"), "duplicate constraint id"));
            }
            constraints.push(Constraint::new(id, poly, rel).map_err(|e| schema(&path, e.to_string()))?);
        }
        let covering = parse_covering(field(top, "covering", "$")?, &order, "$.covering")?;
        let producer =
            field(top, "producer", "$")?.as_str().ok_or_else(|| schema("$.producer", "expected a string"))?.to_string();
        Ok(Certificate { order, constraints, covering, producer })
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, CertificateError> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, CertificateError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, CertificateError> {
    o.get(key).ok_or_else(|| schema(path, format!("missing field `{key}`")))
}

fn usize_of(v: &Value, path: &str) -> Result<usize, CertificateError> {
    v.as_u64().and_then(|n| usize::try_from(n).ok()).ok_or_else(|| schema(path, "expected a nonnegative integer"))
}

fn rational_of(v: &Value, path: &str) -> Result<BigRational, CertificateError> {
    v.as_str()
        .and_then(parse_canonical_rational)
        .ok_or_else(|| schema(path, "expected a canonical rational \"num/den\""))
}

fn parse_poly(v: &Value, order: &VarOrder, path: &str) -> Result<MultiPoly, CertificateError> {
    let mut terms = Vec::new();
    for (i, t) in array(v, path)?.iter().enumerate() {
        let tp = format!("{path}[{i}]");
        let pair = array(t, &tp)?;
        if pair.len() != 2 {
            return Err(schema(&tp, "expected [coefficient, exponents]"));
        }
        let c = rational_of(&pair[0], &format!("{tp}[0]"))?;
        let exps = array(&pair[1], &format!("{tp}[1]"))?
            .iter()
            .map(|e| e.as_u64().and_then(|n| u32::try_from(n).ok()))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| schema(&format!("{tp}[1]"), "expected exponents"))?;
        terms.push((c, exps));
    }
    MultiPoly::from_terms(order, terms).map_err(|e| schema(path, e.to_string()))
}

fn parse_number(v: &Value, path: &str) -> Result<RealAlgebraicNumber, CertificateError> {
    if v.is_string() {
        return Ok(RealAlgebraicNumber::Rational(rational_of(v, path)?));
    }
    let o = object(v, path)?;
    let coeffs = array(field(o, "defpoly", path)?, &format!("{path}.defpoly"))?
        .iter()
        .map(|c| match c {
            Value::Number(n) => BigInt::from_str(&n.to_string()).ok().map(BigRational::from_integer),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| schema(&format!("{path}.defpoly"), "expected integer coefficients"))?;
    let lo = rational_of(field(o, "lo", path)?, &format!("{path}.lo"))?;
    let hi = rational_of(field(o, "hi", path)?, &format!("{path}.hi"))?;
    let index = usize_of(field(o, "index", path)?, &format!("{path}.index"))?;
    RealAlgebraicNumber::from_parts(&UPoly::new(coeffs), &lo, &hi, index).map_err(|e| schema(path, e.to_string()))
}

fn parse_bound(v: &Value, infinite: &str, path: &str) -> Result<Bound, CertificateError> {
    let o = object(v, path)?;
    let kind = field(o, "type", path)?.as_str().ok_or_else(|| schema(&format!("{path}.type"), "expected a string"))?;
    if kind == infinite {
        return Ok(End::Infinite);
    }
    if kind != "value" {
        return Err(schema(&format!("{path}.type"), format!("expected \"{infinite}\" or \"value\"")));
    }
    let closed =
        field(o, "closed", path)?.as_bool().ok_or_else(|| schema(&format!("{path}.closed"), "expected a boolean"))?;
    let value = parse_number(field(o, "value", path)?, &format!("{path}.value"))?;
    Ok(End::Finite { value, closed })
}

fn parse_covering(v: &Value, order: &VarOrder, path: &str) -> Result<Vec<CoveringInterval>, CertificateError> {
    let mut out = Vec::new();
    for (i, iv) in array(v, path)?.iter().enumerate() {
        let ip = format!("{path}[{i}]");
        let o = object(iv, &ip)?;
        let reasons = array(field(o, "reasons", &ip)?, &format!("{ip}.reasons"))?
            .iter()
            .map(|r| usize_of(r, &format!("{ip}.reasons")))
            .collect::<Result<Vec<_>, _>>()?;
        if reasons.windows(2).any(|w| w[0] >= w[1]) {
            return Err(schema(&format!("{ip}.reasons"), "reasons must be sorted and distinct"));
        }
        let characterization = array(field(o, "characterization", &ip)?, &format!("{ip}.characterization"))?
            .iter()
            .enumerate()
            .map(|(j, p)| parse_poly(p, order, &format!("{ip}.characterization[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let children = match o.get("children") {
            None => None,
            Some(c) => Some(parse_covering(c, order, &format!("{ip}.children"))?),
        };
        out.push(CoveringInterval {
            lower: parse_bound(field(o, "lower", &ip)?, "neginf", &format!("{ip}.lower"))?,
            upper: parse_bound(field(o, "upper", &ip)?, "posinf", &format!("{ip}.upper"))?,
            sample: parse_number(field(o, "sample", &ip)?, &format!("{ip}.sample"))?,
            reasons,
            characterization,
            children,
        });
    }
    Ok(out)
}
