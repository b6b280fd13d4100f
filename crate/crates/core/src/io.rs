//! Text formats: forms, simplicial complexes and classification reports.
//!
//! A form file is a JSON object
//! `{"n": 7, "p": 3, "field": "Q" | {"sqrt": d}, "terms": [{"idx": [1,2,3],
//! "coeff": "1/2" | {"a": "0", "b": "1/2"}}, ...]}`.
//! Indices are 1-based and may come in any order; they are sign-normalized
//! on load.  Coefficients are exact fraction strings; the object variant is
//! `a + b*sqrt(d)` in the declared field.

use crate::builtins;
use crate::exterior::PForm;
use crate::matrix::Matrix;
use crate::orbit::{Certificate, OrbitLabel, StabilizerInfo};
use crate::scalar::Scalar;
use crate::simplicial::SimplicialComplex;
use crate::whitney::EmbeddedComplex;
use crate::{Error, Result};
use num::rational::BigRational;
use serde_json::{json, Map, Value};
use std::str::FromStr;

fn parse_fraction(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|e| Error::Parse(format!("bad fraction {text:?}: {e}")))
}

fn scalar_from_value(v: &Value, field_d: Option<u64>) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(Scalar::from_rational(parse_fraction(s)?)),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::from_int(i))
            } else {
                Err(Error::Parse(format!(
                    "non-integer numeric coefficient {n}; use a fraction string"
                )))
            }
        }
        Value::Object(obj) => {
            let d = field_d.ok_or_else(|| {
                Error::Parse("quadratic coefficient in a rational-field file".into())
            })?;
            let a = obj
                .get("a")
                .map(|x| scalar_from_value(x, None))
                .transpose()?
                .unwrap_or_else(Scalar::zero);
            let b = obj
                .get("b")
                .map(|x| scalar_from_value(x, None))
                .transpose()?
                .unwrap_or_else(Scalar::zero);
            Ok(Scalar::quadratic(
                a.rational_part().clone(),
                b.rational_part().clone(),
                d,
            ))
        }
        _ => Err(Error::Parse(format!("bad coefficient {v}"))),
    }
}

fn scalar_to_value(s: &Scalar) -> Value {
    if s.is_rational() {
        Value::String(s.rational_part().to_string())
    } else {
        json!({
            "a": s.rational_part().to_string(),
            "b": s.surd_part().to_string(),
        })
    }
}

/// Parse a form from its JSON text representation.
pub fn form_from_json(text: &str) -> Result<PForm> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    form_from_value(&v)
}

pub fn form_from_value(v: &Value) -> Result<PForm> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("form file must be a JSON object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing ambient dimension \"n\"".into()))? as u32;
    let p = obj
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing degree \"p\"".into()))? as u32;
    let field_d = match obj.get("field") {
        None => None,
        Some(Value::String(s)) if s == "Q" => None,
        Some(Value::Object(f)) => Some(
            f.get("sqrt")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("field object needs integer \"sqrt\"".into()))?,
        ),
        Some(other) => return Err(Error::Parse(format!("bad field spec {other}"))),
    };
    let mut form = PForm::zero(n, p);
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"terms\" array".into()))?;
    for (line, term) in terms.iter().enumerate() {
        let t = term
            .as_object()
            .ok_or_else(|| Error::Parse(format!("term {line}: expected an object")))?;
        let idx: Vec<u32> = t
            .get("idx")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("term {line}: missing \"idx\"")))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&i| i >= 1 && i <= n as u64)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::Parse(format!("term {line}: bad index {x} for n={n}")))
            })
            .collect::<Result<_>>()?;
        if idx.len() as u32 != p {
            return Err(Error::Parse(format!(
                "term {line}: {} indices for a degree-{p} form",
                idx.len()
            )));
        }
        let coeff = t
            .get("coeff")
            .ok_or_else(|| Error::Parse(format!("term {line}: missing \"coeff\"")))?;
        let c = scalar_from_value(coeff, field_d)
            .map_err(|e| Error::Parse(format!("term {line}: {e}")))?;
        form.add_term(&idx, c);
    }
    Ok(form)
}

/// Serialize a form to the JSON text format.
pub fn form_to_json(form: &PForm) -> Value {
    let field = match form.discriminant() {
        None => json!("Q"),
        Some(d) => json!({ "sqrt": d }),
    };
    let terms: Vec<Value> = form
        .terms()
        .map(|(idx, c)| {
            json!({
                "idx": idx.indices().collect::<Vec<u32>>(),
                "coeff": scalar_to_value(c),
            })
        })
        .collect();
    json!({ "n": form.n(), "p": form.degree(), "field": field, "terms": terms })
}

/// Load a form: either a file path or `builtin:NAME`.
pub fn load_form(spec: &str, k: Option<u32>) -> Result<PForm> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtins::builtin(name, k);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::Parse(format!("cannot read {spec:?}: {e}")))?;
    form_from_json(&text)
}

/// Parse a complex file
/// `{"vertices": m, "simplices": [[..], ..], "coords": [[..], ..]?}`.
pub fn complex_from_json(text: &str) -> Result<(SimplicialComplex, Option<EmbeddedComplex>)> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("complex file must be a JSON object".into()))?;
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing \"vertices\"".into()))? as usize;
    let simplices: Vec<Vec<usize>> = obj
        .get("simplices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"simplices\"".into()))?
        .iter()
        .map(|s| {
            s.as_array()
                .ok_or_else(|| Error::Parse("simplex must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|i| i as usize)
                        .ok_or_else(|| Error::Parse(format!("bad vertex {x}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let complex = SimplicialComplex::from_faces(vertices, &simplices)?;
    let embedded = match obj.get("coords") {
        None => None,
        Some(Value::Array(rows)) => {
            let coords: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::Parse("coordinate row must be an array".into()))?
                        .iter()
                        .map(|x| match x {
                            Value::String(s) => parse_fraction(s),
                            Value::Number(n) => n
                                .as_i64()
                                .map(|i| BigRational::from_integer(i.into()))
                                .ok_or_else(|| Error::Parse(format!("bad coordinate {n}"))),
                            _ => Err(Error::Parse(format!("bad coordinate {x}"))),
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            Some(EmbeddedComplex::new(complex.clone(), coords)?)
        }
        Some(other) => return Err(Error::Parse(format!("bad coords {other}"))),
    };
    Ok((complex, embedded))
}

fn matrix_to_value(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| scalar_to_value(m.get(i, j)))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn vectors_to_value(vs: &[Vec<Scalar>]) -> Value {
    Value::Array(
        vs.iter()
            .map(|v| Value::Array(v.iter().map(scalar_to_value).collect()))
            .collect(),
    )
}

/// Classification report object for the CLI.
pub fn classification_report(label: &OrbitLabel, info: &StabilizerInfo) -> Value {
    let mut certs = Map::new();
    match &label.certificate {
        Certificate::None => {}
        Certificate::TwoFormEven { top } => {
            certs.insert("top_power".into(), scalar_to_value(top));
        }
        Certificate::Pseudoplectic { line } => {
            certs.insert(
                "kernel_line".into(),
                vectors_to_value(std::slice::from_ref(line)),
            );
        }
        Certificate::Sl3R {
            lambda,
            hitchin,
            vol,
            eig_plus,
            eig_minus,
        } => {
            certs.insert("lambda".into(), scalar_to_value(lambda));
            certs.insert("hitchin_map".into(), matrix_to_value(hitchin));
            if let Some(v) = vol {
                certs.insert("vol".into(), scalar_to_value(v));
                certs.insert("eigenspace_plus".into(), vectors_to_value(eig_plus));
                certs.insert("eigenspace_minus".into(), vectors_to_value(eig_minus));
            } else {
                // vol = sqrt(lambda) is irrational: scaled certificate, with
                // a decimal rendering alongside
                certs.insert("vol_squared".into(), scalar_to_value(lambda));
                certs.insert("vol_approx".into(), json!(lambda.to_f64().sqrt()));
            }
        }
        Certificate::Sl3C {
            lambda,
            hitchin,
            vol,
        } => {
            certs.insert("lambda".into(), scalar_to_value(lambda));
            certs.insert("hitchin_map".into(), matrix_to_value(hitchin));
            if let Some(v) = vol {
                certs.insert("vol".into(), scalar_to_value(v));
            } else {
                certs.insert("vol_approx".into(), json!((-lambda.to_f64()).sqrt() / 2.0));
            }
        }
        Certificate::Parabolic { hitchin, kernel } => {
            certs.insert("hitchin_map".into(), matrix_to_value(hitchin));
            certs.insert("kernel".into(), vectors_to_value(kernel));
        }
        Certificate::SevenDim {
            qhat,
            det_q,
            signature,
            metric,
            vol,
        } => {
            certs.insert("q_matrix".into(), matrix_to_value(qhat));
            certs.insert("det_q".into(), scalar_to_value(det_q));
            certs.insert(
                "signature".into(),
                json!([signature.0, signature.1, signature.2]),
            );
            if let Some(g) = metric {
                certs.insert("metric".into(), matrix_to_value(g));
            }
            if let Some(v) = vol {
                certs.insert("vol".into(), scalar_to_value(v));
            } else {
                let d = det_q.to_f64();
                certs.insert(
                    "vol_approx".into(),
                    json!(d.signum() * d.abs().powf(1.0 / 9.0)),
                );
            }
        }
        Certificate::Ossymplectic { pfaffian } => {
            certs.insert("pfaffian".into(), scalar_to_value(pfaffian));
        }
        Certificate::Ospseudoplectic {
            theta,
            plane,
            conformal,
        } => {
            certs.insert(
                "theta".into(),
                vectors_to_value(std::slice::from_ref(theta)),
            );
            certs.insert("plane".into(), vectors_to_value(plane));
            certs.insert("conformal_class".into(), form_to_json(conformal));
        }
        Certificate::Degenerate { rank } => {
            certs.insert("rank".into(), json!(rank));
        }
    }
    json!({
        "label": label.family.name(),
        "stable": info.stable,
        "stab_dim": info.dim,
        "certificates": Value::Object(certs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_round_trip() {
        let phi = builtins::phi0();
        let text = serde_json::to_string(&form_to_json(&phi)).unwrap();
        let back = form_from_json(&text).unwrap();
        assert_eq!(back, phi);

        let zeta = builtins::zeta_s();
        let text = serde_json::to_string(&form_to_json(&zeta)).unwrap();
        let back = form_from_json(&text).unwrap();
        assert_eq!(back, zeta);
    }

    #[test]
    fn indices_are_sign_normalized() {
        let text = r#"{"n": 4, "p": 2, "field": "Q",
            "terms": [{"idx": [2, 1], "coeff": "1/2"}, {"idx": [1, 2], "coeff": "3/2"}]}"#;
        let f = form_from_json(text).unwrap();
        let mut expect = PForm::zero(4, 2);
        expect.add_term(&[1, 2], Scalar::one());
        assert_eq!(f, expect);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(form_from_json("{}").is_err());
        assert!(
            form_from_json(r#"{"n": 4, "p": 2, "terms": [{"idx": [1], "coeff": "1"}]}"#).is_err()
        );
        assert!(
            form_from_json(r#"{"n": 4, "p": 2, "terms": [{"idx": [1, 5], "coeff": "1"}]}"#)
                .is_err()
        );
        assert!(
            form_from_json(r#"{"n": 4, "p": 2, "terms": [{"idx": [1, 2], "coeff": "x"}]}"#)
                .is_err()
        );
        // quadratic coefficient without a field declaration
        assert!(form_from_json(
            r#"{"n": 4, "p": 2, "terms": [{"idx": [1, 2], "coeff": {"a": "0", "b": "1"}}]}"#
        )
        .is_err());
    }

    #[test]
    fn complex_round_trip() {
        let text = r#"{"vertices": 3, "simplices": [[0, 1, 2]],
            "coords": [[0, 0], [1, 0], [0, 1]]}"#;
        let (c, e) = complex_from_json(text).unwrap();
        assert_eq!(c.count(1), 3);
        assert!(e.is_some());
    }
}
