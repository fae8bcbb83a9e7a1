//! Browser bindings: each exported function takes plain strings and returns a
//! JSON document, with an `error` field when the input is rejected.

use fockb::algebra::{parse_rational, rational_to_f64, Deform, PolyScalar, RMatrix, RVector, Rational};
use fockb::fock::SpaceSpec;
use fockb::moments::{operator_moment, wick_moment, MomentProblem};
use fockb::orthopoly::{format_ypoly, hankel_determinants, moments_from_jacobi, polys, Family, JacobiParams};
use fockb::partitions::{colored_stats, enumerate_colored, PartitionFilter};
use fockb::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

const MAX_MOMENT_N: usize = 6;
const MAX_PARTITION_N: usize = 7;
const MAX_ORTHOPOLY_N: usize = 16;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn optional(s: &str) -> Result<Option<Rational>> {
    let s = s.trim();
    if s.is_empty() {
        Ok(None)
    } else {
        parse_rational(s).map(Some)
    }
}

fn deform(alpha: Option<&Rational>, q: Option<&Rational>, t: Option<&Rational>) -> Deform {
    let mut d = Deform::symbolic();
    if let Some(a) = alpha {
        d = d.with_alpha(PolyScalar::constant(a.clone()));
    }
    if let Some(v) = q {
        d = d.with_q(PolyScalar::constant(v.clone()));
    }
    if let Some(v) = t {
        d = d.with_t(PolyScalar::constant(v.clone()));
    }
    d
}

fn vector(s: &str) -> Result<RVector> {
    s.split(',').map(|c| parse_rational(c.trim())).collect()
}

fn matrix(s: &str, d: usize) -> Result<RMatrix> {
    match s.trim() {
        "" | "zero" => Ok(RMatrix::zeros(d)),
        "identity" => Ok(RMatrix::identity(d)),
        rows => {
            let m = RMatrix::from_rows(rows.split(';').map(vector).collect::<Result<_>>()?)?;
            if m.dim() != d || !m.is_symmetric() {
                return Err(Error::Parameter(format!("T must be a symmetric {d}x{d} matrix")));
            }
            Ok(m)
        }
    }
}

/// Jacobi parameters, monic polynomials and moments of a family. Empty
/// parameters stay symbolic; when all are numeric the moments are also
/// evaluated and their Hankel determinants reported.
pub fn orthopoly_json(family: &str, n_max: usize, alpha: &str, q: &str, t: &str) -> Result<Value> {
    if n_max > MAX_ORTHOPOLY_N {
        return Err(Error::ResourceLimit(format!("N ≤ {MAX_ORTHOPOLY_N} in the demo")));
    }
    let fam = match family {
        "alpha-q" => Family::AlphaQPoissonB,
        "qt" => Family::QtPoisson,
        "al-salam-ismail" => Family::t_free_al_salam_ismail(),
        other => return Err(Error::Parse(format!("unknown family {other:?}"))),
    };
    let (a, qv, tv) = (optional(alpha)?, optional(q)?, optional(t)?);
    let jp = JacobiParams::family(&fam, &deform(a.as_ref(), qv.as_ref(), tv.as_ref()))?;
    let moments = moments_from_jacobi(&jp, n_max);
    let mut out = json!({
        "beta": (0..=n_max).map(|n| jp.beta(n).to_string()).collect::<Vec<_>>(),
        "gamma": (0..=n_max).map(|n| jp.gamma(n).to_string()).collect::<Vec<_>>(),
        "polynomials": polys(&jp, n_max).polys.iter().map(|p| format_ypoly(p)).collect::<Vec<_>>(),
        "moments": moments.iter().map(PolyScalar::to_string).collect::<Vec<_>>(),
    });
    let numeric: Option<Vec<f64>> = moments.iter().map(|m| m.as_constant().map(|c| rational_to_f64(&c))).collect();
    if let Some(values) = numeric {
        let k_max = n_max / 2;
        out["moments_f64"] = json!(values);
        out["hankel"] = json!(hankel_determinants(&values, k_max)?);
    }
    Ok(out)
}

/// `φ(B(x)^n)` with the same `x`, `T`, `λ` in every factor, from the
/// partition sum and from the Fock space.
pub fn field_moment_json(
    n: usize,
    signature: &str,
    x: &str,
    t: &str,
    lambda: &str,
    alpha: &str,
    q: &str,
) -> Result<Value> {
    if n > MAX_MOMENT_N {
        return Err(Error::ResourceLimit(format!("n ≤ {MAX_MOMENT_N} in the demo")));
    }
    let signs: Vec<i8> = signature
        .chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(Error::Parse("signature uses '+' and '-'".into())),
        })
        .collect::<Result<_>>()?;
    let space = SpaceSpec::with_signature(&signs, n.max(1))?;
    let xv = vector(x)?;
    if xv.len() != space.dim() {
        return Err(Error::Dimension(format!("x needs {} entries", space.dim())));
    }
    let lam = optional(lambda)?.unwrap_or_else(|| Rational::from_integer(0.into()));
    let prob = MomentProblem::uniform(n, xv, matrix(t, space.dim())?, lam, space)?;
    let (a, qv) = (optional(alpha)?, optional(q)?);
    let d = deform(a.as_ref(), qv.as_ref(), None);
    let rhs = wick_moment(&prob, &d)?;
    let lhs = operator_moment(&prob, &d)?;
    Ok(json!({
        "partition_side": rhs.to_string(),
        "operator_side": lhs.to_string(),
        "equal": lhs == rhs,
    }))
}

/// Colored partitions of `[n]` with their crossing and nesting statistics,
/// plus the joint distribution `Σ α^{Narc} q^{rc}`.
pub fn partitions_json(n: usize, filter: &str) -> Result<Value> {
    if n > MAX_PARTITION_N {
        return Err(Error::ResourceLimit(format!("n ≤ {MAX_PARTITION_N} in the demo")));
    }
    let filter: PartitionFilter = filter.parse()?;
    let mut dist = PolyScalar::zero();
    let rows: Vec<Value> = enumerate_colored(n, filter)?
        .iter()
        .map(|p| {
            let s = colored_stats(p);
            dist += PolyScalar::alpha().pow(s.narc as u32) * PolyScalar::q().pow(s.rc as u32);
            json!({
                "partition": p.to_string(),
                "rc": s.rc,
                "nest": s.nest,
                "rnarc": s.rnarc,
                "narc": s.narc,
                "out_arc": s.out_arc,
            })
        })
        .collect();
    Ok(json!({ "count": rows.len(), "distribution": dist.to_string(), "rows": rows }))
}

#[wasm_bindgen]
pub fn orthopoly(family: &str, n_max: usize, alpha: &str, q: &str, t: &str) -> String {
    respond(orthopoly_json(family, n_max, alpha, q, t))
}

#[wasm_bindgen]
pub fn field_moment(n: usize, signature: &str, x: &str, t: &str, lambda: &str, alpha: &str, q: &str) -> String {
    respond(field_moment_json(n, signature, x, t, lambda, alpha, q))
}

#[wasm_bindgen]
pub fn partitions(n: usize, filter: &str) -> String {
    respond(partitions_json(n, filter))
}
