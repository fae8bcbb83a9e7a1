use fockb::algebra::matrix::{min_eigenvalue, spectral_norm};
use fockb::algebra::{fmt_rational, rational_to_f64, Deform, PolyMatrix, PolyScalar, RMatrix, Rational, ScalarMode};
use fockb::coxeter::enumerate_group;
use fockb::fock::symmetrizer::{annihilator_matrix, gauge_matrix, r_operator, symmetrizer};
use fockb::fock::{FockVector, SpaceSpec};
use fockb::moments::{operator_moment, operator_vector, vector_formula, wick_moment, IdentityReport, MomentProblem};
use fockb::orthopoly::{format_ypoly, moments_from_jacobi, polys, Family, JacobiParams};
use fockb::partitions::{
    enumerate_colored, enumerate_extended, enumerate_extended_eps, parse_eps, stats, ExtendedPartition, PartitionFilter,
};
use fockb::qt::{qt_operator_moment, qt_wick, QtSpec};
use fockb::verify::{self, InstanceGen, Suite, VerifyOptions, REPORT_VERSION};
use fockb::{Error, Result};
use serde_json::{json, Value};

use crate::input;
use crate::{
    FamilyArg, FilterArg, FockArgs, FockOperator, Format, GroupArgs, Mode, MomentArgs, OrthopolyArgs, Output,
    ParamArgs, PartitionArgs, QtArgs, VerifyArgs,
};

const MAX_ORTHOPOLY_N: usize = 24;

fn json_output(v: &Value, ok: bool) -> Result<Output> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))?;
    text.push('\n');
    Ok(Output { text, ok })
}

fn csv_output(header: &[&str], rows: Vec<Vec<String>>) -> Result<Output> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Output { text: String::from_utf8(bytes).expect("csv output is utf-8"), ok: true })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Symbolic => "symbolic",
        Mode::Rational => "rational",
        Mode::Float => "float",
    }
}

fn float_param(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().or_else(|_| input::rational(s).map(|r| rational_to_f64(&r)))
}

/// A parameter as given on the command line: absent, exact, or a float.
#[derive(Clone, Debug)]
enum Given {
    Var,
    Exact(Rational),
    Float(f64),
}

impl Given {
    fn parse(s: Option<&String>, mode: Mode) -> Result<Self> {
        Ok(match (s, mode) {
            (None, _) => Given::Var,
            (Some(s), Mode::Float) => Given::Float(float_param(s)?),
            (Some(s), _) => Given::Exact(input::rational(s)?),
        })
    }

    fn json(&self) -> Value {
        match self {
            Given::Var => Value::Null,
            Given::Exact(r) => json!(fmt_rational(r)),
            Given::Float(f) => json!(f),
        }
    }

    fn float(&self, name: &str) -> Result<f64> {
        match self {
            Given::Float(f) => Ok(*f),
            Given::Exact(r) => Ok(rational_to_f64(r)),
            Given::Var => Err(Error::Parameter(format!("float mode needs a value for {name}"))),
        }
    }

    fn exact(&self, name: &str) -> Result<Rational> {
        match self {
            Given::Exact(r) => Ok(r.clone()),
            _ => Err(Error::Parameter(format!("rational mode needs a value for {name}"))),
        }
    }
}

/// Resolved deformation: exact parameters are substituted, float parameters
/// are applied after the exact computation.
struct Params {
    mode: Mode,
    alpha: Given,
    q: Given,
    t: Given,
    deform: Deform,
}

impl Params {
    fn new(mode: Mode, alpha: Given, q: Given, t: Given, qt: bool) -> Result<Self> {
        let zero = Rational::from_integer(0.into());
        match mode {
            Mode::Symbolic => {}
            Mode::Rational => {
                let at = ScalarMode::RationalAt {
                    alpha: if qt { zero.clone() } else { alpha.exact("alpha")? },
                    q: q.exact("q")?,
                    t: if qt { t.exact("t")? } else { zero.clone() },
                };
                if qt {
                    at.validate_qt()?
                } else {
                    at.validate_type_b()?
                }
            }
            Mode::Float => {
                let at = ScalarMode::FloatAt {
                    alpha: if qt { 0.0 } else { alpha.float("alpha")? },
                    q: q.float("q")?,
                    t: if qt { t.float("t")? } else { 0.0 },
                };
                if qt {
                    at.validate_qt()?
                } else {
                    at.validate_type_b()?
                }
            }
        }
        let mut deform = Deform::symbolic();
        if let Given::Exact(a) = &alpha {
            deform = deform.with_alpha(PolyScalar::constant(a.clone()));
        }
        if let Given::Exact(v) = &q {
            deform = deform.with_q(PolyScalar::constant(v.clone()));
        }
        if let Given::Exact(v) = &t {
            deform = deform.with_t(PolyScalar::constant(v.clone()));
        }
        Ok(Params { mode, alpha, q, t, deform })
    }

    fn type_b(p: &ParamArgs) -> Result<Self> {
        let alpha = Given::parse(p.alpha.as_ref(), p.mode)?;
        let q = Given::parse(p.q.as_ref(), p.mode)?;
        Params::new(p.mode, alpha, q, Given::Var, false)
    }

    fn floats(&self) -> Result<(f64, f64, f64)> {
        let or_zero = |g: &Given| if matches!(g, Given::Var) { Ok(0.0) } else { g.float("") };
        Ok((or_zero(&self.alpha)?, or_zero(&self.q)?, or_zero(&self.t)?))
    }

    fn scalar(&self, p: &PolyScalar) -> Result<Value> {
        Ok(match self.mode {
            Mode::Float => {
                let (a, q, t) = self.floats()?;
                json!(p.eval_f64(a, q, t))
            }
            _ => json!(p.to_string()),
        })
    }

    fn describe(&self) -> Value {
        json!({
            "mode": mode_name(self.mode),
            "alpha": self.alpha.json(),
            "q": self.q.json(),
            "t": self.t.json(),
        })
    }
}

fn type_b_space(p: &ParamArgs, truncation: usize) -> Result<(SpaceSpec, String)> {
    let signs = match (&p.signature, p.d) {
        (Some(s), d) => {
            let signs = input::signature(s)?;
            if d.is_some_and(|d| d != signs.len()) {
                return Err(Error::Dimension(format!("signature {s:?} does not have length {}", d.unwrap())));
            }
            signs
        }
        (None, d) => vec![1; d.unwrap_or(1)],
    };
    let text: String = signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
    Ok((SpaceSpec::with_signature(&signs, truncation.max(1))?, text))
}

pub fn group(a: &GroupArgs) -> Result<Output> {
    let table = enumerate_group(a.n)?;
    if a.stats {
        let rows = table
            .elements()
            .iter()
            .map(|e| {
                let word: Vec<String> = e.reduced_word.iter().map(usize::to_string).collect();
                vec![e.perm.to_string(), e.l1.to_string(), e.l2.to_string(), word.join(" ")]
            })
            .collect();
        return csv_output(&["window", "l1", "l2", "word"], rows);
    }
    let gf: PolyScalar =
        table.elements().iter().map(|e| PolyScalar::alpha().pow(e.l1) * PolyScalar::q().pow(e.l2)).sum();
    json_output(
        &json!({
            "version": REPORT_VERSION,
            "n": a.n,
            "order": table.len(),
            "length_generating_function": gf.to_string(),
        }),
        true,
    )
}

pub fn partitions(a: &PartitionArgs) -> Result<Output> {
    let filter = match a.filter {
        FilterArg::All => PartitionFilter::All,
        FilterArg::NoSingletons => PartitionFilter::NoSingletons,
        FilterArg::PairsOnly => PartitionFilter::PairsOnly,
    };
    let keep = |p: &ExtendedPartition| match filter {
        PartitionFilter::All => true,
        PartitionFilter::NoSingletons => !p.base.has_singletons(),
        PartitionFilter::PairsOnly => p.base.is_pair_partition(),
    };
    let items: Vec<ExtendedPartition> = match (&a.eps, a.extended) {
        (Some(e), _) => {
            let eps = parse_eps(e)?;
            if eps.len() != a.n {
                return Err(Error::Dimension(format!("eps word {e:?} does not have length {}", a.n)));
            }
            enumerate_extended_eps(&eps)?.into_iter().filter(keep).collect()
        }
        (None, true) => enumerate_extended(a.n)?.into_iter().filter(keep).collect(),
        (None, false) => enumerate_colored(a.n, filter)?.into_iter().map(ExtendedPartition::unmarked).collect(),
    };
    let mut header = vec!["partition"];
    if a.stats {
        header.extend(["blocks", "rc", "nest", "rnarc", "narc", "max_c", "max_l", "m_left", "out_arc"]);
    }
    let rows = items
        .iter()
        .map(|p| {
            let mut row = vec![p.to_string()];
            if a.stats {
                let s = stats(p);
                row.push(p.base.blocks().len().to_string());
                for v in [s.rc, s.nest, s.rnarc, s.narc, s.max_c, s.max_l, s.m_left] {
                    row.push(v.to_string());
                }
                row.push(s.out_arc.map(|v| v.to_string()).unwrap_or_default());
            }
            row
        })
        .collect();
    csv_output(&header, rows)
}

fn matrix_json(m: &PolyMatrix, params: &Params) -> Result<Value> {
    Ok(match params.mode {
        Mode::Float => {
            let (a, q, t) = params.floats()?;
            let f = m.eval_f64(a, q, t);
            // adding 0.0 turns -0.0 into 0.0
            let rows: Vec<Vec<f64>> = (0..f.nrows()).map(|i| f.row(i).iter().map(|v| v + 0.0).collect()).collect();
            json!(rows)
        }
        _ => json!(m.to_strings()),
    })
}

pub fn fock(a: &FockArgs) -> Result<Output> {
    let params = Params::type_b(&a.params)?;
    let (space, signature) = type_b_space(&a.params, a.n)?;
    let d = space.dim();
    let deform = &params.deform;
    let m = match a.operator {
        FockOperator::Symmetrizer => symmetrizer(a.n, &space, deform)?,
        FockOperator::R => r_operator(a.n, &space, deform)?,
        FockOperator::Annihilator => {
            let x = match &a.x {
                Some(s) => input::vector(s, d)?,
                None => space.unit(0),
            };
            if a.n == 0 {
                return Err(Error::OutOfRange("the annihilator needs n ≥ 1".into()));
            }
            annihilator_matrix(a.n, &x, &space, deform)?
        }
        FockOperator::Gauge => {
            let t = input::matrix(a.t_matrix.as_deref().unwrap_or("identity"), d)?;
            gauge_matrix(a.n, &t, &space, deform)?
        }
    };
    let mut out = json!({
        "version": REPORT_VERSION,
        "operator": format!("{:?}", a.operator).to_lowercase(),
        "n": a.n,
        "d": d,
        "signature": signature,
        "parameters": params.describe(),
        "rows": m.rows(),
        "cols": m.cols(),
        "matrix": matrix_json(&m, &params)?,
    });
    if params.mode == Mode::Float {
        let (al, q, t) = params.floats()?;
        let f = m.eval_f64(al, q, t);
        out["spectral_norm"] = json!(spectral_norm(&f));
        if a.operator == FockOperator::Symmetrizer {
            out["min_eigenvalue"] = json!(min_eigenvalue(&f));
        }
    }
    json_output(&out, true)
}

fn vector_json(v: &FockVector, params: &Params) -> Result<Value> {
    let mut terms: Vec<(Vec<u8>, Value)> = Vec::new();
    for (w, c) in v.terms() {
        terms.push((w.clone(), params.scalar(c)?));
    }
    Ok(Value::Array(
        terms
            .into_iter()
            .map(|(w, c)| {
                let word: Vec<usize> = w.iter().map(|&l| l as usize + 1).collect();
                json!({ "word": word, "coeff": c })
            })
            .collect(),
    ))
}

fn report_json(lhs: Value, rhs: Value, r: &IdentityReport) -> Value {
    json!({
        "operator_side": lhs,
        "partition_side": rhs,
        "equal": r.equal,
        "first_difference": r.first_difference,
    })
}

pub fn moment(a: &MomentArgs) -> Result<Output> {
    let params = Params::type_b(&a.params)?;
    let (space, signature) = type_b_space(&a.params, a.n)?;
    let d = space.dim();
    let eps = a.eps.as_deref().map(parse_eps).transpose()?;
    if eps.as_ref().is_some_and(|e| e.len() != a.n) {
        return Err(Error::Dimension(format!("eps word does not have length {}", a.n)));
    }
    let prob = if a.data.random {
        InstanceGen::new(a.data.seed).problem(a.n, &space, false, eps.is_some())
    } else {
        let xs = input::per_factor(&a.data.x, a.n, "--x", |s| input::vector(s, d), space.unit(0))?;
        let ts = input::per_factor(&a.data.t_matrix, a.n, "--T", |s| input::matrix(s, d), RMatrix::zeros(d))?;
        let lambdas = input::per_factor(&a.lambda, a.n, "--lambda", input::rational, Rational::from_integer(0.into()))?;
        MomentProblem::new(xs, ts, lambdas, space)?
    };
    let deform = &params.deform;
    if let Some(eps) = eps {
        let rhs = vector_formula(&eps, &prob, deform)?;
        if !a.data.check {
            return Ok(Output { text: format!("{rhs}\n"), ok: true });
        }
        let lhs = operator_vector(&eps, &prob, deform)?;
        let r = IdentityReport::vectors(&lhs, &rhs);
        let mut out = report_json(vector_json(&lhs, &params)?, vector_json(&rhs, &params)?, &r);
        out["version"] = json!(REPORT_VERSION);
        out["n"] = json!(a.n);
        out["eps"] = json!(a.eps);
        out["signature"] = json!(signature);
        out["parameters"] = params.describe();
        return json_output(&out, r.equal);
    }
    let rhs = wick_moment(&prob, deform)?;
    if !a.data.check {
        return Ok(Output { text: format!("{}\n", scalar_text(&rhs, &params)?), ok: true });
    }
    let lhs = operator_moment(&prob, deform)?;
    let r = IdentityReport::scalars(&lhs, &rhs);
    let mut out = report_json(params.scalar(&lhs)?, params.scalar(&rhs)?, &r);
    out["version"] = json!(REPORT_VERSION);
    out["n"] = json!(a.n);
    out["signature"] = json!(signature);
    out["parameters"] = params.describe();
    json_output(&out, r.equal)
}

fn scalar_text(p: &PolyScalar, params: &Params) -> Result<String> {
    Ok(match params.scalar(p)? {
        Value::String(s) => s,
        v => v.to_string(),
    })
}

pub fn qt(a: &QtArgs) -> Result<Output> {
    let q = Given::parse(a.q.as_ref(), a.mode)?;
    let t = Given::parse(a.t.as_ref(), a.mode)?;
    let params = Params::new(a.mode, Given::Var, q, t, true)?;
    let spec = QtSpec::new(a.d, a.n.max(1))?;
    let (xs, ts) = if a.data.random {
        let p = InstanceGen::new(a.data.seed).problem(a.n, spec.space(), false, true);
        (p.xs, p.ts)
    } else {
        let d = a.d;
        (
            input::per_factor(&a.data.x, a.n, "--x", |s| input::vector(s, d), spec.space().unit(0))?,
            input::per_factor(&a.data.t_matrix, a.n, "--T", |s| input::matrix(s, d), RMatrix::zeros(d))?,
        )
    };
    let rhs = qt_wick(&xs, &ts, &spec, &params.deform)?;
    if !a.data.check {
        return Ok(Output { text: format!("{}\n", scalar_text(&rhs, &params)?), ok: true });
    }
    let lhs = qt_operator_moment(&xs, &ts, &spec, &params.deform)?;
    let r = IdentityReport::scalars(&lhs, &rhs);
    let mut out = report_json(params.scalar(&lhs)?, params.scalar(&rhs)?, &r);
    out["version"] = json!(REPORT_VERSION);
    out["n"] = json!(a.n);
    out["d"] = json!(a.d);
    out["parameters"] = params.describe();
    json_output(&out, r.equal)
}

pub fn orthopoly(a: &OrthopolyArgs) -> Result<Output> {
    if a.n_max > MAX_ORTHOPOLY_N {
        return Err(Error::ResourceLimit(format!("orthopoly needs N ≤ {MAX_ORTHOPOLY_N}")));
    }
    let given = |s: Option<&String>| Given::parse(s, Mode::Symbolic);
    let params =
        Params::new(Mode::Symbolic, given(a.alpha.as_ref())?, given(a.q.as_ref())?, given(a.t.as_ref())?, false)?;
    let (family, name) = match a.family {
        FamilyArg::AlphaQ => (Family::AlphaQPoissonB, "alpha-q"),
        FamilyArg::Qt => (Family::QtPoisson, "qt"),
        FamilyArg::AlSalamIsmail => (Family::t_free_al_salam_ismail(), "al-salam-ismail"),
    };
    let jp = JacobiParams::family(&family, &params.deform)?;
    let seq = polys(&jp, a.n_max);
    let moments = moments_from_jacobi(&jp, a.n_max);
    let n_range = 0..=a.n_max;
    match a.output {
        Format::Json => json_output(
            &json!({
                "version": REPORT_VERSION,
                "family": name,
                "N": a.n_max,
                "parameters": params.describe(),
                "beta": n_range.clone().map(|n| jp.beta(n).to_string()).collect::<Vec<_>>(),
                "gamma": n_range.clone().map(|n| jp.gamma(n).to_string()).collect::<Vec<_>>(),
                "polynomials": seq.polys.iter().map(|p| json!({
                    "text": format_ypoly(p),
                    "coefficients": p.iter().map(PolyScalar::to_string).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "moments": moments.iter().map(PolyScalar::to_string).collect::<Vec<_>>(),
            }),
            true,
        ),
        Format::Csv => csv_output(
            &["n", "beta", "gamma", "polynomial", "moment"],
            n_range
                .map(|n| {
                    vec![
                        n.to_string(),
                        jp.beta(n).to_string(),
                        jp.gamma(n).to_string(),
                        format_ypoly(seq.get(n)),
                        moments[n].to_string(),
                    ]
                })
                .collect(),
        ),
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Output> {
    let suites: Vec<Suite> = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
    let opts = VerifyOptions { n: a.n, seed: a.seed, instances: a.instances };
    let mut report = verify::run(&suites, &opts)?;
    if a.no_timing {
        report = report.without_timings();
    }
    let ok = report.all_passed();
    let v = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
    json_output(&v, ok)
}
