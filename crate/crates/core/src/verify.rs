//! Seeded verification suites comparing operator-side and combinatorial-side
//! computations, with a JSON-serializable report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{qint, rat, rat_int, Deform, PolyMatrix, PolyScalar, RMatrix, RVector, Rational};
use crate::coxeter::enumerate_group;
use crate::error::{Error, Result};
use crate::fock::space::SpaceSpec;
use crate::fock::symmetrizer::{gram_min_eigenvalue, r_norm_bound, r_operator, r_operator_norm, symmetrizer};
use crate::moments::{
    corollary_case, operator_moment, operator_vector, vector_formula, wick_moment, CorollaryCase, IdentityReport,
    MomentProblem,
};
use crate::orthopoly::{moment_operator_identity, substitution_check, vacuum_polynomial_identity, OperatorModel};
use crate::partitions::{
    all_eps_words, enumerate_colored, format_eps, set_partitions, stats, ExtendedPartition, PartitionFilter,
};
use crate::qt::{qt_operator_moment, qt_wick, QtSpec};

pub const REPORT_VERSION: u32 = 1;

/// Seeded source of small random rationals (numerators in `[-5, 5]`,
/// denominators in `[1, 5]`).
pub struct InstanceGen {
    rng: ChaCha8Rng,
}

impl InstanceGen {
    pub fn new(seed: u64) -> Self {
        InstanceGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        rat(self.rng.gen_range(-5..=5), self.rng.gen_range(1..=5))
    }

    pub fn vector(&mut self, d: usize) -> RVector {
        (0..d).map(|_| self.rational()).collect()
    }

    pub fn symmetric(&mut self, d: usize) -> RMatrix {
        let mut m = RMatrix::zeros(d);
        for i in 0..d {
            for j in i..d {
                let v = self.rational();
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        m
    }

    /// Random `x_i`, `T_i`, `λ_i` on `space`; `zero_t` / `zero_lambda` pin
    /// those to zero.
    pub fn problem(&mut self, n: usize, space: &SpaceSpec, zero_t: bool, zero_lambda: bool) -> MomentProblem {
        let d = space.dim();
        let xs = (0..n).map(|_| self.vector(d)).collect();
        let ts = (0..n).map(|_| if zero_t { RMatrix::zeros(d) } else { self.symmetric(d) }).collect();
        let lambdas = (0..n).map(|_| if zero_lambda { Rational::zero() } else { self.rational() }).collect();
        MomentProblem::new(xs, ts, lambdas, space.clone()).expect("generated data is consistent")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    /// Zero every timing so that reports compare byte-for-byte.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.elapsed_ms = 0;
        }
        self
    }
}

/// Accumulates comparisons for one named check, keeping the first failure.
struct Check {
    name: String,
    start: Instant,
    count: usize,
    failure: Option<(String, String, String)>,
    last: (String, String),
    detail: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            start: Instant::now(),
            count: 0,
            failure: None,
            last: (String::new(), String::new()),
            detail: Vec::new(),
        }
    }

    fn record(&mut self, label: impl fmt::Display, r: &IdentityReport) {
        self.count += 1;
        self.last = (r.lhs.clone(), r.rhs.clone());
        if !r.equal && self.failure.is_none() {
            let where_ = r.first_difference.clone().unwrap_or_default();
            self.failure = Some((r.lhs.clone(), r.rhs.clone(), format!("{label}: {where_}")));
        }
    }

    fn expect(&mut self, label: impl fmt::Display, ok: bool, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        let r = IdentityReport {
            equal: ok,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            first_difference: (!ok).then(String::new),
        };
        self.record(label, &r);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.detail.push(s.into());
    }

    fn finish(self) -> CheckResult {
        let elapsed_ms = self.start.elapsed().as_millis() as u64;
        match self.failure {
            Some((lhs, rhs, at)) => CheckResult {
                name: self.name,
                status: Status::Fail,
                lhs,
                rhs,
                elapsed_ms,
                detail: Some(
                    std::iter::once(format!("first failure at {at}")).chain(self.detail).collect::<Vec<_>>().join("; "),
                ),
            },
            None => {
                let mut detail = vec![format!("{} comparisons", self.count)];
                detail.extend(self.detail);
                CheckResult {
                    name: self.name,
                    status: Status::Pass,
                    lhs: self.last.0,
                    rhs: self.last.1,
                    elapsed_ms,
                    detail: Some(detail.join("; ")),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Wick,
    Vector,
    Corollary,
    Fixtures,
    Qt,
    Fock,
    Orthopoly,
    Group,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Wick,
        Suite::Vector,
        Suite::Corollary,
        Suite::Fixtures,
        Suite::Qt,
        Suite::Fock,
        Suite::Orthopoly,
        Suite::Group,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Wick => "wick",
            Suite::Vector => "vector",
            Suite::Corollary => "corollary",
            Suite::Fixtures => "fixtures",
            Suite::Qt => "qt",
            Suite::Fock => "fock",
            Suite::Orthopoly => "orthopoly",
            Suite::Group => "group",
        }
    }

    /// Largest `n` used by default.
    pub fn default_n(self) -> usize {
        match self {
            Suite::Wick | Suite::Corollary | Suite::Qt | Suite::Fock | Suite::Group => 5,
            Suite::Vector => 4,
            Suite::Fixtures => 12,
            Suite::Orthopoly => 6,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Overrides the suite's largest `n`.
    pub n: Option<usize>,
    pub seed: u64,
    /// Random instances per `n` for the Wick suite.
    pub instances: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n: None, seed: 7, instances: 20 }
    }
}

fn signed_space(signs: &[i8], n: usize) -> SpaceSpec {
    SpaceSpec::with_signature(signs, n.max(1)).expect("valid signature")
}

/// Wick identity: operator side against the colored-partition sum, symbolic
/// in `(α, q)` for `n ≤ 4` and at `(α, q) = (-2/5, 3/10)` for `n = 5`.
pub fn check_wick(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n_max = opts.n.unwrap_or(5);
    let mut gen = InstanceGen::new(opts.seed);
    let mut out = Vec::new();
    for n in 1..=n_max {
        let (deform, mode) = if n <= 4 {
            (Deform::symbolic(), "symbolic")
        } else {
            (Deform::at(&rat(-2, 5), &rat(3, 10), &rat_int(0)), "alpha=-2/5,q=3/10")
        };
        let mut c = Check::new(format!("wick/n={n}/{mode}"));
        let space = signed_space(&[1, -1], n);
        for i in 0..opts.instances {
            let p = gen.problem(n, &space, false, false);
            let r = IdentityReport::scalars(&operator_moment(&p, &deform)?, &wick_moment(&p, &deform)?);
            c.record(format!("instance {i}"), &r);
        }
        out.push(c.finish());
    }
    Ok(out)
}

/// Vector-level formula for every `ε ∈ {∗, 1, ′}^n`.
pub fn check_vector(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n_max = opts.n.unwrap_or(4);
    let mut gen = InstanceGen::new(opts.seed);
    let deform = Deform::symbolic();
    let mut out = Vec::new();
    for n in 1..=n_max {
        let mut c = Check::new(format!("vector/n={n}/all-eps"));
        let space = signed_space(&[1, -1], n);
        for eps in all_eps_words(n) {
            for _ in 0..2 {
                let p = gen.problem(n, &space, false, true);
                let r =
                    IdentityReport::vectors(&operator_vector(&eps, &p, &deform)?, &vector_formula(&eps, &p, &deform)?);
                c.record(format!("eps={}", format_eps(&eps)), &r);
            }
        }
        out.push(c.finish());
    }
    Ok(out)
}

/// The three specialized sums against `wick_moment` at the matching
/// specialization.
pub fn check_corollaries(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n_max = opts.n.unwrap_or(5);
    let mut gen = InstanceGen::new(opts.seed);
    let sym = Deform::symbolic();
    let cases = [
        ("q-case(alpha=0,lambda=0)", CorollaryCase::QCase),
        ("gaussian(T=0,lambda=0)", CorollaryCase::Gaussian),
        ("free-alpha(q=0,lambda=0,J=I)", CorollaryCase::FreeAlpha),
    ];
    let mut out = Vec::new();
    for (label, case) in cases {
        let mut c = Check::new(format!("corollary/{label}"));
        for n in 1..=n_max {
            for i in 0..5 {
                let (p, deform) = match case {
                    CorollaryCase::QCase => (
                        gen.problem(n, &signed_space(&[1, -1], n), false, true),
                        sym.clone().with_alpha(PolyScalar::zero()),
                    ),
                    CorollaryCase::Gaussian => (gen.problem(n, &signed_space(&[1, -1], n), true, true), sym.clone()),
                    CorollaryCase::FreeAlpha => {
                        (gen.problem(n, &signed_space(&[1, 1], n), false, true), sym.clone().with_q(PolyScalar::zero()))
                    }
                };
                let r = IdentityReport::scalars(&wick_moment(&p, &deform)?, &corollary_case(case, &p, &deform)?);
                c.record(format!("n={n} instance {i}"), &r);
            }
        }
        out.push(c.finish());
    }
    Ok(out)
}

/// The three marked 12-point partitions and their printed statistics.
pub fn check_fixtures() -> Result<Vec<CheckResult>> {
    let cases = [
        ("{{1,4,6,7}_(-1,1,-1),{2},{3,5,10}'_(1,-1),{8,12}_(-1),{9,11}_(1)}", (3, 3)),
        ("{{1,4,6,7}_(-1,1,-1),{2},{3,5,10}_(1,-1),{8,12}_(-1),{9,11}_(1)}", (1, 3)),
        ("{{1,4,6,7}'_(-1,1,-1),{2},{3,5,10}_(1,-1),{8,12}_(-1),{9,11}_(1)}", (2, 4)),
    ];
    let mut out = Vec::new();
    for (k, (text, (max_c, max_l))) in cases.into_iter().enumerate() {
        let mut c = Check::new(format!("fixtures/example-{}", k + 1));
        let p: ExtendedPartition = text.parse()?;
        let s = stats(&p);
        let got = (s.rc, s.rnarc, s.narc, s.max_c, s.max_l);
        let want = (5, 1, 4, max_c, max_l);
        let show = |v: (usize, usize, usize, usize, usize)| {
            format!("rc={} rnarc={} Narc={} MaxC={} MaxL={}", v.0, v.1, v.2, v.3, v.4)
        };
        c.expect(text, got == want, show(got), show(want));
        out.push(c.finish());
    }
    Ok(out)
}

/// `φ̃(Y⁵) = t² + 2t + 3` at `q = 0`, and the `(q,t)` Wick sum against the
/// operator side.
pub fn check_qt(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n_max = opts.n.unwrap_or(5);
    let mut out = Vec::new();
    let mut c = Check::new("qt/Y^5 at q=0");
    let spec = QtSpec::new(1, 5)?;
    let d0 = Deform::symbolic().with_q(PolyScalar::zero());
    let xs = vec![vec![rat_int(1)]; 5];
    let ts = vec![RMatrix::identity(1); 5];
    let want: PolyScalar = "t^2 + 2*t + 3".parse()?;
    c.record("operator", &IdentityReport::scalars(&qt_operator_moment(&xs, &ts, &spec, &d0)?, &want));
    c.record("partition sum", &IdentityReport::scalars(&qt_wick(&xs, &ts, &spec, &d0)?, &want));
    out.push(c.finish());

    let mut gen = InstanceGen::new(opts.seed);
    let sym = Deform::symbolic();
    for d in 1..=2 {
        let mut c = Check::new(format!("qt/wick-vs-operator/d={d}"));
        for n in 1..=n_max {
            let spec = QtSpec::new(d, n.max(1))?;
            for i in 0..3 {
                let p = gen.problem(n, spec.space(), false, true);
                let r = IdentityReport::scalars(
                    &qt_operator_moment(&p.xs, &p.ts, &spec, &sym)?,
                    &qt_wick(&p.xs, &p.ts, &spec, &sym)?,
                );
                c.record(format!("n={n} instance {i}"), &r);
            }
        }
        out.push(c.finish());
    }
    Ok(out)
}

/// The four float parameter pairs `{±0.4} × {±0.3}`.
pub const FLOAT_SAMPLES: [(f64, f64); 4] = [(0.4, 0.3), (-0.4, 0.3), (0.4, -0.3), (-0.4, -0.3)];

/// Factorization of the symmetrizer, the norm bound on `R^{(n)}`, and Gram
/// positivity.
pub fn check_fock(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n_max = opts.n.unwrap_or(5);
    let sym = Deform::symbolic();
    let mut out = Vec::new();

    let mut c = Check::new("fock/factorization P(n) = (P(n-1) x I) R(n)");
    let signatures: [&[i8]; 5] = [&[1], &[-1], &[1, 1], &[1, -1], &[-1, -1]];
    for signs in signatures {
        for n in 1..=n_max.min(4) {
            let space = signed_space(signs, n);
            let lhs = symmetrizer(n, &space, &sym)?;
            let prev: PolyMatrix = symmetrizer(n - 1, &space, &sym)?.kron_identity(space.dim());
            let rhs = prev.try_mul(&r_operator(n, &space, &sym)?)?;
            let label = format!("signature {signs:?}, n={n}");
            let ok = lhs == rhs;
            c.expect(&label, ok, format!("P({n}) {}x{}", lhs.rows(), lhs.cols()), if ok { "equal" } else { "differs" });
        }
    }
    out.push(c.finish());

    let mut c = Check::new("fock/norm ||R(n)|| <= (1+|a||q|^(n-1))[n]_|q|");
    let space = signed_space(&[1, -1], n_max);
    for (alpha, q) in FLOAT_SAMPLES {
        for n in 1..=n_max {
            let norm = r_operator_norm(n, &space, alpha, q)?;
            let bound = r_norm_bound(n, alpha, q);
            let signed_bound = (1.0 + alpha.abs() * q.abs().powi(n as i32 - 1)) * qint(n as u32).eval_f64(0.0, q, 0.0);
            if norm > signed_bound + 1e-9 {
                c.note(format!(
                    "alpha={alpha} q={q} n={n}: norm {norm:.6} exceeds the signed-q form {signed_bound:.6}"
                ));
            }
            c.expect(
                format!("alpha={alpha} q={q} n={n}"),
                norm <= bound + 1e-9,
                format!("{norm:.12}"),
                format!("{bound:.12}"),
            );
        }
    }
    out.push(c.finish());

    let mut c = Check::new("fock/gram positivity");
    for (alpha, q) in FLOAT_SAMPLES {
        for n in 0..=n_max.min(4) {
            let ev = gram_min_eigenvalue(n, &space, alpha, q)?;
            c.expect(format!("alpha={alpha} q={q} n={n}"), ev > 0.0, format!("{ev:.6e}"), "> 0");
        }
    }
    out.push(c.finish());
    Ok(out)
}

/// `P_n(X)Ω = x^{⊗n}`, Jacobi moments against operator moments, and the
/// Al-Salam–Ismail substitution.
pub fn check_orthopoly(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n_max = opts.n.unwrap_or(6);
    let sym = Deform::symbolic();
    let mut out = Vec::new();
    for sign in [1i8, -1] {
        let mut c = Check::new(format!("orthopoly/P_n(B)Omega = x^n, xbar={}x", if sign == 1 { "" } else { "-" }));
        for (n, r) in vacuum_polynomial_identity(OperatorModel::TypeB { sign }, n_max.min(5), &sym)?.iter().enumerate()
        {
            c.record(format!("n={n}"), r);
        }
        out.push(c.finish());
    }
    for (label, model) in [("alphaq-poisson-B", OperatorModel::TypeB { sign: 1 }), ("qt-poisson", OperatorModel::Qt)] {
        let mut c = Check::new(format!("orthopoly/moments {label}"));
        for (n, r) in moment_operator_identity(model, n_max, &sym)?.iter().enumerate() {
            c.record(format!("n={n}"), r);
        }
        out.push(c.finish());
    }
    let mut c = Check::new("orthopoly/substitution U_n(ty)/t^n");
    let ts = [rat(1, 2), rat(1, 3), rat(3, 4)];
    for row in substitution_check(10, &ts)? {
        let label = format!("n={} t={}", row.n, row.t.as_deref().unwrap_or("symbolic"));
        c.expect(label, row.equal, &row.lhs, &row.rhs);
    }
    out.push(c.finish());
    Ok(out)
}

/// Group orders, reduced-word statistics, the length generating function,
/// and the colored-partition count.
pub fn check_group(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let n_max = opts.n.unwrap_or(5);
    let mut out = Vec::new();

    let mut c = Check::new("group/order 2^n n!");
    for n in 1..=n_max {
        let want: usize = (1 << n) * (1..=n).product::<usize>();
        let got = enumerate_group(n)?.len();
        c.expect(format!("n={n}"), got == want, got, want);
    }
    out.push(c.finish());

    let mut c = Check::new("group/reduced-word statistics well defined");
    for n in 1..=n_max.min(3) {
        let table = enumerate_group(n)?;
        for rec in table.elements() {
            for w in table.all_reduced_words(&rec.perm)? {
                let l1 = w.iter().filter(|&&g| g == 0).count() as u32;
                let l2 = w.len() as u32 - l1;
                c.expect(
                    format!("{} word {w:?}", rec.perm),
                    (l1, l2) == (rec.l1, rec.l2),
                    format!("({l1},{l2})"),
                    format!("({},{})", rec.l1, rec.l2),
                );
            }
        }
    }
    out.push(c.finish());

    let mut c = Check::new("group/sum a^l1 q^l2 = prod (1+a q^(k-1))[k]_q");
    for n in 1..=n_max.min(4) {
        let table = enumerate_group(n)?;
        let lhs: PolyScalar =
            table.elements().iter().map(|e| PolyScalar::alpha().pow(e.l1) * PolyScalar::q().pow(e.l2)).sum();
        let rhs: PolyScalar = (1..=n as u32)
            .map(|k| (PolyScalar::one() + PolyScalar::alpha() * PolyScalar::q().pow(k - 1)) * qint(k))
            .product();
        c.record(format!("n={n}"), &IdentityReport::scalars(&lhs, &rhs));
    }
    out.push(c.finish());

    let mut c = Check::new("group/|P^B(n)| = sum 2^(n - #blocks)");
    for n in 0..=7 {
        let got = enumerate_colored(n, PartitionFilter::All)?.len();
        let want: usize = set_partitions(n).iter().map(|p| 1usize << (n - p.len())).sum();
        c.expect(format!("n={n}"), got == want, got, want);
    }
    out.push(c.finish());
    Ok(out)
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    match suite {
        Suite::Wick => check_wick(opts),
        Suite::Vector => check_vector(opts),
        Suite::Corollary => check_corollaries(opts),
        Suite::Fixtures => check_fixtures(),
        Suite::Qt => check_qt(opts),
        Suite::Fock => check_fock(opts),
        Suite::Orthopoly => check_orthopoly(opts),
        Suite::Group => check_group(opts),
    }
}

/// Runs the given suites; checks are ordered by name.
pub fn run(suites: &[Suite], opts: &VerifyOptions) -> Result<Report> {
    let mut checks = Vec::new();
    for &s in suites {
        checks.extend(run_suite(s, opts)?);
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Report { version: REPORT_VERSION, checks })
}
