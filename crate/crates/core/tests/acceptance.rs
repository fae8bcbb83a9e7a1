use fockb::verify::{run_suite, CheckResult, Suite, VerifyOptions};

const SEED: u64 = 20240611;

fn criteria() -> Vec<(&'static str, Suite, VerifyOptions)> {
    let base = VerifyOptions { n: None, seed: SEED, instances: 20 };
    vec![
        ("1 wick identity, n<=4 symbolic and n=5 at (-2/5, 3/10)", Suite::Wick, VerifyOptions { n: Some(5), ..base }),
        ("2 vector formula for every eps, n<=4", Suite::Vector, VerifyOptions { n: Some(4), ..base }),
        ("3 specialized sums, n<=5", Suite::Corollary, VerifyOptions { n: Some(5), ..base }),
        ("4 marked partition statistics", Suite::Fixtures, base),
        ("5 (q,t) moments", Suite::Qt, VerifyOptions { n: Some(5), ..base }),
        ("6 factorization, norm bound, gram positivity", Suite::Fock, VerifyOptions { n: Some(5), ..base }),
        ("7 orthogonal polynomials", Suite::Orthopoly, VerifyOptions { n: Some(6), ..base }),
        ("8 group and counting", Suite::Group, VerifyOptions { n: Some(5), ..base }),
    ]
}

fn main() {
    let mut failed = Vec::new();
    for (label, suite, opts) in criteria() {
        let checks: Vec<CheckResult> = match run_suite(suite, &opts) {
            Ok(c) => c,
            Err(e) => {
                println!("FAIL  criterion {label}: error {e}");
                failed.push(label);
                continue;
            }
        };
        let ok = checks.iter().all(CheckResult::passed);
        println!("{}  criterion {label}", if ok { "PASS" } else { "FAIL" });
        for c in &checks {
            let detail = c.detail.as_deref().unwrap_or("");
            if c.passed() {
                println!("      ok    {} ({} ms) {detail}", c.name, c.elapsed_ms);
            } else {
                println!("      FAIL  {} lhs={} rhs={} {detail}", c.name, c.lhs, c.rhs);
            }
        }
        if !ok {
            failed.push(label);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
