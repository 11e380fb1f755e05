//! The thirteen acceptance criteria, one PASS/FAIL line each. Criteria 1-12
//! are the seeded property suites; 13 runs the binary's selftest twice.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use homdend_core::checks::{run, Suite};

const SEED: u64 = 42;

struct Criterion {
    number: usize,
    suite: Suite,
    budget: Duration,
}

const fn criterion(number: usize, suite: Suite, secs: u64) -> Criterion {
    Criterion {
        number,
        suite,
        budget: Duration::from_secs(secs),
    }
}

const CRITERIA: [Criterion; 12] = [
    criterion(1, Suite::DeltaSquared, 120),
    criterion(2, Suite::MultiplicationAxioms, 30),
    criterion(3, Suite::ChainMap, 60),
    criterion(4, Suite::OperadLaws, 60),
    criterion(5, Suite::ObstructionCocycle, 60),
    criterion(6, Suite::FirstCohomology, 30),
    criterion(7, Suite::SecondCohomology, 60),
    criterion(8, Suite::Trivialization, 60),
    criterion(9, Suite::Constructors, 60),
    criterion(10, Suite::TwoRouteDifferential, 60),
    criterion(11, Suite::Duality, 120),
    criterion(12, Suite::UntwistedRegression, 60),
];

fn line(ok: bool, number: usize, name: &str, detail: &str) -> bool {
    println!(
        "{} criterion {number:>2} {name}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn selftest() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_homdend"))
        .args(["selftest", "--seed", &SEED.to_string()])
        .output()
        .map_err(|e| format!("cannot run homdend: {e}"))?;
    if !out.status.success() {
        return Err(format!(
            "selftest exited with {:?}:\n{}",
            out.status.code(),
            String::from_utf8_lossy(&out.stdout)
        ));
    }
    Ok(out.stdout)
}

fn determinism() -> bool {
    let start = Instant::now();
    let budget = Duration::from_secs(600);
    let result = selftest().and_then(|a| selftest().map(|b| (a, b)));
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok((a, b)) if a == b && elapsed <= budget => {
            (true, format!("{} identical bytes, {elapsed:.1?}", a.len()))
        }
        Ok((a, b)) if a == b => (false, format!("over budget: {elapsed:.1?} > {budget:?}")),
        Ok((a, b)) => (
            false,
            format!("transcripts differ ({} vs {} bytes)", a.len(), b.len()),
        ),
        Err(e) => (false, e),
    };
    line(ok, 13, "selftest-determinism", &detail)
}

fn main() -> ExitCode {
    let mut failures = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = run(c.suite, SEED);
        let elapsed = start.elapsed();
        let ok = outcome.passed() && elapsed <= c.budget;
        let mut detail = format!(
            "{} cases, {} failed, {elapsed:.1?} (budget {:?})",
            outcome.cases, outcome.failed, c.budget
        );
        for e in &outcome.examples {
            detail.push_str(&format!("\n    {e}"));
        }
        if !line(ok, c.number, c.suite.name(), &detail) {
            failures += 1;
        }
    }
    if !determinism() {
        failures += 1;
    }
    println!("{}/13 acceptance criteria passed", 13 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
