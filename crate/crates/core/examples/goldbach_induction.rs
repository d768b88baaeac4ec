// The Goldbach induction: from `f(2) = 2` and the small table, every
// `f(n) = n` up to `N - 2`, with the case used at each step.

use std::error::Error;

use adq::replay::{lemma4_replay, Case, Certificate};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let big_n = 20_000;
    let cert = Certificate::build(big_n, 4)?;
    let report = lemma4_replay(&cert, big_n)?;
    println!(
        "established {} values, {} failures",
        report.established_count(),
        report.failures.len()
    );
    for (case, count) in &report.counters {
        println!("  {case:>18}: {count}");
    }
    for n in [20, 23, 21, 27] {
        let o = report.outcome(n).unwrap();
        println!(
            "f({n}): {} via {:?}, reads {:?}",
            o.case.unwrap(),
            o.witnesses,
            o.depends_on
        );
    }
    assert_eq!(
        report.outcome(27).unwrap().case,
        Some(Case::PrimePowerSplit)
    );
    report.check_well_founded()?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
