// Drives the command-line front end from code and reads its JSON report
// back.

use std::error::Error;

use adq::cli;
use adq::report::RunReport;
use adq::solver::Classification;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("adq-report-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let out = dir.join("families.json");

    let code = cli::run([
        "adq",
        "classify",
        "--form",
        "shifted",
        "--prime-limit",
        "17",
        "--out",
        out.to_str().unwrap(),
    ]);
    println!("classify exit status {code}");

    let report = RunReport::from_json(&std::fs::read_to_string(&out)?)?;
    let classification: Classification = serde_json::from_value(report.result.clone())?;
    println!(
        "{} families in {} ms",
        classification.families.len(),
        report.duration_ms
    );

    let code = cli::run([
        "adq",
        "forced",
        "--family-file",
        out.to_str().unwrap(),
        "--up-to",
        "12",
    ]);
    println!("forced exit status {code}");

    let code = cli::run(["adq", "goldbach", "scan", "--from", "4", "--to", "9"]);
    println!("odd bound exit status {code}");

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
