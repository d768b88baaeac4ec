// Rediscovers the solution families of the bounded system and prints the
// values each one forces.
//
// ```sh
// cargo run --release --example classify
// ```

use std::error::Error;

use adq::multfunc::EquationForm;
use adq::solver::{classify, forced_values};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let shifted = classify(EquationForm::Shifted, 17)?;
    println!(
        "shifted, primes <= 17: {} families ({} branches pruned)",
        shifted.families.len(),
        shifted.pruned
    );
    for fam in &shifted.families {
        let f2 = fam
            .f2()
            .map(ToString::to_string)
            .unwrap_or_else(|| "?".into());
        let free: Vec<String> = fam.free.iter().map(ToString::to_string).collect();
        println!("  f(2) = {f2}, free: [{}]", free.join(", "));
    }
    for w in &shifted.warnings {
        println!("  warning: {w}");
    }

    println!(
        "\n  n  {}",
        shifted
            .families
            .iter()
            .map(|f| format!("{:>6}", f.f2().unwrap().to_string()))
            .collect::<String>()
    );
    let tables: Vec<_> = shifted
        .families
        .iter()
        .map(|f| forced_values(f, 18))
        .collect();
    for n in 3..=18 {
        let row: String = tables
            .iter()
            .map(|t| format!("{:>6}", t[n - 1].1.to_string().trim_end_matches("/1")))
            .collect();
        println!("{n:>3}  {row}");
    }

    let pm1 = classify(EquationForm::Primesm1, 17)?;
    println!(
        "\nprimesm1, primes <= 17: {} family, f(2) = {}",
        pm1.families.len(),
        pm1.families[0].f2().unwrap()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
