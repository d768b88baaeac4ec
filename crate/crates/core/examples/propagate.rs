// Constraint propagation from a partial assignment: forced zeros, a
// constant branch, and a contradiction.

use std::collections::BTreeMap;
use std::error::Error;

use adq::multfunc::EquationForm;
use adq::rational::q;
use adq::solver::{build_system, propagate, Branch, Propagation, Sym};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let system = build_system(EquationForm::Shifted, 17)?;
    println!(
        "{} constraints over {} symbols",
        system.constraints.len(),
        system.syms().len()
    );
    for c in system.constraints.iter().take(4) {
        println!("  {}: {} = 0", c.origin, c.poly);
    }

    let f2 = Sym::new(2, 1);
    let f3 = Sym::new(3, 1);
    for start in [
        vec![(f2, q(0))],
        vec![(f2, q(1))],
        vec![(f2, q(2)), (f3, q(-1))],
    ] {
        let mut branch = Branch::new(start.iter().cloned().collect::<BTreeMap<_, _>>());
        let label: Vec<String> = start.iter().map(|(s, v)| format!("{s} = {v}")).collect();
        match propagate(&system, &mut branch) {
            Propagation::Contradiction(c) => {
                println!("{{{}}}: contradiction at {c}", label.join(", "))
            }
            outcome => {
                let open: Vec<String> = system
                    .syms()
                    .into_iter()
                    .filter(|s| !branch.assignments.contains_key(s))
                    .map(|s| s.to_string())
                    .collect();
                println!(
                    "{{{}}}: {outcome:?}, unassigned [{}]",
                    label.join(", "),
                    open.join(", ")
                );
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
