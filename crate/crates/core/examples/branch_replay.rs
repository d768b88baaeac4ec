// The `f(2) = 0` and `f(2) = 1` branches: forced zeros with the odd
// squareful arguments left free, and the constant function.

use std::error::Error;

use adq::replay::{branch_replay, Certificate};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let limit = 10_000;
    let cert = Certificate::build(limit + 2, 4)?;

    let zero = branch_replay(&cert, 0, 18)?;
    println!("f(2) = 0, n <= 18: free {:?}", zero.free);

    let zero = branch_replay(&cert, 0, limit)?;
    println!(
        "f(2) = 0, n <= {limit}: {} forced to 0, {} free (first {:?}), {} failures",
        zero.established_count(),
        zero.free.len(),
        &zero.free[..8],
        zero.failures.len()
    );

    let one = branch_replay(&cert, 1, limit)?;
    println!(
        "f(2) = 1, n <= {limit}: {} values equal to 1, {} failures",
        one.established_count(),
        one.failures.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
