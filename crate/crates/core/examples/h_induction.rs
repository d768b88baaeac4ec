// Extends `f(n) = n` over the members of `H` above a base bound, and finds
// `H_n` witnesses of the form `p + q - 2`.

use std::error::Error;

use adq::replay::{h_induction_replay, hn_witness, Case, Certificate};
use adq::spiro::{HParams, SpiroSet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (base, limit) = (1_000, 20_000);
    let cert = Certificate::build(limit + 1, 4)?;
    let h = SpiroSet::new(HParams::default());

    let report = h_induction_replay(&cert, &h, base, limit)?;
    println!(
        "members of H in ({base}, {limit}] established: {}, failures: {}",
        report.established_count(),
        report.failures.len()
    );
    println!("counters: {:?}", report.counters);
    let prime = report
        .outcomes
        .iter()
        .find(|o| o.case == Some(Case::HPrimeQ))
        .unwrap();
    let (q, two_s, k) = (prime.witnesses[0], prime.witnesses[1], prime.witnesses[2]);
    println!("f({n}): {n} + {q} - 2 = {two_s} * {k}", n = prime.n);

    for n in [2, 9, 31, 997] {
        match hn_witness(cert.primes(), &h, n, 10_000)? {
            Some(w) => println!("H_{n}: k = {}, k + 2 = {} + {}", w.k, w.p, w.q),
            None => println!("H_{n}: none"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
