// Goldbach partitions, a parallel range scan, and the residue-class prime
// choices the induction relies on.

use std::error::Error;

use adq::goldbach::{choose_q_mod4, choose_r_mod8, goldbach_pair, scan_goldbach, unbalanced_split};
use adq::sieve::build_prime_set;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let primes = build_prime_set(200_000)?;

    for n in [4, 28, 100, 98_000] {
        let pair = goldbach_pair(&primes, n)?;
        println!("{n} = {} + {}", pair.p, pair.q);
    }

    let report = scan_goldbach(&primes, 4, 200_000, 4)?;
    println!(
        "scanned {} even numbers, {} exceptions",
        report.scanned,
        report.exceptions.len()
    );

    for m in [19, 21, 23] {
        println!("choose_q_mod4({m}) = {}", choose_q_mod4(m)?);
    }
    for q in [3, 13, 17, 23] {
        println!("choose_r_mod8({q}) = {}", choose_r_mod8(q)?);
    }
    for m in [2, 9, 27, 243] {
        match unbalanced_split(&primes, m)? {
            Some((p, q)) => println!("{} = {p} + {q} with {p} < {} < {q}", 2 * m + 2, m + 1),
            None => println!("no unbalanced split of {}", 2 * m + 2),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
