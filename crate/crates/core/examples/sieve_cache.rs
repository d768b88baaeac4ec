// Sieve primes, persist them to the cache directory, read them back, and
// factorize a few numbers.
//
// ```sh
// cargo run --example sieve_cache
// ```

use std::error::Error;

use adq::sieve::{factorize, load_or_build, Factorizer};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("adq-sieve-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let (primes, cached) = load_or_build(&dir, 1_000_000)?;
    println!("pi(10^6) = {} (from cache: {cached})", primes.count());
    let (again, cached) = load_or_build(&dir, 1_000_000)?;
    assert!(cached && again.count() == primes.count());
    println!("second load hit the cache");

    for n in [360, 1_018_081, 999_999_937, 600_851_475_143] {
        println!("{n} = {}", factorize(n)?);
    }
    let fast = Factorizer::new(1 << 20).with_primes(primes);
    println!("1009^2 * 2 = {}", fast.factorize(2 * 1009 * 1009)?);

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
