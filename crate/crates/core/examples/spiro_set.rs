// The set `H` of integers with capped prime exponents, the sets `H_n`, and
// the search for `q` with `m + q` in `H`.

use std::error::Error;

use adq::spiro::{HParams, SpiroSet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = HParams::default();
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 37, 67, 179, 997, 1009] {
        print!("cap({p}) = {}  ", params.h_cap(p)?);
    }
    println!();

    let h = SpiroSet::new(params);
    println!(
        "smallest non-member below 2*10^6: {:?}",
        h.smallest_non_member(2_000_000)
    );
    println!(
        "1009^2 in H: {}, 1009 * 1013 in H: {}",
        h.in_h(1009 * 1009),
        h.in_h(1009 * 1013)
    );

    println!("H_9 up to 40: {:?}", h.hn_stream(9, 40).collect::<Vec<_>>());
    println!("H_4 up to 20: {:?}", h.hn_stream(4, 20).collect::<Vec<_>>());
    let d = h.hn_density(12, 100_000)?;
    println!(
        "density of H_12 up to 10^5: {} ~ {:.5}",
        d.exact(),
        d.approx()
    );

    for m in [20, 10_000, 1_018_078] {
        println!("find_q_for_m({m}) = {:?}", h.find_q_for_m(m)?);
    }

    let minus = SpiroSet::new(params.with_minus_one(true));
    println!("with the -1 caps, 2^29 in H: {}", minus.in_h(1 << 29));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
