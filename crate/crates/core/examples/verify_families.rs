// The three built-in families checked against both forms of the equation,
// including an odd-squareful family with arbitrary prime-power values.

use std::collections::BTreeMap;
use std::error::Error;

use adq::multfunc::{
    check_equation, check_shift_implication, family, EquationForm, FamilyKind, MultiplicativeFn,
};
use adq::rational::{format_q, q, q_frac};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let limit = 2_000;
    let mut odd = BTreeMap::new();
    odd.insert((3, 2), q_frac(-7, 3));
    odd.insert((5, 3), q(11));
    let indicator = family(FamilyKind::OddSquarefulIndicator, &odd)?;

    for (f, form) in [
        (MultiplicativeFn::identity(), EquationForm::Shifted),
        (MultiplicativeFn::identity(), EquationForm::Primesm1),
        (MultiplicativeFn::one(), EquationForm::Shifted),
        (indicator.clone(), EquationForm::Shifted),
    ] {
        let v = check_equation(&f, form, limit);
        println!(
            "{:>14} {form:>8}: {} violations over pairs <= {limit}",
            f.name(),
            v.len()
        );
    }

    // f(2) = 0 fails the PRIMES-1 form immediately.
    let v = check_equation(&indicator, EquationForm::Primesm1, limit);
    println!("odd-squareful on primesm1: first violation {}", v[0]);

    println!("f(9 * 125) = {}", format_q(&indicator.eval(9 * 125)));

    let imp = check_shift_implication(&MultiplicativeFn::identity(), limit);
    println!(
        "identity: premise {}, conclusion {:?}",
        imp.premise_holds, imp.conclusion_holds
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
