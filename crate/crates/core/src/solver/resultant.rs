//! Resultants of bivariate polynomials, eliminating the second variable.

use num_traits::One;

use super::upoly::UPoly;
use crate::rational::Q;

/// `res_y(a, b)` where both arguments are given as coefficient lists in `y`
/// (lowest power first) whose entries are polynomials in `x`.
///
/// Computed as the Sylvester determinant with fraction-free (Bareiss)
/// elimination over `Q[x]`, so every intermediate division is exact.
pub fn resultant_y(a: &[UPoly], b: &[UPoly]) -> UPoly {
    let trim = |v: &[UPoly]| -> Vec<UPoly> {
        let mut v = v.to_vec();
        while v.last().is_some_and(UPoly::is_zero) {
            v.pop();
        }
        v
    };
    let a = trim(a);
    let b = trim(b);
    if a.is_empty() || b.is_empty() {
        return UPoly::zero();
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 && n == 0 {
        return UPoly::constant(Q::one());
    }
    if m == 0 {
        return pow(&a[0], n);
    }
    if n == 0 {
        return pow(&b[0], m);
    }
    let size = m + n;
    let mut mat = vec![vec![UPoly::zero(); size]; size];
    for row in 0..n {
        for (i, c) in a.iter().rev().enumerate() {
            mat[row][row + i] = c.clone();
        }
    }
    for row in 0..m {
        for (i, c) in b.iter().rev().enumerate() {
            mat[n + row][row + i] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn pow(p: &UPoly, k: usize) -> UPoly {
    (0..k).fold(UPoly::constant(Q::one()), |acc, _| &acc * p)
}

fn bareiss_det(mut mat: Vec<Vec<UPoly>>) -> UPoly {
    let size = mat.len();
    let mut negate = false;
    let mut prev = UPoly::constant(Q::one());
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    negate = !negate;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            mat[i][k] = UPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn c(v: i64) -> UPoly {
        UPoly::constant(q(v))
    }

    #[test]
    fn univariate_constants() {
        // res(y - 2, y - 5) = 2 - 5 = -3 (as polynomials in an absent x)
        let r = resultant_y(&[c(-2), c(1)], &[c(-5), c(1)]);
        assert_eq!(r, c(-3));
        // shared root gives zero
        let r = resultant_y(&[c(-2), c(1)], &[c(2), c(-3), c(1)]);
        assert!(r.is_zero());
    }

    #[test]
    fn eliminates_y() {
        // y - x = 0 and y^2 - 4 = 0  =>  x^2 - 4 = 0
        let x = UPoly::x();
        let a = vec![-&x, c(1)];
        let b = vec![c(-4), c(0), c(1)];
        let r = resultant_y(&a, &b);
        let (roots, rest) = r.rational_roots();
        assert_eq!(roots, vec![q(-2), q(2)]);
        assert_eq!(rest.degree(), Some(0));
    }
}
