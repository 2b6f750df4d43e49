//! Complex determinants used for minors over `A`.

use num_complex::Complex64;

/// Determinant of a row-major `k x k` complex matrix.
///
/// Cofactor expansion for `k <= 3`, LU with partial pivoting above that.
pub fn det(entries: &[Complex64], k: usize) -> Complex64 {
    debug_assert_eq!(entries.len(), k * k);
    let a = |r: usize, c: usize| entries[r * k + c];
    match k {
        0 => Complex64::new(1.0, 0.0),
        1 => a(0, 0),
        2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
        3 => {
            a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
        }
        _ => lu_det(entries.to_vec(), k),
    }
}

fn lu_det(mut m: Vec<Complex64>, k: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&x, &y| m[x * k + col].norm().total_cmp(&m[y * k + col].norm()))
            .unwrap();
        let p = m[pivot * k + col];
        if p.re == 0.0 && p.im == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for c in 0..k {
                m.swap(pivot * k + c, col * k + c);
            }
            det = -det;
        }
        det *= p;
        for r in col + 1..k {
            let factor = m[r * k + col] / p;
            if factor.re == 0.0 && factor.im == 0.0 {
                continue;
            }
            for c in col..k {
                let v = m[col * k + c];
                m[r * k + c] -= factor * v;
            }
        }
    }
    det
}
