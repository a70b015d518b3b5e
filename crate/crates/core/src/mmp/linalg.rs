use crate::Scalar;

/// Gaussian elimination over an exact field; `None` when singular.
pub(crate) fn solve<F: Scalar>(mut a: Vec<Vec<F>>, mut rhs: Vec<F>) -> Option<Vec<F>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / pivot_row[col].clone();
            for (x, y) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = x.clone() - factor.clone() * y.clone();
            }
            rhs[r] = rhs[r].clone() - factor * rhs[col].clone();
        }
    }
    Some((0..n).map(|i| rhs[i].clone() / a[i][i].clone()).collect())
}
