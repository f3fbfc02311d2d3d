//! Presentation matrices over `Z[s, s^-1]`.

use itertools::Itertools;

use super::Matrix;
use crate::error::{Error, Result};
use crate::laurent::{gcd, CanonicalForm, Laurent};
use crate::scalar::Coeff;

/// Default cap on the number of maximal minors enumerated.
pub const DEFAULT_MAX_MINORS: u128 = 100_000;

/// The elementary ideal of a presented module, as its explicit generator
/// list, together with the gcd of those generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryIdeal<T: Coeff> {
    /// Maximal minors, one per choice of columns in lexicographic order.
    pub generators: Vec<Laurent<T>>,
    pub delta: CanonicalForm<T>,
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All maximal minors of an `n x m` presentation matrix (rows are
/// generators) and their gcd.
///
/// With more generators than relations the ideal is zero by convention.
/// Fails with [`Error::SizeCap`] when `C(m, n)` exceeds `max_minors`.
pub fn maximal_minors<T: Coeff>(p: &Matrix<Laurent<T>>, max_minors: u128) -> Result<ElementaryIdeal<T>> {
    let (n, m) = (p.rows(), p.cols());
    if n > m {
        return Ok(ElementaryIdeal { generators: vec![Laurent::zero()], delta: Laurent::zero().canonicalize() });
    }
    let count = binomial(m, n);
    if count > max_minors {
        return Err(Error::SizeCap { what: "maximal minors", count, cap: max_minors });
    }
    let generators: Vec<Laurent<T>> = (0..m).combinations(n).map(|cols| p.select_columns(&cols).det()).collect();
    let delta = generators.iter().fold(Laurent::zero().canonicalize(), |g, x| gcd(g.as_poly(), x));
    Ok(ElementaryIdeal { generators, delta })
}

/// The twisted Alexander polynomial of the presented module: the gcd of the
/// maximal minors, canonicalized.
pub fn maximal_minor_gcd<T: Coeff>(p: &Matrix<Laurent<T>>, max_minors: u128) -> Result<CanonicalForm<T>> {
    maximal_minors(p, max_minors).map(|ideal| ideal.delta)
}

/// Rank over the fraction field of `Z[s, s^-1]`.
pub fn rank_over_fractions<T: Coeff>(p: &Matrix<Laurent<T>>) -> usize {
    p.rank()
}

/// `sI - H` for a square integer matrix `H`.
pub fn char_matrix<T: Coeff>(h: &Matrix<T>) -> Matrix<Laurent<T>> {
    assert!(h.is_square(), "characteristic matrix of a non-square matrix");
    Matrix::from_fn(h.rows(), h.cols(), |i, j| {
        let c = Laurent::constant(-h[(i, j)].clone());
        if i == j {
            &c + &Laurent::var()
        } else {
            c
        }
    })
}

/// Classical adjugate: `adj(P) * P = P * adj(P) = det(P) * I`.
pub fn adjugate<T: Coeff>(p: &Matrix<Laurent<T>>) -> Matrix<Laurent<T>> {
    p.adjugate()
}
