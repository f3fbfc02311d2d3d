//! Seifert matrices: the classical Alexander polynomial, homology of cyclic
//! branched covers, and characters on that homology.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{cokernel_invariants, surjection_onto_cyclic, CokernelInvariants, Matrix};
use crate::laurent::{resultant_with_cyclotomic, CanonicalForm, Laurent};
use crate::scalar::Coeff;

/// A Seifert matrix of a knot: square, even-sized, with
/// `det(S - S^T) = ±1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix<T: Coeff>(Matrix<T>);

impl<T: Coeff> SeifertMatrix<T> {
    pub fn new(s: Matrix<T>) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::InvalidSeifert(format!("{}x{} is not square", s.rows(), s.cols())));
        }
        if !s.rows().is_multiple_of(2) {
            return Err(Error::InvalidSeifert(format!("odd size {}", s.rows())));
        }
        let det = s.sub(&s.transpose()).det();
        if !det.is_unit() {
            return Err(Error::InvalidSeifert(format!("det(S - S^T) = {det}, expected ±1")));
        }
        Ok(SeifertMatrix(s))
    }

    /// The unknot's empty matrix.
    pub fn unknot() -> Self {
        SeifertMatrix(Matrix::zeros(0, 0))
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }

    /// `2g`.
    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn genus(&self) -> usize {
        self.0.rows() / 2
    }
}

impl<T: Coeff> fmt::Debug for SeifertMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeifertMatrix{}", self.0)
    }
}

impl<T: Coeff> fmt::Display for SeifertMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// `det(tS - S^T)`, canonicalized.
pub fn alexander_polynomial<T: Coeff>(s: &SeifertMatrix<T>) -> CanonicalForm<T> {
    let m = s.matrix();
    let p = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        Laurent::from_coeffs(0, vec![-m[(j, i)].clone(), m[(i, j)].clone()])
    });
    p.det().canonicalize()
}

fn check_d(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("branched covers need d >= 2, got {d}")));
    }
    Ok(())
}

/// Block tridiagonal presentation of `H_1` of the `d`-fold branched cover:
/// `(d-1) x (d-1)` blocks with `S + S^T` on the diagonal, `-S^T` above and
/// `-S` below. Rows are the generators `gamma_ij`, ordered with `i` fastest.
pub fn branched_presentation<T: Coeff>(s: &SeifertMatrix<T>, d: u32) -> Result<Matrix<T>> {
    check_d(d)?;
    let m = s.matrix();
    let k = m.rows();
    let blocks = d as usize - 1;
    Ok(Matrix::from_fn(k * blocks, k * blocks, |row, col| {
        let (bi, i) = (row / k, row % k);
        let (bj, j) = (col / k, col % k);
        if bi == bj {
            m[(i, j)].clone() + m[(j, i)].clone()
        } else if bj == bi + 1 {
            -m[(j, i)].clone()
        } else if bi == bj + 1 {
            -m[(i, j)].clone()
        } else {
            T::zero()
        }
    }))
}

/// Position of `gamma_ij` (both 1-based) among the presentation rows.
pub fn gamma_index(size: usize, i: usize, j: usize) -> usize {
    (j - 1) * size + (i - 1)
}

pub fn branched_homology<T: Coeff>(s: &SeifertMatrix<T>, d: u32) -> Result<CokernelInvariants<T>> {
    Ok(cokernel_invariants(&branched_presentation(s, d)?))
}

/// Group order from the Smith form against the cyclotomic resultant of the
/// Alexander polynomial; 0 stands for an infinite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantCheck<T> {
    pub d: u32,
    pub homology: CokernelInvariants<T>,
    pub snf_order: T,
    pub resultant: T,
    pub agree: bool,
}

pub fn resultant_order_check<T: Coeff>(s: &SeifertMatrix<T>, d: u32) -> Result<ResultantCheck<T>> {
    let homology = branched_homology(s, d)?;
    let snf_order = homology.order().as_resultant();
    let resultant = resultant_with_cyclotomic(alexander_polynomial(s).as_poly(), d)?;
    Ok(ResultantCheck { d, agree: snf_order == resultant, homology, snf_order, resultant })
}

/// `R_d = |Res(Δ(t), t^d - 1)|` for `d = 2..=dmax`.
pub fn resultant_sweep<T: Coeff>(s: &SeifertMatrix<T>, dmax: u32) -> Result<Vec<(u32, T)>> {
    let delta = alexander_polynomial(s);
    (2..=dmax).map(|d| Ok((d, resultant_with_cyclotomic(delta.as_poly(), d)?))).collect()
}

/// `H = S^-1 S^T` and `det(H^n - I)`, a presentation of the `n`-fold
/// branched cover when `S` is unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyPower<T: Coeff> {
    pub n: u32,
    pub h: Matrix<T>,
    pub h_power: Matrix<T>,
    pub det: T,
}

impl<T: Coeff> MonodromyPower<T> {
    /// `det(H^n) + 1 - tr(H^n)`, which equals `det` for 2x2 matrices.
    pub fn trace_formula(&self) -> Option<T> {
        if self.h_power.rows() != 2 {
            return None;
        }
        let trace = self.h_power[(0, 0)].clone() + self.h_power[(1, 1)].clone();
        Some(self.h_power.det() + T::one() - trace)
    }
}

pub fn monodromy_power_presentation<T: Coeff>(s: &SeifertMatrix<T>, n: u32) -> Result<MonodromyPower<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let m = s.matrix();
    let det = m.det();
    if !det.is_unit() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    // S^-1 = det(S) adj(S) since det(S) = ±1
    let h = m.adjugate().scale(&det).matmul(&m.transpose());
    let h_power = h.pow(n);
    let det = h_power.sub(&Matrix::identity(h.rows())).det();
    Ok(MonodromyPower { n, h, h_power, det })
}

/// Adjacent generators `gamma_ij`, `gamma_i(j+1)` on which a character
/// differs. `j + 1 == d` marks the padded comparison against 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Jump {
    /// 1-based handle index.
    pub i: usize,
    /// 1-based sheet index.
    pub j: usize,
    /// `chi(gamma_ij) - chi(gamma_i(j+1))` reduced mod `r`.
    pub difference: u64,
    /// Order of the difference in `Z/r`.
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterJump {
    pub r: u64,
    /// Value on each presentation row.
    pub character: Vec<u64>,
    pub jump: Option<Jump>,
}

/// A surjection from `H_1` of the `d`-fold branched cover onto `Z/r` and
/// the first pair of adjacent generators it separates. Pairs within the
/// presentation are scanned first; only for `d = 2`, which has none, is the
/// missing `d`-th sheet taken to be 0.
pub fn character_jump<T: Coeff>(s: &SeifertMatrix<T>, d: u32, r: u64) -> Result<Option<CharacterJump>> {
    let a = branched_presentation(s, d)?;
    let Some(character) = surjection_onto_cyclic(&a, r)? else {
        return Ok(None);
    };
    let size = s.size();
    let value = |i: usize, j: usize| if j == d as usize { 0 } else { character[gamma_index(size, i, j)] };
    let last = if d == 2 { 1 } else { d as usize - 2 };
    let jump = (1..=size).flat_map(|i| (1..=last).map(move |j| (i, j))).find_map(|(i, j)| {
        let difference = (value(i, j) + r - value(i, j + 1)) % r;
        (difference != 0).then(|| Jump { i, j, difference, order: r / num_integer::gcd(difference, r) })
    });
    Ok(Some(CharacterJump { r, character, jump }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{kills_relations, GroupOrder};
    use num_bigint::BigInt;

    fn im(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols).unwrap()
    }

    fn trefoil() -> SeifertMatrix<BigInt> {
        SeifertMatrix::new(im(&[&[-1, 1], &[0, -1]])).unwrap()
    }

    fn figure8() -> SeifertMatrix<BigInt> {
        SeifertMatrix::new(im(&[&[1, 1], &[0, -1]])).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(SeifertMatrix::new(im(&[&[1, 0], &[0, 1]])), Err(Error::InvalidSeifert(_))));
        assert!(matches!(SeifertMatrix::new(im(&[&[1, 0, 0]])), Err(Error::InvalidSeifert(_))));
        assert!(SeifertMatrix::new(Matrix::<BigInt>::zeros(0, 0)).is_ok());
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander_polynomial(&trefoil()).as_poly().display_with('t').to_string(), "t^2 - t + 1");
        assert_eq!(alexander_polynomial(&figure8()).as_poly().display_with('t').to_string(), "t^2 - 3t + 1");
        assert!(alexander_polynomial(&SeifertMatrix::<BigInt>::unknot()).as_poly().is_one());
    }

    #[test]
    fn block_presentation() {
        assert_eq!(branched_presentation(&trefoil(), 2).unwrap(), im(&[&[-2, 1], &[1, -2]]));
        assert_eq!(branched_presentation(&figure8(), 2).unwrap(), im(&[&[2, 1], &[1, -2]]));
        let b = branched_presentation(&figure8(), 3).unwrap();
        assert_eq!(b, im(&[&[2, 1, -1, 0], &[1, -2, -1, 1], &[-1, -1, 2, 1], &[0, 1, 1, -2]]));
        assert!(branched_presentation(&figure8(), 1).is_err());
        assert_eq!(gamma_index(4, 2, 3), 9);
    }

    #[test]
    fn branched_homology_examples() {
        let h = branched_homology(&trefoil(), 2).unwrap();
        assert_eq!((h.to_string(), h.order()), ("Z/3".to_string(), GroupOrder::Finite(BigInt::from(3))));
        assert_eq!(branched_homology(&figure8(), 2).unwrap().to_string(), "Z/5");
        for d in 2..6 {
            assert!(branched_homology(&SeifertMatrix::<BigInt>::unknot(), d).unwrap().is_trivial());
        }
        // the trefoil's 6-fold cover has infinite homology
        assert_eq!(branched_homology(&trefoil(), 6).unwrap().order(), GroupOrder::Infinite);
    }

    #[test]
    fn resultant_checks() {
        let c = resultant_order_check(&trefoil(), 2).unwrap();
        assert_eq!((c.snf_order, c.resultant, c.agree), (BigInt::from(3), BigInt::from(3), true));
        let c = resultant_order_check(&figure8(), 3).unwrap();
        assert!(c.agree);
        assert_eq!(c.resultant, BigInt::from(16));
        let c = resultant_order_check(&trefoil(), 6).unwrap();
        assert_eq!((c.snf_order, c.resultant), (BigInt::from(0), BigInt::from(0)));
        for d in 2..=10 {
            let c = resultant_order_check(&SeifertMatrix::<BigInt>::unknot(), d).unwrap();
            assert_eq!((c.snf_order, c.resultant), (BigInt::from(1), BigInt::from(1)));
        }
        let sweep = resultant_sweep(&figure8(), 5).unwrap();
        assert_eq!(sweep.iter().map(|(_, r)| r.clone()).collect::<Vec<_>>(), [5, 16, 45, 121].map(BigInt::from));
    }

    #[test]
    fn figure_eight_monodromy() {
        let p = monodromy_power_presentation(&figure8(), 2).unwrap();
        assert_eq!(p.h, im(&[&[2, -1], &[-1, 1]]));
        assert_eq!(p.h_power, im(&[&[5, -3], &[-3, 2]]));
        assert_eq!(p.det, BigInt::from(-5));
        for n in 2..=12 {
            let p = monodromy_power_presentation(&figure8(), n).unwrap();
            let (a, c) = (p.h_power[(0, 0)].clone(), p.h_power[(1, 1)].clone());
            assert_eq!(p.det, BigInt::from(2) - a - c);
            assert!(p.det <= BigInt::from(-5));
            assert_eq!(p.trace_formula(), Some(p.det.clone()));
        }
        // trefoil monodromy has order 6
        assert_eq!(monodromy_power_presentation(&trefoil(), 6).unwrap().det, BigInt::from(0));
        let singular = SeifertMatrix::new(im(&[&[0, 1], &[0, 0]])).unwrap();
        assert!(matches!(monodromy_power_presentation(&singular, 2), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn character_jumps() {
        let cj = character_jump(&trefoil(), 2, 3).unwrap().unwrap();
        let jump = cj.jump.unwrap();
        assert_eq!(jump.order, 3);
        assert_eq!(jump.j, 1);
        assert!(kills_relations(&branched_presentation(&trefoil(), 2).unwrap(), &cj.character, 3));

        let cj = character_jump(&figure8(), 2, 5).unwrap().unwrap();
        assert_eq!(cj.jump.unwrap().order, 5);

        // trefoil's 3-fold cover has H_1 = Z/2 + Z/2
        let cj = character_jump(&trefoil(), 3, 2).unwrap().unwrap();
        let jump = cj.jump.unwrap();
        assert!(jump.j < 2 && jump.order == 2);

        assert_eq!(character_jump(&trefoil(), 2, 2).unwrap(), None);
        assert_eq!(character_jump(&SeifertMatrix::<BigInt>::unknot(), 3, 2).unwrap(), None);
    }
}
