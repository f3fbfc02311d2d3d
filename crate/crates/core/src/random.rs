//! Random inputs for property tests and self checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactla::Matrix;
use crate::freegrp::{FreeEndo, Word};
use crate::scalar::Coeff;
use crate::seifert::SeifertMatrix;

/// An elementary Nielsen transformation of a free basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NielsenMove {
    Invert(usize),
    /// `x_i -> x_i x_j`
    RightMultiply(usize, usize),
    /// `x_i -> x_j x_i`
    LeftMultiply(usize, usize),
    Swap(usize, usize),
}

impl NielsenMove {
    pub fn random<R: Rng + ?Sized>(rank: usize, rng: &mut R) -> Self {
        assert!(rank >= 2, "Nielsen moves need rank at least 2");
        let i = rng.gen_range(0..rank);
        let mut j = rng.gen_range(0..rank - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..4) {
            0 => NielsenMove::Invert(i),
            1 => NielsenMove::RightMultiply(i, j),
            2 => NielsenMove::LeftMultiply(i, j),
            _ => NielsenMove::Swap(i, j),
        }
    }

    /// Applies the move to a list of basis images, which composes the
    /// automorphism they define with the move on the right.
    pub fn apply(self, images: &mut [Word]) {
        match self {
            NielsenMove::Invert(i) => images[i] = images[i].inverse(),
            NielsenMove::RightMultiply(i, j) => images[i] = images[i].concat(&images[j]),
            NielsenMove::LeftMultiply(i, j) => images[i] = images[j].concat(&images[i]),
            NielsenMove::Swap(i, j) => images.swap(i, j),
        }
    }
}

/// A product of at most `max_moves` random Nielsen moves; always an
/// automorphism.
pub fn random_automorphism<R: Rng + ?Sized>(
    rank: usize,
    max_moves: usize,
    rng: &mut R,
) -> (FreeEndo, Vec<NielsenMove>) {
    let moves: Vec<NielsenMove> = (0..rng.gen_range(0..=max_moves)).map(|_| NielsenMove::random(rank, rng)).collect();
    let mut images: Vec<Word> = (0..rank).map(Word::generator).collect();
    for m in &moves {
        m.apply(&mut images);
    }
    (FreeEndo::new(images).expect("basis images stay in range"), moves)
}

/// A random unimodular integer matrix, as a product of elementary moves.
pub fn random_unimodular<T: Coeff, R: Rng + ?Sized>(n: usize, moves: usize, rng: &mut R) -> Matrix<T> {
    let mut p: Matrix<T> = Matrix::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..moves {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = T::from_int(*[-1i64, 1].choose(rng).expect("nonempty"));
        // row_i += c * row_j
        for k in 0..n {
            let v = p[(i, k)].clone() + c.clone() * p[(j, k)].clone();
            p[(i, k)] = v;
        }
        if rng.gen_bool(0.2) {
            p.swap_rows(i, j);
        }
    }
    p
}

/// A random Seifert matrix of size `2 * genus`: `P (B + N) P^T` where `B`
/// is the standard block form with `B - B^T` symplectic, `N` is symmetric
/// with entries in `-bound..=bound`, and `P` is unimodular. Every such
/// matrix has `det(S - S^T) = 1`.
pub fn random_seifert<T: Coeff, R: Rng + ?Sized>(genus: usize, bound: i64, rng: &mut R) -> SeifertMatrix<T> {
    let n = 2 * genus;
    let mut s: Matrix<T> = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = T::from_int(rng.gen_range(-bound..=bound));
            s[(i, j)] = v.clone();
            s[(j, i)] = v;
        }
    }
    for k in 0..genus {
        let v = s[(2 * k, 2 * k + 1)].clone() + T::one();
        s[(2 * k, 2 * k + 1)] = v;
    }
    let p: Matrix<T> = random_unimodular(n, 2 * n, rng);
    let s = p.matmul(&s).matmul(&p.transpose());
    SeifertMatrix::new(s).expect("congruent to a Seifert form")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Coeff;
    use num_bigint::BigInt;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn automorphisms_are_unimodular() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let rank = rng.gen_range(2..=3);
            let (f, moves) = random_automorphism(rank, 8, &mut rng);
            assert!(moves.len() <= 8);
            assert!(f.abelianization_matrix::<BigInt>().det().is_unit());
        }
    }

    #[test]
    fn seifert_matrices_are_valid() {
        let mut rng = StdRng::seed_from_u64(11);
        for genus in 0..=2 {
            for _ in 0..20 {
                let s: SeifertMatrix<BigInt> = random_seifert(genus, 3, &mut rng);
                assert_eq!(s.size(), 2 * genus);
                assert!(random_unimodular::<BigInt, _>(4, 6, &mut rng).det().is_unit());
            }
        }
    }
}
