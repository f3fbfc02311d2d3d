//! Smith normal form and the abelian groups it describes.

use std::fmt;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// `left * a * right == diag(diagonal)` with unimodular `left` and `right`.
///
/// `diagonal` has `min(rows, cols)` nonnegative entries, each dividing the
/// next, with zeros last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<T: Coeff> {
    pub diagonal: Vec<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
    pub rows: usize,
    pub cols: usize,
}

impl<T: Coeff> SmithDecomposition<T> {
    /// The diagonal as a `rows x cols` matrix.
    pub fn diagonal_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    /// Invariant factor for generator `k` of the cokernel (0 past the
    /// diagonal, i.e. a free summand).
    fn factor(&self, k: usize) -> T {
        self.diagonal.get(k).cloned().unwrap_or_else(T::zero)
    }
}

/// Order of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupOrder<T> {
    Finite(T),
    Infinite,
}

impl<T: Coeff> GroupOrder<T> {
    pub fn is_trivial(&self) -> bool {
        matches!(self, GroupOrder::Finite(n) if n.is_one())
    }

    /// The order with infinity encoded as 0, the usual convention for
    /// resultants.
    pub fn as_resultant(&self) -> T {
        match self {
            GroupOrder::Finite(n) => n.clone(),
            GroupOrder::Infinite => T::zero(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for GroupOrder<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// A finitely generated abelian group `Z/t_1 + ... + Z/t_k + Z^free_rank`
/// with `1 < t_1 | t_2 | ... | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CokernelInvariants<T> {
    pub torsion: Vec<T>,
    pub free_rank: usize,
}

impl<T: Coeff> CokernelInvariants<T> {
    pub fn order(&self) -> GroupOrder<T> {
        if self.free_rank > 0 {
            GroupOrder::Infinite
        } else {
            GroupOrder::Finite(self.torsion.iter().fold(T::one(), |acc, t| acc * t.clone()))
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

/// `Z/3`, `Z/2 + Z/4`, `Z^2`, `Z/3 + Z`, or `0` for the trivial group.
impl<T: fmt::Display> fmt::Display for CokernelInvariants<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

struct Reducer<T> {
    a: Matrix<T>,
    left: Matrix<T>,
    right: Matrix<T>,
}

impl<T: Coeff> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.left.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.right.swap_cols(i, j);
    }

    /// row `dst` += `q` * row `src`
    fn add_row(&mut self, dst: usize, src: usize, q: &T) {
        for m in [&mut self.a, &mut self.left] {
            for j in 0..m.cols() {
                let v = m[(src, j)].clone();
                if !v.is_zero() {
                    m[(dst, j)] = m[(dst, j)].clone() + q.clone() * v;
                }
            }
        }
    }

    /// col `dst` += `q` * col `src`
    fn add_col(&mut self, dst: usize, src: usize, q: &T) {
        for m in [&mut self.a, &mut self.right] {
            for i in 0..m.rows() {
                let v = m[(i, src)].clone();
                if !v.is_zero() {
                    m[(i, dst)] = m[(i, dst)].clone() + q.clone() * v;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.left] {
            for j in 0..m.cols() {
                m[(i, j)] = -m[(i, j)].clone();
            }
        }
    }

    /// Smallest nonzero |entry| in the lower-right block from `t`; ties go to
    /// the lowest row, then the lowest column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Brings the block from `t` to the form `diag(p) + rest` with `p`
    /// dividing every entry of `rest`. Returns false if the block is zero.
    fn reduce_at(&mut self, t: usize) -> bool {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        loop {
            let Some((pi, pj)) = self.pivot(t) else {
                return false;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.a[(t, t)].clone();

            let mut clean = true;
            for i in t + 1..rows {
                let v = self.a[(i, t)].clone();
                if v.is_zero() {
                    continue;
                }
                let q = v / p.clone();
                if !q.is_zero() {
                    self.add_row(i, t, &-q);
                }
                clean &= self.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let v = self.a[(t, j)].clone();
                if v.is_zero() {
                    continue;
                }
                let q = v / p.clone();
                if !q.is_zero() {
                    self.add_col(j, t, &-q);
                }
                clean &= self.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(self.a[(i, j)].clone() % p.clone()).is_zero()));
            match offender {
                Some(i) => self.add_row(t, i, &T::one()),
                None => {
                    if p.is_negative() {
                        self.negate_row(t);
                    }
                    return true;
                }
            }
        }
    }
}

/// Smith normal form with its unimodular transforms. Deterministic.
pub fn smith_normal_form<T: Coeff>(a: &Matrix<T>) -> SmithDecomposition<T> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = Reducer { a: a.clone(), left: Matrix::identity(rows), right: Matrix::identity(cols) };
    let n = rows.min(cols);
    for t in 0..n {
        if !r.reduce_at(t) {
            break;
        }
    }
    let diagonal = (0..n).map(|i| r.a[(i, i)].clone()).collect();
    SmithDecomposition { diagonal, left: r.left, right: r.right, rows, cols }
}

/// The cokernel of `a : Z^cols -> Z^rows`, i.e. the abelian group with one
/// generator per row and one relation per column.
pub fn cokernel_invariants<T: Coeff>(a: &Matrix<T>) -> CokernelInvariants<T> {
    let snf = smith_normal_form(a);
    let nonzero = snf.diagonal.iter().filter(|d| !d.is_zero()).count();
    CokernelInvariants {
        torsion: snf.diagonal.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
        free_rank: a.rows() - nonzero,
    }
}

/// A surjection from the group presented by `a` (generators = rows,
/// relations = columns) onto `Z/r`, as the value of each generator in
/// `0..r`. `None` when no surjection exists.
///
/// Read off the Smith left transform: the first cokernel summand whose order
/// is divisible by `r` (free summands count) is sent onto `Z/r`.
pub fn surjection_onto_cyclic<T: Coeff>(a: &Matrix<T>, r: u64) -> Result<Option<Vec<u64>>> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("cyclic target order must be at least 2, got {r}")));
    }
    let snf = smith_normal_form(a);
    let modulus = T::from_u64(r).expect("u64 fits every coefficient type");
    let Some(k) = (0..a.rows()).find(|&k| (snf.factor(k) % modulus.clone()).is_zero()) else {
        return Ok(None);
    };
    let chi = (0..a.rows())
        .map(|j| snf.left[(k, j)].mod_floor(&modulus).to_u64().expect("residue below r fits in u64"))
        .collect();
    Ok(Some(chi))
}

/// True if the character `chi` (one residue mod `r` per row) vanishes on
/// every column of `a`.
pub fn kills_relations<T: Coeff>(a: &Matrix<T>, chi: &[u64], r: u64) -> bool {
    let modulus = T::from_u64(r).expect("u64 fits every coefficient type");
    (0..a.cols()).all(|j| {
        let total = (0..a.rows()).fold(T::zero(), |acc, i| {
            acc + a[(i, j)].clone() * T::from_u64(chi[i]).expect("u64 fits every coefficient type")
        });
        total.mod_floor(&modulus).is_zero()
    })
}

/// True if the values of `chi` generate `Z/r`.
pub fn is_surjective_character(chi: &[u64], r: u64) -> bool {
    chi.iter().fold(r, |g, &c| num_integer::gcd(g, c)) == 1
}
