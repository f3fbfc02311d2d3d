//! Words in a finitely generated free group and endomorphisms given by the
//! images of the generators.
//!
//! Words are kept freely reduced and run-length compressed: a block
//! `(g, k)` stands for `x_g^k`. Monodromy powers grow quickly, and the
//! compression keeps runs like `x^40` cheap.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::grouphom::{FiniteGroup, FiniteHom};
use crate::scalar::Coeff;

/// Hard cap on the letter count of any word produced by substitution.
pub const MAX_WORD_LENGTH: u64 = 10_000_000;

/// A freely reduced word.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    /// `(generator, exponent)` with nonzero exponents and no two adjacent
    /// blocks on the same generator.
    blocks: Vec<(usize, i64)>,
    len: u64,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// The generator `x_g`.
    pub fn generator(g: usize) -> Self {
        Word::power_of(g, 1)
    }

    /// `x_g^k`.
    pub fn power_of(g: usize, k: i64) -> Self {
        let mut w = Word::empty();
        w.push(g, k);
        w
    }

    /// Reduces a sequence of `(generator, exponent)` pairs.
    pub fn from_blocks<I: IntoIterator<Item = (usize, i64)>>(blocks: I) -> Self {
        let mut w = Word::empty();
        for (g, k) in blocks {
            w.push(g, k);
        }
        w
    }

    /// Appends `x_g^k` and reduces.
    pub fn push(&mut self, g: usize, k: i64) {
        if k == 0 {
            return;
        }
        match self.blocks.last_mut() {
            Some((last, e)) if *last == g => {
                self.len -= e.unsigned_abs();
                *e += k;
                if *e == 0 {
                    self.blocks.pop();
                } else {
                    self.len += e.unsigned_abs();
                }
            }
            _ => {
                self.blocks.push((g, k));
                self.len += k.unsigned_abs();
            }
        }
    }

    pub fn append(&mut self, other: &Word) {
        for &(g, k) in &other.blocks {
            self.push(g, k);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn inverse(&self) -> Word {
        Word { blocks: self.blocks.iter().rev().map(|&(g, k)| (g, -k)).collect(), len: self.len }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..k.unsigned_abs() {
            w.append(&base);
        }
        w
    }

    /// Number of letters in the expanded word.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[(usize, i64)] {
        &self.blocks
    }

    /// The expanded letters, each `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.blocks.iter().flat_map(|&(g, k)| std::iter::repeat_n((g, k.signum()), k.unsigned_abs() as usize))
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> Option<usize> {
        self.blocks.iter().map(|&(g, _)| g).max()
    }

    /// Image in the abelianization `Z^rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for &(g, k) in &self.blocks {
            v[g] += k;
        }
        v
    }

    /// Renders with generator names, e.g. `y^-1 x y`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedWord { word: self, names }
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        match self.max_generator() {
            Some(g) if g >= rank => Err(Error::GeneratorOutOfRange { index: g, rank }),
            _ => Ok(()),
        }
    }
}

struct NamedWord<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for NamedWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, &(g, k)) in self.word.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self.names.get(g).map_or_else(|| format!("x{g}"), Clone::clone);
            if k == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.display_with(&[]))
    }
}

/// An endomorphism of the free group of the given rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeEndo {
    rank: usize,
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let rank = images.len();
        for w in &images {
            w.check_rank(rank)?;
        }
        Ok(FreeEndo { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        FreeEndo { rank, images: (0..rank).map(Word::generator).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &Word {
        &self.images[g]
    }

    /// Substitutes the images into `w` and reduces.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.check_rank(self.rank)?;
        let mut inverses: Vec<Option<Word>> = vec![None; self.rank];
        let mut out = Word::empty();
        for &(g, k) in w.blocks() {
            let piece =
                if k > 0 { &self.images[g] } else { inverses[g].get_or_insert_with(|| self.images[g].inverse()) };
            for _ in 0..k.unsigned_abs() {
                out.append(piece);
                if out.len() > MAX_WORD_LENGTH {
                    return Err(Error::WordTooLong { length: out.len(), cap: MAX_WORD_LENGTH });
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &FreeEndo) -> Result<FreeEndo> {
        if self.rank != other.rank {
            return Err(Error::Shape(format!("composing rank {} with rank {}", self.rank, other.rank)));
        }
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<_>>()?;
        Ok(FreeEndo { rank: self.rank, images })
    }

    /// The `d`-fold composite; `d = 0` gives the identity.
    pub fn power(&self, d: u32) -> Result<FreeEndo> {
        let mut acc = FreeEndo::identity(self.rank);
        for _ in 0..d {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `x ↦ w f(x) w^-1`.
    pub fn conjugated_by(&self, w: &Word) -> Result<FreeEndo> {
        w.check_rank(self.rank)?;
        let inv = w.inverse();
        let images = self.images.iter().map(|img| w.concat(img).concat(&inv)).collect();
        Ok(FreeEndo { rank: self.rank, images })
    }

    /// Integer matrix of the induced map on `Z^rank`: column `j` holds the
    /// exponent sums of the image of generator `j`.
    pub fn abelianization_matrix<T: Coeff>(&self) -> Matrix<T> {
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| w.exponent_sums(self.rank)).collect();
        Matrix::from_fn(self.rank, self.rank, |i, j| T::from_int(cols[j][i]))
    }

    /// Whether `alpha ∘ self = alpha` on every generator, which is what
    /// lifting a map to the cover defined by `alpha` requires.
    pub fn check_compatibility<G: FiniteGroup>(&self, alpha: &FiniteHom<G>) -> Result<bool> {
        Ok(self.first_incompatible(alpha)?.is_none())
    }

    /// First generator on which `alpha ∘ self` and `alpha` differ.
    pub fn first_incompatible<G: FiniteGroup>(&self, alpha: &FiniteHom<G>) -> Result<Option<usize>> {
        if alpha.rank() != self.rank {
            return Err(Error::Shape(format!(
                "homomorphism on {} generators against an endomorphism of rank {}",
                alpha.rank(),
                self.rank
            )));
        }
        for (g, img) in self.images.iter().enumerate() {
            if alpha.evaluate(img)? != alpha.images()[g] {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}
