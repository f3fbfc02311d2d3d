//! Homomorphisms from finitely presented groups into small finite groups.
//!
//! Permutations compose like functions: `(a * b)(x) = a(b(x))`. A word
//! `w = g_1 g_2 ... g_k` evaluates to `phi(g_1) ∘ phi(g_2) ∘ ... ∘ phi(g_k)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::freegrp::Word;
use crate::scalar::Coeff;

/// Largest group for which the generated subgroup is enumerated.
pub const MAX_CLOSURE_ORDER: u128 = 1_000_000;
/// Largest group whose regular representation is materialized.
pub const MAX_REGULAR_ORDER: u128 = 10_000;

/// A finite group given by a descriptor; elements are plain values.
pub trait FiniteGroup: Clone + Debug + PartialEq + Eq {
    type Element: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(&self, a: &Self::Element) -> Self::Element;
    fn order(&self) -> u128;
    fn contains(&self, a: &Self::Element) -> bool;
    /// Every element, identity first, in a fixed order.
    fn elements(&self) -> Vec<Self::Element>;
    /// Short name such as `Z/3` or `A5`.
    fn name(&self) -> String;
    fn format_element(&self, a: &Self::Element) -> String;

    fn pow(&self, a: &Self::Element, k: i64) -> Self::Element {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }
}

/// The cyclic group `Z/r`, written additively with elements `0..r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cyclic {
    order: u64,
}

impl Cyclic {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("cyclic group of order 0".into()));
        }
        Ok(Cyclic { order })
    }

    pub fn trivial() -> Self {
        Cyclic { order: 1 }
    }

    pub fn modulus(&self) -> u64 {
        self.order
    }
}

impl FiniteGroup for Cyclic {
    type Element = u64;

    fn identity(&self) -> u64 {
        0
    }
    fn multiply(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.order as u128) as u64
    }
    fn inverse(&self, a: &u64) -> u64 {
        (self.order - a % self.order) % self.order
    }
    fn order(&self) -> u128 {
        self.order as u128
    }
    fn contains(&self, a: &u64) -> bool {
        *a < self.order
    }
    fn elements(&self) -> Vec<u64> {
        (0..self.order).collect()
    }
    fn name(&self) -> String {
        format!("Z/{}", self.order)
    }
    fn format_element(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// A permutation of `{0, ..., n-1}`; text form uses 1-based cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// From 0-based images; fails unless `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen.get_mut(x as usize).ok_or_else(|| {
                Error::InvalidArgument(format!("image {} out of range for degree {}", x + 1, images.len()))
            })?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidArgument(format!("point {} is hit twice", x + 1)));
            }
        }
        Ok(Perm(images))
    }

    /// From 0-based cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let x_us = x as usize;
                if x_us >= degree {
                    return Err(Error::InvalidArgument(format!("point {} exceeds degree {degree}", x + 1)));
                }
                if std::mem::replace(&mut moved[x_us], true) {
                    return Err(Error::InvalidArgument(format!("point {} appears in two cycles", x + 1)));
                }
                images[x_us] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.0[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.0[x as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Parses cycle notation such as `(1 3 2)(4 5)` or `(1,3,2)`; `()` is
    /// the identity. Points are 1-based and at most `degree`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::InvalidArgument("empty permutation; write `()` for the identity".into()));
        }
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::InvalidArgument(format!("malformed cycle notation `{text}`")))?;
            let points = inner
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<u32>() {
                    Ok(p) if p >= 1 => Ok(p - 1),
                    _ => Err(Error::InvalidArgument(format!("bad point `{t}` in `{text}`"))),
                })
                .collect::<Result<Vec<u32>>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = inner.1.trim_start();
        }
        Perm::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            write!(f, "({})", c.iter().map(|x| x + 1).join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

/// The symmetric group `S_n` or, with `alternating`, the alternating group
/// `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Permutations {
    degree: usize,
    alternating: bool,
}

impl Permutations {
    pub fn symmetric(degree: usize) -> Self {
        Permutations { degree, alternating: false }
    }

    pub fn alternating(degree: usize) -> Self {
        Permutations { degree, alternating: true }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    pub fn parse_element(&self, text: &str) -> Result<Perm> {
        let p = Perm::parse_cycles(text, self.degree)?;
        if !self.contains(&p) {
            return Err(Error::InvalidArgument(format!("{p} is odd, not in {}", self.name())));
        }
        Ok(p)
    }
}

impl FiniteGroup for Permutations {
    type Element = Perm;

    fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }
    fn multiply(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }
    fn inverse(&self, a: &Perm) -> Perm {
        a.inverse()
    }
    fn order(&self) -> u128 {
        let full: u128 = (1..=self.degree as u128).fold(1u128, |acc, k| acc.saturating_mul(k));
        if self.alternating && self.degree >= 2 {
            full / 2
        } else {
            full
        }
    }
    fn contains(&self, a: &Perm) -> bool {
        a.degree() == self.degree && (!self.alternating || a.is_even())
    }
    fn elements(&self) -> Vec<Perm> {
        // lexicographic by image list, which puts the identity first
        (0..self.degree as u32)
            .permutations(self.degree)
            .map(Perm)
            .filter(|p| !self.alternating || p.is_even())
            .collect()
    }
    fn name(&self) -> String {
        format!("{}{}", if self.alternating { "A" } else { "S" }, self.degree)
    }
    fn format_element(&self, a: &Perm) -> String {
        a.to_string()
    }
}

/// A homomorphism from the free group on `rank` generators, given by the
/// image of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHom<G: FiniteGroup> {
    group: G,
    images: Vec<G::Element>,
}

impl<G: FiniteGroup> FiniteHom<G> {
    pub fn new(group: G, images: Vec<G::Element>) -> Result<Self> {
        if let Some(bad) = images.iter().find(|g| !group.contains(g)) {
            return Err(Error::InvalidArgument(format!("{bad:?} is not an element of {}", group.name())));
        }
        Ok(FiniteHom { group, images })
    }

    /// Every generator to the identity.
    pub fn trivial(group: G, rank: usize) -> Self {
        let images = vec![group.identity(); rank];
        FiniteHom { group, images }
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[G::Element] {
        &self.images
    }

    /// Image of a word: the product of the letter images, left to right.
    pub fn evaluate(&self, w: &Word) -> Result<G::Element> {
        let mut acc = self.group.identity();
        for &(g, k) in w.blocks() {
            let img = self.images.get(g).ok_or(Error::GeneratorOutOfRange { index: g, rank: self.images.len() })?;
            acc = self.group.multiply(&acc, &self.group.pow(img, k));
        }
        Ok(acc)
    }

    /// The subgroup generated by the images, by breadth-first closure from
    /// the identity. Discovery order is deterministic.
    pub fn generated_subgroup(&self) -> Result<Vec<G::Element>> {
        let order = self.group.order();
        if order > MAX_CLOSURE_ORDER {
            return Err(Error::SizeCap { what: "group order for closure", count: order, cap: MAX_CLOSURE_ORDER });
        }
        let id = self.group.identity();
        let mut seen: HashMap<G::Element, ()> = HashMap::from([(id.clone(), ())]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for img in &self.images {
                let h = self.group.multiply(&g, img);
                if seen.insert(h.clone(), ()).is_none() {
                    out.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(out)
    }

    pub fn generated_subgroup_order(&self) -> Result<u64> {
        Ok(self.generated_subgroup()?.len() as u64)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.generated_subgroup_order()? as u128 == self.group.order())
    }
}

/// A finite presentation: generators are `0..rank`, relators are words that
/// should evaluate to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    rank: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(rank: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(g) = r.max_generator().filter(|&g| g >= rank) {
                return Err(Error::GeneratorOutOfRange { index: g, rank });
            }
        }
        Ok(Presentation { rank, relators })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// Outcome of checking that a homomorphism kills a presentation's relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorReport {
    pub total: usize,
    /// Indices of relators that do not map to the identity.
    pub failed: Vec<usize>,
}

impl RelatorReport {
    pub fn passed(&self) -> usize {
        self.total - self.failed.len()
    }

    pub fn all_killed(&self) -> bool {
        self.failed.is_empty()
    }
}

pub fn verify_homomorphism<G: FiniteGroup>(hom: &FiniteHom<G>, pres: &Presentation) -> Result<RelatorReport> {
    if hom.rank() != pres.rank() {
        return Err(Error::Shape(format!(
            "homomorphism on {} generators for a presentation on {}",
            hom.rank(),
            pres.rank()
        )));
    }
    let id = hom.group().identity();
    let mut failed = Vec::new();
    for (i, r) in pres.relators().iter().enumerate() {
        if hom.evaluate(r)? != id {
            failed.push(i);
        }
    }
    Ok(RelatorReport { total: pres.relators().len(), failed })
}

/// Dimension of the regular representation, i.e. the group order.
pub fn regular_representation_dimension<G: FiniteGroup>(group: &G) -> u128 {
    group.order()
}

/// Permutation matrix of left multiplication by `g` on `Z[G]`, with basis
/// ordered as [`FiniteGroup::elements`]. Entry `(index(g h), index(h))` is 1.
pub fn regular_matrix<G: FiniteGroup, T: Coeff>(group: &G, g: &G::Element) -> Result<Matrix<T>> {
    let order = group.order();
    if order > MAX_REGULAR_ORDER {
        return Err(Error::SizeCap {
            what: "group order for the regular representation",
            count: order,
            cap: MAX_REGULAR_ORDER,
        });
    }
    let elems = group.elements();
    let index: HashMap<&G::Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elems.len();
    let mut m = Matrix::zeros(n, n);
    for (col, h) in elems.iter().enumerate() {
        let row = index[&group.multiply(g, h)];
        m[(row, col)] = T::one();
    }
    Ok(m)
}

impl FromStr for Permutations {
    type Err = Error;

    /// `A5`, `S4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (alt, rest) = match s.chars().next() {
            Some('A') => (true, &s[1..]),
            Some('S') => (false, &s[1..]),
            _ => return Err(Error::InvalidArgument(format!("unknown permutation group `{s}`"))),
        };
        let degree =
            rest.parse::<usize>().map_err(|_| Error::InvalidArgument(format!("unknown permutation group `{s}`")))?;
        Ok(if alt { Permutations::alternating(degree) } else { Permutations::symmetric(degree) })
    }
}

impl FromStr for Cyclic {
    type Err = Error;

    /// `Z/6`.
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .trim()
            .strip_prefix("Z/")
            .and_then(|n| n.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown cyclic group `{s}`")))?;
        Cyclic::new(n)
    }
}
