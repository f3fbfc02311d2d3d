//! Laurent polynomials in one variable over the integers, `Z[s, s^-1]`.
//!
//! Units of this ring are `±s^n`, so most invariants are only defined up to
//! such a factor. [`CanonicalForm`] picks one representative: no negative
//! powers, no factor of `s`, and a positive leading coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::scalar::{self, Coeff};

/// A Laurent polynomial `sum_i coeffs[i] * s^(low + i)`.
///
/// Always trimmed: a nonzero value has nonzero first and last coefficients,
/// and zero is the empty sequence with `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<T> {
    low: i64,
    coeffs: Vec<T>,
}

/// The associate of a Laurent polynomial with lowest exponent 0 and a
/// positive leading coefficient. Zero is its own canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm<T>(Laurent<T>);

impl<T: Coeff> Laurent<T> {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable `s`.
    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `c * s^exp`.
    pub fn monomial(c: T, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// Builds `sum_i coeffs[i] s^(low + i)` and trims it.
    pub fn from_coeffs(low: i64, coeffs: Vec<T>) -> Self {
        let mut p = Laurent { low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` terms, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let terms: Vec<(i64, T)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![T::zero(); (high - low) as usize + 1];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = slot.clone() + c;
        }
        Self::from_coeffs(low, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.low += lead as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn lowest_exponent(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn highest_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// `highest - lowest` exponent, `None` for zero.
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    /// Coefficients from the lowest exponent upward.
    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> T {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            T::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&T> {
        self.coeffs.first()
    }

    /// Multiplies by `s^n`.
    pub fn shift(&self, n: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low + n, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Nonnegative gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// The polynomial divided by its content (zero stays zero).
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|a| a.clone() / c.clone()).collect() }
    }

    /// Divides exactly in `Z[s, s^-1]`; `None` if the quotient is not a
    /// Laurent polynomial with integer coefficients.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly_div_exact(&self.coeffs, &divisor.coeffs)?;
        Some(Self::from_coeffs(self.low - divisor.low, q))
    }

    /// The unique associate with lowest exponent 0 and positive leading
    /// coefficient.
    pub fn canonicalize(&self) -> CanonicalForm<T> {
        if self.is_zero() {
            return CanonicalForm(Self::zero());
        }
        let coeffs = if self.coeffs[self.coeffs.len() - 1].is_negative() {
            self.coeffs.iter().map(|c| -c.clone()).collect()
        } else {
            self.coeffs.clone()
        };
        CanonicalForm(Laurent { low: 0, coeffs })
    }

    /// Nonzero with both extreme coefficients equal to `±1`.
    pub fn is_monic(&self) -> bool {
        match (self.trailing_coeff(), self.leading_coeff()) {
            (Some(lo), Some(hi)) => lo.is_unit() && hi.is_unit(),
            _ => false,
        }
    }

    /// Value at an integer point. Negative exponents need `x` to be a unit,
    /// otherwise `None`.
    pub fn eval(&self, x: &T) -> Option<T> {
        if self.is_zero() {
            return Some(T::zero());
        }
        // Horner on the coefficient list, then fix up the s^low factor.
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        if self.low >= 0 {
            Some(acc * num_traits::pow(x.clone(), self.low as usize))
        } else {
            let d = num_traits::pow(x.clone(), (-self.low) as usize);
            scalar::Domain::div_exact(&acc, &d)
        }
    }

    /// Renders with the given variable name.
    pub fn display_with(&self, var: char) -> impl fmt::Display + '_ {
        DisplayWith { poly: self, var }
    }

    /// Parses polynomial text such as `s^4 - s^3 - s + 1` or `2s^-1+3`.
    ///
    /// Whitespace is ignored. Any single letter may serve as the variable,
    /// but a polynomial may use only one.
    pub fn parse(text: &str) -> Result<Self> {
        parse_poly(text).map(|(p, _)| p)
    }
}

impl<T: Coeff> CanonicalForm<T> {
    pub fn as_poly(&self) -> &Laurent<T> {
        &self.0
    }

    pub fn into_poly(self) -> Laurent<T> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_monic(&self) -> bool {
        self.0.is_monic()
    }

    /// Degree of the canonical representative (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.0.span()
    }
}

impl<T: Coeff> From<CanonicalForm<T>> for Laurent<T> {
    fn from(c: CanonicalForm<T>) -> Self {
        c.0
    }
}

/// Greatest common divisor in `Z[s, s^-1]`, in canonical form.
///
/// Contents and primitive parts are handled separately so no rational
/// arithmetic is needed; primitive parts go through a primitive
/// pseudo-remainder sequence. `gcd(0, 0) = 0`.
pub fn gcd<T: Coeff>(p: &Laurent<T>, q: &Laurent<T>) -> CanonicalForm<T> {
    if p.is_zero() {
        return q.canonicalize();
    }
    if q.is_zero() {
        return p.canonicalize();
    }
    let content = p.content().gcd(&q.content());
    let a = p.primitive_part().coeffs;
    let b = q.primitive_part().coeffs;
    let g = primitive_gcd(a, b);
    Laurent::from_coeffs(0, g).scale(&content).canonicalize()
}

/// gcd of two nonzero primitive polynomials in `Z[s]` (coefficients lowest
/// first), returned primitive.
fn primitive_gcd<T: Coeff>(a: Vec<T>, b: Vec<T>) -> Vec<T> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if b.len() == 1 {
            return vec![T::one()];
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return b;
        }
        a = b;
        b = primitive(r);
    }
}

fn primitive<T: Coeff>(mut v: Vec<T>) -> Vec<T> {
    let c = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !c.is_one() && !c.is_zero() {
        for x in v.iter_mut() {
            *x = x.clone() / c.clone();
        }
    }
    v
}

/// Remainder of `lc(b)^k * a` modulo `b`, trimmed. `b` must be nonzero.
fn pseudo_rem<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    let mut r: Vec<T> = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let off = dr - db;
        for x in r.iter_mut() {
            *x = x.clone() * lb.clone();
        }
        for (i, bc) in b.iter().enumerate() {
            r[off + i] = r[off + i].clone() - lr.clone() * bc.clone();
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Exact quotient of coefficient lists (lowest first), both trimmed and
/// nonzero with nonzero lowest coefficient or not; fails on any remainder.
fn poly_div_exact<T: Coeff>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![T::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = r[k + db].clone();
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = r[k + i].clone() - c.clone() * bc.clone();
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Resultant of two polynomials in `Z[t]` (coefficients lowest first) as the
/// determinant of their Sylvester matrix.
///
/// Both inputs must be nonzero.
pub fn sylvester_resultant<T: Coeff>(a: &[T], b: &[T]) -> T {
    sylvester_matrix(a, b).det()
}

/// The `(m + n) x (m + n)` Sylvester matrix of `a` (degree `m`) and `b`
/// (degree `n`): `n` shifted rows of `a` above `m` shifted rows of `b`,
/// coefficients in descending order.
pub fn sylvester_matrix<T: Coeff>(a: &[T], b: &[T]) -> Matrix<T> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    for row in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            s[(row, row + k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            s[(n + row, row + k)] = c.clone();
        }
    }
    s
}

/// `|Res(p(t), t^d - 1)|`, where `p` is first shifted to have no negative
/// powers. This is `|prod_{w^d = 1} p(w)|`.
pub fn resultant_with_cyclotomic<T: Coeff>(p: &Laurent<T>, d: u32) -> Result<T> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("resultant of the zero polynomial".into()));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let mut cyc = vec![T::zero(); d as usize + 1];
    cyc[0] = -T::one();
    cyc[d as usize] = T::one();
    Ok(sylvester_resultant(p.coefficients(), &cyc).abs())
}

// ---------------------------------------------------------------------------
// Arithmetic

fn add_impl<T: Coeff>(p: &Laurent<T>, q: &Laurent<T>, negate_q: bool) -> Laurent<T> {
    if q.is_zero() {
        return p.clone();
    }
    if p.is_zero() {
        return if negate_q { -q } else { q.clone() };
    }
    let low = p.low.min(q.low);
    let high = p.highest_exponent().unwrap().max(q.highest_exponent().unwrap());
    let mut coeffs = vec![T::zero(); (high - low) as usize + 1];
    for (i, c) in p.coeffs.iter().enumerate() {
        coeffs[(p.low - low) as usize + i] = c.clone();
    }
    for (i, c) in q.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(q.low - low) as usize + i];
        *slot = if negate_q { slot.clone() - c.clone() } else { slot.clone() + c.clone() };
    }
    Laurent::from_coeffs(low, coeffs)
}

fn mul_impl<T: Coeff>(p: &Laurent<T>, q: &Laurent<T>) -> Laurent<T> {
    if p.is_zero() || q.is_zero() {
        return Laurent::zero();
    }
    let mut coeffs = vec![T::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
        }
    }
    Laurent::from_coeffs(p.low + q.low, coeffs)
}

impl<T: Coeff> Add for &Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, rhs: Self) -> Laurent<T> {
        add_impl(self, rhs, false)
    }
}

impl<T: Coeff> Sub for &Laurent<T> {
    type Output = Laurent<T>;
    fn sub(self, rhs: Self) -> Laurent<T> {
        add_impl(self, rhs, true)
    }
}

impl<T: Coeff> Mul for &Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, rhs: Self) -> Laurent<T> {
        mul_impl(self, rhs)
    }
}

impl<T: Coeff> Neg for &Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for Laurent<T> {
            type Output = Laurent<T>;
            fn $m(self, rhs: Self) -> Laurent<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Coeff> Neg for Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        -&self
    }
}

impl<T: Coeff> scalar::Domain for Laurent<T> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        Laurent::div_exact(self, other)
    }
}

// ---------------------------------------------------------------------------
// Text

struct DisplayWith<'a, T> {
    poly: &'a Laurent<T>,
    var: char,
}

impl<T: Coeff> fmt::Display for DisplayWith<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in p.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let exp = p.low + i as i64;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if exp == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{}", self.var)?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl<T: Coeff> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with('s').fmt(f)
    }
}

impl<T: Coeff> fmt::Debug for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl<T: Coeff> fmt::Display for CanonicalForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<T: Coeff> fmt::Debug for CanonicalForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

impl<T: Coeff> FromStr for Laurent<T> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Laurent::parse(s)
    }
}

/// Parses polynomial text, returning the variable letter if one was used.
/// Columns in errors are 1-based positions in `text`.
pub fn parse_poly<T: Coeff>(text: &str) -> Result<(Laurent<T>, Option<char>)> {
    let chars: Vec<(usize, char)> =
        text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (i + 1, c)).collect();
    let end_col = text.chars().count() + 1;
    if chars.is_empty() {
        return Err(Error::parse(1, 1, "empty polynomial"));
    }
    let col = |i: usize| chars.get(i).map_or(end_col, |(c, _)| *c);
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().map(|(_, c)| *c).collect::<String>()
    };

    let mut var: Option<char> = None;
    let mut terms: Vec<(i64, T)> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let term_col = col(i);
        let mut negative = false;
        match chars[i].1 {
            '+' => i += 1,
            '-' => {
                negative = true;
                i += 1
            }
            _ if !terms.is_empty() => return Err(Error::parse(1, term_col, "expected `+` or `-` between terms")),
            _ => {}
        }
        let coeff_digits = digits(&mut i);
        let mut coeff = if coeff_digits.is_empty() {
            None
        } else {
            Some(
                T::from_str_radix(&coeff_digits, 10)
                    .map_err(|_| Error::parse(1, term_col, "coefficient out of range"))?,
            )
        };
        if coeff.is_some() && i < chars.len() && chars[i].1 == '*' {
            i += 1;
        }
        let mut exp = 0i64;
        if i < chars.len() && chars[i].1.is_alphabetic() {
            let v = chars[i].1;
            match var {
                Some(w) if w != v => {
                    return Err(Error::parse(1, col(i), format!("mixed variables `{w}` and `{v}`")));
                }
                _ => var = Some(v),
            }
            i += 1;
            exp = 1;
            if i < chars.len() && chars[i].1 == '^' {
                i += 1;
                let exp_col = col(i);
                let mut exp_neg = false;
                if i < chars.len() && (chars[i].1 == '-' || chars[i].1 == '+') {
                    exp_neg = chars[i].1 == '-';
                    i += 1;
                }
                let e = digits(&mut i);
                if e.is_empty() {
                    return Err(Error::parse(1, exp_col, "expected an exponent after `^`"));
                }
                exp = e.parse::<i64>().map_err(|_| Error::parse(1, exp_col, "exponent out of range"))?;
                if exp_neg {
                    exp = -exp;
                }
            }
        } else if coeff.is_none() {
            return Err(Error::parse(1, col(i), "expected a coefficient or variable"));
        }
        let c = coeff.take().unwrap_or_else(T::one);
        terms.push((exp, if negative { -c } else { c }));
    }
    Ok((Laurent::from_terms(terms), var))
}
