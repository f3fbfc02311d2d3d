//! Plain-text input formats and their printers.
//!
//! Blank lines and anything after `#` are ignored. Errors carry 1-based
//! line and column numbers.
//!
//! * monodromy: `generators: x y`, then `x -> y^-1` per generator
//! * presentation: `generators: a b`, then `relator: b^-1 a b a^-1` lines
//! * homomorphism: `target: A5` (or `S4`, `Z/6`), then `a = (1 3 2)` or
//!   `a = 4` per generator
//! * Seifert matrix: the size `2g`, then `2g` rows of integers
//! * matrix over `Z[s, s^-1]`: `rows cols`, then one row per line with
//!   entries such as `s^2-3s+1` written without spaces

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::freegrp::{FreeEndo, Word};
use crate::grouphom::{Cyclic, FiniteGroup, FiniteHom, Permutations, Presentation};
use crate::laurent::{parse_poly, Laurent};
use crate::scalar::Coeff;
use crate::seifert::SeifertMatrix;

/// Generator names, in index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Names(Vec<String>);

impl Names {
    pub fn new(names: Vec<String>) -> Result<Self> {
        for (k, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidArgument(format!("`{name}` is not a valid generator name")));
            }
            if names[..k].contains(name) {
                return Err(Error::InvalidArgument(format!("generator `{name}` is declared twice")));
            }
        }
        Ok(Names(names))
    }

    pub fn from_strs(names: &[&str]) -> Result<Self> {
        Names::new(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display_with(&self.0).to_string()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A content line: 1-based number and the text with comments removed.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn content_lines(input: &str) -> impl Iterator<Item = Line<'_>> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.split('#').next().unwrap_or("");
        (!text.trim().is_empty()).then_some(Line { number: i + 1, text })
    })
}

/// Whitespace-separated tokens with their 1-based columns, offset by
/// `base` characters.
fn tokens(text: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (idx, c)) in text.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col, idx)),
            (true, Some((scol, sidx))) => {
                out.push((base + scol + 1, &text[sidx..idx]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((scol, sidx)) = start {
        out.push((base + scol + 1, &text[sidx..]));
    }
    out
}

/// Column (1-based) of byte offset `idx` in `text`.
fn column_of(text: &str, idx: usize) -> usize {
    text[..idx].chars().count() + 1
}

/// `key: rest`; returns the rest and its character offset.
fn keyed<'a>(line: &Line<'a>, key: &str) -> Result<(&'a str, usize)> {
    let trimmed = line.text.trim_start();
    let lead = line.text.len() - trimmed.len();
    let rest = trimmed
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::parse(line.number, column_of(line.text, lead), format!("expected `{key}:`")))?;
    let offset = lead + key.len() + 1;
    Ok((rest, column_of(line.text, offset) - 1))
}

fn parse_names(line: &Line<'_>) -> Result<Names> {
    let (rest, base) = keyed(line, "generators")?;
    let toks = tokens(rest, base);
    let mut names: Vec<String> = Vec::new();
    for (col, t) in toks {
        if !is_identifier(t) {
            return Err(Error::parse(line.number, col, format!("`{t}` is not a valid generator name")));
        }
        if names.iter().any(|n| n == t) {
            return Err(Error::parse(line.number, col, format!("generator `{t}` is declared twice")));
        }
        names.push(t.to_string());
    }
    Ok(Names(names))
}

/// Parses a word of whitespace-separated letters `x`, `x^-1`, `x^3`; a lone
/// `1` is the empty word.
pub fn parse_word(text: &str, names: &Names, line: usize, base: usize) -> Result<Word> {
    let toks = tokens(text, base);
    if let [(_, "1")] = toks.as_slice() {
        return Ok(Word::empty());
    }
    let mut w = Word::empty();
    for (col, t) in toks {
        let (name, exp) = match t.split_once('^') {
            Some((n, e)) => {
                let k = e
                    .parse::<i64>()
                    .ok()
                    .filter(|&k| k != 0)
                    .ok_or_else(|| Error::parse(line, col + n.len() + 1, format!("bad exponent `{e}`")))?;
                (n, k)
            }
            None => (t, 1),
        };
        let g = names.index_of(name).ok_or_else(|| Error::parse(line, col, format!("unknown generator `{name}`")))?;
        w.push(g, exp);
    }
    Ok(w)
}

/// A free-group endomorphism with generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedEndo {
    pub names: Names,
    pub endo: FreeEndo,
}

pub fn parse_monodromy(input: &str) -> Result<NamedEndo> {
    let mut lines = content_lines(input);
    let header = lines.next().ok_or_else(|| Error::parse(1, 1, "empty monodromy file"))?;
    let names = parse_names(&header)?;
    let mut images: Vec<Option<Word>> = vec![None; names.len()];
    for line in lines {
        let arrow = line.text.find("->").ok_or_else(|| Error::parse(line.number, 1, "expected `name -> word`"))?;
        let lhs = line.text[..arrow].trim();
        let lhs_col = column_of(line.text, line.text.len() - line.text.trim_start().len());
        let g = names
            .index_of(lhs)
            .ok_or_else(|| Error::parse(line.number, lhs_col, format!("unknown generator `{lhs}`")))?;
        if images[g].is_some() {
            return Err(Error::parse(line.number, lhs_col, format!("second image for `{lhs}`")));
        }
        let base = column_of(line.text, arrow + 2) - 1;
        images[g] = Some(parse_word(&line.text[arrow + 2..], &names, line.number, base)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(g, w)| {
            w.ok_or_else(|| Error::parse(header.number, 1, format!("no image given for `{}`", names.as_slice()[g])))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NamedEndo { endo: FreeEndo::new(images)?, names })
}

pub fn print_monodromy(m: &NamedEndo) -> String {
    let mut out = format!("generators: {}\n", m.names.as_slice().join(" "));
    for (g, img) in m.endo.images().iter().enumerate() {
        let _ = writeln!(out, "{} -> {}", m.names.as_slice()[g], m.names.format_word(img));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedPresentation {
    pub names: Names,
    pub presentation: Presentation,
}

pub fn parse_presentation(input: &str) -> Result<NamedPresentation> {
    let mut lines = content_lines(input);
    let header = lines.next().ok_or_else(|| Error::parse(1, 1, "empty presentation file"))?;
    let names = parse_names(&header)?;
    let mut relators = Vec::new();
    for line in lines {
        let (rest, base) = keyed(&line, "relator")?;
        relators.push(parse_word(rest, &names, line.number, base)?);
    }
    Ok(NamedPresentation { presentation: Presentation::new(names.len(), relators)?, names })
}

pub fn print_presentation(p: &NamedPresentation) -> String {
    let mut out = format!("generators: {}\n", p.names.as_slice().join(" "));
    for r in p.presentation.relators() {
        let _ = writeln!(out, "relator: {}", p.names.format_word(r));
    }
    out
}

/// A homomorphism into one of the supported finite targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetHom {
    Cyclic(FiniteHom<Cyclic>),
    Permutation(FiniteHom<Permutations>),
}

impl TargetHom {
    pub fn rank(&self) -> usize {
        match self {
            TargetHom::Cyclic(h) => h.rank(),
            TargetHom::Permutation(h) => h.rank(),
        }
    }

    pub fn target_name(&self) -> String {
        match self {
            TargetHom::Cyclic(h) => h.group().name(),
            TargetHom::Permutation(h) => h.group().name(),
        }
    }

    pub fn target_order(&self) -> u128 {
        match self {
            TargetHom::Cyclic(h) => h.group().order(),
            TargetHom::Permutation(h) => h.group().order(),
        }
    }

    /// Text form of each generator image.
    pub fn formatted_images(&self) -> Vec<String> {
        match self {
            TargetHom::Cyclic(h) => h.images().iter().map(|x| h.group().format_element(x)).collect(),
            TargetHom::Permutation(h) => h.images().iter().map(|x| h.group().format_element(x)).collect(),
        }
    }
}

enum Target {
    Cyclic(Cyclic),
    Permutation(Permutations),
}

fn parse_target(text: &str, line: usize, col: usize) -> Result<Target> {
    let t = text.trim();
    let err = |e: Error| Error::parse(line, col, e.to_string());
    if t.starts_with("Z/") {
        t.parse::<Cyclic>().map(Target::Cyclic).map_err(err)
    } else {
        t.parse::<Permutations>().map(Target::Permutation).map_err(err)
    }
}

/// Collects `name = value` assignments into images in generator order.
fn assign<E>(
    names: &Names,
    entries: Vec<(usize, usize, &str, &str, usize)>,
    header_line: usize,
    mut parse: impl FnMut(&str, usize, usize) -> Result<E>,
) -> Result<Vec<E>> {
    let mut images: Vec<Option<E>> = (0..names.len()).map(|_| None).collect();
    for (line, col, name, value, vcol) in entries {
        let g = names.index_of(name).ok_or_else(|| Error::parse(line, col, format!("unknown generator `{name}`")))?;
        if images[g].is_some() {
            return Err(Error::parse(line, col, format!("second value for `{name}`")));
        }
        images[g] = Some(parse(value, line, vcol)?);
    }
    images
        .into_iter()
        .enumerate()
        .map(|(g, v)| {
            v.ok_or_else(|| Error::parse(header_line, 1, format!("no value given for `{}`", names.as_slice()[g])))
        })
        .collect()
}

fn cyclic_value(group: &Cyclic, text: &str, line: usize, col: usize) -> Result<u64> {
    let v: i128 = text.trim().parse().map_err(|_| Error::parse(line, col, format!("bad residue `{}`", text.trim())))?;
    Ok(v.rem_euclid(group.modulus() as i128) as u64)
}

fn build_hom(
    target: Target,
    names: &Names,
    entries: Vec<(usize, usize, &str, &str, usize)>,
    header_line: usize,
) -> Result<TargetHom> {
    match target {
        Target::Cyclic(group) => {
            let images = assign(names, entries, header_line, |v, l, c| cyclic_value(&group, v, l, c))?;
            Ok(TargetHom::Cyclic(FiniteHom::new(group, images)?))
        }
        Target::Permutation(group) => {
            let images = assign(names, entries, header_line, |v, l, c| {
                group.parse_element(v).map_err(|e| Error::parse(l, c, e.to_string()))
            })?;
            Ok(TargetHom::Permutation(FiniteHom::new(group, images)?))
        }
    }
}

/// Parses a homomorphism file against the given generator names.
pub fn parse_hom(input: &str, names: &Names) -> Result<TargetHom> {
    let mut lines = content_lines(input);
    let header = lines.next().ok_or_else(|| Error::parse(1, 1, "empty homomorphism file"))?;
    let (rest, base) = keyed(&header, "target")?;
    let target = parse_target(rest, header.number, base + 1 + rest.len() - rest.trim_start().len())?;
    let lines: Vec<Line<'_>> = lines.collect();
    let mut entries = Vec::new();
    for line in &lines {
        let eq = line.text.find('=').ok_or_else(|| Error::parse(line.number, 1, "expected `name = value`"))?;
        let name = line.text[..eq].trim();
        let col = column_of(line.text, line.text.len() - line.text.trim_start().len());
        let value = &line.text[eq + 1..];
        let vcol = column_of(line.text, eq + 1 + (value.len() - value.trim_start().len()));
        entries.push((line.number, col, name, value, vcol));
    }
    build_hom(target, names, entries, header.number)
}

/// Parses the inline cyclic form `Z/3:x=1,y=1`.
pub fn parse_inline_hom(spec: &str, names: &Names) -> Result<TargetHom> {
    let colon = spec.find(':').ok_or_else(|| Error::parse(1, 1, "expected `Z/r:name=value,...`"))?;
    let target = parse_target(&spec[..colon], 1, 1)?;
    if !matches!(target, Target::Cyclic(_)) {
        return Err(Error::parse(1, 1, "inline homomorphisms must have a cyclic target"));
    }
    let mut entries = Vec::new();
    let mut offset = colon + 1;
    for part in spec[colon + 1..].split(',') {
        let col = column_of(spec, offset);
        let eq = part.find('=').ok_or_else(|| Error::parse(1, col, "expected `name=value`"))?;
        entries.push((1, col, part[..eq].trim(), &part[eq + 1..], column_of(spec, offset + eq + 1)));
        offset += part.len() + 1;
    }
    build_hom(target, names, entries, 1)
}

pub fn print_hom(h: &TargetHom, names: &Names) -> String {
    let mut out = format!("target: {}\n", h.target_name());
    for (name, img) in names.as_slice().iter().zip(h.formatted_images()) {
        let _ = writeln!(out, "{name} = {img}");
    }
    out
}

fn parse_int<T: Coeff>(t: &str, line: usize, col: usize) -> Result<T> {
    T::from_str_radix(t, 10).map_err(|_| Error::parse(line, col, format!("bad integer `{t}`")))
}

/// Parses a Seifert matrix file; `0` alone is the unknot.
pub fn parse_seifert<T: Coeff>(input: &str) -> Result<SeifertMatrix<T>> {
    let mut lines = content_lines(input);
    let header = lines.next().ok_or_else(|| Error::parse(1, 1, "empty Seifert matrix file"))?;
    let size = match tokens(header.text, 0).as_slice() {
        [(col, t)] => t.parse::<usize>().map_err(|_| Error::parse(header.number, *col, format!("bad size `{t}`")))?,
        _ => return Err(Error::parse(header.number, 1, "expected the matrix size alone on the first line")),
    };
    let rows = read_rows(lines, size, size, header.number, |t, l, c| parse_int::<T>(t, l, c))?;
    SeifertMatrix::new(Matrix::from_rows(rows, size)?)
}

fn read_rows<'a, E>(
    lines: impl Iterator<Item = Line<'a>>,
    rows: usize,
    cols: usize,
    header_line: usize,
    mut parse: impl FnMut(&str, usize, usize) -> Result<E>,
) -> Result<Vec<Vec<E>>> {
    let mut out = Vec::with_capacity(rows);
    let mut last = header_line;
    for line in lines {
        if out.len() == rows {
            return Err(Error::parse(line.number, 1, format!("expected only {rows} rows")));
        }
        let toks = tokens(line.text, 0);
        if toks.len() != cols {
            return Err(Error::parse(line.number, 1, format!("expected {cols} entries, found {}", toks.len())));
        }
        out.push(toks.into_iter().map(|(c, t)| parse(t, line.number, c)).collect::<Result<Vec<E>>>()?);
        last = line.number;
    }
    if out.len() < rows {
        return Err(Error::parse(last + 1, 1, format!("expected {rows} rows, found {}", out.len())));
    }
    Ok(out)
}

pub fn print_seifert<T: Coeff>(s: &SeifertMatrix<T>) -> String {
    print_int_matrix_rows(s.matrix(), format!("{}\n", s.size()))
}

fn print_int_matrix_rows<T: Coeff>(m: &Matrix<T>, mut out: String) -> String {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(T::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Parses a matrix over `Z[s, s^-1]`. All entries must use the same
/// variable letter.
pub fn parse_lambda_matrix<T: Coeff>(input: &str) -> Result<Matrix<Laurent<T>>> {
    let mut lines = content_lines(input);
    let header = lines.next().ok_or_else(|| Error::parse(1, 1, "empty matrix file"))?;
    let (rows, cols) = match tokens(header.text, 0).as_slice() {
        [(c1, r), (c2, c)] => (
            r.parse::<usize>().map_err(|_| Error::parse(header.number, *c1, format!("bad row count `{r}`")))?,
            c.parse::<usize>().map_err(|_| Error::parse(header.number, *c2, format!("bad column count `{c}`")))?,
        ),
        _ => return Err(Error::parse(header.number, 1, "expected `rows cols` on the first line")),
    };
    let mut var: Option<char> = None;
    let entries = read_rows(lines, rows, cols, header.number, |t, line, col| {
        let (p, v) = parse_poly::<T>(t).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::parse(line, col + column - 1, message),
            other => other,
        })?;
        match (var, v) {
            (Some(a), Some(b)) if a != b => {
                Err(Error::parse(line, col, format!("variable `{b}` differs from `{a}` used earlier")))
            }
            (None, Some(b)) => {
                var = Some(b);
                Ok(p)
            }
            _ => Ok(p),
        }
    })?;
    Matrix::from_rows(entries, cols)
}

pub fn print_lambda_matrix<T: Coeff>(m: &Matrix<Laurent<T>>) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|p| p.to_string().replace(' ', "")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
