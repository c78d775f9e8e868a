//! Structure documents.
//!
//! ```text
//! # comment
//! chart x y z
//! E
//!   [1, 0, 0 | 0, 0, 0]
//!   [0, 0, 0 | 0, 0, 1]
//! E_prime
//!   ...
//! adapted x | y | z
//! submanifold
//!   x4 = 0
//! foliation x3
//! grid -2..2 cap 256
//! hamiltonian f = x1 ; X = [0, 1, 0, 0]
//! ```
//!
//! A missing `E_prime` block is computed from `E`.

use crate::parse::{parse_polynomial_at, ParseError};
use isotropy_core::algebra::{q, Rational};
use isotropy_core::{BigSection, Chart, OneForm, Polynomial, VectorField};

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub lo: i64,
    pub hi: i64,
    pub cap: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { lo: -2, hi: 2, cap: 256 }
    }
}

impl GridSpec {
    /// `lo..hi` with an optional ` cap n`.
    pub fn parse(s: &str) -> Result<GridSpec, String> {
        let mut parts = s.split_whitespace();
        let range = parts.next().ok_or("empty grid specification")?;
        let (lo, hi) = range.split_once("..").ok_or("grid range must be lo..hi")?;
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad grid bound '{lo}'"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad grid bound '{hi}'"))?;
        if lo > hi {
            return Err("grid lower bound exceeds upper bound".into());
        }
        let mut cap = 256;
        match (parts.next(), parts.next()) {
            (None, _) => {}
            (Some("cap"), Some(n)) => cap = n.parse().map_err(|_| format!("bad grid cap '{n}'"))?,
            _ => return Err("expected 'cap <n>' after the grid range".into()),
        }
        if cap == 0 {
            return Err("grid cap must be positive".into());
        }
        Ok(GridSpec { lo, hi, cap })
    }
}

/// Affine equation `Σ c_i x^i = d`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineEquation {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    pub name: String,
    pub function: Polynomial,
    pub field: VectorField,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Adapted {
    pub leaf: Vec<String>,
    pub transverse: Vec<String>,
    pub extra: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureDocument {
    pub chart: Chart,
    pub e: Vec<BigSection>,
    pub e_prime: Option<Vec<BigSection>>,
    pub adapted: Option<Adapted>,
    pub submanifold: Option<Vec<AffineEquation>>,
    pub foliation: Option<Vec<String>>,
    pub grid: Option<GridSpec>,
    pub hamiltonians: Vec<Hamiltonian>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Split on `sep` outside parentheses, keeping byte offsets.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn parse_list(s: &str, names: &[String], line: usize, col0: usize, m: usize, what: &str) -> Result<Vec<Polynomial>, ParseError> {
    let parts = split_top(s, ',');
    if parts.len() != m {
        return Err(perr(line, col0 + 1, format!("{what} has {} components, expected {m}", parts.len())));
    }
    parts.into_iter().map(|(off, p)| parse_polynomial_at(p, names, line, col0 + off)).collect()
}

fn parse_vector(s: &str, names: &[String], line: usize, col0: usize) -> Result<VectorField, ParseError> {
    let t = s.trim_start();
    let lead = s.len() - t.len();
    let t = t.trim_end();
    if !t.starts_with('[') || !t.ends_with(']') {
        return Err(perr(line, col0 + lead + 1, "expected a vector field in brackets"));
    }
    let inner = &t[1..t.len() - 1];
    Ok(VectorField::new(parse_list(inner, names, line, col0 + lead + 1, names.len(), "vector field")?))
}

fn parse_section(s: &str, names: &[String], line: usize, col0: usize) -> Result<BigSection, ParseError> {
    let t = s.trim_end();
    if !t.starts_with('[') || !t.ends_with(']') {
        return Err(perr(line, col0 + 1, "expected a section '[X | α]'"));
    }
    let inner = &t[1..t.len() - 1];
    let halves = split_top(inner, '|');
    if halves.len() != 2 {
        return Err(perr(line, col0 + 1, "a section needs exactly one '|'"));
    }
    let m = names.len();
    let x = parse_list(halves[0].1, names, line, col0 + 1 + halves[0].0, m, "vector part")?;
    let a = parse_list(halves[1].1, names, line, col0 + 1 + halves[1].0, m, "form part")?;
    Ok(BigSection { x: VectorField::new(x), a: OneForm::new(a) })
}

fn parse_equation(s: &str, names: &[String], line: usize, col0: usize) -> Result<AffineEquation, ParseError> {
    let Some((l, r)) = s.split_once('=') else {
        return Err(perr(line, col0 + 1, "expected an equation 'lhs = rhs'"));
    };
    let lp = parse_polynomial_at(l, names, line, col0)?;
    let rp = parse_polynomial_at(r, names, line, col0 + l.len() + 1)?;
    let d = lp - rp;
    if d.degree().unwrap_or(0) > 1 {
        return Err(perr(line, col0 + 1, "submanifold equations must be affine"));
    }
    let m = names.len();
    let mut coeffs = vec![q(0); m];
    let mut rhs = q(0);
    for (mono, c) in d.terms() {
        match (0..m).find(|&i| mono.exponent(i) == 1) {
            Some(i) => coeffs[i] = c.clone(),
            None => rhs = -c.clone(),
        }
    }
    Ok(AffineEquation { coeffs, rhs })
}

fn names_in(s: &str, chart: Option<&Chart>, line: usize, col0: usize) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    let mut off = 0;
    for w in s.split_whitespace() {
        let at = s[off..].find(w).map_or(off, |p| off + p);
        off = at + w.len();
        if let Some(c) = chart {
            if c.index_of(w).is_none() {
                return Err(perr(line, col0 + at + 1, format!("unknown coordinate '{w}'")));
            }
        }
        out.push(w.to_string());
    }
    Ok(out)
}

#[derive(PartialEq)]
enum Block {
    None,
    E,
    EPrime,
    Submanifold,
}

pub fn parse_document(text: &str) -> Result<StructureDocument, ParseError> {
    let mut chart: Option<Chart> = None;
    let mut e: Option<Vec<BigSection>> = None;
    let mut e_prime: Option<Vec<BigSection>> = None;
    let mut adapted = None;
    let mut submanifold: Option<Vec<AffineEquation>> = None;
    let mut foliation = None;
    let mut grid = None;
    let mut hamiltonians = Vec::new();
    let mut block = Block::None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let indented = body.starts_with(' ') || body.starts_with('\t');
        let col0 = body.len() - body.trim_start().len();
        let t = body.trim();
        if indented {
            let names = chart.as_ref().ok_or_else(|| perr(line, col0 + 1, "chart must come first"))?.names().to_vec();
            match block {
                Block::E => e.get_or_insert_with(Vec::new).push(parse_section(t, &names, line, col0)?),
                Block::EPrime => e_prime.get_or_insert_with(Vec::new).push(parse_section(t, &names, line, col0)?),
                Block::Submanifold => {
                    submanifold.get_or_insert_with(Vec::new).push(parse_equation(t, &names, line, col0)?)
                }
                Block::None => return Err(perr(line, col0 + 1, "indented line outside a block")),
            }
            continue;
        }
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest_col = t.len() - rest.len();
        block = Block::None;
        match kw {
            "chart" => {
                if chart.is_some() {
                    return Err(perr(line, 1, "duplicate chart"));
                }
                let ns = names_in(rest, None, line, rest_col)?;
                if ns.is_empty() {
                    return Err(perr(line, 1, "chart needs at least one coordinate"));
                }
                chart = Some(Chart::new(ns).map_err(|err| perr(line, 1, err.to_string()))?);
            }
            "E" | "E_prime" | "submanifold" => {
                if chart.is_none() {
                    return Err(perr(line, 1, "chart must come first"));
                }
                if !rest.trim().is_empty() {
                    return Err(perr(line, rest_col + 1, format!("'{kw}' takes indented lines")));
                }
                block = match kw {
                    "E" => Block::E,
                    "E_prime" => Block::EPrime,
                    _ => Block::Submanifold,
                };
                let slot_taken = match kw {
                    "E" => e.replace(Vec::new()).is_some(),
                    "E_prime" => e_prime.replace(Vec::new()).is_some(),
                    _ => submanifold.replace(Vec::new()).is_some(),
                };
                if slot_taken {
                    return Err(perr(line, 1, format!("duplicate block '{kw}'")));
                }
            }
            "adapted" => {
                let c = chart.as_ref().ok_or_else(|| perr(line, 1, "chart must come first"))?;
                let parts = split_top(rest, '|');
                if parts.len() != 3 {
                    return Err(perr(line, 1, "adapted needs 'leaf | transverse | extra'"));
                }
                let g = |i: usize| names_in(parts[i].1, Some(c), line, rest_col + parts[i].0);
                adapted = Some(Adapted { leaf: g(0)?, transverse: g(1)?, extra: g(2)? });
            }
            "foliation" => {
                foliation = Some(names_in(rest, None, line, rest_col)?);
            }
            "grid" => {
                grid = Some(GridSpec::parse(rest).map_err(|m| perr(line, rest_col + 1, m))?);
            }
            "hamiltonian" => {
                let names = chart.as_ref().ok_or_else(|| perr(line, 1, "chart must come first"))?.names().to_vec();
                let parts = split_top(rest, ';');
                if parts.len() != 2 {
                    return Err(perr(line, 1, "expected 'hamiltonian f = expr ; X = [..]'"));
                }
                let (fo, fpart) = parts[0];
                let (name, fexpr) = fpart.split_once('=').ok_or_else(|| perr(line, rest_col + fo + 1, "expected 'f = expr'"))?;
                let function = parse_polynomial_at(fexpr, &names, line, rest_col + fo + name.len() + 1)?;
                let (xo, xpart) = parts[1];
                let (_, xexpr) = xpart.split_once('=').ok_or_else(|| perr(line, rest_col + xo + 1, "expected 'X = [..]'"))?;
                let xcol = rest_col + xo + xpart.find('=').unwrap_or(0) + 1;
                let field = parse_vector(xexpr, &names, line, xcol)?;
                hamiltonians.push(Hamiltonian { name: name.trim().to_string(), function, field });
            }
            other => return Err(perr(line, 1, format!("unknown block '{other}'"))),
        }
    }
    let chart = chart.ok_or_else(|| perr(1, 1, "missing chart"))?;
    let e = e.ok_or_else(|| perr(1, 1, "missing E block"))?;
    if e.is_empty() {
        return Err(perr(1, 1, "E block is empty"));
    }
    Ok(StructureDocument { chart, e, e_prime, adapted, submanifold, foliation, grid, hamiltonians })
}

/// Canonical text of a section.
pub fn print_section(s: &BigSection, names: &[String]) -> String {
    let x: Vec<String> = s.x.comps().iter().map(|p| p.to_string_with(names)).collect();
    let a: Vec<String> = s.a.comps().iter().map(|p| p.to_string_with(names)).collect();
    format!("[{} | {}]", x.join(", "), a.join(", "))
}
