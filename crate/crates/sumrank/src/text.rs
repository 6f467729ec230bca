//! Text forms of field elements and polynomials.
//!
//! Elements print as `0`, `1`, `g`, `g^k` (powers of the field generator) for
//! fields with at most 2^16 elements, and as coordinate tuples `(c0,c1,...)`
//! otherwise. The parser accepts both forms and plain integers, which are
//! read in the prime field.
//!
//! Polynomials print in ascending order, `1 + g^3*z + z^2`; bivariate terms
//! read `c*x^i*z^j`. The parser also accepts `-` between terms.

use std::fmt::Write as _;

use sumrank_core::{BivarPoly, Elem, Gf, Level, SkewPoly, TowerRef};

const POWER_FORM_LIMIT: u32 = 1 << 16;

/// A parse failure at a byte column (1-based) of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextError {
    pub column: usize,
    pub message: String,
}

impl TextError {
    fn new(column: usize, message: impl Into<String>) -> Self {
        Self {
            column,
            message: message.into(),
        }
    }
}

pub fn format_elem(field: &Gf, a: Elem) -> String {
    if a.is_zero() {
        return "0".into();
    }
    if a == Elem::ONE {
        return "1".into();
    }
    if field.size() <= POWER_FORM_LIMIT {
        match field.log(a) {
            Some(1) => return "g".into(),
            Some(k) => return format!("g^{k}"),
            None => {}
        }
    }
    let coords: Vec<String> = field.coords(a).iter().map(u32::to_string).collect();
    format!("({})", coords.join(","))
}

pub fn parse_elem(field: &Gf, token: &str) -> Result<Elem, TextError> {
    parse_elem_at(field, token.trim(), 1)
}

fn parse_elem_at(field: &Gf, tok: &str, col: usize) -> Result<Elem, TextError> {
    if tok == "g" {
        return Ok(field.generator());
    }
    if let Some(exp) = tok.strip_prefix("g^") {
        let k: u64 = exp
            .parse()
            .map_err(|_| TextError::new(col + 2, format!("bad exponent `{exp}`")))?;
        return Ok(field.exp(k));
    }
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| TextError::new(col, format!("bad coordinate tuple `{tok}`")))?;
        return field
            .from_coords(&coords)
            .map_err(|e| TextError::new(col, e.to_string()));
    }
    let (neg, digits) = match tok.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, tok),
    };
    match digits.parse::<i64>() {
        Ok(v) => Ok(field.from_int(if neg { -v } else { v })),
        Err(_) => Err(TextError::new(col, format!("bad field element `{tok}`"))),
    }
}

/// Splits `a + b - c` into signed terms with their 1-based columns.
fn terms(s: &str) -> Result<Vec<(bool, usize, &str)>, TextError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                let piece = &s[start..i];
                if piece.trim_end().ends_with('^') {
                    continue;
                }
                if piece.trim().is_empty() {
                    if out.is_empty() && c == '-' && !negative {
                        negative = true;
                        start = i + 1;
                        continue;
                    }
                    return Err(TextError::new(i + 1, "empty term"));
                }
                out.push(term_at(s, start, i, negative));
                negative = c == '-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(TextError::new(s.len(), "unbalanced parentheses"));
    }
    if s[start..].trim().is_empty() {
        return Err(TextError::new(s.len() + 1, "empty term"));
    }
    out.push(term_at(s, start, s.len(), negative));
    Ok(out)
}

fn term_at(s: &str, from: usize, to: usize, negative: bool) -> (bool, usize, &str) {
    let raw = &s[from..to];
    let lead = raw.len() - raw.trim_start().len();
    (negative, from + lead + 1, raw.trim())
}

/// One term `c*x^i*z^j` with exponents of the named variables.
fn parse_term(
    field: &Gf,
    term: &str,
    col: usize,
    vars: &[char],
) -> Result<(Elem, Vec<usize>), TextError> {
    let mut coeff = Elem::ONE;
    let mut exps = vec![0usize; vars.len()];
    let mut offset = 0;
    for factor in term.split('*') {
        let fcol = col + offset;
        offset += factor.len() + 1;
        let f = factor.trim();
        let var = vars
            .iter()
            .position(|&v| f.starts_with(v) && (f.len() == 1 || f[1..].starts_with('^')));
        match var {
            Some(k) => {
                let e = if f.len() == 1 {
                    1
                } else {
                    f[2..]
                        .parse()
                        .map_err(|_| TextError::new(fcol + 2, format!("bad exponent in `{f}`")))?
                };
                exps[k] += e;
            }
            None => {
                let (neg, body) = match f.strip_prefix('-') {
                    Some(b) if !b.starts_with(|c: char| c.is_ascii_digit()) => (true, b),
                    _ => (false, f),
                };
                let mut c = parse_elem_at(field, body, fcol)?;
                if neg {
                    c = field.neg(c);
                }
                coeff = field.mul(coeff, c);
            }
        }
    }
    Ok((coeff, exps))
}

fn parse_terms(field: &Gf, s: &str, vars: &[char]) -> Result<Vec<(Elem, Vec<usize>)>, TextError> {
    if s.trim() == "0" {
        return Ok(Vec::new());
    }
    terms(s)?
        .into_iter()
        .map(|(neg, col, t)| {
            let (c, e) = parse_term(field, t, col, vars)?;
            Ok((if neg { field.neg(c) } else { c }, e))
        })
        .collect()
}

fn monomial(field: &Gf, c: Elem, factors: &[(char, usize)]) -> String {
    let vars: Vec<String> = factors
        .iter()
        .filter(|&&(_, e)| e > 0)
        .map(|&(v, e)| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    let coeff = format_elem(field, c);
    match (vars.is_empty(), c == Elem::ONE) {
        (true, _) => coeff,
        (false, true) => vars.join("*"),
        (false, false) => format!("{coeff}*{}", vars.join("*")),
    }
}

/// A univariate polynomial given by ascending coefficients.
pub fn format_poly(field: &Gf, coeffs: &[Elem], var: char) -> String {
    let parts: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| monomial(field, c, &[(var, i)]))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn parse_poly(field: &Gf, s: &str, var: char) -> Result<Vec<Elem>, TextError> {
    let mut out: Vec<Elem> = Vec::new();
    for (c, e) in parse_terms(field, s, &[var])? {
        if out.len() <= e[0] {
            out.resize(e[0] + 1, Elem::ZERO);
        }
        out[e[0]] = field.add(out[e[0]], c);
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    Ok(out)
}

pub fn format_skew(p: &SkewPoly) -> String {
    format_poly(p.tower().field(p.level()), p.coeffs(), 'z')
}

pub fn parse_skew(tower: &TowerRef, level: Level, s: &str) -> Result<SkewPoly, TextError> {
    let coeffs = parse_poly(tower.field(level), s, 'z')?;
    SkewPoly::new(tower.clone(), level, coeffs).map_err(|e| TextError::new(1, e.to_string()))
}

pub fn format_bivar(p: &BivarPoly) -> String {
    let field = p.tower().field(p.level());
    let mut out = String::new();
    for i in 0..p.ell() {
        for j in 0..p.block_len() {
            let c = p.coeff(i, j);
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = write!(out, "{}", monomial(field, c, &[('x', i), ('z', j)]));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses `Σ c x^i z^j` over `F`, reducing exponents with `x^ℓ = z^N = 1`.
/// Coefficients are read as written, so `z·c` must be given as `θ(c)·z`.
pub fn parse_bivar(tower: &TowerRef, s: &str) -> Result<BivarPoly, TextError> {
    let field = tower.f();
    let (ell, nb) = (tower.ell(), tower.block_len());
    let mut coeffs = vec![Elem::ZERO; ell * nb];
    for (c, e) in parse_terms(field, s, &['x', 'z'])? {
        let idx = (e[0] % ell) * nb + e[1] % nb;
        coeffs[idx] = field.add(coeffs[idx], c);
    }
    BivarPoly::new(tower.clone(), Level::F, coeffs).map_err(|e| TextError::new(1, e.to_string()))
}
