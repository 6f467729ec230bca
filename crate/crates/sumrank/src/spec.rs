//! Code-spec files.
//!
//! ```text
//! # comments start with '#'
//! [tower]
//! p = 2
//! m = 3
//! h = 2
//! ell = 3
//! N = 3
//!
//! [generator]
//! f1 = x^2 + x + 1
//! f2 = z + 1
//! ```
//!
//! `[tower]` takes the keys of the tower JSON (`p`, `e_deg`, `m`, `h`, `ell`,
//! `N`, `sigma_power`, and optionally `moduli` / `generators` as inline JSON,
//! which are checked against the constructed tower). The body is either
//! `[generator]` with `g = ...` or any of `f1 = ...`, `f2 = ...`, or
//! `[matrix]` with an optional `partition = n_1 n_2 ...` line followed by one
//! generator row per line.

use std::sync::Arc;

use sumrank_core::code::code_from_skew_generator;
use sumrank_core::product::product_generator_poly;
use sumrank_core::{
    build_tower, BivarPoly, Elem, Level, LinearCode, Partition, SkewPoly, TowerRef,
};
use thiserror::Error;

use crate::json::TowerJson;
use crate::text::{self, TextError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Core {
        line: usize,
        source: sumrank_core::Error,
    },
}

impl SpecError {
    fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn text(line: usize, offset: usize, e: TextError) -> Self {
        Self::parse(line, offset + e.column, e.message)
    }

    /// The library error behind a construction failure, if any.
    pub fn core(&self) -> Option<&sumrank_core::Error> {
        match self {
            Self::Core { source, .. } => Some(source),
            Self::Parse { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SpecBody {
    Matrix {
        partition: Option<Vec<usize>>,
        rows: Vec<Vec<Elem>>,
    },
    Generator {
        f1: Option<Vec<Elem>>,
        f2: Option<SkewPoly>,
        g: Option<BivarPoly>,
    },
}

#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub tower: TowerRef,
    pub body: SpecBody,
    /// Line of the body header, for error reporting.
    body_line: usize,
}

/// A constructed code and whatever generator data the spec carried.
#[derive(Clone, Debug)]
pub struct BuiltCode {
    pub code: LinearCode,
    pub generator: Option<BivarPoly>,
    pub f1: Option<Vec<Elem>>,
    pub f2: Option<SkewPoly>,
}

impl BuiltCode {
    /// Whether the spec gave the code through `f1` and/or `f2`.
    pub fn is_factored(&self) -> bool {
        self.f1.is_some() || self.f2.is_some()
    }
}

#[derive(Default)]
struct TowerKeys {
    values: Vec<(String, String, usize)>,
}

impl TowerKeys {
    fn get(&self, key: &str) -> Option<(&str, usize)> {
        self.values
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, l)| (v.as_str(), *l))
    }

    fn int(&self, key: &str, default: Option<u32>, header: usize) -> Result<u32, SpecError> {
        match self.get(key) {
            Some((v, line)) => v.parse().map_err(|_| {
                SpecError::parse(line, 1, format!("`{key}` must be a nonnegative integer"))
            }),
            None => default
                .ok_or_else(|| SpecError::parse(header, 1, format!("[tower] is missing `{key}`"))),
        }
    }
}

/// Splits a matrix row on whitespace outside parentheses, with 1-based columns.
fn row_tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = None;
    for (i, c) in line.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn key_value(line: &str, lineno: usize) -> Result<(String, String, usize), SpecError> {
    let eq = line
        .find('=')
        .ok_or_else(|| SpecError::parse(lineno, 1, "expected `key = value`"))?;
    let key = line[..eq].trim();
    if key.is_empty() {
        return Err(SpecError::parse(lineno, 1, "empty key"));
    }
    let rest = &line[eq + 1..];
    let lead = rest.len() - rest.trim_start().len();
    Ok((key.to_string(), rest.trim().to_string(), eq + 2 + lead))
}

pub fn parse_code_spec(input: &str) -> Result<CodeSpec, SpecError> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Tower,
        Matrix,
        Generator,
    }
    let mut section = Section::None;
    let mut tower_line = None;
    let mut body_line = None;
    let mut is_matrix = false;
    let mut keys = TowerKeys::default();
    let mut matrix_lines: Vec<(usize, &str)> = Vec::new();
    let mut gen_lines: Vec<(usize, String, String, usize)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let trimmed = line.trim();
        if trimmed.starts_with('[') {
            let name = trimmed
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| SpecError::parse(lineno, 1, "malformed section header"))?;
            section = match name.trim() {
                "tower" if tower_line.is_none() => {
                    tower_line = Some(lineno);
                    Section::Tower
                }
                "matrix" | "generator" if body_line.is_some() => {
                    return Err(SpecError::parse(
                        lineno,
                        1,
                        "only one of [matrix] or [generator] is allowed",
                    ));
                }
                "matrix" => {
                    body_line = Some(lineno);
                    is_matrix = true;
                    Section::Matrix
                }
                "generator" => {
                    body_line = Some(lineno);
                    Section::Generator
                }
                "tower" => return Err(SpecError::parse(lineno, 1, "duplicate [tower] section")),
                other => {
                    return Err(SpecError::parse(
                        lineno,
                        2,
                        format!("unknown section `{other}`"),
                    ))
                }
            };
            continue;
        }
        match section {
            Section::None => {
                return Err(SpecError::parse(
                    lineno,
                    1,
                    "content before the first section",
                ))
            }
            Section::Tower => {
                let (k, v, _) = key_value(line, lineno)?;
                const KNOWN: [&str; 9] = [
                    "p",
                    "e_deg",
                    "m",
                    "h",
                    "ell",
                    "N",
                    "sigma_power",
                    "moduli",
                    "generators",
                ];
                if !KNOWN.contains(&k.as_str()) {
                    return Err(SpecError::parse(
                        lineno,
                        1,
                        format!("unknown tower key `{k}`"),
                    ));
                }
                if keys.get(&k).is_some() {
                    return Err(SpecError::parse(lineno, 1, format!("duplicate key `{k}`")));
                }
                keys.values.push((k, v, lineno));
            }
            Section::Matrix => matrix_lines.push((lineno, line)),
            Section::Generator => {
                let (k, v, col) = key_value(line, lineno)?;
                if !["f1", "f2", "g"].contains(&k.as_str()) {
                    return Err(SpecError::parse(
                        lineno,
                        1,
                        format!("unknown generator key `{k}`"),
                    ));
                }
                if gen_lines.iter().any(|(_, key, _, _)| *key == k) {
                    return Err(SpecError::parse(lineno, 1, format!("duplicate key `{k}`")));
                }
                gen_lines.push((lineno, k, v, col));
            }
        }
    }

    let header = tower_line.ok_or_else(|| SpecError::parse(1, 1, "missing [tower] section"))?;
    let body_line = body_line
        .ok_or_else(|| SpecError::parse(header, 1, "missing [matrix] or [generator] section"))?;
    let tower = build_spec_tower(&keys, header)?;

    let body = if is_matrix {
        parse_matrix(&tower, &matrix_lines)?
    } else {
        parse_generator(&tower, &gen_lines, body_line)?
    };
    Ok(CodeSpec {
        tower,
        body,
        body_line,
    })
}

fn build_spec_tower(keys: &TowerKeys, header: usize) -> Result<TowerRef, SpecError> {
    let p = keys.int("p", None, header)?;
    let e_deg = keys.int("e_deg", Some(1), header)?;
    let m = keys.int("m", None, header)?;
    let h = keys.int("h", None, header)?;
    let ell = keys.int("ell", None, header)?;
    let n = keys.int("N", None, header)?;
    let u = keys.int("sigma_power", Some(1), header)?;
    let core = |e| SpecError::Core {
        line: header,
        source: e,
    };
    let tower = build_tower(p, e_deg, m, h, ell, n)
        .and_then(|t| t.with_sigma_power(u))
        .map_err(core)?;
    let tower = Arc::new(tower);
    let description = TowerJson::describe(&tower);
    for key in ["moduli", "generators"] {
        if let Some((v, line)) = keys.get(key) {
            let given: serde_json::Value = serde_json::from_str(v)
                .map_err(|e| SpecError::parse(line, e.column(), format!("`{key}`: {e}")))?;
            let ours = serde_json::to_value(&description).expect("serializable");
            if ours[key] != given {
                return Err(SpecError::parse(
                    line,
                    1,
                    format!("`{key}` does not match the constructed tower"),
                ));
            }
        }
    }
    Ok(tower)
}

fn parse_matrix(tower: &TowerRef, lines: &[(usize, &str)]) -> Result<SpecBody, SpecError> {
    let f = tower.f();
    let mut partition = None;
    let mut rows = Vec::new();
    for &(lineno, line) in lines {
        if let Some(eq) = line.find('=') {
            let key = line[..eq].trim();
            if key != "partition" {
                return Err(SpecError::parse(
                    lineno,
                    1,
                    format!("unknown matrix key `{key}`"),
                ));
            }
            if partition.is_some() || !rows.is_empty() {
                return Err(SpecError::parse(
                    lineno,
                    1,
                    "`partition` must come once, before the rows",
                ));
            }
            let parts = row_tokens(&line[eq + 1..])
                .into_iter()
                .map(|(col, t)| {
                    t.parse::<usize>().map_err(|_| {
                        SpecError::parse(lineno, eq + 1 + col, format!("bad part `{t}`"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            partition = Some(parts);
            continue;
        }
        let row = row_tokens(line)
            .into_iter()
            .map(|(col, t)| text::parse_elem(f, t).map_err(|e| SpecError::text(lineno, col - 1, e)))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            let first: &Vec<Elem> = first;
            if first.len() != row.len() {
                return Err(SpecError::parse(
                    lineno,
                    1,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    Ok(SpecBody::Matrix { partition, rows })
}

fn parse_generator(
    tower: &TowerRef,
    lines: &[(usize, String, String, usize)],
    body_line: usize,
) -> Result<SpecBody, SpecError> {
    let (mut f1, mut f2, mut g) = (None, None, None);
    for (lineno, key, value, col) in lines {
        let off = col - 1;
        match key.as_str() {
            "f1" => {
                f1 = Some(
                    text::parse_poly(tower.f(), value, 'x')
                        .map_err(|e| SpecError::text(*lineno, off, e))?,
                )
            }
            "f2" => {
                f2 = Some(
                    text::parse_skew(tower, Level::F, value)
                        .map_err(|e| SpecError::text(*lineno, off, e))?,
                )
            }
            _ => {
                g = Some(
                    text::parse_bivar(tower, value)
                        .map_err(|e| SpecError::text(*lineno, off, e))?,
                )
            }
        }
    }
    if g.is_some() && (f1.is_some() || f2.is_some()) {
        return Err(SpecError::parse(
            body_line,
            1,
            "give either g or f1/f2, not both",
        ));
    }
    if g.is_none() && f1.is_none() && f2.is_none() {
        return Err(SpecError::parse(
            body_line,
            1,
            "[generator] needs g, f1 or f2",
        ));
    }
    Ok(SpecBody::Generator { f1, f2, g })
}

impl CodeSpec {
    pub fn build(&self) -> Result<BuiltCode, SpecError> {
        let core = |e| SpecError::Core {
            line: self.body_line,
            source: e,
        };
        let t = &self.tower;
        match &self.body {
            SpecBody::Matrix { partition, rows } => {
                let len = rows.first().map_or(t.n(), Vec::len);
                let part = match partition {
                    Some(p) => Partition::new(p.clone()),
                    None if len == t.n() => Partition::uniform(t.ell(), t.block_len()),
                    None => Partition::new(vec![len]),
                }
                .map_err(core)?;
                let code = LinearCode::new(t.clone(), part, rows.clone()).map_err(core)?;
                Ok(BuiltCode {
                    code,
                    generator: None,
                    f1: None,
                    f2: None,
                })
            }
            SpecBody::Generator { f1, f2, g } => {
                let generator = match g {
                    Some(g) => g.clone(),
                    None => {
                        let one_x = vec![Elem::ONE];
                        let one_z = SkewPoly::one(t.clone(), Level::F);
                        product_generator_poly(
                            t,
                            f1.as_deref().unwrap_or(&one_x),
                            f2.as_ref().unwrap_or(&one_z),
                        )
                        .map_err(core)?
                    }
                };
                let code = code_from_skew_generator(&generator).map_err(core)?;
                Ok(BuiltCode {
                    code,
                    generator: Some(generator),
                    f1: f1.clone(),
                    f2: f2.clone(),
                })
            }
        }
    }
}
