//! DIMACS CNF reading and writing, plus the relevant-set file format.
//!
//! Atom names may be attached with comment lines of the form
//! `c atom <index> <name>`; unnamed atoms are named by their decimal index.
//! Other comment lines are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{AtomSet, ClauseSet, ModelError, RelevantSet, VariableUniverse};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCount { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    Unterminated,
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn syntax(line: usize, msg: impl Into<String>) -> DimacsError {
    DimacsError::Syntax { line, msg: msg.into() }
}

/// Parses DIMACS CNF text. Tautological and duplicate clauses are dropped.
pub fn parse_cnf(text: &str) -> Result<ClauseSet, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut names: Vec<(usize, u32, String)> = Vec::new();
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line == "%" {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                let mut toks = rest.split_whitespace();
                if toks.next() == Some("atom") {
                    let idx = toks
                        .next()
                        .and_then(|t| t.parse::<u32>().ok())
                        .filter(|&v| v > 0)
                        .ok_or_else(|| syntax(lineno, "expected `c atom <index> <name>`"))?;
                    let name = toks
                        .next()
                        .ok_or_else(|| syntax(lineno, "expected `c atom <index> <name>`"))?;
                    names.push((lineno, idx, name.to_string()));
                }
                continue;
            }
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(syntax(lineno, "duplicate header"));
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
                return Err(syntax(lineno, "expected `p cnf <n_vars> <n_clauses>`"));
            }
            let nv = toks[2].parse().map_err(|_| syntax(lineno, "bad variable count"))?;
            let nc = toks[3].parse().map_err(|_| syntax(lineno, "bad clause count"))?;
            header = Some((nv, nc));
            continue;
        }
        let (n_vars, _) = header.ok_or(DimacsError::MissingHeader)?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| syntax(lineno, format!("invalid literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > n_vars {
                    return Err(syntax(lineno, format!("literal {lit} exceeds declared {n_vars} variables")));
                }
                current.push(lit as i32);
            }
        }
    }

    let (n_vars, n_clauses) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::Unterminated);
    }
    if clauses.len() != n_clauses {
        return Err(DimacsError::ClauseCount {
            declared: n_clauses,
            found: clauses.len(),
        });
    }

    let mut universe = VariableUniverse::anonymous(n_vars);
    for (lineno, idx, name) in names {
        if idx as usize > n_vars {
            return Err(syntax(lineno, format!("atom {idx} exceeds declared {n_vars} variables")));
        }
        universe.rename(idx, name).map_err(|e| syntax(lineno, e.to_string()))?;
    }
    Ok(ClauseSet::from_literals(universe, clauses)?)
}

/// Writes `k` in DIMACS CNF. Atoms whose name differs from their index get a
/// `c atom` comment so that [`parse_cnf`] reproduces the universe.
pub fn write_cnf(k: &ClauseSet) -> String {
    let mut out = String::new();
    for (i, name) in k.universe().names().enumerate() {
        let idx = i + 1;
        if name != idx.to_string() {
            let _ = writeln!(out, "c atom {idx} {name}");
        }
    }
    let _ = writeln!(out, "p cnf {} {}", k.universe().len(), k.len());
    for c in k.clauses() {
        let _ = writeln!(out, "{c}");
    }
    out
}

/// Parses a relevant-set file: whitespace-separated positive atom indices,
/// with `c` comment lines.
pub fn parse_relevant(text: &str, universe: &VariableUniverse) -> Result<RelevantSet, DimacsError> {
    let mut atoms = AtomSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('c') {
            continue;
        }
        for tok in line.split_whitespace() {
            let a: u32 = tok
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| syntax(i + 1, format!("expected positive atom index, got `{tok}`")))?;
            atoms.insert(a);
        }
    }
    Ok(RelevantSet::checked(atoms, universe)?)
}

pub fn write_relevant(r: &RelevantSet) -> String {
    let mut out = r.atoms().iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    out.push('\n');
    out
}
