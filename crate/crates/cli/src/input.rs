//! JSON algebra files and catalog-name resolution.

use std::collections::BTreeMap;
use std::path::Path;

use liemetric::catalog::{self, ALGEBRA_NAMES};
use liemetric::forms::killing_form;
use liemetric::{parse_rational, LieAlgebra, Rational, SymBilinearForm, Verdict};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Num {
    Str(String),
    Int(i64),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    dim: usize,
    #[serde(default)]
    brackets: Vec<(usize, usize, usize, Num)>,
    #[serde(default)]
    metrics: BTreeMap<String, Vec<(usize, usize, Num)>>,
}

/// An algebra with its named metrics, from the catalog or a file.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub name: String,
    pub algebra: LieAlgebra,
    pub metrics: Vec<(String, SymBilinearForm)>,
}

impl Loaded {
    /// Named metric; `killing` is always available.
    pub fn metric(&self, name: &str) -> Result<SymBilinearForm, CliError> {
        if let Some((_, m)) = self.metrics.iter().find(|(n, _)| n == name) {
            return Ok(m.clone());
        }
        if name == "killing" {
            return Ok(killing_form(&self.algebra));
        }
        let known: Vec<&str> = self.metrics.iter().map(|(n, _)| n.as_str()).chain(["killing"]).collect();
        Err(CliError::Usage(format!(
            "{} has no metric {name:?}; available: {}",
            self.name,
            known.join(", ")
        )))
    }
}

/// Catalog names win over paths; a leading `--` forces a path.
pub fn resolve(target: &str) -> Result<Loaded, CliError> {
    if let Some(path) = target.strip_prefix("--") {
        return load_file(Path::new(path));
    }
    if ALGEBRA_NAMES.contains(&target) {
        let entry = catalog::get(target)?;
        return Ok(Loaded {
            name: target.to_string(),
            algebra: entry.algebra,
            metrics: entry.forms.into_iter().map(|f| (f.name, f.form)).collect(),
        });
    }
    load_file(Path::new(target))
}

pub fn load_file(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut loaded = parse_algebra_file(&text)?;
    loaded.name = path.display().to_string();
    Ok(loaded)
}

/// Parses the JSON schema `{dim, brackets: [[i,j,k,"p/q"]], metrics: {name: [[i,j,"p/q"]]}}`.
pub fn parse_algebra_file(text: &str) -> Result<Loaded, CliError> {
    let raw: RawFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse { line: e.line(), msg: e.to_string() })?;
    let dim = raw.dim;
    if dim == 0 {
        return Err(CliError::Parse { line: key_line(text, "dim"), msg: "dim must be positive".into() });
    }
    let lines = entry_lines(text, &["brackets"]);
    let line = |n: usize| lines.get(n).copied().unwrap_or(0);
    let mut entries = Vec::with_capacity(raw.brackets.len());
    for (n, (i, j, k, v)) in raw.brackets.iter().enumerate() {
        if *i >= dim || *j >= dim || *k >= dim {
            return Err(CliError::Parse {
                line: line(n),
                msg: format!("bracket index out of range for dim {dim}"),
            });
        }
        let v = number(v).map_err(|msg| CliError::Parse { line: line(n), msg })?;
        entries.push((*i, *j, *k, v));
    }
    let algebra = LieAlgebra::from_brackets(dim, &entries)
        .map_err(|e| CliError::Parse { line: key_line(text, "brackets"), msg: e.to_string() })?;
    if let Verdict::Fail(t) = algebra.jacobi_check() {
        return Err(CliError::Jacobi(t));
    }

    let mut metrics = Vec::new();
    for (name, raw_entries) in &raw.metrics {
        let lines = entry_lines(text, &["metrics", name]);
        let line = |n: usize| lines.get(n).copied().unwrap_or(0);
        let mut entries = Vec::with_capacity(raw_entries.len());
        for (n, (i, j, v)) in raw_entries.iter().enumerate() {
            if *i >= dim || *j >= dim {
                return Err(CliError::Parse {
                    line: line(n),
                    msg: format!("metric {name}: index out of range for dim {dim}"),
                });
            }
            let v = number(v).map_err(|msg| CliError::Parse { line: line(n), msg })?;
            entries.push((*i, *j, v));
        }
        let form = SymBilinearForm::from_entries(dim, &entries).map_err(|e| CliError::Parse {
            line: lines.first().copied().unwrap_or(0),
            msg: format!("metric {name}: {e}"),
        })?;
        metrics.push((name.clone(), form));
    }
    Ok(Loaded { name: String::new(), algebra, metrics })
}

fn number(v: &Num) -> Result<Rational, String> {
    match v {
        Num::Int(n) => Ok(Rational::from_integer((*n).into())),
        Num::Str(s) => parse_rational(s).map_err(|e| e.to_string()),
    }
}

fn line_of(text: &str, pos: usize) -> usize {
    text[..pos].matches('\n').count() + 1
}

/// Line of the first occurrence of `"key"`.
fn key_line(text: &str, key: &str) -> usize {
    text.find(&format!("\"{key}\"")).map(|p| line_of(text, p)).unwrap_or(0)
}

/// Lines on which the entries of the array under the nested `keys` start.
/// Best effort: used only to point error messages at the right place.
fn entry_lines(text: &str, keys: &[&str]) -> Vec<usize> {
    let mut pos = 0;
    for key in keys {
        match text[pos..].find(&format!("\"{key}\"")) {
            Some(p) => pos += p + key.len() + 2,
            None => return Vec::new(),
        }
    }
    let Some(open) = text[pos..].find('[') else { return Vec::new() };
    let mut depth = 0;
    let mut in_str = false;
    let mut escaped = false;
    let mut out = Vec::new();
    for (off, ch) in text[pos + open..].char_indices() {
        if in_str {
            match ch {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_str = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' => in_str = true,
            '[' => {
                depth += 1;
                if depth == 2 {
                    out.push(line_of(text, pos + open + off));
                }
            }
            ']' => {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            }
            _ => {}
        }
    }
    out
}
