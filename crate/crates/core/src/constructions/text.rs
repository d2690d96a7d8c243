//! Recipe and claim-sidecar text formats.
//!
//! A recipe file is a sequence of parenthesized forms. The first form is a
//! base and every later form is an operator applied to everything before it:
//!
//! ```text
//! ; Δ = 4, three rows of K_{4,4} with a spine
//! (kdd 4)
//! (rows-spine 3)
//! ```
//!
//! Bases: `(kdd Δ)`, `(blowup m s)`, `(blocks r Δ)`, `(file PATH r D n Δ)`,
//! `(main q i d k Δ)`. Operators: `(add-kr)`, `(copies m)`,
//! `(rows-spine m)`, `(three-layer m j l)`, and `(main q i d k Δ)`, which
//! then uses the preceding recipe as its base. `;` starts a comment. Several
//! forms may share a line; the canonical form has one per line.

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use super::{Claim, ClaimStatus, Recipe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct RecipeParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> RecipeParseError {
    RecipeParseError {
        line,
        message: message.into(),
    }
}

struct Form {
    line: usize,
    name: String,
    args: Vec<String>,
}

impl Form {
    fn int(&self, k: usize) -> Result<usize, RecipeParseError> {
        self.args[k]
            .parse()
            .map_err(|_| err(self.line, format!("`{}`: not a nonnegative integer: {}", self.name, self.args[k])))
    }

    fn ints(&self, count: usize) -> Result<Vec<usize>, RecipeParseError> {
        if self.args.len() != count {
            return Err(err(
                self.line,
                format!("`{}` takes {count} arguments, got {}", self.name, self.args.len()),
            ));
        }
        (0..count).map(|k| self.int(k)).collect()
    }
}

fn tokenize(text: &str) -> Result<Vec<Form>, RecipeParseError> {
    let mut forms = vec![];
    let mut current: Option<Form> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let code = raw.split(';').next().unwrap_or("");
        let spaced = code.replace('(', " ( ").replace(')', " ) ");
        for tok in spaced.split_whitespace() {
            match (tok, current.as_mut()) {
                ("(", None) => {
                    current = Some(Form {
                        line,
                        name: String::new(),
                        args: vec![],
                    })
                }
                ("(", Some(_)) => return Err(err(line, "nested forms are not allowed")),
                (")", None) => return Err(err(line, "unmatched `)`")),
                (")", Some(f)) => {
                    if f.name.is_empty() {
                        return Err(err(line, "empty form"));
                    }
                    forms.push(current.take().expect("open form"));
                }
                (_, None) => return Err(err(line, format!("`{tok}` outside a form"))),
                (_, Some(f)) if f.name.is_empty() => f.name = tok.to_string(),
                (_, Some(f)) => f.args.push(tok.to_string()),
            }
        }
    }
    if let Some(f) = current {
        return Err(err(f.line, format!("unterminated form `{}`", f.name)));
    }
    Ok(forms)
}

fn base(f: &Form) -> Result<Recipe, RecipeParseError> {
    match f.name.as_str() {
        "kdd" => Ok(Recipe::Kdd { delta: f.ints(1)?[0] }),
        "blowup" => {
            let a = f.ints(2)?;
            Ok(Recipe::Blowup { m: a[0], s: a[1] })
        }
        "blocks" => {
            let a = f.ints(2)?;
            Ok(Recipe::BipartiteBlocks { r: a[0], delta: a[1] })
        }
        "file" => {
            if f.args.len() != 5 {
                return Err(err(f.line, "`file` takes a path and 4 integers"));
            }
            let a: Vec<usize> = (1..5).map(|k| f.int(k)).collect::<Result<_, _>>()?;
            Ok(Recipe::File {
                path: PathBuf::from(&f.args[0]),
                claim: Claim { r: a[0], defect: a[1], n: a[2], delta: a[3] },
            })
        }
        "main" => main(f, None),
        other => Err(err(f.line, format!("`{other}` is not a base form"))),
    }
}

fn main(f: &Form, base: Option<Recipe>) -> Result<Recipe, RecipeParseError> {
    let a = f.ints(5)?;
    Ok(Recipe::MainConstruction {
        q: a[0],
        i: a[1],
        d: a[2],
        k: a[3],
        delta: a[4],
        base: base.map(Box::new),
    })
}

fn apply(f: &Form, child: Recipe) -> Result<Recipe, RecipeParseError> {
    match f.name.as_str() {
        "add-kr" => {
            f.ints(0)?;
            Ok(child.add_kr())
        }
        "copies" => Ok(child.copies(f.ints(1)?[0])),
        "rows-spine" => Ok(child.rows_spine(f.ints(1)?[0])),
        "three-layer" => {
            let a = f.ints(3)?;
            Ok(child.three_layer(a[0], a[1], a[2]))
        }
        "main" => main(f, Some(child)),
        other => Err(err(f.line, format!("`{other}` is not an operator form"))),
    }
}

/// Parses recipe text. Only syntax is checked here; hypotheses are checked
/// by [`Recipe::claim`].
pub fn parse_recipe(text: &str) -> Result<Recipe, RecipeParseError> {
    let forms = tokenize(text)?;
    let (first, rest) = forms.split_first().ok_or_else(|| err(1, "empty recipe"))?;
    let mut recipe = base(first)?;
    for f in rest {
        recipe = apply(f, recipe)?;
    }
    Ok(recipe)
}

impl fmt::Display for Recipe {
    /// Canonical text, one form per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Kdd { delta } => writeln!(f, "(kdd {delta})"),
            Recipe::Blowup { m, s } => writeln!(f, "(blowup {m} {s})"),
            Recipe::BipartiteBlocks { r, delta } => writeln!(f, "(blocks {r} {delta})"),
            Recipe::File { path, claim } => writeln!(
                f,
                "(file {} {} {} {} {})",
                path.display(),
                claim.r,
                claim.defect,
                claim.n,
                claim.delta
            ),
            Recipe::AddKr(c) => writeln!(f, "{c}(add-kr)"),
            Recipe::DisjointCopies(c, m) => writeln!(f, "{c}(copies {m})"),
            Recipe::RowsPlusSpine(c, m) => writeln!(f, "{c}(rows-spine {m})"),
            Recipe::ThreeLayer { child, m, j, l } => writeln!(f, "{child}(three-layer {m} {j} {l})"),
            Recipe::MainConstruction { q, i, d, k, delta, base } => {
                if let Some(b) = base {
                    write!(f, "{b}")?;
                }
                writeln!(f, "(main {q} {i} {d} {k} {delta})")
            }
        }
    }
}

/// Parses a claim sidecar written by [`Claim::sidecar`].
pub fn parse_claim_sidecar(
    text: &str,
) -> Result<(Claim, ClaimStatus, Option<usize>), RecipeParseError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "claim 1")) => {}
        _ => return Err(err(1, "expected `claim 1`")),
    }
    let mut fields = [None; 4];
    let mut status = None;
    let mut measured = None;
    for (k, l) in lines {
        let line = k + 1;
        let (key, value) = l
            .split_once(' ')
            .ok_or_else(|| err(line, "expected `key value`"))?;
        let num = || {
            value
                .parse::<usize>()
                .map_err(|_| err(line, format!("`{key}`: not a nonnegative integer")))
        };
        match key {
            "r" => fields[0] = Some(num()?),
            "defect" => fields[1] = Some(num()?),
            "n" => fields[2] = Some(num()?),
            "delta" => fields[3] = Some(num()?),
            "max-it" => measured = Some(num()?),
            "status" => {
                status = Some(match value {
                    "trusted" => ClaimStatus::Trusted,
                    "certified" => ClaimStatus::Certified,
                    _ => return Err(err(line, format!("unknown status `{value}`"))),
                })
            }
            _ => return Err(err(line, format!("unknown key `{key}`"))),
        }
    }
    let names = ["r", "defect", "n", "delta"];
    let mut vals = [0; 4];
    for k in 0..4 {
        vals[k] = fields[k].ok_or_else(|| err(1, format!("missing `{}`", names[k])))?;
    }
    let status = status.ok_or_else(|| err(1, "missing `status`"))?;
    Ok((
        Claim { r: vals[0], defect: vals[1], n: vals[2], delta: vals[3] },
        status,
        measured,
    ))
}
