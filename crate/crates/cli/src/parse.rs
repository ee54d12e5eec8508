//! Connection-set grammar.
//!
//! A set expression is a comma-separated list of terms:
//!
//! ```text
//! term := "a^K"          a single rotation (K an integer, reduced mod n)
//!       | "b"            the base reflection
//!       | "b*a^K"        a single reflection
//!       | "b*<a>"        all n reflections
//!       | "b*<a^2>"      reflections with even exponent
//!       | "b*a*<a^2>"    reflections with odd exponent
//!       | "<a>\1"        all nontrivial rotations
//! ```
//!
//! Whitespace is ignored. Duplicate terms collapse. The parsed set is
//! validated (nonempty, identity-free, inverse-closed) before use, and the
//! canonical rendering is the sorted explicit element list, which re-parses
//! to the same set.

use std::collections::BTreeSet;

use dgrover_core::dihedral::{ConnectionSet, DihedralElement};

use crate::CliError;

/// A parsed, validated connection set with its canonical text.
#[derive(Debug, Clone)]
pub struct SetExpression {
    text: String,
    connection: ConnectionSet,
}

impl SetExpression {
    /// Canonical source text (sorted explicit terms).
    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    /// Wrap an already-validated set.
    pub fn from_connection(connection: ConnectionSet) -> Self {
        SetExpression {
            text: canonical_text(&connection),
            connection,
        }
    }
}

fn canonical_text(conn: &ConnectionSet) -> String {
    conn.elements()
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn syntax(position: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        position,
        message: message.into(),
    }
}

fn parse_exponent(text: &str, position: usize) -> Result<i64, CliError> {
    text.parse::<i64>().map_err(|_| {
        syntax(
            position,
            format!("expected an integer exponent, found {text:?}"),
        )
    })
}

fn parse_term(
    term: &str,
    position: usize,
    n: usize,
    out: &mut BTreeSet<DihedralElement>,
) -> Result<(), CliError> {
    let compact: String = term.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "" => return Err(syntax(position, "empty term")),
        "b" => {
            out.insert(DihedralElement::reflection(0, n));
        }
        "b*<a>" => {
            out.extend((0..n as i64).map(|k| DihedralElement::reflection(k, n)));
        }
        "b*<a^2>" => {
            out.extend(
                (0..n as i64)
                    .filter(|k| k % 2 == 0)
                    .map(|k| DihedralElement::reflection(k, n)),
            );
        }
        "b*a*<a^2>" => {
            out.extend(
                (0..n as i64)
                    .filter(|k| k % 2 == 1)
                    .map(|k| DihedralElement::reflection(k, n)),
            );
            if n == 2 {
                // <a^2> is trivial at n = 2; the coset is the single
                // reflection b a
                out.insert(DihedralElement::reflection(1, n));
            }
        }
        "<a>\\1" => {
            out.extend((1..n as i64).map(|k| DihedralElement::rotation(k, n)));
        }
        other => {
            if let Some(k) = other.strip_prefix("b*a^") {
                out.insert(DihedralElement::reflection(parse_exponent(k, position)?, n));
            } else if let Some(k) = other.strip_prefix("a^") {
                out.insert(DihedralElement::rotation(parse_exponent(k, position)?, n));
            } else {
                return Err(syntax(position, format!("unrecognized term {term:?}")));
            }
        }
    }
    Ok(())
}

/// Parse and validate a set expression for `D_n`.
pub fn parse_set(text: &str, n: usize) -> Result<SetExpression, CliError> {
    if n < 2 {
        return Err(CliError::Invalid(dgrover_core::Error::ModulusTooSmall(n)));
    }
    let mut elements = BTreeSet::new();
    let mut offset = 0usize;
    for term in text.split(',') {
        let leading = term.len() - term.trim_start().len();
        parse_term(term.trim(), offset + leading, n, &mut elements)?;
        offset += term.len() + 1;
    }
    let connection = ConnectionSet::new(n, elements)?;
    Ok(SetExpression::from_connection(connection))
}
