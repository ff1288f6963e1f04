//! Session scripts: `;`-terminated statements, `#` comments.
//!
//! ```text
//! set order 12;
//! let g = t + t^2;
//! solve y^2 * inv(g);
//! ```

use std::io::Write;

use clap::Parser;

use crate::args::{protect_values, Statement};
use crate::error::CliError;
use crate::session::Session;

/// One statement with the byte offset where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub offset: usize,
    pub text: String,
}

/// Splits a script at `;` outside quotes and drops comments. A final
/// statement without `;` is accepted.
pub fn split_statements(src: &str) -> Result<Vec<Located>, CliError> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start: Option<usize> = None;
    let mut quote: Option<char> = None;
    let mut chars = src.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        match (quote, c) {
            (Some(q), c) if c == q => {
                quote = None;
                current.push(c);
            }
            (Some(_), c) => current.push(c),
            (None, '#') => {
                while let Some((_, c)) = chars.peek() {
                    if *c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            (None, ';') => {
                if let Some(offset) = start.take() {
                    out.push(Located {
                        offset,
                        text: std::mem::take(&mut current).trim().to_string(),
                    });
                }
                current.clear();
            }
            (None, c) => {
                if c == '"' || c == '\'' {
                    quote = Some(c);
                }
                if start.is_none() && !c.is_whitespace() {
                    start = Some(i);
                }
                current.push(c);
            }
        }
    }
    if let Some(q) = quote {
        let offset = start.unwrap_or(0);
        return Err(CliError::user(format!("unterminated {q} quote")).at(&position(src, offset)));
    }
    if let Some(offset) = start {
        out.push(Located {
            offset,
            text: current.trim().to_string(),
        });
    }
    Ok(out)
}

/// `line L, column C` (both 1-based) of a byte offset.
pub fn position(src: &str, offset: usize) -> String {
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    format!("line {line}, column {col}")
}

/// Runs every statement in order; the first error stops the script and
/// carries the position of the failing statement.
pub fn run_script(src: &str, session: &mut Session, out: &mut dyn Write) -> Result<(), CliError> {
    for stmt in split_statements(src)? {
        run_statement(&stmt.text, session, out).map_err(|e| e.at(&position(src, stmt.offset)))?;
    }
    Ok(())
}

fn run_statement(text: &str, session: &mut Session, out: &mut dyn Write) -> Result<(), CliError> {
    let words = shlex::split(text).ok_or_else(|| CliError::user("malformed quoting"))?;
    match words.first().map(String::as_str) {
        None => Ok(()),
        Some("set") => match words.as_slice() {
            [_, key, value] => session.set(key, value),
            _ => Err(CliError::user("expected `set <key> <value>`")),
        },
        Some("let") => {
            let rest = text["let".len()..].trim_start();
            let (name, value) = rest
                .split_once('=')
                .ok_or_else(|| CliError::user("expected `let <id> = <value>`"))?;
            session.bind(name.trim(), unquote(value.trim()))
        }
        Some(_) => {
            let stmt = Statement::try_parse_from(protect_values(words)).map_err(|e| {
                let msg = e.to_string();
                let first = msg.lines().next().unwrap_or("invalid statement");
                CliError::user(first.trim_start_matches("error: ").to_string())
            })?;
            session.execute(&stmt.op, out)
        }
    }
}

fn unquote(s: &str) -> &str {
    for q in ['"', '\''] {
        if let Some(inner) = s.strip_prefix(q).and_then(|s| s.strip_suffix(q)) {
            return inner;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_statements_and_comments() {
        let src = "set order 12; # comment; not a statement\nlet g = \"t + t^2;\";\n  solve y^2";
        let stmts = split_statements(src).unwrap();
        let texts: Vec<&str> = stmts.iter().map(|s| s.text.as_str()).collect();
        assert_eq!(
            texts,
            vec!["set order 12", "let g = \"t + t^2;\"", "solve y^2"]
        );
        assert_eq!(position(src, stmts[2].offset), "line 3, column 3");
    }

    #[test]
    fn empty_script_has_no_statements() {
        assert!(split_statements("").unwrap().is_empty());
        assert!(split_statements("  ;; # nothing\n").unwrap().is_empty());
    }

    #[test]
    fn unterminated_quote() {
        let err = split_statements("let g = \"t + t^2;").unwrap_err();
        assert!(err.message.contains("line 1, column 1"), "{}", err.message);
    }
}
