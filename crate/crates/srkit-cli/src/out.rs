//! Shared plumbing: errors, exit codes, input loading and the three renderers.

use std::path::{Path, PathBuf};

use serde_json::{Map, Value};
use srkit::{Field, Limits, LinearCode, Profile};

use crate::args::Format;

pub const SCHEMA: &str = "srkit.v1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] srkit::Error),
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: srkit::Error },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(srkit::Error::TooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Rendered output and whether the verdict was negative.
pub struct Report {
    pub stdout: String,
    pub negative: bool,
}

impl Report {
    pub fn ok(stdout: String) -> Report {
        Report {
            stdout,
            negative: false,
        }
    }

    pub fn verdict(stdout: String, negative: bool) -> Report {
        Report { stdout, negative }
    }
}

pub struct Ctx {
    pub format: Format,
    pub limits: Limits,
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `4` or the full `q=p^k;mod=...` form.
pub fn parse_field(text: &str) -> CliResult<Field> {
    if text.contains('=') {
        return Ok(Field::parse(text)?);
    }
    let q: u64 = text
        .trim()
        .parse()
        .map_err(|_| usage(format!("--q expects a prime power or a field spec, got '{text}'")))?;
    Ok(Field::with_order(q)?)
}

pub fn parse_profile(field: &Field, text: &str) -> CliResult<Profile> {
    Ok(Profile::parse(field, text)?)
}

pub fn load_code(path: &Path) -> CliResult<LinearCode> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    srkit::code::parse_src(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// 1-based user index to 0-based.
pub fn index0(value: usize, what: &str) -> CliResult<usize> {
    value
        .checked_sub(1)
        .ok_or_else(|| usage(format!("{what} is 1-based; got 0")))
}

pub fn field_name(f: &Field) -> String {
    format!("GF({})", f.q())
}

pub fn dims_text(u: &[usize]) -> String {
    let parts: Vec<String> = u.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Copy)]
pub enum Align {
    Left,
    Right,
}

/// Column-aligned text, two spaces between columns, no trailing blanks.
pub fn table(header: &[&str], align: &[Align], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (c, cell) in cells.iter().enumerate() {
            let pad = width[c] - cell.chars().count();
            if c > 0 {
                s.push_str("  ");
            }
            match align.get(c).copied().unwrap_or(Align::Left) {
                Align::Left => {
                    s.push_str(cell);
                    if c + 1 < cols {
                        s.push_str(&" ".repeat(pad));
                    }
                }
                Align::Right => {
                    s.push_str(&" ".repeat(pad));
                    s.push_str(cell);
                }
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Pretty JSON with the schema tag and command name first.
pub fn json_text(command: &str, body: Value) -> String {
    let mut map = Map::new();
    map.insert("schema".into(), SCHEMA.into());
    map.insert("command".into(), command.into());
    if let Value::Object(rest) = body {
        map.extend(rest);
    }
    serde_json::to_string_pretty(&Value::Object(map)).expect("serializable") + "\n"
}
