//! The `.src` text format.
//!
//! ```text
//! srcv1
//! field 2 1 mod=1,0
//! profile 1x2,1x1
//! dim 1
//!
//! gen 1
//! 1 0
//! 1
//! ```
//!
//! The profile line and the block lines of each generator follow the
//! user's block order; stanzas are separated by one blank line.

use std::path::Path;

use super::LinearCode;
use crate::ambient::{parse_blocks, MatrixTuple, Profile};
use crate::error::{parse_err, Error, Result};
use crate::field::{parse_coeff_list, Field};
use crate::matq::Mat;

/// Serializes a code. Generators appear in stored order.
pub fn write_src(code: &LinearCode) -> String {
    let profile = code.profile();
    let f = profile.field();
    let original = profile.original_blocks();
    let explicit: Vec<String> = original.iter().map(|&(n, m)| format!("{n}x{m}")).collect();
    let mut out = format!(
        "srcv1\nfield {} {} mod={}\nprofile {}\ndim {}\n",
        f.p(),
        f.k(),
        f.modulus_text(),
        explicit.join(","),
        code.dim()
    );
    let mut user = vec![0; profile.t()];
    for (i, &p) in profile.perm().iter().enumerate() {
        user[p] = i;
    }
    for (g, x) in code.basis().iter().enumerate() {
        out.push_str(&format!("\ngen {}\n", g + 1));
        for &i in &user {
            out.push_str(&x.blocks()[i].to_string());
            out.push('\n');
        }
    }
    out
}

/// Parses `.src` text.
pub fn parse_src(text: &str) -> Result<LinearCode> {
    let lines: Vec<&str> = text.lines().collect();
    let mut pos = 0;
    let mut next = |what: &str| -> Result<(usize, &str)> {
        let line = lines
            .get(pos)
            .ok_or_else(|| parse_err(pos + 1, format!("unexpected end of file, expected {what}")))?;
        pos += 1;
        Ok((pos, line.trim_end()))
    };
    let (ln, header) = next("header")?;
    if header != "srcv1" {
        return Err(parse_err(ln, "expected 'srcv1'"));
    }
    let (ln, field_line) = next("field line")?;
    let fields: Vec<&str> = field_line.split_whitespace().collect();
    let field = match fields[..] {
        ["field", p, k, modulus] => {
            let p: u32 = p.parse().map_err(|_| parse_err(ln, "bad characteristic"))?;
            let k: u32 = k.parse().map_err(|_| parse_err(ln, "bad degree"))?;
            let coeffs = modulus
                .strip_prefix("mod=")
                .and_then(parse_coeff_list)
                .ok_or_else(|| parse_err(ln, "bad modulus"))?;
            Field::new(p, k, Some(&coeffs)).map_err(|e| parse_err(ln, e.to_string()))?
        }
        _ => return Err(parse_err(ln, "expected 'field p k mod=...'")),
    };
    let (ln, profile_line) = next("profile line")?;
    let raw = profile_line
        .strip_prefix("profile ")
        .ok_or_else(|| parse_err(ln, "expected 'profile ...'"))?;
    let shapes = parse_blocks(raw).map_err(|e| parse_err(ln, e.to_string()))?;
    let profile = Profile::new(&field, &shapes).map_err(|e| parse_err(ln, e.to_string()))?;
    let (ln, dim_line) = next("dim line")?;
    let k: usize = dim_line
        .strip_prefix("dim ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| parse_err(ln, "expected 'dim k'"))?;
    let mut gens = Vec::with_capacity(k);
    for g in 0..k {
        let (ln, blank) = next("blank line")?;
        if !blank.is_empty() {
            return Err(parse_err(ln, "expected a blank line between stanzas"));
        }
        let (ln, head) = next("generator header")?;
        if head != format!("gen {}", g + 1) {
            return Err(parse_err(ln, format!("expected 'gen {}'", g + 1)));
        }
        let mut blocks = Vec::with_capacity(shapes.len());
        for &(n, m) in &shapes {
            let (ln, row) = next("matrix block")?;
            let mat = Mat::parse_at(row, &field, ln)?;
            if (mat.rows(), mat.cols()) != (n, m) {
                return Err(parse_err(ln, format!("expected a {n}x{m} block")));
            }
            blocks.push(mat);
        }
        let normalized = profile.perm().iter().map(|&i| blocks[i].clone()).collect();
        gens.push((ln, MatrixTuple::new(normalized)));
    }
    if let Some(extra) = lines[pos..].iter().position(|l| !l.trim().is_empty()) {
        return Err(parse_err(pos + extra + 1, "trailing content"));
    }
    let code = LinearCode::new(&profile, &gens.iter().map(|g| g.1.clone()).collect::<Vec<_>>())?;
    if code.dim() != k {
        let mut span = LinearCode::zero(&profile);
        for (ln, g) in &gens {
            let bigger = LinearCode::new(&profile, &[span.basis(), vec![g.clone()]].concat())?;
            if bigger.dim() == span.dim() {
                return Err(parse_err(*ln, "generator is linearly dependent on the previous ones"));
            }
            span = bigger;
        }
    }
    Ok(code)
}

/// Reads and parses a `.src` file.
pub fn read_src(path: &Path) -> Result<LinearCode> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })?;
    parse_src(&text)
}
