use std::path::Path;

use serde_json::{json, Value};
use srkit::bounds::bound_report;
use srkit::code::{write_src, Derived, MsrdWitness};
use srkit::{LinearCode, Mat, Profile, Subspace, SubspaceTuple};

use crate::args::{CodeArg, DualArgs, Format, PunctureArgs, ShortenArgs};
use crate::out::{
    csv_text, field_name, index0, json_text, load_code, usage, write_file, CliError, CliResult, Ctx, Report,
};

fn verdict_line(w: &MsrdWitness) -> String {
    match w.d {
        None => "MSRD, zero code, dim 0".to_string(),
        Some(d) if w.is_msrd => format!("MSRD, d={d}, dim {}", w.dim),
        Some(d) => format!(
            "not MSRD, d={d}, dim {} (Singleton allows {})",
            w.dim, w.singleton_exponent
        ),
    }
}

/// Bounds whose linear version equals the dimension: the code is optimal for them.
fn attained(code: &LinearCode, d: usize) -> CliResult<Vec<(String, &'static str)>> {
    let r = bound_report(code.profile(), d)?;
    Ok(r.entries
        .iter()
        .filter(|e| e.linear == Some(code.dim() as u64))
        .map(|e| (e.name.label().to_string(), e.name.key()))
        .collect())
}

pub fn check(ctx: &Ctx, a: &CodeArg) -> CliResult<Report> {
    let code = load_code(&a.code)?;
    let w = code.msrd_check(&ctx.limits)?;
    let meets = match w.d {
        Some(d) => attained(&code, d)?,
        None => Vec::new(),
    };
    let p = code.profile();
    let text = match ctx.format {
        Format::Table => {
            let mut s = verdict_line(&w) + "\n";
            s.push_str(&format!(
                "{} profile {}, |C| = {}, Singleton bound {}\n",
                field_name(p.field()),
                p.original_text(),
                code.cardinality(),
                w.singleton_value
            ));
            if !meets.is_empty() {
                let names: Vec<&str> = meets.iter().map(|m| m.0.as_str()).collect();
                s.push_str(&format!("meets linear bounds: {}\n", names.join(", ")));
            }
            s
        }
        Format::Csv => csv_text(
            &["is_msrd", "d", "dim", "singleton_exponent", "meets"],
            &[vec![
                w.is_msrd.to_string(),
                w.d.map(|d| d.to_string()).unwrap_or_default(),
                w.dim.to_string(),
                w.singleton_exponent.to_string(),
                meets.iter().map(|m| m.1).collect::<Vec<_>>().join(";"),
            ]],
        ),
        Format::Json => json_text(
            "check",
            json!({
                "file": a.code.display().to_string(),
                "q": p.q(),
                "profile": p.original_text(),
                "is_msrd": w.is_msrd,
                "d": w.d,
                "dim": w.dim,
                "j": w.j + 1,
                "delta": w.delta,
                "singleton_exponent": w.singleton_exponent,
                "meets_linear": meets.iter().map(|m| m.1).collect::<Vec<_>>(),
            }),
        ),
    };
    Ok(Report::verdict(text, !w.is_msrd))
}

/// Code text to `--out` or standard output, with a summary in the other channel.
fn emit_code(
    ctx: &Ctx,
    command: &str,
    code: &LinearCode,
    summary: String,
    extra: Value,
    out: Option<&Path>,
) -> CliResult<String> {
    let src = write_src(code);
    if let Some(path) = out {
        write_file(path, &src)?;
    }
    Ok(match ctx.format {
        Format::Json => {
            let mut body = json!({
                "summary": summary,
                "profile": code.profile().original_text(),
                "dim": code.dim(),
                "src": src,
            });
            if let (Value::Object(b), Value::Object(e)) = (&mut body, extra) {
                b.extend(e);
            }
            json_text(command, body)
        }
        _ if out.is_some() => summary + "\n",
        _ => {
            eprintln!("{summary}");
            src
        }
    })
}

pub fn dual(ctx: &Ctx, a: &DualArgs) -> CliResult<Report> {
    let code = load_code(&a.code)?;
    let d = code.dual();
    let summary = format!("dual: profile {}, dim {}", d.profile().original_text(), d.dim());
    Ok(Report::ok(emit_code(
        ctx,
        "dual",
        &d,
        summary,
        json!({}),
        a.out.as_deref(),
    )?))
}

/// `|`-separated generator matrices in file block order.
fn parse_support(profile: &Profile, text: &str) -> CliResult<SubspaceTuple> {
    let f = profile.field();
    let user = profile.original_blocks();
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != user.len() {
        return Err(usage(format!(
            "--support has {} blocks, the profile {}",
            parts.len(),
            user.len()
        )));
    }
    let mut spaces = Vec::with_capacity(parts.len());
    for (i, (part, &(n, _))) in parts.iter().zip(&user).enumerate() {
        let part = part.trim();
        let s = match part {
            "" | "0" => Subspace::zero(n),
            "full" => Subspace::full(n),
            _ => {
                let g = Mat::parse(part, f)?;
                if g.cols() != n {
                    return Err(usage(format!("support block {}: vectors need length {n}", i + 1)));
                }
                Subspace::from_generators(&g, f)
            }
        };
        spaces.push(s);
    }
    Ok(SubspaceTuple::new(
        profile.perm().iter().map(|&i| spaces[i].clone()).collect(),
    ))
}

fn derived_summary(what: String, d: &Derived) -> (String, bool) {
    let p = d.code.profile();
    let base = format!("{what}: profile {}, dim {}", p.original_text(), d.code.dim());
    match &d.witness {
        Some(w) if w.is_msrd && w.d == Some(d.expected_d) => (format!("{base}, MSRD with d={}", d.expected_d), false),
        Some(w) => (
            format!("{base}, expected d={} but found {}", d.expected_d, verdict_line(w)),
            true,
        ),
        None => (format!("{base}, d={} by theorem (not enumerated)", d.expected_d), false),
    }
}

fn derived_json(d: &Derived) -> Value {
    json!({
        "expected_d": d.expected_d,
        "verified": d.witness.as_ref().map(|w| w.is_msrd && w.d == Some(d.expected_d)),
    })
}

#[derive(Clone, Copy)]
enum Op {
    Row,
    Col,
    Puncture,
}

/// Restates a theorem-range error with the 1-based numbering of the command line.
fn explain(code: &LinearCode, op: Op, err: srkit::Error, ctx: &Ctx) -> CliError {
    let srkit::Error::IndexOutOfTheoremRange { .. } = err else {
        return err.into();
    };
    let Ok(w) = code.msrd_check(&ctx.limits) else {
        return err.into();
    };
    let t = code.profile().t();
    let (lo, hi) = match op {
        Op::Row => (w.j + 1, t),
        Op::Col => (w.j + 2, t),
        Op::Puncture => (1, if w.delta > 0 { w.j + 1 } else { w.j }),
    };
    let allowed = if lo > hi {
        "none".to_string()
    } else {
        format!("{lo}..={hi}")
    };
    usage(format!(
        "block or index outside the admissible range (blocks allowed: {allowed}; d={}, blocks in order {})",
        w.d.map_or("-".into(), |d| d.to_string()),
        code.profile().to_text()
    ))
}

pub fn shorten(ctx: &Ctx, a: &ShortenArgs) -> CliResult<Report> {
    let code = load_code(&a.code)?;
    if let Some(text) = &a.support {
        let u = parse_support(code.profile(), text)?;
        let short = code.shorten(&u)?;
        let summary = format!("C(U): dims {:?}, dim {} of {}", u.dim_vector(), short.dim(), code.dim());
        return Ok(Report::ok(emit_code(
            ctx,
            "shorten",
            &short,
            summary,
            json!({}),
            a.out.as_deref(),
        )?));
    }
    let index = a.index.map(|i| index0(i, "--index")).transpose()?;
    let (derived, what) = match (a.row, a.col) {
        (Some(s), None) => (
            code.msrd_shorten_row(index0(s, "--row")?, index, &ctx.limits)
                .map_err(|e| explain(&code, Op::Row, e, ctx))?,
            format!("row shortening of block {s}"),
        ),
        (None, Some(s)) => (
            code.msrd_shorten_col(index0(s, "--col")?, index, &ctx.limits)
                .map_err(|e| explain(&code, Op::Col, e, ctx))?,
            format!("column shortening of block {s}"),
        ),
        _ => unreachable!("clap enforces exactly one mode"),
    };
    let (summary, bad) = derived_summary(what, &derived);
    let text = emit_code(
        ctx,
        "shorten",
        &derived.code,
        summary,
        derived_json(&derived),
        a.out.as_deref(),
    )?;
    Ok(Report::verdict(text, bad))
}

pub fn puncture(ctx: &Ctx, a: &PunctureArgs) -> CliResult<Report> {
    let code = load_code(&a.code)?;
    let derived = code
        .msrd_puncture_row(index0(a.block, "--block")?, &ctx.limits)
        .map_err(|e| explain(&code, Op::Puncture, e, ctx))?;
    let (summary, bad) = derived_summary(format!("puncture of block {}", a.block), &derived);
    let text = emit_code(
        ctx,
        "puncture",
        &derived.code,
        summary,
        derived_json(&derived),
        a.out.as_deref(),
    )?;
    Ok(Report::verdict(text, bad))
}
