use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use srkit::ambient::parse_blocks;
use srkit::code::{singleton_exponent, write_src};
use srkit::constructions::{
    certify, construct_combine, construct_d2, construct_dn, construct_dn_minus_alpha, construct_mds_lift,
    construct_msrd111, construct_msrd111_ext, gabidulin_mrd, simplex_lift, Certificate,
};
use srkit::{LinearCode, Profile};

use crate::args::{ConstructIo, Construction, Format};
use crate::out::{field_name, json_text, parse_field, parse_profile, usage, write_file, CliResult, Ctx, Report};

/// What a construction promises about its distance.
enum Promise {
    /// MSRD with this distance.
    Msrd(usize),
    /// Distance exactly this, by the structural argument.
    Distance(usize),
    None,
}

/// The distance an MSRD code of dimension `k` must have, if any.
fn msrd_distance(p: &Profile, k: usize) -> Option<usize> {
    (1..=p.big_n()).find(|&d| singleton_exponent(p, d).map(|e| e.2) == Ok(k))
}

struct Built {
    name: &'static str,
    code: LinearCode,
    promise: Promise,
    /// Precomputed certificate for families with their own structural check.
    certificate: Option<Certificate>,
    note: Option<String>,
}

fn build<'a>(ctx: &Ctx, which: &'a Construction) -> CliResult<(Built, &'a ConstructIo)> {
    Ok(match which {
        Construction::Gabidulin { q, n, m, d, io } => {
            let code = gabidulin_mrd(&parse_field(q)?, *n, *m, *d)?;
            (
                Built {
                    name: "gabidulin",
                    code,
                    promise: Promise::Msrd(*d),
                    certificate: None,
                    note: None,
                },
                io,
            )
        }
        Construction::MdsLift { q, m, t, d, io } => {
            let code = construct_mds_lift(&parse_field(q)?, *m, *t, *d)?;
            (
                Built {
                    name: "mds-lift",
                    code,
                    promise: Promise::Msrd(*d),
                    certificate: None,
                    note: None,
                },
                io,
            )
        }
        Construction::D2 { space, io } => {
            let p = parse_profile(&parse_field(&space.q)?, &space.profile)?;
            let out = construct_d2(&p)?;
            let note = out.displayed_dual.as_ref().map(|dd| {
                let same = dd.row_space() == out.code.dual().row_space();
                format!(
                    "closed-form dual {}",
                    if same {
                        "matches the computed dual"
                    } else {
                        "DIFFERS from the computed dual"
                    }
                )
            });
            (
                Built {
                    name: "d2",
                    code: out.code,
                    promise: Promise::Msrd(2),
                    certificate: None,
                    note,
                },
                io,
            )
        }
        Construction::Dn { space, io } => {
            let p = parse_profile(&parse_field(&space.q)?, &space.profile)?;
            let code = construct_dn(&p)?;
            (
                Built {
                    name: "dn",
                    code,
                    promise: Promise::Msrd(p.big_n()),
                    certificate: None,
                    note: None,
                },
                io,
            )
        }
        Construction::DnMinus { space, alpha, io } => {
            let p = parse_profile(&parse_field(&space.q)?, &space.profile)?;
            if *alpha >= p.big_n() {
                return Err(usage(format!("--alpha must be below N = {}", p.big_n())));
            }
            let code = construct_dn_minus_alpha(&p, *alpha)?;
            let note = (*alpha >= 2).then(|| "alpha >= 2 follows the general recipe".to_string());
            (
                Built {
                    name: "dn-minus",
                    code,
                    promise: Promise::Msrd(p.big_n() - alpha),
                    certificate: None,
                    note,
                },
                io,
            )
        }
        Construction::Msrd111 { q, inner, t2, io } => {
            let code = construct_msrd111(&parse_field(q)?, &parse_blocks(inner)?, *t2, None)?;
            let d = msrd_distance(code.profile(), code.dim())
                .ok_or_else(|| usage("no MSRD distance for this dimension"))?;
            (
                Built {
                    name: "msrd111",
                    code,
                    promise: Promise::Msrd(d),
                    certificate: None,
                    note: None,
                },
                io,
            )
        }
        Construction::Combine {
            q,
            inner,
            t2,
            m_hat,
            io,
        } => {
            let code = construct_combine(&parse_field(q)?, &parse_blocks(inner)?, *t2, *m_hat)?;
            let d = msrd_distance(code.profile(), code.dim())
                .ok_or_else(|| usage("no MSRD distance for this dimension"))?;
            (
                Built {
                    name: "combine",
                    code,
                    promise: Promise::Msrd(d),
                    certificate: None,
                    note: None,
                },
                io,
            )
        }
        Construction::Msrd111Ext { q, m, s, io } => {
            let code = construct_msrd111_ext(&parse_field(q)?, *m, *s)?;
            (
                Built {
                    name: "msrd111-ext",
                    code,
                    promise: Promise::Msrd(s + 2),
                    certificate: None,
                    note: None,
                },
                io,
            )
        }
        Construction::SimplexLift { q, m, n, r, io } => {
            let lift = simplex_lift(&parse_field(q)?, *m, *n, *r)?;
            let certificate = if io.certify {
                Some(lift.structural_certificate(&ctx.limits)?)
            } else {
                None
            };
            let note = Some(format!("t = {}, Hamming distance {}", lift.t, lift.hamming_distance));
            (
                Built {
                    name: "simplex-lift",
                    code: lift.code,
                    promise: Promise::Distance(lift.srk),
                    certificate,
                    note,
                },
                io,
            )
        }
        Construction::Random { space, k, seed, io } => {
            let p = parse_profile(&parse_field(&space.q)?, &space.profile)?;
            if *k > p.dim() {
                return Err(usage(format!("--k must be at most dim = {}", p.dim())));
            }
            let code = LinearCode::random(&p, *k, &mut ChaCha8Rng::seed_from_u64(*seed));
            (
                Built {
                    name: "random",
                    code,
                    promise: Promise::None,
                    certificate: None,
                    note: None,
                },
                io,
            )
        }
    })
}

/// Certificate text, JSON, and whether it contradicts the promise.
fn judge(cert: &Certificate, promise: &Promise) -> (String, Value, bool) {
    match cert {
        Certificate::Enumerated(w) => {
            let d = w.d.map_or("none".to_string(), |d| d.to_string());
            let bad = match promise {
                Promise::Msrd(e) => !w.is_msrd || w.d != Some(*e),
                Promise::Distance(e) => w.d != Some(*e),
                Promise::None => false,
            };
            let kind = if w.is_msrd { "MSRD" } else { "not MSRD" };
            (
                format!("certificate: enumerated, {kind}, d={d}"),
                json!({"kind": "enumerated", "is_msrd": w.is_msrd, "d": w.d}),
                bad,
            )
        }
        Certificate::Structural { .. } if matches!(promise, Promise::None) => (
            "certificate: skipped, the code is too large to enumerate".to_string(),
            json!({"kind": "skipped"}),
            false,
        ),
        Certificate::Structural { d_lower, reason } => (
            format!("certificate: structural, d >= {d_lower} ({reason})"),
            json!({"kind": "structural", "d_lower": d_lower, "reason": reason}),
            false,
        ),
    }
}

pub fn run(ctx: &Ctx, which: &Construction) -> CliResult<Report> {
    let (built, io) = build(ctx, which)?;
    let code = &built.code;
    let p = code.profile();
    let expected = match built.promise {
        Promise::Msrd(d) | Promise::Distance(d) => Some(d),
        Promise::None => None,
    };
    let mut summary = format!(
        "{}: {} profile {}, dim {}",
        built.name,
        field_name(p.field()),
        p.original_text(),
        code.dim()
    );
    if let Some(d) = expected {
        let kind = if matches!(built.promise, Promise::Msrd(_)) {
            "MSRD, "
        } else {
            ""
        };
        summary.push_str(&format!(", {kind}d={d} by construction"));
    }
    let mut lines = vec![summary];
    if let Some(n) = &built.note {
        lines.push(n.clone());
    }
    let mut negative = false;
    let mut cert_json = Value::Null;
    if io.certify {
        let cert = match built.certificate.clone() {
            Some(c) => c,
            None => certify(code, expected.unwrap_or(0), "construction", &ctx.limits)?,
        };
        let (line, js, bad) = judge(&cert, &built.promise);
        lines.push(line);
        cert_json = js;
        negative = bad;
    }
    let src = write_src(code);
    if let Some(path) = &io.out {
        write_file(path, &src)?;
    }
    let text = match ctx.format {
        Format::Json => json_text(
            "construct",
            json!({
                "name": built.name,
                "q": p.q(),
                "profile": p.original_text(),
                "dim": code.dim(),
                "expected_d": expected,
                "note": built.note,
                "certificate": cert_json,
                "src": src,
            }),
        ),
        _ if io.out.is_some() => lines.join("\n") + "\n",
        _ => {
            for l in &lines {
                eprintln!("{l}");
            }
            src
        }
    };
    Ok(Report::verdict(text, negative))
}
