use serde_json::json;
use srkit::distributions::{omega_hat_scan, omega_scan, omega_tilde, OmegaVerdict, ScanMode};

use crate::args::{Format, OmegaArgs};
use crate::out::{csv_text, dims_text, json_text, CliResult, Ctx, Report};

/// Typographic minus for the human-readable verdict.
fn signed(v: &impl ToString) -> String {
    v.to_string().replace('-', "\u{2212}")
}

pub fn run(ctx: &Ctx, a: &OmegaArgs) -> CliResult<Report> {
    let mode = if a.fast { ScanMode::Fast } else { ScanMode::Full };
    let verdict = if a.dual {
        omega_hat_scan(&a.shape, a.m, a.q, a.d, mode, ctx.limits.exec)?
    } else {
        omega_scan(&a.shape, a.m, a.q, a.d, mode, ctx.limits.exec)?
    };
    let symbol = if a.dual { "ω̂" } else { "ω" };
    let mode_name = if a.fast { "fast" } else { "full" };
    let text = match ctx.format {
        Format::Table => match &verdict {
            OmegaVerdict::Excluded { witness, value } => {
                let mut s = format!("Excluded, witness {}, {symbol}={}\n", dims_text(witness), signed(value));
                s.push_str(&format!(
                    "no MSRD code with m={}, shape {}, d={} over GF({})\n",
                    a.m,
                    dims_text(&a.shape),
                    a.d,
                    a.q
                ));
                s
            }
            OmegaVerdict::Inconclusive => {
                let mut s = format!("Inconclusive: no negative {symbol} ({mode_name} scan)\n");
                if !a.dual {
                    if let Some((u, w)) = omega_tilde(&a.shape, a.m, a.q, a.d)? {
                        s.push_str(&format!("{symbol}{} = {}\n", dims_text(&u), signed(&w)));
                    }
                }
                s
            }
        },
        Format::Csv => {
            let row = match &verdict {
                OmegaVerdict::Excluded { witness, value } => {
                    vec!["excluded".into(), dims_text(witness), value.to_string()]
                }
                OmegaVerdict::Inconclusive => vec!["inconclusive".into(), String::new(), String::new()],
            };
            csv_text(&["verdict", "witness", "value"], &[row])
        }
        Format::Json => {
            let (name, witness, value) = match &verdict {
                OmegaVerdict::Excluded { witness, value } => {
                    ("excluded", Some(witness.clone()), Some(value.to_string()))
                }
                OmegaVerdict::Inconclusive => ("inconclusive", None, None),
            };
            json_text(
                "omega",
                json!({
                    "q": a.q,
                    "m": a.m,
                    "shape": a.shape,
                    "d": a.d,
                    "dual": a.dual,
                    "mode": mode_name,
                    "verdict": name,
                    "witness": witness,
                    "value": value,
                }),
            )
        }
    };
    Ok(Report::verdict(text, verdict.is_excluded()))
}
