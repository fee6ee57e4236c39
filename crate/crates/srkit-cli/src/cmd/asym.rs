use serde_json::json;
use srkit::asymptotics::{crossover, emit_series, eta_grid, AsymptoticBound, EntropyMethod, Scenario};

use crate::args::{AsymptoticsArgs, Format, Method};
use crate::out::{json_text, usage, write_file, CliResult, Ctx, Report};

fn parse_f64s(text: &str, count: usize, what: &str) -> CliResult<Vec<f64>> {
    let vals: Vec<f64> = text
        .split(':')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            usage(format!(
                "{what}: expected {count} numbers separated by ':', got '{text}'"
            ))
        })?;
    if vals.len() != count {
        return Err(usage(format!(
            "{what}: expected {count} numbers separated by ':', got '{text}'"
        )));
    }
    Ok(vals)
}

fn scenario(a: &AsymptoticsArgs) -> CliResult<Scenario> {
    let n0 = a.n[0];
    let head = a
        .head
        .iter()
        .map(|h| {
            let bad = || usage(format!("--head entry '{h}' is neither m nor nxm"));
            match h.split_once('x') {
                Some((n, m)) => Ok((
                    n.trim().parse().map_err(|_| bad())?,
                    m.trim().parse().map_err(|_| bad())?,
                )),
                None => Ok((n0, h.trim().parse().map_err(|_| bad())?)),
            }
        })
        .collect::<CliResult<Vec<(usize, usize)>>>()?;
    Ok(Scenario::new(a.q, head, a.m, a.n.clone())?)
}

fn bounds(text: &str) -> CliResult<Vec<AsymptoticBound>> {
    if text.trim() == "all" {
        return Ok(AsymptoticBound::ALL.to_vec());
    }
    Ok(text.split(',').map(str::parse).collect::<Result<_, _>>()?)
}

pub fn run(ctx: &Ctx, a: &AsymptoticsArgs) -> CliResult<Report> {
    let s = scenario(a)?;
    let mut wanted = bounds(&a.bounds)?;
    let sphere = [AsymptoticBound::SpherePacking, AsymptoticBound::SphereCovering];
    if s.uniform_shape().is_none() {
        if a.bounds.trim() != "all" && wanted.iter().any(|b| sphere.contains(b)) {
            return Err(usage(
                "sphere-packing and sphere-covering curves need every block of one shape",
            ));
        }
        wanted.retain(|b| !sphere.contains(b));
    }
    let g = parse_f64s(&a.grid, 3, "--grid")?;
    let grid = eta_grid(g[0], g[1], g[2])?;
    let method = match a.method {
        Method::Ternary => EntropyMethod::Ternary,
        Method::Grid => EntropyMethod::Grid(a.z_step),
    };
    let csv = emit_series(&s, &wanted, &grid, method)?;
    let cross = match &a.crossover {
        Some(range) => {
            let r = parse_f64s(range, 2, "--crossover")?;
            Some(crossover(&s, r[0], r[1], method)?)
        }
        None => None,
    };
    let rows = csv.lines().count() - 1;
    let cross_line = cross.map(|c| format!("crossover eta = {c:.6}\n")).unwrap_or_default();
    let text = match (&a.out, ctx.format) {
        (_, Format::Json) => {
            if let Some(path) = &a.out {
                write_file(path, &csv)?;
            }
            let points: Vec<_> = csv
                .lines()
                .skip(1)
                .map(|l| {
                    let f: Vec<&str> = l.split(',').collect();
                    json!({"eta": f[0].parse::<f64>().ok(), "bound": f[1], "value": f[2].parse::<f64>().ok()})
                })
                .collect();
            json_text(
                "asymptotics",
                json!({
                    "q": a.q,
                    "bounds": wanted.iter().map(|b| b.key()).collect::<Vec<_>>(),
                    "crossover": cross,
                    "points": points,
                }),
            )
        }
        (Some(path), _) => {
            write_file(path, &csv)?;
            format!("wrote {rows} points to {}\n{cross_line}", path.display())
        }
        (None, _) => {
            if !cross_line.is_empty() {
                eprint!("{cross_line}");
            }
            csv
        }
    };
    Ok(Report::ok(text))
}
