use serde_json::{json, Value};
use srkit::bounds::{bound_report, BoundName, BoundReport};
use srkit::Profile;

use crate::args::{BoundsArgs, Format, SphereArgs};
use crate::out::{csv_text, field_name, json_text, parse_field, parse_profile, table, Align, CliResult, Ctx, Report};

const SHORT: [(BoundName, &str); 8] = [
    (BoundName::Singleton, "S"),
    (BoundName::InducedSingleton, "IS"),
    (BoundName::InducedHamming, "IH"),
    (BoundName::InducedPlotkin, "IP"),
    (BoundName::InducedElias, "IE"),
    (BoundName::SpherePacking, "SP"),
    (BoundName::ProjectiveSpherePacking, "PSP"),
    (BoundName::TotalDistance, "TD"),
];

fn header_line(p: &Profile) -> String {
    format!(
        "{} profile {} (N = {}, dim {})",
        field_name(p.field()),
        p.to_text(),
        p.big_n(),
        p.dim()
    )
}

fn best_text(r: &BoundReport) -> String {
    let names: Vec<&str> = r.best.iter().map(|b| b.label()).collect();
    let value = r
        .best
        .first()
        .and_then(|&b| r.get(b))
        .map(|v| v.to_string())
        .unwrap_or_default();
    format!("{} ({value})", names.join(", "))
}

fn single_table(r: &BoundReport) -> String {
    let rows: Vec<Vec<String>> = r
        .entries
        .iter()
        .map(|e| {
            vec![
                e.name.label().to_string(),
                e.value.as_ref().map_or("-".into(), |v| v.to_string()),
                e.linear.map_or("-".into(), |k| k.to_string()),
                if r.best.contains(&e.name) { "*" } else { "" }.to_string(),
                e.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut out = format!("{}, d = {}\n", header_line(&r.profile), r.d);
    out.push_str(&table(
        &["bound", "value", "linear", "", "note"],
        &[Align::Left, Align::Right, Align::Right, Align::Left, Align::Left],
        &rows,
    ));
    out.push_str(&format!("best: {}\n", best_text(r)));
    out
}

fn sweep_table(p: &Profile, reports: &[BoundReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let mut row = vec![r.d.to_string()];
            for (name, _) in SHORT {
                let mark = if r.best.contains(&name) { "*" } else { "" };
                row.push(r.get(name).map_or("-".into(), |v| format!("{v}{mark}")));
            }
            let best = r.best.first().map(|&b| r.entry(b).linear.unwrap_or(0));
            row.push(best.map_or("-".into(), |k| k.to_string()));
            row
        })
        .collect();
    let mut header = vec!["d"];
    header.extend(SHORT.iter().map(|s| s.1));
    header.push("linear");
    let mut out = header_line(p) + "\n";
    out.push_str(&table(&header, &[Align::Right; 10], &rows));
    let legend: Vec<String> = SHORT.iter().map(|(b, s)| format!("{s} = {}", b.label())).collect();
    out.push_str(&format!(
        "* best bound; linear = largest k with q^k <= best\n{}\n",
        legend.join(", ")
    ));
    out
}

fn report_json(r: &BoundReport) -> Value {
    let bounds: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            json!({
                "name": e.name.label(),
                "key": e.name.key(),
                "value": e.value.as_ref().map(|v| v.to_string()),
                "linear": e.linear,
                "best": r.best.contains(&e.name),
                "note": e.note,
            })
        })
        .collect();
    json!({
        "d": r.d,
        "bounds": bounds,
        "best": r.best.iter().map(|b| b.key()).collect::<Vec<_>>(),
    })
}

pub fn run(ctx: &Ctx, a: &BoundsArgs) -> CliResult<Report> {
    let field = parse_field(&a.space.q)?;
    let p = parse_profile(&field, &a.space.profile)?;
    let ds: Vec<usize> = match a.d {
        Some(d) => vec![d],
        None => (1..=p.big_n()).collect(),
    };
    let reports = ds.iter().map(|&d| bound_report(&p, d)).collect::<Result<Vec<_>, _>>()?;
    let text = match ctx.format {
        Format::Table if a.all_d => sweep_table(&p, &reports),
        Format::Table => single_table(&reports[0]),
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .flat_map(|r| {
                    r.entries.iter().map(move |e| {
                        vec![
                            r.d.to_string(),
                            e.name.key().to_string(),
                            e.value.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                            e.linear.map(|k| k.to_string()).unwrap_or_default(),
                            r.best.contains(&e.name).to_string(),
                            e.note.clone().unwrap_or_default(),
                        ]
                    })
                })
                .collect();
            csv_text(&["d", "bound", "value", "linear", "best", "note"], &rows)
        }
        Format::Json => json_text(
            "bounds",
            json!({
                "q": p.q(),
                "field": p.field().to_string(),
                "profile": p.to_text(),
                "N": p.big_n(),
                "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
            }),
        ),
    };
    Ok(Report::ok(text))
}

pub fn sphere_volume(ctx: &Ctx, a: &SphereArgs) -> CliResult<Report> {
    let field = parse_field(&a.space.q)?;
    let p = parse_profile(&field, &a.space.profile)?;
    let radii: Vec<usize> = match a.r {
        Some(r) => vec![r],
        None => (0..=p.big_n()).collect(),
    };
    let rows: Vec<Vec<String>> = radii
        .iter()
        .map(|&r| vec![r.to_string(), p.sphere_volume(r).to_string()])
        .collect();
    let text = match ctx.format {
        Format::Table => header_line(&p) + "\n" + &table(&["r", "volume"], &[Align::Right, Align::Right], &rows),
        Format::Csv => csv_text(&["r", "volume"], &rows),
        Format::Json => json_text(
            "sphere-volume",
            json!({
                "q": p.q(),
                "profile": p.to_text(),
                "volumes": radii
                    .iter()
                    .zip(&rows)
                    .map(|(r, row)| json!({"r": r, "volume": row[1]}))
                    .collect::<Vec<_>>(),
            }),
        ),
    };
    Ok(Report::ok(text))
}
