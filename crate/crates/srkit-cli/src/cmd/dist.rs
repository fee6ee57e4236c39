use std::collections::BTreeMap;

use serde_json::{json, Value};
use srkit::distributions::{
    binomial_moments_hold, brute_distributions, macwilliams_ranklist, macwilliams_support, rank_list_distribution,
    Distributions, RankListDistribution,
};
use srkit::matq::q_power;
use srkit::{LinearCode, Profile, SubspaceTuple};

use crate::args::{DistributionsArgs, Format, MacwilliamsArgs};
use crate::out::{
    csv_text, dims_text, field_name, json_text, load_code, parse_field, parse_profile, table, usage, Align, CliError,
    CliResult, Ctx, Report,
};

fn tuple_text(u: &SubspaceTuple) -> String {
    let parts: Vec<String> = u
        .parts()
        .iter()
        .map(|s| {
            if s.dim() == 0 {
                "0".to_string()
            } else {
                s.basis().to_string()
            }
        })
        .collect();
    parts.join(" | ")
}

fn ranklist_rows(rl: &RankListDistribution) -> Vec<Vec<String>> {
    rl.counts
        .iter()
        .map(|(u, w)| vec![dims_text(u), w.to_string()])
        .collect()
}

fn ranklist_json(rl: &RankListDistribution) -> Vec<Value> {
    rl.counts
        .iter()
        .map(|(u, w)| json!({"ranks": u, "count": w.to_string()}))
        .collect()
}

/// Outcome of the three identity checks against an enumerated partner.
struct Identities {
    support: bool,
    rank_list: bool,
    moments: bool,
}

impl Identities {
    fn all(&self) -> bool {
        self.support && self.rank_list && self.moments
    }
}

fn identities(ctx: &Ctx, code: &LinearCode, mine: &Distributions, other: &Distributions) -> CliResult<Identities> {
    let p = code.profile();
    let card = code.cardinality();
    Ok(Identities {
        support: macwilliams_support(&mine.support, &card, p, &ctx.limits)? == other.support,
        rank_list: macwilliams_ranklist(&mine.rank_list, &card, p)? == other.rank_list,
        moments: binomial_moments_hold(&mine.rank_list, &other.rank_list, &card, p),
    })
}

pub fn distributions(ctx: &Ctx, a: &DistributionsArgs) -> CliResult<Report> {
    let loaded = load_code(&a.code)?;
    let code = if a.dual { loaded.dual() } else { loaded };
    let p = code.profile().clone();
    let dist = brute_distributions(&code, &ctx.limits)?;
    let checks = if a.check_macwilliams {
        let other = brute_distributions(&code.dual(), &ctx.limits)?;
        Some(identities(ctx, &code, &dist, &other)?)
    } else {
        None
    };
    let which = if a.dual { "dual code" } else { "code" };
    let text = match ctx.format {
        Format::Table => {
            let mut s = format!(
                "{which}: {} profile {}, dim {}, |C| = {}\n\nsum-rank distribution\n",
                field_name(p.field()),
                p.to_text(),
                code.dim(),
                code.cardinality()
            );
            let sr: Vec<Vec<String>> = dist
                .sum_rank
                .counts
                .iter()
                .enumerate()
                .filter(|(_, w)| **w != Default::default())
                .map(|(r, w)| vec![r.to_string(), w.to_string()])
                .collect();
            s.push_str(&table(&["r", "W_r"], &[Align::Right, Align::Right], &sr));
            s.push_str("\nrank-list distribution\n");
            s.push_str(&table(
                &["ranks", "W_u"],
                &[Align::Left, Align::Right],
                &ranklist_rows(&dist.rank_list),
            ));
            s.push_str(&format!("\ndistinct supports: {}\n", dist.support.counts.len()));
            if a.support {
                let rows: Vec<Vec<String>> = dist
                    .support
                    .counts
                    .iter()
                    .map(|(u, w)| vec![tuple_text(u), w.to_string()])
                    .collect();
                s.push_str(&table(&["support", "W_U"], &[Align::Left, Align::Right], &rows));
            }
            if let Some(c) = &checks {
                let ok = |b: bool| if b { "ok" } else { "FAILED" };
                s.push_str(&format!(
                    "\nMacWilliams (support): {}\nMacWilliams (rank list): {}\nbinomial moments: {}\n",
                    ok(c.support),
                    ok(c.rank_list),
                    ok(c.moments)
                ));
            }
            s
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = dist
                .sum_rank
                .counts
                .iter()
                .enumerate()
                .map(|(r, w)| vec!["sum_rank".into(), r.to_string(), w.to_string()])
                .collect();
            rows.extend(
                dist.rank_list
                    .counts
                    .iter()
                    .map(|(u, w)| vec!["rank_list".into(), dims_text(u), w.to_string()]),
            );
            if a.support {
                rows.extend(
                    dist.support
                        .counts
                        .iter()
                        .map(|(u, w)| vec!["support".into(), tuple_text(u), w.to_string()]),
                );
            }
            csv_text(&["kind", "key", "count"], &rows)
        }
        Format::Json => {
            let mut body = json!({
                "dual": a.dual,
                "q": p.q(),
                "profile": p.to_text(),
                "dim": code.dim(),
                "sum_rank": dist.sum_rank.counts.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "rank_list": ranklist_json(&dist.rank_list),
                "distinct_supports": dist.support.counts.len(),
            });
            let obj = body.as_object_mut().expect("object literal");
            if a.support {
                let list: Vec<Value> = dist
                    .support
                    .counts
                    .iter()
                    .map(|(u, w)| {
                        json!({
                            "dims": u.dim_vector(),
                            "bases": u.parts().iter().map(|s| s.basis().to_string()).collect::<Vec<_>>(),
                            "count": w.to_string(),
                        })
                    })
                    .collect();
                obj.insert("support".into(), list.into());
            }
            if let Some(c) = &checks {
                obj.insert(
                    "macwilliams".into(),
                    json!({"support": c.support, "rank_list": c.rank_list, "binomial_moments": c.moments}),
                );
            }
            json_text("distributions", body)
        }
    };
    let negative = checks.as_ref().is_some_and(|c| !c.all());
    Ok(Report::verdict(text, negative))
}

/// `ranks,count` rows; ranks space separated.
fn read_ranklist(path: &std::path::Path, profile: &Profile) -> CliResult<RankListDistribution> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let bad = |line: usize, msg: String| CliError::Input {
        path: path.to_path_buf(),
        source: srkit::Error::Parse { line, msg },
    };
    let mut counts = BTreeMap::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| bad(line, e.to_string()))?;
        if rec.len() != 2 {
            return Err(bad(line, "expected two fields".into()));
        }
        let ranks: Vec<usize> = rec[0]
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(line, format!("bad rank '{t}'"))))
            .collect::<CliResult<_>>()?;
        if ranks.len() != profile.t() {
            return Err(bad(line, format!("{} ranks for {} blocks", ranks.len(), profile.t())));
        }
        let count = rec[1]
            .trim()
            .parse()
            .map_err(|_| bad(line, format!("bad count '{}'", &rec[1])))?;
        counts.insert(ranks, count);
    }
    Ok(RankListDistribution { counts })
}

pub fn macwilliams(ctx: &Ctx, a: &MacwilliamsArgs) -> CliResult<Report> {
    let (profile, dist, card) = match (&a.code, &a.input) {
        (Some(path), _) => {
            let code = load_code(path)?;
            let dist = rank_list_distribution(&code, &ctx.limits)?;
            (code.profile().clone(), dist, code.cardinality())
        }
        (None, Some(path)) => {
            let field = parse_field(a.q.as_deref().expect("clap requires --q"))?;
            let profile = parse_profile(&field, a.profile.as_deref().expect("clap requires --profile"))?;
            let dim = a.dim.expect("clap requires --dim");
            let dist = read_ranklist(path, &profile)?;
            let card = q_power(profile.q(), dim as u64);
            (profile, dist, card)
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let dual = macwilliams_ranklist(&dist, &card, &profile)?;
    let text = match ctx.format {
        Format::Table => {
            let mut s = format!(
                "dual rank-list distribution, {} profile {}, |C^perp| = {}\n",
                field_name(profile.field()),
                profile.to_text(),
                dual.total()
            );
            s.push_str(&table(
                &["ranks", "W_u"],
                &[Align::Left, Align::Right],
                &ranklist_rows(&dual),
            ));
            s
        }
        Format::Csv => csv_text(
            &["ranks", "count"],
            &dual
                .counts
                .iter()
                .map(|(u, w)| {
                    let r: Vec<String> = u.iter().map(|x| x.to_string()).collect();
                    vec![r.join(" "), w.to_string()]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_text(
            "macwilliams",
            json!({
                "q": profile.q(),
                "profile": profile.to_text(),
                "dual_rank_list": ranklist_json(&dual),
            }),
        ),
    };
    Ok(Report::ok(text))
}
