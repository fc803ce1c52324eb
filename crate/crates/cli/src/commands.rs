use std::error::Error as StdError;

use serde_json::{json, Value};
use springer_core::clifford::gamma_generators;
use springer_core::component_groups::ComponentGroup;
use springer_core::partitions::{enumerate_XN, enumerate_tilde_XN, is_in_xn, partitions_of, Partition, SlCase};
use springer_core::restriction::{restriction_crosscheck_sl, restriction_table};
use springer_core::split::{build_sl_split, build_so_split, frobenius_action_sl, frobenius_action_spin, FrobeniusAction};
use springer_core::springer::{enumerate_sl_series, enumerate_spin_series};
use springer_core::tables::{sl_series_table, spin_series_table, Y0Table};
use springer_core::varieties::{centralizer_units, enumerate_flags_sl, enumerate_flags_so, is_f_stable_sl, orbit_decomposition};
use springer_core::verify::{run_suite, Suite, VerifyConfig};
use springer_core::Error;

use crate::output::{canonical_json, cell_json, emit, Format, Tsv};
use crate::{Cli, Command, FlagsArgs, Group, RestrictArgs, SeriesArgs, SplitArgs, TablesArgs, VerifyArgs, XnArgs};

type Res<T> = Result<T, Box<dyn StdError>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success = 0,
    VerificationFailed = 1,
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    let (text, outcome) = match &cli.command {
        Command::Series(a) => (series(a, cli.format.unwrap_or(Format::Tsv))?, Outcome::Success),
        Command::Xn(a) => (xn(a, cli.format.unwrap_or(Format::Json)), Outcome::Success),
        Command::Split(a) => split(a, cli.format.unwrap_or(Format::Json))?,
        Command::Flags(a) => (flags(a, cli.format.unwrap_or(Format::Tsv), cli.budget)?, Outcome::Success),
        Command::Restrict(a) => (restrict(a, cli.format.unwrap_or(Format::Tsv), cli.budget)?, Outcome::Success),
        Command::Tables(a) => (tables(a, cli.format.unwrap_or(Format::Tsv))?, Outcome::Success),
        Command::Verify(a) => verify(a, cli.format.unwrap_or(Format::Json), cli.budget)?,
    };
    emit(&text, cli.output.as_deref())?;
    Ok(outcome)
}

fn usage(msg: impl Into<String>) -> Box<dyn StdError> {
    msg.into().into()
}

fn series(a: &SeriesArgs, fmt: Format) -> Res<String> {
    match a.group {
        Group::Spin | Group::So => {
            let n = a.big_n.ok_or_else(|| usage("--N is required"))?;
            let data = enumerate_spin_series(n);
            if fmt == Format::Json {
                return Ok(canonical_json(&data));
            }
            let mut t = Tsv::new(&["d", "levi_type", "weyl_rank"]);
            for c in data {
                t.push(vec![c.d.to_string(), c.levi_type, c.weyl_rank.to_string()]);
            }
            Ok(t.render())
        }
        Group::Sl => {
            let n = a.n.ok_or_else(|| usage("--n is required"))?;
            let q = a.q.ok_or_else(|| usage("--q is required"))?;
            let data = enumerate_sl_series(n, q)?;
            if fmt == Format::Json {
                return Ok(canonical_json(&data));
            }
            let mut t = Tsv::new(&["d", "f_rational", "weyl_degree"]);
            for c in data {
                t.push(vec![c.d.to_string(), c.f_rational.to_string(), c.weyl_degree.to_string()]);
            }
            Ok(t.render())
        }
    }
}

fn xn(a: &XnArgs, fmt: Format) -> String {
    let list = if a.tilde { enumerate_tilde_XN(a.big_n) } else { enumerate_XN(a.big_n) };
    match fmt {
        Format::Json => canonical_json(&list),
        Format::Tsv => {
            let mut t = Tsv::new(&["lambda"]);
            for l in list {
                t.push(vec![l.label()]);
            }
            t.render()
        }
    }
}

fn group_json(g: &ComponentGroup) -> Value {
    let n = g.order();
    json!({
        "order": n,
        "elements": (0..n).map(|a| g.label(a).to_string()).collect::<Vec<_>>(),
        "tau": (0..n).map(|a| g.tau(a)).collect::<Vec<_>>(),
        "tau_trivial": g.tau_is_trivial(),
        "tau_involution": g.tau_is_involutive_automorphism(),
    })
}

fn key_value(v: &Value) -> String {
    let mut t = Tsv::new(&["key", "value"]);
    if let Value::Object(m) = v {
        for (k, x) in m {
            t.push(vec![k.clone(), cell_json(x)]);
        }
    }
    t.render()
}

fn split(a: &SplitArgs, fmt: Format) -> Res<(String, Outcome)> {
    let (report, passed) = match a.group {
        Group::Sl => {
            let data = build_sl_split(&a.lambda, a.q, a.signs.as_deref())?;
            let f = &*data.field;
            let g = ComponentGroup::sl_cyclic(&a.lambda, a.q)?;
            let action = frobenius_action_sl(g.order() as u32, a.q);
            let passed = data.checks.all() && action.is_involution();
            let v = json!({
                "group": "sl",
                "lambda": a.lambda,
                "q": a.q,
                "field_order": f.order(),
                "signs": data.signs,
                "unipotent": data.unipotent.to_coeffs(f),
                "form": data.form.to_coeffs(f),
                "component_group": group_json(&g),
                "frobenius": action,
                "checks": data.checks,
                "passed": passed,
            });
            (v, passed)
        }
        Group::Spin | Group::So => {
            let data = build_so_split(&a.lambda, a.q)?;
            let f = &*data.field;
            let mut passed = data.checks.all();
            let mut v = json!({
                "group": "spin",
                "lambda": a.lambda,
                "q": a.q,
                "field_order": f.order(),
                "gram": data.gram().to_coeffs(f),
                "nilpotent": data.nilpotent().to_coeffs(f),
                "blocks": data.form.blocks,
                "checks": data.checks,
            });
            if is_in_xn(&a.lambda) {
                let gamma = gamma_generators(&a.lambda, a.q)?;
                let action = frobenius_action_spin(&a.lambda, a.q)?;
                let FrobeniusAction::Spin { signs, .. } = &action else { unreachable!() };
                let g = ComponentGroup::spin_gamma(&a.lambda, Some(signs))?;
                passed &= gamma.relations_hold() && gamma.signs_match();
                v["generators"] = serde_json::to_value(&gamma.generators)?;
                v["anticommute"] = json!(gamma.anticommute);
                v["frobenius"] = serde_json::to_value(&action)?;
                v["component_group"] = group_json(&g);
            }
            v["passed"] = json!(passed);
            (v, passed)
        }
    };
    let text = match fmt {
        Format::Json => canonical_json(&report),
        Format::Tsv => key_value(&report),
    };
    Ok((text, if passed { Outcome::Success } else { Outcome::VerificationFailed }))
}

fn candidates(lambda_p: &Option<Partition>, size: i64) -> Vec<Partition> {
    match lambda_p {
        Some(p) => vec![p.clone()],
        None if size >= 0 => partitions_of(size as u32),
        None => Vec::new(),
    }
}

fn flags(a: &FlagsArgs, fmt: Format, budget: u128) -> Res<String> {
    let n = a.lambda.size() as i64;
    match a.group {
        Group::Sl => {
            let d = a.d as usize;
            let data = build_sl_split(&a.lambda, a.q, None)?;
            let f = &*data.field;
            let x = data.nilpotent();
            let units = if a.no_orbits {
                None
            } else {
                match centralizer_units(f, &x, true, budget) {
                    Ok(u) => Some(u),
                    Err(Error::BudgetExceeded { needed, budget }) => {
                        eprintln!("springer: orbits skipped ({needed} centralizer elements exceed budget {budget})");
                        None
                    }
                    Err(e) => return Err(e.into()),
                }
            };
            let mut rows = Vec::new();
            let mut next_orbit = 0;
            for lp in candidates(&a.lambda_p, n - 2 * d as i64) {
                let fl = enumerate_flags_sl(f, &x, d, &lp, budget)?;
                let mut orbit_of = vec![None; fl.len()];
                if let Some(u) = &units {
                    let dec = orbit_decomposition(f, &fl, u)?;
                    for members in &dec.orbits {
                        for &m in members {
                            orbit_of[m] = Some(next_orbit);
                        }
                        next_orbit += 1;
                    }
                }
                for (k, flag) in fl.iter().enumerate() {
                    rows.push(json!({
                        "lambda_p": lp,
                        "w": flag.w.to_indices(),
                        "wp": flag.wp.to_indices(),
                        "type_w": flag.type_w,
                        "type_middle": flag.type_middle,
                        "type_top": flag.type_top,
                        "stratum": flag.type_quotient,
                        "orbit": orbit_of[k],
                        "f_stable": is_f_stable_sl(&data, &flag.w, &flag.wp),
                    }));
                }
            }
            render_flags(rows, fmt, "sl", f.order())
        }
        Group::Spin | Group::So => {
            let data = build_so_split(&a.lambda, a.q)?;
            let mut rows = Vec::new();
            for lp in candidates(&a.lambda_p, n - 4) {
                for flag in enumerate_flags_so(&data, &lp, budget)? {
                    rows.push(json!({
                        "lambda_p": lp,
                        "w": flag.e.to_indices(),
                        "wp": flag.e_perp.to_indices(),
                        "type_middle": flag.type_middle,
                        "orbit": Value::Null,
                        // F_q-points of a split form are the F-stable planes
                        "f_stable": true,
                    }));
                }
            }
            render_flags(rows, fmt, "so", data.field.order())
        }
    }
}

fn render_flags(rows: Vec<Value>, fmt: Format, group: &str, field_order: u32) -> Res<String> {
    if fmt == Format::Json {
        return Ok(canonical_json(&json!({"group": group, "field_order": field_order, "flags": rows})));
    }
    let mut t = Tsv::new(&["id", "lambda_p", "w", "wp", "type_w", "type_middle", "type_top", "stratum", "orbit", "f_stable"]);
    let text = |v: &Value| match v {
        Value::Null => "-".to_string(),
        Value::Array(items) if items.iter().all(Value::is_number) => {
            format!("({})", items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
        other => cell_json(other),
    };
    for (id, r) in rows.iter().enumerate() {
        let mut cells = vec![id.to_string()];
        for key in ["lambda_p", "w", "wp", "type_w", "type_middle", "type_top", "stratum", "orbit", "f_stable"] {
            let v = r.get(key).unwrap_or(&Value::Null);
            cells.push(if matches!(key, "w" | "wp") { cell_json(v) } else { text(v) });
        }
        t.push(cells);
    }
    Ok(t.render())
}

fn case_label(c: Option<SlCase>) -> String {
    match c {
        Some(SlCase::I) => "I".into(),
        Some(SlCase::II) => "II".into(),
        Some(SlCase::III) => "III".into(),
        None => "-".into(),
    }
}

fn restrict(a: &RestrictArgs, fmt: Format, budget: u128) -> Res<String> {
    if a.d == 0 {
        return Err(usage("--d must be positive"));
    }
    let rows = restriction_table(a.n, a.d)?;
    let mut out = Vec::new();
    for r in &rows {
        let strata = match a.q {
            Some(q) => Some(restriction_crosscheck_sl(&r.lambda, &r.lambda_p, a.d, q, budget)?.lhs),
            None => None,
        };
        out.push((r, strata));
    }
    if fmt == Format::Json {
        let v: Vec<Value> = out
            .iter()
            .map(|(r, s)| {
                let mut v = serde_json::to_value(r).expect("row");
                if let Some(s) = s {
                    v["strata"] = json!(s);
                }
                v
            })
            .collect();
        return Ok(canonical_json(&v));
    }
    let mut header = vec!["lambda", "lambda_p", "mu", "mu_p", "case", "multiplicity", "table_value"];
    if a.q.is_some() {
        header.push("strata");
    }
    let mut t = Tsv::new(&header);
    for (r, s) in out {
        let mut cells = vec![
            r.lambda.to_string(),
            r.lambda_p.to_string(),
            r.mu.to_string(),
            r.mu_p.to_string(),
            case_label(r.case),
            r.multiplicity.to_string(),
            r.table_value.to_string(),
        ];
        if let Some(s) = s {
            cells.push(s.to_string());
        }
        t.push(cells);
    }
    Ok(t.render())
}

fn table_json(t: &Y0Table) -> Value {
    json!({
        "group": t.group,
        "q": t.q,
        "series": t.series,
        "rows": t.rows.iter().map(|r| json!({
            "lambda": r.lambda,
            "rho": r.rho,
            "classes": r.classes,
            "values": r.values,
        })).collect::<Vec<_>>(),
    })
}

fn tables(a: &TablesArgs, fmt: Format) -> Res<String> {
    let table = match a.group {
        Group::Sl => {
            let n = a.n.ok_or_else(|| usage("--n is required"))?;
            let d = a.xi_order.ok_or_else(|| usage("--xi-order is required"))?;
            sl_series_table(n, d, a.q)?
        }
        Group::Spin | Group::So => {
            let n = a.big_n.ok_or_else(|| usage("--N is required"))?;
            spin_series_table(n, a.series, a.q, !a.non_split)?
        }
    };
    if fmt == Format::Json {
        return Ok(canonical_json(&table_json(&table)));
    }
    let mut t = Tsv::new(&["lambda", "rho", "dim", "a0", "r", "class", "size", "value"]);
    for row in &table.rows {
        for (c, v) in row.classes.iter().zip(&row.values) {
            t.push(vec![
                row.lambda.to_string(),
                row.rho.clone(),
                row.dimension.to_string(),
                row.exponents.a0.to_string(),
                row.exponents.r.to_string(),
                c.rep.clone(),
                c.size.to_string(),
                v.to_string(),
            ]);
        }
    }
    Ok(t.render())
}

fn verify(a: &VerifyArgs, fmt: Format, budget: u128) -> Res<(String, Outcome)> {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(&a.suite).ok_or_else(|| usage(format!("unknown suite {:?}", a.suite)))?]
    };
    let cfg = VerifyConfig {
        n_max_spin: a.n_max,
        budget,
    };
    let reports: Vec<_> = suites.iter().map(|&s| run_suite(s, &cfg)).collect();
    let passed = reports.iter().all(|r| r.passed());
    for r in &reports {
        eprintln!("{}: {} checks in {} ms", r.suite.name(), r.checked, r.elapsed_ms);
    }
    let text = match fmt {
        Format::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("report");
                    v["passed"] = json!(r.passed());
                    v["criterion"] = json!(r.suite.number());
                    v
                })
                .collect();
            canonical_json(&json!({"passed": passed, "suites": v}))
        }
        Format::Tsv => {
            let mut t = Tsv::new(&["suite", "criterion", "passed", "checked", "failed"]);
            for r in &reports {
                t.push(vec![
                    r.suite.name().to_string(),
                    r.suite.number().to_string(),
                    r.passed().to_string(),
                    r.checked.to_string(),
                    r.failures.len().to_string(),
                ]);
            }
            t.render()
        }
    };
    Ok((text, if passed { Outcome::Success } else { Outcome::VerificationFailed }))
}
