use super::harness::EvalReport;

const HEADER: [&str; 10] = [
    "Configuration",
    "ACC violations (% episodes)",
    "ACC violation steps mean",
    "ACC violation steps SD",
    "Time to completion mean",
    "Time to completion SD",
    "Completed",
    "Timeouts",
    "Deaths",
    "Failures",
];

fn num(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.2}"))
}

fn cells(r: &EvalReport) -> Vec<String> {
    vec![
        r.preset.clone(),
        format!("{:.2}", r.pct_episodes_with_acc_violation),
        num(r.acc_violation_steps.mean),
        num(r.acc_violation_steps.sd),
        num(r.completion_steps.mean),
        num(r.completion_steps.sd),
        r.completed.to_string(),
        r.timeouts.to_string(),
        r.deaths.to_string(),
        r.failures.to_string(),
    ]
}

/// One row per report, grouped by scenario in input order.
pub fn render_markdown(reports: &[EvalReport]) -> String {
    let mut scenarios: Vec<u8> = Vec::new();
    for r in reports {
        if !scenarios.contains(&r.scenario) {
            scenarios.push(r.scenario);
        }
    }
    let mut out = String::new();
    for s in scenarios {
        let rows: Vec<&EvalReport> = reports.iter().filter(|r| r.scenario == s).collect();
        out.push_str(&format!("### Scenario {s} ({} episodes each)\n\n", rows[0].episodes));
        out.push_str(&format!("| {} |\n", HEADER.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(HEADER.len())));
        for r in rows {
            out.push_str(&format!("| {} |\n", cells(r).join(" | ")));
        }
        out.push('\n');
    }
    out
}

pub fn render_csv(reports: &[EvalReport]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["Scenario"];
    header.extend(HEADER);
    w.write_record(&header)?;
    for r in reports {
        let mut row = vec![r.scenario.to_string()];
        row.extend(cells(r));
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
