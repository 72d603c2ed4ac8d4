//! Rendering of scenario reports and verification results.
//!
//! CSV floats carry 17 significant digits so that re-parsing a file
//! reproduces the in-memory values bit-exactly; JSON lines rely on the
//! shortest round-trip float encoding.

use beamsplit::VerificationReport;

use crate::config::OutputFormat;
use crate::scenario::{ScenarioOutput, ScenarioReport, SweepRow};
use crate::AppError;

/// 17 significant digits; always round-trips an f64 exactly.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn render_scenario(output: &ScenarioOutput, format: OutputFormat) -> Result<String, AppError> {
    match (output, format) {
        (ScenarioOutput::Single(report), OutputFormat::Table) => Ok(single_table(report)),
        (ScenarioOutput::Single(report), OutputFormat::Csv) => Ok(single_csv(report)),
        (ScenarioOutput::Single(report), OutputFormat::Jsonl) => {
            let mut line = serde_json::to_string(report)
                .map_err(|e| AppError::config(format!("serialization failed: {e}")))?;
            line.push('\n');
            Ok(line)
        }
        (ScenarioOutput::Sweep { rows }, OutputFormat::Table) => Ok(sweep_table(rows)),
        (ScenarioOutput::Sweep { rows }, OutputFormat::Csv) => Ok(sweep_csv(rows)),
        (ScenarioOutput::Sweep { rows }, OutputFormat::Jsonl) => {
            let mut text = String::new();
            for row in rows {
                text.push_str(
                    &serde_json::to_string(row)
                        .map_err(|e| AppError::config(format!("serialization failed: {e}")))?,
                );
                text.push('\n');
            }
            Ok(text)
        }
    }
}

fn single_table(report: &ScenarioReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("scenario: {}\n", report.scenario));
    out.push_str(&format!("input:    {}\n", report.input));
    out.push_str(&format!("cutoff:   {}\n", report.cutoff));
    out.push_str(&format!("theta:    {}\n", report.theta));
    if let Some(theta2) = report.theta2 {
        out.push_str(&format!("theta2:   {theta2}\n"));
    }
    if let Some(phi) = report.phi {
        out.push_str(&format!("phi:      {phi}\n"));
    }
    out.push_str("\noutput amplitudes (|c| > 1e-12):\n");
    for amp in &report.amplitudes {
        out.push_str(&format!(
            "  |{},{}>  {:+.12}  {:+.12}i\n",
            amp.n, amp.m, amp.re, amp.im
        ));
    }
    out.push_str("\ndetection probabilities, mode a:\n");
    for entry in &report.detection_a {
        out.push_str(&format!("  P({}) = {:.12}\n", entry.k, entry.p));
    }
    out.push_str("detection probabilities, mode b:\n");
    for entry in &report.detection_b {
        out.push_str(&format!("  P({}) = {:.12}\n", entry.k, entry.p));
    }
    out.push_str(&format!(
        "\nmode a: mean {:.12}, variance {:.12}, Mandel Q {:+.12}\n",
        report.stats_a.mean, report.stats_a.variance, report.stats_a.mandel_q
    ));
    out.push_str(&format!(
        "mode b: mean {:.12}, variance {:.12}, Mandel Q {:+.12}\n",
        report.stats_b.mean, report.stats_b.variance, report.stats_b.mandel_q
    ));
    out.push_str(&format!(
        "entanglement entropy: {:.12} bits\n",
        report.entropy_bits
    ));
    if let Some(f) = report.oracle_fidelity {
        out.push_str(&format!("closed-form fidelity: {:.15}\n", f));
    }
    out
}

fn single_csv(report: &ScenarioReport) -> String {
    let mut out = String::from("record,i,j,value\n");
    out.push_str(&format!("cutoff,,,{}\n", report.cutoff));
    out.push_str(&format!("theta,,,{}\n", fmt_f64(report.theta)));
    if let Some(theta2) = report.theta2 {
        out.push_str(&format!("theta2,,,{}\n", fmt_f64(theta2)));
    }
    if let Some(phi) = report.phi {
        out.push_str(&format!("phi,,,{}\n", fmt_f64(phi)));
    }
    for amp in &report.amplitudes {
        out.push_str(&format!("amp_re,{},{},{}\n", amp.n, amp.m, fmt_f64(amp.re)));
        out.push_str(&format!("amp_im,{},{},{}\n", amp.n, amp.m, fmt_f64(amp.im)));
    }
    for entry in &report.detection_a {
        out.push_str(&format!("p_a,{},,{}\n", entry.k, fmt_f64(entry.p)));
    }
    for entry in &report.detection_b {
        out.push_str(&format!("p_b,{},,{}\n", entry.k, fmt_f64(entry.p)));
    }
    out.push_str(&format!("mean_a,,,{}\n", fmt_f64(report.stats_a.mean)));
    out.push_str(&format!("mean_b,,,{}\n", fmt_f64(report.stats_b.mean)));
    out.push_str(&format!(
        "variance_a,,,{}\n",
        fmt_f64(report.stats_a.variance)
    ));
    out.push_str(&format!(
        "variance_b,,,{}\n",
        fmt_f64(report.stats_b.variance)
    ));
    out.push_str(&format!(
        "mandel_q_a,,,{}\n",
        fmt_f64(report.stats_a.mandel_q)
    ));
    out.push_str(&format!(
        "mandel_q_b,,,{}\n",
        fmt_f64(report.stats_b.mandel_q)
    ));
    out.push_str(&format!(
        "entropy_bits,,,{}\n",
        fmt_f64(report.entropy_bits)
    ));
    if let Some(f) = report.oracle_fidelity {
        out.push_str(&format!("oracle_fidelity,,,{}\n", fmt_f64(f)));
    }
    out
}

fn sweep_table(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "      theta          P(a=0)          P(a=1)          mean_a          entropy\n",
    );
    for row in rows {
        out.push_str(&format!(
            "{:>11.6}  {:>14.10}  {:>14.10}  {:>14.10}  {:>14.10}\n",
            row.theta, row.p_a0, row.p_a1, row.mean_a, row.entropy_bits
        ));
    }
    out
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("theta,p_a0,p_a1,mean_a,mean_b,entropy_bits,oracle_fidelity\n");
    for row in rows {
        let fidelity = row.oracle_fidelity.map(fmt_f64).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_f64(row.theta),
            fmt_f64(row.p_a0),
            fmt_f64(row.p_a1),
            fmt_f64(row.mean_a),
            fmt_f64(row.mean_b),
            fmt_f64(row.entropy_bits),
            fidelity
        ));
    }
    out
}

pub fn render_verification(
    report: &VerificationReport,
    format: OutputFormat,
) -> Result<String, AppError> {
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "verification suite (seed {}), {} checks\n\n",
                report.seed,
                report.checks.len()
            ));
            for check in &report.checks {
                let verdict = if check.passed() { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "{verdict}  {:<62}  deviation {:>12.5e}  tolerance {:>9.1e}\n",
                    check.name, check.deviation, check.tolerance
                ));
            }
            let failed = report.checks.iter().filter(|c| !c.passed()).count();
            out.push_str(&format!(
                "\n{} passed, {} failed\n",
                report.checks.len() - failed,
                failed
            ));
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut out = String::from("name,deviation,tolerance,verdict\n");
            for check in &report.checks {
                out.push_str(&format!(
                    "\"{}\",{},{},{}\n",
                    check.name,
                    fmt_f64(check.deviation),
                    fmt_f64(check.tolerance),
                    if check.passed() { "pass" } else { "fail" }
                ));
            }
            Ok(out)
        }
        OutputFormat::Jsonl => {
            #[derive(serde::Serialize)]
            struct Header {
                seed: u64,
                checks: usize,
                all_passed: bool,
            }
            #[derive(serde::Serialize)]
            struct Line<'a> {
                name: &'a str,
                deviation: f64,
                tolerance: f64,
                passed: bool,
            }
            let mut out = serde_json::to_string(&Header {
                seed: report.seed,
                checks: report.checks.len(),
                all_passed: report.all_passed(),
            })
            .map_err(|e| AppError::config(format!("serialization failed: {e}")))?;
            out.push('\n');
            for check in &report.checks {
                out.push_str(
                    &serde_json::to_string(&Line {
                        name: &check.name,
                        deviation: check.deviation,
                        tolerance: check.tolerance,
                        passed: check.passed(),
                    })
                    .map_err(|e| AppError::config(format!("serialization failed: {e}")))?,
                );
                out.push('\n');
            }
            Ok(out)
        }
    }
}
