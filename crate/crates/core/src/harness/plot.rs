use std::path::Path;

use super::experiment::{fmt_num, ExperimentReport};
use crate::error::{Error, Result};
use crate::pipeline::Method;

/// Writes `traces_<scenario>.csv` per scenario and `bars.csv`.
pub fn emit_plot_data(report: &ExperimentReport, dir: &Path) -> Result<()> {
    if report.aggregates.is_empty() && report.traces.is_empty() {
        return Err(Error::Input("report is empty".into()));
    }
    std::fs::create_dir_all(dir)?;
    for t in &report.traces {
        let mut w = csv::Writer::from_path(dir.join(format!("traces_{}.csv", t.scenario)))?;
        w.write_record(["index", "clean", "noisy", "proposed", "qft", "qwt"])?;
        let col = |m: Method, i: usize| t.outputs.get(&m).map_or_else(|| "nan".to_string(), |v| fmt_num(v[i]));
        for i in 0..t.clean.len() {
            w.write_record([
                i.to_string(),
                fmt_num(t.clean[i]),
                fmt_num(t.noisy[i]),
                col(Method::Proposed, i),
                col(Method::Qft, i),
                col(Method::Qwt, i),
            ])?;
        }
        w.flush()?;
    }
    let mut w = csv::Writer::from_path(dir.join("bars.csv"))?;
    w.write_record(["scenario", "method", "mean_psnr_out_db", "std_psnr_out_db", "mean_snr_out_db", "std_snr_out_db"])?;
    for a in &report.aggregates {
        w.write_record([
            a.scenario.clone(),
            a.method.to_string(),
            fmt_num(a.mean_psnr_out_db),
            fmt_num(a.std_psnr_out_db),
            fmt_num(a.mean_snr_out_db),
            fmt_num(a.std_snr_out_db),
        ])?;
    }
    w.flush()?;
    Ok(())
}
