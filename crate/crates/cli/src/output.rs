//! Report emission: JSON report, CSV table and the stdout summary.
//!
//! CSV columns per command:
//!
//! | command            | columns |
//! |--------------------|---------|
//! | `verify-range`     | q, t_lo, t_hi, envelope_lo, envelope_hi, ratio, pass, pieces, terms |
//! | `derive-constants` | name, lo, hi (rows a1, a2, a3) |
//! | `crossover`        | which, range_lo, range_hi, verdict, boxes, depth, min_margin, undecided |
//! | `barrier`          | t_min, lower_bound, upper_bound, argmin_lo, argmin_hi, verdict |
//! | `vdc-oracle`       | t, r, k, len, m, sum_upper, square_bound_hi, lemma, a_process, second_deriv, chain |
//! | `large-value`      | bound, lo, hi, ratio_lo, ratio_hi, ratio_rounded, printed |
//! | `search-witness`   | window_lo, window_hi, t_best, ratio_best, ratio_best_upper, exceeds_target |
//! | `zeta-eval`        | name, lo, hi (rows re, im, modulus) |

use std::io::Write;

use anyhow::{Context, Result};
use serde_json::{json, Value};

use vdc_zeta::report::Report;

use crate::GlobalOpts;

pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub struct Outcome {
    pub command: &'static str,
    pub config: Value,
    pub records: Vec<Value>,
    pub summary: Value,
    pub table: Table,
    pub pass: bool,
}

pub fn emit(g: &GlobalOpts, o: &Outcome) -> Result<()> {
    let report = Report::new(o.command, &o.config, &o.records, &o.summary)?;
    if let Some(path) = &g.out {
        report
            .write_json(path)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &g.csv {
        let file =
            std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        o.table.write(file)?;
    }
    let line = json!({
        "command": o.command,
        "pass": o.pass,
        "config_hash": report.provenance.config_hash,
        "summary": o.summary,
    });
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    serde_json::to_writer_pretty(&mut lock, &line)?;
    writeln!(lock)?;
    Ok(())
}
