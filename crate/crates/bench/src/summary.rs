//! Per-pipeline statistics over result rows.

use std::fmt::Write;

use serde::Serialize;

use crate::report::{pipelines_in_order, ResultRow};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub mean: f64,
}

impl Stats {
    /// `None` for an empty sample. The median of an even sample is the mean
    /// of the two middle values.
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
        };
        Some(Stats {
            min: sorted[0],
            median,
            max: sorted[n - 1],
            mean: sorted.iter().sum::<f64>() / n as f64,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineSummary {
    pub pipeline: String,
    pub runs: usize,
    pub completed: usize,
    /// Over completed runs; `None` if there are none.
    pub minimizations: Option<Stats>,
    pub overhead: Option<Stats>,
}

pub fn summarize(rows: &[ResultRow]) -> Vec<PipelineSummary> {
    pipelines_in_order(rows)
        .into_iter()
        .map(|pipeline| {
            let all: Vec<&ResultRow> = rows.iter().filter(|r| r.pipeline == pipeline).collect();
            let done: Vec<&ResultRow> = all.iter().copied().filter(|r| r.completed()).collect();
            let column = |f: fn(&ResultRow) -> usize| -> Vec<f64> { done.iter().map(|r| f(r) as f64).collect() };
            PipelineSummary {
                runs: all.len(),
                completed: done.len(),
                minimizations: Stats::of(&column(|r| r.minimizations)),
                overhead: Stats::of(&column(|r| r.overhead)),
                pipeline,
            }
        })
        .collect()
}

pub fn render_text(summaries: &[PipelineSummary]) -> String {
    let cells = |s: Option<Stats>| match s {
        Some(s) => [s.min, s.median, s.max, s.mean].map(|v| format!("{v:.1}")),
        None => ["-"; 4].map(String::from),
    };
    let mut table = vec![[
        "pipeline", "runs", "done", "min.min", "min.med", "min.max", "min.mean", "ovh.min", "ovh.med", "ovh.max",
        "ovh.mean",
    ]
    .map(String::from)
    .to_vec()];
    for s in summaries {
        let mut row = vec![s.pipeline.clone(), s.runs.to_string(), s.completed.to_string()];
        row.extend(cells(s.minimizations));
        row.extend(cells(s.overhead));
        table.push(row);
    }
    let widths: Vec<usize> = (0..table[0].len())
        .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &table {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, &w))| {
                if c == 0 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
    }
    out
}
