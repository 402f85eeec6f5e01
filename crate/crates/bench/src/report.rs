//! Result rows and their CSV and JSON forms.

use std::io::{Read, Write};

use otfcanon::{Pipeline, RunStats};
use serde::{Deserialize, Serialize};

/// One canonization run. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub instance: String,
    pub pipeline: String,
    pub wall_time_ms: f64,
    pub final_states: usize,
    pub peak_intermediate_states: usize,
    pub overhead: usize,
    pub minimizations: usize,
    pub explored_metastates: usize,
    pub timed_out: bool,
    /// Set when the run failed for a reason other than a timeout.
    #[serde(default)]
    pub error: Option<String>,
}

impl ResultRow {
    pub fn from_stats(instance: &str, pipeline: Pipeline, stats: &RunStats) -> Self {
        Self {
            instance: instance.to_string(),
            pipeline: pipeline.name().to_string(),
            wall_time_ms: stats.wall_time.as_secs_f64() * 1e3,
            final_states: stats.final_states,
            peak_intermediate_states: stats.peak_intermediate_states,
            overhead: stats.overhead,
            minimizations: stats.minimizations,
            explored_metastates: stats.explored_metastates,
            timed_out: stats.timed_out,
            error: None,
        }
    }

    pub fn failed(instance: &str, pipeline: Pipeline, error: String) -> Self {
        Self {
            error: Some(error),
            ..Self::from_stats(instance, pipeline, &RunStats::default())
        }
    }

    pub fn completed(&self) -> bool {
        !self.timed_out && self.error.is_none()
    }

    /// The row without its timing column, for reproducibility checks.
    pub fn without_timing(&self) -> ResultRow {
        ResultRow {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[ResultRow]) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<ResultRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// Per-pipeline sorted wall times and overheads of completed runs, one column
/// pair per pipeline, padded with empty cells. Row `i` holds the `i`-th best
/// values, which is the x-axis of a cactus plot.
pub fn write_cactus<W: Write>(out: W, rows: &[ResultRow]) -> csv::Result<()> {
    let pipelines = pipelines_in_order(rows);
    let mut columns: Vec<(Vec<f64>, Vec<usize>)> = pipelines
        .iter()
        .map(|p| {
            let done = rows.iter().filter(|r| &r.pipeline == p && r.completed());
            let mut times: Vec<f64> = done.clone().map(|r| r.wall_time_ms).collect();
            let mut overheads: Vec<usize> = done.map(|r| r.overhead).collect();
            times.sort_by(f64::total_cmp);
            overheads.sort_unstable();
            (times, overheads)
        })
        .collect();
    let height = columns.iter().map(|(t, _)| t.len()).max().unwrap_or(0);

    let mut writer = csv::Writer::from_writer(out);
    let mut header = vec!["rank".to_string()];
    for p in &pipelines {
        header.push(format!("{p}_wall_time_ms"));
        header.push(format!("{p}_overhead"));
    }
    writer.write_record(&header)?;
    for i in 0..height {
        let mut record = vec![(i + 1).to_string()];
        for (times, overheads) in &mut columns {
            record.push(times.get(i).map(|t| format!("{t:.3}")).unwrap_or_default());
            record.push(overheads.get(i).map(|o| o.to_string()).unwrap_or_default());
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Pipeline names in order of first appearance.
pub fn pipelines_in_order(rows: &[ResultRow]) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for row in rows {
        if !names.contains(&row.pipeline) {
            names.push(row.pipeline.clone());
        }
    }
    names
}
