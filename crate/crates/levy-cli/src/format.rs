//! Output formatting and the on-disk file schemas.
//!
//! Numbers are serialized through `f64`'s `Display`, which emits the
//! shortest string that parses back to the same bits, so identical runs
//! produce identical bytes and files survive round trips losslessly. CSV
//! always carries a header row. JSON is the opt-in structured format; it
//! is also the only one that records the seed (CSV stays plain columns
//! for plotting tools, so parsing a trajectory CSV back yields seed 0).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use levy_core::stable_density::Method;
use levy_core::{TimeAccounting, Trajectory};
use serde::{Deserialize, Serialize};

/// Output encoding for every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Where a subcommand's output goes.
pub struct Sink {
    target: Option<PathBuf>,
}

impl Sink {
    pub fn new(target: Option<PathBuf>) -> Self {
        Self { target }
    }

    /// Writes the full rendered output in one shot.
    pub fn write(&self, content: &str) -> Result<()> {
        match &self.target {
            Some(path) => fs::write(path, content)
                .with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(content.as_bytes()).context("writing standard output")?;
                out.flush().context("flushing standard output")
            }
        }
    }
}

/// Shortest round-trip decimal form.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// Renders rows into CSV with a header and trailing newline.
pub fn csv_table(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Pretty JSON with a trailing newline.
pub fn json_document<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).context("serializing json")?;
    s.push('\n');
    Ok(s)
}

/// Stable label for a density evaluation method.
pub fn method_label(method: Method) -> &'static str {
    match method {
        Method::Auto => "auto",
        Method::ClosedForm => "closed_form",
        Method::Series => "series",
        Method::Quadrature => "quadrature",
    }
}

/// Parses an x-grid argument: either comma-separated values
/// (`0,0.5,1`) or an inclusive linear range `start:stop:count`.
pub fn parse_x_grid(arg: &str) -> Result<Vec<f64>> {
    if arg.contains(':') {
        let parts: Vec<&str> = arg.split(':').collect();
        if parts.len() != 3 {
            bail!("range grids take the form start:stop:count, got {arg:?}");
        }
        let start: f64 = parts[0].parse().context("parsing grid start")?;
        let stop: f64 = parts[1].parse().context("parsing grid stop")?;
        let count: usize = parts[2].parse().context("parsing grid count")?;
        if count < 2 {
            bail!("range grids need at least two points");
        }
        if !start.is_finite() || !stop.is_finite() || !(stop > start) {
            bail!("range grids need finite start < stop");
        }
        let step = (stop - start) / (count - 1) as f64;
        let mut grid: Vec<f64> = (0..count).map(|i| start + step * i as f64).collect();
        grid[count - 1] = stop;
        Ok(grid)
    } else {
        let grid: Vec<f64> = arg
            .split(',')
            .map(|s| s.trim().parse::<f64>().with_context(|| format!("parsing grid value {s:?}")))
            .collect::<Result<_>>()?;
        if grid.is_empty() {
            bail!("the x grid must not be empty");
        }
        if grid.iter().any(|x| !x.is_finite()) {
            bail!("grid values must be finite");
        }
        Ok(grid)
    }
}

/// Trajectory as stored in JSON. The only schema the tool reads back with
/// full fidelity, seed included.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryJson {
    pub beta: f64,
    pub dimension: usize,
    pub seed: u64,
    /// `"flight"` or `"walk"`.
    pub mode: String,
    /// Traversal speed; absent under flight accounting.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub speed: Option<f64>,
    pub points: Vec<Vec<f64>>,
    pub segment_lengths: Vec<f64>,
    pub segment_times: Vec<f64>,
}

impl TrajectoryJson {
    pub fn from_trajectory(t: &Trajectory, beta: f64, accounting: TimeAccounting) -> Self {
        let (mode, speed) = match accounting {
            TimeAccounting::Flight => ("flight", None),
            TimeAccounting::Walk { speed } => ("walk", Some(speed)),
        };
        Self {
            beta,
            dimension: t.dimension(),
            seed: t.seed(),
            mode: mode.to_owned(),
            speed,
            points: t.points().map(<[f64]>::to_vec).collect(),
            segment_lengths: t.segment_lengths().to_vec(),
            segment_times: t.segment_times().to_vec(),
        }
    }

    pub fn into_trajectory(self) -> Result<Trajectory> {
        let coords: Vec<f64> = self.points.into_iter().flatten().collect();
        Trajectory::from_parts(
            self.dimension,
            self.seed,
            coords,
            self.segment_lengths,
            self.segment_times,
        )
        .map_err(|e| anyhow::anyhow!("invalid trajectory json: {e}"))
    }
}

/// Header of the trajectory CSV at a given dimension:
/// `step,time,x_0,...,x_{d-1},segment_length`.
pub fn trajectory_csv_header(dimension: usize) -> String {
    let mut header = String::from("step,time");
    for d in 0..dimension {
        header.push_str(&format!(",x_{d}"));
    }
    header.push_str(",segment_length");
    header
}

/// Renders a trajectory as CSV. Row 0 is the origin with a zero in the
/// segment-length column (there is no incoming segment; readers skip it).
pub fn trajectory_csv(t: &Trajectory) -> String {
    let times = t.elapsed_times();
    let rows = (0..t.num_points()).map(|i| {
        let mut row = format!("{},{}", i, fmt_f64(times[i]));
        for &c in t.point(i) {
            row.push(',');
            row.push_str(&fmt_f64(c));
        }
        row.push(',');
        if i == 0 {
            row.push('0');
        } else {
            row.push_str(&fmt_f64(t.segment_lengths()[i - 1]));
        }
        row
    });
    csv_table(&trajectory_csv_header(t.dimension()), rows)
}

/// Parses a trajectory CSV written by [`trajectory_csv`].
///
/// The CSV schema does not carry the seed, so the result reports seed 0;
/// everything else round-trips exactly.
pub fn parse_trajectory_csv(content: &str) -> Result<Trajectory> {
    let mut lines = content.lines();
    let header = lines.next().context("empty trajectory file")?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.len() < 4
        || columns[0] != "step"
        || columns[1] != "time"
        || *columns.last().unwrap() != "segment_length"
    {
        bail!("unrecognized trajectory header {header:?}");
    }
    let dimension = columns.len() - 3;
    for (d, name) in columns[2..2 + dimension].iter().enumerate() {
        if *name != format!("x_{d}") {
            bail!("unexpected coordinate column {name:?}");
        }
    }

    let mut coords = Vec::new();
    let mut times = vec![0.0f64];
    let mut lengths = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            bail!("row {i} has {} fields, expected {}", fields.len(), columns.len());
        }
        let step: usize = fields[0].parse().with_context(|| format!("row {i} step"))?;
        if step != i {
            bail!("row {i} carries step index {step}");
        }
        let time: f64 = fields[1].parse().with_context(|| format!("row {i} time"))?;
        for f in &fields[2..2 + dimension] {
            coords.push(f.parse::<f64>().with_context(|| format!("row {i} coordinate"))?);
        }
        let length: f64 = fields[2 + dimension]
            .parse()
            .with_context(|| format!("row {i} segment length"))?;
        if i > 0 {
            times.push(time);
            lengths.push(length);
        }
    }
    let segment_times: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    Trajectory::from_parts(dimension, 0, coords, lengths, segment_times)
        .map_err(|e| anyhow::anyhow!("invalid trajectory csv: {e}"))
}

/// Reads a trajectory back from either schema, deciding by content.
pub fn read_trajectory_file(path: &Path) -> Result<Trajectory> {
    let content =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if content.trim_start().starts_with('{') {
        let json: TrajectoryJson =
            serde_json::from_str(&content).context("parsing trajectory json")?;
        json.into_trajectory()
    } else {
        parse_trajectory_csv(&content)
    }
}
