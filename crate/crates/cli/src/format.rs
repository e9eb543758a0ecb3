//! Number formatting and CSV plumbing shared by every output file.
//!
//! Numbers are written in fixed notation with six significant digits and at
//! most six decimals, so anything below half a millionth prints as
//! `0.000000`. Files use a header row, commas, '.' decimals and LF endings.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{CliError, Result};

pub const SIGNIFICANT: i32 = 6;
pub const MAX_DECIMALS: i32 = 6;

pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return format!("{:.*}", MAX_DECIMALS as usize, 0.0);
    }
    let decimals = |mag: i32| (SIGNIFICANT - 1 - mag).clamp(0, MAX_DECIMALS) as usize;
    let mag = x.abs().log10().floor() as i32;
    let mut s = format!("{x:.*}", decimals(mag));
    // 9.9999996 rounds up into the next decade
    if s.parse::<f64>().is_ok_and(|y| y.abs() >= 10f64.powi(mag + 1)) {
        s = format!("{x:.*}", decimals(mag + 1));
    }
    // rounding to zero keeps no sign
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn fmt_deg(radians: f64) -> String {
    fmt_num(radians.to_degrees())
}

/// A CSV table: header plus string cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Cell `name` of row `row` parsed as a number.
    pub fn number(&self, row: usize, name: &str) -> Option<f64> {
        self.rows.get(row)?.get(self.column(name)?)?.parse().ok()
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_path(path)?;
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush().map_err(|e| CliError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
        let header = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { header, rows })
    }
}

/// Whitespace-separated plot data. Every series is preceded by a `# name`
/// comment and separated from the next by two blank lines, so gnuplot can
/// address series with `index`.
#[derive(Debug, Default)]
pub struct PlotData {
    body: String,
    series: usize,
}

impl PlotData {
    pub fn new(title: &str) -> Self {
        Self {
            body: format!("# {title}\n"),
            series: 0,
        }
    }

    pub fn series<I>(&mut self, name: &str, columns: &[&str], rows: I)
    where
        I: IntoIterator<Item = Vec<f64>>,
    {
        if self.series > 0 {
            self.body.push_str("\n\n");
        }
        self.body.push_str(&format!("# index {}: {name}\n# {}\n", self.series, columns.join(" ")));
        for row in rows {
            let cells: Vec<String> = row.into_iter().map(fmt_num).collect();
            self.body.push_str(&cells.join(" "));
            self.body.push('\n');
        }
        self.series += 1;
    }

    pub fn as_str(&self) -> &str {
        &self.body
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let f = File::create(path).map_err(|e| CliError::io(path, e))?;
        let mut w = BufWriter::new(f);
        w.write_all(self.body.as_bytes())
            .and_then(|_| w.flush())
            .map_err(|e| CliError::io(path, e))
    }
}

/// Parses plot data back into named series of numeric rows.
pub fn parse_plot_data(text: &str) -> std::result::Result<Vec<(String, Vec<Vec<f64>>)>, String> {
    let mut out: Vec<(String, Vec<Vec<f64>>)> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("# index ") {
            let name = rest.split_once(": ").map(|(_, n)| n).unwrap_or(rest);
            out.push((name.to_string(), Vec::new()));
        } else if line.is_empty() || line.starts_with('#') {
            continue;
        } else {
            let row = line
                .split_whitespace()
                .map(|c| c.parse::<f64>().map_err(|e| format!("{c:?}: {e}")))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            match out.last_mut() {
                Some((_, rows)) => rows.push(row),
                None => return Err("data before first series header".into()),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_num(0.0), "0.000000");
        assert_eq!(fmt_num(-0.0), "0.000000");
        assert_eq!(fmt_num(56.69934), "56.6993");
        assert_eq!(fmt_num(1525.0), "1525.00");
        assert_eq!(fmt_num(22900.0), "22900.0");
        assert_eq!(fmt_num(0.036), "0.036000");
        assert_eq!(fmt_num(-3.14159265), "-3.14159");
        assert_eq!(fmt_num(1.2e-15), "0.000000");
        assert_eq!(fmt_num(-4e-9), "0.000000");
        assert_eq!(fmt_num(1234567.8), "1234568");
        assert_eq!(fmt_num(9.9999996), "10.0000");
        assert_eq!(fmt_num(f64::NAN), "NaN");
    }

    #[test]
    fn plot_data_round_trip() {
        let mut p = PlotData::new("test");
        p.series("true target", &["x", "y"], [vec![1.0, 2.0]]);
        p.series("noisy target", &["x", "y"], [vec![1.5, -2.25], vec![0.0, 3.0]]);
        let parsed = parse_plot_data(p.as_str()).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].0, "true target");
        assert_eq!(parsed[1].1, vec![vec![1.5, -2.25], vec![0.0, 3.0]]);
        assert!(p.as_str().contains("\n\n\n# index 1: noisy target\n"));
    }

    #[test]
    fn table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let mut t = Table::new(&["name", "value"]);
        t.push(vec!["a,b".into(), fmt_num(1.0 / 3.0)]);
        t.write(&path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert!(!bytes.contains(&b'\r'));
        let back = Table::read(&path).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.number(0, "value"), Some(0.333333));
    }

    proptest! {
        #[test]
        fn formatting_is_stable_under_reparse(x in -1e7..1e7f64) {
            let s = fmt_num(x);
            let y: f64 = s.parse().unwrap();
            prop_assert_eq!(fmt_num(y), s.clone());
            // six significant digits, or micro-unit resolution for small values
            let tol = (x.abs() * 5e-6).max(5e-7) * (1.0 + 1e-9);
            prop_assert!((x - y).abs() <= tol, "{} -> {}", x, s);
        }
    }
}
