//! Observation files.
//!
//! CSV with columns `kind,bearing_deg,range,apparent_size,x,y`. `kind` is
//! `target` (exactly one row) or `beacon`; beacon rows carry the surveyed
//! position in `x,y`. `range` may be left empty when `apparent_size` is
//! given and the config has a ranging reference for that kind.

use std::path::Path;

use mirrorloc::geometry::{Bearing, Pose2D};
use mirrorloc::ranging::Observation;
use mirrorloc::solver::BeaconSpec;

use crate::config::RangingConfig;
use crate::error::{CliError, Result};
use crate::format::{fmt_num, Table};

pub const COLUMNS: [&str; 6] = ["kind", "bearing_deg", "range", "apparent_size", "x", "y"];

#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSet {
    pub target: Observation,
    pub beacons: Vec<BeaconSpec>,
}

fn cell<'a>(row: &'a [String], t: &Table, name: &str) -> &'a str {
    t.column(name).and_then(|i| row.get(i)).map_or("", |s| s.as_str())
}

fn number(row: &[String], t: &Table, name: &str, line: usize) -> Result<Option<f64>> {
    let s = cell(row, t, name);
    if s.is_empty() {
        return Ok(None);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| CliError::config(format!("row {line}: {name} {s:?} is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::config(format!("row {line}: {name} must be finite")));
    }
    Ok(Some(v))
}

impl ObservationSet {
    pub fn from_table(t: &Table, ranging: &RangingConfig) -> Result<Self> {
        for c in ["kind", "bearing_deg"] {
            if t.column(c).is_none() {
                return Err(CliError::config(format!("observation file lacks a {c} column")));
            }
        }
        let mut target = None;
        let mut beacons = Vec::new();
        for (i, row) in t.rows.iter().enumerate() {
            let line = i + 2;
            let kind = cell(row, t, "kind");
            let reference = match kind {
                "target" => ranging.target,
                "beacon" => ranging.beacon,
                other => return Err(CliError::config(format!("row {line}: unknown kind {other:?}"))),
            };
            let bearing = number(row, t, "bearing_deg", line)?
                .ok_or_else(|| CliError::config(format!("row {line}: missing bearing")))?;
            let bearing = Bearing::from_degrees(bearing);
            let bad = |e: mirrorloc::Error| CliError::config(format!("row {line}: {e}"));
            let obs = match (number(row, t, "range", line)?, number(row, t, "apparent_size", line)?) {
                (Some(range), size) => {
                    let mut o = Observation::with_range(bearing, range).map_err(bad)?;
                    o.apparent_size = size;
                    o
                }
                (None, Some(size)) => {
                    let r = reference.ok_or_else(|| {
                        CliError::config(format!("row {line}: apparent size given but no [ranging.{kind}] reference"))
                    })?;
                    Observation::from_size(bearing, size, &r.constancy()?).map_err(bad)?
                }
                (None, None) => return Err(CliError::config(format!("row {line}: needs range or apparent_size"))),
            };
            if kind == "target" {
                if target.replace(obs).is_some() {
                    return Err(CliError::config("more than one target row"));
                }
            } else {
                let (Some(x), Some(y)) = (number(row, t, "x", line)?, number(row, t, "y", line)?) else {
                    return Err(CliError::config(format!("row {line}: beacon needs x and y")));
                };
                beacons.push(BeaconSpec {
                    position: Pose2D::new(x, y),
                    observation: obs,
                });
            }
        }
        let target = target.ok_or_else(|| CliError::config("no target row"))?;
        Ok(Self { target, beacons })
    }

    pub fn read(path: &Path, ranging: &RangingConfig) -> Result<Self> {
        let t = Table::read(path).map_err(|e| match e {
            CliError::Csv(e) => CliError::config(format!("{}: {e}", path.display())),
            other => other,
        })?;
        Self::from_table(&t, ranging)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&COLUMNS);
        let size = |o: &Observation| o.apparent_size.map(fmt_num).unwrap_or_default();
        t.push(vec![
            "target".into(),
            fmt_num(self.target.bearing.degrees()),
            fmt_num(self.target.estimated_range),
            size(&self.target),
            String::new(),
            String::new(),
        ]);
        for b in &self.beacons {
            t.push(vec![
                "beacon".into(),
                fmt_num(b.observation.bearing.degrees()),
                fmt_num(b.observation.estimated_range),
                size(&b.observation),
                fmt_num(b.position.x),
                fmt_num(b.position.y),
            ]);
        }
        t
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        self.to_table().write(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Reference;

    fn table(rows: &[[&str; 6]]) -> Table {
        let mut t = Table::new(&COLUMNS);
        for r in rows {
            t.push(r.iter().map(|s| s.to_string()).collect());
        }
        t
    }

    #[test]
    fn reads_ranges_and_sizes() {
        let ranging = RangingConfig {
            target: Some(Reference { size: 15.25, distance: 100.0 }),
            beacon: None,
        };
        let t = table(&[
            ["target", "65.5", "", "26.9", "", ""],
            ["beacon", "75.0", "70.39", "", "18.2", "0"],
        ]);
        let set = ObservationSet::from_table(&t, &ranging).unwrap();
        assert!((set.target.estimated_range - 1525.0 / 26.9).abs() < 1e-12);
        assert_eq!(set.target.apparent_size, Some(26.9));
        assert_eq!(set.beacons.len(), 1);
        assert_eq!(set.beacons[0].position, Pose2D::new(18.2, 0.0));
    }

    #[test]
    fn rejects_malformed_rows() {
        let r = RangingConfig::default();
        for rows in [
            vec![["beacon", "75", "70", "", "18.2", "0"]],
            vec![["target", "65", "56", "", "", ""], ["target", "65", "56", "", "", ""]],
            vec![["target", "65", "", "20", "", ""]],
            vec![["target", "abc", "56", "", "", ""]],
            vec![["target", "65", "-3", "", "", ""]],
            vec![["mirror", "65", "56", "", "", ""]],
            vec![["target", "65", "56", "", "", ""], ["beacon", "75", "70", "", "", "0"]],
        ] {
            let err = ObservationSet::from_table(&table(&rows), &r).unwrap_err();
            assert_eq!(err.exit_code(), crate::error::exit::CONFIG, "{err}");
        }
    }

    #[test]
    fn write_then_read() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("obs.csv");
        let t = table(&[
            ["target", "65.4926", "56.6993", "", "", ""],
            ["beacon", "75.0169", "70.3934", "", "18.2", "0"],
        ]);
        let set = ObservationSet::from_table(&t, &RangingConfig::default()).unwrap();
        set.write(&path).unwrap();
        let back = ObservationSet::read(&path, &RangingConfig::default()).unwrap();
        assert_eq!(back, set);
    }
}
