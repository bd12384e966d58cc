use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{main_bound, simple_bound, ul_bound, OptimizerConfig};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 4] = ["r1", "simple", "ul", "main"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub r1: f64,
    pub simple: f64,
    pub ul: f64,
    pub main: f64,
}

/// The three `R2` bounds sampled on a uniform `R1` grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundCurve {
    pub rows: Vec<CurveRow>,
}

/// Evaluates the simple, Urbanke–Li and main bounds at `steps` uniformly
/// spaced `R1` values from `r1_lo` to `r1_hi` inclusive.
pub fn curve(r1_lo: f64, r1_hi: f64, steps: usize, cfg: &OptimizerConfig) -> Result<BoundCurve> {
    if !(0.0..=1.0).contains(&r1_lo) || !(0.0..=1.0).contains(&r1_hi) || r1_lo >= r1_hi {
        return Err(Error::Domain {
            what: "curve range",
            value: r1_lo,
        });
    }
    if steps < 2 {
        return Err(Error::Domain {
            what: "steps",
            value: steps as f64,
        });
    }
    let grid: Vec<f64> = (0..steps)
        .map(|i| {
            if i == steps - 1 {
                r1_hi
            } else {
                r1_lo + (r1_hi - r1_lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    let rows = grid
        .par_iter()
        .map(|&r1| {
            Ok(CurveRow {
                r1,
                simple: simple_bound(r1)?,
                ul: ul_bound(r1, cfg)?,
                main: main_bound(r1, cfg)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundCurve { rows })
}

impl BoundCurve {
    /// Writes `r1,simple,ul,main` CSV with six decimals per value.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Parse {
            line: 0,
            msg: e.to_string(),
        };
        w.write_record(CSV_HEADER).map_err(io)?;
        for row in &self.rows {
            w.write_record([
                format!("{:.6}", row.r1),
                format!("{:.6}", row.simple),
                format!("{:.6}", row.ul),
                format!("{:.6}", row.main),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Parse {
            line: 0,
            msg: e.to_string(),
        })
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv output is ASCII")
    }

    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers().map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        if headers.iter().ne(CSV_HEADER) {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header {}", CSV_HEADER.join(",")),
            });
        }
        let mut rows = Vec::new();
        for (i, rec) in r.deserialize::<CurveRow>().enumerate() {
            let row = rec.map_err(|e| Error::Parse {
                line: i + 2,
                msg: e.to_string(),
            })?;
            rows.push(row);
        }
        Ok(BoundCurve { rows })
    }
}
