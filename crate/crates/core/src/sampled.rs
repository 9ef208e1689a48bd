//! Uniformly sampled curves and their CSV form `s,x1..xn,y1..yn,z`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::CoordPoint;

/// Relative tolerance on the sample spacing.
pub const SPACING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve {
    pub n: usize,
    pub s: Vec<f64>,
    pub points: Vec<CoordPoint>,
}

impl SampledCurve {
    pub fn new(n: usize, s: Vec<f64>, points: Vec<CoordPoint>) -> Result<Self> {
        if s.len() != points.len() {
            return Err(Error::Parse(format!(
                "{} parameter values but {} points",
                s.len(),
                points.len()
            )));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != n || p.y.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
        Ok(SampledCurve { n, s, points })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Uniform spacing `h`, validated to [`SPACING_TOL`] relative.
    pub fn spacing(&self) -> Result<f64> {
        if self.s.len() < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                have: self.s.len(),
            });
        }
        let h = (self.s[self.s.len() - 1] - self.s[0]) / (self.s.len() - 1) as f64;
        if !(h > 0.0) {
            return Err(Error::NonUniformSpacing {
                index: 1,
                deviation: f64::INFINITY,
            });
        }
        for (k, w) in self.s.windows(2).enumerate() {
            let dev = ((w[1] - w[0]) - h).abs() / h;
            if dev > SPACING_TOL {
                return Err(Error::NonUniformSpacing {
                    index: k + 1,
                    deviation: dev,
                });
            }
        }
        Ok(h)
    }

    pub fn header(n: usize) -> Vec<String> {
        let mut h = vec!["s".to_string()];
        h.extend((1..=n).map(|i| format!("x{i}")));
        h.extend((1..=n).map(|i| format!("y{i}")));
        h.push("z".to_string());
        h
    }

    /// Writes the CSV form with 17 significant digits per value.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::header(self.n))?;
        for (s, p) in self.s.iter().zip(&self.points) {
            let mut row = Vec::with_capacity(2 * self.n + 2);
            row.push(fmt17(*s));
            row.extend(p.x.iter().map(|v| fmt17(*v)));
            row.extend(p.y.iter().map(|v| fmt17(*v)));
            row.push(fmt17(p.z));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a CSV written by [`SampledCurve::write_csv`]; `n` comes from the header.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let headers: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if headers.len() < 4 || headers.len() % 2 != 0 {
            return Err(Error::Parse(format!("bad header with {} columns", headers.len())));
        }
        let n = (headers.len() - 2) / 2;
        if headers != Self::header(n) {
            return Err(Error::Parse(format!(
                "expected header {:?}, found {:?}",
                Self::header(n).join(","),
                headers.join(",")
            )));
        }
        let mut s = Vec::new();
        let mut points = Vec::new();
        for (line, rec) in r.records().enumerate() {
            let rec = rec?;
            let vals = rec
                .iter()
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("row {}: {e}", line + 1)))?;
            if vals.len() != 2 * n + 2 {
                return Err(Error::Parse(format!("row {}: expected {} fields", line + 1, 2 * n + 2)));
            }
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("csv row"));
            }
            s.push(vals[0]);
            points.push(CoordPoint {
                x: vals[1..=n].to_vec(),
                y: vals[n + 1..=2 * n].to_vec(),
                z: vals[2 * n + 1],
            });
        }
        SampledCurve::new(n, s, points)
    }
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(vals: &[(f64, f64, f64)]) -> SampledCurve {
        let s: Vec<f64> = (0..vals.len()).map(|k| 0.25 * k as f64).collect();
        let points = vals
            .iter()
            .map(|&(x, y, z)| CoordPoint {
                x: vec![x],
                y: vec![y],
                z,
            })
            .collect();
        SampledCurve::new(1, s, points).unwrap()
    }

    #[test]
    fn header_layout() {
        assert_eq!(SampledCurve::header(2).join(","), "s,x1,x2,y1,y2,z");
    }

    #[test]
    fn rejects_wrong_header() {
        let data = "s,y1,x1,z\n0,0,0,0\n";
        assert!(matches!(SampledCurve::read_csv(data.as_bytes()), Err(Error::Parse(_))));
    }

    #[test]
    fn spacing_checks() {
        let mut c = curve(&[(0.0, 0.0, 0.0); 5]);
        assert_eq!(c.spacing().unwrap(), 0.25);
        c.s[2] += 1e-6;
        assert!(matches!(c.spacing(), Err(Error::NonUniformSpacing { index: 2, .. })));
    }

    proptest! {
        #[test]
        fn csv_round_trip_is_exact(vals in proptest::collection::vec((-1e6f64..1e6, -1e3f64..1e3, -1e9f64..1e9), 1..20)) {
            let c = curve(&vals);
            let mut buf = Vec::new();
            c.write_csv(&mut buf).unwrap();
            let back = SampledCurve::read_csv(buf.as_slice()).unwrap();
            prop_assert_eq!(back, c);
        }
    }
}
