use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `start:stop:points:log|lin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub log: bool,
}

impl GridSpec {
    pub fn log(start: f64, stop: f64, points: usize) -> Self {
        Self { start, stop, points, log: true }
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        let bad = |m: &str| Err(Error::InvalidGrid(format!("{self}: {m}")));
        if self.points == 0 {
            return bad("needs at least one point");
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return bad("bounds must be finite");
        }
        if self.points == 1 {
            return if self.start == self.stop { Ok(vec![self.start]) } else { bad("one point needs start = stop") };
        }
        if !(self.start < self.stop) {
            return bad("start must be below stop");
        }
        if self.log && !(self.start > 0.0) {
            return bad("log grid needs a positive start");
        }
        let n = self.points - 1;
        let mut v: Vec<f64> = (0..=n)
            .map(|k| {
                let s = k as f64 / n as f64;
                if self.log {
                    self.start * (self.stop / self.start).powf(s)
                } else {
                    self.start + (self.stop - self.start) * s
                }
            })
            .collect();
        v[n] = self.stop;
        if v.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("points are not strictly increasing");
        }
        Ok(v)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.start, self.stop, self.points, if self.log { "log" } else { "lin" })
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidGrid(format!("expected start:stop:points:log|lin, got {s:?}"));
        if parts.len() != 4 {
            return Err(bad());
        }
        let start = parts[0].trim().parse().map_err(|_| bad())?;
        let stop = parts[1].trim().parse().map_err(|_| bad())?;
        let points = parts[2].trim().parse().map_err(|_| bad())?;
        let log = match parts[3].trim() {
            "log" => true,
            "lin" => false,
            _ => return Err(bad()),
        };
        let g = GridSpec { start, stop, points, log };
        g.values()?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_expand() {
        let g: GridSpec = "1:1000:4:log".parse().unwrap();
        let v = g.values().unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], 1.0);
        assert_eq!(v[3], 1000.0);
        assert!((v[1] - 10.0).abs() < 1e-12);
        let l: GridSpec = "0:1:3:lin".parse().unwrap();
        assert_eq!(l.values().unwrap(), vec![0.0, 0.5, 1.0]);
        assert!("0:1:3:log".parse::<GridSpec>().is_err());
        assert!("2:1:3:lin".parse::<GridSpec>().is_err());
        assert!("1:2:3".parse::<GridSpec>().is_err());
        assert!("1:2:0:lin".parse::<GridSpec>().is_err());
        assert_eq!("5:5:1:lin".parse::<GridSpec>().unwrap().values().unwrap(), vec![5.0]);
    }
}
