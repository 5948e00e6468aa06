use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Lin,
    Log,
}

/// `start:stop:count:log|lin`, or a bare number for a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridError(String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for GridError {}

fn number(field: &str, text: &str) -> Result<f64, GridError> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| GridError(format!("{field} `{text}` is not a number")))?;
    if !v.is_finite() {
        return Err(GridError(format!("{field} must be finite")));
    }
    Ok(v)
}

impl FromStr for GridSpec {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, GridError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() == 1 {
            let v = number("value", parts[0])?;
            return Ok(GridSpec {
                start: v,
                stop: v,
                count: 1,
                spacing: Spacing::Lin,
            });
        }
        if parts.len() != 4 {
            return Err(GridError(format!("expected start:stop:count:log|lin, got `{s}`")));
        }
        let start = number("start", parts[0])?;
        let stop = number("stop", parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| GridError(format!("count `{}` is not a whole number", parts[2])))?;
        let spacing = match parts[3].trim() {
            "log" => Spacing::Log,
            "lin" => Spacing::Lin,
            other => return Err(GridError(format!("spacing `{other}` must be log or lin"))),
        };
        if count < 2 {
            return Err(GridError(format!("count must be at least 2, got {count}")));
        }
        if !(start < stop) {
            return Err(GridError(format!("start {start} must be below stop {stop}")));
        }
        if spacing == Spacing::Log && start <= 0.0 {
            return Err(GridError(format!("log grid needs start > 0, got {start}")));
        }
        Ok(GridSpec {
            start,
            stop,
            count,
            spacing,
        })
    }
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    return self.stop;
                }
                let t = i as f64 / n;
                match self.spacing {
                    Spacing::Lin => self.start + (self.stop - self.start) * t,
                    Spacing::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_log_and_linear_grids() {
        let g: GridSpec = "1e-3:1e-1:3:log".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 3);
        assert!((p[1] - 1e-2).abs() < 1e-15);
        assert_eq!(p[2], 1e-1);
        let g: GridSpec = "100:300:5:lin".parse().unwrap();
        assert_eq!(g.points(), vec![100.0, 150.0, 200.0, 250.0, 300.0]);
    }

    #[test]
    fn single_value_is_one_point() {
        let g: GridSpec = "200".parse().unwrap();
        assert_eq!(g.points(), vec![200.0]);
    }

    #[test]
    fn rejects_malformed_grids() {
        for bad in ["1:2:1:lin", "2:1:4:lin", "0:1:4:log", "1:2:3", "1:2:x:lin", "1:2:3:cubic", "nan"] {
            assert!(bad.parse::<GridSpec>().is_err(), "{bad}");
        }
    }
}
