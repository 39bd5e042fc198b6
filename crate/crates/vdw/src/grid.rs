use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// `start:stop:count[:log]`, or a single number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridError(pub String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad grid: {}", self.0)
    }
}

impl std::error::Error for GridError {}

impl GridSpec {
    pub fn point(x: f64) -> Self {
        GridSpec { start: x, stop: x, count: 1, scale: Scale::Linear }
    }

    pub fn linear(start: f64, stop: f64, count: usize) -> Self {
        GridSpec { start, stop, count, scale: Scale::Linear }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let n = (self.count - 1) as f64;
        match self.scale {
            Scale::Linear => (0..self.count).map(|k| self.start + (self.stop - self.start) * k as f64 / n).collect(),
            Scale::Log => {
                let (a, b) = (self.start.ln(), self.stop.ln());
                (0..self.count).map(|k| (a + (b - a) * k as f64 / n).exp()).collect()
            }
        }
    }
}

impl FromStr for GridSpec {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| GridError(format!("'{t}' is not a number")));
        let g = match parts.as_slice() {
            [x] => GridSpec::point(num(x)?),
            [a, b, n] | [a, b, n, _] => {
                let count = n.trim().parse::<usize>().map_err(|_| GridError(format!("'{n}' is not a count")))?;
                let scale = match parts.get(3).map(|t| t.trim()) {
                    None | Some("lin") | Some("linear") => Scale::Linear,
                    Some("log") => Scale::Log,
                    Some(other) => return Err(GridError(format!("unknown scale '{other}'"))),
                };
                GridSpec { start: num(a)?, stop: num(b)?, count, scale }
            }
            _ => return Err(GridError(format!("expected start:stop:count[:log], got '{s}'"))),
        };
        if g.count < 1 {
            return Err(GridError("count must be at least 1".into()));
        }
        if !g.start.is_finite() || !g.stop.is_finite() {
            return Err(GridError("endpoints must be finite".into()));
        }
        if g.scale == Scale::Log && !(g.start > 0.0 && g.stop > 0.0) {
            return Err(GridError("log grids need positive endpoints".into()));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        let g: GridSpec = "0.3:0.7:5".parse().unwrap();
        assert_eq!(g.values().len(), 5);
        assert!((g.values()[4] - 0.7).abs() < 1e-15);
        let l: GridSpec = "1:100:3:log".parse().unwrap();
        assert!((l.values()[1] - 10.0).abs() < 1e-12);
        assert_eq!("2".parse::<GridSpec>().unwrap().values(), vec![2.0]);
        assert!("1:2:0".parse::<GridSpec>().is_err());
        assert!("0:2:3:log".parse::<GridSpec>().is_err());
        assert!("a:b".parse::<GridSpec>().is_err());
    }
}
