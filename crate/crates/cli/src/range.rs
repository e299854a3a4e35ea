use std::fmt;
use std::str::FromStr;

/// Largest number of values a range may expand to.
pub const MAX_RANGE_LEN: usize = 10_000_000;

/// `start:stop:step` with `step > 0`. Values are `start + i·step` for
/// `i < floor((stop - start)/step + 0.5) + 1`, so `stop` is included when
/// it lies within half a step of the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl RadiusRange {
    pub fn len(&self) -> usize {
        let n = ((self.stop - self.start) / self.step + 0.5).floor() + 1.0;
        if n < 1.0 {
            0
        } else {
            n as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeParseError(String);

impl fmt::Display for RangeParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for RangeParseError {}

impl FromStr for RadiusRange {
    type Err = RangeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(RangeParseError(format!("expected start:stop:step, got {s:?}")));
        };
        let num = |name: &str, v: &str| -> Result<f64, RangeParseError> {
            v.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| RangeParseError(format!("{name} {v:?} is not a finite number")))
        };
        let range = Self {
            start: num("start", start)?,
            stop: num("stop", stop)?,
            step: num("step", step)?,
        };
        if range.step <= 0.0 {
            return Err(RangeParseError(format!("step must be positive, got {}", range.step)));
        }
        if range.len() > MAX_RANGE_LEN {
            return Err(RangeParseError(format!(
                "range expands to more than {MAX_RANGE_LEN} values"
            )));
        }
        Ok(range)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_stop() {
        let r: RadiusRange = "0.1:1.7:0.1".parse().unwrap();
        assert_eq!(r.len(), 17);
        let v = r.values();
        assert_eq!(v[0], 0.1);
        assert_eq!(v[16], 0.1 + 16.0 * 0.1);
    }

    #[test]
    fn empty_and_invalid() {
        assert!("1:0:0.5".parse::<RadiusRange>().unwrap().is_empty());
        assert_eq!("2:3:1".parse::<RadiusRange>().unwrap().values(), vec![2.0, 3.0]);
        assert!("1:2".parse::<RadiusRange>().is_err());
        assert!("1:2:0".parse::<RadiusRange>().is_err());
        assert!("a:2:1".parse::<RadiusRange>().is_err());
        assert!("0:1e9:1e-9".parse::<RadiusRange>().is_err());
    }
}
