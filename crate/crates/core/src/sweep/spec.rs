use std::fmt;
use std::str::FromStr;

use crate::channel::db_to_linear;
use crate::error::{Error, Result};
use crate::schemes::Scheme;

/// Inclusive dB grid `start, start + step, ..., <= stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbRange {
    pub start_db: f64,
    pub stop_db: f64,
    pub step_db: f64,
}

impl DbRange {
    pub fn new(start_db: f64, stop_db: f64, step_db: f64) -> Result<Self> {
        let range = Self {
            start_db,
            stop_db,
            step_db,
        };
        range.validate()?;
        Ok(range)
    }

    fn validate(&self) -> Result<()> {
        if !(self.step_db > 0.0 && self.step_db.is_finite()) {
            return Err(Error::Sweep(format!("step must be > 0 dB, got {}", self.step_db)));
        }
        if !(self.start_db.is_finite() && self.stop_db.is_finite() && self.start_db <= self.stop_db) {
            return Err(Error::Sweep(format!(
                "need finite start <= stop, got {}..{}",
                self.start_db, self.stop_db
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        // tolerate float drift on the last point
        let count = ((self.stop_db - self.start_db) / self.step_db + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start_db + i as f64 * self.step_db).collect()
    }
}

impl FromStr for DbRange {
    type Err = Error;

    /// `start:stop:step` in dB, or a single value.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Sweep(format!("bad dB value `{p}` in `{s}`")))
        };
        match parts[..] {
            [single] => {
                let v = num(single)?;
                Self::new(v, v, 1.0)
            }
            [start, stop, step] => Self::new(num(start)?, num(stop)?, num(step)?),
            _ => Err(Error::Sweep(format!("expected start:stop:step, got `{s}`"))),
        }
    }
}

/// How the stronger relay link follows `gamma1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gamma2Rule {
    Equal,
    /// `gamma2 = gamma1 + gamma1^2`, where JDF meets the DNF bound.
    Quadratic,
    FixedDb(f64),
    Ratio(f64),
}

impl Gamma2Rule {
    pub fn apply(&self, gamma1: f64) -> f64 {
        match *self {
            Gamma2Rule::Equal => gamma1,
            Gamma2Rule::Quadratic => gamma1 + gamma1 * gamma1,
            Gamma2Rule::FixedDb(db) => db_to_linear(db),
            Gamma2Rule::Ratio(k) => k * gamma1,
        }
    }
}

impl fmt::Display for Gamma2Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma2Rule::Equal => f.write_str("equal"),
            Gamma2Rule::Quadratic => f.write_str("quad"),
            Gamma2Rule::FixedDb(db) => write!(f, "db:{db}"),
            Gamma2Rule::Ratio(k) => write!(f, "ratio:{k}"),
        }
    }
}

fn tagged_value(s: &str, tag: &str) -> Result<Option<f64>> {
    match s.strip_prefix(tag).and_then(|r| r.strip_prefix(':')) {
        Some(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Sweep(format!("bad number in `{s}`"))),
        None => Ok(None),
    }
}

impl FromStr for Gamma2Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "equal" => return Ok(Gamma2Rule::Equal),
            "quad" | "quadratic" => return Ok(Gamma2Rule::Quadratic),
            _ => {}
        }
        if let Some(db) = tagged_value(s, "db")? {
            return Ok(Gamma2Rule::FixedDb(db));
        }
        if let Some(k) = tagged_value(s, "ratio")? {
            if !(k > 0.0) {
                return Err(Error::Sweep(format!("ratio must be > 0, got {k}")));
            }
            return Ok(Gamma2Rule::Ratio(k));
        }
        Err(Error::Sweep(format!(
            "unknown gamma2 rule `{s}` (expected equal, quad, db:<v> or ratio:<k>)"
        )))
    }
}

/// Direct-link SNR as a function of `gamma1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gamma0Rule {
    Zero,
    /// `gamma0 = f * gamma1`.
    Fraction(f64),
    FixedDb(f64),
}

impl Gamma0Rule {
    pub fn apply(&self, gamma1: f64) -> f64 {
        match *self {
            Gamma0Rule::Zero => 0.0,
            Gamma0Rule::Fraction(f) => f * gamma1,
            Gamma0Rule::FixedDb(db) => db_to_linear(db),
        }
    }
}

impl fmt::Display for Gamma0Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma0Rule::Zero => f.write_str("zero"),
            Gamma0Rule::Fraction(x) => write!(f, "frac:{x}"),
            Gamma0Rule::FixedDb(db) => write!(f, "db:{db}"),
        }
    }
}

impl FromStr for Gamma0Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" {
            return Ok(Gamma0Rule::Zero);
        }
        if let Some(f) = tagged_value(s, "frac")? {
            if !(0.0..1.0).contains(&f) {
                return Err(Error::Sweep(format!("fraction must be within [0, 1), got {f}")));
            }
            return Ok(Gamma0Rule::Fraction(f));
        }
        if let Some(db) = tagged_value(s, "db")? {
            return Ok(Gamma0Rule::FixedDb(db));
        }
        Err(Error::Sweep(format!(
            "unknown gamma0 rule `{s}` (expected zero, frac:<f> or db:<v>)"
        )))
    }
}

/// Parses a comma-separated scheme list such as `df,af,jdf,dnf`.
pub fn parse_schemes(s: &str) -> Result<Vec<Scheme>> {
    let mut out: Vec<Scheme> = Vec::new();
    for item in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let scheme: Scheme = item.parse()?;
        if !out.contains(&scheme) {
            out.push(scheme);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub gamma1: DbRange,
    pub gamma2: Gamma2Rule,
    /// One DF curve per rule; the other schemes ignore the direct link.
    pub gamma0: Vec<Gamma0Rule>,
    pub schemes: Vec<Scheme>,
    /// Cross-check DF and JDF against the brute-force oracles.
    pub verify: bool,
    pub grid_points: usize,
    pub noise_power: f64,
}

impl SweepSpec {
    pub fn new(gamma1: DbRange, gamma2: Gamma2Rule) -> Self {
        Self {
            gamma1,
            gamma2,
            gamma0: vec![Gamma0Rule::Zero, Gamma0Rule::Fraction(0.1)],
            schemes: Scheme::ALL.to_vec(),
            verify: false,
            grid_points: 1001,
            noise_power: 1.0,
        }
    }

    /// Equal relay links, 0 to 30 dB in 1 dB steps, all schemes.
    pub fn equal_links() -> Self {
        Self::new(DbRange::new(0.0, 30.0, 1.0).expect("valid range"), Gamma2Rule::Equal)
    }

    /// `gamma2 = gamma1 + gamma1^2`, 0 to 30 dB in 1 dB steps, all schemes.
    pub fn quadratic_links() -> Self {
        Self::new(
            DbRange::new(0.0, 30.0, 1.0).expect("valid range"),
            Gamma2Rule::Quadratic,
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.gamma1.validate()?;
        if self.schemes.is_empty() {
            return Err(Error::Sweep("no scheme selected".into()));
        }
        if self.gamma0.is_empty() {
            return Err(Error::Sweep("no gamma0 rule given".into()));
        }
        if self.grid_points < 3 {
            return Err(Error::Sweep(format!(
                "grid points must be >= 3, got {}",
                self.grid_points
            )));
        }
        Ok(())
    }
}
