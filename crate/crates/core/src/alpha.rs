//! The statistics parameter.
//!
//! The spectrum is 2-periodic in α and symmetric under α ↦ −α, so every
//! input is reduced to the canonical interval [0, 1]. Exact fractions keep
//! a reduced rational carrier; floats never acquire one.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Reduced fraction `num/den` with `den > 0` and `gcd(num, den) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Canonical statistics parameter, `0 <= value <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Alpha {
    value: f64,
    rational: Option<Fraction>,
}

impl Alpha {
    pub const BOSON: Alpha = Alpha {
        value: 0.0,
        rational: Some(Fraction { num: 0, den: 1 }),
    };
    pub const FERMION: Alpha = Alpha {
        value: 1.0,
        rational: Some(Fraction { num: 1, den: 1 }),
    };

    /// Canonicalizes a float. Same as [`canonicalize_alpha`].
    pub fn new(raw: f64) -> Result<Self> {
        canonicalize_alpha(raw)
    }

    /// Canonicalizes the exact fraction `p/q` and keeps it as a rational carrier.
    pub fn from_fraction(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(invalid("zero denominator"));
        }
        // Work with a positive denominator, then reduce p modulo 2q into [0, 2q).
        let (p, q) = if q < 0 {
            (-(p as i128), -(q as i128))
        } else {
            (p as i128, q as i128)
        };
        let two_q = 2 * q;
        let mut r = p.rem_euclid(two_q);
        if r > q {
            r = two_q - r;
        }
        let (r, q) = (r as u64, q as u64);
        let g = gcd(r, q);
        let frac = Fraction {
            num: r / g,
            den: q / g,
        };
        Ok(Alpha {
            value: frac.to_f64(),
            rational: Some(frac),
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn rational(&self) -> Option<Fraction> {
        self.rational
    }

    pub fn is_boson(&self) -> bool {
        self.value == 0.0
    }

    pub fn is_fermion(&self) -> bool {
        self.value == 1.0
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{}", self.value),
        }
    }
}

/// Accepts `"p/q"` (exact, keeps the rational carrier) or a float literal.
impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p
                .trim()
                .parse()
                .map_err(|_| invalid(format!("bad numerator in '{s}'")))?;
            let q: i64 = q
                .trim()
                .parse()
                .map_err(|_| invalid(format!("bad denominator in '{s}'")))?;
            return Alpha::from_fraction(p, q);
        }
        let raw: f64 = s
            .parse()
            .map_err(|_| invalid(format!("cannot parse alpha '{s}'")))?;
        canonicalize_alpha(raw)
    }
}

/// Reduces `raw` modulo 2 and reflects into [0, 1].
pub fn canonicalize_alpha(raw: f64) -> Result<Alpha> {
    if !raw.is_finite() {
        return Err(invalid(format!("alpha must be finite, got {raw}")));
    }
    let mut r = raw.rem_euclid(2.0);
    if r > 1.0 {
        r = 2.0 - r;
    }
    // rem_euclid may round up to exactly 2.0 for tiny negative inputs
    let value = r.clamp(0.0, 1.0);
    Ok(Alpha {
        value,
        rational: None,
    })
}
