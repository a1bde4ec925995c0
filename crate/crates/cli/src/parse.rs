//! Parsers for the list and range flags.

use anyon_core::Alpha;

use crate::error::{CliError, Result};

/// Largest number of points a single `--alpha-grid` or `--n` range may expand to.
pub const MAX_SWEEP_POINTS: usize = 1_000_000;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_alpha(s: &str) -> Result<Alpha> {
    s.parse::<Alpha>()
        .map_err(|e| usage(format!("--alpha '{s}': {e}")))
}

/// `a:b:step`, inclusive of `b` up to rounding.
pub fn parse_alpha_grid(s: &str) -> Result<Vec<Alpha>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!(
            "--alpha-grid '{s}' is not of the form a:b:step"
        )));
    }
    let mut nums = [0.0; 3];
    for (slot, p) in nums.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("--alpha-grid '{s}': cannot parse '{p}'")))?;
        if !slot.is_finite() {
            return Err(usage(format!("--alpha-grid '{s}': non-finite entry")));
        }
    }
    let [a, b, step] = nums;
    if step <= 0.0 || b < a {
        return Err(usage(format!(
            "--alpha-grid '{s}' needs a <= b and step > 0"
        )));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    if count > MAX_SWEEP_POINTS {
        return Err(usage(format!("--alpha-grid '{s}' has {count} points")));
    }
    (0..count)
        .map(|k| {
            // Strip the accumulated binary noise so 0.1·3 prints as 0.3.
            let x = ((a + k as f64 * step) * 1e12).round() / 1e12;
            Alpha::new(x).map_err(|e| usage(e.to_string()))
        })
        .collect()
}

/// A single count, an inclusive range `a..b` or `a:b`, or a comma list.
pub fn parse_n(s: &str) -> Result<Vec<u64>> {
    let int = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| usage(format!("--n '{s}': cannot parse '{t}'")))
    };
    let mut out = Vec::new();
    for item in s.split(',') {
        let range = item.split_once("..").or_else(|| item.split_once(':'));
        match range {
            Some((lo, hi)) => {
                let (lo, hi) = (int(lo)?, int(hi.trim_start_matches('='))?);
                if hi < lo {
                    return Err(usage(format!("--n '{s}': empty range")));
                }
                if (hi - lo) as usize >= MAX_SWEEP_POINTS {
                    return Err(usage(format!("--n '{s}': range too long")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(int(item)?),
        }
    }
    if out.contains(&0) {
        return Err(usage("--n must be at least 1"));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn parse_grids(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("--grids '{s}': cannot parse '{t}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn n_forms() {
        assert_eq!(parse_n("5").unwrap(), vec![5]);
        assert_eq!(parse_n("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_n("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_n("3:5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_n("7,2,2..3").unwrap(), vec![2, 3, 7]);
        assert!(parse_n("0").is_err());
        assert!(parse_n("4..2").is_err());
        assert!(parse_n("x").is_err());
    }

    #[test]
    fn alpha_forms() {
        let a = parse_alpha("3/5").unwrap();
        assert_eq!(a.rational().unwrap().num(), 3);
        assert_eq!(parse_alpha("1.5").unwrap().value(), 0.5);
        assert!(parse_alpha("abc").is_err());
        let g = parse_alpha_grid("0:1:0.25").unwrap();
        let v: Vec<f64> = g.iter().map(|a| a.value()).collect();
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_alpha_grid("0:0.3:0.1").unwrap()[3].value(), 0.3);
        assert!(parse_alpha_grid("0:1").is_err());
        assert!(parse_alpha_grid("1:0:0.1").is_err());
        assert!(parse_alpha_grid("0:1:0").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grids("8,12,16,20").unwrap(), vec![8, 12, 16, 20]);
        assert!(parse_grids("8,,12").is_err());
    }

    proptest! {
        #[test]
        fn grid_point_count(a in 0u32..50, len in 0u32..50, step in 1u32..20) {
            let (a, b, st) = (a as f64 / 100.0, (a + len) as f64 / 100.0, step as f64 / 100.0);
            let g = parse_alpha_grid(&format!("{a}:{b}:{st}")).unwrap();
            prop_assert_eq!(g.len() as u32, len / step + 1);
            prop_assert!(g.iter().all(|x| x.value() <= 1.0));
        }
    }
}
