//! Statistical link phases.
//!
//! The flux of each pair sits in two half tubes at ±(½, ½) in lattice units
//! of the relative coordinate, so no tube lies on a site or an edge and the
//! phase is defined even when two particles share a site.

use std::f64::consts::PI;

use serde::Serialize;

pub(crate) const DIRECTIONS: [[i32; 2]; 4] = [[1, 0], [-1, 0], [0, 1], [0, -1]];

fn wrap(d: f64) -> f64 {
    if d > PI {
        d - 2.0 * PI
    } else if d < -PI {
        d + 2.0 * PI
    } else {
        d
    }
}

fn arg(x: f64, y: f64) -> f64 {
    y.atan2(x)
}

/// Change of the pair angle when the relative coordinate `rel` (lattice
/// units) moves by the unit step `step`. Odd under reversing the hop.
pub fn pair_angle_change(rel: [i32; 2], step: [i32; 2]) -> f64 {
    let (x0, y0) = (rel[0] as f64, rel[1] as f64);
    let (x1, y1) = (x0 + step[0] as f64, y0 + step[1] as f64);
    let mut total = 0.0;
    for s in [0.5, -0.5] {
        total += wrap(arg(x1 - s, y1 - s) - arg(x0 - s, y0 - s));
    }
    0.5 * total
}

/// One hop of one particle between two basis configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkPhase {
    pub from_config: usize,
    pub to_config: usize,
    /// α·Σ_{k≠j} Δarg(z_j − z_k), radians.
    pub phase: f64,
}

/// Lookup table of `pair_angle_change` for all relative offsets on an
/// n×n grid.
#[derive(Debug, Clone)]
pub(crate) struct PhaseTable {
    span: i32,
    values: Vec<f64>,
}

impl PhaseTable {
    pub fn new(n: usize) -> Self {
        let span = n as i32 - 1;
        let width = 2 * span + 1;
        let mut values = Vec::with_capacity((width * width * 4) as usize);
        for rx in -span..=span {
            for ry in -span..=span {
                for d in DIRECTIONS {
                    values.push(pair_angle_change([rx, ry], d));
                }
            }
        }
        PhaseTable { span, values }
    }

    pub fn get(&self, rel: [i32; 2], dir: usize) -> f64 {
        let width = 2 * self.span + 1;
        let idx = ((rel[0] + self.span) * width + (rel[1] + self.span)) as usize * 4 + dir;
        self.values[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reverse_hop_is_negated_exactly() {
        for rx in -6..=6 {
            for ry in -6..=6 {
                for d in DIRECTIONS {
                    let fwd = pair_angle_change([rx, ry], d);
                    let back = pair_angle_change([rx + d[0], ry + d[1]], [-d[0], -d[1]]);
                    assert_eq!(fwd, -back);
                    assert!(fwd.abs() < PI);
                }
            }
        }
    }

    #[test]
    fn loop_around_origin_winds_once() {
        // counterclockwise around the 2×2 block enclosing both tubes
        let path = [
            [1, 0],
            [1, 0],
            [0, 1],
            [0, 1],
            [-1, 0],
            [-1, 0],
            [0, -1],
            [0, -1],
        ];
        let mut r = [-1, -1];
        let mut total = 0.0;
        for d in path {
            total += pair_angle_change(r, d);
            r = [r[0] + d[0], r[1] + d[1]];
        }
        assert!((total - 2.0 * PI).abs() < 1e-12);
        // a plaquette enclosing exactly one half tube
        let mut r = [0, 0];
        let mut total = 0.0;
        for d in [[1, 0], [0, 1], [-1, 0], [0, -1]] {
            total += pair_angle_change(r, d);
            r = [r[0] + d[0], r[1] + d[1]];
        }
        assert!((total - PI).abs() < 1e-12);
    }

    #[test]
    fn far_hop_is_small() {
        let dist = 40.0f64;
        let dphi = pair_angle_change([0, 40], [1, 0]).abs();
        assert!(dphi < 1.0 / dist * 1.01);
    }
}
