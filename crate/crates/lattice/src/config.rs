//! Unordered particle configurations and their ranking.
//!
//! A configuration is a sorted tuple of site indices. With repeats allowed,
//! (s₀ ≤ s₁ ≤ s₂) is mapped to the strictly increasing (s₀, s₁+1, s₂+2) so
//! both cases share the combinatorial number system.

pub(crate) const MAX_PARTICLES: usize = 3;

pub(crate) type Config = [u32; MAX_PARTICLES];

fn binom(t: u64, k: usize) -> u64 {
    match k {
        1 => t,
        2 => t * t.saturating_sub(1) / 2,
        3 => t * t.saturating_sub(1) * t.saturating_sub(2) / 6,
        _ => unreachable!(),
    }
}

/// Number of configurations of `particles` particles on `sites` sites.
pub fn count_configs(sites: u64, particles: usize, repeats: bool) -> u64 {
    let universe = if repeats {
        sites + particles as u64 - 1
    } else {
        sites
    };
    binom(universe, particles)
}

#[derive(Debug, Clone)]
pub(crate) struct ConfigSpace {
    pub particles: usize,
    pub repeats: bool,
    pub configs: Vec<Config>,
}

impl ConfigSpace {
    pub fn enumerate(sites: u32, particles: usize, repeats: bool) -> Self {
        let shift = |i: usize| if repeats { i as u32 } else { 0 };
        let universe = if repeats {
            sites + particles as u32 - 1
        } else {
            sites
        };
        let mut configs =
            Vec::with_capacity(count_configs(sites as u64, particles, repeats) as usize);
        match particles {
            2 => {
                for t1 in 0..universe {
                    for t0 in 0..t1 {
                        configs.push([t0, t1 - shift(1), 0]);
                    }
                }
            }
            3 => {
                for t2 in 0..universe {
                    for t1 in 0..t2 {
                        for t0 in 0..t1 {
                            configs.push([t0, t1 - shift(1), t2 - shift(2)]);
                        }
                    }
                }
            }
            _ => unreachable!("particle count checked by the caller"),
        }
        ConfigSpace {
            particles,
            repeats,
            configs,
        }
    }

    /// Rank of a sorted configuration; inverse of the enumeration order.
    pub fn rank(&self, c: &Config) -> usize {
        let mut r = 0u64;
        for (i, &s) in c[..self.particles].iter().enumerate() {
            let t = s as u64 + if self.repeats { i as u64 } else { 0 };
            r += binom(t, i + 1);
        }
        r as usize
    }

    pub fn has_repeat(&self, c: &Config) -> bool {
        c[..self.particles].windows(2).any(|w| w[0] == w[1])
    }

    /// Number of ordered tuples in the orbit of `c`.
    pub fn orbit_size(&self, c: &Config) -> f64 {
        match self.particles {
            2 => {
                if c[0] == c[1] {
                    1.0
                } else {
                    2.0
                }
            }
            _ => {
                let eq01 = c[0] == c[1];
                let eq12 = c[1] == c[2];
                match (eq01, eq12) {
                    (true, true) => 1.0,
                    (false, false) => 6.0,
                    _ => 3.0,
                }
            }
        }
    }

    /// Number of coincident particle pairs in `c`.
    pub fn coincident_pairs(&self, c: &Config) -> u32 {
        let p = self.particles;
        let mut k = 0;
        for i in 0..p {
            for j in i + 1..p {
                if c[i] == c[j] {
                    k += 1;
                }
            }
        }
        k
    }
}
