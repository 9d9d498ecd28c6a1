//! Seeded Monte Carlo and exact fractions of induced subcomplexes.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag_complex::{mask_connected, FlagComplex};
use crate::homology::{is_k_acyclic, top_homology_nontrivial};
use crate::vertex_set::VertexSet;

use super::search::EXHAUSTIVE_CAP;

/// Samples drawn from one PRNG stream.
pub const SAMPLE_BLOCK: u64 = 4096;

/// ChaCha8 seeded with `seed`, on stream `block`. Sample `i` of a run is drawn
/// from stream `i / SAMPLE_BLOCK`, so results do not depend on the worker count.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Uniform random subset of `0..width`.
pub fn random_state(rng: &mut impl RngCore, width: usize) -> VertexSet {
    let words = (0..width.div_ceil(64)).map(|_| rng.next_u64()).collect();
    VertexSet::from_words(width, words)
}

/// Hoeffding half-width at 99% confidence: `sqrt(ln(2/0.01) / (2 n))`.
pub fn hoeffding_half_width(samples: u64) -> f64 {
    ((2.0f64 / 0.01).ln() / (2.0 * samples as f64)).sqrt()
}

/// Subcomplex predicates whose frequencies are measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    /// Empty or disconnected.
    NotConnected,
    /// Not `k`-acyclic.
    NotAcyclic(isize),
    /// `H̃_d = 0`.
    TrivialTopHomology(usize),
    /// Not a `d`-dimensional chamber complex.
    NotChamberComplex(usize),
}

impl Predicate {
    pub fn holds(&self, l: &FlagComplex, s: &VertexSet) -> bool {
        match *self {
            Predicate::NotConnected => !l.induces_connected(s).unwrap_or(false),
            Predicate::NotAcyclic(k) => {
                if k >= 0 && !l.induces_connected(s).unwrap_or(false) {
                    return true;
                }
                !is_k_acyclic(&l.induced(s).expect("width checked"), k)
            }
            Predicate::TrivialTopHomology(d) => {
                !top_homology_nontrivial(&l.induced(s).expect("width checked"), d)
            }
            Predicate::NotChamberComplex(d) => {
                !l.induced(s).expect("width checked").is_chamber_complex(d)
            }
        }
    }

    fn holds_mask(&self, l: &FlagComplex, adj: &[u64], mask: u64) -> bool {
        match self {
            Predicate::NotConnected => !mask_connected(adj, mask),
            Predicate::NotAcyclic(0) => !mask_connected(adj, mask),
            _ => self.holds(l, &VertexSet::from_mask(l.vertex_count(), mask)),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::NotConnected => write!(f, "not-connected"),
            Predicate::NotAcyclic(k) => write!(f, "not-acyclic:{k}"),
            Predicate::TrivialTopHomology(d) => write!(f, "trivial-top-homology:{d}"),
            Predicate::NotChamberComplex(d) => write!(f, "not-chamber-complex:{d}"),
        }
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let need = |a: Option<&str>| -> std::result::Result<i64, String> {
            a.ok_or_else(|| format!("predicate {name} needs a degree, e.g. {name}:1"))?
                .parse::<i64>()
                .map_err(|e| format!("bad degree in {s:?}: {e}"))
        };
        let nonneg = |d: i64| -> std::result::Result<usize, String> {
            usize::try_from(d).map_err(|_| format!("degree must be >= 0 in {s:?}"))
        };
        match name {
            "not-connected" => Ok(Predicate::NotConnected),
            "not-acyclic" => {
                let k = need(arg)?;
                if k < -1 {
                    return Err(format!("degree must be >= -1 in {s:?}"));
                }
                Ok(Predicate::NotAcyclic(k as isize))
            }
            "trivial-top-homology" => Ok(Predicate::TrivialTopHomology(nonneg(need(arg)?)?)),
            "not-chamber-complex" => Ok(Predicate::NotChamberComplex(nonneg(need(arg)?)?)),
            _ => Err(format!("unknown predicate {name:?}")),
        }
    }
}

/// A proportion with its 99% Hoeffding interval (clamped to `[0, 1]`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub hits: u64,
    pub samples: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Estimate {
    fn from_hits(hits: u64, samples: u64) -> Self {
        let p_hat = hits as f64 / samples as f64;
        let h = hoeffding_half_width(samples);
        Estimate {
            hits,
            samples,
            p_hat,
            ci_low: (p_hat - h).max(0.0),
            ci_high: (p_hat + h).min(1.0),
        }
    }

    fn exact(hits: u64, total: u64) -> Self {
        let p = hits as f64 / total as f64;
        Estimate {
            hits,
            samples: total,
            p_hat: p,
            ci_low: p,
            ci_high: p,
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// Fraction of uniformly random states whose induced subcomplex satisfies `predicate`.
pub fn estimate_fraction(l: &FlagComplex, predicate: Predicate, samples: u64, seed: u64) -> Estimate {
    if samples == 0 {
        return Estimate {
            hits: 0,
            samples: 0,
            p_hat: f64::NAN,
            ci_low: 0.0,
            ci_high: 1.0,
        };
    }
    let n = l.vertex_count();
    let adj = l.adjacency_masks();
    let blocks = samples.div_ceil(SAMPLE_BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let count = SAMPLE_BLOCK.min(samples - b * SAMPLE_BLOCK);
            let mut hits = 0u64;
            for _ in 0..count {
                let s = random_state(&mut rng, n);
                let hit = match &adj {
                    Some(adj) => predicate.holds_mask(l, adj, s.to_mask()),
                    None => predicate.holds(l, &s),
                };
                hits += hit as u64;
            }
            hits
        })
        .sum();
    Estimate::from_hits(hits, samples)
}

/// Exact fraction over all `2^|V|` states; `|V| <= EXHAUSTIVE_CAP`.
pub fn exact_fraction(l: &FlagComplex, predicate: Predicate) -> Result<Estimate> {
    let n = l.vertex_count();
    if n > EXHAUSTIVE_CAP {
        return Err(Error::BudgetExceeded {
            needed: n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let adj = l.adjacency_masks().expect("below the exhaustive cap");
    let total = 1u64 << n;
    let hits = (0..total)
        .into_par_iter()
        .filter(|&mask| predicate.holds_mask(l, &adj, mask))
        .count() as u64;
    Ok(Estimate::exact(hits, total))
}
