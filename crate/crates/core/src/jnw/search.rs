//! Coset searches, legality censuses and the pigeonhole criterion.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag_complex::FlagComplex;
use crate::vertex_set::VertexSet;

use super::certificate::FiberCertificate;
use super::estimate::{block_rng, estimate_fraction, exact_fraction, random_state, Estimate, Predicate, SAMPLE_BLOCK};
use super::{coset_members, Legality, MoveSystem, SideChecker};

/// Largest vertex count for exhaustive scans over all `2^|V|` states.
pub const EXHAUSTIVE_CAP: usize = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every coset, in Gray-code order of representatives.
    Exhaustive,
    /// `count` uniformly random cosets from a seeded stream.
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Counting {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

fn check_budget(n: usize) -> Result<()> {
    if n > EXHAUSTIVE_CAP {
        return Err(Error::BudgetExceeded {
            needed: n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    Ok(())
}

/// Bit-mask view of a move system on at most 64 vertices.
struct MaskCosets {
    free: Vec<usize>,
    basis: Vec<u64>,
}

impl MaskCosets {
    fn new(moves: &MoveSystem) -> Self {
        MaskCosets {
            free: moves.free_coordinates(),
            basis: moves.basis().iter().map(VertexSet::to_mask).collect(),
        }
    }

    fn representative(&self, i: u64) -> u64 {
        let gray = i ^ (i >> 1);
        let mut rep = 0u64;
        for (j, &v) in self.free.iter().enumerate() {
            rep |= (gray >> j & 1) << v;
        }
        rep
    }

    /// Walks the coset in member order; stops at the first failure.
    fn all(&self, rep: u64, mut ok: impl FnMut(u64) -> bool) -> bool {
        (0u64..1 << self.basis.len()).all(|i| {
            let mut s = rep;
            for (j, b) in self.basis.iter().enumerate() {
                if i >> j & 1 == 1 {
                    s ^= b;
                }
            }
            ok(s)
        })
    }
}

/// First coset of `span(moves)` whose members are all legal, with replayable evidence.
/// A sampled search returning `None` says nothing about existence.
pub fn coset_search(
    l: &FlagComplex,
    moves: &MoveSystem,
    legality: Legality,
    strategy: Strategy,
) -> Result<Option<FiberCertificate>> {
    let n = l.vertex_count();
    if moves.width() != n {
        return Err(Error::WidthMismatch {
            expected: n,
            found: moves.width(),
        });
    }
    let checker = SideChecker::new(l, legality);
    let rep = match strategy {
        Strategy::Exhaustive => {
            check_budget(n)?;
            let cosets = MaskCosets::new(moves);
            (0u64..1 << cosets.free.len())
                .into_par_iter()
                .map(|i| cosets.representative(i))
                .find_first(|&rep| cosets.all(rep, |s| checker.state_ok_mask(s)))
                .map(|rep| VertexSet::from_mask(n, rep))
        }
        Strategy::Sampled { count, seed } => {
            let blocks = count.div_ceil(SAMPLE_BLOCK);
            (0..blocks).into_par_iter().find_map_first(|b| {
                let mut rng = block_rng(seed, b);
                for _ in 0..SAMPLE_BLOCK.min(count - b * SAMPLE_BLOCK) {
                    let rep = moves.reduce(&random_state(&mut rng, n));
                    let members = coset_members(moves, &rep).ok()?;
                    if members.iter().all(|s| checker.state_ok(s)) {
                        return Some(rep);
                    }
                }
                None
            })
        }
    };
    rep.map(|rep| FiberCertificate::build(l, moves, &rep, legality)).transpose()
}

/// Per-state legality bitmap over all `2^|V|` states.
#[derive(Clone, Debug)]
pub struct Census {
    pub vertices: usize,
    pub legality: Legality,
    /// Bit `s` set when the side `L[s]` passes the side predicate.
    good: Vec<u64>,
    /// States whose induced subcomplex fails the side predicate.
    pub bad_count: u64,
    /// States with both sides good.
    pub legal_count: u64,
}

impl Census {
    fn total(&self) -> u64 {
        1 << self.vertices
    }

    fn full(&self) -> u64 {
        self.total() - 1
    }

    pub fn is_good(&self, s: u64) -> bool {
        self.good[(s / 64) as usize] >> (s % 64) & 1 == 1
    }

    pub fn is_legal(&self, s: u64) -> bool {
        self.is_good(s) && self.is_good(!s & self.full())
    }

    /// First coset (Gray-code order) all of whose members are legal.
    pub fn find_legal_coset(&self, moves: &MoveSystem) -> Option<VertexSet> {
        let cosets = MaskCosets::new(moves);
        (0u64..1 << cosets.free.len())
            .into_par_iter()
            .map(|i| cosets.representative(i))
            .find_first(|&rep| cosets.all(rep, |s| self.is_legal(s)))
            .map(|rep| VertexSet::from_mask(self.vertices, rep))
    }
}

/// Evaluates the side predicate of `legality` on every state.
pub fn census(l: &FlagComplex, legality: Legality) -> Result<Census> {
    let n = l.vertex_count();
    check_budget(n)?;
    let checker = SideChecker::new(l, legality);
    let total = 1u64 << n;
    let good: Vec<u64> = (0..total.div_ceil(64))
        .into_par_iter()
        .map(|w| {
            let mut word = 0u64;
            for b in 0..64.min(total - w * 64) {
                if checker.side_ok_mask(w * 64 + b) {
                    word |= 1 << b;
                }
            }
            word
        })
        .collect();
    let mut census = Census {
        vertices: n,
        legality,
        good,
        bad_count: 0,
        legal_count: 0,
    };
    let good_count: u64 = census.good.iter().map(|w| w.count_ones() as u64).sum();
    census.bad_count = total - good_count;
    census.legal_count = (0..total)
        .into_par_iter()
        .filter(|&s| census.is_legal(s))
        .count() as u64;
    Ok(census)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Exact count below the threshold: a legal system of moves exists.
    #[serde(rename = "CERTIFIED")]
    Certified,
    /// Exact count at or above the threshold: the criterion is silent.
    #[serde(rename = "NOT-IMPLIED")]
    NotImplied,
    /// Sampled counts; see the interval.
    #[serde(rename = "ESTIMATED")]
    Estimated,
}

/// Counts of bad induced subcomplexes against `2^(|V| - χ - 1)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PigeonholeReport {
    pub vertices: usize,
    pub chromatic_number: usize,
    /// `|V| - χ - 1`.
    pub threshold_exponent: i64,
    /// Fraction of states not `(m-1)`-acyclic (exact or sampled).
    pub bad: Estimate,
    /// Fraction with trivial `H̃_m`, for the sharp criterion.
    pub trivial_top: Option<Estimate>,
    pub verdict: Verdict,
}

impl PigeonholeReport {
    /// `2^(-χ-1)`, the threshold as a fraction of all states.
    pub fn threshold_fraction(&self) -> f64 {
        0.5f64.powi(self.chromatic_number as i32 + 1)
    }

    /// Exact `|F| (+ |T|)` when counted exhaustively.
    pub fn exact_count(&self) -> Option<u64> {
        (self.verdict != Verdict::Estimated)
            .then(|| self.bad.hits + self.trivial_top.map_or(0, |t| t.hits))
    }

    /// The threshold itself when it is a whole number.
    pub fn threshold(&self) -> Option<u64> {
        u32::try_from(self.threshold_exponent).ok().and_then(|e| 1u64.checked_shl(e))
    }
}

/// The pigeonhole criterion: if fewer than `2^(|V| - χ - 1)` states are bad
/// then the colored system has a legal coset. With `legality.sharply`, states
/// with trivial `H̃_m` are added to the count.
pub fn pigeonhole_check(l: &FlagComplex, legality: Legality, counting: Counting) -> Result<PigeonholeReport> {
    let n = l.vertex_count();
    let (chi, _) = l.chromatic_number();
    let bad_pred = Predicate::NotAcyclic(legality.m as isize - 1);
    let top_pred = Predicate::TrivialTopHomology(legality.m);
    let (bad, trivial_top, verdict) = match counting {
        Counting::Exhaustive => {
            let bad = exact_fraction(l, bad_pred)?;
            let top = if legality.sharply {
                Some(exact_fraction(l, top_pred)?)
            } else {
                None
            };
            let count = bad.hits as u128 + top.map_or(0, |t| t.hits as u128);
            // count < 2^(n - χ - 1)  <=>  count * 2^(χ + 1) < 2^n
            let certified = count << (chi + 1) < 1u128 << n;
            let verdict = if certified {
                Verdict::Certified
            } else {
                Verdict::NotImplied
            };
            (bad, top, verdict)
        }
        Counting::Sampled { samples, seed } => {
            let bad = estimate_fraction(l, bad_pred, samples, seed);
            let top = legality
                .sharply
                .then(|| estimate_fraction(l, top_pred, samples, seed));
            (bad, top, Verdict::Estimated)
        }
    };
    Ok(PigeonholeReport {
        vertices: n,
        chromatic_number: chi,
        threshold_exponent: n as i64 - chi as i64 - 1,
        bad,
        trivial_top,
        verdict,
    })
}
