//! Banzhaf and Shapley-Shubik power indices.
//!
//! Exact routines enumerate the `2^n` coalitions once into a winning-set
//! bitmap. Shapley-Shubik uses the subset-weighted sum
//! `|c|! (n-|c|-1)!` over coalitions `c` that player `i` turns from losing
//! to winning, which reaches `n = 20` without touching `n!` orderings.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Coalition, SimpleGame};
use crate::sampling::run_chunked;

pub const BANZHAF_EXACT_MAX_PLAYERS: usize = 24;
pub const SHAPLEY_EXACT_MAX_PLAYERS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexKind {
    Banzhaf,
    Shapley,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerReport {
    pub kind: IndexKind,
    pub method: Method,
    /// Swing counts (Banzhaf) or pivotal orderings (Shapley). For Monte
    /// Carlo these are counts among the sampled trials.
    pub raw: Vec<u64>,
    /// `raw / sum(raw)`, or all zero when nobody is ever decisive.
    pub normalized: Vec<f64>,
    /// Standard error of each normalized entry (Monte Carlo only).
    pub stderr: Option<Vec<f64>>,
    pub trials: Option<u64>,
}

impl PowerReport {
    fn exact(kind: IndexKind, raw: Vec<u64>) -> Self {
        let total: u128 = raw.iter().map(|&r| r as u128).sum();
        let normalized = raw
            .iter()
            .map(|&r| if total == 0 { 0.0 } else { r as f64 / total as f64 })
            .collect();
        PowerReport { kind, method: Method::Exact, raw, normalized, stderr: None, trials: None }
    }

    pub fn n(&self) -> usize {
        self.raw.len()
    }
}

fn check_cap(n: usize, cap: usize, what: &str) -> Result<()> {
    if n > cap {
        return Err(Error::capacity(
            format!("exact {what} enumeration"),
            cap as u64,
            "use power_monte_carlo for larger games",
        ));
    }
    Ok(())
}

/// Exact Banzhaf swing counts.
pub fn banzhaf_exact<G: SimpleGame + ?Sized>(game: &G) -> Result<PowerReport> {
    let n = game.players();
    check_cap(n, BANZHAF_EXACT_MAX_PLAYERS, "Banzhaf")?;
    let set = game.winning_set();
    let total = 1u64 << n;
    let block = (total / 64).max(1);
    let raw = (0..total.div_ceil(block))
        .into_par_iter()
        .map(|b| {
            let mut counts = vec![0u64; n];
            for mask in b * block..((b + 1) * block).min(total) {
                if !set.contains(mask) {
                    continue;
                }
                for i in Coalition::from_mask(mask).members() {
                    if !set.contains(mask & !(1 << i)) {
                        counts[i] += 1;
                    }
                }
            }
            counts
        })
        .reduce(|| vec![0u64; n], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    Ok(PowerReport::exact(IndexKind::Banzhaf, raw))
}

/// Exact Shapley-Shubik index; `raw` holds the number of pivotal orderings.
pub fn shapley_exact<G: SimpleGame + ?Sized>(game: &G) -> Result<PowerReport> {
    let n = game.players();
    check_cap(n, SHAPLEY_EXACT_MAX_PLAYERS, "Shapley")?;
    let set = game.winning_set();
    let factorial: Vec<u64> = (0..=n as u64).scan(1u64, |f, k| {
        if k > 0 {
            *f *= k;
        }
        Some(*f)
    }).collect();
    let total = 1u64 << n;
    let block = (total / 64).max(1);
    let raw = (0..total.div_ceil(block))
        .into_par_iter()
        .map(|b| {
            let mut counts = vec![0u64; n];
            for mask in b * block..((b + 1) * block).min(total) {
                let size = mask.count_ones() as usize;
                if set.contains(mask) || size == n {
                    continue;
                }
                let orderings = factorial[size] * factorial[n - size - 1];
                for (i, count) in counts.iter_mut().enumerate() {
                    if mask >> i & 1 == 0 && set.contains(mask | 1 << i) {
                        *count += orderings;
                    }
                }
            }
            counts
        })
        .reduce(|| vec![0u64; n], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    Ok(PowerReport::exact(IndexKind::Shapley, raw))
}

/// Per-trial moments of the indicator vector `x` and its total `y`.
#[derive(Clone)]
struct Moments {
    trials: u64,
    sum_x: Vec<u64>,
    sum_xy: Vec<u64>,
    sum_y: u64,
    sum_yy: u64,
}

impl Moments {
    fn new(n: usize) -> Self {
        Moments { trials: 0, sum_x: vec![0; n], sum_xy: vec![0; n], sum_y: 0, sum_yy: 0 }
    }

    fn record(&mut self, hits: Coalition) {
        let y = hits.len() as u64;
        self.trials += 1;
        self.sum_y += y;
        self.sum_yy += y * y;
        for i in hits.members() {
            self.sum_x[i] += 1;
            self.sum_xy[i] += y;
        }
    }

    fn merge(mut self, other: Moments) -> Moments {
        self.trials += other.trials;
        self.sum_y += other.sum_y;
        self.sum_yy += other.sum_yy;
        for i in 0..self.sum_x.len() {
            self.sum_x[i] += other.sum_x[i];
            self.sum_xy[i] += other.sum_xy[i];
        }
        self
    }

    /// Ratio estimates `sum_x / sum_y` with delta-method standard errors.
    fn into_report(self, kind: IndexKind) -> PowerReport {
        let t = self.trials as f64;
        let n = self.sum_x.len();
        let (normalized, stderr) = if self.sum_y == 0 {
            (vec![0.0; n], vec![0.0; n])
        } else {
            let mean_y = self.sum_y as f64 / t;
            let mean_yy = self.sum_yy as f64 / t;
            (0..n)
                .map(|i| {
                    let r = self.sum_x[i] as f64 / self.sum_y as f64;
                    let mean_x = self.sum_x[i] as f64 / t;
                    let mean_xy = self.sum_xy[i] as f64 / t;
                    // x is 0/1 so E[x^2] = E[x]
                    let var = (mean_x - 2.0 * r * mean_xy + r * r * mean_yy).max(0.0);
                    (r, (var / t).sqrt() / mean_y)
                })
                .unzip()
        };
        PowerReport {
            kind,
            method: Method::MonteCarlo,
            raw: self.sum_x,
            normalized,
            stderr: Some(stderr),
            trials: Some(self.trials),
        }
    }
}

/// Monte Carlo estimate of either index; reproducible for a fixed seed.
///
/// Banzhaf draws a uniform coalition per trial; for each player the other
/// members form a uniform coalition of the others, so every player's swing
/// is tested on the same draw. Shapley draws a uniform ordering and records
/// its pivot.
pub fn power_monte_carlo<G: SimpleGame + ?Sized>(
    game: &G,
    kind: IndexKind,
    trials: u64,
    seed: u64,
) -> Result<PowerReport> {
    if trials == 0 {
        return Err(Error::Config("Monte Carlo needs at least one trial".into()));
    }
    let n = game.players();
    let all = Coalition::all(n).mask();
    let moments = run_chunked(
        trials,
        seed,
        |rng, count| {
            let mut m = Moments::new(n);
            let mut order: Vec<usize> = (0..n).collect();
            for _ in 0..count {
                let hits = match kind {
                    IndexKind::Banzhaf => game.swingers(Coalition::from_mask(rng.random::<u64>() & all)),
                    IndexKind::Shapley => {
                        order.shuffle(rng);
                        game.pivot(&order).map_or(Coalition::EMPTY, |p| Coalition::EMPTY.with(p))
                    }
                };
                m.record(hits);
            }
            m
        },
        Moments::merge,
    )
    .expect("at least one chunk");
    Ok(moments.into_report(kind))
}
