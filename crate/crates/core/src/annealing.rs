//! Simulated annealing over tripartitions.
//!
//! A move picks a deleted vertex `u`, deletes all of its neighbors, puts `u`
//! into a random class and re-fills greedily. Worsening moves are accepted
//! with probability `exp(c / t)`, where `c = |D| - |D'|` and `t` comes from
//! a [`CoolingSchedule`].

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::error::InputError;
use crate::graph::Graph;
use crate::greedy::{fill_in_place, greedy};
use crate::partition::{Side, Tripartition};
use crate::rng::RandomSource;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoolingKind {
    #[serde(alias = "hill", alias = "hill-climbing")]
    HillClimbing,
    Linear,
    Quadratic,
    Exponential,
}

impl CoolingKind {
    pub fn name(self) -> &'static str {
        match self {
            CoolingKind::HillClimbing => "hill",
            CoolingKind::Linear => "linear",
            CoolingKind::Quadratic => "quadratic",
            CoolingKind::Exponential => "exponential",
        }
    }
}

impl fmt::Display for CoolingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoolingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hill" | "hill-climbing" | "hillclimbing" => Ok(CoolingKind::HillClimbing),
            "linear" => Ok(CoolingKind::Linear),
            "quadratic" => Ok(CoolingKind::Quadratic),
            "exponential" => Ok(CoolingKind::Exponential),
            other => Err(format!("unknown cooling schedule `{other}`")),
        }
    }
}

/// A cooling function together with its iteration budget and start temperature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoolingSchedule {
    pub kind: CoolingKind,
    pub i_max: usize,
    pub t_max: f64,
}

impl CoolingSchedule {
    /// Temperature at iteration `i` (0 ≤ i ≤ i_max):
    ///
    /// | kind        | temperature                                        |
    /// |-------------|----------------------------------------------------|
    /// | hill        | 0                                                  |
    /// | linear      | t_max · (i_max − i) / i_max                        |
    /// | quadratic   | t_max · ((i_max − i) / i_max)²                     |
    /// | exponential | t_max / (1 + exp(2 ln(t_max) / i_max · (i − i_max/2))) |
    pub fn temperature(&self, i: usize) -> f64 {
        if self.i_max == 0 || self.t_max <= 0.0 {
            return 0.0;
        }
        let (im, t, tm) = (self.i_max as f64, i as f64, self.t_max);
        let temp = match self.kind {
            CoolingKind::HillClimbing => 0.0,
            CoolingKind::Linear => tm * (im - t) / im,
            CoolingKind::Quadratic => tm * ((im - t) / im).powi(2),
            CoolingKind::Exponential => tm / (1.0 + ((2.0 * tm.ln() / im) * (t - im / 2.0)).exp()),
        };
        temp.max(0.0)
    }
}

pub fn cooling(s: &CoolingSchedule, i: usize) -> f64 {
    s.temperature(i)
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct AnnealParams {
    pub cooling: CoolingKind,
    pub i_max: usize,
    pub t_max: f64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        Self {
            cooling: CoolingKind::Quadratic,
            i_max: 10_000,
            t_max: 50.0,
        }
    }
}

impl AnnealParams {
    pub fn schedule(&self) -> CoolingSchedule {
        CoolingSchedule {
            kind: self.cooling,
            i_max: self.i_max,
            t_max: self.t_max,
        }
    }

    pub fn validate(&self) -> Result<(), InputError> {
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(InputError::InvalidInput(format!(
                "t_max must be a finite non-negative number, got {}",
                self.t_max
            )));
        }
        Ok(())
    }
}

/// Acceptance rule for a candidate with gain `c = |D| - |D_candidate|`.
///
/// Improvements are always taken. Otherwise the move is accepted iff
/// `exp(c / t) > r`, with `r` uniform in `[0, 1)`; at `t = 0` this becomes
/// `c >= 0`.
#[inline]
pub fn accept(c: i64, t: f64, r: f64) -> bool {
    if c > 0 {
        true
    } else if t <= 0.0 {
        c >= 0
    } else {
        (c as f64 / t).exp() > r
    }
}

/// In-place neighbor move. Fails with [`InputError::EmptyD`] when nothing is deleted.
pub fn neighbor_in_place<R: RandomSource>(
    g: &Graph,
    t: &mut Tripartition,
    rng: &mut R,
) -> Result<(), InputError> {
    let deleted = t.deleted();
    if deleted.is_empty() {
        return Err(InputError::EmptyD);
    }
    let u = *rng.pick(&deleted);
    for &v in g.neighbors(u) {
        t.set(v, Side::D);
    }
    t.set(u, if rng.below(2) == 0 { Side::A } else { Side::B });
    fill_in_place(g, t, rng);
    Ok(())
}

pub fn compute_neighbor<R: RandomSource>(
    g: &Graph,
    t: &Tripartition,
    rng: &mut R,
) -> Result<Tripartition, InputError> {
    let mut next = t.clone();
    neighbor_in_place(g, &mut next, rng)?;
    Ok(next)
}

/// What the observer of [`anneal`] sees after each iteration.
#[derive(Debug)]
pub struct AnnealStep<'a> {
    pub iteration: usize,
    pub temperature: f64,
    pub gain: i64,
    pub accepted: bool,
    pub current: &'a Tripartition,
}

#[derive(Clone, Debug)]
pub struct AnnealRun {
    /// The state after the last iteration (not the best one seen).
    pub solution: Tripartition,
    /// Smallest `|D|` observed at any point, for diagnostics.
    pub best_seen_d: usize,
    pub iterations: usize,
    /// Set when the observer broke out of the loop.
    pub interrupted: bool,
}

/// Runs annealing from a greedy start, calling `observe` after every
/// iteration; returning `Break` stops the run. Stops early, uninterrupted,
/// once `D` is empty.
pub fn anneal<R, F>(g: &Graph, p: &AnnealParams, rng: &mut R, mut observe: F) -> AnnealRun
where
    R: RandomSource,
    F: FnMut(&AnnealStep<'_>) -> ControlFlow<()>,
{
    let schedule = p.schedule();
    let mut current = greedy(g, rng);
    let mut best_seen_d = current.d_size();
    let mut iterations = 0;
    let mut interrupted = false;
    for i in 1..=p.i_max {
        if current.d_size() == 0 {
            break;
        }
        let mut candidate = current.clone();
        neighbor_in_place(g, &mut candidate, rng).expect("D is nonempty");
        let gain = current.d_size() as i64 - candidate.d_size() as i64;
        let temperature = schedule.temperature(i);
        let accepted = gain > 0 || accept(gain, temperature, rng.uniform());
        if accepted {
            current = candidate;
            best_seen_d = best_seen_d.min(current.d_size());
        }
        iterations = i;
        let step = AnnealStep {
            iteration: i,
            temperature,
            gain,
            accepted,
            current: &current,
        };
        if observe(&step).is_break() {
            interrupted = true;
            break;
        }
    }
    AnnealRun {
        solution: current,
        best_seen_d,
        iterations,
        interrupted,
    }
}

pub fn simulated_annealing<R: RandomSource>(
    g: &Graph,
    p: &AnnealParams,
    rng: &mut R,
) -> Tripartition {
    anneal(g, p, rng, |_| ControlFlow::Continue(())).solution
}
