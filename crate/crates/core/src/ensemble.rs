//! Nonintersecting stay/step-right walkers: counting, enumeration and exact
//! uniform sampling.
//!
//! `n` walkers start densely packed at positions `1..=n`, take `N` ticks of
//! the clock during which each either stays or moves one step right, never
//! share a site, and end at prescribed positions `y_1 < ... < y_n`. The
//! number of such configurations is the determinant of the single-walker
//! transition counts, which is what makes exact conditional sampling cheap.

use num::bigint::RandBigInt;
use num::{BigInt, BigRational, One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::binom;
use crate::matrix::{int_bareiss_det, ExactMatrix};
use crate::par;

/// Default guard for exhaustive enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// Number of stay/step-right paths from position `x` at time `r` to
/// position `y` at time `s`: `C(s - r, y - x)` for `r < s`, zero otherwise
/// (including `r == s`).
pub fn transition_count(r: usize, s: usize, x: i64, y: i64) -> BigInt {
    if r >= s {
        return BigInt::zero();
    }
    binom((s - r) as i64, y - x)
}

/// A query site: a time/position pair strictly inside the time window.
///
/// Positions at times `0` and `N` are deterministic boundary data, and the
/// kernel degenerates there, so those times are rejected wherever a
/// `SpaceTimePoint` is consumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceTimePoint {
    pub t: usize,
    pub x: i64,
}

impl SpaceTimePoint {
    pub fn new(t: usize, x: i64) -> Self {
        SpaceTimePoint { t, x }
    }
}

/// A walker ensemble: `ends.len()` walkers, `steps` clock ticks, start
/// positions fixed at `1..=n`, end positions `ends`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnsembleSpec {
    steps: usize,
    ends: Vec<i64>,
}

impl EnsembleSpec {
    pub fn new(steps: usize, ends: Vec<i64>) -> Result<Self> {
        if ends.is_empty() {
            return Err(Error::NoWalkers);
        }
        if steps == 0 {
            return Err(Error::NoSteps);
        }
        for w in ends.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::EndsNotIncreasing(w[0], w[1]));
            }
        }
        for (idx, &end) in ends.iter().enumerate() {
            let start = idx as i64 + 1;
            if end < start || end - start > steps as i64 {
                return Err(Error::UnreachableEnd {
                    index: idx + 1,
                    start,
                    end,
                    steps,
                });
            }
        }
        Ok(EnsembleSpec { steps, ends })
    }

    /// Order-`n` half-hexagon: `N = n + 1` ticks, walker `i` ends at `2i`.
    pub fn half_hexagon(n: usize) -> Self {
        assert!(n >= 1, "half-hexagon order must be at least 1");
        EnsembleSpec {
            steps: n + 1,
            ends: (1..=n as i64).map(|i| 2 * i).collect(),
        }
    }

    pub fn walkers(&self) -> usize {
        self.ends.len()
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn ends(&self) -> &[i64] {
        &self.ends
    }

    pub fn starts(&self) -> Vec<i64> {
        (1..=self.walkers() as i64).collect()
    }

    /// Largest interior time, `N - 1`.
    pub fn max_interior_time(&self) -> usize {
        self.steps - 1
    }

    /// The boundary-to-boundary matrix `[C(N, y_j - i)]` whose determinant
    /// counts configurations.
    pub fn lgv_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_int_rows(self.lgv_rows()).expect("rectangular by construction")
    }

    fn lgv_rows(&self) -> Vec<Vec<BigInt>> {
        let n = self.walkers();
        (1..=n as i64)
            .map(|i| {
                self.ends
                    .iter()
                    .map(|&y| binom(self.steps as i64, y - i))
                    .collect()
            })
            .collect()
    }

    /// Total number of configurations, as a determinant.
    pub fn count_configurations(&self) -> BigInt {
        int_bareiss_det(self.lgv_rows())
    }

    /// Every valid configuration exactly once, ordered lexicographically on
    /// the flattened position array. Refuses to run when the count exceeds
    /// `cap`.
    pub fn enumerate_configurations(&self, cap: u64) -> Result<Vec<Configuration>> {
        let count = self.count_configurations();
        if count > BigInt::from(cap) {
            return Err(Error::EnumerationCapExceeded { count, cap });
        }
        let mut out = Vec::new();
        let mut positions = vec![self.starts()];
        self.extend_enumeration(&mut positions, &mut out);
        Ok(out)
    }

    fn extend_enumeration(&self, positions: &mut Vec<Vec<i64>>, out: &mut Vec<Configuration>) {
        let t = positions.len() - 1;
        if t == self.steps {
            out.push(Configuration {
                positions: positions.clone(),
            });
            return;
        }
        let n = self.walkers();
        let mut slice = vec![0i64; n];
        self.choose_steps(t, 0, &mut slice, positions, out);
    }

    // Walker-by-walker step choice, stay before move, which yields the
    // lexicographic order globally.
    fn choose_steps(
        &self,
        t: usize,
        w: usize,
        slice: &mut Vec<i64>,
        positions: &mut Vec<Vec<i64>>,
        out: &mut Vec<Configuration>,
    ) {
        let n = self.walkers();
        if w == n {
            positions.push(slice.clone());
            self.extend_enumeration(positions, out);
            positions.pop();
            return;
        }
        let prev = positions[positions.len() - 1][w];
        let remaining = (self.steps - t - 1) as i64;
        for step in 0..=1i64 {
            let z = prev + step;
            if w > 0 && z <= slice[w - 1] {
                continue;
            }
            if z > self.ends[w] || self.ends[w] - z > remaining {
                continue;
            }
            slice[w] = z;
            self.choose_steps(t, w + 1, slice, positions, out);
        }
    }

    /// Exact occupation probability of a set of sites: the fraction of
    /// configurations containing a walker at every queried point. The empty
    /// query is vacuously 1.
    pub fn empirical_correlation(
        &self,
        points: &[SpaceTimePoint],
        cap: u64,
    ) -> Result<BigRational> {
        let configs = self.enumerate_configurations(cap)?;
        self.empirical_correlation_in(&configs, points)
    }

    /// Same as [`Self::empirical_correlation`] over an enumeration the
    /// caller already holds, so sweeps do not re-enumerate per query.
    pub fn empirical_correlation_in(
        &self,
        configs: &[Configuration],
        points: &[SpaceTimePoint],
    ) -> Result<BigRational> {
        self.validate_points(points)?;
        let hits = configs
            .iter()
            .filter(|c| points.iter().all(|p| c.occupied(p.t, p.x)))
            .count();
        Ok(BigRational::new(
            BigInt::from(hits),
            BigInt::from(configs.len()),
        ))
    }

    pub(crate) fn validate_points(&self, points: &[SpaceTimePoint]) -> Result<()> {
        let max = self.max_interior_time();
        for (idx, p) in points.iter().enumerate() {
            if p.t < 1 || p.t > max {
                return Err(Error::BoundaryTime { t: p.t, max });
            }
            if points[..idx].contains(p) {
                return Err(Error::DuplicateQueryPoint { t: p.t, x: p.x });
            }
        }
        Ok(())
    }

    /// Draws one configuration exactly uniformly at random, deterministically
    /// in the seed.
    pub fn sample(&self, seed: u64) -> Configuration {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng).0
    }

    /// Exact sequential sampler. Returns the configuration together with the
    /// product of the conditional weights used to draw it, which for a
    /// uniform sampler must equal `1 / count_configurations()` exactly.
    ///
    /// Each walker step is drawn in turn; the weight of a step choice is the
    /// determinant counting the completions consistent with it, and by row
    /// multilinearity (Pascal on each undecided row) the two weights sum to
    /// the completions of the previous state, so every conditional
    /// distribution is exactly normalized.
    pub fn sample_with(&self, rng: &mut ChaCha8Rng) -> (Configuration, BigRational) {
        let n = self.walkers();
        let mut positions = vec![self.starts()];
        // Completions from the current partial state; starts at the full count.
        let mut total = self.count_configurations();
        let mut probability = BigRational::one();
        for t in 0..self.steps {
            let current = positions[t].clone();
            let mut chosen: Vec<i64> = Vec::with_capacity(n);
            for w in 0..n {
                let stay = self.step_weight(t, &current, &chosen, w, 0);
                let bound = total.to_biguint().expect("completion counts are nonnegative");
                let draw = BigInt::from(rng.gen_biguint_below(&bound));
                let (z, picked) = if draw < stay {
                    (current[w], stay)
                } else {
                    (current[w] + 1, &total - &stay)
                };
                probability *= BigRational::new(picked.clone(), total.clone());
                chosen.push(z);
                total = picked;
            }
            positions.push(chosen);
        }
        (Configuration { positions }, probability)
    }

    /// The probability the sampler assigns to `config`: the same product of
    /// conditional weights [`Self::sample_with`] would accumulate while
    /// drawing it. Exactly `1 / count` for every valid configuration.
    pub fn configuration_probability(&self, config: &Configuration) -> Result<BigRational> {
        if config.slice(0) != self.starts()
            || config.ends() != self.ends()
            || config.steps() != self.steps
        {
            return Err(Error::ConfigurationMismatch);
        }
        let n = self.walkers();
        let mut total = self.count_configurations();
        let mut probability = BigRational::one();
        for t in 0..self.steps {
            let current = config.slice(t);
            let mut chosen: Vec<i64> = Vec::with_capacity(n);
            for w in 0..n {
                let step = config.slice(t + 1)[w] - current[w];
                let stay = self.step_weight(t, current, &chosen, w, 0);
                let picked = if step == 0 { stay } else { &total - &stay };
                if picked.is_zero() {
                    return Ok(BigRational::zero());
                }
                probability *= BigRational::new(picked.clone(), total.clone());
                chosen.push(current[w] + step);
                total = picked;
            }
        }
        Ok(probability)
    }

    // Completion count after forcing walker `w` at tick `t` to take `step`,
    // given the steps already fixed for walkers before `w`:
    // rows < w use their chosen positions, row w uses its candidate, and the
    // undecided rows keep both options summed, C(m, .) + C(m, . - 1) = C(m+1, .).
    fn step_weight(&self, t: usize, current: &[i64], chosen: &[i64], w: usize, step: i64) -> BigInt {
        let m = (self.steps - t - 1) as i64;
        let matrix: Vec<Vec<BigInt>> = (0..self.walkers())
            .map(|i| {
                let (pos, horizon) = if i < w {
                    (chosen[i], m)
                } else if i == w {
                    (current[w] + step, m)
                } else {
                    (current[i], m + 1)
                };
                self.ends.iter().map(|&y| binom(horizon, y - pos)).collect()
            })
            .collect();
        int_bareiss_det(matrix)
    }

    /// `count` independent uniform samples, one RNG stream per index, so the
    /// result is reproducible regardless of scheduling.
    pub fn sample_batch(&self, seed: u64, count: usize) -> Vec<Configuration> {
        self.sample_batch_impl(seed, count, true)
    }

    /// Sequential twin of [`Self::sample_batch`] for benchmarking.
    pub fn sample_batch_seq(&self, seed: u64, count: usize) -> Vec<Configuration> {
        self.sample_batch_impl(seed, count, false)
    }

    fn sample_batch_impl(&self, seed: u64, count: usize, parallel: bool) -> Vec<Configuration> {
        par::map_collect((0..count as u64).collect(), parallel, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            self.sample_with(&mut rng).0
        })
    }
}

/// A full space-time trajectory of all walkers: `positions[t][i]` is the
/// position of walker `i` (0-based here) at time `t`.
///
/// Invariants enforced on construction: each time slice strictly increasing,
/// consecutive slices differing by 0 or 1 per walker, slice 0 equal to
/// `1..=n`. The final slice determines the ensemble the configuration
/// belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    positions: Vec<Vec<i64>>,
}

impl Configuration {
    pub fn new(positions: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = positions.first() else {
            return Err(Error::InvalidConfiguration("no time slices".into()));
        };
        if positions.len() < 2 {
            return Err(Error::InvalidConfiguration(
                "need at least one time step".into(),
            ));
        }
        let n = first.len();
        if n == 0 {
            return Err(Error::InvalidConfiguration("no walkers".into()));
        }
        let starts: Vec<i64> = (1..=n as i64).collect();
        if *first != starts {
            return Err(Error::InvalidConfiguration(format!(
                "first slice must be 1..={n}"
            )));
        }
        for (t, slice) in positions.iter().enumerate() {
            if slice.len() != n {
                return Err(Error::InvalidConfiguration(format!(
                    "slice {t} has {} walkers, expected {n}",
                    slice.len()
                )));
            }
            if slice.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidConfiguration(format!(
                    "slice {t} is not strictly increasing"
                )));
            }
        }
        for (t, pair) in positions.windows(2).enumerate() {
            for (w, (prev, next)) in pair[0].iter().zip(&pair[1]).enumerate() {
                let step = next - prev;
                if step != 0 && step != 1 {
                    return Err(Error::InvalidConfiguration(format!(
                        "walker {} moves by {step} at tick {t}",
                        w + 1
                    )));
                }
            }
        }
        Ok(Configuration { positions })
    }

    pub fn walkers(&self) -> usize {
        self.positions[0].len()
    }

    pub fn steps(&self) -> usize {
        self.positions.len() - 1
    }

    pub fn slice(&self, t: usize) -> &[i64] {
        &self.positions[t]
    }

    pub fn ends(&self) -> &[i64] {
        self.positions.last().expect("nonempty")
    }

    pub fn occupied(&self, t: usize, x: i64) -> bool {
        self.positions[t].binary_search(&x).is_ok()
    }

    /// The ensemble this configuration realizes.
    pub fn spec(&self) -> EnsembleSpec {
        EnsembleSpec::new(self.steps(), self.ends().to_vec())
            .expect("configuration invariants imply a valid ensemble")
    }

    /// One text record: `steps + 1` lines of space-separated positions.
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        for slice in &self.positions {
            let line: Vec<String> = slice.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_record(text: &str) -> Result<Self> {
        let mut positions = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: std::result::Result<Vec<i64>, _> =
                line.split_whitespace().map(str::parse).collect();
            positions.push(row.map_err(|e| Error::Parse(format!("bad position: {e}")))?);
        }
        Configuration::new(positions)
    }
}
