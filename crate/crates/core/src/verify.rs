//! Replayable verification sweeps cross-checking every closed form against
//! an independent oracle.
//!
//! Each suite draws its cases from a seeded generator, so a reported
//! counterexample pins down exact integer inputs that reproduce the failure.
//! The sweeps run data-parallel under the `parallel` feature; the `_seq`
//! twins exist so benchmarks can compare both paths in one build.

use std::time::Instant;

use num::{BigInt, BigRational, One};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binomial_matrix::{
    lagrange_sides, reduced_minor, shifted_binomial_det, BinomialMatrixSpec,
};
use crate::ensemble::{EnsembleSpec, SpaceTimePoint};
use crate::error::Result;
use crate::exact::{binom, factorial};
use crate::kernel::KernelContext;
use crate::matrix::ExactMatrix;
use crate::par;

/// Knobs shared by all sweeps. `cases` scales the randomized suites
/// (the interpolation sweep multiplies it by 20 to cover its larger case
/// space); `n_max` caps every dimension.
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub n_max: usize,
    pub cases: usize,
    pub seed: u64,
}

impl SweepConfig {
    /// Full-scale sweep: the scales the acceptance suite runs at.
    pub fn full() -> Self {
        SweepConfig {
            n_max: 12,
            cases: 500,
            seed: 2024,
        }
    }

    /// Reduced sweep for fast smoke runs.
    pub fn quick(n_max: usize) -> Self {
        SweepConfig {
            n_max,
            cases: 80,
            seed: 2024,
        }
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self::full()
    }
}

/// Result of one suite: number of cases exercised and the first
/// counterexample, if any. All inputs appear in the counterexample text.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub counterexample: Option<String>,
    pub millis: u128,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn run_cases<F>(name: &'static str, total: usize, parallel: bool, f: F) -> SuiteOutcome
where
    F: Fn(u64) -> Option<String> + Sync + Send,
{
    let start = Instant::now();
    let failures = par::map_collect((0..total as u64).collect(), parallel, f);
    let counterexample = failures.into_iter().flatten().next();
    SuiteOutcome {
        name,
        cases: total,
        counterexample,
        millis: start.elapsed().as_millis(),
    }
}

fn case_rng(seed: u64, salt: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
    rng.set_stream(case);
    rng
}

fn random_matrix_spec(rng: &mut ChaCha8Rng, n_max: usize, a_max: i64) -> BinomialMatrixSpec {
    let n = rng.gen_range(1..=n_max);
    let a = rng.gen_range(0..=a_max);
    let mut pool: Vec<i64> = (1..=a + n as i64).collect();
    pool.shuffle(rng);
    let b = pool[..n].iter().map(|&v| BigInt::from(v)).collect();
    BinomialMatrixSpec::new(BigInt::from(a), b).expect("drawn inside the validity region")
}

/// Closed-form inverse against the identity, both sides, on random specs.
pub fn inverse_identity_suite(cfg: &SweepConfig) -> SuiteOutcome {
    inverse_identity_impl(cfg, false, true)
}

/// Sequential twin of [`inverse_identity_suite`].
pub fn inverse_identity_suite_seq(cfg: &SweepConfig) -> SuiteOutcome {
    inverse_identity_impl(cfg, false, false)
}

/// The same sweep against a deliberately sign-broken inverse; a healthy
/// sweep must FAIL here, which is the self-check that it can catch bugs.
pub fn inverse_identity_fault_suite(cfg: &SweepConfig) -> SuiteOutcome {
    inverse_identity_impl(cfg, true, true)
}

fn inverse_identity_impl(cfg: &SweepConfig, fault: bool, parallel: bool) -> SuiteOutcome {
    let name = if fault {
        "inverse-identity(fault-injected)"
    } else {
        "inverse-identity"
    };
    let cfg = *cfg;
    run_cases(name, cfg.cases, parallel, move |case| {
        let mut rng = case_rng(cfg.seed, 0x1000, case);
        let spec = random_matrix_spec(&mut rng, cfg.n_max, 20);
        let m = spec.matrix();
        let inv = spec.closed_form_inverse_signed(fault);
        let left = m.mul(&inv).expect("square");
        let right = inv.mul(&m).expect("square");
        if left.is_identity() && right.is_identity() {
            None
        } else {
            Some(format!(
                "A={} B={:?}: M*inv identity: {}, inv*M identity: {}",
                spec.a(),
                spec.b(),
                left.is_identity(),
                right.is_identity()
            ))
        }
    })
}

/// Both sides of the Lagrange-interpolation identity over random
/// (n, A, B-subset, alpha, k) tuples with n <= 5, A <= 8.
pub fn lagrange_suite(cfg: &SweepConfig) -> SuiteOutcome {
    let cfg = *cfg;
    let total = cfg.cases * 20;
    let n_cap = cfg.n_max.min(5);
    run_cases("lagrange-interpolation", total, true, move |case| {
        let mut rng = case_rng(cfg.seed, 0x2000, case);
        let n = rng.gen_range(1..=n_cap);
        let a = rng.gen_range(0..=8i64);
        let mut pool: Vec<i64> = (1..=a + n as i64).collect();
        pool.shuffle(&mut rng);
        let spec = BinomialMatrixSpec::new(
            BigInt::from(a),
            pool[..n].iter().map(|&v| BigInt::from(v)).collect(),
        )
        .expect("valid by construction");
        let alpha = rng.gen_range(1..=n);
        let k = BigInt::from(rng.gen_range(1..=a + n as i64));
        let (lhs, rhs) = lagrange_sides(&spec, alpha, &k).expect("arguments in range");
        if lhs == rhs {
            None
        } else {
            Some(format!(
                "A={a} B={:?} alpha={alpha} k={k}: lhs={lhs} rhs={rhs}",
                spec.b()
            ))
        }
    })
}

/// The closed determinant formula against fraction-free elimination on the
/// assembled matrix.
pub fn determinant_formula_suite(cfg: &SweepConfig) -> SuiteOutcome {
    let cfg = *cfg;
    let total = (cfg.cases * 2 / 5).max(40);
    let n_cap = cfg.n_max.min(5);
    run_cases("determinant-formula", total, true, move |case| {
        let mut rng = case_rng(cfg.seed, 0x3000, case);
        let n = rng.gen_range(1..=n_cap);
        let a = rng.gen_range(0..=12i64);
        let shifts: Vec<i64> = (0..n)
            .map(|_| rng.gen_range(-(n as i64)..=a - 1))
            .collect();
        let shifts_big: Vec<BigInt> = shifts.iter().map(|&v| BigInt::from(v)).collect();
        let formula = shifted_binomial_det(&BigInt::from(a), &shifts_big)
            .expect("shifts drawn inside the defined range");
        let matrix = ExactMatrix::from_int_rows(
            shifts
                .iter()
                .map(|&l| (1..=n as i64).map(|j| binom(a, l + j)).collect())
                .collect(),
        )
        .expect("rectangular");
        let oracle = matrix.bareiss_det().expect("square");
        if formula == oracle {
            None
        } else {
            Some(format!(
                "A={a} shifts={shifts:?}: formula={formula} oracle={oracle}"
            ))
        }
    })
}

/// The reduced-minor closed form against struck-out minors of the full
/// matrix, with the extracted per-column factorials restored.
pub fn reduced_minor_suite(cfg: &SweepConfig) -> SuiteOutcome {
    let cfg = *cfg;
    let n_cap = cfg.n_max.min(6);
    let reps = (cfg.cases / 100).max(2);
    let mut args = Vec::new();
    for n in 1..=n_cap {
        for s in 1..=n {
            for rep in 0..reps {
                args.push((n, s, rep as u64));
            }
        }
    }
    let total = args.len();
    let start = Instant::now();
    let failures = par::map_collect(args, true, move |(n, s, rep)| {
        let mut rng = case_rng(cfg.seed, 0x4000 + rep, (n * 16 + s) as u64);
        let a = rng.gen_range(0..=12i64);
        let mut pool: Vec<i64> = (1..=a + n as i64).collect();
        pool.shuffle(&mut rng);
        let mut bs = pool[..n].to_vec();
        bs.sort_unstable();
        let col = rng.gen_range(1..=n);
        let spec = BinomialMatrixSpec::new(
            BigInt::from(a),
            bs.iter().map(|&v| BigInt::from(v)).collect(),
        )
        .expect("valid by construction");
        let bbar: Vec<BigInt> = bs
            .iter()
            .enumerate()
            .filter(|(i, _)| i + 1 != col)
            .map(|(_, &v)| BigInt::from(v))
            .collect();

        let minor = spec
            .matrix()
            .strike(s, col)
            .expect("indices in range")
            .bareiss_det()
            .expect("square");
        let mut prefactor = BigRational::one();
        let a_big = BigInt::from(a);
        for b in &bbar {
            prefactor *= BigRational::new(
                factorial(&a_big),
                factorial(&(b - 1)) * factorial(&(&a_big - b + BigInt::from(n as i64))),
            );
        }
        let reduced = reduced_minor(n, s, &a_big, &bbar).expect("arguments in range");
        let predicted = prefactor * BigRational::from_integer(reduced);
        if minor == predicted {
            None
        } else {
            Some(format!(
                "n={n} s={s} A={a} B={bs:?} col={col}: minor={minor} predicted={predicted}"
            ))
        }
    });
    SuiteOutcome {
        name: "reduced-minor",
        cases: total,
        counterexample: failures.into_iter().flatten().next(),
        millis: start.elapsed().as_millis(),
    }
}

/// Every 1-, 2- and 3-point correlation against brute-force enumeration,
/// on small half-hexagons and a spread of general-endpoint ensembles.
pub fn kernel_enumeration_suite(cfg: &SweepConfig) -> SuiteOutcome {
    kernel_enumeration_impl(cfg, true)
}

/// Sequential twin of [`kernel_enumeration_suite`].
pub fn kernel_enumeration_suite_seq(cfg: &SweepConfig) -> SuiteOutcome {
    kernel_enumeration_impl(cfg, false)
}

/// The ensembles the enumeration sweep runs over: half-hexagons up to order
/// `min(n_max, 4)` plus general-endpoint ensembles, all with at most 10^4
/// configurations.
pub fn enumeration_checked_ensembles(n_max: usize) -> Vec<EnsembleSpec> {
    let mut specs: Vec<EnsembleSpec> = (1..=n_max.min(4)).map(EnsembleSpec::half_hexagon).collect();
    let generals = [
        (3usize, vec![3i64]),
        (2, vec![2, 3]),
        (4, vec![3, 5]),
        (3, vec![3, 4]),
        (3, vec![2, 4, 6]),
        (4, vec![2, 5, 7]),
    ];
    for (steps, ends) in generals {
        if ends.len() <= n_max {
            specs.push(EnsembleSpec::new(steps, ends).expect("feasible endpoints"));
        }
    }
    specs
}

fn kernel_enumeration_impl(cfg: &SweepConfig, parallel: bool) -> SuiteOutcome {
    let start = Instant::now();
    let mut total = 0usize;
    let mut counterexample = None;
    for spec in enumeration_checked_ensembles(cfg.n_max) {
        let configs = spec
            .enumerate_configurations(10_000)
            .expect("sweep ensembles stay under the cap");
        let ctx = KernelContext::new(spec.clone());
        let sites: Vec<SpaceTimePoint> = (1..=spec.max_interior_time())
            .flat_map(|t| {
                (1..=*spec.ends().last().unwrap()).map(move |x| SpaceTimePoint::new(t, x))
            })
            .collect();
        let queries = point_subsets(&sites, 3);
        total += queries.len();
        let failures = par::map_collect(queries, parallel, |query| {
            check_query(&spec, &ctx, &configs, &query).err()
        });
        if counterexample.is_none() {
            counterexample = failures.into_iter().flatten().next();
        }
        if counterexample.is_some() {
            break;
        }
    }
    SuiteOutcome {
        name: "kernel-vs-enumeration",
        cases: total,
        counterexample,
        millis: start.elapsed().as_millis(),
    }
}

/// All nonempty subsets of `sites` of size at most `max_len`.
pub fn point_subsets(sites: &[SpaceTimePoint], max_len: usize) -> Vec<Vec<SpaceTimePoint>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(
        sites: &[SpaceTimePoint],
        from: usize,
        max_len: usize,
        current: &mut Vec<SpaceTimePoint>,
        out: &mut Vec<Vec<SpaceTimePoint>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        if current.len() == max_len {
            return;
        }
        for i in from..sites.len() {
            current.push(sites[i]);
            recurse(sites, i + 1, max_len, current, out);
            current.pop();
        }
    }
    recurse(sites, 0, max_len, &mut current, &mut out);
    out
}

fn check_query(
    spec: &EnsembleSpec,
    ctx: &KernelContext,
    configs: &[crate::ensemble::Configuration],
    query: &[SpaceTimePoint],
) -> std::result::Result<(), String> {
    let failure = |msg: String| -> std::result::Result<(), String> {
        Err(format!("ends={:?} N={} {msg}", spec.ends(), spec.steps()))
    };
    let det: Result<BigRational> = ctx.correlation(query);
    let emp: Result<BigRational> = spec.empirical_correlation_in(configs, query);
    match (det, emp) {
        (Ok(det), Ok(emp)) => {
            if det != emp {
                return failure(format!("query={query:?}: kernel={det} enumeration={emp}"));
            }
            if det < BigRational::from_integer(BigInt::from(0))
                || det > BigRational::from_integer(BigInt::from(1))
            {
                return failure(format!("query={query:?}: value {det} outside [0, 1]"));
            }
            Ok(())
        }
        (det, emp) => failure(format!("query={query:?}: unexpected error {det:?} / {emp:?}")),
    }
}

/// Runs the five suites in order, parallel where enabled.
pub fn run_all(cfg: &SweepConfig) -> Vec<SuiteOutcome> {
    vec![
        inverse_identity_suite(cfg),
        lagrange_suite(cfg),
        determinant_formula_suite(cfg),
        reduced_minor_suite(cfg),
        kernel_enumeration_suite(cfg),
    ]
}
