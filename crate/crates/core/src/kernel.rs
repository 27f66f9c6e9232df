//! The correlation kernel of the walker process and k-point correlations.
//!
//! Correlation functions of the nonintersecting walker ensemble are
//! determinantal: the probability of seeing walkers at sites
//! `(t_1, x_1), ..., (t_m, x_m)` is the `m x m` determinant of a kernel `K`
//! built from the transition counts and the inverse of the
//! boundary-to-boundary matrix. Three forms of `K` are implemented
//! independently and cross-checked entrywise:
//!
//! - [`KernelContext::kernel`]: assembled from a cached exact inverse;
//! - [`general_kernel`]: the unspecialized closed form, endpoint sums and
//!   all, transcribed directly;
//! - [`half_hexagon_kernel`]: the half-hexagon specialization, where the
//!   endpoint products collapse into factorials and a power of two.
//!
//! All interior-time queries are exact rationals; boundary times 0 and `N`
//! are rejected because positions there are deterministic and the kernel
//! form degenerates.

use num::{BigInt, BigRational, One, Zero};

use crate::binomial_matrix::BinomialMatrixSpec;
use crate::ensemble::{transition_count, EnsembleSpec, SpaceTimePoint};
use crate::error::{Error, Result};
use crate::exact::{binom, factorial};
use crate::matrix::ExactMatrix;
use crate::par;

/// An ensemble together with the precomputed inverse of its
/// boundary-to-boundary matrix; kernel grids reuse the inverse thousands of
/// times, so it is built once.
#[derive(Debug, Clone)]
pub struct KernelContext {
    spec: EnsembleSpec,
    minv: ExactMatrix,
}

impl KernelContext {
    pub fn new(spec: EnsembleSpec) -> Self {
        let params = BinomialMatrixSpec::new(
            BigInt::from(spec.steps() as i64),
            spec.ends().iter().map(|&y| BigInt::from(y)).collect(),
        );
        // Valid ensembles always satisfy the closed-form preconditions
        // (ends are distinct and confined to [1, N + n]); the elimination
        // route stays as a fallback oracle.
        let minv = match params {
            Ok(p) => p.closed_form_inverse(),
            Err(_) => spec
                .lgv_matrix()
                .inverse()
                .expect("boundary matrix of a valid ensemble is invertible"),
        };
        KernelContext { spec, minv }
    }

    pub fn spec(&self) -> &EnsembleSpec {
        &self.spec
    }

    pub fn matrix_inverse(&self) -> &ExactMatrix {
        &self.minv
    }

    fn check_time(&self, t: usize) -> Result<()> {
        let max = self.spec.max_interior_time();
        if t < 1 || t > max {
            return Err(Error::BoundaryTime { t, max });
        }
        Ok(())
    }

    /// Kernel value `K(r, x; s, y)` assembled from the stored inverse:
    ///
    /// ```text
    /// K = -phi_{r,s}(x, y) + sum_{i,j} phi_{r,N}(x, y_i) inv(i,j) phi_{0,s}(j, y)
    /// ```
    ///
    /// where `phi` is the stay/step transition count.
    pub fn kernel(&self, r: usize, x: i64, s: usize, y: i64) -> Result<BigRational> {
        self.check_time(r)?;
        self.check_time(s)?;
        let n = self.spec.walkers();
        let steps = self.spec.steps();
        let ends = self.spec.ends();

        let mut value = -BigRational::from_integer(transition_count(r, s, x, y));
        for i in 1..=n {
            let left = transition_count(r, steps, x, ends[i - 1]);
            if left.is_zero() {
                continue;
            }
            for j in 1..=n {
                let right = transition_count(0, s, j as i64, y);
                if right.is_zero() {
                    continue;
                }
                value += BigRational::from_integer(&left * right) * self.minv.entry(i, j);
            }
        }
        Ok(value)
    }

    /// The m-point correlation: `det [K(t_i, x_i; t_j, x_j)]`, exactly.
    /// The empty query is the empty determinant, 1.
    pub fn correlation(&self, points: &[SpaceTimePoint]) -> Result<BigRational> {
        self.spec.validate_points(points)?;
        let m = points.len();
        let mut entries = Vec::with_capacity(m * m);
        for pi in points {
            for pj in points {
                entries.push(self.kernel(pi.t, pi.x, pj.t, pj.x)?);
            }
        }
        ExactMatrix::from_fn1(m, m, |i, j| entries[(i - 1) * m + (j - 1)].clone()).bareiss_det()
    }

    /// Sum of the one-point function over the reachable strip at time `t`;
    /// walker conservation makes this exactly `n`.
    pub fn occupation_sum(&self, t: usize) -> Result<BigRational> {
        let mut sum = BigRational::zero();
        for x in 1..=*self.spec.ends().last().unwrap() {
            sum += self.kernel(t, x, t, x)?;
        }
        Ok(sum)
    }
}

/// The general-endpoint closed form of the kernel, with the inverse already
/// substituted as an explicit double sum:
///
/// ```text
/// K(r, x; s, y) = -phi_{r,s}(x, y)
///   + sum_{i,j} C(N-r, y_i - x) C(s, y - j) / C(N+n-1, y_i - 1)
///     * sum_{k=1}^{j} C(N+n-1, k-1) C(N-1+j-k, j-k) (-1)^(k+j)
///                     prod_{l != i} (k - y_l)/(y_i - y_l)
/// ```
///
/// This transcription shares no code with [`KernelContext::kernel`]; the two
/// must agree exactly, which the verification sweeps enforce.
pub fn general_kernel(
    spec: &EnsembleSpec,
    r: usize,
    x: i64,
    s: usize,
    y: i64,
) -> Result<BigRational> {
    let max = spec.max_interior_time();
    for t in [r, s] {
        if t < 1 || t > max {
            return Err(Error::BoundaryTime { t, max });
        }
    }
    let n = spec.walkers() as i64;
    let steps = spec.steps() as i64;
    let ends = spec.ends();

    let mut value = -BigRational::from_integer(transition_count(r, s, x, y));
    for i in 1..=n {
        let yi = ends[(i - 1) as usize];
        let left = binom(steps - r as i64, yi - x);
        if left.is_zero() {
            continue;
        }
        let lead = binom(steps + n - 1, yi - 1);
        for j in 1..=n {
            let right = binom(s as i64, y - j);
            if right.is_zero() {
                continue;
            }
            let mut inner = BigRational::zero();
            for k in 1..=j {
                let mut num = binom(steps + n - 1, k - 1)
                    * if k == j {
                        BigInt::one()
                    } else {
                        binom(steps - 1 + j - k, j - k)
                    };
                let mut den = BigInt::one();
                for l in 1..=n {
                    if l != i {
                        let yl = ends[(l - 1) as usize];
                        num *= k - yl;
                        den *= yi - yl;
                    }
                }
                let mut term = BigRational::new(num, den);
                if (k + j) % 2 == 1 {
                    term = -term;
                }
                inner += term;
            }
            value += BigRational::new(&left * right, lead.clone()) * inner;
        }
    }
    Ok(value)
}

/// The half-hexagon kernel of order `n` (`N = n + 1`, walker `i` ends at
/// `2i`), with the endpoint products collapsed:
/// `prod_{l != i} (2i - 2l) = (-1)^(n-i) 2^(n-1) (i-1)! (n-i)!`, so
///
/// ```text
/// K(r, x; s, y) = -phi_{r,s}(x, y)
///   + sum_{i,j} C(n+1-r, 2i - x) C(s, y - j) / C(2n, 2i - 1)
///     * sum_{k=1}^{j} C(2n, k-1) C(n+j-k, j-k)
///         (-1)^(k+j+i+n) / (2^(n-1) (i-1)! (n-i)!) * prod_{l != i} (k - 2l)
/// ```
///
/// Interior times run over `1..=n`.
pub fn half_hexagon_kernel(n: usize, r: usize, x: i64, s: usize, y: i64) -> Result<BigRational> {
    assert!(n >= 1, "half-hexagon order must be at least 1");
    for t in [r, s] {
        if t < 1 || t > n {
            return Err(Error::BoundaryTime { t, max: n });
        }
    }
    let ni = n as i64;
    let pow2 = BigInt::one() << (n - 1);

    let mut value = -BigRational::from_integer(transition_count(r, s, x, y));
    for i in 1..=ni {
        let left = binom(ni + 1 - r as i64, 2 * i - x);
        if left.is_zero() {
            continue;
        }
        let lead = binom(2 * ni, 2 * i - 1);
        let fact = factorial(&BigInt::from(i - 1)) * factorial(&BigInt::from(ni - i));
        let den = &lead * &pow2 * fact;
        for j in 1..=ni {
            let right = binom(s as i64, y - j);
            if right.is_zero() {
                continue;
            }
            let mut inner = BigInt::zero();
            for k in 1..=j {
                let mut term = binom(2 * ni, k - 1)
                    * if k == j {
                        BigInt::one()
                    } else {
                        binom(ni + j - k, j - k)
                    };
                for l in 1..=ni {
                    if l != i {
                        term *= k - 2 * l;
                    }
                }
                if (k + j + i + ni) % 2 == 1 {
                    term = -term;
                }
                inner += term;
            }
            value += BigRational::new(&left * right * inner, den.clone());
        }
    }
    Ok(value)
}

/// Every kernel value on the full grid `r, s` interior, `x, y` in
/// `[x_lo, x_hi]`, evaluated through the cached-inverse route. Parallel over
/// grid points under the `parallel` feature.
pub fn kernel_grid(
    ctx: &KernelContext,
    x_lo: i64,
    x_hi: i64,
) -> Vec<((usize, i64, usize, i64), BigRational)> {
    kernel_grid_impl(ctx, x_lo, x_hi, true)
}

/// Sequential twin of [`kernel_grid`] for benchmarking.
pub fn kernel_grid_seq(
    ctx: &KernelContext,
    x_lo: i64,
    x_hi: i64,
) -> Vec<((usize, i64, usize, i64), BigRational)> {
    kernel_grid_impl(ctx, x_lo, x_hi, false)
}

fn kernel_grid_impl(
    ctx: &KernelContext,
    x_lo: i64,
    x_hi: i64,
    parallel: bool,
) -> Vec<((usize, i64, usize, i64), BigRational)> {
    let max = ctx.spec().max_interior_time();
    let mut args = Vec::new();
    for r in 1..=max {
        for s in 1..=max {
            for x in x_lo..=x_hi {
                for y in x_lo..=x_hi {
                    args.push((r, x, s, y));
                }
            }
        }
    }
    par::map_collect(args, parallel, |(r, x, s, y)| {
        let value = ctx
            .kernel(r, x, s, y)
            .expect("grid times are interior by construction");
        ((r, x, s, y), value)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::DEFAULT_ENUM_CAP;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn context_uses_the_closed_form_inverse() {
        let spec = EnsembleSpec::half_hexagon(2);
        let ctx = KernelContext::new(spec.clone());
        assert_eq!(
            *ctx.matrix_inverse(),
            spec.lgv_matrix().inverse().unwrap()
        );
    }

    #[test]
    fn one_point_values_order_one() {
        // The single walker sits at 1 or 2 at the interior time, uniformly.
        let ctx = KernelContext::new(EnsembleSpec::half_hexagon(1));
        assert_eq!(ctx.kernel(1, 1, 1, 1).unwrap(), rat(1, 2));
        assert_eq!(ctx.kernel(1, 2, 1, 2).unwrap(), rat(1, 2));
        assert_eq!(half_hexagon_kernel(1, 1, 1, 1, 1).unwrap(), rat(1, 2));
        assert_eq!(half_hexagon_kernel(1, 1, 2, 1, 2).unwrap(), rat(1, 2));
    }

    #[test]
    fn off_strip_sites_have_zero_density() {
        let ctx = KernelContext::new(EnsembleSpec::half_hexagon(2));
        for x in [-3, -1, 0, 5, 6, 9] {
            assert!(ctx.kernel(1, x, 1, x).unwrap().is_zero(), "x = {x}");
            assert!(ctx.kernel(2, x, 2, x).unwrap().is_zero(), "x = {x}");
        }
    }

    #[test]
    fn one_point_values_match_enumeration_order_two() {
        let spec = EnsembleSpec::half_hexagon(2);
        let ctx = KernelContext::new(spec.clone());
        let configs = spec.enumerate_configurations(DEFAULT_ENUM_CAP).unwrap();
        for t in 1..=2 {
            for x in 1..=4 {
                let kernel = ctx.kernel(t, x, t, x).unwrap();
                let empirical = spec
                    .empirical_correlation_in(&configs, &[SpaceTimePoint::new(t, x)])
                    .unwrap();
                assert_eq!(kernel, empirical, "t={t} x={x}");
            }
        }
        // Frozen spot value: six of the eight configurations occupy (1, 1).
        assert_eq!(ctx.kernel(1, 1, 1, 1).unwrap(), rat(3, 4));
    }

    #[test]
    fn boundary_times_are_rejected() {
        let spec = EnsembleSpec::half_hexagon(2);
        let ctx = KernelContext::new(spec.clone());
        assert!(matches!(
            ctx.kernel(0, 1, 1, 1),
            Err(Error::BoundaryTime { .. })
        ));
        assert!(matches!(
            ctx.kernel(1, 1, 3, 1),
            Err(Error::BoundaryTime { .. })
        ));
        assert!(matches!(
            general_kernel(&spec, 3, 1, 1, 1),
            Err(Error::BoundaryTime { .. })
        ));
        assert!(matches!(
            half_hexagon_kernel(2, 1, 1, 0, 1),
            Err(Error::BoundaryTime { .. })
        ));
    }

    #[test]
    fn three_kernel_forms_agree_on_small_grids() {
        for n in 1..=3usize {
            let spec = EnsembleSpec::half_hexagon(n);
            let ctx = KernelContext::new(spec.clone());
            for r in 1..=n {
                for s in 1..=n {
                    for x in 0..=(2 * n as i64 + 1) {
                        for y in 0..=(2 * n as i64 + 1) {
                            let em = ctx.kernel(r, x, s, y).unwrap();
                            let general = general_kernel(&spec, r, x, s, y).unwrap();
                            let hh = half_hexagon_kernel(n, r, x, s, y).unwrap();
                            assert_eq!(em, general, "n={n} r={r} x={x} s={s} y={y}");
                            assert_eq!(em, hh, "n={n} r={r} x={x} s={s} y={y}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn general_kernel_covers_non_half_hexagon_endpoints() {
        let spec = EnsembleSpec::new(4, vec![3, 5]).unwrap();
        let ctx = KernelContext::new(spec.clone());
        let configs = spec.enumerate_configurations(DEFAULT_ENUM_CAP).unwrap();
        for t in 1..=3 {
            for x in 1..=5 {
                let expected = spec
                    .empirical_correlation_in(&configs, &[SpaceTimePoint::new(t, x)])
                    .unwrap();
                assert_eq!(ctx.kernel(t, x, t, x).unwrap(), expected, "t={t} x={x}");
                assert_eq!(
                    general_kernel(&spec, t, x, t, x).unwrap(),
                    expected,
                    "t={t} x={x}"
                );
            }
        }
    }

    #[test]
    fn correlation_direct_values() {
        let spec = EnsembleSpec::half_hexagon(2);
        let ctx = KernelContext::new(spec.clone());
        assert_eq!(ctx.correlation(&[]).unwrap(), BigRational::one());
        let configs = spec.enumerate_configurations(DEFAULT_ENUM_CAP).unwrap();
        let sites: Vec<SpaceTimePoint> = (1..=2)
            .flat_map(|t| (1..=4).map(move |x| SpaceTimePoint::new(t, x)))
            .collect();
        for a in 0..sites.len() {
            for b in 0..sites.len() {
                if a == b {
                    continue;
                }
                let q = [sites[a], sites[b]];
                let corr = ctx.correlation(&q).unwrap();
                let emp = spec.empirical_correlation_in(&configs, &q).unwrap();
                assert_eq!(corr, emp, "{q:?}");
                assert!(corr >= BigRational::zero() && corr <= BigRational::one());
            }
        }
    }

    #[test]
    fn correlation_rejects_duplicates() {
        let ctx = KernelContext::new(EnsembleSpec::half_hexagon(2));
        let p = SpaceTimePoint::new(1, 2);
        assert!(matches!(
            ctx.correlation(&[p, p]),
            Err(Error::DuplicateQueryPoint { .. })
        ));
    }

    #[test]
    fn occupation_sums_equal_walker_count() {
        for n in 1..=4usize {
            let ctx = KernelContext::new(EnsembleSpec::half_hexagon(n));
            let expected = BigRational::from_integer(BigInt::from(n));
            for t in 1..=n {
                assert_eq!(ctx.occupation_sum(t).unwrap(), expected, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn grid_parallel_matches_sequential() {
        let ctx = KernelContext::new(EnsembleSpec::half_hexagon(3));
        assert_eq!(kernel_grid(&ctx, 0, 7), kernel_grid_seq(&ctx, 0, 7));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Reordering the query sites conjugates the kernel matrix by a
        /// permutation, so the correlation determinant is unchanged.
        #[test]
        fn correlation_is_permutation_invariant(perm in 0usize..6, pick in proptest::sample::subsequence(vec![(1usize, 1i64), (1, 2), (1, 3), (2, 2), (2, 3), (2, 4)], 2..4)) {
            let ctx = KernelContext::new(EnsembleSpec::half_hexagon(2));
            let mut points: Vec<SpaceTimePoint> =
                pick.iter().map(|&(t, x)| SpaceTimePoint::new(t, x)).collect();
            let base = ctx.correlation(&points).unwrap();
            // a couple of deterministic shuffles driven by `perm`
            let len = points.len();
            points.rotate_left(perm % len);
            if perm % 2 == 1 {
                points.reverse();
            }
            prop_assert_eq!(base, ctx.correlation(&points).unwrap());
        }
    }
}
