//! The parametric binomial matrix `M = [C(A, B_j - i)]`, its closed-form
//! inverse, and the companion determinant and reduced-minor formulas.
//!
//! Everything here is evaluated term by term over exact integers and
//! rationals, exactly as the closed forms are written; no simplification is
//! attempted. The generic elimination routines in [`crate::matrix`] serve as
//! the independent oracle for all of it.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, vandermonde};
use crate::matrix::ExactMatrix;

/// Parameters `(A, B_1..B_n)` of the binomial matrix `[C(A, B_j - i)]`.
///
/// Construction enforces the validity region for integer evaluation:
/// `A >= 0`, the `B_i` pairwise distinct, and `1 <= B_i <= A + n`. Outside
/// that range the leading binomial of the closed-form inverse vanishes and
/// its reciprocal is undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialMatrixSpec {
    a: BigInt,
    b: Vec<BigInt>,
}

impl BinomialMatrixSpec {
    pub fn new(a: BigInt, b: Vec<BigInt>) -> Result<Self> {
        if a.is_negative() {
            return Err(Error::NegativeParameter(a));
        }
        if b.is_empty() {
            return Err(Error::EmptyParameters);
        }
        let max = &a + BigInt::from(b.len());
        for value in &b {
            if value < &BigInt::one() || value > &max {
                return Err(Error::ParameterOutOfRange {
                    value: value.clone(),
                    max,
                });
            }
        }
        let mut sorted = b.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateParameter(w[0].clone()));
        }
        Ok(BinomialMatrixSpec { a, b })
    }

    /// The half-hexagon specialization `A = n + 1`, `B_j = 2j`, whose matrix
    /// counts the tilings of the order-`n` region.
    pub fn half_hexagon(n: usize) -> Self {
        assert!(n >= 1, "half-hexagon order must be at least 1");
        BinomialMatrixSpec {
            a: BigInt::from(n as i64 + 1),
            b: (1..=n as i64).map(|j| BigInt::from(2 * j)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    /// The matrix itself: entry `(i, j)` is `C(A, B_j - i)`, 1-based.
    pub fn matrix(&self) -> ExactMatrix {
        let n = self.n();
        ExactMatrix::from_fn1(n, n, |i, j| {
            let k = &self.b[j - 1] - BigInt::from(i as i64);
            BigRational::from_integer(binomial(&self.a, &k))
        })
    }

    /// The closed-form inverse:
    ///
    /// ```text
    /// inv(i,j) = C(A+n-1, B_i-1)^-1
    ///            * sum_{k=1}^{j} C(A+n-1, k-1) C(A-1+j-k, j-k) (-1)^(k+j)
    ///                            prod_{l != i} (k - B_l)/(B_i - B_l)
    /// ```
    ///
    /// For `k = j` the middle binomial is the empty product 1 (this also
    /// covers `A = 0`, where the printed top would be negative).
    pub fn closed_form_inverse(&self) -> ExactMatrix {
        self.closed_form_inverse_signed(false)
    }

    /// Same evaluation with the alternating sign deliberately negated; used
    /// by the self-checking machinery to prove the verification sweeps can
    /// detect a broken transcription.
    pub(crate) fn closed_form_inverse_signed(&self, negate_sign: bool) -> ExactMatrix {
        let n = self.n();
        let a = &self.a;
        let an1 = a + BigInt::from(n as i64 - 1);

        // lead[i] = C(A+n-1, B_i - 1); nonzero on the validity region.
        let lead: Vec<BigInt> = (0..n)
            .map(|i| binomial(&an1, &(&self.b[i] - 1)))
            .collect();
        // c1[k] = C(A+n-1, k-1).
        let c1: Vec<BigInt> = (1..=n)
            .map(|k| binomial(&an1, &BigInt::from(k as i64 - 1)))
            .collect();
        // lagrange[i][k] = prod_{l != i} (k - B_l) / (B_i - B_l); shared by
        // every column j, so it is computed once per (i, k).
        let lagrange: Vec<Vec<BigRational>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|k| {
                        let kk = BigInt::from(k as i64);
                        let mut num = BigInt::one();
                        let mut den = BigInt::one();
                        for l in 1..=n {
                            if l != i {
                                num *= &kk - &self.b[l - 1];
                                den *= &self.b[i - 1] - &self.b[l - 1];
                            }
                        }
                        BigRational::new(num, den)
                    })
                    .collect()
            })
            .collect();

        ExactMatrix::from_fn1(n, n, |i, j| {
            let mut sum = BigRational::zero();
            for k in 1..=j {
                let middle = if k == j {
                    BigInt::one()
                } else {
                    binomial(&(a - 1 + BigInt::from((j - k) as i64)), &BigInt::from((j - k) as i64))
                };
                let mut term =
                    BigRational::from_integer(&c1[k - 1] * middle) * &lagrange[i - 1][k - 1];
                let negative = (k + j) % 2 == 1;
                if negative != negate_sign {
                    term = -term;
                }
                sum += term;
            }
            sum / BigRational::from_integer(lead[i - 1].clone())
        })
    }
}

/// Closed form for `det [C(A, shifts_i + j)]` over `i, j = 1..n`:
///
/// ```text
/// prod_{i<j} (L_i - L_j) * prod_i (A+i-1)!  /  ( prod_i (L_i+n)! * prod_i (A-L_i-1)! )
/// ```
///
/// Requires `L_i + n >= 0` and `A - L_i - 1 >= 0` so every factorial is
/// defined; duplicate shifts are fine (both sides vanish).
pub fn shifted_binomial_det(a: &BigInt, shifts: &[BigInt]) -> Result<BigRational> {
    if a.is_negative() {
        return Err(Error::NegativeParameter(a.clone()));
    }
    let n = BigInt::from(shifts.len() as i64);
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for (i, l) in shifts.iter().enumerate() {
        let down = l + &n;
        if down.is_negative() {
            return Err(Error::UndefinedFactorial(down));
        }
        let up: BigInt = a - l - 1;
        if up.is_negative() {
            return Err(Error::UndefinedFactorial(up));
        }
        numer *= crate::exact::factorial(&(a + BigInt::from(i as i64)));
        denom *= crate::exact::factorial(&down) * crate::exact::factorial(&up);
        for m in shifts.iter().skip(i + 1) {
            numer *= l - m;
        }
    }
    Ok(BigRational::new(numer, denom))
}

/// The scalar left over from the minor of `[C(A, B_j - i)]` with row `s`
/// and one column struck, after the per-column factor
/// `A! / ((b_i - 1)! (A - b_i + n)!)` is taken out:
///
/// ```text
/// P(n, s) = V(bbar) * prod_{r=1}^{n-2} (A+r)^(n-1-r)
///           * sum_{k=1}^{s} (-1)^(k+1) C(A+n-1, k-1) C(A-1+s-k, s-k)
///                           prod_l (bbar_l - k)
/// ```
///
/// where `V` is the Vandermonde product. The sum is obtained by pushing the
/// closed-form inverse through Cramer's rule, and is pinned by tests both to
/// struck-minor determinants and to the explicit `s = 1, 2` polynomials.
/// `bbar` may hold arbitrary integers; the expression is a polynomial in
/// them.
pub fn reduced_minor(n: usize, s: usize, a: &BigInt, bbar: &[BigInt]) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::EmptyParameters);
    }
    if !(1..=n).contains(&s) {
        return Err(Error::IndexOutOfRange { index: s, max: n });
    }
    if bbar.len() != n - 1 {
        return Err(Error::LengthMismatch {
            expected: n - 1,
            got: bbar.len(),
        });
    }
    if a.is_negative() {
        return Err(Error::NegativeParameter(a.clone()));
    }

    let mut prefactor = vandermonde(bbar);
    for r in 1..=n.saturating_sub(2) {
        let base = a + BigInt::from(r as i64);
        for _ in 0..(n - 1 - r) {
            prefactor *= &base;
        }
    }

    let an1 = a + BigInt::from(n as i64 - 1);
    let mut sum = BigInt::zero();
    for k in 1..=s {
        let middle = if k == s {
            BigInt::one()
        } else {
            binomial(&(a - 1 + BigInt::from((s - k) as i64)), &BigInt::from((s - k) as i64))
        };
        let mut term = binomial(&an1, &BigInt::from(k as i64 - 1)) * middle;
        for b in bbar {
            term *= b - BigInt::from(k as i64);
        }
        if k % 2 == 0 {
            term = -term;
        }
        sum += term;
    }
    Ok(prefactor * sum)
}

/// Both sides of the Lagrange-interpolation identity used to collapse the
/// `B`-dependence of `M * M^-1`:
///
/// ```text
/// sum_beta C(A+n-1, B_beta-1)^-1 C(A, B_beta-alpha)
///          prod_{i != beta} (k - B_i)/(B_beta - B_i)
///   =  C(A+n-1, k-1)^-1 C(A, k-alpha)
/// ```
///
/// The summand interpolates a degree-(n-1) polynomial in its node variable,
/// so the interpolation through the n nodes `B_i` reproduces it at any
/// integer `k` in `[1, A+n]`. Returns `(lhs, rhs)`; callers assert equality.
pub fn lagrange_sides(
    spec: &BinomialMatrixSpec,
    alpha: usize,
    k: &BigInt,
) -> Result<(BigRational, BigRational)> {
    let n = spec.n();
    if !(1..=n).contains(&alpha) {
        return Err(Error::IndexOutOfRange {
            index: alpha,
            max: n,
        });
    }
    let a = spec.a();
    let an1 = a + BigInt::from(n as i64 - 1);
    let max = a + BigInt::from(n as i64);
    if k < &BigInt::one() || k > &max {
        return Err(Error::ParameterOutOfRange {
            value: k.clone(),
            max,
        });
    }
    let alpha_big = BigInt::from(alpha as i64);

    let mut lhs = BigRational::zero();
    for beta in 1..=n {
        let b_beta = &spec.b()[beta - 1];
        let mut num = binomial(a, &(b_beta - &alpha_big));
        let mut den = binomial(&an1, &(b_beta - 1));
        for i in 1..=n {
            if i != beta {
                num *= k - &spec.b()[i - 1];
                den *= b_beta - &spec.b()[i - 1];
            }
        }
        lhs += BigRational::new(num, den);
    }
    let rhs = BigRational::new(binomial(a, &(k - &alpha_big)), binomial(&an1, &(k - 1)));
    Ok((lhs, rhs))
}
