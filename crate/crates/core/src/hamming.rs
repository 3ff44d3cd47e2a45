//! Positive definiteness on the Hamming cube `{-1,1}^n`.
//!
//! A function of the inner product takes the n+1 values `f(1 - 2d/n)` for
//! Hamming distance `d`. It is positive definite on the cube exactly when
//! its expansion over the Krawtchouk members of degrees `0..=n` has only
//! nonnegative coefficients, and the expansion is unique. The limit probe
//! measures how fast the scaled members `j!/n^j K_j` approach the monomial
//! `u^j` as the cube dimension grows.

use crate::rat::{round_half_even, Int, Rat};
use num::integer::binomial;
use num::traits::ToPrimitive;
use num::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HammingError {
    #[error("cube dimension must be at least 1")]
    BadDimension,
    #[error("degree {j} out of range for cube dimension {n}")]
    DegreeOutOfRange { n: usize, j: usize },
    #[error("distance {d} out of range for cube dimension {n}")]
    DistanceOutOfRange { n: usize, d: usize },
    #[error("need {expected} values for cube dimension {n}, got {got}")]
    BadLength { n: usize, expected: usize, got: usize },
    #[error("argument {0} lies outside [-1, 1]")]
    ArgOutOfRange(String),
}

/// Exact value of the degree-`j` Krawtchouk member for the cube `{-1,1}^n`
/// at integer distance `d`: the alternating sum of products of binomials
/// `sum_k (-1)^k C(d,k) C(n-d,j-k)`.
pub fn krawtchouk_value(n: usize, j: usize, d: usize) -> Result<Rat, HammingError> {
    if j > n {
        return Err(HammingError::DegreeOutOfRange { n, j });
    }
    if d > n {
        return Err(HammingError::DistanceOutOfRange { n, d });
    }
    let mut total = Int::zero();
    for k in 0..=j {
        let term = binomial(Int::from(d), Int::from(k))
            * binomial(Int::from(n - d), Int::from(j - k));
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(Rat::from_integer(total))
}

/// A function of the inner product on the cube `{-1,1}^n`, stored as its
/// values at distances `d = 0..=n` (inner product `1 - 2d/n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeFunction {
    n: usize,
    values: Vec<Rat>,
}

impl CubeFunction {
    pub fn new(n: usize, values: Vec<Rat>) -> Result<CubeFunction, HammingError> {
        if n == 0 {
            return Err(HammingError::BadDimension);
        }
        if values.len() != n + 1 {
            return Err(HammingError::BadLength { n, expected: n + 1, got: values.len() });
        }
        Ok(CubeFunction { n, values })
    }

    /// Builds the table from a function of the distance.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Rat) -> Result<CubeFunction, HammingError> {
        CubeFunction::new(n, (0..=n).map(f).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value_at(&self, d: usize) -> Result<&Rat, HammingError> {
        self.values
            .get(d)
            .ok_or(HammingError::DistanceOutOfRange { n: self.n, d })
    }
}

/// Coefficients of a cube function over the Krawtchouk members: the unique
/// `a_0..a_n` with `f(d) = sum_j a_j K_j(d)` at every distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrawtchoukExpansion {
    n: usize,
    coefficients: Vec<Rat>,
}

impl KrawtchoukExpansion {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coefficients
    }

    /// Evaluates `sum_j a_j K_j(d)` exactly.
    pub fn reconstruct(&self, d: usize) -> Result<Rat, HammingError> {
        let mut acc = Rat::zero();
        for (j, a) in self.coefficients.iter().enumerate() {
            if !a.is_zero() {
                acc += a * krawtchouk_value(self.n, j, d)?;
            }
        }
        Ok(acc)
    }
}

/// Expands a cube function over the Krawtchouk members by solving the
/// exact (n+1) x (n+1) linear system; the matrix `[K_j(d)]` is invertible
/// because the members have distinct degrees. The reconstruction identity
/// is asserted before returning.
pub fn expand(f: &CubeFunction) -> KrawtchoukExpansion {
    let n = f.n;
    let matrix: Vec<Vec<Rat>> = (0..=n)
        .map(|d| {
            (0..=n)
                .map(|j| krawtchouk_value(n, j, d).expect("indices stay within the cube"))
                .collect()
        })
        .collect();
    let coefficients = crate::psd::solve_linear_system(&matrix, &f.values)
        .expect("distinct degrees make the Krawtchouk matrix invertible");
    let expansion = KrawtchoukExpansion { n, coefficients };
    for (d, want) in f.values.iter().enumerate() {
        let got = expansion.reconstruct(d).expect("distance within range");
        assert_eq!(&got, want, "expansion must reconstruct the input exactly");
    }
    expansion
}

/// Positive definiteness test on the cube: true iff every expansion
/// coefficient is exactly nonnegative. The expansion is returned either
/// way so callers can inspect the offending coefficient.
pub fn is_pd_on_cube(f: &CubeFunction) -> (bool, KrawtchoukExpansion) {
    let expansion = expand(f);
    let pd = expansion.coefficients.iter().all(|a| !a.is_negative());
    (pd, expansion)
}

/// One data point of the large-`n` limit: the scaled member value
/// `j!/n^j K_j(d_n)` against the monomial `u^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitProbe {
    /// The rounded distance `d_n` with `1 - 2 d_n / n` closest to `u`.
    pub distance: usize,
    /// `j!/n^j K_j(d_n)`, exactly.
    pub scaled: Rat,
    /// `|scaled - u^j|`, exactly.
    pub error: Rat,
}

/// Evaluates the scaled degree-`j` member at the distance tracking inner
/// product `u`, with `d_n` the nearest integer to `n(1-u)/2` (ties toward
/// even, a fixed deterministic choice).
pub fn limit_probe(j: usize, u: &Rat, n: usize) -> Result<LimitProbe, HammingError> {
    if n == 0 {
        return Err(HammingError::BadDimension);
    }
    if j > n {
        return Err(HammingError::DegreeOutOfRange { n, j });
    }
    if u.abs() > Rat::one() {
        return Err(HammingError::ArgOutOfRange(crate::rat::rat_to_string(u)));
    }
    let target = Rat::from_integer(Int::from(n)) * (Rat::one() - u) / Rat::from_integer(2.into());
    let distance = round_half_even(&target)
        .to_usize()
        .expect("n(1-u)/2 lies in [0, n]");
    debug_assert!(distance <= n);
    let mut factorial = Int::from(1);
    for i in 2..=j {
        factorial *= Int::from(i);
    }
    let scale = Rat::new(factorial, Int::from(n).pow(j as u32));
    let scaled = krawtchouk_value(n, j, distance)? * scale;
    let error = (&scaled - u.pow(j as i32)).abs();
    Ok(LimitProbe { distance, scaled, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::OrthoFamily;
    use crate::rat::{rat, rat_int};
    use num::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degree_zero_is_constant_one() {
        for (n, d) in [(1, 0), (4, 2), (9, 9), (12, 5)] {
            assert_eq!(krawtchouk_value(n, 0, d).unwrap(), Rat::one());
        }
    }

    #[test]
    fn degree_one_is_n_minus_2d() {
        for n in 1..=8 {
            for d in 0..=n {
                assert_eq!(
                    krawtchouk_value(n, 1, d).unwrap(),
                    rat_int(n as i64 - 2 * d as i64)
                );
            }
        }
    }

    #[test]
    fn spot_value_matches_hand_sum() {
        // 1*C(2,0)C(2,2) - C(2,1)C(2,1) + C(2,2)C(2,0) = 1 - 4 + 1.
        assert_eq!(krawtchouk_value(4, 2, 2).unwrap(), rat_int(-2));
    }

    #[test]
    fn matches_polynomial_family() {
        // The recurrence-built family evaluated at integer distances must
        // agree with the direct binomial sum.
        let n = 6;
        let family = OrthoFamily::krawtchouk(n).unwrap();
        for j in 0..=n {
            for d in 0..=n {
                assert_eq!(
                    krawtchouk_value(n, j, d).unwrap(),
                    family.value(j, &rat_int(d as i64)).unwrap(),
                    "degree {j} at distance {d}"
                );
            }
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert_eq!(
            krawtchouk_value(3, 4, 0),
            Err(HammingError::DegreeOutOfRange { n: 3, j: 4 })
        );
        assert_eq!(
            krawtchouk_value(3, 1, 4),
            Err(HammingError::DistanceOutOfRange { n: 3, d: 4 })
        );
        assert_eq!(
            CubeFunction::new(2, vec![Rat::one()]),
            Err(HammingError::BadLength { n: 2, expected: 3, got: 1 })
        );
        assert_eq!(CubeFunction::new(0, vec![Rat::one()]), Err(HammingError::BadDimension));
        assert_eq!(
            limit_probe(1, &rat(3, 2), 10),
            Err(HammingError::ArgOutOfRange("3/2".into()))
        );
    }

    #[test]
    fn constant_expands_to_degree_zero() {
        let f = CubeFunction::from_fn(5, |_| Rat::one()).unwrap();
        let (pd, exp) = is_pd_on_cube(&f);
        assert!(pd);
        assert_eq!(exp.coefficients()[0], Rat::one());
        assert!(exp.coefficients()[1..].iter().all(|a| a.is_zero()));
    }

    #[test]
    fn linear_expands_to_degree_one() {
        // f(d) = (n-2d)/n = K_1(d)/n.
        let n = 7usize;
        let f = CubeFunction::from_fn(n, |d| rat(n as i64 - 2 * d as i64, n as i64)).unwrap();
        let exp = expand(&f);
        for (j, a) in exp.coefficients().iter().enumerate() {
            if j == 1 {
                assert_eq!(*a, rat(1, n as i64));
            } else {
                assert!(a.is_zero());
            }
        }
    }

    #[test]
    fn square_is_pd_with_known_coefficients() {
        // f(u) = u^2 on the 4-cube: f(d) = ((4-2d)/4)^2.
        let f = CubeFunction::from_fn(4, |d| rat(4 - 2 * d as i64, 4).pow(2)).unwrap();
        let (pd, exp) = is_pd_on_cube(&f);
        assert!(pd);
        let want = vec![rat(1, 4), rat_int(0), rat(1, 8), rat_int(0), rat_int(0)];
        assert_eq!(exp.coefficients(), &want[..]);
    }

    #[test]
    fn negated_linear_is_not_pd() {
        let n = 6usize;
        let f = CubeFunction::from_fn(n, |d| -rat(n as i64 - 2 * d as i64, n as i64)).unwrap();
        let (pd, exp) = is_pd_on_cube(&f);
        assert!(!pd);
        assert_eq!(exp.coefficients()[1], rat(-1, n as i64));
    }

    #[test]
    fn expansion_round_trips_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(20260819);
        for n in 1..=12 {
            let f = CubeFunction::from_fn(n, |_| {
                rat(rng.random_range(-9..=9), rng.random_range(1..=9))
            })
            .unwrap();
            // expand() asserts reconstruction internally; confirm the values
            // once more through the public accessor.
            let exp = expand(&f);
            for d in 0..=n {
                assert_eq!(exp.reconstruct(d).unwrap(), *f.value_at(d).unwrap());
            }
        }
    }

    #[test]
    fn pointwise_products_of_pd_stay_pd() {
        // Schur closure on the cube: build PD functions from random
        // nonnegative coefficients and multiply them pointwise.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 2..=8 {
            for _ in 0..6 {
                let mut make = || {
                    let coeffs: Vec<Rat> = (0..=n)
                        .map(|_| rat(rng.random_range(0..=6), rng.random_range(1..=6)))
                        .collect();
                    CubeFunction::from_fn(n, |d| {
                        coeffs
                            .iter()
                            .enumerate()
                            .map(|(j, a)| a * krawtchouk_value(n, j, d).unwrap())
                            .sum()
                    })
                    .unwrap()
                };
                let f = make();
                let g = make();
                assert!(is_pd_on_cube(&f).0);
                assert!(is_pd_on_cube(&g).0);
                let h = CubeFunction::from_fn(n, |d| {
                    f.value_at(d).unwrap() * g.value_at(d).unwrap()
                })
                .unwrap();
                let (pd, exp) = is_pd_on_cube(&h);
                assert!(pd, "product lost positive definiteness: {:?}", exp.coefficients());
            }
        }
    }

    #[test]
    fn limit_probe_degree_zero_and_one() {
        let (j0, u, n) = (0, rat(1, 2), 100);
        let probe = limit_probe(j0, &u, n).unwrap();
        assert_eq!(probe.scaled, Rat::one());
        assert!(probe.error.is_zero());
        // Degree one is exact whenever u = 1 - 2d/n exactly.
        let probe = limit_probe(1, &u, n).unwrap();
        assert_eq!(probe.distance, 25);
        assert!(probe.error.is_zero());
    }

    #[test]
    fn limit_probe_ties_round_toward_even() {
        // n(1-u)/2 = 5/2 at n=5, u=0: ties go to the even integer 2.
        let probe = limit_probe(1, &rat_int(0), 5).unwrap();
        assert_eq!(probe.distance, 2);
    }

    #[test]
    fn limit_sweep_envelope_and_decay() {
        // For every degree <= 4 and sampled u, the scaled member tracks u^j
        // within 10/n across n = 100..3200, and the error never grows as n
        // doubles. The worst n*error observed over this sweep is just under
        // 6, so the envelope has real headroom.
        let us = [rat_int(-1), rat(-1, 2), rat_int(0), rat(1, 2), rat_int(1)];
        let ns = [100usize, 200, 400, 800, 1600, 3200];
        for j in 0..=4 {
            for u in &us {
                let mut prev: Option<Rat> = None;
                for &n in &ns {
                    let probe = limit_probe(j, u, n).unwrap();
                    let envelope = rat(10, n as i64);
                    assert!(
                        probe.error <= envelope,
                        "degree {j}, u {u}, n {n}: error exceeds 10/n"
                    );
                    if let Some(p) = prev {
                        assert!(probe.error <= p, "degree {j}, u {u}: error grew at n {n}");
                    }
                    prev = Some(probe.error);
                }
            }
        }
    }
}
