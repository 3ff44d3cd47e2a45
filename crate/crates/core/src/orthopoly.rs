//! Orthogonal polynomial families with exact rational recurrences.
//!
//! Two kinds are supported: Jacobi families on `[-1, 1]` (covering the
//! sphere-adapted symmetric case used by the linear-programming bounds) and
//! Krawtchouk families on the integer grid `{0, ..., n}` with binomial
//! weights. Both expose plain and 1-normalized members, leading
//! coefficients, squared-norm ratios, a weighted Christoffel-Darboux kernel,
//! and root-placement checks backed by Sturm chains.
//!
//! All recurrence denominators are nonzero on the admissible parameter range
//! (`alpha, beta > -1`, grid size `n >= 1`), so every member is produced
//! exactly.

use crate::poly::Poly;
use crate::rat::{rat, rat_int, rat_to_f64, Rat};
use crate::sturm::{self, BoundaryCount, RootIsolation, SturmChain, SturmError};
use num::{One, Signed, Zero};
use std::f64::consts::PI;
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OrthoError {
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("degree {degree} exceeds the family's maximum degree {max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error(transparent)]
    Root(#[from] SturmError),
}

/// Family parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// Jacobi family orthogonal on `[-1, 1]` against `(1-x)^alpha (1+x)^beta`.
    Jacobi { alpha: Rat, beta: Rat },
    /// Krawtchouk family orthogonal on `{0, ..., n}` against binomial weights.
    Krawtchouk { n: usize },
}

/// An orthogonal family with a lazily grown, internally synchronized cache of
/// coefficient vectors. Read access after construction is thread-safe.
pub struct OrthoFamily {
    kind: FamilyKind,
    cache: Mutex<Vec<Poly>>,
}

impl OrthoFamily {
    pub fn jacobi(alpha: Rat, beta: Rat) -> Result<OrthoFamily, OrthoError> {
        let minus_one = rat_int(-1);
        if alpha <= minus_one || beta <= minus_one {
            return Err(OrthoError::InvalidParameter(format!(
                "jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(OrthoFamily {
            kind: FamilyKind::Jacobi { alpha, beta },
            cache: Mutex::new(vec![Poly::one()]),
        })
    }

    /// The sphere-adapted symmetric Jacobi family for ambient dimension
    /// `dim >= 2`: both parameters equal `(dim - 3)/2`.
    pub fn gegenbauer(dim: usize) -> Result<OrthoFamily, OrthoError> {
        if dim < 2 {
            return Err(OrthoError::InvalidParameter(format!(
                "sphere dimension must be at least 2, got {dim}"
            )));
        }
        let a = rat(dim as i64 - 3, 2);
        OrthoFamily::jacobi(a.clone(), a)
    }

    pub fn krawtchouk(n: usize) -> Result<OrthoFamily, OrthoError> {
        if n == 0 {
            return Err(OrthoError::InvalidParameter(
                "krawtchouk grid length must be at least 1".into(),
            ));
        }
        Ok(OrthoFamily {
            kind: FamilyKind::Krawtchouk { n },
            cache: Mutex::new(vec![Poly::one()]),
        })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    /// Largest member degree, or `None` when the family is infinite.
    pub fn max_degree(&self) -> Option<usize> {
        match &self.kind {
            FamilyKind::Jacobi { .. } => None,
            FamilyKind::Krawtchouk { n } => Some(*n),
        }
    }

    /// Open interval holding every member's roots: `(-1, 1)` or `(0, n)`.
    pub fn domain(&self) -> (Rat, Rat) {
        match &self.kind {
            FamilyKind::Jacobi { .. } => (rat_int(-1), rat_int(1)),
            FamilyKind::Krawtchouk { n } => (rat_int(0), rat_int(*n as i64)),
        }
    }

    /// Argument at which members are normalized to take a known positive
    /// value: `1` for Jacobi, `0` for Krawtchouk.
    pub fn normalization_point(&self) -> Rat {
        match &self.kind {
            FamilyKind::Jacobi { .. } => rat_int(1),
            FamilyKind::Krawtchouk { .. } => rat_int(0),
        }
    }

    fn check_degree(&self, k: usize) -> Result<(), OrthoError> {
        if let Some(max) = self.max_degree() {
            if k > max {
                return Err(OrthoError::DegreeOutOfRange { degree: k, max });
            }
        }
        Ok(())
    }

    /// Recurrence `p_k = (A_k x + B_k) p_{k-1} - C_k p_{k-2}` for `k >= 1`
    /// (`C_1` is returned as zero and never used).
    fn rec_coeffs(&self, k: usize) -> (Rat, Rat, Rat) {
        debug_assert!(k >= 1);
        match &self.kind {
            FamilyKind::Jacobi { alpha, beta } => {
                if k == 1 {
                    let a1 = (alpha + beta + rat_int(2)) / rat_int(2);
                    let b1 = (alpha - beta) / rat_int(2);
                    return (a1, b1, Rat::zero());
                }
                let kq = rat_int(k as i64);
                let s = alpha + beta;
                let t0 = rat_int(2) * &kq + &s; // 2k+a+b
                let t1 = &t0 - rat_int(1);
                let t2 = &t0 - rat_int(2);
                // den = 2k (k+a+b) (2k+a+b-2) > 0 for k >= 2 on the admissible range
                let den = rat_int(2) * &kq * (&kq + &s) * &t2;
                let a_k = &t1 * &t0 * &t2 / &den;
                let b_k = &t1 * (alpha * alpha - beta * beta) / &den;
                let c_k = rat_int(2)
                    * (&kq + alpha - rat_int(1))
                    * (&kq + beta - rat_int(1))
                    * &t0
                    / &den;
                (a_k, b_k, c_k)
            }
            FamilyKind::Krawtchouk { n } => {
                let kq = rat_int(k as i64);
                let nq = rat_int(*n as i64);
                let a_k = rat_int(-2) / &kq;
                let b_k = &nq / &kq;
                let c_k = (&nq - &kq + rat_int(2)) / &kq;
                (a_k, b_k, c_k)
            }
        }
    }

    /// Plain member of degree `k` as a coefficient vector.
    pub fn poly(&self, k: usize) -> Result<Poly, OrthoError> {
        self.check_degree(k)?;
        let mut cache = self.cache.lock().expect("family cache poisoned");
        while cache.len() <= k {
            let j = cache.len();
            let (a, b, c) = self.rec_coeffs(j);
            let lin = Poly::from_coeffs(vec![b, a]);
            let mut next = &lin * &cache[j - 1];
            if j >= 2 {
                next = &next - &cache[j - 2].scale(&c);
            }
            cache.push(next);
        }
        Ok(cache[k].clone())
    }

    /// Value of the plain member at `x`, by the value recurrence in `O(k)`
    /// arithmetic operations, independent of the cached coefficients.
    pub fn value(&self, k: usize, x: &Rat) -> Result<Rat, OrthoError> {
        self.check_degree(k)?;
        if k == 0 {
            return Ok(Rat::one());
        }
        let (a1, b1, _) = self.rec_coeffs(1);
        let mut prev = Rat::one();
        let mut cur = a1 * x + b1;
        for j in 2..=k {
            let (a, b, c) = self.rec_coeffs(j);
            let next = (a * x + b) * &cur - c * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        Ok(cur)
    }

    /// Value at the normalization point, by closed-form product: the
    /// generalized binomial `C(k+alpha, k)` for Jacobi, `C(n, k)` for
    /// Krawtchouk. Strictly positive on the admissible parameter range.
    pub fn normalization_value(&self, k: usize) -> Result<Rat, OrthoError> {
        self.check_degree(k)?;
        let mut v = Rat::one();
        match &self.kind {
            FamilyKind::Jacobi { alpha, .. } => {
                for i in 1..=k {
                    let iq = rat_int(i as i64);
                    v = v * (alpha + &iq) / iq;
                }
            }
            FamilyKind::Krawtchouk { n } => {
                let nq = rat_int(*n as i64);
                for i in 1..=k {
                    let iq = rat_int(i as i64);
                    v = v * (&nq - &iq + rat_int(1)) / iq;
                }
            }
        }
        debug_assert!(v.is_positive());
        Ok(v)
    }

    /// Member rescaled to take value 1 at the normalization point.
    pub fn normalized_poly(&self, k: usize) -> Result<Poly, OrthoError> {
        let p = self.poly(k)?;
        let nv = self.normalization_value(k)?;
        Ok(p.scale(&nv.recip()))
    }

    /// Value of the 1-normalized member at `x`.
    pub fn normalized_value(&self, k: usize, x: &Rat) -> Result<Rat, OrthoError> {
        Ok(self.value(k, x)? / self.normalization_value(k)?)
    }

    /// Leading coefficient of the plain member, as the product of the
    /// recurrence slopes.
    pub fn leading_coeff(&self, k: usize) -> Result<Rat, OrthoError> {
        self.check_degree(k)?;
        let mut v = Rat::one();
        for j in 1..=k {
            v = v * self.rec_coeffs(j).0;
        }
        Ok(v)
    }

    /// Squared-norm ratio `h_k / h_0` against the family's weight, derived
    /// from the recurrence: `h_k / h_{k-1} = C_{k+1} A_k / A_{k+1}`.
    pub fn norm_ratio(&self, k: usize) -> Result<Rat, OrthoError> {
        self.check_degree(k)?;
        let mut v = Rat::one();
        let mut a_prev = if k >= 1 { self.rec_coeffs(1).0 } else { Rat::one() };
        for j in 1..=k {
            let (a_next, _, c_next) = self.rec_coeffs(j + 1);
            v = v * c_next * &a_prev / &a_next;
            a_prev = a_next;
        }
        debug_assert!(v.is_positive());
        Ok(v)
    }

    /// Weighted Christoffel-Darboux kernel
    /// `sum_{i=0..m} p_i(x) p_i(y) h_0/h_i`, scaled so the degree-0 term is
    /// `p_0(x) p_0(y)`. Computed through the closed quotient form
    /// `(k_m h_0 / (k_{m+1} h_m)) (p_{m+1}(x) p_m(y) - p_m(x) p_{m+1}(y)) / (x - y)`,
    /// which agrees with the direct sum for every orthogonal family.
    pub fn christoffel_darboux(&self, m: usize, x: &Rat, y: &Rat) -> Result<Rat, OrthoError> {
        if x == y {
            return Err(OrthoError::DegenerateInput(
                "kernel quotient needs two distinct arguments".into(),
            ));
        }
        self.check_degree(m + 1)?;
        let pm_x = self.value(m, x)?;
        let pm1_x = self.value(m + 1, x)?;
        let pm_y = self.value(m, y)?;
        let pm1_y = self.value(m + 1, y)?;
        let k_m = self.leading_coeff(m)?;
        let k_m1 = self.leading_coeff(m + 1)?;
        let h_m = self.norm_ratio(m)?;
        let num = pm1_x * pm_y - pm_x * pm1_y;
        Ok(k_m / k_m1 / h_m * num / (x - y))
    }

    /// Exact count of distinct roots of the degree-`k` member over
    /// `[lo, hi]`, with endpoint roots reported separately.
    pub fn root_count(&self, k: usize, lo: &Rat, hi: &Rat) -> Result<BoundaryCount, OrthoError> {
        let p = self.poly(k)?;
        Ok(sturm::root_count(&p, lo, hi)?)
    }

    /// Isolating intervals for the roots of the degree-`k` member over the
    /// family's open domain.
    pub fn isolate_roots(&self, k: usize) -> Result<RootIsolation, OrthoError> {
        let (lo, hi) = self.domain();
        let p = self.poly(k)?;
        Ok(sturm::isolate_roots(&p, &lo, &hi)?)
    }

    /// Certifies strict interlacing between the roots of members `k` and
    /// `k+1` inside the open domain: every one of the `k+1` gaps determined
    /// by the degree-`k` roots (outer gaps included) must hold exactly one
    /// root of the degree-`k+1` member.
    pub fn interlacing_check(&self, k: usize) -> Result<bool, OrthoError> {
        self.check_degree(k + 1)?;
        let (lo, hi) = self.domain();
        let pk = self.poly(k)?;
        let pk1 = self.poly(k + 1)?;
        let chain1 = SturmChain::new(&pk1).expect("family members are nonzero");
        if chain1.sign_at(&lo) == 0 || chain1.sign_at(&hi) == 0 {
            return Ok(false);
        }
        if chain1.count_open(&lo, &hi) != k + 1 {
            return Ok(false);
        }
        let iso = sturm::isolate_roots(&pk, &lo, &hi)?;
        if iso.at_lo || iso.at_hi || iso.intervals.len() != k {
            return Ok(false);
        }
        let keep = |x: &Rat| chain1.sign_at(x) != 0;
        let stop = |iv: &(Rat, Rat)| {
            chain1.sign_at(&iv.0) != 0
                && chain1.sign_at(&iv.1) != 0
                && chain1.count_open(&iv.0, &iv.1) == 0
        };
        let mut cuts = vec![lo.clone()];
        for iv in iso.intervals {
            let refined = sturm::refine_interval(&pk, iv, &keep, &stop, 256)?;
            cuts.push(refined.0);
            cuts.push(refined.1);
        }
        cuts.push(hi.clone());
        for g in 0..=k {
            let (a, b) = (&cuts[2 * g], &cuts[2 * g + 1]);
            if a >= b || chain1.count_open(a, b) != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Expands the product of the 1-normalized members `i` and `j` in the
    /// 1-normalized basis, exactly; returns the `i + j + 1` coefficients.
    pub fn product_in_basis(&self, i: usize, j: usize) -> Result<Vec<Rat>, OrthoError> {
        self.check_degree(i + j)?;
        let mut rem = &self.normalized_poly(i)? * &self.normalized_poly(j)?;
        let mut coeffs = vec![Rat::zero(); i + j + 1];
        for k in (0..=i + j).rev() {
            let lead = rem.coeff(k);
            if lead.is_zero() {
                continue;
            }
            let basis = self.normalized_poly(k)?;
            let c = lead / basis.coeff(k);
            rem = &rem - &basis.scale(&c);
            coeffs[k] = c;
        }
        assert!(rem.is_zero(), "triangular change of basis must terminate");
        Ok(coeffs)
    }
}

/// Heuristic amplitude envelope for the 1-normalized sphere-adapted member
/// of degree `k >= 1` at an interior point `|t| < 1`, from the classical
/// large-degree asymptotics with a factor-2 safety margin.
///
/// Computed in floating point and returned as the exact rational value of
/// the resulting `f64`; it carries no exactness guarantee and is only used
/// to decide when degree scans may stop.
pub fn darboux_envelope(dim: usize, k: usize, t: &Rat) -> Result<Rat, OrthoError> {
    if dim < 2 {
        return Err(OrthoError::InvalidParameter(format!(
            "sphere dimension must be at least 2, got {dim}"
        )));
    }
    if k == 0 {
        return Err(OrthoError::InvalidParameter(
            "envelope is defined for degree at least 1".into(),
        ));
    }
    if t.abs() >= rat_int(1) {
        return Err(OrthoError::DegenerateInput(
            "envelope needs an interior point |t| < 1".into(),
        ));
    }
    let alpha = (dim as f64 - 3.0) / 2.0;
    let mut binom = 1.0f64;
    for i in 1..=k {
        binom *= (alpha + i as f64) / i as f64;
    }
    let tf = rat_to_f64(t);
    let env = 2.0 * 2f64.powf((dim as f64 - 2.0) / 2.0)
        / (PI.sqrt()
            * (k as f64).sqrt()
            * (1.0 - tf * tf).powf((dim as f64 - 2.0) / 4.0)
            * binom);
    if !env.is_finite() {
        return Err(OrthoError::DegenerateInput(
            "envelope evaluation overflowed".into(),
        ));
    }
    Ok(Rat::from_float(env).expect("finite float"))
}
