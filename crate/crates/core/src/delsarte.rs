//! Linear-programming upper bounds for spherical codes whose pairwise inner
//! products are constrained to a finite set or an interval.
//!
//! A code on the unit sphere in dimension `n` with all pairwise cosines in a
//! set `X` has size at most `1/gbar`, where `gbar` is the optimum of an
//! exact LP over nonnegative combinations of the degree-normalized
//! Gegenbauer family for that dimension: maximize `gbar` subject to
//! `gbar + sum f_k = 1` and `gbar + sum f_k phat_k(t) <= 0` for every
//! `t in X`, with `gbar, f_k >= 0`. Everything here is rational arithmetic;
//! each returned certificate re-checks its own defining identities.

use crate::orthopoly::{darboux_envelope, OrthoError, OrthoFamily};
use crate::rat::{rat_floor, rat_int, rat_to_f64, Int, Rat};
use crate::simplex::{self, LinearProgram, LpError, LpOutcome, Rel, VarBound};
use crate::sturm;
use crate::Poly;
use num::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DelsarteError {
    #[error("constrained angles must lie in [-1, 1); got {0}")]
    AngleOutOfRange(String),
    #[error("constrained angle {0} appears twice")]
    DuplicateAngle(String),
    #[error("at least one constrained angle is required")]
    EmptyAngleSet,
    #[error("dimension must be at least {1}; got {0}")]
    BadDimension(usize, usize),
    #[error("degree cap must be at least 1")]
    BadCap,
    #[error("cos(theta) must lie strictly between -1 and 1; got {0}")]
    BadCosTheta(String),
    #[error(
        "no feasible profile at degree cap {cap} in dimension {dim}: no convex \
         combination of the normalized polynomials up to the cap is nonpositive \
         on the angle set; raise the cap"
    )]
    InfeasibleCap { dim: usize, cap: usize },
    #[error("code entries must lie in the certificate's angle set")]
    InvalidCode,
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// A finite set of admissible pairwise cosines: sorted, distinct rationals
/// in `[-1, 1)`. The value 1 is excluded because it indexes coincident
/// points, not an angle between distinct ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleSet {
    values: Vec<Rat>,
}

impl AngleSet {
    pub fn new(mut values: Vec<Rat>) -> Result<Self, DelsarteError> {
        let minus_one = -Rat::one();
        for v in &values {
            if *v < minus_one || *v >= Rat::one() {
                return Err(DelsarteError::AngleOutOfRange(crate::rat::rat_to_string(v)));
            }
        }
        values.sort();
        for w in values.windows(2) {
            if w[0] == w[1] {
                return Err(DelsarteError::DuplicateAngle(crate::rat::rat_to_string(&w[0])));
            }
        }
        Ok(AngleSet { values })
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, v: &Rat) -> bool {
        self.values.binary_search(v).is_ok()
    }

    /// True when the set equals its own negation, so that odd-degree terms
    /// contribute nothing at the symmetric pair of any constrained angle.
    pub fn is_symmetric(&self) -> bool {
        self.values.iter().all(|v| self.contains(&-v))
    }
}

/// An exact feasibility certificate for the profile LP at one degree cap.
///
/// The defining identities are re-checked on construction: the coefficients
/// are nonnegative, `gbar + sum f_k = 1`, and the residual
/// `g(t) = gbar + sum f_k phat_k(t)` is nonpositive at every constrained
/// angle. Any spherical code in the given dimension with all pairwise
/// cosines among the angles has at most `bound_raw = 1/gbar` points;
/// `bound_floor` is its integer part. Both are `None` when `gbar = 0`,
/// in which case this cap certifies no finite bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelsarteCertificate {
    pub dim: usize,
    pub angles: AngleSet,
    pub degree_cap: usize,
    pub gbar: Rat,
    /// Coefficients `f_1 .. f_cap` of the normalized polynomials.
    pub coeffs: Vec<Rat>,
    /// `(t, g(t))` for each constrained angle, exactly.
    pub residuals: Vec<(Rat, Rat)>,
    pub bound_raw: Option<Rat>,
    pub bound_floor: Option<Int>,
}

impl DelsarteCertificate {
    /// The witness polynomial `g` in the monomial basis.
    pub fn witness_poly(&self, family: &OrthoFamily) -> Result<Poly, OrthoError> {
        let mut g = Poly::constant(self.gbar.clone());
        for (k, f) in self.coeffs.iter().enumerate() {
            if !f.is_zero() {
                let p = family.normalized_poly(k + 1)?;
                g = &g + &p.scale(f);
            }
        }
        Ok(g)
    }
}

fn check_certificate(cert: &DelsarteCertificate) {
    assert!(!cert.gbar.is_negative(), "gbar must be nonnegative");
    assert!(cert.coeffs.iter().all(|f| !f.is_negative()), "coefficients must be nonnegative");
    let total: Rat = cert.coeffs.iter().sum();
    assert_eq!(&cert.gbar + &total, Rat::one(), "normalization g(1) = 1 must hold");
    for (t, r) in &cert.residuals {
        assert!(
            !r.is_positive(),
            "residual at {} must be nonpositive",
            crate::rat::rat_to_string(t)
        );
    }
    match (&cert.bound_raw, &cert.bound_floor) {
        (Some(raw), Some(floor)) => {
            assert_eq!(raw, &(Rat::one() / &cert.gbar));
            assert_eq!(floor, &rat_floor(raw));
        }
        (None, None) => assert!(cert.gbar.is_zero()),
        _ => panic!("bound_raw and bound_floor must be present together"),
    }
}

/// Solves the profile LP exactly for the given degrees and assembles a
/// checked certificate. `degrees` lists which `f_k` participate; excluded
/// degrees get coefficient zero.
fn solve_profile(
    dim: usize,
    angles: &AngleSet,
    cap: usize,
    degrees: &[usize],
) -> Result<DelsarteCertificate, DelsarteError> {
    if dim < 2 {
        return Err(DelsarteError::BadDimension(dim, 2));
    }
    if cap < 1 {
        return Err(DelsarteError::BadCap);
    }
    if angles.is_empty() {
        return Err(DelsarteError::EmptyAngleSet);
    }
    let family = OrthoFamily::gegenbauer(dim)?;
    let nvars = 1 + degrees.len();
    let mut rows = Vec::with_capacity(1 + angles.len());
    let mut rels = Vec::with_capacity(1 + angles.len());
    let mut rhs = Vec::with_capacity(1 + angles.len());
    rows.push(vec![Rat::one(); nvars]);
    rels.push(Rel::Eq);
    rhs.push(Rat::one());
    for t in angles.values() {
        let mut row = Vec::with_capacity(nvars);
        row.push(Rat::one());
        for &k in degrees {
            row.push(family.normalized_value(k, t)?);
        }
        rows.push(row);
        rels.push(Rel::Le);
        rhs.push(Rat::zero());
    }
    let mut objective = vec![Rat::zero(); nvars];
    objective[0] = Rat::one();
    let lp = LinearProgram {
        objective,
        rows,
        rels,
        rhs,
        bounds: vec![VarBound::Nonneg; nvars],
    };
    let (gbar, primal) = match simplex::solve(&lp)? {
        LpOutcome::Optimal { value, primal, .. } => (value, primal),
        LpOutcome::Infeasible { .. } => {
            return Err(DelsarteError::InfeasibleCap { dim, cap });
        }
        LpOutcome::Unbounded { .. } => {
            unreachable!("the normalization row bounds gbar by 1")
        }
    };
    let mut coeffs = vec![Rat::zero(); cap];
    for (slot, &k) in degrees.iter().enumerate() {
        coeffs[k - 1] = primal[1 + slot].clone();
    }
    let residuals: Vec<(Rat, Rat)> = angles
        .values()
        .iter()
        .map(|t| {
            let mut g = gbar.clone();
            for (k0, f) in coeffs.iter().enumerate() {
                if !f.is_zero() {
                    g = g + f * family.normalized_value(k0 + 1, t)?;
                }
            }
            Ok((t.clone(), g))
        })
        .collect::<Result<_, DelsarteError>>()?;
    let (bound_raw, bound_floor) = if gbar.is_zero() {
        (None, None)
    } else {
        let raw = Rat::one() / &gbar;
        let floor = rat_floor(&raw);
        (Some(raw), Some(floor))
    };
    let cert = DelsarteCertificate {
        dim,
        angles: angles.clone(),
        degree_cap: cap,
        gbar,
        coeffs,
        residuals,
        bound_raw,
        bound_floor,
    };
    check_certificate(&cert);
    Ok(cert)
}

/// The LP upper bound at a fixed degree cap, using every degree `1..=cap`.
pub fn delsarte_constant(
    dim: usize,
    angles: &AngleSet,
    cap: usize,
) -> Result<DelsarteCertificate, DelsarteError> {
    let degrees: Vec<usize> = (1..=cap).collect();
    solve_profile(dim, angles, cap, &degrees)
}

/// The LP upper bound restricted to even degrees only. For a symmetric
/// angle set this is the natural subproblem; its optimum can never exceed
/// the unrestricted one, since it optimizes over a subset of profiles.
pub fn delsarte_constant_even(
    dim: usize,
    angles: &AngleSet,
    cap: usize,
) -> Result<DelsarteCertificate, DelsarteError> {
    if cap < 2 {
        return Err(DelsarteError::BadCap);
    }
    let degrees: Vec<usize> = (1..=cap).filter(|k| k % 2 == 0).collect();
    solve_profile(dim, angles, cap, &degrees)
}

/// Degree-cap escalation schedule for [`delsarte_bound`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizeParams {
    pub start: usize,
    pub step: usize,
    /// Number of consecutive caps that must report the same optimum.
    pub window: usize,
    /// Largest cap attempted before giving up.
    pub hard_cap: usize,
}

impl StabilizeParams {
    /// Defaults: start at `2(|X|+1)`, step 4, window 2, hard cap 120.
    pub fn for_angles(angles: &AngleSet) -> StabilizeParams {
        StabilizeParams {
            start: 2 * (angles.len() + 1),
            step: 4,
            window: 2,
            hard_cap: 120,
        }
    }
}

/// Result of the cap-escalation loop: the certificate at the smallest cap
/// of the stabilized window, the full cap schedule with the optimum seen at
/// each cap, and whether stabilization was reached before the hard cap.
/// `stabilized = false` means the schedule was exhausted and the final
/// certificate is only the best cap tried, with no stability claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRun {
    pub certificate: DelsarteCertificate,
    pub schedule: Vec<(usize, Rat)>,
    pub stabilized: bool,
}

/// Escalates the degree cap until the LP optimum repeats across the
/// stability window, then returns the earliest certificate of that window.
///
/// The optimum is nondecreasing in the cap, so a repeat means the window
/// added nothing; for angle sets admitting a polynomial witness this
/// detects it, for the rest stabilization is an explicit heuristic and the
/// schedule metadata says exactly what was tried.
pub fn delsarte_bound(
    dim: usize,
    angles: &AngleSet,
    params: &StabilizeParams,
) -> Result<BoundRun, DelsarteError> {
    if params.start < 1 || params.step < 1 || params.window < 2 {
        return Err(DelsarteError::BadCap);
    }
    let mut schedule: Vec<(usize, Rat)> = Vec::new();
    let mut certs: Vec<DelsarteCertificate> = Vec::new();
    let mut cap = params.start;
    loop {
        let cert = delsarte_constant(dim, angles, cap)?;
        schedule.push((cap, cert.gbar.clone()));
        certs.push(cert);
        let n = schedule.len();
        if n >= params.window {
            let tail = &schedule[n - params.window..];
            if tail.iter().all(|(_, g)| *g == tail[0].1) {
                let certificate = certs[n - params.window].clone();
                return Ok(BoundRun {
                    certificate,
                    schedule,
                    stabilized: true,
                });
            }
        }
        match cap.checked_add(params.step) {
            Some(next) if next <= params.hard_cap => cap = next,
            _ => {
                let certificate = certs.pop().expect("at least one cap was solved");
                return Ok(BoundRun {
                    certificate,
                    schedule,
                    stabilized: false,
                });
            }
        }
    }
}

/// Result of the interval-constrained bound: the grid LP certificate, the
/// witness polynomial, and whether the witness was certified nonpositive on
/// the whole interval `[-1, cos_theta]` by exact root counting. An
/// uncertified result reports the LP value as numeric-only evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalBound {
    pub certificate: DelsarteCertificate,
    pub cos_theta: Rat,
    pub witness: Poly,
    pub certified: bool,
    /// Grid sizes attempted, in order.
    pub grid_sizes: Vec<usize>,
}

/// LP bound for codes with minimum angle `theta`: every pairwise cosine
/// lies in `[-1, cos_theta]`. The LP constrains a rational grid shaped like
/// Chebyshev points (endpoints included exactly), and the returned witness
/// polynomial is then certified nonpositive on the whole interval by Sturm
/// root isolation. On certification failure the exact point where the
/// witness is positive joins the grid and the LP is re-solved, a bounded
/// number of times; each added cut removes the reported violation.
pub fn interval_delsarte(
    dim: usize,
    cos_theta: &Rat,
    cap: usize,
) -> Result<IntervalBound, DelsarteError> {
    let one = Rat::one();
    if *cos_theta <= -one.clone() || *cos_theta >= one {
        return Err(DelsarteError::BadCosTheta(crate::rat::rat_to_string(cos_theta)));
    }
    let family = OrthoFamily::gegenbauer(dim)?;
    let minus_one = -Rat::one();
    let mut grid = chebyshev_grid(&minus_one, cos_theta, 2 * cap + 8);
    let mut grid_sizes = Vec::new();
    let mut last: Option<(DelsarteCertificate, Poly)> = None;
    for _attempt in 0..12 {
        grid_sizes.push(grid.len());
        let angles = AngleSet::new(grid.clone())?;
        let cert = delsarte_constant(dim, &angles, cap)?;
        let witness = cert.witness_poly(&family)?;
        match sturm::check_nonpositive(&witness, &minus_one, cos_theta)
            .expect("interval is nonempty")
        {
            sturm::Nonpositivity::Certified => {
                return Ok(IntervalBound {
                    certificate: cert,
                    cos_theta: cos_theta.clone(),
                    witness,
                    certified: true,
                    grid_sizes,
                });
            }
            sturm::Nonpositivity::Violation(point) => {
                // The witness is positive at `point`, so `point` is not yet a
                // grid constraint; adding it cuts off this LP solution.
                last = Some((cert, witness));
                grid.push(point);
                grid.sort();
                grid.dedup();
            }
        }
    }
    let (certificate, witness) = last.expect("at least one grid was attempted");
    Ok(IntervalBound {
        certificate,
        cos_theta: cos_theta.clone(),
        witness,
        certified: false,
        grid_sizes,
    })
}

/// Rational points spread over `[lo, hi]` with Chebyshev-like clustering at
/// the ends. Interior nodes are small-denominator approximations of the
/// floating point Chebyshev points (exact f64 values would drag around
/// 52-bit denominators and poison every exact pivot downstream); the
/// endpoints are included exactly. Nodes that collide after rounding are
/// deduplicated, which only thins the grid.
fn chebyshev_grid(lo: &Rat, hi: &Rat, density: usize) -> Vec<Rat> {
    const MAX_DEN: u64 = 4096;
    let n = density.max(2);
    let (lo_f, hi_f) = (rat_to_f64(lo), rat_to_f64(hi));
    let mut out: Vec<Rat> = Vec::with_capacity(n);
    out.push(lo.clone());
    for i in 1..n - 1 {
        let theta = std::f64::consts::PI * i as f64 / (n - 1) as f64;
        let x = 0.5 * (lo_f + hi_f) + 0.5 * (hi_f - lo_f) * -theta.cos();
        if let Some(r) = crate::rat::approx_f64(x, MAX_DEN) {
            if r > *lo && r < *hi {
                out.push(r);
            }
        }
    }
    out.push(hi.clone());
    out.sort();
    out.dedup();
    out
}

/// Scan of the normalized family values at a fixed argument, looking for
/// the minimum over degrees `0..=k_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaScan {
    pub minimum: Rat,
    pub k_argmin: usize,
    /// `m / (m - 1)`: the Lovasz-theta value up to the sphere's surface
    /// measure factor, which is irrational and reported symbolically by
    /// consumers.
    pub theta_ratio: Rat,
    /// Magnitude estimate for degrees past the cutoff, from the asymptotic
    /// envelope. Not a proof; conclusive scans carry it as justification.
    pub envelope_at_cutoff: Rat,
}

/// Outcome of [`theta_min`]. The scan is exact on `0..=k_max`; whether the
/// cutoff captured the true minimum rests on the heuristic envelope, and
/// `Inconclusive` reports a scan whose minimum is not yet negative or whose
/// tail estimate is still larger than the found minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaOutcome {
    Conclusive(ThetaScan),
    Inconclusive {
        candidate_min: Rat,
        k_argmin: usize,
        envelope_at_cutoff: Rat,
    },
}

/// Minimum of the degree-normalized family values at `t` over degrees up to
/// `k_max`, and the derived ratio `m/(m-1)`.
pub fn theta_min(dim: usize, t: &Rat, k_max: usize) -> Result<ThetaOutcome, DelsarteError> {
    if dim < 3 {
        return Err(DelsarteError::BadDimension(dim, 3));
    }
    if k_max < 1 {
        return Err(DelsarteError::BadCap);
    }
    let one = Rat::one();
    if t.abs() >= one {
        return Err(DelsarteError::BadCosTheta(crate::rat::rat_to_string(t)));
    }
    let family = OrthoFamily::gegenbauer(dim)?;
    let mut minimum = Rat::one();
    let mut k_argmin = 0usize;
    for k in 1..=k_max {
        let v = family.normalized_value(k, t)?;
        if v < minimum {
            minimum = v;
            k_argmin = k;
        }
    }
    let envelope_at_cutoff = darboux_envelope(dim, k_max, t)?;
    if minimum.is_negative() && envelope_at_cutoff <= minimum.abs() {
        let theta_ratio = &minimum / (&minimum - Rat::one());
        Ok(ThetaOutcome::Conclusive(ThetaScan {
            minimum,
            k_argmin,
            theta_ratio,
            envelope_at_cutoff,
        }))
    } else {
        Ok(ThetaOutcome::Inconclusive {
            candidate_min: minimum,
            k_argmin,
            envelope_at_cutoff,
        })
    }
}

/// How a candidate code relates to a bound certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SharpnessVerdict {
    /// The code is realizable in the certificate's dimension, uses only
    /// constrained angles, and meets the bound exactly.
    Sharp,
    /// A valid code, but strictly smaller than the bound.
    Gap,
    /// No code given, or the code does not certify anything.
    Unverified,
}

/// Compares a realizable candidate code against a bound certificate.
///
/// `Sharp` needs exact integer equality `|C| = bound_raw`; a realizable
/// smaller code gives `Gap`; everything else (absent code, unrealizable
/// Gram, or a cap with no finite bound) is `Unverified`. A code whose
/// off-diagonal entries stray outside the certificate's angle set is an
/// error, not a verdict.
pub fn sharpness_verdict(
    cert: &DelsarteCertificate,
    code: Option<&crate::codes::GramCandidate>,
) -> Result<SharpnessVerdict, DelsarteError> {
    let Some(code) = code else {
        return Ok(SharpnessVerdict::Unverified);
    };
    let gram = code.gram();
    for i in 0..gram.dim() {
        for j in 0..i {
            if !cert.angles.contains(gram.entry(i, j)) {
                return Err(DelsarteError::InvalidCode);
            }
        }
    }
    if !crate::codes::realizable(code, cert.dim) {
        return Ok(SharpnessVerdict::Unverified);
    }
    let Some(raw) = &cert.bound_raw else {
        return Ok(SharpnessVerdict::Unverified);
    };
    let size = rat_int(code.size() as i64);
    if size == *raw {
        Ok(SharpnessVerdict::Sharp)
    } else if size < *raw {
        Ok(SharpnessVerdict::Gap)
    } else {
        Ok(SharpnessVerdict::Unverified)
    }
}
