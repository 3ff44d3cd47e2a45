//! Exact real-root counting, isolation, and sign certification.
//!
//! Chains are built over integer polynomials. Every pseudo-remainder step
//! scales by a strictly positive integer and every member is reduced to its
//! primitive part, so signs are preserved exactly while coefficient growth
//! stays polynomial.

use crate::poly::Poly;
use crate::rat::{Int, Rat};
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SturmError {
    #[error("the zero polynomial has no root-counting chain")]
    ZeroPolynomial,
    #[error("interval is empty: lo must be strictly below hi")]
    EmptyInterval,
    #[error("interval refinement exceeded its depth budget")]
    RefinementBudget,
}

/// Integer polynomial, constant term first, trailing coefficient nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
struct IntPoly {
    c: Vec<Int>,
}

impl IntPoly {
    fn from_poly(p: &Poly) -> IntPoly {
        // Clear denominators by their lcm; the positive scale keeps signs.
        let mut lcm = Int::one();
        for co in p.coeffs() {
            let d = co.denom();
            lcm = &lcm / num::Integer::gcd(&lcm, d) * d;
        }
        let c = p
            .coeffs()
            .iter()
            .map(|co| co.numer() * (&lcm / co.denom()))
            .collect();
        IntPoly { c }.into_primitive()
    }

    fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|i| Rat::from_integer(i.clone())).collect())
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lc(&self) -> &Int {
        self.c.last().expect("nonzero polynomial")
    }

    fn neg(&self) -> IntPoly {
        IntPoly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    fn trim(mut self) -> IntPoly {
        while self.c.last().map_or(false, Zero::is_zero) {
            self.c.pop();
        }
        self
    }

    /// Divides by the positive content.
    fn into_primitive(mut self) -> IntPoly {
        self = self.trim();
        if self.c.is_empty() {
            return self;
        }
        let mut g = Int::zero();
        for co in &self.c {
            g = num::Integer::gcd(&g, co);
        }
        if !g.is_one() {
            for co in &mut self.c {
                *co = &*co / &g;
            }
        }
        self
    }

    fn derivative(&self) -> IntPoly {
        if self.c.len() <= 1 {
            return IntPoly { c: vec![] };
        }
        IntPoly {
            c: self
                .c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, co)| co * Int::from(i))
                .collect(),
        }
    }

    /// Sign of the value at a rational point, computed without division.
    fn sign_at(&self, x: &Rat) -> i8 {
        if self.c.is_empty() {
            return 0;
        }
        let p = x.numer();
        let q = x.denom(); // canonical: q > 0
        let n = self.c.len() - 1;
        let mut acc = self.c[n].clone();
        let mut qp = Int::one();
        for i in (0..n).rev() {
            qp = &qp * q;
            acc = &acc * p + &self.c[i] * &qp;
        }
        match acc.sign() {
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
            num::bigint::Sign::Plus => 1,
        }
    }
}

/// Remainder of `f` modulo `g`, scaled by some strictly positive integer.
fn prem_pos(f: &IntPoly, g: &IntPoly) -> IntPoly {
    debug_assert!(!g.is_zero());
    let gp = if g.lc().is_positive() { g.clone() } else { g.neg() };
    let dg = gp.degree();
    let glc = gp.lc().clone();
    let mut r = f.clone().trim();
    while !r.is_zero() && r.degree() >= dg {
        let shift = r.degree() - dg;
        let rlc = r.lc().clone();
        let mut out = vec![Int::zero(); r.c.len()];
        for (i, co) in r.c.iter().enumerate() {
            out[i] = co * &glc;
        }
        for (i, co) in gp.c.iter().enumerate() {
            out[i + shift] = &out[i + shift] - co * &rlc;
        }
        r = IntPoly { c: out }.trim();
    }
    r
}

/// Gcd by primitive pseudo-remainder sequence; result primitive, positive lead.
fn gcd_prs(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut r0 = a.clone().into_primitive();
    let mut r1 = b.clone().into_primitive();
    while !r1.is_zero() {
        let r2 = prem_pos(&r0, &r1).into_primitive();
        r0 = r1;
        r1 = r2;
    }
    if !r0.is_zero() && !r0.lc().is_positive() {
        r0 = r0.neg();
    }
    r0
}

/// Sign-variation chain for the square-free part of a polynomial.
pub struct SturmChain {
    s: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<SturmChain, SturmError> {
        if p.is_zero() {
            return Err(SturmError::ZeroPolynomial);
        }
        let ip = IntPoly::from_poly(p);
        let sf = square_free(&ip);
        Ok(SturmChain::from_square_free(sf))
    }

    fn from_square_free(s0: IntPoly) -> SturmChain {
        let mut s = vec![s0];
        let d1 = s[0].derivative().into_primitive();
        if d1.is_zero() {
            return SturmChain { s };
        }
        s.push(d1);
        loop {
            let k = s.len();
            let r = prem_pos(&s[k - 2], &s[k - 1]);
            if r.is_zero() {
                break;
            }
            s.push(r.neg().into_primitive());
        }
        SturmChain { s }
    }

    /// The square-free polynomial the chain counts roots of (same real roots
    /// as the input, all simple), up to a positive constant factor.
    pub fn square_free_part(&self) -> Poly {
        self.s[0].to_poly()
    }

    /// Sign of the square-free part at `x`; zero exactly at roots of the input.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        self.s[0].sign_at(x)
    }

    fn variations_at(&self, x: &Rat) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for m in &self.s {
            let sg = m.sign_at(x);
            if sg == 0 {
                continue;
            }
            if last != 0 && sg != last {
                v += 1;
            }
            last = sg;
        }
        v
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    /// Requires both endpoints to be nonroots.
    pub fn count_open(&self, lo: &Rat, hi: &Rat) -> usize {
        assert!(lo < hi, "count_open needs lo < hi");
        assert!(self.sign_at(lo) != 0 && self.sign_at(hi) != 0, "endpoint is a root");
        let a = self.variations_at(lo) as isize;
        let b = self.variations_at(hi) as isize;
        debug_assert!(a >= b);
        (a - b) as usize
    }

    /// A point of `(lo, hi)` where `filter` holds, near the middle when
    /// possible. `filter` must reject only finitely many rationals and accept
    /// all but `budget - 1` of any `budget` distinct candidates.
    fn interior_point(
        &self,
        lo: &Rat,
        hi: &Rat,
        filter: &dyn Fn(&Rat) -> bool,
    ) -> Result<Rat, SturmError> {
        let width = hi - lo;
        let budget = 2 * self.s[0].degree() + 16;
        let half = ((budget + 1) / 2) as i64;
        // j/(budget+1) fractions, middle-out so early hits stay central.
        for step in 0..2 * budget {
            let j = if step % 2 == 0 {
                half + (step / 2) as i64
            } else {
                half - ((step + 1) / 2) as i64
            };
            if j < 1 || j > budget as i64 {
                continue;
            }
            let cand = lo + &width * Rat::new(Int::from(j), Int::from(budget as i64 + 1));
            if filter(&cand) {
                return Ok(cand);
            }
        }
        Err(SturmError::RefinementBudget)
    }
}

fn square_free(ip: &IntPoly) -> IntPoly {
    let p = ip.clone().into_primitive();
    if p.degree() == 0 {
        return p;
    }
    let g = gcd_prs(&p, &p.derivative());
    if g.degree() == 0 {
        return p;
    }
    let (q, r) = p.to_poly().div_rem(&g.to_poly());
    assert!(r.is_zero(), "gcd must divide exactly");
    IntPoly::from_poly(&q)
}

/// Count of distinct real roots, split between the open interior and the two
/// endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCount {
    pub interior: usize,
    pub at_lo: bool,
    pub at_hi: bool,
}

/// Counts distinct real roots of `p` over `[lo, hi]`, reporting endpoint
/// roots separately from the open-interval count.
pub fn root_count(p: &Poly, lo: &Rat, hi: &Rat) -> Result<BoundaryCount, SturmError> {
    if lo >= hi {
        return Err(SturmError::EmptyInterval);
    }
    let chain = SturmChain::new(p)?;
    let mut s0 = chain.s[0].to_poly();
    let at_lo = chain.sign_at(lo) == 0;
    let at_hi = chain.sign_at(hi) == 0;
    // Dividing a root factor out of the square-free part leaves every other
    // root untouched, so the interior count is unaffected.
    if at_lo {
        s0 = exact_quotient(&s0, lo);
    }
    if at_hi {
        s0 = exact_quotient(&s0, hi);
    }
    let interior = if s0.degree().map_or(true, |d| d == 0) {
        0
    } else {
        SturmChain::new(&s0)?.count_open(lo, hi)
    };
    Ok(BoundaryCount { interior, at_lo, at_hi })
}

/// Number of distinct real roots in the open interval `(lo, hi)`.
pub fn count_roots_open(p: &Poly, lo: &Rat, hi: &Rat) -> Result<usize, SturmError> {
    root_count(p, lo, hi).map(|b| b.interior)
}

fn exact_quotient(p: &Poly, root: &Rat) -> Poly {
    let factor = Poly::from_coeffs(vec![-root.clone(), Rat::one()]);
    let (q, r) = p.div_rem(&factor);
    assert!(r.is_zero(), "claimed root must divide exactly");
    q
}

/// Disjoint open rational intervals, one per distinct interior root, sorted
/// in increasing order; endpoint roots of the query interval are flagged.
#[derive(Debug, Clone)]
pub struct RootIsolation {
    pub intervals: Vec<(Rat, Rat)>,
    pub at_lo: bool,
    pub at_hi: bool,
}

/// Isolates the distinct real roots of `p` inside `(lo, hi)`.
pub fn isolate_roots(p: &Poly, lo: &Rat, hi: &Rat) -> Result<RootIsolation, SturmError> {
    if lo >= hi {
        return Err(SturmError::EmptyInterval);
    }
    let chain = SturmChain::new(p)?;
    let mut s0 = chain.s[0].to_poly();
    let at_lo = chain.sign_at(lo) == 0;
    let at_hi = chain.sign_at(hi) == 0;
    if at_lo {
        s0 = exact_quotient(&s0, lo);
    }
    if at_hi {
        s0 = exact_quotient(&s0, hi);
    }
    if s0.degree().map_or(true, |d| d == 0) {
        return Ok(RootIsolation { intervals: vec![], at_lo, at_hi });
    }
    let chain = SturmChain::new(&s0)?;
    let total = chain.count_open(lo, hi);
    let mut done = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), total)];
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => done.push((a, b)),
            _ => {
                let m = chain.interior_point(&a, &b, &|x| chain.sign_at(x) != 0)?;
                let left = chain.count_open(&a, &m);
                stack.push((m.clone(), b, count - left));
                stack.push((a, m, left));
            }
        }
    }
    done.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(RootIsolation { intervals: done, at_lo, at_hi })
}

/// Shrinks an isolating interval of `p` (exactly one root inside, nonroot
/// endpoints) until `stop` accepts it. New endpoints always satisfy `keep`.
pub fn refine_interval(
    p: &Poly,
    iv: (Rat, Rat),
    keep: &dyn Fn(&Rat) -> bool,
    stop: &dyn Fn(&(Rat, Rat)) -> bool,
    max_steps: usize,
) -> Result<(Rat, Rat), SturmError> {
    let chain = SturmChain::new(p)?;
    debug_assert_eq!(chain.count_open(&iv.0, &iv.1), 1);
    let mut iv = iv;
    for _ in 0..max_steps {
        if stop(&iv) {
            return Ok(iv);
        }
        // Every midpoint satisfies `keep`, so stale original endpoints are
        // displaced as soon as a midpoint falls on their side of the root.
        let filter = |x: &Rat| chain.sign_at(x) != 0 && keep(x);
        let m = chain.interior_point(&iv.0, &iv.1, &filter)?;
        if chain.count_open(&iv.0, &m) == 1 {
            iv = (iv.0, m);
        } else {
            iv = (m, iv.1);
        }
    }
    if stop(&iv) {
        Ok(iv)
    } else {
        Err(SturmError::RefinementBudget)
    }
}

/// Outcome of an exact nonpositivity check over an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nonpositivity {
    Certified,
    /// A rational point in the interval where the polynomial is positive.
    Violation(Rat),
}

/// Decides whether `p(x) <= 0` for every `x` in `[lo, hi]`, exactly, and on
/// failure reports a concrete violating point.
///
/// Equality is permitted (touching roots count as nonpositive). The interval
/// is split at isolated roots; ruling out a sign change on each root-free
/// piece needs only one exact evaluation there, and that sample is the
/// violation witness when the check fails.
pub fn check_nonpositive(p: &Poly, lo: &Rat, hi: &Rat) -> Result<Nonpositivity, SturmError> {
    if lo > hi {
        return Err(SturmError::EmptyInterval);
    }
    if p.is_zero() {
        return Ok(Nonpositivity::Certified);
    }
    if p.eval(lo) > Rat::zero() {
        return Ok(Nonpositivity::Violation(lo.clone()));
    }
    if p.eval(hi) > Rat::zero() {
        return Ok(Nonpositivity::Violation(hi.clone()));
    }
    if lo == hi || p.degree() == Some(0) {
        return Ok(Nonpositivity::Certified);
    }
    let iso = isolate_roots(p, lo, hi)?;
    // Sample one nonroot point per gap between consecutive isolating
    // intervals; the sign of p is constant on each root-free gap.
    let mut cuts = vec![lo.clone()];
    for (a, b) in &iso.intervals {
        cuts.push(a.clone());
        cuts.push(b.clone());
    }
    cuts.push(hi.clone());
    // Gap g spans cuts[2g] .. cuts[2g+1]; the pieces cuts[2g+1]..cuts[2g+2]
    // are the isolating intervals themselves, covered by their boundary gaps.
    let chain = SturmChain::new(p)?;
    for g in 0..=iso.intervals.len() {
        let (a, b) = (&cuts[2 * g], &cuts[2 * g + 1]);
        let sample = if a == b {
            a.clone()
        } else if chain.sign_at(a) != 0 {
            a.clone()
        } else if chain.sign_at(b) != 0 {
            b.clone()
        } else {
            chain.interior_point(a, b, &|x| chain.sign_at(x) != 0)?
        };
        if p.eval(&sample) > Rat::zero() {
            return Ok(Nonpositivity::Violation(sample));
        }
    }
    Ok(Nonpositivity::Certified)
}

/// Certifies `p(x) <= 0` for every `x` in `[lo, hi]`, exactly.
pub fn nonpositive_on(p: &Poly, lo: &Rat, hi: &Rat) -> Result<bool, SturmError> {
    Ok(matches!(check_nonpositive(p, lo, hi)?, Nonpositivity::Certified))
}
