//! Dense univariate polynomials over the exact rationals.

use crate::rat::{rat_int, Rat};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable with [`Rat`] coefficients, lowest degree first.
/// Invariant: the leading stored coefficient is nonzero (the zero polynomial
/// stores no coefficients).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// Builds from coefficients (constant term first), trimming leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from small integers, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rat::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / rat_int(i as i64 + 1));
        }
        Poly { coeffs: out }
    }

    /// Definite integral over `[a, b]`.
    pub fn integrate(&self, a: &Rat, b: &Rat) -> Rat {
        let f = self.antiderivative();
        f.eval(b) - f.eval(a)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let ddeg = divisor.degree().unwrap();
        let dlead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Poly::zero(), self.clone());
        }
        let qlen = rem.len() - ddeg;
        let mut quo = vec![Rat::zero(); qlen];
        for qi in (0..qlen).rev() {
            let lead = rem[qi + ddeg].clone();
            if lead.is_zero() {
                continue;
            }
            let q = lead / &dlead;
            for (di, dc) in divisor.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[qi + di] = &rem[qi + di] - t;
            }
            quo[qi] = q;
        }
        (Poly::from_coeffs(quo), Poly::from_coeffs(rem))
    }

    /// Substitutes `inner` for the variable.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn trims_leading_zeros() {
        let p = Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Poly::from_ints(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = Poly::from_ints(&[1, 2, 3]); // 3x^2 + 2x + 1
        let q = Poly::from_ints(&[-1, 1]); // x - 1
        assert_eq!((&p + &q).eval(&rat_int(2)), rat_int(18));
        assert_eq!((&p - &q).eval(&rat_int(2)), rat_int(16));
        assert_eq!((&p * &q).eval(&rat_int(2)), rat_int(17));
        assert_eq!(p.eval(&rat(1, 2)), rat(11, 4));
    }

    #[test]
    fn division_inverts_multiplication() {
        let p = Poly::from_ints(&[2, 0, -5, 1]);
        let d = Poly::from_ints(&[-3, 2]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, p);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn exact_division_leaves_zero_remainder() {
        let a = Poly::from_ints(&[-1, 0, 1]); // (x-1)(x+1)
        let d = Poly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn calculus() {
        let p = Poly::from_ints(&[0, 0, 3]); // 3x^2
        assert_eq!(p.derivative(), Poly::from_ints(&[0, 6]));
        assert_eq!(p.antiderivative(), Poly::from_coeffs(vec![
            rat_int(0),
            rat_int(0),
            rat_int(0),
            rat_int(1),
        ]));
        assert_eq!(p.integrate(&rat_int(-1), &rat_int(1)), rat_int(2));
    }

    #[test]
    fn composition() {
        let p = Poly::from_ints(&[1, 0, 1]); // x^2 + 1
        let inner = Poly::from_ints(&[-1, 2]); // 2x - 1
        let c = p.compose(&inner);
        assert_eq!(c, Poly::from_ints(&[2, -4, 4]));
    }

    #[test]
    fn display_reads_naturally() {
        let p = Poly::from_coeffs(vec![rat(1, 2), rat_int(0), rat_int(-3)]);
        assert_eq!(format!("{p}"), "-3*x^2 + 1/2");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rat> {
            (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
        }

        fn small_poly() -> impl Strategy<Value = Poly> {
            prop::collection::vec(small_rat(), 0..6).prop_map(Poly::from_coeffs)
        }

        proptest! {
            // Evaluation respects the ring operations.
            #[test]
            fn eval_is_a_ring_homomorphism(
                p in small_poly(),
                q in small_poly(),
                x in small_rat(),
            ) {
                prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
                prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
                prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            }

            // p = quo * d + rem with deg(rem) < deg(d).
            #[test]
            fn division_reconstructs_the_dividend(
                p in small_poly(),
                d in small_poly().prop_filter("nonzero divisor", |d| !d.is_zero()),
            ) {
                let (quo, rem) = p.div_rem(&d);
                prop_assert_eq!(&(&quo * &d) + &rem, p);
                prop_assert!(rem.is_zero() || rem.degree() < d.degree());
            }

            // Composition is evaluation in the polynomial ring.
            #[test]
            fn composition_commutes_with_eval(
                p in small_poly(),
                inner in small_poly(),
                x in small_rat(),
            ) {
                prop_assert_eq!(p.compose(&inner).eval(&x), p.eval(&inner.eval(&x)));
            }

            // Differentiation undoes antidifferentiation exactly.
            #[test]
            fn derivative_inverts_antiderivative(p in small_poly()) {
                prop_assert_eq!(p.antiderivative().derivative(), p);
            }

            // Splitting an integration interval changes nothing.
            #[test]
            fn integral_is_additive_over_adjacent_intervals(
                p in small_poly(),
                a in small_rat(),
                b in small_rat(),
                c in small_rat(),
            ) {
                let whole = p.integrate(&a, &c);
                let split = p.integrate(&a, &b) + p.integrate(&b, &c);
                prop_assert_eq!(whole, split);
            }
        }
    }
}
