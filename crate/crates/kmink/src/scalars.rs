//! Exact coefficient arithmetic: Gaussian rationals and Laurent polynomials
//! in the deformation parameter κ (printed `k`).
//!
//! `KScalar` is the ground ring for every other module. It is a ring, not a
//! field: division exists only for monomials c·κⁿ, which is all the operator
//! formulas ever need. Keeping the ring this small makes the canonical form
//! unique (a sorted exponent → coefficient map with no zeros) and every
//! operation exact — there is no rounding anywhere in the symbolic kernel.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Errors from the scalar ring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// Division is defined only for nonzero monomials c·κⁿ.
    #[error("non-invertible scalar")]
    NonInvertible,
    /// Numeric evaluation substitutes a concrete κ, which must be nonzero.
    #[error("cannot evaluate at kappa = 0")]
    KappaZero,
}

/// Shorthand for an exact rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

// ===========================================================================
// Gaussian rationals
// ===========================================================================

/// A Gaussian rational re + im·i with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        GaussRat::new(Rat::one(), Rat::zero())
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Complex conjugate (i ↦ −i).
    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat::new(&self.re / &norm, -(&self.im / &norm)))
    }

    fn add(&self, rhs: &Self) -> Self {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn mul(&self, rhs: &Self) -> Self {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn neg(&self) -> Self {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }

    /// Canonical text form: `a`, `b*i` (bare `i` for b = ±1), or `a+b*i`;
    /// may start with a minus sign.
    pub fn to_canonical_string(&self) -> String {
        fn imag_part(im: &Rat) -> String {
            let mag = im.abs();
            if mag.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", mag)
            }
        }
        if self.is_zero() {
            "0".to_string()
        } else if self.im.is_zero() {
            self.re.to_string()
        } else if self.re.is_zero() {
            let s = imag_part(&self.im);
            if self.im.is_negative() {
                format!("-{s}")
            } else {
                s
            }
        } else {
            let join = if self.im.is_negative() { "-" } else { "+" };
            format!("{}{}{}", self.re, join, imag_part(&self.im))
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

// ===========================================================================
// Laurent polynomials in κ
// ===========================================================================

/// A Laurent polynomial Σ cₙ κⁿ over the Gaussian rationals, n ∈ ℤ.
///
/// Invariant: no zero coefficients are stored; zero is the empty map, so
/// structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct KScalar {
    terms: BTreeMap<i64, GaussRat>,
}

impl KScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, GaussRat::one())
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        Self::monomial(0, GaussRat::i())
    }

    /// The single term g·κⁿ.
    pub fn monomial(n: i64, g: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(n, g);
        }
        KScalar { terms }
    }

    /// κⁿ (n may be negative).
    pub fn kappa(n: i64) -> Self {
        Self::monomial(n, GaussRat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, GaussRat::from_int(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::monomial(0, GaussRat::new(r, Rat::zero()))
    }

    /// The recurring constant i/κ.
    pub fn i_over_k() -> Self {
        Self::monomial(-1, GaussRat::i())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(GaussRat::is_one)
    }

    /// Iterate (κ-exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRat)> {
        self.terms.iter().map(|(n, g)| (*n, g))
    }

    fn insert(&mut self, n: i64, g: GaussRat) {
        if g.is_zero() {
            return;
        }
        match self.terms.entry(n) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(g);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&g);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Complex conjugate (i ↦ −i; κ is real).
    pub fn conj(&self) -> Self {
        KScalar {
            terms: self.terms.iter().map(|(n, g)| (*n, g.conj())).collect(),
        }
    }

    /// Largest κ-exponent present; `None` (read: −∞) for zero.
    ///
    /// "Vanishes as κ → ∞" is asserted as `kappa_valuation(x) <= Some(-1)`.
    pub fn kappa_valuation(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Division, defined only when `rhs` is a nonzero monomial c·κⁿ.
    pub fn checked_div(&self, rhs: &KScalar) -> Result<KScalar, ScalarError> {
        if rhs.terms.len() != 1 {
            return Err(ScalarError::NonInvertible);
        }
        let (n, g) = rhs.terms.iter().next().expect("single term");
        let inv = g.inv().ok_or(ScalarError::NonInvertible)?;
        Ok(self * &KScalar::monomial(-n, inv))
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, e: u32) -> KScalar {
        let mut acc = KScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute a numeric κ ≠ 0; returns (re, im).
    pub fn eval_numeric(&self, kappa: f64) -> Result<(f64, f64), ScalarError> {
        if kappa == 0.0 {
            return Err(ScalarError::KappaZero);
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for (n, g) in &self.terms {
            let p = kappa.powi(*n as i32);
            re += g.re.to_f64().unwrap_or(f64::NAN) * p;
            im += g.im.to_f64().unwrap_or(f64::NAN) * p;
        }
        Ok((re, im))
    }

    /// One additive term as text, with any leading minus kept on the string.
    fn term_string(n: i64, g: &GaussRat) -> String {
        let suffix = match n {
            0 => String::new(),
            1 => "*k".to_string(),
            -1 => "/k".to_string(),
            n if n > 1 => format!("*k^{n}"),
            n => format!("/k^{}", -n),
        };
        if n == 0 {
            return g.to_canonical_string();
        }
        // A ±1 or ±i coefficient merges with the κ power: `k^2`, `-i/k`.
        let body = if g.im.is_zero() && g.re.abs().is_one() {
            let sign = if g.re.is_negative() { "-" } else { "" };
            match n {
                1 => return format!("{sign}k"),
                n if n > 1 => return format!("{sign}k^{n}"),
                _ => format!("{sign}1"),
            }
        } else if g.re.is_zero() && g.im.abs().is_one() {
            let sign = if g.im.is_negative() { "-" } else { "" };
            format!("{sign}i")
        } else if g.re.is_zero() || g.im.is_zero() {
            g.to_canonical_string()
        } else {
            format!("({})", g.to_canonical_string())
        };
        format!("{body}{suffix}")
    }

    /// Rendering for use as a left coefficient of a monomial block:
    /// `(None, false)` means the coefficient 1 (print the block alone),
    /// `(None, true)` means −1; otherwise the string never starts with `-`
    /// and always parses as a single factor.
    pub fn coefficient_display(&self) -> (Option<String>, bool) {
        if self.is_one() {
            return (None, false);
        }
        if (-self).is_one() {
            return (None, true);
        }
        if self.terms.len() == 1 {
            let (n, g) = self.terms.iter().next().expect("single term");
            let s = Self::term_string(*n, g);
            // A mixed Gaussian rational is a sum: as a prefactor it needs
            // parentheses, and its leading sign must stay inside them.
            if *n == 0 && !g.re.is_zero() && !g.im.is_zero() {
                return (Some(format!("({s})")), false);
            }
            if let Some(stripped) = s.strip_prefix('-') {
                return (Some(stripped.to_string()), true);
            }
            return (Some(s), false);
        }
        (Some(format!("({self})")), false)
    }
}

impl fmt::Display for KScalar {
    /// Terms in decreasing κ-exponent, e.g. `k^2 - i/k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (n, g)) in self.terms.iter().rev().enumerate() {
            let s = Self::term_string(*n, g);
            if idx == 0 {
                f.write_str(&s)?;
            } else if let Some(stripped) = s.strip_prefix('-') {
                write!(f, " - {stripped}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

// ---- ring operations ----

impl<'b> Add<&'b KScalar> for &KScalar {
    type Output = KScalar;
    fn add(self, rhs: &'b KScalar) -> KScalar {
        let mut out = self.clone();
        for (n, g) in &rhs.terms {
            out.insert(*n, g.clone());
        }
        out
    }
}

impl<'b> Sub<&'b KScalar> for &KScalar {
    type Output = KScalar;
    fn sub(self, rhs: &'b KScalar) -> KScalar {
        let mut out = self.clone();
        for (n, g) in &rhs.terms {
            out.insert(*n, g.neg());
        }
        out
    }
}

impl<'b> Mul<&'b KScalar> for &KScalar {
    type Output = KScalar;
    // Exponents add when monomials multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &'b KScalar) -> KScalar {
        let mut out = KScalar::zero();
        for (n, g) in &self.terms {
            for (m, h) in &rhs.terms {
                out.insert(n + m, g.mul(h));
            }
        }
        out
    }
}

impl Neg for &KScalar {
    type Output = KScalar;
    fn neg(self) -> KScalar {
        KScalar {
            terms: self.terms.iter().map(|(n, g)| (*n, g.neg())).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<KScalar> for KScalar {
            type Output = KScalar;
            fn $method(self, rhs: KScalar) -> KScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&KScalar> for KScalar {
            type Output = KScalar;
            fn $method(self, rhs: &KScalar) -> KScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<KScalar> for &KScalar {
            type Output = KScalar;
            fn $method(self, rhs: KScalar) -> KScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for KScalar {
    type Output = KScalar;
    fn neg(self) -> KScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ik() -> KScalar {
        KScalar::i_over_k()
    }

    // ---- ring arithmetic ----

    #[test]
    fn i_over_k_squares_to_minus_inverse_square() {
        // (i/k)·(i/k) = -1/k^2
        let got = &ik() * &ik();
        let want = KScalar::monomial(-2, GaussRat::from_int(-1));
        assert_eq!(got, want);
    }

    #[test]
    fn kappa_exponents_add() {
        // k^2 · (1/k) = k
        let got = &KScalar::kappa(2) * &KScalar::kappa(-1);
        assert_eq!(got, KScalar::kappa(1));
    }

    #[test]
    fn additive_inverse_cancels_to_empty_map() {
        // (3i/2k) + (-3i/2k) = 0, stored as the empty association
        let a = KScalar::monomial(-1, GaussRat::new(Rat::zero(), rat(3, 2)));
        let sum = &a + &(-&a);
        assert!(sum.is_zero());
        assert_eq!(sum, KScalar::zero());
    }

    #[test]
    fn subtraction_matches_add_neg() {
        let a = &KScalar::kappa(2) + &KScalar::i();
        let b = &ik() + &KScalar::from_int(7);
        assert_eq!(&a - &b, &a + &(-&b));
    }

    #[test]
    fn conjugation_is_an_involutive_ring_map() {
        let a = &(&KScalar::i() * &KScalar::kappa(-1)) + &KScalar::from_rat(rat(2, 3));
        let b = &KScalar::kappa(3) - &KScalar::i();
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!(KScalar::i().conj(), -KScalar::i());
    }

    // ---- division ----

    #[test]
    fn division_by_monomial_inverts_exactly() {
        let a = &KScalar::kappa(2) + &ik();
        let d = KScalar::monomial(3, GaussRat::new(rat(2, 1), rat(1, 1)));
        let q = a.checked_div(&d).unwrap();
        assert_eq!(&q * &d, a);
    }

    #[test]
    fn division_by_sum_or_zero_is_rejected() {
        let two_terms = &KScalar::one() + &KScalar::kappa(1);
        assert_eq!(
            KScalar::one().checked_div(&two_terms),
            Err(ScalarError::NonInvertible)
        );
        assert_eq!(
            KScalar::one().checked_div(&KScalar::zero()),
            Err(ScalarError::NonInvertible)
        );
    }

    // ---- valuation ----

    #[test]
    fn valuation_reads_the_top_exponent() {
        assert_eq!(KScalar::from_int(2).kappa_valuation(), Some(0));
        assert_eq!(ik().kappa_valuation(), Some(-1));
        assert_eq!(KScalar::zero().kappa_valuation(), None);
        let mixed = &KScalar::kappa(3) + &ik();
        assert_eq!(mixed.kappa_valuation(), Some(3));
    }

    // ---- numeric evaluation ----

    #[test]
    fn eval_substitutes_kappa() {
        assert_eq!(KScalar::kappa(2).eval_numeric(2.0), Ok((4.0, 0.0)));
        assert_eq!(ik().eval_numeric(2.0), Ok((0.0, 0.5)));
        let zero = &KScalar::one() - &KScalar::one();
        assert_eq!(zero.eval_numeric(7.5), Ok((0.0, 0.0)));
        assert_eq!(
            KScalar::one().eval_numeric(0.0),
            Err(ScalarError::KappaZero)
        );
    }

    // ---- printing ----

    #[test]
    fn canonical_text_forms() {
        assert_eq!(KScalar::zero().to_string(), "0");
        assert_eq!(KScalar::one().to_string(), "1");
        assert_eq!((-KScalar::i()).to_string(), "-i");
        assert_eq!(ik().to_string(), "i/k");
        assert_eq!((-ik()).to_string(), "-i/k");
        assert_eq!(KScalar::kappa(1).to_string(), "k");
        assert_eq!(KScalar::kappa(-2).to_string(), "1/k^2");
        assert_eq!((-KScalar::kappa(2)).to_string(), "-k^2");
        assert_eq!(
            KScalar::monomial(0, GaussRat::new(rat(1, 2), rat(3, 4))).to_string(),
            "1/2+3/4*i"
        );
        assert_eq!(
            KScalar::monomial(-1, GaussRat::new(rat(1, 2), rat(-3, 4))).to_string(),
            "(1/2-3/4*i)/k"
        );
        assert_eq!(
            KScalar::monomial(2, GaussRat::new(Rat::zero(), rat(-2, 1))).to_string(),
            "-2*i*k^2"
        );
        let sum = &KScalar::kappa(2) - &ik();
        assert_eq!(sum.to_string(), "k^2 - i/k");
    }

    #[test]
    fn coefficient_rendering_extracts_signs() {
        assert_eq!(KScalar::one().coefficient_display(), (None, false));
        assert_eq!((-KScalar::one()).coefficient_display(), (None, true));
        assert_eq!(
            (-ik()).coefficient_display(),
            (Some("i/k".to_string()), true)
        );
        let sum = &KScalar::kappa(1) + &KScalar::one();
        assert_eq!(
            sum.coefficient_display(),
            (Some("(k + 1)".to_string()), false)
        );
        // mixed Gaussian rationals keep their internal sign behind parens
        let mixed = KScalar::monomial(0, GaussRat::new(rat(-1, 2), rat(3, 4)));
        assert_eq!(
            mixed.coefficient_display(),
            (Some("(-1/2+3/4*i)".to_string()), false)
        );
    }

    // ---- proptest: ring axioms ----

    fn arb_gauss() -> impl Strategy<Value = GaussRat> {
        (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
            .prop_map(|(a, b, c, d)| GaussRat::new(rat(a, b), rat(c, d)))
    }

    fn arb_scalar() -> impl Strategy<Value = KScalar> {
        proptest::collection::vec((-3i64..=3, arb_gauss()), 0..3).prop_map(|terms| {
            let mut s = KScalar::zero();
            for (n, g) in terms {
                s = &s + &KScalar::monomial(n, g);
            }
            s
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_hold_exactly(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &KScalar::zero(), a.clone());
            prop_assert_eq!(&a * &KScalar::one(), a.clone());
            prop_assert!((&a + &(-&a)).is_zero());
        }

        #[test]
        fn valuation_is_additive_on_products(a in arb_scalar(), b in arb_scalar()) {
            let prod = &a * &b;
            match (a.kappa_valuation(), b.kappa_valuation()) {
                (Some(va), Some(vb)) => {
                    // Leading Gaussian coefficients cannot cancel: ℚ(i) is a domain.
                    prop_assert_eq!(prod.kappa_valuation(), Some(va + vb));
                }
                _ => prop_assert_eq!(prod.kappa_valuation(), None),
            }
        }

        #[test]
        fn printing_single_terms_round_trips_sign(n in -3i64..=3, g in arb_gauss()) {
            let s = KScalar::monomial(n, g);
            let (body, neg) = s.coefficient_display();
            if let Some(body) = body {
                prop_assert!(!body.starts_with('-'));
                let _ = neg;
            }
        }
    }
}
