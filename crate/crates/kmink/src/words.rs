//! The free *-algebra on the generators x⁰..x³ and its normal ordering.
//!
//! Products of generators are plain words (sequences of indices); the algebra
//! relations [x⁰, xⁱ] = (i/κ)xⁱ enter only through the rewrite
//! xⁱx⁰ → x⁰xⁱ − (i/κ)xⁱ, applied until every word has all 0-letters
//! leftmost. The rewrite runs on words on purpose: the closed shift formula
//! xⁱ p(x⁰) = p(x⁰ − i/κ) xⁱ then serves as an independent oracle in the
//! test suites instead of being the implementation.

use crate::ordered::OrderedElement;
use crate::scalars::KScalar;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Generator index: 0 is the time direction, 1..3 the spatial ones.
pub type Letter = u8;

/// A word in the generators; the empty word is the unit.
pub type Word = Vec<Letter>;

/// Redex selection order for the normal-ordering rewrite.
///
/// Both strategies must produce identical results (the rewrite system is
/// confluent); the test suites run them against each other.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum RewriteStrategy {
    /// Rewrite the leftmost spatial-before-time pair first.
    #[default]
    Leftmost,
    /// Rewrite the rightmost spatial-before-time pair first.
    Rightmost,
}

/// A finite KScalar-linear combination of words, i.e. an element of the free
/// algebra before any reordering. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NCElement {
    terms: BTreeMap<Word, KScalar>,
}

impl NCElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit (the empty word with coefficient 1).
    pub fn one() -> Self {
        Self::scalar(KScalar::one())
    }

    /// A scalar multiple of the unit.
    pub fn scalar(c: KScalar) -> Self {
        let mut e = Self::zero();
        e.insert(Vec::new(), c);
        e
    }

    /// The generator x^mu as a one-letter word.
    pub fn generator(mu: Letter) -> Self {
        assert!(mu <= 3, "generator index out of range");
        let mut e = Self::zero();
        e.insert(vec![mu], KScalar::one());
        e
    }

    /// A single word with coefficient `c`.
    pub fn from_word(w: Word, c: KScalar) -> Self {
        debug_assert!(w.iter().all(|&l| l <= 3));
        let mut e = Self::zero();
        e.insert(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate (word, coefficient) pairs in word-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &KScalar)> {
        self.terms.iter()
    }

    /// Add a coefficient onto one word, dropping the entry if it cancels.
    pub fn insert(&mut self, w: Word, c: KScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &KScalar) -> Self {
        let mut out = Self::zero();
        for (w, k) in &self.terms {
            out.insert(w.clone(), k * c);
        }
        out
    }

    /// The *-involution: reverse each word and conjugate each coefficient
    /// (the generators are selfadjoint, κ is real).
    pub fn involution(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut rev = w.clone();
            rev.reverse();
            out.insert(rev, c.conj());
        }
        out
    }

    /// Normal order with the default (leftmost) strategy.
    pub fn normal_order(&self) -> OrderedElement {
        self.normal_order_with(RewriteStrategy::Leftmost)
    }

    /// Rewrite every word until all 0-letters stand leftmost, then read each
    /// word off as a commutative exponent tuple (spatial letters commute
    /// exactly, so only their counts matter).
    pub fn normal_order_with(&self, strategy: RewriteStrategy) -> OrderedElement {
        let mut out = OrderedElement::zero();
        let mut work: Vec<(Word, KScalar)> = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        while let Some((w, c)) = work.pop() {
            match rewrite_step(&w, strategy) {
                None => out.add_term(exponents_of(&w), c),
                Some([(w1, c1), (w2, c2)]) => {
                    work.push((w1, &c * &c1));
                    work.push((w2, &c * &c2));
                }
            }
        }
        out
    }
}

/// One rewrite step xⁱx⁰ → x⁰xⁱ − (i/κ)xⁱ at the strategy-selected redex;
/// `None` when the word is already normally ordered.
pub fn rewrite_step(w: &[Letter], strategy: RewriteStrategy) -> Option<[(Word, KScalar); 2]> {
    let positions = w.windows(2).enumerate().filter_map(|(j, pair)| {
        if pair[0] != 0 && pair[1] == 0 {
            Some(j)
        } else {
            None
        }
    });
    let j = match strategy {
        RewriteStrategy::Leftmost => positions.min()?,
        RewriteStrategy::Rightmost => positions.max()?,
    };
    let mut swapped = w.to_vec();
    swapped.swap(j, j + 1);
    let mut dropped = w.to_vec();
    dropped.remove(j + 1);
    Some([
        (swapped, KScalar::one()),
        (dropped, -KScalar::i_over_k()),
    ])
}

/// Number of (spatial letter, later 0-letter) pairs; the rewrite strictly
/// decreases this count, which is the termination measure.
pub fn inversion_count(w: &[Letter]) -> usize {
    let mut zeros_seen_from_right = 0usize;
    let mut count = 0usize;
    for &l in w.iter().rev() {
        if l == 0 {
            zeros_seen_from_right += 1;
        } else {
            count += zeros_seen_from_right;
        }
    }
    count
}

fn exponents_of(w: &[Letter]) -> [u32; 4] {
    let mut e = [0u32; 4];
    for &l in w {
        e[l as usize] += 1;
    }
    e
}

/// The word 0^n0 1^n1 2^n2 3^n3 for an exponent tuple.
pub fn word_of_exponents(e: [u32; 4]) -> Word {
    let mut w = Vec::with_capacity(e.iter().sum::<u32>() as usize);
    for (l, &n) in e.iter().enumerate() {
        w.extend(std::iter::repeat_n(l as Letter, n as usize));
    }
    w
}

/// The section of normal ordering: each exponent tuple (n₀,n₁,n₂,n₃) maps to
/// the already-ordered word 0^n₀ 1^n₁ 2^n₂ 3^n₃, so `normal_order ∘ embed`
/// is the identity.
pub fn embed(f: &OrderedElement) -> NCElement {
    let mut out = NCElement::zero();
    for (e, c) in f.terms() {
        out.insert(word_of_exponents(*e), c.clone());
    }
    out
}

// ---- algebra operations ----

impl<'b> Add<&'b NCElement> for &NCElement {
    type Output = NCElement;
    fn add(self, rhs: &'b NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }
}

impl<'b> Sub<&'b NCElement> for &NCElement {
    type Output = NCElement;
    fn sub(self, rhs: &'b NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert(w.clone(), -c);
        }
        out
    }
}

/// The free (concatenation) product; no reordering is performed.
impl<'b> Mul<&'b NCElement> for &NCElement {
    type Output = NCElement;
    fn mul(self, rhs: &'b NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.insert(w, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &NCElement {
    type Output = NCElement;
    fn neg(self) -> NCElement {
        let mut out = NCElement::zero();
        for (w, c) in &self.terms {
            out.insert(w.clone(), -c);
        }
        out
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<NCElement> for NCElement {
            type Output = NCElement;
            fn $method(self, rhs: NCElement) -> NCElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&NCElement> for NCElement {
            type Output = NCElement;
            fn $method(self, rhs: &NCElement) -> NCElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<NCElement> for &NCElement {
            type Output = NCElement;
            fn $method(self, rhs: NCElement) -> NCElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for NCElement {
    type Output = NCElement;
    fn neg(self) -> NCElement {
        -&self
    }
}

impl fmt::Display for NCElement {
    /// Words printed `x0*x1*x1`, terms in word-lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let block = if w.is_empty() {
                None
            } else {
                Some(
                    w.iter()
                        .map(|l| format!("x{l}"))
                        .collect::<Vec<_>>()
                        .join("*"),
                )
            };
            let (coeff, neg) = match &block {
                Some(_) => c.coefficient_display(),
                None => {
                    let s = c.to_string();
                    match s.strip_prefix('-') {
                        Some(rest) => (Some(rest.to_string()), true),
                        None => (Some(s), false),
                    }
                }
            };
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match (coeff, block) {
                (Some(cs), Some(b)) => write!(f, "{cs} {b}")?,
                (None, Some(b)) => f.write_str(&b)?,
                (Some(cs), None) => f.write_str(&cs)?,
                (None, None) => f.write_str("1")?,
            }
        }
        Ok(())
    }
}
