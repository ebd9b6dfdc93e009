//! The five-dimensional bicovariant differential calculus.
//!
//! One-forms live on the basis {τ⁰, τ¹, τ², τ³, τ} with coefficients kept on
//! the left. The exterior derivative is computed along two fully independent
//! paths that the test suites compare exactly:
//!
//! * [`exterior_d_leibniz`] — d(word) by the Leibniz rule, dx^μ = τ^μ, then
//!   pushing every basis form left past the remaining letters with the
//!   bimodule commutators;
//! * [`exterior_d`] — the closed formulas for the deformed partials ∂₀, ∂ᵢ
//!   and the scalar operator ∂ (the deformed box), built from exact shifts.
//!
//! The metric is diag(+1, −1, −1, −1); with this signature the two paths
//! agree (the opposite signature fails the cross-check).

use crate::ordered::{monomials_up_to, OrderedElement, Trig0};
use crate::report::Report;
use crate::scalars::{GaussRat, KScalar, Rat};
use crate::words::{embed, Letter, NCElement};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Basis labels of the calculus, ordered τ⁰ < τ¹ < τ² < τ³ < τ.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FormLabel {
    T0,
    T1,
    T2,
    T3,
    /// The extra scalar form τ.
    Tau,
}

impl FormLabel {
    pub const ALL: [FormLabel; 5] = [
        FormLabel::T0,
        FormLabel::T1,
        FormLabel::T2,
        FormLabel::T3,
        FormLabel::Tau,
    ];

    /// The label τ^mu for a generator index.
    pub fn from_index(mu: Letter) -> FormLabel {
        match mu {
            0 => FormLabel::T0,
            1 => FormLabel::T1,
            2 => FormLabel::T2,
            3 => FormLabel::T3,
            _ => panic!("generator index out of range"),
        }
    }

    /// Generator index for τ^mu; `None` for the scalar form τ.
    pub fn index(self) -> Option<usize> {
        match self {
            FormLabel::T0 => Some(0),
            FormLabel::T1 => Some(1),
            FormLabel::T2 => Some(2),
            FormLabel::T3 => Some(3),
            FormLabel::Tau => None,
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            FormLabel::T0 => "t0",
            FormLabel::T1 => "t1",
            FormLabel::T2 => "t2",
            FormLabel::T3 => "t3",
            FormLabel::Tau => "tau",
        }
    }
}

/// The flat metric diag(+1, −1, −1, −1) used for raising/lowering and in the
/// bimodule commutators.
pub struct Metric;

impl Metric {
    pub const DIAG: [i64; 4] = [1, -1, -1, -1];

    pub fn diag(mu: usize) -> i64 {
        Self::DIAG[mu]
    }
}

// ===========================================================================
// One-forms
// ===========================================================================

/// A one-form Σ f_A τ^A with left `OrderedElement` coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OneForm {
    coeffs: BTreeMap<FormLabel, OrderedElement>,
}

impl OneForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The bare basis form τ^A.
    pub fn basis(label: FormLabel) -> Self {
        let mut w = Self::zero();
        w.add_coeff(label, OrderedElement::one());
        w
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of τ^A (zero if absent).
    pub fn coeff(&self, label: FormLabel) -> OrderedElement {
        self.coeffs.get(&label).cloned().unwrap_or_default()
    }

    pub fn add_coeff(&mut self, label: FormLabel, f: OrderedElement) {
        if f.is_zero() {
            return;
        }
        match self.coeffs.entry(label) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Iterate (label, coefficient) pairs in basis order.
    pub fn coeffs(&self) -> impl Iterator<Item = (&FormLabel, &OrderedElement)> {
        self.coeffs.iter()
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, c: &KScalar) -> Self {
        let mut out = Self::zero();
        for (label, f) in &self.coeffs {
            out.add_coeff(*label, f.scale(c));
        }
        out
    }

    /// Left multiplication a·w by an algebra element: every coefficient is
    /// star-multiplied from the left.
    pub fn left_star(&self, a: &OrderedElement) -> Self {
        let mut out = Self::zero();
        for (label, f) in &self.coeffs {
            out.add_coeff(*label, a.star(f));
        }
        out
    }

    /// Right multiplication w·b: basis forms are pushed left past the words
    /// of `b` with the bimodule commutators, then the existing coefficients
    /// multiply from the left.
    pub fn right_mul_element(&self, b: &NCElement) -> Self {
        let mut out = Self::zero();
        for (label, f) in &self.coeffs {
            for (word, c) in b.terms() {
                let pushed = push_form_left(*label, word).left_star(f).scale(c);
                out = &out + &pushed;
            }
        }
        out
    }
}

impl<'b> Add<&'b OneForm> for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &'b OneForm) -> OneForm {
        let mut out = self.clone();
        for (label, f) in &rhs.coeffs {
            out.add_coeff(*label, f.clone());
        }
        out
    }
}

impl<'b> Sub<&'b OneForm> for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &'b OneForm) -> OneForm {
        let mut out = self.clone();
        for (label, f) in &rhs.coeffs {
            out.add_coeff(*label, -f);
        }
        out
    }
}

impl Neg for &OneForm {
    type Output = OneForm;
    fn neg(self) -> OneForm {
        let mut out = OneForm::zero();
        for (label, f) in &self.coeffs {
            out.add_coeff(*label, -f);
        }
        out
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(OneForm, Add, add);
forward_binop!(OneForm, Sub, sub);

impl fmt::Display for OneForm {
    /// All five slots, always: `f0 :: t0 | f1 :: t1 | ... | fphi :: tau`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = FormLabel::ALL
            .iter()
            .map(|label| format!("{} :: {}", self.coeff(*label), label.text()))
            .collect();
        f.write_str(&parts.join(" | "))
    }
}

// ===========================================================================
// Two-forms
// ===========================================================================

/// A two-form with left coefficients on ordered basis pairs A < B; the wedge
/// antisymmetry is quotiented away by the key ordering.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TwoForm {
    coeffs: BTreeMap<(FormLabel, FormLabel), OrderedElement>,
}

impl TwoForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, a: FormLabel, b: FormLabel) -> OrderedElement {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Add f·(τ^A ∧ τ^B), reordering to A < B with the wedge sign;
    /// A = B contributes nothing.
    pub fn add_wedge_term(&mut self, a: FormLabel, b: FormLabel, f: OrderedElement) {
        use std::cmp::Ordering;
        let (key, f) = match a.cmp(&b) {
            Ordering::Equal => return,
            Ordering::Less => ((a, b), f),
            Ordering::Greater => ((b, a), -&f),
        };
        if f.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn left_star(&self, a: &OrderedElement) -> Self {
        let mut out = Self::zero();
        for ((p, q), f) in &self.coeffs {
            out.add_wedge_term(*p, *q, a.star(f));
        }
        out
    }
}

impl<'b> Add<&'b TwoForm> for &TwoForm {
    type Output = TwoForm;
    fn add(self, rhs: &'b TwoForm) -> TwoForm {
        let mut out = self.clone();
        for ((a, b), f) in &rhs.coeffs {
            out.add_wedge_term(*a, *b, f.clone());
        }
        out
    }
}

forward_binop!(TwoForm, Add, add);

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|((a, b), g)| format!("{} :: {}^{}", g, a.text(), b.text()))
            .collect();
        f.write_str(&parts.join(" | "))
    }
}

// ===========================================================================
// Bimodule commutators and the Leibniz path
// ===========================================================================

/// The commutator [τ^A, x^ν] as a constant-coefficient combination of basis
/// forms:
///
///   [τ^μ, x^ν] = (i/κ) g^{0μ} τ^ν − (i/κ) g^{μν} τ⁰ + (1/4) g^{μν} τ
///   [τ,  x^μ]  = −(4/κ²) τ^μ
pub fn form_commutator(label: FormLabel, nu: Letter) -> Vec<(FormLabel, KScalar)> {
    let mut out = Vec::new();
    match label.index() {
        None => {
            out.push((
                FormLabel::from_index(nu),
                &KScalar::from_int(-4) * &KScalar::kappa(-2),
            ));
        }
        Some(mu) => {
            let ik = KScalar::i_over_k();
            if mu == 0 {
                // g^{0μ} = +1 only at μ = 0
                out.push((FormLabel::from_index(nu), ik.clone()));
            }
            if mu == nu as usize {
                let g = KScalar::from_int(Metric::diag(mu));
                out.push((FormLabel::T0, -(&ik * &g)));
                out.push((
                    FormLabel::Tau,
                    &g * &KScalar::from_rat(crate::scalars::rat(1, 4)),
                ));
            }
        }
    }
    out
}

/// Express τ^A·(word) in left-coefficient normal form Σ_B f_B τ^B by pushing
/// the basis form past one letter at a time. The commutators have constant
/// coefficients, so the recursion stays linear in each produced coefficient.
pub fn push_form_left(label: FormLabel, w: &[Letter]) -> OneForm {
    match w.split_first() {
        None => OneForm::basis(label),
        Some((&nu, rest)) => {
            // τ^A x^ν = x^ν τ^A + [τ^A, x^ν]
            let xnu = OrderedElement::var(nu as usize);
            let mut out = push_form_left(label, rest).left_star(&xnu);
            for (b, c) in form_commutator(label, nu) {
                out = &out + &push_form_left(b, rest).scale(&c);
            }
            out
        }
    }
}

/// Exterior derivative through the Leibniz rule: d(word) inserts τ^letter at
/// every position, then pushes it left past the suffix.
pub fn exterior_d_leibniz(a: &NCElement) -> OneForm {
    let mut out = OneForm::zero();
    for (word, coeff) in a.terms() {
        for k in 0..word.len() {
            let prefix = NCElement::from_word(word[..k].to_vec(), KScalar::one()).normal_order();
            let pushed = push_form_left(FormLabel::from_index(word[k]), &word[k + 1..]);
            out = &out + &pushed.left_star(&prefix).scale(coeff);
        }
    }
    out
}

// ===========================================================================
// Closed-form deformed derivatives
// ===========================================================================

/// The deformed time derivative ∂₀:f: = :(κ sin(∂₀/κ) + (i/2κ) e^{i∂₀/κ} Δ)f:.
pub fn deformed_d0(f: &OrderedElement) -> OrderedElement {
    let sin_part = f.trig0(Trig0::Sin).scale(&KScalar::kappa(1));
    let i_over_2k = KScalar::monomial(-1, GaussRat::new(Rat::zero(), crate::scalars::rat(1, 2)));
    let lap_part = f.laplacian().trig0(Trig0::ExpPlus).scale(&i_over_2k);
    &sin_part + &lap_part
}

/// The deformed spatial derivative ∂ᵢ:f: = :e^{i∂₀/κ} ∂f/∂xⁱ:.
pub fn deformed_di(f: &OrderedElement, i: usize) -> OrderedElement {
    assert!((1..=3).contains(&i), "spatial index out of range");
    f.classical_partial(i).trig0(Trig0::ExpPlus)
}

/// The deformed scalar operator (box)
/// ∂:f: = :(κ²/4 (1 − cos(∂₀/κ)) − (1/8) e^{i∂₀/κ} Δ)f:.
pub fn deformed_box(f: &OrderedElement) -> OrderedElement {
    let quarter_k2 = KScalar::monomial(2, GaussRat::new(crate::scalars::rat(1, 4), Rat::zero()));
    let cos_part = (f - &f.trig0(Trig0::Cos)).scale(&quarter_k2);
    let eighth = KScalar::from_rat(crate::scalars::rat(1, 8));
    let lap_part = f.laplacian().trig0(Trig0::ExpPlus).scale(&eighth);
    &cos_part - &lap_part
}

/// Exterior derivative through the closed formulas:
/// df = ∂₀f τ⁰ + ∂ᵢf τⁱ + ∂f τ. Must agree exactly with
/// [`exterior_d_leibniz`] on the embedded word representative.
pub fn exterior_d(f: &OrderedElement) -> OneForm {
    let mut out = OneForm::zero();
    out.add_coeff(FormLabel::T0, deformed_d0(f));
    for i in 1..=3 {
        out.add_coeff(FormLabel::from_index(i as Letter), deformed_di(f, i));
    }
    out.add_coeff(FormLabel::Tau, deformed_box(f));
    out
}

// ===========================================================================
// Wedge and the derivative of one-forms
// ===========================================================================

/// Wedge a left-coefficient one-form with a bare basis label.
pub fn wedge_with_basis(w: &OneForm, label: FormLabel) -> TwoForm {
    let mut out = TwoForm::zero();
    for (a, f) in w.coeffs() {
        out.add_wedge_term(*a, label, f.clone());
    }
    out
}

/// dτ = −2 τ_μ ∧ τ^μ, evaluated literally: the diagonal metric contracts a
/// symmetric index pair into the antisymmetric wedge, so every summand
/// τ^μ ∧ τ^μ dies and the result is identically zero (τ is exact).
pub fn d_tau() -> TwoForm {
    let mut out = TwoForm::zero();
    for mu in 0..4usize {
        let label = FormLabel::from_index(mu as Letter);
        let lowered =
            OneForm::basis(label).scale(&KScalar::from_int(-2 * Metric::diag(mu)));
        out = &out + &wedge_with_basis(&lowered, label);
    }
    out
}

/// Exterior derivative of a one-form:
/// d(Σ f_A τ^A) = Σ (df_A) ∧ τ^A + Σ f_A · dτ^A, with dτ^μ = 0 and dτ the
/// literal (vanishing) contraction above.
pub fn d_oneform(w: &OneForm) -> TwoForm {
    let mut out = TwoForm::zero();
    for (label, f) in w.coeffs() {
        out = &out + &wedge_with_basis(&exterior_d(f), *label);
        if *label == FormLabel::Tau {
            out = &out + &d_tau().left_star(f);
        }
    }
    out
}

// ===========================================================================
// The calculus verification suite
// ===========================================================================

/// Residual text for a one-form: `"0"` iff it vanishes.
fn oneform_residual(w: &OneForm) -> String {
    if w.is_zero() {
        "0".to_string()
    } else {
        w.to_string()
    }
}

/// The part of an element whose coefficients survive the κ → ∞ limit
/// (κ-valuation ≥ 0). The deformation corrections must all sit strictly
/// below κ⁰, so this part of (deformed − classical) must vanish.
fn surviving_limit_part(f: &OrderedElement) -> OrderedElement {
    let mut out = OrderedElement::zero();
    for (exps, c) in f.terms() {
        let mut keep = KScalar::zero();
        for (n, g) in c.terms() {
            if n >= 0 {
                keep = &keep + &KScalar::monomial(n, g.clone());
            }
        }
        out.add_term(*exps, keep);
    }
    out
}

/// The calculus suite: oracle equality of the two exterior-derivative paths,
/// d(df) = 0, the τ-definition identity, the literal dτ, the product rule on
/// monomial pairs, and the classical limit of every deformed derivative.
pub fn check_calculus(maxdeg: u32) -> Report {
    let mut report = Report::new();
    let grid = monomials_up_to(maxdeg);

    for exps in &grid {
        let f = OrderedElement::monomial(*exps, KScalar::one());
        let diff = &exterior_d(&f) - &exterior_d_leibniz(&embed(&f));
        report.record("closed d = Leibniz d", &f, oneform_residual(&diff));
    }

    for exps in &grid {
        let f = OrderedElement::monomial(*exps, KScalar::one());
        report.record("d(df) = 0", &f, d_oneform(&exterior_d(&f)));
    }

    {
        let got = &exterior_d(&tau_defining_element()) - &two_x_lowered();
        let diff = &got - &OneForm::basis(FormLabel::Tau);
        report.record(
            "d(x^2 + (3i/k)x0) - 2x.tau = tau",
            "x^2 + (3i/k)x0",
            oneform_residual(&diff),
        );
        report.record("d tau = 0", "tau", d_tau());
    }

    for ef in &grid {
        let df: u32 = ef.iter().sum();
        let a = embed(&OrderedElement::monomial(*ef, KScalar::one()));
        for eg in &grid {
            let dg: u32 = eg.iter().sum();
            if df + dg > maxdeg {
                continue;
            }
            let b = embed(&OrderedElement::monomial(*eg, KScalar::one()));
            let lhs = exterior_d_leibniz(&(&a * &b));
            let rhs = &exterior_d_leibniz(&a).right_mul_element(&b)
                + &exterior_d_leibniz(&b).left_star(&a.normal_order());
            report.record(
                "d(fg) = (df)g + f(dg)",
                format!("({}, {})", a.normal_order(), b.normal_order()),
                oneform_residual(&(&lhs - &rhs)),
            );
        }
    }

    for exps in &grid {
        let f = OrderedElement::monomial(*exps, KScalar::one());
        report.record(
            "classical limit of d0",
            &f,
            surviving_limit_part(&(&deformed_d0(&f) - &f.classical_partial(0))),
        );
        for i in 1..=3 {
            report.record(
                format!("classical limit of d{i}"),
                &f,
                surviving_limit_part(&(&deformed_di(&f, i) - &f.classical_partial(i))),
            );
        }
        let classical_box = &f.classical_partial(0).classical_partial(0) - &f.laplacian();
        report.record(
            "classical limit of 8*box",
            &f,
            surviving_limit_part(
                &(&deformed_box(&f).scale(&KScalar::from_int(8)) - &classical_box),
            ),
        );
    }

    report
}

/// The quadratic x² + (3i/κ)x⁰ (with x² = x⁰² − Σᵢ xⁱ²) whose differential
/// defines τ: d(x² + (3i/κ)x⁰) − 2x_μ τ^μ = τ.
pub fn tau_defining_element() -> OrderedElement {
    let mut f = OrderedElement::zero();
    for mu in 0..4usize {
        let mut exps = [0u32; 4];
        exps[mu] = 2;
        f.add_term(exps, KScalar::from_int(Metric::diag(mu)));
    }
    f.add_term(
        [1, 0, 0, 0],
        &KScalar::from_int(3) * &KScalar::i_over_k(),
    );
    f
}

/// The combination 2x_μ τ^μ = Σ 2 g_{μμ} x^μ τ^μ appearing in the definition
/// of τ.
pub fn two_x_lowered() -> OneForm {
    let mut out = OneForm::zero();
    for mu in 0..4usize {
        out.add_coeff(
            FormLabel::from_index(mu as Letter),
            OrderedElement::var(mu).scale(&KScalar::from_int(2 * Metric::diag(mu))),
        );
    }
    out
}
