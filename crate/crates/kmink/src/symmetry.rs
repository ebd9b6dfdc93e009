//! Infinitesimal κ-Poincaré actions on the space algebra and the
//! verification suites built on them.
//!
//! The ten generators act on normally ordered elements through exact
//! operators: translations are classical partials, rotations the orbital
//! action, and boosts the deformed combination of a finite time shift, the
//! spatial Laplacian and mixed second derivatives. The boost carries a
//! configurable overall sign [`BoostSign`]; the shipped default is the one
//! under which every algebra relation closes (see
//! [`check_relations`] and the sign-table test below).
//!
//! The suites sweep monomial grids and return [`Report`]s with exact
//! residuals; nothing here is numeric except the plane-wave dispersion
//! helpers at the bottom.

use crate::calculus::{deformed_box, deformed_d0, deformed_di};
use crate::ordered::{monomials_up_to, OrderedElement, Trig0};
use crate::report::Report;
use crate::scalars::{rat, GaussRat, KScalar, Rat};
use num::Zero;
use thiserror::Error;

/// The ten κ-Poincaré generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Generator {
    P0,
    P1,
    P2,
    P3,
    M1,
    M2,
    M3,
    N1,
    N2,
    N3,
}

impl Generator {
    pub const ALL: [Generator; 10] = [
        Generator::P0,
        Generator::P1,
        Generator::P2,
        Generator::P3,
        Generator::M1,
        Generator::M2,
        Generator::M3,
        Generator::N1,
        Generator::N2,
        Generator::N3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::P0 => "P0",
            Generator::P1 => "P1",
            Generator::P2 => "P2",
            Generator::P3 => "P3",
            Generator::M1 => "M1",
            Generator::M2 => "M2",
            Generator::M3 => "M3",
            Generator::N1 => "N1",
            Generator::N2 => "N2",
            Generator::N3 => "N3",
        }
    }

    pub fn momentum(mu: usize) -> Generator {
        [Generator::P0, Generator::P1, Generator::P2, Generator::P3][mu]
    }

    pub fn rotation(i: usize) -> Generator {
        [Generator::M1, Generator::M2, Generator::M3][i - 1]
    }

    pub fn boost(i: usize) -> Generator {
        [Generator::N1, Generator::N2, Generator::N3][i - 1]
    }
}

/// Overall sign on the boost action. `Negative` (the default) is the
/// convention under which all commutation relations close; `Positive` is the
/// other candidate, kept so the failing sign table can be asserted rather
/// than taken on faith.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum BoostSign {
    #[default]
    Negative,
    Positive,
}

impl BoostSign {
    pub fn scalar(self) -> KScalar {
        match self {
            BoostSign::Negative => KScalar::from_int(-1),
            BoostSign::Positive => KScalar::one(),
        }
    }
}

/// Totally antisymmetric symbol with ε₁₂₃ = +1 (spatial indices 1..3).
pub fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => -1,
        _ => 0,
    }
}

fn re_monomial(n: i64, num: i64, den: i64) -> KScalar {
    KScalar::monomial(n, GaussRat::new(rat(num, den), Rat::zero()))
}

fn im_monomial(n: i64, num: i64, den: i64) -> KScalar {
    KScalar::monomial(n, GaussRat::new(Rat::zero(), rat(num, den)))
}

// ===========================================================================
// Generator actions
// ===========================================================================

/// Translation action: i · ∂f/∂x^μ.
pub fn act_p(mu: usize, f: &OrderedElement) -> OrderedElement {
    f.classical_partial(mu).scale(&KScalar::i())
}

/// Rotation action: −i ε_{ijl} x^j ∂f/∂x^l (the classical orbital operator).
pub fn act_m(i: usize, f: &OrderedElement) -> OrderedElement {
    assert!((1..=3).contains(&i), "rotation index out of range");
    let mut out = OrderedElement::zero();
    for j in 1..=3 {
        for l in 1..=3 {
            let e = epsilon(i, j, l);
            if e == 0 {
                continue;
            }
            let c = &KScalar::from_int(-e) * &KScalar::i();
            out = &out + &(&OrderedElement::var(j) * &f.classical_partial(l)).scale(&c);
        }
    }
    out
}

/// Boost action:
///
///   s · [ i x⁰ ∂ᵢ + xⁱ( (κ/2)(1 − e^{−2i∂₀/κ}) − (1/2κ)Δ ) + (1/κ) x^k ∂_k ∂ᵢ ]
///
/// with the sum over spatial k implied and s the [`BoostSign`].
pub fn act_n(i: usize, f: &OrderedElement, sign: BoostSign) -> OrderedElement {
    assert!((1..=3).contains(&i), "boost index out of range");
    let term1 = (&OrderedElement::var(0) * &f.classical_partial(i)).scale(&KScalar::i());
    let shift_part = (f - &f.trig0(Trig0::Exp2Minus)).scale(&re_monomial(1, 1, 2));
    let lap_part = f.laplacian().scale(&re_monomial(-1, 1, 2));
    let term2 = &OrderedElement::var(i) * &(&shift_part - &lap_part);
    let mut term3 = OrderedElement::zero();
    for k in 1..=3 {
        term3 = &term3 + &(&OrderedElement::var(k) * &f.classical_partial(k).classical_partial(i));
    }
    let term3 = term3.scale(&KScalar::kappa(-1));
    (&(&term1 + &term2) + &term3).scale(&sign.scalar())
}

/// Apply one generator.
pub fn act_generator(g: Generator, f: &OrderedElement, sign: BoostSign) -> OrderedElement {
    match g {
        Generator::P0 => act_p(0, f),
        Generator::P1 => act_p(1, f),
        Generator::P2 => act_p(2, f),
        Generator::P3 => act_p(3, f),
        Generator::M1 => act_m(1, f),
        Generator::M2 => act_m(2, f),
        Generator::M3 => act_m(3, f),
        Generator::N1 => act_n(1, f, sign),
        Generator::N2 => act_n(2, f, sign),
        Generator::N3 => act_n(3, f, sign),
    }
}

// ===========================================================================
// Operator expressions
// ===========================================================================

/// A formal composite of generator actions, exact shift functions of P₀, the
/// deformed box, scalar multiples, sums and compositions — enough to encode
/// every right-hand side of the algebra relations and any polynomial-plus-
/// shift function F(P̂).
#[derive(Clone, Debug)]
pub enum OperatorExpr {
    Identity,
    Gen(Generator),
    /// The deformed box operator of the calculus.
    BoxOp,
    /// e^{c·P₀} for an exact scalar c; on ordered representatives this is the
    /// time shift x⁰ ↦ x⁰ + i·c.
    ExpP0(KScalar),
    Scale(KScalar, Box<OperatorExpr>),
    Sum(Vec<OperatorExpr>),
    /// Compose(a, b) applies b first, then a.
    Compose(Box<OperatorExpr>, Box<OperatorExpr>),
}

impl OperatorExpr {
    pub fn scaled(c: KScalar, e: OperatorExpr) -> Self {
        OperatorExpr::Scale(c, Box::new(e))
    }

    pub fn composed(outer: OperatorExpr, inner: OperatorExpr) -> Self {
        OperatorExpr::Compose(Box::new(outer), Box::new(inner))
    }

    /// Σ_k P_k∘P_k over the spatial momenta.
    pub fn p_squared() -> Self {
        OperatorExpr::Sum(
            (1..=3)
                .map(|k| {
                    OperatorExpr::composed(
                        OperatorExpr::Gen(Generator::momentum(k)),
                        OperatorExpr::Gen(Generator::momentum(k)),
                    )
                })
                .collect(),
        )
    }

    pub fn apply(&self, f: &OrderedElement, sign: BoostSign) -> OrderedElement {
        match self {
            OperatorExpr::Identity => f.clone(),
            OperatorExpr::Gen(g) => act_generator(*g, f, sign),
            OperatorExpr::BoxOp => deformed_box(f),
            OperatorExpr::ExpP0(c) => f.shift0(&(&KScalar::i() * c)),
            OperatorExpr::Scale(c, e) => e.apply(f, sign).scale(c),
            OperatorExpr::Sum(es) => es
                .iter()
                .fold(OrderedElement::zero(), |acc, e| &acc + &e.apply(f, sign)),
            OperatorExpr::Compose(a, b) => a.apply(&b.apply(f, sign), sign),
        }
    }
}

/// Apply a function of the momenta alone (shifts and polynomials in P̂);
/// the boost sign is irrelevant for such expressions.
pub fn act_f_of_p(expr: &OperatorExpr, f: &OrderedElement) -> OrderedElement {
    expr.apply(f, BoostSign::default())
}

// ===========================================================================
// The algebra relations
// ===========================================================================

/// One relation instance: [x, y]·f − rhs·f must vanish for every f.
pub struct RelationInstance {
    pub name: String,
    pub x: Generator,
    pub y: Generator,
    pub rhs: OperatorExpr,
}

impl RelationInstance {
    /// LHS − RHS evaluated on one element.
    pub fn residual(&self, f: &OrderedElement, sign: BoostSign) -> OrderedElement {
        let xf = act_generator(self.x, f, sign);
        let yf = act_generator(self.y, f, sign);
        let comm = &act_generator(self.x, &yf, sign) - &act_generator(self.y, &xf, sign);
        &comm - &self.rhs.apply(f, sign)
    }
}

fn zero_op() -> OperatorExpr {
    OperatorExpr::Sum(Vec::new())
}

/// The deformed boost–momentum right-hand side:
/// iδ_ij( (κ/2)(1 − e^{−2P₀/κ}) + (1/2κ) P⃗² ) − (i/κ) P_i P_j.
fn boost_momentum_rhs(i: usize, j: usize) -> OperatorExpr {
    let mut parts = Vec::new();
    if i == j {
        let one_minus_shift = OperatorExpr::Sum(vec![
            OperatorExpr::Identity,
            OperatorExpr::scaled(KScalar::from_int(-1), OperatorExpr::ExpP0(re_monomial(-1, -2, 1))),
        ]);
        parts.push(OperatorExpr::scaled(im_monomial(1, 1, 2), one_minus_shift));
        parts.push(OperatorExpr::scaled(
            im_monomial(-1, 1, 2),
            OperatorExpr::p_squared(),
        ));
    }
    parts.push(OperatorExpr::scaled(
        -&KScalar::i_over_k(),
        OperatorExpr::composed(
            OperatorExpr::Gen(Generator::momentum(i)),
            OperatorExpr::Gen(Generator::momentum(j)),
        ),
    ));
    OperatorExpr::Sum(parts)
}

/// All 45 ordered relation instances of the algebra:
/// three [M,M], nine [M,N], three [N,N], nine [M,P], three [M,P₀],
/// nine [N,P], three [N,P₀] and six [P,P].
pub fn relation_instances() -> Vec<RelationInstance> {
    let mut out = Vec::new();
    let i_scalar = KScalar::i();

    // [M_i, M_j] = i ε_{ijk} M_k on the three independent pairs
    for (i, j) in [(1, 2), (2, 3), (3, 1)] {
        let k = 6 - i - j;
        out.push(RelationInstance {
            name: format!("[M{i}, M{j}] - i*M{k}"),
            x: Generator::rotation(i),
            y: Generator::rotation(j),
            rhs: OperatorExpr::scaled(
                &KScalar::from_int(epsilon(i, j, k)) * &i_scalar,
                OperatorExpr::Gen(Generator::rotation(k)),
            ),
        });
    }

    // [M_i, N_j] = i ε_{ijk} N_k, all nine ordered pairs
    for i in 1..=3 {
        for j in 1..=3 {
            let (name, rhs) = if i == j {
                (format!("[M{i}, N{j}]"), zero_op())
            } else {
                let k = 6 - i - j;
                (
                    format!(
                        "[M{i}, N{j}] {} i*N{k}",
                        if epsilon(i, j, k) > 0 { "-" } else { "+" }
                    ),
                    OperatorExpr::scaled(
                        &KScalar::from_int(epsilon(i, j, k)) * &i_scalar,
                        OperatorExpr::Gen(Generator::boost(k)),
                    ),
                )
            };
            out.push(RelationInstance {
                name,
                x: Generator::rotation(i),
                y: Generator::boost(j),
                rhs,
            });
        }
    }

    // [N_i, N_j] = −i ε_{ijk} M_k
    for (i, j) in [(1, 2), (2, 3), (3, 1)] {
        let k = 6 - i - j;
        out.push(RelationInstance {
            name: format!("[N{i}, N{j}] + i*M{k}"),
            x: Generator::boost(i),
            y: Generator::boost(j),
            rhs: OperatorExpr::scaled(
                &KScalar::from_int(-epsilon(i, j, k)) * &i_scalar,
                OperatorExpr::Gen(Generator::rotation(k)),
            ),
        });
    }

    // [M_i, P_j] = i ε_{ijk} P_k, all nine ordered pairs
    for i in 1..=3 {
        for j in 1..=3 {
            let (name, rhs) = if i == j {
                (format!("[M{i}, P{j}]"), zero_op())
            } else {
                let k = 6 - i - j;
                (
                    format!(
                        "[M{i}, P{j}] {} i*P{k}",
                        if epsilon(i, j, k) > 0 { "-" } else { "+" }
                    ),
                    OperatorExpr::scaled(
                        &KScalar::from_int(epsilon(i, j, k)) * &i_scalar,
                        OperatorExpr::Gen(Generator::momentum(k)),
                    ),
                )
            };
            out.push(RelationInstance {
                name,
                x: Generator::rotation(i),
                y: Generator::momentum(j),
                rhs,
            });
        }
    }

    // [M_i, P_0] = 0
    for i in 1..=3 {
        out.push(RelationInstance {
            name: format!("[M{i}, P0]"),
            x: Generator::rotation(i),
            y: Generator::P0,
            rhs: zero_op(),
        });
    }

    // [N_i, P_j] = iδ_ij(κ/2(1 − e^{−2P₀/κ}) + P⃗²/2κ) − (i/κ)P_iP_j
    for i in 1..=3 {
        for j in 1..=3 {
            out.push(RelationInstance {
                name: format!("[N{i}, P{j}] - boost-momentum rhs"),
                x: Generator::boost(i),
                y: Generator::momentum(j),
                rhs: boost_momentum_rhs(i, j),
            });
        }
    }

    // [N_i, P_0] = i P_i
    for i in 1..=3 {
        out.push(RelationInstance {
            name: format!("[N{i}, P0] - i*P{i}"),
            x: Generator::boost(i),
            y: Generator::P0,
            rhs: OperatorExpr::scaled(i_scalar.clone(), OperatorExpr::Gen(Generator::momentum(i))),
        });
    }

    // [P_μ, P_ν] = 0
    for mu in 0..4 {
        for nu in mu + 1..4 {
            out.push(RelationInstance {
                name: format!("[P{mu}, P{nu}]"),
                x: Generator::momentum(mu),
                y: Generator::momentum(nu),
                rhs: zero_op(),
            });
        }
    }

    out
}

/// Evaluate every relation instance on every monomial of total degree
/// ≤ maxdeg under the given boost sign.
pub fn check_relations(maxdeg: u32, sign: BoostSign) -> Report {
    let mut report = Report::new();
    let instances = relation_instances();
    for exps in monomials_up_to(maxdeg) {
        let f = OrderedElement::monomial(exps, KScalar::one());
        for inst in &instances {
            report.record(inst.name.as_str(), &f, inst.residual(&f, sign));
        }
    }
    report
}

// ===========================================================================
// Leibniz rules (the coproducts in action)
// ===========================================================================

/// X̂(f⋆g) − Σ (X̂₍₁₎f)⋆(X̂₍₂₎g) for one generator. The deformed legs are:
/// P_i and N_i twist the right slot by the shift e^{−P₀/κ}, and the boost
/// adds the (s/κ) ε_{ijk} (M̂_j ⊗ P̂_k) cross term, s the boost sign; P₀ and
/// the rotations are primitive.
pub fn leibniz_residual(
    x: Generator,
    f: &OrderedElement,
    g: &OrderedElement,
    sign: BoostSign,
) -> OrderedElement {
    let lhs = act_generator(x, &f.star(g), sign);
    let twist = |h: &OrderedElement| h.shift0(&-&KScalar::i_over_k());
    let rhs = match x {
        Generator::P0 | Generator::M1 | Generator::M2 | Generator::M3 => {
            &act_generator(x, f, sign).star(g) + &f.star(&act_generator(x, g, sign))
        }
        Generator::P1 | Generator::P2 | Generator::P3 => {
            &act_generator(x, f, sign).star(&twist(g)) + &f.star(&act_generator(x, g, sign))
        }
        Generator::N1 | Generator::N2 | Generator::N3 => {
            let i = match x {
                Generator::N1 => 1,
                Generator::N2 => 2,
                _ => 3,
            };
            let mut rhs = &act_generator(x, f, sign).star(&twist(g))
                + &f.star(&act_generator(x, g, sign));
            let cross_coeff = &sign.scalar() * &KScalar::kappa(-1);
            for j in 1..=3 {
                for k in 1..=3 {
                    let e = epsilon(i, j, k);
                    if e == 0 {
                        continue;
                    }
                    let term = act_m(j, f).star(&act_p(k, g));
                    rhs = &rhs + &term.scale(&(&cross_coeff * &KScalar::from_int(e)));
                }
            }
            rhs
        }
    };
    &lhs - &rhs
}

/// Sweep all generators over all monomial pairs with deg f + deg g ≤ maxdeg.
pub fn check_leibniz(maxdeg: u32, sign: BoostSign) -> Report {
    let mut report = Report::new();
    let monomials = monomials_up_to(maxdeg);
    for ef in &monomials {
        let df: u32 = ef.iter().sum();
        let f = OrderedElement::monomial(*ef, KScalar::one());
        for eg in &monomials {
            let dg: u32 = eg.iter().sum();
            if df + dg > maxdeg {
                continue;
            }
            let g = OrderedElement::monomial(*eg, KScalar::one());
            for x in Generator::ALL {
                report.record(
                    format!("Leibniz {}", x.name()),
                    format!("({f}, {g})"),
                    leibniz_residual(x, &f, &g, sign),
                );
            }
        }
    }
    report
}

// ===========================================================================
// Invariance of the box and the Klein-Gordon identities
// ===========================================================================

/// [∂̂, X̂]f for one generator.
pub fn invariance_residual(x: Generator, f: &OrderedElement, sign: BoostSign) -> OrderedElement {
    &deformed_box(&act_generator(x, f, sign)) - &act_generator(x, &deformed_box(f), sign)
}

/// Sweep [∂̂, X̂] = 0 over all ten generators and all monomials of degree
/// ≤ maxdeg.
pub fn check_invariance(maxdeg: u32, sign: BoostSign) -> Report {
    let mut report = Report::new();
    for exps in monomials_up_to(maxdeg) {
        let f = OrderedElement::monomial(exps, KScalar::one());
        for x in Generator::ALL {
            report.record(
                format!("[box, {}]", x.name()),
                &f,
                invariance_residual(x, &f, sign),
            );
        }
    }
    report
}

/// ∂̂₀²f − Σᵢ∂̂ᵢ²f − 8∂̂f + (16/κ²)∂̂∂̂f, the operator identity connecting the
/// two forms of the wave equation; zero on every element.
pub fn box_identity_residual(f: &OrderedElement) -> OrderedElement {
    let d0d0 = deformed_d0(&deformed_d0(f));
    let mut spatial = OrderedElement::zero();
    for i in 1..=3 {
        spatial = &spatial + &deformed_di(&deformed_di(f, i), i);
    }
    let b = deformed_box(f);
    let bb = deformed_box(&b).scale(&re_monomial(-2, 16, 1));
    &(&(&d0d0 - &spatial) - &b.scale(&KScalar::from_int(8))) + &bb
}

/// Sweep the box identity over all monomials of degree ≤ maxdeg.
pub fn check_box_identity(maxdeg: u32) -> Report {
    let mut report = Report::new();
    for exps in monomials_up_to(maxdeg) {
        let f = OrderedElement::monomial(exps, KScalar::one());
        report.record("d0^2 - di^2 - 8*box + (16/k^2)*box^2", &f, box_identity_residual(&f));
    }
    report
}

/// The deformed Klein-Gordon operator: ∂̂f + (m²/8)f.
pub fn kg_apply(f: &OrderedElement, m: &KScalar) -> OrderedElement {
    let c = &(m * m) * &KScalar::from_rat(rat(1, 8));
    &deformed_box(f) + &f.scale(&c)
}

/// Residual of the equivalence between the two wave-equation forms:
///
///   [∂̂₀² − Σ∂̂ᵢ² + m²(1 + m²/4κ²)]f + (16/κ²)(∂̂ + m²/8)(∂̂ − κ²/2 − m²/8)f
///
/// Expanding the product shows this equals the box-identity residual, so it
/// vanishes identically; sweeping it directly asserts that a solution of
/// (∂̂ + m²/8)f = 0 solves the second-order form with mass coefficient
/// m²(1 + m²/4κ²), and conversely.
pub fn kg_equivalence_residual(f: &OrderedElement, m: &KScalar) -> OrderedElement {
    let msq = m * m;
    let mass_coeff = &msq + &(&(&msq * &msq) * &re_monomial(-2, 1, 4));
    let d0d0 = deformed_d0(&deformed_d0(f));
    let mut spatial = OrderedElement::zero();
    for i in 1..=3 {
        spatial = &spatial + &deformed_di(&deformed_di(f, i), i);
    }
    let second_form = &(&d0d0 - &spatial) + &f.scale(&mass_coeff);

    let shifted = &deformed_box(f) - &f.scale(&(&re_monomial(2, 1, 2) + &(&msq * &KScalar::from_rat(rat(1, 8)))));
    let product = kg_apply(&shifted, m).scale(&re_monomial(-2, -16, 1));
    &second_form - &product
}

// ===========================================================================
// Plane waves: dispersion relation and its numeric root
// ===========================================================================

/// A numeric wave vector (k₀, k⃗), in the same inverse-length units as κ
/// and the mass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Momentum {
    pub k0: f64,
    pub kvec: [f64; 3],
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DispersionError {
    #[error("kappa must be positive")]
    NonPositiveKappa,
    #[error("mass must be nonnegative")]
    NegativeMass,
    #[error("no positive root bracketed")]
    NoBracket,
}

/// The mass-shell function R(k) = 4κ² sinh²(k₀/2κ) − e^{−k₀/κ}|k⃗|² − m²,
/// the eigenvalue of −8(∂̂ + m²/8) on the ordered plane wave with wave
/// vector k. R = 0 is the deformed dispersion relation.
pub fn dispersion_residual(k: &Momentum, kappa: f64, m: f64) -> Result<f64, DispersionError> {
    if kappa.is_nan() || kappa <= 0.0 {
        return Err(DispersionError::NonPositiveKappa);
    }
    let s = (k.k0 / (2.0 * kappa)).sinh();
    let ksq: f64 = k.kvec.iter().map(|x| x * x).sum();
    Ok(4.0 * kappa * kappa * s * s - (-k.k0 / kappa).exp() * ksq - m * m)
}

/// The k₀ ≥ 0 root of the dispersion relation at fixed spatial momentum,
/// by geometric bracket expansion and bisection to better than 1e−12
/// relative. R is strictly increasing in k₀ ≥ 0, so the root is unique.
pub fn solve_k0(kvec: [f64; 3], kappa: f64, m: f64) -> Result<f64, DispersionError> {
    if kappa.is_nan() || kappa <= 0.0 {
        return Err(DispersionError::NonPositiveKappa);
    }
    if m < 0.0 {
        return Err(DispersionError::NegativeMass);
    }
    let residual = |k0: f64| {
        dispersion_residual(&Momentum { k0, kvec }, kappa, m).expect("kappa already validated")
    };
    if residual(0.0) >= 0.0 {
        // R(0) = −|k⃗|² − m² ≤ 0, with equality only for k⃗ = 0, m = 0.
        return Ok(0.0);
    }
    let mut lo = 0.0f64;
    let mut hi = 1e-3 * kappa.max(m.max(1.0));
    let mut expansions = 0;
    while residual(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 2000 || !hi.is_finite() {
            return Err(DispersionError::NoBracket);
        }
    }
    // verified: residual(lo) ≤ 0 < residual(hi)
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
