//! Expression trees for the input language and their evaluation into
//! noncommutative algebra elements.
//!
//! `*` (and juxtaposition) is the noncommutative product; `:expr:` is the
//! ordering bracket, which reinterprets its content commutatively by sorting
//! every word into normal form. Division is defined only by invertible
//! scalars (single Laurent monomials in κ), matching the scalar ring.

use crate::scalars::{KScalar, Rat};
use crate::words::NCElement;
use num::BigInt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Int(BigInt),
    /// The imaginary unit `i`.
    ImagUnit,
    /// The deformation scale `k`.
    Kappa,
    /// A generator `x0`..`x3`.
    Gen(u8),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
    /// The ordering bracket `:expr:`.
    Ordered(Box<Ast>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("division requires a nonzero invertible scalar divisor")]
    NonInvertibleDivisor,
    #[error("negative powers require an invertible scalar base")]
    NegativePowerOfNonScalar,
    #[error("exponent magnitude is capped at 64")]
    ExponentTooLarge,
}

/// The scalar content of an element, if it has no generator letters.
fn as_scalar(e: &NCElement) -> Option<KScalar> {
    let mut out = KScalar::zero();
    for (word, c) in e.terms() {
        if !word.is_empty() {
            return None;
        }
        out = &out + c;
    }
    Some(out)
}

const POW_CAP: i64 = 64;

impl Ast {
    pub fn eval(&self) -> Result<NCElement, EvalError> {
        match self {
            Ast::Int(n) => Ok(NCElement::scalar(KScalar::from_rat(Rat::from_integer(
                n.clone(),
            )))),
            Ast::ImagUnit => Ok(NCElement::scalar(KScalar::i())),
            Ast::Kappa => Ok(NCElement::scalar(KScalar::kappa(1))),
            Ast::Gen(mu) => Ok(NCElement::generator(*mu)),
            Ast::Neg(a) => Ok(-&a.eval()?),
            Ast::Add(a, b) => Ok(&a.eval()? + &b.eval()?),
            Ast::Sub(a, b) => Ok(&a.eval()? - &b.eval()?),
            Ast::Mul(a, b) => Ok(&a.eval()? * &b.eval()?),
            Ast::Div(a, b) => {
                let divisor = as_scalar(&b.eval()?).ok_or(EvalError::NonInvertibleDivisor)?;
                let inverse = KScalar::one()
                    .checked_div(&divisor)
                    .map_err(|_| EvalError::NonInvertibleDivisor)?;
                Ok(a.eval()?.scale(&inverse))
            }
            Ast::Pow(a, e) => {
                if e.abs() > POW_CAP {
                    return Err(EvalError::ExponentTooLarge);
                }
                let base = a.eval()?;
                if let Some(s) = as_scalar(&base) {
                    let s = if *e < 0 {
                        KScalar::one()
                            .checked_div(&s)
                            .map_err(|_| EvalError::NegativePowerOfNonScalar)?
                    } else {
                        s
                    };
                    return Ok(NCElement::scalar(s.pow(e.unsigned_abs() as u32)));
                }
                if *e < 0 {
                    return Err(EvalError::NegativePowerOfNonScalar);
                }
                let mut out = NCElement::one();
                for _ in 0..*e {
                    out = &out * &base;
                }
                Ok(out)
            }
            Ast::Ordered(a) => {
                let inner = a.eval()?;
                let mut out = NCElement::zero();
                for (word, c) in inner.terms() {
                    let mut sorted = word.clone();
                    sorted.sort_unstable();
                    out.insert(sorted, c.clone());
                }
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn gen(mu: u8) -> Ast {
        Ast::Gen(mu)
    }

    fn mul(a: Ast, b: Ast) -> Ast {
        Ast::Mul(Box::new(a), Box::new(b))
    }

    #[test]
    fn products_stay_noncommutative() {
        let x1x0 = mul(gen(1), gen(0)).eval().unwrap();
        assert_eq!(x1x0, NCElement::from_word(vec![1, 0], KScalar::one()));
        let x0x1 = mul(gen(0), gen(1)).eval().unwrap();
        assert_ne!(x1x0, x0x1);
    }

    #[test]
    fn ordering_bracket_sorts_words() {
        let raw = mul(gen(1), gen(0));
        let bracketed = Ast::Ordered(Box::new(raw)).eval().unwrap();
        assert_eq!(bracketed, NCElement::from_word(vec![0, 1], KScalar::one()));
    }

    #[test]
    fn division_inverts_scalar_monomials() {
        // (i) / (2*k) = (1/2) i / k
        let e = Ast::Div(
            Box::new(Ast::ImagUnit),
            Box::new(mul(Ast::Int(BigInt::from(2)), Ast::Kappa)),
        );
        let want = NCElement::scalar(KScalar::monomial(
            -1,
            crate::scalars::GaussRat::new(rat(0, 1), rat(1, 2)),
        ));
        assert_eq!(e.eval().unwrap(), want);
    }

    #[test]
    fn division_by_elements_or_sums_is_rejected() {
        let by_x = Ast::Div(Box::new(Ast::Int(BigInt::from(1))), Box::new(gen(0)));
        assert_eq!(by_x.eval(), Err(EvalError::NonInvertibleDivisor));
        let by_sum = Ast::Div(
            Box::new(Ast::Int(BigInt::from(1))),
            Box::new(Ast::Add(Box::new(Ast::Kappa), Box::new(Ast::Int(BigInt::from(1))))),
        );
        assert_eq!(by_sum.eval(), Err(EvalError::NonInvertibleDivisor));
    }

    #[test]
    fn power_rules() {
        let sq = Ast::Pow(Box::new(gen(0)), 2).eval().unwrap();
        assert_eq!(sq, NCElement::from_word(vec![0, 0], KScalar::one()));
        assert_eq!(
            Ast::Pow(Box::new(Ast::Kappa), -2).eval().unwrap(),
            NCElement::scalar(KScalar::kappa(-2))
        );
        assert_eq!(
            Ast::Pow(Box::new(gen(0)), -1).eval(),
            Err(EvalError::NegativePowerOfNonScalar)
        );
        assert_eq!(
            Ast::Pow(Box::new(gen(0)), 65).eval(),
            Err(EvalError::ExponentTooLarge)
        );
        assert_eq!(
            Ast::Pow(Box::new(gen(2)), 0).eval().unwrap(),
            NCElement::one()
        );
    }

    #[test]
    fn scalar_words_collapse_to_scalars() {
        // i*i inside a division is recognized as the scalar -1
        let e = Ast::Div(
            Box::new(Ast::Int(BigInt::from(3))),
            Box::new(mul(Ast::ImagUnit, Ast::ImagUnit)),
        );
        assert_eq!(
            e.eval().unwrap(),
            NCElement::scalar(KScalar::from_int(-3))
        );
    }
}
