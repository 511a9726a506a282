//! 2-jets at θ = 0: the quotient group `B₀/B₂ ≅ ℝ₊ ⋉ ℝ` and its Lie algebra.
//!
//! A diffeomorphism f fixing 0 is recorded as `(f'(0), f''(0))`, a vector field v
//! vanishing at 0 as `(v'(0), v''(0))`.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, rational_to_f64, Gq, Rational};
use crate::lie::{FourierField, LieElement, Window};
use crate::morphisms::{make_sigma, GeneratorMap};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Jet2Group {
    x1: Rational,
    x2: Rational,
}

impl Jet2Group {
    pub fn new(x1: Rational, x2: Rational) -> Result<Self> {
        if !x1.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "x1 must be positive, got {x1}"
            )));
        }
        Ok(Jet2Group { x1, x2 })
    }

    pub fn identity() -> Self {
        Jet2Group {
            x1: Rational::one(),
            x2: Rational::zero(),
        }
    }

    pub fn x1(&self) -> &Rational {
        &self.x1
    }

    pub fn x2(&self) -> &Rational {
        &self.x2
    }

    /// In `B₁/B₂`, i.e. `f'(0) = 1`.
    pub fn is_unipotent(&self) -> bool {
        self.x1.is_one()
    }
}

impl fmt::Display for Jet2Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Jet2Algebra {
    pub x1: Rational,
    pub x2: Rational,
}

impl Jet2Algebra {
    pub fn new(x1: Rational, x2: Rational) -> Self {
        Jet2Algebra { x1, x2 }
    }
}

impl fmt::Display for Jet2Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

/// Floating-point group element, as produced by [`jet_exp`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2GroupF64 {
    pub x1: f64,
    pub x2: f64,
}

/// `(X₁, X₂)·(Y₁, Y₂) = (X₁Y₁, X₁Y₂ + Y₁²X₂)`.
pub fn jet_compose(a: &Jet2Group, b: &Jet2Group) -> Jet2Group {
    Jet2Group {
        x1: &a.x1 * &b.x1,
        x2: &a.x1 * &b.x2 + &b.x1 * &b.x1 * &a.x2,
    }
}

pub fn jet_inverse(a: &Jet2Group) -> Jet2Group {
    let inv = a.x1.recip();
    Jet2Group {
        x2: -(&a.x2 * &inv * &inv * &inv),
        x1: inv,
    }
}

/// `[(x₁, x₂), (y₁, y₂)] = (0, x₂y₁ - x₁y₂)`.
pub fn jet_bracket(a: &Jet2Algebra, b: &Jet2Algebra) -> Jet2Algebra {
    Jet2Algebra {
        x1: Rational::zero(),
        x2: &a.x2 * &b.x1 - &a.x1 * &b.x2,
    }
}

/// Time-`s` flow of `a`, solving `x₁' = a₁x₁`, `x₂' = a₂x₁² + a₁x₂` from the identity.
pub fn jet_exp(a: &Jet2Algebra, s: &Rational) -> Jet2GroupF64 {
    let (a1, a2, s) = (
        rational_to_f64(&a.x1),
        rational_to_f64(&a.x2),
        rational_to_f64(s),
    );
    let e = (s * a1).exp();
    let x2 = if a1 == 0.0 {
        s * a2
    } else {
        // e(e - 1)/a₁, with expm1 for small s·a₁
        a2 * e * (s * a1).exp_m1() / a1
    };
    Jet2GroupF64 { x1: e, x2 }
}

/// `(v'(0), v''(0))` for a real field vanishing at 0.
///
/// With the field bracket `[f, g] = fg' - f'g` this map reverses brackets:
/// `jet_of_field([f, g]) = jet_bracket(jet_of_field(g), jet_of_field(f))`.
pub fn jet_of_field(f: &FourierField) -> Result<Jet2Algebra> {
    if !f.is_real() {
        return Err(Error::InvalidArgument("field is not real-valued".into()));
    }
    if !f.vanishes_at_zero() {
        return Err(Error::InvalidArgument(format!(
            "field does not vanish at 0 (value {})",
            f.value_at_zero()
        )));
    }
    let real = |g: Gq| -> Result<Rational> {
        if g.is_real() {
            Ok(g.re().clone())
        } else {
            Err(Error::InvalidArgument(format!("non-real derivative {g}")))
        }
    };
    Ok(Jet2Algebra {
        x1: real(f.derivative_at_zero(1))?,
        x2: real(f.derivative_at_zero(2))?,
    })
}

/// `exp(iλ log x₁)`.
pub fn chi_lambda(lambda: &Rational, g: &Jet2Group) -> Complex64 {
    chi_lambda_f64(rational_to_f64(lambda), rational_to_f64(&g.x1))
}

pub fn chi_lambda_f64(lambda: f64, x1: f64) -> Complex64 {
    Complex64::from_polar(1.0, lambda * x1.ln())
}

/// `σ₁` with `K = K_1`: `K_n ↦ (n²+n)/2 K + (n²-n)/2 K*`.
pub fn p_extension_map(window: Window) -> Result<GeneratorMap> {
    make_sigma(&Gq::one(), &LieElement::k(1), window)
}

/// `d_n = sin nθ` as a Fourier field.
pub fn dilation_field(n: i64) -> FourierField {
    let half = Gq::new(Rational::zero(), rat(1, 2));
    FourierField::from_coeffs([(n, -half.clone()), (-n, half)])
}

/// `t_n = 1 - cos nθ` as a Fourier field.
pub fn translation_field(n: i64) -> FourierField {
    let half = Gq::from_ratio(-1, 2);
    FourierField::from_coeffs([(0, Gq::one()), (n, half.clone()), (-n, half)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn g(a: i64, b: i64) -> Jet2Group {
        Jet2Group::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn compose_and_inverse() {
        assert_eq!(jet_compose(&g(2, 3), &g(5, 7)), g(10, 89));
        assert_eq!(
            jet_inverse(&g(2, 3)),
            Jet2Group::new(rat(1, 2), rat(-3, 8)).unwrap()
        );
        assert_eq!(
            jet_compose(&g(2, 3), &jet_inverse(&g(2, 3))),
            Jet2Group::identity()
        );
        assert!(Jet2Group::new(int(0), int(1)).is_err());
    }

    #[test]
    fn bracket_examples() {
        let d = Jet2Algebra::new(int(1), int(0));
        let t = Jet2Algebra::new(int(0), int(1));
        assert_eq!(jet_bracket(&d, &t), Jet2Algebra::new(int(0), int(-1)));
    }

    #[test]
    fn generator_jets() {
        for n in 1..6 {
            assert_eq!(
                jet_of_field(&dilation_field(n)).unwrap(),
                Jet2Algebra::new(int(n), int(0))
            );
            assert_eq!(
                jet_of_field(&translation_field(n)).unwrap(),
                Jet2Algebra::new(int(0), int(n * n))
            );
        }
        assert_eq!(
            jet_of_field(&FourierField::zero()).unwrap(),
            Jet2Algebra::new(int(0), int(0))
        );
        let one = FourierField::from_coeffs([(0, Gq::one())]);
        assert!(jet_of_field(&one).is_err());
        let cplx = FourierField::from_coeffs([(1, Gq::one()), (0, -Gq::one())]);
        assert!(jet_of_field(&cplx).is_err());
    }

    #[test]
    fn exp_branches() {
        let e = jet_exp(&Jet2Algebra::new(int(1), int(0)), &rat(1, 2));
        assert!((e.x1 - 0.5f64.exp()).abs() < 1e-15 && e.x2 == 0.0);
        let t = jet_exp(&Jet2Algebra::new(int(0), int(1)), &rat(3, 4));
        assert_eq!((t.x1, t.x2), (1.0, 0.75));
    }

    #[test]
    fn chi_kills_unipotent() {
        let c = chi_lambda(&rat(7, 3), &g(1, 12));
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
