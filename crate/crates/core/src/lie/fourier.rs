use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Gq;

use super::{AlgebraKind, LieElement};

/// A trigonometric polynomial `Σ a_n e^{inθ}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FourierField {
    coeffs: BTreeMap<i64, Gq>,
}

impl FourierField {
    pub fn zero() -> Self {
        FourierField::default()
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i64, Gq)>) -> Self {
        let mut f = FourierField::zero();
        for (n, c) in coeffs {
            f.add_coeff(n, &c);
        }
        f
    }

    fn add_coeff(&mut self, n: i64, c: &Gq) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(n).or_insert_with(Gq::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: i64) -> Gq {
        self.coeffs.get(&n).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &Gq)> + '_ {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at θ = 0.
    pub fn value_at_zero(&self) -> Gq {
        self.coeffs.values().sum()
    }

    pub fn vanishes_at_zero(&self) -> bool {
        self.value_at_zero().is_zero()
    }

    /// k-th derivative at θ = 0: `Σ a_n (in)^k`.
    pub fn derivative_at_zero(&self, k: u32) -> Gq {
        self.coeffs
            .iter()
            .map(|(&n, c)| c * &(Gq::i() * Gq::from_int(n)).pow(k))
            .sum()
    }

    /// `φ_k` on fields, `k ≥ 1`.
    pub fn phi_k(&self, k: u32) -> Result<Gq> {
        if k == 0 {
            return Err(Error::InvalidArgument("phi_k needs k >= 1".into()));
        }
        Ok(self.derivative_at_zero(k))
    }

    /// True when `a_{-n} = conj(a_n)` for all n, i.e. the field is real-valued.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|(&n, c)| self.coeff(-n) == c.conj())
    }

    pub fn add(&self, other: &FourierField) -> FourierField {
        let mut out = self.clone();
        for (&n, c) in &other.coeffs {
            out.add_coeff(n, c);
        }
        out
    }

    pub fn scale(&self, s: &Gq) -> FourierField {
        FourierField::from_coeffs(self.coeffs.iter().map(|(&n, c)| (n, c * s)))
    }

    /// Inverse of [`to_fourier`] on the Witt realization: `i e^{inθ} ↦ L_n`.
    pub fn to_witt(&self) -> LieElement {
        let minus_i = -Gq::i();
        LieElement::from_terms(
            AlgebraKind::Witt,
            self.coeffs.iter().map(|(&n, c)| (n, c * &minus_i)),
            Gq::zero(),
        )
        .expect("Witt admits every index")
    }
}

/// `[f, g] = f g' - f' g`.
pub fn field_bracket(f: &FourierField, g: &FourierField) -> FourierField {
    let mut out = FourierField::zero();
    for (&m, a) in &f.coeffs {
        for (&n, b) in &g.coeffs {
            if m == n {
                continue;
            }
            // a e^{imθ} · i n b e^{inθ} - i m a e^{imθ} · b e^{inθ}
            let c = Gq::i() * Gq::from_int(n - m) * (a * b);
            out.add_coeff(m + n, &c);
        }
    }
    out
}

/// `L_n ↦ i e^{inθ}`, `K_n ↦ i(e^{inθ} - 1)`.
pub fn to_fourier(x: &LieElement) -> Result<FourierField> {
    if !x.central().is_zero() {
        return Err(Error::InvalidArgument(
            "central element has no Fourier realization".into(),
        ));
    }
    let i = Gq::i();
    let mut f = FourierField::zero();
    for (n, c) in x.terms() {
        let ic = &i * c;
        f.add_coeff(n, &ic);
        if x.kind().is_k() {
            f.add_coeff(0, &-ic);
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{bracket, phi_k, project_to_k};

    #[test]
    fn k2_realization() {
        let f = to_fourier(&LieElement::k(2)).unwrap();
        assert_eq!(f.coeff(2), Gq::i());
        assert_eq!(f.coeff(0), -Gq::i());
        let l0 = to_fourier(&LieElement::generator(AlgebraKind::Witt, 0).unwrap()).unwrap();
        assert_eq!(l0, FourierField::from_coeffs([(0, Gq::i())]));
    }

    #[test]
    fn central_rejected() {
        let c = LieElement::central_element(AlgebraKind::K, Gq::from_int(1)).unwrap();
        assert!(to_fourier(&c).is_err());
    }

    #[test]
    fn bracket_matches_field_bracket() {
        let k0 = |n| LieElement::generator(AlgebraKind::K0, n).unwrap();
        for m in -4..=4i64 {
            for n in -4..=4i64 {
                if m == 0 || n == 0 {
                    continue;
                }
                let direct = bracket(&k0(m), &k0(n)).unwrap();
                let via = field_bracket(&to_fourier(&k0(m)).unwrap(), &to_fourier(&k0(n)).unwrap());
                assert!(via.vanishes_at_zero());
                assert_eq!(project_to_k(&via.to_witt()).unwrap(), direct, "({m},{n})");
            }
        }
    }

    #[test]
    fn phi_matches_derivative() {
        let x = LieElement::k(3).scale(&Gq::from_int(2)) - LieElement::k(-1);
        let f = to_fourier(&x).unwrap();
        for k in 1..5 {
            assert_eq!(phi_k(k, &x).unwrap(), f.phi_k(k).unwrap());
        }
    }
}
