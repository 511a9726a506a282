use num_traits::Zero;

use crate::exact::{binomial, Gq};

use super::{project_to_k, AlgebraKind, LieElement};

/// `M^k_n = Σ_{l=0}^{k+1} (-1)^l C(k+1, l) L_{n+l}` in Witt.
pub fn m_basis(k: u32, n: i64) -> LieElement {
    let terms = (0..=k + 1).map(|l| {
        let b = Gq::real(binomial(k + 1, l));
        let c = if l % 2 == 0 { b } else { -b };
        (n + i64::from(l), c)
    });
    LieElement::from_terms(AlgebraKind::Witt, terms, Gq::zero()).expect("Witt admits every index")
}

/// `M^k_n` rewritten in the 𝒦₀ basis.
pub fn m_basis_k(k: u32, n: i64) -> LieElement {
    project_to_k(&m_basis(k, n)).expect("M^k_n has vanishing coefficient sum")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::phi_k;

    #[test]
    fn small_cases() {
        let l = |n| LieElement::generator(AlgebraKind::Witt, n).unwrap();
        assert_eq!(m_basis(0, 5), l(5) - l(6));
        let three = Gq::from_int(3);
        assert_eq!(
            m_basis(2, 1),
            l(1) - l(2).scale(&three) + l(3).scale(&three) - l(4)
        );
    }

    #[test]
    fn vanishing_jets() {
        let m = m_basis_k(2, 1);
        assert!(phi_k(1, &m).unwrap().is_zero());
        assert!(phi_k(2, &m).unwrap().is_zero());
        assert!(!phi_k(3, &m).unwrap().is_zero());
    }
}
