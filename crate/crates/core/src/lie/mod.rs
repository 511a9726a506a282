//! Elements and brackets of Witt, Vir, 𝒦₀ and 𝒦.
//!
//! The L-kinds (Witt, Vir) use the basis `L_n`, `n ∈ ℤ`; the K-kinds (𝒦₀, 𝒦) use
//! `K_n = L_n - L_0`, `n ≠ 0`. Vir and 𝒦 carry a central coefficient on `C`.

mod fourier;
mod mbasis;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Gq};

pub use fourier::{field_bracket, to_fourier, FourierField};
pub use mbasis::{m_basis, m_basis_k};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    Witt,
    Vir,
    K0,
    K,
}

impl AlgebraKind {
    pub fn has_central(self) -> bool {
        matches!(self, AlgebraKind::Vir | AlgebraKind::K)
    }

    pub fn is_k(self) -> bool {
        matches!(self, AlgebraKind::K0 | AlgebraKind::K)
    }

    /// The L-kind containing this kind (identity on L-kinds).
    pub fn l_kind(self) -> AlgebraKind {
        match self {
            AlgebraKind::K0 | AlgebraKind::Witt => AlgebraKind::Witt,
            AlgebraKind::K | AlgebraKind::Vir => AlgebraKind::Vir,
        }
    }

    /// The K-kind sitting inside this kind (identity on K-kinds).
    pub fn k_kind(self) -> AlgebraKind {
        match self {
            AlgebraKind::K0 | AlgebraKind::Witt => AlgebraKind::K0,
            AlgebraKind::K | AlgebraKind::Vir => AlgebraKind::K,
        }
    }
}

/// Truncation window: `1 ≤ |n| ≤ bound` for K-kinds, `|n| ≤ bound` for L-kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    bound: u32,
}

impl Window {
    pub fn new(bound: u32) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidArgument(
                "window bound must be at least 1".into(),
            ));
        }
        Ok(Window { bound })
    }

    pub fn bound(self) -> u32 {
        self.bound
    }

    pub fn n(self) -> i64 {
        i64::from(self.bound)
    }

    pub fn contains(self, n: i64) -> bool {
        n.unsigned_abs() <= u64::from(self.bound)
    }

    /// `-N, ..., -1, 1, ..., N`: the coordinate order used by every window matrix.
    pub fn k_indices(self) -> Vec<i64> {
        let n = self.n();
        (-n..=n).filter(|&j| j != 0).collect()
    }

    pub fn l_indices(self) -> Vec<i64> {
        let n = self.n();
        (-n..=n).collect()
    }

    pub fn k_dim(self) -> usize {
        2 * self.bound as usize
    }

    /// Position of `K_n` among [`Window::k_indices`].
    pub fn k_position(self, n: i64) -> Option<usize> {
        if n == 0 || !self.contains(n) {
            return None;
        }
        let p = n + self.n();
        Some(if n < 0 { p as usize } else { p as usize - 1 })
    }
}

/// A finite combination of basis generators plus a central coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    kind: AlgebraKind,
    terms: BTreeMap<i64, Gq>,
    central: Gq,
}

impl LieElement {
    pub fn zero(kind: AlgebraKind) -> Self {
        LieElement {
            kind,
            terms: BTreeMap::new(),
            central: Gq::zero(),
        }
    }

    /// The basis generator with index `n` (`K_n` or `L_n` depending on `kind`).
    pub fn generator(kind: AlgebraKind, n: i64) -> Result<Self> {
        LieElement::from_terms(kind, [(n, Gq::one())], Gq::zero())
    }

    /// `K_n` in 𝒦. Panics when `n == 0`.
    pub fn k(n: i64) -> Self {
        LieElement::generator(AlgebraKind::K, n).expect("K_0 is not a basis element")
    }

    /// `L_n` in Vir.
    pub fn l(n: i64) -> Self {
        LieElement::generator(AlgebraKind::Vir, n).expect("L_n is always defined")
    }

    /// `coeff · C`.
    pub fn central_element(kind: AlgebraKind, coeff: Gq) -> Result<Self> {
        LieElement::from_terms(kind, std::iter::empty(), coeff)
    }

    pub fn from_terms(
        kind: AlgebraKind,
        terms: impl IntoIterator<Item = (i64, Gq)>,
        central: Gq,
    ) -> Result<Self> {
        if !kind.has_central() && !central.is_zero() {
            return Err(Error::CentralNotAllowed(kind));
        }
        let mut out = LieElement::zero(kind);
        for (n, c) in terms {
            if kind.is_k() && n == 0 {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::ZeroKIndex);
            }
            out.add_term(n, &c);
        }
        out.central = central;
        Ok(out)
    }

    fn add_term(&mut self, n: i64, c: &Gq) {
        if c.is_zero() {
            return;
        }
        debug_assert!(!(self.kind.is_k() && n == 0));
        let slot = self.terms.entry(n).or_insert_with(Gq::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    fn add_central(&mut self, c: &Gq) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.kind.has_central());
        self.central += c;
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn coeff(&self, n: i64) -> Gq {
        self.terms.get(&n).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Gq)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn central(&self) -> &Gq {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    /// True when only the central coefficient may be nonzero.
    pub fn is_central(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_index(&self) -> u64 {
        self.terms
            .keys()
            .map(|n| n.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn min_index(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn supported_in(&self, window: Window) -> bool {
        self.terms.keys().all(|&n| window.contains(n))
    }

    /// Sum of all generator coefficients (central excluded).
    pub fn coefficient_sum(&self) -> Gq {
        self.terms.values().sum()
    }

    pub fn scale(&self, s: &Gq) -> LieElement {
        if s.is_zero() {
            return LieElement::zero(self.kind);
        }
        LieElement {
            kind: self.kind,
            terms: self.terms.iter().map(|(&n, c)| (n, c * s)).collect(),
            central: &self.central * s,
        }
    }

    /// Same generator part with the central coefficient dropped, reinterpreted in the centerless kind.
    pub fn without_central(&self) -> LieElement {
        let kind = match self.kind {
            AlgebraKind::Vir => AlgebraKind::Witt,
            AlgebraKind::K => AlgebraKind::K0,
            k => k,
        };
        LieElement {
            kind,
            terms: self.terms.clone(),
            central: Gq::zero(),
        }
    }

    /// Reinterprets in another kind of the same basis family; the central part must be representable.
    pub fn with_kind(&self, kind: AlgebraKind) -> Result<LieElement> {
        if kind.is_k() != self.kind.is_k() {
            return Err(Error::KindMismatch(self.kind, kind));
        }
        LieElement::from_terms(kind, self.terms.clone(), self.central.clone())
    }

    /// Positive-index part (`n ≥ 1`).
    pub fn positive_part(&self) -> LieElement {
        self.filter_terms(|n| n > 0)
    }

    /// Negative-index part (`n ≤ -1`).
    pub fn negative_part(&self) -> LieElement {
        self.filter_terms(|n| n < 0)
    }

    fn filter_terms(&self, keep: impl Fn(i64) -> bool) -> LieElement {
        LieElement {
            kind: self.kind,
            terms: self
                .terms
                .iter()
                .filter(|(&n, _)| keep(n))
                .map(|(&n, c)| (n, c.clone()))
                .collect(),
            central: Gq::zero(),
        }
    }

    pub fn try_add(&self, other: &LieElement) -> Result<LieElement> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch(self.kind, other.kind));
        }
        let mut out = self.clone();
        for (&n, c) in &other.terms {
            out.add_term(n, c);
        }
        out.add_central(&other.central);
        Ok(out)
    }

    /// Coordinates over the window's K-generators, in [`Window::k_indices`] order.
    pub fn k_coords(&self, window: Window) -> Result<Vec<Gq>> {
        if !self.kind.is_k() {
            return Err(Error::KindMismatch(self.kind, AlgebraKind::K0));
        }
        let mut v = vec![Gq::zero(); window.k_dim()];
        for (&n, c) in &self.terms {
            let p = window.k_position(n).ok_or(Error::OutsideWindow {
                index: n,
                bound: window.bound(),
            })?;
            v[p] = c.clone();
        }
        Ok(v)
    }

    pub fn from_k_coords(kind: AlgebraKind, window: Window, coords: &[Gq]) -> Result<LieElement> {
        if coords.len() != window.k_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for window {}",
                coords.len(),
                window.bound()
            )));
        }
        LieElement::from_terms(
            kind,
            window.k_indices().into_iter().zip(coords.iter().cloned()),
            Gq::zero(),
        )
    }
}

/// Structure constants on a generator pair, computed on demand.
fn bracket_generators(kind: AlgebraKind, m: i64, n: i64) -> LieElement {
    let mut out = LieElement::zero(kind);
    if m == n {
        return out;
    }
    let virasoro_term = || rat(m * (m * m - 1), 12);
    match kind {
        AlgebraKind::Witt | AlgebraKind::Vir => {
            out.add_term(m + n, &Gq::from_int(m - n));
            if kind == AlgebraKind::Vir && m == -n {
                out.add_central(&Gq::real(virasoro_term()));
            }
        }
        AlgebraKind::K0 | AlgebraKind::K => {
            if m != -n {
                out.add_term(m + n, &Gq::from_int(m - n));
            } else if kind == AlgebraKind::K {
                out.add_central(&Gq::real(virasoro_term()));
            }
            out.add_term(m, &Gq::from_int(-m));
            out.add_term(n, &Gq::from_int(n));
        }
    }
    out
}

/// The Lie bracket, extended bilinearly from the structure constants of the kind.
pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    if x.kind != y.kind {
        return Err(Error::KindMismatch(x.kind, y.kind));
    }
    let mut out = LieElement::zero(x.kind);
    for (&m, a) in &x.terms {
        for (&n, b) in &y.terms {
            if m == n {
                continue;
            }
            let ab = a * b;
            let g = bracket_generators(x.kind, m, n);
            for (&k, c) in &g.terms {
                out.add_term(k, &(&ab * c));
            }
            out.add_central(&(&ab * &g.central));
        }
    }
    Ok(out)
}

/// The *-operation: `(c X_n)* = c̄ X_{-n}`, `C* = C`.
pub fn star(x: &LieElement) -> LieElement {
    LieElement {
        kind: x.kind,
        terms: x.terms.iter().map(|(&n, c)| (-n, c.conj())).collect(),
        central: x.central.conj(),
    }
}

/// `K_n ↦ L_n - L_0`; 𝒦 goes to Vir and 𝒦₀ to Witt.
pub fn embed_in_vir(x: &LieElement) -> Result<LieElement> {
    if !x.kind.is_k() {
        return Err(Error::KindMismatch(x.kind, AlgebraKind::K));
    }
    let mut out = LieElement::zero(x.kind.l_kind());
    for (&n, c) in &x.terms {
        out.add_term(n, c);
        out.add_term(0, &-c);
    }
    out.add_central(&x.central);
    Ok(out)
}

/// Rewrites an L-kind element with vanishing coefficient sum in the K basis.
pub fn project_to_k(x: &LieElement) -> Result<LieElement> {
    if x.kind.is_k() {
        return Err(Error::KindMismatch(x.kind, AlgebraKind::Vir));
    }
    let sum = x.coefficient_sum();
    if !sum.is_zero() {
        return Err(Error::NotInK0(Box::new(sum)));
    }
    LieElement::from_terms(
        x.kind.k_kind(),
        x.terms
            .iter()
            .filter(|(&n, _)| n != 0)
            .map(|(&n, c)| (n, c.clone())),
        x.central.clone(),
    )
}

/// `i (i n)^k`, the value of the k-th jet functional on `K_n` (and on `L_n` for L-kinds).
pub(crate) fn jet_weight(k: u32, n: i64) -> Gq {
    Gq::i() * (Gq::i() * Gq::from_int(n)).pow(k)
}

/// The k-th jet functional `φ_k`, `k ≥ 1`; central coefficients are ignored.
pub fn phi_k(k: u32, x: &LieElement) -> Result<Gq> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "phi_k needs k >= 1; use phi_0 for L-kinds".into(),
        ));
    }
    Ok(x.terms.iter().map(|(&n, c)| c * &jet_weight(k, n)).sum())
}

/// `φ₀ = i · (coefficient sum)` on L-kinds. Identically zero on K-kinds.
pub fn phi_0(x: &LieElement) -> Gq {
    if x.kind.is_k() {
        return Gq::zero();
    }
    Gq::i() * x.coefficient_sum()
}

impl Add for &LieElement {
    type Output = LieElement;
    /// Panics when the kinds differ; see [`LieElement::try_add`].
    fn add(self, rhs: &LieElement) -> LieElement {
        self.try_add(rhs).expect("kind mismatch in addition")
    }
}

impl Add for LieElement {
    type Output = LieElement;
    fn add(self, rhs: LieElement) -> LieElement {
        &self + &rhs
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        self + &(-rhs)
    }
}

impl Sub for LieElement {
    type Output = LieElement;
    fn sub(self, rhs: LieElement) -> LieElement {
        &self - &rhs
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&Gq::from_int(-1))
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        -&self
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_element(self))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.kind, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn k(n: i64) -> LieElement {
        LieElement::k(n)
    }

    fn c(x: i64) -> Gq {
        Gq::from_int(x)
    }

    #[test]
    fn k_bracket_matches_hand_expansion() {
        let got = bracket(&k(2), &k(-1)).unwrap();
        let want = k(1).scale(&c(3)) - k(2).scale(&c(2)) - k(-1);
        assert_eq!(got, want);
    }

    #[test]
    fn k_bracket_central_term() {
        let got = bracket(&k(2), &k(-2)).unwrap();
        let half = LieElement::central_element(AlgebraKind::K, Gq::from_ratio(1, 2)).unwrap();
        let want = k(2).scale(&c(-2)) - k(-2).scale(&c(2)) + half;
        assert_eq!(got, want);
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let l = LieElement::l(1);
        assert!(matches!(
            bracket(&k(1), &l),
            Err(Error::KindMismatch(AlgebraKind::K, AlgebraKind::Vir))
        ));
    }

    #[test]
    fn zero_index_rejected_for_k_kinds() {
        assert_eq!(
            LieElement::generator(AlgebraKind::K0, 0),
            Err(Error::ZeroKIndex)
        );
        assert_eq!(
            LieElement::central_element(AlgebraKind::Witt, c(1)),
            Err(Error::CentralNotAllowed(AlgebraKind::Witt))
        );
    }

    #[test]
    fn star_conjugates_and_reflects() {
        let x = k(3).scale(&Gq::new(int(2), int(1)));
        assert_eq!(star(&x), k(-3).scale(&Gq::new(int(2), int(-1))));
        assert_eq!(star(&star(&x)), x);
    }

    #[test]
    fn embedding_and_projection() {
        let e = embed_in_vir(&k(1)).unwrap();
        assert_eq!(e, LieElement::l(1) - LieElement::l(0));
        let e2 = embed_in_vir(&(k(2) + k(-2))).unwrap();
        assert_eq!(
            e2,
            LieElement::l(2) + LieElement::l(-2) - LieElement::l(0).scale(&c(2))
        );
        assert_eq!(
            project_to_k(&(LieElement::l(3) - LieElement::l(0))).unwrap(),
            k(3)
        );
        assert_eq!(
            project_to_k(&(LieElement::l(1) - LieElement::l(2))).unwrap(),
            k(1) - k(2)
        );
        assert!(matches!(
            project_to_k(&LieElement::l(1)),
            Err(Error::NotInK0(_))
        ));
    }

    #[test]
    fn jet_functionals() {
        for n in [-3, -1, 1, 4] {
            assert_eq!(phi_k(1, &k(n)).unwrap(), c(-n));
        }
        assert_eq!(phi_k(2, &k(3)).unwrap(), Gq::new(int(0), int(-9)));
        assert!(phi_k(0, &k(1)).is_err());
        assert_eq!(phi_0(&LieElement::l(5)), Gq::i());
        assert_eq!(phi_0(&k(5)), Gq::zero());
    }

    #[test]
    fn window_positions() {
        let w = Window::new(3).unwrap();
        assert_eq!(w.k_indices(), vec![-3, -2, -1, 1, 2, 3]);
        for (p, n) in w.k_indices().into_iter().enumerate() {
            assert_eq!(w.k_position(n), Some(p));
        }
        assert_eq!(w.k_position(0), None);
        assert_eq!(w.k_position(4), None);
        assert!(Window::new(0).is_err());
        let x = k(-2).scale(&Gq::real(rat(1, 3))) + k(3);
        let v = x.k_coords(w).unwrap();
        assert_eq!(LieElement::from_k_coords(AlgebraKind::K, w, &v).unwrap(), x);
    }
}
