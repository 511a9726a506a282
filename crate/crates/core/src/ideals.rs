//! The ideal chain 𝒦_k, window shadows of subspaces of 𝒦₀, bracket closure and
//! ideal classification.
//!
//! A window shadow is a subspace of the span of `K_j`, `1 ≤ |j| ≤ N`. Closure keeps a
//! bracket only when its whole support lies inside the window; no term is ever
//! truncated, so a closure never leaves the true ideal it approximates.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Gq, Matrix};
use crate::lie::{bracket, m_basis_k, phi_k, AlgebraKind, LieElement, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VanishingOrder {
    Finite(u32),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealDescriptor {
    Zero,
    /// `KChain(0)` is all of 𝒦₀.
    KChain(u32),
    Phi1CapPhi3,
    Unclassified,
}

/// A subspace of the window's K-coordinates, stored as its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanWindow {
    window: Window,
    basis_rows: Matrix,
}

impl SpanWindow {
    pub fn zero(window: Window) -> Self {
        SpanWindow {
            window,
            basis_rows: Matrix::zeros(0, window.k_dim()),
        }
    }

    /// Span of coordinate vectors (each of length `2N`).
    pub fn from_coords(window: Window, rows: Vec<Vec<Gq>>) -> Result<Self> {
        if rows.is_empty() {
            return Ok(SpanWindow::zero(window));
        }
        let m = Matrix::from_rows(rows, window.k_dim())?;
        Ok(SpanWindow::from_matrix(window, &m))
    }

    fn from_matrix(window: Window, m: &Matrix) -> Self {
        let rref = m.rref();
        let rows: Vec<Vec<Gq>> = (0..rref.rank)
            .map(|i| rref.reduced.row(i).to_vec())
            .collect();
        let basis_rows = if rows.is_empty() {
            Matrix::zeros(0, window.k_dim())
        } else {
            Matrix::from_rows(rows, window.k_dim()).expect("rows have window width")
        };
        SpanWindow { window, basis_rows }
    }

    /// Span of K-kind elements supported in the window; central parts are ignored.
    pub fn from_elements(window: Window, elems: &[LieElement]) -> Result<Self> {
        let rows = elems
            .iter()
            .map(|x| x.without_central().k_coords(window))
            .collect::<Result<Vec<_>>>()?;
        SpanWindow::from_coords(window, rows)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn rank(&self) -> usize {
        self.basis_rows.rows()
    }

    pub fn basis_rows(&self) -> &Matrix {
        &self.basis_rows
    }

    /// The echelon basis as 𝒦₀ elements.
    pub fn basis_elements(&self) -> Vec<LieElement> {
        (0..self.rank())
            .map(|i| {
                LieElement::from_k_coords(AlgebraKind::K0, self.window, self.basis_rows.row(i))
                    .expect("row has window width")
            })
            .collect()
    }

    pub fn contains_coords(&self, v: &[Gq]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let Ok(row) = Matrix::from_rows(vec![v.to_vec()], self.window.k_dim()) else {
            return false;
        };
        let stacked = self.basis_rows.stack(&row).expect("same width");
        stacked.rank() == self.rank()
    }

    /// False for elements with support outside the window.
    pub fn contains(&self, x: &LieElement) -> bool {
        match x.without_central().k_coords(self.window) {
            Ok(v) => self.contains_coords(&v),
            Err(_) => false,
        }
    }

    pub fn is_subspace_of(&self, other: &SpanWindow) -> bool {
        self.window == other.window
            && (0..self.rank()).all(|i| other.contains_coords(self.basis_rows.row(i)))
    }

    /// Reduced echelon forms are canonical, so equal spans have equal bases.
    pub fn same_span(&self, other: &SpanWindow) -> bool {
        self == other
    }

    pub fn join(&self, other: &SpanWindow) -> Result<SpanWindow> {
        if self.window != other.window {
            return Err(Error::DimensionMismatch(
                "spans over different windows".into(),
            ));
        }
        let m = self.basis_rows.stack(&other.basis_rows)?;
        Ok(SpanWindow::from_matrix(self.window, &m))
    }
}

/// Largest k with `φ_1(x) = … = φ_k(x) = 0`.
///
/// The scan stops after d steps, d the number of distinct frequencies of x: the
/// vectors `(n^1, …, n^d)` for distinct nonzero n are independent, so a nonzero
/// element cannot be killed by `φ_1, …, φ_d` together.
pub fn vanishing_order(x: &LieElement) -> Result<VanishingOrder> {
    if !x.kind().is_k() {
        return Err(Error::KindMismatch(x.kind(), AlgebraKind::K0));
    }
    let d = x.terms().count() as u32;
    if d == 0 {
        return Ok(VanishingOrder::Infinite);
    }
    for k in 1..=d {
        if !phi_k(k, x)?.is_zero() {
            return Ok(VanishingOrder::Finite(k - 1));
        }
    }
    unreachable!("nonzero element annihilated by phi_1..phi_d")
}

fn functional_kernel(window: Window, ks: &[u32]) -> SpanWindow {
    let idx = window.k_indices();
    let rows: Vec<Vec<Gq>> = ks
        .iter()
        .map(|&k| {
            idx.iter()
                .map(|&n| phi_k(k, &LieElement::k(n)).expect("k >= 1"))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return SpanWindow::from_matrix(window, &Matrix::identity(window.k_dim()));
    }
    let m = Matrix::from_rows(rows, window.k_dim()).expect("window width");
    let kernel = m.nullspace();
    SpanWindow::from_coords(window, kernel).expect("window width")
}

/// Shadow of 𝒦_k: window elements killed by `φ_1, …, φ_k`.
pub fn kchain_shadow(k: u32, window: Window) -> SpanWindow {
    let ks: Vec<u32> = (1..=k).collect();
    functional_kernel(window, &ks)
}

/// Shadow of `ker φ_1 ∩ ker φ_3`.
pub fn phi1_phi3_shadow(window: Window) -> SpanWindow {
    functional_kernel(window, &[1, 3])
}

/// Span of the `M^k_j` lying entirely inside the window.
pub fn m_family_span(k: u32, window: Window) -> SpanWindow {
    let n = window.n();
    let top = n - i64::from(k) - 1;
    let elems: Vec<LieElement> = (-n..=top).map(|j| m_basis_k(k, j)).collect();
    SpanWindow::from_elements(window, &elems).expect("M^k_j chosen inside the window")
}

fn as_k0(x: &LieElement) -> Result<LieElement> {
    if !x.kind().is_k() {
        return Err(Error::KindMismatch(x.kind(), AlgebraKind::K0));
    }
    Ok(x.without_central())
}

/// `{[x, g] : x ∈ span, [x, g] supported in the window}` for one window generator g.
fn bracket_step(span: &SpanWindow, g: &LieElement) -> Vec<Vec<Gq>> {
    let window = span.window;
    let basis = span.basis_elements();
    if basis.is_empty() {
        return Vec::new();
    }
    let ys: Vec<LieElement> = basis
        .iter()
        .map(|b| bracket(b, g).expect("both K0"))
        .collect();
    let outside: Vec<i64> = {
        let mut v: Vec<i64> = ys
            .iter()
            .flat_map(|y| y.terms().map(|(n, _)| n).collect::<Vec<_>>())
            .filter(|&n| !window.contains(n))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let combos: Vec<Vec<Gq>> = if outside.is_empty() {
        (0..ys.len())
            .map(|i| {
                (0..ys.len())
                    .map(|j| if i == j { Gq::from_int(1) } else { Gq::zero() })
                    .collect()
            })
            .collect()
    } else {
        Matrix::from_fn(outside.len(), ys.len(), |o, i| ys[i].coeff(outside[o])).nullspace()
    };
    combos
        .into_iter()
        .map(|c| {
            let mut acc = LieElement::zero(AlgebraKind::K0);
            for (ci, y) in c.iter().zip(&ys) {
                if !ci.is_zero() {
                    acc = &acc + &y.scale(ci);
                }
            }
            acc.k_coords(window)
                .expect("outside coefficients cancelled")
        })
        .collect()
}

/// Smallest window subspace containing the generators and closed under bracketing
/// with every window generator `K_j`, whenever that bracket stays inside the window.
pub fn ideal_closure_window(generators: &[LieElement], window: Window) -> Result<SpanWindow> {
    let gens = generators.iter().map(as_k0).collect::<Result<Vec<_>>>()?;
    for g in &gens {
        if !g.supported_in(window) {
            let index = g
                .terms()
                .map(|(n, _)| n)
                .find(|&n| !window.contains(n))
                .unwrap_or_default();
            return Err(Error::OutsideWindow {
                index,
                bound: window.bound(),
            });
        }
    }
    let ks: Vec<LieElement> = window
        .k_indices()
        .into_iter()
        .map(|j| LieElement::generator(AlgebraKind::K0, j).expect("j != 0"))
        .collect();
    let mut span = SpanWindow::from_elements(window, &gens)?;
    loop {
        let mut rows: Vec<Vec<Gq>> = span.basis_rows.row_vecs();
        for g in &ks {
            rows.extend(bracket_step(&span, g));
        }
        let next = SpanWindow::from_coords(window, rows)?;
        if next.rank() == span.rank() {
            return Ok(span);
        }
        span = next;
    }
}

/// Span of `[M^k_m, M^k_n]` over window-supported pairs whose bracket stays in the window.
pub fn derived_subalgebra_window(k: u32, window: Window) -> SpanWindow {
    let n = window.n();
    let top = n - i64::from(k) - 1;
    let ms: Vec<LieElement> = (-n..=top).map(|j| m_basis_k(k, j)).collect();
    let mut rows = Vec::new();
    for (a, x) in ms.iter().enumerate() {
        for y in &ms[a + 1..] {
            let b = bracket(x, y).expect("both K0");
            if b.supported_in(window) {
                rows.push(b.k_coords(window).expect("supported"));
            }
        }
    }
    SpanWindow::from_coords(window, rows).expect("window width")
}

/// Matches a closed span against the shadows of {0}, 𝒦_k and `ker φ_1 ∩ ker φ_3`.
pub fn classify_ideal_window(span: &SpanWindow) -> IdealDescriptor {
    if span.rank() == 0 {
        return IdealDescriptor::Zero;
    }
    let window = span.window;
    let mut found = Vec::new();
    // 𝒦_k has a nonzero shadow only for k < 2N
    for k in 0..window.k_dim() as u32 {
        if kchain_shadow(k, window).same_span(span) {
            found.push(IdealDescriptor::KChain(k));
        }
    }
    if phi1_phi3_shadow(window).same_span(span) {
        found.push(IdealDescriptor::Phi1CapPhi3);
    }
    match found.as_slice() {
        [one] => *one,
        _ => IdealDescriptor::Unclassified,
    }
}
