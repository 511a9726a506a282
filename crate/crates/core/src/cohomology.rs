//! 2-cocycles of 𝒦₀ on a window: validation, coboundaries, the commutator basis and
//! reduction of a cocycle to a coboundary plus a multiple of the Virasoro cocycle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{parse_rational_str, rat, Gq, Matrix, Solution};
use crate::ideals::SpanWindow;
use crate::lie::{bracket, AlgebraKind, LieElement, Window};

/// Antisymmetric table `ω_{m,n}` over nonzero window indices, stored for `m < n`.
///
/// Entries whose value cannot be determined inside the window (coboundaries of
/// brackets leaving it) are recorded as undefined and skipped by every check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    window: Window,
    table: BTreeMap<(i64, i64), Gq>,
    undefined: BTreeSet<(i64, i64)>,
}

fn canon(m: i64, n: i64) -> ((i64, i64), bool) {
    if m < n {
        ((m, n), false)
    } else {
        ((n, m), true)
    }
}

/// `m(m² - 1)/12`.
pub fn virasoro_weight(m: i64) -> Gq {
    Gq::real(rat(m * (m * m - 1), 12))
}

impl Cocycle {
    pub fn zero(window: Window) -> Self {
        Cocycle {
            window,
            table: BTreeMap::new(),
            undefined: BTreeSet::new(),
        }
    }

    /// `ω_{m,n} = δ_{m,-n} m(m² - 1)/12`.
    pub fn virasoro(window: Window) -> Self {
        let mut w = Cocycle::zero(window);
        for m in 2..=window.n() {
            w.set(m, -m, virasoro_weight(m)).expect("inside window");
        }
        w
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn check_index(&self, n: i64) -> Result<()> {
        if n == 0 || !self.window.contains(n) {
            return Err(Error::OutsideWindow {
                index: n,
                bound: self.window.bound(),
            });
        }
        Ok(())
    }

    pub fn set(&mut self, m: i64, n: i64, v: Gq) -> Result<()> {
        self.check_index(m)?;
        self.check_index(n)?;
        if m == n {
            if v.is_zero() {
                return Ok(());
            }
            return Err(Error::InvalidArgument(format!(
                "diagonal entry ({m},{m}) of an antisymmetric table must vanish"
            )));
        }
        let (key, flip) = canon(m, n);
        let v = if flip { -v } else { v };
        self.undefined.remove(&key);
        if v.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, v);
        }
        Ok(())
    }

    pub fn mark_undefined(&mut self, m: i64, n: i64) {
        let (key, _) = canon(m, n);
        self.table.remove(&key);
        self.undefined.insert(key);
    }

    /// `ω_{m,n}`, with `ω_{0,n} = ω_{n,0} = 0`; `None` when undefined or outside the window.
    pub fn get(&self, m: i64, n: i64) -> Option<Gq> {
        if m == 0 || n == 0 || m == n {
            return Some(Gq::zero());
        }
        if !self.window.contains(m) || !self.window.contains(n) {
            return None;
        }
        let (key, flip) = canon(m, n);
        if self.undefined.contains(&key) {
            return None;
        }
        let v = self.table.get(&key).cloned().unwrap_or_else(Gq::zero);
        Some(if flip { -v } else { v })
    }

    pub fn is_defined(&self, m: i64, n: i64) -> bool {
        self.get(m, n).is_some()
    }

    /// Nonzero stored entries `(m, n, ω_{m,n})` with `m < n`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, &Gq)> + '_ {
        self.table.iter().map(|(&(m, n), v)| (m, n, v))
    }

    pub fn undefined_entries(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.undefined.iter().copied()
    }

    /// Entrywise sum; undefined wherever either side is.
    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        if self.window != other.window {
            return Err(Error::DimensionMismatch(
                "cocycles over different windows".into(),
            ));
        }
        let mut out = self.clone();
        for (&(m, n), v) in &other.table {
            let cur = self.table.get(&(m, n)).cloned().unwrap_or_else(Gq::zero);
            out.set(m, n, cur + v.clone())?;
        }
        for &(m, n) in self.undefined.iter().chain(&other.undefined) {
            out.mark_undefined(m, n);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Gq) -> Cocycle {
        let mut out = self.clone();
        out.table = self
            .table
            .iter()
            .map(|(&k, v)| (k, v * s))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// `ω(x, y)` by bilinearity; `None` if a needed entry is undefined.
    pub fn eval(&self, x: &LieElement, y: &LieElement) -> Option<Gq> {
        let mut acc = Gq::zero();
        for (m, a) in x.terms() {
            for (n, b) in y.terms() {
                let w = self.get(m, n)?;
                if !w.is_zero() {
                    acc += a * b * w;
                }
            }
        }
        Some(acc)
    }
}

/// Parses lines `m n re im`; blank lines and `#` comments are skipped.
pub fn parse_cocycle(text: &str, window: Window) -> Result<Cocycle> {
    let mut w = Cocycle::zero(window);
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::parse(lineno + 1, format!("line {}: {msg}", lineno + 1));
        if fields.len() != 4 {
            return Err(bad("expected 'm n re im'"));
        }
        let m: i64 = fields[0].parse().map_err(|_| bad("bad index"))?;
        let n: i64 = fields[1].parse().map_err(|_| bad("bad index"))?;
        let re = parse_rational_str(fields[2]).map_err(|_| bad("bad real part"))?;
        let im = parse_rational_str(fields[3]).map_err(|_| bad("bad imaginary part"))?;
        let cur = w.get(m, n).unwrap_or_else(Gq::zero);
        w.set(m, n, cur + Gq::new(re, im))?;
    }
    Ok(w)
}

pub fn format_cocycle(w: &Cocycle) -> String {
    let mut out = String::new();
    for (m, n, v) in w.entries() {
        let _ = writeln!(out, "{m} {n} {} {}", v.re(), v.im());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleCheck {
    Valid,
    /// `ω([K_l,K_m],K_n) + ω([K_m,K_n],K_l) + ω([K_n,K_l],K_m) ≠ 0`.
    Violation {
        l: i64,
        m: i64,
        n: i64,
        value: Gq,
    },
}

impl CocycleCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CocycleCheck::Valid)
    }
}

fn k0(n: i64) -> LieElement {
    LieElement::generator(AlgebraKind::K0, n).expect("nonzero index")
}

fn cyclic_sum(w: &Cocycle, l: i64, m: i64, n: i64) -> Option<Gq> {
    let (a, b, c) = (k0(l), k0(m), k0(n));
    let ab = bracket(&a, &b).expect("K0");
    let bc = bracket(&b, &c).expect("K0");
    let ca = bracket(&c, &a).expect("K0");
    Some(w.eval(&ab, &c)? + w.eval(&bc, &a)? + w.eval(&ca, &b)?)
}

/// Checks the cyclic identity on every triple whose needed entries are defined in the window.
pub fn cocycle_check(w: &Cocycle) -> CocycleCheck {
    let idx = w.window.k_indices();
    for (i, &l) in idx.iter().enumerate() {
        for (j, &m) in idx.iter().enumerate().skip(i + 1) {
            for &n in &idx[j + 1..] {
                if let Some(v) = cyclic_sum(w, l, m, n) {
                    if !v.is_zero() {
                        return CocycleCheck::Violation { l, m, n, value: v };
                    }
                }
            }
        }
    }
    CocycleCheck::Valid
}

/// Brackets spanning the commutator subalgebra on a window.
#[derive(Debug, Clone)]
pub struct CommutatorBasis {
    window: Window,
    elements: Vec<(String, LieElement)>,
}

impl CommutatorBasis {
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn elements(&self) -> &[(String, LieElement)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn span(&self) -> SpanWindow {
        let elems: Vec<LieElement> = self.elements.iter().map(|(_, x)| x.clone()).collect();
        SpanWindow::from_elements(self.window, &elems).expect("supported in window")
    }
}

/// The pairs `(a, b)` whose brackets form the commutator basis on a window.
fn commutator_pairs(window: Window) -> Vec<(i64, i64)> {
    let n = window.n();
    let mut pairs: Vec<(i64, i64)> = (2..n).map(|j| (j, 1)).collect();
    pairs.extend((2..n).map(|j| (-j, -1)));
    pairs.extend([(-2, 1), (2, -1), (1, -1)]);
    pairs
}

/// `[K_n,K_1]`, `[K_{-n},K_{-1}]` for `1 < n < N`, and `[K_{-2},K_1]`, `[K_2,K_{-1}]`,
/// `[K_1,K_{-1}]`: `2N - 1` independent elements.
pub fn commutator_basis(window: Window) -> Result<CommutatorBasis> {
    if window.bound() < 3 {
        return Err(Error::WindowTooSmall(
            "commutator basis needs window >= 3".into(),
        ));
    }
    let elements: Vec<(String, LieElement)> = commutator_pairs(window)
        .into_iter()
        .map(|(a, b)| {
            (
                format!("[K[{a}],K[{b}]]"),
                bracket(&k0(a), &k0(b)).expect("K0"),
            )
        })
        .collect();
    let basis = CommutatorBasis { window, elements };
    if basis.span().rank() != basis.len() {
        return Err(Error::Hypothesis(
            "commutator basis elements are dependent".into(),
        ));
    }
    Ok(basis)
}

/// `ω_{m,n} = μ([K_m, K_n])`, central part ignored; undefined where the bracket leaves the window.
pub fn coboundary_from_mu(mu: &BTreeMap<i64, Gq>, window: Window) -> Cocycle {
    let mut w = Cocycle::zero(window);
    let idx = window.k_indices();
    for (i, &m) in idx.iter().enumerate() {
        for &n in &idx[i + 1..] {
            let b = bracket(&k0(m), &k0(n)).expect("K0");
            if !b.supported_in(window) {
                w.mark_undefined(m, n);
                continue;
            }
            let v: Gq = b
                .terms()
                .filter_map(|(j, c)| mu.get(&j).map(|x| c * x))
                .sum();
            w.set(m, n, v).expect("inside window");
        }
    }
    w
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// The functional whose coboundary was subtracted, normalized by `μ(K_1) = 0`.
    pub mu: BTreeMap<i64, Gq>,
    pub t: Gq,
    pub residual: Cocycle,
    /// Entries with `|m|, |n|, |m+n| ≤ interior` were checked.
    pub interior: i64,
}

/// Writes `w = δμ + t·ω_Vir` and checks the residual on the window interior.
pub fn reduce_cocycle(w: &Cocycle) -> Result<Reduction> {
    let window = w.window;
    if window.bound() < 5 {
        return Err(Error::WindowTooSmall(
            "reduction reads t at (2,-2) and needs window >= 5".into(),
        ));
    }
    let basis = commutator_basis(window)?;
    let dim = window.k_dim();
    let mut rows = Vec::with_capacity(dim);
    let mut rhs = Vec::with_capacity(dim);
    for ((a, b), (_, x)) in commutator_pairs(window).into_iter().zip(basis.elements()) {
        rows.push(x.k_coords(window)?);
        rhs.push(
            w.get(a, b)
                .ok_or_else(|| Error::InvalidArgument(format!("entry ({a},{b}) is undefined")))?,
        );
    }
    let mut normalize = vec![Gq::zero(); dim];
    normalize[window.k_position(1).expect("1 in window")] = Gq::from_int(1);
    rows.push(normalize);
    rhs.push(Gq::zero());
    let a = Matrix::from_rows(rows, dim)?;
    let b = Matrix::column(rhs);
    let mu_vec = match a.solve(&b)? {
        Solution::Consistent { particular, .. } => particular.col_vec(0),
        Solution::Infeasible { .. } => {
            return Err(Error::Hypothesis("commutator system is singular".into()))
        }
    };
    let mu: BTreeMap<i64, Gq> = window
        .k_indices()
        .into_iter()
        .zip(mu_vec)
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let residual = w.add(&coboundary_from_mu(&mu, window).scale(&Gq::from_int(-1)))?;

    let interior = window.n() - 3;
    let inside =
        |m: i64, n: i64| m.abs() <= interior && n.abs() <= interior && (m + n).abs() <= interior;
    let fail = |m: i64, n: i64, what: &str| -> Error {
        match cocycle_check(w) {
            CocycleCheck::Violation {
                l, m: mm, n: nn, ..
            } => Error::Hypothesis(format!(
                "not a cocycle: cyclic identity fails at ({l},{mm},{nn})"
            )),
            CocycleCheck::Valid => Error::WindowTooSmall(format!(
                "{what} at ({m},{n}) does not reduce inside window {}",
                window.bound()
            )),
        }
    };
    let idx = window.k_indices();
    for (i, &m) in idx.iter().enumerate() {
        for &n in &idx[i + 1..] {
            if m + n == 0 || !inside(m, n) {
                continue;
            }
            match residual.get(m, n) {
                Some(v) if v.is_zero() => {}
                _ => return Err(fail(m, n, "off-diagonal entry")),
            }
        }
    }
    let t = residual
        .get(2, -2)
        .ok_or_else(|| fail(2, -2, "diagonal entry"))?
        .checked_div(&virasoro_weight(2))?;
    for m in 2..=interior {
        if residual.get(m, -m) != Some(&t * &virasoro_weight(m)) {
            return Err(fail(m, -m, "diagonal entry"));
        }
    }
    Ok(Reduction {
        mu,
        t,
        residual,
        interior,
    })
}

/// `μ` written as the element `Σ μ(K_j) K_j`, for display.
pub fn mu_as_element(mu: &BTreeMap<i64, Gq>) -> LieElement {
    LieElement::from_terms(
        AlgebraKind::K0,
        mu.iter().map(|(&j, v)| (j, v.clone())),
        Gq::zero(),
    )
    .expect("nonzero indices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn w(n: u32) -> Window {
        Window::new(n).unwrap()
    }

    #[test]
    fn virasoro_is_a_cocycle() {
        assert!(cocycle_check(&Cocycle::virasoro(w(6))).is_valid());
        assert_eq!(
            Cocycle::virasoro(w(4)).get(2, -2),
            Some(Gq::from_ratio(1, 2))
        );
        assert_eq!(
            Cocycle::virasoro(w(4)).get(-2, 2),
            Some(Gq::from_ratio(-1, 2))
        );
    }

    #[test]
    fn single_entry_is_not_a_cocycle() {
        let mut c = Cocycle::zero(w(4));
        c.set(1, 2, Gq::from_int(1)).unwrap();
        assert!(!cocycle_check(&c).is_valid());
    }

    #[test]
    fn coboundaries() {
        let mu: BTreeMap<i64, Gq> = [(1, Gq::from_int(1))].into();
        let c = coboundary_from_mu(&mu, w(6));
        assert_eq!(c.get(2, -1), Some(Gq::from_int(3)));
        assert!(cocycle_check(&c).is_valid());
        let phi: BTreeMap<i64, Gq> = w(6)
            .k_indices()
            .into_iter()
            .map(|j| (j, Gq::from_int(j)))
            .collect();
        assert_eq!(coboundary_from_mu(&phi, w(6)).entries().count(), 0);
        assert_eq!(
            coboundary_from_mu(&BTreeMap::new(), w(6)).entries().count(),
            0
        );
    }

    #[test]
    fn basis_examples() {
        let b = commutator_basis(w(6)).unwrap();
        assert_eq!(b.len(), 11);
        let find = |label: &str| {
            b.elements()
                .iter()
                .find(|(l, _)| l == label)
                .unwrap()
                .1
                .clone()
        };
        let k = |n| k0(n);
        assert_eq!(find("[K[1],K[-1]]"), -k(1) - k(-1));
        assert_eq!(
            find("[K[-2],K[1]]"),
            k(-1).scale(&Gq::from_int(-3)) + k(-2).scale(&Gq::from_int(2)) + k(1)
        );
        assert!(commutator_basis(w(2)).is_err());
    }

    #[test]
    fn reduce_virasoro_and_mixtures() {
        let r = reduce_cocycle(&Cocycle::virasoro(w(10))).unwrap();
        assert_eq!(r.t, Gq::from_int(1));
        assert!(r.mu.is_empty());
        let mu: BTreeMap<i64, Gq> =
            [(3, Gq::from_ratio(2, 5)), (-4, Gq::new(int(1), int(1)))].into();
        let c = coboundary_from_mu(&mu, w(10))
            .add(&Cocycle::virasoro(w(10)).scale(&Gq::from_int(7)))
            .unwrap();
        assert_eq!(reduce_cocycle(&c).unwrap().t, Gq::from_int(7));
    }

    #[test]
    fn file_round_trip() {
        let v = Cocycle::virasoro(w(5));
        let text = format_cocycle(&v);
        assert!(text.starts_with("-5 5 -10 0\n"));
        assert_eq!(parse_cocycle(&text, w(5)).unwrap(), v);
    }
}
