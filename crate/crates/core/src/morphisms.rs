//! Morphisms of 𝒦 given by images of generators on a window.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{rat, Gq, Matrix, Rational, Solution};
use crate::ideals::SpanWindow;
use crate::lie::{bracket, embed_in_vir, star, AlgebraKind, LieElement, Window};

/// A linear map on 𝒦 fixed by `K_n ↦ images[n]` for `1 ≤ |n| ≤ N` and `C ↦ central_image`.
///
/// Equality compares the map data only, not the note.
#[derive(Debug, Clone)]
pub struct GeneratorMap {
    window: Window,
    images: BTreeMap<i64, LieElement>,
    central_image: LieElement,
    note: Option<String>,
}

impl PartialEq for GeneratorMap {
    fn eq(&self, other: &Self) -> bool {
        self.window == other.window
            && self.images == other.images
            && self.central_image == other.central_image
    }
}

impl Eq for GeneratorMap {}

fn central(c: Gq) -> LieElement {
    LieElement::central_element(AlgebraKind::K, c).expect("K has a center")
}

impl GeneratorMap {
    pub fn new(
        window: Window,
        images: BTreeMap<i64, LieElement>,
        central_image: LieElement,
    ) -> Result<Self> {
        for n in window.k_indices() {
            match images.get(&n) {
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "missing image of K[{n}] for window {}",
                        window.bound()
                    )))
                }
                Some(x) if x.kind() != AlgebraKind::K => {
                    return Err(Error::KindMismatch(x.kind(), AlgebraKind::K))
                }
                _ => {}
            }
        }
        if let Some(&n) = images.keys().find(|&&n| !window.contains(n) || n == 0) {
            return Err(Error::OutsideWindow {
                index: n,
                bound: window.bound(),
            });
        }
        if central_image.kind() != AlgebraKind::K || !central_image.is_central() {
            return Err(Error::InvalidArgument(
                "the image of C must be a multiple of C".into(),
            ));
        }
        Ok(GeneratorMap {
            window,
            images,
            central_image,
            note: None,
        })
    }

    fn from_fn(window: Window, f: impl Fn(i64) -> LieElement, c: Gq) -> Self {
        let images = window.k_indices().into_iter().map(|n| (n, f(n))).collect();
        GeneratorMap::new(window, images, central(c)).expect("factory images are well formed")
    }

    pub fn identity(window: Window) -> Self {
        GeneratorMap::from_fn(window, LieElement::k, Gq::one())
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn image(&self, n: i64) -> Option<&LieElement> {
        self.images.get(&n)
    }

    pub fn images(&self) -> impl Iterator<Item = (i64, &LieElement)> + '_ {
        self.images.iter().map(|(&n, x)| (n, x))
    }

    /// The coefficient `c` in `C ↦ cC`.
    pub fn central_scale(&self) -> &Gq {
        self.central_image.central()
    }

    pub fn central_image(&self) -> &LieElement {
        &self.central_image
    }

    /// Normalization performed at construction, if any.
    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// `images(-n) = images(n)*` and `C ↦ cC` with c real.
    pub fn is_star_compatible(&self) -> bool {
        self.images
            .iter()
            .all(|(&n, x)| self.images.get(&-n) == Some(&star(x)))
            && self.central_scale().is_real()
    }

    pub fn apply(&self, x: &LieElement) -> Result<LieElement> {
        let x = x.with_kind(AlgebraKind::K)?;
        let mut out = self.central_image.scale(x.central());
        for (n, c) in x.terms() {
            let img = self.images.get(&n).ok_or(Error::OutsideWindow {
                index: n,
                bound: self.window.bound(),
            })?;
            out = &out + &img.scale(c);
        }
        Ok(out)
    }

    /// `self ∘ other`, defined on `other`'s window.
    pub fn compose(&self, other: &GeneratorMap) -> Result<GeneratorMap> {
        let images = other
            .images
            .iter()
            .map(|(&n, x)| Ok((n, self.apply(x)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let central_image = self.apply(&other.central_image)?;
        GeneratorMap::new(other.window, images, central_image)
    }

    /// Same images restricted to a smaller window.
    pub fn restrict(&self, window: Window) -> Result<GeneratorMap> {
        if window.bound() > self.window.bound() {
            return Err(Error::WindowTooSmall(format!(
                "map is defined on window {}, not {}",
                self.window.bound(),
                window.bound()
            )));
        }
        let images = window
            .k_indices()
            .into_iter()
            .map(|n| (n, self.images[&n].clone()))
            .collect();
        let mut m = GeneratorMap::new(window, images, self.central_image.clone())?;
        m.note = self.note.clone();
        Ok(m)
    }
}

/// `Λ_λ: K_n ↦ K_n + inλC`, `C ↦ C`, for real λ.
pub fn make_lambda(lam: &Gq, window: Window) -> Result<GeneratorMap> {
    if !lam.is_real() {
        return Err(Error::InvalidArgument(format!(
            "lambda must be real, got {lam}"
        )));
    }
    Ok(GeneratorMap::from_fn(
        window,
        |n| LieElement::k(n) + central(Gq::i() * Gq::from_int(n) * lam.clone()),
        Gq::one(),
    ))
}

/// `τ: K_n ↦ -K_{-n}`, `C ↦ -C`.
pub fn make_tau(window: Window) -> GeneratorMap {
    GeneratorMap::from_fn(window, |n| -LieElement::k(-n), Gq::from_int(-1))
}

/// `δ_r: K_n ↦ (1/r) K_{rn} - ((r - 1/r)/24) C`, `C ↦ rC`.
///
/// This is the restriction of `L_n ↦ (1/r) L_{rn} + δ_{n,0} (r - 1/r)/24 · C`; the
/// central shift on `L_0` survives in `K_n = L_n - L_0` with a minus sign.
pub fn make_delta(r: i64, window: Window) -> Result<GeneratorMap> {
    if r == 0 {
        return Err(Error::InvalidArgument("delta_r needs r != 0".into()));
    }
    let inv = rat(1, r);
    let shift =
        Gq::real((Rational::from_integer(r.into()) - &inv) / Rational::from_integer(24.into()));
    let inv = Gq::real(inv);
    Ok(GeneratorMap::from_fn(
        window,
        |n| LieElement::k(r * n).scale(&inv) - central(shift.clone()),
        Gq::from_int(r),
    ))
}

/// The κ in `[K, K*] = -K - K* + κC`, or the failing bracket.
fn sigma_kappa(k: &LieElement) -> Result<Gq> {
    let ks = star(k);
    let b = bracket(k, &ks)?;
    let rest = &(&b + k) + &ks;
    if !rest.is_central() {
        return Err(Error::Hypothesis(format!(
            "[K, K*] = {b} is not -K - K* plus a central term"
        )));
    }
    Ok(rest.central().clone())
}

fn sigma_coeffs(alpha: &Gq, n: i64) -> (Gq, Gq) {
    let p = Gq::real(rat(n * n + n, 2));
    let q = Gq::real(rat(n * n - n, 2));
    let base = &p * alpha + &q * &alpha.conj();
    (&base - &q, &base - &p)
}

/// `σ_α(K_n) = A_n K + B_n K*` with `A_n = (n²+n)/2 α + (n²-n)/2 ᾱ - (n²-n)/2` and
/// `B_n = A_n - n`; `σ_α(C) = 0`.
///
/// K may satisfy `[K, K*] = -K - K* + κC`; it is then replaced by `K - (κ/2) C`.
pub fn make_sigma(alpha: &Gq, k: &LieElement, window: Window) -> Result<GeneratorMap> {
    let k = k.with_kind(AlgebraKind::K)?;
    if k.is_central() {
        return Err(Error::Hypothesis("K must have a noncentral part".into()));
    }
    let kappa = sigma_kappa(&k)?;
    let kt = &k - &central(kappa.scale(&rat(1, 2)));
    let kts = star(&kt);
    let images = window
        .k_indices()
        .into_iter()
        .map(|n| {
            let (a, b) = sigma_coeffs(alpha, n);
            (n, &kt.scale(&a) + &kts.scale(&b))
        })
        .collect();
    let mut m = GeneratorMap::new(window, images, central(Gq::zero()))?;
    if !kappa.is_zero() {
        m.note = Some(format!("K replaced by {kt} to absorb kappa = {kappa}"));
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismCheck {
    Valid,
    BracketViolation { a: i64, b: i64 },
    StarViolation { n: i64 },
}

impl MorphismCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, MorphismCheck::Valid)
    }
}

/// Checks `m([K_a,K_b]) = [m(K_a), m(K_b)]` (central terms included) for window pairs whose
/// bracket stays in the map's window, and `m(x*) = m(x)*`.
pub fn verify_star_morphism(m: &GeneratorMap, window: Window) -> Result<MorphismCheck> {
    if window.bound() > m.window.bound() {
        return Err(Error::WindowTooSmall(format!(
            "map is defined on window {}, not {}",
            m.window.bound(),
            window.bound()
        )));
    }
    let idx = window.k_indices();
    for &n in &idx {
        if m.images.get(&-n) != Some(&star(&m.images[&n])) {
            return Ok(MorphismCheck::StarViolation { n });
        }
    }
    if !m.central_scale().is_real() {
        return Ok(MorphismCheck::StarViolation { n: 0 });
    }
    let pairs: Vec<(i64, i64)> = idx
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| idx[i + 1..].iter().map(move |&b| (a, b)))
        .collect();
    let bad = pairs.par_iter().find_map_first(|&(a, b)| {
        let lhs_arg = bracket(&LieElement::k(a), &LieElement::k(b)).expect("K");
        if !lhs_arg.supported_in(m.window) {
            return None;
        }
        let lhs = m.apply(&lhs_arg).expect("supported");
        let rhs = bracket(&m.images[&a], &m.images[&b]).expect("K");
        (lhs != rhs).then_some((a, b))
    });
    Ok(match bad {
        Some((a, b)) => MorphismCheck::BracketViolation { a, b },
        None => MorphismCheck::Valid,
    })
}

/// A subspace of the window's K-coordinates extended by one central coordinate (last column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedSpan {
    window: Window,
    basis_rows: Matrix,
}

impl ExtendedSpan {
    fn from_rows(window: Window, rows: Vec<Vec<Gq>>) -> Self {
        let cols = window.k_dim() + 1;
        let m = if rows.is_empty() {
            Matrix::zeros(0, cols)
        } else {
            Matrix::from_rows(rows, cols).expect("extended width")
        };
        let rref = m.rref();
        let kept: Vec<Vec<Gq>> = (0..rref.rank)
            .map(|i| rref.reduced.row(i).to_vec())
            .collect();
        let basis_rows = if kept.is_empty() {
            Matrix::zeros(0, cols)
        } else {
            Matrix::from_rows(kept, cols).expect("extended width")
        };
        ExtendedSpan { window, basis_rows }
    }

    /// `shadow ⊕ ℂC` when `with_central`, else `shadow` alone.
    pub fn from_shadow(shadow: &SpanWindow, with_central: bool) -> Self {
        let window = shadow.window();
        let mut rows: Vec<Vec<Gq>> = shadow
            .basis_rows()
            .row_vecs()
            .into_iter()
            .map(|mut r| {
                r.push(Gq::zero());
                r
            })
            .collect();
        if with_central {
            let mut c = vec![Gq::zero(); window.k_dim() + 1];
            c[window.k_dim()] = Gq::one();
            rows.push(c);
        }
        ExtendedSpan::from_rows(window, rows)
    }

    pub fn rank(&self) -> usize {
        self.basis_rows.rows()
    }

    pub fn basis_rows(&self) -> &Matrix {
        &self.basis_rows
    }

    pub fn contains_central(&self) -> bool {
        let mut c = vec![Gq::zero(); self.window.k_dim() + 1];
        c[self.window.k_dim()] = Gq::one();
        let row = Matrix::from_rows(vec![c], self.window.k_dim() + 1).expect("width");
        self.basis_rows.stack(&row).expect("width").rank() == self.rank()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Coord {
    K(i64),
    C,
}

/// Null space of the map on window coordinates `(K_j, C)`.
pub fn kernel_window(m: &GeneratorMap, window: Window) -> Result<ExtendedSpan> {
    let mut cols: Vec<LieElement> = window
        .k_indices()
        .into_iter()
        .map(|n| {
            m.images.get(&n).cloned().ok_or(Error::OutsideWindow {
                index: n,
                bound: m.window.bound(),
            })
        })
        .collect::<Result<_>>()?;
    cols.push(m.central_image.clone());
    let keys: BTreeSet<Coord> = cols
        .iter()
        .flat_map(|x| {
            let mut v: Vec<Coord> = x.terms().map(|(n, _)| Coord::K(n)).collect();
            if !x.central().is_zero() {
                v.push(Coord::C);
            }
            v
        })
        .collect();
    let keys: Vec<Coord> = keys.into_iter().collect();
    if keys.is_empty() {
        let all = (0..=window.k_dim())
            .map(|i| {
                (0..=window.k_dim())
                    .map(|j| if i == j { Gq::one() } else { Gq::zero() })
                    .collect()
            })
            .collect();
        return Ok(ExtendedSpan::from_rows(window, all));
    }
    let mat = Matrix::from_fn(keys.len(), cols.len(), |r, c| match keys[r] {
        Coord::K(n) => cols[c].coeff(n),
        Coord::C => cols[c].central().clone(),
    });
    Ok(ExtendedSpan::from_rows(window, mat.nullspace()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismClass {
    LambdaAuto(Gq),
    LambdaTau(Gq),
    SigmaHalfLine { alpha: Gq, k: LieElement },
    SigmaGeneric { alpha: Gq, k: LieElement },
    PositiveType(u64),
    NegativeType(u64),
    CentralType(Gq),
    Invalid,
    Unknown,
}

fn generator_part(x: &LieElement) -> LieElement {
    x.without_central()
        .with_kind(AlgebraKind::K)
        .expect("same family")
}

fn ratio_to(x: &LieElement, r: &LieElement) -> Option<Gq> {
    // x = s r for some scalar s, with r nonzero
    let (n, rc) = r.terms().next()?;
    let s = x.coeff(n).checked_div(rc).ok()?;
    (r.scale(&s) == *x).then_some(s)
}

/// Recovers `(α, K)` from `ρ(K_1) = αK + (α-1)K*` and `ρ(K_2) = A_2 K + B_2 K*`, K ∈ 𝒦₊.
fn sigma_parameters(r1: &LieElement, r2: &LieElement) -> Option<(Gq, LieElement)> {
    let (p1, p2) = (generator_part(r1), generator_part(r2));
    // each of these is a multiple of K: α, A_2, conj(B_1), conj(B_2)
    let parts = [
        p1.positive_part(),
        p2.positive_part(),
        star(&p1.negative_part()),
        star(&p2.negative_part()),
    ];
    let reference = parts.iter().find(|x| !x.is_zero())?.clone();
    let x: Vec<Gq> = parts
        .iter()
        .map(|p| ratio_to(p, &reference).or_else(|| p.is_zero().then(Gq::zero)))
        .collect::<Option<_>>()?;
    // K = reference / s with [K, K*] = -K - K* + κC gives [R, R*] = -s̄ R - s R* + central;
    // R has positive support, so the coefficient of its top index determines s̄
    let top = reference.max_index()?;
    let rr = bracket(&reference, &star(&reference)).ok()?;
    let s = (-rr.coeff(top))
        .checked_div(&reference.coeff(top))
        .ok()?
        .conj();
    if s.is_zero() {
        return None;
    }
    let alpha = &x[0] * &s;
    let k = reference.scale(&s.inv().ok()?);
    Some((alpha, k))
}

fn same_on_window(m: &GeneratorMap, other: &GeneratorMap) -> bool {
    m.images == other.images && m.central_image == other.central_image
}

/// Decision tree on the shapes of `ρ(K_1)` and `ρ(K_2)`.
pub fn classify_morphism(m: &GeneratorMap) -> MorphismClass {
    if m.window.bound() < 2 {
        return MorphismClass::Unknown;
    }
    match verify_star_morphism(m, m.window) {
        Ok(MorphismCheck::Valid) => {}
        _ => return MorphismClass::Invalid,
    }
    let (r1, r2) = (&m.images[&1], &m.images[&2]);
    let window = m.window;
    let nu1 = r1.central().clone();

    if r1.is_central() && r2.is_central() {
        let lam = &nu1 * &(-Gq::i());
        let expected = GeneratorMap::from_fn(
            window,
            |n| central(Gq::i() * Gq::from_int(n) * lam.clone()),
            m.central_scale().clone(),
        );
        return if same_on_window(m, &expected) && lam.is_real() {
            MorphismClass::CentralType(lam)
        } else {
            MorphismClass::Unknown
        };
    }

    let lam = &nu1 * &(-Gq::i());
    let (g1, g2) = (generator_part(r1), generator_part(r2));
    if g1 == LieElement::k(1) && g2 == LieElement::k(2) {
        if let Ok(l) = make_lambda(&lam, window) {
            if same_on_window(m, &l) {
                return MorphismClass::LambdaAuto(lam);
            }
        }
        return MorphismClass::Unknown;
    }
    if g1 == -LieElement::k(-1) && g2 == -LieElement::k(-2) {
        if let Ok(l) = make_lambda(&lam, window) {
            if let Ok(lt) = l.compose(&make_tau(window)) {
                if same_on_window(m, &lt) {
                    return MorphismClass::LambdaTau(lam);
                }
            }
        }
        return MorphismClass::Unknown;
    }

    let positive = |x: &LieElement| x.min_index().is_some_and(|n| n > 0);
    let negative = |x: &LieElement| x.max_index().is_some_and(|n| n < 0);
    if positive(&g1) && positive(&g2) {
        let n = g1.max_index().expect("nonzero") as u64;
        let target = Gq::real(rat(1, n as i64));
        return if g1.coefficient_sum() == target
            && g2.coefficient_sum() == target
            && g2.max_index() == Some(2 * n as i64)
        {
            MorphismClass::PositiveType(n)
        } else {
            MorphismClass::Unknown
        };
    }
    if negative(&g1) && negative(&g2) {
        let n = g1.min_index().expect("nonzero").unsigned_abs();
        let target = Gq::real(rat(-1, n as i64));
        return if g1.coefficient_sum() == target
            && g2.coefficient_sum() == target
            && g2.min_index() == Some(-2 * n as i64)
        {
            MorphismClass::NegativeType(n)
        } else {
            MorphismClass::Unknown
        };
    }

    if !m.central_scale().is_zero() {
        return MorphismClass::Unknown;
    }
    let Some((alpha, k)) = sigma_parameters(r1, r2) else {
        return MorphismClass::Unknown;
    };
    let Ok(candidate) = make_sigma(&alpha, &k, window) else {
        return MorphismClass::Unknown;
    };
    if !same_on_window(m, &candidate) {
        return MorphismClass::Unknown;
    }
    let kappa = sigma_kappa(&k).expect("accepted by make_sigma");
    let k = &k - &central(kappa.scale(&rat(1, 2)));
    if alpha.re() == &rat(1, 2) {
        MorphismClass::SigmaHalfLine { alpha, k }
    } else {
        MorphismClass::SigmaGeneric { alpha, k }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum L0Extension {
    /// `Λ(L_0) = a0 L_0 + Σ a_n K_n + b C`.
    Extension {
        a0: Gq,
        coeffs: BTreeMap<i64, Gq>,
        b: Gq,
        unique: bool,
    },
    /// Weights on the real equations whose combination reads `0 = nonzero`.
    Infeasible {
        witness: Vec<Gq>,
        system: Matrix,
        rhs: Vec<Gq>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum VirCoord {
    L(i64),
    C,
}

/// Coefficient maps of the unknowns' contributions, and of the constant part.
type Block = (Vec<BTreeMap<VirCoord, Gq>>, BTreeMap<VirCoord, Gq>);

fn vir_coords(x: &LieElement) -> BTreeMap<VirCoord, Gq> {
    let mut out: BTreeMap<VirCoord, Gq> = x
        .terms()
        .map(|(n, c)| (VirCoord::L(n), c.clone()))
        .collect();
    if !x.central().is_zero() {
        out.insert(VirCoord::C, x.central().clone());
    }
    out
}

/// Searches for `Λ(L_0)` extending m to Vir, with star-real unknowns
/// (`a_0`, `b` real, `a_{-n} = conj(a_n)`), from `Λ([K_j, L_0]) = [Λ(K_j), Λ(L_0)]`, `j = ±1, ±2`.
pub fn l0_extension_solve(m: &GeneratorMap, window: Window) -> Result<L0Extension> {
    if window.bound() < 3 {
        return Err(Error::WindowTooSmall(
            "L0 extension needs window >= 3".into(),
        ));
    }
    if m.window.bound() < 2 {
        return Err(Error::WindowTooSmall(
            "map must be defined on K[±1], K[±2]".into(),
        ));
    }
    let vir = |x: &LieElement| embed_in_vir(x).expect("K kind");
    // real unknown directions of X = Λ(L_0)
    let mut dirs: Vec<LieElement> = vec![
        LieElement::l(0),
        LieElement::central_element(AlgebraKind::Vir, Gq::one())?,
    ];
    for n in 1..=window.n() {
        let (kp, km) = (vir(&LieElement::k(n)), vir(&LieElement::k(-n)));
        dirs.push(&kp + &km);
        dirs.push((&kp - &km).scale(&Gq::i()));
    }
    let mut blocks: Vec<Block> = Vec::new();
    for j in [1i64, -1, 2, -2] {
        let img = vir(&m.images[&j]);
        let jq = Gq::from_int(j);
        let cols = dirs
            .iter()
            .map(|d| vir_coords(&(&d.scale(&jq) - &bracket(&img, d).expect("Vir"))))
            .collect();
        // the constant j Λ(K_j) moves to the right-hand side
        let rhs = vir_coords(&img.scale(&-jq));
        blocks.push((cols, rhs));
    }
    let mut rows: Vec<Vec<Gq>> = Vec::new();
    let mut rhs: Vec<Gq> = Vec::new();
    for (cols, b) in &blocks {
        let keys: BTreeSet<VirCoord> = cols
            .iter()
            .flat_map(|c| c.keys().copied())
            .chain(b.keys().copied())
            .collect();
        for key in keys {
            let entry = |c: &BTreeMap<VirCoord, Gq>| c.get(&key).cloned().unwrap_or_else(Gq::zero);
            let vals: Vec<Gq> = cols.iter().map(entry).collect();
            let r = entry(b);
            rows.push(vals.iter().map(|v| Gq::real(v.re().clone())).collect());
            rhs.push(Gq::real(r.re().clone()));
            rows.push(vals.iter().map(|v| Gq::real(v.im().clone())).collect());
            rhs.push(Gq::real(r.im().clone()));
        }
    }
    let system = Matrix::from_rows(rows, dirs.len())?;
    match system.solve(&Matrix::column(rhs.clone()))? {
        Solution::Infeasible { witness } => Ok(L0Extension::Infeasible {
            witness,
            system,
            rhs,
        }),
        Solution::Consistent { particular, kernel } => {
            let u = particular.col_vec(0);
            let mut coeffs = BTreeMap::new();
            for n in 1..=window.n() {
                let k = 2 + 2 * (n as usize - 1);
                let a = Gq::new(u[k].re().clone(), u[k + 1].re().clone());
                if !a.is_zero() {
                    coeffs.insert(-n, a.conj());
                    coeffs.insert(n, a);
                }
            }
            Ok(L0Extension::Extension {
                a0: u[0].clone(),
                coeffs,
                b: u[1].clone(),
                unique: kernel.is_empty(),
            })
        }
    }
}

/// Checks an infeasibility witness: `wᵀA = 0` and `wᵀb ≠ 0`.
pub fn certificate_holds(witness: &[Gq], system: &Matrix, rhs: &[Gq]) -> bool {
    if witness.len() != system.rows() || rhs.len() != system.rows() {
        return false;
    }
    let combo = |col: &dyn Fn(usize) -> Gq| -> Gq {
        witness.iter().enumerate().map(|(i, w)| w * &col(i)).sum()
    };
    (0..system.cols()).all(|j| combo(&|i| system[(i, j)].clone()).is_zero())
        && !combo(&|i| rhs[i].clone()).is_zero()
}

/// Parses lines `K[n] -> <element>` and `C -> <element>`.
///
/// Without an explicit window, the largest N with every `K[±1..±N]` present is used.
pub fn parse_generator_map(text: &str, window: Option<Window>) -> Result<GeneratorMap> {
    let mut images = BTreeMap::new();
    let mut central_image = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| Error::parse(lineno + 1, format!("line {}: {msg}", lineno + 1));
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| bad("expected '<generator> -> <element>'".into()))?;
        let img = crate::text::parse_element_as(rhs.trim(), AlgebraKind::K)
            .map_err(|e| bad(e.to_string()))?;
        let src = crate::text::parse_element(lhs.trim()).map_err(|e| bad(e.to_string()))?;
        if src.kind() == AlgebraKind::K && src.is_central() && src.central().is_one() {
            central_image = Some(img);
            continue;
        }
        let mut terms = src.terms();
        match (
            terms.next(),
            terms.next(),
            src.central().is_zero(),
            src.kind(),
        ) {
            (Some((n, c)), None, true, AlgebraKind::K) if c.is_one() => {
                images.insert(n, img);
            }
            _ => {
                return Err(bad(format!(
                    "left side must be K[n] or C, got {}",
                    lhs.trim()
                )))
            }
        }
    }
    let window = match window {
        Some(w) => w,
        None => {
            let mut n = 0;
            while images.contains_key(&(n + 1)) && images.contains_key(&-(n + 1)) {
                n += 1;
            }
            Window::new(n as u32).map_err(|_| {
                Error::InvalidArgument("morphism file must define K[1] and K[-1]".into())
            })?
        }
    };
    images.retain(|&n, _| window.contains(n));
    let central_image = central_image
        .ok_or_else(|| Error::InvalidArgument("morphism file lacks a 'C ->' line".into()))?;
    GeneratorMap::new(window, images, central_image)
}

pub fn format_generator_map(m: &GeneratorMap) -> String {
    let mut out = String::new();
    for (n, x) in m.images() {
        out.push_str(&format!("K[{n}] -> {x}\n"));
    }
    out.push_str(&format!("C -> {}\n", m.central_image));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::kchain_shadow;

    fn w(n: u32) -> Window {
        Window::new(n).unwrap()
    }

    fn q(a: i64, b: i64) -> Gq {
        Gq::from_ratio(a, b)
    }

    #[test]
    fn lambda_images_and_composition() {
        let l2 = make_lambda(&q(2, 1), w(4)).unwrap();
        assert_eq!(
            l2.image(3).unwrap(),
            &(LieElement::k(3) + central(Gq::new(rat(0, 1), rat(6, 1))))
        );
        assert_eq!(
            make_lambda(&Gq::zero(), w(4)).unwrap(),
            GeneratorMap::identity(w(4))
        );
        let l1 = make_lambda(&q(1, 3), w(4)).unwrap();
        assert_eq!(
            l2.compose(&l1).unwrap(),
            make_lambda(&q(7, 3), w(4)).unwrap()
        );
        assert!(make_lambda(&Gq::i(), w(4)).is_err());
    }

    #[test]
    fn delta_and_tau() {
        let d2 = make_delta(2, w(4)).unwrap();
        assert_eq!(
            d2.image(3).unwrap(),
            &(LieElement::k(6).scale(&q(1, 2)) - central(q(1, 16)))
        );
        assert_eq!(make_delta(1, w(4)).unwrap(), GeneratorMap::identity(w(4)));
        assert_eq!(make_delta(-1, w(4)).unwrap(), make_tau(w(4)));
        assert!(verify_star_morphism(&d2, w(4)).unwrap().is_valid());
        let t = make_tau(w(5));
        assert_eq!(t.compose(&t).unwrap(), GeneratorMap::identity(w(5)));
        assert!(verify_star_morphism(&t, w(5)).unwrap().is_valid());
    }

    #[test]
    fn doubling_without_scale_fails() {
        let images = w(4)
            .k_indices()
            .into_iter()
            .map(|n| (n, LieElement::k(2 * n)))
            .collect();
        let m = GeneratorMap::new(w(4), images, central(Gq::one())).unwrap();
        assert!(!verify_star_morphism(&m, w(4)).unwrap().is_valid());
        assert_eq!(
            verify_star_morphism(&m.restrict(w(1)).unwrap(), w(1)).unwrap(),
            MorphismCheck::BracketViolation { a: -1, b: 1 }
        );
    }

    #[test]
    fn sigma_examples() {
        let alpha = Gq::new(rat(2, 3), rat(-1, 5));
        let s = make_sigma(&alpha, &LieElement::k(1), w(5)).unwrap();
        assert_eq!(
            s.image(1).unwrap(),
            &(LieElement::k(1).scale(&alpha) + LieElement::k(-1).scale(&(&alpha - &Gq::one())))
        );
        assert!(verify_star_morphism(&s, w(5)).unwrap().is_valid());
        let s1 = make_sigma(&Gq::one(), &LieElement::k(1), w(3)).unwrap();
        assert_eq!(
            s1.image(2).unwrap(),
            &(LieElement::k(1).scale(&q(3, 1)) + LieElement::k(-1))
        );
        assert!(make_sigma(&Gq::one(), &-LieElement::k(-1), w(3)).is_ok());
        assert!(matches!(
            make_sigma(&Gq::one(), &LieElement::k(2), w(3)),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn kernels() {
        let n = w(6);
        let half = make_sigma(&Gq::new(rat(1, 2), rat(1, 1)), &LieElement::k(1), n).unwrap();
        assert_eq!(
            kernel_window(&half, n).unwrap(),
            ExtendedSpan::from_shadow(&kchain_shadow(1, n), true)
        );
        let generic = make_sigma(&Gq::new(rat(1, 3), rat(1, 1)), &LieElement::k(1), n).unwrap();
        assert_eq!(
            kernel_window(&generic, n).unwrap(),
            ExtendedSpan::from_shadow(&kchain_shadow(2, n), true)
        );
        assert_eq!(
            kernel_window(&make_lambda(&q(1, 2), n).unwrap(), n)
                .unwrap()
                .rank(),
            0
        );
    }

    #[test]
    fn classification() {
        let n = w(6);
        let lt = make_lambda(&q(3, 1), n)
            .unwrap()
            .compose(&make_tau(n))
            .unwrap();
        assert_eq!(classify_morphism(&lt), MorphismClass::LambdaTau(q(3, 1)));
        let alpha = Gq::new(rat(1, 2), rat(1, 1));
        assert!(matches!(
            classify_morphism(&make_sigma(&alpha, &LieElement::k(1), n).unwrap()),
            MorphismClass::SigmaHalfLine { alpha: a, .. } if a == alpha
        ));
        assert_eq!(
            classify_morphism(&make_delta(2, n).unwrap()),
            MorphismClass::PositiveType(2)
        );
        let neg = make_tau(w(12)).compose(&make_delta(2, n).unwrap()).unwrap();
        assert_eq!(classify_morphism(&neg), MorphismClass::NegativeType(2));
        let images = n
            .k_indices()
            .into_iter()
            .map(|j| (j, LieElement::k(2 * j)))
            .collect();
        let bad = GeneratorMap::new(n, images, central(Gq::one())).unwrap();
        assert_eq!(classify_morphism(&bad), MorphismClass::Invalid);
    }

    #[test]
    fn l0_extension() {
        let n = w(6);
        match l0_extension_solve(&make_lambda(&Gq::zero(), n).unwrap(), n).unwrap() {
            L0Extension::Extension { a0, coeffs, b, .. } => {
                assert_eq!(a0, Gq::one());
                assert!(b.is_zero());
                assert!(coeffs.is_empty());
            }
            other => panic!("{other:?}"),
        }
        for lam in [q(1, 1), q(-5, 3)] {
            match l0_extension_solve(&make_lambda(&lam, n).unwrap(), n).unwrap() {
                L0Extension::Infeasible {
                    witness,
                    system,
                    rhs,
                } => {
                    assert!(certificate_holds(&witness, &system, &rhs));
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let d = make_delta(2, w(3)).unwrap();
        let text = format_generator_map(&d);
        assert!(text.contains("K[3] -> 1/2*K[6] - 1/16*C\n"));
        assert_eq!(parse_generator_map(&text, None).unwrap(), d);
    }
}
