//! Generalized Verma modules of 𝒦 and Verma modules of Vir, realized on PBW monomials.
//!
//! A monomial `[a_1, …, a_k]` with `-1 ≥ a_1 ≥ … ≥ a_k` stands for
//! `X_{a_1} ⋯ X_{a_k} v`, where X is K or L depending on the module.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{rat, Gq, Matrix, Rational};
use crate::lie::{bracket, AlgebraKind, LieElement};

/// Lowest weight data `ψ(K_n) = h + ih' + λn` (n ≥ 1), `ψ(C) = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub h: Rational,
    pub h_prime: Rational,
    pub c: Gq,
    pub lambda: Gq,
}

impl Weight {
    pub fn new(h: Rational, h_prime: Rational, c: Gq, lambda: Gq) -> Self {
        Weight {
            h,
            h_prime,
            c,
            lambda,
        }
    }

    /// `h + ih'`.
    pub fn z(&self) -> Gq {
        Gq::new(self.h.clone(), self.h_prime.clone())
    }

    /// `ψ(K_n)` for `n ≥ 1`.
    pub fn psi(&self, n: i64) -> Gq {
        self.z() + &self.lambda * &Gq::from_int(n)
    }

    pub fn with_lambda(&self, lambda: Gq) -> Weight {
        Weight {
            lambda,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(Vec<i64>);

pub type PBWMonomial = PbwMonomial;

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial(Vec::new())
    }

    pub fn new(indices: Vec<i64>) -> Result<Self> {
        if indices.iter().any(|&a| a >= 0) {
            return Err(Error::InvalidArgument(
                "PBW monomial indices must be negative".into(),
            ));
        }
        if indices.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvalidArgument(
                "PBW monomial indices must be weakly decreasing".into(),
            ));
        }
        Ok(PbwMonomial(indices))
    }

    pub fn indices(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|a| a.unsigned_abs()).sum()
    }

    pub fn format_with(&self, letter: char) -> String {
        let mut s: String = self.0.iter().map(|a| format!("{letter}[{a}]")).collect();
        s.push('v');
        s
    }
}

/// Monomials of degree exactly `level`, in a fixed order.
pub fn monomials_of_level(level: u64) -> Vec<PbwMonomial> {
    fn rec(rem: u64, max_part: u64, acc: &mut Vec<i64>, out: &mut Vec<PbwMonomial>) {
        if rem == 0 {
            out.push(PbwMonomial(acc.clone()));
            return;
        }
        // parts listed from smallest magnitude so that indices decrease weakly
        let min_part = acc.last().map_or(1, |&a| a.unsigned_abs());
        for p in min_part..=rem.min(max_part) {
            acc.push(-(p as i64));
            rec(rem - p, max_part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(level, level, &mut Vec::new(), &mut out);
    out
}

/// Monomials of degree at most `max_degree`, by degree.
pub fn monomials_up_to(max_degree: u64) -> Vec<PbwMonomial> {
    (0..=max_degree).flat_map(monomials_of_level).collect()
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct ModuleVector {
    terms: BTreeMap<PbwMonomial, Gq>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn vacuum() -> Self {
        ModuleVector::monomial(PbwMonomial::vacuum())
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        ModuleVector::from_terms([(m, Gq::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PbwMonomial, Gq)>) -> Self {
        let mut v = ModuleVector::zero();
        for (m, c) in terms {
            v.add_term(m, &c);
        }
        v
    }

    fn add_term(&mut self, m: PbwMonomial, c: &Gq) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Gq::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, s: &Gq) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(c * s));
        }
    }

    pub fn scale(&self, s: &Gq) -> ModuleVector {
        ModuleVector::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c * s)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Gq)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Gq {
        self.terms.get(m).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial degree present (0 for the zero vector).
    pub fn degree(&self) -> u64 {
        self.terms
            .keys()
            .map(PbwMonomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn format_with(&self, letter: char) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({c})*{}", m.format_with(letter)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with('X'))
    }
}

impl std::ops::Add for &ModuleVector {
    type Output = ModuleVector;
    fn add(self, rhs: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Gq::one());
        out
    }
}

impl std::ops::Sub for &ModuleVector {
    type Output = ModuleVector;
    fn sub(self, rhs: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Gq::from_int(-1));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleKind {
    /// `V_{h+ih',c,λ}` over 𝒦.
    K(Weight),
    /// Vir Verma module with `L_0 v = H v`, `C = c`.
    Vir { h: Gq, c: Gq },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Index(i64),
    Central,
}

/// A module with a memo table for generator actions on monomials.
#[derive(Debug, Clone)]
pub struct VermaModule {
    kind: ModuleKind,
    cache: HashMap<(i64, PbwMonomial), ModuleVector>,
}

impl VermaModule {
    pub fn new(kind: ModuleKind) -> Self {
        VermaModule {
            kind,
            cache: HashMap::new(),
        }
    }

    pub fn k(w: Weight) -> Self {
        VermaModule::new(ModuleKind::K(w))
    }

    pub fn vir(h: Gq, c: Gq) -> Self {
        VermaModule::new(ModuleKind::Vir { h, c })
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    fn algebra(&self) -> AlgebraKind {
        match self.kind {
            ModuleKind::K(_) => AlgebraKind::K,
            ModuleKind::Vir { .. } => AlgebraKind::Vir,
        }
    }

    fn central_charge(&self) -> &Gq {
        match &self.kind {
            ModuleKind::K(w) => &w.c,
            ModuleKind::Vir { c, .. } => c,
        }
    }

    pub fn letter(&self) -> char {
        match self.kind {
            ModuleKind::K(_) => 'K',
            ModuleKind::Vir { .. } => 'L',
        }
    }

    fn on_vacuum(&self, g: i64) -> ModuleVector {
        if g < 0 {
            return ModuleVector::monomial(PbwMonomial(vec![g]));
        }
        match &self.kind {
            ModuleKind::K(w) => ModuleVector::vacuum().scale(&w.psi(g)),
            ModuleKind::Vir { h, .. } if g == 0 => ModuleVector::vacuum().scale(h),
            ModuleKind::Vir { .. } => ModuleVector::zero(),
        }
    }

    fn gen_element(&self, n: i64) -> LieElement {
        LieElement::generator(self.algebra(), n).expect("valid index")
    }

    /// `X_g · mono`, reordered into PBW form by commuting through brackets.
    fn apply_mono(&mut self, g: i64, mono: &PbwMonomial) -> ModuleVector {
        let Some(&a1) = mono.0.first() else {
            return self.on_vacuum(g);
        };
        if g < 0 && g >= a1 {
            let mut idx = Vec::with_capacity(mono.0.len() + 1);
            idx.push(g);
            idx.extend_from_slice(&mono.0);
            return ModuleVector::monomial(PbwMonomial(idx));
        }
        let key = (g, mono.clone());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let rest = PbwMonomial(mono.0[1..].to_vec());
        // X_g X_{a1} rest = X_{a1} (X_g rest) + [X_g, X_{a1}] rest
        let inner = self.apply_mono(g, &rest);
        let mut out = ModuleVector::zero();
        for (m, c) in inner.terms.clone() {
            let v = self.apply_mono(a1, &m);
            out.add_scaled(&v, &c);
        }
        let br = bracket(&self.gen_element(g), &self.gen_element(a1)).expect("same kind");
        for (j, c) in br.terms() {
            let v = self.apply_mono(j, &rest);
            out.add_scaled(&v, c);
        }
        if !br.central().is_zero() {
            let s = br.central() * self.central_charge();
            out.add_term(rest, &s);
        }
        self.cache.insert(key, out.clone());
        out
    }

    pub fn act(&mut self, g: Generator, x: &ModuleVector) -> Result<ModuleVector> {
        match g {
            Generator::Central => Ok(x.scale(&self.central_charge().clone())),
            Generator::Index(0) if matches!(self.kind, ModuleKind::K(_)) => Err(Error::ZeroKIndex),
            Generator::Index(n) => {
                let mut out = ModuleVector::zero();
                for (m, c) in &x.terms {
                    let v = self.apply_mono(n, m);
                    out.add_scaled(&v, c);
                }
                Ok(out)
            }
        }
    }

    pub fn act_index(&mut self, n: i64, x: &ModuleVector) -> Result<ModuleVector> {
        self.act(Generator::Index(n), x)
    }

    /// Applies a Lie element (of the module's algebra) to x.
    pub fn act_element(&mut self, e: &LieElement, x: &ModuleVector) -> Result<ModuleVector> {
        if e.kind() != self.algebra() {
            return Err(Error::KindMismatch(e.kind(), self.algebra()));
        }
        let mut out = x.scale(&(e.central() * self.central_charge()));
        for (n, c) in e.terms() {
            let v = self.act_index(n, x)?;
            out.add_scaled(&v, c);
        }
        Ok(out)
    }

    /// `X_{a_1} ⋯ X_{a_k} x` for an arbitrary index sequence (rightmost applied first).
    pub fn act_word(&mut self, word: &[i64], x: &ModuleVector) -> Result<ModuleVector> {
        let mut v = x.clone();
        for &n in word.iter().rev() {
            v = self.act_index(n, &v)?;
        }
        Ok(v)
    }

    fn require_k_lambda_zero(&self) -> Result<&Weight> {
        match &self.kind {
            ModuleKind::K(w) if w.lambda.is_zero() => Ok(w),
            ModuleKind::K(w) => Err(Error::NonzeroLambda(Box::new(w.lambda.clone()))),
            ModuleKind::Vir { .. } => Err(Error::KindMismatch(AlgebraKind::Vir, AlgebraKind::K)),
        }
    }

    /// `D v = (h+ih') v`, `D(K_n x) = K_n(Dx) + n K_n x - n Dx`.
    pub fn d_apply(&mut self, x: &ModuleVector) -> Result<ModuleVector> {
        let z = self.require_k_lambda_zero()?.z();
        let mut memo: HashMap<PbwMonomial, ModuleVector> = HashMap::new();
        let mut out = ModuleVector::zero();
        for (m, c) in &x.terms {
            let v = self.d_mono(m, &z, &mut memo);
            out.add_scaled(&v, c);
        }
        Ok(out)
    }

    fn d_mono(
        &mut self,
        m: &PbwMonomial,
        z: &Gq,
        memo: &mut HashMap<PbwMonomial, ModuleVector>,
    ) -> ModuleVector {
        if let Some(v) = memo.get(m) {
            return v.clone();
        }
        let out = match m.0.split_first() {
            None => ModuleVector::vacuum().scale(z),
            Some((&n, rest)) => {
                let rest = PbwMonomial(rest.to_vec());
                let d_rest = self.d_mono(&rest, z, memo);
                let nq = Gq::from_int(n);
                let mut out = ModuleVector::zero();
                for (mm, c) in d_rest.terms.clone() {
                    let v = self.apply_mono(n, &mm);
                    out.add_scaled(&v, &c);
                }
                out.add_term(m.clone(), &nq);
                out.add_scaled(&d_rest, &-nq);
                out
            }
        };
        memo.insert(m.clone(), out.clone());
        out
    }

    /// Vir action through `L_n ↦ K_n - D` (n ≠ 0), `L_0 ↦ -D`, `C ↦ C`.
    pub fn vir_extend_act(&mut self, g: Generator, x: &ModuleVector) -> Result<ModuleVector> {
        self.require_k_lambda_zero()?;
        match g {
            Generator::Central => self.act(Generator::Central, x),
            Generator::Index(0) => Ok(self.d_apply(x)?.scale(&Gq::from_int(-1))),
            Generator::Index(n) => {
                let kx = self.act_index(n, x)?;
                let dx = self.d_apply(x)?;
                Ok(&kx - &dx)
            }
        }
    }

    /// `⟨m, v⟩ = Π conj(ψ(K_{-a_i}))` for a monomial `K_{a_1} ⋯ v`.
    fn vacuum_pairing(w: &Weight, m: &PbwMonomial) -> Gq {
        m.0.iter().map(|&a| w.psi(-a).conj()).product()
    }

    /// `γ(u, u') = ⟨u, u'⟩`, linear in u, conjugate-linear in u', with `⟨v, v⟩ = 1`
    /// and `⟨x u, u'⟩ = ⟨u, x* u'⟩`.
    pub fn gamma(&mut self, u: &ModuleVector, u2: &ModuleVector) -> Result<Gq> {
        let w = match &self.kind {
            ModuleKind::K(w) => w.clone(),
            ModuleKind::Vir { .. } => {
                return Err(Error::KindMismatch(AlgebraKind::Vir, AlgebraKind::K))
            }
        };
        if !w.c.is_real() {
            return Err(Error::InvalidArgument(format!(
                "contravariant form needs real c, got {}",
                w.c
            )));
        }
        let mut total = Gq::zero();
        for (m2, c2) in &u2.terms {
            // ⟨u, K_{b_1} ⋯ K_{b_l} v⟩ = ⟨K_{-b_l} ⋯ K_{-b_1} u, v⟩
            let word: Vec<i64> = m2.0.iter().rev().map(|&b| -b).collect();
            let moved = self.act_word(&word, u)?;
            let val: Gq = moved
                .terms
                .iter()
                .map(|(m, c)| c * &VermaModule::vacuum_pairing(&w, m))
                .sum();
            total += val * c2.conj();
        }
        Ok(total)
    }
}

/// Matrix of γ over all monomials of degree ≤ `max_degree`, with the monomial labels.
pub fn gram_k_form(w: &Weight, max_degree: u64) -> Result<(Matrix, Vec<PbwMonomial>)> {
    if !w.c.is_real() {
        return Err(Error::InvalidArgument(format!(
            "contravariant form needs real c, got {}",
            w.c
        )));
    }
    let basis = monomials_up_to(max_degree);
    let rows: Vec<Vec<Gq>> = basis
        .par_iter()
        .map(|u| {
            let mut module = VermaModule::k(w.clone());
            let uv = ModuleVector::monomial(u.clone());
            basis
                .iter()
                .map(|u2| module.gamma(&uv, &ModuleVector::monomial(u2.clone())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let n = basis.len();
    Ok((Matrix::from_rows(rows, n)?, basis))
}

/// Bilinear Shapovalov pairing on level-`level` Vir monomials: `⟨uv, u'v⟩` is the
/// coefficient of v in `uᵀ u' v`, with `L_{-n}ᵀ = L_n`.
pub fn shapovalov_matrix(h: &Gq, c: &Gq, level: u64) -> Result<Matrix> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let basis = monomials_of_level(level);
    let rows: Vec<Vec<Gq>> = basis
        .par_iter()
        .map(|u| {
            let mut module = VermaModule::vir(h.clone(), c.clone());
            // uᵀ = L_{-a_k} ⋯ L_{-a_1}: L_{-a_1} acts first
            let word: Vec<i64> = u.0.iter().rev().map(|&a| -a).collect();
            basis
                .iter()
                .map(|u2| {
                    let v = module.act_word(&word, &ModuleVector::monomial(u2.clone()))?;
                    Ok(v.coeff(&PbwMonomial::vacuum()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Matrix::from_rows(rows, basis.len())
}

pub fn kac_determinant(h: &Gq, c: &Gq, level: u64) -> Result<Gq> {
    shapovalov_matrix(h, c, level)?.det()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FFParams {
    pub alpha: u64,
    pub beta: u64,
}

impl FFParams {
    pub fn new(alpha: u64, beta: u64) -> Result<Self> {
        if alpha == 0 || beta == 0 {
            return Err(Error::InvalidArgument("alpha and beta must be >= 1".into()));
        }
        Ok(FFParams { alpha, beta })
    }
}

/// `Φ_{α,β}(H,c) = (H + (α²-1)(c-13)/24 + (αβ-1)/2)(H + (β²-1)(c-13)/24 + (αβ-1)/2) + (α²-β²)²/16`.
pub fn ff_phi(p: FFParams, h: &Gq, c: &Gq) -> Gq {
    let (a, b) = (p.alpha as i64, p.beta as i64);
    let c13 = c - &Gq::from_int(13);
    let shift = Gq::real(rat(a * b - 1, 2));
    let f1 = h + &(&c13 * &Gq::real(rat(a * a - 1, 24))) + shift.clone();
    let f2 = h + &(&c13 * &Gq::real(rat(b * b - 1, 24))) + shift;
    let d = a * a - b * b;
    &f1 * &f2 + Gq::real(rat(d * d, 16))
}

/// Pairs `(α, β)` with `αβ ≤ n`, ordered by `αβ` then α.
pub fn ff_pairs(n: u64) -> Vec<FFParams> {
    let mut v: Vec<FFParams> = (1..=n)
        .flat_map(|a| (1..=n / a).map(move |b| FFParams { alpha: a, beta: b }))
        .collect();
    v.sort_by_key(|p| (p.alpha * p.beta, p.alpha));
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reducibility {
    Reducible(FFParams),
    IrreducibleUpTo(u64),
}

/// First `(α, β)` with `αβ ≤ max_level` and `Φ_{α,β}(H, c) = 0`.
pub fn vir_reducibility(h: &Gq, c: &Gq, max_level: u64) -> Reducibility {
    ff_pairs(max_level)
        .into_iter()
        .find(|&p| ff_phi(p, h, c).is_zero())
        .map_or(
            Reducibility::IrreducibleUpTo(max_level),
            Reducibility::Reducible,
        )
}

/// Reducibility of `V_{h+ih',c,λ}` through the Vir module of lowest weight `-h-ih'`.
pub fn reducibility_test(w: &Weight, max_level: u64) -> Reducibility {
    vir_reducibility(&-w.z(), &w.c, max_level)
}

/// A nonzero level-`level` vector killed by `L_1` and `L_2`, if one exists.
pub fn singular_vector_search(h: &Gq, c: &Gq, level: u64) -> Result<Option<ModuleVector>> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let basis = monomials_of_level(level);
    let mut module = VermaModule::vir(h.clone(), c.clone());
    let mut images: Vec<ModuleVector> = Vec::with_capacity(basis.len());
    for m in &basis {
        let x = ModuleVector::monomial(m.clone());
        let mut img = module.act_index(1, &x)?;
        // L_2 images live one level lower than L_1 images; tag them apart
        for (mm, cc) in module.act_index(2, &x)?.terms() {
            let mut idx = vec![i64::MIN];
            idx.extend_from_slice(mm.indices());
            img.add_term(PbwMonomial(idx), cc);
        }
        images.push(img);
    }
    let keys: Vec<PbwMonomial> = {
        let mut k: Vec<PbwMonomial> = images
            .iter()
            .flat_map(|v| v.terms.keys().cloned())
            .collect();
        k.sort();
        k.dedup();
        k
    };
    let kernel = if keys.is_empty() {
        (0..basis.len())
            .map(|i| {
                (0..basis.len())
                    .map(|j| if i == j { Gq::one() } else { Gq::zero() })
                    .collect()
            })
            .collect()
    } else {
        Matrix::from_fn(keys.len(), basis.len(), |r, c| images[c].coeff(&keys[r])).nullspace()
    };
    Ok(kernel
        .into_iter()
        .next()
        .map(|v| ModuleVector::from_terms(basis.iter().cloned().zip(v))))
}

/// Checks that `K_{a_1}⋯v ↦ K'_{a_1}⋯v`, `K'_n = K_n - nλ`, intertwines `V_{z,c,0}` with
/// `V_{z,c,λ}` on monomials of degree ≤ `max_degree` and generators `|n| ≤ max_index`.
pub fn lambda_shift_intertwines(w: &Weight, max_degree: u64, max_index: i64) -> Result<bool> {
    let mut v0 = VermaModule::k(w.with_lambda(Gq::zero()));
    let mut vl = VermaModule::k(w.clone());
    let lam = w.lambda.clone();
    let shifted = |module: &mut VermaModule, n: i64, x: &ModuleVector| -> Result<ModuleVector> {
        let kx = module.act_index(n, x)?;
        Ok(&kx - &x.scale(&(&lam * &Gq::from_int(n))))
    };
    // T on a vector of V_0
    let t = |module: &mut VermaModule, x: &ModuleVector| -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (m, c) in x.terms() {
            let mut y = ModuleVector::vacuum();
            for &a in m.indices().iter().rev() {
                y = shifted(module, a, &y)?;
            }
            out.add_scaled(&y, c);
        }
        Ok(out)
    };
    for m in monomials_up_to(max_degree) {
        let x = ModuleVector::monomial(m);
        let tx = t(&mut vl, &x)?;
        for n in (-max_index..=max_index).filter(|&n| n != 0) {
            let lhs_inner = v0.act_index(n, &x)?;
            let lhs = t(&mut vl, &lhs_inner)?;
            let kx = vl.act_index(n, &tx)?;
            let rhs = &kx - &tx.scale(&(&w.lambda * &Gq::from_int(n)));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight(h: (i64, i64), hp: (i64, i64), c: Gq, lam: Gq) -> Weight {
        Weight::new(rat(h.0, h.1), rat(hp.0, hp.1), c, lam)
    }

    fn mono(ix: &[i64]) -> ModuleVector {
        ModuleVector::monomial(PbwMonomial::new(ix.to_vec()).unwrap())
    }

    #[test]
    fn partitions() {
        assert_eq!(monomials_of_level(4).len(), 5);
        assert_eq!(monomials_up_to(3).len(), 1 + 1 + 2 + 3);
        assert!(monomials_of_level(3).contains(&PbwMonomial(vec![-1, -2])));
        assert!(PbwMonomial::new(vec![-2, -1]).is_err());
    }

    #[test]
    fn k_module_examples() {
        let w = weight((1, 3), (2, 5), Gq::from_int(2), Gq::from_ratio(1, 7));
        let psi1 = w.psi(1);
        let mut m = VermaModule::k(w.clone());
        assert_eq!(
            m.act_index(1, &ModuleVector::vacuum()).unwrap(),
            ModuleVector::vacuum().scale(&psi1)
        );
        let x = mono(&[-1, -2]);
        assert_eq!(
            m.act(Generator::Central, &x).unwrap(),
            x.scale(&Gq::from_int(2))
        );
        let got = m.act_index(1, &mono(&[-1])).unwrap();
        let want = &mono(&[-1]).scale(&(&psi1 - &Gq::one())) - &ModuleVector::vacuum().scale(&psi1);
        assert_eq!(got, want);
        assert!(matches!(m.act_index(0, &x), Err(Error::ZeroKIndex)));
    }

    #[test]
    fn d_operator_matches_limit() {
        let w = weight((1, 2), (-1, 3), Gq::from_int(1), Gq::zero());
        let mut m = VermaModule::k(w.clone());
        assert_eq!(
            m.d_apply(&ModuleVector::vacuum()).unwrap(),
            ModuleVector::vacuum().scale(&w.z())
        );
        for x in [mono(&[-1]), mono(&[-1, -2]), mono(&[-2, -2])] {
            let d = m.d_apply(&x).unwrap();
            let big = x.degree() as i64 + 2;
            for k in big..big + 3 {
                assert_eq!(m.act_index(k, &x).unwrap(), d, "K_{k} on {x:?}");
            }
        }
        let wl = w.with_lambda(Gq::one());
        assert!(matches!(
            VermaModule::k(wl).d_apply(&ModuleVector::vacuum()),
            Err(Error::NonzeroLambda(_))
        ));
    }

    #[test]
    fn gamma_examples() {
        let w = weight((3, 2), (1, 4), Gq::from_int(1), Gq::zero());
        let mut m = VermaModule::k(w.clone());
        let v = ModuleVector::vacuum();
        assert_eq!(m.gamma(&v, &v).unwrap(), Gq::one());
        let x = mono(&[-1]);
        let (h, hp) = (Gq::real(w.h.clone()), Gq::real(w.h_prime.clone()));
        let want = &(&h * &h + &hp * &hp) - &(Gq::from_int(2) * h);
        assert_eq!(m.gamma(&x, &x).unwrap(), want);
        let bad = weight((0, 1), (0, 1), Gq::i(), Gq::zero());
        assert!(gram_k_form(&bad, 1).is_err());
    }

    #[test]
    fn shapovalov_small() {
        let h = Gq::from_ratio(1, 4);
        let c = Gq::one();
        assert_eq!(
            shapovalov_matrix(&h, &c, 1).unwrap()[(0, 0)],
            Gq::from_ratio(1, 2)
        );
        assert!(kac_determinant(&h, &c, 2).unwrap().is_zero());
        assert!(!kac_determinant(&Gq::one(), &c, 2).unwrap().is_zero());
        assert!(singular_vector_search(&h, &c, 2).unwrap().is_some());
        assert!(singular_vector_search(&Gq::one(), &c, 2).unwrap().is_none());
        assert_eq!(
            singular_vector_search(&Gq::zero(), &c, 1).unwrap(),
            Some(mono(&[-1]))
        );
    }

    #[test]
    fn phi_examples() {
        let h = Gq::from_ratio(3, 7);
        let c = Gq::from_ratio(2, 5);
        assert_eq!(ff_phi(FFParams::new(1, 1).unwrap(), &h, &c), &h * &h);
        assert!(ff_phi(
            FFParams::new(1, 2).unwrap(),
            &Gq::from_ratio(1, 4),
            &Gq::one()
        )
        .is_zero());
        assert_eq!(
            ff_phi(FFParams::new(2, 3).unwrap(), &h, &c),
            ff_phi(FFParams::new(3, 2).unwrap(), &h, &c)
        );
        let w = weight((0, 1), (0, 1), Gq::from_int(5), Gq::zero());
        assert_eq!(
            reducibility_test(&w, 4),
            Reducibility::Reducible(FFParams { alpha: 1, beta: 1 })
        );
        let w = weight((-1, 4), (0, 1), Gq::one(), Gq::zero());
        assert_eq!(
            reducibility_test(&w, 4),
            Reducibility::Reducible(FFParams { alpha: 1, beta: 2 })
        );
    }

    #[test]
    fn lambda_shift() {
        let w = weight((1, 3), (1, 2), Gq::from_int(3), Gq::from_ratio(-2, 3));
        assert!(lambda_shift_intertwines(&w, 2, 2).unwrap());
    }
}
