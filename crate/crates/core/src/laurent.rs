//! Truncated Laurent orders inside `g((u))`, the residue forms of the three
//! double cases, and orthogonal complements computed from Gram matrices.
//!
//! A monomial `u^d ⊗ x` with `x` a Chevalley basis vector of degree `r` in the
//! α-grading belongs to the order iff `d <= max_degree(r, k)`; the window
//! keeps `d >= -N`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::ChevalleyAlgebra;
use crate::error::{LieError, Result};
use crate::grading::{alpha_grading, AlphaGrading};
use crate::linalg::{self, bilinear, q, SparseVec, Subspace, Q};

/// Normal forms of the series `a(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeriesCase {
    /// Case I, `a(u) = 1/((1 - c1 u)(1 - c2 u))`.
    IGeneric { c1: Q, c2: Q },
    /// Case I, `a(u) = 1/(1 - u)²`.
    IDoublePole,
    /// Case I, `a(u) = 1/(1 - u)`.
    ISinglePole,
    /// Case I, `a(u) = 1`.
    IRational,
    /// Case II, `a(u) = 1/(1 - u)`.
    IISinglePole,
    /// Case II, `a(u) = 1`.
    IIRational,
    /// Case III, `a(u) = 1`.
    III,
}

/// Which double the case lives in: `g((u))`, `g((u)) ⊕ g` or `g((u)) ⊕ g[ε]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseFamily {
    I,
    II,
    III,
}

impl SeriesCase {
    pub fn generic(c1: Q, c2: Q) -> Result<Self> {
        if c1.is_zero() || c2.is_zero() {
            return Err(LieError::InvalidParams("c1 and c2 must be nonzero".into()));
        }
        if c1 == c2 {
            return Err(LieError::InvalidParams("c1 and c2 must differ".into()));
        }
        Ok(SeriesCase::IGeneric { c1, c2 })
    }

    pub fn family(&self) -> CaseFamily {
        match self {
            SeriesCase::IGeneric { .. } | SeriesCase::IDoublePole | SeriesCase::ISinglePole | SeriesCase::IRational => {
                CaseFamily::I
            }
            SeriesCase::IISinglePole | SeriesCase::IIRational => CaseFamily::II,
            SeriesCase::III => CaseFamily::III,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SeriesCase::IGeneric { .. } => "I_generic",
            SeriesCase::IDoublePole => "I_double_pole",
            SeriesCase::ISinglePole => "I_single_pole",
            SeriesCase::IRational => "I_rational",
            SeriesCase::IISinglePole => "II_single_pole",
            SeriesCase::IIRational => "II_rational",
            SeriesCase::III => "III",
        }
    }

    /// `Q(u^{d1} x, u^{d2} y) = K(x, y) · a_{shift - d1 - d2}`.
    fn residue_shift(&self) -> i64 {
        match self.family() {
            CaseFamily::I => -1,
            CaseFamily::II => 0,
            CaseFamily::III => 1,
        }
    }

    /// Number of extra coordinates (`g` or `g[ε]`) on top of the Laurent part.
    pub fn extras_len(&self, gdim: usize) -> usize {
        match self.family() {
            CaseFamily::I => 0,
            CaseFamily::II => gdim,
            CaseFamily::III => 2 * gdim,
        }
    }
}

impl fmt::Display for SeriesCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesCase::IGeneric { c1, c2 } => write!(f, "I_generic({c1},{c2})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Taylor coefficient of `u^n` in `a(u)`; zero for negative `n`.
pub fn series_coeff(case: &SeriesCase, n: i64) -> Q {
    if n < 0 {
        return Q::zero();
    }
    match case {
        SeriesCase::IGeneric { c1, c2 } => {
            let mut sum = Q::zero();
            let mut p1 = Q::one();
            for i in 0..=n {
                let mut term = p1.clone();
                for _ in 0..n - i {
                    term *= c2;
                }
                sum += term;
                p1 *= c1;
            }
            sum
        }
        SeriesCase::IDoublePole => q(n + 1),
        SeriesCase::ISinglePole | SeriesCase::IISinglePole => Q::one(),
        SeriesCase::IRational | SeriesCase::IIRational | SeriesCase::III => {
            if n == 0 {
                Q::one()
            } else {
                Q::zero()
            }
        }
    }
}

/// First `len` Taylor coefficients, computed by the recurrence of `1/a(u)`.
fn series_table(case: &SeriesCase, len: usize) -> Vec<Q> {
    match case {
        SeriesCase::IGeneric { c1, c2 } => {
            // a_n = (c1 + c2) a_{n-1} - c1 c2 a_{n-2}
            let (s, p) = (c1 + c2, c1 * c2);
            let mut v: Vec<Q> = Vec::with_capacity(len);
            for n in 0..len {
                let x = match n {
                    0 => Q::one(),
                    1 => s.clone(),
                    _ => &s * &v[n - 1] - &p * &v[n - 2],
                };
                v.push(x);
            }
            v
        }
        _ => (0..len as i64).map(|n| series_coeff(case, n)).collect(),
    }
}

/// Finite Laurent polynomial in `u` with coefficients in g.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentElem {
    terms: BTreeMap<i32, SparseVec>,
}

impl LaurentElem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(d: i32, x: SparseVec) -> Self {
        let mut e = Self::new();
        e.add_term(d, &x);
        e
    }

    pub fn add_term(&mut self, d: i32, x: &SparseVec) {
        let t = self.terms.entry(d).or_default();
        *t = t.add(x);
        if t.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn add(&self, other: &LaurentElem) -> LaurentElem {
        let mut out = self.clone();
        for (&d, x) in &other.terms {
            out.add_term(d, x);
        }
        out
    }

    pub fn scaled(&self, c: &Q) -> LaurentElem {
        let mut out = LaurentElem::new();
        for (&d, x) in &self.terms {
            out.add_term(d, &x.scaled(c));
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<i32, SparseVec> {
        &self.terms
    }

    pub fn coeff(&self, d: i32) -> SparseVec {
        self.terms.get(&d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }
}

/// Cauchy-product bracket; fails if a product term falls below `u^{-window}`.
pub fn laurent_bracket(alg: &ChevalleyAlgebra, a: &LaurentElem, b: &LaurentElem, window: usize) -> Result<LaurentElem> {
    let mut out = LaurentElem::new();
    for (&d1, x) in &a.terms {
        for (&d2, y) in &b.terms {
            let z = alg.bracket_vec(x, y);
            if z.is_zero() {
                continue;
            }
            let d = d1 + d2;
            if d < -(window as i32) {
                return Err(LieError::WindowOverflow { degree: d, window });
            }
            out.add_term(d, &z);
        }
    }
    Ok(out)
}

/// Element of `g((u))`, `g((u)) ⊕ g` or `g((u)) ⊕ g[ε]`: `f + x2 + ε x3`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseElem {
    pub laurent: LaurentElem,
    pub g_part: Option<SparseVec>,
    pub eps_part: Option<SparseVec>,
}

impl CaseElem {
    pub fn zero_for(case: &SeriesCase) -> Self {
        let (g, e) = match case.family() {
            CaseFamily::I => (None, None),
            CaseFamily::II => (Some(SparseVec::new()), None),
            CaseFamily::III => (Some(SparseVec::new()), Some(SparseVec::new())),
        };
        CaseElem { laurent: LaurentElem::new(), g_part: g, eps_part: e }
    }

    fn check_shape(&self, case: &SeriesCase) -> Result<()> {
        let ok = match case.family() {
            CaseFamily::I => self.g_part.is_none() && self.eps_part.is_none(),
            CaseFamily::II => self.g_part.is_some() && self.eps_part.is_none(),
            CaseFamily::III => self.g_part.is_some() && self.eps_part.is_some(),
        };
        if ok {
            Ok(())
        } else {
            Err(LieError::ShapeMismatch(format!("element does not have the shape of case {}", case.name())))
        }
    }
}

pub fn residue_form(alg: &ChevalleyAlgebra, case: &SeriesCase, a: &CaseElem, b: &CaseElem) -> Result<Q> {
    a.check_shape(case)?;
    b.check_shape(case)?;
    let s = case.residue_shift();
    let mut total = Q::zero();
    for (&d1, x) in a.laurent.terms() {
        for (&d2, y) in b.laurent.terms() {
            let n = s - d1 as i64 - d2 as i64;
            if n >= 0 {
                let kxy = alg.killing_vec(x, y);
                if !kxy.is_zero() {
                    total += kxy * series_coeff(case, n);
                }
            }
        }
    }
    match case.family() {
        CaseFamily::I => {}
        CaseFamily::II => total -= alg.killing_vec(a.g_part.as_ref().unwrap(), b.g_part.as_ref().unwrap()),
        CaseFamily::III => {
            let (x2, x3) = (a.g_part.as_ref().unwrap(), a.eps_part.as_ref().unwrap());
            let (y2, y3) = (b.g_part.as_ref().unwrap(), b.eps_part.as_ref().unwrap());
            total -= alg.killing_vec(x3, y2) + alg.killing_vec(x2, y3);
        }
    }
    Ok(total)
}

/// Bracket of `f + x2 + ε x3`: componentwise, with `g[ε]` truncated multiplication.
pub fn case_bracket(alg: &ChevalleyAlgebra, case: &SeriesCase, a: &CaseElem, b: &CaseElem, window: usize) -> Result<CaseElem> {
    a.check_shape(case)?;
    b.check_shape(case)?;
    let laurent = laurent_bracket(alg, &a.laurent, &b.laurent, window)?;
    let g_part = match (&a.g_part, &b.g_part) {
        (Some(x), Some(y)) => Some(alg.bracket_vec(x, y)),
        _ => None,
    };
    let eps_part = match (&a.g_part, &a.eps_part, &b.g_part, &b.eps_part) {
        (Some(x2), Some(x3), Some(y2), Some(y3)) => Some(alg.bracket_vec(x2, y3).add(&alg.bracket_vec(x3, y2))),
        _ => None,
    };
    Ok(CaseElem { laurent, g_part, eps_part })
}

/// Highest u-degree allowed in the order for a vector of α-degree `r`.
pub fn max_degree(r: i32, k: i32) -> i32 {
    if r >= 1 {
        -1
    } else if r == -k {
        1
    } else {
        0
    }
}

/// `𝕆_α ∩ g[u, u⁻¹]` cut off below `u^{-N}`.
#[derive(Clone, Debug)]
pub struct TruncatedOrder {
    grading: AlphaGrading,
    window: usize,
    basis: Vec<(usize, i32)>,
    index: HashMap<(usize, i32), usize>,
}

pub fn order_intersection(alg: &ChevalleyAlgebra, alpha: usize, window: usize) -> Result<TruncatedOrder> {
    if window < 3 {
        return Err(LieError::WindowTooSmall { min: 3, found: window });
    }
    let grading = alpha_grading(alg, alpha)?;
    let k = grading.ki();
    let mut basis = Vec::new();
    for x in 0..alg.dim() {
        let top = max_degree(grading.degree(x), k);
        for d in (-(window as i32)..=top).rev() {
            basis.push((x, d));
        }
    }
    let index = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    Ok(TruncatedOrder { grading, window, basis, index })
}

impl TruncatedOrder {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn grading(&self) -> &AlphaGrading {
        &self.grading
    }

    pub fn alpha(&self) -> usize {
        self.grading.alpha()
    }

    pub fn k(&self) -> u32 {
        self.grading.k()
    }

    /// `(g-index, u-degree)` of monomial `i`.
    pub fn monomial(&self, i: usize) -> (usize, i32) {
        self.basis[i]
    }

    pub fn monomials(&self) -> &[(usize, i32)] {
        &self.basis
    }

    pub fn index_of(&self, x: usize, d: i32) -> Option<usize> {
        self.index.get(&(x, d)).copied()
    }

    /// Monomials of u-degree exactly `d`.
    pub fn layer(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].1 == d).collect()
    }
}

/// The truncated order together with the `g` or `g[ε]` summand of the double.
/// Coordinates: order monomials first, then `x2` (cases II, III), then `x3` (case III).
#[derive(Clone, Debug)]
pub struct SourceSpace<'a> {
    alg: &'a ChevalleyAlgebra,
    case: SeriesCase,
    order: TruncatedOrder,
    coeffs: Vec<Q>,
}

impl<'a> SourceSpace<'a> {
    pub fn new(alg: &'a ChevalleyAlgebra, case: SeriesCase, alpha: usize, window: usize) -> Result<Self> {
        let order = order_intersection(alg, alpha, window)?;
        let coeffs = series_table(&case, 2 * window + 4);
        Ok(Self { alg, case, order, coeffs })
    }

    pub fn algebra(&self) -> &'a ChevalleyAlgebra {
        self.alg
    }

    pub fn case(&self) -> &SeriesCase {
        &self.case
    }

    pub fn order(&self) -> &TruncatedOrder {
        &self.order
    }

    pub fn window(&self) -> usize {
        self.order.window
    }

    pub fn laurent_dim(&self) -> usize {
        self.order.dim()
    }

    pub fn dim(&self) -> usize {
        self.order.dim() + self.case.extras_len(self.alg.dim())
    }

    /// Coordinate of the extra `g` summand (`x2`) for basis vector `x`.
    pub fn g_coord(&self, x: usize) -> usize {
        self.order.dim() + x
    }

    /// Coordinate of the ε-layer (`x3`) for basis vector `x`.
    pub fn eps_coord(&self, x: usize) -> usize {
        self.order.dim() + self.alg.dim() + x
    }

    fn a(&self, n: i64) -> Q {
        if n < 0 {
            Q::zero()
        } else if (n as usize) < self.coeffs.len() {
            self.coeffs[n as usize].clone()
        } else {
            series_coeff(&self.case, n)
        }
    }

    /// u-degree of coordinate `i`, or `None` for the extra summand.
    pub fn degree_of(&self, i: usize) -> Option<i32> {
        (i < self.order.dim()).then(|| self.order.basis[i].1)
    }

    pub fn to_case_elem(&self, v: &SparseVec) -> CaseElem {
        let mut e = CaseElem::zero_for(&self.case);
        let (m, n) = (self.order.dim(), self.alg.dim());
        let mut g = Vec::new();
        let mut eps = Vec::new();
        for (i, c) in v.iter() {
            if i < m {
                let (x, d) = self.order.basis[i];
                e.laurent.add_term(d, &SparseVec::from_terms([(x, c.clone())]));
            } else if i < m + n {
                g.push((i - m, c.clone()));
            } else {
                eps.push((i - m - n, c.clone()));
            }
        }
        if let Some(gp) = e.g_part.as_mut() {
            *gp = SparseVec::from_terms(g);
        }
        if let Some(ep) = e.eps_part.as_mut() {
            *ep = SparseVec::from_terms(eps);
        }
        e
    }

    pub fn from_case_elem(&self, e: &CaseElem) -> Result<SparseVec> {
        e.check_shape(&self.case)?;
        let mut terms = Vec::new();
        for (&d, x) in e.laurent.terms() {
            if d < -(self.window() as i32) {
                return Err(LieError::WindowOverflow { degree: d, window: self.window() });
            }
            for (i, c) in x.iter() {
                let idx = self.order.index_of(i, d).ok_or(LieError::NotInOrder)?;
                terms.push((idx, c.clone()));
            }
        }
        if let Some(g) = &e.g_part {
            terms.extend(g.iter().map(|(i, c)| (self.g_coord(i), c.clone())));
        }
        if let Some(x3) = &e.eps_part {
            terms.extend(x3.iter().map(|(i, c)| (self.eps_coord(i), c.clone())));
        }
        Ok(SparseVec::from_terms(terms))
    }

    /// Gram matrix of the residue form on the coordinate basis.
    pub fn gram_rows(&self) -> Vec<SparseVec> {
        let alg = self.alg;
        let n = alg.dim();
        let kill = alg.killing_matrix();
        let knz: Vec<Vec<(usize, i64)>> =
            (0..n).map(|i| (0..n).filter(|&j| kill[i][j] != 0).map(|j| (j, kill[i][j])).collect()).collect();
        let s = self.case.residue_shift();
        let window = self.window() as i32;
        let k = self.order.k() as i32;
        let mut rows = Vec::with_capacity(self.dim());
        for &(x, d1) in &self.order.basis {
            let mut terms = Vec::new();
            for &(y, kxy) in &knz[x] {
                let top = max_degree(self.order.grading.degree(y), k);
                for d2 in -window..=top {
                    let a = self.a(s - d1 as i64 - d2 as i64);
                    if !a.is_zero() {
                        terms.push((self.order.index_of(y, d2).unwrap(), a * q(kxy)));
                    }
                }
            }
            rows.push(SparseVec::from_terms(terms));
        }
        let neg_k = |x: usize, offset: usize| SparseVec::from_terms(knz[x].iter().map(|&(y, c)| (offset + y, q(-c))));
        match self.case.family() {
            CaseFamily::I => {}
            CaseFamily::II => rows.extend((0..n).map(|x| neg_k(x, self.g_coord(0)))),
            CaseFamily::III => {
                rows.extend((0..n).map(|x| neg_k(x, self.eps_coord(0))));
                rows.extend((0..n).map(|x| neg_k(x, self.g_coord(0))));
            }
        }
        rows
    }

    pub fn form(&self, gram: &[SparseVec], x: &SparseVec, y: &SparseVec) -> Q {
        bilinear(gram, x, y)
    }

    /// Bracket of two basis coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Result<SparseVec> {
        let (m, n) = (self.order.dim(), self.alg.dim());
        let lift = |v: &crate::algebra::IntVec, f: &dyn Fn(usize) -> Option<usize>| -> Result<SparseVec> {
            v.iter()
                .map(|&(z, c)| f(z).map(|p| (p, q(c))).ok_or(LieError::NotInOrder))
                .collect::<Result<Vec<_>>>()
                .map(SparseVec::from_terms)
        };
        match (i < m, j < m) {
            (true, true) => {
                let ((x, d1), (y, d2)) = (self.order.basis[i], self.order.basis[j]);
                let v = self.alg.bracket_basis_int(x, y);
                if v.is_empty() {
                    return Ok(SparseVec::new());
                }
                let d = d1 + d2;
                if d < -(self.window() as i32) {
                    return Err(LieError::WindowOverflow { degree: d, window: self.window() });
                }
                lift(v, &|z| self.order.index_of(z, d))
            }
            (false, false) => {
                // layers: 0 for x2, 1 for x3; ε² = 0
                let (li, x) = ((i - m) / n, (i - m) % n);
                let (lj, y) = ((j - m) / n, (j - m) % n);
                let layer = li + lj;
                if layer > 1 {
                    return Ok(SparseVec::new());
                }
                lift(self.alg.bracket_basis_int(x, y), &|z| Some(m + layer * n + z))
            }
            _ => Ok(SparseVec::new()),
        }
    }

    /// Image of `g[u] ∩ 𝕆_α` under the embedding of the case:
    /// `f`, `(f, f(0))` or `(f, f(0) + ε f'(0))`.
    pub fn polynomial_part(&self) -> Subspace {
        let mut rows = Vec::new();
        for (i, &(x, d)) in self.order.basis.iter().enumerate() {
            if d < 0 {
                continue;
            }
            let mut v = vec![(i, Q::one())];
            match (self.case.family(), d) {
                (CaseFamily::II | CaseFamily::III, 0) => v.push((self.g_coord(x), Q::one())),
                (CaseFamily::III, 1) => v.push((self.eps_coord(x), Q::one())),
                _ => {}
            }
            rows.push(SparseVec::from_terms(v));
        }
        Subspace::span(self.dim(), &rows)
    }

    /// Coordinates of degree `>= floor` (extras always kept).
    pub fn keeps_degree(&self, i: usize, floor: i32) -> bool {
        self.degree_of(i).is_none_or(|d| d >= floor)
    }
}

/// Orthogonal complement of the truncated source inside itself.
#[derive(Clone, Debug)]
pub struct PerpInOrder {
    pub perp: Subspace,
    pub source_dim: usize,
    pub quotient_dim: usize,
}

fn raw_perp(src: &SourceSpace<'_>) -> Subspace {
    linalg::kernel(src.dim(), &src.gram_rows())
}

/// Radical of the residue form on the window, checked against the window `N + 2`.
pub fn perp_in_order(alg: &ChevalleyAlgebra, case: &SeriesCase, alpha: usize, window: usize) -> Result<PerpInOrder> {
    let src = SourceSpace::new(alg, case.clone(), alpha, window)?;
    let wide = SourceSpace::new(alg, case.clone(), alpha, window + 2)?;
    let perp = raw_perp(&src);
    let perp_wide = raw_perp(&wide);
    let q_n = src.dim() - perp.dim();
    let q_w = wide.dim() - perp_wide.dim();
    let floor = -(window as i32 - 2);
    let near = perp.restrict(|i| src.keeps_degree(i, floor));
    let m = src.laurent_dim();
    let near_wide = perp_wide.restrict(|i| wide.keeps_degree(i, floor)).reindexed(src.dim(), |i| {
        if i < wide.laurent_dim() {
            let (x, d) = wide.order().monomial(i);
            src.order().index_of(x, d)
        } else {
            Some(i - wide.laurent_dim() + m)
        }
    });
    if q_n != q_w || near != near_wide {
        return Err(LieError::UnstableWindow { n: window, m: window + 2 });
    }
    Ok(PerpInOrder { source_dim: src.dim(), quotient_dim: q_n, perp })
}
