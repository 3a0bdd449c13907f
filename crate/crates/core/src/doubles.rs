//! Finite-dimensional quadratic Lie algebras `g ⊕ g`, `g[ε]` and `L_α ⊕ g`,
//! their reference subalgebras, and the Lagrangian / transversality predicates.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::ChevalleyAlgebra;
use crate::error::{LieError, Result};
use crate::grading::alpha_grading;
use crate::linalg::{self, bilinear, q, SparseVec, Subspace, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DoubleKind {
    /// `g ⊕ g` with `K(x1,y1) - K(x2,y2)`.
    GxG,
    /// `g[ε]`, `ε² = 0`, pairing the 1-layer with the ε-layer.
    GEps,
    /// `L_α ⊕ g` with the restriction of the `g ⊕ g` form.
    LAlphaxG,
}

impl fmt::Display for DoubleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DoubleKind::GxG => "GxG",
            DoubleKind::GEps => "GEps",
            DoubleKind::LAlphaxG => "LAlphaxG",
        })
    }
}

impl FromStr for DoubleKind {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GxG" => Ok(DoubleKind::GxG),
            "GEps" => Ok(DoubleKind::GEps),
            "LAlphaxG" => Ok(DoubleKind::LAlphaxG),
            _ => Err(LieError::Parse(format!("unknown double kind {s:?}"))),
        }
    }
}

/// Element of a double, as coordinates over its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleElem {
    dim: usize,
    coeffs: SparseVec,
}

impl DoubleElem {
    pub fn new(dim: usize, coeffs: SparseVec) -> Result<Self> {
        match coeffs.max_index() {
            Some(m) if m >= dim => Err(LieError::DimensionMismatch { expected: dim, found: m + 1 }),
            _ => Ok(Self { dim, coeffs }),
        }
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }
}

/// Coordinates: first summand (or 1-layer) occupies `0..first_len`, the
/// second summand (or ε-layer) the remaining `g.dim()` slots. For `LAlphaxG`
/// the first block lists `L_α` basis indices in ascending order.
#[derive(Clone, Debug)]
pub struct QuadDouble<'a> {
    kind: DoubleKind,
    alg: &'a ChevalleyAlgebra,
    alpha: Option<usize>,
    first: Vec<usize>,
    first_pos: Vec<Option<usize>>,
    form_rows: Vec<SparseVec>,
}

pub fn build_double(kind: DoubleKind, alg: &ChevalleyAlgebra, alpha: Option<usize>) -> Result<QuadDouble<'_>> {
    let n = alg.dim();
    let first: Vec<usize> = match kind {
        DoubleKind::LAlphaxG => {
            let a = alpha.ok_or(LieError::MissingAlpha)?;
            alpha_grading(alg, a)?.l_alpha_indices()
        }
        _ => {
            if let Some(a) = alpha {
                alg.root_system().check_simple(a)?;
            }
            (0..n).collect()
        }
    };
    let mut first_pos = vec![None; n];
    for (p, &i) in first.iter().enumerate() {
        first_pos[i] = Some(p);
    }
    let m = first.len();
    let kill = alg.killing_matrix();
    let krow = |i: usize, cols: &[usize], offset: usize, sign: i64| -> Vec<(usize, Q)> {
        cols.iter()
            .enumerate()
            .filter(|(_, &j)| kill[i][j] != 0)
            .map(|(p, &j)| (offset + p, q(sign * kill[i][j])))
            .collect()
    };
    let all: Vec<usize> = (0..n).collect();
    let form_rows: Vec<SparseVec> = match kind {
        DoubleKind::GxG | DoubleKind::LAlphaxG => first
            .iter()
            .map(|&i| SparseVec::from_terms(krow(i, &first, 0, 1)))
            .chain((0..n).map(|i| SparseVec::from_terms(krow(i, &all, m, -1))))
            .collect(),
        DoubleKind::GEps => (0..n)
            .map(|i| SparseVec::from_terms(krow(i, &all, n, 1)))
            .chain((0..n).map(|i| SparseVec::from_terms(krow(i, &all, 0, 1))))
            .collect(),
    };
    let d = QuadDouble { kind, alg, alpha, first, first_pos, form_rows };
    if linalg::rank(d.dim(), &d.form_rows) != d.dim() {
        return Err(LieError::DegenerateForm);
    }
    Ok(d)
}

impl<'a> QuadDouble<'a> {
    pub fn kind(&self) -> DoubleKind {
        self.kind
    }

    pub fn algebra(&self) -> &'a ChevalleyAlgebra {
        self.alg
    }

    pub fn alpha(&self) -> Option<usize> {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.first.len() + self.alg.dim()
    }

    /// Length of the first summand (or the 1-layer).
    pub fn first_len(&self) -> usize {
        self.first.len()
    }

    pub fn form_rows(&self) -> &[SparseVec] {
        &self.form_rows
    }

    /// Position in the first block of the g-basis element `i`, if present.
    pub fn first_position(&self, i: usize) -> Option<usize> {
        self.first_pos[i]
    }

    /// Assemble coordinates from g-vectors for the two blocks.
    pub fn join(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        let m = self.first.len();
        let mut terms = Vec::with_capacity(x.nnz() + y.nnz());
        for (i, c) in x.iter() {
            let p = self.first_pos.get(i).copied().flatten().ok_or_else(|| {
                LieError::ShapeMismatch(format!("{} is not in the first summand", self.alg.label(i)))
            })?;
            terms.push((p, c.clone()));
        }
        terms.extend(y.iter().map(|(i, c)| (m + i, c.clone())));
        Ok(SparseVec::from_terms(terms))
    }

    /// Split coordinates into g-vectors for the two blocks.
    pub fn split(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let m = self.first.len();
        let a = SparseVec::from_terms(v.iter().filter(|(i, _)| *i < m).map(|(i, c)| (self.first[i], c.clone())));
        let b = SparseVec::from_terms(v.iter().filter(|(i, _)| *i >= m).map(|(i, c)| (i - m, c.clone())));
        (a, b)
    }

    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let (x1, x2) = self.split(x);
        let (y1, y2) = self.split(y);
        let g = self.alg;
        let (a, b) = match self.kind {
            DoubleKind::GxG | DoubleKind::LAlphaxG => (g.bracket_vec(&x1, &y1), g.bracket_vec(&x2, &y2)),
            DoubleKind::GEps => (g.bracket_vec(&x1, &y1), g.bracket_vec(&x1, &y2).add(&g.bracket_vec(&x2, &y1))),
        };
        self.join(&a, &b).expect("L_α is closed under the bracket")
    }

    pub fn bracket(&self, x: &DoubleElem, y: &DoubleElem) -> Result<DoubleElem> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(DoubleElem { dim: self.dim(), coeffs: self.bracket_vec(&x.coeffs, &y.coeffs) })
    }

    pub fn form_vec(&self, x: &SparseVec, y: &SparseVec) -> Q {
        bilinear(&self.form_rows, x, y)
    }

    pub fn form(&self, x: &DoubleElem, y: &DoubleElem) -> Result<Q> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(self.form_vec(&x.coeffs, &y.coeffs))
    }

    fn check_elem(&self, x: &DoubleElem) -> Result<()> {
        if x.dim != self.dim() {
            return Err(LieError::DimensionMismatch { expected: self.dim(), found: x.dim });
        }
        Ok(())
    }

    fn check_sub(&self, sub: &Subspace) -> Result<()> {
        if sub.ambient() != self.dim() {
            return Err(LieError::DimensionMismatch { expected: self.dim(), found: sub.ambient() });
        }
        Ok(())
    }

    /// First basis triple violating `B([x,y],z) = B(x,[y,z])`, if any.
    pub fn invariance_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let basis: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
        let br: Vec<Vec<SparseVec>> =
            (0..n).map(|i| (0..n).map(|j| self.bracket_vec(&basis[i], &basis[j])).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.form_vec(&br[i][j], &basis[k]) != self.form_vec(&basis[i], &br[j][k]) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_form_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.form_rows[i].get(j) == self.form_rows[j].get(i)))
    }

    /// A pair of basis rows whose bracket leaves `sub`.
    pub fn subalgebra_witness(&self, sub: &Subspace) -> Result<Option<(usize, usize)>> {
        self.check_sub(sub)?;
        let rows = sub.rows();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if !sub.contains(&self.bracket_vec(&rows[i], &rows[j])) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// A pair of basis rows (possibly equal) with nonzero pairing.
    pub fn isotropy_witness(&self, sub: &Subspace) -> Result<Option<(usize, usize)>> {
        self.check_sub(sub)?;
        let rows = sub.rows();
        for i in 0..rows.len() {
            for j in i..rows.len() {
                if !self.form_vec(&rows[i], &rows[j]).is_zero() {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_subalgebra(&self, sub: &Subspace) -> Result<bool> {
        Ok(self.subalgebra_witness(sub)?.is_none())
    }

    pub fn is_isotropic(&self, sub: &Subspace) -> Result<bool> {
        Ok(self.isotropy_witness(sub)?.is_none())
    }

    /// Isotropic and of half the ambient dimension.
    pub fn is_lagrangian(&self, sub: &Subspace) -> Result<bool> {
        self.check_sub(sub)?;
        if self.dim() % 2 == 1 {
            return Err(LieError::OddAmbient(self.dim()));
        }
        Ok(2 * sub.dim() == self.dim() && self.is_isotropic(sub)?)
    }

    pub fn is_transversal(&self, a: &Subspace, b: &Subspace) -> Result<bool> {
        self.check_sub(a)?;
        self.check_sub(b)?;
        Ok(a.dim() + b.dim() == self.dim() && a.intersection(b)?.dim() == 0)
    }

    /// Orthogonal complement for the form of the double.
    pub fn perp(&self, sub: &Subspace) -> Result<Subspace> {
        self.check_sub(sub)?;
        Ok(linalg::form_perp(&self.form_rows, sub))
    }
}

/// `Δ_α ⊆ g ⊕ g`: pairs in `P_α⁻ × P_α⁻` with equal reductive parts.
pub fn delta_alpha(alg: &ChevalleyAlgebra, alpha: usize) -> Result<Subspace> {
    let gr = alpha_grading(alg, alpha)?;
    let n = alg.dim();
    let mut rows = Vec::new();
    for &m in gr.piece(0) {
        rows.push(SparseVec::from_terms([(m, q(1)), (n + m, q(1))]));
    }
    for i in gr.nilradical_indices() {
        rows.push(SparseVec::unit(i));
        rows.push(SparseVec::unit(n + i));
    }
    Ok(Subspace::span(2 * n, &rows))
}

/// `Δ_{α,α_max} ⊆ L_α ⊕ g`: pairs in `P⁺_{α_max} × P_α⁻` with equal reductive parts.
pub fn delta_alpha_max(alg: &ChevalleyAlgebra, alpha: usize) -> Result<Subspace> {
    let d = build_double(DoubleKind::LAlphaxG, alg, Some(alpha))?;
    let gr = alpha_grading(alg, alpha)?;
    let mut rows = Vec::new();
    for &m in gr.piece(0) {
        rows.push(d.join(&SparseVec::unit(m), &SparseVec::unit(m))?);
    }
    for &i in gr.piece(-gr.ki()) {
        rows.push(d.join(&SparseVec::unit(i), &SparseVec::new())?);
    }
    for i in gr.nilradical_indices() {
        rows.push(d.join(&SparseVec::new(), &SparseVec::unit(i))?);
    }
    Ok(Subspace::span(d.dim(), &rows))
}

/// `P_α⁻ + ε(P_α⁻)^⊥ ⊆ g[ε]`.
pub fn p_eps(alg: &ChevalleyAlgebra, alpha: usize) -> Result<Subspace> {
    let gr = alpha_grading(alg, alpha)?;
    let n = alg.dim();
    let p = Subspace::coordinate(n, gr.parabolic_minus_indices());
    let perp = alg.k_perp(&p)?;
    let rows: Vec<SparseVec> = p.rows().iter().cloned().chain(perp.rows().iter().map(|r| r.shifted(n))).collect();
    Ok(Subspace::span(2 * n, &rows))
}

/// Subspace of `ambient` consisting of pairs `(x, y)` from the two factors.
pub fn pairs_span(d: &QuadDouble<'_>, pairs: &[(SparseVec, SparseVec)]) -> Result<Subspace> {
    let rows = pairs.iter().map(|(x, y)| d.join(x, y)).collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(d.dim(), &rows))
}
