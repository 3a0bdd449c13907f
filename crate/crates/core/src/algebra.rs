//! Chevalley bases, structure constants and Killing forms.
//!
//! Signs of the structure constants `N_{r,s}` are fixed by the extraspecial
//! pair rule: positive roots are totally ordered by (height, lexicographic),
//! every extraspecial pair gets `N = +(p+1)`, and everything else follows
//! from the standard identities between the `N_{r,s}`. The Jacobi identity is
//! then checked on every basis triple before the algebra is handed out.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{LieError, Result};
use crate::linalg::{self, bilinear, q, SparseVec, Subspace, Q};
use crate::root_system::{RootSystem, RootVec};

/// Integer sparse vector used for the structure-constant tables.
pub(crate) type IntVec = Vec<(usize, i64)>;

fn int_combine(terms: impl IntoIterator<Item = (i64, usize)>) -> IntVec {
    let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
    for (c, i) in terms {
        *acc.entry(i).or_default() += c;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Element of g as an exact coefficient vector over the Chevalley basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GElem {
    dim: usize,
    coeffs: SparseVec,
}

impl GElem {
    pub fn new(dim: usize, coeffs: SparseVec) -> Result<Self> {
        if coeffs.max_index().is_some_and(|m| m >= dim) {
            return Err(LieError::DimensionMismatch { expected: dim, found: coeffs.max_index().unwrap() + 1 });
        }
        Ok(Self { dim, coeffs })
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: SparseVec::new() }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        Self { dim, coeffs: SparseVec::unit(i) }
    }

    pub fn from_dense(xs: &[Q]) -> Self {
        Self { dim: xs.len(), coeffs: SparseVec::from_dense(xs) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn scaled(&self, c: &Q) -> Self {
        Self { dim: self.dim, coeffs: self.coeffs.scaled(c) }
    }

    pub fn add(&self, other: &GElem) -> Self {
        Self { dim: self.dim, coeffs: self.coeffs.add(&other.coeffs) }
    }
}

/// Basis element of the Chevalley basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `e_β` with `β = roots[i]`.
    Root(usize),
    /// `h_i`, the coroot of the i-th simple root.
    Cartan(usize),
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    dim: usize,
    table: Vec<Vec<IntVec>>,
    killing: Vec<Vec<i64>>,
    killing_rows: Vec<SparseVec>,
}

/// Structure constants `N_{r,s}` for pairs of positive roots, indexed by root index.
struct Constants<'a> {
    rs: &'a RootSystem,
    pos: HashMap<(usize, usize), i64>,
}

impl Constants<'_> {
    fn len2(&self, r: &RootVec) -> i64 {
        self.rs.inner(r, r)
    }

    /// `N_{x,y}` for arbitrary roots, reduced to the positive table.
    fn n(&self, x: &RootVec, y: &RootVec) -> i64 {
        let z = x.add(y);
        if z.is_zero() || !self.rs.is_root(&z) {
            return 0;
        }
        match (x.is_positive(), y.is_positive()) {
            (true, true) => {
                let (i, j) = (self.rs.root_index(x).unwrap(), self.rs.root_index(y).unwrap());
                *self.pos.get(&(i, j)).unwrap_or_else(|| panic!("N{x}{y} requested before it was fixed"))
            }
            (false, false) => -self.n(&x.neg(), &y.neg()),
            (false, true) => -self.n(y, x),
            (true, false) => {
                // x + y + (-z) = 0, so N_{x,y}/(z,z) = N_{y,-z}/(x,x) = N_{-z,x}/(y,y).
                let (num, den) = if z.is_positive() {
                    (self.len2(&z) * -self.n(&y.neg(), &z), self.len2(x))
                } else {
                    (self.len2(&z) * self.n(&z.neg(), x), self.len2(y))
                };
                assert_eq!(num % den, 0, "non-integral structure constant");
                num / den
            }
        }
    }

    fn build(rs: &RootSystem) -> Result<HashMap<(usize, usize), i64>> {
        let mut c = Constants { rs, pos: HashMap::new() };
        let pos = rs.positives();
        for (xi_idx, xi) in pos.iter().enumerate() {
            if xi.height() < 2 {
                continue;
            }
            // Special pairs (r, s) with r ≺ s and r + s = ξ, in the positive order.
            let mut special = Vec::new();
            for (ri, r) in pos[..xi_idx].iter().enumerate() {
                let s = xi.sub(r);
                if let Some(si) = rs.root_index(&s) {
                    if si < pos.len() && ri < si {
                        special.push((ri, si));
                    }
                }
            }
            let Some(&(ai, bi)) = special.first() else {
                return Err(LieError::ConstructionInconsistency(format!("no special pair for {xi}")));
            };
            let (alpha, beta) = (pos[ai].clone(), pos[bi].clone());
            let p = rs.string_down(&alpha, &beta) as i64;
            let n_ab = p + 1;
            c.pos.insert((ai, bi), n_ab);
            c.pos.insert((bi, ai), -n_ab);
            for &(ri, si) in &special[1..] {
                let (r, s) = (&pos[ri], &pos[si]);
                // N_{r,s} N_{-α,-β}/(ξ,ξ) + N_{s,-α} N_{r,-β}/(s-α,s-α) + N_{-α,r} N_{s,-β}/(r-α,r-α) = 0
                let (na, nb) = (alpha.neg(), beta.neg());
                let mut rhs = Ratio::<i64>::zero();
                let t2 = c.n(s, &na) * c.n(r, &nb);
                if t2 != 0 {
                    let d = s.sub(&alpha);
                    rhs -= Ratio::new(t2, c.len2(&d));
                }
                let t3 = c.n(&na, r) * c.n(s, &nb);
                if t3 != 0 {
                    let d = r.sub(&alpha);
                    rhs -= Ratio::new(t3, c.len2(&d));
                }
                let n_rs = rhs * Ratio::from_integer(c.len2(xi)) / Ratio::from_integer(-n_ab);
                if !n_rs.is_integer() {
                    return Err(LieError::ConstructionInconsistency(format!("N{r}{s} = {n_rs}")));
                }
                let n_rs = n_rs.to_integer();
                let expected = rs.string_down(r, s) as i64 + 1;
                if n_rs.abs() != expected {
                    return Err(LieError::ConstructionInconsistency(format!(
                        "|N{r}{s}| = {} but p+1 = {expected}",
                        n_rs.abs()
                    )));
                }
                c.pos.insert((ri, si), n_rs);
                c.pos.insert((si, ri), -n_rs);
            }
        }
        Ok(c.pos)
    }
}

pub fn build_chevalley_algebra(rs: RootSystem) -> Result<ChevalleyAlgebra> {
    let pos = Constants::build(&rs)?;
    let consts = Constants { rs: &rs, pos };
    let nr = rs.roots().len();
    let rank = rs.rank();
    let dim = nr + rank;
    let mut table = vec![vec![IntVec::new(); dim]; dim];
    for i in 0..nr {
        let x = &rs.roots()[i];
        for j in 0..nr {
            let y = &rs.roots()[j];
            let z = x.add(y);
            table[i][j] = if z.is_zero() {
                rs.coroot(x)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(k, c)| (nr + k, *c))
                    .collect()
            } else if let Some(k) = rs.root_index(&z) {
                vec![(k, consts.n(x, y))]
            } else {
                IntVec::new()
            };
        }
        for k in 0..rank {
            let a = rs.pairing(x, k) as i64;
            if a != 0 {
                table[nr + k][i] = vec![(i, a)];
                table[i][nr + k] = vec![(i, -a)];
            }
        }
    }
    drop(consts);
    let mut alg = ChevalleyAlgebra {
        rs,
        dim,
        table,
        killing: Vec::new(),
        killing_rows: Vec::new(),
    };
    alg.check_jacobi()?;
    alg.killing = alg.compute_killing();
    alg.killing_rows = alg
        .killing
        .iter()
        .map(|row| SparseVec::from_terms(row.iter().enumerate().map(|(j, &c)| (j, q(c)))))
        .collect();
    Ok(alg)
}

impl ChevalleyAlgebra {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.rs.roots().len()
    }

    pub fn kind(&self, i: usize) -> BasisKind {
        let nr = self.num_roots();
        if i < nr {
            BasisKind::Root(i)
        } else {
            BasisKind::Cartan(i - nr)
        }
    }

    /// Basis index of `e_β`.
    pub fn root_basis(&self, beta: &RootVec) -> Option<usize> {
        self.rs.root_index(beta)
    }

    /// Basis index of `h_i`.
    pub fn cartan_basis(&self, i: usize) -> usize {
        self.num_roots() + i
    }

    pub fn cartan_indices(&self) -> std::ops::Range<usize> {
        self.num_roots()..self.dim
    }

    pub fn label(&self, i: usize) -> String {
        match self.kind(i) {
            BasisKind::Root(r) => format!("e{}", self.rs.roots()[r]),
            BasisKind::Cartan(k) => format!("h{}", k + 1),
        }
    }

    /// Structure constants of `[b_i, b_j]`.
    pub(crate) fn bracket_basis_int(&self, i: usize, j: usize) -> &IntVec {
        &self.table[i][j]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        SparseVec::from_terms(self.table[i][j].iter().map(|&(k, c)| (k, q(c))))
    }

    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for &(k, c) in &self.table[i][j] {
                    terms.push((k, &ab * q(c)));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    pub fn bracket(&self, x: &GElem, y: &GElem) -> Result<GElem> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(GElem { dim: self.dim, coeffs: self.bracket_vec(&x.coeffs, &y.coeffs) })
    }

    pub fn killing_matrix(&self) -> &[Vec<i64>] {
        &self.killing
    }

    pub fn killing_rows(&self) -> &[SparseVec] {
        &self.killing_rows
    }

    pub fn killing_vec(&self, x: &SparseVec, y: &SparseVec) -> Q {
        bilinear(&self.killing_rows, x, y)
    }

    pub fn killing_pair(&self, x: &GElem, y: &GElem) -> Result<Q> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.killing_vec(&x.coeffs, &y.coeffs))
    }

    fn check_len(&self, x: &GElem) -> Result<()> {
        if x.dim != self.dim {
            return Err(LieError::DimensionMismatch { expected: self.dim, found: x.dim });
        }
        Ok(())
    }

    fn bracket_int(&self, x: &IntVec, y: &IntVec) -> IntVec {
        int_combine(x.iter().flat_map(|&(i, a)| {
            y.iter().flat_map(move |&(j, b)| self.table[i][j].iter().map(move |&(k, c)| (a * b * c, k)))
        }))
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        (0..n).into_par_iter().find_map_first(|i| {
            for j in i + 1..n {
                let bij = &self.table[i][j];
                for k in j + 1..n {
                    let t1 = self.bracket_int(bij, &vec![(k, 1)]);
                    let t2 = self.bracket_int(&self.table[j][k], &vec![(i, 1)]);
                    let t3 = self.bracket_int(&self.table[k][i], &vec![(j, 1)]);
                    let s = int_combine(
                        t1.iter().chain(&t2).chain(&t3).map(|&(idx, c)| (c, idx)),
                    );
                    if !s.is_empty() {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }

    fn check_jacobi(&self) -> Result<()> {
        match self.jacobi_violation() {
            None => Ok(()),
            Some((i, j, k)) => Err(LieError::ConstructionInconsistency(format!(
                "Jacobi fails on ({}, {}, {})",
                self.label(i),
                self.label(j),
                self.label(k)
            ))),
        }
    }

    fn compute_killing(&self) -> Vec<Vec<i64>> {
        let n = self.dim;
        // ad_i as a column map: column l holds [b_i, b_l].
        (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut tr = 0i64;
                        for l in 0..n {
                            for &(m, c) in &self.table[j][l] {
                                for &(o, d) in &self.table[i][m] {
                                    if o == l {
                                        tr += c * d;
                                    }
                                }
                            }
                        }
                        tr
                    })
                    .collect()
            })
            .collect()
    }

    /// First basis triple with `K([x,y],z) != K(x,[y,z])`, if any.
    pub fn killing_invariance_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let k = |v: &IntVec, w: usize| -> i64 { v.iter().map(|&(i, c)| c * self.killing[i][w]).sum() };
        (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                for l in 0..n {
                    let lhs = k(&self.table[i][j], l);
                    let rhs = k(&self.table[j][l], i);
                    if lhs != rhs {
                        return Some((i, j, l));
                    }
                }
            }
            None
        })
    }

    pub fn killing_is_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..i).all(|j| self.killing[i][j] == self.killing[j][i]))
    }

    pub fn killing_is_nondegenerate(&self) -> bool {
        linalg::rank(self.dim, &self.killing_rows) == self.dim
    }

    /// `{x : K(x, s) = 0 for all s ∈ sub}`.
    pub fn k_perp(&self, sub: &Subspace) -> Result<Subspace> {
        if sub.ambient() != self.dim {
            return Err(LieError::DimensionMismatch { expected: self.dim, found: sub.ambient() });
        }
        Ok(linalg::form_perp(&self.killing_rows, sub))
    }

    pub fn is_subalgebra(&self, sub: &Subspace) -> bool {
        let rows = sub.rows();
        rows.iter().enumerate().all(|(i, x)| rows[i + 1..].iter().all(|y| sub.contains(&self.bracket_vec(x, y))))
    }

    /// Debug description with structure constants as `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.dim;
        let basis: Vec<String> = (0..n).map(|i| self.label(i)).collect();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.table[i][j].is_empty() {
                    let terms: Vec<_> = self.table[i][j].iter().map(|&(k, c)| json!([k, c.to_string()])).collect();
                    brackets.push(json!([i, j, terms]));
                }
            }
        }
        let killing: Vec<Vec<String>> =
            self.killing.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        json!({
            "label": self.rs.label().to_string(),
            "dim": n,
            "basis": basis,
            "brackets": brackets,
            "killing": killing,
        })
    }
}

impl fmt::Display for ChevalleyAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.rs.label(), self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::build_root_system;

    pub(crate) fn alg(s: &str) -> ChevalleyAlgebra {
        build_chevalley_algebra(build_root_system(s.parse().unwrap()).unwrap()).unwrap()
    }

    /// Killing form straight from the definition, with dense rational ad matrices.
    fn killing_by_trace(a: &ChevalleyAlgebra, x: usize, y: usize) -> Q {
        let n = a.dim();
        let ad = |i: usize| -> Vec<Vec<Q>> {
            let mut m = vec![vec![Q::zero(); n]; n];
            for l in 0..n {
                for (k, c) in a.bracket_basis(i, l).iter() {
                    m[k][l] = c.clone();
                }
            }
            m
        };
        let (ax, ay) = (ad(x), ad(y));
        let mut tr = Q::zero();
        for i in 0..n {
            for k in 0..n {
                tr += &ax[i][k] * &ay[k][i];
            }
        }
        tr
    }

    #[test]
    fn sl2_constants() {
        let a = alg("A1");
        assert_eq!(a.dim(), 3);
        let (e, f, h) = (0, 1, 2);
        assert_eq!(a.bracket_basis(e, f), SparseVec::unit(h));
        assert_eq!(a.bracket_basis(h, e), SparseVec::unit(e).scaled(&q(2)));
        assert_eq!(a.killing_matrix()[h][h], 8);
        assert_eq!(a.killing_matrix()[e][f], 4);
        assert_eq!(a.killing_matrix()[e][h], 0);
        assert_eq!(killing_by_trace(&a, h, h), q(8));
        assert_eq!(killing_by_trace(&a, e, f), q(4));
    }

    #[test]
    fn killing_matches_trace_oracle() {
        for s in ["A2", "B2", "G2"] {
            let a = alg(s);
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    assert_eq!(q(a.killing_matrix()[i][j]), killing_by_trace(&a, i, j), "{s} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn dims() {
        for (s, d) in [("A2", 8), ("G2", 14), ("B3", 21), ("C3", 21), ("D4", 28), ("A4", 24)] {
            assert_eq!(alg(s).dim(), d);
        }
    }

    #[test]
    fn bracket_antisymmetric_and_checked() {
        let a = alg("A2");
        let x = GElem::from_dense(&(0..8).map(|i| q(i as i64 - 3)).collect::<Vec<_>>());
        assert!(a.bracket(&x, &x).unwrap().is_zero());
        let short = GElem::zero(3);
        assert!(matches!(a.bracket(&x, &short), Err(LieError::DimensionMismatch { .. })));
        assert!(matches!(a.killing_pair(&short, &x), Err(LieError::DimensionMismatch { .. })));
    }

    #[test]
    fn killing_properties() {
        for s in ["A3", "B2", "C3", "G2"] {
            let a = alg(s);
            assert!(a.killing_is_symmetric());
            assert!(a.killing_is_nondegenerate());
            assert_eq!(a.killing_invariance_violation(), None);
        }
    }

    #[test]
    fn chevalley_constants_are_integral_and_bounded() {
        let a = alg("G2");
        for i in 0..a.num_roots() {
            for j in 0..a.num_roots() {
                for &(_, c) in a.bracket_basis_int(i, j) {
                    if a.kind(j) != BasisKind::Root(a.root_system().opposite(i)) {
                        assert!((1..=3).contains(&c.abs()));
                    }
                }
            }
        }
    }
}
