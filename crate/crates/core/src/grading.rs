//! The grading of g by the coefficient of a simple root, and the subalgebras
//! built from its pieces.

use std::collections::BTreeMap;

use crate::algebra::{BasisKind, ChevalleyAlgebra};
use crate::error::Result;
use crate::linalg::Subspace;

/// `g = ⊕_{r=-k}^{k} g_r`, where `g_r` is spanned by the root vectors whose
/// root has α-coefficient `r` (the Cartan subalgebra sits in `g_0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaGrading {
    alpha: usize,
    k: u32,
    degree: Vec<i32>,
    pieces: BTreeMap<i32, Vec<usize>>,
}

pub fn alpha_grading(alg: &ChevalleyAlgebra, alpha: usize) -> Result<AlphaGrading> {
    let rs = alg.root_system();
    rs.check_simple(alpha)?;
    let k = rs.mark(alpha)?;
    let degree: Vec<i32> = (0..alg.dim())
        .map(|i| match alg.kind(i) {
            BasisKind::Root(r) => rs.roots()[r].0[alpha],
            BasisKind::Cartan(_) => 0,
        })
        .collect();
    let mut pieces: BTreeMap<i32, Vec<usize>> = (-(k as i32)..=k as i32).map(|r| (r, Vec::new())).collect();
    for (i, &d) in degree.iter().enumerate() {
        pieces.get_mut(&d).expect("root coefficient exceeds the mark").push(i);
    }
    Ok(AlphaGrading { alpha, k, degree, pieces })
}

impl AlphaGrading {
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Coefficient of α in the highest root.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn ki(&self) -> i32 {
        self.k as i32
    }

    /// Degree of basis element `i`.
    pub fn degree(&self, i: usize) -> i32 {
        self.degree[i]
    }

    /// Basis indices of `g_r` (empty outside `[-k, k]`).
    pub fn piece(&self, r: i32) -> &[usize] {
        self.pieces.get(&r).map_or(&[], Vec::as_slice)
    }

    pub fn pieces(&self) -> &BTreeMap<i32, Vec<usize>> {
        &self.pieces
    }

    pub fn piece_dims(&self) -> BTreeMap<i32, usize> {
        self.pieces.iter().map(|(&r, v)| (r, v.len())).collect()
    }

    fn indices_where(&self, f: impl Fn(i32) -> bool) -> Vec<usize> {
        (0..self.degree.len()).filter(|&i| f(self.degree[i])).collect()
    }

    /// Basis indices of `g_0 ⊕ g_{<0}`, ascending.
    pub fn parabolic_minus_indices(&self) -> Vec<usize> {
        self.indices_where(|r| r <= 0)
    }

    pub fn nilradical_indices(&self) -> Vec<usize> {
        self.indices_where(|r| r < 0)
    }

    /// Basis indices of `L_α = g_k ⊕ g_0 ⊕ g_{-k}`, ascending.
    pub fn l_alpha_indices(&self) -> Vec<usize> {
        let k = self.ki();
        self.indices_where(|r| r == 0 || r.abs() == k)
    }

    pub fn parabolic_plus_max_indices(&self) -> Vec<usize> {
        let k = self.ki();
        self.indices_where(|r| r == 0 || r == -k)
    }
}

fn coordinate(alg: &ChevalleyAlgebra, idx: Vec<usize>) -> Subspace {
    Subspace::coordinate(alg.dim(), idx)
}

/// `P_α⁻ = g_0 ⊕ g_{-1} ⊕ … ⊕ g_{-k}`.
pub fn parabolic_minus(alg: &ChevalleyAlgebra, alpha: usize) -> Result<Subspace> {
    Ok(coordinate(alg, alpha_grading(alg, alpha)?.parabolic_minus_indices()))
}

/// `g_{-1} ⊕ … ⊕ g_{-k}`, the nilradical of `P_α⁻`.
pub fn nilradical(alg: &ChevalleyAlgebra, alpha: usize) -> Result<Subspace> {
    Ok(coordinate(alg, alpha_grading(alg, alpha)?.nilradical_indices()))
}

pub fn l_alpha(alg: &ChevalleyAlgebra, alpha: usize) -> Result<Subspace> {
    Ok(coordinate(alg, alpha_grading(alg, alpha)?.l_alpha_indices()))
}

/// `P⁺_{α_max} = g_0 ⊕ g_{-k}`, the parabolic of `L_α` attached to `-α_max`.
pub fn parabolic_plus_max(alg: &ChevalleyAlgebra, alpha: usize) -> Result<Subspace> {
    Ok(coordinate(alg, alpha_grading(alg, alpha)?.parabolic_plus_max_indices()))
}

/// Orthogonal complement for the Killing form.
pub fn k_perp(alg: &ChevalleyAlgebra, sub: &Subspace) -> Result<Subspace> {
    alg.k_perp(sub)
}
