//! Exact sparse linear algebra over the rationals.
//!
//! Subspaces are kept in reduced row-echelon form so that two spans are
//! equal exactly when their row lists are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{LieError, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `p` for integers, `p/q` otherwise, always reduced.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || LieError::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(LieError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Q::one())] }
    }

    /// Builds a vector from unordered terms, summing repeated indices.
    pub fn from_terms<I: IntoIterator<Item = (usize, Q)>>(terms: I) -> Self {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, c) in terms {
            if c.is_zero() {
                continue;
            }
            *acc.entry(i).or_insert_with(Q::zero) += c;
        }
        Self { entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_dense(xs: &[Q]) -> Self {
        Self {
            entries: xs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &SparseVec) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + y * c;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let mut acc = Q::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += x * y;
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Relabels coordinates; entries mapped to `None` are dropped.
    pub fn reindex(&self, f: impl Fn(usize) -> Option<usize>) -> Self {
        Self::from_terms(self.entries.iter().filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))))
    }

    /// Copies `self` into a larger ambient space starting at `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        Self { entries: self.entries.iter().map(|(i, c)| (i + offset, c.clone())).collect() }
    }

    /// Rescales so that the leading coefficient is 1.
    fn normalized(&self) -> Self {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scaled(&c.recip()),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, (i, c)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{c}")?;
        }
        write!(f, "]")
    }
}

/// Linear combination `Σ c_k v_k` accumulated without intermediate merges.
pub fn combine<'a, I>(terms: I) -> SparseVec
where
    I: IntoIterator<Item = (Q, &'a SparseVec)>,
{
    let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (i, x) in v.iter() {
            *acc.entry(i).or_insert_with(Q::zero) += x * &c;
        }
    }
    SparseVec { entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
}

/// Incremental reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Self { ambient, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` modulo the current span; zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(Q, &SparseVec)> = v
            .iter()
            .filter_map(|(i, c)| self.pivots.get(&i).map(|&r| (-c.clone(), &self.rows[r])))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        combine(std::iter::once((Q::one(), v)).chain(hits))
    }

    /// Adds `v` to the span. Returns false when it was already there.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, _)) = r.leading() else {
            return false;
        };
        let r = r.normalized();
        for row in self.rows.iter_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                *row = row.add_scaled(&-c, &r);
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn into_subspace(self) -> Subspace {
        let Echelon { ambient, mut rows, .. } = self;
        rows.sort_by_key(|r| r.leading().map(|(i, _)| i));
        Subspace { ambient, rows }
    }
}

/// A subspace of `Q^ambient` in canonical reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, rows: (0..ambient).map(SparseVec::unit).collect() }
    }

    pub fn span<'a, I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVec>,
    {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            debug_assert!(v.max_index().is_none_or(|m| m < ambient));
            ech.insert(v);
        }
        ech.into_subspace()
    }

    /// Span of the coordinate vectors `e_i` for the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vs: Vec<SparseVec> = indices.into_iter().map(SparseVec::unit).collect();
        Self::span(ambient, &vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().filter_map(|r| r.leading().map(|(i, _)| i)).collect()
    }

    fn echelon(&self) -> Echelon {
        let mut pivots = BTreeMap::new();
        for (k, r) in self.rows.iter().enumerate() {
            if let Some((p, _)) = r.leading() {
                pivots.insert(p, k);
            }
        }
        Echelon { ambient: self.ambient, rows: self.rows.clone(), pivots }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let ech = self.echelon();
        other.rows.iter().all(|r| ech.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let mut ech = self.echelon();
        for r in &other.rows {
            ech.insert(r);
        }
        Ok(ech.into_subspace())
    }

    /// `{c : c·s = 0 for all s}` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        kernel(self.ambient, &self.rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let a = self.annihilator().sum(&other.annihilator())?;
        Ok(a.annihilator())
    }

    /// Vectors of the subspace supported on coordinates where `keep` holds.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Subspace {
        // Combinations Σ λ_j row_j vanishing off `keep`.
        let mut cond: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter() {
                if !keep(i) {
                    cond.entry(i).or_default().push((j, c.clone()));
                }
            }
        }
        let cond_rows: Vec<SparseVec> =
            cond.into_values().map(SparseVec::from_terms).collect();
        let lambdas = kernel(self.rows.len(), &cond_rows);
        let vs: Vec<SparseVec> = lambdas
            .rows
            .iter()
            .map(|l| combine(l.iter().map(|(j, c)| (c.clone(), &self.rows[j]))))
            .collect();
        Subspace::span(self.ambient, &vs)
    }

    /// Image under a coordinate relabelling into a space of dimension `ambient`.
    pub fn reindexed(&self, ambient: usize, f: impl Fn(usize) -> Option<usize>) -> Subspace {
        let vs: Vec<SparseVec> = self.rows.iter().map(|r| r.reindex(&f)).collect();
        Subspace::span(ambient, &vs)
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(LieError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }
}

/// Null space of the matrix whose rows are given, over `ncols` unknowns.
pub fn kernel(ncols: usize, rows: &[SparseVec]) -> Subspace {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    let pivot_set: std::collections::BTreeSet<usize> = ech.pivots.keys().copied().collect();
    // For each free column f: e_f - Σ_p row_p[f] e_p.
    let mut free_terms: BTreeMap<usize, Vec<(usize, Q)>> = (0..ncols)
        .filter(|c| !pivot_set.contains(c))
        .map(|c| (c, vec![(c, Q::one())]))
        .collect();
    for row in &ech.rows {
        let (p, _) = row.leading().expect("echelon rows are nonzero");
        for (c, v) in row.iter() {
            if c != p {
                free_terms.get_mut(&c).expect("non-pivot column").push((p, -v.clone()));
            }
        }
    }
    let vs: Vec<SparseVec> = free_terms.into_values().map(SparseVec::from_terms).collect();
    Subspace::span(ncols, &vs)
}

/// Rank of the matrix with the given rows.
pub fn rank(ncols: usize, rows: &[SparseVec]) -> usize {
    Subspace::span(ncols, rows).dim()
}

/// A linear map stored by the images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub source_dim: usize,
    pub target_dim: usize,
    columns: Vec<SparseVec>,
}

impl LinearMap {
    pub fn from_columns(target_dim: usize, columns: Vec<SparseVec>) -> Self {
        Self { source_dim: columns.len(), target_dim, columns }
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        combine(v.iter().map(|(j, c)| (c.clone(), &self.columns[j])))
    }

    /// Rows of the matrix (one per target coordinate).
    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.target_dim];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i].push((j, c.clone()));
            }
        }
        rows.into_iter().map(SparseVec::from_terms).collect()
    }

    pub fn kernel(&self) -> Subspace {
        kernel(self.source_dim, &self.rows())
    }

    pub fn rank(&self) -> usize {
        rank(self.target_dim, &self.columns)
    }

    pub fn image(&self, sub: &Subspace) -> Subspace {
        let vs: Vec<SparseVec> = sub.rows().iter().map(|r| self.apply(r)).collect();
        Subspace::span(self.target_dim, &vs)
    }

    /// Full preimage `{v : self(v) ∈ sub}`.
    pub fn preimage(&self, sub: &Subspace) -> Result<Subspace> {
        if sub.ambient() != self.target_dim {
            return Err(LieError::DimensionMismatch {
                expected: self.target_dim,
                found: sub.ambient(),
            });
        }
        let ann = sub.annihilator();
        let rows: Vec<SparseVec> = ann
            .rows()
            .iter()
            .map(|c| SparseVec::from_terms(self.columns.iter().enumerate().map(|(j, col)| (j, c.dot(col)))))
            .collect();
        Ok(kernel(self.source_dim, &rows))
    }
}

/// Symmetric bilinear form given by its (sparse) Gram rows.
pub fn bilinear(rows: &[SparseVec], x: &SparseVec, y: &SparseVec) -> Q {
    let mut acc = Q::zero();
    for (i, c) in x.iter() {
        let r = rows[i].dot(y);
        if !r.is_zero() {
            acc += c * r;
        }
    }
    acc
}

/// Orthogonal complement `{x : B(x, s) = 0 for all s ∈ sub}`.
pub fn form_perp(form_rows: &[SparseVec], sub: &Subspace) -> Subspace {
    let n = sub.ambient();
    let conds: Vec<SparseVec> = sub
        .rows()
        .iter()
        .map(|s| combine(s.iter().map(|(i, c)| (c.clone(), &form_rows[i]))))
        .collect();
    kernel(n, &conds)
}
