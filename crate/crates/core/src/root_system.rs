//! Root systems of the simple Lie algebras, generated from the Cartan matrix.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LieError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// Cartan type such as `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanLabel {
    family: Family,
    rank: usize,
}

impl CartanLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let legal = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !legal {
            return Err(LieError::IllegalRank { family: family.letter(), rank });
        }
        if matches!(family, Family::E | Family::F) && !cfg!(feature = "exceptional") {
            return Err(LieError::UnsupportedLabel(format!(
                "{}{} (build with the `exceptional` feature)",
                family.letter(),
                rank
            )));
        }
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanLabel {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(LieError::Parse(format!("unknown Cartan label {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| LieError::Parse(format!("unknown Cartan label {s:?}")))?;
        CartanLabel::new(family, rank)
    }
}

impl Serialize for CartanLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Root written in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootVec(pub Vec<i32>);

impl RootVec {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        RootVec(c)
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Self {
        RootVec(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &RootVec) -> Self {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVec) -> Self {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i32) -> Self {
        RootVec(self.0.iter().map(|c| c * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: CartanLabel,
    /// `cartan[i][j] = <α_i, α_j^∨> = 2(α_i, α_j) / (α_j, α_j)`.
    cartan: Vec<Vec<i32>>,
    /// Integer multiple of the invariant inner product on simple roots.
    gram: Vec<Vec<i32>>,
    /// Positive roots by (height, lexicographic), then their negatives in the same order.
    roots: Vec<RootVec>,
    n_pos: usize,
    highest: RootVec,
    marks: Vec<u32>,
    index: HashMap<RootVec, usize>,
}

/// Scaled Gram matrix of the simple roots, Bourbaki numbering.
fn simple_gram(label: CartanLabel) -> Vec<Vec<i32>> {
    let n = label.rank;
    let mut g = vec![vec![0; n]; n];
    let link = |g: &mut Vec<Vec<i32>>, i: usize, j: usize, v: i32| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match label.family {
        Family::A => {
            for i in 0..n {
                g[i][i] = 2;
                if i + 1 < n {
                    link(&mut g, i, i + 1, -1);
                }
            }
        }
        Family::B => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 1 } else { 2 };
                if i + 1 < n {
                    link(&mut g, i, i + 1, -1);
                }
            }
        }
        Family::C => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 4 } else { 2 };
                if i + 2 < n {
                    link(&mut g, i, i + 1, -1);
                }
            }
            link(&mut g, n - 2, n - 1, -2);
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        Family::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

pub fn build_root_system(label: CartanLabel) -> Result<RootSystem> {
    // Re-validate: labels can only be built through `new`, but keep the check local.
    let label = CartanLabel::new(label.family, label.rank)?;
    let n = label.rank;
    let gram = simple_gram(label);
    let cartan: Vec<Vec<i32>> = (0..n)
        .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
        .collect();
    let pairing = |b: &RootVec, i: usize| -> i32 { (0..n).map(|j| b.0[j] * cartan[j][i]).sum() };

    let mut positives: Vec<RootVec> = (0..n).map(|i| RootVec::simple(n, i)).collect();
    let mut known: std::collections::HashSet<RootVec> = positives.iter().cloned().collect();
    let mut layer = positives.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for b in &layer {
            for i in 0..n {
                // α_i-string through b: b - qα_i, ..., b + pα_i with p - q = -<b, α_i^∨>.
                let mut q = 0;
                while known.contains(&b.sub(&RootVec::simple(n, i).scaled(q + 1))) {
                    q += 1;
                }
                let p = q - pairing(b, i);
                if p > 0 {
                    let c = b.add(&RootVec::simple(n, i));
                    if known.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
        }
        positives.extend(next.iter().cloned());
        layer = next;
    }
    positives.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    let n_pos = positives.len();
    let highest = positives.last().cloned().expect("nonempty root system");
    if positives.iter().filter(|r| r.height() == highest.height()).count() != 1 {
        return Err(LieError::ConstructionInconsistency("highest root is not unique".into()));
    }
    let marks = highest.0.iter().map(|&c| c as u32).collect();
    let mut roots = positives.clone();
    roots.extend(positives.iter().map(RootVec::neg));
    let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    Ok(RootSystem { label, cartan, gram, roots, n_pos, highest, marks, index })
}

impl RootSystem {
    pub fn label(&self) -> CartanLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn positives(&self) -> &[RootVec] {
        &self.roots[..self.n_pos]
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn highest(&self) -> &RootVec {
        &self.highest
    }

    pub fn marks(&self) -> &[u32] {
        &self.marks
    }

    pub fn mark(&self, alpha: usize) -> Result<u32> {
        self.check_simple(alpha)?;
        Ok(self.marks[alpha])
    }

    pub fn check_simple(&self, alpha: usize) -> Result<()> {
        if alpha >= self.rank() {
            return Err(LieError::BadRootIndex { index: alpha, rank: self.rank() });
        }
        Ok(())
    }

    pub fn root_index(&self, r: &RootVec) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &RootVec) -> bool {
        self.index.contains_key(r)
    }

    /// Index of `-roots[i]`.
    pub fn opposite(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    /// Scaled invariant inner product `(a, b)`.
    pub fn inner(&self, a: &RootVec, b: &RootVec) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a.0[i] as i64 * b.0[j] as i64 * self.gram[i][j] as i64;
            }
        }
        s
    }

    /// `<b, α_i^∨>`.
    pub fn pairing(&self, b: &RootVec, i: usize) -> i32 {
        (0..self.rank()).map(|j| b.0[j] * self.cartan[j][i]).sum()
    }

    /// Coroot of `b` in the basis of simple coroots: `c_i (α_i, α_i) / (b, b)`.
    pub fn coroot(&self, b: &RootVec) -> Vec<i64> {
        let bb = self.inner(b, b);
        (0..self.rank())
            .map(|i| {
                let num = b.0[i] as i64 * self.gram[i][i] as i64;
                debug_assert_eq!(num % bb, 0);
                num / bb
            })
            .collect()
    }

    /// Largest `p` with `b - p·a` a root (b itself assumed a root).
    pub fn string_down(&self, a: &RootVec, b: &RootVec) -> i32 {
        let mut p = 0;
        while self.is_root(&b.sub(&a.scaled(p + 1))) {
            p += 1;
        }
        p
    }

    /// Vector of the node `-α_max` of the extended diagram.
    pub fn lowest(&self) -> RootVec {
        self.highest.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, n) in [("A1", 2), ("A2", 6), ("A4", 20), ("B2", 8), ("B3", 18), ("C3", 18), ("D4", 24), ("G2", 12)] {
            assert_eq!(rs(s).roots().len(), n, "{s}");
        }
    }

    #[test]
    fn marks_reconstruct_highest() {
        assert_eq!(rs("A1").marks(), &[1]);
        assert_eq!(rs("A2").marks(), &[1, 1]);
        assert_eq!(rs("G2").marks(), &[3, 2]);
        assert_eq!(rs("B3").marks(), &[1, 2, 2]);
        assert_eq!(rs("C3").marks(), &[2, 2, 1]);
        assert_eq!(rs("D4").marks(), &[1, 2, 1, 1]);
        for s in ["A3", "B2", "C3", "D4", "G2"] {
            let r = rs(s);
            let sum: Vec<i32> = r.marks().iter().map(|&k| k as i32).collect();
            assert_eq!(&RootVec(sum), r.highest());
            for root in r.roots() {
                assert!(root.0.iter().zip(&r.highest().0).all(|(a, b)| a <= b));
            }
        }
    }

    #[test]
    fn illegal_labels() {
        assert!(matches!("B1".parse::<CartanLabel>(), Err(LieError::IllegalRank { .. })));
        assert!(matches!("G3".parse::<CartanLabel>(), Err(LieError::IllegalRank { .. })));
        assert!(matches!("D2".parse::<CartanLabel>(), Err(LieError::IllegalRank { .. })));
        assert!("X2".parse::<CartanLabel>().is_err());
    }

    #[test]
    fn reflections_preserve_roots() {
        for s in ["B3", "C3", "G2", "D4"] {
            let r = rs(s);
            for b in r.roots() {
                for i in 0..r.rank() {
                    let img = b.sub(&RootVec::simple(r.rank(), i).scaled(r.pairing(b, i)));
                    assert!(r.is_root(&img), "{s}: s_{i}({b}) = {img}");
                }
                assert!(!r.is_root(&b.scaled(2)));
            }
        }
    }
}
