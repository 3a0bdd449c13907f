//! Belavin–Drinfeld type triples `(Γ₁, Γ₂, A)` on the (extended) Dynkin
//! diagram, their admissibility and type, and candidate Lagrangian
//! subalgebras assembled from them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::ChevalleyAlgebra;
use crate::doubles::{build_double, delta_alpha, delta_alpha_max, DoubleKind};
use crate::error::{LieError, Result};
use crate::grading::alpha_grading;
use crate::linalg::{self, q, SparseVec, Subspace, Q};
use crate::root_system::{RootSystem, RootVec};

/// Default cap on the number of candidate bijections examined.
pub const DEFAULT_SIZE_BOUND: u128 = 1_000_000;

/// Node of the extended Dynkin diagram. Serialized as `1..=rank` for simple
/// roots and `0` for `-α_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Lowest,
    Simple(usize),
}

impl Node {
    pub fn label(self) -> usize {
        match self {
            Node::Lowest => 0,
            Node::Simple(i) => i + 1,
        }
    }

    pub fn from_label(label: usize, rank: usize) -> Result<Node> {
        match label {
            0 => Ok(Node::Lowest),
            l if l <= rank => Ok(Node::Simple(l - 1)),
            l => Err(LieError::BadRootIndex { index: l, rank }),
        }
    }

    pub fn root(self, rs: &RootSystem) -> RootVec {
        match self {
            Node::Lowest => rs.lowest(),
            Node::Simple(i) => RootVec::simple(rs.rank(), i),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Setting {
    /// `Γ₁, Γ₂ ⊆ Γ`.
    Simple,
    /// `Γ₁ ⊆ Γ^ext ∖ {α}`, `Γ₂ ⊆ Γ`.
    Extended,
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Setting::Simple => "simple",
            Setting::Extended => "extended",
        })
    }
}

impl FromStr for Setting {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(Setting::Simple),
            "extended" => Ok(Setting::Extended),
            _ => Err(LieError::Parse(format!("unknown setting {s:?}"))),
        }
    }
}

/// Direction in which orbits must leave the domain: iterate `A` on `Γ₁`
/// (untwisted) or `A⁻¹` on `Γ₂` (reversed).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Orientation {
    #[default]
    Untwisted,
    Reversed,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Untwisted => "untwisted",
            Orientation::Reversed => "reversed",
        })
    }
}

impl FromStr for Orientation {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "untwisted" => Ok(Orientation::Untwisted),
            "reversed" => Ok(Orientation::Reversed),
            _ => Err(LieError::Parse(format!("unknown orientation {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TripleType {
    TypeI,
    TypeII,
    NotApplicable,
}

impl TripleType {
    pub fn as_str(self) -> &'static str {
        match self {
            TripleType::TypeI => "I",
            TripleType::TypeII => "II",
            TripleType::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleRep {
    pub setting: Setting,
    pub gamma1: Vec<Node>,
    pub gamma2: Vec<Node>,
    /// Pairs `(γ, A(γ))`, sorted by `γ`.
    pub iso: Vec<(Node, Node)>,
}

impl TripleRep {
    pub fn new(setting: Setting, iso: impl IntoIterator<Item = (Node, Node)>) -> Self {
        let mut iso: Vec<_> = iso.into_iter().collect();
        iso.sort();
        let gamma1 = iso.iter().map(|p| p.0).collect();
        let mut gamma2: Vec<Node> = iso.iter().map(|p| p.1).collect();
        gamma2.sort();
        TripleRep { setting, gamma1, gamma2, iso }
    }

    pub fn empty(setting: Setting) -> Self {
        Self::new(setting, [])
    }

    pub fn apply(&self, n: Node) -> Option<Node> {
        self.iso.iter().find(|p| p.0 == n).map(|p| p.1)
    }

    pub fn apply_inverse(&self, n: Node) -> Option<Node> {
        self.iso.iter().find(|p| p.1 == n).map(|p| p.0)
    }

    fn sort_key(&self) -> (usize, Vec<usize>, Vec<usize>, Vec<(usize, usize)>) {
        (
            self.gamma1.len(),
            self.gamma1.iter().map(|n| n.label()).collect(),
            self.gamma2.iter().map(|n| n.label()).collect(),
            self.iso.iter().map(|(a, b)| (a.label(), b.label())).collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "setting": self.setting.to_string(),
            "gamma1": self.gamma1.iter().map(|n| n.label()).collect::<Vec<_>>(),
            "gamma2": self.gamma2.iter().map(|n| n.label()).collect::<Vec<_>>(),
            "iso": self.iso.iter().map(|(a, b)| [a.label(), b.label()]).collect::<Vec<_>>(),
        })
    }
}

/// All bijections `Γ₁ → Γ₂` preserving the inner products of the node roots
/// (so both Cartan integers and root lengths).
pub fn diagram_isometries(rs: &RootSystem, gamma1: &[Node], gamma2: &[Node]) -> Vec<Vec<(Node, Node)>> {
    if gamma1.len() != gamma2.len() {
        return Vec::new();
    }
    let r1: Vec<RootVec> = gamma1.iter().map(|n| n.root(rs)).collect();
    let r2: Vec<RootVec> = gamma2.iter().map(|n| n.root(rs)).collect();
    (0..gamma2.len())
        .permutations(gamma2.len())
        .filter(|perm| {
            (0..r1.len()).all(|i| (i..r1.len()).all(|j| rs.inner(&r1[i], &r1[j]) == rs.inner(&r2[perm[i]], &r2[perm[j]])))
        })
        .map(|perm| gamma1.iter().zip(perm).map(|(&a, p)| (a, gamma2[p])).collect())
        .collect()
}

/// No orbit of `A` stays inside its domain forever.
pub fn is_admissible(triple: &TripleRep, orientation: Orientation) -> bool {
    let steps = triple.iso.len() + 1;
    let (domain, step): (&[Node], &dyn Fn(Node) -> Option<Node>) = match orientation {
        Orientation::Untwisted => (&triple.gamma1, &|n| triple.apply(n)),
        Orientation::Reversed => (&triple.gamma2, &|n| triple.apply_inverse(n)),
    };
    domain.iter().all(|&start| {
        let mut x = start;
        for _ in 0..steps {
            match step(x) {
                Some(y) if domain.contains(&y) => x = y,
                _ => return true,
            }
        }
        false
    })
}

pub fn classify_type(triple: &TripleRep, alpha: usize, orientation: Orientation) -> TripleType {
    let a = Node::Simple(alpha);
    match triple.apply_inverse(a) {
        None => {
            if is_admissible(triple, orientation) {
                TripleType::TypeI
            } else {
                TripleType::NotApplicable
            }
        }
        Some(beta) => {
            let pruned = TripleRep::new(triple.setting, triple.iso.iter().copied().filter(|p| p.0 != beta));
            if is_admissible(&pruned, orientation) {
                TripleType::TypeII
            } else {
                TripleType::NotApplicable
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedTriple {
    pub triple: TripleRep,
    pub admissible: bool,
    pub kind: TripleType,
}

impl EnumeratedTriple {
    pub fn to_json(&self) -> Value {
        let mut v = self.triple.to_json();
        v["type"] = json!(self.kind.as_str());
        v["admissible"] = json!(self.admissible);
        v
    }
}

fn candidate_nodes(rs: &RootSystem, alpha: usize, setting: Setting) -> (Vec<Node>, Vec<Node>) {
    let simple: Vec<Node> = (0..rs.rank()).map(Node::Simple).collect();
    let first = match setting {
        Setting::Simple => simple.clone(),
        Setting::Extended => std::iter::once(Node::Lowest).chain(simple.iter().copied().filter(|&n| n != Node::Simple(alpha))).collect(),
    };
    (first, simple)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of bijections between equal-size subsets of the two node sets.
pub fn search_space(n1: usize, n2: usize) -> u128 {
    (0..=n1.min(n2))
        .map(|s| binomial(n1, s).saturating_mul(binomial(n2, s)).saturating_mul((1..=s as u128).product()))
        .fold(0u128, u128::saturating_add)
}

/// Every triple that is admissible or has a type with respect to `α`, sorted
/// by `|Γ₁|` and then lexicographically on node labels.
pub fn enumerate_triples(
    rs: &RootSystem,
    alpha: usize,
    setting: Setting,
    orientation: Orientation,
    bound: u128,
) -> Result<Vec<EnumeratedTriple>> {
    rs.check_simple(alpha)?;
    let (nodes1, nodes2) = candidate_nodes(rs, alpha, setting);
    let count = search_space(nodes1.len(), nodes2.len());
    if count > bound {
        return Err(LieError::SizeGuard { count, bound });
    }
    let mut out: Vec<EnumeratedTriple> = (0..=nodes1.len().min(nodes2.len()))
        .into_par_iter()
        .flat_map_iter(|s| {
            let mut found = Vec::new();
            for g1 in nodes1.iter().copied().combinations(s) {
                for g2 in nodes2.iter().copied().combinations(s) {
                    for iso in diagram_isometries(rs, &g1, &g2) {
                        let triple = TripleRep::new(setting, iso);
                        let admissible = is_admissible(&triple, orientation);
                        let kind = classify_type(&triple, alpha, orientation);
                        if admissible || kind != TripleType::NotApplicable {
                            found.push(EnumeratedTriple { triple, admissible, kind });
                        }
                    }
                }
            }
            found
        })
        .collect();
    out.sort_by_key(|e| e.triple.sort_key());
    Ok(out)
}

/// `𝔞 = {(h₁, h₂) : β(h₁) = 0 for β ∈ Γ₁, γ(h₂) = 0 for γ ∈ Γ₂}` in the
/// coordinates `(h₁, h₂)` over the simple coroots (length `2·rank`).
pub fn abelian_part(alg: &ChevalleyAlgebra, triple: &TripleRep) -> Subspace {
    let rs = alg.root_system();
    let n = rs.rank();
    let functional = |node: &Node, offset: usize| {
        let b = node.root(rs);
        SparseVec::from_terms((0..n).map(|j| (offset + j, q(rs.pairing(&b, j) as i64))))
    };
    let rows: Vec<SparseVec> =
        triple.gamma1.iter().map(|g| functional(g, 0)).chain(triple.gamma2.iter().map(|g| functional(g, n))).collect();
    linalg::kernel(2 * n, &rows)
}

/// Roots in the span of `Γ₁`, with their coordinates over `Γ₁`.
fn span_roots(rs: &RootSystem, gamma: &[Node]) -> Vec<(RootVec, Vec<i32>)> {
    let simple: Vec<RootVec> = gamma.iter().map(|g| g.root(rs)).collect();
    let m = simple.len();
    let mut seen: HashSet<RootVec> = HashSet::new();
    let mut layer: Vec<(RootVec, Vec<i32>)> = (0..m)
        .map(|i| {
            let mut c = vec![0; m];
            c[i] = 1;
            (simple[i].clone(), c)
        })
        .collect();
    let mut positive = Vec::new();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (r, c) in layer {
            if !seen.insert(r.clone()) {
                continue;
            }
            for (i, s) in simple.iter().enumerate() {
                let t = r.add(s);
                if rs.is_root(&t) && !seen.contains(&t) {
                    let mut ct = c.clone();
                    ct[i] += 1;
                    next.push((t, ct));
                }
            }
            positive.push((r, c));
        }
        layer = next;
    }
    let negative: Vec<_> = positive.iter().map(|(r, c)| (r.neg(), c.iter().map(|x| -x).collect())).collect();
    positive.into_iter().chain(negative).collect()
}

fn structure_constant(alg: &ChevalleyAlgebra, x: &RootVec, y: &RootVec) -> i64 {
    let (Some(i), Some(j)) = (alg.root_basis(x), alg.root_basis(y)) else { return 0 };
    let Some(z) = alg.root_basis(&x.add(y)) else { return 0 };
    alg.bracket_basis_int(i, j).iter().find(|t| t.0 == z).map_or(0, |t| t.1)
}

/// The Lie isomorphism extending `e_{±γ} ↦ e_{±Aγ}`: `e_β ↦ c_β e_{Aβ}` for every
/// root `β` in the span of `Γ₁`.
fn graph_map(alg: &ChevalleyAlgebra, triple: &TripleRep) -> Vec<(RootVec, RootVec, Q)> {
    let rs = alg.root_system();
    let roots = span_roots(rs, &triple.gamma1);
    let images: Vec<RootVec> = triple.gamma1.iter().map(|g| triple.apply(*g).unwrap().root(rs)).collect();
    let a_of = |c: &[i32]| -> RootVec {
        let mut v = RootVec(vec![0; rs.rank()]);
        for (ci, img) in c.iter().zip(&images) {
            v = v.add(&img.scaled(*ci));
        }
        v
    };
    let mut coeff: HashMap<RootVec, Q> = HashMap::new();
    // heights within the subsystem, positive and negative alike
    let mut order: Vec<&(RootVec, Vec<i32>)> = roots.iter().collect();
    order.sort_by_key(|(_, c)| c.iter().map(|x| x.abs()).sum::<i32>());
    let gamma_roots: Vec<RootVec> = triple.gamma1.iter().map(|g| g.root(rs)).collect();
    let mut out = Vec::new();
    for (beta, c) in order {
        let height: i32 = c.iter().map(|x| x.abs()).sum();
        let value = if height == 1 {
            Q::one()
        } else {
            let sign = if c.iter().any(|&x| x > 0) { 1 } else { -1 };
            let (i, gamma) = gamma_roots
                .iter()
                .enumerate()
                .map(|(i, g)| (i, g.scaled(sign)))
                .find(|(_, g)| coeff.contains_key(&beta.sub(g)))
                .expect("every non-simple root of the subsystem has a predecessor");
            let rest = beta.sub(&gamma);
            let mut crest = c.clone();
            crest[i] -= sign;
            let num = structure_constant(alg, &images[i].scaled(sign), &a_of(&crest));
            let den = structure_constant(alg, &gamma, &rest);
            coeff[&rest].clone() * q(num) / q(den)
        };
        coeff.insert(beta.clone(), value.clone());
        out.push((beta.clone(), a_of(c), value));
    }
    out
}

/// Candidate subalgebra `W̄` and the predicates it was checked against.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub ambient: DoubleKind,
    pub w: Subspace,
    pub subalgebra: bool,
    pub lagrangian: bool,
    pub transversal: bool,
}

/// Assemble `W̄` from a type I triple and a Cartan part `ia ⊆ 𝔞`, then check it
/// against `Δ_α` (simple setting, in `g ⊕ g`) or `Δ_{α,α_max}` (extended
/// setting, in `L_α ⊕ g`).
pub fn build_candidate_w(
    alg: &ChevalleyAlgebra,
    alpha: usize,
    triple: &TripleRep,
    ia: &Subspace,
    orientation: Orientation,
) -> Result<Candidate> {
    let rs = alg.root_system();
    rs.check_simple(alpha)?;
    if !is_admissible(triple, orientation) {
        return Err(LieError::BadTriple);
    }
    match classify_type(triple, alpha, orientation) {
        TripleType::TypeI => {}
        TripleType::TypeII => return Err(LieError::UnsupportedTripleType("type II".into())),
        TripleType::NotApplicable => return Err(LieError::UnsupportedTripleType("unclassified".into())),
    }
    let rank = rs.rank();
    let abelian = abelian_part(alg, triple);
    if ia.ambient() != 2 * rank {
        return Err(LieError::BadCartanChoice(format!("expected {} coordinates, found {}", 2 * rank, ia.ambient())));
    }
    if !abelian.contains_subspace(ia) {
        return Err(LieError::BadCartanChoice("not contained in the abelian part".into()));
    }
    if 2 * ia.dim() != abelian.dim() {
        return Err(LieError::BadCartanChoice(format!("dimension {} is not half of {}", ia.dim(), abelian.dim())));
    }
    let kill = alg.killing_matrix();
    let h = |i: usize| alg.cartan_basis(i);
    let cartan_form = |x: &SparseVec, y: &SparseVec| -> Q {
        let mut s = Q::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let sign = match (i < rank, j < rank) {
                    (true, true) => 1,
                    (false, false) => -1,
                    _ => continue,
                };
                s += a * b * q(sign * kill[h(i % rank)][h(j % rank)]);
            }
        }
        s
    };
    let rows = ia.rows();
    if (0..rows.len()).any(|i| (i..rows.len()).any(|j| !cartan_form(&rows[i], &rows[j]).is_zero())) {
        return Err(LieError::BadCartanChoice("not isotropic".into()));
    }

    let (kind, reference) = match triple.setting {
        Setting::Simple => (DoubleKind::GxG, delta_alpha(alg, alpha)?),
        Setting::Extended => (DoubleKind::LAlphaxG, delta_alpha_max(alg, alpha)?),
    };
    let double = build_double(kind, alg, Some(alpha))?;
    let grading = alpha_grading(alg, alpha)?;
    let k = grading.ki();
    let in_span = |gamma: &[Node]| -> HashSet<RootVec> { span_roots(rs, gamma).into_iter().map(|p| p.0).collect() };
    let span1 = in_span(&triple.gamma1);
    let span2 = in_span(&triple.gamma2);
    let deg = |b: &RootVec| b.0[alpha];
    let e = |b: &RootVec| SparseVec::unit(alg.root_basis(b).unwrap());
    let zero = SparseVec::new();
    let mut pairs: Vec<(SparseVec, SparseVec)> = Vec::new();
    for b in rs.roots() {
        let first = match triple.setting {
            Setting::Simple => b.is_positive(),
            Setting::Extended => (deg(b) == 0 && !b.is_positive()) || deg(b) == k,
        };
        if first && !span1.contains(b) {
            pairs.push((e(b), zero.clone()));
        }
        let second = match triple.setting {
            Setting::Simple => deg(b) > 0 || (deg(b) == 0 && !b.is_positive()),
            Setting::Extended => b.is_positive(),
        };
        if second && !span2.contains(b) {
            pairs.push((zero.clone(), e(b)));
        }
    }
    for (beta, image, c) in graph_map(alg, triple) {
        pairs.push((e(&beta), e(&image).scaled(&c)));
    }
    let coroot = |r: &RootVec| SparseVec::from_terms(rs.coroot(r).into_iter().enumerate().map(|(i, c)| (h(i), q(c))));
    for &(g, ag) in &triple.iso {
        pairs.push((coroot(&g.root(rs)), coroot(&ag.root(rs))));
    }
    for r in ia.rows() {
        let x = SparseVec::from_terms(r.iter().filter(|(i, _)| *i < rank).map(|(i, c)| (h(i), c.clone())));
        let y = SparseVec::from_terms(r.iter().filter(|(i, _)| *i >= rank).map(|(i, c)| (h(i - rank), c.clone())));
        pairs.push((x, y));
    }
    let rows = pairs.iter().map(|(x, y)| double.join(x, y)).collect::<Result<Vec<_>>>()?;
    let w = Subspace::span(double.dim(), &rows);
    Ok(Candidate {
        ambient: kind,
        subalgebra: double.is_subalgebra(&w)?,
        lagrangian: double.is_lagrangian(&w)?,
        transversal: double.is_transversal(&w, &reference)?,
        w,
    })
}

/// Count of enumerated triples by `|Γ₁|`.
pub fn size_histogram(triples: &[EnumeratedTriple]) -> BTreeMap<usize, usize> {
    triples.iter().map(|t| t.triple.gamma1.len()).counts().into_iter().collect()
}
