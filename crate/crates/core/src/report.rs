//! Batch drivers behind the command line: grid verification, triple listings,
//! subspace checks and algebra descriptions, all rendered as JSON with sorted
//! keys and rationals as strings.

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::algebra::{build_chevalley_algebra, ChevalleyAlgebra};
use crate::doubles::{build_double, delta_alpha, delta_alpha_max, p_eps, DoubleKind};
use crate::error::{LieError, Result};
use crate::grading::alpha_grading;
use crate::linalg::{fmt_q, parse_q, q, SparseVec, Subspace, Q};
use crate::quotient::{verify_phi, TheoremId, VerificationReport};
use crate::root_system::{build_root_system, CartanLabel};
use crate::triples::{enumerate_triples, Orientation, Setting};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_WINDOW: usize = 6;
/// Smallest window for which the verification checks are meaningful.
pub const MIN_VERIFY_WINDOW: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSelection {
    All,
    /// 0-based simple root indices.
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub algebras: Vec<CartanLabel>,
    pub roots: RootSelection,
    pub theorems: Vec<TheoremId>,
    pub c1: Q,
    pub c2: Q,
    pub window: usize,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            algebras: default_grid(),
            roots: RootSelection::All,
            theorems: TheoremId::ALL.to_vec(),
            c1: q(1),
            c2: q(2),
            window: DEFAULT_WINDOW,
            workers: 1,
        }
    }
}

/// `A1, A2, A3, B2, C3, D4, G2`: marks 1, 2 and 3 all occur.
pub fn default_grid() -> Vec<CartanLabel> {
    ["A1", "A2", "A3", "B2", "C3", "D4", "G2"].iter().map(|s| s.parse().unwrap()).collect()
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.c1.is_zero() || self.c2.is_zero() || self.c1 == self.c2 {
            return Err(LieError::InvalidParams(format!(
                "c1 and c2 must be distinct and nonzero, got {} and {}",
                fmt_q(&self.c1),
                fmt_q(&self.c2)
            )));
        }
        if self.window < MIN_VERIFY_WINDOW {
            return Err(LieError::WindowTooSmall { min: MIN_VERIFY_WINDOW, found: self.window });
        }
        if self.algebras.is_empty() || self.theorems.is_empty() {
            return Err(LieError::InvalidParams("empty algebra or theorem list".into()));
        }
        if self.workers == 0 {
            return Err(LieError::InvalidParams("worker count must be positive".into()));
        }
        if let RootSelection::Explicit(roots) = &self.roots {
            for label in &self.algebras {
                if let Some(&bad) = roots.iter().find(|&&r| r >= label.rank()) {
                    return Err(LieError::BadRootIndex { index: bad + 1, rank: label.rank() });
                }
            }
        }
        Ok(())
    }

    /// Everything except the worker count, which must not affect the output.
    pub fn to_json(&self) -> Value {
        let roots = match &self.roots {
            RootSelection::All => json!("all"),
            RootSelection::Explicit(r) => json!(r.iter().map(|i| i + 1).collect::<Vec<_>>()),
        };
        json!({
            "algebras": self.algebras.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "roots": roots,
            "theorems": self.theorems.iter().map(|t| t.name()).collect::<Vec<_>>(),
            "c1": fmt_q(&self.c1),
            "c2": fmt_q(&self.c2),
            "window": self.window,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable(k>1)",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub algebra: CartanLabel,
    pub alpha: usize,
    pub theorem: TheoremId,
    pub k: u32,
    pub status: Status,
    pub report: Option<VerificationReport>,
    pub diagnostics: Vec<String>,
}

impl Entry {
    pub fn to_json(&self, window: usize) -> Value {
        let mut m = Map::new();
        m.insert("algebra".into(), json!(self.algebra.to_string()));
        m.insert("root".into(), json!(self.alpha + 1));
        m.insert("theorem".into(), json!(self.theorem.name()));
        m.insert("k".into(), json!(self.k));
        m.insert("status".into(), json!(self.status.as_str()));
        m.insert("diagnostics".into(), json!(self.diagnostics));
        match &self.report {
            Some(r) => {
                let f = &r.flags;
                m.insert(
                    "flags".into(),
                    json!({
                        "is_lie_hom": f.is_lie_hom,
                        "kernel_equals_perp": f.kernel_equals_perp,
                        "surjective": f.surjective,
                        "image_of_polynomials_matches": f.image_of_polynomials_matches,
                        "induced_form_proportional": f.induced_form_proportional,
                        "window_stable": f.window_stable,
                    }),
                );
                m.insert("mu".into(), r.mu.as_ref().map_or(Value::Null, |x| json!(fmt_q(x))));
                m.insert("case".into(), json!(r.case.to_string()));
                m.insert("printed_perp".into(), json!(r.printed_perp.as_str()));
                m.insert("window".into(), json!(r.window));
            }
            None => {
                m.insert("flags".into(), Value::Null);
                m.insert("mu".into(), Value::Null);
                m.insert("case".into(), Value::Null);
                m.insert("printed_perp".into(), Value::Null);
                m.insert("window".into(), json!(window));
            }
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub entries: Vec<Entry>,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "config": self.config.to_json(),
            "entries": self.entries.iter().map(|e| e.to_json(self.config.window)).collect::<Vec<_>>(),
            "summary": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "inapplicable": self.count(Status::Inapplicable),
            },
        })
    }

    pub fn render(&self) -> String {
        render(&self.to_json())
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn verify_cell(alg: &ChevalleyAlgebra, alpha: usize, theorem: TheoremId, config: &RunConfig) -> Entry {
    let label = alg.root_system().label();
    let k = alg.root_system().mark(alpha).unwrap_or(0);
    let outcome = theorem.default_case(&config.c1, &config.c2).and_then(|case| verify_phi(theorem, alg, alpha, case, config.window));
    let (status, report, diagnostics) = match outcome {
        Ok(r) => {
            let status = if r.passed() { Status::Pass } else { Status::Fail };
            let d = r.diagnostics.clone();
            (status, Some(r), d)
        }
        Err(e @ LieError::MarkObstruction { .. }) => (Status::Inapplicable, None, vec![e.to_string()]),
        Err(e) => (Status::Fail, None, vec![e.to_string()]),
    };
    Entry { algebra: label, alpha, theorem, k, status, report, diagnostics }
}

/// Runs every `(algebra, root, theorem)` cell on `config.workers` threads and
/// sorts the entries, so the result does not depend on scheduling.
pub fn run_verify(config: &RunConfig) -> Result<VerifyReport> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| LieError::InvalidParams(e.to_string()))?;
    let mut labels = config.algebras.clone();
    labels.sort();
    labels.dedup();
    let mut entries = pool.install(|| -> Result<Vec<Entry>> {
        let algebras: Vec<ChevalleyAlgebra> =
            labels.par_iter().map(|&l| build_chevalley_algebra(build_root_system(l)?)).collect::<Result<_>>()?;
        let mut cells = Vec::new();
        for alg in &algebras {
            let roots: Vec<usize> = match &config.roots {
                RootSelection::All => (0..alg.rank()).collect(),
                RootSelection::Explicit(r) => r.clone(),
            };
            for alpha in roots {
                for &t in &config.theorems {
                    cells.push((alg, alpha, t));
                }
            }
        }
        Ok(cells.into_par_iter().map(|(alg, alpha, t)| verify_cell(alg, alpha, t, config)).collect())
    })?;
    entries.sort_by_key(|e| (e.algebra, e.alpha, e.theorem));
    entries.dedup_by(|a, b| (a.algebra, a.alpha, a.theorem) == (b.algebra, b.alpha, b.theorem));
    Ok(VerifyReport { config: config.clone(), entries })
}

pub fn triples_json(label: CartanLabel, alpha: usize, setting: Setting, orientation: Orientation, bound: u128) -> Result<Value> {
    let rs = build_root_system(label)?;
    let list = enumerate_triples(&rs, alpha, setting, orientation, bound)?;
    Ok(json!({
        "schema": SCHEMA,
        "algebra": label.to_string(),
        "alpha": alpha + 1,
        "setting": setting.to_string(),
        "orientation": orientation.to_string(),
        "admissible": list.iter().filter(|t| t.admissible).count(),
        "triples": list.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
    }))
}

/// `KIND:LABEL[:alpha]`, e.g. `GxG:A1` or `LAlphaxG:G2:2` (alpha 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSpec {
    pub kind: DoubleKind,
    pub label: CartanLabel,
    pub alpha: Option<usize>,
}

impl std::str::FromStr for AmbientSpec {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(LieError::Parse(format!("expected KIND:LABEL[:alpha], got {s:?}")));
        }
        let kind = parts[0].parse()?;
        let label = parts[1].parse()?;
        let alpha = parts.get(2).map(|a| parse_index(a)).transpose()?;
        Ok(AmbientSpec { kind, label, alpha })
    }
}

fn parse_index(s: &str) -> Result<usize> {
    match s.trim().parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(LieError::Parse(format!("expected a 1-based root index, got {s:?}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceKind {
    DeltaAlpha,
    DeltaAlphaMax,
    PEps,
}

/// `NAME:alpha` with `NAME` one of `delta_alpha`, `delta_alpha_max`, `p_eps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceSpec {
    pub kind: ReferenceKind,
    pub alpha: usize,
}

impl std::str::FromStr for ReferenceSpec {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self> {
        let (name, alpha) = s.split_once(':').ok_or_else(|| LieError::Parse(format!("expected NAME:alpha, got {s:?}")))?;
        let kind = match name {
            "delta_alpha" => ReferenceKind::DeltaAlpha,
            "delta_alpha_max" => ReferenceKind::DeltaAlphaMax,
            "p_eps" => ReferenceKind::PEps,
            _ => return Err(LieError::Parse(format!("unknown reference {name:?}"))),
        };
        Ok(ReferenceSpec { kind, alpha: parse_index(alpha)? })
    }
}

impl ReferenceKind {
    fn ambient(self) -> DoubleKind {
        match self {
            ReferenceKind::DeltaAlpha => DoubleKind::GxG,
            ReferenceKind::DeltaAlphaMax => DoubleKind::LAlphaxG,
            ReferenceKind::PEps => DoubleKind::GEps,
        }
    }
}

fn json_error(e: serde_json::Error) -> LieError {
    LieError::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e))
}

/// Parses `{"ambient": kind, "rows": [["p/q", ...], ...]}`.
pub fn parse_subspace(text: &str, kind: DoubleKind, dim: usize) -> Result<Subspace> {
    #[derive(serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        ambient: String,
        rows: Vec<Vec<String>>,
    }
    let raw: Raw = serde_json::from_str(text).map_err(json_error)?;
    let declared: DoubleKind = raw.ambient.parse()?;
    if declared != kind {
        return Err(LieError::Parse(format!("file declares ambient {declared}, command line says {kind}")));
    }
    let mut rows = Vec::with_capacity(raw.rows.len());
    for (r, row) in raw.rows.iter().enumerate() {
        if row.len() != dim {
            return Err(LieError::Parse(format!("row {}: expected {dim} entries, found {}", r + 1, row.len())));
        }
        let values = row
            .iter()
            .enumerate()
            .map(|(c, s)| parse_q(s).map_err(|e| LieError::Parse(format!("row {}, entry {}: {e}", r + 1, c + 1))))
            .collect::<Result<Vec<Q>>>()?;
        rows.push(SparseVec::from_dense(&values));
    }
    Ok(Subspace::span(dim, &rows))
}

/// Subalgebra, Lagrangian and (with a reference) transversality verdicts for
/// a subspace given as JSON text.
pub fn check_json(text: &str, ambient: &AmbientSpec, reference: Option<ReferenceSpec>) -> Result<Value> {
    let alg = build_chevalley_algebra(build_root_system(ambient.label)?)?;
    let alpha = ambient.alpha.or(reference.map(|r| r.alpha));
    let double = build_double(ambient.kind, &alg, alpha)?;
    let sub = parse_subspace(text, ambient.kind, double.dim())?;
    let mut witnesses = Map::new();
    let sub_w = double.subalgebra_witness(&sub)?;
    if let Some((i, j)) = sub_w {
        witnesses.insert("bracket_not_closed".into(), json!([i + 1, j + 1]));
    }
    let iso_w = double.isotropy_witness(&sub)?;
    if let Some((i, j)) = iso_w {
        witnesses.insert("form_nonzero".into(), json!([i + 1, j + 1]));
    }
    let half = double.dim() / 2;
    let lagrangian = double.dim() % 2 == 0 && iso_w.is_none() && sub.dim() == half;
    if sub.dim() != half || double.dim() % 2 == 1 {
        witnesses.insert("dimension".into(), json!({"found": sub.dim(), "ambient": double.dim()}));
    }
    let transversal = match reference {
        None => Value::Null,
        Some(r) => {
            if r.kind.ambient() != ambient.kind {
                return Err(LieError::InvalidParams(format!("reference lives in {}, not {}", r.kind.ambient(), ambient.kind)));
            }
            let refsub = match r.kind {
                ReferenceKind::DeltaAlpha => delta_alpha(&alg, r.alpha)?,
                ReferenceKind::DeltaAlphaMax => delta_alpha_max(&alg, r.alpha)?,
                ReferenceKind::PEps => p_eps(&alg, r.alpha)?,
            };
            let ok = double.is_transversal(&sub, &refsub)?;
            if !ok {
                let meet = sub.intersection(&refsub)?;
                witnesses.insert("intersection_dim".into(), json!(meet.dim()));
            }
            json!(ok)
        }
    };
    Ok(json!({
        "schema": SCHEMA,
        "ambient": ambient.kind.to_string(),
        "algebra": ambient.label.to_string(),
        "ambient_dim": double.dim(),
        "dim": sub.dim(),
        "subalgebra": sub_w.is_none(),
        "lagrangian": lagrangian,
        "transversal": transversal,
        "witnesses": witnesses,
    }))
}

/// Cartan matrix, highest root, marks and the piece dimensions of every
/// α-grading.
pub fn describe_json(label: CartanLabel, structure: bool) -> Result<Value> {
    let alg = build_chevalley_algebra(build_root_system(label)?)?;
    let rs = alg.root_system();
    let gradings = (0..rs.rank())
        .map(|a| {
            let g = alpha_grading(&alg, a)?;
            let dims: Map<String, Value> = g.piece_dims().into_iter().map(|(r, d)| (r.to_string(), json!(d))).collect();
            Ok(json!({"alpha": a + 1, "k": g.k(), "piece_dims": dims, "dim_l_alpha": g.l_alpha_indices().len()}))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut v = json!({
        "schema": SCHEMA,
        "algebra": label.to_string(),
        "rank": rs.rank(),
        "dim": alg.dim(),
        "num_positive_roots": rs.num_positive(),
        "cartan_matrix": rs.cartan_matrix(),
        "highest_root": rs.highest().0,
        "marks": rs.marks(),
        "gradings": gradings,
    });
    if structure {
        v["structure"] = alg.to_json();
    }
    Ok(v)
}
