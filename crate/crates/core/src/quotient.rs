//! The maps φ from a truncated order (plus the extra summand) onto a
//! finite-dimensional double, and the checks that they realize each
//! correspondence.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::ChevalleyAlgebra;
use crate::doubles::{build_double, delta_alpha, delta_alpha_max, p_eps, DoubleKind, QuadDouble};
use crate::error::{LieError, Result};
use crate::grading::alpha_grading;
use crate::laurent::{perp_in_order, LaurentElem, SeriesCase, SourceSpace};
use crate::linalg::{self, combine, q, LinearMap, SparseVec, Subspace, Q};
use crate::root_system::CartanLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    A1,
    A2,
    A3,
    B1,
    B2,
    C1,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [TheoremId::A1, TheoremId::A2, TheoremId::A3, TheoremId::B1, TheoremId::B2, TheoremId::C1];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::A1 => "A1",
            TheoremId::A2 => "A2",
            TheoremId::A3 => "A3",
            TheoremId::B1 => "B1",
            TheoremId::B2 => "B2",
            TheoremId::C1 => "C1",
        }
    }

    /// Only A3 and B2 allow a simple root with mark `k > 1`.
    pub fn needs_mark_one(self) -> bool {
        !matches!(self, TheoremId::A3 | TheoremId::B2)
    }

    pub fn target_kind(self) -> DoubleKind {
        match self {
            TheoremId::A1 | TheoremId::B1 => DoubleKind::GxG,
            TheoremId::A2 | TheoremId::C1 => DoubleKind::GEps,
            TheoremId::A3 | TheoremId::B2 => DoubleKind::LAlphaxG,
        }
    }

    /// The series case the theorem is about; `c1, c2` are used by A1 only.
    pub fn default_case(self, c1: &Q, c2: &Q) -> Result<SeriesCase> {
        Ok(match self {
            TheoremId::A1 => SeriesCase::generic(c1.clone(), c2.clone())?,
            TheoremId::A2 => SeriesCase::IDoublePole,
            TheoremId::A3 => SeriesCase::ISinglePole,
            TheoremId::B1 => SeriesCase::IISinglePole,
            TheoremId::B2 => SeriesCase::IIRational,
            TheoremId::C1 => SeriesCase::III,
        })
    }

    pub fn accepts(self, case: &SeriesCase) -> bool {
        matches!(
            (self, case),
            (TheoremId::A1, SeriesCase::IGeneric { .. })
                | (TheoremId::A2, SeriesCase::IDoublePole)
                | (TheoremId::A3, SeriesCase::ISinglePole)
                | (TheoremId::B1, SeriesCase::IISinglePole)
                | (TheoremId::B2, SeriesCase::IIRational)
                | (TheoremId::C1, SeriesCase::III)
        )
    }

    /// Whether a mismatch with the printed complement only gets flagged.
    pub fn printed_perp_advisory(self) -> bool {
        matches!(self, TheoremId::A3 | TheoremId::B2)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| LieError::Parse(format!("unknown theorem {s:?}")))
    }
}

fn qpow(c: &Q, e: i32) -> Q {
    let mut out = Q::one();
    for _ in 0..e.unsigned_abs() {
        out *= c;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

#[derive(Clone, Debug)]
pub struct QuotientMap<'a> {
    theorem: TheoremId,
    source: SourceSpace<'a>,
    target: QuadDouble<'a>,
    map: LinearMap,
}

fn check_applicable(theorem: TheoremId, alg: &ChevalleyAlgebra, alpha: usize, case: &SeriesCase) -> Result<u32> {
    let k = alg.root_system().mark(alpha)?;
    if !theorem.accepts(case) {
        return Err(LieError::CaseMismatch { theorem: theorem.name().into(), case: case.name().into() });
    }
    if theorem.needs_mark_one() && k > 1 {
        return Err(LieError::MarkObstruction { theorem: theorem.name().into(), k });
    }
    Ok(k)
}

pub fn build_phi<'a>(
    theorem: TheoremId,
    alg: &'a ChevalleyAlgebra,
    alpha: usize,
    case: SeriesCase,
    window: usize,
) -> Result<QuotientMap<'a>> {
    let k = check_applicable(theorem, alg, alpha, &case)? as i32;
    let source = SourceSpace::new(alg, case.clone(), alpha, window)?;
    let target = build_double(theorem.target_kind(), alg, Some(alpha))?;
    let grading = source.order().grading().clone();
    let zero = SparseVec::new();
    let mut columns = Vec::with_capacity(source.dim());
    for &(x, d) in source.order().monomials() {
        let ex = SparseVec::unit(x);
        let r = grading.degree(x);
        // value at u = 0 of the L_α-components, in the normalisation of the order
        let at_zero = || if (r == k && d == -1) || (r == 0 && d == 0) || (r == -k && d == 1) { ex.clone() } else { zero.clone() };
        let (first, second) = match theorem {
            TheoremId::A1 => {
                let SeriesCase::IGeneric { c1, c2 } = &case else { unreachable!() };
                (ex.scaled(&qpow(c1, -d)), ex.scaled(&qpow(c2, -d)))
            }
            TheoremId::A2 => (ex.clone(), ex.scaled(&q(-d as i64))),
            TheoremId::A3 => (at_zero(), ex.clone()),
            TheoremId::B1 => (ex.clone(), zero.clone()),
            TheoremId::B2 => (at_zero(), zero.clone()),
            TheoremId::C1 => (zero.clone(), zero.clone()),
        };
        columns.push(target.join(&first, &second)?);
    }
    for x in 0..case.extras_len(alg.dim()) {
        let (first, second) = match (theorem, x < alg.dim()) {
            (TheoremId::C1, true) => (SparseVec::unit(x), zero.clone()),
            (TheoremId::C1, false) => (zero.clone(), SparseVec::unit(x - alg.dim())),
            _ => (zero.clone(), SparseVec::unit(x)),
        };
        columns.push(target.join(&first, &second)?);
    }
    let map = LinearMap::from_columns(target.dim(), columns);
    Ok(QuotientMap { theorem, source, target, map })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// From the source (order coordinates) into the double.
    Forward,
    /// Full preimage in the source of a subspace of the double.
    Backward,
}

impl<'a> QuotientMap<'a> {
    pub fn theorem(&self) -> TheoremId {
        self.theorem
    }

    pub fn source(&self) -> &SourceSpace<'a> {
        &self.source
    }

    pub fn target(&self) -> &QuadDouble<'a> {
        &self.target
    }

    pub fn matrix(&self) -> &LinearMap {
        &self.map
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.map.apply(v)
    }

    /// Image of `g[u] ∩ 𝕆_α` (under the case embedding) in the double.
    pub fn polynomial_image(&self) -> Subspace {
        self.map.image(&self.source.polynomial_part())
    }

    /// The reference subalgebra the polynomial image should equal.
    pub fn reference(&self) -> Result<Subspace> {
        let alg = self.source.algebra();
        let alpha = self.source.order().alpha();
        match self.theorem {
            TheoremId::A1 | TheoremId::B1 => delta_alpha(alg, alpha),
            TheoremId::A2 | TheoremId::C1 => p_eps(alg, alpha),
            TheoremId::A3 | TheoremId::B2 => delta_alpha_max(alg, alpha),
        }
    }
}

pub fn transfer_subalgebra(map: &QuotientMap<'_>, sub: &Subspace, direction: Direction) -> Result<Subspace> {
    match direction {
        Direction::Forward => {
            if sub.ambient() != map.source.dim() {
                return Err(LieError::DimensionMismatch { expected: map.source.dim(), found: sub.ambient() });
            }
            Ok(map.map.image(sub))
        }
        Direction::Backward => {
            if sub.ambient() != map.target.dim() {
                return Err(LieError::NotInOrder);
            }
            map.map.preimage(sub)
        }
    }
}

/// Whether the residue form vanishes on `sub` (a subspace of source coordinates).
pub fn is_case_isotropic(map: &QuotientMap<'_>, sub: &Subspace) -> bool {
    let gram = map.source.gram_rows();
    let rows = sub.rows();
    (0..rows.len()).all(|i| (i..rows.len()).all(|j| linalg::bilinear(&gram, &rows[i], &rows[j]).is_zero()))
}

/// Whether `sub + (g[u] ∩ 𝕆_α)` is the whole source, i.e. transversality in the quotient.
pub fn spans_with_polynomials(map: &QuotientMap<'_>, sub: &Subspace) -> Result<bool> {
    Ok(sub.sum(&map.source.polynomial_part())?.dim() == map.source.dim())
}

/// Lift of `a + ε b ∈ g[ε]` through the A2 map, following the explicit inverse
/// polynomials: `u⁻¹((2a₁ - b₁) + u⁻¹(b₁ - a₁))`, `(a₀ - b₀) + u⁻¹ b₀`, `u(-b₋₁) + (a₋₁ + b₋₁)`.
pub fn a2_pullback(alg: &ChevalleyAlgebra, alpha: usize, a: &SparseVec, b: &SparseVec) -> Result<LaurentElem> {
    let gr = alpha_grading(alg, alpha)?;
    if gr.k() > 1 {
        return Err(LieError::MarkObstruction { theorem: "A2".into(), k: gr.k() });
    }
    let part = |v: &SparseVec, r: i32| SparseVec::from_terms(v.iter().filter(|(i, _)| gr.degree(*i) == r).map(|(i, c)| (i, c.clone())));
    let (a1, b1) = (part(a, 1), part(b, 1));
    let (a0, b0) = (part(a, 0), part(b, 0));
    let (am, bm) = (part(a, -1), part(b, -1));
    let mut f = LaurentElem::new();
    f.add_term(-1, &a1.scaled(&q(2)).sub(&b1));
    f.add_term(-2, &b1.sub(&a1));
    f.add_term(0, &a0.sub(&b0));
    f.add_term(-1, &b0);
    f.add_term(1, &bm.neg());
    f.add_term(0, &am.add(&bm));
    Ok(f)
}

/// Complement printed in the statements, generated inside the window.
pub fn printed_perp(map: &QuotientMap<'_>) -> Subspace {
    let src = &map.source;
    let order = src.order();
    let window = src.window() as i32;
    let k = order.k() as i32;
    let dim = src.dim();
    let idx = |x: usize, d: i32| order.index_of(x, d);
    // multiply a monomial by a polynomial in t = u⁻¹ given by its coefficients
    let times = |x: usize, d: i32, poly: &[Q]| -> Option<SparseVec> {
        let terms: Option<Vec<_>> = poly.iter().enumerate().map(|(j, c)| idx(x, d - j as i32).map(|p| (p, c.clone()))).collect();
        terms.map(SparseVec::from_terms)
    };
    let mut gens = Vec::new();
    let mut from_poly = |poly: Vec<Q>| {
        for &(x, d) in order.monomials() {
            if let Some(v) = times(x, d, &poly) {
                gens.push(v);
            }
        }
    };
    match map.theorem {
        TheoremId::A1 => {
            let SeriesCase::IGeneric { c1, c2 } = src.case() else { unreachable!() };
            from_poly(vec![c1 * c2, -(c1 + c2), Q::one()]);
        }
        TheoremId::A2 => from_poly(vec![q(1), q(-2), q(1)]),
        TheoremId::B1 => from_poly(vec![q(-1), q(1)]),
        TheoremId::C1 => gens.extend((0..order.dim()).map(SparseVec::unit)),
        TheoremId::A3 => {
            // (1 - u) u^{e - j} x, e = -3 on g_k, -2 on g_0..g_{k-1}, -1 on g_{-k}..g_{-1}
            for x in 0..src.algebra().dim() {
                let r = order.grading().degree(x);
                let e = if r == k { -3 } else if r >= 0 { -2 } else { -1 };
                for top in (-window..=e).rev() {
                    if let (Some(p), Some(p1)) = (idx(x, top), idx(x, top + 1)) {
                        gens.push(SparseVec::from_terms([(p, q(1)), (p1, q(-1))]));
                    }
                }
            }
        }
        TheoremId::B2 => {
            for x in 0..src.algebra().dim() {
                let r = order.grading().degree(x);
                let degrees: Vec<i32> = if r == k {
                    vec![-2]
                } else if r >= 0 {
                    (-window..=-1).collect()
                } else {
                    (-window..=0).collect()
                };
                gens.extend(degrees.into_iter().filter_map(|d| idx(x, d)).map(SparseVec::unit));
            }
        }
    }
    Subspace::span(dim, &gens)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub is_lie_hom: bool,
    pub kernel_equals_perp: bool,
    pub surjective: bool,
    pub image_of_polynomials_matches: bool,
    pub induced_form_proportional: bool,
    pub window_stable: bool,
}

impl Flags {
    pub fn all(&self) -> bool {
        self.is_lie_hom
            && self.kernel_equals_perp
            && self.surjective
            && self.image_of_polynomials_matches
            && self.induced_form_proportional
            && self.window_stable
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintedPerp {
    Match,
    Divergent,
}

impl PrintedPerp {
    pub fn as_str(self) -> &'static str {
        match self {
            PrintedPerp::Match => "match",
            PrintedPerp::Divergent => "divergent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub algebra: CartanLabel,
    pub alpha: usize,
    pub k: u32,
    pub case: SeriesCase,
    pub window: usize,
    pub flags: Flags,
    pub mu: Option<Q>,
    pub printed_perp: PrintedPerp,
    pub diagnostics: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.flags.all() && (self.printed_perp == PrintedPerp::Match || self.theorem.printed_perp_advisory())
    }
}

fn describe(src: &SourceSpace<'_>, v: &SparseVec) -> String {
    let alg = src.algebra();
    let m = src.laurent_dim();
    let n = alg.dim();
    let terms: Vec<String> = v
        .iter()
        .map(|(i, c)| {
            let what = if i < m {
                let (x, d) = src.order().monomial(i);
                format!("u^{d} {}", alg.label(x))
            } else if i < m + n {
                format!("[{}]", alg.label(i - m))
            } else {
                format!("[eps {}]", alg.label(i - m - n))
            };
            format!("{c}*{what}")
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn subspace_witness(src: &SourceSpace<'_>, a: &Subspace, b: &Subspace, a_name: &str, b_name: &str) -> Option<String> {
    if let Some(v) = a.rows().iter().find(|v| !b.contains(v)) {
        return Some(format!("in {a_name} but not {b_name}: {}", describe(src, v)));
    }
    b.rows().iter().find(|v| !a.contains(v)).map(|v| format!("in {b_name} but not {a_name}: {}", describe(src, v)))
}

/// Run the five checks (homomorphism, kernel, surjectivity, polynomial image,
/// form proportionality) plus window stability and the printed complement.
pub fn verify_phi(theorem: TheoremId, alg: &ChevalleyAlgebra, alpha: usize, case: SeriesCase, window: usize) -> Result<VerificationReport> {
    if window < 6 {
        return Err(LieError::WindowTooSmall { min: 6, found: window });
    }
    let k = check_applicable(theorem, alg, alpha, &case)?;
    let phi = build_phi(theorem, alg, alpha, case.clone(), window)?;
    let src = &phi.source;
    let tgt = &phi.target;
    let dim = src.dim();
    let mut flags = Flags::default();
    let mut diagnostics = Vec::new();

    // (a) homomorphism on basis pairs whose bracket stays in the window
    let hom_failure = (0..dim).into_par_iter().find_map_first(|i| {
        let pi = phi.apply(&SparseVec::unit(i));
        for j in i + 1..dim {
            let Ok(bij) = src.bracket_basis(i, j) else { continue };
            let pj = phi.apply(&SparseVec::unit(j));
            if phi.apply(&bij) != tgt.bracket_vec(&pi, &pj) {
                return Some((i, j));
            }
        }
        None
    });
    flags.is_lie_hom = hom_failure.is_none();
    if let Some((i, j)) = hom_failure {
        diagnostics.push(format!(
            "homomorphism fails on ({}, {})",
            describe(src, &SparseVec::unit(i)),
            describe(src, &SparseVec::unit(j))
        ));
    }

    // (b) kernel against the radical of the residue form
    let gram = src.gram_rows();
    let (perp, stable) = match perp_in_order(alg, &case, alpha, window) {
        Ok(p) => (p.perp, true),
        Err(LieError::UnstableWindow { .. }) => (linalg::kernel(dim, &gram), false),
        Err(e) => return Err(e),
    };
    flags.window_stable = stable;
    if !stable {
        diagnostics.push(format!("complement differs between windows {window} and {}", window + 2));
    }
    let kernel = phi.map.kernel();
    flags.kernel_equals_perp = kernel == perp;
    if let Some(w) = subspace_witness(src, &kernel, &perp, "ker phi", "perp") {
        diagnostics.push(w);
    }

    // (c) surjectivity
    let rank = phi.map.rank();
    flags.surjective = rank == tgt.dim();
    if !flags.surjective {
        diagnostics.push(format!("rank {rank} < target dimension {}", tgt.dim()));
    }

    // (d) Q_case = μ · Q_target on all basis pairs
    let images: Vec<SparseVec> = (0..dim).map(|j| phi.map.column(j).clone()).collect();
    let form_images: Vec<SparseVec> = images
        .iter()
        .map(|v| combine(v.iter().map(|(i, c)| (c.clone(), &tgt.form_rows()[i]))))
        .collect();
    let mut mu: Option<Q> = None;
    let mut form_failure = None;
    'outer: for i in 0..dim {
        for j in i..dim {
            let qs = gram[i].get(j);
            let qt = images[i].dot(&form_images[j]);
            match &mu {
                None if !qt.is_zero() => {
                    let m = &qs / &qt;
                    if m.is_zero() {
                        form_failure = Some((i, j, qs, qt));
                        break 'outer;
                    }
                    mu = Some(m);
                }
                None => {
                    if !qs.is_zero() {
                        form_failure = Some((i, j, qs, qt));
                        break 'outer;
                    }
                }
                Some(m) => {
                    if qs != m * &qt {
                        form_failure = Some((i, j, qs, qt));
                        break 'outer;
                    }
                }
            }
        }
    }
    flags.induced_form_proportional = mu.is_some() && form_failure.is_none();
    if let Some((i, j, qs, qt)) = form_failure {
        diagnostics.push(format!(
            "form not proportional on ({}, {}): residue {qs}, target {qt}",
            describe(src, &SparseVec::unit(i)),
            describe(src, &SparseVec::unit(j))
        ));
    }
    let mu = if flags.induced_form_proportional { mu } else { None };

    // (e) image of the polynomial part
    let image = phi.polynomial_image();
    let reference = phi.reference()?;
    flags.image_of_polynomials_matches = image == reference;
    if !flags.image_of_polynomials_matches {
        diagnostics.push(format!("polynomial image has dimension {}, reference {}", image.dim(), reference.dim()));
    }

    // printed complement against the computed one
    let printed = printed_perp(&phi);
    let printed_status = match subspace_witness(src, &printed, &perp, "printed perp", "computed perp") {
        None => PrintedPerp::Match,
        Some(w) => {
            diagnostics.push(w);
            PrintedPerp::Divergent
        }
    };

    Ok(VerificationReport {
        theorem,
        algebra: alg.root_system().label(),
        alpha,
        k,
        case,
        window,
        flags,
        mu,
        printed_perp: printed_status,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_chevalley_algebra;
    use crate::doubles::pairs_span;
    use crate::linalg::qr;
    use crate::root_system::{build_root_system, RootVec};

    fn alg(s: &str) -> ChevalleyAlgebra {
        build_chevalley_algebra(build_root_system(s.parse().unwrap()).unwrap()).unwrap()
    }

    fn generic(c1: i64, c2: i64) -> SeriesCase {
        SeriesCase::generic(q(c1), q(c2)).unwrap()
    }

    #[test]
    fn a1_map_examples() {
        let a = alg("A1");
        let phi = build_phi(TheoremId::A1, &a, 0, generic(1, 2), 6).unwrap();
        let h = a.cartan_basis(0);
        let i = phi.source().order().index_of(h, -1).unwrap();
        let hv = SparseVec::unit(h);
        assert_eq!(phi.apply(&SparseVec::unit(i)), phi.target().join(&hv, &hv.scaled(&q(2))).unwrap());
    }

    #[test]
    fn a2_map_and_pullback() {
        let a = alg("A1");
        let phi = build_phi(TheoremId::A2, &a, 0, SeriesCase::IDoublePole, 6).unwrap();
        let e = a.root_basis(&RootVec(vec![1])).unwrap();
        let i = phi.source().order().index_of(e, -1).unwrap();
        let ev = SparseVec::unit(e);
        assert_eq!(phi.apply(&SparseVec::unit(i)), phi.target().join(&ev, &ev).unwrap());
        let a_el = SparseVec::from_terms([(0, q(3)), (1, qr(-1, 2)), (2, q(5))]);
        let b_el = SparseVec::from_terms([(0, q(-2)), (1, q(7)), (2, qr(2, 3))]);
        let f = a2_pullback(&a, 0, &a_el, &b_el).unwrap();
        let src = phi.source();
        let v = src
            .from_case_elem(&crate::laurent::CaseElem { laurent: f, ..Default::default() })
            .unwrap();
        assert_eq!(phi.apply(&v), phi.target().join(&a_el, &b_el).unwrap());
    }

    #[test]
    fn preconditions() {
        let g2 = alg("G2");
        for alpha in 0..2 {
            let err = build_phi(TheoremId::A1, &g2, alpha, generic(1, 2), 6).unwrap_err();
            assert!(matches!(err, LieError::MarkObstruction { .. }));
        }
        let a = alg("A1");
        assert!(matches!(
            build_phi(TheoremId::A1, &a, 0, SeriesCase::III, 6),
            Err(LieError::CaseMismatch { .. })
        ));
        assert!(matches!(
            verify_phi(TheoremId::A1, &a, 0, generic(1, 2), 5),
            Err(LieError::WindowTooSmall { min: 6, found: 5 })
        ));
    }

    #[test]
    fn sl2_all_theorems_pass() {
        let a = alg("A1");
        for t in TheoremId::ALL {
            let case = t.default_case(&q(1), &q(2)).unwrap();
            let r = verify_phi(t, &a, 0, case, 6).unwrap();
            assert!(r.passed(), "{t}: {:?}", r);
        }
        let r = verify_phi(TheoremId::A1, &a, 0, generic(1, 2), 6).unwrap();
        assert_eq!(r.mu, Some(q(-1)));
        let r = verify_phi(TheoremId::A1, &a, 0, generic(2, 5), 6).unwrap();
        assert_eq!(r.mu, Some(qr(-1, 3)));
    }

    #[test]
    fn g2_general_mark() {
        let a = alg("G2");
        for alpha in 0..2 {
            for t in [TheoremId::A3, TheoremId::B2] {
                let case = t.default_case(&q(1), &q(2)).unwrap();
                let r = verify_phi(t, &a, alpha, case, 6).unwrap();
                assert!(r.flags.all(), "{t} α{}: {:?}", alpha + 1, r);
            }
        }
    }

    #[test]
    fn transfer_round_trip() {
        let a = alg("A1");
        let phi = build_phi(TheoremId::A1, &a, 0, generic(1, 2), 6).unwrap();
        let e = SparseVec::unit(a.root_basis(&RootVec(vec![1])).unwrap());
        let h = SparseVec::unit(a.cartan_basis(0));
        let z = SparseVec::new();
        let w = pairs_span(phi.target(), &[(e.clone(), z.clone()), (z, e), (h.clone(), h.neg())]).unwrap();
        let back = transfer_subalgebra(&phi, &w, Direction::Backward).unwrap();
        let perp = perp_in_order(&a, phi.source().case(), 0, 6).unwrap().perp;
        assert!(back.contains_subspace(&perp));
        assert_eq!(transfer_subalgebra(&phi, &back, Direction::Forward).unwrap(), w);
        assert!(is_case_isotropic(&phi, &back));
        assert!(spans_with_polynomials(&phi, &back).unwrap());
        let delta = transfer_subalgebra(&phi, &phi.reference().unwrap(), Direction::Backward).unwrap();
        assert!(!spans_with_polynomials(&phi, &delta).unwrap());
        assert_eq!(transfer_subalgebra(&phi, &Subspace::zero(5), Direction::Backward).unwrap_err(), LieError::NotInOrder);
    }
}
