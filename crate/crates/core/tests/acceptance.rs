//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;

use liebialg::doubles::pairs_span;
use liebialg::laurent::CaseElem;
use liebialg::linalg::{q, qr};
use liebialg::quotient::{a2_pullback, is_case_isotropic};
use liebialg::report::{default_grid, RunConfig};
use liebialg::*;

const SUITE: [&str; 9] = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"];

type Outcome = std::result::Result<String, String>;

fn algebra(s: &str) -> ChevalleyAlgebra {
    build_chevalley_algebra(build_root_system(s.parse().unwrap()).unwrap()).unwrap()
}

fn suite() -> Vec<ChevalleyAlgebra> {
    SUITE.par_iter().map(|s| algebra(s)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cells(algs: &[ChevalleyAlgebra]) -> Vec<(&ChevalleyAlgebra, usize)> {
    algs.iter().flat_map(|a| (0..a.rank()).map(move |i| (a, i))).collect()
}

fn k_of(alg: &ChevalleyAlgebra, alpha: usize) -> u32 {
    alg.root_system().mark(alpha).unwrap()
}

fn five_checks(r: &VerificationReport) -> bool {
    let f = &r.flags;
    f.is_lie_hom && f.kernel_equals_perp && f.surjective && f.image_of_polynomials_matches && f.induced_form_proportional
}

fn run_theorem(t: TheoremId, alg: &ChevalleyAlgebra, alpha: usize, window: usize) -> std::result::Result<VerificationReport, String> {
    let case = t.default_case(&q(1), &q(2)).unwrap();
    let r = verify_phi(t, alg, alpha, case, window).map_err(|e| format!("{t} {} a{}: {e}", alg.root_system().label(), alpha + 1))?;
    if five_checks(&r) && r.flags.window_stable {
        Ok(r)
    } else {
        Err(format!("{t} {} a{} N={window}: {:?} {:?}", r.algebra, alpha + 1, r.flags, r.diagnostics))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for s in SUITE {
        let a = algebra(s);
        ensure(a.jacobi_violation().is_none(), || format!("{s}: Jacobi fails"))?;
        ensure(a.killing_invariance_violation().is_none(), || format!("{s}: Killing form not invariant"))?;
        let rs = a.root_system();
        let mut sum = vec![0i64; rs.rank()];
        for (j, &k) in rs.marks().iter().enumerate() {
            sum[j] += k as i64;
        }
        ensure(sum.iter().zip(&rs.highest().0).all(|(x, &y)| *x == y as i64), || format!("{s}: marks do not sum to the highest root"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("9 algebras in {:.1?}", t))
}

fn criterion_2(algs: &[ChevalleyAlgebra]) -> Outcome {
    cells(algs)
        .par_iter()
        .map(|&(a, alpha)| {
            let label = a.root_system().label();
            for (kind, sub) in [
                (DoubleKind::GxG, delta_alpha(a, alpha)),
                (DoubleKind::LAlphaxG, delta_alpha_max(a, alpha)),
                (DoubleKind::GEps, p_eps(a, alpha)),
            ] {
                let d = build_double(kind, a, Some(alpha)).map_err(|e| e.to_string())?;
                let sub = sub.map_err(|e| e.to_string())?;
                let ok = d.is_subalgebra(&sub).unwrap() && d.is_lagrangian(&sub).unwrap();
                ensure(ok, || format!("{label} a{} in {kind}", alpha + 1))?;
            }
            Ok(())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    Ok(format!("{} (algebra, root) pairs, three references each", cells(algs).len()))
}

fn criterion_3(algs: &[ChevalleyAlgebra]) -> Outcome {
    let mut applicable = 0;
    let mut obstructed = 0;
    for (a, alpha) in cells(algs) {
        if k_of(a, alpha) > 1 {
            let case = SeriesCase::generic(q(1), q(2)).unwrap();
            match verify_phi(TheoremId::A1, a, alpha, case, 6) {
                Err(LieError::MarkObstruction { .. }) => obstructed += 1,
                other => return Err(format!("{} a{}: expected obstruction, got {other:?}", a.root_system().label(), alpha + 1)),
            }
            continue;
        }
        applicable += 1;
    }
    let todo: Vec<_> = cells(algs).into_iter().filter(|&(a, alpha)| k_of(a, alpha) == 1).collect();
    todo.par_iter()
        .map(|&(a, alpha)| {
            for window in [6, 8] {
                let r = run_theorem(TheoremId::A1, a, alpha, window)?;
                ensure(r.mu == Some(q(-1)), || format!("{} a{} N={window}: mu {:?}", r.algebra, alpha + 1, r.mu))?;
            }
            for (c1, c2) in [(1, 2), (2, 5)] {
                let case = SeriesCase::generic(q(c1), q(c2)).unwrap();
                let r = verify_phi(TheoremId::A1, a, alpha, case, 6).map_err(|e| e.to_string())?;
                let expected = qr(1, c1 - c2);
                ensure(five_checks(&r) && r.mu == Some(expected.clone()), || {
                    format!("{} a{} ({c1},{c2}): mu {:?}, expected {expected}", r.algebra, alpha + 1, r.mu)
                })?;
            }
            Ok(())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    Ok(format!("{applicable} roots pass at N=6,8 with mu=1/(c1-c2); {obstructed} roots obstructed"))
}

/// `p(u) = Σ u^d x_d` maps to `Σ x_d + ε Σ (-d) x_d` under the A2 map.
fn a2_image(f: &LaurentElem) -> (SparseVec, SparseVec) {
    let mut a = SparseVec::default();
    let mut b = SparseVec::default();
    for (&d, x) in f.terms() {
        a = a.add(x);
        b = b.add(&x.scaled(&q(-d as i64)));
    }
    (a, b)
}

fn criterion_4(algs: &[ChevalleyAlgebra]) -> Outcome {
    let todo: Vec<_> = cells(algs).into_iter().filter(|&(a, alpha)| k_of(a, alpha) == 1).collect();
    todo.par_iter()
        .map(|&(a, alpha)| {
            for t in [TheoremId::A2, TheoremId::B1, TheoremId::C1] {
                run_theorem(t, a, alpha, 6)?;
            }
            // explicit inverse on g_1: a ↦ u⁻¹(2a) - u⁻²a, b ↦ -u⁻¹b + u⁻²b
            let g1 = alpha_grading(a, alpha).unwrap().piece(1).to_vec();
            let case = SeriesCase::IDoublePole;
            let phi = build_phi(TheoremId::A2, a, alpha, case.clone(), 6).map_err(|e| e.to_string())?;
            for &x in &g1 {
                let ex = SparseVec::unit(x);
                for (av, bv) in [(ex.clone(), SparseVec::default()), (SparseVec::default(), ex.clone()), (ex.clone(), ex.scaled(&q(3)))] {
                    let f = a2_pullback(a, alpha, &av, &bv).map_err(|e| e.to_string())?;
                    let expected_m1 = av.scaled(&q(2)).sub(&bv);
                    let expected_m2 = bv.sub(&av);
                    ensure(f.coeff(-1) == expected_m1 && f.coeff(-2) == expected_m2 && f.terms().keys().all(|d| [-1, -2].contains(d)), || {
                        format!("{} a{}: pullback of {} has terms {:?}", a.root_system().label(), alpha + 1, a.label(x), f.terms())
                    })?;
                    ensure(a2_image(&f) == (av.clone(), bv.clone()), || "pullback does not invert the map".into())?;
                    let mut e = CaseElem::zero_for(&case);
                    e.laurent = f.clone();
                    let v = phi.source().from_case_elem(&e).map_err(|e| e.to_string())?;
                    let target = phi.target().join(&av, &bv).unwrap();
                    ensure(phi.apply(&v) == target, || "matrix image differs from the explicit inverse".into())?;
                }
            }
            Ok(g1.len())
        })
        .collect::<std::result::Result<Vec<_>, String>>()
        .map(|v| format!("{} roots pass A2/B1/C1; pullback exact on {} g_1 basis vectors", todo.len(), v.iter().sum::<usize>()))
}

fn criterion_5(algs: &[ChevalleyAlgebra]) -> Outcome {
    let all = cells(algs);
    let higher = all.iter().filter(|&&(a, alpha)| k_of(a, alpha) > 1).count();
    all.par_iter()
        .map(|&(a, alpha)| {
            for t in [TheoremId::A3, TheoremId::B2] {
                let r = run_theorem(t, a, alpha, 6)?;
                let phi = build_phi(t, a, alpha, r.case.clone(), 6).map_err(|e| e.to_string())?;
                let reference = delta_alpha_max(a, alpha).map_err(|e| e.to_string())?;
                ensure(phi.polynomial_image() == reference, || format!("{t} {} a{}: image is not the reference", r.algebra, alpha + 1))?;
            }
            if k_of(a, alpha) == 1 {
                let src = SourceSpace::new(a, SeriesCase::III, alpha, 6).map_err(|e| e.to_string())?;
                let perp = perp_in_order(a, &SeriesCase::III, alpha, 6).map_err(|e| e.to_string())?.perp;
                let laurent = Subspace::coordinate(src.dim(), 0..src.laurent_dim());
                ensure(perp == laurent, || format!("{} a{}: III complement is not the Laurent summand", a.root_system().label(), alpha + 1))?;
            }
            Ok(())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    Ok(format!("A3/B2 pass on all {} roots ({higher} with k>1); III complement is the Laurent summand", all.len()))
}

/// Brackets of complement rows, skipping pairs that leave the window.
fn closed_under_bracket(src: &SourceSpace<'_>, sub: &Subspace) -> bool {
    let rows = sub.rows();
    for (i, x) in rows.iter().enumerate() {
        'pairs: for y in &rows[i + 1..] {
            let mut acc = SparseVec::default();
            for (p, cp) in x.iter() {
                for (r, cr) in y.iter() {
                    match src.bracket_basis(p, r) {
                        Ok(b) => acc = acc.add(&b.scaled(&(cp * cr))),
                        Err(_) => continue 'pairs,
                    }
                }
            }
            if !sub.contains(&acc) {
                return false;
            }
        }
    }
    true
}

fn criterion_6(algs: &[ChevalleyAlgebra]) -> Outcome {
    let exact = [TheoremId::A1, TheoremId::A2, TheoremId::B1, TheoremId::C1];
    let flagged = [TheoremId::A3, TheoremId::B2];
    let small = ["A1", "A2", "B2", "G2"];
    let results = cells(algs)
        .par_iter()
        .map(|&(a, alpha)| {
            let mut divergent = Vec::new();
            let label = a.root_system().label().to_string();
            for t in exact.into_iter().chain(flagged) {
                if t.needs_mark_one() && k_of(a, alpha) > 1 {
                    continue;
                }
                let r = run_theorem(t, a, alpha, 6)?;
                if r.printed_perp == PrintedPerp::Divergent {
                    ensure(flagged.contains(&t), || format!("{t} {label} a{}: printed complement differs {:?}", alpha + 1, r.diagnostics))?;
                    ensure(r.diagnostics.iter().any(|d| d.contains("printed perp")), || format!("{t} {label}: divergence without witness"))?;
                    divergent.push(format!("{t} {label} a{}", alpha + 1));
                }
                if small.contains(&label.as_str()) {
                    let phi = build_phi(t, a, alpha, r.case.clone(), 6).map_err(|e| e.to_string())?;
                    let perp = perp_in_order(a, &r.case, alpha, 6).map_err(|e| e.to_string())?.perp;
                    ensure(is_case_isotropic(&phi, &perp), || format!("{t} {label}: complement not isotropic"))?;
                    ensure(closed_under_bracket(phi.source(), &perp), || format!("{t} {label}: complement not closed"))?;
                }
            }
            Ok(divergent)
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    let divergent: Vec<String> = results.into_iter().flatten().collect();
    let b2 = divergent.iter().filter(|d| d.starts_with("B2")).count();
    Ok(format!(
        "A1/A2/B1/C1 printed complements exact; {} flagged divergences ({b2} from B2, {} from A3)",
        divergent.len(),
        divergent.len() - b2
    ))
}

fn criterion_7() -> Outcome {
    let a2 = algebra("A2");
    let list = enumerate_triples(a2.root_system(), 0, Setting::Simple, Orientation::Untwisted, triples::DEFAULT_SIZE_BOUND).unwrap();
    let admissible = list.iter().filter(|t| t.admissible).count();
    ensure(admissible == 3, || format!("A2 has {admissible} admissible triples"))?;
    for s in SUITE {
        let rs = build_root_system(s.parse().unwrap()).unwrap();
        for alpha in 0..rs.rank() {
            for setting in [Setting::Simple, Setting::Extended] {
                let t = TripleRep::empty(setting);
                ensure(classify_type(&t, alpha, Orientation::Untwisted) == TripleType::TypeI, || format!("{s} a{}: empty triple", alpha + 1))?;
            }
        }
    }
    let a1 = algebra("A1");
    let (e, h) = (0, 2);
    let anti = Subspace::span(2, &[SparseVec::from_terms([(0, q(1)), (1, q(-1))])]);
    let c = build_candidate_w(&a1, 0, &TripleRep::empty(Setting::Simple), &anti, Orientation::Untwisted).map_err(|e| e.to_string())?;
    ensure(c.subalgebra && c.lagrangian && c.transversal, || format!("sl2 candidate: {c:?}"))?;
    let d = build_double(DoubleKind::GxG, &a1, None).unwrap();
    let zero = SparseVec::default();
    let unit = SparseVec::unit;
    let expected = pairs_span(
        &d,
        &[(unit(e), zero.clone()), (zero.clone(), unit(e)), (unit(h), unit(h).neg())],
    )
    .unwrap();
    ensure(c.w == expected, || "sl2 candidate is not span{(e,0),(0,e),(h,-h)}".into())?;
    let case = SeriesCase::generic(q(1), q(2)).unwrap();
    let phi = build_phi(TheoremId::A1, &a1, 0, case, 6).map_err(|e| e.to_string())?;
    let pulled = transfer_subalgebra(&phi, &c.w, Direction::Backward).map_err(|e| e.to_string())?;
    ensure(is_case_isotropic(&phi, &pulled), || "pullback is not isotropic".into())?;
    ensure(!pulled.dim().is_zero(), || "empty pullback".into())?;
    Ok(format!("3 admissible A2 triples; empty triple type I everywhere; sl2 candidate verified, pullback dim {}", pulled.dim()))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let config = |workers| RunConfig { algebras: default_grid(), workers, ..RunConfig::default() };
    let one = run_verify(&config(1)).map_err(|e| e.to_string())?;
    let eight = run_verify(&config(8)).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(one.render() == eight.render(), || "reports differ between 1 and 8 workers".into())?;
    ensure(!one.failed(), || "default grid has failures".into())?;
    ensure(t < Duration::from_secs(600), || format!("took {t:?}"))?;
    Ok(format!("{} entries byte-identical for 1 and 8 workers, two runs in {:.1?}", one.entries.len(), t))
}

fn main() {
    let algs = suite();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("algebra construction", Box::new(criterion_1)),
        ("reference subalgebras", Box::new(|| criterion_2(&algs))),
        ("theorem A1", Box::new(|| criterion_3(&algs))),
        ("theorems A2, B1, C1", Box::new(|| criterion_4(&algs))),
        ("theorems A3, B2", Box::new(|| criterion_5(&algs))),
        ("complement cross-check", Box::new(|| criterion_6(&algs))),
        ("triples", Box::new(criterion_7)),
        ("determinism", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {} ({name}): PASS [{t:.1?}] {msg}", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{t:.1?}] {msg}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
