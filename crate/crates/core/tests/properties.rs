use std::sync::OnceLock;

use num_traits::Zero;
use proptest::prelude::*;

use liebialg::laurent::{case_bracket, residue_form, CaseElem};
use liebialg::linalg::{self, q};
use liebialg::*;

const LABELS: [&str; 4] = ["A2", "B2", "G2", "A3"];

fn algebras() -> &'static Vec<ChevalleyAlgebra> {
    static ALGS: OnceLock<Vec<ChevalleyAlgebra>> = OnceLock::new();
    ALGS.get_or_init(|| LABELS.iter().map(|s| build_chevalley_algebra(build_root_system(s.parse().unwrap()).unwrap()).unwrap()).collect())
}

fn dense(v: &[i64]) -> SparseVec {
    SparseVec::from_dense(&v.iter().map(|&x| q(x)).collect::<Vec<_>>())
}

fn element(dim: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec(-3i64..=3, dim).prop_map(|v| dense(&v))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<SparseVec>> {
    prop::collection::vec(element(cols), rows)
}

fn alg_and_three() -> impl Strategy<Value = (usize, SparseVec, SparseVec, SparseVec)> {
    (0..LABELS.len()).prop_flat_map(|i| {
        let n = algebras()[i].dim();
        (Just(i), element(n), element(n), element(n))
    })
}

fn laurent(dim: usize) -> impl Strategy<Value = LaurentElem> {
    prop::collection::vec((-3i32..=2, element(dim)), 1..4).prop_map(|terms| {
        let mut f = LaurentElem::new();
        for (d, x) in terms {
            f.add_term(d, &x);
        }
        f
    })
}

fn case_elem(case: SeriesCase, dim: usize) -> impl Strategy<Value = CaseElem> {
    (laurent(dim), element(dim), element(dim)).prop_map(move |(f, x2, x3)| {
        let mut e = CaseElem::zero_for(&case);
        e.laurent = f;
        e.g_part = e.g_part.map(|_| x2);
        e.eps_part = e.eps_part.map(|_| x3);
        e
    })
}

/// A series case with three elements of its shape over sl3.
fn case_triple() -> impl Strategy<Value = (SeriesCase, CaseElem, CaseElem, CaseElem)> {
    let n = algebras()[0].dim();
    prop::sample::select(cases()).prop_flat_map(move |c| (Just(c.clone()), case_elem(c.clone(), n), case_elem(c.clone(), n), case_elem(c, n)))
}

fn cases() -> Vec<SeriesCase> {
    vec![
        SeriesCase::generic(q(1), q(2)).unwrap(),
        SeriesCase::IDoublePole,
        SeriesCase::ISinglePole,
        SeriesCase::IRational,
        SeriesCase::IISinglePole,
        SeriesCase::IIRational,
        SeriesCase::III,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn span_is_canonical(rows in matrix(4, 6), mix in prop::collection::vec(-2i64..=2, 16)) {
        let a = Subspace::span(6, &rows);
        // an invertible (unitriangular) recombination of the rows
        let mixed: Vec<SparseVec> = (0..4)
            .map(|i| (i + 1..4).fold(rows[i].clone(), |acc, j| acc.add(&rows[j].scaled(&q(mix[4 * i + j])))))
            .collect();
        let b = Subspace::span(6, &mixed);
        prop_assert_eq!(&a, &b);
        prop_assert!(rows.iter().all(|r| a.contains(r)));
    }

    #[test]
    fn rank_nullity(rows in matrix(3, 7)) {
        let ker = linalg::kernel(7, &rows);
        prop_assert_eq!(ker.dim() + linalg::rank(7, &rows), 7);
        for v in ker.rows() {
            prop_assert!(rows.iter().all(|r| r.dot(v).is_zero()));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(a in matrix(3, 6), b in matrix(3, 6)) {
        let (sa, sb) = (Subspace::span(6, &a), Subspace::span(6, &b));
        let sum = sa.sum(&sb).unwrap();
        let meet = sa.intersection(&sb).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
        prop_assert!(sa.contains_subspace(&meet) && sb.contains_subspace(&meet));
    }

    #[test]
    fn bracket_is_a_lie_bracket((i, x, y, z) in alg_and_three()) {
        let g = &algebras()[i];
        prop_assert_eq!(g.bracket_vec(&x, &y), g.bracket_vec(&y, &x).neg());
        let jacobi = g.bracket_vec(&x, &g.bracket_vec(&y, &z))
            .add(&g.bracket_vec(&y, &g.bracket_vec(&z, &x)))
            .add(&g.bracket_vec(&z, &g.bracket_vec(&x, &y)));
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(g.killing_vec(&g.bracket_vec(&x, &y), &z), g.killing_vec(&x, &g.bracket_vec(&y, &z)));
        prop_assert_eq!(g.killing_vec(&x, &y), g.killing_vec(&y, &x));
    }

    #[test]
    fn residue_form_symmetric_and_invariant((case, a, b, d) in case_triple()) {
        let g = &algebras()[0];
        let form = |x: &CaseElem, y: &CaseElem| residue_form(g, &case, x, y).unwrap();
        prop_assert_eq!(form(&a, &b), form(&b, &a));
        let window = 20;
        let ab = case_bracket(g, &case, &a, &b, window).unwrap();
        let bd = case_bracket(g, &case, &b, &d, window).unwrap();
        prop_assert_eq!(form(&ab, &d), form(&a, &bd));
    }

    #[test]
    fn admissibility_matches_orbit_simulation(perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle(), mask in 0u8..16) {
        let domain: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
        let triple = TripleRep::new(Setting::Simple, domain.iter().map(|&i| (Node::Simple(i), Node::Simple(perm[i]))));
        // brute force: follow every orbit for |Γ₁| + 1 steps
        let escapes = domain.iter().all(|&s| {
            let mut x = s;
            (0..=domain.len()).any(|_| {
                x = perm[x];
                !domain.contains(&x)
            })
        });
        prop_assert_eq!(is_admissible(&triple, Orientation::Untwisted), escapes);
        prop_assert_eq!(is_admissible(&triple, Orientation::Reversed), escapes);
    }
}

#[test]
fn enumerated_triples_are_isometries_with_the_right_abelian_part() {
    for s in ["A3", "B3", "G2"] {
        let alg = build_chevalley_algebra(build_root_system(s.parse().unwrap()).unwrap()).unwrap();
        let rs = alg.root_system();
        for alpha in 0..rs.rank() {
            for setting in [Setting::Simple, Setting::Extended] {
                let list = enumerate_triples(rs, alpha, setting, Orientation::Untwisted, triples::DEFAULT_SIZE_BOUND).unwrap();
                assert_eq!(list.iter().filter(|t| t.triple.iso.is_empty()).count(), 1);
                for t in &list {
                    for &(a, b) in &t.triple.iso {
                        for &(c, d) in &t.triple.iso {
                            assert_eq!(rs.inner(&a.root(rs), &c.root(rs)), rs.inner(&b.root(rs), &d.root(rs)));
                        }
                    }
                    let n = rs.rank();
                    let expected = (n - t.triple.gamma1.len()) + (n - t.triple.gamma2.len());
                    assert_eq!(abelian_part(&alg, &t.triple).dim(), expected, "{s} {:?}", t.triple);
                }
            }
        }
    }
}

#[test]
fn verified_candidates_pull_back_isotropically() {
    use liebialg::quotient::is_case_isotropic;
    let row = |v: &[i64]| Subspace::span(v.len(), &[dense(v)]);
    let cases = [
        ("A1", TripleRep::empty(Setting::Simple), row(&[1, -1])),
        ("A1", TripleRep::empty(Setting::Extended), row(&[1, -1])),
        ("A2", TripleRep::new(Setting::Simple, [(Node::Simple(0), Node::Simple(1))]), row(&[1, 2, -2, -1])),
        ("A2", TripleRep::new(Setting::Extended, [(Node::Lowest, Node::Simple(1))]), row(&[1, -1, -2, -1])),
    ];
    for (s, triple, ia) in cases {
        let alg = build_chevalley_algebra(build_root_system(s.parse().unwrap()).unwrap()).unwrap();
        let c = build_candidate_w(&alg, 0, &triple, &ia, Orientation::Untwisted).unwrap();
        assert!(c.subalgebra && c.lagrangian && c.transversal, "{s} {triple:?}");
        let theorem = match triple.setting {
            Setting::Simple => TheoremId::A1,
            Setting::Extended => TheoremId::A3,
        };
        let phi = build_phi(theorem, &alg, 0, theorem.default_case(&q(1), &q(2)).unwrap(), 6).unwrap();
        let pulled = transfer_subalgebra(&phi, &c.w, Direction::Backward).unwrap();
        assert!(is_case_isotropic(&phi, &pulled), "{s} {triple:?}");
    }
}
