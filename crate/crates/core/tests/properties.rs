use num_traits::Zero;
use proptest::prelude::*;

use toledo_core::exact_linalg::{
    determinant, form_nondegenerate, inverse, kernel_vectors, rank, rat, ratio, solve_linear, RatMatrix, Rational,
};
use toledo_core::grading::Grading;
use toledo_core::matrix_lie::{build_classical, jm_complete, ClassicalFamily, GradedMatrixAlgebra, ZetaSpec};
use toledo_core::root_system::{build_root_system, Family, LieType};
use toledo_core::toledo::{maximal_jm_subspace, toledo_report};

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
        let rows: Vec<&[i64]> = v.chunks(cols).collect();
        RatMatrix::from_i64(&rows)
    })
}

fn sized_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| int_matrix(r, c))
}

/// A small classical algebra with a label vector in {0, 1, 2}.
fn graded() -> impl Strategy<Value = GradedMatrixAlgebra> {
    let shapes = prop_oneof![
        (2usize..=5).prop_map(|n| (ClassicalFamily::Sl, n, n - 1)),
        (2usize..=3).prop_map(|r| (ClassicalFamily::So, 2 * r + 1, r)),
        (3usize..=4).prop_map(|r| (ClassicalFamily::So, 2 * r, r)),
        (1usize..=3).prop_map(|r| (ClassicalFamily::Sp, 2 * r, r)),
    ];
    shapes.prop_flat_map(|(fam, n, r)| {
        prop::collection::vec(0i64..=2, r)
            .prop_map(move |labels| build_classical(fam, n, Some(ZetaSpec::Labels(labels))).expect("valid grading"))
    })
}

fn graded_with_g1() -> impl Strategy<Value = GradedMatrixAlgebra> {
    graded().prop_filter("g_1 nonempty", |ga| ga.dim(1) > 0)
}

/// Element of `g_1` from coefficients in {−2, …, 2}.
fn element_of_g1(ga: &GradedMatrixAlgebra, coeffs: &[i64]) -> RatMatrix {
    let basis = ga.piece_basis(1);
    let c: Vec<Rational> = basis.iter().zip(coeffs.iter().cycle()).map(|(_, &k)| rat(k)).collect();
    ga.alg.combine(&basis, &c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in sized_matrix()) {
        let ker = kernel_vectors(&a);
        prop_assert_eq!(rank(&a) + ker.len(), a.cols());
        for v in &ker {
            let x = RatMatrix::column(v.clone());
            prop_assert!(a.matmul(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_recovers_consistent_rhs(a in sized_matrix(), seed in prop::collection::vec(-3i64..=3, 5)) {
        let x0 = RatMatrix::column(seed[..a.cols()].iter().map(|&k| rat(k)).collect());
        let b = a.matmul(&x0).unwrap();
        let x = solve_linear(&a, &b).unwrap().expect("consistent system");
        prop_assert_eq!(a.matmul(&x).unwrap(), b);
    }

    #[test]
    fn inverse_iff_nonzero_determinant(a in (1usize..=4).prop_flat_map(|n| int_matrix(n, n))) {
        let d = determinant(&a).unwrap();
        match inverse(&a).unwrap() {
            Some(inv) => {
                prop_assert!(!d.is_zero());
                prop_assert_eq!(a.matmul(&inv).unwrap(), RatMatrix::identity(a.rows()));
            }
            None => prop_assert!(d.is_zero()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degrees_add_under_bracket(ga in graded()) {
        let degs: Vec<i64> = ga.degrees().collect();
        for &i in &degs {
            for &j in &degs {
                for x in ga.piece_basis(i) {
                    for y in ga.piece_basis(j) {
                        prop_assert!(ga.in_piece(i + j, &x.bracket(&y)));
                    }
                }
            }
        }
    }

    #[test]
    fn pieces_are_symmetric_and_span(ga in graded()) {
        let total: usize = ga.dims().iter().map(|&(_, d)| d).sum();
        prop_assert_eq!(total, ga.alg.dim());
        for (j, d) in ga.dims() {
            prop_assert_eq!(ga.dim(-j), d);
        }
    }

    #[test]
    fn closure_jacobi_and_invariance(ga in graded(), picks in prop::collection::vec(0usize..1000, 3)) {
        let basis = ga.alg.basis();
        let [x, y, z] = [0, 1, 2].map(|k| &basis[picks[k] % basis.len()]);
        let xy = ga.alg.bracket(x, y);
        prop_assert!(ga.alg.contains(&xy));
        let back = ga.alg.from_coords(&ga.alg.coords(&xy));
        prop_assert_eq!(&back, &xy);
        let jacobi = &(&ga.alg.bracket(x, &ga.alg.bracket(y, z)) + &ga.alg.bracket(y, &ga.alg.bracket(z, x)))
            + &ga.alg.bracket(z, &xy);
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(ga.form(&xy, z), ga.form(x, &ga.alg.bracket(y, z)));
    }

    #[test]
    fn graded_triples(ga in graded_with_g1(), coeffs in prop::collection::vec(-2i64..=2, 1..6)) {
        let e = element_of_g1(&ga, &coeffs);
        prop_assume!(!e.is_zero());
        let t = jm_complete(&ga, &e).unwrap();
        prop_assert!(t.relations_hold());
        prop_assert!(ga.in_piece(0, &t.h));
        prop_assert!(ga.in_piece(-1, &t.f));
    }

    #[test]
    fn report_invariants(ga in graded_with_g1(), coeffs in prop::collection::vec(-2i64..=2, 1..6)) {
        let e = element_of_g1(&ga, &coeffs);
        let r = toledo_report(&ga, Some(&e), 0).unwrap();
        prop_assert!(!r.rk_t_e.is_zero() || e.is_zero());
        prop_assert!(r.rk_t_e <= r.rk_t_phvs);
        if !e.is_zero() {
            prop_assert_eq!(r.jm_regular, r.s_vector.is_zero());
            if r.jm_regular {
                prop_assert_eq!(r.hat_dims, (ga.dim(0), ga.dim(1)));
            }
        }
    }

    #[test]
    fn hat_algebra_form_nondegenerate(ga in graded_with_g1(), coeffs in prop::collection::vec(-2i64..=2, 1..6)) {
        let e = element_of_g1(&ga, &coeffs);
        prop_assume!(!e.is_zero());
        let t = jm_complete(&ga, &e).unwrap();
        let s = &ga.zeta - &t.h.scale(&ratio(1, 2));
        let hat = ga.centralizer_in(&[&s], ga.alg.basis());
        let g = ga.alg.gram(&hat);
        prop_assert!(form_nondegenerate(&g).unwrap());
        let mx = maximal_jm_subspace(&ga, &e).unwrap();
        prop_assert!(mx.hat_g1.iter().all(|x| ga.in_piece(1, x) && ga.alg.bracket(&s, x).is_zero()));
    }

    #[test]
    fn matrix_and_root_gradings_agree(labels in prop::collection::vec(0i64..=3, 3)) {
        for (fam, n, lt) in [
            (ClassicalFamily::Sl, 4, LieType::new(Family::A, 3).unwrap()),
            (ClassicalFamily::So, 7, LieType::new(Family::B, 3).unwrap()),
            (ClassicalFamily::Sp, 6, LieType::new(Family::C, 3).unwrap()),
            (ClassicalFamily::So, 6, LieType::new(Family::D, 3).unwrap()),
        ] {
            let ga = build_classical(fam, n, Some(ZetaSpec::Labels(labels.clone()))).unwrap();
            let g = Grading::new(&build_root_system(lt).unwrap(), &labels).unwrap();
            prop_assert_eq!(ga.dims(), g.dims());
        }
    }

    #[test]
    fn a_type_reversal(labels in prop::collection::vec(0i64..=2, 1..=5)) {
        let rs = build_root_system(LieType::new(Family::A, labels.len()).unwrap()).unwrap();
        let rev: Vec<i64> = labels.iter().rev().copied().collect();
        let g = Grading::new(&rs, &labels).unwrap();
        let h = Grading::new(&rs, &rev).unwrap();
        prop_assert_eq!(g.dims(), h.dims());
        prop_assert_eq!(g.b_zeta_zeta_times_bgg(), h.b_zeta_zeta_times_bgg());
    }
}
