mod common;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::*;
use zclass_core::circulant::{
    build_circulant, eigen_point, params_from_point, region, CirculantParams, CirculantPoint,
    TraceClass,
};
use zclass_core::classify::{is_f0, is_invertible_m, is_n0, ClassRegistry};
use zclass_core::construct::{make_type_d, rand_instances, InstanceLabel, TypeDSpec};
use zclass_core::geninv::{
    group_inverse, is_row_monotone, moore_penrose, moore_penrose_greville, PenroseChecks,
};
use zclass_core::io::{matrix_from_json, matrix_json, parse_matrix, write_matrix_csv};
use zclass_core::lcp::{is_r0, is_semimonotone, solve_enumerate, LcpInstance};
use zclass_core::linalg::{det, inverse, rank, rref};
use zclass_core::rational::{format_rational, frac, parse_rational};
use zclass_core::{RatMatrix, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, d)| frac(p, d))
}

fn matrix(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RatMatrix> {
    (rows, cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(rational(), r * c)
            .prop_map(move |d| RatMatrix::new(r, c, d).unwrap())
    })
}

fn square(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RatMatrix> {
    n.prop_flat_map(|k| matrix(k..=k, k..=k))
}

/// Product of two thin factors, so rank deficiency is the common case.
fn low_rank(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RatMatrix> {
    (n.clone(), n, 1usize..=3).prop_flat_map(|(r, c, k)| {
        let k = k.min(r).min(c);
        (matrix(r..=r, k..=k), matrix(k..=k, c..=c)).prop_map(|(f, g)| &f * &g)
    })
}

fn z_matrix(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RatMatrix> {
    square(n).prop_map(|a| {
        let mut z = a.clone();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    z[(i, j)] = -a[(i, j)].abs();
                }
            }
        }
        z
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn matrix_json_and_csv_round_trip(a in matrix(1..=4, 1..=4)) {
        prop_assert_eq!(&matrix_from_json(&matrix_json(&a)).unwrap(), &a);
        prop_assert_eq!(&parse_matrix(&write_matrix_csv(&a)).unwrap(), &a);
    }

    #[test]
    fn det_matches_cofactor_expansion(a in square(1..=4)) {
        prop_assert_eq!(det(&a).unwrap(), cofactor_det(&a));
    }

    #[test]
    fn inverse_is_two_sided(a in square(1..=4)) {
        match inverse(&a) {
            Ok(x) => {
                let id = RatMatrix::identity(a.rows());
                prop_assert_eq!(&a * &x, id.clone());
                prop_assert_eq!(&x * &a, id);
            }
            Err(_) => prop_assert!(cofactor_det(&a).is_zero()),
        }
    }

    #[test]
    fn rank_is_rref_pivot_count(a in low_rank(1..=5)) {
        let r = rref(&a).reduced;
        let nonzero = (0..r.rows()).filter(|&i| r.row(i).iter().any(|v| !v.is_zero())).count();
        prop_assert_eq!(rank(&a), nonzero);
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
    }

    #[test]
    fn penrose_equations_and_methods_agree(a in low_rank(1..=5)) {
        let x = moore_penrose(&a).unwrap();
        prop_assert!(PenroseChecks::evaluate(&a, &x.pinv).all());
        prop_assert_eq!(&moore_penrose_greville(&a).unwrap().pinv, &x.pinv);
        prop_assert_eq!(&moore_penrose(&x.pinv).unwrap().pinv, &a);
        prop_assert_eq!(moore_penrose(&a.transpose()).unwrap().pinv, x.pinv.transpose());
    }

    #[test]
    fn group_inverse_exists_iff_index_one(a in low_rank(1..=4).prop_filter("square", |a| a.is_square())) {
        let g = group_inverse(&a).unwrap();
        prop_assert_eq!(g.exists, rank(&(&a * &a)) == rank(&a));
        if let Some(x) = g.ginv {
            prop_assert_eq!(&(&a * &x) * &a, a.clone());
            prop_assert_eq!(&(&x * &a) * &x, x.clone());
            prop_assert_eq!(&a * &x, &x * &a);
        }
    }

    #[test]
    fn group_inverse_of_invertible_is_inverse(a in square(1..=4)) {
        if let Ok(inv) = inverse(&a) {
            prop_assert_eq!(group_inverse(&a).unwrap().ginv, Some(inv));
        }
    }

    #[test]
    fn row_monotone_witness_is_genuine(g in low_rank(1..=3)) {
        let (mono, w) = is_row_monotone(&g).unwrap();
        if let Some(x) = w {
            prop_assert!(!mono);
            prop_assert!(g.mul_vec(&x).iter().all(|v| !v.is_negative()));
            prop_assert!(x.iter().any(|v| v.is_negative()));
            // x lies in the row space
            let basis = zclass_core::linalg::nullspace_basis(&g);
            for n in basis {
                prop_assert!(zclass_core::matrix::dot(&n, &x).is_zero());
            }
        }
    }

    #[test]
    fn classification_lattice_is_consistent(a in z_matrix(1..=4)) {
        let report = ClassRegistry::default().classify(&a).unwrap();
        prop_assert!(report.lattice_violations().is_empty(), "{:?}", report.lattice_violations());
        if is_invertible_m(&a).unwrap() {
            prop_assert!(inverse(&a).unwrap().all(|v| !v.is_negative()));
        }
        if is_n0(&a).unwrap() {
            prop_assert!(cofactor_det(&a).is_negative());
        }
    }

    #[test]
    fn lcp_solutions_are_complementary(a in square(1..=4), q in prop::collection::vec(rational(), 4)) {
        let n = a.rows();
        let inst = LcpInstance::new(a, q[..n].to_vec()).unwrap();
        let out = solve_enumerate(&inst).unwrap();
        for s in &out.solutions {
            prop_assert!(inst.is_solution(&s.x));
            prop_assert_eq!(&s.y, &inst.w(&s.x));
        }
        if !out.solutions.is_empty() {
            prop_assert!(out.feasible);
        }
        if let Some(x) = &out.feasible_point {
            prop_assert!(x.iter().all(|v| !v.is_negative()));
            prop_assert!(inst.w(x).iter().all(|v| !v.is_negative()));
        }
    }

    #[test]
    fn r0_and_semimonotone_witnesses(a in square(1..=4)) {
        let (r0, w) = is_r0(&a).unwrap();
        if let Some(x) = w {
            prop_assert!(!r0);
            let inst = LcpInstance::new(a.clone(), vec![Rational::zero(); a.rows()]).unwrap();
            prop_assert!(inst.is_solution(&x));
            prop_assert!(x.iter().any(|v| !v.is_zero()));
        }
        let (semi, w) = is_semimonotone(&a).unwrap();
        if let Some(x) = w {
            prop_assert!(!semi);
            let ax = a.mul_vec(&x);
            prop_assert!((0..x.len()).all(|k| !x[k].is_positive() || ax[k].is_negative()));
        }
    }

    #[test]
    fn type_d_inverse_is_tridiagonal(steps in prop::collection::vec((1i64..=5, 1i64..=3), 2..=6), start in -8i64..=4) {
        let mut cur = frac(start, 1);
        let mut a = Vec::new();
        for (p, d) in steps {
            cur += frac(p, d);
            a.push(cur.clone());
        }
        let d = make_type_d(&TypeDSpec::new(a.clone()).unwrap());
        prop_assert_eq!(&d.transpose(), &d);
        match inverse(&d) {
            Ok(inv) => prop_assert!(is_tridiagonal(&inv)),
            Err(_) => prop_assert!(a[0].is_zero()),
        }
    }

    #[test]
    fn circulant_point_round_trip(a in rational(), t in rational(), plus in any::<bool>()) {
        let tc = if plus { TraceClass::Plus } else { TraceClass::Minus };
        let pt = CirculantPoint::new(a, t);
        let p = params_from_point(&pt, tc);
        prop_assert_eq!(p.trace_class, Some(tc));
        prop_assert_eq!(&eigen_point(&p), &pt);
        let c = build_circulant(&p);
        let back = CirculantParams::new(c[(0, 0)].clone(), c[(0, 1)].clone(), c[(0, 2)].clone());
        prop_assert_eq!(back, p);
    }

    #[test]
    fn circulant_f0_region_matches_definition(a in rational(), t in rational()) {
        let pt = CirculantPoint::new(a, t);
        let v = region(&pt, zclass_core::classify::ClassLabel::F0, TraceClass::Minus).unwrap();
        if !v.boundary {
            let c = build_circulant(&params_from_point(&pt, TraceClass::Minus));
            prop_assert_eq!(v.in_region, is_f0(&c).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), n in 3usize..=4) {
        for label in [InstanceLabel::N0, InstanceLabel::F0SingularReducible, InstanceLabel::H] {
            let a = rand_instances(label, n, seed, 2).unwrap();
            prop_assert_eq!(&a, &rand_instances(label, n, seed, 2).unwrap());
        }
    }
}
