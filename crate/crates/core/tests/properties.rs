use kalg::exact::{rat, Gq, Matrix};
use kalg::lie::{bracket, phi_k, star, AlgebraKind, LieElement, Window};
use kalg::morphisms::make_lambda;
use kalg::text::{format_element, parse_element_as};
use kalg::verma::{monomials_up_to, Generator, ModuleVector, VermaModule, Weight};
use num_traits::Zero;
use proptest::prelude::*;

fn gq() -> impl Strategy<Value = Gq> {
    (-20i64..=20, 1i64..=8, -20i64..=20, 1i64..=8)
        .prop_map(|(a, b, c, d)| Gq::new(rat(a, b), rat(c, d)))
}

fn index(bound: i64) -> impl Strategy<Value = i64> {
    (1..=bound, any::<bool>()).prop_map(|(n, neg)| if neg { -n } else { n })
}

fn k_element(kind: AlgebraKind, bound: i64) -> impl Strategy<Value = LieElement> {
    (prop::collection::vec((index(bound), gq()), 0..5), gq()).prop_map(move |(terms, c)| {
        let c = if kind.has_central() { c } else { Gq::zero() };
        LieElement::from_terms(kind, terms, c).unwrap()
    })
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec((-3i64..=3, 1i64..=2), r * c).prop_map(move |v| {
            Matrix::from_entries(
                r,
                c,
                v.into_iter().map(|(a, b)| Gq::from_ratio(a, b)).collect(),
            )
            .unwrap()
        })
    })
}

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((-3i64..=3, 1i64..=2), n * n).prop_map(move |v| {
        Matrix::from_entries(
            n,
            n,
            v.into_iter().map(|(a, b)| Gq::from_ratio(a, b)).collect(),
        )
        .unwrap()
    })
}

fn br(x: &LieElement, y: &LieElement) -> LieElement {
    bracket(x, y).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in gq(), b in gq(), c in gq()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Gq::from_int(1));
        }
    }

    #[test]
    fn scalar_text_round_trip(a in gq()) {
        prop_assert_eq!(a.to_string().parse::<Gq>().unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in matrix(5, 6)) {
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in kernel {
            let img = &m * &Matrix::column(v);
            prop_assert!(img.is_zero());
        }
    }

    #[test]
    fn det_multiplicative((a, b) in (1usize..=4).prop_flat_map(|n| (square(n), square(n)))) {
        let ab = &a * &b;
        prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        prop_assert_eq!(a.det().unwrap().is_zero(), a.rank() < a.rows());
    }

    #[test]
    fn solve_is_consistent(m in matrix(4, 5), x in prop::collection::vec(-3i64..=3, 5)) {
        let x: Vec<Gq> = x.into_iter().take(m.cols()).map(Gq::from_int).collect();
        prop_assume!(x.len() == m.cols());
        let rhs = &m * &Matrix::column(x);
        match m.solve(&rhs).unwrap() {
            kalg::exact::Solution::Consistent { particular, .. } => {
                prop_assert_eq!(&m * &particular, rhs);
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn k_bracket_is_lie(x in k_element(AlgebraKind::K, 5), y in k_element(AlgebraKind::K, 5), z in k_element(AlgebraKind::K, 5)) {
        prop_assert_eq!(br(&x, &y), -br(&y, &x));
        let jacobi = br(&x, &br(&y, &z)) + br(&y, &br(&z, &x)) + br(&z, &br(&x, &y));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn witt_bracket_is_lie(x in k_element(AlgebraKind::Witt, 5), y in k_element(AlgebraKind::Witt, 5), z in k_element(AlgebraKind::Witt, 5)) {
        let jacobi = br(&x, &br(&y, &z)) + br(&y, &br(&z, &x)) + br(&z, &br(&x, &y));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn star_reverses_brackets(x in k_element(AlgebraKind::K, 5), y in k_element(AlgebraKind::K, 5)) {
        prop_assert_eq!(star(&br(&x, &y)), br(&star(&y), &star(&x)));
        prop_assert_eq!(star(&star(&x)), x);
    }

    #[test]
    fn phi1_kills_brackets(x in k_element(AlgebraKind::K0, 5), y in k_element(AlgebraKind::K0, 5)) {
        prop_assert!(phi_k(1, &br(&x, &y)).unwrap().is_zero());
    }

    #[test]
    fn element_text_round_trip(x in k_element(AlgebraKind::K, 8)) {
        let text = format_element(&x);
        prop_assert_eq!(parse_element_as(&text, AlgebraKind::K).unwrap(), x);
    }

    #[test]
    fn lambda_is_homomorphism(lam in -6i64..=6, x in k_element(AlgebraKind::K, 3), y in k_element(AlgebraKind::K, 3)) {
        let m = make_lambda(&Gq::from_int(lam), Window::new(6).unwrap()).unwrap();
        let lhs = m.apply(&br(&x, &y)).unwrap();
        let rhs = br(&m.apply(&x).unwrap(), &m.apply(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn module_commutators(m in index(3), n in index(3), pick in 0usize..7, h in gq(), c in gq(), lam in gq()) {
        let wt = Weight::new(h.re().clone(), h.im().clone(), c, lam);
        let mut module = VermaModule::k(wt);
        let x = ModuleVector::monomial(monomials_up_to(3)[pick].clone());
        let xm = module.act_index(n, &x).unwrap();
        let mn = module.act_index(m, &xm).unwrap();
        let xn = module.act_index(m, &x).unwrap();
        let nm = module.act_index(n, &xn).unwrap();
        let b = br(&LieElement::k(m), &LieElement::k(n));
        prop_assert_eq!(&mn - &nm, module.act_element(&b, &x).unwrap());
    }

    #[test]
    fn vir_extension_relations(m in -3i64..=3, n in -3i64..=3, pick in 0usize..7, h in gq(), c in -10i64..=10) {
        let wt = Weight::new(h.re().clone(), h.im().clone(), Gq::from_int(c), Gq::zero());
        let mut module = VermaModule::k(wt);
        let x = ModuleVector::monomial(monomials_up_to(3)[pick].clone());
        let lx = |module: &mut VermaModule, k: i64, v: &ModuleVector| module.vir_extend_act(Generator::Index(k), v).unwrap();
        let a = lx(&mut module, n, &x);
        let mn = lx(&mut module, m, &a);
        let b = lx(&mut module, m, &x);
        let nm = lx(&mut module, n, &b);
        let mut want = lx(&mut module, m + n, &x).scale(&Gq::from_int(m - n));
        if m + n == 0 {
            let central = Gq::from_ratio(c * (m * m * m - m), 12);
            want = &want + &x.scale(&central);
        }
        prop_assert_eq!(&mn - &nm, want);
    }
}
