use loopspace_core::bridge::{phi, psi, psi_phi_iso};
use loopspace_core::diagrams::{hom_dim, kernel_cokernel, DiagMorphism};
use loopspace_core::groebner::{buchberger, free_resolution};
use loopspace_core::polymods::{hom_mod, ModulePresentation};
use loopspace_core::random::{self, SeededRng};
use loopspace_core::smith::{invariant_factors, smith_normal_form};
use loopspace_core::{Field, Matrix, MonomialOrder, Poly, PolyRing};
use proptest::prelude::*;

const F: Field = Field::Prime(101);

fn small_matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::from_fn(field, rows, cols, |i, j| field.from_i64(v[i * cols + j])))
}

fn any_field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(F), Just(Field::Prime(7))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_operations_are_consistent(field in any_field(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let (a, b, c) = (field.from_i64(a), field.from_i64(b), field.from_i64(c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(field.parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn rank_plus_nullity(field in any_field(), (r, c) in (1usize..5, 1usize..5), seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let m = rng.matrix(field, r, c, 3);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.cols(), c);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solutions_solve(m in small_matrix(F, 3, 4), x in prop::collection::vec(-3i64..=3, 4)) {
        let x: Vec<_> = x.into_iter().map(|v| F.from_i64(v)).collect();
        let b = m.apply(&x);
        let sol = m.solve(&b).unwrap();
        let p = sol.particular.expect("b is in the image");
        prop_assert_eq!(m.apply(&p), b);
        prop_assert!(m.mul(&sol.kernel_basis).is_zero());
    }

    #[test]
    fn invertible_matrices_invert(seed in any::<u64>(), n in 0usize..5) {
        let mut rng = SeededRng::new(seed);
        let m = rng.invertible(F, n, 3);
        let inv = m.inverse().expect("invertible");
        prop_assert_eq!(m.mul(&inv), Matrix::identity(F, n));
    }

    #[test]
    fn polynomial_ring_axioms(seed in any::<u64>(), nvars in 1usize..4, lex in any::<bool>()) {
        let mut rng = SeededRng::new(seed);
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let ring = PolyRing::new(F, nvars, order);
        let (a, b, c) = (random::poly(&mut rng, ring, 3, 4), random::poly(&mut rng, ring, 3, 4), random::poly(&mut rng, ring, 3, 4));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.sub(&a), Poly::zero(ring));
        prop_assert_eq!(Poly::parse(ring, &a.to_string()).unwrap(), a.clone());
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(a.mul(&b).total_degree(), Some(a.total_degree().unwrap() + b.total_degree().unwrap()));
        }
    }

    #[test]
    fn univariate_division_and_gcd(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let ring = PolyRing::univariate(F);
        let a = random::poly(&mut rng, ring, 5, 4);
        let b = random::poly(&mut rng, ring, 3, 3);
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod_univariate(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let g = a.gcd_univariate(&b).unwrap();
        prop_assert!(a.divmod_univariate(&g).unwrap().1.is_zero());
        prop_assert!(b.divmod_univariate(&g).unwrap().1.is_zero());
    }

    #[test]
    fn smith_form_is_certified(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let m = random::snf_matrix(&mut rng, F, 4, 2);
        let r = smith_normal_form(&m).unwrap();
        prop_assert_eq!(r.u.mul(&m).mul(&r.v), r.d.clone());
        let diag = r.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].divmod_univariate(&w[0]).unwrap().1.is_zero()));
        }
    }

    #[test]
    fn groebner_normal_forms(seed in any::<u64>(), lex in any::<bool>()) {
        let mut rng = SeededRng::new(seed);
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let ring = PolyRing::new(F, 2, order);
        let gens = random::ideal(&mut rng, ring, 3, 2);
        let gb = buchberger(&gens, order).unwrap();
        prop_assert!(gb.satisfies_buchberger_criterion());
        prop_assert!(gb.is_reduced());
        for g in &gens {
            prop_assert!(gb.normal_form_poly(g).unwrap().is_zero());
        }
        let f = random::poly(&mut rng, ring, 3, 4);
        let nf = gb.normal_form_poly(&f).unwrap();
        prop_assert_eq!(gb.normal_form_poly(&nf).unwrap(), nf.clone());
        prop_assert!(gb.normal_form_poly(&f.sub(&nf)).unwrap().is_zero());
    }

    #[test]
    fn phi_psi_round_trip(seed in any::<u64>(), n in 1usize..3) {
        let mut rng = SeededRng::new(seed);
        let x = random::commuting_tuple(&mut rng, F, n, 4);
        let back = psi(&phi(&x)).unwrap();
        prop_assert_eq!(back.dim(), x.dim());
        let iso = psi_phi_iso(&x).unwrap();
        prop_assert!(iso.is_isomorphism());
    }

    #[test]
    fn hom_is_additive(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let x = random::commuting_tuple(&mut rng, F, 1, 3);
        let y = random::commuting_tuple(&mut rng, F, 1, 3);
        let z = random::commuting_tuple(&mut rng, F, 1, 3);
        let (dx, dy, dz) = (x.to_diagram(), y.to_diagram(), z.to_diagram());
        let sum = dx.direct_sum(&dy).unwrap();
        prop_assert_eq!(hom_dim(&sum, &dz).unwrap(), hom_dim(&dx, &dz).unwrap() + hom_dim(&dy, &dz).unwrap());
        prop_assert_eq!(hom_dim(&dz, &sum).unwrap(), hom_dim(&dz, &dx).unwrap() + hom_dim(&dz, &dy).unwrap());
        prop_assert_eq!(hom_dim(&dx, &dz).unwrap(), hom_mod(&phi(&x), &phi(&z)).unwrap().dim);
    }

    #[test]
    fn kernel_and_cokernel_are_exact(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let x = random::commuting_tuple(&mut rng, F, 1, 4).to_diagram();
        let y = random::commuting_tuple(&mut rng, F, 1, 4).to_diagram();
        let f = random::hom_element(&mut rng, &x, &y);
        let kc = kernel_cokernel(&f).unwrap();
        prop_assert!(f.compose(&kc.inclusion).unwrap().is_zero());
        prop_assert!(kc.projection.compose(&f).unwrap().is_zero());
        let rank = f.comps()[0].rank();
        prop_assert_eq!(kc.kernel.total_dim() + rank, x.total_dim());
        prop_assert_eq!(kc.cokernel.total_dim() + rank, y.total_dim());
        prop_assert!(DiagMorphism::identity(&x).is_isomorphism());
    }

    #[test]
    fn univariate_resolutions_are_exact(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let m: ModulePresentation = random::fd_presentation(&mut rng, F, 1, 4);
        let res = free_resolution(&m, 3).unwrap();
        prop_assert!(res.is_exact().unwrap());
        prop_assert!(res.length() <= 1);
        let dim = invariant_factors(&m).unwrap().dimension();
        prop_assert_eq!(dim, Some(psi(&m).unwrap().dim()));
    }
}
