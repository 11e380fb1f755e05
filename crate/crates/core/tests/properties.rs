use homdend_core::checks::{run_with, Suite};
use homdend_core::cohomology::CohomologyEngine;
use homdend_core::linalg::{kernel_basis, solve};
use homdend_core::operad::{Flavor, OperadWithMultiplication};
use homdend_core::random;
use homdend_core::structures::induced_assoc;
use homdend_core::{Field, Matrix, Scalar};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::Prime(101)),
        Just(Field::Prime(7))
    ]
}

fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |xs| {
        let mut m = Matrix::zeros(field, rows, cols);
        for (k, x) in xs.into_iter().enumerate() {
            m[(k / cols, k % cols)] = field.int(x);
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(
        field in fields(),
        a in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(Field::Rationals, r, c)),
    ) {
        let a = a.to_field(field).unwrap();
        let k = kernel_basis(&a);
        prop_assert_eq!(a.rank() + k.dim(), a.cols());
        for v in k.vectors() {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(
        field in fields(),
        a in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(Field::Rationals, r, c)),
        xs in prop::collection::vec(-3i64..=3, 5),
    ) {
        let a = a.to_field(field).unwrap();
        let x: Vec<Scalar> = xs[..a.cols()].iter().map(|&v| field.int(v)).collect();
        let b = a.mul_vec(&x).unwrap();
        let y = solve(&a, &b).unwrap().expect("consistent");
        prop_assert_eq!(a.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn inverse_round_trip(field in fields(), seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let p = random::unimodular(&mut rng, field, 3);
        let q = p.inverse().expect("unimodular");
        prop_assert!(p.mul(&q).unwrap().is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generated_structures_and_duals_validate(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let field = random::any_field(&mut rng);
        let a = random::dend_algebra(&mut rng, field, 3);
        prop_assert!(a.validate().is_valid());
        let co = a.dual();
        prop_assert!(co.validate().is_valid());
        prop_assert_eq!(co.dual(), a.clone());
        prop_assert!(induced_assoc(&a).validate().is_valid());
        prop_assert!(co.induced_coassoc().validate().is_valid());
    }

    #[test]
    fn basis_change_preserves_betti_numbers(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let a = random::dend_algebra(&mut rng, Field::Rationals, 2);
        let p = random::unimodular(&mut rng, Field::Rationals, a.dim());
        let b = a.change_basis(&p).unwrap();
        let ea = CohomologyEngine::new(OperadWithMultiplication::dendriform(&a).unwrap());
        let eb = CohomologyEngine::new(OperadWithMultiplication::dendriform(&b).unwrap());
        for n in 1..=2 {
            prop_assert_eq!(ea.betti(n).unwrap(), eb.betti(n).unwrap());
        }
    }

    #[test]
    fn reduction_mod_p_keeps_multiplication(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let flavor = Flavor::ALL[(seed % 4) as usize];
        let owm = random::structure(&mut rng, flavor, Field::Prime(101), 3);
        prop_assert!(owm.is_multiplication());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn every_suite_passes_on_small_runs(seed in any::<u64>()) {
        for s in Suite::ALL {
            let out = run_with(s, seed, 3);
            prop_assert!(out.passed(), "{}", out);
        }
    }
}

#[test]
fn zero_structure_betti_numbers() {
    // delta vanishes, so betti(n) is the full cochain dimension n * d^(n+1)
    let a = homdend_core::structures::HomDendAlgebra::zero(
        homdend_core::structures::HomVectorSpace::untwisted(Field::Rationals, 2),
    );
    let engine = CohomologyEngine::new(OperadWithMultiplication::dendriform(&a).unwrap());
    for n in 1..=3u32 {
        assert_eq!(
            engine.betti(n as usize).unwrap(),
            (n * 2u32.pow(n + 1)) as usize
        );
    }
}
