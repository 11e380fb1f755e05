use homdend_cli::format::{cochain_spec, Loaded, Structure, StructureFile};
use homdend_core::{catalogue, random, Field, HomRepresentation, OperadWithMultiplication};
use proptest::prelude::*;

fn bare(structure: Structure) -> Loaded {
    Loaded {
        structure,
        rota_baxter: None,
        o_operator: None,
        cochains: Vec::new(),
        deformation: Vec::new(),
        basis_names: None,
    }
}

/// parse(serialize(x)) == x, and serialization is a fixed point.
fn round_trip(loaded: &Loaded) {
    let text = StructureFile::from_loaded(loaded).to_json();
    let again = StructureFile::parse(&text).unwrap();
    assert_eq!(&again.load().unwrap(), loaded);
    assert_eq!(again.to_json(), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_structures_round_trip(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let field = random::any_field(&mut rng);
        let a = random::dend_algebra(&mut rng, field, 3);
        let op = OperadWithMultiplication::dendriform(&a).unwrap();
        let mut loaded = bare(Structure::Dend(a.clone()));
        for n in 1..=3 {
            let c = random::cochain(&mut rng, op.operad(), n);
            loaded.cochains.push(cochain_spec(&c, Some(format!("c{n}"))));
        }
        loaded.basis_names = Some((0..a.dim()).map(|i| format!("x{i}")).collect());
        round_trip(&loaded);
        round_trip(&bare(Structure::DendCoalg(a.dual())));
        prop_assert!(a.dual().validate().is_valid());
    }
}

#[test]
fn catalogue_round_trips() {
    for field in [Field::Rationals, Field::Prime(101)] {
        for (_, a, r) in catalogue::rota_baxter_examples(field) {
            let mut loaded = bare(Structure::Assoc(a.clone()));
            loaded.rota_baxter = Some(r);
            round_trip(&loaded);
            round_trip(&bare(Structure::AssocCoalg(a.dual())));
        }
        for (_, rep, r) in catalogue::o_operator_examples(field) {
            let mut loaded = bare(Structure::Representation(rep.clone()));
            loaded.o_operator = Some(r);
            round_trip(&loaded);
            round_trip(&bare(Structure::Representation(
                HomRepresentation::regular(rep.base()),
            )));
        }
    }
}
