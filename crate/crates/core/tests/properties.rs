use std::collections::BTreeSet;

use proptest::prelude::*;

use hexfa::langtools::{
    accepted_set, bounded_equivalent, enumerate_pictures, exact_equivalent_for_size, image_set,
    random_pool, Equivalence, RandomSpec, SizeBound,
};
use hexfa::transforms::{hbfa_to_hrfa, realize_image};
use hexfa::{
    apply_op, compose, invert, AutomatonKind, DirectionMode, HexPicture, HexSize, Symbol,
    SymmetryOp,
};

const B: AutomatonKind = AutomatonKind::Boustrophedon;
const R: AutomatonKind = AutomatonKind::Returning;

fn ab() -> Vec<Symbol> {
    vec![Symbol::new("a").unwrap(), Symbol::new("b").unwrap()]
}

#[test]
fn any_direction_language_is_the_union_of_realized_images() {
    let bound = SizeBound::up_to(2);
    let pictures: Vec<HexPicture> = enumerate_pictures(&ab(), &bound).unwrap().collect();
    for a in random_pool(41, 8, &RandomSpec::new(B, 2, ab())) {
        let modes = DirectionMode::all(B);
        let direct: BTreeSet<HexPicture> = pictures
            .iter()
            .filter(|p| a.accepts_any_direction(p, &modes).unwrap())
            .cloned()
            .collect();
        // Mode g reads p the way the canonical mode reads g(p), so its
        // language is the g⁻¹-image of the canonical one.
        let mut by_class: [BTreeSet<HexPicture>; 3] = Default::default();
        for g in SymmetryOp::ALL {
            let image = realize_image(&a, invert(g)).unwrap();
            assert_eq!(image.mode.kind, R);
            let sample = accepted_set(&image.automaton, image.mode, &ab(), &bound).unwrap();
            let class = hexfa::transforms::direction_class(image.mode.element) - 1;
            by_class[class].extend(sample.members);
        }
        let union: BTreeSet<HexPicture> = by_class.into_iter().flatten().collect();
        assert_eq!(union, direct);
    }
}

#[test]
fn bounded_equivalence_is_symmetric() {
    let canon = DirectionMode::canonical(B);
    let bound = SizeBound::up_to(2);
    let pool = random_pool(43, 12, &RandomSpec::new(B, 2, ab()));
    for pair in pool.chunks(2) {
        let xy = bounded_equivalent(
            &pair[0],
            canon,
            &pair[1],
            canon,
            &ab(),
            &bound,
            SymmetryOp::IDENTITY,
        );
        let yx = bounded_equivalent(
            &pair[1],
            canon,
            &pair[0],
            canon,
            &ab(),
            &bound,
            SymmetryOp::IDENTITY,
        );
        assert_eq!(xy.unwrap(), yx.unwrap());
    }
}

#[test]
fn image_of_an_image() {
    let canon = DirectionMode::canonical(R);
    let bound = SizeBound::up_to(2);
    let a = &random_pool(47, 1, &RandomSpec::new(R, 3, ab()))[0];
    let sample = accepted_set(a, canon, &ab(), &bound).unwrap();
    for g in SymmetryOp::ALL {
        for h in [SymmetryOp::rotation(1), SymmetryOp::reflection(4)] {
            let twice = image_set(&image_set(&sample, h), g);
            let once = image_set(&sample, compose(g, h));
            assert_eq!(twice.members, once.members);
        }
    }
}

#[test]
fn exact_oracle_matches_enumeration_across_sizes() {
    let spec = RandomSpec::new(R, 3, ab());
    let pool = random_pool(53, 12, &spec);
    let canon = DirectionMode::canonical(R);
    for s in [(1, 2, 3), (2, 3, 2), (3, 1, 2)] {
        let size = HexSize::new(s.0, s.1, s.2).unwrap();
        for pair in pool.chunks(2) {
            let exact = exact_equivalent_for_size(&pair[0], canon, &pair[1], canon, size).unwrap();
            let bounded = bounded_equivalent(
                &pair[0],
                canon,
                &pair[1],
                canon,
                &ab(),
                &SizeBound::single(size),
                SymmetryOp::IDENTITY,
            )
            .unwrap();
            assert_eq!(exact.is_equal(), bounded.is_equal());
        }
    }
}

#[test]
fn returning_form_reports_stay_within_bound() {
    for a in random_pool(59, 20, &RandomSpec::new(B, 3, ab())) {
        let c = hbfa_to_hrfa(&a).unwrap();
        assert!(c.report.within_bound());
        assert_eq!(c.report.input_states, a.state_count());
        let again = hbfa_to_hrfa(&a).unwrap();
        assert_eq!(c.automaton, again.automaton);
    }
}

#[test]
fn smallest_counterexample_is_reported() {
    let all = hexfa::automata::catalog::accept_all(B, &ab());
    let none = hexfa::automata::catalog::reject_all(B, &ab());
    let canon = DirectionMode::canonical(B);
    let v = bounded_equivalent(
        &none,
        canon,
        &all,
        canon,
        &ab(),
        &SizeBound::up_to(2),
        SymmetryOp::IDENTITY,
    )
    .unwrap();
    let Equivalence::Counterexample(p) = v else {
        panic!("languages differ");
    };
    assert_eq!(p.size(), HexSize::new(1, 1, 1).unwrap());
    assert_eq!(p.cells()[0].as_str(), "a");
}

fn any_picture() -> impl Strategy<Value = HexPicture> {
    (1u32..=4, 1u32..=4, 1u32..=4).prop_flat_map(|(l, m, n)| {
        let size = HexSize::new(l, m, n).unwrap();
        proptest::collection::vec(0usize..3, size.cell_count()).prop_map(move |cells| {
            let abc = ["a", "b", "c"];
            let cells = cells
                .into_iter()
                .map(|i| Symbol::new(abc[i]).unwrap())
                .collect();
            HexPicture::from_cells(size, cells).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn inverse_undoes(p in any_picture(), g in 0usize..12) {
        let g = SymmetryOp::ALL[g];
        prop_assert_eq!(apply_op(invert(g), &apply_op(g, &p)), p);
    }

    #[test]
    fn action_is_compatible_with_composition(p in any_picture(), g in 0usize..12, h in 0usize..12) {
        let (g, h) = (SymmetryOp::ALL[g], SymmetryOp::ALL[h]);
        prop_assert_eq!(apply_op(g, &apply_op(h, &p)), apply_op(compose(g, h), &p));
    }
}
