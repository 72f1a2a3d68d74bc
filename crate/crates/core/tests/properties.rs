use invseq_core::invseq::{contains, reduction, InversionSequence, PatternWord};
use invseq_core::lattice::{eta, eta_inv, visit_labeled_f, visit_weighted_h};
use proptest::prelude::*;

fn inversion_sequence(max_len: usize) -> impl Strategy<Value = InversionSequence> {
    (0..=max_len)
        .prop_flat_map(|n| (0..n).map(|j| 0..=j as u32).collect::<Vec<_>>())
        .prop_map(|v| InversionSequence::new(v).unwrap())
}

fn pattern() -> impl Strategy<Value = PatternWord> {
    prop::collection::vec(0u32..4, 1..4).prop_map(|w| reduction(&w).unwrap())
}

proptest! {
    #[test]
    fn reduction_is_idempotent(w in prop::collection::vec(0u32..20, 1..8)) {
        let r = reduction(&w).unwrap();
        prop_assert_eq!(reduction(r.letters()).unwrap(), r);
    }

    #[test]
    fn containment_is_monotone_under_extension(e in inversion_sequence(9), w in pattern(), extra in 0u32..100) {
        if contains(&e, &w) {
            let mut longer = e.entries().to_vec();
            longer.push(extra % (longer.len() as u32 + 1));
            prop_assert!(contains(&InversionSequence::new(longer).unwrap(), &w));
        }
    }

    #[test]
    fn first_descent_sits_on_the_maximum(e in inversion_sequence(10)) {
        if !e.is_empty() && !e.contains(&PatternWord::p102()) {
            prop_assert_eq!(e.entries()[e.prmx() - 1] as i64, e.max_value());
            prop_assert!(e.rank().is_ok());
        }
    }
}

#[test]
fn eta_inverse_round_trips_on_walks() {
    for n in 0..=5 {
        visit_weighted_h(n, &mut |r| {
            let q = eta_inv(r).unwrap();
            assert_eq!(&eta(&q), r);
        });
    }
}

#[test]
fn eta_forward_round_trips_on_labeled_paths() {
    let mut count = 0;
    visit_labeled_f(4, &mut |q| {
        count += 1;
        assert_eq!(&eta_inv(&eta(q)).unwrap(), q);
    });
    assert!(count > 0);
}
