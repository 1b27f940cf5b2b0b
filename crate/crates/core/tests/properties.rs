use monoidforge::automata::sync::undelta;
use monoidforge::automata::verify::language;
use monoidforge::automata::{delta, Fsa, Side, DEFAULT_STATE_CAP as CAP};
use monoidforge::checks::class_normal_form;
use monoidforge::{monoid, Letter, MonoidId, MonoidKind, Strategy as Rewrite, Word};
use proptest::prelude::*;

fn monoid_and_word(max_rank: u32, max_len: usize) -> impl Strategy<Value = (MonoidId, Word)> {
    (prop::sample::select(MonoidKind::ALL.to_vec()), 1..=max_rank).prop_flat_map(move |(kind, n)| {
        let m = MonoidId::new(kind, n).unwrap();
        let w = prop::collection::vec(1..=n, 0..=max_len)
            .prop_map(|v| Word(v.into_iter().map(Letter::of).collect()));
        (Just(m), w)
    })
}

fn monoid_and_two_words() -> impl Strategy<Value = (MonoidId, Word, Word)> {
    monoid_and_word(6, 8).prop_flat_map(|(m, u)| {
        let n = m.rank as u32;
        let v = prop::collection::vec(1..=n, 0..=8).prop_map(|v| Word(v.into_iter().map(Letter::of).collect()));
        (Just(m), Just(u), v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_form_is_idempotent_and_conserves_content((m, w) in monoid_and_word(8, 12)) {
        let nf = monoid::normal_form(m, &w).unwrap();
        prop_assert!(monoid::is_normal_form(m, &nf));
        prop_assert_eq!(monoid::normal_form(m, &nf).unwrap(), nf.clone());
        prop_assert_eq!(nf.content(m.rank), w.content(m.rank));
    }

    #[test]
    fn normal_form_is_compatible_with_products((m, u, v) in monoid_and_two_words()) {
        let nu = monoid::normal_form(m, &u).unwrap();
        let nv = monoid::normal_form(m, &v).unwrap();
        prop_assert_eq!(
            monoid::normal_form(m, &nu.concat(&nv)).unwrap(),
            monoid::normal_form(m, &u.concat(&v)).unwrap()
        );
    }

    #[test]
    fn rewriting_is_strategy_independent((m, w) in monoid_and_word(4, 8), seed in any::<u64>()) {
        let nf = monoid::normal_form(m, &w).unwrap();
        for s in [Rewrite::Leftmost, Rewrite::Rightmost, Rewrite::Random(seed)] {
            prop_assert_eq!(monoid::rewriting_normal_form(m, &w, s).unwrap(), nf.clone());
        }
    }

    #[test]
    fn normal_form_lies_in_the_class((m, w) in monoid_and_word(3, 6)) {
        prop_assert_eq!(class_normal_form(m, &w).unwrap(), monoid::normal_form(m, &w).unwrap());
    }

    #[test]
    fn insertion_matches_normal_form_of_product((m, w) in monoid_and_word(6, 10), g in 1u32..=6) {
        let g = Letter::of(g.min(m.rank as u32));
        let nf = monoid::normal_form(m, &w).unwrap();
        prop_assert_eq!(
            monoid::right_multiply(m, &nf, g).unwrap(),
            monoid::normal_form(m, &w.append(g)).unwrap()
        );
        prop_assert_eq!(
            monoid::left_multiply(m, g, &nf).unwrap(),
            monoid::normal_form(m, &w.prepend(g)).unwrap()
        );
    }

    #[test]
    fn padded_convolution_is_injective(
        u in prop::collection::vec(1u32..=3, 0..6),
        v in prop::collection::vec(1u32..=3, 0..6),
        right in any::<bool>(),
    ) {
        let side = if right { Side::R } else { Side::L };
        let (u, v): (Vec<Letter>, Vec<Letter>) =
            (u.into_iter().map(Letter::of).collect(), v.into_iter().map(Letter::of).collect());
        let d = delta(&u, &v, side);
        prop_assert_eq!(d.len(), u.len().max(v.len()));
        prop_assert_eq!(undelta(&d), (u, v));
    }

    #[test]
    fn language_survives_json((m, w) in monoid_and_word(3, 7)) {
        let f = language(m, CAP).unwrap();
        let g: Fsa<Letter> = Fsa::from_json(&f.to_json(m.rank), m.rank).unwrap();
        prop_assert_eq!(g.accepts(&w.0), monoid::is_normal_form(m, &w));
        prop_assert_eq!(f.accepts(&w.0), g.accepts(&w.0));
    }
}
