//! Property tests for the semantic invariants.

use alloc::vec;
use alloc::vec::Vec;
use std::sync::OnceLock;

use proptest::prelude::*;

use crate::eval::{biextension, sat_at, Sign};
use crate::model::{Access, FrameClass, KripkeModel, PointedModel};
use crate::search::{enumerate_models, SearchBounds};
use crate::syntax::{parse, render, substitute, Formula, LanguageTag};
use crate::testgen::formula;
use crate::transform::dp_join;

fn pool(class: FrameClass) -> &'static [KripkeModel] {
    static POOLS: [OnceLock<Vec<KripkeModel>>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = FrameClass::ALL.iter().position(|&c| c == class).unwrap();
    POOLS[slot].get_or_init(|| {
        let bounds = SearchBounds::new(2).with_atoms([0, 1]);
        enumerate_models(class, &bounds).step_by(7).take(4000).collect()
    })
}

fn model(class: FrameClass) -> impl Strategy<Value = &'static KripkeModel> {
    let models = pool(class);
    (0..models.len()).prop_map(move |i| &models[i])
}

fn language_of(class: FrameClass) -> LanguageTag {
    match class {
        FrameClass::P => LanguageTag::PL,
        FrameClass::FSM => LanguageTag::MD,
        FrameClass::FSC | FrameClass::FSCR => LanguageTag::CN,
    }
}

fn class_and_formula(depth: u32) -> impl Strategy<Value = (&'static KripkeModel, Formula)> {
    proptest::sample::select(FrameClass::ALL.to_vec())
        .prop_flat_map(move |c| (model(c), formula(language_of(c), depth, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_then_parse_is_identity(
        f in prop_oneof![formula(LanguageTag::CN, 6, 4), formula(LanguageTag::MD, 6, 4)]
    ) {
        prop_assert_eq!(parse(&render(&f)).unwrap(), f);
    }

    #[test]
    fn sugar_expands_once(a in formula(LanguageTag::CN, 3, 3), b in formula(LanguageTag::CN, 3, 3)) {
        for (op, built) in [
            ("=>", Formula::strong_imp(a.clone(), b.clone())),
            ("@=>", Formula::strong_would(a.clone(), b.clone())),
            ("?=>", Formula::strong_might(a.clone(), b.clone())),
            ("<=>", Formula::strong_iff(a.clone(), b.clone())),
        ] {
            let text = alloc::format!("({}) {op} ({})", render(&a), render(&b));
            let parsed = parse(&text).unwrap();
            prop_assert_eq!(&parsed, &built);
            prop_assert_eq!(parse(&render(&parsed)).unwrap(), built);
        }
    }

    #[test]
    fn substitution_stays_in_language(
        lang in proptest::sample::select(vec![LanguageTag::PL, LanguageTag::MD, LanguageTag::CN]),
        seed in any::<u64>(),
        p in 0u32..3,
    ) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let phi = crate::testgen::random_formula(&mut rng, lang, 4, 3);
        let psi = crate::testgen::random_formula(&mut rng, lang, 3, 3);
        prop_assert!(substitute(&phi, &psi, p).language().within(lang));
    }

    #[test]
    fn heredity((m, f) in class_and_formula(4)) {
        let b = biextension(m, &f).unwrap();
        prop_assert!(m.is_up_closed(b.pos));
        prop_assert!(m.is_up_closed(b.neg));
    }

    #[test]
    fn negation_swaps((m, f) in class_and_formula(4)) {
        let neg = Formula::neg(f.clone());
        prop_assert_eq!(biextension(m, &neg).unwrap(), biextension(m, &f).unwrap().swap());
    }

    #[test]
    fn antecedents_matter_only_through_their_extension(
        m in model(FrameClass::FSC),
        a in formula(LanguageTag::CN, 3, 2),
        b in formula(LanguageTag::CN, 3, 2),
        c in formula(LanguageTag::CN, 3, 2),
        variant in 0usize..3,
    ) {
        let twin = match variant {
            0 => Formula::neg(Formula::neg(a.clone())),
            1 => Formula::and(a.clone(), a.clone()),
            _ => Formula::or(a.clone(), a.clone()),
        };
        for other in [twin, b] {
            if biextension(m, &a).unwrap() != biextension(m, &other).unwrap() {
                continue;
            }
            for build in [Formula::would, Formula::might] {
                let x = build(a.clone(), c.clone());
                let y = build(other.clone(), c.clone());
                prop_assert_eq!(biextension(m, &x).unwrap(), biextension(m, &y).unwrap());
            }
        }
    }

    #[test]
    fn propositional_truth_ignores_accessibility(
        m in prop_oneof![model(FrameClass::FSM), model(FrameClass::FSC)],
        f in formula(LanguageTag::PL, 5, 2),
    ) {
        let bare = m.with_access(Access::None).unwrap();
        prop_assert_eq!(biextension(m, &f).unwrap(), biextension(&bare, &f).unwrap());
    }

    #[test]
    fn evaluation_order_is_irrelevant((m, f) in class_and_formula(4), g in formula(LanguageTag::PL, 3, 2)) {
        let first = biextension(m, &f).unwrap();
        let _ = biextension(m, &g).unwrap();
        prop_assert_eq!(biextension(m, &f).unwrap(), first);
    }

    #[test]
    fn joins_preserve_components(
        class in proptest::sample::select(FrameClass::ALL.to_vec()),
        i in any::<proptest::sample::Index>(),
        j in any::<proptest::sample::Index>(),
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        let models = pool(class);
        let (m1, m2) = (&models[i.index(models.len())], &models[j.index(models.len())]);
        let join = dp_join(&PointedModel { model: m1.clone(), point: 0 }, &PointedModel { model: m2.clone(), point: 0 })
            .unwrap();
        let big = &join.model.model;
        prop_assert!(crate::model::validate_model(big, class).is_ok());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let f = crate::testgen::random_formula(&mut rng, language_of(class), 4, 2);
            let g = join.rename_right(&f);
            for s in [Sign::Pos, Sign::Neg] {
                for v in 0..m1.len() {
                    prop_assert_eq!(sat_at(m1, v, &f, s).unwrap(), sat_at(big, join.left[v], &f, s).unwrap());
                }
                for v in 0..m2.len() {
                    prop_assert_eq!(sat_at(m2, v, &f, s).unwrap(), sat_at(big, join.right[v], &g, s).unwrap());
                }
            }
        }
    }
}
