use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::eval::{check_consecution, sat_at, Consecution, Sign};
use crate::logic::Logic;
use crate::model::fixtures::get_fixture;
use crate::model::ModelBuilder;
use crate::proof::corpus;
use crate::proof::schemes::System;
use crate::proof::ProofKind;
use crate::search::{enumerate_models, find_countermodel, SearchBounds, SearchOutcome};
use crate::syntax::parse;
use crate::testgen::random_formula;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn agree(m: &KripkeModel, a: &Formula, n: &KripkeModel, b: &Formula) -> bool {
    (0..m.len()).all(|v| {
        [Sign::Pos, Sign::Neg]
            .into_iter()
            .all(|s| sat_at(m, v, a, s).unwrap() == sat_at(n, v, b, s).unwrap())
    })
}

fn fsm_models() -> Vec<KripkeModel> {
    enumerate_models(FrameClass::FSM, &SearchBounds::new(2).with_atoms([0, 1])).collect()
}

#[test]
fn tr_examples() {
    assert_eq!(tr_phi(&f("p0"), &f("[]p1")).unwrap(), f("p0 @> p1"));
    assert_eq!(tr_phi(&f("p0"), &f("<>(p1 -> p2)")).unwrap(), f("p0 ?> (p1 -> p2)"));
    assert_eq!(tr_phi(&f("p0 & p1"), &f("~[]p0")).unwrap(), f("~((p0 & p1) @> p0)"));
    assert_eq!(tr_phi(&f("p0"), &f("p1 -> p0")).unwrap(), f("p1 -> p0"));
    assert!(matches!(
        tr_phi(&f("p0"), &f("p0 @> p1")),
        Err(TransformError::LanguageMismatch { .. })
    ));
    assert!(matches!(tr_phi(&f("[]p0"), &f("p1")), Err(TransformError::LanguageMismatch { .. })));
}

#[test]
fn i_examples() {
    assert_eq!(i_translate(&f("p0 @> p1")).unwrap(), f("[](p0 -> p1)"));
    assert_eq!(i_translate(&f("p0 ?> p1")).unwrap(), f("<>(p0 & p1)"));
    assert_eq!(i_translate(&f("p0 ?> (p1 & p2)")).unwrap(), f("<>(p0 & (p1 & p2))"));
    assert_eq!(
        i_translate(&f("~((p0 @> p1) -> p2)")).unwrap(),
        f("~([](p0 -> p1) -> p2)")
    );
    assert!(matches!(i_translate(&f("[]p0")), Err(TransformError::LanguageMismatch { .. })));
}

#[test]
fn lifts_of_a_single_reflexive_point() {
    let m = get_fixture("M0m").unwrap().model;
    let w = WorldSet::singleton(0);
    let row = vec![w];

    let full = modal_to_conditional(&m, &LiftMode::Full).unwrap();
    let Access::Cond(map) = full.access() else { panic!() };
    assert_eq!(map.len(), 4);
    assert!(map.values().all(|r| *r == row));

    let expected: BTreeSet<BiSet> =
        [BiSet::new(w, WorldSet::EMPTY), BiSet::new(w, w)].into_iter().collect();
    for mode in [LiftMode::Closed, LiftMode::Refl(f("p0 -> p0"))] {
        let lifted = modal_to_conditional(&m, &mode).unwrap();
        let Access::Cond(map) = lifted.access() else { panic!() };
        assert_eq!(map.keys().copied().collect::<BTreeSet<_>>(), expected, "{}", describe(&mode));
        assert!(map.values().all(|r| *r == row));
        assert!(validate_model(&lifted, FrameClass::FSCR).is_ok());
    }
    assert!(validate_model(&full, FrameClass::FSC).is_ok());
}

#[test]
fn lift_preconditions() {
    let m = get_fixture("M0c").unwrap().model;
    assert!(matches!(
        modal_to_conditional(&m, &LiftMode::Full),
        Err(TransformError::FrameViolation { class: FrameClass::FSM, .. })
    ));

    let mut b = ModelBuilder::new(ModelKind::Modal);
    for name in ["a", "b", "c", "d", "e"] {
        b.world(name);
    }
    let five = b.build().unwrap();
    assert_eq!(
        modal_to_conditional(&five, &LiftMode::Full),
        Err(TransformError::TooLarge { worlds: 5, limit: 4 })
    );
    assert!(modal_to_conditional(&five, &LiftMode::Closed).is_ok());

    let m0m = get_fixture("M0m").unwrap().model;
    assert_eq!(
        modal_to_conditional(&m0m, &LiftMode::Refl(f("~p0"))),
        Err(TransformError::AnchorNotGlobal)
    );
}

#[test]
fn slices_of_fixtures() {
    let w = WorldSet::singleton(0);
    for (name, anchor) in [("M0c", "p0"), ("M0c", "p1"), ("M2", "p0")] {
        let m = get_fixture(name).unwrap().model;
        let sliced = conditional_to_modal(&m, &f(anchor)).unwrap();
        assert_eq!(sliced.access(), &Access::Modal(vec![w]), "{name} at {anchor}");
        assert!(validate_model(&sliced, FrameClass::FSM).is_ok());
    }
    assert_eq!(
        biextension(&get_fixture("M0c").unwrap().model, &f("p1")).unwrap(),
        BiSet::new(w, w)
    );
    let sliced = conditional_to_modal(&get_fixture("M0c1").unwrap().model, &f("p1")).unwrap();
    assert_eq!(sliced.access(), &Access::Modal(vec![WorldSet::EMPTY]));
}

#[test]
fn full_lift_is_faithful() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let anchor = f("p0");
    for (k, m) in fsm_models().iter().enumerate() {
        let lifted = modal_to_conditional(m, &LiftMode::Full).unwrap();
        for _ in 0..if k < 40 { 20 } else { 3 } {
            let g = random_formula(&mut rng, LanguageTag::MD, 3, 2);
            assert!(agree(m, &g, &lifted, &tr_phi(&anchor, &g).unwrap()), "{g}");
        }
    }
}

#[test]
fn refl_lift_is_faithful() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let anchor = f("p0 -> p0");
    for m in fsm_models() {
        let lifted = modal_to_conditional(&m, &LiftMode::Refl(anchor.clone())).unwrap();
        assert_eq!(biextension(&lifted, &anchor).unwrap().pos, lifted.all());
        assert!(validate_model(&lifted, FrameClass::FSCR).is_ok());
        for _ in 0..4 {
            let g = random_formula(&mut rng, LanguageTag::MD, 3, 2);
            assert!(agree(&m, &g, &lifted, &tr_phi(&anchor, &g).unwrap()), "{g}");
        }
    }
}

#[test]
fn slices_are_faithful() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for name in ["M0c", "M0c1", "M1c", "M2", "trivc"] {
        let m = get_fixture(name).unwrap().model;
        for anchor in ["p0", "p1", "~p0", "p0 -> p0", "p0 @> p1", "p1 ?> p0"] {
            let anchor = f(anchor);
            let sliced = conditional_to_modal(&m, &anchor).unwrap();
            for _ in 0..60 {
                let g = random_formula(&mut rng, LanguageTag::MD, 3, 2);
                assert!(agree(&sliced, &g, &m, &tr_phi(&anchor, &g).unwrap()), "{name}: {g}");
            }
        }
    }
}

fn without_might(g: &Formula) -> Formula {
    use Formula as F;
    match g {
        F::Atom(_) => g.clone(),
        F::Neg(a) => F::neg(without_might(a)),
        F::And(a, b) => F::and(without_might(a), without_might(b)),
        F::Or(a, b) => F::or(without_might(a), without_might(b)),
        F::Imp(a, b) => F::imp(without_might(a), without_might(b)),
        F::Would(a, b) | F::Might(a, b) => F::would(without_might(a), without_might(b)),
        F::Box(a) => F::boxed(without_might(a)),
        F::Dia(a) => F::dia(without_might(a)),
    }
}

#[test]
fn closed_lift_interprets_would() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for m in fsm_models() {
        let lifted = modal_to_conditional(&m, &LiftMode::Closed).unwrap();
        for _ in 0..4 {
            let g = without_might(&random_formula(&mut rng, LanguageTag::CN, 3, 2));
            assert!(agree(&m, &i_translate(&g).unwrap(), &lifted, &g), "{g}");
        }
    }
}

fn reflexive_falsifier() -> KripkeModel {
    let mut b = ModelBuilder::new(ModelKind::Modal);
    b.world("w").access("w", "w").val(0, Sign::Neg, &["w"]);
    b.build().unwrap()
}

#[test]
fn might_negation_axiom_does_not_survive_the_interpretation() {
    // One reflexive world falsifying p0: ◇(p0∧p0) is falsified there, so
    // ¬◇(p0∧p0) holds while ◇(p0∧¬p0) does not.
    let image = i_translate(&f("~(p0 ?> p0) <-> (p0 ?> ~p0)")).unwrap();
    let m = reflexive_falsifier();
    assert!(validate_model(&m, FrameClass::FSM).is_ok());
    assert!(!sat_at(&m, 0, &image, Sign::Pos).unwrap());
    let lifted = modal_to_conditional(&m, &LiftMode::Closed).unwrap();
    assert!(sat_at(&lifted, 0, &f("~(p0 ?> p0) <-> (p0 ?> ~p0)"), Sign::Pos).unwrap());
}

fn cnk_refutes(g: &Formula) -> bool {
    let c = Consecution::theorem(g.clone());
    match find_countermodel(Logic::CnK, &c, &SearchBounds::new(2)).unwrap() {
        SearchOutcome::Found(_) => true,
        SearchOutcome::ExhaustedBounds => false,
        SearchOutcome::TimedOut => unreachable!(),
    }
}

#[test]
fn interpretation_of_the_theorem_corpus() {
    let corpus = corpus::build();
    let mut refuted = Vec::new();
    for proof in corpus.proofs() {
        if proof.kind != ProofKind::Theorem || !System::CnCK.includes(proof.system) {
            continue;
        }
        let goal = proof.goal().unwrap();
        if cnk_refutes(&i_translate(goal).unwrap()) {
            refuted.push(proof.name.clone().unwrap());
        }
    }
    // Only the strong negation clause for ?> breaks; its image falls to the
    // reflexive falsifier above.
    let expected: Vec<&str> = vec!["appendix_th5"];
    assert_eq!(refuted, expected);
}

#[test]
fn interpretation_is_not_conservative() {
    for (gamma, delta) in [("p0 ?> (p1 & p2)", "(p0 & p1) ?> p2"), ("p0 @> (p1 -> p2)", "(p0 & p1) @> p2")] {
        let c = Consecution::new([f(gamma)], [f(delta)]);
        let hit = find_countermodel(Logic::CnCK, &c, &SearchBounds::new(2)).unwrap();
        let pm = hit.found().expect("CnCK countermodel");
        assert!(check_consecution(pm, &c, Sign::Pos).unwrap());

        let image = Consecution::new([i_translate(&f(gamma)).unwrap()], [i_translate(&f(delta)).unwrap()]);
        assert_eq!(
            find_countermodel(Logic::CnK, &image, &SearchBounds::new(2)).unwrap(),
            SearchOutcome::ExhaustedBounds
        );
    }
}

fn component_agrees(join: &Join, pm: &PointedModel, map: &[usize], g: &Formula, renamed: &Formula) -> bool {
    let big = &join.model.model;
    (0..pm.model.len()).all(|v| {
        [Sign::Pos, Sign::Neg].into_iter().all(|s| {
            sat_at(&pm.model, v, g, s).unwrap() == sat_at(big, map[v], renamed, s).unwrap()
        })
    })
}

#[test]
fn join_of_two_aristotle_countermodels() {
    let m0 = get_fixture("M0").unwrap();
    let join = dp_join(&m0, &m0).unwrap();
    let big = &join.model;
    assert_eq!(big.model.len(), 3);
    assert_eq!(join.offset, 2);
    assert!(validate_model(&big.model, FrameClass::P).is_ok());
    let g = f("(p0 -> p1) -> (~p1 -> ~p0)");
    let renamed = join.rename_right(&g);
    assert_eq!(renamed, f("(p2 -> p3) -> (~p3 -> ~p2)"));
    let either = Formula::or(g.clone(), renamed.clone());
    assert!(!sat_at(&big.model, big.point, &either, Sign::Pos).unwrap());
    assert!(component_agrees(&join, &m0, &join.left, &g, &g));
    assert!(component_agrees(&join, &m0, &join.right, &g, &renamed));
    assert_eq!(big.model.worlds(), ["w", "w_2", "r"]);
}

#[test]
fn join_of_trivial_models() {
    let t = get_fixture("trivm").unwrap();
    let join = dp_join(&t, &t).unwrap();
    let big = &join.model;
    assert!(validate_model(&big.model, FrameClass::FSM).is_ok());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let g = random_formula(&mut rng, LanguageTag::MD, 3, 2);
        assert!(component_agrees(&join, &t, &join.left, &g, &g));
        assert!(component_agrees(&join, &t, &join.right, &g, &join.rename_right(&g)));
        let boxed = Formula::and(Formula::boxed(g.clone()), Formula::boxed(join.rename_right(&g)));
        let left = sat_at(&big.model, join.left[0], &Formula::boxed(g.clone()), Sign::Pos).unwrap();
        let right =
            sat_at(&big.model, join.right[0], &Formula::boxed(join.rename_right(&g)), Sign::Pos).unwrap();
        if left && right {
            assert!(sat_at(&big.model, big.point, &boxed, Sign::Pos).unwrap(), "{g}");
        }
    }
}

#[test]
fn join_of_conditional_fixtures() {
    let a = get_fixture("M0c").unwrap();
    let b = get_fixture("M2").unwrap();
    let join = dp_join(&a, &b).unwrap();
    let big = &join.model;
    assert!(validate_model(&big.model, FrameClass::FSC).is_ok());
    let root = big.point;
    assert!(big.model.leq(root, join.left[0]) && big.model.leq(root, join.right[0]));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let g = random_formula(&mut rng, LanguageTag::CN, 3, 2);
        assert!(component_agrees(&join, &a, &join.left, &g, &g), "{g}");
        assert!(component_agrees(&join, &b, &join.right, &g, &join.rename_right(&g)), "{g}");
    }
}

#[test]
fn join_rejects_mixed_kinds() {
    let a = get_fixture("M0").unwrap();
    let b = get_fixture("M0m").unwrap();
    assert_eq!(dp_join(&a, &b), Err(TransformError::KindMismatch(ModelKind::Prop, ModelKind::Modal)));
}

#[test]
fn boxto_extension_refutes_the_conditional() {
    let psi = f("p0 | ~p0");
    let antecedent = f("p0");
    let target = Formula::would(antecedent.clone(), psi.clone());
    let mut checked = 0;
    let bounds = SearchBounds::new(2).with_atoms([0]);
    for m in enumerate_models(FrameClass::FSC, &bounds) {
        for w in 0..m.len() {
            if sat_at(&m, w, &psi, Sign::Pos).unwrap() {
                continue;
            }
            let pm = PointedModel { model: m.clone(), point: w };
            let ext = boxto_extension(&pm, &antecedent).unwrap();
            assert!(validate_model(&ext.model, FrameClass::FSC).is_ok());
            assert!(!sat_at(&ext.model, ext.point, &target, Sign::Pos).unwrap());
            checked += 1;
        }
    }
    assert!(checked > 0);
}
