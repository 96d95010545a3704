//! Verification and falsification at worlds, bi-extensions, consecutions.
//!
//! Evaluation is bottom-up over world sets: each subformula's bi-extension
//! is computed once per call, so conditional antecedents never get
//! re-evaluated per world.

use alloc::collections::BTreeSet;
use alloc::string::String;

use crate::model::{BiSet, KripkeModel, ModelKind, PointedModel};
use crate::syntax::{Formula, LanguageTag};
use crate::worldset::WorldSet;

pub use crate::model::Sign;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("a {language} formula cannot be evaluated on a {kind} model")]
    LanguageMismatch { language: LanguageTag, kind: ModelKind },
    #[error("unknown world '{0}'")]
    UnknownWorld(String),
}

/// A pair (Γ, Δ): Δ is claimed to follow from Γ.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Consecution {
    pub gamma: BTreeSet<Formula>,
    pub delta: BTreeSet<Formula>,
}

impl Consecution {
    pub fn new(
        gamma: impl IntoIterator<Item = Formula>,
        delta: impl IntoIterator<Item = Formula>,
    ) -> Consecution {
        Consecution { gamma: gamma.into_iter().collect(), delta: delta.into_iter().collect() }
    }

    /// `(∅, {f})`
    pub fn theorem(f: Formula) -> Consecution {
        Consecution::new([], [f])
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.gamma.iter().chain(self.delta.iter())
    }

    pub fn language(&self) -> LanguageTag {
        self.formulas().fold(LanguageTag::PL, |acc, f| acc.join(f.language()))
    }

    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            f.collect_atoms(&mut out);
        }
        out
    }
}

/// The language a model of this kind can interpret.
pub fn kind_language(kind: ModelKind) -> LanguageTag {
    match kind {
        ModelKind::Prop => LanguageTag::PL,
        ModelKind::Modal => LanguageTag::MD,
        ModelKind::Cond => LanguageTag::CN,
    }
}

pub fn check_language(m: &KripkeModel, f: &Formula) -> Result<(), EvalError> {
    let language = f.language();
    if language.within(kind_language(m.kind())) {
        Ok(())
    } else {
        Err(EvalError::LanguageMismatch { language, kind: m.kind() })
    }
}

/// A connective, for evaluating directly on bi-extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Neg,
    And,
    Or,
    Imp,
    Box,
    Dia,
    Would,
    Might,
}

impl Op {
    pub const ALL: [Op; 8] = [Op::Neg, Op::And, Op::Or, Op::Imp, Op::Box, Op::Dia, Op::Would, Op::Might];

    pub fn is_unary(self) -> bool {
        matches!(self, Op::Neg | Op::Box | Op::Dia)
    }

    pub fn language(self) -> LanguageTag {
        match self {
            Op::Box | Op::Dia => LanguageTag::MD,
            Op::Would | Op::Might => LanguageTag::CN,
            _ => LanguageTag::PL,
        }
    }

    /// Builds the formula node; `b` is ignored for unary connectives.
    pub fn apply(self, a: Formula, b: Formula) -> Formula {
        match self {
            Op::Neg => Formula::neg(a),
            Op::And => Formula::and(a, b),
            Op::Or => Formula::or(a, b),
            Op::Imp => Formula::imp(a, b),
            Op::Box => Formula::boxed(a),
            Op::Dia => Formula::dia(a),
            Op::Would => Formula::would(a, b),
            Op::Might => Formula::might(a, b),
        }
    }
}

/// `{w | every v ≥ w has all its successors in target}`
fn boxlike(m: &KripkeModel, succ: impl Fn(usize) -> WorldSet, target: WorldSet) -> WorldSet {
    let base: WorldSet = (0..m.len()).filter(|&v| succ(v).is_subset(target)).collect();
    (0..m.len()).filter(|&w| m.up(w).is_subset(base)).collect()
}

/// `{w | some successor of w is in target}`
fn dialike(m: &KripkeModel, succ: impl Fn(usize) -> WorldSet, target: WorldSet) -> WorldSet {
    (0..m.len()).filter(|&w| !succ(w).intersection(target).is_empty()).collect()
}

/// The bi-extension of `op` applied to arguments with bi-extensions `a` and
/// `b` (`b` unused for unary connectives). Language fit is not checked.
pub fn combine(m: &KripkeModel, op: Op, a: BiSet, b: BiSet) -> BiSet {
    match op {
        Op::Neg => a.swap(),
        Op::And => BiSet::new(a.pos.intersection(b.pos), a.neg.union(b.neg)),
        Op::Or => BiSet::new(a.pos.union(b.pos), a.neg.intersection(b.neg)),
        Op::Imp => {
            let arrow = |target: WorldSet| -> WorldSet {
                (0..m.len())
                    .filter(|&w| m.up(w).intersection(a.pos).is_subset(target))
                    .collect()
            };
            BiSet::new(arrow(b.pos), arrow(b.neg))
        }
        Op::Box => {
            let succ = |v| m.successors(v);
            BiSet::new(boxlike(m, succ, a.pos), boxlike(m, succ, a.neg))
        }
        Op::Dia => {
            let succ = |v| m.successors(v);
            BiSet::new(dialike(m, succ, a.pos), dialike(m, succ, a.neg))
        }
        Op::Would => {
            let succ = |v| m.cond_successors(a, v);
            BiSet::new(boxlike(m, succ, b.pos), boxlike(m, succ, b.neg))
        }
        Op::Might => {
            let succ = |v| m.cond_successors(a, v);
            BiSet::new(dialike(m, succ, b.pos), dialike(m, succ, b.neg))
        }
    }
}

fn ext(m: &KripkeModel, f: &Formula) -> BiSet {
    let none = BiSet::default();
    match f {
        Formula::Atom(i) => m.val(*i),
        Formula::Neg(a) => ext(m, a).swap(),
        Formula::Box(a) => combine(m, Op::Box, ext(m, a), none),
        Formula::Dia(a) => combine(m, Op::Dia, ext(m, a), none),
        Formula::And(a, b) => combine(m, Op::And, ext(m, a), ext(m, b)),
        Formula::Or(a, b) => combine(m, Op::Or, ext(m, a), ext(m, b)),
        Formula::Imp(a, b) => combine(m, Op::Imp, ext(m, a), ext(m, b)),
        Formula::Would(a, b) => combine(m, Op::Would, ext(m, a), ext(m, b)),
        Formula::Might(a, b) => combine(m, Op::Might, ext(m, a), ext(m, b)),
    }
}

/// `‖f‖ = (|f|⁺, |f|⁻)`
pub fn biextension(m: &KripkeModel, f: &Formula) -> Result<BiSet, EvalError> {
    check_language(m, f)?;
    Ok(ext(m, f))
}

/// `m, w ⊨± f`, with the world given by name.
pub fn sat(m: &KripkeModel, w: &str, f: &Formula, s: Sign) -> Result<bool, EvalError> {
    let i = m.world_index(w).ok_or_else(|| EvalError::UnknownWorld(w.into()))?;
    sat_at(m, i, f, s)
}

/// `m, w ⊨± f`, with the world given by position.
pub fn sat_at(m: &KripkeModel, w: usize, f: &Formula, s: Sign) -> Result<bool, EvalError> {
    if w >= m.len() {
        return Err(EvalError::UnknownWorld(alloc::format!("#{w}")));
    }
    Ok(biextension(m, f)?.get(s).contains(w))
}

/// Whether every member of Γ is s-satisfied at the point and no member of Δ.
pub fn check_consecution(pm: &PointedModel, c: &Consecution, s: Sign) -> Result<bool, EvalError> {
    let mut ok = true;
    for f in &c.gamma {
        ok &= sat_at(&pm.model, pm.point, f, s)?;
    }
    for f in &c.delta {
        ok &= !sat_at(&pm.model, pm.point, f, s)?;
    }
    Ok(ok)
}

/// Whether `f` is verified at every world of `m`.
pub fn verified_everywhere(m: &KripkeModel, f: &Formula) -> Result<bool, EvalError> {
    Ok(biextension(m, f)?.pos == m.all())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::get_fixture;
    use crate::syntax::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn holds(name: &str, formula: &str, s: Sign) -> bool {
        let pm = get_fixture(name).unwrap();
        sat(&pm.model, "w", &f(formula), s).unwrap()
    }

    #[test]
    fn m0_refutes_contraposition() {
        assert!(!holds("M0", "(p0 -> p1) -> (~p1 -> ~p0)", Sign::Pos));
        assert!(holds("M0", "~(p0 => p1)", Sign::Pos));
        assert!(!holds("M0", "p0 => ~p1", Sign::Pos));
    }

    #[test]
    fn m1_claims() {
        assert!(holds("M1", "~((p0 & p1) -> p0)", Sign::Pos));
        assert!(!holds("M1", "~(p0 -> p0)", Sign::Pos));
    }

    #[test]
    fn m2_refutes_conditional_contradiction() {
        assert!(!holds("M2", "((p0 & ~p0) @> p0) & ~((p0 & ~p0) @> p0)", Sign::Pos));
    }

    #[test]
    fn m0c_bi_extensions() {
        let m = get_fixture("M0c").unwrap().model;
        let w = WorldSet::singleton(0);
        assert_eq!(biextension(&m, &f("p0 @> p1")).unwrap(), BiSet::new(w, w));
        assert_eq!(biextension(&m, &f("~p1 @> ~p0")).unwrap(), BiSet::new(WorldSet::EMPTY, w));
    }

    #[test]
    fn consecutions_at_points() {
        let pm = get_fixture("M0").unwrap();
        // Both atoms are verified at w, so q -> p holds there too.
        let c = Consecution::new([f("p0 -> p1")], [f("p1 -> p0")]);
        assert!(!check_consecution(&pm, &c, Sign::Pos).unwrap());
        let c = Consecution::new([f("p0 -> p1")], [f("~p1 -> ~p0")]);
        assert!(check_consecution(&pm, &c, Sign::Pos).unwrap());
        assert!(check_consecution(&pm, &Consecution::default(), Sign::Pos).unwrap());
    }

    #[test]
    fn language_and_world_errors() {
        let m = get_fixture("M0").unwrap().model;
        assert!(matches!(
            biextension(&m, &f("[]p0")),
            Err(EvalError::LanguageMismatch { language: LanguageTag::MD, kind: ModelKind::Prop })
        ));
        let mc = get_fixture("M0c").unwrap().model;
        assert!(biextension(&mc, &f("[]p0")).is_err());
        assert!(biextension(&mc, &f("[]p0 @> p1")).is_err());
        assert!(biextension(&mc, &f("p0 -> p1")).is_ok());
        assert_eq!(sat(&m, "x", &f("p0"), Sign::Pos), Err(EvalError::UnknownWorld("x".into())));
    }

    #[test]
    fn diamond_has_no_order_quantifier() {
        // w ≤ v, only v sees anything: ◇p fails at w although it holds above.
        let m = crate::model::ModelBuilder::new(ModelKind::Modal)
            .world("w")
            .world("v")
            .leq("w", "v")
            .access("v", "v")
            .val(0, Sign::Pos, &["v"])
            .build()
            .unwrap();
        assert_eq!(biextension(&m, &f("<>p0")).unwrap().pos, WorldSet::singleton(1));
        assert_eq!(biextension(&m, &f("[]p0")).unwrap().pos, WorldSet::full(2));
    }
}
