//! Connexivity classification with checkable evidence.
//!
//! For a logic and a binary connective ∗ the harness decides the seven
//! theses below on the instance φ := p0, ψ := p1 and derives a label.
//!
//! | thesis  | shape                       |
//! |---------|-----------------------------|
//! | AT      | `¬(¬φ ∗ φ)`                 |
//! | BT      | `(φ ∗ ¬ψ) ∗ ¬(φ ∗ ψ)`       |
//! | CBT     | `¬(φ ∗ ψ) ∗ (φ ∗ ¬ψ)`       |
//! | WBT     | `φ ∗ ¬ψ ⊨ ¬(φ ∗ ψ)`         |
//! | WCBT    | `¬(φ ∗ ψ) ⊨ φ ∗ ¬ψ`         |
//! | nonSym  | `(φ ∗ ψ) ∗ (ψ ∗ φ)`         |
//! | WnonSym | `φ ∗ ψ ⊨ ψ ∗ φ`             |
//!
//! A thesis holds when a checked proof in the library covers it (any proof
//! whose statement has the instance as a substitution instance), fails
//! when a named fixture or a bounded search refutes it, and otherwise holds
//! on bounded evidence only.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::eval::{check_consecution, Consecution, Sign};
use crate::logic::Logic;
use crate::model::fixtures::get_fixture;
use crate::model::{validate_model, PointedModel};
use crate::proof::schemes::System;
use crate::proof::{match_pattern, Binding, Library, ProofKind};
use crate::search::{find_countermodel_with, SearchBounds, SearchError, SearchOutcome};
use crate::syntax::{Formula, LanguageTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    Imp,
    StrongImp,
    Strict,
    StrongStrict,
    Would,
    StrongWould,
    Might,
    StrongMight,
}

impl Connective {
    pub const ALL: [Connective; 8] = [
        Connective::Imp,
        Connective::StrongImp,
        Connective::Strict,
        Connective::StrongStrict,
        Connective::Would,
        Connective::StrongWould,
        Connective::Might,
        Connective::StrongMight,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Imp => "->",
            Connective::StrongImp => "=>",
            Connective::Strict => "#>",
            Connective::StrongStrict => "#=>",
            Connective::Would => "@>",
            Connective::StrongWould => "@=>",
            Connective::Might => "?>",
            Connective::StrongMight => "?=>",
        }
    }

    /// The smallest language the connective is definable in.
    pub fn language(self) -> LanguageTag {
        match self {
            Connective::Imp | Connective::StrongImp => LanguageTag::PL,
            Connective::Strict | Connective::StrongStrict => LanguageTag::MD,
            _ => LanguageTag::CN,
        }
    }

    pub fn apply(self, a: Formula, b: Formula) -> Formula {
        match self {
            Connective::Imp => Formula::imp(a, b),
            Connective::StrongImp => Formula::strong_imp(a, b),
            Connective::Strict => Formula::strict(a, b),
            Connective::StrongStrict => Formula::strong_strict(a, b),
            Connective::Would => Formula::would(a, b),
            Connective::StrongWould => Formula::strong_would(a, b),
            Connective::Might => Formula::might(a, b),
            Connective::StrongMight => Formula::strong_might(a, b),
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Connective {
    type Err = ();

    fn from_str(s: &str) -> Result<Connective, ()> {
        Connective::ALL.into_iter().find(|c| c.symbol() == s).ok_or(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Thesis {
    AT,
    BT,
    CBT,
    WBT,
    WCBT,
    NonSym,
    WNonSym,
}

impl Thesis {
    pub const ALL: [Thesis; 7] =
        [Thesis::AT, Thesis::BT, Thesis::CBT, Thesis::WBT, Thesis::WCBT, Thesis::NonSym, Thesis::WNonSym];

    pub fn name(self) -> &'static str {
        match self {
            Thesis::AT => "AT",
            Thesis::BT => "BT",
            Thesis::CBT => "CBT",
            Thesis::WBT => "WBT",
            Thesis::WCBT => "WCBT",
            Thesis::NonSym => "nonSym",
            Thesis::WNonSym => "WnonSym",
        }
    }

    /// The thesis for `c` at φ := p0, ψ := p1.
    pub fn instance(self, c: Connective) -> Consecution {
        let (p, q) = (Formula::atom(0), Formula::atom(1));
        let star = |a: &Formula, b: &Formula| c.apply(a.clone(), b.clone());
        let n = |a: Formula| Formula::neg(a);
        let pq = star(&p, &q);
        let p_nq = star(&p, &n(q.clone()));
        match self {
            Thesis::AT => Consecution::theorem(n(star(&n(p.clone()), &p))),
            Thesis::BT => Consecution::theorem(star(&p_nq, &n(pq))),
            Thesis::CBT => Consecution::theorem(star(&n(pq), &p_nq)),
            Thesis::WBT => Consecution::new([p_nq], [n(pq)]),
            Thesis::WCBT => Consecution::new([n(pq)], [p_nq]),
            Thesis::NonSym => Consecution::theorem(star(&pq, &star(&q, &p))),
            Thesis::WNonSym => Consecution::new([pq], [star(&q, &p)]),
        }
    }
}

impl fmt::Display for Thesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A checked library proof covering the instance.
    Proof(String),
    /// A named fixture refuting the instance at its point.
    Fixture { name: String, model: PointedModel },
    /// A countermodel found by bounded search.
    Search(PointedModel),
    /// No proof and no countermodel within the bounds. Not conclusive;
    /// `exhausted` is false when the search was cut short.
    Bounded { bounds: SearchBounds, exhausted: bool },
}

impl Evidence {
    pub fn countermodel(&self) -> Option<&PointedModel> {
        match self {
            Evidence::Fixture { model, .. } | Evidence::Search(model) => Some(model),
            _ => None,
        }
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Evidence::Bounded { .. })
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Proof(name) => write!(f, "proof {name}"),
            Evidence::Fixture { name, model } => write!(f, "fixture {name} at {}", model.point_name()),
            Evidence::Search(pm) => {
                write!(f, "search hit ({} worlds) at {}", pm.model.len(), pm.point_name())
            }
            Evidence::Bounded { bounds, exhausted } => {
                let how = if *exhausted { "none" } else { "search cut short" };
                write!(f, "bounded: no countermodel up to {} worlds ({how})", bounds.max_worlds)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThesisStatus {
    pub thesis: Thesis,
    pub instance: Consecution,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    FullyHyperconnexive,
    FullyConnexive,
    PlainlyConnexive,
    WeaklyConnexive,
    WeaklyPartiallyHyperconnexive,
    WeaklyPartiallyConnexive,
    PartiallyConnexive,
    None,
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::FullyHyperconnexive => "fully hyperconnexive",
            Label::FullyConnexive => "fully connexive",
            Label::PlainlyConnexive => "plainly connexive",
            Label::WeaklyConnexive => "weakly connexive",
            Label::WeaklyPartiallyHyperconnexive => "weakly partially hyperconnexive",
            Label::WeaklyPartiallyConnexive => "weakly partially connexive",
            Label::PartiallyConnexive => "partially connexive",
            Label::None => "none",
        }
    }

    /// The strongest label the verdicts support.
    pub fn from_verdicts(holds: impl Fn(Thesis) -> bool) -> Label {
        use Thesis::*;
        let plain = holds(AT) && holds(BT) && !holds(NonSym);
        let weak = holds(AT) && holds(WBT) && !holds(WNonSym);
        let weak_partial = holds(WBT) && !holds(WNonSym);
        if plain && weak && holds(CBT) && holds(WCBT) {
            Label::FullyHyperconnexive
        } else if plain && weak {
            Label::FullyConnexive
        } else if plain {
            Label::PlainlyConnexive
        } else if weak {
            Label::WeaklyConnexive
        } else if weak_partial && holds(WCBT) {
            Label::WeaklyPartiallyHyperconnexive
        } else if weak_partial {
            Label::WeaklyPartiallyConnexive
        } else if (holds(AT) || holds(BT)) && !holds(NonSym) {
            Label::PartiallyConnexive
        } else {
            Label::None
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnexivityReport {
    pub logic: Logic,
    pub connective: Connective,
    pub statuses: Vec<ThesisStatus>,
    pub label: Label,
}

impl ConnexivityReport {
    pub fn from_statuses(logic: Logic, connective: Connective, statuses: Vec<ThesisStatus>) -> Self {
        let label = Label::from_verdicts(|t| {
            statuses.iter().any(|s| s.thesis == t && s.verdict == Verdict::Holds)
        });
        ConnexivityReport { logic, connective, statuses, label }
    }

    pub fn status(&self, thesis: Thesis) -> &ThesisStatus {
        self.statuses.iter().find(|s| s.thesis == thesis).expect("every thesis is decided")
    }

    pub fn holds(&self, thesis: Thesis) -> bool {
        self.status(thesis).verdict == Verdict::Holds
    }

    /// Re-checks every piece of evidence from scratch.
    pub fn recheck(&self, library: &Library) -> Result<(), HarnessError> {
        for s in &self.statuses {
            let ok = match &s.evidence {
                Evidence::Proof(name) => library
                    .get(name)
                    .is_some_and(|p| covers(p, &s.instance) && System::from(self.logic).includes(p.system)),
                Evidence::Fixture { model, .. } | Evidence::Search(model) => {
                    refutes(self.logic, model, &s.instance)
                }
                Evidence::Bounded { .. } => true,
            };
            let verdict_fits = match s.verdict {
                Verdict::Holds => s.evidence.countermodel().is_none(),
                Verdict::Fails => s.evidence.countermodel().is_some(),
            };
            if !ok || !verdict_fits {
                return Err(HarnessError::BadEvidence { thesis: s.thesis });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("{connective} is not expressible in {logic}")]
    LanguageMismatch { logic: Logic, connective: Connective },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("evidence for {thesis} does not re-check")]
    BadEvidence { thesis: Thesis },
}

/// Every (logic, connective) pair the harness classifies.
pub fn suite_pairs() -> Vec<(Logic, Connective)> {
    let mut pairs = Vec::new();
    for logic in Logic::ALL {
        for c in Connective::ALL {
            if c.language().within(logic.language()) {
                pairs.push((logic, c));
            }
        }
    }
    pairs
}

fn match_all(patterns: &[Formula], targets: &[&Formula], binding: &mut Binding) -> bool {
    let Some((first, rest)) = patterns.split_first() else {
        return true;
    };
    for t in targets {
        let mut b = binding.clone();
        if match_pattern(first, t, &mut b) && match_all(rest, targets, &mut b) {
            *binding = b;
            return true;
        }
    }
    false
}

/// Whether the statement proved by `proof` has `c` as a weakening of a
/// substitution instance.
fn covers(proof: &crate::proof::Proof, c: &Consecution) -> bool {
    if proof.kind == ProofKind::RuleDerive {
        return false;
    }
    let gamma: Vec<&Formula> = c.gamma.iter().collect();
    let delta: Vec<&Formula> = c.delta.iter().collect();
    let mut binding = Binding::new();
    match_all(&proof.hyps, &gamma, &mut binding) && match_all(&proof.goals, &delta, &mut binding)
}

fn refutes(logic: Logic, pm: &PointedModel, c: &Consecution) -> bool {
    validate_model(&pm.model, logic.frame_class()).is_ok()
        && check_consecution(pm, c, Sign::Pos) == Ok(true)
}

/// Fixtures known to refute a cell, tried before searching.
fn fixture_hints(logic: Logic, c: Connective, t: Thesis) -> &'static [&'static str] {
    use Connective::*;
    use Logic as L;
    use Thesis::*;
    match (logic, c, t) {
        (L::C, StrongImp, CBT | WCBT) => &["M0"],
        (L::CnK, StrongImp | StrongStrict, CBT | WCBT) => &["M0m"],
        (L::CnCK | L::CnCKR, StrongImp, CBT | WCBT) => &["M0c"],
        (L::CnCK, Would | StrongWould | Might | StrongMight, AT | BT) => &["M0c1"],
        (L::CnCK, StrongWould | StrongMight, WCBT) => &["M0c"],
        (L::CnCKR, StrongWould, CBT | WCBT) => &["M0c"],
        (L::CnCKR, StrongMight, WCBT) => &["M0c"],
        _ => &[],
    }
}

/// Decides one thesis. `stop` is polled during search.
pub fn run_cell(
    logic: Logic,
    connective: Connective,
    thesis: Thesis,
    bounds: &SearchBounds,
    library: &Library,
    stop: &mut dyn FnMut() -> bool,
) -> Result<ThesisStatus, HarnessError> {
    if !connective.language().within(logic.language()) {
        return Err(HarnessError::LanguageMismatch { logic, connective });
    }
    let instance = thesis.instance(connective);
    let status = |verdict, evidence| ThesisStatus { thesis, instance: instance.clone(), verdict, evidence };

    let system = System::from(logic);
    if let Some(p) = library.proofs.values().find(|p| system.includes(p.system) && covers(p, &instance)) {
        let name = p.name.clone().unwrap_or_default();
        return Ok(status(Verdict::Holds, Evidence::Proof(name)));
    }
    for &name in fixture_hints(logic, connective, thesis) {
        let pm = get_fixture(name).expect("hinted fixtures exist");
        if refutes(logic, &pm, &instance) {
            let evidence = Evidence::Fixture { name: name.into(), model: pm };
            return Ok(status(Verdict::Fails, evidence));
        }
    }
    match find_countermodel_with(logic, &instance, bounds, stop)? {
        SearchOutcome::Found(pm) => {
            if !refutes(logic, &pm, &instance) {
                return Err(HarnessError::BadEvidence { thesis });
            }
            Ok(status(Verdict::Fails, Evidence::Search(pm)))
        }
        SearchOutcome::ExhaustedBounds => {
            Ok(status(Verdict::Holds, Evidence::Bounded { bounds: bounds.clone(), exhausted: true }))
        }
        SearchOutcome::TimedOut => {
            Ok(status(Verdict::Holds, Evidence::Bounded { bounds: bounds.clone(), exhausted: false }))
        }
    }
}

/// Decides all seven theses and labels the connective.
pub fn run_suite(
    logic: Logic,
    connective: Connective,
    bounds: &SearchBounds,
    library: &Library,
) -> Result<ConnexivityReport, HarnessError> {
    let statuses = Thesis::ALL
        .into_iter()
        .map(|t| run_cell(logic, connective, t, bounds, library, &mut || false))
        .collect::<Result<Vec<_>, _>>()?;
    let report = ConnexivityReport::from_statuses(logic, connective, statuses);
    report.recheck(library)?;
    Ok(report)
}

fn mark(s: &ThesisStatus) -> &'static str {
    match (s.verdict, s.evidence.is_conclusive()) {
        (Verdict::Fails, _) => "no",
        (Verdict::Holds, true) => "yes",
        (Verdict::Holds, false) => "yes?",
    }
}

/// Text table, one row per report.
pub fn render_table(reports: &[ConnexivityReport]) -> String {
    let mut out = format!("{:<6} {:<4}", "logic", "conn");
    for t in Thesis::ALL {
        out.push_str(&format!(" {:<7}", t.name()));
    }
    out.push_str(" label\n");
    for r in reports {
        out.push_str(&format!("{:<6} {:<4}", r.logic.name(), r.connective.symbol()));
        for t in Thesis::ALL {
            out.push_str(&format!(" {:<7}", mark(r.status(t))));
        }
        out.push_str(&format!(" {}\n", r.label));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::sat;
    use crate::proof::corpus;
    use crate::syntax::parse;
    use std::sync::OnceLock;

    fn library() -> &'static Library {
        static LIB: OnceLock<Library> = OnceLock::new();
        LIB.get_or_init(|| corpus::build().library)
    }

    fn bounds() -> SearchBounds {
        SearchBounds::new(2)
    }

    fn golden(logic: Logic, c: Connective) -> Label {
        use Connective::*;
        match (logic, c) {
            (_, Imp) => Label::FullyHyperconnexive,
            (_, StrongImp) => Label::FullyConnexive,
            (Logic::CnK, Strict) => Label::FullyHyperconnexive,
            (Logic::CnK, StrongStrict) => Label::FullyConnexive,
            (Logic::CnCK, Would | Might) => Label::WeaklyPartiallyHyperconnexive,
            (Logic::CnCK, StrongWould | StrongMight) => Label::WeaklyPartiallyConnexive,
            (Logic::CnCKR, Would) => Label::FullyHyperconnexive,
            (Logic::CnCKR, StrongWould) => Label::FullyConnexive,
            (Logic::CnCKR, Might) => Label::WeaklyPartiallyHyperconnexive,
            (Logic::CnCKR, StrongMight) => Label::WeaklyPartiallyConnexive,
            _ => unreachable!("not a suite pair"),
        }
    }

    #[test]
    fn eighteen_pairs() {
        let pairs = suite_pairs();
        assert_eq!(pairs.len(), 18);
        assert!(!pairs.contains(&(Logic::CnCK, Connective::Strict)));
        assert!(!pairs.contains(&(Logic::C, Connective::Would)));
    }

    #[test]
    fn labels_follow_the_definitions() {
        use Thesis::*;
        let from = |yes: &[Thesis]| Label::from_verdicts(|t| yes.contains(&t));
        assert_eq!(from(&[AT, BT, CBT, WBT, WCBT]), Label::FullyHyperconnexive);
        assert_eq!(from(&[AT, BT, WBT]), Label::FullyConnexive);
        assert_eq!(from(&[AT, BT, CBT, WBT, WCBT, NonSym]), Label::WeaklyConnexive);
        assert_eq!(from(&[AT, BT, CBT]), Label::PlainlyConnexive);
        assert_eq!(from(&[BT, WBT, WCBT]), Label::WeaklyPartiallyHyperconnexive);
        assert_eq!(from(&[WBT, WCBT, WNonSym, BT]), Label::PartiallyConnexive);
        assert_eq!(from(&[WBT]), Label::WeaklyPartiallyConnexive);
        assert_eq!(from(&[AT, NonSym]), Label::None);
        assert_eq!(from(&[]), Label::None);
    }

    #[test]
    fn instances() {
        let c = Connective::Would;
        assert_eq!(Thesis::AT.instance(c), Consecution::theorem(parse("~(~p0 @> p0)").unwrap()));
        assert_eq!(
            Thesis::WCBT.instance(Connective::StrongImp),
            Consecution::new([parse("~(p0 => p1)").unwrap()], [parse("p0 => ~p1").unwrap()])
        );
        assert_eq!(
            Thesis::NonSym.instance(Connective::Imp),
            Consecution::theorem(parse("(p0 -> p1) -> (p1 -> p0)").unwrap())
        );
    }

    #[test]
    fn at_for_would_fails_on_the_named_fixture() {
        let m = get_fixture("M0c1").unwrap().model;
        assert!(!sat(&m, "w", &parse("~(~p0 @> p0)").unwrap(), Sign::Pos).unwrap());
        let s = run_cell(Logic::CnCK, Connective::Would, Thesis::AT, &bounds(), library(), &mut || false)
            .unwrap();
        assert_eq!(s.verdict, Verdict::Fails);
        assert!(matches!(&s.evidence, Evidence::Fixture { name, .. } if name == "M0c1"));
    }

    #[test]
    fn golden_table() {
        for (logic, c) in suite_pairs() {
            let report = run_suite(logic, c, &bounds(), library()).unwrap();
            assert_eq!(report.label, golden(logic, c), "{logic} {c}");
            for s in &report.statuses {
                if s.verdict == Verdict::Holds {
                    assert!(s.evidence.is_conclusive(), "{logic} {c} {}: {}", s.thesis, s.evidence);
                }
            }
        }
    }

    #[test]
    fn strong_would_in_cnck() {
        let r = run_suite(Logic::CnCK, Connective::StrongWould, &bounds(), library()).unwrap();
        assert_eq!(r.label, Label::WeaklyPartiallyConnexive);
        let wcbt = r.status(Thesis::WCBT);
        assert_eq!(wcbt.verdict, Verdict::Fails);
        assert!(matches!(&wcbt.evidence, Evidence::Fixture { name, .. } if name == "M0c"));
        let pm = wcbt.evidence.countermodel().unwrap();
        assert!(sat(&pm.model, "w", &parse("~(p0 @=> p1) & ~(p0 ?=> p1)").unwrap(), Sign::Pos).unwrap());
        assert!(!sat(&pm.model, "w", &parse("(p0 @=> ~p1) | (p0 ?=> ~p1)").unwrap(), Sign::Pos).unwrap());
    }

    #[test]
    fn larger_bounds_keep_fixture_verdicts() {
        let big = SearchBounds::new(3);
        for (logic, c) in [(Logic::CnCK, Connective::Might), (Logic::C, Connective::StrongImp)] {
            let small = run_suite(logic, c, &bounds(), library()).unwrap();
            for s in &small.statuses {
                if matches!(s.evidence, Evidence::Fixture { .. }) {
                    let again = run_cell(logic, c, s.thesis, &big, library(), &mut || false).unwrap();
                    assert_eq!(again.verdict, s.verdict);
                }
            }
        }
    }

    #[test]
    fn tampered_evidence_is_caught() {
        let mut r = run_suite(Logic::C, Connective::StrongImp, &bounds(), library()).unwrap();
        r.statuses[0].evidence = Evidence::Search(get_fixture("triv").unwrap());
        r.statuses[0].verdict = Verdict::Fails;
        assert_eq!(r.recheck(library()), Err(HarnessError::BadEvidence { thesis: Thesis::AT }));
    }

    #[test]
    fn rejects_inexpressible_connectives() {
        assert_eq!(
            run_suite(Logic::C, Connective::Would, &bounds(), library()),
            Err(HarnessError::LanguageMismatch { logic: Logic::C, connective: Connective::Would })
        );
    }
}
