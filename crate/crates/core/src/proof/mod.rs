//! Hilbert-style proofs: representation, checking and a theorem registry.
//!
//! A proof is a numbered list of lines, each justified by an axiom
//! instance, modus ponens, a rule, a hypothesis, or a registered lemma.
//! Three kinds are supported: `theorem` (one goal, no hypotheses),
//! `entail` (hypotheses Γ and goals Δ, derived with MP from theorems and Γ)
//! and `rulederive` (a derived rule; rules may act on hypotheses).

pub mod builder;
pub mod corpus;
pub mod schemes;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{substitute_all, Formula, LanguageTag};

pub use builder::{ProofBuilder, Step};
pub use schemes::{axiom, AxiomScheme, Rule, System, METAVARIABLES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProofKind {
    Theorem,
    Entail,
    RuleDerive,
}

impl ProofKind {
    pub fn name(self) -> &'static str {
        match self {
            ProofKind::Theorem => "theorem",
            ProofKind::Entail => "entail",
            ProofKind::RuleDerive => "rulederive",
        }
    }

    pub fn from_name(s: &str) -> Option<ProofKind> {
        [ProofKind::Theorem, ProofKind::Entail, ProofKind::RuleDerive]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

impl fmt::Display for ProofKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Metavariable bindings, keyed by template atom (0 = φ, 1 = ψ, 2 = χ).
pub type Binding = BTreeMap<u32, Formula>;

/// Line references are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// An axiom instance; the binding may be partial or empty.
    Axiom { name: String, binding: Binding },
    /// From lines `i` and `j`, one of which is the implication.
    Mp(usize, usize),
    Rule(Rule, usize),
    Hyp,
    /// An instance of a registered theorem.
    Lemma(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub name: Option<String>,
    pub system: System,
    pub kind: ProofKind,
    pub hyps: Vec<Formula>,
    pub goals: Vec<Formula>,
    pub lines: Vec<Line>,
}

impl Proof {
    /// The single goal of a theorem or derived rule.
    pub fn goal(&self) -> Option<&Formula> {
        match self.goals.as_slice() {
            [g] => Some(g),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProofErrorKind {
    #[error("{0}")]
    BadHeader(&'static str),
    #[error("unknown axiom '{0}'")]
    UnknownAxiom(String),
    #[error("axiom {name} is not part of {system}")]
    AxiomNotInSystem { name: String, system: System },
    #[error("formula is not an instance of {scheme} under the given bindings")]
    BadSchemeInstance { scheme: String },
    #[error("reference to line {0}, which is not an earlier line")]
    BadReference(usize),
    #[error("modus ponens does not apply to lines {0} and {1}")]
    MpMismatch(usize, usize),
    #[error("rule {rule} is not part of {system}")]
    RuleNotInSystem { rule: Rule, system: System },
    #[error("rule {rule} may not be applied to a hypothesis-dependent line of a proof of kind {kind}")]
    RuleNotPermittedInKind { rule: Rule, kind: ProofKind },
    #[error("formula is not a conclusion of {rule} from the cited line")]
    BadRuleInstance { rule: Rule },
    #[error("hypotheses are not allowed in a theorem proof")]
    HypInTheorem,
    #[error("formula is not among the declared hypotheses")]
    UnknownHypothesis,
    #[error("unknown lemma '{0}'")]
    UnknownLemma(String),
    #[error("lemma '{lemma}' was proved in {lemma_system}, which {system} does not include")]
    LemmaSystem { lemma: String, lemma_system: System, system: System },
    #[error("formula is not an instance of lemma '{0}'")]
    BadLemmaInstance(String),
    #[error("a {language} formula is outside the language of {system}")]
    LanguageMismatch { language: LanguageTag, system: System },
    #[error("the proof does not establish its goal")]
    GoalMismatch,
}

/// `line` is 1-based; `None` for header-level problems.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ProofError {
    pub line: Option<usize>,
    pub kind: ProofErrorKind,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

fn err<T>(line: Option<usize>, kind: ProofErrorKind) -> Result<T, ProofError> {
    Err(ProofError { line, kind })
}

/// Extends `binding` so that `pattern` under it equals `f`.
///
/// On failure the binding may be left partially extended.
pub fn match_pattern(pattern: &Formula, f: &Formula, binding: &mut Binding) -> bool {
    use Formula::*;
    match (pattern, f) {
        (Atom(i), _) => match binding.get(i) {
            Some(bound) => bound == f,
            None => {
                binding.insert(*i, f.clone());
                true
            }
        },
        (Neg(a), Neg(b)) | (Box(a), Box(b)) | (Dia(a), Dia(b)) => match_pattern(a, b, binding),
        (And(a1, a2), And(b1, b2))
        | (Or(a1, a2), Or(b1, b2))
        | (Imp(a1, a2), Imp(b1, b2))
        | (Would(a1, a2), Would(b1, b2))
        | (Might(a1, a2), Might(b1, b2)) => {
            match_pattern(a1, b1, binding) && match_pattern(a2, b2, binding)
        }
        _ => false,
    }
}

/// Whether `f` is a substitution instance of `pattern`.
pub fn is_instance(pattern: &Formula, f: &Formula) -> bool {
    match_pattern(pattern, f, &mut Binding::new())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem {
    pub system: System,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("'{0}' is already registered with a different statement")]
    Conflict(String),
    #[error("only theorem proofs with a name can be registered")]
    NotRegistrable,
    #[error(transparent)]
    Invalid(#[from] ProofError),
}

/// Named theorems available for lemma citation. Atoms of a registered
/// formula act as metavariables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    theorems: BTreeMap<String, Theorem>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    pub fn get(&self, name: &str) -> Option<&Theorem> {
        self.theorems.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.theorems.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.theorems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theorems.is_empty()
    }

    pub fn insert(&mut self, name: &str, theorem: Theorem) -> Result<(), RegistryError> {
        match self.theorems.get(name) {
            Some(old) if *old != theorem => Err(RegistryError::Conflict(name.into())),
            _ => {
                self.theorems.insert(name.into(), theorem);
                Ok(())
            }
        }
    }

    /// Checks a named theorem proof and registers its goal.
    pub fn register(&mut self, proof: &Proof) -> Result<(), RegistryError> {
        check_proof(proof, self)?;
        let (Some(name), ProofKind::Theorem, Some(goal)) = (&proof.name, proof.kind, proof.goal())
        else {
            return Err(RegistryError::NotRegistrable);
        };
        self.insert(name, Theorem { system: proof.system, formula: goal.clone() })
    }
}

fn check_language(system: System, f: &Formula, line: Option<usize>) -> Result<(), ProofError> {
    let language = f.language();
    if language.within(system.language()) {
        Ok(())
    } else {
        err(line, ProofErrorKind::LanguageMismatch { language, system })
    }
}

/// Checks every line and the goal condition.
///
/// In `entail` proofs a rule may only be applied to lines that do not
/// depend on any hypothesis; such lines are theorems of the system.
pub fn check_proof(proof: &Proof, registry: &Registry) -> Result<(), ProofError> {
    use ProofErrorKind as K;
    let system = proof.system;
    match proof.kind {
        ProofKind::Theorem if !proof.hyps.is_empty() => return err(None, K::HypInTheorem),
        ProofKind::Theorem | ProofKind::RuleDerive if proof.goals.len() != 1 => {
            return err(None, K::BadHeader("exactly one goal is required"))
        }
        ProofKind::Entail if proof.goals.is_empty() => {
            return err(None, K::BadHeader("at least one goal is required"))
        }
        _ => {}
    }
    for f in proof.hyps.iter().chain(&proof.goals) {
        check_language(system, f, None)?;
    }

    // Whether each line depends on a hypothesis.
    let mut dependent: Vec<bool> = Vec::with_capacity(proof.lines.len());
    for (idx, line) in proof.lines.iter().enumerate() {
        let n = idx + 1;
        let at = Some(n);
        check_language(system, &line.formula, at)?;
        let earlier = |r: usize| -> Result<&Line, ProofError> {
            if r == 0 || r >= n {
                err(at, K::BadReference(r))
            } else {
                Ok(&proof.lines[r - 1])
            }
        };
        let dep = match &line.just {
            Justification::Axiom { name, binding } => {
                let scheme = axiom(name).ok_or_else(|| ProofError {
                    line: at,
                    kind: K::UnknownAxiom(name.clone()),
                })?;
                if !system.includes(scheme.system) {
                    return err(at, K::AxiomNotInSystem { name: name.clone(), system });
                }
                let mut b = binding.clone();
                if !match_pattern(&scheme.template, &line.formula, &mut b) {
                    return err(at, K::BadSchemeInstance { scheme: name.clone() });
                }
                false
            }
            Justification::Mp(i, j) => {
                let (a, b) = (earlier(*i)?, earlier(*j)?);
                let fits = |minor: &Line, major: &Line| {
                    matches!(&major.formula, Formula::Imp(x, y)
                        if **x == minor.formula && **y == line.formula)
                };
                if !fits(a, b) && !fits(b, a) {
                    return err(at, K::MpMismatch(*i, *j));
                }
                dependent[i - 1] || dependent[j - 1]
            }
            Justification::Rule(rule, i) => {
                let premise = earlier(*i)?;
                if !system.has_rule(*rule) {
                    return err(at, K::RuleNotInSystem { rule: *rule, system });
                }
                let dep = dependent[i - 1];
                if dep && proof.kind != ProofKind::RuleDerive {
                    return err(at, K::RuleNotPermittedInKind { rule: *rule, kind: proof.kind });
                }
                let (p, c) = rule.templates();
                let mut b = Binding::new();
                if !(match_pattern(&p, &premise.formula, &mut b)
                    && match_pattern(&c, &line.formula, &mut b))
                {
                    return err(at, K::BadRuleInstance { rule: *rule });
                }
                dep
            }
            Justification::Hyp => {
                if proof.kind == ProofKind::Theorem {
                    return err(at, K::HypInTheorem);
                }
                if !proof.hyps.contains(&line.formula) {
                    return err(at, K::UnknownHypothesis);
                }
                true
            }
            Justification::Lemma(name) => {
                let thm = registry.get(name).ok_or_else(|| ProofError {
                    line: at,
                    kind: K::UnknownLemma(name.clone()),
                })?;
                if !system.includes(thm.system) {
                    return err(
                        at,
                        K::LemmaSystem {
                            lemma: name.clone(),
                            lemma_system: thm.system,
                            system,
                        },
                    );
                }
                if !is_instance(&thm.formula, &line.formula) {
                    return err(at, K::BadLemmaInstance(name.clone()));
                }
                false
            }
        };
        dependent.push(dep);
    }

    let last = proof.lines.last().map(|l| &l.formula);
    let reached = match proof.kind {
        ProofKind::Theorem | ProofKind::RuleDerive => last == proof.goal(),
        ProofKind::Entail => {
            let delta: BTreeSet<&Formula> = proof.goals.iter().collect();
            last.is_some_and(|f| disjunction_of(f, &delta))
        }
    };
    if reached {
        Ok(())
    } else {
        err(None, K::GoalMismatch)
    }
}

/// Whether `f` is a disjunction (in any bracketing) of members of Δ.
fn disjunction_of(f: &Formula, delta: &BTreeSet<&Formula>) -> bool {
    delta.contains(f)
        || matches!(f, Formula::Or(l, r) if disjunction_of(l, delta) && disjunction_of(r, delta))
}

/// Instantiates a template with the given metavariable values.
pub fn instantiate(template: &Formula, values: &[Formula]) -> Formula {
    let map: Binding = values.iter().cloned().enumerate().map(|(i, f)| (i as u32, f)).collect();
    substitute_all(template, &map)
}

/// Renders a binding the way proof files write it, e.g. `phi=p0 psi=~p1`.
pub fn render_binding(binding: &Binding) -> String {
    let mut out = String::new();
    for (k, v) in binding {
        if !out.is_empty() {
            out.push(' ');
        }
        let name = METAVARIABLES.get(*k as usize).map_or_else(|| alloc::format!("m{k}"), |s| s.to_string());
        out.push_str(&name);
        out.push('=');
        out.push_str(&crate::syntax::render(v));
    }
    out
}

/// Checked proofs by name, plus the registry of their theorem goals.
#[derive(Clone, Debug, Default)]
pub struct Library {
    pub registry: Registry,
    pub proofs: BTreeMap<String, Proof>,
}

impl Library {
    pub fn new() -> Library {
        Library::default()
    }

    /// Checks a named proof, registering it when it is a theorem.
    pub fn add(&mut self, proof: Proof) -> Result<(), RegistryError> {
        let name = proof.name.clone().ok_or(RegistryError::NotRegistrable)?;
        if proof.kind == ProofKind::Theorem {
            self.registry.register(&proof)?;
        } else {
            check_proof(&proof, &self.registry)?;
        }
        self.proofs.insert(name, proof);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Proof> {
        self.proofs.get(name)
    }
}
