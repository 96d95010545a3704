//! Axiom schemes, rules and the systems built from them.
//!
//! Templates are ordinary formulas whose atoms act as metavariables:
//! `p0` is φ, `p1` is ψ, `p2` is χ.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::syntax::{parse, Formula, LanguageTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum System {
    /// Positive intuitionistic logic: α1–α8 and MP.
    S0,
    C,
    CnK,
    CnCK,
    CnCKR,
}

impl System {
    pub const ALL: [System; 5] = [System::S0, System::C, System::CnK, System::CnCK, System::CnCKR];

    pub fn name(self) -> &'static str {
        match self {
            System::S0 => "S0",
            System::C => "C",
            System::CnK => "CnK",
            System::CnCK => "CnCK",
            System::CnCKR => "CnCKR",
        }
    }

    pub fn language(self) -> LanguageTag {
        match self {
            System::S0 | System::C => LanguageTag::PL,
            System::CnK => LanguageTag::MD,
            System::CnCK | System::CnCKR => LanguageTag::CN,
        }
    }

    /// Whether every axiom and rule of `other` belongs to `self`.
    pub fn includes(self, other: System) -> bool {
        use System::*;
        match self {
            S0 => other == S0,
            C => matches!(other, S0 | C),
            CnK => matches!(other, S0 | C | CnK),
            CnCK => matches!(other, S0 | C | CnCK),
            CnCKR => matches!(other, S0 | C | CnCK | CnCKR),
        }
    }

    pub fn has_rule(self, rule: Rule) -> bool {
        match rule {
            Rule::Nec => self == System::CnK,
            _ => matches!(self, System::CnCK | System::CnCKR),
        }
    }

    pub fn axioms(self) -> impl Iterator<Item = AxiomScheme> {
        AXIOMS
            .iter()
            .filter(move |(_, from, _)| self.includes(*from))
            .map(|&(name, _, text)| AxiomScheme::from_table(name, text))
    }
}

impl From<crate::logic::Logic> for System {
    fn from(logic: crate::logic::Logic) -> System {
        match logic {
            crate::logic::Logic::C => System::C,
            crate::logic::Logic::CnK => System::CnK,
            crate::logic::Logic::CnCK => System::CnCK,
            crate::logic::Logic::CnCKR => System::CnCKR,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for System {
    type Err = ();

    fn from_str(s: &str) -> Result<System, ()> {
        System::ALL.into_iter().find(|sys| sys.name() == s).ok_or(())
    }
}

const AXIOMS: &[(&str, System, &str)] = &[
    ("a1", System::S0, "p0 -> (p1 -> p0)"),
    ("a2", System::S0, "(p0 -> (p1 -> p2)) -> ((p0 -> p1) -> (p0 -> p2))"),
    ("a3", System::S0, "(p0 & p1) -> p0"),
    ("a4", System::S0, "(p0 & p1) -> p1"),
    ("a5", System::S0, "p0 -> (p1 -> (p0 & p1))"),
    ("a6", System::S0, "p0 -> (p0 | p1)"),
    ("a7", System::S0, "p1 -> (p0 | p1)"),
    ("a8", System::S0, "(p0 -> p2) -> ((p1 -> p2) -> ((p0 | p1) -> p2))"),
    ("a9", System::C, "~~p0 <-> p0"),
    ("a10", System::C, "~(p0 & p1) <-> (~p0 | ~p1)"),
    ("a11", System::C, "~(p0 | p1) <-> (~p0 & ~p1)"),
    ("a12", System::C, "~(p0 -> p1) <-> (p0 -> ~p1)"),
    ("b1", System::CnK, "[](p0 -> p1) -> ([]p0 -> []p1)"),
    ("b2", System::CnK, "[](p0 -> p1) -> (<>p0 -> <>p1)"),
    ("b3", System::CnK, "<>(p0 | p1) -> (<>p0 | <>p1)"),
    ("b4", System::CnK, "(<>p0 -> []p1) -> [](p0 -> p1)"),
    ("b5", System::CnK, "~[]p0 <-> []~p0"),
    ("b6", System::CnK, "~<>p0 <-> <>~p0"),
    ("g1", System::CnCK, "((p0 @> p1) & (p0 @> p2)) <-> (p0 @> (p1 & p2))"),
    ("g2", System::CnCK, "((p0 ?> p1) & (p0 @> p2)) -> (p0 ?> (p1 & p2))"),
    ("g3", System::CnCK, "((p0 ?> p1) | (p0 ?> p2)) <-> (p0 ?> (p1 | p2))"),
    ("g4", System::CnCK, "((p0 ?> p1) -> (p0 @> p2)) -> (p0 @> (p1 -> p2))"),
    ("g5", System::CnCK, "p0 @> (p1 -> p1)"),
    ("g6", System::CnCK, "~(p0 @> p1) <-> (p0 @> ~p1)"),
    ("g7", System::CnCK, "~(p0 ?> p1) <-> (p0 ?> ~p1)"),
    ("g8", System::CnCKR, "p0 @> p0"),
];

/// Metavariable names as they appear in proof files.
pub const METAVARIABLES: [&str; 3] = ["phi", "psi", "chi"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomScheme {
    pub name: &'static str,
    /// The smallest system containing the scheme.
    pub system: System,
    pub template: Formula,
}

impl AxiomScheme {
    fn from_table(name: &'static str, text: &str) -> AxiomScheme {
        let system = AXIOMS.iter().find(|(n, _, _)| *n == name).map(|t| t.1).unwrap();
        AxiomScheme { name, system, template: parse(text).expect("axiom templates parse") }
    }
}

/// Looks up a scheme by name regardless of system.
pub fn axiom(name: &str) -> Option<AxiomScheme> {
    AXIOMS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(n, _, text)| AxiomScheme::from_table(n, text))
}

pub fn axiom_names() -> Vec<&'static str> {
    AXIOMS.iter().map(|t| t.0).collect()
}

/// The single-premise rules. Modus ponens is handled separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// From φ infer □φ.
    Nec,
    /// From φ⇔ψ infer (φ@>χ)⇔(ψ@>χ).
    RaBox,
    /// From φ↔ψ infer (χ@>φ)↔(χ@>ψ).
    RcBox,
    /// From φ⇔ψ infer (φ?>χ)⇔(ψ?>χ).
    RaDia,
    /// From φ↔ψ infer (χ?>φ)↔(χ?>ψ).
    RcDia,
}

impl Rule {
    pub const ALL: [Rule; 5] = [Rule::Nec, Rule::RaBox, Rule::RcBox, Rule::RaDia, Rule::RcDia];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Nec => "nec",
            Rule::RaBox => "ra-box",
            Rule::RcBox => "rc-box",
            Rule::RaDia => "ra-dia",
            Rule::RcDia => "rc-dia",
        }
    }

    /// Premise and conclusion templates.
    pub fn templates(self) -> (Formula, Formula) {
        let (premise, conclusion) = match self {
            Rule::Nec => ("p0", "[]p0"),
            Rule::RaBox => ("p0 <=> p1", "(p0 @> p2) <=> (p1 @> p2)"),
            Rule::RcBox => ("p0 <-> p1", "(p2 @> p0) <-> (p2 @> p1)"),
            Rule::RaDia => ("p0 <=> p1", "(p0 ?> p2) <=> (p1 ?> p2)"),
            Rule::RcDia => ("p0 <-> p1", "(p2 ?> p0) <-> (p2 ?> p1)"),
        };
        (parse(premise).unwrap(), parse(conclusion).unwrap())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = ();

    fn from_str(s: &str) -> Result<Rule, ()> {
        Rule::ALL.into_iter().find(|r| r.name() == s).ok_or(())
    }
}
