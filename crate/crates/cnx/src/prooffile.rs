//! The proof file format.
//!
//! ```text
//! system CnCK
//! kind rulederive
//! name appendix_nec
//! hyp p0
//! goal p1 @> p0
//! 1 p0 hyp
//! 2 (p0 -> (p0 -> p0)) axiom a1 phi=p0 psi=p0
//! 3 (p0 -> p0) mp 1 2
//! ...
//! ```
//!
//! Each numbered line holds a formula followed by its justification:
//! `axiom NAME [phi=F] [psi=F] [chi=F]`, `mp I J`, a rule name with one
//! line reference, `hyp`, or `lemma NAME`. The formula ends at the first
//! justification keyword, which never occurs inside a formula.

use std::fmt::Write as _;
use std::str::FromStr;

use cnx_core::proof::{Binding, Justification, Line, Proof, ProofKind, Rule, System, METAVARIABLES};
use cnx_core::syntax::{parse, Formula, SyntaxError};

use crate::modelfile::strip_comment;

#[derive(Debug, thiserror::Error)]
pub enum ProofFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: SyntaxError },
    #[error("missing '{0}' line")]
    MissingHeader(&'static str),
}

fn syntax(line: usize, msg: impl Into<String>) -> ProofFileError {
    ProofFileError::Syntax { line, msg: msg.into() }
}

fn formula(line: usize, text: &str) -> Result<Formula, ProofFileError> {
    parse(text).map_err(|source| ProofFileError::Formula { line, source })
}

fn is_keyword(t: &str) -> bool {
    matches!(t, "axiom" | "mp" | "hyp" | "lemma") || Rule::from_str(t).is_ok()
}

fn reference(line: usize, t: &str) -> Result<usize, ProofFileError> {
    t.parse().map_err(|_| syntax(line, format!("bad line reference '{t}'")))
}

fn parse_binding(line: usize, tokens: &[&str]) -> Result<Binding, ProofFileError> {
    let mut binding = Binding::new();
    let mut current: Option<(u32, Vec<&str>)> = None;
    let flush = |cur: Option<(u32, Vec<&str>)>, binding: &mut Binding| -> Result<(), ProofFileError> {
        if let Some((slot, parts)) = cur {
            if binding.insert(slot, formula(line, &parts.join(" "))?).is_some() {
                return Err(syntax(line, format!("{} bound twice", METAVARIABLES[slot as usize])));
            }
        }
        Ok(())
    };
    for &t in tokens {
        let start = METAVARIABLES.iter().enumerate().find_map(|(i, mv)| {
            t.strip_prefix(mv).and_then(|r| r.strip_prefix('=')).map(|r| (i as u32, r))
        });
        match (start, current.as_mut()) {
            (Some((slot, first)), _) => {
                flush(current.take(), &mut binding)?;
                current = Some((slot, if first.is_empty() { vec![] } else { vec![first] }));
            }
            (None, Some((_, parts))) => parts.push(t),
            (None, None) => return Err(syntax(line, format!("expected phi=, psi= or chi=, got '{t}'"))),
        }
    }
    flush(current, &mut binding)?;
    Ok(binding)
}

fn parse_line(line: usize, tokens: &[&str]) -> Result<Line, ProofFileError> {
    let Some(k) = tokens.iter().position(|t| is_keyword(t)) else {
        return Err(syntax(line, "missing justification"));
    };
    if k == 0 {
        return Err(syntax(line, "missing formula"));
    }
    let f = formula(line, &tokens[..k].join(" "))?;
    let args = &tokens[k + 1..];
    let just = match tokens[k] {
        "axiom" => {
            let Some((name, rest)) = args.split_first() else {
                return Err(syntax(line, "expected 'axiom NAME'"));
            };
            Justification::Axiom { name: name.to_string(), binding: parse_binding(line, rest)? }
        }
        "mp" => {
            let [i, j] = args else { return Err(syntax(line, "expected 'mp I J'")) };
            Justification::Mp(reference(line, i)?, reference(line, j)?)
        }
        "hyp" => {
            if !args.is_empty() {
                return Err(syntax(line, "'hyp' takes no arguments"));
            }
            Justification::Hyp
        }
        "lemma" => {
            let [name] = args else { return Err(syntax(line, "expected 'lemma NAME'")) };
            Justification::Lemma(name.to_string())
        }
        rule => {
            let rule = Rule::from_str(rule).expect("keyword");
            let [i] = args else { return Err(syntax(line, format!("expected '{rule} I'"))) };
            Justification::Rule(rule, reference(line, i)?)
        }
    };
    Ok(Line { formula: f, just })
}

/// Parses a proof file. Checking is separate.
pub fn parse_proof(text: &str) -> Result<Proof, ProofFileError> {
    let mut system = None;
    let mut kind = None;
    let mut name = None;
    let mut hyps = Vec::new();
    let mut goals = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let content = strip_comment(raw).trim();
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = tokens.split_first() else { continue };
        let rest_text = content[head.len()..].trim();
        match head {
            "system" => {
                let [s] = rest else { return Err(syntax(n, "expected 'system NAME'")) };
                system = Some(System::from_str(s).map_err(|_| syntax(n, format!("unknown system '{s}'")))?);
            }
            "kind" => {
                let [k] = rest else { return Err(syntax(n, "expected 'kind theorem|entail|rulederive'")) };
                kind = Some(ProofKind::from_name(k).ok_or_else(|| syntax(n, format!("unknown kind '{k}'")))?);
            }
            "name" => {
                let [s] = rest else { return Err(syntax(n, "expected 'name NAME'")) };
                name = Some(s.to_string());
            }
            "hyp" => hyps.push(formula(n, rest_text)?),
            "goal" => goals.push(formula(n, rest_text)?),
            number if number.bytes().all(|b| b.is_ascii_digit()) => {
                let expected = lines.len() + 1;
                if number.parse::<usize>().ok() != Some(expected) {
                    return Err(syntax(n, format!("expected line number {expected}, got {number}")));
                }
                lines.push(parse_line(n, rest)?);
            }
            other => return Err(syntax(n, format!("unknown directive '{other}'"))),
        }
    }
    Ok(Proof {
        name,
        system: system.ok_or(ProofFileError::MissingHeader("system"))?,
        kind: kind.ok_or(ProofFileError::MissingHeader("kind"))?,
        hyps,
        goals,
        lines,
    })
}

pub fn write_proof(p: &Proof) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system {}", p.system);
    let _ = writeln!(out, "kind {}", p.kind);
    if let Some(name) = &p.name {
        let _ = writeln!(out, "name {name}");
    }
    for h in &p.hyps {
        let _ = writeln!(out, "hyp {h}");
    }
    for g in &p.goals {
        let _ = writeln!(out, "goal {g}");
    }
    for (i, line) in p.lines.iter().enumerate() {
        let _ = write!(out, "{} {} ", i + 1, line.formula);
        let _ = match &line.just {
            Justification::Axiom { name, binding } => {
                let _ = write!(out, "axiom {name}");
                for (slot, f) in binding {
                    let _ = write!(out, " {}={f}", METAVARIABLES[*slot as usize]);
                }
                writeln!(out)
            }
            Justification::Mp(a, b) => writeln!(out, "mp {a} {b}"),
            Justification::Rule(rule, a) => writeln!(out, "{rule} {a}"),
            Justification::Hyp => writeln!(out, "hyp"),
            Justification::Lemma(name) => writeln!(out, "lemma {name}"),
        };
    }
    out
}
