//! Formulas, the concrete grammar, and substitution.
//!
//! The grammar, tightest binding first:
//!
//! | level       | operators                                   | associativity |
//! |-------------|---------------------------------------------|---------------|
//! | prefix      | `~`  `[]`  `<>`                             |               |
//! | conjunction | `&`                                         | left          |
//! | disjunction | `\|`                                        | left          |
//! | arrows      | `->` `=>` `@>` `?>` `@=>` `?=>` `#>` `#=>`  | right         |
//! | equivalence | `<->` `<=>` `<#>` `<#=>`                    | none          |
//!
//! Atoms are `p0`, `p1`, ... Every defined connective is expanded while
//! parsing, so a [`Formula`] only ever contains the nine core constructors.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(u32),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
    /// The would-conditional `@>`.
    Would(Box<Formula>, Box<Formula>),
    /// The might-conditional `?>`.
    Might(Box<Formula>, Box<Formula>),
}

/// Which language a formula belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LanguageTag {
    /// Propositional: no modal and no conditional nodes.
    PL,
    /// Modal nodes, no conditional nodes.
    MD,
    /// Conditional nodes, no modal nodes.
    CN,
    /// Both modal and conditional nodes.
    Mixed,
}

impl LanguageTag {
    /// Smallest language containing both.
    pub fn join(self, other: LanguageTag) -> LanguageTag {
        use LanguageTag::*;
        match (self, other) {
            (PL, x) | (x, PL) => x,
            (a, b) if a == b => a,
            _ => Mixed,
        }
    }

    /// Whether every formula of `self` is also a formula of `other`.
    pub fn within(self, other: LanguageTag) -> bool {
        self == LanguageTag::PL || self == other
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LanguageTag::PL => "PL",
            LanguageTag::MD => "MD",
            LanguageTag::CN => "CN",
            LanguageTag::Mixed => "Mixed",
        };
        f.write_str(s)
    }
}

impl Formula {
    pub fn atom(i: u32) -> Formula {
        Formula::Atom(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Box::new(a))
    }

    pub fn dia(a: Formula) -> Formula {
        Formula::Dia(Box::new(a))
    }

    pub fn would(a: Formula, b: Formula) -> Formula {
        Formula::Would(Box::new(a), Box::new(b))
    }

    pub fn might(a: Formula, b: Formula) -> Formula {
        Formula::Might(Box::new(a), Box::new(b))
    }

    /// `a <-> b`
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// `a => b`, strong implication.
    pub fn strong_imp(a: Formula, b: Formula) -> Formula {
        let contra = Formula::imp(Formula::neg(b.clone()), Formula::neg(a.clone()));
        Formula::and(Formula::imp(a, b), contra)
    }

    /// `a <=> b`
    pub fn strong_iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::strong_imp(a.clone(), b.clone()),
            Formula::strong_imp(b, a),
        )
    }

    /// `a #> b`, strict implication.
    pub fn strict(a: Formula, b: Formula) -> Formula {
        Formula::boxed(Formula::imp(a, b))
    }

    /// `a #=> b`, strong strict implication.
    pub fn strong_strict(a: Formula, b: Formula) -> Formula {
        Formula::boxed(Formula::strong_imp(a, b))
    }

    /// `a <#> b`
    pub fn strict_iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::strict(a.clone(), b.clone()), Formula::strict(b, a))
    }

    /// `a <#=> b`
    pub fn strong_strict_iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::strong_strict(a.clone(), b.clone()),
            Formula::strong_strict(b, a),
        )
    }

    /// `a @=> b`, the strong would-conditional.
    pub fn strong_would(a: Formula, b: Formula) -> Formula {
        let contra = Formula::would(Formula::neg(b.clone()), Formula::neg(a.clone()));
        Formula::and(Formula::would(a, b), contra)
    }

    /// `a ?=> b`, the strong might-conditional.
    pub fn strong_might(a: Formula, b: Formula) -> Formula {
        let contra = Formula::might(Formula::neg(b.clone()), Formula::neg(a.clone()));
        Formula::and(Formula::might(a, b), contra)
    }

    pub fn language(&self) -> LanguageTag {
        match self {
            Formula::Atom(_) => LanguageTag::PL,
            Formula::Neg(a) => a.language(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.language().join(b.language())
            }
            Formula::Box(a) | Formula::Dia(a) => LanguageTag::MD.join(a.language()),
            Formula::Would(a, b) | Formula::Might(a, b) => {
                LanguageTag::CN.join(a.language()).join(b.language())
            }
        }
    }

    /// Number of nested constructors above the deepest atom.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Neg(a) | Formula::Box(a) | Formula::Dia(a) => 1 + a.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Would(a, b)
            | Formula::Might(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(a) | Formula::Box(a) | Formula::Dia(a) => 1 + a.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Would(a, b)
            | Formula::Might(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Atom(i) => {
                out.insert(*i);
            }
            Formula::Neg(a) | Formula::Box(a) | Formula::Dia(a) => a.collect_atoms(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Would(a, b)
            | Formula::Might(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Rebuilds the formula bottom-up, replacing each atom by `leaf(i)`.
    pub fn map_atoms(&self, leaf: &mut impl FnMut(u32) -> Formula) -> Formula {
        match self {
            Formula::Atom(i) => leaf(*i),
            Formula::Neg(a) => Formula::neg(a.map_atoms(leaf)),
            Formula::Box(a) => Formula::boxed(a.map_atoms(leaf)),
            Formula::Dia(a) => Formula::dia(a.map_atoms(leaf)),
            Formula::And(a, b) => Formula::and(a.map_atoms(leaf), b.map_atoms(leaf)),
            Formula::Or(a, b) => Formula::or(a.map_atoms(leaf), b.map_atoms(leaf)),
            Formula::Imp(a, b) => Formula::imp(a.map_atoms(leaf), b.map_atoms(leaf)),
            Formula::Would(a, b) => Formula::would(a.map_atoms(leaf), b.map_atoms(leaf)),
            Formula::Might(a, b) => Formula::might(a.map_atoms(leaf), b.map_atoms(leaf)),
        }
    }

    /// Renames every atom `pi` to `p(i + offset)`.
    pub fn shift_atoms(&self, offset: u32) -> Formula {
        self.map_atoms(&mut |i| Formula::Atom(i + offset))
    }
}

/// `phi[psi/p]`: replaces every occurrence of atom `p` in `phi` by `psi`.
pub fn substitute(phi: &Formula, psi: &Formula, p: u32) -> Formula {
    phi.map_atoms(&mut |i| if i == p { psi.clone() } else { Formula::Atom(i) })
}

/// Simultaneous substitution; atoms outside the map are kept.
pub fn substitute_all(phi: &Formula, map: &BTreeMap<u32, Formula>) -> Formula {
    phi.map_atoms(&mut |i| map.get(&i).cloned().unwrap_or(Formula::Atom(i)))
}

/// Fully parenthesized canonical text.
pub fn render(f: &Formula) -> String {
    alloc::format!("{f}")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, l, r) = match self {
            Formula::Atom(i) => return write!(f, "p{i}"),
            Formula::Neg(a) => return write!(f, "~({a})"),
            Formula::Box(a) => return write!(f, "[]({a})"),
            Formula::Dia(a) => return write!(f, "<>({a})"),
            Formula::And(l, r) => ("&", l, r),
            Formula::Or(l, r) => ("|", l, r),
            Formula::Imp(l, r) => ("->", l, r),
            Formula::Would(l, r) => ("@>", l, r),
            Formula::Might(l, r) => ("?>", l, r),
        };
        write!(f, "({l} {op} {r})")
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl core::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Formula, SyntaxError> {
        parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: expected {expected}")]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Atom(u32),
    Not,
    Square,
    Diamond,
    And,
    Or,
    LParen,
    RParen,
    Arrow(Arrow),
    Equiv(Equiv),
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arrow {
    Imp,
    Strong,
    Would,
    Might,
    StrongWould,
    StrongMight,
    Strict,
    StrongStrict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Equiv {
    Weak,
    Strong,
    Strict,
    StrongStrict,
}

const OPERATORS: &[(&str, Tok)] = &[
    ("<#=>", Tok::Equiv(Equiv::StrongStrict)),
    ("<->", Tok::Equiv(Equiv::Weak)),
    ("<=>", Tok::Equiv(Equiv::Strong)),
    ("<#>", Tok::Equiv(Equiv::Strict)),
    ("@=>", Tok::Arrow(Arrow::StrongWould)),
    ("?=>", Tok::Arrow(Arrow::StrongMight)),
    ("#=>", Tok::Arrow(Arrow::StrongStrict)),
    ("<>", Tok::Diamond),
    ("[]", Tok::Square),
    ("->", Tok::Arrow(Arrow::Imp)),
    ("=>", Tok::Arrow(Arrow::Strong)),
    ("@>", Tok::Arrow(Arrow::Would)),
    ("?>", Tok::Arrow(Arrow::Might)),
    ("#>", Tok::Arrow(Arrow::Strict)),
    ("~", Tok::Not),
    ("&", Tok::And),
    ("|", Tok::Or),
    ("(", Tok::LParen),
    (")", Tok::RParen),
];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    tok: Tok,
    tok_start: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Parser<'a>, SyntaxError> {
        let mut p = Parser { src, pos: 0, tok: Tok::End, tok_start: 0 };
        p.advance()?;
        Ok(p)
    }

    fn advance(&mut self) -> Result<(), SyntaxError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_start = self.pos;
        let rest = &self.src[self.pos..];
        if rest.is_empty() {
            self.tok = Tok::End;
            return Ok(());
        }
        if let Some(digits) = rest.strip_prefix('p') {
            let len = digits.bytes().take_while(u8::is_ascii_digit).count();
            let index = digits[..len].parse::<u32>().map_err(|_| SyntaxError {
                offset: self.pos + 1,
                expected: "atom index digits",
            })?;
            self.pos += 1 + len;
            self.tok = Tok::Atom(index);
            return Ok(());
        }
        for (text, tok) in OPERATORS {
            if rest.starts_with(text) {
                self.pos += text.len();
                self.tok = *tok;
                return Ok(());
            }
        }
        Err(SyntaxError { offset: self.pos, expected: "a token" })
    }

    fn fail<T>(&self, expected: &'static str) -> Result<T, SyntaxError> {
        Err(SyntaxError { offset: self.tok_start, expected })
    }

    fn equivalence(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.arrow()?;
        let Tok::Equiv(kind) = self.tok else {
            return Ok(left);
        };
        self.advance()?;
        let right = self.arrow()?;
        if let Tok::Equiv(_) = self.tok {
            return self.fail("a closing parenthesis (equivalences do not chain)");
        }
        Ok(match kind {
            Equiv::Weak => Formula::iff(left, right),
            Equiv::Strong => Formula::strong_iff(left, right),
            Equiv::Strict => Formula::strict_iff(left, right),
            Equiv::StrongStrict => Formula::strong_strict_iff(left, right),
        })
    }

    fn arrow(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.disjunction()?;
        let Tok::Arrow(kind) = self.tok else {
            return Ok(left);
        };
        self.advance()?;
        let right = self.arrow()?;
        Ok(match kind {
            Arrow::Imp => Formula::imp(left, right),
            Arrow::Strong => Formula::strong_imp(left, right),
            Arrow::Would => Formula::would(left, right),
            Arrow::Might => Formula::might(left, right),
            Arrow::StrongWould => Formula::strong_would(left, right),
            Arrow::StrongMight => Formula::strong_might(left, right),
            Arrow::Strict => Formula::strict(left, right),
            Arrow::StrongStrict => Formula::strong_strict(left, right),
        })
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.conjunction()?;
        while self.tok == Tok::Or {
            self.advance()?;
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.prefix()?;
        while self.tok == Tok::And {
            self.advance()?;
            acc = Formula::and(acc, self.prefix()?);
        }
        Ok(acc)
    }

    fn prefix(&mut self) -> Result<Formula, SyntaxError> {
        match self.tok {
            Tok::Atom(i) => {
                self.advance()?;
                Ok(Formula::Atom(i))
            }
            Tok::Not => {
                self.advance()?;
                Ok(Formula::neg(self.prefix()?))
            }
            Tok::Square => {
                self.advance()?;
                Ok(Formula::boxed(self.prefix()?))
            }
            Tok::Diamond => {
                self.advance()?;
                Ok(Formula::dia(self.prefix()?))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.equivalence()?;
                if self.tok != Tok::RParen {
                    return self.fail("')'");
                }
                self.advance()?;
                Ok(inner)
            }
            _ => self.fail("an atom, a prefix operator or '('"),
        }
    }
}

/// Parses a formula, expanding every defined connective.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text)?;
    let f = p.equivalence()?;
    if p.tok != Tok::End {
        return p.fail("end of input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(i: u32) -> Formula {
        Formula::Atom(i)
    }

    #[test]
    fn parses_plain_connectives() {
        assert_eq!(parse("~(p0 -> p1)").unwrap(), Formula::neg(Formula::imp(p(0), p(1))));
        assert_eq!(parse("[]p0 & <>p1").unwrap(), Formula::and(Formula::boxed(p(0)), Formula::dia(p(1))));
    }

    #[test]
    fn expands_strong_implication() {
        let expected = Formula::and(
            Formula::imp(p(0), p(1)),
            Formula::imp(Formula::neg(p(1)), Formula::neg(p(0))),
        );
        assert_eq!(parse("p0 => p1").unwrap(), expected);
        assert_eq!(parse("p0 #=> p1").unwrap(), Formula::boxed(expected));
    }

    #[test]
    fn expands_strong_would() {
        let expected = Formula::and(
            Formula::would(p(0), p(1)),
            Formula::would(Formula::neg(p(1)), Formula::neg(p(0))),
        );
        assert_eq!(parse("p0 @=> p1").unwrap(), expected);
    }

    #[test]
    fn strong_equivalence_expansion_order() {
        let si = |a: u32, b: u32| {
            Formula::and(
                Formula::imp(p(a), p(b)),
                Formula::imp(Formula::neg(p(b)), Formula::neg(p(a))),
            )
        };
        assert_eq!(parse("p0 <=> p1").unwrap(), Formula::and(si(0, 1), si(1, 0)));
    }

    #[test]
    fn remaining_sugar() {
        assert_eq!(parse("p0 #> p1").unwrap(), Formula::boxed(Formula::imp(p(0), p(1))));
        assert_eq!(parse("p0 <-> p1").unwrap(), Formula::iff(p(0), p(1)));
        assert_eq!(parse("p0 <#> p1").unwrap(), Formula::strict_iff(p(0), p(1)));
        assert_eq!(parse("p0 <#=> p1").unwrap(), Formula::strong_strict_iff(p(0), p(1)));
        assert_eq!(parse("p0 ?=> p1").unwrap(), Formula::strong_might(p(0), p(1)));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("p0 | p1 & p2 -> p3 -> p4").unwrap(),
            Formula::imp(
                Formula::or(p(0), Formula::and(p(1), p(2))),
                Formula::imp(p(3), p(4)),
            )
        );
        assert_eq!(
            parse("p0 & p1 & p2").unwrap(),
            Formula::and(Formula::and(p(0), p(1)), p(2))
        );
        assert_eq!(parse("~~p0").unwrap(), Formula::neg(Formula::neg(p(0))));
        assert_eq!(
            parse("p0 @> p1 ?> p2").unwrap(),
            Formula::would(p(0), Formula::might(p(1), p(2)))
        );
    }

    #[test]
    fn equivalences_do_not_chain() {
        let err = parse("p0 <-> p1 <-> p2").unwrap_err();
        assert_eq!(err.offset, 10);
        assert!(parse("(p0 <-> p1) <-> p2").is_ok());
    }

    #[test]
    fn error_offsets() {
        assert_eq!(parse("p0 &").unwrap_err().offset, 4);
        assert_eq!(parse("p0 $ p1").unwrap_err().offset, 3);
        assert_eq!(parse("(p0").unwrap_err().expected, "')'");
        assert_eq!(parse("p").unwrap_err().offset, 1);
        assert_eq!(parse("p0 p1").unwrap_err().expected, "end of input");
        assert!(parse("").is_err());
    }

    #[test]
    fn renders_fully_parenthesized() {
        assert_eq!(render(&Formula::neg(Formula::imp(p(0), p(1)))), "~((p0 -> p1))");
        assert_eq!(render(&p(3)), "p3");
        assert_eq!(
            render(&Formula::would(p(0), Formula::and(p(1), p(2)))),
            "(p0 @> (p1 & p2))"
        );
        assert_eq!(Formula::boxed(p(0)).to_string(), "[](p0)");
    }

    #[test]
    fn substitution() {
        let f = parse("p0 -> p1").unwrap();
        assert_eq!(substitute(&f, &parse("~p0").unwrap(), 1), parse("p0 -> ~p0").unwrap());
        assert_eq!(substitute(&p(1), &p(5), 0), p(1));
        let g = parse("p0 @> p0").unwrap();
        assert_eq!(substitute(&g, &parse("[]p0").unwrap(), 0), parse("[]p0 @> []p0").unwrap());
    }

    #[test]
    fn language_tags() {
        assert_eq!(parse("p0 -> ~p1").unwrap().language(), LanguageTag::PL);
        assert_eq!(parse("[]p0 -> p1").unwrap().language(), LanguageTag::MD);
        assert_eq!(parse("p0 @> p1").unwrap().language(), LanguageTag::CN);
        assert_eq!(parse("[]p0 @> p1").unwrap().language(), LanguageTag::Mixed);
        assert!(LanguageTag::PL.within(LanguageTag::CN));
        assert!(!LanguageTag::MD.within(LanguageTag::CN));
    }
}
