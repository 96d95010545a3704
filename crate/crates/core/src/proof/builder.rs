//! Building proofs from derivation steps.
//!
//! The builder keeps an arena of lines, each tagged with the temporary
//! assumptions it depends on. [`ProofBuilder::discharge`] turns a
//! derivation of B under assumption A into lines proving A → B, so proofs
//! can be written in natural-deduction style and still come out as plain
//! Hilbert proofs. [`ProofBuilder::finish`] keeps only the lines the target
//! needs.
//!
//! Misuse (a wrong premise shape, an axiom outside the system, a dangling
//! assumption) panics: builder scripts are fixed programs, and the result
//! is always re-checked by [`check_proof`](super::check_proof).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::schemes::{axiom, Rule, System};
use super::{instantiate, match_pattern, Binding, Justification, Line, Proof, ProofKind, Registry};
use crate::syntax::Formula;

/// A handle to a line of the proof under construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step(usize);

#[derive(Clone, Debug)]
enum Just {
    Axiom(&'static str, Binding),
    Lemma(String),
    Hyp,
    Assume,
    /// minor, major
    Mp(usize, usize),
    Rule(Rule, usize),
}

#[derive(Clone, Debug)]
struct Entry {
    formula: Formula,
    just: Just,
    deps: BTreeSet<usize>,
}

pub struct ProofBuilder<'r> {
    system: System,
    registry: &'r Registry,
    lines: Vec<Entry>,
    by_formula: BTreeMap<Formula, Vec<usize>>,
    reuse: bool,
}

fn imp_parts(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Imp(a, b) => Some((a, b)),
        _ => None,
    }
}

fn and_parts(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::And(a, b) => Some((a, b)),
        _ => None,
    }
}

fn or_parts(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Or(a, b) => Some((a, b)),
        _ => None,
    }
}

fn neg(f: &Formula) -> Formula {
    Formula::neg(f.clone())
}

impl<'r> ProofBuilder<'r> {
    pub fn new(system: System, registry: &'r Registry) -> ProofBuilder<'r> {
        ProofBuilder { system, registry, lines: Vec::new(), by_formula: BTreeMap::new(), reuse: true }
    }

    pub fn system(&self) -> System {
        self.system
    }

    /// Whether a step whose formula is already established (under fewer
    /// assumptions) returns the existing line. On by default; turning it
    /// off keeps every stated intermediate claim in the final proof.
    pub fn set_reuse(&mut self, reuse: bool) {
        self.reuse = reuse;
    }

    pub fn formula(&self, s: Step) -> &Formula {
        &self.lines[s.0].formula
    }

    fn push(&mut self, formula: Formula, just: Just, deps: BTreeSet<usize>) -> Step {
        let reusable = self.reuse && !matches!(just, Just::Assume);
        if reusable {
            if let Some(found) = self.by_formula.get(&formula).and_then(|ids| {
                ids.iter().copied().find(|&i| {
                    !matches!(self.lines[i].just, Just::Assume) && self.lines[i].deps.is_subset(&deps)
                })
            }) {
                return Step(found);
            }
        }
        let id = self.lines.len();
        self.by_formula.entry(formula.clone()).or_default().push(id);
        self.lines.push(Entry { formula, just, deps });
        Step(id)
    }

    /// An instance of an axiom scheme; `args[i]` replaces template atom i.
    pub fn axiom(&mut self, name: &str, args: &[Formula]) -> Step {
        let scheme = axiom(name).unwrap_or_else(|| panic!("unknown axiom {name}"));
        assert!(self.system.includes(scheme.system), "{name} is not in {}", self.system);
        let atoms = scheme.template.atoms();
        let binding: Binding = atoms
            .iter()
            .map(|&i| (i, args.get(i as usize).cloned().unwrap_or(Formula::Atom(i))))
            .collect();
        let formula = crate::syntax::substitute_all(&scheme.template, &binding);
        self.push(formula, Just::Axiom(scheme.name, binding), BTreeSet::new())
    }

    /// An instance of a registered theorem; `args[i]` replaces its atom i.
    pub fn lemma(&mut self, name: &str, args: &[Formula]) -> Step {
        let thm = self.registry.get(name).unwrap_or_else(|| panic!("unknown lemma {name}"));
        assert!(self.system.includes(thm.system), "lemma {name} is not usable in {}", self.system);
        let formula = instantiate_partial(&thm.formula, args);
        self.push(formula, Just::Lemma(name.to_string()), BTreeSet::new())
    }

    /// A declared hypothesis of an entail or rulederive proof.
    pub fn hyp(&mut self, f: Formula) -> Step {
        self.push(f, Just::Hyp, BTreeSet::new())
    }

    /// A temporary assumption, to be removed with [`Self::discharge`].
    pub fn assume(&mut self, f: Formula) -> Step {
        let id = self.lines.len();
        self.push(f, Just::Assume, BTreeSet::from([id]))
    }

    /// From A and A → B, B. Panics unless `major` is `minor → _`.
    pub fn mp(&mut self, minor: Step, major: Step) -> Step {
        let (a, b) = imp_parts(self.formula(major)).expect("major premise is an implication");
        assert_eq!(a, self.formula(minor), "minor premise does not match");
        let b = b.clone();
        let deps = self.deps_union(minor, major);
        self.push(b, Just::Mp(minor.0, major.0), deps)
    }

    fn deps_union(&self, a: Step, b: Step) -> BTreeSet<usize> {
        self.lines[a.0].deps.union(&self.lines[b.0].deps).copied().collect()
    }

    fn rule(&mut self, rule: Rule, premise: Step, chi: Option<Formula>) -> Step {
        assert!(self.system.has_rule(rule), "{rule} is not in {}", self.system);
        let (p, c) = rule.templates();
        let mut binding = Binding::new();
        assert!(match_pattern(&p, self.formula(premise), &mut binding), "{rule} premise shape");
        if let Some(chi) = chi {
            binding.insert(2, chi);
        }
        let formula = crate::syntax::substitute_all(&c, &binding);
        let deps = self.lines[premise.0].deps.clone();
        self.push(formula, Just::Rule(rule, premise.0), deps)
    }

    pub fn nec(&mut self, s: Step) -> Step {
        self.rule(Rule::Nec, s, None)
    }

    /// From φ↔ψ, (χ@>φ)↔(χ@>ψ).
    pub fn rc_box(&mut self, s: Step, chi: Formula) -> Step {
        self.rule(Rule::RcBox, s, Some(chi))
    }

    /// From φ↔ψ, (χ?>φ)↔(χ?>ψ).
    pub fn rc_dia(&mut self, s: Step, chi: Formula) -> Step {
        self.rule(Rule::RcDia, s, Some(chi))
    }

    /// From φ⇔ψ, (φ@>χ)⇔(ψ@>χ).
    pub fn ra_box(&mut self, s: Step, chi: Formula) -> Step {
        self.rule(Rule::RaBox, s, Some(chi))
    }

    /// From φ⇔ψ, (φ?>χ)⇔(ψ?>χ).
    pub fn ra_dia(&mut self, s: Step, chi: Formula) -> Step {
        self.rule(Rule::RaDia, s, Some(chi))
    }

    /// Turns `target` (derived under `assumption`) into `A → target`.
    pub fn discharge(&mut self, assumption: Step, target: Step) -> Step {
        assert!(matches!(self.lines[assumption.0].just, Just::Assume), "not an assumption");
        let mut memo = BTreeMap::new();
        self.lift(assumption.0, target.0, &mut memo)
    }

    fn lift(&mut self, a: usize, k: usize, memo: &mut BTreeMap<usize, Step>) -> Step {
        if let Some(&s) = memo.get(&k) {
            return s;
        }
        let af = self.lines[a].formula.clone();
        let kf = self.lines[k].formula.clone();
        let out = if k == a {
            let aa = Formula::imp(af.clone(), af.clone());
            let s1 = self.axiom("a1", &[af.clone(), aa.clone()]);
            let s2 = self.axiom("a2", &[af.clone(), aa, af.clone()]);
            let s3 = self.mp(s1, s2);
            let s4 = self.axiom("a1", &[af.clone(), af]);
            self.mp(s4, s3)
        } else if !self.lines[k].deps.contains(&a) {
            let s1 = self.axiom("a1", &[kf, af]);
            self.mp(Step(k), s1)
        } else {
            match self.lines[k].just.clone() {
                Just::Mp(i, j) => {
                    let li = self.lift(a, i, memo);
                    let lj = self.lift(a, j, memo);
                    let fi = self.lines[i].formula.clone();
                    let dist = self.axiom("a2", &[af, fi, kf]);
                    let s = self.mp(lj, dist);
                    self.mp(li, s)
                }
                other => panic!("cannot discharge through {other:?}"),
            }
        };
        memo.insert(k, out);
        out
    }

    /// The proof of `target`, keeping only the lines it depends on.
    pub fn finish(
        &self,
        name: &str,
        kind: ProofKind,
        hyps: Vec<Formula>,
        goals: Vec<Formula>,
        target: Step,
    ) -> Proof {
        assert!(self.lines[target.0].deps.is_empty(), "undischarged assumption");
        let mut keep = BTreeSet::new();
        let mut todo = alloc::vec![target.0];
        while let Some(k) = todo.pop() {
            if keep.insert(k) {
                match self.lines[k].just {
                    Just::Mp(i, j) => todo.extend([i, j]),
                    Just::Rule(_, i) => todo.push(i),
                    _ => {}
                }
            }
        }
        let number: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(n, &k)| (k, n + 1)).collect();
        let lines = keep
            .iter()
            .map(|&k| {
                let e = &self.lines[k];
                let just = match &e.just {
                    Just::Axiom(name, b) => {
                        Justification::Axiom { name: (*name).to_string(), binding: b.clone() }
                    }
                    Just::Lemma(name) => Justification::Lemma(name.clone()),
                    Just::Hyp => Justification::Hyp,
                    Just::Assume => panic!("assumption survives in the final proof"),
                    Just::Mp(i, j) => Justification::Mp(number[i], number[j]),
                    Just::Rule(r, i) => Justification::Rule(*r, number[i]),
                };
                Line { formula: e.formula.clone(), just }
            })
            .collect();
        Proof { name: Some(name.to_string()), system: self.system, kind, hyps, goals, lines }
    }

    /// A theorem proof whose goal is the target's formula.
    pub fn theorem(&self, name: &str, target: Step) -> Proof {
        let goal = self.formula(target).clone();
        self.finish(name, ProofKind::Theorem, Vec::new(), alloc::vec![goal], target)
    }

    // Derived steps over the positive fragment.

    /// `A → A`
    pub fn id(&mut self, a: Formula) -> Step {
        let s = self.assume(a);
        self.discharge(s, s)
    }

    pub fn and_i(&mut self, a: Step, b: Step) -> Step {
        let (fa, fb) = (self.formula(a).clone(), self.formula(b).clone());
        let ax = self.axiom("a5", &[fa, fb]);
        let s = self.mp(a, ax);
        self.mp(b, s)
    }

    pub fn and_l(&mut self, s: Step) -> Step {
        let (a, b) = and_parts(self.formula(s)).expect("conjunction");
        let (a, b) = (a.clone(), b.clone());
        let ax = self.axiom("a3", &[a, b]);
        self.mp(s, ax)
    }

    pub fn and_r(&mut self, s: Step) -> Step {
        let (a, b) = and_parts(self.formula(s)).expect("conjunction");
        let (a, b) = (a.clone(), b.clone());
        let ax = self.axiom("a4", &[a, b]);
        self.mp(s, ax)
    }

    /// From A, A ∨ B.
    pub fn or_il(&mut self, s: Step, b: Formula) -> Step {
        let a = self.formula(s).clone();
        let ax = self.axiom("a6", &[a, b]);
        self.mp(s, ax)
    }

    /// From B, A ∨ B.
    pub fn or_ir(&mut self, a: Formula, s: Step) -> Step {
        let b = self.formula(s).clone();
        let ax = self.axiom("a7", &[a, b]);
        self.mp(s, ax)
    }

    /// From A ∨ B, A → C and B → C, C.
    pub fn or_e(&mut self, d: Step, ac: Step, bc: Step) -> Step {
        let (a, b) = or_parts(self.formula(d)).expect("disjunction");
        let (a, b) = (a.clone(), b.clone());
        let c = imp_parts(self.formula(ac)).expect("implication").1.clone();
        let ax = self.axiom("a8", &[a, b, c]);
        let s = self.mp(ac, ax);
        let s = self.mp(bc, s);
        self.mp(d, s)
    }

    /// From A → B and B → C, A → C.
    pub fn syl(&mut self, ab: Step, bc: Step) -> Step {
        let a = imp_parts(self.formula(ab)).expect("implication").0.clone();
        let h = self.assume(a);
        let b = self.mp(h, ab);
        let c = self.mp(b, bc);
        self.discharge(h, c)
    }

    /// Chains implications left to right.
    pub fn chain(&mut self, steps: &[Step]) -> Step {
        let mut acc = steps[0];
        for &s in &steps[1..] {
            acc = self.syl(acc, s);
        }
        acc
    }

    /// The first projection of an equivalence-like conjunction, applied.
    pub fn fwd(&mut self, iff: Step, a: Step) -> Step {
        let l = self.and_l(iff);
        self.mp(a, l)
    }

    pub fn bwd(&mut self, iff: Step, b: Step) -> Step {
        let r = self.and_r(iff);
        self.mp(b, r)
    }

    // Negation steps available from C on.

    /// `A → ¬¬A`
    pub fn imp_dni(&mut self, a: Formula) -> Step {
        let ax = self.axiom("a9", &[a]);
        self.and_r(ax)
    }

    /// `¬¬A → A`
    pub fn imp_dne(&mut self, a: Formula) -> Step {
        let ax = self.axiom("a9", &[a]);
        self.and_l(ax)
    }

    pub fn dni(&mut self, s: Step) -> Step {
        let i = self.imp_dni(self.formula(s).clone());
        self.mp(s, i)
    }

    pub fn dne(&mut self, s: Step) -> Step {
        let a = match self.formula(s) {
            Formula::Neg(x) => match &**x {
                Formula::Neg(y) => (**y).clone(),
                _ => panic!("double negation expected"),
            },
            _ => panic!("double negation expected"),
        };
        let e = self.imp_dne(a);
        self.mp(s, e)
    }

    /// `¬(A ∧ B)` from `¬A`.
    pub fn neg_and_l(&mut self, s: Step, b: Formula) -> Step {
        let na = self.formula(s).clone();
        let a = match &na {
            Formula::Neg(a) => (**a).clone(),
            _ => panic!("negation expected"),
        };
        let d = self.or_il(s, neg(&b));
        let ax = self.axiom("a10", &[a, b]);
        self.bwd(ax, d)
    }

    /// Assembles `(A ⇒ B) ∧ (B ⇒ A)` from its four implications.
    pub fn strong_iff(&mut self, ab: Step, nb_na: Step, ba: Step, na_nb: Step) -> Step {
        let l = self.and_i(ab, nb_na);
        let r = self.and_i(ba, na_nb);
        self.and_i(l, r)
    }

    // Modal steps.

    /// From a theorem A → B, □A → □B.
    pub fn rm_box(&mut self, s: Step) -> Step {
        let (a, b) = imp_parts(self.formula(s)).expect("implication");
        let (a, b) = (a.clone(), b.clone());
        let n = self.nec(s);
        let ax = self.axiom("b1", &[a, b]);
        self.mp(n, ax)
    }

    /// From a theorem A → B, ◇A → ◇B.
    pub fn rm_dia(&mut self, s: Step) -> Step {
        let (a, b) = imp_parts(self.formula(s)).expect("implication");
        let (a, b) = (a.clone(), b.clone());
        let n = self.nec(s);
        let ax = self.axiom("b2", &[a, b]);
        self.mp(n, ax)
    }

    // Conditional steps.

    /// From a theorem A, χ @> A.
    pub fn nec_would(&mut self, s: Step, chi: Formula) -> Step {
        let a = self.formula(s).clone();
        let aa = Formula::imp(a.clone(), a.clone());
        let fwd = self.axiom("a1", &[a.clone(), a.clone()]);
        let k = self.axiom("a1", &[a.clone(), aa]);
        let back = self.mp(s, k);
        let e = self.and_i(fwd, back);
        let rc = self.rc_box(e, chi.clone());
        let g5 = self.axiom("g5", &[chi, a]);
        self.bwd(rc, g5)
    }

    /// From a theorem A → B, (χ@>A) → (χ@>B).
    pub fn rm_would(&mut self, s: Step, chi: Formula) -> Step {
        let (a, b) = imp_parts(self.formula(s)).expect("implication");
        let (a, b) = (a.clone(), b.clone());
        let l = self.axiom("a3", &[a.clone(), b.clone()]);
        let h = self.assume(a.clone());
        let hb = self.mp(h, s);
        let c = self.and_i(h, hb);
        let r = self.discharge(h, c);
        let e = self.and_i(l, r);
        let rc = self.rc_box(e, chi.clone());
        let g1 = self.axiom("g1", &[chi.clone(), a.clone(), b]);
        let h = self.assume(Formula::would(chi, a));
        let w = self.bwd(rc, h);
        let both = self.bwd(g1, w);
        let out = self.and_r(both);
        self.discharge(h, out)
    }

    /// From a theorem A → B, (χ?>A) → (χ?>B).
    pub fn rm_might(&mut self, s: Step, chi: Formula) -> Step {
        let (a, b) = imp_parts(self.formula(s)).expect("implication");
        let (a, b) = (a.clone(), b.clone());
        let a8 = self.axiom("a8", &[a.clone(), b.clone(), b.clone()]);
        let t = self.mp(s, a8);
        let idb = self.id(b.clone());
        let l = self.mp(idb, t);
        let r = self.axiom("a7", &[a.clone(), b.clone()]);
        let e = self.and_i(l, r);
        let rc = self.rc_dia(e, chi.clone());
        let g3 = self.axiom("g3", &[chi.clone(), a.clone(), b.clone()]);
        let h = self.assume(Formula::might(chi.clone(), a));
        let d = self.or_il(h, Formula::might(chi, b));
        let m = self.fwd(g3, d);
        let out = self.fwd(rc, m);
        self.discharge(h, out)
    }

    /// From a theorem A → C, A @> C, using reflexivity and Th1.
    pub fn lift_would_r(&mut self, s: Step) -> Step {
        let (a, c) = imp_parts(self.formula(s)).expect("implication");
        let (a, c) = (a.clone(), c.clone());
        let n = self.nec_would(s, a.clone());
        let th1 = self.lemma("appendix_th1", &[a.clone(), a.clone(), c]);
        let t = self.mp(n, th1);
        let g8 = self.axiom("g8", &[a]);
        self.mp(g8, t)
    }
}

/// Replaces atom i by `args[i]` where given; other atoms stay.
fn instantiate_partial(f: &Formula, args: &[Formula]) -> Formula {
    if args.is_empty() {
        return f.clone();
    }
    let mut full: Vec<Formula> = args.to_vec();
    let max = f.atoms().iter().next_back().copied().unwrap_or(0) as usize;
    while full.len() <= max {
        full.push(Formula::Atom(full.len() as u32));
    }
    instantiate(f, &full)
}
