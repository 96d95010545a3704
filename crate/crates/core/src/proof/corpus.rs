//! The built-in proof corpus.
//!
//! Every proof is produced with [`ProofBuilder`], checked, and (for
//! theorems) registered before the next one is built, so later proofs can
//! cite earlier ones as lemmas. Statements use `p0`, `p1`, `p2` for φ, ψ, χ.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Library, Proof, ProofBuilder, ProofKind, Registry, Step, System};
use crate::syntax::Formula;

fn p(i: u32) -> Formula {
    Formula::Atom(i)
}

fn n(f: &Formula) -> Formula {
    Formula::neg(f.clone())
}

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::imp(a.clone(), b.clone())
}

fn would(a: &Formula, b: &Formula) -> Formula {
    Formula::would(a.clone(), b.clone())
}

fn might(a: &Formula, b: &Formula) -> Formula {
    Formula::might(a.clone(), b.clone())
}

/// Checked corpus proofs, in the order they were built.
pub struct Corpus {
    pub library: Library,
    pub order: Vec<String>,
}

impl Corpus {
    pub fn proofs(&self) -> impl Iterator<Item = &Proof> {
        self.order.iter().map(|name| &self.library.proofs[name])
    }

    fn add(&mut self, proof: Proof) {
        let name = proof.name.clone().expect("corpus proofs are named");
        if let Err(e) = self.library.add(proof) {
            panic!("corpus proof {name} does not check: {e}");
        }
        self.order.push(name);
    }

    fn reg(&self) -> &Registry {
        &self.library.registry
    }
}

/// Builds and checks the whole corpus.
pub fn build() -> Corpus {
    let mut c = Corpus { library: Library::new(), order: Vec::new() };
    axiom_instances(&mut c);
    propositional(&mut c);
    modal(&mut c);
    conditional(&mut c);
    reflexive(&mut c);
    c
}

fn entail(b: &ProofBuilder, name: &str, hyp: Formula, goal: Formula, target: Step) -> Proof {
    b.finish(name, ProofKind::Entail, vec![hyp], vec![goal], target)
}

fn rulederive(b: &ProofBuilder, name: &str, hyp: Formula, target: Step) -> Proof {
    let goal = b.formula(target).clone();
    b.finish(name, ProofKind::RuleDerive, vec![hyp], vec![goal], target)
}

fn axiom_instances(c: &mut Corpus) {
    let names = ["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12"];
    for (i, name) in names.into_iter().enumerate() {
        let system = if i < 8 { System::S0 } else { System::C };
        let mut b = ProofBuilder::new(system, c.reg());
        let s = b.axiom(name, &[p(0), p(1), p(2)]);
        let proof = b.theorem(&alloc::format!("alpha_{:02}", i + 1), s);
        c.add(proof);
    }
}

fn propositional(c: &mut Corpus) {
    let (p0, p1, p2) = (p(0), p(1), p(2));

    let mut b = ProofBuilder::new(System::S0, c.reg());
    let s = b.id(p0.clone());
    let proof = b.theorem("id", s);
    c.add(proof);

    // t1: φ ⇔ φ
    let mut b = ProofBuilder::new(System::C, c.reg());
    let s1 = b.id(p0.clone());
    let s2 = b.id(n(&p0));
    let half = b.and_i(s1, s2);
    let s = b.and_i(half, half);
    let proof = b.theorem("t1", s);
    c.add(proof);

    // t2: (φ ⇔ ψ) → (ψ ⇔ φ)
    let mut b = ProofBuilder::new(System::C, c.reg());
    let h = b.assume(Formula::strong_iff(p0.clone(), p1.clone()));
    let l = b.and_l(h);
    let r = b.and_r(h);
    let swapped = b.and_i(r, l);
    let s = b.discharge(h, swapped);
    let proof = b.theorem("t2", s);
    c.add(proof);

    // t3: ((φ ⇔ ψ) ∧ (ψ ⇔ χ)) → (φ ⇔ χ)
    let mut b = ProofBuilder::new(System::C, c.reg());
    let h = b.assume(Formula::and(
        Formula::strong_iff(p0.clone(), p1.clone()),
        Formula::strong_iff(p1.clone(), p2.clone()),
    ));
    let e1 = b.and_l(h);
    let e2 = b.and_r(h);
    let parts = |b: &mut ProofBuilder, e: Step| {
        let l = b.and_l(e);
        let r = b.and_r(e);
        [b.and_l(l), b.and_r(l), b.and_l(r), b.and_r(r)]
    };
    let [ab, nbna, ba, nanb] = parts(&mut b, e1);
    let [bc, ncnb, cb, nbnc] = parts(&mut b, e2);
    let ac = b.syl(ab, bc);
    let ncna = b.syl(ncnb, nbna);
    let ca = b.syl(cb, ba);
    let nanc = b.syl(nanb, nbnc);
    let e = b.strong_iff(ac, ncna, ca, nanc);
    let s = b.discharge(h, e);
    let proof = b.theorem("t3", s);
    c.add(proof);

    // t4: φ ⇔ ¬¬φ
    let mut b = ProofBuilder::new(System::C, c.reg());
    let ab = b.imp_dni(p0.clone());
    let nbna = b.imp_dne(n(&p0));
    let ba = b.imp_dne(p0.clone());
    let nanb = b.imp_dni(n(&p0));
    let s = b.strong_iff(ab, nbna, ba, nanb);
    let proof = b.theorem("t4", s);
    c.add(proof);

    // t5: ¬(φ ∧ ψ) ⇔ (¬φ ∨ ¬ψ)
    let mut b = ProofBuilder::new(System::C, c.reg());
    let a10 = b.axiom("a10", &[p0.clone(), p1.clone()]);
    let ab = b.and_l(a10);
    let ba = b.and_r(a10);
    let nb = b.assume(n(&Formula::or(n(&p0), n(&p1))));
    let a11 = b.axiom("a11", &[n(&p0), n(&p1)]);
    let conj = b.fwd(a11, nb);
    let l = b.and_l(conj);
    let l = b.dne(l);
    let r = b.and_r(conj);
    let r = b.dne(r);
    let k = b.and_i(l, r);
    let k = b.dni(k);
    let nbna = b.discharge(nb, k);
    let na = b.assume(n(&n(&Formula::and(p0.clone(), p1.clone()))));
    let k = b.dne(na);
    let l = b.and_l(k);
    let l = b.dni(l);
    let r = b.and_r(k);
    let r = b.dni(r);
    let conj = b.and_i(l, r);
    let out = b.bwd(a11, conj);
    let nanb = b.discharge(na, out);
    let s = b.strong_iff(ab, nbna, ba, nanb);
    let proof = b.theorem("t5", s);
    c.add(proof);

    // t6: ¬(φ ∨ ψ) ⇔ (¬φ ∧ ¬ψ)
    let mut b = ProofBuilder::new(System::C, c.reg());
    let a11 = b.axiom("a11", &[p0.clone(), p1.clone()]);
    let ab = b.and_l(a11);
    let ba = b.and_r(a11);
    let disj = Formula::or(p0.clone(), p1.clone());
    let nb = b.assume(n(&Formula::and(n(&p0), n(&p1))));
    let a10 = b.axiom("a10", &[n(&p0), n(&p1)]);
    let d = b.fwd(a10, nb);
    let dne0 = b.imp_dne(p0.clone());
    let in0 = b.axiom("a6", &[p0.clone(), p1.clone()]);
    let f0 = b.syl(dne0, in0);
    let dne1 = b.imp_dne(p1.clone());
    let in1 = b.axiom("a7", &[p0.clone(), p1.clone()]);
    let f1 = b.syl(dne1, in1);
    let k = b.or_e(d, f0, f1);
    let k = b.dni(k);
    let nbna = b.discharge(nb, k);
    let na = b.assume(n(&n(&disj)));
    let k = b.dne(na);
    let dni0 = b.imp_dni(p0.clone());
    let in0 = b.axiom("a6", &[n(&n(&p0)), n(&n(&p1))]);
    let g0 = b.syl(dni0, in0);
    let dni1 = b.imp_dni(p1.clone());
    let in1 = b.axiom("a7", &[n(&n(&p0)), n(&n(&p1))]);
    let g1 = b.syl(dni1, in1);
    let d = b.or_e(k, g0, g1);
    let out = b.bwd(a10, d);
    let nanb = b.discharge(na, out);
    let s = b.strong_iff(ab, nbna, ba, nanb);
    let proof = b.theorem("t6", s);
    c.add(proof);

    // t7: ¬(φ → ψ) ⇔ (φ → ¬ψ)
    let mut b = ProofBuilder::new(System::C, c.reg());
    let a12 = b.axiom("a12", &[p0.clone(), p1.clone()]);
    let ab = b.and_l(a12);
    let ba = b.and_r(a12);
    let a12n = b.axiom("a12", &[p0.clone(), n(&p1)]);
    let nb = b.assume(n(&imp(&p0, &n(&p1))));
    let k = b.fwd(a12n, nb);
    let dne = b.imp_dne(p1.clone());
    let k = b.syl(k, dne);
    let k = b.dni(k);
    let nbna = b.discharge(nb, k);
    let na = b.assume(n(&n(&imp(&p0, &p1))));
    let k = b.dne(na);
    let dni = b.imp_dni(p1.clone());
    let k = b.syl(k, dni);
    let out = b.bwd(a12n, k);
    let nanb = b.discharge(na, out);
    let s = b.strong_iff(ab, nbna, ba, nanb);
    let proof = b.theorem("t7", s);
    c.add(proof);

    // Contr: ((p ∧ ¬p) → p) ∧ ¬((p ∧ ¬p) → p)
    let contra = Formula::and(p0.clone(), n(&p0));
    let mut b = ProofBuilder::new(System::C, c.reg());
    let s1 = b.axiom("a3", &[p0.clone(), n(&p0)]);
    let s2 = b.axiom("a4", &[p0.clone(), n(&p0)]);
    let a12 = b.axiom("a12", &[contra.clone(), p0.clone()]);
    let ns1 = b.bwd(a12, s2);
    let s = b.and_i(s1, ns1);
    let proof = b.theorem("contr", s);
    c.add(proof);

    // Contr-strong: ((p ∧ ¬p) ⇒ p) ∧ ¬((p ∧ ¬p) ⇒ p)
    let mut b = ProofBuilder::new(System::C, c.reg());
    let s1 = b.axiom("a3", &[p0.clone(), n(&p0)]);
    let h = b.assume(n(&p0));
    let d = b.or_il(h, n(&n(&p0)));
    let a10 = b.axiom("a10", &[p0.clone(), n(&p0)]);
    let k = b.bwd(a10, d);
    let s2 = b.discharge(h, k);
    let x = b.and_i(s1, s2);
    let cl = b.lemma("contr", &[]);
    let neg_imp = b.and_r(cl);
    let nx = b.neg_and_l(neg_imp, b.formula(s2).clone());
    let s = b.and_i(x, nx);
    let proof = b.theorem("contr_strong", s);
    c.add(proof);

    // Connexive theses for → and ⇒.
    let mut b = ProofBuilder::new(System::C, c.reg());
    let a12 = b.axiom("a12", &[n(&p0), p0.clone()]);
    let i = b.id(n(&p0));
    let s = b.bwd(a12, i);
    let proof = b.theorem("at_imp", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::C, c.reg());
    let a12 = b.axiom("a12", &[p0.clone(), p1.clone()]);
    let s = b.and_r(a12);
    let proof = b.theorem("bt_imp", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::C, c.reg());
    let a12 = b.axiom("a12", &[p0.clone(), p1.clone()]);
    let s = b.and_l(a12);
    let proof = b.theorem("cbt_imp", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::C, c.reg());
    let h = b.hyp(imp(&p0, &n(&p1)));
    let bt = b.lemma("bt_imp", &[]);
    let s = b.mp(h, bt);
    let proof = entail(&b, "wbt_imp", imp(&p0, &n(&p1)), n(&imp(&p0, &p1)), s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::C, c.reg());
    let h = b.hyp(n(&imp(&p0, &p1)));
    let cbt = b.lemma("cbt_imp", &[]);
    let s = b.mp(h, cbt);
    let proof = entail(&b, "wcbt_imp", n(&imp(&p0, &p1)), imp(&p0, &n(&p1)), s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::C, c.reg());
    let at = b.lemma("at_imp", &[]);
    let s = b.neg_and_l(at, imp(&n(&p0), &n(&n(&p0))));
    let proof = b.theorem("at_strong", s);
    c.add(proof);

    // BT⇒: (φ ⇒ ¬ψ) ⇒ ¬(φ ⇒ ψ)
    let x = Formula::strong_imp(p0.clone(), n(&p1));
    let y = n(&Formula::strong_imp(p0.clone(), p1.clone()));
    let mut b = ProofBuilder::new(System::C, c.reg());
    let h = b.assume(x.clone());
    let k = b.and_l(h);
    let bt = b.lemma("bt_imp", &[]);
    let k = b.mp(k, bt);
    let k = b.neg_and_l(k, imp(&n(&p1), &n(&p0)));
    let xy = b.discharge(h, k);
    let h = b.assume(n(&y));
    let k = b.dne(h);
    let k = b.and_l(k);
    let dni = b.imp_dni(p1.clone());
    let k = b.syl(k, dni);
    let a12 = b.axiom("a12", &[p0.clone(), n(&p1)]);
    let k = b.bwd(a12, k);
    let k = b.neg_and_l(k, imp(&n(&n(&p1)), &n(&p0)));
    let nynx = b.discharge(h, k);
    let s = b.and_i(xy, nynx);
    let proof = b.theorem("bt_strong", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::C, c.reg());
    let h = b.hyp(x.clone());
    let bt = b.lemma("bt_strong", &[]);
    let s = b.fwd(bt, h);
    let proof = entail(&b, "wbt_strong", x, y, s);
    c.add(proof);
}

fn modal(c: &mut Corpus) {
    let (p0, p1) = (p(0), p(1));
    let bx = |f: &Formula| Formula::boxed(f.clone());
    let dm = |f: &Formula| Formula::dia(f.clone());

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let h = b.hyp(imp(&p0, &p1));
    let s = b.rm_box(h);
    let proof = rulederive(&b, "rm_box", imp(&p0, &p1), s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let h = b.hyp(imp(&p0, &p1));
    let s = b.rm_dia(h);
    let proof = rulederive(&b, "rm_dia", imp(&p0, &p1), s);
    c.add(proof);

    // T0: ¬□φ ⇔ □¬φ and ¬◇φ ⇔ ◇¬φ
    for (name, ax, boxy) in [("t0_box", "b5", true), ("t0_dia", "b6", false)] {
        let wrap = |f: &Formula| if boxy { bx(f) } else { dm(f) };
        let mut b = ProofBuilder::new(System::CnK, c.reg());
        let e = b.axiom(ax, core::slice::from_ref(&p0));
        let ab = b.and_l(e);
        let ba = b.and_r(e);
        let en = b.axiom(ax, &[n(&p0)]);
        let to_dd = b.and_l(en);
        let from_dd = b.and_r(en);
        let dne = b.imp_dne(p0.clone());
        let dni = b.imp_dni(p0.clone());
        let (m_dne, m_dni) =
            if boxy { (b.rm_box(dne), b.rm_box(dni)) } else { (b.rm_dia(dne), b.rm_dia(dni)) };
        let out_dni = b.imp_dni(wrap(&p0));
        let nbna = b.chain(&[to_dd, m_dne, out_dni]);
        let in_dne = b.imp_dne(wrap(&p0));
        let nanb = b.chain(&[in_dne, m_dni, from_dd]);
        let s = b.strong_iff(ab, nbna, ba, nanb);
        let proof = b.theorem(name, s);
        c.add(proof);
    }

    // T1: (□φ ∧ □ψ) ↔ □(φ ∧ ψ)
    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let pair = Formula::and(p0.clone(), p1.clone());
    let a5 = b.axiom("a5", &[p0.clone(), p1.clone()]);
    let na5 = b.nec(a5);
    let k1 = b.axiom("b1", &[p0.clone(), imp(&p1, &pair)]);
    let k1 = b.mp(na5, k1);
    let k2 = b.axiom("b1", &[p1.clone(), pair.clone()]);
    let h = b.assume(Formula::and(bx(&p0), bx(&p1)));
    let l = b.and_l(h);
    let r = b.and_r(h);
    let k = b.mp(l, k1);
    let k = b.mp(k, k2);
    let k = b.mp(r, k);
    let fwd = b.discharge(h, k);
    let a3 = b.axiom("a3", &[p0.clone(), p1.clone()]);
    let m3 = b.rm_box(a3);
    let a4 = b.axiom("a4", &[p0.clone(), p1.clone()]);
    let m4 = b.rm_box(a4);
    let h = b.assume(bx(&pair));
    let l = b.mp(h, m3);
    let r = b.mp(h, m4);
    let k = b.and_i(l, r);
    let bwd = b.discharge(h, k);
    let s = b.and_i(fwd, bwd);
    let proof = b.theorem("t1_box", s);
    c.add(proof);

    // T2: ◇(φ → ψ) → (□φ → ◇ψ)
    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let h1 = b.assume(p0.clone());
    let h2 = b.assume(imp(&p0, &p1));
    let k = b.mp(h1, h2);
    let k = b.discharge(h2, k);
    let lemma = b.discharge(h1, k);
    let rm = b.rm_box(lemma);
    let b2 = b.axiom("b2", &[imp(&p0, &p1), p1.clone()]);
    let d = b.assume(dm(&imp(&p0, &p1)));
    let bp = b.assume(bx(&p0));
    let k = b.mp(bp, rm);
    let k = b.mp(k, b2);
    let k = b.mp(d, k);
    let k = b.discharge(bp, k);
    let s = b.discharge(d, k);
    let proof = b.theorem("t2_box", s);
    c.add(proof);

    // Contr-m for the four connectives of the modal language.
    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let s = b.lemma("contr", &[]);
    let proof = b.theorem("contr_m_imp", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let s = b.lemma("contr_strong", &[]);
    let proof = b.theorem("contr_m_strong", s);
    c.add(proof);

    for (name, base) in [("contr_m_strict", "contr"), ("contr_m_strong_strict", "contr_strong")] {
        let mut b = ProofBuilder::new(System::CnK, c.reg());
        let cl = b.lemma(base, &[]);
        let pos = b.and_l(cl);
        let pos = b.nec(pos);
        let neg = b.and_r(cl);
        let neg = b.nec(neg);
        let inner = b.formula(pos).clone();
        let inner = match inner {
            Formula::Box(f) => *f,
            _ => unreachable!(),
        };
        let b5 = b.axiom("b5", &[inner]);
        let neg = b.bwd(b5, neg);
        let s = b.and_i(pos, neg);
        let proof = b.theorem(name, s);
        c.add(proof);
    }

    // Connexive theses for #> and #=>.
    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let at = b.lemma("at_imp", &[]);
    let at = b.nec(at);
    let b5 = b.axiom("b5", &[imp(&n(&p0), &p0)]);
    let s = b.bwd(b5, at);
    let proof = b.theorem("at_strict", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let bt = b.lemma("bt_imp", &[]);
    let m = b.rm_box(bt);
    let b5 = b.axiom("b5", &[imp(&p0, &p1)]);
    let out = b.and_r(b5);
    let s = b.syl(m, out);
    let proof = b.theorem("bt_strict_inner", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let inner = b.lemma("bt_strict_inner", &[]);
    let s = b.nec(inner);
    let proof = b.theorem("bt_strict", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let b5 = b.axiom("b5", &[imp(&p0, &p1)]);
    let into = b.and_l(b5);
    let cbt = b.lemma("cbt_imp", &[]);
    let m = b.rm_box(cbt);
    let s = b.syl(into, m);
    let proof = b.theorem("cbt_strict_inner", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let inner = b.lemma("cbt_strict_inner", &[]);
    let s = b.nec(inner);
    let proof = b.theorem("cbt_strict", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let h = b.hyp(Formula::strict(p0.clone(), n(&p1)));
    let inner = b.lemma("bt_strict_inner", &[]);
    let s = b.mp(h, inner);
    let proof = entail(
        &b,
        "wbt_strict",
        Formula::strict(p0.clone(), n(&p1)),
        n(&Formula::strict(p0.clone(), p1.clone())),
        s,
    );
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let h = b.hyp(n(&Formula::strict(p0.clone(), p1.clone())));
    let inner = b.lemma("cbt_strict_inner", &[]);
    let s = b.mp(h, inner);
    let proof = entail(
        &b,
        "wcbt_strict",
        n(&Formula::strict(p0.clone(), p1.clone())),
        Formula::strict(p0.clone(), n(&p1)),
        s,
    );
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let at = b.lemma("at_strong", &[]);
    let at = b.nec(at);
    let b5 = b.axiom("b5", &[Formula::strong_imp(n(&p0), p0.clone())]);
    let s = b.bwd(b5, at);
    let proof = b.theorem("at_strong_strict", s);
    c.add(proof);

    // (φ #=> ¬ψ) ⇒ ¬(φ #=> ψ), then boxed.
    let pos = Formula::strong_imp(p0.clone(), p1.clone());
    let negd = Formula::strong_imp(p0.clone(), n(&p1));
    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let bt = b.lemma("bt_strong", &[]);
    let l = b.and_l(bt);
    let m = b.rm_box(l);
    let b5 = b.axiom("b5", core::slice::from_ref(&pos));
    let out = b.and_r(b5);
    let xy = b.syl(m, out);
    let r = b.and_r(bt);
    let dni = b.imp_dni(pos.clone());
    let k = b.syl(dni, r);
    let mk = b.rm_box(k);
    let dne = b.imp_dne(Formula::boxed(pos.clone()));
    let b5n = b.axiom("b5", core::slice::from_ref(&negd));
    let out = b.and_r(b5n);
    let nynx = b.chain(&[dne, mk, out]);
    let s = b.and_i(xy, nynx);
    let proof = b.theorem("bt_strong_strict_inner", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let inner = b.lemma("bt_strong_strict_inner", &[]);
    let s = b.nec(inner);
    let proof = b.theorem("bt_strong_strict", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnK, c.reg());
    let x = Formula::strong_strict(p0.clone(), n(&p1));
    let h = b.hyp(x.clone());
    let inner = b.lemma("bt_strong_strict_inner", &[]);
    let s = b.fwd(inner, h);
    let y = n(&Formula::strong_strict(p0.clone(), p1.clone()));
    let proof = entail(&b, "wbt_strong_strict", x, y, s);
    c.add(proof);
}

fn conditional(c: &mut Corpus) {
    let (p0, p1, p2) = (p(0), p(1), p(2));

    // RB: from φ ⇔ ψ, (χ ∗ φ) ⇔ (χ ∗ ψ) for ∗ = @> and ?>.
    for (name, ax, boxy) in [("rb_would", "g6", true), ("rb_might", "g7", false)] {
        let cond = |a: &Formula, b: &Formula| if boxy { would(a, b) } else { might(a, b) };
        let mut b = ProofBuilder::new(System::CnCK, c.reg());
        let hyp = Formula::strong_iff(p0.clone(), p1.clone());
        let h = b.hyp(hyp.clone());
        let h1 = b.and_l(h);
        let h2 = b.and_r(h);
        let ab = b.and_l(h1);
        let nbna = b.and_r(h1);
        let ba = b.and_l(h2);
        let nanb = b.and_r(h2);
        let e = b.and_i(ab, ba);
        let en = b.and_i(nanb, nbna);
        let (rc, rcn) = if boxy {
            (b.rc_box(e, p2.clone()), b.rc_box(en, p2.clone()))
        } else {
            (b.rc_dia(e, p2.clone()), b.rc_dia(en, p2.clone()))
        };
        let fwd = b.and_l(rc);
        let back = b.and_r(rcn);
        let gb = b.axiom(ax, &[p2.clone(), p1.clone()]);
        let ga = b.axiom(ax, &[p2.clone(), p0.clone()]);
        let into_b = b.and_l(gb);
        let out_a = b.and_r(ga);
        let nbna_c = b.chain(&[into_b, back, out_a]);
        let bwd = b.and_r(rc);
        let into_a = b.and_l(ga);
        let fwd_n = b.and_l(rcn);
        let out_b = b.and_r(gb);
        let nanb_c = b.chain(&[into_a, fwd_n, out_b]);
        let s = b.strong_iff(fwd, nbna_c, bwd, nanb_c);
        debug_assert_eq!(
            b.formula(s),
            &Formula::strong_iff(cond(&p2, &p0), cond(&p2, &p1))
        );
        let proof = rulederive(&b, name, hyp, s);
        c.add(proof);
    }

    // Nec: from φ, ψ @> φ.
    let mut b = ProofBuilder::new(System::CnCK, c.reg());
    let h = b.hyp(p0.clone());
    let s = b.nec_would(h, p1.clone());
    let proof = rulederive(&b, "appendix_nec", p0.clone(), s);
    c.add(proof);

    // RM: from φ → ψ, (χ ∗ φ) → (χ ∗ ψ).
    let mut b = ProofBuilder::new(System::CnCK, c.reg());
    let h = b.hyp(imp(&p0, &p1));
    let s = b.rm_would(h, p2.clone());
    let proof = rulederive(&b, "rm_would", imp(&p0, &p1), s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnCK, c.reg());
    let h = b.hyp(imp(&p0, &p1));
    let s = b.rm_might(h, p2.clone());
    let proof = rulederive(&b, "rm_might", imp(&p0, &p1), s);
    c.add(proof);

    // Th1: (φ@>(ψ→χ)) → ((φ@>ψ) → (φ@>χ))
    let mut b = ProofBuilder::new(System::CnCK, c.reg());
    let mixed = Formula::and(p1.clone(), imp(&p1, &p2));
    let k = b.assume(mixed.clone());
    let l = b.and_l(k);
    let r = b.and_r(k);
    let x = b.mp(l, r);
    let lemma = b.discharge(k, x);
    let rm = b.rm_would(lemma, p0.clone());
    let g1 = b.axiom("g1", &[p0.clone(), p1.clone(), imp(&p1, &p2)]);
    let a = b.assume(would(&p0, &imp(&p1, &p2)));
    let bb = b.assume(would(&p0, &p1));
    let both = b.and_i(bb, a);
    let k = b.fwd(g1, both);
    let k = b.mp(k, rm);
    let k = b.discharge(bb, k);
    let s = b.discharge(a, k);
    let proof = b.theorem("appendix_th1", s);
    c.add(proof);

    // Th2: (φ@>(ψ→χ)) → ((φ?>ψ) → (φ?>χ))
    let mut b = ProofBuilder::new(System::CnCK, c.reg());
    let k = b.assume(mixed);
    let l = b.and_l(k);
    let r = b.and_r(k);
    let x = b.mp(l, r);
    let lemma = b.discharge(k, x);
    let rm = b.rm_might(lemma, p0.clone());
    let g2 = b.axiom("g2", &[p0.clone(), p1.clone(), imp(&p1, &p2)]);
    let a = b.assume(would(&p0, &imp(&p1, &p2)));
    let d = b.assume(might(&p0, &p1));
    let both = b.and_i(d, a);
    let k = b.mp(both, g2);
    let k = b.mp(k, rm);
    let k = b.discharge(d, k);
    let s = b.discharge(a, k);
    let proof = b.theorem("appendix_th2", s);
    c.add(proof);

    // Th3, as derived: (φ@>ψ) → ((φ?>(ψ→χ)) → (φ?>χ))
    let mut b = ProofBuilder::new(System::CnCK, c.reg());
    let h1 = b.assume(p1.clone());
    let h2 = b.assume(imp(&p1, &p2));
    let k = b.mp(h1, h2);
    let k = b.discharge(h2, k);
    let lemma = b.discharge(h1, k);
    let rm = b.rm_would(lemma, p0.clone());
    let th2 = b.lemma("appendix_th2", &[p0.clone(), imp(&p1, &p2), p2.clone()]);
    let s = b.syl(rm, th2);
    let proof = b.theorem("appendix_th3", s);
    c.add(proof);

    // Th3 in its displayed form: (φ?>(ψ→χ)) → ((φ@>ψ) → (φ?>ψ))
    let mut b = ProofBuilder::new(System::CnCK, c.reg());
    let g2 = b.axiom("g2", &[p0.clone(), imp(&p1, &p2), p1.clone()]);
    let proj = b.axiom("a4", &[imp(&p1, &p2), p1.clone()]);
    let rm = b.rm_might(proj, p0.clone());
    let a = b.assume(might(&p0, &imp(&p1, &p2)));
    let w = b.assume(would(&p0, &p1));
    let both = b.and_i(a, w);
    let k = b.mp(both, g2);
    let k = b.mp(k, rm);
    let k = b.discharge(w, k);
    let s = b.discharge(a, k);
    let proof = b.theorem("appendix_th3_stated", s);
    c.add(proof);

    // Th4/Th5: ¬(φ ∗ ψ) ⇔ (φ ∗ ¬ψ)
    for (name, ax, boxy) in [("appendix_th4", "g6", true), ("appendix_th5", "g7", false)] {
        let cond = |a: &Formula, b: &Formula| if boxy { would(a, b) } else { might(a, b) };
        let mut b = ProofBuilder::new(System::CnCK, c.reg());
        let g = b.axiom(ax, &[p0.clone(), p1.clone()]);
        let ab = b.and_l(g);
        let ba = b.and_r(g);
        let a9 = b.axiom("a9", core::slice::from_ref(&p1));
        let rcd = if boxy { b.rc_box(a9, p0.clone()) } else { b.rc_dia(a9, p0.clone()) };
        let gn = b.axiom(ax, &[p0.clone(), n(&p1)]);
        let into = b.and_l(gn);
        let strip = b.and_l(rcd);
        let dni = b.imp_dni(cond(&p0, &p1));
        let nbna = b.chain(&[into, strip, dni]);
        let dne = b.imp_dne(cond(&p0, &p1));
        let add = b.and_r(rcd);
        let out = b.and_r(gn);
        let nanb = b.chain(&[dne, add, out]);
        let s = b.strong_iff(ab, nbna, ba, nanb);
        let proof = b.theorem(name, s);
        c.add(proof);
    }

    // Weak boxing theses for the conditionals.
    for (ax, suffix, boxy) in [("g6", "would", true), ("g7", "might", false)] {
        let cond = |a: &Formula, b: &Formula| if boxy { would(a, b) } else { might(a, b) };
        let neg_form = cond(&p0, &n(&p1));
        let negated = n(&cond(&p0, &p1));

        let mut b = ProofBuilder::new(System::CnCK, c.reg());
        let h = b.hyp(neg_form.clone());
        let g = b.axiom(ax, &[p0.clone(), p1.clone()]);
        let s = b.bwd(g, h);
        let proof =
            entail(&b, &alloc::format!("wbt_{suffix}"), neg_form.clone(), negated.clone(), s);
        c.add(proof);

        let mut b = ProofBuilder::new(System::CnCK, c.reg());
        let h = b.hyp(negated.clone());
        let g = b.axiom(ax, &[p0.clone(), p1.clone()]);
        let s = b.fwd(g, h);
        let proof =
            entail(&b, &alloc::format!("wcbt_{suffix}"), negated.clone(), neg_form.clone(), s);
        c.add(proof);

        let strong = |a: &Formula, b: &Formula| {
            if boxy {
                Formula::strong_would(a.clone(), b.clone())
            } else {
                Formula::strong_might(a.clone(), b.clone())
            }
        };
        let x = strong(&p0, &n(&p1));
        let y = n(&strong(&p0, &p1));
        let mut b = ProofBuilder::new(System::CnCK, c.reg());
        let h = b.hyp(x.clone());
        let l = b.and_l(h);
        let g = b.axiom(ax, &[p0.clone(), p1.clone()]);
        let k = b.bwd(g, l);
        let s = b.neg_and_l(k, cond(&n(&p1), &n(&p0)));
        let proof = entail(&b, &alloc::format!("wbt_strong_{suffix}"), x, y, s);
        c.add(proof);
    }
}

fn reflexive(c: &mut Corpus) {
    let (p0, p1) = (p(0), p(1));
    let np = n(&p0);

    // ¬(¬φ @=> φ), through the six intermediate claims.
    let a = would(&np, &p0);
    let bb = would(&np, &n(&np));
    let mut b = ProofBuilder::new(System::CnCKR, c.reg());
    b.set_reuse(false);
    let g6b = b.axiom("g6", &[np.clone(), n(&np)]);
    let into = b.and_l(g6b);
    let a9 = b.axiom("a9", core::slice::from_ref(&np));
    let rc3 = b.rc_box(a9, np.clone());
    let strip = b.and_l(rc3);
    let g6a = b.axiom("g6", &[np.clone(), p0.clone()]);
    let out = b.and_r(g6a);
    let nb_na = b.chain(&[into, strip, out]);
    let refl = b.axiom("g8", core::slice::from_ref(&np));
    let ss1 = b.dni(refl);
    let th4 = b.lemma("appendix_th4", &[np.clone(), np.clone()]);
    let back = b.and_r(th4);
    let back = b.and_r(back);
    let ss2 = b.mp(ss1, back);
    let ss3 = b.mp(ss2, nb_na);
    let ss4 = b.lemma("t5", &[a.clone(), bb.clone()]);
    let a9p = b.axiom("a9", core::slice::from_ref(&p0));
    let rcp = b.rc_box(a9p, np.clone());
    let a_b = b.and_r(rcp);
    let na = n(&a);
    let dd = Formula::or(na.clone(), na.clone());
    let nn = n(&Formula::and(a.clone(), bb.clone()));
    // N → D
    let h = b.assume(nn.clone());
    let split = b.and_l(ss4);
    let split = b.and_l(split);
    let d = b.mp(h, split);
    let left = b.axiom("a6", &[na.clone(), na.clone()]);
    let right = b.syl(nb_na, left);
    let k = b.or_e(d, left, right);
    let n_d = b.discharge(h, k);
    // ¬D → ¬N
    let h = b.assume(n(&dd));
    let a11 = b.axiom("a11", &[na.clone(), na.clone()]);
    let k = b.fwd(a11, h);
    let k = b.and_l(k);
    let ka = b.dne(k);
    let kb = b.mp(ka, a_b);
    let k = b.and_i(ka, kb);
    let k = b.dni(k);
    let nd_nn = b.discharge(h, k);
    // D → N
    let a6 = b.axiom("a6", &[na.clone(), n(&bb)]);
    let a10 = b.axiom("a10", &[a.clone(), bb.clone()]);
    let join = b.and_r(a10);
    let branch = b.syl(a6, join);
    let h = b.assume(dd.clone());
    let k = b.or_e(h, branch, branch);
    let d_n = b.discharge(h, k);
    // ¬N → ¬D
    let h = b.assume(n(&nn));
    let k = b.dne(h);
    let k = b.and_l(k);
    let k = b.dni(k);
    let k = b.and_i(k, k);
    let k = b.bwd(a11, k);
    let nn_nd = b.discharge(h, k);
    let ss5 = b.strong_iff(n_d, nd_nn, d_n, nn_nd);
    let d = b.or_il(ss3, na.clone());
    let back = b.and_r(ss5);
    let s = b.fwd(back, d);
    let proof = b.theorem("ss_chain", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnCKR, c.reg());
    let refl = b.axiom("g8", core::slice::from_ref(&np));
    let th4 = b.lemma("appendix_th4", &[np.clone(), p0.clone()]);
    let k = b.and_r(th4);
    let k = b.and_l(k);
    let s = b.mp(refl, k);
    let proof = b.theorem("at_would_r", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnCKR, c.reg());
    let g = b.axiom("g6", &[p0.clone(), p1.clone()]);
    let t = b.and_r(g);
    let s = b.lift_would_r(t);
    let proof = b.theorem("bt_would_r", s);
    c.add(proof);

    let mut b = ProofBuilder::new(System::CnCKR, c.reg());
    let g = b.axiom("g6", &[p0.clone(), p1.clone()]);
    let t = b.and_l(g);
    let s = b.lift_would_r(t);
    let proof = b.theorem("cbt_would_r", s);
    c.add(proof);

    // BT@=>: both halves lifted through reflexivity.
    let x = Formula::strong_would(p0.clone(), n(&p1));
    let y = n(&Formula::strong_would(p0.clone(), p1.clone()));
    let mut b = ProofBuilder::new(System::CnCKR, c.reg());
    let g = b.axiom("g6", &[p0.clone(), p1.clone()]);
    let h = b.assume(x.clone());
    let k = b.and_l(h);
    let k = b.bwd(g, k);
    let k = b.neg_and_l(k, would(&n(&p1), &n(&p0)));
    let xy = b.discharge(h, k);
    let h = b.assume(n(&y));
    let k = b.dne(h);
    let k = b.and_l(k);
    let a9 = b.axiom("a9", core::slice::from_ref(&p1));
    let rc = b.rc_box(a9, p0.clone());
    let k = b.bwd(rc, k);
    let gn = b.axiom("g6", &[p0.clone(), n(&p1)]);
    let k = b.bwd(gn, k);
    let k = b.neg_and_l(k, would(&n(&n(&p1)), &n(&p0)));
    let nynx = b.discharge(h, k);
    let l = b.lift_would_r(xy);
    let r = b.lift_would_r(nynx);
    let s = b.and_i(l, r);
    let proof = b.theorem("bt_strong_would_r", s);
    c.add(proof);
}
