//! Translations between the modal and conditional languages, and the model
//! constructions that go with them.
//!
//! * [`tr_phi`] reads □ and ◇ as conditionals with a fixed antecedent.
//! * [`i_translate`] reads `a @> b` as `□(a → b)` and `a ?> b` as `◇(a ∧ b)`.
//! * [`modal_to_conditional`] and [`conditional_to_modal`] move models
//!   across the same bridge.
//! * [`dp_join`] places two pointed models above a fresh root.
//! * [`boxto_extension`] adds a world that refutes `φ @> ψ` given a world
//!   refuting ψ.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::eval::biextension;
use crate::model::{
    validate_model, Access, BiSet, FrameClass, KripkeModel, ModelKind, PointedModel,
    StructuralError,
};
use crate::syntax::{Formula, LanguageTag};
use crate::worldset::WorldSet;

/// The full lift materializes 4^|W| indices; this is its world limit.
pub const FULL_LIFT_MAX_WORLDS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("expected a formula within {expected}, got a {found} formula")]
    LanguageMismatch { expected: LanguageTag, found: LanguageTag },
    #[error("input is not a valid {class} model: {detail}")]
    FrameViolation { class: FrameClass, detail: String },
    #[error("the full lift handles at most {limit} worlds, got {worlds}")]
    TooLarge { worlds: usize, limit: usize },
    #[error("cannot combine a {0} model with a {1} model")]
    KindMismatch(ModelKind, ModelKind),
    #[error("the anchor is not verified at every world of the lifted model")]
    AnchorNotGlobal,
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error(transparent)]
    Eval(#[from] crate::eval::EvalError),
}

fn require(f: &Formula, expected: LanguageTag) -> Result<(), TransformError> {
    let found = f.language();
    if found.within(expected) {
        Ok(())
    } else {
        Err(TransformError::LanguageMismatch { expected, found })
    }
}

fn require_valid(m: &KripkeModel, class: FrameClass) -> Result<(), TransformError> {
    let report = validate_model(m, class);
    if report.is_ok() {
        Ok(())
    } else {
        let detail: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        Err(TransformError::FrameViolation { class, detail: detail.join("; ") })
    }
}

/// `Tr_anchor`: □ψ becomes `anchor @> Tr(ψ)`, ◇ψ becomes `anchor ?> Tr(ψ)`.
pub fn tr_phi(anchor: &Formula, f: &Formula) -> Result<Formula, TransformError> {
    require(anchor, LanguageTag::CN)?;
    require(f, LanguageTag::MD)?;
    Ok(tr(anchor, f))
}

fn tr(anchor: &Formula, f: &Formula) -> Formula {
    use Formula as F;
    match f {
        F::Atom(_) => f.clone(),
        F::Neg(a) => F::neg(tr(anchor, a)),
        F::And(a, b) => F::and(tr(anchor, a), tr(anchor, b)),
        F::Or(a, b) => F::or(tr(anchor, a), tr(anchor, b)),
        F::Imp(a, b) => F::imp(tr(anchor, a), tr(anchor, b)),
        F::Box(a) => F::would(anchor.clone(), tr(anchor, a)),
        F::Dia(a) => F::might(anchor.clone(), tr(anchor, a)),
        F::Would(..) | F::Might(..) => unreachable!("checked to be modal"),
    }
}

/// `I`: `a @> b` becomes `□(I(a) → I(b))`, `a ?> b` becomes `◇(I(a) ∧ I(b))`.
pub fn i_translate(f: &Formula) -> Result<Formula, TransformError> {
    require(f, LanguageTag::CN)?;
    Ok(interp(f))
}

fn interp(f: &Formula) -> Formula {
    use Formula as F;
    match f {
        F::Atom(_) => f.clone(),
        F::Neg(a) => F::neg(interp(a)),
        F::And(a, b) => F::and(interp(a), interp(b)),
        F::Or(a, b) => F::or(interp(a), interp(b)),
        F::Imp(a, b) => F::imp(interp(a), interp(b)),
        F::Would(a, b) => F::strict(interp(a), interp(b)),
        F::Might(a, b) => F::dia(F::and(interp(a), interp(b))),
        F::Box(..) | F::Dia(..) => unreachable!("checked to be conditional"),
    }
}

/// How a modal relation is spread over conditional indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftMode {
    /// Every index carries the modal relation.
    Full,
    /// Up-closed indices `(X, Y)` carry the pairs `R(v, u)` with `u ∈ X`.
    Closed,
    /// Indices `(W, X)` carry the modal relation; the anchor must come out
    /// verified everywhere.
    Refl(Formula),
}

fn subsets(n: usize) -> impl Iterator<Item = WorldSet> + Clone {
    (0u64..(1u64 << n)).map(WorldSet)
}

fn rows(m: &KripkeModel) -> Vec<WorldSet> {
    (0..m.len()).map(|v| m.successors(v)).collect()
}

/// Lifts a modal model to a conditional one.
pub fn modal_to_conditional(m: &KripkeModel, mode: &LiftMode) -> Result<KripkeModel, TransformError> {
    require_valid(m, FrameClass::FSM)?;
    let n = m.len();
    let r = rows(m);
    let mut map = BTreeMap::new();
    match mode {
        LiftMode::Full => {
            if n > FULL_LIFT_MAX_WORLDS {
                return Err(TransformError::TooLarge { worlds: n, limit: FULL_LIFT_MAX_WORLDS });
            }
            for x in subsets(n) {
                for y in subsets(n) {
                    map.insert(BiSet::new(x, y), r.clone());
                }
            }
        }
        LiftMode::Closed => {
            let closed: Vec<WorldSet> = subsets(n).filter(|&s| m.is_up_closed(s)).collect();
            for &x in &closed {
                let restricted: Vec<WorldSet> = r.iter().map(|s| s.intersection(x)).collect();
                for &y in &closed {
                    map.insert(BiSet::new(x, y), restricted.clone());
                }
            }
        }
        LiftMode::Refl(anchor) => {
            require(anchor, LanguageTag::CN)?;
            for x in subsets(n) {
                map.insert(BiSet::new(m.all(), x), r.clone());
            }
        }
    }
    let out = m.with_access(Access::Cond(map))?;
    if let LiftMode::Refl(anchor) = mode {
        if biextension(&out, anchor)?.pos != out.all() {
            return Err(TransformError::AnchorNotGlobal);
        }
    }
    Ok(out)
}

/// The modal model whose relation is the slice of `m` at `‖anchor‖`.
pub fn conditional_to_modal(m: &KripkeModel, anchor: &Formula) -> Result<KripkeModel, TransformError> {
    require(anchor, LanguageTag::CN)?;
    require_valid(m, FrameClass::FSC)?;
    let index = biextension(m, anchor)?;
    let r = (0..m.len()).map(|v| m.cond_successors(index, v)).collect();
    Ok(m.with_access(Access::Modal(r))?)
}

/// The result of [`dp_join`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Join {
    /// The joined model, pointed at the fresh root.
    pub model: PointedModel,
    /// Atom `a` of the second component is atom `a + offset` in the join.
    pub offset: u32,
    /// Positions of the first component's worlds in the join.
    pub left: Vec<usize>,
    /// Positions of the second component's worlds in the join.
    pub right: Vec<usize>,
}

impl Join {
    /// A second-component formula, renamed into the join's atoms.
    pub fn rename_right(&self, f: &Formula) -> Formula {
        f.shift_atoms(self.offset)
    }
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = String::from(base);
    while taken.contains(&name) {
        name.push_str("_2");
    }
    name
}

fn place(s: WorldSet, map: &[usize]) -> WorldSet {
    s.remap(map)
}

/// Disjoint union of two pointed models with a fresh root below both points.
///
/// The first component's atoms keep their numbers; the second component's
/// atoms are shifted past every atom the first one lists, so valuations
/// never clash. The root sees nothing and verifies no atom.
pub fn dp_join(a: &PointedModel, b: &PointedModel) -> Result<Join, TransformError> {
    let (m1, m2) = (&a.model, &b.model);
    if m1.kind() != m2.kind() {
        return Err(TransformError::KindMismatch(m1.kind(), m2.kind()));
    }
    let (n1, n2) = (m1.len(), m2.len());
    let n = n1 + n2 + 1;
    if n > crate::worldset::MAX_WORLDS {
        return Err(StructuralError::TooManyWorlds(n).into());
    }
    let left: Vec<usize> = (0..n1).collect();
    let right: Vec<usize> = (n1..n1 + n2).collect();
    let root = n1 + n2;

    let mut names: Vec<String> = m1.worlds().to_vec();
    for w in m2.worlds() {
        let name = fresh_name(&names, w);
        names.push(name);
    }
    let root_name = fresh_name(&names, "r");
    names.push(root_name);

    let mut up = Vec::with_capacity(n);
    for v in 0..n1 {
        up.push(place(m1.up(v), &left));
    }
    for v in 0..n2 {
        up.push(place(m2.up(v), &right));
    }
    up.push(place(m1.up(a.point), &left).union(place(m2.up(b.point), &right)).with(root));

    let offset = m1.valuation().keys().next_back().map_or(0, |&k| k + 1);
    let left_val = |atom: u32| m1.val(atom).remap(&left);
    let right_val = |atom: u32| {
        if atom >= offset {
            m2.val(atom - offset).remap(&right)
        } else {
            BiSet::default()
        }
    };
    let mut val = BTreeMap::new();
    for atom in 0..offset {
        val.insert(atom, left_val(atom).union(right_val(atom)));
    }
    for &k in m2.valuation().keys() {
        val.insert(k + offset, left_val(k + offset).union(right_val(k + offset)));
    }
    let default_val = m1.default_val().remap(&left).union(m2.default_val().remap(&right));

    let access = match (m1.access(), m2.access()) {
        (Access::None, Access::None) => Access::None,
        (Access::Modal(r1), Access::Modal(r2)) => {
            let mut r: Vec<WorldSet> = r1.iter().map(|s| place(*s, &left)).collect();
            r.extend(r2.iter().map(|s| place(*s, &right)));
            r.push(WorldSet::EMPTY);
            Access::Modal(r)
        }
        (Access::Cond(_), Access::Cond(_)) => {
            let w1 = WorldSet::full(n1).remap(&left);
            let w2 = WorldSet::full(n2).remap(&right);
            let back1 = inverse(&left, n);
            let back2 = inverse(&right, n);
            let mut map = BTreeMap::new();
            for x in subsets(n) {
                for y in subsets(n) {
                    let i1 = BiSet::new(x.intersection(w1), y.intersection(w1)).remap(&back1);
                    let i2 = BiSet::new(x.intersection(w2), y.intersection(w2)).remap(&back2);
                    let mut r: Vec<WorldSet> = (0..n1)
                        .map(|v| place(m1.cond_successors(i1, v), &left))
                        .collect();
                    r.extend((0..n2).map(|v| place(m2.cond_successors(i2, v), &right)));
                    r.push(WorldSet::EMPTY);
                    if r.iter().any(|s| !s.is_empty()) {
                        map.insert(BiSet::new(x, y), r);
                    }
                }
            }
            Access::Cond(map)
        }
        _ => unreachable!("kinds agree"),
    };
    let model = KripkeModel::from_parts(names, up, access, val, default_val)?;
    Ok(Join { model: PointedModel { model, point: root }, offset, left, right })
}

/// Maps join positions back to component positions; positions outside the
/// component go nowhere (callers intersect first).
fn inverse(map: &[usize], n: usize) -> Vec<usize> {
    let mut back = vec![usize::MAX; n];
    for (i, &j) in map.iter().enumerate() {
        back[j] = i;
    }
    back
}

/// Adds a world v, unrelated by ≤ to the rest, whose four index variants of
/// `‖antecedent‖` lead to every world above the point.
///
/// If the point refutes ψ, then v refutes `antecedent @> ψ`: whatever v
/// makes of the antecedent, its bi-extension is one of those variants.
pub fn boxto_extension(pm: &PointedModel, antecedent: &Formula) -> Result<PointedModel, TransformError> {
    let m = &pm.model;
    require(antecedent, LanguageTag::CN)?;
    require_valid(m, FrameClass::FSC)?;
    let n = m.len();
    let v = n;
    let total = n + 1;
    if total > crate::worldset::MAX_WORLDS {
        return Err(StructuralError::TooManyWorlds(total).into());
    }
    let mut names = m.worlds().to_vec();
    let v_name = fresh_name(&names, "v");
    names.push(v_name);
    let mut up = m.up_sets().to_vec();
    up.push(WorldSet::singleton(v));

    let mut map: BTreeMap<BiSet, Vec<WorldSet>> = BTreeMap::new();
    if let Access::Cond(listed) = m.access() {
        for (index, r) in listed {
            for extra_pos in [false, true] {
                for extra_neg in [false, true] {
                    let mut key = *index;
                    if extra_pos {
                        key.pos = key.pos.with(v);
                    }
                    if extra_neg {
                        key.neg = key.neg.with(v);
                    }
                    let mut row = r.clone();
                    row.push(WorldSet::EMPTY);
                    map.insert(key, row);
                }
            }
        }
    }
    let phi = biextension(m, antecedent)?;
    let targets = m.up(pm.point);
    for extra_pos in [false, true] {
        for extra_neg in [false, true] {
            let mut key = phi;
            if extra_pos {
                key.pos = key.pos.with(v);
            }
            if extra_neg {
                key.neg = key.neg.with(v);
            }
            let row = map.entry(key).or_insert_with(|| vec![WorldSet::EMPTY; total]);
            row[v] = row[v].union(targets);
        }
    }
    let model = KripkeModel::from_parts(
        names,
        up,
        Access::Cond(map),
        m.valuation().clone(),
        m.default_val(),
    )?;
    Ok(PointedModel { model, point: v })
}

/// Renders a lift mode for messages.
pub fn describe(mode: &LiftMode) -> String {
    match mode {
        LiftMode::Full => "full".into(),
        LiftMode::Closed => "closed".into(),
        LiftMode::Refl(a) => format!("refl({a})"),
    }
}

#[cfg(test)]
mod tests;
