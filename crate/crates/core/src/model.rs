//! Finite bi-valuational Kripke models and frame-class validation.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::worldset::{WorldSet, MAX_WORLDS};

pub mod fixtures;

/// Verification (`Pos`) or falsification (`Neg`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// An ordered pair of world sets: a bi-extension, or a conditional index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiSet {
    pub pos: WorldSet,
    pub neg: WorldSet,
}

impl BiSet {
    pub fn new(pos: WorldSet, neg: WorldSet) -> BiSet {
        BiSet { pos, neg }
    }

    pub fn get(self, sign: Sign) -> WorldSet {
        match sign {
            Sign::Pos => self.pos,
            Sign::Neg => self.neg,
        }
    }

    pub fn swap(self) -> BiSet {
        BiSet { pos: self.neg, neg: self.pos }
    }

    pub fn union(self, other: BiSet) -> BiSet {
        BiSet { pos: self.pos.union(other.pos), neg: self.neg.union(other.neg) }
    }

    pub fn remap(self, map: &[usize]) -> BiSet {
        BiSet { pos: self.pos.remap(map), neg: self.neg.remap(map) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelKind {
    Prop,
    Modal,
    Cond,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Prop => "prop",
            ModelKind::Modal => "modal",
            ModelKind::Cond => "cond",
        })
    }
}

/// Accessibility, stored as successor sets per world.
///
/// Conditional access is sparse: an index missing from the map carries the
/// empty relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Access {
    None,
    Modal(Vec<WorldSet>),
    Cond(BTreeMap<BiSet, Vec<WorldSet>>),
}

impl Access {
    fn kind(&self) -> ModelKind {
        match self {
            Access::None => ModelKind::Prop,
            Access::Modal(_) => ModelKind::Modal,
            Access::Cond(_) => ModelKind::Cond,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructuralError {
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("too many worlds ({0}); the limit is {MAX_WORLDS}")]
    TooManyWorlds(usize),
    #[error("world '{0}' is declared twice")]
    DuplicateWorld(String),
    #[error("'{0}' is not a valid world name")]
    BadWorldName(String),
    #[error("unknown world '{0}'")]
    UnknownWorld(String),
    #[error("{0} accessibility does not fit a {1} model")]
    AccessKind(ModelKind, ModelKind),
    #[error("a set refers to a world outside the model")]
    OutOfRange,
}

/// A finite model: worlds, a preorder given by up-sets, accessibility, and a
/// pair of valuations.
///
/// Atoms missing from the valuation map take `default_val`, which is empty
/// for every model except those asking for a uniform valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    kind: ModelKind,
    worlds: Vec<String>,
    up: Vec<WorldSet>,
    access: Access,
    val: BTreeMap<u32, BiSet>,
    default_val: BiSet,
}

fn valid_world_name(name: &str) -> bool {
    !name.is_empty()
        && !name.chars().any(char::is_whitespace)
        && !matches!(name, "/" | ";" | "*")
        && !name.starts_with('#')
}

impl KripkeModel {
    /// Assembles a model from index-based parts. Only structural sanity is
    /// checked here; frame conditions are left to [`validate_model`].
    pub fn from_parts(
        worlds: Vec<String>,
        up: Vec<WorldSet>,
        access: Access,
        val: BTreeMap<u32, BiSet>,
        default_val: BiSet,
    ) -> Result<KripkeModel, StructuralError> {
        let n = worlds.len();
        if n == 0 {
            return Err(StructuralError::NoWorlds);
        }
        if n > MAX_WORLDS {
            return Err(StructuralError::TooManyWorlds(n));
        }
        for (i, name) in worlds.iter().enumerate() {
            if !valid_world_name(name) {
                return Err(StructuralError::BadWorldName(name.clone()));
            }
            if worlds[..i].contains(name) {
                return Err(StructuralError::DuplicateWorld(name.clone()));
            }
        }
        let all = WorldSet::full(n);
        let fits = |s: &WorldSet| s.is_subset(all);
        let fits_bi = |b: &BiSet| fits(&b.pos) && fits(&b.neg);
        let access = match access {
            Access::Modal(r) => {
                if r.len() != n || !r.iter().all(fits) {
                    return Err(StructuralError::OutOfRange);
                }
                Access::Modal(r)
            }
            Access::Cond(map) => {
                let mut kept = BTreeMap::new();
                for (index, r) in map {
                    if r.len() != n || !r.iter().all(fits) || !fits_bi(&index) {
                        return Err(StructuralError::OutOfRange);
                    }
                    if r.iter().any(|s| !s.is_empty()) {
                        kept.insert(index, r);
                    }
                }
                Access::Cond(kept)
            }
            Access::None => Access::None,
        };
        if up.len() != n || !up.iter().all(fits) || !val.values().all(fits_bi) || !fits_bi(&default_val)
        {
            return Err(StructuralError::OutOfRange);
        }
        Ok(KripkeModel { kind: access.kind(), worlds, up, access, val, default_val })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn all(&self) -> WorldSet {
        WorldSet::full(self.worlds.len())
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_name(&self, i: usize) -> &str {
        &self.worlds[i]
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    /// `{v | w ≤ v}`
    pub fn up(&self, w: usize) -> WorldSet {
        self.up[w]
    }

    pub fn up_sets(&self) -> &[WorldSet] {
        &self.up
    }

    pub fn leq(&self, w: usize, v: usize) -> bool {
        self.up[w].contains(v)
    }

    pub fn access(&self) -> &Access {
        &self.access
    }

    /// Successors of `w` in the modal relation (empty for other kinds).
    pub fn successors(&self, w: usize) -> WorldSet {
        match &self.access {
            Access::Modal(r) => r[w],
            _ => WorldSet::EMPTY,
        }
    }

    /// Successors of `w` in the relation indexed by `index`.
    pub fn cond_successors(&self, index: BiSet, w: usize) -> WorldSet {
        match &self.access {
            Access::Cond(map) => map.get(&index).map_or(WorldSet::EMPTY, |r| r[w]),
            _ => WorldSet::EMPTY,
        }
    }

    pub fn val(&self, atom: u32) -> BiSet {
        self.val.get(&atom).copied().unwrap_or(self.default_val)
    }

    /// The explicitly listed atoms and their bi-sets.
    pub fn valuation(&self) -> &BTreeMap<u32, BiSet> {
        &self.val
    }

    pub fn default_val(&self) -> BiSet {
        self.default_val
    }

    /// Same worlds, order and valuation with different accessibility.
    pub fn with_access(&self, access: Access) -> Result<KripkeModel, StructuralError> {
        KripkeModel::from_parts(
            self.worlds.clone(),
            self.up.clone(),
            access,
            self.val.clone(),
            self.default_val,
        )
    }

    /// Smallest ≤-up-closed superset.
    pub fn up_closure(&self, s: WorldSet) -> WorldSet {
        s.iter().fold(WorldSet::EMPTY, |acc, w| acc.union(self.up[w]))
    }

    pub fn is_up_closed(&self, s: WorldSet) -> bool {
        self.up_closure(s) == s
    }

    /// Copy with both valuations replaced by their upward closures.
    pub fn close_valuations(&self) -> KripkeModel {
        let close = |b: BiSet| BiSet::new(self.up_closure(b.pos), self.up_closure(b.neg));
        let mut m = self.clone();
        m.val = self.val.iter().map(|(&a, &b)| (a, close(b))).collect();
        m.default_val = close(self.default_val);
        m
    }

    /// World names of a set, in model order.
    pub fn names(&self, s: WorldSet) -> Vec<&str> {
        s.iter().map(|i| self.worlds[i].as_str()).collect()
    }

    /// `{w, v}` style rendering of a world set.
    pub fn show_set(&self, s: WorldSet) -> String {
        let mut out = String::from("{");
        for (k, name) in self.names(s).into_iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(name);
        }
        out.push('}');
        out
    }

    pub fn show_biset(&self, b: BiSet) -> String {
        alloc::format!("({}, {})", self.show_set(b.pos), self.show_set(b.neg))
    }
}

/// Name-based construction, the way model files and fixtures describe models.
/// Reflexive order pairs are added automatically.
#[derive(Clone, Debug)]
pub struct ModelBuilder {
    kind: ModelKind,
    worlds: Vec<String>,
    leq: Vec<(String, String)>,
    modal: Vec<(String, String)>,
    cond: Vec<(String, Vec<String>, Vec<String>, String)>,
    val: Vec<(u32, Sign, Vec<String>)>,
    default_val: Vec<(Sign, Vec<String>)>,
}

impl ModelBuilder {
    pub fn new(kind: ModelKind) -> ModelBuilder {
        ModelBuilder {
            kind,
            worlds: Vec::new(),
            leq: Vec::new(),
            modal: Vec::new(),
            cond: Vec::new(),
            val: Vec::new(),
            default_val: Vec::new(),
        }
    }

    pub fn world(&mut self, name: &str) -> &mut Self {
        self.worlds.push(name.into());
        self
    }

    pub fn leq(&mut self, w: &str, v: &str) -> &mut Self {
        self.leq.push((w.into(), v.into()));
        self
    }

    pub fn access(&mut self, w: &str, v: &str) -> &mut Self {
        self.modal.push((w.into(), v.into()));
        self
    }

    pub fn cond_access(&mut self, w: &str, pos: &[&str], neg: &[&str], v: &str) -> &mut Self {
        let own = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        self.cond.push((w.into(), own(pos), own(neg), v.into()));
        self
    }

    pub fn val(&mut self, atom: u32, sign: Sign, worlds: &[&str]) -> &mut Self {
        self.val.push((atom, sign, worlds.iter().map(|s| s.to_string()).collect()));
        self
    }

    /// Valuation for every atom not mentioned in a [`val`](Self::val) call.
    pub fn default_val(&mut self, sign: Sign, worlds: &[&str]) -> &mut Self {
        self.default_val.push((sign, worlds.iter().map(|s| s.to_string()).collect()));
        self
    }

    pub fn build(&self) -> Result<KripkeModel, StructuralError> {
        let n = self.worlds.len();
        let index = |name: &str| {
            self.worlds
                .iter()
                .position(|w| w == name)
                .ok_or_else(|| StructuralError::UnknownWorld(name.into()))
        };
        let set = |names: &[String]| -> Result<WorldSet, StructuralError> {
            names.iter().try_fold(WorldSet::EMPTY, |acc, n| Ok(acc.with(index(n)?)))
        };
        if n > MAX_WORLDS {
            return Err(StructuralError::TooManyWorlds(n));
        }
        let mut up: Vec<WorldSet> = (0..n).map(WorldSet::singleton).collect();
        for (w, v) in &self.leq {
            up[index(w)?].insert(index(v)?);
        }
        let access = match self.kind {
            ModelKind::Prop => {
                if !self.modal.is_empty() {
                    return Err(StructuralError::AccessKind(ModelKind::Modal, self.kind));
                }
                if !self.cond.is_empty() {
                    return Err(StructuralError::AccessKind(ModelKind::Cond, self.kind));
                }
                Access::None
            }
            ModelKind::Modal => {
                if !self.cond.is_empty() {
                    return Err(StructuralError::AccessKind(ModelKind::Cond, self.kind));
                }
                let mut r = vec![WorldSet::EMPTY; n];
                for (w, v) in &self.modal {
                    r[index(w)?].insert(index(v)?);
                }
                Access::Modal(r)
            }
            ModelKind::Cond => {
                if !self.modal.is_empty() {
                    return Err(StructuralError::AccessKind(ModelKind::Modal, self.kind));
                }
                let mut map: BTreeMap<BiSet, Vec<WorldSet>> = BTreeMap::new();
                for (w, xs, ys, v) in &self.cond {
                    let key = BiSet::new(set(xs)?, set(ys)?);
                    map.entry(key).or_insert_with(|| vec![WorldSet::EMPTY; n])[index(w)?]
                        .insert(index(v)?);
                }
                Access::Cond(map)
            }
        };
        let mut val: BTreeMap<u32, BiSet> = BTreeMap::new();
        for (atom, sign, names) in &self.val {
            let entry = val.entry(*atom).or_default();
            let s = set(names)?;
            match sign {
                Sign::Pos => entry.pos = entry.pos.union(s),
                Sign::Neg => entry.neg = entry.neg.union(s),
            }
        }
        let mut default_val = BiSet::default();
        for (sign, names) in &self.default_val {
            let s = set(names)?;
            match sign {
                Sign::Pos => default_val.pos = default_val.pos.union(s),
                Sign::Neg => default_val.neg = default_val.neg.union(s),
            }
        }
        // Atoms mentioned on one sign only keep the default on the other.
        for (atom, entry) in val.iter_mut() {
            let mentioned = |s: Sign| self.val.iter().any(|(a, sg, _)| a == atom && *sg == s);
            if !mentioned(Sign::Pos) {
                entry.pos = default_val.pos;
            }
            if !mentioned(Sign::Neg) {
                entry.neg = default_val.neg;
            }
        }
        KripkeModel::from_parts(self.worlds.clone(), up, access, val, default_val)
    }
}

/// A model with a distinguished world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedModel {
    pub model: KripkeModel,
    pub point: usize,
}

impl PointedModel {
    pub fn new(model: KripkeModel, point: &str) -> Result<PointedModel, StructuralError> {
        let point = model
            .world_index(point)
            .ok_or_else(|| StructuralError::UnknownWorld(point.into()))?;
        Ok(PointedModel { model, point })
    }

    pub fn point_name(&self) -> &str {
        self.model.world_name(self.point)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameClass {
    /// Propositional models.
    P,
    /// Fischer-Servi modal models.
    FSM,
    /// Fischer-Servi conditional models.
    FSC,
    /// Reflexive Fischer-Servi conditional models.
    FSCR,
}

impl FrameClass {
    pub const ALL: [FrameClass; 4] = [FrameClass::P, FrameClass::FSM, FrameClass::FSC, FrameClass::FSCR];

    pub fn kind(self) -> ModelKind {
        match self {
            FrameClass::P => ModelKind::Prop,
            FrameClass::FSM => ModelKind::Modal,
            FrameClass::FSC | FrameClass::FSCR => ModelKind::Cond,
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameClass::P => "P",
            FrameClass::FSM => "FSM",
            FrameClass::FSC => "FSC",
            FrameClass::FSCR => "FSC_R",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown frame class '{0}' (expected P, FSM, FSC or FSC_R)")]
pub struct UnknownFrameClass(pub String);

impl FromStr for FrameClass {
    type Err = UnknownFrameClass;

    fn from_str(s: &str) -> Result<FrameClass, UnknownFrameClass> {
        match s {
            "P" => Ok(FrameClass::P),
            "FSM" => Ok(FrameClass::FSM),
            "FSC" => Ok(FrameClass::FSC),
            "FSC_R" | "FSCR" => Ok(FrameClass::FSCR),
            _ => Err(UnknownFrameClass(s.into())),
        }
    }
}

/// A conditional index, by world names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexNames {
    pub pos: Vec<String>,
    pub neg: Vec<String>,
}

impl fmt::Display for IndexNames {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{{}}}, {{{}}})", self.pos.join(", "), self.neg.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    KindMismatch { class: FrameClass, found: ModelKind },
    NotReflexive { world: String },
    NotTransitive { a: String, b: String, c: String },
    /// `from` carries the atom on `sign` but its successor `to` does not.
    /// `atom` is `None` for the default valuation.
    NotHereditary { atom: Option<u32>, sign: Sign, from: String, to: String },
    /// `w ≤ w2` and `w R v`, but no `v2 ≥ v` with `w2 R v2`.
    C1 { index: Option<IndexNames>, w: String, w2: String, v: String },
    /// `w R v` and `v ≤ v2`, but no `w2 ≥ w` with `w2 R v2`.
    C2 { index: Option<IndexNames>, w: String, v: String, v2: String },
    /// `w R v` at index `(X, Y)` with `v ∉ X`.
    NotReflexiveIndex { index: IndexNames, w: String, v: String },
}

fn at_index(index: &Option<IndexNames>) -> String {
    match index {
        Some(i) => alloc::format!(" at index {i}"),
        None => String::new(),
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::KindMismatch { class, found } => {
                write!(f, "a {found} model cannot belong to class {class}")
            }
            Violation::NotReflexive { world } => write!(f, "order is not reflexive at {world}"),
            Violation::NotTransitive { a, b, c } => {
                write!(f, "order is not transitive: {a} <= {b} <= {c} but not {a} <= {c}")
            }
            Violation::NotHereditary { atom, sign, from, to } => {
                let atom = match atom {
                    Some(a) => alloc::format!("p{a}"),
                    None => String::from("*"),
                };
                write!(f, "val{sign} {atom} holds at {from} but not at {from} <= {to}")
            }
            Violation::C1 { index, w, w2, v } => write!(
                f,
                "(c1){}: {w} <= {w2} and {w} R {v}, but no v' >= {v} with {w2} R v'",
                at_index(index)
            ),
            Violation::C2 { index, w, v, v2 } => write!(
                f,
                "(c2){}: {w} R {v} and {v} <= {v2}, but no w' >= {w} with w' R {v2}",
                at_index(index)
            ),
            Violation::NotReflexiveIndex { index, w, v } => {
                write!(f, "{w} R {v} at index {index} but {v} is not in the first component")
            }
        }
    }
}

/// Outcome of [`validate_model`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn index_names(m: &KripkeModel, index: BiSet) -> IndexNames {
    let own = |s: WorldSet| m.names(s).into_iter().map(String::from).collect();
    IndexNames { pos: own(index.pos), neg: own(index.neg) }
}

fn check_fischer_servi(
    m: &KripkeModel,
    r: &[WorldSet],
    index: Option<BiSet>,
    out: &mut Vec<Violation>,
) {
    let name = |i: usize| m.world_name(i).to_string();
    let label = || index.map(|i| index_names(m, i));
    for w in 0..m.len() {
        for w2 in m.up(w).iter() {
            for v in r[w].iter() {
                if r[w2].intersection(m.up(v)).is_empty() {
                    out.push(Violation::C1 { index: label(), w: name(w), w2: name(w2), v: name(v) });
                }
            }
        }
    }
    for w in 0..m.len() {
        for v in r[w].iter() {
            for v2 in m.up(v).iter() {
                if !m.up(w).iter().any(|w2| r[w2].contains(v2)) {
                    out.push(Violation::C2 { index: label(), w: name(w), v: name(v), v2: name(v2) });
                }
            }
        }
    }
}

/// Checks `m` against every defining condition of `class`.
pub fn validate_model(m: &KripkeModel, class: FrameClass) -> ValidationReport {
    let mut out = Vec::new();
    if m.kind() != class.kind() {
        out.push(Violation::KindMismatch { class, found: m.kind() });
        return ValidationReport { violations: out };
    }
    let name = |i: usize| m.world_name(i).to_string();
    for w in 0..m.len() {
        if !m.leq(w, w) {
            out.push(Violation::NotReflexive { world: name(w) });
        }
    }
    for a in 0..m.len() {
        for b in m.up(a).iter() {
            for c in m.up(b).iter() {
                if !m.leq(a, c) {
                    out.push(Violation::NotTransitive { a: name(a), b: name(b), c: name(c) });
                }
            }
        }
    }
    let entries = m
        .valuation()
        .iter()
        .map(|(&a, &b)| (Some(a), b))
        .chain(core::iter::once((None, m.default_val())));
    for (atom, b) in entries {
        for sign in [Sign::Pos, Sign::Neg] {
            let s = b.get(sign);
            for w in s.iter() {
                if let Some(v) = m.up(w).difference(s).iter().next() {
                    out.push(Violation::NotHereditary { atom, sign, from: name(w), to: name(v) });
                }
            }
        }
    }
    match m.access() {
        Access::None => {}
        Access::Modal(r) => check_fischer_servi(m, r, None, &mut out),
        Access::Cond(map) => {
            for (&index, r) in map {
                check_fischer_servi(m, r, Some(index), &mut out);
                if class == FrameClass::FSCR {
                    for (w, targets) in r.iter().enumerate() {
                        for v in targets.difference(index.pos).iter() {
                            out.push(Violation::NotReflexiveIndex {
                                index: index_names(m, index),
                                w: name(w),
                                v: name(v),
                            });
                        }
                    }
                }
            }
        }
    }
    ValidationReport { violations: out }
}
