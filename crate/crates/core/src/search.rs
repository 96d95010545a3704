//! Bounded model enumeration and countermodel search.
//!
//! Models are enumerated in a fixed order: world count ascending, then
//! preorders by bitmask, then accessibility, then valuations. Each
//! `(world count, preorder)` pair forms a [`Shard`], which is the unit of
//! parallel work for callers that want it.
//!
//! For conditional classes only indices made of two ≤-up-closed sets are
//! used, and at most `max_cond_indices` of them carry a nonempty relation at
//! once. Running out of models is therefore weaker evidence for conditional
//! logics than for the others, and never a proof of validity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::eval::{biextension, check_consecution, Consecution, Sign};
use crate::logic::Logic;
use crate::model::{validate_model, Access, BiSet, FrameClass, KripkeModel, PointedModel};
use crate::syntax::LanguageTag;
use crate::worldset::WorldSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub min_worlds: usize,
    pub max_worlds: usize,
    /// Atoms given a valuation by [`enumerate_models`]. Countermodel search
    /// adds the atoms of the consecution.
    pub atoms: BTreeSet<u32>,
    /// Conditional classes only.
    pub max_cond_indices: usize,
    /// Honoured by the timed drivers in the `cnx` crate; ignored here.
    pub time_limit: Option<Duration>,
}

impl SearchBounds {
    pub fn new(max_worlds: usize) -> SearchBounds {
        SearchBounds {
            min_worlds: 1,
            max_worlds,
            atoms: BTreeSet::new(),
            max_cond_indices: 2,
            time_limit: None,
        }
    }

    pub fn exactly(worlds: usize) -> SearchBounds {
        SearchBounds { min_worlds: worlds, ..SearchBounds::new(worlds) }
    }

    pub fn with_atoms(mut self, atoms: impl IntoIterator<Item = u32>) -> SearchBounds {
        self.atoms = atoms.into_iter().collect();
        self
    }

    pub fn with_max_cond_indices(mut self, k: usize) -> SearchBounds {
        self.max_cond_indices = k;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> SearchBounds {
        self.time_limit = Some(limit);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PointedModel),
    ExhaustedBounds,
    TimedOut,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&PointedModel> {
        match self {
            SearchOutcome::Found(pm) => Some(pm),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("{logic} cannot express a {language} consecution")]
    LanguageMismatch { logic: Logic, language: LanguageTag },
    #[error("invalid bounds: {0}")]
    BadBounds(&'static str),
}

/// One preorder on a fixed number of worlds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shard {
    pub worlds: usize,
    /// `up[w] = {v | w ≤ v}`
    pub up: Vec<WorldSet>,
}

fn transitive(up: &[WorldSet]) -> bool {
    (0..up.len()).all(|a| up[a].iter().all(|b| up[b].is_subset(up[a])))
}

/// All preorders within the bounds, in enumeration order.
pub fn shards(bounds: &SearchBounds) -> Vec<Shard> {
    let mut out = Vec::new();
    for n in bounds.min_worlds.max(1)..=bounds.max_worlds {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        for mask in 0u64..1 << pairs.len() {
            let mut up: Vec<WorldSet> = (0..n).map(WorldSet::singleton).collect();
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    up[i].insert(j);
                }
            }
            if transitive(&up) {
                out.push(Shard { worlds: n, up });
            }
        }
    }
    out
}

fn up_closed_sets(up: &[WorldSet]) -> Vec<WorldSet> {
    (0u64..1 << up.len())
        .map(WorldSet)
        .filter(|s| s.iter().all(|w| up[w].is_subset(*s)))
        .collect()
}

/// Conditions (c1) and (c2) for one relation.
fn fischer_servi(up: &[WorldSet], r: &[WorldSet]) -> bool {
    let n = up.len();
    let c1 = (0..n).all(|w| {
        up[w].iter().all(|w2| r[w].iter().all(|v| !r[w2].intersection(up[v]).is_empty()))
    });
    let c2 = (0..n).all(|w| {
        r[w].iter().all(|v| up[v].iter().all(|v2| up[w].iter().any(|w2| r[w2].contains(v2))))
    });
    c1 && c2
}

fn relations(up: &[WorldSet]) -> Vec<Vec<WorldSet>> {
    let n = up.len();
    (0u64..1 << (n * n))
        .map(|mask| (0..n).map(|i| WorldSet(mask >> (i * n) & ((1 << n) - 1))).collect::<Vec<_>>())
        .filter(|r| fischer_servi(up, r))
        .collect()
}

/// Odometer over the conditional access configurations of one shard.
struct CondConfigs {
    cands: Vec<(BiSet, Vec<Vec<WorldSet>>)>,
    max: usize,
    combo: Vec<usize>,
    choice: Vec<usize>,
    done: bool,
}

impl CondConfigs {
    fn current(&self) -> Access {
        let mut map = BTreeMap::new();
        for (&c, &k) in self.combo.iter().zip(&self.choice) {
            let (index, rels) = &self.cands[c];
            map.insert(*index, rels[k].clone());
        }
        Access::Cond(map)
    }

    fn advance(&mut self) {
        for pos in (0..self.combo.len()).rev() {
            self.choice[pos] += 1;
            if self.choice[pos] < self.cands[self.combo[pos]].1.len() {
                return;
            }
            self.choice[pos] = 0;
        }
        let size = self.combo.len();
        let m = self.cands.len();
        // Next size-subset in lexicographic order.
        let mut pos = size;
        while pos > 0 {
            pos -= 1;
            if self.combo[pos] < m - (size - pos) {
                self.combo[pos] += 1;
                for q in pos + 1..size {
                    self.combo[q] = self.combo[q - 1] + 1;
                }
                return;
            }
        }
        let size = size + 1;
        if size > self.max || size > m {
            self.done = true;
        } else {
            self.combo = (0..size).collect();
            self.choice = vec![0; size];
        }
    }
}

enum Configs {
    List(Vec<Access>, usize),
    Cond(CondConfigs),
}

impl Iterator for Configs {
    type Item = Access;

    fn next(&mut self) -> Option<Access> {
        match self {
            Configs::List(items, i) => {
                let out = items.get(*i).cloned();
                *i += 1;
                out
            }
            Configs::Cond(c) => {
                if c.done {
                    return None;
                }
                let out = c.current();
                c.advance();
                Some(out)
            }
        }
    }
}

fn configs(shard: &Shard, class: FrameClass, max_indices: usize) -> Configs {
    match class {
        FrameClass::P => Configs::List(vec![Access::None], 0),
        FrameClass::FSM => {
            Configs::List(relations(&shard.up).into_iter().map(Access::Modal).collect(), 0)
        }
        FrameClass::FSC | FrameClass::FSCR => {
            let rels: Vec<Vec<WorldSet>> = relations(&shard.up)
                .into_iter()
                .filter(|r| r.iter().any(|s| !s.is_empty()))
                .collect();
            let closed = up_closed_sets(&shard.up);
            let mut cands = Vec::new();
            for &x in &closed {
                for &y in &closed {
                    let fit: Vec<Vec<WorldSet>> = rels
                        .iter()
                        .filter(|r| class == FrameClass::FSC || r.iter().all(|s| s.is_subset(x)))
                        .cloned()
                        .collect();
                    if !fit.is_empty() {
                        cands.push((BiSet::new(x, y), fit));
                    }
                }
            }
            Configs::Cond(CondConfigs {
                cands,
                max: max_indices,
                combo: Vec::new(),
                choice: Vec::new(),
                done: false,
            })
        }
    }
}

/// Models of one shard, in enumeration order.
pub struct ShardModels {
    names: Vec<String>,
    up: Vec<WorldSet>,
    atoms: Vec<u32>,
    closed: Vec<WorldSet>,
    configs: Configs,
    access: Option<Access>,
    counter: Vec<usize>,
}

impl ShardModels {
    pub fn new(shard: &Shard, class: FrameClass, bounds: &SearchBounds) -> ShardModels {
        let mut configs = configs(shard, class, bounds.max_cond_indices);
        let access = configs.next();
        let atoms: Vec<u32> = bounds.atoms.iter().copied().collect();
        ShardModels {
            names: (0..shard.worlds).map(|i| alloc::format!("w{i}")).collect(),
            up: shard.up.clone(),
            counter: vec![0; 2 * atoms.len()],
            atoms,
            closed: up_closed_sets(&shard.up),
            configs,
            access,
        }
    }
}

impl Iterator for ShardModels {
    type Item = KripkeModel;

    fn next(&mut self) -> Option<KripkeModel> {
        let access = self.access.clone()?;
        let val: BTreeMap<u32, BiSet> = self
            .atoms
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                let pos = self.closed[self.counter[2 * k]];
                let neg = self.closed[self.counter[2 * k + 1]];
                (a, BiSet::new(pos, neg))
            })
            .collect();
        let model = KripkeModel::from_parts(
            self.names.clone(),
            self.up.clone(),
            access,
            val,
            BiSet::default(),
        )
        .expect("enumerated models are well formed");
        let mut carry = true;
        for slot in self.counter.iter_mut().rev() {
            *slot += 1;
            if *slot < self.closed.len() {
                carry = false;
                break;
            }
            *slot = 0;
        }
        if carry {
            self.access = self.configs.next();
        }
        Some(model)
    }
}

/// Every model of `class` within the bounds, without duplicates.
pub fn enumerate_models(class: FrameClass, bounds: &SearchBounds) -> impl Iterator<Item = KripkeModel> {
    let bounds = bounds.clone();
    shards(&bounds).into_iter().flat_map(move |s| ShardModels::new(&s, class, &bounds))
}

/// Result of searching a single shard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShardOutcome {
    Found(PointedModel),
    Exhausted,
    Stopped,
}

fn effective_bounds(logic: Logic, c: &Consecution, bounds: &SearchBounds) -> Result<SearchBounds, SearchError> {
    let language = c.language();
    if !language.within(logic.language()) {
        return Err(SearchError::LanguageMismatch { logic, language });
    }
    if bounds.max_worlds == 0 {
        return Err(SearchError::BadBounds("max_worlds must be at least 1"));
    }
    if bounds.max_worlds > 6 {
        return Err(SearchError::BadBounds("max_worlds above 6 is out of reach"));
    }
    let mut b = bounds.clone();
    b.atoms.extend(c.atoms());
    Ok(b)
}

/// The bounds a countermodel search for `c` actually enumerates.
pub fn search_bounds_for(logic: Logic, c: &Consecution, bounds: &SearchBounds) -> Result<SearchBounds, SearchError> {
    effective_bounds(logic, c, bounds)
}

/// First world of `m` where Γ holds and Δ fails, if any.
pub fn refuting_world(m: &KripkeModel, c: &Consecution) -> Option<usize> {
    let mut candidates = m.all();
    for f in &c.gamma {
        candidates = candidates.intersection(biextension(m, f).ok()?.pos);
    }
    for f in &c.delta {
        candidates = candidates.difference(biextension(m, f).ok()?.pos);
    }
    candidates.iter().next()
}

fn assert_sound(logic: Logic, c: &Consecution, pm: &PointedModel) {
    let report = validate_model(&pm.model, logic.frame_class());
    assert!(report.is_ok(), "search produced an invalid model: {:?}", report.violations);
    assert_eq!(check_consecution(pm, c, Sign::Pos), Ok(true), "search hit does not refute");
}

/// Searches one shard; `stop` is polled periodically. The bounds must come
/// from [`search_bounds_for`].
pub fn search_shard(
    logic: Logic,
    c: &Consecution,
    shard: &Shard,
    bounds: &SearchBounds,
    stop: &mut dyn FnMut() -> bool,
) -> ShardOutcome {
    for (k, m) in ShardModels::new(shard, logic.frame_class(), bounds).enumerate() {
        if k % 256 == 0 && stop() {
            return ShardOutcome::Stopped;
        }
        if let Some(point) = refuting_world(&m, c) {
            let pm = PointedModel { model: m, point };
            assert_sound(logic, c, &pm);
            return ShardOutcome::Found(pm);
        }
    }
    ShardOutcome::Exhausted
}

/// Sequential search that gives up as soon as `stop` returns true.
pub fn find_countermodel_with(
    logic: Logic,
    c: &Consecution,
    bounds: &SearchBounds,
    stop: &mut dyn FnMut() -> bool,
) -> Result<SearchOutcome, SearchError> {
    let b = effective_bounds(logic, c, bounds)?;
    for shard in shards(&b) {
        match search_shard(logic, c, &shard, &b, stop) {
            ShardOutcome::Found(pm) => return Ok(SearchOutcome::Found(pm)),
            ShardOutcome::Stopped => return Ok(SearchOutcome::TimedOut),
            ShardOutcome::Exhausted => {}
        }
    }
    Ok(SearchOutcome::ExhaustedBounds)
}

/// Looks for a pointed model of the logic's class satisfying Γ and refuting
/// every member of Δ. Runs to completion; see the `cnx` crate for timeouts.
pub fn find_countermodel(logic: Logic, c: &Consecution, bounds: &SearchBounds) -> Result<SearchOutcome, SearchError> {
    find_countermodel_with(logic, c, bounds, &mut || false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn count(class: FrameClass, bounds: SearchBounds) -> usize {
        enumerate_models(class, &bounds).count()
    }

    #[test]
    fn small_model_counts() {
        assert_eq!(count(FrameClass::P, SearchBounds::new(1).with_atoms([0])), 4);
        assert_eq!(count(FrameClass::P, SearchBounds::exactly(2)), 4);
        assert_eq!(count(FrameClass::FSM, SearchBounds::new(1)), 2);
        // 2 indices on a single world: 1 + 4 + 6 configurations.
        assert_eq!(count(FrameClass::FSC, SearchBounds::new(1)), 11);
        // FSC_R keeps only indices whose first component contains w.
        assert_eq!(count(FrameClass::FSCR, SearchBounds::new(1)), 4);
    }

    #[test]
    fn labeled_preorders_on_three_points() {
        assert_eq!(shards(&SearchBounds::exactly(3)).len(), 29);
    }

    #[test]
    fn enumerated_models_validate() {
        for class in FrameClass::ALL {
            let bounds = SearchBounds::new(2).with_atoms([0]).with_max_cond_indices(1);
            for m in enumerate_models(class, &bounds) {
                assert!(validate_model(&m, class).is_ok());
            }
        }
    }

    #[test]
    fn excluded_middle_fails_on_one_world() {
        let c = Consecution::theorem(parse("p0 | ~p0").unwrap());
        let out = find_countermodel(Logic::C, &c, &SearchBounds::new(1)).unwrap();
        let pm = out.found().unwrap();
        assert_eq!(pm.model.len(), 1);
        assert_eq!(pm.model.val(0), BiSet::default());
    }

    #[test]
    fn search_is_reproducible() {
        let c = Consecution::theorem(parse("(p0 -> p1) -> (p1 -> p0)").unwrap());
        let a = find_countermodel(Logic::C, &c, &SearchBounds::new(2)).unwrap();
        let b = find_countermodel(Logic::C, &c, &SearchBounds::new(2)).unwrap();
        assert!(a.found().is_some());
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_wrong_language() {
        let c = Consecution::theorem(parse("[]p0").unwrap());
        assert!(matches!(
            find_countermodel(Logic::CnCK, &c, &SearchBounds::new(1)),
            Err(SearchError::LanguageMismatch { .. })
        ));
    }

    #[test]
    fn exhausts_on_a_theorem() {
        let c = Consecution::theorem(parse("p0 -> p0").unwrap());
        let out = find_countermodel(Logic::C, &c, &SearchBounds::new(2)).unwrap();
        assert_eq!(out, SearchOutcome::ExhaustedBounds);
    }

    #[test]
    fn stop_probe_interrupts() {
        let c = Consecution::theorem(parse("p0 -> p0").unwrap());
        let out = find_countermodel_with(Logic::C, &c, &SearchBounds::new(2), &mut || true).unwrap();
        assert_eq!(out, SearchOutcome::TimedOut);
    }
}
