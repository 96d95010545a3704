//! The line-oriented model file format.
//!
//! ```text
//! kind cond
//! world w v
//! leq w v
//! r w / w v ; v / v
//! val+ p0 w v
//! val- p0 v
//! val+ * w
//! point w
//! ```
//!
//! `r` lines take `source target` in modal files and
//! `source / X-members ; Y-members / target` in conditional ones. A `*` in
//! place of an atom sets the valuation of every atom not listed. Reflexive
//! `leq` pairs are implied; transitivity is not and is left to validation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cnx_core::model::{Access, StructuralError};
use cnx_core::{BiSet, KripkeModel, ModelKind, PointedModel, WorldSet};

#[derive(Debug, thiserror::Error)]
pub enum ModelFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing 'kind' line")]
    MissingKind,
    #[error("model has no 'point' line")]
    MissingPoint,
    #[error(transparent)]
    Structural(#[from] StructuralError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ModelFileError {
    ModelFileError::Syntax { line, msg: msg.into() }
}

/// Drops a trailing comment. A `#` starts a comment at the beginning of a
/// line or after whitespace when followed by whitespace or the line end.
pub(crate) fn strip_comment(line: &str) -> &str {
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b != b'#' {
            continue;
        }
        let before = i == 0 || bytes[i - 1].is_ascii_whitespace();
        let after = bytes.get(i + 1).is_none_or(|c| c.is_ascii_whitespace());
        if before && (after || line[..i].trim().is_empty()) {
            return &line[..i];
        }
    }
    line
}

fn parse_kind(s: &str) -> Option<ModelKind> {
    match s {
        "prop" => Some(ModelKind::Prop),
        "modal" => Some(ModelKind::Modal),
        "cond" => Some(ModelKind::Cond),
        _ => None,
    }
}

fn kind_name(k: ModelKind) -> &'static str {
    match k {
        ModelKind::Prop => "prop",
        ModelKind::Modal => "modal",
        ModelKind::Cond => "cond",
    }
}

fn parse_atom(s: &str) -> Option<u32> {
    let digits = s.strip_prefix('p')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

enum Edge<'a> {
    Modal(&'a str, &'a str),
    Cond { source: &'a str, pos: Vec<&'a str>, neg: Vec<&'a str>, target: &'a str },
}

struct Raw<'a> {
    kind: Option<ModelKind>,
    worlds: Vec<&'a str>,
    leq: Vec<(usize, &'a str, &'a str)>,
    edges: Vec<(usize, Edge<'a>)>,
    vals: Vec<(usize, Option<u32>, bool, Vec<&'a str>)>,
    point: Option<(usize, &'a str)>,
}

fn parse_cond_edge<'a>(line: usize, rest: &[&'a str]) -> Result<Edge<'a>, ModelFileError> {
    let bad = || syntax(line, "expected 'r SOURCE / X... ; Y... / TARGET'");
    let mut parts = rest.split(|t| *t == "/");
    let (Some([source]), Some(middle), Some([target]), None) =
        (parts.next(), parts.next(), parts.next(), parts.next())
    else {
        return Err(bad());
    };
    let mut sides = middle.split(|t| *t == ";");
    let (Some(pos), Some(neg), None) = (sides.next(), sides.next(), sides.next()) else {
        return Err(bad());
    };
    Ok(Edge::Cond { source, pos: pos.to_vec(), neg: neg.to_vec(), target })
}

fn scan(text: &str) -> Result<Raw<'_>, ModelFileError> {
    let mut raw = Raw { kind: None, worlds: Vec::new(), leq: Vec::new(), edges: Vec::new(), vals: Vec::new(), point: None };
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let tokens: Vec<&str> = strip_comment(line).split_whitespace().collect();
        let Some((&head, rest)) = tokens.split_first() else { continue };
        match head {
            "kind" => {
                let [k] = rest else { return Err(syntax(n, "expected 'kind prop|modal|cond'")) };
                if raw.kind.is_some() {
                    return Err(syntax(n, "duplicate 'kind' line"));
                }
                raw.kind = Some(parse_kind(k).ok_or_else(|| syntax(n, format!("unknown kind '{k}'")))?);
            }
            "world" => {
                if rest.is_empty() {
                    return Err(syntax(n, "expected at least one world name"));
                }
                raw.worlds.extend_from_slice(rest);
            }
            "leq" => {
                let [a, b] = rest else { return Err(syntax(n, "expected 'leq W V'")) };
                raw.leq.push((n, a, b));
            }
            "r" => {
                let edge = match rest {
                    [a, b] => Edge::Modal(a, b),
                    _ => parse_cond_edge(n, rest)?,
                };
                raw.edges.push((n, edge));
            }
            "val+" | "val-" => {
                let Some((&atom, worlds)) = rest.split_first() else {
                    return Err(syntax(n, "expected an atom"));
                };
                let atom = if atom == "*" {
                    None
                } else {
                    Some(parse_atom(atom).ok_or_else(|| syntax(n, format!("bad atom '{atom}'")))?)
                };
                raw.vals.push((n, atom, head == "val+", worlds.to_vec()));
            }
            "point" => {
                let [w] = rest else { return Err(syntax(n, "expected 'point W'")) };
                raw.point = Some((n, w));
            }
            other => return Err(syntax(n, format!("unknown directive '{other}'"))),
        }
    }
    Ok(raw)
}

fn build(raw: &Raw<'_>) -> Result<KripkeModel, ModelFileError> {
    let kind = raw.kind.ok_or(ModelFileError::MissingKind)?;
    let worlds: Vec<String> = raw.worlds.iter().map(|w| w.to_string()).collect();
    let n = worlds.len();
    let index = |line: usize, w: &str| {
        raw.worlds
            .iter()
            .position(|x| *x == w)
            .ok_or_else(|| syntax(line, format!("unknown world '{w}'")))
    };
    let set = |line: usize, ws: &[&str]| -> Result<WorldSet, ModelFileError> {
        ws.iter().try_fold(WorldSet::EMPTY, |acc, w| Ok(acc.with(index(line, w)?)))
    };

    let mut up: Vec<WorldSet> = (0..n).map(WorldSet::singleton).collect();
    for &(line, a, b) in &raw.leq {
        let (a, b) = (index(line, a)?, index(line, b)?);
        up[a].insert(b);
    }

    let access = match kind {
        ModelKind::Prop => {
            if let Some((line, _)) = raw.edges.first() {
                return Err(syntax(*line, "'r' lines need kind modal or cond"));
            }
            Access::None
        }
        ModelKind::Modal => {
            let mut r = vec![WorldSet::EMPTY; n];
            for (line, edge) in &raw.edges {
                let Edge::Modal(a, b) = edge else {
                    return Err(syntax(*line, "modal 'r' lines take two worlds"));
                };
                r[index(*line, a)?].insert(index(*line, b)?);
            }
            Access::Modal(r)
        }
        ModelKind::Cond => {
            let mut map: BTreeMap<BiSet, Vec<WorldSet>> = BTreeMap::new();
            for (line, edge) in &raw.edges {
                let Edge::Cond { source, pos, neg, target } = edge else {
                    return Err(syntax(*line, "conditional 'r' lines need an index"));
                };
                let key = BiSet::new(set(*line, pos)?, set(*line, neg)?);
                let row = map.entry(key).or_insert_with(|| vec![WorldSet::EMPTY; n]);
                row[index(*line, source)?].insert(index(*line, target)?);
            }
            Access::Cond(map)
        }
    };

    let mut val: BTreeMap<u32, BiSet> = BTreeMap::new();
    let mut default_val = BiSet::default();
    for (line, atom, positive, ws) in &raw.vals {
        let s = set(*line, ws)?;
        let target = match atom {
            Some(a) => val.entry(*a).or_default(),
            None => &mut default_val,
        };
        if *positive {
            target.pos = target.pos.union(s);
        } else {
            target.neg = target.neg.union(s);
        }
    }
    Ok(KripkeModel::from_parts(worlds, up, access, val, default_val)?)
}

/// Parses a model; a `point` line, if present, is ignored.
pub fn parse_model(text: &str) -> Result<KripkeModel, ModelFileError> {
    build(&scan(text)?)
}

/// Parses a model that must carry a `point` line.
pub fn parse_pointed(text: &str) -> Result<PointedModel, ModelFileError> {
    let raw = scan(text)?;
    let model = build(&raw)?;
    let (line, name) = raw.point.ok_or(ModelFileError::MissingPoint)?;
    let point = model.world_index(name).ok_or_else(|| syntax(line, format!("unknown world '{name}'")))?;
    Ok(PointedModel { model, point })
}

/// Parses a model and its point if it has one.
pub fn parse_maybe_pointed(text: &str) -> Result<(KripkeModel, Option<usize>), ModelFileError> {
    let raw = scan(text)?;
    let model = build(&raw)?;
    let point = match raw.point {
        Some((line, name)) => {
            Some(model.world_index(name).ok_or_else(|| syntax(line, format!("unknown world '{name}'")))?)
        }
        None => None,
    };
    Ok((model, point))
}

fn names(m: &KripkeModel, s: WorldSet) -> String {
    m.names(s).join(" ")
}

fn push_side(out: &mut String, m: &KripkeModel, s: WorldSet) {
    for name in m.names(s) {
        out.push(' ');
        out.push_str(name);
    }
}

/// Canonical text of a model: directives in a fixed order, pairs sorted by
/// world position.
pub fn write_model(m: &KripkeModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind {}", kind_name(m.kind()));
    let _ = writeln!(out, "world {}", m.worlds().join(" "));
    for w in 0..m.len() {
        for v in m.up(w).iter().filter(|&v| v != w) {
            let _ = writeln!(out, "leq {} {}", m.world_name(w), m.world_name(v));
        }
    }
    match m.access() {
        Access::None => {}
        Access::Modal(r) => {
            for (w, row) in r.iter().enumerate() {
                for v in row.iter() {
                    let _ = writeln!(out, "r {} {}", m.world_name(w), m.world_name(v));
                }
            }
        }
        Access::Cond(map) => {
            for (index, rows) in map {
                for (w, row) in rows.iter().enumerate() {
                    for v in row.iter() {
                        let _ = write!(out, "r {} /", m.world_name(w));
                        push_side(&mut out, m, index.pos);
                        out.push_str(" ;");
                        push_side(&mut out, m, index.neg);
                        let _ = writeln!(out, " / {}", m.world_name(v));
                    }
                }
            }
        }
    }
    let mut write_val = |atom: &str, b: BiSet| {
        if !b.pos.is_empty() {
            let _ = writeln!(out, "val+ {atom} {}", names(m, b.pos));
        }
        if !b.neg.is_empty() {
            let _ = writeln!(out, "val- {atom} {}", names(m, b.neg));
        }
    };
    for (atom, b) in m.valuation() {
        write_val(&format!("p{atom}"), *b);
    }
    write_val("*", m.default_val());
    out
}

pub fn write_pointed(pm: &PointedModel) -> String {
    let mut out = write_model(&pm.model);
    let _ = writeln!(out, "point {}", pm.point_name());
    out
}
