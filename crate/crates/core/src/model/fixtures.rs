//! The named models used as counterexamples and witnesses.
//!
//! Atom `p` is `p0`, `q` is `p1`. Every fixture is pointed at world `w`.

use super::{FrameClass, KripkeModel, ModelBuilder, ModelKind, PointedModel, Sign};

pub const FIXTURE_NAMES: [&str; 11] =
    ["M0", "M0m", "M0c", "M0c1", "M1", "M1m", "M1c", "M2", "triv", "trivm", "trivc"];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown fixture '{0}'")]
pub struct UnknownFixture(pub alloc::string::String);

const P: u32 = 0;
const Q: u32 = 1;

fn m0(kind: ModelKind) -> ModelBuilder {
    let mut b = ModelBuilder::new(kind);
    b.world("w")
        .val(P, Sign::Pos, &["w"])
        .val(Q, Sign::Pos, &["w"])
        .val(Q, Sign::Neg, &["w"]);
    b
}

fn m1(kind: ModelKind) -> ModelBuilder {
    let mut b = ModelBuilder::new(kind);
    b.world("w")
        .world("v")
        .leq("w", "v")
        .val(P, Sign::Pos, &["w", "v"])
        .val(P, Sign::Neg, &["v"])
        .val(Q, Sign::Pos, &["v"]);
    b
}

fn triv(kind: ModelKind) -> ModelBuilder {
    let mut b = ModelBuilder::new(kind);
    b.world("w").default_val(Sign::Pos, &["w"]).default_val(Sign::Neg, &["w"]);
    b
}

/// The frame class each fixture is built for.
pub fn fixture_class(name: &str) -> Option<FrameClass> {
    Some(match name {
        "M0" | "M1" | "triv" => FrameClass::P,
        "M0m" | "M1m" | "trivm" => FrameClass::FSM,
        "M0c1" | "M2" => FrameClass::FSC,
        "M0c" | "M1c" | "trivc" => FrameClass::FSCR,
        _ => return None,
    })
}

fn builder(name: &str) -> Option<ModelBuilder> {
    let b = match name {
        "M0" => m0(ModelKind::Prop),
        "M0m" => {
            let mut b = m0(ModelKind::Modal);
            b.access("w", "w");
            b
        }
        "M0c" => {
            let mut b = m0(ModelKind::Cond);
            b.cond_access("w", &["w"], &[], "w").cond_access("w", &["w"], &["w"], "w");
            b
        }
        "M0c1" => {
            let mut b = m0(ModelKind::Cond);
            b.cond_access("w", &["w"], &[], "w").cond_access("w", &[], &["w"], "w");
            b
        }
        "M1" => m1(ModelKind::Prop),
        "M1m" => {
            let mut b = m1(ModelKind::Modal);
            b.access("w", "w").access("v", "v");
            b
        }
        "M1c" => {
            let mut b = m1(ModelKind::Cond);
            let all = ["w", "v"];
            b.cond_access("w", &all, &all, "w").cond_access("v", &all, &all, "v");
            b
        }
        "M2" => {
            let mut b = ModelBuilder::new(ModelKind::Cond);
            b.world("w").cond_access("w", &[], &[], "w");
            b
        }
        "triv" => triv(ModelKind::Prop),
        "trivm" => {
            let mut b = triv(ModelKind::Modal);
            b.access("w", "w");
            b
        }
        "trivc" => {
            let mut b = triv(ModelKind::Cond);
            b.cond_access("w", &["w"], &["w"], "w");
            b
        }
        _ => return None,
    };
    Some(b)
}

pub fn get_fixture(name: &str) -> Result<PointedModel, UnknownFixture> {
    let b = builder(name).ok_or_else(|| UnknownFixture(name.into()))?;
    let model: KripkeModel = b.build().expect("fixtures are well formed");
    Ok(PointedModel::new(model, "w").expect("fixtures contain w"))
}
