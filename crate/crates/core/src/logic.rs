use core::fmt;
use core::str::FromStr;

use crate::model::FrameClass;
use crate::syntax::LanguageTag;

/// The four logics, each determined by a frame class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Logic {
    C,
    CnK,
    CnCK,
    CnCKR,
}

impl Logic {
    pub const ALL: [Logic; 4] = [Logic::C, Logic::CnK, Logic::CnCK, Logic::CnCKR];

    pub fn frame_class(self) -> FrameClass {
        match self {
            Logic::C => FrameClass::P,
            Logic::CnK => FrameClass::FSM,
            Logic::CnCK => FrameClass::FSC,
            Logic::CnCKR => FrameClass::FSCR,
        }
    }

    pub fn language(self) -> LanguageTag {
        match self {
            Logic::C => LanguageTag::PL,
            Logic::CnK => LanguageTag::MD,
            Logic::CnCK | Logic::CnCKR => LanguageTag::CN,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Logic::C => "C",
            Logic::CnK => "CnK",
            Logic::CnCK => "CnCK",
            Logic::CnCKR => "CnCKR",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown logic '{0}' (expected C, CnK, CnCK or CnCKR)")]
pub struct UnknownLogic(pub alloc::string::String);

impl FromStr for Logic {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Logic, UnknownLogic> {
        match s {
            "C" => Ok(Logic::C),
            "CnK" => Ok(Logic::CnK),
            "CnCK" => Ok(Logic::CnCK),
            "CnCKR" | "CnCK_R" => Ok(Logic::CnCKR),
            _ => Err(UnknownLogic(s.into())),
        }
    }
}
