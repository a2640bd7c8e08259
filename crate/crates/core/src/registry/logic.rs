use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::schema::{AxiomSchema, Decoration, SchemaTag};
use super::RegistryError;

/// Every modal system the registry can decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LogicId {
    IK4,
    IGL,
    GL,
    GLCa,
    GLS,
    GLSCa,
    IGLCT,
    IHsigma,
    IHsigmaStarStar,
    IHsigmaP,
    IHsigmaSP,
    IHsigmaSPStar,
    IHsigmaPStar,
    IHsigmaStar,
    IGLPbarCa,
    IGLPbar,
    IGLCbarTPCa,
    IGLCbarTbarCa,
    IGLCbarTSstarPCa,
    IGLCbarTP,
    IGLCbarTbar,
    IGLCbarTSstarP,
    /// Waypoint: `iGL` plus both forms of the completeness principle.
    IGLC,
    /// Waypoint: `iGLC̄P̲Ca`.
    IGLCbarPCa,
    /// Waypoint: `iGLC̄S̲P̲Ca`.
    IGLCbarSPCa,
}

impl LogicId {
    pub const ALL: [LogicId; 25] = [
        LogicId::IK4,
        LogicId::IGL,
        LogicId::GL,
        LogicId::GLCa,
        LogicId::GLS,
        LogicId::GLSCa,
        LogicId::IGLCT,
        LogicId::IHsigma,
        LogicId::IHsigmaStarStar,
        LogicId::IHsigmaP,
        LogicId::IHsigmaSP,
        LogicId::IHsigmaSPStar,
        LogicId::IHsigmaPStar,
        LogicId::IHsigmaStar,
        LogicId::IGLPbarCa,
        LogicId::IGLPbar,
        LogicId::IGLCbarTPCa,
        LogicId::IGLCbarTbarCa,
        LogicId::IGLCbarTSstarPCa,
        LogicId::IGLCbarTP,
        LogicId::IGLCbarTbar,
        LogicId::IGLCbarTSstarP,
        LogicId::IGLC,
        LogicId::IGLCbarPCa,
        LogicId::IGLCbarSPCa,
    ];

    /// The ASCII name accepted on the command line.
    pub fn name(self) -> &'static str {
        match self {
            LogicId::IK4 => "iK4",
            LogicId::IGL => "iGL",
            LogicId::GL => "GL",
            LogicId::GLCa => "GLCa",
            LogicId::GLS => "GLS",
            LogicId::GLSCa => "GLSCa",
            LogicId::IGLCT => "iGLCT",
            LogicId::IHsigma => "iHsigma",
            LogicId::IHsigmaStarStar => "iHsigmaStarStar",
            LogicId::IHsigmaP => "iHsigmaP",
            LogicId::IHsigmaSP => "iHsigmaSP",
            LogicId::IHsigmaSPStar => "iHsigmaSPStar",
            LogicId::IHsigmaPStar => "iHsigmaPStar",
            LogicId::IHsigmaStar => "iHsigmaStar",
            LogicId::IGLPbarCa => "iGLPbarCa",
            LogicId::IGLPbar => "iGLPbar",
            LogicId::IGLCbarTPCa => "iGLCbarTP_Ca",
            LogicId::IGLCbarTbarCa => "iGLCbarTbarCa",
            LogicId::IGLCbarTSstarPCa => "iGLCbarTSstarP_Ca",
            LogicId::IGLCbarTP => "iGLCbarTP",
            LogicId::IGLCbarTbar => "iGLCbarTbar",
            LogicId::IGLCbarTSstarP => "iGLCbarTSstarP",
            LogicId::IGLC => "iGLC",
            LogicId::IGLCbarPCa => "iGLCbarP_Ca",
            LogicId::IGLCbarSPCa => "iGLCbarSP_Ca",
        }
    }

    /// The defining axiom schemas on top of modus ponens, or `None` for
    /// systems defined as the preimage of another under a translation.
    pub fn axioms(self) -> Option<Vec<AxiomSchema>> {
        use Decoration::{Both, Over, Under};
        use SchemaTag::*;
        let base = [(I, Both), (K, Both), (Four, Both)];
        let with = |extra: &[(SchemaTag, Decoration)]| {
            Some(base.iter().chain(extra).map(|&(tag, decoration)| AxiomSchema { tag, decoration }).collect())
        };
        match self {
            LogicId::IK4 => with(&[]),
            LogicId::IGL => with(&[(Lob, Both)]),
            LogicId::GL => with(&[(Lob, Both), (Pem, Both)]),
            LogicId::GLCa => with(&[(Lob, Both), (Pem, Both), (CPa, Both)]),
            LogicId::GLS => with(&[(Lob, Both), (Pem, Both), (S, Under)]),
            LogicId::GLSCa => with(&[(Lob, Both), (Pem, Both), (CPa, Both), (S, Under)]),
            LogicId::IGLC => with(&[(Lob, Both), (CP, Both)]),
            LogicId::IGLCT => with(&[(Lob, Both), (CP, Both), (TP, Both)]),
            LogicId::IHsigma => with(&[(Lob, Both), (V, Both), (LePlus, Both)]),
            LogicId::IHsigmaP => with(&[(Lob, Both), (V, Both), (LePlus, Both), (Pem, Under)]),
            LogicId::IHsigmaSP => with(&[(Lob, Both), (V, Both), (LePlus, Both), (S, Under), (Pem, Under)]),
            LogicId::IGLPbar => with(&[(Lob, Both), (Pem, Over)]),
            LogicId::IGLPbarCa => with(&[(Lob, Both), (Pem, Over), (CPa, Both)]),
            LogicId::IGLCbarTP => with(&[(Lob, Both), (CP, Over), (TP, Both), (Pem, Under)]),
            LogicId::IGLCbarTPCa => with(&[(Lob, Both), (CP, Over), (TP, Both), (Pem, Under), (CPa, Both)]),
            LogicId::IGLCbarTbar => with(&[(Lob, Both), (CP, Over), (TP, Over)]),
            LogicId::IGLCbarTbarCa => with(&[(Lob, Both), (CP, Over), (TP, Over), (CPa, Both)]),
            LogicId::IGLCbarTSstarP => with(&[(Lob, Both), (CP, Over), (TP, Both), (Sstar, Under), (Pem, Under)]),
            LogicId::IGLCbarTSstarPCa => {
                with(&[(Lob, Both), (CP, Over), (TP, Both), (Sstar, Under), (Pem, Under), (CPa, Both)])
            }
            LogicId::IGLCbarPCa => with(&[(Lob, Both), (CP, Over), (Pem, Under), (CPa, Both)]),
            LogicId::IGLCbarSPCa => with(&[(Lob, Both), (CP, Over), (S, Under), (Pem, Under), (CPa, Both)]),
            LogicId::IHsigmaStarStar | LogicId::IHsigmaStar | LogicId::IHsigmaPStar | LogicId::IHsigmaSPStar => None,
        }
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LogicId {
    type Err = RegistryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LogicId::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| RegistryError::UnknownLogic(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theory {
    HA,
    HAstar,
    PA,
    PAstar,
}

impl Theory {
    fn name(self) -> &'static str {
        match self {
            Theory::HA => "HA",
            Theory::HAstar => "HA*",
            Theory::PA => "PA",
            Theory::PAstar => "PA*",
        }
    }
}

/// Where provability is evaluated. `SelfRelative` is the theory itself,
/// used for the starred theories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Metatheory {
    HA,
    PA,
    N,
    SelfRelative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubstitutionClass {
    Sigma1,
    All,
}

/// A relative provability logic: the theory whose provability predicate
/// interprets the box, where truth is evaluated, and which substitutions
/// are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProvLogicId {
    pub theory: Theory,
    pub metatheory: Metatheory,
    pub substitution_class: SubstitutionClass,
}

impl ProvLogicId {
    pub const fn new(theory: Theory, metatheory: Metatheory, substitution_class: SubstitutionClass) -> Self {
        ProvLogicId { theory, metatheory, substitution_class }
    }

    /// The axiomatized system characterizing this logic, when known.
    pub fn logic(self) -> Result<LogicId, RegistryError> {
        use Metatheory as M;
        use SubstitutionClass::{All, Sigma1};
        use Theory as T;
        let id = match (self.theory, self.metatheory, self.substitution_class) {
            (T::PA, M::PA, All) => LogicId::GL,
            (T::PA, M::PA, Sigma1) => LogicId::GLCa,
            (T::PA, M::N, All) => LogicId::GLS,
            (T::PA, M::N, Sigma1) => LogicId::GLSCa,
            (T::PA, M::HA, All) => LogicId::IGLPbar,
            (T::PA, M::HA, Sigma1) => LogicId::IGLPbarCa,
            (T::PAstar, M::SelfRelative, _) => LogicId::IGLCT,
            (T::PAstar, M::PA, All) => LogicId::IGLCbarTP,
            (T::PAstar, M::PA, Sigma1) => LogicId::IGLCbarTPCa,
            (T::PAstar, M::HA, All) => LogicId::IGLCbarTbar,
            (T::PAstar, M::HA, Sigma1) => LogicId::IGLCbarTbarCa,
            (T::PAstar, M::N, All) => LogicId::IGLCbarTSstarP,
            (T::PAstar, M::N, Sigma1) => LogicId::IGLCbarTSstarPCa,
            (T::HA, M::HA, Sigma1) => LogicId::IHsigma,
            (T::HA, M::PA, Sigma1) => LogicId::IHsigmaP,
            (T::HA, M::N, Sigma1) => LogicId::IHsigmaSP,
            (T::HAstar, M::SelfRelative, Sigma1) => LogicId::IHsigmaStarStar,
            (T::HAstar, M::HA, Sigma1) => LogicId::IHsigmaStar,
            (T::HAstar, M::PA, Sigma1) => LogicId::IHsigmaPStar,
            (T::HAstar, M::N, Sigma1) => LogicId::IHsigmaSPStar,
            _ => return Err(RegistryError::UnsupportedTriple(self)),
        };
        Ok(id)
    }

    fn metatheory_name(self) -> &'static str {
        match self.metatheory {
            Metatheory::HA => "HA",
            Metatheory::PA => "PA",
            Metatheory::N => "N",
            Metatheory::SelfRelative => self.theory.name(),
        }
    }
}

impl fmt::Display for ProvLogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.substitution_class {
            SubstitutionClass::All => "PL",
            SubstitutionClass::Sigma1 => "Sigma1",
        };
        write!(f, "{head}({},{})", self.theory.name(), self.metatheory_name())
    }
}

impl FromStr for ProvLogicId {
    type Err = RegistryError;

    /// Accepts `PL(T,U)` and `Sigma1(T,U)` with `T` one of `HA`, `HAstar`,
    /// `PA`, `PAstar` (or `HA*`, `PA*`) and `U` one of those or `N`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RegistryError::BadTriple(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, rest) = compact.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let (t, u) = args.split_once(',').ok_or_else(bad)?;
        let substitution_class = match head {
            "PL" => SubstitutionClass::All,
            "Sigma1" | "Σ1" => SubstitutionClass::Sigma1,
            _ => return Err(bad()),
        };
        let theory = match t {
            "HA" => Theory::HA,
            "HAstar" | "HA*" => Theory::HAstar,
            "PA" => Theory::PA,
            "PAstar" | "PA*" => Theory::PAstar,
            _ => return Err(bad()),
        };
        let metatheory = match (u, theory) {
            ("HAstar" | "HA*", Theory::HAstar) | ("PAstar" | "PA*", Theory::PAstar) => Metatheory::SelfRelative,
            ("HA", _) => Metatheory::HA,
            ("PA", _) => Metatheory::PA,
            ("N" | "ℕ", _) => Metatheory::N,
            _ => return Err(bad()),
        };
        Ok(ProvLogicId { theory, metatheory, substitution_class })
    }
}
