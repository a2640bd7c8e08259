use super::logic::{Metatheory as M, ProvLogicId, SubstitutionClass, Theory as T};
use super::pipeline::{NamedMap, Translation};
use super::RegistryError;
use crate::formula::Formula;
use crate::translate::TranslationKind;

/// One arrow followed by [`reduction_trace`]: the goal after the arrow and
/// the logic it now lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub formula: Formula,
    pub node: ProvLogicId,
    pub translation: Translation,
    pub anchor: &'static str,
}

struct Arrow {
    from: ProvLogicId,
    to: ProvLogicId,
    map: Translation,
    anchor: &'static str,
}

const fn pl(theory: T, metatheory: M) -> ProvLogicId {
    ProvLogicId::new(theory, metatheory, SubstitutionClass::All)
}

const fn sigma(theory: T, metatheory: M) -> ProvLogicId {
    ProvLogicId::new(theory, metatheory, SubstitutionClass::Sigma1)
}

const fn kind(kind: TranslationKind) -> Translation {
    Translation::Kind(kind)
}

const BOX_GOAL: Translation = Translation::Named(NamedMap::BoxGoal);
const SUBST: Translation = Translation::Named(NamedMap::Substitution);

/// The arrows of the reduction diagram. Arrows leaving the same node are
/// listed in the order they are tried.
static ARROWS: &[Arrow] = &[
    Arrow {
        from: pl(T::PA, M::PA),
        to: sigma(T::PA, M::PA),
        map: SUBST,
        anchor: "countermodel substitution into a Sigma1 instance",
    },
    Arrow {
        from: pl(T::PA, M::PA),
        to: pl(T::PA, M::N),
        map: BOX_GOAL,
        anchor: "provable in PA iff its provability is true",
    },
    Arrow {
        from: pl(T::PA, M::N),
        to: sigma(T::PA, M::N),
        map: SUBST,
        anchor: "countermodel substitution into a Sigma1 instance",
    },
    Arrow {
        from: pl(T::PA, M::HA),
        to: sigma(T::PA, M::HA),
        map: SUBST,
        anchor: "countermodel substitution; provable goals map to true",
    },
    Arrow {
        from: pl(T::PAstar, M::HA),
        to: sigma(T::PAstar, M::HA),
        map: SUBST,
        anchor: "countermodel substitution into a Sigma1 instance",
    },
    Arrow {
        from: pl(T::PAstar, M::PA),
        to: sigma(T::PAstar, M::PA),
        map: SUBST,
        anchor: "countermodel substitution into a Sigma1 instance",
    },
    Arrow {
        from: pl(T::PAstar, M::SelfRelative),
        to: pl(T::PAstar, M::N),
        map: BOX_GOAL,
        anchor: "provable in PA* iff its provability is true",
    },
    Arrow {
        from: pl(T::PAstar, M::SelfRelative),
        to: sigma(T::PAstar, M::SelfRelative),
        map: SUBST,
        anchor: "countermodel substitution into a Sigma1 instance",
    },
    Arrow {
        from: pl(T::PAstar, M::N),
        to: sigma(T::PAstar, M::N),
        map: SUBST,
        anchor: "countermodel substitution into a Sigma1 instance",
    },
    Arrow {
        from: sigma(T::PAstar, M::HA),
        to: sigma(T::PA, M::HA),
        map: kind(TranslationKind::BoxDown),
        anchor: "PA* proves A iff PA proves its boxdot-down form",
    },
    Arrow {
        from: sigma(T::PAstar, M::PA),
        to: sigma(T::PAstar, M::HA),
        map: kind(TranslationKind::NegUp),
        anchor: "double negation moves truth in PA to truth in HA",
    },
    Arrow {
        from: sigma(T::PAstar, M::PA),
        to: sigma(T::PA, M::PA),
        map: kind(TranslationKind::BoxDown),
        anchor: "PA* proves A iff PA proves its boxdot-down form",
    },
    Arrow {
        from: sigma(T::PAstar, M::SelfRelative),
        to: sigma(T::PAstar, M::PA),
        map: kind(TranslationKind::BoxUp),
        anchor: "truth in PA* is truth in PA of the boxdot-up form",
    },
    Arrow {
        from: sigma(T::PAstar, M::SelfRelative),
        to: sigma(T::PAstar, M::N),
        map: BOX_GOAL,
        anchor: "provable in PA* iff its provability is true",
    },
    Arrow {
        from: sigma(T::PAstar, M::N),
        to: sigma(T::PA, M::N),
        map: kind(TranslationKind::BoxDown),
        anchor: "PA* proves A iff PA proves its boxdot-down form",
    },
    Arrow {
        from: sigma(T::PA, M::HA),
        to: sigma(T::HA, M::HA),
        map: kind(TranslationKind::Dagger),
        anchor: "Friedman-style translation of PA provability into HA",
    },
    Arrow {
        from: sigma(T::PA, M::PA),
        to: sigma(T::PA, M::N),
        map: BOX_GOAL,
        anchor: "provable in PA iff its provability is true",
    },
    Arrow {
        from: sigma(T::PA, M::PA),
        to: sigma(T::PA, M::HA),
        map: kind(TranslationKind::NegUp),
        anchor: "double negation moves truth in PA to truth in HA",
    },
    Arrow {
        from: sigma(T::PA, M::PA),
        to: sigma(T::HA, M::PA),
        map: kind(TranslationKind::Dagger),
        anchor: "Friedman-style translation of PA provability into HA",
    },
    Arrow {
        from: sigma(T::PA, M::N),
        to: sigma(T::HA, M::N),
        map: kind(TranslationKind::Dagger),
        anchor: "Friedman-style translation of PA provability into HA",
    },
    Arrow {
        from: sigma(T::HA, M::PA),
        to: sigma(T::HA, M::HA),
        map: kind(TranslationKind::NegUp),
        anchor: "double negation moves truth in PA to truth in HA",
    },
    Arrow {
        from: sigma(T::HA, M::HA),
        to: sigma(T::HA, M::N),
        map: BOX_GOAL,
        anchor: "provable in HA iff its provability is true",
    },
    Arrow {
        from: sigma(T::HAstar, M::PA),
        to: sigma(T::HAstar, M::HA),
        map: kind(TranslationKind::NegUp),
        anchor: "double negation moves truth in PA to truth in HA",
    },
    Arrow {
        from: sigma(T::HAstar, M::PA),
        to: sigma(T::HA, M::PA),
        map: kind(TranslationKind::BoxDown),
        anchor: "HA* proves A iff HA proves its boxdot-down form",
    },
    Arrow {
        from: sigma(T::HAstar, M::HA),
        to: sigma(T::HA, M::HA),
        map: kind(TranslationKind::BoxDown),
        anchor: "HA* proves A iff HA proves its boxdot-down form",
    },
    Arrow {
        from: sigma(T::HAstar, M::SelfRelative),
        to: sigma(T::HAstar, M::N),
        map: BOX_GOAL,
        anchor: "provable in HA* iff its provability is true",
    },
    Arrow {
        from: sigma(T::HAstar, M::SelfRelative),
        to: sigma(T::HAstar, M::HA),
        map: kind(TranslationKind::BoxUp),
        anchor: "truth in HA* is truth in HA of the boxdot-up form",
    },
    Arrow {
        from: sigma(T::HAstar, M::N),
        to: sigma(T::HA, M::N),
        map: kind(TranslationKind::BoxDown),
        anchor: "HA* proves A iff HA proves its boxdot-down form",
    },
];

/// The hardest logic: every diagram path ends here.
pub const SINK: ProvLogicId = sigma(T::HA, M::N);

/// Follows the diagram from `logic` to the sink, transforming the goal
/// along the way. Substitution arrows depend on a countermodel and leave the
/// goal unchanged here; see [`super::witness_substitution`].
pub fn reduction_trace(logic: ProvLogicId, goal: &Formula) -> Result<Vec<TraceEntry>, RegistryError> {
    logic.logic()?;
    let path = path_to_sink(logic, &mut Vec::new()).ok_or(RegistryError::NoPath(logic))?;
    let mut current = goal.clone();
    path.into_iter()
        .map(|arrow| {
            current = match arrow.map {
                Translation::Kind(kind) => kind.apply(&current)?,
                Translation::Named(NamedMap::BoxGoal) => Formula::boxed(current.clone()),
                Translation::Named(_) => current.clone(),
            };
            Ok(TraceEntry { formula: current.clone(), node: arrow.to, translation: arrow.map, anchor: arrow.anchor })
        })
        .collect()
}

fn path_to_sink(from: ProvLogicId, visiting: &mut Vec<ProvLogicId>) -> Option<Vec<&'static Arrow>> {
    if from == SINK {
        return Some(Vec::new());
    }
    if visiting.contains(&from) {
        return None;
    }
    visiting.push(from);
    let found = ARROWS.iter().filter(|a| a.from == from).find_map(|arrow| {
        path_to_sink(arrow.to, visiting).map(|mut rest| {
            rest.insert(0, arrow);
            rest
        })
    });
    visiting.pop();
    found
}
