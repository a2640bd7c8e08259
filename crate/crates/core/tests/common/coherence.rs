//! Biconditionals between logics linked by a translation. Where the
//! registry decides the left side through that very translation, the right
//! side is decided by the premise route so the two sides stay independent.

use provability::engine::{DecisionResult, Verdict};
use provability::formula::Formula;
use provability::registry::{decide_with, DecideOptions, LogicId, RegistryError, Route};
use provability::translate::{box_down, box_full, box_up};

pub struct Biconditional {
    pub name: &'static str,
    left: (LogicId, fn(&Formula) -> Formula, Route),
    right: (LogicId, fn(&Formula) -> Formula, Route),
}

fn same(a: &Formula) -> Formula {
    a.clone()
}

fn boxed(a: &Formula) -> Formula {
    Formula::boxed(a.clone())
}

fn full_then_up_down(a: &Formula) -> Formula {
    box_down(&box_up(a))
}

pub const BICONDITIONALS: [Biconditional; 6] = [
    Biconditional {
        name: "iGLCT(A) = GL(A^box)",
        left: (LogicId::IGLCT, same, Route::Semantic),
        right: (LogicId::GL, box_full, Route::Semantic),
    },
    Biconditional {
        name: "iGLCT(A) = GLCa(A^box)",
        left: (LogicId::IGLCT, same, Route::Semantic),
        right: (LogicId::GLCa, box_full, Route::Semantic),
    },
    Biconditional {
        name: "GLS([]A) = GL(A)",
        left: (LogicId::GLS, boxed, Route::Semantic),
        right: (LogicId::GL, same, Route::Semantic),
    },
    Biconditional {
        name: "iGLCbarTP_Ca(A) = GLCa(A^box-down)",
        left: (LogicId::IGLCbarTPCa, same, Route::Semantic),
        right: (LogicId::GLCa, box_down, Route::Premise),
    },
    Biconditional {
        name: "iGLCbarTbar(A) = iGLPbar(A^box-down)",
        left: (LogicId::IGLCbarTbar, same, Route::Semantic),
        right: (LogicId::IGLPbar, box_down, Route::Semantic),
    },
    Biconditional {
        name: "iHsigma(A^box) = iHsigma((A^box-up)^box-down)",
        left: (LogicId::IHsigma, box_full, Route::Semantic),
        right: (LogicId::IHsigma, full_then_up_down, Route::Semantic),
    },
];

#[derive(Debug)]
pub enum Outcome {
    Agree(Verdict),
    Mismatch(Verdict, Verdict),
    /// One side hit a resource cap; no verdict to compare.
    Unfinished(RegistryError),
}

type Side = (LogicId, fn(&Formula) -> Formula, Route);

fn side(side: &Side, a: &Formula, seen: &mut dyn FnMut(&DecisionResult)) -> Result<Verdict, RegistryError> {
    let (logic, map, route) = side;
    let options = DecideOptions { route: *route, ..DecideOptions::default() };
    let result = decide_with(*logic, &map(a), &options)?;
    seen(&result);
    Ok(result.verdict)
}

impl Biconditional {
    /// Decides both sides, handing every result to `seen` (for auditing).
    pub fn check(&self, a: &Formula, seen: &mut dyn FnMut(&DecisionResult)) -> Outcome {
        match (side(&self.left, a, seen), side(&self.right, a, seen)) {
            (Ok(l), Ok(r)) if l == r => Outcome::Agree(l),
            (Ok(l), Ok(r)) => Outcome::Mismatch(l, r),
            (Err(e), _) | (_, Err(e)) => Outcome::Unfinished(e),
        }
    }
}
