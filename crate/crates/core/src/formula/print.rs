//! ASCII printing in the input grammar. The output always reparses to the
//! same tree: `/\` and `\/` are left-associative, `->` right-associative.

use std::fmt;

use super::Formula;

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Imp(_, b) if **b == Formula::Bot => UNARY,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < min {
        out.write_str("(")?;
        write_formula(f, out)?;
        out.write_str(")")
    } else {
        write_formula(f, out)
    }
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Bot => out.write_str("false"),
        Formula::Top => out.write_str("true"),
        Formula::Atom(p) => out.write_str(p.name()),
        Formula::Box(a) => {
            out.write_str("[]")?;
            write_at(a, UNARY, out)
        }
        Formula::Imp(a, b) if **b == Formula::Bot => {
            out.write_str("~")?;
            write_at(a, UNARY, out)
        }
        Formula::Imp(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" -> ")?;
            write_at(b, IMP, out)
        }
        Formula::Or(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" \\/ ")?;
            write_at(b, AND, out)
        }
        Formula::And(a, b) => {
            write_at(a, AND, out)?;
            out.write_str(" /\\ ")?;
            write_at(b, UNARY, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}
