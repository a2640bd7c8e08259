pub mod cli;
pub mod engine;
pub mod formula;
pub mod kripke;
pub mod registry;
pub mod translate;
