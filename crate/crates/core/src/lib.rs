//! Weak (needed) reduction of interaction nets.
//!
//! A net is a multiset of equations between terms. Reduction is driven by
//! demand: needed markers climb parent links one level per step
//! (delegation) until they reach an equation, which then either interacts
//! through a rule or is eliminated by substituting across a name
//! (indirection). Every step does a bounded amount of work.
//!
//! ```
//! use weaknet::{engine, fixtures, text};
//!
//! let system = text::parse(fixtures::OMEGA).unwrap();
//! let result = engine::run(&system, None, engine::EngineConfig::needed()).unwrap();
//! assert_eq!(text::print_config(&result.residual, false), "!P = Alxx;\n");
//! assert_eq!(result.stats.steps, 14);
//! ```

pub mod calculus;
pub mod cli;
pub mod engine;
pub mod fixtures;
pub mod text;

pub use calculus::{
    occurrence_count, validate_system, Configuration, Diagnostic, DiagnosticKind, Equation,
    InteractionSystem, Orientation, Rule, Signature, Term,
};
pub use engine::{Engine, EngineConfig, EngineError, Mode, RunResult, RunStatus, Stats};
