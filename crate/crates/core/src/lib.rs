//! Refined Ehrenfeucht-Fraisse games that measure formula size.
//!
//! The propositional game decides whether a formula with at most `w` symbol
//! occurrences separates two sets of binary strings; the first-order game
//! does the same for classes of finite structures, counting atoms and
//! quantifiers. Certificates (density and the measures `M`, `N`) give lower
//! bounds without search, and brute-force oracles cross-check the solvers.

pub mod error;
pub mod fo;
pub mod oracle;
pub mod prop;
pub mod repro;

pub use error::{Error, Limit, Result};
pub use fo::bounds::{
    boolcomb_alternating_sentence, boolcomb_b_element, boolcomb_existential_sentence, boolcomb_instances,
    boolcomb_model_a, boolcomb_model_b, boolcomb_vocabulary, classify_boolcomb, classify_linorder, linear_order,
    linorder_existential_sentence, linorder_instances, linorder_log_sentence, measure_m, measure_n, order_vocabulary,
    BoolCombClassification, LinClassification,
};
pub use fo::game::{
    fo_minsize, fo_synthesize, fo_winner, FoLimits, FoMinResult, FoMove, FoPosition, FoSolver, FoStep, GameMode,
    IndexPolicy,
};
pub use fo::{
    atomic_separators, candidate_atoms, extend_choice, extend_star, fo_eval, fo_separates, Assignment, ChoiceFunction,
    FoFormula, Model, Structure, StructureClass, Vocabulary,
};
pub use oracle::{
    count_functions_up_to, fo_enumerate_minsize, fo_enumerate_separator, formula_count_bound, min_size_table,
    oracle_minsize, MinSizeTable, TruthTable,
};
pub use prop::bounds::{
    density, density_lower_bound, parity_balanced, parity_dnf, parity_property, DensityPair, Rational,
};
pub use prop::game::{
    formula_strategy_move, literal_win, minsize, synthesize, verify_formula_strategy, winner, MinResult, Player,
    PropLimits, PropMove, PropPosition, RuleMode, StrategyStep,
};
pub use prop::{BitString, Literal, PropFormula, StringProperty};
pub use repro::{repro_boolcomb, repro_linorder, repro_parity, ReproReport};
