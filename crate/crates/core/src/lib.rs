//! Lambda calculus with de Bruijn indices, restricted intersection type
//! systems, principal typing inference for beta-normal forms, and the
//! reconstruction of a normal form from its principal typing.
//!
//! Module map:
//! - `term`: de Bruijn terms, substitution, beta reduction, normal-form shapes
//! - `ty`: intersection types, contexts, type substitutions
//! - `syntax`: concrete syntax (parsing and printing)
//! - `systems`: the type systems SM and SM_r, derivation checking
//! - `infer`: principal typing inference for beta-normal forms
//! - `principal`: C-types, the principality characterisation, reconstruction
//! - `oracle`: brute-force enumerators and invariant sweeps

pub mod infer;
pub mod oracle;
pub mod principal;
pub mod syntax;
pub mod systems;
pub mod term;
pub mod ty;

pub use infer::{completeness_witness, infer, infer_checked, infer_with, FreshSupply};
pub use oracle::{
    enum_beta_nfs, enum_ctypes, enum_typings, relevance_at_every_node, sweep, EnumBudget,
    SweepReport,
};
pub use principal::{
    argument_partition, final_occurrences, fo, grammar_class, held_decompositions, is_closed,
    is_complete, is_finally_closed, is_inter_c, is_minimally_closed, is_principal, is_type_c,
    is_type_nf, left_subtypes, polarity, recon, ArgPartition, CType, CTypeError, FoEntry,
    GrammarClass, HeadlessInput, NoPartition, Polarity, ReconError,
};
pub use syntax::{
    parse_context, parse_derivation, parse_inter, parse_term, parse_type, parse_typing,
    print_context, print_derivation, print_inter, print_term, print_type, print_typing,
};
pub use systems::{
    check_derivation, check_nf_typing, is_varr_shape, relevance_ok, sr_counterexample, Derivation,
    NfCheckError, Rule, RuleViolation, SrReport, System,
};
pub use term::{NfShape, Term};
pub use ty::{canonical_renaming, typing_alpha_equiv, Ctx, Inter, Subst, Ty, TyVar, Typing};
