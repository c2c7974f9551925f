//! Closed-form spectral moment evaluators for the GUE and the discrete
//! q-deformed GUE, with the genus-expansion machinery and every cross-check
//! identity among the routes.

pub mod genus;
pub mod gue;
pub mod qgue;
pub mod table;

pub use genus::{
    genus_coefficient, genus_expansion_check, genus_table, odd_vanishing_check,
    topological_recursion_check, GenusCoefficient,
};
pub use gue::{
    gue_identity_per_j_check, gue_moment_alternating, gue_moment_hypergeometric,
    gue_moment_poly_in_n, gue_moment_positive, gue_partial_alternating, gue_partial_positive,
    harer_zagier_check,
};
pub use qgue::{
    mhat_numeric, qgue_alternative_forms, qgue_cohen_total, qgue_moment_alternating,
    qgue_moment_positive, qgue_partial_alternating, qgue_partial_positive, scaled_moment,
    AlternativeForm,
};
pub use table::{Kind, MomentTable, Provenance, TableError, Value};
