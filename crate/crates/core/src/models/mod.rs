//! Ready-made models: the Razavy and sextic generators, the scalar-field
//! stability problem and its Pöschl–Teller form, plus a harmonic control.

mod catalog;
mod poschl_teller;
mod scalar_field;

pub use catalog::{
    confining_half_width, edge_growth, harmonic_control, model_spectrum, polynomial_model,
    razavy_model, sextic_model, HarmonicControl, BOX_POTENTIAL_LEVEL, DEFAULT_SPECTRAL_POINTS,
};
pub use poschl_teller::{
    cell, cell_window, mapped_tower, mapped_tower_cross_route, partner_tower, poschl_teller_bundle,
    quoted_tower_energy, u_of_x, x_of_theta, x_of_u, PoschlTellerBundle, TowerVariable,
};
pub use scalar_field::{
    profile_checks, profile_table, resolved_soliton_profile, scalar_field_model, scalar_z_operator,
    soliton_profile, soliton_profile_from, stability_operator_u, z_u_consistency, ProfileCheck,
    ScalarFieldModel, UOperator, PROFILE_POINTS,
};
