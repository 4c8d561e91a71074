//! The Lie-algebraic side: sl(2) generators acting on polynomials, the
//! change of variable `z(x)`, the gauge-transformed operator `T`, the quartic
//! equivalence criterion and decomposition of `T` into generator products.

mod decompose;
mod equivalence;
mod generators;
mod operator;
mod poly;
mod zmap;

pub use decompose::{
    decompose_operator, decompose_operator_with, CasimirGauge, DecomposeOptions, Sl2Decomposition,
    DECOMPOSITION_SAMPLES,
};
pub use equivalence::{
    quartic_equivalence_test, QuarticVerdict, DEFAULT_EQUIVALENCE_TOL, EQUIVALENCE_FIT_NODES,
};
pub use generators::{
    apply_generator, commutator_check, BasisElement, CommutatorReport, GeneratorKind, PolyDiffOp,
    Sl2Generator,
};
pub use operator::{gauge_conjugation_check, gauge_operator_t, Coefficient, ZOperator};
pub use poly::PolyCoeffs;
pub use zmap::{build_zmap, z_function, ZMap};
