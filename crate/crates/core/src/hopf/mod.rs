//! Hopf–Galois layer: comodule algebras, strong connections and their gluing.

pub mod comodule;
pub mod connection;
pub mod glue;
pub mod group;
pub mod hopf_data;
pub mod ideals;
pub mod smash;

pub use comodule::{
    canonical_map, coinvariants, fibre_product_comodule, quotient_comodule, CanonicalMap, Coinvariants,
    ComoduleAlgebra, ComoduleFibre, ComoduleQuotient,
};
pub use connection::{
    can_inverse_from_connection, can_tilde, default_functional, quotient_connection, splittings,
    strong_connection_solve, strong_connection_verify, translation_lift, verify_splittings, Axiom, ConnectionCheck,
    SolveOutcome, SplittingCheck, Splittings,
};
pub use group::{FiniteGroup, GroupAction};
pub use hopf_data::HopfData;
pub use glue::{
    alpha_splitting, check_colinear_splitting, colinear_splitting, glue_along_family, glue_connection,
    piecewise_principal_check, restriction_piece, AlphaChoice, AlphaSplitting, ColinearSplittingCheck,
    CoveringComparison, GluedConnection, Piece, PieceReport, PiecewiseReport,
};
pub use ideals::{
    contraction_lattice, coordinate_comodule_ideals, extend_ideal, ideal_contraction, is_left_ideal, is_right_ideal,
    ContractionCheck, ContractionLattice, ExtensionCheck,
};
pub use smash::{
    cyclic_group_ring, root_of_unity_example, smash_product, trivial_action, verify_module_algebra,
    verify_trivialization, RootOfUnityExample, Trivialization,
};
