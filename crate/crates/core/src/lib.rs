//! Exact-arithmetic toolkit for quiver representations: stability testing,
//! quiver Grassmannians, non-commutative Hilbert schemes, the
//! Gelfand-MacPherson orbit correspondence and the Zelevinsky maps, all
//! verifiable by exhaustive enumeration over small finite fields.

pub mod budget;
pub mod correspondence;
pub mod error;
pub mod field;
pub mod framing;
pub mod grassmannian;
pub mod group;
pub mod io;
pub mod matrix;
pub mod quiver;
pub mod rep;
pub mod stability;
pub mod subspace;
pub mod zelevinsky;

pub use budget::{Budget, DEFAULT_BUDGET};
pub use correspondence::{
    f_minus, f_plus, gm_phi, gm_psi, rep_isomorphic, verify_correspondence,
    verify_equivariance_random, verify_saturation, CorrespondenceReport,
};
pub use error::{Error, Result};
pub use field::{dispatch_field, Field, FieldSpec, FieldVisitor, Fp, Rat, F2, F3, F5, F7};
pub use framing::{
    build_framed, default_n, framed_param_c, framed_param_eta, framed_param_theta,
    verify_engel_reineke, verify_framed_stability, verify_theta_pm, FramedKind, FramedQuiver,
    VerifyReport,
};
pub use grassmannian::{
    grassmannian_points, grassmannian_points_reversed, hilbert_point_phi, hilbert_point_psi,
    orbit_of_point, sigma_action, sigma_matrices, SubspaceTuple,
};
pub use group::{character_value, enumerate_gl, enumerate_group, orbit_partition, GroupElement};
pub use matrix::{Matrix, Rref};
pub use quiver::{
    euler_form, linear_quiver, subspace_quiver, DimVector, Path, Quiver, StabilityParam,
};
pub use rep::{
    canonical_phi, canonical_psi, direct_sum, ext_dim, ext_dim_via_resolution, framed_phi,
    framed_psi, hom_basis, hom_dim, injective, is_homomorphism, proj_resolution, projective,
    resolution_is_exact, simple, tensor_by_space, LabeledBasis, ModuleSide, PathLabel,
    ProjResolution, Representation, VertexMaps,
};
pub use stability::{
    check_stability, enumerate_reps, enumerate_subreps, subspace_quiver_criterion, subspace_theta,
    StabilityVerdict, SubrepWitness,
};
pub use subspace::{enumerate_all_subspaces, enumerate_subspaces, gaussian_binomial, Subspace};
pub use zelevinsky::{
    dual_zelevinsky_h, enumerate_flags, flag_from_quotient_point, flag_from_subrep_point,
    flag_of_matrix, in_omega, in_opposite_cell, in_upsilon, linear_chain, standard_flag,
    verify_zelevinsky_bijection, zelevinsky_g, FlagConstraint, FlagPoint, ZelevinskyReport,
};
