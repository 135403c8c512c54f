//! Computational toolkit for (2+1)-dimensional TQFT quantities built from
//! explicit fusion-category data.
//!
//! Everything starts from finite data: a fusion ring (labels, duality, the
//! integer tensor `N_{ij}^k`), optionally a multiplicity-free set of F-symbols
//! over it, or the modular data (S, T) of a modular category. From these the
//! crate computes
//!
//! - categorification positivity criteria for fusion rings and module
//!   actions ([`criteria`]),
//! - the tube algebra of a spherical fusion category and its block
//!   decomposition into the Drinfeld center, including the center's modular
//!   data and induction multiplicities ([`tube`], [`center`]),
//! - Turaev–Viro state sums of triangulated closed oriented 3-manifolds,
//!   with a homology-counting oracle for `Vec_{Z_n}` ([`tv`], [`homology`]),
//! - Reshetikhin–Turaev invariants of plumbed 3-manifolds, Verlinde
//!   dimensions and the genus-1 mapping class group representation
//!   ([`rt`], [`sl2z`]),
//! - state-space dimensions of decorated surfaces from polygon and pants
//!   decompositions ([`surface`]),
//! - genus-1 topological indicators with their SL(2,Z) equivariance and a
//!   tube-algebra reference oracle ([`indicators`]).
//!
//! All scalar arithmetic is complex `f64` with explicit comparison
//! tolerances; see [`scalar::Tol`]. Bundled example data is available by
//! name through [`fixtures`].

pub mod center;
pub mod criteria;
pub mod fixtures;
pub mod fsym;
pub mod homology;
pub mod indicators;
pub mod modular;
pub mod nimrep;
pub mod plumbing;
pub mod ring;
pub mod rt;
pub mod scalar;
pub mod sl2z;
mod smallalg;
pub mod surface;
pub mod tri;
pub mod tube;
pub mod tv;

pub use center::{decompose_center, center_from_square, CenterData};
pub use criteria::{check_module_positivity, check_positivity, criterion_matrix, omega_rank_one, CriterionReport};
pub use fsym::{parse_fsymbols, verify_pentagon, FSymbolSet, PentagonReport};
pub use homology::{first_homology, Homology};
pub use indicators::{check_equivariance, fs_indicator, genus1_indicator, indicator_reference_oracle, K0Vector, TorusCurve};
pub use modular::{parse_modular_data, ModularData};
pub use nimrep::{parse_nimrep, NimRep};
pub use plumbing::{parse_plumbing, PlumbingTree};
pub use ring::{frobenius_perron_data, parse_fusion_ring, DimensionData, FusionRing};
pub use rt::{rt_invariant, verlinde_dimension};
pub use scalar::Tol;
pub use sl2z::{sl2z_factor, torus_rep_apply, SL2ZWord};
pub use surface::{dim_closed_surface, dim_state_space, parse_surface, DecoratedSurface};
pub use tri::{parse_triangulation, Triangulation};
pub use tube::{build_tube_algebra, TubeAlgebra};
pub use tv::{tv_invariant, vec_g_oracle};
