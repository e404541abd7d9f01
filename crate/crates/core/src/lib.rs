//! Exact two-terminal reliability of hammock (brick-wall) networks.
//!
//! Networks live on one parity class of the diagonal lattice inside an
//! `l x w` rectangle. The crate builds them and their duals, enumerates
//! minimal pathsets and cutsets, computes reliability polynomials exactly by
//! two independent engines, and checks the duality identities relating a
//! network to its dual as exact integer polynomial identities.

pub mod duality;
pub mod error;
pub mod lattice;
pub mod limits;
pub mod poly;
pub mod reliability;
pub mod report;
pub mod subset;
pub mod verification;

pub use duality::{
    complement_edge, dual_network, enumerate_mincuts, enumerate_minpaths, verify_corollary1,
    verify_theorem1, DualCorrespondence, MincutStrategy,
};
pub use error::{HammockError, Result};
pub use lattice::{
    build_hammock, is_cutset, is_pathset, is_x_path, Edge, HammockNetwork, Kind, LatticePoint,
    TerminalSides,
};
pub use limits::{Engine, Limits};
pub use poly::IntPoly;
pub use reliability::{
    cutset_counts, reliability, reliability_bruteforce, reliability_frontier, CutsetCounts,
    ReliabilityPolynomial,
};
pub use report::VerificationReport;
pub use subset::EdgeSubset;
pub use verification::{
    run_suite, verify_derivative_orders, verify_duality_identity, verify_remark1,
    verify_self_symmetry, Check, VerifyOptions,
};
