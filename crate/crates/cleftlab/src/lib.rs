//! cleftlab: homological invariants of finite-dimensional algebras over
//! prime fields 𝔽_p, and mechanical desk-scale verification of cleft-extension
//! machinery — perfect/nilpotent bimodule criteria, Gorenstein transfer
//! between Γ and the θ-extension Γ⋉_θM, and the singular-equivalence
//! criterion.
//!
//! Module map:
//! - [`exactlinalg`]: exact dense linear algebra over 𝔽_p (the substrate).
//! - [`algebra`]: structure-constant algebras, radicals, derived algebras.
//! - [`modules`]: right modules, bimodules, Hom/tensor, isomorphism testing.
//! - [`homology`]: minimal resolutions, pd/id with certified-infinite
//!   detection, Ext/Tor tables.
//! - [`cleft`]: θ-extensions and friends, the functor suite, identity checks.
//! - [`perfect`]: nilpotence and perfect-bimodule decision procedures.
//! - [`gorenstein`]: Iwanaga-Gorenstein verdicts, transfer, Gproj membership.
//! - [`singularity`]: the L_sgF criterion, singular-equivalence reports, the
//!   eventually-homological-isomorphism probe.
//! - [`catalog`]: the curated example algebras and suites used by the test
//!   battery and the CLI's built-in ids.
//! - [`io`]: JSON file formats and the suite configuration.

pub mod algebra;
pub mod catalog;
pub mod cleft;
pub mod error;
pub mod exactlinalg;
pub mod gorenstein;
pub mod homology;
pub mod io;
pub mod modules;
pub mod perfect;
pub mod singularity;

pub use error::{Error, Result};
