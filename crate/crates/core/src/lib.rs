//! King stability for thin representations of quivers with relations, spiral
//! (helix) extensions, and torus-invariant cycle functions.
//!
//! Nodes are numbered from 1. An arrow `j -> i` stands for a map `E_i -> E_j`
//! between line bundles; its scalar is written `a_ij`. All arithmetic is exact.
//!
//! ```
//! use quiverstab::rational::int;
//! use quiverstab::{certify_great, character_from_weights, get_entry, is_stable, WeightMatrix};
//!
//! let f1 = get_entry("f1")?;
//! let m = WeightMatrix::from_entries(4, &[(1, 1, 4), (1, 2, 3)])?;
//! assert!(certify_great(f1.quiver(), &m)?.is_certified());
//!
//! let chi = character_from_weights(&m);
//! let p = f1.tautological_point(&[int(1), int(2), int(3), int(1)], None)?;
//! assert!(is_stable(f1.quiver(), &p, &chi)?);
//! # Ok::<(), quiverstab::Error>(())
//! ```

pub mod catalog;
pub mod error;
pub mod format;
pub mod helix;
pub mod invariants;
pub mod quiver;
pub mod rational;
pub mod repvar;
pub mod stability;

pub use catalog::{get_entry, CatalogEntry, CoxVariable, ENTRY_NAMES};
pub use error::{Error, Result};
pub use helix::{
    anticanonical_character, check_line_bundle_degrees, extend_spiral, extend_spiral_labeled,
    PicVector,
};
pub use invariants::{
    enumerate_cycles, evaluate_invariant, separation_experiment, CycleMonomial, SeparationReport,
};
pub use quiver::{Arrow, GradingCertificate, Monomial, Path, Quiver, Relation};
pub use rational::{parse_rational, Rational};
pub use repvar::{RepresentationPoint, TorusElement};
pub use stability::{
    certify_good, certify_great, character_from_weights, is_semistable, is_stable,
    stability_report, subrep_supports, supports_from_closures, Certificate, Character, NodeSet,
    StabilityReport, SupportFamily, WeightMatrix,
};
