//! Exact calculator for bigraded knot chain complexes over A = F₂[u,w].
//!
//! The pipeline: build or parse a [`complex::KnotComplex`], reduce it, take
//! its Alexander slices ([`complex::SliceComplex`]), decompose each slice's
//! homology over F₂[U] with [`polyalg::graded_reduce`], then assemble the
//! numerical invariants — ν⁻, the ideal sequence, torsion depths 𝔱⁻/𝔱⁺/𝔱/𝔱̂ —
//! and the lower bounds they imply for unknotting numbers, Gordian
//! distances, and alternation numbers ([`invariants`]).
//!
//! Everything is exact integer/F₂ arithmetic; there is no floating point and
//! no truncation in any production code path.
//!
//! ```
//! use kc::builders;
//! use kc::homology::Analysis;
//! use kc::invariants::unknotting_report;
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let k = builders::torus_knot(3, 4)?;
//! let analysis = Analysis::new(&k)?;
//! assert_eq!(analysis.nu_minus()?, 3);
//! assert_eq!(analysis.ideal_sequence()?.0, vec![0, 1, 3]);
//! let report = unknotting_report(&k)?;
//! assert_eq!(report.u_lower, 3);
//! # Ok(())
//! # }
//! ```

pub mod builders;
pub mod complex;
pub mod homology;
pub mod invariants;
pub mod polyalg;
