//! Finite linear groups over GF(q), their non-commuting graphs, and the
//! invariants used to tell SL(2,q) apart from other groups of the same order.

pub mod arith;
pub mod classify;
pub mod constructions;
pub mod ffield;
pub mod groups;
pub mod matgroups;
pub mod ncgraph;
pub mod report;

pub use classify::{ClassificationReport, ClassifyError, SchmidtCase, TheoremReport};
pub use constructions::{build, build_str, ConstructionError, GroupDescriptor};
pub use ffield::{make_field, FieldElem, FieldError, FieldSpec};
pub use groups::{Group, GroupError, GroupJson, Subgroup};
pub use matgroups::{gl2, pgl2, psl2, sl2, LinearFamily, Mat2, MatrixError, PartitionReport};
pub use ncgraph::{build_graph, CentralizerProfile, Fingerprint, NcGraph, NcGraphError};
pub use report::{Assertion, Assertions, Verdict};
