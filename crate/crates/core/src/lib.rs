//! Exact q-series engine for odd unimodal and odd strongly unimodal sequences:
//! truncated big-integer series arithmetic, a combinatorial enumeration oracle,
//! the generating-function identities with rank refinement, mod-4 congruence
//! verification, and numerical validation of the asymptotic main terms.

pub mod asymptotics;
pub mod cli;
pub mod congruence;
pub mod enumeration;
pub mod genfun;
pub mod series;
