//! Exact computations for root data, ι-root data, quantum groups and their
//! ι-subalgebras, and desk-scale symmetric subgroups.

pub mod exactq;
pub mod grouplab;
pub mod input;
pub mod iqg;
pub mod linalg;
pub mod parallel;
pub mod qone;
pub mod rootdata;
pub mod satake;
pub mod uq;
pub mod verify;
