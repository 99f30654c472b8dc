//! Exact combinatorics of set partitions: restricted growth words, the
//! opener/closer coordinate statistics and the mak family, the involution
//! exchanging `mak` and `mak'`, valued Motzkin paths, q-Stirling numbers, and
//! exhaustive verification sweeps over `P_n^k` and `OP_n^k`.

pub mod bijections;
pub mod enumerate;
pub mod error;
pub mod motzkin;
pub mod partition;
pub mod qseries;
pub mod statistics;
pub mod verify;

pub use bijections::{match_openers_closers, phi, phi_i, phi_with_certificate, PhiCertificate};
pub use enumerate::{bell, enumerate_all, enumerate_ordered, enumerate_partitions, stirling2};
pub use error::{Error, Result};
pub use motzkin::{decode, encode, reflect, LabeledMotzkinPath, Step, StepKind};
pub use partition::{
    classify, rebuild_from_profile, trace_profile, BlockWord, ElementClassification,
    ElementKind, OrderedSetPartition, RgfWord, SetPartition, TraceProfile,
};
pub use qseries::{generating_function, q_factorial, q_int, q_stirling, shifted_stirling, QPolynomial};
pub use statistics::{CoordKind, StatSum, StatValue, Statistic};
