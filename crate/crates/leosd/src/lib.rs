//! Ordered-statistics decoding of binary linear block codes, including a
//! variant that recovers candidate codewords by solving linear equations
//! over the low-reliability positions instead of re-encoding, plus the
//! probabilistic early-stopping rules, performance/complexity analysis, and
//! brute-force reference decoders used to validate it.

pub mod analysis;
pub mod channel;
pub mod codes;
pub mod gf2;
pub mod ileosd;
pub mod leosd;
pub mod oracle;
pub mod osd;
pub mod tep;

pub use gf2::{ge_systematic, BitMatrix, BitVector, GeResult, Permutation};
pub use ileosd::{decode_improved, decode_improved_with, ConditionState, IleosdConfig};
pub use leosd::{decode, preprocess, LeosdParams, Preprocessed};
pub use osd::{DecodeOutcome, OpCounters};
