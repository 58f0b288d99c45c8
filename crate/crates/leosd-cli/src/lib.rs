//! Library surface of the campaign runner so integration tests and fuzz
//! targets can drive configuration parsing and the Monte Carlo loop without
//! going through the binary.

pub mod analyze;
pub mod campaign;
pub mod codespec;
