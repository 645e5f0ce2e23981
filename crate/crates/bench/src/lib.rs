//! Benchmark-only crate; see `benches/kernels.rs`.

pub use infsup_core::{InfSupCase, InfSupOptions};

/// Small cases that finish in well under a second each.
pub const SMALL_CASES: &[(usize, usize)] = &[(1, 4), (2, 4), (3, 4), (1, 8), (2, 8)];
