//! Benchmark-only crate; see benches/suite.rs.
