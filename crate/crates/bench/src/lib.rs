//! Shared fixtures for the benchmark suite live in the core crate's
//! `samples` module; this crate only hosts the criterion targets.
