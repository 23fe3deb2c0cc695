//! Support library for the `bniep5` binary: the seeded spectrum sampler and
//! its record type, shared between the `sample` command and the test suites.

pub mod sampler;
