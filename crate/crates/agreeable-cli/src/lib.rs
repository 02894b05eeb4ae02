//! Library backing the `agreeable` CLI: instance file formats, solver
//! dispatch, the benchmark runner, and environment-configurable caps.

pub mod caps;
pub mod formats;
pub mod runner;
