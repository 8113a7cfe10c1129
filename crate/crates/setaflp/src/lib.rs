//! Text formats, random instance generation, oracle suites and reporting
//! on top of [`setaflp_core`].

pub mod propcheck;
pub mod report;
pub mod textio;

pub use setaflp_core;
