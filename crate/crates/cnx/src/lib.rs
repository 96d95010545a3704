//! File formats, a timed parallel search driver and the `cnx` command line
//! on top of `cnx-core`.

pub mod cli;
pub mod driver;
pub mod modelfile;
pub mod prooffile;
