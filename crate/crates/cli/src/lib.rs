//! File formats, verification suites and the command line front end for
//! `tamearith-core`.

pub mod load;
pub mod schema;
pub mod commands;
pub mod corpus;
pub mod report;
pub mod suites;
pub mod acceptance;
