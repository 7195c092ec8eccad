//! Command line and HTTP front ends for the `hclcolor` toolkit.
//!
//! Both front ends go through [`api`], so a logical request gives the same
//! colors whichever way it arrives.

pub mod api;
pub mod cli;
pub mod registry_file;
pub mod service;
