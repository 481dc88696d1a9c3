//! Z5 group colourings of plane near-triangulations.
//!
//! * [`plane_graph`]: rotation-system model, validation, chords, splits, blocks.
//! * [`group_color`]: Z_m arithmetic, edge labellings and the tau calculus.
//! * [`gcg`]: the line-oriented `gcg v1` text format.
//! * [`families`]: wheels, broken wheels, multi-wheels and their recogniser.
//! * [`solver`]: exact counting, the 2- and 3-vertex extension engines,
//!   short-cycle colouring and obstruction certificates.
//! * [`propcheck`]: randomized and exhaustive property checks.
//! * [`cli`]: the `z5lab` command line.

pub mod cli;
pub mod families;
pub mod gcg;
pub mod group_color;
pub mod plane_graph;
pub mod propcheck;
pub mod solver;
