pub mod chern;
pub mod cli;
pub mod cohomology;
pub mod report;
pub mod kahler;
