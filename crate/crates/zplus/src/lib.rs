pub mod cli;
pub mod dot;
pub mod io;
pub mod report;
pub mod sampling;
