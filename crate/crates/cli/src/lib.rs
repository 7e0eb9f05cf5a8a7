pub mod checks;
pub mod commands;
pub mod error;
pub mod expr;
pub mod format;
