//! Parsing, rendering, and verification routines behind the `ptskein` binary.

pub mod parse;
pub mod render;
pub mod verify;
