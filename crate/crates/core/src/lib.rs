#![allow(clippy::needless_range_loop)]

pub mod affine;
pub mod cli;
pub mod descent;
pub mod error;
pub mod gkm;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod rational;
pub mod rootdata;
