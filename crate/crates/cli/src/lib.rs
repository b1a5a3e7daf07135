//! Library side of the verification harness: campaign runners, report
//! shapes and the float fast paths. The `nineteen-vertex` binary is a thin
//! argument-parsing wrapper around these.

#![forbid(unsafe_code)]

pub mod campaigns;
pub mod config;
pub mod floatops;
pub mod jsonio;
pub mod report;
pub mod spectrum;
