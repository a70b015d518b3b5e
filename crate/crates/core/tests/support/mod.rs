//! Shared oracles, grids and property checks for the integration tests.
#![allow(dead_code)]

pub mod props;
