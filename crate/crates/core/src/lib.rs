#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod config;
pub mod error;
pub mod influx;
pub mod interface;
pub mod model;
pub mod oracle;
pub mod output;
pub mod plotdata;
pub mod runner;
pub mod solver1d;
pub mod solver2d;
pub mod tdma;
pub mod uq;
