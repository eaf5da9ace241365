mod bitmap;
pub mod classify;
pub mod cli;
pub mod criteria;
pub mod numtheory;
pub mod search;
pub mod splitting;
