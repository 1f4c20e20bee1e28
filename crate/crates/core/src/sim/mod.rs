//! Byte-level simulation of an FR-coded storage cluster.

mod cluster;
pub mod gf256;
mod outer;
mod scenario;

pub use cluster::{collect, encode_store, fail_and_repair, ClusterState, Event, StoreConfig};
pub use outer::OuterCode;
pub use scenario::{run_scenario, CollectOutcome, Metrics, RandomCollects, Scenario};
