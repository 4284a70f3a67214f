//! Service side of the Awal contribution platform: the durable store, the
//! HTTP/JSON API, the remote MT client and the data-pull tools.

pub mod api;
pub mod config;
pub mod error;
pub mod mt;
pub mod server;
pub mod store;

pub use error::{Error, Result};
pub use store::{State, Store, SyncMode};
