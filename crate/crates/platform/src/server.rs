use std::sync::Arc;

use awal_core::pretranslate::{MtBackend, StubBackend};
use tokio::net::TcpListener;

use crate::api::{router, AppState};
use crate::config::Config;
use crate::mt::RemoteBackend;
use crate::store::Store;

pub fn backend_for(config: &Config) -> anyhow::Result<Arc<dyn MtBackend>> {
    Ok(match &config.mt_url {
        Some(url) => Arc::new(RemoteBackend::new(url.clone(), config.mt_timeout)?),
        None => Arc::new(StubBackend),
    })
}

/// Opens the store, binds and serves until ctrl-c.
pub async fn run(config: Config) -> anyhow::Result<()> {
    let store = Store::open_with(&config.store_path, config.store_sync)?;
    let state = AppState::new(Arc::new(store), backend_for(&config)?, config.rules);
    let listener = TcpListener::bind(config.bind).await?;
    tracing::info!(addr = %listener.local_addr()?, store = %config.store_path.display(), "serving");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
