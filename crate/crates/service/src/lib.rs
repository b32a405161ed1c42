//! HTTP sessions for playing the triangulation game against the engine.
//!
//! Routes live under `/api/v1`; everything else is served from an optional
//! static directory (the board UI).

mod api;
mod error;
mod session;
mod store;

use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;

use axum::Router;
use tower_http::services::ServeDir;

pub use api::{api_router, Created, Hint};
pub use error::ApiError;
pub use session::{advise, Advice, HumanRole, NewGame, Session, SessionSnapshot, Source, StateView, MAX_N, MIN_N};
pub use store::{SessionStore, SNAPSHOT_VERSION};

#[derive(Debug, Clone, Default)]
pub struct ServerConfig {
    pub port: u16,
    pub static_dir: Option<PathBuf>,
    /// Restored on start when present, written on shutdown.
    pub snapshot: Option<PathBuf>,
}

/// The API plus, when given, static files as the fallback.
pub fn app(store: SessionStore, static_dir: Option<PathBuf>) -> Router {
    let router = api_router(store);
    match static_dir {
        Some(dir) => router.fallback_service(ServeDir::new(dir)),
        None => router,
    }
}

/// Serves until Ctrl-C.
pub async fn serve(config: ServerConfig) -> io::Result<()> {
    let store = SessionStore::new();
    if let Some(path) = config.snapshot.as_ref().filter(|p| p.exists()) {
        let n = store.restore(path)?;
        eprintln!("restored {n} session(s) from {}", path.display());
    }
    if let Some(dir) = &config.static_dir {
        if !dir.is_dir() {
            return Err(io::Error::new(
                io::ErrorKind::NotFound,
                format!("static directory {} does not exist", dir.display()),
            ));
        }
    }
    let addr = SocketAddr::from(([127, 0, 0, 1], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app(store.clone(), config.static_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    if let Some(path) = &config.snapshot {
        store.save(path)?;
        eprintln!("saved {} session(s) to {}", store.len(), path.display());
    }
    Ok(())
}
