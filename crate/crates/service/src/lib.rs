//! HTTP API hosting Nim-on-graphs game sessions.
//!
//! ```text
//! POST /api/games                     create from instance text or a family spec
//! GET  /api/games/{id}                current state
//! POST /api/games/{id}/moves          submit a move {to, new_weight}
//! POST /api/games/{id}/engine-move    let the engine move
//! GET  /api/games/{id}/analysis       oracle verdict, tags and prediction
//! ```
//!
//! Sessions live in memory only. Requests on one session are serialized by
//! its lock; distinct sessions proceed in parallel.

pub mod api;
pub mod error;
pub mod session;

use std::net::SocketAddr;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::sync::Arc;

use axum::routing::{get, post};
use axum::Router;
use nimgraph_core::SolveBudget;
use tower_http::services::ServeDir;

pub use error::ApiError;
pub use session::{EngineMode, GameSession, SessionStore};

#[derive(Clone, Debug)]
pub struct ServiceConfig {
    pub capacity: NonZeroUsize,
    pub budget: SolveBudget,
    /// Directory of static assets served at `/`.
    pub static_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self { capacity: NonZeroUsize::new(256).unwrap(), budget: SolveBudget::default(), static_dir: None }
    }
}

#[derive(Clone)]
pub struct AppState {
    pub sessions: Arc<SessionStore>,
    pub config: Arc<ServiceConfig>,
}

impl AppState {
    pub fn new(config: ServiceConfig) -> Self {
        Self { sessions: Arc::new(SessionStore::new(config.capacity)), config: Arc::new(config) }
    }
}

pub fn router(state: AppState) -> Router {
    let static_dir = state.config.static_dir.clone();
    let api = Router::new()
        .route("/api/games", post(api::create_game))
        .route("/api/games/{id}", get(api::get_game))
        .route("/api/games/{id}/moves", post(api::submit_move))
        .route("/api/games/{id}/engine-move", post(api::engine_move))
        .route("/api/games/{id}/analysis", get(api::analysis))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Binds `addr` and serves until the process ends.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(AppState::new(config))).await
}
