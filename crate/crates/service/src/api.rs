use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use triblock::polygon::Diagonal;

use crate::error::ApiError;
use crate::session::{NewGame, Source, StateView};
use crate::store::SessionStore;

#[derive(Debug, Serialize, Deserialize)]
pub struct Created {
    pub id: String,
    pub state: StateView,
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    pub diagonals: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Hint {
    pub diagonals: Vec<Diagonal>,
    pub source: Source,
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| ApiError::BadRequest(e.body_text()))
}

async fn create(
    State(store): State<SessionStore>,
    payload: Result<Json<NewGame>, JsonRejection>,
) -> Result<Response, ApiError> {
    let request = body(payload)?;
    let cell = store.create(&request)?;
    let session = cell.lock().unwrap_or_else(|p| p.into_inner());
    let created = Created {
        id: session.id().to_string(),
        state: session.view(None),
    };
    Ok((StatusCode::CREATED, Json(created)).into_response())
}

async fn show(
    State(store): State<SessionStore>,
    Path(id): Path<String>,
) -> Result<Json<StateView>, ApiError> {
    store.with(&id, |s| Json(s.view(None)))
}

async fn play(
    State(store): State<SessionStore>,
    Path(id): Path<String>,
    payload: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<StateView>, ApiError> {
    let request = body(payload)?;
    store.with(&id, |s| {
        let reply = s.submit(&request.diagonals)?;
        Ok(Json(s.view(Some(reply))))
    })?
}

async fn hint(
    State(store): State<SessionStore>,
    Path(id): Path<String>,
) -> Result<Json<Hint>, ApiError> {
    store.with(&id, |s| {
        s.hint().map(|a| {
            Json(Hint {
                diagonals: a.diagonals,
                source: a.source,
            })
        })
    })?
}

async fn remove(
    State(store): State<SessionStore>,
    Path(id): Path<String>,
) -> Result<StatusCode, ApiError> {
    store.remove(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn unknown_api() -> ApiError {
    ApiError::NotFound("no such endpoint".into())
}

/// The `/api/v1` routes.
pub fn api_router(store: SessionStore) -> Router {
    Router::new()
        .route("/api/v1/games", post(create))
        .route("/api/v1/games/{id}", get(show).delete(remove))
        .route("/api/v1/games/{id}/moves", post(play))
        .route("/api/v1/games/{id}/hint", get(hint))
        .route("/api/v1/{*rest}", axum::routing::any(unknown_api))
        .with_state(store)
}
