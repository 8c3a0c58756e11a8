//! Request handlers and the JSON shapes they exchange.
//!
//! Vertices are 0-based integers in JSON. Players are `P1` (moved first) and
//! `P2`.

use axum::extract::{Path, State};
use axum::Json;
use nimgraph_core::{
    detect, dispatch, generate, parse_instance, Family, GameState, Move, SolveError, Solver, WeightSpec, Winner,
};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

use crate::error::ApiError;
use crate::session::{EngineMode, GameSession, SharedSession};
use crate::AppState;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateGame {
    /// Instance file text.
    pub instance: Option<String>,
    /// Family spec such as `ssb:3` or `cycle:6`.
    pub family: Option<String>,
    /// Weight spec for `family`; defaults to `uniform:1`.
    pub weights: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub engine: EngineMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveBody {
    pub to: usize,
    pub new_weight: u32,
}

impl From<Move> for MoveBody {
    fn from(mv: Move) -> Self {
        Self { to: mv.to, new_weight: mv.new_weight }
    }
}

#[derive(Debug, Serialize)]
pub struct EdgeView {
    pub u: usize,
    pub v: usize,
    pub w: u32,
}

#[derive(Debug, Serialize)]
pub struct GameView {
    pub id: Uuid,
    pub engine: EngineMode,
    pub vertices: usize,
    /// Current weights; zero-weight edges are kept so indices stay stable.
    pub edges: Vec<EdgeView>,
    pub token: usize,
    pub to_move: &'static str,
    pub legal_moves: Vec<MoveBody>,
    pub history: Vec<MoveBody>,
    pub terminal: bool,
    /// The player to move once no move is left.
    pub loser: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct EngineReply {
    #[serde(rename = "move")]
    pub mv: MoveBody,
    pub strategy: String,
    pub game: GameView,
}

#[derive(Debug, Serialize)]
pub struct AnalysisView {
    pub oracle: &'static str,
    pub oracle_error: Option<String>,
    pub winner: Option<Winner>,
    pub grundy: Option<u32>,
    pub optimal_moves: Option<Vec<MoveBody>>,
    pub states_visited: Option<u64>,
    pub tags: Vec<String>,
    pub prediction: String,
    pub strategy: Option<String>,
    pub strategy_move: Option<MoveBody>,
}

fn player(moves_played: usize) -> &'static str {
    if moves_played.is_multiple_of(2) {
        "P1"
    } else {
        "P2"
    }
}

fn view(session: &GameSession) -> GameView {
    let state = &session.state;
    let terminal = session.is_terminal();
    let to_move = player(session.history.len());
    GameView {
        id: session.id,
        engine: session.engine,
        vertices: session.graph.vertex_count(),
        edges: session
            .graph
            .edges()
            .iter()
            .zip(&state.weights)
            .map(|(e, &w)| EdgeView { u: e.u, v: e.v, w })
            .collect(),
        token: state.token,
        to_move,
        legal_moves: session.graph.legal_moves(state).into_iter().map(MoveBody::from).collect(),
        history: session.history.iter().copied().map(MoveBody::from).collect(),
        terminal,
        loser: terminal.then_some(to_move),
    }
}

fn lookup(app: &AppState, id: &str) -> Result<SharedSession, ApiError> {
    let not_found = || ApiError::NotFound(id.to_string());
    let id: Uuid = id.parse().map_err(|_| not_found())?;
    app.sessions.get(&id).ok_or_else(not_found)
}

/// Locks the session and confirms its state still equals the replayed
/// history before handing it out.
fn checked(session: &SharedSession) -> Result<parking_lot::MutexGuard<'_, GameSession>, ApiError> {
    let guard = session.lock();
    guard.check().map_err(|e| ApiError::Internal(e.to_string()))?;
    Ok(guard)
}

fn budget_message(e: &SolveError) -> String {
    format!("oracle unavailable: {e}")
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError::Internal(e.to_string()))?
}

pub async fn create_game(State(app): State<AppState>, Json(req): Json<CreateGame>) -> Result<Json<GameView>, ApiError> {
    let graph = match (&req.instance, &req.family) {
        (Some(text), None) => parse_instance(text).map_err(|e| ApiError::BadRequest(e.to_string()))?,
        (None, Some(family)) => {
            let family: Family = family.parse().map_err(|e: nimgraph_core::FamilyError| ApiError::BadRequest(e.to_string()))?;
            let weights = WeightSpec::parse(req.weights.as_deref().unwrap_or("uniform:1"), req.seed)
                .map_err(|e| ApiError::BadRequest(e.to_string()))?;
            generate(family, &weights).map_err(|e| ApiError::BadRequest(e.to_string()))?
        }
        _ => return Err(ApiError::BadRequest("give exactly one of `instance` or `family`".into())),
    };
    let shared = app.sessions.insert(GameSession::new(graph, req.engine));
    let session = checked(&shared)?;
    Ok(Json(view(&session)))
}

pub async fn get_game(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<GameView>, ApiError> {
    let shared = lookup(&app, &id)?;
    let session = checked(&shared)?;
    Ok(Json(view(&session)))
}

pub async fn submit_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    Json(mv): Json<MoveBody>,
) -> Result<Json<GameView>, ApiError> {
    let shared = lookup(&app, &id)?;
    let mut session = checked(&shared)?;
    if session.is_terminal() {
        return Err(ApiError::Conflict("the game is over".into()));
    }
    session.play(Move::new(mv.to, mv.new_weight)).map_err(|e| ApiError::Conflict(e.to_string()))?;
    Ok(Json(view(&session)))
}

/// Strategy mode plays the dispatcher's move when it names one and asks the
/// oracle otherwise; oracle mode always asks the oracle.
fn engine_choice(app: &AppState, session: &GameSession) -> Result<(Move, String), ApiError> {
    let state = &session.state;
    if session.engine == EngineMode::Strategy {
        let d = dispatch(&session.graph, state);
        if let (Some(kind), Some(mv)) = (d.strategy, d.chosen) {
            return Ok((mv, kind.name().to_string()));
        }
    }
    let mut solver = Solver::new(&session.graph, app.config.budget).map_err(|e| ApiError::Unavailable(budget_message(&e)))?;
    let analysis = solver.solve(state).map_err(|e| ApiError::Unavailable(budget_message(&e)))?;
    // With no winning move every reply loses; take the first legal one.
    let mv = analysis
        .optimal_moves
        .first()
        .copied()
        .or_else(|| session.graph.legal_moves(state).first().copied())
        .expect("non-terminal state has a move");
    Ok((mv, "oracle".into()))
}

pub async fn engine_move(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<EngineReply>, ApiError> {
    let shared = lookup(&app, &id)?;
    blocking(move || {
        let mut session = checked(&shared)?;
        if session.is_terminal() {
            return Err(ApiError::Conflict("the game is over".into()));
        }
        let (mv, strategy) = engine_choice(&app, &session)?;
        session.play(mv).map_err(|e| ApiError::Internal(e.to_string()))?;
        Ok(EngineReply { mv: mv.into(), strategy, game: view(&session) })
    })
    .await
    .map(Json)
}

fn analyze(app: &AppState, session: &GameSession) -> AnalysisView {
    let state: &GameState = &session.state;
    let d = dispatch(&session.graph, state);
    let mut out = AnalysisView {
        oracle: "available",
        oracle_error: None,
        winner: None,
        grundy: None,
        optimal_moves: None,
        states_visited: None,
        tags: detect(&session.graph, state).iter().map(ToString::to_string).collect(),
        prediction: d.prediction.to_string(),
        strategy: d.strategy.map(|k| k.name().to_string()),
        strategy_move: d.chosen.map(MoveBody::from),
    };
    match Solver::new(&session.graph, app.config.budget).and_then(|mut s| s.solve(state)) {
        Ok(a) => {
            out.winner = Some(a.winner);
            out.grundy = Some(a.grundy);
            out.optimal_moves = Some(a.optimal_moves.into_iter().map(MoveBody::from).collect());
            out.states_visited = Some(a.states_visited);
        }
        Err(e) => {
            out.oracle = "unavailable";
            out.oracle_error = Some(e.to_string());
        }
    }
    out
}

pub async fn analysis(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<AnalysisView>, ApiError> {
    let shared = lookup(&app, &id)?;
    blocking(move || {
        let session = checked(&shared)?;
        Ok(analyze(&app, &session))
    })
    .await
    .map(Json)
}
