//! Game sessions and the bounded in-memory store that holds them.

use std::num::NonZeroUsize;
use std::sync::Arc;

use lru::LruCache;
use nimgraph_core::{GameGraph, GameState, Move, MoveError};
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use uuid::Uuid;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineMode {
    Oracle,
    #[default]
    Strategy,
}

/// One game. `state` is a cache of folding `history` over the fresh state;
/// [`GameSession::check`] confirms the two agree.
#[derive(Debug)]
pub struct GameSession {
    pub id: Uuid,
    pub graph: GameGraph,
    pub state: GameState,
    pub history: Vec<Move>,
    pub engine: EngineMode,
}

#[derive(Debug, thiserror::Error)]
#[error("session {id} diverged from its history")]
pub struct Diverged {
    pub id: Uuid,
}

impl GameSession {
    pub fn new(graph: GameGraph, engine: EngineMode) -> Self {
        let state = graph.fresh_state();
        Self { id: Uuid::new_v4(), graph, state, history: Vec::new(), engine }
    }

    pub fn check(&self) -> Result<(), Diverged> {
        let mut replay = self.graph.fresh_state();
        for &mv in &self.history {
            replay = self.graph.apply_move(&replay, mv).map_err(|_| Diverged { id: self.id })?;
        }
        if replay == self.state {
            Ok(())
        } else {
            Err(Diverged { id: self.id })
        }
    }

    /// Applies a legal move; the session is untouched on error.
    pub fn play(&mut self, mv: Move) -> Result<(), MoveError> {
        self.state = self.graph.apply_move(&self.state, mv)?;
        self.history.push(mv);
        Ok(())
    }

    pub fn is_terminal(&self) -> bool {
        self.graph.is_terminal(&self.state)
    }
}

pub type SharedSession = Arc<Mutex<GameSession>>;

/// Sessions keyed by id, evicting the least recently used beyond capacity.
pub struct SessionStore {
    sessions: Mutex<LruCache<Uuid, SharedSession>>,
}

impl SessionStore {
    pub fn new(capacity: NonZeroUsize) -> Self {
        Self { sessions: Mutex::new(LruCache::new(capacity)) }
    }

    pub fn insert(&self, session: GameSession) -> SharedSession {
        let id = session.id;
        let shared = Arc::new(Mutex::new(session));
        self.sessions.lock().put(id, shared.clone());
        shared
    }

    pub fn get(&self, id: &Uuid) -> Option<SharedSession> {
        self.sessions.lock().get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nimgraph_core::{generate::unit, Family};

    fn k4() -> GameGraph {
        unit(Family::Complete { n: 4 }).unwrap()
    }

    #[test]
    fn replay_matches_after_moves() {
        let mut s = GameSession::new(k4(), EngineMode::Strategy);
        s.play(Move::new(1, 0)).unwrap();
        s.play(Move::new(2, 0)).unwrap();
        assert!(s.check().is_ok());
        assert!(s.play(Move::new(1, 0)).is_err());
        assert_eq!(s.history.len(), 2);
        s.state.token = 3;
        assert!(s.check().is_err());
    }

    #[test]
    fn store_evicts_least_recent() {
        let store = SessionStore::new(NonZeroUsize::new(2).unwrap());
        let a = store.insert(GameSession::new(k4(), EngineMode::Oracle)).lock().id;
        let b = store.insert(GameSession::new(k4(), EngineMode::Oracle)).lock().id;
        assert!(store.get(&a).is_some());
        let c = store.insert(GameSession::new(k4(), EngineMode::Oracle)).lock().id;
        assert!(store.get(&b).is_none());
        assert!(store.get(&a).is_some() && store.get(&c).is_some());
        assert_eq!(store.len(), 2);
    }
}
