use std::io;
use std::path::Path;
use std::sync::{Arc, Mutex, MutexGuard};

use dashmap::DashMap;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::ApiError;
use crate::session::{NewGame, Session, SessionSnapshot};

pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct SnapshotFile {
    version: u32,
    sessions: Vec<SessionSnapshot>,
}

/// Live sessions. Each session sits behind its own lock, so one game is
/// mutated by one request at a time while different games proceed freely.
#[derive(Debug, Default, Clone)]
pub struct SessionStore {
    sessions: Arc<DashMap<String, Arc<Mutex<Session>>>>,
}

fn token() -> String {
    let mut bytes = [0u8; 16];
    rand::rng().fill_bytes(&mut bytes);
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn lock(s: &Mutex<Session>) -> MutexGuard<'_, Session> {
    s.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.sessions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sessions.is_empty()
    }

    pub fn create(&self, request: &NewGame) -> Result<Arc<Mutex<Session>>, ApiError> {
        let session = Session::create(token(), request)?;
        let id = session.id().to_string();
        let cell = Arc::new(Mutex::new(session));
        self.sessions.insert(id, cell.clone());
        Ok(cell)
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .get(id)
            .map(|e| e.value().clone())
            .ok_or_else(|| ApiError::NotFound(format!("no game with id {id:?}")))
    }

    /// Runs `f` with exclusive access to one session.
    pub fn with<R>(&self, id: &str, f: impl FnOnce(&mut Session) -> R) -> Result<R, ApiError> {
        let cell = self.get(id)?;
        let mut guard = lock(&cell);
        Ok(f(&mut guard))
    }

    pub fn remove(&self, id: &str) -> Result<(), ApiError> {
        self.sessions
            .remove(id)
            .map(|_| ())
            .ok_or_else(|| ApiError::NotFound(format!("no game with id {id:?}")))
    }

    pub fn to_json(&self) -> String {
        let mut sessions: Vec<SessionSnapshot> = self
            .sessions
            .iter()
            .map(|e| lock(e.value()).snapshot())
            .collect();
        sessions.sort_by(|a, b| a.id.cmp(&b.id));
        serde_json::to_string_pretty(&SnapshotFile {
            version: SNAPSHOT_VERSION,
            sessions,
        })
        .expect("snapshots serialize")
    }

    /// Replaces nothing: sessions from the text are added to the store.
    pub fn load_json(&self, text: &str) -> io::Result<usize> {
        let file: SnapshotFile = serde_json::from_str(text)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        if file.version != SNAPSHOT_VERSION {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                format!("unsupported snapshot version {}", file.version),
            ));
        }
        let mut restored = 0;
        for snap in &file.sessions {
            let session = Session::restore(snap)
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("{}: {e}", snap.id)))?;
            self.sessions
                .insert(snap.id.clone(), Arc::new(Mutex::new(session)));
            restored += 1;
        }
        Ok(restored)
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_json())
    }

    pub fn restore(&self, path: &Path) -> io::Result<usize> {
        self.load_json(&std::fs::read_to_string(path)?)
    }
}
