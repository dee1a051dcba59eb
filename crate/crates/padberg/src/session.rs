//! In-memory composition sessions.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{SystemTime, UNIX_EPOCH};

use padberg_core::{compose, ComposeConfig, Composition, Mode};
use serde::{Deserialize, Serialize};

use crate::render::{Instrument, RenderConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub voices: u8,
    pub mode: Mode,
    pub repeats: u32,
    pub instrument: Instrument,
    pub tick_seconds: f64,
}

impl Default for SessionConfig {
    fn default() -> Self {
        let c = ComposeConfig::default();
        let r = RenderConfig::default();
        Self {
            voices: c.voices,
            mode: c.mode,
            repeats: c.repeats,
            instrument: r.instrument,
            tick_seconds: r.tick_seconds,
        }
    }
}

impl SessionConfig {
    pub fn compose_config(&self) -> ComposeConfig {
        ComposeConfig { voices: self.voices, mode: self.mode, repeats: self.repeats }
    }

    /// `base` with this session's instrument and tick length.
    pub fn render_config(&self, base: &RenderConfig) -> RenderConfig {
        RenderConfig { instrument: self.instrument.clone(), tick_seconds: self.tick_seconds, ..base.clone() }
    }
}

/// Partial config update; absent fields keep their value.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigUpdate {
    pub voices: Option<u8>,
    pub mode: Option<Mode>,
    pub repeats: Option<u32>,
    pub instrument: Option<Instrument>,
    pub tick_seconds: Option<f64>,
    /// When present, must equal the session's current revision.
    pub revision: Option<u64>,
}

impl ConfigUpdate {
    pub fn apply_to(&self, config: &SessionConfig) -> SessionConfig {
        SessionConfig {
            voices: self.voices.unwrap_or(config.voices),
            mode: self.mode.unwrap_or(config.mode),
            repeats: self.repeats.unwrap_or(config.repeats),
            instrument: self.instrument.clone().unwrap_or_else(|| config.instrument.clone()),
            tick_seconds: self.tick_seconds.unwrap_or(config.tick_seconds),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
    /// Bumped on every config change.
    pub revision: u64,
    pub config: SessionConfig,
    pub composition: Composition,
}

impl Session {
    pub fn new(id: String, text: &str, config: SessionConfig) -> Result<Self, padberg_core::Error> {
        let composition = compose(text, &config.compose_config())?;
        let created_at = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Ok(Self { id, created_at, revision: 0, config, composition })
    }

    /// Replaces the config and rebuilds the score. On error nothing changes.
    pub fn reconfigure(&mut self, config: SessionConfig) -> Result<(), padberg_core::Error> {
        let mut composition = self.composition.clone();
        composition.rearrange(&config.compose_config())?;
        self.composition = composition;
        self.config = config;
        self.revision += 1;
        Ok(())
    }
}

pub type SessionHandle = Arc<Mutex<Session>>;

/// Sessions keyed by sequential ids ("1", "2", ...).
#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: Mutex<BTreeMap<String, SessionHandle>>,
    next_id: AtomicU64,
}

impl SessionStore {
    pub fn create(&self, text: &str, config: SessionConfig) -> Result<SessionHandle, padberg_core::Error> {
        // validate before spending an id so ids stay dense
        compose(text, &config.compose_config())?;
        let id = (self.next_id.fetch_add(1, Ordering::SeqCst) + 1).to_string();
        let handle = Arc::new(Mutex::new(Session::new(id.clone(), text, config)?));
        self.sessions.lock().unwrap().insert(id, handle.clone());
        Ok(handle)
    }

    pub fn get(&self, id: &str) -> Option<SessionHandle> {
        self.sessions.lock().unwrap().get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
