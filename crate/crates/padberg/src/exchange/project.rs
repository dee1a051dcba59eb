//! Versioned JSON project files.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "text": "Ave Maria",
//!   "config": {
//!     "voices": 3, "mode": "canon", "repeats": 2,
//!     "render": { "sample_rate": 44100, "tick_seconds": 0.125, ... }
//!   },
//!   "score": { "voices": 3, "mode": "canon", "measure_ticks": 12, ... }
//! }
//! ```

use std::path::Path;

use padberg_core::{compose, ComposeConfig, Mode, Score};
use serde::{Deserialize, Serialize};

use super::ExchangeError;
use crate::render::RenderConfig;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectConfig {
    pub voices: u8,
    pub mode: Mode,
    pub repeats: u32,
    #[serde(default)]
    pub render: RenderConfig,
}

impl ProjectConfig {
    pub fn compose_config(&self) -> ComposeConfig {
        ComposeConfig { voices: self.voices, mode: self.mode, repeats: self.repeats }
    }
}

impl Default for ProjectConfig {
    fn default() -> Self {
        let c = ComposeConfig::default();
        Self { voices: c.voices, mode: c.mode, repeats: c.repeats, render: RenderConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectFile {
    pub schema_version: u64,
    pub text: String,
    pub config: ProjectConfig,
    pub score: Score,
}

impl ProjectFile {
    /// Runs the pipeline on `text` and packages the result.
    pub fn derive(text: &str, config: ProjectConfig) -> Result<Self, padberg_core::Error> {
        let score = compose(text, &config.compose_config())?.score;
        Ok(Self { schema_version: SCHEMA_VERSION, text: text.to_string(), config, score })
    }

    /// Recomputes the score from the stored text and config.
    pub fn rederive(&self) -> Result<Score, padberg_core::Error> {
        Ok(compose(&self.text, &self.config.compose_config())?.score)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("project serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ExchangeError> {
        let json_err = |e: serde_json::Error| ExchangeError::Parse { line: e.line() as u64, message: e.to_string() };
        let value: serde_json::Value = serde_json::from_str(text).map_err(json_err)?;
        let found = value
            .get("schema_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| ExchangeError::parse(1, "missing schema_version"))?;
        if found != SCHEMA_VERSION {
            return Err(ExchangeError::VersionMismatch { found, supported: SCHEMA_VERSION });
        }
        serde_json::from_str(text).map_err(json_err)
    }
}

pub fn save_project(project: &ProjectFile, path: impl AsRef<Path>) -> Result<(), ExchangeError> {
    std::fs::write(path, project.to_json())?;
    Ok(())
}

pub fn load_project(path: impl AsRef<Path>) -> Result<ProjectFile, ExchangeError> {
    ProjectFile::from_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::Instrument;

    fn project() -> ProjectFile {
        let config = ProjectConfig {
            voices: 3,
            mode: Mode::Fugue,
            repeats: 2,
            render: RenderConfig {
                instrument: Instrument::Sample("one".into()),
                tick_seconds: 0.2,
                ..Default::default()
            },
        };
        ProjectFile::derive("Sing a song of sixpence", config).unwrap()
    }

    #[test]
    fn save_load_save_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
        let p = project();
        save_project(&p, &a).unwrap();
        let loaded = load_project(&a).unwrap();
        assert_eq!(loaded, p);
        save_project(&loaded, &b).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }

    #[test]
    fn newer_schema_is_refused() {
        let json = project().to_json().replacen("\"schema_version\": 1", "\"schema_version\": 999", 1);
        let err = ProjectFile::from_json(&json).unwrap_err();
        assert!(matches!(err, ExchangeError::VersionMismatch { found: 999, supported: 1 }));
    }

    #[test]
    fn garbage_is_a_parse_error() {
        assert!(matches!(
            ProjectFile::from_json("{\n  \"schema_version\": 1,\n  nope"),
            Err(ExchangeError::Parse { line: 3, .. })
        ));
        assert!(matches!(ProjectFile::from_json("{}"), Err(ExchangeError::Parse { .. })));
    }

    #[test]
    fn stored_score_matches_rederivation() {
        let p = ProjectFile::from_json(&project().to_json()).unwrap();
        assert_eq!(p.rederive().unwrap(), p.score);
    }
}
