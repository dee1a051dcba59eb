//! Score to PCM rendering.
//!
//! Every note is synthesized on its own (a sine, or a resampled clip),
//! shaped with linear fades, and summed into a mono mix which is then
//! peak-normalized to the configured gain.

use std::f64::consts::TAU;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use padberg_core::{NoteEvent, Score};
use serde::{Deserialize, Serialize};

use crate::wav;

pub const BIT_DEPTH: u16 = 16;
pub const FULL_SCALE: f64 = i16::MAX as f64;

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("score has no events")]
    EmptyScore,
    #[error("no sample named {0:?}")]
    MissingSample(String),
    #[error("invalid render config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Wav(#[from] wav::WavError),
}

/// `sine` or the name of a clip in the sample directory.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", from = "String")]
pub enum Instrument {
    #[default]
    Sine,
    Sample(String),
}

impl From<String> for Instrument {
    fn from(s: String) -> Self {
        if s.eq_ignore_ascii_case("sine") {
            Instrument::Sine
        } else {
            Instrument::Sample(s)
        }
    }
}

impl From<Instrument> for String {
    fn from(i: Instrument) -> String {
        i.to_string()
    }
}

impl FromStr for Instrument {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(s.to_string().into())
    }
}

impl fmt::Display for Instrument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instrument::Sine => f.write_str("sine"),
            Instrument::Sample(name) => f.write_str(name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderConfig {
    pub sample_rate: u32,
    pub tick_seconds: f64,
    pub instrument: Instrument,
    /// Peak level of the output relative to full scale.
    pub gain: f64,
    pub fade_ms: f64,
    /// Pitch a sample clip sounds at when played unshifted.
    pub sample_root_hz: f64,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            sample_rate: 44_100,
            tick_seconds: 0.125,
            instrument: Instrument::Sine,
            gain: 0.8,
            fade_ms: 10.0,
            sample_root_hz: 440.0,
        }
    }
}

impl RenderConfig {
    pub fn validate(&self) -> Result<(), RenderError> {
        let bad = |msg: &str| Err(RenderError::InvalidConfig(msg.into()));
        if self.sample_rate == 0 {
            return bad("sample_rate must be positive");
        }
        if !(self.tick_seconds.is_finite() && self.tick_seconds > 0.0) {
            return bad("tick_seconds must be positive");
        }
        if !(0.0..=1.0).contains(&self.gain) {
            return bad("gain must lie in [0, 1]");
        }
        if !(self.fade_ms.is_finite() && self.fade_ms >= 0.0) {
            return bad("fade_ms must be non-negative");
        }
        if !(self.sample_root_hz.is_finite() && self.sample_root_hz > 0.0) {
            return bad("sample_root_hz must be positive");
        }
        Ok(())
    }

    fn ticks_to_samples(&self, ticks: u64) -> f64 {
        ticks as f64 * self.tick_seconds * f64::from(self.sample_rate)
    }

    /// First sample index at or after `tick`.
    pub fn tick_start_sample(&self, tick: u64) -> usize {
        // absorb float noise such as 0.1 * 44100 = 4410.000000000001
        (self.ticks_to_samples(tick) - 1e-6).ceil().max(0.0) as usize
    }

    /// Buffer length in samples for a score ending at `end_tick`.
    pub fn buffer_len(&self, end_tick: u64) -> usize {
        self.tick_start_sample(end_tick)
    }
}

/// Mono 16-bit PCM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AudioBuffer {
    pub samples: Vec<i16>,
    pub sample_rate: u32,
}

impl AudioBuffer {
    pub fn duration_seconds(&self) -> f64 {
        self.samples.len() as f64 / f64::from(self.sample_rate)
    }

    pub fn peak(&self) -> u16 {
        self.samples.iter().map(|s| s.unsigned_abs()).max().unwrap_or(0)
    }
}

/// A decoded sample clip, mono, in [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Clip {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

/// Named WAV clips in a directory, addressed as `<dir>/<name>.wav`.
#[derive(Debug, Clone, Default)]
pub struct SampleLibrary {
    dir: Option<PathBuf>,
}

impl SampleLibrary {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: Some(dir.into()) }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path_for(&self, name: &str) -> Option<PathBuf> {
        let valid = !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        match (&self.dir, valid) {
            (Some(dir), true) => Some(dir.join(format!("{name}.wav"))),
            _ => None,
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.path_for(name).is_some_and(|p| p.is_file())
    }

    /// Names of the available clips, sorted.
    pub fn names(&self) -> Vec<String> {
        let Some(dir) = &self.dir else { return Vec::new() };
        let Ok(entries) = std::fs::read_dir(dir) else { return Vec::new() };
        let mut names: Vec<String> = entries
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let path = e.path();
                (path.extension()? == "wav").then(|| path.file_stem()?.to_str().map(String::from))?
            })
            .filter(|n| self.path_for(n).is_some())
            .collect();
        names.sort();
        names
    }

    pub fn load(&self, name: &str) -> Result<Clip, RenderError> {
        let path =
            self.path_for(name).filter(|p| p.is_file()).ok_or_else(|| RenderError::MissingSample(name.to_string()))?;
        let clip = wav::read_clip(&path)?;
        if clip.samples.is_empty() {
            return Err(RenderError::MissingSample(name.to_string()));
        }
        Ok(clip)
    }
}

enum Voice {
    Sine,
    Clip(Clip),
}

/// Sums all notes of `score` without normalization.
pub fn mix_score(score: &Score, cfg: &RenderConfig, samples: &SampleLibrary) -> Result<Vec<f64>, RenderError> {
    cfg.validate()?;
    if score.is_empty() {
        return Err(RenderError::EmptyScore);
    }
    let voice = match &cfg.instrument {
        Instrument::Sine => Voice::Sine,
        Instrument::Sample(name) => Voice::Clip(samples.load(name)?),
    };
    let mut mix = vec![0.0; cfg.buffer_len(score.end_tick())];
    for event in &score.events {
        add_note(&mut mix, event, cfg, &voice);
    }
    Ok(mix)
}

fn add_note(mix: &mut [f64], event: &NoteEvent, cfg: &RenderConfig, voice: &Voice) {
    let start = cfg.tick_start_sample(event.start_tick).min(mix.len());
    let end = cfg.tick_start_sample(event.end_tick()).min(mix.len());
    let len = end - start;
    if len == 0 {
        return;
    }
    let fade = ((cfg.fade_ms / 1000.0 * f64::from(cfg.sample_rate)).round() as usize).min(len / 2);
    let sr = f64::from(cfg.sample_rate);
    let out = &mut mix[start..end];
    match voice {
        Voice::Sine => {
            let w = TAU * event.frequency_hz / sr;
            for (n, s) in out.iter_mut().enumerate() {
                *s += (w * n as f64).sin() * envelope(n, len, fade);
            }
        }
        Voice::Clip(clip) => {
            let step = event.frequency_hz / cfg.sample_root_hz * f64::from(clip.sample_rate) / sr;
            let clip_len = clip.samples.len() as f64;
            let mut pos = 0.0;
            for (n, s) in out.iter_mut().enumerate() {
                let i = pos as usize;
                let frac = pos - i as f64;
                let a = clip.samples[i];
                let b = clip.samples[(i + 1) % clip.samples.len()];
                *s += (a + (b - a) * frac) * envelope(n, len, fade);
                pos += step;
                // loop clips that are shorter than the note
                while pos >= clip_len {
                    pos -= clip_len;
                }
            }
        }
    }
}

fn envelope(n: usize, len: usize, fade: usize) -> f64 {
    if fade == 0 {
        return 1.0;
    }
    let from_end = len - 1 - n;
    if n < fade {
        n as f64 / fade as f64
    } else if from_end < fade {
        from_end as f64 / fade as f64
    } else {
        1.0
    }
}

/// Scales a mix so its peak sits at `gain` of full scale and quantizes it.
pub fn normalize_mix(mix: &[f64], gain: f64, sample_rate: u32) -> AudioBuffer {
    let peak = mix.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let scale = if peak > 0.0 { gain * FULL_SCALE / peak } else { 0.0 };
    let limit = (gain * FULL_SCALE).floor();
    let samples = mix.iter().map(|x| (x * scale).round().clamp(-limit, limit) as i16).collect();
    AudioBuffer { samples, sample_rate }
}

pub fn render_score(score: &Score, cfg: &RenderConfig, samples: &SampleLibrary) -> Result<AudioBuffer, RenderError> {
    let mix = mix_score(score, cfg, samples)?;
    Ok(normalize_mix(&mix, cfg.gain, cfg.sample_rate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use padberg_core::{compose, ComposeConfig, Mode};

    fn score(text: &str, voices: u8) -> Score {
        compose(text, &ComposeConfig { voices, mode: Mode::Canon, repeats: 1 }).unwrap().score
    }

    #[test]
    fn empty_score_is_rejected() {
        let mut s = score("A", 1);
        s.events.clear();
        let err = render_score(&s, &RenderConfig::default(), &SampleLibrary::default());
        assert!(matches!(err, Err(RenderError::EmptyScore)));
    }

    #[test]
    fn missing_sample() {
        let cfg = RenderConfig { instrument: Instrument::Sample("violin".into()), ..Default::default() };
        let err = render_score(&score("A", 1), &cfg, &SampleLibrary::default());
        assert!(matches!(err, Err(RenderError::MissingSample(n)) if n == "violin"));
        let lib = SampleLibrary::new("/nonexistent");
        assert!(!lib.contains("../etc/passwd"));
        assert!(lib.names().is_empty());
    }

    #[test]
    fn invalid_configs() {
        let s = score("A", 1);
        let lib = SampleLibrary::default();
        for cfg in [
            RenderConfig { tick_seconds: 0.0, ..Default::default() },
            RenderConfig { gain: 1.5, ..Default::default() },
            RenderConfig { sample_rate: 0, ..Default::default() },
            RenderConfig { fade_ms: -1.0, ..Default::default() },
        ] {
            assert!(matches!(render_score(&s, &cfg, &lib), Err(RenderError::InvalidConfig(_))));
        }
    }

    #[test]
    fn buffer_length_follows_end_tick() {
        let cfg = RenderConfig::default();
        assert_eq!(cfg.buffer_len(1), 5513);
        assert_eq!(cfg.buffer_len(8), 44_100);
        let cfg = RenderConfig { tick_seconds: 0.1, ..Default::default() };
        assert_eq!(cfg.buffer_len(1), 4410);
    }

    #[test]
    fn peak_is_normalized_to_gain() {
        let s = score("Ave Maria", 3);
        for gain in [0.0, 0.3, 1.0] {
            let cfg = RenderConfig { gain, ..Default::default() };
            let buf = render_score(&s, &cfg, &SampleLibrary::default()).unwrap();
            assert!(f64::from(buf.peak()) <= gain * FULL_SCALE);
            if gain > 0.0 {
                assert!(f64::from(buf.peak()) >= gain * FULL_SCALE - 1.0);
            }
        }
    }

    #[test]
    fn fades_start_and_end_at_zero() {
        let buf = render_score(&score("A", 1), &RenderConfig::default(), &SampleLibrary::default()).unwrap();
        assert_eq!(buf.samples[0], 0);
        assert_eq!(*buf.samples.last().unwrap(), 0);
    }

    #[test]
    fn envelope_shape() {
        assert_eq!(envelope(0, 10, 2), 0.0);
        assert_eq!(envelope(1, 10, 2), 0.5);
        assert_eq!(envelope(5, 10, 2), 1.0);
        assert_eq!(envelope(9, 10, 2), 0.0);
        assert_eq!(envelope(3, 10, 0), 1.0);
    }

    #[test]
    fn instrument_strings() {
        assert_eq!("SINE".parse::<Instrument>().unwrap(), Instrument::Sine);
        assert_eq!("one".parse::<Instrument>().unwrap(), Instrument::Sample("one".into()));
        assert_eq!(serde_json::to_string(&Instrument::Sample("two".into())).unwrap(), "\"two\"");
    }
}
