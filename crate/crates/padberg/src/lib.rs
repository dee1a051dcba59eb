//! Rendering, file formats and the local service around [`padberg_core`].

pub mod exchange;
pub mod render;
pub mod service;
pub mod session;
pub mod wav;

pub use padberg_core as core;
pub use render::{render_score, AudioBuffer, Instrument, RenderConfig, RenderError, SampleLibrary};
