//! Deterministic text-to-music composition.
//!
//! Text is folded to letters, grouped into blocks, and mapped onto a
//! 24-step scale built from partials 24..=47 of a 55/3 Hz fundamental. The
//! opening blocks form a tone row whose repeated pitches are spread across
//! octaves, and the row is laid out as a canon or a transposed "free fugue".
//!
//! The [`tonal24`] module carries the 24 pitch-class tonal system built on
//! the same letter ordering: interval classes, generator circles, the
//! 13-note scale and its 5-note chords.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

mod error;
pub mod log;
pub mod melodygen;
pub mod pipeline;
pub mod pitch;
pub mod textparse;
pub mod tonal24;

pub use error::Error;
pub use log::ProcessingLog;
pub use melodygen::{
    assemble_score, build_tone_row, derive_rhythm, displace_repeats, letter_to_index, Mode, NoteEvent, Score, ToneNote,
    ToneRow,
};
pub use pipeline::{compose, ComposeConfig, Composition};
pub use pitch::{PitchClass24, PitchTable};
pub use textparse::{
    extract_metadata, normalize, segment_blocks, Block, BlockSet, LetterEvent, NormalizedText, TextMetadata,
};

pub type Result<T, E = Error> = core::result::Result<T, E>;
