//! Text in, score out.

use crate::log::ProcessingLog;
use crate::melodygen::{assemble_score, build_tone_row, Mode, Score, ToneRow};
use crate::textparse::{extract_metadata, normalize, segment_blocks, BlockSet, NormalizedText, TextMetadata};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComposeConfig {
    pub voices: u8,
    pub mode: Mode,
    pub repeats: u32,
}

impl Default for ComposeConfig {
    fn default() -> Self {
        Self { voices: 1, mode: Mode::Canon, repeats: 2 }
    }
}

/// Everything derived from one input text.
#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    pub text: NormalizedText,
    pub blocks: BlockSet,
    pub row: ToneRow,
    pub metadata: TextMetadata,
    pub score: Score,
    pub log: ProcessingLog,
}

impl Composition {
    pub fn source(&self) -> &str {
        self.text.source()
    }

    /// Re-lays the same row under a different configuration.
    pub fn rearrange(&mut self, config: &ComposeConfig) -> Result<(), Error> {
        self.score = assemble_score(&self.row, config.voices, config.mode, config.repeats)?;
        Ok(())
    }
}

pub fn compose(text: &str, config: &ComposeConfig) -> Result<Composition, Error> {
    let nt = normalize(text)?;
    let blocks = segment_blocks(&nt);
    let row = build_tone_row(&blocks, &nt);
    let metadata = extract_metadata(&blocks, &row);
    let score = assemble_score(&row, config.voices, config.mode, config.repeats)?;
    let log = ProcessingLog::build(&nt, &blocks, &row, &metadata);
    Ok(Composition { text: nt, blocks, row, metadata, score, log })
}
