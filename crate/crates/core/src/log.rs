//! Human-readable trace of a composition run.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::melodygen::ToneRow;
use crate::textparse::{BlockSet, NormalizedText, TextMetadata};

/// One line per tone-row note, one per text block, then a row summary and a
/// metadata summary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct ProcessingLog {
    pub lines: Vec<String>,
}

impl ProcessingLog {
    pub fn build(nt: &NormalizedText, bs: &BlockSet, row: &ToneRow, md: &TextMetadata) -> Self {
        let mut lines = Vec::with_capacity(row.len() + bs.len() + 2);
        for (i, note) in row.notes().iter().enumerate() {
            lines.push(format!(
                "note {:>2}: {} -> {:.2} Hz (index {}, octave {:+}), {} ticks",
                i,
                note.source.letter,
                note.frequency_hz(),
                note.pitch.value(),
                note.octave,
                note.duration_ticks,
            ));
        }
        for block in bs.iter() {
            let text: Vec<String> =
                block.words.iter().map(|w| nt.letters()[w.clone()].iter().map(|l| l.letter).collect()).collect();
            lines.push(format!(
                "block {}: {} ({} letters, {} vowels, {} consonants)",
                block.id,
                text.join(" "),
                block.letter_count(),
                block.vowels,
                block.consonants,
            ));
        }
        lines.push(format!(
            "tone row: {} notes, {} vowels, {} consonants, {} blocks, {} ticks, measure {} ticks",
            row.len(),
            row.vowels(),
            row.consonants(),
            row.block_count(),
            row.total_ticks(),
            row.measure_ticks(),
        ));
        let octaves: Vec<String> = md.notes_per_octave.iter().map(|(o, n)| format!("{:+}: {}", o, n)).collect();
        lines.push(format!(
            "text: {} vowels, {} consonants; notes per octave {{{}}}",
            md.total_vowels,
            md.total_consonants,
            octaves.join(", "),
        ));
        Self { lines }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.lines.iter().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use crate::pipeline::{compose, ComposeConfig};

    #[test]
    fn log_shape() {
        let c = compose("Ave Maria gratia plena", &ComposeConfig::default()).unwrap();
        assert_eq!(c.log.len(), c.row.len() + c.blocks.len() + 2);
        assert_eq!(c.log.lines[0], "note  0: A -> 440.00 Hz (index 0, octave +0), 2 ticks");
        assert!(c.log.lines[c.row.len()].starts_with("block 0: AVE MARIA"));
    }
}
