//! Text normalization and block segmentation.
//!
//! Input is folded to the 26 uppercase Latin letters. Every other character
//! ends the current word, except apostrophes and hyphens which are dropped
//! in place so that "don't" stays one word. Words are then grouped left to
//! right into blocks of at least [`MIN_BLOCK_LETTERS`] letters; a short
//! remainder at the end joins the previous block.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::melodygen::ToneRow;
use crate::Error;

/// Blocks close as soon as they hold this many letters.
pub const MIN_BLOCK_LETTERS: usize = 5;

/// One letter of the normalized stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LetterEvent {
    pub letter: char,
    /// Index in the normalized letter stream.
    pub position: usize,
    pub block: usize,
    /// Index within `block`.
    pub block_index: usize,
    pub is_vowel: bool,
}

/// The letter stream of an input text, with word and block structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedText {
    letters: Vec<LetterEvent>,
    words: Vec<Range<usize>>,
    /// Word index ranges, one per block.
    block_words: Vec<Range<usize>>,
    source: String,
}

impl NormalizedText {
    pub fn letters(&self) -> &[LetterEvent] {
        &self.letters
    }

    /// Letter ranges of the words, in order.
    pub fn words(&self) -> &[Range<usize>] {
        &self.words
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.block_words.len()
    }

    /// The letters as words separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.letters.len() + self.words.len());
        for (i, word) in self.words.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.extend(self.letters[word.clone()].iter().map(|l| l.letter));
        }
        out
    }
}

impl fmt::Display for NormalizedText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn is_vowel_letter(letter: char) -> bool {
    matches!(letter, 'A' | 'E' | 'I' | 'O' | 'U')
}

/// Folds `text` to uppercase letters and segments it into blocks.
pub fn normalize(text: &str) -> Result<NormalizedText, Error> {
    let mut chars = Vec::new();
    let mut words = Vec::new();
    let mut word_start = 0;
    for c in text.chars() {
        if c.is_ascii_alphabetic() {
            chars.push(c.to_ascii_uppercase());
        } else if matches!(c, '\'' | '-' | '\u{2019}') {
            continue;
        } else if chars.len() > word_start {
            words.push(word_start..chars.len());
            word_start = chars.len();
        }
    }
    if chars.len() > word_start {
        words.push(word_start..chars.len());
    }
    if chars.is_empty() {
        return Err(Error::EmptyInput);
    }

    let block_words = group_words(&words);
    let mut letters = Vec::with_capacity(chars.len());
    let mut seen_y = false;
    for (block, group) in block_words.iter().enumerate() {
        let span = words[group.start].start..words[group.end - 1].end;
        for (block_index, position) in span.enumerate() {
            let letter = chars[position];
            let is_vowel = is_vowel_letter(letter) || (letter == 'Y' && !seen_y);
            seen_y |= letter == 'Y';
            letters.push(LetterEvent { letter, position, block, block_index, is_vowel });
        }
    }

    Ok(NormalizedText { letters, words, block_words, source: text.into() })
}

/// Greedy left-to-right grouping of words into blocks.
fn group_words(words: &[Range<usize>]) -> Vec<Range<usize>> {
    let mut groups: Vec<Range<usize>> = Vec::new();
    let mut start = 0;
    let mut running = 0;
    for (i, word) in words.iter().enumerate() {
        running += word.len();
        if running >= MIN_BLOCK_LETTERS {
            groups.push(start..i + 1);
            start = i + 1;
            running = 0;
        }
    }
    if start < words.len() {
        match groups.last_mut() {
            Some(last) => last.end = words.len(),
            None => groups.push(start..words.len()),
        }
    }
    groups
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Block {
    pub id: usize,
    /// Range of the block in the letter stream.
    pub letters: Range<usize>,
    pub vowels: usize,
    pub consonants: usize,
    /// Letter ranges of the words in this block.
    pub words: Vec<Range<usize>>,
}

impl Block {
    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlockSet {
    pub blocks: Vec<Block>,
}

impl BlockSet {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Block> {
        self.blocks.iter()
    }

    /// Letter counts per block.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::letter_count).collect()
    }
}

/// Builds the per-block view of a normalized text.
pub fn segment_blocks(nt: &NormalizedText) -> BlockSet {
    let blocks = nt
        .block_words
        .iter()
        .enumerate()
        .map(|(id, group)| {
            let words: Vec<_> = nt.words[group.clone()].to_vec();
            let letters = words[0].start..words[words.len() - 1].end;
            let vowels = nt.letters[letters.clone()].iter().filter(|l| l.is_vowel).count();
            Block { id, consonants: letters.len() - vowels, letters, vowels, words }
        })
        .collect();
    BlockSet { blocks }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TextMetadata {
    pub vowels_per_block: Vec<usize>,
    pub consonants_per_block: Vec<usize>,
    pub total_vowels: usize,
    pub total_consonants: usize,
    /// Octave displacement -> number of tone-row notes at that displacement.
    pub notes_per_octave: BTreeMap<i32, usize>,
}

pub fn extract_metadata(bs: &BlockSet, row: &ToneRow) -> TextMetadata {
    let vowels_per_block: Vec<_> = bs.iter().map(|b| b.vowels).collect();
    let consonants_per_block: Vec<_> = bs.iter().map(|b| b.consonants).collect();
    let mut notes_per_octave = BTreeMap::new();
    for note in row.notes() {
        *notes_per_octave.entry(note.octave).or_insert(0) += 1;
    }
    TextMetadata {
        total_vowels: vowels_per_block.iter().sum(),
        total_consonants: consonants_per_block.iter().sum(),
        vowels_per_block,
        consonants_per_block,
        notes_per_octave,
    }
}
