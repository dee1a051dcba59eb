//! Letters to pitches, the tone row, and canon/fugue scores.

use alloc::vec::Vec;

use num_integer::gcd;

use crate::pitch::{PitchClass24, PitchTable};
use crate::textparse::{BlockSet, LetterEvent, NormalizedText};
use crate::Error;

/// Longest possible tone row.
pub const MAX_ROW_LEN: usize = 24;

/// Transposition step applied per voice in fugue mode, the mod-24 analogue
/// of a perfect fourth.
pub const FUGUE_STEP: i64 = 11;

/// Maps a letter to its table index.
///
/// A..L take 0..11 (I at 8), M..U take 12..20, V and W share 21, X is 22 and
/// Z is 23. Y borrows I's pitch the first time it appears and Z's after.
pub fn letter_to_index(letter: char, y_seen_before: bool) -> Result<PitchClass24, Error> {
    if !letter.is_ascii_alphabetic() {
        return Err(Error::NonLetter(letter));
    }
    let index = match letter.to_ascii_uppercase() {
        c @ 'A'..='U' => c as u8 - b'A',
        'V' | 'W' => 21,
        'X' => 22,
        'Y' if !y_seen_before => 8,
        'Y' | 'Z' => 23,
        _ => unreachable!(),
    };
    Ok(PitchClass24::new(index).expect("index below 24"))
}

/// Octave displacement for each entry so that repeated pitches stay
/// distinct: the k-th occurrence of a pitch moves to 0, +1, -1, +2, -2, ...
pub fn displace_repeats(indices: &[PitchClass24]) -> Vec<i32> {
    let mut seen = [0i32; 24];
    indices
        .iter()
        .map(|pc| {
            let count = &mut seen[pc.value() as usize];
            *count += 1;
            let k = *count;
            if k % 2 == 0 {
                k / 2
            } else {
                -(k - 1) / 2
            }
        })
        .collect()
}

/// Tick durations for a row's letters.
///
/// Vowels last two ticks and consonants one. When the row length is coprime
/// to its vowel count, the last note of every block gains a tick; when it is
/// coprime to its block count, the final note gains a tick.
pub fn derive_rhythm(letters: &[LetterEvent]) -> Vec<u32> {
    let len = letters.len();
    if len == 0 {
        return Vec::new();
    }
    let vowels = letters.iter().filter(|l| l.is_vowel).count();
    let blocks = 1 + letters.windows(2).filter(|w| w[0].block != w[1].block).count();

    let mut durations: Vec<u32> = letters.iter().map(|l| if l.is_vowel { 2 } else { 1 }).collect();
    if gcd(len, vowels) == 1 {
        for i in 0..len {
            if i + 1 == len || letters[i].block != letters[i + 1].block {
                durations[i] += 1;
            }
        }
    }
    if gcd(len, blocks) == 1 {
        durations[len - 1] += 1;
    }
    durations
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToneNote {
    pub pitch: PitchClass24,
    pub octave: i32,
    pub duration_ticks: u32,
    pub source: LetterEvent,
}

impl ToneNote {
    pub fn frequency_hz(&self) -> f64 {
        PitchTable::frequency(self.pitch, self.octave)
    }
}

/// The melody seed: at most 24 notes, no two sharing pitch and octave.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToneRow {
    notes: Vec<ToneNote>,
    blocks: usize,
}

impl ToneRow {
    pub fn notes(&self) -> &[ToneNote] {
        &self.notes
    }

    pub fn len(&self) -> usize {
        self.notes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.notes.is_empty()
    }

    pub fn vowels(&self) -> usize {
        self.notes.iter().filter(|n| n.source.is_vowel).count()
    }

    pub fn consonants(&self) -> usize {
        self.len() - self.vowels()
    }

    /// Number of text blocks the row draws on.
    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn total_ticks(&self) -> u64 {
        self.notes.iter().map(|n| u64::from(n.duration_ticks)).sum()
    }

    /// Ticks between successive voice entries: total row ticks over the
    /// block count, rounded up.
    pub fn measure_ticks(&self) -> u64 {
        self.total_ticks().div_ceil(self.blocks.max(1) as u64)
    }
}

/// Builds the tone row from the longest run of leading blocks that fits in
/// 24 letters. A first block longer than that is cut to its first 24.
pub fn build_tone_row(bs: &BlockSet, nt: &NormalizedText) -> ToneRow {
    let mut end = 0;
    let mut blocks = 0;
    for block in bs.iter() {
        if block.letters.end > MAX_ROW_LEN {
            break;
        }
        end = block.letters.end;
        blocks += 1;
    }
    if blocks == 0 && !bs.is_empty() {
        end = MAX_ROW_LEN.min(nt.len());
        blocks = 1;
    }

    let letters = &nt.letters()[..end];
    let mut y_seen = false;
    let pitches: Vec<_> = letters
        .iter()
        .map(|l| {
            let pc = letter_to_index(l.letter, y_seen).expect("normalized text holds letters only");
            y_seen |= l.letter == 'Y';
            pc
        })
        .collect();
    let octaves = displace_repeats(&pitches);
    let durations = derive_rhythm(letters);

    let notes = letters
        .iter()
        .zip(pitches)
        .zip(octaves)
        .zip(durations)
        .map(|(((&source, pitch), octave), duration_ticks)| ToneNote { pitch, octave, duration_ticks, source })
        .collect();
    ToneRow { notes, blocks }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Mode {
    #[default]
    Canon,
    Fugue,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Canon => "canon",
            Mode::Fugue => "fugue",
        }
    }
}

impl core::str::FromStr for Mode {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.to_ascii_lowercase().as_str() {
            "canon" => Ok(Mode::Canon),
            "fugue" => Ok(Mode::Fugue),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NoteEvent {
    pub voice: u8,
    pub start_tick: u64,
    pub duration_ticks: u32,
    pub frequency_hz: f64,
    pub pitch_index: PitchClass24,
    pub octave: i32,
    /// Source letter of the row note.
    pub letter: char,
    /// Source block of the row note.
    pub block: usize,
}

impl NoteEvent {
    pub fn end_tick(&self) -> u64 {
        self.start_tick + u64::from(self.duration_ticks)
    }

    /// The frequency this event must carry for its pitch and octave.
    pub fn expected_frequency(&self) -> f64 {
        PitchTable::frequency(self.pitch_index, self.octave)
    }
}

/// A multi-voice piano roll.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Score {
    pub voices: u8,
    pub mode: Mode,
    pub measure_ticks: u64,
    pub repeats: u32,
    /// Sorted by voice, then start tick.
    pub events: Vec<NoteEvent>,
}

impl Score {
    pub fn voice_events(&self, voice: u8) -> impl Iterator<Item = &NoteEvent> {
        self.events.iter().filter(move |e| e.voice == voice)
    }

    pub fn end_tick(&self) -> u64 {
        self.events.iter().map(NoteEvent::end_tick).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Lays the row out for `voices` voices, each playing it `repeats` times and
/// entering one measure after the previous voice. Fugue voices are
/// transposed by 11 steps per voice.
pub fn assemble_score(row: &ToneRow, voices: u8, mode: Mode, repeats: u32) -> Result<Score, Error> {
    if !(1..=3).contains(&voices) {
        return Err(Error::InvalidVoices(voices));
    }
    if repeats == 0 {
        return Err(Error::InvalidRepeats);
    }
    let measure_ticks = row.measure_ticks();
    let row_ticks = row.total_ticks();

    let mut events = Vec::with_capacity(row.len() * repeats as usize * voices as usize);
    for voice in 0..voices {
        let shift = match mode {
            Mode::Canon => 0,
            Mode::Fugue => FUGUE_STEP * i64::from(voice),
        };
        let mut tick = u64::from(voice) * measure_ticks;
        for _ in 0..repeats {
            for note in row.notes() {
                let pitch = note.pitch.transpose(shift);
                events.push(NoteEvent {
                    voice,
                    start_tick: tick,
                    duration_ticks: note.duration_ticks,
                    frequency_hz: PitchTable::frequency(pitch, note.octave),
                    pitch_index: pitch,
                    octave: note.octave,
                    letter: note.source.letter,
                    block: note.source.block,
                });
                tick += u64::from(note.duration_ticks);
            }
        }
        debug_assert_eq!(tick, u64::from(voice) * measure_ticks + row_ticks * u64::from(repeats));
    }
    Ok(Score { voices, mode, measure_ticks, repeats, events })
}
