//! One row per note event:
//!
//! ```text
//! voice,start_tick,duration_ticks,frequency_hz,pitch_index,octave,letter,block
//! 0,0,4,440.0000,0,0,A,0
//! ```
//!
//! UTF-8 with LF line endings, frequencies with four decimals and a dot
//! separator, rows sorted by voice then start tick.

use std::io::{Read, Write};
use std::path::Path;

use padberg_core::{Mode, NoteEvent, PitchClass24, Score};

use super::ExchangeError;

pub const CSV_HEADER: [&str; 8] =
    ["voice", "start_tick", "duration_ticks", "frequency_hz", "pitch_index", "octave", "letter", "block"];

/// Largest accepted gap between a stored frequency and its table value.
const FREQUENCY_TOLERANCE_HZ: f64 = 1e-4;

fn csv_error(e: csv::Error) -> ExchangeError {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => ExchangeError::Io(io),
        other => ExchangeError::parse(line, format!("{other:?}")),
    }
}

fn sorted_events(score: &Score, monophonic: bool) -> Vec<&NoteEvent> {
    let mut events: Vec<_> = score.events.iter().filter(|e| !monophonic || e.voice == 0).collect();
    events.sort_by_key(|e| (e.voice, e.start_tick));
    events
}

/// Writes `score`; with `monophonic` only voice 0 is kept.
pub fn write_csv<W: Write>(score: &Score, monophonic: bool, out: W) -> Result<(), ExchangeError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for e in sorted_events(score, monophonic) {
        w.write_record([
            e.voice.to_string(),
            e.start_tick.to_string(),
            e.duration_ticks.to_string(),
            format!("{:.4}", e.frequency_hz),
            e.pitch_index.value().to_string(),
            e.octave.to_string(),
            e.letter.to_string(),
            e.block.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn score_to_csv(score: &Score, monophonic: bool) -> String {
    let mut out = Vec::new();
    write_csv(score, monophonic, &mut out).expect("writing to memory");
    String::from_utf8(out).expect("csv output is ascii")
}

pub fn export_csv(score: &Score, monophonic: bool, path: impl AsRef<Path>) -> Result<(), ExchangeError> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_csv(score, monophonic, file)
}

fn field<T: std::str::FromStr>(record: &csv::StringRecord, idx: usize, line: u64) -> Result<T, ExchangeError> {
    let raw = &record[idx];
    raw.parse().map_err(|_| ExchangeError::parse(line, format!("bad {} value {raw:?}", CSV_HEADER[idx])))
}

/// Reads a piano-roll CSV back into a score.
///
/// Voice count, repeats, mode and measure length are not stored in the
/// file; they are recovered from the events: each row note occurs once per
/// repeat, later voices enter one measure apart, and a transposed second
/// voice marks a fugue.
pub fn read_csv<R: Read>(input: R) -> Result<Score, ExchangeError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = reader.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(ExchangeError::parse(1, format!("expected header {}", CSV_HEADER.join(","))));
    }

    let mut events = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let voice: u8 = field(&record, 0, line)?;
        let pitch: u8 = field(&record, 4, line)?;
        let letter: char = field(&record, 6, line)?;
        let event = NoteEvent {
            voice,
            start_tick: field(&record, 1, line)?,
            duration_ticks: field(&record, 2, line)?,
            frequency_hz: field(&record, 3, line)?,
            pitch_index: PitchClass24::new(pitch)
                .ok_or_else(|| ExchangeError::parse(line, format!("pitch index {pitch} out of range")))?,
            octave: field(&record, 5, line)?,
            letter,
            block: field(&record, 7, line)?,
        };
        if voice > 2 {
            return Err(ExchangeError::InvariantViolation { line, message: format!("voice {voice} > 2") });
        }
        if event.duration_ticks == 0 {
            return Err(ExchangeError::InvariantViolation { line, message: "zero duration".into() });
        }
        let expected = event.expected_frequency();
        if (event.frequency_hz - expected).abs() > FREQUENCY_TOLERANCE_HZ {
            return Err(ExchangeError::InvariantViolation {
                line,
                message: format!(
                    "frequency {} does not match pitch {} octave {} ({expected:.4} Hz)",
                    event.frequency_hz, pitch, event.octave
                ),
            });
        }
        events.push(NoteEvent { frequency_hz: expected, ..event });
    }
    if events.is_empty() {
        return Err(ExchangeError::parse(1, "no note rows"));
    }
    events.sort_by_key(|e| (e.voice, e.start_tick));
    Ok(infer_layout(events))
}

fn infer_layout(events: Vec<NoteEvent>) -> Score {
    let voices = events.iter().map(|e| e.voice).max().unwrap_or(0) + 1;
    let lead: Vec<&NoteEvent> = events.iter().filter(|e| e.voice == 0).collect();
    let first = lead.first().copied();
    let same_note = |a: &NoteEvent, b: &NoteEvent| {
        (a.pitch_index, a.octave, a.letter, a.block, a.duration_ticks)
            == (b.pitch_index, b.octave, b.letter, b.block, b.duration_ticks)
    };

    let mut repeats = first.map_or(1, |f| lead.iter().filter(|e| same_note(e, f)).count()).max(1);
    if !lead.len().is_multiple_of(repeats) {
        repeats = 1;
    }
    let row = &lead[..lead.len() / repeats];

    let second = events.iter().find(|e| e.voice == 1);
    let measure_ticks = match second {
        Some(e) => e.start_tick,
        None => {
            let ticks: u64 = row.iter().map(|e| u64::from(e.duration_ticks)).sum();
            let mut blocks: Vec<usize> = row.iter().map(|e| e.block).collect();
            blocks.dedup();
            ticks.div_ceil(blocks.len().max(1) as u64)
        }
    };
    let mode = match (first, second) {
        (Some(a), Some(b)) if a.pitch_index != b.pitch_index => Mode::Fugue,
        _ => Mode::Canon,
    };
    Score { voices, mode, measure_ticks, repeats: repeats as u32, events }
}

pub fn import_csv(path: impl AsRef<Path>) -> Result<Score, ExchangeError> {
    read_csv(std::io::BufReader::new(std::fs::File::open(path)?))
}
