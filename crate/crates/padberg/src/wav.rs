//! RIFF/WAVE files: 16-bit mono PCM output, and clip loading for the
//! sample player.

use std::io::{Cursor, Read, Seek, Write};
use std::path::Path;

use crate::render::{AudioBuffer, Clip, BIT_DEPTH};

#[derive(Debug, thiserror::Error)]
pub enum WavError {
    #[error("wav i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("wav format: {0}")]
    Format(String),
}

impl From<hound::Error> for WavError {
    fn from(e: hound::Error) -> Self {
        match e {
            hound::Error::IoError(io) => WavError::Io(io),
            other => WavError::Format(other.to_string()),
        }
    }
}

fn spec(sample_rate: u32) -> hound::WavSpec {
    hound::WavSpec { channels: 1, sample_rate, bits_per_sample: BIT_DEPTH, sample_format: hound::SampleFormat::Int }
}

pub fn write_wav_to<W: Write + Seek>(buf: &AudioBuffer, out: W) -> Result<(), WavError> {
    let mut writer = hound::WavWriter::new(out, spec(buf.sample_rate))?;
    let mut w16 = writer.get_i16_writer(buf.samples.len() as u32);
    for &s in &buf.samples {
        w16.write_sample(s);
    }
    w16.flush()?;
    writer.finalize()?;
    Ok(())
}

pub fn write_wav(buf: &AudioBuffer, path: impl AsRef<Path>) -> Result<(), WavError> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_wav_to(buf, file)
}

pub fn wav_bytes(buf: &AudioBuffer) -> Result<Vec<u8>, WavError> {
    let mut cursor = Cursor::new(Vec::with_capacity(44 + 2 * buf.samples.len()));
    write_wav_to(buf, &mut cursor)?;
    Ok(cursor.into_inner())
}

/// Reads a file written by [`write_wav`]. Only 16-bit mono PCM is accepted.
pub fn read_wav_from<R: Read>(input: R) -> Result<AudioBuffer, WavError> {
    let reader = hound::WavReader::new(input)?;
    let s = reader.spec();
    if s.channels != 1 || s.bits_per_sample != BIT_DEPTH || s.sample_format != hound::SampleFormat::Int {
        return Err(WavError::Format(format!(
            "expected 16-bit mono PCM, found {} channel(s) of {}-bit {:?}",
            s.channels, s.bits_per_sample, s.sample_format
        )));
    }
    let samples = reader.into_samples::<i16>().collect::<Result<_, _>>()?;
    Ok(AudioBuffer { samples, sample_rate: s.sample_rate })
}

pub fn read_wav(path: impl AsRef<Path>) -> Result<AudioBuffer, WavError> {
    read_wav_from(std::io::BufReader::new(std::fs::File::open(path)?))
}

/// Loads any PCM or float WAV as a mono clip, averaging channels.
pub fn read_clip(path: impl AsRef<Path>) -> Result<Clip, WavError> {
    let reader = hound::WavReader::open(path)?;
    let s = reader.spec();
    let channels = usize::from(s.channels.max(1));
    let raw: Vec<f64> = match s.sample_format {
        hound::SampleFormat::Float => {
            reader.into_samples::<f32>().map(|x| x.map(f64::from)).collect::<Result<_, _>>()?
        }
        hound::SampleFormat::Int => {
            let scale = f64::from(1u32 << (s.bits_per_sample - 1));
            reader.into_samples::<i32>().map(|x| x.map(|v| f64::from(v) / scale)).collect::<Result<_, _>>()?
        }
    };
    let samples = raw.chunks(channels).map(|frame| frame.iter().sum::<f64>() / channels as f64).collect();
    Ok(Clip { samples, sample_rate: s.sample_rate })
}
