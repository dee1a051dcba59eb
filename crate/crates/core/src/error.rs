use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input contains no letters")]
    EmptyInput,
    #[error("{0:?} is not a Latin letter")]
    NonLetter(char),
    #[error("voice count must be 1, 2 or 3, got {0}")]
    InvalidVoices(u8),
    #[error("repeat count must be positive")]
    InvalidRepeats,
    #[error("{generator} does not generate the integers mod {modulus}")]
    NotAGenerator { generator: u32, modulus: u32 },
    #[error("circles are defined for moduli 12 and 24, got {0}")]
    UnsupportedModulus(u32),
    #[error("degree {degree} is outside 1..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },
    #[error("pitch index {0} is outside 0..24")]
    PitchOutOfRange(u8),
    #[error("unknown pitch class name {0:?}")]
    UnknownPitchName(char),
}
