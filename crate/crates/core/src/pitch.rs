//! The 24-step letter scale and its frequencies.

use core::fmt;

use num_rational::Ratio;

use crate::Error;

/// Display names in table order. Index 21 is shared by V and W, index 23 by
/// Z and every Y after the first.
const NAMES: [char; 24] = [
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'O', 'P', 'Q', 'R', 'S', 'T', 'U', 'V', 'X',
    'Z',
];

const LABELS: [&str; 24] = [
    "A", "B", "C", "D", "E", "F", "G", "H", "I/Y", "J", "K", "L", "M", "N", "O", "P", "Q", "R", "S", "T", "U", "V/W",
    "X", "Y/Z",
];

/// A pitch class modulo 24, numbered in letter-table order (0 = A, 23 = Y/Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "u8", into = "u8"))]
pub struct PitchClass24(u8);

impl PitchClass24 {
    pub const COUNT: u8 = 24;

    pub const fn new(value: u8) -> Option<Self> {
        if value < Self::COUNT {
            Some(Self(value))
        } else {
            None
        }
    }

    /// Reduces any integer mod 24.
    pub const fn wrapping(value: i64) -> Self {
        Self(value.rem_euclid(Self::COUNT as i64) as u8)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    /// Transposes upward by `steps` (negative steps go down).
    pub const fn transpose(self, steps: i64) -> Self {
        Self::wrapping(self.0 as i64 + steps)
    }

    /// Single-letter name: V for 21, X for 22, Z for 23.
    pub const fn name(self) -> char {
        NAMES[self.0 as usize]
    }

    /// Table label, e.g. `"V/W"` for 21.
    pub const fn label(self) -> &'static str {
        LABELS[self.0 as usize]
    }

    /// Parses a pitch-class name. W is an alias of V and Y of Z, following
    /// the shared table rows.
    pub fn from_name(name: char) -> Result<Self, Error> {
        let upper = name.to_ascii_uppercase();
        match upper {
            'W' => Ok(Self(21)),
            'Y' => Ok(Self(23)),
            _ => NAMES.iter().position(|&n| n == upper).map(|i| Self(i as u8)).ok_or(Error::UnknownPitchName(name)),
        }
    }
}

impl TryFrom<u8> for PitchClass24 {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self, Error> {
        Self::new(value).ok_or(Error::PitchOutOfRange(value))
    }
}

impl From<PitchClass24> for u8 {
    fn from(pc: PitchClass24) -> u8 {
        pc.0
    }
}

impl fmt::Display for PitchClass24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Frequencies of the 24 table entries: partials 24 through 47 of a
/// 440/24 Hz fundamental, so entry 0 is 440 Hz and neighbours are 55/3 Hz
/// apart.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PitchTable;

impl PitchTable {
    /// Lowest partial used by the table.
    pub const FIRST_PARTIAL: u32 = 24;

    /// The fundamental, 440/24 Hz.
    pub fn fundamental() -> Ratio<u64> {
        Ratio::new(440, 24)
    }

    /// Exact frequency of `pc` in Hz.
    pub fn exact(pc: PitchClass24) -> Ratio<u64> {
        Self::fundamental() * Ratio::from_integer(u64::from(Self::FIRST_PARTIAL) + u64::from(pc.value()))
    }

    /// Frequency of `pc` at octave displacement 0.
    pub fn entry(pc: PitchClass24) -> f64 {
        440.0 * f64::from(Self::FIRST_PARTIAL + u32::from(pc.value())) / 24.0
    }

    /// Frequency of `pc` shifted by `octave` doublings.
    pub fn frequency(pc: PitchClass24, octave: i32) -> f64 {
        Self::entry(pc) * pow2(octave)
    }

    pub fn entries() -> [f64; 24] {
        core::array::from_fn(|i| Self::entry(PitchClass24(i as u8)))
    }
}

/// `2^exp` as an exact power of two.
pub fn pow2(exp: i32) -> f64 {
    if (-1022..=1023).contains(&exp) {
        f64::from_bits(((exp + 1023) as u64) << 52)
    } else if exp > 0 {
        f64::INFINITY
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in 0..24 {
            let pc = PitchClass24::new(v).unwrap();
            assert_eq!(PitchClass24::from_name(pc.name()).unwrap(), pc);
        }
        assert_eq!(PitchClass24::from_name('w').unwrap().value(), 21);
        assert_eq!(PitchClass24::from_name('Y').unwrap().value(), 23);
        assert!(PitchClass24::from_name('#').is_err());
        assert!(PitchClass24::new(24).is_none());
    }

    #[test]
    fn wrapping_and_transpose() {
        assert_eq!(PitchClass24::wrapping(-1).value(), 23);
        assert_eq!(PitchClass24::wrapping(49).value(), 1);
        assert_eq!(PitchClass24::new(20).unwrap().transpose(11).value(), 7);
    }

    #[test]
    fn table_endpoints() {
        assert_eq!(PitchTable::entry(PitchClass24::new(0).unwrap()), 440.0);
        assert_eq!(PitchTable::entry(PitchClass24::new(12).unwrap()), 660.0);
        let top = PitchTable::exact(PitchClass24::new(23).unwrap());
        assert_eq!(top, Ratio::new(2585, 3));
        for f in PitchTable::entries() {
            assert!((440.0..880.0).contains(&f));
        }
    }

    #[test]
    fn table_steps_are_constant() {
        let step = Ratio::new(440u64, 24);
        for i in 0..23 {
            let lo = PitchTable::exact(PitchClass24::new(i).unwrap());
            let hi = PitchTable::exact(PitchClass24::new(i + 1).unwrap());
            assert_eq!(hi - lo, step);
        }
    }

    #[test]
    fn pow2_is_exact() {
        assert_eq!(pow2(0), 1.0);
        assert_eq!(pow2(3), 8.0);
        assert_eq!(pow2(-2), 0.25);
        assert_eq!(pow2(2000), f64::INFINITY);
    }
}
