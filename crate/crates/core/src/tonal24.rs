//! A tonal system over the 24 letter pitch classes.
//!
//! The circle generated by 11 (or its inversion 13) plays the part of the
//! circle of fifths. Thirteen adjacent positions on it form a scale of whole
//! and half steps, and stacking every other scale degree gives 5-note chords.
//! With B as tonic the chords on degrees 1, 9 and 6 (tonic, dominant,
//! subdominant) cover the whole scale.

use alloc::vec::Vec;

use num_integer::gcd;

use crate::pitch::{pow2, PitchClass24, PitchTable};
use crate::Error;

/// Scale length.
pub const SCALE_LEN: usize = 13;

/// Notes per chord.
pub const CHORD_LEN: usize = 5;

/// Generator of the circle the scale is cut from.
pub const SCALE_GENERATOR: u32 = 13;

/// Distance from a tonic up to the circle position where its scale segment
/// starts (B -> M).
const SEGMENT_OFFSET: i64 = 11;

/// Bach degree -> degree on the 13-note scale.
const DEGREE_MAP: [u8; 7] = [1, 2, 5, 6, 9, 11, 12];

/// The smaller of the two directed distances between `a` and `b`.
pub fn interval_class(a: PitchClass24, b: PitchClass24) -> u8 {
    let d = (i16::from(b.value()) - i16::from(a.value())).rem_euclid(24) as u8;
    d.min(24 - d)
}

/// Residues visited by repeatedly adding a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Circle {
    pub generator: u32,
    pub modulus: u32,
    /// `i * generator mod modulus` for `i` in `0..modulus`.
    pub ordering: Vec<u32>,
}

pub fn build_circle(generator: u32, modulus: u32) -> Result<Circle, Error> {
    if modulus != 12 && modulus != 24 {
        return Err(Error::UnsupportedModulus(modulus));
    }
    if gcd(generator, modulus) != 1 {
        return Err(Error::NotAGenerator { generator, modulus });
    }
    let ordering = (0..modulus).map(|i| (i * (generator % modulus)) % modulus).collect();
    Ok(Circle { generator, modulus, ordering })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Scale13 {
    pub tonic: PitchClass24,
    /// Ascending from the tonic.
    pub members: [PitchClass24; SCALE_LEN],
}

impl Scale13 {
    /// Pitch class at 1-based `degree`.
    pub fn degree(&self, degree: u32) -> Result<PitchClass24, Error> {
        check_degree(degree, SCALE_LEN as u32)?;
        Ok(self.members[degree as usize - 1])
    }

    pub fn contains(&self, pc: PitchClass24) -> bool {
        self.members.contains(&pc)
    }

    /// Step sizes between consecutive members, closing back to the tonic.
    pub fn steps(&self) -> [u8; SCALE_LEN] {
        core::array::from_fn(|i| {
            let next = self.members[(i + 1) % SCALE_LEN];
            (i16::from(next.value()) - i16::from(self.members[i].value())).rem_euclid(24) as u8
        })
    }
}

/// The 13-note scale on `tonic`: thirteen consecutive positions of the
/// generator-13 circle starting 11 steps above the tonic, reordered upward
/// from the tonic.
pub fn build_scale(tonic: PitchClass24) -> Scale13 {
    let start = tonic.transpose(SEGMENT_OFFSET);
    let mut members: [PitchClass24; SCALE_LEN] =
        core::array::from_fn(|i| start.transpose(i as i64 * i64::from(SCALE_GENERATOR)));
    members.sort_by_key(|pc| (i16::from(pc.value()) - i16::from(tonic.value())).rem_euclid(24));
    Scale13 { tonic, members }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Chord5 {
    pub root_degree: u32,
    pub members: [PitchClass24; CHORD_LEN],
}

/// Stacks every other degree above `degree`, wrapping around the scale.
pub fn build_chord(scale: &Scale13, degree: u32) -> Result<Chord5, Error> {
    check_degree(degree, SCALE_LEN as u32)?;
    let root = degree as usize - 1;
    let members = core::array::from_fn(|i| scale.members[(root + 2 * i) % SCALE_LEN]);
    Ok(Chord5 { root_degree: degree, members })
}

/// Maps a diatonic scale degree onto the 13-note scale, keeping tonic,
/// dominant and subdominant functions in place.
pub fn translate_degree(bach_degree: u32) -> Result<u32, Error> {
    check_degree(bach_degree, DEGREE_MAP.len() as u32)?;
    Ok(u32::from(DEGREE_MAP[bach_degree as usize - 1]))
}

/// Frequency of a key on a keyboard where key 0 sounds A at 440 Hz and
/// every 24 keys double the frequency.
pub fn keyboard_to_frequency(key: u32) -> f64 {
    let pc = PitchClass24::new((key % 24) as u8).expect("reduced mod 24");
    PitchTable::entry(pc) * pow2((key / 24) as i32)
}

fn check_degree(degree: u32, max: u32) -> Result<(), Error> {
    if (1..=max).contains(&degree) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange { degree, max })
    }
}
