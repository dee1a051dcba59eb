use std::collections::{BTreeSet, HashSet};

use padberg_core::tonal24::{build_chord, build_circle, build_scale, interval_class};
use padberg_core::{
    assemble_score, build_tone_row, compose, normalize, segment_blocks, ComposeConfig, Mode, NoteEvent, PitchClass24,
    PitchTable,
};
use proptest::prelude::*;

mod support;
use support::oracle::{all_strings, oracle_row};

fn pc(v: u8) -> PitchClass24 {
    PitchClass24::new(v).unwrap()
}

fn library_row(text: &str) -> Option<Vec<(u8, i32, u32)>> {
    let nt = normalize(text).ok()?;
    let row = build_tone_row(&segment_blocks(&nt), &nt);
    Some(row.notes().iter().map(|n| (n.pitch.value(), n.octave, n.duration_ticks)).collect())
}

#[test]
fn oracle_agrees_on_short_strings() {
    for s in all_strings(&['A', 'B', 'E'], 6) {
        assert_eq!(library_row(&s), oracle_row(&s), "{s:?}");
    }
    // exercises block boundaries and the Y rule
    for s in all_strings(&['A', 'Y', ' ', 'Z'], 7) {
        assert_eq!(library_row(&s), oracle_row(&s), "{s:?}");
    }
}

#[test]
fn generators_mod_24() {
    let ok: Vec<u32> = (0..24).filter(|&g| build_circle(g, 24).is_ok()).collect();
    assert_eq!(ok, [1, 5, 7, 11, 13, 17, 19, 23]);
    let ok12: Vec<u32> = (0..12).filter(|&g| build_circle(g, 12).is_ok()).collect();
    assert_eq!(ok12, [1, 5, 7, 11]);
}

#[test]
fn interval_class_brute_force() {
    let mut max = 0;
    for a in 0..24 {
        for b in 0..24 {
            let ic = interval_class(pc(a), pc(b));
            assert_eq!(ic, interval_class(pc(b), pc(a)));
            assert!(ic <= 12);
            max = max.max(ic);
        }
    }
    assert_eq!(max, 12);
    for d in 1..24 {
        assert_eq!(interval_class(pc(0), pc(d)), interval_class(pc(0), pc(24 - d)));
    }
}

#[test]
fn circle_segment_from_m_is_the_b_scale() {
    let circle = build_circle(13, 24).unwrap();
    let start = circle.ordering.iter().position(|&r| r == 12).unwrap();
    let segment: BTreeSet<u8> = (0..13).map(|i| circle.ordering[(start + i) % 24] as u8).collect();
    let scale: BTreeSet<u8> = build_scale(pc(1)).members.iter().map(|p| p.value()).collect();
    assert_eq!(segment, scale);
}

#[test]
fn functional_chords_cover_the_scale() {
    let scale = build_scale(pc(1));
    let set = |d| -> BTreeSet<u8> { build_chord(&scale, d).unwrap().members.iter().map(|p| p.value()).collect() };
    let (tonic, dominant, sub) = (set(1), set(9), set(6));
    let all: BTreeSet<u8> = tonic.iter().chain(&dominant).chain(&sub).copied().collect();
    let members: BTreeSet<u8> = scale.members.iter().map(|p| p.value()).collect();
    assert_eq!(all, members);
    assert_eq!(tonic.intersection(&dominant).copied().collect::<Vec<_>>(), [16]);
    assert_eq!(sub.intersection(&tonic).copied().collect::<Vec<_>>(), [1]);
    assert!(dominant.intersection(&sub).next().is_none());
}

#[test]
fn scale_step_oracle_for_every_tonic() {
    let pattern = [2u8, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1];
    for t in 0..24 {
        let mut expected = vec![t];
        let mut cur = t;
        for step in &pattern[..12] {
            cur = (cur + step) % 24;
            expected.push(cur);
        }
        let got: Vec<u8> = build_scale(pc(t)).members.iter().map(|p| p.value()).collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn table_is_harmonic() {
    for i in 0..24u8 {
        let ratio = PitchTable::exact(pc(i)) / PitchTable::exact(pc(0));
        assert_eq!(ratio, num_rational::Ratio::new(24 + u64::from(i), 24));
    }
}

fn text_strategy() -> impl Strategy<Value = String> {
    proptest::string::string_regex("[A-Za-z ,.'-]{1,80}").unwrap()
}

proptest! {
    #[test]
    fn tone_rows_are_unique_and_short(text in text_strategy()) {
        if let Ok(nt) = normalize(&text) {
            let row = build_tone_row(&segment_blocks(&nt), &nt);
            prop_assert!(row.len() <= 24 && !row.is_empty());
            let pairs: HashSet<_> = row.notes().iter().map(|n| (n.pitch, n.octave)).collect();
            prop_assert_eq!(pairs.len(), row.len());
            prop_assert_eq!(row.consonants(), row.len() - row.vowels());
        }
    }

    #[test]
    fn blocks_partition_the_stream(text in text_strategy()) {
        if let Ok(nt) = normalize(&text) {
            let bs = segment_blocks(&nt);
            prop_assert_eq!(bs.sizes().iter().sum::<usize>(), nt.len());
            let mut expected_start = 0;
            for (i, b) in bs.iter().enumerate() {
                prop_assert_eq!(b.id, i);
                prop_assert_eq!(b.letters.start, expected_start);
                expected_start = b.letters.end;
                if bs.len() > 1 {
                    prop_assert!(b.letter_count() >= 5);
                }
                for (j, l) in nt.letters()[b.letters.clone()].iter().enumerate() {
                    prop_assert_eq!(l.block, i);
                    prop_assert_eq!(l.block_index, j);
                }
            }
            let again = normalize(&nt.to_text()).unwrap();
            prop_assert_eq!(again.letters(), nt.letters());
        }
    }

    #[test]
    fn canon_and_fugue_identities(text in text_strategy(), voices in 2u8..=3, repeats in 1u32..4) {
        if let Ok(nt) = normalize(&text) {
            let row = build_tone_row(&segment_blocks(&nt), &nt);
            for mode in [Mode::Canon, Mode::Fugue] {
                let score = assemble_score(&row, voices, mode, repeats).unwrap();
                let v0: Vec<_> = score.voice_events(0).copied().collect();
                for v in 1..voices {
                    let vv: Vec<_> = score.voice_events(v).copied().collect();
                    prop_assert_eq!(vv.len(), v0.len());
                    for (a, b) in v0.iter().zip(&vv) {
                        let pitch = match mode {
                            Mode::Canon => a.pitch_index,
                            Mode::Fugue => a.pitch_index.transpose(11 * i64::from(v)),
                        };
                        let expected = NoteEvent {
                            voice: v,
                            start_tick: a.start_tick + u64::from(v) * score.measure_ticks,
                            pitch_index: pitch,
                            frequency_hz: PitchTable::frequency(pitch, a.octave),
                            ..*a
                        };
                        prop_assert_eq!(*b, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn composition_is_deterministic(text in text_strategy()) {
        let cfg = ComposeConfig { voices: 3, mode: Mode::Fugue, repeats: 2 };
        prop_assert_eq!(compose(&text, &cfg), compose(&text, &cfg));
    }

    #[test]
    fn interval_class_is_transposition_invariant(a in 0u8..24, b in 0u8..24, k in -48i64..48) {
        prop_assert_eq!(
            interval_class(pc(a), pc(b)),
            interval_class(pc(a).transpose(k), pc(b).transpose(k))
        );
    }
}
