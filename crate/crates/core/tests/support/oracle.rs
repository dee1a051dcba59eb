//! A straight-line reimplementation of the text -> tone row chain, written
//! without reference to the library code.

/// (pitch index, octave displacement, duration ticks) per row note.
pub type OracleNote = (u8, i32, u32);

fn euclid(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn oracle_row(text: &str) -> Option<Vec<OracleNote>> {
    // words
    let mut words: Vec<Vec<char>> = Vec::new();
    let mut current = Vec::new();
    for c in text.chars() {
        if c.is_ascii_alphabetic() {
            current.push(c.to_ascii_uppercase());
        } else if c == '\'' || c == '-' || c == '\u{2019}' {
        } else if !current.is_empty() {
            words.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        words.push(current);
    }
    if words.is_empty() {
        return None;
    }

    // blocks
    let mut blocks: Vec<Vec<char>> = Vec::new();
    let mut pending: Vec<char> = Vec::new();
    for w in &words {
        pending.extend(w);
        if pending.len() >= 5 {
            blocks.push(std::mem::take(&mut pending));
        }
    }
    if !pending.is_empty() {
        if let Some(last) = blocks.last_mut() {
            last.extend(pending);
        } else {
            blocks.push(pending);
        }
    }

    // row letters with their block number
    let mut row: Vec<(char, usize)> = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        if row.len() + block.len() > 24 {
            break;
        }
        for &c in block {
            row.push((c, b));
        }
    }
    if row.is_empty() {
        for &c in blocks[0].iter().take(24) {
            row.push((c, 0));
        }
    }

    // vowel flags and pitches; the first Y acts like I
    let mut first_y_done = false;
    let mut vowel = Vec::new();
    let mut pitch = Vec::new();
    for &(c, _) in &row {
        let p: u8 = match c {
            'V' | 'W' => 21,
            'X' => 22,
            'Z' => 23,
            'Y' => {
                if first_y_done {
                    23
                } else {
                    8
                }
            }
            _ => "ABCDEFGHIJKLMNOPQRSTU".find(c).unwrap() as u8,
        };
        vowel.push("AEIOU".contains(c) || (c == 'Y' && !first_y_done));
        if c == 'Y' {
            first_y_done = true;
        }
        pitch.push(p);
    }

    // octaves: 0, +1, -1, +2, -2, ...
    let pattern = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8, -8, 9, -9, 10, -10, 11, -11, 12];
    let mut octave = Vec::new();
    for i in 0..pitch.len() {
        let before = pitch[..i].iter().filter(|&&p| p == pitch[i]).count();
        octave.push(pattern[before]);
    }

    // rhythm
    let l = row.len();
    let v = vowel.iter().filter(|&&x| x).count();
    let mut distinct_blocks = row.iter().map(|r| r.1).collect::<Vec<_>>();
    distinct_blocks.dedup();
    let b = distinct_blocks.len();
    let mut dur: Vec<u32> = vowel.iter().map(|&x| if x { 2 } else { 1 }).collect();
    if euclid(l, v) == 1 {
        for i in 0..l {
            let last_of_block = i == l - 1 || row[i].1 != row[i + 1].1;
            if last_of_block {
                dur[i] += 1;
            }
        }
    }
    if euclid(l, b) == 1 {
        dur[l - 1] += 1;
    }

    Some((0..l).map(|i| (pitch[i], octave[i], dur[i])).collect())
}

/// Every string of length 0..=max_len over `alphabet`.
pub fn all_strings(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for s in &layer {
            for &c in alphabet {
                let mut t = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
