#![allow(dead_code)]

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Frequency of the largest FFT magnitude, zero-padded to `padded_len`
/// points and refined by parabolic interpolation around the peak bin.
pub fn spectral_peak_hz(samples: &[i16], sample_rate: u32, padded_len: usize) -> f64 {
    let mut data: Vec<Complex<f64>> = samples.iter().map(|&s| Complex::new(f64::from(s), 0.0)).collect();
    data.resize(padded_len.max(samples.len()), Complex::new(0.0, 0.0));
    let n = data.len();
    FftPlanner::new().plan_fft_forward(n).process(&mut data);
    let mags: Vec<f64> = data[..n / 2].iter().map(|c| c.norm()).collect();
    let k = (1..mags.len() - 1).max_by(|&a, &b| mags[a].total_cmp(&mags[b])).unwrap();
    let (a, b, c) = (mags[k - 1], mags[k], mags[k + 1]);
    let offset = 0.5 * (a - c) / (a - 2.0 * b + c);
    (k as f64 + offset) * f64::from(sample_rate) / n as f64
}
