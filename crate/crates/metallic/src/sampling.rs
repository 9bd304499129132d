//! Random canonical codes and measured path costs.
//!
//! Sample `i` of a run draws from its own ChaCha stream of the run's seed, so
//! results do not depend on how samples are spread over threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exec::Execution;
use crate::navigation::{path_black, path_bottom_up, path_top_down};
use crate::numeration::{Grade, MetallicCode};

/// A uniformly chosen digit at each place among those keeping the code
/// canonical; the leading digit is nonzero. `len` must be at least 1.
pub fn random_code<R: Rng + ?Sized>(grade: Grade, len: usize, rng: &mut R) -> MetallicCode {
    assert!(len >= 1, "codes have at least one digit");
    let (d, c) = (grade.d(), grade.c());
    let mut digits = Vec::with_capacity(len);
    // Whether the digits so far end with d c*, which forbids another d.
    let mut open = false;
    for i in 0..len {
        let low = u32::from(i == 0);
        let high = if open { d - 1 } else { d };
        let digit = rng.gen_range(low..=high);
        open = digit == d || (open && digit == c);
        digits.push(digit);
    }
    MetallicCode::new(grade, digits).expect("generated digits are canonical")
}

/// The `samples` codes of a run, sample `i` drawn from stream `i` of `seed`.
pub fn sample_codes(grade: Grade, len: usize, samples: usize, seed: u64, exec: Execution) -> Vec<MetallicCode> {
    exec.map_range(samples, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        random_code(grade, len, &mut rng)
    })
}

/// Digit-visit counts of the path algorithms over a sample of codes.
#[derive(Debug, Clone, PartialEq)]
pub struct VisitStats {
    pub len: usize,
    pub samples: usize,
    pub mean_bottom_up: f64,
    pub mean_top_down: f64,
    pub max_top_down: u64,
    /// The same codes read as black-tree codes.
    pub mean_black: f64,
    pub max_black: u64,
}

/// Runs the bottom-up, top-down and black-tree path algorithms on `samples`
/// random canonical codes of length `len`.
pub fn measure(grade: Grade, len: usize, samples: usize, seed: u64, exec: Execution) -> Result<VisitStats> {
    let codes = sample_codes(grade, len, samples, seed, exec);
    let counts = exec.map(&codes, |code| -> Result<[u64; 3]> {
        Ok([path_bottom_up(code)?.digit_visits, path_top_down(code)?.digit_visits, path_black(code)?.digit_visits])
    });
    let counts = counts.into_iter().collect::<Result<Vec<_>>>()?;
    let mean = |k: usize| counts.iter().map(|c| c[k] as f64).sum::<f64>() / samples.max(1) as f64;
    let max = |k: usize| counts.iter().map(|c| c[k]).max().unwrap_or(0);
    Ok(VisitStats {
        len,
        samples,
        mean_bottom_up: mean(0),
        mean_top_down: mean(1),
        max_top_down: max(1),
        mean_black: mean(2),
        max_black: max(2),
    })
}
