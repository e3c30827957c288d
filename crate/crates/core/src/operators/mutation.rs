use rand::Rng;

use crate::tour::Tour;

/// Per-gene swap mutation: each position, with probability `pm`, swaps with
/// a uniformly chosen other position. Returns the number of swaps made.
pub fn mutate<R: Rng + ?Sized>(tour: &mut Tour, pm: f64, rng: &mut R) -> usize {
    let n = tour.len();
    if n < 2 || pm <= 0.0 {
        return 0;
    }
    let pm = pm.min(1.0);
    let labels = tour.labels_mut();
    let mut swaps = 0;
    for i in 0..n {
        if rng.gen_bool(pm) {
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            labels.swap(i, j);
            swaps += 1;
        }
    }
    swaps
}
