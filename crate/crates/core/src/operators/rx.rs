//! RX: keep a random `pr%` of one parent's cities in place, fill the holes in
//! the other parent's order.

use rand::seq::index;
use rand::Rng;

use crate::error::Result;
use crate::tour::Tour;

use super::{check_parents, CrossoverKind};

/// Number of positions kept from the first parent: `round(pr * n / 100)`, clamped to `0..=n`.
pub fn rx_selection_size(pr: f64, n: usize) -> usize {
    ((pr * n as f64 / 100.0).round().max(0.0) as usize).min(n)
}

/// Builds one RX offspring: cities of `donor` at `positions` (0-based) stay
/// put, the remaining positions are filled left to right with the unused
/// cities in `filler` order.
pub fn rx_offspring(donor: &Tour, filler: &Tour, positions: &[usize]) -> Tour {
    let n = donor.len();
    let mut child = vec![0u32; n];
    let mut used = vec![false; n + 1];
    for &i in positions {
        let label = donor.labels()[i];
        child[i] = label;
        used[label as usize] = true;
    }
    let mut fill = filler.labels().iter().filter(|&&l| !used[l as usize]);
    for slot in child.iter_mut().filter(|c| **c == 0) {
        *slot = *fill.next().expect("filler has enough unused cities");
    }
    Tour::from_valid(child)
}

pub(crate) fn rx_unchecked<R: Rng + ?Sized>(
    p1: &Tour,
    p2: &Tour,
    pr: f64,
    rng: &mut R,
) -> (Tour, Tour) {
    let n = p1.len();
    let k = rx_selection_size(pr, n);
    let first = index::sample(rng, n, k).into_vec();
    let second = index::sample(rng, n, k).into_vec();
    (rx_offspring(p1, p2, &first), rx_offspring(p2, p1, &second))
}

/// RX crossover. Offspring 1 keeps `pr%` of `p1` in place and takes the rest
/// in `p2` order; offspring 2 swaps the roles with fresh positions.
pub fn rx<R: Rng + ?Sized>(p1: &Tour, p2: &Tour, pr: f64, rng: &mut R) -> Result<(Tour, Tour)> {
    CrossoverKind::Rx { pr }.validate()?;
    check_parents(p1, p2, p1.len())?;
    Ok(rx_unchecked(p1, p2, pr, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tour(v: &[u32]) -> Tour {
        Tour::new(v.to_vec(), v.len()).unwrap()
    }

    #[test]
    fn keeps_selected_positions_and_fills_in_other_order() {
        let p1 = tour(&[1, 2, 3, 4, 5]);
        let p2 = tour(&[5, 4, 3, 2, 1]);
        assert_eq!(rx_selection_size(20.0, 5), 1);
        // position 3 (1-based) keeps city 3; 5, 4, 2, 1 fill the rest in p2 order
        assert_eq!(rx_offspring(&p1, &p2, &[2]).labels(), &[5, 4, 3, 2, 1]);
        // keeping cities 1 and 4 in place
        assert_eq!(rx_offspring(&p1, &p2, &[0, 3]).labels(), &[1, 5, 3, 4, 2]);
    }

    #[test]
    fn extreme_percentages() {
        let p1 = tour(&[3, 1, 4, 5, 2, 6]);
        let p2 = tour(&[6, 2, 5, 1, 4, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(
            rx(&p1, &p2, 100.0, &mut rng).unwrap(),
            (p1.clone(), p2.clone())
        );
        assert_eq!(
            rx(&p1, &p2, 0.0, &mut rng).unwrap(),
            (p2.clone(), p1.clone())
        );
    }

    #[test]
    fn selection_size_rounding() {
        assert_eq!(rx_selection_size(30.0, 51), 15); // 15.3
        assert_eq!(rx_selection_size(10.0, 75), 8); // 7.5 rounds away from zero
        assert_eq!(rx_selection_size(100.0, 7), 7);
        assert_eq!(rx_selection_size(0.0, 7), 0);
    }

    #[test]
    fn rejects_bad_percentage() {
        let t = tour(&[1, 2, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(rx(&t, &t, 120.0, &mut rng).is_err());
        assert!(rx(&t, &t, -1.0, &mut rng).is_err());
    }
}
