//! Bit tricks shared by the combinatorial sums.

/// All submasks of `mask` in increasing numeric order, including `0` and `mask`.
#[derive(Debug, Clone)]
pub struct Submasks {
    mask: usize,
    next: Option<usize>,
}

impl Submasks {
    pub fn of(mask: usize) -> Self {
        Self {
            mask,
            next: Some(0),
        }
    }
}

impl Iterator for Submasks {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some(current.wrapping_sub(self.mask) & self.mask)
        };
        Some(current)
    }
}

/// `ln k!` for `k = 0..=n`, by cumulative summation.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    table.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

/// `ln C(n, k)` from a factorial table.
pub fn ln_binomial(ln_fact: &[f64], n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    ln_fact[n] - ln_fact[k] - ln_fact[n - k]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn submasks_of_small_masks() {
        assert_eq!(Submasks::of(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(Submasks::of(0b101).collect::<Vec<_>>(), vec![0, 1, 4, 5]);
    }

    proptest! {
        #[test]
        fn submasks_enumerate_every_subset_once(mask in 0usize..1 << 12) {
            let subs: Vec<_> = Submasks::of(mask).collect();
            prop_assert_eq!(subs.len(), 1usize << mask.count_ones());
            prop_assert!(subs.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(subs.iter().all(|s| s & !mask == 0));
        }
    }

    #[test]
    fn binomials_from_log_table() {
        let t = ln_factorials(60);
        assert!((ln_binomial(&t, 10, 3).exp() - 120.0).abs() < 1e-10);
        assert!((ln_binomial(&t, 60, 30).exp() / 118264581564861424.0 - 1.0).abs() < 1e-12);
        assert_eq!(ln_binomial(&t, 7, 0), 0.0);
    }
}
