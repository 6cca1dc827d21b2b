//! Compensated summation.
//!
//! Ensemble averages over 10⁶ particles feed tolerances near 10⁻³ and the
//! thermal combiners feed tolerances near 10⁻⁸, so every mean in the crate
//! goes through [`NeumaierSum`]. The result depends only on the order the
//! terms are fed in, never on how a caller chunks the work before merging
//! partial sums with [`NeumaierSum::merge`] in a fixed order.

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub const fn new() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<NeumaierSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let terms = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(sum(terms), 2.0);
    }

    #[test]
    fn merge_matches_sequential() {
        let xs: alloc::vec::Vec<f64> = (0..1000).map(|i| 0.1 * i as f64).collect();
        let mut a: NeumaierSum = xs[..500].iter().copied().collect();
        let b: NeumaierSum = xs[500..].iter().copied().collect();
        a.merge(&b);
        assert!((a.value() - sum(xs.iter().copied())).abs() < 1e-10);
    }
}
