//! Multi-indices (w_1, ..., w_d) of monomial exponents.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial in d colour variables.
///
/// Ordering is lexicographic, which fixes a canonical key order for every
/// serialized sparse polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    /// Number of colours d.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// |w| = w_1 + ... + w_d.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&w| w as u64).sum()
    }

    /// w! = w_1! ... w_d!.
    pub fn factorial(&self) -> BigUint {
        self.0
            .iter()
            .fold(BigUint::one(), |acc, &w| acc * super::factorial(w as u64))
    }

    /// Component-wise sum (exponent of a monomial product).
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// True when every entry is even.
    pub fn all_even(&self) -> bool {
        self.0.iter().all(|w| w % 2 == 0)
    }

    /// Halve every entry; caller must ensure all entries are even.
    pub fn half(&self) -> MultiIndex {
        debug_assert!(self.all_even());
        MultiIndex(self.0.iter().map(|w| w / 2).collect())
    }

    /// True when self <= other component-wise.
    pub fn dominated_by(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let w = MultiIndex::new(vec![2, 2]);
        assert_eq!(w.total(), 4);
        assert_eq!(w.factorial(), BigUint::from(4u32));
        assert!(w.all_even());
        assert_eq!(w.half(), MultiIndex::new(vec![1, 1]));
        let v = MultiIndex::new(vec![1, 3]);
        assert_eq!(w.add(&v), MultiIndex::new(vec![3, 5]));
        assert!(!v.all_even());
        assert!(v.dominated_by(&MultiIndex::new(vec![1, 4])));
        assert!(!v.dominated_by(&w));
    }

    #[test]
    fn lex_order_is_canonical() {
        let mut keys = vec![
            MultiIndex::new(vec![0, 4]),
            MultiIndex::new(vec![4, 0]),
            MultiIndex::new(vec![2, 2]),
        ];
        keys.sort();
        assert_eq!(
            keys,
            vec![
                MultiIndex::new(vec![0, 4]),
                MultiIndex::new(vec![2, 2]),
                MultiIndex::new(vec![4, 0]),
            ]
        );
    }
}
