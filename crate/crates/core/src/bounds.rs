use serde::{Deserialize, Serialize};

/// Size limits for the exponential searches.
///
/// Every bounded operation fails with [`Error::TooLarge`](crate::Error::TooLarge)
/// instead of running past these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest carrier for which all subacts are listed.
    pub max_subacts: usize,
    /// Largest `|source| * |target|` for homomorphism enumeration.
    pub max_homs: usize,
    /// Largest carrier for congruence enumeration.
    pub max_congruences: usize,
    /// Largest act size generated by `enumerate_acts`.
    pub max_size: usize,
    /// Largest carrier for permutation-minimal canonical keys.
    pub max_canonical: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_subacts: 16,
            max_homs: 4096,
            max_congruences: 8,
            max_size: 6,
            max_canonical: 8,
        }
    }
}
