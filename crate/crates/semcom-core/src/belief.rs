use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CoreError;

/// Widest supported common language; sets are backed by a single `u64` mask.
pub const MAX_BELIEFS: usize = 64;

/// Index of one belief within the common language, in `[0, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BeliefId(pub u8);

impl BeliefId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for BeliefId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

/// A subset of the beliefs, stored as a membership mask.
///
/// This is the unit of description, action, and pruning. The mask value
/// doubles as the canonical ordering key: every enumeration in the crate
/// yields sets in ascending mask order so ties break deterministically.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeliefSet {
    bits: u64,
}

impl BeliefSet {
    pub const EMPTY: BeliefSet = BeliefSet { bits: 0 };

    /// All `count` beliefs of the common language.
    pub fn full(count: usize) -> Self {
        assert!(count <= MAX_BELIEFS, "belief count {count} exceeds {MAX_BELIEFS}");
        if count == MAX_BELIEFS {
            Self { bits: u64::MAX }
        } else {
            Self { bits: (1u64 << count) - 1 }
        }
    }

    pub fn singleton(id: BeliefId) -> Self {
        Self { bits: 1u64 << id.index() }
    }

    pub fn from_indices<I: IntoIterator<Item = u8>>(indices: I) -> Self {
        let mut bits = 0u64;
        for i in indices {
            assert!((i as usize) < MAX_BELIEFS);
            bits |= 1u64 << i;
        }
        Self { bits }
    }

    pub fn from_bits(bits: u64) -> Self {
        Self { bits }
    }

    /// Canonical ordering key.
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn cardinality(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, id: BeliefId) -> bool {
        self.bits & (1u64 << id.index()) != 0
    }

    pub fn insert(&mut self, id: BeliefId) {
        self.bits |= 1u64 << id.index();
    }

    pub fn remove(&mut self, id: BeliefId) {
        self.bits &= !(1u64 << id.index());
    }

    pub fn union(self, other: BeliefSet) -> BeliefSet {
        Self { bits: self.bits | other.bits }
    }

    pub fn intersection(self, other: BeliefSet) -> BeliefSet {
        Self { bits: self.bits & other.bits }
    }

    /// Members of `self` not in `other`.
    pub fn difference(self, other: BeliefSet) -> BeliefSet {
        Self { bits: self.bits & !other.bits }
    }

    pub fn is_subset_of(self, other: BeliefSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_superset_of(self, other: BeliefSet) -> bool {
        other.is_subset_of(self)
    }

    /// Member ids in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = BeliefId> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as u8;
                rest &= rest - 1;
                Some(BeliefId(i))
            }
        })
    }
}

impl fmt::Display for BeliefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, id) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

// Serialized as the sorted list of member indices so scenario files stay
// readable and diffable.
impl Serialize for BeliefSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let indices: Vec<u8> = self.iter().map(|id| id.0).collect();
        indices.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BeliefSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let indices = Vec::<u8>::deserialize(deserializer)?;
        for &i in &indices {
            if i as usize >= MAX_BELIEFS {
                return Err(D::Error::custom(format!("belief index {i} out of range")));
            }
        }
        Ok(BeliefSet::from_indices(indices))
    }
}

/// All subsets of `base` with exactly `cardinality` members, in canonical
/// (ascending mask) order.
///
/// Backs the curriculum action-space construction and the brute-force
/// oracles in the test suites.
pub fn subsets_of_cardinality(
    base: BeliefSet,
    cardinality: usize,
) -> Result<Vec<BeliefSet>, CoreError> {
    let available = base.cardinality();
    if cardinality > available {
        return Err(CoreError::CardinalityOutOfRange { requested: cardinality, available });
    }
    if cardinality == 0 {
        return Ok(vec![BeliefSet::EMPTY]);
    }
    let positions: Vec<u8> = base.iter().map(|id| id.0).collect();
    let n = positions.len();
    let k = cardinality;

    // Gosper's hack over the compressed index space; scattering through the
    // ascending position map preserves mask order.
    let mut out = Vec::new();
    let mut compressed: u64 = (1u64 << k) - 1;
    let limit: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    loop {
        let mut expanded = 0u64;
        let mut rest = compressed;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            expanded |= 1u64 << positions[i];
        }
        out.push(BeliefSet::from_bits(expanded));

        if compressed == limit & !((1u64 << (n - k)) - 1) {
            // Highest k bits set: last combination.
            break;
        }
        let low = compressed & compressed.wrapping_neg();
        let carry = compressed + low;
        compressed = (((compressed & !carry) / low) >> 1) | carry;
    }
    Ok(out)
}
