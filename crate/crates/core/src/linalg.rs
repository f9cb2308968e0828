//! Incremental Gaussian elimination over GF(2).

/// A vector over GF(2) that can be row-reduced.
pub trait BitVector: Clone {
    fn xor_assign(&mut self, other: &Self);
    /// Index of the lowest set bit.
    fn lowest_set_bit(&self) -> Option<usize>;
    fn bit(&self, i: usize) -> bool;
}

impl BitVector for u64 {
    fn xor_assign(&mut self, other: &Self) {
        *self ^= other;
    }

    fn lowest_set_bit(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }

    fn bit(&self, i: usize) -> bool {
        (self >> i) & 1 == 1
    }
}

/// Rank-only elimination carries no combination.
impl BitVector for () {
    fn xor_assign(&mut self, _: &Self) {}

    fn lowest_set_bit(&self) -> Option<usize> {
        None
    }

    fn bit(&self, _: usize) -> bool {
        false
    }
}

/// A growable bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec(Vec<u64>);

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.0.len() <= i / 64 {
            self.0.resize(i / 64 + 1, 0);
        }
        if value {
            self.0[i / 64] |= 1 << (i % 64);
        } else {
            self.0[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| (w >> b) & 1 == 1).map(move |b| 64 * wi + b))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

impl BitVector for BitVec {
    fn xor_assign(&mut self, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn lowest_set_bit(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| 64 * i + w.trailing_zeros() as usize)
    }

    fn bit(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }
}

/// Row-echelon basis of the span of the inserted vectors. Each row carries a
/// tag recording which combination of inserted tags produced it.
#[derive(Debug, Clone)]
pub struct Echelon<V, T> {
    // sorted by pivot; the pivot of a row is its lowest set bit
    rows: Vec<(usize, V, T)>,
}

impl<V: BitVector, T: BitVector> Default for Echelon<V, T> {
    fn default() -> Self {
        Self { rows: Vec::new() }
    }
}

impl<V: BitVector, T: BitVector> Echelon<V, T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut V, tag: &mut T) {
        for (pivot, row, row_tag) in &self.rows {
            if v.bit(*pivot) {
                v.xor_assign(row);
                tag.xor_assign(row_tag);
            }
        }
    }

    /// Adds `v` to the basis. If `v` is already in the span, returns the tag
    /// combination that sums to zero (a kernel relation).
    pub fn insert(&mut self, mut v: V, mut tag: T) -> Option<T> {
        self.reduce(&mut v, &mut tag);
        match v.lowest_set_bit() {
            None => Some(tag),
            Some(pivot) => {
                let at = self.rows.partition_point(|(q, _, _)| *q < pivot);
                self.rows.insert(at, (pivot, v, tag));
                None
            }
        }
    }

    /// Tag combination of basis rows summing to `target`, if it lies in the span.
    pub fn solve(&self, mut target: V, zero_tag: T) -> Option<T> {
        let mut tag = zero_tag;
        self.reduce(&mut target, &mut tag);
        target.lowest_set_bit().is_none().then_some(tag)
    }
}
