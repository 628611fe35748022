//! Dense linear algebra over GF(2).
//!
//! Vectors are bit-packed into `u64` words and every elimination step is a
//! word-parallel XOR. Pivot selection always takes the lowest-index nonzero
//! column, so results are reproducible bit for bit.

use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    words: Vec<u64>,
    len: usize,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, e.g. `"101"`.
    pub fn parse(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| Self::from_bits(&b))
    }

    /// Builds a vector from the low `len` bits of `x` (bit `i` is coordinate `i`).
    pub fn from_u64(len: usize, x: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = x & mask;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Standard dot product.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Index of the lowest set bit.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Coordinates restricted to `cols`, in that order.
    pub fn select(&self, cols: &[usize]) -> Self {
        let bits: Vec<bool> = cols.iter().map(|&c| self.get(c)).collect();
        Self::from_bits(&bits)
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    rows: Vec<Gf2Vector>,
    ncols: usize,
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: vec![Gf2Vector::zeros(ncols); nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| Gf2Vector::unit(n, i)).collect(),
            ncols: n,
        }
    }

    /// Builds a matrix from rows. All rows must have length `ncols`.
    pub fn from_rows(ncols: usize, rows: Vec<Gf2Vector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ncols, "row length mismatch");
        }
        Self { rows, ncols }
    }

    /// Parses rows such as `["110", "011"]`. Panics on malformed input; meant
    /// for literals.
    pub fn from_strs(ncols: usize, rows: &[&str]) -> Self {
        let rows = rows
            .iter()
            .map(|s| Gf2Vector::parse(s).expect("rows must be 0/1 strings"))
            .collect();
        Self::from_rows(ncols, rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c)
    }

    pub fn push_row(&mut self, row: Gf2Vector) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Gf2Vector::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows(), "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = Gf2Vector::zeros(other.ncols);
                for j in row.ones() {
                    acc.xor_assign(&other.rows[j]);
                }
                acc
            })
            .collect();
        Self {
            rows,
            ncols: other.ncols,
        }
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        let bits: Vec<bool> = self.rows.iter().map(|r| r.dot(v)).collect();
        Gf2Vector::from_bits(&bits)
    }

    /// Reduced row-echelon form with the list of pivot columns. Zero rows are
    /// dropped, so the returned matrix has exactly `rank` rows.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.ncols {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (
            Gf2Matrix {
                rows,
                ncols: self.ncols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full rref.
        let mut rows: Vec<Gf2Vector> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut rank = 0;
        let mut col = 0;
        while rank < rows.len() && col < self.ncols {
            if let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) {
                rows.swap(rank, found);
                let (head, tail) = rows.split_at_mut(rank + 1);
                let pivot = &head[rank];
                for row in tail.iter_mut() {
                    if row.get(col) {
                        row.xor_assign(pivot);
                    }
                }
                rank += 1;
            }
            col += 1;
        }
        rank
    }

    /// A basis of `{v : self · v = 0}`, one vector per free column in
    /// increasing column order.
    pub fn nullspace(&self) -> Vec<Gf2Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = Gf2Vector::unit(self.ncols, free);
                for (row, &p) in r.rows.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, v: &Gf2Vector) -> bool {
        let (r, pivots) = self.rref();
        reduce_by(&r, &pivots, v).is_zero()
    }

    /// Whether both matrices have the same row space.
    pub fn same_row_space(&self, other: &Self) -> bool {
        if self.ncols != other.ncols {
            return false;
        }
        let (a, _) = self.rref();
        let (b, _) = other.rref();
        a == b
    }
}

/// Reduces `v` against an rref basis, clearing every pivot column. The result
/// is the canonical representative of `v` modulo the row space.
pub fn reduce_by(rref: &Gf2Matrix, pivots: &[usize], v: &Gf2Vector) -> Gf2Vector {
    let mut out = v.clone();
    for (row, &p) in rref.rows.iter().zip(pivots) {
        if out.get(p) {
            out.xor_assign(row);
        }
    }
    out
}

pub fn rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

pub fn rref(m: &Gf2Matrix) -> (Gf2Matrix, Vec<usize>) {
    m.rref()
}

pub fn nullspace(m: &Gf2Matrix) -> Vec<Gf2Vector> {
    m.nullspace()
}

/// Generator matrix of the orthogonal complement of the row space of `gen`.
pub fn dual_code(gen: &Gf2Matrix) -> Gf2Matrix {
    Gf2Matrix::from_rows(gen.ncols(), gen.nullspace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_rank(m: &Gf2Matrix) -> usize {
        // dimension = log2 of the number of distinct subset sums
        let mut sums = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << m.nrows()) {
            let mut acc = Gf2Vector::zeros(m.ncols());
            for i in 0..m.nrows() {
                if mask >> i & 1 == 1 {
                    acc.xor_assign(m.row(i));
                }
            }
            sums.insert(acc);
        }
        sums.len().trailing_zeros() as usize
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Gf2Matrix> {
        (0..=max, 0..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r)
                .prop_map(move |rows| Gf2Matrix::from_rows(c, rows.iter().map(|b| Gf2Vector::from_bits(b)).collect()))
        })
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::zeros(0, 0).rank(), 0);
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        let m = Gf2Matrix::from_strs(3, &["110", "011", "101"]);
        assert_eq!(m.rank(), 2);
        assert_eq!(brute_rank(&m), 2);
    }

    #[test]
    fn rref_examples() {
        let (r, p) = Gf2Matrix::from_strs(2, &["11", "01"]).rref();
        assert_eq!(r, Gf2Matrix::from_strs(2, &["10", "01"]));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = Gf2Matrix::zeros(2, 3).rref();
        assert_eq!(r.nrows(), 0);
        assert!(p.is_empty());

        let (r, p) = Gf2Matrix::from_strs(3, &["111", "110"]).rref();
        assert_eq!(r, Gf2Matrix::from_strs(3, &["110", "001"]));
        assert_eq!(p, vec![0, 2]);
    }

    #[test]
    fn nullspace_examples() {
        assert!(Gf2Matrix::identity(2).nullspace().is_empty());
        assert_eq!(
            Gf2Matrix::from_strs(2, &["11"]).nullspace(),
            vec![Gf2Vector::parse("11").unwrap()]
        );
        assert_eq!(
            Gf2Matrix::from_strs(2, &["10"]).nullspace(),
            vec![Gf2Vector::parse("01").unwrap()]
        );
    }

    #[test]
    fn dual_code_examples() {
        let d = dual_code(&Gf2Matrix::from_strs(2, &["11"]));
        assert!(d.same_row_space(&Gf2Matrix::from_strs(2, &["11"])));

        assert_eq!(dual_code(&Gf2Matrix::identity(4)).nrows(), 0);

        let rep = Gf2Matrix::from_strs(4, &["1111"]);
        let d = dual_code(&rep);
        assert_eq!(d.rank(), 3);
        // brute force: the dual of the repetition code is the even-weight code
        for x in 0u64..16 {
            let v = Gf2Vector::from_u64(4, x);
            assert_eq!(d.spans(&v), v.weight().is_multiple_of(2), "{v}");
        }
    }

    #[test]
    fn wide_vectors_cross_word_boundary() {
        let mut a = Gf2Vector::zeros(130);
        a.set(0, true);
        a.set(64, true);
        a.set(129, true);
        assert_eq!(a.weight(), 3);
        assert_eq!(a.leading(), Some(0));
        a.set(0, false);
        assert_eq!(a.leading(), Some(64));
        let m = Gf2Matrix::from_rows(130, vec![a.clone(), a.clone()]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace().len(), 129);
    }

    proptest! {
        #[test]
        fn rank_matches_enumeration(m in arb_matrix(8)) {
            prop_assert_eq!(m.rank(), brute_rank(&m));
            prop_assert_eq!(m.rref().0.nrows(), m.rank());
        }

        #[test]
        fn rref_is_reduced(m in arb_matrix(8)) {
            let (r, pivots) = m.rref();
            prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
            for &p in &pivots {
                prop_assert_eq!((0..r.nrows()).filter(|&i| r.get(i, p)).count(), 1);
            }
            prop_assert!(r.same_row_space(&m));
        }

        #[test]
        fn nullspace_complements_row_space(m in arb_matrix(8)) {
            let ns = m.nullspace();
            prop_assert_eq!(ns.len(), m.ncols() - m.rank());
            for v in &ns {
                prop_assert!(m.mul_vec(v).is_zero());
            }
            // null vectors plus the pivot unit vectors span the domain
            let (_, pivots) = m.rref();
            let mut all: Vec<Gf2Vector> =
                pivots.iter().map(|&p| Gf2Vector::unit(m.ncols(), p)).collect();
            all.extend(ns.iter().cloned());
            prop_assert_eq!(Gf2Matrix::from_rows(m.ncols(), all).rank(), m.ncols());
        }

        #[test]
        fn double_dual_is_identity(m in arb_matrix(8)) {
            let d = dual_code(&m);
            prop_assert_eq!(d.rank() + m.rank(), m.ncols());
            let dd = dual_code(&d);
            prop_assert_eq!(dd.rref().0, m.rref().0);
        }
    }
}
