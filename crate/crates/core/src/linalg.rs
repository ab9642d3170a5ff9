//! Exact linear algebra over ℚ.
//!
//! Large chain spaces use sparse integer vectors with fraction-free
//! elimination: a reduction step replaces `v` by `a·v − b·r` for the pivot row
//! `r`, then divides out the content. Pivots sit on the largest index, as in
//! the standard boundary-matrix column reduction. Small matrices on homology
//! (induced maps, exactness) use dense rationals.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::Rational;

#[inline]
fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("coefficient overflow in exact elimination")
}

#[inline]
fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("coefficient overflow in exact elimination")
}

/// Sparse integer vector, entries sorted by index, no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(u32, i128)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: u32) -> Self {
        SparseVec { entries: vec![(i, 1)] }
    }

    /// Builds from unsorted entries, summing duplicates.
    pub fn from_entries(mut entries: Vec<(u32, i128)>) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, i128)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = add(last.1, c),
                _ => out.push((i, c)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec { entries: out }
    }

    pub fn entries(&self) -> &[(u32, i128)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn last(&self) -> Option<(u32, i128)> {
        self.entries.last().copied()
    }

    pub fn get(&self, i: u32) -> i128 {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => 0,
        }
    }

    /// `a·self + b·other`.
    pub fn lin_comb(&self, a: i128, other: &SparseVec, b: i128) -> SparseVec {
        let (x, y) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            let take = if j == y.len() {
                0
            } else if i == x.len() {
                1
            } else if x[i].0 < y[j].0 {
                0
            } else if x[i].0 > y[j].0 {
                1
            } else {
                2
            };
            match take {
                0 => {
                    out.push((x[i].0, mul(a, x[i].1)));
                    i += 1;
                }
                1 => {
                    out.push((y[j].0, mul(b, y[j].1)));
                    j += 1;
                }
                _ => {
                    let c = add(mul(a, x[i].1), mul(b, y[j].1));
                    if c != 0 {
                        out.push((x[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec { entries: out }
    }

    pub fn scale(&self, a: i128) -> SparseVec {
        if a == 0 {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|&(i, c)| (i, mul(a, c))).collect() }
    }

    pub fn content(&self) -> i128 {
        self.entries.iter().fold(0i128, |g, e| g.gcd(&e.1))
    }

    fn divide_exact(&mut self, g: i128) {
        if g > 1 {
            for e in &mut self.entries {
                e.1 /= g;
            }
        }
    }

    /// Maps indices through `f`, summing collisions.
    pub fn map_indices(&self, f: impl Fn(u32) -> Option<(u32, i128)>) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len());
        for &(i, c) in &self.entries {
            if let Some((j, s)) = f(i) {
                out.push((j, mul(c, s)));
            }
        }
        SparseVec::from_entries(out)
    }

    /// Expands `Σ self[k] · basis[k]`.
    pub fn expand(&self, basis: &[SparseVec]) -> SparseVec {
        let mut out = Vec::new();
        for &(k, c) in &self.entries {
            for &(i, v) in basis[k as usize].entries() {
                out.push((i, mul(c, v)));
            }
        }
        SparseVec::from_entries(out)
    }
}

/// Row echelon form with pivots on the last index.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot: HashMap<u32, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces until the leading index is not a pivot. The result is a
    /// nonzero multiple of `v` minus an element of the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((m, c)) = v.last() {
            let Some(&r) = self.pivot.get(&m) else { break };
            let row = &self.rows[r];
            let lead = row.last().unwrap().1;
            let g = lead.gcd(&c);
            v = v.lin_comb(lead / g, row, -(c / g));
            let content = v.content();
            v.divide_exact(content);
        }
        v
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        match r.last() {
            None => false,
            Some((m, _)) => {
                self.pivot.insert(m, self.rows.len());
                self.rows.push(r);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }
}

#[derive(Clone, Debug)]
struct TrackedRow {
    vec: SparseVec,
    tags: SparseVec,
}

/// Echelon form that remembers how each row was combined from tagged inputs.
///
/// Inserting `x` with tags `e` keeps the invariant `row = Σ tags_k · x_k`
/// (untagged inputs drop out of the bookkeeping). A tagged input that reduces
/// to zero yields a linear relation, which is how kernels are extracted.
#[derive(Clone, Debug, Default)]
pub struct TrackedEchelon {
    rows: Vec<TrackedRow>,
    pivot: HashMap<u32, usize>,
}

/// Result of expressing a vector in terms of tagged inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    /// `scale · v ≡ Σ tags_k · x_k` modulo the untagged inputs.
    pub tags: SparseVec,
    pub scale: i128,
}

impl Coordinates {
    pub fn get(&self, k: u32) -> Rational {
        Rational::new(self.tags.get(k), self.scale)
    }
}

impl TrackedEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn step(&self, vec: &mut SparseVec, tags: &mut SparseVec, scale: &mut i128, sign: i128) -> bool {
        let Some((m, c)) = vec.last() else { return false };
        let Some(&r) = self.pivot.get(&m) else { return false };
        let row = &self.rows[r];
        let lead = row.vec.last().unwrap().1;
        let g = lead.gcd(&c);
        let (a, b) = (lead / g, c / g);
        *vec = vec.lin_comb(a, &row.vec, -b);
        *tags = tags.lin_comb(a, &row.tags, sign * b);
        *scale = mul(*scale, a);
        let mut content = vec.content().gcd(&tags.content()).gcd(scale);
        if content > 1 {
            vec.divide_exact(content);
            tags.divide_exact(content);
            *scale /= content;
        }
        if *scale < 0 {
            content = -1;
            *vec = vec.scale(content);
            *tags = tags.scale(content);
            *scale = -*scale;
        }
        true
    }

    /// Inserts `v` carrying `tags`. Returns `Some(relation)` when `v`
    /// depends on earlier rows: `Σ relation_k · x_k` lies in the span of the
    /// untagged inputs.
    pub fn insert(&mut self, v: SparseVec, tags: SparseVec) -> Option<SparseVec> {
        // scale 0 keeps the content normalization independent of the scale
        let (mut vec, mut tags, mut scale) = (v, tags, 0i128);
        while self.step(&mut vec, &mut tags, &mut scale, -1) {}
        match vec.last() {
            None => Some(tags),
            Some((m, _)) => {
                self.pivot.insert(m, self.rows.len());
                self.rows.push(TrackedRow { vec, tags });
                None
            }
        }
    }

    /// Coordinates of `v` on tagged inputs, or `None` if `v` is outside the
    /// span.
    pub fn coordinates(&self, v: SparseVec) -> Option<Coordinates> {
        let (mut vec, mut tags, mut scale) = (v, SparseVec::new(), 1i128);
        while self.step(&mut vec, &mut tags, &mut scale, 1) {}
        vec.is_zero().then_some(Coordinates { tags, scale })
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v.clone()).is_some()
    }
}

/// Dense matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * v[j]))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and pivot columns.
    fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    let t = m.get(r, j);
                    m.set(r, j, m.get(p, j));
                    m.set(p, j, t);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if !f.is_zero() {
                        for j in 0..m.cols {
                            let v = m.get(i, j) - f * m.get(r, j);
                            m.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -m.get(r, f);
                }
                x
            })
            .collect()
    }

    /// Whether `v` is in the column space.
    pub fn column_space_contains(&self, v: &[Rational]) -> bool {
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (i, x) in v.iter().enumerate().take(self.rows) {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, *x);
        }
        aug.rank() == self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(e: &[(u32, i128)]) -> SparseVec {
        SparseVec::from_entries(e.to_vec())
    }

    #[test]
    fn combination_and_content() {
        let a = sv(&[(0, 2), (3, 4)]);
        let b = sv(&[(3, 2), (5, 6)]);
        assert_eq!(a.lin_comb(1, &b, -2), sv(&[(0, 2), (5, -12)]));
        assert_eq!(a.content(), 2);
        assert_eq!(sv(&[(1, 1), (1, -1)]), SparseVec::new());
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, 1), (1, 1)])));
        assert!(e.insert(sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(sv(&[(0, 1), (2, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&sv(&[(0, 2), (1, 3), (2, 1)])));
        assert!(!e.contains(&sv(&[(0, 1)])));
    }

    #[test]
    fn tracked_kernel_relation() {
        // x0 + x1 - x2 = 0
        let xs = [sv(&[(0, 1)]), sv(&[(1, 2)]), sv(&[(0, 1), (1, 2)])];
        let mut e = TrackedEchelon::new();
        let mut rel = None;
        for (k, x) in xs.iter().enumerate() {
            if let Some(r) = e.insert(x.clone(), SparseVec::unit(k as u32)) {
                rel = Some(r);
            }
        }
        let rel = rel.unwrap();
        assert!(rel.expand(&xs).is_zero());
        assert_eq!(rel.len(), 3);
    }

    #[test]
    fn tracked_coordinates_modulo_untagged() {
        let mut e = TrackedEchelon::new();
        e.insert(sv(&[(2, 1)]), SparseVec::new()); // quotient direction
        e.insert(sv(&[(0, 2), (1, 2)]), SparseVec::unit(0));
        e.insert(sv(&[(1, 3)]), SparseVec::unit(1));
        let c = e.coordinates(sv(&[(0, 1), (1, 4), (2, 7)])).unwrap();
        // (1,4) = 1/2·(2,2) + 1·(0,3)
        assert_eq!(c.get(0), Rational::new(1, 2));
        assert_eq!(c.get(1), Rational::new(1, 1));
        assert!(e.coordinates(sv(&[(3, 1)])).is_none());
    }

    #[test]
    fn dense_rank_and_nullspace() {
        let q = |n: i128| Rational::from_integer(n);
        let m = RatMatrix::from_rows(&[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for x in ns {
            assert!(m.apply(&x).iter().all(Zero::is_zero));
        }
        assert!(m.column_space_contains(&[q(1), q(2)]));
        assert!(!m.column_space_contains(&[q(1), q(0)]));
    }
}
