//! Points and subspaces of PG(n-1, q) for small `n`.
//!
//! A subspace is stored as its reduced row-echelon basis, which is the
//! canonical representative of its row space: two subspaces are equal iff
//! their bases are bitwise equal.

use thiserror::Error;

use crate::field::{Fe, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("generators span the zero subspace")]
    ZeroSpan,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("expected a subspace of vector dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
}

/// Scales `v` so its first nonzero coordinate is 1. Returns `None` for zero.
pub fn normalize<const N: usize>(field: &Field, v: &[Fe; N]) -> Option<[Fe; N]> {
    let lead = *v.iter().find(|c| !c.is_zero())?;
    let s = field.inv(lead).expect("nonzero");
    Some(v.map(|c| field.mul(s, c)))
}

pub fn scale<const N: usize>(field: &Field, s: Fe, v: &[Fe; N]) -> [Fe; N] {
    v.map(|c| field.mul(s, c))
}

pub fn add<const N: usize>(a: &[Fe; N], b: &[Fe; N]) -> [Fe; N] {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn dot<const N: usize>(field: &Field, a: &[Fe; N], b: &[Fe; N]) -> Fe {
    a.iter()
        .zip(b)
        .fold(Fe::ZERO, |acc, (&x, &y)| acc + field.mul(x, y))
}

/// A point of PG(N-1, q) with its first nonzero coordinate equal to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint<const N: usize>([Fe; N]);

/// A point of the plane PG(2, q).
pub type PlanePoint = ProjectivePoint<3>;
/// A point of PG(5, q).
pub type Point = ProjectivePoint<6>;

impl<const N: usize> ProjectivePoint<N> {
    pub fn new(field: &Field, coords: [Fe; N]) -> Result<Self, GeomError> {
        normalize(field, &coords)
            .map(Self)
            .ok_or(GeomError::ZeroPoint)
    }

    /// Wraps coordinates that are already normalized.
    pub(crate) fn from_normalized(coords: [Fe; N]) -> Self {
        debug_assert!(coords.iter().find(|c| !c.is_zero()) == Some(&Fe::ONE));
        Self(coords)
    }

    pub fn coords(&self) -> &[Fe; N] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|c| c.to_hex()).collect()
    }

    pub fn parse_hex(field: &Field, s: &str) -> Result<Self, crate::ParseError> {
        let coords = parse_hex_vector::<N>(field, s)?;
        Ok(Self::new(field, coords)?)
    }
}

/// Parses exactly `N` hex digits into field elements.
pub fn parse_hex_vector<const N: usize>(
    field: &Field,
    s: &str,
) -> Result<[Fe; N], crate::ParseError> {
    let digits: Vec<char> = s.trim().chars().collect();
    if digits.len() != N {
        return Err(crate::ParseError::Length {
            expected: N,
            found: digits.len(),
        });
    }
    let mut out = [Fe::ZERO; N];
    for (slot, c) in out.iter_mut().zip(digits) {
        *slot = field.parse_digit(c)?;
    }
    Ok(out)
}

/// Number of points of PG(k-1, q).
pub fn point_count(k: u32, q: u64) -> u64 {
    (q.pow(k) - 1) / (q - 1)
}

/// Gaussian binomial: the number of `k`-dimensional subspaces of GF(q)^n.
pub fn gaussian_count(n: u32, k: u32, q: u64) -> u64 {
    assert!(k <= n, "gaussian_count requires k <= n");
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// In-place reduced row echelon form; returns the rank. Zero rows end up last.
pub fn row_reduce<const N: usize>(field: &Field, rows: &mut [[Fe; N]]) -> usize {
    let mut rank = 0;
    for col in 0..N {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let s = field.inv(rows[rank][col]).expect("pivot is nonzero");
        rows[rank] = scale(field, s, &rows[rank]);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let m = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x += field.mul(m, y);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A subspace of GF(q)^N given by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<const N: usize> {
    rows: Vec<[Fe; N]>,
}

impl<const N: usize> Subspace<N> {
    /// Echelon basis of the span of `generators`.
    pub fn span(field: &Field, generators: &[[Fe; N]]) -> Result<Self, GeomError> {
        let mut rows = generators.to_vec();
        let rank = row_reduce(field, &mut rows);
        if rank == 0 {
            return Err(GeomError::ZeroSpan);
        }
        rows.truncate(rank);
        Ok(Subspace { rows })
    }

    /// The zero subspace (empty projective subspace).
    pub fn zero() -> Self {
        Subspace { rows: Vec::new() }
    }

    /// Wraps rows that are already in reduced row-echelon form.
    pub(crate) fn from_echelon(rows: Vec<[Fe; N]>) -> Self {
        Subspace { rows }
    }

    pub fn rows(&self) -> &[[Fe; N]] {
        &self.rows
    }

    /// Vector-space dimension `k`; the projective dimension is `k - 1`.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .position(|c| !c.is_zero())
                    .expect("echelon rows are nonzero")
            })
            .collect()
    }

    /// Membership by reduction against the echelon pivots.
    pub fn contains(&self, field: &Field, v: &[Fe; N]) -> bool {
        let mut w = *v;
        for (row, p) in self.rows.iter().zip(self.pivots()) {
            if !w[p].is_zero() {
                let m = w[p];
                for (x, &y) in w.iter_mut().zip(row) {
                    *x += field.mul(m, y);
                }
            }
        }
        w.iter().all(|c| c.is_zero())
    }

    pub fn contains_subspace(&self, field: &Field, other: &Subspace<N>) -> bool {
        other.rows.iter().all(|r| self.contains(field, r))
    }

    /// All linear forms vanishing on the subspace, as an echelon basis.
    pub fn annihilator(&self, field: &Field) -> Subspace<N> {
        let pivots = self.pivots();
        let free: Vec<usize> = (0..N).filter(|c| !pivots.contains(c)).collect();
        // For free column j: e_j minus sum_i row_i[j] e_{pivot_i}; char 2 drops the sign.
        let mut out: Vec<[Fe; N]> = free
            .iter()
            .map(|&j| {
                let mut f = [Fe::ZERO; N];
                f[j] = Fe::ONE;
                for (row, &p) in self.rows.iter().zip(&pivots) {
                    f[p] = row[j];
                }
                f
            })
            .collect();
        let rank = row_reduce(field, &mut out);
        debug_assert_eq!(rank, out.len());
        Subspace { rows: out }
    }

    /// Linear combination `sum coeffs[i] * rows[i]`.
    pub fn combine(&self, field: &Field, coeffs: &[Fe]) -> [Fe; N] {
        let mut v = [Fe::ZERO; N];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if !c.is_zero() {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x += field.mul(c, y);
                }
            }
        }
        v
    }

    /// Every projective point of the subspace exactly once, normalized.
    pub fn points<'a>(&'a self, field: &'a Field) -> impl Iterator<Item = ProjectivePoint<N>> + 'a {
        let k = self.rank();
        normalized_coefficients(field, k).map(move |coeffs| {
            // Echelon rows make the combination normalized already.
            ProjectivePoint::from_normalized(self.combine(field, &coeffs))
        })
    }

    pub fn point_count(&self, q: usize) -> u64 {
        point_count(self.rank() as u32, q as u64)
    }

    pub fn to_hex(&self) -> String {
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(|c| c.to_hex()))
            .collect()
    }
}

/// Normalized coefficient vectors of length `k` (first nonzero entry 1), in
/// lexicographic order.
pub fn normalized_coefficients(field: &Field, k: usize) -> impl Iterator<Item = Vec<Fe>> + '_ {
    let q = field.q();
    (0..k).flat_map(move |lead| {
        let tail = k - lead - 1;
        (0..q.pow(tail as u32)).map(move |mut idx| {
            let mut c = vec![Fe::ZERO; k];
            c[lead] = Fe::ONE;
            for slot in c[lead + 1..].iter_mut().rev() {
                *slot = Fe((idx % q) as u8);
                idx /= q;
            }
            c
        })
    })
}

/// Enumerates the `k`-dimensional subspaces of GF(q)^N in canonical order:
/// pivot patterns lexicographically, then free entries in mixed radix q.
#[derive(Clone, Debug)]
pub struct SubspaceEnumerator<const N: usize> {
    q: usize,
    patterns: Vec<PivotPattern>,
}

/// One pivot pattern together with the positions of its free entries.
#[derive(Clone, Debug)]
pub struct PivotPattern {
    pub pivots: Vec<usize>,
    /// `(row, column)` of every free entry, row-major.
    pub free: Vec<(usize, usize)>,
    /// Index of the first subspace of this pattern in the global order.
    pub offset: u64,
}

impl PivotPattern {
    pub fn len(&self, q: usize) -> u64 {
        (q as u64).pow(self.free.len() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl<const N: usize> SubspaceEnumerator<N> {
    pub fn new(q: usize, k: usize) -> Self {
        let mut offset = 0;
        let patterns = combinations(N, k)
            .into_iter()
            .map(|pivots| {
                let free = pivots
                    .iter()
                    .enumerate()
                    .flat_map(|(r, &p)| {
                        let pivots = &pivots;
                        (p + 1..N)
                            .filter(move |c| !pivots.contains(c))
                            .map(move |c| (r, c))
                    })
                    .collect::<Vec<_>>();
                let pattern = PivotPattern {
                    pivots,
                    free,
                    offset,
                };
                offset += pattern.len(q);
                pattern
            })
            .collect();
        SubspaceEnumerator { q, patterns }
    }

    pub fn patterns(&self) -> &[PivotPattern] {
        &self.patterns
    }

    pub fn len(&self) -> u64 {
        self.patterns.iter().map(|p| p.len(self.q)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `index`-th echelon basis within `pattern`.
    pub fn decode_in(&self, pattern: &PivotPattern, mut index: u64) -> Vec<[Fe; N]> {
        let q = self.q as u64;
        let mut rows = vec![[Fe::ZERO; N]; pattern.pivots.len()];
        for (r, &p) in pattern.pivots.iter().enumerate() {
            rows[r][p] = Fe::ONE;
        }
        for &(r, c) in pattern.free.iter().rev() {
            rows[r][c] = Fe((index % q) as u8);
            index /= q;
        }
        rows
    }

    /// The `index`-th subspace in the global order.
    pub fn decode(&self, index: u64) -> Subspace<N> {
        let pattern = self
            .patterns
            .iter()
            .rev()
            .find(|p| p.offset <= index)
            .expect("index in range");
        Subspace::from_echelon(self.decode_in(pattern, index - pattern.offset))
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace<N>> + '_ {
        self.patterns.iter().flat_map(move |p| {
            (0..p.len(self.q)).map(move |i| Subspace::from_echelon(self.decode_in(p, i)))
        })
    }
}

/// Packs a vector into `h` bits per coordinate, coordinate 0 most significant.
/// Vector addition becomes XOR of packed words.
#[inline]
pub fn pack<const N: usize>(h: u32, v: &[Fe; N]) -> u32 {
    v.iter().fold(0u32, |acc, c| (acc << h) | c.0 as u32)
}

#[inline]
pub fn unpack<const N: usize>(h: u32, mut w: u32) -> [Fe; N] {
    let mask = (1u32 << h) - 1;
    let mut v = [Fe::ZERO; N];
    for slot in v.iter_mut().rev() {
        *slot = Fe((w & mask) as u8);
        w >>= h;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn e(i: usize) -> [Fe; 6] {
        let mut v = [Fe::ZERO; 6];
        v[i] = Fe::ONE;
        v
    }

    #[test]
    fn canonicalize_examples() {
        let f = Field::new(2).unwrap();
        let s = Subspace::span(&f, &[e(0), e(1)]).unwrap();
        assert_eq!(s.rows(), &[e(0), e(1)]);
        let t = Subspace::span(&f, &[add(&e(0), &e(1)), e(0)]).unwrap();
        assert_eq!(t, s);
        assert_eq!(
            Subspace::<6>::span(&f, &[[Fe::ZERO; 6]]),
            Err(GeomError::ZeroSpan)
        );
    }

    #[test]
    fn annihilator_of_coordinate_hyperplane() {
        let f = Field::new(4).unwrap();
        let h = Subspace::span(&f, &[e(0), e(1), e(2), e(3), e(4)]).unwrap();
        assert_eq!(h.annihilator(&f).rows(), &[e(5)]);
        assert_eq!(h.annihilator(&f).annihilator(&f), h);
        let full = Subspace::span(&f, &(0..6).map(e).collect::<Vec<_>>()).unwrap();
        assert_eq!(full.annihilator(&f), Subspace::zero());
    }

    #[test]
    fn point_counts() {
        let f2 = Field::new(2).unwrap();
        let line = Subspace::span(&f2, &[e(0), e(3)]).unwrap();
        assert_eq!(line.points(&f2).count(), 3);
        let f4 = Field::new(4).unwrap();
        let solid = Subspace::span(&f4, &[e(0), e(1), e(2), e(3)]).unwrap();
        assert_eq!(solid.points(&f4).count(), 85);
        let f8 = Field::new(8).unwrap();
        let all = Subspace::span(&f8, &(0..6).map(e).collect::<Vec<_>>()).unwrap();
        let pts: HashSet<_> = all.points(&f8).collect();
        assert_eq!(pts.len(), 37_449);
    }

    #[test]
    fn gaussian_counts() {
        assert_eq!(gaussian_count(6, 4, 2), 651);
        assert_eq!(gaussian_count(6, 4, 4), 93_093);
        assert_eq!(gaussian_count(6, 4, 8), 19_477_641);
        assert_eq!(gaussian_count(4, 2, 2), 35);
        assert_eq!(gaussian_count(5, 0, 3), 1);
    }

    #[test]
    fn brute_force_solid_count_q2() {
        // Every spanning set of four vectors of GF(2)^6, deduplicated by row space.
        let f = Field::new(2).unwrap();
        let vectors: Vec<[Fe; 6]> = (1u32..64).map(|w| unpack::<6>(1, w)).collect();
        let mut seen = HashSet::new();
        for a in 0..vectors.len() {
            for b in a + 1..vectors.len() {
                for c in b + 1..vectors.len() {
                    for d in c + 1..vectors.len() {
                        let s =
                            Subspace::span(&f, &[vectors[a], vectors[b], vectors[c], vectors[d]])
                                .unwrap();
                        if s.rank() == 4 {
                            seen.insert(s);
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len(), 651);
        let enumerated: HashSet<_> = SubspaceEnumerator::<6>::new(2, 4).iter().collect();
        assert_eq!(enumerated, seen);
    }

    #[test]
    fn enumerator_decode_matches_iteration() {
        let en = SubspaceEnumerator::<6>::new(4, 4);
        assert_eq!(en.len(), 93_093);
        for (i, s) in en.iter().enumerate().step_by(997) {
            assert_eq!(en.decode(i as u64), s);
        }
        let lines = SubspaceEnumerator::<4>::new(4, 2);
        assert_eq!(lines.len(), (16 + 1) * (16 + 4 + 1));
    }

    #[test]
    fn pack_is_additive() {
        let f = Field::new(8).unwrap();
        let a = [Fe(1), Fe(7), Fe(0), Fe(3), Fe(5), Fe(2)];
        let b = [Fe(6), Fe(7), Fe(1), Fe(0), Fe(4), Fe(2)];
        assert_eq!(pack(f.degree(), &add(&a, &b)), pack(3, &a) ^ pack(3, &b));
        assert_eq!(unpack::<6>(3, pack(3, &a)), a);
    }
}
