//! Geometry of the repetitive polygon: regions, m-diagonals, the region
//! rotation, and crossing predicates. Everything is decided by index
//! arithmetic on vertex numbers; no coordinates are ever computed.

use alloc::vec::Vec;
use core::fmt;

/// Model parameters: rank `n`, higher-cluster level `m`, repetition count
/// `p`. Each of the `p` regions is combinatorially an `((n+1)m+2)`-gon, and
/// consecutive regions share one boundary vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModelParams {
    n: u32,
    m: u32,
    p: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolygonError {
    /// n, m and p must all be at least 1.
    InvalidParams { n: u32, m: u32, p: u32 },
    /// Crossing is only defined for diagonals of the same region.
    RegionMismatch { left: u32, right: u32 },
}

impl fmt::Display for PolygonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonError::InvalidParams { n, m, p } => {
                write!(f, "model parameters must be positive, got n={n} m={m} p={p}")
            }
            PolygonError::RegionMismatch { left, right } => {
                write!(f, "diagonals live in regions {left} and {right}; transport one first")
            }
        }
    }
}

impl core::error::Error for PolygonError {}

impl ModelParams {
    pub fn new(n: u32, m: u32, p: u32) -> Result<Self, PolygonError> {
        if n == 0 || m == 0 || p == 0 {
            return Err(PolygonError::InvalidParams { n, m, p });
        }
        Ok(ModelParams { n, m, p })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Vertex count of one region: `(n+1)m + 2`.
    pub fn region_size(&self) -> u32 {
        (self.n + 1) * self.m + 2
    }

    /// Vertex count of the whole polygon: `p((n+1)m + 1)`. Vertex `N` of
    /// region `k` is identified with vertex 1 of region `k+1`, so each
    /// region contributes `N - 1` fresh vertices.
    pub fn total_vertices(&self) -> u32 {
        self.p * (self.region_size() - 1)
    }

    /// Expected number of m-diagonals, `p * n(m(n+1)+2)/2`.
    pub fn diagonal_count(&self) -> u64 {
        let n = self.n as u64;
        let m = self.m as u64;
        let p = self.p as u64;
        p * n * (m * (n + 1) + 2) / 2
    }

    /// Reduce a region index into `1..=p`.
    pub fn reduce_region(&self, k: i64) -> u32 {
        let p = self.p as i64;
        (((k - 1).rem_euclid(p)) + 1) as u32
    }

    /// True iff the pair `(i, j)` is an m-diagonal of one region: it must
    /// divide the region boundary into two parts that each have 2 vertices
    /// modulo m (endpoints counted on both sides). Boundary segments,
    /// including the inner arc `(1, N)`, are not diagonals.
    pub fn is_m_diagonal(&self, i: u32, j: u32) -> bool {
        let n_gon = self.region_size();
        if i == 0 || j == 0 || i >= j || j > n_gon {
            return false;
        }
        if j - i < 2 || (i, j) == (1, n_gon) {
            return false;
        }
        // Sides of the two parts cut off by (i, j), endpoints included.
        let part_a = j - i + 1;
        let part_b = n_gon - (j - i) + 1;
        part_a % self.m == 2 % self.m && part_b % self.m == 2 % self.m
    }

    /// All m-diagonals of all p regions, in canonical form, sorted by
    /// `(i, j, region)`.
    pub fn diagonals(&self) -> Vec<Diagonal> {
        let n_gon = self.region_size();
        let mut out = Vec::new();
        for i in 1..=n_gon {
            for j in (i + 1)..=n_gon {
                if self.is_m_diagonal(i, j) {
                    for k in 1..=self.p {
                        out.push(Diagonal { i, j, region: k });
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Clockwise rotation of the whole polygon by one region:
    /// `(i, j, k) -> (i, j, k+1)`, cyclic of order p.
    pub fn rho(&self, d: Diagonal) -> Diagonal {
        Diagonal {
            region: self.reduce_region(d.region as i64 + 1),
            ..d
        }
    }

    pub fn rho_inv(&self, d: Diagonal) -> Diagonal {
        Diagonal {
            region: self.reduce_region(d.region as i64 - 1),
            ..d
        }
    }

    pub fn is_valid_diagonal(&self, d: Diagonal) -> bool {
        d.region >= 1 && d.region <= self.p && self.is_m_diagonal(d.i, d.j)
    }
}

/// A diagonal `(i, j)` of region `k`, stored in canonical form `i < j` with
/// `1 <= i < j <= N` and `1 <= k <= p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    pub i: u32,
    pub j: u32,
    pub region: u32,
}

impl Diagonal {
    pub fn new(i: u32, j: u32, region: u32) -> Self {
        debug_assert!(i < j);
        Diagonal { i, j, region }
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.region)
    }
}

/// True iff two diagonals of the same region cross in its interior, i.e.
/// their endpoints strictly interleave. Sharing an endpoint or nesting is
/// not crossing. Diagonals of different regions must be transported into a
/// common region by the caller first.
pub fn crosses(a: Diagonal, b: Diagonal) -> Result<bool, PolygonError> {
    if a.region != b.region {
        return Err(PolygonError::RegionMismatch {
            left: a.region,
            right: b.region,
        });
    }
    Ok((a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j))
}

/// One region of the repetitive polygon. Regions are combinatorial: the
/// only geometric fact recorded is that vertex `N` of region `k` coincides
/// with vertex 1 of region `k+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    pub index: u32,
}

impl Region {
    /// The region obtained by applying the rotation once.
    pub fn rotate(&self, params: &ModelParams) -> Region {
        Region {
            index: params.reduce_region(self.index as i64 + 1),
        }
    }

    /// The vertex of the whole polygon that a local index denotes, counting
    /// fresh vertices per region; exposes the seam identification.
    pub fn global_vertex(&self, local: u32, params: &ModelParams) -> u32 {
        let fresh = params.region_size() - 1;
        let base = (self.index - 1) * fresh;
        (base + local - 1) % params.total_vertices() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_params() {
        assert!(ModelParams::new(0, 1, 1).is_err());
        assert!(ModelParams::new(3, 0, 1).is_err());
        assert!(ModelParams::new(3, 1, 0).is_err());
    }

    #[test]
    fn hexagon_m1_diagonal_count() {
        let params = ModelParams::new(3, 1, 3).unwrap();
        let ds = params.diagonals();
        assert_eq!(ds.len(), 27);
        assert_eq!(ds.len() as u64, params.diagonal_count());
        // 9 per region.
        for k in 1..=3 {
            assert_eq!(ds.iter().filter(|d| d.region == k).count(), 9);
        }
    }

    #[test]
    fn hexagon_m2_diagonals() {
        let params = ModelParams::new(1, 2, 1).unwrap();
        let ds = params.diagonals();
        let pairs: Vec<(u32, u32)> = ds.iter().map(|d| (d.i, d.j)).collect();
        assert_eq!(pairs, vec![(1, 4), (2, 5), (3, 6)]);
    }

    #[test]
    fn octagon_m2_count() {
        let params = ModelParams::new(2, 2, 2).unwrap();
        assert_eq!(params.diagonals().len(), 16);
    }

    #[test]
    fn m_diagonal_examples() {
        let hexagon = ModelParams::new(1, 2, 1).unwrap();
        assert!(hexagon.is_m_diagonal(1, 4));
        assert!(!hexagon.is_m_diagonal(1, 3));
        let octagon = ModelParams::new(2, 2, 1).unwrap();
        assert!(octagon.is_m_diagonal(2, 7));
        // Boundary arcs and sides are never diagonals.
        assert!(!octagon.is_m_diagonal(1, 8));
        assert!(!octagon.is_m_diagonal(3, 4));
    }

    #[test]
    fn rho_cycles_regions() {
        let params = ModelParams::new(3, 1, 3).unwrap();
        let d = Diagonal::new(2, 4, 1);
        assert_eq!(params.rho(d), Diagonal::new(2, 4, 2));
        let mut x = Diagonal::new(2, 5, 2);
        for _ in 0..3 {
            x = params.rho(x);
        }
        assert_eq!(x, Diagonal::new(2, 5, 2));
        assert_eq!(params.rho(Diagonal::new(1, 3, 3)), Diagonal::new(1, 3, 1));
    }

    #[test]
    fn crossing_rules() {
        let a = Diagonal::new(1, 3, 1);
        let b = Diagonal::new(2, 4, 1);
        assert!(crosses(a, b).unwrap());
        assert!(crosses(b, a).unwrap());
        // Shared endpoint.
        assert!(!crosses(Diagonal::new(1, 3, 1), Diagonal::new(3, 5, 1)).unwrap());
        // Nested.
        assert!(!crosses(Diagonal::new(2, 5, 1), Diagonal::new(3, 4, 1)).unwrap());
        // Different regions are rejected.
        assert!(crosses(a, Diagonal::new(2, 4, 2)).is_err());
    }

    #[test]
    fn seam_vertex_identification() {
        let params = ModelParams::new(3, 1, 3).unwrap();
        let r1 = Region { index: 1 };
        let r2 = Region { index: 2 };
        assert_eq!(r1.global_vertex(6, &params), r2.global_vertex(1, &params));
        assert_eq!(r1.rotate(&params), r2);
    }
}
