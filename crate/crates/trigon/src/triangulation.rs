//! Triangulations of a convex polygon and their faces.
//!
//! Vertices of the `n`-gon are `0..n` in counterclockwise order. A
//! triangulation is stored as its set of diagonals; the polygon sides are
//! implicit. The degenerate case `n = 2` (a single edge, no faces) is a
//! valid [`Triangulation`] so that edge-by-edge construction can start from
//! it.
//!
//! Every constructed [`Triangulation`] is valid: the constructor rejects
//! out-of-range, duplicate, boundary, or crossing diagonals and wrong
//! diagonal counts. [`violations`] reports all defects of a candidate at
//! once for diagnostics.

use std::fmt;

use thiserror::Error;

/// A defect in a candidate triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("polygon needs at least 2 vertices, got {n}")]
    TooFewVertices { n: usize },
    #[error("diagonal ({}, {}) has an endpoint outside 0..{n}", diagonal.0, diagonal.1)]
    OutOfRange { diagonal: (usize, usize), n: usize },
    #[error("loop edge at vertex {vertex}")]
    LoopEdge { vertex: usize },
    #[error("({}, {}) is a polygon side, not a diagonal", diagonal.0, diagonal.1)]
    BoundaryAsDiagonal { diagonal: (usize, usize) },
    #[error("duplicate diagonal ({}, {})", diagonal.0, diagonal.1)]
    Duplicate { diagonal: (usize, usize) },
    #[error("diagonals ({}, {}) and ({}, {}) cross", first.0, first.1, second.0, second.1)]
    Crossing {
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("a triangulation of the {n}-gon has {expected} diagonal(s), got {found}")]
    WrongDiagonalCount {
        n: usize,
        expected: usize,
        found: usize,
    },
}

/// Expected diagonal count for an `n`-gon: `n - 3`, or `0` for the
/// degenerate 2-gon.
fn expected_diagonals(n: usize) -> usize {
    n.saturating_sub(3)
}

fn is_boundary_pair_of(n: usize, a: usize, b: usize) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    hi - lo == 1 || (lo == 0 && hi == n - 1)
}

/// Strict crossing test for normalized diagonals `a < b`, `c < d`.
/// Chords of a convex polygon cross exactly when their endpoints interleave.
fn chords_cross(x: (usize, usize), y: (usize, usize)) -> bool {
    let ((a, b), (c, d)) = (x, y);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Reports every defect of a candidate diagonal set for an `n`-gon,
/// including all crossing pairs. Returns an empty list exactly when
/// [`Triangulation::new`] accepts the input.
pub fn violations(n: usize, diagonals: &[(usize, usize)]) -> Vec<Violation> {
    let mut out = Vec::new();
    if n < 2 {
        out.push(Violation::TooFewVertices { n });
        return out;
    }

    let mut usable = Vec::new();
    for &(a, b) in diagonals {
        if a >= n || b >= n {
            out.push(Violation::OutOfRange { diagonal: (a, b), n });
            continue;
        }
        if a == b {
            out.push(Violation::LoopEdge { vertex: a });
            continue;
        }
        let pair = if a < b { (a, b) } else { (b, a) };
        if is_boundary_pair_of(n, pair.0, pair.1) {
            out.push(Violation::BoundaryAsDiagonal { diagonal: (a, b) });
            continue;
        }
        usable.push(pair);
    }

    let mut sorted = usable.clone();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            out.push(Violation::Duplicate { diagonal: w[0] });
        }
    }
    out.dedup();

    for (i, &x) in usable.iter().enumerate() {
        for &y in &usable[i + 1..] {
            if chords_cross(x, y) {
                out.push(Violation::Crossing { first: x, second: y });
            }
        }
    }

    let expected = expected_diagonals(n);
    if diagonals.len() != expected {
        out.push(Violation::WrongDiagonalCount {
            n,
            expected,
            found: diagonals.len(),
        });
    }
    out
}

/// A triangulation of a convex polygon, canonically represented.
///
/// Diagonals are stored as `(lo, hi)` pairs in lexicographic order, so
/// structural equality is semantic equality of labeled triangulations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<(usize, usize)>,
}

impl Triangulation {
    /// Builds a validated triangulation, normalizing diagonal order.
    /// Returns the first defect found; see [`violations`] for an exhaustive
    /// report.
    pub fn new(
        n: usize,
        diagonals: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Triangulation, Violation> {
        if n < 2 {
            return Err(Violation::TooFewVertices { n });
        }
        let mut diags: Vec<(usize, usize)> = Vec::new();
        for (a, b) in diagonals {
            if a >= n || b >= n {
                return Err(Violation::OutOfRange { diagonal: (a, b), n });
            }
            if a == b {
                return Err(Violation::LoopEdge { vertex: a });
            }
            let pair = if a < b { (a, b) } else { (b, a) };
            if is_boundary_pair_of(n, pair.0, pair.1) {
                return Err(Violation::BoundaryAsDiagonal { diagonal: (a, b) });
            }
            diags.push(pair);
        }
        let expected = expected_diagonals(n);
        if diags.len() != expected {
            return Err(Violation::WrongDiagonalCount {
                n,
                expected,
                found: diags.len(),
            });
        }
        diags.sort_unstable();
        for w in diags.windows(2) {
            if w[0] == w[1] {
                return Err(Violation::Duplicate { diagonal: w[0] });
            }
        }
        if let Some((x, y)) = first_crossing(&diags) {
            return Err(Violation::Crossing { first: x, second: y });
        }
        Ok(Triangulation { n, diagonals: diags })
    }

    /// The 2-gon: two vertices joined by a single edge, no faces.
    pub fn degenerate() -> Triangulation {
        Triangulation {
            n: 2,
            diagonals: Vec::new(),
        }
    }

    pub fn triangle() -> Triangulation {
        Triangulation {
            n: 3,
            diagonals: Vec::new(),
        }
    }

    /// The fan triangulation: every diagonal incident to vertex 0.
    /// Requires `n >= 2`.
    pub fn fan(n: usize) -> Triangulation {
        assert!(n >= 2, "fan needs at least 2 vertices");
        Triangulation {
            n,
            diagonals: (2..n.saturating_sub(1)).map(|k| (0, k)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    /// Whether this is the 2-gon, the only triangulation without faces.
    pub fn is_degenerate(&self) -> bool {
        self.n == 2
    }

    pub fn is_diagonal(&self, a: usize, b: usize) -> bool {
        let pair = if a < b { (a, b) } else { (b, a) };
        self.diagonals.binary_search(&pair).is_ok()
    }

    pub fn is_boundary_pair(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && a != b && is_boundary_pair_of(self.n, a, b)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.is_boundary_pair(a, b) || self.is_diagonal(a, b)
    }

    /// All edges, boundary sides first, as `(lo, hi)` pairs. The 2-gon has
    /// the single edge `(0, 1)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n + self.diagonals.len());
        if self.n == 2 {
            out.push((0, 1));
        } else {
            for i in 0..self.n - 1 {
                out.push((i, i + 1));
            }
            out.push((0, self.n - 1));
        }
        out.extend_from_slice(&self.diagonals);
        out
    }

    /// Counterclockwise-ordered boundary edges `(i, i + 1 mod n)`.
    ///
    /// For the 2-gon this yields both orientations of its single edge, which
    /// are exactly the two valid bottom edges.
    pub fn boundary_edges(&self) -> impl Iterator<Item = BoundaryEdge> + '_ {
        (0..self.n).map(|i| BoundaryEdge {
            first: i,
            second: (i + 1) % self.n,
        })
    }

    /// The rotation `v -> (v + shift) mod n`, which preserves the vertex
    /// cycle orientation.
    pub fn rotated(&self, shift: usize) -> Triangulation {
        let n = self.n;
        let map = |v: usize| (v + shift) % n;
        let mut diags: Vec<(usize, usize)> = self
            .diagonals
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (map(a), map(b));
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        diags.sort_unstable();
        Triangulation { n, diagonals: diags }
    }

    /// The reflection `v -> (n - v) mod n`, which reverses the vertex cycle.
    pub fn mirrored(&self) -> Triangulation {
        let n = self.n;
        let map = |v: usize| (n - v) % n;
        let mut diags: Vec<(usize, usize)> = self
            .diagonals
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (map(a), map(b));
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        diags.sort_unstable();
        Triangulation { n, diagonals: diags }
    }

    /// Adjacency lists sorted by counterclockwise offset from each vertex.
    /// List `v` starts at `v + 1 mod n` and ends at `v - 1 mod n`.
    pub(crate) fn ccw_adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable_by_key(|&u| (u + n - v) % n);
        }
        adj
    }

    /// Third vertex of the face lying on edge `{a, b}` on the side of the
    /// counterclockwise interval `a..b`. The interval must contain at least
    /// one vertex strictly between `a` and `b`.
    pub(crate) fn apex(&self, adj: &[Vec<usize>], a: usize, b: usize) -> usize {
        let n = self.n;
        let off = |u: usize| (u + n - a) % n;
        let list = &adj[a];
        let i = list.partition_point(|&u| off(u) < off(b));
        debug_assert!(i > 0, "no face vertex between {a} and {b}");
        list[i - 1]
    }

    /// All `n - 2` faces, sorted by vertex triple. Empty for the 2-gon.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.n;
        if n < 3 {
            return Vec::new();
        }
        let adj = self.ccw_adjacency();
        let mut out = Vec::with_capacity(n - 2);
        let mut stack = vec![(0usize, n - 1)];
        while let Some((a, b)) = stack.pop() {
            if (b + n - a) % n == 1 {
                continue;
            }
            let v = self.apex(&adj, a, b);
            let interior = !is_boundary_pair_of(n, a, v)
                && !is_boundary_pair_of(n, v, b)
                && !is_boundary_pair_of(n, a, b);
            out.push(Face {
                vertices: [a, v, b],
                interior,
            });
            stack.push((a, v));
            stack.push((v, b));
        }
        out.sort_unstable_by_key(|f| f.vertices);
        out
    }

    /// Number of interior faces: faces none of whose edges is a polygon
    /// side.
    pub fn interior_face_count(&self) -> usize {
        self.faces().iter().filter(|f| f.interior).count()
    }
}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triangulation(n={}, diagonals={:?})", self.n, self.diagonals)
    }
}

/// Finds one crossing pair among normalized diagonals, by a stack sweep
/// over nesting intervals. Chords sharing an endpoint never cross, so the
/// sweep orders them outermost-first and checks each new chord against the
/// innermost open one.
fn first_crossing(diagonals: &[(usize, usize)]) -> Option<((usize, usize), (usize, usize))> {
    let mut by_nesting = diagonals.to_vec();
    by_nesting.sort_unstable_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in &by_nesting {
        while let Some(&(_, d)) = stack.last() {
            if d <= a {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&(c, d)) = stack.last() {
            if b > d {
                return Some(((c, d), (a, b)));
            }
        }
        stack.push((a, b));
    }
    None
}

/// A triangle face, vertices in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: [usize; 3],
    /// Whether all three edges are diagonals.
    pub interior: bool,
}

impl Face {
    /// The three edges as normalized `(lo, hi)` pairs.
    pub fn edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.vertices;
        [(a, b), (b, c), (a, c)]
    }
}

/// Error for a bottom-edge reference that is not a counterclockwise
/// boundary edge of the triangulation at hand.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("({first}, {second}) is not a counterclockwise boundary edge of the {n}-gon")]
pub struct NotABoundaryEdge {
    pub first: usize,
    pub second: usize,
    pub n: usize,
}

/// An oriented polygon side `(first, second)` with `second = first + 1 mod
/// n`: the edge a construction step works across, with the triangulation
/// lying to its left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryEdge {
    first: usize,
    second: usize,
}

impl BoundaryEdge {
    /// Validates that `(first, second)` is a counterclockwise boundary edge
    /// of `t`.
    pub fn new(
        t: &Triangulation,
        first: usize,
        second: usize,
    ) -> Result<BoundaryEdge, NotABoundaryEdge> {
        let n = t.n();
        if first < n && second == (first + 1) % n {
            Ok(BoundaryEdge { first, second })
        } else {
            Err(NotABoundaryEdge { first, second, n })
        }
    }

    /// The edge `(0, 1)`, valid for every triangulation.
    pub fn base() -> BoundaryEdge {
        BoundaryEdge { first: 0, second: 1 }
    }

    pub(crate) fn new_unchecked(first: usize, second: usize) -> BoundaryEdge {
        BoundaryEdge { first, second }
    }

    pub fn first(self) -> usize {
        self.first
    }

    pub fn second(self) -> usize {
        self.second
    }

    /// Image of this edge under the reflection of [`Triangulation::mirrored`],
    /// reoriented counterclockwise.
    pub fn mirrored(self, n: usize) -> BoundaryEdge {
        BoundaryEdge {
            first: (n - self.second) % n,
            second: (n - self.first) % n,
        }
    }
}

impl fmt::Display for BoundaryEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}
