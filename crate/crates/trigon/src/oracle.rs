//! Brute-force ground truth for the counting pipeline.
//!
//! Everything here works straight from the definitions by enumerating spin
//! states or edge subsets, with no transfer-matrix machinery, so it can
//! cross-check the fast path on small polygons.

use thiserror::Error;

use crate::spin::{BigCount, Spin};
use crate::triangulation::Triangulation;

/// Largest polygon the spin-state enumerations accept.
pub const MAX_BRUTE_VERTICES: usize = 30;

/// Largest polygon the intersecting-set backtracker accepts.
pub const MAX_INTERSECTING_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("brute force supports n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("spin word {word:#b} has bits beyond the {n} vertices")]
    ExtraBits { word: u32, n: usize },
}

/// A full spin assignment for an `n`-gon, packed one bit per vertex.
/// Bit `v` set means vertex `v` carries spin minus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinState {
    word: u32,
    n: usize,
}

impl SpinState {
    pub fn new(word: u32, n: usize) -> Result<SpinState, OracleError> {
        if n > MAX_BRUTE_VERTICES {
            return Err(OracleError::TooLarge {
                n,
                max: MAX_BRUTE_VERTICES,
            });
        }
        if word >> n != 0 {
            return Err(OracleError::ExtraBits { word, n });
        }
        Ok(SpinState { word, n })
    }

    pub fn from_spins(spins: &[Spin]) -> Result<SpinState, OracleError> {
        let mut word = 0u32;
        for (v, spin) in spins.iter().enumerate() {
            if *spin == Spin::Minus {
                word |= 1 << v;
            }
        }
        SpinState::new(word, spins.len())
    }

    pub fn word(self) -> u32 {
        self.word
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn spin(self, v: usize) -> Spin {
        assert!(v < self.n, "vertex {v} out of range");
        if self.word >> v & 1 == 0 {
            Spin::Plus
        } else {
            Spin::Minus
        }
    }

    /// The state with every spin reversed.
    pub fn flipped(self) -> SpinState {
        SpinState {
            word: self.word ^ ((1u32 << self.n) - 1),
            n: self.n,
        }
    }
}

fn check_state(t: &Triangulation, state: SpinState) {
    assert_eq!(
        state.n(),
        t.n(),
        "spin state dimension must match the polygon"
    );
}

/// Edges whose endpoints carry equal spins, in the order of
/// [`Triangulation::edges`].
pub fn frustrated_edges(t: &Triangulation, state: SpinState) -> Vec<(usize, usize)> {
    check_state(t, state);
    t.edges()
        .into_iter()
        .filter(|&(a, b)| state.spin(a) == state.spin(b))
        .collect()
}

/// Whether every face has exactly one frustrated edge. Vacuously true for
/// the 2-gon.
pub fn is_satisfying(t: &Triangulation, state: SpinState) -> bool {
    check_state(t, state);
    t.faces().iter().all(|face| {
        face.edges()
            .into_iter()
            .filter(|&(a, b)| state.spin(a) == state.spin(b))
            .count()
            == 1
    })
}

fn faces_as_triples(t: &Triangulation) -> Vec<[usize; 3]> {
    t.faces().iter().map(|f| f.vertices).collect()
}

fn count_frustrated_in_face(word: u32, face: [usize; 3]) -> u32 {
    let [a, b, c] = face;
    let mut frustrated = 0;
    for (x, y) in [(a, b), (b, c), (a, c)] {
        frustrated += ((word >> x ^ word >> y) & 1 == 0) as u32;
    }
    frustrated
}

/// Counts satisfying states by enumerating spin words. Exploits only the
/// global flip symmetry: words with vertex 0 spin-plus are enumerated and
/// the total doubled.
pub fn brute_count_satisfying(t: &Triangulation) -> Result<BigCount, OracleError> {
    let n = t.n();
    if n > MAX_BRUTE_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_BRUTE_VERTICES,
        });
    }
    if n == 2 {
        // No faces: all four states satisfy vacuously.
        return Ok(BigCount::from(4u32));
    }
    let faces = faces_as_triples(t);
    let mut found: u64 = 0;
    for upper in 0..1u32 << (n - 1) {
        let word = upper << 1;
        if faces
            .iter()
            .all(|&face| count_frustrated_in_face(word, face) == 1)
        {
            found += 1;
        }
    }
    Ok(BigCount::from(found * 2))
}

/// All satisfying spin words, ascending.
pub fn satisfying_states(t: &Triangulation) -> Result<Vec<u32>, OracleError> {
    let n = t.n();
    if n > MAX_INTERSECTING_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_INTERSECTING_VERTICES,
        });
    }
    let faces = faces_as_triples(t);
    Ok((0..1u32 << n)
        .filter(|&word| {
            faces
                .iter()
                .all(|&face| count_frustrated_in_face(word, face) == 1)
        })
        .collect())
}

/// Exhaustive census of the groundstates under the uniform coupling: the
/// states frustrating the fewest edges, i.e. the max-cut states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundstateCensus {
    /// Fewest frustrated edges any state attains.
    pub min_frustrated: usize,
    /// Number of states attaining it.
    pub count: BigCount,
    /// Energy of those states: frustrated minus unfrustrated edges.
    pub min_energy: i64,
}

/// Scans all spin states for the minimum number of frustrated edges,
/// counting the minimizers.
///
/// This is the plain per-edge count. On a polygon triangulation its
/// minimizers need not be the satisfying states: a frustrated diagonal
/// serves both of its faces at the cost of a single edge, and a tie can
/// even admit states giving some face three frustrated edges. The per-face
/// count of [`face_frustration`] is the quantity whose minimizers are
/// exactly the satisfying states.
pub fn groundstate_census(t: &Triangulation) -> Result<GroundstateCensus, OracleError> {
    let n = t.n();
    if n > MAX_BRUTE_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_BRUTE_VERTICES,
        });
    }
    let edges = t.edges();
    let mut min_frustrated = usize::MAX;
    let mut minimizers: u64 = 0;
    let half_words = 1u32 << (n - 1);
    for upper in 0..half_words {
        let word = upper << 1;
        let frustrated = edges
            .iter()
            .filter(|&&(a, b)| (word >> a ^ word >> b) & 1 == 0)
            .count();
        if frustrated < min_frustrated {
            min_frustrated = frustrated;
            minimizers = 1;
        } else if frustrated == min_frustrated {
            minimizers += 1;
        }
    }
    Ok(GroundstateCensus {
        min_frustrated,
        count: BigCount::from(minimizers * 2),
        min_energy: 2 * min_frustrated as i64 - edges.len() as i64,
    })
}

/// All spin words attaining the minimum frustrated-edge count, ascending.
pub fn minimum_energy_states(t: &Triangulation) -> Result<Vec<u32>, OracleError> {
    let n = t.n();
    if n > MAX_INTERSECTING_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_INTERSECTING_VERTICES,
        });
    }
    let edges = t.edges();
    let frustration = |word: u32| {
        edges
            .iter()
            .filter(|&&(a, b)| (word >> a ^ word >> b) & 1 == 0)
            .count()
    };
    let min = (0..1u32 << n).map(frustration).min().expect("nonempty");
    Ok((0..1u32 << n).filter(|&w| frustration(w) == min).collect())
}

/// Total frustration summed over faces: each face contributes the number
/// of its frustrated edges, so a frustrated diagonal counts once for each
/// of the two faces it bounds.
///
/// Every face of every state has one or three frustrated edges, so this
/// total is at least the face count, with equality exactly on the
/// satisfying states.
pub fn face_frustration(t: &Triangulation, state: SpinState) -> usize {
    let word = state.word();
    t.faces()
        .iter()
        .map(|face| {
            face.edges()
                .iter()
                .filter(|&&(a, b)| (word >> a ^ word >> b) & 1 == 0)
                .count()
        })
        .sum()
}

/// All spin words minimizing [`face_frustration`], ascending. These are the
/// satisfying states whenever one exists.
pub fn minimum_face_frustration_states(t: &Triangulation) -> Result<Vec<u32>, OracleError> {
    let n = t.n();
    if n > MAX_INTERSECTING_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_INTERSECTING_VERTICES,
        });
    }
    let faces = t.faces();
    let total = |word: u32| -> usize {
        faces
            .iter()
            .map(|face| {
                face.edges()
                    .iter()
                    .filter(|&&(a, b)| (word >> a ^ word >> b) & 1 == 0)
                    .count()
            })
            .sum()
    };
    let min = (0..1u32 << n).map(total).min().expect("nonempty state space");
    Ok((0..1u32 << n).filter(|&w| total(w) == min).collect())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeStatus {
    Free,
    Chosen,
    Forbidden,
}

/// Counts sets of edges meeting every face in exactly one edge, by
/// backtracking face by face: picking an edge for a face forbids its other
/// two edges for the rest of the search.
pub fn count_intersecting_sets(t: &Triangulation) -> Result<BigCount, OracleError> {
    let n = t.n();
    if n > MAX_INTERSECTING_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_INTERSECTING_VERTICES,
        });
    }
    let edges = t.edges();
    let edge_id = |a: usize, b: usize| {
        let pair = if a < b { (a, b) } else { (b, a) };
        edges.iter().position(|&e| e == pair).expect("face edge")
    };
    let faces: Vec<[usize; 3]> = t
        .faces()
        .iter()
        .map(|f| {
            let [a, b, c] = f.vertices;
            [edge_id(a, b), edge_id(b, c), edge_id(a, c)]
        })
        .collect();
    let mut status = vec![EdgeStatus::Free; edges.len()];
    let total = backtrack(&faces, 0, &mut status);
    Ok(BigCount::from(total))
}

fn backtrack(faces: &[[usize; 3]], at: usize, status: &mut [EdgeStatus]) -> u64 {
    let Some(&face) = faces.get(at) else {
        return 1;
    };
    let chosen = face
        .iter()
        .filter(|&&e| status[e] == EdgeStatus::Chosen)
        .count();
    match chosen {
        1 => {
            // An earlier pick already covers this face; lock the rest out.
            let freed = forbid_free(face, status);
            let total = backtrack(faces, at + 1, status);
            release(&freed, status);
            total
        }
        0 => {
            let mut total = 0;
            for slot in 0..3 {
                if status[face[slot]] != EdgeStatus::Free {
                    continue;
                }
                status[face[slot]] = EdgeStatus::Chosen;
                let freed = forbid_free(face, status);
                total += backtrack(faces, at + 1, status);
                release(&freed, status);
                status[face[slot]] = EdgeStatus::Free;
            }
            total
        }
        _ => 0,
    }
}

fn forbid_free(face: [usize; 3], status: &mut [EdgeStatus]) -> Vec<usize> {
    let mut freed = Vec::new();
    for &e in &face {
        if status[e] == EdgeStatus::Free {
            status[e] = EdgeStatus::Forbidden;
            freed.push(e);
        }
    }
    freed
}

fn release(freed: &[usize], status: &mut [EdgeStatus]) {
    for &e in freed {
        status[e] = EdgeStatus::Free;
    }
}
