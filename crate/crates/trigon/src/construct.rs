//! Building triangulations edge by edge and taking them apart again.
//!
//! The two vertex-adding operations `W` and `Z` glue a triangle onto the
//! bottom edge of a triangulation; [`merge`] glues two triangulations side
//! by side under a fresh triangle. Every triangulation of the polygon
//! arises from the degenerate edge this way, and [`decompose`] recovers one
//! such recipe as a [`Plan`]. The face-adjacency structure is exposed as a
//! [`DualTree`].

use std::collections::HashMap;

use thiserror::Error;

use crate::plan::{Op, Plan, PlanId, PlanNode};
use crate::triangulation::{BoundaryEdge, Face, NotABoundaryEdge, Triangulation};

/// Output of one vertex-adding step.
#[derive(Clone, Debug)]
pub struct Step {
    pub triangulation: Triangulation,
    /// Bottom edge of the grown triangulation.
    pub bottom: BoundaryEdge,
    /// Index of the vertex the step inserted.
    pub new_vertex: usize,
    /// `relabeling[v]` is the new index of old vertex `v`.
    pub relabeling: Vec<usize>,
}

/// Output of a [`merge`].
#[derive(Clone, Debug)]
pub struct MergeStep {
    pub triangulation: Triangulation,
    /// Bottom edge of the merged triangulation: the fresh edge between the
    /// operands' outer bottom vertices.
    pub bottom: BoundaryEdge,
    /// Vertex where the two operand bottoms were glued together.
    pub shared_vertex: usize,
    /// New index of each left-operand vertex.
    pub left_relabeling: Vec<usize>,
    /// New index of each right-operand vertex.
    pub right_relabeling: Vec<usize>,
}

fn check_bottom(t: &Triangulation, bottom: BoundaryEdge) -> Result<(), NotABoundaryEdge> {
    let n = t.n();
    if bottom.first() < n && bottom.second() == (bottom.first() + 1) % n {
        Ok(())
    } else {
        Err(NotABoundaryEdge {
            first: bottom.first(),
            second: bottom.second(),
            n,
        })
    }
}

/// Applies `op` across `bottom`, growing the polygon by one vertex.
pub fn apply_op(
    op: Op,
    t: &Triangulation,
    bottom: BoundaryEdge,
) -> Result<Step, NotABoundaryEdge> {
    check_bottom(t, bottom)?;
    let n = t.n();
    // The new vertex sits between the bottom endpoints in the vertex cycle;
    // labels at or above its slot shift up by one.
    let slot = bottom.first() + 1;
    let map = |v: usize| if v < slot { v } else { v + 1 };

    let mut diagonals: Vec<(usize, usize)> = t
        .diagonals()
        .iter()
        .map(|&(a, b)| (map(a), map(b)))
        .collect();
    if n >= 3 {
        // The covered bottom edge stops being a polygon side.
        diagonals.push((map(bottom.first()), map(bottom.second())));
    }
    let triangulation = Triangulation::new(n + 1, diagonals)
        .expect("a vertex-adding step preserves validity");
    let new_bottom = match op {
        Op::W => BoundaryEdge::new_unchecked(slot, map(bottom.second())),
        Op::Z => BoundaryEdge::new_unchecked(map(bottom.first()), slot),
    };
    Ok(Step {
        triangulation,
        bottom: new_bottom,
        new_vertex: slot,
        relabeling: (0..n).map(map).collect(),
    })
}

/// Applies the `W` operation: the new vertex becomes the first bottom
/// vertex.
pub fn apply_w(t: &Triangulation, bottom: BoundaryEdge) -> Result<Step, NotABoundaryEdge> {
    apply_op(Op::W, t, bottom)
}

/// Applies the `Z` operation: the new vertex becomes the second bottom
/// vertex.
pub fn apply_z(t: &Triangulation, bottom: BoundaryEdge) -> Result<Step, NotABoundaryEdge> {
    apply_op(Op::Z, t, bottom)
}

/// Glues `t1` and `t2` along their bottom edges: the second bottom vertex
/// of `t1` is identified with the first bottom vertex of `t2`, and a fresh
/// triangle closes the gap between the two remaining bottom vertices.
pub fn merge(
    t1: &Triangulation,
    b1: BoundaryEdge,
    t2: &Triangulation,
    b2: BoundaryEdge,
) -> Result<MergeStep, NotABoundaryEdge> {
    check_bottom(t1, b1)?;
    check_bottom(t2, b2)?;
    let (n1, n2) = (t1.n(), t2.n());
    let n = n1 + n2 - 1;

    // After rotating each operand so its bottom is (0, 1): the left operand
    // keeps vertex 0, its remaining vertices follow the right operand's in
    // the cycle, and both bottoms meet at the shared vertex n2.
    let map1 = |v: usize| match (v + n1 - b1.first()) % n1 {
        0 => 0,
        1 => n2,
        k => n2 + k - 1,
    };
    let map2 = |v: usize| match (v + n2 - b2.first()) % n2 {
        0 => n2,
        k => k,
    };

    let mut diagonals: Vec<(usize, usize)> = Vec::new();
    diagonals.extend(t1.diagonals().iter().map(|&(a, b)| (map1(a), map1(b))));
    diagonals.extend(t2.diagonals().iter().map(|&(a, b)| (map2(a), map2(b))));
    if n1 >= 3 {
        diagonals.push((0, n2));
    }
    if n2 >= 3 {
        diagonals.push((1, n2));
    }
    let triangulation =
        Triangulation::new(n, diagonals).expect("merging noncrossing operands preserves validity");
    Ok(MergeStep {
        triangulation,
        bottom: BoundaryEdge::base(),
        shared_vertex: n2,
        left_relabeling: (0..n1).map(map1).collect(),
        right_relabeling: (0..n2).map(map2).collect(),
    })
}

/// Node of a [`DualTree`]: either an internal node standing for a face, or
/// a leaf standing for the polygon side `(i, i + 1 mod n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualNode {
    Face(usize),
    Leaf(usize),
}

/// The dual tree of a triangulation: one internal node per face, one leaf
/// per polygon side, adjacent when the corresponding regions share an edge.
/// Neighbor lists follow each face's counterclockwise edge order, so the
/// tree carries its plane embedding.
#[derive(Clone, Debug)]
pub struct DualTree {
    n: usize,
    faces: Vec<Face>,
    neighbors: Vec<[DualNode; 3]>,
}

/// Errors from operations that need at least one face.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Bottom(#[from] NotABoundaryEdge),
    #[error("the 2-gon has no faces")]
    Degenerate,
}

/// Builds the dual tree of `t`. Fails on the 2-gon.
pub fn dual_tree(t: &Triangulation) -> Result<DualTree, ConstructError> {
    let n = t.n();
    if n < 3 {
        return Err(ConstructError::Degenerate);
    }
    let faces = t.faces();
    let mut faces_on_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, face) in faces.iter().enumerate() {
        for edge in face.edges() {
            faces_on_edge.entry(edge).or_default().push(i);
        }
    }
    let neighbors = faces
        .iter()
        .enumerate()
        .map(|(i, face)| {
            face.edges().map(|(lo, hi)| {
                if t.is_boundary_pair(lo, hi) {
                    // Leaf index is the first vertex of the side in
                    // counterclockwise orientation.
                    DualNode::Leaf(if hi - lo == 1 { lo } else { hi })
                } else {
                    let pair = &faces_on_edge[&(lo, hi)];
                    debug_assert_eq!(pair.len(), 2, "diagonal must bound two faces");
                    DualNode::Face(pair[0] + pair[1] - i)
                }
            })
        })
        .collect();
    Ok(DualTree {
        n,
        faces,
        neighbors,
    })
}

impl DualTree {
    /// Polygon size; equals the leaf count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn internal_count(&self) -> usize {
        self.faces.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.n
    }

    /// The face represented by internal node `i`.
    pub fn face(&self, i: usize) -> Face {
        self.faces[i]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Neighbors of internal node `i` in the face's counterclockwise edge
    /// order.
    pub fn neighbors(&self, i: usize) -> [DualNode; 3] {
        self.neighbors[i]
    }

    /// Internal nodes with no leaf neighbor; these are exactly the interior
    /// faces.
    pub fn leafless_internal_nodes(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&i| {
                self.neighbors[i]
                    .iter()
                    .all(|node| matches!(node, DualNode::Face(_)))
            })
            .collect()
    }

    /// Number of internal neighbors of internal node `i`.
    pub fn internal_degree(&self, i: usize) -> usize {
        self.neighbors[i]
            .iter()
            .filter(|node| matches!(node, DualNode::Face(_)))
            .count()
    }

    /// Whether the internal nodes form a path (equivalently, no interior
    /// faces and no branching).
    pub fn is_path(&self) -> bool {
        (0..self.faces.len()).all(|i| self.internal_degree(i) <= 2)
    }
}

/// Decomposes `t` into a construction plan that rebuilds it from
/// degenerate edges, working away from `bottom`. Merge nodes with a
/// degenerate operand are absorbed into `W`/`Z` applications, so chains
/// come out as chains.
///
/// Plans carry no absolute vertex labels, so evaluating the result
/// reproduces `t` up to the rotation that aligns the bottom edges.
pub fn decompose(t: &Triangulation, bottom: BoundaryEdge) -> Result<Plan, NotABoundaryEdge> {
    check_bottom(t, bottom)?;
    let n = t.n();
    if n == 2 {
        return Ok(Plan::leaf());
    }
    let adj = t.ccw_adjacency();

    enum Task {
        // Counterclockwise vertex interval `a..b`, closed by the edge
        // {a, b} which acts as the sub-polygon's bottom.
        Interval(usize, usize),
        Combine,
    }

    let mut nodes: Vec<PlanNode> = Vec::new();
    // A finished sub-plan, or None for an interval that is a bare edge; the
    // leaf node is only allocated if a parent really keeps it.
    let mut results: Vec<Option<PlanId>> = Vec::new();
    let mut tasks = vec![Task::Interval(bottom.second(), bottom.first())];
    while let Some(task) = tasks.pop() {
        match task {
            Task::Interval(a, b) => {
                if (b + n - a) % n == 1 {
                    results.push(None);
                    continue;
                }
                let v = t.apex(&adj, a, b);
                tasks.push(Task::Combine);
                tasks.push(Task::Interval(a, v));
                tasks.push(Task::Interval(v, b));
            }
            Task::Combine => {
                let right = results.pop().expect("combine needs two results");
                let left = results.pop().expect("combine needs two results");
                let node = match (left, right) {
                    (None, None) => {
                        nodes.push(PlanNode::Leaf);
                        PlanNode::Apply(Op::W, PlanId(nodes.len() - 1))
                    }
                    (None, Some(r)) => PlanNode::Apply(Op::W, r),
                    (Some(l), None) => PlanNode::Apply(Op::Z, l),
                    (Some(l), Some(r)) => PlanNode::Merge(l, r),
                };
                nodes.push(node);
                results.push(Some(PlanId(nodes.len() - 1)));
            }
        }
    }
    debug_assert_eq!(results.len(), 1);
    Ok(Plan::from_nodes(nodes))
}

/// Replays a plan, returning the triangulation it builds and its bottom
/// edge.
pub fn evaluate_plan(plan: &Plan) -> (Triangulation, BoundaryEdge) {
    let mut values: Vec<Option<(Triangulation, BoundaryEdge)>> = vec![None; plan.node_count()];
    for (i, node) in plan.nodes().iter().enumerate() {
        let value = match *node {
            PlanNode::Leaf => (Triangulation::degenerate(), BoundaryEdge::base()),
            PlanNode::Apply(op, q) => {
                let (t, b) = values[q.0].take().expect("child evaluated once");
                let step = apply_op(op, &t, b).expect("plan bottoms are valid");
                (step.triangulation, step.bottom)
            }
            PlanNode::Merge(l, r) => {
                let (t1, b1) = values[l.0].take().expect("child evaluated once");
                let (t2, b2) = values[r.0].take().expect("child evaluated once");
                let step = merge(&t1, b1, &t2, b2).expect("plan bottoms are valid");
                (step.triangulation, step.bottom)
            }
        };
        values[i] = Some(value);
    }
    values[plan.root().0].take().expect("root evaluated")
}

/// Strip decomposition as a pure operation sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripDecomposition {
    ops: Vec<Op>,
}

impl StripDecomposition {
    /// Operations in application order; the first is applied to the
    /// degenerate edge.
    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    /// Exponents `(w_1, z_1), ..., (w_m, z_m)` of the run-length form
    /// `Z^{z_m} W^{w_m} ... Z^{z_1} W^{w_1}` read in application order.
    /// Only `w_1` and `z_m` may be zero.
    pub fn exponents(&self) -> Vec<(u64, u64)> {
        let mut runs: Vec<(Op, u64)> = Vec::new();
        for &op in &self.ops {
            match runs.last_mut() {
                Some((last, count)) if *last == op => *count += 1,
                _ => runs.push((op, 1)),
            }
        }
        let mut pairs = Vec::new();
        let mut i = 0;
        while i < runs.len() {
            let w = if runs[i].0 == Op::W {
                let c = runs[i].1;
                i += 1;
                c
            } else {
                0
            };
            let z = if i < runs.len() && runs[i].0 == Op::Z {
                let c = runs[i].1;
                i += 1;
                c
            } else {
                0
            };
            pairs.push((w, z));
        }
        pairs
    }
}

/// Why a strip decomposition was not produced.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StripError {
    #[error(transparent)]
    Bottom(#[from] NotABoundaryEdge),
    #[error("triangulation has {interior_faces} interior face(s), so it is not a strip")]
    NotAStrip { interior_faces: usize },
    #[error("no pure operation chain reaches bottom {bottom}; chains exist from {usable:?}")]
    NoChainAtBottom {
        bottom: BoundaryEdge,
        usable: Vec<BoundaryEdge>,
    },
}

/// Decomposes a strip (a triangulation without interior faces) into a pure
/// `W`/`Z` chain ending at `bottom`. Such a chain exists exactly when
/// `bottom` belongs to a face at the end of the dual path; other bottoms
/// of a strip yield [`StripError::NoChainAtBottom`].
pub fn strip_decompose(
    t: &Triangulation,
    bottom: BoundaryEdge,
) -> Result<StripDecomposition, StripError> {
    let plan = decompose(t, bottom)?;
    match plan.as_chain() {
        Some(ops) => Ok(StripDecomposition { ops }),
        None => {
            let interior_faces = t.interior_face_count();
            if interior_faces > 0 {
                Err(StripError::NotAStrip { interior_faces })
            } else {
                Err(StripError::NoChainAtBottom {
                    bottom,
                    usable: strip_chain_bottoms(t),
                })
            }
        }
    }
}

/// Bottom edges of `t` from which [`strip_decompose`] succeeds: all of
/// them for the 2-gon and the triangle, the boundary edges of the two
/// dual-path end faces for larger strips, and none for non-strips.
pub fn strip_chain_bottoms(t: &Triangulation) -> Vec<BoundaryEdge> {
    let n = t.n();
    if n <= 3 {
        return t.boundary_edges().collect();
    }
    if t.interior_face_count() > 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for face in t.faces() {
        let sides: Vec<(usize, usize)> = face
            .edges()
            .into_iter()
            .filter(|&(lo, hi)| t.is_boundary_pair(lo, hi))
            .collect();
        if sides.len() >= 2 {
            for (lo, hi) in sides {
                out.push(if hi - lo == 1 {
                    BoundaryEdge::new_unchecked(lo, hi)
                } else {
                    BoundaryEdge::new_unchecked(hi, lo)
                });
            }
        }
    }
    out.sort_by_key(|e| e.first());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(n: usize, diags: &[(usize, usize)]) -> Triangulation {
        Triangulation::new(n, diags.iter().copied()).unwrap()
    }

    fn edge(t: &Triangulation, a: usize, b: usize) -> BoundaryEdge {
        BoundaryEdge::new(t, a, b).unwrap()
    }

    #[test]
    fn w_on_degenerate_edge_gives_triangle() {
        let t = Triangulation::degenerate();
        let step = apply_w(&t, BoundaryEdge::base()).unwrap();
        assert_eq!(step.triangulation, Triangulation::triangle());
        assert_eq!((step.bottom.first(), step.bottom.second()), (1, 2));
        assert_eq!(step.new_vertex, 1);
        assert_eq!(step.relabeling, vec![0, 2]);
    }

    #[test]
    fn w_on_triangle_covers_old_bottom() {
        let t = Triangulation::triangle();
        let step = apply_w(&t, BoundaryEdge::base()).unwrap();
        assert_eq!(step.triangulation, tri(4, &[(0, 2)]));
        assert_eq!((step.bottom.first(), step.bottom.second()), (1, 2));
    }

    #[test]
    fn wzz_chain_builds_a_fan_strip() {
        let (t, bottom) = evaluate_plan(&Plan::from_ops(&[Op::W, Op::Z, Op::Z]));
        assert_eq!(t, tri(5, &[(1, 3), (1, 4)]));
        assert_eq!((bottom.first(), bottom.second()), (1, 2));
        assert_eq!(t.interior_face_count(), 0);
        assert!(dual_tree(&t).unwrap().is_path());
    }

    #[test]
    fn wwz_chain_builds_a_three_path_strip() {
        let (t, bottom) = evaluate_plan(&Plan::from_ops(&[Op::W, Op::W, Op::Z]));
        assert_eq!(t, tri(5, &[(1, 4), (2, 4)]));
        assert_eq!((bottom.first(), bottom.second()), (2, 3));
        let dual = dual_tree(&t).unwrap();
        assert!(dual.is_path());
        assert_eq!(dual.internal_count(), 3);
        assert_eq!(
            (0..3).filter(|&i| dual.internal_degree(i) == 1).count(),
            2,
            "a 3-path has two ends"
        );
    }

    #[test]
    fn z_is_the_mirror_of_w() {
        let cases = [
            (Triangulation::degenerate(), (0, 1)),
            (Triangulation::triangle(), (1, 2)),
            (tri(5, &[(1, 3), (1, 4)]), (4, 0)),
            (tri(6, &[(0, 2), (2, 4), (0, 4)]), (2, 3)),
        ];
        for (t, (a, b)) in cases {
            let bottom = edge(&t, a, b);
            let direct = apply_z(&t, bottom).unwrap();
            let mirrored = apply_w(&t.mirrored(), bottom.mirrored(t.n())).unwrap();
            assert_eq!(direct.triangulation, mirrored.triangulation.mirrored());
            assert_eq!(
                direct.bottom,
                mirrored.bottom.mirrored(t.n() + 1),
                "bottom mismatch for {t:?}"
            );
        }
    }

    #[test]
    fn merging_two_edges_gives_the_triangle() {
        let e = Triangulation::degenerate();
        let step = merge(&e, BoundaryEdge::base(), &e, BoundaryEdge::base()).unwrap();
        assert_eq!(step.triangulation, Triangulation::triangle());
        assert_eq!((step.bottom.first(), step.bottom.second()), (0, 1));
        assert_eq!(step.shared_vertex, 2);
    }

    #[test]
    fn merging_two_triangles_gives_a_five_gon() {
        let t = Triangulation::triangle();
        let step = merge(&t, BoundaryEdge::base(), &t, BoundaryEdge::base()).unwrap();
        assert_eq!(step.triangulation, tri(5, &[(0, 3), (1, 3)]));
        assert_eq!(step.shared_vertex, 3);
        // The fresh face keeps its bottom side on the polygon boundary.
        let faces = step.triangulation.faces();
        assert!(faces.iter().any(|f| f.vertices == [0, 1, 3] && !f.interior));
        assert_eq!(step.triangulation.interior_face_count(), 0);
    }

    #[test]
    fn merged_squares_gain_an_interior_face_only_after_another_step() {
        let sq = tri(4, &[(0, 2)]);
        let step = merge(&sq, BoundaryEdge::base(), &sq, BoundaryEdge::base()).unwrap();
        assert_eq!(step.triangulation.n(), 7);
        assert_eq!(
            step.triangulation.diagonals(),
            &[(0, 4), (0, 5), (1, 4), (2, 4)]
        );
        // The fresh face (0, 4, 1) still has its bottom on the boundary.
        assert_eq!(step.triangulation.interior_face_count(), 0);
        let grown = apply_w(&step.triangulation, step.bottom).unwrap();
        assert_eq!(grown.triangulation.interior_face_count(), 1);
    }

    #[test]
    fn merge_relabelings_cover_the_new_polygon() {
        let left = tri(5, &[(1, 3), (1, 4)]);
        let right = tri(4, &[(1, 3)]);
        let step = merge(&left, edge(&left, 1, 2), &right, edge(&right, 3, 0)).unwrap();
        assert_eq!(step.triangulation.n(), 8);
        let mut seen: Vec<usize> = step
            .left_relabeling
            .iter()
            .chain(step.right_relabeling.iter())
            .copied()
            .collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen, (0..8).collect::<Vec<_>>());
        assert_eq!(step.left_relabeling[1], 0, "left bottom start keeps label 0");
        assert_eq!(step.left_relabeling[2], step.shared_vertex);
        assert_eq!(step.right_relabeling[3], step.shared_vertex);
        assert_eq!(step.right_relabeling[0], 1, "right bottom end becomes label 1");
    }

    #[test]
    fn bad_bottom_edges_are_rejected() {
        let t = tri(4, &[(0, 2)]);
        let clockwise = BoundaryEdge::new(&t, 1, 0);
        assert!(clockwise.is_err());
        let foreign = BoundaryEdge::new(&Triangulation::fan(9), 7, 8).unwrap();
        assert!(apply_w(&t, foreign).is_err());
        assert!(merge(&t, foreign, &t, BoundaryEdge::base()).is_err());
        assert!(decompose(&t, foreign).is_err());
    }

    #[test]
    fn square_dual_tree_is_a_two_path() {
        let t = tri(4, &[(0, 2)]);
        let dual = dual_tree(&t).unwrap();
        assert_eq!(dual.internal_count(), 2);
        assert_eq!(dual.leaf_count(), 4);
        assert!(dual.is_path());
        assert!(dual.leafless_internal_nodes().is_empty());
        for i in 0..2 {
            assert_eq!(dual.internal_degree(i), 1);
        }
    }

    #[test]
    fn snowflake_center_is_the_only_leafless_node() {
        let t = tri(6, &[(0, 2), (2, 4), (0, 4)]);
        let dual = dual_tree(&t).unwrap();
        let leafless = dual.leafless_internal_nodes();
        assert_eq!(leafless.len(), 1);
        assert_eq!(dual.face(leafless[0]).vertices, [0, 2, 4]);
        assert_eq!(dual.internal_degree(leafless[0]), 3);
        assert!(!dual.is_path());
    }

    #[test]
    fn dual_adjacency_is_symmetric() {
        let t = tri(7, &[(0, 2), (2, 4), (0, 4), (4, 6)]);
        let dual = dual_tree(&t).unwrap();
        let mut leaf_seen = vec![false; dual.leaf_count()];
        for i in 0..dual.internal_count() {
            for node in dual.neighbors(i) {
                match node {
                    DualNode::Face(j) => {
                        assert!(
                            dual.neighbors(j).contains(&DualNode::Face(i)),
                            "edge {i} -> {j} not reciprocated"
                        );
                    }
                    DualNode::Leaf(e) => {
                        assert!(!leaf_seen[e], "leaf {e} attached twice");
                        leaf_seen[e] = true;
                    }
                }
            }
        }
        assert!(leaf_seen.iter().all(|&s| s), "every side is a leaf");
    }

    #[test]
    fn dual_tree_of_degenerate_edge_fails() {
        assert_eq!(
            dual_tree(&Triangulation::degenerate()).unwrap_err(),
            ConstructError::Degenerate
        );
    }

    #[test]
    fn decompose_inverts_evaluate_on_samples() {
        let samples = [
            Triangulation::degenerate(),
            Triangulation::triangle(),
            tri(4, &[(0, 2)]),
            tri(4, &[(1, 3)]),
            tri(5, &[(0, 2), (2, 4)]),
            tri(6, &[(0, 2), (2, 4), (0, 4)]),
            tri(8, &[(0, 2), (2, 4), (0, 4), (4, 6), (0, 6)]),
            Triangulation::fan(9),
        ];
        for t in samples {
            for bottom in t.boundary_edges() {
                let plan = decompose(&t, bottom).unwrap();
                assert_eq!(plan.vertex_count(), t.n());
                assert!(plan.node_count() <= 2 * t.n().saturating_sub(2) + 1);
                let (back, back_bottom) = evaluate_plan(&plan);
                // Plans carry no absolute labels, so evaluation reproduces
                // the triangulation up to the rotation aligning the bottoms.
                let n = t.n();
                let shift = (bottom.first() + n - back_bottom.first()) % n;
                assert_eq!(back.rotated(shift), t, "round trip from {bottom}");
                assert_eq!((back_bottom.first() + shift) % n, bottom.first());
                assert_eq!((back_bottom.second() + shift) % n, bottom.second());
            }
        }
    }

    #[test]
    fn evaluating_a_merge_of_chains_matches_by_hand_layout() {
        let plan = Plan::merge(
            Plan::apply(Op::Z, Plan::leaf()),
            Plan::apply(Op::W, Plan::leaf()),
        );
        let (t, bottom) = evaluate_plan(&plan);
        assert_eq!(t, tri(5, &[(0, 3), (1, 3)]));
        assert_eq!(t.faces().len(), 3);
        assert_eq!((bottom.first(), bottom.second()), (0, 1));
    }

    #[test]
    fn strip_decompose_returns_chains_from_end_faces() {
        let t = tri(5, &[(1, 3), (1, 4)]);
        let chains = strip_chain_bottoms(&t);
        assert!(!chains.is_empty());
        for bottom in t.boundary_edges() {
            let result = strip_decompose(&t, bottom);
            if chains.contains(&bottom) {
                let ops = result.unwrap();
                assert_eq!(ops.ops().len(), 3);
            } else {
                assert!(matches!(result, Err(StripError::NoChainAtBottom { .. })));
            }
        }
    }

    #[test]
    fn strip_decompose_rejects_interior_faces() {
        let t = tri(6, &[(0, 2), (2, 4), (0, 4)]);
        for bottom in t.boundary_edges() {
            assert_eq!(
                strip_decompose(&t, bottom).unwrap_err(),
                StripError::NotAStrip { interior_faces: 1 }
            );
        }
        assert!(strip_chain_bottoms(&t).is_empty());
    }

    #[test]
    fn mid_path_bottom_splits_into_two_chains() {
        let t = tri(5, &[(0, 2), (2, 4)]);
        let bottom = edge(&t, 4, 0);
        assert!(matches!(
            strip_decompose(&t, bottom),
            Err(StripError::NoChainAtBottom { .. })
        ));
        let plan = decompose(&t, bottom).unwrap();
        match plan.node(plan.root()) {
            PlanNode::Merge(l, r) => {
                let left = plan.subtree_is_chain(l);
                let right = plan.subtree_is_chain(r);
                assert!(left && right, "both merge operands are pure chains");
            }
            other => panic!("expected a merge at the root, got {other:?}"),
        }
    }

    #[test]
    fn exponent_runs_group_the_chain() {
        let strip = StripDecomposition {
            ops: vec![Op::W, Op::Z, Op::Z, Op::W],
        };
        assert_eq!(strip.exponents(), vec![(1, 2), (1, 0)]);
        let starts_with_z = StripDecomposition {
            ops: vec![Op::Z, Op::W, Op::W],
        };
        assert_eq!(starts_with_z.exponents(), vec![(0, 1), (2, 0)]);
        let empty = StripDecomposition { ops: vec![] };
        assert_eq!(empty.exponents(), vec![]);
        for (ops, n) in [(vec![Op::W; 7], 9usize), (vec![Op::Z; 4], 6)] {
            let strip = StripDecomposition { ops };
            let total: u64 = strip.exponents().iter().map(|(w, z)| w + z).sum();
            assert_eq!(total as usize, n - 2);
        }
    }

    #[test]
    fn degenerate_strip_decomposes_to_nothing() {
        let t = Triangulation::degenerate();
        let ops = strip_decompose(&t, BoundaryEdge::base()).unwrap();
        assert!(ops.ops().is_empty());
    }
}
