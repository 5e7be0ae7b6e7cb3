//! Counting, enumerating, ranking, and sampling triangulations, plus the
//! `.tri` text format.
//!
//! Triangulations of the convex n-gon are in bijection with binary trees:
//! the face on the edge `(0, n-1)` has some apex `v`, and the two polygon
//! intervals `0..=v` and `v..=b` triangulate independently. Ranks follow
//! that recursion with apexes ascending and the left interval major, which
//! gives every triangulation a stable id `(n, rank)` with
//! `0 <= rank < catalan(n - 2)`.

use std::fmt;

use num_bigint::RandBigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::spin::BigCount;
use crate::triangulation::{violations, Triangulation, Violation};

/// The k-th Catalan number, computed exactly.
pub fn catalan(k: usize) -> BigCount {
    catalan_table(k).pop().expect("table is never empty")
}

/// Catalan numbers `C_0..=C_max` as a lookup table.
pub fn catalan_table(max: usize) -> Vec<BigCount> {
    let mut table = Vec::with_capacity(max + 1);
    table.push(BigCount::from(1u32));
    for i in 0..max {
        let next = &table[i] * (4 * i as u64 + 2) / (i as u64 + 2);
        table.push(next);
    }
    table
}

/// Number of triangulations of the convex n-gon, `catalan(n - 2)`.
pub fn triangulation_count(n: usize) -> Result<BigCount, CatalogError> {
    if n < 2 {
        return Err(CatalogError::CountRange { n });
    }
    Ok(catalan(n - 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("counting triangulations needs n >= 2, got n = {n}")]
    CountRange { n: usize },
    #[error("enumeration supports 3 <= n <= 16, got n = {n}")]
    EnumerationRange { n: usize },
    #[error("sampling needs n >= 3, got n = {n}")]
    SampleRange { n: usize },
    #[error("rank {rank} is out of range for n = {n} ({count} triangulations)")]
    RankOutOfRange {
        n: usize,
        rank: BigCount,
        count: BigCount,
    },
}

/// Stable identifier of a triangulation: its polygon size and its position
/// in the enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangulationId {
    pub n: usize,
    pub rank: BigCount,
}

impl TriangulationId {
    pub fn new(n: usize, rank: BigCount) -> TriangulationId {
        TriangulationId { n, rank }
    }

    /// The triangulation this id names.
    pub fn realize(&self) -> Result<Triangulation, CatalogError> {
        unrank_triangulation(self.n, &self.rank)
    }
}

impl fmt::Display for TriangulationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.rank)
    }
}

/// The triangulation of the n-gon at the given rank.
pub fn unrank_triangulation(n: usize, rank: &BigCount) -> Result<Triangulation, CatalogError> {
    if n < 2 {
        return Err(CatalogError::CountRange { n });
    }
    let table = catalan_table(n - 2);
    if *rank >= table[n - 2] {
        return Err(CatalogError::RankOutOfRange {
            n,
            rank: rank.clone(),
            count: table[n - 2].clone(),
        });
    }
    Ok(unrank_in(n, rank, &table))
}

/// Rank of a triangulation in the enumeration order; inverse of
/// [`unrank_triangulation`].
pub fn triangulation_rank(t: &Triangulation) -> BigCount {
    let n = t.n();
    if t.is_degenerate() || n == 3 {
        return BigCount::zero();
    }
    let table = catalan_table(n - 2);
    let adjacency = t.ccw_adjacency();

    enum Task {
        Interval(usize, usize),
        Combine { a: usize, b: usize, v: usize },
    }

    let mut tasks = vec![Task::Interval(0, n - 1)];
    let mut values: Vec<BigCount> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Interval(a, b) => {
                if b - a + 1 == 2 {
                    values.push(BigCount::zero());
                    continue;
                }
                let v = t.apex(&adjacency, a, b);
                tasks.push(Task::Combine { a, b, v });
                tasks.push(Task::Interval(v, b));
                tasks.push(Task::Interval(a, v));
            }
            Task::Combine { a, b, v } => {
                let right = values.pop().expect("right child evaluated");
                let left = values.pop().expect("left child evaluated");
                let mut rank = BigCount::zero();
                for u in a + 1..v {
                    rank += &table[u - a - 1] * &table[b - u - 1];
                }
                rank += left * &table[b - v - 1];
                rank += right;
                values.push(rank);
            }
        }
    }
    values.pop().expect("root evaluated")
}

fn unrank_in(n: usize, rank: &BigCount, table: &[BigCount]) -> Triangulation {
    let mut diagonals = Vec::new();
    let mut stack = vec![(0usize, n - 1, rank.clone())];
    while let Some((a, b, mut r)) = stack.pop() {
        if b - a + 1 == 2 {
            debug_assert!(r.is_zero());
            continue;
        }
        let mut chosen = None;
        for v in a + 1..b {
            let right_total = &table[b - v - 1];
            let block = &table[v - a - 1] * right_total;
            if r < block {
                chosen = Some((v, &r / right_total, &r % right_total));
                break;
            }
            r -= block;
        }
        let (v, left_rank, right_rank) = chosen.expect("rank below the Catalan total");
        if v > a + 1 {
            diagonals.push((a, v));
            stack.push((a, v, left_rank));
        }
        if v < b - 1 {
            diagonals.push((v, b));
            stack.push((v, b, right_rank));
        }
    }
    Triangulation::new(n, diagonals).expect("unranked triangulations are valid")
}

/// All triangulations of the n-gon in rank order.
pub fn enumerate_triangulations(n: usize) -> Result<TriangulationStream, CatalogError> {
    if !(3..=16).contains(&n) {
        return Err(CatalogError::EnumerationRange { n });
    }
    let table = catalan_table(n - 2);
    let total = u64::try_from(&table[n - 2]).expect("catalan(14) fits in u64");
    Ok(TriangulationStream {
        n,
        table,
        next: 0,
        total,
    })
}

/// Iterator over all triangulations of a fixed polygon, in rank order.
#[derive(Debug, Clone)]
pub struct TriangulationStream {
    n: usize,
    table: Vec<BigCount>,
    next: u64,
    total: u64,
}

impl TriangulationStream {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the triangulation the next call to `next` will yield.
    pub fn next_rank(&self) -> u64 {
        self.next
    }
}

impl Iterator for TriangulationStream {
    type Item = Triangulation;

    fn next(&mut self) -> Option<Triangulation> {
        if self.next >= self.total {
            return None;
        }
        let rank = BigCount::from(self.next);
        self.next += 1;
        Some(unrank_in(self.n, &rank, &self.table))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let len = (self.total - self.next) as usize;
        (len, Some(len))
    }
}

impl ExactSizeIterator for TriangulationStream {}

/// A triangulation drawn uniformly at random, deterministic for a fixed seed.
pub fn random_triangulation(n: usize, seed: u64) -> Result<Triangulation, CatalogError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_triangulation(n, &mut rng)
}

/// A triangulation drawn uniformly at random from the given generator.
///
/// Each interval picks its apex with probability proportional to
/// `catalan(left) * catalan(right)`, using exact big-integer weights, so the
/// distribution over all `catalan(n - 2)` triangulations is exactly uniform.
pub fn sample_triangulation<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<Triangulation, CatalogError> {
    if n < 3 {
        return Err(CatalogError::SampleRange { n });
    }
    let table = catalan_table(n - 2);
    let mut diagonals = Vec::new();
    let mut stack = vec![(0usize, n - 1)];
    while let Some((a, b)) = stack.pop() {
        let v = pick_apex(a, b, &table, rng);
        if v > a + 1 {
            diagonals.push((a, v));
            stack.push((a, v));
        }
        if v < b - 1 {
            diagonals.push((v, b));
            stack.push((v, b));
        }
    }
    Ok(Triangulation::new(n, diagonals).expect("sampled triangulations are valid"))
}

/// Apex choice for the face on the interval edge `(a, b)`, weighted by the
/// product of the sub-interval Catalan counts.
///
/// Candidates are visited from both ends inward. Random splits concentrate
/// mass near the ends, so the walk ends after O(1) expected steps instead of
/// scanning linearly from one side.
fn pick_apex<R: Rng + ?Sized>(a: usize, b: usize, table: &[BigCount], rng: &mut R) -> usize {
    let mut remaining = rng.gen_biguint_below(&table[b - a - 1]);
    let mut lo = a + 1;
    let mut hi = b - 1;
    let mut from_low = true;
    loop {
        debug_assert!(lo <= hi, "block weights sum to the drawn bound");
        let v = if from_low {
            lo += 1;
            lo - 1
        } else {
            hi -= 1;
            hi + 1
        };
        from_low = !from_low;
        let block = &table[v - a - 1] * &table[b - v - 1];
        if remaining < block {
            return v;
        }
        remaining -= block;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriParseError {
    #[error("no vertex count line")]
    MissingHeader,
    #[error("line {line}: expected a single vertex count, found {count} numbers")]
    BadHeader { line: usize, count: usize },
    #[error("line {line}: expected two vertex labels, found {count} numbers")]
    BadEdgeLine { line: usize, count: usize },
    #[error("line {line}: {token:?} is not a vertex label")]
    BadToken { line: usize, token: String },
    #[error("invalid triangulation: {}", format_violations(.violations))]
    Invalid { violations: Vec<Violation> },
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Parses the `.tri` format: the vertex count on the first line, then one
/// `a b` diagonal per line. `#` starts a comment, blank lines are skipped.
pub fn parse_tri(text: &str) -> Result<Triangulation, TriParseError> {
    let mut n = None;
    let mut diagonals = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut numbers = Vec::new();
        for token in content.split_ascii_whitespace() {
            let value = token.parse::<usize>().map_err(|_| TriParseError::BadToken {
                line,
                token: token.to_string(),
            })?;
            numbers.push(value);
        }
        if numbers.is_empty() {
            continue;
        }
        match n {
            None => {
                if numbers.len() != 1 {
                    return Err(TriParseError::BadHeader {
                        line,
                        count: numbers.len(),
                    });
                }
                n = Some(numbers[0]);
            }
            Some(_) => {
                if numbers.len() != 2 {
                    return Err(TriParseError::BadEdgeLine {
                        line,
                        count: numbers.len(),
                    });
                }
                diagonals.push((numbers[0], numbers[1]));
            }
        }
    }
    let n = n.ok_or(TriParseError::MissingHeader)?;
    let found = violations(n, &diagonals);
    if !found.is_empty() {
        return Err(TriParseError::Invalid { violations: found });
    }
    Ok(Triangulation::new(n, diagonals).expect("violation scan passed"))
}

/// Serializes to the canonical `.tri` form: header line, then diagonals as
/// `lo hi` sorted ascending, one per line.
pub fn serialize_tri(t: &Triangulation) -> String {
    let mut out = format!("{}\n", t.n());
    for &(a, b) in t.diagonals() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn diagonal_set(t: &Triangulation) -> Vec<(usize, usize)> {
        t.diagonals().to_vec()
    }

    #[test]
    fn catalan_small_values() {
        let want = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (k, &c) in want.iter().enumerate() {
            assert_eq!(catalan(k), BigCount::from(c), "catalan({k})");
        }
        assert_eq!(catalan(14), BigCount::from(2_674_440u64));
        assert_eq!(catalan(20), BigCount::from(6_564_120_420u64));
    }

    #[test]
    fn triangulation_count_follows_catalan() {
        assert!(matches!(
            triangulation_count(1),
            Err(CatalogError::CountRange { n: 1 })
        ));
        assert_eq!(triangulation_count(2).unwrap(), BigCount::from(1u32));
        assert_eq!(triangulation_count(3).unwrap(), BigCount::from(1u32));
        assert_eq!(triangulation_count(8).unwrap(), BigCount::from(132u32));
    }

    #[test]
    fn unrank_square_order() {
        let first = unrank_triangulation(4, &BigCount::from(0u32)).unwrap();
        let second = unrank_triangulation(4, &BigCount::from(1u32)).unwrap();
        assert_eq!(diagonal_set(&first), vec![(1, 3)]);
        assert_eq!(diagonal_set(&second), vec![(0, 2)]);
    }

    #[test]
    fn unrank_pentagon_order() {
        let want: [&[(usize, usize)]; 5] = [
            &[(1, 4), (2, 4)],
            &[(1, 3), (1, 4)],
            &[(0, 2), (2, 4)],
            &[(0, 3), (1, 3)],
            &[(0, 2), (0, 3)],
        ];
        for (rank, expected) in want.iter().enumerate() {
            let t = unrank_triangulation(5, &BigCount::from(rank)).unwrap();
            assert_eq!(diagonal_set(&t), expected.to_vec(), "rank {rank}");
        }
    }

    #[test]
    fn unrank_rejects_out_of_range() {
        assert!(matches!(
            unrank_triangulation(4, &BigCount::from(2u32)),
            Err(CatalogError::RankOutOfRange { .. })
        ));
        assert!(unrank_triangulation(1, &BigCount::zero()).is_err());
        assert!(unrank_triangulation(2, &BigCount::zero()).unwrap().is_degenerate());
    }

    #[test]
    fn enumeration_counts_and_distinctness() {
        assert_eq!(enumerate_triangulations(4).unwrap().count(), 2);
        let hexagons: Vec<_> = enumerate_triangulations(6).unwrap().collect();
        assert_eq!(hexagons.len(), 14);
        let distinct: HashSet<_> = hexagons.iter().map(diagonal_set).collect();
        assert_eq!(distinct.len(), 14);
        assert_eq!(enumerate_triangulations(12).unwrap().count(), 16796);
    }

    #[test]
    fn enumeration_range_is_enforced() {
        assert!(matches!(
            enumerate_triangulations(2),
            Err(CatalogError::EnumerationRange { n: 2 })
        ));
        assert!(enumerate_triangulations(17).is_err());
        assert!(enumerate_triangulations(16).is_ok());
    }

    #[test]
    fn stream_matches_unrank_and_reports_length() {
        let mut stream = enumerate_triangulations(7).unwrap();
        assert_eq!(stream.len(), 42);
        let mut rank = 0u64;
        while let Some(t) = stream.next() {
            let direct = unrank_triangulation(7, &BigCount::from(rank)).unwrap();
            assert_eq!(t, direct, "rank {rank}");
            rank += 1;
        }
        assert_eq!(rank, 42);
    }

    #[test]
    fn rank_inverts_unrank() {
        for rank in 0u64..42 {
            let t = unrank_triangulation(7, &BigCount::from(rank)).unwrap();
            assert_eq!(triangulation_rank(&t), BigCount::from(rank));
        }
        assert_eq!(
            triangulation_rank(&Triangulation::degenerate()),
            BigCount::zero()
        );
        let big = random_triangulation(64, 5).unwrap();
        let rank = triangulation_rank(&big);
        assert_eq!(unrank_triangulation(64, &rank).unwrap(), big);
    }

    #[test]
    fn id_orders_by_size_then_rank() {
        let a = TriangulationId::new(5, BigCount::from(4u32));
        let b = TriangulationId::new(6, BigCount::from(0u32));
        assert!(a < b);
        assert_eq!(a.to_string(), "5:4");
        assert_eq!(a.realize().unwrap().diagonals(), &[(0, 2), (0, 3)]);
    }

    #[test]
    fn random_triangulation_is_deterministic_per_seed() {
        let a = random_triangulation(9, 7).unwrap();
        let b = random_triangulation(9, 7).unwrap();
        assert_eq!(a, b);
        let c = random_triangulation(9, 8).unwrap();
        assert_ne!(a, c);
        assert!(random_triangulation(2, 0).is_err());
    }

    #[test]
    fn random_sampling_is_uniform_over_hexagons() {
        let shapes: Vec<_> = enumerate_triangulations(6).unwrap().collect();
        let mut counts = vec![0u32; shapes.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let samples = 14_000;
        for _ in 0..samples {
            let t = sample_triangulation(6, &mut rng).unwrap();
            let index = shapes.iter().position(|s| *s == t).expect("a known shape");
            counts[index] += 1;
        }
        let expected = samples as f64 / shapes.len() as f64;
        let sigma = (samples as f64 * (1.0 / 14.0) * (13.0 / 14.0)).sqrt();
        for (index, &count) in counts.iter().enumerate() {
            let deviation = (count as f64 - expected).abs();
            assert!(
                deviation <= 3.0 * sigma,
                "shape {index} appeared {count} times, expected {expected} +- {:.1}",
                3.0 * sigma
            );
        }
    }

    #[test]
    fn tri_round_trip() {
        let t = unrank_triangulation(8, &BigCount::from(37u32)).unwrap();
        let text = serialize_tri(&t);
        assert_eq!(parse_tri(&text).unwrap(), t);
        assert_eq!(serialize_tri(&parse_tri(&text).unwrap()), text);
    }

    #[test]
    fn tri_parsing_accepts_comments_and_blank_lines() {
        let text = "# a square\n\n4\n  1 3   # the diagonal\n";
        let t = parse_tri(text).unwrap();
        assert_eq!(t.n(), 4);
        assert_eq!(t.diagonals(), &[(1, 3)]);
    }

    #[test]
    fn tri_parsing_rejects_malformed_input() {
        assert_eq!(parse_tri("# nothing\n"), Err(TriParseError::MissingHeader));
        assert_eq!(
            parse_tri("4 1\n"),
            Err(TriParseError::BadHeader { line: 1, count: 2 })
        );
        assert_eq!(
            parse_tri("4\n1 3 2\n"),
            Err(TriParseError::BadEdgeLine { line: 2, count: 3 })
        );
        assert_eq!(
            parse_tri("4\n1 x\n"),
            Err(TriParseError::BadToken {
                line: 2,
                token: "x".to_string()
            })
        );
    }

    #[test]
    fn tri_parsing_reports_every_violation() {
        let err = parse_tri("6\n0 1\n1 3\n0 2\n").unwrap_err();
        match err {
            TriParseError::Invalid { violations } => {
                assert_eq!(violations.len(), 2);
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, Violation::BoundaryAsDiagonal { .. })));
                assert!(violations
                    .iter()
                    .any(|v| matches!(v, Violation::Crossing { .. })));
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }
}
