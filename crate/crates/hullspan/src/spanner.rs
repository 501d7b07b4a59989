//! Skeleton graphs, shortest paths, and exact stretch-factor computation for
//! polyhedra and convex polygons.
//!
//! Stretch is computed exactly: one single-source shortest-path sweep per
//! vertex, reduced to the maximum graph/Euclidean ratio. Per-source sweeps
//! are independent and run in parallel when the `parallel` feature is on.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{orientation2d, Point2, Point3, Tolerance};
use crate::hull::Polyhedron;

/// Weighted graph over embedded vertices; edge weight is the Euclidean
/// distance between the endpoints. 2D inputs are embedded with `z = 0`.
#[derive(Debug, Clone)]
pub struct SkeletonGraph {
    positions: Vec<Point3>,
    adj: Vec<Vec<(u32, f64)>>,
}

/// An `f64` ordered via `total_cmp` so it can drive a binary heap.
#[derive(Debug, Clone, Copy, PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl SkeletonGraph {
    pub fn from_edges3(positions: Vec<Point3>, edges: &[(u32, u32)]) -> Result<SkeletonGraph> {
        let n = positions.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            let (ai, bi) = (a as usize, b as usize);
            if ai >= n || bi >= n || ai == bi {
                return Err(Error::InvalidInput(format!("bad edge ({a},{b})")));
            }
            let w = positions[ai].dist(positions[bi]);
            if w <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "zero-length edge ({a},{b})"
                )));
            }
            adj[ai].push((b, w));
            adj[bi].push((a, w));
        }
        for l in &mut adj {
            l.sort_unstable_by(|x, y| x.0.cmp(&y.0));
            l.dedup_by_key(|e| e.0);
        }
        Ok(SkeletonGraph { positions, adj })
    }

    pub fn from_edges2(positions: &[Point2], edges: &[(u32, u32)]) -> Result<SkeletonGraph> {
        let pos3 = positions
            .iter()
            .map(|p| Point3::new(p.x, p.y, 0.0))
            .collect();
        SkeletonGraph::from_edges3(pos3, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn position(&self, v: u32) -> Point3 {
        self.positions[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[(u32, f64)] {
        &self.adj[v as usize]
    }

    /// Distances from `source` to every vertex; unreachable entries are
    /// `f64::INFINITY`.
    pub fn distances_from(&self, source: u32) -> Vec<f64> {
        let n = self.positions.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut heap = BinaryHeap::new();
        dist[source as usize] = 0.0;
        heap.push(Reverse((OrdF64(0.0), source)));
        while let Some(Reverse((OrdF64(d), u))) = heap.pop() {
            if d > dist[u as usize] {
                continue;
            }
            for &(v, w) in &self.adj[u as usize] {
                let nd = d + w;
                if nd < dist[v as usize] {
                    dist[v as usize] = nd;
                    heap.push(Reverse((OrdF64(nd), v)));
                }
            }
        }
        dist
    }
}

/// Skeleton of a polyhedron: one graph vertex per polyhedron vertex, one
/// edge per polyhedron edge.
pub fn skeleton(poly: &Polyhedron) -> SkeletonGraph {
    SkeletonGraph::from_edges3(poly.vertices().to_vec(), poly.edges())
        .expect("polyhedron edges are valid")
}

/// Shortest path between two graph vertices: total length plus the vertex
/// sequence from `p` to `q`.
pub fn shortest_path(g: &SkeletonGraph, p: u32, q: u32) -> Result<(f64, Vec<u32>)> {
    let n = g.positions.len();
    if (p as usize) >= n || (q as usize) >= n {
        return Err(Error::InvalidInput(format!("vertex out of range: {p}, {q}")));
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![u32::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[p as usize] = 0.0;
    heap.push(Reverse((OrdF64(0.0), p)));
    while let Some(Reverse((OrdF64(d), u))) = heap.pop() {
        if u == q {
            break;
        }
        if d > dist[u as usize] {
            continue;
        }
        for &(v, w) in &g.adj[u as usize] {
            let nd = d + w;
            if nd < dist[v as usize] {
                dist[v as usize] = nd;
                prev[v as usize] = u;
                heap.push(Reverse((OrdF64(nd), v)));
            }
        }
    }
    if dist[q as usize].is_infinite() {
        return Err(Error::Unreachable(format!("no path from {p} to {q}")));
    }
    let mut path = vec![q];
    let mut cur = q;
    while cur != p {
        cur = prev[cur as usize];
        path.push(cur);
    }
    path.reverse();
    Ok((dist[q as usize], path))
}

/// Stretch factor of a graph with its maximizing witness pair.
#[derive(Debug, Clone)]
pub struct StretchReport {
    /// Maximum over all vertex pairs of graph distance / Euclidean distance.
    pub stretch: f64,
    /// Pair attaining the maximum; lexicographically smallest among ties
    /// within `eps_rel` of the maximum.
    pub witness: (u32, u32),
    pub graph_dist: f64,
    pub euclidean_dist: f64,
    /// Per-pair ratios, present only when requested.
    pub pairs: Option<Vec<PairStretch>>,
}

#[derive(Debug, Clone, Copy)]
pub struct PairStretch {
    pub p: u32,
    pub q: u32,
    pub graph_dist: f64,
    pub euclidean_dist: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    ratio: f64,
    p: u32,
    q: u32,
    graph: f64,
    euclid: f64,
}

fn source_candidates(
    g: &SkeletonGraph,
    i: u32,
    collect: bool,
) -> Result<(Candidate, Vec<PairStretch>)> {
    let dist = g.distances_from(i);
    let mut best = Candidate {
        ratio: -1.0,
        p: i,
        q: i,
        graph: 0.0,
        euclid: 0.0,
    };
    let mut rows = Vec::new();
    let pi = g.positions[i as usize];
    for j in (i as usize + 1)..g.positions.len() {
        let e = pi.dist(g.positions[j]);
        if e == 0.0 {
            return Err(Error::InvalidInput(format!(
                "coincident vertex positions: {i} and {j}"
            )));
        }
        let d = dist[j];
        if d.is_infinite() {
            return Err(Error::Unreachable(format!("no path from {i} to {j}")));
        }
        let ratio = d / e;
        if collect {
            rows.push(PairStretch {
                p: i,
                q: j as u32,
                graph_dist: d,
                euclidean_dist: e,
                ratio,
            });
        }
        if ratio > best.ratio {
            best = Candidate {
                ratio,
                p: i,
                q: j as u32,
                graph: d,
                euclid: e,
            };
        }
    }
    Ok((best, rows))
}

fn reduce_candidates(per_source: Vec<(Candidate, Vec<PairStretch>)>, eps_rel: f64) -> StretchReport {
    let mut pairs = Vec::new();
    let mut collected = false;
    let max = per_source
        .iter()
        .map(|(c, _)| c.ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    // Witness: lexicographically smallest pair among near-ties.
    let mut winner: Option<Candidate> = None;
    for (c, rows) in per_source {
        if !rows.is_empty() {
            collected = true;
            pairs.extend(rows);
        }
        if c.ratio >= max * (1.0 - eps_rel) && winner.is_none() {
            winner = Some(c);
        }
    }
    let w = winner.expect("at least one candidate");
    StretchReport {
        stretch: max,
        witness: (w.p, w.q),
        graph_dist: w.graph,
        euclidean_dist: w.euclid,
        pairs: collected.then_some(pairs),
    }
}

/// Exact stretch factor over all unordered vertex pairs, single-threaded.
pub fn stretch_factor_serial(g: &SkeletonGraph) -> Result<StretchReport> {
    stretch_factor_detailed_serial(g, false)
}

pub fn stretch_factor_detailed_serial(g: &SkeletonGraph, with_pairs: bool) -> Result<StretchReport> {
    check_stretch_pre(g)?;
    let n = g.positions.len() as u32;
    let per_source: Result<Vec<_>> = (0..n - 1)
        .map(|i| source_candidates(g, i, with_pairs))
        .collect();
    Ok(reduce_candidates(per_source?, Tolerance::default().eps_rel))
}

/// Exact stretch factor over all unordered vertex pairs. Runs one
/// shortest-path sweep per source, in parallel when the `parallel` feature
/// is enabled; the reduction is deterministic either way.
pub fn stretch_factor(g: &SkeletonGraph) -> Result<StretchReport> {
    stretch_factor_detailed(g, false)
}

pub fn stretch_factor_detailed(g: &SkeletonGraph, with_pairs: bool) -> Result<StretchReport> {
    #[cfg(feature = "parallel")]
    {
        check_stretch_pre(g)?;
        let n = g.positions.len() as u32;
        let per_source: Result<Vec<_>> = (0..n - 1)
            .into_par_iter()
            .map(|i| source_candidates(g, i, with_pairs))
            .collect();
        Ok(reduce_candidates(per_source?, Tolerance::default().eps_rel))
    }
    #[cfg(not(feature = "parallel"))]
    {
        stretch_factor_detailed_serial(g, with_pairs)
    }
}

fn check_stretch_pre(g: &SkeletonGraph) -> Result<()> {
    if g.positions.len() < 2 {
        return Err(Error::InvalidInput(
            "stretch factor needs at least 2 vertices".into(),
        ));
    }
    Ok(())
}

/// Stretch factor of a convex polygon boundary cycle: the graph distance of
/// a vertex pair is the shorter of the two arc lengths between them.
pub fn polygon_cycle_stretch(polygon: &[Point2]) -> Result<StretchReport> {
    let n = polygon.len();
    if n < 3 {
        return Err(Error::InvalidInput(
            "polygon needs at least 3 vertices".into(),
        ));
    }
    let tol = Tolerance::default();
    for i in 0..n {
        let (a, b, c) = (polygon[i], polygon[(i + 1) % n], polygon[(i + 2) % n]);
        if orientation2d(a, b, c, tol)? < 0 {
            return Err(Error::InvalidInput(
                "polygon is not convex counterclockwise".into(),
            ));
        }
    }
    // Prefix arc lengths; cum[i] = boundary distance from vertex 0 to i.
    let mut cum = vec![0.0; n + 1];
    for i in 0..n {
        cum[i + 1] = cum[i] + polygon[i].dist(polygon[(i + 1) % n]);
    }
    let total = cum[n];
    if total <= 0.0 {
        return Err(Error::InvalidInput("degenerate polygon".into()));
    }
    let mut best = Candidate {
        ratio: -1.0,
        p: 0,
        q: 0,
        graph: 0.0,
        euclid: 0.0,
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let along = cum[j] - cum[i];
            let graph = along.min(total - along);
            let euclid = polygon[i].dist(polygon[j]);
            if euclid == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "coincident polygon vertices: {i} and {j}"
                )));
            }
            let ratio = graph / euclid;
            if ratio > best.ratio * (1.0 + tol.eps_rel) {
                best = Candidate {
                    ratio,
                    p: i as u32,
                    q: j as u32,
                    graph,
                    euclid,
                };
            }
        }
    }
    Ok(StretchReport {
        stretch: best.ratio,
        witness: (best.p, best.q),
        graph_dist: best.graph,
        euclidean_dist: best.euclid,
        pairs: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::convex_hull;
    use approx::assert_relative_eq;
    use std::f64::consts::SQRT_2;

    fn octahedron() -> Polyhedron {
        let pts = [
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(-1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(0.0, -1.0, 0.0),
            Point3::new(0.0, 0.0, 1.0),
            Point3::new(0.0, 0.0, -1.0),
        ];
        convex_hull(&pts, Tolerance::default()).unwrap()
    }

    #[test]
    fn tetrahedron_is_k4() {
        let pts = [
            Point3::new(1.0, 1.0, 1.0),
            Point3::new(1.0, -1.0, -1.0),
            Point3::new(-1.0, 1.0, -1.0),
            Point3::new(-1.0, -1.0, 1.0),
        ];
        let p = convex_hull(&pts, Tolerance::default()).unwrap();
        let g = skeleton(&p);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(p.edge_count(), 6);
        let report = stretch_factor(&g).unwrap();
        assert_relative_eq!(report.stretch, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn octahedron_antipodal_path() {
        let p = octahedron();
        let g = skeleton(&p);
        assert_eq!(p.edge_count(), 12);
        for v in 0..6 {
            assert_eq!(g.neighbors(v).len(), 4);
        }
        let a = p.vertex_by_input(0).unwrap();
        let b = p.vertex_by_input(1).unwrap();
        let (len, path) = shortest_path(&g, a, b).unwrap();
        assert_relative_eq!(len, 2.0 * SQRT_2, epsilon = 1e-12);
        assert_eq!(path.len(), 3);
        assert_eq!(path[0], a);
        assert_eq!(path[2], b);
    }

    #[test]
    fn adjacent_pair_is_direct() {
        let p = octahedron();
        let g = skeleton(&p);
        let a = p.vertex_by_input(0).unwrap();
        let c = p.vertex_by_input(2).unwrap();
        let (len, path) = shortest_path(&g, a, c).unwrap();
        assert_relative_eq!(len, SQRT_2, epsilon = 1e-12);
        assert_eq!(path, vec![a, c]);
    }

    #[test]
    fn octahedron_stretch_is_sqrt2() {
        // Oracle: brute force over all 15 pairs via simple-path enumeration.
        let p = octahedron();
        let g = skeleton(&p);
        let brute = brute_force_stretch(&g);
        let report = stretch_factor(&g).unwrap();
        assert_relative_eq!(report.stretch, SQRT_2, epsilon = 1e-12);
        assert_relative_eq!(report.stretch, brute, epsilon = 1e-12);
        let serial = stretch_factor_serial(&g).unwrap();
        assert_eq!(serial.witness, report.witness);
        assert_eq!(serial.stretch, report.stretch);
    }

    /// Exhaustive simple-path enumeration; exponential, only for tiny graphs.
    fn brute_force_stretch(g: &SkeletonGraph) -> f64 {
        fn explore(
            g: &SkeletonGraph,
            cur: u32,
            goal: u32,
            used: &mut Vec<bool>,
            len: f64,
            best: &mut f64,
        ) {
            if cur == goal {
                *best = best.min(len);
                return;
            }
            for &(v, w) in g.neighbors(cur) {
                if !used[v as usize] {
                    used[v as usize] = true;
                    explore(g, v, goal, used, len + w, best);
                    used[v as usize] = false;
                }
            }
        }
        let n = g.vertex_count();
        let mut worst: f64 = 0.0;
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                let mut best = f64::INFINITY;
                let mut used = vec![false; n];
                used[i as usize] = true;
                explore(g, i, j, &mut used, 0.0, &mut best);
                worst = worst.max(best / g.position(i).dist(g.position(j)));
            }
        }
        worst
    }

    #[test]
    fn square_cycle_stretch() {
        // All 6 pairs by hand: adjacent ratio 1, diagonals 2/sqrt(2).
        let sq = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let r = polygon_cycle_stretch(&sq).unwrap();
        assert_relative_eq!(r.stretch, SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn triangle_cycle_stretch_is_one() {
        let tri = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.5, 0.8),
        ];
        let r = polygon_cycle_stretch(&tri).unwrap();
        assert_relative_eq!(r.stretch, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hexagon_cycle_stretch() {
        // 15 pairs by enumeration: opposite pairs give 3s/2s = 1.5.
        let hex: Vec<Point2> = (0..6)
            .map(|i| {
                let a = std::f64::consts::PI / 3.0 * i as f64;
                Point2::new(a.cos(), a.sin())
            })
            .collect();
        let r = polygon_cycle_stretch(&hex).unwrap();
        assert_relative_eq!(r.stretch, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn nonconvex_polygon_rejected() {
        let bad = [
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.5),
            Point2::new(2.0, 2.0),
        ];
        assert!(matches!(
            polygon_cycle_stretch(&bad),
            Err(Error::InvalidInput(_))
        ));
    }
}
