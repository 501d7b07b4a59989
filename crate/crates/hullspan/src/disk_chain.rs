//! Edge-unfolding of a crossed face sequence into a planar triangle chain,
//! the chain of circumdisks it induces, and shortest paths in the chain
//! graph built from arcs and chords.

use crate::cross_section::{CrossSection, Feature};
use crate::error::{Error, Result};
use crate::geom::{circumcircle2d, unfold_point, Point2, Side, Tolerance, Vec2};
use crate::hull::Polyhedron;

/// Planar image of an unfolded face sequence.
///
/// Triangle `i` is congruent to source face `i`; consecutive triangles share
/// the unfolded image of the corresponding polyhedron edge and lie on
/// opposite sides of it.
#[derive(Debug, Clone)]
pub struct TriangleChain2D {
    pub triangles: Vec<[Point2; 3]>,
    /// Shared edge between triangles `i` and `i+1`.
    pub shared_edges: Vec<(Point2, Point2)>,
    pub p: Point2,
    pub q: Point2,
    /// Unfolded image of the section path (p, edge crossings, q).
    pub path: Vec<Point2>,
    /// Source face ids in the polyhedron, parallel to `triangles`.
    pub source_faces: Vec<u32>,
}

impl TriangleChain2D {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn path_length(&self) -> f64 {
        self.path.windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Disk {
    pub center: Point2,
    pub radius: f64,
}

impl Disk {
    /// Signed margin of a point outside the disk boundary.
    pub fn exterior_margin(&self, p: Point2) -> f64 {
        self.center.dist(p) - self.radius
    }
}

/// Sequence of circumdisks of an unfolded triangle chain, with the chain
/// endpoints on the first and last circles.
#[derive(Debug, Clone)]
pub struct DiskChain {
    pub disks: Vec<Disk>,
    pub p: Point2,
    pub q: Point2,
}

/// Unfolds the face sequence crossed by a cross-section path into the plane.
///
/// The first shared edge is placed on the x-axis in canonical position
/// (lower vertex id at the origin) and each subsequent apex is attached by
/// the isometric rotation on the side opposite the previous triangle.
pub fn unfold(poly: &Polyhedron, cs: &CrossSection) -> Result<TriangleChain2D> {
    let k = cs.face_sequence.len();
    if k < 2 {
        return Err(Error::InvalidChain(format!(
            "face sequence has {k} faces, need at least 2"
        )));
    }
    let tol = Tolerance::default();
    // Shared polyhedron edges between consecutive faces.
    let mut shared3 = Vec::with_capacity(k - 1);
    for w in cs.face_sequence.windows(2) {
        let fa = poly.faces()[w[0] as usize];
        let fb = poly.faces()[w[1] as usize];
        let common: Vec<u32> = fa.into_iter().filter(|v| fb.contains(v)).collect();
        if common.len() != 2 {
            return Err(Error::InvalidChain(format!(
                "faces {} and {} do not share an edge",
                w[0], w[1]
            )));
        }
        let (a, b) = (common[0].min(common[1]), common[0].max(common[1]));
        shared3.push((a, b));
    }

    // 2D images of polyhedron vertices, valid per-triangle; the shared edge
    // images carry over between consecutive triangles.
    let mut triangles: Vec<[Point2; 3]> = Vec::with_capacity(k);
    let mut images: Vec<[(u32, Point2); 3]> = Vec::with_capacity(k);

    let (e0a, e0b) = shared3[0];
    let len0 = poly.vertex(e0a).dist(poly.vertex(e0b));
    let img_a = Point2::new(0.0, 0.0);
    let img_b = Point2::new(len0, 0.0);
    let f0 = poly.faces()[cs.face_sequence[0] as usize];
    let apex0 = f0
        .into_iter()
        .find(|&v| v != e0a && v != e0b)
        .expect("face has three vertices");
    let apex0_img = unfold_point(
        (img_a, img_b),
        (poly.vertex(e0a), poly.vertex(e0b)),
        poly.vertex(apex0),
        Side::Left,
        tol,
    )?;
    images.push([(e0a, img_a), (e0b, img_b), (apex0, apex0_img)]);
    triangles.push([img_a, img_b, apex0_img]);

    for i in 1..k {
        let face = poly.faces()[cs.face_sequence[i] as usize];
        let (sa, sb) = shared3[i - 1];
        let prev = &images[i - 1];
        let find_img = |v: u32| prev.iter().find(|(id, _)| *id == v).map(|(_, p)| *p);
        let ia = find_img(sa).ok_or_else(|| Error::InvalidChain("shared edge lost".into()))?;
        let ib = find_img(sb).ok_or_else(|| Error::InvalidChain("shared edge lost".into()))?;
        let apex = face
            .into_iter()
            .find(|&v| v != sa && v != sb)
            .expect("face has three vertices");
        // Previous apex relative to the directed shared edge decides the side.
        let prev_apex_img = prev
            .iter()
            .find(|(id, _)| *id != sa && *id != sb)
            .map(|(_, p)| *p)
            .expect("previous triangle has an off-edge vertex");
        let cross = (ib - ia).cross(prev_apex_img - ia);
        let side = if cross > 0.0 { Side::Right } else { Side::Left };
        let apex_img = unfold_point(
            (ia, ib),
            (poly.vertex(sa), poly.vertex(sb)),
            poly.vertex(apex),
            side,
            tol,
        )?;
        images.push([(sa, ia), (sb, ib), (apex, apex_img)]);
        triangles.push([ia, ib, apex_img]);
    }

    let shared_edges: Vec<(Point2, Point2)> = shared3
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let img = &images[i + 1];
            let find = |v: u32| {
                img.iter()
                    .find(|(id, _)| *id == v)
                    .map(|(_, p)| *p)
                    .expect("shared edge in next triangle")
            };
            (find(a), find(b))
        })
        .collect();

    // Unfolded path: p, one crossing per shared edge, q. Crossing points are
    // interpolated along the shared-edge images at their 3D parameters.
    let path3 = cs.path_points3();
    if path3.len() != k + 1 {
        return Err(Error::InvalidChain(format!(
            "path has {} points for {k} faces",
            path3.len()
        )));
    }
    let p_id = match cs.polygon[cs.path[0]].feature {
        Feature::Vertex(v) => v,
        Feature::Edge(..) => return Err(Error::InvalidChain("path does not start at p".into())),
    };
    let q_id = match cs.polygon[*cs.path.last().expect("path nonempty")].feature {
        Feature::Vertex(v) => v,
        Feature::Edge(..) => return Err(Error::InvalidChain("path does not end at q".into())),
    };
    let p_img = images[0]
        .iter()
        .find(|(id, _)| *id == p_id)
        .map(|(_, pt)| *pt)
        .ok_or_else(|| Error::InvalidChain("p is not a vertex of the first face".into()))?;
    let q_img = images[k - 1]
        .iter()
        .find(|(id, _)| *id == q_id)
        .map(|(_, pt)| *pt)
        .ok_or_else(|| Error::InvalidChain("q is not a vertex of the last face".into()))?;

    let mut path = vec![p_img];
    for (i, &(a, b)) in shared3.iter().enumerate() {
        let (va, vb) = (poly.vertex(a), poly.vertex(b));
        let t = va.dist(path3[i + 1]) / va.dist(vb);
        let (ia, ib) = shared_edges[i];
        path.push(ia + (ib - ia) * t);
    }
    path.push(q_img);

    Ok(TriangleChain2D {
        triangles,
        shared_edges,
        p: p_img,
        q: q_img,
        path,
        source_faces: cs.face_sequence.clone(),
    })
}

/// One circumdisk per unfolded triangle.
pub fn circumdisk_chain(tc: &TriangleChain2D) -> Result<DiskChain> {
    if tc.len() < 2 {
        return Err(Error::InvalidChain("need at least 2 triangles".into()));
    }
    let tol = Tolerance::default();
    let mut disks = Vec::with_capacity(tc.len());
    for t in &tc.triangles {
        let (center, radius) = circumcircle2d(t[0], t[1], t[2], tol)?;
        disks.push(Disk { center, radius });
    }
    Ok(DiskChain {
        disks,
        p: tc.p,
        q: tc.q,
    })
}

/// Findings of the structural disk-chain checks.
#[derive(Debug, Clone)]
pub struct DiskChainReport {
    /// Consecutive circles intersect in exactly one or two points.
    pub consecutive_intersections: Vec<bool>,
    /// For interior disks, the overlap arcs with the previous and next disk
    /// share at most one point.
    pub arc_overlaps: Vec<bool>,
    /// `p` not interior to the second disk, `q` not interior to the
    /// second-to-last disk.
    pub endpoints_outside: (bool, bool),
    /// Signed exterior margin of each new apex against the previous
    /// circumdisk; present when a triangle chain is supplied.
    pub apex_margins: Option<Vec<f64>>,
}

impl DiskChainReport {
    pub fn passed(&self, tol: Tolerance) -> bool {
        self.consecutive_intersections.iter().all(|&b| b)
            && self.arc_overlaps.iter().all(|&b| b)
            && self.endpoints_outside.0
            && self.endpoints_outside.1
            && self
                .apex_margins
                .as_ref()
                .map_or(true, |m| m.iter().all(|&x| x > -tol.eps_abs))
    }
}

/// Circle-circle intersection classified against the tolerance band.
enum CircleMeet {
    Disjoint,
    Nested,
    Tangent(Point2),
    Two(Point2, Point2),
}

fn circle_meet(a: Disk, b: Disk, tol: Tolerance) -> CircleMeet {
    let d = a.center.dist(b.center);
    let band = tol.band(a.radius.max(b.radius));
    if d <= band {
        return CircleMeet::Nested; // concentric; identical circles count as invalid
    }
    let sum = a.radius + b.radius;
    let diff = (a.radius - b.radius).abs();
    if d > sum + band {
        return CircleMeet::Disjoint;
    }
    if d < diff - band {
        return CircleMeet::Nested;
    }
    let axis = (b.center - a.center) * (1.0 / d);
    if d >= sum - band || d <= diff + band {
        // Tangent within the band: collapse to a single point.
        let t = if d >= sum - band || a.radius > b.radius {
            a.radius
        } else {
            -a.radius
        };
        return CircleMeet::Tangent(a.center + axis * t);
    }
    let x = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d);
    let h = (a.radius * a.radius - x * x).max(0.0).sqrt();
    let foot = a.center + axis * x;
    let n = axis.perp();
    CircleMeet::Two(foot + n * h, foot - n * h)
}

/// Angular half-width of the arc of `a`'s boundary inside disk `b`, paired
/// with the direction angle from `a`'s center towards `b`'s center.
fn overlap_arc(a: Disk, b: Disk) -> Option<(f64, f64)> {
    let d = a.center.dist(b.center);
    if d == 0.0 {
        return None;
    }
    let dir = b.center - a.center;
    let dir_angle = dir.y.atan2(dir.x);
    if d + a.radius <= b.radius {
        // Boundary of a entirely inside b.
        return Some((std::f64::consts::PI, dir_angle));
    }
    if d >= a.radius + b.radius || d + b.radius <= a.radius {
        return None;
    }
    let cosg = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d * a.radius);
    Some((cosg.clamp(-1.0, 1.0).acos(), dir_angle))
}

/// Checks the disk-chain conditions: consecutive circles meet in one or two
/// points, interior overlap arcs share at most one point, and the endpoints
/// avoid the interiors of their neighbors' disks. Supplying the source
/// triangle chain adds the apex-exterior certificate.
pub fn validate_disk_chain(
    dc: &DiskChain,
    tc: Option<&TriangleChain2D>,
    tol: Tolerance,
) -> Result<DiskChainReport> {
    let k = dc.disks.len();
    if k < 2 {
        return Err(Error::InvalidChain("need at least 2 disks".into()));
    }
    let mut consecutive = Vec::with_capacity(k - 1);
    for w in dc.disks.windows(2) {
        let ok = matches!(
            circle_meet(w[0], w[1], tol),
            CircleMeet::Tangent(_) | CircleMeet::Two(..)
        );
        consecutive.push(ok);
    }
    let mut arc_overlaps = Vec::new();
    for i in 1..k - 1 {
        let left = overlap_arc(dc.disks[i], dc.disks[i - 1]);
        let right = overlap_arc(dc.disks[i], dc.disks[i + 1]);
        let ok = match (left, right) {
            (Some((g1, a1)), Some((g2, a2))) => {
                let mut delta = (a1 - a2).abs() % (2.0 * std::f64::consts::PI);
                if delta > std::f64::consts::PI {
                    delta = 2.0 * std::f64::consts::PI - delta;
                }
                delta + tol.eps_abs >= g1 + g2
            }
            _ => true,
        };
        arc_overlaps.push(ok);
    }
    let p_ok = dc.disks[1].exterior_margin(dc.p) >= -tol.band(dc.disks[1].radius);
    let q_ok = dc.disks[k - 2].exterior_margin(dc.q) >= -tol.band(dc.disks[k - 2].radius);

    let apex_margins = tc.map(|tc| {
        (1..tc.len())
            .map(|i| {
                let apex = new_apex(tc, i);
                dc.disks[i - 1].exterior_margin(apex)
            })
            .collect()
    });

    Ok(DiskChainReport {
        consecutive_intersections: consecutive,
        arc_overlaps,
        endpoints_outside: (p_ok, q_ok),
        apex_margins,
    })
}

/// Vertex of triangle `i` that is not on the shared edge with triangle `i-1`.
fn new_apex(tc: &TriangleChain2D, i: usize) -> Point2 {
    let (ea, eb) = tc.shared_edges[i - 1];
    *tc.triangles[i]
        .iter()
        .find(|v| v.dist(ea) > 1e-12 && v.dist(eb) > 1e-12)
        .expect("triangle has an off-edge vertex")
}

/// Graph over a disk chain: intersection points of consecutive circles,
/// labeled left/right of the directed center line, connected by boundary
/// arcs and crossing chords.
#[derive(Debug, Clone)]
pub struct ChainGraph {
    /// `a[0] = p`, then the left intersection points, then `a[k] = q`.
    pub a_nodes: Vec<Point2>,
    /// `b[0] = p`, then the right intersection points, then `b[k] = q`.
    pub b_nodes: Vec<Point2>,
    /// Arc lengths along the left nodes; `arc_a[i]` connects `a[i]` to
    /// `a[i+1]` on circle `i`.
    pub arc_a: Vec<f64>,
    pub arc_b: Vec<f64>,
    /// Chord lengths `|a_i b_i|` for interior junctions (zero at tangency).
    pub chords: Vec<f64>,
}

/// Builds the chain graph of a validated disk chain.
pub fn chain_graph(dc: &DiskChain, tol: Tolerance) -> Result<ChainGraph> {
    let k = dc.disks.len();
    if k < 2 {
        return Err(Error::InvalidChain("need at least 2 disks".into()));
    }
    if (dc.q - dc.p).norm() <= tol.eps_abs {
        return Err(Error::InvalidChain("chain endpoints coincide".into()));
    }

    let mut a_nodes = vec![dc.p];
    let mut b_nodes = vec![dc.p];
    for w in dc.disks.windows(2) {
        match circle_meet(w[0], w[1], tol) {
            CircleMeet::Tangent(t) => {
                a_nodes.push(t);
                b_nodes.push(t);
            }
            CircleMeet::Two(x, y) => {
                // a_i lies on or to the left of the directed line between
                // the circle centers.
                let axis = w[1].center - w[0].center;
                let (a, b) = if axis.cross(x - w[0].center) >= 0.0 {
                    (x, y)
                } else {
                    (y, x)
                };
                a_nodes.push(a);
                b_nodes.push(b);
            }
            _ => {
                return Err(Error::InvalidChain(
                    "consecutive circles do not intersect".into(),
                ))
            }
        }
    }
    a_nodes.push(dc.q);
    b_nodes.push(dc.q);

    let chords: Vec<f64> = (1..k).map(|i| a_nodes[i].dist(b_nodes[i])).collect();

    let arc_a = arc_lengths(dc, &a_nodes, dc.p, dc.q, true)?;
    let arc_b = arc_lengths(dc, &b_nodes, dc.p, dc.q, false)?;

    Ok(ChainGraph {
        a_nodes,
        b_nodes,
        arc_a,
        arc_b,
        chords,
    })
}

/// Arc of circle `i` between consecutive nodes, taken on the requested side
/// of the directed line p -> q (left for the a-family, right for the
/// b-family): of the two candidate arcs, the one whose midpoint is farther
/// to that side.
fn arc_lengths(
    dc: &DiskChain,
    nodes: &[Point2],
    p: Point2,
    q: Point2,
    left: bool,
) -> Result<Vec<f64>> {
    let dir = (q - p).normalized()?;
    let mut arcs = Vec::with_capacity(dc.disks.len());
    for (i, disk) in dc.disks.iter().enumerate() {
        let va = nodes[i] - disk.center;
        let vb = nodes[i + 1] - disk.center;
        let ang_a = va.y.atan2(va.x);
        let ang_b = vb.y.atan2(vb.x);
        let mut ccw = ang_b - ang_a;
        if ccw < 0.0 {
            ccw += 2.0 * std::f64::consts::PI;
        }
        let mid_ccw = ang_a + ccw / 2.0;
        let mid_cw = mid_ccw - std::f64::consts::PI;
        let side_of = |ang: f64| {
            let m = disk.center + Vec2::new(ang.cos(), ang.sin()) * disk.radius;
            let c = dir.cross(m - p);
            if left {
                c
            } else {
                -c
            }
        };
        let use_ccw = side_of(mid_ccw) >= side_of(mid_cw);
        let span = if use_ccw {
            ccw
        } else {
            2.0 * std::f64::consts::PI - ccw
        };
        arcs.push(disk.radius * span);
    }
    Ok(arcs)
}

/// Shortest path from `p` to `q` in the chain graph, over arc and chord
/// edges.
pub fn chain_shortest_path(cg: &ChainGraph) -> f64 {
    // Nodes: 0 = p, then (a_i, b_i) pairs, then q. Tiny layered graph, so a
    // table-scan Dijkstra is plenty.
    let k = cg.arc_a.len();
    let n = 2 * (k - 1) + 2;
    let idx_a = |i: usize| 1 + 2 * (i - 1);
    let idx_b = |i: usize| 2 + 2 * (i - 1);
    let node_a = |i: usize| {
        if i == 0 {
            0
        } else if i == k {
            n - 1
        } else {
            idx_a(i)
        }
    };
    let node_b = |i: usize| {
        if i == 0 {
            0
        } else if i == k {
            n - 1
        } else {
            idx_b(i)
        }
    };
    let mut edges: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut add = |edges: &mut Vec<Vec<(usize, f64)>>, u: usize, v: usize, w: f64| {
        edges[u].push((v, w));
        edges[v].push((u, w));
    };
    for i in 0..k {
        add(&mut edges, node_a(i), node_a(i + 1), cg.arc_a[i]);
        add(&mut edges, node_b(i), node_b(i + 1), cg.arc_b[i]);
    }
    for i in 1..k {
        add(&mut edges, idx_a(i), idx_b(i), cg.chords[i - 1]);
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[0] = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&u| !done[u])
            .min_by(|&x, &y| dist[x].total_cmp(&dist[y]));
        let u = match u {
            Some(u) if dist[u].is_finite() => u,
            _ => break,
        };
        done[u] = true;
        for &(v, w) in &edges[u] {
            if dist[u] + w < dist[v] {
                dist[v] = dist[u] + w;
            }
        }
    }
    dist[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn disk(x: f64, y: f64, r: f64) -> Disk {
        Disk {
            center: Point2::new(x, y),
            radius: r,
        }
    }

    #[test]
    fn tangent_disks_graph() {
        // Two unit disks tangent at (1,0): both arc chains are semicircles.
        let dc = DiskChain {
            disks: vec![disk(0.0, 0.0, 1.0), disk(2.0, 0.0, 1.0)],
            p: Point2::new(-1.0, 0.0),
            q: Point2::new(3.0, 0.0),
        };
        let tol = Tolerance::default();
        let report = validate_disk_chain(&dc, None, tol).unwrap();
        assert!(report.passed(tol));
        let cg = chain_graph(&dc, tol).unwrap();
        assert_relative_eq!(cg.a_nodes[1].x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(cg.a_nodes[1].y, 0.0, epsilon = 1e-12);
        assert_eq!(cg.a_nodes[1], cg.b_nodes[1]);
        assert_relative_eq!(cg.arc_a[0], PI, epsilon = 1e-12);
        assert_relative_eq!(cg.arc_b[0], PI, epsilon = 1e-12);
        assert_relative_eq!(cg.chords[0], 0.0, epsilon = 1e-12);
        let len = chain_shortest_path(&cg);
        assert_relative_eq!(len, 2.0 * PI, epsilon = 1e-12);
        // Against the straight-line path length L = 4: ratio pi/2 < 1.998.
        assert!(len <= 1.998 * 4.0);
    }

    #[test]
    fn overlapping_disks_graph() {
        // Intersections of unit circles at (0,0) and (1,0), solved by hand:
        // (1/2, +-sqrt(3)/2), chord sqrt(3).
        let dc = DiskChain {
            disks: vec![disk(0.0, 0.0, 1.0), disk(1.0, 0.0, 1.0)],
            p: Point2::new(-1.0, 0.0),
            q: Point2::new(2.0, 0.0),
        };
        let tol = Tolerance::default();
        let cg = chain_graph(&dc, tol).unwrap();
        assert_relative_eq!(cg.a_nodes[1].x, 0.5, epsilon = 1e-12);
        assert_relative_eq!(cg.a_nodes[1].y, 3.0f64.sqrt() / 2.0, epsilon = 1e-12);
        assert_relative_eq!(cg.b_nodes[1].y, -(3.0f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_relative_eq!(cg.chords[0], 3.0f64.sqrt(), epsilon = 1e-12);
        // Arcs from (-1,0) to (1/2, sqrt3/2) over the top: 2pi/3 each.
        assert_relative_eq!(cg.arc_a[0], 2.0 * PI / 3.0, epsilon = 1e-12);
        assert_relative_eq!(cg.arc_a[1], 2.0 * PI / 3.0, epsilon = 1e-12);
        let len = chain_shortest_path(&cg);
        // Oracle: exhaustive enumeration over the 4 simple p-q routes.
        let routes = [
            cg.arc_a[0] + cg.arc_a[1],
            cg.arc_b[0] + cg.arc_b[1],
            cg.arc_a[0] + cg.chords[0] + cg.arc_b[1],
            cg.arc_b[0] + cg.chords[0] + cg.arc_a[1],
        ];
        let best = routes.iter().fold(f64::INFINITY, |m, &r| m.min(r));
        assert_relative_eq!(len, best, epsilon = 1e-12);
        assert_relative_eq!(len, 4.0 * PI / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn tangency_band_collapses() {
        let tol = Tolerance::default();
        let eps = tol.eps_abs / 10.0;
        let dc = DiskChain {
            disks: vec![disk(0.0, 0.0, 1.0), disk(2.0 - eps, 0.0, 1.0)],
            p: Point2::new(-1.0, 0.0),
            q: Point2::new(3.0 - eps, 0.0),
        };
        let cg = chain_graph(&dc, tol).unwrap();
        assert_eq!(cg.a_nodes[1], cg.b_nodes[1]);
        assert_relative_eq!(cg.chords[0], 0.0);
    }

    #[test]
    fn invalid_chains_detected() {
        let tol = Tolerance::default();
        let disjoint = DiskChain {
            disks: vec![disk(0.0, 0.0, 1.0), disk(5.0, 0.0, 1.0)],
            p: Point2::new(-1.0, 0.0),
            q: Point2::new(6.0, 0.0),
        };
        let r = validate_disk_chain(&disjoint, None, tol).unwrap();
        assert!(!r.consecutive_intersections[0]);
        assert!(!r.passed(tol));

        let nested = DiskChain {
            disks: vec![disk(0.0, 0.0, 2.0), disk(0.0, 0.0, 1.0)],
            p: Point2::new(-2.0, 0.0),
            q: Point2::new(1.0, 0.0),
        };
        let r = validate_disk_chain(&nested, None, tol).unwrap();
        assert!(!r.consecutive_intersections[0]);
    }

    #[test]
    fn circumdisks_of_equilateral_pair() {
        // Two unit equilateral triangles sharing an edge: circumradius
        // 1/sqrt(3), centers mirrored across the shared edge.
        let h = 3.0f64.sqrt() / 2.0;
        let tc = TriangleChain2D {
            triangles: vec![
                [
                    Point2::new(0.0, 0.0),
                    Point2::new(1.0, 0.0),
                    Point2::new(0.5, -h),
                ],
                [
                    Point2::new(0.0, 0.0),
                    Point2::new(1.0, 0.0),
                    Point2::new(0.5, h),
                ],
            ],
            shared_edges: vec![(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0))],
            p: Point2::new(0.5, -h),
            q: Point2::new(0.5, h),
            path: vec![
                Point2::new(0.5, -h),
                Point2::new(0.5, 0.0),
                Point2::new(0.5, h),
            ],
            source_faces: vec![0, 1],
        };
        let dc = circumdisk_chain(&tc).unwrap();
        let r = 1.0 / 3.0f64.sqrt();
        assert_relative_eq!(dc.disks[0].radius, r, epsilon = 1e-12);
        assert_relative_eq!(dc.disks[1].radius, r, epsilon = 1e-12);
        assert_relative_eq!(
            dc.disks[0].center.y,
            -(dc.disks[1].center.y),
            epsilon = 1e-12
        );
        assert_relative_eq!(dc.disks[0].center.x, 0.5, epsilon = 1e-12);

        let report = validate_disk_chain(&dc, Some(&tc), Tolerance::default()).unwrap();
        let margins = report.apex_margins.as_ref().unwrap();
        assert!(margins.iter().all(|&m| m > 0.0));
        assert!(report.passed(Tolerance::default()));
    }

    #[test]
    fn right_triangle_circumdisk() {
        // Hypotenuse is the diameter.
        let tc = TriangleChain2D {
            triangles: vec![
                [
                    Point2::new(0.0, 0.0),
                    Point2::new(2.0, 0.0),
                    Point2::new(0.0, 2.0),
                ],
                [
                    Point2::new(2.0, 0.0),
                    Point2::new(0.0, 2.0),
                    Point2::new(2.0, 2.0),
                ],
            ],
            shared_edges: vec![(Point2::new(2.0, 0.0), Point2::new(0.0, 2.0))],
            p: Point2::new(0.0, 0.0),
            q: Point2::new(2.0, 2.0),
            path: vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(2.0, 2.0),
            ],
            source_faces: vec![0, 1],
        };
        let dc = circumdisk_chain(&tc).unwrap();
        assert_relative_eq!(dc.disks[0].center.x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(dc.disks[0].center.y, 1.0, epsilon = 1e-12);
        assert_relative_eq!(dc.disks[0].radius, 2.0f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn single_triangle_rejected() {
        let tc = TriangleChain2D {
            triangles: vec![[
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.5, 1.0),
            ]],
            shared_edges: vec![],
            p: Point2::new(0.0, 0.0),
            q: Point2::new(1.0, 0.0),
            path: vec![],
            source_faces: vec![0],
        };
        assert!(matches!(circumdisk_chain(&tc), Err(Error::InvalidChain(_))));
    }
}
