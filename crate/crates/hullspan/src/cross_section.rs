//! Cross-sections of a polyhedron by the plane through two vertices and the
//! origin: the section polygon, the boundary path on the arc side, the
//! sequence of faces it crosses, and the great-arc chord bound.

use crate::error::{Error, Result};
use crate::geom::{Plane, Point2, Point3, Tolerance, Vec3};
use crate::hull::Polyhedron;

/// Polyhedron feature a section-polygon vertex lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feature {
    Vertex(u32),
    /// Interior point of the edge with these (sorted) endpoint ids.
    Edge(u32, u32),
}

#[derive(Debug, Clone, Copy)]
pub struct SectionVertex {
    /// In-plane coordinates (x along `q - p`).
    pub position: Point2,
    pub position3: Point3,
    pub feature: Feature,
}

/// Section of a polyhedron by a plane through two vertices and the origin.
#[derive(Debug, Clone)]
pub struct CrossSection {
    pub plane: Plane,
    /// Convex section polygon, counterclockwise in plane coordinates,
    /// starting at `p`.
    pub polygon: Vec<SectionVertex>,
    /// Indices into `polygon` tracing the path from `p` to `q` on the side
    /// of segment `pq` away from the in-plane origin (the arc side).
    pub path: Vec<usize>,
    /// Faces crossed by consecutive path edges; empty iff `skeleton_edge`.
    pub face_sequence: Vec<u32>,
    /// True when `pq` is an edge of the polyhedron; the path degenerates to
    /// the segment itself.
    pub skeleton_edge: bool,
    /// Shorter great-arc length between `p` and `q` when both lie on a
    /// common origin-centered sphere.
    pub arc_length: Option<f64>,
}

impl CrossSection {
    pub fn path_points(&self) -> Vec<Point2> {
        self.path.iter().map(|&i| self.polygon[i].position).collect()
    }

    pub fn path_points3(&self) -> Vec<Point3> {
        self.path.iter().map(|&i| self.polygon[i].position3).collect()
    }

    /// Length of the path from `p` to `q`.
    pub fn path_length(&self) -> f64 {
        let pts = self.path_points();
        pts.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    pub fn polygon_points(&self) -> Vec<Point2> {
        self.polygon.iter().map(|v| v.position).collect()
    }
}

/// Unit-normal plane through `p`, `q`, and the origin.
pub fn section_plane(p: Point3, q: Point3) -> Result<Plane> {
    if !p.is_finite() || !q.is_finite() {
        return Err(Error::InvalidInput("non-finite coordinate".into()));
    }
    let cross = p.to_vec().cross(q.to_vec());
    let scale = p.norm() * q.norm();
    if cross.norm() <= Tolerance::default().eps_rel * scale {
        return Err(Error::Degenerate(
            "p, q, and the origin are collinear; the section plane is not unique".into(),
        ));
    }
    Ok(Plane {
        normal: cross.normalized()?,
        offset: 0.0,
    })
}

/// Orthonormal in-plane frame with the first axis along `q - p`, so the
/// segment `pq` maps onto a horizontal segment.
pub fn in_plane_frame(plane: &Plane, p: Point3, q: Point3) -> Result<(Vec3, Vec3)> {
    let e1 = (q - p).normalized()?;
    let e2 = plane.normal.cross(e1);
    Ok((e1, e2))
}

fn project(frame: (Vec3, Vec3), v: Point3) -> Point2 {
    Point2::new(frame.0.dot(v.to_vec()), frame.1.dot(v.to_vec()))
}

/// Shorter great-arc length between two points on the origin-centered sphere
/// of the given radius.
pub fn great_arc(p: Point3, q: Point3, sphere_radius: f64) -> Result<f64> {
    if sphere_radius <= 0.0 {
        return Err(Error::InvalidInput("sphere radius must be positive".into()));
    }
    let tol = Tolerance::default();
    for v in [p, q] {
        if (v.norm() - sphere_radius).abs() > tol.band(sphere_radius) {
            return Err(Error::InvalidInput(format!(
                "point at distance {} is not on the sphere of radius {sphere_radius}",
                v.norm()
            )));
        }
    }
    let band = tol.band(sphere_radius);
    if p.dist(q) <= band {
        return Err(Error::Degenerate("coincident points".into()));
    }
    if (p.to_vec() + q.to_vec()).norm() <= band {
        return Err(Error::Degenerate("antipodal points".into()));
    }
    let cosang = (p.to_vec().dot(q.to_vec()) / (p.norm() * q.norm())).clamp(-1.0, 1.0);
    Ok(sphere_radius * cosang.acos())
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Exit {
    /// Cross the interior of `face`, leaving through `edge`.
    Cross { face: u32, edge: (u32, u32) },
    /// Follow an in-plane polyhedron edge to another on-plane vertex.
    Step { to: u32 },
}

/// Cuts a polyhedron with a plane through two of its vertices and the
/// origin. `p` and `q` are hull vertex ids on the plane.
///
/// When `pq` is a skeleton edge the path is the trivial segment and the full
/// polygon may pass through further on-plane vertices (they are walked, not
/// rejected). Otherwise any third vertex on the plane is a general-position
/// violation.
pub fn cut(
    poly: &Polyhedron,
    plane: &Plane,
    p: u32,
    q: u32,
    tol: Tolerance,
) -> Result<CrossSection> {
    let n = poly.vertex_count() as u32;
    if p >= n || q >= n || p == q {
        return Err(Error::InvalidInput(format!("bad vertex ids {p}, {q}")));
    }
    if plane.offset.abs() > tol.eps_abs {
        return Err(Error::InvalidInput(
            "section plane does not pass through the origin".into(),
        ));
    }
    let vp = poly.vertex(p);
    let vq = poly.vertex(q);

    // On-plane classification uses a rounding-level band (eps_rel-scaled):
    // incidence here is an exact question, not a model tolerance.
    let side: Vec<i8> = poly
        .vertices()
        .iter()
        .map(|v| {
            let s = plane.signed_distance(*v);
            let band = (tol.eps_rel * v.norm()).max(f64::MIN_POSITIVE);
            if s > band {
                1
            } else if s < -band {
                -1
            } else {
                0
            }
        })
        .collect();
    if side[p as usize] != 0 || side[q as usize] != 0 {
        return Err(Error::InvalidInput(
            "p and q must lie on the section plane".into(),
        ));
    }
    // Origin must be strictly interior.
    for f in poly.faces() {
        let (a, b, c) = (poly.vertex(f[0]), poly.vertex(f[1]), poly.vertex(f[2]));
        let nrm = (b - a).cross(c - a);
        if nrm.dot(Point3::new(0.0, 0.0, 0.0) - a) >= 0.0 {
            return Err(Error::InvalidInput(
                "origin is not strictly interior to the polyhedron".into(),
            ));
        }
    }

    let skeleton_edge = poly.has_edge(p, q);

    let frame = in_plane_frame(plane, vp, vq)?;

    // Walk the section boundary feature by feature starting from p.
    let exits_of_vertex = |v: u32| -> Result<Vec<Exit>> {
        let mut exits = Vec::new();
        let mut seen_steps = Vec::new();
        for &fi in poly.faces_of_vertex(v) {
            let f = poly.faces()[fi as usize];
            let others: Vec<u32> = f.into_iter().filter(|&x| x != v).collect();
            let (x, y) = (others[0], others[1]);
            let (sx, sy) = (side[x as usize], side[y as usize]);
            if sx == 0 && sy == 0 {
                return Err(Error::GeneralPosition(format!(
                    "face {fi} lies in the section plane"
                )));
            }
            if sx * sy < 0 {
                let edge = if x < y { (x, y) } else { (y, x) };
                exits.push(Exit::Cross { face: fi, edge });
            }
            for &w in [x, y].iter() {
                if side[w as usize] == 0 && poly.has_edge(v, w) && !seen_steps.contains(&w) {
                    seen_steps.push(w);
                    exits.push(Exit::Step { to: w });
                }
            }
        }
        Ok(exits)
    };

    let cross_point = |edge: (u32, u32)| -> Point3 {
        let (a, b) = (poly.vertex(edge.0), poly.vertex(edge.1));
        let (sa, sb) = (plane.signed_distance(a), plane.signed_distance(b));
        let t = sa / (sa - sb);
        a + (b - a) * t
    };

    let mut polygon: Vec<SectionVertex> = vec![SectionVertex {
        position: project(frame, vp),
        position3: vp,
        feature: Feature::Vertex(p),
    }];

    let push_vertex = |polygon: &mut Vec<SectionVertex>, v: u32| {
        polygon.push(SectionVertex {
            position: project(frame, poly.vertex(v)),
            position3: poly.vertex(v),
            feature: Feature::Vertex(v),
        });
    };
    let other_exit = |exits: Vec<Exit>, back: Exit, at: u32| -> Result<Exit> {
        if exits.len() != 2 {
            return Err(Error::GeneralPosition(format!(
                "expected 2 section exits at vertex {at}, found {}",
                exits.len()
            )));
        }
        exits
            .into_iter()
            .find(|e| *e != back)
            .ok_or_else(|| Error::GeneralPosition("section walk stuck at a vertex".into()))
    };

    let start_exits = exits_of_vertex(p)?;
    if start_exits.len() != 2 {
        return Err(Error::GeneralPosition(format!(
            "expected 2 section exits at vertex {p}, found {}",
            start_exits.len()
        )));
    }
    let mut exit = start_exits[0];
    let limit = poly.edge_count() + poly.vertex_count() + 2;
    let mut closed = false;
    for _ in 0..limit {
        match exit {
            Exit::Step { to } => {
                if to == p {
                    closed = true;
                    break;
                }
                let from = match polygon.last().expect("walk started at p").feature {
                    Feature::Vertex(v) => v,
                    Feature::Edge(..) => unreachable!("steps start at vertices"),
                };
                push_vertex(&mut polygon, to);
                exit = other_exit(exits_of_vertex(to)?, Exit::Step { to: from }, to)?;
            }
            Exit::Cross { face, edge } => {
                let pt3 = cross_point(edge);
                polygon.push(SectionVertex {
                    position: project(frame, pt3),
                    position3: pt3,
                    feature: Feature::Edge(edge.0, edge.1),
                });
                // Continue in the twin face across the crossed edge.
                let [f0, f1] = poly
                    .faces_of_edge(edge.0, edge.1)
                    .expect("crossed edge exists");
                let g = if f0 == face { f1 } else { f0 };
                let w = poly.faces()[g as usize]
                    .into_iter()
                    .find(|&x| x != edge.0 && x != edge.1)
                    .expect("face has a third vertex");
                if side[w as usize] == 0 {
                    // The chord of g ends at an on-plane vertex.
                    if w == p {
                        closed = true;
                        break;
                    }
                    push_vertex(&mut polygon, w);
                    exit = other_exit(exits_of_vertex(w)?, Exit::Cross { face: g, edge }, w)?;
                } else {
                    // The chord of g leaves through its other straddling edge.
                    let a = if side[edge.0 as usize] * side[w as usize] < 0 {
                        edge.0
                    } else {
                        edge.1
                    };
                    let edge2 = if a < w { (a, w) } else { (w, a) };
                    exit = Exit::Cross { face: g, edge: edge2 };
                }
            }
        }
    }
    if !closed {
        return Err(Error::GeneralPosition("section walk did not close".into()));
    }

    // Merge consecutive points closer than the absolute tolerance, keeping
    // vertex-tagged entries; guards against spurious zero-length edges.
    let mut merged: Vec<SectionVertex> = Vec::with_capacity(polygon.len());
    for sv in polygon {
        if let Some(last) = merged.last() {
            if last.position3.dist(sv.position3) <= tol.eps_abs {
                if matches!(sv.feature, Feature::Vertex(_))
                    && matches!(last.feature, Feature::Edge(..))
                {
                    *merged.last_mut().expect("nonempty") = sv;
                }
                continue;
            }
        }
        merged.push(sv);
    }
    if merged.len() >= 2
        && merged[0].position3.dist(merged[merged.len() - 1].position3) <= tol.eps_abs
    {
        merged.pop();
    }
    let mut polygon = merged;
    if polygon.len() < 3 {
        return Err(Error::GeneralPosition("degenerate section polygon".into()));
    }

    // Orient counterclockwise (the in-plane origin is interior, so the
    // signed area decides), keeping p at index 0.
    let area: f64 = polygon
        .windows(2)
        .map(|w| w[0].position.x * w[1].position.y - w[1].position.x * w[0].position.y)
        .sum::<f64>()
        + {
            let a = polygon[polygon.len() - 1].position;
            let b = polygon[0].position;
            a.x * b.y - b.x * a.y
        };
    if area < 0.0 {
        polygon[1..].reverse();
    }

    let qi = polygon
        .iter()
        .position(|sv| sv.feature == Feature::Vertex(q))
        .ok_or_else(|| Error::GeneralPosition("q missing from section polygon".into()))?;

    let (path, face_sequence) = if skeleton_edge {
        (vec![0usize, qi], Vec::new())
    } else {
        // Chain on the arc side: the side of the line pq away from the
        // in-plane origin, i.e. the side of p's own y-coordinate sign.
        let y_p = polygon[0].position.y;
        let forward: Vec<usize> = (1..qi).collect();
        let backward: Vec<usize> = ((qi + 1)..polygon.len()).rev().collect();
        if forward.is_empty() || backward.is_empty() {
            return Err(Error::GeneralPosition(
                "section polygon has p and q adjacent but pq is not an edge".into(),
            ));
        }
        let pick_forward = {
            let probe = polygon[forward[0]].position.y;
            (probe - y_p) * y_p.signum() > 0.0
        };
        let chain = if pick_forward { forward } else { backward };
        // A polyhedron vertex in the interior of the path breaks the
        // edge-adjacent face sequence; that is exactly the general-position
        // failure the unfolding pipeline cannot tolerate. Extra on-plane
        // vertices on the origin-side chain (e.g. antipodes on centrally
        // symmetric hulls) are harmless and allowed.
        if let Some(&bad) = chain
            .iter()
            .find(|&&i| matches!(polygon[i].feature, Feature::Vertex(_)))
        {
            let v = match polygon[bad].feature {
                Feature::Vertex(v) => v,
                Feature::Edge(..) => unreachable!(),
            };
            return Err(Error::GeneralPosition(format!(
                "vertex {v} lies on the section path between {p} and {q}"
            )));
        }
        let mut path = vec![0usize];
        path.extend(&chain);
        path.push(qi);

        let mut faces = Vec::with_capacity(path.len() - 1);
        for w in path.windows(2) {
            let fa = &polygon[w[0]].feature;
            let fb = &polygon[w[1]].feature;
            let face = face_between(poly, fa, fb).ok_or_else(|| {
                Error::GeneralPosition("consecutive path features share no face".into())
            })?;
            faces.push(face);
        }
        (path, faces)
    };

    let arc_length = {
        let (rp, rq) = (vp.norm(), vq.norm());
        if (rp - rq).abs() <= tol.band(rp) {
            great_arc(vp, vq, 0.5 * (rp + rq)).ok()
        } else {
            None
        }
    };

    Ok(CrossSection {
        plane: *plane,
        polygon,
        path,
        face_sequence,
        skeleton_edge,
        arc_length,
    })
}

fn face_between(poly: &Polyhedron, a: &Feature, b: &Feature) -> Option<u32> {
    let face_has_vertex = |fi: u32, v: u32| poly.faces()[fi as usize].contains(&v);
    match (a, b) {
        (Feature::Vertex(v), Feature::Edge(x, y)) | (Feature::Edge(x, y), Feature::Vertex(v)) => {
            let fs = poly.faces_of_edge(*x, *y)?;
            fs.into_iter().find(|&f| face_has_vertex(f, *v))
        }
        (Feature::Edge(x1, y1), Feature::Edge(x2, y2)) => {
            let f1 = poly.faces_of_edge(*x1, *y1)?;
            let f2 = poly.faces_of_edge(*x2, *y2)?;
            f1.into_iter().find(|f| f2.contains(f))
        }
        (Feature::Vertex(_), Feature::Vertex(_)) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::convex_hull;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

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
    fn section_plane_basics() {
        let pl = section_plane(Point3::new(1.0, 0.0, 0.0), Point3::new(0.0, 1.0, 0.0)).unwrap();
        assert_relative_eq!(pl.normal.z.abs(), 1.0, epsilon = 1e-12);
        assert_eq!(pl.offset, 0.0);
        let pl2 = section_plane(Point3::new(1.0, 0.0, 0.0), Point3::new(0.0, 0.0, 1.0)).unwrap();
        assert_relative_eq!(pl2.normal.y.abs(), 1.0, epsilon = 1e-12);
        assert!(matches!(
            section_plane(Point3::new(1.0, 0.0, 0.0), Point3::new(-1.0, 0.0, 0.0)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn great_arc_values() {
        let a = great_arc(Point3::new(1.0, 0.0, 0.0), Point3::new(0.0, 1.0, 0.0), 1.0).unwrap();
        assert_relative_eq!(a, FRAC_PI_2, epsilon = 1e-12);
        let q = Point3::new(0.1f64.cos(), 0.1f64.sin(), 0.0);
        let b = great_arc(Point3::new(1.0, 0.0, 0.0), q, 1.0).unwrap();
        assert_relative_eq!(b, 0.1, epsilon = 1e-12);
        assert!(matches!(
            great_arc(Point3::new(1.0, 0.0, 0.0), Point3::new(-1.0, 0.0, 0.0), 1.0),
            Err(Error::Degenerate(_))
        ));
        // chord bound at alpha = pi/2
        assert!(a <= FRAC_PI_2 * 2.0f64.sqrt());
    }

    #[test]
    fn octahedron_equator_cut() {
        // Direct intersection of the 8 faces with z = 0 gives the square
        // (+-1, 0), (0, +-1); pq is a skeleton edge so the path is trivial.
        let poly = octahedron();
        let p = poly.vertex_by_input(0).unwrap();
        let q = poly.vertex_by_input(2).unwrap();
        let plane = section_plane(poly.vertex(p), poly.vertex(q)).unwrap();
        let cs = cut(&poly, &plane, p, q, Tolerance::default()).unwrap();
        assert!(cs.skeleton_edge);
        assert_eq!(cs.polygon.len(), 4);
        assert!(cs.face_sequence.is_empty());
        assert_eq!(cs.path.len(), 2);
        let perimeter: f64 = {
            let pts = cs.polygon_points();
            (0..4).map(|i| pts[i].dist(pts[(i + 1) % 4])).sum()
        };
        assert_relative_eq!(perimeter, 4.0 * 2.0f64.sqrt(), epsilon = 1e-12);
        // All four section vertices are polyhedron vertices.
        assert!(cs
            .polygon
            .iter()
            .all(|sv| matches!(sv.feature, Feature::Vertex(_))));
    }

    #[test]
    fn third_vertex_on_plane_rejected_for_non_edge() {
        let poly = octahedron();
        let p = poly.vertex_by_input(0).unwrap();
        let q = poly.vertex_by_input(1).unwrap(); // antipodal, not an edge
        let plane = Plane {
            normal: Vec3::new(0.0, 0.0, 1.0),
            offset: 0.0,
        };
        let e = cut(&poly, &plane, p, q, Tolerance::default());
        assert!(matches!(e, Err(Error::GeneralPosition(_))));
    }

    fn icosahedron_points() -> Vec<Point3> {
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let s = (1.0 + phi * phi).sqrt();
        let mut pts = Vec::new();
        for &a in &[-1.0, 1.0] {
            for &b in &[-phi, phi] {
                pts.push(Point3::new(0.0, a / s, b / s));
                pts.push(Point3::new(a / s, b / s, 0.0));
                pts.push(Point3::new(b / s, 0.0, a / s));
            }
        }
        pts
    }

    #[test]
    fn icosahedron_nonadjacent_cuts() {
        let pts = icosahedron_points();
        let poly = convex_hull(&pts, Tolerance::default()).unwrap();
        assert_eq!(poly.vertex_count(), 12);
        assert_eq!(poly.face_count(), 20);
        let tol = Tolerance::default();
        let mut checked = 0;
        for p in 0..poly.vertex_count() as u32 {
            for q in (p + 1)..poly.vertex_count() as u32 {
                if poly.has_edge(p, q) {
                    continue;
                }
                let plane = match section_plane(poly.vertex(p), poly.vertex(q)) {
                    Ok(pl) => pl,
                    Err(_) => continue, // antipodal pairs
                };
                let cs = cut(&poly, &plane, p, q, tol).unwrap();
                assert!(cs.face_sequence.len() >= 2);
                let arc = cs.arc_length.expect("on sphere");
                assert!(cs.path_length() <= arc + 1e-9);
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
