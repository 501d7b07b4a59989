//! Simplicial convex hulls of 3D point sets and validation of the structural
//! assumptions the higher modules rely on: general position, sphere and shell
//! containment, origin interiority, and the minimum face angle.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::{angle_at3, orientation3d, Point3, Tolerance};

/// Convex simplicial polyhedron: vertices, outward-oriented triangular faces,
/// and the derived edge set.
///
/// Vertices are the hull members of the input set, kept in input order;
/// `input_indices` maps each hull vertex back to its index in the original
/// point list.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    vertices: Vec<Point3>,
    input_indices: Vec<usize>,
    faces: Vec<[u32; 3]>,
    edges: Vec<(u32, u32)>,
    edge_faces: Vec<[u32; 2]>,
    vertex_faces: Vec<Vec<u32>>,
}

impl Polyhedron {
    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn vertex(&self, id: u32) -> Point3 {
        self.vertices[id as usize]
    }

    pub fn input_indices(&self) -> &[usize] {
        &self.input_indices
    }

    /// Hull vertex id of the input point with the given index, if it is a
    /// hull vertex.
    pub fn vertex_by_input(&self, input_index: usize) -> Option<u32> {
        self.input_indices
            .binary_search(&input_index)
            .ok()
            .map(|i| i as u32)
    }

    pub fn faces(&self) -> &[[u32; 3]] {
        &self.faces
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn has_face(&self, a: u32, b: u32, c: u32) -> bool {
        let mut want = [a, b, c];
        want.sort_unstable();
        self.faces.iter().any(|f| {
            let mut t = *f;
            t.sort_unstable();
            t == want
        })
    }

    /// The two face ids adjacent to an edge.
    pub fn faces_of_edge(&self, a: u32, b: u32) -> Option<[u32; 2]> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search(&key)
            .ok()
            .map(|i| self.edge_faces[i])
    }

    pub fn faces_of_vertex(&self, v: u32) -> &[u32] {
        &self.vertex_faces[v as usize]
    }

    /// Structural sanity: triangles only (by construction), Euler formula,
    /// every edge shared by exactly two faces, and local convexity across
    /// every edge.
    pub fn validate(&self, tol: Tolerance) -> Result<()> {
        let v = self.vertex_count() as i64;
        let e = self.edge_count() as i64;
        let f = self.face_count() as i64;
        if v - e + f != 2 {
            return Err(Error::Dimension(format!(
                "Euler check failed: V={v} E={e} F={f}"
            )));
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let [f0, f1] = self.edge_faces[i];
            if f0 == f1 {
                return Err(Error::Dimension(format!(
                    "edge ({a},{b}) not shared by two faces"
                )));
            }
            // Convex (or flat) dihedral: the vertex of f1 opposite the edge
            // must not be strictly outside f0's plane.
            let fa = self.faces[f0 as usize];
            let opp = self.faces[f1 as usize]
                .into_iter()
                .find(|&x| x != a && x != b)
                .expect("adjacent face shares edge");
            let s = orientation3d(
                self.vertices[fa[0] as usize],
                self.vertices[fa[1] as usize],
                self.vertices[fa[2] as usize],
                self.vertices[opp as usize],
                tol,
            )?;
            if s > 0 {
                return Err(Error::Dimension(format!(
                    "reflex dihedral across edge ({a},{b})"
                )));
            }
        }
        Ok(())
    }
}

/// Per-assumption findings for a polyhedron; each field is computed
/// independently and carries a witness exactly when its flag is false.
#[derive(Debug, Clone)]
pub struct AssumptionReport {
    /// No four hull vertices are coplanar across an edge (no flat dihedral).
    pub general_position: bool,
    pub coplanar_witness: Option<[u32; 4]>,
    pub no_face_plane_through_origin: bool,
    /// Face whose supporting plane passes through the origin.
    pub origin_plane_witness: Option<u32>,
    pub on_sphere: Option<OnSphereCheck>,
    /// Minimum corner angle over all faces, radians.
    pub min_face_angle: f64,
    /// Tightest shell radii: (min face-plane distance from origin, max
    /// vertex norm). The inner value is negative if the origin is outside.
    pub shell_fit: (f64, f64),
    pub shell: Option<ShellCheck>,
    pub contains_origin: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct OnSphereCheck {
    pub radius: f64,
    pub max_deviation: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct ShellCheck {
    pub inner: f64,
    pub outer: f64,
    pub ok: bool,
}

impl AssumptionReport {
    /// All hypotheses needed for the sphere-inscribed stretch bound.
    pub fn satisfies_sphere_assumptions(&self) -> bool {
        self.general_position
            && self.no_face_plane_through_origin
            && self.on_sphere.map_or(false, |c| c.ok)
    }

    /// All hypotheses needed for the shell/angle stretch bound at `theta`.
    pub fn satisfies_shell_assumptions(&self, theta: f64) -> bool {
        self.shell.map_or(false, |c| c.ok)
            && self.contains_origin
            && self.min_face_angle >= theta
    }
}

struct HullBuilder<'a> {
    points: &'a [Point3],
    tol: Tolerance,
    // Directed faces over input indices; dead slots flagged rather than
    // removed so ids stay stable within one insertion round.
    faces: Vec<[usize; 3]>,
    alive: Vec<bool>,
}

impl<'a> HullBuilder<'a> {
    fn orient(&self, f: [usize; 3], p: usize) -> Result<i8> {
        orientation3d(
            self.points[f[0]],
            self.points[f[1]],
            self.points[f[2]],
            self.points[p],
            self.tol,
        )
    }

    fn initial_simplex(&mut self) -> Result<[usize; 4]> {
        let pts = self.points;
        let n = pts.len();
        let i0 = 0usize;
        // Farthest point from i0.
        let i1 = (1..n)
            .max_by(|&a, &b| {
                pts[i0]
                    .dist(pts[a])
                    .total_cmp(&pts[i0].dist(pts[b]))
            })
            .ok_or_else(|| Error::Dimension("need at least 4 points".into()))?;
        if pts[i0].dist(pts[i1]) <= self.tol.eps_abs {
            return Err(Error::Dimension("all points coincide".into()));
        }
        // Point maximizing area with (i0, i1).
        let base = pts[i1] - pts[i0];
        let i2 = (0..n)
            .filter(|&i| i != i0 && i != i1)
            .max_by(|&a, &b| {
                let ca = base.cross(pts[a] - pts[i0]).norm();
                let cb = base.cross(pts[b] - pts[i0]).norm();
                ca.total_cmp(&cb)
            })
            .ok_or_else(|| Error::Dimension("need at least 4 points".into()))?;
        let area = base.cross(pts[i2] - pts[i0]).norm();
        if area <= self.tol.eps_rel * base.norm() * pts[i0].dist(pts[i2]) {
            return Err(Error::Dimension("all points collinear".into()));
        }
        // First point off the plane of (i0, i1, i2).
        let i3 = (0..n)
            .filter(|&i| i != i0 && i != i1 && i != i2)
            .find_map(|i| {
                match orientation3d(pts[i0], pts[i1], pts[i2], pts[i], self.tol) {
                    Ok(0) => None,
                    Ok(_) => Some(Ok(i)),
                    Err(e) => Some(Err(e)),
                }
            })
            .transpose()?
            .ok_or_else(|| Error::Dimension("all points coplanar".into()))?;
        Ok([i0, i1, i2, i3])
    }

    fn push_tetrahedron(&mut self, mut s: [usize; 4]) -> Result<()> {
        if self.orient([s[0], s[1], s[2]], s[3])? < 0 {
            s.swap(1, 2);
        }
        let [a, b, c, d] = s;
        for f in [[a, c, b], [a, b, d], [b, c, d], [c, a, d]] {
            self.faces.push(f);
            self.alive.push(true);
        }
        Ok(())
    }

    fn insert(&mut self, p: usize) -> Result<()> {
        let mut visible = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            if self.alive[fi] && self.orient(*f, p)? > 0 {
                visible.push(fi);
            }
        }
        if visible.is_empty() {
            return Ok(()); // inside or on the current hull
        }
        let in_visible: std::collections::HashSet<usize> = visible.iter().copied().collect();
        // Directed edge -> owning alive face.
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            if !self.alive[fi] {
                continue;
            }
            for k in 0..3 {
                owner.insert((f[k], f[(k + 1) % 3]), fi);
            }
        }
        // Horizon: directed edges of visible faces whose twin face survives.
        let mut horizon = Vec::new();
        for &fi in &visible {
            let f = self.faces[fi];
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                match owner.get(&(b, a)) {
                    Some(&g) if in_visible.contains(&g) => {}
                    Some(_) => horizon.push((a, b)),
                    None => {
                        return Err(Error::GeneralPosition(
                            "open boundary during hull construction".into(),
                        ))
                    }
                }
            }
        }
        // The horizon must close: every start vertex appears exactly once.
        let mut starts: Vec<usize> = horizon.iter().map(|&(a, _)| a).collect();
        starts.sort_unstable();
        if starts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::GeneralPosition(
                "pinched horizon during hull construction; input too degenerate".into(),
            ));
        }
        for &fi in &visible {
            self.alive[fi] = false;
        }
        for (a, b) in horizon {
            self.faces.push([a, b, p]);
            self.alive.push(true);
        }
        Ok(())
    }
}

/// Convex hull of a 3D point set as a simplicial polyhedron.
///
/// Coplanar facets are re-triangulated deterministically: every maximal group
/// of coplanar adjacent faces is merged and fanned from its lowest vertex id,
/// so the output does not depend on insertion order. Input points closer than
/// the absolute tolerance to an existing hull vertex are dropped.
pub fn convex_hull(points: &[Point3], tol: Tolerance) -> Result<Polyhedron> {
    if points.len() < 4 {
        return Err(Error::Dimension(format!(
            "need at least 4 points, got {}",
            points.len()
        )));
    }
    for p in points {
        if !p.is_finite() {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
    }
    let mut builder = HullBuilder {
        points,
        tol,
        faces: Vec::new(),
        alive: Vec::new(),
    };
    let simplex = builder.initial_simplex()?;
    builder.push_tetrahedron(simplex)?;
    for i in 0..points.len() {
        if simplex.contains(&i) {
            continue;
        }
        // Skip near-duplicates of points already on the hull.
        let dup = builder
            .faces
            .iter()
            .zip(&builder.alive)
            .filter(|(_, &al)| al)
            .flat_map(|(f, _)| f.iter())
            .any(|&v| points[v].dist(points[i]) <= tol.eps_abs);
        if dup {
            continue;
        }
        builder.insert(i)?;
    }

    let raw_faces: Vec<[usize; 3]> = builder
        .faces
        .iter()
        .zip(&builder.alive)
        .filter(|(_, &al)| al)
        .map(|(f, _)| *f)
        .collect();
    let canon = canonicalize_coplanar(points, raw_faces, tol)?;
    let poly = compact(points, canon)?;
    poly.validate(tol)?;
    Ok(poly)
}

/// Merges coplanar adjacent faces and re-fans each merged facet from its
/// lowest vertex id.
fn canonicalize_coplanar(
    points: &[Point3],
    faces: Vec<[usize; 3]>,
    tol: Tolerance,
) -> Result<Vec<[usize; 3]>> {
    let nf = faces.len();
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            owner.insert((f[k], f[(k + 1) % 3]), fi);
        }
    }
    // Union-find over faces; merge across flat dihedrals.
    let mut parent: Vec<usize> = (0..nf).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            if let Some(&g) = owner.get(&(b, a)) {
                if g <= fi {
                    continue;
                }
                let opp = faces[g]
                    .into_iter()
                    .find(|&x| x != a && x != b)
                    .expect("shared edge");
                let s = orientation3d(points[f[0]], points[f[1]], points[f[2]], points[opp], tol)?;
                if s == 0 {
                    let (ra, rb) = (find(&mut parent, fi), find(&mut parent, g));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for fi in 0..nf {
        let r = find(&mut parent, fi);
        groups.entry(r).or_default().push(fi);
    }
    let mut out = Vec::with_capacity(nf);
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();
    for root in roots {
        let members = &groups[&root];
        if members.len() == 1 {
            out.push(faces[members[0]]);
            continue;
        }
        // Boundary cycle of the merged facet: directed edges whose twin is
        // outside the group. Interior vertices (non-extreme points swallowed
        // by the facet) drop out here.
        let group: std::collections::HashSet<usize> = members.iter().copied().collect();
        let mut next: HashMap<usize, usize> = HashMap::new();
        for &fi in members {
            let f = faces[fi];
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                let twin = owner.get(&(b, a));
                if twin.map_or(true, |g| !group.contains(g)) {
                    if next.insert(a, b).is_some() {
                        return Err(Error::GeneralPosition(
                            "coplanar facet boundary is not a simple cycle".into(),
                        ));
                    }
                }
            }
        }
        let &start = next.keys().min().expect("nonempty boundary");
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            cycle.push(cur);
            cur = next[&cur];
            if cycle.len() > next.len() {
                return Err(Error::GeneralPosition(
                    "coplanar facet boundary does not close".into(),
                ));
            }
        }
        if cycle.len() != next.len() || cycle.len() < 3 {
            return Err(Error::GeneralPosition(
                "coplanar facet boundary has multiple loops".into(),
            ));
        }
        // Fan from the lowest vertex id (cycle starts there by choice of
        // `start`, which is the minimum key).
        for w in 1..cycle.len() - 1 {
            out.push([cycle[0], cycle[w], cycle[w + 1]]);
        }
    }
    Ok(out)
}

fn compact(points: &[Point3], faces: Vec<[usize; 3]>) -> Result<Polyhedron> {
    let mut used: Vec<usize> = faces.iter().flat_map(|f| f.iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    let remap: HashMap<usize, u32> = used
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new as u32))
        .collect();
    let vertices: Vec<Point3> = used.iter().map(|&i| points[i]).collect();
    let faces: Vec<[u32; 3]> = faces
        .iter()
        .map(|f| [remap[&f[0]], remap[&f[1]], remap[&f[2]]])
        .collect();

    let mut edge_map: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    let mut vertex_faces = vec![Vec::new(); vertices.len()];
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            let key = if a < b { (a, b) } else { (b, a) };
            edge_map.entry(key).or_default().push(fi as u32);
            vertex_faces[f[k] as usize].push(fi as u32);
        }
    }
    let mut edges: Vec<(u32, u32)> = edge_map.keys().copied().collect();
    edges.sort_unstable();
    let mut edge_faces = Vec::with_capacity(edges.len());
    for &e in &edges {
        let fs = &edge_map[&e];
        if fs.len() != 2 {
            return Err(Error::Dimension(format!(
                "edge {e:?} shared by {} faces",
                fs.len()
            )));
        }
        edge_faces.push([fs[0], fs[1]]);
    }
    Ok(Polyhedron {
        vertices,
        input_indices: used,
        faces,
        edges,
        edge_faces,
        vertex_faces,
    })
}

/// Checks the structural assumptions of a polyhedron and reports findings;
/// never fails, callers inspect the report.
pub fn validate_assumptions(
    poly: &Polyhedron,
    sphere_radius: Option<f64>,
    shell: Option<(f64, f64)>,
    tol: Tolerance,
) -> Result<AssumptionReport> {
    let pts = poly.vertices();
    let origin = Point3::new(0.0, 0.0, 0.0);

    // Flat dihedrals: four coplanar hull vertices spanning adjacent faces.
    let mut general_position = true;
    let mut coplanar_witness = None;
    for (ei, &(a, b)) in poly.edges().iter().enumerate() {
        let [f0, f1] = poly.edge_faces[ei];
        let fa = poly.faces()[f0 as usize];
        let opp = poly.faces()[f1 as usize]
            .into_iter()
            .find(|&x| x != a && x != b)
            .expect("adjacent face shares edge");
        let s = orientation3d(
            pts[fa[0] as usize],
            pts[fa[1] as usize],
            pts[fa[2] as usize],
            pts[opp as usize],
            tol,
        )?;
        if s == 0 {
            general_position = false;
            let own = fa
                .into_iter()
                .find(|&x| x != a && x != b)
                .expect("face has a vertex off the edge");
            coplanar_witness = Some([a, b, own, opp]);
            break;
        }
    }

    let mut no_origin_plane = true;
    let mut origin_plane_witness = None;
    let mut contains_origin = true;
    let mut min_plane_dist = f64::INFINITY;
    for (fi, f) in poly.faces().iter().enumerate() {
        let (a, b, c) = (pts[f[0] as usize], pts[f[1] as usize], pts[f[2] as usize]);
        let s = orientation3d(a, b, c, origin, tol)?;
        if s == 0 && no_origin_plane {
            no_origin_plane = false;
            origin_plane_witness = Some(fi as u32);
        }
        if s >= 0 {
            contains_origin = false;
        }
        // Signed distance from origin to the face plane, positive inside.
        let n = (b - a).cross(c - a);
        let nn = n.norm();
        if nn > 0.0 {
            min_plane_dist = min_plane_dist.min(-n.dot(origin - a) / nn);
        }
    }

    let on_sphere = sphere_radius.map(|radius| {
        let max_deviation = pts
            .iter()
            .map(|v| (v.norm() - radius).abs())
            .fold(0.0, f64::max);
        OnSphereCheck {
            radius,
            max_deviation,
            ok: max_deviation <= tol.band(radius),
        }
    });

    let mut min_face_angle = f64::INFINITY;
    for f in poly.faces() {
        let (a, b, c) = (pts[f[0] as usize], pts[f[1] as usize], pts[f[2] as usize]);
        min_face_angle = min_face_angle
            .min(angle_at3(a, b, c)?)
            .min(angle_at3(b, c, a)?)
            .min(angle_at3(c, a, b)?);
    }

    let max_norm = pts.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let shell_fit = (min_plane_dist, max_norm);
    let shell = shell.map(|(inner, outer)| ShellCheck {
        inner,
        outer,
        ok: contains_origin
            && min_plane_dist >= inner - tol.band(inner)
            && max_norm <= outer + tol.band(outer),
    });

    Ok(AssumptionReport {
        general_position,
        coplanar_witness,
        no_face_plane_through_origin: no_origin_plane,
        origin_plane_witness,
        on_sphere,
        min_face_angle,
        shell_fit,
        shell,
        contains_origin,
    })
}
