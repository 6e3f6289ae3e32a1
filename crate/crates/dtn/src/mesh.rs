use crate::DtnError;
use spade::{DelaunayTriangulation, Point2, Triangulation};
use std::f64::consts::PI;

/// Triangulation of the unit disk by concentric rings of nodes.
#[derive(Clone, Debug)]
pub struct DiskMesh {
    pub points: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    /// Boundary nodes in increasing angle.
    pub boundary: Vec<usize>,
    pub h: f64,
}

/// Radii of the node rings: uniform spacing `≈ h` between consecutive breakpoints
/// (origin, interfaces, boundary), halved over the outermost `4h`.
fn ring_radii(h: f64, interfaces: &[f64]) -> Vec<f64> {
    let mut breaks = vec![0.0];
    breaks.extend(interfaces.iter().copied().filter(|r| *r > 0.0 && *r < 1.0));
    breaks.push(1.0);
    breaks.sort_by(|a, b| a.total_cmp(b));
    breaks.dedup();
    let mut radii = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let fine = if b == 1.0 { (4.0 * h).min(0.5 * (b - a)) } else { 0.0 };
        let coarse_end = b - fine;
        let m = ((coarse_end - a) / h).ceil().max(1.0) as usize;
        radii.extend((1..=m).map(|i| a + (coarse_end - a) * i as f64 / m as f64));
        if fine > 0.0 {
            let mf = (2.0 * fine / h).ceil() as usize;
            radii.extend((1..=mf).map(|i| coarse_end + fine * i as f64 / mf as f64));
        }
    }
    radii
}

/// Nodes per ring: `M / 2^j` on `r ∈ (2^{−j−1}, 2^{−j}]` with `M` a multiple of 128,
/// so the node set is invariant under rotation by `2π·2^j/M` band by band.
fn ring_count(r: f64, h: f64) -> usize {
    let big_m = 128 * (2.0 * PI / (128.0 * h)).ceil() as usize;
    let mut count = big_m;
    let mut top = 1.0;
    while r <= 0.5 * top && count % 2 == 0 && count / 2 >= (2.0 * PI * r / h).ceil().max(8.0) as usize {
        count /= 2;
        top *= 0.5;
    }
    count
}

/// Delaunay mesh of the unit disk with node rings through every interface radius.
pub fn disk_mesh(h: f64, interfaces: &[f64]) -> Result<DiskMesh, DtnError> {
    if !(h > 0.0 && h <= 0.25) {
        return Err(DtnError::InvalidMesh(h));
    }
    let mut pts: Vec<[f64; 2]> = vec![[0.0, 0.0]];
    let mut boundary = Vec::new();
    let radii = ring_radii(h, interfaces);
    for (ring, &r) in radii.iter().enumerate() {
        let count = ring_count(r, h);
        let offset = if ring % 2 == 1 { PI / count as f64 } else { 0.0 };
        for i in 0..count {
            let t = 2.0 * PI * i as f64 / count as f64 + offset;
            if r == 1.0 {
                boundary.push(pts.len());
            }
            pts.push([r * t.cos(), r * t.sin()]);
        }
    }
    let mut tri: DelaunayTriangulation<Point2<f64>> = DelaunayTriangulation::new();
    let mut handle_of = Vec::with_capacity(pts.len());
    for p in &pts {
        let v = tri.insert(Point2::new(p[0], p[1])).map_err(|e| DtnError::SolverFailure(format!("triangulation: {e:?}")))?;
        handle_of.push(v.index());
    }
    if tri.num_vertices() != pts.len() {
        return Err(DtnError::SolverFailure("duplicate mesh nodes".into()));
    }
    // spade numbers vertices in insertion order; keep the map explicit anyway
    let mut node_of = vec![usize::MAX; pts.len()];
    for (i, h) in handle_of.iter().enumerate() {
        node_of[*h] = i;
    }
    let mut triangles: Vec<[usize; 3]> = tri
        .inner_faces()
        .map(|f| {
            let v = f.vertices();
            [node_of[v[0].fix().index()], node_of[v[1].fix().index()], node_of[v[2].fix().index()]]
        })
        .collect();
    triangles.sort_unstable();
    Ok(DiskMesh { points: pts, triangles, boundary, h })
}

impl DiskMesh {
    pub fn area(&self) -> f64 {
        self.triangles.iter().map(|t| self.signed_area(t).abs()).sum()
    }

    pub(crate) fn signed_area(&self, t: &[usize; 3]) -> f64 {
        let [a, b, c] = t.map(|i| self.points[i]);
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }

    pub fn is_boundary(&self) -> Vec<bool> {
        let mut out = vec![false; self.points.len()];
        for &b in &self.boundary {
            out[b] = true;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_the_polygon() {
        let m = disk_mesh(0.05, &[0.3]).unwrap();
        let nb = m.boundary.len() as f64;
        let polygon = 0.5 * nb * (2.0 * PI / nb).sin();
        assert!((m.area() - polygon).abs() < 1e-10, "{} vs {polygon}", m.area());
        assert!(m.triangles.iter().all(|t| m.signed_area(t).abs() > 1e-12));
        // the interface ring is present
        assert!(m.points.iter().any(|p| (p[0].hypot(p[1]) - 0.3).abs() < 1e-15));
        assert!(m.boundary.iter().all(|&b| (m.points[b][0].hypot(m.points[b][1]) - 1.0).abs() < 1e-15));
    }

    #[test]
    fn rejects_bad_spacing() {
        assert!(disk_mesh(0.0, &[]).is_err());
        assert!(disk_mesh(0.5, &[]).is_err());
    }
}
