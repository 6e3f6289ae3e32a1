use crate::{disk_mesh, Conductivity, DiskMesh, DtnError, MAX_MODES};
use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::{Mat, Side};
use field_core::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::{Read, Write};
use std::path::Path;

/// `L_{mn} = (1/2π)⟨Λe^{inθ}, e^{imθ}⟩`, `m, n ∈ −N_b..=N_b`.
#[derive(Clone, Debug, PartialEq)]
pub struct DtnMatrix {
    pub n_b: usize,
    /// Row-major, index `(m + N_b)(2N_b+1) + (n + N_b)`.
    pub entries: Vec<Complex64>,
    pub mesh_h: f64,
    /// Relative residual of the interior solves.
    pub tolerance: f64,
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    n_b: usize,
    mesh_h: f64,
    tolerance: f64,
}

const FORMAT: &str = "dtn-c64le-v1";

impl DtnMatrix {
    pub fn zeros(n_b: usize) -> Self {
        let d = 2 * n_b + 1;
        Self { n_b, entries: vec![Complex64::new(0.0, 0.0); d * d], mesh_h: 0.0, tolerance: 0.0 }
    }

    pub fn dim(&self) -> usize {
        2 * self.n_b + 1
    }

    fn idx(&self, m: i64, n: i64) -> usize {
        let b = self.n_b as i64;
        assert!(m.abs() <= b && n.abs() <= b, "mode ({m}, {n}) outside ±{b}");
        ((m + b) as usize) * self.dim() + (n + b) as usize
    }

    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        self.entries[self.idx(m, n)]
    }

    pub fn set(&mut self, m: i64, n: i64, v: Complex64) {
        let i = self.idx(m, n);
        self.entries[i] = v;
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖L − L*‖_F / ‖L‖_F`.
    pub fn hermitian_residual(&self) -> f64 {
        let b = self.n_b as i64;
        let mut s = 0.0;
        for m in -b..=b {
            for n in -b..=b {
                s += (self.get(m, n) - self.get(n, m).conj()).norm_sqr();
            }
        }
        s.sqrt() / self.frobenius()
    }

    /// Largest modulus in the `n = 0` row and column, relative to `‖L‖_F`.
    pub fn constant_mode_leak(&self) -> f64 {
        let b = self.n_b as i64;
        (-b..=b).map(|n| self.get(0, n).norm().max(self.get(n, 0).norm())).fold(0.0, f64::max) / self.frobenius()
    }

    /// `(Σ_{m≠n}|L_{mn}|²)^{1/2} / (Σ_n|L_{nn}|²)^{1/2}`.
    pub fn off_diagonal_ratio(&self) -> f64 {
        let b = self.n_b as i64;
        let (mut off, mut diag) = (0.0, 0.0);
        for m in -b..=b {
            for n in -b..=b {
                if m == n {
                    diag += self.get(m, n).norm_sqr();
                } else {
                    off += self.get(m, n).norm_sqr();
                }
            }
        }
        (off / diag).sqrt()
    }

    pub fn diagonal(&self) -> Vec<(i64, Complex64)> {
        let b = self.n_b as i64;
        (-b..=b).map(|n| (n, self.get(n, n))).collect()
    }

    pub fn write_diagonal_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["n", "re", "im"])?;
        for (n, v) in self.diagonal() {
            wr.write_record([n.to_string(), v.re.to_string(), v.im.to_string()])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// One JSON header line followed by the entries as little-endian `f64` pairs.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<(), DtnError> {
        let header = Header { format: FORMAT.into(), n_b: self.n_b, mesh_h: self.mesh_h, tolerance: self.tolerance };
        let line = serde_json::to_string(&header).map_err(|e| DtnError::Format(e.to_string()))?;
        w.write_all(line.as_bytes())?;
        w.write_all(b"\n")?;
        for v in &self.entries {
            w.write_all(&v.re.to_le_bytes())?;
            w.write_all(&v.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self, DtnError> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        let nl = bytes.iter().position(|b| *b == b'\n').ok_or_else(|| DtnError::Format("missing header line".into()))?;
        let header: Header = serde_json::from_slice(&bytes[..nl]).map_err(|e| DtnError::Format(e.to_string()))?;
        if header.format != FORMAT {
            return Err(DtnError::Format(format!("unknown format {}", header.format)));
        }
        if header.n_b > MAX_MODES {
            return Err(DtnError::InvalidModes(header.n_b));
        }
        let d = 2 * header.n_b + 1;
        let body = &bytes[nl + 1..];
        if body.len() != d * d * 16 {
            return Err(DtnError::Format(format!("expected {} entry bytes, found {}", d * d * 16, body.len())));
        }
        let f = |c: &[u8]| f64::from_le_bytes(c.try_into().expect("8-byte chunk"));
        let entries: Vec<Complex64> = body.chunks_exact(16).map(|c| Complex64::new(f(&c[..8]), f(&c[8..]))).collect();
        if entries.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(DtnError::Format("non-finite entry".into()));
        }
        Ok(Self { n_b: header.n_b, entries, mesh_h: header.mesh_h, tolerance: header.tolerance })
    }

    pub fn save(&self, path: &Path) -> Result<(), DtnError> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut f)?;
        f.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, DtnError> {
        Self::read_from(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

struct System {
    mesh: DiskMesh,
    /// Position of each node among the unknowns, `None` on the boundary.
    slot: Vec<Option<usize>>,
    interior: usize,
    /// Entries `(row, col, value)` of the full stiffness matrix.
    entries: Vec<(usize, usize, f64)>,
}

fn assemble(c: &Conductivity, mesh: DiskMesh) -> System {
    let is_b = mesh.is_boundary();
    let mut slot = vec![None; mesh.points.len()];
    let mut interior = 0;
    for (i, b) in is_b.iter().enumerate() {
        if !b {
            slot[i] = Some(interior);
            interior += 1;
        }
    }
    let entries = mesh
        .triangles
        .par_iter()
        .flat_map_iter(|t| {
            let p = t.map(|i| mesh.points[i]);
            let area2 = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]);
            let area = 0.5 * area2.abs();
            let cx = (p[0][0] + p[1][0] + p[2][0]) / 3.0;
            let cy = (p[0][1] + p[1][1] + p[2][1]) / 3.0;
            let gamma = c.value_at(cx, cy);
            // ∇φ_i = (y_j − y_k, x_k − x_j) / (2A) with (i, j, k) cyclic
            let grad: Vec<[f64; 2]> =
                (0..3).map(|i| [(p[(i + 1) % 3][1] - p[(i + 2) % 3][1]) / area2, (p[(i + 2) % 3][0] - p[(i + 1) % 3][0]) / area2]).collect();
            let t = *t;
            (0..9).map(move |ab| {
                let (a, b) = (ab / 3, ab % 3);
                (t[a], t[b], gamma * area * (grad[a][0] * grad[b][0] + grad[a][1] * grad[b][1]))
            })
        })
        .collect();
    System { mesh, slot, interior, entries }
}

// Dense and sparse kernels run single-threaded: their blocking depends on the
// thread count, which would make results depend on the worker pool size.
fn sequential_faer() {
    static ONCE: std::sync::Once = std::sync::Once::new();
    ONCE.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
}

/// Finite-element DtN matrix: boundary modes are extended `γ`-harmonically by
/// first-order elements and paired through the weak form.
pub fn dtn_matrix(c: &Conductivity, n_b: usize, mesh_h: f64) -> Result<DtnMatrix, DtnError> {
    sequential_faer();
    if n_b > MAX_MODES {
        return Err(DtnError::InvalidModes(n_b));
    }
    if let Some(feature) = c.min_feature() {
        if mesh_h > feature / 4.0 {
            return Err(DtnError::MeshTooCoarse { mesh_h, feature });
        }
    }
    let mesh = disk_mesh(mesh_h, &c.interfaces())?;
    let sys = assemble(c, mesh);
    let nb = sys.mesh.boundary.len();
    let mut bslot = vec![usize::MAX; sys.mesh.points.len()];
    for (i, &b) in sys.mesh.boundary.iter().enumerate() {
        bslot[b] = i;
    }
    let theta: Vec<f64> = sys.mesh.boundary.iter().map(|&b| sys.mesh.points[b][1].atan2(sys.mesh.points[b][0])).collect();
    // boundary data columns: 1, cos nθ, sin nθ
    let cols = 1 + 2 * n_b;
    let data = |b: usize, col: usize| -> f64 {
        if col == 0 {
            1.0
        } else {
            let n = ((col + 1) / 2) as f64;
            if col % 2 == 1 {
                (n * theta[b]).cos()
            } else {
                (n * theta[b]).sin()
            }
        }
    };
    let mut kii = Vec::new();
    let mut kib = Vec::new();
    let mut kbb = Vec::new();
    for &(r, s, v) in &sys.entries {
        match (sys.slot[r], sys.slot[s]) {
            (Some(a), Some(b)) => kii.push(Triplet::new(a, b, v)),
            (Some(a), None) => kib.push((a, bslot[s], v)),
            (None, Some(_)) => {}
            (None, None) => kbb.push((bslot[r], bslot[s], v)),
        }
    }
    let a = SparseColMat::<usize, f64>::try_new_from_triplets(sys.interior, sys.interior, &kii).map_err(|e| DtnError::SolverFailure(format!("{e:?}")))?;
    let llt = a.sp_cholesky(Side::Lower).map_err(|e| DtnError::SolverFailure(format!("{e:?}")))?;
    let mut rhs = Mat::<f64>::zeros(sys.interior, cols);
    for &(i, b, v) in &kib {
        for col in 0..cols {
            rhs[(i, col)] -= v * data(b, col);
        }
    }
    let u = llt.solve(&rhs);
    // relative residual of the interior solves
    let mut res = Mat::<f64>::zeros(sys.interior, cols);
    for t in &kii {
        for col in 0..cols {
            res[(t.row, col)] += t.val * u[(t.col, col)];
        }
    }
    let (mut rn, mut bn) = (0.0, 0.0);
    for i in 0..sys.interior {
        for col in 0..cols {
            rn += (res[(i, col)] - rhs[(i, col)]).powi(2);
            bn += rhs[(i, col)].powi(2);
        }
    }
    let tolerance = if bn > 0.0 { (rn / bn).sqrt() } else { 0.0 };
    // boundary flux q = K_BB g + K_BI u
    let mut q = Mat::<f64>::zeros(nb, cols);
    for &(b1, b2, v) in &kbb {
        for col in 0..cols {
            q[(b1, col)] += v * data(b2, col);
        }
    }
    for &(i, b, v) in &kib {
        for col in 0..cols {
            q[(b, col)] += v * u[(i, col)];
        }
    }
    // flux of e^{inθ}, n ≥ 0; negative modes by conjugation
    let flux = |n: i64, b: usize| -> Complex64 {
        let k = n.unsigned_abs() as usize;
        let v = if k == 0 { Complex64::new(q[(b, 0)], 0.0) } else { Complex64::new(q[(b, 2 * k - 1)], q[(b, 2 * k)]) };
        if n < 0 {
            v.conj()
        } else {
            v
        }
    };
    let mut out = DtnMatrix::zeros(n_b);
    out.mesh_h = mesh_h;
    out.tolerance = tolerance;
    let nbi = n_b as i64;
    for m in -nbi..=nbi {
        for n in -nbi..=nbi {
            let s: Complex64 = (0..nb).map(|b| Complex64::from_polar(1.0, -(m as f64) * theta[b]) * flux(n, b)).sum();
            out.set(m, n, s / (2.0 * PI));
        }
    }
    Ok(out)
}

/// Spectral norm of `W^{−1/2}(L₁ − L₂)W^{−1/2}`, `W = diag((1+n²)^{1/2})`.
pub fn dtn_distance(l1: &DtnMatrix, l2: &DtnMatrix) -> Result<f64, DtnError> {
    if l1.n_b != l2.n_b {
        return Err(DtnError::DimensionMismatch(l1.n_b, l2.n_b));
    }
    sequential_faer();
    let b = l1.n_b as i64;
    let d = l1.dim();
    let w = |n: i64| (1.0 + (n * n) as f64).powf(0.25);
    let m = Mat::<faer::c64>::from_fn(d, d, |i, j| {
        let (mi, nj) = (i as i64 - b, j as i64 - b);
        (l1.get(mi, nj) - l2.get(mi, nj)) / (w(mi) * w(nj))
    });
    let sv = m.singular_values().map_err(|e| DtnError::SolverFailure(format!("{e:?}")))?;
    Ok(sv.into_iter().fold(0.0, f64::max))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionReport {
    pub radius: f64,
    /// Distance of the DtN maps of `B(0, r)`.
    pub rho_inner: f64,
    /// Distance of the DtN maps of the unit disk.
    pub rho_outer: f64,
}

impl ExtensionReport {
    pub fn ratio(&self) -> f64 {
        if self.rho_inner == 0.0 {
            if self.rho_outer == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.rho_outer / self.rho_inner
        }
    }
}

/// Compares the DtN distance on `∂B(0, r)` with the one on `∂𝔻` for conductivities
/// equal to 1 outside `B(0, r)`. The map of `B(0, r)` is `(1/r)·Λ_𝔻[γ(r·)]` in the
/// angular basis.
pub fn extension_compare(c1: &Conductivity, c2: &Conductivity, r: f64, n_b: usize, mesh_h: f64) -> Result<ExtensionReport, DtnError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(DtnError::InvalidRadius(r));
    }
    let inner1 = dtn_matrix(&c1.scaled(r), n_b, mesh_h)?;
    let inner2 = dtn_matrix(&c2.scaled(r), n_b, mesh_h)?;
    let outer1 = dtn_matrix(c1, n_b, mesh_h)?;
    let outer2 = dtn_matrix(c2, n_b, mesh_h)?;
    Ok(ExtensionReport { radius: r, rho_inner: dtn_distance(&inner1, &inner2)? / r, rho_outer: dtn_distance(&outer1, &outer2)? })
}
