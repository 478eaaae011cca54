//! Dense numerical kernels: symmetric eigensolver, Gram–Schmidt bases,
//! sphere sampling, and affine-independence tests.
//!
//! The eigensolver is a cyclic Jacobi iteration. The matrices it sees here are
//! small (subsets of a ground set of at most a dozen points, so at most a few
//! dozen rows), where Jacobi's unconditional stability and simplicity beat
//! anything fancier.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::geom::Vector;
use crate::{Error, Result};

/// Tolerance on pivot magnitude when deciding affine independence.
pub const AFFINE_RANK_TOL: f64 = 1e-9;

/// Tolerance below which a Gram–Schmidt residual counts as dependent.
pub const BASIS_RANK_TOL: f64 = 1e-10;

/// A dense symmetric matrix stored as full rows.
#[derive(Clone, Debug)]
pub struct SymmetricMatrix {
    pub n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymmetricMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i,j)` and `(j,i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// Quadratic form `xᵀ M x`.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            let mut row = 0.0;
            for j in 0..self.n {
                row += self.get(i, j) * x[j];
            }
            s += x[i] * row;
        }
        s
    }

    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }
}

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
/// `vectors[c]` is the unit eigenvector for `values[c]`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi eigensolver. Sweeps rotate away every off-diagonal entry in
/// turn until all are below `1e-14 · max(1, max|M|)`.
pub fn jacobi_eigen(m: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = m.n;
    if n == 0 {
        return Ok(EigenDecomposition {
            values: vec![],
            vectors: vec![],
        });
    }
    let mut a = m.clone();
    // v holds the accumulated rotations, columns are eigenvectors.
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale = 1.0f64.max(m.max_abs());
    let stop = 1e-14 * scale;
    let max_sweeps = 100;
    for _ in 0..max_sweeps {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a.get(i, j).abs());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.abs() <= stop * 1e-2 {
                    continue;
                }
                // Classic stable rotation (Numerical Recipes form):
                // theta = (a_qq - a_pp) / (2 a_pq), t the smaller-magnitude root.
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a.get(p, p);
                let aqq = a.get(q, q);
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, arp - s * (arq + tau * arp));
                    a.set(r, q, arq + s * (arp - tau * arq));
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = vp - s * (vq + tau * vp);
                    row[q] = vq + s * (vp - tau * vq);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = order
        .iter()
        .map(|&c| (0..n).map(|r| v[r][c]).collect())
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

/// Orthonormal basis for the span of `vectors`, by modified Gram–Schmidt with
/// one re-orthogonalization pass. Vectors whose residual falls below
/// [`BASIS_RANK_TOL`] times their original norm (or absolutely for tiny
/// inputs) are treated as dependent and dropped.
pub fn orthonormal_basis(vectors: &[Vector]) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        let orig = v.norm().max(1.0);
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = w.dot(b);
                w = w.sub(&b.scale(c));
            }
        }
        if w.norm() > BASIS_RANK_TOL * orig {
            let unit = w.scale(1.0 / w.norm());
            basis.push(unit);
        }
    }
    basis
}

/// True when `v_0, …, v_j` are affinely independent, i.e. the differences
/// `v_1 - v_0, …, v_j - v_0` are linearly independent. Decided by Gaussian
/// elimination with partial pivoting at tolerance [`AFFINE_RANK_TOL`]
/// relative to the largest entry.
pub fn is_affinely_independent(points: &[Vector]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let dim = points[0].dim();
    let m = points.len() - 1;
    if m > dim {
        return false;
    }
    let mut rows: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.sub(&points[0]).0)
        .collect();
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |s, &v| s.max(v.abs()))
        .max(1.0);
    let mut col = 0;
    for r in 0..m {
        let mut pivot_row = None;
        while col < dim {
            let (best, best_val) = (r..m)
                .map(|i| (i, rows[i][col].abs()))
                .fold((r, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best_val > AFFINE_RANK_TOL * scale {
                pivot_row = Some(best);
                break;
            }
            col += 1;
        }
        let Some(p) = pivot_row else {
            return false;
        };
        rows.swap(r, p);
        let pv = rows[r][col];
        for i in (r + 1)..m {
            let f = rows[i][col] / pv;
            if f != 0.0 {
                for c in col..dim {
                    let sub = f * rows[r][c];
                    rows[i][c] -= sub;
                }
            }
        }
        col += 1;
    }
    true
}

/// In-place Gaussian elimination with partial pivoting on an augmented
/// `n × (n+1)` system; the solution lands in column `n`. Near-singular
/// pivots leave zero entries, so callers must guard conditioning themselves.
pub(crate) fn gauss_solve(m: &mut [Vec<f64>], n: usize) {
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
            .unwrap();
        m.swap(col, piv);
        let p = m[col][col];
        if p.abs() < 1e-300 {
            continue;
        }
        for r in 0..n {
            if r != col && m[r][col] != 0.0 {
                let f = m[r][col] / p;
                for c in col..=n {
                    let s = f * m[col][c];
                    m[r][c] -= s;
                }
            }
        }
    }
    for r in 0..n {
        let p = m[r][r];
        m[r][n] = if p.abs() < 1e-300 { 0.0 } else { m[r][n] / p };
    }
}

/// How directions on the unit sphere are generated for quadrature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SphereSampler {
    /// Independent uniform directions: normalized standard Gaussians,
    /// reproducible from the seed.
    UniformRandom { dim: usize, count: usize, seed: u64 },
    /// The `count` angles `2πj/count` on the unit circle. Exact for
    /// polygonal integrands up to symmetry; dimension is fixed at 2.
    #[serde(rename = "equiangular-2d")]
    Equiangular2d { count: usize },
}

impl SphereSampler {
    pub fn dim(&self) -> usize {
        match self {
            SphereSampler::UniformRandom { dim, .. } => *dim,
            SphereSampler::Equiangular2d { .. } => 2,
        }
    }

    pub fn count(&self) -> usize {
        match self {
            SphereSampler::UniformRandom { count, .. } => *count,
            SphereSampler::Equiangular2d { count } => *count,
        }
    }

    /// Generates the full list of unit directions.
    pub fn directions(&self) -> Result<Vec<Vector>> {
        match self {
            SphereSampler::UniformRandom { dim, count, seed } => {
                if *dim == 0 {
                    return Err(Error::EmptyInput("sampler dimension must be at least 1"));
                }
                if *count == 0 {
                    return Err(Error::DirectionsInsufficient);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let normal = StandardNormal;
                let mut dirs = Vec::with_capacity(*count);
                while dirs.len() < *count {
                    let g: Vec<f64> = (0..*dim).map(|_| normal.sample(&mut rng)).collect();
                    if let Some(u) = Vector(g).normalized() {
                        dirs.push(u);
                    }
                }
                Ok(dirs)
            }
            SphereSampler::Equiangular2d { count } => {
                if *count == 0 {
                    return Err(Error::DirectionsInsufficient);
                }
                Ok((0..*count)
                    .map(|j| {
                        let t = 2.0 * std::f64::consts::PI * (j as f64) / (*count as f64);
                        Vector(vec![t.cos(), t.sin()])
                    })
                    .collect())
            }
        }
    }
}
