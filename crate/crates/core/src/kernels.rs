//! Kernel and measure representations of linear and Minkowski diversities,
//! with the constructive conversions between them.
//!
//! A kernel is a convex body given as an H-polytope `K = {y : vℓ·y ≤ bℓ}`
//! with the origin interior (all `bℓ > 0`). A discrete spherical measure is
//! a finite list of weighted unit atoms balancing to zero, `Σ mℓuℓ = 0`; it
//! induces the linear semidiversity `A ↦ Σ mℓ h_A(uℓ)`. When the measure's
//! support is affinely independent (the extremal case), the two pictures
//! carry the same diversity and convert constructively in both directions:
//!
//! * measure → kernel: `K = {y : (m·uℓ)·y ≤ 1}` with `m = Σmℓ`;
//! * kernel → measure: rescale normals to offset one, solve the unique
//!   affine combination `Σ cℓvℓ = 0, Σcℓ = 1`, and set `uℓ = vℓ/|vℓ|`,
//!   `mℓ = cℓ|vℓ|`.

use serde::{Deserialize, Serialize};

use crate::geom::{PointSet, Vector};
use crate::lp::in_convex_hull;
use crate::numerics::{gauss_solve, is_affinely_independent};
use crate::{Error, Result};

/// `K = {y : normals[ℓ]·y ≤ offsets[ℓ] ∀ℓ}` with strictly positive offsets,
/// so the origin is interior. `K` may be unbounded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPolytope {
    pub normals: Vec<Vector>,
    pub offsets: Vec<f64>,
}

impl HPolytope {
    pub fn new(normals: Vec<Vector>, offsets: Vec<f64>) -> Result<Self> {
        let k = HPolytope { normals, offsets };
        k.validate()?;
        Ok(k)
    }

    pub fn dim(&self) -> usize {
        self.normals.first().map_or(0, Vector::dim)
    }

    pub fn validate(&self) -> Result<()> {
        if self.normals.is_empty() {
            return Err(Error::InvalidKernel("kernel needs at least one row".into()));
        }
        if self.normals.len() != self.offsets.len() {
            return Err(Error::InvalidKernel(format!(
                "{} normals but {} offsets",
                self.normals.len(),
                self.offsets.len()
            )));
        }
        let dim = self.dim();
        for (i, v) in self.normals.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::InvalidKernel(format!(
                    "normal {i} has dimension {}, expected {dim}",
                    v.dim()
                )));
            }
            if v.0.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite);
            }
            if v.norm() <= 1e-300 {
                return Err(Error::InvalidKernel(format!("normal {i} is zero")));
            }
        }
        for (i, &b) in self.offsets.iter().enumerate() {
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::InvalidKernel(format!(
                    "offset {i} is {b}, must be positive"
                )));
            }
        }
        Ok(())
    }
}

/// A weighted unit direction of a discrete spherical measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub u: Vector,
    pub m: f64,
}

/// Finite balanced measure on the unit sphere: `‖uℓ‖ = 1`, `mℓ > 0`,
/// `Σ mℓuℓ = 0`. Induces the linear semidiversity `A ↦ Σ mℓ h_A(uℓ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteSphericalMeasure {
    pub atoms: Vec<Atom>,
}

/// One invariant violation found by [`validate_measure`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum MeasureViolation {
    /// `‖u‖` differs from 1 by more than 1e-10.
    NonUnitAtom { index: usize, norm: f64 },
    NonPositiveMass { index: usize, mass: f64 },
    /// `‖Σ mℓuℓ‖` exceeds `1e-9 · Σ mℓ`.
    Imbalance { magnitude: f64 },
}

impl DiscreteSphericalMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        let nu = DiscreteSphericalMeasure { atoms };
        nu.validate()?;
        Ok(nu)
    }

    pub fn dim(&self) -> usize {
        self.atoms.first().map_or(0, |a| a.u.dim())
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.m).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let violations = validate_measure(self);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidMeasure(format!("{violations:?}")))
        }
    }
}

/// Diagnostic validation: reports every violated measure invariant with its
/// magnitude instead of failing on the first.
pub fn validate_measure(nu: &DiscreteSphericalMeasure) -> Vec<MeasureViolation> {
    let mut out = Vec::new();
    if nu.atoms.is_empty() {
        return out;
    }
    let dim = nu.dim();
    for (i, a) in nu.atoms.iter().enumerate() {
        let norm = a.u.norm();
        if a.u.dim() != dim || (norm - 1.0).abs() > 1e-10 || !norm.is_finite() {
            out.push(MeasureViolation::NonUnitAtom { index: i, norm });
        }
        if !(a.m > 0.0) || !a.m.is_finite() {
            out.push(MeasureViolation::NonPositiveMass { index: i, mass: a.m });
        }
    }
    let mut sum = Vector::zeros(dim);
    for a in &nu.atoms {
        if a.u.dim() == dim {
            sum = sum.add(&a.u.scale(a.m));
        }
    }
    let total: f64 = nu.atoms.iter().map(|a| a.m.abs()).sum();
    let magnitude = sum.norm();
    if magnitude > 1e-9 * total {
        out.push(MeasureViolation::Imbalance { magnitude });
    }
    out
}

/// The Lemma's closed-form data: affinely independent `normals` with
/// nonnegative `weights` summing to 1 and `Σ cℓvℓ = 0`. The induced kernel
/// is `{y : vℓ·y ≤ 1}` and the diversity is `A ↦ Σ cℓ h_A(vℓ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexKernelSpec {
    pub normals: Vec<Vector>,
    pub weights: Vec<f64>,
}

impl SimplexKernelSpec {
    pub fn new(normals: Vec<Vector>, weights: Vec<f64>) -> Result<Self> {
        let s = SimplexKernelSpec { normals, weights };
        s.validate()?;
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.normals.first().map_or(0, Vector::dim)
    }

    pub fn validate(&self) -> Result<()> {
        if self.normals.is_empty() || self.normals.len() != self.weights.len() {
            return Err(Error::InvalidKernel(
                "simplex spec needs equally many normals and weights, at least one".into(),
            ));
        }
        let dim = self.dim();
        if self.normals.iter().any(|v| v.dim() != dim) {
            return Err(Error::InvalidKernel(
                "simplex spec normals have mixed dimensions".into(),
            ));
        }
        if !is_affinely_independent(&self.normals) {
            return Err(Error::NotExtremal(
                "simplex spec normals are affinely dependent".into(),
            ));
        }
        let sum_w: f64 = self.weights.iter().sum();
        if self.weights.iter().any(|&c| !(c >= -1e-12) || !c.is_finite())
            || (sum_w - 1.0).abs() > 1e-9
        {
            return Err(Error::InvalidKernel(format!(
                "weights must be nonnegative and sum to 1, got sum {sum_w}"
            )));
        }
        let mut bal = Vector::zeros(dim);
        for (v, &c) in self.normals.iter().zip(&self.weights) {
            bal = bal.add(&v.scale(c));
        }
        if bal.norm() > 1e-9 {
            return Err(Error::InvalidKernel(format!(
                "weighted normals must balance to zero, residual {}",
                bal.norm()
            )));
        }
        Ok(())
    }

    /// The kernel `{y : vℓ·y ≤ 1}` the closed form evaluates.
    pub fn kernel(&self) -> HPolytope {
        HPolytope {
            normals: self.normals.clone(),
            offsets: vec![1.0; self.normals.len()],
        }
    }
}

/// The measure `Σᵢ (δ_{eᵢ} + δ_{−eᵢ})` inducing the ℓ1 diversity on ℝᵏ.
pub fn l1_measure(k: usize) -> Result<DiscreteSphericalMeasure> {
    if k == 0 {
        return Err(Error::EmptyInput("l1 measure needs dimension at least 1"));
    }
    let mut atoms = Vec::with_capacity(2 * k);
    for i in 0..k {
        atoms.push(Atom {
            u: Vector::unit(k, i),
            m: 1.0,
        });
        atoms.push(Atom {
            u: Vector::unit(k, i).neg(),
            m: 1.0,
        });
    }
    Ok(DiscreteSphericalMeasure { atoms })
}

/// Extremal measure → kernel: `K = {y : (m·uℓ)·y ≤ 1}` with `m` the total
/// mass. The Minkowski diversity of `K` equals the measure's linear
/// diversity exactly when the support is affinely independent, which is
/// required here.
pub fn kernel_from_measure(nu: &DiscreteSphericalMeasure) -> Result<HPolytope> {
    nu.validate()?;
    if nu.atoms.is_empty() {
        return Err(Error::EmptyInput("measure has no atoms"));
    }
    let support: Vec<Vector> = nu.atoms.iter().map(|a| a.u.clone()).collect();
    if !is_affinely_independent(&support) {
        return Err(Error::NotExtremal(
            "measure support is affinely dependent".into(),
        ));
    }
    let m = nu.total_mass();
    let normals = support.iter().map(|u| u.scale(m)).collect();
    Ok(HPolytope {
        normals,
        offsets: vec![1.0; nu.atoms.len()],
    })
}

/// Kernel → extremal measure. Normals are rescaled to offset one; they must
/// be affinely independent with the origin in their convex hull (otherwise
/// the kernel has an unbounded slice through the origin's span and is not a
/// simplex in that slice). The affine combination of zero is then unique:
/// its weights give the masses `mℓ = cℓ|vℓ|` on atoms `uℓ = vℓ/|vℓ|`.
pub fn measure_from_simplex_kernel(k: &HPolytope) -> Result<DiscreteSphericalMeasure> {
    k.validate()?;
    let dim = k.dim();
    let rescaled: Vec<Vector> = k
        .normals
        .iter()
        .zip(&k.offsets)
        .map(|(v, &b)| v.scale(1.0 / b))
        .collect();
    if !is_affinely_independent(&rescaled) {
        return Err(Error::NotExtremal(
            "kernel normals are affinely dependent".into(),
        ));
    }
    let hull_points = PointSet::new(dim, rescaled.clone())?;
    if !in_convex_hull(&Vector::zeros(dim), &hull_points, 1e-9)? {
        return Err(Error::UnboundedSlice);
    }
    let l = rescaled.len();
    // Least-squares normal equations for the (k+1)×L system [V; 1ᵀ]c = [0; 1];
    // full column rank by affine independence, so the solution is unique.
    let a_row = |r: usize, c: usize| -> f64 {
        if r < dim {
            rescaled[c].0[r]
        } else {
            1.0
        }
    };
    let mut sys = vec![vec![0.0; l + 1]; l];
    for i in 0..l {
        for j in 0..l {
            sys[i][j] = (0..=dim).map(|r| a_row(r, i) * a_row(r, j)).sum();
        }
        // rhs is Aᵀb with b = (0,…,0,1)
        sys[i][l] = a_row(dim, i);
    }
    gauss_solve(&mut sys, l);
    let c: Vec<f64> = (0..l).map(|i| sys[i][l]).collect();
    // Defensive residual check on the original system.
    for r in 0..=dim {
        let lhs: f64 = (0..l).map(|j| a_row(r, j) * c[j]).sum();
        let rhs = if r < dim { 0.0 } else { 1.0 };
        if (lhs - rhs).abs() > 1e-7 {
            return Err(Error::NotExtremal(format!(
                "affine combination solve residual {} at row {r}",
                (lhs - rhs).abs()
            )));
        }
    }
    if c.iter().any(|&ci| ci < -1e-7) {
        return Err(Error::UnboundedSlice);
    }
    let mut atoms = Vec::with_capacity(l);
    for (v, &ci) in rescaled.iter().zip(&c) {
        if ci <= 1e-12 {
            // zero-weight normals carry no mass; dropping them changes no value
            continue;
        }
        let norm = v.norm();
        atoms.push(Atom {
            u: v.scale(1.0 / norm),
            m: ci * norm,
        });
    }
    DiscreteSphericalMeasure::new(atoms)
}
