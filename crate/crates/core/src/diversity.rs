//! The concrete diversities on ℝᵏ behind one spec type.
//!
//! A diversity assigns a nonnegative value to every finite point set,
//! vanishing on sets of size at most one. The variants here:
//!
//! * `diameter`: `max ‖a−b‖` over pairs, for ℓ1/ℓ2/ℓ∞;
//! * `l1`: `Σᵢ (maxᵢ − minᵢ)`, sum of coordinate ranges;
//! * `circumradius`: radius of the smallest enclosing Euclidean ball;
//! * `minkowski`: `min{λ ≥ 0 : A ⊆ λK + x}` for an H-polytope kernel `K`
//!   with the origin interior, solved as an LP over `(λ, x)`;
//! * `simplex-closed-form`: `Σ cℓ h_A(vℓ)` for affinely independent `vℓ`
//!   with `Σcℓvℓ = 0`, `Σcℓ = 1`, `cℓ ≥ 0`; equals the Minkowski
//!   diversity of `{y : vℓ·y ≤ 1}` (the simplex LP reduced to its dual
//!   closed form);
//! * `discrete-linear`: `Σ mℓ h_A(uℓ)` for a balanced measure on the
//!   sphere, the general linear (semi)diversity at discrete level;
//! * `mean-width`: `(1/ω_k)∫ w_A dν ≈ mean over sampled directions of
//!   w_A(x) = h_A(x) + h_A(−x)`; evaluating the symmetrized width rather
//!   than `2·h_A` makes singletons exact zeros for every sampler;
//! * `mean-width-p`: `(1/ω_k)[∫ w_A^p dν]^{1/p} = ω_k^{1/p−1}·mean(w^p)^{1/p}`
//!   (the verbatim normalization; dimensionally inconsistent with
//!   `mean-width` for p ≠ 1, but implemented as stated);
//! * `zonotope`: minimum total segment length of a zonotope with fixed unit
//!   directions containing `A` (an upper bound for the direction-free
//!   zonotope diversity), as an LP;
//! * `weighted-sum`, `max-of`: positive combinations and maxima, closed
//!   under linearity respectively sublinearity.

use serde::{Deserialize, Serialize};

use crate::geom::{PointSet, Vector};
use crate::kernels::{DiscreteSphericalMeasure, HPolytope, SimplexKernelSpec};
use crate::lp::{solve, LpOutcome, LpProblem};
use crate::numerics::{orthonormal_basis, SphereSampler};
use crate::welzl::smallest_enclosing_ball;
use crate::{Error, Result};

/// Norm choice for the diameter diversity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Norm {
    L1,
    L2,
    Linf,
}

impl Norm {
    pub fn dist(&self, a: &Vector, b: &Vector) -> f64 {
        match self {
            Norm::L1 => a.0.iter().zip(&b.0).map(|(x, y)| (x - y).abs()).sum(),
            Norm::L2 => a.sub(b).norm(),
            Norm::Linf => a
                .0
                .iter()
                .zip(&b.0)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
        }
    }
}

/// One summand of a weighted-sum diversity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedTerm {
    pub weight: f64,
    pub spec: DiversitySpec,
}

/// A diversity on ℝᵏ, serializable with a `"type"` discriminator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum DiversitySpec {
    Diameter { norm: Norm },
    L1,
    Circumradius,
    Minkowski { kernel: HPolytope },
    SimplexClosedForm { spec: SimplexKernelSpec },
    DiscreteLinear { measure: DiscreteSphericalMeasure },
    MeanWidth { sampler: SphereSampler },
    MeanWidthP { p: f64, sampler: SphereSampler },
    Zonotope { directions: Vec<Vector> },
    WeightedSum { terms: Vec<WeightedTerm> },
    MaxOf { specs: Vec<DiversitySpec> },
}

impl DiversitySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            DiversitySpec::Diameter { .. } | DiversitySpec::L1 | DiversitySpec::Circumradius => {
                Ok(())
            }
            DiversitySpec::Minkowski { kernel } => kernel.validate(),
            DiversitySpec::SimplexClosedForm { spec } => spec.validate(),
            DiversitySpec::DiscreteLinear { measure } => measure.validate(),
            DiversitySpec::MeanWidth { sampler } => {
                if sampler.count() == 0 {
                    Err(Error::DirectionsInsufficient)
                } else {
                    Ok(())
                }
            }
            DiversitySpec::MeanWidthP { p, sampler } => {
                if !(*p >= 1.0) || !p.is_finite() {
                    return Err(Error::InvalidSpec(format!("p must be at least 1, got {p}")));
                }
                if sampler.count() == 0 {
                    return Err(Error::DirectionsInsufficient);
                }
                Ok(())
            }
            DiversitySpec::Zonotope { directions } => validate_directions(directions),
            DiversitySpec::WeightedSum { terms } => {
                if terms.is_empty() {
                    return Err(Error::EmptyInput("weighted sum needs at least one term"));
                }
                for t in terms {
                    if !(t.weight > 0.0) || !t.weight.is_finite() {
                        return Err(Error::InvalidSpec(format!(
                            "weights must be positive, got {}",
                            t.weight
                        )));
                    }
                    t.spec.validate()?;
                }
                Ok(())
            }
            DiversitySpec::MaxOf { specs } => {
                if specs.is_empty() {
                    return Err(Error::EmptyInput("max-of needs at least one spec"));
                }
                specs.iter().try_for_each(DiversitySpec::validate)
            }
        }
    }

    /// The dimension the payload pins down, when it pins one down at all.
    pub fn required_dim(&self) -> Option<usize> {
        match self {
            DiversitySpec::Diameter { .. } | DiversitySpec::L1 | DiversitySpec::Circumradius => {
                None
            }
            DiversitySpec::Minkowski { kernel } => Some(kernel.dim()),
            DiversitySpec::SimplexClosedForm { spec } => Some(spec.dim()),
            DiversitySpec::DiscreteLinear { measure } => {
                measure.atoms.first().map(|a| a.u.dim())
            }
            DiversitySpec::MeanWidth { sampler } | DiversitySpec::MeanWidthP { sampler, .. } => {
                Some(sampler.dim())
            }
            DiversitySpec::Zonotope { directions } => directions.first().map(Vector::dim),
            DiversitySpec::WeightedSum { terms } => {
                terms.iter().find_map(|t| t.spec.required_dim())
            }
            DiversitySpec::MaxOf { specs } => specs.iter().find_map(DiversitySpec::required_dim),
        }
    }

    pub fn eval(&self, a: &PointSet) -> Result<f64> {
        eval(self, a)
    }
}

fn validate_directions(directions: &[Vector]) -> Result<()> {
    if directions.is_empty() {
        return Err(Error::EmptyInput("zonotope needs at least one direction"));
    }
    let dim = directions[0].dim();
    for (i, u) in directions.iter().enumerate() {
        if u.dim() != dim {
            return Err(Error::InvalidSpec(format!(
                "direction {i} has dimension {}, expected {dim}",
                u.dim()
            )));
        }
        if (u.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSpec(format!(
                "direction {i} has norm {}, must be 1",
                u.norm()
            )));
        }
    }
    Ok(())
}

/// Evaluates `spec` on `a`. Every variant returns exactly 0 on sets of size
/// at most one.
pub fn eval(spec: &DiversitySpec, a: &PointSet) -> Result<f64> {
    spec.validate()?;
    if let Some(d) = spec.required_dim() {
        if d != a.dim {
            return Err(Error::DimMismatch {
                expected: d,
                got: a.dim,
            });
        }
    }
    match spec {
        DiversitySpec::Diameter { norm } => diameter_eval(a, *norm),
        DiversitySpec::L1 => l1_eval(a),
        DiversitySpec::Circumradius => circumradius_eval(a),
        DiversitySpec::Minkowski { kernel } => minkowski_eval(a, kernel),
        DiversitySpec::SimplexClosedForm { spec } => simplex_closed_form_eval(a, spec),
        DiversitySpec::DiscreteLinear { measure } => discrete_linear_eval(a, measure),
        DiversitySpec::MeanWidth { sampler } => mean_width_eval(a, sampler),
        DiversitySpec::MeanWidthP { p, sampler } => mean_width_p_eval(a, *p, sampler),
        DiversitySpec::Zonotope { directions } => zonotope_eval(a, directions),
        DiversitySpec::WeightedSum { terms } => weighted_sum_eval(a, terms),
        DiversitySpec::MaxOf { specs } => max_eval(a, specs),
    }
}

/// `max_{a,b ∈ A} ‖a − b‖` in the chosen norm.
pub fn diameter_eval(a: &PointSet, norm: Norm) -> Result<f64> {
    if a.len() <= 1 {
        return Ok(0.0);
    }
    let mut best = 0.0f64;
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            best = best.max(norm.dist(&a.points[i], &a.points[j]));
        }
    }
    Ok(best)
}

/// `Σᵢ (max_a aᵢ − min_a aᵢ)`: the ℓ1 diversity, sum of coordinate ranges.
pub fn l1_eval(a: &PointSet) -> Result<f64> {
    if a.len() <= 1 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for c in 0..a.dim {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in &a.points {
            lo = lo.min(p.0[c]);
            hi = hi.max(p.0[c]);
        }
        total += hi - lo;
    }
    Ok(total)
}

/// Radius of the smallest enclosing Euclidean ball (Welzl).
pub fn circumradius_eval(a: &PointSet) -> Result<f64> {
    if a.len() <= 1 {
        return Ok(0.0);
    }
    let b = smallest_enclosing_ball(&a.points, a.dim);
    Ok(b.radius2.max(0.0).sqrt())
}

/// Generalized circumradius `min{λ ≥ 0 : A ⊆ λK + x}` for an H-polytope
/// kernel, solved as the LP `min λ` s.t. `h_A(vℓ) − vℓ·x ≤ λbℓ`, `λ ≥ 0`.
/// Unbounded kernels yield legitimate semidiversity values (possibly 0 on
/// multi-point sets); the LP itself is always feasible and bounded.
pub fn minkowski_eval(a: &PointSet, kernel: &HPolytope) -> Result<f64> {
    kernel.validate()?;
    if kernel.dim() != a.dim {
        return Err(Error::DimMismatch {
            expected: kernel.dim(),
            got: a.dim,
        });
    }
    if a.len() <= 1 {
        return Ok(0.0);
    }
    let k = a.dim;
    let mut ineq_lhs = Vec::with_capacity(kernel.normals.len() + 1);
    let mut ineq_rhs = Vec::with_capacity(kernel.normals.len() + 1);
    for (v, &b) in kernel.normals.iter().zip(&kernel.offsets) {
        let h = a.support(v)?;
        let mut row = Vec::with_capacity(k + 1);
        row.push(-b);
        row.extend(v.0.iter().map(|c| -c));
        ineq_lhs.push(row);
        ineq_rhs.push(-h);
    }
    let mut lam_row = vec![0.0; k + 1];
    lam_row[0] = -1.0;
    ineq_lhs.push(lam_row);
    ineq_rhs.push(0.0);
    let mut objective = vec![0.0; k + 1];
    objective[0] = 1.0;
    let p = LpProblem {
        objective,
        ineq_lhs,
        ineq_rhs,
        ..Default::default()
    };
    match solve(&p)? {
        LpOutcome::Optimal { value, .. } => Ok(value.max(0.0)),
        other => Err(Error::MalformedProgram(format!(
            "containment program must have an optimum, got {other:?}"
        ))),
    }
}

/// `Σℓ cℓ h_A(vℓ)`: the closed form of the simplex-kernel Minkowski
/// semidiversity, no LP required.
pub fn simplex_closed_form_eval(a: &PointSet, spec: &SimplexKernelSpec) -> Result<f64> {
    spec.validate()?;
    if spec.dim() != a.dim {
        return Err(Error::DimMismatch {
            expected: spec.dim(),
            got: a.dim,
        });
    }
    if a.len() <= 1 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for (v, &c) in spec.normals.iter().zip(&spec.weights) {
        total += c * a.support(v)?;
    }
    Ok(total.max(0.0))
}

/// `Σℓ mℓ h_A(uℓ)`: the linear semidiversity of a balanced discrete measure.
pub fn discrete_linear_eval(a: &PointSet, nu: &DiscreteSphericalMeasure) -> Result<f64> {
    nu.validate()?;
    if a.len() <= 1 {
        return Ok(0.0);
    }
    if let Some(first) = nu.atoms.first() {
        if first.u.dim() != a.dim {
            return Err(Error::DimMismatch {
                expected: first.u.dim(),
                got: a.dim,
            });
        }
    }
    let mut total = 0.0;
    for atom in &nu.atoms {
        total += atom.m * a.support(&atom.u)?;
    }
    Ok(total.max(0.0))
}

/// Mean width `(1/ω_k)∫ w_A dν` by plain averaging of the symmetrized width
/// `w_A(x) = h_A(x) + h_A(−x)` over the sampler's directions. On a
/// negation-closed direction set (equiangular with even count) this equals
/// `2·mean(h_A)` exactly.
pub fn mean_width_eval(a: &PointSet, sampler: &SphereSampler) -> Result<f64> {
    if sampler.dim() != a.dim {
        return Err(Error::DimMismatch {
            expected: sampler.dim(),
            got: a.dim,
        });
    }
    if a.len() <= 1 {
        return Ok(0.0);
    }
    let dirs = sampler.directions()?;
    let mut total = 0.0;
    for x in &dirs {
        total += a.width(x)?;
    }
    Ok((total / dirs.len() as f64).max(0.0))
}

/// `δ_w^(p)(A) = (1/ω_k)[∫ w_A^p dν]^{1/p} = ω_k^{1/p−1}·mean(w^p)^{1/p}`,
/// the paper-exact normalization (coincides with [`mean_width_eval`] at
/// `p = 1`).
pub fn mean_width_p_eval(a: &PointSet, p: f64, sampler: &SphereSampler) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidSpec(format!("p must be at least 1, got {p}")));
    }
    if sampler.dim() != a.dim {
        return Err(Error::DimMismatch {
            expected: sampler.dim(),
            got: a.dim,
        });
    }
    if a.len() <= 1 {
        return Ok(0.0);
    }
    let dirs = sampler.directions()?;
    let mut total = 0.0;
    for x in &dirs {
        total += a.width(x)?.powf(p);
    }
    let mean = total / dirs.len() as f64;
    let omega = sphere_surface_measure(a.dim);
    Ok((omega.powf(1.0 / p - 1.0) * mean.powf(1.0 / p)).max(0.0))
}

/// Surface measure of the unit sphere `S^{k−1}` in ℝᵏ: `ω₁ = 2` (counting
/// measure on {±1}), `ω₂ = 2π`, and `ω_k = 2π·ω_{k−2}/(k−2)`.
pub fn sphere_surface_measure(k: usize) -> f64 {
    match k {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * std::f64::consts::PI,
        _ => 2.0 * std::f64::consts::PI * sphere_surface_measure(k - 2) / (k - 2) as f64,
    }
}

/// Minimum total segment length of a zonotope with the given unit directions
/// containing `A`: `min Σⱼtⱼ` s.t. `aᵢ = x + Σⱼ μᵢⱼuⱼ`, `0 ≤ μᵢⱼ ≤ tⱼ`.
/// An upper bound on the direction-free zonotope diversity, tight when the
/// optimal directions are included. Errors when the directions do not span
/// the affine hull of `A`.
pub fn zonotope_eval(a: &PointSet, directions: &[Vector]) -> Result<f64> {
    validate_directions(directions)?;
    if directions[0].dim() != a.dim {
        return Err(Error::DimMismatch {
            expected: directions[0].dim(),
            got: a.dim,
        });
    }
    if a.len() <= 1 {
        return Ok(0.0);
    }
    // Containment in a convex body only constrains extreme points, so in the
    // plane the LP shrinks to the hull vertices.
    let work = if a.dim == 2 {
        a.extreme_points_2d()
    } else {
        a.dedup()
    };
    if work.len() <= 1 {
        return Ok(0.0);
    }
    let k = a.dim;
    let n = work.len();
    let m = directions.len();
    // variables: x (k), μᵢⱼ (n·m, index k + i·m + j), tⱼ (m, index k + n·m + j)
    let nv = k + n * m + m;
    let mu = |i: usize, j: usize| k + i * m + j;
    let tv = |j: usize| k + n * m + j;
    let mut objective = vec![0.0; nv];
    for j in 0..m {
        objective[tv(j)] = 1.0;
    }
    let mut eq_lhs = Vec::with_capacity(n * k);
    let mut eq_rhs = Vec::with_capacity(n * k);
    for (i, pt) in work.points.iter().enumerate() {
        for c in 0..k {
            let mut row = vec![0.0; nv];
            row[c] = 1.0;
            for (j, u) in directions.iter().enumerate() {
                row[mu(i, j)] = u.0[c];
            }
            eq_lhs.push(row);
            eq_rhs.push(pt.0[c]);
        }
    }
    let mut ineq_lhs = Vec::with_capacity(2 * n * m);
    for i in 0..n {
        for j in 0..m {
            let mut upper = vec![0.0; nv];
            upper[mu(i, j)] = 1.0;
            upper[tv(j)] = -1.0;
            ineq_lhs.push(upper);
            let mut lower = vec![0.0; nv];
            lower[mu(i, j)] = -1.0;
            ineq_lhs.push(lower);
        }
    }
    let ineq_rhs = vec![0.0; ineq_lhs.len()];
    let p = LpProblem {
        objective,
        ineq_lhs,
        ineq_rhs,
        eq_lhs,
        eq_rhs,
    };
    match solve(&p)? {
        LpOutcome::Optimal { value, .. } => Ok(value.max(0.0)),
        LpOutcome::Infeasible => Err(Error::DirectionsInsufficient),
        LpOutcome::Unbounded => Err(Error::MalformedProgram(
            "zonotope length is bounded below by zero".into(),
        )),
    }
}

/// Multi-start heuristic around [`zonotope_eval`]: appends `extra` random
/// unit directions per restart and keeps the best (smallest) length found.
/// Extra directions only enlarge the feasible set, so the result never
/// exceeds the fixed-direction value.
pub fn zonotope_eval_augmented(
    a: &PointSet,
    directions: &[Vector],
    extra: usize,
    restarts: usize,
    seed: u64,
) -> Result<f64> {
    let mut best = zonotope_eval(a, directions)?;
    if extra == 0 {
        return Ok(best);
    }
    for r in 0..restarts {
        let sampler = SphereSampler::UniformRandom {
            dim: a.dim,
            count: extra,
            seed: seed.wrapping_add(r as u64),
        };
        let mut dirs = directions.to_vec();
        dirs.extend(sampler.directions()?);
        best = best.min(zonotope_eval(a, &dirs)?);
    }
    Ok(best)
}

/// `Σ wᵢ·δᵢ(A)` over positive weights.
pub fn weighted_sum_eval(a: &PointSet, terms: &[WeightedTerm]) -> Result<f64> {
    if terms.is_empty() {
        return Err(Error::EmptyInput("weighted sum needs at least one term"));
    }
    let mut total = 0.0;
    for t in terms {
        if !(t.weight > 0.0) || !t.weight.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "weights must be positive, got {}",
                t.weight
            )));
        }
        total += t.weight * eval(&t.spec, a)?;
    }
    Ok(total)
}

/// `max δᵢ(A)` over the listed specs.
pub fn max_eval(a: &PointSet, specs: &[DiversitySpec]) -> Result<f64> {
    if specs.is_empty() {
        return Err(Error::EmptyInput("max-of needs at least one spec"));
    }
    let mut best = 0.0f64;
    for s in specs {
        best = best.max(eval(s, a)?);
    }
    Ok(best)
}

/// Orthonormal bases of the null space `{x : uℓ·x = 0 ∀ℓ}` of a discrete
/// linear semidiversity, and of its complement, the span of the atoms.
#[derive(Clone, Debug)]
pub struct NullSpace {
    pub null_basis: Vec<Vector>,
    pub span_basis: Vec<Vector>,
}

impl NullSpace {
    /// Projects every point onto the span of the atoms. The measure's
    /// semidiversity is invariant under this projection.
    pub fn project(&self, a: &PointSet) -> PointSet {
        let points = a
            .points
            .iter()
            .map(|p| {
                let mut proj = Vector::zeros(a.dim);
                for b in &self.span_basis {
                    proj = proj.add(&b.scale(p.dot(b)));
                }
                proj
            })
            .collect();
        PointSet {
            dim: a.dim,
            points,
        }
    }
}

/// Null space of the semidiversity of `ν`: directions x with `δ({0,x}) = 0`,
/// which by the balance condition are exactly those orthogonal to every atom.
pub fn null_space(nu: &DiscreteSphericalMeasure) -> Result<NullSpace> {
    nu.validate()?;
    if nu.atoms.is_empty() {
        return Err(Error::EmptyInput("null space of an empty measure"));
    }
    let k = nu.dim();
    let dirs: Vec<Vector> = nu.atoms.iter().map(|a| a.u.clone()).collect();
    let span_basis = orthonormal_basis(&dirs);
    let mut full = span_basis.clone();
    let mut null_basis = Vec::new();
    for i in 0..k {
        let mut w = Vector::unit(k, i);
        for _ in 0..2 {
            for b in &full {
                let c = w.dot(b);
                w = w.sub(&b.scale(c));
            }
        }
        if w.norm() > 1e-10 {
            let u = w.scale(1.0 / w.norm());
            full.push(u.clone());
            null_basis.push(u);
        }
    }
    Ok(NullSpace {
        null_basis,
        span_basis,
    })
}

/// `δ*` of the polytope `conv(vertices)`: by hull invariance this is just
/// the diversity of the vertex set, recorded as its own operation because
/// callers think of the argument as a body, not a point list.
pub fn delta_star_polytope(spec: &DiversitySpec, vertices: &PointSet) -> Result<f64> {
    eval(spec, vertices)
}
