//! Randomized property checks for diversity axioms and the structural
//! facts that distinguish the variants: sublinearity, linearity,
//! translation and hull invariance, the deletion inequality, and the
//! Hausdorff Lipschitz bound for δ*.
//!
//! Checks are universally quantified assertions over sampled instances,
//! not statistical tests. Every report is reproducible from its seed, and
//! failing reports carry a witness with the offending inputs and both
//! sides of the violated inequality. Comparisons use the configured
//! tolerance scaled by the magnitude of the values compared, so the same
//! configuration works across coordinate ranges.
//!
//! Linearity checks try known separating fixtures before random sampling:
//! the Euclidean segment pair for circumradius-like diversities and the
//! triangle pair (A, −A) that forces a diagonal direction, so failures are
//! deterministic where theory provides an explicit witness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diversity::{eval, DiversitySpec};
use crate::geom::{PointSet, Vector};
use crate::{Error, Result};

/// Sampling parameters for the randomized checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim: usize,
    pub set_size: (usize, usize),
    pub coord_range: (f64, f64),
    pub lambda_range: (f64, f64),
    pub tol: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            trials: 200,
            dim: 2,
            set_size: (0, 8),
            coord_range: (-10.0, 10.0),
            lambda_range: (0.0, 3.0),
            tol: 1e-8,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidSpec("trials must be at least 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::InvalidSpec("dimension must be at least 1".into()));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.set_size.0 > self.set_size.1 {
            return Err(Error::InvalidSpec("set size range is reversed".into()));
        }
        if !(self.coord_range.0 < self.coord_range.1)
            || !(self.lambda_range.0 < self.lambda_range.1)
            || self.lambda_range.0 < 0.0
        {
            return Err(Error::InvalidSpec("sampling ranges are malformed".into()));
        }
        Ok(())
    }
}

/// Outcome of one property check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub property: String,
    pub pass: bool,
    pub witness: Option<Value>,
    pub seed: u64,
}

impl CheckReport {
    fn pass(property: &str, seed: u64, info: Option<Value>) -> Self {
        CheckReport {
            property: property.into(),
            pass: true,
            witness: info,
            seed,
        }
    }

    fn fail(property: &str, seed: u64, witness: Value) -> Self {
        CheckReport {
            property: property.into(),
            pass: false,
            witness: Some(witness),
            seed,
        }
    }
}

type EvalFn<'a> = &'a dyn Fn(&PointSet) -> Result<f64>;

fn pts_json(a: &PointSet) -> Value {
    json!(a.points.iter().map(|p| p.0.clone()).collect::<Vec<_>>())
}

fn close(lhs: f64, rhs: f64, tol: f64) -> bool {
    (lhs - rhs).abs() <= tol * (1.0 + lhs.abs().max(rhs.abs()))
}

fn at_most(lhs: f64, rhs: f64, tol: f64) -> bool {
    lhs <= rhs + tol * (1.0 + lhs.abs().max(rhs.abs()))
}

fn sample_point(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Vector {
    Vector(
        (0..cfg.dim)
            .map(|_| rng.random_range(cfg.coord_range.0..cfg.coord_range.1))
            .collect(),
    )
}

fn sample_set(rng: &mut ChaCha8Rng, cfg: &CheckConfig, min: usize) -> PointSet {
    let lo = cfg.set_size.0.max(min);
    let hi = cfg.set_size.1.max(lo);
    let n = rng.random_range(lo..=hi);
    PointSet {
        dim: cfg.dim,
        points: (0..n).map(|_| sample_point(rng, cfg)).collect(),
    }
}

/// D1 on the empty set and singletons, nonnegativity, monotonicity (D3),
/// subadditivity on intersecting sets (D4), and the triangle axiom (D2).
pub fn check_axioms(spec: &DiversitySpec, cfg: &CheckConfig) -> Result<CheckReport> {
    spec.validate()?;
    axioms_engine(&|a| eval(spec, a), cfg)
}

fn axioms_engine(f: EvalFn, cfg: &CheckConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let name = "axioms";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let empty = f(&PointSet::empty(cfg.dim))?;
    if empty.abs() > cfg.tol {
        return Ok(CheckReport::fail(
            name,
            cfg.seed,
            json!({"rule": "empty set must have value 0", "lhs": empty, "rhs": 0.0}),
        ));
    }
    for _ in 0..cfg.trials {
        let p = sample_point(&mut rng, cfg);
        let single = f(&PointSet {
            dim: cfg.dim,
            points: vec![p.clone()],
        })?;
        if single.abs() > cfg.tol {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "singletons must have value 0", "point": p.0, "lhs": single, "rhs": 0.0}),
            ));
        }

        let a = sample_set(&mut rng, cfg, 0);
        let b = sample_set(&mut rng, cfg, 0);
        let da = f(&a)?;
        if da < -cfg.tol {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "values must be nonnegative", "a": pts_json(&a), "lhs": da, "rhs": 0.0}),
            ));
        }
        let ab = a.union(&b)?;
        let dab = f(&ab)?;
        if !at_most(da, dab, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "monotone under inclusion", "a": pts_json(&a), "b": pts_json(&b), "lhs": da, "rhs": dab}),
            ));
        }

        // shared point keeps the pair intersecting for D4
        let shared = sample_point(&mut rng, cfg);
        let mut ai = a.clone();
        ai.points.push(shared.clone());
        let mut bi = b.clone();
        bi.points.push(shared);
        let joint = f(&ai.union(&bi)?)?;
        let parts = f(&ai)? + f(&bi)?;
        if !at_most(joint, parts, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "subadditive on intersecting sets", "a": pts_json(&ai), "b": pts_json(&bi), "lhs": joint, "rhs": parts}),
            ));
        }

        let c = sample_set(&mut rng, cfg, 0);
        let bridge = sample_set(&mut rng, cfg, 1);
        let ac = f(&a.union(&c)?)?;
        let through = f(&a.union(&bridge)?)? + f(&bridge.union(&c)?)?;
        if !at_most(ac, through, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "triangle through a nonempty bridge", "a": pts_json(&a), "b": pts_json(&bridge), "c": pts_json(&c), "lhs": ac, "rhs": through}),
            ));
        }
    }
    Ok(CheckReport::pass(name, cfg.seed, None))
}

/// Positive homogeneity and subadditivity under Minkowski sums (D6).
pub fn check_sublinear(spec: &DiversitySpec, cfg: &CheckConfig) -> Result<CheckReport> {
    spec.validate()?;
    sublinear_engine(&|a| eval(spec, a), cfg)
}

fn sublinear_engine(f: EvalFn, cfg: &CheckConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let name = "sublinear";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let a = sample_set(&mut rng, cfg, 1);
        let b = sample_set(&mut rng, cfg, 1);
        let lam = rng.random_range(cfg.lambda_range.0..cfg.lambda_range.1);
        let da = f(&a)?;
        let scaled = f(&a.scale(lam)?)?;
        if !close(scaled, lam * da, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "positively homogeneous", "a": pts_json(&a), "lambda": lam, "lhs": scaled, "rhs": lam * da}),
            ));
        }
        let sum = f(&a.minkowski_sum(&b)?)?;
        let rhs = da + f(&b)?;
        if !at_most(sum, rhs, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "subadditive under Minkowski sum", "a": pts_json(&a), "b": pts_json(&b), "lhs": sum, "rhs": rhs}),
            ));
        }
    }
    Ok(CheckReport::pass(name, cfg.seed, None))
}

/// Homogeneity plus exact additivity under Minkowski sums (D5). Known
/// separating pairs run before the random trials, so non-linear variants
/// fail deterministically with the textbook witness.
pub fn check_linear(spec: &DiversitySpec, cfg: &CheckConfig) -> Result<CheckReport> {
    spec.validate()?;
    linear_engine(&|a| eval(spec, a), cfg)
}

fn linear_engine(f: EvalFn, cfg: &CheckConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let name = "linear";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pairs: Vec<(PointSet, PointSet)> = Vec::new();
    if cfg.dim == 2 {
        let seg_a = PointSet::from_rows(2, &[&[0.0, 0.0], &[1.0, 0.0]]).expect("fixture");
        let seg_b = PointSet::from_rows(2, &[&[0.0, 0.0], &[0.0, 1.0]]).expect("fixture");
        let tri = PointSet::from_rows(2, &[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).expect("fixture");
        let neg_tri = PointSet {
            dim: 2,
            points: tri.points.iter().map(Vector::neg).collect(),
        };
        pairs.push((seg_a, seg_b));
        pairs.push((tri, neg_tri));
    }
    for _ in 0..cfg.trials {
        pairs.push((sample_set(&mut rng, cfg, 1), sample_set(&mut rng, cfg, 1)));
    }
    for (a, b) in &pairs {
        let da = f(a)?;
        let db = f(b)?;
        let sum = f(&a.minkowski_sum(b)?)?;
        if !close(sum, da + db, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "additive under Minkowski sum", "a": pts_json(a), "b": pts_json(b), "lhs": sum, "rhs": da + db}),
            ));
        }
        let lam = rng.random_range(cfg.lambda_range.0..cfg.lambda_range.1);
        let scaled = f(&a.scale(lam)?)?;
        if !close(scaled, lam * da, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "positively homogeneous", "a": pts_json(a), "lambda": lam, "lhs": scaled, "rhs": lam * da}),
            ));
        }
    }
    Ok(CheckReport::pass(name, cfg.seed, None))
}

/// Translation invariance and invariance under adding convex combinations
/// of existing points (hull invariance).
pub fn check_translation_and_hull_invariance(
    spec: &DiversitySpec,
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    spec.validate()?;
    invariance_engine(&|a| eval(spec, a), cfg)
}

fn invariance_engine(f: EvalFn, cfg: &CheckConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let name = "invariance";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let a = sample_set(&mut rng, cfg, 1);
        let t = sample_point(&mut rng, cfg);
        let da = f(&a)?;
        let shifted = f(&a.translate(&t)?)?;
        if !close(shifted, da, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "translation invariant", "a": pts_json(&a), "t": t.0, "lhs": shifted, "rhs": da}),
            ));
        }
        let mut aug = a.clone();
        for _ in 0..4 {
            let mut weights: Vec<f64> = (0..a.len()).map(|_| rng.random_range(0.0..1.0)).collect();
            let s: f64 = weights.iter().sum();
            if s <= 0.0 {
                continue;
            }
            for w in &mut weights {
                *w /= s;
            }
            let mut combo = Vector::zeros(cfg.dim);
            for (p, w) in a.points.iter().zip(&weights) {
                combo = combo.add(&p.scale(*w));
            }
            aug.points.push(combo);
        }
        let hull = f(&aug)?;
        if !close(hull, da, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "invariant under convex augmentation", "a": pts_json(&a), "augmented": pts_json(&aug), "lhs": hull, "rhs": da}),
            ));
        }
    }
    Ok(CheckReport::pass(name, cfg.seed, None))
}

/// The deletion inequality
/// `δ(A) ≤ ((|A|−1)/(|A|(|A|−2)))·Σ_a δ(A∖{a})` for `|A| > 2`.
pub fn check_deletion_inequality(spec: &DiversitySpec, cfg: &CheckConfig) -> Result<CheckReport> {
    spec.validate()?;
    deletion_engine(&|a| eval(spec, a), cfg)
}

fn deletion_engine(f: EvalFn, cfg: &CheckConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let name = "deletion";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut min_slack = f64::INFINITY;
    for _ in 0..cfg.trials {
        let n = rng.random_range(3..=7usize);
        let a = PointSet {
            dim: cfg.dim,
            points: (0..n).map(|_| sample_point(&mut rng, cfg)).collect(),
        };
        let da = f(&a)?;
        let mut rest = 0.0;
        for i in 0..n {
            let mut dropped = a.clone();
            dropped.points.remove(i);
            rest += f(&dropped)?;
        }
        let coeff = (n as f64 - 1.0) / (n as f64 * (n as f64 - 2.0));
        let bound = coeff * rest;
        if !at_most(da, bound, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "deletion inequality", "a": pts_json(&a), "lhs": da, "rhs": bound, "coefficient": coeff}),
            ));
        }
        min_slack = min_slack.min(bound - da);
    }
    Ok(CheckReport::pass(
        name,
        cfg.seed,
        Some(json!({"min_slack": min_slack})),
    ))
}

/// `maxⱼ |h_A(xⱼ) − h_B(xⱼ)|` over unit directions: a lower bound for the
/// Euclidean Hausdorff distance between `conv(A)` and `conv(B)`, converging
/// to it as the directions densify.
pub fn hausdorff_lower_estimate(a: &PointSet, b: &PointSet, directions: &[Vector]) -> Result<f64> {
    if directions.is_empty() {
        return Err(Error::EmptyInput("hausdorff estimate needs directions"));
    }
    let mut best = 0.0f64;
    for x in directions {
        if (x.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSpec(format!(
                "direction {:?} is not unit length",
                x.0
            )));
        }
        best = best.max((a.support(x)? - b.support(x)?).abs());
    }
    Ok(best)
}

fn regular_polygon_points(n: usize, radius: f64) -> PointSet {
    PointSet {
        dim: 2,
        points: (0..n)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
                Vector(vec![radius * t.cos(), radius * t.sin()])
            })
            .collect(),
    }
}

/// Hausdorff Lipschitz bound in the plane: perturbing `A` by `λQ` (the
/// 64-gon inscribed in the unit circle) moves the hull by at most `λ` in
/// Hausdorff distance, so `|δ(A + λQ) − δ(A)|` must stay below
/// `λ·δ(P_out)` with `P_out` the circumscribed 64-gon; monotonicity makes
/// `δ(P_out)` an upper bound for the Lipschitz constant `δ*(𝔅)`. A passing
/// report records the tightness probe `(δ(2Q) − δ(Q))/d̂_H ≈ δ(Q)`.
pub fn check_lipschitz(spec: &DiversitySpec, cfg: &CheckConfig) -> Result<CheckReport> {
    spec.validate()?;
    lipschitz_engine(&|a| eval(spec, a), cfg)
}

fn lipschitz_engine(f: EvalFn, cfg: &CheckConfig) -> Result<CheckReport> {
    cfg.validate()?;
    if cfg.dim != 2 {
        return Err(Error::InvalidSpec(
            "the Lipschitz check uses the planar polygon sandwich and needs dim 2".into(),
        ));
    }
    let name = "lipschitz";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sides = 64usize;
    let q = regular_polygon_points(sides, 1.0);
    let outer = regular_polygon_points(
        sides,
        1.0 / (std::f64::consts::PI / sides as f64).cos(),
    );
    let constant = f(&outer)?;
    for _ in 0..cfg.trials {
        let a = sample_set(&mut rng, cfg, 1);
        let lam = rng.random_range(cfg.lambda_range.0..cfg.lambda_range.1);
        let da = f(&a)?;
        let perturbed = f(&a.minkowski_sum(&q.scale(lam)?)?)?;
        let drift = (perturbed - da).abs();
        if !at_most(drift, lam * constant, cfg.tol) {
            return Ok(CheckReport::fail(
                name,
                cfg.seed,
                json!({"rule": "hausdorff lipschitz bound", "a": pts_json(&a), "lambda": lam, "lhs": drift, "rhs": lam * constant}),
            ));
        }
    }
    // tightness probe: push Q to 2Q, whose hulls are d_H-apart by exactly 1
    let dirs: Vec<Vector> = (0..720)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * (j as f64) / 720.0;
            Vector(vec![t.cos(), t.sin()])
        })
        .collect();
    let dq = f(&q)?;
    let d2q = f(&q.scale(2.0)?)?;
    let dh = hausdorff_lower_estimate(&q, &q.scale(2.0)?, &dirs)?;
    let ratio = if dh > 0.0 { (d2q - dq).abs() / dh } else { 0.0 };
    Ok(CheckReport::pass(
        name,
        cfg.seed,
        Some(json!({"tightness_ratio": ratio, "delta_inner": dq, "lipschitz_bound": constant})),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diversity::Norm;
    use crate::kernels::l1_measure;
    use crate::numerics::SphereSampler;

    fn linf_ball_kernel() -> crate::kernels::HPolytope {
        crate::kernels::HPolytope::new(
            vec![
                Vector(vec![1.0, 0.0]),
                Vector(vec![-1.0, 0.0]),
                Vector(vec![0.0, 1.0]),
                Vector(vec![0.0, -1.0]),
            ],
            vec![1.0; 4],
        )
        .unwrap()
    }

    fn quick(trials: usize) -> CheckConfig {
        CheckConfig {
            trials,
            set_size: (0, 6),
            ..CheckConfig::default()
        }
    }

    fn sublinear_suite() -> Vec<DiversitySpec> {
        vec![
            DiversitySpec::L1,
            DiversitySpec::Diameter { norm: Norm::L2 },
            DiversitySpec::Circumradius,
            DiversitySpec::Minkowski {
                kernel: linf_ball_kernel(),
            },
            DiversitySpec::DiscreteLinear {
                measure: l1_measure(2).unwrap(),
            },
            DiversitySpec::MeanWidth {
                sampler: SphereSampler::Equiangular2d { count: 64 },
            },
            DiversitySpec::MeanWidthP {
                p: 2.0,
                sampler: SphereSampler::Equiangular2d { count: 64 },
            },
            DiversitySpec::Zonotope {
                directions: vec![Vector(vec![1.0, 0.0]), Vector(vec![0.0, 1.0])],
            },
            DiversitySpec::MaxOf {
                specs: vec![DiversitySpec::L1, DiversitySpec::Circumradius],
            },
        ]
    }

    #[test]
    fn axioms_pass_for_implemented_variants() {
        for spec in sublinear_suite() {
            let trials = match spec {
                // LP-backed variants are slower per evaluation
                DiversitySpec::Minkowski { .. } | DiversitySpec::Zonotope { .. } => 40,
                _ => 120,
            };
            let r = check_axioms(&spec, &quick(trials)).unwrap();
            assert!(r.pass, "{spec:?}: {:?}", r.witness);
        }
    }

    #[test]
    fn sublinearity_passes_for_implemented_variants() {
        for spec in sublinear_suite() {
            let trials = match spec {
                DiversitySpec::Minkowski { .. } | DiversitySpec::Zonotope { .. } => 30,
                _ => 100,
            };
            let r = check_sublinear(&spec, &quick(trials)).unwrap();
            assert!(r.pass, "{spec:?}: {:?}", r.witness);
        }
    }

    #[test]
    fn linear_passes_for_linear_variants() {
        let specs = vec![
            DiversitySpec::L1,
            DiversitySpec::DiscreteLinear {
                measure: l1_measure(2).unwrap(),
            },
            DiversitySpec::MeanWidth {
                sampler: SphereSampler::UniformRandom {
                    dim: 2,
                    count: 48,
                    seed: 11,
                },
            },
        ];
        for spec in specs {
            let r = check_linear(&spec, &quick(60)).unwrap();
            assert!(r.pass, "{spec:?}: {:?}", r.witness);
        }
    }

    #[test]
    fn circumradius_fails_linearity_on_the_segment_pair() {
        let r = check_linear(&DiversitySpec::Circumradius, &quick(5)).unwrap();
        assert!(!r.pass);
        let w = r.witness.expect("failing check carries a witness");
        // the deterministic fixture: two unit segments along the axes
        assert_eq!(w["a"], json!([[0.0, 0.0], [1.0, 0.0]]));
        assert_eq!(w["b"], json!([[0.0, 0.0], [0.0, 1.0]]));
        let lhs = w["lhs"].as_f64().unwrap();
        let rhs = w["rhs"].as_f64().unwrap();
        assert!((lhs - 0.5f64.sqrt()).abs() < 1e-9);
        assert!((rhs - 1.0).abs() < 1e-9);
    }

    #[test]
    fn three_direction_zonotope_fails_linearity_on_the_triangle_pair() {
        let s = 1.0 / 2f64.sqrt();
        let spec = DiversitySpec::Zonotope {
            directions: vec![
                Vector(vec![1.0, 0.0]),
                Vector(vec![0.0, 1.0]),
                Vector(vec![s, -s]),
            ],
        };
        let r = check_linear(&spec, &quick(5)).unwrap();
        assert!(!r.pass);
        let w = r.witness.expect("failing check carries a witness");
        let lhs = w["lhs"].as_f64().unwrap();
        let rhs = w["rhs"].as_f64().unwrap();
        assert!((lhs - (2.0 + 2f64.sqrt())).abs() < 1e-6, "lhs {lhs}");
        assert!((rhs - 4.0).abs() < 1e-6, "rhs {rhs}");
    }

    #[test]
    fn invariance_passes_for_implemented_variants() {
        for spec in sublinear_suite() {
            let trials = match spec {
                DiversitySpec::Minkowski { .. } | DiversitySpec::Zonotope { .. } => 30,
                _ => 100,
            };
            let r = check_translation_and_hull_invariance(&spec, &quick(trials)).unwrap();
            assert!(r.pass, "{spec:?}: {:?}", r.witness);
        }
    }

    #[test]
    fn deletion_inequality_passes_and_records_slack() {
        for spec in [DiversitySpec::Diameter { norm: Norm::L2 }, DiversitySpec::Circumradius] {
            let r = check_deletion_inequality(&spec, &quick(60)).unwrap();
            assert!(r.pass, "{spec:?}: {:?}", r.witness);
            let info = r.witness.expect("pass report records slack");
            assert!(info["min_slack"].as_f64().unwrap() > -1e-12);
        }
    }

    #[test]
    fn deletion_equality_probe_equilateral_triangle() {
        // |A| = 3 bound is (2/3)·Σ of the three unit pair diameters = 2 ≥ 1
        let tri = PointSet::from_rows(
            2,
            &[&[0.0, 0.0], &[1.0, 0.0], &[0.5, 3f64.sqrt() / 2.0]],
        )
        .unwrap();
        let spec = DiversitySpec::Diameter { norm: Norm::L2 };
        let d = eval(&spec, &tri).unwrap();
        let mut rest = 0.0;
        for i in 0..3 {
            let mut dropped = tri.clone();
            dropped.points.remove(i);
            rest += eval(&spec, &dropped).unwrap();
        }
        let bound = (2.0 / 3.0) * rest;
        assert!((bound - 2.0).abs() < 1e-12);
        assert!(d <= bound);
        assert!((bound - d - 1.0).abs() < 1e-12, "slack is exactly 1");
    }

    #[test]
    fn hausdorff_estimate_examples() {
        let dirs: Vec<Vector> = (0..720)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * (j as f64) / 720.0;
                Vector(vec![t.cos(), t.sin()])
            })
            .collect();
        let gon = regular_polygon_points(64, 1.0);
        assert_eq!(hausdorff_lower_estimate(&gon, &gon, &dirs).unwrap(), 0.0);
        let doubled = gon.scale(2.0).unwrap();
        let est = hausdorff_lower_estimate(&gon, &doubled, &dirs).unwrap();
        assert!((est - 1.0).abs() < 2e-3, "est {est}");
        let p = PointSet::from_rows(2, &[&[0.0, 0.0]]).unwrap();
        let q = PointSet::from_rows(2, &[&[3.0, 0.0]]).unwrap();
        let dirs4: Vec<Vector> = SphereSampler::Equiangular2d { count: 4 }
            .directions()
            .unwrap();
        assert!((hausdorff_lower_estimate(&p, &q, &dirs4).unwrap() - 3.0).abs() < 1e-12);
        assert!(hausdorff_lower_estimate(&p, &PointSet::empty(2), &dirs4).is_err());
        assert!(hausdorff_lower_estimate(&p, &q, &[]).is_err());
        assert!(hausdorff_lower_estimate(&p, &q, &[Vector(vec![2.0, 0.0])]).is_err());
    }

    #[test]
    fn lipschitz_passes_for_l1_and_diameter() {
        for spec in [DiversitySpec::L1, DiversitySpec::Diameter { norm: Norm::L2 }] {
            let r = check_lipschitz(&spec, &quick(40)).unwrap();
            assert!(r.pass, "{spec:?}: {:?}", r.witness);
            let info = r.witness.expect("pass report carries the tightness probe");
            let ratio = info["tightness_ratio"].as_f64().unwrap();
            let inner = info["delta_inner"].as_f64().unwrap();
            let bound = info["lipschitz_bound"].as_f64().unwrap();
            // the probe pinches the Lipschitz constant between the polygons
            assert!(ratio >= inner - 1e-9, "ratio {ratio} vs inner {inner}");
            assert!(ratio <= bound * 1.01, "ratio {ratio} vs bound {bound}");
        }
    }

    #[test]
    fn lipschitz_needs_dim_two() {
        let cfg = CheckConfig {
            dim: 3,
            ..quick(5)
        };
        assert!(check_lipschitz(&DiversitySpec::L1, &cfg).is_err());
    }

    #[test]
    fn l1_lipschitz_bound_is_four_in_the_plane() {
        let outer = regular_polygon_points(64, 1.0 / (std::f64::consts::PI / 64.0).cos());
        let c = eval(&DiversitySpec::L1, &outer).unwrap();
        assert!((c - 4.0).abs() < 0.02, "bound {c}");
    }

    // harness soundness: deliberately broken diversities must fail

    #[test]
    fn broken_negated_values_fail_axioms() {
        let f = |a: &PointSet| -> Result<f64> {
            Ok(-crate::diversity::l1_eval(a)?)
        };
        let r = axioms_engine(&f, &quick(50)).unwrap();
        assert!(!r.pass);
        assert!(r.witness.is_some());
    }

    #[test]
    fn broken_non_monotone_fails_axioms() {
        // strictly decreasing in the point count once nonempty
        let f = |a: &PointSet| -> Result<f64> {
            Ok(if a.len() <= 1 { 0.0 } else { 10.0 / a.len() as f64 })
        };
        let r = axioms_engine(&f, &quick(50)).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn broken_nonzero_singleton_fails_axioms() {
        let f = |a: &PointSet| -> Result<f64> { Ok(a.len() as f64) };
        let r = axioms_engine(&f, &quick(50)).unwrap();
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w["rule"], "singletons must have value 0");
    }

    #[test]
    fn broken_translation_sensitive_fails_invariance() {
        let f = |a: &PointSet| -> Result<f64> {
            if a.is_empty() {
                return Ok(0.0);
            }
            Ok(a.points.iter().map(|p| p.0[0].abs()).fold(0.0, f64::max))
        };
        let r = invariance_engine(&f, &quick(50)).unwrap();
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w["rule"], "translation invariant");
    }

    #[test]
    fn broken_superadditive_fails_sublinear() {
        let f = |a: &PointSet| -> Result<f64> {
            let d = crate::diversity::l1_eval(a)?;
            Ok(d * d)
        };
        let r = sublinear_engine(&f, &quick(50)).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn broken_hull_sensitive_fails_deletion() {
        // counting interior points violates the deletion bound
        let f = |a: &PointSet| -> Result<f64> {
            Ok(if a.len() <= 1 { 0.0 } else { (a.len() * a.len()) as f64 })
        };
        let r = deletion_engine(&f, &quick(50)).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn reports_are_reproducible() {
        let spec = DiversitySpec::Circumradius;
        let cfg = quick(25);
        let a = serde_json::to_string(&check_linear(&spec, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&check_linear(&spec, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        let passing = serde_json::to_string(&check_axioms(&spec, &cfg).unwrap()).unwrap();
        let again = serde_json::to_string(&check_axioms(&spec, &cfg).unwrap()).unwrap();
        assert_eq!(passing, again);
    }

    #[test]
    fn report_json_shape() {
        let r = check_axioms(&DiversitySpec::L1, &quick(5)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert!(v.get("property").is_some());
        assert!(v.get("pass").is_some());
        assert!(v.get("seed").is_some());
        assert!(v.as_object().unwrap().contains_key("witness"));
    }

    #[test]
    fn config_validation() {
        let mut cfg = CheckConfig::default();
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
        cfg = CheckConfig::default();
        cfg.tol = 0.0;
        assert!(cfg.validate().is_err());
        cfg = CheckConfig::default();
        cfg.set_size = (5, 2);
        assert!(cfg.validate().is_err());
        cfg = CheckConfig::default();
        cfg.lambda_range = (-1.0, 2.0);
        assert!(cfg.validate().is_err());
    }
}
