//! Finite diversity tables and the negative-type embeddability decision.
//!
//! A table assigns a value to every nonempty subset of a small ground set.
//! Subsets are indexed by bitmask over the ordered label list (bit `i` is
//! label `i`), so certificates stay interpretable across runs. A table `δ`
//! has negative type when `Σ_{S,T} x_S x_T δ(S∪T) ≤ 0` for every zero-sum
//! vector `x` over nonempty subsets, and negative type is equivalent to
//! embeddability into a linear diversity (equivalently one with a simplex
//! kernel). The decision here is spectral: with `M[S][T] = δ(S∪T)` and the
//! centering projector `P = I − 𝟙𝟙ᵀ/N`, negative type holds exactly when
//! `λ_max(PMP) ≤ 0`, tested against a scale-relative tolerance.

use serde::{Deserialize, Serialize};

use crate::diversity::{eval, DiversitySpec};
use crate::geom::{PointSet, Vector};
use crate::numerics::{jacobi_eigen, SymmetricMatrix};
use crate::{Error, Result};

/// Hard cap on ground-set size for table storage (2ⁿ − 1 entries).
pub const TABLE_GROUND_CAP: usize = 20;
/// Cap for the negative-type decision, whose matrix has order 2ⁿ − 1.
pub const NEGATIVE_TYPE_CAP: usize = 8;

/// A value for every nonempty subset of a finite labeled ground set.
///
/// Values are stored dense, indexed by bitmask; the empty mask holds 0.
/// Construction rejects negative and non-finite values but deliberately
/// admits tables violating the diversity axioms: violating tables are
/// legitimate inputs to [`check_table_axioms`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct DiversityTable {
    ground: Vec<String>,
    values: Vec<f64>,
}

impl DiversityTable {
    /// Builds a table from a dense value vector of length `2^n` indexed by
    /// bitmask, entry 0 being the empty set's mandatory 0.
    pub fn from_values(ground: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n = ground.len();
        if n == 0 {
            return Err(Error::EmptyInput("table needs at least one label"));
        }
        if n > TABLE_GROUND_CAP {
            return Err(Error::GroundTooLarge {
                n,
                cap: TABLE_GROUND_CAP,
            });
        }
        for (i, a) in ground.iter().enumerate() {
            if ground[..i].contains(a) {
                return Err(Error::InvalidSpec(format!("duplicate label {a:?}")));
            }
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidSpec(format!(
                "expected {} subset values, got {}",
                1usize << n,
                values.len()
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidSpec(
                "the empty subset must have value 0".into(),
            ));
        }
        for (m, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidSpec(format!(
                    "subset {m:#b} has value {v}, must be a nonnegative real"
                )));
            }
        }
        Ok(DiversityTable { ground, values })
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    /// Value of the subset with the given bitmask (bit `i` = label `i`).
    pub fn value(&self, mask: usize) -> f64 {
        self.values[mask]
    }

    pub fn labels_of(&self, mask: usize) -> Vec<String> {
        (0..self.n())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| self.ground[b].clone())
            .collect()
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        let mut mask = 0usize;
        for l in labels {
            let l = l.as_ref();
            let b = self
                .ground
                .iter()
                .position(|g| g == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            if mask & (1 << b) != 0 {
                return Err(Error::InvalidSpec(format!(
                    "label {l:?} repeated within one subset"
                )));
            }
            mask |= 1 << b;
        }
        Ok(mask)
    }

    /// Rescales every value by `c ≥ 0`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::NegativeScale(c));
        }
        Ok(DiversityTable {
            ground: self.ground.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TableEntryJson {
    subset: Vec<String>,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    ground: Vec<String>,
    values: Vec<TableEntryJson>,
}

impl From<DiversityTable> for TableJson {
    fn from(t: DiversityTable) -> Self {
        let values = (1..t.values.len())
            .map(|m| TableEntryJson {
                subset: t.labels_of(m),
                value: t.values[m],
            })
            .collect();
        TableJson {
            ground: t.ground,
            values,
        }
    }
}

impl TryFrom<TableJson> for DiversityTable {
    type Error = Error;

    fn try_from(j: TableJson) -> Result<Self> {
        let n = j.ground.len();
        if n == 0 {
            return Err(Error::EmptyInput("table needs at least one label"));
        }
        if n > TABLE_GROUND_CAP {
            return Err(Error::GroundTooLarge {
                n,
                cap: TABLE_GROUND_CAP,
            });
        }
        // singletons default to 0 and may be overridden; everything else
        // must be listed explicitly
        let mut values = vec![f64::NAN; 1 << n];
        values[0] = 0.0;
        for b in 0..n {
            values[1 << b] = 0.0;
        }
        let skeleton = DiversityTable {
            ground: j.ground.clone(),
            values: vec![0.0; 1 << n],
        };
        let mut seen = vec![false; 1 << n];
        for e in &j.values {
            let mask = skeleton.mask_of(&e.subset)?;
            if mask == 0 {
                return Err(Error::InvalidSpec(
                    "the empty subset may not be listed".into(),
                ));
            }
            if seen[mask] {
                return Err(Error::InvalidSpec(format!(
                    "subset {:?} listed twice",
                    e.subset
                )));
            }
            seen[mask] = true;
            values[mask] = e.value;
        }
        for (m, v) in values.iter().enumerate() {
            if v.is_nan() {
                let labels = (0..n)
                    .filter(|b| m & (1 << b) != 0)
                    .map(|b| j.ground[b].clone())
                    .collect::<Vec<_>>()
                    .join(",");
                return Err(Error::MissingSubset(labels));
            }
        }
        DiversityTable::from_values(j.ground, values)
    }
}

/// Restricts a diversity on ℝᵏ to labeled points: the table value of each
/// subset is the diversity of the corresponding points.
pub fn restrict(spec: &DiversitySpec, labeled: &[(String, Vector)]) -> Result<DiversityTable> {
    let n = labeled.len();
    if n == 0 {
        return Err(Error::EmptyInput("restrict needs at least one point"));
    }
    if n > TABLE_GROUND_CAP {
        return Err(Error::GroundTooLarge {
            n,
            cap: TABLE_GROUND_CAP,
        });
    }
    spec.validate()?;
    let ground: Vec<String> = labeled.iter().map(|(l, _)| l.clone()).collect();
    for (i, l) in ground.iter().enumerate() {
        if ground[..i].contains(l) {
            return Err(Error::InvalidSpec(format!("duplicate label {l:?}")));
        }
    }
    let dim = labeled[0].1.dim();
    let all = PointSet::new(dim, labeled.iter().map(|(_, p)| p.clone()).collect())?;
    let mut values = vec![0.0; 1 << n];
    for (mask, slot) in values.iter_mut().enumerate().skip(1) {
        if mask.count_ones() <= 1 {
            continue;
        }
        let pts: Vec<Vector> = (0..n)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| all.points[b].clone())
            .collect();
        *slot = eval(spec, &PointSet::new(dim, pts)?)?;
    }
    DiversityTable::from_values(ground, values)
}

/// One axiom violation found in a table.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TableViolation {
    /// D1: a singleton with nonzero value.
    NonzeroSingleton { label: String, value: f64 },
    /// D3: a subset exceeding a superset.
    Monotonicity {
        subset: Vec<String>,
        superset: Vec<String>,
        subset_value: f64,
        superset_value: f64,
    },
    /// D4 for intersecting pairs: δ(S∪T) > δ(S) + δ(T) with S∩T ≠ ∅.
    IntersectingSubadditivity {
        left: Vec<String>,
        right: Vec<String>,
        union_value: f64,
        bound: f64,
    },
}

/// Checks D1 on singletons, D3 along covers (equivalent to full
/// monotonicity), and D4 over all intersecting pairs. An empty report means
/// the table is a genuine finite diversity. Cost grows as 4ⁿ in the ground
/// size, fine at the sizes the decision procedures accept.
pub fn check_table_axioms(t: &DiversityTable, tol: f64) -> Vec<TableViolation> {
    let n = t.n();
    let full = 1usize << n;
    let mut out = Vec::new();
    for b in 0..n {
        let v = t.value(1 << b);
        if v.abs() > tol {
            out.push(TableViolation::NonzeroSingleton {
                label: t.ground()[b].clone(),
                value: v,
            });
        }
    }
    for sup in 1..full {
        for b in 0..n {
            if sup & (1 << b) == 0 {
                continue;
            }
            let sub = sup & !(1 << b);
            if sub != 0 && t.value(sub) > t.value(sup) + tol {
                out.push(TableViolation::Monotonicity {
                    subset: t.labels_of(sub),
                    superset: t.labels_of(sup),
                    subset_value: t.value(sub),
                    superset_value: t.value(sup),
                });
            }
        }
    }
    for s in 1..full {
        for u in s..full {
            if s & u == 0 {
                continue;
            }
            let bound = t.value(s) + t.value(u);
            if t.value(s | u) > bound + tol {
                out.push(TableViolation::IntersectingSubadditivity {
                    left: t.labels_of(s),
                    right: t.labels_of(u),
                    union_value: t.value(s | u),
                    bound,
                });
            }
        }
    }
    out
}

/// Outcome of the negative-type decision. The certificate, present exactly
/// when the decision is false, is a zero-sum vector over nonempty subsets in
/// bitmask order (entry `i` is the subset with mask `i + 1`) whose quadratic
/// form `xᵀMx` is strictly positive.
#[derive(Clone, Debug, Serialize)]
pub struct NegativeTypeReport {
    pub decision: bool,
    pub max_projected_eigenvalue: f64,
    pub certificate: Option<Vec<f64>>,
}

fn union_matrix(t: &DiversityTable) -> SymmetricMatrix {
    let n = 1usize << t.n();
    SymmetricMatrix::from_fn(n - 1, |i, j| t.value((i + 1) | (j + 1)))
}

/// Decides negative type: `Σ x_S x_T δ(S∪T) ≤ 0` for all zero-sum `x`.
/// With `M[S][T] = δ(S∪T)` and `P = I − 𝟙𝟙ᵀ/N` this is `λ_max(PMP) ≤ tol`;
/// `tol` defaults to `1e-9·max|M|`.
pub fn negative_type(t: &DiversityTable, tol: Option<f64>) -> Result<NegativeTypeReport> {
    let n = t.n();
    if n > NEGATIVE_TYPE_CAP {
        return Err(Error::GroundTooLarge {
            n,
            cap: NEGATIVE_TYPE_CAP,
        });
    }
    let m = union_matrix(t);
    let big_n = m.n;
    let tol = match tol {
        Some(v) if v.is_finite() && v >= 0.0 => v,
        Some(v) => {
            return Err(Error::InvalidSpec(format!(
                "tolerance must be a nonnegative real, got {v}"
            )))
        }
        None => 1e-9 * m.max_abs(),
    };
    // PMP = M − rowmean − colmean + totalmean, entrywise
    let mut row_mean = vec![0.0; big_n];
    for i in 0..big_n {
        let mut s = 0.0;
        for j in 0..big_n {
            s += m.get(i, j);
        }
        row_mean[i] = s / big_n as f64;
    }
    let total_mean = row_mean.iter().sum::<f64>() / big_n as f64;
    let pmp = SymmetricMatrix::from_fn(big_n, |i, j| {
        m.get(i, j) - row_mean[i] - row_mean[j] + total_mean
    });
    let eig = jacobi_eigen(&pmp)?;
    let lam_max = *eig.values.last().expect("order is at least 1");
    let decision = lam_max <= tol;
    let certificate = if decision {
        None
    } else {
        let v = eig.vectors.last().expect("order is at least 1");
        let mean = v.iter().sum::<f64>() / big_n as f64;
        let mut x = Vector(v.iter().map(|c| c - mean).collect());
        let norm = x.norm();
        if norm > 0.0 {
            x = x.scale(1.0 / norm);
        }
        Some(x.0)
    };
    Ok(NegativeTypeReport {
        decision,
        max_projected_eigenvalue: lam_max,
        certificate,
    })
}

/// Embeddability into a linear diversity (one with a simplex kernel) is
/// equivalent to negative type; this is the same decision under its
/// geometric name.
pub fn linear_embeddable(t: &DiversityTable, tol: Option<f64>) -> Result<bool> {
    negative_type(t, tol).map(|r| r.decision)
}

/// Verifies a sublinear-embeddability certificate: every part must pass
/// negative type and their pointwise maximum must reproduce `t` within
/// `tol`. This verifies a supplied decomposition; it never searches for one.
pub fn verify_max_decomposition(
    t: &DiversityTable,
    parts: &[DiversityTable],
    tol: f64,
) -> Result<bool> {
    if parts.is_empty() {
        return Err(Error::EmptyInput("decomposition needs at least one part"));
    }
    for p in parts {
        if p.ground() != t.ground() {
            return Err(Error::GroundMismatch);
        }
    }
    for p in parts {
        if !negative_type(p, None)?.decision {
            return Ok(false);
        }
    }
    let full = 1usize << t.n();
    for mask in 1..full {
        let best = parts
            .iter()
            .map(|p| p.value(mask))
            .fold(f64::NEG_INFINITY, f64::max);
        if (best - t.value(mask)).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diversity::{Norm, WeightedTerm};
    use crate::kernels::{l1_measure, SimplexKernelSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn labeled(pairs: &[(&str, &[f64])]) -> Vec<(String, Vector)> {
        pairs
            .iter()
            .map(|(l, p)| (l.to_string(), Vector(p.to_vec())))
            .collect()
    }

    fn rand_labeled(rng: &mut ChaCha8Rng, dim: usize, n: usize) -> Vec<(String, Vector)> {
        (0..n)
            .map(|i| {
                (
                    format!("p{i}"),
                    Vector((0..dim).map(|_| rng.random_range(-10.0..10.0)).collect()),
                )
            })
            .collect()
    }

    /// A 4-element diversity (axioms verified below) that is not of negative
    /// type, found by randomized search over monotone subadditive tables and
    /// frozen here. Its largest projected eigenvalue is about 0.1558.
    fn frozen_non_negative_type_table() -> DiversityTable {
        let ground = vec!["a", "b", "c", "d"].into_iter().map(String::from).collect();
        let mut values = vec![0.0; 16];
        for (mask, v) in [
            (0b0011, 1.3),
            (0b0101, 0.7),
            (0b0110, 0.7),
            (0b0111, 1.4),
            (0b1001, 1.1),
            (0b1010, 1.3),
            (0b1100, 0.8),
            (0b1011, 1.8),
            (0b1101, 1.5),
            (0b1110, 1.4),
            (0b1111, 2.1),
        ] {
            values[mask] = v;
        }
        DiversityTable::from_values(ground, values).unwrap()
    }

    #[test]
    fn restrict_single_label() {
        let t = restrict(&DiversitySpec::L1, &labeled(&[("a", &[1.0, 2.0])])).unwrap();
        assert_eq!(t.n(), 1);
        assert_eq!(t.value(1), 0.0);
    }

    #[test]
    fn restrict_l1_pair() {
        let t = restrict(
            &DiversitySpec::L1,
            &labeled(&[("a", &[0.0, 0.0]), ("b", &[1.0, 2.0])]),
        )
        .unwrap();
        assert_eq!(t.value(t.mask_of(&["a", "b"]).unwrap()), 3.0);
        assert_eq!(t.value(t.mask_of(&["a"]).unwrap()), 0.0);
    }

    #[test]
    fn restrict_diameter_on_square() {
        let t = restrict(
            &DiversitySpec::Diameter { norm: Norm::L2 },
            &labeled(&[
                ("a", &[0.0, 0.0]),
                ("b", &[1.0, 0.0]),
                ("c", &[0.0, 1.0]),
                ("d", &[1.0, 1.0]),
            ]),
        )
        .unwrap();
        assert!((t.value(0b1111) - 2f64.sqrt()).abs() < 1e-12);
        assert!((t.value(t.mask_of(&["a", "d"]).unwrap()) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(t.value(t.mask_of(&["a", "b"]).unwrap()), 1.0);
    }

    #[test]
    fn restrictions_satisfy_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let specs = vec![
            DiversitySpec::L1,
            DiversitySpec::Diameter { norm: Norm::L2 },
            DiversitySpec::Circumradius,
            DiversitySpec::DiscreteLinear {
                measure: l1_measure(2).unwrap(),
            },
        ];
        for _ in 0..5 {
            let pts = rand_labeled(&mut rng, 2, 5);
            for spec in &specs {
                let t = restrict(spec, &pts).unwrap();
                let report = check_table_axioms(&t, 1e-9);
                assert!(report.is_empty(), "{spec:?} produced {report:?}");
            }
        }
    }

    #[test]
    fn monotonicity_violation_reported() {
        let ground: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let mut values = vec![0.0; 8];
        values[0b011] = 1.0;
        values[0b101] = 0.3;
        values[0b110] = 0.3;
        values[0b111] = 0.5;
        let t = DiversityTable::from_values(ground, values).unwrap();
        let report = check_table_axioms(&t, 1e-9);
        assert!(report.iter().any(|v| matches!(
            v,
            TableViolation::Monotonicity { subset, .. } if subset == &["a", "b"]
        )));
    }

    #[test]
    fn nonzero_singleton_reported() {
        let t = DiversityTable::from_values(
            vec!["a".into(), "b".into()],
            vec![0.0, 0.1, 0.0, 1.0],
        )
        .unwrap();
        let report = check_table_axioms(&t, 1e-9);
        assert!(report
            .iter()
            .any(|v| matches!(v, TableViolation::NonzeroSingleton { label, .. } if label == "a")));
    }

    #[test]
    fn subadditivity_violation_reported() {
        let ground: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let mut values = vec![0.0; 8];
        values[0b011] = 1.0;
        values[0b101] = 1.0;
        values[0b110] = 1.0;
        values[0b111] = 2.5;
        let t = DiversityTable::from_values(ground, values).unwrap();
        let report = check_table_axioms(&t, 1e-9);
        assert!(report
            .iter()
            .any(|v| matches!(v, TableViolation::IntersectingSubadditivity { .. })));
    }

    #[test]
    fn negative_type_single_label() {
        let t = DiversityTable::from_values(vec!["a".into()], vec![0.0, 0.0]).unwrap();
        let r = negative_type(&t, None).unwrap();
        assert!(r.decision);
        assert!(r.certificate.is_none());
        assert!(r.max_projected_eigenvalue.abs() < 1e-12);
    }

    #[test]
    fn negative_type_two_labels_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for d in [0.5, 1.0, 7.0] {
            let t = DiversityTable::from_values(
                vec!["a".into(), "b".into()],
                vec![0.0, 0.0, 0.0, d],
            )
            .unwrap();
            assert!(negative_type(&t, None).unwrap().decision);
            // the quadratic form on zero-sum x is exactly −d(x₁² + x₂²)
            let m = union_matrix(&t);
            for _ in 0..10 {
                let x1 = rng.random_range(-2.0..2.0);
                let x2 = rng.random_range(-2.0..2.0);
                let x = vec![x1, x2, -x1 - x2];
                let q = m.quad_form(&x);
                assert!((q - (-d * (x1 * x1 + x2 * x2))).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn l1_restrictions_have_negative_type() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..20 {
            let pts = rand_labeled(&mut rng, 3, 4);
            let t = restrict(&DiversitySpec::L1, &pts).unwrap();
            let r = negative_type(&t, None).unwrap();
            assert!(
                r.decision,
                "l1 restriction must embed, eigenvalue {}",
                r.max_projected_eigenvalue
            );
        }
    }

    #[test]
    fn linear_variant_restrictions_have_negative_type() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let tri = SimplexKernelSpec::new(
            vec![
                Vector(vec![1.0, 0.0]),
                Vector(vec![0.0, 1.0]),
                Vector(vec![-1.0, -1.0]),
            ],
            vec![1.0 / 3.0; 3],
        )
        .unwrap();
        let specs = vec![
            DiversitySpec::DiscreteLinear {
                measure: l1_measure(2).unwrap(),
            },
            DiversitySpec::SimplexClosedForm { spec: tri.clone() },
            DiversitySpec::WeightedSum {
                terms: vec![
                    WeightedTerm {
                        weight: 0.7,
                        spec: DiversitySpec::L1,
                    },
                    WeightedTerm {
                        weight: 1.3,
                        spec: DiversitySpec::SimplexClosedForm { spec: tri },
                    },
                ],
            },
        ];
        for spec in &specs {
            for _ in 0..6 {
                let pts = rand_labeled(&mut rng, 2, 4);
                let t = restrict(spec, &pts).unwrap();
                assert!(
                    linear_embeddable(&t, None).unwrap(),
                    "linear spec {spec:?} must restrict to negative type"
                );
            }
        }
    }

    #[test]
    fn frozen_table_is_a_diversity_but_not_negative_type() {
        let t = frozen_non_negative_type_table();
        assert!(check_table_axioms(&t, 1e-9).is_empty(), "fixture must be a diversity");
        let r = negative_type(&t, None).unwrap();
        assert!(!r.decision);
        assert!(
            r.max_projected_eigenvalue > 0.1,
            "eigenvalue {}",
            r.max_projected_eigenvalue
        );
        assert!((r.max_projected_eigenvalue - 0.1558).abs() < 5e-3);
        let x = r.certificate.expect("failing decision carries a certificate");
        assert!(x.iter().sum::<f64>().abs() < 1e-10);
        let q = union_matrix(&t).quad_form(&x);
        assert!(q > 0.0, "certificate form value {q}");
        assert!(!linear_embeddable(&t, None).unwrap());
    }

    #[test]
    fn negative_type_decision_is_scale_equivariant() {
        for c in [0.02, 1.0, 50.0] {
            let bad = frozen_non_negative_type_table().scale(c).unwrap();
            assert!(!negative_type(&bad, None).unwrap().decision, "c = {c}");
            let mut rng = ChaCha8Rng::seed_from_u64(35);
            let good = restrict(&DiversitySpec::L1, &rand_labeled(&mut rng, 2, 4))
                .unwrap()
                .scale(c)
                .unwrap();
            assert!(negative_type(&good, None).unwrap().decision, "c = {c}");
        }
    }

    #[test]
    fn restrict_respects_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let pts = rand_labeled(&mut rng, 2, 4);
        let spec = DiversitySpec::Diameter { norm: Norm::L2 };
        let t = restrict(&spec, &pts).unwrap();
        let mut permuted = pts.clone();
        permuted.rotate_left(1);
        let tp = restrict(&spec, &permuted).unwrap();
        // compare through label subsets rather than raw masks
        for mask in 1..(1usize << 4) {
            let labels = t.labels_of(mask);
            let m2 = tp.mask_of(&labels).unwrap();
            assert!((t.value(mask) - tp.value(m2)).abs() < 1e-12);
        }
    }

    #[test]
    fn max_decomposition_verifies() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let pts = rand_labeled(&mut rng, 2, 4);
        let tri = SimplexKernelSpec::new(
            vec![
                Vector(vec![1.0, 0.0]),
                Vector(vec![0.0, 1.0]),
                Vector(vec![-1.0, -1.0]),
            ],
            vec![1.0 / 3.0; 3],
        )
        .unwrap();
        let l1 = DiversitySpec::L1;
        let cf = DiversitySpec::SimplexClosedForm { spec: tri };
        let combined = DiversitySpec::MaxOf {
            specs: vec![l1.clone(), cf.clone()],
        };
        let t = restrict(&combined, &pts).unwrap();
        let parts = vec![restrict(&l1, &pts).unwrap(), restrict(&cf, &pts).unwrap()];
        assert!(verify_max_decomposition(&t, &parts, 1e-9).unwrap());
        // a single negative-type part reproduces itself
        assert!(verify_max_decomposition(&parts[0], &parts[..1], 1e-9).unwrap());
        // parts whose max undershoots some subset fail the verification
        let bumped = t.scale(1.1).unwrap();
        assert!(!verify_max_decomposition(&bumped, &parts, 1e-9).unwrap());
        // a part that is not of negative type fails even when the max matches
        let bad = frozen_non_negative_type_table();
        assert!(!verify_max_decomposition(&bad, &[bad.clone()], 1e-9).unwrap());
    }

    #[test]
    fn max_decomposition_ground_mismatch() {
        let t = DiversityTable::from_values(vec!["a".into(), "b".into()], vec![0.0; 4]).unwrap();
        let p = DiversityTable::from_values(vec!["a".into(), "c".into()], vec![0.0; 4]).unwrap();
        assert!(matches!(
            verify_max_decomposition(&t, &[p], 1e-9),
            Err(Error::GroundMismatch)
        ));
    }

    #[test]
    fn caps_enforced() {
        let ground: Vec<String> = (0..21).map(|i| format!("g{i}")).collect();
        assert!(matches!(
            DiversityTable::from_values(ground, vec![0.0; 1 << 21]),
            Err(Error::GroundTooLarge { cap: 20, .. })
        ));
        let ground9: Vec<String> = (0..9).map(|i| format!("g{i}")).collect();
        let t = DiversityTable::from_values(ground9, vec![0.0; 1 << 9]).unwrap();
        assert!(matches!(
            negative_type(&t, None),
            Err(Error::GroundTooLarge { cap: 8, .. })
        ));
    }

    #[test]
    fn json_round_trip_and_defaults() {
        let t = frozen_non_negative_type_table();
        let j = serde_json::to_string(&t).unwrap();
        let back: DiversityTable = serde_json::from_str(&j).unwrap();
        assert_eq!(t, back);

        // singletons may be omitted
        let parsed: DiversityTable = serde_json::from_str(
            r#"{"ground":["a","b"],"values":[{"subset":["a","b"],"value":1.5}]}"#,
        )
        .unwrap();
        assert_eq!(parsed.value(0b11), 1.5);
        assert_eq!(parsed.value(0b01), 0.0);

        // non-singleton subsets may not be omitted
        let missing: std::result::Result<DiversityTable, _> = serde_json::from_str(
            r#"{"ground":["a","b","c"],"values":[{"subset":["a","b","c"],"value":2.0}]}"#,
        );
        assert!(missing.is_err());

        // unknown labels rejected
        let unknown: std::result::Result<DiversityTable, _> = serde_json::from_str(
            r#"{"ground":["a","b"],"values":[{"subset":["a","z"],"value":1.0}]}"#,
        );
        assert!(unknown.is_err());

        // negative values rejected
        let negative: std::result::Result<DiversityTable, _> = serde_json::from_str(
            r#"{"ground":["a","b"],"values":[{"subset":["a","b"],"value":-1.0}]}"#,
        );
        assert!(negative.is_err());
    }
}
