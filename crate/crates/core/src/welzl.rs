//! Smallest enclosing Euclidean ball by Welzl's algorithm with move-to-front.
//!
//! The recursion keeps a boundary set of at most k+1 affinely independent
//! points; the ball through a boundary set has its center in their affine
//! hull, found by solving the Gram system `2 G β = g` with
//! `G = [qᵢ·qⱼ]`, `g = [|qᵢ|²]`, `qᵢ = rᵢ − r₀`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::Vector;
use crate::numerics::gauss_solve;

#[derive(Clone, Debug)]
pub(crate) struct Ball {
    pub center: Vector,
    pub radius2: f64,
}

impl Ball {
    fn nothing(dim: usize) -> Ball {
        Ball {
            center: Vector::zeros(dim),
            radius2: -1.0,
        }
    }

    fn contains(&self, p: &Vector) -> bool {
        let d = p.sub(&self.center);
        // Relative slack keeps numerically cocircular points from churning
        // the boundary set; the final radius is still set by an exact solve.
        d.dot(&d) <= self.radius2 + 1e-10 * (1.0 + self.radius2.abs())
    }
}

/// Ball having every point of `boundary` on its sphere, center in their
/// affine hull. A tiny ridge keeps the Gram solve defined for numerically
/// dependent boundary sets.
fn ball_from_boundary(boundary: &[Vector], dim: usize) -> Ball {
    match boundary.len() {
        0 => Ball::nothing(dim),
        1 => Ball {
            center: boundary[0].clone(),
            radius2: 0.0,
        },
        j1 => {
            let j = j1 - 1;
            let r0 = &boundary[0];
            let q: Vec<Vector> = boundary[1..].iter().map(|r| r.sub(r0)).collect();
            let mut m = vec![vec![0.0; j + 1]; j];
            for i in 0..j {
                for l in 0..j {
                    m[i][l] = 2.0 * q[i].dot(&q[l]);
                }
                m[i][j] = q[i].dot(&q[i]);
            }
            let trace: f64 = (0..j).map(|i| m[i][i]).sum();
            let ridge = 1e-13 * (trace / j as f64).max(1e-30);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += ridge;
            }
            gauss_solve(&mut m, j);
            let mut center = r0.clone();
            for (i, qi) in q.iter().enumerate() {
                center = center.add(&qi.scale(m[i][j]));
            }
            let d = center.sub(r0);
            Ball {
                center,
                radius2: d.dot(&d),
            }
        }
    }
}

fn welzl_rec(pts: &mut [Vector], limit: usize, boundary: &mut Vec<Vector>, dim: usize) -> Ball {
    let mut ball = ball_from_boundary(boundary, dim);
    if boundary.len() == dim + 1 {
        return ball;
    }
    let mut i = 0;
    while i < limit {
        if !ball.contains(&pts[i]) {
            boundary.push(pts[i].clone());
            ball = welzl_rec(pts, i, boundary, dim);
            boundary.pop();
            pts[..=i].rotate_right(1);
        }
        i += 1;
    }
    ball
}

/// Smallest ball enclosing `points` (nonempty). Deterministic: the initial
/// shuffle is fixed-seeded.
pub(crate) fn smallest_enclosing_ball(points: &[Vector], dim: usize) -> Ball {
    debug_assert!(!points.is_empty());
    let mut pts = points.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba11);
    pts.shuffle(&mut rng);
    let n = pts.len();
    let mut boundary = Vec::with_capacity(dim + 1);
    welzl_rec(&mut pts, n, &mut boundary, dim)
}
