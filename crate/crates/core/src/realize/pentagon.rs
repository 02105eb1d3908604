//! Three-dimensional bug realizations generated from the pentagon
//! A-v1-v3-v4-v2 by cross products.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::{cross, dot, norm, normalized, verify, RealizeError, Realization, Vector};
use crate::construct::{bug, tits_from_tifs};

const ORTHO_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PentagonCompletion {
    pub v5: Vector,
    pub v6: Vector,
    pub b: Vector,
    pub v7: Vector,
    pub c: Vector,
}

impl PentagonCompletion {
    /// All ten rays in vertex order A, v1..v6, B, v7, C.
    pub fn with_inputs(&self, a: &[f64], v1: &[f64], v2: &[f64], v3: &[f64], v4: &[f64]) -> Vec<Vector> {
        vec![
            normalized(a),
            normalized(v1),
            normalized(v2),
            normalized(v3),
            normalized(v4),
            self.v5.clone(),
            self.v6.clone(),
            self.b.clone(),
            self.v7.clone(),
            self.c.clone(),
        ]
    }
}

fn check3(vs: &[&[f64]]) -> Result<(), RealizeError> {
    for (i, v) in vs.iter().enumerate() {
        if v.len() != 3 {
            return Err(RealizeError::Dimension {
                index: i,
                expected: 3,
                got: v.len(),
            });
        }
        if norm(v) == 0.0 {
            return Err(RealizeError::ZeroVector(i));
        }
    }
    Ok(())
}

fn product(x: &[f64], y: &[f64], name: &'static str) -> Result<Vector, RealizeError> {
    let p = cross(&normalized(x), &normalized(y));
    if norm(&p) < 1e-12 {
        return Err(RealizeError::Degenerate(name));
    }
    Ok(normalized(&p))
}

fn orthogonal(x: &[f64], y: &[f64], name: &'static str) -> Result<(), RealizeError> {
    if dot(&normalized(x), &normalized(y)).abs() > ORTHO_TOL {
        return Err(RealizeError::NotOrthogonal(name));
    }
    Ok(())
}

/// Completes a pentagon to the ten-vertex TITS: v5 = v1 x v3, v6 = v2 x v4,
/// B = v5 x v6, v7 = a x B, C = B x v7, all normalized.
pub fn complete_from_pentagon(
    a: &[f64],
    v1: &[f64],
    v2: &[f64],
    v3: &[f64],
    v4: &[f64],
) -> Result<PentagonCompletion, RealizeError> {
    check3(&[a, v1, v2, v3, v4])?;
    let v5 = product(v1, v3, "v1 x v3")?;
    let v6 = product(v2, v4, "v2 x v4")?;
    orthogonal(a, v1, "a.v1")?;
    orthogonal(a, v2, "a.v2")?;
    orthogonal(v1, v3, "v1.v3")?;
    orthogonal(v2, v4, "v2.v4")?;
    orthogonal(v3, v4, "v3.v4")?;
    let b = product(&v5, &v6, "v5 x v6")?;
    let v7 = product(a, &b, "a x B")?;
    let c = product(&b, &v7, "B x v7")?;
    Ok(PentagonCompletion { v5, v6, b, v7, c })
}

/// Fills in v1 = a x v3 and v2 = a x v4 from the nonconsecutive vertices.
pub fn pentagon_from_anchor(a: &[f64], v3: &[f64], v4: &[f64]) -> Result<(Vector, Vector), RealizeError> {
    check3(&[a, v3, v4])?;
    orthogonal(v3, v4, "v3.v4")?;
    Ok((product(a, v3, "a x v3")?, product(a, v4, "a x v4")?))
}

/// Angle between A and B for the bug grown from `(a, v3, v4)`.
pub fn pentagon_angle(a: &[f64], v3: &[f64], v4: &[f64]) -> Result<f64, RealizeError> {
    let (v1, v2) = pentagon_from_anchor(a, v3, v4)?;
    let done = complete_from_pentagon(a, &v1, &v2, v3, v4)?;
    Ok(dot(&normalized(a), &done.b).abs().min(1.0).acos())
}

#[derive(Clone, Debug, Serialize)]
pub struct MinAngleResult {
    pub angle: f64,
    pub realization: Realization,
    pub trial: usize,
}

const V3: [f64; 3] = [0.0, 0.0, 1.0];
const V4: [f64; 3] = [0.0, 1.0, 0.0];

fn cosine(a: &[f64]) -> Option<f64> {
    pentagon_angle(a, &V3, &V4).ok().map(f64::cos)
}

/// Gradient ascent of |cos(A, B)| over the anchor `a`, on the sphere.
fn climb(mut a: Vector, iterations: usize) -> Vector {
    let h = 1e-7;
    let mut step = 0.1;
    let Some(mut best) = cosine(&a) else { return a };
    for _ in 0..iterations {
        let mut grad = [0.0; 3];
        for (i, g) in grad.iter_mut().enumerate() {
            let mut p = a.clone();
            let mut m = a.clone();
            p[i] += h;
            m[i] -= h;
            match (cosine(&p), cosine(&m)) {
                (Some(fp), Some(fm)) => *g = (fp - fm) / (2.0 * h),
                _ => return a,
            }
        }
        let along = dot(&grad, &a);
        let tangent: Vec<f64> = grad.iter().zip(&a).map(|(g, x)| g - along * x).collect();
        if norm(&tangent) < 1e-14 {
            break;
        }
        loop {
            let cand = normalized(&a.iter().zip(&tangent).map(|(x, t)| x + step * t).collect::<Vec<_>>());
            match cosine(&cand) {
                Some(c) if c > best => {
                    a = cand;
                    best = c;
                    step *= 1.5;
                    break;
                }
                _ => {
                    step *= 0.5;
                    if step < 1e-15 {
                        return a;
                    }
                }
            }
        }
    }
    a
}

/// Multi-start local search for the smallest faithful A-B angle of the
/// three-dimensional bug. Trial `t` draws its start from stream `t` of a
/// ChaCha8 generator seeded with `seed`.
pub fn min_angle_search(trials: usize, iterations: usize, seed: u64) -> Result<MinAngleResult, RealizeError> {
    if trials == 0 {
        return Err(RealizeError::NoTrials);
    }
    let g = tits_from_tifs(&bug()).expect("bug extends").graph;
    let best = (0..trials)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let start: Vector = (0..3).map(|_| StandardNormal.sample(&mut rng)).collect();
            if norm(&start) == 0.0 {
                return None;
            }
            let a = climb(normalized(&start), iterations);
            let (v1, v2) = pentagon_from_anchor(&a, &V3, &V4).ok()?;
            let done = complete_from_pentagon(&a, &v1, &v2, &V3, &V4).ok()?;
            let r = Realization::new(done.with_inputs(&a, &v1, &v2, &V3, &V4), 0.0, ORTHO_TOL).ok()?;
            if !verify(&r, &g).ok()?.pass {
                return None;
            }
            let angle = dot(&r.vectors[0], &r.vectors[7]).abs().min(1.0).acos();
            Some(MinAngleResult { angle, realization: r, trial: t })
        })
        .min_by(|x, y| x.angle.total_cmp(&y.angle).then(x.trial.cmp(&y.trial)));
    best.ok_or(RealizeError::NoTrials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::tits_vectors;

    #[test]
    fn reference_anchor_attains_bound() {
        let v = tits_vectors();
        let angle = pentagon_angle(&v[0], &v[3], &v[4]).unwrap();
        assert!((angle - (1.0f64 / 3.0).acos()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_products_are_named() {
        let v = tits_vectors();
        let err = complete_from_pentagon(&v[0], &v[1], &v[2], &v[1], &v[4]);
        assert_eq!(err, Err(RealizeError::Degenerate("v1 x v3")));
        let err = complete_from_pentagon(&v[0], &v[1], &v[2], &v[4], &v[3]);
        assert_eq!(err, Err(RealizeError::NotOrthogonal("v1.v3")));
        let e1 = [1.0, 0.0, 0.0];
        assert_eq!(pentagon_from_anchor(&V3, &e1, &[1.0, 1.0, 0.0]), Err(RealizeError::NotOrthogonal("v3.v4")));
        assert_eq!(pentagon_from_anchor(&V3, &V3, &V4), Err(RealizeError::Degenerate("a x v3")));
    }
}
