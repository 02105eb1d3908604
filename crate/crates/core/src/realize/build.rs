use super::{RealizeError, Realization, Vector};
use crate::construct::{validate_states, CliqueVertexState, StateMultiset};

/// The ten rays of the three-dimensional bug and its TITS extension, in
/// vertex order A, v1..v6, B, v7, C.
pub fn tits_vectors() -> Vec<Vector> {
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    vec![
        vec![1.0 / s3, 1.0 / s3, 1.0 / s3],
        vec![1.0 / s2, -1.0 / s2, 0.0],
        vec![1.0 / s2, 0.0, -1.0 / s2],
        vec![0.0, 0.0, 1.0],
        vec![0.0, 1.0, 0.0],
        vec![1.0 / s2, 1.0 / s2, 0.0],
        vec![1.0 / s2, 0.0, 1.0 / s2],
        vec![-1.0 / s3, 1.0 / s3, 1.0 / s3],
        vec![0.0, 1.0 / s2, -1.0 / s2],
        vec![2.0 / s6, 1.0 / s6, 1.0 / s6],
    ]
}

/// Bug rays used by every dimension, padded to `d` components: A, v1..v6,
/// B with A.B = -1/3.
pub fn bug_base_vectors(d: usize) -> Vec<Vector> {
    let (s2, s3) = (2f64.sqrt(), 3f64.sqrt());
    let base: [[f64; 3]; 8] = [
        [0.0, -1.0 / s3, s2 / s3],
        [0.5, s2 / 2.0, 0.5],
        [1.0, 0.0, 0.0],
        [1.0 / s2, 0.0, -1.0 / s2],
        [0.0, 1.0, 0.0],
        [-0.5, s2 / 2.0, -0.5],
        [0.0, 0.0, 1.0],
        [s2 / s3, 1.0 / s3, 0.0],
    ];
    base.iter()
        .map(|b| {
            let mut v = vec![0.0; d.max(3)];
            v[..3].copy_from_slice(b);
            v
        })
        .collect()
}

/// Rays for `construct::minimal_tifs(d, states)`.
///
/// Added clique vertex `k` is the axis `e(3+k)`. A gets weight
/// `epsilon / sqrt(m)` on each of the `m` axes of clique vertices not
/// adjacent to it, its base part scaled by `sqrt(1 - epsilon^2)`; B the same
/// with its own non-neighbours. A side with no such axes is left unchanged.
pub fn build_minimal_tifs_realization(
    d: usize,
    states: &StateMultiset,
    epsilon: f64,
) -> Result<Realization, RealizeError> {
    validate_states(d, states)?;
    if !(0.0..1.0).contains(&epsilon) {
        return Err(RealizeError::EpsilonRange(epsilon));
    }
    let list = states.states();
    if epsilon == 0.0 && list.iter().any(|&s| s != CliqueVertexState::AdjBoth) {
        return Err(RealizeError::EpsilonZero);
    }
    let mut vectors = bug_base_vectors(d);
    let axes = |skip: CliqueVertexState| -> Vec<usize> {
        list.iter()
            .enumerate()
            .filter(|&(_, &s)| s == skip)
            .map(|(k, _)| 3 + k)
            .collect()
    };
    // A misses the clique vertices adjacent to B only, and vice versa
    for (vertex, missing) in [(0, axes(CliqueVertexState::AdjB)), (7, axes(CliqueVertexState::AdjA))] {
        if missing.is_empty() {
            continue;
        }
        let scale = (1.0 - epsilon * epsilon).sqrt();
        let share = epsilon / (missing.len() as f64).sqrt();
        let v = &mut vectors[vertex];
        for x in v.iter_mut() {
            *x *= scale;
        }
        for &ax in &missing {
            v[ax] = share;
        }
    }
    for k in 0..list.len() {
        let mut e = vec![0.0; d];
        e[3 + k] = 1.0;
        vectors.push(e);
    }
    Realization::new(vectors, epsilon, 1e-12)
}
