//! Interference detection in sequential composition.
//!
//! Given a reference response Y, a sequentially-composed response Y′, and
//! the interposed response X, a commutative linear composition would make
//! the change ΔY = Y′−Y track the cause ΔX = X−Y. Interference shows up as
//! r′ = corr(ΔY, ΔX) falling well below r = corr(Y′, X) while the shuffled
//! surrogate r″ = corr(Y′−Y_r, X−Y_r) stays high: the drop needs the true
//! component alignment of Y, not just its magnitude profile.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{AqsError, Result};
use crate::rng::indexed_substream;

use super::stats::pearson;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterferenceReport {
    pub r: f64,
    pub r_prime: f64,
    pub r_surrogate_mean: f64,
    pub r_surrogate_std: f64,
    pub n_shuffles: usize,
    pub seed: u64,
}

fn check_triple(y: &[f64], yp: &[f64], x: &[f64]) -> Result<()> {
    for other in [yp.len(), x.len()] {
        if other != y.len() {
            return Err(AqsError::DimMismatch {
                left: y.len(),
                right: other,
            });
        }
    }
    if y.len() < 3 {
        return Err(AqsError::TooFewPoints {
            need: 3,
            got: y.len(),
        });
    }
    Ok(())
}

/// r = corr(Y′, X) and r′ = corr(Y′−Y, X−Y).
pub fn interference_stats(y: &[f64], yp: &[f64], x: &[f64]) -> Result<(f64, f64)> {
    check_triple(y, yp, x)?;
    let dy: Vec<f64> = yp.iter().zip(y).map(|(a, b)| a - b).collect();
    let dx: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    Ok((pearson(yp, x)?, pearson(&dy, &dx)?))
}

/// corr(Y′−ref, X−ref) for an arbitrary reference vector. With the true Y
/// as reference this is exactly r′; surrogates pass a shuffled Y.
pub fn correlation_against_reference(yp: &[f64], x: &[f64], reference: &[f64]) -> Result<f64> {
    check_triple(reference, yp, x)?;
    let dy: Vec<f64> = yp.iter().zip(reference).map(|(a, b)| a - b).collect();
    let dx: Vec<f64> = x.iter().zip(reference).map(|(a, b)| a - b).collect();
    pearson(&dy, &dx)
}

/// Shuffles Y's components `n_shuffles` times (seeded, one stream per
/// iteration) and reports the surrogate correlation mean and population
/// standard deviation alongside r and r′.
pub fn interference_surrogate(
    y: &[f64],
    yp: &[f64],
    x: &[f64],
    n_shuffles: usize,
    seed: u64,
) -> Result<InterferenceReport> {
    if n_shuffles == 0 {
        return Err(AqsError::invalid_field("n_shuffles", "must be ≥ 1"));
    }
    let (r, r_prime) = interference_stats(y, yp, x)?;
    let mut values = Vec::with_capacity(n_shuffles);
    for iter in 0..n_shuffles {
        let mut rng = indexed_substream(seed, "interference-shuffle", iter as u64);
        let mut shuffled = y.to_vec();
        shuffled.shuffle(&mut rng);
        values.push(correlation_against_reference(yp, x, &shuffled)?);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok(InterferenceReport {
        r,
        r_prime,
        r_surrogate_mean: mean,
        r_surrogate_std: var.sqrt(),
        n_shuffles,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn composed_equal_to_cause_gives_unit_r() {
        let y = vec![1.0, -2.0, 0.5, 3.0];
        let x = vec![0.2, 1.4, -0.7, 2.0];
        let (r, _) = interference_stats(&y, &x, &x).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn change_along_the_cause_gives_unit_r_prime() {
        // Y′ = Y + α(X−Y): the change vector is exactly collinear with the
        // cause vector.
        let y = vec![1.0, -2.0, 0.5, 3.0, 0.0];
        let x = vec![0.2, 1.4, -0.7, 2.0, 1.0];
        let alpha = 0.4;
        let yp: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a + alpha * (b - a)).collect();
        let (_, r_prime) = interference_stats(&y, &yp, &x).unwrap();
        assert!((r_prime - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_reference_recovers_r_prime() {
        let y = vec![1.0, -2.0, 0.5, 3.0, 0.7];
        let x = vec![0.2, 1.4, -0.7, 2.0, -0.3];
        let yp = vec![0.9, -1.0, 0.0, 2.4, 0.5];
        let (_, r_prime) = interference_stats(&y, &yp, &x).unwrap();
        let r_ref = correlation_against_reference(&yp, &x, &y).unwrap();
        assert_eq!(r_prime, r_ref);
    }

    #[test]
    fn shared_permutation_leaves_stats_unchanged() {
        let y = vec![1.0, -2.0, 0.5, 3.0, 0.7, -1.1];
        let x = vec![0.2, 1.4, -0.7, 2.0, -0.3, 0.9];
        let yp = vec![0.9, -1.0, 0.0, 2.4, 0.5, -0.2];
        let (r, r_prime) = interference_stats(&y, &yp, &x).unwrap();
        let perm = [5usize, 2, 0, 4, 1, 3];
        let apply = |v: &[f64]| -> Vec<f64> { perm.iter().map(|&i| v[i]).collect() };
        let (r2, r2_prime) = interference_stats(&apply(&y), &apply(&yp), &apply(&x)).unwrap();
        assert!((r - r2).abs() < 1e-12);
        assert!((r_prime - r2_prime).abs() < 1e-12);
    }

    #[test]
    fn sign_mixed_composition_shows_interference() {
        // Half the components move toward X, half away. The change vector
        // decorrelates from the cause while the shuffled surrogate stays
        // high.
        let dim = 256;
        let mut r_y = rng::substream(5, "e3-y");
        let y: Vec<f64> = (0..dim).map(|_| rng::standard_normal(&mut r_y)).collect();
        let mut r_n = rng::substream(5, "e3-noise");
        let x: Vec<f64> = y
            .iter()
            .map(|v| 0.8 * v + 0.6 * rng::standard_normal(&mut r_n))
            .collect();
        let alpha = 0.5;
        let yp: Vec<f64> = y
            .iter()
            .zip(&x)
            .enumerate()
            .map(|(i, (a, b))| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                a + sign * alpha * (b - a)
            })
            .collect();
        let report = interference_surrogate(&y, &yp, &x, 300, 5).unwrap();
        assert!(
            report.r_prime < report.r,
            "r′ {} should fall below r {}",
            report.r_prime,
            report.r
        );
        assert!(
            report.r_surrogate_mean > report.r_prime,
            "surrogate mean {} should exceed r′ {}",
            report.r_surrogate_mean,
            report.r_prime
        );
        for v in [report.r, report.r_prime, report.r_surrogate_mean] {
            assert!((-1.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn surrogate_is_deterministic_per_seed() {
        let y = vec![1.0, -2.0, 0.5, 3.0, 0.7, -1.1];
        let x = vec![0.2, 1.4, -0.7, 2.0, -0.3, 0.9];
        let yp = vec![0.9, -1.0, 0.0, 2.4, 0.5, -0.2];
        let a = interference_surrogate(&y, &yp, &x, 100, 9).unwrap();
        let b = interference_surrogate(&y, &yp, &x, 100, 9).unwrap();
        assert_eq!(a.r_surrogate_mean, b.r_surrogate_mean);
        assert_eq!(a.r_surrogate_std, b.r_surrogate_std);
    }
}
