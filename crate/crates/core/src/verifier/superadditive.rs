use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};
use crate::matrix::{superadditivity_gap, PowerKind, PowerMap, PsdVerdict};
use crate::real::Real;

use super::search::coordinate_descent;
use super::{trial_rng, PowerSpec};

/// Vectors `u, v` with `f[uuᵀ + vvᵀ] - f[uuᵀ] - f[vvᵀ]` not PSD;
/// nonnegative for the plain family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuperadditiveViolation {
    pub power: PowerSpec,
    pub u: Vec<Real>,
    pub v: Vec<Real>,
    pub verdict: PsdVerdict,
}

fn gap_min(p: PowerMap, u: &[f64], v: &[f64]) -> f64 {
    match superadditivity_gap(p, u, v) {
        Ok(verdict) => verdict.min_eigenvalue.0 / norm_scale(p, u, v),
        Err(_) => f64::INFINITY,
    }
}

/// `(|u|² + |v|²)^α`, the homogeneity scale of the gap.
fn norm_scale(p: PowerMap, u: &[f64], v: &[f64]) -> f64 {
    let s: f64 = u.iter().chain(v).map(|x| x * x).sum();
    s.powf(p.alpha).max(f64::MIN_POSITIVE)
}

/// Searches pairs `u, v` for a violation of Loewner super-additivity of
/// `p` on `m × m` matrices. Plain powers are searched over `[0, ∞)^m`
/// (parameters enter squared), the odd and even families over `ℝ^m`.
///
/// Structured pairs `u = 1`, `v = √t · (1, 2, …, m)/m` (with alternating
/// signs for the signed families) are tried first, then `budget` random
/// pairs, then coordinate descent from the best few pairs.
pub fn superadditive_falsify(
    m: usize,
    p: PowerMap,
    budget: usize,
    seed: u64,
) -> Result<Option<SuperadditiveViolation>> {
    if m == 0 {
        return Err(arg("super-additivity search needs m >= 1"));
    }
    let found = |u: &[f64], v: &[f64]| -> Result<Option<SuperadditiveViolation>> {
        let verdict = superadditivity_gap(p, u, v)?;
        Ok((!verdict.is_psd).then(|| SuperadditiveViolation {
            power: p.into(),
            u: u.iter().map(|&x| Real(x)).collect(),
            v: v.iter().map(|&x| Real(x)).collect(),
            verdict,
        }))
    };

    let mut pool: Vec<(f64, Vec<f64>)> = Vec::new();
    let signed = p.kind != PowerKind::Plain;
    let decode = |theta: &[f64]| split(theta, signed);
    let consider = |theta: Vec<f64>, pool: &mut Vec<(f64, Vec<f64>)>| {
        let (u, v) = decode(&theta);
        let value = gap_min(p, &u, &v);
        pool.push((value, theta));
        pool.sort_by(|a, b| a.0.total_cmp(&b.0));
        pool.truncate(4);
    };

    for t in [1e-1f64, 1e-2, 1e-3, 1e-4] {
        let u = vec![1.0; m];
        let v: Vec<f64> = (1..=m)
            .map(|i| {
                let sign = if signed && i % 2 == 0 { -1.0 } else { 1.0 };
                sign * t.sqrt() * i as f64 / m as f64
            })
            .collect();
        if let Some(x) = found(&u, &v)? {
            return Ok(Some(x));
        }
        let encode = |x: &f64| if signed { *x } else { x.sqrt() };
        consider(u.iter().chain(&v).map(encode).collect(), &mut pool);
    }
    for trial in 0..budget {
        let mut rng = trial_rng(seed, trial as u64);
        let theta: Vec<f64> = (0..2 * m)
            .map(|_| if signed { rng.random_range(-1.0..1.0) } else { rng.random::<f64>() })
            .collect();
        let (u, v) = decode(&theta);
        if let Some(x) = found(&u, &v)? {
            return Ok(Some(x));
        }
        consider(theta, &mut pool);
    }
    for (_, mut theta) in pool {
        coordinate_descent(
            &mut theta,
            |th| {
                let (u, v) = decode(th);
                gap_min(p, &u, &v)
            },
            200,
            -1e-6,
        );
        let (u, v) = decode(&theta);
        if let Some(x) = found(&u, &v)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn split(theta: &[f64], signed: bool) -> (Vec<f64>, Vec<f64>) {
    let half = theta.len() / 2;
    let f = |x: &f64| if signed { *x } else { x * x };
    (theta[..half].iter().map(f).collect(), theta[half..].iter().map(f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_fractional_power_below_m_fails() {
        let x = superadditive_falsify(3, PowerMap::new(PowerKind::Plain, 2.5), 1000, 0).unwrap();
        let x = x.expect("violation");
        let u: Vec<f64> = x.u.iter().map(|r| r.0).collect();
        let v: Vec<f64> = x.v.iter().map(|r| r.0).collect();
        assert!(u.iter().chain(&v).all(|&t| t >= 0.0));
        assert!(!superadditivity_gap(PowerMap::new(PowerKind::Plain, 2.5), &u, &v).unwrap().is_psd);
    }

    #[test]
    fn integer_and_large_powers_hold() {
        for alpha in [1.0, 2.0, 3.0, 3.5] {
            let p = PowerMap::new(PowerKind::Plain, alpha);
            assert!(superadditive_falsify(3, p, 300, 0).unwrap().is_none(), "{alpha}");
        }
    }

    #[test]
    fn signed_families() {
        let found = |m, kind, alpha| {
            superadditive_falsify(m, PowerMap::new(kind, alpha), 2000, 0).unwrap().is_some()
        };
        assert!(found(2, PowerKind::EvenPhi, 1.0));
        assert!(found(3, PowerKind::OddPsi, 2.0));
        assert!(!found(2, PowerKind::OddPsi, 1.0));
        assert!(!found(2, PowerKind::EvenPhi, 2.0));
    }

    #[test]
    fn scalar_case() {
        assert!(superadditive_falsify(0, PowerMap::new(PowerKind::Plain, 1.0), 1, 0).is_err());
        // (u² + v²)^a < u^{2a} + v^{2a} for a < 1
        assert!(superadditive_falsify(1, PowerMap::new(PowerKind::Plain, 0.5), 10, 0)
            .unwrap()
            .is_some());
        assert!(superadditive_falsify(1, PowerMap::new(PowerKind::Plain, 1.5), 10, 0)
            .unwrap()
            .is_none());
    }
}
