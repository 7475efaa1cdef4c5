use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::SampleConfig;
use crate::chordal::maximal_cliques;
use crate::error::Result;
use crate::graph::Graph;
use crate::matrix::SymMatrix;

/// Random stream for trial `trial` under `seed`; independent of the order
/// in which trials run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A Gram block `F Fᵀ` placed on the rows `support`, with `F` of shape
/// `|support| × rank` stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub support: Vec<usize>,
    pub rank: usize,
}

/// Matrices `Σ_c embed(F_c F_cᵀ)` parameterized by the entries of the
/// factors. With `nonnegative` set, each parameter enters squared, which
/// keeps every entry of the result nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorModel {
    pub n: usize,
    pub factors: Vec<Factor>,
    pub nonnegative: bool,
}

impl FactorModel {
    pub fn parameter_count(&self) -> usize {
        self.factors.iter().map(|f| f.support.len() * f.rank).sum()
    }

    pub fn matrix(&self, theta: &[f64]) -> SymMatrix {
        debug_assert_eq!(theta.len(), self.parameter_count());
        let mut m = SymMatrix::zeros(self.n);
        let mut offset = 0;
        for f in &self.factors {
            let k = f.rank;
            let entry = |row: usize, col: usize| {
                let x = theta[offset + row * k + col];
                if self.nonnegative {
                    x * x
                } else {
                    x
                }
            };
            for (a, &i) in f.support.iter().enumerate() {
                for (b, &j) in f.support.iter().enumerate().skip(a) {
                    let dot: f64 = (0..k).map(|c| entry(a, c) * entry(b, c)).sum();
                    m.set(i, j, m.get(i, j) + dot);
                }
            }
            offset += f.support.len() * k;
        }
        m
    }
}

/// Draws matrices of `P_G` as sums of random Gram blocks over the maximal
/// cliques of `G`.
#[derive(Clone, Debug)]
pub struct ConeSampler {
    n: usize,
    cliques: Vec<Vec<usize>>,
    entry_scale: f64,
    seed: u64,
}

impl ConeSampler {
    pub fn new(g: &Graph, cfg: &SampleConfig, cap: usize) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            n: g.vertex_count(),
            cliques: maximal_cliques(g, cap)?,
            entry_scale: cfg.entry_scale,
            seed: cfg.seed,
        })
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    /// Model and parameters for trial `trial`: for each clique a rank drawn
    /// uniformly from `1..=|C|` and standard normal entries times the scale.
    pub fn draw(&self, trial: u64, nonnegative: bool) -> (FactorModel, Vec<f64>) {
        let mut rng = trial_rng(self.seed, trial);
        let mut factors = Vec::with_capacity(self.cliques.len());
        let mut theta = Vec::new();
        for c in &self.cliques {
            let rank = rng.random_range(1..=c.len());
            for _ in 0..c.len() * rank {
                let z: f64 = rng.sample(StandardNormal);
                theta.push(z * self.entry_scale);
            }
            factors.push(Factor {
                support: c.clone(),
                rank,
            });
        }
        let model = FactorModel {
            n: self.n,
            factors,
            nonnegative,
        };
        (model, theta)
    }

    pub fn sample(&self, trial: u64, nonnegative: bool) -> SymMatrix {
        let (model, theta) = self.draw(trial, nonnegative);
        model.matrix(&theta)
    }
}

/// One clique-sum sample of `P_G` for `trial` (signed entries).
pub fn sample_cone(g: &Graph, cfg: &SampleConfig, trial: u64) -> Result<SymMatrix> {
    Ok(ConeSampler::new(g, cfg, crate::graph::DEFAULT_VERTEX_CAP)?.sample(trial, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::matrix::in_cone;

    #[test]
    fn samples_lie_in_the_cone() {
        let cfg = SampleConfig::default();
        for s in ["complete:2", "path:3", "cycle:5", "band:7,3", "complete_bipartite:2,3"] {
            let g = generate(&s.parse::<FamilySpec>().unwrap()).unwrap();
            let sampler = ConeSampler::new(&g, &cfg, 64).unwrap();
            for t in 0..50 {
                for nonneg in [false, true] {
                    let m = sampler.sample(t, nonneg);
                    assert!(in_cone(&m, &g, None).unwrap(), "{s} trial {t}");
                    if nonneg {
                        assert!(m.upper_entries().all(|(_, _, x)| x >= 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn path_samples_keep_the_structural_zero() {
        let g = generate(&FamilySpec::Path { n: 3 }).unwrap();
        let m = sample_cone(&g, &SampleConfig::default(), 7).unwrap();
        assert_eq!(m.get(0, 2), 0.0);
    }

    #[test]
    fn trials_are_reproducible_and_distinct() {
        let g = generate(&FamilySpec::Complete { n: 4 }).unwrap();
        let cfg = SampleConfig::default();
        assert_eq!(sample_cone(&g, &cfg, 3).unwrap(), sample_cone(&g, &cfg, 3).unwrap());
        assert_ne!(sample_cone(&g, &cfg, 3).unwrap(), sample_cone(&g, &cfg, 4).unwrap());
        let other = SampleConfig {
            seed: 1,
            ..cfg.clone()
        };
        assert_ne!(sample_cone(&g, &cfg, 3).unwrap(), sample_cone(&g, &other, 3).unwrap());
    }
}
