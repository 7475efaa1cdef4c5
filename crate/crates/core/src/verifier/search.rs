use crate::chordal::{chordal_near_clique, chordless_cycle, is_chordal};
use crate::error::Result;
use crate::graph::{find_near_clique, io, Graph, NearClique, DEFAULT_VERTEX_CAP};
use crate::matrix::{
    entrywise_power, in_cone, witness_cosine, witness_path3, witness_signed_cycle, PowerKind,
    PowerMap, SymMatrix,
};
use crate::real::Real;

use super::sampler::{ConeSampler, Factor, FactorModel};
use super::{evaluate, normalize, Counterexample, SampleConfig, Verdict};

/// Effort limits for [`falsify`].
#[derive(Clone, Debug, PartialEq)]
pub struct SearchLimits {
    /// Local searches started from witness seeds and, separately, from the
    /// best random samples.
    pub local_starts: usize,
    /// Coordinate sweeps per local search.
    pub sweeps: usize,
    /// Vertex cap for exact clique searches on non-chordal graphs.
    pub cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            local_starts: 3,
            sweeps: 200,
            cap: DEFAULT_VERTEX_CAP,
        }
    }
}

/// Coordinate descent with step halving. Each sweep tries `θ_i ± δ_i`
/// with `δ_i = step · (|θ_i| + floor)` and keeps the first improvement;
/// a sweep without improvement halves `step`. Stops after `sweeps` sweeps,
/// when the value drops below `stop_below`, or when the step vanishes.
/// Returns the final value; `theta` holds the minimizer.
pub fn coordinate_descent(
    theta: &mut [f64],
    mut f: impl FnMut(&[f64]) -> f64,
    sweeps: usize,
    stop_below: f64,
) -> f64 {
    let mut best = f(theta);
    let floor = 1e-2 * theta.iter().map(|x| x.abs()).sum::<f64>() / theta.len().max(1) as f64;
    let mut step = 0.5;
    for _ in 0..sweeps {
        if best < stop_below || step < 1e-7 {
            break;
        }
        let mut improved = false;
        for i in 0..theta.len() {
            let old = theta[i];
            let delta = step * (old.abs() + floor);
            for candidate in [old + delta, old - delta] {
                theta[i] = candidate;
                let value = f(theta);
                if value < best {
                    best = value;
                    improved = true;
                    break;
                }
                theta[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Smallest eigenvalue of `p` applied to `a` scaled to largest entry 1;
/// `+∞` if the power is undefined or overflows.
fn objective(a: &SymMatrix, p: PowerMap) -> f64 {
    let a = normalize(a);
    if a.max_abs() == 0.0 {
        return f64::INFINITY;
    }
    match entrywise_power(&a, p) {
        Ok(m) => m
            .to_dense()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min),
        Err(_) => f64::INFINITY,
    }
}

struct Seed {
    name: String,
    model: FactorModel,
    theta: Vec<f64>,
    value: f64,
}

/// One fixed witness, optionally with a parameterization for local search.
struct BankEntry {
    name: String,
    matrix: SymMatrix,
    model: Option<(FactorModel, Vec<f64>)>,
}

fn near_clique(g: &Graph, cap: usize) -> Result<Option<NearClique>> {
    if is_chordal(g) {
        chordal_near_clique(g)
    } else {
        find_near_clique(g, cap)
    }
}

/// A 4-cycle `a, c, b, d` contained in `g` (chords allowed).
fn four_cycle(g: &Graph) -> Option<[usize; 4]> {
    let n = g.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            let mut common = g.neighbors(a).intersection(g.neighbors(b));
            if let (Some(&c), Some(&d)) = (common.next(), common.next()) {
                return Some([a, c, b, d]);
            }
        }
    }
    None
}

/// `W(u, v, uuᵀ + vvᵀ)` on a near-clique as two rank-one Gram blocks on
/// `{a} ∪ S` and `S ∪ {b}`.
fn w_model(n: usize, nc: &NearClique, u: &[f64], v: &[f64], nonnegative: bool) -> (FactorModel, Vec<f64>) {
    let mut first = vec![nc.a];
    first.extend(&nc.middle);
    let mut second = nc.middle.clone();
    second.push(nc.b);
    let enc = |x: f64| if nonnegative { x.sqrt() } else { x };
    let mut theta = vec![enc(1.0)];
    theta.extend(u.iter().map(|&x| enc(x)));
    theta.extend(v.iter().map(|&x| enc(x)));
    theta.push(enc(1.0));
    let model = FactorModel {
        n,
        factors: vec![
            Factor {
                support: first,
                rank: 1,
            },
            Factor {
                support: second,
                rank: 1,
            },
        ],
        nonnegative,
    };
    (model, theta)
}

const W_SCALES: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-6];

fn witness_bank(g: &Graph, p: PowerMap, cap: usize) -> Result<Vec<BankEntry>> {
    let n = g.vertex_count();
    let signed_ok = p.kind != PowerKind::Plain;
    let mut bank = Vec::new();
    let fixed = |name: String, m: SymMatrix, at: &[usize]| -> Result<BankEntry> {
        Ok(BankEntry {
            name,
            matrix: m.embed(n, at)?,
            model: None,
        })
    };

    if let Some(v) = (0..n).find(|&v| g.degree(v) >= 2) {
        let mut nb = g.neighbors(v).iter().copied();
        let (u, w) = (nb.next().unwrap(), nb.next().unwrap());
        for k in 1..10 {
            let a = k as f64 / 10.0;
            bank.push(fixed(format!("path3(a={a})"), witness_path3(a)?, &[u, v, w])?);
        }
    }
    if signed_ok {
        if let Some(c4) = four_cycle(g) {
            bank.push(fixed("cosine(4)".into(), witness_cosine(4)?, &c4)?);
            bank.push(fixed("signed_cycle(4)".into(), witness_signed_cycle(4)?, &c4)?);
        }
        if let Some(cycle) = chordless_cycle(g).filter(|c| c.len() > 4) {
            let len = cycle.len();
            bank.push(fixed(format!("signed_cycle({len})"), witness_signed_cycle(len)?, &cycle)?);
        }
    }
    if let Some(nc) = near_clique(g, cap)? {
        for m in 1..=nc.middle.len() {
            let sub = NearClique {
                a: nc.a,
                b: nc.b,
                middle: nc.middle[..m].to_vec(),
            };
            let u = vec![1.0; m];
            let ramp: Vec<f64> = (1..=m).map(|i| i as f64 / m as f64).collect();
            for t in W_SCALES {
                let v: Vec<f64> = ramp.iter().map(|x| t.sqrt() * x).collect();
                let (model, theta) = w_model(n, &sub, &u, &v, !signed_ok);
                bank.push(BankEntry {
                    name: format!("w(m={m},t={t:e})"),
                    matrix: model.matrix(&theta),
                    model: Some((model, theta)),
                });
                if signed_ok && m >= 2 {
                    let alt: Vec<f64> = v
                        .iter()
                        .enumerate()
                        .map(|(i, x)| if i % 2 == 0 { *x } else { -x })
                        .collect();
                    let (model, theta) = w_model(n, &sub, &u, &alt, false);
                    bank.push(BankEntry {
                        name: format!("w_signed(m={m},t={t:e})"),
                        matrix: model.matrix(&theta),
                        model: Some((model, theta)),
                    });
                }
            }
        }
    }
    Ok(bank)
}

enum Scan {
    Found(Counterexample),
    /// Witness seeds and best random seeds for local search.
    Seeds(Vec<Seed>, Vec<Seed>),
}

struct Search<'a> {
    g: &'a Graph,
    p: PowerMap,
    tol: Option<f64>,
    cfg: &'a SampleConfig,
    limits: &'a SearchLimits,
    tried: Vec<String>,
    trials_run: usize,
}

impl Search<'_> {
    fn check(&self, a: &SymMatrix, source: &str) -> Result<Option<Counterexample>> {
        let a = normalize(a);
        if a.max_abs() == 0.0 {
            return Ok(None);
        }
        let Ok(verdict) = evaluate(&a, self.p, self.tol) else {
            return Ok(None);
        };
        if verdict.is_psd || !in_cone(&a, self.g, None)? {
            return Ok(None);
        }
        Ok(Some(Counterexample {
            matrix: a.to_text(),
            source: source.to_string(),
            verdict,
        }))
    }

    fn verdict(self, counterexample: Option<Counterexample>) -> Verdict {
        Verdict {
            preserved: counterexample.is_none(),
            counterexample,
            graph: io::write_edge_list(self.g),
            power: self.p.into(),
            tolerance: self.tol.map(Real),
            trials_run: self.trials_run,
            witnesses_tried: self.tried,
        }
    }

    fn stop_value(&self) -> f64 {
        -1e3 * self.tol.unwrap_or(1e-9)
    }

    /// Witness bank then random samples, keeping up to `keep` seeds of each kind.
    fn scan(&mut self, keep: usize) -> Result<Scan> {
        let mut w_seeds = Vec::new();
        if self.cfg.uses_witnesses() {
            for entry in witness_bank(self.g, self.p, self.limits.cap)? {
                self.tried.push(entry.name.clone());
                if let Some(cx) = self.check(&entry.matrix, &entry.name)? {
                    return Ok(Scan::Found(cx));
                }
                if let Some((model, theta)) = entry.model {
                    let value = objective(&entry.matrix, self.p);
                    w_seeds.push(Seed {
                        name: entry.name,
                        model,
                        theta,
                        value,
                    });
                }
            }
        }
        let mut random_seeds: Vec<Seed> = Vec::new();
        if self.cfg.uses_random() {
            let sampler = ConeSampler::new(self.g, self.cfg, self.limits.cap)?;
            let nonneg = self.p.kind == PowerKind::Plain;
            for trial in 0..self.cfg.trials {
                let (model, theta) = sampler.draw(trial as u64, nonneg);
                let a = model.matrix(&theta);
                self.trials_run += 1;
                let name = format!("clique_sum(trial={trial})");
                if let Some(cx) = self.check(&a, &name)? {
                    return Ok(Scan::Found(cx));
                }
                if keep > 0 {
                    let value = objective(&a, self.p);
                    random_seeds.push(Seed {
                        name,
                        model,
                        theta,
                        value,
                    });
                    random_seeds.sort_by(|x, y| x.value.total_cmp(&y.value));
                    random_seeds.truncate(keep);
                }
            }
        }
        w_seeds.sort_by(|x, y| x.value.total_cmp(&y.value));
        w_seeds.truncate(keep);
        Ok(Scan::Seeds(w_seeds, random_seeds))
    }
}

/// Tries the witness bank (path witnesses, cycle witnesses, then `W` on
/// near-cliques of every order), then `cfg.trials` random clique-sum
/// samples; reports the first violation found.
pub fn preserves(g: &Graph, p: PowerMap, cfg: &SampleConfig, tol: Option<f64>) -> Result<Verdict> {
    cfg.validate()?;
    let limits = SearchLimits::default();
    let mut s = Search {
        g,
        p,
        tol,
        cfg,
        limits: &limits,
        tried: Vec::new(),
        trials_run: 0,
    };
    let found = match s.scan(0)? {
        Scan::Found(cx) => Some(cx),
        Scan::Seeds(..) => None,
    };
    Ok(s.verdict(found))
}

/// [`preserves`] followed by coordinate-descent local search over Gram
/// factor entries, started from the most promising witness seeds and
/// random samples. Candidates stay in `P_G` by construction.
pub fn falsify(
    g: &Graph,
    p: PowerMap,
    cfg: &SampleConfig,
    tol: Option<f64>,
    limits: &SearchLimits,
) -> Result<Verdict> {
    cfg.validate()?;
    let mut s = Search {
        g,
        p,
        tol,
        cfg,
        limits,
        tried: Vec::new(),
        trials_run: 0,
    };
    let (w_seeds, random_seeds) = match s.scan(limits.local_starts)? {
        Scan::Found(cx) => return Ok(s.verdict(Some(cx))),
        Scan::Seeds(w, random) => (w, random),
    };
    let stop = s.stop_value();
    for mut seed in w_seeds.into_iter().chain(random_seeds) {
        let name = format!("local_search({})", seed.name);
        s.tried.push(name.clone());
        let model = &seed.model;
        let p = s.p;
        coordinate_descent(
            &mut seed.theta,
            |th| objective(&model.matrix(th), p),
            limits.sweeps,
            stop,
        );
        if let Some(cx) = s.check(&model.matrix(&seed.theta), &name)? {
            return Ok(s.verdict(Some(cx)));
        }
    }
    Ok(s.verdict(None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::verifier::{replay, Strategy};

    fn family(s: &str) -> Graph {
        generate(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    fn quick() -> SampleConfig {
        SampleConfig {
            trials: 100,
            ..SampleConfig::default()
        }
    }

    #[test]
    fn descent_minimizes_a_quadratic() {
        let mut theta = vec![3.0, -2.0];
        let v = coordinate_descent(
            &mut theta,
            |t| (t[0] - 1.0).powi(2) + (t[1] + 0.5).powi(2),
            200,
            f64::NEG_INFINITY,
        );
        assert!(v < 1e-8, "{v}");
    }

    #[test]
    fn k4_plain_three_halves_is_falsified() {
        let v = preserves(&family("complete:4"), PowerMap::new(PowerKind::Plain, 1.5), &quick(), None).unwrap();
        assert!(!v.preserved);
        assert!(replay(&v).unwrap().confirmed);
    }

    #[test]
    fn c4_phi_uses_cosine() {
        let v = preserves(&family("cycle:4"), PowerMap::new(PowerKind::EvenPhi, 1.5), &quick(), None).unwrap();
        let cx = v.counterexample.unwrap();
        assert_eq!(cx.source, "cosine(4)");
    }

    #[test]
    fn integer_powers_survive() {
        let v = preserves(&family("complete:4"), PowerMap::new(PowerKind::Plain, 2.0), &quick(), None).unwrap();
        assert!(v.preserved);
        assert_eq!(v.trials_run, 100);
        let v = falsify(
            &family("path:5"),
            PowerMap::new(PowerKind::Plain, 1.0),
            &quick(),
            None,
            &SearchLimits::default(),
        )
        .unwrap();
        assert!(v.preserved);
    }

    #[test]
    fn path_below_one_falls_to_path_witness() {
        let v = falsify(
            &family("path:3"),
            PowerMap::new(PowerKind::Plain, 0.99),
            &quick(),
            None,
            &SearchLimits::default(),
        )
        .unwrap();
        assert!(v.counterexample.unwrap().source.starts_with("path3"));
    }

    #[test]
    fn strategies_restrict_sources() {
        let only_random = SampleConfig {
            strategy: Strategy::CliqueSum,
            ..quick()
        };
        let v = preserves(&family("complete:3"), PowerMap::new(PowerKind::Plain, 2.0), &only_random, None).unwrap();
        assert!(v.witnesses_tried.is_empty());
        let only_bank = SampleConfig {
            strategy: Strategy::WitnessBank,
            ..quick()
        };
        let v = preserves(&family("complete:3"), PowerMap::new(PowerKind::Plain, 2.0), &only_bank, None).unwrap();
        assert_eq!(v.trials_run, 0);
        assert!(!v.witnesses_tried.is_empty());
    }

    #[test]
    fn verdicts_are_deterministic() {
        let g = family("band:6,3");
        let p = PowerMap::new(PowerKind::Plain, 2.75);
        let a = falsify(&g, p, &quick(), None, &SearchLimits::default()).unwrap();
        let b = falsify(&g, p, &quick(), None, &SearchLimits::default()).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        assert!(!a.preserved);
    }
}
