use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matrix::PowerKind;
use crate::real::Real;

/// Discrete part of a set `D ∪ [t, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Discrete {
    Empty,
    Naturals,
    OddNaturals,
    EvenNaturals,
}

impl Discrete {
    /// The positive integers that every set of the given family contains
    /// (Schur products of PSD matrices are PSD).
    pub fn of_kind(kind: PowerKind) -> Self {
        match kind {
            PowerKind::Plain => Discrete::Naturals,
            PowerKind::OddPsi => Discrete::OddNaturals,
            PowerKind::EvenPhi => Discrete::EvenNaturals,
        }
    }

    pub fn contains(self, alpha: f64) -> bool {
        if !(alpha >= 1.0) || alpha.fract() != 0.0 {
            return false;
        }
        match self {
            Discrete::Empty => false,
            Discrete::Naturals => true,
            Discrete::OddNaturals => alpha % 2.0 == 1.0,
            Discrete::EvenNaturals => alpha % 2.0 == 0.0,
        }
    }

    /// Smallest element, used to decide when the ray swallows the discrete part.
    fn least(self) -> f64 {
        match self {
            Discrete::Empty => f64::NEG_INFINITY,
            Discrete::Naturals | Discrete::OddNaturals => 1.0,
            Discrete::EvenNaturals => 2.0,
        }
    }
}

/// `D_kind ∪ [ray_start, ∞)` where `D_kind` is the family's integer set.
///
/// Exponent sets of each family always contain `D_kind`, so the ray start
/// alone determines the set; distinct starts give distinct sets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerSet {
    pub kind: PowerKind,
    pub ray_start: f64,
}

impl PowerSet {
    pub fn new(kind: PowerKind, ray_start: f64) -> Self {
        Self { kind, ray_start }
    }

    /// The discrete part left over once the ray absorbs what it can.
    pub fn discrete(&self) -> Discrete {
        let d = Discrete::of_kind(self.kind);
        if self.ray_start <= d.least() {
            Discrete::Empty
        } else {
            d
        }
    }

    pub fn contains(&self, alpha: f64) -> bool {
        alpha >= self.ray_start || Discrete::of_kind(self.kind).contains(alpha)
    }

    pub fn is_subset(&self, other: &PowerSet) -> bool {
        self.kind == other.kind && self.ray_start >= other.ray_start
    }
}

impl fmt::Display for PowerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.discrete() {
            Discrete::Empty => "",
            Discrete::Naturals => "N ∪ ",
            Discrete::OddNaturals => "(2N-1) ∪ ",
            Discrete::EvenNaturals => "2N ∪ ",
        };
        write!(f, "{d}[{}, ∞)", self.ray_start)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Bounded,
}

/// Answer to "is `alpha` in the set?" for a possibly bounded set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    In,
    Out,
    Unknown,
}

/// Exponent set of one power family on one graph: known exactly, or
/// sandwiched as `lower ⊆ H ⊆ upper`. `exclusions` lists points of `upper`
/// that are known not to be in `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct HSet {
    lower: PowerSet,
    upper: PowerSet,
    exclusions: Vec<f64>,
}

impl HSet {
    pub fn exact(kind: PowerKind, ray_start: f64) -> Self {
        let s = PowerSet::new(kind, ray_start);
        Self {
            lower: s,
            upper: s,
            exclusions: Vec::new(),
        }
    }

    /// `D ∪ [lower_ray, ∞) ⊆ H ⊆ D ∪ [upper_ray, ∞)`; needs
    /// `lower_ray >= upper_ray`. Equal rays give an exact set.
    pub fn bounded(kind: PowerKind, lower_ray: f64, upper_ray: f64) -> Self {
        assert!(
            lower_ray >= upper_ray,
            "lower bound [{lower_ray}, ∞) is not inside upper bound [{upper_ray}, ∞)"
        );
        Self {
            lower: PowerSet::new(kind, lower_ray),
            upper: PowerSet::new(kind, upper_ray),
            exclusions: Vec::new(),
        }
    }

    /// Records that `alpha` lies in the upper bound but not in the set.
    pub fn with_exclusion(mut self, alpha: f64) -> Self {
        if !self.lower.contains(alpha) && self.upper.contains(alpha) && !self.exclusions.contains(&alpha) {
            self.exclusions.push(alpha);
            self.exclusions.sort_by(f64::total_cmp);
        }
        self
    }

    pub fn kind(&self) -> PowerKind {
        self.lower.kind
    }

    pub fn lower(&self) -> PowerSet {
        self.lower
    }

    pub fn upper(&self) -> PowerSet {
        self.upper
    }

    pub fn exclusions(&self) -> &[f64] {
        &self.exclusions
    }

    pub fn mode(&self) -> Mode {
        if self.lower == self.upper && self.exclusions.is_empty() {
            Mode::Exact
        } else {
            Mode::Bounded
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode() == Mode::Exact
    }

    /// Ray start of the certified part: every `alpha` at or above it is in the set.
    pub fn ray_start(&self) -> f64 {
        self.lower.ray_start
    }

    pub fn discrete(&self) -> Discrete {
        self.lower.discrete()
    }

    pub fn contains(&self, alpha: f64) -> Membership {
        if self.lower.contains(alpha) {
            Membership::In
        } else if !self.upper.contains(alpha) || self.exclusions.contains(&alpha) {
            Membership::Out
        } else {
            Membership::Unknown
        }
    }

    /// Set of the disjoint union (or a coalescence factor): intersect both bounds.
    pub fn intersect(&self, other: &HSet) -> HSet {
        assert_eq!(self.kind(), other.kind());
        let mut out = HSet::bounded(
            self.kind(),
            self.lower.ray_start.max(other.lower.ray_start),
            self.upper.ray_start.max(other.upper.ray_start),
        );
        for &x in self.exclusions.iter().chain(&other.exclusions) {
            out = out.with_exclusion(x);
        }
        out
    }

    /// Combines two independent sandwiches of the same set: the union of
    /// the lower bounds and the intersection of the upper bounds.
    pub fn refine(&self, other: &HSet) -> HSet {
        assert_eq!(self.kind(), other.kind());
        let mut out = HSet::bounded(
            self.kind(),
            self.lower.ray_start.min(other.lower.ray_start),
            self.upper.ray_start.max(other.upper.ray_start),
        );
        for &x in self.exclusions.iter().chain(&other.exclusions) {
            out = out.with_exclusion(x);
        }
        out
    }

    /// Subset relation for exact sets; `None` when either side is bounded.
    pub fn is_subset(&self, other: &HSet) -> Option<bool> {
        (self.is_exact() && other.is_exact()).then(|| self.lower.is_subset(&other.lower))
    }
}

impl fmt::Display for HSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            return write!(f, "{}", self.lower);
        }
        write!(f, "{} ⊆ H ⊆ {}", self.lower, self.upper)?;
        for x in &self.exclusions {
            write!(f, " \\ {{{x}}}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct BoundWire {
    pub discrete: Discrete,
    pub ray_start: Real,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct HSetWire {
    pub discrete: Discrete,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exclusions: Option<Vec<Real>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lower: Option<BoundWire>,
    pub mode: Mode,
    pub ray_start: Real,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub upper: Option<BoundWire>,
}

impl HSetWire {
    pub fn from_set(h: &HSet) -> Self {
        let bound = |s: PowerSet| BoundWire {
            discrete: s.discrete(),
            ray_start: Real(s.ray_start),
        };
        let exact = h.is_exact();
        HSetWire {
            discrete: h.discrete(),
            exclusions: (!h.exclusions.is_empty())
                .then(|| h.exclusions.iter().copied().map(Real).collect()),
            lower: (!exact).then(|| bound(h.lower)),
            mode: h.mode(),
            ray_start: Real(h.ray_start()),
            upper: (!exact).then(|| bound(h.upper)),
        }
    }

    pub fn into_set(self, kind: PowerKind) -> Result<HSet, String> {
        let check = |d: Discrete, s: &PowerSet| {
            if d == s.discrete() {
                Ok(())
            } else {
                Err(format!("discrete part {d:?} does not match {s}"))
            }
        };
        let mut h = match self.mode {
            Mode::Exact => {
                if self.lower.is_some() || self.upper.is_some() || self.exclusions.is_some() {
                    return Err("exact set carries bounds".into());
                }
                HSet::exact(kind, self.ray_start.0)
            }
            Mode::Bounded => {
                let (lo, up) = self
                    .lower
                    .zip(self.upper)
                    .ok_or("bounded set needs lower and upper")?;
                if lo.ray_start.0 != self.ray_start.0 {
                    return Err("ray_start differs from the lower bound".into());
                }
                if lo.ray_start.0 < up.ray_start.0 {
                    return Err("lower bound is not inside the upper bound".into());
                }
                let h = HSet::bounded(kind, lo.ray_start.0, up.ray_start.0);
                check(lo.discrete, &h.lower)?;
                check(up.discrete, &h.upper)?;
                h
            }
        };
        check(self.discrete, &h.lower)?;
        for x in self.exclusions.into_iter().flatten() {
            h = h.with_exclusion(x.0);
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_sets() {
        let h = HSet::exact(PowerKind::Plain, 3.0);
        assert_eq!(h.discrete(), Discrete::Naturals);
        assert_eq!(h.contains(2.0), Membership::In);
        assert_eq!(h.contains(2.5), Membership::Out);
        assert_eq!(h.contains(0.0), Membership::Out);
        assert_eq!(h.contains(3.0), Membership::In);

        let psi = HSet::exact(PowerKind::OddPsi, 3.0);
        assert_eq!(psi.contains(1.0), Membership::In);
        assert_eq!(psi.contains(2.0), Membership::Out);
        let phi = HSet::exact(PowerKind::EvenPhi, 3.0);
        assert_eq!(phi.contains(1.0), Membership::Out);
        assert_eq!(phi.contains(2.0), Membership::In);
    }

    #[test]
    fn absorbed_discrete_parts() {
        assert_eq!(HSet::exact(PowerKind::Plain, 1.0).discrete(), Discrete::Empty);
        assert_eq!(HSet::exact(PowerKind::OddPsi, 1.0).discrete(), Discrete::Empty);
        assert_eq!(HSet::exact(PowerKind::EvenPhi, 1.5).discrete(), Discrete::Empty);
        assert_eq!(HSet::exact(PowerKind::EvenPhi, 2.5).discrete(), Discrete::EvenNaturals);
        assert_eq!(HSet::exact(PowerKind::EvenPhi, 2.0).discrete(), Discrete::Empty);
        assert_eq!(HSet::exact(PowerKind::Plain, 0.0).discrete(), Discrete::Empty);
    }

    #[test]
    fn bounded_membership_and_exclusions() {
        let h = HSet::bounded(PowerKind::EvenPhi, 2.0, 1.0).with_exclusion(1.0);
        assert_eq!(h.mode(), Mode::Bounded);
        assert_eq!(h.contains(2.0), Membership::In);
        assert_eq!(h.contains(1.5), Membership::Unknown);
        assert_eq!(h.contains(1.0), Membership::Out);
        assert_eq!(h.contains(0.5), Membership::Out);
        assert!(HSet::bounded(PowerKind::Plain, 1.0, 1.0).is_exact());
    }

    #[test]
    fn intersect_and_refine() {
        let a = HSet::exact(PowerKind::OddPsi, 1.0);
        let b = HSet::bounded(PowerKind::OddPsi, 3.0, 1.0);
        assert_eq!(a.intersect(&b), b);
        assert_eq!(a.refine(&b), a);
        let c = HSet::exact(PowerKind::OddPsi, 2.0);
        assert_eq!(a.intersect(&c), c);
        assert_eq!(c.is_subset(&a), Some(true));
        assert_eq!(a.is_subset(&c), Some(false));
        assert_eq!(b.is_subset(&a), None);
    }

    #[test]
    fn wire_round_trip() {
        for h in [
            HSet::exact(PowerKind::Plain, 2.0),
            HSet::bounded(PowerKind::EvenPhi, 2.0, 1.0).with_exclusion(1.0),
            HSet::bounded(PowerKind::OddPsi, 3.0, 1.0),
        ] {
            let wire = HSetWire::from_set(&h);
            let text = serde_json::to_string(&wire).unwrap();
            let back: HSetWire = serde_json::from_str(&text).unwrap();
            assert_eq!(back.into_set(h.kind()).unwrap(), h);
        }
    }
}
