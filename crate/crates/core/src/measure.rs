//! Atomic measures on a finite abelian group or on its dual, and the measure
//! calculus used by every construction: Dirac and Haar measures, convolution,
//! translation, restriction, density reweighting, sums, translated
//! restrictions, Radon-Nikodym derivatives, essential bounds, and the packing
//! predicate for support difference sets.
//!
//! Supports are crisp: a weight is stored only if it is strictly positive, so
//! set identities on supports never depend on an epsilon threshold.

use std::collections::{BTreeMap, BTreeSet};

use crate::group::{DualCharacter, FiniteAbelianGroup, GroupElement, GroupPoint};
use crate::{Error, Result};

/// Normalization of the Haar measure on a finite group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Normalization {
    /// Weight 1 on every element.
    Counting,
    /// Weight `1/order` on every element; total mass 1.
    Probability,
}

/// A finite nonnegative weighted point set on a group or on its dual.
///
/// All finite Borel measures on a finite group are of this form. The zero
/// measure (empty support) is representable; operations that need positive
/// total mass check for it explicitly.
#[derive(Clone, PartialEq, Debug)]
pub struct AtomicMeasure<P: GroupPoint> {
    group: FiniteAbelianGroup,
    weights: BTreeMap<P, f64>,
}

/// Measure on the group side.
pub type Measure = AtomicMeasure<GroupElement>;
/// Measure on the dual side.
pub type DualMeasure = AtomicMeasure<DualCharacter>;

impl<P: GroupPoint> AtomicMeasure<P> {
    /// The zero measure: empty support, total mass 0.
    pub fn zero(group: FiniteAbelianGroup) -> Self {
        Self {
            group,
            weights: BTreeMap::new(),
        }
    }

    /// The Dirac measure: a single atom of weight 1 at `at`.
    pub fn dirac(group: FiniteAbelianGroup, at: P) -> Result<Self> {
        let mut weights = BTreeMap::new();
        if at.coords().len() != group.rank() {
            return Err(Error::ShapeMismatch {
                expected: group.rank(),
                got: at.coords().len(),
            });
        }
        weights.insert(at, 1.0);
        Ok(Self { group, weights })
    }

    /// The Haar measure in the requested normalization.
    pub fn haar(group: FiniteAbelianGroup, normalization: Normalization) -> Self {
        let weight = match normalization {
            Normalization::Counting => 1.0,
            Normalization::Probability => 1.0 / group.order() as f64,
        };
        let weights = group
            .enumerate_points()
            .into_iter()
            .map(|p| (p, weight))
            .collect();
        Self { group, weights }
    }

    /// Builds a measure from explicit atoms. Duplicate atoms accumulate,
    /// zero weights are dropped, negative weights are rejected.
    pub fn from_atoms(
        group: FiniteAbelianGroup,
        atoms: impl IntoIterator<Item = (P, f64)>,
    ) -> Result<Self> {
        let mut weights: BTreeMap<P, f64> = BTreeMap::new();
        for (p, w) in atoms {
            if p.coords().len() != group.rank() {
                return Err(Error::ShapeMismatch {
                    expected: group.rank(),
                    got: p.coords().len(),
                });
            }
            if w < 0.0 || !w.is_finite() {
                return Err(Error::NegativeWeight {
                    atom: p.to_string(),
                    weight: w,
                });
            }
            if w > 0.0 {
                *weights.entry(p).or_insert(0.0) += w;
            }
        }
        Ok(Self { group, weights })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.values().sum()
    }

    /// The weight of a single atom; 0 off the support.
    pub fn weight(&self, p: &P) -> f64 {
        self.weights.get(p).copied().unwrap_or(0.0)
    }

    /// Atoms in canonical (lexicographic) order.
    pub fn atoms(&self) -> impl Iterator<Item = (&P, f64)> {
        self.weights.iter().map(|(p, &w)| (p, w))
    }

    /// The support as an ordered set.
    pub fn support(&self) -> BTreeSet<P> {
        self.weights.keys().cloned().collect()
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    /// The mass of a set: `mu(E)`.
    pub fn mass_of(&self, set: &BTreeSet<P>) -> f64 {
        set.iter().map(|p| self.weight(p)).sum()
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "moduli {:?} vs {:?}",
                self.group.moduli(),
                other.group.moduli()
            )));
        }
        Ok(())
    }

    /// Convolution: `(mu * lambda)({z}) = sum_{x+y=z} mu({x}) lambda({y})`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let mut weights: BTreeMap<P, f64> = BTreeMap::new();
        for (x, wx) in self.atoms() {
            for (y, wy) in other.atoms() {
                let z = self.group.add(x, y)?;
                *weights.entry(z).or_insert(0.0) += wx * wy;
            }
        }
        weights.retain(|_, w| *w > 0.0);
        Ok(Self {
            group: self.group.clone(),
            weights,
        })
    }

    /// Translation by `a`: the atom at `x` moves to `x + a`.
    /// Equals `convolve(dirac(a), self)`.
    pub fn translate(&self, a: &P) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (x, w) in self.atoms() {
            weights.insert(self.group.add(x, a)?, w);
        }
        Ok(Self {
            group: self.group.clone(),
            weights,
        })
    }

    /// Restriction to a set: weights kept exactly on `E`; may be zero-mass.
    pub fn restrict(&self, set: &BTreeSet<P>) -> Self {
        let weights = self
            .weights
            .iter()
            .filter(|(p, _)| set.contains(*p))
            .map(|(p, &w)| (p.clone(), w))
            .collect();
        Self {
            group: self.group.clone(),
            weights,
        }
    }

    /// Reweighting by a strictly positive density: `weight(x) <- phi(x) weight(x)`.
    pub fn reweight(&self, density: &DensityFunction<P>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (x, w) in self.atoms() {
            let phi = density
                .value(x)
                .ok_or_else(|| Error::MissingDensity(x.to_string()))?;
            weights.insert(x.clone(), phi * w);
        }
        Ok(Self {
            group: self.group.clone(),
            weights,
        })
    }

    /// Pointwise weight sum of two measures on the same group.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let mut weights = self.weights.clone();
        for (p, w) in other.atoms() {
            *weights.entry(p.clone()).or_insert(0.0) += w;
        }
        Ok(Self {
            group: self.group.clone(),
            weights,
        })
    }

    /// Scales every weight by `c >= 0`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if c < 0.0 || !c.is_finite() {
            return Err(Error::NegativeWeight {
                atom: "<scale>".into(),
                weight: c,
            });
        }
        let mut weights: BTreeMap<P, f64> = self
            .weights
            .iter()
            .map(|(p, &w)| (p.clone(), c * w))
            .collect();
        weights.retain(|_, w| *w > 0.0);
        Ok(Self {
            group: self.group.clone(),
            weights,
        })
    }

    /// The translated restriction `T_a(mu|_{F+a})`: for each `x` in
    /// `(F+a) & support(mu)` an atom at `x - a` with weight `mu({x})`, so that
    /// `integral f dT_a(mu|_{F+a}) = sum_{x in F+a} f(x-a) mu({x})`.
    pub fn translate_restrict(&self, window: &BTreeSet<P>, shift: &P) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for f in window {
            let x = self.group.add(f, shift)?;
            let w = self.weight(&x);
            if w > 0.0 {
                weights.insert(f.clone(), w);
            }
        }
        Ok(Self {
            group: self.group.clone(),
            weights,
        })
    }

    /// The Radon-Nikodym derivative of `self` with respect to `base`, with
    /// its sup norm. Requires `support(self)` inside `support(base)`.
    pub fn radon_nikodym(&self, base: &Self) -> Result<RadonNikodym<P>> {
        self.check_same_group(base)?;
        let mut values = BTreeMap::new();
        let mut sup_norm: f64 = 0.0;
        for (x, w) in self.atoms() {
            let b = base.weight(x);
            if b <= 0.0 {
                return Err(Error::NotAbsolutelyContinuous(x.to_string()));
            }
            let ratio = w / b;
            sup_norm = sup_norm.max(ratio);
            values.insert(x.clone(), ratio);
        }
        Ok(RadonNikodym {
            density: DensityFunction { values },
            sup_norm,
        })
    }

    /// Essential infimum and supremum of `d(self)/d(base)` over the support
    /// of `self`: on a finite group these are the min and max weight ratios.
    pub fn essential_bounds(&self, base: &Self) -> Result<(f64, f64)> {
        let rn = self.radon_nikodym(base)?;
        if rn.density.values.is_empty() {
            return Err(Error::EmptySupport(
                "essential bounds of the zero measure".into(),
            ));
        }
        Ok(rn.density.bounds())
    }

    /// Checks whether `(self, other)` is a packing pair:
    /// `(K_mu - K_mu) & (K_lambda - K_lambda) = {0}`.
    ///
    /// When packing holds, the report carries the largest observed gap in the
    /// convolution-mass factorization `sigma(E+F) = mu(E) lambda(F)` over a
    /// deterministic family of sample sets.
    pub fn packing_pair(&self, other: &Self) -> Result<PackingReport<P>> {
        self.check_same_group(other)?;
        let d_self = self.difference_set()?;
        let d_other = other.difference_set()?;
        let zero: P = self.group.zero();
        let witness = d_self
            .intersection(&d_other)
            .find(|p| **p != zero)
            .cloned();
        if let Some(w) = witness {
            return Ok(PackingReport {
                packing: false,
                witness: Some(w),
                factorization_gap: None,
            });
        }

        // Thm-style consequence on sampled sets: with packing, the
        // convolution mass on a sum set factorizes.
        let sigma = self.convolve(other)?;
        let k_self = self.support();
        let k_other = other.support();
        let mut samples: Vec<(BTreeSet<P>, BTreeSet<P>)> = Vec::new();
        if !k_self.is_empty() && !k_other.is_empty() {
            let first_self: BTreeSet<P> = k_self.iter().take(1).cloned().collect();
            let first_other: BTreeSet<P> = k_other.iter().take(1).cloned().collect();
            let half_self: BTreeSet<P> =
                k_self.iter().take(k_self.len().div_ceil(2)).cloned().collect();
            samples.push((k_self.clone(), k_other.clone()));
            samples.push((first_self.clone(), k_other.clone()));
            samples.push((k_self.clone(), first_other.clone()));
            samples.push((first_self, first_other));
            samples.push((half_self, k_other.clone()));
        }
        let mut gap: f64 = 0.0;
        for (e, f) in &samples {
            let sum_set = self.sum_set(e, f)?;
            let lhs = sigma.mass_of(&sum_set);
            let rhs = self.mass_of(e) * other.mass_of(f);
            gap = gap.max((lhs - rhs).abs());
        }
        Ok(PackingReport {
            packing: true,
            witness: None,
            factorization_gap: Some(gap),
        })
    }

    /// The difference set `K - K` of the support.
    pub fn difference_set(&self) -> Result<BTreeSet<P>> {
        let mut out = BTreeSet::new();
        for x in self.weights.keys() {
            for y in self.weights.keys() {
                out.insert(self.group.sub(x, y)?);
            }
        }
        Ok(out)
    }

    fn sum_set(&self, e: &BTreeSet<P>, f: &BTreeSet<P>) -> Result<BTreeSet<P>> {
        let mut out = BTreeSet::new();
        for x in e {
            for y in f {
                out.insert(self.group.add(x, y)?);
            }
        }
        Ok(out)
    }
}

/// A strictly positive, finite multiplier defined on an explicit point set.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityFunction<P: GroupPoint> {
    values: BTreeMap<P, f64>,
}

impl<P: GroupPoint> DensityFunction<P> {
    pub fn new(values: impl IntoIterator<Item = (P, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, v) in values {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::NonPositiveDensity {
                    at: p.to_string(),
                    value: v,
                });
            }
            map.insert(p, v);
        }
        Ok(Self { values: map })
    }

    /// The constant density `c` on a point set.
    pub fn constant(points: impl IntoIterator<Item = P>, c: f64) -> Result<Self> {
        Self::new(points.into_iter().map(|p| (p, c)))
    }

    pub fn value(&self, p: &P) -> Option<f64> {
        self.values.get(p).copied()
    }

    pub fn points(&self) -> impl Iterator<Item = (&P, f64)> {
        self.values.iter().map(|(p, &v)| (p, v))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(min, max)` over the whole domain. Empty domains return `(1, 1)`.
    pub fn bounds(&self) -> (f64, f64) {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in self.values.values() {
            min = min.min(v);
            max = max.max(v);
        }
        if min > max {
            (1.0, 1.0)
        } else {
            (min, max)
        }
    }

    /// `(min, max)` over a restricted point set; errors if a point is missing.
    pub fn bounds_over<'a>(&self, points: impl Iterator<Item = &'a P>) -> Result<(f64, f64)>
    where
        P: 'a,
    {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for p in points {
            let v = self
                .value(p)
                .ok_or_else(|| Error::MissingDensity(p.to_string()))?;
            min = min.min(v);
            max = max.max(v);
        }
        if min > max {
            Ok((1.0, 1.0))
        } else {
            Ok((min, max))
        }
    }
}

/// A Radon-Nikodym derivative together with its sup norm.
#[derive(Clone, Debug)]
pub struct RadonNikodym<P: GroupPoint> {
    pub density: DensityFunction<P>,
    pub sup_norm: f64,
}

/// Outcome of the packing-pair predicate.
#[derive(Clone, Debug)]
pub struct PackingReport<P: GroupPoint> {
    /// True iff the support difference sets meet only at 0.
    pub packing: bool,
    /// A nonzero common difference when packing fails.
    pub witness: Option<P>,
    /// Largest observed `|sigma(E+F) - mu(E) lambda(F)|` over sampled sets,
    /// present only when packing holds.
    pub factorization_gap: Option<f64>,
}
