//! Exact arithmetic for finite abelian groups `Z_{n_1} x ... x Z_{n_k}`,
//! their dual groups, and the character pairing.
//!
//! Every finite abelian group is a direct product of cyclic groups and its
//! dual carries the identical moduli list, so one [`FiniteAbelianGroup`]
//! value serves both sides. Points of the group and of the dual are kept as
//! distinct types ([`GroupElement`], [`DualCharacter`]) so a measure on the
//! group cannot silently be used where one on the dual is expected.
//!
//! The pairing `<x, chi> = exp(2 pi i sum_j x_j chi_j / n_j)` is evaluated by
//! accumulating the phase as an exact fraction over the common denominator
//! `lcm(n_j)` and taking a single complex exponential, which keeps character
//! orthogonality at machine precision.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A point of a finite abelian group or of its dual: a residue tuple.
///
/// Implemented by [`GroupElement`] and [`DualCharacter`]; the trait lets the
/// measure calculus and the transforms work uniformly on both sides.
pub trait GroupPoint: Clone + Ord + Eq + std::hash::Hash + fmt::Debug + fmt::Display {
    fn coords(&self) -> &[u64];
    fn from_coords(coords: Vec<u64>) -> Self;
}

macro_rules! point_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub struct $name(Vec<u64>);

        impl GroupPoint for $name {
            fn coords(&self) -> &[u64] {
                &self.0
            }

            fn from_coords(coords: Vec<u64>) -> Self {
                Self(coords)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{self}")
            }
        }
    };
}

point_type! {
    /// An element of the group: one reduced residue per modulus.
    GroupElement
}

point_type! {
    /// A character of the group, written additively as a residue tuple of the
    /// self-dual moduli list; the trivial character is the all-zero tuple.
    DualCharacter
}

/// A finite abelian group `Z_{n_1} x ... x Z_{n_k}` given by its moduli.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u64>,
    order: u64,
}

impl FiniteAbelianGroup {
    /// Builds the group from its moduli list. Every modulus must be >= 1.
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("moduli list is empty".into()));
        }
        let mut order: u64 = 1;
        for &n in &moduli {
            if n == 0 {
                return Err(Error::InvalidGroup("modulus 0 is not allowed".into()));
            }
            order = order
                .checked_mul(n)
                .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
        }
        Ok(Self { moduli, order })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    fn check_shape(&self, len: usize) -> Result<()> {
        if len != self.moduli.len() {
            return Err(Error::ShapeMismatch {
                expected: self.moduli.len(),
                got: len,
            });
        }
        Ok(())
    }

    fn reduced<P: GroupPoint>(&self, coords: &[i64]) -> Result<P> {
        self.check_shape(coords.len())?;
        let reduced = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
            .collect();
        Ok(P::from_coords(reduced))
    }

    /// Builds a group element, reducing each coordinate mod `n_j`.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.reduced(coords)
    }

    /// Builds a dual character, reducing each coordinate mod `n_j`.
    pub fn character(&self, coords: &[i64]) -> Result<DualCharacter> {
        self.reduced(coords)
    }

    /// The neutral element (or the trivial character).
    pub fn zero<P: GroupPoint>(&self) -> P {
        P::from_coords(vec![0; self.moduli.len()])
    }

    /// Componentwise addition mod `n_j`.
    pub fn add<P: GroupPoint>(&self, a: &P, b: &P) -> Result<P> {
        self.check_shape(a.coords().len())?;
        self.check_shape(b.coords().len())?;
        let coords = a
            .coords()
            .iter()
            .zip(b.coords())
            .zip(&self.moduli)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        Ok(P::from_coords(coords))
    }

    /// Componentwise negation mod `n_j`; `add(neg(x), x) = 0`.
    pub fn neg<P: GroupPoint>(&self, a: &P) -> Result<P> {
        self.check_shape(a.coords().len())?;
        let coords = a
            .coords()
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
            .collect();
        Ok(P::from_coords(coords))
    }

    /// `a - b`, componentwise mod `n_j`.
    pub fn sub<P: GroupPoint>(&self, a: &P, b: &P) -> Result<P> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub(crate) fn enumerate_points<P: GroupPoint>(&self) -> Vec<P> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut coords = vec![0u64; self.moduli.len()];
        loop {
            out.push(P::from_coords(coords.clone()));
            // lexicographic successor
            let mut j = self.moduli.len();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                coords[j] += 1;
                if coords[j] < self.moduli[j] {
                    break;
                }
                coords[j] = 0;
                if j == 0 {
                    return out;
                }
            }
        }
    }

    /// All group elements in lexicographic coordinate order.
    ///
    /// This order is the canonical index order for every matrix and report.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        self.enumerate_points()
    }

    /// All dual characters in lexicographic coordinate order.
    pub fn enumerate_dual(&self) -> Vec<DualCharacter> {
        self.enumerate_points()
    }

    /// The character pairing `<x, chi>`, a unit complex number.
    ///
    /// The phase `sum_j x_j chi_j / n_j` is accumulated exactly as a fraction
    /// over `lcm(n_j)` and reduced mod 1 before the single `exp` call.
    pub fn pairing(&self, x: &GroupElement, chi: &DualCharacter) -> Result<Complex64> {
        self.check_shape(x.coords().len())?;
        self.check_shape(chi.coords().len())?;
        let common: u64 = self.moduli.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        let mut numerator: u128 = 0;
        for ((&xj, &cj), &nj) in x.coords().iter().zip(chi.coords()).zip(&self.moduli) {
            numerator += xj as u128 * cj as u128 * (common / nj) as u128;
            numerator %= common as u128;
        }
        let angle = 2.0 * std::f64::consts::PI * (numerator as f64) / (common as f64);
        Ok(Complex64::from_polar(1.0, angle))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn pairing_z4_generator_is_i() {
        let g = z(4);
        let value = g
            .pairing(&g.element(&[1]).unwrap(), &g.character(&[1]).unwrap())
            .unwrap();
        assert_abs_diff_eq!(value.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(value.im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn trivial_character_pairs_to_one() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let chi = g.zero::<DualCharacter>();
        for x in g.enumerate() {
            let value = g.pairing(&x, &chi).unwrap();
            assert_abs_diff_eq!(value.re, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(value.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn pairing_z2_z3_mixed() {
        // phase 1/2 + 2/3 = 7/6 == 1/6 mod 1
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let value = g
            .pairing(&g.element(&[1, 1]).unwrap(), &g.character(&[1, 2]).unwrap())
            .unwrap();
        assert_abs_diff_eq!(value.re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(value.im, 0.866025403784438646, epsilon = 1e-12);
    }

    #[test]
    fn addition_and_negation() {
        let g = z(4);
        let sum = g
            .add(&g.element(&[3]).unwrap(), &g.element(&[2]).unwrap())
            .unwrap();
        assert_eq!(sum, g.element(&[1]).unwrap());

        let g23 = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let neg = g23.neg(&g23.element(&[1, 2]).unwrap()).unwrap();
        assert_eq!(neg, g23.element(&[1, 1]).unwrap());

        let x = g23.element(&[1, 2]).unwrap();
        let same = g23.add(&x, &g23.zero::<GroupElement>()).unwrap();
        assert_eq!(same, x);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let g = z(2);
        assert_eq!(
            g.enumerate(),
            vec![g.element(&[0]).unwrap(), g.element(&[1]).unwrap()]
        );

        let g22 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let order: Vec<Vec<u64>> = g22
            .enumerate()
            .into_iter()
            .map(|e| e.coords().to_vec())
            .collect();
        assert_eq!(
            order,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );

        assert_eq!(z(6).enumerate().len(), 6);
        assert_eq!(z(6).enumerate_dual().len(), 6);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let g = z(4);
        assert!(matches!(
            g.element(&[1, 2]),
            Err(Error::ShapeMismatch { expected: 1, got: 2 })
        ));
        let g23 = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let x = g23.element(&[1, 1]).unwrap();
        let chi = g23.character(&[0, 0]).unwrap();
        assert!(g23.pairing(&x, &chi).is_ok());
        let bad = DualCharacter::from_coords(vec![0]);
        assert!(g23.pairing(&x, &bad).is_err());
    }

    #[test]
    fn modulus_one_components_are_inert() {
        let g = FiniteAbelianGroup::new(vec![1, 3]).unwrap();
        assert_eq!(g.order(), 3);
        let x = g.element(&[5, 2]).unwrap();
        assert_eq!(x.coords(), &[0, 2]);
    }

    #[test]
    fn cyclic_pairing_rows_are_orthogonal() {
        for n in [2u64, 3, 4, 6, 8] {
            let g = z(n);
            let elements = g.enumerate();
            let duals = g.enumerate_dual();
            for a in &duals {
                for b in &duals {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for x in &elements {
                        acc += g.pairing(x, a).unwrap() * g.pairing(x, b).unwrap().conj();
                    }
                    let expected = if a == b { n as f64 } else { 0.0 };
                    assert_abs_diff_eq!(acc.re, expected, epsilon = 1e-9);
                    assert_abs_diff_eq!(acc.im, 0.0, epsilon = 1e-9);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn bicharacter_identity(
            moduli in proptest::collection::vec(1u64..7, 1..4),
            seed_x in proptest::collection::vec(0i64..100, 3),
            seed_y in proptest::collection::vec(0i64..100, 3),
            seed_c in proptest::collection::vec(0i64..100, 3),
        ) {
            let g = FiniteAbelianGroup::new(moduli.clone()).unwrap();
            let k = moduli.len();
            let x = g.element(&seed_x[..k]).unwrap();
            let y = g.element(&seed_y[..k]).unwrap();
            let chi = g.character(&seed_c[..k]).unwrap();

            let lhs = g.pairing(&g.add(&x, &y).unwrap(), &chi).unwrap();
            let rhs = g.pairing(&x, &chi).unwrap() * g.pairing(&y, &chi).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12);

            // unit modulus and conjugation symmetry
            prop_assert!((g.pairing(&x, &chi).unwrap().norm() - 1.0).abs() <= 1e-14);
            let conj = g.pairing(&x, &chi).unwrap().conj();
            let via_neg_x = g.pairing(&g.neg(&x).unwrap(), &chi).unwrap();
            let via_neg_chi = g.pairing(&x, &g.neg(&chi).unwrap()).unwrap();
            prop_assert!((conj - via_neg_x).norm() <= 1e-12);
            prop_assert!((conj - via_neg_chi).norm() <= 1e-12);
        }
    }
}
