//! Functions on G x G supported on commuting pairs and constant on
//! simultaneous-conjugation orbits, stored as one value per orbit.
//!
//! These form the character subspace of D(G)*: expansion to the full
//! G x G grid (zero off commuting pairs) is how they pair with elements.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::double::DoubleFunctional;
use crate::group::{CommutingPairOrbits, Elt, FiniteGroup};
use crate::linalg::C64;

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantFunction {
    /// One value per commuting-pair orbit, in the orbit list's order.
    pub values: Vec<C64>,
}

impl InvariantFunction {
    pub fn zero(orbit_count: usize) -> Self {
        InvariantFunction { values: vec![Complex64::new(0.0, 0.0); orbit_count] }
    }

    pub fn from_orbit_values(values: Vec<C64>) -> Self {
        InvariantFunction { values }
    }

    /// Evaluate a pair function at each orbit representative.
    pub fn from_pair_fn(
        orbits: &CommutingPairOrbits,
        mut f: impl FnMut(Elt, Elt) -> C64,
    ) -> Self {
        InvariantFunction { values: orbits.reps.iter().map(|&(h, g)| f(h, g)).collect() }
    }

    /// Value at (h,g); zero off the commuting-pair support.
    pub fn value(&self, orbits: &CommutingPairOrbits, h: Elt, g: Elt) -> C64 {
        match orbits.orbit_of_pair.get(&(h, g)) {
            Some(&o) => self.values[o],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Expand to a function on the full G x G grid.
    pub fn to_functional(&self, g: &FiniteGroup, orbits: &CommutingPairOrbits) -> DoubleFunctional {
        DoubleFunctional::from_fn(g, |h, x| self.value(orbits, h, x))
    }

    /// Deterministic random invariant function for property tests.
    pub fn random(rng: &mut ChaCha8Rng, orbit_count: usize) -> Self {
        InvariantFunction {
            values: (0..orbit_count)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Project a grid function onto the invariant subspace by reading orbit
/// representatives; the second component is the max deviation from actually
/// lying in that subspace (non-constancy on orbits or support off commuting
/// pairs).
pub fn project_invariant(
    g: &FiniteGroup,
    orbits: &CommutingPairOrbits,
    f: &DoubleFunctional,
) -> (InvariantFunction, f64) {
    let inv = InvariantFunction::from_pair_fn(orbits, |h, x| f.value(h, x));
    let mut dev = 0.0f64;
    for h in g.elements() {
        for x in g.elements() {
            let expect = inv.value(orbits, h, x);
            dev = dev.max((f.value(h, x) - expect).norm());
        }
    }
    (inv, dev)
}

/// The normalized inner product (1/|G|) sum over commuting pairs of
/// f1 conj(f2), computed orbitwise.
pub fn inner_product(
    g: &FiniteGroup,
    orbits: &CommutingPairOrbits,
    f1: &InvariantFunction,
    f2: &InvariantFunction,
) -> C64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (o, orbit) in orbits.orbits.iter().enumerate() {
        acc += f1.values[o] * f2.values[o].conj() * Complex64::new(orbit.len() as f64, 0.0);
    }
    acc / Complex64::new(g.order() as f64, 0.0)
}
