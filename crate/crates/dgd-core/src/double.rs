//! The Drinfeld double D(G) as explicit sparse structure constants.
//!
//! Basis: {delta_h g : (h,g) in G x G}, with product
//! (delta_h g)(delta_t l) = [g^-1 h g = t] delta_h (gl). Tensor powers carry
//! the slotwise product. All structure maps, both R-matrices, the ribbon
//! data, the center, the integral, the Haar functional, and the axiom
//! verification suites live here.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::group::{CommutingPairOrbits, Elt, FiniteGroup, IDENTITY};
use crate::linalg::{self, CMat, C64};
use crate::tol;
use crate::RunConfig;

#[derive(Debug, Error)]
pub enum DoubleError {
    #[error("integral solution space has dimension {0}, expected 1")]
    IntegralDimension(usize),
    #[error("factorizability matrix is numerically singular (condition {0:.3e})")]
    SingularFactorizability(f64),
}

/// Sparse element of D(G)^(tensor K); keys are K-tuples of basis pairs.
#[derive(Clone, Debug, Default)]
pub struct Tensor<const K: usize> {
    terms: BTreeMap<[(Elt, Elt); K], C64>,
}

pub type DoubleElement = Tensor<1>;
pub type TensorElement = Tensor<2>;
pub type TripleTensor = Tensor<3>;

impl<const K: usize> Tensor<K> {
    pub fn zero() -> Self {
        Tensor { terms: BTreeMap::new() }
    }

    pub fn basis(key: [(Elt, Elt); K]) -> Self {
        let mut t = Self::zero();
        t.add_term(key, Complex64::new(1.0, 0.0));
        t
    }

    pub fn add_term(&mut self, key: [(Elt, Elt); K], c: C64) {
        *self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[(Elt, Elt); K], &C64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &[(Elt, Elt); K]) -> C64 {
        self.terms.get(key).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn scaled(&self, c: C64) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.pruned()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(*k, *c);
        }
        out.pruned()
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(*k, -*c);
        }
        out.pruned()
    }

    /// Drop coefficients below the global pruning threshold.
    pub fn pruned(mut self) -> Self {
        self.terms.retain(|_, c| c.norm() > tol::PRUNE);
        self
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sup-norm distance between coefficient vectors.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut d = 0.0f64;
        for (k, c) in self.terms() {
            d = d.max((c - other.coeff(k)).norm());
        }
        for (k, c) in other.terms() {
            if !self.terms.contains_key(k) {
                d = d.max(c.norm());
            }
        }
        d
    }

    /// Linear extension of a basis-to-basis map (coefficients untouched).
    pub fn map_basis(&self, f: impl Fn(&[(Elt, Elt); K]) -> [(Elt, Elt); K]) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms() {
            out.add_term(f(k), *c);
        }
        out.pruned()
    }

    /// Conjugate all coefficients (no basis change).
    pub fn conj_coeffs(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms() {
            out.add_term(*k, c.conj());
        }
        out
    }

    /// Slotwise product. The right factor is pre-grouped by its projection
    /// parts so each left term only meets compatible right terms:
    /// (delta_h g)(delta_t l) vanishes unless t = g^-1 h g.
    #[allow(clippy::type_complexity)]
    pub fn mul(&self, rhs: &Self, g: &FiniteGroup) -> Self {
        let mut grouped: BTreeMap<[Elt; K], Vec<([(Elt, Elt); K], C64)>> = BTreeMap::new();
        for (k, c) in rhs.terms() {
            let mut proj = [0 as Elt; K];
            for (i, &(t, _)) in k.iter().enumerate() {
                proj[i] = t;
            }
            grouped.entry(proj).or_default().push((*k, *c));
        }
        let mut out = Self::zero();
        for (lk, lc) in self.terms() {
            let mut need = [0 as Elt; K];
            for (i, &(h, a)) in lk.iter().enumerate() {
                need[i] = g.mul(g.mul(g.inv(a), h), a);
            }
            if let Some(matches) = grouped.get(&need) {
                for (rk, rc) in matches {
                    let mut key = [(0 as Elt, 0 as Elt); K];
                    for i in 0..K {
                        key[i] = (lk[i].0, g.mul(lk[i].1, rk[i].1));
                    }
                    out.add_term(key, lc * rc);
                }
            }
        }
        out.pruned()
    }
}

/// v tensor w for single elements.
pub fn tensor2(a: &DoubleElement, b: &DoubleElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            out.add_term([ka[0], kb[0]], ca * cb);
        }
    }
    out.pruned()
}

/// Swap the two slots (the flip tau).
pub fn swap(t: &TensorElement) -> TensorElement {
    t.map_basis(|k| [k[1], k[0]])
}

/// Permute slots of a triple: result slot i = input slot perm[i].
pub fn permute3(t: &TripleTensor, perm: [usize; 3]) -> TripleTensor {
    t.map_basis(|k| [k[perm[0]], k[perm[1]], k[perm[2]]])
}

/// Embed a two-slot tensor into three slots, placing the unit (sum over
/// delta_t 1) in slot `unit_pos`.
pub fn insert_unit_slot(t: &TensorElement, unit_pos: usize, g: &FiniteGroup) -> TripleTensor {
    let mut out = TripleTensor::zero();
    for (k, c) in t.terms() {
        for u in g.elements() {
            let mut key = [(0 as Elt, 0 as Elt); 3];
            let mut src = 0usize;
            for (i, slot) in key.iter_mut().enumerate() {
                if i == unit_pos {
                    *slot = (u, IDENTITY);
                } else {
                    *slot = k[src];
                    src += 1;
                }
            }
            out.add_term(key, *c);
        }
    }
    out
}

/// Element of D(G)* stored as its value on each basis element delta_h g;
/// evaluation is the plain contraction against coefficients.
#[derive(Clone, Debug)]
pub struct DoubleFunctional {
    pub values: Vec<C64>,
    n: usize,
}

impl DoubleFunctional {
    pub fn from_fn(g: &FiniteGroup, mut f: impl FnMut(Elt, Elt) -> C64) -> Self {
        let n = g.order();
        let mut values = vec![Complex64::new(0.0, 0.0); n * n];
        for h in g.elements() {
            for x in g.elements() {
                values[h as usize * n + x as usize] = f(h, x);
            }
        }
        DoubleFunctional { values, n }
    }

    pub fn value(&self, h: Elt, g: Elt) -> C64 {
        self.values[h as usize * self.n + g as usize]
    }

    pub fn eval(&self, x: &DoubleElement) -> C64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in x.terms() {
            acc += self.value(k[0].0, k[0].1) * c;
        }
        acc
    }
}

/// Convolution product on D(G)*: (f1 . f2)(x) = (f1 tensor f2)(Delta x),
/// which on values reads (f1 f2)(h,g) = sum_t f1(t,g) f2(h t^-1, g).
pub fn functional_bullet(
    g: &FiniteGroup,
    f1: &DoubleFunctional,
    f2: &DoubleFunctional,
) -> DoubleFunctional {
    DoubleFunctional::from_fn(g, |h, x| {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in g.elements() {
            let s = g.mul(h, g.inv(t));
            acc += f1.value(t, x) * f2.value(s, x);
        }
        acc
    })
}

/// Counit of D(G)*: evaluation at the unit of D(G), i.e. sum_h f(h, 1).
pub fn functional_counit(g: &FiniteGroup, f: &DoubleFunctional) -> C64 {
    g.elements().map(|h| f.value(h, IDENTITY)).sum()
}

/// The pairing (1/|G|^2) sum over (h,g) of f1(h,g) f2(h,g) (bilinear).
pub fn pairing(g: &FiniteGroup, f1: &DoubleFunctional, f2: &DoubleFunctional) -> C64 {
    let scale = 1.0 / (g.order() as f64 * g.order() as f64);
    let dot: C64 = f1.values.iter().zip(&f2.values).map(|(a, b)| a * b).sum();
    dot * Complex64::new(scale, 0.0)
}

/// gram += A^* A for a sparse matrix A given as row -> [(col, value)];
/// each row contributes the outer product of its entry list.
fn accumulate_gram_rows(gram: &mut CMat, rows: &BTreeMap<usize, Vec<(usize, C64)>>) {
    for entries in rows.values() {
        for &(i, vi) in entries {
            for &(j, vj) in entries {
                gram[(i, j)] += vi.conj() * vj;
            }
        }
    }
}

/// Which of the two standard R-matrices to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RVariant {
    /// R = sum delta_h g tensor delta_g 1.
    Standard,
    /// R' = (tau R)^-1 = sum delta_g 1 tensor delta_h g^-1.
    Prime,
}

/// Context for D(G) computations over a fixed group.
pub struct Double<'a> {
    pub group: &'a FiniteGroup,
}

impl<'a> Double<'a> {
    pub fn new(group: &'a FiniteGroup) -> Self {
        Double { group }
    }

    fn n(&self) -> usize {
        self.group.order()
    }

    /// 1 = sum_g delta_g 1.
    pub fn unit(&self) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for t in self.group.elements() {
            out.add_term([(t, IDENTITY)], Complex64::new(1.0, 0.0));
        }
        out
    }

    /// 1 tensor 1.
    pub fn unit2(&self) -> TensorElement {
        tensor2(&self.unit(), &self.unit())
    }

    /// 1 tensor 1 tensor 1.
    pub fn unit3(&self) -> TripleTensor {
        insert_unit_slot(&self.unit2(), 2, self.group)
    }

    pub fn multiply(&self, x: &DoubleElement, y: &DoubleElement) -> DoubleElement {
        x.mul(y, self.group)
    }

    /// Delta(delta_h g) = sum_{st=h} delta_t g tensor delta_s g.
    pub fn coproduct(&self, x: &DoubleElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (k, c) in x.terms() {
            let (h, a) = k[0];
            for t in self.group.elements() {
                let s = self.group.mul(h, self.group.inv(t));
                out.add_term([(t, a), (s, a)], *c);
            }
        }
        out.pruned()
    }

    /// Apply Delta to one slot of a two-slot tensor (slot = 0 or 1).
    pub fn coproduct_slot(&self, t: &TensorElement, slot: usize) -> TripleTensor {
        let mut out = TripleTensor::zero();
        for (k, c) in t.terms() {
            let (h, a) = k[slot];
            let other = k[1 - slot];
            for tt in self.group.elements() {
                let s = self.group.mul(h, self.group.inv(tt));
                let key = if slot == 0 {
                    [(tt, a), (s, a), other]
                } else {
                    [other, (tt, a), (s, a)]
                };
                out.add_term(key, *c);
            }
        }
        out.pruned()
    }

    /// epsilon(delta_h g) = [h = 1].
    pub fn counit(&self, x: &DoubleElement) -> C64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in x.terms() {
            if k[0].0 == IDENTITY {
                acc += c;
            }
        }
        acc
    }

    /// Apply the counit to one slot of a two-slot tensor.
    pub fn counit_slot(&self, t: &TensorElement, slot: usize) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for (k, c) in t.terms() {
            if k[slot].0 == IDENTITY {
                out.add_term([k[1 - slot]], *c);
            }
        }
        out.pruned()
    }

    /// S(delta_h g) = delta_{g^-1 h^-1 g} g^-1.
    pub fn antipode(&self, x: &DoubleElement) -> DoubleElement {
        x.map_basis(|k| [self.antipode_key(k[0])])
    }

    fn antipode_key(&self, (h, a): (Elt, Elt)) -> (Elt, Elt) {
        let g = self.group;
        (g.mul(g.mul(g.inv(a), g.inv(h)), a), g.inv(a))
    }

    /// Antipode applied to one slot of a two-slot tensor.
    pub fn antipode_slot(&self, t: &TensorElement, slot: usize) -> TensorElement {
        t.map_basis(|k| {
            let mut out = *k;
            out[slot] = self.antipode_key(k[slot]);
            out
        })
    }

    /// (delta_h g)^star = delta_{g^-1 h g} g^-1, extended conjugate-linearly.
    pub fn star(&self, x: &DoubleElement) -> DoubleElement {
        let g = self.group;
        x.conj_coeffs().map_basis(|k| {
            let (h, a) = k[0];
            [(g.mul(g.mul(g.inv(a), h), a), g.inv(a))]
        })
    }

    /// star tensor star on a two-slot tensor (one coefficient conjugation).
    pub fn star2(&self, t: &TensorElement) -> TensorElement {
        let g = self.group;
        t.conj_coeffs().map_basis(|k| {
            let mut out = *k;
            for slot in out.iter_mut() {
                let (h, a) = *slot;
                *slot = (g.mul(g.mul(g.inv(a), h), a), g.inv(a));
            }
            out
        })
    }

    /// The chosen R-matrix.
    pub fn r_matrix(&self, variant: RVariant) -> TensorElement {
        let g = self.group;
        let mut out = TensorElement::zero();
        for h in g.elements() {
            for a in g.elements() {
                match variant {
                    RVariant::Standard => {
                        out.add_term([(h, a), (a, IDENTITY)], Complex64::new(1.0, 0.0))
                    }
                    RVariant::Prime => {
                        out.add_term([(a, IDENTITY), (h, g.inv(a))], Complex64::new(1.0, 0.0))
                    }
                }
            }
        }
        out
    }

    /// R^-1 = (S tensor id)(R); holds for both variants.
    pub fn r_inverse(&self, variant: RVariant) -> TensorElement {
        self.antipode_slot(&self.r_matrix(variant), 0)
    }

    /// Monodromy Q = (tau R) R in closed form:
    /// standard: sum delta_h g tensor delta_{h g h^-1} h;
    /// prime: sum delta_h g tensor delta_{g^-1} (g^-1 h^-1 g).
    pub fn monodromy_q(&self, variant: RVariant) -> TensorElement {
        let g = self.group;
        let mut out = TensorElement::zero();
        for h in g.elements() {
            for a in g.elements() {
                let key = match variant {
                    RVariant::Standard => {
                        [(h, a), (g.conj(h, a), h)]
                    }
                    RVariant::Prime => {
                        let ia = g.inv(a);
                        [(h, a), (ia, g.mul(g.mul(ia, g.inv(h)), a))]
                    }
                };
                out.add_term(key, Complex64::new(1.0, 0.0));
            }
        }
        out
    }

    /// Q^-1 = R^-1 (tau R)^-1 = R^-1 tau(R^-1).
    pub fn monodromy_q_inverse(&self, variant: RVariant) -> TensorElement {
        let rinv = self.r_inverse(variant);
        rinv.mul(&swap(&rinv), self.group)
    }

    /// Drinfeld element u = m (S tensor id) (tau R): u = sum delta_{g^-1} g,
    /// primed variant u' = sum delta_g g (= u^-1).
    pub fn drinfeld_u(&self, variant: RVariant) -> DoubleElement {
        let g = self.group;
        let mut out = DoubleElement::zero();
        for a in g.elements() {
            let key = match variant {
                RVariant::Standard => (g.inv(a), a),
                RVariant::Prime => (a, a),
            };
            out.add_term([key], Complex64::new(1.0, 0.0));
        }
        out
    }

    pub fn drinfeld_u_inverse(&self, variant: RVariant) -> DoubleElement {
        match variant {
            RVariant::Standard => self.drinfeld_u(RVariant::Prime),
            RVariant::Prime => self.drinfeld_u(RVariant::Standard),
        }
    }

    /// Recompute u from the defining expression m (S tensor id)(tau R).
    pub fn drinfeld_u_from_r(&self, variant: RVariant) -> DoubleElement {
        let tr = swap(&self.r_matrix(variant));
        let s_tr = self.antipode_slot(&tr, 0);
        let mut out = DoubleElement::zero();
        for (k, c) in s_tr.terms() {
            let prod = DoubleElement::basis([k[0]]).mul(&DoubleElement::basis([k[1]]), self.group);
            for (pk, pc) in prod.terms() {
                out.add_term(*pk, c * pc);
            }
        }
        out.pruned()
    }

    /// Ribbon element v = u (the double is ribbon with this choice).
    pub fn ribbon_v(&self, variant: RVariant) -> DoubleElement {
        self.drinfeld_u(variant)
    }

    /// One orbit sum sum_{l in G} delta_{l h l^-1} (l g l^-1) per orbit.
    pub fn center_basis(&self, orbits: &CommutingPairOrbits) -> Vec<DoubleElement> {
        let g = self.group;
        orbits
            .reps
            .iter()
            .map(|&(h, a)| {
                let mut z = DoubleElement::zero();
                for l in g.elements() {
                    z.add_term([(g.conj(l, h), g.conj(l, a))], Complex64::new(1.0, 0.0));
                }
                z
            })
            .collect()
    }

    /// Two-sided integral in closed form: Lambda = sum_g delta_1 g.
    pub fn integral_closed(&self) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for a in self.group.elements() {
            out.add_term([(IDENTITY, a)], Complex64::new(1.0, 0.0));
        }
        out
    }

    /// Solve x b = epsilon(b) x over all basis b, assert a one-dimensional
    /// solution space, and normalize the lexicographically first nonzero
    /// coefficient to 1.
    pub fn integral_solved(&self) -> Result<DoubleElement, DoubleError> {
        let n = self.n();
        let dim = n * n;
        let g = self.group;
        // Accumulate the Gram matrix of all constraint blocks
        // M_b = R_b - eps(b) I, where R_b is right multiplication by b.
        let mut gram = CMat::zeros(dim, dim);
        for t in g.elements() {
            for l in g.elements() {
                // Right multiplication by delta_t l: delta_h a -> [a^-1 h a = t] delta_h (a l).
                // Column (h,a) has at most one entry; epsilon(b) = [t = 1].
                let mut rows: BTreeMap<usize, Vec<(usize, C64)>> = BTreeMap::new();
                for h in g.elements() {
                    for a in g.elements() {
                        let col = h as usize * n + a as usize;
                        if g.mul(g.mul(g.inv(a), h), a) == t {
                            let row = h as usize * n + g.mul(a, l) as usize;
                            rows.entry(row).or_default().push((col, Complex64::new(1.0, 0.0)));
                        }
                        if t == IDENTITY {
                            rows.entry(col).or_default().push((col, Complex64::new(-1.0, 0.0)));
                        }
                    }
                }
                accumulate_gram_rows(&mut gram, &rows);
            }
        }
        let ns = linalg::nullspace_of_gram(&gram);
        if ns.len() != 1 {
            return Err(DoubleError::IntegralDimension(ns.len()));
        }
        let v = &ns[0];
        let first = (0..dim)
            .find(|&i| v[i].norm() > 1e-6)
            .expect("nullspace vector is nonzero");
        let scale = Complex64::new(1.0, 0.0) / v[first];
        let mut out = DoubleElement::zero();
        for h in g.elements() {
            for a in g.elements() {
                let c = v[h as usize * n + a as usize] * scale;
                if c.norm() > tol::PRUNE {
                    out.add_term([(h, a)], c);
                }
            }
        }
        Ok(out.pruned())
    }

    /// Haar functional: value [g = 1] on delta_h g.
    pub fn haar(&self) -> DoubleFunctional {
        DoubleFunctional::from_fn(self.group, |_, x| {
            if x == IDENTITY {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Matrix of zeta -> (zeta tensor id) Q from delta-functionals to basis
    /// elements; D(G) is factorizable, so this must be invertible.
    pub fn factorizability_matrix(&self) -> CMat {
        let n = self.n();
        let dim = n * n;
        let q = self.monodromy_q(RVariant::Standard);
        let mut m = CMat::zeros(dim, dim);
        for (k, c) in q.terms() {
            let col = k[0].0 as usize * n + k[0].1 as usize;
            let row = k[1].0 as usize * n + k[1].1 as usize;
            m[(row, col)] += c;
        }
        m
    }

    /// Dimension of the center certified by linear algebra. For orders up to
    /// 12 this solves the full centering equations against every basis
    /// element; beyond that it intersects commutant kernels of seeded random
    /// elements (an upper bound matching the orbit-sum lower bound).
    pub fn center_dimension_certified(&self, seed: u64) -> usize {
        let n = self.n();
        let dim = n * n;
        let g = self.group;
        let mut gram = CMat::zeros(dim, dim);
        if n <= 12 {
            for t in g.elements() {
                for l in g.elements() {
                    self.accumulate_commutator_gram(&mut gram, &DoubleElement::basis([(t, l)]));
                }
            }
        } else {
            // Two dense generic elements almost surely generate every simple
            // block, so their joint commutant is exactly the center.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..2 {
                let mut y = DoubleElement::zero();
                for h in g.elements() {
                    for a in g.elements() {
                        let c =
                            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                        y.add_term([(h, a)], c);
                    }
                }
                self.accumulate_commutator_gram(&mut gram, &y);
            }
        }
        linalg::nullspace_of_gram(&gram).len()
    }

    /// gram += A^* A where A is the matrix of x -> yx - xy.
    fn accumulate_commutator_gram(&self, gram: &mut CMat, y: &DoubleElement) {
        let n = self.n();
        let g = self.group;
        let mut rows: BTreeMap<usize, Vec<(usize, C64)>> = BTreeMap::new();
        for h in g.elements() {
            for a in g.elements() {
                let x = DoubleElement::basis([(h, a)]);
                let comm = y.mul(&x, g).minus(&x.mul(y, g));
                let col = h as usize * n + a as usize;
                for (k, c) in comm.terms() {
                    let row = k[0].0 as usize * n + k[0].1 as usize;
                    rows.entry(row).or_default().push((col, *c));
                }
            }
        }
        accumulate_gram_rows(gram, &rows);
    }

    /// Deterministic sparse random element for property tests.
    pub fn random_element(&self, rng: &mut ChaCha8Rng, terms: usize) -> DoubleElement {
        let n = self.n();
        let mut out = DoubleElement::zero();
        for _ in 0..terms {
            let h = rng.gen_range(0..n) as Elt;
            let a = rng.gen_range(0..n) as Elt;
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            out.add_term([(h, a)], c);
        }
        out.pruned()
    }
}

/// Which verification suites to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Bialgebra,
    Hopf,
    Quasitriangular,
    Ybe,
    Ribbon,
    Antireal,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        vec![
            Suite::Bialgebra,
            Suite::Hopf,
            Suite::Quasitriangular,
            Suite::Ybe,
            Suite::Ribbon,
            Suite::Antireal,
        ]
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        match s {
            "all" => Some(Suite::all()),
            "bialgebra" => Some(vec![Suite::Bialgebra]),
            "hopf" => Some(vec![Suite::Hopf]),
            "quasitriangular" => Some(vec![Suite::Quasitriangular]),
            "ybe" => Some(vec![Suite::Ybe]),
            "ribbon" => Some(vec![Suite::Ribbon]),
            "antireal" => Some(vec![Suite::Antireal]),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Bialgebra => "bialgebra",
            Suite::Hopf => "hopf",
            Suite::Quasitriangular => "quasitriangular",
            Suite::Ybe => "ybe",
            Suite::Ribbon => "ribbon",
            Suite::Antireal => "antireal",
        }
    }
}

/// Result of one verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub max_deviation: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub group: String,
    pub tolerance: f64,
    pub suites: Vec<SuiteResult>,
    pub all_pass: bool,
}

/// Tracks the maximal deviation and the identity/basis witness attaining it.
struct DevTracker {
    max: f64,
    witness: Option<String>,
}

impl DevTracker {
    fn new() -> Self {
        DevTracker { max: 0.0, witness: None }
    }

    fn note(&mut self, dev: f64, witness: impl FnOnce() -> String) {
        if dev > self.max {
            self.max = dev;
            self.witness = Some(witness());
        }
    }

    fn finish(self, suite: Suite, tol_pass: f64) -> SuiteResult {
        let pass = self.max <= tol_pass;
        SuiteResult {
            suite: suite.name().to_string(),
            max_deviation: self.max,
            pass,
            witness: if pass { None } else { self.witness },
        }
    }
}

impl<'a> Double<'a> {
    pub fn verify_axioms(&self, suites: &[Suite], cfg: &RunConfig) -> AxiomReport {
        let results: Vec<SuiteResult> = suites
            .iter()
            .map(|s| match s {
                Suite::Bialgebra => self.suite_bialgebra(cfg),
                Suite::Hopf => self.suite_hopf(cfg),
                Suite::Quasitriangular => self.suite_quasitriangular(cfg),
                Suite::Ybe => self.suite_ybe(cfg),
                Suite::Ribbon => self.suite_ribbon(cfg),
                Suite::Antireal => self.suite_antireal(cfg),
            })
            .collect();
        let all_pass = results.iter().all(|r| r.pass);
        AxiomReport {
            group: self.group.name().to_string(),
            tolerance: cfg.tol,
            suites: results,
            all_pass,
        }
    }

    fn basis_keys(&self) -> Vec<(Elt, Elt)> {
        let mut v = Vec::with_capacity(self.n() * self.n());
        for h in self.group.elements() {
            for a in self.group.elements() {
                v.push((h, a));
            }
        }
        v
    }

    fn suite_bialgebra(&self, cfg: &RunConfig) -> SuiteResult {
        let mut dev = DevTracker::new();
        let one = self.unit();
        dev.note(self.coproduct(&one).distance(&self.unit2()), || "Delta(1) = 1x1".into());
        dev.note(
            (self.counit(&one) - Complex64::new(1.0, 0.0)).norm(),
            || "epsilon(1) = 1".into(),
        );
        for &(h, a) in &self.basis_keys() {
            let x = DoubleElement::basis([(h, a)]);
            let dx = self.coproduct(&x);
            let left = self.coproduct_slot(&dx, 0);
            let right = self.coproduct_slot(&dx, 1);
            dev.note(left.distance(&right), || format!("coassociativity at (h={},g={})", h, a));
            dev.note(
                self.counit_slot(&dx, 0).distance(&x),
                || format!("left counit law at (h={},g={})", h, a),
            );
            dev.note(
                self.counit_slot(&dx, 1).distance(&x),
                || format!("right counit law at (h={},g={})", h, a),
            );
        }
        for &(h, a) in &self.basis_keys() {
            let x = DoubleElement::basis([(h, a)]);
            let dx = self.coproduct(&x);
            for &(t, l) in &self.basis_keys() {
                let y = DoubleElement::basis([(t, l)]);
                let xy = self.multiply(&x, &y);
                let lhs = self.coproduct(&xy);
                let rhs = dx.mul(&self.coproduct(&y), self.group);
                dev.note(lhs.distance(&rhs), || {
                    format!("Delta homomorphism at (h={},g={}),(t={},l={})", h, a, t, l)
                });
                let e_dev =
                    (self.counit(&xy) - self.counit(&x) * self.counit(&y)).norm();
                dev.note(e_dev, || {
                    format!("epsilon homomorphism at (h={},g={}),(t={},l={})", h, a, t, l)
                });
            }
        }
        dev.finish(Suite::Bialgebra, cfg.tol)
    }

    fn suite_hopf(&self, cfg: &RunConfig) -> SuiteResult {
        let mut dev = DevTracker::new();
        let one = self.unit();
        dev.note(self.antipode(&one).distance(&one), || "S(1) = 1".into());
        for &(h, a) in &self.basis_keys() {
            let x = DoubleElement::basis([(h, a)]);
            let dx = self.coproduct(&x);
            let target = one.scaled(self.counit(&x));
            let left = self.contract_product(&self.antipode_slot(&dx, 0));
            let right = self.contract_product(&self.antipode_slot(&dx, 1));
            dev.note(left.distance(&target), || format!("m(S x id)Delta at (h={},g={})", h, a));
            dev.note(right.distance(&target), || format!("m(id x S)Delta at (h={},g={})", h, a));
            let s2 = self.antipode(&self.antipode(&x));
            dev.note(s2.distance(&x), || format!("S^2 = id at (h={},g={})", h, a));
            let es = (self.counit(&self.antipode(&x)) - self.counit(&x)).norm();
            dev.note(es, || format!("epsilon S = epsilon at (h={},g={})", h, a));
            let ds = self.coproduct(&self.antipode(&x));
            let tsd = swap(&self.antipode_slot(&self.antipode_slot(&dx, 0), 1));
            dev.note(ds.distance(&tsd), || {
                format!("Delta S = tau (S x S) Delta at (h={},g={})", h, a)
            });
        }
        for &(h, a) in &self.basis_keys() {
            let x = DoubleElement::basis([(h, a)]);
            let sx = self.antipode(&x);
            for &(t, l) in &self.basis_keys() {
                let y = DoubleElement::basis([(t, l)]);
                let lhs = self.antipode(&self.multiply(&x, &y));
                let rhs = self.multiply(&self.antipode(&y), &sx);
                dev.note(lhs.distance(&rhs), || {
                    format!("S antihomomorphism at (h={},g={}),(t={},l={})", h, a, t, l)
                });
            }
        }
        dev.finish(Suite::Hopf, cfg.tol)
    }

    /// Multiply the two slots of each term (the module-level m map).
    fn contract_product(&self, t: &TensorElement) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for (k, c) in t.terms() {
            let prod =
                DoubleElement::basis([k[0]]).mul(&DoubleElement::basis([k[1]]), self.group);
            for (pk, pc) in prod.terms() {
                out.add_term(*pk, c * pc);
            }
        }
        out.pruned()
    }

    fn suite_quasitriangular(&self, cfg: &RunConfig) -> SuiteResult {
        let mut dev = DevTracker::new();
        for variant in [RVariant::Standard, RVariant::Prime] {
            let tag = match variant {
                RVariant::Standard => "R",
                RVariant::Prime => "R'",
            };
            let r = self.r_matrix(variant);
            let rinv = self.r_inverse(variant);
            dev.note(r.mul(&rinv, self.group).distance(&self.unit2()), || {
                format!("{} R^-1 = 1x1", tag)
            });
            dev.note(rinv.mul(&r, self.group).distance(&self.unit2()), || {
                format!("R^-1 {} = 1x1", tag)
            });
            dev.note(
                self.counit_slot(&r, 0).distance(&self.unit()),
                || format!("(eps x id){} = 1", tag),
            );
            dev.note(
                self.counit_slot(&r, 1).distance(&self.unit()),
                || format!("(id x eps){} = 1", tag),
            );
            self.qt_core_checks(&mut dev, &r, tag, cfg);
        }
        // R' is exactly (tau R)^-1.
        let tr = swap(&self.r_matrix(RVariant::Standard));
        let rp = self.r_matrix(RVariant::Prime);
        dev.note(tr.mul(&rp, self.group).distance(&self.unit2()), || {
            "(tau R) R' = 1x1".into()
        });
        dev.note(rp.mul(&tr, self.group).distance(&self.unit2()), || {
            "R' (tau R) = 1x1".into()
        });
        dev.finish(Suite::Quasitriangular, cfg.tol)
    }

    fn suite_ybe(&self, cfg: &RunConfig) -> SuiteResult {
        let mut dev = DevTracker::new();
        if self.n() <= cfg.triple_limit {
            for variant in [RVariant::Standard, RVariant::Prime] {
                let tag = match variant {
                    RVariant::Standard => "R",
                    RVariant::Prime => "R'",
                };
                let r = self.r_matrix(variant);
                let r12 = insert_unit_slot(&r, 2, self.group);
                let r13 = insert_unit_slot(&r, 1, self.group);
                let r23 = insert_unit_slot(&r, 0, self.group);
                let lhs = r12.mul(&r13, self.group).mul(&r23, self.group);
                let rhs = r23.mul(&r13, self.group).mul(&r12, self.group);
                dev.note(lhs.distance(&rhs), || format!("Yang-Baxter for {}", tag));
            }
        }
        dev.finish(Suite::Ybe, cfg.tol)
    }

    fn suite_ribbon(&self, cfg: &RunConfig) -> SuiteResult {
        let mut dev = DevTracker::new();
        for variant in [RVariant::Standard, RVariant::Prime] {
            let tag = match variant {
                RVariant::Standard => "v",
                RVariant::Prime => "v'",
            };
            let u = self.drinfeld_u(variant);
            let uinv = self.drinfeld_u_inverse(variant);
            let v = self.ribbon_v(variant);
            dev.note(u.distance(&self.drinfeld_u_from_r(variant)), || {
                format!("{}: u closed form = m(S x id)(tau R)", tag)
            });
            dev.note(
                self.multiply(&u, &uinv).distance(&self.unit()),
                || format!("{}: u u^-1 = 1", tag),
            );
            dev.note(self.antipode(&v).distance(&v), || format!("S({}) = {}", tag, tag));
            dev.note(
                (self.counit(&v) - Complex64::new(1.0, 0.0)).norm(),
                || format!("epsilon({}) = 1", tag),
            );
            let v2 = self.multiply(&v, &v);
            let usu = self.multiply(&u, &self.antipode(&u));
            dev.note(v2.distance(&usu), || format!("{}^2 = u S(u)", tag));
            for &(h, a) in &self.basis_keys() {
                let x = DoubleElement::basis([(h, a)]);
                let d = self.multiply(&v, &x).distance(&self.multiply(&x, &v));
                dev.note(d, || format!("{} central at (h={},g={})", tag, h, a));
            }
            let q = self.monodromy_q(variant);
            let tr = swap(&self.r_matrix(variant));
            let q_prod = tr.mul(&self.r_matrix(variant), self.group);
            dev.note(q.distance(&q_prod), || format!("{}: Q closed form = (tau R) R", tag));
            let qinv = self.monodromy_q_inverse(variant);
            dev.note(q.mul(&qinv, self.group).distance(&self.unit2()), || {
                format!("{}: Q Q^-1 = 1x1", tag)
            });
            let dv = self.coproduct(&v);
            let rhs = qinv.mul(&tensor2(&v, &v), self.group);
            dev.note(dv.distance(&rhs), || format!("Delta({}) = Q^-1 ({} x {})", tag, tag, tag));
        }
        dev.finish(Suite::Ribbon, cfg.tol)
    }

    fn suite_antireal(&self, cfg: &RunConfig) -> SuiteResult {
        let mut dev = DevTracker::new();
        let r = self.r_matrix(RVariant::Standard);
        let rinv = self.r_inverse(RVariant::Standard);
        dev.note(self.star2(&r).distance(&rinv), || "R^(star x star) = R^-1".into());
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for trial in 0..100 {
            let x = self.random_element(&mut rng, 6);
            let y = self.random_element(&mut rng, 6);
            let inv = self.star(&self.star(&x)).distance(&x);
            dev.note(inv, || format!("star involution, trial {}", trial));
            let anti = self
                .star(&self.multiply(&x, &y))
                .distance(&self.multiply(&self.star(&y), &self.star(&x)));
            dev.note(anti, || format!("star antimultiplicative, trial {}", trial));
            let co = self
                .star2(&self.coproduct(&x))
                .distance(&self.coproduct(&self.star(&x)));
            dev.note(co, || format!("star comultiplicative, trial {}", trial));
            let ss = self
                .star(&self.antipode(&self.star(&self.antipode(&x))))
                .distance(&x);
            dev.note(ss, || format!("(S star)^2 = id, trial {}", trial));
        }
        dev.finish(Suite::Antireal, cfg.tol)
    }

    /// The defining quasitriangularity checks for one R-matrix candidate:
    /// intertwining R Delta(x) = Delta^op(x) R over all basis elements and,
    /// within the triple-tensor size gate, both coproduct splittings.
    fn qt_core_checks(&self, dev: &mut DevTracker, r: &TensorElement, tag: &str, cfg: &RunConfig) {
        for &(h, a) in &self.basis_keys() {
            let x = DoubleElement::basis([(h, a)]);
            let dx = self.coproduct(&x);
            let lhs = r.mul(&dx, self.group);
            let rhs = swap(&dx).mul(r, self.group);
            dev.note(lhs.distance(&rhs), || {
                format!("{} intertwines Delta at (h={},g={})", tag, h, a)
            });
        }
        if self.n() <= cfg.triple_limit {
            let r13 = insert_unit_slot(r, 1, self.group);
            let r23 = insert_unit_slot(r, 0, self.group);
            let r12 = insert_unit_slot(r, 2, self.group);
            let dr0 = self.coproduct_slot(r, 0);
            dev.note(dr0.distance(&r13.mul(&r23, self.group)), || {
                format!("(Delta x id){} = {}13 {}23", tag, tag, tag)
            });
            let dr1 = self.coproduct_slot(r, 1);
            dev.note(dr1.distance(&r13.mul(&r12, self.group)), || {
                format!("(id x Delta){} = {}13 {}12", tag, tag, tag)
            });
        }
    }

    /// Max deviation of the defining quasitriangularity identities for an
    /// arbitrary candidate R (used to confirm the suite detects tampering).
    pub fn quasitriangular_deviation_for(&self, r: &TensorElement, cfg: &RunConfig) -> f64 {
        let mut dev = DevTracker::new();
        self.qt_core_checks(&mut dev, r, "candidate", cfg);
        dev.max
    }
}
