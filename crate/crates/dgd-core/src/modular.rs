//! The SL2(Z)/GL2(Z) action on invariant functions, modular S and T
//! matrices in the character basis, the non-abelian Fourier matrix, and
//! fusion coefficients by brute force and by the Verlinde formula.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::double::SuiteResult;
use crate::group::{CommutingPairOrbits, Elt, FiniteGroup};
use crate::invariant::{inner_product, InvariantFunction};
use crate::linalg::{self, CMat, C64};
use crate::mackey::{Classification, MackeyError, MGLabel};
use crate::RunConfig;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Error)]
pub enum ModularError {
    #[error(transparent)]
    Mackey(#[from] MackeyError),
    #[error("operator image leaves the character span (residual {0:.3e})")]
    ExpansionResidual(f64),
    #[error("T matrix is not diagonal (off-diagonal mass {0:.3e})")]
    TNotDiagonal(f64),
    #[error("Verlinde denominator S[{row},0] is numerically zero")]
    ZeroVerlindeDenominator { row: usize },
    #[error("fusion coefficients are not integers (residual {0:.3e})")]
    FusionResidual(f64),
    #[error("fusion coefficient at ({i},{j},{k}) rounds to the negative value {value}")]
    NegativeFusion { i: usize, j: usize, k: usize, value: i64 },
    #[error("unsupported generator token '{0}' (expected s, s-, t, t-, j1, j2)")]
    BadToken(String),
}

/// 2x2 integer matrices acting on pairs; the generated subgroup of GL2(Z).
pub type IntMat2 = [[i64; 2]; 2];

pub const MAT_ID: IntMat2 = [[1, 0], [0, 1]];
pub const MAT_S: IntMat2 = [[0, 1], [-1, 0]];
pub const MAT_S_INV: IntMat2 = [[0, -1], [1, 0]];
pub const MAT_T: IntMat2 = [[1, 1], [0, 1]];
pub const MAT_T_INV: IntMat2 = [[1, -1], [0, 1]];
pub const MAT_J1: IntMat2 = [[-1, 0], [0, 1]];
pub const MAT_J2: IntMat2 = [[1, 0], [0, -1]];

pub fn mat_mul(a: IntMat2, b: IntMat2) -> IntMat2 {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Parse a comma-separated generator word like "s,t,t,s-,j1" into its
/// matrix product (left-to-right).
pub fn parse_word(word: &str) -> Result<IntMat2, ModularError> {
    let mut acc = MAT_ID;
    for tok in word.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let m = match tok {
            "s" => MAT_S,
            "s-" => MAT_S_INV,
            "t" => MAT_T,
            "t-" => MAT_T_INV,
            "j1" => MAT_J1,
            "j2" => MAT_J2,
            other => return Err(ModularError::BadToken(other.to_string())),
        };
        acc = mat_mul(acc, m);
    }
    Ok(acc)
}

/// Which of the two actions on invariant functions to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionVariant {
    /// The twisted action: A . f = (j2 A j2) .' f.
    Dot,
    /// The right-translation action (A .' f)(h,g) = f((h,g)A),
    /// (h,g)(a b; c d) = (h^a g^c, h^b g^d).
    DotPrime,
}

/// Apply a 2x2 integer matrix to an invariant function. The result is again
/// invariant; in debug builds this is verified over every commuting pair.
pub fn act(
    g: &FiniteGroup,
    orbits: &CommutingPairOrbits,
    a: IntMat2,
    f: &InvariantFunction,
    variant: ActionVariant,
) -> InvariantFunction {
    let m = match variant {
        ActionVariant::DotPrime => a,
        ActionVariant::Dot => mat_mul(mat_mul(MAT_J2, a), MAT_J2),
    };
    let image = |h: Elt, x: Elt| {
        let p = g.mul(g.pow(h, m[0][0]), g.pow(x, m[1][0]));
        let q = g.mul(g.pow(h, m[0][1]), g.pow(x, m[1][1]));
        f.value(orbits, p, q)
    };
    let out = InvariantFunction::from_pair_fn(orbits, image);
    #[cfg(debug_assertions)]
    for &(h, x) in &orbits.pairs {
        let dev = (image(h, x) - out.value(orbits, h, x)).norm();
        debug_assert!(dev < 1e-9, "matrix action broke invariance at ({h},{x})");
    }
    out
}

/// The Fourier-type operator script-S = action of s^-1 under .'.
pub fn s_transform(
    g: &FiniteGroup,
    orbits: &CommutingPairOrbits,
    f: &InvariantFunction,
) -> InvariantFunction {
    act(g, orbits, MAT_S_INV, f, ActionVariant::DotPrime)
}

/// Inverse of the above: action of s under .'.
pub fn s_transform_inv(
    g: &FiniteGroup,
    orbits: &CommutingPairOrbits,
    f: &InvariantFunction,
) -> InvariantFunction {
    act(g, orbits, MAT_S, f, ActionVariant::DotPrime)
}

/// Convolution product on invariant functions:
/// (f1 • f2)(h,g) = sum over st = h of f1(t,g) f2(s,g).
pub fn bullet_invariant(
    g: &FiniteGroup,
    orbits: &CommutingPairOrbits,
    f1: &InvariantFunction,
    f2: &InvariantFunction,
) -> InvariantFunction {
    InvariantFunction::from_pair_fn(orbits, |h, x| {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in g.elements() {
            acc += f1.value(orbits, t, x) * f2.value(orbits, g.mul(h, g.inv(t)), x);
        }
        acc
    })
}

/// The transported D(G) multiplication on invariant functions:
/// (f1 . f2)(h,m) = sum over x of f1(h,x) f2(x^-1 h x, x^-1 m).
pub fn dot_invariant(
    g: &FiniteGroup,
    orbits: &CommutingPairOrbits,
    f1: &InvariantFunction,
    f2: &InvariantFunction,
) -> InvariantFunction {
    InvariantFunction::from_pair_fn(orbits, |h, m| {
        let mut acc = Complex64::new(0.0, 0.0);
        for x in g.elements() {
            acc += f1.value(orbits, h, x)
                * f2.value(orbits, g.conj(g.inv(x), h), g.mul(g.inv(x), m));
        }
        acc
    })
}

/// Modular data in the canonical label basis.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub labels: Vec<MGLabel>,
    pub dims: Vec<usize>,
    /// Matrix of script-S = s^-1 (.' action) in the character basis.
    pub s: CMat,
    /// Matrix of t (.' action); diagonal with unit-modulus entries.
    pub t: CMat,
    /// The non-abelian Fourier pairing matrix over labels.
    pub ft: CMat,
}

/// Fusion coefficients as a 3-index tensor of non-negative integers.
#[derive(Clone, Debug, Serialize)]
pub struct FusionTable {
    pub n: Vec<Vec<Vec<u32>>>,
    pub residual: f64,
}

impl FusionTable {
    pub fn size(&self) -> usize {
        self.n.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[i][j][k]
    }

    /// Max deviation from the structural fusion-ring laws: unit row,
    /// commutativity, associativity, and the dimension homomorphism.
    pub fn structure_deviation(&self, dims: &[usize]) -> f64 {
        let l = self.size();
        let mut dev = 0.0f64;
        for j in 0..l {
            for k in 0..l {
                let expect = if j == k { 1 } else { 0 };
                dev = dev.max((self.n[0][j][k] as f64 - expect as f64).abs());
                dev = dev.max((self.n[j][0][k] as f64 - expect as f64).abs());
                for i in 0..l {
                    dev = dev.max((self.n[i][j][k] as f64 - self.n[j][i][k] as f64).abs());
                }
            }
        }
        // Associativity: sum_m N(i,j,m) N(m,k,l2) = sum_m N(j,k,m) N(i,m,l2).
        for i in 0..l {
            for j in 0..l {
                for k in 0..l {
                    for l2 in 0..l {
                        let lhs: i64 = (0..l)
                            .map(|m| self.n[i][j][m] as i64 * self.n[m][k][l2] as i64)
                            .sum();
                        let rhs: i64 = (0..l)
                            .map(|m| self.n[j][k][m] as i64 * self.n[i][m][l2] as i64)
                            .sum();
                        dev = dev.max((lhs - rhs).abs() as f64);
                    }
                }
            }
        }
        for i in 0..l {
            for j in 0..l {
                let total: i64 =
                    (0..l).map(|k| self.n[i][j][k] as i64 * dims[k] as i64).sum();
                dev = dev.max((total - (dims[i] * dims[j]) as i64).abs() as f64);
            }
        }
        dev
    }
}

/// Modular/fusion computations over one classification.
pub struct Modular<'a, 'g> {
    pub cl: &'a Classification<'g>,
    pub chars: Vec<InvariantFunction>,
}

impl<'a, 'g> Modular<'a, 'g> {
    pub fn new(cl: &'a Classification<'g>) -> Self {
        let chars = cl.all_characters();
        Modular { cl, chars }
    }

    fn group(&self) -> &FiniteGroup {
        self.cl.group
    }

    fn orbits(&self) -> &CommutingPairOrbits {
        &self.cl.orbits
    }

    /// Expand an invariant function in the orthonormal character basis;
    /// errors if the residual exceeds `tol`.
    pub fn expand_in_characters(
        &self,
        f: &InvariantFunction,
        tol: f64,
    ) -> Result<Vec<C64>, ModularError> {
        let coeffs: Vec<C64> = self
            .chars
            .iter()
            .map(|chi| inner_product(self.group(), self.orbits(), f, chi))
            .collect();
        let mut recon = InvariantFunction::zero(self.orbits().orbit_count());
        for (c, chi) in coeffs.iter().zip(&self.chars) {
            for (r, v) in recon.values.iter_mut().zip(&chi.values) {
                *r += c * v;
            }
        }
        let dev = recon.distance(f);
        if dev > tol {
            return Err(ModularError::ExpansionResidual(dev));
        }
        Ok(coeffs)
    }

    /// Matrix of a linear operator on the invariant subspace in the
    /// character basis: column j expands op(chi_j).
    pub fn matrix_of_operator(
        &self,
        mut op: impl FnMut(&InvariantFunction) -> InvariantFunction,
        tol: f64,
    ) -> Result<CMat, ModularError> {
        let l = self.chars.len();
        let mut m = CMat::zeros(l, l);
        for (j, chi) in self.chars.iter().enumerate() {
            let image = op(chi);
            let coeffs = self.expand_in_characters(&image, tol)?;
            for (i, c) in coeffs.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }

    /// S, T, and the Fourier pairing matrix in the canonical label order.
    pub fn modular_data(&self, tol: f64) -> Result<ModularData, ModularError> {
        let g = self.group();
        let orbits = self.orbits();
        let s = self.matrix_of_operator(|f| s_transform(g, orbits, f), tol)?;
        let t =
            self.matrix_of_operator(|f| act(g, orbits, MAT_T, f, ActionVariant::DotPrime), tol)?;
        let mut off = 0.0f64;
        for i in 0..t.nrows() {
            for j in 0..t.ncols() {
                if i != j {
                    off = off.max(t[(i, j)].norm());
                }
            }
        }
        if off > tol {
            return Err(ModularError::TNotDiagonal(off));
        }
        let ft = self.fourier_matrix();
        let labels = self.cl.labels.clone();
        let dims = labels.iter().map(|&l| self.cl.module_dimension(l)).collect();
        Ok(ModularData { labels, dims, s, t, ft })
    }

    /// The Fourier pairing matrix:
    /// FT[i][j] = (|O_i||O_j|/|G|^2) sum over x with x g_j x^-1 in C(g_i) of
    /// Tr rho_i(x g_j x^-1) conj(Tr rho_j(x^-1 g_i x)).
    pub fn fourier_matrix(&self) -> CMat {
        let g = self.group();
        let cl = self.cl;
        let l = cl.labels.len();
        let n = g.order() as f64;
        let mut ft = CMat::zeros(l, l);
        for (i, &li) in cl.labels.iter().enumerate() {
            let ki = li.class_index;
            let gi = cl.conj.reps[ki];
            let emb_i = &cl.conj.centralizers[ki];
            let size_i = cl.conj.classes[ki].len() as f64;
            for (j, &lj) in cl.labels.iter().enumerate() {
                let kj = lj.class_index;
                let gj = cl.conj.reps[kj];
                let emb_j = &cl.conj.centralizers[kj];
                let size_j = cl.conj.classes[kj].len() as f64;
                let mut acc = Complex64::new(0.0, 0.0);
                for x in g.elements() {
                    let u = g.conj(x, gj);
                    let Some(local_i) = emb_i.local_of(u) else { continue };
                    let v = g.conj(g.inv(x), gi);
                    let local_j = emb_j
                        .local_of(v)
                        .expect("x^-1 g_i x centralizes g_j whenever x g_j x^-1 centralizes g_i");
                    let tr_i = cl.centralizer_tables[ki].values[li.irrep_index]
                        [cl.centralizer_conj[ki].class_of[local_i]];
                    let tr_j = cl.centralizer_tables[kj].values[lj.irrep_index]
                        [cl.centralizer_conj[kj].class_of[local_j]];
                    acc += tr_i * tr_j.conj();
                }
                ft[(i, j)] = acc * Complex64::new(size_i * size_j / (n * n), 0.0);
            }
        }
        ft
    }

    /// Fusion coefficients from the tensor-product character rule:
    /// expand chi_i • chi_j in the character basis and round.
    pub fn fusion_bruteforce(&self) -> Result<FusionTable, ModularError> {
        let g = self.group();
        let orbits = self.orbits();
        let l = self.chars.len();
        let mut n = vec![vec![vec![0u32; l]; l]; l];
        let mut residual = 0.0f64;
        for i in 0..l {
            for j in 0..l {
                let prod = bullet_invariant(g, orbits, &self.chars[i], &self.chars[j]);
                for k in 0..l {
                    let raw = inner_product(g, orbits, &prod, &self.chars[k]);
                    let rounded = raw.re.round();
                    let dist = (raw - Complex64::new(rounded, 0.0)).norm();
                    residual = residual.max(dist);
                    if dist > 1e-6 {
                        return Err(ModularError::FusionResidual(dist));
                    }
                    if rounded < 0.0 {
                        return Err(ModularError::NegativeFusion {
                            i,
                            j,
                            k,
                            value: rounded as i64,
                        });
                    }
                    n[i][j][k] = rounded as u32;
                }
            }
        }
        Ok(FusionTable { n, residual })
    }

    /// Fusion coefficients from the Verlinde formula
    /// N(i,j,k) = sum_m S[m,i] S[m,j] conj(S[m,k]) / S[m,0].
    pub fn verlinde_fusion(&self, data: &ModularData) -> Result<FusionTable, ModularError> {
        let l = data.labels.len();
        let s = &data.s;
        for m in 0..l {
            if s[(m, 0)].norm() <= 1e-9 {
                return Err(ModularError::ZeroVerlindeDenominator { row: m });
            }
        }
        let mut n = vec![vec![vec![0u32; l]; l]; l];
        let mut residual = 0.0f64;
        for i in 0..l {
            for j in 0..l {
                for k in 0..l {
                    let mut raw = Complex64::new(0.0, 0.0);
                    for m in 0..l {
                        raw += s[(m, i)] * s[(m, j)] * s[(m, k)].conj() / s[(m, 0)];
                    }
                    let rounded = raw.re.round();
                    let dist = (raw - Complex64::new(rounded, 0.0)).norm();
                    residual = residual.max(dist);
                    if dist > 1e-6 {
                        return Err(ModularError::FusionResidual(dist));
                    }
                    if rounded < 0.0 {
                        return Err(ModularError::NegativeFusion {
                            i,
                            j,
                            k,
                            value: rounded as i64,
                        });
                    }
                    n[i][j][k] = rounded as u32;
                }
            }
        }
        Ok(FusionTable { n, residual })
    }
}

/// Report of the modular identity battery.
#[derive(Clone, Debug, Serialize)]
pub struct ModularReport {
    pub group: String,
    pub tolerance: f64,
    pub items: Vec<SuiteResult>,
    /// Informational: the relation s^2 = (st)^3 holds on the invariant
    /// subspace but not for the raw point maps on all of C(G x G); this is
    /// the observed gap between those two point maps (expected nonzero for
    /// groups with an element of order > 2).
    pub off_invariant_relation_gap: f64,
    pub all_pass: bool,
}

fn item(name: &str, dev: f64, tol: f64) -> SuiteResult {
    SuiteResult {
        suite: name.to_string(),
        max_deviation: dev,
        pass: dev <= tol,
        witness: None,
    }
}

impl<'a, 'g> Modular<'a, 'g> {
    pub fn verify_identities(&self, cfg: &RunConfig) -> Result<ModularReport, ModularError> {
        let g = self.group();
        let orbits = self.orbits();
        let data = self.modular_data(cfg.tol)?;
        let mut items = Vec::new();

        // (a) S^4 = I and S^2 = (ST)^3 in the character basis.
        let s2 = &data.s * &data.s;
        let s4 = &s2 * &s2;
        let st = &data.s * &data.t;
        let st3 = &st * &st * &st;
        let dev_a = linalg::dev_from_identity(&s4).max(linalg::max_abs(&(&s2 - &st3)));
        items.push(item("relations", dev_a, cfg.tol));

        // (b) Convolution laws on seeded random invariant pairs.
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut dev_b = 0.0f64;
        for _ in 0..100 {
            let f1 = InvariantFunction::random(&mut rng, orbits.orbit_count());
            let f2 = InvariantFunction::random(&mut rng, orbits.orbit_count());
            let lhs1 = s_transform(g, orbits, &dot_invariant(g, orbits, &f1, &f2));
            let rhs1 = bullet_invariant(
                g,
                orbits,
                &s_transform(g, orbits, &f1),
                &s_transform(g, orbits, &f2),
            );
            dev_b = dev_b.max(lhs1.distance(&rhs1));
            let lhs2 = s_transform(g, orbits, &bullet_invariant(g, orbits, &f1, &f2));
            let rhs2 = dot_invariant(
                g,
                orbits,
                &s_transform(g, orbits, &f1),
                &s_transform(g, orbits, &f2),
            );
            dev_b = dev_b.max(lhs2.distance(&rhs2));
        }
        items.push(item("convolution", dev_b, cfg.tol));

        // (c) S^-1-transformed characters diagonalize • multiplication.
        let mut dev_c = 0.0f64;
        for chi in &self.chars {
            let e = s_transform_inv(g, orbits, chi);
            let (pivot, pivot_val) = e
                .values
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                .map(|(i, v)| (i, *v))
                .expect("character transform is nonzero");
            for chj in &self.chars {
                let image = bullet_invariant(g, orbits, chj, &e);
                let lambda = image.values[pivot] / pivot_val;
                for (iv, ev) in image.values.iter().zip(&e.values) {
                    dev_c = dev_c.max((iv - lambda * ev).norm());
                }
            }
        }
        items.push(item("diagonalization", dev_c, cfg.tol));

        // (d) Fourier-vs-matrix-action identities (FT f)(h,g) = f(g,h):
        // FT∘j2 = s-dot and FT∘j1 = s-dotprime, on seeded random functions.
        let mut dev_d = 0.0f64;
        for _ in 0..100 {
            let f = InvariantFunction::random(&mut rng, orbits.orbit_count());
            let swap_pair = |func: &InvariantFunction| {
                InvariantFunction::from_pair_fn(orbits, |h, x| func.value(orbits, x, h))
            };
            let lhs1 = swap_pair(&act(g, orbits, MAT_J2, &f, ActionVariant::DotPrime));
            let rhs1 = act(g, orbits, MAT_S, &f, ActionVariant::Dot);
            dev_d = dev_d.max(lhs1.distance(&rhs1));
            let lhs2 = swap_pair(&act(g, orbits, MAT_J1, &f, ActionVariant::DotPrime));
            let rhs2 = act(g, orbits, MAT_S, &f, ActionVariant::DotPrime);
            dev_d = dev_d.max(lhs2.distance(&rhs2));
        }
        items.push(item("fourier-action", dev_d, cfg.tol));

        // (e) FT matrix unitary, Hermitian, involutive.
        let dev_e = linalg::dev_from_unitary(&data.ft)
            .max(linalg::dev_from_hermitian(&data.ft))
            .max(linalg::dev_from_identity(&(&data.ft * &data.ft)));
        items.push(item("fourier-matrix", dev_e, cfg.tol));

        // (f) Character-level involutions: j1 sends (O_l, rho) to
        // (O_{l^-1}, rho); j2 sends it to (O_l, conj rho).
        let mut dev_f = 0.0f64;
        for (idx, chi) in self.chars.iter().enumerate() {
            let label = data.labels[idx];
            let j1 = act(g, orbits, MAT_J1, chi, ActionVariant::DotPrime);
            let coeffs = self.expand_in_characters(&j1, cfg.tol)?;
            let inv_class = self.cl.conj.class_of
                [g.inv(self.cl.conj.reps[label.class_index]) as usize];
            // Exactly one coefficient is 1, sitting in the inverse class;
            // everything else is 0.
            let mut matched = None;
            for (m, c) in coeffs.iter().enumerate() {
                if data.labels[m].class_index == inv_class
                    && (c - Complex64::new(1.0, 0.0)).norm() <= 0.5
                {
                    if matched.is_some() {
                        dev_f = dev_f.max(1.0);
                    }
                    matched = Some(m);
                    dev_f = dev_f.max((c - Complex64::new(1.0, 0.0)).norm());
                } else {
                    dev_f = dev_f.max(c.norm());
                }
            }
            if matched.is_none() {
                dev_f = dev_f.max(1.0);
            }
            let j2 = act(g, orbits, MAT_J2, chi, ActionVariant::DotPrime);
            let coeffs2 = self.expand_in_characters(&j2, cfg.tol)?;
            let conj_row = self.cl.centralizer_tables[label.class_index]
                .conjugate_row_index(label.irrep_index);
            for (m, c) in coeffs2.iter().enumerate() {
                let expect = if data.labels[m].class_index == label.class_index
                    && Some(data.labels[m].irrep_index) == conj_row
                {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                dev_f = dev_f.max((c - expect).norm());
            }
        }
        items.push(item("involutions", dev_f, cfg.tol));

        // Informational: the raw point maps for s^2 and (st)^3 in GL2(Z)
        // differ (inversion of both slots vs identity); record the gap.
        let s2_mat = mat_mul(MAT_S, MAT_S);
        let st3_mat = {
            let st = mat_mul(MAT_S, MAT_T);
            mat_mul(mat_mul(st, st), st)
        };
        let mut gap = 0.0f64;
        for &(h, x) in &orbits.pairs {
            let apply = |m: IntMat2| {
                (g.mul(g.pow(h, m[0][0]), g.pow(x, m[1][0])),
                 g.mul(g.pow(h, m[0][1]), g.pow(x, m[1][1])))
            };
            let (p1, q1) = apply(s2_mat);
            let (p2, q2) = apply(st3_mat);
            if (p1, q1) != (p2, q2) {
                gap = 1.0;
            }
        }

        let all_pass = items.iter().all(|i| i.pass);
        Ok(ModularReport {
            group: g.name().to_string(),
            tolerance: cfg.tol,
            items,
            off_invariant_relation_gap: gap,
            all_pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::{Double, DoubleElement};
    use crate::mackey::dot_product;
    use crate::tol;
    use rand::SeedableRng;

    fn one() -> C64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn identity_word_leaves_function_unchanged() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let orbits = g.commuting_pair_orbits();
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED);
        let f = InvariantFunction::random(&mut rng, orbits.orbit_count());
        for variant in [ActionVariant::Dot, ActionVariant::DotPrime] {
            let out = act(&g, &orbits, MAT_ID, &f, variant);
            assert!(out.distance(&f) < 1e-12);
        }
    }

    #[test]
    fn parse_word_examples() {
        assert_eq!(parse_word("").unwrap(), MAT_ID);
        assert_eq!(parse_word("s,s-").unwrap(), MAT_ID);
        assert_eq!(parse_word("s,t").unwrap(), mat_mul(MAT_S, MAT_T));
        assert!(matches!(parse_word("s,x"), Err(ModularError::BadToken(_))));
    }

    #[test]
    fn prime_action_matches_right_translation_on_c4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let orbits = g.commuting_pair_orbits();
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED);
        let f = InvariantFunction::random(&mut rng, orbits.orbit_count());
        let a: IntMat2 = [[2, 1], [3, 1]];
        let out = act(&g, &orbits, a, &f, ActionVariant::DotPrime);
        for &(h, x) in &orbits.pairs {
            let p = g.mul(g.pow(h, 2), g.pow(x, 3));
            let q = g.mul(g.pow(h, 1), g.pow(x, 1));
            assert!((out.value(&orbits, h, x) - f.value(&orbits, p, q)).norm() < 1e-12);
        }
    }

    #[test]
    fn s_to_the_fourth_fixes_characters_of_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        for chi in cl.all_characters() {
            let mut f = chi.clone();
            for _ in 0..4 {
                f = act(&g, &cl.orbits, MAT_S, &f, ActionVariant::DotPrime);
            }
            assert!(f.distance(&chi) < 1e-9);
        }
    }

    #[test]
    fn dot_action_is_prime_action_of_twisted_matrix() {
        // s acts under . exactly as s^-1 does under .', and likewise t.
        let g = FiniteGroup::symmetric(3).unwrap();
        let orbits = g.commuting_pair_orbits();
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED);
        for _ in 0..20 {
            let f = InvariantFunction::random(&mut rng, orbits.orbit_count());
            let a = act(&g, &orbits, MAT_S, &f, ActionVariant::Dot);
            let b = act(&g, &orbits, MAT_S_INV, &f, ActionVariant::DotPrime);
            assert!(a.distance(&b) < 1e-12);
            let c = act(&g, &orbits, MAT_T, &f, ActionVariant::Dot);
            let d = act(&g, &orbits, MAT_T_INV, &f, ActionVariant::DotPrime);
            assert!(c.distance(&d) < 1e-12);
        }
    }

    #[test]
    fn bullet_invariant_matches_coproduct_pairing() {
        // (f1 • f2)(x) = (f1 ⊗ f2)(Delta x) on every basis element.
        let g = FiniteGroup::symmetric(3).unwrap();
        let orbits = g.commuting_pair_orbits();
        let d = Double::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED);
        let f1 = InvariantFunction::random(&mut rng, orbits.orbit_count());
        let f2 = InvariantFunction::random(&mut rng, orbits.orbit_count());
        let grid1 = f1.to_functional(&g, &orbits);
        let grid2 = f2.to_functional(&g, &orbits);
        let prod = bullet_invariant(&g, &orbits, &f1, &f2).to_functional(&g, &orbits);
        for h in g.elements() {
            for x in g.elements() {
                let dx = d.coproduct(&DoubleElement::basis([(h, x)]));
                let mut paired = Complex64::new(0.0, 0.0);
                for (k, c) in dx.terms() {
                    paired += grid1.value(k[0].0, k[0].1) * grid2.value(k[1].0, k[1].1) * c;
                }
                assert!((prod.value(h, x) - paired).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn dot_invariant_matches_element_multiplication() {
        // Identifying f with sum f(h,g) delta_h g, the . product is the
        // image of D(G) multiplication.
        let g = FiniteGroup::symmetric(3).unwrap();
        let orbits = g.commuting_pair_orbits();
        let d = Double::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED);
        let f1 = InvariantFunction::random(&mut rng, orbits.orbit_count());
        let f2 = InvariantFunction::random(&mut rng, orbits.orbit_count());
        let to_element = |f: &InvariantFunction| {
            let grid = f.to_functional(&g, &orbits);
            let mut el = DoubleElement::zero();
            for h in g.elements() {
                for x in g.elements() {
                    el.add_term([(h, x)], grid.value(h, x));
                }
            }
            el.pruned()
        };
        let prod_fn = dot_invariant(&g, &orbits, &f1, &f2);
        let lhs = to_element(&prod_fn);
        let rhs = d.multiply(&to_element(&f1), &to_element(&f2));
        assert!(lhs.distance(&rhs) < 1e-9);
        // Grid-level agreement with the general (non-invariant) formula.
        let grid_prod = dot_product(
            &g,
            &f1.to_functional(&g, &orbits),
            &f2.to_functional(&g, &orbits),
        );
        let (proj, dev) = crate::invariant::project_invariant(&g, &orbits, &grid_prod);
        assert!(dev < 1e-9);
        assert!(proj.distance(&prod_fn) < 1e-9);
    }

    #[test]
    fn pairing_normalized_convolution_identity() {
        // With zeta_f = (1/|G|^2) F_f in the bilinear pairing convention,
        // (zeta_{f1} ⊗ zeta_{f2})(Delta x) = (1/|G|^2) zeta_{f1•f2}(x):
        // the plain contraction convention used everywhere else absorbs
        // exactly one factor of |G|^2.
        let g = FiniteGroup::cyclic(4).unwrap();
        let orbits = g.commuting_pair_orbits();
        let d = Double::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED);
        let f1 = InvariantFunction::random(&mut rng, orbits.orbit_count());
        let f2 = InvariantFunction::random(&mut rng, orbits.orbit_count());
        let n2 = (g.order() * g.order()) as f64;
        let grid1 = f1.to_functional(&g, &orbits);
        let grid2 = f2.to_functional(&g, &orbits);
        let prod = bullet_invariant(&g, &orbits, &f1, &f2).to_functional(&g, &orbits);
        for h in g.elements() {
            for x in g.elements() {
                let dx = d.coproduct(&DoubleElement::basis([(h, x)]));
                let mut paired = Complex64::new(0.0, 0.0);
                for (k, c) in dx.terms() {
                    paired += (grid1.value(k[0].0, k[0].1) / n2)
                        * (grid2.value(k[1].0, k[1].1) / n2)
                        * c;
                }
                // (1/n²) · zeta_{f1•f2}(x), with zeta = F/n².
                let scaled_prod = prod.value(h, x) / n2 / n2;
                assert!((paired - scaled_prod).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn modular_data_trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let data = m.modular_data(1e-9).unwrap();
        assert_eq!(data.s.nrows(), 1);
        assert!((data.s[(0, 0)] - one()).norm() < 1e-12);
        assert!((data.t[(0, 0)] - one()).norm() < 1e-12);
        assert!((data.ft[(0, 0)] - one()).norm() < 1e-12);
    }

    #[test]
    fn fourier_matrix_c2_frozen() {
        // Labels in canonical order: (e,triv), (e,sgn), (a,triv), (a,sgn);
        // abelian closed form FT[i][j] = (1/2) chi_i(a_j) chi_j(a_i).
        let g = FiniteGroup::cyclic(2).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let ft = m.fourier_matrix();
        let expect = [
            [0.5, 0.5, 0.5, 0.5],
            [0.5, 0.5, -0.5, -0.5],
            [0.5, -0.5, 0.5, -0.5],
            [0.5, -0.5, -0.5, 0.5],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!(
                    (ft[(i, j)] - Complex64::new(expect[i][j], 0.0)).norm() < 1e-12,
                    "entry ({i},{j}) = {}",
                    ft[(i, j)]
                );
            }
        }
    }

    #[test]
    fn fourier_matrix_abelian_closed_form_c4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let ft = m.fourier_matrix();
        let n = g.order() as f64;
        for (i, &li) in cl.labels.iter().enumerate() {
            let ai = cl.conj.reps[li.class_index];
            for (j, &lj) in cl.labels.iter().enumerate() {
                let aj = cl.conj.reps[lj.class_index];
                // Centralizer = whole group; character tables are global.
                let chi_i =
                    cl.centralizer_tables[li.class_index].values[li.irrep_index]
                        [cl.centralizer_conj[li.class_index].class_of
                            [cl.conj.centralizers[li.class_index].local_of(aj).unwrap()]];
                let chi_j =
                    cl.centralizer_tables[lj.class_index].values[lj.irrep_index]
                        [cl.centralizer_conj[lj.class_index].class_of
                            [cl.conj.centralizers[lj.class_index].local_of(ai).unwrap()]];
                let expect = chi_i * chi_j.conj() / Complex64::new(n, 0.0);
                assert!((ft[(i, j)] - expect).norm() < 1e-12);
            }
        }
        // And it is Hermitian/unitary/involutive (requires the conjugate).
        assert!(linalg::dev_from_hermitian(&ft) < 1e-9);
        assert!(linalg::dev_from_unitary(&ft) < 1e-9);
        assert!(linalg::dev_from_identity(&(&ft * &ft)) < 1e-9);
    }

    #[test]
    fn t_matrix_entries_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let data = m.modular_data(1e-9).unwrap();
        for (i, &label) in cl.labels.iter().enumerate() {
            let emb = &cl.conj.centralizers[label.class_index];
            let table = &cl.centralizer_tables[label.class_index];
            let cc = &cl.centralizer_conj[label.class_index];
            let rep = cl.conj.reps[label.class_index];
            let local = emb.local_of(rep).unwrap();
            let chi_l = table.values[label.irrep_index][cc.class_of[local]];
            let chi_1 = Complex64::new(table.degrees[label.irrep_index] as f64, 0.0);
            let expect = chi_l / chi_1;
            assert!((data.t[(i, i)] - expect).norm() < 1e-9, "label {:?}", label);
            assert!((data.t[(i, i)].norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn s_matrix_relations_s3_and_d4() {
        for g in [FiniteGroup::symmetric(3).unwrap(), FiniteGroup::dihedral(4).unwrap()] {
            let cl = Classification::new(&g).unwrap();
            let m = Modular::new(&cl);
            let data = m.modular_data(1e-9).unwrap();
            let s2 = &data.s * &data.s;
            let s4 = &s2 * &s2;
            assert!(linalg::dev_from_identity(&s4) < 1e-9, "group {}", g.name());
            let st = &data.s * &data.t;
            let st3 = &st * &st * &st;
            assert!(linalg::max_abs(&(&s2 - &st3)) < 1e-9, "group {}", g.name());
            assert!(linalg::dev_from_unitary(&data.s) < 1e-9, "group {}", g.name());
            // S^2 commutes with T.
            assert!(linalg::max_abs(&(&s2 * &data.t - &data.t * &s2)) < 1e-9);
        }
    }

    #[test]
    fn verlinde_matches_bruteforce_c2_and_s3() {
        for g in [FiniteGroup::cyclic(2).unwrap(), FiniteGroup::symmetric(3).unwrap()] {
            let cl = Classification::new(&g).unwrap();
            let m = Modular::new(&cl);
            let data = m.modular_data(1e-9).unwrap();
            let brute = m.fusion_bruteforce().unwrap();
            let verl = m.verlinde_fusion(&data).unwrap();
            assert_eq!(brute.n, verl.n, "group {}", g.name());
            assert!(brute.residual <= 1e-6 && verl.residual <= 1e-6);
        }
    }

    #[test]
    fn c2_fusion_is_group_ring_of_klein_four() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let brute = m.fusion_bruteforce().unwrap();
        let l = brute.size();
        assert_eq!(l, 4);
        for i in 0..l {
            for j in 0..l {
                // Each product is a single basis label: rows are permutations.
                let total: u32 = (0..l).map(|k| brute.n[i][j][k]).sum();
                assert_eq!(total, 1);
            }
        }
        let dims = vec![1usize; 4];
        assert_eq!(brute.structure_deviation(&dims), 0.0);
    }

    #[test]
    fn s3_fusion_dimension_homomorphism() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let brute = m.fusion_bruteforce().unwrap();
        let dims: Vec<usize> = cl.labels.iter().map(|&l| cl.module_dimension(l)).collect();
        assert_eq!(brute.structure_deviation(&dims), 0.0);
    }

    #[test]
    fn verify_identities_trivial_group_zero_deviation() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let report = m.verify_identities(&RunConfig::default()).unwrap();
        assert!(report.all_pass);
        for i in &report.items {
            assert!(i.max_deviation < 1e-12, "item {}: {}", i.suite, i.max_deviation);
        }
        assert_eq!(report.off_invariant_relation_gap, 0.0);
    }

    #[test]
    fn verify_identities_s3_all_pass() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let report = m.verify_identities(&RunConfig::default()).unwrap();
        assert!(report.all_pass, "{:?}", report);
        // S3 has elements of order 3, so the raw point maps differ.
        assert_eq!(report.off_invariant_relation_gap, 1.0);
    }

    #[test]
    fn j1_swaps_inverse_classes_on_c4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        // The class of the generator and of its inverse are distinct.
        let gen_class = cl.conj.class_of[1];
        let inv_class = cl.conj.class_of[g.inv(1) as usize];
        assert_ne!(gen_class, inv_class);
        for (idx, &label) in cl.labels.iter().enumerate() {
            if label.class_index != gen_class {
                continue;
            }
            let chi = &m.chars[idx];
            let image = act(&g, &cl.orbits, MAT_J1, chi, ActionVariant::DotPrime);
            let coeffs = m.expand_in_characters(&image, 1e-9).unwrap();
            let hits: Vec<usize> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| c.norm() > 0.5)
                .map(|(i, _)| i)
                .collect();
            assert_eq!(hits.len(), 1);
            assert_eq!(cl.labels[hits[0]].class_index, inv_class);
            assert!((coeffs[hits[0]] - one()).norm() < 1e-9);
        }
    }

    #[test]
    fn functional_bullet_agrees_with_invariant_bullet() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let orbits = g.commuting_pair_orbits();
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED);
        let f1 = InvariantFunction::random(&mut rng, orbits.orbit_count());
        let f2 = InvariantFunction::random(&mut rng, orbits.orbit_count());
        let via_grid = crate::double::functional_bullet(
            &g,
            &f1.to_functional(&g, &orbits),
            &f2.to_functional(&g, &orbits),
        );
        let via_orbits = bullet_invariant(&g, &orbits, &f1, &f2).to_functional(&g, &orbits);
        for h in g.elements() {
            for x in g.elements() {
                assert!((via_grid.value(h, x) - via_orbits.value(h, x)).norm() < 1e-12);
            }
        }
    }
}
