//! Classification of irreducible D(G)-modules by pairs (conjugacy class,
//! centralizer irrep), their characters, explicit induced modules with
//! braiding matrices, and quantum-symmetrizer degree dimensions.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chartab::{CharacterTable, ChartabError};
use crate::group::{CommutingPairOrbits, ConjugacyData, Elt, FiniteGroup, IDENTITY};
use crate::invariant::{inner_product, InvariantFunction};
use crate::linalg::{self, CMat, C64};
use crate::tol;

#[derive(Debug, Error)]
pub enum MackeyError {
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error("could not isolate an irreducible block of dimension {want} (got cluster sizes {got:?})")]
    BlockExtraction { want: usize, got: Vec<usize> },
    #[error("irrep matrices disagree with the character table (deviation {0:.3e})")]
    TraceMismatch(f64),
    #[error("symmetrizer space dimension {needed} exceeds budget {budget}")]
    NicholsBudget { needed: usize, budget: usize },
}

/// A label (conjugacy class, centralizer irrep row) for an irreducible
/// D(G)-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MGLabel {
    pub class_index: usize,
    pub irrep_index: usize,
}

/// Everything the classification needs, computed once per group: conjugacy
/// data, commuting-pair orbits, and one character table per centralizer.
pub struct Classification<'a> {
    pub group: &'a FiniteGroup,
    pub conj: ConjugacyData,
    pub orbits: CommutingPairOrbits,
    pub centralizer_conj: Vec<ConjugacyData>,
    pub centralizer_tables: Vec<CharacterTable>,
    pub labels: Vec<MGLabel>,
    /// For each class k and each h in that class, the first group element x
    /// (in index order) with x g_k x^-1 = h.
    conjugators: Vec<Vec<(Elt, Elt)>>,
}

impl<'a> Classification<'a> {
    pub fn new(group: &'a FiniteGroup) -> Result<Self, MackeyError> {
        let conj = group.conjugacy();
        let orbits = group.commuting_pair_orbits();
        let mut centralizer_conj = Vec::new();
        let mut centralizer_tables = Vec::new();
        let mut labels = Vec::new();
        let mut conjugators = Vec::new();
        for (k, emb) in conj.centralizers.iter().enumerate() {
            let cc = emb.group.conjugacy();
            let table = crate::chartab::character_table(&emb.group)?;
            for irrep in 0..table.num_rows() {
                labels.push(MGLabel { class_index: k, irrep_index: irrep });
            }
            centralizer_conj.push(cc);
            centralizer_tables.push(table);
            let rep = conj.reps[k];
            let mut into_class = Vec::new();
            for &h in &conj.classes[k] {
                let x = group
                    .elements()
                    .find(|&x| group.conj(x, rep) == h)
                    .expect("class member must be conjugate to its representative");
                into_class.push((h, x));
            }
            conjugators.push(into_class);
        }
        Ok(Classification {
            group,
            conj,
            orbits,
            centralizer_conj,
            centralizer_tables,
            labels,
            conjugators,
        })
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    /// |O| * dim(rho) for one label.
    pub fn module_dimension(&self, label: MGLabel) -> usize {
        self.conj.classes[label.class_index].len()
            * self.centralizer_tables[label.class_index].degrees[label.irrep_index]
    }

    fn conjugator_into_class(&self, class_index: usize, h: Elt) -> Option<Elt> {
        self.conjugators[class_index]
            .iter()
            .find(|&&(member, _)| member == h)
            .map(|&(_, x)| x)
    }

    /// The closed character formula: zero unless h lies in the labelled
    /// class and g centralizes h; otherwise Tr rho(x^-1 g x) for any x
    /// conjugating the class representative onto h.
    pub fn irreducible_character(&self, label: MGLabel) -> InvariantFunction {
        let g = self.group;
        let k = label.class_index;
        let emb = &self.conj.centralizers[k];
        let table = &self.centralizer_tables[k];
        let cc = &self.centralizer_conj[k];
        InvariantFunction::from_pair_fn(&self.orbits, |h, m| {
            if self.conj.class_of[h as usize] != k {
                return Complex64::new(0.0, 0.0);
            }
            let x = self
                .conjugator_into_class(k, h)
                .expect("h lies in class k, so a conjugator exists");
            let y = g.conj(g.inv(x), m);
            let local = emb
                .local_of(y)
                .expect("x^-1 m x centralizes the class representative");
            table.values[label.irrep_index][cc.class_of[local]]
        })
    }

    pub fn all_characters(&self) -> Vec<InvariantFunction> {
        self.labels.iter().map(|&l| self.irreducible_character(l)).collect()
    }

    /// Evaluate a character at the unit of D(G): the sum of its values on
    /// (t, 1) over all t, which must equal the module dimension.
    pub fn character_at_unit(&self, chi: &InvariantFunction) -> C64 {
        self.group
            .elements()
            .map(|t| chi.value(&self.orbits, t, IDENTITY))
            .sum()
    }
}

/// Orthonormality report for the irreducible characters.
#[derive(Clone, Debug, Serialize)]
pub struct OrthonormalityReport {
    pub gram_deviation: f64,
    pub dot_identity_deviation: f64,
    pub pass: bool,
}

/// The multiplication of D(G) transported to functions on G x G:
/// (f1 . f2)(h, m) = sum_g f1(h, g) f2(g^-1 h g, g^-1 m).
pub fn dot_product(
    g: &FiniteGroup,
    f1: &crate::double::DoubleFunctional,
    f2: &crate::double::DoubleFunctional,
) -> crate::double::DoubleFunctional {
    crate::double::DoubleFunctional::from_fn(g, |h, m| {
        let mut acc = Complex64::new(0.0, 0.0);
        for x in g.elements() {
            acc += f1.value(h, x) * f2.value(g.conj(g.inv(x), h), g.mul(g.inv(x), m));
        }
        acc
    })
}

impl<'a> Classification<'a> {
    /// Gram matrix of the characters under the normalized inner product,
    /// plus the product identity chi_i . chi_j =
    /// [i = j] (|G| / (|O_i| dim rho_i)) chi_i for the transported product.
    pub fn verify_character_orthonormality(&self, tol_pass: f64) -> OrthonormalityReport {
        let chars = self.all_characters();
        let mut gram_dev = 0.0f64;
        for (i, ci) in chars.iter().enumerate() {
            for (j, cj) in chars.iter().enumerate() {
                let ip = inner_product(self.group, &self.orbits, ci, cj);
                let expect = if i == j { 1.0 } else { 0.0 };
                gram_dev = gram_dev.max((ip - Complex64::new(expect, 0.0)).norm());
            }
        }
        let grids: Vec<_> =
            chars.iter().map(|c| c.to_functional(self.group, &self.orbits)).collect();
        let mut dot_dev = 0.0f64;
        let n = self.group.order() as f64;
        for (i, gi) in grids.iter().enumerate() {
            let dim_i = self.module_dimension(self.labels[i]) as f64;
            for (j, gj) in grids.iter().enumerate() {
                let prod = dot_product(self.group, gi, gj);
                let scale =
                    if i == j { Complex64::new(n / dim_i, 0.0) } else { Complex64::new(0.0, 0.0) };
                for h in self.group.elements() {
                    for m in self.group.elements() {
                        let expect = gi.value(h, m) * scale;
                        dot_dev = dot_dev.max((prod.value(h, m) - expect).norm());
                    }
                }
            }
        }
        OrthonormalityReport {
            gram_deviation: gram_dev,
            dot_identity_deviation: dot_dev,
            pass: gram_dev <= tol_pass && dot_dev <= tol_pass,
        }
    }
}

/// Explicit unitary matrices for one irreducible representation of a group,
/// extracted from the regular representation via the central idempotent of
/// the character.
pub fn irrep_matrices(
    group: &FiniteGroup,
    table: &CharacterTable,
    conj: &ConjugacyData,
    irrep_index: usize,
    seed: u64,
) -> Result<Vec<CMat>, MackeyError> {
    let n = group.order();
    let d = table.degrees[irrep_index];
    // Left-regular permutation matrices.
    let reg: Vec<CMat> = group
        .elements()
        .map(|c| {
            let mut m = CMat::zeros(n, n);
            for y in group.elements() {
                m[(group.mul(c, y) as usize, y as usize)] = Complex64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    // Central idempotent e_rho = (d/|G|) sum_c chi(c^-1) c.
    let mut proj = CMat::zeros(n, n);
    for c in group.elements() {
        let chi = table.values[irrep_index][conj.class_of[group.inv(c) as usize]];
        proj += &reg[c as usize] * (chi * Complex64::new(d as f64 / n as f64, 0.0));
    }
    // Orthonormal basis of the isotypic image (eigenvalue-1 eigenvectors).
    let (proj_vals, proj_vecs, _) = linalg::hermitian_eigen_clustered(&proj);
    let iso_cols: Vec<usize> = (0..n).filter(|&i| proj_vals[i] > 0.5).collect();
    debug_assert_eq!(iso_cols.len(), d * d);
    let mut basis = CMat::zeros(n, iso_cols.len());
    for (j, &i) in iso_cols.iter().enumerate() {
        basis.set_column(j, &proj_vecs.column(i));
    }
    let mut cluster_sizes = Vec::new();
    for attempt in 0..5u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let dd = iso_cols.len();
        let mut h = CMat::zeros(dd, dd);
        for i in 0..dd {
            for j in 0..dd {
                h[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
        // Average the lifted Hermitian matrix into the commutant.
        let lifted = &basis * h * basis.adjoint();
        let mut avg = CMat::zeros(n, n);
        for c in group.elements() {
            let r = &reg[c as usize];
            avg += r * &lifted * r.adjoint();
        }
        avg /= Complex64::new(n as f64, 0.0);
        let k_small = basis.adjoint() * avg * &basis;
        let k_small = (&k_small + k_small.adjoint()) * Complex64::new(0.5, 0.0);
        let (_, k_vecs, clusters) = linalg::hermitian_eigen_clustered(&k_small);
        cluster_sizes = clusters.iter().map(|&(s, e)| e - s).collect();
        let Some(&(start, end)) = clusters.iter().find(|&&(s, e)| e - s == d) else {
            continue;
        };
        let mut w = CMat::zeros(n, d);
        for (j, i) in (start..end).enumerate() {
            w.set_column(j, &(&basis * k_vecs.column(i)));
        }
        // Re-orthonormalize for hygiene; columns are already near-orthonormal.
        let qr = w.qr();
        let w = qr.q();
        let mats: Vec<CMat> =
            group.elements().map(|c| w.adjoint() * &reg[c as usize] * &w).collect();
        // Trace check against the character table.
        let mut dev = 0.0f64;
        for (k, &rep) in conj.reps.iter().enumerate() {
            let tr: C64 = mats[rep as usize].trace();
            dev = dev.max((tr - table.values[irrep_index][k]).norm());
        }
        if dev <= tol::CHAR_MATCH {
            return Ok(mats);
        }
    }
    Err(MackeyError::BlockExtraction { want: d, got: cluster_sizes })
}

/// A finite-dimensional D(G)-module: a G-graded unitary G-representation
/// with g . V_h contained in V_{g h g^-1}.
#[derive(Clone, Debug)]
pub struct DoubleModule {
    pub dim: usize,
    /// Grade (an element of G) of each basis vector.
    pub grades: Vec<Elt>,
    /// One unitary matrix per group element.
    pub action: Vec<CMat>,
}

impl DoubleModule {
    /// Matrix of delta_h g: act by g, then project onto the grade-h part.
    pub fn delta_action(&self, h: Elt, g: Elt) -> CMat {
        let mut m = self.action[g as usize].clone();
        for row in 0..self.dim {
            if self.grades[row] != h {
                m.row_mut(row).fill(Complex64::new(0.0, 0.0));
            }
        }
        m
    }

    /// Trace function (h,g) -> Tr(delta_h g) as an invariant function.
    pub fn character(&self, orbits: &CommutingPairOrbits) -> InvariantFunction {
        InvariantFunction::from_pair_fn(orbits, |h, g| self.delta_action(h, g).trace())
    }

    /// Max deviation from the three module invariants: the action being a
    /// homomorphism, unitarity, and the grading rule g . V_h = V_{g h g^-1}.
    pub fn invariant_deviation(&self, group: &FiniteGroup) -> f64 {
        let mut dev = 0.0f64;
        for g in group.elements() {
            dev = dev.max(linalg::dev_from_unitary(&self.action[g as usize]));
            for h in group.elements() {
                let prod = &self.action[g as usize] * &self.action[h as usize];
                dev = dev.max(linalg::max_abs(&(prod - &self.action[group.mul(g, h) as usize])));
            }
        }
        let id = &self.action[IDENTITY as usize];
        dev = dev.max(linalg::dev_from_identity(id));
        for g in group.elements() {
            let a = &self.action[g as usize];
            for col in 0..self.dim {
                let target = group.conj(g, self.grades[col]);
                for row in 0..self.dim {
                    if self.grades[row] != target {
                        dev = dev.max(a[(row, col)].norm());
                    }
                }
            }
        }
        dev
    }
}

impl<'a> Classification<'a> {
    /// Induce the module for one label: basis (coset representative x_i,
    /// rho-basis vector), grade x_i g_O x_i^-1, action
    /// g . (x_i (x) v) = x_j (x) rho(x_j^-1 g x_i) v where j indexes the
    /// coset of g x_i.
    pub fn induce_module(&self, label: MGLabel, seed: u64) -> Result<DoubleModule, MackeyError> {
        let g = self.group;
        let k = label.class_index;
        let emb = &self.conj.centralizers[k];
        let rho = irrep_matrices(
            &emb.group,
            &self.centralizer_tables[k],
            &self.centralizer_conj[k],
            label.irrep_index,
            seed,
        )?;
        let d = self.centralizer_tables[k].degrees[label.irrep_index];
        let rep = self.conj.reps[k];
        // Left cosets x C, represented by their minimal element, in order.
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut coset_reps: Vec<Elt> = Vec::new();
        for x in g.elements() {
            if coset_of[x as usize] == usize::MAX {
                let idx = coset_reps.len();
                coset_reps.push(x);
                for c in emb.elements.iter() {
                    coset_of[g.mul(x, *c) as usize] = idx;
                }
            }
        }
        let num_cosets = coset_reps.len();
        let dim = num_cosets * d;
        let mut grades = Vec::with_capacity(dim);
        for &x in &coset_reps {
            let grade = g.conj(x, rep);
            for _ in 0..d {
                grades.push(grade);
            }
        }
        let mut action = Vec::with_capacity(g.order());
        for a in g.elements() {
            let mut m = CMat::zeros(dim, dim);
            for (i, &xi) in coset_reps.iter().enumerate() {
                let axi = g.mul(a, xi);
                let j = coset_of[axi as usize];
                let c = g.mul(g.inv(coset_reps[j]), axi);
                let local = emb
                    .local_of(c)
                    .expect("x_j^-1 a x_i lies in the centralizer by construction");
                let block = &rho[local as usize];
                for b in 0..d {
                    for aa in 0..d {
                        m[(j * d + b, i * d + aa)] = block[(b, aa)];
                    }
                }
            }
            action.push(m);
        }
        Ok(DoubleModule { dim, grades, action })
    }
}

/// Braiding c : V (x) W -> W (x) V, c(v (x) w) = w (x) deg(w) . v.
pub fn braiding_matrix(v: &DoubleModule, w: &DoubleModule) -> CMat {
    let out_dim = v.dim * w.dim;
    let mut c = CMat::zeros(out_dim, out_dim);
    for a in 0..v.dim {
        for b in 0..w.dim {
            let col = a * w.dim + b;
            let act = &v.action[w.grades[b] as usize];
            for a2 in 0..v.dim {
                c[(b * v.dim + a2, col)] = act[(a2, a)];
            }
        }
    }
    c
}

/// Action of delta_h g on V (x) W through the coproduct.
pub fn pair_action(
    group: &FiniteGroup,
    v: &DoubleModule,
    w: &DoubleModule,
    h: Elt,
    g: Elt,
) -> CMat {
    let mut out = CMat::zeros(v.dim * w.dim, v.dim * w.dim);
    for t in group.elements() {
        let s = group.mul(h, group.inv(t));
        out += v.delta_action(t, g).kronecker(&w.delta_action(s, g));
    }
    out
}

/// Max deviation of the braiding from commuting with the diagonal D(G)
/// action, over all basis elements delta_h g.
pub fn braiding_naturality_deviation(
    group: &FiniteGroup,
    v: &DoubleModule,
    w: &DoubleModule,
) -> f64 {
    let c = braiding_matrix(v, w);
    let mut dev = 0.0f64;
    for h in group.elements() {
        for g in group.elements() {
            let lhs = &c * pair_action(group, v, w, h, g);
            let rhs = pair_action(group, w, v, h, g) * &c;
            dev = dev.max(linalg::max_abs(&(lhs - rhs)));
        }
    }
    dev
}

/// Max deviation of c1 c2 c1 = c2 c1 c2 on V (x) V (x) V.
pub fn braiding_ybe_deviation(v: &DoubleModule) -> f64 {
    let c = braiding_matrix(v, v);
    let d = v.dim;
    let id = CMat::identity(d, d);
    let c1 = c.kronecker(&id);
    let c2 = id.kronecker(&c);
    let lhs = &c1 * &c2 * &c1;
    let rhs = &c2 * &c1 * &c2;
    linalg::max_abs(&(lhs - rhs))
}

/// The flip braiding v (x) w -> w (x) v on C^d (x) C^d.
pub fn flip_braiding(d: usize) -> CMat {
    let mut c = CMat::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            c[(b * d + a, a * d + b)] = Complex64::new(1.0, 0.0);
        }
    }
    c
}

/// Reduced word for a permutation (one-line notation) from left-to-right
/// bubble-sort passes: sigma = s_{w[0]} s_{w[1]} ... with adjacent
/// transpositions s_i swapping slots i, i+1.
pub fn bubble_word(perm: &[usize]) -> Vec<usize> {
    let mut arr = perm.to_vec();
    let mut rec = Vec::new();
    loop {
        let mut swapped = false;
        for i in 0..arr.len().saturating_sub(1) {
            if arr[i] > arr[i + 1] {
                arr.swap(i, i + 1);
                rec.push(i);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    rec.reverse();
    rec
}

/// A second reduced word for the same permutation, from insertion sort
/// (bubbling each entry leftward in turn); used to spot-check that the
/// braid operators do not depend on the chosen reduced word.
pub fn insertion_word(perm: &[usize]) -> Vec<usize> {
    let mut arr = perm.to_vec();
    let mut rec = Vec::new();
    for j in 1..arr.len() {
        let mut p = j;
        while p > 0 && arr[p - 1] > arr[p] {
            arr.swap(p - 1, p);
            rec.push(p - 1);
            p -= 1;
        }
    }
    rec.reverse();
    rec
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Apply (I^(x)i (x) c (x) I^(x)(n-i-2)) to each column of m, where c acts
/// on two adjacent d-dimensional slots.
fn apply_adjacent(c: &CMat, d: usize, n: usize, i: usize, m: &CMat) -> CMat {
    let total = d.pow(n as u32);
    let inner = d.pow((n - i - 2) as u32);
    let outer = total / (inner * d * d);
    let mut out = CMat::zeros(total, m.ncols());
    for col in 0..m.ncols() {
        for o in 0..outer {
            for q in 0..inner {
                for p_out in 0..d * d {
                    let row_out = (o * d * d + p_out) * inner + q;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for p_in in 0..d * d {
                        let row_in = (o * d * d + p_in) * inner + q;
                        acc += c[(p_out, p_in)] * m[(row_in, col)];
                    }
                    out[(row_out, col)] = acc;
                }
            }
        }
    }
    out
}

/// Product of braid operators along a reduced word, applied to the identity.
pub fn braid_operator(c: &CMat, d: usize, n: usize, word: &[usize]) -> CMat {
    let total = d.pow(n as u32);
    let mut m = CMat::identity(total, total);
    for &i in word.iter().rev() {
        m = apply_adjacent(c, d, n, i, &m);
    }
    m
}

/// Degree dimensions of the Nichols algebra of a braided vector space:
/// for each n in 1..=n_max, the rank of the quantum symmetrizer
/// sum over sigma in S_n of the braid operator along sigma's bubble-sort
/// reduced word. Also cross-checks word independence against insertion-sort
/// words.
pub fn nichols_degree_dims_from_braiding(
    c: &CMat,
    d: usize,
    n_max: usize,
    budget: usize,
) -> Result<Vec<usize>, MackeyError> {
    let needed = d.checked_pow(n_max as u32).unwrap_or(usize::MAX);
    if needed > budget {
        return Err(MackeyError::NicholsBudget { needed, budget });
    }
    let mut dims = Vec::new();
    for n in 1..=n_max {
        if n == 1 {
            dims.push(d);
            continue;
        }
        let total = d.pow(n as u32);
        let mut sym = CMat::zeros(total, total);
        let perms = permutations(n);
        let factorial = perms.len() as f64;
        for perm in perms {
            let word = bubble_word(&perm);
            let op = braid_operator(c, d, n, &word);
            let alt = insertion_word(&perm);
            if alt != word {
                let op2 = braid_operator(c, d, n, &alt);
                let dev = linalg::max_abs(&(&op - &op2));
                debug_assert!(
                    dev <= 1e-9,
                    "braid operator depends on reduced word (deviation {dev:.3e})"
                );
            }
            sym += op;
        }
        // The summands have operator norm ~1, so n! sets the scale against
        // which a singular value counts as nonzero.
        dims.push(linalg::rank_with_floor(&sym, tol::RANK_REL * factorial));
    }
    Ok(dims)
}

/// Nichols degree dimensions for a concrete D(G)-module.
pub fn nichols_degree_dims(
    v: &DoubleModule,
    n_max: usize,
    budget: usize,
) -> Result<Vec<usize>, MackeyError> {
    nichols_degree_dims_from_braiding(&braiding_matrix(v, v), v.dim, n_max, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut out = 1usize;
        for i in 0..k {
            out = out * (n - i) / (i + 1);
        }
        out
    }

    fn one() -> C64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn label_counts_small_groups() {
        let trivial = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(Classification::new(&trivial).unwrap().num_labels(), 1);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(Classification::new(&c2).unwrap().num_labels(), 4);
    }

    #[test]
    fn s3_labels_and_module_dimensions() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        assert_eq!(cl.num_labels(), 8);
        assert_eq!(cl.num_labels(), cl.orbits.orbit_count());
        let dims: Vec<usize> = cl.labels.iter().map(|&l| cl.module_dimension(l)).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 3, 2, 2, 2]);
        let sum_sq: usize = dims.iter().map(|d| d * d).sum();
        assert_eq!(sum_sq, 36);
    }

    #[test]
    fn dimension_sum_rule_all_builtins() {
        for g in [
            FiniteGroup::cyclic(1).unwrap(),
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::cyclic(4).unwrap(),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(2).unwrap(),
                &FiniteGroup::cyclic(2).unwrap(),
            ),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::quaternion8(),
            FiniteGroup::alternating(4).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
        ] {
            let cl = Classification::new(&g).unwrap();
            assert_eq!(cl.num_labels(), cl.orbits.orbit_count(), "group {}", g.name());
            let sum_sq: usize =
                cl.labels.iter().map(|&l| cl.module_dimension(l).pow(2)).sum();
            assert_eq!(sum_sq, g.order() * g.order(), "group {}", g.name());
        }
    }

    #[test]
    fn unit_character_is_class_indicator_of_identity() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        assert_eq!(cl.labels[0], MGLabel { class_index: 0, irrep_index: 0 });
        let chi = cl.irreducible_character(cl.labels[0]);
        for (o, &(h, _)) in cl.orbits.reps.iter().enumerate() {
            let expect = if h == IDENTITY { 1.0 } else { 0.0 };
            assert!((chi.values[o] - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn character_at_unit_equals_module_dimension() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        for &label in &cl.labels {
            let chi = cl.irreducible_character(label);
            let v = cl.character_at_unit(&chi);
            let dim = cl.module_dimension(label) as f64;
            assert!((v - Complex64::new(dim, 0.0)).norm() < 1e-9);
            // Pointwise companion: at (l, 1) the value is dim rho.
            let l = cl.conj.reps[label.class_index];
            let drho = cl.centralizer_tables[label.class_index].degrees[label.irrep_index] as f64;
            assert!(
                (chi.value(&cl.orbits, l, IDENTITY) - Complex64::new(drho, 0.0)).norm() < 1e-9
            );
        }
    }

    #[test]
    fn character_well_defined_under_conjugator_choice() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        for &label in &cl.labels {
            let k = label.class_index;
            let rep = cl.conj.reps[k];
            let emb = &cl.conj.centralizers[k];
            let table = &cl.centralizer_tables[k];
            let cc = &cl.centralizer_conj[k];
            let chi = cl.irreducible_character(label);
            for &(h, m) in &cl.orbits.pairs {
                if cl.conj.class_of[h as usize] != k {
                    continue;
                }
                for x in g.elements() {
                    if g.conj(x, rep) != h {
                        continue;
                    }
                    let y = g.conj(g.inv(x), m);
                    let local = emb.local_of(y).unwrap();
                    let via_x = table.values[label.irrep_index][cc.class_of[local]];
                    assert!((chi.value(&cl.orbits, h, m) - via_x).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn character_gram_is_identity_c2_and_s3() {
        for (g, tol_used) in [
            (FiniteGroup::cyclic(2).unwrap(), 1e-12),
            (FiniteGroup::symmetric(3).unwrap(), 1e-9),
        ] {
            let cl = Classification::new(&g).unwrap();
            let report = cl.verify_character_orthonormality(1e-9);
            assert!(report.pass, "group {}: {:?}", g.name(), report);
            assert!(report.gram_deviation <= tol_used);
        }
    }

    #[test]
    fn irrep_matrices_trivial_and_sign() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let conj = c2.conjugacy();
        let table = crate::chartab::character_table(&c2).unwrap();
        let triv = irrep_matrices(&c2, &table, &conj, 0, tol::DEFAULT_SEED).unwrap();
        for m in &triv {
            assert_eq!(m.nrows(), 1);
            assert!((m[(0, 0)] - one()).norm() < 1e-9);
        }
        let sign = irrep_matrices(&c2, &table, &conj, 1, tol::DEFAULT_SEED).unwrap();
        assert!((sign[0][(0, 0)] - one()).norm() < 1e-9);
        assert!((sign[1][(0, 0)] + one()).norm() < 1e-9);
    }

    #[test]
    fn irrep_matrices_s3_two_dimensional() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let conj = g.conjugacy();
        let table = crate::chartab::character_table(&g).unwrap();
        let two = (0..table.num_rows()).find(|&i| table.degrees[i] == 2).unwrap();
        let mats = irrep_matrices(&g, &table, &conj, two, tol::DEFAULT_SEED).unwrap();
        let expect_traces = [2.0, 0.0, -1.0];
        for (k, &rep) in conj.reps.iter().enumerate() {
            let tr: C64 = mats[rep as usize].trace();
            assert!((tr - Complex64::new(expect_traces[k], 0.0)).norm() < 1e-8);
        }
        // Homomorphism and unitarity.
        for a in g.elements() {
            assert!(linalg::dev_from_unitary(&mats[a as usize]) < 1e-9);
            for b in g.elements() {
                let prod = &mats[a as usize] * &mats[b as usize];
                assert!(linalg::max_abs(&(prod - &mats[g.mul(a, b) as usize])) < 1e-9);
            }
        }
    }

    #[test]
    fn induced_trivial_label_is_one_dimensional() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = cl.induce_module(cl.labels[0], tol::DEFAULT_SEED).unwrap();
        assert_eq!(m.dim, 1);
        assert_eq!(m.grades, vec![IDENTITY]);
        for a in g.elements() {
            assert!((m.action[a as usize][(0, 0)] - one()).norm() < 1e-9);
        }
    }

    #[test]
    fn induced_transposition_module_grading_bijective() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        // Transposition class = the class of size 3; trivial centralizer
        // character = irrep row 0.
        let k = (0..cl.conj.classes.len()).find(|&k| cl.conj.classes[k].len() == 3).unwrap();
        let label = MGLabel { class_index: k, irrep_index: 0 };
        let m = cl.induce_module(label, tol::DEFAULT_SEED).unwrap();
        assert_eq!(m.dim, 3);
        let mut grades = m.grades.clone();
        grades.sort_unstable();
        let mut class = cl.conj.classes[k].clone();
        class.sort_unstable();
        assert_eq!(grades, class);
    }

    #[test]
    fn induced_characters_match_closed_formula_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        for &label in &cl.labels {
            let m = cl.induce_module(label, tol::DEFAULT_SEED).unwrap();
            assert!(m.invariant_deviation(&g) < 1e-9, "label {:?}", label);
            let chi_mod = m.character(&cl.orbits);
            let chi = cl.irreducible_character(label);
            assert!(chi_mod.distance(&chi) < 1e-9, "label {:?}", label);
        }
    }

    #[test]
    fn induced_characters_match_closed_formula_q8() {
        let g = FiniteGroup::quaternion8();
        let cl = Classification::new(&g).unwrap();
        for &label in &cl.labels {
            let m = cl.induce_module(label, tol::DEFAULT_SEED).unwrap();
            assert!(m.invariant_deviation(&g) < 1e-9, "label {:?}", label);
            let chi_mod = m.character(&cl.orbits);
            let chi = cl.irreducible_character(label);
            assert!(chi_mod.distance(&chi) < 1e-9, "label {:?}", label);
        }
    }

    #[test]
    fn braiding_trivial_module_is_identity() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let cl = Classification::new(&g).unwrap();
        let m = cl.induce_module(cl.labels[0], tol::DEFAULT_SEED).unwrap();
        let c = braiding_matrix(&m, &m);
        assert_eq!(c.nrows(), 1);
        assert!((c[(0, 0)] - one()).norm() < 1e-12);
    }

    #[test]
    fn braiding_ybe_s3_three_dimensional_module() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        let k = (0..cl.conj.classes.len()).find(|&k| cl.conj.classes[k].len() == 3).unwrap();
        let label = MGLabel { class_index: k, irrep_index: 0 };
        let m = cl.induce_module(label, tol::DEFAULT_SEED).unwrap();
        assert_eq!(m.dim, 3);
        assert!(braiding_ybe_deviation(&m) < 1e-9);
    }

    #[test]
    fn braiding_natural_for_all_c2_label_pairs() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let cl = Classification::new(&g).unwrap();
        let modules: Vec<_> = cl
            .labels
            .iter()
            .map(|&l| cl.induce_module(l, tol::DEFAULT_SEED).unwrap())
            .collect();
        for v in &modules {
            for w in &modules {
                assert!(braiding_naturality_deviation(&g, v, w) < 1e-9);
            }
        }
    }

    #[test]
    fn braiding_natural_for_all_s3_label_pairs() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let cl = Classification::new(&g).unwrap();
        let modules: Vec<_> = cl
            .labels
            .iter()
            .map(|&l| cl.induce_module(l, tol::DEFAULT_SEED).unwrap())
            .collect();
        for v in &modules {
            for w in &modules {
                assert!(braiding_naturality_deviation(&g, v, w) < 1e-9);
            }
        }
    }

    #[test]
    fn nichols_flip_gives_symmetric_algebra_dims() {
        for d in 1..=3usize {
            let c = flip_braiding(d);
            let n_max = 5;
            let dims = nichols_degree_dims_from_braiding(&c, d, n_max, 300).unwrap();
            let expect: Vec<usize> = (1..=n_max).map(|n| binomial(d + n - 1, n)).collect();
            assert_eq!(dims, expect, "d = {}", d);
        }
    }

    #[test]
    fn nichols_negated_flip_gives_exterior_algebra_dims() {
        for d in 1..=3usize {
            let c = flip_braiding(d) * Complex64::new(-1.0, 0.0);
            let dims = nichols_degree_dims_from_braiding(&c, d, 5, 300).unwrap();
            let expect: Vec<usize> = (1..=5).map(|n| binomial(d, n)).collect();
            assert_eq!(dims, expect, "d = {}", d);
        }
    }

    #[test]
    fn nichols_sign_module_of_c2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let cl = Classification::new(&g).unwrap();
        // Class of the nontrivial element, sign character of its centralizer.
        let label = MGLabel { class_index: 1, irrep_index: 1 };
        let m = cl.induce_module(label, tol::DEFAULT_SEED).unwrap();
        assert_eq!(m.dim, 1);
        let c = braiding_matrix(&m, &m);
        assert!((c[(0, 0)] + one()).norm() < 1e-9);
        let dims = nichols_degree_dims(&m, 4, 300).unwrap();
        assert_eq!(dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn nichols_budget_error() {
        let c = flip_braiding(3);
        let err = nichols_degree_dims_from_braiding(&c, 3, 6, 300).unwrap_err();
        match err {
            MackeyError::NicholsBudget { needed, budget } => {
                assert_eq!(needed, 729);
                assert_eq!(budget, 300);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn reduced_words_are_reduced_and_agree() {
        for perm in permutations(4) {
            let inversions = {
                let mut count = 0;
                for i in 0..4 {
                    for j in i + 1..4 {
                        if perm[i] > perm[j] {
                            count += 1;
                        }
                    }
                }
                count
            };
            let w1 = bubble_word(&perm);
            let w2 = insertion_word(&perm);
            assert_eq!(w1.len(), inversions);
            assert_eq!(w2.len(), inversions);
        }
    }
}
