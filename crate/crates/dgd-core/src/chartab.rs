//! Complex irreducible character tables by class-algebra diagonalization.
//!
//! The class-sum matrices L_i (structure constants of the center of the group
//! algebra) commute; conjugating by D = diag(sqrt|O_k|) makes each one normal
//! with adjoint equal to the matrix of the inverse class, so the Hermitian
//! and anti-Hermitian parts form a commuting Hermitian family. Splitting
//! common eigenspaces of that family separates the central characters, from
//! which degrees and character values follow.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{ConjugacyData, FiniteGroup};
use crate::linalg::{CMat, C64};
use crate::tol;

#[derive(Debug, Error)]
pub enum ChartabError {
    #[error("eigenspace splitting left {0} unseparated block(s) after fallbacks")]
    SplitFailed(usize),
    #[error("central-character residual {0:.3e} exceeds tolerance")]
    EigenResidual(f64),
    #[error("character degree {0} is not within {1:.1e} of a positive integer")]
    NonIntegerDegree(f64, f64),
}

/// Irreducible character table; rows are characters in canonical order
/// (degree ascending, then value-lexicographic with larger values first),
/// columns follow the conjugacy-class order of `ConjugacyData`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub degrees: Vec<usize>,
    pub values: Vec<Vec<C64>>,
}

impl CharacterTable {
    pub fn num_rows(&self) -> usize {
        self.values.len()
    }

    /// Row index whose values are the complex conjugate of row `i`.
    pub fn conjugate_row_index(&self, i: usize) -> Option<usize> {
        let target: Vec<C64> = self.values[i].iter().map(|z| z.conj()).collect();
        self.row_matching(&target)
    }

    /// Row index matching the given value vector within `tol::CHAR_MATCH`.
    pub fn row_matching(&self, target: &[C64]) -> Option<usize> {
        self.values.iter().position(|row| {
            row.iter().zip(target).all(|(a, b)| (a - b).norm() <= tol::CHAR_MATCH)
        })
    }
}

/// a(i,j,k) = #{(x,y) in O_i x O_j : xy = g_k}. Satisfies
/// sum_k a(i,j,k)|O_k| = |O_i||O_j|.
pub fn class_algebra_constants(g: &FiniteGroup, conj: &ConjugacyData) -> Vec<Vec<Vec<usize>>> {
    let r = conj.class_count();
    let mut a = vec![vec![vec![0usize; r]; r]; r];
    for i in 0..r {
        for &x in &conj.classes[i] {
            for k in 0..r {
                let y = g.mul(g.inv(x), conj.reps[k]);
                let j = conj.class_of[y as usize];
                a[i][j][k] += 1;
            }
        }
    }
    a
}

/// Compute the character table of `g`.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, ChartabError> {
    compute(g, &g.conjugacy())
}

pub fn compute(g: &FiniteGroup, conj: &ConjugacyData) -> Result<CharacterTable, ChartabError> {
    let r = conj.class_count();
    let a = class_algebra_constants(g, conj);
    let sizes: Vec<f64> = conj.classes.iter().map(|c| c.len() as f64).collect();

    // Left-multiplication matrices of the class sums: L_i[k][j] = a(i,j,k).
    let l_mats: Vec<CMat> = (0..r)
        .map(|i| {
            CMat::from_fn(r, r, |k, j| Complex64::new(a[i][j][k] as f64, 0.0))
        })
        .collect();

    // Normalized family: N_i = D L_i D^-1, D = diag(sqrt|O_k|). Each N_i is
    // normal (its adjoint is the matrix of the inverse class), so Hermitian
    // and anti-Hermitian parts all commute.
    let mut family: Vec<CMat> = Vec::new();
    for l in &l_mats {
        let n_i = CMat::from_fn(r, r, |k, j| l[(k, j)] * (sizes[k] / sizes[j]).sqrt());
        let herm = (&n_i + n_i.adjoint()).map(|z| z * 0.5);
        let anti = (&n_i - n_i.adjoint()).map(|z| z * Complex64::new(0.0, -0.5));
        if herm.iter().any(|z| z.norm() > tol::PRUNE) {
            family.push(herm);
        }
        if anti.iter().any(|z| z.norm() > tol::PRUNE) {
            family.push(anti);
        }
    }

    // Iteratively split common eigenspaces until all blocks are 1-dimensional.
    let mut blocks: Vec<CMat> = vec![CMat::identity(r, r)];
    for f in &family {
        blocks = split_blocks(blocks, f);
        if blocks.iter().all(|b| b.ncols() == 1) {
            break;
        }
    }
    if blocks.iter().any(|b| b.ncols() > 1) {
        // Fallback: random real combinations separate the remaining
        // eigenvalue coincidences generically.
        for attempt in 0..2u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED.wrapping_add(attempt));
            let mut combo = CMat::zeros(r, r);
            for f in &family {
                let t: f64 = rng.gen_range(-1.0..1.0);
                combo += f * Complex64::new(t, 0.0);
            }
            blocks = split_blocks(blocks, &combo);
            if blocks.iter().all(|b| b.ncols() == 1) {
                break;
            }
        }
    }
    let stuck = blocks.iter().filter(|b| b.ncols() > 1).count();
    if stuck > 0 {
        return Err(ChartabError::SplitFailed(stuck));
    }

    // Each block column is a common eigenvector w; x = D^-1 w is a common
    // eigenvector of the original L_i with eigenvalue the central character
    // omega_i = |O_i| chi(g_i) / chi(1).
    let mut rows: Vec<(usize, Vec<C64>)> = Vec::new();
    for b in &blocks {
        let w = b.column(0);
        let x: Vec<C64> = (0..r).map(|k| w[k] / sizes[k].sqrt()).collect();
        let pivot = (0..r)
            .max_by(|&p, &q| x[p].norm().partial_cmp(&x[q].norm()).unwrap())
            .unwrap();
        let mut omega = vec![Complex64::new(0.0, 0.0); r];
        for i in 0..r {
            let lx: Vec<C64> = (0..r)
                .map(|k| (0..r).map(|j| l_mats[i][(k, j)] * x[j]).sum())
                .collect();
            omega[i] = lx[pivot] / x[pivot];
            let resid = (0..r)
                .map(|k| (lx[k] - omega[i] * x[k]).norm())
                .fold(0.0, f64::max);
            let scale = omega[i].norm().max(1.0);
            if resid > 1e-6 * scale {
                return Err(ChartabError::EigenResidual(resid));
            }
        }
        let inv_sq: f64 = (0..r).map(|i| omega[i].norm_sqr() / sizes[i]).sum();
        let degree = (g.order() as f64 / inv_sq).sqrt();
        let rounded = degree.round();
        if (degree - rounded).abs() > tol::DEGREE_INT || rounded < 1.0 {
            return Err(ChartabError::NonIntegerDegree(degree, tol::DEGREE_INT));
        }
        let d = rounded as usize;
        let mut chi: Vec<C64> =
            (0..r).map(|i| omega[i] * (rounded / sizes[i])).collect();
        for z in chi.iter_mut() {
            if z.im.abs() < tol::PASS {
                *z = Complex64::new(z.re, 0.0);
            }
        }
        chi[0] = Complex64::new(rounded, 0.0);
        rows.push((d, chi));
    }

    rows.sort_by(|(da, va), (db, vb)| da.cmp(db).then_with(|| cmp_value_rows(va, vb)));
    let degrees = rows.iter().map(|(d, _)| *d).collect();
    let values = rows.into_iter().map(|(_, v)| v).collect();
    Ok(CharacterTable { degrees, values })
}

/// Row comparator: lexicographic over columns on rounded (re, im), with
/// larger values first, so the trivial character sorts ahead of its peers.
fn cmp_value_rows(a: &[C64], b: &[C64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let key = |z: &C64| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64);
        match key(y).cmp(&key(x)) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Split each block of the current decomposition into eigenspace sub-blocks
/// of the Hermitian matrix `f` (restricted to the block).
fn split_blocks(blocks: Vec<CMat>, f: &CMat) -> Vec<CMat> {
    let mut out = Vec::new();
    for b in blocks {
        if b.ncols() == 1 {
            out.push(b);
            continue;
        }
        // The block spans an invariant subspace of every family member, so
        // the compression B* F B represents F's restriction and is Hermitian.
        let mut m = b.adjoint() * f * &b;
        let sym = (&m + m.adjoint()).map(|z| z * 0.5);
        m = sym;
        let (_, vecs, clusters) = crate::linalg::hermitian_eigen_clustered(&m);
        for (lo, hi) in clusters {
            let sub: DMatrix<Complex64> = vecs.columns(lo, hi - lo).into_owned();
            out.push(&b * sub);
        }
    }
    out
}

/// Orthogonality deviations of a character table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct OrthogonalityReport {
    pub row_deviation: f64,
    pub column_deviation: f64,
    pub pass: bool,
}

pub fn verify_orthogonality(
    table: &CharacterTable,
    g: &FiniteGroup,
    conj: &ConjugacyData,
    tol_pass: f64,
) -> OrthogonalityReport {
    let r = table.num_rows();
    let n = g.order() as f64;
    let mut row_dev = 0.0f64;
    for i in 0..r {
        for j in 0..r {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..r {
                acc += table.values[i][k]
                    * table.values[j][k].conj()
                    * Complex64::new(conj.classes[k].len() as f64 / n, 0.0);
            }
            let expect = if i == j { 1.0 } else { 0.0 };
            row_dev = row_dev.max((acc - Complex64::new(expect, 0.0)).norm());
        }
    }
    let mut col_dev = 0.0f64;
    for k in 0..r {
        for l in 0..r {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..r {
                acc += table.values[i][k] * table.values[i][l].conj();
            }
            let expect = if k == l { conj.centralizer_orders[k] as f64 } else { 0.0 };
            col_dev = col_dev.max((acc - Complex64::new(expect, 0.0)).norm());
        }
    }
    OrthogonalityReport {
        row_deviation: row_dev,
        column_deviation: col_dev,
        pass: row_dev <= tol_pass && col_dev <= tol_pass,
    }
}
