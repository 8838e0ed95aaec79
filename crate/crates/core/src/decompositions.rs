//! Takagi factorization of complex symmetric matrices and the Youla
//! block-canonical form of complex antisymmetric matrices.
//!
//! Both factorizations start from an eigendecomposition of `MM†`. Eigenvalues
//! are grouped into clusters (relative gap [`DEGENERACY_TOL`]); the phases and
//! pairings that make the unitary congruence work are fixed cluster by cluster.
//! Every result is certified by its reconstruction residual and unitarity
//! defect before it is returned.

use crate::error::{Error, Result};
use crate::linalg::{conj_vec, hermitian_eig, inner, norm, project_out, scale_vec, ComplexMatrix};
use crate::tolerance::DEGENERACY_TOL;
use crate::C64;

const EIG_TOL: f64 = 1e-12;

/// `B = U·diag(σ)·Uᵀ` with `U` unitary and `σ` nonnegative, descending.
#[derive(Debug, Clone)]
pub struct TakagiResult {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    /// `‖B − UΣUᵀ‖_F`.
    pub residual: f64,
    /// `‖U†U − I‖_F`.
    pub unitarity_defect: f64,
}

impl TakagiResult {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let s = ComplexMatrix::from_diag(&self.sigma);
        &(&self.u * &s) * &self.u.transpose()
    }

    /// Number of values above `rank_tol` times the largest one.
    pub fn rank(&self, rank_tol: f64) -> usize {
        count_nonzero(&self.sigma, rank_tol)
    }
}

/// `A = U·Z·Uᵀ` where `Z` is a direct sum of blocks `[[0, zᵢ], [−zᵢ, 0]]`
/// followed by a `null_dim × null_dim` zero block.
///
/// Columns `2i` and `2i+1` of `u` span the `i`-th block.
#[derive(Debug, Clone)]
pub struct YoulaResult {
    pub u: ComplexMatrix,
    /// One value per block, nonnegative, descending.
    pub z: Vec<f64>,
    pub null_dim: usize,
    pub residual: f64,
    pub unitarity_defect: f64,
}

impl YoulaResult {
    /// The block matrix `Z`.
    pub fn canonical(&self) -> ComplexMatrix {
        let n = self.u.rows();
        let mut z = ComplexMatrix::zeros(n, n);
        for (i, &zi) in self.z.iter().enumerate() {
            z[(2 * i, 2 * i + 1)] = C64::new(zi, 0.0);
            z[(2 * i + 1, 2 * i)] = C64::new(-zi, 0.0);
        }
        z
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        &(&self.u * &self.canonical()) * &self.u.transpose()
    }

    pub fn rank(&self, rank_tol: f64) -> usize {
        count_nonzero(&self.z, rank_tol)
    }
}

pub(crate) fn count_nonzero(values: &[f64], rank_tol: f64) -> usize {
    let max = values.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    values.iter().filter(|&&v| v > rank_tol * max).count()
}

/// Groups a descending eigenvalue list into index ranges whose consecutive
/// gaps are at most `DEGENERACY_TOL · max(λ)`.
fn clusters(eigenvalues: &[f64]) -> Vec<std::ops::Range<usize>> {
    let n = eigenvalues.len();
    let scale = eigenvalues.first().cloned().unwrap_or(0.0).max(0.0);
    let gap = DEGENERACY_TOL * scale;
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || eigenvalues[k - 1] - eigenvalues[k] > gap {
            out.push(start..k);
            start = k;
        }
    }
    out
}

/// `MM†` symmetrized so the eigensolver sees an exactly Hermitian matrix.
fn gram(m: &ComplexMatrix) -> ComplexMatrix {
    (m * &m.adjoint()).hermitian_part()
}

fn certify(residual: f64, unitarity: f64, fact_tol: f64, scale: f64) -> Result<()> {
    let bound = fact_tol * scale.max(1.0);
    if !(residual <= bound) {
        return Err(Error::Certification {
            what: "reconstruction residual",
            value: residual,
            tol: bound,
        });
    }
    if !(unitarity <= fact_tol) {
        return Err(Error::Certification {
            what: "unitarity defect",
            value: unitarity,
            tol: fact_tol,
        });
    }
    Ok(())
}

/// Takagi factorization `B = UΣUᵀ` of a complex symmetric matrix.
///
/// The columns of `U` are eigenvectors of `BB†` with phases chosen so that
/// `B·conj(uᵢ) = σᵢ·uᵢ`. Inside a degenerate cluster the compressed block
/// `S = V†·B·conj(V)` is factored on its own and composed back.
pub fn takagi(b: &ComplexMatrix, fact_tol: f64) -> Result<TakagiResult> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Takagi factorization needs a square matrix, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    let n = b.rows();
    let bnorm = b.frobenius_norm();
    if !bnorm.is_finite() {
        return Err(Error::Validation("matrix has non-finite entries".into()));
    }
    let defect = b.symmetry_defect();
    if defect > fact_tol * bnorm {
        return Err(Error::Validation(format!(
            "matrix is not symmetric: ‖B − Bᵀ‖ = {defect:e}"
        )));
    }

    let eig = hermitian_eig(&gram(b), EIG_TOL)?;
    let mut columns: Vec<(f64, Vec<C64>)> = Vec::with_capacity(n);
    for range in clusters(&eig.eigenvalues) {
        if range.len() == 1 {
            let v = eig.eigenvector(range.start);
            columns.push(phase_fix(b, v));
            continue;
        }
        let vc = ComplexMatrix::from_fn(n, range.len(), |i, j| {
            eig.eigenvectors[(i, range.start + j)]
        });
        let s = &(&vc.adjoint() * b) * &vc.conj();
        let s = symmetric_part(&s);
        let (w, sigma) = small_takagi(&s)?;
        let uc = &vc * &w;
        for (k, sk) in sigma.into_iter().enumerate() {
            columns.push((sk, uc.column(k)));
        }
    }

    columns.sort_by(|a, b| b.0.total_cmp(&a.0));
    let sigma: Vec<f64> = columns.iter().map(|c| c.0).collect();
    let cols: Vec<Vec<C64>> = columns.into_iter().map(|c| c.1).collect();
    let u = ComplexMatrix::from_columns(&cols)?;

    let mut result = TakagiResult {
        u,
        sigma,
        residual: 0.0,
        unitarity_defect: 0.0,
    };
    result.residual = b.distance(&result.reconstruct());
    result.unitarity_defect = result.u.unitarity_defect();
    certify(result.residual, result.unitarity_defect, fact_tol, bnorm)?;
    Ok(result)
}

fn symmetric_part(s: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(s.rows(), s.cols(), |i, j| (s[(i, j)] + s[(j, i)]) * 0.5)
}

/// For a unit vector `v` with `B·conj(v) ∥ v`, returns `(σ, e^{iθ/2}·v)` where
/// `v†·B·conj(v) = σe^{iθ}`.
fn phase_fix(b: &ComplexMatrix, v: Vec<C64>) -> (f64, Vec<C64>) {
    let bv = b.matvec(&conj_vec(&v)).expect("square matrix");
    let c = inner(&v, &bv);
    let sigma = c.norm();
    if sigma == 0.0 {
        return (0.0, v);
    }
    let half = C64::from_polar(1.0, c.arg() / 2.0);
    (sigma, scale_vec(&v, half))
}

/// Takagi factorization of a small symmetric block through the real
/// symmetric embedding `H = [[Re S, Im S], [Im S, −Re S]]`.
///
/// `H` has spectrum `±σₖ`; an eigenvector `(p; q)` for `+σ` gives
/// `u = p + iq` with `S·conj(u) = σu`, and any orthonormal basis of a
/// degenerate `+σ` eigenspace yields orthonormal `u`s. The vectors are
/// re-orthonormalized (near-zero `σ` mixes with `−σ`) and their phases
/// re-fixed against `S` directly.
fn small_takagi(s: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>)> {
    let m = s.rows();
    let h = ComplexMatrix::from_fn(2 * m, 2 * m, |i, j| {
        let z = s[(i % m, j % m)];
        let v = match (i < m, j < m) {
            (true, true) => z.re,
            (false, false) => -z.re,
            _ => z.im,
        };
        C64::new(v, 0.0)
    });
    let eig = hermitian_eig(&h, EIG_TOL)?;

    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(m);
    for k in 0..m {
        let pq = eig.eigenvector(k);
        let u: Vec<C64> = (0..m).map(|i| C64::new(pq[i].re, pq[m + i].re)).collect();
        let r = project_out(&u, &basis);
        let rn = norm(&r);
        if rn > 0.5 {
            basis.push(scale_vec(&r, C64::new(1.0 / rn, 0.0)));
        }
    }
    complete_basis(&mut basis, m);

    let mut out: Vec<(f64, Vec<C64>)> = basis.into_iter().map(|u| phase_fix(s, u)).collect();
    out.sort_by(|a, b| b.0.total_cmp(&a.0));
    let sigma = out.iter().map(|c| c.0).collect();
    let cols: Vec<Vec<C64>> = out.into_iter().map(|c| c.1).collect();
    Ok((ComplexMatrix::from_columns(&cols)?, sigma))
}

/// Extends an orthonormal set to a basis of `C^n` with projected unit vectors.
fn complete_basis(basis: &mut Vec<Vec<C64>>, n: usize) {
    while basis.len() < n {
        let best = (0..n)
            .map(|i| {
                let mut e = vec![C64::new(0.0, 0.0); n];
                e[i] = C64::new(1.0, 0.0);
                project_out(&e, basis)
            })
            .max_by(|a, b| norm(a).total_cmp(&norm(b)))
            .expect("n > basis.len() > 0");
        let bn = norm(&best);
        basis.push(scale_vec(&best, C64::new(1.0 / bn, 0.0)));
    }
}

/// Youla canonical form `A = UZUᵀ` of a complex antisymmetric matrix.
///
/// For each eigenvalue cluster of `AA†` a unit vector `v` is drawn from the
/// part of the cluster not yet used, `w = A·conj(v)/σ` completes the pair and
/// the columns `(w, v)` produce a block with value `+σ`. Vectors annihilated
/// by `A` form the null block.
pub fn youla(a: &ComplexMatrix, fact_tol: f64) -> Result<YoulaResult> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Youla decomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let anorm = a.frobenius_norm();
    if !anorm.is_finite() {
        return Err(Error::Validation("matrix has non-finite entries".into()));
    }
    let defect = a.antisymmetry_defect();
    if defect > fact_tol * anorm {
        return Err(Error::Validation(format!(
            "matrix is not antisymmetric: ‖A + Aᵀ‖ = {defect:e}"
        )));
    }

    // below this A·conj(v) is rounding noise
    let null_cut = 64.0 * f64::EPSILON * anorm;
    let (mut blocks, mut nulls) = youla_vectors(a, null_cut)?;
    nulls.sort_by_key(|x| x.0);

    blocks.sort_by(|x, y| y.0.total_cmp(&x.0));
    let z: Vec<f64> = blocks.iter().map(|b| b.0).collect();
    let null_dim = n - 2 * blocks.len();
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for (_, w, v) in blocks {
        cols.push(w);
        cols.push(v);
    }
    cols.extend(nulls.into_iter().map(|x| x.1));
    debug_assert_eq!(cols.len(), n);
    let u = ComplexMatrix::from_columns(&cols)?;

    let mut result = YoulaResult {
        u,
        z,
        null_dim,
        residual: 0.0,
        unitarity_defect: 0.0,
    };
    result.residual = a.distance(&result.reconstruct());
    result.unitarity_defect = result.u.unitarity_defect();
    certify(result.residual, result.unitarity_defect, fact_tol, anorm)?;
    Ok(result)
}

type Pairs = Vec<(f64, Vec<C64>, Vec<C64>)>;
type Nulls = Vec<(usize, Vec<C64>)>;

/// Canonical pairs `(z, w, v)` and null vectors (keyed by eigen-index) of an
/// antisymmetric matrix. Clusters that mix scales down to zero are resolved by
/// recursing on their Gram block, where the relative gaps are visible.
fn youla_vectors(a: &ComplexMatrix, null_cut: f64) -> Result<(Pairs, Nulls)> {
    let n = a.rows();
    let eig = hermitian_eig(&gram(a), EIG_TOL)?;
    let lambda_max = eig.eigenvalues.first().cloned().unwrap_or(0.0).max(0.0);

    let mut used: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut blocks: Pairs = Vec::new();
    let mut nulls: Nulls = Vec::new();

    for range in clusters(&eig.eigenvalues) {
        let cluster_top = eig.eigenvalues[range.start];
        let significant = eig.eigenvalues[range.end - 1] > DEGENERACY_TOL * lambda_max;
        if !significant && range.len() > 1 && range.len() < n {
            let v = ComplexMatrix::from_columns(
                &range
                    .clone()
                    .map(|k| eig.eigenvector(k))
                    .collect::<Vec<_>>(),
            )?;
            let s = &(&v.adjoint() * a) * &v.conj();
            let s = &s.scale_real(0.5) - &s.transpose().scale_real(0.5);
            let (sub_blocks, sub_nulls) = if s.frobenius_norm() <= null_cut {
                (
                    Vec::new(),
                    (0..range.len())
                        .map(|k| (k, ComplexMatrix::identity(range.len()).column(k)))
                        .collect(),
                )
            } else {
                youla_vectors(&s, null_cut)?
            };
            for (z, w, x) in sub_blocks {
                let w = v.matvec(&w)?;
                let x = v.matvec(&x)?;
                used.push(w.clone());
                used.push(x.clone());
                blocks.push((z, w, x));
            }
            for (k, x) in sub_nulls {
                let x = v.matvec(&x)?;
                used.push(x.clone());
                let key = if k == usize::MAX { k } else { range.start + k };
                nulls.push((key, x));
            }
            continue;
        }
        // clusters that cannot chain down to zero must pair up exactly
        if significant && range.len() % 2 == 1 {
            return Err(Error::Internal(format!(
                "singular value {:e} of an antisymmetric matrix has odd multiplicity {}",
                cluster_top.max(0.0).sqrt(),
                range.len()
            )));
        }
        let basis: Vec<Vec<C64>> = range.clone().map(|k| eig.eigenvector(k)).collect();
        let mut taken = 0;
        loop {
            let candidates: Vec<Vec<C64>> = range
                .clone()
                .map(|k| project_out(&eig.eigenvector(k), &used))
                .collect();
            let best_norm = candidates.iter().map(|c| norm(c)).fold(0.0, f64::max);
            if best_norm < 0.5 {
                break;
            }
            // latest candidate among the (near-)best keeps canonical input canonical
            let pick = candidates
                .iter()
                .rposition(|c| norm(c) >= best_norm - 1e-3)
                .expect("best exists");
            let v = scale_vec(
                &candidates[pick],
                C64::new(1.0 / norm(&candidates[pick]), 0.0),
            );
            let av = a.matvec(&conj_vec(&v))?;
            let z = norm(&av);
            used.push(v.clone());
            // A·conj(v) lives in the same eigenspace; anything outside it is noise
            let mut in_cluster = vec![C64::new(0.0, 0.0); n];
            for e in &basis {
                let c = inner(e, &av);
                for (x, y) in in_cluster.iter_mut().zip(e) {
                    *x += c * y;
                }
            }
            let w = project_out(&in_cluster, &used);
            let wn = norm(&w);
            if wn <= null_cut {
                nulls.push((range.start + pick, v));
                taken += 1;
                continue;
            }
            if wn < 0.5 * z {
                return Err(Error::Internal(
                    "partner vector collapsed onto the used subspace".into(),
                ));
            }
            let mut w = scale_vec(&w, C64::new(1.0 / wn, 0.0));
            // make w†·A·conj(v) real and positive
            let zc = inner(&w, &av);
            let ph = zc / zc.norm();
            w = scale_vec(&w, ph);
            used.push(w.clone());
            blocks.push((zc.norm(), w, v));
            taken += 2;
        }
        if significant && taken != range.len() {
            return Err(Error::Internal(format!(
                "cluster of size {} produced {taken} canonical vectors",
                range.len()
            )));
        }
    }

    if used.len() < n {
        let mut all = used.clone();
        complete_basis(&mut all, n);
        nulls.extend(all.into_iter().skip(used.len()).map(|v| (usize::MAX, v)));
    }
    Ok((blocks, nulls))
}
