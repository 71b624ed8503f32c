//! Orbit machinery for the congruence action of the upper unipotent group on
//! skew matrices: genericity-aware reduction to tridiagonal canonical
//! representatives, orbit uniqueness, the invariant-measure Jacobian, and the
//! quotient-measure exponent solve.

use crate::exact::{jacobian_det, Mat, MPoly, Rat};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbitError {
    #[error("pivot z_{{{stage},{above}}} vanishes at reduction stage {stage}")]
    NonGenericPivot { stage: usize, above: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("canonical representative needs all a_i nonzero")]
    ZeroCoordinate,
    #[error("symbolic mode is guarded at n <= {max}, got n = {n}")]
    SymbolicGuard { n: usize, max: usize },
    #[error("dimension sanity failed: n(n-1)/2 + n != dim Sk_{{n+1}}")]
    DimensionMismatch,
}

/// A skew-symmetric matrix over Q.
#[derive(Clone, PartialEq, Debug)]
pub struct SkewMat {
    pub mat: Mat<Rat>,
}

impl SkewMat {
    pub fn new(mat: Mat<Rat>) -> Result<Self, OrbitError> {
        if !mat.is_square() || mat.transpose() != mat.neg_mat() {
            return Err(OrbitError::NotSkew);
        }
        Ok(SkewMat { mat })
    }

    pub fn size(&self) -> usize {
        self.mat.rows
    }

    pub fn random_generic<R: rand::Rng>(rng: &mut R, size: usize, bound: i64) -> SkewMat {
        loop {
            let mut m = Mat::zero(size, size);
            for i in 0..size {
                for j in i + 1..size {
                    let v = Rat::random_int(rng, bound);
                    m[(i, j)] = v.clone();
                    m[(j, i)] = -v;
                }
            }
            let s = SkewMat { mat: m };
            if reduce_orbit(&s).is_ok() {
                return s;
            }
        }
    }
}

/// Canonical tridiagonal representative with superdiagonal (a_1, .., a_n).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CanonicalRep {
    pub a: Vec<Rat>,
}

impl CanonicalRep {
    pub fn new(a: Vec<Rat>) -> Result<Self, OrbitError> {
        if a.iter().any(Rat::is_zero) {
            return Err(OrbitError::ZeroCoordinate);
        }
        Ok(CanonicalRep { a })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// The (n+1) x (n+1) tridiagonal skew matrix with this superdiagonal.
    pub fn matrix(&self) -> Mat<Rat> {
        let n = self.n();
        let mut m = Mat::zero(n + 1, n + 1);
        for (i, ai) in self.a.iter().enumerate() {
            m[(i, i + 1)] = ai.clone();
            m[(i + 1, i)] = -ai;
        }
        m
    }

    pub fn random<R: rand::Rng>(rng: &mut R, n: usize, bound: i64) -> CanonicalRep {
        CanonicalRep {
            a: (0..n).map(|_| Rat::random_nonzero_int(rng, bound)).collect(),
        }
    }
}

/// Reduce a generic skew matrix of size n+1 to its canonical representative:
/// returns the unipotent u (n x n) with diag(u,1) Zt t(diag(u,1)) canonical.
/// Stage s eliminates column s above the pivot at (s-1, s); a vanishing pivot
/// is reported with its stage index (the phi_{s-1} map of the tower).
pub fn reduce_orbit(ztilde: &SkewMat) -> Result<(Mat<Rat>, CanonicalRep), OrbitError> {
    let size = ztilde.size();
    assert!(size >= 2, "need size >= 2");
    let n = size - 1;
    let mut w = ztilde.mat.clone();
    let mut u = Mat::<Rat>::identity(n);
    // stages s = n+1 down to 3 in 1-based terms; 0-based column c = s-1.
    for c in (2..=n).rev() {
        let pivot = w[(c - 1, c)].clone();
        if pivot.is_zero() {
            return Err(OrbitError::NonGenericPivot {
                stage: c,
                above: c + 1,
            });
        }
        let pinv = pivot.inv();
        // gamma_i = -pivot^{-1} * w[i][c] for i < c-1
        let gammas: Vec<Rat> = (0..c - 1).map(|i| -&(&w[(i, c)] * &pinv)).collect();
        // row and column update: row_i += gamma_i * row_{c-1}; col symmetric
        for (i, g) in gammas.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            for j in 0..size {
                let t = &w[(c - 1, j)] * g;
                w[(i, j)] = &w[(i, j)] + &t;
            }
            for r in 0..size {
                let t = &w[(r, c - 1)] * g;
                w[(r, i)] = &w[(r, i)] + &t;
            }
            // accumulate into u: u <- e u with e = I + g E_{i, c-1}
            for j in 0..n {
                let t = &u[(c - 1, j)] * g;
                u[(i, j)] = &u[(i, j)] + &t;
            }
        }
    }
    // final pivot a_1 = w[0][1] must be nonzero as well
    if w[(0, 1)].is_zero() {
        return Err(OrbitError::NonGenericPivot { stage: 1, above: 2 });
    }
    let a: Vec<Rat> = (0..n).map(|i| w[(i, i + 1)].clone()).collect();
    let rep = CanonicalRep::new(a)?;
    debug_assert_eq!(w, rep.matrix());
    Ok((u, rep))
}

/// Embed an n x n matrix as diag(u, 1) of size n+1.
pub fn embed_corner(u: &Mat<Rat>) -> Mat<Rat> {
    let n = u.rows;
    let mut out = Mat::identity(n + 1);
    out.set_block(0, 0, u);
    out
}

/// Whether some unipotent u conjugates canonical(rep1) to canonical(rep2),
/// by the column-matching induction: u maps the last column (0,..,0,a_k,0) to
/// (0,..,0,a'_k,0), which forces a_k = a'_k and kills the strictly-upper part
/// of u's last column; the leading block then recurses. Returns
/// (conjugate_exists, forced_u_is_identity).
pub fn orbit_uniqueness_check(rep1: &CanonicalRep, rep2: &CanonicalRep) -> (bool, bool) {
    assert_eq!(rep1.n(), rep2.n());
    fn recurse(a: &[Rat], b: &[Rat]) -> bool {
        let k = a.len();
        if k == 0 {
            return true;
        }
        // u alpha = alpha' with alpha = a_k e_k: the k-th coordinate gives
        // a_k = a'_k, coordinates 1..k-1 force u_{i,k} = 0 (a_k != 0).
        if a[k - 1] != b[k - 1] {
            return false;
        }
        // with the last column of u trivial, diag(u',1) Z_1 t(diag(u',1)) = Z'_1
        recurse(&a[..k - 1], &b[..k - 1])
    }
    let exists = recurse(&rep1.a, &rep2.a);
    // when it exists every stage pinned the u-column to zero, so u = I; the
    // simplicity claim (u fixing Z implies u = I) is the rep1 = rep2 case
    (exists, exists)
}

/// Verdict of the measure-Jacobian verification.
#[derive(Clone, Debug, Serialize)]
pub struct MeasureVerdict {
    pub n: usize,
    pub mode: String,
    pub matches: bool,
    /// exponents (0, 1, .., n-1) of the |a_i| in the monomial, as certified
    pub exponents: Vec<u32>,
    pub trials: usize,
    /// Schwartz-Zippel failure bound numerator/denominator as a string, for
    /// the randomized mode
    pub failure_bound: Option<String>,
}

/// Build the parametrization map (u-coordinates, a) -> strictly upper entries
/// of diag(u,1) * canonical(a) * t(diag(u,1)) as polynomials.
fn parametrization_polys(n: usize) -> (Vec<MPoly>, usize) {
    let nu = n * (n - 1) / 2; // u-coordinates
    let nvars = nu + n;
    // variable order: x_{ij} (row-major strictly upper of u), then a_1..a_n
    let mut var_of = vec![vec![usize::MAX; n]; n];
    let mut next = 0;
    for i in 0..n {
        for j in i + 1..n {
            var_of[i][j] = next;
            next += 1;
        }
    }
    let a_var = |i: usize| MPoly::var(nvars, nu + i);
    // u as polynomial matrix (embedded to size n+1)
    let size = n + 1;
    let mut u: Mat<MPoly> = Mat::zero(size, size);
    for i in 0..size {
        u[(i, i)] = MPoly::one(nvars);
    }
    for i in 0..n {
        for j in i + 1..n {
            u[(i, j)] = MPoly::var(nvars, var_of[i][j]);
        }
    }
    // canonical(a) as polynomial matrix
    let mut z: Mat<MPoly> = Mat::zero(size, size);
    for i in 0..n {
        z[(i, i + 1)] = a_var(i);
        z[(i + 1, i)] = a_var(i).neg();
    }
    let w = u.mul_mat(&z).mul_mat(&u.transpose());
    let mut coords = Vec::with_capacity(nvars);
    for i in 0..size {
        for j in i + 1..size {
            coords.push(w[(i, j)].clone());
        }
    }
    (coords, nvars)
}

/// Check that the Jacobian of the orbit parametrization is, up to sign, the
/// monomial prod a_i^{i-1}: symbolically for n <= symbolic guard, or by
/// evaluation at `trials` random points.
pub fn measure_jacobian_check(
    n: usize,
    symbolic: bool,
    symbolic_max_n: usize,
    trials: usize,
    rng: &mut impl rand::Rng,
) -> Result<MeasureVerdict, OrbitError> {
    let dim_sk = (n + 1) * n / 2;
    if n * (n - 1) / 2 + n != dim_sk {
        return Err(OrbitError::DimensionMismatch);
    }
    let (coords, nvars) = parametrization_polys(n);
    let exponents: Vec<u32> = (0..n as u32).collect();
    if symbolic {
        if n > symbolic_max_n {
            return Err(OrbitError::SymbolicGuard {
                n,
                max: symbolic_max_n,
            });
        }
        let j = jacobian_det(&coords, nvars).expect("square by construction");
        // expected +- prod a_i^{i-1}: a single monomial in the a-block
        let mut exps = vec![0u32; nvars];
        for i in 0..n {
            exps[n * (n - 1) / 2 + i] = i as u32;
        }
        let target = MPoly::monomial(nvars, exps, Rat::one());
        let matches = j == target || j == target.neg();
        return Ok(MeasureVerdict {
            n,
            mode: "symbolic".into(),
            matches,
            exponents,
            trials: 0,
            failure_bound: None,
        });
    }
    // randomized: evaluate the symbolic Jacobian matrix at random points
    let rows: Vec<Vec<MPoly>> = coords
        .iter()
        .map(|p| (0..nvars).map(|v| p.derivative(v)).collect())
        .collect();
    let mut all_match = true;
    let bound = 10_000i64;
    let mut deg: u32 = 0;
    for r in &rows {
        deg = deg.max(r.iter().map(|p| p.total_degree()).max().unwrap_or(0));
    }
    let det_degree = deg.saturating_mul(dim_sk as u32);
    for _ in 0..trials {
        let point: Vec<Rat> = (0..nvars)
            .map(|_| Rat::random_nonzero_int(rng, bound))
            .collect();
        let mut num = Mat::<Rat>::zero(dim_sk, dim_sk);
        for i in 0..dim_sk {
            for j in 0..nvars {
                num[(i, j)] = rows[i][j].eval(&point);
            }
        }
        let det = num.det_bareiss().expect("square");
        let mut target = Rat::one();
        for i in 0..n {
            target *= &point[n * (n - 1) / 2 + i].pow_i(i as i64);
        }
        if det != target && det != -target {
            all_match = false;
        }
    }
    // Schwartz-Zippel: a nonzero polynomial of total degree D vanishes at a
    // random point of a (2B)^k grid with probability <= D / (2B).
    let bound_frac = format!("{}/{}", det_degree, 2 * bound);
    Ok(MeasureVerdict {
        n,
        mode: "randomized".into(),
        matches: all_match,
        exponents,
        trials,
        failure_bound: Some(bound_frac),
    })
}

/// Quotient-measure exponents: substituting a_i = t^2 a'_i (i < n), a_n = t
/// into prod |a_i|^{i-1} da_i against the density |t|^{n^2 - 1} forces
/// k_i = i - 1; the t-exponent residue must vanish.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientExponents {
    pub k: Vec<i64>,
    pub residue: i64,
}

pub fn quotient_measure_exponents(n: usize) -> QuotientExponents {
    assert!(n >= 2);
    // per-a'_i exponent matching is diagonal: k_i = i - 1 directly
    let k: Vec<i64> = (1..n).map(|i| (i - 1) as i64).collect();
    // t-exponent on the substituted side:
    //   2 sum_{i<n} (i-1)   from |a_i|^{i-1} = |t|^{2(i-1)} |a'_i|^{i-1}
    // + 2 (n-1)             from da_i = |t|^2 da'_i
    // + (n-1)               from |a_n|^{n-1} = |t|^{n-1}
    let lhs_t: i64 = (1..n).map(|i| 2 * (i as i64 - 1)).sum::<i64>()
        + 2 * (n as i64 - 1)
        + (n as i64 - 1);
    let residue = (n as i64) * (n as i64) - 1 - lhs_t;
    QuotientExponents { k, residue }
}
