//! The dual group GSp(2n): similitude test, Levi elements m(g, a0), symmetric
//! nilpotents, the adjoint action on them, its block decomposition under a
//! product Levi, and unramified twisted symmetric-square L-factor data.

use crate::exact::{Mat, Rat};
use crate::so_realization::j_prime;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DualError {
    #[error("matrix does not satisfy th J h = phi(h) J for any nonzero phi")]
    NotSimilitude,
    #[error("g must be invertible")]
    SingularLevi,
    #[error("a0 must be nonzero")]
    ZeroSimilitude,
    #[error("Y is not symmetric")]
    NotSymmetric,
    #[error("Satake parameters must be nonzero")]
    ZeroParameter,
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
}

/// The symplectic form J = [[0, J'], [-tJ', 0]] of size 2n.
pub fn symplectic_form(n: usize) -> Mat<Rat> {
    let jp = j_prime(n);
    let mut j = Mat::zero(2 * n, 2 * n);
    j.set_block(0, n, &jp);
    j.set_block(n, 0, &jp.transpose().neg_mat());
    j
}

/// An element of GSp(2n) with its similitude factor.
#[derive(Clone, PartialEq, Debug)]
pub struct GSpElt {
    pub n: usize,
    pub mat: Mat<Rat>,
    pub similitude: Rat,
}

impl GSpElt {
    /// Checks th J h = phi J and extracts phi.
    pub fn new(n: usize, mat: Mat<Rat>) -> Result<Self, DualError> {
        let j = symplectic_form(n);
        let lhs = mat.transpose().mul_mat(&j).mul_mat(&mat);
        // find the first nonzero entry of J to read off phi
        let mut phi = None;
        'outer: for i in 0..2 * n {
            for k in 0..2 * n {
                if !j[(i, k)].is_zero() {
                    phi = Some(&lhs[(i, k)] / &j[(i, k)]);
                    break 'outer;
                }
            }
        }
        let phi = phi.expect("J nonzero");
        if phi.is_zero() || lhs != j.scale(&phi) {
            return Err(DualError::NotSimilitude);
        }
        Ok(GSpElt {
            n,
            mat,
            similitude: phi,
        })
    }

    pub fn mul(&self, rhs: &GSpElt) -> GSpElt {
        assert_eq!(self.n, rhs.n);
        GSpElt {
            n: self.n,
            mat: self.mat.mul_mat(&rhs.mat),
            similitude: &self.similitude * &rhs.similitude,
        }
    }

    pub fn inverse(&self) -> GSpElt {
        GSpElt {
            n: self.n,
            mat: self
                .mat
                .inverse()
                .expect("square")
                .expect("similitude elements are invertible"),
            similitude: self.similitude.inv(),
        }
    }
}

/// Levi element m(g, a0) = diag(g, a0 J' tg^{-1} J'^{-1}); similitude a0.
pub fn levi_elt(g: &Mat<Rat>, a0: &Rat) -> Result<GSpElt, DualError> {
    assert!(g.is_square());
    let n = g.rows;
    if a0.is_zero() {
        return Err(DualError::ZeroSimilitude);
    }
    let gi = match g.inverse()? {
        Some(gi) => gi,
        None => return Err(DualError::SingularLevi),
    };
    let jp = j_prime(n);
    let jpi = jp.inverse()?.expect("J' invertible");
    let lower = jp.mul_mat(&gi.transpose()).mul_mat(&jpi).scale(a0);
    let mut m = Mat::zero(2 * n, 2 * n);
    m.set_block(0, 0, g);
    m.set_block(n, n, &lower);
    let elt = GSpElt::new(n, m)?;
    debug_assert_eq!(elt.similitude, *a0);
    Ok(elt)
}

/// A symmetric Y, standing for the nilpotent [[0, Y J'^{-1}], [0, 0]].
#[derive(Clone, PartialEq, Debug)]
pub struct SymNilpotent {
    pub y: Mat<Rat>,
}

impl SymNilpotent {
    pub fn new(y: Mat<Rat>) -> Result<Self, DualError> {
        if !y.is_square() || y.transpose() != y {
            return Err(DualError::NotSymmetric);
        }
        Ok(SymNilpotent { y })
    }

    pub fn n(&self) -> usize {
        self.y.rows
    }

    /// The embedded 2n x 2n nilpotent [[0, Y J'^{-1}], [0, 0]].
    pub fn embedded(&self) -> Mat<Rat> {
        let n = self.n();
        let jpi = j_prime(n).inverse().unwrap().expect("J' invertible");
        let x = self.y.mul_mat(&jpi);
        let mut m = Mat::zero(2 * n, 2 * n);
        m.set_block(0, n, &x);
        m
    }

    /// Basis of the space: E_ii and E_ij + E_ji (i < j); dimension n(n+1)/2.
    pub fn basis(n: usize) -> Vec<SymNilpotent> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut y = Mat::zero(n, n);
                y[(i, j)] = Rat::one();
                y[(j, i)] = Rat::one();
                if i == j {
                    y[(i, i)] = Rat::one();
                }
                out.push(SymNilpotent { y });
            }
        }
        out
    }
}

/// Adjoint action as honest conjugation m n(Y) m^{-1}; in coordinates
/// Y -> a0^{-1} g Y tg. (The displayed formula with a leading a0 and a
/// trailing J' breaks both the scaling and the symmetry; the harness reports
/// that comparison as a finding.)
pub fn adjoint_action(m: &GSpElt, y: &SymNilpotent) -> SymNilpotent {
    let n = m.n;
    assert_eq!(n, y.n());
    let conj = m
        .mat
        .mul_mat(&y.embedded())
        .mul_mat(&m.inverse().mat);
    // extract Y' from the (0, n) block: X' = Y' J'^{-1}
    let x = conj.submatrix(0, n, n, n);
    let yp = x.mul_mat(&j_prime(n));
    debug_assert_eq!(conj.submatrix(0, 0, n, n), Mat::zero(n, n));
    debug_assert_eq!(yp.transpose(), yp, "conjugation preserves symmetry");
    SymNilpotent { y: yp }
}

/// Closed form of the same action: a0^{-1} g Y tg.
pub fn adjoint_action_closed_form(g: &Mat<Rat>, a0: &Rat, y: &SymNilpotent) -> SymNilpotent {
    let yp = g.mul_mat(&y.y).mul_mat(&g.transpose()).scale(&a0.inv());
    SymNilpotent { y: yp }
}

/// Satake data: chi_i(pi), eta(pi) and the residue size q.
#[derive(Clone, Debug, Serialize)]
pub struct SatakeParam {
    pub chi: Vec<Rat>,
    pub eta: Rat,
    pub prime: u64,
}

impl SatakeParam {
    pub fn new(chi: Vec<Rat>, eta: Rat, prime: u64) -> Result<Self, DualError> {
        if chi.iter().any(Rat::is_zero) || eta.is_zero() {
            return Err(DualError::ZeroParameter);
        }
        Ok(SatakeParam { chi, eta, prime })
    }
}

/// L-polynomial prod (1 - lambda_i T) as coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LPolynomial {
    pub coeffs: Vec<Rat>,
}

impl LPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Eigenvalue multiset {chi_i chi_j eta : i <= j} (sorted) and the polynomial
/// prod (1 - lambda T).
pub fn sym2_satake(sp: &SatakeParam) -> (Vec<Rat>, LPolynomial) {
    let n = sp.chi.len();
    let mut eigen = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            eigen.push(&(&sp.chi[i] * &sp.chi[j]) * &sp.eta);
        }
    }
    eigen.sort();
    let mut coeffs = vec![Rat::one()];
    for lam in &eigen {
        // multiply by (1 - lam T)
        let mut next = vec![Rat::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] = &next[k] + c;
            next[k + 1] = &next[k + 1] - &(c * lam);
        }
        coeffs = next;
    }
    (eigen, LPolynomial { coeffs })
}

/// Eigenvalues of Ad(m(diag(chi), a0)) on the symmetric-nilpotent basis,
/// computed by applying the conjugation to each basis element.
pub fn adjoint_eigenvalues(sp: &SatakeParam) -> Result<Vec<Rat>, DualError> {
    let n = sp.chi.len();
    let mut g = Mat::zero(n, n);
    for i in 0..n {
        g[(i, i)] = sp.chi[i].clone();
    }
    let a0 = sp.eta.inv();
    let m = levi_elt(&g, &a0)?;
    let mut out = Vec::new();
    for b in SymNilpotent::basis(n) {
        let image = adjoint_action(&m, &b);
        // the basis element is an eigenvector: image = lambda * b
        let mut lambda = None;
        for i in 0..n {
            for j in 0..n {
                if !b.y[(i, j)].is_zero() {
                    let l = &image.y[(i, j)] / &b.y[(i, j)];
                    lambda = Some(l);
                }
            }
        }
        let lambda = lambda.expect("basis element nonzero");
        debug_assert_eq!(image.y, b.y.scale(&lambda));
        out.push(lambda);
    }
    out.sort();
    Ok(out)
}

/// The three invariant subspaces of the restriction to a product Levi
/// GL_{n1} x GL_{n2}: the off-diagonal block (dim n1 n2) and the two
/// symmetric diagonal blocks (dims n_i (n_i + 1)/2).
#[derive(Clone, Debug, Serialize)]
pub struct LeviBlocks {
    pub n1: usize,
    pub n2: usize,
    pub dims: (usize, usize, usize),
    #[serde(skip)]
    pub off_diagonal: Vec<SymNilpotent>,
    #[serde(skip)]
    pub upper_sym: Vec<SymNilpotent>,
    #[serde(skip)]
    pub lower_sym: Vec<SymNilpotent>,
}

pub fn levi_restriction_blocks(n1: usize, n2: usize) -> LeviBlocks {
    assert!(n1 >= 1 && n2 >= 1);
    let n = n1 + n2;
    let mut off = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for b in SymNilpotent::basis(n) {
        // classify by the support of the defining (i, j)
        let mut support_upper = false;
        let mut support_lower = false;
        let mut support_off = false;
        for i in 0..n {
            for j in 0..n {
                if b.y[(i, j)].is_zero() {
                    continue;
                }
                match (i < n1, j < n1) {
                    (true, true) => support_upper = true,
                    (false, false) => support_lower = true,
                    _ => support_off = true,
                }
            }
        }
        match (support_upper, support_off, support_lower) {
            (true, false, false) => upper.push(b),
            (false, true, false) => off.push(b),
            (false, false, true) => lower.push(b),
            _ => unreachable!("basis elements have pure block support"),
        }
    }
    LeviBlocks {
        n1,
        n2,
        dims: (off.len(), upper.len(), lower.len()),
        off_diagonal: off,
        upper_sym: upper,
        lower_sym: lower,
    }
}

/// Whether a subspace (spanned by `basis`) is invariant under Ad(m).
pub fn subspace_invariant(m: &GSpElt, basis: &[SymNilpotent]) -> bool {
    // basis elements are E-supported; the image must have support inside the
    // union of supports of the basis
    let n = m.n;
    let mut support = vec![vec![false; n]; n];
    for b in basis {
        for i in 0..n {
            for j in 0..n {
                if !b.y[(i, j)].is_zero() {
                    support[i][j] = true;
                }
            }
        }
    }
    for b in basis {
        let image = adjoint_action(m, b);
        for i in 0..n {
            for j in 0..n {
                if !image.y[(i, j)].is_zero() && !support[i][j] {
                    return false;
                }
            }
        }
    }
    true
}
