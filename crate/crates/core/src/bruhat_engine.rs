//! Closed-form decomposition w_0^{-1} n = m n' nbar in SO(2n+1) for canonical
//! unipotent-radical representatives, the det(Y) and a(g) formulas, u_n
//! extraction, the GL_n big-cell factorization with its torus coordinates,
//! and the twisted centralizer.

use crate::exact::{Mat, MPoly, Rat};
use crate::orbit_measure::CanonicalRep;
use crate::so_realization::{
    embed_levi, embed_lower, embed_upper, j_prime, weyl_representatives, NParam, NbarParam,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BruhatError {
    #[error("all a_i must be nonzero")]
    ZeroCoordinate,
    #[error("decomposition condition ({0}) failed")]
    Condition(String),
    #[error("lower-left corner minor {index} vanishes: not in the big cell")]
    VanishingMinor { index: usize },
    #[error("det(g) = {det} is not a square in Q")]
    NonSquareDet { det: String },
    #[error("symbolic mode is guarded at n <= {max}, got n = {n}")]
    SymbolicGuard { n: usize, max: usize },
    #[error("symbolic elimination stalled with {remaining} variable(s) left")]
    EliminationStalled { remaining: usize },
    #[error(transparent)]
    So(#[from] crate::so_realization::SoError),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
}

/// Y(a_1..a_n): tridiagonal with superdiagonal a_1..a_{n-1}, negated
/// subdiagonal, and corner entry -a_n^2/2.
pub fn y_matrix(a: &[Rat]) -> Mat<Rat> {
    let n = a.len();
    let mut y = Mat::zero(n, n);
    for i in 0..n - 1 {
        y[(i, i + 1)] = a[i].clone();
        y[(i + 1, i)] = -&a[i];
    }
    y[(n - 1, n - 1)] = -&(&(&a[n - 1] * &a[n - 1]) * &Rat::new(1, 2));
    y
}

/// alpha = (0, .., 0, a_n)^t.
pub fn alpha_column(a: &[Rat]) -> Vec<Rat> {
    let n = a.len();
    let mut v = vec![Rat::zero(); n];
    v[n - 1] = a[n - 1].clone();
    v
}

/// Closed forms for det Y: -1/2 prod_{k odd} a_k^2 for odd n,
/// prod_{k odd} a_k^2 for even n (k is 1-based).
pub fn det_y_closed_form(a: &[Rat]) -> Rat {
    let n = a.len();
    let mut prod = Rat::one();
    for k in (1..=n).step_by(2) {
        prod *= &(&a[k - 1] * &a[k - 1]);
    }
    if n % 2 == 1 {
        prod * Rat::new(-1, 2)
    } else {
        prod
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct YReport {
    pub det: Rat,
    /// det of the leading principal (n-1)-minor
    pub det_leading_minor: Rat,
    /// closed form asserted for odd n; for even n the honest value is
    /// prod_{k odd} a_k^2 (no -1/2 factor)
    pub closed_form_matches: bool,
    /// det Y_{n-1} = prod_{k odd, k != n} a_k^2 for odd n, 0 for even n
    pub minor_form_matches: bool,
}

/// Y(a) with its determinant and the closed-form checks. The defining
/// constraint Y + tY + alpha t(alpha) = 0 is verified on the way.
pub fn y_matrix_and_det(rep: &CanonicalRep) -> Result<(Mat<Rat>, YReport), BruhatError> {
    let a = &rep.a;
    if a.iter().any(Rat::is_zero) {
        return Err(BruhatError::ZeroCoordinate);
    }
    let n = a.len();
    let y = y_matrix(a);
    let alpha = alpha_column(a);
    let mut aat = Mat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            aat[(i, j)] = &alpha[i] * &alpha[j];
        }
    }
    debug_assert_eq!(
        y.add_mat(&y.transpose()).add_mat(&aat),
        Mat::zero(n, n),
        "Y + tY + alpha t(alpha) = 0"
    );
    let det = y.det_bareiss()?;
    let det_leading_minor = if n == 1 {
        Rat::one()
    } else {
        y.submatrix(0, 0, n - 1, n - 1).det_bareiss()?
    };
    let mut odd_prod_skip_n = Rat::one();
    for k in (1..=n).step_by(2) {
        if k != n {
            odd_prod_skip_n *= &(&a[k - 1] * &a[k - 1]);
        }
    }
    let minor_expected = if n % 2 == 1 {
        odd_prod_skip_n
    } else {
        Rat::zero()
    };
    let report = YReport {
        closed_form_matches: det == det_y_closed_form(a),
        minor_form_matches: det_leading_minor == minor_expected,
        det,
        det_leading_minor,
    };
    Ok((y, report))
}

/// The parts of w_0^{-1} n = m(g) n' nbar, together with the GSpin scalar.
#[derive(Clone, Debug)]
pub struct BruhatParts {
    pub n: usize,
    pub g: Mat<Rat>,
    pub a_g: Rat,
    pub beta: Vec<Rat>,
    pub y_prime: Mat<Rat>,
    pub gamma_prime: Vec<Rat>,
    pub z_prime: Mat<Rat>,
    pub xtilde: Mat<Rat>,
    pub alpha: Vec<Rat>,
    pub x: Mat<Rat>,
    pub y: Mat<Rat>,
}

/// Outcome of checking the block conditions (1)-(9) and (i)-(iii); each is
/// evaluated independently from the stored parts.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConditionReport {
    pub holds: [bool; 9],
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    /// t(alpha) Y^{-1} alpha, which must be 0 (n even) / -2 (n odd)
    pub alpha_pairing: Rat,
}

impl ConditionReport {
    pub fn all(&self) -> bool {
        self.holds.iter().all(|&b| b) && self.i && self.ii && self.iii
    }
}

fn outer(u: &[Rat], v: &[Rat]) -> Mat<Rat> {
    let n = u.len();
    let mut m = Mat::zero(n, v.len());
    for i in 0..n {
        for j in 0..v.len() {
            m[(i, j)] = &u[i] * &v[j];
        }
    }
    m
}

fn row_vec(v: &[Rat]) -> Mat<Rat> {
    let mut m = Mat::zero(1, v.len());
    for (j, x) in v.iter().enumerate() {
        m[(0, j)] = x.clone();
    }
    m
}

fn col_vec(v: &[Rat]) -> Mat<Rat> {
    let mut m = Mat::zero(v.len(), 1);
    for (i, x) in v.iter().enumerate() {
        m[(i, 0)] = x.clone();
    }
    m
}

/// Evaluate the block conditions of the equality wt_0^{-1} n = m(gt) n' nbar,
/// where gt = J' tY^{-1} is the Levi part before the -1/2 twist. Conditions
/// are stated on the raw parts so they can be probed on inconsistent inputs.
#[allow(clippy::too_many_arguments)]
pub fn evaluate_conditions(
    n: usize,
    gt: &Mat<Rat>,
    beta: &[Rat],
    y_prime: &Mat<Rat>,
    gamma_prime: &[Rat],
    z_prime: &Mat<Rat>,
    x: &Mat<Rat>,
    alpha: &[Rat],
) -> Result<ConditionReport, BruhatError> {
    let jp = j_prime(n);
    let jpt = jp.transpose();
    let sgn = crate::exact::sign_pow(n as i64); // (-1)^n
    let sgn1 = crate::exact::sign_pow(n as i64 + 1); // (-1)^{n-1}
    let id = Mat::<Rat>::identity(n);
    let zero_col = Mat::<Rat>::zero(n, 1);

    let gt_inv_t = gt
        .inverse()?
        .ok_or(BruhatError::Condition("g singular".into()))?
        .transpose();
    let x_inv = x
        .inverse()?
        .ok_or(BruhatError::Condition("X singular".into()))?;

    // (1) I - (-1)^n beta t(gamma') + Y' tJ' Z' tJ' = 0
    let c1 = id
        .sub_mat(&outer(beta, gamma_prime).scale(&sgn))
        .add_mat(&y_prime.mul_mat(&jpt).mul_mat(z_prime).mul_mat(&jpt))
        == Mat::zero(n, n);
    // (2) beta + (-1)^n Y' tJ' gamma' = 0
    let c2 = col_vec(beta).add_mat(
        &y_prime
            .mul_mat(&jpt)
            .mul_mat(&col_vec(gamma_prime))
            .scale(&sgn),
    ) == zero_col;
    // (3) gt Y' = (-1)^{n-1} I  [the displayed right side reads I, which only
    // matches for odd n; see the finding emitted by the harness]
    let c3 = gt.mul_mat(y_prime) == id.scale(&sgn1);
    // (4) (-1)^{n-1} t(gamma') - t(beta) Z' tJ' = 0
    let c4 = row_vec(gamma_prime)
        .scale(&sgn1)
        .sub_mat(&row_vec(beta).mul_mat(z_prime).mul_mat(&jpt))
        == Mat::zero(1, n);
    // (5) 1 - (-1)^n t(beta) gamma' = (-1)^n
    let dot_bg = {
        let mut acc = Rat::zero();
        for i in 0..n {
            acc += &(&beta[i] * &gamma_prime[i]);
        }
        acc
    };
    let c5 = Rat::one() - &sgn * &dot_bg == sgn;
    // (6) (-1)^{n-1} t(alpha) J' = - t(beta) J'
    let c6 = row_vec(alpha).mul_mat(&jp).scale(&sgn1) == row_vec(beta).mul_mat(&jp).neg_mat();
    // (7) (-1)^{n-1} J' t(gt)^{-1} Z' tJ' = I
    let c7 = jp.mul_mat(&gt_inv_t).mul_mat(z_prime).mul_mat(&jpt).scale(&sgn1) == id;
    // (8) -J' t(gt)^{-1} gamma' = alpha
    let c8 = jp.mul_mat(&gt_inv_t).mul_mat(&col_vec(gamma_prime)).neg_mat() == col_vec(alpha);
    // (9) J' t(gt)^{-1} J'^{-1} = X
    let jp_inv = jp.inverse()?.expect("J' invertible");
    let c9 = jp.mul_mat(&gt_inv_t).mul_mat(&jp_inv) == *x;

    // (i) X tJ' + J' tX + alpha t(alpha) = 0
    let ci = x
        .mul_mat(&jpt)
        .add_mat(&jp.mul_mat(&x.transpose()))
        .add_mat(&outer(alpha, alpha))
        == Mat::zero(n, n);
    // (ii) t(alpha) Y^{-1} alpha = (-1)^n - 1, via Y = X tJ'
    let y = x.mul_mat(&jpt);
    let y_inv = y
        .inverse()?
        .ok_or(BruhatError::Condition("Y singular".into()))?;
    let pairing = {
        let v = y_inv.mul_vec(alpha);
        let mut acc = Rat::zero();
        for i in 0..n {
            acc += &(&alpha[i] * &v[i]);
        }
        acc
    };
    let cii = pairing == &sgn - &Rat::one();
    // (iii) I + alpha t(alpha) tX^{-1} J' + J' tX J' X^{-1} = 0
    let ciii = id
        .add_mat(&outer(alpha, alpha).mul_mat(&x_inv.transpose()).mul_mat(&jp))
        .add_mat(&jp.mul_mat(&x.transpose()).mul_mat(&jp).mul_mat(&x_inv))
        == Mat::zero(n, n);

    Ok(ConditionReport {
        holds: [c1, c2, c3, c4, c5, c6, c7, c8, c9],
        i: ci,
        ii: cii,
        iii: ciii,
        alpha_pairing: pairing,
    })
}

/// Condition (4'): (tJ' X - (-1)^{n-1} tX J') X^{-1} alpha = 0, evaluated on
/// raw (X, alpha).
pub fn condition_4prime(n: usize, x: &Mat<Rat>, alpha: &[Rat]) -> Result<bool, BruhatError> {
    let jp = j_prime(n);
    let x_inv = x
        .inverse()?
        .ok_or(BruhatError::Condition("X singular".into()))?;
    let sgn1 = crate::exact::sign_pow(n as i64 + 1);
    let m = jp
        .transpose()
        .mul_mat(x)
        .sub_mat(&x.transpose().mul_mat(&jp).scale(&sgn1));
    let v = m.mul_mat(&x_inv).mul_vec(alpha);
    Ok(v.iter().all(Rat::is_zero))
}

/// Closed-form parts of wt_0^{-1} n = m(gt) n' nbar for raw (X, alpha) with
/// det X != 0: gt = J' tX^{-1} J'^{-1}, beta = (-1)^n alpha,
/// Y' = J' tX J' (equal to the displayed J' tX J'^{-1} only for odd n),
/// gamma' = -tJ' X^{-1} alpha, Z' = tJ' X^{-1} J'^{-1}.
pub struct TildeParts {
    pub gt: Mat<Rat>,
    pub beta: Vec<Rat>,
    pub y_prime: Mat<Rat>,
    pub gamma_prime: Vec<Rat>,
    pub z_prime: Mat<Rat>,
}

pub fn tilde_parts(n: usize, x: &Mat<Rat>, alpha: &[Rat]) -> Result<TildeParts, BruhatError> {
    let jp = j_prime(n);
    let jpt = jp.transpose();
    let jp_inv = jp.inverse()?.expect("J' invertible");
    let x_inv = x
        .inverse()?
        .ok_or(BruhatError::Condition("X singular".into()))?;
    let sgn = crate::exact::sign_pow(n as i64);
    let gt = jp.mul_mat(&x_inv.transpose()).mul_mat(&jp_inv);
    let beta: Vec<Rat> = alpha.iter().map(|v| v * &sgn).collect();
    let y_prime = jp.mul_mat(&x.transpose()).mul_mat(&jp);
    let gamma_prime: Vec<Rat> = jpt
        .mul_mat(&x_inv)
        .mul_vec(alpha)
        .into_iter()
        .map(|v| -v)
        .collect();
    let z_prime = jpt.mul_mat(&x_inv).mul_mat(&jp_inv);
    Ok(TildeParts {
        gt,
        beta,
        y_prime,
        gamma_prime,
        z_prime,
    })
}

/// Full decomposition for a canonical representative: verifies the exact
/// SO(2n+1) identity w_0^{-1} n = m n' nbar and every condition, and returns
/// the parts (with g = -1/2 J' tY^{-1} and the GSpin scalar a(g)).
pub fn decompose_w0n(rep: &CanonicalRep) -> Result<BruhatParts, BruhatError> {
    let a = &rep.a;
    if a.iter().any(Rat::is_zero) {
        return Err(BruhatError::ZeroCoordinate);
    }
    let n = a.len();
    let jp = j_prime(n);
    let y = y_matrix(a);
    let alpha = alpha_column(a);
    let x = y.mul_mat(&jp); // X = Y J'
    let parts = tilde_parts(n, &x, &alpha)?;

    // conditions, evaluated independently
    let report = evaluate_conditions(
        n,
        &parts.gt,
        &parts.beta,
        &parts.y_prime,
        &parts.gamma_prime,
        &parts.z_prime,
        &x,
        &alpha,
    )?;
    for (k, ok) in report.holds.iter().enumerate() {
        if !ok {
            return Err(BruhatError::Condition(format!("{}", k + 1)));
        }
    }
    if !report.i {
        return Err(BruhatError::Condition("i".into()));
    }
    if !report.ii {
        return Err(BruhatError::Condition("ii".into()));
    }
    if !report.iii {
        return Err(BruhatError::Condition("iii".into()));
    }

    // assemble the SO matrices and verify the exact identity
    let g = parts.gt.scale(&Rat::new(-1, 2));
    let x_inv = x.inverse()?.expect("det X != 0 for canonical a");
    let nbar = NbarParam {
        xtilde: x_inv,
        alpha: alpha.clone(),
    };
    let z_for_nprime = skew_from_x(&parts.y_prime, &parts.beta);
    let nprime = NParam::new(z_for_nprime, parts.beta.clone())?;
    debug_assert_eq!(nprime.x_block(), parts.y_prime);

    let w0 = weyl_representatives(n).w_0;
    let nmat = embed_upper(&NParam::new(skew_from_x(&x, &alpha), alpha.clone())?)?;
    let lhs = w0.inverse().mul(&nmat);
    let rhs = embed_levi(n, &g)?
        .mul(&embed_upper(&nprime)?)
        .mul(&embed_lower(&nbar)?);
    if lhs != rhs {
        return Err(BruhatError::Condition("identity".into()));
    }

    let a_g = a_of_g(&g)?;
    Ok(BruhatParts {
        n,
        g,
        a_g,
        beta: parts.beta,
        y_prime: parts.y_prime,
        gamma_prime: parts.gamma_prime,
        z_prime: parts.z_prime,
        xtilde: nbar.xtilde,
        alpha,
        x,
        y,
    })
}

/// Recover the skew coordinate Z = X tJ' + alpha t(alpha)/2 from an X-block.
fn skew_from_x(x: &Mat<Rat>, alpha: &[Rat]) -> Mat<Rat> {
    let n = x.rows;
    let jp = j_prime(n);
    let mut half_aat = Mat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            half_aat[(i, j)] = &(&alpha[i] * &alpha[j]) * &Rat::new(1, 2);
        }
    }
    x.mul_mat(&jp.transpose()).add_mat(&half_aat)
}

/// The GSpin scalar: the positive square root of det(g)^{-1}, defined by
/// det(g) a(g)^2 = 1. Errors when det(g) is not a square in Q.
pub fn a_of_g(g: &Mat<Rat>) -> Result<Rat, BruhatError> {
    let det = g.det_bareiss()?;
    if det.is_zero() {
        return Err(BruhatError::NonSquareDet {
            det: det.to_string(),
        });
    }
    match det.inv().sqrt_exact() {
        Some(r) => Ok(r),
        None => Err(BruhatError::NonSquareDet {
            det: det.to_string(),
        }),
    }
}

/// u_n = the alpha_n-coordinate of w_0 nbar w_0^{-1}, extracted from the
/// matrix, together with the closed form 1/2 (det Y)^{-1} prod a_i and the
/// adjugate identity X*_{n,n} = (-1)^{n-1} prod_{i<n} a_i.
#[derive(Clone, Debug, Serialize)]
pub struct UAlphaReport {
    pub u_n: Rat,
    pub closed_form_matches: bool,
    pub adjugate_matches: bool,
}

pub fn u_alpha_n(rep: &CanonicalRep) -> Result<UAlphaReport, BruhatError> {
    let a = &rep.a;
    if a.iter().any(Rat::is_zero) {
        return Err(BruhatError::ZeroCoordinate);
    }
    let n = a.len();
    let jp = j_prime(n);
    let y = y_matrix(a);
    let alpha = alpha_column(a);
    let x = y.mul_mat(&jp);
    let x_inv = x.inverse()?.expect("invertible");
    let nbar = embed_lower(&NbarParam {
        xtilde: x_inv,
        alpha: alpha.clone(),
    })?;
    let w0 = weyl_representatives(n).w_0;
    let conj = w0.mul(&nbar).mul(&w0.inverse());
    // upper-unipotent: the alpha-column sits at block (1..n, n); u_n is its
    // last entry
    let u_n = conj.mat[(n - 1, n)].clone();

    let det_y = y.det_bareiss()?;
    let mut prod = Rat::one();
    for ai in a {
        prod *= ai;
    }
    let closed = &(&Rat::new(1, 2) * &det_y.inv()) * &prod;

    // adjugate check
    let adj = x.adjugate();
    let mut prod_head = Rat::one();
    for ai in &a[..n - 1] {
        prod_head *= ai;
    }
    let adj_expected = &crate::exact::sign_pow(n as i64 + 1) * &prod_head;
    Ok(UAlphaReport {
        closed_form_matches: u_n == closed,
        adjugate_matches: adj[(n - 1, n - 1)] == adj_expected,
        u_n,
    })
}

/// Big-cell factorization g = u1 * wG * d * u2 with wG = J'.
#[derive(Clone, Debug, PartialEq)]
pub struct GLBigCell {
    pub u1: Mat<Rat>,
    pub d: Vec<Rat>,
    pub u2: Mat<Rat>,
}

/// Factor g through the big cell: rotate by wG^{-1} and take the exact LDU
/// decomposition. The leading minors of wG^{-1} g are (up to sign) the
/// lower-left corner minors of g; a vanishing one is reported by index.
pub fn gl_big_cell(g: &Mat<Rat>) -> Result<GLBigCell, BruhatError> {
    assert!(g.is_square());
    let n = g.rows;
    let jp = j_prime(n);
    let jp_inv = jp.inverse()?.expect("J' invertible");
    let gt = jp_inv.mul_mat(g);
    // LDU of gt without pivoting
    let mut m = gt.clone();
    let mut l = Mat::<Rat>::identity(n);
    for c in 0..n {
        if m[(c, c)].is_zero() {
            return Err(BruhatError::VanishingMinor { index: c + 1 });
        }
        let pinv = m[(c, c)].inv();
        for r in c + 1..n {
            if m[(r, c)].is_zero() {
                continue;
            }
            let f = &m[(r, c)] * &pinv;
            l[(r, c)] = f.clone();
            for j in 0..n {
                let t = &m[(c, j)] * &f;
                m[(r, j)] = &m[(r, j)] - &t;
            }
        }
    }
    let d: Vec<Rat> = (0..n).map(|i| m[(i, i)].clone()).collect();
    let mut u2 = Mat::<Rat>::identity(n);
    for i in 0..n {
        let di = d[i].inv();
        for j in i + 1..n {
            u2[(i, j)] = &m[(i, j)] * &di;
        }
    }
    let u1 = jp.mul_mat(&l).mul_mat(&jp_inv);
    debug_assert!(u1.is_upper_unipotent());
    // exact reconstruction
    let mut dm = Mat::<Rat>::zero(n, n);
    for i in 0..n {
        dm[(i, i)] = d[i].clone();
    }
    debug_assert_eq!(u1.mul_mat(&jp).mul_mat(&dm).mul_mat(&u2), *g);
    Ok(GLBigCell { u1, d, u2 })
}

/// Torus coordinates of g = -1/2 J' tY^{-1} via the big cell, with the
/// oracle-certified closed forms:
///   d_i d_{i+1} = 1 / (4 a_i^2) for i < n,
///   d_n = 1 / a_n^2 for every n,
///   d_1 = prod_even a_j^2 / prod_odd a_k^2, divided by 4 when n is even.
/// For odd n these agree with the displayed formulas; the even-n displayed
/// d_1 and d_n are off by a factor 4 each (reported as a finding upstream).
#[derive(Clone, Debug, Serialize)]
pub struct TorusCoords {
    pub d: Vec<Rat>,
    pub relations_hold: bool,
    pub d1_matches: bool,
    pub dn_matches: bool,
    /// whether the displayed parity-split d_1, d_n values also hold
    pub displayed_d1_matches: bool,
    pub displayed_dn_matches: bool,
}

pub fn torus_coordinates(rep: &CanonicalRep) -> Result<TorusCoords, BruhatError> {
    let a = &rep.a;
    if a.iter().any(Rat::is_zero) {
        return Err(BruhatError::ZeroCoordinate);
    }
    let n = a.len();
    let y = y_matrix(a);
    let jp = j_prime(n);
    let g = jp
        .mul_mat(&y.inverse()?.expect("invertible").transpose())
        .scale(&Rat::new(-1, 2));
    let cell = gl_big_cell(&g)?;
    let d = cell.d;

    let quarter = Rat::new(1, 4);
    let relations_hold = (0..n - 1).all(|i| {
        &d[i] * &d[i + 1] == &quarter / &(&a[i] * &a[i])
    });

    let an2 = &a[n - 1] * &a[n - 1];
    let dn_expected = an2.inv();
    let dn_matches = d[n - 1] == dn_expected;
    let displayed_dn = if n % 2 == 0 {
        &quarter * &an2.inv()
    } else {
        an2.inv()
    };
    let displayed_dn_matches = d[n - 1] == displayed_dn;

    let mut even_prod = Rat::one();
    let mut odd_prod = Rat::one();
    for k in 1..=n {
        let sq = &a[k - 1] * &a[k - 1];
        if k % 2 == 0 {
            even_prod *= &sq;
        } else {
            odd_prod *= &sq;
        }
    }
    let displayed_d1 = &even_prod / &odd_prod;
    let d1_expected = if n % 2 == 0 {
        &displayed_d1 * &quarter
    } else {
        displayed_d1.clone()
    };
    Ok(TorusCoords {
        d1_matches: d[0] == d1_expected,
        dn_matches,
        displayed_d1_matches: d[0] == displayed_d1,
        displayed_dn_matches,
        relations_hold,
        d,
    })
}

/// Twisted-centralizer membership: tu wG^{-1} g u = wG^{-1} g with wG = J'.
pub fn twisted_centralizer_member(g: &Mat<Rat>, u: &Mat<Rat>) -> Result<bool, BruhatError> {
    let n = g.rows;
    let jp_inv = j_prime(n).inverse()?.expect("J' invertible");
    let m = jp_inv.mul_mat(g);
    Ok(u.transpose().mul_mat(&m).mul_mat(u) == m)
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerVerdict {
    pub n: usize,
    pub mode: String,
    pub trivial: bool,
    pub trials: usize,
}

/// Randomized non-membership: sample nontrivial unipotents and check none
/// satisfies the membership predicate.
pub fn twisted_centralizer_randomized(
    rep: &CanonicalRep,
    samples: usize,
    rng: &mut impl rand::Rng,
) -> Result<CentralizerVerdict, BruhatError> {
    let a = &rep.a;
    let n = a.len();
    let y = y_matrix(a);
    let jp = j_prime(n);
    let g = jp
        .mul_mat(&y.inverse()?.expect("invertible").transpose())
        .scale(&Rat::new(-1, 2));
    let mut trivial = true;
    for _ in 0..samples {
        let u = loop {
            let u = Mat::random_unipotent(rng, n, 10);
            if !u.is_identity() {
                break u;
            }
        };
        if twisted_centralizer_member(&g, &u)? {
            trivial = false;
        }
    }
    Ok(CentralizerVerdict {
        n,
        mode: "randomized".into(),
        trivial,
        trials: samples,
    })
}

/// Symbolic triviality for generic symbolic a (n <= 3): the membership system
/// tu A u = A with A = t(adj Y) (denominators cleared by det Y != 0) is
/// solved by successive elimination of single-variable monomial equations;
/// the unique solution is u = I.
pub fn twisted_centralizer_symbolic(n: usize, max_n: usize) -> Result<CentralizerVerdict, BruhatError> {
    if n > max_n || n > 3 {
        return Err(BruhatError::SymbolicGuard { n, max: max_n.min(3) });
    }
    // variables: u-coordinates x_{ij} (i<j), then a_1..a_n
    let nu = n * (n - 1) / 2;
    let nvars = nu + n;
    let mut var_of = vec![vec![usize::MAX; n]; n];
    let mut next = 0;
    let mut u_vars = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            var_of[i][j] = next;
            u_vars.push(next);
            next += 1;
        }
    }
    let a_var = |i: usize| MPoly::var(nvars, nu + i);
    // symbolic Y
    let mut y: Mat<MPoly> = Mat::zero(n, n);
    for i in 0..n - 1 {
        y[(i, i + 1)] = a_var(i);
        y[(i + 1, i)] = a_var(i).neg();
    }
    y[(n - 1, n - 1)] = a_var(n - 1)
        .mul(&a_var(n - 1))
        .scale(&Rat::new(-1, 2));
    // A = adj(tY); membership <=> tu A u = A since wG^{-1} g = -1/2 tY^{-1}
    // and the -1/(2 det Y) scalar cancels.
    let adj = poly_adjugate(&y.transpose());
    let mut u: Mat<MPoly> = Mat::zero(n, n);
    for i in 0..n {
        u[(i, i)] = MPoly::one(nvars);
    }
    for i in 0..n {
        for j in i + 1..n {
            u[(i, j)] = MPoly::var(nvars, var_of[i][j]);
        }
    }
    let diff = u.transpose().mul_mat(&adj).mul_mat(&u).sub_mat(&adj);
    let mut eqs: Vec<MPoly> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !diff[(i, j)].is_zero() {
                eqs.push(diff[(i, j)].clone());
            }
        }
    }
    // successive elimination: an equation that is a single monomial involving
    // exactly one u-variable forces that variable to vanish (the a_i are
    // units for generic a)
    let mut pinned = vec![false; nvars];
    let mut remaining = nu;
    loop {
        let mut progress = false;
        for eq in eqs.iter() {
            if let Some(v) = eq.single_var_term(&u_vars) {
                if !pinned[v] {
                    pinned[v] = true;
                    remaining -= 1;
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
        eqs = eqs
            .iter()
            .map(|e| {
                let mut out = e.clone();
                for (v, &p) in pinned.iter().enumerate() {
                    if p {
                        out = out.subst_const(v, &Rat::zero());
                    }
                }
                out
            })
            .filter(|e| !e.is_zero())
            .collect();
        if remaining == 0 {
            break;
        }
    }
    if remaining > 0 {
        return Err(BruhatError::EliminationStalled { remaining });
    }
    // all u-variables forced to 0 and the residual system is empty
    let trivial = eqs.is_empty();
    Ok(CentralizerVerdict {
        n,
        mode: "symbolic".into(),
        trivial,
        trials: 0,
    })
}

/// Adjugate over polynomial entries by minor expansion.
fn poly_adjugate(m: &Mat<MPoly>) -> Mat<MPoly> {
    let n = m.rows;
    if n == 1 {
        let one = MPoly::one(match m[(0, 0)].nvars {
            0 => 0,
            k => k,
        });
        return Mat::from_rows(vec![vec![one]]);
    }
    let mut adj: Mat<MPoly> = Mat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut minor: Mat<MPoly> = Mat::zero(n - 1, n - 1);
            let mut r = 0;
            for ii in 0..n {
                if ii == i {
                    continue;
                }
                let mut c = 0;
                for jj in 0..n {
                    if jj == j {
                        continue;
                    }
                    minor[(r, c)] = m[(ii, jj)].clone();
                    c += 1;
                }
                r += 1;
            }
            let cof = minor.det_minor_expansion();
            adj[(j, i)] = if (i + j) % 2 == 0 { cof } else { cof.neg() };
        }
    }
    adj
}

/// Levi part of the decomposition directly from a: g = -1/2 J' tY^{-1}.
pub fn levi_g(rep: &CanonicalRep) -> Result<Mat<Rat>, BruhatError> {
    if rep.a.iter().any(Rat::is_zero) {
        return Err(BruhatError::ZeroCoordinate);
    }
    let n = rep.n();
    let y = y_matrix(&rep.a);
    Ok(j_prime(n)
        .mul_mat(&y.inverse()?.expect("invertible").transpose())
        .scale(&Rat::new(-1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rep(vals: &[i64]) -> CanonicalRep {
        CanonicalRep::new(vals.iter().map(|&v| Rat::from_int(v)).collect()).unwrap()
    }

    #[test]
    fn y_det_examples() {
        // a = (1,1,1): det = -1/2
        let (_, r) = y_matrix_and_det(&rep(&[1, 1, 1])).unwrap();
        assert_eq!(r.det, Rat::new(-1, 2));
        assert!(r.closed_form_matches);
        assert!(r.minor_form_matches);
        // a = (1,1): det of [[0,1],[-1,-1/2]] = 1
        let (_, r) = y_matrix_and_det(&rep(&[1, 1])).unwrap();
        assert_eq!(r.det, Rat::one());
        // a = (1,2,3,4,5): det = -1/2 * (1 * 9 * 25) = -225/2
        let (_, r) = y_matrix_and_det(&rep(&[1, 2, 3, 4, 5])).unwrap();
        assert_eq!(r.det, Rat::new(-225, 2));
        assert!(r.closed_form_matches);
    }

    #[test]
    fn y_closed_forms_random() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(61);
        for n in 1..=7 {
            for _ in 0..30 {
                let r = CanonicalRep::random(&mut rng, n, 9);
                let (_, rep) = y_matrix_and_det(&r).unwrap();
                assert!(!rep.det.is_zero());
                assert!(rep.closed_form_matches, "n={n}");
                assert!(rep.minor_form_matches, "n={n}");
            }
        }
    }

    #[test]
    fn zero_coordinate_rejected() {
        let bad = CanonicalRep {
            a: vec![Rat::one(), Rat::zero()],
        };
        assert!(matches!(
            y_matrix_and_det(&bad),
            Err(BruhatError::ZeroCoordinate)
        ));
    }

    #[test]
    fn decompose_g_example_n2() {
        // a = (1,1): g = [[1/2, 0], [-1/4, 1/2]]
        let parts = decompose_w0n(&rep(&[1, 1])).unwrap();
        assert_eq!(
            parts.g,
            Mat::from_rows(vec![
                vec![Rat::new(1, 2), Rat::zero()],
                vec![Rat::new(-1, 4), Rat::new(1, 2)],
            ])
        );
    }

    #[test]
    fn alpha_pairing_parity() {
        // n odd: t(alpha) Y^{-1} alpha = -2; n even: 0
        let p3 = decompose_w0n(&rep(&[1, 1, 1])).unwrap();
        let y_inv = p3.y.inverse().unwrap().unwrap();
        let v = y_inv.mul_vec(&p3.alpha);
        let mut acc = Rat::zero();
        for i in 0..3 {
            acc += &(&p3.alpha[i] * &v[i]);
        }
        assert_eq!(acc, Rat::from_int(-2));

        let p2 = decompose_w0n(&rep(&[1, 1])).unwrap();
        let y_inv = p2.y.inverse().unwrap().unwrap();
        let v = y_inv.mul_vec(&p2.alpha);
        let mut acc = Rat::zero();
        for i in 0..2 {
            acc += &(&p2.alpha[i] * &v[i]);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn decompose_random_all_conditions() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(71);
        for n in 1..=5 {
            for _ in 0..15 {
                let r = CanonicalRep::random(&mut rng, n, 8);
                let parts = decompose_w0n(&r).unwrap();
                // beta = (-1)^n alpha
                let sgn = crate::exact::sign_pow(n as i64);
                for i in 0..n {
                    assert_eq!(parts.beta[i], &parts.alpha[i] * &sgn);
                }
                // Y' = J' tX J'
                let jp = j_prime(n);
                assert_eq!(
                    parts.y_prime,
                    jp.mul_mat(&parts.x.transpose()).mul_mat(&jp)
                );
                // a(g)^2 det(g) = 1
                let det = parts.g.det_bareiss().unwrap();
                assert!((&(&parts.a_g * &parts.a_g) * &det).is_one());
            }
        }
    }

    #[test]
    fn condition_equivalences_on_raw_inputs() {
        // (2) <=> (4') <=> (4) with parts built by the closed forms from raw
        // (X, alpha) not satisfying the membership constraint (i); and
        // (i) & (ii) => (4') on honest N-coordinates.
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(73);
        for n in 2..=4 {
            let mut seen_false = 0;
            for _ in 0..60 {
                let x = Mat::random_int(&mut rng, n, n, 6);
                if x.det_bareiss().unwrap().is_zero() {
                    continue;
                }
                let alpha: Vec<Rat> = (0..n).map(|_| Rat::random_int(&mut rng, 6)).collect();
                let parts = tilde_parts(n, &x, &alpha).unwrap();
                let rep = evaluate_conditions(
                    n,
                    &parts.gt,
                    &parts.beta,
                    &parts.y_prime,
                    &parts.gamma_prime,
                    &parts.z_prime,
                    &x,
                    &alpha,
                )
                .unwrap();
                let c4p = condition_4prime(n, &x, &alpha).unwrap();
                assert_eq!(rep.holds[1], c4p, "(2) <=> (4')");
                assert_eq!(rep.holds[3], c4p, "(4) <=> (4')");
                if !c4p {
                    seen_false += 1;
                }
            }
            assert!(seen_false > 0, "equivalence must be probed on both truth values");
        }

        // (i) & (ii) => (4'): draw genuine N-coordinates with invertible X
        for n in 2..=4 {
            let mut rng2 = rand_chacha::ChaCha12Rng::seed_from_u64(173 + n as u64);
            let mut done = 0;
            while done < 30 {
                let mut z = Mat::<Rat>::zero(n, n);
                for i in 0..n {
                    for j in i + 1..n {
                        let v = Rat::random_int(&mut rng2, 6);
                        z[(i, j)] = v.clone();
                        z[(j, i)] = -v;
                    }
                }
                let alpha: Vec<Rat> = (0..n).map(|_| Rat::random_int(&mut rng2, 6)).collect();
                let p = NParam::new(z, alpha.clone()).unwrap();
                let x = p.x_block();
                if x.det_bareiss().unwrap().is_zero() {
                    continue;
                }
                done += 1;
                // (i) holds by construction; (ii) holds on the generic orbit
                assert!(condition_4prime(n, &x, &alpha).unwrap());
            }
        }
    }

    #[test]
    fn a_g_examples() {
        // n=2, a=(1,1): det g = 1/4, a(g) = 2
        let g = levi_g(&rep(&[1, 1])).unwrap();
        assert_eq!(g.det_bareiss().unwrap(), Rat::new(1, 4));
        assert_eq!(a_of_g(&g).unwrap(), Rat::from_int(2));
        // depends only on odd-index a_k
        let g = levi_g(&rep(&[1, 2])).unwrap();
        assert_eq!(g.det_bareiss().unwrap(), Rat::new(1, 4));
        assert_eq!(a_of_g(&g).unwrap(), Rat::from_int(2));
        // det 1 -> a(g) = 1
        assert_eq!(a_of_g(&Mat::identity(3)).unwrap(), Rat::one());
        // non-square rejected
        let m = Mat::from_i64_rows(&[&[2]]);
        assert!(matches!(a_of_g(&m), Err(BruhatError::NonSquareDet { .. })));
    }

    #[test]
    fn u_n_examples() {
        // n=2, a=(1,1): u_n = 1/2
        let r = u_alpha_n(&rep(&[1, 1])).unwrap();
        assert_eq!(r.u_n, Rat::new(1, 2));
        assert!(r.closed_form_matches);
        // n=3, a=(1,1,1): u_n = -1
        let r = u_alpha_n(&rep(&[1, 1, 1])).unwrap();
        assert_eq!(r.u_n, Rat::from_int(-1));
        assert!(r.closed_form_matches);
    }

    #[test]
    fn u_n_random_and_adjugate() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(81);
        for n in 2..=6 {
            for _ in 0..20 {
                let r = CanonicalRep::random(&mut rng, n, 7);
                let rep = u_alpha_n(&r).unwrap();
                assert!(rep.closed_form_matches, "n={n}");
                assert!(rep.adjugate_matches, "n={n}");
            }
        }
    }

    #[test]
    fn big_cell_examples() {
        // g = J' -> (I, 1-diag, I)
        let jp = j_prime(3);
        let cell = gl_big_cell(&jp).unwrap();
        assert!(cell.u1.is_identity());
        assert!(cell.u2.is_identity());
        assert!(cell.d.iter().all(Rat::is_one));
        // n=2, g=[[1,1],[1,2]]
        let g = Mat::from_i64_rows(&[&[1, 1], &[1, 2]]);
        let cell = gl_big_cell(&g).unwrap();
        assert_eq!(cell.u1, Mat::from_i64_rows(&[&[1, 1], &[0, 1]]));
        assert_eq!(cell.d, vec![Rat::from_int(-1), Rat::from_int(-1)]);
        assert_eq!(cell.u2, Mat::from_i64_rows(&[&[1, 2], &[0, 1]]));
    }

    #[test]
    fn big_cell_round_trip_random() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(91);
        let n = 4;
        let jp = j_prime(n);
        let mut done = 0;
        while done < 100 {
            let g = Mat::random_int(&mut rng, n, n, 9);
            match gl_big_cell(&g) {
                Ok(cell) => {
                    done += 1;
                    let mut dm = Mat::<Rat>::zero(n, n);
                    for i in 0..n {
                        dm[(i, i)] = cell.d[i].clone();
                    }
                    assert_eq!(cell.u1.mul_mat(&jp).mul_mat(&dm).mul_mat(&cell.u2), g);
                    assert!(cell.u1.is_upper_unipotent());
                    assert!(cell.u2.is_upper_unipotent());
                }
                Err(BruhatError::VanishingMinor { .. }) => continue,
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn big_cell_failure_index() {
        // zero matrix has a vanishing first corner minor
        let g = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        // lower-left entry is 0
        assert_eq!(
            gl_big_cell(&g).unwrap_err(),
            BruhatError::VanishingMinor { index: 1 }
        );
    }

    #[test]
    fn torus_coordinate_values() {
        // honest big-cell values; the displayed even-n variants differ by 4
        let t = torus_coordinates(&rep(&[1, 1])).unwrap();
        assert_eq!(t.d, vec![Rat::new(1, 4), Rat::one()]);
        assert!(t.relations_hold && t.d1_matches && t.dn_matches);
        assert!(!t.displayed_d1_matches && !t.displayed_dn_matches);

        let t = torus_coordinates(&rep(&[1, 2])).unwrap();
        assert_eq!(t.d, vec![Rat::one(), Rat::new(1, 4)]);
        assert_eq!(&t.d[0] * &t.d[1], Rat::new(1, 4));

        let t = torus_coordinates(&rep(&[1, 1, 1])).unwrap();
        assert_eq!(t.d, vec![Rat::one(), Rat::new(1, 4), Rat::one()]);
        assert!(t.displayed_d1_matches && t.displayed_dn_matches);
    }

    #[test]
    fn torus_relations_random() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(101);
        for n in 2..=6 {
            for _ in 0..25 {
                let r = CanonicalRep::random(&mut rng, n, 8);
                let t = torus_coordinates(&r).unwrap();
                assert!(t.relations_hold, "n={n}");
                assert!(t.d1_matches && t.dn_matches, "n={n}");
                if n % 2 == 1 {
                    assert!(t.displayed_d1_matches && t.displayed_dn_matches);
                } else {
                    assert!(!t.displayed_d1_matches && !t.displayed_dn_matches);
                }
            }
        }
    }

    #[test]
    fn torus_center_scaling_covariance() {
        // a -> (t^2 a_1, .., t^2 a_{n-1}, t a_n) scales every d_i by t^{-2}
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(111);
        for n in 2..=5 {
            for _ in 0..10 {
                let r = CanonicalRep::random(&mut rng, n, 6);
                let t = Rat::random_nonzero_int(&mut rng, 5);
                let t2 = &t * &t;
                let mut scaled = r.a.clone();
                for x in scaled.iter_mut().take(n - 1) {
                    *x = &*x * &t2;
                }
                scaled[n - 1] = &scaled[n - 1] * &t;
                let d0 = torus_coordinates(&r).unwrap().d;
                let d1 = torus_coordinates(&CanonicalRep { a: scaled }).unwrap().d;
                for i in 0..n {
                    assert_eq!(d1[i], &d0[i] / &t2, "n={n} i={i}");
                }
            }
        }
    }

    #[test]
    fn centralizer_identity_is_member() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(121);
        for n in 2..=4 {
            let r = CanonicalRep::random(&mut rng, n, 6);
            let g = levi_g(&r).unwrap();
            assert!(twisted_centralizer_member(&g, &Mat::identity(n)).unwrap());
        }
    }

    #[test]
    fn centralizer_symbolic_small_n() {
        for n in 2..=3 {
            let v = twisted_centralizer_symbolic(n, 3).unwrap();
            assert!(v.trivial, "n={n}");
        }
        assert!(matches!(
            twisted_centralizer_symbolic(4, 3),
            Err(BruhatError::SymbolicGuard { .. })
        ));
    }

    #[test]
    fn centralizer_randomized() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(131);
        let r = rep(&[1, 2, 3, 4]);
        let v = twisted_centralizer_randomized(&r, 1000, &mut rng).unwrap();
        assert!(v.trivial);
    }
}
