//! Root data for GSpin(2n+1), Spin(2n+1), SO(2n+1) and GL_n, the torus
//! embedding j of the Spin torus into the GSpin one, distinguished
//! (co)characters and signed-permutation Weyl elements.
//!
//! Characters and cocharacters are stored as coordinate vectors in the named
//! bases below; half-integral objects (rho, alpha-hat) are rational vectors.
//! The GL_1 factor of the Levi is kept as an explicit e0 coordinate rather
//! than quotiented away, since it carries the similitude-twist bookkeeping.

use crate::exact::{Mat, Rat};
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum DatumKind {
    /// GSpin(2n+1): char basis e0..en, coroot alpha_n^vee = 2e_n* - e0*.
    GSpinOdd,
    /// Spin(2n+1): char lattice = weight lattice of SO, cochar = coroot lattice.
    SpinOdd,
    /// SO(2n+1): char basis f1..fn, gamma_n^vee = 2f_n*.
    SoOdd,
    /// GL_n: type A_{n-1}.
    Gl,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootDataError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("spin torus embedding needs n >= 2")]
    EmbeddingRank,
}

/// A root datum in explicit coordinates: `pairing[i][j]` is the pairing of the
/// i-th character basis vector against the j-th cocharacter basis vector.
#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub kind: DatumKind,
    pub n: usize,
    /// lattice rank (n for so/spin/gl(n), n+1 for gspin)
    pub rank: usize,
    pub char_basis: Vec<String>,
    pub cochar_basis: Vec<String>,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub pairing: Vec<Vec<i64>>,
}

impl RootDatum {
    /// Pairing of a character vector against a cocharacter vector.
    pub fn pair(&self, chi: &[Rat], lam: &[Rat]) -> Rat {
        assert_eq!(chi.len(), self.rank);
        assert_eq!(lam.len(), self.rank);
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if self.pairing[i][j] != 0 {
                    acc += &(&(&chi[i] * &lam[j]) * &Rat::from_int(self.pairing[i][j]));
                }
            }
        }
        acc
    }

    pub fn pair_int(&self, chi: &[i64], lam: &[i64]) -> i64 {
        let c: Vec<Rat> = chi.iter().map(|&v| Rat::from_int(v)).collect();
        let l: Vec<Rat> = lam.iter().map(|&v| Rat::from_int(v)).collect();
        let r = self.pair(&c, &l);
        assert!(r.denom() == &num_bigint::BigInt::from(1));
        let s: String = r.numer().to_string();
        s.parse().unwrap()
    }

    /// The Cartan matrix <alpha_i, alpha_j^vee>.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple_roots
            .iter()
            .map(|a| {
                self.simple_coroots
                    .iter()
                    .map(|av| self.pair_int(a, av))
                    .collect()
            })
            .collect()
    }

    /// Expected Cartan matrix: type B_n for the odd-spin family, A_{n-1} for GL.
    pub fn expected_cartan(&self) -> Vec<Vec<i64>> {
        let m = self.simple_roots.len();
        let mut c = vec![vec![0i64; m]; m];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
            if i + 1 < m {
                row[i + 1] = -1;
            }
            if i > 0 {
                row[i - 1] = -1;
            }
        }
        if matches!(self.kind, DatumKind::GSpinOdd | DatumKind::SpinOdd | DatumKind::SoOdd) && m >= 2 {
            // alpha_{n-1} pairs to -2 against the short coroot alpha_n^vee
            c[m - 2][m - 1] = -2;
        }
        c
    }
}

/// Build the root datum of the requested group.
pub fn build_root_datum(kind: DatumKind, n: usize) -> Result<RootDatum, RootDataError> {
    if n == 0 {
        return Err(RootDataError::ZeroRank);
    }
    let datum = match kind {
        DatumKind::GSpinOdd => {
            // Basis e0, e1..en; dual e0*, e1*..en*; pairing is the identity.
            let rank = n + 1;
            let mut roots = Vec::new();
            let mut coroots = Vec::new();
            for i in 1..n {
                let mut a = vec![0i64; rank];
                a[i] = 1;
                a[i + 1] = -1;
                roots.push(a.clone());
                coroots.push(a);
            }
            let mut an = vec![0i64; rank];
            an[n] = 1;
            roots.push(an);
            let mut anv = vec![0i64; rank];
            anv[n] = 2;
            anv[0] = -1;
            coroots.push(anv);
            RootDatum {
                kind,
                n,
                rank,
                char_basis: (0..=n).map(|i| format!("e{i}")).collect(),
                cochar_basis: (0..=n).map(|i| format!("e{i}*")).collect(),
                simple_roots: roots,
                simple_coroots: coroots,
                pairing: identity_pairing(rank),
            }
        }
        DatumKind::SoOdd => {
            // Basis f1..fn; gamma_i = f_i - f_{i+1}, gamma_n = f_n;
            // gamma_n^vee = 2 f_n*.
            let rank = n;
            let mut roots = Vec::new();
            let mut coroots = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let mut a = vec![0i64; rank];
                a[i] = 1;
                a[i + 1] = -1;
                roots.push(a.clone());
                coroots.push(a);
            }
            let mut gn = vec![0i64; rank];
            gn[n - 1] = 1;
            roots.push(gn);
            let mut gnv = vec![0i64; rank];
            gnv[n - 1] = 2;
            coroots.push(gnv);
            RootDatum {
                kind,
                n,
                rank,
                char_basis: (1..=n).map(|i| format!("f{i}")).collect(),
                cochar_basis: (1..=n).map(|i| format!("f{i}*")).collect(),
                simple_roots: roots,
                simple_coroots: coroots,
                pairing: identity_pairing(rank),
            }
        }
        DatumKind::SpinOdd => {
            // Character basis f1,..,f_{n-1}, s with s = (f1+..+fn)/2, so
            // fn = 2s - f1 - .. - f_{n-1}. Cocharacter basis = the coroots
            // beta_1^vee..beta_n^vee themselves.
            // pairing[i][j] = <basis char i, beta_j^vee> with
            // beta_j^vee = f_j* - f_{j+1}* (j < n), beta_n^vee = 2 f_n*.
            let rank = n;
            let mut pairing = vec![vec![0i64; rank]; rank];
            // rows 0..n-2 are f_{i+1}; last row is s.
            for i in 0..n.saturating_sub(1) {
                for j in 0..n {
                    let fi = i + 1; // 1-based index of f
                    let val = if j + 1 < n {
                        // f_{j+1}* - f_{j+2}*
                        (if fi == j + 1 { 1 } else { 0 }) - (if fi == j + 2 { 1 } else { 0 })
                    } else {
                        // 2 f_n*
                        if fi == n {
                            2
                        } else {
                            0
                        }
                    };
                    pairing[i][j] = val;
                }
            }
            for j in 0..n {
                // <s, beta_j^vee> = half the coordinate sum of beta_j^vee in f*.
                pairing[n - 1][j] = if j + 1 < n { 0 } else { 1 };
            }
            // Roots beta_i = f_i - f_{i+1} and beta_n = f_n in the chosen basis.
            let f_in_basis = |i: usize| -> Vec<i64> {
                // 1-based f_i expressed in (f1..f_{n-1}, s)
                let mut v = vec![0i64; rank];
                if i < n {
                    v[i - 1] = 1;
                } else {
                    for x in v.iter_mut().take(n - 1) {
                        *x = -1;
                    }
                    v[n - 1] = 2;
                }
                v
            };
            let mut roots = Vec::new();
            for i in 1..n {
                let a: Vec<i64> = f_in_basis(i)
                    .iter()
                    .zip(f_in_basis(i + 1))
                    .map(|(x, y)| x - y)
                    .collect();
                roots.push(a);
            }
            roots.push(f_in_basis(n));
            // Coroots are the cocharacter basis vectors themselves.
            let coroots: Vec<Vec<i64>> = (0..n)
                .map(|j| {
                    let mut v = vec![0i64; rank];
                    v[j] = 1;
                    v
                })
                .collect();
            let mut char_basis: Vec<String> = (1..n).map(|i| format!("f{i}")).collect();
            char_basis.push("(f1+...+fn)/2".to_string());
            RootDatum {
                kind,
                n,
                rank,
                char_basis,
                cochar_basis: (1..=n).map(|i| format!("beta{i}*")).collect(),
                simple_roots: roots,
                simple_coroots: coroots,
                pairing,
            }
        }
        DatumKind::Gl => {
            let rank = n;
            let mut roots = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let mut a = vec![0i64; rank];
                a[i] = 1;
                a[i + 1] = -1;
                roots.push(a);
            }
            let coroots = roots.clone();
            RootDatum {
                kind,
                n,
                rank,
                char_basis: (1..=n).map(|i| format!("e{i}")).collect(),
                cochar_basis: (1..=n).map(|i| format!("e{i}*")).collect(),
                simple_roots: roots,
                simple_coroots: coroots,
                pairing: identity_pairing(rank),
            }
        }
    };
    Ok(datum)
}

fn identity_pairing(rank: usize) -> Vec<Vec<i64>> {
    let mut p = vec![vec![0i64; rank]; rank];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = 1;
    }
    p
}

/// An integer map between cocharacter lattices, columns = images of the source
/// basis vectors.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeMap {
    pub source: String,
    pub target: String,
    /// matrix[r][c]: coefficient of target basis vector r in the image of
    /// source basis vector c
    pub matrix: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let rows = self.matrix.len();
        let cols = self.matrix[0].len();
        assert_eq!(v.len(), cols);
        (0..rows)
            .map(|r| (0..cols).map(|c| self.matrix[r][c] * v[c]).sum())
            .collect()
    }

    pub fn compose(&self, inner: &LatticeMap) -> LatticeMap {
        let a = &self.matrix;
        let b = &inner.matrix;
        assert_eq!(a[0].len(), b.len());
        let rows = a.len();
        let cols = b[0].len();
        let mut m = vec![vec![0i64; cols]; rows];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = (0..b.len()).map(|k| a[r][k] * b[k][c]).sum();
            }
        }
        LatticeMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: m,
        }
    }

    /// Rank of the integer matrix, computed exactly.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&v| Rat::from_int(v)).collect())
            .collect();
        mat_rank(&Mat::from_rows(rows))
    }
}

/// Exact rank by Gaussian elimination over Q.
pub fn mat_rank(m: &Mat<Rat>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    let mut row = 0;
    for c in 0..cols {
        let pivot = (row..rows).find(|&r| !a[(r, c)].is_zero());
        let Some(p) = pivot else { continue };
        if p != row {
            for j in 0..cols {
                let t = a[(row, j)].clone();
                a[(row, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
            }
        }
        let inv = a[(row, c)].inv();
        for r in row + 1..rows {
            if !a[(r, c)].is_zero() {
                let f = &a[(r, c)] * &inv;
                for j in 0..cols {
                    let t = &a[(row, j)] * &f;
                    a[(r, j)] = &a[(r, j)] - &t;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// The injection j: T_Spin -> T_GSpin on cocharacter lattices,
/// beta_i^vee -> e_i* - e_{i+1}* (i < n), beta_n^vee -> 2 e_n* - e0*.
pub fn spin_torus_embedding(n: usize) -> Result<LatticeMap, RootDataError> {
    if n < 2 {
        return Err(RootDataError::EmbeddingRank);
    }
    // target basis e0*, e1*, .., en* (n+1 rows); source beta_1^vee..beta_n^vee.
    let mut m = vec![vec![0i64; n]; n + 1];
    for c in 0..n - 1 {
        m[c + 1][c] = 1;
        m[c + 2][c] = -1;
    }
    m[n][n - 1] = 2;
    m[0][n - 1] = -1;
    Ok(LatticeMap {
        source: "X_*(T_Spin)".into(),
        target: "X_*(T_GSpin)".into(),
        matrix: m,
    })
}

/// The projection pr: X_*(T_GSpin) -> X_*(T_SO), e_i* -> f_i*, e0* -> 0.
pub fn gspin_to_so_projection(n: usize) -> LatticeMap {
    let mut m = vec![vec![0i64; n + 1]; n];
    for i in 0..n {
        m[i][i + 1] = 1;
    }
    LatticeMap {
        source: "X_*(T_GSpin)".into(),
        target: "X_*(T_SO)".into(),
        matrix: m,
    }
}

/// The covering map on cocharacters, beta_i^vee -> gamma_i^vee, as a matrix in
/// the f* basis.
pub fn spin_to_so_covering(n: usize) -> LatticeMap {
    let mut m = vec![vec![0i64; n]; n];
    for c in 0..n - 1 {
        m[c][c] = 1;
        m[c + 1][c] = -1;
    }
    m[n - 1][n - 1] = 2;
    LatticeMap {
        source: "X_*(T_Spin)".into(),
        target: "X_*(T_SO)".into(),
        matrix: m,
    }
}

/// Basis of the sublattice {v : <alpha_i, v> = 0 for the given simple roots},
/// i.e. the cocharacter lattice of the center of the corresponding Levi
/// (all roots: the center of the group itself).
pub fn center_cocharacter_lattice(datum: &RootDatum, root_indices: &[usize]) -> Vec<Vec<i64>> {
    let rank = datum.rank;
    // integer kernel: collect pairing rows and reduce over Q, then scale the
    // kernel basis to primitive integer vectors
    let rows: Vec<Vec<Rat>> = root_indices
        .iter()
        .map(|&i| {
            (0..rank)
                .map(|j| {
                    let mut basis = vec![Rat::zero(); rank];
                    basis[j] = Rat::one();
                    let root: Vec<Rat> = datum.simple_roots[i]
                        .iter()
                        .map(|&v| Rat::from_int(v))
                        .collect();
                    datum.pair(&root, &basis)
                })
                .collect()
        })
        .collect();
    if rows.is_empty() {
        // whole lattice
        return (0..rank)
            .map(|j| (0..rank).map(|k| i64::from(j == k)).collect())
            .collect();
    }
    let m = Mat::from_rows(rows);
    rational_kernel_basis(&m)
        .into_iter()
        .map(|v| primitive_integer_vector(&v))
        .collect()
}

fn rational_kernel_basis(m: &Mat<Rat>) -> Vec<Vec<Rat>> {
    // row-reduce and read off the free columns
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = a[(r, j)].clone();
                a[(r, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
            }
        }
        let inv = a[(r, c)].inv();
        for j in 0..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in 0..cols {
                    let t = &a[(r, j)] * &f;
                    a[(i, j)] = &a[(i, j)] - &t;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for &(pr, pc) in &pivots {
            v[pc] = -&a[(pr, free)];
        }
        basis.push(v);
    }
    basis
}

fn primitive_integer_vector(v: &[Rat]) -> Vec<i64> {
    use num_bigint::BigInt;
    let mut lcm = BigInt::from(1);
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::from(0);
    for x in &ints {
        g = num_integer::gcd(g, x.clone());
    }
    if g == BigInt::from(0) {
        g = BigInt::from(1);
    }
    ints.iter()
        .map(|x| {
            let q = x / &g;
            q.to_string().parse().expect("small entries")
        })
        .collect()
}

/// rho, alpha-hat and alpha^vee for GSpin(2n+1) in the (e0, e1..en) bases.
#[derive(Clone, Debug)]
pub struct DistinguishedVectors {
    pub rho: Vec<Rat>,
    pub alpha_hat: Vec<Rat>,
    pub alpha_covee: Vec<i64>,
}

pub fn distinguished_vectors(n: usize) -> DistinguishedVectors {
    let mut rho = vec![Rat::zero(); n + 1];
    let mut ah = vec![Rat::zero(); n + 1];
    let mut av = vec![0i64; n + 1];
    for i in 1..=n {
        rho[i] = Rat::new(n as i64, 2);
        ah[i] = Rat::new(1, 2);
        av[i] = 1;
    }
    DistinguishedVectors {
        rho,
        alpha_hat: ah,
        alpha_covee: av,
    }
}

/// The pairing values the rest of the pipeline depends on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairingReport {
    /// <rho, alpha_n^vee>
    pub rho_alpha: Rat,
    /// <alpha-hat, alpha^vee>
    pub alphahat_alphavee: Rat,
    /// <e_n, alpha^vee>
    pub en_alphavee: Rat,
    /// |t|-exponent of q^{<2 rho, H(alpha^vee(t))>}
    pub t_exponent: Rat,
}

pub fn pairing_report(n: usize) -> PairingReport {
    let datum = build_root_datum(DatumKind::GSpinOdd, n).expect("n >= 1");
    let dv = distinguished_vectors(n);
    let alpha_n_vee: Vec<Rat> = datum.simple_coroots[n - 1]
        .iter()
        .map(|&v| Rat::from_int(v))
        .collect();
    let alpha_vee: Vec<Rat> = dv.alpha_covee.iter().map(|&v| Rat::from_int(v)).collect();
    let mut en = vec![Rat::zero(); n + 1];
    en[n] = Rat::one();
    let two_rho: Vec<Rat> = dv.rho.iter().map(|r| r + r).collect();
    PairingReport {
        rho_alpha: datum.pair(&dv.rho, &alpha_n_vee),
        alphahat_alphavee: datum.pair(&dv.alpha_hat, &alpha_vee),
        en_alphavee: datum.pair(&en, &alpha_vee),
        t_exponent: datum.pair(&two_rho, &alpha_vee),
    }
}

/// A signed permutation: e_i -> sign[i] * e_{perm[i]} (0-based indices into
/// e_1..e_n; the e0 coordinate is Weyl-invariant).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElt {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        WeylElt {
            perm: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// Long element of W(B_n): e_i -> -e_i.
    pub fn long_element(n: usize) -> Self {
        WeylElt {
            perm: (0..n).collect(),
            sign: vec![-1; n],
        }
    }

    /// Long element of the Siegel Levi GL_n: e_i -> e_{n+1-i}.
    pub fn levi_long_element(n: usize) -> Self {
        WeylElt {
            perm: (0..n).rev().collect(),
            sign: vec![1; n],
        }
    }

    /// Composition (self o rhs): first apply rhs, then self.
    pub fn compose(&self, rhs: &WeylElt) -> WeylElt {
        let n = self.n();
        assert_eq!(n, rhs.n());
        let mut perm = vec![0usize; n];
        let mut sign = vec![1i8; n];
        for i in 0..n {
            perm[i] = self.perm[rhs.perm[i]];
            sign[i] = rhs.sign[i] * self.sign[rhs.perm[i]];
        }
        WeylElt { perm, sign }
    }

    pub fn inverse(&self) -> WeylElt {
        let n = self.n();
        let mut perm = vec![0usize; n];
        let mut sign = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            sign[self.perm[i]] = self.sign[i];
        }
        WeylElt { perm, sign }
    }

    /// Image of the character vector sum_i v[i] e_{i+1} (0-based v).
    pub fn act(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.n();
        assert_eq!(v.len(), n);
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            let target = self.perm[i];
            let s = if self.sign[i] > 0 {
                v[i].clone()
            } else {
                -&v[i]
            };
            out[target] = &out[target] + &s;
        }
        out
    }

    /// Length = number of positive roots of B_n sent to negative roots.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        let neg = |v: &[Rat]| -> bool {
            // a root vector is negative iff its first nonzero coordinate is < 0
            for x in v {
                if !x.is_zero() {
                    return x.is_negative();
                }
            }
            false
        };
        let mut root = |coords: Vec<(usize, i64)>| {
            let mut v = vec![Rat::zero(); n];
            for (i, c) in coords {
                v[i] = Rat::from_int(c);
            }
            if neg(&self.act(&v)) {
                count += 1;
            }
        };
        for i in 0..n {
            root(vec![(i, 1)]); // e_i
            for j in i + 1..n {
                root(vec![(i, 1), (j, 1)]); // e_i + e_j
                root(vec![(i, 1), (j, -1)]); // e_i - e_j
            }
        }
        count
    }
}

/// Lengths (l(w_H), l(w_theta)) computed by inversion counting.
pub fn weyl_lengths(n: usize) -> (usize, usize) {
    let wh = WeylElt::long_element(n);
    let wt = WeylElt::levi_long_element(n);
    (wh.length(), wt.length())
}
