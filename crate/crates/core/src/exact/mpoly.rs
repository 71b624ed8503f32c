//! Sparse multivariate polynomials over Q with total-degree-then-lex term
//! ordering. Carrier for symbolic Jacobians and the symbolic centralizer
//! solve; arithmetic is exact, no zero coefficients are stored.

use super::mat::Scalar;
use super::rat::Rat;
use super::ExactError;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with grlex ordering (total degree first, then lex).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(Monomial(e), Rat::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.total_degree() == 0 {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn insert_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.insert_term(Monomial(exps), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Partial derivative with respect to variable i.
    pub fn derivative(&self, i: usize) -> MPoly {
        assert!(i < self.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.insert_term(Monomial(exps), c * &Rat::from_int(e as i64));
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= &point[i].pow_i(e as i64);
                }
            }
            acc += &term;
        }
        acc
    }

    /// Substitute polynomials for every variable (composition).
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars);
        let target_nvars = if subs.is_empty() { 0 } else { subs[0].nvars };
        let mut acc = MPoly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&subs[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute a single variable by a constant.
    pub fn subst_const(&self, i: usize, value: &Rat) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] = 0;
            out.insert_term(Monomial(exps), c * &value.pow_i(e as i64));
        }
        out
    }

    /// When the polynomial consists of a single term whose support among
    /// `vars` is exactly one variable, returns that variable index.
    pub fn single_var_term(&self, vars: &[usize]) -> Option<usize> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, _) = self.terms.iter().next().unwrap();
        let mut found = None;
        for &v in vars {
            if m.0[v] > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(v);
            }
        }
        found
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut s = String::new();
            if m.total_degree() == 0 {
                s.push_str(&c.to_string());
            } else {
                if c.is_one() {
                } else if (-c).is_one() {
                    s.push('-');
                } else {
                    s.push_str(&format!("{c}*"));
                }
                let vars: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            names[i].clone()
                        } else {
                            format!("{}^{}", names[i], e)
                        }
                    })
                    .collect();
                s.push_str(&vars.join("*"));
            }
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl Scalar for MPoly {
    fn zero() -> Self {
        // nvars is fixed up by context; a 0-var zero adds into anything only
        // through Mat::zero, which is always immediately overwritten.
        MPoly::zero(0)
    }
    fn one() -> Self {
        MPoly::one(0)
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        let (a, b) = unify(self, rhs);
        a.add(&b)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let (a, b) = unify(self, rhs);
        a.sub(&b)
    }
    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = unify(self, rhs);
        a.mul(&b)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
}

/// Promote 0-variable constants (from Mat::zero / Mat::identity) to the
/// ambient variable count of the other operand.
fn unify(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
    if a.nvars == b.nvars {
        return (a.clone(), b.clone());
    }
    let n = a.nvars.max(b.nvars);
    (a.widen(n), b.widen(n))
}

impl MPoly {
    fn widen(&self, nvars: usize) -> MPoly {
        if self.nvars == nvars {
            return self.clone();
        }
        assert!(self.nvars < nvars);
        let mut out = MPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.resize(nvars, 0);
            out.insert_term(Monomial(exps), c.clone());
        }
        out
    }
}

/// Determinant of the matrix of partial derivatives of `map` with respect to
/// `nvars` variables. `map` entries must all live in the same variable ring.
pub fn jacobian_det(map: &[MPoly], nvars: usize) -> Result<MPoly, ExactError> {
    if map.len() != nvars {
        return Err(ExactError::JacobianShape {
            map_len: map.len(),
            nvars,
        });
    }
    let rows: Vec<Vec<MPoly>> = map
        .iter()
        .map(|p| (0..nvars).map(|v| p.derivative(v)).collect())
        .collect();
    let m = super::mat::Mat::from_rows(rows);
    Ok(m.det_minor_expansion())
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(3, i)
    }

    #[test]
    fn ring_basics() {
        let p = x(0).mul(&x(1)).add(&MPoly::constant(3, Rat::from_int(2)));
        let q = p.sub(&p);
        assert!(q.is_zero());
        assert_eq!(p.eval(&[Rat::from_int(2), Rat::from_int(5), Rat::zero()]), Rat::from_int(12));
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = x(0).add(&x(0).neg());
        assert!(p.terms.is_empty());
    }

    #[test]
    fn grlex_ordering_is_canonical() {
        // x0^2 has higher total degree than x1, which beats lex.
        let p = x(0).mul(&x(0)).add(&x(1));
        let keys: Vec<_> = p.terms.keys().cloned().collect();
        assert!(keys[0] < keys[1]);
        assert_eq!(keys[1].0, vec![2, 0, 0]);
    }

    #[test]
    fn derivative_product_rule() {
        let p = x(0).mul(&x(1)).add(&x(2));
        let q = x(0).add(&MPoly::one(3));
        let prod = p.mul(&q);
        let lhs = prod.derivative(0);
        let rhs = p.derivative(0).mul(&q).add(&p.mul(&q.derivative(0)));
        assert_eq!(lhs, rhs);
    }

    // The rank-2 orbit map (x, a1, a2) -> (a1, a2*x, a2) has Jacobian +-a2.
    #[test]
    fn jacobian_measure_map_n2() {
        let v = |i| MPoly::var(3, i);
        let map = vec![v(1), v(2).mul(&v(0)), v(2)];
        let j = jacobian_det(&map, 3).unwrap();
        assert!(j == v(2) || j == v(2).neg(), "got {j}");
    }

    #[test]
    fn jacobian_identity_map() {
        let map: Vec<MPoly> = (0..3).map(|i| MPoly::var(3, i)).collect();
        assert_eq!(jacobian_det(&map, 3).unwrap(), MPoly::one(3));
    }

    #[test]
    fn jacobian_dimension_mismatch() {
        assert!(jacobian_det(&[MPoly::var(3, 0)], 3).is_err());
    }

    // Chain rule J(f o g) = (Jf o g) * Jg, checked symbolically in <= 3 vars.
    #[test]
    fn jacobian_chain_rule() {
        let v = |i| MPoly::var(3, i);
        let f = vec![
            v(0).mul(&v(1)),
            v(1).add(&v(2).mul(&v(2))),
            v(2).add(&MPoly::one(3)),
        ];
        let g = vec![
            v(0).add(&v(1)),
            v(1).mul(&v(2)),
            v(0).sub(&v(2)),
        ];
        let composed: Vec<MPoly> = f.iter().map(|p| p.compose(&g)).collect();
        let lhs = jacobian_det(&composed, 3).unwrap();
        let jf_at_g = jacobian_det(&f, 3).unwrap().compose(&g);
        let rhs = jf_at_g.mul(&jacobian_det(&g, 3).unwrap());
        assert_eq!(lhs, rhs);
    }
}
