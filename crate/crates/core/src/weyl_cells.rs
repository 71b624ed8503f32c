//! Bessel-supporting Weyl elements of GL_n, their Levi compositions, the
//! Bessel distance, the U_w+/U_w- splitting of positive roots, and transverse
//! tori at the cocharacter-lattice level.

use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylCellError {
    #[error("n = {0} exceeds the factorial guard (n <= 8)")]
    TooLarge(usize),
    #[error("elements are not comparable in the Bruhat order")]
    Incomparable,
    #[error("element does not support Bessel functions")]
    NotBessel,
}

/// A permutation of {0..n-1}; w sends e_i to e_{w(i)}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn longest(n: usize) -> Self {
        Perm((0..n).rev().collect())
    }

    pub fn compose(&self, rhs: &Perm) -> Perm {
        Perm(rhs.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// Number of inversions = Coxeter length in type A.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut c = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Left multiplication by the simple transposition s_i = (i, i+1).
    pub fn left_mul_simple(&self, i: usize) -> Perm {
        let mut v = self.0.clone();
        for x in v.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
        Perm(v)
    }

    /// True iff l(s_i w) < l(w).
    pub fn left_descent(&self, i: usize) -> bool {
        // s_i w < w iff w^{-1}(i) > w^{-1}(i+1)
        let inv = self.inverse();
        inv.0[i] > inv.0[i + 1]
    }
}

/// Longest element of the standard Levi given by a composition: reverses each
/// block.
pub fn levi_longest(composition: &[usize]) -> Perm {
    let n: usize = composition.iter().sum();
    let mut v = Vec::with_capacity(n);
    let mut start = 0;
    for &b in composition {
        for k in 0..b {
            v.push(start + b - 1 - k);
        }
        start += b;
    }
    Perm(v)
}

/// A reduced word for w (simple-root indices, left-to-right product), built
/// from descents.
pub fn reduced_word(w: &Perm) -> Vec<usize> {
    // peeling left descents: w = s_{i_1} s_{i_2} .. s_{i_l} in push order
    let mut word = Vec::with_capacity(w.length());
    let mut cur = w.clone();
    while cur.length() > 0 {
        let i = (0..cur.n() - 1)
            .find(|&i| cur.left_descent(i))
            .expect("nontrivial element has a descent");
        word.push(i);
        cur = cur.left_mul_simple(i);
    }
    word
}

/// Bruhat order on S_n by the subword criterion: v <= w iff some reduced word
/// of v appears as a subword of a fixed reduced word of w. The set of
/// elements representable by reduced subwords is computed once per w and
/// cached.
pub struct BruhatOrder {
    below: HashMap<Vec<usize>, std::collections::HashSet<Vec<usize>>>,
}

impl BruhatOrder {
    pub fn new() -> Self {
        BruhatOrder {
            below: HashMap::new(),
        }
    }

    pub fn le(&mut self, v: &Perm, w: &Perm) -> bool {
        if v.length() > w.length() {
            return false;
        }
        if v == w {
            return true;
        }
        let key = w.0.clone();
        if !self.below.contains_key(&key) {
            let word = reduced_word(w);
            let n = w.n();
            let mut reachable: std::collections::HashSet<Vec<usize>> =
                std::collections::HashSet::new();
            reachable.insert(Perm::identity(n).0);
            for &i in &word {
                // extend every reduced subword product x by s_i when that
                // increases length (right multiplication: the subword letters
                // multiply in word order)
                let mut next = reachable.clone();
                for x in &reachable {
                    let p = Perm(x.clone());
                    let ps = p.compose(&simple(n, i));
                    if ps.length() > p.length() {
                        next.insert(ps.0);
                    }
                }
                reachable = next;
            }
            self.below.insert(key.clone(), reachable);
        }
        self.below[&key].contains(&v.0)
    }
}

fn simple(n: usize, i: usize) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    v.swap(i, i + 1);
    Perm(v)
}

impl Default for BruhatOrder {
    fn default() -> Self {
        Self::new()
    }
}

/// A Weyl element supporting Bessel functions, with its standard Levi.
#[derive(Clone, Debug, Serialize)]
pub struct BesselElt {
    #[serde(skip)]
    pub weyl: Perm,
    /// composition (n_1, .., n_t) of n giving the standard Levi M_w
    pub levi: Vec<usize>,
    /// indices (0-based) of the simple roots in theta_w^+ = Delta_M
    pub theta_plus: Vec<usize>,
}

/// All w in S_n with (w alpha > 0 for simple alpha => w alpha simple), by brute
/// force, each paired with its Levi composition. |B(G)| = 2^{n-1}.
pub fn bessel_set(n: usize) -> Result<Vec<BesselElt>, WeylCellError> {
    if n == 0 || n > 8 {
        return Err(WeylCellError::TooLarge(n));
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    permute_collect(&mut idx, 0, &mut |p| {
        let w = Perm(p.to_vec());
        let mut theta = Vec::new();
        for i in 0..n - 1 {
            // w(e_i - e_{i+1}) = e_{w(i)} - e_{w(i+1)}
            if w.0[i] < w.0[i + 1] {
                // positive; must be simple
                if w.0[i + 1] != w.0[i] + 1 {
                    return;
                }
                theta.push(i);
            }
        }
        let levi = composition_from_theta(n, &theta);
        out.push(BesselElt {
            weyl: w,
            levi,
            theta_plus: theta,
        });
    });
    Ok(out)
}

fn permute_collect(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute_collect(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Composition of n whose Levi has simple roots exactly `theta` (0-based).
pub fn composition_from_theta(n: usize, theta: &[usize]) -> Vec<usize> {
    let mut comp = Vec::new();
    let mut block = 1;
    for i in 0..n - 1 {
        if theta.contains(&i) {
            block += 1;
        } else {
            comp.push(block);
            block = 1;
        }
    }
    comp.push(block);
    comp
}

/// w = w_G w_M for the standard Levi of the composition.
pub fn bessel_from_composition(n: usize, comp: &[usize]) -> Perm {
    Perm::longest(n).compose(&levi_longest(comp))
}

/// Bessel distance |Delta_{M_w'} - Delta_{M_w}| for comparable w' <= w.
pub fn bessel_distance(w: &BesselElt, wp: &BesselElt) -> Result<usize, WeylCellError> {
    // within B(G): w' <= w iff Delta_{M_w} is contained in Delta_{M_w'}
    let sub = w.theta_plus.iter().all(|i| wp.theta_plus.contains(i));
    if !sub {
        return Err(WeylCellError::Incomparable);
    }
    Ok(wp.theta_plus.len() - w.theta_plus.len())
}

/// Longest-chain distance inside B(G), for the chain-definition cross-check.
pub fn bessel_distance_chain(n: usize, w: &BesselElt, wp: &BesselElt) -> Result<usize, WeylCellError> {
    let all = bessel_set(n)?;
    let mut order = BruhatOrder::new();
    if !order.le(&wp.weyl, &w.weyl) {
        return Err(WeylCellError::Incomparable);
    }
    // longest chain from wp up to w through B(G), by DFS with memo on indices
    let pos = |p: &Perm| all.iter().position(|b| &b.weyl == p).expect("in B(G)");
    let (iw, iwp) = (pos(&w.weyl), pos(&wp.weyl));
    let mut memo: HashMap<usize, Option<usize>> = HashMap::new();
    fn longest(
        from: usize,
        target: usize,
        all: &[BesselElt],
        order: &mut BruhatOrder,
        memo: &mut HashMap<usize, Option<usize>>,
    ) -> Option<usize> {
        if from == target {
            return Some(0);
        }
        if let Some(&r) = memo.get(&from) {
            return r;
        }
        let mut best = None;
        for (k, cand) in all.iter().enumerate() {
            if k == from {
                continue;
            }
            let strictly_between = order.le(&all[from].weyl, &cand.weyl)
                && cand.weyl != all[from].weyl
                && order.le(&cand.weyl, &all[target].weyl);
            if strictly_between {
                if let Some(len) = longest(k, target, all, order, memo) {
                    best = Some(best.map_or(len + 1, |b: usize| b.max(len + 1)));
                }
            }
        }
        memo.insert(from, best);
        best
    }
    longest(iwp, iw, &all, &mut order, &mut memo).ok_or(WeylCellError::Incomparable)
}

/// Positive roots (i, j), i < j, meaning e_i - e_j, split by the sign of the
/// w-image: (U_w^+, U_w^-).
pub fn u_splitting(w: &Perm) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let n = w.n();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if w.0[i] < w.0[j] {
                plus.push((i, j));
            } else {
                minus.push((i, j));
            }
        }
    }
    (plus, minus)
}

/// Positive roots of the standard Levi of a composition (the U_M roots).
pub fn levi_roots(comp: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for &b in comp {
        for i in start..start + b {
            for j in i + 1..start + b {
                out.push((i, j));
            }
        }
        start += b;
    }
    out
}

/// Cocharacter-lattice description of a torus.
#[derive(Clone, Debug, Serialize)]
pub struct TorusDesc {
    /// basis vectors of the sublattice of Z^n
    pub lattice: Vec<Vec<i64>>,
    pub rank: usize,
}

/// Transverse-torus data for comparable w' <= w in B(G):
/// A_w = Z_{M_w}, A_w^{w'} = A_w meet (M_{w'})^der, with lattice ranks.
#[derive(Clone, Debug, Serialize)]
pub struct TransverseReport {
    pub a_w: TorusDesc,
    pub a_wp: TorusDesc,
    pub transverse_rank: usize,
    pub finite: bool,
    pub rank_split_holds: bool,
}

pub fn transverse_torus(
    n: usize,
    w: &BesselElt,
    wp: &BesselElt,
) -> Result<TransverseReport, WeylCellError> {
    let sub = w.theta_plus.iter().all(|i| wp.theta_plus.contains(i));
    if !sub {
        return Err(WeylCellError::Incomparable);
    }
    let a_w = center_lattice(n, &w.levi);
    let a_wp = center_lattice(n, &wp.levi);
    // A_w meet (M_{w'})^der: vectors constant on w-blocks whose coordinate sum
    // over every w'-block vanishes. Parametrize by one value per w-block and
    // compute the kernel rank of the block-sum map into Z^{#w'-blocks}.
    let t = w.levi.len();
    let tp = wp.levi.len();
    // map: for each w'-block, sum over the w-blocks it contains, weighted by
    // the w-block sizes (w-blocks refine... here w'-blocks are unions of
    // w-blocks since Delta_{M_w} subset Delta_{M_w'}).
    let w_block_of: Vec<usize> = block_index(n, &w.levi);
    let wp_block_of: Vec<usize> = block_index(n, &wp.levi);
    let mut m = vec![vec![0i64; t]; tp];
    for pos in 0..n {
        m[wp_block_of[pos]][w_block_of[pos]] += 1;
    }
    let rows: Vec<Vec<crate::exact::Rat>> = m
        .iter()
        .map(|r| r.iter().map(|&v| crate::exact::Rat::from_int(v)).collect())
        .collect();
    let rank_map = crate::root_data::mat_rank(&crate::exact::Mat::from_rows(rows));
    let transverse_rank = t - rank_map;
    Ok(TransverseReport {
        rank_split_holds: transverse_rank + a_wp.rank == a_w.rank,
        finite: transverse_rank == 0,
        a_w,
        a_wp,
        transverse_rank,
    })
}

fn block_index(n: usize, comp: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    for (b, &size) in comp.iter().enumerate() {
        out.extend(std::iter::repeat(b).take(size));
    }
    out
}

/// Cocharacter lattice of the center of the block Levi: one indicator vector
/// per block.
pub fn center_lattice(n: usize, comp: &[usize]) -> TorusDesc {
    let idx = block_index(n, comp);
    let lattice: Vec<Vec<i64>> = (0..comp.len())
        .map(|b| (0..n).map(|i| if idx[i] == b { 1 } else { 0 }).collect())
        .collect();
    TorusDesc {
        rank: lattice.len(),
        lattice,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: Ehresmann's rank-matrix criterion for v <= w.
    fn bruhat_le_oracle(v: &Perm, w: &Perm) -> bool {
        let n = v.n();
        for i in 0..n {
            for j in 0..n {
                let count = |p: &Perm| (0..=i).filter(|&k| p.0[k] >= j).count();
                if count(v) > count(w) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn reduced_words_multiply_back() {
        for n in 2..=5 {
            let mut idx: Vec<usize> = (0..n).collect();
            permute_collect(&mut idx, 0, &mut |p| {
                let w = Perm(p.to_vec());
                let word = reduced_word(&w);
                assert_eq!(word.len(), w.length());
                let mut prod = Perm::identity(n);
                for &i in &word {
                    prod = prod.compose(&simple(n, i));
                }
                assert_eq!(prod, w);
            });
        }
    }

    #[test]
    fn subword_order_matches_rank_matrix_oracle() {
        for n in 2..=4 {
            let mut perms = Vec::new();
            let mut idx: Vec<usize> = (0..n).collect();
            permute_collect(&mut idx, 0, &mut |p| perms.push(Perm(p.to_vec())));
            let mut order = BruhatOrder::new();
            for v in &perms {
                for w in &perms {
                    assert_eq!(order.le(v, w), bruhat_le_oracle(v, w), "{v:?} vs {w:?}");
                }
            }
        }
    }

    #[test]
    fn bessel_set_small() {
        // brute force over S_3 with the displayed condition
        let b3 = bessel_set(3).unwrap();
        assert_eq!(b3.len(), 4);
        let mut levis: Vec<Vec<usize>> = b3.iter().map(|b| b.levi.clone()).collect();
        levis.sort();
        assert_eq!(levis, vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);

        let b1 = bessel_set(1).unwrap();
        assert_eq!(b1.len(), 1);
        assert_eq!(b1[0].weyl, Perm::identity(1));
    }

    #[test]
    fn guard_rejects_large_n() {
        assert!(bessel_set(9).is_err());
    }

    #[test]
    fn bessel_set_counts_and_w_g_w_m() {
        for n in 1..=6 {
            let set = bessel_set(n).unwrap();
            assert_eq!(set.len(), 1 << (n - 1), "n={n}");
            for b in &set {
                assert_eq!(b.weyl, bessel_from_composition(n, &b.levi));
            }
        }
    }

    #[test]
    fn distance_examples() {
        let b4 = bessel_set(4).unwrap();
        let wg = b4.iter().find(|b| b.levi == vec![1, 1, 1, 1]).unwrap();
        let e = b4.iter().find(|b| b.levi == vec![4]).unwrap();
        assert_eq!(bessel_distance(wg, e).unwrap(), 3);
        assert_eq!(bessel_distance(wg, wg).unwrap(), 0);

        let b3 = bessel_set(3).unwrap();
        let w21 = b3.iter().find(|b| b.levi == vec![2, 1]).unwrap();
        let e3 = b3.iter().find(|b| b.levi == vec![3]).unwrap();
        assert_eq!(bessel_distance(w21, e3).unwrap(), 1);
    }

    #[test]
    fn distance_agrees_with_chain_definition() {
        for n in 2..=5 {
            let set = bessel_set(n).unwrap();
            for w in &set {
                for wp in &set {
                    match bessel_distance(w, wp) {
                        Ok(d) => {
                            assert_eq!(bessel_distance_chain(n, w, wp).unwrap(), d, "n={n}");
                        }
                        Err(_) => {
                            // either truly incomparable or comparable the other way
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn distance_metric_on_nested_chains() {
        let set = bessel_set(4).unwrap();
        for w in &set {
            for wp in &set {
                for wpp in &set {
                    let d1 = bessel_distance(w, wp);
                    let d2 = bessel_distance(wp, wpp);
                    let d3 = bessel_distance(w, wpp);
                    if let (Ok(a), Ok(b), Ok(c)) = (d1, d2, d3) {
                        assert_eq!(a + b, c);
                    }
                }
            }
        }
    }

    #[test]
    fn incomparable_rejected() {
        let b3 = bessel_set(3).unwrap();
        let w21 = b3.iter().find(|b| b.levi == vec![2, 1]).unwrap();
        let w12 = b3.iter().find(|b| b.levi == vec![1, 2]).unwrap();
        assert!(bessel_distance(w21, w12).is_err());
        assert!(transverse_torus(3, w21, w12).is_err());
    }

    #[test]
    fn u_splitting_cases() {
        for n in 2..=6 {
            let wg = Perm::longest(n);
            let (plus, minus) = u_splitting(&wg);
            assert!(plus.is_empty());
            assert_eq!(minus.len(), n * (n - 1) / 2);

            let e = Perm::identity(n);
            let (plus, minus) = u_splitting(&e);
            assert_eq!(plus.len(), n * (n - 1) / 2);
            assert!(minus.is_empty());
        }
        // w = w_M for M = (2,1) in GL_3: U+ = N_M roots, U- = U_M roots
        let wm = levi_longest(&[2, 1]);
        let (plus, minus) = u_splitting(&wm);
        let um = levi_roots(&[2, 1]);
        let nm: Vec<(usize, usize)> = {
            let all = u_splitting(&Perm::identity(3)).0;
            all.into_iter().filter(|r| !um.contains(r)).collect()
        };
        assert_eq!(plus, nm);
        assert_eq!(minus, um);
    }

    #[test]
    fn u_splitting_partitions_and_levi_match() {
        for n in 2..=6 {
            let total = n * (n - 1) / 2;
            for b in bessel_set(n).unwrap() {
                let (plus, minus) = u_splitting(&b.weyl);
                assert_eq!(plus.len() + minus.len(), total);
                // for w = w_G w_M: U_w^+ = U_M, U_w^- = N_M
                let um = levi_roots(&b.levi);
                assert_eq!(plus, um, "n={n} levi={:?}", b.levi);
            }
        }
    }

    #[test]
    fn transverse_examples() {
        // GL_2, w = w' = w_G
        let b2 = bessel_set(2).unwrap();
        let wg = b2.iter().find(|b| b.levi == vec![1, 1]).unwrap();
        let r = transverse_torus(2, wg, wg).unwrap();
        assert_eq!(r.transverse_rank, 0);
        assert!(r.finite);
        assert!(r.rank_split_holds);

        // A_w^w finite for all w, n <= 6
        for n in 2..=6 {
            for b in bessel_set(n).unwrap() {
                let r = transverse_torus(n, &b, &b).unwrap();
                assert!(r.finite);
                assert!(r.rank_split_holds);
            }
        }

        // GL_3, w = w_G, w' = e: A_e = center (rank 1), split 3 = 2 + 1
        let b3 = bessel_set(3).unwrap();
        let wg = b3.iter().find(|b| b.levi == vec![1, 1, 1]).unwrap();
        let e = b3.iter().find(|b| b.levi == vec![3]).unwrap();
        let r = transverse_torus(3, wg, e).unwrap();
        assert_eq!(r.a_w.rank, 3);
        assert_eq!(r.a_wp.rank, 1);
        assert_eq!(r.transverse_rank, 2);
        assert!(r.rank_split_holds);
    }

    #[test]
    fn both_bessel_definitions_agree() {
        // elementwise: brute-force set == {w_G w_M : M standard Levi}
        for n in 1..=6 {
            let brute = bessel_set(n).unwrap();
            let mut from_levis: Vec<Vec<usize>> = Vec::new();
            // all compositions of n
            fn comps(n: usize) -> Vec<Vec<usize>> {
                if n == 0 {
                    return vec![vec![]];
                }
                let mut out = Vec::new();
                for first in 1..=n {
                    for mut rest in comps(n - first) {
                        rest.insert(0, first);
                        out.push(rest);
                    }
                }
                out
            }
            for c in comps(n) {
                let w = bessel_from_composition(n, &c);
                assert!(
                    brute.iter().any(|b| b.weyl == w && b.levi == c),
                    "n={n} comp={c:?}"
                );
                from_levis.push(c);
            }
            assert_eq!(from_levis.len(), brute.len());
        }
    }
}
