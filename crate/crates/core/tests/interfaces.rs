//! Wire-format and cross-module checks: rational/matrix string serialization,
//! root-datum and L-polynomial JSON, the ledger map shape, and the
//! conjugation-invariance bridge between the SO embeddings and the orbit
//! reduction.

use gspin_exact::dual_side::{sym2_satake, SatakeParam};
use gspin_exact::exact::{Mat, Rat};
use gspin_exact::orbit_measure::{reduce_orbit, SkewMat};
use gspin_exact::root_data::{build_root_datum, DatumKind};
use gspin_exact::so_realization::NParam;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::str::FromStr;

#[test]
fn rational_wire_format() {
    // "num/den" with the denominator omitted when 1
    assert_eq!(Rat::new(3, 6).to_string(), "1/2");
    assert_eq!(Rat::from_int(-7).to_string(), "-7");
    assert_eq!(serde_json::to_string(&Rat::new(-2, 4)).unwrap(), "\"-1/2\"");
    let back: Rat = serde_json::from_str("\"5/3\"").unwrap();
    assert_eq!(back, Rat::new(5, 3));
    assert_eq!(Rat::from_str("4").unwrap(), Rat::from_int(4));
}

#[test]
fn matrix_wire_format_is_row_major_strings() {
    let m = Mat::from_rows(vec![
        vec![Rat::new(1, 2), Rat::zero()],
        vec![Rat::from_int(-3), Rat::one()],
    ]);
    assert_eq!(
        m.entries_to_strings(),
        vec![vec!["1/2".to_string(), "0".into()], vec!["-3".into(), "1".into()]]
    );
}

#[test]
fn root_datum_serializes_with_basis_names_and_vectors() {
    let d = build_root_datum(DatumKind::GSpinOdd, 2).unwrap();
    let json: serde_json::Value = serde_json::to_value(&d).unwrap();
    assert_eq!(json["char_basis"][0], "e0");
    assert_eq!(json["cochar_basis"][2], "e2*");
    // alpha_n^vee = 2 e_n* - e0*
    assert_eq!(json["simple_coroots"][1][0], -1);
    assert_eq!(json["simple_coroots"][1][2], 2);
}

#[test]
fn l_polynomial_serializes_lowest_degree_first() {
    let sp = SatakeParam::new(vec![Rat::from_int(2)], Rat::from_int(3), 5).unwrap();
    let (_, lpoly) = sym2_satake(&sp);
    // 1 - 12 T
    let json = serde_json::to_string(&lpoly).unwrap();
    assert_eq!(json, "{\"coeffs\":[\"1\",\"-12\"]}");
}

#[test]
fn report_ledger_shape() {
    use gspin_exact::harness::{run, SuiteConfig, SuiteName};
    let report = run(&SuiteConfig {
        suite: SuiteName::Mellin,
        n_lo: 2,
        n_hi: 2,
        prime: 5,
        trials: 1,
        seed: 1,
        symbolic_max_n: 3,
    })
    .unwrap();
    let json: serde_json::Value = serde_json::to_value(&report).unwrap();
    // {variable: {p: Rat, q: Rat}}
    let entry = &json["ledgers"]["n=2"]["d2_prime"];
    assert_eq!(entry["p"], "1/2");
    assert_eq!(entry["q"], "1/2");
    assert_eq!(json["schema"], 1);
}

/// Independent oracle: rank via Smith normal form over the integers
/// (gcd-based elimination; the count of nonzero diagonal entries).
fn snf_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let rows = a.len();
    let cols = a[0].len();
    let mut rank = 0;
    let (mut r0, mut c0) = (0usize, 0usize);
    while r0 < rows && c0 < cols {
        // find a pivot
        let Some((pi, pj)) = (r0..rows)
            .flat_map(|i| (c0..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] != 0)
        else {
            break;
        };
        a.swap(r0, pi);
        for row in a.iter_mut() {
            row.swap(c0, pj);
        }
        // clear the pivot row/column by repeated remainder steps
        loop {
            let mut cleared = true;
            for i in r0 + 1..rows {
                if a[i][c0] != 0 {
                    let q = a[i][c0] / a[r0][c0];
                    for j in c0..cols {
                        a[i][j] -= q * a[r0][j];
                    }
                    if a[i][c0] != 0 {
                        a.swap(r0, i);
                        cleared = false;
                    }
                }
            }
            for j in c0 + 1..cols {
                if a[r0][j] != 0 {
                    let q = a[r0][j] / a[r0][c0];
                    for row in a.iter_mut().skip(r0) {
                        row[j] -= q * row[c0];
                    }
                    if a[r0][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(c0, j);
                        }
                        cleared = false;
                    }
                }
            }
            if cleared {
                break;
            }
        }
        rank += 1;
        r0 += 1;
        c0 += 1;
    }
    rank
}

#[test]
fn torus_embedding_rank_matches_snf_oracle() {
    use gspin_exact::root_data::spin_torus_embedding;
    for n in 2..=8 {
        let j = spin_torus_embedding(n).unwrap();
        assert_eq!(snf_rank(&j.matrix), n, "kernel rank 0 (injective), n={n}");
        assert_eq!(j.rank(), snf_rank(&j.matrix), "n={n}");
    }
}

/// Elementary divisors by gcd-of-minors: d_1 .. d_r with
/// d_1 ... d_k = gcd of all k x k minors.
fn elementary_divisors(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m[0].len();
    let r = snf_rank(m);
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=r {
        // gcd over all k x k minors
        let mut g: i128 = 0;
        let row_sets = subsets(rows, k);
        let col_sets = subsets(cols, k);
        for rs in &row_sets {
            for cs in &col_sets {
                let det = int_minor_det(m, rs, cs);
                g = gcd128(g, det.abs());
            }
        }
        out.push((g / prev) as i64);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn int_minor_det(m: &[Vec<i64>], rs: &[usize], cs: &[usize]) -> i128 {
    let k = rs.len();
    // fraction-free elimination over i128 (entries are tiny)
    let mut a: Vec<Vec<i128>> = rs
        .iter()
        .map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..k {
        if a[c][c] == 0 {
            match (c + 1..k).find(|&r| a[r][c] != 0) {
                Some(r) => {
                    a.swap(c, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in c + 1..k {
            for j in c + 1..k {
                a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    sign * a[k - 1][k - 1]
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd128(b, a % b)
    }
}

// The covering of cocharacter lattices has elementary divisors (1, .., 1, 2):
// the kernel of the covering map on tori is the order-2 group generated by
// the short coroot at -1. The embedding into the similitude torus is
// saturated (all divisors 1): the quotient is again a torus.
#[test]
fn double_cover_elementary_divisors() {
    use gspin_exact::root_data::{spin_to_so_covering, spin_torus_embedding};
    for n in 2..=6 {
        let phi = spin_to_so_covering(n);
        let mut expect = vec![1i64; n - 1];
        expect.push(2);
        assert_eq!(elementary_divisors(&phi.matrix), expect, "covering n={n}");
        let j = spin_torus_embedding(n).unwrap();
        assert_eq!(elementary_divisors(&j.matrix), vec![1i64; n], "embedding n={n}");
    }
}

// Conjugating n(Z, alpha) by a unipotent Levi element never changes the
// canonical orbit coordinates, 100 trials at n = 3, 4.
#[test]
fn conjugation_preserves_canonical_rep() {
    let mut rng = ChaCha12Rng::seed_from_u64(0x0B17);
    for n in 3..=4 {
        let mut done = 0;
        while done < 100 {
            let mut z = Mat::<Rat>::zero(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    let v = Rat::random_int(&mut rng, 20);
                    z[(i, j)] = v.clone();
                    z[(j, i)] = -v;
                }
            }
            let alpha: Vec<Rat> = (0..n).map(|_| Rat::random_int(&mut rng, 20)).collect();
            let p = NParam::new(z, alpha).unwrap();
            let zt_of = |q: &NParam| -> SkewMat {
                let mut m = Mat::zero(n + 1, n + 1);
                m.set_block(0, 0, &q.z);
                for i in 0..n {
                    m[(i, n)] = q.alpha[i].clone();
                    m[(n, i)] = -&q.alpha[i];
                }
                SkewMat::new(m).unwrap()
            };
            let Ok((_, r1)) = reduce_orbit(&zt_of(&p)) else {
                continue;
            };
            done += 1;
            let u = Mat::random_unipotent(&mut rng, n, 6);
            let moved = NParam::new(
                u.mul_mat(&p.z).mul_mat(&u.transpose()),
                u.mul_vec(&p.alpha),
            )
            .unwrap();
            let (_, r2) = reduce_orbit(&zt_of(&moved)).expect("same orbit");
            assert_eq!(r1, r2, "n={n}");
        }
    }
}
