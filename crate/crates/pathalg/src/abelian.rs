//! Integer matrices, Smith normal form and finitely generated abelian
//! groups.

use crate::scalar::FieldSpec;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

pub fn to_bigint(m: &[Vec<i64>]) -> IMat {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Invariant-factor form of a finitely generated abelian group:
/// Z^free_rank + sum of Z/d_i with d_1 | d_2 | ... and every d_i >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FGAbelianGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup { free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, invariant_factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            Self::free(1)
        } else if n == 1 {
            Self::trivial()
        } else {
            FGAbelianGroup { free_rank: 0, invariant_factors: vec![BigInt::from(n)] }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Direct sum, renormalized to invariant-factor form.
    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        // build a diagonal relation matrix and take its cokernel
        let torsion: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        let n = torsion.len();
        let mut rel = vec![vec![BigInt::zero(); n]; n];
        for (i, d) in torsion.iter().enumerate() {
            rel[i][i] = d.clone();
        }
        let mut g = cokernel(&rel).0;
        g.free_rank += self.free_rank + other.free_rank;
        g
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }
}

impl std::fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith normal form: returns (U, D, V) with U * M * V = D, where U and
/// V are unimodular and D is diagonal with a divisibility chain.
pub fn smith_normal_form(m: &IMat) -> (IMat, IMat, IMat) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut d = m.clone();
    let mut u = ident(rows);
    let mut v = ident(cols);

    loop {
        diagonalize(&mut d, &mut u, &mut v, rows, cols);
        // normalize signs
        for t in 0..rows.min(cols) {
            if d[t][t].is_negative() {
                for j in 0..cols {
                    d[t][j] = -d[t][j].clone();
                }
                for j in 0..rows {
                    u[t][j] = -u[t][j].clone();
                }
            }
        }
        // enforce the divisibility chain; a violation sends us back to
        // elimination after one column mix
        let mut fixed = true;
        for t in 1..rows.min(cols) {
            if !d[t][t].is_zero() && !d[t - 1][t - 1].is_zero()
                && !(d[t][t].clone() % &d[t - 1][t - 1]).is_zero()
            {
                // add column t to column t-1
                for i in 0..rows {
                    let x = d[i][t].clone();
                    d[i][t - 1] += x;
                }
                for i in 0..cols {
                    let x = v[i][t].clone();
                    v[i][t - 1] += x;
                }
                fixed = false;
                break;
            }
            if d[t - 1][t - 1].is_zero() && !d[t][t].is_zero() {
                // zero pivot before a nonzero one: swap them forward
                d.swap(t - 1, t);
                u.swap(t - 1, t);
                for row in d.iter_mut() {
                    row.swap(t - 1, t);
                }
                for row in v.iter_mut() {
                    row.swap(t - 1, t);
                }
                fixed = false;
                break;
            }
        }
        if fixed {
            break;
        }
    }
    (u, d, v)
}

fn ident(n: usize) -> IMat {
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

fn diagonalize(d: &mut IMat, u: &mut IMat, v: &mut IMat, rows: usize, cols: usize) {
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { return };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            // clear column t below and row t to the right by division
            let mut clean = true;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = div_round(&d[i][t], &d[t][t]);
                    row_sub(d, i, t, &q, cols);
                    row_sub(u, i, t, &q, rows);
                    if !d[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = div_round(&d[t][j], &d[t][t]);
                    col_sub(d, j, t, &q, rows);
                    col_sub(v, j, t, &q, cols);
                    if !d[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            let done = clean
                && (t + 1..rows).all(|i| d[i][t].is_zero())
                && (t + 1..cols).all(|j| d[t][j].is_zero());
            if done {
                break;
            }
        }
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient minimizing |a - q b|
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn row_sub(m: &mut IMat, i: usize, t: usize, q: &BigInt, width: usize) {
    for j in 0..width {
        let x = q * &m[t][j];
        m[i][j] -= x;
    }
}

fn col_sub(m: &mut IMat, j: usize, t: usize, q: &BigInt, height: usize) {
    for i in 0..height {
        let x = q * &m[i][t];
        m[i][j] -= x;
    }
}

/// Integer determinant (Bareiss fraction-free elimination).
pub fn det(m: &IMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = x / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Cokernel and kernel rank of the map Z^cols -> Z^rows given by M.
pub fn cokernel(m: &IMat) -> (FGAbelianGroup, usize) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let (_, d, _) = smith_normal_form(m);
    let mut factors = Vec::new();
    let mut nonzero = 0;
    for t in 0..rows.min(cols) {
        if !d[t][t].is_zero() {
            nonzero += 1;
            if d[t][t] > BigInt::one() {
                factors.push(d[t][t].clone());
            }
        }
    }
    (
        FGAbelianGroup { free_rank: rows - nonzero, invariant_factors: factors },
        cols - nonzero,
    )
}

pub fn coker_ker(m: &[Vec<i64>]) -> (FGAbelianGroup, usize) {
    cokernel(&to_bigint(m))
}

/// Description of the cokernel of a map acting on copies of the unit
/// group of the field through an integer exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitCoker {
    /// Finite field: full invariant-factor answer.
    Finite(FGAbelianGroup),
    /// Rationals: Q^x = Z/2 + a free abelian group on the primes, so
    /// the answer is structural, split into the two parts.
    Rational { two_torsion: FGAbelianGroup, per_prime: FGAbelianGroup },
}

/// Cokernel of M acting coordinatewise on (k^x)^cols -> (k^x)^rows.
pub fn unit_coker(m: &[Vec<i64>], field: FieldSpec) -> Result<UnitCoker> {
    match field {
        FieldSpec::Fp(p) => Ok(UnitCoker::Finite(coker_mod(m, p - 1))),
        FieldSpec::Q => {
            let (per_prime, _) = coker_ker(m);
            Ok(UnitCoker::Rational { two_torsion: coker_mod(m, 2), per_prime })
        }
    }
}

/// Cokernel of M as a map (Z/n)^cols -> (Z/n)^rows.
fn coker_mod(m: &[Vec<i64>], n: u64) -> FGAbelianGroup {
    let rows = m.len();
    let mut aug = to_bigint(m);
    for (i, row) in aug.iter_mut().enumerate() {
        for j in 0..rows {
            row.push(if i == j { BigInt::from(n) } else { BigInt::zero() });
        }
    }
    if rows == 0 {
        return FGAbelianGroup::trivial();
    }
    cokernel(&aug).0
}

/// Guards word-size primes for unit-group work; p - 1 must stay easily
/// factorable at desk scale.
pub fn check_unit_prime(p: u64) -> Result<()> {
    if p >= 1 << 32 {
        return Err(Error::TooLarge(format!("prime {p} too large for unit computations")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(m: &[Vec<i64>]) -> Vec<i64> {
        let bm = to_bigint(m);
        let (u, d, v) = smith_normal_form(&bm);
        // check U M V = D
        let prod = imat_mul(&imat_mul(&u, &bm), &v);
        assert_eq!(prod, d);
        if !u.is_empty() {
            assert_eq!(det(&u).abs(), BigInt::one());
        }
        if !v.is_empty() {
            assert_eq!(det(&v).abs(), BigInt::one());
        }
        let k = d.len().min(if d.is_empty() { 0 } else { d[0].len() });
        let diag: Vec<i64> = (0..k)
            .map(|i| i64::try_from(&d[i][i]).unwrap())
            .collect();
        for w in diag.iter().filter(|&&x| x != 0).collect::<Vec<_>>().windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain broken in {diag:?}");
        }
        diag
    }

    fn imat_mul(a: &IMat, b: &IMat) -> IMat {
        let r = a.len();
        let k = if r == 0 { 0 } else { a[0].len() };
        let c = if b.is_empty() { 0 } else { b[0].len() };
        let mut out = vec![vec![BigInt::zero(); c]; r];
        for i in 0..r {
            for t in 0..k {
                for j in 0..c {
                    let x = &a[i][t] * &b[t][j];
                    out[i][j] += x;
                }
            }
        }
        out
    }

    #[test]
    fn snf_small_cases() {
        assert_eq!(snf_diag(&[vec![0]]), vec![0]);
        assert_eq!(snf_diag(&[vec![-1]]), vec![1]);
        assert_eq!(snf_diag(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn snf_random_det_matches_coker_order() {
        let mut state = 99u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 9) - 4
        };
        for _ in 0..60 {
            let m: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| next()).collect()).collect();
            let dv = det(&to_bigint(&m)).abs();
            let (g, ker) = coker_ker(&m);
            if !dv.is_zero() {
                assert_eq!(g.order().unwrap(), dv);
                assert_eq!(ker, 0);
            } else {
                assert!(g.free_rank > 0);
            }
        }
    }

    #[test]
    fn coker_examples() {
        let (g, k) = coker_ker(&[vec![-1]]);
        assert!(g.is_trivial());
        assert_eq!(k, 0);

        let (g, k) = coker_ker(&[vec![0]]);
        assert_eq!(g, FGAbelianGroup::free(1));
        assert_eq!(k, 1);

        // Toeplitz 1 - N: column (0, -1)^t
        let (g, k) = coker_ker(&[vec![0], vec![-1]]);
        assert_eq!(g, FGAbelianGroup::free(1));
        assert_eq!(k, 0);
    }

    #[test]
    fn unit_coker_examples() {
        let u = unit_coker(&[vec![0]], FieldSpec::fp(5).unwrap()).unwrap();
        assert_eq!(u, UnitCoker::Finite(FGAbelianGroup::cyclic(4)));

        let u = unit_coker(&[vec![-1]], FieldSpec::fp(7).unwrap()).unwrap();
        assert_eq!(u, UnitCoker::Finite(FGAbelianGroup::trivial()));

        let u = unit_coker(&[vec![0]], FieldSpec::Q).unwrap();
        assert_eq!(
            u,
            UnitCoker::Rational {
                two_torsion: FGAbelianGroup::cyclic(2),
                per_prime: FGAbelianGroup::free(1)
            }
        );
    }

    #[test]
    fn direct_sum_renormalizes() {
        let a = FGAbelianGroup::cyclic(2);
        let b = FGAbelianGroup::cyclic(3);
        let s = a.direct_sum(&b);
        assert_eq!(s, FGAbelianGroup::cyclic(6));
        let t = FGAbelianGroup::cyclic(2).direct_sum(&FGAbelianGroup::cyclic(4));
        assert_eq!(
            t.invariant_factors,
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }
}
