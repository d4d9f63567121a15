//! Dense exact linear algebra over a dynamic field.
//!
//! Matrices are `Vec<Vec<Scalar>>` in row-major order. All functions
//! assume rectangular input and same-field entries.

use crate::scalar::{FieldSpec, Scalar};

pub type Mat = Vec<Vec<Scalar>>;

pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
    vec![vec![field.zero(); cols]; rows]
}

pub fn identity(field: FieldSpec, n: usize) -> Mat {
    let mut m = zeros(field, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = field.one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat, field: FieldSpec) -> Mat {
    let (r, k) = (a.len(), if a.is_empty() { 0 } else { a[0].len() });
    let c = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = zeros(field, r, c);
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                out[i][j] = out[i][j].add(&a[i][t].mul(&b[t][j]));
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat, v: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

pub fn transpose(a: &Mat, field: FieldSpec) -> Mat {
    let r = a.len();
    let c = if r == 0 { 0 } else { a[0].len() };
    let mut out = zeros(field, c, r);
    for i in 0..r {
        for j in 0..c {
            out[j][i] = a[i][j].clone();
        }
    }
    out
}

/// Reduced row echelon form in place; returns pivot column indices.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("pivot nonzero");
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    m[i][j] = m[i][j].sub(&f.mul(&m[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// Basis of the right nullspace { x : A x = 0 }.
pub fn nullspace(a: &Mat, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// One solution of A x = b, if any.
pub fn solve(a: &Mat, b: &[Scalar], field: FieldSpec) -> Option<Vec<Scalar>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Mat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last().map_or(false, |&c| c == cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![field.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if invertible.
pub fn invert(a: &Mat, field: FieldSpec) -> Option<Mat> {
    let n = a.len();
    let mut aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { field.one() } else { field.zero() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Row space basis (echelon rows, nonzero only).
pub fn row_basis(a: &Mat) -> Mat {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    m.truncate(pivots.len());
    m
}

/// Characteristic polynomial of a square matrix by the division-free
/// Berkowitz algorithm; coefficients from constant term upward, monic.
pub fn char_poly(a: &Mat, field: FieldSpec) -> Vec<Scalar> {
    let n = a.len();
    if n == 0 {
        return vec![field.one()];
    }
    // Berkowitz recursion on leading principal minors; polynomials are
    // kept highest-degree-first.
    let mut poly: Vec<Scalar> = vec![field.one(), a[0][0].neg()]; // x - a00
    for k in 1..n {
        // R = row A[k][0..k], C = column A[0..k][k], M = A_k (top-left k x k)
        let m: Mat = (0..k).map(|i| a[i][0..k].to_vec()).collect();
        let row: Vec<Scalar> = a[k][0..k].to_vec();
        let col: Vec<Scalar> = (0..k).map(|i| a[i][k].clone()).collect();
        // T vector: t_0 = 1 (coef of x^{k+1} shift), built from
        // akk, R C, R M C, R M^2 C, ...
        let mut t = vec![field.one(), a[k][k].neg()];
        let mut mc = col.clone();
        for _ in 0..k {
            let dot = row
                .iter()
                .zip(&mc)
                .fold(field.zero(), |acc, (x, y)| acc.add(&x.mul(y)));
            t.push(dot.neg());
            mc = mat_vec(&m, &mc, field);
        }
        // new_poly = convolution of t with poly (both highest-first)
        let mut newp = vec![field.zero(); poly.len() + t.len() - 1];
        for (i, ti) in t.iter().enumerate() {
            if ti.is_zero() {
                continue;
            }
            for (j, pj) in poly.iter().enumerate() {
                newp[i + j] = newp[i + j].add(&ti.mul(pj));
            }
        }
        newp.truncate(k + 2); // degree k+1 polynomial has k+2 coefficients
        poly = newp;
    }
    // convert highest-first to constant-first
    poly.reverse();
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Mat {
        rows.iter()
            .map(|r| r.iter().map(|&x| FieldSpec::Q.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, FieldSpec::Q);
        assert_eq!(ns.len(), 1);
        let prod = mat_vec(&a, &ns[0], FieldSpec::Q);
        assert!(prod.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_and_invert() {
        let a = qm(&[&[2, 1], &[1, 1]]);
        let b = vec![FieldSpec::Q.from_i64(3), FieldSpec::Q.from_i64(2)];
        let x = solve(&a, &b, FieldSpec::Q).unwrap();
        assert_eq!(mat_vec(&a, &x, FieldSpec::Q), b);
        let inv = invert(&a, FieldSpec::Q).unwrap();
        assert_eq!(mat_mul(&a, &inv, FieldSpec::Q), identity(FieldSpec::Q, 2));
        assert!(invert(&qm(&[&[1, 2], &[2, 4]]), FieldSpec::Q).is_none());
    }

    #[test]
    fn char_poly_examples() {
        // x^2 - 5x - 2 for [[1,2],[3,4]]
        let a = qm(&[&[1, 2], &[3, 4]]);
        let p = char_poly(&a, FieldSpec::Q);
        let want: Vec<Scalar> = [-2, -5, 1].iter().map(|&c| FieldSpec::Q.from_i64(c)).collect();
        assert_eq!(p, want);
        // companion of x^3 - 1
        let c = qm(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let p = char_poly(&c, FieldSpec::Q);
        let want: Vec<Scalar> = [-1, 0, 0, 1].iter().map(|&x| FieldSpec::Q.from_i64(x)).collect();
        assert_eq!(p, want);
        // works in small characteristic where division tricks fail
        let f = FieldSpec::fp(2).unwrap();
        let a2: Mat = vec![
            vec![f.from_i64(1), f.from_i64(1)],
            vec![f.from_i64(1), f.from_i64(0)],
        ];
        let p = char_poly(&a2, f);
        // x^2 + x + 1 over F2
        assert_eq!(p, vec![f.one(), f.one(), f.one()]);
    }
}
