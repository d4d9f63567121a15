//! Univariate polynomial arithmetic and factorization over the
//! supported fields.
//!
//! Polynomials are coefficient vectors, constant term first. Over a
//! prime field the factorization is distinct-degree plus equal-degree
//! splitting; over the rationals it goes through the integers with a
//! Hensel lift and subset recombination. Degrees stay small here (they
//! are bounded by representation dimensions), so clarity wins over
//! asymptotics throughout.

use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

pub type Poly = Vec<Scalar>;

pub fn trim(p: &mut Poly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn deg(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn poly_is_zero(p: &Poly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn poly_add(a: &Poly, b: &Poly, f: FieldSpec) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![f.zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    trim(&mut out);
    out
}

pub fn poly_sub(a: &Poly, b: &Poly, f: FieldSpec) -> Poly {
    let neg: Poly = b.iter().map(|c| c.neg()).collect();
    poly_add(a, &neg, f)
}

pub fn poly_mul(a: &Poly, b: &Poly, f: FieldSpec) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder; the divisor must be nonzero.
pub fn poly_divrem(a: &Poly, b: &Poly, f: FieldSpec) -> (Poly, Poly) {
    let db = deg(b).expect("division by zero polynomial");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut rem = a.clone();
    trim(&mut rem);
    let mut quot = vec![f.zero(); rem.len().saturating_sub(db)];
    while let Some(dr) = deg(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].mul(&lead_inv);
        quot[dr - db] = c.clone();
        for i in 0..=db {
            rem[dr - db + i] = rem[dr - db + i].sub(&c.mul(&b[i]));
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Monic greatest common divisor.
pub fn poly_gcd(a: &Poly, b: &Poly, f: FieldSpec) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y, f);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

pub fn make_monic(p: &mut Poly) {
    if let Some(d) = deg(p) {
        let inv = p[d].inv().expect("nonzero leading coefficient");
        for c in p.iter_mut() {
            *c = c.mul(&inv);
        }
    }
}

pub fn derivative(p: &Poly, f: FieldSpec) -> Poly {
    let mut out: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.from_i64(i as i64).mul(c))
        .collect();
    trim(&mut out);
    out
}

/// x^e mod m, by square and multiply on polynomials.
fn poly_powmod(base: &Poly, e: &BigInt, modulus: &Poly, f: FieldSpec) -> Poly {
    let mut result = vec![f.one()];
    let mut b = poly_divrem(base, modulus, f).1;
    let mut e = e.clone();
    let two = BigInt::from(2);
    while e.is_positive() {
        if (&e % &two).is_one() {
            result = poly_divrem(&poly_mul(&result, &b, f), modulus, f).1;
        }
        b = poly_divrem(&poly_mul(&b, &b, f), modulus, f).1;
        e /= &two;
    }
    result
}

/// Monic irreducible factors with multiplicities, deterministically
/// ordered by (degree, coefficient wire form).
pub fn factor(poly: &Poly, field: FieldSpec) -> Result<Vec<(Poly, usize)>> {
    let mut p = poly.clone();
    trim(&mut p);
    if deg(&p).map_or(true, |d| d == 0) {
        return Ok(Vec::new());
    }
    make_monic(&mut p);
    let mut out = match field {
        FieldSpec::Fp(_) => factor_fp(&p, field),
        FieldSpec::Q => factor_q(&p)?,
    };
    out.sort_by_key(|(f, _)| (f.len(), f.iter().map(|c| c.to_wire()).collect::<Vec<_>>()));
    Ok(out)
}

pub fn is_irreducible(poly: &Poly, field: FieldSpec) -> Result<bool> {
    let fs = factor(poly, field)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

// ---- prime fields ----

fn factor_fp(p: &Poly, field: FieldSpec) -> Vec<(Poly, usize)> {
    let FieldSpec::Fp(ch) = field else { unreachable!() };
    if deg(p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let fd = derivative(p, field);
    if poly_is_zero(&fd) {
        // p = g(x^ch) = g(x)^ch over the prime field
        let mut g = Vec::new();
        for (i, c) in p.iter().enumerate() {
            if i % ch as usize == 0 {
                g.push(c.clone());
            } else {
                debug_assert!(c.is_zero());
            }
        }
        return factor_fp(&g, field)
            .into_iter()
            .map(|(fac, m)| (fac, m * ch as usize))
            .collect();
    }
    // every factor whose multiplicity is prime to ch shows up in the
    // squarefree part; what is left after dividing those out is a
    // ch-th power, handled by recursion
    let g = poly_gcd(p, &fd, field);
    let s = poly_divrem(p, &g, field).0;
    let mut out = Vec::new();
    let mut rest = p.clone();
    for (fac, _) in factor_squarefree_fp(&s, field) {
        let mut m = 0;
        loop {
            let (q, r) = poly_divrem(&rest, &fac, field);
            if r.is_empty() && !q.is_empty() {
                rest = q;
                m += 1;
            } else {
                break;
            }
        }
        out.push((fac, m));
    }
    if deg(&rest).unwrap_or(0) > 0 {
        for (fac, m) in factor_fp(&rest, field) {
            if let Some(slot) = out.iter_mut().find(|(g, _)| *g == fac) {
                slot.1 += m;
            } else {
                out.push((fac, m));
            }
        }
    }
    out
}

/// Distinct-degree then equal-degree factorization of a squarefree
/// monic polynomial over a prime field.
fn factor_squarefree_fp(p: &Poly, field: FieldSpec) -> Vec<(Poly, usize)> {
    let FieldSpec::Fp(ch) = field else { unreachable!() };
    let mut out = Vec::new();
    let mut f = p.clone();
    let x = vec![field.zero(), field.one()];
    let mut h = x.clone(); // x^(ch^i) mod f, incrementally
    let mut i = 0usize;
    while deg(&f).unwrap_or(0) > 0 {
        i += 1;
        if 2 * i > deg(&f).unwrap() {
            out.push((f.clone(), 1));
            break;
        }
        h = poly_powmod(&h, &BigInt::from(ch), &f, field);
        let hx = poly_sub(&h, &x, field);
        let g = poly_gcd(&hx, &f, field);
        if deg(&g).unwrap_or(0) > 0 {
            for fac in equal_degree_split(&g, i, field) {
                out.push((fac, 1));
            }
            f = poly_divrem(&f, &g, field).0;
            h = poly_divrem(&h, &f, field).1;
        }
    }
    out
}

/// Splits a product of distinct irreducibles, all of degree d.
fn equal_degree_split(p: &Poly, d: usize, field: FieldSpec) -> Vec<Poly> {
    let FieldSpec::Fp(ch) = field else { unreachable!() };
    let n = deg(p).unwrap();
    if n == d {
        let mut q = p.clone();
        make_monic(&mut q);
        return vec![q];
    }
    // deterministic pseudo-random trial elements
    let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64) << 8 ^ d as u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 33
    };
    loop {
        let r: Poly = {
            let mut v: Poly = (0..n).map(|_| field.from_i64((next() % ch) as i64)).collect();
            trim(&mut v);
            if v.is_empty() {
                continue;
            }
            v
        };
        let g = if ch == 2 {
            // trace map r + r^2 + r^4 + ... over F2
            let mut t = vec![field.zero()];
            let mut cur = poly_divrem(&r, p, field).1;
            for _ in 0..d {
                t = poly_add(&t, &cur, field);
                cur = poly_divrem(&poly_mul(&cur, &cur, field), p, field).1;
            }
            poly_gcd(&t, p, field)
        } else {
            let e = (BigInt::from(ch).pow(d as u32) - BigInt::one()) / BigInt::from(2);
            let re = poly_powmod(&r, &e, p, field);
            let re1 = poly_sub(&re, &vec![field.one()], field);
            poly_gcd(&re1, p, field)
        };
        let dg = deg(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let (q, _) = poly_divrem(p, &g, field);
            let mut out = equal_degree_split(&g, d, field);
            out.extend(equal_degree_split(&q, d, field));
            return out;
        }
    }
}

// ---- rationals ----

type ZPoly = Vec<BigInt>;

fn to_zpoly_monicized(p: &Poly) -> (ZPoly, BigInt) {
    // p monic over Q; substitute x -> x/l, scale by l^(n-1) to reach a
    // monic integer polynomial, where l is the lcm of denominators
    let mut l = BigInt::one();
    for c in p {
        let Scalar::Q(r) = c else { unreachable!() };
        l = l.lcm(r.denom());
    }
    let n = p.len() - 1;
    let mut z = Vec::with_capacity(p.len());
    for (i, c) in p.iter().enumerate() {
        let Scalar::Q(r) = c else { unreachable!() };
        // coefficient of x^i gets multiplied by l^(n-i)
        let scaled = r * num::BigRational::from(l.pow((n - i) as u32));
        debug_assert!(scaled.is_integer());
        z.push(scaled.to_integer());
    }
    (z, l)
}

fn factor_q(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    let (z, l) = to_zpoly_monicized(p);
    let zq: Poly = z
        .iter()
        .map(|c| Scalar::Q(num::BigRational::from(c.clone())))
        .collect();
    // in characteristic zero every irreducible factor divides the
    // squarefree part exactly once
    let d = derivative(&zq, FieldSpec::Q);
    let g = poly_gcd(&zq, &d, FieldSpec::Q);
    let s = if deg(&g).unwrap_or(0) > 0 {
        poly_divrem(&zq, &g, FieldSpec::Q).0
    } else {
        zq.clone()
    };
    let (zs, _) = to_zpoly_monicized(&s);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for fac_z in factor_squarefree_z(&zs)? {
        let mut fac_scaled: Poly = fac_z
            .iter()
            .map(|c| Scalar::Q(num::BigRational::from(c.clone())))
            .collect();
        make_monic(&mut fac_scaled);
        // undo the x -> x/l substitution: root r of the scaled poly
        // corresponds to root r/l of p
        let fac = unscale_factor(&fac_scaled, &l);
        let mut m = 0;
        let mut cur = p.clone();
        make_monic(&mut cur);
        loop {
            let (q, r) = poly_divrem(&cur, &fac, FieldSpec::Q);
            if r.is_empty() && !q.is_empty() {
                cur = q;
                m += 1;
            } else {
                break;
            }
        }
        if m > 0 {
            out.push((fac, m));
        }
    }
    Ok(out)
}

/// Maps a monic factor g(x) of l^(n-1) p(x/l) back to a monic factor of
/// p, via g(l x) renormalized.
fn unscale_factor(g: &Poly, l: &BigInt) -> Poly {
    let mut out = Vec::with_capacity(g.len());
    for (i, c) in g.iter().enumerate() {
        let Scalar::Q(r) = c else { unreachable!() };
        out.push(Scalar::Q(r * num::BigRational::from(l.pow(i as u32))));
    }
    let mut out = out;
    make_monic(&mut out);
    out
}

/// Zassenhaus factorization of a monic squarefree integer polynomial.
fn factor_squarefree_z(f: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = f.len() - 1;
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    // choose a prime keeping f squarefree
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67];
    let mut chosen = None;
    for &pr in &primes {
        let field = FieldSpec::Fp(pr);
        let fp: Poly = f
            .iter()
            .map(|c| field.from_i64(0).add(&big_to_scalar(c, pr)))
            .collect();
        let mut fp = fp;
        trim(&mut fp);
        if deg(&fp) != Some(n) {
            continue; // cannot happen for monic f, kept for safety
        }
        let d = derivative(&fp, field);
        let g = poly_gcd(&fp, &d, field);
        if deg(&g).unwrap_or(0) == 0 {
            chosen = Some(pr);
            break;
        }
    }
    let pr = chosen.ok_or_else(|| Error::Invalid("no suitable prime for factorization".into()))?;
    let field = FieldSpec::Fp(pr);
    let fp: Poly = f.iter().map(|c| big_to_scalar(c, pr)).collect();
    let mut modular: Vec<Poly> = factor_fp(&fp, field).into_iter().map(|(g, _)| g).collect();
    modular.sort_by_key(|g| (g.len(), g.iter().map(|c| c.to_wire()).collect::<Vec<_>>()));
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }

    // coefficient bound for monic divisors (Mignotte)
    let norm: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + BigInt::one();
    let bound = BigInt::from(2).pow(n as u32) * norm * BigInt::from(2);
    let mut modulus = BigInt::from(pr);
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= BigInt::from(pr);
        k += 1;
    }
    let _ = k;

    // Hensel-lift the modular factors to the final modulus
    let zf: Vec<ZPoly> = modular
        .iter()
        .map(|g| g.iter().map(scalar_to_big).collect())
        .collect();
    let lifted = hensel_tree(f, &zf, &BigInt::from(pr), &modulus);

    // subset recombination
    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for combo in subsets(remaining.len(), size) {
            let mut prod = vec![BigInt::one()];
            for &i in &combo {
                prod = zmul_mod(&prod, &remaining[i], &modulus);
            }
            symmetrize(&mut prod, &modulus);
            if zdivides(&current, &prod) {
                current = zdiv_exact(&current, &prod);
                out.push(prod);
                let keep: Vec<ZPoly> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                remaining = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    Ok(out)
}

fn big_to_scalar(c: &BigInt, p: u64) -> Scalar {
    let v = c.mod_floor(&BigInt::from(p));
    Scalar::Fp { p, v: u64::try_from(v).unwrap() }
}

fn scalar_to_big(c: &Scalar) -> BigInt {
    match c {
        Scalar::Fp { v, .. } => BigInt::from(*v),
        Scalar::Q(r) => r.to_integer(),
    }
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

// integer polynomial helpers (coefficients reduced mod m where noted)

fn ztrim(p: &mut ZPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn zmul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (&out[i + j] + x * y).mod_floor(m);
        }
    }
    ztrim(&mut out);
    out
}

fn zadd_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    for c in out.iter_mut() {
        *c = c.mod_floor(m);
    }
    ztrim(&mut out);
    out
}

fn zsub_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let neg: ZPoly = b.iter().map(|c| -c).collect();
    zadd_mod(a, &neg, m)
}

/// Division with remainder mod m by a monic divisor.
fn zdivrem_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let mut rem: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut rem);
    let db = b.len() - 1;
    debug_assert!(b[db].is_one(), "zdivrem_mod needs a monic divisor");
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = rem[dr].clone();
        quot[dr - db] = c.clone();
        for i in 0..=db {
            rem[dr - db + i] = (&rem[dr - db + i] - &c * &b[i]).mod_floor(m);
        }
        ztrim(&mut rem);
        if rem.len() > db && rem.len() - 1 == dr {
            unreachable!("leading term must cancel");
        }
    }
    ztrim(&mut quot);
    (quot, rem)
}

/// Extended gcd of coprime-mod-p polynomials: s a + t b = 1 (mod p).
fn zbezout_mod(a: &ZPoly, b: &ZPoly, p: &BigInt) -> (ZPoly, ZPoly) {
    // work over the field Z/p via Scalar
    let pu = u64::try_from(p).expect("word-size prime");
    let field = FieldSpec::Fp(pu);
    let fa: Poly = a.iter().map(|c| big_to_scalar(c, pu)).collect();
    let fb: Poly = b.iter().map(|c| big_to_scalar(c, pu)).collect();
    let (mut r0, mut r1) = (fa, fb);
    let (mut s0, mut s1) = (vec![field.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![field.one()]);
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, field);
        let ns = poly_sub(&s0, &poly_mul(&q, &s1, field), field);
        let nt = poly_sub(&t0, &poly_mul(&q, &t1, field), field);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    // normalize r0 (a unit) to 1
    let u = r0[deg(&r0).unwrap()].inv().unwrap();
    let s: ZPoly = s0.iter().map(|c| scalar_to_big(&c.mul(&u))).collect();
    let t: ZPoly = t0.iter().map(|c| scalar_to_big(&c.mul(&u))).collect();
    (s, t)
}

/// Lifts f = g h (mod p) with g, h monic and coprime mod p to the given
/// modulus (a power of p), by repeated quadratic Hensel steps.
fn hensel_pair(f: &ZPoly, g: &ZPoly, h: &ZPoly, p: &BigInt, target: &BigInt) -> (ZPoly, ZPoly) {
    let (mut s, mut t) = zbezout_mod(g, h, p);
    let mut g = g.clone();
    let mut h = h.clone();
    let mut m = p.clone();
    while &m < target {
        // both m and target are powers of p, so the cap divides m^2
        let m2 = &m * &m;
        let mm = if &m2 > target { target.clone() } else { m2 };
        // e = f - g h mod mm
        let e = zsub_mod(f, &zmul_mod(&g, &h, &mm), &mm);
        let se = zmul_mod(&s, &e, &mm);
        let (q, r) = zdivrem_mod(&se, &h, &mm);
        let g_new = zadd_mod(&zadd_mod(&g, &zmul_mod(&t, &e, &mm), &mm), &zmul_mod(&q, &g, &mm), &mm);
        let h_new = zadd_mod(&h, &r, &mm);
        // lift the Bezout pair
        let b = zsub_mod(
            &zadd_mod(&zmul_mod(&s, &g_new, &mm), &zmul_mod(&t, &h_new, &mm), &mm),
            &vec![BigInt::one()],
            &mm,
        );
        let sb = zmul_mod(&s, &b, &mm);
        let (c, d) = zdivrem_mod(&sb, &h_new, &mm);
        s = zsub_mod(&s, &d, &mm);
        t = zsub_mod(
            &t,
            &zadd_mod(&zmul_mod(&t, &b, &mm), &zmul_mod(&c, &g_new, &mm), &mm),
            &mm,
        );
        g = g_new;
        h = h_new;
        m = mm;
    }
    (g, h)
}

/// Lifts a full list of monic factors of f from mod p to mod target.
fn hensel_tree(f: &ZPoly, factors: &[ZPoly], p: &BigInt, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let mut g: ZPoly = f.iter().map(|c| c.mod_floor(target)).collect();
        ztrim(&mut g);
        return vec![g];
    }
    let mid = factors.len() / 2;
    let mut gp = vec![BigInt::one()];
    for fac in &factors[..mid] {
        gp = zmul_mod(&gp, fac, p);
    }
    let mut hp = vec![BigInt::one()];
    for fac in &factors[mid..] {
        hp = zmul_mod(&hp, fac, p);
    }
    let (g, h) = hensel_pair(f, &gp, &hp, p, target);
    let mut out = hensel_tree(&g, &factors[..mid], p, target);
    out.extend(hensel_tree(&h, &factors[mid..], p, target));
    out
}

fn symmetrize(p: &mut ZPoly, m: &BigInt) {
    let half = m / 2;
    for c in p.iter_mut() {
        let r = c.mod_floor(m);
        *c = if r > half { r - m } else { r };
    }
}

fn zdivides(a: &ZPoly, b: &ZPoly) -> bool {
    if b.is_empty() {
        return false;
    }
    zdiv_checked(a, b).is_some()
}

fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> ZPoly {
    zdiv_checked(a, b).expect("exact division")
}

fn zdiv_checked(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    // monic b: integer long division, fails on nonzero remainder
    let db = b.len() - 1;
    if !b[db].is_one() {
        return None;
    }
    let mut rem = a.clone();
    ztrim(&mut rem);
    if rem.len() < b.len() {
        return if rem.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = rem[dr].clone();
        quot[dr - db] = c.clone();
        for i in 0..=db {
            let x = &c * &b[i];
            rem[dr - db + i] -= x;
        }
        ztrim(&mut rem);
    }
    if rem.is_empty() {
        Some(quot)
    } else {
        None
    }
}
