//! Exact univariate polynomial factorization over the rationals.
//!
//! Used to split a non-scalar centroid element's minimal polynomial so that
//! the kernel of an irreducible factor yields a proper ideal. The pipeline is
//! classical: squarefree decomposition (Yun), reduction to a monic integer
//! polynomial, factorization modulo a small prime (Berlekamp), Hensel lifting
//! to a modulus past the Mignotte bound, and subset recombination.

use crate::linalg::{Matrix, Scalar};
use num::bigint::BigInt;
use num::integer::Integer;
use num::{BigRational, One, Zero};

/// Monic polynomial over ℚ, coefficients in ascending degree order.
pub type QPoly = Vec<Scalar>;

// ---------------------------------------------------------------------------
// rational polynomial arithmetic
// ---------------------------------------------------------------------------

fn q_trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn q_degree(p: &[Scalar]) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

fn q_is_zero(p: &[Scalar]) -> bool {
    p.is_empty()
}

#[cfg(test)]
fn q_mul(a: &[Scalar], b: &[Scalar]) -> QPoly {
    if q_is_zero(a) || q_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(&mut out);
    out
}

fn q_sub(a: &[Scalar], b: &[Scalar]) -> QPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Scalar::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    q_trim(&mut out);
    out
}

fn q_derivative(p: &[Scalar]) -> QPoly {
    let mut out: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
        .collect();
    q_trim(&mut out);
    out
}

/// Division with remainder; the divisor must be nonzero.
fn q_divrem(a: &[Scalar], b: &[Scalar]) -> (QPoly, QPoly) {
    assert!(!q_is_zero(b), "division by the zero polynomial");
    let mut rem = a.to_vec();
    q_trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Scalar::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap() / &lead;
        quot[shift] = coef.clone();
        for (i, c) in b.iter().enumerate() {
            let delta = c * &coef;
            rem[shift + i] -= delta;
        }
        q_trim(&mut rem);
    }
    q_trim(&mut quot);
    (quot, rem)
}

fn q_div_exact(a: &[Scalar], b: &[Scalar]) -> QPoly {
    let (q, r) = q_divrem(a, b);
    assert!(q_is_zero(&r), "inexact polynomial division");
    q
}

fn q_monic(p: &[Scalar]) -> QPoly {
    if q_is_zero(p) {
        return Vec::new();
    }
    let lead = p.last().unwrap().clone();
    p.iter().map(|c| c / &lead).collect()
}

/// Monic gcd by the Euclidean algorithm; gcd(p, 0) = monic p.
fn q_gcd(a: &[Scalar], b: &[Scalar]) -> QPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    q_trim(&mut x);
    q_trim(&mut y);
    while !q_is_zero(&y) {
        let (_, r) = q_divrem(&x, &y);
        x = y;
        y = r;
    }
    q_monic(&x)
}

// ---------------------------------------------------------------------------
// integer polynomial arithmetic
// ---------------------------------------------------------------------------

type ZPoly = Vec<BigInt>;

fn z_trim(p: &mut ZPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(&mut out);
    out
}

/// Exact division by a monic divisor, if it divides.
fn z_div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    assert!(b.last().is_some_and(One::is_one), "divisor must be monic");
    let mut rem = a.to_vec();
    z_trim(&mut rem);
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < b.len() {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap().clone();
        quot[shift] = coef.clone();
        for (i, c) in b.iter().enumerate() {
            let delta = c * &coef;
            rem[shift + i] -= delta;
        }
        z_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    if rem.is_empty() {
        z_trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

fn z_reduce_mod(p: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = p.iter().map(|c| c.mod_floor(m)).collect();
    z_trim(&mut out);
    out
}

fn z_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    z_reduce_mod(&z_mul(a, b), m)
}

/// Remainder of `a` modulo a monic divisor, coefficients reduced mod `m`.
fn z_rem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    assert!(b.last().is_some_and(One::is_one));
    let mut rem = z_reduce_mod(a, m);
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap().clone();
        for (i, c) in b.iter().enumerate() {
            let delta = c * &coef;
            rem[shift + i] -= delta;
        }
        rem = z_reduce_mod(&rem, m);
    }
    rem
}

/// Shifts coefficients to the symmetric range (−m/2, m/2].
fn z_center_mod(p: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / BigInt::from(2);
    let mut out: ZPoly = p
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    z_trim(&mut out);
    out
}

// ---------------------------------------------------------------------------
// arithmetic in F_p[x] for a small odd prime p
// ---------------------------------------------------------------------------

type FpPoly = Vec<u64>;

fn fp_trim(p: &mut FpPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn fp_pow_scalar(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow_scalar(a, p - 2, p)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    fp_trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - b.len() + 1];
    let lead_inv = fp_inv(*b.last().unwrap(), p);
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap() * lead_inv % p;
        quot[shift] = coef;
        for (i, &c) in b.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] + p - c * coef % p) % p;
        }
        fp_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    fp_trim(&mut quot);
    (quot, rem)
}

fn fp_monic(poly: &[u64], p: u64) -> FpPoly {
    if poly.is_empty() {
        return Vec::new();
    }
    let inv = fp_inv(*poly.last().unwrap(), p);
    poly.iter().map(|&c| c * inv % p).collect()
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = fp_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// Extended Euclid: returns (s, t) with s·a + t·b = 1; a, b must be coprime.
fn fp_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    fp_trim(&mut r0);
    fp_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let next_s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let next_t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = next_s;
        t0 = t1;
        t1 = next_t;
    }
    assert_eq!(r0.len(), 1, "inputs must be coprime");
    let inv = fp_inv(r0[0], p);
    let scale = |poly: &[u64]| poly.iter().map(|&c| c * inv % p).collect();
    (scale(&s0), scale(&t0))
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] = (out[i] + p - y) % p;
    }
    fp_trim(&mut out);
    out
}

fn fp_derivative(a: &[u64], p: u64) -> FpPoly {
    let mut out: FpPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    fp_trim(&mut out);
    out
}

/// x^e mod f over F_p.
fn fp_x_pow_mod(e: u64, f: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let mut base: FpPoly = vec![0, 1];
    base = fp_divrem(&base, f, p).1;
    let mut exp = e;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_divrem(&fp_mul(&acc, &base, p), f, p).1;
        }
        base = fp_divrem(&fp_mul(&base, &base, p), f, p).1;
        exp >>= 1;
    }
    acc
}

/// Gaussian elimination over F_p: basis of the kernel of a square matrix.
fn fp_kernel_basis(mut mat: Vec<Vec<u64>>, n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivot_of_col = vec![usize::MAX; n];
    let mut row = 0;
    for col in 0..n {
        let Some(pivot) = (row..n).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(row, pivot);
        let inv = fp_inv(mat[row][col], p);
        for c in 0..n {
            mat[row][c] = mat[row][c] * inv % p;
        }
        for r in 0..n {
            if r != row && mat[r][col] != 0 {
                let factor = mat[r][col];
                for c in 0..n {
                    mat[r][c] = (mat[r][c] + p - factor * mat[row][c] % p) % p;
                }
            }
        }
        pivot_of_col[col] = row;
        row += 1;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_of_col[free] != usize::MAX {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for col in 0..n {
            let r = pivot_of_col[col];
            if r != usize::MAX {
                v[col] = (p - mat[r][free] % p) % p;
            }
        }
        basis.push(v);
    }
    basis
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(f: &[u64], p: u64) -> Vec<FpPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Frobenius matrix: column i holds x^{p·i} mod f.
    let mut frob = vec![vec![0u64; n]; n];
    for i in 0..n {
        let col = fp_x_pow_mod(p * i as u64, f, p);
        for (j, &c) in col.iter().enumerate() {
            frob[j][i] = c;
        }
    }
    for (i, row) in frob.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    let basis = fp_kernel_basis(frob, n, p);
    let target = basis.len();
    let mut factors: Vec<FpPoly> = vec![f.to_vec()];
    if target == 1 {
        return factors;
    }
    for v in &basis {
        let mut poly = v.clone();
        fp_trim(&mut poly);
        if poly.len() <= 1 {
            continue; // constant basis vector cannot separate factors
        }
        for c in 0..p {
            if factors.len() == target {
                return factors;
            }
            let shifted = fp_sub(&poly, &[c], p);
            let mut next = Vec::new();
            for g in factors {
                if g.len() <= 2 {
                    next.push(g);
                    continue;
                }
                let d = fp_gcd(&g, &shifted, p);
                if d.len() > 1 && d.len() < g.len() {
                    let (q, _) = fp_divrem(&g, &d, p);
                    next.push(fp_monic(&q, p));
                    next.push(d);
                } else {
                    next.push(g);
                }
            }
            factors = next;
        }
    }
    factors
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

/// Lifts f ≡ g·h (mod p) with t·h ≡ 1 (mod g, mod p) to f ≡ G·H
/// (mod target), where target is a power of p; both factors stay monic.
fn hensel_pair(
    f: &[BigInt],
    g0: &[u64],
    h0: &[u64],
    t0: &[u64],
    p: u64,
    target: &BigInt,
) -> (ZPoly, ZPoly) {
    let pz = BigInt::from(p);
    let to_z = |poly: &[u64]| -> ZPoly { poly.iter().map(|&c| BigInt::from(c)).collect() };
    let mut g = to_z(g0);
    let mut h = to_z(h0);
    let t = to_z(t0);
    let mut modulus = pz.clone();
    while &modulus < target {
        // e = (f − g·h)/modulus  (exact), then correct g, h modulo p
        let mut e = f.to_vec();
        let gh = z_mul(&g, &h);
        if e.len() < gh.len() {
            e.resize(gh.len(), BigInt::zero());
        }
        for (i, c) in gh.iter().enumerate() {
            e[i] -= c;
        }
        let q: ZPoly = e.iter().map(|c| c / &modulus).collect();
        let q = z_reduce_mod(&q, &pz);
        // a·h + b·g ≡ q (mod p) with deg a < deg g
        let a = z_rem_monic_mod(&z_mul(&t, &q), &g, &pz);
        let num = {
            let ah = z_mul(&a, &h);
            let mut diff = q.clone();
            if diff.len() < ah.len() {
                diff.resize(ah.len(), BigInt::zero());
            }
            for (i, c) in ah.iter().enumerate() {
                diff[i] -= c;
            }
            z_reduce_mod(&diff, &pz)
        };
        let b = fp_div_exact_z(&num, &g, &pz);
        for (i, c) in a.iter().enumerate() {
            if i < g.len() {
                g[i] += &modulus * c;
            }
        }
        for (i, c) in b.iter().enumerate() {
            if i < h.len() {
                h[i] += &modulus * c;
            }
        }
        modulus *= &pz;
        g = z_reduce_mod(&g, &modulus);
        h = z_reduce_mod(&h, &modulus);
        // keep monic representatives
        *g.last_mut().unwrap() = BigInt::one();
        *h.last_mut().unwrap() = BigInt::one();
    }
    (g, h)
}

/// Exact division in F_p[x] with BigInt-encoded operands (divisor monic).
fn fp_div_exact_z(a: &[BigInt], b: &[BigInt], p: &BigInt) -> ZPoly {
    let mut rem = z_reduce_mod(a, p);
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(b.len()) + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap().clone();
        quot[shift] = coef.clone();
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= c * &coef;
        }
        rem = z_reduce_mod(&rem, p);
    }
    debug_assert!(rem.is_empty(), "inexact division mod p");
    z_trim(&mut quot);
    quot
}

/// Lifts the full modular factorization of a monic f to the target modulus.
fn hensel_tree(f: &[BigInt], factors: &[FpPoly], p: u64, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![z_reduce_mod(f, target)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod = |side: &[FpPoly]| {
        side.iter()
            .fold(vec![1u64], |acc, g| fp_mul(&acc, g, p))
    };
    let g0 = prod(left);
    let h0 = prod(right);
    let (_, t) = fp_ext_gcd(&g0, &h0, p);
    let (g, h) = hensel_pair(f, &g0, &h0, &t, p, target);
    let mut out = hensel_tree(&g, left, p, target);
    out.extend(hensel_tree(&h, right, p, target));
    out
}

// ---------------------------------------------------------------------------
// Zassenhaus driver
// ---------------------------------------------------------------------------

fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn z_to_fp(f: &[BigInt], p: u64) -> FpPoly {
    let pz = BigInt::from(p);
    let mut out: FpPoly = f
        .iter()
        .map(|c| u64::try_from(c.mod_floor(&pz)).expect("residue fits in u64"))
        .collect();
    fp_trim(&mut out);
    out
}

/// Mignotte-style bound: coefficients of any monic factor of monic f are
/// bounded by 2^deg(f) · ‖f‖₂.
fn factor_bound(f: &[BigInt]) -> BigInt {
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = num::integer::Roots::sqrt(&norm_sq) + 1;
    norm << (f.len() - 1)
}

/// Factors a monic squarefree integer polynomial into monic irreducibles.
fn factor_squarefree_monic_z(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // pick a prime keeping f squarefree mod p
    let mut p = 3u64;
    loop {
        while !is_small_prime(p) {
            p += 2;
        }
        let fp = z_to_fp(f, p);
        if fp.len() == f.len() {
            let deriv = fp_derivative(&fp, p);
            if !deriv.is_empty() && fp_gcd(&fp, &deriv, p).len() == 1 {
                break;
            }
        }
        p += 2;
    }
    let fp = z_to_fp(f, p);
    let mut modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    modular.sort();
    let bound = factor_bound(f);
    let mut target = BigInt::from(p);
    let threshold = BigInt::from(2) * &bound + 1;
    while target < threshold {
        target *= BigInt::from(p);
    }
    let lifted = hensel_tree(f, &modular, p, &target);

    // subset recombination: test centered products for exact division
    let mut pool: Vec<ZPoly> = lifted;
    let mut remaining = f.to_vec();
    let mut result = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        let masks = combinations(pool.len(), size);
        for mask in masks {
            let mut prod: ZPoly = vec![BigInt::one()];
            for (i, item) in pool.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    prod = z_mul_mod(&prod, item, &target);
                }
            }
            let candidate = z_center_mod(&prod, &target);
            if candidate.last().map(|c| !c.is_one()).unwrap_or(true) {
                continue;
            }
            if let Some(quotient) = z_div_exact_monic(&remaining, &candidate) {
                result.push(candidate);
                remaining = quotient;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) == 0)
                    .map(|(_, g)| g)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.len() > 1 {
        result.push(remaining);
    }
    result
}

/// All bitmasks of `n` bits with exactly `k` set, ascending.
fn combinations(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push(mask);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// public interface
// ---------------------------------------------------------------------------

/// Minimal polynomial of a square matrix, monic in ascending coefficients.
pub fn minimal_polynomial(m: &Matrix) -> QPoly {
    assert!(m.is_square(), "minimal polynomial needs a square matrix");
    let n = m.rows();
    let len = n * n;
    let flatten = |mat: &Matrix| -> Vec<Scalar> {
        (0..n)
            .flat_map(|i| mat.row(i).to_vec())
            .collect()
    };
    if n == 0 {
        return vec![Scalar::one()]; // empty matrix: minimal polynomial is 1
    }
    let mut powers = vec![flatten(&Matrix::identity(n))];
    let mut current = Matrix::identity(n);
    for k in 1..=n {
        current = current.mul(m);
        let target = flatten(&current);
        let stacked = Matrix::from_fn(len, k, |r, c| powers[c][r].clone());
        if let Some(coeffs) = stacked.solve(&target) {
            let mut poly: QPoly = coeffs.iter().map(|c| -c.clone()).collect();
            poly.push(Scalar::one());
            return poly;
        }
        powers.push(target);
    }
    unreachable!("minimal polynomial has degree at most the dimension");
}

/// Squarefree decomposition of a monic rational polynomial (Yun's algorithm):
/// pairwise-coprime monic squarefree parts with their multiplicities.
pub fn squarefree_parts(poly: &[Scalar]) -> Vec<(QPoly, usize)> {
    let f = q_monic(poly);
    if f.len() <= 1 {
        return Vec::new();
    }
    if q_degree(&f) == 1 {
        return vec![(f, 1)];
    }
    let df = q_derivative(&f);
    let u = q_gcd(&f, &df);
    if q_degree(&u) == 0 {
        return vec![(f, 1)];
    }
    let mut parts = Vec::new();
    let mut v = q_div_exact(&f, &u);
    let mut w = q_sub(&q_div_exact(&df, &u), &q_derivative(&v));
    let mut i = 1;
    while q_degree(&v) > 0 {
        let h = q_gcd(&v, &w);
        if q_degree(&h) > 0 {
            parts.push((h.clone(), i));
        }
        v = q_div_exact(&v, &h);
        w = q_sub(&q_div_exact(&w, &h), &q_derivative(&v));
        i += 1;
    }
    parts
}

/// Factors a monic rational polynomial into monic irreducible factors with
/// multiplicities, sorted by (degree, coefficients) for determinism.
pub fn factor_monic(poly: &[Scalar]) -> Vec<(QPoly, usize)> {
    let mut result: Vec<(QPoly, usize)> = Vec::new();
    for (part, multiplicity) in squarefree_parts(poly) {
        for factor in factor_squarefree_monic_q(&part) {
            result.push((factor, multiplicity));
        }
    }
    result.sort_by(|a, b| {
        (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1))
    });
    result
}

/// Factors a monic squarefree rational polynomial into monic irreducibles.
fn factor_squarefree_monic_q(f: &[Scalar]) -> Vec<QPoly> {
    let n = q_degree(f);
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // substitute x -> x/D and scale by D^n to get a monic integer polynomial
    let d: BigInt = f
        .iter()
        .map(|c| c.denom().clone())
        .fold(BigInt::one(), |acc, q| acc.lcm(&q));
    let fz: ZPoly = f
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let scale = num::pow::pow(d.clone(), n - i);
            let scaled = c * BigRational::from(scale);
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    let factors_z = factor_squarefree_monic_z(&fz);
    // substitute back x -> D·x and renormalize to monic over ℚ
    factors_z
        .into_iter()
        .map(|g| {
            let deg = g.len() - 1;
            g.into_iter()
                .enumerate()
                .map(|(i, c)| {
                    BigRational::from(c)
                        * BigRational::new(num::pow::pow(d.clone(), i), num::pow::pow(d.clone(), deg))
                })
                .collect::<QPoly>()
        })
        .map(|g| q_monic(&g))
        .collect()
}

/// Evaluates a rational polynomial at a square matrix.
pub fn evaluate_at_matrix(poly: &[Scalar], m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::zero(n, n);
    let mut power = Matrix::identity(n);
    for (i, c) in poly.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&power.scale(c));
        }
        if i + 1 < poly.len() {
            power = power.mul(m);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    fn qp(coeffs: &[i64]) -> QPoly {
        coeffs.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn minimal_polynomial_of_diagonal_matrix() {
        let m = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(2)],
        ]);
        // (x-1)(x-2) = x² - 3x + 2
        assert_eq!(minimal_polynomial(&m), qp(&[2, -3, 1]));
    }

    #[test]
    fn minimal_polynomial_of_jordan_block() {
        let m = Matrix::from_rows(vec![vec![int(3), int(1)], vec![int(0), int(3)]]);
        // (x-3)² = x² - 6x + 9
        assert_eq!(minimal_polynomial(&m), qp(&[9, -6, 1]));
    }

    #[test]
    fn minimal_polynomial_of_identity_and_zero() {
        assert_eq!(minimal_polynomial(&Matrix::identity(4)), qp(&[-1, 1]));
        assert_eq!(minimal_polynomial(&Matrix::zero(3, 3)), qp(&[0, 1]));
    }

    #[test]
    fn factors_difference_of_squares() {
        let factors = factor_monic(&qp(&[-1, 0, 1]));
        assert_eq!(factors, vec![(qp(&[-1, 1]), 1), (qp(&[1, 1]), 1)]);
    }

    #[test]
    fn keeps_irreducible_quadratic_whole() {
        let factors = factor_monic(&qp(&[1, 0, 1]));
        assert_eq!(factors, vec![(qp(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn recombination_resists_modular_splits() {
        // x⁴ − 10x² + 1 is irreducible over ℚ but reducible mod every prime
        let factors = factor_monic(&qp(&[1, 0, -10, 0, 1]));
        assert_eq!(factors, vec![(qp(&[1, 0, -10, 0, 1]), 1)]);
    }

    #[test]
    fn splits_product_of_irreducible_quadratics() {
        // (x² − 2)(x² − 3) = x⁴ − 5x² + 6
        let factors = factor_monic(&qp(&[6, 0, -5, 0, 1]));
        assert_eq!(
            factors,
            vec![(qp(&[-3, 0, 1]), 1), (qp(&[-2, 0, 1]), 1)]
        );
    }

    #[test]
    fn factors_sixth_cyclotomic_product() {
        // x⁶ − 1 = (x−1)(x+1)(x²−x+1)(x²+x+1)
        let factors = factor_monic(&qp(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(
            factors,
            vec![
                (qp(&[-1, 1]), 1),
                (qp(&[1, 1]), 1),
                (qp(&[1, -1, 1]), 1),
                (qp(&[1, 1, 1]), 1),
            ]
        );
    }

    #[test]
    fn tracks_multiplicities() {
        // (x−1)²(x+2)³
        let square = q_mul(&qp(&[-1, 1]), &qp(&[-1, 1]));
        let cube = q_mul(&q_mul(&qp(&[2, 1]), &qp(&[2, 1])), &qp(&[2, 1]));
        let f = q_mul(&square, &cube);
        let factors = factor_monic(&f);
        assert_eq!(factors, vec![(qp(&[-1, 1]), 2), (qp(&[2, 1]), 3)]);
    }

    #[test]
    fn handles_rational_coefficients() {
        // x² − 1/4 = (x − 1/2)(x + 1/2)
        let f = vec![frac(-1, 4), int(0), int(1)];
        let factors = factor_monic(&f);
        assert_eq!(
            factors,
            vec![
                (vec![frac(-1, 2), int(1)], 1),
                (vec![frac(1, 2), int(1)], 1)
            ]
        );
    }

    #[test]
    fn evaluates_polynomial_at_matrix() {
        let m = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
        // m satisfies x², and x²+1 evaluates to the identity
        assert!(evaluate_at_matrix(&qp(&[0, 0, 1]), &m).is_zero());
        assert_eq!(evaluate_at_matrix(&qp(&[1, 0, 1]), &m), Matrix::identity(2));
    }

    #[test]
    fn minimal_polynomial_annihilates_its_matrix() {
        let m = Matrix::from_rows(vec![
            vec![int(0), int(4), int(0)],
            vec![int(4), int(0), int(0)],
            vec![int(0), int(0), int(8)],
        ]);
        let p = minimal_polynomial(&m);
        assert!(evaluate_at_matrix(&p, &m).is_zero());
        // eigenvalues 4, −4, 8 are distinct: degree 3
        assert_eq!(p.len(), 4);
    }
}
