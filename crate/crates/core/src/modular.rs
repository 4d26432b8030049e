//! Multi-modular exact solving of integer linear systems.
//!
//! The system is solved modulo enough 61-bit primes to exceed the Hadamard
//! bound on every Cramer numerator and on the determinant, and the integers
//! are rebuilt by Garner's mixed-radix reconstruction. Work per prime is
//! machine arithmetic, so the cost grows like `n³` times the bit size instead
//! of the big-integer cost of fraction-free elimination.

use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

#[inline]
fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_table() -> &'static Mutex<Vec<u64>> {
    static TABLE: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(Vec::new()))
}

/// The `count` largest primes below `2^61`, in decreasing order.
fn primes(count: usize) -> Vec<u64> {
    let mut table = prime_table().lock().unwrap_or_else(|e| e.into_inner());
    let mut next = table.last().map_or(1u64 << 61, |&p| p) - 1;
    while table.len() < count {
        if is_prime(next) {
            table.push(next);
        }
        next -= 1;
    }
    table[..count].to_vec()
}

/// Residue of `v` modulo `p` in `[0, p)`.
#[cfg(test)]
fn residue(v: &BigInt, p: u64) -> u64 {
    Limbs::new(v).residue(p)
}

/// Sign and base-`2^64` digits of an integer, split once and reduced modulo
/// many primes.
struct Limbs {
    negative: bool,
    digits: Vec<u64>,
}

impl Limbs {
    fn new(v: &BigInt) -> Self {
        let (sign, digits) = v.to_u64_digits();
        Limbs {
            negative: sign == Sign::Minus,
            digits,
        }
    }

    fn matrix(rows: &[Vec<BigInt>]) -> Vec<Vec<Limbs>> {
        rows.iter().map(|row| row.iter().map(Limbs::new).collect()).collect()
    }

    fn residue(&self, p: u64) -> u64 {
        let (sign, digits) = (self.negative, &self.digits);
        let r = Self::fold(digits, p);
        if sign && r != 0 {
            p - r
        } else {
            r
        }
    }

    fn fold(digits: &[u64], p: u64) -> u64 {
        if let [d] = digits {
            return d % p;
        }
        let mut r: u64 = 0;
    for &d in digits.iter().rev() {
        r = ((((r as u128) << 64) | d as u128) % p as u128) as u64;
    }
    r
    }
}

fn log2_norm(v: impl Iterator<Item = u64>, len: usize) -> f64 {
    // ||v|| <= sqrt(len) * max|v_i|
    let max_bits = v.max().unwrap_or(0) as f64;
    max_bits + 0.5 * (len.max(1) as f64).log2()
}

/// Solution of the square system `A X = R` in Cramer form.
pub(crate) struct CramerSolution {
    pub det: BigInt,
    /// `det · A⁻¹ R`, row-major with one column per right-hand side.
    pub numerators: Vec<Vec<BigInt>>,
}

/// Exact solution of `A X = R` for an `n x n` integer `A` and `n x m`
/// integer `R`; `None` when `A` is singular.
pub(crate) fn solve(a: &[Vec<BigInt>], r: &[Vec<BigInt>]) -> Option<CramerSolution> {
    let n = a.len();
    let m = r.first().map_or(0, Vec::len);
    if n == 0 {
        return Some(CramerSolution {
            det: BigInt::one(),
            numerators: Vec::new(),
        });
    }
    // Hadamard bound on det(A) and on every det(A with a column replaced)
    let col_bits: Vec<f64> = (0..n)
        .map(|j| log2_norm(a.iter().map(|row| row[j].bits()), n))
        .collect();
    let rhs_bits = (0..m)
        .map(|k| log2_norm(r.iter().map(|row| row[k].bits()), n))
        .fold(0.0f64, f64::max);
    let bound: f64 = col_bits.iter().map(|&b| b.max(rhs_bits)).sum::<f64>() + 2.0;
    let needed = (bound / 60.0).ceil() as usize + 1;

    let mut used: Vec<u64> = Vec::with_capacity(needed);
    let mut det_res: Vec<u64> = Vec::with_capacity(needed);
    let mut num_res: Vec<Vec<u64>> = Vec::with_capacity(needed);
    let mut skipped_bits = 0.0f64;
    let (a, r) = (Limbs::matrix(a), Limbs::matrix(r));
    let mut pool = primes(needed);
    let mut next = 0usize;
    while used.len() < needed {
        if next == pool.len() {
            pool = primes(pool.len() + 8);
        }
        let p = pool[next];
        next += 1;
        match solve_mod(&a, &r, p) {
            Some((d, x)) => {
                used.push(p);
                det_res.push(d);
                num_res.push(x);
            }
            None => {
                skipped_bits += 60.0;
                if skipped_bits > bound {
                    return None;
                }
            }
        }
    }
    let garner = Garner::new(&used);
    let det = garner.reconstruct(&det_res);
    if det.is_zero() {
        return None;
    }
    let numerators = (0..n)
        .map(|i| {
            (0..m)
                .map(|k| {
                    let res: Vec<u64> = num_res.iter().map(|x| x[i * m + k]).collect();
                    garner.reconstruct(&res)
                })
                .collect()
        })
        .collect();
    Some(CramerSolution { det, numerators })
}

/// Montgomery arithmetic modulo an odd `p < 2^62`.
struct Mont {
    p: u64,
    /// `-p⁻¹ mod 2^64`.
    neg_inv: u64,
    /// `2^128 mod p`.
    r2: u64,
}

impl Mont {
    fn new(p: u64) -> Self {
        let mut x: u64 = 1;
        for _ in 0..6 {
            x = x.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(x)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        Mont {
            p,
            neg_inv: x.wrapping_neg(),
            r2: mul(r, r, p),
        }
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    fn to_mont(&self, a: u64) -> u64 {
        self.mul(a, self.r2)
    }

    fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    /// Inverse of a Montgomery-form value, in Montgomery form.
    fn inv(&self, mut a: u64) -> u64 {
        let mut e = self.p - 2;
        let mut r = self.to_mont(1);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
}

/// `(det A mod p, det · A⁻¹R mod p)` flattened row-major, or `None` when `A`
/// is singular modulo `p`.
fn solve_mod(a: &[Vec<Limbs>], r: &[Vec<Limbs>], p: u64) -> Option<(u64, Vec<u64>)> {
    let n = a.len();
    let m = r.first().map_or(0, Vec::len);
    let w = n + m;
    let mt = Mont::new(p);
    let mut t: Vec<u64> = Vec::with_capacity(n * w);
    for i in 0..n {
        t.extend(a[i].iter().map(|v| mt.to_mont(v.residue(p))));
        t.extend(r[i].iter().map(|v| mt.to_mont(v.residue(p))));
    }
    let mut det = mt.to_mont(1);
    // forward elimination to unit upper triangular form
    for k in 0..n {
        let piv = (k..n).find(|&i| t[i * w + k] != 0)?;
        if piv != k {
            for j in 0..w {
                t.swap(piv * w + j, k * w + j);
            }
            det = p - det;
        }
        let pk = t[k * w + k];
        det = mt.mul(det, pk);
        let pinv = mt.inv(pk);
        for j in k..w {
            t[k * w + j] = mt.mul(t[k * w + j], pinv);
        }
        let (head, tail) = t.split_at_mut((k + 1) * w);
        let pivot_row = &head[k * w..];
        for row in tail.chunks_mut(w) {
            let f = row[k];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[k..].iter_mut().zip(&pivot_row[k..w]) {
                let s = mt.mul(f, y);
                *x = if *x >= s { *x - s } else { *x + p - s };
            }
        }
    }
    // back substitution on the right-hand block
    for k in (0..n).rev() {
        let (head, tail) = t.split_at_mut(k * w);
        let src = &tail[..w];
        for row in head.chunks_mut(w) {
            let f = row[k];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[n..].iter_mut().zip(&src[n..]) {
                let s = mt.mul(f, y);
                *x = if *x >= s { *x - s } else { *x + p - s };
            }
        }
    }
    let x = (0..n)
        .flat_map(|i| (0..m).map(move |k| (i, k)))
        .map(|(i, k)| mt.from_mont(mt.mul(t[i * w + n + k], det)))
        .collect();
    Some((mt.from_mont(det), x))
}

struct Garner {
    primes: Vec<u64>,
    monts: Vec<Mont>,
    /// `radix[i][j] = p_j mod p_i` in Montgomery form modulo `p_i`, `j < i`.
    radix: Vec<Vec<u64>>,
    /// `(Π_{j<i} p_j)⁻¹ mod p_i` in Montgomery form.
    prefix_inv: Vec<u64>,
    modulus: BigInt,
    half: BigInt,
}

impl Garner {
    fn new(primes: &[u64]) -> Self {
        let monts: Vec<Mont> = primes.iter().map(|&p| Mont::new(p)).collect();
        let radix: Vec<Vec<u64>> = (0..primes.len())
            .map(|i| primes[..i].iter().map(|&q| monts[i].to_mont(q % primes[i])).collect())
            .collect();
        let prefix_inv = (0..primes.len())
            .map(|i| {
                let mt = &monts[i];
                let prod = radix[i].iter().fold(mt.to_mont(1), |acc, &q| mt.mul(acc, q));
                mt.inv(prod)
            })
            .collect();
        let modulus = primes.iter().fold(BigInt::one(), |acc, &q| acc * q);
        let half = &modulus >> 1;
        Garner {
            primes: primes.to_vec(),
            monts,
            radix,
            prefix_inv,
            modulus,
            half,
        }
    }

    /// Integer in `(-M/2, M/2]` with the given residues.
    fn reconstruct(&self, res: &[u64]) -> BigInt {
        let k = self.primes.len();
        let mut digits = vec![0u64; k];
        for i in 0..k {
            let (p, mt) = (self.primes[i], &self.monts[i]);
            // value of the partial mixed-radix number modulo p; multiplying
            // by a Montgomery-form factor yields a plain residue
            let mut t = 0u64;
            for j in (0..i).rev() {
                t = mt.mul(t, self.radix[i][j]) + digits[j] % p;
                if t >= p {
                    t -= p;
                }
            }
            let r = res[i] % p;
            let diff = if r >= t { r - t } else { r + p - t };
            digits[i] = mt.mul(diff, self.prefix_inv[i]);
        }
        let mut x = BigInt::zero();
        for i in (0..k).rev() {
            x = x * self.primes[i] + digits[i];
        }
        if x > self.half {
            x - &self.modulus
        } else {
            x
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn primes_are_prime_and_decreasing() {
        let ps = primes(5);
        assert_eq!(ps[0], (1u64 << 61) - 1);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime(p)));
        assert!(!is_prime(561));
        assert!(!is_prime(((1u64 << 31) - 1) * ((1u64 << 13) - 1)));
    }

    #[test]
    fn residues_of_negative_and_large_values() {
        let p = 101;
        assert_eq!(residue(&BigInt::from(-1), p), 100);
        let big: BigInt = BigInt::from(1u64 << 63) * BigInt::from(1u64 << 63) + 5;
        let expect = (&big % BigInt::from(p)).to_u64_digits().1.first().copied().unwrap_or(0);
        assert_eq!(residue(&big, p), expect);
    }

    #[test]
    fn montgomery_matches_plain_arithmetic() {
        for &p in &primes(3) {
            let mt = Mont::new(p);
            for (a, b) in [(0u64, 5u64), (1, 1), (p - 1, p - 1), (123_456_789, 987_654_321_012)] {
                let got = mt.from_mont(mt.mul(mt.to_mont(a), mt.to_mont(b)));
                assert_eq!(got, mul(a, b, p));
            }
            let x = mt.to_mont(77);
            assert_eq!(mt.from_mont(mt.mul(x, mt.inv(x))), 1);
        }
    }

    #[test]
    fn cramer_form_of_small_system() {
        // x - 3y = 0, x + y = 1 -> det 4, numerators (3, 1)
        let s = solve(&big(&[&[1, -3], &[1, 1]]), &big(&[&[0], &[1]])).unwrap();
        assert_eq!(s.det, BigInt::from(4));
        assert_eq!(s.numerators, big(&[&[3], &[1]]));
        assert!(solve(&big(&[&[1, 2], &[2, 4]]), &big(&[&[0], &[1]])).is_none());
    }

    #[test]
    fn large_entries_reconstruct_exactly() {
        let e = BigInt::from(10).pow(40);
        let a = vec![
            vec![&e + 1, BigInt::from(-7), BigInt::from(3)],
            vec![BigInt::from(2), -&e, BigInt::from(5)],
            vec![BigInt::from(1), BigInt::from(1), &e * 3 + 11],
        ];
        let r: Vec<Vec<BigInt>> = (0..3)
            .map(|i| (0..3).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        let s = solve(&a, &r).unwrap();
        // A · adj(A) = det · I
        for i in 0..3 {
            for j in 0..3 {
                let v: BigInt = (0..3).map(|k| &a[i][k] * &s.numerators[k][j]).sum();
                assert_eq!(v, if i == j { s.det.clone() } else { BigInt::zero() });
            }
        }
    }
}
