//! Integer helpers shared by the lattice and Diophantine code: square roots,
//! factorization, and square roots modulo composite integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// Returns `Some(r)` with `r >= 0` and `r * r == n` when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// Extended gcd: `(g, x, y)` with `g = gcd(a, b) >= 0` and `a x + b y = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Rounded-down quotient.
pub fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Rounded-up quotient.
pub fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve prime bases. Deterministic (and exact)
/// for every `n < 3.3 * 10^24`, which covers every integer this crate factors
/// in practice; beyond that it is a strong probable-prime test.
pub fn is_prime(n: &BigInt) -> bool {
    let two = big(2);
    if n < &two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &SMALL_PRIMES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt) -> BigInt {
    // n is odd, composite and has no factor below the trial bound.
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = big(2);
        let mut y = big(2);
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

fn push_prime(p: BigInt, out: &mut Vec<(BigInt, u32)>) {
    if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += 1;
    } else {
        out.push((p, 1));
    }
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
/// Returns an empty list for `n` in `{-1, 0, 1}`.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u64;
    while p <= 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            push_prime(bp.clone(), &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push_prime(m, &mut out);
            continue;
        }
        if let Some(r) = exact_sqrt(&m) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    out
}

/// All positive divisors of `|n|` in increasing order (`n != 0`).
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Positive integers `f` with `f^2 | n`, increasing.
pub fn square_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=(e / 2) {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn tonelli_shanks(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if *p == big(2) {
        return Some(a);
    }
    let exp = (p - 1u32) >> 1;
    if !a.modpow(&exp, p).is_one() {
        return None;
    }
    let mut q = p - 1u32;
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = big(2);
    while z.modpow(&exp, p).is_one() {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    Some(r)
}

/// Roots of `y^2 = a (mod p^f)` for `a` coprime to `p`, `f >= 1`.
fn unit_roots(a: &BigInt, p: &BigInt, f: u32) -> Vec<BigInt> {
    let modulus = p.pow(f);
    if *p == big(2) {
        let a = a.mod_floor(&modulus);
        return match f {
            1 => vec![BigInt::one()],
            2 => {
                if (&a % 4u32).is_one() {
                    vec![big(1), big(3)]
                } else {
                    vec![]
                }
            }
            _ => {
                if !(&a % 8u32).is_one() {
                    return vec![];
                }
                // lift a root from mod 8 upward one bit at a time
                let mut r = BigInt::one();
                for k in 3..f {
                    let next_mod = BigInt::one() << (k + 1);
                    if !((&r * &r - &a).mod_floor(&next_mod)).is_zero() {
                        r += BigInt::one() << (k - 1);
                    }
                }
                let half = BigInt::one() << (f - 1);
                let mut roots = vec![
                    r.mod_floor(&modulus),
                    (-&r).mod_floor(&modulus),
                    (&r + &half).mod_floor(&modulus),
                    (-&r + &half).mod_floor(&modulus),
                ];
                roots.sort();
                roots.dedup();
                roots
            }
        };
    }
    let Some(mut r) = tonelli_shanks(a, p) else {
        return vec![];
    };
    let mut pk = p.clone();
    for _ in 1..f {
        // Hensel: r <- r - (r^2 - a) / (2r) mod p^{k+1}
        let next = &pk * p;
        let fx = (&r * &r - a).mod_floor(&next);
        let inv = (big(2) * &r).modinv(&next).expect("unit");
        r = (&r - fx * inv).mod_floor(&next);
        pk = next;
    }
    let mut roots = vec![r.mod_floor(&modulus), (-&r).mod_floor(&modulus)];
    roots.sort();
    roots.dedup();
    roots
}

/// All `x` in `[0, p^e)` with `x^2 = a (mod p^e)`.
fn roots_mod_prime_power(a: &BigInt, p: &BigInt, e: u32) -> Vec<BigInt> {
    let modulus = p.pow(e);
    let a = a.mod_floor(&modulus);
    if a.is_zero() {
        let step = p.pow(e.div_ceil(2));
        let count = p.pow(e / 2);
        let mut out = Vec::new();
        let mut t = BigInt::zero();
        while t < count {
            out.push(&t * &step);
            t += 1u32;
        }
        return out;
    }
    let mut k = 0u32;
    let mut unit = a.clone();
    while (&unit % p).is_zero() {
        unit /= p;
        k += 1;
    }
    if k % 2 == 1 {
        return vec![];
    }
    let half = k / 2;
    let f = e - k;
    let base = p.pow(half);
    let mod_f = p.pow(f);
    let lifts = p.pow(half);
    let mut out = Vec::new();
    for y0 in unit_roots(&unit, p, f) {
        let mut t = BigInt::zero();
        while t < lifts {
            out.push((&base * (&y0 + &t * &mod_f)).mod_floor(&modulus));
            t += 1u32;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All `x` in `[0, n)` with `x^2 = a (mod n)`, `n >= 1`.
pub fn sqrt_mod(a: &BigInt, n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive());
    if n.is_one() {
        return vec![BigInt::zero()];
    }
    let mut acc: Vec<BigInt> = vec![BigInt::zero()];
    let mut acc_mod = BigInt::one();
    for (p, e) in factorize(n) {
        let pe = p.pow(e);
        let roots = roots_mod_prime_power(a, &p, e);
        if roots.is_empty() {
            return vec![];
        }
        // CRT: x = r1 (mod acc_mod), x = r2 (mod pe)
        let inv = acc_mod.modinv(&pe).expect("coprime moduli");
        let new_mod = &acc_mod * &pe;
        let mut next = Vec::with_capacity(acc.len() * roots.len());
        for r1 in &acc {
            for r2 in &roots {
                let t = ((r2 - r1) * &inv).mod_floor(&pe);
                next.push((r1 + &acc_mod * t).mod_floor(&new_mod));
            }
        }
        acc = next;
        acc_mod = new_mod;
    }
    acc.sort();
    acc
}

/// Converts to `i64` when it fits.
pub fn small(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_round_trips() {
        for n in [1i64, 2, 12, 74, 148, 1105, 2210, 999_983 * 3, 600_851_475_143] {
            let f = factorize(&big(n));
            let prod = f
                .iter()
                .fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e));
            assert_eq!(prod, big(n));
            assert!(f.iter().all(|(p, _)| is_prime(p)));
        }
        let semi = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        assert_eq!(factorize(&semi).len(), 2);
    }

    #[test]
    fn sqrt_mod_matches_brute_force() {
        for n in 1i64..200 {
            for a in -5i64..40 {
                let expected: Vec<BigInt> = (0..n)
                    .filter(|x| (x * x - a).rem_euclid(n) == 0)
                    .map(big)
                    .collect();
                assert_eq!(sqrt_mod(&big(a), &big(n)), expected, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(&big(12)), [1, 2, 3, 4, 6, 12].map(big).to_vec());
        assert_eq!(square_divisors(&big(72)), [1, 2, 3, 6].map(big).to_vec());
        assert_eq!(divisors(&big(-7)), [1, 7].map(big).to_vec());
    }

    #[test]
    fn squares() {
        assert_eq!(exact_sqrt(&big(148)), None);
        assert_eq!(exact_sqrt(&big(144)), Some(big(12)));
        assert_eq!(exact_sqrt(&big(-4)), None);
        assert_eq!(isqrt(&big(15)), big(3));
    }
}
