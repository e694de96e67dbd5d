//! Integer number theory on `BigInt`: primality, factorization, square parts.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn mod_pow(b: &BigInt, e: &BigInt, m: &BigInt) -> BigInt {
    b.modpow(e, m)
}

/// Miller-Rabin with the first 25 prime bases; deterministic below 3.3e24.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for &a in SMALL_PRIMES.iter() {
        let mut x = mod_pow(&BigInt::from(a), &d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut x;
        let mut g = one.clone();
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut ys = y.clone();
        let m = 64u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            if g == one {
                continue;
            }
            if &g == n {
                // backtrack one step at a time
                loop {
                    ys = f(&ys);
                    g = (&x - &ys).abs().gcd(n);
                    if g != one {
                        break;
                    }
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = exact_sqrt(&n) {
        factor_into(r.clone(), out);
        factor_into(r, out);
        return;
    }
    let d = pollard_brent(&n);
    factor_into(&n / &d, out);
    factor_into(d, out);
}

/// Prime factorization of |n| as sorted (prime, exponent) pairs. `n` must be nonzero.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut m = n.abs();
    let mut primes = Vec::new();
    let mut p = 2u32;
    while p < 1000 {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            m /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        factor_into(m, &mut primes);
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Distinct primes dividing n (nonzero).
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
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

/// Splits a nonzero n as sign·s·r² with s squarefree and positive; returns (sign·s, r).
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut r = BigInt::one();
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            s *= &p;
        }
        for _ in 0..e / 2 {
            r *= &p;
        }
    }
    if n.sign() == Sign::Minus {
        s = -s;
    }
    (s, r)
}

/// Squarefree part of a nonzero integer, keeping its sign.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    squarefree_decompose(n).0
}

pub fn is_squarefree(n: &BigInt) -> bool {
    !n.is_zero() && factorize(n).iter().all(|(_, e)| *e == 1)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut m = n.clone();
    let mut v = 0;
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// A square root of a modulo an odd prime p, assuming one exists (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if p == &BigInt::from(2) {
        return Some(a);
    }
    let one = BigInt::one();
    let pm1 = p - &one;
    if mod_pow(&a, &(&pm1 >> 1), p) != one {
        return None;
    }
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while mod_pow(&z, &(&pm1 >> 1), p) != pm1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(&z, &q, p);
    let mut t = mod_pow(&a, &q, p);
    let mut r = mod_pow(&a, &((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b) % p;
        }
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

/// A square root of a modulo a squarefree modulus m > 0, by CRT over its primes.
pub fn sqrt_mod_squarefree(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let m = m.abs();
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let mut r = BigInt::zero();
    let mut modulus = BigInt::one();
    for (p, _) in factorize(&m) {
        let s = sqrt_mod_prime(a, &p)?;
        // combine r mod modulus with s mod p
        let inv = mod_inverse(&modulus, &p)?;
        let k = ((&s - &r) * inv).mod_floor(&p);
        r += k * &modulus;
        modulus *= &p;
    }
    Some(r.mod_floor(&modulus))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Number of binary digits equal to 1.
pub fn digit_count(n: u64) -> u32 {
    n.count_ones()
}

pub fn to_i128(n: &BigInt) -> Option<i128> {
    n.to_i128()
}
