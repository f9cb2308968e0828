//! Small machine-integer number theory: primality, factoring, multiplicative orders.

use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's variant of Pollard rho; `n` must be composite and odd.
fn rho(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = gcd(x.abs_diff(y), n);
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            out.push(q);
            factor_into(n / q, out);
            return;
        }
    }
    let f = rho(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    factor_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

pub fn ensure_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// Smallest `d >= 1` with `q^d = 1 (mod p)`.
pub fn multiplicative_order(q: u64, p: u64) -> Result<u64> {
    ensure_odd_prime(p)?;
    if q.is_multiple_of(p) {
        return Err(Error::NotCoprime(q, p));
    }
    let mut order = p - 1;
    for (r, _) in factorize(p - 1) {
        while order.is_multiple_of(r) && pow_mod(q, order / r, p) == 1 {
            order /= r;
        }
    }
    Ok(order)
}

/// Odd primes up to and including `bound`.
pub fn odd_primes_up_to(bound: u64) -> impl Iterator<Item = u64> {
    (3..=bound).step_by(2).filter(|&n| is_prime(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_by_iteration(q: u64, p: u64) -> u64 {
        let mut x = q % p;
        let mut d = 1;
        while x != 1 {
            x = x * q % p;
            d += 1;
        }
        d
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(2, 3).unwrap(), 2);
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(2, 11).unwrap(), order_by_iteration(2, 11));
        assert_eq!(multiplicative_order(2, 11).unwrap(), 10);
    }

    #[test]
    fn order_matches_iteration() {
        for p in odd_primes_up_to(2000) {
            assert_eq!(multiplicative_order(2, p).unwrap(), order_by_iteration(2, p), "p = {p}");
        }
    }

    #[test]
    fn order_rejects_bad_input() {
        assert_eq!(multiplicative_order(2, 9), Err(Error::NotOddPrime(9)));
        assert_eq!(multiplicative_order(2, 2), Err(Error::NotOddPrime(2)));
        assert_eq!(multiplicative_order(14, 7), Err(Error::NotCoprime(14, 7)));
    }

    #[test]
    fn factorize_mersenne_numbers() {
        for t in 1..=64u32 {
            let n = if t == 64 { u64::MAX } else { (1u64 << t) - 1 };
            let f = factorize(n);
            let back = f.iter().fold(1u128, |acc, &(q, e)| acc * (q as u128).pow(e));
            assert_eq!(back, n as u128);
            assert!(f.iter().all(|&(q, _)| is_prime(q)));
        }
        assert_eq!(factorize((1 << 11) - 1), vec![(23, 1), (89, 1)]);
    }
}
