//! Small integer helpers: primality, factorization, prime powers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `Some((r, k))` with `n = r^k`, `k >= 1`, when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(r, k)] => Some((*r, *k)),
        _ => None,
    }
}

/// The `p`-part of `n`: the largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// Looks for two entries of `values` that are both positive powers of one prime.
///
/// Returns the prime together with the two positions.
pub fn shared_prime_power(values: &[u64]) -> Option<(u64, usize, usize)> {
    let powers: Vec<Option<(u64, u32)>> = values.iter().map(|&v| prime_power(v)).collect();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if let (Some((r, _)), Some((s, _))) = (powers[i], powers[j]) {
                if r == s {
                    return Some((r, i, j));
                }
            }
        }
    }
    None
}

/// All prime powers `q` with `lo <= q <= hi`, ascending.
pub fn prime_powers_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_round_trips() {
        for n in 1..500u64 {
            let prod: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_powers_in(2, 10), vec![2, 3, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn shared_power_detects_two_and_four() {
        assert_eq!(shared_prime_power(&[2, 3, 4]), Some((2, 0, 2)));
        assert_eq!(shared_prime_power(&[4, 5, 6]), None);
    }
}
