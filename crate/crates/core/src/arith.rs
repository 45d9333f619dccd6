//! Small integer helpers shared by the search driver and the oracle.

/// Floor of the square root, exact for all u64.
pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    // Float rounding can land one off in either direction.
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d <= isqrt(n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Divisors `f` of `n` with `2 <= f <= floor(sqrt(n))`, ascending.
pub(crate) fn small_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for f in 2..=isqrt(n) {
        if n.is_multiple_of(f) {
            out.push(f);
        }
    }
    out
}
