//! Word-size modular arithmetic, primality testing, and integer
//! factorization used by fingerprinting and integer root counting.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

/// Deterministic Miller-Rabin for u64 (the fixed base set covers the
/// whole 64-bit range).
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes strictly below `below`, descending.
pub(crate) fn primes_below(below: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = below - 1;
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n -= 1;
    }
    out
}

pub(crate) fn big_mod_u64(n: &BigUint, m: u64) -> u64 {
    let big_m = BigUint::from(m);
    let r = n % big_m;
    r.to_u64_digits().first().copied().unwrap_or(0)
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64_digits().first().copied().filter(|_| n.bits() <= 64) {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return false;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d >>= 1;
        s += 1;
    }
    // Fixed small-prime bases; probabilistic above the proven u64 range,
    // which is comfortably below the error rate this tool can observe.
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_big(n: &BigUint, max_iters: u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u64..=8 {
        let c = BigUint::from(c);
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut iters = 0u64;
        loop {
            if iters >= max_iters {
                break;
            }
            iters += 1;
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x >= y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without a factor; try the next increment
            }
            let g = diff.gcd(n);
            if g > one && &g < n {
                return Some(g);
            }
        }
    }
    None
}

/// Full factorization of `n`: trial division by primes up to
/// `trial_bound`, then Miller-Rabin plus a budgeted Pollard rho on the
/// cofactor. `None` means the rho budget ran out.
pub(crate) fn factor(
    n: &BigUint,
    trial_bound: u64,
    rho_budget: u64,
) -> Option<BTreeMap<BigUint, u32>> {
    let mut factors: BTreeMap<BigUint, u32> = BTreeMap::new();
    if n.is_zero() {
        return Some(factors);
    }
    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= trial_bound {
        if rest.bits() <= 64 {
            break; // finish on the fast u64 path below
        }
        let big_d = BigUint::from(d);
        while (&rest % &big_d).is_zero() {
            *factors.entry(big_d.clone()).or_insert(0) += 1;
            rest /= &big_d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if m.bits() <= 64 {
            let small = m.to_u64_digits()[0];
            let small_factors = factor_u64(small, trial_bound, rho_budget)?;
            for (p, e) in small_factors {
                *factors.entry(BigUint::from(p)).or_insert(0) += e;
            }
            continue;
        }
        if is_probable_prime_big(&m) {
            *factors.entry(m).or_insert(0) += 1;
            continue;
        }
        match pollard_rho_big(&m, rho_budget) {
            Some(g) => {
                stack.push(&m / &g);
                stack.push(g);
            }
            None => return None,
        }
    }
    Some(factors)
}

fn pollard_rho_u64(n: u64, max_iters: u64) -> Option<u64> {
    for c in 1u64..=16 {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut iters = 0u64;
        loop {
            if iters >= max_iters {
                break;
            }
            iters += 1;
            x = add_mod(mul_mod(x, x, n), c, n);
            y = add_mod(mul_mod(y, y, n), c, n);
            y = add_mod(mul_mod(y, y, n), c, n);
            let diff = if x >= y { x - y } else { y - x };
            if diff == 0 {
                break;
            }
            let g = diff.gcd(&n);
            if g > 1 && g < n {
                return Some(g);
            }
        }
    }
    None
}

fn factor_u64(n: u64, trial_bound: u64, rho_budget: u64) -> Option<BTreeMap<u64, u32>> {
    let mut factors = BTreeMap::new();
    let mut rest = n;
    let mut d = 2u64;
    while d <= trial_bound && (d as u128) * (d as u128) <= rest as u128 {
        while rest % d == 0 {
            *factors.entry(d).or_insert(0) += 1;
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            *factors.entry(m).or_insert(0) += 1;
            continue;
        }
        match pollard_rho_u64(m, rho_budget.max(1 << 20)) {
            Some(g) => {
                stack.push(m / g);
                stack.push(g);
            }
            None => return None,
        }
    }
    Some(factors)
}

/// All positive divisors from a factorization, or `None` if there are
/// more than `cap`.
pub(crate) fn divisors(factors: &BTreeMap<BigUint, u32>, cap: usize) -> Option<Vec<BigUint>> {
    let mut count: u128 = 1;
    for e in factors.values() {
        count = count.saturating_mul(*e as u128 + 1);
        if count > cap as u128 {
            return None;
        }
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc *= p;
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    Some(divs)
}
