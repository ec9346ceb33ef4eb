//! Exact integer helpers shared by the screening modules.
//!
//! Everything here works on arbitrary-precision integers; no routine in this
//! crate compares magnitudes through floating point.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// `n!`
pub fn factorial(n: u64) -> BigUint {
    product_range(1, n)
}

/// Product of the integers in `[lo, hi]` (empty product is 1), split as a
/// balanced tree so large factorials stay cheap.
pub fn product_range(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        let mut acc = BigUint::one();
        for i in lo..=hi {
            acc *= i;
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    product_range(lo, mid) * product_range(mid + 1, hi)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    product_range(n - k + 1, n) / factorial(k)
}

/// Floor of the `k`-th root.
pub fn iroot(x: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1);
    x.nth_root(k)
}

/// Least `r` with `r^k >= x`.
pub fn iroot_ceil(x: &BigUint, k: u32) -> BigUint {
    let r = iroot(x, k);
    if r.pow(k) == *x {
        r
    } else {
        r + 1u32
    }
}

/// Floor of the `k`-th root of a non-negative rational.
pub fn rational_iroot(x: &BigRational, k: u32) -> BigUint {
    assert!(*x >= BigRational::zero(), "root of a negative rational");
    // floor(x^(1/k)) = floor(floor(x)^(1/k)) for x >= 0
    let fl = x.floor().to_integer();
    iroot(&fl.to_biguint().expect("non-negative"), k)
}

/// If `x = b^k` with `b >= 2`, `k >= 2`, returns every such `(b, k)` pair,
/// ordered by increasing `k`.
pub fn perfect_power_decompositions(x: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    if *x < BigUint::from(4u32) {
        return out;
    }
    let max_k = x.bits() as u32;
    for k in 2..=max_k {
        let b = iroot(x, k);
        if b < BigUint::from(2u32) {
            break;
        }
        if b.pow(k) == *x {
            out.push((b, k));
        }
    }
    out
}

const SMALL_PRIME_LIMIT: u32 = 10_000;

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SMALL_PRIME_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(p, &is_p)| is_p.then_some(p as u32))
            .collect()
    })
}

/// Miller–Rabin with the first twenty primes as bases. Deterministic below
/// 3.3 * 10^24; beyond that a composite passing all twenty bases is not
/// known to exist.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &small_primes()[..20] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut r = 0u32;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for &a in &small_primes()[..20] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho. Returns a non-trivial factor of the
/// odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut rest = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if (&pb * &pb) > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        let mut large: Vec<BigUint> = Vec::new();
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            let bound = BigUint::from(SMALL_PRIME_LIMIT) * BigUint::from(SMALL_PRIME_LIMIT);
            if m < bound || is_probable_prime(&m) {
                large.push(m);
                continue;
            }
            let d = pollard_brent(&m);
            let other = &m / &d;
            stack.push(d);
            stack.push(other);
        }
        large.sort();
        for p in large {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
    }
    out
}

/// All divisors `d` of the number with factorisation `factors` such that
/// `d <= bound`, in increasing order.
pub fn divisors_up_to(factors: &[(BigUint, u32)], bound: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    if bound.is_zero() {
        return Vec::new();
    }
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*e {
                cur *= p;
                if cur > *bound {
                    break;
                }
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// `floor(log2(n))` for `n >= 1`.
pub fn floor_log2(n: u64) -> u32 {
    assert!(n >= 1);
    63 - n.leading_zeros()
}

pub fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
