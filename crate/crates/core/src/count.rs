//! Exact integer counting helpers.

/// Binomial coefficient; zero when `k > n`, `None` when it exceeds `u128`.
pub fn checked_binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        // r * (n - i) is divisible by i + 1; dividing out the common factor
        // first keeps the intermediate product no larger than the result.
        let (num, den) = (u128::from(n - i), u128::from(i + 1));
        let g = gcd(r, den);
        r = (r / g).checked_mul(num / (den / g))?;
    }
    Some(r)
}

/// Binomial coefficient; zero when `k > n`. Panics beyond `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    checked_binomial(n, k).expect("binomial coefficient exceeds u128")
}

/// Number of m-Dyck paths of height `n`: `C((m+1)n, n) / (mn + 1)`; `None`
/// when an intermediate value exceeds the integer range.
pub fn checked_fuss_catalan(n: u64, m: u64) -> Option<u128> {
    let top = m.checked_add(1)?.checked_mul(n)?;
    let den = m.checked_mul(n)?.checked_add(1)?;
    Some(checked_binomial(top, n)? / u128::from(den))
}

/// Panicking form of [`checked_fuss_catalan`].
pub fn fuss_catalan(n: u64, m: u64) -> u128 {
    checked_fuss_catalan(n, m).expect("Fuss-Catalan number exceeds u128")
}

/// Ordinary Catalan number.
pub fn catalan(n: u64) -> u128 {
    fuss_catalan(n, 1)
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
