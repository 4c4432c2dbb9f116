use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::pathcount::LengthSpectrum;

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Compositions of `a` into `p` positive parts.
fn compositions(a: i64, p: i64) -> BigUint {
    if a == 0 && p == 0 {
        BigUint::one()
    } else if a <= 0 || p <= 0 {
        BigUint::zero()
    } else {
        binom(a - 1, p - 1)
    }
}

/// `N_l = C(d-1, l-1)`.
pub fn simplex_spectrum(d: usize) -> LengthSpectrum {
    LengthSpectrum::from_pairs((1..=d).map(|l| (l, binom(d as i64 - 1, l as i64 - 1))))
}

/// `d!` paths, all of length `d`.
pub fn cube_spectrum(d: usize) -> LengthSpectrum {
    LengthSpectrum::from_pairs([(d, factorial(d))])
}

/// `N_l = 2 Σ_{k=0}^{d-2} C(2k, l-2)`.
pub fn crosspoly_monotone(d: usize) -> LengthSpectrum {
    let d = d as i64;
    LengthSpectrum::from_pairs((2..=2 * d).map(|l| {
        let s: BigUint = (0..=d - 2).map(|k| binom(2 * k, l - 2)).sum();
        (l as usize, s * 2u32)
    }))
}

/// `N^coh_l = C(d-1, l-1) 2^{l-1}`, for `l >= 2`.
pub fn crosspoly_coherent(d: usize) -> LengthSpectrum {
    let d = d as i64;
    LengthSpectrum::from_pairs((2..=d).map(|l| (l as usize, binom(d - 1, l - 1) << (l - 1) as usize)))
}

/// Coherent paths of length `l` on the cyclic `d`-polytope with `n` vertices
/// under `e_1`: sign sequences of length `n-2` with `l-1` plus signs and at
/// most `d-1` plateaus. Each plateau count is split by the sign it starts with.
pub fn cyclic_coherent(n: usize, d: usize) -> LengthSpectrum {
    let n = n as i64;
    let max_plateaus = d as i64 - 1;
    LengthSpectrum::from_pairs((1..=n - 1).map(|l| {
        let plus = l - 1;
        let minus = n - 2 - plus;
        let mut total = BigUint::zero();
        for p in 1..=max_plateaus {
            let (long, short) = ((p + 1) / 2, p / 2);
            total += compositions(plus, long) * compositions(minus, short);
            total += compositions(plus, short) * compositions(minus, long);
        }
        (l as usize, total)
    }))
}

/// `2 Σ_{j=0}^{d-2} C(n-3, j)`.
pub fn cyclic_coherent_total(n: usize, d: usize) -> BigUint {
    (0..=d as i64 - 2).map(|j| binom(n as i64 - 3, j)).sum::<BigUint>() * 2u32
}

/// Multinomial `d! / Π (s_i - s_{i-1})!` over `S = {s_1 < ... < s_r}`.
pub fn s_hypersimplex_total(d: usize, s: &[usize]) -> BigUint {
    let mut sorted: Vec<usize> = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut prev = 0;
    let mut denom = BigUint::one();
    for &k in &sorted {
        denom *= factorial(k - prev);
        prev = k;
    }
    factorial(d) / denom
}

/// All paths have length `|S|`.
pub fn s_hypersimplex_spectrum(d: usize, s: &[usize]) -> LengthSpectrum {
    let mut sorted: Vec<usize> = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    LengthSpectrum::from_pairs([(sorted.len(), s_hypersimplex_total(d, s))])
}

/// `N_l(n, m) = Σ_{k>=1} C(n-2, k-1) C(m-2, l-k-1) C(l, k)` for the product of
/// simplices with `n` and `m` vertices.
pub fn product_simplices_spectrum(n: usize, m: usize) -> LengthSpectrum {
    let (n, m) = (n as i64, m as i64);
    LengthSpectrum::from_pairs((1..=n + m).map(|l| {
        let s: BigUint = (1..=l).map(|k| binom(n - 2, k - 1) * binom(m - 2, l - k - 1) * binom(l, k)).sum();
        (l as usize, s)
    }))
}

type Poly = Vec<BigUint>;

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigUint::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

/// Multiply by `Σ coeffs[k] z^k` with small coefficients.
fn poly_mul_small(a: &Poly, coeffs: &[u32]) -> Poly {
    let mut out = vec![BigUint::zero(); a.len() + coeffs.len()];
    for (i, x) in a.iter().enumerate() {
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                out[i + k] += x * c;
            }
        }
    }
    out
}

/// Coefficients of `T_n + Q_n + C_n` from the 3x3 polynomial recursion,
/// indexed by the exponent of `z`.
pub fn second_hypersimplex_polynomial(n: usize) -> LengthSpectrum {
    assert!(n >= 4, "recursion starts at n = 4");
    let z = |k: usize, c: u32| {
        let mut p = vec![BigUint::zero(); k + 1];
        p[k] = BigUint::from(c);
        p
    };
    let mut t = poly_add(&z(4, 1), &z(3, 2));
    let mut qv = z(4, 1);
    let mut c = poly_add(&z(4, 2), &z(3, 2));
    for _ in 4..n {
        let nt = poly_add(&poly_add(&poly_mul_small(&t, &[0, 1]), &poly_mul_small(&qv, &[1, 1])), &poly_mul_small(&c, &[1, 1]));
        let nq = poly_add(&poly_mul_small(&qv, &[1, 1]), &poly_mul_small(&c, &[0, 1]));
        let nc = poly_add(&poly_mul_small(&t, &[0, 1, 1]), &poly_mul_small(&c, &[1, 1]));
        t = nt;
        qv = nq;
        c = nc;
    }
    let sum = poly_add(&poly_add(&t, &qv), &c);
    LengthSpectrum::from_sequence(0, &sum)
}

/// Coherent spectrum of the second hypersimplex in `R^n`. The exponent of `z`
/// in the recursion counts path vertices, so lengths are exponents minus one.
pub fn second_hypersimplex_coherent(n: usize) -> LengthSpectrum {
    let poly = second_hypersimplex_polynomial(n);
    LengthSpectrum::from_pairs(poly.iter().map(|(e, c)| (e - 1, c.clone())))
}

/// `(25 · 4^{n-4} - 1) / 3`.
pub fn second_hypersimplex_total(n: usize) -> BigUint {
    (BigUint::from(25u32) * (BigUint::one() << (2 * (n - 4))) - 1u32) / 3u32
}

/// `(d-1)!` paths of length `d-1` and `(d+1)!/6` of length `d+1`.
pub fn lopsided_spectrum(d: usize) -> LengthSpectrum {
    LengthSpectrum::from_pairs([(d - 1, factorial(d - 1)), (d + 1, factorial(d + 1) / 6u32)])
}
