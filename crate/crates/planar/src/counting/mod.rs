//! Exact counting formulas: U(n, M) (no complex components), the
//! kernel-based construction of complex planar graphs C_d(k, k+ℓ), and the
//! master convolution for pl(n, M). Everything here is exact big-integer /
//! big-rational arithmetic; a separate log-space float path serves large n.

use crate::asympt::gamma::{ln_binomial, ln_gamma};
use crate::oracle::{kernel_census_brute, KernelCensus, OracleError};
use crate::series::{AnalyticConstants, PowerSeries};
use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CountError {
    #[error("census mismatch: expected (v, e, d) = ({v}, {e}, {d}), census has ({cv}, {ce}, {cd})")]
    CensusMismatch { v: usize, e: u64, d: u64, cv: usize, ce: u64, cd: u64 },
    #[error("provider gap: no C(k, k+l) source for (k, l) = ({k}, {l})")]
    ProviderGap { k: u64, l: u64 },
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("parameters: {0}")]
    Parameters(String),
}

pub(crate) fn factorial_big(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Labeled unrooted trees: T_k = k^(k−2) with T_1 = T_2 = 1.
fn tree_count(k: u64) -> BigInt {
    match k {
        0 => BigInt::zero(),
        1 | 2 => BigInt::one(),
        _ => BigInt::from(k).pow((k - 2) as u32),
    }
}

/// EGF of unrooted trees, to the given order.
fn tree_egf(order: usize) -> PowerSeries {
    let coeffs = (0..=order as u64)
        .map(|k| BigRational::new(tree_count(k), factorial_big(k)))
        .collect();
    PowerSeries::from_coeffs(coeffs)
}

/// Number of labeled forests on `a` vertices with exactly `t` (unrooted)
/// trees: a!·[x^a](T(x)^t / t!).
pub fn forest_count(a: u64, t: u64) -> BigInt {
    if t > a {
        return BigInt::zero();
    }
    if a == 0 {
        return BigInt::one();
    }
    let f = tree_egf(a as usize).pow(t as u32);
    let coeff = f.coeff(a as usize) / BigRational::from_integer(factorial_big(t));
    let val = coeff * BigRational::from_integer(factorial_big(a));
    debug_assert!(val.is_integer());
    val.to_integer()
}

/// Labeled connected unicyclic graphs on k vertices:
/// Σ_{j=3..k} C(k,j)·((j−1)!/2)·j·k^(k−j−1), the rooted-forest factor read
/// as 1 when j = k.
pub fn unicyclic_count(k: u64) -> BigInt {
    if k < 3 {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    for j in 3..=k {
        let cycles = factorial_big(j - 1) / BigInt::from(2);
        let forests = if j == k {
            BigInt::one()
        } else {
            BigInt::from(j) * BigInt::from(k).pow((k - j - 1) as u32)
        };
        total += binomial(k, j) * cycles * forests;
    }
    total
}

/// EGF of graphs whose components are all unicyclic: exp(Σ w_k x^k / k!).
fn unicyclic_part_egf(order: usize) -> PowerSeries {
    let w = PowerSeries::from_coeffs(
        (0..=order as u64)
            .map(|k| BigRational::new(unicyclic_count(k), factorial_big(k)))
            .collect(),
    );
    w.exp()
}

/// U(n, M): labeled graphs on n vertices with M edges and no complex
/// component. Zero outside 0 ≤ M ≤ n.
pub fn u_exact(n: u64, m: i64) -> BigInt {
    if m < 0 || m > n as i64 {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    let t = (n as i64 - m) as u64; // number of tree components is forced
    let order = n as usize;
    let forest = tree_egf(order).pow(t as u32);
    let v = unicyclic_part_egf(order);
    let prod = forest.mul(&v);
    let val = prod.coeff(order) * BigRational::from_integer(factorial_big(n))
        / BigRational::from_integer(factorial_big(t));
    debug_assert!(val.is_integer());
    val.to_integer()
}

/// ρ(n, M) = U(n, M) / C(C(n,2), M), exact.
pub fn rho_exact(n: u64, m: u64) -> BigRational {
    let slots = n * (n - 1) / 2;
    assert!(m <= slots, "m exceeds C(n,2)");
    BigRational::new(u_exact(n, m as i64), binomial(slots, m))
}

/// Log-space float variant of U(n, M) for large n; all convolutions are
/// log-sum-exp over positive terms (relative drift ≤ 1e-9 per operation,
/// far below the consumers' tolerances).
pub fn ln_u_float(n: usize, m: i64) -> f64 {
    if m < 0 || m > n as i64 {
        return f64::NEG_INFINITY;
    }
    if n == 0 {
        return 0.0;
    }
    let t = (n as i64 - m) as usize;
    // ln of EGF coefficients of unrooted trees
    let lt: Vec<f64> = (0..=n)
        .map(|k| match k {
            0 => f64::NEG_INFINITY,
            1 => 0.0,
            k => (k as f64 - 2.0) * (k as f64).ln() - ln_gamma(k as f64 + 1.0),
        })
        .collect();
    let pw = ln_series_pow(&lt, t, n);
    // ln of EGF coefficients of the unicyclic part
    let lw: Vec<f64> = (0..=n)
        .map(|k| {
            if k < 3 {
                return f64::NEG_INFINITY;
            }
            let kf = k as f64;
            let terms: Vec<f64> = (3..=k)
                .map(|j| {
                    let jf = j as f64;
                    let forests = if j == k { 0.0 } else { jf.ln() + (kf - jf - 1.0) * kf.ln() };
                    ln_binomial(kf, jf) + ln_gamma(jf) - 2f64.ln() + forests
                })
                .collect();
            ln_sum_exp(&terms) - ln_gamma(kf + 1.0)
        })
        .collect();
    let mut lv = vec![f64::NEG_INFINITY; n + 1];
    lv[0] = 0.0;
    for i in 1..=n {
        // i·v_i = Σ_k k·w_k·v_{i−k}
        let terms: Vec<f64> = (3..=i)
            .filter(|&k| lv[i - k] > f64::NEG_INFINITY)
            .map(|k| (k as f64).ln() + lw[k] + lv[i - k])
            .collect();
        lv[i] = ln_sum_exp(&terms) - (i as f64).ln();
    }
    let terms: Vec<f64> = (0..=n)
        .filter(|&a| pw[a] > f64::NEG_INFINITY && lv[n - a] > f64::NEG_INFINITY)
        .map(|a| pw[a] + lv[n - a])
        .collect();
    ln_gamma(n as f64 + 1.0) - ln_gamma(t as f64 + 1.0) + ln_sum_exp(&terms)
}

/// ρ(n, M) in log space: ln U − ln C(C(n,2), M).
pub fn ln_rho_float(n: usize, m: usize) -> f64 {
    let slots = n as f64 * (n as f64 - 1.0) / 2.0;
    ln_u_float(n, m as i64) - ln_binomial(slots, m as f64)
}

fn ln_sum_exp(terms: &[f64]) -> f64 {
    let mx = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if mx == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let s: f64 = terms.iter().map(|&t| (t - mx).exp()).sum();
    mx + s.ln()
}

/// Power of a positive log-coefficient series by repeated squaring, with
/// log-sum-exp convolutions, truncated at `order`.
fn ln_series_pow(base: &[f64], mut t: usize, order: usize) -> Vec<f64> {
    let mut result = vec![f64::NEG_INFINITY; order + 1];
    result[0] = 0.0; // the empty product
    if t == 0 {
        return result;
    }
    let mut sq: Vec<f64> = base.to_vec();
    loop {
        if t & 1 == 1 {
            result = ln_convolve(&result, &sq, order);
        }
        t >>= 1;
        if t == 0 {
            break;
        }
        sq = ln_convolve(&sq, &sq, order);
    }
    result
}

fn ln_convolve(a: &[f64], b: &[f64], order: usize) -> Vec<f64> {
    let mut out = vec![f64::NEG_INFINITY; order + 1];
    let mut buf: Vec<f64> = Vec::new();
    for (m, slot) in out.iter_mut().enumerate() {
        buf.clear();
        for i in 0..=m.min(a.len() - 1) {
            let j = m - i;
            if j < b.len() && a[i] > f64::NEG_INFINITY && b[j] > f64::NEG_INFINITY {
                buf.push(a[i] + b[j]);
            }
        }
        *slot = ln_sum_exp(&buf);
    }
    out
}

/// Rooted-forest factor of the construction: forests on k vertices rooted at
/// a fixed i-set, i·k^(k−i−1), read as 1 when i = k.
fn rooted_forest_factor(k: u64, i: u64) -> BigInt {
    if i == k {
        BigInt::one()
    } else {
        BigInt::from(i) * BigInt::from(k).pow((k - i - 1) as u32)
    }
}

/// Exact count of complex planar graphs on k vertices with k+l edges and
/// deficiency d, built from the kernel census: choose core and kernel
/// vertices, a weighted kernel, an admissible insertion vector with its
/// orderings, and a rooted forest. Weights cancel the edge-ordering
/// symmetries exactly, so the result is an integer.
pub fn cd_exact(k: u64, l: u64, d: u64, census: &KernelCensus) -> Result<BigInt, CountError> {
    if l == 0 {
        return Err(CountError::Parameters("cd_exact needs l >= 1".into()));
    }
    if d > 2 * l - 1 {
        return Ok(BigInt::zero());
    }
    let v = 2 * l - d;
    let e = 3 * l - d;
    if census.kernel_vertices as u64 != v || census.kernel_edges != e || census.deficiency != d {
        return Err(CountError::CensusMismatch {
            v: v as usize,
            e,
            d,
            cv: census.kernel_vertices,
            ce: census.kernel_edges,
            cd: census.deficiency,
        });
    }
    if v > k {
        return Ok(BigInt::zero());
    }
    let mut total = BigRational::zero();
    for i in v..=k {
        let x = i - v;
        let mut class_sum = BigRational::zero();
        for class in &census.classes {
            let ways = class.profile.insertion_vector_count(x);
            if !ways.is_zero() {
                class_sum += &class.weight * BigRational::from_integer(ways);
            }
        }
        if class_sum.is_zero() {
            continue;
        }
        let choose = BigRational::from_integer(
            binomial(k, i) * binomial(i, v) * factorial_big(x) * rooted_forest_factor(k, i),
        );
        total += choose * class_sum;
    }
    if !total.is_integer() {
        return Err(CountError::Parameters(format!(
            "cd_exact({k}, {l}, {d}) did not reduce to an integer: {total}"
        )));
    }
    Ok(total.to_integer())
}

/// Σ_d cd_exact; the censuses are enumerated here (guard: 2l ≤ 6).
pub fn c_exact(k: u64, l: u64) -> Result<BigInt, CountError> {
    if l == 0 {
        return Err(CountError::Parameters("c_exact needs l >= 1".into()));
    }
    let mut total = BigInt::zero();
    for d in 0..=(2 * l - 1) {
        let census = kernel_census_brute(l, d)?;
        total += cd_exact(k, l, d, &census)?;
    }
    Ok(total)
}

/// Theorem-5 envelope for ln C(k, k+l): the closed form with the β term
/// swept over [−14, 2^7]. Returns (low, high); envelope only, not a
/// (1+o(1)) estimate.
pub fn c_approx_ln_interval(k: u64, l: u64, constants: &AnalyticConstants) -> (f64, f64) {
    let kf = k as f64;
    let lf = l as f64;
    let gamma = constants.gamma;
    let base = (constants.g * 3f64.sqrt() / 16.0).ln()
        + (kf + 1.5 * lf - 0.5) * kf.ln()
        + lf * (gamma * gamma * (1.5f64).exp() * 3f64.powf(-1.5)).ln()
        + (-1.5 * lf - 3.0) * lf.ln();
    let spread = (lf.powi(3) / kf).sqrt();
    (base - 14.0 * spread, base + 128.0 * spread)
}

/// The master convolution
/// pl(n, M) = U(n, M) + Σ_{k≥1, l≥1} C(n,k)·C(k, k+l)·U(n−k, M−k−l),
/// with C from `c_provider` (None marks a gap and aborts with an error
/// naming the missing (k, l)).
pub fn pl_convolution(
    n: u64,
    m: u64,
    mut c_provider: impl FnMut(u64, u64) -> Option<BigInt>,
    mut u_provider: impl FnMut(u64, i64) -> BigInt,
) -> Result<BigInt, CountError> {
    let mut total = u_provider(n, m as i64);
    for k in 1..=n {
        let max_edges_on_k = k * k.saturating_sub(1) / 2;
        for l in 1..=m.saturating_sub(k) {
            if k + l > max_edges_on_k {
                break;
            }
            let rest_m = m as i64 - k as i64 - l as i64;
            if rest_m < 0 {
                break;
            }
            // quick zero: the light part holds at most n−k edges
            if rest_m > (n - k) as i64 {
                continue;
            }
            let c = c_provider(k, l).ok_or(CountError::ProviderGap { k, l })?;
            if c.is_zero() {
                continue;
            }
            let u = u_provider(n - k, rest_m);
            if u.is_zero() {
                continue;
            }
            total += binomial(n, k) * c * u;
        }
    }
    Ok(total)
}

/// pl(n, M) with the default providers: brute-force C for k ≤ 8, census
/// construction for l ≤ 3, otherwise a provider gap.
pub fn pl_exact(n: u64, m: u64) -> Result<BigInt, CountError> {
    pl_convolution(
        n,
        m,
        |k, l| {
            if k <= 8 {
                crate::oracle::c_brute(k as usize, l).ok().map(BigInt::from)
            } else if l <= 3 {
                c_exact(k, l).ok()
            } else {
                None
            }
        },
        |nn, mm| u_exact(nn, mm),
    )
}
