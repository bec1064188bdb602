//! The limiting no-complex-part probability
//!
//! ν(c) = √(2/(3π)) e^{−4c³/3} Σ_{r≥0} (−9c³)^{r/3}/r! · Γ(2r/3 + 1/2) · cos(πr/3),
//!
//! with (−9c³)^{r/3} read as the real cube root raised to r. Splitting r by
//! residue mod 3 turns the sum into three rational hypergeometric series
//! with prefactors √π, Γ(7/6) and Γ(11/6); the series are summed exactly
//! and only the final combination runs in high-precision fixed point with
//! adaptive bits, since the sum cancels down by a factor of roughly
//! e^{0.87·|c|³}.

use super::gamma::ln_gamma;
use super::hiprec::{Ctx, Fx};
use num::{BigInt, BigRational, One, Signed, Zero};

/// Evaluation policy: target absolute error and the series cutoff.
#[derive(Debug, Clone, Copy)]
pub struct NuFunction {
    pub precision: f64,
    pub c_max: f64,
}

impl Default for NuFunction {
    fn default() -> Self {
        NuFunction { precision: 1e-12, c_max: 6.0 }
    }
}

/// ν value; `is_bound` marks the envelope returns beyond ±c_max
/// (exp(−4c³/3) on the right, 1 on the left).
#[derive(Debug, Clone, Copy)]
pub struct NuValue {
    pub value: f64,
    pub is_bound: bool,
}

/// ν(c) with the default policy.
pub fn nu(c: f64) -> f64 {
    NuFunction::default().eval(c).value
}

impl NuFunction {
    pub fn eval(&self, c: f64) -> NuValue {
        assert!(c.is_finite());
        if c > self.c_max {
            return NuValue { value: (-4.0 * c.powi(3) / 3.0).exp(), is_bound: true };
        }
        if c < -self.c_max {
            return NuValue { value: 1.0, is_bound: true };
        }
        if c == 0.0 {
            return NuValue { value: (2.0f64 / 3.0).sqrt(), is_bound: false };
        }
        let qc = BigRational::from_float(c).expect("finite c");
        let u = -BigRational::from_integer(BigInt::from(9)) * &qc * &qc * &qc;

        // precision budget: peak log-term of Σ |x|^r Γ(2r/3+1/2)/r!
        // plus the log-smallness of the result for negative c
        let abs_u = c.powi(3).abs() * 9.0;
        let ln_x = abs_u.ln() / 3.0;
        let mut peak: f64 = 0.0;
        let mut r = 1usize;
        loop {
            let lt = r as f64 * ln_x + ln_gamma(2.0 * r as f64 / 3.0 + 0.5)
                - ln_gamma(r as f64 + 1.0);
            peak = peak.max(lt);
            if lt < peak - 40.0 && r > 8 {
                break;
            }
            r += 1;
            if r > 100_000 {
                break;
            }
        }
        let sink = if c < 0.0 { 4.0 * c.powi(3).abs() / 3.0 } else { 0.0 };
        let bits = (((peak + sink) * std::f64::consts::LOG2_E) as u64 + 192).min(8192);
        let ctx = Ctx::new(bits);

        // the three residue series: A_k over r = 3k (prefactor √π),
        // B_k over r = 3k+1 (prefactor x·Γ(7/6)/2),
        // C_k over r = 3k+2 (prefactor −x²·Γ(11/6)/2); term ratios are
        // (−u) times small rationals, so the accumulation runs in fixed
        // point with the guard bits absorbing the ulp drift
        let ctx = Ctx::new(bits);
        let neg_u_fx = ctx.from_rational(&(-&u));
        let half_rat = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut term_a = ctx.one();
        let mut term_b = ctx.one();
        let mut term_c = ctx.from_rational(&half_rat);
        let mut sum_a = term_a.clone();
        let mut sum_b = term_b.clone();
        let mut sum_c = term_c.clone();
        let mut k = 0u64;
        loop {
            let k3 = 3 * k;
            // Γ-shift numerators (12k+a)(12k+b)/36 over factorial steps
            let step = |t: &Fx, na: u64, nb: u64, d1: u64, d2: u64, d3: u64| -> Fx {
                let scaled = ctx.mul(t, &neg_u_fx);
                let num = BigInt::from((12 * k + na) * (12 * k + nb));
                let den =
                    BigInt::from(36u64) * BigInt::from(d1) * BigInt::from(d2) * BigInt::from(d3);
                Fx { m: scaled.m * num / den }
            };
            term_a = step(&term_a, 3, 9, k3 + 1, k3 + 2, k3 + 3);
            term_b = step(&term_b, 7, 13, k3 + 2, k3 + 3, k3 + 4);
            term_c = step(&term_c, 11, 17, k3 + 3, k3 + 4, k3 + 5);
            sum_a = ctx.add(&sum_a, &term_a);
            sum_b = ctx.add(&sum_b, &term_b);
            sum_c = ctx.add(&sum_c, &term_c);
            k += 1;
            if term_a.m.is_zero() && term_b.m.is_zero() && term_c.m.is_zero() {
                break;
            }
            assert!(k < 400_000, "nu series failed to converge");
        }

        // high-precision combination
        let sqrt_pi = ctx.sqrt(&ctx.pi());
        let g76 = ctx.exp(&ctx.ln_gamma_rational(&BigRational::new(BigInt::from(7), BigInt::from(6))));
        let g116 =
            ctx.exp(&ctx.ln_gamma_rational(&BigRational::new(BigInt::from(11), BigInt::from(6))));
        let x = ctx.cbrt(&ctx.from_rational(&u));
        let x2 = ctx.mul(&x, &x);
        let half_fx = ctx.from_rational(&half_rat);
        let mut s: Fx = ctx.mul(&sqrt_pi, &sum_a);
        s = ctx.add(&s, &ctx.mul(&ctx.mul(&ctx.mul(&x, &half_fx), &g76), &sum_b));
        s = ctx.sub(&s, &ctx.mul(&ctx.mul(&ctx.mul(&x2, &half_fx), &g116), &sum_c));
        assert!(
            s.m.is_positive(),
            "nu sum lost all precision at c = {c} (bits = {bits})"
        );
        let ln_s = ctx.ln_abs_f64(&s);
        let ln_pref = 0.5 * (2.0f64 / 3.0).ln() - 0.5 * std::f64::consts::PI.ln();
        let ln_nu = ln_pref - 4.0 * c.powi(3) / 3.0 + ln_s;
        NuValue { value: ln_nu.exp(), is_bound: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// direct f64 summation of the defining series; trustworthy for
    /// small |c| where cancellation stays mild
    fn nu_naive(c: f64) -> f64 {
        let x = (-9.0 * c.powi(3)).cbrt();
        let mut sum = 0.0f64;
        let mut xr = 1.0f64;
        let mut fact = 1.0f64;
        for r in 0..200 {
            let cosv = match r % 6 {
                0 => 1.0,
                1 => 0.5,
                2 => -0.5,
                3 => -1.0,
                4 => -0.5,
                _ => 0.5,
            };
            if cosv != 0.0 {
                sum += xr / fact * super::super::gamma::gamma_fn(2.0 * r as f64 / 3.0 + 0.5) * cosv;
            }
            xr *= x;
            fact *= (r + 1) as f64;
        }
        (2.0 / (3.0 * std::f64::consts::PI)).sqrt() * (-4.0 * c.powi(3) / 3.0).exp() * sum
    }

    #[test]
    fn nu_at_zero() {
        assert!((nu(0.0) - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn nu_matches_naive_small_args() {
        for &c in &[-1.5, -1.0, -0.5, -0.1, 0.2, 0.7, 1.0, 1.3] {
            let hi = nu(c);
            let lo = nu_naive(c);
            assert!(
                (hi - lo).abs() < 1e-9 * lo.abs().max(1e-3),
                "c = {c}: hiprec {hi} vs naive {lo}"
            );
        }
    }

    #[test]
    fn nu_qualitative_bounds() {
        let left = nu(-4.0);
        assert!(left > 0.999 && left <= 1.0, "nu(-4) = {left}");
        let right = nu(1.5);
        assert!(right <= (-4.0 * 1.5f64.powi(3) / 3.0).exp() * 1.5, "nu(1.5) = {right}");
        assert!(right > 0.0);
    }

    #[test]
    fn nu_monotone_on_grid() {
        let f = NuFunction::default();
        let mut prev = f64::INFINITY;
        for i in 0..=40 {
            let c = -2.0 + 0.1 * i as f64;
            let v = f.eval(c).value;
            assert!(v < prev, "not decreasing at c = {c}: {v} vs {prev}");
            assert!(v > 0.0 && v <= 1.0);
            prev = v;
        }
    }

    #[test]
    fn nu_envelope_beyond_cutoff() {
        let f = NuFunction::default();
        let r = f.eval(7.0);
        assert!(r.is_bound);
        assert!((r.value - (-4.0 * 343.0 / 3.0f64).exp()).abs() < 1e-30);
        let l = f.eval(-9.0);
        assert!(l.is_bound);
        assert_eq!(l.value, 1.0);
    }
}
