//! Fixed-point big-integer arithmetic for the ν series, whose defining sum
//! cancels catastrophically (≈ 0.6·|c|³ decimal digits at argument c).
//! Values are `mantissa / 2^bits` with a per-computation precision context.
//!
//! Provides exactly what ν needs: ±/×/÷, sqrt and cbrt, exp/ln, π, ln 2,
//! and ln Γ at rational arguments via the Stirling series with exact
//! Bernoulli numbers.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

#[derive(Clone, Debug)]
pub struct Fx {
    pub m: BigInt,
}

#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub bits: u64,
}

impl Ctx {
    pub fn new(bits: u64) -> Self {
        Ctx { bits: bits.max(128) }
    }

    pub fn zero(&self) -> Fx {
        Fx { m: BigInt::zero() }
    }

    pub fn one(&self) -> Fx {
        Fx { m: BigInt::one() << self.bits }
    }

    pub fn from_u64(&self, v: u64) -> Fx {
        Fx { m: BigInt::from(v) << self.bits }
    }

    pub fn from_rational(&self, q: &BigRational) -> Fx {
        Fx { m: (q.numer() << self.bits) / q.denom() }
    }

    pub fn add(&self, a: &Fx, b: &Fx) -> Fx {
        Fx { m: &a.m + &b.m }
    }

    pub fn sub(&self, a: &Fx, b: &Fx) -> Fx {
        Fx { m: &a.m - &b.m }
    }

    pub fn mul(&self, a: &Fx, b: &Fx) -> Fx {
        Fx { m: (&a.m * &b.m) >> self.bits }
    }

    pub fn div(&self, a: &Fx, b: &Fx) -> Fx {
        assert!(!b.m.is_zero());
        Fx { m: (&a.m << self.bits) / &b.m }
    }

    pub fn div_u64(&self, a: &Fx, d: u64) -> Fx {
        Fx { m: &a.m / BigInt::from(d) }
    }

    pub fn neg(&self, a: &Fx) -> Fx {
        Fx { m: -&a.m }
    }

    /// Nearest f64 (±inf when the exponent leaves the f64 range).
    pub fn to_f64(&self, a: &Fx) -> f64 {
        if a.m.is_zero() {
            return 0.0;
        }
        let neg = a.m.is_negative();
        let m = a.m.abs();
        let bits = m.bits();
        let (top, shift) = if bits <= 53 {
            (m.to_f64().unwrap(), 0i64)
        } else {
            ((&m >> (bits - 53)).to_f64().unwrap(), (bits - 53) as i64)
        };
        let e = shift - self.bits as i64;
        let v = if e.unsigned_abs() <= 960 {
            top * (e as f64).exp2()
        } else {
            (top.ln() + e as f64 * std::f64::consts::LN_2).exp()
        };
        if neg {
            -v
        } else {
            v
        }
    }

    /// ln |a| as f64; -inf for zero.
    pub fn ln_abs_f64(&self, a: &Fx) -> f64 {
        if a.m.is_zero() {
            return f64::NEG_INFINITY;
        }
        let m = a.m.abs();
        let bits = m.bits();
        let (top, shift) = if bits <= 52 {
            (m.to_f64().unwrap(), 0i64)
        } else {
            ((&m >> (bits - 52)).to_f64().unwrap(), (bits - 52) as i64)
        };
        top.ln() + (shift - self.bits as i64) as f64 * std::f64::consts::LN_2
    }

    /// Integer square root by Newton iteration.
    pub fn sqrt(&self, a: &Fx) -> Fx {
        assert!(!a.m.is_negative());
        if a.m.is_zero() {
            return self.zero();
        }
        let n: BigInt = &a.m << self.bits;
        let mut x: BigInt = BigInt::one() << (n.bits().div_ceil(2));
        loop {
            let next = (&x + &n / &x) >> 1;
            if next >= x {
                break;
            }
            x = next;
        }
        Fx { m: x }
    }

    /// Real cube root (sign-preserving) by Newton iteration.
    pub fn cbrt(&self, a: &Fx) -> Fx {
        if a.m.is_zero() {
            return self.zero();
        }
        let neg = a.m.is_negative();
        let n: BigInt = a.m.abs() << (2 * self.bits);
        let mut x: BigInt = BigInt::one() << (n.bits() / 3 + 1);
        loop {
            let next = (2u32 * &x + &n / (&x * &x)) / 3u32;
            if next >= x {
                break;
            }
            x = next;
        }
        Fx { m: if neg { -x } else { x } }
    }

    /// π by Machin's formula.
    pub fn pi(&self) -> Fx {
        let atan_inv = |q: u64| -> BigInt {
            // atan(1/q) = Σ (−1)^k / ((2k+1) q^(2k+1)), fixed point
            let q2 = BigInt::from(q) * BigInt::from(q);
            let mut term: BigInt = (BigInt::one() << (self.bits + 16)) / BigInt::from(q);
            let mut total = BigInt::zero();
            let mut k = 0u64;
            while !term.is_zero() {
                let contrib = &term / BigInt::from(2 * k + 1);
                if k % 2 == 0 {
                    total += contrib;
                } else {
                    total -= contrib;
                }
                term = &term / &q2;
                k += 1;
            }
            total
        };
        let v = 16 * atan_inv(5) - 4 * atan_inv(239);
        Fx { m: v >> 16 }
    }

    /// ln 2 = 2·atanh(1/3).
    pub fn ln2(&self) -> Fx {
        let mut term: BigInt = (BigInt::one() << (self.bits + 16)) / BigInt::from(3);
        let nine = BigInt::from(9);
        let mut total = BigInt::zero();
        let mut k = 0u64;
        while !term.is_zero() {
            total += &term / BigInt::from(2 * k + 1);
            term = &term / &nine;
            k += 1;
        }
        Fx { m: (total << 1) >> 16 }
    }

    /// e^a with range reduction by ln 2.
    pub fn exp(&self, a: &Fx) -> Fx {
        let ln2 = self.ln2();
        // k = round(a / ln2)
        let shifted: BigInt = &a.m + (&ln2.m >> 1);
        let k_big: BigInt = shifted.div_floor(&ln2.m);
        let k = k_big.to_i64().expect("exp argument out of range");
        let r = Fx { m: &a.m - k_big * &ln2.m };
        // |r| <= ln2/2: Taylor
        let mut term = self.one();
        let mut total = self.one();
        let mut i = 1u64;
        while !term.m.is_zero() {
            term = self.div_u64(&self.mul(&term, &r), i);
            total = self.add(&total, &term);
            i += 1;
            if i > 10_000 {
                break;
            }
        }
        if k >= 0 {
            Fx { m: total.m << k as u64 }
        } else {
            Fx { m: total.m >> (-k) as u64 }
        }
    }

    /// ln a for a > 0: normalize to [1, 2), then atanh series.
    pub fn ln(&self, a: &Fx) -> Fx {
        assert!(a.m.is_positive(), "ln of non-positive fixed-point value");
        let bits_m = a.m.bits() as i64;
        let e = bits_m - 1 - self.bits as i64; // a = z·2^e with z in [1, 2)
        let z = if e >= 0 { Fx { m: &a.m >> e as u64 } } else { Fx { m: &a.m << (-e) as u64 } };
        // ln z = 2 atanh((z-1)/(z+1)), argument in [0, 1/3)
        let num = self.sub(&z, &self.one());
        let den = self.add(&z, &self.one());
        let t = self.div(&num, &den);
        let t2 = self.mul(&t, &t);
        let mut term = t.clone();
        let mut total = self.zero();
        let mut k = 0u64;
        while !term.m.is_zero() {
            total = self.add(&total, &self.div_u64(&term, 2 * k + 1));
            term = self.mul(&term, &t2);
            k += 1;
        }
        let ln_z = Fx { m: total.m << 1 };
        let ln2 = self.ln2();
        Fx { m: ln_z.m + BigInt::from(e) * ln2.m }
    }

    /// ln Γ(q) for rational q > 0: lift the argument until the Stirling
    /// series with exact Bernoulli numbers converges below 2^-bits.
    pub fn ln_gamma_rational(&self, q: &BigRational) -> Fx {
        assert!(q.is_positive());
        // lift so w >= max(32, bits/4): comfortably inside the convergent
        // sweet spot (the series' best term is ~ e^(-2πw))
        let target = (self.bits / 4).max(32);
        let mut shift_num = BigRational::one();
        let mut w = q.clone();
        let target_rat = BigRational::from_integer(BigInt::from(target));
        while w < target_rat {
            shift_num *= &w;
            w += BigRational::one();
        }
        let wf = self.from_rational(&w);
        let ln_w = self.ln(&wf);
        // (w - 1/2) ln w - w + ln(2π)/2
        let half = self.from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)));
        let mut acc = self.mul(&self.sub(&wf, &half), &ln_w);
        acc = self.sub(&acc, &wf);
        let two_pi = Fx { m: self.pi().m << 1 };
        acc = self.add(&acc, &Fx { m: self.ln(&two_pi).m >> 1 });
        // Σ B_{2k} / (2k(2k-1) w^{2k-1}) — computed in exact rational
        // arithmetic per term (w is rational): late terms pair a huge
        // Bernoulli number with a tiny power, which fixed-point products
        // would amplify into the result.
        let bern = bernoulli_even_cached();
        let w2 = &w * &w;
        let mut w_pow = w.clone(); // w^{2k-1}
        for (k, b2k) in bern.iter().enumerate().skip(1) {
            let denom = BigRational::from_integer(BigInt::from(2 * k as u64 * (2 * k as u64 - 1)));
            let term_rat = b2k / (denom * &w_pow);
            // stop once |term| < 2^-(bits+8)
            let mag_bits = term_rat.numer().bits() as i64 - term_rat.denom().bits() as i64;
            if mag_bits < -(self.bits as i64 + 8) {
                break;
            }
            acc = self.add(&acc, &self.from_rational(&term_rat));
            w_pow *= &w2;
        }
        // undo the lifting: ln Γ(q) = ln Γ(w) - ln(q(q+1)...(w-1))
        let ln_shift = self.ln(&self.from_rational(&shift_num));
        self.sub(&acc, &ln_shift)
    }
}

fn bernoulli_even_cached() -> &'static [BigRational] {
    static CACHE: OnceLock<Vec<BigRational>> = OnceLock::new();
    CACHE.get_or_init(|| bernoulli_even(170))
}

/// Even-index Bernoulli numbers B_0, B_2, ..., B_{2k_max} (exact), via
/// Σ_{j=0}^{m} C(m+1, j) B_j = 0.
fn bernoulli_even(k_max: usize) -> Vec<BigRational> {
    let m_max = 2 * k_max;
    let mut all: Vec<BigRational> = Vec::with_capacity(m_max + 1);
    all.push(BigRational::one());
    for m in 1..=m_max {
        // B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let mut acc = BigRational::zero();
        let mut cmj = BigInt::one(); // C(m+1, j), starting at j = 0
        for (j, bj) in all.iter().enumerate() {
            if j > 0 {
                cmj = &cmj * BigInt::from((m + 2 - j) as u64) / BigInt::from(j as u64);
            }
            if !bj.is_zero() {
                acc += bj * BigRational::from_integer(cmj.clone());
            }
        }
        let bm = -acc / BigRational::from_integer(BigInt::from(m as u64 + 1));
        all.push(bm);
    }
    all.into_iter().step_by(2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ctx() -> Ctx {
        Ctx::new(256)
    }

    #[test]
    fn pi_and_ln2() {
        let c = ctx();
        assert!((c.to_f64(&c.pi()) - PI).abs() < 1e-15);
        assert!((c.to_f64(&c.ln2()) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn sqrt_cbrt() {
        let c = ctx();
        let two = c.from_u64(2);
        assert!((c.to_f64(&c.sqrt(&two)) - 2f64.sqrt()).abs() < 1e-15);
        let x = c.from_rational(&BigRational::new(BigInt::from(-72), BigInt::one()));
        assert!((c.to_f64(&c.cbrt(&x)) - (-72f64).cbrt()).abs() < 1e-13);
    }

    #[test]
    fn exp_ln_round_trip() {
        let c = ctx();
        for v in [0.001f64, 0.5, 1.0, 3.25, 17.0, 123.456] {
            let q = BigRational::from_float(v).unwrap();
            let f = c.from_rational(&q);
            let e = c.exp(&f);
            let back = c.ln(&e);
            assert!((c.to_f64(&back) - v).abs() < 1e-14 * v.max(1.0), "v = {v}");
        }
        // exp of a negative argument
        let q = BigRational::from_float(-5.5f64).unwrap();
        let f = c.from_rational(&q);
        assert!((c.to_f64(&c.exp(&f)) - (-5.5f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn ln_gamma_matches_f64() {
        let c = Ctx::new(384);
        for (num, den) in [(1i64, 2i64), (7, 6), (11, 6), (1, 1), (5, 1), (13, 4)] {
            let q = BigRational::new(BigInt::from(num), BigInt::from(den));
            let hi = c.to_f64(&c.ln_gamma_rational(&q));
            let lo = super::super::gamma::ln_gamma(num as f64 / den as f64);
            assert!((hi - lo).abs() < 1e-11, "q = {num}/{den}: {hi} vs {lo}");
        }
        // Γ(1/2) = √π to high precision: compare mantissas at 384 bits
        let g_half = c.exp(&c.ln_gamma_rational(&BigRational::new(BigInt::one(), BigInt::from(2))));
        let sqrt_pi = c.sqrt(&c.pi());
        let diff = (&g_half.m - &sqrt_pi.m).abs();
        assert!(diff < (BigInt::one() << 24), "|Γ(1/2) − √π| = {diff} ulps at 384 bits");
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_even(6);
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(b[0], r(1, 1));
        assert_eq!(b[1], r(1, 6));
        assert_eq!(b[2], r(-1, 30));
        assert_eq!(b[3], r(1, 42));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[5], r(5, 66));
        assert_eq!(b[6], r(-691, 2730));
    }
}
