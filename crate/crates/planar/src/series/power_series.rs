//! Truncated formal power series with exact rational coefficients.

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("division by series of higher valuation (num val {num}, den val {den})")]
    ValuationMismatch { num: usize, den: usize },
    #[error("division by series with zero constant term and no matching valuation")]
    NonUnitDivisor,
    #[error("coefficient of x^{0} below the x^{1} shift is nonzero")]
    ShiftUnderflow(usize, usize),
}

/// Coefficients `c_0 .. c_N`; all arithmetic is exact modulo `x^(N+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    /// c · x^k
    pub fn monomial(order: usize, k: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect();
        PowerSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    /// Multiply by x^k (truncating at the order).
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        PowerSeries { coeffs }
    }

    /// Divide by x^k. The resulting series keeps the same order (top
    /// coefficients become unknown-free zeros only if the input was padded);
    /// callers must treat coefficients above `order - k` as truncated.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        for i in 0..k.min(self.coeffs.len()) {
            if !self.coeffs[i].is_zero() {
                return Err(SeriesError::ShiftUnderflow(i, k));
            }
        }
        let order = self.order();
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in k..=order {
            coeffs[i - k] = self.coeffs[i].clone();
        }
        Ok(PowerSeries { coeffs })
    }

    /// Division; the divisor must be a unit, or share enough valuation with
    /// the numerator to cancel.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        if !other.coeffs[0].is_zero() {
            return Ok(self.div_unit(other));
        }
        let dv = other.valuation().ok_or(SeriesError::NonUnitDivisor)?;
        let nv = self.valuation().unwrap_or(self.order() + 1);
        if nv < dv {
            return Err(SeriesError::ValuationMismatch { num: nv, den: dv });
        }
        let num = self.shift_down(dv)?;
        let den = other.shift_down(dv)?;
        Ok(num.div_unit(&den).truncate(self.order() - dv))
    }

    fn div_unit(&self, other: &Self) -> Self {
        debug_assert!(!other.coeffs[0].is_zero());
        let order = self.order().min(other.order());
        let inv0 = BigRational::one() / other.coeffs[0].clone();
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            let mut acc = self.coeffs[i].clone();
            for j in 1..=i {
                if !other.coeffs[j].is_zero() && !coeffs[i - j].is_zero() {
                    acc -= &other.coeffs[j] * &coeffs[i - j];
                }
            }
            coeffs[i] = acc * &inv0;
        }
        PowerSeries { coeffs }
    }

    pub fn derivative(&self) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 1..=order {
            coeffs[i - 1] = &self.coeffs[i] * BigRational::from_integer(BigInt::from(i));
        }
        PowerSeries { coeffs }
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..order {
            coeffs[i + 1] =
                &self.coeffs[i] / BigRational::from_integer(BigInt::from(i + 1));
        }
        PowerSeries { coeffs }
    }

    /// exp of a series with zero constant term, via n·e_n = Σ k a_k e_{n−k}.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs zero constant term");
        let order = self.order();
        let mut e = vec![BigRational::zero(); order + 1];
        e[0] = BigRational::one();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !e[n - k].is_zero() {
                    acc += &self.coeffs[k] * BigRational::from_integer(BigInt::from(k)) * &e[n - k];
                }
            }
            e[n] = acc / BigRational::from_integer(BigInt::from(n));
        }
        PowerSeries { coeffs: e }
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Largest absolute coefficient, for diagnostics.
    pub fn max_abs(&self) -> BigRational {
        self.coeffs.iter().map(|c| c.abs()).fold(BigRational::zero(), |a, b| a.max(b))
    }
}
