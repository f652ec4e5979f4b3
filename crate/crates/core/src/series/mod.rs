//! Truncated univariate power series over an exact coefficient ring.
//!
//! A [`Series`] of order `N` is exact modulo `x^{N+1}`. Binary operations on
//! series of different orders truncate to the smaller order and the result
//! carries that order.

mod coeff;
mod poly_t;

use std::ops::{Add, Mul, Neg, Sub};

pub use coeff::Coefficient;
pub use poly_t::PolyT;

use crate::error::{Error, Result};
use crate::scalars::{int, ratio, Rational};

#[derive(Clone, PartialEq, Debug)]
pub struct Series<R> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Coefficient> Series<R> {
    /// From the given coefficients, zero-padded or truncated to `order + 1`.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        Series { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    /// The identity series `x`.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![R::zero(), R::one()], order)
    }

    /// `c · xᵉ`.
    pub fn monomial(c: R, e: usize, order: usize) -> Self {
        let mut coeffs = vec![R::zero(); e];
        coeffs.push(c);
        Self::new(coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Exact coefficient of `xⁱ`.
    pub fn coefficient(&self, i: usize) -> Result<&R> {
        self.coeffs.get(i).ok_or(Error::OutOfRange {
            index: i,
            order: self.order,
        })
    }

    pub fn constant_term(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Series {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order).map(|i| self.coeffs[i].add(&rhs.coeffs[i])).collect();
        Series { order, coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order).map(|i| self.coeffs[i].sub(&rhs.coeffs[i])).collect();
        Series { order, coeffs }
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|a| a.mul(c))
    }

    /// Schoolbook convolution modulo `x^{N+1}`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Series { order, coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inverse().ok_or(Error::NonUnit)?;
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for n in 1..=self.order {
            let mut acc = R::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&out[n - k]));
                }
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// `exp f` for `f(0) = 0`, via `n·g_n = Σ_{k=1}^n k·f_k·g_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp needs a zero constant term".into()));
        }
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(R::one());
        for n in 1..=self.order {
            let mut acc = R::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&out[n - k]).scale(&int(k as i64)));
                }
            }
            out.push(acc.scale(&ratio(1, n as i64)));
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// `log f` for `f(0) = 1`, via `n·l_n = n·f_n - Σ_{k=1}^{n-1} k·l_k·f_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != R::one() {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(R::zero());
        for n in 1..=self.order {
            let mut acc = self.coeffs[n].scale(&int(n as i64));
            for k in 1..n {
                if !out[k].is_zero() {
                    acc = acc.sub(&out[k].mul(&self.coeffs[n - k]).scale(&int(k as i64)));
                }
            }
            out.push(acc.scale(&ratio(1, n as i64)));
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// `self ∘ inner` by Horner's rule; `inner(0)` must vanish.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Domain("composition needs an inner series with zero constant term".into()));
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for i in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[i]);
        }
        Ok(acc)
    }

    /// `d/dx`; exact modulo `x^N`, so the order drops by one (saturating).
    pub fn derivative(&self) -> Self {
        let order = self.order.saturating_sub(1);
        let coeffs = (0..=order)
            .map(|i| match self.coeffs.get(i + 1) {
                Some(c) => c.scale(&int(i as i64 + 1)),
                None => R::zero(),
            })
            .collect();
        Series { order, coeffs }
    }

    /// Antiderivative with zero constant term; exact to one higher order.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order + 2);
        coeffs.push(R::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&ratio(1, i as i64 + 1)));
        }
        Series {
            order: self.order + 1,
            coeffs,
        }
    }
}

impl<R: Coefficient> Add for &Series<R> {
    type Output = Series<R>;
    fn add(self, rhs: &Series<R>) -> Series<R> {
        Series::add(self, rhs)
    }
}

impl<R: Coefficient> Sub for &Series<R> {
    type Output = Series<R>;
    fn sub(self, rhs: &Series<R>) -> Series<R> {
        Series::sub(self, rhs)
    }
}

impl<R: Coefficient> Mul for &Series<R> {
    type Output = Series<R>;
    fn mul(self, rhs: &Series<R>) -> Series<R> {
        Series::mul(self, rhs)
    }
}

impl<R: Coefficient> Neg for &Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        Series::neg(self)
    }
}

impl Series<Rational> {
    /// `e^{kx}`.
    pub fn exp_linear(k: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = int(1);
        coeffs.push(c.clone());
        for i in 1..=order {
            c = c * k / int(i as i64);
            coeffs.push(c.clone());
        }
        Series { order, coeffs }
    }

    /// `(1 - e^{-x})/x = Σ (-1)ⁱ xⁱ/(i+1)!`.
    pub fn one_minus_exp_neg_over_x(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = int(1);
        for i in 0..=order {
            fact *= int(i as i64 + 1);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            coeffs.push(int(sign) / &fact);
        }
        Series { order, coeffs }
    }

    /// Lifts rational coefficients to ℚ[t].
    pub fn to_poly_t(&self) -> Series<PolyT> {
        self.map(|c| PolyT::constant(c.clone()))
    }
}

/// The Todd series `x/(1 - e^{-x})` modulo `x^{N+1}`, obtained by inverting
/// `(1 - e^{-x})/x`.
pub fn todd_series(order: usize) -> Series<Rational> {
    Series::one_minus_exp_neg_over_x(order)
        .invert()
        .expect("constant term is 1")
}

/// Integrates every coefficient over `t ∈ [0, 1]`.
pub fn integrate_t_01(f: &Series<PolyT>) -> Series<Rational> {
    f.map(PolyT::integrate_01)
}

/// `(f - f|_{t=0}) / t`, coefficientwise.
pub fn subtract_t0_divide_t(f: &Series<PolyT>) -> Series<PolyT> {
    f.map(PolyT::drop_constant_divide_t)
}

/// Substitutes `x ↦ t·x`: the coefficient of `xⁱ` picks up `tⁱ`.
pub fn substitute_tx(f: &Series<Rational>) -> Series<PolyT> {
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| PolyT::monomial(c.clone(), i))
        .collect();
    Series::new(coeffs, f.order())
}
