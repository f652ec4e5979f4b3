use std::fmt;

use super::Coefficient;
use crate::scalars::{int, Rational};

/// Polynomial in an auxiliary variable `t` with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `tⁱ`; trailing zeros are never stored,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyT {
    coeffs: Vec<Rational>,
}

impl PolyT {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Coefficient::is_zero) {
            coeffs.pop();
        }
        PolyT { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c · tᵉ`.
    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); e];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Value at `t = 0`.
    pub fn at_zero(&self) -> Rational {
        self.coeff(0)
    }

    /// `(p(t) - p(0)) / t`.
    pub fn drop_constant_divide_t(&self) -> PolyT {
        PolyT::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    /// `∫₀¹ p(t) dt = Σ cᵢ/(i+1)`.
    pub fn integrate_01(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / int(i as i64 + 1))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Debug for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Coefficient for PolyT {
    fn zero() -> Self {
        PolyT::default()
    }
    fn one() -> Self {
        PolyT::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyT::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return PolyT::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyT::new(out)
    }
    fn neg(&self) -> Self {
        PolyT::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn scale(&self, q: &Rational) -> Self {
        PolyT::new(self.coeffs.iter().map(|c| c * q).collect())
    }
    /// Units of ℚ[t] are the nonzero constants.
    fn inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => Some(PolyT::constant(c.recip())),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ratio;

    #[test]
    fn integration_over_unit_interval() {
        assert_eq!(PolyT::monomial(int(1), 2).integrate_01(), ratio(1, 3));
        // 3t² - 2t integrates to 1 - 1 = 0.
        let p = PolyT::new(vec![int(0), int(-2), int(3)]);
        assert_eq!(p.integrate_01(), int(0));
        assert_eq!(PolyT::constant(ratio(5, 7)).integrate_01(), ratio(5, 7));
    }

    #[test]
    fn units() {
        assert_eq!(PolyT::constant(int(2)).inverse(), Some(PolyT::constant(ratio(1, 2))));
        assert_eq!(PolyT::new(vec![int(1), int(1)]).inverse(), None);
        assert_eq!(PolyT::zero().inverse(), None);
    }

    #[test]
    fn normalization() {
        let p = PolyT::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        let q = PolyT::new(vec![int(0), int(1)]).add(&PolyT::new(vec![int(0), int(-1)]));
        assert!(q.is_zero());
    }
}
