use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result};
use crate::rational::{dot, Rational};

/// `ρ(x) = λ·x + λ₀` over the `n` loop variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineFunction {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl AffineFunction {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> AffineFunction {
        AffineFunction { coeffs, constant }
    }

    pub fn zero(n: usize) -> AffineFunction {
        AffineFunction::new(vec![Rational::ZERO; n], Rational::ZERO)
    }

    /// The function `x_i` itself.
    pub fn variable(n: usize, i: usize) -> AffineFunction {
        let mut f = AffineFunction::zero(n);
        f.coeffs[i] = Rational::ONE;
        f
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// Value at a state `x` of length `n`.
    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        check_dim(self.n(), x.len())?;
        Ok(dot(&self.coeffs, x) + &self.constant)
    }

    /// Value at the source state of a transition point of length `2n`.
    pub fn eval_source(&self, point: &[Rational]) -> Result<Rational> {
        check_dim(2 * self.n(), point.len())?;
        self.eval(&point[..self.n()])
    }

    /// `Δρ(x'') = ρ(x) − ρ(x')` for a transition point `(x, x')`.
    pub fn delta(&self, point: &[Rational]) -> Result<Rational> {
        check_dim(2 * self.n(), point.len())?;
        let n = self.n();
        Ok(dot(&self.coeffs, &point[..n]) - dot(&self.coeffs, &point[n..]))
    }

    /// Coefficients over `(x, x')` of `Δρ`.
    pub fn delta_coeffs(&self) -> Vec<Rational> {
        let mut v = self.coeffs.clone();
        v.extend(self.coeffs.iter().map(|c| -c));
        v
    }

    /// Coefficients over `(x, x')` of `ρ(x)` without its constant.
    pub fn source_coeffs(&self) -> Vec<Rational> {
        let mut v = self.coeffs.clone();
        v.extend(std::iter::repeat(Rational::ZERO).take(self.n()));
        v
    }

    pub fn scale(&self, a: &Rational) -> AffineFunction {
        AffineFunction::new(
            self.coeffs.iter().map(|c| c * a).collect(),
            &self.constant * a,
        )
    }

    pub fn add(&self, other: &AffineFunction) -> AffineFunction {
        AffineFunction::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            &self.constant + &other.constant,
        )
    }

    pub fn shift(&self, c: &Rational) -> AffineFunction {
        AffineFunction::new(self.coeffs.clone(), &self.constant + c)
    }

    /// Human-readable form such as `x + 2*y - 1` using the given names.
    pub fn render(&self, names: &[String]) -> String {
        let mut terms: Vec<(Rational, String)> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| (c.clone(), v.clone()))
            .collect();
        if !self.constant.is_zero() || terms.is_empty() {
            terms.push((self.constant.clone(), String::new()));
        }
        let mut out = String::new();
        for (i, (c, v)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if v.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(v);
            } else {
                out.push_str(&format!("{a}*{v}"));
            }
        }
        out
    }
}
