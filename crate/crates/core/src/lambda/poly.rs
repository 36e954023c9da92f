use std::fmt;

use crate::arith;

use super::ModuleError;

/// A monic polynomial over `Z_n` with invertible constant term.
///
/// Coefficients are stored in ascending order and always end with the
/// leading 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    modulus: usize,
    coeffs: Vec<usize>,
}

impl Polynomial {
    /// Builds `c_0 + c_1 t + ... + c_d t^d`, reducing coefficients mod `modulus`.
    pub fn new(modulus: usize, coeffs: &[i64]) -> Result<Self, ModuleError> {
        if modulus < 2 {
            return Err(ModuleError::InvalidModulus(modulus));
        }
        if coeffs.len() < 2 {
            return Err(ModuleError::DegreeZero);
        }
        let coeffs: Vec<usize> = coeffs.iter().map(|&c| arith::modulo(c, modulus as u64) as usize).collect();
        if *coeffs.last().unwrap() != 1 {
            return Err(ModuleError::NonMonic);
        }
        if arith::gcd(coeffs[0] as u64, modulus as u64) != 1 {
            return Err(ModuleError::ConstantNotUnit { constant: coeffs[0], modulus });
        }
        Ok(Polynomial { modulus, coeffs })
    }

    /// `t - a`.
    pub fn linear(modulus: usize, a: usize) -> Result<Self, ModuleError> {
        Self::new(modulus, &[-(a as i64), 1])
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Ascending coefficients, including the leading 1.
    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: usize) -> usize {
        let n = self.modulus;
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % n)
    }

    /// Whether `self` divides `other` in `Z_n[t]`. Division by a monic
    /// polynomial is exact over any `Z_n`.
    pub fn divides(&self, other: &Polynomial) -> bool {
        if self.modulus != other.modulus || self.degree() > other.degree() {
            return false;
        }
        let n = self.modulus;
        let mut rem = other.coeffs.clone();
        let d = self.degree();
        for top in (d..rem.len()).rev() {
            let q = rem[top];
            if q == 0 {
                continue;
            }
            for (j, &c) in self.coeffs.iter().enumerate() {
                let k = top - d + j;
                rem[k] = (rem[k] + n - q * c % n) % n;
            }
        }
        rem[..d].iter().all(|&c| c == 0)
    }

    /// Every monic polynomial of the given degree over `Z_n` whose constant
    /// term is a unit, in lexicographic order of coefficient vectors.
    pub fn all_of_degree(modulus: usize, degree: usize) -> Vec<Polynomial> {
        assert!(degree >= 1);
        let mut out = Vec::new();
        let free = modulus.pow(degree as u32);
        for code in 0..free {
            let mut c = Vec::with_capacity(degree + 1);
            let mut rest = code;
            for _ in 0..degree {
                c.push((rest % modulus) as i64);
                rest /= modulus;
            }
            c.push(1);
            if let Ok(p) = Polynomial::new(modulus, &c) {
                out.push(p);
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Polynomial {
    /// Descending-degree form such as `t^2+2t+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{i}"),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}
