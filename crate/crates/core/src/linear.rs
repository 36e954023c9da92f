//! Closed-form criteria for linear quandles `Λ_n/(t - a)`.

use crate::arith::{gcd, modulo};
use crate::lambda::{image_one_minus_t, LambdaModule};
use crate::quandle::{construct_quandle_iso, IsoMethod, IsoWitness};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinearError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(i64),
    #[error("gcd({n}, {a}) != 1, so t is not invertible")]
    NotCoprime { n: usize, a: i64 },
}

/// A modulus `n >= 2` with a unit `a`, reduced to `1 <= a < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSpec {
    pub n: usize,
    pub a: usize,
}

impl LinearSpec {
    pub fn new(n: i64, a: i64) -> Result<Self, LinearError> {
        if n < 2 {
            return Err(LinearError::InvalidModulus(n));
        }
        let n = n as usize;
        let r = modulo(a, n as u64) as usize;
        if gcd(r as u64, n as u64) != 1 {
            return Err(LinearError::NotCoprime { n, a });
        }
        Ok(LinearSpec { n, a: r })
    }

    pub fn module(&self) -> LambdaModule {
        LambdaModule::linear(self.n, self.a).expect("validated")
    }
}

/// `n / gcd(n, 1 - a)`, the order of `(1 - t)` applied to `Λ_n/(t - a)`.
/// `gcd(n, 0) = n`, so `n_cap(n, 1) = 1`.
pub fn n_cap(n: usize, a: i64) -> usize {
    let d = modulo(1 - a, n as u64);
    n / gcd(n as u64, d) as usize
}

fn pair(n: usize, a: i64, b: i64) -> Result<(LinearSpec, LinearSpec), LinearError> {
    Ok((LinearSpec::new(n as i64, a)?, LinearSpec::new(n as i64, b)?))
}

/// `Λ_n/(t - a)` and `Λ_n/(t - b)` are isomorphic iff their `n_cap` values
/// agree and `a ≡ b` modulo that common value.
pub fn linear_iso(n: usize, a: i64, b: i64) -> Result<bool, LinearError> {
    let (x, y) = pair(n, a, b)?;
    let (na, nb) = (n_cap(n, x.a as i64), n_cap(n, y.a as i64));
    Ok(na == nb && (x.a % na) == (y.a % na))
}

/// Connected iff `gcd(n, 1 - a) = 1`. Never true for even `n`.
pub fn linear_connected(n: usize, a: i64) -> Result<bool, LinearError> {
    let s = LinearSpec::new(n as i64, a)?;
    Ok(gcd(n as u64, modulo(1 - s.a as i64, n as u64)) == 1)
}

/// Whether the dual of `Λ_n/(t - a)` is isomorphic to `Λ_n/(t - b)`: the
/// `n_cap` values agree and `ab ≡ 1` modulo that value.
pub fn linear_dual(n: usize, a: i64, b: i64) -> Result<bool, LinearError> {
    let (x, y) = pair(n, a, b)?;
    let (na, nb) = (n_cap(n, x.a as i64), n_cap(n, y.a as i64));
    Ok(na == nb && (x.a * y.a) % na == 1 % na)
}

/// Whether `Λ_n/(t - a)` is isomorphic to its dual, i.e. `a² ≡ 1` modulo
/// `n_cap(n, a)`.
///
/// Note this is not the same as `a` being a square modulo `n_cap`: for
/// `(n, a) = (7, 2)`, 2 = 3² mod 7 but 2·2 ≢ 1.
pub fn linear_self_dual(n: usize, a: i64) -> Result<bool, LinearError> {
    linear_dual(n, a, a)
}

/// Whether `a` is a square modulo `n_cap(n, a)`, by exhaustive squaring.
pub fn is_square_mod_n_cap(n: usize, a: i64) -> Result<bool, LinearError> {
    let s = LinearSpec::new(n as i64, a)?;
    let m = n_cap(n, s.a as i64);
    Ok((0..m).any(|x| x * x % m == s.a % m))
}

/// An explicit isomorphism `Λ_n/(t - a) -> Λ_n/(t - b)`, if one exists.
///
/// Both `(1 - t)` images are the subgroup of order `n_cap`; the map
/// `j(1 - a) -> j(1 - b)` is a Λ-isomorphism between them, which is then
/// extended to the whole quandle.
pub fn linear_witness(n: usize, a: i64, b: i64) -> Result<Option<IsoWitness>, LinearError> {
    if !linear_iso(n, a, b)? {
        return Ok(None);
    }
    let (x, y) = pair(n, a, b)?;
    let (m1, m2) = (x.module(), y.module());
    let (i1, i2) = (image_one_minus_t(&m1, 1), image_one_minus_t(&m2, 1));
    let (u, v) = ((n + 1 - x.a) % n, (n + 1 - y.a) % n);
    let mut h = vec![usize::MAX; i1.order()];
    for j in 0..n_cap(n, x.a as i64) {
        let src = i1.from_parent(j * u % n).expect("in the image");
        h[src] = i2.from_parent(j * v % n).expect("in the image");
    }
    let mut w = construct_quandle_iso(&m1, &m2, &h).expect("closed-form map is a Λ-isomorphism");
    w.method = IsoMethod::ClosedFormLinear;
    Ok(Some(w))
}
