//! Truncated integer power series in one variable `u`: the value domain
//! of the virtual Poincaré series. A series carries its cutoff `N` and
//! exact integer coefficients `c_0..c_N`; every operation truncates at
//! the smaller cutoff of its operands. There is no rational-function
//! normal form — the truncated coefficient vector is the canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Integer power series truncated after degree `cutoff`.
///
/// `PartialEq` compares cutoffs and coefficients exactly; use
/// [`TruncSeries::agrees_with`] to compare two series only on the
/// degrees both of them carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    cutoff: usize,
    coeffs: Vec<i64>,
}

impl TruncSeries {
    /// Series with the given low-order coefficients, zero-padded or
    /// truncated to the cutoff.
    #[must_use]
    pub fn from_coeffs(cutoff: usize, coeffs: &[i64]) -> Self {
        let mut c = coeffs.to_vec();
        c.resize(cutoff + 1, 0);
        c.truncate(cutoff + 1);
        TruncSeries { cutoff, coeffs: c }
    }

    /// Series whose coefficients are the given dimension counts.
    #[must_use]
    pub fn from_dims(cutoff: usize, dims: &[usize]) -> Self {
        let coeffs: Vec<i64> = dims.iter().map(|&d| d as i64).collect();
        Self::from_coeffs(cutoff, &coeffs)
    }

    #[must_use]
    pub fn zero(cutoff: usize) -> Self {
        Self::from_coeffs(cutoff, &[])
    }

    #[must_use]
    pub fn one(cutoff: usize) -> Self {
        Self::from_coeffs(cutoff, &[1])
    }

    /// `1 + u + u^2 + ...`, the truncation of `1/(1-u)`.
    #[must_use]
    pub fn geometric(cutoff: usize) -> Self {
        TruncSeries {
            cutoff,
            coeffs: vec![1; cutoff + 1],
        }
    }

    #[must_use]
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Coefficient of `u^q` (zero beyond the cutoff).
    #[must_use]
    pub fn coeff(&self, q: usize) -> i64 {
        self.coeffs.get(q).copied().unwrap_or(0)
    }

    #[must_use]
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Multiplication by `u^d`: moves `c_q` to `c_{q+d}` and zero-fills
    /// the low degrees; the cutoff stays put, so top terms fall off.
    #[must_use]
    pub fn shift(&self, d: usize) -> Self {
        let mut coeffs = vec![0; self.cutoff + 1];
        if d <= self.cutoff {
            coeffs[d..].copy_from_slice(&self.coeffs[..=self.cutoff - d]);
        }
        TruncSeries {
            cutoff: self.cutoff,
            coeffs,
        }
    }

    /// True iff the two series agree on every degree up to the smaller
    /// of the two cutoffs.
    #[must_use]
    pub fn agrees_with(&self, other: &TruncSeries) -> bool {
        let upto = self.cutoff.min(other.cutoff);
        (0..=upto).all(|q| self.coeffs[q] == other.coeffs[q])
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let cutoff = self.cutoff.min(rhs.cutoff);
        let coeffs = (0..=cutoff).map(|q| self.coeffs[q] + rhs.coeffs[q]).collect();
        TruncSeries { cutoff, coeffs }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let cutoff = self.cutoff.min(rhs.cutoff);
        let coeffs = (0..=cutoff).map(|q| self.coeffs[q] - rhs.coeffs[q]).collect();
        TruncSeries { cutoff, coeffs }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            cutoff: self.cutoff,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let cutoff = self.cutoff.min(rhs.cutoff);
        let mut coeffs = vec![0i64; cutoff + 1];
        for i in 0..=cutoff {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..=cutoff - i {
                coeffs[i + j] += self.coeffs[i] * rhs.coeffs[j];
            }
        }
        TruncSeries { cutoff, coeffs }
    }
}

impl fmt::Display for TruncSeries {
    /// Renders like `1 + 2*u + u^2 (+ O(u^17))`: zero terms are omitted,
    /// unit coefficients drop the `1*`, and the zero series prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.unsigned_abs();
            match q {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if q == 1 {
                        write!(f, "u")?;
                    } else {
                        write!(f, "u^{q}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (+ O(u^{}))", self.cutoff + 1)
    }
}
