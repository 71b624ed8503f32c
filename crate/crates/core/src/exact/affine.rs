//! Exponents of the shape p + q*s with rational p, q. The s-variable is the
//! complex parameter of the local-coefficient integrand; all bookkeeping stays
//! affine in s, so this pair is an exact representation.

use super::rat::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffineExp {
    /// constant part p
    pub p: Rat,
    /// slope q of the s-term
    pub q: Rat,
}

impl AffineExp {
    pub fn new(p: Rat, q: Rat) -> Self {
        AffineExp { p, q }
    }

    pub fn constant(p: Rat) -> Self {
        AffineExp {
            p,
            q: Rat::zero(),
        }
    }

    pub fn zero() -> Self {
        AffineExp::constant(Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn add(&self, rhs: &AffineExp) -> AffineExp {
        AffineExp {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }

    pub fn sub(&self, rhs: &AffineExp) -> AffineExp {
        AffineExp {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }

    pub fn scale(&self, c: &Rat) -> AffineExp {
        AffineExp {
            p: &self.p * c,
            q: &self.q * c,
        }
    }

    pub fn neg(&self) -> AffineExp {
        AffineExp {
            p: -&self.p,
            q: -&self.q,
        }
    }

    /// Evaluate at a rational value of s.
    pub fn at(&self, s: &Rat) -> Rat {
        &self.p + &(&self.q * s)
    }
}

impl fmt::Display for AffineExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            write!(f, "{}*s", self.q)
        } else {
            write!(f, "{} + {}*s", self.p, self.q)
        }
    }
}
