//! p-adic valuations on Q. The local field is modelled by Q with a chosen
//! prime valuation; absolute values enter only through exponent bookkeeping,
//! so the valuation itself is all we ever need.

use super::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

/// v_p(x), or +infinity for x = 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PadicVal {
    Finite(i64),
    Infinity,
}

impl PadicVal {
    pub fn finite(self) -> Option<i64> {
        match self {
            PadicVal::Finite(v) => Some(v),
            PadicVal::Infinity => None,
        }
    }

    pub fn add(self, other: PadicVal) -> PadicVal {
        match (self, other) {
            (PadicVal::Finite(a), PadicVal::Finite(b)) => PadicVal::Finite(a + b),
            _ => PadicVal::Infinity,
        }
    }

    pub fn min(self, other: PadicVal) -> PadicVal {
        match (self, other) {
            (PadicVal::Finite(a), PadicVal::Finite(b)) => PadicVal::Finite(a.min(b)),
            (PadicVal::Finite(a), _) | (_, PadicVal::Finite(a)) => PadicVal::Finite(a),
            _ => PadicVal::Infinity,
        }
    }
}

impl fmt::Display for PadicVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicVal::Finite(v) => write!(f, "{v}"),
            PadicVal::Infinity => write!(f, "+inf"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn int_valuation(x: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!x.is_zero());
    let mut v = 0i64;
    let mut cur = x.clone();
    loop {
        let (q, r) = cur.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        cur = q;
    }
}

/// v_p(numerator) - v_p(denominator); +infinity for 0. Rejects non-prime p.
pub fn padic_val(x: &Rat, p: u64) -> Result<PadicVal, crate::exact::ExactError> {
    if !is_prime(p) {
        return Err(crate::exact::ExactError::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(PadicVal::Infinity);
    }
    let pb = BigInt::from(p);
    Ok(PadicVal::Finite(
        int_valuation(x.numer(), &pb) - int_valuation(x.denom(), &pb),
    ))
}
