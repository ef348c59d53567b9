//! Certified rational enclosures for the few irrational quantities that show
//! up in volume-product bounds: square roots and pi.
//!
//! Every operation returns an interval that provably contains the true
//! value, so a comparison against an exact rational can be certified from
//! one endpoint. Square roots of perfect squares come back as degenerate
//! (exact) intervals, which keeps rationally-valued bound formulas exact.

use crate::error::{Error, Result};
use crate::rat::{Int, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Default enclosure precision in bits; final widths stay below `2^-64`
/// with room to spare.
pub const DEFAULT_BITS: u32 = 96;

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Interval {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn exact(r: Rat) -> Interval {
        Interval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        self.hi.clone() - self.lo.clone()
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone() + other.lo.clone(),
            hi: self.hi.clone() + other.hi.clone(),
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone() - other.hi.clone(),
            hi: self.hi.clone() - other.lo.clone(),
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            self.lo.clone() * other.lo.clone(),
            self.lo.clone() * other.hi.clone(),
            self.hi.clone() * other.lo.clone(),
            self.hi.clone() * other.hi.clone(),
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        if c.is_negative() {
            Interval {
                lo: self.hi.clone() * c.clone(),
                hi: self.lo.clone() * c.clone(),
            }
        } else {
            Interval {
                lo: self.lo.clone() * c.clone(),
                hi: self.hi.clone() * c.clone(),
            }
        }
    }

    /// Every value of the interval is `<= r`.
    pub fn certified_le(&self, r: &Rat) -> bool {
        self.hi <= *r
    }

    /// Every value of the interval is `<= r` with room, i.e. `r` certifiably
    /// exceeds the enclosed value.
    pub fn certified_lt(&self, r: &Rat) -> bool {
        self.hi < *r
    }

    /// Every value of the interval is `>= r`.
    pub fn certified_ge(&self, r: &Rat) -> bool {
        self.lo >= *r
    }

    pub fn certified_gt(&self, r: &Rat) -> bool {
        self.lo > *r
    }
}

/// Certified enclosure of `sqrt(x)` for `x >= 0` with width below
/// `2^-bits`, exact (degenerate) whenever `x` is the square of a rational.
pub fn sqrt_rat(x: &Rat, bits: u32) -> Result<Interval> {
    if x.is_negative() {
        return Err(Error::BadRational(format!(
            "square root of negative value {x}"
        )));
    }
    if x.is_zero() {
        return Ok(Interval::exact(Rat::zero()));
    }
    // sqrt(p/q) = sqrt(p q) / q; scale by 4^bits so the integer square root
    // carries `bits` fractional bits.
    let p = x.numer().clone();
    let q = x.denom().clone();
    let scale: Int = BigInt::one() << (2 * bits);
    let m = &p * &q * &scale;
    let s = m.sqrt();
    let denom = q * (BigInt::one() << bits);
    if &s * &s == m {
        return Ok(Interval::exact(Rat::new(s, denom)));
    }
    Ok(Interval::new(
        Rat::new(s.clone(), denom.clone()),
        Rat::new(s + BigInt::one(), denom),
    ))
}

/// Certified enclosure of `sqrt` of an enclosed nonnegative value.
pub fn sqrt_interval(x: &Interval, bits: u32) -> Result<Interval> {
    let lo = sqrt_rat(x.lo(), bits)?;
    let hi = sqrt_rat(x.hi(), bits)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

/// Bracket of `arctan(1/x)` for integer `x >= 2` from the alternating
/// series: consecutive partial sums enclose the limit.
fn arctan_inv(x: i64, bits: u32) -> Interval {
    let x2 = Rat::from_integer(Int::from(x * x));
    let mut term = Rat::from_integer(Int::one()) / Rat::from_integer(Int::from(x));
    let mut sum = Rat::zero();
    let eps = Rat::new(BigInt::one(), BigInt::one() << (bits + 8));
    let mut k: i64 = 0;
    loop {
        let contribution = term.clone() / Rat::from_integer(Int::from(2 * k + 1));
        let prev = sum.clone();
        if k % 2 == 0 {
            sum += contribution;
        } else {
            sum -= contribution;
        }
        term /= x2.clone();
        let next = term.clone() / Rat::from_integer(Int::from(2 * k + 3));
        if next < eps {
            // limit lies between the last two partial sums
            return if sum >= prev {
                Interval::new(prev, sum)
            } else {
                Interval::new(sum, prev)
            };
        }
        k += 1;
    }
}

/// Certified enclosure of pi with width below `2^-bits`
/// (`pi = 16 arctan(1/5) - 4 arctan(1/239)`).
pub fn pi(bits: u32) -> Interval {
    let a = arctan_inv(5, bits);
    let b = arctan_inv(239, bits);
    a.scale(&Rat::from_integer(Int::from(16)))
        .sub(&b.scale(&Rat::from_integer(Int::from(4))))
}
