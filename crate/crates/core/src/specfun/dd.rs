//! Minimal double-double arithmetic for series accumulation.
//!
//! The ascending Bessel series suffer catastrophic cancellation for
//! moderate arguments (the terms grow like e^x while the sum stays O(1)).
//! Accumulating in roughly 106-bit precision keeps the crossover to the
//! large-argument expansions at x ~ 17 without losing digits.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        Dd::new(s, e)
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        Dd::new(p, e)
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        Dd::new(p, e + self.lo * x)
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let (p, e) = two_prod(q1, x);
        let r = (self.hi - p - e + self.lo) / x;
        Dd::new(q1, r)
    }

    #[inline]
    pub fn sqr_from(x: f64) -> Dd {
        let (p, e) = two_prod(x, x);
        Dd { hi: p, lo: e }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.value().abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_products() {
        let a = Dd::sqr_from(1.0 + 2f64.powi(-30));
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; the tail survives in lo.
        assert_eq!(a.hi, 1.0 + 2f64.powi(-29));
        assert_eq!(a.lo, 2f64.powi(-60));
    }

    #[test]
    fn cancellation_survives() {
        // (1e16 + 1) - 1e16 in dd keeps the 1 exactly.
        let s = Dd::from(1e16).add(Dd::from(1.0)).add(Dd::from(-1e16));
        assert_eq!(s.value(), 1.0);
    }
}
