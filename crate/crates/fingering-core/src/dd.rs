//! Double-double arithmetic and the scalar abstraction for the coefficient
//! cascades.
//!
//! The third-order coefficient assembly cancels catastrophically at large
//! critical wavenumber: the homogeneous boundary weights grow to ~1e7 while
//! the assembled boundary velocity is ~1e-4, so plain `f64` keeps only four
//! to five accurate digits exactly where the solvability and boundary-trace
//! routes must agree to 1e-6. Evaluating the same formulas in double-double
//! (~31 significant digits) restores ~13 orders of margin. Algorithms are
//! the classical error-free transforms: Knuth two-sum, FMA two-product,
//! three-step division, and one Newton step for the square root.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Error-free sum: `a + b = s + e` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free sum assuming `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product: `a * b = p + e` exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// An unevaluated sum of two `f64`s with `|lo| <= ulp(hi)/2`, giving roughly
/// 31 significant decimal digits.
#[derive(Copy, Clone, Debug, Default)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Square root via one double-double Newton correction of the `f64` root.
    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        assert!(self.hi > 0.0, "sqrt of negative double-double");
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let r = Dd::new(ax);
        r + (self - r * r) * Dd::new(x * 0.5)
    }

    fn cmp_impl(self, other: Self) -> Ordering {
        let d = self - other;
        if d.hi < 0.0 || (d.hi == 0.0 && d.lo < 0.0) {
            Ordering::Less
        } else if d.hi > 0.0 || (d.hi == 0.0 && d.lo > 0.0) {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + (self.hi * o.lo + self.lo * o.hi);
        let (p1, p2) = quick_two_sum(p1, p2);
        Dd { hi: p1, lo: p2 }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::new(q3)
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_impl(*other) == Ordering::Equal
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_impl(*other))
    }
}

/// The scalar interface the closed-form coefficient cascades are written
/// against, so each formula has a single source of truth evaluated in either
/// `f64` (general API, residual engine) or [`Dd`] (bifurcation cascade).
pub trait Scalar:
    Copy
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + PartialOrd
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    /// Multiply by an exactly representable constant (formula literals).
    #[inline]
    fn scale(self, k: f64) -> Self {
        self * Self::from_f64(k)
    }
}

impl Scalar for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
}

impl Scalar for Dd {
    #[inline]
    fn from_f64(x: f64) -> Self {
        Dd::new(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Self {
        Dd::abs(self)
    }
}
