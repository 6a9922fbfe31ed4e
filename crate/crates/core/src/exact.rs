//! Exact numeric values for capacity bounds: rationals, quadratic surds
//! a + b*sqrt(m), symbolic odd-cycle theta values, natural-number radicals
//! with a rational offset, and float intervals as the common fallback.
//!
//! Arithmetic is closed inside a single quadratic field (fixed squarefree m);
//! operations that would leave the field degrade to an outward-rounded
//! interval.

use crate::dd::{self, Dd};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rational p/q.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExactValue {
    Rational(Rat),
    /// a + b*sqrt(m) with m squarefree > 1 and b != 0.
    Surd { a: Rat, b: Rat, m: u64 },
    /// The closed form k/(1 + sec(pi/k)) for an odd k >= 7, kept symbolic.
    ThetaOddCycle(u64),
    /// base^(1/degree) + offset with degree >= 3 (square roots normalize to
    /// `Surd`) and base not a perfect power of the degree.
    Radical { base: u64, degree: u32, offset: Rat },
    /// Outward-rounded float enclosure.
    Interval { lo: f64, hi: f64 },
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::Rational(Rat::zero())
    }

    pub fn one() -> Self {
        ExactValue::Rational(Rat::one())
    }

    pub fn from_nat(v: u64) -> Self {
        ExactValue::Rational(Rat::from_integer(BigInt::from(v)))
    }

    pub fn from_rat(v: Rat) -> Self {
        ExactValue::Rational(v)
    }

    /// a + b*sqrt(m), normalized (square part of m folded into b).
    pub fn surd(a: Rat, b: Rat, m: u64) -> Self {
        if b.is_zero() || m == 0 {
            return ExactValue::Rational(a);
        }
        let (square, free) = squarefree_decompose(m);
        let b = b * Rat::from_integer(BigInt::from(square));
        if free == 1 {
            return ExactValue::Rational(a + b);
        }
        ExactValue::Surd { a, b, m: free }
    }

    /// sqrt(m) as an exact value.
    pub fn sqrt_nat(m: u64) -> Self {
        ExactValue::surd(Rat::zero(), Rat::one(), m)
    }

    /// base^(1/degree) + offset, normalized.
    pub fn radical(base: u64, degree: u32, offset: Rat) -> Self {
        assert!(degree >= 1);
        if degree == 1 || base <= 1 {
            return ExactValue::Rational(offset + Rat::from_integer(BigInt::from(base)));
        }
        if let Some(root) = perfect_root(base, degree) {
            return ExactValue::Rational(offset + Rat::from_integer(BigInt::from(root)));
        }
        if degree == 2 {
            return ExactValue::surd(offset, Rat::one(), base);
        }
        ExactValue::Radical {
            base,
            degree,
            offset,
        }
    }

    /// theta of the odd cycle C_k. Returns sqrt(5) for k = 5 (a classical
    /// identity); symbolic for k >= 7.
    pub fn theta_odd_cycle(k: u64) -> Self {
        assert!(k >= 5 && k % 2 == 1);
        if k == 5 {
            ExactValue::sqrt_nat(5)
        } else {
            ExactValue::ThetaOddCycle(k)
        }
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        ExactValue::Interval { lo, hi }
    }

    /// True unless the value is only known as an interval.
    pub fn is_exact(&self) -> bool {
        !matches!(self, ExactValue::Interval { .. })
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ExactValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Outward-rounded f64 enclosure.
    pub fn to_interval(&self) -> (f64, f64) {
        match self {
            ExactValue::Rational(r) => {
                let (d, pad) = rat_to_dd(r);
                pad_interval(d, pad)
            }
            ExactValue::Surd { a, b, m } => {
                let (da, pa) = rat_to_dd(a);
                let (db, pb) = rat_to_dd(b);
                let v = da.add(db.mul(Dd::from(*m as f64).sqrt()));
                pad_interval(v, pa || pb || true)
            }
            ExactValue::ThetaOddCycle(k) => pad_interval(dd::theta_odd_cycle(*k), true),
            ExactValue::Radical {
                base,
                degree,
                offset,
            } => {
                let (off, _) = rat_to_dd(offset);
                pad_interval(dd::nth_root(*base, *degree).add(off), true)
            }
            ExactValue::Interval { lo, hi } => (*lo, *hi),
        }
    }

    /// Midpoint of the enclosure; display only.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.to_interval();
        (lo + hi) / 2.0
    }

    pub fn add(&self, other: &ExactValue) -> ExactValue {
        use ExactValue::*;
        if let Rational(x) = self {
            if x.is_zero() {
                return other.clone();
            }
        }
        if let Rational(y) = other {
            if y.is_zero() {
                return self.clone();
            }
        }
        match (self, other) {
            (Rational(x), Rational(y)) => Rational(x + y),
            (Rational(x), Surd { a, b, m }) | (Surd { a, b, m }, Rational(x)) => {
                ExactValue::surd(a + x, b.clone(), *m)
            }
            (Surd { a, b, m }, Surd { a: a2, b: b2, m: m2 }) if m == m2 => {
                ExactValue::surd(a + a2, b + b2, *m)
            }
            (Rational(x), Radical { base, degree, offset })
            | (Radical { base, degree, offset }, Rational(x)) => {
                ExactValue::radical(*base, *degree, offset + x)
            }
            _ => interval_binop(self, other, |a, b| a + b),
        }
    }

    pub fn neg(&self) -> ExactValue {
        use ExactValue::*;
        match self {
            Rational(x) => Rational(-x),
            Surd { a, b, m } => Surd {
                a: -a,
                b: -b,
                m: *m,
            },
            _ => {
                let (lo, hi) = self.to_interval();
                Interval { lo: -hi, hi: -lo }
            }
        }
    }

    pub fn sub(&self, other: &ExactValue) -> ExactValue {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ExactValue) -> ExactValue {
        use ExactValue::*;
        if let Rational(x) = self {
            if x.is_zero() {
                return ExactValue::zero();
            }
            if x.is_one() {
                return other.clone();
            }
        }
        if let Rational(y) = other {
            if y.is_zero() {
                return ExactValue::zero();
            }
            if y.is_one() {
                return self.clone();
            }
        }
        match (self, other) {
            (Rational(x), Rational(y)) => Rational(x * y),
            (Rational(x), Surd { a, b, m }) | (Surd { a, b, m }, Rational(x)) => {
                ExactValue::surd(a * x, b * x, *m)
            }
            (Surd { a, b, m }, Surd { a: a2, b: b2, m: m2 }) if m == m2 => {
                let mm = Rat::from_integer(BigInt::from(*m));
                ExactValue::surd(a * a2 + b * b2 * mm, a * b2 + a2 * b, *m)
            }
            (Rational(x), r @ Radical { .. }) | (r @ Radical { .. }, Rational(x)) => {
                if let Radical {
                    base,
                    degree,
                    offset,
                } = r
                {
                    if x.is_zero() {
                        return ExactValue::zero();
                    }
                    if offset.is_zero() && x.is_integer() && x.is_positive() {
                        if let Some(c) = x.to_integer().to_u64() {
                            if let Some(scaled) = c
                                .checked_pow(*degree)
                                .and_then(|cp| cp.checked_mul(*base))
                            {
                                return ExactValue::radical(scaled, *degree, Rat::zero());
                            }
                        }
                    }
                }
                interval_binop(self, other, |a, b| a * b)
            }
            _ => interval_binop(self, other, |a, b| a * b),
        }
    }

    /// Reciprocal; exact for rationals and surds (by rationalizing the
    /// denominator), interval otherwise.
    pub fn recip(&self) -> ExactValue {
        use ExactValue::*;
        match self {
            Rational(x) if !x.is_zero() => Rational(x.recip()),
            Surd { a, b, m } => {
                // 1/(a + b sqrt m) = (a - b sqrt m) / (a^2 - b^2 m)
                let mm = Rat::from_integer(BigInt::from(*m));
                let denom = a * a - b * b * mm.clone();
                if denom.is_zero() {
                    let (lo, hi) = self.to_interval();
                    return Interval {
                        lo: 1.0 / hi,
                        hi: 1.0 / lo,
                    };
                }
                ExactValue::surd(a / &denom, -(b / &denom), *m)
            }
            _ => {
                let (lo, hi) = self.to_interval();
                if lo <= 0.0 {
                    return Interval {
                        lo: f64::NEG_INFINITY,
                        hi: f64::INFINITY,
                    };
                }
                Interval {
                    lo: (1.0 / hi).next_down(),
                    hi: (1.0 / lo).next_up(),
                }
            }
        }
    }

    /// Natural power by repeated squaring.
    pub fn pow(&self, k: u64) -> ExactValue {
        if k == 0 {
            return ExactValue::one();
        }
        if let ExactValue::Radical {
            base,
            degree,
            offset,
        } = self
        {
            if offset.is_zero() && k % *degree as u64 == 0 {
                let e = (k / *degree as u64) as u32;
                let b = BigInt::from(*base).pow(e);
                return ExactValue::Rational(Rat::from_integer(b));
            }
        }
        let mut acc = ExactValue::one();
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                return acc;
            }
            base = base.mul(&base);
        }
    }

    /// Total comparison where the enclosures decide; `None` when the
    /// enclosures overlap and the values are not structurally equal.
    pub fn compare(&self, other: &ExactValue) -> Option<Ordering> {
        use ExactValue::*;
        match (self, other) {
            (Rational(x), Rational(y)) => Some(x.cmp(y)),
            _ => {
                if self.structurally_eq(other) {
                    return Some(Ordering::Equal);
                }
                if let (Some(d), true) = (
                    self.sub(other).as_rational().map(|d| d.cmp(&Rat::zero())),
                    same_field(self, other),
                ) {
                    return Some(d);
                }
                let (alo, ahi) = self.to_interval();
                let (blo, bhi) = other.to_interval();
                if ahi < blo {
                    Some(Ordering::Less)
                } else if alo > bhi {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
        }
    }

    /// `self <= other + tol` on enclosures.
    pub fn le_with_tol(&self, other: &ExactValue, tol: f64) -> bool {
        let (alo, _) = self.to_interval();
        let (_, bhi) = other.to_interval();
        alo <= bhi + tol
    }

    pub fn approx_eq(&self, x: f64, tol: f64) -> bool {
        let (lo, hi) = self.to_interval();
        lo - tol <= x && x <= hi + tol
    }

    /// Structural equality after normalization; this is the equality used by
    /// "exact" capacity results.
    pub fn structurally_eq(&self, other: &ExactValue) -> bool {
        self == other
    }

    /// Symbolic rendering, e.g. `3+√5`, `5/2`, `367^(1/5)+3`, `theta(C7)`.
    pub fn render(&self) -> String {
        match self {
            ExactValue::Rational(r) => format!("{r}"),
            ExactValue::Surd { a, b, m } => {
                let root = format!("√{m}");
                let bterm = if b == &Rat::one() {
                    root
                } else if b == &-Rat::one() {
                    format!("-{root}")
                } else if b.is_integer() {
                    format!("{b}{root}")
                } else {
                    format!("({b}){root}")
                };
                if a.is_zero() {
                    bterm
                } else if b.is_negative() {
                    format!("{a}{bterm}")
                } else {
                    format!("{a}+{bterm}")
                }
            }
            ExactValue::ThetaOddCycle(k) => format!("theta(C{k})"),
            ExactValue::Radical {
                base,
                degree,
                offset,
            } => {
                let root = format!("{base}^(1/{degree})");
                if offset.is_zero() {
                    root
                } else if offset.is_negative() {
                    format!("{root}{offset}")
                } else {
                    format!("{root}+{offset}")
                }
            }
            ExactValue::Interval { lo, hi } => format!("[{lo:.9}, {hi:.9}]"),
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn same_field(a: &ExactValue, b: &ExactValue) -> bool {
    use ExactValue::*;
    matches!(
        (a, b),
        (Rational(_), Rational(_))
            | (Rational(_), Surd { .. })
            | (Surd { .. }, Rational(_))
    ) || matches!((a, b), (Surd { m, .. }, Surd { m: m2, .. }) if m == m2)
}

fn interval_binop(
    a: &ExactValue,
    b: &ExactValue,
    op: impl Fn(f64, f64) -> f64,
) -> ExactValue {
    let (alo, ahi) = a.to_interval();
    let (blo, bhi) = b.to_interval();
    let candidates = [
        op(alo, blo),
        op(alo, bhi),
        op(ahi, blo),
        op(ahi, bhi),
    ];
    let lo = candidates.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = candidates.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    ExactValue::Interval {
        lo: lo.next_down(),
        hi: hi.next_up(),
    }
}

/// Convert a big rational to double-double; the bool reports whether the
/// conversion may be inexact.
fn rat_to_dd(r: &Rat) -> (Dd, bool) {
    let hi = r.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return (Dd::from(hi), true);
    }
    let back = Rat::from_float(hi).unwrap_or_else(Rat::zero);
    let rem = r - back;
    let lo = rem.to_f64().unwrap_or(0.0);
    (Dd { hi, lo }, lo != 0.0)
}

fn pad_interval(v: Dd, _inexact: bool) -> (f64, f64) {
    let x = v.to_f64();
    // two ulps outward: one for the dd truncation, one for arithmetic slack
    (x.next_down().next_down(), x.next_up().next_up())
}

/// m = square * free with free squarefree; returns (sqrt(square), free).
pub fn squarefree_decompose(m: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut rest = m;
    let mut d = 2u64;
    while d * d <= rest {
        if rest % d == 0 {
            let mut count = 0;
            while rest % d == 0 {
                rest /= d;
                count += 1;
            }
            square *= d.pow(count / 2);
            if count % 2 == 1 {
                free *= d;
            }
        }
        d += 1;
    }
    free *= rest;
    (square, free)
}

/// Is `base` a perfect `degree`-th power? Returns the root if so.
fn perfect_root(base: u64, degree: u32) -> Option<u64> {
    let r = (base as f64).powf(1.0 / degree as f64).round() as u64;
    for cand in r.saturating_sub(1)..=r + 1 {
        if cand.checked_pow(degree) == Some(base) {
            return Some(cand);
        }
    }
    None
}

/// Format to `digits` significant digits with round-half-even, matching the
/// rounding convention of printed reference values.
pub fn render_significant(x: f64, digits: u32) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let neg = x < 0.0;
    let x = x.abs();
    let mut exp = x.log10().floor() as i32;
    let mut scaled = x / 10f64.powi(exp - digits as i32 + 1);
    let mut int = scaled.round_ties_even() as u64;
    if int >= 10u64.pow(digits) {
        // rounding carried into a new leading digit
        exp += 1;
        scaled = x / 10f64.powi(exp - digits as i32 + 1);
        int = scaled.round_ties_even() as u64;
    }
    let s = int.to_string();
    let point = exp + 1; // digits before the decimal point
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat(-point as usize), s)
    } else if (point as usize) >= s.len() {
        format!("{}{}", s, "0".repeat(point as usize - s.len()))
    } else {
        format!("{}.{}", &s[..point as usize], &s[point as usize..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_square_law() {
        // (a + b sqrt m)^2 = (a^2 + b^2 m) + 2ab sqrt m
        let v = ExactValue::surd(rat_int(2), rat_int(3), 5);
        let sq = v.pow(2);
        assert_eq!(sq, ExactValue::surd(rat_int(49), rat_int(12), 5));
    }

    #[test]
    fn surd_normalization() {
        // sqrt(18) = 3 sqrt(2)
        let v = ExactValue::sqrt_nat(18);
        assert_eq!(v, ExactValue::surd(rat_int(0), rat_int(3), 2));
        // sqrt(9) = 3
        assert_eq!(ExactValue::sqrt_nat(9), ExactValue::from_nat(3));
    }

    #[test]
    fn radical_normalization() {
        assert_eq!(
            ExactValue::radical(8, 3, rat_int(0)),
            ExactValue::from_nat(2)
        );
        assert_eq!(
            ExactValue::radical(26, 2, rat_int(1)),
            ExactValue::surd(rat_int(1), rat_int(1), 26)
        );
        let r = ExactValue::radical(367, 5, rat_int(3));
        assert!(r.is_exact());
        assert!(r.approx_eq(6.2578659, 1e-7));
    }

    #[test]
    fn theta_c5_normalizes_to_sqrt5() {
        assert_eq!(ExactValue::theta_odd_cycle(5), ExactValue::sqrt_nat(5));
        let t7 = ExactValue::theta_odd_cycle(7);
        assert!(t7.approx_eq(3.3176672, 1e-7));
    }

    #[test]
    fn capacity_of_c5_plus_k1() {
        // sqrt(5) + 1, and its k-th powers stay in the field with positive
        // surd part
        let v = ExactValue::sqrt_nat(5).add(&ExactValue::one());
        assert_eq!(v, ExactValue::surd(rat_int(1), rat_int(1), 5));
        for k in 1..8 {
            match v.pow(k) {
                ExactValue::Surd { b, .. } => assert!(b.is_positive()),
                other => panic!("power left the field: {other:?}"),
            }
        }
        // (1 + sqrt5)^2 = 6 + 2 sqrt5
        assert_eq!(v.pow(2), ExactValue::surd(rat_int(6), rat_int(2), 5));
    }

    #[test]
    fn cross_field_degrades_to_interval() {
        let a = ExactValue::sqrt_nat(5);
        let b = ExactValue::sqrt_nat(13);
        let prod = a.mul(&b);
        assert!(!prod.is_exact());
        assert!(prod.approx_eq(65f64.sqrt(), 1e-9));
    }

    #[test]
    fn comparisons() {
        let a = ExactValue::sqrt_nat(5);
        let b = ExactValue::from_rat(rat(9, 4));
        assert_eq!(a.compare(&b), Some(Ordering::Less));
        let twice = a.add(&a);
        assert_eq!(
            twice.compare(&ExactValue::surd(rat_int(0), rat_int(2), 5)),
            Some(Ordering::Equal)
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(
            ExactValue::surd(rat_int(3), rat_int(1), 5).render(),
            "3+√5"
        );
        assert_eq!(ExactValue::sqrt_nat(5).render(), "√5");
        assert_eq!(ExactValue::from_rat(rat(5, 2)).render(), "5/2");
        assert_eq!(
            ExactValue::radical(367, 5, rat_int(3)).render(),
            "367^(1/5)+3"
        );
        assert_eq!(ExactValue::from_nat(4).render(), "4");
    }

    #[test]
    fn significant_rounding_half_even() {
        assert_eq!(render_significant(3.0 + 5f64.sqrt(), 6), "5.23607");
        assert_eq!(render_significant(3.0 + 5f64.sqrt(), 7), "5.236068");
        assert_eq!(render_significant(26f64.sqrt(), 6), "5.09902");
        assert_eq!(render_significant(136f64.powf(1.0 / 3.0), 6), "5.14256");
        assert_eq!(render_significant(0.25, 2), "0.25");
        assert_eq!(render_significant(2.0, 3), "2.00");
        assert_eq!(render_significant(9.999, 3), "10.0");
    }

    #[test]
    fn interval_outwardness() {
        let v = ExactValue::from_rat(rat(1, 3));
        let (lo, hi) = v.to_interval();
        assert!(lo < 1.0 / 3.0 && 1.0 / 3.0 < hi);
        assert!(hi - lo < 1e-15);
    }
}
