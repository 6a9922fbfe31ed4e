//! Double-double arithmetic (~106-bit mantissa) for evaluating the handful
//! of transcendental closed forms in this crate, chiefly k/(1 + sec(pi/k))
//! for odd cycles. Based on the classic error-free transforms of Dekker and
//! Knuth.

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// pi to double-double precision.
pub const PI: Dd = Dd {
    hi: 3.141592653589793,
    lo: 1.2246467991473532e-16,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = f64::mul_add(a, b, -p);
    (p, err)
}

impl Dd {
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from(q1)));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul(Dd::from(q2)));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        let (hi, lo2) = quick_two_sum(hi, lo + q3);
        Dd { hi, lo: lo2 }
    }

    pub fn scale(self, k: f64) -> Dd {
        self.mul(Dd::from(k))
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::from(0.0);
        }
        // one Newton step on top of the f64 square root
        let x = self.hi.sqrt();
        let x_dd = Dd::from(x);
        let r = self.sub(x_dd.mul(x_dd));
        let correction = r.hi / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, correction);
        Dd { hi, lo }
    }

    /// cos(x) by Taylor series; intended for |x| <= pi/3 where the series
    /// converges fast (the odd-cycle closed forms only need x = pi/k, k >= 3).
    pub fn cos(self) -> Dd {
        let x2 = self.mul(self);
        let mut term = Dd::from(1.0);
        let mut sum = Dd::from(1.0);
        let mut k = 0u64;
        loop {
            k += 1;
            let denom = ((2 * k - 1) * (2 * k)) as f64;
            term = term.mul(x2).div(Dd::from(denom));
            let signed = if k % 2 == 1 {
                Dd {
                    hi: -term.hi,
                    lo: -term.lo,
                }
            } else {
                term
            };
            let next = sum.add(signed);
            if next == sum || k > 40 {
                return next;
            }
            sum = next;
        }
    }
}

/// theta of the odd cycle C_k: k / (1 + sec(pi/k)) = k cos(pi/k) / (1 + cos(pi/k)).
pub fn theta_odd_cycle(k: u64) -> Dd {
    let x = PI.div(Dd::from(k as f64));
    let c = x.cos();
    Dd::from(k as f64).mul(c).div(Dd::from(1.0).add(c))
}

/// d-th root of a natural number, correct to double-double accuracy.
pub fn nth_root(base: u64, degree: u32) -> Dd {
    if degree == 1 {
        return Dd::from(base as f64);
    }
    if base == 0 {
        return Dd::from(0.0);
    }
    let x0 = (base as f64).powf(1.0 / degree as f64);
    // Newton iteration on x^d - base in double-double
    let mut x = Dd::from(x0);
    let b = Dd::from(base as f64);
    let d = degree as f64;
    for _ in 0..3 {
        let mut xd1 = Dd::from(1.0);
        for _ in 0..(degree - 1) {
            xd1 = xd1.mul(x);
        }
        let xd = xd1.mul(x);
        // x -= (x^d - b) / (d x^(d-1))
        let delta = xd.sub(b).div(xd1.scale(d));
        x = x.sub(delta);
    }
    x
}

/// Tight f64 interval around a double-double value.
pub fn to_interval(x: Dd) -> (f64, f64) {
    let v = x.to_f64();
    (v.next_down(), v.next_up())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic_beats_f64() {
        let third = Dd::from(1.0).div(Dd::from(3.0));
        let one = third.scale(3.0);
        assert!((one.to_f64() - 1.0).abs() < 1e-30);
        assert!(one.hi == 1.0);
    }

    #[test]
    fn cos_of_zero_and_known_angle() {
        assert_eq!(Dd::from(0.0).cos().to_f64(), 1.0);
        // cos(pi/3) = 1/2
        let c = PI.div(Dd::from(3.0)).cos();
        assert!((c.to_f64() - 0.5).abs() < 1e-28);
    }

    #[test]
    fn theta_c5_is_sqrt5() {
        // 5 / (1 + sec(pi/5)) = sqrt(5), a classical identity
        let t = theta_odd_cycle(5);
        assert!((t.to_f64() - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn theta_c7_digits() {
        let t = theta_odd_cycle(7);
        assert!((t.to_f64() - 3.3176672).abs() < 5e-8, "{}", t.to_f64());
    }

    #[test]
    fn nth_roots() {
        let r = nth_root(367, 5);
        let check = r.mul(r).mul(r).mul(r).mul(r).to_f64();
        assert!((check - 367.0).abs() < 1e-10);
        assert!((nth_root(26, 2).to_f64() - 26f64.sqrt()).abs() < 1e-15);
        assert!((nth_root(247, 3).to_f64() - 247f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn sqrt_dd() {
        let s = Dd::from(5.0).sqrt();
        let back = s.mul(s).to_f64();
        assert!((back - 5.0).abs() < 1e-29);
    }
}
