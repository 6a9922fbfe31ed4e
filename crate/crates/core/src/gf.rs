//! Arithmetic in small finite fields GF(q), q = p^m ≤ 1024.
//!
//! Elements are encoded as integers in `0..q`: the base-p digits of an
//! element are the coefficients of its polynomial representation, lowest
//! degree first. For m > 1 the field is constructed modulo the
//! lexicographically smallest monic irreducible polynomial of degree m over
//! GF(p), so element numbering is deterministic across runs.

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_Q: u64 = 1024;

/// Decompose `q` as `p^m` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0u64;
    let mut rest = q;
    for d in 2..=q {
        if d * d > q && p == 0 {
            // q itself is prime
            return Some((q, 1));
        }
        if rest % d == 0 {
            p = d;
            break;
        }
    }
    let mut m = 0u32;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest == 1 {
        Some((p, m))
    } else {
        None
    }
}

/// A finite field with full multiplication table (q ≤ 1024).
pub struct Gf {
    pub q: u64,
    pub p: u64,
    pub m: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl Gf {
    pub fn new(q: u64) -> Result<Gf> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        if q > MAX_Q {
            return Err(Error::domain(format!(
                "field order {q} exceeds the supported maximum {MAX_Q}"
            )));
        }
        let qn = q as usize;
        let mut add = vec![0u16; qn * qn];
        let mut mul = vec![0u16; qn * qn];
        if m == 1 {
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = ((a + b) % q) as u16;
                    mul[(a * q + b) as usize] = ((a * b) % q) as u16;
                }
            }
        } else {
            let modulus = irreducible_poly(p, m);
            for a in 0..q {
                let pa = digits(a, p, m);
                for b in 0..q {
                    let pb = digits(b, p, m);
                    let sum: Vec<u64> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p).collect();
                    add[(a * q + b) as usize] = undigits(&sum, p) as u16;
                    let prod = poly_mul_mod(&pa, &pb, &modulus, p);
                    mul[(a * q + b) as usize] = undigits(&prod, p) as u16;
                }
            }
        }
        Ok(Gf { q, p, m, add, mul })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize] as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize] as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        (1..self.q).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    /// The set {x² : x ∈ GF(q)^×} as a sorted list.
    pub fn nonzero_squares(&self) -> Vec<u64> {
        let mut sq: Vec<u64> = (1..self.q).map(|x| self.mul(x, x)).collect();
        sq.sort_unstable();
        sq.dedup();
        sq
    }
}

fn digits(x: u64, p: u64, m: u32) -> Vec<u64> {
    let mut x = x;
    let mut d = Vec::with_capacity(m as usize);
    for _ in 0..m {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiply two polynomials (coefficients mod p, lowest degree first) and
/// reduce modulo the monic `modulus`.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce: x^m ≡ -(lower part of modulus)
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (k, &mc) in modulus.iter().enumerate().take(m) {
            let sub = (c * mc) % p;
            prod[deg - m + k] = (prod[deg - m + k] + p - sub) % p;
        }
    }
    prod.truncate(m);
    while prod.len() < m {
        prod.push(0);
    }
    prod
}

/// x^e mod f over GF(p), with f monic of degree m (coefficients low-first,
/// f[m] == 1).
fn poly_xpow_mod(e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let mut result = vec![0u64; m];
    result[0] = 1; // polynomial "1"
    let mut base = vec![0u64; m];
    if m == 1 {
        // x ≡ -f[0]
        base[0] = (p - f[0] % p) % p;
    } else {
        base[1] = 1;
    }
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &base, f, p);
        }
        base = poly_mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    result
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let trim = |v: &[u64]| {
        let mut v = v.to_vec();
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    };
    let mut a = trim(a);
    let mut b = trim(b);
    while !poly_is_zero(&b) {
        // a mod b
        let db = b.len() - 1;
        let lead_inv = mod_inv(b[db], p);
        let mut r = a.clone();
        while r.len() > db && !(r.len() == 1 && r[0] == 0) {
            let dr = r.len() - 1;
            if dr < db {
                break;
            }
            let c = (r[dr] * lead_inv) % p;
            if c != 0 {
                for k in 0..=db {
                    let sub = (c * b[k]) % p;
                    r[dr - db + k] = (r[dr - db + k] + p - sub) % p;
                }
            }
            r = trim(&r);
            if r.len() == 1 && r[0] == 0 {
                break;
            }
        }
        a = b;
        b = trim(&r);
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and small.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Lexicographically smallest monic irreducible polynomial of degree m over
/// GF(p), low-degree coefficients first, with the leading 1 included.
fn irreducible_poly(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    let total = p.pow(m as u32);
    for code in 0..total {
        let mut f = digits(code, p, m as u32);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists");
}

/// Rabin irreducibility test for monic f of degree m over GF(p).
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u32;
    if f[0] == 0 {
        return false; // divisible by x
    }
    // x^(p^m) ≡ x (mod f)
    let pm = p.pow(m);
    let xpm = poly_xpow_mod(pm, f, p);
    let mut x_poly = vec![0u64; f.len() - 1];
    if x_poly.len() == 1 {
        x_poly[0] = (p - f[0] % p) % p;
    } else {
        x_poly[1] = 1;
    }
    if xpm != x_poly {
        return false;
    }
    // gcd(x^(p^(m/r)) - x, f) == 1 for every prime r | m
    let mut r = 2u32;
    let mut mm = m;
    let mut primes = Vec::new();
    while r * r <= mm {
        if mm % r == 0 {
            primes.push(r);
            while mm % r == 0 {
                mm /= r;
            }
        }
        r += 1;
    }
    if mm > 1 {
        primes.push(mm);
    }
    for r in primes {
        let e = p.pow(m / r);
        let mut diff = poly_xpow_mod(e, f, p);
        // subtract x
        let idx = 1.min(diff.len() - 1);
        if diff.len() > 1 {
            diff[idx] = (diff[idx] + p - 1) % p;
        } else {
            // degree-1 field: x reduces to constant
            let xc = (p - f[0] % p) % p;
            diff[0] = (diff[0] + p - xc) % p;
        }
        let g = poly_gcd(f, &diff, p);
        if !(g.len() == 1 && g[0] != 0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn gf9_is_a_field() {
        let f = Gf::new(9).unwrap();
        // every nonzero element has an inverse and mul is commutative
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            for b in 0..9 {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(a, b), f.add(b, a));
            }
        }
        // characteristic 3: 1+1+1 = 0
        let one_plus_one = f.add(1, 1);
        assert_eq!(f.add(one_plus_one, 1), 0);
    }

    #[test]
    fn gf9_squares() {
        let f = Gf::new(9).unwrap();
        let sq = f.nonzero_squares();
        // (q-1)/2 = 4 distinct nonzero squares
        assert_eq!(sq.len(), 4);
    }

    #[test]
    fn gf_prime_matches_modular_arithmetic() {
        let f = Gf::new(13).unwrap();
        for a in 0..13 {
            for b in 0..13 {
                assert_eq!(f.add(a, b), (a + b) % 13);
                assert_eq!(f.mul(a, b), (a * b) % 13);
            }
        }
    }

    #[test]
    fn distributivity_in_gf8() {
        let f = Gf::new(8).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}
