use serde::{Deserialize, Serialize};

/// Coefficient ring: either the integers, or `Z/m` for a modulus `m`.
///
/// `Z/p^N` doubles as the `p`-adic integers truncated at precision `N`; the
/// prime is remembered so valuations and unit tests are available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coeffs {
    modulus: Option<i128>,
    prime: Option<i128>,
}

impl Coeffs {
    pub const INTEGERS: Coeffs = Coeffs {
        modulus: None,
        prime: None,
    };

    pub fn integers() -> Self {
        Self::INTEGERS
    }

    /// `Z/p^n`.
    pub fn prime_power(p: u64, n: u32) -> Self {
        let p = p as i128;
        let modulus = p.checked_pow(n).expect("p^N does not fit in 128 bits");
        Coeffs {
            modulus: Some(modulus),
            prime: Some(p),
        }
    }

    /// `Z/m` for an arbitrary modulus; the prime is recorded when `m` is a
    /// prime power.
    pub fn modulo(m: i128) -> Self {
        let m = m.abs();
        if m == 0 {
            return Self::INTEGERS;
        }
        let prime = prime_power_base(m);
        Coeffs {
            modulus: Some(m),
            prime,
        }
    }

    pub fn modulus(&self) -> Option<i128> {
        self.modulus
    }

    pub fn prime(&self) -> Option<i128> {
        self.prime
    }

    /// Precision `N` when the ring is `Z/p^N`.
    pub fn precision(&self) -> Option<u32> {
        let (m, p) = (self.modulus?, self.prime?);
        let mut k = 0;
        let mut q = 1i128;
        while q < m {
            q *= p;
            k += 1;
        }
        Some(k)
    }

    pub fn is_field(&self) -> bool {
        matches!((self.modulus, self.prime), (Some(m), Some(p)) if m == p)
    }

    /// The zero ring `Z/1`.
    pub fn is_trivial(&self) -> bool {
        self.modulus == Some(1)
    }

    pub fn norm(&self, a: i128) -> i128 {
        match self.modulus {
            Some(m) => a.rem_euclid(m),
            None => a,
        }
    }

    pub fn add(&self, a: i128, b: i128) -> i128 {
        self.norm(a.checked_add(b).expect("coefficient overflow"))
    }

    pub fn sub(&self, a: i128, b: i128) -> i128 {
        self.norm(a.checked_sub(b).expect("coefficient overflow"))
    }

    pub fn neg(&self, a: i128) -> i128 {
        self.norm(-a)
    }

    pub fn mul(&self, a: i128, b: i128) -> i128 {
        match self.modulus {
            Some(m) => {
                let (a, b) = (a.rem_euclid(m), b.rem_euclid(m));
                match a.checked_mul(b) {
                    Some(c) => c % m,
                    None => mulmod(a, b, m),
                }
            }
            None => a
                .checked_mul(b)
                .expect("integer overflow in exact arithmetic"),
        }
    }

    pub fn pow(&self, a: i128, mut e: u32) -> i128 {
        let mut base = self.norm(a);
        let mut acc = self.norm(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: i128) -> bool {
        self.norm(a) == 0
    }

    pub fn is_unit(&self, a: i128) -> bool {
        match self.modulus {
            Some(m) => gcd(self.norm(a), m) == 1,
            None => a == 1 || a == -1,
        }
    }

    pub fn inv(&self, a: i128) -> Option<i128> {
        match self.modulus {
            Some(1) => Some(0),
            Some(m) => {
                let (g, x, _) = ext_gcd(self.norm(a), m);
                (g == 1).then(|| self.norm(x))
            }
            None => match a {
                1 => Some(1),
                -1 => Some(-1),
                _ => None,
            },
        }
    }

    /// `p`-adic valuation; `None` for zero or when no prime is attached.
    pub fn valuation(&self, a: i128) -> Option<u32> {
        let p = self.prime?;
        let mut a = self.norm(a);
        if a == 0 {
            return None;
        }
        let mut v = 0;
        while a % p == 0 {
            a /= p;
            v += 1;
        }
        Some(v)
    }

    /// Exact division `a / b` when `b` divides `a` in this ring.
    pub fn div_exact(&self, a: i128, b: i128) -> Option<i128> {
        let a = self.norm(a);
        let b = self.norm(b);
        match self.modulus {
            None => (b != 0 && a % b == 0).then(|| a / b),
            Some(_) => {
                if a == 0 {
                    return Some(0);
                }
                if b == 0 {
                    return None;
                }
                let p = self.prime?;
                let (vb, vb_unit) = split_p(b, p);
                let (va, va_unit) = split_p(a, p);
                if va < vb {
                    return None;
                }
                let u = self.inv(vb_unit)?;
                let pa = p.pow(va - vb);
                Some(self.mul(self.mul(va_unit, u), pa))
            }
        }
    }
}

fn split_p(mut a: i128, p: i128) -> (u32, i128) {
    let mut v = 0;
    while a != 0 && a % p == 0 {
        a /= p;
        v += 1;
    }
    (v, a)
}

fn mulmod(mut a: i128, mut b: i128, m: i128) -> i128 {
    let mut acc = 0i128;
    a %= m;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a + a) % m;
        b >>= 1;
    }
    acc
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, x, y)` with `a x + b y = g = gcd(a, b)`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_power_base(m: i128) -> Option<i128> {
    if m < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= m && m % p != 0 {
        p += 1;
    }
    if m % p != 0 {
        p = m;
    }
    let mut r = m;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_ring() {
        let c = Coeffs::prime_power(5, 3);
        assert_eq!(c.modulus(), Some(125));
        assert_eq!(c.precision(), Some(3));
        assert!(c.is_unit(7));
        assert!(!c.is_unit(10));
        assert_eq!(c.mul(c.inv(7).unwrap(), 7), 1);
        assert_eq!(c.valuation(50), Some(2));
        assert_eq!(c.div_exact(50, 10), Some(c.mul(5, c.inv(1).unwrap())));
        assert_eq!(c.div_exact(5, 25), None);
    }

    #[test]
    fn modulo_detects_prime_powers() {
        assert_eq!(Coeffs::modulo(8).prime(), Some(2));
        assert_eq!(Coeffs::modulo(6).prime(), None);
        assert!(Coeffs::modulo(7).is_field());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 1), 2);
        assert_eq!(binomial(40, 20), 137846528820);
    }

    #[test]
    fn large_modulus_multiplication() {
        let c = Coeffs::prime_power(5, 20);
        let m = c.modulus().unwrap();
        assert_eq!(c.mul(m - 1, m - 1), 1);
    }
}
