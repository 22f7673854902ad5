//! Small finite fields as explicit addition and multiplication tables.
//!
//! Elements are the integers `0..q`. For `q = p^k` with `k > 1`, element `a`
//! encodes the polynomial whose coefficients are the base-`p` digits of `a`
//! (least significant digit = constant term), reduced modulo a stored monic
//! irreducible polynomial of degree `k`.

use thiserror::Error;

/// Largest prime order accepted (tables are `q²` entries).
pub const MAX_PRIME_ORDER: u32 = 1021;

/// Monic irreducible moduli for the supported proper prime powers, as
/// `(p, k, low coefficients c_0..c_{k-1})` of `x^k + c_{k-1} x^{k-1} + ... + c_0`.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),       // x^2 + x + 1
    (2, 3, &[1, 1, 0]),    // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0]), // x^4 + x + 1
    (3, 2, &[1, 0]),       // x^2 + 1
    (3, 3, &[1, 2, 0]),    // x^3 + 2x + 1
    (5, 2, &[2, 0]),       // x^2 + 2
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error(
        "unsupported field order {0}: q must be a prime up to {MAX_PRIME_ORDER} \
         or one of the prime powers 4, 8, 9, 16, 25, 27"
    )]
    Unsupported(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    q: u32,
    p: u32,
    degree: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// Builds `GF(q)`.
pub fn make_field(q: u32) -> Result<FiniteField, FieldError> {
    if is_prime(q) {
        if q > MAX_PRIME_ORDER {
            return Err(FieldError::Unsupported(q));
        }
        let table = |f: fn(u32, u32) -> u32| {
            (0..q)
                .flat_map(|a| (0..q).map(move |b| f(a, b) % q))
                .collect::<Vec<_>>()
        };
        return Ok(FiniteField {
            q,
            p: q,
            degree: 1,
            add: table(|a, b| a + b),
            mul: table(|a, b| a * b),
        });
    }
    let &(p, k, low) = MODULI
        .iter()
        .find(|(p, k, _)| p.pow(*k) == q)
        .ok_or(FieldError::Unsupported(q))?;
    Ok(extension_field(p, k, low))
}

/// The stored irreducible modulus for `q = p^k`, lowest coefficient first,
/// including the leading 1. `None` for primes and unsupported orders.
pub fn stored_modulus(q: u32) -> Option<(u32, Vec<u32>)> {
    MODULI.iter().find(|(p, k, _)| p.pow(*k) == q).map(|&(p, _, low)| {
        let mut coeffs = low.to_vec();
        coeffs.push(1);
        (p, coeffs)
    })
}

fn extension_field(p: u32, k: u32, low: &[u32]) -> FiniteField {
    let q = p.pow(k);
    let k = k as usize;
    let digits = |mut a: u32| {
        let mut d = vec![0u32; k];
        for slot in d.iter_mut() {
            *slot = a % p;
            a /= p;
        }
        d
    };
    let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &x| acc * p + x);

    let mut add = vec![0; (q * q) as usize];
    let mut mul = vec![0; (q * q) as usize];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = encode(&sum);

            let mut prod = vec![0u32; 2 * k - 1];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // x^k = -(c_{k-1} x^{k-1} + ... + c_0)
            for deg in (k..prod.len()).rev() {
                let lead = prod[deg];
                if lead == 0 {
                    continue;
                }
                prod[deg] = 0;
                for (i, c) in low.iter().enumerate() {
                    let t = deg - k + i;
                    prod[t] = (prod[t] + (p - lead) * c) % p;
                }
            }
            mul[(a * q + b) as usize] = encode(&prod[..k]);
        }
    }
    FiniteField {
        q,
        p,
        degree: k as u32,
        add,
        mul,
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

impl FiniteField {
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    /// Exhaustively checks the field axioms on the tables. Returns the first
    /// violated axiom.
    pub fn verify_axioms(&self) -> Result<(), String> {
        let q = self.q;
        if !q.is_multiple_of(self.p) {
            return Err(format!("characteristic {} does not divide {q}", self.p));
        }
        let one_p = (1..self.p).fold(1, |acc, _| self.add(acc, 1));
        if one_p != 0 {
            return Err(format!("1 added {} times is not 0", self.p));
        }
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if a != 0 && self.inv(a).is_none() {
                return Err(format!("{a} has no multiplicative inverse"));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a}, {b})"));
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [u32; 12] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27];

    #[test]
    fn gf2_is_xor_and() {
        let f = make_field(2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(f.add(a, b), a ^ b);
                assert_eq!(f.mul(a, b), a & b);
            }
        }
    }

    #[test]
    fn gf3_is_mod_3() {
        let f = make_field(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(f.add(a, b), (a + b) % 3);
                assert_eq!(f.mul(a, b), (a * b) % 3);
            }
        }
    }

    #[test]
    fn gf4_tables() {
        // elements 0, 1, x = 2, x + 1 = 3 with x^2 = x + 1
        let f = make_field(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.add(2, 3), 1);
        f.verify_axioms().unwrap();
    }

    #[test]
    fn all_supported_fields_satisfy_axioms() {
        for q in SUPPORTED {
            let f = make_field(q).unwrap();
            assert_eq!(f.order(), q);
            assert_eq!(f.characteristic().pow(f.degree()), q);
            f.verify_axioms().unwrap_or_else(|e| panic!("GF({q}): {e}"));
        }
    }

    #[test]
    fn stored_moduli_have_no_roots_and_are_irreducible() {
        // degree 2 and 3 polynomials are irreducible iff they have no roots;
        // degree 4 over GF(2) additionally must not factor into quadratics.
        for q in [4u32, 8, 9, 16, 25, 27] {
            let (p, coeffs) = stored_modulus(q).unwrap();
            let eval = |x: u32| coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p);
            assert!((0..p).all(|x| eval(x) != 0), "modulus for {q} has a root");
        }
        // the only irreducible quadratic over GF(2) is x^2 + x + 1; its square
        // is x^4 + x^2 + 1, which differs from x^4 + x + 1.
        assert_eq!(stored_modulus(16).unwrap().1, vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 10, 12, 32, 49, 1031] {
            let err = make_field(q).unwrap_err();
            assert!(err.to_string().contains("prime"), "{err}");
        }
    }
}
