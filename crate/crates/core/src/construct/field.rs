//! Small finite fields with table-backed arithmetic. The defining
//! polynomial for each extension is pinned deterministically (the
//! lexicographically least monic primitive one), so every artifact built
//! over a field is bit-reproducible; the polynomial is recorded in
//! output.

use super::ConstructError;
use crate::arith;

/// F_q for a prime power q up to 1024. Elements are indexed 0..q by
/// base-p digits of their coordinate vectors; index 0 is zero and index
/// 1 is one.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    /// coefficients c_0..c_{k-1} with x^k = -(c_0 + c_1 x + ... ) reduced,
    /// i.e. the non-leading coefficients of the monic defining polynomial
    poly: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    generator: u16,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<FiniteField, ConstructError> {
        let (p, k) = arith::is_prime_power(q)
            .ok_or(ConstructError::NotPrimePower { n: q })?;
        if q > 1024 {
            return Err(ConstructError::FieldTooLarge { q });
        }
        let poly = if k == 1 {
            Vec::new()
        } else {
            find_primitive_polynomial(p, k)
        };
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                add[a * qs + b] = add_digits(a as u64, b as u64, p, k) as u16;
            }
        }
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                mul[a * qs + b] = poly_mul(a as u64, b as u64, p, k, &poly) as u16;
            }
        }
        let mut f = FiniteField {
            p,
            k,
            q,
            poly,
            add,
            mul,
            generator: 0,
        };
        f.generator = if k == 1 {
            (2..p).find(|&g| f.order_of(g) == p - 1).unwrap_or(1) as u16
        } else {
            // x itself is primitive for the pinned polynomial
            debug_assert_eq!(f.order_of(p), q - 1);
            p as u16
        };
        Ok(f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[a as usize * self.q as usize + b as usize] as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[a as usize * self.q as usize + b as usize] as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        (1..self.q).find(|&b| self.mul(a, b) == 1).expect("field element has an inverse")
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn order_of(&self, a: u64) -> u64 {
        assert!(a != 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> u64 {
        self.generator as u64
    }

    /// The field Frobenius `a -> a^(p^f)`.
    pub fn frobenius(&self, a: u64, f: u32) -> u64 {
        self.pow(a, self.p.pow(f % self.k))
    }

    /// Human-readable defining polynomial, recorded in artifacts.
    pub fn poly_string(&self) -> String {
        if self.k == 1 {
            return format!("prime field F_{} (generator {})", self.p, self.generator);
        }
        let mut terms = vec![format!("x^{}", self.k)];
        for i in (0..self.k as usize).rev() {
            let c = self.poly[i];
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            });
        }
        format!("{} over F_{}", terms.join(" + "), self.p)
    }
}

fn digits(mut a: u64, p: u64, k: u32) -> Vec<u64> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push(a % p);
        a /= p;
    }
    d
}

fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn add_digits(a: u64, b: u64, p: u64, k: u32) -> u64 {
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let sum: Vec<u64> = da.iter().zip(db.iter()).map(|(x, y)| (x + y) % p).collect();
    from_digits(&sum, p)
}

/// Multiplies two elements written in base-p digits as polynomials in x,
/// reducing by x^k = -(poly).
fn poly_mul(a: u64, b: u64, p: u64, k: u32, poly: &[u64]) -> u64 {
    if k == 1 {
        return (a * b) % p;
    }
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let mut prod = vec![0u64; 2 * k as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce from the top down
    for i in (k as usize..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &pc) in poly.iter().enumerate() {
            let idx = i - k as usize + j;
            prod[idx] = (prod[idx] + c * (p - pc) % p) % p;
        }
    }
    from_digits(&prod[..k as usize], p)
}

/// Monic polynomial division check: does `d` divide `f` over F_p?
/// Both are coefficient vectors, constant term first, leading coeff 1.
fn divides(f: &[u64], d: &[u64], p: u64) -> bool {
    let mut rem = f.to_vec();
    let dd = d.len() - 1;
    while !rem.is_empty() && rem.len() - 1 >= dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for (j, &dc) in d.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + lead * (p - dc) % p) % p;
            }
            debug_assert_eq!(*rem.last().unwrap(), 0);
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

fn is_irreducible(poly: &[u64], k: u32, p: u64) -> bool {
    // full coefficient vector of the monic polynomial
    let mut f: Vec<u64> = poly.to_vec();
    f.push(1);
    // no monic divisor of degree 1..=k/2
    for deg in 1..=(k / 2).max(1) {
        if deg >= k {
            break;
        }
        let count = p.pow(deg);
        for idx in 0..count {
            let mut d = digits(idx, p, deg);
            d.push(1);
            if divides(&f, &d, p) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible polynomial of degree k
/// over F_p for which x generates the multiplicative group.
fn find_primitive_polynomial(p: u64, k: u32) -> Vec<u64> {
    let q = p.pow(k);
    let factors = arith::factor(q - 1);
    let count = p.pow(k);
    for idx in 0..count {
        let poly = digits(idx, p, k);
        if poly[0] == 0 {
            continue; // constant term 0 means x divides it
        }
        if !is_irreducible(&poly, k, p) {
            continue;
        }
        // primitivity of x: x^((q-1)/r) != 1 for every prime r | q-1
        let x = p; // the element "x"
        let primitive = factors.iter().all(|&(r, _)| {
            let e = (q - 1) / r;
            pow_in(x, e, p, k, &poly) != 1
        });
        if primitive {
            return poly;
        }
    }
    unreachable!("primitive polynomials exist for every (p, k)")
}

fn pow_in(a: u64, e: u64, p: u64, k: u32, poly: &[u64]) -> u64 {
    let mut acc = 1u64;
    let mut base = a;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(acc, base, p, k, poly);
        }
        base = poly_mul(base, base, p, k, poly);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field() {
        let f7 = FiniteField::new(7).unwrap();
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.inv(3), 5);
        assert_eq!(f7.order_of(f7.generator()), 6);
    }

    #[test]
    fn f4_and_f9() {
        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(f4.order_of(f4.generator()), 3);
        // char 2: a + a = 0
        for a in 0..4 {
            assert_eq!(f4.add(a, a), 0);
        }
        let f9 = FiniteField::new(9).unwrap();
        assert_eq!(f9.order_of(f9.generator()), 8);
        // multiplicative group is cyclic of order 8
        let mut orders: Vec<u64> = (1..9).map(|a| f9.order_of(a)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4, 8, 8, 8, 8]);
    }

    #[test]
    fn field_axioms_sampled() {
        for q in [8u64, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in 0..q.min(11) {
                        // distributivity on a slice
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_field_automorphism() {
        let f9 = FiniteField::new(9).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(
                    f9.frobenius(f9.mul(a, b), 1),
                    f9.mul(f9.frobenius(a, 1), f9.frobenius(b, 1))
                );
                assert_eq!(
                    f9.frobenius(f9.add(a, b), 1),
                    f9.add(f9.frobenius(a, 1), f9.frobenius(b, 1))
                );
            }
        }
    }
}
