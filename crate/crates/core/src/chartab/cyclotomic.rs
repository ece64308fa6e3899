//! Exact cyclotomic integers: vectors of integer coefficients over the
//! powers of a fixed primitive m-th root of unity. Arithmetic happens in
//! Z[x]/(x^m - 1); equality and zero tests reduce canonically modulo the
//! m-th cyclotomic polynomial, so "vanishes" questions are decided
//! exactly, never numerically.

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;

/// An element of Z[ζ_m] as Σ coeffs[i] ζ_m^i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicValue {
    m: usize,
    coeffs: Vec<i64>,
}

static CYCLOTOMIC_POLYS: Lazy<Mutex<HashMap<usize, Vec<i64>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    if let Some(p) = CYCLOTOMIC_POLYS.lock().unwrap().get(&m) {
        return p.clone();
    }
    // (x^m - 1) divided by the product of the proper-divisor polynomials
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    CYCLOTOMIC_POLYS.lock().unwrap().insert(m, num.clone());
    num
}

/// Exact division of integer polynomials (the divisor is monic).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    debug_assert_eq!(*den.last().unwrap(), 1);
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let lead = rem[i + dd];
        quot[i] = lead;
        if lead != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] -= lead * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

impl CyclotomicValue {
    pub fn zero(m: usize) -> Self {
        CyclotomicValue {
            m,
            coeffs: vec![0; m],
        }
    }

    pub fn from_int(m: usize, v: i64) -> Self {
        let mut c = Self::zero(m);
        c.coeffs[0] = v;
        c
    }

    /// `ζ_m^k`.
    pub fn root_power(m: usize, k: i64) -> Self {
        let mut c = Self::zero(m);
        c.coeffs[k.rem_euclid(m as i64) as usize] = 1;
        c
    }

    pub fn from_coeffs(m: usize, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), m);
        CyclotomicValue { m, coeffs }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        CyclotomicValue {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        CyclotomicValue {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let mut out = vec![0i64; self.m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = (i + j) % self.m;
                out[k] += a * b;
            }
        }
        CyclotomicValue {
            m: self.m,
            coeffs: out,
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        CyclotomicValue {
            m: self.m,
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Complex conjugation: ζ^i -> ζ^{-i}.
    pub fn conjugate(&self) -> Self {
        let mut out = vec![0i64; self.m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[(self.m - i) % self.m] += c;
        }
        CyclotomicValue {
            m: self.m,
            coeffs: out,
        }
    }

    /// Canonical coefficients in the power basis 1, ζ, ..., ζ^(φ(m)-1),
    /// obtained by reducing modulo the m-th cyclotomic polynomial.
    pub fn canonical(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.m);
        let deg = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        for i in (deg..rem.len()).rev() {
            let lead = rem[i];
            if lead == 0 {
                continue;
            }
            rem[i] = 0;
            for (j, &pc) in phi.iter().enumerate().take(deg) {
                rem[i - deg + j] -= lead * pc;
            }
        }
        rem.truncate(deg);
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(|&c| c == 0)
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Some(v) when the value is the rational integer v.
    pub fn as_integer(&self) -> Option<i64> {
        let c = self.canonical();
        if c.iter().skip(1).all(|&x| x == 0) {
            Some(c[0])
        } else {
            None
        }
    }

    /// Re-expresses the value over ζ_M for a multiple M of m, via
    /// ζ_m = ζ_M^(M/m).
    pub fn embed(&self, big_m: usize) -> Self {
        assert_eq!(big_m % self.m, 0, "embedding requires m | M");
        let step = big_m / self.m;
        let mut out = vec![0i64; big_m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * step] += c;
        }
        CyclotomicValue {
            m: big_m,
            coeffs: out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // the first index with a coefficient outside {-1, 0, 1} is 105
        let c105 = cyclotomic_polynomial(105);
        assert!(c105.iter().any(|&c| c.abs() == 2));
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for m in [3usize, 4, 6, 8, 9, 12] {
            let mut s = CyclotomicValue::zero(m);
            for k in 0..m {
                s = s.add(&CyclotomicValue::root_power(m, k as i64));
            }
            assert!(s.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn integer_detection() {
        // ζ_4^2 = -1
        let v = CyclotomicValue::root_power(4, 2);
        assert_eq!(v.as_integer(), Some(-1));
        // ζ_3 is not rational
        assert_eq!(CyclotomicValue::root_power(3, 1).as_integer(), None);
        // ζ_3 + ζ_3^2 = -1
        let v = CyclotomicValue::root_power(3, 1).add(&CyclotomicValue::root_power(3, 2));
        assert_eq!(v.as_integer(), Some(-1));
    }

    fn arb_value(m: usize) -> impl Strategy<Value = CyclotomicValue> {
        proptest::collection::vec(-5i64..=5, m)
            .prop_map(move |coeffs| CyclotomicValue::from_coeffs(m, coeffs))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_value(12), b in arb_value(12), c in arb_value(12)) {
            // distributivity and commutativity, decided by exact reduction
            prop_assert!(a.mul(&b).equals(&b.mul(&a)));
            prop_assert!(a.mul(&b.add(&c)).equals(&a.mul(&b).add(&a.mul(&c))));
            prop_assert!(a.mul(&b).mul(&c).equals(&a.mul(&b.mul(&c))));
        }

        #[test]
        fn conjugation_is_multiplicative(a in arb_value(9), b in arb_value(9)) {
            prop_assert!(a.mul(&b).conjugate().equals(&a.conjugate().mul(&b.conjugate())));
        }

        #[test]
        fn norm_is_nonnegative(a in arb_value(8)) {
            let n = a.mul(&a.conjugate());
            // a * conj(a) is a nonnegative real; its trace-like constant
            // coefficient in canonical form dominates: at minimum the
            // value is zero iff a is zero
            prop_assert_eq!(n.is_zero(), a.is_zero());
        }
    }
}
