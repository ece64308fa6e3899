//! Deterministic constructors for the standard families: cyclic,
//! elementary abelian, dihedral, quaternion, the two extraspecial groups
//! of order p^3, Heisenberg groups over small fields, and SL(2, p).

use super::field::FiniteField;
use super::ConstructError;
use crate::group::CayleyGroup;

pub fn cyclic(n: usize) -> CayleyGroup {
    assert!(n >= 1);
    CayleyGroup::from_fn(n, |a, b| (a + b) % n).expect("cyclic table is valid")
}

/// (Z_p)^k with base-p digit indexing.
pub fn elementary_abelian(p: u64, k: u32) -> CayleyGroup {
    let n = p.pow(k) as usize;
    CayleyGroup::from_fn(n, |a, b| {
        let mut out = 0usize;
        let mut pw = 1usize;
        let (mut a, mut b) = (a, b);
        for _ in 0..k {
            out += pw * ((a + b) % p as usize);
            a /= p as usize;
            b /= p as usize;
            pw *= p as usize;
        }
        out
    })
    .expect("elementary abelian table is valid")
}

/// Dihedral group of order `2n`; element `j*n + i` is `r^i s^j`.
pub fn dihedral(order: usize) -> CayleyGroup {
    assert!(order >= 2 && order % 2 == 0, "dihedral order must be even");
    let n = order / 2;
    CayleyGroup::from_fn(order, |x, y| {
        let (i1, j1) = (x % n, x / n);
        let (i2, j2) = (y % n, y / n);
        // r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
        let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2 % n) % n };
        let j = (j1 + j2) % 2;
        j * n + i
    })
    .expect("dihedral table is valid")
}

/// The quaternion group {±1, ±i, ±j, ±k}; index = axis*2 + sign.
pub fn quaternion8() -> CayleyGroup {
    // axis products and result signs for 1, i, j, k
    const AXIS: [[usize; 4]; 4] = [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ];
    const NEG: [[usize; 4]; 4] = [
        [0, 0, 0, 0],
        [0, 1, 0, 1],
        [0, 1, 1, 0],
        [0, 0, 1, 1],
    ];
    CayleyGroup::from_fn(8, |x, y| {
        let (ax, sx) = (x / 2, x % 2);
        let (ay, sy) = (y / 2, y % 2);
        let axis = AXIS[ax][ay];
        let sign = (sx + sy + NEG[ax][ay]) % 2;
        axis * 2 + sign
    })
    .expect("quaternion table is valid")
}

pub fn direct_product(g: &CayleyGroup, h: &CayleyGroup) -> CayleyGroup {
    let (n, m) = (g.order(), h.order());
    CayleyGroup::from_fn(n * m, |x, y| {
        let (xg, xh) = (x / m, x % m);
        let (yg, yh) = (y / m, y % m);
        g.mul(xg, yg) * m + h.mul(xh, yh)
    })
    .expect("direct product table is valid")
}

/// The two extraspecial groups of order p^3 for odd p, selected by
/// exponent (`p` or `p^2`). For p = 2 both candidates have exponent 4;
/// the parameter then selects the dihedral group (exponent = 2) or the
/// quaternion group (exponent = 4) instead.
pub fn extraspecial_p3(p: u64, exponent: u64) -> Result<CayleyGroup, ConstructError> {
    if !crate::arith::is_prime(p) {
        return Err(ConstructError::NotPrime { n: p });
    }
    if exponent != p && exponent != p * p {
        return Err(ConstructError::BadExponent { p, exponent });
    }
    if p == 2 {
        return Ok(if exponent == 2 { dihedral(8) } else { quaternion8() });
    }
    let pu = p as usize;
    let n = pu * pu * pu;
    if exponent == p {
        // triples (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')
        Ok(CayleyGroup::from_fn(n, |x, y| {
            let (a1, b1, c1) = (x % pu, (x / pu) % pu, x / (pu * pu));
            let (a2, b2, c2) = (y % pu, (y / pu) % pu, y / (pu * pu));
            let a = (a1 + a2) % pu;
            let b = (b1 + b2) % pu;
            let c = (c1 + c2 + a1 * b2) % pu;
            a + b * pu + c * pu * pu
        })?)
    } else {
        // pairs (i, j), i mod p^2, j mod p, with y x y^{-1} = x^{1+p}:
        // (i, j)(k, l) = (i + k(1 + jp), j + l)
        let p2 = pu * pu;
        Ok(CayleyGroup::from_fn(n, |x, y| {
            let (i, j) = (x % p2, x / p2);
            let (k, l) = (y % p2, y / p2);
            let i2 = (i + k * (1 + j * pu)) % p2;
            let j2 = (j + l) % pu;
            i2 + j2 * p2
        })?)
    }
}

/// Upper unitriangular 3x3 matrices over F_q, encoded as triples
/// (a, b, c) = rows ((1,a,c),(0,1,b),(0,0,1)); order q^3, center and
/// derived subgroup both {(0,0,c)} of order q.
pub fn heisenberg(q: u64) -> Result<CayleyGroup, ConstructError> {
    if q > 16 {
        return Err(ConstructError::HeisenbergTooLarge { q });
    }
    let f = FiniteField::new(q)?;
    Ok(heisenberg_over(&f))
}

pub(crate) fn heisenberg_over(f: &FiniteField) -> CayleyGroup {
    let q = f.q() as usize;
    let n = q * q * q;
    CayleyGroup::from_fn(n, |x, y| {
        let (a1, b1, c1) = ((x % q) as u64, ((x / q) % q) as u64, (x / (q * q)) as u64);
        let (a2, b2, c2) = ((y % q) as u64, ((y / q) % q) as u64, (y / (q * q)) as u64);
        let a = f.add(a1, a2);
        let b = f.add(b1, b2);
        let c = f.add(f.add(c1, c2), f.mul(a1, b2));
        a as usize + b as usize * q + c as usize * q * q
    })
    .expect("unitriangular table is valid")
}

/// Decodes a Heisenberg element index into its (a, b, c) coordinates.
pub fn heisenberg_coords(q: u64, idx: usize) -> (u64, u64, u64) {
    let q = q as usize;
    ((idx % q) as u64, ((idx / q) % q) as u64, (idx / (q * q)) as u64)
}

pub fn heisenberg_index(q: u64, a: u64, b: u64, c: u64) -> usize {
    let q = q as usize;
    a as usize + b as usize * q + c as usize * q * q
}

/// SL(2, p) as a Cayley group; usable for p <= 13 or so.
pub fn special_linear_2(p: u64) -> Result<CayleyGroup, ConstructError> {
    if !crate::arith::is_prime(p) {
        return Err(ConstructError::NotPrime { n: p });
    }
    let order = (p * (p * p - 1)) as usize;
    if order > crate::group::MAX_ORDER {
        return Err(ConstructError::OrderTooLarge { order });
    }
    let mut elems: Vec<[u64; 4]> = Vec::with_capacity(order);
    elems.push([1, 0, 0, 1]);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        let m = [a, b, c, d];
                        if m != [1, 0, 0, 1] {
                            elems.push(m);
                        }
                    }
                }
            }
        }
    }
    debug_assert_eq!(elems.len(), order);
    let mut index = std::collections::HashMap::new();
    for (i, m) in elems.iter().enumerate() {
        index.insert(*m, i);
    }
    let mul = |x: &[u64; 4], y: &[u64; 4]| -> [u64; 4] {
        [
            (x[0] * y[0] + x[1] * y[2]) % p,
            (x[0] * y[1] + x[1] * y[3]) % p,
            (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p,
        ]
    };
    Ok(CayleyGroup::from_fn(order, |x, y| {
        index[&mul(&elems[x], &elems[y])]
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_isomorphic, Nilpotence};

    #[test]
    fn basic_families() {
        assert_eq!(cyclic(1).order(), 1);
        let ea = elementary_abelian(3, 2);
        assert_eq!(ea.order(), 9);
        assert_eq!(ea.exponent(), 3);
        // Q8 has a unique involution
        let q8 = quaternion8();
        assert_eq!((0..8).filter(|&x| q8.elem_order(x) == 2).count(), 1);
    }

    #[test]
    fn extraspecial_structure() {
        for (p, e) in [(3u64, 3u64), (3, 9), (5, 5), (5, 25), (7, 7), (7, 49)] {
            let g = extraspecial_p3(p, e).unwrap();
            assert_eq!(g.order(), (p * p * p) as usize);
            assert_eq!(g.exponent() as u64, e);
            let z = g.center();
            assert_eq!(z.order() as u64, p);
            assert_eq!(g.derived_subgroup().order() as u64, p);
            assert_eq!(g.nilpotence_class(), Nilpotence::Class(2));
        }
        assert!(extraspecial_p3(3, 5).is_err());
        assert!(extraspecial_p3(4, 4).is_err());
    }

    #[test]
    fn extraspecial_27_has_11_classes() {
        // brute-force cross-check: 27 = 3 central singletons + 8 classes of size 3
        let g = extraspecial_p3(3, 3).unwrap();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 11);
        let total: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, 27);
    }

    #[test]
    fn heisenberg_small() {
        let h3 = heisenberg(3).unwrap();
        assert!(is_isomorphic(&h3, &extraspecial_p3(3, 3).unwrap()));

        let h4 = heisenberg(4).unwrap();
        assert_eq!(h4.order(), 64);
        assert_eq!(h4.center().order(), 4);
        assert_eq!(h4.derived_subgroup().order(), 4);
        assert_eq!(h4.exponent(), 4);
        assert!(heisenberg(32).is_err());
    }

    #[test]
    fn sl2_orders() {
        let g = special_linear_2(3).unwrap();
        assert_eq!(g.order(), 24);
        assert!(g.is_solvable());
        let g = special_linear_2(5).unwrap();
        assert_eq!(g.order(), 120);
        assert!(!g.is_solvable());
        assert!(g.is_perfect());
    }
}
