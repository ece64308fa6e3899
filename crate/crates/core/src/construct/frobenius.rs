//! Two-transitive Frobenius groups: the field family (multiplicative
//! group acting on the additive group) and the three nonsolvable
//! complements, which are SL(2,5) inside GL(2,p) for p in {11, 29, 59},
//! extended by a scalar cyclic factor for the two larger primes.

use serde::Serialize;

use crate::group::{CayleyGroup, Perm, PermutationGroup};

use super::field::FiniteField;
use super::product::ActionSpec;
use super::ConstructError;

/// `(F_q, +) ⋊ F_q^x` with elements `(a, t)` indexed `t_idx * q + a`,
/// where `t_idx` enumerates the nonzero field elements with 1 first.
/// Sharp 2-transitivity on q points is verified before returning.
pub fn field_frobenius_group(q: u64) -> Result<CayleyGroup, ConstructError> {
    let f = FiniteField::new(q)?;
    let order = (q * (q - 1)) as usize;
    if order > crate::group::MAX_ORDER {
        return Err(ConstructError::OrderTooLarge { order });
    }
    // multiplicative indices: unit u at position u-1 would put 1 first
    // only when u = 1; use an explicit table keeping 1 at slot 0
    let units: Vec<u64> = std::iter::once(1)
        .chain((2..q).filter(|&u| u != 1))
        .collect();
    let slot_of = {
        let mut v = vec![0usize; q as usize];
        for (i, &u) in units.iter().enumerate() {
            v[u as usize] = i;
        }
        v
    };
    let qs = q as usize;
    let g = CayleyGroup::from_fn(order, |x, y| {
        let (a1, t1) = ((x % qs) as u64, units[x / qs]);
        let (a2, t2) = ((y % qs) as u64, units[y / qs]);
        // (a1, t1)(a2, t2) = (a1 + t1 a2, t1 t2)
        let a = f.add(a1, f.mul(t1, a2));
        let t = f.mul(t1, t2);
        slot_of[t as usize] * qs + a as usize
    })?;
    if !field_action_is_two_transitive(&f) {
        return Err(ConstructError::FrobeniusCheckFailed { q });
    }
    Ok(g)
}

/// Direct verification that the affine action `v -> t v + a` of
/// `F_q^x ⋉ F_q` is sharply 2-transitive, stated on the field itself so
/// it scales to q = 1024 without materializing the group.
pub fn field_action_is_two_transitive(f: &FiniteField) -> bool {
    let q = f.q();
    // Frobenius: t != 1 fixes only 0
    for t in 2..q {
        for v in 1..q {
            if f.mul(t, v) == v {
                return false;
            }
        }
    }
    // transitivity of the multiplicative group on nonzero elements
    let g = f.generator();
    let mut orbit = vec![false; q as usize];
    let mut x = 1u64;
    let mut n = 0;
    loop {
        if !orbit[x as usize] {
            orbit[x as usize] = true;
            n += 1;
        }
        x = f.mul(x, g);
        if x == 1 {
            break;
        }
    }
    n == q - 1
}

/// Checks the step-(2) action condition directly: every nontrivial
/// element of H fixes only the identity of V, and H is transitive on the
/// nonidentity elements. For `|H| = |V| - 1` this makes `V ⋊ H` a
/// two-transitive Frobenius group.
pub fn two_transitive_frobenius_check(
    v: &CayleyGroup,
    h: &CayleyGroup,
    action: &ActionSpec,
) -> bool {
    let n = v.order();
    for t in 1..h.order() {
        if (1..n).any(|x| action.apply(t, x) == x) {
            return false;
        }
    }
    if n == 1 {
        return true;
    }
    // orbit of the first nonidentity element under all of H
    let mut seen = vec![false; n];
    let mut count = 0;
    for t in 0..h.order() {
        let y = action.apply(t, 1);
        if !seen[y] {
            seen[y] = true;
            count += 1;
        }
    }
    count == n - 1
}

type Mat = [u64; 4];

fn mat_mul(p: u64, x: &Mat, y: &Mat) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % p,
        (x[0] * y[1] + x[1] * y[3]) % p,
        (x[2] * y[0] + x[3] * y[2]) % p,
        (x[2] * y[1] + x[3] * y[3]) % p,
    ]
}

fn mat_pow(p: u64, m: &Mat, mut e: u32) -> Mat {
    let mut acc: Mat = [1, 0, 0, 1];
    let mut base = *m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(p, &acc, &base);
        }
        base = mat_mul(p, &base, &base);
        e >>= 1;
    }
    acc
}

fn det(p: u64, m: &Mat) -> u64 {
    (m[0] * m[3] % p + p * p - m[1] * m[2] % (p * p)) % p
}

/// `det(M - I) != 0`, i.e. M fixes no nonzero vector.
fn fixed_point_free(p: u64, m: &Mat) -> bool {
    let a = (m[0] + p - 1) % p;
    let d = (m[3] + p - 1) % p;
    (a * d % p + p * p - m[1] * m[2] % (p * p)) % p != 0
}

/// Closure of a matrix set under multiplication, capped.
fn matrix_closure(p: u64, gens: &[Mat], cap: usize) -> Option<Vec<Mat>> {
    let mut index = std::collections::HashMap::new();
    let id: Mat = [1, 0, 0, 1];
    index.insert(id, 0usize);
    let mut elems = vec![id];
    let mut head = 0;
    while head < elems.len() {
        let m = elems[head];
        head += 1;
        for g in gens {
            let n = mat_mul(p, &m, g);
            if !index.contains_key(&n) {
                if elems.len() >= cap {
                    return None;
                }
                index.insert(n, elems.len());
                elems.push(n);
            }
        }
    }
    Some(elems)
}

fn is_perfect_matrix_group(p: u64, elems: &[Mat], gens: &[Mat]) -> bool {
    let index: std::collections::HashMap<Mat, usize> =
        elems.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let inv = |m: &Mat| -> Mat {
        // order is finite; invert by powering
        let mut x = *m;
        let mut prev = [1, 0, 0, 1];
        while x != [1, 0, 0, 1] {
            prev = x;
            x = mat_mul(p, &x, m);
        }
        prev
    };
    let mut comms = Vec::new();
    for a in elems {
        for b in gens {
            let c = mat_mul(
                p,
                &mat_mul(p, &inv(a), &inv(b)),
                &mat_mul(p, a, b),
            );
            comms.push(c);
        }
    }
    comms.sort_unstable();
    comms.dedup();
    match matrix_closure(p, &comms, elems.len() + 1) {
        Some(derived) => {
            derived.len() == elems.len() && derived.iter().all(|m| index.contains_key(m))
        }
        None => false,
    }
}

/// Certificate produced by [`sl25_complement`]: the generator matrices
/// and the verified facts about the group they generate.
#[derive(Debug, Clone, Serialize)]
pub struct Sl25Certificate {
    pub p: u64,
    /// generators of the SL(2,5) part
    pub sl_generators: Vec<Mat>,
    /// scalar generator of the central cyclic factor, when present
    pub scalar: Option<Mat>,
    pub sl_order: usize,
    pub sl_perfect: bool,
    pub complement_order: usize,
    pub fixed_point_free: bool,
    /// orbit size of (1, 0) under the full complement
    pub orbit_size: usize,
}

impl Sl25Certificate {
    pub fn all_checks_pass(&self) -> bool {
        self.sl_order == 120
            && self.sl_perfect
            && self.fixed_point_free
            && self.complement_order == (self.p * self.p - 1) as usize
            && self.orbit_size == self.complement_order
    }

    /// All generator matrices of the full complement.
    pub fn generators(&self) -> Vec<Mat> {
        let mut g = self.sl_generators.clone();
        if let Some(s) = self.scalar {
            g.push(s);
        }
        g
    }

    /// The complement acting on the `p^2` vectors of its natural module
    /// (point index `x + p*y`).
    pub fn permutation_action(&self) -> PermutationGroup {
        let p = self.p;
        let n = (p * p) as usize;
        let gens: Vec<Perm> = self
            .generators()
            .iter()
            .map(|m| {
                let images: Vec<u32> = (0..n as u64)
                    .map(|v| {
                        let (x, y) = (v % p, v / p);
                        let nx = (m[0] * x + m[1] * y) % p;
                        let ny = (m[2] * x + m[3] * y) % p;
                        (nx + p * ny) as u32
                    })
                    .collect();
                Perm::from_images(images).expect("invertible matrix acts bijectively")
            })
            .collect();
        PermutationGroup::new(n, gens).expect("degrees agree")
    }
}

/// Finds a subgroup of GL(2,p) isomorphic to SL(2,5) acting
/// fixed-point-freely on the nonzero vectors, and for p in {29, 59}
/// extends it by the scalar factor (orders 7 and 29) that completes the
/// sharply transitive complement of order p^2 - 1.
///
/// Search: up to conjugacy x = [[0,-1],[1,0]] can be fixed; candidates y
/// range over solutions of y^5 = -I, filtered by the triangle relation
/// (xy)^3 = -I, then certified by closure order, perfectness, and the
/// action checks. Exhaustion without a certificate is a hard error.
pub fn sl25_complement(p: u64) -> Result<Sl25Certificate, ConstructError> {
    if ![11, 29, 59].contains(&p) {
        return Err(ConstructError::UnsupportedPrime { p });
    }
    let minus_i: Mat = [p - 1, 0, 0, p - 1];
    let x0: Mat = [0, p - 1, 1, 0];
    debug_assert_eq!(mat_pow(p, &x0, 2), minus_i);

    let scalar_order = (p * p - 1) / 120;
    let scalar = if scalar_order == 1 {
        None
    } else {
        // a scalar matrix of the exact complementary order
        let s = (2..p)
            .map(|l| [l, 0, 0, l])
            .find(|m| {
                let mut x = *m;
                let mut n = 1;
                while x != [1, 0, 0, 1] {
                    x = mat_mul(p, &x, m);
                    n += 1;
                }
                n == scalar_order
            })
            .expect("the multiplicative group contains the required scalar order");
        Some(s)
    };

    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let y: Mat = [a, b, c, d];
                    if det(p, &y) == 0 || mat_pow(p, &y, 5) != minus_i {
                        continue;
                    }
                    let xy = mat_mul(p, &x0, &y);
                    if mat_pow(p, &xy, 3) != minus_i {
                        continue;
                    }
                    let sl_gens = vec![x0, y];
                    let sl = match matrix_closure(p, &sl_gens, 121) {
                        Some(e) if e.len() == 120 => e,
                        _ => continue,
                    };
                    if !is_perfect_matrix_group(p, &sl, &sl_gens) {
                        continue;
                    }
                    let mut full_gens = sl_gens.clone();
                    if let Some(s) = scalar {
                        full_gens.push(s);
                    }
                    let cap = (p * p) as usize;
                    let full = match matrix_closure(p, &full_gens, cap) {
                        Some(e) => e,
                        None => continue,
                    };
                    let fpf = full
                        .iter()
                        .all(|m| *m == [1, 0, 0, 1] || fixed_point_free(p, m));
                    if !fpf {
                        continue;
                    }
                    // orbit of (1, 0) under the generators
                    let orbit = vector_orbit(p, &full_gens, (1, 0));
                    let cert = Sl25Certificate {
                        p,
                        sl_generators: sl_gens,
                        scalar,
                        sl_order: sl.len(),
                        sl_perfect: true,
                        complement_order: full.len(),
                        fixed_point_free: fpf,
                        orbit_size: orbit,
                    };
                    if cert.all_checks_pass() {
                        return Ok(cert);
                    }
                }
            }
        }
    }
    Err(ConstructError::SearchExhausted {
        what: format!("SL(2,5) complement in GL(2,{p})"),
    })
}

fn vector_orbit(p: u64, gens: &[Mat], start: (u64, u64)) -> usize {
    let n = (p * p) as usize;
    let idx = |x: u64, y: u64| (x + p * y) as usize;
    let mut seen = vec![false; n];
    let mut queue = vec![start];
    seen[idx(start.0, start.1)] = true;
    let mut count = 1;
    while let Some((x, y)) = queue.pop() {
        for m in gens {
            let nx = (m[0] * x + m[1] * y) % p;
            let ny = (m[2] * x + m[3] * y) % p;
            if !seen[idx(nx, ny)] {
                seen[idx(nx, ny)] = true;
                count += 1;
                queue.push((nx, ny));
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, elementary_abelian};
    use crate::group::is_isomorphic;

    #[test]
    fn small_field_frobenius_groups() {
        // q = 3 gives S3
        let g = field_frobenius_group(3).unwrap();
        assert_eq!(g.order(), 6);
        let s3 = crate::construct::dihedral(6);
        assert!(is_isomorphic(&g, &s3));

        // q = 4 gives A4: build A4 independently from permutations
        let g = field_frobenius_group(4).unwrap();
        assert_eq!(g.order(), 12);
        let a4_perms = PermutationGroup::new(
            4,
            vec![
                Perm::from_images(vec![1, 0, 3, 2]).unwrap(),
                Perm::from_images(vec![1, 2, 0, 3]).unwrap(),
            ],
        )
        .unwrap();
        let (a4, _) = CayleyGroup::from_permutation_group(&a4_perms).unwrap();
        assert!(is_isomorphic(&g, &a4));

        // q = 9: order 72, already verified two-transitive internally
        let g = field_frobenius_group(9).unwrap();
        assert_eq!(g.order(), 72);
    }

    #[test]
    fn field_action_scales_past_the_table_backend() {
        for q in [121u64, 128, 243, 1024] {
            let f = FiniteField::new(q).unwrap();
            assert!(field_action_is_two_transitive(&f), "q = {q}");
        }
    }

    #[test]
    fn frobenius_check_on_f9_multiplication() {
        // V = F_3^2 under addition; H = C8 acting as multiplication by a
        // generator of F_9
        let f9 = FiniteField::new(9).unwrap();
        let v = elementary_abelian(3, 2);
        let c8 = cyclic(8);
        let g = f9.generator();
        // field indices coincide with elementary_abelian digit indices
        let images: Vec<usize> = (0..9u64).map(|x| f9.mul(g, x) as usize).collect();
        let mult =
            crate::aut::Automorphism::from_generator_images(&v, &[1, 3], &[images[1], images[3]])
                .unwrap();
        let action = ActionSpec::new(&c8, &v, &[1], &[mult.clone()]).unwrap();
        assert!(two_transitive_frobenius_check(&v, &c8, &action));

        // C4 (the square of the generator) is not transitive on 8 points
        let c4 = cyclic(4);
        let action4 = ActionSpec::new(&c4, &v, &[1], &[mult.compose(&mult)]).unwrap();
        assert!(!two_transitive_frobenius_check(&v, &c4, &action4));
    }

    #[test]
    fn sl25_for_eleven() {
        let cert = sl25_complement(11).unwrap();
        assert!(cert.all_checks_pass());
        assert_eq!(cert.complement_order, 120);
        assert_eq!(cert.orbit_size, 120);
        assert!(cert.scalar.is_none());
        // SL(2,5) is not solvable
        let pg = cert.permutation_action();
        assert_eq!(pg.order(), 120);
        assert!(!pg.is_solvable());
    }
}
