//! Dense multiplication-table groups. The workhorse representation for
//! everything small enough to materialize (order at most [`MAX_ORDER`]):
//! conjugacy classes, centers, derived and central series, quotients.

use once_cell::sync::OnceCell;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::GroupError;

/// Hard cap on the order of a Cayley-backed group.
pub const MAX_ORDER: usize = 10_000;

/// Orders up to this bound get the full O(n^3) associativity check;
/// larger tables are spot-checked on a fixed sample of random triples.
pub const FULL_ASSOC_LIMIT: usize = 512;

const ASSOC_SAMPLES: usize = 100_000;
const ASSOC_SEED: u64 = 0x5eed_ca11e7;

pub(crate) type El = u16;

#[derive(Debug, Clone)]
pub(crate) struct Classes {
    pub class_of: Vec<u32>,
    pub classes: Vec<Vec<u32>>,
}

/// A finite group given by its full multiplication table.
///
/// Element 0 is always the identity; constructors normalize this so that
/// identity checks are index comparisons. Immutable after construction;
/// the lazily computed caches are internally synchronized.
#[derive(Debug, Clone)]
pub struct CayleyGroup {
    order: usize,
    mul: Vec<El>,
    inv: Vec<El>,
    elem_order: Vec<u32>,
    gens: OnceCell<Vec<u32>>,
    classes: OnceCell<Classes>,
    hash: OnceCell<[u8; 32]>,
}

impl CayleyGroup {
    /// Builds a group from a flat row-major table, validating the full
    /// invariant set: index range, Latin-square property, identity at 0,
    /// two-sided inverses, and associativity (sampled above
    /// [`FULL_ASSOC_LIMIT`]).
    pub fn from_flat_table(order: usize, mul: Vec<El>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidTable("order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge { order, max: MAX_ORDER });
        }
        if mul.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        for (pos, &v) in mul.iter().enumerate() {
            if (v as usize) >= order {
                return Err(GroupError::InvalidTable(format!(
                    "entry mul[{}][{}] = {} out of range 0..{}",
                    pos / order,
                    pos % order,
                    v,
                    order
                )));
            }
        }
        // identity at index 0
        for g in 0..order {
            if mul[g] as usize != g || mul[g * order] as usize != g {
                return Err(GroupError::InvalidTable(format!(
                    "index 0 is not a two-sided identity at element {g}"
                )));
            }
        }
        // Latin square: every row and column is a permutation
        let mut seen = vec![false; order];
        for r in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..order {
                let v = mul[r * order + c] as usize;
                if seen[v] {
                    return Err(GroupError::InvalidTable(format!(
                        "row {r} repeats element {v}"
                    )));
                }
                seen[v] = true;
            }
        }
        for c in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..order {
                let v = mul[r * order + c] as usize;
                if seen[v] {
                    return Err(GroupError::InvalidTable(format!(
                        "column {c} repeats element {v}"
                    )));
                }
                seen[v] = true;
            }
        }
        // inverses from the Latin property
        let mut inv = vec![0 as El; order];
        for g in 0..order {
            let mut found = false;
            for h in 0..order {
                if mul[g * order + h] == 0 {
                    if mul[h * order + g] != 0 {
                        return Err(GroupError::InvalidTable(format!(
                            "element {g} has one-sided inverse {h}"
                        )));
                    }
                    inv[g] = h as El;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(GroupError::InvalidTable(format!("element {g} has no inverse")));
            }
        }
        // associativity
        let assoc = |a: usize, b: usize, c: usize| {
            let ab = mul[a * order + b] as usize;
            let bc = mul[b * order + c] as usize;
            mul[ab * order + c] == mul[a * order + bc]
        };
        if order <= FULL_ASSOC_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !assoc(a, b, c) {
                            return Err(GroupError::InvalidTable(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SEED);
            for _ in 0..ASSOC_SAMPLES {
                let a = rng.random_range(0..order);
                let b = rng.random_range(0..order);
                let c = rng.random_range(0..order);
                if !assoc(a, b, c) {
                    return Err(GroupError::InvalidTable(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }

        let mut g = CayleyGroup {
            order,
            mul,
            inv,
            elem_order: Vec::new(),
            gens: OnceCell::new(),
            classes: OnceCell::new(),
            hash: OnceCell::new(),
        };
        g.elem_order = g.compute_orders()?;
        Ok(g)
    }

    /// Convenience constructor from a nested table.
    pub fn from_mul_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let order = rows.len();
        let mut flat = Vec::with_capacity(order * order);
        for row in &rows {
            if row.len() != order {
                return Err(GroupError::InvalidTable(format!(
                    "ragged table: row of length {}, expected {}",
                    row.len(),
                    order
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(GroupError::InvalidTable(format!(
                        "entry {v} out of range 0..{order}"
                    )));
                }
                flat.push(v as El);
            }
        }
        Self::from_flat_table(order, flat)
    }

    /// Builds the group of size `order` whose multiplication is given by
    /// the closure `f` on indices. The identity must be index 0.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let mut flat = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let v = f(a, b);
                if v >= order {
                    return Err(GroupError::InvalidTable(format!(
                        "entry mul[{a}][{b}] = {v} out of range"
                    )));
                }
                flat.push(v as El);
            }
        }
        Self::from_flat_table(order, flat)
    }

    fn compute_orders(&self) -> Result<Vec<u32>, GroupError> {
        let mut orders = Vec::with_capacity(self.order);
        for g in 0..self.order {
            let mut x = g;
            let mut k = 1u32;
            while x != 0 {
                x = self.mul(x, g);
                k += 1;
                if k as usize > self.order {
                    return Err(GroupError::InvalidTable(format!(
                        "element {g} does not have finite order within the table"
                    )));
                }
            }
            if self.order % k as usize != 0 {
                return Err(GroupError::InvalidTable(format!(
                    "order {k} of element {g} violates Lagrange"
                )));
            }
            orders.push(k);
        }
        Ok(orders)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    /// `g^k` for any integer exponent.
    pub fn power(&self, g: usize, k: i64) -> usize {
        let n = self.elem_order(g) as i64;
        let mut k = k.rem_euclid(n);
        let mut acc = 0usize;
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ia = self.inv(a);
        let ib = self.inv(b);
        self.mul(self.mul(ia, ib), self.mul(a, b))
    }

    /// `g^x = x^{-1} g x`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// A small generating set, chosen greedily over ascending indices.
    pub fn generating_set(&self) -> &[u32] {
        self.gens.get_or_init(|| {
            let mut gens: Vec<u32> = Vec::new();
            let mut in_sub = vec![false; self.order];
            in_sub[0] = true;
            let mut elems: Vec<usize> = vec![0];
            for x in 1..self.order {
                if in_sub[x] {
                    continue;
                }
                gens.push(x as u32);
                // extend the closure with the new generator
                let mut queue: Vec<usize> = elems.clone();
                while let Some(y) = queue.pop() {
                    for &g in &gens {
                        let z = self.mul(y, g as usize);
                        if !in_sub[z] {
                            in_sub[z] = true;
                            elems.push(z);
                            queue.push(z);
                        }
                    }
                }
                if elems.len() == self.order {
                    break;
                }
            }
            gens
        })
    }

    fn classes_cache(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let gens = self.generating_set();
            let mut class_of = vec![u32::MAX; self.order];
            let mut classes: Vec<Vec<u32>> = Vec::new();
            for x in 0..self.order {
                if class_of[x] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut orbit = vec![x as u32];
                class_of[x] = id;
                let mut queue = vec![x];
                while let Some(y) = queue.pop() {
                    for &g in gens {
                        let z = self.conjugate(y, g as usize);
                        if class_of[z] == u32::MAX {
                            class_of[z] = id;
                            orbit.push(z as u32);
                            queue.push(z);
                        }
                    }
                }
                orbit.sort_unstable();
                classes.push(orbit);
            }
            Classes { class_of, classes }
        })
    }

    /// Conjugacy classes as sorted index lists. The class of the identity
    /// comes first; class ids are assigned by least element.
    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        &self.classes_cache().classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.classes_cache().class_of[g] as usize
    }

    /// Exponent: the lcm of all element orders.
    pub fn exponent(&self) -> usize {
        let mut e: u64 = 1;
        for g in 0..self.order {
            let o = self.elem_order(g) as u64;
            e = lcm(e, o);
        }
        e as usize
    }

    /// SHA-256 of the table contents, used as a cache key and report id.
    pub fn content_hash(&self) -> &[u8; 32] {
        self.hash.get_or_init(|| {
            let mut h = Sha256::new();
            h.update((self.order as u64).to_le_bytes());
            for &v in &self.mul {
                h.update(v.to_le_bytes());
            }
            h.finalize().into()
        })
    }

    pub fn content_hash_hex(&self) -> String {
        self.content_hash().iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Nilpotence classification: either a class or a tag for the
/// non-nilpotent case, never a fake number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotence {
    Class(usize),
    NotNilpotent,
}
