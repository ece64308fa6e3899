//! Exact character tables by the modular eigenvector method: class
//! multiplication matrices are simultaneously diagonalized over a prime
//! field F_l with l = 1 (mod exp G), the central characters are read off
//! the one-dimensional common eigenspaces, and the character values are
//! lifted to cyclotomic integers by discrete logarithms against a fixed
//! primitive root of unity mod l.

use crate::arith;
use crate::group::CayleyGroup;

use super::cyclotomic::CyclotomicValue;
use super::{CharTableError, CharacterTable, ClassInfo};

fn pow_mod(mut b: u64, mut e: u64, l: u64) -> u64 {
    let mut acc = 1u64;
    b %= l;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % l;
        }
        b = b * b % l;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, l: u64) -> u64 {
    pow_mod(a, l - 2, l)
}

/// Least prime l = 1 (mod m) with l > 2 sqrt(n) and l not dividing n.
fn dixon_prime(m: usize, n: usize) -> u64 {
    let bound = 2.0 * (n as f64).sqrt();
    let mut l = m as u64 + 1;
    loop {
        if (l as f64) > bound && arith::is_prime(l) && (n as u64) % l != 0 {
            return l;
        }
        l += m as u64;
    }
}

/// Smallest generator of the multiplicative group mod l.
fn primitive_root(l: u64) -> u64 {
    let factors = arith::factor(l - 1);
    (2..l)
        .find(|&h| factors.iter().all(|&(r, _)| pow_mod(h, (l - 1) / r, l) != 1))
        .expect("prime fields have primitive roots")
}

/// Row-reduced basis handling over F_l.
struct Subspace {
    /// basis rows, each of full ambient dimension
    basis: Vec<Vec<u64>>,
}

/// Characteristic polynomial of a square matrix over F_l via Hessenberg
/// reduction; returns coefficients, constant first, leading coeff 1.
fn char_poly(mut a: Vec<Vec<u64>>, l: u64) -> Vec<u64> {
    let n = a.len();
    // reduce to upper Hessenberg form with row/column pivoting
    for col in 0..n.saturating_sub(2) {
        // find a nonzero pivot below the subdiagonal
        let pivot = (col + 1..n).find(|&r| a[r][col] != 0);
        let Some(pr) = pivot else { continue };
        if pr != col + 1 {
            a.swap(pr, col + 1);
            for row in a.iter_mut() {
                row.swap(pr, col + 1);
            }
        }
        let pinv = inv_mod(a[col + 1][col], l);
        for r in col + 2..n {
            let factor = a[r][col] * pinv % l;
            if factor == 0 {
                continue;
            }
            // row r -= factor * row (col+1); column (col+1) += factor * column r
            for c in 0..n {
                let sub = factor * a[col + 1][c] % l;
                a[r][c] = (a[r][c] + l - sub) % l;
            }
            for row in a.iter_mut() {
                row[col + 1] = (row[col + 1] + factor * row[r]) % l;
            }
        }
    }
    // char poly of a Hessenberg matrix by the standard recurrence:
    // p_0 = 1, p_k(x) = (x - a[k-1][k-1]) p_{k-1}
    //                  - sum_{i<k-1} a[i][k-1] (prod subdiagonals) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut p = vec![0u64; k + 1];
        // (x - a_kk) * p_{k-1}
        let prev = &polys[k - 1];
        for (i, &c) in prev.iter().enumerate() {
            p[i + 1] = (p[i + 1] + c) % l;
            p[i] = (p[i] + (l - a[k - 1][k - 1] % l) * c) % l;
        }
        let mut beta = 1u64;
        for i in (0..k - 1).rev() {
            beta = beta * a[i + 1][i] % l;
            let coef = a[i][k - 1] * beta % l;
            if coef != 0 {
                for (j, &c) in polys[i].iter().enumerate() {
                    p[j] = (p[j] + (l - coef) * c % l) % l;
                }
            }
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}

fn eval_poly(p: &[u64], x: u64, l: u64) -> u64 {
    p.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % l)
}

/// Null space basis of a over F_l (rows).
fn null_space(mut a: Vec<Vec<u64>>, l: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let pr = (r..rows).find(|&i| a[i][c] != 0);
        let Some(pr) = pr else { continue };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], l);
        for x in a[r].iter_mut() {
            *x = *x * inv % l;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + (l - f) * a[r][j]) % l;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_cols: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = (l - a[row][free] % l) % l;
        }
        basis.push(v);
    }
    basis
}

/// Solve x * basis = target where basis rows are independent; used to
/// express a vector in subspace coordinates. Returns None if target is
/// outside the row space.
fn in_coordinates(basis: &[Vec<u64>], target: &[u64], l: u64) -> Option<Vec<u64>> {
    let k = basis.len();
    let n = target.len();
    // augmented system over the transpose
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|c| {
            let mut row: Vec<u64> = (0..k).map(|r| basis[r][c]).collect();
            row.push(target[c]);
            row
        })
        .collect();
    let mut r = 0usize;
    let mut pivots = vec![usize::MAX; k];
    for c in 0..k {
        let pr = (r..n).find(|&i| m[i][c] != 0)?;
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], l);
        for x in m[r].iter_mut() {
            *x = *x * inv % l;
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..=k {
                    m[i][j] = (m[i][j] + (l - f) * m[r][j]) % l;
                }
            }
        }
        pivots[c] = r;
        r += 1;
    }
    // consistency: rows beyond rank must have zero RHS
    for i in r..n {
        if m[i][k] != 0 {
            return None;
        }
    }
    Some((0..k).map(|c| m[pivots[c]][k]).collect())
}

pub(super) struct DixonOutput {
    pub l: u64,
    pub omegas: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
}

/// Class-multiplication data: for class triple (i, j, k), the number of
/// ways z_k factors as x y with x in C_i, y in C_j.
struct ClassData {
    k: usize,
    sizes: Vec<u64>,
    inverse_class: Vec<usize>,
}

fn class_matrix(g: &CayleyGroup, i: usize, data: &ClassData) -> Vec<Vec<u64>> {
    let k = data.k;
    let classes = g.conjugacy_classes();
    let mut m = vec![vec![0u64; k]; k];
    let reps: Vec<usize> = (0..k).map(|c| classes[c][0] as usize).collect();
    for &x in &classes[i] {
        let xi = g.inv(x as usize);
        for (kk, &z) in reps.iter().enumerate() {
            let y = g.mul(xi, z);
            let j = g.class_of(y);
            m[j][kk] += 1;
        }
    }
    m
}

pub(super) fn run_dixon(g: &CayleyGroup) -> Result<DixonOutput, CharTableError> {
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let m = g.exponent();
    let n = g.order();
    let l = dixon_prime(m, n);

    let data = ClassData {
        k,
        sizes: classes.iter().map(|c| c.len() as u64).collect(),
        inverse_class: (0..k)
            .map(|c| g.class_of(g.inv(classes[c][0] as usize)))
            .collect(),
    };

    // matrices in increasing class-size order (ties by class id)
    let mut matrix_order: Vec<usize> = (1..k).collect();
    matrix_order.sort_by_key(|&i| (data.sizes[i], i));

    // start from the full space, split eigenspaces matrix by matrix
    let mut spaces: Vec<Subspace> = vec![Subspace {
        basis: (0..k)
            .map(|i| {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v
            })
            .collect(),
    }];
    for &mi in &matrix_order {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let mat = class_matrix(g, mi, &data);
        let mut next: Vec<Subspace> = Vec::new();
        for space in spaces {
            if space.basis.len() == 1 {
                next.push(space);
                continue;
            }
            let dim = space.basis.len();
            // action of mat restricted to the subspace
            let mut action = vec![vec![0u64; dim]; dim];
            for (bi, b) in space.basis.iter().enumerate() {
                // image = mat . b  (column action: (mat v)_j = sum_k mat[j][kk] v[kk])
                let img: Vec<u64> = (0..k)
                    .map(|j| {
                        let mut s = 0u64;
                        for (kk, &v) in b.iter().enumerate() {
                            if v != 0 {
                                s = (s + mat[j][kk] % l * v) % l;
                            }
                        }
                        s
                    })
                    .collect();
                let coords = in_coordinates(&space.basis, &img, l).ok_or_else(|| {
                    CharTableError::Internal("class matrix does not stabilize subspace".into())
                })?;
                for (bj, &c) in coords.iter().enumerate() {
                    action[bj][bi] = c;
                }
            }
            // eigenvalues: roots of the characteristic polynomial in F_l
            let cp = char_poly(action.clone(), l);
            let mut split_dims = 0usize;
            for lam in 0..l {
                if eval_poly(&cp, lam, l) != 0 {
                    continue;
                }
                let mut shifted = action.clone();
                for d in 0..dim {
                    shifted[d][d] = (shifted[d][d] + l - lam) % l;
                }
                let kernel = null_space(shifted, l);
                if kernel.is_empty() {
                    continue;
                }
                split_dims += kernel.len();
                // lift back to ambient coordinates
                let basis: Vec<Vec<u64>> = kernel
                    .iter()
                    .map(|coef| {
                        let mut v = vec![0u64; k];
                        for (bi, &c) in coef.iter().enumerate() {
                            if c != 0 {
                                for (j, &bv) in space.basis[bi].iter().enumerate() {
                                    v[j] = (v[j] + c * bv) % l;
                                }
                            }
                        }
                        v
                    })
                    .collect();
                next.push(Subspace { basis });
            }
            if split_dims != dim {
                return Err(CharTableError::Internal(
                    "class matrix is not diagonalizable over F_l".into(),
                ));
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.basis.len() != 1) {
        return Err(CharTableError::Internal(format!(
            "splitting finished with {} subspaces for {} classes",
            spaces.len(),
            k
        )));
    }

    // normalize: coordinate of the identity class is 1
    let mut omegas: Vec<Vec<u64>> = Vec::with_capacity(k);
    for s in &spaces {
        let v = &s.basis[0];
        if v[0] == 0 {
            return Err(CharTableError::Internal(
                "central character with vanishing identity coordinate".into(),
            ));
        }
        let inv = inv_mod(v[0], l);
        omegas.push(v.iter().map(|&x| x * inv % l).collect());
    }

    // degrees: d^2 = |G| / sum_i w_i w_{i*} / |C_i|
    let divisors = arith::divisors(n as u64);
    let mut degrees = Vec::with_capacity(k);
    for w in &omegas {
        let mut s = 0u64;
        for i in 0..k {
            let term = w[i] * w[data.inverse_class[i]] % l * inv_mod(data.sizes[i] % l, l) % l;
            s = (s + term) % l;
        }
        let d2 = (n as u64 % l) * inv_mod(s, l) % l;
        let d = divisors
            .iter()
            .copied()
            .find(|&d| d * d <= n as u64 && d % l * (d % l) % l == d2)
            .ok_or_else(|| {
                CharTableError::Internal("no divisor matches the degree congruence".into())
            })?;
        degrees.push(d);
    }
    Ok(DixonOutput { l, omegas, degrees })
}

/// Full exact character table.
pub fn character_table(g: &CayleyGroup) -> Result<CharacterTable, CharTableError> {
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let n = g.order();
    let m = g.exponent();
    let out = run_dixon(g)?;
    let l = out.l;
    let z = pow_mod(primitive_root(l), (l - 1) / m as u64, l);

    let class_info: Vec<ClassInfo> = (0..k)
        .map(|c| ClassInfo {
            rep: classes[c][0],
            size: classes[c].len() as u32,
            elem_order: g.elem_order(classes[c][0] as usize) as u32,
        })
        .collect();

    // reduced table values mod l: chi(class j) = d * w_j / |C_j|
    let sizes: Vec<u64> = class_info.iter().map(|c| c.size as u64).collect();
    let mut rows: Vec<(u64, Vec<CyclotomicValue>)> = Vec::with_capacity(k);
    for (w, &d) in out.omegas.iter().zip(out.degrees.iter()) {
        let chi_mod: Vec<u64> = (0..k)
            .map(|j| d % l * w[j] % l * inv_mod(sizes[j] % l, l) % l)
            .collect();
        let mut values = Vec::with_capacity(k);
        for j in 0..k {
            let rep = class_info[j].rep as usize;
            let ord = class_info[j].elem_order as usize;
            let zn = pow_mod(z, (m / ord) as u64, l);
            // multiplicities of each ord-th root of unity among the
            // eigenvalues at this class, recovered mod l (all < l)
            let ninv = inv_mod(ord as u64 % l, l);
            let mut value = CyclotomicValue::zero(m);
            let mut total = 0u64;
            for u in 0..ord {
                let mut s = 0u64;
                for v in 0..ord {
                    let cls = g.class_of(g.power(rep, v as i64));
                    let e = (u * v) % ord;
                    s = (s + chi_mod[cls] * pow_mod(zn, (ord - e) as u64 % ord as u64, l)) % l;
                }
                let mult = s * ninv % l;
                if mult != 0 {
                    total += mult;
                    value = value.add(
                        &CyclotomicValue::root_power(m, ((m / ord) * u) as i64).scale(mult as i64),
                    );
                }
            }
            if j == 0 && total != d {
                return Err(CharTableError::Internal(
                    "degree does not match the lifted identity value".into(),
                ));
            }
            values.push(value);
        }
        rows.push((d, values));
    }

    // canonical row order: degree, then lexicographic canonical values
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            let ka: Vec<Vec<i64>> = a.1.iter().map(|v| v.canonical()).collect();
            let kb: Vec<Vec<i64>> = b.1.iter().map(|v| v.canonical()).collect();
            ka.cmp(&kb)
        })
    });

    let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
    let values: Vec<Vec<CyclotomicValue>> = rows.into_iter().map(|r| r.1).collect();

    // structural verification
    let sum_sq: u64 = degrees.iter().map(|d| d * d).sum();
    if sum_sq != n as u64 {
        return Err(CharTableError::Internal(format!(
            "degree squares sum to {sum_sq}, order is {n}"
        )));
    }
    for &d in &degrees {
        if n as u64 % d != 0 {
            return Err(CharTableError::Internal(format!(
                "degree {d} does not divide the group order"
            )));
        }
    }
    // orthogonality mod l (the exact cyclotomic check is exposed
    // separately; this catches any lifting slip at negligible cost)
    let zpow: Vec<u64> = {
        let mut v = Vec::with_capacity(m);
        let mut acc = 1u64;
        for _ in 0..m {
            v.push(acc);
            acc = acc * z % l;
        }
        v
    };
    let eval = |val: &CyclotomicValue| -> u64 {
        let mut s: i128 = 0;
        for (i, &c) in val.coeffs().iter().enumerate() {
            if c != 0 {
                s += c as i128 * zpow[i] as i128;
            }
        }
        s.rem_euclid(l as i128) as u64
    };
    let vals_mod: Vec<Vec<u64>> = values
        .iter()
        .map(|row| row.iter().map(&eval).collect())
        .collect();
    let vals_conj_mod: Vec<Vec<u64>> = values
        .iter()
        .map(|row| row.iter().map(|v| eval(&v.conjugate())).collect())
        .collect();
    for a in 0..k {
        for b in a..k {
            let mut s = 0u64;
            for j in 0..k {
                s = (s + sizes[j] % l * vals_mod[a][j] % l * vals_conj_mod[b][j]) % l;
            }
            let expect = if a == b { n as u64 % l } else { 0 };
            if s != expect {
                return Err(CharTableError::Internal(format!(
                    "row orthogonality fails mod {l} at rows {a}, {b}"
                )));
            }
        }
    }

    let linear = degrees.iter().filter(|&&d| d == 1).count();
    let derived_index = n / g.derived_subgroup().order();
    if linear != derived_index {
        return Err(CharTableError::Internal(format!(
            "{linear} linear characters but |G:G'| = {derived_index}"
        )));
    }

    Ok(CharacterTable {
        group_order: n,
        group_hash: g.content_hash_hex(),
        exponent: m,
        dixon_prime: l,
        classes: class_info,
        degrees,
        values,
    })
}
