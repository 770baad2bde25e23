//! Independent reference checks built on fully expanded tensors.
//!
//! Nothing here uses the library's factorized inner products, coordinate
//! layout or elimination code; only the state containers are shared.
#![allow(dead_code)]

use nwe_core::constructions::{gen_equal, gen_general};
use nwe_core::{ProductState, StateSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Mersenne prime used for modular rank computations.
pub const PRIME: i128 = (1 << 61) - 1;

/// Full Kronecker expansion of a product state, first party most significant.
pub fn expand(state: &ProductState) -> Vec<i128> {
    let mut out = vec![1i128];
    for local in state.locals() {
        let mut next = Vec::with_capacity(out.len() * local.len());
        for &x in &out {
            for &c in local.coeffs() {
                next.push(x * c as i128);
            }
        }
        out = next;
    }
    out
}

pub fn brute_inner(a: &ProductState, b: &ProductState) -> i128 {
    expand(a).iter().zip(expand(b)).map(|(x, y)| x * y).sum()
}

/// Stride of party `t` in the expanded index.
fn stride(dims: &[usize], t: usize) -> usize {
    dims[t + 1..].iter().product()
}

/// `M[a][b] = <x| (I ⊗ |a><b| ⊗ I) |y>` over the expanded vectors.
pub fn reduced_pair_matrix(dims: &[usize], t: usize, x: &[i128], y: &[i128]) -> Vec<Vec<i128>> {
    let d = dims[t];
    let s = stride(dims, t);
    let mut m = vec![vec![0i128; d]; d];
    for (idx, &xv) in x.iter().enumerate() {
        if xv == 0 {
            continue;
        }
        let a = (idx / s) % d;
        let base = idx - a * s;
        for (b, row) in (0..d).map(|b| (b, base + b * s)) {
            m[a][b] += xv * y[row];
        }
    }
    m
}

/// Integer matrix as rows.
pub type IntMatrix = Vec<Vec<i128>>;

/// Real Hermitian basis: diagonal units, symmetric pairs, then imaginary pairs.
/// Each element is `(re, im)` as integer matrices.
pub fn hermitian_basis(d: usize) -> Vec<(IntMatrix, IntMatrix)> {
    let zero = || vec![vec![0i128; d]; d];
    let mut out = Vec::new();
    for a in 0..d {
        let mut re = zero();
        re[a][a] = 1;
        out.push((re, zero()));
    }
    for a in 0..d {
        for b in a + 1..d {
            let mut re = zero();
            re[a][b] = 1;
            re[b][a] = 1;
            out.push((re, zero()));
            let mut im = zero();
            im[a][b] = 1;
            im[b][a] = -1;
            out.push((zero(), im));
        }
    }
    out
}

/// Rank of an integer matrix modulo `PRIME`.
pub fn rank_mod_p(mut rows: Vec<Vec<i128>>) -> usize {
    fn pow(mut b: i128, mut e: i128) -> i128 {
        let mut r = 1i128;
        b = b.rem_euclid(PRIME);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    }
    fn mulmod(a: i128, b: i128) -> i128 {
        // both operands are below 2^61, so the product fits in i128
        (a * b).rem_euclid(PRIME)
    }
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(PRIME);
        }
    }
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = pow(rows[rank][c], PRIME - 2);
        for x in rows[rank].iter_mut() {
            *x = mulmod(*x, inv);
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &pv) in row.iter_mut().zip(&pivot) {
                    *x = (*x - mulmod(f, pv)).rem_euclid(PRIME);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the space of Hermitian `E` on party `t` keeping every pair
/// of the set orthogonal, computed from expanded tensors.
pub fn brute_nullity(set: &StateSet, t: usize) -> usize {
    let dims = set.shape().dims().to_vec();
    let d = dims[t];
    let basis = hermitian_basis(d);
    let expanded: Vec<Vec<i128>> = set.states().iter().map(expand).collect();
    let mut rows = Vec::new();
    for i in 0..expanded.len() {
        for j in i + 1..expanded.len() {
            let m = reduced_pair_matrix(&dims, t, &expanded[i], &expanded[j]);
            let mut re_row = Vec::with_capacity(basis.len());
            let mut im_row = Vec::with_capacity(basis.len());
            for (hr, hi) in &basis {
                let mut re = 0;
                let mut im = 0;
                for a in 0..d {
                    for b in 0..d {
                        re += m[a][b] * hr[a][b];
                        im += m[a][b] * hi[a][b];
                    }
                }
                re_row.push(re);
                im_row.push(im);
            }
            rows.push(re_row);
            rows.push(im_row);
        }
    }
    basis.len() - rank_mod_p(rows)
}

/// The 2x2 computational product basis.
pub fn basis22() -> StateSet {
    use nwe_core::{LocalVector, SystemShape};
    let shape = SystemShape::new(vec![2, 2]).unwrap();
    let states = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(a, b)| {
            ProductState::new(
                shape.clone(),
                vec![LocalVector::basis(2, a), LocalVector::basis(2, b)],
                Some(format!("|{a}{b}>")),
            )
            .unwrap()
        })
        .collect();
    StateSet::new(shape, states, "basis(2,2)").unwrap()
}

/// Random nondecreasing dims with the given party and dimension ranges.
pub fn random_dims<R: Rng>(
    rng: &mut R,
    parties: (usize, usize),
    dim: (usize, usize),
) -> Vec<usize> {
    let n = rng.gen_range(parties.0..=parties.1);
    let mut dims: Vec<usize> = (0..n).map(|_| rng.gen_range(dim.0..=dim.1)).collect();
    dims.sort_unstable();
    dims
}

/// A construction set, either family, with parameters drawn from the ranges.
pub fn random_construction<R: Rng>(
    rng: &mut R,
    parties: (usize, usize),
    dim: (usize, usize),
) -> StateSet {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(parties.0..=parties.1);
        let d = rng.gen_range(dim.0..=dim.1);
        gen_equal(n, d).unwrap()
    } else {
        gen_general(&random_dims(rng, parties, dim)).unwrap()
    }
}

/// Drops a random subset of states (at least one kept) and rescales a few
/// local factors by small nonzero integers.
pub fn perturb<R: Rng>(rng: &mut R, set: &StateSet) -> StateSet {
    let mut idx: Vec<usize> = (0..set.len()).collect();
    idx.shuffle(rng);
    let drop = rng.gen_range(0..set.len().min(4));
    let mut out = set.without(&idx[..drop]);
    for _ in 0..rng.gen_range(0..3) {
        let i = rng.gen_range(0..out.len());
        let t = rng.gen_range(0..out.shape().parties());
        let factor = *[-3i64, -2, -1, 2, 3].choose(rng).unwrap();
        let scaled = out.states()[i].scale_party(t, factor).unwrap();
        out = out.with_state(i, scaled).unwrap();
    }
    out
}
