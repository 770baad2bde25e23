//! Decision procedure for orthogonality-preserving local measurements.
//!
//! A POVM element `E_t` acting on party `t` keeps states `i` and `j`
//! orthogonal iff `⟨φ_i| I ⊗ E_t ⊗ I |φ_j⟩ = 0`. When every other party's
//! factor of `⟨φ_i|φ_j⟩` is nonzero this reduces to `u^T E_t v = 0` with `u`,
//! `v` the party-`t` factors. Writing the Hermitian `E_t = S + iA` with `S`
//! real symmetric and `A` real antisymmetric, and using that `u`, `v` are
//! real, each pair yields one real equation on `S` and one on `A`.
//!
//! The measurement is trivial iff the solution space of all these equations
//! is spanned by the identity. Positive semidefiniteness does not need to be
//! imposed: if the span is larger, `I + εW` is PSD for small `ε` and any
//! traceless solution `W`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, Echelon};
use crate::tensor::{check_pairwise_orthogonality, inner_factors, StateSet};

/// Coordinate layout of a `d × d` Hermitian matrix as `d²` real unknowns.
///
/// First the `d(d+1)/2` symmetric coordinates `S_{a,b}` (`a <= b`) in
/// row-major order, then the `d(d-1)/2` antisymmetric coordinates `A_{a,b}`
/// (`a < b`) in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HermitianCoords {
    dim: usize,
}

impl HermitianCoords {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unknowns(&self) -> usize {
        self.dim * self.dim
    }

    pub fn symmetric_count(&self) -> usize {
        self.dim * (self.dim + 1) / 2
    }

    /// Index of `S_{a,b}`; argument order does not matter.
    pub fn sym(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        // rows 0..a contribute d + (d-1) + ... + (d-a+1) entries
        a * self.dim - a * a.saturating_sub(1) / 2 + (b - a)
    }

    /// Index of `A_{a,b}` for `a < b`.
    pub fn anti(&self, a: usize, b: usize) -> usize {
        assert!(a < b, "antisymmetric coordinate needs a < b");
        let m = self.dim - 1;
        self.symmetric_count() + a * m - a * a.saturating_sub(1) / 2 + (b - a - 1)
    }

    /// Coordinates of the identity matrix.
    pub fn identity(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.unknowns()];
        for a in 0..self.dim {
            v[self.sym(a, a)] = BigRational::from_integer(1.into());
        }
        v
    }

    /// Reassembles coordinates into a Hermitian matrix `E = S + iA`.
    pub fn to_matrix(&self, coords: &[BigRational]) -> HermitianMatrix {
        let d = self.dim;
        let mut re = vec![vec![BigRational::zero(); d]; d];
        let mut im = vec![vec![BigRational::zero(); d]; d];
        for a in 0..d {
            for b in a..d {
                let s = coords[self.sym(a, b)].clone();
                re[a][b] = s.clone();
                re[b][a] = s;
                if a < b {
                    let x = coords[self.anti(a, b)].clone();
                    im[b][a] = -x.clone();
                    im[a][b] = x;
                }
            }
        }
        HermitianMatrix { re, im }
    }
}

/// Which real part of `u^T E v = 0` a row encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowPart {
    Symmetric,
    Antisymmetric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRow {
    pub pair: (usize, usize),
    pub part: RowPart,
    pub coeffs: Vec<BigInt>,
}

/// Every linear condition the set imposes on one party's POVM element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementConstraintSystem {
    party: usize,
    coords: HermitianCoords,
    rows: Vec<ConstraintRow>,
}

impl MeasurementConstraintSystem {
    pub fn party(&self) -> usize {
        self.party
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn coords(&self) -> HermitianCoords {
        self.coords
    }

    pub fn rows(&self) -> &[ConstraintRow] {
        &self.rows
    }
}

/// Builds the constraint system for party `t`.
pub fn assemble(set: &StateSet, t: usize) -> Result<MeasurementConstraintSystem> {
    let n = set.shape().parties();
    if t >= n {
        return Err(Error::IndexOutOfRange(format!(
            "party {t} (set has {n} parties)"
        )));
    }
    let violations = check_pairwise_orthogonality(set);
    if !violations.is_empty() {
        return Err(Error::NotOrthogonal(violations));
    }
    let coords = HermitianCoords::new(set.shape().dim(t));
    let d = coords.dim();
    let states = set.states();
    let mut rows = Vec::new();
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let factors = inner_factors(&states[i], &states[j])?;
            if factors
                .iter()
                .enumerate()
                .any(|(k, f)| k != t && f.is_zero())
            {
                continue;
            }
            let u: Vec<BigInt> = states[i]
                .local(t)
                .coeffs()
                .iter()
                .map(|&x| x.into())
                .collect();
            let v: Vec<BigInt> = states[j]
                .local(t)
                .coeffs()
                .iter()
                .map(|&x| x.into())
                .collect();

            let mut sym = vec![BigInt::zero(); coords.unknowns()];
            let mut anti = vec![BigInt::zero(); coords.unknowns()];
            for a in 0..d {
                sym[coords.sym(a, a)] = &u[a] * &v[a];
                for b in a + 1..d {
                    sym[coords.sym(a, b)] = &u[a] * &v[b] + &u[b] * &v[a];
                    anti[coords.anti(a, b)] = &u[a] * &v[b] - &u[b] * &v[a];
                }
            }
            // identity membership: the diagonal sum is the party-t factor
            let trace: BigInt = (0..d).map(|a| &sym[coords.sym(a, a)]).sum();
            assert!(
                trace.is_zero(),
                "identity violates pair ({i},{j}) on party {t}"
            );

            for (part, coeffs) in [(RowPart::Symmetric, sym), (RowPart::Antisymmetric, anti)] {
                if coeffs.iter().any(|c| !c.is_zero()) {
                    rows.push(ConstraintRow {
                        pair: (i, j),
                        part,
                        coeffs,
                    });
                }
            }
        }
    }
    Ok(MeasurementConstraintSystem {
        party: t,
        coords,
        rows,
    })
}

/// Rational basis of the solutions of a constraint system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nullspace {
    pub basis: Vec<Vec<BigRational>>,
    pub rank: usize,
    pub unknowns: usize,
}

pub fn nullspace(system: &MeasurementConstraintSystem) -> Nullspace {
    let unknowns = system.coords.unknowns();
    let mut ech = Echelon::new(unknowns);
    for row in &system.rows {
        // the identity always solves an assembled system, so rank <= d² - 1
        if ech.rank() + 1 == unknowns {
            break;
        }
        ech.insert_integer_row(&row.coeffs);
    }
    let basis = ech.nullspace_basis();
    assert_eq!(basis.len(), unknowns - ech.rank(), "rank-nullity");
    Nullspace {
        basis,
        rank: ech.rank(),
        unknowns,
    }
}

/// A `d × d` Hermitian matrix with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianMatrix {
    pub re: Vec<Vec<BigRational>>,
    pub im: Vec<Vec<BigRational>>,
}

impl HermitianMatrix {
    pub fn dim(&self) -> usize {
        self.re.len()
    }

    pub fn is_scalar_identity(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| {
                self.im[a][b].is_zero()
                    && if a == b {
                        self.re[a][a] == self.re[0][0]
                    } else {
                        self.re[a][b].is_zero()
                    }
            })
        })
    }

    /// Entries rendered as `"p/q"` strings.
    pub fn to_fraction_strings(&self) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
        let render = |m: &Vec<Vec<BigRational>>| -> Vec<Vec<String>> {
            m.iter()
                .map(|r| r.iter().map(fraction_string).collect())
                .collect()
        };
        (render(&self.re), render(&self.im))
    }
}

pub fn fraction_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Triviality {
    Trivial,
    Nontrivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityVerdict {
    pub party: usize,
    pub status: Triviality,
    pub nullspace_dim: usize,
    /// A solution that is not a multiple of the identity; present iff nontrivial.
    pub witness: Option<HermitianMatrix>,
}

impl TrivialityVerdict {
    pub fn is_trivial(&self) -> bool {
        self.status == Triviality::Trivial
    }
}

pub fn verdict(set: &StateSet, t: usize) -> Result<TrivialityVerdict> {
    let system = assemble(set, t)?;
    let coords = system.coords;
    let ns = nullspace(&system);
    let identity = coords.identity();
    let d = BigRational::from_integer(coords.dim().into());

    // remove the identity component from each basis vector; whatever survives
    // is a traceless solution
    let witness = ns.basis.iter().find_map(|w| {
        let c = dot(w, &identity) / &d;
        let residual: Vec<BigRational> = w.iter().zip(&identity).map(|(x, e)| x - &c * e).collect();
        residual
            .iter()
            .any(|x| !x.is_zero())
            .then(|| normalize(residual))
    });

    let dim = ns.basis.len();
    assert!(dim >= 1, "identity must solve the system for party {t}");
    if dim == 1 {
        assert!(
            witness.is_none(),
            "one-dimensional solution space must be the identity span"
        );
    }
    Ok(TrivialityVerdict {
        party: t,
        status: if dim == 1 {
            Triviality::Trivial
        } else {
            Triviality::Nontrivial
        },
        nullspace_dim: dim,
        witness: witness.map(|w| coords.to_matrix(&w)),
    })
}

// scale so the first nonzero coordinate has absolute value 1
fn normalize(v: Vec<BigRational>) -> Vec<BigRational> {
    let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() else {
        return v;
    };
    let scale = first.abs().recip();
    v.into_iter().map(|x| x * &scale).collect()
}

/// One verdict per party, in party order.
pub fn verify_all(set: &StateSet) -> Result<Vec<TrivialityVerdict>> {
    let violations = check_pairwise_orthogonality(set);
    if !violations.is_empty() {
        return Err(Error::NotOrthogonal(violations));
    }
    (0..set.shape().parties())
        .into_par_iter()
        .map(|t| verdict(set, t))
        .collect()
}

/// True iff every party admits only trivial orthogonality-preserving measurements.
pub fn certified_nonlocal(verdicts: &[TrivialityVerdict]) -> bool {
    verdicts.iter().all(TrivialityVerdict::is_trivial)
}
