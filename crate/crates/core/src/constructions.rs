//! Nonlocal orthogonal product state families and their closed-form sizes.
//!
//! Two families are generated:
//!
//! * [`gen_equal`]: `n(d-1)+1` states in `(C^d)^{⊗n}`, groups `G_0 .. G_{n-1}`
//!   followed by the stopper.
//! * [`gen_general`]: `Σ_{i=2}^{n-1} d_i + 2 d_n - n + 1` states in
//!   `C^{d_1} ⊗ ... ⊗ C^{d_n}` with `3 <= d_1 <= ... <= d_n`, groups
//!   `B_1 .. B_{2n}` followed by the stopper (`B_{2n+1}`).
//!
//! Every state carries a label `<group>[i=<i>]`; the stopper is labeled `S`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{stopper, LocalVector, ProductState, StateSet, SystemShape, DEFAULT_DIM_CAP};

/// Which family to build and with what parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionKind {
    EqualDims { parties: usize, dim: usize },
    GeneralDims { dims: Vec<usize> },
}

impl ConstructionKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::EqualDims { parties, dim } => {
                if *parties < 3 {
                    return Err(Error::ConstructionDomain(format!(
                        "equal-dimension construction requires n >= 3, got n = {parties}"
                    )));
                }
                if *dim < 3 {
                    return Err(Error::ConstructionDomain(format!(
                        "equal-dimension construction requires d >= 3, got d = {dim}"
                    )));
                }
            }
            Self::GeneralDims { dims } => {
                if dims.len() < 3 {
                    return Err(Error::ConstructionDomain(format!(
                        "general construction requires n >= 3 parties, got {}",
                        dims.len()
                    )));
                }
                if dims[0] < 3 {
                    return Err(Error::ConstructionDomain(format!(
                        "general construction requires d_1 >= 3, got d_1 = {}",
                        dims[0]
                    )));
                }
                if let Some(k) = (1..dims.len()).find(|&k| dims[k] < dims[k - 1]) {
                    return Err(Error::ConstructionDomain(format!(
                        "general construction requires nondecreasing dims (3 <= d_1 <= ... <= d_n), \
                         but d_{} = {} > d_{} = {}",
                        k,
                        dims[k - 1],
                        k + 1,
                        dims[k]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> Vec<usize> {
        match self {
            Self::EqualDims { parties, dim } => vec![*dim; *parties],
            Self::GeneralDims { dims } => dims.clone(),
        }
    }

    pub fn provenance(&self) -> String {
        match self {
            Self::EqualDims { parties, dim } => format!("equal(n={parties},d={dim})"),
            Self::GeneralDims { dims } => {
                let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                format!("general(dims={})", parts.join(","))
            }
        }
    }

    pub fn generate(&self) -> Result<StateSet> {
        self.generate_with_cap(DEFAULT_DIM_CAP)
    }

    pub fn generate_with_cap(&self, cap: usize) -> Result<StateSet> {
        self.validate()?;
        let shape = SystemShape::with_cap(self.dims(), cap)?;
        let states = match self {
            Self::EqualDims { .. } => equal_states(&shape),
            Self::GeneralDims { .. } => general_states(&shape),
        };
        StateSet::new(shape, states, self.provenance())
    }
}

/// Closed-form cardinality of the family.
pub fn expected_size(kind: &ConstructionKind) -> Result<usize> {
    kind.validate()?;
    Ok(match kind {
        ConstructionKind::EqualDims { parties, dim } => parties * (dim - 1) + 1,
        ConstructionKind::GeneralDims { dims } => {
            let n = dims.len();
            dims[1..n - 1].iter().sum::<usize>() + 2 * dims[n - 1] + 1 - n
        }
    })
}

pub fn gen_equal(parties: usize, dim: usize) -> Result<StateSet> {
    ConstructionKind::EqualDims { parties, dim }.generate()
}

pub fn gen_general(dims: &[usize]) -> Result<StateSet> {
    ConstructionKind::GeneralDims {
        dims: dims.to_vec(),
    }
    .generate()
}

/// Builds a state from `(party, factor)` overrides; other parties get `|0⟩`.
fn product(shape: &SystemShape, factors: Vec<(usize, LocalVector)>, label: String) -> ProductState {
    let mut locals: Vec<LocalVector> = shape
        .dims()
        .iter()
        .map(|&d| LocalVector::basis(d, 0))
        .collect();
    for (party, v) in factors {
        locals[party] = v;
    }
    ProductState::new(shape.clone(), locals, Some(label)).expect("factor lengths follow the shape")
}

fn equal_states(shape: &SystemShape) -> Vec<ProductState> {
    let n = shape.parties();
    let d = shape.dim(0);
    let mut states = Vec::with_capacity(n * (d - 1) + 1);
    for i in 1..d {
        states.push(product(
            shape,
            vec![
                (0, LocalVector::difference(d, 0, i)),
                (n - 1, LocalVector::basis(d, i)),
            ],
            format!("G_0[i={i}]"),
        ));
    }
    for g in 1..n {
        for i in 1..d {
            states.push(product(
                shape,
                vec![
                    (g - 1, LocalVector::basis(d, i)),
                    (g, LocalVector::difference(d, 0, i)),
                ],
                format!("G_{g}[i={i}]"),
            ));
        }
    }
    states.push(stopper(shape));
    states
}

fn general_states(shape: &SystemShape) -> Vec<ProductState> {
    let n = shape.parties();
    let d = shape.dims();
    let last = n - 1;
    let mut states = Vec::new();

    // B_1
    for i in 1..d[0] {
        states.push(product(
            shape,
            vec![
                (0, LocalVector::difference(d[0], 0, i)),
                (last, LocalVector::basis(d[last], i)),
            ],
            format!("B_1[i={i}]"),
        ));
    }
    // B_g, g in [2, n]: |i⟩ at party g-1, |0-i⟩ at party g (1-based)
    for g in 2..=n {
        let (p, q) = (g - 2, g - 1);
        for i in 1..d[p] {
            states.push(product(
                shape,
                vec![
                    (p, LocalVector::basis(d[p], i)),
                    (q, LocalVector::difference(d[q], 0, i)),
                ],
                format!("B_{g}[i={i}]"),
            ));
        }
    }
    // B_{n+g}, g in [1, n-2]: |1⟩ at g, |0-i⟩ at g+1, |i⟩ at g+2 (1-based)
    for g in 1..=n - 2 {
        let (p, q, r) = (g - 1, g, g + 1);
        for i in d[p]..d[q] {
            states.push(product(
                shape,
                vec![
                    (p, LocalVector::basis(d[p], 1)),
                    (q, LocalVector::difference(d[q], 0, i)),
                    (r, LocalVector::basis(d[r], i)),
                ],
                format!("B_{}[i={i}]", n + g),
            ));
        }
    }
    // B_{2n-1}: |m⟩_1 |1⟩_{n-1} |(i-1)-i⟩_n, m = 2 for even i, 1 for odd i
    for i in d[last - 1]..d[last] {
        let m = if i % 2 == 0 { 2 } else { 1 };
        states.push(product(
            shape,
            vec![
                (0, LocalVector::basis(d[0], m)),
                (last - 1, LocalVector::basis(d[last - 1], 1)),
                (last, LocalVector::difference(d[last], i - 1, i)),
            ],
            format!("B_{}[i={i}]", 2 * n - 1),
        ));
    }
    // B_{2n}: |0-2⟩_1 |0-2⟩_{n-1} |i⟩_n
    for i in d[0]..d[last] {
        states.push(product(
            shape,
            vec![
                (0, LocalVector::difference(d[0], 0, 2)),
                (last - 1, LocalVector::difference(d[last - 1], 0, 2)),
                (last, LocalVector::basis(d[last], i)),
            ],
            format!("B_{}[i={i}]", 2 * n),
        ));
    }
    states.push(stopper(shape));
    states
}

/// Set sizes of this construction next to earlier constructions in the literature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    /// This construction; absent when the dims violate its hypotheses.
    pub ours: Option<usize>,
    /// `Σ_i (2 d_i - 3) + 1`.
    pub jiang: usize,
    /// `2(d_1 + d_3) - 3`, tripartite systems only.
    pub wang: Option<usize>,
    /// `2 d_n - 1`, bipartite systems only.
    pub zhang: Option<usize>,
}

pub fn prior_sizes(shape: &SystemShape) -> SizeReport {
    let dims = shape.dims();
    let n = dims.len();
    let jiang = dims.iter().map(|&d| 2 * d - 3).sum::<usize>() + 1;
    let wang = (n == 3).then(|| 2 * (dims[0] + dims[2]) - 3);
    let zhang = (n == 2).then(|| 2 * dims[n - 1] - 1);
    let ours = expected_size(&ConstructionKind::GeneralDims {
        dims: dims.to_vec(),
    })
    .ok();
    SizeReport {
        ours,
        jiang,
        wang,
        zhang,
    }
}
