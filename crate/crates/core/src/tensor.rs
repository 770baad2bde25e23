//! Exact integer representation of multipartite product states.
//!
//! A product state is stored as one integer coefficient vector per party in
//! the computational basis. Vectors are never normalized: scaling a local
//! factor by a nonzero integer changes neither orthogonality nor any
//! measurement constraint derived from it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest per-party dimension accepted unless a caller supplies its own cap.
pub const DEFAULT_DIM_CAP: usize = 64;

/// Dimension vector `(d_1, ..., d_n)` of a multipartite system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemShape {
    dims: Vec<usize>,
}

impl SystemShape {
    /// Validates `n >= 2`, `d_k >= 2` and `d_k <= DEFAULT_DIM_CAP`.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        Self::with_cap(dims, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(dims: Vec<usize>, cap: usize) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidShape(format!(
                "a system needs at least 2 parties, got {}",
                dims.len()
            )));
        }
        if let Some((k, d)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::InvalidShape(format!(
                "party {k} has dimension {d}; every dimension must be >= 2"
            )));
        }
        if let Some((k, d)) = dims.iter().enumerate().find(|(_, &d)| d > cap) {
            return Err(Error::InvalidShape(format!(
                "party {k} has dimension {d}, above the dimension cap {cap}"
            )));
        }
        Ok(Self { dims })
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, party: usize) -> usize {
        self.dims[party]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension of the full tensor space, `None` on overflow.
    pub fn total_dim(&self) -> Option<usize> {
        self.dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
    }
}

impl fmt::Display for SystemShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Coefficients of one party's factor, indexed by computational basis ket.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalVector {
    coeffs: Vec<i64>,
}

impl LocalVector {
    /// Rejects the empty and the all-zero vector.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidShape("local vector has length 0".into()));
        }
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidShape(
                "local vector must have at least one nonzero coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// `|i⟩` in dimension `dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        let mut coeffs = vec![0; dim];
        coeffs[i] = 1;
        Self { coeffs }
    }

    /// `|a - b⟩` in dimension `dim`.
    pub fn difference(dim: usize, a: usize, b: usize) -> Self {
        assert!(
            a < dim && b < dim && a != b,
            "invalid difference |{a}-{b}⟩ in dimension {dim}"
        );
        let mut coeffs = vec![0; dim];
        coeffs[a] = 1;
        coeffs[b] = -1;
        Self { coeffs }
    }

    /// `|0 + 1 + ... + (dim-1)⟩`.
    pub fn ones(dim: usize) -> Self {
        Self {
            coeffs: vec![1; dim],
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Indices with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn scaled(&self, factor: i64) -> Result<Self> {
        if factor == 0 {
            return Err(Error::InvalidShape("scaling factor must be nonzero".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                c.checked_mul(factor)
                    .ok_or_else(|| Error::InvalidShape("coefficient overflow while scaling".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }
}

impl fmt::Display for LocalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A product of local vectors, one per party.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductState {
    shape: SystemShape,
    locals: Vec<LocalVector>,
    label: Option<String>,
}

impl ProductState {
    pub fn new(
        shape: SystemShape,
        locals: Vec<LocalVector>,
        label: Option<String>,
    ) -> Result<Self> {
        if locals.len() != shape.parties() {
            return Err(Error::Dimension(format!(
                "state has {} local factors but the shape has {} parties",
                locals.len(),
                shape.parties()
            )));
        }
        for (k, v) in locals.iter().enumerate() {
            if v.len() != shape.dim(k) {
                return Err(Error::Dimension(format!(
                    "party {k} factor has length {} but dimension is {}",
                    v.len(),
                    shape.dim(k)
                )));
            }
        }
        Ok(Self {
            shape,
            locals,
            label,
        })
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn locals(&self) -> &[LocalVector] {
        &self.locals
    }

    pub fn local(&self, party: usize) -> &LocalVector {
        &self.locals[party]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// True when every coefficient of every factor equals +1.
    pub fn is_all_ones(&self) -> bool {
        self.locals
            .iter()
            .all(|v| v.coeffs().iter().all(|&c| c == 1))
    }

    /// Copy with the factor of `party` multiplied by `factor`.
    pub fn scale_party(&self, party: usize, factor: i64) -> Result<Self> {
        if party >= self.shape.parties() {
            return Err(Error::IndexOutOfRange(format!("party {party}")));
        }
        let mut locals = self.locals.clone();
        locals[party] = locals[party].scaled(factor)?;
        Ok(Self {
            shape: self.shape.clone(),
            locals,
            label: self.label.clone(),
        })
    }
}

impl fmt::Display for ProductState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = &self.label {
            write!(f, "{label}: ")?;
        }
        let parts: Vec<String> = self.locals.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("⊗"))
    }
}

/// Ordered collection of product states over one shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSet {
    shape: SystemShape,
    states: Vec<ProductState>,
    provenance: String,
}

impl StateSet {
    pub fn new(
        shape: SystemShape,
        states: Vec<ProductState>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if let Some((i, _)) = states.iter().enumerate().find(|(_, s)| s.shape() != &shape) {
            return Err(Error::Dimension(format!(
                "state {i} has shape {} but the set has shape {shape}",
                states[i].shape()
            )));
        }
        Ok(Self {
            shape,
            states,
            provenance: provenance.into(),
        })
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn states(&self) -> &[ProductState] {
        &self.states
    }

    pub fn get(&self, index: usize) -> Option<&ProductState> {
        self.states.get(index)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Display label of state `index`; unlabeled states render as `#index`.
    pub fn label_of(&self, index: usize) -> String {
        self.states[index]
            .label()
            .map(str::to_owned)
            .unwrap_or_else(|| format!("#{index}"))
    }

    /// Index of the first state whose coefficients are all +1.
    pub fn stopper_index(&self) -> Option<usize> {
        self.states.iter().position(ProductState::is_all_ones)
    }

    /// Copy of the set with the states at `indices` removed.
    pub fn without(&self, indices: &[usize]) -> Self {
        let states = self
            .states
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, s)| s.clone())
            .collect();
        Self {
            shape: self.shape.clone(),
            states,
            provenance: self.provenance.clone(),
        }
    }

    /// Copy of the set with state `index` replaced.
    pub fn with_state(&self, index: usize, state: ProductState) -> Result<Self> {
        if index >= self.states.len() {
            return Err(Error::IndexOutOfRange(format!("state {index}")));
        }
        let mut states = self.states.clone();
        states[index] = state;
        Self::new(self.shape.clone(), states, self.provenance.clone())
    }
}

/// Exact inner product `⟨u|v⟩` of two real integer vectors.
pub fn local_inner(u: &LocalVector, v: &LocalVector) -> Result<BigInt> {
    if u.len() != v.len() {
        return Err(Error::Dimension(format!(
            "local vectors have lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(u.coeffs()
        .iter()
        .zip(v.coeffs())
        .fold(BigInt::zero(), |acc, (&a, &b)| {
            acc + BigInt::from(a) * BigInt::from(b)
        }))
}

/// Per-party factors of `⟨a|b⟩`; their product is the full inner product.
pub fn inner_factors(a: &ProductState, b: &ProductState) -> Result<Vec<BigInt>> {
    if a.shape() != b.shape() {
        return Err(Error::Dimension(format!(
            "shapes {} and {} differ",
            a.shape(),
            b.shape()
        )));
    }
    a.locals()
        .iter()
        .zip(b.locals())
        .map(|(u, v)| local_inner(u, v))
        .collect()
}

pub fn are_orthogonal(a: &ProductState, b: &ProductState) -> Result<bool> {
    Ok(inner_factors(a, b)?.iter().any(Zero::is_zero))
}

/// All unordered index pairs `(i, j)`, `i < j`, that are not orthogonal.
pub fn check_pairwise_orthogonality(set: &StateSet) -> Vec<(usize, usize)> {
    let states = set.states();
    let mut violations = Vec::new();
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            // shapes are uniform inside a set
            if !are_orthogonal(&states[i], &states[j]).expect("uniform shape") {
                violations.push((i, j));
            }
        }
    }
    violations
}

/// The all-ones product state `|S⟩`.
pub fn stopper(shape: &SystemShape) -> ProductState {
    let locals = shape.dims().iter().map(|&d| LocalVector::ones(d)).collect();
    ProductState {
        shape: shape.clone(),
        locals,
        label: Some("S".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LocalVector {
        LocalVector::new(c.to_vec()).unwrap()
    }

    fn state(dims: &[usize], locals: &[&[i64]]) -> ProductState {
        let shape = SystemShape::new(dims.to_vec()).unwrap();
        ProductState::new(shape, locals.iter().map(|c| lv(c)).collect(), None).unwrap()
    }

    #[test]
    fn local_inner_examples() {
        assert_eq!(
            local_inner(&lv(&[1, -1, 0]), &lv(&[1, 1, 0])).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            local_inner(&lv(&[1, 0, 0]), &lv(&[1, 0, 0])).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            local_inner(&lv(&[1, 1, 1]), &lv(&[1, -1, 0])).unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn local_inner_length_mismatch() {
        let err = local_inner(&lv(&[1, 0]), &lv(&[1, 0, 0])).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn local_inner_does_not_overflow() {
        let big = lv(&[i64::MAX, i64::MAX]);
        let expected = BigInt::from(i64::MAX) * BigInt::from(i64::MAX) * 2;
        assert_eq!(local_inner(&big, &big).unwrap(), expected);
    }

    #[test]
    fn inner_factors_examples() {
        // |0-1⟩|0⟩|1⟩ vs |1⟩|0-1⟩|0⟩
        let a = state(&[3, 3, 3], &[&[1, -1, 0], &[1, 0, 0], &[0, 1, 0]]);
        let b = state(&[3, 3, 3], &[&[0, 1, 0], &[1, -1, 0], &[1, 0, 0]]);
        let f: Vec<i64> = inner_factors(&a, &b)
            .unwrap()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(f, vec![-1, 1, 0]);

        let c = state(&[2, 2], &[&[1, 0], &[1, 0]]);
        let f: Vec<i64> = inner_factors(&c, &c)
            .unwrap()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(f, vec![1, 1]);
    }

    #[test]
    fn orthogonality_examples() {
        let a = state(&[2, 2], &[&[1, -1], &[1, 0]]);
        let b = state(&[2, 2], &[&[1, 1], &[1, 0]]);
        assert!(are_orthogonal(&a, &b).unwrap());
        let c = state(&[2, 2], &[&[1, 0], &[1, 0]]);
        let d = state(&[2, 2], &[&[1, 0], &[0, 1]]);
        assert!(are_orthogonal(&c, &d).unwrap());
        let e = state(&[2, 2], &[&[1, 1], &[1, 1]]);
        assert!(!are_orthogonal(&c, &e).unwrap());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = state(&[2, 2], &[&[1, 0], &[1, 0]]);
        let b = state(&[2, 3], &[&[1, 0], &[1, 0, 0]]);
        assert!(matches!(inner_factors(&a, &b), Err(Error::Dimension(_))));
        assert!(matches!(are_orthogonal(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn violating_pairs_listed() {
        let shape = SystemShape::new(vec![2, 2]).unwrap();
        let set = StateSet::new(
            shape,
            vec![
                state(&[2, 2], &[&[1, 0], &[1, 0]]),
                state(&[2, 2], &[&[1, 1], &[1, 1]]),
            ],
            "user",
        )
        .unwrap();
        assert_eq!(check_pairwise_orthogonality(&set), vec![(0, 1)]);
    }

    #[test]
    fn stopper_shapes() {
        let s = stopper(&SystemShape::new(vec![3, 4]).unwrap());
        assert_eq!(s.local(0).coeffs(), &[1, 1, 1]);
        assert_eq!(s.local(1).coeffs(), &[1, 1, 1, 1]);
        assert_eq!(s.label(), Some("S"));
        let zero = state(&[3, 4], &[&[1, 0, 0], &[1, 0, 0, 0]]);
        let f: Vec<i64> = inner_factors(&zero, &s)
            .unwrap()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(f, vec![1, 1]);
    }

    #[test]
    fn shape_validation() {
        assert!(SystemShape::new(vec![3]).is_err());
        assert!(SystemShape::new(vec![3, 1]).is_err());
        assert!(SystemShape::new(vec![3, 65]).is_err());
        assert!(SystemShape::with_cap(vec![3, 65], 128).is_ok());
        assert!(LocalVector::new(vec![0, 0]).is_err());
        assert!(LocalVector::new(vec![]).is_err());
    }

    #[test]
    fn product_state_checks_lengths() {
        let shape = SystemShape::new(vec![2, 3]).unwrap();
        let bad = ProductState::new(shape.clone(), vec![lv(&[1, 0]), lv(&[1, 0])], None);
        assert!(matches!(bad, Err(Error::Dimension(_))));
        let bad = ProductState::new(shape, vec![lv(&[1, 0])], None);
        assert!(matches!(bad, Err(Error::Dimension(_))));
    }
}
