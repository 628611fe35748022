//! The binary code of an `n`-colorable face-acyclic `Q`.
//!
//! Coordinates are the vertices of `Q` in canonical order and each facet
//! contributes the indicator vector of its vertices. Self-duality is verified
//! per instance, never assumed.

use crate::charfn::MInvolution;
use crate::error::{Error, Result};
use crate::gf2::{dual_code, Gf2Matrix, Gf2Vector};
use crate::poset::FacePoset;

/// Largest dimension for exhaustive minimum distance.
pub const MAX_ENUMERATION_DIM: usize = 24;

#[derive(Clone, Debug)]
pub struct BinaryCode {
    pub length: usize,
    pub gen: Gf2Matrix,
    pub dim: usize,
}

impl BinaryCode {
    pub fn new(gen: Gf2Matrix) -> Self {
        Self {
            length: gen.ncols(),
            dim: gen.rank(),
            gen,
        }
    }
}

/// Builds the facet–vertex incidence code. Requires an m-involution; warns
/// (but proceeds) when `n` is even.
pub fn facet_code(p: &FacePoset, m: &MInvolution) -> Result<(BinaryCode, Vec<String>)> {
    if !m.exists {
        return Err(Error::Precondition(
            "no m-involution: λ does not map onto a basis or Q is not face-acyclic".into(),
        ));
    }
    let vertices = p.vertices();
    if vertices.is_empty() {
        return Err(Error::Precondition("Q has no vertices".into()));
    }
    let mut warnings = Vec::new();
    if p.dim().is_multiple_of(2) {
        warnings.push(format!(
            "n = {} is even; self-duality is only expected for odd n",
            p.dim()
        ));
    }
    let rows = p
        .facets()
        .into_iter()
        .map(|f| {
            let bits: Vec<bool> = vertices.iter().map(|&v| p.contains(f, v)).collect();
            Gf2Vector::from_bits(&bits)
        })
        .collect();
    Ok((BinaryCode::new(Gf2Matrix::from_rows(vertices.len(), rows)), warnings))
}

pub fn is_self_dual(c: &BinaryCode) -> bool {
    c.gen.same_row_space(&dual_code(&c.gen))
}

/// Minimum weight over all nonzero codewords, by Gray-code enumeration.
pub fn min_distance(c: &BinaryCode) -> Result<usize> {
    if c.dim == 0 {
        return Err(Error::Precondition(
            "minimum distance of the zero code is undefined".into(),
        ));
    }
    if c.dim > MAX_ENUMERATION_DIM {
        return Err(Error::Precondition(format!(
            "dimension {} exceeds the enumeration bound {MAX_ENUMERATION_DIM}; use a dedicated coding theory package",
            c.dim
        )));
    }
    let (basis, _) = c.gen.rref();
    let mut word = Gf2Vector::zeros(c.length);
    let mut best = usize::MAX;
    for i in 1u64..(1u64 << c.dim) {
        word.xor_assign(basis.row(i.trailing_zeros() as usize));
        best = best.min(word.weight());
    }
    Ok(best)
}
