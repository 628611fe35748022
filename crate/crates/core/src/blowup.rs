//! Blow-ups along facial submanifolds, combinatorially: cutting a face off `Q`.
//!
//! Cutting a codimension-`k` face `f` removes every face contained in `f`
//! and adds a new facet `E ≅ f × Δ^(k-1)`. Its faces are pairs `(h, A)` with
//! `h ⊆ f` and `A` a proper subset of the `k` facets containing `f`; `(h, A)`
//! lies in the facets `E`, `A`, and the facets of `h` transverse to `f`. On
//! the dual complex this is the stellar subdivision of the cell dual to `f`.

use std::collections::{BTreeMap, BTreeSet};

use crate::charfn::{face_restriction, validate_lambda, CharFunction};
use crate::complex::{is_face_acyclic, CarrierComplex};
use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::model::{formality_verdict, Geometry};
use crate::poset::{dual_complex, FaceIx, FacePoset};

#[derive(Clone, Debug)]
pub struct CutResult {
    pub poset: FacePoset,
    pub lambda: CharFunction,
    /// The exceptional facet, as an index into `poset`.
    pub new_facet: FaceIx,
    /// Codimension of the cut face.
    pub k: usize,
    /// Old face id → ids of the faces replacing it. Faces not inside the cut
    /// face map to themselves.
    pub provenance: BTreeMap<String, Vec<String>>,
}

fn subsets_below(k: usize) -> impl Iterator<Item = u32> {
    0..(1u32 << k) - 1
}

pub fn cut_face(p: &FacePoset, l: &CharFunction, f: FaceIx) -> Result<CutResult> {
    let k = p.codim(f);
    if k < 2 {
        return Err(Error::Precondition(format!(
            "cannot cut {}: only faces of codimension at least 2 can be cut (codimension {k})",
            p.id(f)
        )));
    }
    let own: Vec<FaceIx> = p.facets_containing(f).to_vec();
    let inside: Vec<FaceIx> = p.below(f);
    let taken: BTreeSet<&str> = (0..p.len()).map(|g| p.id(g)).collect();

    let mut used = BTreeSet::new();
    let mut fresh = |base: String| {
        let mut id = base;
        while taken.contains(id.as_str()) || used.contains(&id) {
            id.push('\'');
        }
        used.insert(id.clone());
        id
    };
    let fid = p.id(f);
    let mut new_id: BTreeMap<(FaceIx, u32), String> = BTreeMap::new();
    for &h in &inside {
        for mask in subsets_below(k) {
            let mut id = format!("E[{fid}]");
            if h != f {
                id.push_str(&format!("/{}", p.id(h)));
            }
            if mask != 0 {
                let names: Vec<&str> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| p.id(own[i])).collect();
                id.push_str(&format!("|{}", names.join(",")));
            }
            new_id.insert((h, mask), fresh(id));
        }
    }

    let survives = |g: FaceIx| !p.contains(f, g);
    let mut faces: Vec<(String, usize)> = (0..p.len())
        .filter(|&g| survives(g))
        .map(|g| (p.id(g).to_string(), p.codim(g)))
        .collect();
    let mut covers: Vec<(String, String)> = p
        .covers()
        .iter()
        .filter(|&&(c, par)| survives(c) && survives(par))
        .map(|&(c, par)| (p.id(c).to_string(), p.id(par).to_string()))
        .collect();

    for (&(h, mask), id) in &new_id {
        let size = mask.count_ones() as usize;
        faces.push((id.clone(), 1 + p.codim(h) - k + size));
        // into the surviving face near h spanned by A and the transverse facets of h
        let mut facets: BTreeSet<FaceIx> = p
            .facets_containing(h)
            .iter()
            .copied()
            .filter(|x| !own.contains(x))
            .collect();
        facets.extend((0..k).filter(|i| mask >> i & 1 == 1).map(|i| own[i]));
        let outer = p
            .face_above_with_facets(h, &facets)
            .ok_or_else(|| Error::Structure(format!("no face above {} with the expected facets", p.id(h))))?;
        covers.push((id.clone(), p.id(outer).to_string()));
        // into (h', A) for h ⊂ h' ⊆ f
        for &h2 in p.parents(h) {
            if p.contains(f, h2) {
                covers.push((id.clone(), new_id[&(h2, mask)].clone()));
            }
        }
        // into (h, A minus one facet)
        for i in (0..k).filter(|i| mask >> i & 1 == 1) {
            covers.push((id.clone(), new_id[&(h, mask & !(1 << i))].clone()));
        }
    }

    let poset = FacePoset::new(p.dim(), faces, covers)?;
    let mut values: BTreeMap<String, Gf2Vector> = l
        .values()
        .iter()
        .map(|(&x, v)| (p.id(x).to_string(), v.clone()))
        .collect();
    let mut exceptional = Gf2Vector::zeros(l.rank());
    for &x in &own {
        exceptional.xor_assign(l.value(x));
    }
    let new_facet_id = new_id[&(f, 0)].clone();
    values.insert(new_facet_id.clone(), exceptional);
    let lambda = CharFunction::from_ids(&poset, l.rank(), &values)?;
    let report = validate_lambda(&poset, &lambda);
    if !report.ok() {
        return Err(Error::Validation(
            report.checks.into_iter().flat_map(|c| c.witnesses).collect(),
        ));
    }

    let mut provenance = BTreeMap::new();
    for g in 0..p.len() {
        let ids = if survives(g) {
            vec![p.id(g).to_string()]
        } else {
            subsets_below(k).map(|m| new_id[&(g, m)].clone()).collect()
        };
        provenance.insert(p.id(g).to_string(), ids);
    }
    let new_facet = poset.lookup(&new_facet_id)?;
    Ok(CutResult {
        poset,
        lambda,
        new_facet,
        k,
        provenance,
    })
}

/// Cell counts, by dimension, of the stellar subdivision of the dual complex
/// of `p` at the cell dual to `f`, computed from the dual complex alone.
pub fn stellar_subdivision_counts(p: &FacePoset, f: FaceIx) -> Vec<usize> {
    let dual = dual_complex(p);
    let k = p.codim(f);
    let mut counts = dual.counts();
    for (d, cells) in dual.cells.iter().enumerate() {
        for &g in cells {
            if !p.contains(f, g) {
                continue;
            }
            // σ_g = σ_f * β with |β| = d + 1 - k; it is replaced by the cones
            // v * (α * β) over proper faces α of σ_f
            counts[d] -= 1;
            let link = d + 1 - k;
            for a in 0..k {
                let choose = (0..a).fold(1usize, |acc, i| acc * (k - i) / (i + 1));
                counts[a + link] += choose;
            }
        }
    }
    counts
}

#[derive(Clone, Debug)]
pub struct BlowupCounts {
    pub k: usize,
    /// Vertices of `Q`, of the cut `Q'`, and of the face `f`.
    pub vertices: (usize, usize, usize),
    /// Total Betti numbers of `M_Q`, `M_Q'`, and `M_f`.
    pub betti_sums: (usize, usize, usize),
    pub fixed_point_identity: bool,
    pub dimension_identity: bool,
    /// Hsiang verdicts before and after.
    pub formal: (bool, bool),
}

impl BlowupCounts {
    pub fn ok(&self) -> bool {
        self.fixed_point_identity && self.dimension_identity && self.formal.0 == self.formal.1
    }
}

/// Verifies `#V(Q') = #V(Q) + (k-1)·#V(f)` and
/// `dim H*(M_Q') = dim H*(M_Q) + (k-1)·dim H*(M_f)` with cone models.
pub fn blowup_counts_check(p: &FacePoset, l: &CharFunction, f: FaceIx, cut: &CutResult) -> Result<BlowupCounts> {
    let k = cut.k;
    let vertices = (p.vertices().len(), cut.poset.vertices().len(), p.vertices_of(f).len());
    let before = formality_verdict(p, l, Geometry::Cone)?;
    let after = formality_verdict(&cut.poset, &cut.lambda, Geometry::Cone)?;
    let (fp, fl) = face_restriction(p, l, f)?;
    let face = formality_verdict(&fp, &fl, Geometry::Cone)?;
    let betti_sums = (before.betti.total(), after.betti.total(), face.betti.total());
    Ok(BlowupCounts {
        k,
        vertices,
        betti_sums,
        fixed_point_identity: vertices.1 == vertices.0 + (k - 1) * vertices.2,
        dimension_identity: betti_sums.1 == betti_sums.0 + (k - 1) * betti_sums.2,
        formal: (before.hsiang, after.hsiang),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AcyclicityPreservation {
    pub before: bool,
    pub after: bool,
}

impl AcyclicityPreservation {
    pub fn agree(&self) -> bool {
        self.before == self.after
    }
}

/// Face-acyclicity verdicts for triangulations of `Q` and of the cut `Q'`.
pub fn acyclicity_preservation(
    before: (&FacePoset, &CarrierComplex),
    after: (&FacePoset, &CarrierComplex),
) -> Result<AcyclicityPreservation> {
    Ok(AcyclicityPreservation {
        before: is_face_acyclic(before.1, before.0)?.verdict,
        after: is_face_acyclic(after.1, after.0)?.verdict,
    })
}
