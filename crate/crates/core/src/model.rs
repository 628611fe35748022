//! The canonical model `M_Q(λ) = Q × Z₂ⁿ / ∼` as a GF(2) chain complex.
//!
//! A cell is a pair `(σ, g + G_c)` where `σ` is a simplex of a carrier
//! complex, `c` its carrier and `G_c` the isotropy subgroup of `c`. The face
//! of `(σ, g + G_c)` along a facet `τ ⊂ σ` is `(τ, g + G_{carrier(τ)})`;
//! carrier monotonicity makes this well defined.

use std::collections::HashMap;

use crate::charfn::{face_restriction, isotropy_all, CharFunction, Subgroup};
use crate::complex::{betti_mod2, is_face_acyclic, BettiVector, CarrierComplex, ChainComplex};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::poset::{fh_vectors, order_complex, FaceIx, FacePoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Index into the carrier complex's simplex list.
    pub simplex: usize,
    /// Canonical coset representative.
    pub coset: Gf2Vector,
}

#[derive(Clone, Debug)]
pub struct QuotientComplex {
    n: usize,
    complex: CarrierComplex,
    /// Cells by dimension.
    cells: Vec<Vec<Cell>>,
    chain: ChainComplex,
}

impl QuotientComplex {
    pub fn group_rank(&self) -> usize {
        self.n
    }

    pub fn complex(&self) -> &CarrierComplex {
        &self.complex
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn betti(&self) -> Result<BettiVector> {
        betti_mod2(&self.chain)
    }

    pub fn carrier(&self, cell: &Cell) -> FaceIx {
        self.complex.simplex(cell.simplex).carrier
    }

    /// Whether the model is a closed pseudo-`dim`-manifold: top cells have
    /// dimension `dim` and every codimension-one cell lies in exactly two.
    pub fn is_closed_pseudomanifold(&self, dim: usize) -> bool {
        if self.chain.top_dim() != dim {
            return false;
        }
        if dim == 0 {
            return true;
        }
        let b = self.chain.boundary(dim);
        let mut count = vec![0usize; b.ncols()];
        for row in b.rows() {
            for j in row.ones() {
                count[j] += 1;
            }
        }
        count.into_iter().all(|c| c == 2)
    }
}

/// Builds the quotient complex of `c × Z₂ⁿ`.
pub fn build_quotient(c: &CarrierComplex, p: &FacePoset, l: &CharFunction) -> Result<QuotientComplex> {
    let groups = isotropy_all(p, l);
    let n = l.rank();

    let simplices = c.simplices();
    let counts = c.count_by_dim();
    let mut dim_start = vec![0; counts.len() + 1];
    for d in 0..counts.len() {
        dim_start[d + 1] = dim_start[d] + counts[d];
    }
    // offset of each simplex's first cell within its dimension
    let mut first_cell = vec![0usize; simplices.len()];
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); counts.len()];
    for (i, s) in simplices.iter().enumerate() {
        if s.carrier >= p.len() {
            return Err(Error::Input(format!("simplex {:?} has no valid carrier", s.verts)));
        }
        let g: &Subgroup = &groups[s.carrier];
        let d = s.dim();
        first_cell[i] = cells[d].len();
        for idx in 0..g.coset_count() {
            cells[d].push(Cell {
                simplex: i,
                coset: g.coset_rep(idx),
            });
        }
    }

    let mut boundaries = Vec::with_capacity(counts.len());
    for d in 0..counts.len() {
        let ncols = if d == 0 { 0 } else { cells[d - 1].len() };
        let mut m = Gf2Matrix::zeros(cells[d].len(), ncols);
        if d > 0 {
            for (row, cell) in cells[d].iter().enumerate() {
                let s = &simplices[cell.simplex];
                for face in s.facets() {
                    let t = c
                        .find(&face)
                        .ok_or_else(|| Error::Input(format!("face {face:?} of simplex {:?} is missing", s.verts)))?;
                    let tc = simplices[t].carrier;
                    if !p.contains(s.carrier, tc) {
                        return Err(Error::Input(format!(
                            "carrier of {face:?} ({}) is not contained in the carrier of {:?} ({})",
                            p.id(tc),
                            s.verts,
                            p.id(s.carrier)
                        )));
                    }
                    let col = first_cell[t] + groups[tc].coset_index(&cell.coset);
                    // incidences are counted and reduced mod 2
                    m.flip(row, col);
                }
            }
        }
        boundaries.push(m);
    }
    let chain = ChainComplex::new(boundaries)?;
    chain.check_square_zero()?;
    Ok(QuotientComplex {
        n,
        complex: c.clone(),
        cells,
        chain,
    })
}

/// Fixed points of the full action: the vertices of `Q`.
pub fn fixed_points(p: &FacePoset) -> Vec<FaceIx> {
    p.vertices()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocus {
    /// Maximal faces `f` with `g ∈ G_f`; the locus is their preimage.
    pub faces: Vec<FaceIx>,
    pub discrete: bool,
    pub size: Option<usize>,
}

/// Fixed locus of the involution `g`.
pub fn fixed_locus(p: &FacePoset, l: &CharFunction, g: &Gf2Vector) -> Result<FixedLocus> {
    if g.len() != l.rank() {
        return Err(Error::Input(format!("g has length {}, expected {}", g.len(), l.rank())));
    }
    if g.is_zero() {
        return Err(Error::Precondition("g = 0 is the identity, not an involution".into()));
    }
    let groups = isotropy_all(p, l);
    let fixed: Vec<FaceIx> = (0..p.len()).filter(|&f| groups[f].contains(g)).collect();
    let faces: Vec<FaceIx> = fixed
        .iter()
        .copied()
        .filter(|&f| !fixed.iter().any(|&o| o != f && p.contains(o, f)))
        .collect();
    let discrete = faces.iter().all(|&f| p.face_dim(f) == 0);
    let size = discrete.then_some(faces.len());
    Ok(FixedLocus { faces, discrete, size })
}

/// Number of connected components of the preimage of `f` in the model.
pub fn facial_components(qc: &QuotientComplex, p: &FacePoset, f: FaceIx) -> usize {
    let inside = |cell: &Cell| p.contains(f, qc.carrier(cell));
    let vertices: Vec<usize> = (0..qc.cells(0).len()).filter(|&i| inside(&qc.cells(0)[i])).collect();
    let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    if qc.chain.top_dim() >= 1 {
        let b = qc.chain.boundary(1);
        for (row, cell) in qc.cells(1).iter().enumerate() {
            if !inside(cell) {
                continue;
            }
            let ends: Vec<usize> = b.row(row).ones().map(|j| pos[&j]).collect();
            if let [a, c] = ends[..] {
                let (ra, rc) = (root(&mut parent, a), root(&mut parent, c));
                parent[ra] = rc;
            }
        }
    }
    (0..vertices.len()).filter(|&i| root(&mut parent, i) == i).count()
}

/// Where the geometry of `Q` comes from.
#[derive(Clone, Copy, Debug)]
pub enum Geometry<'a> {
    /// Mode A: the cone over the order complex of the proper faces, built
    /// from the poset alone.
    Cone,
    /// Mode B: a triangulation of the actual `Q`.
    Triangulation(&'a CarrierComplex),
}

impl Geometry<'_> {
    pub fn mode(&self) -> char {
        match self {
            Geometry::Cone => 'A',
            Geometry::Triangulation(_) => 'B',
        }
    }

    pub fn model_name(&self) -> &'static str {
        match self {
            Geometry::Cone => "cone",
            Geometry::Triangulation(_) => "triangulation",
        }
    }

    pub fn complex(&self, p: &FacePoset) -> CarrierComplex {
        match self {
            Geometry::Cone => order_complex(p),
            Geometry::Triangulation(c) => (*c).clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Criterion {
    /// Face-acyclicity computed on a triangulation of `Q`.
    Verified(bool),
    /// Mode A: the cone model is face-acyclic by construction; nothing is
    /// known about any other `Q` with the same face poset.
    Surrogate,
}

impl Criterion {
    pub fn holds(&self) -> bool {
        matches!(self, Criterion::Verified(true) | Criterion::Surrogate)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Criterion::Verified(true) => "true",
            Criterion::Verified(false) => "false",
            Criterion::Surrogate => "surrogate-true",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FormalityVerdict {
    pub betti: BettiVector,
    pub vertices: usize,
    pub h: Vec<i64>,
    /// Total Betti number equals the number of fixed points.
    pub hsiang: bool,
    pub criterion: Criterion,
    /// Betti numbers equal the h-vector coordinatewise.
    pub h_identity: bool,
    pub agree: bool,
    pub mode: char,
    pub warnings: Vec<String>,
}

pub fn formality_verdict(p: &FacePoset, l: &CharFunction, geometry: Geometry<'_>) -> Result<FormalityVerdict> {
    let complex = geometry.complex(p);
    let qc = build_quotient(&complex, p, l)?;
    let betti = qc.betti()?;
    let vertices = fixed_points(p).len();
    let h = fh_vectors(p).h;
    let hsiang = betti.total() == vertices;

    let acyclic = is_face_acyclic(&complex, p)?;
    let criterion = match geometry {
        Geometry::Cone => Criterion::Surrogate,
        Geometry::Triangulation(_) => Criterion::Verified(acyclic.verdict),
    };

    let len = h.len().max(betti.0.len());
    let pad = |v: Vec<i64>| {
        let mut v = v;
        v.resize(len, 0);
        v
    };
    let h_identity = pad(betti.0.iter().map(|&b| b as i64).collect()) == pad(h.clone());
    let agree = hsiang == criterion.holds() && (!hsiang || h_identity);

    let mut warnings = Vec::new();
    if matches!(geometry, Geometry::Cone) {
        warnings.push("mode A: Betti numbers are those of the cone model built from the face poset".into());
        if !acyclic.verdict {
            warnings.push("cone model is not face-acyclic".into());
        }
    }
    if !qc.is_closed_pseudomanifold(p.dim()) {
        warnings.push(format!("model is not a closed pseudo-{}-manifold", p.dim()));
    }
    Ok(FormalityVerdict {
        betti,
        vertices,
        h,
        hsiang,
        criterion,
        h_identity,
        agree,
        mode: geometry.mode(),
        warnings,
    })
}

/// Formality verdicts (mode A) for the restriction to every face.
pub fn facial_formality(p: &FacePoset, l: &CharFunction) -> Result<Vec<(FaceIx, FormalityVerdict)>> {
    (0..p.len())
        .map(|f| {
            let (sub, lf) = face_restriction(p, l, f)?;
            Ok((f, formality_verdict(&sub, &lf, Geometry::Cone)?))
        })
        .collect()
}
