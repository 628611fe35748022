//! Carrier-labelled simplicial complexes and mod-2 homology.
//!
//! A [`CarrierComplex`] triangulates an orbit space `Q` compatibly with its
//! face stratification: every simplex records the face of `Q` that contains
//! its relative interior. Homology is over GF(2) only, so no orientations are
//! stored and boundary entries are incidence parities.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::poset::{Check, FaceIx, FacePoset, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    /// Sorted vertex indices.
    pub verts: Vec<usize>,
    pub carrier: FaceIx,
}

impl Simplex {
    pub fn new(mut verts: Vec<usize>, carrier: FaceIx) -> Self {
        verts.sort_unstable();
        Self { verts, carrier }
    }

    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    /// Codimension-one faces, the `i`-th omitting vertex `i`.
    pub fn facets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.verts.len()).filter(|_| self.verts.len() > 1).map(move |i| {
            let mut v = self.verts.clone();
            v.remove(i);
            v
        })
    }
}

#[derive(Clone, Debug)]
pub struct CarrierComplex {
    points: usize,
    simplices: Vec<Simplex>,
    index: HashMap<Vec<usize>, usize>,
}

impl CarrierComplex {
    /// Rejects empty or repeated simplices and out-of-range points. Closure
    /// and carrier consistency are checked by [`validate_carriers`].
    pub fn new(points: usize, mut simplices: Vec<Simplex>) -> Result<Self> {
        simplices.sort_by(|a, b| (a.verts.len(), &a.verts).cmp(&(b.verts.len(), &b.verts)));
        let mut index = HashMap::with_capacity(simplices.len());
        for (i, s) in simplices.iter().enumerate() {
            if s.verts.is_empty() {
                return Err(Error::Structure("empty simplex".into()));
            }
            if s.verts.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Structure(format!("repeated vertex in simplex {:?}", s.verts)));
            }
            if let Some(&v) = s.verts.iter().find(|&&v| v >= points) {
                return Err(Error::Structure(format!(
                    "simplex {:?} uses point {v} >= {points}",
                    s.verts
                )));
            }
            if index.insert(s.verts.clone(), i).is_some() {
                return Err(Error::Structure(format!("simplex {:?} listed twice", s.verts)));
            }
        }
        Ok(Self {
            points,
            simplices,
            index,
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Simplices sorted by dimension, then vertex list.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    pub fn find(&self, verts: &[usize]) -> Option<usize> {
        self.index.get(verts).copied()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dim)
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    pub fn euler(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Simplicial chain complex over GF(2). Fails if a facet of some simplex
    /// is missing.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let counts = self.count_by_dim();
        // position of each simplex within its dimension
        let mut offset = vec![0; counts.len() + 1];
        for d in 0..counts.len() {
            offset[d + 1] = offset[d] + counts[d];
        }
        let mut boundaries = Vec::with_capacity(counts.len());
        for d in 0..counts.len() {
            let ncols = if d == 0 { 0 } else { counts[d - 1] };
            let mut m = Gf2Matrix::zeros(counts[d], ncols);
            if d > 0 {
                for (row, s) in self.simplices[offset[d]..offset[d + 1]].iter().enumerate() {
                    for face in s.facets() {
                        let j = self.find(&face).ok_or_else(|| {
                            Error::Structure(format!("face {face:?} of simplex {:?} is missing", s.verts))
                        })?;
                        m.flip(row, j - offset[d - 1]);
                    }
                }
            }
            boundaries.push(m);
        }
        ChainComplex::new(boundaries)
    }

    /// Keeps the simplices satisfying `keep`; point numbering is unchanged.
    pub fn filter(&self, keep: impl Fn(&Simplex) -> bool) -> CarrierComplex {
        let simplices = self.simplices.iter().filter(|s| keep(s)).cloned().collect();
        CarrierComplex::new(self.points, simplices).expect("subset of a valid complex")
    }
}

/// A chain complex over GF(2). `boundary(d)` has one row per `d`-cell,
/// giving its boundary in terms of `(d-1)`-cells.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    boundaries: Vec<Gf2Matrix>,
}

impl ChainComplex {
    pub fn new(boundaries: Vec<Gf2Matrix>) -> Result<Self> {
        for d in 1..boundaries.len() {
            if boundaries[d].ncols() != boundaries[d - 1].nrows() {
                return Err(Error::Structure(format!(
                    "boundary in degree {d} has {} columns but there are {} cells in degree {}",
                    boundaries[d].ncols(),
                    boundaries[d - 1].nrows(),
                    d - 1
                )));
            }
        }
        Ok(Self { boundaries })
    }

    pub fn counts(&self) -> Vec<usize> {
        self.boundaries.iter().map(Gf2Matrix::nrows).collect()
    }

    pub fn boundary(&self, d: usize) -> &Gf2Matrix {
        &self.boundaries[d]
    }

    pub fn top_dim(&self) -> usize {
        self.boundaries.len().saturating_sub(1)
    }

    /// Verifies `∂ ∘ ∂ = 0` in every degree.
    pub fn check_square_zero(&self) -> Result<()> {
        for d in 2..self.boundaries.len() {
            if !self.boundaries[d].mul(&self.boundaries[d - 1]).is_zero() {
                return Err(Error::BoundarySquare(d));
            }
        }
        Ok(())
    }

    pub fn euler(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// Unreduced mod-2 Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Reduced Betti numbers; the empty space has `b̃_{-1} = 1` and is
    /// reported as not acyclic.
    pub fn reduced(&self) -> Vec<i64> {
        let mut r: Vec<i64> = self.0.iter().map(|&b| b as i64).collect();
        match r.first_mut() {
            Some(b0) => *b0 -= 1,
            None => r.push(-1),
        }
        r
    }

    pub fn is_acyclic(&self) -> bool {
        self.reduced().iter().all(|&b| b == 0)
    }
}

impl std::fmt::Display for BettiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn betti_mod2(c: &ChainComplex) -> Result<BettiVector> {
    c.check_square_zero()?;
    let counts = c.counts();
    let ranks: Vec<usize> = (0..counts.len()).map(|d| c.boundary(d).rank()).collect();
    let betti = (0..counts.len())
        .map(|d| counts[d] - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
        .collect();
    Ok(BettiVector(betti))
}

/// The simplices carried by faces contained in `f`: the triangulation of `f`.
pub fn face_subcomplex(c: &CarrierComplex, p: &FacePoset, f: FaceIx) -> CarrierComplex {
    c.filter(|s| p.contains(f, s.carrier))
}

#[derive(Clone, Debug)]
pub struct FaceHomology {
    pub face: FaceIx,
    pub betti: BettiVector,
    pub reduced: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct AcyclicityReport {
    pub faces: Vec<FaceHomology>,
    pub verdict: bool,
}

impl AcyclicityReport {
    pub fn failures(&self) -> impl Iterator<Item = &FaceHomology> {
        self.faces.iter().filter(|f| f.reduced.iter().any(|&b| b != 0))
    }
}

/// Reduced mod-2 homology of every face, `Q` included.
pub fn is_face_acyclic(c: &CarrierComplex, p: &FacePoset) -> Result<AcyclicityReport> {
    let mut faces = Vec::with_capacity(p.len());
    for f in 0..p.len() {
        let betti = betti_mod2(&face_subcomplex(c, p, f).chain_complex()?)?;
        let reduced = betti.reduced();
        faces.push(FaceHomology {
            face: f,
            betti,
            reduced,
        });
    }
    let verdict = faces.iter().all(|f| f.betti.is_acyclic());
    Ok(AcyclicityReport { faces, verdict })
}

pub const CHECK_CARRIER_RANGE: &str = "carrier_ids";
pub const CHECK_CLOSED: &str = "closed_under_faces";
pub const CHECK_MONOTONE: &str = "carrier_monotone";
pub const CHECK_STRATA: &str = "face_pseudomanifolds";

/// Closure, carrier monotonicity, and for every face `f` of dimension `d`:
/// the simplices carried inside `f` form a pure pseudo-`d`-manifold whose
/// boundary is exactly the part carried by proper faces of `f`.
pub fn validate_carriers(c: &CarrierComplex, p: &FacePoset) -> ValidationReport {
    let range: Vec<String> = c
        .simplices()
        .iter()
        .filter(|s| s.carrier >= p.len())
        .map(|s| format!("{:?} has carrier index {}", s.verts, s.carrier))
        .collect();
    if !range.is_empty() {
        return ValidationReport {
            checks: vec![Check::new(CHECK_CARRIER_RANGE, range)],
        };
    }

    let mut closed = Vec::new();
    let mut monotone = Vec::new();
    for s in c.simplices() {
        for face in s.facets() {
            match c.find(&face) {
                None => closed.push(format!("{face:?} missing from {:?}", s.verts)),
                Some(t) => {
                    let carrier = c.simplex(t).carrier;
                    if !p.contains(s.carrier, carrier) {
                        monotone.push(format!(
                            "{face:?} carried by {} inside {:?} carried by {}",
                            p.id(carrier),
                            s.verts,
                            p.id(s.carrier)
                        ));
                    }
                }
            }
        }
    }

    let mut strata = Vec::new();
    if closed.is_empty() && monotone.is_empty() {
        for f in 0..p.len() {
            strata.extend(stratum_problems(c, p, f));
        }
    }

    ValidationReport {
        checks: vec![
            Check::new(CHECK_CARRIER_RANGE, Vec::new()),
            Check::new(CHECK_CLOSED, closed),
            Check::new(CHECK_MONOTONE, monotone),
            Check::new(CHECK_STRATA, strata),
        ],
    }
}

fn stratum_problems(c: &CarrierComplex, p: &FacePoset, f: FaceIx) -> Vec<String> {
    let d = p.face_dim(f);
    let sub: Vec<&Simplex> = c.simplices().iter().filter(|s| p.contains(f, s.carrier)).collect();
    let id = p.id(f);
    if sub.is_empty() {
        return vec![format!("{id} has no simplices")];
    }
    let top = sub.iter().map(|s| s.dim()).max().unwrap_or(0);
    if top != d {
        return vec![format!(
            "{id} has dimension {d} but carries simplices up to dimension {top}"
        )];
    }
    if d == 0 {
        return if sub.len() == 1 {
            Vec::new()
        } else {
            vec![format!("vertex {id} is triangulated by {} points", sub.len())]
        };
    }
    let mut out = Vec::new();
    let maximal: Vec<&Simplex> = sub.iter().copied().filter(|s| s.dim() == d).collect();
    for s in &sub {
        if s.dim() < d && !maximal.iter().any(|m| s.verts.iter().all(|v| m.verts.contains(v))) {
            out.push(format!("{:?} in {id} is not a face of a top simplex", s.verts));
        }
    }
    let mut cofaces: HashMap<&[usize], usize> = HashMap::new();
    for m in &maximal {
        for face in m.facets() {
            if let Some(t) = c.find(&face) {
                *cofaces.entry(c.simplex(t).verts.as_slice()).or_default() += 1;
            }
        }
    }
    for s in sub.iter().filter(|s| s.dim() + 1 == d) {
        let count = cofaces.get(s.verts.as_slice()).copied().unwrap_or(0);
        let expected = if s.carrier == f { 2 } else { 1 };
        if count != expected {
            out.push(format!(
                "{:?} (carried by {}) lies in {count} top simplices of {id}, expected {expected}",
                s.verts,
                p.id(s.carrier)
            ));
        }
    }
    out
}
