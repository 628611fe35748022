//! Face posets of nice manifolds with corners.
//!
//! Faces are stored in canonical order: by codimension, then by id. Every
//! enumeration in the crate (matrices, reports, coordinates) follows this
//! order. Inclusion is the usual inclusion of faces; `Q` itself is the unique
//! face of codimension zero.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::complex::{CarrierComplex, Simplex};
use crate::error::{Error, Result};

/// Index of a face in the canonical order of its poset.
pub type FaceIx = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    pub codim: usize,
}

#[derive(Clone, Debug)]
pub struct FacePoset {
    dim: usize,
    faces: Vec<Face>,
    index: HashMap<String, FaceIx>,
    covers: Vec<(FaceIx, FaceIx)>,
    parents: Vec<Vec<FaceIx>>,
    children: Vec<Vec<FaceIx>>,
    /// `above[f]`: all faces containing `f`, including `f`.
    above: Vec<BTreeSet<FaceIx>>,
    /// Facets containing each face.
    facets_of: Vec<Vec<FaceIx>>,
}

impl FacePoset {
    /// Builds a poset from faces `(id, codim)` and cover pairs `(child, parent)`.
    ///
    /// Only structural problems are errors here: duplicate or unknown ids,
    /// codimensions outside `[0, dim]`, cover pairs whose codimensions do not
    /// differ by one, and a missing or repeated top face. Everything else is
    /// reported by [`validate`].
    pub fn new(dim: usize, faces: Vec<(String, usize)>, covers: Vec<(String, String)>) -> Result<Self> {
        let mut faces: Vec<Face> = faces.into_iter().map(|(id, codim)| Face { id, codim }).collect();
        for f in &faces {
            if f.codim > dim {
                return Err(Error::Structure(format!(
                    "face {} has codimension {} > dimension {dim}",
                    f.id, f.codim
                )));
            }
        }
        faces.sort_by(|a, b| (a.codim, &a.id).cmp(&(b.codim, &b.id)));
        let mut index = HashMap::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            if index.insert(f.id.clone(), i).is_some() {
                return Err(Error::Structure(format!("duplicate face id {}", f.id)));
            }
        }
        let tops: Vec<&Face> = faces.iter().filter(|f| f.codim == 0).collect();
        if tops.len() != 1 {
            return Err(Error::Structure(format!(
                "expected exactly one face of codimension 0, found {}",
                tops.len()
            )));
        }

        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Structure(format!("unknown face id {id}")))
        };
        let mut pairs = BTreeSet::new();
        for (child, parent) in &covers {
            let (c, p) = (lookup(child)?, lookup(parent)?);
            if faces[c].codim != faces[p].codim + 1 {
                return Err(Error::Structure(format!(
                    "cover {child} < {parent} jumps codimension {} -> {}",
                    faces[c].codim, faces[p].codim
                )));
            }
            pairs.insert((c, p));
        }
        // facets always lie in Q; listing these covers is optional
        for (f, face) in faces.iter().enumerate() {
            if face.codim == 1 {
                pairs.insert((f, 0));
            }
        }
        let covers: Vec<(FaceIx, FaceIx)> = pairs.into_iter().collect();
        Ok(Self::from_parts(dim, faces, index, covers))
    }

    fn from_parts(dim: usize, faces: Vec<Face>, index: HashMap<String, FaceIx>, covers: Vec<(FaceIx, FaceIx)>) -> Self {
        let n = faces.len();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for &(c, p) in &covers {
            parents[c].push(p);
            children[p].push(c);
        }
        // faces are sorted by codimension, so parents are always processed first
        let mut above: Vec<BTreeSet<FaceIx>> = vec![BTreeSet::new(); n];
        for f in 0..n {
            let mut set = BTreeSet::from([f]);
            for &p in &parents[f] {
                set.extend(above[p].iter().copied());
            }
            above[f] = set;
        }
        let facets_of = above
            .iter()
            .map(|set| set.iter().copied().filter(|&g| faces[g].codim == 1).collect())
            .collect();
        Self {
            dim,
            faces,
            index,
            covers,
            parents,
            children,
            above,
            facets_of,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceIx) -> &Face {
        &self.faces[f]
    }

    pub fn id(&self, f: FaceIx) -> &str {
        &self.faces[f].id
    }

    pub fn codim(&self, f: FaceIx) -> usize {
        self.faces[f].codim
    }

    /// Dimension of the face as a manifold with corners.
    pub fn face_dim(&self, f: FaceIx) -> usize {
        self.dim - self.faces[f].codim
    }

    pub fn find(&self, id: &str) -> Option<FaceIx> {
        self.index.get(id).copied()
    }

    pub fn lookup(&self, id: &str) -> Result<FaceIx> {
        self.find(id)
            .ok_or_else(|| Error::Input(format!("unknown face id {id}")))
    }

    pub fn covers(&self) -> &[(FaceIx, FaceIx)] {
        &self.covers
    }

    pub fn parents(&self, f: FaceIx) -> &[FaceIx] {
        &self.parents[f]
    }

    pub fn children(&self, f: FaceIx) -> &[FaceIx] {
        &self.children[f]
    }

    /// The face `Q` itself.
    pub fn top(&self) -> FaceIx {
        0
    }

    pub fn is_top(&self, f: FaceIx) -> bool {
        self.faces[f].codim == 0
    }

    /// Whether `small ⊆ big`.
    pub fn contains(&self, big: FaceIx, small: FaceIx) -> bool {
        self.above[small].contains(&big)
    }

    /// Faces containing `f`, including `f`.
    pub fn above(&self, f: FaceIx) -> &BTreeSet<FaceIx> {
        &self.above[f]
    }

    /// Faces contained in `f`, including `f`, in canonical order.
    pub fn below(&self, f: FaceIx) -> Vec<FaceIx> {
        (0..self.len()).filter(|&g| self.contains(f, g)).collect()
    }

    pub fn facets_containing(&self, f: FaceIx) -> &[FaceIx] {
        &self.facets_of[f]
    }

    pub fn faces_of_codim(&self, k: usize) -> impl Iterator<Item = FaceIx> + '_ {
        (0..self.len()).filter(move |&f| self.faces[f].codim == k)
    }

    pub fn facets(&self) -> Vec<FaceIx> {
        self.faces_of_codim(1).collect()
    }

    /// Codimension-`n` faces, i.e. the fixed points of the model.
    pub fn vertices(&self) -> Vec<FaceIx> {
        self.faces_of_codim(self.dim).collect()
    }

    pub fn vertices_of(&self, f: FaceIx) -> Vec<FaceIx> {
        self.faces_of_codim(self.dim).filter(|&v| self.contains(f, v)).collect()
    }

    /// Maximal faces contained in both `f` and `g`: the components of
    /// `f ∩ g`. Empty when the faces are disjoint.
    pub fn meet(&self, f: FaceIx, g: FaceIx) -> Vec<FaceIx> {
        let common: Vec<FaceIx> = (0..self.len())
            .filter(|&h| self.contains(f, h) && self.contains(g, h))
            .collect();
        common
            .iter()
            .copied()
            .filter(|&h| !common.iter().any(|&o| o != h && self.contains(o, h)))
            .collect()
    }

    /// Minimal faces containing both `f` and `g`.
    pub fn joins(&self, f: FaceIx, g: FaceIx) -> Vec<FaceIx> {
        let common: Vec<FaceIx> = self.above[f].intersection(&self.above[g]).copied().collect();
        common
            .iter()
            .copied()
            .filter(|&h| !common.iter().any(|&o| o != h && self.contains(h, o)))
            .collect()
    }

    /// The face containing `f` whose facet set is `facets`, if any.
    pub fn face_above_with_facets(&self, f: FaceIx, facets: &BTreeSet<FaceIx>) -> Option<FaceIx> {
        self.above[f]
            .iter()
            .copied()
            .find(|&g| self.facets_of[g].len() == facets.len() && self.facets_of[g].iter().all(|x| facets.contains(x)))
    }
}

/// Outcome of one named check, with witnesses for failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(name: &'static str, witnesses: Vec<String>) -> Self {
        Self {
            name,
            ok: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.ok)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.ok {
                out.push_str(&format!("check {}=ok\n", c.name));
            } else {
                out.push_str(&format!("check {}=fail [{}]\n", c.name, c.witnesses.join("; ")));
            }
        }
        out
    }
}

pub const CHECK_TOP: &str = "top";
pub const CHECK_SIMPLICIAL: &str = "simplicial";
pub const CHECK_NICE: &str = "nice";
pub const CHECK_VERTEX: &str = "vertex_in_every_face";
pub const CHECK_SKELETON: &str = "skeleton_connected";

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Runs every structural check on the poset.
pub fn validate(p: &FacePoset) -> ValidationReport {
    let top = p.top();
    let top_check = (0..p.len())
        .filter(|&f| !p.contains(top, f))
        .map(|f| format!("{} not below {}", p.id(f), p.id(top)))
        .collect();

    let mut simplicial = Vec::new();
    for f in 0..p.len() {
        let k = p.codim(f);
        for j in 0..=k {
            let count = p.above(f).iter().filter(|&&g| p.codim(g) == j).count() as u64;
            if count != binomial(k, j) {
                simplicial.push(format!(
                    "{} lies in {count} faces of codimension {j}, expected {}",
                    p.id(f),
                    binomial(k, j)
                ));
            }
        }
        // the interval above f must be the boolean lattice on its facets
        let mut seen: HashMap<Vec<FaceIx>, FaceIx> = HashMap::new();
        for &g in p.above(f) {
            let fs = p.facets_containing(g).to_vec();
            if fs.len() != p.codim(g) {
                continue; // reported by the niceness check
            }
            if let Some(&other) = seen.get(&fs) {
                simplicial.push(format!(
                    "{} and {} above {} have the same facets",
                    p.id(other),
                    p.id(g),
                    p.id(f)
                ));
            }
            seen.insert(fs, g);
        }
    }

    let nice = (0..p.len())
        .filter(|&f| p.facets_containing(f).len() != p.codim(f))
        .map(|f| {
            format!(
                "{} (codim {}) lies in {} facets",
                p.id(f),
                p.codim(f),
                p.facets_containing(f).len()
            )
        })
        .collect();

    let vertex = (0..p.len())
        .filter(|&f| p.vertices_of(f).is_empty())
        .map(|f| p.id(f).to_string())
        .collect();

    let mut skeleton = Vec::new();
    for f in 0..p.len() {
        if p.face_dim(f) == 0 {
            continue;
        }
        let verts = p.vertices_of(f);
        if verts.is_empty() {
            continue; // reported by the vertex check
        }
        if !skeleton_connected(p, f, &verts) {
            skeleton.push(p.id(f).to_string());
        }
    }

    ValidationReport {
        checks: vec![
            Check::new(CHECK_TOP, top_check),
            Check::new(CHECK_SIMPLICIAL, simplicial),
            Check::new(CHECK_NICE, nice),
            Check::new(CHECK_VERTEX, vertex),
            Check::new(CHECK_SKELETON, skeleton),
        ],
    }
}

fn skeleton_connected(p: &FacePoset, f: FaceIx, verts: &[FaceIx]) -> bool {
    let edges: Vec<Vec<FaceIx>> = p
        .faces_of_codim(p.dim().saturating_sub(1))
        .filter(|&e| p.dim() >= 1 && p.contains(f, e))
        .map(|e| p.vertices_of(e))
        .collect();
    let pos: HashMap<FaceIx, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); verts.len()];
    for ends in &edges {
        for a in ends {
            for b in ends {
                if a != b {
                    adj[pos[a]].push(pos[b]);
                }
            }
        }
    }
    connected(&adj)
}

pub(crate) fn connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    /// `f[i]` = number of faces of codimension `i + 1`.
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

/// f- and h-vectors, with `h` read off from
/// `Σ h_i t^(n-i) = (t-1)^n + f_0 (t-1)^(n-1) + … + f_(n-1)`.
pub fn fh_vectors(p: &FacePoset) -> HVector {
    let n = p.dim();
    let f: Vec<u64> = (1..=n).map(|k| p.faces_of_codim(k).count() as u64).collect();
    // coeffs[d] = coefficient of t^d
    let mut coeffs = vec![0i64; n + 1];
    for i in 0..=n {
        // term f_{i-1} (t-1)^(n-i), with f_{-1} = 1
        let weight = if i == 0 { 1 } else { f[i - 1] as i64 };
        let power = n - i;
        for (d, c) in coeffs.iter_mut().enumerate().take(power + 1) {
            let sign = if (power - d).is_multiple_of(2) { 1 } else { -1 };
            *c += weight * sign * binomial(power, d) as i64;
        }
    }
    let h = (0..=n).map(|i| coeffs[n - i]).collect();
    HVector { f, h }
}

#[derive(Clone, Debug)]
pub struct SkeletonEdge {
    pub face: FaceIx,
    pub ends: (FaceIx, FaceIx),
}

#[derive(Clone, Debug)]
pub struct OneSkeleton {
    pub vertices: Vec<FaceIx>,
    pub edges: Vec<SkeletonEdge>,
    pub n_valent: bool,
    pub connected: bool,
    /// Codimension-(n-1) faces that do not have exactly two vertices.
    pub bad_edges: Vec<String>,
}

impl OneSkeleton {
    pub fn is_gkm_ready(&self) -> bool {
        self.n_valent && self.connected && self.bad_edges.is_empty() && !self.vertices.is_empty()
    }
}

pub fn one_skeleton(p: &FacePoset) -> OneSkeleton {
    let n = p.dim();
    let vertices = p.vertices();
    let mut edges = Vec::new();
    let mut bad_edges = Vec::new();
    if n >= 1 {
        for e in p.faces_of_codim(n - 1) {
            let ends = p.vertices_of(e);
            if ends.len() == 2 {
                edges.push(SkeletonEdge {
                    face: e,
                    ends: (ends[0], ends[1]),
                });
            } else {
                bad_edges.push(format!("{} has {} vertices", p.id(e), ends.len()));
            }
        }
    }
    let pos: HashMap<FaceIx, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); vertices.len()];
    for e in &edges {
        adj[pos[&e.ends.0]].push(pos[&e.ends.1]);
        adj[pos[&e.ends.1]].push(pos[&e.ends.0]);
    }
    let n_valent = !vertices.is_empty() && adj.iter().all(|a| a.len() == n);
    let connected = !vertices.is_empty() && connected(&adj);
    OneSkeleton {
        vertices,
        edges,
        n_valent,
        connected,
        bad_edges,
    }
}

/// The simplicial cell complex dual to `Q`: its `k`-cells are the faces of
/// codimension `k + 1`.
#[derive(Clone, Debug)]
pub struct DualComplex {
    /// `cells[k]` lists the faces dual to `k`-cells.
    pub cells: Vec<Vec<FaceIx>>,
    boundaries: Vec<Vec<Vec<usize>>>,
}

impl DualComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Indices (into `cells[k-1]`) of the boundary cells of `cells[k][i]`.
    pub fn boundary(&self, k: usize, i: usize) -> &[usize] {
        &self.boundaries[k][i]
    }

    /// Facets of `Q` spanning a cell: its vertices in the dual complex.
    pub fn cell_vertices(&self, p: &FacePoset, k: usize, i: usize) -> Vec<FaceIx> {
        p.facets_containing(self.cells[k][i]).to_vec()
    }

    /// Number of `(k+1)`-cells having `cells[k][i]` in their boundary.
    pub fn coboundary_count(&self, k: usize, i: usize) -> usize {
        self.boundaries
            .get(k + 1)
            .map_or(0, |b| b.iter().filter(|bd| bd.contains(&i)).count())
    }
}

pub fn dual_complex(p: &FacePoset) -> DualComplex {
    let n = p.dim();
    let cells: Vec<Vec<FaceIx>> = (1..=n).map(|c| p.faces_of_codim(c).collect()).collect();
    let mut boundaries = Vec::with_capacity(n);
    for k in 0..n {
        let bds = cells[k]
            .iter()
            .map(|&f| {
                if k == 0 {
                    return Vec::new();
                }
                let mut b: Vec<usize> = p
                    .parents(f)
                    .iter()
                    .filter_map(|g| cells[k - 1].iter().position(|x| x == g))
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
        boundaries.push(bds);
    }
    DualComplex { cells, boundaries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GorensteinChecks {
    pub pseudo_manifold: bool,
    pub euler_ok: bool,
}

/// Pseudo-manifold and Euler characteristic checks on the dual complex.
pub fn gorenstein_quick_checks(p: &FacePoset) -> GorensteinChecks {
    let n = p.dim();
    let d = dual_complex(p);
    let pseudo_manifold = match n {
        0 => true,
        // the empty (-1)-cell lies in every 0-cell
        1 => d.cells[0].len() == 2,
        _ => (0..d.cells[n - 2].len()).all(|i| d.coboundary_count(n - 2, i) == 2),
    };
    let chi: i64 = d
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();
    let sphere = if n == 0 {
        0
    } else if (n - 1).is_multiple_of(2) {
        2
    } else {
        0
    };
    GorensteinChecks {
        pseudo_manifold,
        euler_ok: chi == sphere,
    }
}

/// The cone over the order complex of the proper faces of `Q`, with each
/// simplex carried by the face containing its relative interior: a chain
/// `f_k ⊊ … ⊊ f_0` is carried by `f_0`, and anything containing the apex by `Q`.
///
/// Points are the proper faces in canonical order, followed by the apex.
pub fn order_complex(p: &FacePoset) -> CarrierComplex {
    let proper: Vec<FaceIx> = (0..p.len()).filter(|&f| !p.is_top(f)).collect();
    let point_of: HashMap<FaceIx, usize> = proper.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let apex = proper.len();

    // chains listed from the largest face down
    let mut chains: Vec<Vec<FaceIx>> = Vec::new();
    fn extend(p: &FacePoset, chain: &mut Vec<FaceIx>, out: &mut Vec<Vec<FaceIx>>) {
        out.push(chain.clone());
        let last = *chain.last().expect("chain is nonempty");
        for g in 0..p.len() {
            if g != last && p.contains(last, g) {
                chain.push(g);
                extend(p, chain, out);
                chain.pop();
            }
        }
    }
    for &f in &proper {
        extend(p, &mut vec![f], &mut chains);
    }

    let mut simplices = vec![Simplex::new(vec![apex], p.top())];
    for chain in chains {
        let carrier = chain[0];
        let mut verts: Vec<usize> = chain.iter().map(|f| point_of[f]).collect();
        verts.sort_unstable();
        simplices.push(Simplex::new(verts.clone(), carrier));
        verts.push(apex);
        simplices.push(Simplex::new(verts, p.top()));
    }
    CarrierComplex::new(apex + 1, simplices).expect("chains are distinct")
}
