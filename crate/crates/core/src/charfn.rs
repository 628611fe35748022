//! Characteristic functions, isotropy subgroups and axial functions.
//!
//! Elements of `Z₂ⁿ` and functionals in `Hom(Z₂ⁿ, Z₂)` are both plain
//! length-`n` vectors, paired by the dot product: `α·λ(F) = 0` says that the
//! functional `α` vanishes on `λ(F)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gf2::{reduce_by, Gf2Matrix, Gf2Vector};
use crate::poset::{one_skeleton, Check, FaceIx, FacePoset, ValidationReport};

/// `λ`: a nonzero vector of `Z₂ⁿ` on every facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharFunction {
    n: usize,
    values: BTreeMap<FaceIx, Gf2Vector>,
}

impl CharFunction {
    /// Every facet of `p` must receive exactly one vector of length `n`.
    /// Independence is checked separately by [`validate_lambda`].
    pub fn new(p: &FacePoset, n: usize, values: BTreeMap<FaceIx, Gf2Vector>) -> Result<Self> {
        for (&f, v) in &values {
            if p.codim(f) != 1 {
                return Err(Error::Input(format!("λ assigned to non-facet {}", p.id(f))));
            }
            if v.len() != n {
                return Err(Error::Input(format!(
                    "λ({}) has length {}, expected {n}",
                    p.id(f),
                    v.len()
                )));
            }
        }
        if let Some(missing) = p.facets().into_iter().find(|f| !values.contains_key(f)) {
            return Err(Error::Input(format!("facet {} missing from λ", p.id(missing))));
        }
        Ok(Self { n, values })
    }

    pub fn from_ids(p: &FacePoset, n: usize, values: &BTreeMap<String, Gf2Vector>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (id, v) in values {
            let f = p
                .find(id)
                .ok_or_else(|| Error::Input(format!("λ names unknown face {id}")))?;
            map.insert(f, v.clone());
        }
        Self::new(p, n, map)
    }

    /// The rank `n` of the acting group `Z₂ⁿ`.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn value(&self, facet: FaceIx) -> &Gf2Vector {
        &self.values[&facet]
    }

    pub fn values(&self) -> &BTreeMap<FaceIx, Gf2Vector> {
        &self.values
    }

    /// The distinct vectors in the image of `λ`.
    pub fn image(&self) -> BTreeSet<Gf2Vector> {
        self.values.values().cloned().collect()
    }
}

/// A subgroup of `Z₂ⁿ` given by generators, kept in reduced row-echelon form
/// so that membership and coset representatives are canonical.
#[derive(Clone, Debug)]
pub struct Subgroup {
    n: usize,
    generators: Vec<Gf2Vector>,
    rref: Gf2Matrix,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Subgroup {
    pub fn new(n: usize, generators: Vec<Gf2Vector>) -> Self {
        let (rref, pivots) = Gf2Matrix::from_rows(n, generators.clone()).rref();
        let free = (0..n).filter(|c| !pivots.contains(c)).collect();
        Self {
            n,
            generators,
            rref,
            pivots,
            free,
        }
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(n, Vec::new())
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Gf2Vector] {
        &self.generators
    }

    /// Independent basis (rows of the reduced echelon form).
    pub fn basis(&self) -> &[Gf2Vector] {
        self.rref.rows()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, g: &Gf2Vector) -> bool {
        reduce_by(&self.rref, &self.pivots, g).is_zero()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    /// Minimal representative of `g + G`: `g` with every pivot column cleared.
    pub fn canonical(&self, g: &Gf2Vector) -> Gf2Vector {
        reduce_by(&self.rref, &self.pivots, g)
    }

    /// Columns outside the pivot set; coordinates on `Z₂ⁿ / G`.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// The projection `Z₂ⁿ → Z₂^(n-rank)` with kernel `G`.
    pub fn project(&self, g: &Gf2Vector) -> Gf2Vector {
        self.canonical(g).select(&self.free)
    }

    pub fn coset_count(&self) -> usize {
        1 << self.free.len()
    }

    /// Dense index of the coset `g + G` in `0..coset_count()`.
    pub fn coset_index(&self, g: &Gf2Vector) -> usize {
        let c = self.canonical(g);
        self.free
            .iter()
            .enumerate()
            .filter(|(_, &col)| c.get(col))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Canonical representative of the coset with the given index.
    pub fn coset_rep(&self, index: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.n);
        for (i, &col) in self.free.iter().enumerate() {
            if index >> i & 1 == 1 {
                v.set(col, true);
            }
        }
        v
    }
}

pub const CHECK_INDEPENDENCE: &str = "lambda_independent";

/// The independence condition: at every face, the values on the facets
/// containing it are linearly independent.
pub fn validate_lambda(p: &FacePoset, l: &CharFunction) -> ValidationReport {
    let mut witnesses = Vec::new();
    for f in 0..p.len() {
        let facets = p.facets_containing(f);
        let rows: Vec<Gf2Vector> = facets.iter().map(|&x| l.value(x).clone()).collect();
        if Gf2Matrix::from_rows(l.rank(), rows).rank() != facets.len() {
            let names: Vec<String> = facets.iter().map(|&x| format!("{}↦{}", p.id(x), l.value(x))).collect();
            witnesses.push(format!("{} {{{}}}", p.id(f), names.join(", ")));
        }
    }
    ValidationReport {
        checks: vec![Check::new(CHECK_INDEPENDENCE, witnesses)],
    }
}

/// `G_f`, generated by `λ(F)` over the facets `F ⊇ f`.
pub fn isotropy(p: &FacePoset, l: &CharFunction, f: FaceIx) -> Subgroup {
    let gens = p.facets_containing(f).iter().map(|&x| l.value(x).clone()).collect();
    Subgroup::new(l.rank(), gens)
}

/// Isotropy subgroups of all faces, in canonical face order.
pub fn isotropy_all(p: &FacePoset, l: &CharFunction) -> Vec<Subgroup> {
    (0..p.len()).map(|f| isotropy(p, l, f)).collect()
}

/// The face `f` as an orbit space in its own right: the faces contained in
/// `f` regraded so that `f` has codimension zero, and `λ` pushed through the
/// projection `Z₂ⁿ → Z₂ⁿ / G_f`.
pub fn face_restriction(p: &FacePoset, l: &CharFunction, f: FaceIx) -> Result<(FacePoset, CharFunction)> {
    let k = p.codim(f);
    let inside = p.below(f);
    let faces = inside.iter().map(|&h| (p.id(h).to_string(), p.codim(h) - k)).collect();
    let covers = p
        .covers()
        .iter()
        .filter(|(c, par)| p.contains(f, *c) && p.contains(f, *par))
        .map(|&(c, par)| (p.id(c).to_string(), p.id(par).to_string()))
        .collect();
    let sub = FacePoset::new(p.dim() - k, faces, covers)?;
    let g = isotropy(p, l, f);
    let own: BTreeSet<FaceIx> = p.facets_containing(f).iter().copied().collect();
    let mut values = BTreeMap::new();
    for &h in &inside {
        if p.codim(h) != k + 1 {
            continue;
        }
        let outer: Vec<FaceIx> = p
            .facets_containing(h)
            .iter()
            .copied()
            .filter(|x| !own.contains(x))
            .collect();
        let [facet] = outer[..] else {
            return Err(Error::Structure(format!(
                "{} is not contained in exactly one facet transverse to {}",
                p.id(h),
                p.id(f)
            )));
        };
        values.insert(p.id(h).to_string(), g.project(l.value(facet)));
    }
    let lf = CharFunction::from_ids(&sub, p.dim() - k, &values)?;
    Ok((sub, lf))
}

#[derive(Clone, Debug)]
pub struct GkmEdge {
    /// The codimension-(n-1) face of `Q` underlying the edge.
    pub face: FaceIx,
    /// Endpoints as positions in [`GkmGraph::vertices`].
    pub ends: (usize, usize),
    pub axial: Gf2Vector,
}

/// The 1-skeleton of `Q` with its axial function.
#[derive(Clone, Debug)]
pub struct GkmGraph {
    pub n: usize,
    /// Vertex faces of `Q` in canonical order.
    pub vertices: Vec<FaceIx>,
    pub edges: Vec<GkmEdge>,
}

impl GkmGraph {
    /// Edge indices incident to vertex position `v`.
    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.ends.0 == v || e.ends.1 == v)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn position(&self, vertex: FaceIx) -> Option<usize> {
        self.vertices.iter().position(|&v| v == vertex)
    }

    /// A copy restricted to a subset of edges; used to probe monotonicity of
    /// the constraint spaces.
    pub fn with_edges(&self, keep: impl Fn(usize) -> bool) -> GkmGraph {
        GkmGraph {
            n: self.n,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, _)| keep(*i))
                .map(|(_, e)| e.clone())
                .collect(),
        }
    }

    /// Checks the two axial properties: the labels at a vertex form a basis,
    /// and along every edge `e` the label multisets agree modulo `α(e)`.
    pub fn check_axial(&self, p: &FacePoset) -> ValidationReport {
        let mut basis = Vec::new();
        for v in 0..self.vertices.len() {
            let rows: Vec<Gf2Vector> = self.edges_at(v).iter().map(|&e| self.edges[e].axial.clone()).collect();
            if rows.len() != self.n || Gf2Matrix::from_rows(self.n, rows).rank() != self.n {
                basis.push(p.id(self.vertices[v]).to_string());
            }
        }
        let mut congruence = Vec::new();
        for e in &self.edges {
            let alpha = &e.axial;
            let classes = |v: usize| {
                let mut c: Vec<Gf2Vector> = self
                    .edges_at(v)
                    .iter()
                    .map(|&i| {
                        let x = &self.edges[i].axial;
                        let y = x.xor(alpha);
                        if y < *x {
                            y
                        } else {
                            x.clone()
                        }
                    })
                    .collect();
                c.sort();
                c
            };
            if classes(e.ends.0) != classes(e.ends.1) {
                congruence.push(p.id(e.face).to_string());
            }
        }
        ValidationReport {
            checks: vec![
                Check::new("axial_basis", basis),
                Check::new("axial_congruence", congruence),
            ],
        }
    }
}

/// The axial function: `α(e)` is the unique nonzero functional vanishing on
/// `λ(F)` for the `n-1` facets `F ⊇ e`.
pub fn axial_function(p: &FacePoset, l: &CharFunction) -> Result<GkmGraph> {
    let sk = one_skeleton(p);
    if !sk.is_gkm_ready() {
        return Err(Error::Precondition(format!(
            "1-skeleton is not a connected {}-valent graph{}",
            p.dim(),
            if sk.bad_edges.is_empty() {
                String::new()
            } else {
                format!(" ({})", sk.bad_edges.join("; "))
            }
        )));
    }
    let pos: HashMap<FaceIx, usize> = sk.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::with_capacity(sk.edges.len());
    for e in &sk.edges {
        let rows = p
            .facets_containing(e.face)
            .iter()
            .map(|&f| l.value(f).clone())
            .collect();
        let kernel = Gf2Matrix::from_rows(l.rank(), rows).nullspace();
        let [axial] = &kernel[..] else {
            return Err(Error::Precondition(format!(
                "edge {} has a {}-dimensional space of vanishing functionals",
                p.id(e.face),
                kernel.len()
            )));
        };
        edges.push(GkmEdge {
            face: e.face,
            ends: (pos[&e.ends.0], pos[&e.ends.1]),
            axial: axial.clone(),
        });
    }
    Ok(GkmGraph {
        n: l.rank(),
        vertices: sk.vertices,
        edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringClasses {
    /// Facets grouped by their value, ordered by value.
    pub classes: Vec<(Gf2Vector, Vec<FaceIx>)>,
    /// Whether the distinct values form a basis of `Z₂ⁿ`.
    pub is_basis: bool,
    /// Whether facets sharing a codimension-2 face always differ in value.
    pub proper: bool,
}

pub fn coloring_classes(p: &FacePoset, l: &CharFunction) -> ColoringClasses {
    let mut groups: BTreeMap<Gf2Vector, Vec<FaceIx>> = BTreeMap::new();
    for (&f, v) in l.values() {
        groups.entry(v.clone()).or_default().push(f);
    }
    let image: Vec<Gf2Vector> = groups.keys().cloned().collect();
    let is_basis = image.len() == l.rank() && Gf2Matrix::from_rows(l.rank(), image).rank() == l.rank();
    let proper = p.faces_of_codim(2).all(|f| {
        let fs = p.facets_containing(f);
        fs.len() != 2 || l.value(fs[0]) != l.value(fs[1])
    });
    ColoringClasses {
        classes: groups.into_iter().collect(),
        is_basis,
        proper,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MInvolution {
    pub exists: bool,
    pub g: Option<Gf2Vector>,
}

/// An m-involution exists exactly when the image of `λ` is a basis of `Z₂ⁿ`
/// and `Q` is face-acyclic (supplied by the caller); it is then the sum of
/// that basis.
pub fn m_involution_check(p: &FacePoset, l: &CharFunction, face_acyclic: bool) -> MInvolution {
    let colors = coloring_classes(p, l);
    if colors.is_basis && face_acyclic {
        let mut g = Gf2Vector::zeros(l.rank());
        for (v, _) in &colors.classes {
            g.xor_assign(v);
        }
        MInvolution {
            exists: true,
            g: Some(g),
        }
    } else {
        MInvolution { exists: false, g: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::parse(s).unwrap()
    }

    #[test]
    fn lambda_validation() {
        let (t, l) = standard::triangle();
        assert!(validate_lambda(&t, &l).ok());
        let (s, l) = standard::square_torus();
        assert!(validate_lambda(&s, &l).ok());

        let mut values: BTreeMap<String, Gf2Vector> = [("L", "10"), ("R", "10"), ("T", "10"), ("B", "01")]
            .iter()
            .map(|(a, b)| (a.to_string(), v(b)))
            .collect();
        let bad = CharFunction::from_ids(&s, 2, &values).unwrap();
        let r = validate_lambda(&s, &bad);
        assert!(!r.ok());
        assert!(r.checks[0].witnesses.iter().any(|w| w.starts_with("LT ")));

        values.remove("B");
        let err = CharFunction::from_ids(&s, 2, &values).unwrap_err();
        assert!(err.to_string().contains("facet B missing"));
    }

    #[test]
    fn isotropy_groups() {
        let (t, l) = standard::triangle();
        let g = isotropy(&t, &l, t.lookup("p12").unwrap());
        assert_eq!(g.generators(), &[v("10"), v("01")]);
        assert_eq!(g.rank(), 2);
        assert_eq!(isotropy(&t, &l, t.lookup("F3").unwrap()).rank(), 1);
        assert_eq!(isotropy(&t, &l, t.top()).rank(), 0);
    }

    #[test]
    fn isotropy_reverses_inclusion() {
        let (p, l) = standard::cube(3);
        let groups = isotropy_all(&p, &l);
        for big in 0..p.len() {
            for small in 0..p.len() {
                if p.contains(big, small) {
                    assert!(groups[big].is_subgroup_of(&groups[small]));
                }
            }
            assert_eq!(groups[big].rank(), p.codim(big));
        }
    }

    #[test]
    fn cosets() {
        let g = Subgroup::new(3, vec![v("110")]);
        assert_eq!(g.coset_count(), 4);
        for i in 0..4 {
            let rep = g.coset_rep(i);
            assert_eq!(g.coset_index(&rep), i);
            assert_eq!(g.coset_index(&rep.xor(&v("110"))), i);
        }
    }

    #[test]
    fn cube_facet_restriction() {
        let (p, l) = standard::cube(3);
        let (sq, ls) = face_restriction(&p, &l, p.lookup("x0").unwrap()).unwrap();
        assert_eq!(sq.dim(), 2);
        assert_eq!(sq.facets().len(), 4);
        assert!(validate_lambda(&sq, &ls).ok());
        assert_eq!(ls.value(sq.lookup("x0y0").unwrap()), &v("10"));
        assert_eq!(ls.value(sq.lookup("x0y1").unwrap()), &v("10"));
        assert_eq!(ls.value(sq.lookup("x0z0").unwrap()), &v("01"));
    }

    #[test]
    fn triangle_edge_and_vertex_restrictions() {
        let (t, l) = standard::triangle();
        let (seg, ls) = face_restriction(&t, &l, t.lookup("F1").unwrap()).unwrap();
        assert_eq!(seg.dim(), 1);
        assert!(ls.values().values().all(|x| *x == v("1")));
        assert_eq!(ls.values().len(), 2);
        let (pt, lp) = face_restriction(&t, &l, t.lookup("p12").unwrap()).unwrap();
        assert_eq!((pt.dim(), pt.len(), lp.values().len()), (0, 1, 0));
    }

    #[test]
    fn restrictions_stay_valid() {
        for (p, l) in [
            standard::cube(3),
            standard::triangle(),
            standard::square_klein(),
            standard::simplex_instance(3),
        ] {
            for f in 0..p.len() {
                let (sub, ls) = face_restriction(&p, &l, f).unwrap();
                assert!(validate_lambda(&sub, &ls).ok(), "{}", p.id(f));
            }
        }
    }

    #[test]
    fn axial_functions() {
        let (t, l) = standard::triangle();
        let g = axial_function(&t, &l).unwrap();
        let alpha = |id: &str| {
            let f = t.lookup(id).unwrap();
            g.edges.iter().find(|e| e.face == f).unwrap().axial.clone()
        };
        assert_eq!((alpha("F1"), alpha("F2"), alpha("F3")), (v("01"), v("10"), v("11")));
        assert!(g.check_axial(&t).ok());

        let (s, l) = standard::square_torus();
        let g = axial_function(&s, &l).unwrap();
        for e in &g.edges {
            let expected = if matches!(s.id(e.face), "L" | "R") { "01" } else { "10" };
            assert_eq!(e.axial, v(expected));
        }

        let (c, l) = standard::cube(3);
        let g = axial_function(&c, &l).unwrap();
        assert!(g.check_axial(&c).ok());
        for e in &g.edges {
            // an edge is free in exactly one coordinate, its direction
            let id = c.id(e.face);
            let dir = ['x', 'y', 'z'].iter().position(|ch| !id.contains(*ch)).unwrap();
            assert_eq!(e.axial, Gf2Vector::unit(3, dir));
        }

        let err = axial_function(&standard::annulus_poset(), &standard::annulus().lambda.unwrap()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn m_involutions() {
        let (c, l) = standard::cube(3);
        assert_eq!(m_involution_check(&c, &l, true).g, Some(v("111")));
        assert!(!m_involution_check(&c, &l, false).exists);
        let (t, l) = standard::triangle();
        assert!(!m_involution_check(&t, &l, true).exists);
        let (s, l) = standard::square_torus();
        assert_eq!(m_involution_check(&s, &l, true).g, Some(v("11")));
        let (s, l) = standard::square_klein();
        assert!(!m_involution_check(&s, &l, true).exists);
    }

    #[test]
    fn colorings() {
        let (c, l) = standard::cube(3);
        let cc = coloring_classes(&c, &l);
        assert_eq!(cc.classes.len(), 3);
        assert!(cc.classes.iter().all(|(_, fs)| fs.len() == 2));
        assert!(cc.is_basis && cc.proper);

        let (t, l) = standard::triangle();
        let tc = coloring_classes(&t, &l);
        assert_eq!((tc.classes.len(), tc.is_basis), (3, false));

        let (s, l) = standard::segment();
        let sc = coloring_classes(&s, &l);
        assert_eq!((sc.classes.len(), sc.is_basis), (1, true));
        for n in 2..5 {
            let (p, l) = standard::simplex_instance(n);
            let sc = coloring_classes(&p, &l);
            assert_eq!((sc.classes.len(), sc.is_basis), (n + 1, false));
        }
    }
}
