//! Mod-2 GKM computations.
//!
//! A degree-`k` class is a tuple `(η_p)` of degree-`k` polynomials, one per
//! vertex, with `η_p − η_p'` divisible by `α(e)` along every edge `e = pp'`.
//! Divisibility by a linear form is tested in the quotient ring: the
//! lowest-index variable of `α(e)` is replaced by the sum of its other
//! variables, and the two substituted polynomials must coincide.
//!
//! Only the image of the restriction to the fixed points is represented.
//! It computes the equivariant cohomology faithfully when the model is
//! equivariantly formal.

use std::collections::{BTreeSet, HashMap};

use crate::charfn::{CharFunction, GkmGraph};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::poly::{monomial_basis, monomial_count, Monomial, Poly};
use crate::poset::{FaceIx, FacePoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims(pub Vec<u64>);

impl std::fmt::Display for GradedDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Default top degree for Hilbert function comparisons: `n + 2`.
pub fn default_max_deg(n: usize) -> usize {
    n + 2
}

/// The polynomial a linear form's pivot variable is replaced by.
fn pivot_substitution(alpha: &Gf2Vector) -> Result<(usize, Poly)> {
    let pivot = alpha
        .leading()
        .ok_or_else(|| Error::Precondition("axial label α(e) = 0".into()))?;
    let mut rest = alpha.clone();
    rest.set(pivot, false);
    Ok((pivot, Poly::linear(&rest)))
}

/// Constraint matrix of degree `k`: columns are `(vertex, monomial)` pairs
/// (vertex-major), rows are the coefficients of the substituted differences
/// along each edge.
pub fn constraint_matrix(g: &GkmGraph, k: usize) -> Result<Gf2Matrix> {
    let basis = monomial_basis(g.n, k);
    let m = basis.len();
    let pos: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let ncols = g.vertices.len() * m;
    let mut out = Gf2Matrix::zeros(0, ncols);
    let mut images: HashMap<Gf2Vector, Vec<Poly>> = HashMap::new();
    for e in &g.edges {
        if !images.contains_key(&e.axial) {
            let (pivot, repl) = pivot_substitution(&e.axial)?;
            let imgs = basis
                .iter()
                .map(|b| Poly::monomial(b.clone()).substitute(pivot, &repl))
                .collect();
            images.insert(e.axial.clone(), imgs);
        }
        let imgs = &images[&e.axial];
        let mut rows = vec![Gf2Vector::zeros(ncols); m];
        for (j, img) in imgs.iter().enumerate() {
            for term in img.terms() {
                let r = pos[term];
                rows[r].flip(e.ends.0 * m + j);
                rows[r].flip(e.ends.1 * m + j);
            }
        }
        for row in rows {
            if !row.is_zero() {
                out.push_row(row);
            }
        }
    }
    Ok(out)
}

/// Dimension of the space of degree-`k` GKM classes for `k = 0..=max_deg`.
pub fn equivariant_hilbert(g: &GkmGraph, max_deg: usize) -> Result<GradedDims> {
    let dims = (0..=max_deg)
        .map(|k| {
            let unknowns = g.vertices.len() as u64 * monomial_count(g.n, k);
            Ok(unknowns - constraint_matrix(g, k)?.rank() as u64)
        })
        .collect::<Result<_>>()?;
    Ok(GradedDims(dims))
}

/// Coefficients of `(h_0 + h_1 t + … + h_n t^n) / (1 - t)^n` up to `max_deg`.
pub fn face_ring_hilbert(h: &[i64], n: usize, max_deg: usize) -> GradedDims {
    let dims = (0..=max_deg)
        .map(|k| {
            let total: i64 = h
                .iter()
                .enumerate()
                .take(k.min(n) + 1)
                .map(|(i, &hi)| hi * monomial_count(n, k - i) as i64)
                .sum();
            u64::try_from(total).unwrap_or(0)
        })
        .collect();
    GradedDims(dims)
}

/// One polynomial per vertex of the graph, all of the same degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantClass {
    pub values: Vec<Poly>,
}

impl EquivariantClass {
    /// Whether every edge difference is divisible by its axial label.
    pub fn satisfies_gkm(&self, g: &GkmGraph) -> bool {
        g.edges.iter().all(|e| {
            let diff = self.values[e.ends.0].add(&self.values[e.ends.1]);
            match pivot_substitution(&e.axial) {
                Ok((pivot, repl)) => diff.substitute(pivot, &repl).is_zero(),
                Err(_) => false,
            }
        })
    }

    /// Concatenated coefficient vector in the layout of [`constraint_matrix`].
    pub fn to_vector(&self, n: usize, k: usize) -> Gf2Vector {
        let basis = monomial_basis(n, k);
        let mut bits = Vec::with_capacity(self.values.len() * basis.len());
        for v in &self.values {
            bits.extend(v.coefficients(&basis).to_bits());
        }
        Gf2Vector::from_bits(&bits)
    }
}

/// Restrictions of the Thom class `τ_f` to the fixed points: the product of
/// `α(e)` over edges `e ∋ p` not in `f` when `p ∈ f`, and zero otherwise.
pub fn thom_restriction(p: &FacePoset, g: &GkmGraph, f: FaceIx) -> EquivariantClass {
    let values = (0..g.vertices.len())
        .map(|v| {
            if !p.contains(f, g.vertices[v]) {
                return Poly::zero(g.n);
            }
            g.edges_at(v)
                .into_iter()
                .filter(|&e| !p.contains(f, g.edges[e].face))
                .fold(Poly::one(g.n), |acc, e| acc.mul(&Poly::linear(&g.edges[e].axial)))
        })
        .collect();
    EquivariantClass { values }
}

#[derive(Clone, Debug, Default)]
pub struct RelationsReport {
    /// Vertex/functional pairs where `Σ ⟨t, λ(F_i)⟩ r_p(τ_{F_i}) ≠ t`.
    pub linearity: Vec<String>,
    /// Face pairs and vertices where the product relation fails.
    pub products: Vec<String>,
    pub linearity_checked: usize,
    pub products_checked: usize,
}

impl RelationsReport {
    pub fn ok(&self) -> bool {
        self.linearity.is_empty() && self.products.is_empty()
    }
}

/// Checks, vertex by vertex, the linearity relation for every coordinate
/// functional and `τ_f τ_f' = τ_{f∨f'} Σ_{f'' ⊆ f∩f'} τ_f''` (with `τ_∅ = 0`)
/// for every pair of faces.
pub fn check_face_ring_relations(p: &FacePoset, l: &CharFunction, g: &GkmGraph) -> RelationsReport {
    let n = l.rank();
    let thom: Vec<EquivariantClass> = (0..p.len()).map(|f| thom_restriction(p, g, f)).collect();
    let mut report = RelationsReport::default();

    for j in 0..n {
        let t = Gf2Vector::unit(n, j);
        let target = Poly::linear(&t);
        for v in 0..g.vertices.len() {
            let sum = p
                .facets()
                .into_iter()
                .filter(|&f| t.dot(l.value(f)))
                .fold(Poly::zero(n), |acc, f| acc.add(&thom[f].values[v]));
            report.linearity_checked += 1;
            if sum != target {
                report
                    .linearity
                    .push(format!("r{} at {}: got {sum}", j + 1, p.id(g.vertices[v])));
            }
        }
    }

    for f in 0..p.len() {
        for h in f..p.len() {
            let meet = p.meet(f, h);
            let rhs: Vec<Poly> = if meet.is_empty() {
                vec![Poly::zero(n); g.vertices.len()]
            } else {
                let joins = p.joins(f, h);
                let [join] = joins[..] else {
                    report
                        .products
                        .push(format!("{} and {} have no unique join", p.id(f), p.id(h)));
                    continue;
                };
                (0..g.vertices.len())
                    .map(|v| {
                        let s = meet.iter().fold(Poly::zero(n), |acc, &m| acc.add(&thom[m].values[v]));
                        thom[join].values[v].mul(&s)
                    })
                    .collect()
            };
            for (v, rhs_v) in rhs.iter().enumerate() {
                report.products_checked += 1;
                let lhs = thom[f].values[v].mul(&thom[h].values[v]);
                if lhs != *rhs_v {
                    report.products.push(format!(
                        "{}·{} at {}: {lhs} ≠ {rhs_v}",
                        p.id(f),
                        p.id(h),
                        p.id(g.vertices[v])
                    ));
                }
            }
        }
    }
    report
}

/// Vertices where a class is nonzero.
pub fn support(c: &EquivariantClass, g: &GkmGraph) -> BTreeSet<FaceIx> {
    c.values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, _)| g.vertices[i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfn::axial_function;
    use crate::poset::fh_vectors;
    use crate::standard;

    fn r(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn triangle_hilbert() {
        let (t, l) = standard::triangle();
        let g = axial_function(&t, &l).unwrap();
        assert_eq!(equivariant_hilbert(&g, 3).unwrap().0, vec![1, 3, 6, 9]);
        assert_eq!(face_ring_hilbert(&[1, 1, 1], 2, 3).0, vec![1, 3, 6, 9]);
    }

    #[test]
    fn square_degree_one() {
        let (s, l) = standard::square_torus();
        let g = axial_function(&s, &l).unwrap();
        assert_eq!(equivariant_hilbert(&g, 1).unwrap().0[1], 4);
        assert_eq!(face_ring_hilbert(&[1, 2, 1], 2, 1).0[1], 4);
    }

    #[test]
    fn free_ring_series() {
        for n in 1..5 {
            let mut h = vec![0; n + 1];
            h[0] = 1;
            for k in 0..6 {
                assert_eq!(face_ring_hilbert(&h, n, k).0[k], monomial_count(n, k));
            }
        }
    }

    #[test]
    fn thom_classes_of_triangle() {
        let (t, l) = standard::triangle();
        let g = axial_function(&t, &l).unwrap();
        let at = |c: &EquivariantClass, id: &str| c.values[g.position(t.lookup(id).unwrap()).unwrap()].clone();

        let f1 = thom_restriction(&t, &g, t.lookup("F1").unwrap());
        assert_eq!(at(&f1, "p12"), r(2, 0));
        assert_eq!(at(&f1, "p13"), r(2, 0).add(&r(2, 1)));
        assert!(at(&f1, "p23").is_zero());

        let p12 = thom_restriction(&t, &g, t.lookup("p12").unwrap());
        assert_eq!(at(&p12, "p12"), r(2, 0).mul(&r(2, 1)));
        assert!(at(&p12, "p13").is_zero() && at(&p12, "p23").is_zero());

        let q = thom_restriction(&t, &g, t.top());
        assert!(q.values.iter().all(|v| *v == Poly::one(2)));
    }

    #[test]
    fn thom_classes_are_gkm_classes() {
        for (p, l) in [standard::triangle(), standard::cube(3), standard::square_klein()] {
            let g = axial_function(&p, &l).unwrap();
            for f in 0..p.len() {
                let c = thom_restriction(&p, &g, f);
                assert!(c.satisfies_gkm(&g), "{}", p.id(f));
                let k = p.codim(f);
                let m = constraint_matrix(&g, k).unwrap();
                assert!(m.mul_vec(&c.to_vector(p.dim(), k)).is_zero());
                assert_eq!(support(&c, &g), p.vertices_of(f).into_iter().collect());
            }
        }
    }

    #[test]
    fn relations_hold() {
        for (p, l) in [standard::triangle(), standard::cube(3)] {
            let g = axial_function(&p, &l).unwrap();
            let rep = check_face_ring_relations(&p, &l, &g);
            assert!(rep.ok(), "{:?}", rep);
            assert_eq!(rep.linearity_checked, p.dim() * g.vertices.len());
        }
    }

    #[test]
    fn removing_edges_never_shrinks_solutions() {
        let (c, l) = standard::cube(3);
        let g = axial_function(&c, &l).unwrap();
        let full = equivariant_hilbert(&g, 3).unwrap();
        let fewer = equivariant_hilbert(&g.with_edges(|i| i % 3 != 0), 3).unwrap();
        assert!(full.0.iter().zip(&fewer.0).all(|(a, b)| a <= b));
        let h = fh_vectors(&c).h;
        assert_eq!(full, face_ring_hilbert(&h, 3, 3));
    }
}
