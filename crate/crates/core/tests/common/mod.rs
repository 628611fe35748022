//! Brute-force oracles shared by the integration tests. None of them use the
//! library's linear algebra, quotient complexes or Hilbert function code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use twotorus::instance::{self, Instance};
use twotorus::poset::{order_complex, FaceIx, FacePoset};
use twotorus::{CarrierComplex, CharFunction};

pub fn corpus(name: &str) -> Instance {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(format!("{name}.json"));
    instance::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn bits(v: &twotorus::Gf2Vector) -> u64 {
    v.ones().fold(0, |acc, i| acc | 1 << i)
}

/// Every element of the span of `gens`, by closure.
fn span(gens: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::from([0u64]);
    for &g in gens {
        let more: Vec<u64> = out.iter().map(|x| x ^ g).collect();
        out.extend(more);
    }
    out
}

/// Rank over GF(2) of a set of bit rows, by plain Gaussian elimination.
pub fn rank(rows: Vec<Vec<u64>>) -> usize {
    let mut basis: HashMap<usize, Vec<u64>> = HashMap::new();
    for mut row in rows {
        let lead = |row: &[u64]| {
            row.iter()
                .enumerate()
                .rev()
                .find(|(_, &w)| w != 0)
                .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
        };
        while let Some(l) = lead(&row) {
            match basis.get(&l) {
                Some(b) => row.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                None => {
                    basis.insert(l, row);
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Mod-2 Betti numbers of a simplicial complex given by its top simplices
/// (any list; closed under faces here).
pub fn simplicial_betti(tops: &BTreeSet<Vec<usize>>) -> Vec<usize> {
    let mut by_dim: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for s in tops {
        for mask in 1u64..(1 << s.len()) {
            let face: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            by_dim.entry(face.len() - 1).or_default().insert(face);
        }
    }
    let top = by_dim.keys().max().copied().unwrap_or(0);
    let index: Vec<HashMap<&Vec<usize>, usize>> = (0..=top)
        .map(|d| {
            by_dim
                .get(&d)
                .map(|s| s.iter().enumerate().map(|(i, f)| (f, i)).collect())
                .unwrap_or_default()
        })
        .collect();
    let count = |d: usize| index.get(d).map_or(0, |m| m.len());
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || d > top {
            return 0;
        }
        let words = count(d - 1).div_ceil(64);
        let rows = by_dim[&d]
            .iter()
            .map(|s| {
                let mut row = vec![0u64; words];
                for skip in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(skip);
                    let i = index[d - 1][&f];
                    row[i / 64] ^= 1 << (i % 64);
                }
                row
            })
            .collect();
        rank(rows)
    };
    let ranks: Vec<usize> = (0..=top + 1).map(boundary_rank).collect();
    (0..=top).map(|d| count(d) - ranks[d] - ranks[d + 1]).collect()
}

/// Barycentric subdivision: points are the simplices of `c`, simplices are
/// chains, carried by the carrier of their largest element.
pub fn barycentric(c: &CarrierComplex) -> CarrierComplex {
    let simplices = c.simplices();
    let mut chains: Vec<Vec<usize>> = (0..simplices.len()).map(|i| vec![i]).collect();
    let mut out = Vec::new();
    while let Some(chain) = chains.pop() {
        let last = &simplices[*chain.last().unwrap()];
        out.push(twotorus::Simplex::new(chain.clone(), last.carrier));
        for (j, s) in simplices.iter().enumerate() {
            if s.verts.len() > last.verts.len() && last.verts.iter().all(|v| s.verts.contains(v)) {
                let mut next = chain.clone();
                next.push(j);
                chains.push(next);
            }
        }
    }
    CarrierComplex::new(simplices.len(), out).unwrap()
}

/// Betti numbers of `K × Z₂ⁿ / ~`, where `(x, g) ~ (x, g')` when
/// `g - g' ∈ G_carrier(x)`, built by gluing `2ⁿ` copies of `c` along
/// vertices. Faithful when every simplex's isotropy is the intersection of
/// its vertices' isotropy, as for order complexes and barycentric
/// subdivisions.
pub fn glued_betti(c: &CarrierComplex, p: &FacePoset, l: &CharFunction) -> Vec<usize> {
    let n = l.rank();
    let isotropy: Vec<BTreeSet<u64>> = (0..p.len())
        .map(|f| {
            let gens: Vec<u64> = p.facets_containing(f).iter().map(|&x| bits(l.value(x))).collect();
            span(&gens)
        })
        .collect();
    let point_carrier: Vec<FaceIx> = (0..c.points())
        .map(|x| {
            c.simplices()
                .iter()
                .find(|s| s.verts == [x])
                .expect("vertex simplex")
                .carrier
        })
        .collect();
    let class =
        |x: usize, g: u64| -> (usize, u64) { (x, isotropy[point_carrier[x]].iter().map(|h| g ^ h).min().unwrap()) };
    let mut ids: HashMap<(usize, u64), usize> = HashMap::new();
    let mut tops = BTreeSet::new();
    for s in c.simplices() {
        for g in 0..(1u64 << n) {
            let mut verts: Vec<usize> = s
                .verts
                .iter()
                .map(|&x| {
                    let key = class(x, g);
                    let next = ids.len();
                    *ids.entry(key).or_insert(next)
                })
                .collect();
            verts.sort_unstable();
            tops.insert(verts);
        }
    }
    simplicial_betti(&tops)
}

/// The oracle on the geometry an instance carries.
pub fn model_betti(inst: &Instance) -> Vec<usize> {
    let l = inst.lambda.as_ref().unwrap();
    match &inst.triangulation {
        Some(t) => glued_betti(&barycentric(t), &inst.poset, l),
        None => glued_betti(&order_complex(&inst.poset), &inst.poset, l),
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `h_k = Σ_i (-1)^(k-i) C(n-i, k-i) f_(i-1)`, with `f_(-1) = 1`.
pub fn h_vector(p: &FacePoset) -> Vec<i64> {
    let n = p.dim() as i64;
    let f = |i: i64| -> i64 {
        if i < 0 {
            1
        } else {
            p.faces().iter().filter(|x| x.codim as i64 == i + 1).count() as i64
        }
    };
    (0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| (-1i64).pow((k - i) as u32) * binomial(n - i, k - i) * f(i - 1))
                .sum()
        })
        .collect()
}

/// Face ring Hilbert function: each face `g` contributes the monomials whose
/// support is exactly the facets containing `g`.
pub fn face_ring_dims(p: &FacePoset, max_deg: usize) -> Vec<u64> {
    (0..=max_deg as i64)
        .map(|k| {
            p.faces()
                .iter()
                .map(|f| {
                    let s = f.codim as i64;
                    if s == 0 {
                        i64::from(k == 0)
                    } else {
                        binomial(k - 1, s - 1)
                    }
                })
                .sum::<i64>() as u64
        })
        .collect()
}

/// Minimum weight over all nonzero sums of subsets of `rows`.
pub fn subset_min_weight(rows: &[u64]) -> Option<u32> {
    (1u64..(1 << rows.len()))
        .map(|mask| {
            (0..rows.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(0, |acc, i| acc ^ rows[i])
        })
        .filter(|&w| w != 0)
        .map(u64::count_ones)
        .min()
}

/// Whether the row span of `rows` equals its orthogonal complement in `Z₂^len`.
pub fn brute_self_dual(rows: &[u64], len: usize) -> bool {
    let code = span(rows);
    let dual: BTreeSet<u64> = (0..(1u64 << len))
        .filter(|w| rows.iter().all(|r| (r & w).count_ones() % 2 == 0))
        .collect();
    code == dual
}
