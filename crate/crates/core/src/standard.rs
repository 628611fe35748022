//! Standard small instances: simplices, cubes, the square with its torus and
//! Klein bottle colorings, and an annulus with a triangulation.

use std::collections::BTreeMap;

use crate::charfn::CharFunction;
use crate::complex::{CarrierComplex, Simplex};
use crate::gf2::Gf2Vector;
use crate::instance::Instance;
use crate::poset::FacePoset;

type RawPoset = (Vec<(String, usize)>, Vec<(String, String)>);

fn lambda(p: &FacePoset, values: &[(&str, &str)]) -> CharFunction {
    let map: BTreeMap<String, Gf2Vector> = values
        .iter()
        .map(|(id, bits)| (id.to_string(), Gf2Vector::parse(bits).expect("literal bits")))
        .collect();
    CharFunction::from_ids(p, p.dim(), &map).expect("standard characteristic function")
}

/// A point: the orbit space of a point with the trivial action of `Z₂⁰`.
pub fn point() -> FacePoset {
    FacePoset::new(0, vec![("Q".into(), 0)], Vec::new()).unwrap()
}

/// The face poset of the `n`-simplex. Facets are `F1..F(n+1)`; a face of
/// codimension `k ≥ 2` is named by its facets, `f` for edges and up, `p` for
/// vertices (e.g. `p12` in the triangle).
pub fn simplex(n: usize) -> FacePoset {
    let (faces, covers) = simplex_data(n);
    FacePoset::new(n, faces, covers).unwrap()
}

fn simplex_face_name(n: usize, set: &[usize]) -> String {
    let sep = if n + 1 > 9 { "_" } else { "" };
    let digits: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    match set.len() {
        0 => "Q".into(),
        1 => format!("F{}", set[0] + 1),
        k if k == n => format!("p{}", digits.join(sep)),
        _ => format!("f{}", digits.join(sep)),
    }
}

fn simplex_data(n: usize) -> RawPoset {
    let mut faces = Vec::new();
    let mut covers = Vec::new();
    for mask in 0u32..(1 << (n + 1)) {
        let set: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
        if set.len() > n {
            continue;
        }
        let name = simplex_face_name(n, &set);
        faces.push((name.clone(), set.len()));
        for drop in 0..set.len() {
            let mut parent = set.clone();
            parent.remove(drop);
            covers.push((name.clone(), simplex_face_name(n, &parent)));
        }
    }
    (faces, covers)
}

/// The `n`-simplex with `λ(F_i) = e_i` for `i ≤ n` and `λ(F_(n+1)) = e_1 + … + e_n`.
pub fn simplex_instance(n: usize) -> (FacePoset, CharFunction) {
    let p = simplex(n);
    let mut values = BTreeMap::new();
    for i in 0..=n {
        let v = if i < n {
            Gf2Vector::unit(n, i)
        } else {
            Gf2Vector::from_bits(&vec![true; n])
        };
        values.insert(format!("F{}", i + 1), v);
    }
    let l = CharFunction::from_ids(&p, n, &values).unwrap();
    (p, l)
}

/// The triangle with `F1 ↦ 10, F2 ↦ 01, F3 ↦ 11`; its canonical model is `RP²`.
pub fn triangle() -> (FacePoset, CharFunction) {
    simplex_instance(2)
}

/// The segment `[0,1]` with both endpoints labelled `1`; the model is a circle.
pub fn segment() -> (FacePoset, CharFunction) {
    simplex_instance(1)
}

const AXES: [char; 4] = ['x', 'y', 'z', 'w'];

fn cube_face_name(coords: &[Option<bool>]) -> String {
    if coords.iter().all(Option::is_none) {
        return "Q".into();
    }
    let mut s = String::new();
    for (i, c) in coords.iter().enumerate() {
        if let Some(b) = c {
            if coords.len() <= AXES.len() {
                s.push(AXES[i]);
            } else {
                s.push_str(&format!("c{}=", i + 1));
            }
            s.push(if *b { '1' } else { '0' });
        }
    }
    s
}

/// The `n`-cube with opposite facets labelled by the same basis vector; the
/// model is the `n`-torus. Faces are named by their fixed coordinates, e.g.
/// `x0`, `x0y1`, `x0y1z0`.
pub fn cube(n: usize) -> (FacePoset, CharFunction) {
    let mut faces = Vec::new();
    let mut covers = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let coords: Vec<Option<bool>> = (0..n)
            .map(|_| {
                let digit = c % 3;
                c /= 3;
                match digit {
                    0 => None,
                    1 => Some(false),
                    _ => Some(true),
                }
            })
            .collect();
        let name = cube_face_name(&coords);
        let codim = coords.iter().filter(|c| c.is_some()).count();
        faces.push((name.clone(), codim));
        for i in 0..n {
            if coords[i].is_some() {
                let mut parent = coords.clone();
                parent[i] = None;
                covers.push((name.clone(), cube_face_name(&parent)));
            }
        }
    }
    let p = FacePoset::new(n, faces, covers).unwrap();
    let mut values = BTreeMap::new();
    for i in 0..n {
        for b in [false, true] {
            let mut coords = vec![None; n];
            coords[i] = Some(b);
            values.insert(cube_face_name(&coords), Gf2Vector::unit(n, i));
        }
    }
    let l = CharFunction::from_ids(&p, n, &values).unwrap();
    (p, l)
}

/// Faces and covers of the square with facets `L, R, T, B` and corners
/// `LT, LB, RT, RB`.
pub fn square_data() -> RawPoset {
    let mut faces: Vec<(String, usize)> = vec![("Q".into(), 0)];
    let mut covers = Vec::new();
    for side in ["L", "R", "T", "B"] {
        faces.push((side.into(), 1));
    }
    for (a, b) in [("L", "T"), ("L", "B"), ("R", "T"), ("R", "B")] {
        let corner = format!("{a}{b}");
        faces.push((corner.clone(), 2));
        covers.push((corner.clone(), a.to_string()));
        covers.push((corner, b.to_string()));
    }
    (faces, covers)
}

fn square() -> FacePoset {
    let (faces, covers) = square_data();
    FacePoset::new(2, faces, covers).unwrap()
}

/// The square with `L, R ↦ 10` and `T, B ↦ 01`: the torus.
pub fn square_torus() -> (FacePoset, CharFunction) {
    let p = square();
    let l = lambda(&p, &[("L", "10"), ("R", "10"), ("T", "01"), ("B", "01")]);
    (p, l)
}

/// The square with `L, R ↦ 10`, `T ↦ 01`, `B ↦ 11`: the Klein bottle.
pub fn square_klein() -> (FacePoset, CharFunction) {
    let p = square();
    let l = lambda(&p, &[("L", "10"), ("R", "10"), ("T", "01"), ("B", "11")]);
    (p, l)
}

/// The square split along the diagonal `LB–RT` into two triangles, with the
/// torus coloring. Points: `0 = LB, 1 = RB, 2 = RT, 3 = LT`.
pub fn square_triangulated() -> Instance {
    let (p, l) = square_torus();
    let id = |s: &str| p.lookup(s).unwrap();
    let simplices = vec![
        Simplex::new(vec![0], id("LB")),
        Simplex::new(vec![1], id("RB")),
        Simplex::new(vec![2], id("RT")),
        Simplex::new(vec![3], id("LT")),
        Simplex::new(vec![0, 1], id("B")),
        Simplex::new(vec![1, 2], id("R")),
        Simplex::new(vec![2, 3], id("T")),
        Simplex::new(vec![0, 3], id("L")),
        Simplex::new(vec![0, 2], p.top()),
        Simplex::new(vec![0, 1, 2], p.top()),
        Simplex::new(vec![0, 2, 3], p.top()),
    ];
    let tri = CarrierComplex::new(4, simplices).unwrap();
    Instance {
        name: "square-torus-triangulated".into(),
        poset: p,
        lambda: Some(l),
        triangulation: Some(tri),
    }
}

/// The triangle as a single 2-simplex with points `0 = p12, 1 = p13, 2 = p23`.
pub fn triangle_triangulated() -> Instance {
    let (p, l) = triangle();
    let id = |s: &str| p.lookup(s).unwrap();
    let simplices = vec![
        Simplex::new(vec![0], id("p12")),
        Simplex::new(vec![1], id("p13")),
        Simplex::new(vec![2], id("p23")),
        Simplex::new(vec![0, 1], id("F1")),
        Simplex::new(vec![0, 2], id("F2")),
        Simplex::new(vec![1, 2], id("F3")),
        Simplex::new(vec![0, 1, 2], p.top()),
    ];
    let tri = CarrierComplex::new(3, simplices).unwrap();
    Instance {
        name: "triangle-triangulated".into(),
        poset: p,
        lambda: Some(l),
        triangulation: Some(tri),
    }
}

/// The annulus: two circle facets `F1` (inner) and `F2` (outer), no vertices.
pub fn annulus_poset() -> FacePoset {
    FacePoset::new(2, vec![("Q".into(), 0), ("F1".into(), 1), ("F2".into(), 1)], Vec::new()).unwrap()
}

/// The annulus with `F1 ↦ 10`, `F2 ↦ 01` and a six-triangle triangulation:
/// inner points `0, 1, 2`, outer points `3, 4, 5`.
pub fn annulus() -> Instance {
    let p = annulus_poset();
    let l = lambda(&p, &[("F1", "10"), ("F2", "01")]);
    let (q, f1, f2) = (p.top(), p.lookup("F1").unwrap(), p.lookup("F2").unwrap());
    let mut simplices = Vec::new();
    for i in 0..3 {
        let (a, a1, b, b1) = (i, (i + 1) % 3, 3 + i, 3 + (i + 1) % 3);
        simplices.push(Simplex::new(vec![a], f1));
        simplices.push(Simplex::new(vec![b], f2));
        simplices.push(Simplex::new(vec![a, a1], f1));
        simplices.push(Simplex::new(vec![b, b1], f2));
        simplices.push(Simplex::new(vec![a, b], q));
        simplices.push(Simplex::new(vec![a1, b], q));
        simplices.push(Simplex::new(vec![a, a1, b], q));
        simplices.push(Simplex::new(vec![a1, b, b1], q));
    }
    let tri = CarrierComplex::new(6, simplices).unwrap();
    Instance {
        name: "annulus".into(),
        poset: p,
        lambda: Some(l),
        triangulation: Some(tri),
    }
}
