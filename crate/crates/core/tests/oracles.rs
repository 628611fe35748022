mod common;

use common::*;
use twotorus::codes::{facet_code, is_self_dual, min_distance};
use twotorus::gkm::face_ring_hilbert;
use twotorus::poset::fh_vectors;
use twotorus::report;

const CORPUS: [&str; 9] = [
    "segment",
    "triangle",
    "tetrahedron",
    "square-torus",
    "square-klein",
    "cube",
    "annulus",
    "square-torus-triangulated",
    "triangle-triangulated",
];

#[test]
fn model_betti_matches_glued_copies() {
    for name in CORPUS {
        let inst = corpus(name);
        let v = report::verdict(&inst).unwrap();
        assert_eq!(v.betti.0, model_betti(&inst), "{name}");
    }
}

#[test]
fn h_vectors_match_the_closed_formula() {
    for name in CORPUS {
        let inst = corpus(name);
        assert_eq!(fh_vectors(&inst.poset).h, h_vector(&inst.poset), "{name}");
    }
}

#[test]
fn face_ring_matches_support_counting() {
    for name in CORPUS {
        let p = &corpus(name).poset;
        let h = fh_vectors(p).h;
        assert_eq!(face_ring_hilbert(&h, p.dim(), 6).0, face_ring_dims(p, 6), "{name}");
    }
}

#[test]
fn codes_match_subset_enumeration() {
    for name in CORPUS {
        let inst = corpus(name);
        let m = report::m_involution(&inst).unwrap();
        let Ok((code, _)) = facet_code(&inst.poset, &m) else {
            continue;
        };
        let rows: Vec<u64> = code.gen.rows().iter().map(bits).collect();
        assert_eq!(
            min_distance(&code).unwrap() as u32,
            subset_min_weight(&rows).unwrap(),
            "{name}"
        );
        assert_eq!(is_self_dual(&code), brute_self_dual(&rows, code.length), "{name}");
    }
}

#[test]
fn cut_instances_match_glued_copies() {
    for (name, face) in [
        ("triangle", "p12"),
        ("cube", "x0y0z0"),
        ("cube", "x0y0"),
        ("square-torus", "LB"),
    ] {
        let (cut, _, _) = report::blowup(&corpus(name), face).unwrap();
        let v = report::verdict(&cut).unwrap();
        assert_eq!(v.betti.0, model_betti(&cut), "{name} {face}");
    }
}
