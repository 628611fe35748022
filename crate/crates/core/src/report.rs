//! Text fragments printed by the command line tool, and the combined report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::blowup::{blowup_counts_check, cut_face, CutResult};
use crate::charfn::{axial_function, m_involution_check, MInvolution};
use crate::codes::{facet_code, is_self_dual, min_distance, BinaryCode};
use crate::complex::is_face_acyclic;
use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::gkm::{default_max_deg, equivariant_hilbert, face_ring_hilbert, GradedDims};
use crate::instance::{Instance, DIAGNOSTIC_CHECKS};
use crate::model::{build_quotient, fixed_locus, fixed_points, formality_verdict, FormalityVerdict, Geometry};
use crate::poset::{fh_vectors, gorenstein_quick_checks, one_skeleton};

fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn geometry(inst: &Instance) -> Geometry<'_> {
    match &inst.triangulation {
        Some(t) => Geometry::Triangulation(t),
        None => Geometry::Cone,
    }
}

/// Check lines; the flag is false when a non-diagnostic check failed.
pub fn validate_fragment(inst: &Instance) -> (String, bool) {
    let mut out = String::new();
    let mut ok = true;
    for c in inst.validate().checks {
        let status = match (c.ok, DIAGNOSTIC_CHECKS.contains(&c.name)) {
            (true, _) => "ok",
            (false, true) => "warn",
            (false, false) => {
                ok = false;
                "fail"
            }
        };
        if c.ok {
            let _ = writeln!(out, "check {}={status}", c.name);
        } else {
            let _ = writeln!(out, "check {}={status} [{}]", c.name, c.witnesses.join("; "));
        }
    }
    (out, ok)
}

pub fn hvector_fragment(inst: &Instance) -> String {
    let fh = fh_vectors(&inst.poset);
    let g = gorenstein_quick_checks(&inst.poset);
    format!(
        "f_vector={}\nh_vector={}\ngorenstein pseudo_manifold={} euler={}\n",
        tuple(&fh.f),
        tuple(&fh.h),
        g.pseudo_manifold,
        g.euler_ok
    )
}

pub fn betti_fragment(inst: &Instance) -> Result<String> {
    let geo = geometry(inst);
    let qc = build_quotient(&geo.complex(&inst.poset), &inst.poset, inst.lambda()?)?;
    let betti = qc.betti()?;
    Ok(format!(
        "betti={betti} sum={} model={}\nfixed_points={}\n",
        betti.total(),
        geo.model_name(),
        fixed_points(&inst.poset).len()
    ))
}

pub fn verdict(inst: &Instance) -> Result<FormalityVerdict> {
    formality_verdict(&inst.poset, inst.lambda()?, geometry(inst))
}

fn warnings(ws: &[String]) -> String {
    ws.iter().map(|w| format!("warning: {w}\n")).collect()
}

pub fn formality_fragment(inst: &Instance) -> Result<String> {
    let v = verdict(inst)?;
    Ok(format!(
        "hsiang={} criterion={} h_identity={} agree={} mode={}\n{}",
        v.hsiang,
        v.criterion.label(),
        v.h_identity,
        v.agree,
        v.mode,
        warnings(&v.warnings)
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct GkmSummary {
    pub gkm_hilbert: Vec<u64>,
    pub face_ring_hilbert: Vec<u64>,
    pub agree: bool,
}

pub fn gkm_summary(inst: &Instance, max_deg: Option<usize>) -> Result<GkmSummary> {
    let p = &inst.poset;
    let skeleton = one_skeleton(p);
    if !skeleton.is_gkm_ready() {
        return Err(Error::Precondition(format!(
            "1-skeleton is not a connected {}-valent graph",
            p.dim()
        )));
    }
    let g = axial_function(p, inst.lambda()?)?;
    let d = max_deg.unwrap_or_else(|| default_max_deg(p.dim()));
    let GradedDims(gkm) = equivariant_hilbert(&g, d)?;
    let GradedDims(ring) = face_ring_hilbert(&fh_vectors(p).h, p.dim(), d);
    Ok(GkmSummary {
        agree: gkm == ring,
        gkm_hilbert: gkm,
        face_ring_hilbert: ring,
    })
}

pub fn gkm_fragment(inst: &Instance, max_deg: Option<usize>) -> Result<String> {
    let s = gkm_summary(inst, max_deg)?;
    let mut out = format!(
        "gkm_hilbert={}\nface_ring_hilbert={}\ngkm_agree={}\n",
        tuple(&s.gkm_hilbert),
        tuple(&s.face_ring_hilbert),
        s.agree
    );
    if !verdict(inst)?.hsiang {
        out.push_str("warning: not equivariantly formal; the two Hilbert functions need not agree\n");
    }
    Ok(out)
}

pub fn m_involution(inst: &Instance) -> Result<MInvolution> {
    let p = &inst.poset;
    let acyclic = is_face_acyclic(&geometry(inst).complex(p), p)?.verdict;
    Ok(m_involution_check(p, inst.lambda()?, acyclic))
}

fn m_involution_line(m: &MInvolution) -> String {
    match &m.g {
        Some(g) => format!("m_involution exists=true g={g}\n"),
        None => "m_involution exists=false\n".into(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeSummary {
    pub length: usize,
    pub dim: usize,
    pub min_distance: usize,
    pub self_dual: bool,
}

fn code_summary(code: &BinaryCode) -> Result<CodeSummary> {
    Ok(CodeSummary {
        length: code.length,
        dim: code.dim,
        min_distance: min_distance(code)?,
        self_dual: is_self_dual(code),
    })
}

fn code_lines(m: &MInvolution, code: &BinaryCode, warns: &[String]) -> Result<String> {
    let s = code_summary(code)?;
    let mut out = m_involution_line(m);
    for row in code.gen.rows() {
        let _ = writeln!(out, "{row}");
    }
    let _ = writeln!(
        out,
        "[{},{},{}] self_dual={}",
        s.length, s.dim, s.min_distance, s.self_dual
    );
    out.push_str(&warnings(warns));
    Ok(out)
}

pub fn code_fragment(inst: &Instance) -> Result<String> {
    let m = m_involution(inst)?;
    let (code, warns) = facet_code(&inst.poset, &m)?;
    code_lines(&m, &code, &warns)
}

pub fn fixed_locus_fragment(inst: &Instance, g: &str) -> Result<String> {
    let g = Gf2Vector::parse(g).ok_or_else(|| Error::Input(format!("--g {g:?} is not a string of 0s and 1s")))?;
    let p = &inst.poset;
    let locus = fixed_locus(p, inst.lambda()?, &g)?;
    let ids: Vec<&str> = locus.faces.iter().map(|&f| p.id(f)).collect();
    let size = locus.size.map_or("-".to_string(), |s| s.to_string());
    Ok(format!(
        "fixed_locus g={g} faces={} discrete={} size={size}\n",
        tuple(&ids),
        locus.discrete
    ))
}

/// Cuts `face` off the instance. The triangulation, if any, is dropped.
pub fn blowup(inst: &Instance, face: &str) -> Result<(Instance, CutResult, String)> {
    let p = &inst.poset;
    let l = inst.lambda()?;
    let f = p.lookup(face)?;
    let cut = cut_face(p, l, f)?;
    let counts = blowup_counts_check(p, l, f, &cut)?;
    let out = Instance {
        name: format!("{}-cut-{face}", inst.name),
        poset: cut.poset.clone(),
        lambda: Some(cut.lambda.clone()),
        triangulation: None,
    };
    let (v0, v1, vf) = counts.vertices;
    let (b0, b1, bf) = counts.betti_sums;
    let mut text = format!(
        "cut face={face} codim={} new_facet={}\nvertices {v0} -> {v1} (face {vf})\nbetti_sum {b0} -> {b1} (face {bf})\nfixed_point_identity={} dimension_identity={} formality_preserved={}\n",
        counts.k,
        cut.poset.id(cut.new_facet),
        counts.fixed_point_identity,
        counts.dimension_identity,
        counts.formal.0 == counts.formal.1
    );
    if inst.triangulation.is_some() {
        text.push_str("warning: the triangulation is not carried over; the cut instance uses the cone model\n");
    }
    Ok((out, cut, text))
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalitySummary {
    pub hsiang: bool,
    pub criterion: String,
    pub h_identity: bool,
    pub agree: bool,
    pub mode: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MInvolutionSummary {
    pub exists: bool,
    pub g: Option<String>,
}

/// Every computed quantity for one instance.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub f_vector: Vec<u64>,
    pub h_vector: Vec<i64>,
    pub betti: Vec<usize>,
    pub fixed_points: usize,
    pub formality: FormalitySummary,
    pub gkm_hilbert: Option<Vec<u64>>,
    pub face_ring_hilbert: Option<Vec<u64>>,
    pub m_involution: MInvolutionSummary,
    pub code: Option<CodeSummary>,
    pub warnings: Vec<String>,
}

pub fn build_report(inst: &Instance) -> Result<Report> {
    let fh = fh_vectors(&inst.poset);
    let v = verdict(inst)?;
    let mut warns = v.warnings.clone();
    let (gkm_hilbert, face_ring_hilbert) = match gkm_summary(inst, None) {
        Ok(s) => (Some(s.gkm_hilbert), Some(s.face_ring_hilbert)),
        Err(Error::Precondition(e)) => {
            warns.push(format!("gkm: {e}"));
            (None, None)
        }
        Err(e) => return Err(e),
    };
    let m = m_involution(inst)?;
    let code = if m.exists {
        let (code, w) = facet_code(&inst.poset, &m)?;
        warns.extend(w);
        Some(code_summary(&code)?)
    } else {
        None
    };
    Ok(Report {
        name: inst.name.clone(),
        f_vector: fh.f,
        h_vector: fh.h,
        betti: v.betti.0.clone(),
        fixed_points: v.vertices,
        formality: FormalitySummary {
            hsiang: v.hsiang,
            criterion: v.criterion.label().into(),
            h_identity: v.h_identity,
            agree: v.agree,
            mode: v.mode.to_string(),
        },
        gkm_hilbert,
        face_ring_hilbert,
        m_involution: MInvolutionSummary {
            exists: m.exists,
            g: m.g.map(|g| g.to_string()),
        },
        code,
        warnings: warns,
    })
}

pub fn report_json(inst: &Instance) -> Result<String> {
    Ok(serde_json::to_string_pretty(&build_report(inst)?)?)
}

/// The `validate`, `hvector`, `betti`, `formality`, `gkm` and `code`
/// fragments in order. Fragments whose precondition fails are replaced by a
/// single `gkm=none` or `code=none` line.
pub fn report_text(inst: &Instance) -> Result<String> {
    let (mut out, _) = validate_fragment(inst);
    out.push_str(&hvector_fragment(inst));
    out.push_str(&betti_fragment(inst)?);
    out.push_str(&formality_fragment(inst)?);
    match gkm_fragment(inst, None) {
        Ok(s) => out.push_str(&s),
        Err(Error::Precondition(e)) => {
            let _ = writeln!(out, "gkm=none\nwarning: {e}");
        }
        Err(e) => return Err(e),
    }
    let m = m_involution(inst)?;
    if m.exists {
        out.push_str(&code_fragment(inst)?);
    } else {
        out.push_str(&m_involution_line(&m));
        out.push_str("code=none\n");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    fn inst(p: crate::poset::FacePoset, l: crate::charfn::CharFunction, name: &str) -> Instance {
        Instance {
            name: name.into(),
            poset: p,
            lambda: Some(l),
            triangulation: None,
        }
    }

    #[test]
    fn triangle_fragments() {
        let (p, l) = standard::triangle();
        let t = inst(p, l, "triangle");
        assert!(formality_fragment(&t)
            .unwrap()
            .starts_with("hsiang=true criterion=surrogate-true h_identity=true agree=true mode=A\n"));
        assert_eq!(
            betti_fragment(&t).unwrap(),
            "betti=(1,1,1) sum=3 model=cone\nfixed_points=3\n"
        );
        assert_eq!(
            hvector_fragment(&t),
            "f_vector=(3,3)\nh_vector=(1,1,1)\ngorenstein pseudo_manifold=true euler=true\n"
        );
        assert!(matches!(code_fragment(&t), Err(Error::Precondition(_))));
    }

    #[test]
    fn cube_code_line() {
        let (p, l) = standard::cube(3);
        let text = code_fragment(&inst(p, l, "cube")).unwrap();
        assert!(text.starts_with("m_involution exists=true g=111\n"));
        assert!(text.contains("[8,4,4] self_dual=true\n"));
    }

    #[test]
    fn report_includes_fragments() {
        let (p, l) = standard::cube(3);
        let c = inst(p, l, "cube");
        let text = report_text(&c).unwrap();
        assert!(text.contains(&formality_fragment(&c).unwrap()));
        assert!(text.contains(&gkm_fragment(&c, None).unwrap()));
        assert!(text.ends_with(&code_fragment(&c).unwrap()));
        let r = build_report(&c).unwrap();
        assert_eq!(r.betti, vec![1, 3, 3, 1]);
        assert_eq!(r.code.unwrap().min_distance, 4);
    }

    #[test]
    fn annulus_report() {
        let a = standard::annulus();
        let text = report_text(&a).unwrap();
        assert!(
            text.contains("hsiang=false criterion=false h_identity=false agree=true mode=B\n"),
            "{text}"
        );
        assert!(text.contains("gkm=none\n"));
        assert!(text.contains("code=none\n"));
    }

    #[test]
    fn blowup_fragment() {
        let (p, l) = standard::triangle();
        let (cut, _, text) = blowup(&inst(p, l, "triangle"), "p12").unwrap();
        assert!(text.contains("vertices 3 -> 4 (face 1)"));
        assert!(text.contains("fixed_point_identity=true dimension_identity=true formality_preserved=true"));
        assert_eq!(
            betti_fragment(&cut).unwrap(),
            "betti=(1,2,1) sum=4 model=cone\nfixed_points=4\n"
        );
    }
}
