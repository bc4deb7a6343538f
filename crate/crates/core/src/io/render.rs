//! Human-readable and JSON renderings of a pipeline result, and trace files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::float::{BigFloat, ComplexBF};
use crate::io::json::{complex_to_json, real_to_json};
use crate::io::{poly_to_json, PolyJson};
use crate::pipeline::{PipelineTrace, SelectedBy, VolumeChoice, VolumeResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub m: [String; 2],
    pub z: [String; 2],
    pub v: [String; 2],
    pub factor: usize,
    pub real_positive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalvedJson {
    pub m0: [String; 2],
    pub minpoly: PolyJson,
    pub alpha0: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultJson {
    pub name: Option<String>,
    pub precision: u32,
    pub riley: PolyJson,
    pub p: PolyJson,
    pub q: PolyJson,
    pub s: PolyJson,
    pub f: PolyJson,
    pub m0: [String; 2],
    pub m0_minpoly: PolyJson,
    pub z0: [String; 2],
    pub alpha0: String,
    pub v0: [String; 2],
    /// Real part of the polished root of `F`.
    pub volume: String,
    pub halved: Option<HalvedJson>,
    pub candidates: Vec<CandidateJson>,
    pub volume_choice: VolumeChoice,
    pub trace: PipelineTrace,
}

#[derive(Debug, Error)]
pub enum TraceFileError {
    #[error("cannot access trace file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed trace file: {0}")]
    Json(#[from] serde_json::Error),
}

pub fn result_json(r: &VolumeResult) -> ResultJson {
    ResultJson {
        name: r.name.clone(),
        precision: r.precision,
        riley: poly_to_json(&r.riley),
        p: poly_to_json(&r.p_poly),
        q: poly_to_json(&r.q_poly),
        s: poly_to_json(&r.s_poly),
        f: poly_to_json(&r.f_poly),
        m0: complex_to_json(&r.m0),
        m0_minpoly: poly_to_json(&r.m0_minpoly),
        z0: complex_to_json(&r.z0),
        alpha0: real_to_json(&r.alpha0),
        v0: complex_to_json(&r.v0),
        volume: real_to_json(&r.volume.re),
        halved: r.halved.as_ref().map(|h| HalvedJson {
            m0: complex_to_json(&h.m0),
            minpoly: poly_to_json(&h.minpoly),
            alpha0: real_to_json(&h.alpha0),
        }),
        candidates: r
            .candidates
            .iter()
            .map(|c| CandidateJson {
                m: complex_to_json(&c.m),
                z: complex_to_json(&c.z),
                v: complex_to_json(&c.v),
                factor: c.factor,
                real_positive: c.real_positive,
            })
            .collect(),
        volume_choice: r.volume_choice,
        trace: r.trace.clone(),
    }
}

fn digits(x: &BigFloat) -> String {
    x.to_sci_string(BigFloat::decimal_digits(x.prec()).min(40))
}

fn complex(z: &ComplexBF) -> String {
    let (re, im) = (digits(&z.re), digits(&z.im));
    match im.strip_prefix('-') {
        Some(abs) => format!("{re} - {abs}*I"),
        None => format!("{re} + {im}*I"),
    }
}

fn by_name(b: SelectedBy) -> &'static str {
    match b {
        SelectedBy::Unique => "unique",
        SelectedBy::Witness => "witness",
        SelectedBy::Override => "override",
        SelectedBy::Volume => "volume",
    }
}

pub fn render_human(r: &VolumeResult) -> String {
    let mut out = String::new();
    if let Some(n) = &r.name {
        let _ = writeln!(out, "manifold: {n}");
    }
    let _ = writeln!(out, "F(V) = {}", r.f_poly);
    let _ = writeln!(out, "volume = {}", digits(&r.volume.re));
    let _ = writeln!(out, "m0 = {}", complex(&r.m0));
    let _ = writeln!(out, "  minimal polynomial {}", r.m0_minpoly);
    let _ = writeln!(out, "alpha0 = {}", digits(&r.alpha0));
    if let Some(h) = &r.halved {
        let _ = writeln!(out, "half angle: M0 = {}", complex(&h.m0));
        let _ = writeln!(out, "  minimal polynomial {}", h.minpoly);
        let _ = writeln!(out, "  alpha0 = {}", digits(&h.alpha0));
    }
    let _ = writeln!(out, "z0 = {}", complex(&r.z0));
    let _ = writeln!(out, "precision = {} bits", r.precision);
    out.push_str("choices:\n");
    for s in &r.trace.steps {
        if let (Some(i), Some(b)) = (s.selected, s.selected_by) {
            let _ = writeln!(out, "  step {:>2}: factor {} of {} ({})", s.step, i, s.factors.len(), by_name(b));
        }
    }
    out
}

pub fn render_result(r: &VolumeResult, format: Format) -> String {
    match format {
        Format::Human => render_human(r),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&result_json(r)).expect("result serialises");
            s.push('\n');
            s
        }
    }
}

pub fn trace_to_string(t: &PipelineTrace) -> String {
    let mut s = serde_json::to_string_pretty(t).expect("trace serialises");
    s.push('\n');
    s
}

pub fn write_trace(path: &Path, t: &PipelineTrace) -> Result<(), TraceFileError> {
    fs::write(path, trace_to_string(t))?;
    Ok(())
}

pub fn read_trace(path: &Path) -> Result<PipelineTrace, TraceFileError> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formatting() {
        let z = ComplexBF::from_f64(0.5, -0.25, 64);
        let s = complex(&z);
        assert!(s.contains(" - ") && s.ends_with("*I"), "{s}");
    }

    #[test]
    fn trace_roundtrip() {
        let t = PipelineTrace::default();
        let back: PipelineTrace = serde_json::from_str(&trace_to_string(&t)).unwrap();
        assert_eq!(back, t);
    }
}
