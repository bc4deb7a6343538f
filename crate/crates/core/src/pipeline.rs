//! The nineteen-step algorithm from an A-polynomial to the minimal
//! polynomial `F(V)` of the normalised Euclidean volume, with a full trace.
//!
//! Factor choices at steps 7, 10 and 15 are made by evaluating the
//! candidates at a numeric witness on the excellent component; step 18 uses
//! the numeric volume `2i / (3 M₀ Z₀)`. Any choice can be forced with a
//! per-step factor index, and the trace records every choice so a run can be
//! replayed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::GaussInt;
use crate::factor::{self, FactorError, Factorization};
use crate::float::{BigFloat, ComplexBF, MIN_PRECISION};
use crate::io::json::{complex_to_json, poly_to_json, PolyJson};
use crate::numerics::{
    self, arg_positive, select_factor, vanishing_score, zpoly_roots, NumericsError, Score,
    DEFAULT_PRECISION, DEFAULT_TOL_CIRCLE_BITS, DEFAULT_TOL_SELECT_BITS,
};
use crate::par;
use crate::poly::{Assignment, GaussPoly, IntPoly, MultiPoly, Var, VarSet};
use crate::resultant::{cross_check, resultant, ResultantError};

use Var::{Lbar, L, M, V, W, X, Y, Z};

pub const STEP_COUNT: u8 = 19;

/// Bits of the finite-difference step used for the Z-witness.
const SLOPE_STEP_BITS: i64 = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StageError {
    #[error("invalid A-polynomial: {0}")]
    InvalidInput(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error(transparent)]
    Resultant(#[from] ResultantError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("{0} is identically zero; the A-polynomial is degenerate")]
    Degenerate(&'static str),
    #[error("no factor qualifies ({0})")]
    NoCandidate(&'static str),
    #[error("{count} candidate factors and no witness; supply --witness-m/--witness-w or --factor-index")]
    WitnessRequired { count: usize },
    #[error("factor index {index} is not a candidate (factors: {len}, candidates: {candidates:?})")]
    BadOverride { index: usize, len: usize, candidates: Vec<usize> },
    #[error("no real-positive volume candidate; try a higher --precision")]
    NoVolumeCandidate,
    #[error("{count} real-positive volume candidates; supply --volume-hint or --factor-index 18=IDX")]
    AmbiguousVolume { count: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("step {step}: {kind}")]
pub struct PipelineError {
    pub step: u8,
    pub kind: StageError,
}

impl PipelineError {
    fn at(step: u8) -> impl Fn(StageError) -> PipelineError {
        move |kind| PipelineError { step, kind }
    }

    /// Process exit code: 2 usage, 3 ambiguous selection, 4 non-convergence.
    pub fn exit_code(&self) -> i32 {
        match &self.kind {
            StageError::InvalidInput(_) | StageError::InvalidWitness(_) | StageError::BadOverride { .. } => 2,
            StageError::WitnessRequired { .. }
            | StageError::AmbiguousVolume { .. }
            | StageError::Numerics(NumericsError::Ambiguous { .. }) => 3,
            StageError::Numerics(NumericsError::NonConvergence { .. })
            | StageError::Numerics(NumericsError::BranchDivergence { .. }) => 4,
            _ => 1,
        }
    }
}

fn err<E: Into<StageError>>(step: u8) -> impl Fn(E) -> PipelineError {
    move |e| PipelineError { step, kind: e.into() }
}

/// An A-polynomial in `M` and `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct APolynomial {
    pub poly: IntPoly,
    pub name: Option<String>,
    pub source: String,
}

impl APolynomial {
    pub fn new(poly: IntPoly, name: Option<String>, source: impl Into<String>) -> Result<Self, PipelineError> {
        let bad = |msg: String| PipelineError { step: 1, kind: StageError::InvalidInput(msg) };
        if poly.is_zero() {
            return Err(bad("the polynomial is zero".into()));
        }
        if !poly.support().is_subset(VarSet::of(&[M, L])) {
            return Err(bad(format!("only M and L may appear, found {}", poly.support())));
        }
        if poly.degree(M) == 0 || poly.degree(L) == 0 {
            return Err(bad("positive degree in both M and L is required".into()));
        }
        Ok(APolynomial { poly: poly.with_vars(VarSet::of(&[M, L])), name, source: source.into() })
    }
}

/// A point `(m, w)` on the excellent component: `m = exp(iα/2)` at a
/// hyperbolic cone angle and `w = exp(ℓ)` the real length parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricWitness {
    pub m: ComplexBF,
    pub w: ComplexBF,
    pub volume_hint: Option<f64>,
}

impl GeometricWitness {
    pub fn validate(&self, cfg: &PipelineConfig) -> Result<(), PipelineError> {
        let bad = |msg: String| PipelineError { step: 7, kind: StageError::InvalidWitness(msg) };
        let one = BigFloat::one(self.m.prec());
        if (&self.m.abs() - &one).log2_abs() >= -(cfg.tol_circle_bits as f64) {
            return Err(bad(format!("|m| must be 1 within 2^-{}", cfg.tol_circle_bits)));
        }
        if self.w.re.signum() <= 0 || self.w.im.log2_abs() >= -(cfg.tol_select_bits as f64) {
            return Err(bad("w must be real and positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub precision: u32,
    pub seed: u64,
    /// Step number to index into that step's factor list.
    pub factor_index_overrides: BTreeMap<u8, usize>,
    pub tol_circle_bits: u32,
    pub tol_select_bits: u32,
    /// Prefer `arg m0 ∈ [π/3, π/2)` among several volume candidates.
    pub two_bridge: bool,
    /// Also report `M₀` and `α₀` for the half angle.
    pub angle_halving: bool,
    /// Verify every resultant by an independent route.
    pub cross_check_resultants: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            precision: DEFAULT_PRECISION,
            seed: 0,
            factor_index_overrides: BTreeMap::new(),
            tol_circle_bits: DEFAULT_TOL_CIRCLE_BITS,
            tol_select_bits: DEFAULT_TOL_SELECT_BITS,
            two_bridge: false,
            angle_halving: false,
            cross_check_resultants: false,
        }
    }
}

/// How a factor was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectedBy {
    Unique,
    Witness,
    Override,
    Volume,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPoly {
    pub name: String,
    pub poly: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub poly: PolyJson,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: u8,
    pub action: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<NamedPoly>,
    pub factors: Vec<FactorRecord>,
    /// Indices into `factors` eligible for selection.
    pub candidates: Vec<usize>,
    pub selected: Option<usize>,
    pub selected_by: Option<SelectedBy>,
    /// Selection scores aligned with `candidates`; `null` is an exact zero.
    pub scores: Vec<Score>,
    pub notes: Vec<String>,
}

impl StepRecord {
    fn new(step: u8, action: &str) -> Self {
        StepRecord {
            step,
            action: action.into(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            factors: Vec::new(),
            candidates: Vec::new(),
            selected: None,
            selected_by: None,
            scores: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn inputs(mut self, names: &[&str]) -> Self {
        self.inputs = names.iter().map(|s| s.to_string()).collect();
        self
    }

    fn output<C: crate::coeff::Coeff>(mut self, name: &str, p: &MultiPoly<C>) -> Self {
        self.outputs.push(NamedPoly { name: name.into(), poly: poly_to_json(p) });
        self
    }

    fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub steps: Vec<StepRecord>,
}

impl PipelineTrace {
    /// The factor choices of this trace as overrides for a replay.
    pub fn overrides(&self) -> BTreeMap<u8, usize> {
        self.steps.iter().filter_map(|s| s.selected.map(|i| (s.step, i))).collect()
    }

    /// Steps 1 to 19, each exactly once and in order.
    pub fn is_complete(&self) -> bool {
        self.steps.len() == STEP_COUNT as usize && self.steps.iter().zip(1..=STEP_COUNT).all(|(s, k)| s.step == k)
    }
}

/// One candidate `v = 2i / (3 m z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeCandidate {
    pub m: ComplexBF,
    pub z: ComplexBF,
    pub v: ComplexBF,
    /// Index of the factor of `R(M, 1)` vanishing at `m`.
    pub factor: usize,
    pub real_positive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeChoice {
    Unique,
    Hint,
    TwoBridge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericVolume {
    pub m0: ComplexBF,
    pub m0_minpoly: IntPoly,
    pub alpha0: BigFloat,
    pub z0: ComplexBF,
    pub v0: ComplexBF,
    pub candidates: Vec<VolumeCandidate>,
    pub chosen: usize,
    pub chosen_by: VolumeChoice,
}

/// `M₀` and `α₀` for the half angle: `m0 = M₀²`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalvedAngle {
    pub m0: ComplexBF,
    pub minpoly: IntPoly,
    pub alpha0: BigFloat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VolumeResult {
    pub name: Option<String>,
    pub riley: IntPoly,
    pub p_poly: IntPoly,
    pub q_poly: IntPoly,
    pub s_poly: IntPoly,
    pub f_poly: IntPoly,
    pub m0: ComplexBF,
    pub m0_minpoly: IntPoly,
    pub z0: ComplexBF,
    pub alpha0: BigFloat,
    /// `2i / (3 m0 z0)`.
    pub v0: ComplexBF,
    /// The root of `F` next to `v0`, Newton-polished.
    pub volume: ComplexBF,
    pub halved: Option<HalvedAngle>,
    pub candidates: Vec<VolumeCandidate>,
    pub volume_choice: VolumeChoice,
    pub precision: u32,
    pub trace: PipelineTrace,
}

/// `Res_v(f, g)`, cross-checked when the configuration asks for it.
fn eliminate<C: crate::coeff::Coeff>(
    f: &MultiPoly<C>,
    g: &MultiPoly<C>,
    v: Var,
    step: u8,
    cfg: &PipelineConfig,
) -> Result<MultiPoly<C>, PipelineError> {
    let r = resultant(f, g, v).map_err(err(step))?;
    if cfg.cross_check_resultants {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((step as u64) << 56) ^ v.index() as u64);
        cross_check(f, g, v, &r, &mut rng).map_err(err(step))?;
    }
    Ok(r)
}

/// Output of a stage together with its step records.
pub type Stage<T> = Result<(T, Vec<StepRecord>), PipelineError>;

fn factor_records(f: &Factorization) -> Vec<FactorRecord> {
    f.factors.iter().map(|(p, m)| FactorRecord { poly: poly_to_json(p), multiplicity: *m }).collect()
}

/// Choose among the factors of `fac` passing `eligible`, by override, by
/// uniqueness, or by vanishing at the point produced by `point`.
fn choose(
    step: u8,
    fac: &Factorization,
    eligible: impl Fn(&IntPoly) -> bool,
    what: &'static str,
    point: impl FnOnce() -> Result<Option<Assignment>, PipelineError>,
    by: SelectedBy,
    cfg: &PipelineConfig,
    mut rec: StepRecord,
) -> Result<(IntPoly, StepRecord), PipelineError> {
    let candidates: Vec<usize> = (0..fac.factors.len()).filter(|&i| eligible(&fac.factors[i].0)).collect();
    rec.factors = factor_records(fac);
    rec.candidates = candidates.clone();
    let e = PipelineError::at(step);
    let (index, selected_by) = if let Some(&i) = cfg.factor_index_overrides.get(&step) {
        if !candidates.contains(&i) {
            return Err(e(StageError::BadOverride { index: i, len: fac.factors.len(), candidates }));
        }
        (i, SelectedBy::Override)
    } else {
        match candidates.len() {
            0 => return Err(e(StageError::NoCandidate(what))),
            1 => (candidates[0], SelectedBy::Unique),
            n => {
                let Some(pt) = point()? else {
                    return Err(e(StageError::WitnessRequired { count: n }));
                };
                let polys: Vec<IntPoly> = candidates.iter().map(|&i| fac.factors[i].0.clone()).collect();
                let sel = select_factor(&polys, &pt, cfg.tol_select_bits).map_err(err(step))?;
                rec.scores = sel.scores;
                (candidates[sel.index], by)
            }
        }
    };
    rec.selected = Some(index);
    rec.selected_by = Some(selected_by);
    Ok((fac.factors[index].0.clone(), rec))
}

/// `Â(M, L̄) = M^d A(1/M, L̄)` with `d = deg_M A`.
pub fn hat_transform(a: &APolynomial) -> IntPoly {
    a.poly.rename(L, Lbar).reverse_in(M)
}

fn witness_point(witness: Option<&GeometricWitness>, second: Var, value: impl Fn(&ComplexBF) -> ComplexBF) -> Option<Assignment> {
    witness.map(|w| {
        let mut pt = Assignment::new();
        pt.insert(M, w.m.clone());
        pt.insert(second, value(&w.w));
        pt
    })
}

/// Steps 1 to 7: the Riley polynomial `R(M, W)`.
pub fn riley_polynomial(a: &APolynomial, witness: Option<&GeometricWitness>, cfg: &PipelineConfig) -> Stage<IntPoly> {
    let mut recs = Vec::new();
    let d = a.poly.degree(M);
    recs.push(StepRecord::new(1, "d = deg_M A").inputs(&["A"]).output("A", &a.poly).note(format!("d = {d}")));
    recs.push(StepRecord::new(2, "introduce Lbar").note("Lbar stands for the conjugate of L"));
    recs.push(StepRecord::new(3, "introduce W").note("W = L*Lbar = exp(l)"));
    let hat = hat_transform(a);
    recs.push(StepRecord::new(4, "Ahat = M^d * A(1/M, Lbar)").inputs(&["A"]).output("Ahat", &hat));
    let link = &IntPoly::var(W) - &(&IntPoly::var(L) * &IntPoly::var(Lbar));
    let r1 = eliminate(&hat, &link, Lbar, 5, cfg)?;
    recs.push(StepRecord::new(5, "R1 = Res_Lbar(Ahat, W - L*Lbar)").inputs(&["Ahat"]).output("R1", &r1));
    let r2 = eliminate(&a.poly, &r1, L, 6, cfg)?;
    if r2.is_zero() {
        return Err(PipelineError { step: 6, kind: StageError::Degenerate("Res_L(A, R1)") });
    }
    recs.push(StepRecord::new(6, "R2 = Res_L(A, R1)").inputs(&["A", "R1"]).output("R2", &r2));
    let fac = factor::factor_bivariate(&r2, cfg.seed).map_err(err(7))?;
    let rec = StepRecord::new(7, "factor R2, isolate R(M, W)").inputs(&["R2"]);
    let (riley, rec) = choose(
        7,
        &fac,
        |f| f.degree(M) > 0 && f.degree(W) > 0,
        "positive degree in M and W",
        || Ok(witness_point(witness, W, Clone::clone)),
        SelectedBy::Witness,
        cfg,
        rec,
    )?;
    recs.push(rec.output("R", &riley));
    Ok((riley, recs))
}

/// Steps 8 to 10: `P(M, Y)`, the minimal polynomial of `Y = (W - 1)²`.
pub fn y_min_poly(riley: &IntPoly, witness: Option<&GeometricWitness>, cfg: &PipelineConfig) -> Stage<IntPoly> {
    let mut recs = Vec::new();
    let shift = &(&IntPoly::var(W) - &IntPoly::var(X)) - &IntPoly::one();
    let r1 = eliminate(riley, &shift, W, 8, cfg)?;
    recs.push(StepRecord::new(8, "R1 = Res_W(R, W - X - 1)").inputs(&["R"]).output("R1", &r1));
    let square = &IntPoly::var(Y) - &IntPoly::var(X).pow(2);
    let r2 = eliminate(&r1, &square, X, 9, cfg)?;
    if r2.is_zero() {
        return Err(PipelineError { step: 9, kind: StageError::Degenerate("Res_X(R1, Y - X^2)") });
    }
    recs.push(StepRecord::new(9, "R2 = Res_X(R1, Y - X^2)").inputs(&["R1"]).output("R2", &r2));
    let fac = factor::factor_bivariate(&r2, cfg.seed).map_err(err(10))?;
    let rec = StepRecord::new(10, "factor R2, isolate P(M, Y)").inputs(&["R2"]);
    let one = ComplexBF::one(cfg.precision);
    let (p, rec) = choose(
        10,
        &fac,
        |f| f.degree(Y) > 0,
        "positive degree in Y",
        || {
            Ok(witness_point(witness, Y, |w| {
                let x = w - &one;
                &x * &x
            }))
        },
        SelectedBy::Witness,
        cfg,
        rec,
    )?;
    recs.push(rec.output("P", &p));
    Ok((p, recs))
}

/// `Q = ∂P/∂M + (∂P/∂Y) Z`.
pub fn implicit_derivative_poly(p: &IntPoly) -> IntPoly {
    &p.derivative(M) + &(&p.derivative(Y) * &IntPoly::var(Z))
}

/// Steps 11 to 13.
fn q_steps(p: &IntPoly) -> (IntPoly, Vec<StepRecord>) {
    let q = implicit_derivative_poly(p);
    let recs = vec![
        StepRecord::new(11, "Y = Y(M), Y' = dY/dM").note("implicit function on the branch of P"),
        StepRecord::new(12, "d/dM P(M, Y(M))")
            .inputs(&["P"])
            .output("dP/dM", &p.derivative(M))
            .output("dP/dY", &p.derivative(Y))
            .note("R1 = dP/dM + dP/dY * Y'"),
        StepRecord::new(13, "Q = R1 with Y' -> Z").inputs(&["P"]).output("Q", &q),
    ];
    (q, recs)
}

/// `dY/dM` on the branch of `P` through `(m, y)`, by a five-point central
/// difference with step `2^-32` in `M`.
pub fn branch_slope(p: &IntPoly, m: &ComplexBF, y: &ComplexBF) -> Result<ComplexBF, NumericsError> {
    let prec = m.prec().max(y.prec());
    let y = numerics::newton_refine(p, M, Y, m, y)
        .ok_or_else(|| NumericsError::BranchDivergence { at: format!("M = {m:.12}") })?;
    let h = ComplexBF::one(prec).mul_pow2(-SLOPE_STEP_BITS);
    let at = |k: i64| -> Result<ComplexBF, NumericsError> {
        let x1 = m + &h.mul_real(&BigFloat::from_i64(k, prec));
        numerics::track_branch(p, M, Y, m, &y, &x1)
    };
    let (a, b, c, d) = (at(2)?, at(1)?, at(-1)?, at(-2)?);
    let eight = BigFloat::from_i64(8, prec);
    let num = &(&(&b - &c).mul_real(&eight) - &a) + &d;
    Ok(num.mul_real(&BigFloat::from_i64(12, prec).recip()).mul_pow2(SLOPE_STEP_BITS))
}

/// Steps 14 and 15: `S(M, Z)`, the minimal polynomial of `Z = Y'`.
pub fn z_min_poly(p: &IntPoly, q: &IntPoly, witness: Option<&GeometricWitness>, cfg: &PipelineConfig) -> Stage<IntPoly> {
    let mut recs = Vec::new();
    let r2 = eliminate(p, q, Y, 14, cfg)?;
    if r2.is_zero() {
        return Err(PipelineError { step: 14, kind: StageError::Degenerate("Res_Y(P, Q)") });
    }
    recs.push(StepRecord::new(14, "R2 = Res_Y(P, Q)").inputs(&["P", "Q"]).output("R2", &r2));
    let fac = factor::factor_bivariate(&r2, cfg.seed).map_err(err(15))?;
    let rec = StepRecord::new(15, "factor R2, isolate S(M, Z)").inputs(&["R2"]);
    let mut slope_note = None;
    let (s, mut rec) = choose(
        15,
        &fac,
        |f| f.degree(Z) > 0,
        "positive degree in Z",
        || {
            let Some(w) = witness else { return Ok(None) };
            let one = ComplexBF::one(cfg.precision);
            let x = &w.w - &one;
            let z = branch_slope(p, &w.m, &(&x * &x)).map_err(err(15))?;
            slope_note = Some(format!("Z-witness dY/dM = {z:.30}"));
            let mut pt = Assignment::new();
            pt.insert(M, w.m.clone());
            pt.insert(Z, z);
            Ok(Some(pt))
        },
        SelectedBy::Witness,
        cfg,
        rec,
    )?;
    if let Some(n) = slope_note {
        rec = rec.note(n);
    }
    recs.push(rec.output("S", &s));
    Ok((s, recs))
}

fn in_upper_range(m: &ComplexBF, prec: u32) -> bool {
    let a = arg_positive(m);
    let slack = BigFloat::one(prec).mul_pow2(-(prec as i64 / 2));
    let pi = BigFloat::pi(prec);
    a > slack && a < &pi + &slack
}

/// Candidates `(m, z, v)` with `m` a unit-circle root of `R(M, 1)` with
/// `arg m ∈ (0, π]`, `z` a root of `S(m, Z)` and `v = 2i / (3 m z)`; the
/// chosen one gives `M₀`, `Z₀` and the volume.
pub fn numeric_volume(
    riley: &IntPoly,
    s: &IntPoly,
    cfg: &PipelineConfig,
    witness: Option<&GeometricWitness>,
) -> Result<NumericVolume, PipelineError> {
    let step = 18;
    let prec = cfg.precision.max(MIN_PRECISION);
    let r1 = riley.eval_at(W, &BigInt::from(1));
    let fac = factor::factor_univariate(&r1, cfg.seed).map_err(err(step))?;
    let mus: Vec<IntPoly> = fac.polys();
    let per_factor = par::map_range(mus.len(), |k| -> Result<Vec<VolumeCandidate>, PipelineError> {
        let mu = &mus[k];
        let ms: Vec<ComplexBF> = numerics::unit_circle_roots(mu, prec, cfg.tol_circle_bits)
            .map_err(err(step))?
            .into_iter()
            .filter(|m| in_upper_range(m, prec))
            .collect();
        if ms.is_empty() {
            return Ok(Vec::new());
        }
        let norm = eliminate(mu, s, M, step, cfg)?;
        let Some(nz) = factor::ZPoly::from_multi(&norm, Z).filter(|n| n.degree() > 0) else {
            return Ok(Vec::new());
        };
        let zs = zpoly_roots(&nz, prec).map_err(err(step))?.roots;
        let two_i = ComplexBF::i(prec).mul_pow2(1);
        let three = ComplexBF::from_int(&BigInt::from(3), prec);
        let mut out = Vec::new();
        for m in &ms {
            for z in zs.iter().filter(|z| !z.is_zero()) {
                let mut pt = Assignment::new();
                pt.insert(M, m.clone());
                pt.insert(Z, z.clone());
                let score = vanishing_score(s, &pt).map_err(err(step))?;
                if score.is_some_and(|x| x >= -(cfg.tol_select_bits as f64)) {
                    continue;
                }
                let v = &two_i / &(&(&three * m) * z);
                let real_positive =
                    v.re.signum() > 0 && v.im.log2_abs() < v.re.log2_abs() - cfg.tol_select_bits as f64;
                out.push(VolumeCandidate { m: m.clone(), z: z.clone(), v, factor: k, real_positive });
            }
        }
        Ok(out)
    });
    let mut candidates = Vec::new();
    for c in per_factor {
        candidates.extend(c?);
    }
    let positive: Vec<usize> = (0..candidates.len()).filter(|&i| candidates[i].real_positive).collect();
    let (chosen, chosen_by) = pick_volume(&candidates, &positive, cfg, witness).map_err(err(step))?;
    let c = &candidates[chosen];
    Ok(NumericVolume {
        m0: c.m.clone(),
        m0_minpoly: mus[c.factor].clone(),
        alpha0: arg_positive(&c.m).mul_pow2(1),
        z0: c.z.clone(),
        v0: ComplexBF::real(c.v.re.clone()),
        chosen,
        chosen_by,
        candidates,
    })
}

fn pick_volume(
    candidates: &[VolumeCandidate],
    positive: &[usize],
    cfg: &PipelineConfig,
    witness: Option<&GeometricWitness>,
) -> Result<(usize, VolumeChoice), StageError> {
    match positive.len() {
        0 => return Err(StageError::NoVolumeCandidate),
        1 => return Ok((positive[0], VolumeChoice::Unique)),
        _ => {}
    }
    if let Some(hint) = witness.and_then(|w| w.volume_hint) {
        let dist = |i: usize| (candidates[i].v.re.to_f64() - hint).abs();
        let mut order = positive.to_vec();
        order.sort_by(|&a, &b| dist(a).total_cmp(&dist(b)));
        if dist(order[0]) < dist(order[1]) {
            return Ok((order[0], VolumeChoice::Hint));
        }
    }
    if cfg.two_bridge {
        let lo = std::f64::consts::FRAC_PI_3;
        let hi = std::f64::consts::FRAC_PI_2;
        let inside: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&i| {
                let a = arg_positive(&candidates[i].m).to_f64();
                a >= lo && a < hi
            })
            .collect();
        if inside.len() == 1 {
            return Ok((inside[0], VolumeChoice::TwoBridge));
        }
    }
    Err(StageError::AmbiguousVolume { count: positive.len() })
}

fn volume_note(c: &VolumeCandidate, k: usize) -> String {
    format!(
        "candidate {k}: m = {:.20}, z = {:.20}, v = {:.20}{}",
        c.m,
        c.z,
        c.v,
        if c.real_positive { " (real positive)" } else { "" }
    )
}

/// Steps 16 to 19: `F(V)`, selected by the numeric volume `nv.v0`.
pub fn volume_min_poly(riley: &IntPoly, s: &IntPoly, nv: &NumericVolume, cfg: &PipelineConfig) -> Stage<IntPoly> {
    let mut recs = Vec::new();
    let mzv = &(&GaussPoly::var(M) * &GaussPoly::var(Z)) * &GaussPoly::var(V);
    let lin = &mzv.scale(&GaussInt::new(3, 0)) - &GaussPoly::constant(GaussInt::new(0, 2));
    let r1m = riley.eval_at(W, &BigInt::from(1));
    recs.push(
        StepRecord::new(16, "R1 = 3*M*Z*V - 2*I, R2 = R(M, 1)")
            .inputs(&["R"])
            .output("R1", &lin)
            .output("R2", &r1m),
    );
    let r3 = eliminate(&lin, &s.to_gauss(), Z, 17, cfg)?;
    let r4 = eliminate(&r1m.to_gauss(), &r3, M, 17, cfg)?;
    if r4.is_zero() {
        return Err(PipelineError { step: 17, kind: StageError::Degenerate("R4") });
    }
    recs.push(
        StepRecord::new(17, "R3 = Res_Z(R1, S), R4 = Res_M(R2, R3)")
            .inputs(&["R1", "R2", "S"])
            .output("R3", &r3)
            .output("R4", &r4),
    );
    let rational = factor::rationalize_gaussian(&r4);
    let fac = factor::factor_univariate(&rational, cfg.seed).map_err(err(18))?;
    let mut rec = StepRecord::new(18, "factor R4, isolate F(V)")
        .inputs(&["R4"])
        .output("R4 * conj(R4)", &rational)
        .note(format!("m0 = {:.40}", nv.m0))
        .note(format!("z0 = {:.40}", nv.z0))
        .note(format!("v0 = {:.40}", nv.v0))
        .note(format!("volume choice: {:?}", nv.chosen_by));
    for (k, c) in nv.candidates.iter().enumerate() {
        rec = rec.note(volume_note(c, k));
    }
    let mut pt = Assignment::new();
    pt.insert(V, nv.v0.clone());
    let (f, rec) = choose(18, &fac, |g| g.degree(V) > 0, "positive degree in V", || Ok(Some(pt)), SelectedBy::Volume, cfg, rec)?;
    recs.push(rec.output("F", &f));
    recs.push(StepRecord::new(19, "output F(V)").inputs(&["F"]).output("F", &f));
    Ok((f, recs))
}

/// The factor of `μ(M²)` vanishing at the square root of `m0` with
/// argument in `(0, π/2]`.
pub fn halve_angle(minpoly: &IntPoly, m0: &ComplexBF, cfg: &PipelineConfig) -> Result<HalvedAngle, PipelineError> {
    let sq = minpoly.compose(M, &IntPoly::var(M).pow(2));
    let fac = factor::factor_univariate(&sq, cfg.seed).map_err(err(18))?;
    let root = m0.sqrt();
    let mut pt = Assignment::new();
    pt.insert(M, root.clone());
    let polys = fac.polys();
    let sel = select_factor(&polys, &pt, cfg.tol_select_bits).map_err(err(18))?;
    Ok(HalvedAngle { alpha0: arg_positive(&root).mul_pow2(1), m0: root, minpoly: polys[sel.index].clone() })
}

/// All stages in order.
pub fn run_pipeline(a: &APolynomial, witness: Option<&GeometricWitness>, cfg: &PipelineConfig) -> Result<VolumeResult, PipelineError> {
    if cfg.precision < MIN_PRECISION {
        return Err(PipelineError {
            step: 1,
            kind: StageError::InvalidInput(format!("precision must be at least {MIN_PRECISION} bits")),
        });
    }
    let witness = witness
        .map(|w| -> Result<GeometricWitness, PipelineError> {
            w.validate(cfg)?;
            Ok(GeometricWitness { m: w.m.with_prec(cfg.precision), w: w.w.with_prec(cfg.precision), volume_hint: w.volume_hint })
        })
        .transpose()?;
    let witness = witness.as_ref();
    let mut trace = PipelineTrace::default();
    let (riley, recs) = riley_polynomial(a, witness, cfg)?;
    trace.steps.extend(recs);
    let (p, recs) = y_min_poly(&riley, witness, cfg)?;
    trace.steps.extend(recs);
    let (q, recs) = q_steps(&p);
    trace.steps.extend(recs);
    let (s, recs) = z_min_poly(&p, &q, witness, cfg)?;
    trace.steps.extend(recs);
    let nv = numeric_volume(&riley, &s, cfg, witness)?;
    let (f, recs) = volume_min_poly(&riley, &s, &nv, cfg)?;
    trace.steps.extend(recs);
    let volume = numerics::polish_root(&f, V, &nv.v0).unwrap_or_else(|| nv.v0.clone());
    let halved = if cfg.angle_halving { Some(halve_angle(&nv.m0_minpoly, &nv.m0, cfg)?) } else { None };
    debug_assert!(trace.is_complete());
    Ok(VolumeResult {
        name: a.name.clone(),
        riley,
        p_poly: p,
        q_poly: q,
        s_poly: s,
        f_poly: f,
        m0: nv.m0,
        m0_minpoly: nv.m0_minpoly,
        z0: nv.z0,
        alpha0: nv.alpha0,
        v0: nv.v0,
        volume,
        halved,
        candidates: nv.candidates,
        volume_choice: nv.chosen_by,
        precision: cfg.precision,
        trace,
    })
}

/// `[re, im]` decimal pairs of the key numeric values, for rendering.
pub fn numeric_summary(r: &VolumeResult) -> BTreeMap<&'static str, [String; 2]> {
    let mut out = BTreeMap::new();
    out.insert("m0", complex_to_json(&r.m0));
    out.insert("z0", complex_to_json(&r.z0));
    out.insert("volume", complex_to_json(&r.volume));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_poly_expr;

    fn poly(s: &str, vars: &[Var]) -> IntPoly {
        parse_poly_expr(s, VarSet::of(vars)).unwrap()
    }

    #[test]
    fn hat_examples() {
        let a = APolynomial::new(poly("M*L", &[M, L]), None, "test").unwrap();
        assert_eq!(hat_transform(&a), IntPoly::var(Lbar));
        let a41 = APolynomial::new(poly("M^4 + L*(-M^8 + M^6 + 2*M^4 + M^2 - 1) + L^2*M^4", &[M, L]), None, "test").unwrap();
        let h = hat_transform(&a41);
        assert_eq!(h, a41.poly.rename(L, Lbar));
        assert!(APolynomial::new(poly("L + 1", &[M, L]), None, "t").is_err());
        let deg0 = poly("L + 1", &[M, L]);
        let a0 = APolynomial { poly: deg0, name: None, source: "t".into() };
        assert_eq!(hat_transform(&a0), poly("Lbar + 1", &[Lbar]));
    }

    #[test]
    fn toy_chains() {
        let cfg = PipelineConfig::default();
        let (p, _) = y_min_poly(&poly("W - M", &[M, W]), None, &cfg).unwrap();
        assert_eq!(p, poly("Y - (M - 1)^2", &[M, Y]).normal_sign());
        let (p, _) = y_min_poly(&poly("W - 1", &[M, W]), None, &cfg).unwrap();
        assert_eq!(p, IntPoly::var(Y));
        let q = implicit_derivative_poly(&poly("Y - M^2", &[M, Y]));
        assert_eq!(q, poly("Z - 2*M", &[M, Y, Z]));
        assert_eq!(implicit_derivative_poly(&IntPoly::var(Y)), IntPoly::var(Z));
        let p = poly("Y - M^3", &[M, Y]);
        let (s, _) = z_min_poly(&p, &implicit_derivative_poly(&p), None, &cfg).unwrap();
        assert_eq!(s, poly("Z - 3*M^2", &[M, Z]).normal_sign());
    }

    #[test]
    fn slope_matches_derivative() {
        let p = poly("Y - M^3", &[M, Y]);
        let m = ComplexBF::from_f64(0.6, 0.8, 256);
        let y = &(&m * &m) * &m;
        let z = branch_slope(&p, &m, &y).unwrap();
        let exact = (&m * &m).mul_real(&BigFloat::from_i64(3, 256));
        assert!(numerics::close_to(&z, &exact, 100.0));
    }

    #[test]
    fn degenerate_input() {
        // R2 = ±(M - 1)^2 (W - 1): no factor involves both M and W
        let a = APolynomial::new(poly("(M - 1)*(L + 1)", &[M, L]), None, "t").unwrap();
        let e = riley_polynomial(&a, None, &PipelineConfig::default()).unwrap_err();
        assert_eq!(e.step, 7);
        assert!(matches!(e.kind, StageError::NoCandidate(_)));
    }
}
