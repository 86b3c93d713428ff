use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{RunConfig, Suite};
use crate::algebra::{
    c, embed, hermitian_eigen, identity, kron, no_signaling_check, product_state, random_hermitian,
    random_unitary, statistical_independence_check, trace, DensityState, Matrix, MatrixAlgebra,
    Pauli,
};
use crate::geometry::{diamond_cells_tsv, diamond_decomposition, Region, Window};
use crate::lattice_field::{
    cone_suppression, domain_of_dependence_check, pauli_jordan_row, spectrum_condition_check,
    CauchyData, CommutatorTable, LatticeSpec, SiteInterval,
};
use crate::net_verifier::{
    build_net, check_isotony, check_microcausality, check_slice_generation, random_nested_pairs,
    replay_lpc_proof, sub_slice_control, CylinderSpec, LocalNet,
};
use crate::protocols::{
    deviation_tsv, fermi_deviation_curve, ground_pair, sorkin_signaling_gap, BrickWallCircuit,
    FermiSetup, ProtocolError, SorkinSetup,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Check,
    /// Expected-failure demonstration; never affects the exit code.
    Control,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub kind: CheckKind,
    pub pass: bool,
    pub metrics: BTreeMap<String, Value>,
    pub detail: String,
}

impl CheckResult {
    fn new(id: &str, kind: CheckKind, pass: bool, metrics: Value, detail: impl Into<String>) -> Self {
        let metrics = match metrics {
            Value::Object(m) => m.into_iter().collect(),
            Value::Null => BTreeMap::new(),
            other => BTreeMap::from([("value".to_string(), other)]),
        };
        Self {
            id: id.into(),
            kind,
            pass,
            metrics,
            detail: detail.into(),
        }
    }

    fn check(id: &str, pass: bool, metrics: Value, detail: impl Into<String>) -> Self {
        Self::new(id, CheckKind::Check, pass, metrics, detail)
    }

    fn control(id: &str, pass: bool, metrics: Value, detail: impl Into<String>) -> Self {
        Self::new(id, CheckKind::Control, pass, metrics, detail)
    }

    fn errored(id: &str, err: impl std::fmt::Display) -> Self {
        Self::check(id, false, Value::Null, format!("error: {err}"))
    }
}

/// Checks plus plot files of one suite.
#[derive(Debug, Default)]
pub struct SuiteOutput {
    pub checks: Vec<CheckResult>,
    pub files: Vec<(&'static str, String)>,
}

pub fn run_one(suite: Suite, cfg: &RunConfig) -> SuiteOutput {
    match suite {
        Suite::Geometry => geometry(cfg),
        Suite::Algebra => algebra(cfg),
        Suite::Lattice => lattice(cfg),
        Suite::Protocols => protocols(cfg),
        Suite::Net => net(cfg),
        Suite::All => unreachable!("expanded before dispatch"),
    }
}

/// Per-suite stream so suites stay independent of each other's draws.
fn rng_for(cfg: &RunConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    rng
}

// ---- geometry ----

/// Cylinder half-width and half-height.
const CYL_A: f64 = 3.0;
const CYL_TAU: f64 = 2.0;
const SHAPE_TOL: f64 = 0.02;

fn count_where(w: Window, pred: impl Fn(f64, f64) -> bool) -> usize {
    let g = w.grid();
    (0..g.rows)
        .flat_map(|r| (0..g.cols).map(move |c| (r, c)))
        .filter(|&(r, c)| {
            let (t, x) = w.center(r, c);
            pred(t, x)
        })
        .count()
}

fn rel_err(got: usize, exact: usize) -> f64 {
    (got as f64 - exact as f64).abs() / exact.max(1) as f64
}

fn geometry(cfg: &RunConfig) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let w = match Window::new(cfg.window.0, cfg.window.1, cfg.h) {
        Ok(w) => w,
        Err(e) => {
            out.checks.push(CheckResult::errored("geometry.diamond", e));
            return out;
        }
    };
    match diamond_decomposition(CYL_A, CYL_TAU, w) {
        Ok(dec) => {
            let reach = CYL_A + CYL_TAU;
            let exact = count_where(w, |t, x| t.abs() + x.abs() < reach);
            let got = dec.diamond.len();
            let err = rel_err(got, exact);
            out.checks.push(CheckResult::check(
                "geometry.diamond",
                err <= SHAPE_TOL,
                json!({"cells": got, "exact_cells": exact, "relative_error": err, "tolerance": SHAPE_TOL}),
                format!("double complement of cylinder({CYL_A}, {CYL_TAU}) against |t|+|x| < {reach}"),
            ));

            let dep = dec.cylinder.domain_of_dependence();
            let lens = count_where(w, |t, x| x.abs() < CYL_A && t.abs() + x.abs() < reach);
            let err = rel_err(dep.len(), lens);
            let strict = dep.is_subset(&dec.diamond) && dep.len() < dec.diamond.len();
            out.checks.push(CheckResult::check(
                "geometry.lens",
                err <= SHAPE_TOL && strict,
                json!({"cells": dep.len(), "exact_cells": lens, "relative_error": err, "strictly_inside_diamond": strict}),
                "domain of dependence of the cylinder against the exact lens",
            ));

            let counts = dec.counts();
            out.checks.push(CheckResult::check(
                "geometry.tiling",
                dec.tiles(),
                json!({"cylinder": counts.cylinder, "caps_t": counts.caps_t, "caps_r": counts.caps_r, "diamond": counts.diamond}),
                "cylinder, time caps and space caps partition the diamond",
            ));

            let comp = dec.cylinder.causal_complement();
            let g = w.grid();
            let mut mismatches = 0usize;
            let mut checked = 0usize;
            for r in 0..g.rows {
                for col in 0..g.cols {
                    let (t, x) = w.center(r, col);
                    let margin = x.abs() - t.abs() - reach;
                    if margin.abs() > w.h {
                        checked += 1;
                        mismatches += usize::from(comp.contains(r, col) != (margin > 0.0));
                    }
                }
            }
            out.checks.push(CheckResult::check(
                "geometry.wedges",
                mismatches == 0,
                json!({"cells_checked": checked, "mismatches": mismatches}),
                format!("complement against |x| > |t| + {reach}, one cell away from the edge"),
            ));
            out.files.push(("diamond_cells.tsv", diamond_cells_tsv(&dec)));
        }
        Err(e) => out.checks.push(CheckResult::errored("geometry.diamond", e)),
    }
    out.checks.push(galois(cfg));
    out
}

fn galois(cfg: &RunConfig) -> CheckResult {
    const REGIONS: usize = 100;
    let w = Window::new(3.0, 3.0, 0.5).expect("fixed window");
    let g = w.grid();
    let mut rng = rng_for(cfg, 1);
    let mut extensive = 0;
    let mut closed = 0;
    for _ in 0..REGIONS {
        let cells: Vec<_> = (0..g.rows)
            .flat_map(|r| (0..g.cols).map(move |c| (r, c)))
            .filter(|_| rng.random_bool(0.08))
            .collect();
        let o = Region::from_cells(w, cells).expect("cells in range");
        let c1 = o.causal_complement();
        let c2 = c1.causal_complement();
        let c3 = c2.causal_complement();
        extensive += usize::from(o.is_subset(&c2));
        closed += usize::from(c3.cells() == c1.cells());
    }
    CheckResult::check(
        "geometry.galois",
        extensive == REGIONS && closed == REGIONS,
        json!({"regions": REGIONS, "extensive": extensive, "triple_is_single": closed}),
        "o ⊆ o'' and o''' = o' on random regions of a 12x12 grid",
    )
}

// ---- algebra ----

const EXACT_TOL: f64 = 1e-12;

fn block_generators(shape: &[(usize, usize)], count: usize, rng: &mut ChaCha8Rng) -> Vec<Matrix> {
    let d: usize = shape.iter().map(|(n, m)| n * m).sum();
    let u = random_unitary(d, rng);
    (0..count)
        .map(|_| {
            let mut x = Matrix::zeros(d, d);
            let mut off = 0;
            for &(n, m) in shape {
                let y = random_hermitian(n, rng) + random_hermitian(n, rng) * c(0.0, 1.0);
                x.view_mut((off, off), (n * m, n * m))
                    .copy_from(&y.kronecker(&identity(m)));
                off += n * m;
            }
            &u * x * u.adjoint()
        })
        .collect()
}

/// Hermitian `x / ‖x‖` in operator norm.
fn unit_norm(x: Matrix) -> Matrix {
    let (vals, _) = hermitian_eigen(&x);
    let norm = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if norm > 0.0 {
        x / c(norm, 0.0)
    } else {
        x
    }
}

fn random_state(d: usize, rng: &mut ChaCha8Rng) -> DensityState {
    let g = random_hermitian(d, rng) + random_hermitian(d, rng) * c(0.0, 1.0);
    let rho = &g * g.adjoint();
    let t = trace(&rho).re;
    DensityState::new(rho / c(t, 0.0)).expect("positive by construction")
}

const SHAPES: [&[(usize, usize)]; 6] = [
    &[(2, 2)],
    &[(2, 4)],
    &[(4, 4)],
    &[(1, 2), (2, 3)],
    &[(3, 1), (1, 3), (2, 2)],
    &[(2, 1), (2, 1), (1, 4)],
];

fn algebra(cfg: &RunConfig) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let mut rng = rng_for(cfg, 2);

    let left = MatrixAlgebra::tensor_factor(2, 2, true);
    let comm = left.commutant();
    let right = MatrixAlgebra::tensor_factor(2, 2, false);
    out.checks.push(CheckResult::check(
        "algebra.commutant_tensor",
        comm.dimension() == 4 && comm.same_as(&right),
        json!({"dimension": comm.dimension()}),
        "commutant of M_2 ⊗ I is I ⊗ M_2",
    ));

    let mut worst = 0.0f64;
    let mut dims_ok = 0;
    const ALGEBRAS: usize = 50;
    for i in 0..ALGEBRAS {
        let shape = SHAPES[i % SHAPES.len()];
        let d: usize = shape.iter().map(|(n, m)| n * m).sum();
        let gens = block_generators(shape, 2, &mut rng);
        match MatrixAlgebra::from_generators(d, &gens).and_then(|a| Ok((a.bicommutant()?, a))) {
            Ok((bi, a)) => {
                dims_ok += usize::from(bi.dimension() == a.dimension());
                for x in bi.basis().iter().chain(&a.basis()) {
                    worst = worst.max(a.residual(x).max(bi.residual(x)));
                }
            }
            Err(e) => {
                out.checks.push(CheckResult::errored("algebra.bicommutant", e));
                return out;
            }
        }
    }
    out.checks.push(CheckResult::check(
        "algebra.bicommutant",
        dims_ok == ALGEBRAS && worst <= 1e-10,
        json!({"algebras": ALGEBRAS, "dimension_matches": dims_ok, "max_span_residual": worst}),
        "A'' = A for random generated algebras with d ≤ 16",
    ));

    out.checks.push(factor_library());

    let mut worst_gap = 0.0f64;
    let mut worst_comm = 0.0f64;
    const TRIPLES: usize = 1000;
    for i in 0..TRIPLES {
        let shape = SHAPES[i % 4];
        let d: usize = shape.iter().map(|(n, m)| n * m).sum();
        let alg = match MatrixAlgebra::from_generators(d, &block_generators(shape, 2, &mut rng)) {
            Ok(a) => a,
            Err(e) => {
                out.checks.push(CheckResult::errored("algebra.no_signaling", e));
                return out;
            }
        };
        let a = unit_norm(alg.project(&random_hermitian(d, &mut rng)));
        let b = unit_norm(alg.commutant().project(&random_hermitian(d, &mut rng)));
        let rho = random_state(d, &mut rng);
        match no_signaling_check(&a, &b, &rho) {
            Ok(r) => {
                worst_gap = worst_gap.max(r.gap);
                worst_comm = worst_comm.max(r.commutator);
            }
            Err(e) => {
                out.checks.push(CheckResult::errored("algebra.no_signaling", e));
                return out;
            }
        }
    }
    out.checks.push(CheckResult::check(
        "algebra.no_signaling",
        worst_gap <= EXACT_TOL,
        json!({"triples": TRIPLES, "max_gap": worst_gap, "max_commutator": worst_comm, "tolerance": EXACT_TOL}),
        "ω(T^A(B)) = ω(B) for unit-norm A and B in commuting algebras",
    ));

    // measuring X moves ⟨Z⟩ on |0⟩ from 1 to 0
    let zero = DensityState::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).expect("unit vector");
    let r = no_signaling_check(&Pauli::X.matrix(), &Pauli::Z.matrix(), &zero).expect("2x2");
    out.checks.push(CheckResult::control(
        "algebra.no_signaling_noncommuting",
        r.gap >= 0.1,
        json!({"gap": r.gap, "commutator": r.commutator, "threshold": 0.1}),
        "noncommuting pair X, Z on |0⟩ signals",
    ));

    let w1 = random_state(2, &mut rng);
    let w2 = random_state(3, &mut rng);
    let prod = product_state(&w1, &w2);
    let l = MatrixAlgebra::tensor_factor(2, 3, true);
    let rf = MatrixAlgebra::tensor_factor(2, 3, false);
    match statistical_independence_check(&prod, &l, &rf, Some((&w1, &w2))) {
        Ok(rep) => out.checks.push(CheckResult::check(
            "algebra.independence",
            rep.independent,
            json!({"max_gap": rep.max_gap, "pairs": rep.pairs_checked}),
            "product state on M_2 ⊗ M_3 factorizes",
        )),
        Err(e) => out.checks.push(CheckResult::errored("algebra.independence", e)),
    }

    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = DensityState::pure(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)])
        .expect("unit vector");
    let q = MatrixAlgebra::tensor_factor(2, 2, true);
    let qr = MatrixAlgebra::tensor_factor(2, 2, false);
    match statistical_independence_check(&bell, &q, &qr, None) {
        Ok(rep) => out.checks.push(CheckResult::control(
            "algebra.independence_entangled",
            !rep.independent,
            json!({"max_gap": rep.max_gap, "pairs": rep.pairs_checked}),
            "Bell state correlates the two factors",
        )),
        Err(e) => out.checks.push(CheckResult::errored("algebra.independence_entangled", e)),
    }
    out
}

fn factor_library() -> CheckResult {
    let diag = |d: usize| {
        let gens: Vec<Matrix> = (0..d)
            .map(|i| {
                let mut m = Matrix::zeros(d, d);
                m[(i, i)] = c(1.0, 0.0);
                m
            })
            .collect();
        MatrixAlgebra::from_generators(d, &gens)
    };
    let z = Pauli::Z.matrix();
    let library: Vec<(&str, Result<MatrixAlgebra, _>, bool)> = vec![
        ("M2⊗I2", Ok(MatrixAlgebra::tensor_factor(2, 2, true)), true),
        ("I2⊗M2", Ok(MatrixAlgebra::tensor_factor(2, 2, false)), true),
        ("M3⊗I2", Ok(MatrixAlgebra::tensor_factor(3, 2, true)), true),
        ("M4", Ok(MatrixAlgebra::full(4)), true),
        ("C·I4", Ok(MatrixAlgebra::scalars(4)), true),
        ("diag4", diag(4), false),
        ("diag2", diag(2), false),
        ("Z⊗Z", MatrixAlgebra::from_generators(4, &[kron(&z, &z)]), false),
        ("Z⊗I⊗I", MatrixAlgebra::from_generators(8, &[embed(3, 0, &z)]), false),
    ];
    let mut wrong = Vec::new();
    for (name, alg, expect) in &library {
        match alg {
            Ok(a) if a.is_factor() == *expect => {}
            _ => wrong.push(*name),
        }
    }
    CheckResult::check(
        "algebra.factor_library",
        wrong.is_empty(),
        json!({"algebras": library.len(), "wrong": wrong}),
        "tensor factors are factors, diagonal and abelian algebras are not",
    )
}

// ---- lattice ----

const CONE_T: f64 = 50.0;
const CONE_MARGIN_SITES: f64 = 5.0;
const SUPPRESSION: f64 = 1e-3;
const DOD_MARGIN: usize = 8;
const DOD_TOL: f64 = 1e-6;
const NONVACUITY: f64 = 1e-2;

fn lattice(cfg: &RunConfig) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let spec = match LatticeSpec::new(cfg.lattice_n, cfg.spacing, cfg.mass) {
        Ok(s) => s,
        Err(e) => {
            out.checks.push(CheckResult::errored("sc.spectrum", e));
            return out;
        }
    };
    let sp = spectrum_condition_check(&spec);
    out.checks.push(CheckResult::check(
        "sc.spectrum",
        sp.min_omega >= spec.m * (1.0 - 1e-12) && sp.vacuum_unique,
        json!({"min_omega": sp.min_omega, "max_omega": sp.max_omega, "vacuum_unique": sp.vacuum_unique}),
        "every mode frequency is at least the mass and the vacuum is unique",
    ));

    // physical time, capped below the wraparound limit
    let t = CONE_T.min(spec.cone_time_limit() * 0.5);
    let margin = CONE_MARGIN_SITES * spec.a;
    match cone_suppression(&spec, t, margin) {
        Ok(s) => out.checks.push(CheckResult::check(
            "mc.pauli_jordan",
            s.ratio <= SUPPRESSION,
            json!({"t": t, "margin": margin, "inside_max": s.inside_max, "outside_max": s.outside_max, "ratio": s.ratio, "threshold": SUPPRESSION}),
            "Δ beyond the lightcone plus margin is suppressed against Δ inside",
        )),
        Err(e) => out.checks.push(CheckResult::errored("mc.pauli_jordan", e)),
    }

    let equal = pauli_jordan_row(&spec, 0.0).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    out.checks.push(CheckResult::check(
        "mc.equal_time",
        equal <= EXACT_TOL,
        json!({"max_abs": equal, "tolerance": EXACT_TOL}),
        "Δ(0, n) vanishes at every site",
    ));

    let dt = 1e-4;
    let (plus, minus) = (pauli_jordan_row(&spec, dt), pauli_jordan_row(&spec, -dt));
    let norm_err = (0..spec.n)
        .map(|k| {
            let d = (plus[k] - minus[k]) / (2.0 * dt);
            let expect = if k == 0 { 1.0 } else { 0.0 };
            (d - expect).abs()
        })
        .fold(0.0f64, f64::max);
    out.checks.push(CheckResult::check(
        "mc.canonical_normalization",
        norm_err <= 1e-6,
        json!({"max_error": norm_err, "dt": dt, "tolerance": 1e-6}),
        "∂_t Δ(0, n) = δ_{n0} by central difference",
    ));

    let length = spec.length();
    let sizes = [spec.n / 4, spec.n / 2, spec.n];
    let ratios: Result<Vec<f64>, _> = sizes
        .iter()
        .map(|&n| {
            let s = LatticeSpec::new(n, length / n as f64, spec.m)?;
            cone_suppression(&s, t, margin).map(|r| r.ratio)
        })
        .collect();
    match ratios {
        Ok(r) => out.checks.push(CheckResult::check(
            "mc.refinement",
            r.windows(2).all(|w| w[1] < w[0]),
            json!({"sizes": sizes, "ratios": r, "length": length}),
            "suppression improves as the lattice is refined at fixed length",
        )),
        Err(e) => out.checks.push(CheckResult::errored("mc.refinement", e)),
    }

    out.checks.extend(dod_checks(&spec));

    let times: Vec<f64> = [0.0, 0.25, 0.5, 1.0].iter().map(|f| f * t).collect();
    out.files.push(("pauli_jordan.tsv", CommutatorTable::new(&spec, &times).to_tsv()));
    out
}

fn dod_checks(spec: &LatticeSpec) -> Vec<CheckResult> {
    let n = spec.n;
    let iv = SiteInterval { start: n / 4, len: n / 2 };
    let base = CauchyData::new(
        (0..n).map(|k| (k as f64 * 0.1).cos()).collect(),
        vec![0.0; n],
    )
    .expect("finite data");
    let mut kicked = base.clone();
    kicked.phi[iv.start - 1] += 1.0;
    kicked.pi[iv.end()] += 1.0;
    // the shrunken cone keeps a quarter of the interval at the last time
    let t_last = (iv.len as f64 / 2.0 - DOD_MARGIN as f64) * spec.a * 0.75;
    let times = [0.01, 0.1, 0.4, 1.0].map(|f| f * t_last);
    let reports: Result<Vec<_>, _> = times
        .iter()
        .map(|&t| domain_of_dependence_check(spec, &base, &kicked, iv, t, DOD_MARGIN))
        .collect();
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return vec![CheckResult::errored("pc.domain_of_dependence", e)],
    };
    let inside = reports.iter().map(|r| r.max_deviation_inside).fold(0.0f64, f64::max);
    let nonempty = reports.iter().all(|r| !r.region_checked.is_empty());
    let last = reports.last().expect("four times");
    vec![
        CheckResult::check(
            "pc.domain_of_dependence",
            inside <= DOD_TOL && nonempty,
            json!({"times": times, "max_deviation_inside": inside, "margin_sites": DOD_MARGIN, "tolerance": DOD_TOL, "interval": [iv.start, iv.end()]}),
            "data agreeing on an interval give the same field in its shrunken cone",
        ),
        CheckResult::control(
            "pc.nonvacuity",
            last.max_deviation_excluded >= NONVACUITY,
            json!({"t": last.t, "max_deviation_excluded": last.max_deviation_excluded, "threshold": NONVACUITY}),
            "outside the shrunken cone the two evolutions do differ",
        ),
    ]
}

// ---- protocols ----

const FERMI_N: usize = 10;
const FERMI_A: usize = 2;
const FERMI_B: usize = 8;
const FERMI_SEEDS: u64 = 100;
const ARRIVAL: f64 = 1e-3;

fn protocols(cfg: &RunConfig) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let rho = ground_pair();
    match sorkin_signaling_gap(&SorkinSetup::canonical(), &rho) {
        Ok(gap) => out.checks.push(CheckResult::control(
            "protocols.sorkin_signaling",
            (gap - 0.5).abs() <= EXACT_TOL,
            json!({"gap": gap, "expected": 0.5}),
            "an intermediate Bell-projector measurement signals across spacelike regions",
        )),
        Err(e) => out.checks.push(CheckResult::errored("protocols.sorkin_signaling", e)),
    }
    match sorkin_signaling_gap(&SorkinSetup::local_product(), &rho) {
        Ok(gap) => out.checks.push(CheckResult::check(
            "protocols.sorkin_local",
            gap <= EXACT_TOL,
            json!({"gap": gap, "tolerance": EXACT_TOL}),
            "local product measurements in the middle region do not signal",
        )),
        Err(e) => out.checks.push(CheckResult::errored("protocols.sorkin_local", e)),
    }

    let setup = FermiSetup::new(FERMI_N, FERMI_A, FERMI_B, 0).expect("fixed setup");
    let r = setup.distance();
    let silent = r - setup.window;
    let worst: Result<f64, _> = (0..FERMI_SEEDS)
        .into_par_iter()
        .map(|i| {
            let circ = BrickWallCircuit::haar(FERMI_N, silent - 1, cfg.seed.wrapping_add(i))?;
            let curve = fermi_deviation_curve(&setup, &circ, silent - 1)?;
            Ok::<f64, ProtocolError>(curve.into_iter().fold(0.0, f64::max))
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)));
    match worst {
        Ok(w) => out.checks.push(CheckResult::check(
            "protocols.fermi_silence",
            w <= EXACT_TOL,
            json!({"n": FERMI_N, "distance": r, "seeds": FERMI_SEEDS, "max_deviation": w, "tolerance": EXACT_TOL}),
            format!("atom A is unaffected for t < {silent}"),
        )),
        Err(e) => out.checks.push(CheckResult::errored("protocols.fermi_silence", e)),
    }

    let depth = FERMI_N - 1;
    let curve = BrickWallCircuit::haar(FERMI_N, depth, cfg.seed)
        .and_then(|circ| fermi_deviation_curve(&setup, &circ, depth));
    match curve {
        Ok(curve) => {
            let late = curve[r + 1..].iter().copied().fold(0.0f64, f64::max);
            out.checks.push(CheckResult::check(
                "protocols.fermi_arrival",
                late > ARRIVAL,
                json!({"distance": r, "max_deviation_after_arrival": late, "threshold": ARRIVAL}),
                "the excitation reaches atom A once t > R",
            ));
            out.files.push(("fermi_deviation.tsv", deviation_tsv(&curve)));
        }
        Err(e) => out.checks.push(CheckResult::errored("protocols.fermi_arrival", e)),
    }
    out
}

// ---- net ----

/// Cylinder used for the proof replay: about a third of the sites and half
/// the layers.
pub fn proof_cylinder(net: &LocalNet) -> CylinderSpec {
    let sites = (net.n_qubits() / 3).max(1);
    let layers = ((net.depth() + 1) / 2).max(1);
    CylinderSpec::centered(net, sites, layers)
}

fn net(cfg: &RunConfig) -> SuiteOutput {
    let mut out = SuiteOutput::default();
    let net = match BrickWallCircuit::haar(cfg.qubits, cfg.depth, cfg.seed)
        .map_err(|e| e.to_string())
        .and_then(|c| build_net(c).map_err(|e| e.to_string()))
    {
        Ok(n) => n,
        Err(e) => {
            out.checks.push(CheckResult::errored("net.isotony", e));
            return out;
        }
    };
    let mut rng = rng_for(cfg, 5);

    let pairs = random_nested_pairs(&net, 200, &mut rng);
    match check_isotony(&net, &pairs) {
        Ok(r) => out.checks.push(CheckResult::check(
            "net.isotony",
            r.pass,
            json!({"pairs": r.checked, "witness": r.witness}),
            "nested regions have nested algebras",
        )),
        Err(e) => out.checks.push(CheckResult::errored("net.isotony", e)),
    }

    let mc = check_microcausality(&net);
    out.checks.push(CheckResult::check(
        "net.microcausality",
        mc.pass,
        json!({"pairs": mc.checked, "not_applicable": mc.not_applicable, "witness": mc.witness}),
        "cells with disjoint support cones have commuting generators",
    ));

    let mut slice_dims = Vec::new();
    let mut slices_ok = true;
    for l in 0..=net.depth() {
        match check_slice_generation(&net, l) {
            Ok(r) => {
                slices_ok &= r.pass;
                slice_dims.push(r.dims["slice"]);
            }
            Err(e) => {
                out.checks.push(CheckResult::errored("net.slice_generation", e));
                return out;
            }
        }
    }
    out.checks.push(CheckResult::check(
        "net.slice_generation",
        slices_ok,
        json!({"slice_dimensions": slice_dims, "full": net.dim() * net.dim()}),
        "each full layer generates every operator",
    ));
    match sub_slice_control(&net, 0, net.n_qubits() / 2) {
        Ok(r) => out.checks.push(CheckResult::control(
            "net.sub_slice",
            r.pass,
            json!(r.dims),
            "a layer with one site removed falls short",
        )),
        Err(e) => out.checks.push(CheckResult::errored("net.sub_slice", e)),
    }

    let cyl = proof_cylinder(&net);
    match replay_lpc_proof(&net, cyl) {
        Ok(rep) => {
            for step in &rep.steps {
                let mut metrics = json!({"dims": step.dims, "cylinder": cyl, "cells": rep.cells});
                if let Some(w) = &step.witness {
                    metrics["witness"] = json!(w);
                }
                out.checks.push(CheckResult::check(
                    &format!("net.{}", step.name),
                    step.pass,
                    metrics,
                    rep.notes.join("; "),
                ));
            }
        }
        Err(e) => out.checks.push(CheckResult::errored("net.conclusion", e)),
    }

    out.checks.push(implication_sweep(&net));
    out
}

/// Every cylinder with 1 to 3 sites and 1 to 2 layers that fits the net.
pub fn small_cylinders(net: &LocalNet) -> Vec<CylinderSpec> {
    let mut v = Vec::new();
    for sites in 1..=3.min(net.n_qubits()) {
        for layers in 1..=2.min(net.depth() + 1) {
            for first_layer in 0..=net.depth() + 1 - layers {
                for first_site in 0..=net.n_qubits() - sites {
                    v.push(CylinderSpec {
                        first_layer,
                        layers,
                        first_site,
                        sites,
                    });
                }
            }
        }
    }
    v
}

fn implication_sweep(net: &LocalNet) -> CheckResult {
    let cyls = small_cylinders(net);
    let reports: Result<Vec<_>, _> = cyls
        .par_iter()
        .map(|&c| replay_lpc_proof(net, c))
        .collect();
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return CheckResult::errored("net.implication", e),
    };
    let count = |f: &dyn Fn(&crate::net_verifier::ProofReport) -> bool| {
        reports.iter().filter(|r| f(r)).count()
    };
    let violations: Vec<CylinderSpec> = reports
        .iter()
        .filter(|r| !r.implication_holds)
        .map(|r| r.net_params.cylinder)
        .collect();
    CheckResult::check(
        "net.implication",
        violations.is_empty(),
        json!({
            "cylinders": reports.len(),
            "premises_hold": count(&|r| r.premises_hold),
            "duality_holds": count(&|r| r.duality_holds),
            "lpc_holds": count(&|r| r.lpc_holds),
            "violations": violations,
        }),
        "premises and duality imply A(C) = A(C'') on every small cylinder",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unexpected_metrics_shape_is_wrapped() {
        let r = CheckResult::check("x", true, json!(3), "");
        assert_eq!(r.metrics["value"], json!(3));
        let r = CheckResult::check("x", true, Value::Null, "");
        assert!(r.metrics.is_empty());
    }

    #[test]
    fn small_cylinder_enumeration() {
        let net = build_net(BrickWallCircuit::haar(5, 2, 1).unwrap()).unwrap();
        let cyls = small_cylinders(&net);
        assert_eq!(cyls.len(), 60);
        assert!(cyls.iter().all(|c| c.region(&net).is_ok()));
        let mid = proof_cylinder(&net);
        assert_eq!((mid.first_layer, mid.first_site, mid.sites, mid.layers), (1, 2, 1, 1));
    }

    #[test]
    fn geometry_suite_reports_tiling_counts() {
        let cfg = RunConfig {
            h: 0.1,
            ..RunConfig::default()
        };
        let out = geometry(&cfg);
        let tiling = out.checks.iter().find(|c| c.id == "geometry.tiling").unwrap();
        assert!(tiling.pass);
        assert!(tiling.metrics["diamond"].as_u64().unwrap() > 0);
        assert!(out.checks.iter().all(|c| c.pass), "{:?}", out.checks);
        assert_eq!(out.files[0].0, "diamond_cells.tsv");
    }
}
