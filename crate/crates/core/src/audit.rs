//! Bit-exact checks of the mirror symmetries of a field, and the randomized
//! property harness over the individual kernels.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characteristics::{CharacteristicQuad, EigenOrdering, FrameInput, InterfaceFrame, Wave};
use crate::error::{Error, Result};
use crate::grid::Grid2D;
use crate::hllc::hllc_flux;
use crate::reconstruction::{p4_boundary_values, sf_si_check, MirrorCheck, Stencil5, Thinc, BETA_LARGE, BETA_SMALL};
use crate::scalar::{hex_float, Real};
use crate::state::{conserved_from_primitive, physical_flux, Axis, ConservedState, GasModel, PrimitiveState, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryType {
    /// `(i, j) <-> (i, ny-1-j)`, `rho v` negated.
    XAxis,
    /// `(i, j) <-> (nx-1-i, j)`, `rho u` negated.
    YAxis,
    /// `(i, j) <-> (j, i)`, momenta swapped.
    Diagonal,
}

impl SymmetryType {
    pub const ALL: [SymmetryType; 3] = [SymmetryType::XAxis, SymmetryType::YAxis, SymmetryType::Diagonal];

    pub fn id(self) -> &'static str {
        match self {
            SymmetryType::XAxis => "x-axis",
            SymmetryType::YAxis => "y-axis",
            SymmetryType::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for SymmetryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SymmetryType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" | "x-axis" | "xaxis" => Ok(SymmetryType::XAxis),
            "y" | "y-axis" | "yaxis" => Ok(SymmetryType::YAxis),
            "d" | "diag" | "diagonal" => Ok(SymmetryType::Diagonal),
            _ => Err(Error::InvalidConfig(format!("unknown symmetry type '{s}'"))),
        }
    }
}

pub const COMPONENT_NAMES: [&str; 4] = ["rho", "rho_u", "rho_v", "E"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentReport {
    pub max_abs_discrepancy: f64,
    /// First pair (row-major scan) reaching the maximum; `None` when the
    /// component is bit-exact.
    pub worst_pair: Option<((usize, usize), (usize, usize))>,
    pub bitexact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub kind: SymmetryType,
    pub components: [ComponentReport; 4],
}

impl SymmetryReport {
    pub fn bitexact(&self) -> bool {
        self.components.iter().all(|c| c.bitexact)
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.components.iter().fold(0.0, |m, c| m.max(c.max_abs_discrepancy))
    }

    /// One line per component: type, component, maximum discrepancy as a
    /// hex float, worst pair, bit-exact flag.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (name, c) in COMPONENT_NAMES.iter().zip(&self.components) {
            let pair = match c.worst_pair {
                Some(((a, b), (d, e))) => format!("({a},{b})-({d},{e})"),
                None => "-".to_string(),
            };
            let _ = writeln!(
                s,
                "{} {} max={} pair={} bitexact={}",
                self.kind,
                name,
                hex_float(c.max_abs_discrepancy),
                pair,
                c.bitexact
            );
        }
        s
    }
}

/// Audits a row-major `nx × ny` field of conserved states.
pub fn audit_cells<T: Real>(
    nx: usize,
    ny: usize,
    square_cells: bool,
    cells: &[ConservedState<T>],
    kind: SymmetryType,
) -> Result<SymmetryReport> {
    if cells.len() != nx * ny {
        return Err(Error::ShapeMismatch(format!("{} cells for a {nx}x{ny} grid", cells.len())));
    }
    if kind == SymmetryType::Diagonal && (nx != ny || !square_cells) {
        return Err(Error::ShapeMismatch(format!(
            "diagonal symmetry needs a square grid of square cells, got {nx}x{ny}"
        )));
    }
    let mut comps = [ComponentReport {
        max_abs_discrepancy: 0.0,
        worst_pair: None,
        bitexact: true,
    }; 4];
    for j in 0..ny {
        for i in 0..nx {
            let (bi, bj) = match kind {
                SymmetryType::XAxis => (i, ny - 1 - j),
                SymmetryType::YAxis => (nx - 1 - i, j),
                SymmetryType::Diagonal => (j, i),
            };
            let a = cells[j * nx + i];
            let b = cells[bj * nx + bi];
            let expected = match kind {
                SymmetryType::XAxis => b.mirror_y_momentum(),
                SymmetryType::YAxis => b.mirror_x_momentum(),
                SymmetryType::Diagonal => b.swap_momenta(),
            };
            for (k, (x, y)) in a.to_array().into_iter().zip(expected.to_array()).enumerate() {
                let d = (x - y).abs().to_f64_lossless();
                let d = if d.is_nan() { f64::INFINITY } else { d };
                let c = &mut comps[k];
                if d > c.max_abs_discrepancy {
                    c.max_abs_discrepancy = d;
                    c.worst_pair = Some(((i, j), (bi, bj)));
                    c.bitexact = false;
                }
            }
        }
    }
    Ok(SymmetryReport { kind, components: comps })
}

/// Audits the interior of a grid.
pub fn audit<T: Real>(grid: &Grid2D<T>, kind: SymmetryType) -> Result<SymmetryReport> {
    audit_cells(grid.nx, grid.ny, grid.dx == grid.dy, &grid.interior(), kind)
}

/// Copy of the interior with the given mirror applied to indices and
/// momenta, so that `audit(mirror(g), k) == audit(g, k)` and a field
/// symmetric under `k` is a fixed point.
pub fn mirror_cells<T: Real>(nx: usize, ny: usize, cells: &[ConservedState<T>], kind: SymmetryType) -> Vec<ConservedState<T>> {
    let (mx, my) = match kind {
        SymmetryType::Diagonal => (ny, nx),
        _ => (nx, ny),
    };
    let mut out = Vec::with_capacity(cells.len());
    for j in 0..my {
        for i in 0..mx {
            let (si, sj) = match kind {
                SymmetryType::XAxis => (i, ny - 1 - j),
                SymmetryType::YAxis => (nx - 1 - i, j),
                SymmetryType::Diagonal => (j, i),
            };
            let s = cells[sj * nx + si];
            out.push(match kind {
                SymmetryType::XAxis => s.mirror_y_momentum(),
                SymmetryType::YAxis => s.mirror_x_momentum(),
                SymmetryType::Diagonal => s.swap_momenta(),
            });
        }
    }
    out
}

/// Outcome of one randomized property for one variant.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub property: &'static str,
    pub variant: Variant,
    pub trials: usize,
    pub passes: usize,
    pub first_counterexample: Option<String>,
}

impl PropertyResult {
    pub fn all_passed(&self) -> bool {
        self.passes == self.trials
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessReport {
    pub seed: u64,
    pub results: Vec<PropertyResult>,
}

impl HarnessReport {
    pub fn get(&self, property: &str, variant: Variant) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.property == property && r.variant == variant)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let _ = writeln!(
                s,
                "{:<24} {:<9} {}/{}{}",
                r.property,
                format!("{:?}", r.variant).to_lowercase(),
                r.passes,
                r.trials,
                r.first_counterexample.as_ref().map(|c| format!("  first failure: {c}")).unwrap_or_default()
            );
        }
        s
    }
}

pub const PROP_P4_FLIP: &str = "p4 stencil flip";
pub const PROP_P4_INVERSION: &str = "p4 sign inversion";
pub const PROP_THINC_FLIP: &str = "thinc stencil flip";
pub const PROP_THINC_INVERSION: &str = "thinc sign inversion";
pub const PROP_PROJECTION_MIRROR: &str = "projection mirror";
pub const PROP_PROJECTION_DIAGONAL: &str = "projection diagonal";
pub const PROP_INVERSE: &str = "eigen inverse 1e-13";
pub const PROP_FLUX_MIRROR: &str = "hllc mirror flux";
pub const PROP_FLUX_DIAGONAL: &str = "hllc diagonal flux";
pub const PROP_CONSISTENCY: &str = "hllc consistency 1e-13";

struct Tally {
    property: &'static str,
    variant: Variant,
    trials: usize,
    passes: usize,
    first: Option<String>,
}

impl Tally {
    fn new(property: &'static str, variant: Variant) -> Self {
        Self {
            property,
            variant,
            trials: 0,
            passes: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if ok {
            self.passes += 1;
        } else if self.first.is_none() {
            self.first = Some(describe());
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            property: self.property,
            variant: self.variant,
            trials: self.trials,
            passes: self.passes,
            first_counterexample: self.first,
        }
    }
}

fn random_prim(rng: &mut ChaCha8Rng) -> PrimitiveState<f64> {
    PrimitiveState::new(
        rng.gen_range(0.1..3.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(0.1..3.0),
    )
}

fn moderate_prim(rng: &mut ChaCha8Rng) -> PrimitiveState<f64> {
    PrimitiveState::new(
        rng.gen_range(0.5..2.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(0.5..2.0),
    )
}

/// Three values, monotone (either direction) half of the time.
fn thinc_stencil(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let mut t = [0.0; 3];
    for x in &mut t {
        *x = rng.gen_range(-2.0..2.0);
    }
    if rng.gen_bool(0.5) {
        t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if rng.gen_bool(0.5) {
            t.reverse();
        }
    }
    t
}

fn input(q: &PrimitiveState<f64>, gas: &GasModel<f64>) -> (FrameInput<f64>, ConservedState<f64>) {
    let u = conserved_from_primitive(q, gas).unwrap();
    (FrameInput::from_conserved(&u, gas).unwrap(), u)
}

fn ordering(v: Variant) -> EigenOrdering {
    match v {
        Variant::Original => EigenOrdering::Natural,
        Variant::Symmetric => EigenOrdering::SymmetryPreserving,
    }
}

/// Runs every randomized kernel property `trials` times for both
/// variants. The symmetric variant is expected to pass everything; the
/// original variant is expected to fail the flip/inversion/mirror
/// properties somewhere, and the first failing input is recorded.
pub fn property_harness(seed: u64, trials: usize) -> HarnessReport {
    let gas = GasModel::<f64>::air();
    let mut results = Vec::new();
    for (vi, variant) in [Variant::Symmetric, Variant::Original].into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(vi as u64));
        let mut p4_flip = Tally::new(PROP_P4_FLIP, variant);
        let mut p4_inv = Tally::new(PROP_P4_INVERSION, variant);
        let mut th_flip = Tally::new(PROP_THINC_FLIP, variant);
        let mut th_inv = Tally::new(PROP_THINC_INVERSION, variant);
        let mut proj_mirror = Tally::new(PROP_PROJECTION_MIRROR, variant);
        let mut proj_diag = Tally::new(PROP_PROJECTION_DIAGONAL, variant);
        let mut inverse = Tally::new(PROP_INVERSE, variant);
        let mut flux_mirror = Tally::new(PROP_FLUX_MIRROR, variant);
        let mut flux_diag = Tally::new(PROP_FLUX_DIAGONAL, variant);
        let mut consistency = Tally::new(PROP_CONSISTENCY, variant);
        let thincs = [Thinc::new(BETA_SMALL), Thinc::new(BETA_LARGE)];
        let ord = ordering(variant);
        let waves = ord.waves();
        // Slot permutation of the y-axis mirror: u-c and u+c exchange.
        let swap_slot = |k: usize| match waves[k] {
            Wave::Minus => ord.slot(Wave::Plus),
            Wave::Plus => ord.slot(Wave::Minus),
            _ => k,
        };

        for _ in 0..trials {
            // Reconstruction.
            let s: Vec<f64> = (0..5).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let p4 = |x: &[f64]| p4_boundary_values(&Stencil5([x[0], x[1], x[2], x[3], x[4]]), variant);
            p4_flip.record(sf_si_check(p4, &s, MirrorCheck::StencilFlip), || format!("{s:?}"));
            p4_inv.record(sf_si_check(p4, &s, MirrorCheck::SignInversion), || format!("{s:?}"));
            let t = thinc_stencil(&mut rng);
            let th = thincs[rng.gen_range(0..2)];
            let f = |x: &[f64]| th.eval(x[0], x[1], x[2], variant);
            th_flip.record(sf_si_check(f, &t, MirrorCheck::StencilFlip), || format!("{t:?} beta={}", th.beta));
            th_inv.record(sf_si_check(f, &t, MirrorCheck::SignInversion), || format!("{t:?} beta={}", th.beta));

            // Characteristic projection.
            let (qa, qb) = (random_prim(&mut rng), random_prim(&mut rng));
            let (a, _) = input(&qa, &gas);
            let (b, _) = input(&qb, &gas);
            let (_, cell) = input(&random_prim(&mut rng), &gas);
            let fx = InterfaceFrame::build(&a, &b, Axis::X, ord, &gas).unwrap();
            inverse.record(fx.inverse_defect() <= 1e-13, || format!("{qa:?} {qb:?}"));
            let (ma, _) = input(&PrimitiveState::new(qb.rho, -qb.u, qb.v, qb.p), &gas);
            let (mb, _) = input(&PrimitiveState::new(qa.rho, -qa.u, qa.v, qa.p), &gas);
            let fm = InterfaceFrame::build(&ma, &mb, Axis::X, ord, &gas).unwrap();
            let w = fx.to_characteristic(&cell).w;
            let wm = fm.to_characteristic(&cell.mirror_x_momentum()).w;
            let mut expected = [0.0; 4];
            for k in 0..4 {
                expected[swap_slot(k)] = w[k];
            }
            let back = fx.to_conservative(&CharacteristicQuad { w });
            let back_m = fm.to_conservative(&CharacteristicQuad { w: wm });
            proj_mirror.record(wm == expected && back_m == back.mirror_x_momentum(), || {
                format!("{qa:?} {qb:?} {cell:?}")
            });
            let (da, _) = input(&PrimitiveState::new(qa.rho, qa.v, qa.u, qa.p), &gas);
            let (db, _) = input(&PrimitiveState::new(qb.rho, qb.v, qb.u, qb.p), &gas);
            let fy = InterfaceFrame::build(&da, &db, Axis::Y, ord, &gas).unwrap();
            let wy = fy.to_characteristic(&cell.swap_momenta());
            let ok = wy.w == w && fy.to_conservative(&wy) == back.swap_momenta();
            proj_diag.record(ok, || format!("{qa:?} {qb:?} {cell:?}"));

            // Riemann solver.
            let ql = random_prim(&mut rng);
            let qr = if rng.gen_bool(0.5) {
                PrimitiveState::new(ql.rho, -ql.u, rng.gen_range(-2.0..2.0), ql.p)
            } else {
                random_prim(&mut rng)
            };
            let (ul, ur) = (conserved_from_primitive(&ql, &gas).unwrap(), conserved_from_primitive(&qr, &gas).unwrap());
            let f = hllc_flux(&ul, &ur, Axis::X, &gas, variant).unwrap();
            let fm = hllc_flux(&ur.mirror_x_momentum(), &ul.mirror_x_momentum(), Axis::X, &gas, variant).unwrap();
            flux_mirror.record(f == -fm.mirror_x_momentum(), || format!("{ql:?} {qr:?}"));
            let sw = |q: &PrimitiveState<f64>| conserved_from_primitive(&PrimitiveState::new(q.rho, q.v, q.u, q.p), &gas).unwrap();
            let g = hllc_flux(&sw(&ql), &sw(&qr), Axis::Y, &gas, variant).unwrap();
            flux_diag.record(f == g.swap_momenta(), || format!("{ql:?} {qr:?}"));
            let q = moderate_prim(&mut rng);
            let u = conserved_from_primitive(&q, &gas).unwrap();
            let axis = if rng.gen_bool(0.5) { Axis::X } else { Axis::Y };
            let fc = hllc_flux(&u, &u, axis, &gas, variant).unwrap();
            let pf = physical_flux(&q, &u, axis);
            let ok = fc
                .to_array()
                .into_iter()
                .zip(pf.to_array())
                .all(|(x, y)| (x - y).abs() <= 1e-13 * (1.0 + y.abs()));
            consistency.record(ok, || format!("{q:?} {axis:?}"));
        }
        for t in [
            p4_flip,
            p4_inv,
            th_flip,
            th_inv,
            proj_mirror,
            proj_diag,
            inverse,
            flux_mirror,
            flux_diag,
            consistency,
        ] {
            results.push(t.finish());
        }
    }
    HarnessReport { seed, results }
}
