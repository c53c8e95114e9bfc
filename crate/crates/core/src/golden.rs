//! Published reference values, recomputed from scratch.
//!
//! Every [`Cell`] pairs a printed value with the value this crate computes
//! for it. [`evaluate`] compares them at a tolerance; the CLI's `paper`
//! subcommand renders the outcome.

use crate::discount::{contextual_component_mass, contextual_discount, ContextVector, Scheme};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;
use crate::temporal::{contextual_alphas_from_kappa, kappa_at, raw_contextual_alphas, DecaySpec};

/// Default comparison tolerance; printed values carry four decimals.
pub const DEFAULT_TOLERANCE: f64 = 5e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub id: String,
    pub expected: f64,
    pub actual: f64,
    /// Set when the printed value contradicts the operator's own definition;
    /// such cells are reported but do not gate the outcome.
    pub discrepancy: Option<&'static str>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Printed value known to disagree with the definition.
    Known,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub cell: Cell,
    pub deviation: f64,
    pub status: Status,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn evaluate(cells: &[Cell], tolerance: f64) -> Vec<Outcome> {
    cells
        .iter()
        .map(|cell| {
            let deviation = (cell.actual - cell.expected).abs();
            let status = if cell.discrepancy.is_some() {
                Status::Known
            } else if deviation <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            };
            Outcome {
                cell: cell.clone(),
                deviation,
                status,
            }
        })
        .collect()
}

/// The optimistic result printed for the helicopter/rocket example leaves
/// `{r}` untouched although `{r} ⊆ {h, r}`; the comparative table discounts
/// the same configuration (`{ω2} ⊆ {ω2, ω3}`).
pub const OPTIMISTIC_EXAMPLE_NOTE: &str =
    "printed optimistic value leaves {r} undiscounted although {r} is inside the context {h,r}";

/// Shifts the expected value of one cell. Returns `false` if no cell has
/// that id. A discrepancy note describes the printed value only, so it is
/// dropped and the shifted cell is compared like any other.
pub fn perturb(cells: &mut [Cell], id: &str, delta: f64) -> bool {
    match cells.iter_mut().find(|c| c.id == id) {
        Some(cell) => {
            cell.expected += delta;
            cell.discrepancy = None;
            true
        }
        None => false,
    }
}

const ROWS: [&str; 8] = ["E", "w1", "w2", "w1w2", "w3", "w1w3", "w2w3", "W"];

struct Builder {
    cells: Vec<Cell>,
}

impl Builder {
    fn push(&mut self, id: impl Into<String>, expected: f64, actual: f64) {
        self.cells.push(Cell {
            id: id.into(),
            expected,
            actual,
            discrepancy: None,
        });
    }

    fn column(&mut self, prefix: &str, expected: &[f64; 8], m: &MassFunction) {
        for (i, row) in ROWS.iter().enumerate() {
            self.push(
                format!("{prefix}.{row}"),
                expected[i],
                m.mass(Subset(i as u32)),
            );
        }
    }

    fn vector(&mut self, prefix: &str, expected: &[f64], actual: &[f64]) {
        for (i, (&e, &a)) in expected.iter().zip(actual).enumerate() {
            self.push(format!("{prefix}[{i}]"), e, a);
        }
    }
}

fn w3() -> Frame {
    Frame::numbered(3).expect("three labels")
}

/// The mass function of both temporal cases.
pub fn temporal_case_mass() -> MassFunction {
    MassFunction::new(
        w3(),
        [
            (Subset(0b001), 0.3),
            (Subset(0b010), 0.2),
            (Subset(0b011), 0.2),
            (Subset(0b100), 0.2),
            (Subset(0b111), 0.1),
        ],
    )
    .expect("valid fixture")
}

/// `{a: 0.5, r: 0.5}` on `{a, h, r}`.
pub fn target_mass() -> MassFunction {
    let f = Frame::new(["a", "h", "r"]).expect("three labels");
    MassFunction::from_labels(f, [(vec!["a"], 0.5), (vec!["r"], 0.5)]).expect("valid fixture")
}

/// Recomputes every reference value.
pub fn reference_cells() -> Result<Vec<Cell>> {
    let mut b = Builder { cells: Vec::new() };
    target_example(&mut b)?;
    comparative_factors(&mut b)?;
    temporal_parameters(&mut b)?;
    temporal_tables(&mut b)?;
    Ok(b.cells)
}

fn target_example(b: &mut Builder) -> Result<()> {
    let m = target_mass();
    let f = m.frame().clone();
    let (a, r, ar, full) = (
        f.subset(["a"])?,
        f.subset(["r"])?,
        f.subset(["a", "r"])?,
        f.full(),
    );
    let ctx = ContextVector::single(f.clone(), f.subset(["h", "r"])?, 0.4)?;
    for (scheme, tag, expected) in [
        (Scheme::Conservative, "targets.c", [0.5, 0.3, 0.2]),
        (Scheme::Optimistic, "targets.o", [0.5, 0.5, 0.0]),
        (Scheme::Proportional, "targets.p", [0.5, 0.3, 0.2]),
    ] {
        let out = scheme.apply(&m, &ctx)?;
        let start = b.cells.len();
        b.push(format!("{tag}.a"), expected[0], out.mass(a));
        b.push(format!("{tag}.r"), expected[1], out.mass(r));
        b.push(format!("{tag}.W"), expected[2], out.mass(full));
        if scheme == Scheme::Optimistic {
            // {r} and Ω
            for cell in &mut b.cells[start + 1..] {
                cell.discrepancy = Some(OPTIMISTIC_EXAMPLE_NOTE);
            }
        }
    }
    let ctx = ContextVector::single(f, a, 0.4)?;
    let out = contextual_discount(&m, &ctx)?;
    b.push("targets.ctx.a", 0.5, out.mass(a));
    b.push("targets.ctx.r", 0.3, out.mass(r));
    b.push("targets.ctx.ar", 0.2, out.mass(ar));
    Ok(())
}

/// Output/input ratios on `Θ = {{ω1}, {ω2, ω3}}` against the symbolic
/// factors of the comparative table, for one fixed input.
fn comparative_factors(b: &mut Builder) -> Result<()> {
    let f = w3();
    let masses = [0.05, 0.1, 0.15, 0.1, 0.2, 0.1, 0.15, 0.15];
    let m = MassFunction::new(
        f.clone(),
        masses
            .iter()
            .enumerate()
            .map(|(i, &v)| (Subset(i as u32), v)),
    )?;
    let (a1, a23) = (0.3, 0.6);
    let ctx = ContextVector::new(f, [(Subset(0b001), a1), (Subset(0b110), a23)])?;
    let (b1, b23) = (1.0 - a1, 1.0 - a23);
    let half = (1.0 - a1 / 2.0) * (1.0 - a23 / 2.0);
    let table: [(Scheme, &str, [f64; 7]); 3] = [
        (
            Scheme::Optimistic,
            "o",
            [b1 * b23, b1, b23, 1.0, b23, 1.0, b23],
        ),
        (
            Scheme::Proportional,
            "p",
            [b1 * b23, b1, b23, half, b23, half, b23],
        ),
        (
            Scheme::Conservative,
            "c",
            [b1 * b23, b1, b23, b1 * b23, b23, b1 * b23, b23],
        ),
    ];
    for (scheme, tag, factors) in table {
        let out = scheme.apply(&m, &ctx)?;
        for (i, factor) in factors.iter().enumerate() {
            let ratio = out.mass(Subset(i as u32)) / masses[i];
            b.push(format!("factors.{tag}.{}", ROWS[i]), *factor, ratio);
        }
    }
    Ok(())
}

// printed four-decimal values, not approximations of ln 2
#[allow(clippy::approx_constant)]
fn temporal_parameters(b: &mut Builder) -> Result<()> {
    let c1 = DecaySpec::from_half_lives(w3(), &[1.0, 4.0, 15.0])?;
    let c2 = DecaySpec::from_half_lives(w3(), &[5.0, 4.0, 15.0])?;
    b.vector("decay.lambda1", &[0.6931, 0.1733, 0.0462], &c1.lambdas());
    b.vector("decay.lambda2", &[0.1386, 0.1733, 0.0462], &c2.lambdas());
    let k1 = kappa_at(&c1, 4.0)?;
    let k2 = kappa_at(&c2, 4.0)?;
    b.vector("decay.kappa1", &[0.0625, 0.5, 0.8312], &k1.values());
    b.vector("decay.kappa2", &[0.5743, 0.5, 0.8312], &k2.values());
    b.vector(
        "decay.alpha1",
        &[-1.5787, 0.6777, 0.8061],
        &raw_contextual_alphas(&k1)?,
    );
    let infeasible = matches!(
        contextual_alphas_from_kappa(&k1),
        Err(Error::Infeasible { .. })
    );
    b.push(
        "decay.alpha1.infeasible",
        1.0,
        if infeasible { 1.0 } else { 0.0 },
    );
    let ctx2 = contextual_alphas_from_kappa(&k2)?;
    let alphas2: Vec<f64> = ctx2.contexts().iter().map(|&(_, a)| a).collect();
    b.vector("decay.alpha2", &[0.1493, 0.0228, 0.4122], &alphas2);
    Ok(())
}

fn temporal_tables(b: &mut Builder) -> Result<()> {
    let m = temporal_case_mass();
    let f = m.frame().clone();
    let case1 = ContextVector::singletons(f.clone(), &[0.0625, 0.5, 0.8312])?;
    let case2 = ContextVector::singletons(f.clone(), &[0.5743, 0.5, 0.8312])?;
    let columns: [(&str, &ContextVector, Scheme, [f64; 8]); 6] = [
        (
            "aging1.o",
            &case1,
            Scheme::Optimistic,
            [0.0, 0.28125, 0.1, 0.2, 0.03376, 0.0, 0.0, 0.38499],
        ),
        (
            "aging1.p",
            &case1,
            Scheme::Proportional,
            [0.0, 0.28125, 0.1, 0.1453125, 0.03376, 0.0, 0.0, 0.4396775],
        ),
        (
            "aging1.c",
            &case1,
            Scheme::Conservative,
            [0.0, 0.28125, 0.1, 0.09375, 0.03376, 0.0, 0.0, 0.49124],
        ),
        (
            "aging2.o",
            &case2,
            Scheme::Optimistic,
            [0.0, 0.12771, 0.1, 0.2, 0.03376, 0.0, 0.0, 0.53853],
        ),
        (
            "aging2.p",
            &case2,
            Scheme::Proportional,
            [0.0, 0.12771, 0.1, 0.1069275, 0.03376, 0.0, 0.0, 0.6316025],
        ),
        (
            "aging2.c",
            &case2,
            Scheme::Conservative,
            [0.0, 0.12771, 0.1, 0.04257, 0.03376, 0.0, 0.0, 0.69596],
        ),
    ];
    for (prefix, ctx, scheme, expected) in columns {
        b.column(prefix, &expected, &scheme.apply(&m, ctx)?);
    }

    let mercier = ContextVector::singletons(f, &[0.1493, 0.0228, 0.4122])?;
    b.column(
        "aging2.ctx",
        &[0.0, 0.1723, 0.1, 0.1391, 0.1662, 0.15, 0.074, 0.1983],
        &contextual_discount(&m, &mercier)?,
    );
    b.column(
        "component2",
        &[
            0.4886, 0.0858, 0.0114, 0.0020, 0.3427, 0.0602, 0.0080, 0.0014,
        ],
        &contextual_component_mass(&mercier),
    );
    Ok(())
}
