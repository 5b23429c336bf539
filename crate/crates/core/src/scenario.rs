//! Scenario configuration, parameter sweeps and figure datasets.
//!
//! # Sweep CSV columns
//!
//! | column | meaning |
//! |---|---|
//! | first | swept modulus (`b_minus` unless a `scaled` sweep names another) |
//! | `k_pol`, `p`, `c_pol` | polarization-mixed state: Schmidt parameter, degree of polarization, concurrence |
//! | `s_full` | entropy of the two-photon mixed state (identical for both) |
//! | `s_reduced_pol`, `i_pol` | one-photon entropy and mutual information, polarization |
//! | `k_freq`, `c_freq`, `s_reduced_freq`, `i_freq` | the same for the frequency-mixed state |
//! | `s_rel_freq`, `c_cl_freq` | relative entropy and classical correlations of the frequency state |
//! | `k_photon` | Schmidt parameter of the full ququart reduced to one photon |
//! | `k_2qb`, `p_2qb`, `c_2qb` | channel two-qubit model |
//!
//! Rows follow the grid order whatever the degree of parallelism.

use std::f64::consts::FRAC_1_SQRT_2;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{Cell, Table};
use crate::report::{analyze, QuquartAnalysis};
use crate::state::QuquartCoeffs;

pub const DEFAULT_STEPS: usize = 201;

pub const SWEEP_COLUMNS: [&str; 16] = [
    "k_pol",
    "p",
    "c_pol",
    "s_full",
    "s_reduced_pol",
    "i_pol",
    "k_freq",
    "c_freq",
    "s_reduced_freq",
    "i_freq",
    "s_rel_freq",
    "c_cl_freq",
    "k_photon",
    "k_2qb",
    "p_2qb",
    "c_2qb",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientBasis {
    /// `(C1, C2, C3, C4)`
    #[default]
    Natural,
    /// `(C1, B+, C4, B−)`
    Mixed,
}

/// Rule fixing the non-swept coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `C1 = C4 = 0`, `B+ = e^{iφ} √(1 − |B−|²)`.
    Example1,
    /// `B+ = C4 = 0`, `C1 = e^{iφ1} √(1 − |B−|²)`.
    Example2a,
    /// `B+ = 0`, `C1 = e^{iφ1} r`, `C4 = e^{iφ4} r`, `r = √((1 − |B−|²)/2)`.
    Example2b,
    /// Takes the configured coefficients, sets the swept modulus and rescales
    /// the other three by a common factor, keeping all phases.
    Scaled,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example1" => Ok(Family::Example1),
            "example2a" => Ok(Family::Example2a),
            "example2b" => Ok(Family::Example2b),
            "scaled" => Ok(Family::Scaled),
            _ => Err(Error::Config(format!("unknown family `{s}`"))),
        }
    }
}

/// Modulus of a mixed-basis coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweptModulus {
    C1,
    BPlus,
    C4,
    #[default]
    BMinus,
}

impl SweptModulus {
    pub fn column(self) -> &'static str {
        match self {
            SweptModulus::C1 => "c1",
            SweptModulus::BPlus => "b_plus",
            SweptModulus::C4 => "c4",
            SweptModulus::BMinus => "b_minus",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Phases {
    #[serde(default)]
    pub phi: f64,
    #[serde(default)]
    pub phi1: f64,
    #[serde(default)]
    pub phi4: f64,
}

fn default_to() -> f64 {
    1.0
}

fn default_steps() -> usize {
    DEFAULT_STEPS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub family: Family,
    #[serde(default)]
    pub parameter: SweptModulus,
    #[serde(default)]
    pub from: f64,
    #[serde(default = "default_to")]
    pub to: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default)]
    pub phases: Phases,
}

impl SweepSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            parameter: SweptModulus::BMinus,
            from: 0.0,
            to: default_to(),
            steps: DEFAULT_STEPS,
            phases: Phases::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Config(format!("steps must be at least 2, got {}", self.steps)));
        }
        if !(self.from.is_finite() && self.to.is_finite()) || self.from >= self.to {
            return Err(Error::Config(format!("need from < to, got {} and {}", self.from, self.to)));
        }
        if self.from < 0.0 || self.to > 1.0 {
            return Err(Error::Config(format!(
                "a modulus sweep must stay within [0, 1], got [{}, {}]",
                self.from, self.to
            )));
        }
        if self.family != Family::Scaled && self.parameter != SweptModulus::BMinus {
            return Err(Error::Config(format!(
                "family {:?} sweeps b_minus only",
                self.family
            )));
        }
        Ok(())
    }

    /// Inclusive uniform grid; the last point is exactly `to`.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.to
                } else {
                    self.from + (self.to - self.from) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub basis: CoefficientBasis,
    /// Four `[re, im]` pairs.
    #[serde(default)]
    pub coefficients: Option<[[f64; 2]; 4]>,
    /// Rescale coefficients of any nonzero norm instead of rejecting them.
    #[serde(default)]
    pub auto_normalize: bool,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    /// Quantities to emit; empty means all.
    #[serde(default)]
    pub outputs: Vec<String>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if let Some(s) = &cfg.sweep {
            s.validate()?;
        }
        Ok(cfg)
    }

    /// The configured coefficients, `None` when absent.
    pub fn coeffs(&self) -> Result<Option<QuquartCoeffs>> {
        let Some(pairs) = self.coefficients else {
            return Ok(None);
        };
        let c = pairs.map(|[re, im]| Complex64::new(re, im));
        let natural = match self.basis {
            CoefficientBasis::Natural => c,
            CoefficientBasis::Mixed => {
                let [c1, bp, c4, bm] = c;
                [c1, (bp + bm) * FRAC_1_SQRT_2, (bp - bm) * FRAC_1_SQRT_2, c4]
            }
        };
        let q = if self.auto_normalize {
            QuquartCoeffs::normalizing(natural)?
        } else {
            QuquartCoeffs::from_array(natural)?
        };
        Ok(Some(q))
    }

    pub fn require_coeffs(&self) -> Result<QuquartCoeffs> {
        self.coeffs()?
            .ok_or_else(|| Error::Config("`coefficients` missing".into()))
    }
}

/// Coefficients of a sweep family at swept modulus `t`.
pub fn family_coeffs(spec: &SweepSpec, base: Option<&QuquartCoeffs>, t: f64) -> Result<QuquartCoeffs> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Config(format!("modulus {t} outside [0, 1]")));
    }
    let rest = (1.0 - t * t).max(0.0);
    let bm = Complex64::new(t, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let ph = spec.phases;
    match spec.family {
        Family::Example1 => QuquartCoeffs::from_mixed(zero, Complex64::from_polar(rest.sqrt(), ph.phi), zero, bm),
        Family::Example2a => QuquartCoeffs::from_mixed(Complex64::from_polar(rest.sqrt(), ph.phi1), zero, zero, bm),
        Family::Example2b => {
            let r = (rest / 2.0).sqrt();
            QuquartCoeffs::from_mixed(Complex64::from_polar(r, ph.phi1), zero, Complex64::from_polar(r, ph.phi4), bm)
        }
        Family::Scaled => {
            let base = base.ok_or_else(|| Error::Config("family `scaled` needs coefficients".into()))?;
            let k = spec.parameter.slot();
            let mut m = base.mixed();
            let others: f64 = (0..4).filter(|&j| j != k).map(|j| m[j].norm_sqr()).sum();
            if others == 0.0 && rest > 0.0 {
                return Err(Error::Config(format!(
                    "cannot rescale: all coefficients other than {} vanish",
                    spec.parameter.column()
                )));
            }
            let phase = if m[k].norm() > 0.0 { m[k] / m[k].norm() } else { Complex64::new(1.0, 0.0) };
            let s = if others > 0.0 { (rest / others).sqrt() } else { 0.0 };
            for (j, z) in m.iter_mut().enumerate() {
                *z = if j == k { phase * t } else { *z * s };
            }
            QuquartCoeffs::from_mixed(m[0], m[1], m[2], m[3])
        }
    }
}

fn sweep_values(a: &QuquartAnalysis) -> [Cell; 16] {
    let (p, f, q) = (&a.polarization, &a.frequency, &a.two_qubit);
    [
        p.k.into(),
        p.p.into(),
        p.c.into(),
        p.s_full.into(),
        p.s_reduced.into(),
        p.mutual_info.into(),
        f.k.into(),
        f.c.into(),
        f.s_reduced.into(),
        f.mutual_info.into(),
        f.s_rel.into(),
        f.c_cl.into(),
        a.k_photon.into(),
        q.k_2qb.into(),
        q.p_2qb.into(),
        q.c_2qb.into(),
    ]
}

/// Analyses every grid point in parallel; results come back in grid order.
pub fn sweep_analyses(spec: &SweepSpec, base: Option<&QuquartCoeffs>) -> Result<Vec<(f64, QuquartAnalysis)>> {
    spec.validate()?;
    spec.grid()
        .into_par_iter()
        .map(|t| Ok((t, analyze(&family_coeffs(spec, base, t)?)?)))
        .collect()
}

/// Sweep table; `outputs` selects and orders columns (empty: all).
pub fn sweep_table(spec: &SweepSpec, base: Option<&QuquartCoeffs>, outputs: &[String]) -> Result<Table> {
    let selected: Vec<usize> = if outputs.is_empty() {
        (0..SWEEP_COLUMNS.len()).collect()
    } else {
        outputs
            .iter()
            .map(|name| {
                SWEEP_COLUMNS
                    .iter()
                    .position(|c| c == name)
                    .ok_or_else(|| Error::Config(format!("unknown output `{name}`")))
            })
            .collect::<Result<_>>()?
    };
    let rows = sweep_analyses(spec, base)?;
    let mut table = Table::new(
        std::iter::once(spec.parameter.column()).chain(selected.iter().map(|&j| SWEEP_COLUMNS[j])),
    );
    for (t, a) in &rows {
        let values = sweep_values(a);
        let mut row = vec![Cell::Num(*t)];
        row.extend(selected.iter().map(|&j| values[j].clone()));
        table.push(row);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [FigureId::Fig1, FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5];

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(FigureId::Fig1),
            2 => Ok(FigureId::Fig2),
            3 => Ok(FigureId::Fig3),
            4 => Ok(FigureId::Fig4),
            5 => Ok(FigureId::Fig5),
            _ => Err(Error::Config(format!("figure must be 1..5, got {n}"))),
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            FigureId::Fig1 => &["b_minus", "s"],
            FigureId::Fig2 => &["b_minus", "k", "c", "s_rel", "i", "c_cl"],
            FigureId::Fig3 => &["b_minus", "k", "c", "i", "p"],
            FigureId::Fig4 | FigureId::Fig5 => &["b_minus", "k_pol", "p_4", "c_pol", "k_2qb", "p_2qb", "c_2qb"],
        }
    }

    fn family(self) -> Family {
        match self {
            FigureId::Fig1 | FigureId::Fig2 | FigureId::Fig4 => Family::Example1,
            FigureId::Fig3 | FigureId::Fig5 => Family::Example2a,
        }
    }
}

/// Figure dataset over the default 201-point `|B−|` grid.
///
/// * Fig1: entropy of the mixed state.
/// * Fig2: frequency-mixed state `K, C, S_rel, I, C_cl`.
/// * Fig3: polarization-mixed state with `B+ = C4 = 0`: `K, C, I, P`.
/// * Fig4, Fig5: polarization picture against the two-qubit model, for
///   `C1 = C4 = 0` (real) and `B+ = C4 = 0` respectively.
pub fn figure_table(fig: FigureId) -> Result<Table> {
    let spec = SweepSpec::new(fig.family());
    let rows = sweep_analyses(&spec, None)?;
    let mut table = Table::new(fig.columns().iter().copied());
    for (b, a) in &rows {
        let (p, f, q) = (&a.polarization, &a.frequency, &a.two_qubit);
        let row: Vec<Cell> = match fig {
            FigureId::Fig1 => vec![(*b).into(), f.s_full.into()],
            FigureId::Fig2 => vec![
                (*b).into(),
                f.k.into(),
                f.c.into(),
                f.s_rel.into(),
                f.mutual_info.into(),
                f.c_cl.into(),
            ],
            FigureId::Fig3 => vec![(*b).into(), p.k.into(), p.c.into(), p.mutual_info.into(), p.p.into()],
            FigureId::Fig4 | FigureId::Fig5 => vec![
                (*b).into(),
                p.k.into(),
                p.p.into(),
                p.c.into(),
                q.k_2qb.into(),
                q.p_2qb.into(),
                q.c_2qb.into(),
            ],
        };
        table.push(row);
    }
    Ok(table)
}

/// One-state report as a table of `quantity,numeric,closed_form,residual`.
pub fn analysis_table(a: &QuquartAnalysis, outputs: &[String]) -> Result<Table> {
    let mut table = Table::new(["quantity", "numeric", "closed_form", "residual"]);
    let mut rows: Vec<(String, Cell, Cell, Cell)> = Vec::new();
    for (prefix, r) in [("pol", &a.polarization), ("freq", &a.frequency)] {
        let plain = [
            ("k", Some(r.k)),
            ("c", Some(r.c)),
            ("s_full", Some(r.s_full)),
            ("s_reduced", Some(r.s_reduced)),
            ("i", Some(r.mutual_info)),
            ("s_rel", r.s_rel),
            ("c_cl", r.c_cl),
            ("xi1", Some(r.stokes.xi1)),
            ("xi2", Some(r.stokes.xi2)),
            ("xi3", Some(r.stokes.xi3)),
            ("p", Some(r.p)),
        ];
        for (name, v) in plain {
            rows.push((format!("{prefix}.{name}"), v.into(), Cell::Empty, Cell::Empty));
        }
    }
    rows.push(("k_photon".into(), a.k_photon.into(), Cell::Empty, Cell::Empty));
    for c in &a.comparisons {
        rows.push((
            format!("check.{}", c.name),
            c.numeric.into(),
            c.closed_form.into(),
            c.residual.into(),
        ));
    }
    if !outputs.is_empty() {
        for name in outputs {
            if !rows.iter().any(|r| &r.0 == name) {
                return Err(Error::Config(format!("unknown output `{name}`")));
            }
        }
        rows.retain(|r| outputs.contains(&r.0));
    }
    for (q, n, c, r) in rows {
        table.push(vec![Cell::Text(q), n, c, r]);
    }
    Ok(table)
}
