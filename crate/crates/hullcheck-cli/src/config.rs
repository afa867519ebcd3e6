//! Run configuration: which solver, which posing mode, and the knobs both
//! share. A fixed configuration plus a fixed seed determines every output
//! byte.

use anyhow::{bail, Result};
use hullcheck_core::{GeometryError, PivotRule, Tolerances};
use serde::Serialize;

/// Which solver runs on a membership instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// The plain pivot iteration (optionally with strategy pivot rules).
    Triangle,
    /// Coordinate-only virtual-target iteration; no coefficient expansion.
    Virtual,
    /// Virtual targets approximated back inside the hull every `t` steps.
    Avta,
    /// Growing-face iteration carrying up to `k` hull points.
    DeltaK,
    /// Sparse-greedy baseline (no witness mechanism).
    Greedy,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Triangle => "triangle",
            Variant::Virtual => "virtual",
            Variant::Avta => "avta",
            Variant::DeltaK => "delta-k",
            Variant::Greedy => "greedy",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "triangle" => Ok(Variant::Triangle),
            "virtual" => Ok(Variant::Virtual),
            "avta" => Ok(Variant::Avta),
            "delta-k" | "delta_k" => Ok(Variant::DeltaK),
            "greedy" => Ok(Variant::Greedy),
            other => Err(format!(
                "unknown variant {other:?}; expected one of triangle, virtual, avta, delta-k, greedy"
            )),
        }
    }
}

/// What kind of problem the inputs pose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Decide whether the query lies in the hull of the points.
    #[serde(rename = "membership")]
    Membership,
    /// `Ax = b, x >= 0` via the no-recession reduction with sensitivity-based
    /// accuracy transfer.
    #[serde(rename = "lp_norecession")]
    LpNoRecession,
    /// `Ax = b, x >= 0, sum(x) <= M` via the augmented-simplex reduction.
    #[serde(rename = "lp_boundedM")]
    LpBoundedM,
    /// Bounded-simplex rounds with the bound doubled up to a cap.
    #[serde(rename = "lp_doubling")]
    LpDoubling,
    /// Does the hull of the centers meet the open balls' intersection?
    #[serde(rename = "balls")]
    Balls,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Membership => "membership",
            Mode::LpNoRecession => "lp_norecession",
            Mode::LpBoundedM => "lp_boundedM",
            Mode::LpDoubling => "lp_doubling",
            Mode::Balls => "balls",
        }
    }

    pub fn is_lp(&self) -> bool {
        matches!(self, Mode::LpNoRecession | Mode::LpBoundedM | Mode::LpDoubling)
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "membership" => Ok(Mode::Membership),
            "lp_norecession" | "lp-norecession" => Ok(Mode::LpNoRecession),
            "lp_boundedM" | "lp_boundedm" | "lp-boundedm" => Ok(Mode::LpBoundedM),
            "lp_doubling" | "lp-doubling" => Ok(Mode::LpDoubling),
            "balls" => Ok(Mode::Balls),
            other => Err(format!(
                "unknown mode {other:?}; expected one of membership, lp_norecession, \
                 lp_boundedM, lp_doubling, balls"
            )),
        }
    }
}

/// Everything a run needs besides the input data. Mirrors the solver
/// tolerance invariants; a fixed seed yields byte-identical outputs.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub variant: Variant,
    pub pivot_rule: PivotRule,
    /// Relative accuracy target in (0,1) for membership solves (and the
    /// internal accuracy of the bounded-simplex LP modes).
    pub eps: f64,
    /// Residual accuracy target for the no-recession LP mode.
    pub eps0: f64,
    /// Carried hull points for the growing-face variant (2..=n+1).
    pub k: usize,
    /// Inner budget for the virtual-target variants.
    pub t: usize,
    pub max_iters: usize,
    /// Seed for instance generation and sampling diagnostics.
    pub seed: u64,
    pub mode: Mode,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            variant: Variant::Triangle,
            pivot_rule: PivotRule::FirstIndex,
            eps: 1e-3,
            eps0: 1e-2,
            k: 2,
            t: 5,
            max_iters: 10_000_000,
            seed: 0,
            mode: Mode::Membership,
        }
    }
}

impl RunConfig {
    /// The solver tolerances this configuration asks for. Fails when a field
    /// is out of range (an input error at the command line).
    pub fn tolerances(&self) -> Result<Tolerances, GeometryError> {
        Ok(Tolerances::new(self.eps)?
            .with_rule(self.pivot_rule)
            .with_max_iters(self.max_iters)
            .with_t_inner(self.t)
            .with_k_faces(self.k))
    }

    /// Field checks that do not need the instance size; `Tolerances::validate`
    /// covers the size-dependent ones at dispatch time.
    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            bail!("--eps must lie strictly between 0 and 1, got {}", self.eps);
        }
        if self.mode == Mode::LpNoRecession && !(self.eps0 > 0.0 && self.eps0 < 1.0) {
            bail!("--eps0 must lie strictly between 0 and 1, got {}", self.eps0);
        }
        if self.max_iters == 0 {
            bail!("--max-iters must be positive");
        }
        if self.t == 0 {
            bail!("--t must be positive");
        }
        if self.k < 2 {
            bail!("--k must be at least 2, got {}", self.k);
        }
        Ok(())
    }
}
