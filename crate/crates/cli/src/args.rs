use clap::{Args, ValueEnum};
use serde::Serialize;
use smilansky::jacobi::{OffDiagSequence, Side, TruncationPolicy};
use smilansky::pollaczek::PollaczekParams;
use smilansky::smilansky::{BondLength, ModeSpaceGrid, DEFAULT_MODES};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Jeps,
    J0,
    Pollaczek,
    Const,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Above,
    Below,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Above => Side::Above,
            SideArg::Below => Side::Below,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    /// ε for `jeps`.
    #[arg(long)]
    pub eps: Option<f64>,
    /// λ for `pollaczek`.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// r for `pollaczek`.
    #[arg(long)]
    pub r: Option<f64>,
    /// Entry value for `const`.
    #[arg(long)]
    pub value: Option<f64>,
}

fn required(value: Option<f64>, flag: &str, family: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--family {family} requires --{flag}")))
}

impl FamilyArgs {
    pub fn build(&self) -> Result<OffDiagSequence<f64>, CliError> {
        Ok(match self.family {
            FamilyKind::J0 => OffDiagSequence::j0(),
            FamilyKind::Jeps => OffDiagSequence::j_eps(required(self.eps, "eps", "jeps")?)?,
            FamilyKind::Pollaczek => OffDiagSequence::pollaczek(PollaczekParams::new(
                required(self.lambda, "lambda", "pollaczek")?,
                required(self.r, "r", "pollaczek")?,
            )?),
            FamilyKind::Const => {
                OffDiagSequence::constant(required(self.value, "value", "const")?)?
            }
        })
    }
}

/// Parses `j0`, `jeps:<eps>`, `pollaczek:<lambda>,<r>` or `const:<value>`.
pub fn parse_family_spec(spec: &str) -> Result<OffDiagSequence<f64>, CliError> {
    let bad = || CliError::Usage(format!("invalid family spec '{spec}'"));
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(match (name, nums.as_slice()) {
        ("j0", []) => OffDiagSequence::j0(),
        ("jeps", [eps]) => OffDiagSequence::j_eps(*eps)?,
        ("pollaczek", [lambda, r]) => {
            OffDiagSequence::pollaczek(PollaczekParams::new(*lambda, *r)?)
        }
        ("const", [v]) => OffDiagSequence::constant(*v)?,
        _ => return Err(bad()),
    })
}

/// `inf` or a positive length.
pub fn parse_bond_length(text: &str) -> Result<BondLength<f64>, String> {
    if text.eq_ignore_ascii_case("inf") {
        return Ok(BondLength::Infinite);
    }
    text.parse::<f64>()
        .map(BondLength::Finite)
        .map_err(|_| format!("expected 'inf' or a number, got '{text}'"))
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TruncArgs {
    /// First truncation size of the doubling schedule.
    #[arg(long, default_value_t = 1024)]
    pub n_start: usize,
    /// Largest truncation size tried.
    #[arg(long, default_value_t = 1 << 22)]
    pub n_max: usize,
}

impl TruncArgs {
    pub fn policy(&self) -> Result<TruncationPolicy, CliError> {
        let d = TruncationPolicy::default();
        Ok(TruncationPolicy::new(
            self.n_start,
            d.growth_factor,
            d.plateau_window,
            self.n_max,
        )?)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GridArgs {
    /// Hermite modes kept.
    #[arg(long, default_value_t = DEFAULT_MODES)]
    pub modes: usize,
    /// Bond length L of each half-infinite bond (default depends on ε).
    #[arg(long)]
    pub half_length: Option<f64>,
    /// Mesh step h (default depends on the mode count).
    #[arg(long)]
    pub step: Option<f64>,
}

impl GridArgs {
    pub fn grid(&self, eps: f64) -> Result<ModeSpaceGrid<f64>, CliError> {
        let base = ModeSpaceGrid::default_for(eps, self.modes)?;
        Ok(match (self.half_length, self.step) {
            (None, None) => base,
            (Some(l), None) => ModeSpaceGrid::new(self.modes, l, base.step())?,
            (None, Some(h)) => {
                let l = (base.half_length() / h).ceil() * h;
                ModeSpaceGrid::new(self.modes, l, h)?
            }
            (Some(l), Some(h)) => ModeSpaceGrid::new(self.modes, l, h)?,
        })
    }
}
