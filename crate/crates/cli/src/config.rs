use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};

use shelstad_core::packets::{LambdaRange, Route};
use shelstad_core::roots::{RootSystem, Weight};
use shelstad_core::torus::TorusPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    ListCatalog,
    Validate,
    Packet,
    Character,
    Verify,
    Sweep,
    Pf1,
    Weil,
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Csv,
}

/// Which Harish-Chandra parameters to use.
///
/// Grammar: `n=3` or `n=1..20` (multiples of ρ), `shift=0..3` (`ρ + μ` with
/// every coordinate of `μ` in the range), or explicit weights in
/// fundamental coordinates separated by `;` (`2,1;1,2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaSpec {
    RhoMultiples(i64, i64),
    Shifted(i64, i64),
    Explicit(Vec<Weight>),
}

impl Default for LambdaSpec {
    fn default() -> Self {
        LambdaSpec::RhoMultiples(1, 1)
    }
}

fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let bad = || format!("bad range '{text}' (expected 'a' or 'a..b')");
    match text.split_once("..") {
        Some((a, b)) => Ok((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )),
        None => {
            let a = text.trim().parse().map_err(|_| bad())?;
            Ok((a, a))
        }
    }
}

fn format_range(f: &mut fmt::Formatter<'_>, key: &str, lo: i64, hi: i64) -> fmt::Result {
    if lo == hi {
        write!(f, "{key}={lo}")
    } else {
        write!(f, "{key}={lo}..{hi}")
    }
}

impl FromStr for LambdaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(r) = s.strip_prefix("n=") {
            let (lo, hi) = parse_range(r)?;
            return Ok(LambdaSpec::RhoMultiples(lo, hi));
        }
        if let Some(r) = s.strip_prefix("shift=") {
            let (lo, hi) = parse_range(r)?;
            return Ok(LambdaSpec::Shifted(lo, hi));
        }
        s.split(';')
            .map(|w| Weight::parse(w).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()
            .map(LambdaSpec::Explicit)
    }
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSpec::RhoMultiples(lo, hi) => format_range(f, "n", *lo, *hi),
            LambdaSpec::Shifted(lo, hi) => format_range(f, "shift", *lo, *hi),
            LambdaSpec::Explicit(ws) => {
                let parts: Vec<String> = ws
                    .iter()
                    .map(|w| {
                        let s = w.to_string();
                        s[1..s.len() - 1].to_string()
                    })
                    .collect();
                write!(f, "{}", parts.join(";"))
            }
        }
    }
}

impl LambdaSpec {
    pub fn to_range(&self) -> LambdaRange {
        match self {
            LambdaSpec::RhoMultiples(lo, hi) => LambdaRange::RhoMultiples { lo: *lo, hi: *hi },
            LambdaSpec::Shifted(lo, hi) => LambdaRange::ShiftedBox { lo: *lo, hi: *hi },
            LambdaSpec::Explicit(ws) => LambdaRange::Explicit(ws.clone()),
        }
    }

    pub fn weights(&self, rs: &RootSystem) -> Vec<Weight> {
        self.to_range().weights(rs)
    }

    /// The integers named by an `n=` spec, used by `weil`.
    pub fn integers(&self) -> Option<Vec<i64>> {
        match self {
            LambdaSpec::RhoMultiples(lo, hi) => Some((*lo..=*hi).collect()),
            _ => None,
        }
    }
}

/// One invocation of the tool. Every field has a flag, and [`RunConfig::to_args`]
/// writes a configuration back as the flags that reproduce it.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(
    name = "shelstad",
    version,
    about = "Exact checks of discrete-series packet character identities"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Pair name (`su21/su3`) or noncompact label (`su21`).
    #[arg(long)]
    pub pair: Option<String>,

    /// JSON catalog file to use instead of the built-in one.
    #[arg(long)]
    pub catalog: Option<PathBuf>,

    /// `n=3`, `n=1..20`, `shift=0..3`, or weights like `2,1;1,2`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<LambdaSpec>,

    /// Torus point in simple-coroot coordinates, e.g. `1/4` or `1/5,2/7`.
    /// Repeatable; when absent, points are sampled.
    #[arg(long = "point", allow_hyphen_values = true)]
    pub points: Vec<TorusPoint>,

    #[arg(long, default_value_t = 20)]
    pub count: usize,

    /// Largest common denominator of sampled points.
    #[arg(long, default_value_t = 16)]
    pub bound: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = Route::Both)]
    pub route: Route,

    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,

    /// Worker threads; defaults to the available cores.
    #[arg(long, env = "SHELSTAD_JOBS")]
    pub jobs: Option<usize>,

    /// Number of t values for `plot`.
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,

    /// Half-width of the excluded neighbourhood around singular t for `plot`.
    #[arg(long, default_value_t = 1e-3)]
    pub margin: f64,

    /// Direction `d` of the one-parameter subgroup `t ↦ (t/2π)·d` for `plot`;
    /// defaults to all ones.
    #[arg(long, allow_hyphen_values = true)]
    pub direction: Option<Weight>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            pair: None,
            catalog: None,
            lambda: None,
            points: Vec::new(),
            count: 20,
            bound: 16,
            seed: 0,
            route: Route::Both,
            format: OutputFormat::Human,
            jobs: None,
            grid: 1000,
            margin: 1e-3,
            direction: None,
        }
    }

    pub fn lambda_spec(&self) -> LambdaSpec {
        self.lambda.clone().unwrap_or_default()
    }

    /// The command line (without the program name) that parses back to `self`.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![self
            .command
            .to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()];
        let mut flag = |name: &str, value: String| {
            args.push(format!("--{name}"));
            args.push(value);
        };
        if let Some(p) = &self.pair {
            flag("pair", p.clone());
        }
        if let Some(c) = &self.catalog {
            flag("catalog", c.display().to_string());
        }
        if let Some(l) = &self.lambda {
            flag("lambda", l.to_string());
        }
        for p in &self.points {
            flag("point", p.to_string());
        }
        flag("count", self.count.to_string());
        flag("bound", self.bound.to_string());
        flag("seed", self.seed.to_string());
        flag("route", self.route.to_string());
        flag(
            "format",
            self.format
                .to_possible_value()
                .expect("no skipped variants")
                .get_name()
                .to_string(),
        );
        if let Some(j) = self.jobs {
            flag("jobs", j.to_string());
        }
        flag("grid", self.grid.to_string());
        flag("margin", format!("{:?}", self.margin));
        if let Some(d) = &self.direction {
            flag("direction", d.to_string());
        }
        args
    }
}
