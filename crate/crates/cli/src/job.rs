//! Turning command-line flags into a Coxeter context and a chosen `Π`.

use std::path::PathBuf;
use std::sync::Arc;

use arq_core::arq::{build_ihat, simple_system_from_height, HeightFunction};
use arq_core::coxeter::{coxeter_from_orientation, enumerate_compatible};
use arq_core::{CoxeterContext, DynkinType, Execution, Orientation, RootSystem, SimpleSystem};
use clap::{Args, ValueEnum};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    /// Dynkin type, e.g. A4, D5, E6.
    #[arg(long = "type", value_name = "TYPE")]
    pub dynkin: String,

    /// Coxeter element as a word ("1 2 3 4") or an orientation ("1>2 3>2").
    #[arg(long)]
    pub coxeter: Option<String>,

    /// Compatible simple system: an index into the compatible list, or "h:v1,...,vr".
    #[arg(long)]
    pub pi: Option<String>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Radius of the ℤI window used for AR quivers.
    #[arg(long)]
    pub window: Option<i64>,
}

pub struct Job {
    pub ctx: CoxeterContext,
    pub pi: SimpleSystem,
    pub orientation: Orientation,
    pub seed: u64,
    pub window: Option<i64>,
}

impl Job {
    pub fn from_args(args: &JobArgs) -> Result<Self> {
        let dynkin: DynkinType = args.dynkin.parse()?;
        let rs = Arc::new(RootSystem::new(dynkin));
        let orientation = match &args.coxeter {
            Some(text) => parse_coxeter(&rs, text)?,
            None => Orientation::from_word(&rs, &(0..rs.rank()).collect::<Vec<_>>()),
        };
        let reference = SimpleSystem::reference(&rs);
        let ctx = coxeter_from_orientation(&rs, &reference, &orientation)?;
        let pi = match &args.pi {
            Some(text) => parse_pi(&ctx, text)?,
            None => ctx.canonical_simple_system().clone(),
        };
        Ok(Job {
            ctx,
            pi,
            orientation,
            seed: args.seed,
            window: args.window,
        })
    }

    pub fn rs(&self) -> &RootSystem {
        self.ctx.root_system()
    }

    pub fn dynkin(&self) -> DynkinType {
        self.rs().dynkin()
    }
}

/// Whitespace- or comma-separated tokens with their 1-based columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (k, c)) in text.char_indices().enumerate() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (false, None) => start = Some((col + 1, k)),
            (true, Some((c0, k0))) => {
                out.push((c0, &text[k0..k]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c0, k0)) = start {
        out.push((c0, &text[k0..]));
    }
    out
}

fn vertex(rs: &RootSystem, token: &str, column: usize) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(v) if (1..=rs.rank()).contains(&v) => Ok(v - 1),
        _ => Err(CliError::parse(
            "coxeter",
            1,
            column,
            format!("expected a vertex label 1..{}, got {token:?}", rs.rank()),
        )),
    }
}

/// Parses `--coxeter`, either a word or an orientation.
pub fn parse_coxeter(rs: &RootSystem, text: &str) -> Result<Orientation> {
    let toks = tokens(text);
    let end = text.chars().count() + 1;
    if toks.iter().any(|(_, t)| t.contains('>')) {
        let edges = rs.edges();
        let mut arrows = Vec::new();
        for &(col, tok) in &toks {
            let Some((a, b)) = tok.split_once('>') else {
                return Err(CliError::parse("coxeter", 1, col, "expected an arrow a>b"));
            };
            let (a, b) = (vertex(rs, a, col)?, vertex(rs, b, col + a.chars().count() + 1)?);
            let edge = (a.min(b), a.max(b));
            if !edges.contains(&edge) {
                return Err(CliError::parse("coxeter", 1, col, format!("{tok} is not a Dynkin edge")));
            }
            if arrows.iter().any(|&(x, y): &(usize, usize)| (x.min(y), x.max(y)) == edge) {
                return Err(CliError::parse("coxeter", 1, col, format!("edge of {tok} is oriented twice")));
            }
            arrows.push((a, b));
        }
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| !arrows.iter().any(|&(x, y)| (x.min(y), x.max(y)) == (i, j))) {
            return Err(CliError::parse(
                "coxeter",
                1,
                end,
                format!("edge {}-{} has no orientation", i + 1, j + 1),
            ));
        }
        Ok(Orientation::from_arrows(rs, &arrows)?)
    } else {
        let mut word = Vec::new();
        for &(col, tok) in &toks {
            let v = vertex(rs, tok, col)?;
            if word.contains(&v) {
                return Err(CliError::parse("coxeter", 1, col, format!("vertex {tok} repeated")));
            }
            word.push(v);
        }
        if let Some(missing) = (0..rs.rank()).find(|v| !word.contains(v)) {
            return Err(CliError::parse(
                "coxeter",
                1,
                end,
                format!("vertex {} missing from the word", missing + 1),
            ));
        }
        Ok(Orientation::from_word(rs, &word))
    }
}

/// Parses `--pi`, either an index into the compatible list or `h:` heights.
pub fn parse_pi(ctx: &CoxeterContext, text: &str) -> Result<SimpleSystem> {
    if let Some(rest) = text.strip_prefix("h:") {
        let mut values = Vec::new();
        for (col, tok) in tokens(rest) {
            let v = tok.parse::<usize>().map_err(|_| {
                CliError::parse("pi", 1, col + 2, format!("expected a height, got {tok:?}"))
            })?;
            values.push(v);
        }
        let ihat = build_ihat(ctx.root_system());
        let target = HeightFunction::new(&ihat, values)?;
        return Ok(simple_system_from_height(ctx, &target)?);
    }
    let index = text.trim().parse::<usize>().map_err(|_| {
        CliError::parse("pi", 1, 1, format!("expected an index or h:v1,...,vr, got {text:?}"))
    })?;
    let systems = enumerate_compatible(ctx, Execution::default())?;
    let count = systems.len();
    systems.into_iter().nth(index).ok_or_else(|| {
        CliError::Usage(format!("--pi {index} is out of range: there are {count} compatible systems"))
    })
}
