//! Command-line arguments and their resolution into a [`RunConfig`].

use std::fs;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gapn_core::function::{binomial, general_gold, generalized_gold, inverse_permutation, monomial};
use gapn_core::report::{parse_elements, parse_poly, FunctionRepr};
use gapn_core::{Elem, Error, Field, FunctionTable, Result};

#[derive(Parser, Debug)]
#[command(name = "gapn", version, about = "GAPN, GAB and dual-arc analysis over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Differential spectrum, Walsh values, degree and Fourier-sum verdict.
    Check {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: SourceArgs,
        /// Largest field size accepted.
        #[arg(long, default_value_t = 4096)]
        max_size: usize,
    },
    /// Sweep monomial exponents, one JSON line per cyclotomic coset.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = gapn_core::search::SEARCH_FIELD_LIMIT)]
        max_size: usize,
    },
    /// Build and verify the dual arc of a GAPN function of degree p.
    Dualarc {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = MuNu::GoldIdentity)]
        munu: MuNu,
        /// Comma-separated element indices; defaults to a greedy cap set.
        #[arg(long)]
        m_set: Option<String>,
        #[arg(long, default_value_t = gapn_core::dual_arc::BILINEAR_FIELD_LIMIT)]
        max_size: usize,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    /// Field spec, e.g. "p=3,n=5,mod=1,2,0,0,0,1" (mod optional).
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("function").required(true).multiple(false)))]
pub struct SourceArgs {
    /// x^D
    #[arg(long, group = "function")]
    pub mono: Option<u64>,
    /// Terms "d:c,d:c" with c an element index.
    #[arg(long, group = "function")]
    pub poly: Option<String>,
    /// Lookup table: function JSON, or element indices separated by commas or whitespace.
    #[arg(long, group = "function")]
    pub lut: Option<PathBuf>,
    /// Generalized Gold x^(p^I + p - 1).
    #[arg(long, group = "function")]
    pub gold: Option<u32>,
    /// General Gold with shifts "i2,...,ip".
    #[arg(long, group = "function")]
    pub general_gold: Option<String>,
    /// Inverse permutation x^(q-2).
    #[arg(long, group = "function")]
    pub inverse: bool,
    /// Binomial x^(p^I+p-1) - x^(p^(n-I)+p-1).
    #[arg(long, group = "function")]
    pub binomial: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuNu {
    MonomialInverse,
    GoldIdentity,
}

#[derive(Clone, Debug)]
pub enum FunctionSource {
    Mono(u64),
    Poly(String),
    Lut(PathBuf),
    Gold(u32),
    GeneralGold(Vec<u32>),
    Inverse,
    Binomial(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Check,
    Search,
    Dualarc { munu: MuNu },
}

/// Everything a command needs, validated.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: Field,
    pub source: Option<FunctionSource>,
    pub command: CommandKind,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: u64,
    pub m_set: Option<Vec<Elem>>,
}

fn parse_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))))
        .collect()
}

impl SourceArgs {
    fn resolve(&self) -> Result<FunctionSource> {
        Ok(if let Some(d) = self.mono {
            FunctionSource::Mono(d)
        } else if let Some(p) = &self.poly {
            FunctionSource::Poly(p.clone())
        } else if let Some(path) = &self.lut {
            FunctionSource::Lut(path.clone())
        } else if let Some(i) = self.gold {
            FunctionSource::Gold(i)
        } else if let Some(s) = &self.general_gold {
            FunctionSource::GeneralGold(parse_list(s)?)
        } else if self.inverse {
            FunctionSource::Inverse
        } else if let Some(i) = self.binomial {
            FunctionSource::Binomial(i)
        } else {
            return Err(Error::Parse("no function given".into()));
        })
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig> {
        let (common, source, command, max_size, m_set) = match cli.command {
            Command::Check { common, source, max_size } => (common, Some(source), CommandKind::Check, max_size, None),
            Command::Search { common, max_size } => (common, None, CommandKind::Search, max_size, None),
            Command::Dualarc { common, source, munu, m_set, max_size } => {
                (common, Some(source), CommandKind::Dualarc { munu }, max_size, m_set)
            }
        };
        let field: Field = common.field.parse()?;
        if field.size() > max_size {
            return Err(Error::GuardExceeded(format!(
                "field of size {} exceeds --max-size {max_size}",
                field.size()
            )));
        }
        let m_set = m_set.map(|s| parse_elements(&field, &s)).transpose()?;
        Ok(RunConfig {
            field,
            source: source.map(|s| s.resolve()).transpose()?,
            command,
            output: common.json,
            threads: common.threads,
            seed: common.seed,
            m_set,
        })
    }

    /// Builds the function named by the source.
    pub fn function(&self) -> Result<FunctionRepr> {
        let field = &self.field;
        let source = self.source.as_ref().ok_or_else(|| Error::Parse("no function given".into()))?;
        Ok(match source {
            FunctionSource::Mono(d) => FunctionRepr::Poly(monomial(field, *d)),
            FunctionSource::Poly(text) => FunctionRepr::Poly(parse_poly(field, text)?),
            FunctionSource::Lut(path) => read_lut(field, path)?,
            FunctionSource::Gold(i) => FunctionRepr::Poly(generalized_gold(field, *i)?),
            FunctionSource::GeneralGold(shifts) => {
                let (poly, hypothesis) = general_gold(field, shifts)?;
                if !hypothesis {
                    log::warn!("kernel hypothesis fails for shifts {shifts:?}; the result need not be GAPN");
                }
                FunctionRepr::Poly(poly)
            }
            FunctionSource::Inverse => FunctionRepr::Poly(inverse_permutation(field)),
            FunctionSource::Binomial(i) => FunctionRepr::Poly(binomial(field, *i)?),
        })
    }
}

fn read_lut(field: &Field, path: &PathBuf) -> Result<FunctionRepr> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let f = FunctionRepr::from_json_str(&text)?;
        if f.field() != field {
            return Err(Error::SpecMismatch);
        }
        return Ok(f);
    }
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace() || c == '[' || c == ']')
        .filter(|s| !s.is_empty())
        .map(|s| {
            let v: u64 = s.parse().map_err(|_| Error::Parse(format!("bad table entry {s:?}")))?;
            field.elem(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctionRepr::Lut(FunctionTable::new(field, values)?))
}
