//! `grouplet` command line: argument parsing, dispatch and report rendering.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::circulant::{embed, extract, matrix_from_json, matrix_to_json};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::{catalog, parse_group, FiniteGroup};
use crate::groupring::GroupRingElement;
use crate::maschke::{self, Certificate, MaschkeVerdict, RadicalDimension, DEFAULT_SEED};
use crate::selftest::{self, DEFAULT_FIELDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "grouplet",
    version,
    about = "Group rings, G-circulant matrices and semisimplicity verdicts"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "GROUPLET_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, clap::Args)]
pub struct Target {
    /// C<n>, D<m>, S<m>, Q8, products like C2xC4, or @table.json
    #[arg(long)]
    pub group: String,
    /// Q or F<p>
    #[arg(long)]
    pub field: String,
}

impl Target {
    fn resolve(&self) -> Result<(Arc<FiniteGroup>, FieldSpec)> {
        Ok((Arc::new(parse_group(&self.group)?), self.field.parse()?))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Semisimplicity verdict with certificate.
    Check {
        #[command(flatten)]
        target: Target,
    },
    /// Basis of the radical (or of the witness ideal when only a bound is available).
    Radical {
        #[command(flatten)]
        target: Target,
    },
    /// Element literal to G-circulant matrix JSON.
    Embed {
        #[command(flatten)]
        target: Target,
        /// Coefficients in group order, e.g. 2,5,7 or 1/2,0,3
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// G-circulant matrix JSON back to an element.
    Extract {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Verdicts over a grid of groups and fields.
    Sweep {
        /// Comma-separated group specs; defaults to the catalog up to --max-order.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        fields: Vec<String>,
        #[arg(long, default_value_t = 12)]
        max_order: usize,
    },
    /// Runs the invariant suite over the catalog.
    Selftest {
        #[arg(long, default_value_t = 12)]
        max_order: usize,
        /// Random samples per (group, field) for the sampled checks.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

pub fn run(config: &RunConfig) -> i32 {
    match execute(config).and_then(|(report, code)| emit(config, &report).map(|()| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn emit(config: &RunConfig, report: &str) -> Result<()> {
    match &config.out {
        Some(path) => std::fs::write(path, report).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a nonzero exit
            let _ = out.write_all(report.as_bytes());
            Ok(())
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Produces the report text and the exit code.
pub fn execute(config: &RunConfig) -> Result<(String, i32)> {
    let json = config.format == Format::Json;
    let report = match &config.command {
        Command::Check { target } => {
            let (g, k) = target.resolve()?;
            let v = maschke::verdict(&g, k, config.seed)?;
            if json {
                pretty(&v)
            } else {
                render_verdict(&v)
            }
        }
        Command::Radical { target } => {
            let (g, k) = target.resolve()?;
            let rad = maschke::radical(&g, k)?;
            let nil = rad.ideal_nilpotency_index()?;
            if json {
                pretty(&json!({
                    "group": g.label(),
                    "field": k,
                    "method": rad.method,
                    "exact": rad.method != maschke::RadicalMethod::WitnessIdealClosure,
                    "dimension": rad.dimension(),
                    "basis": rad.elements().iter().map(|e| e.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "ideal_nilpotency_index": nil,
                }))
            } else {
                let mut s = String::new();
                let what = match rad.method {
                    maschke::RadicalMethod::WitnessIdealClosure => "witness ideal inside rad",
                    _ => "rad",
                };
                writeln!(
                    s,
                    "{what}({k}[{}]) via {:?}, dimension {}",
                    g.label(),
                    rad.method,
                    rad.dimension()
                )
                .unwrap();
                for (i, e) in rad.elements().iter().enumerate() {
                    writeln!(s, "  e{} = {e}", i + 1).unwrap();
                }
                if let Some(m) = nil {
                    writeln!(s, "ideal power {m} is zero").unwrap();
                }
                s
            }
        }
        Command::Embed { target, element } => {
            let (g, k) = target.resolve()?;
            let m = embed(&GroupRingElement::parse_literal(&g, k, element)?);
            if json {
                pretty(&matrix_to_json(&m))
            } else {
                format!("{m}\n")
            }
        }
        Command::Extract { target, matrix } => {
            let (g, k) = target.resolve()?;
            let text = std::fs::read_to_string(matrix).map_err(|e| Error::Io {
                path: matrix.display().to_string(),
                message: e.to_string(),
            })?;
            let x = extract(&matrix_from_json(&text, k)?, &g)?;
            if json {
                pretty(&json!({
                    "group": g.label(),
                    "field": k,
                    "coefficients": x.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                }))
            } else {
                format!("{x}\n")
            }
        }
        Command::Sweep {
            groups,
            fields,
            max_order,
        } => {
            let groups: Vec<Arc<FiniteGroup>> = if groups.is_empty() {
                catalog(*max_order).into_iter().map(Arc::new).collect()
            } else {
                groups
                    .iter()
                    .map(|s| parse_group(s).map(Arc::new))
                    .collect::<Result<_>>()?
            };
            let field_specs: Vec<FieldSpec> = if fields.is_empty() {
                DEFAULT_FIELDS
                    .iter()
                    .map(|f| f.parse())
                    .collect::<Result<_>>()?
            } else {
                fields.iter().map(|f| f.parse()).collect::<Result<_>>()?
            };
            let verdicts = sweep(&groups, &field_specs, config.seed)?;
            if json {
                pretty(&verdicts)
            } else {
                render_sweep(&groups, &field_specs, &verdicts)
            }
        }
        Command::Selftest { max_order, samples } => {
            let report = selftest::run(*max_order, config.seed, *samples);
            let code = if report.failed() == 0 {
                EXIT_OK
            } else {
                EXIT_INTERNAL
            };
            let text = if json {
                pretty(&report)
            } else {
                let mut s = String::new();
                for c in &report.checks {
                    let mark = if c.passed() { "PASS" } else { "FAIL" };
                    writeln!(s, "{mark} {} ({} cases)", c.name, c.cases).unwrap();
                    for f in &c.failures {
                        writeln!(s, "     {f}").unwrap();
                    }
                }
                writeln!(s, "{} passed, {} failed", report.passed(), report.failed()).unwrap();
                s
            };
            return Ok((text, code));
        }
    };
    Ok((report, EXIT_OK))
}

/// Verdicts for `groups x fields`, row-major in input order.
pub fn sweep(
    groups: &[Arc<FiniteGroup>],
    fields: &[FieldSpec],
    seed: u64,
) -> Result<Vec<MaschkeVerdict>> {
    let cells: Vec<_> = groups
        .iter()
        .flat_map(|g| fields.iter().map(move |&k| (g, k)))
        .collect();
    cells
        .par_iter()
        .map(|(g, k)| maschke::verdict(g, *k, seed))
        .collect()
}

fn render_dimension(d: RadicalDimension) -> String {
    match d {
        RadicalDimension::Exact(d) => d.to_string(),
        RadicalDimension::AtLeast { at_least } => format!(">= {at_least}"),
    }
}

fn coeff_literal(v: &[String]) -> String {
    v.join(",")
}

pub fn render_verdict(v: &MaschkeVerdict) -> String {
    let mut s = String::new();
    let outcome = if v.is_semisimple() {
        "semisimple"
    } else {
        "non-semisimple"
    };
    writeln!(s, "{}[{}]: {outcome}", v.field, v.group).unwrap();
    writeln!(
        s,
        "  order {}, characteristic {}",
        v.order, v.characteristic
    )
    .unwrap();
    match &v.certificate {
        Certificate::GramKernel {
            gram_determinant,
            n_pow_n,
            inversion_sign,
            oracle_dimension,
            ..
        } => {
            writeln!(
                s,
                "  det(tau(g_i g_j)) = {gram_determinant} = ({inversion_sign}) * {n_pow_n} != 0"
            )
            .unwrap();
            if let Some(d) = oracle_dimension {
                writeln!(s, "  oracle radical dimension {d}").unwrap();
            }
        }
        Certificate::WitnessIdealClosure {
            sigma,
            witness_basis,
            nilpotency_indices,
            unit_checks,
            seed,
            oracle_basis,
            ..
        } => {
            writeln!(s, "  sigma = {} with sigma^2 = 0", coeff_literal(sigma)).unwrap();
            writeln!(s, "  witness ideal, dimension {}:", witness_basis.len()).unwrap();
            for (i, (b, idx)) in witness_basis.iter().zip(nilpotency_indices).enumerate() {
                writeln!(
                    s,
                    "    e{} = {}  (nilpotent, index {idx})",
                    i + 1,
                    coeff_literal(b)
                )
                .unwrap();
            }
            writeln!(
                s,
                "  {unit_checks} unit perturbations per element, seed {seed}"
            )
            .unwrap();
            if let Some(ob) = oracle_basis {
                writeln!(s, "  oracle radical basis:").unwrap();
                for (i, b) in ob.iter().enumerate() {
                    writeln!(s, "    r{} = {}", i + 1, coeff_literal(b)).unwrap();
                }
            }
        }
    }
    writeln!(
        s,
        "  radical dimension {}",
        render_dimension(v.radical_dimension)
    )
    .unwrap();
    s
}

fn render_sweep(
    groups: &[Arc<FiniteGroup>],
    fields: &[FieldSpec],
    verdicts: &[MaschkeVerdict],
) -> String {
    let width = groups
        .iter()
        .map(|g| g.label().len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut s = String::new();
    write!(s, "{:<width$} {:>5}", "group", "order").unwrap();
    for k in fields {
        write!(s, " {:>10}", k.to_string()).unwrap();
    }
    s.push('\n');
    for (g, row) in groups.iter().zip(verdicts.chunks(fields.len().max(1))) {
        write!(s, "{:<width$} {:>5}", g.label(), g.order()).unwrap();
        for v in row {
            let cell = if v.is_semisimple() {
                "ss".to_string()
            } else {
                format!("rad {}", render_dimension(v.radical_dimension))
            };
            write!(s, " {cell:>10}").unwrap();
        }
        s.push('\n');
    }
    s
}
