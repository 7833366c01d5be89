//! `haar`: exact moments of Haar-distributed unitary, orthogonal and
//! symplectic matrices.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use haar_core::expr::{parse_expression, Polynomial};
use haar_core::integrator::{integrate_direct, integrate_polynomial, MomentSpec, Options};
use haar_core::optimizer::one_list_counts;
use haar_core::oracle::monte_carlo_moment;
use haar_core::weingarten::TableStore;
use haar_core::{Dim, Group, HaarError};

use render::{CountsTable, Rendered, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

/// Integrates polynomials in the entries of a Haar-random matrix from U(d),
/// O(d) or Sp(2d), exactly, as rational functions of d.
///
/// Entries are written g[i,j]; gc[i,j] is the complex conjugate (U only).
/// For Sp the indices run over ±1..±d.
#[derive(Debug, Parser)]
#[command(name = "haar", version)]
struct Cli {
    /// The polynomial, e.g. "g[1,1]*gc[1,1]" or "(g[1,1] + g[2,2])^4".
    expression: Option<String>,

    /// U, O or Sp.
    #[arg(long, value_parser = parse_group)]
    group: Group,

    /// "d" for a symbolic dimension, or a positive integer.
    #[arg(long, default_value = "d", value_parser = parse_dim)]
    dim: Dim,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Print coset-class counts C_I for a row list such as 1,1,1,1,2,2
    /// (with J = 1,1,2,2,...). Repeat for more rows.
    #[arg(long = "table-I", value_name = "LIST", value_parser = parse_list)]
    table_i: Vec<Vec<i64>>,

    /// Print the Weingarten table of the given order.
    #[arg(long = "table-wg", value_name = "N")]
    table_wg: Option<usize>,

    /// Check the result against the direct double sum and a Monte Carlo
    /// estimate at the (numeric) --dim.
    #[arg(long)]
    verify: bool,

    #[arg(long, default_value_t = 100_000, requires = "verify")]
    samples: usize,

    #[arg(long, default_value_t = 1, requires = "verify")]
    seed: u64,

    /// Print how each monomial was evaluated.
    #[arg(long)]
    explain: bool,

    /// Directory for cached Weingarten tables.
    #[arg(long, env = "HAAR_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Refuse moments of order above this.
    #[arg(long, default_value_t = 8)]
    max_n: usize,
}

fn parse_group(s: &str) -> Result<Group, String> {
    s.parse().map_err(|e: HaarError| e.to_string())
}

fn parse_dim(s: &str) -> Result<Dim, String> {
    s.parse().map_err(|e: HaarError| e.to_string())
}

fn parse_list(s: &str) -> Result<Vec<i64>, String> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    body.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("not an index list: {s}")))
        .collect()
}

/// Largest order among the terms: the number of plain entries for U, half
/// the degree otherwise.
fn order_of(poly: &Polynomial, group: Group) -> usize {
    poly.terms()
        .map(|(m, _)| match group {
            Group::Unitary => m.plain().len(),
            _ => m.degree() / 2,
        })
        .max()
        .unwrap_or(0)
}

fn run(cli: &Cli) -> Result<(String, bool), HaarError> {
    let options = Options {
        max_n: cli.max_n,
        store: cli.cache_dir.as_ref().map(TableStore::new),
        ..Options::default()
    };
    if !cli.table_i.is_empty() {
        if cli.group != Group::Orthogonal {
            return Err(HaarError::InvalidSpec("coset-class tables are defined for O".into()));
        }
        let len = cli.table_i[0].len();
        if len % 2 == 1 || cli.table_i.iter().any(|r| r.len() != len) {
            return Err(HaarError::InvalidSpec("table rows must share one even length".into()));
        }
        if len / 2 > cli.max_n {
            return Err(HaarError::Budget(format!("order {} exceeds max-n {}", len / 2, cli.max_n)));
        }
        let rows = cli.table_i.iter().map(|r| (r.clone(), one_list_counts(r))).collect();
        return Ok((CountsTable { n: len / 2, rows }.render(cli.format), true));
    }
    if let Some(n) = cli.table_wg {
        if n > cli.max_n {
            return Err(HaarError::Budget(format!("order {n} exceeds max-n {}", cli.max_n)));
        }
        let table = match &options.store {
            Some(store) => store.weingarten(cli.group, n, cli.dim)?,
            None => haar_core::weingarten::build_table(cli.group, n, cli.dim)?,
        };
        return Ok((render::weingarten_table(&table, cli.format), true));
    }
    let text = cli
        .expression
        .as_deref()
        .ok_or_else(|| HaarError::InvalidSpec("no expression given".into()))?;
    let poly = parse_expression(text, cli.group)?;
    let evaluation = integrate_polynomial(&poly, cli.group, cli.dim, &options)?;
    let mut out = Rendered {
        group: cli.group,
        n: order_of(&poly, cli.group),
        dim: cli.dim,
        value: evaluation.value,
        trace: cli.explain.then_some(evaluation.trace),
        verify: None,
    };
    let mut ok = true;
    if cli.verify {
        let report = verify(&poly, cli, &out)?;
        ok = report.agrees();
        out.verify = Some(report);
    }
    Ok((out.render(cli.format), ok))
}

fn verify(poly: &Polynomial, cli: &Cli, out: &Rendered) -> Result<VerifyReport, HaarError> {
    let Some(d) = cli.dim.fixed() else {
        return Err(HaarError::InvalidDimension("--verify needs a numeric --dim".into()));
    };
    let mut direct = haar_core::algebra::RationalFunction::zero();
    let mut estimate = 0.0;
    let mut error = 0.0;
    for (monomial, c) in poly.terms() {
        let spec: MomentSpec = monomial.to_spec(cli.group)?;
        direct = &direct + &integrate_direct(&spec, cli.dim)?.scale(c);
        let c = render::to_f64(c);
        let mc = monte_carlo_moment(&spec, d, cli.samples, cli.seed)?;
        estimate += c * mc.estimate;
        // the terms share a seed, so their errors are not independent
        error += c.abs() * mc.standard_error;
    }
    Ok(VerifyReport {
        direct_matches: direct == out.value,
        estimate,
        standard_error: error,
        samples: cli.samples,
        seed: cli.seed,
        exact: out.value.as_constant().map(|q| render::to_f64(&q)).unwrap_or(f64::NAN),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
