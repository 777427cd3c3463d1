//! Command-line front end: `roots`, `count`, `chi`, `toric`, `verify`.
//!
//! Exit codes: 0 success, 1 mathematical mismatch, 2 usage, 3 budget.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::closed::{
    chi_c, chi_d, closed_form, d_even_summands, dual_partition_product, f_c_even, f_d_even,
    oracle_quasi, Parity,
};
use crate::counting::{Oracle, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals, Ideal, Lattice};
use crate::quasipoly::{ConstituentJson, QuasiPolynomial};
use crate::roots::{build_positive_system, PositiveSystem, RootType};
use crate::verify::check_ideal;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "quasichar",
    version,
    about = "Characteristic quasi-polynomials of ideals of root systems A, B, C, D"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the positive roots with heights and both coordinate vectors.
    Roots(RootsArgs),
    /// Count points of (Z/qZ)^l off the q-reduced hyperplanes of an ideal.
    Count(CountArgs),
    /// Characteristic quasi-polynomial of an ideal, as JSON.
    Chi(ChiArgs),
    /// Last (toric) constituent of the quasi-polynomial, as JSON.
    Toric(ChiArgs),
    /// Check every ideal up to a rank against the oracle and the closed forms.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Paper,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Root system type: A, B, C or D.
    #[arg(value_name = "TYPE")]
    pub rs_type: RootType,
    pub rank: usize,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Height table with the members of `--ideal` bracketed.
    #[arg(long, value_enum)]
    pub table: Option<Table>,
    #[arg(long, default_value = "empty")]
    pub ideal: String,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// `ht<=H`, `gen:<root>,...`, `full` or `empty`.
    #[arg(long, default_value = "full")]
    pub ideal: String,
    #[arg(long, default_value = "T")]
    pub lattice: Lattice,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Count with offsets from the last row of S (the shifted count F).
    #[arg(long)]
    pub shifted: bool,
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value = "full")]
    pub ideal: String,
    #[arg(long, default_value = "T")]
    pub lattice: Lattice,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Print the decomposition data behind the closed form as TSV instead of JSON.
    #[arg(long, value_enum)]
    pub table: Option<Table>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_name = "TYPE")]
    pub rs_type: RootType,
    pub rank_max: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } => EXIT_BUDGET,
        Error::Mismatch(_) | Error::PeriodExhausted(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Domain(format!("write failed: {e}"))
}

fn system(args: &SystemArgs) -> Result<Arc<PositiveSystem>> {
    Ok(Arc::new(build_positive_system(args.rs_type, args.rank)?))
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Roots(a) => cmd_roots(a, out),
        Command::Count(a) => cmd_count(a, out),
        Command::Chi(a) => cmd_chi(a, out, err, false),
        Command::Toric(a) => cmd_chi(a, out, err, true),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_roots(a: &RootsArgs, out: &mut dyn Write) -> Result<i32> {
    let sys = system(&a.system)?;
    if a.table.is_some() {
        let ideal = Ideal::parse_spec(sys.clone(), &a.ideal)?;
        write_height_table(&ideal, out).map_err(io)?;
        return Ok(EXIT_OK);
    }
    match a.format {
        Format::Tsv => {
            writeln!(out, "root\theight\tsimple\teps").map_err(io)?;
            for r in sys.roots() {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    r.kind,
                    r.height,
                    join(&r.simple_coords),
                    join(&r.eps_coords)
                )
                .map_err(io)?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = sys
                .roots()
                .iter()
                .map(|r| {
                    json!({
                        "root": r.kind.to_string(),
                        "height": r.height,
                        "simple": r.simple_coords,
                        "eps": r.eps_coords,
                    })
                })
                .collect();
            let doc = json!({
                "type": sys.rs_type().to_string(),
                "rank": sys.rank(),
                "roots": rows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

/// Roots by height, highest first, members of the ideal in brackets, with
/// the dual partition (and for D the signed graph) underneath.
fn write_height_table(ideal: &Ideal, out: &mut dyn Write) -> std::io::Result<()> {
    let sys = ideal.system();
    let top = sys.roots().iter().map(|r| r.height).max().unwrap_or(0);
    writeln!(out, "height\troots")?;
    for h in (1..=top).rev() {
        let cells: Vec<String> = (0..sys.len())
            .filter(|&k| sys.root(k).height == h)
            .map(|k| {
                let name = sys.root(k).kind.to_string();
                if ideal.contains(k) {
                    format!("[{name}]")
                } else {
                    name
                }
            })
            .collect();
        writeln!(out, "{h}\t{}", cells.join("\t"))?;
    }
    writeln!(out, "DP\t{}", ideal.dual_partition().parts().iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\t"))?;
    if ideal.rs_type() != RootType::A {
        let sg = ideal.signed_graph().expect("typed B, C or D");
        writeln!(out, "SG\t{}", sg.p.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\t"))?;
    }
    Ok(())
}

fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> Result<i32> {
    let ideal = Ideal::parse_spec(system(&a.system)?, &a.ideal)?;
    let oracle = Oracle::with_budget(a.budget);
    let n = if a.shifted {
        oracle.count_shifted(
            &ideal.lattice_matrix(Lattice::Integer),
            &ideal.last_simple_row(),
            a.q,
        )?
    } else {
        oracle.count(&ideal.lattice_matrix(a.lattice), a.q)?
    };
    writeln!(out, "{n}").map_err(io)?;
    Ok(EXIT_OK)
}

fn closed_quasi(ideal: &Ideal, lattice: Lattice) -> Result<QuasiPolynomial> {
    QuasiPolynomial::from_parity(
        closed_form(ideal, lattice, Parity::Odd)?,
        closed_form(ideal, lattice, Parity::Even)?,
    )
}

fn cmd_chi(a: &ChiArgs, out: &mut dyn Write, err: &mut dyn Write, toric: bool) -> Result<i32> {
    let ideal = Ideal::parse_spec(system(&a.system)?, &a.ideal)?;
    if a.table.is_some() {
        write_decomposition(&ideal, out)?;
        return Ok(EXIT_OK);
    }
    let oracle = Oracle::with_budget(a.budget);
    let mut code = EXIT_OK;
    let qp = match a.method {
        Method::Closed => closed_quasi(&ideal, a.lattice)?,
        Method::Oracle => oracle_quasi(&ideal, a.lattice, &oracle)?,
        Method::Both => {
            let closed = closed_quasi(&ideal, a.lattice)?;
            let counted = oracle_quasi(&ideal, a.lattice, &oracle)?;
            if closed == counted {
                writeln!(err, "match").map_err(io)?;
            } else {
                writeln!(err, "mismatch: closed {closed} vs oracle {counted}").map_err(io)?;
                code = EXIT_MISMATCH;
            }
            closed
        }
    };
    let text = if toric {
        let c = ConstituentJson::new(qp.period(), qp.toric_polynomial());
        serde_json::to_string_pretty(&c).expect("json")
    } else {
        qp.to_json()
    };
    writeln!(out, "{text}").map_err(io)?;
    Ok(code)
}

/// TSV rows `key<TAB>value...` describing how the closed form is assembled.
fn write_decomposition(ideal: &Ideal, out: &mut dyn Write) -> Result<()> {
    let mut rows: Vec<(String, String)> = Vec::new();
    let tabs = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\t");
    rows.push(("ideal".into(), ideal.to_string()));
    rows.push(("DP".into(), tabs(ideal.dual_partition().parts())));
    if ideal.rs_type() != RootType::A {
        rows.push(("SG".into(), tabs(&ideal.signed_graph()?.p)));
    }
    rows.push(("odd".into(), dual_partition_product(ideal).factored()));
    match ideal.reduction() {
        Err(Error::TypeACase) => rows.push(("even".into(), dual_partition_product(ideal).factored())),
        Err(e) => return Err(e),
        Ok(red) => {
            let name = if ideal.rs_type() == RootType::D { "r" } else { "s" };
            rows.push((name.into(), red.parameter.to_string()));
            rows.push(("prefix".into(), tabs(&red.prefix)));
            rows.push((
                "reduced".into(),
                format!("{}{}\t{}", red.reduced.rs_type(), red.reduced.rank(), red.reduced),
            ));
            match ideal.rs_type() {
                RootType::B => {
                    let j = red.reduced.strip_loops()?;
                    rows.push(("J_DP".into(), tabs(j.dual_partition().parts())));
                    rows.push(("even".into(), closed_form(ideal, Lattice::Integer, Parity::Even)?.factored()));
                }
                RootType::C => {
                    rows.push(("T_even".into(), chi_c(ideal, Parity::Even, Lattice::Integer)?.factored()));
                    rows.push(("F_even".into(), f_c_even(ideal)?.factored()));
                    rows.push(("S_even".into(), chi_c(ideal, Parity::Even, Lattice::Root)?.factored()));
                }
                RootType::D => {
                    let derived = red.reduced.derived_ideals_d()?;
                    let summands = d_even_summands(&red.reduced)?;
                    rows.push(("s_D".into(), derived.s.to_string()));
                    rows.push((
                        "K".into(),
                        format!("{}\t{}", tabs(&derived.k.signed_graph()?.p), summands.k.factored()),
                    ));
                    for (k, (u, chi)) in derived.u.iter().zip(&summands.u).enumerate() {
                        rows.push((
                            format!("U{}", k + 1),
                            format!("{}\t{}", tabs(&u.signed_graph()?.p), chi.factored()),
                        ));
                    }
                    rows.push(("T_even".into(), chi_d(ideal, Parity::Even, Lattice::Integer)?.factored()));
                    rows.push(("F_even".into(), f_d_even(ideal)?.factored()));
                    rows.push(("S_even".into(), chi_d(ideal, Parity::Even, Lattice::Root)?.factored()));
                }
                RootType::A => unreachable!("type A never reduces"),
            }
        }
    }
    for (k, v) in rows {
        writeln!(out, "{k}\t{v}").map_err(io)?;
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let t = a.rs_type;
    if a.rank_max < t.min_rank() {
        return Err(Error::Range {
            rs_type: t.letter(),
            rank: a.rank_max,
            need: "rank_max at least the type's smallest rank",
        });
    }
    let oracle = Oracle::with_budget(a.budget);
    let (mut passed, mut failed) = (0usize, 0usize);
    for rank in t.min_rank()..=a.rank_max {
        let sys = Arc::new(build_positive_system(t, rank)?);
        let ideals: Vec<Ideal> = enumerate_ideals(&sys).collect();
        let reports = ideals
            .par_iter()
            .map(|i| check_ideal(i, &oracle))
            .collect::<Result<Vec<_>>>()?;
        for r in reports {
            if r.passed() {
                passed += 1;
                let periods = join(r.quasi.iter().map(|(_, qp)| qp.period()));
                writeln!(out, "PASS\t{t}{rank}\t{}\tperiods={periods}", r.ideal).map_err(io)?;
            } else {
                failed += 1;
                writeln!(out, "FAIL\t{t}{rank}\t{}\t{}", r.ideal, r.failures.join("; ")).map_err(io)?;
            }
        }
    }
    writeln!(out, "summary\t{t}\t{} ideals\t{passed} passed\t{failed} failed", passed + failed)
        .map_err(io)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut full = vec!["quasichar"];
        full.extend_from_slice(args);
        let code = run(full, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn roots_listing() {
        let (code, out, _) = call(&["roots", "B", "5", "--format", "tsv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 26);
        assert!(out.lines().any(|l| l.starts_with("e1+e2\t9\t")));
        let (_, out, _) = call(&["roots", "C", "5"]);
        assert!(out.lines().any(|l| l.starts_with("2e3\t5\t")));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["roots", "D", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["roots", "E", "6"]).0, EXIT_USAGE);
        assert_eq!(call(&["chi", "B", "3", "--ideal", "bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn budget_exit_code() {
        let (code, _, err) = call(&["count", "B", "4", "--q", "50", "--budget", "1000"]);
        assert_eq!(code, EXIT_BUDGET);
        assert!(err.contains("budget"));
    }

    #[test]
    fn chi_both_matches() {
        let (code, out, err) = call(&["chi", "A", "3", "--ideal", "ht<=1", "--lattice", "S", "--method", "both"]);
        assert_eq!(code, 0);
        assert_eq!(err.trim(), "match");
        let qp = QuasiPolynomial::from_json(&out).unwrap();
        assert_eq!(qp.period(), 1);
        assert_eq!(qp.characteristic_polynomial().factored(), "(q-1)^3");
    }

    #[test]
    fn toric_full_b2() {
        let (code, out, _) = call(&["toric", "B", "2", "--ideal", "ht<=3", "--method", "both"]);
        assert_eq!(code, 0);
        let c: ConstituentJson = serde_json::from_str(&out).unwrap();
        assert_eq!((c.residue, c.coeffs), (2, vec![4, -4, 1]));
    }
}
