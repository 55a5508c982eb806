//! Command-line front end for the equivariant homology engine.
//!
//! One invocation runs one JSON scenario file. The scenario's `"command"`
//! field selects the computation (`homology`, `spectral`, `series`,
//! `quotient`, `group-homology`, or `verify`); command-line flags override
//! the scenario's own optional fields, which in turn override built-in
//! defaults.
//!
//! Exit codes:
//! * `0` — success;
//! * `1` — a semantic failure (complex validation, non-free action where a
//!   free one is required, group mismatch, unparsable rational, ...);
//! * `2` — a schema problem (unreadable file, malformed JSON, unknown
//!   command or field, bad flag usage).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use equihom::descriptor::{
    parse_points, GroupHomologyScenario, HomologyScenario, OutputFormat, QuotientScenario,
    ScenarioDescriptor, SeriesScenario, SpectralScenario, VerifyScenario,
};
use equihom::homology::{
    equivariant_homology_dims, group_homology_dims, spectral_pages, ResolutionChoice,
};
use equihom::invariant::{
    invariant_generators, jacobian_rank_at, name_seq, orbit_separation_check, relations,
};
use equihom::poincare::evaluate;
use equihom::{Error, Result};

/// Default truncation degree for homology tables and series.
const DEFAULT_CUTOFF: usize = 16;
/// Default length of the resolution built by the `verify` command.
const DEFAULT_VERIFY_LENGTH: usize = 6;
const WRITE: &str = "failed to write report";

#[derive(Parser, Debug)]
#[command(
    name = "equihom",
    version,
    about = "Equivariant homology, virtual Poincare series, and invariant quotients \
             computed exactly from JSON scenario files"
)]
pub struct Cli {
    /// JSON scenario file describing one command and its inputs.
    pub scenario: PathBuf,

    /// Highest degree tabulated (homology) or truncation order (series);
    /// for `verify`, the length of the checked resolution. Overrides the
    /// scenario's own "cutoff" field.
    #[arg(long)]
    pub cutoff: Option<usize>,

    /// Free resolution backing the equivariant computations.
    #[arg(long, value_enum)]
    pub resolution: Option<ResolutionArg>,

    /// Report format.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Largest spectral page index printed (spectral scenarios only).
    #[arg(long)]
    pub pages: Option<usize>,
}

/// Flag-level mirror of [`ResolutionChoice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ResolutionArg {
    /// Periodic resolution for cyclic groups, bar resolution otherwise.
    Auto,
    /// Bar resolution (any group; size grows quickly with the order).
    Bar,
    /// Two-periodic resolution (cyclic groups only).
    Periodic,
}

impl From<ResolutionArg> for ResolutionChoice {
    fn from(arg: ResolutionArg) -> Self {
        match arg {
            ResolutionArg::Auto => ResolutionChoice::Auto,
            ResolutionArg::Bar => ResolutionChoice::Bar,
            ResolutionArg::Periodic => ResolutionChoice::Periodic,
        }
    }
}

/// Flag-level mirror of [`OutputFormat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Human-readable aligned tables.
    Text,
    /// One JSON object on a single line.
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

/// Run the CLI against `args`, writing reports to `out` and diagnostics to
/// `err`; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(parse_err) => {
            // --help and --version surface as clap "errors" but are successes.
            return match parse_err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{parse_err}");
                    0
                }
                _ => {
                    let _ = write!(err, "{parse_err}");
                    2
                }
            };
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(run_err) => {
            let _ = writeln!(err, "error: {run_err}");
            exit_code(&run_err)
        }
    }
}

/// Map an engine error to the process exit code.
fn exit_code(error: &Error) -> i32 {
    match error {
        // Shape problems in the scenario file, including rational strings
        // that do not match the documented grammar, are schema errors;
        // everything the core validators reject is a semantic failure.
        Error::Scenario(_) | Error::BadRational { .. } => 2,
        _ => 1,
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let text = std::fs::read_to_string(&cli.scenario).map_err(|io_err| {
        Error::Scenario(format!("cannot read {}: {io_err}", cli.scenario.display()))
    })?;
    match ScenarioDescriptor::from_json(&text)? {
        ScenarioDescriptor::Homology(scenario) => run_homology(cli, &scenario, out),
        ScenarioDescriptor::Spectral(scenario) => run_spectral(cli, &scenario, out),
        ScenarioDescriptor::Series(scenario) => run_series(cli, &scenario, out),
        ScenarioDescriptor::Quotient(scenario) => run_quotient(cli, &scenario, out),
        ScenarioDescriptor::GroupHomology(scenario) => run_group_homology(cli, &scenario, out),
        ScenarioDescriptor::Verify(scenario) => run_verify(cli, &scenario, out),
    }
}

fn resolved_cutoff(cli: &Cli, field: Option<usize>) -> usize {
    cli.cutoff.or(field).unwrap_or(DEFAULT_CUTOFF)
}

fn resolved_choice(cli: &Cli, field: Option<ResolutionChoice>) -> ResolutionChoice {
    cli.resolution
        .map(ResolutionChoice::from)
        .or(field)
        .unwrap_or_default()
}

fn resolved_format(cli: &Cli, field: Option<OutputFormat>) -> OutputFormat {
    cli.format.map(OutputFormat::from).or(field).unwrap_or_default()
}

fn choice_label(choice: ResolutionChoice) -> &'static str {
    match choice {
        ResolutionChoice::Auto => "auto",
        ResolutionChoice::Bar => "bar",
        ResolutionChoice::Periodic => "periodic",
    }
}

/// Render labelled rows as lines with right-aligned columns (two spaces
/// between columns, labels left-aligned in a shared gutter).
fn aligned_rows(rows: &[(String, Vec<String>)]) -> Vec<String> {
    let label_width = rows.iter().map(|(label, _)| label.len()).max().unwrap_or(0);
    let ncols = rows.iter().map(|(_, cells)| cells.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; ncols];
    for (_, cells) in rows {
        for (i, cell) in cells.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    rows.iter()
        .map(|(label, cells)| {
            let mut line = format!("{label:<label_width$}");
            for (i, cell) in cells.iter().enumerate() {
                line.push_str(&format!("  {cell:>width$}", width = widths[i]));
            }
            line
        })
        .collect()
}

fn degree_header(cutoff: usize) -> (String, Vec<String>) {
    ("k:".to_string(), (0..=cutoff).map(|k| k.to_string()).collect())
}

fn dims_row(dims: &[usize]) -> (String, Vec<String>) {
    ("dim:".to_string(), dims.iter().map(usize::to_string).collect())
}

fn run_homology(cli: &Cli, scenario: &HomologyScenario, out: &mut dyn Write) -> Result<()> {
    let cutoff = resolved_cutoff(cli, scenario.cutoff);
    let choice = resolved_choice(cli, scenario.resolution);
    let complex = scenario.complex.build()?;
    let dims = equivariant_homology_dims(&complex, cutoff, choice)?;
    match resolved_format(cli, scenario.format) {
        OutputFormat::Text => {
            writeln!(
                out,
                "equivariant homology over GF(2) (cutoff {cutoff}, resolution {})",
                choice_label(choice)
            )
            .expect(WRITE);
            for line in aligned_rows(&[degree_header(cutoff), dims_row(&dims)]) {
                writeln!(out, "{line}").expect(WRITE);
            }
        }
        OutputFormat::Json => {
            let value = serde_json::json!({
                "command": "homology",
                "cutoff": cutoff,
                "resolution": choice_label(choice),
                "dims": dims,
            });
            writeln!(out, "{value}").expect(WRITE);
        }
    }
    Ok(())
}

fn run_group_homology(
    cli: &Cli,
    scenario: &GroupHomologyScenario,
    out: &mut dyn Write,
) -> Result<()> {
    let cutoff = resolved_cutoff(cli, scenario.cutoff);
    let group = scenario.group.build()?;
    let dims = group_homology_dims(&group, cutoff)?;
    match resolved_format(cli, scenario.format) {
        OutputFormat::Text => {
            writeln!(
                out,
                "group homology over GF(2) (group order {}, cutoff {cutoff})",
                group.order()
            )
            .expect(WRITE);
            for line in aligned_rows(&[degree_header(cutoff), dims_row(&dims)]) {
                writeln!(out, "{line}").expect(WRITE);
            }
        }
        OutputFormat::Json => {
            let value = serde_json::json!({
                "command": "group-homology",
                "group_order": group.order(),
                "cutoff": cutoff,
                "dims": dims,
            });
            writeln!(out, "{value}").expect(WRITE);
        }
    }
    Ok(())
}

fn run_spectral(cli: &Cli, scenario: &SpectralScenario, out: &mut dyn Write) -> Result<()> {
    let cutoff = resolved_cutoff(cli, scenario.cutoff);
    let choice = resolved_choice(cli, scenario.resolution);
    let complex = scenario.complex.build()?;
    let r_max = cli.pages.or(scenario.pages).unwrap_or(complex.dim() + 2);
    let pages = spectral_pages(&complex, cutoff, r_max, choice)?;
    match resolved_format(cli, scenario.format) {
        OutputFormat::Text => {
            writeln!(
                out,
                "spectral sequence of the column filtration (cutoff {cutoff}, resolution {}, \
                 pages 0..={r_max})",
                choice_label(choice)
            )
            .expect(WRITE);
            for page in &pages {
                writeln!(out, "page E^{}:", page.r).expect(WRITE);
                let mut rows = vec![(
                    "q\\p".to_string(),
                    (0..=page.p_max).map(|p| p.to_string()).collect::<Vec<_>>(),
                )];
                for q in (0..=page.q_max).rev() {
                    rows.push((
                        q.to_string(),
                        page.row(q).iter().map(usize::to_string).collect(),
                    ));
                }
                for line in aligned_rows(&rows) {
                    writeln!(out, "  {line}").expect(WRITE);
                }
            }
        }
        OutputFormat::Json => {
            let page_values: Vec<serde_json::Value> = pages
                .iter()
                .map(|page| {
                    let dims: Vec<Vec<usize>> = (0..=page.p_max)
                        .map(|p| (0..=page.q_max).map(|q| page.dim(p, q)).collect())
                        .collect();
                    serde_json::json!({ "r": page.r, "dims": dims })
                })
                .collect();
            let value = serde_json::json!({
                "command": "spectral",
                "cutoff": cutoff,
                "resolution": choice_label(choice),
                "pages": page_values,
            });
            writeln!(out, "{value}").expect(WRITE);
        }
    }
    Ok(())
}

fn run_series(cli: &Cli, scenario: &SeriesScenario, out: &mut dyn Write) -> Result<()> {
    let cutoff = resolved_cutoff(cli, scenario.cutoff);
    let choice = resolved_choice(cli, scenario.resolution);
    let group = scenario.group.build()?;
    let expr = scenario.expr.build(&scenario.defs)?;
    let series = evaluate(&expr, &group, cutoff, choice)?;
    match resolved_format(cli, scenario.format) {
        OutputFormat::Text => {
            writeln!(
                out,
                "equivariant virtual Poincare series (group order {}, cutoff {cutoff})",
                group.order()
            )
            .expect(WRITE);
            let coeffs: Vec<String> = series.coeffs().iter().map(i64::to_string).collect();
            writeln!(out, "coefficients: {}", coeffs.join(" ")).expect(WRITE);
            writeln!(out, "series: {series}").expect(WRITE);
        }
        OutputFormat::Json => {
            let value = serde_json::json!({
                "command": "series",
                "group_order": group.order(),
                "cutoff": cutoff,
                "coefficients": series.coeffs(),
            });
            writeln!(out, "{value}").expect(WRITE);
        }
    }
    Ok(())
}

fn point_label(point: &[String]) -> String {
    format!("({})", point.join(", "))
}

fn run_quotient(cli: &Cli, scenario: &QuotientScenario, out: &mut dyn Write) -> Result<()> {
    let action = scenario.action.build()?;
    let gens = invariant_generators(&action);
    let max_gen_degree = gens.degrees().iter().max().copied().unwrap_or(1);
    let relations_degree = scenario.relations_degree.unwrap_or(2 * max_gen_degree);
    let rels = relations(gens.generators(), relations_degree)?;
    let sample_points = parse_points(&scenario.samples)?;
    let separation = if sample_points.is_empty() {
        None
    } else {
        Some(orbit_separation_check(
            &action,
            gens.generators(),
            &sample_points,
        )?)
    };
    let jacobian_points = parse_points(&scenario.jacobian_at)?;
    let mut jacobian_ranks = Vec::with_capacity(jacobian_points.len());
    for point in &jacobian_points {
        jacobian_ranks.push(jacobian_rank_at(gens.generators(), point)?);
    }
    let var_names = name_seq("x", action.dim());
    let gen_names = name_seq("z", gens.len());
    let certificate = gens.certificate();
    match resolved_format(cli, scenario.format) {
        OutputFormat::Text => {
            writeln!(
                out,
                "real quotient of a linear action (group order {}, {} variables)",
                action.group().order(),
                action.dim()
            )
            .expect(WRITE);
            writeln!(out, "generators:").expect(WRITE);
            if gens.is_empty() {
                writeln!(out, "  (none)").expect(WRITE);
            }
            for (name, gen) in gen_names.iter().zip(gens.generators()) {
                writeln!(out, "  {name} = {}", gen.render(&var_names)).expect(WRITE);
            }
            writeln!(
                out,
                "completeness certificate: {}",
                if certificate.complete() {
                    "complete"
                } else {
                    "INCOMPLETE"
                }
            )
            .expect(WRITE);
            for check in &certificate.per_degree {
                writeln!(
                    out,
                    "  degree {}: generated {}, invariant {}",
                    check.degree, check.generated_dim, check.invariant_dim
                )
                .expect(WRITE);
            }
            if rels.is_empty() {
                writeln!(out, "relations up to weighted degree {relations_degree}: none")
                    .expect(WRITE);
            } else {
                writeln!(out, "relations up to weighted degree {relations_degree}:")
                    .expect(WRITE);
                for relation in &rels {
                    writeln!(out, "  0 = {}", relation.render(&gen_names)).expect(WRITE);
                }
            }
            if let Some(report) = &separation {
                writeln!(
                    out,
                    "orbit separation over {} sample points: {} pairs, {} violations",
                    sample_points.len(),
                    report.pairs_checked,
                    report.violations.len()
                )
                .expect(WRITE);
                for violation in &report.violations {
                    writeln!(
                        out,
                        "  points {} and {}: same orbit {}, identified by generators {}",
                        violation.first, violation.second, violation.same_orbit,
                        violation.identified
                    )
                    .expect(WRITE);
                }
            }
            for (point, rank) in scenario.jacobian_at.iter().zip(&jacobian_ranks) {
                writeln!(out, "jacobian rank at {}: {rank}", point_label(point)).expect(WRITE);
            }
        }
        OutputFormat::Json => {
            let per_degree: Vec<serde_json::Value> = certificate
                .per_degree
                .iter()
                .map(|check| {
                    serde_json::json!({
                        "degree": check.degree,
                        "generated": check.generated_dim,
                        "invariant": check.invariant_dim,
                    })
                })
                .collect();
            let separation_value = separation.as_ref().map(|report| {
                let violations: Vec<serde_json::Value> = report
                    .violations
                    .iter()
                    .map(|violation| {
                        serde_json::json!({
                            "first": violation.first,
                            "second": violation.second,
                            "same_orbit": violation.same_orbit,
                            "identified": violation.identified,
                        })
                    })
                    .collect();
                serde_json::json!({
                    "pairs_checked": report.pairs_checked,
                    "violations": violations,
                })
            });
            let jacobians: Vec<serde_json::Value> = scenario
                .jacobian_at
                .iter()
                .zip(&jacobian_ranks)
                .map(|(point, rank)| serde_json::json!({ "point": point, "rank": rank }))
                .collect();
            let value = serde_json::json!({
                "command": "quotient",
                "group_order": action.group().order(),
                "variables": var_names,
                "generators": gens
                    .generators()
                    .iter()
                    .map(|gen| gen.render(&var_names))
                    .collect::<Vec<_>>(),
                "generator_degrees": gens.degrees(),
                "certificate": {
                    "complete": certificate.complete(),
                    "per_degree": per_degree,
                },
                "relations_degree": relations_degree,
                "relations": rels
                    .iter()
                    .map(|relation| relation.render(&gen_names))
                    .collect::<Vec<_>>(),
                "orbit_separation": separation_value,
                "jacobian_ranks": jacobians,
            });
            writeln!(out, "{value}").expect(WRITE);
        }
    }
    Ok(())
}

fn run_verify(cli: &Cli, scenario: &VerifyScenario, out: &mut dyn Write) -> Result<()> {
    let length = cli.cutoff.or(scenario.cutoff).unwrap_or(DEFAULT_VERIFY_LENGTH);
    let choice = resolved_choice(cli, scenario.resolution);
    // Building the complex re-runs the full validation; invalid complexes
    // error out here (exit code 1) with the failing checks in the message.
    let complex = scenario.complex.build()?;
    let report = complex.validate();
    let resolution = choice.build(complex.group(), length)?;
    let resolution_report = resolution.verify();
    match resolved_format(cli, scenario.format) {
        OutputFormat::Text => {
            writeln!(out, "validation checks:").expect(WRITE);
            for check in &report.checks {
                writeln!(
                    out,
                    "  {} {}",
                    if check.passed { "ok " } else { "FAIL" },
                    check.name
                )
                .expect(WRITE);
                if !check.passed {
                    writeln!(out, "       {}", check.detail).expect(WRITE);
                }
            }
            let defects = resolution_report.defects();
            if defects.is_empty() {
                writeln!(
                    out,
                    "resolution check ({}, length {length}): exact",
                    choice_label(choice)
                )
                .expect(WRITE);
            } else {
                writeln!(
                    out,
                    "resolution check ({}, length {length}): DEFECTS",
                    choice_label(choice)
                )
                .expect(WRITE);
                for defect in &defects {
                    writeln!(out, "  {defect}").expect(WRITE);
                }
            }
            let valid = report.all_passed() && resolution_report.is_exact();
            writeln!(out, "result: {}", if valid { "valid" } else { "INVALID" }).expect(WRITE);
            if !valid {
                return Err(Error::InvalidComplex {
                    report: report
                        .failure_summary()
                        .lines()
                        .chain(defects.iter().map(String::as_str))
                        .collect::<Vec<_>>()
                        .join("; "),
                });
            }
        }
        OutputFormat::Json => {
            let checks: Vec<serde_json::Value> = report
                .checks
                .iter()
                .map(|check| {
                    serde_json::json!({
                        "name": check.name,
                        "passed": check.passed,
                        "detail": check.detail,
                    })
                })
                .collect();
            let valid = report.all_passed() && resolution_report.is_exact();
            let value = serde_json::json!({
                "command": "verify",
                "checks": checks,
                "resolution": {
                    "choice": choice_label(choice),
                    "length": length,
                    "exact": resolution_report.is_exact(),
                    "defects": resolution_report.defects(),
                },
                "valid": valid,
            });
            writeln!(out, "{value}").expect(WRITE);
            if !valid {
                return Err(Error::InvalidComplex {
                    report: "see verify report".into(),
                });
            }
        }
    }
    Ok(())
}
