//! `jtqes`: command-line driver for the E(x)eps Jahn-Teller spectral toolkit.
//!
//! Every verification and computation is a subcommand with JSON, CSV or
//! pretty output. Exit code 0 means the requested checks passed their stated
//! tolerances, 1 means a check failed (or a domain error occurred), and 2 is
//! a usage error.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

use jtqes_core::bargmann::{
    invariance_report, verify_osp_relations_diff, DiffRelationReport, InvarianceReport,
    RealizationKind,
};
use jtqes_core::fock::FockSpace;
use jtqes_core::group_theory::{
    decompose_jt_hamiltonian_labels, finite_symmetric_square, load_character_table,
    serialize_character_table, so3_symmetric_square, table_by_name,
};
use jtqes_core::hamiltonian::{sector_spectrum, JTParams, SectorLabel};
use jtqes_core::qes::{explore_half_integer, qes_full_run, RootClass};
use jtqes_core::superalgebra::{build_generators, verify_relations};
use jtqes_core::verify::{verify_all, DEFAULT_CUTOFF, DEFAULT_MARGIN, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Parser)]
#[command(
    name = "jtqes",
    version,
    about = "Spectral toolkit for the E(x)eps Jahn-Teller model: osp(2,2) algebra checks, \
             sector spectra, Bargmann realizations, QES recurrences and point-group \
             decompositions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,

    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the osp(2,2) relation table on the truncated Fock space.
    AlgebraCheck {
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: usize,
    },
    /// Verify the differential realizations and the QES-operator invariance.
    BargmannCheck {
        /// Realization kind: S or T.
        #[arg(long, default_value = "S")]
        kind: String,
        /// Sector label (integer or half-integer, e.g. 1 or 1/2).
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        j: String,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        kappa: f64,
    },
    /// Oracle spectrum of one conserved sector by dense diagonalization.
    Spectrum {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        j: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        kappa: f64,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Full QES pipeline: recurrence system, determinant roots, closed forms,
    /// reconstruction and oracle classification.
    Qes {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        j: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        kappa: f64,
        /// Realization kind: S or T.
        #[arg(long, default_value = "S")]
        kind: String,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Enumerate the candidate half-integer index-set readings and compare
    /// them with the printed j = 1/2 energies.
    HalfInteger {
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        j: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        kappa: f64,
        /// Restrict to one realization kind (S or T); default runs both.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Symmetric-square decompositions: point-group tables or the SO(3) ladder.
    Decompose {
        /// Table name: I, O, T, Cn or Dn (n <= 12).
        #[arg(long)]
        group: Option<String>,
        /// Load the character table from a file instead.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Irrep label to square, e.g. H or E.
        #[arg(long)]
        irrep: Option<String>,
        /// Append gerade subscripts to the output labels.
        #[arg(long, default_value_t = false)]
        gerade: bool,
        /// SO(3) angular momentum for the even-ladder decomposition.
        #[arg(long)]
        l: Option<f64>,
    },
    /// Run the complete built-in verification suite.
    VerifyAll {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct BargmannCheckReport {
    schema: u32,
    relations: DiffRelationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariance: Option<InvarianceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariance_skipped: Option<String>,
}

#[derive(Serialize)]
struct HalfIntegerBoth {
    schema: u32,
    reports: Vec<jtqes_core::qes::HalfIntegerReport>,
}

#[derive(Serialize)]
struct DecomposeSo3Report {
    schema: u32,
    l: f64,
    angular_momenta: Vec<u32>,
    hamiltonian_labels: Vec<String>,
}

#[derive(Serialize)]
struct DecomposeGroupReport {
    schema: u32,
    group: String,
    irrep: String,
    terms: Vec<(String, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gerade_terms: Option<Vec<(String, usize)>>,
    input_dim: usize,
    total_dim: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli_output: &Option<PathBuf>, text: String) -> Result<(), jtqes_core::Error> {
    match cli_output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| jtqes_core::Error::InvalidParameter(format!("cannot write output: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports are serializable");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<bool, jtqes_core::Error> {
    match cli.command {
        Command::AlgebraCheck { cutoff, margin } => {
            let space = FockSpace::new(cutoff)?;
            let gens = build_generators(&space);
            let report = verify_relations(&gens, &space, margin)?;
            let text = match cli.format {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut out = String::from("relation,kind,residual,pass\n");
                    for c in report.relations.iter().chain(&report.supplementary) {
                        out.push_str(&format!(
                            "\"{}\",{},{:e},{}\n",
                            c.relation, c.kind, c.residual, c.pass
                        ));
                    }
                    out
                }
                Format::Pretty => {
                    let mut out = format!(
                        "osp(2,2) relation check: cutoff {}, margin {}, tolerance {:e}\n",
                        report.cutoff, report.margin, report.tolerance
                    );
                    for c in &report.relations {
                        out.push_str(&format!(
                            "  {:5} {:28} residual {:.3e}\n",
                            if c.pass { "pass" } else { "FAIL" },
                            c.relation,
                            c.residual
                        ));
                    }
                    out.push_str("supplementary:\n");
                    for c in &report.supplementary {
                        out.push_str(&format!(
                            "  {:5} {:28} residual {:.3e}\n",
                            if c.pass { "pass" } else { "FAIL" },
                            c.relation,
                            c.residual
                        ));
                    }
                    out.push_str(&format!(
                        "{} relations, all_pass = {}\n",
                        report.relations.len(),
                        report.all_pass
                    ));
                    out
                }
            };
            emit(&cli.output, text)?;
            Ok(report.all_pass)
        }

        Command::BargmannCheck {
            kind,
            j,
            max_degree,
            mu,
            kappa,
        } => {
            let kind = RealizationKind::parse(&kind)?;
            let j = SectorLabel::parse(&j)?;
            let params = JTParams::new(mu, kappa)?;
            let relations = verify_osp_relations_diff(kind, j, max_degree);
            let (invariance, skipped) = if j.integer().map(|v| v >= 0).unwrap_or(false) {
                (Some(invariance_report(&params, j)?), None)
            } else {
                (
                    None,
                    Some(format!(
                        "invariance diagnostic needs integer j >= 0 (basis degrees j+1, j); got j = {j}"
                    )),
                )
            };
            let report = BargmannCheckReport {
                schema: 1,
                relations,
                invariance,
                invariance_skipped: skipped,
            };
            let text = match cli.format {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut out = String::from("relation,residual,pass\n");
                    for c in report
                        .relations
                        .relations
                        .iter()
                        .chain(&report.relations.nilpotent)
                    {
                        out.push_str(&format!("\"{}\",{:e},{}\n", c.relation, c.residual, c.pass));
                    }
                    out
                }
                Format::Pretty => {
                    let mut out = format!(
                        "{}-realization relation check at j = {}, max degree {}\n",
                        report.relations.kind, report.relations.j, report.relations.max_degree
                    );
                    out.push_str(&format!("pattern: {}\n", report.relations.pattern));
                    for c in report
                        .relations
                        .relations
                        .iter()
                        .chain(&report.relations.nilpotent)
                    {
                        out.push_str(&format!(
                            "  {:5} {:28} residual {:.3e}\n",
                            if c.pass { "pass" } else { "FAIL" },
                            c.relation,
                            c.residual
                        ));
                    }
                    match (&report.invariance, &report.invariance_skipped) {
                        (Some(inv), _) => {
                            out.push_str(&format!(
                                "invariance at mu = {}, kappa = {}:\n",
                                inv.mu, inv.kappa
                            ));
                            for op in &inv.operators {
                                out.push_str(&format!(
                                    "  {}: invariant = {}, leakage terms = {}\n",
                                    op.operator,
                                    op.invariant,
                                    op.leakage.len()
                                ));
                                for leak in &op.leakage {
                                    out.push_str(&format!(
                                        "    {} -> {} x^{}: coeff {}\n",
                                        leak.source, leak.component, leak.degree, leak.coeff
                                    ));
                                }
                            }
                        }
                        (None, Some(reason)) => {
                            out.push_str(&format!("invariance skipped: {reason}\n"));
                        }
                        _ => {}
                    }
                    out
                }
            };
            emit(&cli.output, text)?;
            // the relation results are findings; the check contract is that
            // the report was produced with exact nilpotent zeros
            Ok(report.relations.nilpotent.iter().all(|c| c.pass))
        }

        Command::Spectrum { j, mu, kappa, cutoff } => {
            let j = SectorLabel::parse(&j)?;
            let params = JTParams::new(mu, kappa)?;
            let space = FockSpace::new(cutoff)?;
            let report = sector_spectrum(&space, &params, j)?;
            let text = match cli.format {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut out = String::from("index,eigenvalue,stability\n");
                    for (i, (ev, st)) in report
                        .eigenvalues
                        .iter()
                        .zip(&report.stability)
                        .enumerate()
                    {
                        match st {
                            Some(s) => out.push_str(&format!("{i},{ev},{s:e}\n")),
                            None => out.push_str(&format!("{i},{ev},\n")),
                        }
                    }
                    out
                }
                Format::Pretty => {
                    let mut out = format!(
                        "sector j = {} spectrum (mu = {}, kappa = {}, cutoff {}, dim {})\n",
                        report.j, report.mu, report.kappa, report.cutoff, report.dim
                    );
                    for (i, (ev, st)) in report
                        .eigenvalues
                        .iter()
                        .zip(&report.stability)
                        .enumerate()
                    {
                        match st {
                            Some(s) => out.push_str(&format!(
                                "  {i:3}  {ev:18.12}  (cutoff+2 shift {s:.2e})\n"
                            )),
                            None => out.push_str(&format!(
                                "  {i:3}  {ev:18.12}  (truncation tail)\n"
                            )),
                        }
                    }
                    out
                }
            };
            emit(&cli.output, text)?;
            Ok(true)
        }

        Command::Qes {
            j,
            mu,
            kappa,
            kind,
            cutoff,
        } => {
            let j = SectorLabel::parse(&j)?;
            let kind = RealizationKind::parse(&kind)?;
            let params = JTParams::new(mu, kappa)?;
            if !j.is_integer() {
                return Err(jtqes_core::Error::InvalidParameter(format!(
                    "the qes pipeline needs integer j (got {j}); use the half-integer subcommand"
                )));
            }
            let report = qes_full_run(kind, j, &params, cutoff)?;
            let pass = report.closed_form_match.unwrap_or(true)
                && report.roots.iter().all(|r| r.null_residual < 1e-8);
            let text = match cli.format {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut out = String::from(
                        "e,rayleigh,rayleigh_residual,class,oracle_eigenvalue,oracle_residual\n",
                    );
                    for r in &report.roots {
                        out.push_str(&format!(
                            "{},{},{:e},{},{},{:e}\n",
                            r.e,
                            r.rayleigh,
                            r.rayleigh_residual,
                            class_name(r.class),
                            r.oracle_match.eigenvalue,
                            r.oracle_match.residual
                        ));
                    }
                    out
                }
                Format::Pretty => {
                    let mut out = format!(
                        "QES run: kind {}, j = {}, mu = {}, kappa = {}\n",
                        report.kind, report.j, report.mu, report.kappa
                    );
                    out.push_str(&format!("det coefficients: {:?}\n", report.det_coeffs));
                    for r in &report.roots {
                        out.push_str(&format!(
                            "  E = {:16.10}  rayleigh {:14.10}  residual {:.2e}  {}\n",
                            r.e,
                            r.rayleigh,
                            r.rayleigh_residual,
                            class_name(r.class)
                        ));
                        out.push_str(&format!(
                            "      oracle partner {:.10} via {} (residual {:.2e})\n",
                            r.oracle_match.eigenvalue,
                            r.oracle_match.offset_name,
                            r.oracle_match.residual
                        ));
                    }
                    if !report.complex_roots.is_empty() {
                        out.push_str(&format!("complex root pairs: {:?}\n", report.complex_roots));
                    }
                    if !report.closed_form.is_empty() {
                        out.push_str(&format!(
                            "closed-form energies {:?}, closed_form_match: {}\n",
                            report.closed_form,
                            report
                                .closed_form_match
                                .map(|b| b.to_string())
                                .unwrap_or_else(|| "n/a".to_string())
                        ));
                    }
                    out.push_str("offset-fit candidates:\n");
                    for c in &report.offset_fit.candidates {
                        out.push_str(&format!(
                            "  {:28} offset {:12.8}  rms {:.3e}\n",
                            c.name, c.offset, c.rms
                        ));
                    }
                    out
                }
            };
            emit(&cli.output, text)?;
            Ok(pass)
        }

        Command::HalfInteger { j, mu, kappa, kind } => {
            let j = SectorLabel::parse(&j)?;
            let params = JTParams::new(mu, kappa)?;
            let kinds = match kind {
                Some(k) => vec![RealizationKind::parse(&k)?],
                None => vec![RealizationKind::S, RealizationKind::T],
            };
            let reports = kinds
                .into_iter()
                .map(|k| explore_half_integer(k, j, &params))
                .collect::<Result<Vec<_>, _>>()?;
            let combined = HalfIntegerBoth {
                schema: 1,
                reports,
            };
            let text = match cli.format {
                Format::Json => json(&combined),
                Format::Csv => {
                    let mut out =
                        String::from("kind,candidate,closed_form_match,grid_match,structural_32_64\n");
                    for report in &combined.reports {
                        for c in &report.candidates {
                            out.push_str(&format!(
                                "{},\"{}\",{},{},{}\n",
                                report_kind(report),
                                c.name,
                                c.closed_form_match
                                    .map(|b| b.to_string())
                                    .unwrap_or_default(),
                                c.grid_match.map(|b| b.to_string()).unwrap_or_default(),
                                c.structural_32_64
                            ));
                        }
                    }
                    out
                }
                Format::Pretty => {
                    let mut out = String::new();
                    for report in &combined.reports {
                        out.push_str(&format!(
                            "half-integer exploration: j = {}, mu = {}, kappa = {}\n",
                            report.j, report.mu, report.kappa
                        ));
                        if !report.closed_form_targets.is_empty() {
                            out.push_str(&format!(
                                "printed closed-form targets: {:?}\n",
                                report.closed_form_targets
                            ));
                        }
                        for c in &report.candidates {
                            out.push_str(&format!(
                                "  candidate {:32} roots {:?}\n",
                                c.name, c.real_roots
                            ));
                            for b in &c.blocks {
                                out.push_str(&format!(
                                    "    block {:?}: det {:?}{}\n",
                                    b.unknowns,
                                    b.det_coeffs,
                                    b.radical_kappa2_coeff
                                        .map(|r| format!(", radical kappa^2 coeff {r}"))
                                        .unwrap_or_default()
                                ));
                            }
                            out.push_str(&format!(
                                "    closed_form_match {:?}, grid_match {:?}, structural 32/64 {}\n",
                                c.closed_form_match, c.grid_match, c.structural_32_64
                            ));
                        }
                        out.push_str(&format!("any_grid_match: {}\n", report.any_grid_match));
                    }
                    out
                }
            };
            emit(&cli.output, text)?;
            Ok(true)
        }

        Command::Decompose {
            group,
            table,
            irrep,
            gerade,
            l,
        } => {
            if let Some(l) = l {
                let report = DecomposeSo3Report {
                    schema: 1,
                    l,
                    angular_momenta: so3_symmetric_square(l)?,
                    hamiltonian_labels: decompose_jt_hamiltonian_labels(l)?,
                };
                let text = match cli.format {
                    Format::Json => json(&report),
                    Format::Csv => {
                        let mut out = String::from("angular_momentum,label\n");
                        for (lv, lab) in report
                            .angular_momenta
                            .iter()
                            .zip(&report.hamiltonian_labels)
                        {
                            out.push_str(&format!("{lv},{lab}\n"));
                        }
                        out
                    }
                    Format::Pretty => format!(
                        "symmetric square of D^{} -> {}\ninteraction terms: {}\n",
                        report.l,
                        report
                            .angular_momenta
                            .iter()
                            .map(|lv| format!("D^{lv}"))
                            .collect::<Vec<_>>()
                            .join(" + "),
                        report.hamiltonian_labels.join(" + ")
                    ),
                };
                emit(&cli.output, text)?;
                return Ok(true);
            }

            let tbl = match (&table, &group) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        jtqes_core::Error::InvalidParameter(format!("cannot read table: {e}"))
                    })?;
                    load_character_table(&text)?
                }
                (None, Some(name)) => table_by_name(name)?,
                (None, None) => {
                    return Err(jtqes_core::Error::InvalidParameter(
                        "decompose needs --group, --table or --l".to_string(),
                    ))
                }
            };

            match irrep {
                Some(irrep) => {
                    let result = finite_symmetric_square(&tbl, &irrep)?;
                    let report = DecomposeGroupReport {
                        schema: 1,
                        group: result.group.clone(),
                        irrep: result.irrep.clone(),
                        terms: result.terms.clone(),
                        gerade_terms: gerade.then(|| result.gerade_terms()),
                        input_dim: result.input_dim,
                        total_dim: result.total_dim,
                    };
                    let text = match cli.format {
                        Format::Json => json(&report),
                        Format::Csv => {
                            let mut out = String::from("irrep,multiplicity\n");
                            for (label, m) in &report.terms {
                                out.push_str(&format!("{label},{m}\n"));
                            }
                            out
                        }
                        Format::Pretty => {
                            let terms = report
                                .terms
                                .iter()
                                .map(|(label, m)| {
                                    if *m == 1 {
                                        label.clone()
                                    } else {
                                        format!("{m}*{label}")
                                    }
                                })
                                .collect::<Vec<_>>()
                                .join(" + ");
                            format!(
                                "[{irrep}(x){irrep}]_sym in {} = {terms}  (dim {} -> {})\n",
                                report.group, report.input_dim, report.total_dim
                            )
                        }
                    };
                    emit(&cli.output, text)?;
                    Ok(true)
                }
                None => {
                    let text = match cli.format {
                        Format::Json => json(&tbl),
                        Format::Csv | Format::Pretty => serialize_character_table(&tbl),
                    };
                    emit(&cli.output, text)?;
                    Ok(true)
                }
            }
        }

        Command::VerifyAll { seed } => {
            let report = verify_all(seed)?;
            let text = match cli.format {
                Format::Json => json(&report),
                Format::Csv => {
                    let mut out = String::from("id,name,pass\n");
                    for c in &report.criteria {
                        out.push_str(&format!("{},\"{}\",{}\n", c.id, c.name, c.pass));
                    }
                    out
                }
                Format::Pretty => {
                    let mut out = format!("verification suite (seed {})\n", report.seed);
                    for c in &report.criteria {
                        out.push_str(&format!(
                            "  criterion {:2} [{}] {}\n      {}\n",
                            c.id,
                            if c.pass { "PASS" } else { "FAIL" },
                            c.name,
                            c.details
                        ));
                    }
                    out.push_str(&format!("all_pass: {}\n", report.all_pass));
                    out
                }
            };
            emit(&cli.output, text)?;
            Ok(report.all_pass)
        }
    }
}

fn class_name(class: RootClass) -> &'static str {
    match class {
        RootClass::Confirmed => "confirmed",
        RootClass::Unmatched => "unmatched",
        RootClass::SpuriousNull => "spurious-null",
    }
}

fn report_kind(report: &jtqes_core::qes::HalfIntegerReport) -> String {
    report
        .candidates
        .first()
        .map(|c| format!("{}", c.kind))
        .unwrap_or_default()
}
