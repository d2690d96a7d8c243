use std::io::Write;
use std::path::{Path, PathBuf};

use super::{
    BoundsArgs, CertifyArgs, CliError, Command, ConstructArgs, Format, ImcArgs, Preset, SolveArgs,
    TableArgs, VerifyArgs, EXIT_BUDGET, EXIT_OK, EXIT_REFUTED,
};
use crate::bounds::{render_csv, render_markdown, summary, summary_grid, BoundsError, Params};
use crate::budget::Budget;
use crate::constructions::{
    build, certify_graph, parse_recipe, ClaimStatus, CertifyError, ConstructionError, Recipe,
};
use crate::graph::MultipartiteGraph;
use crate::imc::{
    check_structure_lemmas, extract_imc, no_it_certificate, seed_from_critical_edge, FeasiblePair,
    ImcError, LemmaOutcome,
};
use crate::solver::{max_partial_it_with_budget, no_it_certificate_brute, SolveError};

/// One-line `key=value` rendering of a parsed command.
pub(super) fn describe(cmd: &Command) -> String {
    match cmd {
        Command::Construct(a) => format!(
            "construct recipe={:?} out={} certify={}",
            a.recipe,
            a.out.display(),
            a.certify
        ),
        Command::Verify(a) => format!(
            "verify graph={} claim={},{},{},{}",
            a.graph.display(),
            a.claim.r,
            a.claim.defect,
            a.claim.n,
            a.claim.delta
        ),
        Command::Solve(a) => format!(
            "solve graph={} defect={}",
            a.graph.display(),
            a.defect.map_or("none".to_string(), |d| d.to_string())
        ),
        Command::Bounds(a) => format!(
            "bounds r={} d={} delta={} grid={} format={}",
            a.r, a.d, a.delta, a.grid, a.format
        ),
        Command::Imc(a) => format!(
            "imc graph={} d={} check-lemmas={} critical-edge={}",
            a.graph.display(),
            a.d,
            a.check_lemmas,
            a.critical_edge
                .map_or("none".to_string(), |(x, y)| format!("{x}{y}"))
        ),
        Command::Certify(a) => format!("certify graph={} brute={}", a.graph.display(), a.brute),
        Command::Table(a) => format!(
            "table preset={} delta={}..{} format={}",
            a.preset,
            a.delta.start(),
            a.delta.end(),
            a.format
        ),
    }
}

pub(super) fn execute(
    cmd: &Command,
    limit: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut budget = Budget::new(limit);
    match cmd {
        Command::Construct(a) => construct(a, &mut budget, out),
        Command::Verify(a) => verify(a, &mut budget, out),
        Command::Solve(a) => solve(a, &mut budget, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Imc(a) => imc(a, &mut budget, out),
        Command::Certify(a) => certify(a, &mut budget, out),
        Command::Table(a) => table(a, limit, out, err),
    }
}

fn load_graph(path: &Path) -> Result<MultipartiteGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    MultipartiteGraph::from_mpg(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn construction_error(e: ConstructionError) -> CliError {
    match e {
        ConstructionError::Rejected(_) | ConstructionError::Graph(_) => {
            CliError::Precondition(e.to_string())
        }
        ConstructionError::Parse { .. } | ConstructionError::Io { .. } => CliError::Usage(e.to_string()),
    }
}

fn solve_error(e: SolveError) -> CliError {
    match e {
        SolveError::Budget(b) => CliError::Budget(b),
        other => CliError::Precondition(other.to_string()),
    }
}

fn imc_error(e: ImcError) -> CliError {
    match e {
        ImcError::Budget(b) => CliError::Budget(b),
        ImcError::Graph(_) | ImcError::Precondition(_) | ImcError::InfeasibleSeed(_) => {
            CliError::Precondition(e.to_string())
        }
        ImcError::InvariantViolated(_) => CliError::Refuted(e.to_string()),
    }
}

fn bounds_error(e: BoundsError) -> CliError {
    CliError::Precondition(e.to_string())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".claim");
    PathBuf::from(name)
}

fn read_recipe(arg: &str) -> Result<Recipe, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    parse_recipe(&text).map_err(|e| CliError::Usage(format!("recipe: {e}")))
}

fn construct(a: &ConstructArgs, budget: &mut Budget, out: &mut dyn Write) -> Result<i32, CliError> {
    let recipe = read_recipe(&a.recipe)?;
    let (g, claim) = build(&recipe).map_err(construction_error)?;
    let (status, measured) = if a.certify {
        match certify_graph(&g, &claim, budget) {
            Ok(c) => (ClaimStatus::Certified, Some(c.measured_max_it)),
            Err(CertifyError::Refuted(r)) => {
                writeln!(out, "refuted {r}")?;
                return Ok(EXIT_REFUTED);
            }
            Err(CertifyError::Budget(b)) => return Err(b.into()),
            Err(CertifyError::Construction(e)) => return Err(construction_error(e)),
        }
    } else {
        (ClaimStatus::Trusted, None)
    };
    let sidecar = sidecar_path(&a.out);
    std::fs::write(&a.out, g.to_mpg())
        .map_err(|e| CliError::Usage(format!("{}: {e}", a.out.display())))?;
    std::fs::write(&sidecar, claim.sidecar(status, measured))
        .map_err(|e| CliError::Usage(format!("{}: {e}", sidecar.display())))?;
    write!(out, "recipe\n{recipe}")?;
    writeln!(
        out,
        "graph classes {} vertices {} edges {} max-degree {} min-class {}",
        g.num_classes(),
        g.num_vertices(),
        g.num_edges(),
        g.max_degree(),
        g.min_class_size()
    )?;
    writeln!(out, "claim {claim} status {status}")?;
    if let Some(m) = measured {
        writeln!(out, "max-it {m}")?;
    }
    writeln!(out, "wrote {} {}", a.out.display(), sidecar.display())?;
    Ok(EXIT_OK)
}

fn verify(a: &VerifyArgs, budget: &mut Budget, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    match certify_graph(&g, &a.claim, budget) {
        Ok(c) => {
            writeln!(out, "certified {}", c.claim)?;
            writeln!(out, "max-it {}", c.measured_max_it)?;
            writeln!(out, "witness {}", c.witness)?;
            Ok(EXIT_OK)
        }
        Err(CertifyError::Refuted(r)) => {
            writeln!(out, "refuted {}", a.claim)?;
            writeln!(out, "reason {r}")?;
            Ok(EXIT_REFUTED)
        }
        Err(CertifyError::Budget(b)) => Err(b.into()),
        Err(CertifyError::Construction(e)) => Err(construction_error(e)),
    }
}

fn solve(a: &SolveArgs, budget: &mut Budget, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    let r = g.num_classes();
    if let Some(d) = a.defect {
        if d > r {
            return Err(CliError::Precondition(format!("defect {d} exceeds the {r} classes")));
        }
    }
    let res = max_partial_it_with_budget(&g, budget)?;
    writeln!(out, "size {}", res.size)?;
    writeln!(out, "witness {}", res.witness)?;
    if let Some(d) = a.defect {
        let target = r - d;
        let yes = res.size >= target;
        writeln!(out, "{target}-it {}", if yes { "yes" } else { "no" })?;
    }
    Ok(EXIT_OK)
}

fn bounds(a: &BoundsArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    Params::new(a.r, a.d, a.delta).map_err(bounds_error)?;
    let reports = if a.grid {
        summary_grid(a.r, a.d, a.delta)
    } else {
        vec![summary(a.r, a.d, a.delta).map_err(bounds_error)?]
    };
    let text = match a.format {
        Format::Markdown => render_markdown(&reports),
        Format::Csv => render_csv(&reports),
    };
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn imc(a: &ImcArgs, budget: &mut Budget, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    let seed = match a.critical_edge {
        Some(e) => seed_from_critical_edge(&g, a.d, e, budget).map_err(imc_error)?,
        None => {
            let best = max_partial_it_with_budget(&g, budget)?;
            FeasiblePair::seed(&g, Default::default(), best.witness)
        }
    };
    let rec = extract_imc(&g, a.d, &seed, budget).map_err(imc_error)?;
    out.write_all(rec.render().as_bytes())?;
    if !a.check_lemmas {
        return Ok(EXIT_OK);
    }
    let report = check_structure_lemmas(&g, &rec, budget);
    write!(out, "lemmas\n{report}")?;
    let failures = report.failures().count();
    writeln!(out, "failures {failures}")?;
    if failures > 0 {
        Ok(EXIT_REFUTED)
    } else if report
        .entries
        .iter()
        .any(|e| matches!(e.outcome, LemmaOutcome::BudgetExhausted))
    {
        Ok(EXIT_BUDGET)
    } else {
        Ok(EXIT_OK)
    }
}

fn certify(a: &CertifyArgs, budget: &mut Budget, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    let best = max_partial_it_with_budget(&g, budget)?;
    if best.size == g.num_classes() {
        writeln!(out, "independent-transversal {}", best.witness)?;
        return Ok(EXIT_OK);
    }
    let cert = if a.brute {
        no_it_certificate_brute(&g, budget)
            .map_err(solve_error)?
            .ok_or_else(|| CliError::Refuted("no certificate found for a graph without IT".into()))?
    } else {
        no_it_certificate(&g, budget).map_err(imc_error)?
    };
    writeln!(out, "no-independent-transversal max-it {}", best.size)?;
    out.write_all(cert.render(&g).as_bytes())?;
    Ok(EXIT_OK)
}

struct TableRow {
    delta: usize,
    formula: usize,
    measured: usize,
    max_degree: usize,
    max_it: Option<usize>,
    status: &'static str,
}

impl TableRow {
    fn fields(&self) -> [String; 6] {
        [
            self.delta.to_string(),
            self.formula.to_string(),
            self.measured.to_string(),
            self.max_degree.to_string(),
            self.max_it.map_or("-".to_string(), |m| m.to_string()),
            self.status.to_string(),
        ]
    }
}

const TABLE_HEADER: [&str; 6] = ["delta", "formula", "measured", "max_degree", "max_it", "status"];

fn table(a: &TableArgs, limit: u64, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let Preset::F65 = a.preset;
    let mut rows = vec![];
    let mut code = EXIT_OK;
    for delta in a.delta.clone() {
        let recipe = Recipe::kdd(delta).rows_spine(3);
        let (g, claim) = build(&recipe).map_err(construction_error)?;
        let mut budget = Budget::new(limit);
        let formula = 5 * delta / 4;
        let measured = g.min_class_size();
        let (max_it, status) = match certify_graph(&g, &claim, &mut budget) {
            Ok(c) if measured == formula => (Some(c.measured_max_it), "certified"),
            Ok(c) => (Some(c.measured_max_it), "mismatch"),
            Err(CertifyError::Refuted(r)) => {
                writeln!(err, "delta {delta}: {r}")?;
                (None, "refuted")
            }
            Err(CertifyError::Budget(b)) => {
                writeln!(err, "delta {delta}: {b}")?;
                (None, "budget")
            }
            Err(CertifyError::Construction(e)) => return Err(construction_error(e)),
        };
        code = match (code, status) {
            (_, "refuted" | "mismatch") => EXIT_REFUTED,
            (EXIT_OK, "budget") => EXIT_BUDGET,
            (c, _) => c,
        };
        rows.push(TableRow { delta, formula, measured, max_degree: g.max_degree(), max_it, status });
    }
    match a.format {
        Format::Markdown => {
            writeln!(out, "| {} |", TABLE_HEADER.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(TABLE_HEADER.len()))?;
            for row in &rows {
                writeln!(out, "| {} |", row.fields().join(" | "))?;
            }
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(vec![]);
            w.write_record(TABLE_HEADER).map_err(|e| CliError::Usage(e.to_string()))?;
            for row in &rows {
                w.write_record(row.fields()).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            out.write_all(&bytes)?;
        }
    }
    Ok(code)
}
