use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use credal::doc::{parse_contexts, parse_decay, parse_mass, SetExpr};
use credal::golden::{self, DEFAULT_TOLERANCE};
use credal::{
    alphas_from_kappa, contextual_alphas_from_kappa, contextual_discount, drc_combine,
    generalized_contextual_discount, kappa_at, raw_contextual_alphas, AlphaMode, Error, Frame,
    MassFunction, Method,
};

mod render;
mod report;

use render::{Column, Format};

/// Discounting of belief functions: contextual schemes and temporal decay.
#[derive(Parser)]
#[command(name = "credal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discount a mass function with a context vector.
    Discount {
        #[arg(long, value_name = "PATH")]
        mass: PathBuf,
        #[arg(long, value_name = "PATH")]
        context: PathBuf,
        /// Comma-separated: classical, contextual, generalized, conservative,
        /// proportional, optimistic (or c, p, o).
        #[arg(
            long,
            value_name = "NAME[,NAME...]",
            default_value = "conservative,proportional,optimistic"
        )]
        scheme: String,
        #[command(flatten)]
        output: Output,
    },
    /// Age a mass function by a number of seconds.
    Temporal {
        #[arg(long, value_name = "PATH")]
        mass: PathBuf,
        #[arg(long, value_name = "PATH")]
        decay: PathBuf,
        #[arg(long, value_name = "SECONDS")]
        time: f64,
        /// Comma-separated: contextual, generalized, conservative,
        /// proportional, optimistic (or c, p, o).
        #[arg(
            long,
            value_name = "NAME[,NAME...]",
            default_value = "conservative,proportional,optimistic"
        )]
        scheme: String,
        /// How retained fractions become rates for the rescaling schemes.
        #[arg(long, value_name = "MODE", default_value = "postulate")]
        alpha_mode: AlphaMode,
        #[command(flatten)]
        output: Output,
    },
    /// Disjunctive combination of two mass functions.
    Combine {
        /// Give exactly two.
        #[arg(long, value_name = "PATH", required = true)]
        mass: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Mass, belief and implicability of every subset.
    Inspect {
        #[arg(long, value_name = "PATH")]
        mass: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute every published reference value and compare.
    Paper {
        /// Shift the expected value of a cell by 1e-2 (self-test).
        #[arg(long, value_name = "CELL_ID", hide = true)]
        perturb: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

enum Failure {
    /// Bad document, flag or environment value.
    Input(String),
    /// The requested operator cannot be carried out.
    Scheme(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Scheme(_) => 3,
            Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Scheme(m) | Failure::Io(m) => m,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_mass(path: &Path) -> Result<MassFunction, Failure> {
    parse_mass(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_methods(list: &str) -> Result<Vec<Method>, Failure> {
    let names: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(Failure::Input("no scheme given".into()));
    }
    let mut methods = Vec::with_capacity(names.len());
    for name in names {
        let method = name
            .parse::<Method>()
            .map_err(|e| Failure::Input(e.to_string()))?;
        if !methods.contains(&method) {
            methods.push(method);
        }
    }
    Ok(methods)
}

fn scheme_error(method: Method, e: Error) -> Failure {
    Failure::Scheme(format!("{method}: {e}"))
}

fn discount(mass: &Path, context: &Path, scheme: &str, output: &Output) -> Result<(), Failure> {
    let methods = parse_methods(scheme)?;
    let m = load_mass(mass)?;
    let ctx = parse_contexts(&read(context)?, m.frame())
        .map_err(|e| Failure::Input(format!("{}: {e}", context.display())))?;
    let mut columns = vec![Column::input("m", m.clone())];
    for method in methods {
        let out = method
            .apply(&m, &ctx)
            .map_err(|e| scheme_error(method, e))?;
        columns.push(Column::output(method.name(), out));
    }
    output.emit(&render::masses(m.frame(), &columns, output.format))
}

fn temporal(
    mass: &Path,
    decay: &Path,
    time: f64,
    scheme: &str,
    mode: AlphaMode,
    output: &Output,
) -> Result<(), Failure> {
    let methods = parse_methods(scheme)?;
    if let Some(m) = methods.iter().find(|m| **m == Method::Classical) {
        return Err(Failure::Input(format!(
            "{m} discounting has no temporal form"
        )));
    }
    let m = load_mass(mass)?;
    let frame = m.frame().clone();
    let spec = parse_decay(&read(decay)?, &frame)
        .map_err(|e| Failure::Input(format!("{}: {e}", decay.display())))?;
    let kappa = kappa_at(&spec, time).map_err(|e| Failure::Input(format!("--time: {e}")))?;

    let labels: Vec<String> = spec
        .rates()
        .iter()
        .map(|&(s, _)| frame.display(s))
        .collect();
    let mut header = format!(
        "t = {time} s\ncontexts: {}\nlambda: {}\nkappa: {}\n",
        labels.join(" "),
        render::vector(&spec.lambdas()),
        render::vector(&kappa.values())
    );

    let rescaling = alphas_from_kappa(&kappa, mode).map_err(|e| Failure::Scheme(e.to_string()))?;
    if methods.iter().any(|m| m.scheme().is_some()) {
        let alphas: Vec<f64> = rescaling.contexts().iter().map(|&(_, a)| a).collect();
        header += &format!("alpha ({mode}): {}\n", render::vector(&alphas));
    }

    let needs_solver = methods.iter().any(|m| m.scheme().is_none());
    let solved = if needs_solver {
        let raw = raw_contextual_alphas(&kappa).map_err(|e| scheme_error(Method::Contextual, e))?;
        let line = format!("alpha (contextual): {}", render::vector(&raw));
        match contextual_alphas_from_kappa(&kappa) {
            Ok(ctx) => {
                header += &line;
                header.push('\n');
                Some(ctx)
            }
            Err(Error::Infeasible { .. }) => {
                if output.format == Format::Text && output.out.is_none() {
                    print!("{header}");
                }
                return Err(Failure::Scheme(format!(
                    "contextual: no discount rates in [0, 1] reproduce this decay\nraw {line}"
                )));
            }
            Err(e) => return Err(scheme_error(Method::Contextual, e)),
        }
    } else {
        None
    };

    let mut columns = vec![Column::input("m", m.clone())];
    for method in methods {
        let out = match (method.scheme(), &solved) {
            (Some(s), _) => s.apply(&m, &rescaling),
            (None, Some(ctx)) if method == Method::Generalized => {
                generalized_contextual_discount(&m, ctx)
            }
            (None, Some(ctx)) => contextual_discount(&m, ctx),
            (None, None) => unreachable!("solver runs whenever a contextual method is requested"),
        }
        .map_err(|e| scheme_error(method, e))?;
        columns.push(Column::output(method.name(), out));
    }

    let table = render::masses(&frame, &columns, output.format);
    match output.format {
        Format::Text => output.emit(&format!("{header}\n{table}")),
        _ => output.emit(&table),
    }
}

fn combine(paths: &[PathBuf], output: &Output) -> Result<(), Failure> {
    let [first, second] = paths else {
        return Err(Failure::Input(format!(
            "combine takes exactly two --mass documents, got {}",
            paths.len()
        )));
    };
    let m1 = load_mass(first)?;
    let m2 = load_mass(second)?;
    if m1.frame() != m2.frame() {
        return Err(Failure::Input(format!(
            "{} and {} use different frames",
            first.display(),
            second.display()
        )));
    }
    let out = drc_combine(&m1, &m2).map_err(|e| Failure::Scheme(e.to_string()))?;
    let frame = m1.frame().clone();
    let columns = [
        Column::input("m1", m1),
        Column::input("m2", m2),
        Column::output("drc", out),
    ];
    output.emit(&render::masses(&frame, &columns, output.format))
}

fn inspect(mass: &Path, output: &Output) -> Result<(), Failure> {
    let m = load_mass(mass)?;
    let frame: &Frame = m.frame();
    let b = m.implicabilities();
    // bel(A) = b(A) − m(∅)
    let rows: Vec<(String, f64, f64, f64)> = frame
        .subsets()
        .map(|s| {
            (
                frame.display(s),
                m.mass(s),
                b[s.index()] - m.conflict(),
                b[s.index()],
            )
        })
        .collect();

    let text = match output.format {
        Format::Text => {
            let width = rows
                .iter()
                .map(|r| r.0.chars().count())
                .max()
                .unwrap_or(0)
                .max(6);
            let mut out = format!(
                "{:<width$}  {:>8}  {:>8}  {:>13}\n",
                "subset", "mass", "belief", "implicability"
            );
            for (label, mass, bel, imp) in &rows {
                out += &format!("{label:<width$}  {mass:>8.6}  {bel:>8.6}  {imp:>13.6}\n");
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["subset", "mass", "belief", "implicability"])
                .expect("in-memory write");
            for (label, mass, bel, imp) in &rows {
                w.write_record([
                    label.clone(),
                    format!("{mass:.6}"),
                    format!("{bel:.6}"),
                    format!("{imp:.6}"),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        Format::Json => {
            let entries: Vec<serde_json::Value> = frame
                .subsets()
                .zip(&rows)
                .map(|(s, (_, mass, bel, imp))| {
                    serde_json::json!({
                        "set": SetExpr::of(frame, s),
                        "mass": mass,
                        "belief": bel,
                        "implicability": imp,
                    })
                })
                .collect();
            let doc = serde_json::json!({ "frame": frame.labels(), "subsets": entries });
            serde_json::to_string_pretty(&doc).expect("valid json") + "\n"
        }
    };
    output.emit(&text)
}

fn tolerance() -> Result<f64, Failure> {
    match std::env::var("CREDAL_TOL") {
        Err(_) => Ok(DEFAULT_TOLERANCE),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
            _ => Err(Failure::Input(format!(
                "CREDAL_TOL: `{raw}` is not a non-negative number"
            ))),
        },
    }
}

/// Returns whether every gating cell passed.
fn paper(perturb: &[String], output: &Output) -> Result<bool, Failure> {
    let tolerance = tolerance()?;
    let mut cells = golden::reference_cells().map_err(|e| Failure::Scheme(e.to_string()))?;
    for id in perturb {
        if !golden::perturb(&mut cells, id, 1e-2) {
            return Err(Failure::Input(format!("--perturb: no cell named `{id}`")));
        }
    }
    let outcomes = golden::evaluate(&cells, tolerance);
    output.emit(&report::render(&outcomes, tolerance, output.format))?;
    let failed = outcomes.iter().filter(|o| !o.pass()).count();
    if failed > 0 {
        eprintln!("{failed} cell(s) outside tolerance {tolerance:e}");
    }
    Ok(failed == 0)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Discount {
            mass,
            context,
            scheme,
            output,
        } => discount(&mass, &context, &scheme, &output).map(|_| true),
        Command::Temporal {
            mass,
            decay,
            time,
            scheme,
            alpha_mode,
            output,
        } => temporal(&mass, &decay, time, &scheme, alpha_mode, &output).map(|_| true),
        Command::Combine { mass, output } => combine(&mass, &output).map(|_| true),
        Command::Inspect { mass, output } => inspect(&mass, &output).map(|_| true),
        Command::Paper { perturb, output } => paper(&perturb, &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
