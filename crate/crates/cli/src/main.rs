mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subdiv::complex::io::ComplexDoc;
use subdiv::complex::Complex2D;
use subdiv::conformal::{axiom_probe, criterion_123, Axiom, AxiomParams, AxiomTarget, LayerEstimate};
use subdiv::marking::Marked;
use subdiv::modulus::{brute_force_modulus, modulus, Mode, Which, DEFAULT_TOL};
use subdiv::packing::{pack, render_svg, ColorBy};
use subdiv::rules::{builtin, subdivide, subdivide_quad, subdivide_ring, SubdivisionRule, BUILTIN_RULES};
use subdiv::verify::{seed_from_env, verify_suite, Suite};
use subdiv::{Error, ErrorClass, Result};

use manifest::RunManifest;

#[derive(Parser)]
#[command(name = "subdiv", version, about = "Subdivision rules, combinatorial moduli and circle packings")]
struct Cli {
    /// Worker threads for independent solver runs (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write a run manifest (input and output hashes) to this file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Built-in rules.
    Rules {
        #[command(subcommand)]
        cmd: RulesCmd,
    },
    /// Subdivide a complex (and its marking, if any).
    Subdivide {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Modulus of the ring or quadrilateral marked in the input.
    Modulus {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        marking: Option<MarkingKind>,
        #[arg(long, default_value = "vertex")]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Extremum::Sup)]
        which: Extremum,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Solve by brute force over carrier subsets instead.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The 1,2,3-tile criterion for a rule.
    Criterion {
        #[arg(long)]
        rule: String,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value = "vertex")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Layered annuli around a vertex over successive stages.
    Layers {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long, default_value_t = 3)]
        stages: usize,
        #[arg(long, default_value = "vertex")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Probe Axiom 0, 1 or 2 around a vertex or on the marked ring.
    Axiom {
        #[arg(long, value_enum)]
        which: AxiomArg,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long, default_value_t = 3)]
        stages: usize,
        #[arg(long, default_value = "vertex")]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Extremum::Inf)]
        modulus: Extremum,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Circle-pack a triangulated disk.
    Pack {
        #[arg(long)]
        input: PathBuf,
        /// Subdivide the input first, colouring vertices by stage of birth.
        #[arg(long)]
        rule: Option<String>,
        #[arg(long, default_value_t = 0)]
        levels: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_enum)]
        color_by: Option<ColorArg>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a built-in check suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RulesCmd {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum MarkingKind {
    Ring,
    Quad,
}

#[derive(Clone, Copy, ValueEnum)]
enum Extremum {
    Sup,
    Inf,
}

impl From<Extremum> for Which {
    fn from(e: Extremum) -> Which {
        match e {
            Extremum::Sup => Which::Sup,
            Extremum::Inf => Which::Inf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AxiomArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorArg {
    Type,
    Stage,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Paper,
    Oracle,
    Packing,
}

struct Run {
    manifest: RunManifest,
}

impl Run {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)?;
        self.manifest.input(&path.display().to_string(), text.as_bytes());
        Ok(text)
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<()> {
        std::fs::write(path, text)?;
        self.manifest.output(&path.display().to_string(), text.as_bytes());
        Ok(())
    }

    /// Writes `value` to `output`, or to standard output.
    fn emit(&mut self, value: &Value, output: Option<&Path>) -> Result<()> {
        let text = serde_json::to_string_pretty(value)? + "\n";
        match output {
            Some(p) => self.write(p, &text),
            None => {
                print!("{text}");
                self.manifest.output("stdout", text.as_bytes());
                Ok(())
            }
        }
    }

    fn rule(&mut self, name: &str) -> Result<SubdivisionRule> {
        match builtin(name) {
            Ok(r) => Ok(r),
            Err(e) if !Path::new(name).exists() => Err(e),
            Err(_) => SubdivisionRule::from_json(&self.read(Path::new(name))?),
        }
    }

    fn complex(&mut self, path: &Path) -> Result<(Complex2D, Option<Marked>)> {
        let doc = ComplexDoc::from_json(&self.read(path)?)?;
        let c = doc.to_complex()?;
        let marked = doc.markings.as_ref().map(|m| Marked::from_doc(c.clone(), m)).transpose()?;
        Ok((c, marked))
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    subdiv::parallel::set_threads(cli.threads);
    let start = Instant::now();
    let mut run = Run { manifest: RunManifest::new(argv) };
    let result = execute(&mut run, cli.cmd).and_then(|ok| {
        if let Some(path) = &cli.manifest {
            run.manifest.wall_time_secs = start.elapsed().as_secs_f64();
            std::fs::write(path, serde_json::to_string_pretty(&run.manifest)? + "\n")?;
        }
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Validation => 2,
                ErrorClass::Solver => 3,
                ErrorClass::Io => 4,
            })
        }
    }
}

/// Runs one command; `Ok(false)` means a check suite had failures.
fn execute(run: &mut Run, cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Rules { cmd: RulesCmd::List } => {
            for name in BUILTIN_RULES {
                println!("{name}");
            }
        }
        Cmd::Subdivide { rule, input, levels, output } => {
            let rule = run.rule(&rule)?;
            let (c, marked) = run.complex(&input)?;
            let doc = match marked {
                None => {
                    let mut c = c;
                    for _ in 0..levels {
                        c = subdivide(&c, &rule)?;
                    }
                    ComplexDoc::from_complex(&c)
                }
                Some(m) => {
                    let m = match m {
                        Marked::Ring(r) => Marked::Ring(subdivide_ring(&r, &rule, levels)?),
                        Marked::Quad(q) => Marked::Quad(subdivide_quad(&q, &rule, levels)?),
                    };
                    let mut doc = ComplexDoc::from_complex(m.complex());
                    doc.markings = Some(m.to_doc());
                    doc
                }
            };
            run.emit(&serde_json::to_value(&doc)?, output.as_deref())?;
        }
        Cmd::Modulus { input, marking, mode, which, tol, oracle, output } => {
            run.manifest.tolerance("tol", tol);
            let (_, marked) = run.complex(&input)?;
            let marked = marked.ok_or_else(|| Error::InvalidArgument("input has no marking".into()))?;
            match (marking, &marked) {
                (Some(MarkingKind::Ring), Marked::Quad(_)) => return Err(Error::NotARing),
                (Some(MarkingKind::Quad), Marked::Ring(_)) => {
                    return Err(Error::NotAQuad("input marks a ring".into()));
                }
                _ => {}
            }
            let r = if oracle {
                brute_force_modulus(&marked, mode, which.into())?
            } else {
                modulus(&marked, mode, which.into(), tol)?
            };
            run.emit(&r.to_json_value(), output.as_deref())?;
        }
        Cmd::Criterion { rule, levels, mode, tol, output } => {
            run.manifest.tolerance("tol", tol);
            let rule = run.rule(&rule)?;
            let report = criterion_123(&rule, levels, mode, tol)?;
            run.emit(&serde_json::to_value(&report)?, output.as_deref())?;
        }
        Cmd::Layers { rule, input, vertex, stages, mode, tol, output } => {
            run.manifest.tolerance("tol", tol);
            let rule = run.rule(&rule)?;
            let (c, _) = run.complex(&input)?;
            let params = AxiomParams { mode, which: Which::Inf, tol, threshold: None };
            let r = axiom_probe(&rule, &c, &AxiomTarget::Vertex(vertex), Axiom::Two, stages, params)?;
            let est = LayerEstimate {
                bound: r.layered.last().copied().unwrap_or(0.0),
                moduli: r.moduli,
                center: Some(vertex),
                stages: (1..=stages).collect(),
            };
            run.emit(&serde_json::to_value(&est)?, output.as_deref())?;
        }
        Cmd::Axiom { which, rule, input, vertex, stages, mode, modulus, tol, threshold, output } => {
            run.manifest.tolerance("tol", tol);
            let rule = run.rule(&rule)?;
            let (c, marked) = run.complex(&input)?;
            let target = match (vertex, marked) {
                (Some(v), _) => AxiomTarget::Vertex(v),
                (None, Some(Marked::Ring(r))) => AxiomTarget::Ring(r),
                _ => return Err(Error::InvalidArgument("give --vertex or an input with a ring marking".into())),
            };
            let axiom = match which {
                AxiomArg::Zero => Axiom::Zero,
                AxiomArg::One => Axiom::One,
                AxiomArg::Two => Axiom::Two,
            };
            let params = AxiomParams { mode, which: modulus.into(), tol, threshold };
            let report = axiom_probe(&rule, &c, &target, axiom, stages, params)?;
            run.emit(&serde_json::to_value(&report)?, output.as_deref())?;
        }
        Cmd::Pack { input, rule, levels, tol, svg, color_by, output } => {
            run.manifest.tolerance("tol", tol);
            let (mut c, _) = run.complex(&input)?;
            let mut stage = vec![0; c.n_vertices()];
            if let Some(rule) = rule {
                let rule = run.rule(&rule)?;
                for k in 1..=levels {
                    c = subdivide(&c, &rule)?;
                    stage.resize(c.n_vertices(), k);
                }
            } else if levels > 0 {
                return Err(Error::InvalidArgument("--levels needs --rule".into()));
            }
            let p = pack(&c, tol)?;
            if let Some(path) = svg {
                let color = match color_by {
                    None => ColorBy::None,
                    Some(ColorArg::Type) => ColorBy::Type,
                    Some(ColorArg::Stage) => ColorBy::Stage(stage),
                };
                run.write(&path, &render_svg(&p, &color))?;
            }
            let mut value = serde_json::to_value(&p)?;
            value["angle_residual"] = json!(p.angle_residual());
            value["tangency_error"] = json!(p.tangency_error());
            run.emit(&value, output.as_deref())?;
        }
        Cmd::Verify { suite, output } => {
            let suite = match suite {
                SuiteArg::Paper => Suite::Paper,
                SuiteArg::Oracle => Suite::Oracle,
                SuiteArg::Packing => Suite::Packing,
            };
            let report = verify_suite(suite, seed_from_env());
            for c in &report.checks {
                eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            run.emit(&serde_json::to_value(&report)?, output.as_deref())?;
            return Ok(report.passed);
        }
    }
    Ok(true)
}
