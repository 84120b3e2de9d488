//! Command-line front end. [`run`] executes one command and returns the
//! report; the binary only prints it and exits with its code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::brace::{self, Brace, Sampling};
use crate::error::Error;
use crate::io;
use crate::perm::groups_isomorphic;
use crate::power::{iso_condition, power_groups, power_solution};
use crate::solution::{self, derive_gamma, permutation_group, Axiom, Solution};
use crate::Limits;

#[derive(Debug, Parser)]
#[command(name = "ybe", version, about = "Finite solutions of the Yang-Baxter equation, power solutions and left braces")]
pub struct Cli {
    /// Size cap for group closures, isomorphism searches and power solutions
    /// [default: 1000000 group elements, 4096 power-solution points]
    #[arg(long, global = true)]
    pub cap: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the solution axioms for a σ-table file
    Verify { file: PathBuf },
    /// Build the power solution (Xⁿ, r⁽ⁿ⁾) and compare permutation groups
    Power {
        file: PathBuf,
        #[arg(short = 'n', long)]
        n: usize,
        /// Where to write the power solution
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the permutation group generated by the σ-maps
    Permgroup { file: PathBuf },
    /// List every solution on m points (m ≤ 4)
    Enumerate {
        m: usize,
        /// Also count solutions up to isomorphism
        #[arg(long)]
        dedup: bool,
        /// Directory to write one file per solution
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Left brace commands
    Brace {
        #[command(subcommand)]
        command: BraceCommand,
    },
    /// Print the defining presentation of the structure group
    Present { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum BraceCommand {
    /// Check the brace axioms for a brace file
    Verify { file: PathBuf },
    /// Print (and optionally write) the associated solution
    Solution {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Search for left braces of order k (k ≤ 6)
    Find {
        k: usize,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check the λ-map identities
    LambdaCheck { file: PathBuf },
    /// Check λ_{x1⋯xn}(y1⋯yj) = h1⋯hj and the quotient form of h_j
    Eq31Check {
        file: PathBuf,
        #[arg(short = 'n', long, default_value_t = 2)]
        n: usize,
        /// Random (x̄, ȳ) pairs to test; all pairs when omitted
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    PropertyFails,
    UsageOrParse,
    SizeCap,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::PropertyFails => 1,
            ExitStatus::UsageOrParse => 2,
            ExitStatus::SizeCap => 3,
        }
    }

    fn from_error(e: &Error) -> ExitStatus {
        match e {
            Error::SizeCap { .. } | Error::BoundExceeded { .. } => ExitStatus::SizeCap,
            Error::Inconsistent(_) => ExitStatus::PropertyFails,
            _ => ExitStatus::UsageOrParse,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub stdout: String,
    pub files_written: Vec<PathBuf>,
    pub exit: ExitStatus,
}

struct Run {
    out: String,
    inputs: Vec<String>,
    files: Vec<PathBuf>,
    limits: Limits,
}

type Step = std::result::Result<ExitStatus, Error>;

impl Run {
    fn line(&mut self, args: std::fmt::Arguments<'_>) {
        self.out.write_fmt(args).unwrap();
        self.out.push('\n');
    }

    fn read(&mut self, path: &Path) -> std::result::Result<String, Error> {
        self.inputs.push(path.display().to_string());
        fs::read_to_string(path).map_err(|e| {
            Error::parse(
                0,
                crate::error::ParseErrorKind::Syntax(format!("cannot read {}: {e}", path.display())),
            )
        })
    }

    fn write(&mut self, path: &Path, contents: &str) -> std::result::Result<(), Error> {
        fs::write(path, contents).map_err(|e| {
            Error::parse(
                0,
                crate::error::ParseErrorKind::Syntax(format!("cannot write {}: {e}", path.display())),
            )
        })?;
        self.line(format_args!("wrote: {}", path.display()));
        self.files.push(path.to_path_buf());
        Ok(())
    }

    fn solution(&mut self, path: &Path) -> std::result::Result<Solution, Error> {
        let text = self.read(path)?;
        io::parse_solution(&text)
    }

    fn brace(&mut self, path: &Path) -> std::result::Result<Brace, Error> {
        let text = self.read(path)?;
        io::parse_brace(&text)
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Verify { .. } => "verify",
        Command::Power { .. } => "power",
        Command::Permgroup { .. } => "permgroup",
        Command::Enumerate { .. } => "enumerate",
        Command::Brace { command } => match command {
            BraceCommand::Verify { .. } => "brace verify",
            BraceCommand::Solution { .. } => "brace solution",
            BraceCommand::Find { .. } => "brace find",
            BraceCommand::LambdaCheck { .. } => "brace lambda-check",
            BraceCommand::Eq31Check { .. } => "brace eq31-check",
        },
        Command::Present { .. } => "present",
    }
}

/// Executes one command. Output depends only on the arguments and input
/// files, so reruns are byte-identical.
pub fn run(cli: &Cli) -> RunReport {
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits = Limits {
            group_cap: cap,
            power_cap: cap,
        };
    }
    let name = command_name(&cli.command);
    let mut run = Run {
        out: String::new(),
        inputs: Vec::new(),
        files: Vec::new(),
        limits,
    };
    run.line(format_args!("command: {name}"));

    let result = match &cli.command {
        Command::Verify { file } => cmd_verify(&mut run, file),
        Command::Power { file, n, out } => cmd_power(&mut run, file, *n, out.as_deref()),
        Command::Permgroup { file } => cmd_permgroup(&mut run, file),
        Command::Enumerate { m, dedup, out_dir } => cmd_enumerate(&mut run, *m, *dedup, out_dir.as_deref()),
        Command::Brace { command } => cmd_brace(&mut run, command),
        Command::Present { file } => cmd_present(&mut run, file),
    };
    let exit = match result {
        Ok(status) => status,
        Err(e) => {
            run.line(format_args!("error: {e}"));
            ExitStatus::from_error(&e)
        }
    };
    run.line(format_args!("exit: {}", exit.code()));

    RunReport {
        command: name.to_string(),
        inputs: run.inputs,
        stdout: run.out,
        files_written: run.files,
        exit,
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_verify(run: &mut Run, file: &Path) -> Step {
    run.line(format_args!("input: {}", file.display()));
    let text = run.read(file)?;
    let sigma = io::parse_sigma_table(&text)?;
    let rows: Vec<Vec<usize>> = sigma.iter().map(|p| p.images().to_vec()).collect();
    let report = solution::verify(&rows, &derive_gamma(&sigma));
    run.line(format_args!("size: {}", sigma.len()));
    for axiom in Axiom::ALL {
        run.line(format_args!("{axiom}: {}", report.flag(axiom)));
    }
    for (axiom, witness) in &report.counterexamples {
        run.line(format_args!("counterexample {axiom}: {}", join(witness)));
    }
    run.line(format_args!("result: {}", pass_fail(report.all_pass())));
    Ok(if report.all_pass() {
        ExitStatus::Success
    } else {
        ExitStatus::PropertyFails
    })
}

fn cmd_power(run: &mut Run, file: &Path, n: usize, out: Option<&Path>) -> Step {
    run.line(format_args!("input: {}", file.display()));
    run.line(format_args!("n: {n}"));
    let base = run.solution(file)?;
    let limits = run.limits;
    let power = power_solution(&base, n, limits.power_cap)?;
    run.line(format_args!("base_size: {}", base.size()));
    run.line(format_args!("power_size: {}", power.result.size()));
    let verified = power.result.verify().all_pass();
    run.line(format_args!("power_verify: {}", pass_fail(verified)));

    let base_group = permutation_group(&base, limits.group_cap)?;
    let groups = power_groups(&power, limits.group_cap)?;
    let condition = iso_condition(&base, n, limits.group_cap)?;
    let to_base = groups_isomorphic(&groups.power_group, &base_group, limits.group_cap)?;
    run.line(format_args!("base_group_order: {}", base_group.order()));
    run.line(format_args!("power_group_order: {}", groups.power_group.order()));
    run.line(format_args!("product_subgroup_order: {}", groups.product_group.order()));
    run.line(format_args!("classification: {condition}"));
    run.line(format_args!(
        "power_group_isomorphic_to_product_subgroup: {}",
        groups.isomorphism.is_some()
    ));
    if let Some(iso) = &groups.isomorphism {
        for g in groups.power_group.generators() {
            if let Some(image) = iso.image(&groups.power_group, &groups.product_group, g) {
                run.line(format_args!("  witness: [{g}] -> [{image}]"));
            }
        }
    }
    run.line(format_args!("power_group_isomorphic_to_base_group: {}", to_base.is_some()));
    if let Some(path) = out {
        run.write(path, &io::emit_power_solution(&power))?;
    }
    Ok(if verified && groups.isomorphism.is_some() {
        ExitStatus::Success
    } else {
        ExitStatus::PropertyFails
    })
}

fn cmd_permgroup(run: &mut Run, file: &Path) -> Step {
    run.line(format_args!("input: {}", file.display()));
    let s = run.solution(file)?;
    let group = permutation_group(&s, run.limits.group_cap)?;
    run.line(format_args!("degree: {}", group.degree()));
    run.line(format_args!("order: {}", group.order()));
    run.line(format_args!("generators: {}", group.generators().len()));
    for g in group.generators() {
        run.line(format_args!("  {g}"));
    }
    run.line(format_args!("element_orders: {{{}}}", group
        .element_orders()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(", ")));
    Ok(ExitStatus::Success)
}

fn cmd_enumerate(run: &mut Run, m: usize, dedup: bool, out_dir: Option<&Path>) -> Step {
    run.line(format_args!("m: {m}"));
    let found = solution::enumerate_solutions(m, solution::DEFAULT_ENUMERATION_BOUND)?;
    for (i, s) in found.iter().enumerate() {
        run.line(format_args!("# solution {i}"));
        run.out.push_str(&io::emit_solution(s));
    }
    run.line(format_args!("count: {}", found.len()));
    if dedup {
        let mut representatives: Vec<&Solution> = Vec::new();
        for s in &found {
            let mut new_class = true;
            for r in &representatives {
                if solution::solutions_isomorphic(s, r)?.is_some() {
                    new_class = false;
                    break;
                }
            }
            if new_class {
                representatives.push(s);
            }
        }
        run.line(format_args!("isomorphism_classes: {}", representatives.len()));
    }
    if let Some(dir) = out_dir {
        for (i, s) in found.iter().enumerate() {
            run.write(&dir.join(format!("solution_{m}_{i:04}.txt")), &io::emit_solution(s))?;
        }
    }
    Ok(ExitStatus::Success)
}

fn cmd_brace(run: &mut Run, command: &BraceCommand) -> Step {
    match command {
        BraceCommand::Verify { file } => {
            run.line(format_args!("input: {}", file.display()));
            let text = run.read(file)?;
            let (add, mul) = io::parse_brace_tables(&text)?;
            run.line(format_args!("order: {}", add.len()));
            match brace::brace_from_tables(add, mul) {
                Ok(_) => {
                    run.line(format_args!("valid: true"));
                    Ok(ExitStatus::Success)
                }
                Err(Error::BraceAxiom { axiom, witness }) => {
                    run.line(format_args!("valid: false"));
                    run.line(format_args!("failed_axiom: {axiom}"));
                    run.line(format_args!("witness: {}", join(&witness)));
                    Ok(ExitStatus::PropertyFails)
                }
                Err(e) => Err(e),
            }
        }
        BraceCommand::Solution { file, out } => {
            run.line(format_args!("input: {}", file.display()));
            let b = run.brace(file)?;
            let s = brace::associated_solution(&b)?;
            let text = io::emit_solution(&s);
            run.out.push_str(&text);
            if let Some(path) = out {
                run.write(path, &text)?;
            }
            Ok(ExitStatus::Success)
        }
        BraceCommand::Find { k, out_dir } => {
            run.line(format_args!("k: {k}"));
            let found = brace::find_braces(*k)?;
            let mut all_ok = true;
            for (i, b) in found.iter().enumerate() {
                let lambda_ok = brace::check_lambda_properties(b).all_pass();
                let solution_ok = brace::associated_solution(b).map(|s| s.verify().all_pass()).unwrap_or(false);
                all_ok &= lambda_ok && solution_ok;
                run.line(format_args!("# brace {i}"));
                run.out.push_str(&io::emit_brace(b));
                run.line(format_args!("lambda_properties: {}", pass_fail(lambda_ok)));
                run.line(format_args!("associated_solution_verify: {}", pass_fail(solution_ok)));
            }
            run.line(format_args!("count: {}", found.len()));
            if let Some(dir) = out_dir {
                for (i, b) in found.iter().enumerate() {
                    run.write(&dir.join(format!("brace_{k}_{i:04}.txt")), &io::emit_brace(b))?;
                }
            }
            Ok(if all_ok {
                ExitStatus::Success
            } else {
                ExitStatus::PropertyFails
            })
        }
        BraceCommand::LambdaCheck { file } => {
            run.line(format_args!("input: {}", file.display()));
            let b = run.brace(file)?;
            let report = brace::check_lambda_properties(&b);
            for (name, ok) in report.flags() {
                run.line(format_args!("{name}: {ok}"));
            }
            run.line(format_args!("result: {}", pass_fail(report.all_pass())));
            Ok(if report.all_pass() {
                ExitStatus::Success
            } else {
                ExitStatus::PropertyFails
            })
        }
        BraceCommand::Eq31Check { file, n, samples, seed } => {
            run.line(format_args!("input: {}", file.display()));
            run.line(format_args!("n: {n}"));
            let b = run.brace(file)?;
            let sampling = match samples {
                Some(samples) => {
                    run.line(format_args!("sampling: random samples={samples} seed={seed}"));
                    Sampling::Random {
                        samples: *samples,
                        seed: *seed,
                    }
                }
                None => {
                    run.line(format_args!("sampling: exhaustive"));
                    Sampling::Exhaustive
                }
            };
            let survey = brace::product_expansion_survey(&b, *n, sampling)?;
            run.line(format_args!("checked: {}", survey.checked));
            if let Some((x, y)) = &survey.first_failure {
                run.line(format_args!("counterexample: x={} y={}", join(x), join(y)));
            }
            run.line(format_args!("result: {}", pass_fail(survey.holds())));
            Ok(if survey.holds() {
                ExitStatus::Success
            } else {
                ExitStatus::PropertyFails
            })
        }
    }
}

/// Relations `g_x g_y = g_z g_t` for `r(x, y) = (z, t)`, one per orbit of
/// `r` on `X²` of size two. Fixed pairs give trivial relations and are
/// dropped.
pub fn structure_group_relations(s: &Solution) -> Vec<((usize, usize), (usize, usize))> {
    let m = s.size();
    let mut relations = Vec::new();
    for x in 0..m {
        for y in 0..m {
            let (z, t) = s.r_apply(x, y).expect("indices in range");
            if (x, y) < (z, t) {
                relations.push(((x, y), (z, t)));
            }
        }
    }
    relations
}

fn cmd_present(run: &mut Run, file: &Path) -> Step {
    run.line(format_args!("input: {}", file.display()));
    let s = run.solution(file)?;
    let gens: Vec<String> = (0..s.size()).map(|x| format!("g{x}")).collect();
    run.line(format_args!("generators: {}", gens.join(" ")));
    let relations = structure_group_relations(&s);
    run.line(format_args!("relations: {}", relations.len()));
    for ((x, y), (z, t)) in relations {
        run.line(format_args!("g{x} g{y} = g{z} g{t}"));
    }
    Ok(ExitStatus::Success)
}
