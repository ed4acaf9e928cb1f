//! Command-line entry points.
//!
//! Exit codes: 0 pass, 1 check failed, 2 unusable input, 3 enumeration cap exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::belief::UpdateRule;
use crate::caps::Caps;
use crate::consistency::{
    check_axioms, check_no_reversal, check_rectangularity_named, check_sep_all, choice_at_with,
    cross_validate_thm2, tree_algebra, ChoiceContext, SepInstance,
};
use crate::error::{Error, Result};
use crate::problem::{ContextEntry, ProblemFile};
use crate::rational;
use crate::regret::DecisionRule;
use crate::report::CheckReport;
use crate::scenarios::{builtin, Scenario, BUILTIN_NAMES};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "regretlab", version, about = "Regret-based choice in dynamic decision problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Reversal,
    Sep,
    Rect,
    Axioms,
    Thm2,
}

/// Overrides applied on top of the file's defaults (or a named context).
#[derive(Debug, Clone, clap::Args)]
pub struct ContextArgs {
    /// Start from a named context of the file instead of its defaults.
    #[arg(long)]
    pub context: Option<String>,
    /// minimax, mer, mwer or expected.
    #[arg(long)]
    pub rule: Option<String>,
    /// prior or likelihood.
    #[arg(long)]
    pub update: Option<String>,
    /// constant, feasible or explicit.
    #[arg(long)]
    pub menu: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a problem and validate its tree.
    Validate {
        /// Problem file, or `builtin:<name>`.
        path: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the choice set at a history with each member's value.
    Choose {
        path: String,
        /// A `state/action/...` path or an alias from the file.
        #[arg(long, default_value = "root")]
        at: String,
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// Run one consistency checker.
    Check {
        path: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        json: bool,
    },
    /// Write a built-in scenario as a problem file.
    Export {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the built-in scenarios.
    List,
}

/// A loaded problem: the file (for context overrides) and its scenario.
pub struct Loaded {
    pub file: ProblemFile,
    pub scenario: Scenario,
}

pub fn load(path: &str) -> Result<Loaded> {
    let file = match path.strip_prefix("builtin:") {
        Some(name) => ProblemFile::from_scenario(&builtin(name)?),
        None => ProblemFile::load(std::path::Path::new(path))?,
    };
    let scenario = file.to_scenario()?;
    Ok(Loaded { file, scenario })
}

impl Loaded {
    pub fn context(&self, args: &ContextArgs) -> Result<ChoiceContext> {
        let mut entry = match &args.context {
            None => self.file.defaults.clone(),
            Some(name) => self
                .file
                .contexts
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Config(format!("no context named `{name}`")))?,
        };
        let ContextEntry { rule, update, menu_policy } = &mut entry;
        if let Some(r) = &args.rule {
            *rule = DecisionRule::parse(r)?.name().into();
        }
        if let Some(u) = &args.update {
            *update = UpdateRule::parse(u)?.name().into();
        }
        if let Some(m) = &args.menu {
            *menu_policy = m.clone();
        }
        let space = self.scenario.tree.space();
        self.file.context(space, self.scenario.beliefs.as_ref(), &entry)
    }

    /// Fails with the validation report when the tree is malformed.
    fn validated(&self) -> std::result::Result<(), CheckReport> {
        let r = self.scenario.tree.validate();
        if r.passed() {
            Ok(())
        } else {
            Err(r)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn emit(out: &mut dyn Write, r: &CheckReport, json: bool) -> Result<i32> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r.to_json()).expect("reports serialize"))?;
    } else {
        write!(out, "{}", r.render_text())?;
    }
    Ok(if r.passed() { EXIT_PASS } else { EXIT_FAIL })
}

pub fn cmd_validate(out: &mut dyn Write, path: &str, json: bool) -> Result<i32> {
    let loaded = load(path)?;
    let r = loaded.scenario.tree.validate();
    emit(out, &r, json)
}

pub fn cmd_choose(out: &mut dyn Write, path: &str, at: &str, args: &ContextArgs, caps: &Caps) -> Result<i32> {
    let loaded = load(path)?;
    if let Err(r) = loaded.validated() {
        return emit(out, &r, false);
    }
    let ctx = loaded.context(args)?;
    let s = &loaded.scenario;
    let node = s.node(at)?;
    let table = s.tree.plan_table(caps)?;
    let c = choice_at_with(&s.tree, &table, &ctx, node)?;
    writeln!(out, "history {} ({})", s.tree.history_string(node), ctx.describe())?;
    for plan in &c.plans {
        let act = s.tree.plan_to_act(&s.tree.parse_plan(plan)?);
        let payoff: Vec<String> = act.payoff().iter().map(rational::format).collect();
        writeln!(out, "  {plan}  value {}  payoff [{}]", rational::display(&c.value), payoff.join(", "))?;
    }
    Ok(EXIT_PASS)
}

fn need_beliefs(s: &Scenario) -> Result<&crate::belief::WeightedBeliefSet> {
    s.beliefs.as_ref().ok_or(Error::RuleArgument {
        rule: "check",
        what: "a belief set",
    })
}

pub fn run_check(loaded: &Loaded, kind: Kind, args: &ContextArgs, caps: &Caps) -> Result<CheckReport> {
    let s = &loaded.scenario;
    let t = &s.tree;
    let ctx = loaded.context(args)?;
    match kind {
        Kind::Reversal => check_no_reversal(t, &ctx, caps),
        Kind::Axioms => check_axioms(t, &ctx, caps),
        Kind::Sep => {
            let table = t.plan_table(caps)?;
            let menu = t.menu_at(t.root(0), &ctx.menu_policy, &table)?;
            let algebra = tree_algebra(t, caps)?;
            check_sep_all(Some(t.space()), need_beliefs(s)?, &menu, &algebra, ctx.update)
        }
        Kind::Rect => {
            let algebra = tree_algebra(t, caps)?;
            check_rectangularity_named(Some(t.space()), need_beliefs(s)?, &algebra, ctx.update, caps)
        }
        Kind::Thm2 => {
            let table = t.plan_table(caps)?;
            let inst = SepInstance {
                label: s.name.clone(),
                beliefs: need_beliefs(s)?.clone(),
                menu: t.menu_at(t.root(0), &ctx.menu_policy, &table)?,
            };
            cross_validate_thm2(&[inst], ctx.update, caps)
        }
    }
}

pub fn cmd_check(out: &mut dyn Write, path: &str, kind: Kind, args: &ContextArgs, json: bool, caps: &Caps) -> Result<i32> {
    let loaded = load(path)?;
    if let Err(r) = loaded.validated() {
        return emit(out, &r, json);
    }
    let r = run_check(&loaded, kind, args, caps)?;
    emit(out, &r, json)
}

pub fn cmd_export(out: &mut dyn Write, name: &str, output: Option<&std::path::Path>) -> Result<i32> {
    let text = ProblemFile::from_scenario(&builtin(name)?).to_json();
    match output {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => writeln!(out, "{text}")?,
    }
    Ok(EXIT_PASS)
}

/// Runs a parsed command, printing errors to `err`; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    log::debug!("caps: {caps:?}");
    let result = match &cli.command {
        Command::Validate { path, json } => cmd_validate(out, path, *json),
        Command::Choose { path, at, ctx } => cmd_choose(out, path, at, ctx, &caps),
        Command::Check { path, kind, ctx, json } => cmd_check(out, path, *kind, ctx, *json, &caps),
        Command::Export { name, output } => cmd_export(out, name, output.as_deref()),
        Command::List => {
            for n in BUILTIN_NAMES {
                let _ = writeln!(out, "{n}");
            }
            Ok(EXIT_PASS)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::CapExceeded { name, .. } = &e {
                let _ = writeln!(err, "raise it with {}={name}=<n>", crate::caps::ENV_VAR);
            }
            exit_code(&e)
        }
    }
}
