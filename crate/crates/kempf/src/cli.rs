//! Argument parsing and dispatch for the `kempf` binary.
//!
//! Exit codes: 0 success, 1 domain or payload error (error object on stdout),
//! 2 usage error, 3 a separability bound that is unbounded.

use std::ffi::OsString;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use kempf_core::character::{height_of_char, is_low_height, tensor_bound_check, Character, Characteristic};
use kempf_core::higgs::{check_integrability, dual_higgs, higgs_sections, tensor_higgs, HiggsStructure};
use kempf_core::instability::{
    is_semistable, kirwan_index_set_with_guard, measure, optimal_destabilizer, stratum_of, weight_filtration,
    Destabilizer, State,
};
use kempf_core::root_system::{Basis, RootSystem, Weight};
use kempf_core::separability::{psi_bar_with, separability_index_with, Bound, SeparabilityOptions};
use kempf_core::DEFAULT_SUBSET_GUARD;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::json::{
    convention_name, parse_basis, parse_convention, rats, unrats, BoundJson, CharacterJson, DestabilizerJson,
    FiltrationJson, HiggsJson, Rat, RootSystemJson, SectionsJson, SeparabilityJson, StrataJson,
};
use crate::{expr, selftest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNBOUNDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kempf", version, about = "Exact GIT instability, root data and separability bounds")]
pub struct Cli {
    /// Output format (JSON only).
    #[arg(long, global = true, default_value = "json", value_parser = ["json"])]
    pub format: String,
    /// Coordinates of weights and one-parameter subgroups: `fundamental` or `root`.
    #[arg(long, global = true, default_value = "fundamental")]
    pub basis: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root data of a reductive type.
    #[command(subcommand)]
    Root(RootCmd),
    /// Characters of representations.
    #[command(subcommand)]
    Char(CharCmd),
    /// Higgs structures on a vector space.
    #[command(subcommand)]
    Higgs(HiggsCmd),
    /// Instability of torus states.
    #[command(subcommand)]
    Instab(InstabCmd),
    /// Separability indices.
    #[command(subcommand)]
    Sep(SepCmd),
    /// Rank bounds for tensor products.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Run the built-in invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Root system type such as `A2`, `G2` or `A1xB3`; a bare series letter takes `--rank`.
    #[arg(long = "type")]
    pub ty: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CharArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Character expression, inline character JSON, or `@file`.
    #[arg(long = "char")]
    pub ch: String,
}

#[derive(Debug, Args)]
pub struct GuardArgs {
    /// Maximum number of weight subsets to enumerate.
    #[arg(long, default_value_t = DEFAULT_SUBSET_GUARD)]
    pub guard: u64,
}

#[derive(Debug, Subcommand)]
pub enum RootCmd {
    Show(GroupArgs),
}

#[derive(Debug, Subcommand)]
pub enum CharCmd {
    Build(CharArgs),
    Height(CharArgs),
    Lowheight {
        #[command(flatten)]
        ch: CharArgs,
        /// A prime, or `zero` for characteristic zero.
        #[arg(long)]
        p: String,
    },
}

#[derive(Debug, Args)]
pub struct HiggsArgs {
    /// Higgs structure JSON, inline or `@file`.
    #[arg(long)]
    pub higgs: String,
}

#[derive(Debug, Subcommand)]
pub enum HiggsCmd {
    Check(HiggsArgs),
    Tensor {
        #[command(flatten)]
        first: HiggsArgs,
        /// Second factor, inline or `@file`.
        #[arg(long)]
        other: String,
    },
    Dual(HiggsArgs),
    Sections(HiggsArgs),
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// List of weights, each a list of `[num, den]` pairs; outer brackets optional.
    #[arg(long)]
    pub state: String,
}

#[derive(Debug, Subcommand)]
pub enum InstabCmd {
    Optimal {
        #[command(flatten)]
        state: StateArgs,
        /// Re-verify the certificate by recomputation before emitting it.
        #[arg(long)]
        certificate: bool,
    },
    Semistable(StateArgs),
    Strata {
        #[command(flatten)]
        ch: CharArgs,
        #[command(flatten)]
        guard: GuardArgs,
        /// Also report the stratum of this state.
        #[arg(long)]
        state: Option<String>,
    },
    Filtration {
        #[command(flatten)]
        ch: CharArgs,
        /// The one-parameter subgroup, a list of `[num, den]` pairs.
        #[arg(long)]
        lambda: String,
        /// Also report the jump of this state.
        #[arg(long)]
        state: Option<String>,
    },
    Measure {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Debug, Args)]
pub struct SepArgs {
    #[command(flatten)]
    pub ch: CharArgs,
    #[command(flatten)]
    pub guard: GuardArgs,
    /// Minor size: `rank` of the submatrix, or `literal` min(rows, cols).
    #[arg(long, default_value = "rank")]
    pub convention: String,
}

#[derive(Debug, Subcommand)]
pub enum SepCmd {
    Index(SepArgs),
    Psibar(SepArgs),
}

#[derive(Debug, Subcommand)]
pub enum BoundCmd {
    Tensor {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        /// A prime, or `zero`.
        #[arg(long)]
        p: String,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Size of each randomized check.
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
}

/// What one invocation printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: e.render().to_string() }
        }
        Err(e) => return Outcome { code: EXIT_OK, stdout: e.render().to_string(), stderr: String::new() },
    };
    match execute(&cli) {
        Ok((value, code)) => Outcome { code, stdout: format!("{value}\n"), stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: format!("{}\n", e.to_json()), stderr: String::new() },
    }
}

fn to_value(v: impl Serialize) -> CliResult<Value> {
    Ok(serde_json::to_value(v)?)
}

fn ok(v: impl Serialize) -> CliResult<(Value, i32)> {
    Ok((to_value(v)?, EXIT_OK))
}

fn read_payload(raw: &str) -> CliResult<String> {
    match raw.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(raw.to_owned()),
    }
}

fn resolve_group(g: &GroupArgs) -> CliResult<Option<Arc<RootSystem>>> {
    let rs = match (&g.ty, g.rank) {
        (None, None) => return Ok(None),
        (None, Some(_)) => return Err(CliError::Usage("--rank needs --type".into())),
        (Some(t), Some(r)) if t.chars().all(|c| c.is_ascii_alphabetic()) => RootSystem::parse(&format!("{t}{r}"))?,
        (Some(t), rank) => {
            let rs = RootSystem::parse(t)?;
            if let Some(r) = rank.filter(|&r| r != rs.rank()) {
                return Err(CliError::Usage(format!("--rank {r} contradicts --type {t} of rank {}", rs.rank())));
            }
            rs
        }
    };
    Ok(Some(Arc::new(rs)))
}

fn require_group(g: &GroupArgs) -> CliResult<Arc<RootSystem>> {
    resolve_group(g)?.ok_or_else(|| CliError::Usage("--type is required".into()))
}

fn load_character(a: &CharArgs) -> CliResult<Character> {
    let ambient = resolve_group(&a.group)?;
    let text = read_payload(&a.ch)?;
    if !text.trim_start().starts_with('{') {
        return expr::parse_and_eval(&text, ambient.as_ref());
    }
    let c = serde_json::from_str::<CharacterJson>(&text)?.decode()?;
    if let Some(rs) = ambient {
        if rs.components() != c.ambient().components() {
            return Err(kempf_core::Error::AmbientMismatch.into());
        }
    }
    Ok(c)
}

fn parse_weight_list(rs: &RootSystem, raw: &str, basis: Basis) -> CliResult<Vec<Weight>> {
    let text = read_payload(raw)?;
    let lists: Vec<Vec<Rat>> = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(first) => serde_json::from_str(&format!("[{text}]")).map_err(|_| CliError::from(first))?,
    };
    lists.iter().map(|w| Ok(rs.weight_in(basis, unrats(w))?)).collect()
}

fn parse_weight(rs: &RootSystem, raw: &str, basis: Basis) -> CliResult<Weight> {
    let coords: Vec<Rat> = serde_json::from_str(&read_payload(raw)?)?;
    Ok(rs.weight_in(basis, unrats(&coords))?)
}

fn load_state(rs: &Arc<RootSystem>, raw: &str, basis: Basis) -> CliResult<State> {
    Ok(State::new(rs.clone(), parse_weight_list(rs, raw, basis)?)?)
}

fn load_higgs(raw: &str) -> CliResult<HiggsStructure> {
    serde_json::from_str::<HiggsJson>(&read_payload(raw)?)?.decode()
}

pub fn parse_characteristic(raw: &str) -> CliResult<Characteristic> {
    match raw.trim() {
        "zero" | "0" => Ok(Characteristic::Zero),
        s => {
            let p: u64 = s.parse().map_err(|_| CliError::Usage(format!("--p expects a prime or `zero`, got `{s}`")))?;
            Ok(Characteristic::prime(p)?)
        }
    }
}

fn characteristic_json(p: Characteristic) -> Value {
    match p {
        Characteristic::Zero => json!("zero"),
        Characteristic::Prime(p) => json!(p),
    }
}

fn bound_code(b: Bound) -> i32 {
    match b {
        Bound::Finite(_) => EXIT_OK,
        Bound::Unbounded => EXIT_UNBOUNDED,
    }
}

fn execute(cli: &Cli) -> CliResult<(Value, i32)> {
    let basis = parse_basis(&cli.basis)?;
    match &cli.command {
        Command::Root(RootCmd::Show(g)) => ok(RootSystemJson::encode(require_group(g)?.as_ref(), basis)?),
        Command::Char(cmd) => match cmd {
            CharCmd::Build(a) => ok(CharacterJson::encode(&load_character(a)?, basis)?),
            CharCmd::Height(a) => {
                let c = load_character(a)?;
                ok(json!({ "type": c.ambient().label(), "height": Rat(height_of_char(&c)?) }))
            }
            CharCmd::Lowheight { ch, p } => {
                let c = load_character(ch)?;
                let p = parse_characteristic(p)?;
                ok(json!({
                    "type": c.ambient().label(),
                    "height": Rat(height_of_char(&c)?),
                    "p": characteristic_json(p),
                    "low_height": is_low_height(&c, p)?,
                }))
            }
        },
        Command::Higgs(cmd) => match cmd {
            HiggsCmd::Check(a) => ok(json!({ "integrable": check_integrability(&load_higgs(&a.higgs)?) })),
            HiggsCmd::Tensor { first, other } => {
                ok(HiggsJson::encode(&tensor_higgs(&load_higgs(&first.higgs)?, &load_higgs(other)?)?))
            }
            HiggsCmd::Dual(a) => ok(HiggsJson::encode(&dual_higgs(&load_higgs(&a.higgs)?))),
            HiggsCmd::Sections(a) => {
                let h = load_higgs(&a.higgs)?;
                ok(SectionsJson::encode(h.dim_v(), &higgs_sections(&h)))
            }
        },
        Command::Instab(cmd) => instab(cmd, basis),
        Command::Sep(cmd) => {
            let (SepCmd::Index(a) | SepCmd::Psibar(a)) = cmd;
            let c = load_character(&a.ch)?;
            let convention = parse_convention(&a.convention)?;
            let opts = SeparabilityOptions { convention, guard: a.guard.guard };
            if let SepCmd::Index(_) = cmd {
                let report = separability_index_with(&c, opts)?;
                Ok((to_value(SeparabilityJson::encode(&report, convention))?, bound_code(report.psi)))
            } else {
                let b = psi_bar_with(&c, opts)?;
                let v = json!({ "psi_bar": BoundJson(b), "convention": convention_name(convention) });
                Ok((v, bound_code(b)))
            }
        }
        Command::Bound(BoundCmd::Tensor { n1, n2, p }) => {
            ok(json!({ "ok": tensor_bound_check(*n1, *n2, parse_characteristic(p)?) }))
        }
        Command::Selftest(a) => {
            let report = selftest::run(a.seed, a.cases);
            let code = if report.failed == 0 { EXIT_OK } else { EXIT_DOMAIN };
            Ok((to_value(report)?, code))
        }
    }
}

fn instab(cmd: &InstabCmd, basis: Basis) -> CliResult<(Value, i32)> {
    match cmd {
        InstabCmd::Optimal { state, certificate } => {
            let rs = require_group(&state.group)?;
            let s = load_state(&rs, &state.state, basis)?;
            let d = optimal_destabilizer(&s)?;
            let mut out = DestabilizerJson::encode(&rs, &d, basis)?;
            if *certificate {
                if let Destabilizer::Unstable(c) = &d {
                    c.verify(&s)?;
                }
                out.verified = Some(true);
            }
            ok(out)
        }
        InstabCmd::Semistable(state) => {
            let rs = require_group(&state.group)?;
            ok(json!({ "semistable": is_semistable(&load_state(&rs, &state.state, basis)?)? }))
        }
        InstabCmd::Strata { ch, guard, state } => {
            let c = load_character(ch)?;
            let rs = c.ambient().clone();
            let b = kirwan_index_set_with_guard(&c, guard.guard)?;
            let stratum = match state {
                Some(raw) => Some(stratum_of(&load_state(&rs, raw, basis)?, &c)?),
                None => None,
            };
            ok(StrataJson::encode(&rs, &b, stratum.as_ref(), basis)?)
        }
        InstabCmd::Filtration { ch, lambda, state } => {
            let c = load_character(ch)?;
            let rs = c.ambient().clone();
            let f = weight_filtration(&c, &parse_weight(&rs, lambda, basis)?)?;
            let jump = match state {
                Some(raw) => Some(
                    f.jump(&load_state(&rs, raw, basis)?).ok_or(kempf_core::Error::StateNotInSupport)?,
                ),
                None => None,
            };
            ok(FiltrationJson::encode(&rs, &f, jump, basis)?)
        }
        InstabCmd::Measure { state, lambda } => {
            let rs = require_group(&state.group)?;
            let s = load_state(&rs, &state.state, basis)?;
            let lam = parse_weight(&rs, lambda, basis)?;
            ok(json!({ "measure": Rat(measure(&s, &lam)?), "lambda": rats(lam.coords()) }))
        }
    }
}
