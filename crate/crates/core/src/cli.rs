//! The `lexrank` command line. [`run`] takes the arguments and output
//! streams so it can be driven in-process.
//!
//! Exit codes: 0 found / valid / accepted / generated, 1 none / invalid /
//! rejected, 2 error (a JSON object `{code, message}` on stderr).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::check::check_llrf;
use crate::dimension::{dim_at_most, min_dimension_with};
use crate::error::{Error, Result};
use crate::format::json::{self, Witness};
use crate::format::{parse_loop, print_loop};
use crate::llrf::{LexRankingFunction, RankingClass};
use crate::mlc::{Domain, MlcLoop};
use crate::reductions::{
    dimension_gap_loop, hypergraph_to_loop, intro_loop, maxdim_family, qbf_to_loop, qbf_to_loop_padded, Hypergraph3,
    Qbf2Cnf,
};
use crate::synth::{adfg_llrf, bg_llrf, bms_llrf, find_lrf};
use crate::witness::{
    build_dim_witness, build_no_bms_llrf_witness, build_qlrf_witness, check_bg_dim_witness, check_no_bms_llrf_witness,
    check_qlrf_witness, WitnessVerdict,
};

#[derive(Parser, Debug)]
#[command(name = "lexrank", version, about = "Lexicographic linear ranking functions for multipath constraint loops")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Synthesize a ranking function of the given class.
    Synth {
        file: PathBuf,
        #[command(flatten)]
        target: ClassDomain,
    },
    /// Decide a dimension bound or compute the minimal dimension.
    Dimension {
        file: PathBuf,
        #[command(flatten)]
        target: ClassDomain,
        #[arg(long, value_name = "D", conflicts_with = "minimize", required_unless_present = "minimize")]
        at_most: Option<usize>,
        #[arg(long)]
        minimize: bool,
    },
    /// Build or check non-existence witnesses (integer loops).
    Witness {
        #[command(subcommand)]
        action: WitnessCmd,
    },
    /// Print a generated loop in the .mlc format.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Check a candidate ranking function given as JSON.
    Check {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        candidate: PathBuf,
        #[command(flatten)]
        target: ClassDomain,
    },
}

#[derive(Args, Debug)]
struct ClassDomain {
    #[arg(long, value_enum)]
    class: ClassArg,
    /// Overrides the `domain` line of the loop file.
    #[arg(long, value_enum)]
    domain: Option<DomainArg>,
}

#[derive(Subcommand, Debug)]
enum WitnessCmd {
    Build {
        file: PathBuf,
        #[command(flatten)]
        opts: WitnessOpts,
    },
    Check {
        file: PathBuf,
        witness: PathBuf,
        #[command(flatten)]
        opts: WitnessOpts,
    },
}

#[derive(Args, Debug)]
struct WitnessOpts {
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Path (from 1) a QLRF witness is about.
    #[arg(long, value_name = "P")]
    target: Option<usize>,
    /// Dimension bound for bg-dim / adfg-dim.
    #[arg(long, value_name = "D")]
    dim: Option<usize>,
    #[arg(long, value_enum)]
    domain: Option<DomainArg>,
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// The four-path loop with BMS-LLRF <x, y>.
    Intro,
    /// k paths needing k BMS components.
    Maxdim { k: usize },
    /// The loop with minimal dimensions 3 (BMS), 4 (BG), 5 (ADFG).
    Dimgap,
    /// Loop with a d-dimensional BMS-LLRF iff the hypergraph is d-colorable.
    Hypergraph {
        file: PathBuf,
        #[arg(long, value_name = "D")]
        colors: Option<usize>,
    },
    /// Integer loop with a 2-dimensional BMS-LLRF iff the sentence is true.
    Qbf {
        file: PathBuf,
        /// Pad so that the question becomes dimension D > 2.
        #[arg(long, value_name = "D")]
        pad: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ClassArg {
    Lrf,
    Bms,
    Bg,
    Adfg,
}

impl From<ClassArg> for RankingClass {
    fn from(c: ClassArg) -> RankingClass {
        match c {
            ClassArg::Lrf => RankingClass::Lrf,
            ClassArg::Bms => RankingClass::Bms,
            ClassArg::Bg => RankingClass::Bg,
            ClassArg::Adfg => RankingClass::Adfg,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DomainArg {
    Rat,
    Int,
}

impl From<DomainArg> for Domain {
    fn from(d: DomainArg) -> Domain {
        match d {
            DomainArg::Rat => Domain::Rational,
            DomainArg::Int => Domain::Integer,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum KindArg {
    Qlrf,
    BmsLlrf,
    BgDim,
    AdfgDim,
}

impl KindArg {
    fn tag(self) -> &'static str {
        match self {
            KindArg::Qlrf => "qlrf",
            KindArg::BmsLlrf => "bms-llrf",
            KindArg::BgDim => "bg-dim",
            KindArg::AdfgDim => "adfg-dim",
        }
    }
}

/// What a command printed and how it ended.
enum Output {
    Json(Value, i32),
    Text(String),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("cannot read {}: {e}", path.display()))))
}

fn load(path: &Path, domain: Option<DomainArg>) -> Result<MlcLoop> {
    let l = parse_loop(&read(path)?)?;
    Ok(match domain {
        Some(d) => l.with_domain(d.into()),
        None => l,
    })
}

fn synthesize(l: &MlcLoop, class: RankingClass) -> Result<Option<LexRankingFunction>> {
    match class {
        RankingClass::Lrf => Ok(find_lrf(l)?.map(|f| LexRankingFunction::new(vec![f], RankingClass::Lrf, None))),
        RankingClass::Bms => bms_llrf(l),
        RankingClass::Bg => bg_llrf(l),
        RankingClass::Adfg => adfg_llrf(l),
    }
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn witness_loop(file: &Path, domain: Option<DomainArg>) -> Result<MlcLoop> {
    if matches!(domain, Some(DomainArg::Rat)) {
        return Err(Error::Invalid("witnesses are defined for integer loops only".into()));
    }
    Ok(load(file, None)?.with_domain(Domain::Integer))
}

fn need<T>(v: Option<T>, flag: &str, kind: KindArg) -> Result<T> {
    v.ok_or_else(|| Error::Invalid(format!("--kind {} needs {flag}", kind.tag())))
}

fn witness_build(file: &Path, o: &WitnessOpts) -> Result<Output> {
    let l = witness_loop(file, o.domain)?;
    let kind = o.kind.ok_or_else(|| Error::Invalid("witness build needs --kind".into()))?;
    let built = match kind {
        KindArg::Qlrf => {
            let p = need(o.target, "--target", kind)?;
            if p == 0 || p > l.k() {
                return Err(Error::Invalid(format!("--target must be a path number in 1..={}", l.k())));
            }
            build_qlrf_witness(&l, p - 1)?.map(Witness::Qlrf)
        }
        KindArg::BmsLlrf => build_no_bms_llrf_witness(&l)?.map(Witness::BmsLlrf),
        KindArg::BgDim => build_dim_witness(&l, RankingClass::Bg, need(o.dim, "--dim", kind)?)?.map(Witness::Dim),
        KindArg::AdfgDim => build_dim_witness(&l, RankingClass::Adfg, need(o.dim, "--dim", kind)?)?.map(Witness::Dim),
    };
    Ok(match built {
        Some(w) => Output::Json(json::witness_json(&w), 0),
        None => Output::Json(serde_json::json!({ "status": "none", "kind": kind.tag() }), 1),
    })
}

fn witness_check(file: &Path, witness: &Path, o: &WitnessOpts) -> Result<Output> {
    let l = witness_loop(file, o.domain)?;
    let w = json::parse_witness(&read(witness)?)?;
    if let Some(k) = o.kind {
        if k.tag() != w.kind() {
            return Err(Error::Invalid(format!("--kind {} but the file holds a {} witness", k.tag(), w.kind())));
        }
    }
    let v = match &w {
        Witness::Qlrf(q) => check_qlrf_witness(&l, q)?,
        Witness::BmsLlrf(ws) => check_no_bms_llrf_witness(&l, ws)?,
        Witness::Dim(d) => check_bg_dim_witness(&l, d, o.dim.unwrap_or(d.chain.len()))?,
    };
    let ok = matches!(v, WitnessVerdict::Accepted);
    Ok(Output::Json(json::witness_verdict_json(&v), exit_for(ok)))
}

fn generate(what: &GenCmd) -> Result<Output> {
    let (comment, l) = match what {
        GenCmd::Intro => (None, intro_loop()),
        GenCmd::Maxdim { k } => {
            if *k == 0 {
                return Err(Error::Invalid("maxdim needs k >= 1".into()));
            }
            (None, maxdim_family(*k))
        }
        GenCmd::Dimgap => (None, dimension_gap_loop()),
        GenCmd::Hypergraph { file, colors } => {
            let h = Hypergraph3::parse(&read(file)?)?;
            let c = colors.map(|d| format!("# {d}-colorable iff a BMS-LLRF with at most {d} components exists\n"));
            (c, hypergraph_to_loop(&h))
        }
        GenCmd::Qbf { file, pad } => {
            let q = Qbf2Cnf::parse(&read(file)?)?;
            match pad {
                None => (
                    Some("# true iff a BMS-LLRF with at most 2 components exists\n".to_string()),
                    qbf_to_loop(&q),
                ),
                Some(d) => (
                    Some(format!("# true iff a BMS-LLRF with at most {d} components exists\n")),
                    qbf_to_loop_padded(&q, *d)?,
                ),
            }
        }
    };
    Ok(Output::Text(format!("{}{}", comment.unwrap_or_default(), print_loop(&l))))
}

fn execute(cmd: &Cmd) -> Result<Output> {
    match cmd {
        Cmd::Synth { file, target } => {
            let l = load(file, target.domain)?;
            let class = target.class.into();
            let f = synthesize(&l, class)?;
            Ok(Output::Json(json::synth_json(&l, class, f.as_ref()), exit_for(f.is_some())))
        }
        Cmd::Dimension { file, target, at_most, minimize: _ } => {
            let l = load(file, target.domain)?;
            let class = target.class.into();
            match at_most {
                Some(d) => {
                    let f = dim_at_most(&l, class, *d)?;
                    Ok(Output::Json(json::at_most_json(&l, class, *d, f.as_ref()), exit_for(f.is_some())))
                }
                None => {
                    let f = min_dimension_with(&l, class)?;
                    Ok(Output::Json(json::min_dimension_json(&l, class, f.as_ref()), exit_for(f.is_some())))
                }
            }
        }
        Cmd::Witness { action } => match action {
            WitnessCmd::Build { file, opts } => witness_build(file, opts),
            WitnessCmd::Check { file, witness, opts } => witness_check(file, witness, opts),
        },
        Cmd::Gen { what } => generate(what),
        Cmd::Check { file, candidate, target } => {
            let l = load(file, target.domain)?;
            let cand = json::parse_candidate(&read(candidate)?, &l, target.class.into())?;
            let v = check_llrf(&l, &cand)?;
            Ok(Output::Json(json::verdict_json(&v), exit_for(v.is_valid())))
        }
    }
}

/// Runs one command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let v = serde_json::json!({ "code": "usage", "message": e.render().to_string().trim_end() });
            let _ = writeln!(err, "{v}");
            return 2;
        }
    };
    match execute(&cli.cmd) {
        Ok(Output::Json(v, code)) => {
            let _ = writeln!(out, "{}", v);
            code
        }
        Ok(Output::Text(s)) => {
            let _ = write!(out, "{s}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "{}", json::error_json(&e));
            2
        }
    }
}
