//! One function per subcommand. Each returns the text to print and the exit
//! code; only malformed input surfaces as an `Err`.

use std::fmt::Write;

use anyhow::{anyhow, bail, Context, Result};
use bhj_core::brauer::{delta_functional, ram_hom};
use bhj_core::hjstring::{determinant, weights_from_fraction};
use bhj_core::lattice::{enumerate_primitive, RationalFunctional};
use bhj_core::mmp::{beta_blowup, classify, zariski_factorize, ContractionStep, MmpError, Verdict};
use bhj_core::{
    ChainSurface, Cone, FractionPair, LatticeVector, LocalConfig, Rat, TorsionHomomorphism, TorsionValue,
};
use num_traits::One;

use crate::doc::{parse_torsion, ConfigDocument, Payload};
use crate::dot;

pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const NOT_TERMINAL: u8 = 2;
    pub const UNSUPPORTED: u8 = 3;
    pub const MISMATCH: u8 = 4;
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: exit::OK }
    }

    /// Engine refusals that are answers rather than input errors.
    fn refused(err: MmpError) -> Result<Self> {
        let code = match err {
            MmpError::NotTerminalInput(_)
            | MmpError::NonTerminalState { .. }
            | MmpError::StuckState { .. }
            | MmpError::NotContractible(_) => exit::NOT_TERMINAL,
            MmpError::UnsupportedConfig(_) => exit::UNSUPPORTED,
            other => return Err(other.into()),
        };
        let name = match &err {
            MmpError::StuckState { .. } => "StuckState: ",
            _ => "",
        };
        Ok(Self { stdout: String::new(), stderr: format!("{name}{err}\n"), code })
    }
}

/// Comma-separated integers; the empty string is the empty list.
pub fn parse_weights(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(i, w)| w.trim().parse().map_err(|_| anyhow!("weight {} ({:?}) is not an integer", i + 1, w.trim())))
        .collect()
}

pub fn parse_rational(s: &str) -> Result<Rat> {
    let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let n: i64 = n.trim().parse().map_err(|_| anyhow!("bad numerator in {s:?}"))?;
    let d: i64 = d.trim().parse().map_err(|_| anyhow!("bad denominator in {s:?}"))?;
    if d == 0 {
        bail!("zero denominator in {s:?}");
    }
    Ok(Rat::new(n.into(), d.into()))
}

fn parse_pair<T>(s: &str, what: &str, item: impl Fn(&str) -> Result<T>) -> Result<(T, T)> {
    let (a, b) = s.split_once(';').ok_or_else(|| anyhow!("{what} {s:?} needs two entries separated by ';'"))?;
    Ok((item(a).with_context(|| format!("{what} {s:?}"))?, item(b).with_context(|| format!("{what} {s:?}"))?))
}

fn parse_vector(s: &str) -> Result<LatticeVector> {
    let w = parse_weights(s)?;
    match w[..] {
        [a, b] => Ok(LatticeVector::new(a, b)),
        _ => bail!("vector {s:?} needs two coordinates"),
    }
}

pub fn read_document(path: &str) -> Result<ConfigDocument> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    ConfigDocument::parse(&text).with_context(|| format!("in {path}"))
}

pub fn det(weights: &str) -> Result<Outcome> {
    Ok(Outcome::ok(format!("{}\n", determinant(&parse_weights(weights)?))))
}

pub fn cf(fraction: &str) -> Result<Outcome> {
    let (m, k) = fraction.split_once('/').ok_or_else(|| anyhow!("expected M/K, got {fraction:?}"))?;
    let m: i64 = m.trim().parse().context("M")?;
    let k: i64 = k.trim().parse().context("K")?;
    let s = weights_from_fraction(FractionPair::new(m, k)?);
    Ok(Outcome::ok(format!("{s}\n")))
}

fn fork_kind(cfg: &LocalConfig) -> Option<String> {
    cfg.fork.as_ref().map(|f| format!("{:?}", f.kind))
}

pub fn classify_config(cfg: &LocalConfig) -> Result<Outcome> {
    let mut out = String::new();
    let code = match classify::<Rat>(cfg)? {
        Verdict::Terminal { case } => {
            let _ = write!(out, "Terminal (case {case})\nverdict=terminal\ncase={case}\n");
            exit::OK
        }
        Verdict::NotTerminal { witness, b_value } => {
            let w = format!("{},{}", witness.a, witness.b);
            if let Some(kind) = fork_kind(cfg) {
                let _ = writeln!(out, "NotTerminal (type {kind} reduction) witness={witness} b={b_value}");
                let _ = write!(out, "verdict=not_terminal\nreduction={kind}\nwitness={w}\nb={b_value}\n");
            } else {
                let delta = delta_functional::<Rat>(cfg)?.eval(witness)?;
                let order = if cfg.has_secondary() { cfg.p } else { ram_hom(cfg)?.eval(witness).order() };
                let _ = writeln!(out, "NotTerminal witness={witness} b={b_value}");
                let _ = write!(out, "verdict=not_terminal\nwitness={w}\ndelta={delta}\nzbar_order={order}\nb={b_value}\n");
            }
            exit::NOT_TERMINAL
        }
        Verdict::Unsupported { reason } => {
            let _ = write!(out, "Unsupported: {reason}\nverdict=unsupported\nreason={reason}\n");
            exit::UNSUPPORTED
        }
    };
    Ok(Outcome { stdout: out, stderr: String::new(), code })
}

pub fn classify_file(path: &str) -> Result<Outcome> {
    classify_config(&read_document(path)?.into_local()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Emit {
    /// Summary, document and dual graph.
    #[default]
    All,
    Document,
    Dot,
}

pub fn blowup_config(cfg: &LocalConfig, emit: Emit) -> Result<Outcome> {
    let out = match beta_blowup::<Rat>(cfg) {
        Ok(out) => out,
        Err(e) => return Outcome::refused(e),
    };
    let doc = ConfigDocument::chain(out.chain.clone()).emit();
    let graph = dot::render(&out.chain);
    let text = match emit {
        Emit::Document => doc,
        Emit::Dot => graph,
        Emit::All => {
            let xy = |v: LatticeVector| format!("{},{}", v.a, v.b);
            let mut s = format!("target={}\nexceptional={}\n", xy(out.target), out.exceptional);
            for (i, p) in out.singularities.iter().enumerate() {
                let w: Vec<String> = p.weights.weights().iter().map(i64::to_string).collect();
                let _ = writeln!(
                    s,
                    "singularity={} weights={} det={} cone={};{}",
                    i + 1,
                    w.join(","),
                    p.weights.determinant(),
                    xy(p.cone.u),
                    xy(p.cone.w)
                );
            }
            format!("{s}# document\n{doc}# dot\n{graph}")
        }
    };
    Ok(Outcome::ok(text))
}

pub fn blowup_file(path: &str, emit: Emit) -> Result<Outcome> {
    blowup_config(&read_document(path)?.into_local()?, emit)
}

pub fn step_line(i: usize, step: &ContractionStep<Rat>) -> String {
    let sing = match &step.singularity {
        Some(s) => {
            let w: Vec<String> = s.weights().iter().map(i64::to_string).collect();
            format!("singularity={} det={}", w.join(","), s.determinant())
        }
        None => "singularity=smooth".into(),
    };
    format!("step={} curve={} k_dot_e={} e_sq={} {sing}", i + 1, step.curve, step.k_dot_e, step.e_sq)
}

pub fn factorize_chain(chain: &ChainSurface) -> Result<Outcome> {
    match zariski_factorize::<Rat>(chain) {
        Ok(steps) => {
            let lines: String = steps.iter().enumerate().map(|(i, s)| step_line(i, s) + "\n").collect();
            Ok(Outcome::ok(lines))
        }
        Err(e) => Outcome::refused(e),
    }
}

/// Chains are factorized as given; a local configuration is first blown up.
pub fn factorize_file(path: &str) -> Result<Outcome> {
    match read_document(path)?.payload {
        Payload::Chain(c) => factorize_chain(&c),
        Payload::Local(cfg) => match beta_blowup::<Rat>(&cfg) {
            Ok(out) => factorize_chain(&out.chain),
            Err(e) => Outcome::refused(e),
        },
    }
}

pub fn enumerate(cone: &str, values: &str, bound: &str, zbar: Option<&str>) -> Result<Outcome> {
    let (u, w) = parse_pair(cone, "cone", parse_vector)?;
    let cone = Cone::new(u, w).context("malformed cone")?;
    let (fu, fw) = parse_pair(values, "ray values", parse_rational)?;
    let bound = parse_rational(bound).context("bound")?;
    let z = match zbar {
        Some(s) => {
            let (a, b) = parse_pair(s, "zbar", parse_torsion)?;
            TorsionHomomorphism::new(a, b)
        }
        None => TorsionHomomorphism::new(TorsionValue::ZERO, TorsionValue::ZERO),
    };
    let f = RationalFunctional::new(cone, fu, fw);
    let mut out = String::new();
    for v in enumerate_primitive(&cone, &f, &bound)? {
        let delta = f.eval(v)?;
        let zv = z.eval(v);
        let b = delta.clone() - Rat::one() / Rat::from_integer(zv.order().into());
        let _ = writeln!(out, "v={},{} delta={delta} zbar={zv} b={b}", v.a, v.b);
    }
    Ok(Outcome::ok(out))
}
