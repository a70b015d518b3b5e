//! JSON configuration documents. Every rational quantity is a string so that
//! nothing passes through floating point.

use anyhow::{anyhow, bail, Context, Result};
use bhj_core::{
    Ambient, BranchGerm, ChainCurve, ChainSurface, Cover, CurveRam, ForkData, ForkKind, FractionPair, Germ, LatticeVector,
    LocalConfig, TorsionHomomorphism, TorsionValue,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Local(LocalConfig),
    Chain(ChainSurface),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigDocument {
    pub payload: Payload,
}

impl ConfigDocument {
    pub fn local(cfg: LocalConfig) -> Self {
        Self { payload: Payload::Local(cfg) }
    }

    pub fn chain(chain: ChainSurface) -> Self {
        Self { payload: Payload::Chain(chain) }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text).context("malformed document")?;
        if raw.schema_version != SCHEMA_VERSION {
            bail!("unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}", raw.schema_version);
        }
        match (raw.local_config, raw.chain_surface) {
            (Some(c), None) => Ok(Self::local(c.into_core().context("local_config")?)),
            (None, Some(c)) => Ok(Self::chain(c.into_core().context("chain_surface")?)),
            _ => bail!("document needs exactly one of local_config and chain_surface"),
        }
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn emit(&self) -> String {
        let (local_config, chain_surface) = match &self.payload {
            Payload::Local(c) => (Some(RawConfig::from_core(c)), None),
            Payload::Chain(c) => (None, Some(RawChain::from_core(c))),
        };
        let raw = RawDocument { schema_version: SCHEMA_VERSION.into(), local_config, chain_surface };
        let mut out = serde_json::to_string_pretty(&raw).expect("documents serialize");
        out.push('\n');
        out
    }

    pub fn into_local(self) -> Result<LocalConfig> {
        match self.payload {
            Payload::Local(c) => Ok(c),
            Payload::Chain(_) => bail!("expected a local_config document"),
        }
    }
}

/// `"num/den mod 1"`; the suffix and the denominator are optional on input.
pub fn parse_torsion(s: &str) -> Result<TorsionValue> {
    let body = s.trim();
    let body = body.strip_suffix("mod 1").map(str::trim_end).unwrap_or(body);
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    let num: i64 = num.parse().map_err(|_| anyhow!("bad torsion numerator in {s:?}"))?;
    let den: i64 = den.parse().map_err(|_| anyhow!("bad torsion denominator in {s:?}"))?;
    TorsionValue::new(num, den).with_context(|| format!("torsion value {s:?}"))
}

pub fn emit_torsion(t: TorsionValue) -> String {
    format!("{}/{} mod 1", t.num(), t.den())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    local_config: Option<RawConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chain_surface: Option<RawChain>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    p: i64,
    ambient: RawAmbient,
    #[serde(default)]
    branches: Vec<RawBranch>,
    zbar: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tangency_d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fork: Option<RawFork>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawAmbient {
    Regular,
    Hj { m: i64, k: i64 },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBranch {
    ray: [i64; 2],
    e: i64,
    g: i64,
    cover: RawCover,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawCover {
    Unramified(String),
    Ramified(Vec<String>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFork {
    kind: String,
    chain_weights: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    center_weight: Option<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChain {
    p: i64,
    curves: Vec<RawCurve>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left: Option<RawGerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right: Option<RawGerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    contracted: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    label: String,
    self_intersection: i64,
    n: i64,
    ram: RawRam,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGerm {
    label: String,
    e: i64,
    g: i64,
    ram: RawRam,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawRam {
    Etale(String),
    Secondary,
}

impl RawRam {
    fn from_core(r: &CurveRam) -> Self {
        match r {
            CurveRam::Etale(z) => RawRam::Etale(emit_torsion(*z)),
            CurveRam::Secondary => RawRam::Secondary,
        }
    }

    fn into_core(self) -> Result<CurveRam> {
        Ok(match self {
            RawRam::Etale(s) => CurveRam::Etale(parse_torsion(&s)?),
            RawRam::Secondary => CurveRam::Secondary,
        })
    }
}

fn fork_kind_name(k: ForkKind) -> &'static str {
    match k {
        ForkKind::B => "B",
        ForkKind::C => "C",
        ForkKind::D => "D",
    }
}

impl RawConfig {
    fn from_core(c: &LocalConfig) -> Self {
        let ambient = match c.ambient {
            Ambient::Regular => RawAmbient::Regular,
            Ambient::Hj(fp) => RawAmbient::Hj { m: fp.m(), k: fp.k() },
        };
        let branches = c
            .branches
            .iter()
            .map(|b| RawBranch {
                ray: [b.ray.a, b.ray.b],
                e: b.e,
                g: b.g,
                cover: match &b.cover {
                    Cover::Unramified(z) => RawCover::Unramified(emit_torsion(*z)),
                    Cover::Ramified(vals) => RawCover::Ramified(vals.iter().copied().map(emit_torsion).collect()),
                },
            })
            .collect();
        let fork = c.fork.as_ref().map(|f| RawFork {
            kind: fork_kind_name(f.kind).into(),
            chain_weights: f.chain_weights.clone(),
            center_weight: f.center_weight,
        });
        RawConfig {
            p: c.p,
            ambient,
            branches,
            zbar: [emit_torsion(c.zbar.value_e1), emit_torsion(c.zbar.value_e2)],
            tangency_d: c.tangency_d,
            fork,
        }
    }

    fn into_core(self) -> Result<LocalConfig> {
        let ambient = match self.ambient {
            RawAmbient::Regular => Ambient::Regular,
            RawAmbient::Hj { m, k } => Ambient::Hj(FractionPair::new(m, k).context("ambient")?),
        };
        let mut branches = Vec::new();
        for b in self.branches {
            let cover = match b.cover {
                RawCover::Unramified(s) => Cover::Unramified(parse_torsion(&s)?),
                RawCover::Ramified(vals) => {
                    Cover::Ramified(vals.iter().map(|s| parse_torsion(s)).collect::<Result<_>>()?)
                }
            };
            let ray = LatticeVector::new(b.ray[0], b.ray[1]);
            branches.push(BranchGerm { ray, e: b.e, g: b.g, cover });
        }
        let fork = match self.fork {
            None => None,
            Some(f) => {
                let kind = match f.kind.as_str() {
                    "B" => ForkKind::B,
                    "C" => ForkKind::C,
                    "D" => ForkKind::D,
                    other => bail!("unknown fork kind {other:?}"),
                };
                Some(ForkData { kind, chain_weights: f.chain_weights, center_weight: f.center_weight })
            }
        };
        let zbar = TorsionHomomorphism::new(parse_torsion(&self.zbar[0])?, parse_torsion(&self.zbar[1])?);
        let cfg = LocalConfig { p: self.p, ambient, branches, zbar, tangency_d: self.tangency_d, fork };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RawChain {
    fn from_core(c: &ChainSurface) -> Self {
        let germ = |g: &Germ| RawGerm { label: g.label.clone(), e: g.e, g: g.g, ram: RawRam::from_core(&g.ram) };
        RawChain {
            p: c.p,
            curves: c
                .curves
                .iter()
                .map(|k| RawCurve {
                    label: k.label.clone(),
                    self_intersection: k.self_intersection,
                    n: k.n,
                    ram: RawRam::from_core(&k.ram),
                })
                .collect(),
            left: c.left.as_ref().map(germ),
            right: c.right.as_ref().map(germ),
            contracted: c.contracted.iter().copied().collect(),
        }
    }

    fn into_core(self) -> Result<ChainSurface> {
        let curves = self
            .curves
            .into_iter()
            .map(|k| {
                Ok(ChainCurve { label: k.label, self_intersection: k.self_intersection, n: k.n, ram: k.ram.into_core()? })
            })
            .collect::<Result<Vec<_>>>()?;
        let germ = |g: Option<RawGerm>| -> Result<Option<Germ>> {
            g.map(|g| Ok(Germ { label: g.label, e: g.e, g: g.g, ram: g.ram.into_core()? })).transpose()
        };
        let mut chain = ChainSurface::new(self.p, curves, germ(self.left)?, germ(self.right)?)?;
        chain.contracted = self.contracted.into_iter().collect();
        chain.validate()?;
        Ok(chain)
    }
}
