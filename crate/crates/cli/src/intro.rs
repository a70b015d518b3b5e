//! The golden worked example: a regular point of index 3 with one branch,
//! resolved to the chain (-3) (-1) (-3) (-1).

use std::fmt::Write;

use anyhow::Result;
use bhj_core::mmp::{resolution_chain, zariski_factorize};
use bhj_core::{BranchGerm, ChainSurface, CurveRam, LatticeVector, LocalConfig, Rat, TorsionValue};

use crate::commands::{exit, step_line, Outcome};

pub const EXPECTED: &str = include_str!("../fixtures/intro.expected");

fn t(num: i64, den: i64) -> TorsionValue {
    TorsionValue::new(num, den).expect("3-torsion")
}

pub fn config() -> LocalConfig {
    LocalConfig::regular(3)
        .with_branch(BranchGerm::unramified(LatticeVector::E1, 3, 1, t(1, 3)))
        .with_zbar(t(1, 3), TorsionValue::ZERO)
}

pub fn chain() -> Result<ChainSurface> {
    let (chain, _) = resolution_chain(&config(), &[LatticeVector::new(3, 2), LatticeVector::new(3, 1)])?;
    Ok(chain)
}

pub fn transcript() -> Result<String> {
    let chain = chain()?;
    let mut out = String::new();
    let w: Vec<String> = chain.curves.iter().map(|c| format!("{}={}", c.label, c.self_intersection)).collect();
    let _ = writeln!(out, "chain {}", w.join(" "));
    let ram: Vec<String> = chain
        .curves
        .iter()
        .map(|c| match c.ram {
            CurveRam::Etale(z) => format!("{}={z}", c.label),
            CurveRam::Secondary => format!("{}=secondary", c.label),
        })
        .collect();
    let _ = writeln!(out, "ramification {}", ram.join(" "));
    for c in &chain.curves {
        let x = chain.partial_intersections::<Rat>(&c.label)?;
        let yes = if chain.contractible::<Rat>(&c.label) { "yes" } else { "no" };
        let _ = writeln!(out, "contractible {} k_dot_e={} e_sq={} {yes}", c.label, x.k_dot_e, x.e_sq);
    }
    for (i, step) in zariski_factorize::<Rat>(&chain)?.iter().enumerate() {
        let _ = writeln!(out, "{}", step_line(i, step));
    }
    for label in ["E2", "E4"] {
        let idx = chain.index_of(label)?;
        let verdict = match chain.contract_unchecked(idx).check_terminal::<Rat>() {
            Ok(()) => "terminal",
            Err(_) => "not terminal",
        };
        let _ = writeln!(out, "contract {label} first: {verdict}");
    }
    Ok(out)
}

/// Line diff in `-expected` / `+actual` form; empty when equal.
fn diff(expected: &str, actual: &str) -> String {
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
    let mut out = String::new();
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i), a.get(i));
        if x != y {
            if let Some(x) = x {
                let _ = writeln!(out, "line {}: -{x}", i + 1);
            }
            if let Some(y) = y {
                let _ = writeln!(out, "line {}: +{y}", i + 1);
            }
        }
    }
    out
}

pub fn run(expected: &str) -> Result<Outcome> {
    let got = transcript()?;
    let d = diff(expected, &got);
    if d.is_empty() {
        Ok(Outcome { stdout: format!("{got}PASS\n"), stderr: String::new(), code: exit::OK })
    } else {
        Ok(Outcome { stdout: format!("{got}FAIL\n"), stderr: d, code: exit::MISMATCH })
    }
}
