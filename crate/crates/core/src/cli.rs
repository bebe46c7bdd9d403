//! `taffine <command> [flags]`: every command prints one JSON document on
//! stdout. Exit status 0 on success, 1 on invalid input (with an
//! `{"error": …}` object), 2 when a bounded search was inconclusive.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::acceptance;
use crate::decomp::{is_parabolic, levi_core, parabolic_set, recognize, triangular, Functional, ParabolicSpec};
use crate::error::{Error, Result};
use crate::examplecase::{self as ex, Params};
use crate::json;
use crate::lattice::{Dims, RootVec, Weight};
use crate::rootsys::{Family, RootSystem};
use crate::scalar::{parse_rational, Rational};
use crate::subsystems::{check_closed, SubsystemId, Subsystems};
use crate::supportcalc::{self, ActionLabeling, CosetSupport};

#[derive(Parser, Debug)]
#[command(name = "taffine", version, about = "Root combinatorics of twisted affine Lie superalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SysArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
}

impl SysArgs {
    fn system(&self) -> Result<RootSystem> {
        RootSystem::from_parts(self.family, self.k, self.l)
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 6)]
    pub window: u32,
    #[arg(long, value_enum, default_value_t = Out::Json)]
    pub out: Out,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Out {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Roots of R with |δ-level| ≤ window.
    Roots {
        #[command(flatten)]
        sys: SysArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Kind, length label and δ-progression of a root.
    Classify {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        root: String,
    },
    /// S_α̇ for a dot root.
    Salpha {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        root: String,
    },
    /// R(i) and S(i) on the window.
    Subsystem {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        index: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Closedness of S(i) (with --index) or of a root list (with --roots).
    Closed {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long, conflicts_with = "roots")]
        index: Option<u8>,
        #[arg(long)]
        roots: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Sign split of the window by a functional.
    Triangular {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        functional: String,
        #[command(flatten)]
        common: Common,
    },
    /// The parabolic set of (functional, inner) and its axiom check.
    Parabolic {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        functional: String,
        #[arg(long)]
        inner: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// P ∩ −P of a parabolic set and its recognized type.
    Levi {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        functional: String,
        #[arg(long)]
        inner: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Component types of a finite symmetric root list.
    Recognize {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        roots: String,
        #[arg(long, value_enum, default_value_t = Out::Json)]
        out: Out,
    },
    /// Membership and B/C tests against a coset support.
    Support {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        support: String,
        #[arg(long)]
        root: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 16)]
        bound: u32,
    },
    /// Tight/hybrid status of S(i) under a labeling (default: the example's).
    Tightness {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        index: u8,
        #[arg(long)]
        labeling: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Step-by-step report for the quasi-integrable example.
    VerifyExample {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "1/2")]
        zeta: String,
        #[command(flatten)]
        common: Common,
    },
    /// The acceptance suite.
    Selftest {
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
        #[arg(long)]
        only: Option<u8>,
    },
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn parse_json(flag: &str, s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Rejected(format!("--{flag} is not valid JSON: {e}")))
}

fn parse_root(sys: &RootSystem, lit: &str) -> Result<RootVec> {
    let v = RootVec::parse(lit, sys.dims())?;
    if !sys.contains(&v) {
        return Err(Error::Rejected(format!("{v} is not a root of {}", sys.spec().family)));
    }
    Ok(v)
}

fn parse_functional(s: &str, d: Dims) -> Result<Functional> {
    Functional::from_json(&parse_json("functional", s)?, d)
}

fn parabolic_spec(f: &str, inner: Option<&str>, d: Dims) -> Result<ParabolicSpec> {
    let inner = match inner {
        Some(s) => Functional::from_json(&parse_json("inner", s)?, d)?,
        None => Functional::zero(d),
    };
    ParabolicSpec::new(parse_functional(f, d)?, inner)
}

fn subsystem_id(i: u8) -> Result<SubsystemId> {
    SubsystemId::new(i)
}

/// Exit status and the text to print.
pub struct Output {
    pub status: i32,
    pub body: String,
}

/// Runs one command line (without the program name) and returns the exit
/// status and the text to print.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("taffine")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output { status: 0, body: e.to_string() };
            }
            let body = json!({ "error": { "kind": "usage", "message": e.to_string().trim() } });
            return Output { status: 1, body: pretty(&body) };
        }
    };
    match dispatch(cli.command) {
        Ok((status, body)) => Output { status, body },
        Err(e) => {
            let status = if matches!(e, Error::Indeterminate { .. }) { 2 } else { 1 };
            Output { status, body: pretty(&json::error_object(&e)) }
        }
    }
}

pub fn main() -> i32 {
    use std::io::Write;
    let out = run(std::env::args_os().skip(1));
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{}", out.body.trim_end());
    out.status
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn text_or_json(out: Out, v: &Value, text: impl FnOnce() -> String) -> String {
    match out {
        Out::Json => pretty(v),
        Out::Text => text(),
    }
}

fn lines(rs: &[RootVec]) -> String {
    rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    let ok = |s: String| Ok((0, s));
    match cmd {
        Command::Roots { sys, common } => {
            let r = sys.system()?.enumerate_window(common.window);
            ok(text_or_json(common.out, &json::roots(&r), || lines(&r)))
        }
        Command::Classify { sys, root } => {
            let s = sys.system()?;
            let v = parse_root(&s, &root)?;
            let mut c = serde_json::to_value(s.classify(&v)?).expect("class serializes");
            c["root"] = json!(v.to_string());
            ok(pretty(&c))
        }
        Command::Salpha { sys, root } => {
            let s = sys.system()?;
            let v = RootVec::parse(&root, s.dims())?;
            let p = s.s_alpha(&v)?;
            ok(pretty(&json!({ "dot": v.to_string(), "r": p.modulus, "k": p.offset })))
        }
        Command::Subsystem { sys, index, common } => {
            let s = sys.system()?;
            let i = subsystem_id(index)?;
            let sub = Subsystems::new(&s);
            let r = sub.r_window(i, common.window);
            let sw = sub.s_window(i, common.window);
            let v = json!({ "index": index, "R": json::roots(&r), "S": json::roots(&sw) });
            ok(text_or_json(common.out, &v, || format!("R({index}):\n{}\nS({index}):\n{}", lines(&r), lines(&sw))))
        }
        Command::Closed { sys, index, roots, common } => {
            let s = sys.system()?;
            let violations = match (index, roots) {
                (Some(i), None) => Subsystems::new(&s).check_s_closed(subsystem_id(i)?, common.window),
                (None, Some(lst)) => {
                    let t = json::parse_root_list(&parse_json("roots", &lst)?, s.dims())?;
                    if let Some(x) = t.iter().find(|x| !s.contains(x)) {
                        return Err(Error::Rejected(format!("{x} is not a root")));
                    }
                    check_closed(&s, |v| t.contains(v), common.window)
                }
                _ => return Err(Error::Rejected("closed needs exactly one of --index or --roots".into())),
            };
            ok(pretty(&json!({ "closed": violations.is_empty(), "violations": violations })))
        }
        Command::Triangular { sys, functional, common } => {
            let s = sys.system()?;
            let f = parse_functional(&functional, s.dims())?;
            let t = triangular(&s.enumerate_window(common.window), &f);
            ok(pretty(&serde_json::to_value(&t).expect("serializes")))
        }
        Command::Parabolic { sys, functional, inner, common } => {
            let s = sys.system()?;
            let p = parabolic_spec(&functional, inner.as_deref(), s.dims())?;
            let set = parabolic_set(&s, &p, common.window);
            let v = is_parabolic(&s, |r| p.contains(r), common.window);
            ok(pretty(&json!({ "P": json::roots(&set), "parabolic": v.is_empty(), "violations": v })))
        }
        Command::Levi { sys, functional, inner, common } => {
            let s = sys.system()?;
            let p = parabolic_spec(&functional, inner.as_deref(), s.dims())?;
            let core = levi_core(&parabolic_set(&s, &p, common.window));
            let finite: Vec<RootVec> = core.iter().filter(|r| !r.dot_is_zero()).cloned().collect();
            let desc = recognize(&finite)?;
            ok(pretty(&json!({
                "levi": json::roots(&core),
                "type": desc.summary(),
                "components": desc.components,
            })))
        }
        Command::Recognize { k, l, roots, out } => {
            let d = Dims::new(k, l);
            let rs = json::parse_root_list(&parse_json("roots", &roots)?, d)?;
            let desc = recognize(&rs)?;
            let v = json!({ "type": desc.summary(), "components": desc.components });
            ok(text_or_json(out, &v, || desc.summary()))
        }
        Command::Support { k, l, support, root, alpha, bound } => {
            let d = Dims::new(k, l);
            let s = CosetSupport::from_json(&parse_json("support", &support)?, d)?;
            let mut v = json!({ "support": s.to_json() });
            if let Some(r) = root {
                let w = Weight::parse(&r, d)?;
                v["member"] = json!(supportcalc::member(&s, &w, bound)?);
            }
            if let Some(a) = alpha {
                let w = Weight::parse(&a, d)?;
                v["in_B"] = json!(supportcalc::b_set_member(&w, &s, bound)?);
                v["in_C"] = json!(supportcalc::c_set_member(&w, &s, bound)?);
            }
            ok(pretty(&v))
        }
        Command::Tightness { sys, index, labeling, common } => {
            let s = sys.system()?;
            let i = subsystem_id(index)?;
            let n = common.window;
            let lab = match labeling {
                Some(txt) => ActionLabeling::from_json(&parse_json("labeling", &txt)?, s.dims())?,
                None => {
                    if sys.family != Family::A2Odd || sys.l != 1 {
                        return Err(Error::Rejected(
                            "without --labeling only A2ODD with l = 1 has a default labeling".into(),
                        ));
                    }
                    ex::derived_labeling(&Params::new(sys.k, crate::scalar::rat(1, 2))?, n)
                }
            };
            let v = json!({
                "index": index,
                "tightness": supportcalc::classify_tightness(&s, i, &lab, n)?,
                "direction": supportcalc::hybrid_direction(&s, i, &lab, n)?,
                "quasi_integrable": supportcalc::quasi_integrable_check(&s, &lab, n)?,
            });
            ok(pretty(&v))
        }
        Command::VerifyExample { k, zeta, common } => {
            let z: Rational = parse_rational(&zeta).ok_or_else(|| Error::Rejected(format!("bad --zeta {zeta:?}")))?;
            let report = ex::verify_example(&Params::new(k, z)?, common.window)?;
            let v = serde_json::to_value(&report).expect("report serializes");
            ok(text_or_json(common.out, &v, || {
                report
                    .steps
                    .iter()
                    .map(|s| format!("{:<16} {}", s.name, if s.pass { "pass" } else { "FAIL" }))
                    .collect::<Vec<_>>()
                    .join("\n")
            }))
        }
        Command::Selftest { out, only } => {
            let seed = acceptance::seed_from_env();
            let reports = match only {
                Some(id) => vec![acceptance::run(id, seed)
                    .ok_or_else(|| Error::Rejected(format!("no criterion {id}; expected 1..=9")))?],
                None => acceptance::run_all(seed),
            };
            let status = if reports.iter().all(|r| r.pass) { 0 } else { 1 };
            let body = match out {
                Out::Json => pretty(&json!({ "seed": seed, "criteria": reports })),
                Out::Text => {
                    let passed = reports.iter().filter(|r| r.pass).count();
                    let mut s: Vec<String> = reports.iter().map(|r| r.line()).collect();
                    s.push(format!("{passed}/{} criteria pass (seed {seed})", reports.len()));
                    s.join("\n")
                }
            };
            Ok((status, body))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_count() {
        let o = run(["roots", "--family", "A2MIX", "--k", "1", "--l", "1", "--window", "0"]);
        assert_eq!(o.status, 0);
        let v: Value = serde_json::from_str(&o.body).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 11);
    }

    #[test]
    fn errors_are_json() {
        let o = run(["roots", "--family", "B9", "--k", "1", "--l", "1"]);
        assert_eq!(o.status, 1);
        let v: Value = serde_json::from_str(&o.body).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
        let o = run(["classify", "--family", "D2", "--k", "2", "--l", "1", "--root", "e1+"]);
        assert_eq!(o.status, 1);
        let o = run(["classify", "--family", "D2", "--k", "2", "--l", "1", "--root", "2e1"]);
        assert_eq!(o.status, 1);
    }

    #[test]
    fn classify_nonsingular() {
        let o = run(["classify", "--family", "D2", "--k", "2", "--l", "1", "--root", "e1+f1"]);
        let v: Value = serde_json::from_str(&o.body).unwrap();
        assert_eq!(v["kind"], "nonsingularx");
    }
}
