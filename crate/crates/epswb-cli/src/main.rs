//! `epswb`: evaluate ordinal expressions, query the substitution calculus
//! and cover constructions, decide reach questions with certificates, and
//! run the verification suites.
//!
//! Exit codes: 0 for success (including certified True and False answers),
//! 2 for Unknown, 1 for usage or evaluation errors, 3 for suite failures.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use epswb::engine::{
    AStep, CertNode, Config, Engine, Rule, Truth, Verdict, WitnessSchema,
};
use epswb::eta::{d_of, eta_of, pi_of, wilken_le1_plus};
use epswb::oracle::reach_of;
use epswb::suite::{run_suite, SuiteReport, SUITE_NAMES};
use epswb::term::Ordinal;
use epswb::{parse_with, ParseOptions};

#[derive(Parser)]
#[command(name = "epswb", version, about = "symbolic ordinal workbench", max_term_width = 100)]
struct Cli {
    /// Step budget for the decision engine (env: EPSWB_FUEL)
    #[arg(long, global = true)]
    fuel: Option<u64>,
    /// Probe count for semi-decision grids
    #[arg(long, global = true, default_value_t = 8)]
    probes: usize,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0xE125_0001)]
    seed: u64,
    /// Maximum epsilon nesting accepted by the parser
    #[arg(long, global = true, default_value_t = 32)]
    max_eps_depth: usize,
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, normalize, and print an expression
    Eval { expr: String },
    /// Compare two ordinals
    Cmp { a: String, b: String },
    /// The epsilon numbers appearing in the normal form
    Ep { expr: String },
    /// Substitute one epsilon atom by another
    Subst { x: String, alpha: String, e: String },
    /// Membership in M(alpha, e)
    #[command(name = "inM")]
    InM { q: String, alpha: String, e: String },
    /// The leading part, its exponent tail, and the eta value
    Eta { t: String },
    /// Maximal reach m of an ordinal
    M { alpha: String },
    /// The reach criterion: alpha <1 alpha + xi
    Wilken { alpha: String, xi: String },
    /// The recursive cover of an ordinal, with its bound check
    Cover {
        delta: String,
        /// Also include the base points of this epsilon
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Evaluate the canonical fundamental sequence at given indices
    Fundseq {
        t: String,
        alpha: String,
        #[arg(long, value_delimiter = ',')]
        indices: Vec<String>,
    },
    /// Decide alpha <=1 s with a certificate
    Le1 { alpha: String, s: String },
    /// Membership in the thinning hierarchy at t over alpha
    #[command(name = "a-member")]
    AMember { beta: String, t: String, alpha: String },
    /// Probe alpha <=1 alpha^+
    Class2 {
        alpha: String,
        #[arg(long = "probe", id = "probe_target")]
        probe_targets: Vec<String>,
    },
    /// Run a verification suite
    Verify {
        suite: String,
        #[arg(long, default_value_t = 200)]
        budget: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fuel = cli
        .fuel
        .or_else(|| std::env::var("EPSWB_FUEL").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(64);
    let config = Config {
        fuel,
        probe_count: cli.probes,
        seed: cli.seed,
        max_eps_depth: cli.max_eps_depth,
    };
    match run(&cli, config) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

struct Ctx {
    json: bool,
    opts: ParseOptions,
    engine: Engine,
}

impl Ctx {
    fn ord(&self, text: &str) -> Result<Ordinal, String> {
        parse_with(text, self.opts).map_err(|e| e.to_string())
    }

    fn emit(&self, query: Value, text: String, body: Value) -> ExitCode {
        if self.json {
            let mut out = serde_json::Map::new();
            out.insert("schema_version".into(), json!(1));
            out.insert("query".into(), query);
            if let Value::Object(map) = body {
                for (k, v) in map {
                    out.insert(k, v);
                }
            }
            println!("{}", Value::Object(out));
        } else {
            println!("{text}");
        }
        ExitCode::SUCCESS
    }

    fn emit_verdict(&self, query: Value, v: &Verdict) -> ExitCode {
        let code = match v.value {
            Truth::Unknown => ExitCode::from(2),
            _ => ExitCode::SUCCESS,
        };
        if self.json {
            let mut out = serde_json::Map::new();
            out.insert("schema_version".into(), json!(1));
            out.insert("query".into(), query);
            out.insert("value".into(), json!(v.value.to_string()));
            out.insert("exactness".into(), json!(v.exactness.to_string()));
            out.insert("fuel_used".into(), json!(v.fuel_used));
            out.insert("certificate".into(), cert_json(&v.certificate.root));
            println!("{}", Value::Object(out));
        } else {
            println!("{v}");
        }
        code
    }
}

fn run(cli: &Cli, config: Config) -> Result<ExitCode, String> {
    let fuel = config.fuel;
    let ctx = Ctx {
        json: cli.json,
        opts: ParseOptions { max_eps_depth: config.max_eps_depth, ..ParseOptions::default() },
        engine: Engine::new(config),
    };
    let code = match &cli.command {
        Command::Eval { expr } => {
            let x = ctx.ord(expr)?;
            ctx.emit(json!({"op": "eval", "expr": expr}), x.to_string(), json!({"value": x.to_string()}))
        }
        Command::Cmp { a, b } => {
            let (a, b) = (ctx.ord(a)?, ctx.ord(b)?);
            let rel = match a.cmp(&b) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            ctx.emit(
                json!({"op": "cmp", "a": a.to_string(), "b": b.to_string()}),
                rel.to_string(),
                json!({"value": rel}),
            )
        }
        Command::Ep { expr } => {
            let x = ctx.ord(expr)?;
            let set = epswb::ep_set(&x);
            ctx.emit(
                json!({"op": "ep", "expr": x.to_string()}),
                set.to_string(),
                json!({"value": set.iter().map(|o| o.to_string()).collect::<Vec<_>>()}),
            )
        }
        Command::Subst { x, alpha, e } => {
            let (x, alpha, e) = (ctx.ord(x)?, ctx.ord(alpha)?, ctx.ord(e)?);
            let out = epswb::subst(&x, &alpha, &e).map_err(|e| e.to_string())?;
            ctx.emit(
                json!({"op": "subst", "x": x.to_string(), "alpha": alpha.to_string(), "e": e.to_string()}),
                out.to_string(),
                json!({"value": out.to_string()}),
            )
        }
        Command::InM { q, alpha, e } => {
            let (q, alpha, e) = (ctx.ord(q)?, ctx.ord(alpha)?, ctx.ord(e)?);
            let out = epswb::in_m(&q, &alpha, &e).map_err(|e| e.to_string())?;
            ctx.emit(
                json!({"op": "inM", "q": q.to_string(), "alpha": alpha.to_string(), "e": e.to_string()}),
                out.to_string(),
                json!({"value": out}),
            )
        }
        Command::Eta { t } => {
            let t = ctx.ord(t)?;
            let pi = pi_of(&t).map_err(|e| e.to_string())?;
            let d = d_of(&pi);
            let eta = eta_of(&t).map_err(|e| e.to_string())?;
            ctx.emit(
                json!({"op": "eta", "t": t.to_string()}),
                format!("pi = {pi}\nd pi = {d}\neta = {eta}"),
                json!({"pi": pi.to_string(), "d_pi": d.to_string(), "eta": eta.to_string()}),
            )
        }
        Command::M { alpha } => {
            let alpha = ctx.ord(alpha)?;
            if alpha.is_epsilon() {
                let (value, v) = ctx.engine.m_of(&alpha).map_err(|e| e.to_string())?;
                match value {
                    Some(m) => {
                        let q = json!({"op": "m", "alpha": alpha.to_string(), "m": m.to_string()});
                        if ctx.json {
                            let mut out = serde_json::Map::new();
                            out.insert("schema_version".into(), json!(1));
                            out.insert("query".into(), q);
                            out.insert("value".into(), json!(m.to_string()));
                            out.insert("exactness".into(), json!(v.exactness.to_string()));
                            out.insert("fuel_used".into(), json!(v.fuel_used));
                            out.insert("certificate".into(), cert_json(&v.certificate.root));
                            println!("{}", Value::Object(out));
                            ExitCode::SUCCESS
                        } else {
                            println!("m({alpha}) = {m} ({})", v.exactness);
                            ExitCode::SUCCESS
                        }
                    }
                    None => ctx.emit_verdict(json!({"op": "m", "alpha": alpha.to_string()}), &v),
                }
            } else {
                let m = reach_of(&alpha, &ctx.engine, fuel)
                    .ok_or_else(|| "reach not determined".to_string())?;
                ctx.emit(
                    json!({"op": "m", "alpha": alpha.to_string()}),
                    format!("m({alpha}) = {m} (certified)"),
                    json!({"value": m.to_string(), "exactness": "certified"}),
                )
            }
        }
        Command::Wilken { alpha, xi } => {
            let (alpha, xi) = (ctx.ord(alpha)?, ctx.ord(xi)?);
            let out = wilken_le1_plus(&alpha, &xi).map_err(|e| e.to_string())?;
            ctx.emit(
                json!({"op": "wilken", "alpha": alpha.to_string(), "xi": xi.to_string()}),
                format!("{alpha} <1 {alpha}+{xi}: {out}"),
                json!({"value": out}),
            )
        }
        Command::Cover { delta, alpha } => {
            let delta = ctx.ord(delta)?;
            let cover = match alpha {
                None => epswb::cover::c_cover(&delta).map_err(|e| e.to_string())?,
                Some(a) => {
                    let a = ctx.ord(a)?;
                    epswb::cover::d_cover(&a, &delta).map_err(|e| e.to_string())?
                }
            };
            let bound = eta_of(&delta).map_err(|e| e.to_string())?;
            let within = cover.max().map(|m| *m <= bound).unwrap_or(true);
            ctx.emit(
                json!({"op": "cover", "delta": delta.to_string(), "alpha": alpha}),
                format!("{cover}\ncardinality = {}\nbound eta+1 respected = {within}", cover.len()),
                json!({
                    "elements": cover.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                    "cardinality": cover.len(),
                    "eta": bound.to_string(),
                    "within_bound": within,
                }),
            )
        }
        Command::Fundseq { t, alpha, indices } => {
            let (t, alpha) = (ctx.ord(t)?, ctx.ord(alpha)?);
            let seq = epswb::fundseq::l_seq(&t, &alpha).map_err(|e| e.to_string())?;
            let idx: Result<Vec<Ordinal>, String> =
                indices.iter().map(|s| ctx.ord(s)).collect();
            let idx = idx?;
            let values = seq.sample(&idx).map_err(|e| e.to_string())?;
            let lines: Vec<String> = idx
                .iter()
                .zip(&values)
                .map(|(j, v)| format!("l({j}) = {v}"))
                .collect();
            ctx.emit(
                json!({"op": "fundseq", "t": t.to_string(), "alpha": alpha.to_string()}),
                format!("{seq}\n{}", lines.join("\n")),
                json!({
                    "shape": seq.to_string(),
                    "index_bound": seq.index_bound.to_string(),
                    "values": idx.iter().zip(&values)
                        .map(|(j, v)| json!({"index": j.to_string(), "value": v.to_string()}))
                        .collect::<Vec<_>>(),
                }),
            )
        }
        Command::Le1 { alpha, s } => {
            let (alpha, s) = (ctx.ord(alpha)?, ctx.ord(s)?);
            let v = ctx.engine.le1_decide(&alpha, &s).map_err(|e| e.to_string())?;
            ctx.emit_verdict(
                json!({"op": "le1", "alpha": alpha.to_string(), "s": s.to_string()}),
                &v,
            )
        }
        Command::AMember { beta, t, alpha } => {
            let (beta, t, alpha) = (ctx.ord(beta)?, ctx.ord(t)?, ctx.ord(alpha)?);
            let v = ctx
                .engine
                .a_member(&beta, &t, &alpha, fuel)
                .map_err(|e| e.to_string())?;
            ctx.emit_verdict(
                json!({"op": "a-member", "beta": beta.to_string(), "t": t.to_string(), "alpha": alpha.to_string()}),
                &v,
            )
        }
        Command::Class2 { alpha, probe_targets } => {
            let alpha = ctx.ord(alpha)?;
            let ts: Result<Vec<Ordinal>, String> =
                probe_targets.iter().map(|s| ctx.ord(s)).collect();
            let v = ctx
                .engine
                .class2_probe(&alpha, &ts?, fuel)
                .map_err(|e| e.to_string())?;
            ctx.emit_verdict(json!({"op": "class2", "alpha": alpha.to_string()}), &v)
        }
        Command::Verify { suite, budget } => {
            let names: Vec<&str> = if suite == "all" {
                SUITE_NAMES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut reports = Vec::new();
            for name in names {
                reports.push(run_suite(name, cli.seed, *budget).map_err(|e| e.to_string())?);
            }
            let ok = reports.iter().all(SuiteReport::ok);
            if ctx.json {
                let body: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "suite": r.name,
                            "seed": r.seed,
                            "budget": r.budget,
                            "passed": r.passed,
                            "failed": r.failed,
                            "skipped": r.skipped,
                            "failures": r.failures,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({"schema_version": 1, "query": {"op": "verify"}, "reports": body})
                );
            } else {
                for r in &reports {
                    println!(
                        "{}: {} (pass {}, fail {}, skip {}, seed {})",
                        r.name,
                        if r.ok() { "ok" } else { "FAILED" },
                        r.passed,
                        r.failed,
                        r.skipped,
                        r.seed,
                    );
                    for f in &r.failures {
                        println!("  {f}");
                    }
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
    };
    Ok(code)
}

fn cert_json(node: &CertNode) -> Value {
    let mut map = serde_json::Map::new();
    let rule: Value = match &node.rule {
        Rule::Interval => json!({"name": "Interval"}),
        Rule::Alpha2Base => json!({"name": "Alpha2Base"}),
        Rule::EtaReduce { to } => json!({"name": "EtaReduce", "to": to.to_string()}),
        Rule::LimE => json!({"name": "LimE"}),
        Rule::LimSetCofinal { schema } => match schema {
            WitnessSchema::Membership { inner_depth } => {
                json!({"name": "LimSetCofinal", "schema": "membership", "inner_depth": inner_depth.to_string()})
            }
            WitnessSchema::Cofinal { probes } => json!({
                "name": "LimSetCofinal",
                "schema": "cofinal",
                "probes": probes.iter()
                    .map(|(j, d)| json!({"index": j.to_string(), "depth": d.to_string()}))
                    .collect::<Vec<_>>(),
            }),
        },
        Rule::LimSetEmpty { required_depth, actual_depth } => json!({
            "name": "LimSetEmpty",
            "required_depth": required_depth.to_string(),
            "actual_depth": actual_depth.to_string(),
        }),
        Rule::GCriterion { beta, instantiated } => json!({
            "name": "GCriterion",
            "beta": beta.to_string(),
            "instantiated": instantiated.to_string(),
        }),
        Rule::ARecursion { step } => json!({
            "name": "ARecursion",
            "step": match step {
                AStep::Base => "base",
                AStep::SuccessorCopy => "successor-copy",
                AStep::SuccessorLim => "successor-lim",
                AStep::LimitViaL => "limit-via-l",
                AStep::LimitViaE => "limit-via-e",
            },
        }),
    };
    map.insert("rule".into(), rule);
    map.insert("alpha".into(), json!(node.alpha.to_string()));
    map.insert("target".into(), json!(node.target.to_string()));
    map.insert("depth".into(), json!(node.depth.to_string()));
    map.insert(
        "children".into(),
        Value::Array(node.children.iter().map(cert_json).collect()),
    );
    Value::Object(map)
}
