use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use powgrp::constructions::{parse_group_spec, search_counterexample_1458};
use powgrp::detect::{
    check_names, detect_report, truncation_witness, verify_paper, DetectError, Status,
};
use powgrp::fingroup::{
    derived_length, derived_series, exponent, lower_central_series, nilpotency_class,
    power_subgroup, GroupHandle, NilpotencyClass, Subgroup,
};
use powgrp::freegrp::{
    check_certificate, check_trace, its_abelian_pipeline, parse_certificate, parse_presentation,
    parse_trace, Validity,
};
use powgrp::words::{parse_law, satisfies, Strategy};

const PARALLEL_ENV: &str = "POWGRP_PARALLEL";

#[derive(Parser, Debug)]
#[command(
    name = "powgrp",
    version,
    about = "Power subgroups, group laws and presentation certificates"
)]
struct Cli {
    /// Worker threads for parallel scans [default: $POWGRP_PARALLEL, else all cores]
    #[arg(long, global = true, value_name = "K")]
    parallel: Option<usize>,
    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the order and series of a group
    Construct { spec: String },
    /// Compute the power subgroup G*m = <g^m>
    Power {
        spec: String,
        #[arg(long)]
        m: u64,
    },
    /// Decide whether a law holds in a group
    LawCheck {
        spec: String,
        #[arg(long)]
        law: String,
        /// auto, structural or exhaustive:<budget>
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
    /// Evaluate a law on G*m, G*n and G
    Detect {
        spec: String,
        #[arg(long)]
        law: String,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Check a certificate file against a presentation file
    Certify {
        presentation: PathBuf,
        certificate: PathBuf,
    },
    /// Check a derivation trace file
    TraceCheck { trace: PathBuf },
    /// Run the three-stage check that G_{m,n} presents Z x Z
    ItsAbelian {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Search semidirect products of order 1458 for a non-metabelian group
    /// with metabelian power subgroups for 2 and 3
    #[command(name = "search-1458")]
    Search1458,
    /// Find a nonabelian permutation group satisfying the truncated relators
    TruncationWitness {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        bound: usize,
    },
    /// Run the named checks (all of them by default)
    VerifyPaper {
        /// Comma-separated check names
        #[arg(long, value_delimiter = ',', value_name = "NAMES")]
        only: Option<Vec<String>>,
    },
}

/// A failure that maps to exit code 2.
struct UsageError(String);

impl<E: Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(UsageError(msg)) = configure_threads(cli.parallel) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json values serialize")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), UsageError> {
    let k = match flag {
        Some(k) => Some(k),
        None => match std::env::var(PARALLEL_ENV) {
            Ok(v) => Some(v.trim().parse().map_err(|_| {
                UsageError(format!(
                    "{PARALLEL_ENV}: expected a thread count, got '{v}'"
                ))
            })?),
            Err(_) => None,
        },
    };
    if let Some(k) = k {
        if k == 0 {
            return Err(UsageError("--parallel must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()?;
    }
    Ok(())
}

fn group(spec: &str) -> Result<GroupHandle, UsageError> {
    parse_group_spec(spec).map_err(|e| UsageError(format!("{e} in '{spec}'")))
}

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn class_text(h: &Subgroup) -> Option<usize> {
    match nilpotency_class(h) {
        NilpotencyClass::Class(c) => Some(c),
        NilpotencyClass::NotNilpotent => None,
    }
}

fn summary(h: &Subgroup) -> Value {
    json!({
        "order": h.order(),
        "abelian": h.is_abelian(),
        "exponent": exponent(h),
        "derived_length": derived_length(h),
        "nilpotency_class": class_text(h),
    })
}

fn validity_text(v: Validity) -> (String, Value) {
    match v {
        Validity::Valid => ("valid".into(), json!({"valid": true, "step": null})),
        Validity::Invalid(i) => (
            format!("invalid at step {i}"),
            json!({"valid": false, "step": i}),
        ),
    }
}

fn opt<T: Display>(v: Option<T>, none: &str) -> String {
    v.map_or(none.to_string(), |x| x.to_string())
}

fn run(cmd: Command) -> Result<Output, UsageError> {
    match cmd {
        Command::Construct { spec } => {
            let g = group(&spec)?;
            let full = Subgroup::full(&g);
            let derived: Vec<usize> = derived_series(&full).iter().map(Subgroup::order).collect();
            let lower: Vec<usize> = lower_central_series(&full).iter().map(Subgroup::order).collect();
            let s = summary(&full);
            let text = format!(
                "group: {}\norder: {}\nabelian: {}\nexponent: {}\nderived series: {:?}\nderived length: {}\nlower central series: {:?}\nnilpotency class: {}\n",
                g.descriptor(),
                g.order(),
                full.is_abelian(),
                exponent(&full),
                derived,
                opt(derived_length(&full), "none"),
                lower,
                opt(class_text(&full), "not nilpotent"),
            );
            let mut v = json!({"group": g.descriptor()});
            v.as_object_mut().unwrap().extend(s.as_object().unwrap().clone());
            v["derived_series"] = json!(derived);
            v["lower_central_series"] = json!(lower);
            Ok(Output { text, json: v, ok: true })
        }
        Command::Power { spec, m } => {
            let g = group(&spec)?;
            let p = power_subgroup(&Subgroup::full(&g), m);
            let text = format!(
                "G*{m} of {}: order {}, index {}, abelian {}, derived length {}\n",
                g.descriptor(),
                p.order(),
                g.order() / p.order(),
                p.is_abelian(),
                opt(derived_length(&p), "none"),
            );
            let mut v = json!({"group": g.descriptor(), "m": m, "order_g": g.order(), "index": g.order() / p.order()});
            v["power"] = summary(&p);
            Ok(Output { text, json: v, ok: true })
        }
        Command::LawCheck { spec, law, strategy } => {
            let g = group(&spec)?;
            let law = parse_law(&law).map_err(|e| UsageError(format!("{e} in law '{law}'")))?;
            let strategy: Strategy = strategy.parse()?;
            let r = satisfies(&Subgroup::full(&g), &law, strategy);
            let text = format!("{law} in {}: {r}\n", g.descriptor());
            let v = json!({"group": g.descriptor(), "law": law.to_string(), "result": r});
            Ok(Output {
                text,
                json: v,
                ok: r.verdict.holds(),
            })
        }
        Command::Detect { spec, law, m, n } => {
            let g = group(&spec)?;
            let law = parse_law(&law).map_err(|e| UsageError(format!("{e} in law '{law}'")))?;
            let r = detect_report(&g, &law, m, n);
            let mut text = format!(
                "{} in {} (order {}):\n  G*{m} (order {}): {}\n  G*{n} (order {}): {}\n  G: {}\n",
                r.law, r.group, r.order_g, r.order_m, r.in_m, r.order_n, r.in_n, r.in_g
            );
            if let Some(w) = &r.warning {
                text.push_str(&format!("warning: {w}\n"));
            }
            if r.is_counterexample() {
                text.push_str("the law holds in both power subgroups but not in G\n");
            }
            let v = serde_json::to_value(&r)?;
            Ok(Output { text, json: v, ok: true })
        }
        Command::Certify {
            presentation,
            certificate,
        } => {
            let pres = parse_presentation(&read(&presentation)?)
                .map_err(|e| UsageError(format!("{}: {e}", presentation.display())))?;
            let (target, cert) = parse_certificate(&read(&certificate)?, pres.alphabet())
                .map_err(|e| UsageError(format!("{}: {e}", certificate.display())))?;
            let verdict = check_certificate(&pres, &target, &cert);
            let (t, mut v) = validity_text(verdict);
            v["steps"] = json!(cert.steps.len());
            v["target"] = json!(pres.alphabet().format(&target));
            Ok(Output {
                text: format!("certificate for {}: {t}\n", pres.alphabet().format(&target)),
                json: v,
                ok: verdict.is_valid(),
            })
        }
        Command::TraceCheck { trace } => {
            let (pres, tr) =
                parse_trace(&read(&trace)?).map_err(|e| UsageError(format!("{}: {e}", trace.display())))?;
            let verdict = check_trace(&pres, &tr);
            let (t, mut v) = validity_text(verdict);
            v["steps"] = json!(tr.steps.len());
            v["start"] = json!(pres.alphabet().format(&tr.start));
            v["end"] = json!(pres.alphabet().format(&tr.end));
            Ok(Output {
                text: format!(
                    "trace {} -> {} ({} steps): {t}\n",
                    pres.alphabet().format(&tr.start),
                    pres.alphabet().format(&tr.end),
                    tr.steps.len()
                ),
                json: v,
                ok: verdict.is_valid(),
            })
        }
        Command::ItsAbelian { m, n } => {
            let r = its_abelian_pipeline(m, n)?;
            let mut text = format!("G_{{{m},{n}}}:\n");
            for s in &r.stages {
                text.push_str(&format!(
                    "  {}: {} ({})\n",
                    s.name,
                    if s.passed { "pass" } else { "fail" },
                    s.detail
                ));
            }
            Ok(Output {
                text,
                json: serde_json::to_value(&r)?,
                ok: r.passed(),
            })
        }
        Command::Search1458 => match search_counterexample_1458() {
            Ok(c) => Ok(Output {
                text: format!(
                    "found: {}\norder {}, derived length {}, |G*2| = {} (derived length {}), |G*3| = {} (derived length {})\n",
                    c.description,
                    c.group.order(),
                    c.derived_length,
                    c.power_2_order,
                    c.derived_length_2,
                    c.power_3_order,
                    c.derived_length_3
                ),
                json: json!({
                    "found": true,
                    "description": c.description,
                    "order": c.group.order(),
                    "derived_length": c.derived_length,
                    "power_2": {"order": c.power_2_order, "derived_length": c.derived_length_2},
                    "power_3": {"order": c.power_3_order, "derived_length": c.derived_length_3},
                }),
                ok: true,
            }),
            Err(e) => Ok(Output {
                text: format!("{e}\n"),
                json: json!({"found": false}),
                ok: false,
            }),
        },
        Command::TruncationWitness { m, n, bound } => match truncation_witness(m, n, bound) {
            Ok(w) => Ok(Output {
                text: format!(
                    "degree {}: a = {}, b = {}, group of order {}, abelian {}\n",
                    w.degree,
                    w.a,
                    w.b,
                    w.group.order(),
                    w.group.is_abelian()
                ),
                json: json!({
                    "found": true,
                    "degree": w.degree,
                    "a": w.a.to_string(),
                    "b": w.b.to_string(),
                    "order": w.group.order(),
                    "abelian": w.group.is_abelian(),
                }),
                ok: true,
            }),
            Err(e @ DetectError::SearchExhausted { .. }) => Ok(Output {
                text: format!("{e}\n"),
                json: json!({"found": false, "degree_bound": bound}),
                ok: false,
            }),
            Err(e) => Err(e.into()),
        },
        Command::VerifyPaper { only } => {
            let names: Vec<String> = match only {
                Some(v) => v.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                None => check_names().into_iter().map(String::from).collect(),
            };
            let selection: Vec<&str> = names.iter().map(String::as_str).collect();
            let rows = verify_paper(&selection)?;
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let mut text = String::new();
            for r in &rows {
                let status = if r.status == Status::Pass { "pass" } else { "FAIL" };
                text.push_str(&format!("{status}  {:width$}  {} ms\n", r.name, r.millis));
                if r.status == Status::Fail {
                    text.push_str(&format!("      expected: {}\n      actual:   {}\n", r.expected, r.actual));
                }
            }
            let passed = rows.iter().filter(|r| r.status == Status::Pass).count();
            text.push_str(&format!("{passed}/{} checks passed\n", rows.len()));
            Ok(Output {
                text,
                json: serde_json::to_value(&rows)?,
                ok: passed == rows.len(),
            })
        }
    }
}
