//! Command-line front end for the `extclosed` library.
//!
//! Exit codes: 0 when everything checked holds, 1 when a failure or
//! counterexample is found, 2 for input errors, 3 when a resource bound
//! is exceeded.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use extclosed::embedding::{self, ClosureKind, EmbeddingReport};
use extclosed::group::{is_prime, prime_divisors};
use extclosed::verify::{self, Statement, VerificationReport};
use extclosed::{catalog, structure, subgroup, GroupError, Limits, PermGroup, Permutation};

pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(name = "extclosed", version, about = "Subgroup-embedding predicates and statement checks on permutation groups")]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
    /// Emit one JSON record per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest group order whose elements may be enumerated.
    #[arg(long, global = true, env = "EXTCLOSED_ELEMENT_BOUND")]
    pub element_bound: Option<u64>,
    /// Largest group order whose subgroup lattice may be built.
    #[arg(long, global = true, env = "EXTCLOSED_SUBGROUP_BOUND")]
    pub subgroup_bound: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Order, classes and structural flags of a group.
    Info {
        /// `catalog:NAME` or `gens:(1,2,3);(1,2)`.
        #[arg(long)]
        group: String,
        /// Report p-group flags for this prime only.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Evaluate one embedding predicate.
    Check {
        #[arg(long)]
        group: String,
        /// `gens:...`, `sylow:p` or `center-of-sylow:p`.
        #[arg(long)]
        subgroup: String,
        #[arg(long, value_enum)]
        property: Property,
        /// The overgroup M: a subgroup spec, `normalizer` (default) or `group`.
        #[arg(long)]
        overgroup: Option<String>,
        /// Element for `isolated`, in cycle notation.
        #[arg(long)]
        element: Option<String>,
        /// Quantify the extreme-closure condition over all of G.
        #[arg(long)]
        all_g: bool,
    },
    /// Run one statement verifier on a group.
    Verify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        statement: String,
        #[arg(long)]
        prime: Option<u64>,
        /// Class representative for `fischer`; all classes when omitted.
        #[arg(long)]
        element: Option<String>,
    },
    /// Run statements over a corpus of groups.
    Sweep {
        /// `catalog:*`, `catalog:A5,S4`, `subgroups-of:S5`, joined with `+`.
        #[arg(long)]
        corpus: String,
        #[arg(long, value_delimiter = ',')]
        statements: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Reproduce the worked examples.
    Repro,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    WeaklyClosed,
    StronglyClosed,
    ExtremelyClosed,
    Pronormal,
    Abnormal,
    Isolated,
    Special,
    Ne,
    WTriple,
    Gamma,
    Classify,
}

impl Property {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

impl Invocation {
    /// Command-line arguments (without the program name) that parse back to `self`.
    pub fn render(&self) -> Vec<String> {
        let mut out = Vec::new();
        let opt = |out: &mut Vec<String>, flag: &str, v: &Option<String>| {
            if let Some(v) = v {
                out.push(format!("--{flag}={v}"));
            }
        };
        match &self.command {
            Command::Info { group, prime } => {
                out.push("info".into());
                out.push(format!("--group={group}"));
                opt(&mut out, "prime", &prime.map(|p| p.to_string()));
            }
            Command::Check {
                group,
                subgroup,
                property,
                overgroup,
                element,
                all_g,
            } => {
                out.push("check".into());
                out.push(format!("--group={group}"));
                out.push(format!("--subgroup={subgroup}"));
                out.push(format!("--property={}", property.name()));
                opt(&mut out, "overgroup", overgroup);
                opt(&mut out, "element", element);
                if *all_g {
                    out.push("--all-g".into());
                }
            }
            Command::Verify {
                group,
                statement,
                prime,
                element,
            } => {
                out.push("verify".into());
                opt(&mut out, "group", group);
                out.push(format!("--statement={statement}"));
                opt(&mut out, "prime", &prime.map(|p| p.to_string()));
                opt(&mut out, "element", element);
            }
            Command::Sweep {
                corpus,
                statements,
                primes,
            } => {
                out.push("sweep".into());
                out.push(format!("--corpus={corpus}"));
                if !statements.is_empty() {
                    out.push(format!("--statements={}", statements.join(",")));
                }
                if !primes.is_empty() {
                    let p: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
                    out.push(format!("--primes={}", p.join(",")));
                }
            }
            Command::Repro => out.push("repro".into()),
        }
        if self.json {
            out.push("--json".into());
        }
        opt(&mut out, "element-bound", &self.element_bound.map(|b| b.to_string()));
        opt(&mut out, "subgroup-bound", &self.subgroup_bound.map(|b| b.to_string()));
        out
    }

    pub fn parse_args<I, S>(args: I) -> Result<Invocation, clap::Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<std::ffi::OsString> + Clone,
    {
        Invocation::try_parse_from(std::iter::once("extclosed".into()).chain(args.into_iter().map(Into::into)))
    }

    pub fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            element_bound: self.element_bound.unwrap_or(d.element_bound),
            subgroup_bound: self.subgroup_bound.unwrap_or(d.subgroup_bound),
        }
    }
}

fn input(msg: impl Into<String>) -> GroupError {
    GroupError::Parse(msg.into())
}

/// Resolve `catalog:NAME` or `gens:g1;g2;...` to a named group.
pub fn resolve_group(spec: &str, limits: &Limits) -> Result<(String, PermGroup), GroupError> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok((name.to_string(), catalog::construct_with(name, limits)?));
    }
    if let Some(list) = spec.strip_prefix("gens:") {
        let parts: Vec<&str> = list.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
        let parsed = parts
            .iter()
            .map(|s| Permutation::parse_cycles(s, None))
            .collect::<Result<Vec<_>, _>>()?;
        let degree = parsed.iter().map(|p| p.degree()).max().unwrap_or(1);
        let perms = parts
            .iter()
            .map(|s| Permutation::parse_cycles(s, Some(degree)))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok((spec.to_string(), PermGroup::from_generators(&perms, degree)?));
    }
    Err(input(format!("unrecognized group spec '{spec}' (expected catalog:NAME or gens:...)")))
}

fn parse_prime(text: &str, spec: &str) -> Result<u64, GroupError> {
    let p: u64 = text
        .parse()
        .map_err(|_| input(format!("'{text}' in '{spec}' is not a number")))?;
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    Ok(p)
}

/// Resolve a subgroup spec relative to `g`.
pub fn resolve_subgroup(spec: &str, g: &PermGroup, limits: &Limits) -> Result<PermGroup, GroupError> {
    if let Some(list) = spec.strip_prefix("gens:") {
        let perms = list
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Permutation::parse_cycles(s, Some(g.degree())))
            .collect::<Result<Vec<_>, _>>()?;
        let h = PermGroup::from_generators(&perms, g.degree())?;
        if !h.is_subgroup_of(g) {
            return Err(GroupError::NotContained(format!("'{spec}' is not a subgroup of the group")));
        }
        return Ok(h);
    }
    if let Some(p) = spec.strip_prefix("sylow:") {
        return structure::sylow_subgroup(g, parse_prime(p, spec)?, limits);
    }
    if let Some(p) = spec.strip_prefix("center-of-sylow:") {
        let s = structure::sylow_subgroup(g, parse_prime(p, spec)?, limits)?;
        return subgroup::center(&s, limits);
    }
    Err(input(format!(
        "unrecognized subgroup spec '{spec}' (expected gens:..., sylow:p or center-of-sylow:p)"
    )))
}

fn exit_for(e: &GroupError) -> u8 {
    if e.is_resource() {
        EXIT_RESOURCE
    } else {
        EXIT_INPUT
    }
}

/// Execute an invocation, writing reports to `out` and diagnostics to `err`.
pub fn run(inv: &Invocation, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(inv, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e)
        }
    }
}

fn emit(out: &mut dyn Write, json: bool, value: Value, text: String) -> Result<(), GroupError> {
    let line = if json { value.to_string() } else { text };
    writeln!(out, "{line}").map_err(|e| input(format!("cannot write output: {e}")))
}

fn emit_reports(out: &mut dyn Write, json: bool, reports: &[VerificationReport]) -> Result<u8, GroupError> {
    for r in reports {
        emit(out, json, r.to_json(), r.to_string())?;
    }
    Ok(if reports.iter().any(|r| r.failed()) {
        EXIT_FAILURE
    } else {
        EXIT_HOLDS
    })
}

fn dispatch(inv: &Invocation, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, GroupError> {
    let limits = inv.limits();
    match &inv.command {
        Command::Info { group, prime } => info(out, inv.json, group, *prime, &limits),
        Command::Check {
            group,
            subgroup,
            property,
            overgroup,
            element,
            all_g,
        } => check(out, inv.json, group, subgroup, *property, overgroup.as_deref(), element.as_deref(), *all_g, &limits),
        Command::Verify {
            group,
            statement,
            prime,
            element,
        } => {
            let st: Statement = statement.parse()?;
            let reports = if st == Statement::Examples {
                verify::reproduce_examples(&limits)?
            } else {
                let spec = group
                    .as_deref()
                    .ok_or_else(|| input(format!("statement {st} needs --group")))?;
                let (name, g) = resolve_group(spec, &limits)?;
                match (st, element) {
                    (Statement::Fischer, Some(x)) => {
                        let x = Permutation::parse_cycles(x, Some(g.degree()))?;
                        vec![verify::verify_fischer(&name, &g, &x, &limits)?]
                    }
                    _ => st.run(&name, &g, *prime, &limits)?,
                }
            };
            emit_reports(out, inv.json, &reports)
        }
        Command::Sweep {
            corpus,
            statements,
            primes,
        } => {
            let sts = statements
                .iter()
                .map(|s| s.parse::<Statement>())
                .collect::<Result<Vec<_>, _>>()?;
            if sts.is_empty() {
                return Err(input("sweep needs --statements"));
            }
            let summary = verify::sweep(corpus, &sts, primes, &limits)?;
            let code = emit_reports(out, inv.json, &summary.reports)?;
            let _ = writeln!(
                err,
                "{} reports: {} hold, {} vacuous, {} fail",
                summary.reports.len(),
                summary.holding,
                summary.vacuous,
                summary.failures
            );
            Ok(code)
        }
        Command::Repro => emit_reports(out, inv.json, &verify::reproduce_examples(&limits)?),
    }
}

fn info(out: &mut dyn Write, json: bool, spec: &str, prime: Option<u64>, limits: &Limits) -> Result<u8, GroupError> {
    let (name, g) = resolve_group(spec, limits)?;
    let primes = match prime {
        Some(p) => vec![p],
        None => prime_divisors(g.order()),
    };
    let mut flags = serde_json::Map::new();
    for p in &primes {
        flags.insert(p.to_string(), serde_json::to_value(g.classify_flags(*p)?).expect("flags serialize"));
    }
    let classes = subgroup::conjugacy_classes(&g, limits)?;
    let solvable = structure::is_solvable(&g)?;
    let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.size).collect();
    let value = json!({
        "group": name,
        "degree": g.degree(),
        "order": g.order(),
        "generators": gens,
        "classes": classes.len(),
        "class_sizes": sizes,
        "solvable": solvable,
        "flags": flags,
    });
    let mut text = format!(
        "{name}: degree {}, order {}, {} conjugacy classes, {}",
        g.degree(),
        g.order(),
        classes.len(),
        if solvable { "solvable" } else { "not solvable" }
    );
    text.push_str(&format!("\n  generators: {}", gens.join(", ")));
    text.push_str(&format!(
        "\n  class sizes: {}",
        sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
    ));
    for (p, f) in &flags {
        text.push_str(&format!("\n  p = {p}: {f}"));
    }
    emit(out, json, value, text)?;
    Ok(EXIT_HOLDS)
}

fn triple_report(predicate: &str, holds: bool, witness: Option<Permutation>, start: Instant) -> EmbeddingReport {
    EmbeddingReport {
        predicate: predicate.to_string(),
        holds,
        witness_element: witness,
        witness_subgroup: None,
        elapsed: start.elapsed(),
    }
}

#[allow(clippy::too_many_arguments)]
fn check(
    out: &mut dyn Write,
    json: bool,
    group: &str,
    sub: &str,
    property: Property,
    overgroup: Option<&str>,
    element: Option<&str>,
    all_g: bool,
    limits: &Limits,
) -> Result<u8, GroupError> {
    let (name, g) = resolve_group(group, limits)?;
    let h = resolve_subgroup(sub, &g, limits)?;
    let m = match overgroup {
        None | Some("normalizer") => subgroup::normalizer(&g, &h, limits)?,
        Some("group") => g.clone(),
        Some(spec) => resolve_subgroup(spec, &g, limits)?,
    };
    let start = Instant::now();
    let report = match property {
        Property::WeaklyClosed => embedding::is_closed(ClosureKind::Weak, &h, &m, &g, all_g, limits)?,
        Property::StronglyClosed => embedding::is_closed(ClosureKind::Strong, &h, &m, &g, all_g, limits)?,
        Property::ExtremelyClosed => embedding::is_closed(ClosureKind::Extreme, &h, &m, &g, all_g, limits)?,
        Property::Pronormal => embedding::is_pronormal(&h, &g, limits)?,
        Property::Abnormal => embedding::is_abnormal(&h, &g, limits)?,
        Property::Isolated => {
            let x = element.ok_or_else(|| input("property isolated needs --element"))?;
            let x = Permutation::parse_cycles(x, Some(g.degree()))?;
            embedding::is_isolated(&x, &h, &g, limits)?
        }
        Property::Special | Property::Ne | Property::WTriple | Property::Gamma | Property::Classify => {
            let t = embedding::classify_triple(&g, &m, &h, limits)?;
            if property == Property::Classify {
                let mut v = t.to_json();
                v["group"] = json!(name);
                v["subgroup_order"] = json!(h.order());
                v["overgroup_order"] = json!(m.order());
                let text = format!(
                    "{name}: |H| = {}, |M| = {}; H normal in M: {}, special: {}, NE: {}, W-triple: {}, γ-triple: {}",
                    h.order(),
                    m.order(),
                    t.h_normal_in_m,
                    t.special,
                    t.ne,
                    t.w_triple,
                    t.gamma
                );
                emit(out, json, v, text)?;
                return Ok(EXIT_HOLDS);
            }
            match property {
                Property::Special => triple_report("special", t.special, None, start),
                Property::Ne => triple_report("ne", t.ne, None, start),
                Property::WTriple => triple_report("w-triple", t.w_triple, t.w_witness, start),
                _ => triple_report("gamma", t.gamma, t.gamma_witness, start),
            }
        }
    };
    let mut v = report.to_json();
    v["group"] = json!(name);
    v["subgroup_order"] = json!(h.order());
    v["overgroup_order"] = json!(m.order());
    let text = format!("{name}: |H| = {}, |M| = {}; {report}", h.order(), m.order());
    emit(out, json, v, text)?;
    Ok(if report.holds { EXIT_HOLDS } else { EXIT_FAILURE })
}
