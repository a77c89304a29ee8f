use std::fmt::Write as _;
use std::io::Read as _;
use std::path::Path;

use bnkit::control::check_strategy;
use bnkit::dynamics::{attractors_with_limits, fixed_points_with_limits};
use bnkit::expcheck::{run_paper_suite, search_counterexample, CounterExample, PropertyId, SuiteReport};
use bnkit::reduction::{is_eliminable, strictly_preserves_mts_with_limits};
use bnkit::trapspaces::{minimal_trap_spaces_with_limits, percolation_trace, trap_spaces_with_limits};
use bnkit::{
    eliminate, find_control_strategies, interaction_graph, is_autoregulated, is_linear, is_mediator, parse_network,
    parse_subspace, serialize_network, BooleanNetwork, Criterion, MtsPreservation, SearchOptions, State, Subspace,
    UpdateMode, Verdict, Witness,
};
use serde::Serialize;

use crate::{Failure, Format, Global, SCHEMA_VERSION};

pub struct Output {
    pub body: String,
    pub status: u8,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    report: &'a T,
}

fn emit<T: Serialize>(g: &Global, command: &str, report: &T, text: impl FnOnce() -> String, status: u8) -> Output {
    let body = match g.format {
        Format::Json => {
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                command,
                report,
            };
            let mut s = serde_json::to_string_pretty(&envelope).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(),
    };
    Output { body, status }
}

fn load(path: &Path) -> Result<BooleanNetwork, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?
    };
    Ok(parse_network(&text)?)
}

fn parse<T: std::str::FromStr<Err = bnkit::BnError>>(text: &str) -> Result<T, Failure> {
    text.parse().map_err(|e: bnkit::BnError| Failure::Usage(e.to_string()))
}

fn subspace(text: &str, net: &BooleanNetwork) -> Result<Subspace, Failure> {
    parse_subspace(text, net).map_err(|e| Failure::Usage(format!("subspace `{text}`: {e}")))
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| format!("{}\n", x.to_string())).collect()
}

#[derive(Serialize)]
struct ComponentInfo {
    name: String,
    rule: String,
    regulators: Vec<String>,
    targets: Vec<String>,
    autoregulated: bool,
    eliminable: bool,
    mediator: bool,
    linear: bool,
}

#[derive(Serialize)]
struct EdgeInfo {
    source: String,
    target: String,
    sign: &'static str,
}

#[derive(Serialize)]
struct InfoReport {
    arity: usize,
    components: Vec<ComponentInfo>,
    edges: Vec<EdgeInfo>,
}

pub fn info(g: &Global, input: &Path) -> Result<Output, Failure> {
    let net = load(input)?;
    let graph = interaction_graph(&net)?;
    let names = net.names();
    let named = |v: Vec<usize>| v.into_iter().map(|i| names[i].clone()).collect::<Vec<_>>();
    let components = (0..net.arity())
        .map(|i| {
            let eliminable = is_eliminable(&net, i)?;
            Ok(ComponentInfo {
                name: names[i].clone(),
                rule: net.rule(i).display(names).to_string(),
                regulators: named(graph.regulators(i)),
                targets: named(graph.targets(i)),
                autoregulated: is_autoregulated(&net, i)?,
                eliminable,
                mediator: eliminable && is_mediator(&net, i)?,
                linear: is_linear(&net, i)?,
            })
        })
        .collect::<bnkit::Result<Vec<_>>>()?;
    let edges = graph
        .edges()
        .into_iter()
        .map(|(s, t, sign)| EdgeInfo {
            source: names[s].clone(),
            target: names[t].clone(),
            sign: sign.symbol(),
        })
        .collect();
    let report = InfoReport {
        arity: net.arity(),
        components,
        edges,
    };
    let text = || {
        let mut s = format!("{} components\n", report.arity);
        for c in &report.components {
            let mut tags = Vec::new();
            if c.autoregulated {
                tags.push("autoregulated");
            }
            if c.mediator {
                tags.push("mediator");
            }
            if c.linear {
                tags.push("linear");
            }
            let tags = if tags.is_empty() {
                String::new()
            } else {
                format!("  [{}]", tags.join(", "))
            };
            let _ = writeln!(s, "{}, {}{tags}", c.name, c.rule);
        }
        s.push_str("edges:\n");
        for e in &report.edges {
            let _ = writeln!(s, "  {} -> {} ({})", e.source, e.target, e.sign);
        }
        s
    };
    Ok(emit(g, "info", &report, text, 0))
}

#[derive(Serialize)]
struct AttractorReport {
    mode: UpdateMode,
    fixed_points: Vec<State>,
    attractors: Vec<Vec<String>>,
}

pub fn attractors(g: &Global, input: &Path, mode: &str) -> Result<Output, Failure> {
    let net = load(input)?;
    let mode: UpdateMode = parse(mode)?;
    let limits = g.limits();
    let found = attractors_with_limits(&net, mode, &limits)?;
    let report = AttractorReport {
        mode,
        fixed_points: fixed_points_with_limits(&net, &limits)?,
        attractors: found.iter().map(|a| a.labels()).collect(),
    };
    let text = || lines(&found);
    Ok(emit(g, "attractors", &report, text, 0))
}

#[derive(Serialize)]
struct TrapSpaceReport {
    minimal: bool,
    trap_spaces: Vec<Subspace>,
}

pub fn trapspaces(g: &Global, input: &Path, minimal: bool) -> Result<Output, Failure> {
    let net = load(input)?;
    let limits = g.limits();
    let trap_spaces = if minimal {
        minimal_trap_spaces_with_limits(&net, &limits)?
    } else {
        trap_spaces_with_limits(&net, &limits)?
    };
    let report = TrapSpaceReport { minimal, trap_spaces };
    let text = || lines(&report.trap_spaces);
    Ok(emit(g, "trapspaces", &report, text, 0))
}

#[derive(Serialize)]
struct PercolationReport {
    seed: Subspace,
    iterates: Vec<Subspace>,
    /// Absent when the iterates cycle.
    fixpoint: Option<Subspace>,
    cycle: Vec<Subspace>,
}

pub fn percolate(g: &Global, input: &Path, seed: Option<&str>) -> Result<Output, Failure> {
    let net = load(input)?;
    let seed = match seed {
        Some(s) => subspace(s, &net)?,
        None => Subspace::full(net.arity()),
    };
    let trace = percolation_trace(&net, &seed)?;
    let fixpoint = trace.fixpoint();
    let report = PercolationReport {
        seed,
        iterates: trace.iterates.clone(),
        fixpoint,
        cycle: if fixpoint.is_some() {
            Vec::new()
        } else {
            trace.cycle().to_vec()
        },
    };
    let text = || {
        let mut s = lines(&report.iterates);
        match report.fixpoint {
            Some(t) => {
                let _ = writeln!(s, "fixpoint {t}");
            }
            None => {
                let _ = writeln!(s, "no fixpoint; cycle of length {}", report.cycle.len());
            }
        }
        s
    };
    Ok(emit(g, "percolate", &report, text, 0))
}

#[derive(Serialize)]
struct ReduceReport {
    eliminated: String,
    network: String,
    mediator: bool,
    linear: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mts: Option<MtsPreservation>,
}

pub fn reduce(g: &Global, input: &Path, key: &str, check_mediator: bool, check_mts: bool) -> Result<Output, Failure> {
    let net = load(input)?;
    let e = net
        .resolve_component(key)
        .map_err(|err| Failure::Usage(err.to_string()))?;
    let reduced = eliminate(&net, e)?;
    let report = ReduceReport {
        eliminated: net.name(e).to_string(),
        network: serialize_network(&reduced),
        mediator: is_mediator(&net, e)?,
        linear: is_linear(&net, e)?,
        mts: check_mts
            .then(|| strictly_preserves_mts_with_limits(&net, e, &g.limits()))
            .transpose()?,
    };
    let text = || {
        let mut s = format!("{}\n", report.network);
        if check_mediator {
            let not = if report.mediator { "" } else { "not " };
            let _ = writeln!(s, "# {} is {not}a mediator", report.eliminated);
        }
        if let Some(p) = &report.mts {
            let _ = writeln!(
                s,
                "# minimal trap spaces {}strictly preserved",
                if p.preserved { "" } else { "not " }
            );
            for m in &p.matches {
                match &m.original {
                    Some(o) => {
                        let _ = writeln!(s, "#   {} <- {o}", m.reduced);
                    }
                    None => {
                        let _ = writeln!(s, "#   {} has no matching original", m.reduced);
                    }
                }
            }
        }
        s
    };
    Ok(emit(g, "reduce", &report, text, 0))
}

pub struct ControlArgs<'a> {
    pub phenotype: &'a str,
    pub criterion: &'a str,
    pub max_fixed: Option<usize>,
    pub minimal: bool,
    pub strategy: Option<&'a str>,
}

#[derive(Serialize)]
struct StrategyReport {
    phenotype: Subspace,
    strategy: Subspace,
    overlaps_phenotype: bool,
    verdict: Verdict,
}

#[derive(Serialize)]
struct SearchReport {
    phenotype: Subspace,
    criterion: Criterion,
    max_fixed: Option<usize>,
    minimal: bool,
    strategies: Vec<Subspace>,
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Attractors { count, outside } => match outside {
            Some(a) => format!("{count} attractors; {a} leaves the phenotype"),
            None => format!("{count} attractors, all inside the phenotype"),
        },
        Witness::MinimalTrapSpaces { count, outside } => match outside {
            Some(t) => format!("{count} minimal trap spaces; {t} leaves the phenotype"),
            None => format!("{count} minimal trap spaces, all inside the phenotype"),
        },
        Witness::Propagation { result, .. } => format!("propagation reaches {result}"),
    }
}

pub fn control(g: &Global, input: &Path, args: ControlArgs<'_>) -> Result<Output, Failure> {
    let net = load(input)?;
    let phenotype = subspace(args.phenotype, &net)?;
    let criterion: Criterion = parse(args.criterion)?;
    if phenotype.fixed_count() == 0 {
        eprintln!("warning: phenotype {phenotype} fixes no component, so every strategy passes");
    }
    let limits = g.limits();
    if let Some(s) = args.strategy {
        let strategy = subspace(s, &net)?;
        let verdict = check_strategy(&net, &strategy, &phenotype, criterion, &limits)?;
        let status = if verdict.holds { 0 } else { 1 };
        let report = StrategyReport {
            phenotype,
            strategy,
            overlaps_phenotype: strategy.overlaps_fixed(&phenotype),
            verdict,
        };
        let text = || {
            format!(
                "{} is {}a {} control strategy for {}: {}\n",
                report.strategy,
                if report.verdict.holds { "" } else { "not " },
                criterion.label(),
                report.phenotype,
                witness_text(&report.verdict.witness)
            )
        };
        return Ok(emit(g, "control", &report, text, status));
    }
    let options = SearchOptions {
        max_fixed: args.max_fixed.unwrap_or(usize::MAX),
        minimal: args.minimal,
        limits,
    };
    let strategies = find_control_strategies(&net, &phenotype, criterion, &options)?;
    let report = SearchReport {
        phenotype,
        criterion,
        max_fixed: args.max_fixed,
        minimal: args.minimal,
        strategies,
    };
    let text = || {
        if report.strategies.is_empty() {
            "no control strategies\n".to_string()
        } else {
            lines(&report.strategies)
        }
    };
    Ok(emit(g, "control", &report, text, 0))
}

pub fn verify_paper(g: &Global) -> Result<Output, Failure> {
    let report: SuiteReport = run_paper_suite()?;
    let text = || {
        let mut s = String::new();
        for c in &report.cases {
            let _ = writeln!(
                s,
                "{} {} ({})",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.location
            );
            for o in c.checks.iter().filter(|o| !o.passed) {
                let _ = writeln!(s, "    {}: expected {}, computed {}", o.check, o.expected, o.computed);
            }
        }
        for c in &report.cells {
            let by = if c.refuted_by.is_empty() {
                "NOT COVERED".to_string()
            } else {
                c.refuted_by.join(", ")
            };
            let _ = writeln!(s, "{} refuted by {by}", c.cell);
        }
        let _ = writeln!(
            s,
            "{}",
            if report.passed {
                "all cases passed"
            } else {
                "suite FAILED"
            }
        );
        s
    };
    let status = if report.passed { 0 } else { 1 };
    Ok(emit(g, "verify-paper", &report, text, status))
}

#[derive(Serialize)]
struct CounterExampleReport {
    property: PropertyId,
    arity: usize,
    samples: u64,
    seed: u64,
    witness: Option<CounterExample>,
}

pub fn search(
    g: &Global,
    property: &str,
    arity: usize,
    samples: u64,
    seed: u64,
    jobs: usize,
) -> Result<Output, Failure> {
    let property: PropertyId = parse(property)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start {jobs} workers: {e}")))?;
    let witness = pool.install(|| search_counterexample(property, arity, samples, seed))?;
    // A witness against a property that always holds is a regression.
    let status = if witness.is_some() && property.always_holds() == Some(true) {
        1
    } else {
        0
    };
    let report = CounterExampleReport {
        property,
        arity,
        samples,
        seed,
        witness,
    };
    let text = || match &report.witness {
        None => format!(
            "no counterexample to {} in {} samples\n",
            report.property, report.samples
        ),
        Some(w) => {
            let mut s = format!(
                "counterexample to {} at sample {}\n{}\neliminate {}, phenotype {}\n",
                w.property,
                w.sample,
                w.network,
                w.eliminated + 1,
                w.phenotype
            );
            for line in &w.evidence {
                let _ = writeln!(s, "  {line}");
            }
            s
        }
    };
    Ok(emit(g, "search", &report, text, status))
}
