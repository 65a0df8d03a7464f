//! `duality-lab`: batch front end over the duality engine.
//!
//! Exit codes: 0 verified/success, 1 refuted/negative, 2 input error,
//! 3 inconclusive at the bound.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use duality_core::{
    antichain_split, build_duality, duality_from_antichain, duality_spec, enumerate_digraphs,
    enumeration_counts, exponential, find_hom, gap_witness, gaps, is_lattice, product,
    r_of_transversal, transversals, AntichainDuality, Digraph, DigraphBackend, DualityStatus,
    EngineError, FiniteLattice, LatticeBackend, OrderBackend, Transversal, DEFAULT_ENUMERATION_CAP,
    DEFAULT_EXPONENTIAL_CAP,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "duality-lab",
    version,
    about = "Finite homomorphism dualities over explicit lattices and the digraph order"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Universe size bound for digraph-backend checks.
    #[arg(long, global = true, default_value_t = 4)]
    bound: usize,
    /// Admit the degenerate dualities with an empty side.
    #[arg(long, global = true)]
    allow_degenerate: bool,
    /// Vertex cap for constructed exponential digraphs.
    #[arg(long, global = true, default_value_t = DEFAULT_EXPONENTIAL_CAP)]
    cap_exponential: usize,
    /// Vertex cap for digraph enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap_enumeration: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a lattice file.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Duality-theoretic operations over a selected backend.
    Dual {
        #[command(subcommand)]
        command: DualCommand,
    },
    /// Digraph-level operations.
    Digraph {
        #[command(subcommand)]
        command: DigraphCommand,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Predicate report: lattice, distributive, Heyting, decompositions,
    /// connected elements.
    Report { file: PathBuf },
}

#[derive(Args)]
struct BackendSelect {
    /// Use the digraph backend.
    #[arg(long)]
    digraph: bool,
    /// Use the lattice backend loaded from this file.
    #[arg(long, value_name = "FILE")]
    lattice: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DualCommand {
    /// Check a finite duality (A, B) at the bound.
    Check {
        #[command(flatten)]
        select: BackendSelect,
        /// Comma-separated left antichain.
        #[arg(long)]
        left: String,
        /// Comma-separated right antichain.
        #[arg(long)]
        right: String,
    },
    /// Build the duality determined by a left antichain.
    Build {
        #[command(flatten)]
        select: BackendSelect,
        #[arg(long)]
        left: String,
    },
    /// List the transversals of a left antichain with their right
    /// elements.
    Transversals {
        #[command(flatten)]
        select: BackendSelect,
        #[arg(long)]
        left: String,
    },
    /// List all gaps of an exhaustive lattice with duality-pair witnesses.
    Gaps {
        #[command(flatten)]
        select: BackendSelect,
    },
    /// Split a finite maximal antichain and reconstruct its duality.
    Antichain {
        #[command(flatten)]
        select: BackendSelect,
        /// Comma-separated antichain elements.
        #[arg(long)]
        elements: String,
    },
}

#[derive(Subcommand)]
enum DigraphCommand {
    /// Compute the core of a digraph.
    Core { spec: String },
    /// Search for a homomorphism between two digraphs.
    Hom { source: String, target: String },
    /// Enumerate isomorphism classes up to a vertex count.
    Enumerate {
        #[arg(long)]
        max: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Categorical product of two digraphs.
    Product { a: String, b: String },
    /// Exponential digraph (functions from the second into the first).
    Exp { c: String, b: String },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    check_thread_env()?;
    match &cli.command {
        Command::Lattice {
            command: LatticeCommand::Report { file },
        } => lattice_report(&cli, file),
        Command::Dual { command } => dual_command(&cli, command),
        Command::Digraph { command } => digraph_command(&cli, command),
    }
}

/// Workers are capped by DUALITY_LAB_THREADS; every sweep currently runs
/// on one worker, so the variable is validated and otherwise inert.
fn check_thread_env() -> Result<(), Failure> {
    match std::env::var("DUALITY_LAB_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(()),
            _ => Err(input_error(format!(
                "DUALITY_LAB_THREADS must be a positive integer, got `{raw}`"
            ))),
        },
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<FiniteLattice, Failure> {
    let text = read_file(path)?;
    let poset = duality_core::io::poset_from_json_str(&text)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    FiniteLattice::try_from_poset(poset)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn lattice_report(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let text = read_file(file)?;
    let poset = duality_core::io::poset_from_json_str(&text)
        .map_err(|e| input_error(format!("{}: {e}", file.display())))?;
    if cli.output == Output::Dot {
        print!("{}", poset.to_hasse_dot());
        return Ok(EXIT_OK);
    }
    let lattice_check = is_lattice(&poset);
    let witness_labels = |w: &Option<Vec<usize>>| -> Vec<String> {
        w.as_ref()
            .map(|v| v.iter().map(|&i| poset.label(i).to_string()).collect())
            .unwrap_or_default()
    };
    if !lattice_check.holds {
        let w = witness_labels(&lattice_check.witness);
        match cli.output {
            Output::Json => println!("{}", json!({ "lattice": false, "witness": w })),
            _ => println!("lattice ✗ (witness {})", w.join(", ")),
        }
        return Ok(EXIT_OK);
    }
    let lattice = FiniteLattice::try_from_poset(poset).expect("checked");
    let distributive = lattice.is_distributive();
    let heyting = lattice.is_heyting();
    let decompositions = lattice.has_connected_decompositions();
    let connected: Vec<String> = lattice
        .connected_elements()
        .members
        .iter()
        .map(|&i| lattice.label(i).to_string())
        .collect();
    let witness_labels = |w: &Option<Vec<usize>>| -> Vec<String> {
        w.as_ref()
            .map(|v| v.iter().map(|&i| lattice.label(i).to_string()).collect())
            .unwrap_or_default()
    };
    match cli.output {
        Output::Json => println!(
            "{}",
            json!({
                "lattice": true,
                "distributive": { "holds": distributive.holds, "witness": witness_labels(&distributive.witness) },
                "heyting": heyting,
                "decompositions": { "holds": decompositions.holds, "witness": witness_labels(&decompositions.witness) },
                "connected": connected,
            })
        ),
        _ => {
            let mark = |b: bool| if b { "✓" } else { "✗" };
            let mut line = String::from("lattice ✓");
            line.push_str(&format!(" distributive {}", mark(distributive.holds)));
            if !distributive.holds {
                line.push_str(&format!(
                    " (witness {})",
                    witness_labels(&distributive.witness).join(", ")
                ));
            }
            line.push_str(&format!(" heyting {}", mark(heyting)));
            line.push_str(&format!(" decompositions {}", mark(decompositions.holds)));
            if !decompositions.holds {
                line.push_str(&format!(
                    " (witness {})",
                    witness_labels(&decompositions.witness).join(", ")
                ));
            }
            line.push_str(&format!(" Cn = {{{}}}", connected.join(",")));
            println!("{line}");
        }
    }
    Ok(EXIT_OK)
}

enum Backend {
    Lattice(LatticeBackend),
    Digraph(DigraphBackend),
}

fn make_backend(cli: &Cli, select: &BackendSelect) -> Result<Backend, Failure> {
    match (&select.lattice, select.digraph) {
        (Some(path), false) => Ok(Backend::Lattice(LatticeBackend::new(load_lattice(path)?))),
        (None, true) => {
            if cli.bound > cli.cap_enumeration {
                return Err(input_error(format!(
                    "bound {} exceeds the enumeration cap {}",
                    cli.bound, cli.cap_enumeration
                )));
            }
            DigraphBackend::with_enumeration_cap(cli.bound, cli.cap_enumeration)
                .map(Backend::Digraph)
                .map_err(|e| input_error(e.to_string()))
        }
        _ => Err(input_error(
            "select exactly one backend: --digraph or --lattice FILE",
        )),
    }
}

fn split_specs(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect()
}

fn parse_lattice_elems(bk: &LatticeBackend, specs: &str) -> Result<Vec<usize>, Failure> {
    split_specs(specs)
        .iter()
        .map(|label| {
            bk.lattice()
                .index_of(label)
                .ok_or_else(|| input_error(format!("unknown lattice element `{label}`")))
        })
        .collect()
}

fn parse_digraph_spec(spec: &str) -> Result<Digraph, Failure> {
    let builtin = |kind: &str, arg: &str| -> Result<Digraph, Failure> {
        let k: usize = arg
            .parse()
            .map_err(|_| input_error(format!("bad generator parameter in `{spec}`")))?;
        match kind {
            "path" => Ok(Digraph::path(k)),
            "tt" => Digraph::transitive_tournament(k).map_err(|e| input_error(e.to_string())),
            "cycle" => Digraph::cycle(k).map_err(|e| input_error(e.to_string())),
            _ => unreachable!(),
        }
    };
    if let Some((kind, arg)) = spec.split_once(':') {
        if matches!(kind, "path" | "tt" | "cycle") {
            return builtin(kind, arg);
        }
    }
    match spec {
        "empty" => return Ok(Digraph::empty()),
        "loop" => return Ok(Digraph::looped_vertex()),
        _ => {}
    }
    let text = read_file(Path::new(spec))?;
    if text.trim_start().starts_with('{') {
        duality_core::io::digraph_from_json_str(&text)
            .map_err(|e| input_error(format!("{spec}: {e}")))
    } else {
        Digraph::from_matrix_str(&text).map_err(|e| input_error(format!("{spec}: {e}")))
    }
}

fn parse_digraph_elems(specs: &str) -> Result<Vec<Digraph>, Failure> {
    split_specs(specs)
        .iter()
        .map(|s| parse_digraph_spec(s))
        .collect()
}

fn render_set<B: OrderBackend>(bk: &B, set: &[B::Elem]) -> String {
    let parts: Vec<String> = set.iter().map(|e| bk.render(e)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn engine_exit(e: &EngineError, exhaustive: bool) -> u8 {
    match e {
        EngineError::MissingRightDual(_) if !exhaustive => EXIT_INCONCLUSIVE,
        EngineError::MissingRightDual(_) => EXIT_NEGATIVE,
        _ => EXIT_INPUT,
    }
}

fn dual_command(cli: &Cli, command: &DualCommand) -> Result<u8, Failure> {
    let select = match command {
        DualCommand::Check { select, .. }
        | DualCommand::Build { select, .. }
        | DualCommand::Transversals { select, .. }
        | DualCommand::Gaps { select }
        | DualCommand::Antichain { select, .. } => select,
    };
    let backend = make_backend(cli, select)?;
    match command {
        DualCommand::Check { left, right, .. } => match &backend {
            Backend::Lattice(bk) => {
                let l = parse_lattice_elems(bk, left)?;
                let r = parse_lattice_elems(bk, right)?;
                dual_check(cli, bk, &l, &r)
            }
            Backend::Digraph(bk) => {
                let l = parse_digraph_elems(left)?;
                let r = parse_digraph_elems(right)?;
                dual_check(cli, bk, &l, &r)
            }
        },
        DualCommand::Build { left, .. } => match &backend {
            Backend::Lattice(bk) => {
                let l = parse_lattice_elems(bk, left)?;
                dual_build(cli, bk, &l)
            }
            Backend::Digraph(bk) => {
                let l = parse_digraph_elems(left)?;
                dual_build(cli, bk, &l)
            }
        },
        DualCommand::Transversals { left, .. } => match &backend {
            Backend::Lattice(bk) => {
                let l = parse_lattice_elems(bk, left)?;
                dual_transversals(cli, bk, &l)
            }
            Backend::Digraph(bk) => {
                let l = parse_digraph_elems(left)?;
                dual_transversals(cli, bk, &l)
            }
        },
        DualCommand::Gaps { .. } => match &backend {
            Backend::Lattice(bk) => dual_gaps(cli, bk),
            Backend::Digraph(_) => Err(input_error(
                "gap characterization needs an exhaustive lattice backend",
            )),
        },
        DualCommand::Antichain { elements, .. } => match &backend {
            Backend::Lattice(bk) => {
                let c = parse_lattice_elems(bk, elements)?;
                dual_antichain(cli, bk, &c)
            }
            Backend::Digraph(_) => Err(input_error(
                "antichain splitting needs an exhaustive lattice backend",
            )),
        },
    }
}

fn dual_check<B: OrderBackend>(
    cli: &Cli,
    bk: &B,
    left: &[B::Elem],
    right: &[B::Elem],
) -> Result<u8, Failure> {
    let spec = duality_spec(bk, left, right, cli.bound).map_err(|e| input_error(e.to_string()))?;
    print_duality(cli, bk, &spec);
    Ok(match spec.status {
        DualityStatus::Verified { .. } => EXIT_OK,
        _ => EXIT_NEGATIVE,
    })
}

fn dual_build<B: OrderBackend>(cli: &Cli, bk: &B, left: &[B::Elem]) -> Result<u8, Failure> {
    match build_duality(bk, left, cli.bound) {
        Ok(spec) => {
            print_duality(cli, bk, &spec);
            Ok(match spec.status {
                DualityStatus::Verified { .. } => EXIT_OK,
                _ => EXIT_NEGATIVE,
            })
        }
        Err(e) => Err(Failure {
            code: engine_exit(&e, bk.is_exhaustive()),
            message: e.to_string(),
        }),
    }
}

fn print_duality<B: OrderBackend>(cli: &Cli, bk: &B, spec: &duality_core::DualitySpec<B::Elem>) {
    match cli.output {
        Output::Json | Output::Dot => {
            println!("{}", duality_core::io::duality_to_json(bk, spec))
        }
        Output::Text => {
            println!("left  = {}", render_set(bk, &spec.left));
            println!("right = {}", render_set(bk, &spec.right));
            match &spec.status {
                DualityStatus::Verified { bound } => println!("status = Verified(bound={bound})"),
                DualityStatus::Refuted { witness } => {
                    println!("status = Refuted, witness {}", bk.render(witness))
                }
                DualityStatus::Unchecked => println!("status = Unchecked"),
            }
            if spec.degenerate {
                println!("degenerate = true");
            }
        }
    }
}

fn dual_transversals<B: OrderBackend>(cli: &Cli, bk: &B, left: &[B::Elem]) -> Result<u8, Failure> {
    let mut ts: Vec<Transversal<B::Elem>> =
        transversals(bk, left).map_err(|e| input_error(e.to_string()))?;
    if let Ok(duality) = build_duality(bk, left, cli.bound) {
        for t in &mut ts {
            t.r = r_of_transversal(bk, &duality, t).ok();
        }
    }
    match cli.output {
        Output::Json | Output::Dot => {
            println!("{}", duality_core::io::transversals_to_json(bk, &ts))
        }
        Output::Text => {
            for t in &ts {
                let r =
                    t.r.as_ref()
                        .map(|r| bk.render(r))
                        .unwrap_or_else(|| "?".to_string());
                println!(
                    "members = {} complement = {} r = {r}",
                    render_set(bk, &t.members),
                    render_set(bk, &t.complement)
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn dual_gaps(cli: &Cli, bk: &LatticeBackend) -> Result<u8, Failure> {
    let pairs = gaps(bk).map_err(|e| input_error(e.to_string()))?;
    let mut rows = Vec::new();
    for (a, b) in &pairs {
        let (l, r) = gap_witness(bk, a, b).map_err(|e| input_error(e.to_string()))?;
        rows.push((*a, *b, l, r));
    }
    match cli.output {
        Output::Json | Output::Dot => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(a, b, l, r)| {
                    json!({
                        "a": bk.elem_json(a),
                        "b": bk.elem_json(b),
                        "l": bk.elem_json(l),
                        "r": bk.elem_json(r),
                    })
                })
                .collect();
            println!("{}", Value::Array(items));
        }
        Output::Text => {
            for (a, b, l, r) in &rows {
                println!(
                    "gap ({}, {}): witness (l = {}, r = {})",
                    bk.render(a),
                    bk.render(b),
                    bk.render(l),
                    bk.render(r)
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn dual_antichain(cli: &Cli, bk: &LatticeBackend, c: &[usize]) -> Result<u8, Failure> {
    let split = antichain_split(bk, c).map_err(|e| input_error(e.to_string()))?;
    let reconstruction = duality_from_antichain(bk, c, cli.bound, cli.allow_degenerate)
        .map_err(|e| input_error(e.to_string()))?;
    let negative = split.is_none()
        || !matches!(
            reconstruction,
            AntichainDuality::Applicable { matches: true, .. }
        );
    match cli.output {
        Output::Json | Output::Dot => {
            let split_json = split.as_ref().map(|(a, b)| {
                json!({
                    "above": a.iter().map(|e| bk.elem_json(e)).collect::<Vec<_>>(),
                    "below": b.iter().map(|e| bk.elem_json(e)).collect::<Vec<_>>(),
                })
            });
            let rec_json = match &reconstruction {
                AntichainDuality::NotApplicable { offender } => {
                    json!({ "not_applicable": bk.elem_json(offender) })
                }
                AntichainDuality::Applicable {
                    duality,
                    reconstructed,
                    matches,
                } => json!({
                    "duality": duality_core::io::duality_to_json(bk, duality),
                    "reconstructed": reconstructed.iter().map(|e| bk.elem_json(e)).collect::<Vec<_>>(),
                    "matches": matches,
                }),
            };
            println!(
                "{}",
                json!({ "split": split_json, "from_antichain": rec_json })
            );
        }
        Output::Text => {
            match &split {
                Some((a, b)) => println!(
                    "split: above = {} below = {}",
                    render_set(bk, a),
                    render_set(bk, b)
                ),
                None => println!("split: none"),
            }
            match &reconstruction {
                AntichainDuality::NotApplicable { offender } => {
                    println!("duality: not applicable (offender {})", bk.render(offender))
                }
                AntichainDuality::Applicable {
                    duality, matches, ..
                } => println!(
                    "duality: left = {} right = {} matches = {}",
                    render_set(bk, &duality.left),
                    render_set(bk, &duality.right),
                    matches
                ),
            }
        }
    }
    Ok(if negative { EXIT_NEGATIVE } else { EXIT_OK })
}

fn print_digraph(cli: &Cli, g: &Digraph) {
    match cli.output {
        Output::Json => println!("{}", duality_core::io::digraph_to_json(g)),
        Output::Dot => print!("{}", g.to_dot()),
        Output::Text => {
            let arcs: Vec<String> = g.arcs().iter().map(|&(u, v)| format!("{u}->{v}")).collect();
            println!("n={} arcs=[{}]", g.vertex_count(), arcs.join(" "));
        }
    }
}

fn digraph_command(cli: &Cli, command: &DigraphCommand) -> Result<u8, Failure> {
    match command {
        DigraphCommand::Core { spec } => {
            let g = parse_digraph_spec(spec)?;
            print_digraph(cli, &duality_core::core_of(&g));
            Ok(EXIT_OK)
        }
        DigraphCommand::Hom { source, target } => {
            let g = parse_digraph_spec(source)?;
            let h = parse_digraph_spec(target)?;
            match find_hom(&g, &h) {
                Some(hom) => {
                    match cli.output {
                        Output::Json | Output::Dot => println!("{}", json!({ "map": hom.map })),
                        Output::Text => {
                            for (u, t) in hom.map.iter().enumerate() {
                                println!("{u} -> {t}");
                            }
                        }
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    match cli.output {
                        Output::Json | Output::Dot => println!("{}", json!({ "map": Value::Null })),
                        Output::Text => println!("no homomorphism"),
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        DigraphCommand::Enumerate { max, count_only } => {
            if *count_only {
                let counts = enumeration_counts(*max, cli.cap_enumeration)
                    .map_err(|e| input_error(e.to_string()))?;
                let mut parts = Vec::new();
                if *max >= 1 {
                    parts.push(format!("n≤1: {}", counts[0] + counts[1]));
                    for (n, c) in counts.iter().enumerate().skip(2) {
                        parts.push(format!("n={n}: {c}"));
                    }
                } else {
                    parts.push(format!("n≤0: {}", counts[0]));
                }
                match cli.output {
                    Output::Json | Output::Dot => println!("{}", json!({ "counts": counts })),
                    Output::Text => println!("{}", parts.join(", ")),
                }
            } else {
                let all = enumerate_digraphs(*max, cli.cap_enumeration)
                    .map_err(|e| input_error(e.to_string()))?;
                match cli.output {
                    Output::Json => println!(
                        "{}",
                        Value::Array(
                            all.iter()
                                .map(duality_core::io::digraph_to_json)
                                .collect::<Vec<_>>()
                        )
                    ),
                    _ => {
                        for g in &all {
                            print_digraph(cli, g);
                        }
                    }
                }
            }
            Ok(EXIT_OK)
        }
        DigraphCommand::Product { a, b } => {
            let ga = parse_digraph_spec(a)?;
            let gb = parse_digraph_spec(b)?;
            print_digraph(cli, &product(&ga, &gb));
            Ok(EXIT_OK)
        }
        DigraphCommand::Exp { c, b } => {
            let gc = parse_digraph_spec(c)?;
            let gb = parse_digraph_spec(b)?;
            let result = exponential(&gc, &gb, cli.cap_exponential)
                .map_err(|e| input_error(e.to_string()))?;
            print_digraph(cli, &result);
            Ok(EXIT_OK)
        }
    }
}
