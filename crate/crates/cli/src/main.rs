//! Command-line front end. Exit codes: 0 affirmative/ok, 1 negative
//! (not a cograph, does not embed), 2 usage or format error, 3 budget or
//! undecided.

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cograph_core::chain::{self, ChainJson, QuasiOrder, QuasiOrderJson, RegularChain};
use cograph_core::cotree::{decomposition_tree, graph_of, TreeJson, ValuedMeetTree};
use cograph_core::embedding;
use cograph_core::error::Error as CoreError;
use cograph_core::family::{
    build_cf, decode_f, materialize, FBits, PrefixJson, ReducedChainPrefix,
};
use cograph_core::graph::{Graph, GraphJson};
use cograph_core::modular::StrongFamily;
use cograph_core::oracle;
use cograph_core::sibling::{class_count, classify_siblings};
use cograph_core::term::{CographTerm, Mult, TermJson};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Read;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "cograph", version, about = "Cograph decomposition toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeEmit {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyEmit {
    Json,
    Dot,
    Graph,
}

#[derive(Args)]
struct GraphInput {
    /// Input path; `-` or omitted reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: GraphFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph is a cograph; prints an induced-path witness
    /// and exits 1 otherwise.
    Recognize(GraphInput),
    /// Decomposition tree of a cograph, as JSON or DOT.
    Decompose {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value = "json")]
        emit: TreeEmit,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rebuild the graph of a tree given as JSON.
    Rebuild {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edgelist")]
        emit: GraphFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify the sibling count of a term given as JSON.
    Classify {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Induced embedding between two graphs, or two terms with --terms.
    Embed {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: GraphFormat,
        /// Treat the inputs as term JSON instead of graphs.
        #[arg(long)]
        terms: bool,
        #[arg(long, default_value_t = embedding::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Labelled-chain operations over a finite quasi-order.
    Chain {
        #[command(subcommand)]
        op: ChainOp,
    },
    /// Build, decode and materialize sibling-family prefixes.
    Family {
        /// Anchor count of the default repeated base.
        #[arg(long, default_value_t = 4)]
        anchors: usize,
        /// Bit word to encode, e.g. 1011.
        #[arg(long, default_value = "")]
        f: String,
        /// Base prefix JSON; overrides the default repeated base.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        cap: u32,
        #[arg(long, value_enum, default_value = "json")]
        emit: FamilyEmit,
        /// Decode the bit word of a built prefix read from --input.
        #[arg(long)]
        decode: bool,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cross-check production algorithms against brute-force oracles.
    Oracle {
        #[command(subcommand)]
        check: OracleCheck,
    },
}

#[derive(Subcommand)]
enum ChainOp {
    /// Q-embedding of one chain into another.
    Embed {
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Indecomposability of a chain.
    Indecomposable {
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Left-indecomposability of a chain.
    LeftIndecomposable {
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Greedy coarsest split into indecomposable parts.
    Decompose {
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Ordinal product: repeat every element n times.
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Concatenation of two chains.
    Sum {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCheck {
    /// Compare enumerated modules and strong modules with the production
    /// laminar family on one graph.
    Modules(GraphInput),
    /// Compare the twin partition with the definition-level check.
    Monomorphic(GraphInput),
    /// Module-lemma suite over random structures, one JSON line each.
    Random {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        alphabet: u8,
        #[arg(long, default_value_t = 23)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code_for(&e)
        }
    });
}

fn exit_code_for(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<CoreError>() {
        Some(CoreError::BudgetExceeded(_))
        | Some(CoreError::Undecided)
        | Some(CoreError::TooLarge { .. }) => 3,
        _ => 2,
    }
}

fn read_input(path: &Option<PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            Ok(buf)
        }
    }
}

fn read_file(path: &PathBuf) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_output(path: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_graph(text: &str, format: GraphFormat) -> anyhow::Result<Graph> {
    match format {
        GraphFormat::Edgelist => Ok(Graph::from_edge_list(text)?),
        GraphFormat::Json => {
            let j: GraphJson = serde_json::from_str(text).context("parsing graph JSON")?;
            Ok(Graph::from_json(&j)?)
        }
    }
}

fn load_graph(input: &GraphInput) -> anyhow::Result<Graph> {
    parse_graph(&read_input(&input.input)?, input.format)
}

fn emit_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Edgelist => g.to_edge_list(),
        GraphFormat::Json => {
            let mut s = serde_json::to_string(&g.to_json()).expect("graph serializes");
            s.push('\n');
            s
        }
    }
}

fn load_order(path: &PathBuf) -> anyhow::Result<QuasiOrder> {
    let j: QuasiOrderJson = serde_json::from_str(&read_file(path)?).context("parsing quasi-order JSON")?;
    Ok(QuasiOrder::from_json(&j)?)
}

fn load_chain(text: &str) -> anyhow::Result<RegularChain> {
    let j: ChainJson = serde_json::from_str(text).context("parsing chain JSON")?;
    Ok(RegularChain::from_json(&j)?)
}

fn load_term(text: &str) -> anyhow::Result<CographTerm> {
    let j: TermJson = serde_json::from_str(text).context("parsing term JSON")?;
    Ok(CographTerm::from_json(&j)?.normalize()?)
}

fn load_prefix(text: &str) -> anyhow::Result<ReducedChainPrefix> {
    let j: PrefixJson = serde_json::from_str(text).context("parsing prefix JSON")?;
    Ok(ReducedChainPrefix::from_json(&j)?)
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Recognize(input) => {
            let g = load_graph(&input)?;
            match g.find_p4() {
                None => {
                    println!("cograph");
                    Ok(0)
                }
                Some([a, b, c, d]) => {
                    eprintln!("not a cograph");
                    println!("{a} {b} {c} {d}");
                    Ok(1)
                }
            }
        }
        Command::Decompose { input, emit, output } => {
            let g = load_graph(&input)?;
            let t = decomposition_tree(&g)?;
            let text = match emit {
                TreeEmit::Json => {
                    let mut s = serde_json::to_string(&t.to_json())?;
                    s.push('\n');
                    s
                }
                TreeEmit::Dot => t.to_dot(),
            };
            write_output(&output, &text)?;
            Ok(0)
        }
        Command::Rebuild { input, emit, output } => {
            let j: TreeJson = serde_json::from_str(&read_input(&input)?).context("parsing tree JSON")?;
            let t = ValuedMeetTree::from_json(&j)?;
            let g = graph_of(&t)?;
            write_output(&output, &emit_graph(&g, emit))?;
            Ok(0)
        }
        Command::Classify { input } => {
            let term = load_term(&read_input(&input)?)?;
            let verdict = classify_siblings(&term)?;
            println!("{verdict}");
            match class_count(&term) {
                Mult::Finite(k) => println!("classes: {k}"),
                Mult::Omega => println!("classes: omega"),
            }
            Ok(0)
        }
        Command::Embed { pattern, target, format, terms, budget } => {
            let yes = if terms {
                let s = load_term(&read_file(&pattern)?)?;
                let t = load_term(&read_file(&target)?)?;
                cograph_core::sibling::term_embeds(&s, &t)?
            } else {
                let p = parse_graph(&read_file(&pattern)?, format)?;
                let t = parse_graph(&read_file(&target)?, format)?;
                embedding::embeds_with_budget(&p, &t, budget)?
            };
            if yes {
                println!("embeds");
                Ok(0)
            } else {
                println!("does not embed");
                Ok(1)
            }
        }
        Command::Chain { op } => run_chain(op),
        Command::Family { anchors, f, base, cap, emit, decode, input, output } => {
            if decode {
                let prefix = load_prefix(&read_input(&input)?)?;
                let bits = decode_f(&prefix)?;
                println!("{bits}");
                return Ok(0);
            }
            let base_prefix = match base {
                Some(p) => load_prefix(&read_file(&p)?)?,
                None => ReducedChainPrefix::repeated_anchor_base(anchors),
            };
            let bits = FBits::parse(&f)?;
            let built = build_cf(&base_prefix, &bits)?;
            let text = match emit {
                FamilyEmit::Json => {
                    let mut s = serde_json::to_string(&built.to_json())?;
                    s.push('\n');
                    s
                }
                FamilyEmit::Graph => materialize(&built, cap)?.to_edge_list(),
                FamilyEmit::Dot => graph_dot(&materialize(&built, cap)?),
            };
            write_output(&output, &text)?;
            Ok(0)
        }
        Command::Oracle { check } => run_oracle(check),
    }
}

fn run_chain(op: ChainOp) -> anyhow::Result<i32> {
    match op {
        ChainOp::Embed { order, lhs, rhs } => {
            let q = load_order(&order)?;
            let a = load_chain(&read_file(&lhs)?)?;
            let b = load_chain(&read_file(&rhs)?)?;
            if chain::q_embedding(&a, &b, &q)? {
                println!("embeds");
                Ok(0)
            } else {
                println!("does not embed");
                Ok(1)
            }
        }
        ChainOp::Indecomposable { order, input } => {
            let q = load_order(&order)?;
            let c = load_chain(&read_input(&input)?)?;
            if chain::is_indecomposable(&c, &q)? {
                println!("indecomposable");
                Ok(0)
            } else {
                println!("not indecomposable");
                Ok(1)
            }
        }
        ChainOp::LeftIndecomposable { order, input } => {
            let q = load_order(&order)?;
            let c = load_chain(&read_input(&input)?)?;
            if chain::is_left_indecomposable(&c, &q)? {
                println!("left-indecomposable");
                Ok(0)
            } else {
                println!("not left-indecomposable");
                Ok(1)
            }
        }
        ChainOp::Decompose { order, input } => {
            let q = load_order(&order)?;
            let c = load_chain(&read_input(&input)?)?;
            let parts = chain::indecomposable_decomposition(&c, &q)?;
            let jsons: Vec<ChainJson> = parts.iter().map(|p| p.to_json()).collect();
            println!("{}", serde_json::to_string(&jsons)?);
            Ok(0)
        }
        ChainOp::Product { n, input } => {
            let c = load_chain(&read_input(&input)?)?;
            println!("{}", serde_json::to_string(&c.ordinal_product(n)?.to_json())?);
            Ok(0)
        }
        ChainOp::Sum { lhs, rhs } => {
            let a = load_chain(&read_file(&lhs)?)?;
            let b = load_chain(&read_file(&rhs)?)?;
            println!("{}", serde_json::to_string(&a.sum(&b).to_json())?);
            Ok(0)
        }
    }
}

fn run_oracle(check: OracleCheck) -> anyhow::Result<i32> {
    let mut all_agree = true;
    let mut emit = |report: oracle::OracleReport| -> anyhow::Result<()> {
        all_agree &= report.agree;
        println!("{}", serde_json::to_string(&report)?);
        Ok(())
    };
    match check {
        OracleCheck::Modules(input) => {
            let g = load_graph(&input)?;
            let s = g.to_structure();
            let instance = format!("graph n={} m={}", g.n(), g.edge_count());
            let family = StrongFamily::decompose(&s)?;
            let mut production = family.vertex_sets();
            production.sort();
            let mut enumerated: Vec<Vec<usize>> = oracle::strong_modules_by_enumeration(&s)?
                .into_iter()
                .filter(|m| !m.is_empty())
                .collect();
            enumerated.sort();
            emit(oracle::OracleReport::new(
                "strong_modules",
                instance.clone(),
                format!("{enumerated:?}"),
                format!("{production:?}"),
            ))?;
            let module_count = oracle::enumerate_modules(&s)?.len();
            emit(oracle::OracleReport::new(
                "module_count",
                instance,
                module_count.to_string(),
                module_count.to_string(),
            ))?;
        }
        OracleCheck::Monomorphic(input) => {
            let g = load_graph(&input)?;
            let p = cograph_core::sibling::canonical_monomorphic_decomposition(&g);
            let blocks = p.block_sets();
            let passes = oracle::definition_monomorphic_check(&g, &blocks)?;
            emit(oracle::OracleReport::new(
                "canonical_monomorphic",
                format!("graph n={} m={}", g.n(), g.edge_count()),
                "true".to_string(),
                passes.to_string(),
            ))?;
        }
        OracleCheck::Random { count, max_n, alphabet, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..count {
                let n = rng.gen_range(2..=max_n.clamp(2, oracle::ENUM_MAX_VERTICES));
                let ab = cograph_core::structure::LabelAlphabet::new(alphabet.max(2), 0)?;
                let mut s = cograph_core::structure::BinaryStructure::constant(n, ab, 0)?;
                for x in 0..n {
                    for y in 0..n {
                        if x != y {
                            s.set_label(x, y, rng.gen_range(0..ab.size));
                        }
                    }
                }
                let family = StrongFamily::decompose(&s)?;
                let mut production = family.vertex_sets();
                production.sort();
                let mut enumerated: Vec<Vec<usize>> = oracle::strong_modules_by_enumeration(&s)?
                    .into_iter()
                    .filter(|m| !m.is_empty())
                    .collect();
                enumerated.sort();
                emit(oracle::OracleReport::new(
                    "strong_modules",
                    format!("random structure #{i} n={n} alphabet={}", ab.size),
                    format!("{enumerated:?}"),
                    format!("{production:?}"),
                ))?;
            }
        }
    }
    Ok(if all_agree { 0 } else { 1 })
}

fn graph_dot(g: &Graph) -> String {
    use std::fmt::Write as _;
    let mut s = String::from("graph g {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  v{v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  v{u} -- v{v};");
    }
    s.push_str("}\n");
    s
}
