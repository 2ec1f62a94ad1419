mod spec;

use std::fs::File;
use std::io::{self, BufReader, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use lazycop_core::bounds::{classify, experimental_delta_filter};
use lazycop_core::enumerate::{for_each_connected, read_graph6_stream, Constraints, StreamMode, MAX_ENUMERATE_N};
use lazycop_core::graph::{canonical_form, to_graph6};
use lazycop_core::play::{PlayConfig, PlayResult, PlaySession, Side};
use lazycop_core::scan::{run_scan, ScanOptions, ScanReport, ScanSource};
use lazycop_core::solver::{extract_strategies, solve_attractor_with, solve_outcome};
use lazycop_core::verify::{run_check, Check, VerifyOptions};
use lazycop_core::{Budget, Graph, Rules, SolveOutcome};

#[derive(Parser)]
#[command(name = "lazycop", version, about = "Exact cops and robbers solving on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// State budget per solve.
    #[arg(long, global = true, env = "LAZYCOP_BUDGET")]
    budget: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Cop number, lazy cop number and domination number of one graph.
    Solve {
        /// Graph spec, e.g. `rook 3`, `cart cycle 4 path 3`, `g6:DQc`.
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
    },
    /// Run a named family check: eight-vertices, main, rooks or counts.
    Verify {
        check: Check,
        /// Directory for checkpoint files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Classify every graph of a family into a JSONL checkpoint.
    Scan {
        #[command(flatten)]
        family: Family,
        /// Checkpoint file (JSON lines).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write the final report as JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the (c, c_L) histogram as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Abort on corrupt checkpoint or input lines.
        #[arg(long)]
        strict: bool,
        /// Stop after this many new records.
        #[arg(long, hide = true)]
        stop_after: Option<usize>,
    },
    /// Count isomorphism classes of a family.
    Count {
        #[command(flatten)]
        family: Family,
        /// Print each class as a graph6 line.
        #[arg(long)]
        emit: bool,
    },
    /// Dump the cop strategy, or the robber's evasion policy when cops lose.
    Strategy {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[arg(short, long)]
        k: usize,
        /// Cops moving per turn; defaults to 1 (lazy).
        #[arg(short, long, default_value_t = 1)]
        m: usize,
        /// Write the dump here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play against the engine in the terminal.
    Play {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[arg(short, long)]
        k: usize,
        #[arg(short, long, default_value_t = 1)]
        m: usize,
        /// Side played by the human: cops or robber.
        #[arg(long, default_value = "robber")]
        side: Side,
        /// Read moves from this file instead of the terminal.
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
        /// Print the engine's suggestion before each human move.
        #[arg(long)]
        hints: bool,
    },
    /// Sample random graphs for the unproven bound max degree >= n - k^2
    /// implies c_L <= k. Results are conjectural evidence only.
    Explore {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Args)]
struct Family {
    /// Vertex count.
    #[arg(long, required_unless_present = "graph6_in")]
    n: Option<usize>,
    #[arg(long)]
    min_deg: Option<usize>,
    #[arg(long)]
    max_deg: Option<usize>,
    #[arg(long)]
    min_edges: Option<usize>,
    #[arg(long)]
    max_edges: Option<usize>,
    /// Take graphs from a graph6 file instead of generating them.
    #[arg(long, conflicts_with = "n")]
    graph6_in: Option<PathBuf>,
    /// Allow 10-vertex families (hours of work and gigabytes of memory).
    #[arg(long)]
    huge: bool,
}

impl Family {
    fn source(&self) -> Result<ScanSource> {
        if let Some(path) = &self.graph6_in {
            return Ok(ScanSource::Graph6File(path.clone()));
        }
        let n = self.n.expect("clap requires --n without --graph6-in");
        if n >= MAX_ENUMERATE_N && !self.huge {
            bail!("n = {n} takes hours; pass --huge to run it anyway");
        }
        let base = Constraints::connected(n);
        let c = Constraints {
            min_deg: self.min_deg.unwrap_or(base.min_deg),
            max_deg: self.max_deg.unwrap_or(base.max_deg),
            min_edges: self.min_edges.unwrap_or(base.min_edges),
            max_edges: self.max_edges.unwrap_or(base.max_edges),
            ..base
        };
        c.validate()?;
        if n >= MAX_ENUMERATE_N {
            eprintln!("warning: n = {n} is a very long run");
        }
        Ok(ScanSource::Enumerate(c))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let budget = cli.budget.map(Budget::with_states).unwrap_or_else(Budget::from_env);
    let fmt = cli.format;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Solve { graph } => {
            let g = spec::parse_spec(&graph)?;
            cmd_solve(&g, &budget, fmt, &mut out)?;
        }
        Command::Verify {
            check,
            out: dir,
            resume,
            workers,
        } => {
            if let Some(d) = &dir {
                std::fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
            }
            let opts = VerifyOptions {
                checkpoint_dir: dir,
                resume,
                workers,
                budget: Some(budget),
            };
            let report = run_check(check, &opts)?;
            if fmt == Format::Json {
                serde_json::to_writer_pretty(&mut out, &report)?;
                writeln!(out)?;
            } else {
                writeln!(out, "verify {}", check.name())?;
                for line in &report.lines {
                    writeln!(out, "  {line}")?;
                }
                writeln!(out, "{}", if report.passed { "PASS" } else { "FAIL" })?;
            }
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Scan {
            family,
            out: checkpoint,
            resume,
            workers,
            report,
            csv,
            strict,
            stop_after,
        } => {
            let source = family.source()?;
            let opts = ScanOptions {
                checkpoint,
                resume,
                workers,
                budget,
                strict,
                stop_after,
            };
            let r = run_scan(&source, &opts)?;
            if let Some(path) = report {
                serde_json::to_writer_pretty(File::create(&path)?, &r)?;
            }
            if let Some(path) = csv {
                r.write_histogram_csv(File::create(&path)?)?;
            }
            print_scan(&r, fmt, &mut out)?;
        }
        Command::Count { family, emit } => cmd_count(&family, emit, fmt, &mut out)?,
        Command::Strategy { graph, k, m, out: path } => {
            let g = spec::parse_spec(&graph)?;
            let rules = Rules::new(k, m)?;
            match path {
                Some(p) => cmd_strategy(&g, rules, &budget, fmt, &mut File::create(p)?)?,
                None => cmd_strategy(&g, rules, &budget, fmt, &mut out)?,
            }
        }
        Command::Play {
            graph,
            k,
            m,
            side,
            script,
            max_rounds,
            hints,
        } => {
            let g = spec::parse_spec(&graph)?;
            let config = PlayConfig {
                rules: Rules::new(k, m)?,
                human: side,
                max_rounds,
                hints,
            };
            let session = PlaySession::new(&g, config, &budget)?;
            let result = match script {
                Some(p) => {
                    let f = File::open(&p).with_context(|| format!("opening {}", p.display()))?;
                    session.run(BufReader::new(f), &mut out)?
                }
                None => {
                    if !io::stdin().is_terminal() {
                        bail!("play needs a terminal on stdin or a --script file");
                    }
                    session.run(io::stdin().lock(), &mut out)?
                }
            };
            if fmt == Format::Json {
                writeln!(out, "{}", serde_json::to_string(&result)?)?;
            }
            if let PlayResult::Abandoned { .. } = result {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Explore { samples, seed, max_n, k } => cmd_explore(samples, seed, max_n, k, &budget, fmt, &mut out)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn print_outcome<W: Write>(o: &SolveOutcome, out: &mut W, indent: &str) -> io::Result<()> {
    writeln!(out, "{indent}c = {}", o.cop_number)?;
    writeln!(out, "{indent}c_L = {}", o.lazy_cop_number)?;
    writeln!(out, "{indent}gamma = {}", o.domination_number)?;
    writeln!(out, "{indent}dismantlable: {}", if o.dismantlable { "yes" } else { "no" })?;
    for t in &o.capture_times {
        match t.rounds {
            Some(r) => writeln!(out, "{indent}k={} m={}: cops win, capture in {r}", t.k, t.m)?,
            None => writeln!(out, "{indent}k={} m={}: robber escapes", t.k, t.m)?,
        }
    }
    for p in &o.witness_placements {
        writeln!(out, "{indent}k={} m={} winning start: {:?}", p.k, p.m, p.cops)?;
    }
    Ok(())
}

fn cmd_solve<W: Write>(g: &Graph, budget: &Budget, fmt: Format, out: &mut W) -> Result<()> {
    if g.is_connected() {
        let o = solve_outcome(g, budget)?;
        if fmt == Format::Json {
            let v = json!({"graph6": to_graph6(g).as_str(), "n": g.n(), "edges": g.edge_count(), "outcome": o});
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        } else {
            writeln!(out, "graph {} ({} vertices, {} edges)", to_graph6(g), g.n(), g.edge_count())?;
            print_outcome(&o, out, "")?;
        }
        return Ok(());
    }
    let comps = g.components();
    eprintln!("warning: graph is disconnected; solving its {} components separately", comps.len());
    let mut rows = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        let (h, labels) = g.induced_subgraph(*comp)?;
        let o = solve_outcome(&h, budget)?;
        if fmt == Format::Text {
            writeln!(out, "component {i}: vertices {labels:?}")?;
            print_outcome(&o, out, "  ")?;
        }
        rows.push(json!({"vertices": labels, "graph6": to_graph6(&h).as_str(), "outcome": o}));
    }
    if fmt == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&json!({"components": rows}))?)?;
    }
    Ok(())
}

fn print_scan<W: Write>(r: &ScanReport, fmt: Format, out: &mut W) -> Result<()> {
    if fmt == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(r)?)?;
        return Ok(());
    }
    writeln!(
        out,
        "{} graphs{} ({} new, {} resumed) in {:.1}s",
        r.total,
        if r.complete { "" } else { " (incomplete)" },
        r.new_records,
        r.resumed_records,
        r.wall_time_secs
    )?;
    for h in &r.histogram {
        let ws: Vec<&str> = h.witnesses.iter().map(|w| w.g6.as_str()).collect();
        writeln!(out, "  c={} c_L={}: {}  e.g. {}", h.c, h.cl, h.count, ws.join(" "))?;
    }
    for (name, hits) in &r.filter_hits {
        writeln!(out, "  filter {name}: {hits}")?;
    }
    if !r.skipped_lines.is_empty() {
        writeln!(out, "  skipped lines: {:?}", r.skipped_lines)?;
    }
    Ok(())
}

fn cmd_count<W: Write>(family: &Family, emit: bool, fmt: Format, out: &mut W) -> Result<()> {
    let mut count = 0usize;
    match family.source()? {
        ScanSource::Enumerate(c) => {
            // emission order within the stream is by parent; sort for output
            let mut lines = Vec::new();
            for_each_connected(&c, |cf, _| {
                count += 1;
                if emit {
                    lines.push(cf.to_graph6().to_string());
                }
            })?;
            lines.sort_unstable();
            for l in lines {
                writeln!(out, "{l}")?;
            }
        }
        ScanSource::Graph6File(path) => {
            let mut forms = Vec::new();
            for item in read_graph6_stream(BufReader::new(File::open(&path)?), StreamMode::Strict) {
                forms.push(canonical_form(&item?));
            }
            forms.sort_unstable();
            forms.dedup();
            count = forms.len();
            if emit {
                for f in &forms {
                    writeln!(out, "{f}")?;
                }
            }
        }
    }
    if fmt == Format::Json {
        writeln!(out, "{}", json!({ "count": count }))?;
    } else if !emit {
        writeln!(out, "{count}")?;
    }
    Ok(())
}

fn cmd_strategy<W: Write>(g: &Graph, rules: Rules, budget: &Budget, fmt: Format, out: &mut W) -> Result<()> {
    let wt = solve_attractor_with(g, rules, budget)?;
    let st = extract_strategies(g, rules, &wt)?;
    let entries = st.entries(&wt);
    // fastest winning start, least placement on ties
    let best = (0..wt.placements())
        .filter_map(|p| wt.placement_value(p).map(|v| (v, wt.placement_cops(p))))
        .min();
    match best {
        Some((rounds, start)) => {
            let moves = entries.cop_moves();
            if fmt == Format::Json {
                let v = json!({
                    "rules": {"k": rules.cops(), "m": rules.movers()},
                    "cops_win": true,
                    "start": start,
                    "capture_time": rounds,
                    "cop_moves": moves,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "cops win with {rules}; start {start:?}; capture in {rounds}")?;
                writeln!(out, "cop moves (cops, robber, rank -> next cops):")?;
                for e in moves {
                    writeln!(out, "  {:?} r={} rank={} -> {:?}", e.cops, e.robber, e.rank, e.next)?;
                }
            }
        }
        None => {
            let starts: Vec<(Vec<usize>, usize)> = (0..wt.placements())
                .filter_map(|p| st.robber_start(p).map(|v| (wt.placement_cops(p), v)))
                .collect();
            let moves = entries.robber_moves();
            if fmt == Format::Json {
                let starts: Vec<_> = starts.iter().map(|(c, v)| json!({"cops": c, "robber": v})).collect();
                let v = json!({
                    "rules": {"k": rules.cops(), "m": rules.movers()},
                    "cops_win": false,
                    "robber_starts": starts,
                    "robber_moves": moves,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "robber escapes {rules}; evasion policy follows")?;
                writeln!(out, "robber start against each cop start:")?;
                for (c, v) in starts {
                    writeln!(out, "  {c:?} -> {v}")?;
                }
                writeln!(out, "robber moves (cops after their move, robber -> next):")?;
                for e in moves {
                    writeln!(out, "  {:?} r={} -> {}", e.cops, e.robber, e.next)?;
                }
            }
        }
    }
    Ok(())
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p: f64 = rng.gen_range(0.15..0.6);
        let mut g = Graph::empty(n).expect("n in range");
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).expect("distinct vertices");
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

fn cmd_explore<W: Write>(
    samples: usize,
    seed: u64,
    max_n: usize,
    k: usize,
    budget: &Budget,
    fmt: Format,
    out: &mut W,
) -> Result<()> {
    if !(2..=16).contains(&max_n) {
        bail!("--max-n must be between 2 and 16");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut fired, mut held, mut counterexamples) = (0usize, 0usize, Vec::new());
    for _ in 0..samples {
        let n = rng.gen_range(2..=max_n);
        let g = random_connected(&mut rng, n);
        if !experimental_delta_filter(&g, k) {
            continue;
        }
        fired += 1;
        let cl = classify(&g, true, budget)?.outcome.lazy_cop_number;
        if cl <= k {
            held += 1;
        } else {
            counterexamples.push(to_graph6(&g).to_string());
        }
    }
    if fmt == Format::Json {
        let v = json!({
            "label": "conjectural evidence",
            "k": k, "seed": seed, "samples": samples,
            "hypothesis_met": fired, "bound_held": held, "counterexamples": counterexamples,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else {
        writeln!(out, "conjectural evidence (not a verified bound)")?;
        writeln!(
            out,
            "{samples} samples, seed {seed}: {fired} with max degree >= n - {}, c_L <= {k} in {held}",
            k * k
        )?;
        for c in counterexamples {
            writeln!(out, "  counterexample {c}")?;
        }
    }
    Ok(())
}
