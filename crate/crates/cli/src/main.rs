use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use planturan::blocks::{block_inequalities_fan, block_inequalities_h3, triangular_blocks, BlockRecord};
use planturan::construct;
use planturan::detect::{Pattern, PatternKind};
use planturan::enumerate::{near_triangulations_with, GenLimits, ResumeToken};
use planturan::io::{read_graphs, to_dot, to_planar_code, to_rotation_text, PlanarCodeWriter};
use planturan::par::{with_jobs, Exec};
use planturan::verify::{run_statement, VerifyOptions, STATEMENTS};
use planturan::PlaneGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "planturan", version, about = "Planar Turán numbers of friendship graphs and fans")]
struct Cli {
    /// Worker threads; 1 runs sequentially, 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for sampled output.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Allow orders 13 and 14.
    #[arg(long, global = true)]
    deep: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stream triangulations (minus t edges) as planar_code.
    Enumerate(EnumerateArgs),
    /// Build a named graph or a member of an extremal family.
    Construct(ConstructArgs),
    /// Report whether each graph of a file avoids the given patterns.
    Check(CheckArgs),
    /// Triangular-block decomposition as JSON lines.
    Blocks(BlocksArgs),
    /// Run a statement and emit its certificate.
    Verify(VerifyArgs),
    /// Convert a graph file between formats.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// planar_code
    Pc,
    /// rotation text
    Text,
    Dot,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Edges removed from each triangulation (0..=2).
    #[arg(long, default_value_t = 0)]
    t: usize,
    /// Drop repeated graphs (only matters for t > 0).
    #[arg(long)]
    dedup: bool,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep subtrees congruent to P modulo M, written P/M.
    #[arg(long)]
    part: Option<String>,
    /// Resume token printed by an interrupted run.
    #[arg(long)]
    resume: Option<String>,
    /// Emit a uniform sample of this many graphs instead of the stream.
    #[arg(long)]
    sample: Option<usize>,
    /// Only print the number of graphs.
    #[arg(long)]
    count: bool,
    #[arg(long, value_enum, default_value_t = Format::Pc)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    H3,
    Fan,
    Named,
    Delta6,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    name: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    /// Pattern such as H3 or F4; repeatable.
    #[arg(long = "pattern", required = true)]
    patterns: Vec<Pattern>,
}

#[derive(Args)]
struct BlocksArgs {
    file: PathBuf,
    /// Also check the block inequalities for this pattern (H3 or F2..F5).
    #[arg(long)]
    pattern: Option<Pattern>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Statement id; `all` runs every statement.
    #[arg(long)]
    statement: String,
    /// Restrict per-order statements to this n.
    #[arg(long)]
    n: Option<usize>,
    /// Largest order for the claims sweeps.
    #[arg(long, default_value_t = 10)]
    sweep_max_n: usize,
    /// Write the certificate JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Print the certificate JSON instead of the table.
    #[arg(long)]
    print_json: bool,
}

#[derive(Args)]
struct ExportArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(path: &Path) -> anyhow::Result<Vec<PlaneGraph>> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    read_graphs(&bytes).with_context(|| format!("parsing {}", path.display()))
}

fn write_graphs(out: &mut dyn Write, graphs: &[PlaneGraph], format: Format) -> anyhow::Result<()> {
    match format {
        Format::Pc => out.write_all(&to_planar_code(graphs))?,
        Format::Text => {
            for (i, g) in graphs.iter().enumerate() {
                if i > 0 {
                    writeln!(out, "---")?;
                }
                out.write_all(to_rotation_text(g).as_bytes())?;
            }
        }
        Format::Dot => {
            for (i, g) in graphs.iter().enumerate() {
                out.write_all(to_dot(g, &format!("g{i}")).as_bytes())?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn exec_for(jobs: usize) -> Exec {
    if jobs == 1 {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn limits(deep: bool) -> GenLimits {
    GenLimits { deep, large: false }
}

fn enumerate(cli: &Cli, a: &EnumerateArgs) -> anyhow::Result<bool> {
    let mut stream = near_triangulations_with(a.n, a.t, limits(cli.deep))?.dedup(a.dedup);
    if let Some(part) = &a.part {
        let (p, m) = part.split_once('/').ok_or_else(|| anyhow!("--part expects P/M, got {part}"))?;
        stream = stream.partition(p.parse()?, m.parse()?)?;
    }
    if let Some(tok) = &a.resume {
        stream = stream.resume(&tok.parse::<ResumeToken>()?)?;
    }
    if a.count {
        println!("{}", stream.count(exec_for(cli.jobs)));
        return Ok(true);
    }
    if let Some(k) = a.sample {
        // Reservoir sampling keeps the choice uniform over the whole stream.
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let mut keep: Vec<PlaneGraph> = Vec::with_capacity(k);
        for (i, g) in stream.iter().enumerate() {
            if i < k {
                keep.push(g);
            } else {
                let j = rng.gen_range(0..=i);
                if j < k {
                    keep[j] = g;
                }
            }
        }
        write_graphs(&mut *output(a.out.as_deref())?, &keep, a.format)?;
        eprintln!("sampled {} graphs", keep.len());
        return Ok(true);
    }
    let out = output(a.out.as_deref())?;
    let mut it = stream.iter();
    let written = match a.format {
        Format::Pc => {
            let mut w = PlanarCodeWriter::new(out)?;
            for g in it.by_ref() {
                w.write(&g)?;
            }
            let c = w.count();
            w.finish()?;
            c
        }
        other => {
            let gs: Vec<PlaneGraph> = it.by_ref().collect();
            let mut out = out;
            write_graphs(&mut *out, &gs, other)?;
            gs.len()
        }
    };
    eprintln!("wrote {written} graphs (n={} t={}); resume token {}", a.n, a.t, it.resume_token());
    Ok(true)
}

fn construct(a: &ConstructArgs) -> anyhow::Result<bool> {
    let g = match a.family {
        Family::H3 => construct::h3_family(a.k),
        Family::Fan => construct::fan_family(a.t, a.k)?,
        Family::Named => construct::named(a.name.as_deref().ok_or_else(|| anyhow!("--name is required with --family named"))?)?,
        Family::Delta6 => construct::delta6_triangulation(a.n.ok_or_else(|| anyhow!("--n is required with --family delta6"))?)?,
    };
    write_graphs(&mut *output(a.out.as_deref())?, &[g], a.format)?;
    Ok(true)
}

fn check(a: &CheckArgs) -> anyhow::Result<bool> {
    let graphs = load(&a.file)?;
    let mut all_free = true;
    for (i, g) in graphs.iter().enumerate() {
        let mut parts = Vec::new();
        for p in &a.patterns {
            match p.find(g)? {
                None => parts.push(format!("{p}-free")),
                Some(w) => {
                    all_free = false;
                    parts.push(format!("contains {w}"));
                }
            }
        }
        println!("graph {i}: n={} e={} {}", g.vertex_count(), g.edge_count(), parts.join(", "));
    }
    Ok(all_free)
}

fn blocks(a: &BlocksArgs) -> anyhow::Result<bool> {
    let graphs = load(&a.file)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut ok = true;
    for (i, g) in graphs.iter().enumerate() {
        for b in triangular_blocks(g) {
            let mut rec = serde_json::to_value(BlockRecord::from(&b))?;
            rec["graph"] = i.into();
            writeln!(out, "{rec}")?;
        }
        let Some(p) = a.pattern else { continue };
        let (violations, skipped, summary) = match p.kind {
            PatternKind::Friendship if p.k == 3 => {
                let r = block_inequalities_h3(g)?;
                (r.violations.clone(), r.skipped.clone(), serde_json::to_value(&r)?)
            }
            PatternKind::Fan => {
                let r = block_inequalities_fan(g, p.k)?;
                (r.violations.clone(), r.skipped.clone(), serde_json::to_value(&r)?)
            }
            _ => bail!("block inequalities exist for H3 and F2..F5, not {p}"),
        };
        ok &= violations.is_empty();
        let mut line = serde_json::json!({ "graph": i, "pattern": p.to_string(), "ok": violations.is_empty(), "violations": violations });
        if let Some(s) = skipped {
            line["skipped"] = s.into();
        }
        line["report"] = summary;
        writeln!(out, "{line}")?;
    }
    Ok(ok)
}

fn verify(cli: &Cli, a: &VerifyArgs) -> anyhow::Result<bool> {
    let opts = VerifyOptions {
        exec: exec_for(cli.jobs),
        deep: cli.deep,
        n: a.n,
        sweep_max_n: a.sweep_max_n,
    };
    let ids: Vec<&str> = if a.statement.eq_ignore_ascii_case("all") {
        STATEMENTS.iter().copied().filter(|&id| cli.deep || id != "LEM_3_1").collect()
    } else {
        vec![a.statement.as_str()]
    };
    let mut certs = Vec::new();
    for id in ids {
        let cert = run_statement(id, &opts).with_context(|| format!("statement {id}"))?;
        let reverified = cert.reverify_witnesses()?;
        if a.print_json {
            println!("{}", cert.to_json());
        } else {
            print!("{}", cert.text_table());
            for w in &cert.witnesses {
                println!("  witness {}: n={} e={} {}", w.label, w.n, w.e, w.planar_code);
            }
            println!("  witnesses re-verified: {reverified}");
        }
        certs.push((cert, reverified));
    }
    if let Some(path) = &a.json {
        let body = if certs.len() == 1 {
            certs[0].0.to_json()
        } else {
            serde_json::to_string_pretty(&certs.iter().map(|c| &c.0).collect::<Vec<_>>())?
        };
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(certs.iter().all(|(c, r)| c.passed() && *r))
}

fn export(a: &ExportArgs) -> anyhow::Result<bool> {
    let graphs = load(&a.file)?;
    write_graphs(&mut *output(a.out.as_deref())?, &graphs, a.format)?;
    Ok(true)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.cmd {
        Cmd::Enumerate(a) => enumerate(cli, a),
        Cmd::Construct(a) => construct(a),
        Cmd::Check(a) => check(a),
        Cmd::Blocks(a) => blocks(a),
        Cmd::Verify(a) => verify(cli, a),
        Cmd::Export(a) => export(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match with_jobs(cli.jobs, || run(&cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.chain().any(|c| c.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(planturan::Error::NTooLarge(n)) = e.downcast_ref() {
                if *n <= 14 {
                    eprintln!("hint: pass --deep for n = 13, 14");
                }
            }
            ExitCode::from(2)
        }
    }
}
