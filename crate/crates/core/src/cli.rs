//! Command-line front end.
//!
//! Exit codes: 0 success (for `cospectral`: the graphs are cospectral; for
//! `prove`: the final verdict holds), 1 a negative answer from `cospectral`
//! or `prove`, 2 usage errors, malformed input or failed computations.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::charpoly::{are_cospectral, char_poly};
use crate::enumerate::{
    enumerate_graphs, find_cospectral_mates, verify_ds, verify_ds_assuming_lemma, EnumerationConfig, EnumerationTask,
    MateReport, DEFAULT_MAX_VERTICES,
};
use crate::friendship::{build_friendship, f16_mate, figure2_graph};
use crate::graph::Graph;
use crate::graph6::{from_graph6, to_graph6_string, Graph6Error};
use crate::proof::run_main_theorem_pipeline;
use crate::spectrum::{eigenvalues, hong_equality_case, round_sig15};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cospec", version, about = "Exact adjacency spectra, friendship graphs and cospectral mates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a named graph as graph6
    Build {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Eigenvalues of each input graph
    Spec {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact characteristic polynomial of each input graph
    Charpoly {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exit 0 if the two graphs are cospectral, 1 if not
    Cospectral {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Hong's bound and its equality classification
    Hong {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Search all graphs with the target's vertex and edge counts for cospectral mates
    Mates {
        #[arg(long)]
        target: String,
        #[arg(long)]
        connected: bool,
        #[command(flatten)]
        search: SearchOpts,
        /// Write the mates as graph6 lines to this file (default: stdout when --out is given)
        #[arg(long)]
        mates_out: Option<PathBuf>,
    },
    /// Search for cospectral mates of the friendship graph F_n
    VerifyDs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
        /// Restrict to graphs satisfying the minimum-degree lemma (presupposes it; implies --connected)
        #[arg(long)]
        assume_lemma: bool,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Replay the proof steps for F_n on a graph
    Prove {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Stream one graph6 line per isomorphism class
    Gen {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Friendship,
    Figure2,
    F16Mate,
    Complete,
    Cycle,
    Path,
    Star,
    Petersen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
struct Input {
    /// graph6 file, one graph per line ("-" for stdin); a value that is not
    /// an existing path is read as a graph6 string
    #[arg(long = "in", conflicts_with = "g6")]
    path: Option<String>,
    /// A single graph6 string
    #[arg(long)]
    g6: Option<String>,
}

#[derive(Args, Debug)]
struct SearchOpts {
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
    /// Omit elapsed time so output is byte-for-byte reproducible
    #[arg(long)]
    no_timing: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SearchOpts {
    fn config(&self) -> EnumerationConfig {
        EnumerationConfig { jobs: self.jobs.max(1), max_vertices: self.max_vertices }
    }
}

fn parse_g6(text: &str) -> anyhow::Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    from_graph6(line.as_bytes())
        .map_err(|e: Graph6Error| anyhow!("malformed graph6 at byte offset {}: {e}", e.offset()))
}

fn parse_lines(text: &str, origin: &str) -> anyhow::Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_g6(l).with_context(|| format!("{origin}, line {}", i + 1)))
        .collect()
}

impl Input {
    fn graphs(&self) -> anyhow::Result<Vec<Graph>> {
        match (&self.path, &self.g6) {
            (_, Some(s)) => Ok(vec![parse_g6(s)?]),
            (Some(p), None) if p == "-" => {
                let mut text = String::new();
                for line in io::stdin().lock().lines() {
                    text.push_str(&line?);
                    text.push('\n');
                }
                parse_lines(&text, "stdin")
            }
            (Some(p), None) if Path::new(p).is_file() => {
                let text = fs::read_to_string(p).with_context(|| format!("reading {p}"))?;
                parse_lines(&text, p)
            }
            (Some(p), None) => Ok(vec![parse_g6(p).with_context(|| format!("{p} is neither a file nor graph6"))?]),
            (None, None) => bail!("one of --in or --g6 is required"),
        }
    }

    fn single(&self) -> anyhow::Result<Graph> {
        let mut gs = self.graphs()?;
        if gs.len() != 1 {
            bail!("expected exactly one graph, got {}", gs.len());
        }
        Ok(gs.pop().unwrap())
    }
}

fn emit(out: &mut dyn Write, target: Option<&PathBuf>, body: &str) -> anyhow::Result<()> {
    match target {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(body.as_bytes()).map_err(Into::into),
    }
}

fn mate_json(report: &MateReport, timing: bool) -> String {
    let mut s = serde_json::to_string(&report.to_json(timing)).unwrap();
    s.push('\n');
    s
}

fn build(family: Family, n: Option<usize>) -> anyhow::Result<Graph> {
    let need = |what: &str| n.ok_or_else(|| anyhow!("--n is required for {what}"));
    Ok(match family {
        Family::Friendship => build_friendship(need("friendship")?)?,
        Family::Figure2 => figure2_graph(),
        Family::F16Mate => f16_mate(),
        Family::Complete => Graph::complete(need("complete")?),
        Family::Cycle => {
            let k = need("cycle")?;
            if k < 3 {
                bail!("a cycle needs at least 3 vertices");
            }
            Graph::cycle(k)
        }
        Family::Path => Graph::path(need("path")?),
        Family::Star => Graph::star(need("star")?),
        Family::Petersen => Graph::petersen(),
    })
}

fn execute(cli: Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cli.command {
        Command::Build { family, n } => {
            writeln!(out, "{}", to_graph6_string(&build(family, n)?))?;
        }
        Command::Spec { input, format } => {
            for g in input.graphs()? {
                let s = eigenvalues(&g)?;
                match format {
                    Format::Json => {
                        let clusters: Vec<_> = s
                            .clusters()
                            .into_iter()
                            .map(|(v, k)| json!({ "value": round_sig15(v), "multiplicity": k }))
                            .collect();
                        let v = json!({
                            "schema": 1,
                            "graph6": to_graph6_string(&g),
                            "vertices": g.n_vertices(),
                            "edges": g.edge_count(),
                            "eigenvalues": s.eigenvalues.iter().map(|&x| round_sig15(x)).collect::<Vec<_>>(),
                            "radius": round_sig15(s.radius),
                            "clusters": clusters,
                        });
                        writeln!(out, "{v}")?;
                    }
                    Format::Table => {
                        writeln!(
                            out,
                            "{}  ({} vertices, {} edges)",
                            to_graph6_string(&g),
                            g.n_vertices(),
                            g.edge_count()
                        )?;
                        for (v, k) in s.clusters() {
                            writeln!(out, "  {:>20.15}  x{k}", v)?;
                        }
                    }
                }
            }
        }
        Command::Charpoly { input, format } => {
            for g in input.graphs()? {
                let p = char_poly(&g);
                match format {
                    Format::Json => {
                        let v = json!({
                            "schema": 1,
                            "graph6": to_graph6_string(&g),
                            "coefficients": p,
                            "polynomial": p.to_string(),
                        });
                        writeln!(out, "{v}")?;
                    }
                    Format::Table => writeln!(out, "{}  {p}", to_graph6_string(&g))?,
                }
            }
        }
        Command::Cospectral { a, b } => {
            let (ga, gb) = (parse_g6(&a).context("--a")?, parse_g6(&b).context("--b")?);
            let yes = are_cospectral(&ga, &gb);
            writeln!(out, "{}", if yes { "cospectral" } else { "not cospectral" })?;
            return Ok(if yes { EXIT_OK } else { EXIT_NO });
        }
        Command::Hong { input, format } => {
            for g in input.graphs()? {
                let r = hong_equality_case(&g)?;
                match format {
                    Format::Json => {
                        let mut v = serde_json::to_value(&r)?;
                        v["schema"] = json!(1);
                        v["graph6"] = json!(to_graph6_string(&g));
                        writeln!(out, "{v}")?;
                    }
                    Format::Table => writeln!(
                        out,
                        "{}  bound {:.12}  radius {:.12}  delta {}  {:?}",
                        to_graph6_string(&g),
                        r.bound,
                        r.radius,
                        r.delta,
                        r.classification
                    )?,
                }
            }
        }
        Command::Mates { target, connected, search, mates_out } => {
            let g = parse_g6(&target).context("--target")?;
            let report = find_cospectral_mates(&g, connected, &search.config())?;
            let lines: String = report.mates.iter().map(|m| to_graph6_string(m) + "\n").collect();
            match (&mates_out, &search.out) {
                (Some(p), _) => fs::write(p, &lines).with_context(|| format!("writing {}", p.display()))?,
                // the report went to a file, so stdout is free for the graph6 stream
                (None, Some(_)) => out.write_all(lines.as_bytes())?,
                (None, None) => {}
            }
            emit(out, search.out.as_ref(), &mate_json(&report, !search.no_timing))?;
        }
        Command::VerifyDs { n, connected, assume_lemma, search } => {
            let config = search.config();
            let report =
                if assume_lemma { verify_ds_assuming_lemma(n, &config)? } else { verify_ds(n, connected, &config)? };
            let mut v = report.to_json(!search.no_timing);
            v["assume_lemma"] = json!(assume_lemma);
            emit(out, search.out.as_ref(), &(serde_json::to_string(&v)? + "\n"))?;
        }
        Command::Prove { n, input, format } => {
            let g = input.single()?;
            let report = run_main_theorem_pipeline(n, &g)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
                Format::Table => write!(out, "{}", report.table())?,
            }
            return Ok(if report.final_verdict { EXIT_OK } else { EXIT_NO });
        }
        Command::Gen { vertices, edges, connected, min_degree, jobs, max_vertices, out: path } => {
            let mut task = EnumerationTask::new(vertices, edges).connected(connected);
            task.min_degree_filter = min_degree;
            let config = EnumerationConfig { jobs: jobs.max(1), max_vertices };
            let lines = std::sync::Mutex::new(Vec::new());
            enumerate_graphs(&task, &config, |g| lines.lock().unwrap().push(to_graph6_string(g)))?;
            let mut lines = lines.into_inner().unwrap();
            if config.jobs > 1 {
                lines.sort();
            }
            let body: String = lines.into_iter().map(|l| l + "\n").collect();
            emit(out, path.as_ref(), &body)?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}
