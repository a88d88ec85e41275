//! Argument definitions and the command implementations.

use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use heron_core::lattice::{dim4_counterexample, integer_embedding, verify_assertion, verify_embedding};
use heron_core::modular::{preset, verify_claim, verify_scaling_claim, DivisibilityClaim, ObjectKind, LONG_RUNNING};
use heron_core::search::{
    enumerate_heron_triangles, run_shards, search_isosceles_face, search_right_angled_face, search_right_angled_vertex,
    search_semi_regular, GenericSearch, HeronTetrahedron, IsoscelesFaceTetra, RightAngledFaceLegs, ShardedSearch, TetraClass,
    TriangleFilter,
};

use crate::checkpoint::{write_atomically, SearchCheckpoint};
use crate::error::{CliError, Outcome, Result};
use crate::record::{read_records, recheck, Record, RecordKind, RecordProvenance, Report, Subject, VERSION};
use crate::reproduce::{reproduce, Table};

/// Largest prime for which `verify assertion` runs without `--allow-long`.
pub const ASSERTION_DESK_LIMIT: u64 = 13;

#[derive(Debug, Parser)]
#[command(name = "heron", version, about = "Search, classify, embed and verify Heron triangles and tetrahedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate Heron triangles with every side at most --max-edge.
    Triangles(TrianglesArgs),
    /// Search Heron tetrahedra of one class.
    Tetra(TetraArgs),
    /// Attach verified integer coordinates to triangle or tetrahedron records.
    Embed(EmbedArgs),
    /// Run a divisibility claim, scaling claim, residue assertion or the
    /// four-dimensional obstruction.
    Verify(VerifyArgs),
    /// Compare a search against one of the built-in tables.
    Reproduce(ReproduceArgs),
    /// Recompute every record of a JSON-lines file from its edges.
    Recheck(RecheckArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write records here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Re-verify every emitted record from its edges alone.
    #[arg(long)]
    pub recheck: bool,
}

#[derive(Debug, Args)]
pub struct TrianglesArgs {
    #[arg(long)]
    pub max_edge: u64,
    /// pythagorean, isosceles or acute.
    #[arg(long)]
    pub class: Option<TriangleFilter>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TetraArgs {
    /// semi-regular, right-angled-vertex, right-angled-face, isosceles-face or generic.
    #[arg(long)]
    pub class: TetraClass,
    #[arg(long)]
    pub max_edge: u64,
    /// Omit multiples of smaller solutions.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub primitive_only: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Resume from and save progress to this file (generic class only).
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many shards, leaving the rest to a resumed run.
    #[arg(long, hide = true)]
    pub max_shards: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// JSON-lines input, or `-` for standard input.
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub check: VerifyCommand,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Exhaustive residue check of a divisibility claim.
    Claim(ClaimArgs),
    /// Both readings of the scaling statement for t = 2 or 3.
    Scaling {
        #[arg(long)]
        t: u64,
    },
    /// Residue check behind the spatial reduction step, for an odd prime.
    Assertion {
        #[arg(long)]
        p: u64,
        /// Allow primes above 13, which take much longer.
        #[arg(long)]
        allow_long: bool,
    },
    /// Regular tetrahedra in the four-dimensional lattice.
    Dim4,
}

fn parse_kind(s: &str) -> std::result::Result<ObjectKind, String> {
    match s {
        "triangle" => Ok(ObjectKind::Triangle),
        "tetrahedron" => Ok(ObjectKind::Tetrahedron),
        other => Err(format!("unknown kind `{other}`; expected triangle or tetrahedron")),
    }
}

#[derive(Debug, Args)]
pub struct ClaimArgs {
    /// A named claim; the custom-claim flags are ignored when given.
    #[arg(long, conflicts_with_all = ["kind", "modulus", "divisor", "multiplier", "premise"])]
    pub preset: Option<String>,
    #[arg(long, value_parser = parse_kind, required_unless_present = "preset")]
    pub kind: Option<ObjectKind>,
    #[arg(long, required_unless_present = "preset")]
    pub modulus: Option<u64>,
    #[arg(long, required_unless_present = "preset")]
    pub divisor: Option<u64>,
    /// `K` in `D ≡ K·v²`; defaults to 1 for triangles and 288 for tetrahedra.
    #[arg(long)]
    pub multiplier: Option<u64>,
    /// Only objects whose edges are all divisible by this.
    #[arg(long)]
    pub premise: Option<u64>,
    /// Run presets marked long-running.
    #[arg(long)]
    pub allow_long: bool,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum)]
    pub table: Table,
    #[arg(long)]
    pub max_edge: u64,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Also write the comparison as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RecheckArgs {
    /// JSON-lines input, or `-` for standard input.
    pub input: PathBuf,
}

/// All records go through here, so output is written by a single writer.
/// Files are replaced atomically when the command finishes.
struct Sink {
    path: Option<PathBuf>,
    buffer: Vec<u8>,
    stdout: std::io::StdoutLock<'static>,
    recheck: bool,
    problems: Vec<String>,
}

impl Sink {
    fn new(output: &OutputArgs) -> Self {
        Self {
            path: output.out.clone(),
            buffer: Vec::new(),
            stdout: std::io::stdout().lock(),
            recheck: output.recheck,
            problems: Vec::new(),
        }
    }

    fn emit(&mut self, record: &Record) -> Result<()> {
        let line = record.to_line();
        if self.recheck {
            let parsed: Record = serde_json::from_str(&line).expect("records round-trip");
            self.problems.extend(recheck(&parsed));
        }
        match self.path {
            Some(_) => writeln!(self.buffer, "{line}").expect("writing to memory"),
            None => writeln!(self.stdout, "{line}").map_err(|e| CliError::io("stdout", e))?,
        }
        Ok(())
    }

    fn finish(mut self) -> Result<Outcome> {
        match &self.path {
            Some(p) => write_atomically(p, &self.buffer)?,
            None => self.stdout.flush().map_err(|e| CliError::io("stdout", e))?,
        }
        for p in &self.problems {
            eprintln!("recheck: {p}");
        }
        Ok(if self.problems.is_empty() { Outcome::Success } else { Outcome::Mismatch })
    }
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Io(format!("cannot start worker threads: {e}")))
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(std::io::stdin())));
    }
    let f = std::fs::File::open(path).map_err(|e| CliError::io(path.display(), e))?;
    Ok(Box::new(BufReader::new(f)))
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Triangles(a) => cmd_triangles(&a),
        Command::Tetra(a) => cmd_tetra(&a),
        Command::Embed(a) => cmd_embed(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Reproduce(a) => cmd_reproduce(&a),
        Command::Recheck(a) => cmd_recheck(&a),
    }
}

fn cmd_triangles(a: &TrianglesArgs) -> Result<Outcome> {
    if a.max_edge > heron_core::simplex::MAX_TRIANGLE_EDGE {
        return Err(CliError::Usage(format!("--max-edge {} is too large", a.max_edge)));
    }
    let mut sink = Sink::new(&a.output);
    let provenance = RecordProvenance {
        command: "triangles".into(),
        search: a.class.map(|c| serde_json::to_value(c).expect("serialisable").as_str().unwrap_or_default().to_string()),
        max_edge: Some(a.max_edge),
        version: VERSION.into(),
        ..Default::default()
    };
    for t in enumerate_heron_triangles(a.max_edge, a.class) {
        sink.emit(&Record::triangle(&t, provenance.clone()))?;
    }
    sink.finish()
}

/// A tetrahedron together with the construction data its search knows.
struct Found {
    tetra: HeronTetrahedron,
    legs: Option<RightAngledFaceLegs>,
    isosceles: Option<IsoscelesFaceTetra>,
    shard: Option<u64>,
}

impl Found {
    fn plain(tetra: HeronTetrahedron) -> Self {
        Self { tetra, legs: None, isosceles: None, shard: None }
    }

    fn scaled(&self, k: u64) -> Result<Self> {
        let tetra = HeronTetrahedron::from_edges(self.tetra.edges.map(|e| e * k), self.tetra.provenance)?;
        let legs = self.legs.map(|l| RightAngledFaceLegs::new(l.a1 * k, l.a2 * k, l.a3 * k)).transpose()?;
        let isosceles = self.isosceles.map(|f| IsoscelesFaceTetra::new(f.a * k, f.b * k, f.x * k, f.m * k)).transpose()?;
        Ok(Self { tetra, legs, isosceles, shard: self.shard })
    }
}

fn special_search(class: TetraClass, max_edge: u64) -> Result<Vec<Found>> {
    Ok(match class {
        TetraClass::SemiRegular => search_semi_regular(max_edge)?.into_iter().map(Found::plain).collect(),
        TetraClass::RightAngledVertex => search_right_angled_vertex(max_edge)?.into_iter().map(Found::plain).collect(),
        TetraClass::RightAngledFace => search_right_angled_face(max_edge)?
            .into_iter()
            .map(|(l, t)| Found { legs: Some(l), ..Found::plain(t) })
            .collect(),
        TetraClass::IsoscelesFace => search_isosceles_face(max_edge)?
            .into_iter()
            .map(|(f, t)| Found { isosceles: Some(f), ..Found::plain(t) })
            .collect(),
        TetraClass::Generic => unreachable!("the generic search is sharded"),
    })
}

/// Runs the sharded search, resuming from and updating the checkpoint.
/// `None` means it stopped early because of `--max-shards`.
fn generic_search(a: &TetraArgs, pool: &rayon::ThreadPool) -> Result<Option<Vec<Found>>> {
    let search = GenericSearch::new(a.max_edge, a.primitive_only)?;
    let id = format!("tetra/generic/primitive-only={}", a.primitive_only);
    let mut cp = match &a.checkpoint {
        Some(p) => SearchCheckpoint::load_or_new(p, &id, a.max_edge)?,
        None => SearchCheckpoint::new(&id, a.max_edge),
    };
    let todo: Vec<u64> = search.shards().into_iter().filter(|s| !cp.completed.contains_key(s)).collect();
    let batch = 4 * pool.current_num_threads();
    let budget = a.max_shards.unwrap_or(usize::MAX);
    let mut done = 0;
    for chunk in todo.chunks(batch) {
        if done >= budget {
            break;
        }
        let chunk = &chunk[..chunk.len().min(budget - done)];
        for (shard, items) in pool.install(|| run_shards(&search, chunk)) {
            cp.record(shard, items);
        }
        done += chunk.len();
        if let Some(p) = &a.checkpoint {
            cp.save(p)?;
        }
    }
    if done < todo.len() {
        eprintln!("stopped after {done} of {} remaining shards; rerun with the same --checkpoint to resume", todo.len());
        return Ok(None);
    }
    let mut out = Vec::new();
    for (&shard, items) in &cp.completed {
        for t in GenericSearch::finish(items)? {
            if t.tags.is_generic() {
                out.push(Found { shard: Some(shard), ..Found::plain(t) });
            }
        }
    }
    Ok(Some(out))
}

fn cmd_tetra(a: &TetraArgs) -> Result<Outcome> {
    if a.max_shards.is_some() && a.checkpoint.is_none() {
        return Err(CliError::Usage("--max-shards needs --checkpoint".into()));
    }
    if a.checkpoint.is_some() && a.class != TetraClass::Generic {
        return Err(CliError::Usage("--checkpoint applies to the sharded generic search only".into()));
    }
    let pool = thread_pool(a.jobs)?;
    let mut found = if a.class == TetraClass::Generic {
        match generic_search(a, &pool)? {
            Some(f) => f,
            None => return Ok(Outcome::Interrupted),
        }
    } else {
        let primitive = pool.install(|| special_search(a.class, a.max_edge))?;
        let mut all = Vec::new();
        for f in primitive {
            let largest = f.tetra.max_edge();
            let top = if a.primitive_only { 1 } else { a.max_edge / largest };
            for k in 2..=top {
                all.push(f.scaled(k)?);
            }
            all.push(f);
        }
        all
    };
    found.sort_by_key(|f| (f.tetra.max_edge(), f.tetra.edges));

    let mut sink = Sink::new(&a.output);
    for f in &found {
        for v in f.tetra.divisibility_violations() {
            eprintln!("warning: {:?}: {v}", f.tetra.display_edges());
        }
        let provenance = RecordProvenance {
            command: "tetra".into(),
            search: Some(a.class.as_str().into()),
            max_edge: Some(a.max_edge),
            primitive_only: Some(a.primitive_only),
            shard: f.shard,
            version: VERSION.into(),
            ..Default::default()
        };
        let mut r = Record::tetrahedron(&f.tetra, provenance);
        r.legs = f.legs;
        r.isosceles_face = f.isosceles;
        sink.emit(&r)?;
    }
    sink.finish()
}

fn cmd_embed(a: &EmbedArgs) -> Result<Outcome> {
    let records = read_records(open_input(&a.input)?)?;
    let mut sink = Sink::new(&a.output);
    let mut all_verified = true;
    for (line, r) in records {
        if !matches!(r.kind, RecordKind::Triangle | RecordKind::Tetrahedron | RecordKind::Embedding) {
            return Err(CliError::Input { line, message: format!("cannot embed a {:?} record", r.kind) });
        }
        let m = r.distance_matrix().map_err(|message| CliError::Input { line, message })?;
        let points = integer_embedding(&m).map_err(|e| CliError::Input { line, message: e.to_string() })?;
        let verified = verify_embedding(&points, &m);
        all_verified &= verified;
        let provenance =
            RecordProvenance { command: "embed".into(), source: Some(r.key.clone()), version: VERSION.into(), ..Default::default() };
        sink.emit(&Record::embedding(&r, &points, verified, provenance)?)?;
    }
    let outcome = sink.finish()?;
    Ok(if all_verified { outcome } else { Outcome::Mismatch })
}

/// Runs the check a verdict record is about.
pub fn run_subject(subject: &Subject) -> Result<Report> {
    Ok(match subject {
        Subject::Claim { claim } => Report::Claim(verify_claim(claim)?),
        Subject::Scaling { t } => Report::Scaling(verify_scaling_claim(*t)?),
        Subject::Assertion { p } => Report::Assertion(verify_assertion(*p)?),
        Subject::Dim4 => Report::Dim4(dim4_counterexample()),
    })
}

fn custom_claim(c: &ClaimArgs) -> Result<DivisibilityClaim> {
    let (kind, modulus, divisor) = (c.kind.expect("required"), c.modulus.expect("required"), c.divisor.expect("required"));
    let default_k = match kind {
        ObjectKind::Triangle => 1,
        ObjectKind::Tetrahedron => 288,
    };
    let what = match kind {
        ObjectKind::Triangle => "area",
        ObjectKind::Tetrahedron => "volume",
    };
    let premise = c.premise.map_or(String::new(), |t| format!(" with all edges divisible by {t}"));
    let claim = DivisibilityClaim {
        id: format!("custom-{what}{divisor}-mod{modulus}"),
        kind,
        modulus,
        multiplier: c.multiplier.unwrap_or(default_k),
        divisor,
        premise: c.premise,
        statement: format!("every Heron {what}{premise} is divisible by {divisor}"),
    };
    claim.validate()?;
    Ok(claim)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let (key, subject) = match &a.check {
        VerifyCommand::Claim(c) => {
            let claim = match &c.preset {
                Some(name) => {
                    if LONG_RUNNING.contains(&name.as_str()) && !c.allow_long {
                        return Err(CliError::Usage(format!("`{name}` is a long-running job; pass --allow-long to run it")));
                    }
                    preset(name)?
                }
                None => custom_claim(c)?,
            };
            (format!("claim:{}", claim.id), Subject::Claim { claim })
        }
        VerifyCommand::Scaling { t } => (format!("scaling:{t}"), Subject::Scaling { t: *t }),
        VerifyCommand::Assertion { p, allow_long } => {
            if *p > ASSERTION_DESK_LIMIT && !allow_long {
                return Err(CliError::Usage(format!("p = {p} is a long run; pass --allow-long to run it")));
            }
            (format!("assertion:{p}"), Subject::Assertion { p: *p })
        }
        VerifyCommand::Dim4 => ("dim4".into(), Subject::Dim4),
    };
    let report = run_subject(&subject)?;
    let holds = report.holds();
    eprintln!("{key}: {}", if holds { "verified" } else { "witness found" });
    let provenance = RecordProvenance { command: "verify".into(), version: VERSION.into(), ..Default::default() };
    let mut sink = Sink::new(&a.output);
    sink.emit(&Record::verdict(key, subject, report, provenance))?;
    let outcome = sink.finish()?;
    Ok(if holds { outcome } else { Outcome::Mismatch })
}

fn cmd_reproduce(a: &ReproduceArgs) -> Result<Outcome> {
    let pool = thread_pool(a.jobs)?;
    let report = pool.install(|| reproduce(a.table, a.max_edge))?;
    let text = report.render();
    match &a.out {
        Some(p) => write_atomically(p, text.as_bytes())?,
        None => print!("{text}"),
    }
    if let Some(p) = &a.csv {
        let mut bytes = Vec::new();
        report.write_csv(&mut bytes).map_err(|e| CliError::io(p.display(), e))?;
        write_atomically(p, &bytes)?;
    }
    Ok(if report.matched() { Outcome::Success } else { Outcome::Mismatch })
}

fn cmd_recheck(a: &RecheckArgs) -> Result<Outcome> {
    let records = read_records(open_input(&a.input)?)?;
    let mut problems = 0;
    for (line, r) in &records {
        for p in recheck(r) {
            eprintln!("line {line}: {p}");
            problems += 1;
        }
    }
    eprintln!("{} records rechecked, {problems} discrepancies", records.len());
    Ok(if problems == 0 { Outcome::Success } else { Outcome::Mismatch })
}
