//! Subcommand implementations.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use anyhow::Context;
use chaoskit::cgr::{fcgr_count, fcgr_grid, fcgr_kronecker, CgrTrajectory, FcgrMatrix};
use chaoskit::debruijn::reconstruct;
use chaoskit::distribution::{
    default_iterations, empirical_distribution, hit_and_run_sample, max_marginal_residual, KmerDistribution,
    MARGINAL_TOLERANCE,
};
use chaoskit::imaging::{render_cgr, render_fcgr, write_pgm, GrayImage, Scale, BLACK};
use chaoskit::seq::{
    apply_permutation, count_kmers, parse_fasta, write_fasta, FastaRecord, KmerFrequencyVector, LetterPermutation,
    NonAcgtPolicy,
};
use chaoskit::symmetry_for_permutation;
use rayon::prelude::*;

use crate::args::*;
use crate::{CliError, CliResult};

/// Environment variable capping the worker threads used for per-record work.
pub const THREADS_ENV: &str = "CHAOSKIT_THREADS";

/// Line width of FASTA output.
pub const FASTA_WIDTH: usize = 70;

pub fn execute(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Cgr(CgrCommand::Render(a)) => cgr_render(a),
        Command::Cgr(CgrCommand::Trajectory(a)) => cgr_trajectory(a),
        Command::Fcgr(a) => fcgr(a),
        Command::Kmers(a) => kmers(a),
        Command::Dist(a) => dist(a),
        Command::Sample(a) => sample(a),
        Command::Reconstruct(a) => reconstruct_cmd(a),
        Command::Symmetry(a) => symmetry(a),
        Command::Serve(a) => serve(a),
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::validation(format!("{THREADS_ENV}={raw:?} is not a positive integer")))?;
    // A pool already built by an earlier call in this process is kept.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn io_err(e: impl Into<anyhow::Error>, what: &str, path: &Path) -> CliError {
    CliError::Io(e.into().context(format!("{what} {}", path.display())))
}

fn is_std(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn open_input(path: &Path) -> CliResult<Box<dyn BufRead>> {
    if is_std(path) {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path).map_err(|e| io_err(e, "cannot open", path))?;
    Ok(Box::new(BufReader::new(f)))
}

/// Buffered output that reports failures against its path.
struct Output {
    path: std::path::PathBuf,
    inner: BufWriter<Box<dyn Write>>,
}

impl Output {
    fn create(path: &Path) -> CliResult<Output> {
        let sink: Box<dyn Write> = if is_std(path) {
            Box::new(io::stdout())
        } else {
            Box::new(File::create(path).map_err(|e| io_err(e, "cannot create", path))?)
        };
        Ok(Output { path: path.to_path_buf(), inner: BufWriter::new(sink) })
    }

    /// Runs a writer, mapping I/O failures to exit status 2 and data failures to 1.
    fn write_with(mut self, f: impl FnOnce(&mut dyn Write) -> chaoskit::Result<()>) -> CliResult<()> {
        f(&mut self.inner).map_err(|e| match e {
            chaoskit::Error::Io(io) => io_err(io, "cannot write", &self.path),
            other => CliError::from(other),
        })?;
        self.inner.flush().map_err(|e| io_err(e, "cannot write", &self.path))
    }
}

fn read_records(input: &Input) -> CliResult<Vec<FastaRecord>> {
    let policy: NonAcgtPolicy = input.policy.parse()?;
    let reader = open_input(&input.input)?;
    let records = parse_fasta(reader, policy).map_err(|e| match e {
        chaoskit::Error::Io(io) => io_err(io, "cannot read", &input.input),
        other => CliError::Validation(anyhow::Error::new(other).context(input.input.display().to_string())),
    })?;
    if records.is_empty() {
        return Err(CliError::validation(format!("{}: no FASTA records", input.input.display())));
    }
    Ok(records)
}

/// Applies `f` to every record long enough for a window of `k`, in parallel.
fn per_record<T: Send>(
    records: &[FastaRecord],
    k: usize,
    f: impl Fn(&FastaRecord) -> chaoskit::Result<T> + Sync + Send,
) -> CliResult<Vec<T>> {
    let usable: Vec<&FastaRecord> = records.iter().filter(|r| r.seq.len() >= k).collect();
    if usable.is_empty() {
        return Err(CliError::validation(format!("no record has a window of length {k}")));
    }
    Ok(usable.into_par_iter().map(f).collect::<chaoskit::Result<Vec<T>>>()?)
}

/// k-mer counts summed over records; windows never span two records.
fn pooled_counts(records: &[FastaRecord], k: usize) -> CliResult<KmerFrequencyVector> {
    let parts = per_record(records, k, |r| count_kmers(&r.seq, k))?;
    let mut total = KmerFrequencyVector::zeros(k)?;
    for p in &parts {
        total.merge(p)?;
    }
    Ok(total)
}

fn cgr_render(a: RenderArgs) -> CliResult<()> {
    let records = read_records(&a.input)?;
    let images = per_record(&records, a.resolution, |r| render_cgr(&r.seq, a.resolution))?;
    let mut img = images[0].clone();
    for other in &images[1..] {
        for row in 0..img.height() {
            for col in 0..img.width() {
                if other.get(row, col) == BLACK {
                    img.set(row, col, BLACK);
                }
            }
        }
    }
    Output::create(&a.output)?.write_with(|w| write_pgm(&img, w))
}

fn cgr_trajectory(a: TrajectoryArgs) -> CliResult<()> {
    let records = read_records(&a.input)?;
    if records.len() != 1 {
        return Err(CliError::validation(format!("expected one record, found {}", records.len())));
    }
    let t = CgrTrajectory::new(&records[0].seq);
    Output::create(&a.output)?.write_with(|w| t.write_tsv(w))
}

fn fcgr(a: FcgrArgs) -> CliResult<()> {
    let scale: Scale = a.scale.parse()?;
    let records = read_records(&a.input)?;
    let build = match a.mode {
        FcgrMode::Count => fcgr_count,
        FcgrMode::Grid => fcgr_grid,
        FcgrMode::Kronecker => fcgr_kronecker,
    };
    let parts = per_record(&records, a.k, |r| build(&r.seq, a.k))?;
    let mut entries = vec![0u64; parts[0].entries().len()];
    for p in &parts {
        entries.iter_mut().zip(p.entries()).for_each(|(e, c)| *e += c);
    }
    let m = FcgrMatrix::from_entries(a.k, entries)?;
    Output::create(&a.output)?.write_with(|w| m.write_csv(w))?;
    if let Some(path) = &a.image {
        let img = render_fcgr(&m, scale);
        Output::create(path)?.write_with(|w| write_pgm(&img, w))?;
    }
    Ok(())
}

fn kmers(a: KmersArgs) -> CliResult<()> {
    let counts = pooled_counts(&read_records(&a.input)?, a.k)?;
    Output::create(&a.output)?.write_with(|w| counts.write_csv(w))
}

fn dist(a: DistArgs) -> CliResult<()> {
    let theta = empirical_distribution(&pooled_counts(&read_records(&a.input)?, a.k)?)?;
    Output::create(&a.output)?.write_with(|w| theta.write_csv(w))?;
    if a.check_marginals {
        if a.k < 2 {
            return Err(CliError::validation("marginal check needs k >= 2"));
        }
        let r = max_marginal_residual(&theta)?;
        let verdict = if r <= MARGINAL_TOLERANCE { "consistent" } else { "not consistent" };
        eprintln!("max marginal residual {r:e} ({verdict} within {MARGINAL_TOLERANCE:e})");
    }
    Ok(())
}

fn sample(a: SampleArgs) -> CliResult<()> {
    let iterations = match a.iterations {
        Some(i) => i,
        None => default_iterations(a.k)?,
    };
    let theta = hit_and_run_sample(a.k, iterations, a.seed)?;
    Output::create(&a.output)?.write_with(|w| theta.write_csv(w))
}

/// Reads a `kmer,theta` file, or a `kmer,count` file normalized to a distribution.
pub fn read_target(path: &Path) -> CliResult<KmerDistribution> {
    let mut text = String::new();
    open_input(path)?.read_to_string(&mut text).map_err(|e| io_err(e, "cannot read", path))?;
    let first = text.lines().next().unwrap_or("").trim();
    let parsed = if first.eq_ignore_ascii_case("kmer,count") {
        let body = text.split_once('\n').map_or("", |(_, rest)| rest);
        let (raw, _) = KmerDistribution::read_csv(format!("kmer,theta\n{}", normalize_counts(body)?).as_bytes())?;
        raw
    } else {
        let (theta, renormalized) = KmerDistribution::read_csv(text.as_bytes())?;
        if renormalized {
            eprintln!("note: {} renormalized to sum 1", path.display());
        }
        theta
    };
    Ok(parsed)
}

fn normalize_counts(body: &str) -> CliResult<String> {
    let mut rows = Vec::new();
    for line in body.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (w, c) = line.split_once(',').ok_or_else(|| CliError::validation(format!("bad count row {line:?}")))?;
        let c: u64 = c.trim().parse().map_err(|_| CliError::validation(format!("bad count {c:?}")))?;
        rows.push((w.trim().to_string(), c));
    }
    let total: u64 = rows.iter().map(|r| r.1).sum();
    if total == 0 {
        return Err(chaoskit::Error::ZeroMass.into());
    }
    Ok(rows.iter().map(|(w, c)| format!("{w},{}\n", *c as f64 / total as f64)).collect())
}

fn reconstruct_cmd(a: ReconstructArgs) -> CliResult<()> {
    let theta = match (&a.theta, a.k) {
        (Some(path), _) => read_target(path)?,
        (None, Some(k)) => {
            let iterations = match a.iterations {
                Some(i) => i,
                None => default_iterations(k)?,
            };
            hit_and_run_sample(k, iterations, a.seed)?
        }
        (None, None) => return Err(CliError::validation("either --theta or -k is required")),
    };
    let (seq, report) = reconstruct(&theta, a.n)?;
    let header = format!("reconstructed k={} n={} achieved_l1={}", report.k, report.n, report.achieved_l1);
    Output::create(&a.output)?.write_with(|w| write_fasta(w, &header, &seq, FASTA_WIDTH))?;
    if let Some(path) = &a.report {
        Output::create(path)?.write_with(|w| {
            serde_json::to_writer_pretty(&mut *w, &report).map_err(io::Error::from)?;
            writeln!(w)?;
            Ok(())
        })?;
    }
    if let (Some(path), Some(r)) = (&a.image, a.resolution) {
        let img: GrayImage = render_cgr(&seq, r)?;
        Output::create(path)?.write_with(|w| write_pgm(&img, w))?;
    }
    Ok(())
}

fn symmetry(a: SymmetryArgs) -> CliResult<()> {
    let sigma: LetterPermutation = a.sigma.parse()?;
    symmetry_for_permutation(&sigma)?;
    let records = read_records(&a.input)?;
    Output::create(&a.output)?.write_with(|w| {
        for r in &records {
            write_fasta(&mut *w, &r.id, &apply_permutation(&sigma, &r.seq), FASTA_WIDTH)?;
        }
        Ok(())
    })
}

fn serve(a: ServeArgs) -> CliResult<()> {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .context("cannot start runtime")
        .map_err(CliError::Io)?;
    runtime.block_on(async {
        let addr = format!("{}:{}", a.host, a.port);
        let listener = tokio::net::TcpListener::bind(&addr)
            .await
            .with_context(|| format!("cannot bind {addr}"))
            .map_err(CliError::Io)?;
        eprintln!("listening on http://{addr}");
        axum::serve(listener, crate::service::router()).await.context("server failed").map_err(CliError::Io)
    })
}
