//! `tetra`: enumerate and analyse two-colour solutions of the tetrahedron equation.
//!
//! Exit codes: 0 success, 1 verification mismatch or failed property, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tetra_core::catalogue::{build_records, emit_json, emit_text, parse_reference, Reference};
use tetra_core::cohomology::{cohomology3, cohomology_all, CohomologyReport};
use tetra_core::cube::{boundary_matrices, enumerate_permitted4_bruteforce_with, enumerate_permitted4_propagate};
use tetra_core::quantum::{check_qte, parse_rational, Cocycle};
use tetra_core::search::{histogram_by_image_cardinality, orbit_decomposition};
use tetra_core::{bundled_reference, compare, enumerate_solutions_with, Error, Exec, Kernel, RMap, SolutionSet};

#[derive(Parser)]
#[command(name = "tetra", version, about = "Two-colour solutions of the set-theoretic tetrahedron equation")]
struct Cli {
    /// Worker threads: 1 runs sequentially, 0 uses every core.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all solutions with their classification and cohomology.
    Enumerate {
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check one map: three polynomials in x, y, z, or a 24-bit code.
    Verify {
        #[arg(required = true, num_args = 1..=3, value_name = "R")]
        map: Vec<String>,
    },
    /// Degree-3 cohomology of one map or of every solution.
    Cohomology {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also print the boundary matrices (single map only).
        #[arg(long)]
        matrices: bool,
    },
    /// List the orbits of the solution set under the two conjugations.
    Orbits,
    /// Check the linear tetrahedron equation for the induced operator.
    QuantumCheck {
        #[command(flatten)]
        target: Target,
        /// `trivial`, `kernel-basis`, or eight comma-separated integers.
        #[arg(long, default_value = "trivial", allow_hyphen_values = true)]
        cocycle: String,
        /// Twist parameter, `p/q` or an integer.
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        t: String,
    },
    /// Run the whole pipeline and compare with a reference catalogue.
    CompareReference {
        /// Catalogue file; defaults to the bundled one.
        #[arg(long = "ref", value_name = "PATH")]
        reference: Option<PathBuf>,
        /// Comma-separated catalogue ids to cross-check with the brute-force 4-cube filter.
        #[arg(long, value_name = "IDS", value_delimiter = ',')]
        oracle_4cube: Vec<u32>,
    },
}

#[derive(Args)]
struct Target {
    /// Three polynomials, or a single 24-bit code.
    #[arg(num_args = 0..=3, value_name = "R")]
    map: Vec<String>,
    #[arg(long, value_name = "C", conflicts_with = "map")]
    code: Option<String>,
    /// Every solution.
    #[arg(long, conflicts_with_all = ["map", "code"])]
    all: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Bad arguments detected after clap's own parsing; exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            if is_broken_pipe(&e) {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

/// Output cut short by the reader (e.g. `| head`) is not an error.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    let io = e.downcast_ref::<io::Error>().or_else(|| match e.downcast_ref::<Error>() {
        Some(Error::Io(io)) => Some(io),
        _ => None,
    });
    io.is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let exec = Exec::from_jobs(cli.jobs);
    match cli.command {
        Command::Enumerate { out, format } => enumerate(exec, out, format),
        Command::Verify { map } => verify(&map),
        Command::Cohomology { target, out, format, matrices } => cohomology(exec, &target, out, format, matrices),
        Command::Orbits => orbits(exec),
        Command::QuantumCheck { target, cocycle, t } => quantum_check(exec, &target, &cocycle, &t),
        Command::CompareReference { reference, oracle_4cube } => compare_reference(exec, reference, &oracle_4cube),
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_map(args: &[String]) -> Result<RMap> {
    match args {
        [code] => RMap::parse_code(code).map_err(|e| usage(e.to_string())),
        [a, b, c] => RMap::from_polys(&[a, b, c]).map_err(|e| usage(e.to_string())),
        _ => Err(usage("expected three polynomials or one code")),
    }
}

fn reference() -> Result<Reference> {
    bundled_reference().context("bundled reference catalogue")
}

fn label(reference: &Reference, r: RMap) -> String {
    match reference.by_code(r.code()) {
        Some(e) => format!("R_{} {r}", e.id),
        None => r.to_string(),
    }
}

fn solutions(exec: Exec) -> SolutionSet {
    enumerate_solutions_with(exec, Kernel::Scalar)
}

fn targets(exec: Exec, target: &Target) -> Result<Vec<RMap>> {
    if target.all {
        return Ok(solutions(exec).as_slice().to_vec());
    }
    if let Some(code) = &target.code {
        return Ok(vec![RMap::parse_code(code).map_err(|e| usage(e.to_string()))?]);
    }
    if target.map.is_empty() {
        return Err(usage("give a map (three polynomials or a code), --code, or --all"));
    }
    Ok(vec![parse_map(&target.map)?])
}

fn enumerate(exec: Exec, out: Option<PathBuf>, format: Format) -> Result<ExitCode> {
    let set = solutions(exec);
    let reports = cohomology_all(set.as_slice(), exec)?;
    let records = build_records(&reports, Some(&reference()?));
    let mut w = output(&out)?;
    match format {
        Format::Json => emit_json(&mut w, &records)?,
        Format::Text => emit_text(&mut w, &records)?,
    }
    w.flush()?;
    if let Some(path) = out {
        let hist = histogram_by_image_cardinality(&set);
        println!("{} solutions written to {}", set.len(), path.display());
        println!("by image cardinality: {hist:?}");
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &[String]) -> Result<ExitCode> {
    let r = parse_map(args)?;
    let reference = reference()?;
    let solution = r.satisfies_stte();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut w = BufWriter::new(io::stdout().lock());
    writeln!(w, "map: {r}")?;
    writeln!(w, "code: {:#08x} ({})", r.code(), r.code())?;
    writeln!(w, "solution: {}", yes_no(solution))?;
    writeln!(w, "image cardinality: {}", r.image_cardinality())?;
    writeln!(w, "bijective: {}", yes_no(r.is_bijective()))?;
    if let Some(e) = reference.by_code(r.code()) {
        writeln!(w, "catalogue: R_{} (item {})", e.id, e.item)?;
    }
    writeln!(w, "sigma1: {}", label(&reference, r.sigma1()))?;
    writeln!(w, "sigma2: {}", label(&reference, r.sigma2()))?;
    w.flush()?;
    Ok(if solution { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn write_report(w: &mut dyn Write, reference: &Reference, rep: &CohomologyReport) -> io::Result<()> {
    let r = RMap::from_code(rep.code);
    writeln!(w, "{}", label(reference, r))?;
    writeln!(w, "  code: {:#08x}", rep.code)?;
    writeln!(w, "  ker delta^3 rank: {}", rep.ker_rank)?;
    for v in rep.ker.basis_vectors() {
        writeln!(w, "    {v:?}")?;
    }
    writeln!(w, "  im delta^2 generator: {:?}", rep.im_generator)?;
    writeln!(w, "  H3 = ker/im: {}", rep.h3)?;
    writeln!(w, "  H3 reduced = ker/(im + Z v1): {}", rep.h3_reduced)?;
    writeln!(w, "  nontrivial: {}", if rep.nontrivial { "yes" } else { "no" })
}

fn cohomology(exec: Exec, target: &Target, out: Option<PathBuf>, format: Format, matrices: bool) -> Result<ExitCode> {
    let maps = targets(exec, target)?;
    if matrices && maps.len() != 1 {
        return Err(usage("--matrices needs a single map"));
    }
    for &r in &maps {
        if !r.satisfies_stte() {
            eprintln!("{r} does not satisfy the tetrahedron equation");
            return Ok(ExitCode::FAILURE);
        }
    }
    let reference = reference()?;
    let reports = cohomology_all(&maps, exec)?;
    let mut w = output(&out)?;
    match format {
        Format::Json => emit_json(&mut w, &build_records(&reports, Some(&reference)))?,
        Format::Text => {
            for rep in &reports {
                write_report(&mut w, &reference, rep)?;
            }
        }
    }
    if matrices {
        boundary_matrices(maps[0])?.write_text(&mut w, maps[0])?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn orbits(exec: Exec) -> Result<ExitCode> {
    let set = solutions(exec);
    let reference = reference()?;
    let orbits = orbit_decomposition(&set)?;
    let mut w = BufWriter::new(io::stdout().lock());
    for (n, o) in orbits.iter().enumerate() {
        let fixed: Vec<String> = o.self_symmetries.iter().map(|s| s.to_string()).collect();
        writeln!(
            w,
            "orbit {} (size {}; fixed by: {})",
            n + 1,
            o.len(),
            if fixed.is_empty() { "none".to_string() } else { fixed.join(", ") }
        )?;
        for &m in &o.members {
            writeln!(w, "  {}", label(&reference, m))?;
        }
        for &(a, b, s) in &o.edges {
            writeln!(w, "  {} <-{s}-> {}", label(&reference, a), label(&reference, b))?;
        }
    }
    writeln!(w, "{} orbits over {} solutions", orbits.len(), set.len())?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

enum CocycleChoice {
    Trivial,
    KernelBasis,
    Explicit([i64; 8]),
}

fn parse_cocycle(s: &str) -> Result<CocycleChoice> {
    match s {
        "trivial" => Ok(CocycleChoice::Trivial),
        "kernel-basis" => Ok(CocycleChoice::KernelBasis),
        _ => {
            let parts: Vec<i64> = s
                .split(',')
                .map(|p| p.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| usage(format!("--cocycle: expected trivial, kernel-basis or w1,...,w8, got {s:?}")))?;
            let w: [i64; 8] =
                parts.try_into().map_err(|_| usage(format!("--cocycle: need exactly eight integers, got {s:?}")))?;
            Ok(CocycleChoice::Explicit(w))
        }
    }
}

fn quantum_check(exec: Exec, target: &Target, cocycle: &str, t: &str) -> Result<ExitCode> {
    let choice = parse_cocycle(cocycle)?;
    let t = parse_rational(t).map_err(|e| usage(e.to_string()))?;
    let maps = targets(exec, target)?;
    let reference = reference()?;

    let mut jobs: Vec<(RMap, Option<Cocycle>)> = Vec::new();
    for &r in &maps {
        match &choice {
            CocycleChoice::Trivial => jobs.push((r, None)),
            CocycleChoice::KernelBasis => {
                let rep = match cohomology3(r) {
                    Ok(rep) => rep,
                    Err(Error::NotASolution(_)) => {
                        eprintln!("{r} does not satisfy the tetrahedron equation");
                        return Ok(ExitCode::FAILURE);
                    }
                    Err(e) => return Err(e.into()),
                };
                for v in rep.ker.basis_vectors() {
                    let w: [i64; 8] = v.try_into().expect("kernel vectors live in Z^8");
                    jobs.push((r, Some(Cocycle::new(r, w, t.clone())?)));
                }
            }
            CocycleChoice::Explicit(w) => {
                let c = Cocycle::new(r, *w, t.clone()).map_err(|e| match e {
                    Error::NotACocycle { .. } | Error::Parameter(_) | Error::NotASolution(_) => usage(e.to_string()),
                    other => other.into(),
                })?;
                jobs.push((r, Some(c)));
            }
        }
    }
    if let CocycleChoice::Trivial = choice {
        // The twist parameter only matters for non-trivial cocycles, but is still validated.
        Cocycle::new_unchecked([0; 8], t.clone()).map_err(|e| usage(e.to_string()))?;
    }

    let verdicts = exec.map_slice(&jobs, |(r, c)| check_qte(*r, c.as_ref()));
    let mut w = BufWriter::new(io::stdout().lock());
    let mut failed = 0;
    for ((r, c), ok) in jobs.iter().zip(&verdicts) {
        let twist = match c {
            None => "trivial".to_string(),
            Some(c) => format!("w = {:?}, t = {}", c.w(), c.t()),
        };
        writeln!(w, "{} [{twist}]: {}", label(&reference, *r), if *ok { "PASS" } else { "FAIL" })?;
        failed += !ok as usize;
    }
    writeln!(w, "{} checks, {failed} failed", verdicts.len())?;
    w.flush()?;
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn compare_reference(exec: Exec, path: Option<PathBuf>, oracle_ids: &[u32]) -> Result<ExitCode> {
    let reference = match &path {
        None => reference()?,
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            let checked = match parse_reference(&text) {
                Ok(re) => re.validate().map(|()| re),
                Err(e @ Error::ReferenceInvariant { .. }) => Err(e),
                Err(e) => return Err(usage(format!("{}: {e}", p.display()))),
            };
            match checked {
                Ok(re) => re,
                Err(e) => {
                    println!("reference invalid: {e}");
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
    };
    for &id in oracle_ids {
        if reference.get(id).is_none() {
            return Err(usage(format!("--oracle-4cube: no catalogue entry R_{id}")));
        }
    }

    let set = solutions(exec);
    let reports = cohomology_all(set.as_slice(), exec)?;
    let diff = compare(&set, &reports, &reference)?;
    let mut w = BufWriter::new(io::stdout().lock());
    writeln!(w, "{}", diff.summary())?;
    for (name, list) in [("missing", &diff.missing), ("extra", &diff.extra)] {
        for &code in list.iter() {
            writeln!(w, "{name}: {:#08x} {}", code, RMap::from_code(code))?;
        }
    }
    for (name, list) in [
        ("cohomology mismatch", &diff.mismatched_cohomology),
        ("sigma mismatch", &diff.sigma_mismatches),
        ("nontriviality mismatch", &diff.nontrivial_mismatches),
        ("unreported", &diff.unreported),
    ] {
        for &id in list.iter() {
            writeln!(w, "{name}: R_{id}")?;
        }
    }

    let mut oracle_failures = 0;
    for &id in oracle_ids {
        let r = reference.get(id).expect("checked").rmap()?;
        let brute = enumerate_permitted4_bruteforce_with(r, exec);
        let agree = match enumerate_permitted4_propagate(r) {
            Ok(prop) => prop == brute,
            Err(_) => false,
        };
        writeln!(
            w,
            "4-cube oracle R_{id}: {} permitted colourings, propagation {}",
            brute.len(),
            if agree { "agrees" } else { "DISAGREES" }
        )?;
        oracle_failures += !agree as usize;
    }

    w.flush()?;
    Ok(if diff.is_empty() && oracle_failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
