//! `garside` — build, query and verify Springer-type Garside groupoid
//! datasets.
//!
//! Morphism words are comma-separated simple indices with an optional
//! `^-1` suffix per factor, e.g. `12,5^-1,3`. The `lattice` subcommand
//! prints the simple indices of the five reference atomic loops, so words
//! for interesting elements can be composed from its output.

use clap::{Parser, Subcommand};
use garside_core::engine::{
    fraction_from_signed_word, minimal_positive_conjugators, positive_conjugates_graph,
    recurrent_orbit, Fraction, NormalForm,
};
use garside_core::parabolic::{
    adjacent, atomic_loops, build_standard_parabolic, contains_positive, pc, rank_of, z_element,
};
use garside_core::springer::{GroupoidData, ObjId, SimpleId};
use garside_core::verify::{
    class_name, find_reference_object, golden_suite, property_suite, CLASS_COVERS,
    CLASS_IRREDUCIBLE, CLASS_SUBSETS,
};
use garside_core::{instances, CartanType, Error};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "garside", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a dataset and save it.
    Build {
        /// Cartan type: A1..A4, B2 or E8.
        #[arg(long = "type")]
        cartan: String,
        /// Regular number d.
        #[arg(long)]
        d: usize,
        /// Twist exponent override (defaults to p⁻¹ mod q).
        #[arg(long)]
        eta: Option<i64>,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads for the interval enumeration.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the parameters and section counts of a dataset.
    Info { file: PathBuf },
    /// Left-weighted normal form of a morphism word.
    Nf { file: PathBuf, word: String },
    /// Iterated-swap orbit: recurrent representative, conjugator, circuit.
    SwapOrbit { file: PathBuf, word: String },
    /// Graph of positive conjugates (vertices and labelled edges).
    ConjGraph { file: PathBuf, word: String },
    /// Parabolic closure of an endomorphism: β, base object, conjugator
    /// and z-element.
    Pc { file: PathBuf, word: String },
    /// z-element of the standard parabolic β at an object.
    Z { file: PathBuf, beta: u32, object: u32 },
    /// Curve-graph adjacency of the closures of two endomorphisms.
    Adjacent {
        file: PathBuf,
        word1: String,
        word2: String,
    },
    /// Run verification suites and print the report.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Conjugacy-search depth for the generation checks.
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// The parabolic class lattice with its generators.
    Lattice { file: PathBuf },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn configure_jobs(jobs: Option<usize>) {
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn load(file: &PathBuf) -> Result<GroupoidData, Error> {
    garside_core::dataset::load(file)
}

/// Parse `12,5^-1,3` into signed simple indices.
fn parse_word(g: &GroupoidData, word: &str) -> Result<Vec<(SimpleId, bool)>, Error> {
    let mut out = Vec::new();
    for (pos, tok) in word.split(',').enumerate() {
        let tok = tok.trim();
        let (core, inv) = match tok.strip_suffix("^-1") {
            Some(c) => (c, true),
            None => (tok, false),
        };
        let idx: u32 = core.parse().map_err(|_| {
            Error::Usage(format!("malformed word at position {}: {tok:?}", pos + 1))
        })?;
        if idx as usize >= g.simples.len() {
            return Err(Error::Usage(format!(
                "simple index {idx} out of range at position {} (dataset has {})",
                pos + 1,
                g.simples.len()
            )));
        }
        out.push((SimpleId(idx), inv));
    }
    // composability, with positions
    let mut at: Option<ObjId> = None;
    for (pos, &(s, inv)) in out.iter().enumerate() {
        let (src, tgt) = if inv {
            (g.target(s), g.source(s))
        } else {
            (g.source(s), g.target(s))
        };
        if let Some(a) = at {
            if a != src {
                return Err(Error::Usage(format!(
                    "word is not composable at position {}: expected source object {}, factor has {}",
                    pos + 1,
                    a.0,
                    src.0
                )));
            }
        }
        at = Some(tgt);
    }
    Ok(out)
}

fn parse_fraction(g: &GroupoidData, word: &str) -> Result<Fraction, Error> {
    let signed = parse_word(g, word)?;
    fraction_from_signed_word(g, &signed)
}

fn format_fraction(g: &GroupoidData, f: &Fraction) -> String {
    match f.delta_form(g) {
        Ok((k, factors, src)) => {
            let ids: Vec<String> = factors.iter().map(|s| s.0.to_string()).collect();
            format!(
                "Δ^{k}, {} factors [{}] at object {}",
                factors.len(),
                ids.join(","),
                src.0
            )
        }
        Err(e) => format!("<unprintable: {e}>"),
    }
}

fn format_positive(_g: &GroupoidData, f: &NormalForm) -> String {
    let ids: Vec<String> = f.factors.iter().map(|s| s.0.to_string()).collect();
    format!(
        "Δ^{}, {} factors [{}] at object {}",
        f.delta,
        f.factors.len(),
        ids.join(","),
        f.src.0
    )
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Build { cartan, d, eta, out, jobs } => {
            configure_jobs(jobs);
            let cartan = CartanType::parse(&cartan)?;
            let started = std::time::Instant::now();
            let g = instances::build(cartan, d, eta)?;
            garside_core::dataset::save(&g, &out)?;
            println!(
                "built {} d={} in {:.1?}: {} interval elements, {} objects, {} simples, {} relations",
                g.lattice.root_system.cartan.label(),
                d,
                started.elapsed(),
                g.lattice.len(),
                g.objects.len(),
                g.simples.len(),
                g.rels.len()
            );
            println!("saved to {}", out.display());
            Ok(())
        }
        Command::Info { file } => {
            let g = load(&file)?;
            println!("type      {}", g.lattice.root_system.cartan.label());
            println!(
                "params    d={} h={} p={} q={} eta={}",
                g.params.d, g.params.h, g.params.p, g.params.q, g.params.eta
            );
            println!("interval  {}", g.lattice.len());
            println!("objects   {}", g.objects.len());
            println!("simples   {}", g.simples.len());
            println!("relations {}", g.rels.len());
            println!(
                "fingerprint {}",
                garside_core::dataset::fingerprint(&g.lattice)
            );
            Ok(())
        }
        Command::Nf { file, word } => {
            let g = load(&file)?;
            let f = parse_fraction(&g, &word)?;
            println!("{}", format_fraction(&g, &f));
            println!("inf {}  sup {}", f.inf(), f.sup());
            Ok(())
        }
        Command::SwapOrbit { file, word } => {
            let g = load(&file)?;
            let f = parse_fraction(&g, &word)?;
            if !f.is_endomorphism(&g) {
                return Err(Error::Usage("swap-orbit needs an endomorphism".into()));
            }
            let orbit = recurrent_orbit(&g, &f)?;
            println!("tail length  {}", orbit.tail_len);
            println!("circuit size {}", orbit.cycle.len());
            println!(
                "left conjugator c with c·x·c⁻¹ recurrent: {}",
                format_positive(&g, &orbit.left_conjugator)
            );
            println!("recurrent    {}", format_fraction(&g, &orbit.recurrent));
            for (i, y) in orbit.cycle.iter().enumerate() {
                println!("  sw^{i}: {}", format_fraction(&g, y));
            }
            Ok(())
        }
        Command::ConjGraph { file, word } => {
            let g = load(&file)?;
            let f = parse_fraction(&g, &word)?;
            if !f.is_endomorphism(&g) {
                return Err(Error::Usage("conj-graph needs an endomorphism".into()));
            }
            let orbit = recurrent_orbit(&g, &f)?;
            let Some(pos) = orbit.recurrent.as_positive() else {
                return Err(Error::Usage(
                    "the element is not conjugate to a positive endomorphism".into(),
                ));
            };
            let graph = positive_conjugates_graph(&g, pos, 1_000_000)?;
            println!("vertices {}", graph.vertices.len());
            println!("edges    {}", graph.edges.len());
            for (i, v) in graph.vertices.iter().enumerate() {
                println!("  v{i}: {}", format_positive(&g, v));
            }
            for &(a, s, b) in &graph.edges {
                println!("  v{a} -[{}]-> v{b}", s.0);
            }
            let mins = minimal_positive_conjugators(&g, pos)?;
            let ids: Vec<String> = mins.iter().map(|s| s.0.to_string()).collect();
            println!("minimal positive conjugators at the base: [{}]", ids.join(","));
            Ok(())
        }
        Command::Pc { file, word } => {
            let g = load(&file)?;
            let f = parse_fraction(&g, &word)?;
            if !f.is_endomorphism(&g) {
                return Err(Error::Usage("pc needs an endomorphism".into()));
            }
            let h = pc(&g, &f)?;
            println!("beta        {} (length {})", h.beta, g.lattice.length(h.beta));
            println!("base object {}", h.base.0);
            println!("conjugator  {}", format_fraction(&g, &h.conj));
            println!("z-element   {}", format_fraction(&g, &h.z));
            println!("standard    {}", h.is_standard());
            println!("rank        {}", rank_of(&g, &f)?);
            Ok(())
        }
        Command::Z { file, beta, object } => {
            let g = load(&file)?;
            if object as usize >= g.object_count() {
                return Err(Error::Usage(format!(
                    "object {object} out of range ({} objects)",
                    g.object_count()
                )));
            }
            let sp = build_standard_parabolic(&g, beta)?;
            let z = z_element(&g, &sp, ObjId(object), false)?;
            println!("exponent {}", z.exponent);
            println!("z        {}", format_positive(&g, &z.power));
            Ok(())
        }
        Command::Adjacent { file, word1, word2 } => {
            let g = load(&file)?;
            let f1 = parse_fraction(&g, &word1)?;
            let f2 = parse_fraction(&g, &word2)?;
            for f in [&f1, &f2] {
                if !f.is_endomorphism(&g) {
                    return Err(Error::Usage("adjacent needs endomorphisms".into()));
                }
            }
            if f1.source(&g) != f2.source(&g) {
                return Err(Error::Usage(
                    "adjacent needs endomorphisms based at the same object".into(),
                ));
            }
            let h1 = pc(&g, &f1)?;
            let h2 = pc(&g, &f2)?;
            println!("pc1 beta {}  z {}", h1.beta, format_fraction(&g, &h1.z));
            println!("pc2 beta {}  z {}", h2.beta, format_fraction(&g, &h2.z));
            println!("adjacent {}", adjacent(&g, &h1, &h2)?);
            Ok(())
        }
        Command::Verify { file, suite, seed, depth, jobs } => {
            configure_jobs(jobs);
            let g = load(&file)?;
            let mut report = garside_core::verify::VerifyReport::default();
            match suite.as_str() {
                "golden" => report.merge(golden_suite(&g, depth)),
                "properties" => report.merge(property_suite(&g, seed, 500)),
                "all" => {
                    report.merge(golden_suite(&g, depth));
                    report.merge(property_suite(&g, seed, 500));
                }
                other => {
                    return Err(Error::Usage(format!(
                        "unknown suite {other:?} (expected golden, properties or all)"
                    )))
                }
            }
            print!("{}", report.render());
            if report.passed() {
                Ok(())
            } else {
                Err(Error::Verification("some checks failed".into()))
            }
        }
        Command::Lattice { file } => {
            let g = load(&file)?;
            let reference = find_reference_object(&g)?;
            println!("reference object u0 = {}", reference.u0.0);
            for (label, l) in ['s', 't', 'u', 'v', 'w'].iter().zip(&reference.loops) {
                let ids: Vec<String> = l.factors.iter().map(|s| s.0.to_string()).collect();
                println!("  loop {label} = [{}]", ids.join(","));
            }
            println!("classes:");
            let loops0 = atomic_loops(&g, reference.u0);
            for (ci, subset) in CLASS_SUBSETS.iter().enumerate() {
                let mut beta = g.object_elem(reference.u0);
                for &i in *subset {
                    let f = Fraction::from_positive(reference.loops[i].clone());
                    beta = g
                        .lattice
                        .meet(beta, garside_core::parabolic::scpc_fraction(&g, &f));
                }
                let nloops = loops0
                    .iter()
                    .filter(|l| contains_positive(&g, beta, l))
                    .count();
                println!(
                    "  {:<13} beta {:<6} rank {}  irreducible {}  loops-at-u0 {}",
                    class_name(subset),
                    beta,
                    g.lattice.rank() / g.params.p - g.lattice.length(beta),
                    CLASS_IRREDUCIBLE[ci],
                    nloops
                );
            }
            println!("cover relations:");
            for &(a, b) in &CLASS_COVERS {
                println!(
                    "  {} < {}",
                    class_name(CLASS_SUBSETS[a]),
                    class_name(CLASS_SUBSETS[b])
                );
            }
            Ok(())
        }
    }
}
