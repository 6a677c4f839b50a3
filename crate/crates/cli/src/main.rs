//! Command-line front end: group-file parsing, subcommand dispatch, and
//! certificate/curve/catalog emission.

mod files;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use resfin::rfgrowth::{
    self, depth, fit_polynomial, rf_curve, ClassFilter, CurveSource, DepthOptions,
};
use resfin::separate::{certificate_to_record, separate_element, verify_certificate, SeparationMode};
use resfin::witness::{derived_witness, lcm_witness, GroupHandle, MalabelianContext};
use resfin::word::{display_word, free_names, parse_word, Word};
use resfin::GroupSpec;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "resfin",
    about = "Finite-quotient separation for matrix groups over localized polynomial rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Direct,
    Semisimple,
}

impl From<Mode> for SeparationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Direct => SeparationMode::Direct,
            Mode::Semisimple => SeparationMode::Semisimple,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Record,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Produce a separation certificate for a word in a matrix group.
    Separate {
        /// Group file path.
        group: PathBuf,
        /// Word over the group's generator names, e.g. "A B^-1" or "[A,B]".
        word: String,
        #[arg(long, value_enum, default_value = "direct")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "record")]
        format: Format,
    },
    /// Brute-force depth of a word in a free group over the catalog.
    Depth {
        /// Word over x, y, z, w (or x1..xk).
        word: String,
        #[arg(long, default_value_t = 2)]
        free_rank: usize,
        /// Restrict quotients: any | lie-products | ext-bounded:<e>.
        #[arg(long, default_value = "any")]
        class: String,
        /// Extend the default catalog from a file of permutation groups.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Require kernels invariant under rules from this file, or the
        /// built-in Nielsen generators with the value "nielsen".
        #[arg(long)]
        aut: Option<String>,
        #[arg(long, default_value_t = 30_000_000)]
        budget: u128,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Residual-finiteness growth curve (oracle or pipeline source).
    Curve {
        /// Oracle mode over a free group of this rank.
        #[arg(long, conflicts_with = "pipeline")]
        free_rank: Option<usize>,
        /// Pipeline mode over a group file.
        #[arg(long)]
        pipeline: Option<PathBuf>,
        #[arg(long, short = 'n')]
        n: usize,
        #[arg(long, value_enum, default_value = "direct")]
        mode: Mode,
        #[arg(long, default_value = "any")]
        class: String,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 30_000_000)]
        budget: u128,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Also print a log-log polynomial fit.
        #[arg(long)]
        fit: bool,
    },
    /// Derived-series witness word for a nontrivial element.
    Witness {
        /// Word over the context's generator names.
        word: String,
        #[arg(long, conflicts_with = "group")]
        free_rank: Option<usize>,
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long)]
        kappa: Option<usize>,
        #[arg(long)]
        kappa_max: Option<usize>,
    },
    /// Common multiple of a finite set of nontrivial words.
    Lcm {
        /// Words over the context's generator names.
        words: Vec<String>,
        #[arg(long, conflicts_with = "group")]
        free_rank: Option<usize>,
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        kappa: Option<usize>,
        #[arg(long)]
        kappa_max: Option<usize>,
    },
    /// Facts about a finite group of Lie type, e.g. `lietype info A1 q=7`.
    Lietype {
        #[command(subcommand)]
        sub: LietypeCmd,
    },
    /// Run the invariant suite against a group file.
    Check {
        group: PathBuf,
        /// Number of random words per check.
        #[arg(long, default_value_t = 100)]
        words: usize,
        /// Maximum word length.
        #[arg(long, default_value_t = 8)]
        len: usize,
    },
}

#[derive(Subcommand)]
enum LietypeCmd {
    /// Print order, defining characteristic, extension degree, and the
    /// Tits-exception flag.
    Info {
        /// Family and rank, e.g. A1, B2, C3, D4, 2A2.
        id: String,
        /// q=<prime power>
        q: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_spec(path: &PathBuf) -> Result<GroupSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading group file {}", path.display()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "group".to_string());
    files::parse_group_file(&name, &text)
}

fn parse_class(s: &str) -> Result<ClassFilter> {
    if s == "any" {
        Ok(ClassFilter::Any)
    } else if s == "lie-products" || s == "lie" {
        Ok(ClassFilter::LieProducts)
    } else if let Some(e) = s.strip_prefix("ext-bounded:") {
        Ok(ClassFilter::ExtBounded(e.parse().context("bad extension bound")?))
    } else {
        bail!("unknown class {s:?} (use any | lie-products | ext-bounded:<e>)");
    }
}

fn spec_word(spec: &GroupSpec, text: &str) -> Result<Word> {
    parse_word(text, &spec.generator_names()).map_err(|e| anyhow!("word: {e}"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Separate { group, word, mode, format } => {
            let spec = load_spec(&group)?;
            let w = spec_word(&spec, &word)?;
            let cert = separate_element(&spec, &w, mode.into())?;
            let outcome = verify_certificate(&spec, &cert);
            match format {
                Format::Record | Format::Csv => {
                    print!("{}", certificate_to_record(&spec, &cert));
                    println!("verified: {}", outcome.ok);
                }
                Format::Human => {
                    let names = spec.generator_names();
                    println!("word:        {}", display_word(&cert.word, &|i| names[i].clone()));
                    println!("mode:        {}", cert.mode.as_str());
                    println!("witness len: {}", cert.witness_len);
                    println!("entry:       ({}, {})", cert.entry_row, cert.entry_col);
                    println!("f:           {}", cert.entry_poly);
                    println!("n-vec:       {:?}", cert.reduction.n_vec);
                    match &cert.modulus {
                        resfin::separate::ModulusChoice::Prime(c) => {
                            println!("modulus:     m = {}, p = {}", c.m, c.p)
                        }
                        resfin::separate::ModulusChoice::Irreducible(c) => {
                            println!("modulus:     w = {}", c.poly)
                        }
                    }
                    println!("field size:  {}", cert.field_size);
                    println!("order bound: {}", cert.order_bound);
                    println!("verified:    {}", outcome.ok);
                }
            }
            if !outcome.ok {
                bail!("certificate failed verification: {:?}", outcome.reason);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Depth { word, free_rank, class, catalog, aut, budget, format } => {
            let names = free_names(free_rank);
            let w = parse_word(&word, &names).map_err(|e| anyhow!("word: {e}"))?;
            let cat = files::load_catalog(catalog.as_deref())?;
            let aut_rules = match aut.as_deref() {
                None => None,
                Some("nielsen") => Some(rfgrowth::nielsen_rules(free_rank)),
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading aut file {path}"))?;
                    Some(files::parse_aut_file(&text, free_rank)?)
                }
            };
            let opts = DepthOptions { filter: parse_class(&class)?, budget, aut: aut_rules };
            let rep = depth(free_rank, &w, &cat, &opts)?;
            match format {
                Format::Human => {
                    println!(
                        "depth({}) = {} via {} [class {}, invariance {}, exhaustive {}]",
                        display_word(&w, &|i| names[i].clone()),
                        rep.order,
                        rep.target_name,
                        rep.class,
                        rep.invariance_required,
                        rep.exhaustive
                    );
                }
                _ => {
                    println!("record: depth-report/v1");
                    println!("word: {}", display_word(&w, &|i| names[i].clone()));
                    println!("target: {}", rep.target_name);
                    println!("order: {}", rep.order);
                    println!("class: {}", rep.class);
                    println!("invariance-required: {}", rep.invariance_required);
                    println!("exhaustive: {}", rep.exhaustive);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve { free_rank, pipeline, n, mode, class, catalog, budget, format, fit } => {
            let cat = files::load_catalog(catalog.as_deref())?;
            let curve = match (&free_rank, &pipeline) {
                (Some(rank), None) => {
                    let opts = DepthOptions { filter: parse_class(&class)?, budget, aut: None };
                    rf_curve(&CurveSource::Oracle { rank: *rank, catalog: &cat, opts }, n)?
                }
                (None, Some(path)) => {
                    let spec = load_spec(path)?;
                    rf_curve(&CurveSource::Pipeline { spec: &spec, mode: mode.into() }, n)?
                }
                _ => bail!("choose exactly one of --free-rank (oracle) or --pipeline <group>"),
            };
            match format {
                Format::Csv => {
                    println!("n,value");
                    for (n, v) in &curve {
                        println!("{n},{v}");
                    }
                }
                _ => {
                    for (n, v) in &curve {
                        println!("n = {n}: {v}");
                    }
                }
            }
            if fit {
                let (c, d, resid) = fit_polynomial(&curve)?;
                println!("fit: C = {c:.4}, d = {d:.4}, max-log-residual = {resid:.4}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { word, free_rank, group, level, kappa, kappa_max } => {
            let spec = group.as_ref().map(load_spec).transpose()?;
            let (ctx, names) = context_for(&spec, free_rank)?;
            let w = parse_word(&word, &names).map_err(|e| anyhow!("word: {e}"))?;
            let ctx = override_kappa(ctx, kappa, kappa_max);
            let native = ctx.group.to_native(&w);
            let rec = derived_witness(&ctx, &native, level)?;
            let namef = |i: usize| native_names(&spec, &names, i);
            for (k, v) in rec.record_lines(&namef) {
                println!("{k}: {v}");
            }
            println!("word: {}", display_word(&rec.word, &namef));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lcm { words, free_rank, group, kappa, kappa_max } => {
            if words.is_empty() {
                bail!("lcm needs at least one word");
            }
            let spec = group.as_ref().map(load_spec).transpose()?;
            let (ctx, names) = context_for(&spec, free_rank)?;
            let ctx = override_kappa(ctx, kappa, kappa_max);
            let parsed: Vec<Word> = words
                .iter()
                .map(|t| {
                    parse_word(t, &names)
                        .map(|w| ctx.group.to_native(&w))
                        .map_err(|e| anyhow!("word {t:?}: {e}"))
                })
                .collect::<Result<_>>()?;
            let rec = lcm_witness(&ctx, &parsed)?;
            let namef = |i: usize| native_names(&spec, &names, i);
            for (k, v) in rec.record_lines(&namef) {
                println!("{k}: {v}");
            }
            println!("word: {}", display_word(&rec.word, &namef));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lietype { sub } => {
            let LietypeCmd::Info { id, q } = sub;
            let q: u64 = q
                .strip_prefix("q=")
                .unwrap_or(&q)
                .parse()
                .context("bad q (use q=<prime power>)")?;
            let (family, rank) = parse_family(&id)?;
            let lid = resfin::lietype::LieTypeId::new(family, rank, q)?;
            let desc = resfin::lietype::descriptor_of(&lid);
            println!("name: {}", lid.name());
            println!("order: {}", resfin::lietype::lie_order(&lid));
            println!("characteristic: {}", lid.p);
            println!("extension-degree: {}", lid.e);
            println!(
                "tits-exception: {} ({})",
                resfin::lietype::is_tits_exception(&desc),
                desc.name()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { group, words, len } => {
            let spec = load_spec(&group)?;
            run_check(&spec, words, len)
        }
    }
}

fn native_names(spec: &Option<GroupSpec>, free: &[String], i: usize) -> String {
    match spec {
        Some(s) => s.generator_names()[i].clone(),
        None => free[i].clone(),
    }
}

fn context_for<'a>(
    spec: &'a Option<GroupSpec>,
    free_rank: Option<usize>,
) -> Result<(MalabelianContext<'a>, Vec<String>)> {
    match (spec, free_rank) {
        (Some(s), None) => Ok((MalabelianContext::matrix(s), s.generator_names())),
        (None, Some(k)) => Ok((MalabelianContext::free(k), free_names(k))),
        (None, None) => Ok((MalabelianContext::free(2), free_names(2))),
        (Some(_), Some(_)) => bail!("choose one of --group or --free-rank"),
    }
}

fn override_kappa(
    ctx: MalabelianContext<'_>,
    kappa: Option<usize>,
    kappa_max: Option<usize>,
) -> MalabelianContext<'_> {
    let k = kappa.unwrap_or(ctx.kappa);
    let km = kappa_max.unwrap_or(ctx.kappa_max).max(k);
    ctx.with_kappa(k, km)
}

fn parse_family(id: &str) -> Result<(resfin::lietype::Family, usize)> {
    use resfin::lietype::Family;
    let (family, rest) = if let Some(rest) = id.strip_prefix("2A") {
        (Family::TwoA, rest)
    } else if let Some(rest) = id.strip_prefix('A') {
        (Family::A, rest)
    } else if let Some(rest) = id.strip_prefix('B') {
        (Family::B, rest)
    } else if let Some(rest) = id.strip_prefix('C') {
        (Family::C, rest)
    } else if let Some(rest) = id.strip_prefix('D') {
        (Family::D, rest)
    } else {
        bail!("unknown family in {id:?} (use A, B, C, D, or 2A)");
    };
    let rank: usize = rest.parse().with_context(|| format!("bad rank in {id:?}"))?;
    Ok((family, rank))
}

/// The `check` subcommand: module invariants exercised against a group file.
fn run_check(spec: &GroupSpec, words: usize, max_len: usize) -> Result<ExitCode> {
    let mut rng = StdRng::seed_from_u64(42);
    let rank = spec.primary_indices().len();
    let handle = GroupHandle::Matrix(spec);
    let mut failures = 0;
    let mut line = |name: &str, ok: bool, detail: String| {
        println!("check {:<24} {} ({detail})", name, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    let consts = spec.generator_constants();
    line(
        "generator-constants",
        true,
        format!(
            "K = {}, C = {}, Phi = {}",
            consts.k,
            consts.c.map(|c| c.to_string()).unwrap_or_else(|| "n/a (char p)".into()),
            consts.phi
        ),
    );

    let rand_word = |rng: &mut StdRng, lo: usize| -> Word {
        let len = rng.gen_range(lo..=max_len.max(lo));
        handle.to_native(&Word::from_letters(
            (0..len)
                .map(|_| {
                    let i = rng.gen_range(0..rank);
                    if rng.gen_bool(0.5) {
                        resfin::word::Letter::inv_gen(i)
                    } else {
                        resfin::word::Letter::gen(i)
                    }
                })
                .collect(),
        ))
    };

    // evaluation is a homomorphism and inverses cancel
    let mut hom_ok = true;
    for _ in 0..words {
        let u = rand_word(&mut rng, 0);
        let v = rand_word(&mut rng, 0);
        let lhs = spec.evaluate_word(&u.concat(&v))?;
        let rhs = spec.evaluate_word(&u)?.mul(&spec.evaluate_word(&v)?, &spec.denominators);
        hom_ok &= lhs.eq_exact(&rhs, &spec.denominators);
        let w = rand_word(&mut rng, 1);
        hom_ok &= spec.is_identity_word(&w.concat(&w.inverse()))?;
    }
    line("word-evaluation", hom_ok, format!("{words} random word pairs"));

    // degree and coefficient bounds
    let mut deg_ok = true;
    let mut coeff_ok = true;
    for _ in 0..words {
        let w = rand_word(&mut rng, 1);
        deg_ok &= spec.check_degree_bound(&w)?.holds;
        if spec.characteristic == resfin::Char::Zero {
            coeff_ok &= spec.check_coeff_bound(&w)?.holds;
        }
    }
    line("degree-bound", deg_ok, format!("{words} random words"));
    if spec.characteristic == resfin::Char::Zero {
        line("coefficient-bound", coeff_ok, format!("{words} random words"));
    }

    // separation round trips on a handful of words
    let mut sep_ok = true;
    let mut separated = 0;
    for _ in 0..words.min(25) {
        let w = rand_word(&mut rng, 1);
        match separate_element(spec, &w, SeparationMode::Direct) {
            Ok(cert) => {
                separated += 1;
                sep_ok &= verify_certificate(spec, &cert).ok;
                let rec = certificate_to_record(spec, &cert);
                let back = resfin::separate::certificate_from_record(spec, &rec)?;
                sep_ok &= verify_certificate(spec, &back).ok;
                sep_ok &= rec == certificate_to_record(spec, &back);
            }
            Err(resfin::SeparateError::IdentityWord) => {}
            Err(e) => return Err(e.into()),
        }
    }
    line("separation-roundtrip", sep_ok, format!("{separated} certificates"));

    if failures == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
