use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use colored_kh::algebra::SpectralSequence;
use colored_kh::colored::{
    assemble_colored_bicomplex, colored_jones, euler_identity_check, three_sequences,
};
use colored_kh::diagrams::{GaussPhrase, PdCode};
use colored_kh::khovanov::khovanov_homology;
use colored_kh::lee::{colored_rasmussen, lee_homology, lee_pages, s_knot, s_link, SLinkFormula};
use colored_kh::nano::{
    alpha_one, alpha_star, alpha_two, alpha_zero, functor_u, functor_v, functor_v1, functor_v2,
    homotopic_within, nanophrase_invariants, to_gauss, HomotopyData, NanoDocument, Nanophrase,
    SearchBounds, SignProfile, Verdict, DEFAULT_MAX_STATES,
};
use colored_kh::{Budget, Error, LaurentPoly};

#[derive(Parser)]
#[command(
    name = "ckh",
    version,
    about = "Khovanov, Lee and colored Jones invariants of links and nanophrases"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Crossing budget as `H` or `H,B` (homology, state sum); overrides CKH_BUDGET.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Integral Khovanov homology.
    Kh(DiagramArgs),
    /// Lee homology and the pages of its quantum filtration.
    Lee {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
    },
    /// Rasmussen invariant; with --n, the colored Rasmussen table.
    S {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, value_enum, default_value_t = Formula::Mean)]
        formula: Formula,
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
    },
    /// Colored Jones polynomial.
    ColoredJones {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Pages of the three spectral sequences of the colored bicomplex.
    Pages {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
    },
    /// Compares every page's signed rank polynomial with the colored Jones polynomial.
    EulerCheck {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
    },
    /// Image of a nanophrase under a functor.
    NanoMap {
        #[command(flatten)]
        phrase: PhraseArgs,
        #[arg(long, value_enum, default_value_t = Functor::V)]
        functor: Functor,
    },
    /// Bounded homotopy search between two nanophrases.
    NanoEqual {
        /// Homotopy data (alphabet, tau, nu, triples, shift).
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        p1: PathBuf,
        #[arg(long)]
        p2: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Extra letter occurrences allowed above the longer phrase.
        #[arg(long, default_value_t = 4)]
        extra_length: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Colored Jones polynomial and Khovanov homology of V(P).
    NanoInvariants {
        #[command(flatten)]
        phrase: PhraseArgs,
        /// One color per word (default: all 1).
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
    },
}

#[derive(Args)]
struct DiagramArgs {
    /// PD code JSON file.
    #[arg(long, conflicts_with = "gauss", required_unless_present = "gauss")]
    pd: Option<PathBuf>,
    /// Signed Gauss phrase file (must be realizable).
    #[arg(long)]
    gauss: Option<PathBuf>,
}

#[derive(Args)]
struct PhraseArgs {
    /// Nanophrase document.
    #[arg(long)]
    phrase: PathBuf,
    /// Homotopy data document; defaults to the keys of the phrase document.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Comma-separated symbols of L (overrides the `L:` key).
    #[arg(long = "l", value_delimiter = ',')]
    l: Option<Vec<String>>,
    /// Comma-separated symbols of L1 (overrides the `L1:` key).
    #[arg(long = "l1", value_delimiter = ',')]
    l1: Option<Vec<String>>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Formula {
    Mean,
    Difference,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Functor {
    V,
    V1,
    V2,
    U,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::SearchBudget(_) => 3,
            Error::Internal(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_diagram(args: &DiagramArgs) -> CliResult<PdCode> {
    match (&args.pd, &args.gauss) {
        (Some(p), _) => Ok(PdCode::parse_json(&read(p)?)?),
        (None, Some(g)) => Ok(GaussPhrase::parse(&read(g)?)?.to_pd()?),
        (None, None) => Err(invalid("one of --pd or --gauss is required")),
    }
}

struct LoadedPhrase {
    data: HomotopyData,
    phrase: Nanophrase,
    doc: NanoDocument,
}

fn load_phrase(args: &PhraseArgs) -> CliResult<LoadedPhrase> {
    let doc = NanoDocument::parse(&read(&args.phrase)?)?;
    let data = match &args.data {
        Some(p) => NanoDocument::parse(&read(p)?)?.data()?,
        None if doc.has_data() => doc.data()?,
        None => {
            return Err(invalid(
                "no homotopy data: pass --data or add an `alphabet:` line",
            ))
        }
    };
    let phrase = doc.phrase(&data)?;
    Ok(LoadedPhrase { data, phrase, doc })
}

fn symbol_set(
    explicit: &Option<Vec<String>>,
    key: &str,
    loaded: &LoadedPhrase,
) -> CliResult<Option<BTreeSet<usize>>> {
    match explicit {
        Some(names) => Ok(Some(
            names
                .iter()
                .map(|n| loaded.data.symbol(n))
                .collect::<Result<_, _>>()?,
        )),
        None => Ok(loaded.doc.symbol_set(key, &loaded.data)?),
    }
}

fn require(set: Option<BTreeSet<usize>>, key: &str) -> CliResult<BTreeSet<usize>> {
    set.ok_or_else(|| {
        invalid(format!(
            "missing {key}: pass --{} or add an `{key}:` line",
            key.to_lowercase()
        ))
    })
}

fn poly_json(p: &LaurentPoly) -> Value {
    json!({"terms": p.to_pairs(), "text": p.to_string()})
}

fn sequence_text(name: &str, ss: &SpectralSequence) -> String {
    let mut s = String::new();
    for page in ss.pages.iter().chain(std::iter::once(&ss.infinity)) {
        let label = if std::ptr::eq(page, &ss.infinity) {
            "inf".to_string()
        } else {
            page.r.to_string()
        };
        s.push_str(&format!(
            "{name} E_{label}: rank {}, chi = {}\n",
            page.total_rank(),
            page.signed_rank_sum()
        ));
    }
    s
}

/// Output of a subcommand in both formats.
struct Report {
    json: Value,
    text: String,
}

fn run(cli: Cli) -> CliResult<Report> {
    let budget = match &cli.budget {
        Some(b) => Budget::parse(b)?,
        None => Budget::from_env()?,
    };
    Ok(match cli.command {
        Command::Kh(args) => {
            let pd = load_diagram(&args)?;
            budget.check_homology("diagram", pd.crossing_count())?;
            let h = khovanov_homology(&pd)?;
            Report {
                json: h.to_json_value(),
                text: h.to_text(),
            }
        }
        Command::Lee { diagram, r_max } => {
            let pd = load_diagram(&diagram)?;
            budget.check_homology("diagram", pd.crossing_count())?;
            let h = lee_homology(&pd)?;
            let ss = lee_pages(&pd, r_max)?;
            let text = format!(
                "dimension {}\ngradings {:?}\n{}",
                h.dimension,
                h.gradings,
                sequence_text("lee", &ss)
            );
            Report {
                json: json!({"dimension": h.dimension, "gradings": h.gradings, "pages": ss.to_json_value()}),
                text,
            }
        }
        Command::S {
            diagram,
            formula,
            n,
        } => {
            let pd = load_diagram(&diagram)?;
            let formula = match formula {
                Formula::Mean => SLinkFormula::Mean,
                Formula::Difference => SLinkFormula::Difference,
            };
            match n {
                Some(n) => {
                    let table = colored_rasmussen(&pd, &n, &budget, formula)?;
                    let text = table
                        .entries
                        .iter()
                        .map(|e| {
                            format!(
                                "k = {:?} {} s = {} weighted = {}\n",
                                e.k, e.orientation, e.s, e.weighted
                            )
                        })
                        .collect();
                    Report {
                        json: table.to_json_value(),
                        text,
                    }
                }
                None => {
                    budget.check_homology("diagram", pd.crossing_count())?;
                    let s = if pd.component_count() == 1 {
                        s_knot(&pd)?
                    } else {
                        s_link(&pd, formula)?
                    };
                    Report {
                        json: json!({"s": s, "components": pd.component_count()}),
                        text: format!("s = {s}\n"),
                    }
                }
            }
        }
        Command::ColoredJones { diagram, n } => {
            let pd = load_diagram(&diagram)?;
            let j = colored_jones(&pd, &n, &budget)?;
            Report {
                json: json!({"n": n, "colored_jones": poly_json(&j)}),
                text: format!("{j}\n"),
            }
        }
        Command::Pages { diagram, n, r_max } => {
            let pd = load_diagram(&diagram)?;
            let b = assemble_colored_bicomplex(&pd, &n, None, &budget)?;
            let seqs = three_sequences(&b, r_max)?;
            let lee: Vec<Value> = seqs
                .lee
                .iter()
                .map(|sl| json!({"k": sl.k, "s": sl.s, "sequence": sl.sequence.to_json_value()}))
                .collect();
            let mut text = sequence_text("row_first", &seqs.row_first);
            text.push_str(&sequence_text("column_first", &seqs.column_first));
            for sl in &seqs.lee {
                text.push_str(&sequence_text(
                    &format!("lee k={:?} s={}", sl.k, sl.s),
                    &sl.sequence,
                ));
            }
            let json = json!({
                "n": n,
                "row_first": seqs.row_first.to_json_value(),
                "column_first": seqs.column_first.to_json_value(),
                "lee": lee,
            });
            Report { json, text }
        }
        Command::EulerCheck { diagram, n, r_max } => {
            let pd = load_diagram(&diagram)?;
            let report = euler_identity_check(&pd, &n, r_max, None, &budget)?;
            let mut text = format!("colored_jones {}\n", report.colored_jones);
            for seq in &report.sequences {
                for page in &seq.pages {
                    let r = page.r.map_or("inf".to_string(), |r| r.to_string());
                    let mark = if page.equal { "ok" } else { "DIFFERS" };
                    text.push_str(&format!("{} E_{r}: {} {mark}\n", seq.name, page.polynomial));
                }
            }
            text.push_str(&format!("all_equal {}\n", report.all_equal()));
            Report {
                json: report.to_json_value(),
                text,
            }
        }
        Command::NanoMap { phrase, functor } => {
            let loaded = load_phrase(&phrase)?;
            let l = require(symbol_set(&phrase.l, "L", &loaded)?, "L")?;
            let (image, target) = match functor {
                Functor::V => {
                    let l1 = require(symbol_set(&phrase.l1, "L1", &loaded)?, "L1")?;
                    let profile = SignProfile::new(&loaded.data, l, l1)?;
                    (
                        functor_v(&loaded.phrase, &loaded.data, &profile)?,
                        alpha_star(),
                    )
                }
                Functor::V1 => (functor_v1(&loaded.phrase, &loaded.data, &l)?, alpha_one()),
                Functor::V2 => (functor_v2(&loaded.phrase, &loaded.data, &l)?, alpha_two()),
                Functor::U => (functor_u(&loaded.phrase, &loaded.data, &l)?, alpha_zero()),
            };
            let text = format!("{}{}", target.to_text(), image.to_text(&target));
            let mut json = json!({"data": target.to_text(), "phrase": image.to_text(&target)});
            if functor == Functor::V {
                let g = to_gauss(&image)?;
                json["gauss"] = json!(g.to_string());
                json["realizable"] = json!(g.realizable());
            }
            Report { json, text }
        }
        Command::NanoEqual {
            data,
            p1,
            p2,
            depth,
            extra_length,
            max_states,
        } => {
            let data = NanoDocument::parse(&read(&data)?)?.data()?;
            let a = Nanophrase::parse(&read(&p1)?, &data)?;
            let b = Nanophrase::parse(&read(&p2)?, &data)?;
            let bounds = SearchBounds {
                depth,
                extra_length,
                max_states,
            };
            match homotopic_within(&a, &b, &data, bounds)? {
                Verdict::Yes { depth } => Report {
                    json: json!({"verdict": "yes", "depth": depth}),
                    text: format!("yes (depth {depth})\n"),
                },
                Verdict::NoWithinBound => Report {
                    json: json!({"verdict": "no-within-bound"}),
                    text: "no-within-bound\n".into(),
                },
            }
        }
        Command::NanoInvariants { phrase, n } => {
            let loaded = load_phrase(&phrase)?;
            let l = require(symbol_set(&phrase.l, "L", &loaded)?, "L")?;
            let l1 = require(symbol_set(&phrase.l1, "L1", &loaded)?, "L1")?;
            let profile = SignProfile::new(&loaded.data, l, l1)?;
            let n = n.unwrap_or_else(|| vec![1; loaded.phrase.word_count()]);
            let inv = nanophrase_invariants(&loaded.phrase, &loaded.data, &profile, &n, &budget)?;
            let kh = match &inv.khovanov {
                Some(h) => h.to_text(),
                None => "NotRealizable\n".into(),
            };
            let text = format!("colored_jones {}\nkhovanov\n{kh}", inv.colored_jones);
            Report {
                json: inv.to_json_value(),
                text,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: cannot configure threads: {e}");
            return ExitCode::from(1);
        }
    }
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("JSON output")
                ),
                Format::Text => print!("{}", report.text),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
