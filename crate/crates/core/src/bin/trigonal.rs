use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trigonal::catalog::{build_catalog, build_entry, entry_json, genus_table, genus_table_json, verify};
use trigonal::coset::{census, congruence_skeleton, enumerate_subgroup, export_skeleton, ExportFormat};
use trigonal::invariants::{group_json, invariants_report, isotrivial_quotient, JClass, MonodromyData};
use trigonal::modular::ModularWord;
use trigonal::presentation::{export_presentation, van_kampen, van_kampen_with_slopes, Flavor, PresentationFormat};
use trigonal::{Error, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "trigonal", version, about = "Monodromy and invariants of trigonal curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Cas,
}

#[derive(Subcommand)]
enum Cmd {
    /// Index and genus of Gamma_m(n) for all m | n <= max-n.
    GenusTable {
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Skeleton of Gamma_m(n).
    Skeleton {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Coset table of the subgroup generated by words in X, Y.
    Subgroup {
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Invariant report of a braid monodromy.
    Invariants {
        #[arg(long)]
        braids: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        slopes: Option<String>,
        /// Downgrade a failing infinity identity to a warning.
        #[arg(long)]
        lax: bool,
    },
    /// Zariski-van Kampen presentation.
    Presentation {
        #[arg(long)]
        braids: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        projective: bool,
        #[arg(long)]
        slopes: Option<String>,
        /// Also emit the relators for a3.
        #[arg(long)]
        all_three: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Universal curves of the genus-zero congruence subgroups.
    Catalog {
        /// `M,N`
        #[arg(long)]
        entry: Option<String>,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Dihedral quotient of an isotrivial curve.
    Isotrivial {
        #[arg(long)]
        j: JClass,
        #[arg(long)]
        r: u64,
    },
}

enum Failure {
    Verify(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn write_json(path: &Option<PathBuf>, v: &Value) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, serde_json::to_string_pretty(v).expect("json") + "\n")?;
    }
    Ok(())
}

fn parse_entry(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::Lib(Error::Parse(format!("entry must be M,N, got '{s}'")));
    let (m, n) = s.split_once(',').ok_or_else(bad)?;
    Ok((m.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::GenusTable { max_n, json } => {
            let rows = genus_table(max_n)?;
            println!("{:>3} {:>3} {:>6} {:>5} {:>4} {:>4} {:>4}", "m", "n", "index", "genus", "tf", "-id", "flag");
            for r in &rows {
                let flag = if r.discrepancy {
                    "DISCREPANCY"
                } else if r.genus_zero() {
                    "g0"
                } else {
                    ""
                };
                println!("{:>3} {:>3} {:>6} {:>5} {:>4} {:>4} {}", r.m, r.n, r.index, r.genus, r.torsion_free as u8, r.contains_minus_id as u8, flag);
            }
            write_json(&json, &genus_table_json(&rows))?;
        }
        Cmd::Skeleton { m, n, dot, json } => {
            let s = congruence_skeleton(m, n)?;
            let c = census(&s);
            println!("index {} genus {} regions {:?} torsion_free {} d {:?}", c.index, c.genus, c.region_widths, c.torsion_free, c.d);
            if let Some(p) = dot {
                fs::write(p, export_skeleton(&s, ExportFormat::Dot))?;
            }
            if let Some(p) = json {
                fs::write(p, export_skeleton(&s, ExportFormat::Json) + "\n")?;
            }
        }
        Cmd::Subgroup { gens, budget } => {
            let words = gens.split(',').filter(|w| !w.trim().is_empty()).map(ModularWord::parse).collect::<Result<Vec<_>, _>>()?;
            let t = enumerate_subgroup(&words, budget)?;
            let c = census(&trigonal::coset::build_skeleton(&t));
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "index": t.size,
                "sX": t.sx,
                "sY": t.sy,
                "genus": c.genus,
                "region_widths": c.region_widths,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        Cmd::Invariants { braids, d, slopes, lax } => {
            let md = MonodromyData::parse(&braids, d, slopes.as_deref())?;
            let warnings = md.validate(!lax).map_err(|e| Failure::Verify(e.to_string()))?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", serde_json::to_string_pretty(&invariants_report(&md)).expect("json"));
        }
        Cmd::Presentation { braids, d, projective, slopes, all_three, format } => {
            let md = MonodromyData::parse(&braids, d, slopes.as_deref())?;
            md.validate(true).map_err(|e| Failure::Verify(e.to_string()))?;
            let flavor = if projective { Flavor::Projective } else { Flavor::Affine };
            let p = if md.slopes.is_some() { van_kampen_with_slopes(&md, flavor, all_three)? } else { van_kampen(&md, flavor, all_three) };
            let f = match format {
                Format::Text => PresentationFormat::Text,
                Format::Cas => PresentationFormat::Cas,
            };
            print!("{}", export_presentation(&p, f));
        }
        Cmd::Catalog { entry, verify: do_verify, json } => {
            let entries = match entry {
                Some(s) => {
                    let (m, n) = parse_entry(&s)?;
                    vec![build_entry(m, n)?]
                }
                None => build_catalog()?,
            };
            let mut out = Vec::new();
            let mut failed = Vec::new();
            for e in &entries {
                let mut v = entry_json(e);
                println!("{:<12} fig {:<8} index {:>3} d {:>2} fibers {}", e.name(), e.figure, e.census.index, e.d, e.fibers.join("+"));
                if do_verify {
                    let r = verify(e);
                    for l in &r.lines {
                        println!("    {} {:<22} {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
                    }
                    if !r.passed() {
                        failed.push(r.entry.clone());
                    }
                    v["verify"] = r.to_json();
                }
                out.push(v);
            }
            write_json(&json, &json!({"schema_version": SCHEMA_VERSION, "entries": out}))?;
            if !failed.is_empty() {
                return Err(Failure::Verify(format!("failed entries: {}", failed.join(", "))));
            }
        }
        Cmd::Isotrivial { j, r } => {
            let q = isotrivial_quotient(j, r);
            println!("{}", json!({"schema_version": SCHEMA_VERSION, "Q": group_json(&q), "display": q.to_string()}));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 3,
                Error::BudgetExceeded(_) => 2,
                _ => 1,
            })
        }
        Err(Failure::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::from(1)
        }
    }
}
