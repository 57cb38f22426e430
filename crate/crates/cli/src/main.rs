use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rqns::catalog::{build_table, scan_conjecture_symmetric, verify_non_irreducible_counterexample, verify_size_class_claim};
use rqns::decider::{check_ncap_com, decide_cn, decide_cqns, decide_rqns, default_label_bound};
use rqns::morphism::{automorphism_group, find_isomorphism, isomorphisms_via_generators};
use rqns::presentation::{minimal_presentation, presentation_of_table, quotient_presentation, reduced_quotient_presentation};
use rqns::quotient::{minimal_generating_system, nilpotency_class};
use rqns::variety::separating_index;
use rqns::{Error, FiniteSemigroup, Ideal, Identity, NumericalSemigroup, ReesQuotient, Result};

const USAGE_ERROR: u8 = 64;

#[derive(Parser)]
#[command(name = "rqns", version, about = "Rees quotients of numerical semigroups")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Notable invariants of a numerical semigroup.
    Info {
        semigroup: NumericalSemigroup,
        #[arg(long)]
        json: bool,
    },
    /// The Rees quotient by a cutting ideal or a generated ideal.
    Quotient {
        semigroup: NumericalSemigroup,
        #[command(flatten)]
        ideal: IdealArgs,
        /// Print the table in JSON table format.
        #[arg(long)]
        json: bool,
    },
    /// A presentation of the semigroup, or of a quotient with zero.
    Present {
        semigroup: NumericalSemigroup,
        #[command(flatten)]
        ideal: OptionalIdealArgs,
        /// Present over the minimal generating system of the quotient.
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        json: bool,
    },
    /// Isomorphism test between two JSON tables.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// List every isomorphism.
        #[arg(long)]
        all: bool,
    },
    /// Automorphism group of a JSON table.
    Aut { table: PathBuf },
    /// Membership of a JSON table in one of the quotient classes.
    Decide {
        table: PathBuf,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Largest integer label tried in realization searches (default 4n²).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Conductor-cut quotients of all semigroups up to a Frobenius number.
    Table {
        #[arg(long, default_value_t = 10)]
        max_frobenius: u64,
        /// Directory receiving table.json and table.md.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pairwise isomorphism scan over symmetric semigroups.
    ScanConjecture {
        #[arg(long, default_value_t = 15)]
        max_frobenius: u64,
        /// Directory receiving conjecture_scan.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks that no irreducible semigroup realizes the quotient of <4,11,13,18>.
    VerifyCounterexample {
        #[arg(long)]
        json: bool,
    },
    /// The least r such that N/I_r falsifies an identity.
    Separate {
        identity: Identity,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct IdealArgs {
    /// Cut at k: the ideal {x in S : x >= k}.
    #[arg(long)]
    cut: Option<u64>,
    /// Ideal generators, comma separated.
    #[arg(long, value_delimiter = ',')]
    ideal: Option<Vec<u64>>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalIdealArgs {
    #[arg(long)]
    cut: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    ideal: Option<Vec<u64>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Cn,
    Cqns,
    Rqns,
    Ncom,
}

fn ideal_of(s: &NumericalSemigroup, cut: Option<u64>, gens: Option<&[u64]>) -> Result<Option<Ideal>> {
    match (cut, gens) {
        (Some(k), _) => Ideal::cutting(s, k).map(Some),
        (None, Some(g)) => Ideal::from_generators(s, g).map(Some),
        (None, None) => Ok(None),
    }
}

fn read_table(path: &Path) -> Result<FiniteSemigroup> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidTable(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let fail = |e: std::io::Error| Error::InvalidTable(format!("cannot write {}: {e}", dir.join(name).display()));
    fs::create_dir_all(dir).map_err(fail)?;
    fs::write(dir.join(name), contents).map_err(fail)
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn join<T: ToString>(values: impl IntoIterator<Item = T>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn info(s: &NumericalSemigroup, as_json: bool) -> Result<()> {
    let flags = if s.is_naturals() {
        None
    } else {
        Some((s.is_irreducible()?, s.is_symmetric()?, s.is_pseudo_symmetric()?))
    };
    if as_json {
        println!(
            "{}",
            pretty(&json!({
                "notation": s.small_element_notation(),
                "frobenius": s.frobenius(),
                "conductor": s.conductor(),
                "multiplicity": s.multiplicity(),
                "embedding_dimension": s.embedding_dimension(),
                "genus": s.genus(),
                "small_elements": s.small_elements(),
                "min_generators": s.min_generators(),
                "irreducible": flags.map(|f| f.0),
                "symmetric": flags.map(|f| f.1),
                "pseudo_symmetric": flags.map(|f| f.2),
            }))
        );
        return Ok(());
    }
    println!("semigroup            {}", s.generator_notation());
    println!("small elements       {}", s.small_element_notation());
    println!("frobenius number     {}", s.frobenius());
    println!("conductor            {}", s.conductor());
    println!("multiplicity         {}", s.multiplicity());
    println!("embedding dimension  {}", s.embedding_dimension());
    println!("genus                {}", s.genus());
    match flags {
        Some((irr, sym, pseudo)) => {
            let kind = if sym {
                "symmetric"
            } else if pseudo {
                "pseudo-symmetric"
            } else {
                "no"
            };
            println!("irreducible          {}", if irr { kind } else { "no" });
        }
        None => println!("irreducible          n/a"),
    }
    Ok(())
}

fn quotient(q: &ReesQuotient, as_json: bool) -> Result<()> {
    let t = q.table();
    if as_json {
        println!("{}", pretty(t));
        return Ok(());
    }
    println!("semigroup            {}", q.ambient());
    println!("ideal generated by   {}", join(q.ideal().min_ideal_generators()));
    println!("finite part          {}", join(q.finite_part()));
    println!();
    print!("{}", t.render_table());
    println!();
    println!("nilpotency class     {}", nilpotency_class(t)?);
    println!("minimal generators   {}", join(minimal_generating_system(t).iter().map(|&i| t.label(i))));
    Ok(())
}

fn iso(a: &FiniteSemigroup, b: &FiniteSemigroup, all: bool) -> Result<u8> {
    let maps = if all {
        isomorphisms_via_generators(a, b, &presentation_of_table(a)?)?
    } else {
        find_isomorphism(a, b)?.into_iter().collect()
    };
    if maps.is_empty() {
        println!("not isomorphic");
        return Ok(1);
    }
    for m in &maps {
        println!("{}", serde_json::to_string(&m.to_json(a, b)).expect("maps serialize"));
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Info { semigroup, json } => info(&semigroup, json)?,
        Command::Quotient { semigroup, ideal, json } => {
            let i = ideal_of(&semigroup, ideal.cut, ideal.ideal.as_deref())?.expect("clap requires one");
            quotient(&ReesQuotient::new(&semigroup, &i)?, json)?;
        }
        Command::Present {
            semigroup,
            ideal,
            reduced,
            json,
        } => {
            let p = match ideal_of(&semigroup, ideal.cut, ideal.ideal.as_deref())? {
                None => minimal_presentation(&semigroup),
                Some(i) if reduced => reduced_quotient_presentation(&semigroup, &i)?,
                Some(i) => quotient_presentation(&semigroup, &i)?,
            };
            if json {
                println!("{}", pretty(&p));
            } else {
                println!("{p}");
            }
        }
        Command::Iso { a, b, all } => return iso(&read_table(&a)?, &read_table(&b)?, all),
        Command::Aut { table } => {
            let t = read_table(&table)?;
            let group = automorphism_group(&t);
            println!("{} automorphisms", group.len());
            for f in &group {
                println!("{}", serde_json::to_string(&f.to_json(&t, &t)).expect("maps serialize"));
            }
        }
        Command::Decide {
            table,
            class,
            bound,
            json,
        } => {
            let t = read_table(&table)?;
            let bound = bound.unwrap_or_else(|| default_label_bound(&t));
            let cert = match class {
                ClassArg::Cn => decide_cn(&t),
                ClassArg::Cqns => decide_cqns(&t, bound),
                ClassArg::Rqns => decide_rqns(&t, bound),
                ClassArg::Ncom => check_ncap_com(&t),
            };
            if json {
                println!("{}", pretty(&cert));
            } else {
                println!("{cert}");
                if let rqns::Verdict::NotInClass { witness, .. } = &cert.verdict {
                    if !witness.is_empty() {
                        println!("  witness {}", witness.join(", "));
                    }
                }
            }
            return Ok(cert.exit_code() as u8);
        }
        Command::Table { max_frobenius, out } => {
            let report = build_table(max_frobenius)?;
            let claim = verify_size_class_claim(&report);
            let markdown = report.to_markdown();
            if let Some(dir) = out {
                write_file(&dir, "table.json", &pretty(&json!({ "table": report, "size_class_claim": claim })))?;
                write_file(&dir, "table.md", &markdown)?;
            }
            print!("{markdown}");
            println!();
            match claim.failing_pair {
                None => println!("isomorphic exactly when size and nilpotency class agree: yes"),
                Some((a, b)) => println!("isomorphic exactly when size and nilpotency class agree: no ({a} vs {b})"),
            }
        }
        Command::ScanConjecture { max_frobenius, out } => {
            let report = scan_conjecture_symmetric(max_frobenius)?;
            if let Some(dir) = out {
                write_file(&dir, "conjecture_scan.json", &pretty(&report))?;
            }
            println!("symmetric semigroups  {}", report.symmetric.len());
            println!("pairs                 {}", report.pairs);
            println!("isomorphism tests     {}", report.isomorphism_tests);
            println!("collisions            {}", report.collisions.len());
            for (a, b) in &report.collisions {
                println!("  {a} ~ {b}");
            }
            return Ok(u8::from(!report.collisions.is_empty()));
        }
        Command::VerifyCounterexample { json } => {
            let report = verify_non_irreducible_counterexample()?;
            if json {
                println!("{}", pretty(&report));
            } else {
                println!(
                    "{}: size {}, {} generators, class {}",
                    report.target, report.quotient_size, report.quotient_generators, report.nilpotency_class
                );
                for c in &report.candidates {
                    println!(
                        "  {} (F={}): {} generators, class {}, {}",
                        c.semigroup,
                        c.frobenius,
                        c.quotient_generators,
                        c.nilpotency_class,
                        if c.isomorphic { "isomorphic" } else { "not isomorphic" }
                    );
                }
                println!("irreducible realization exists: {}", if report.no_irreducible_realization { "no" } else { "yes" });
            }
            return Ok(u8::from(!report.no_irreducible_realization));
        }
        Command::Separate { identity, json } => {
            let sep = separating_index(&identity)?;
            let assignment: Vec<String> = identity
                .variables
                .iter()
                .zip(&sep.assignment)
                .map(|(v, x)| format!("{v}={x}"))
                .collect();
            if json {
                println!("{}", pretty(&json!({ "identity": identity.to_string(), "r": sep.r, "assignment": assignment })));
            } else {
                println!("Q_{} fails {} at {}", sep.r, identity, assignment.join(", "));
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_ERROR } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
