use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use saddle_config::classify::verdict;
use saddle_config::configuration::validate;
use saddle_config::cp1_enum::{enumerate_cp1, FamilyTag};
use saddle_config::hyp_lift::{enumerate_hyperelliptic, target_signature};
use saddle_config::ribbon_genus::{ambient_genus, cell_complex_genus_oracle, euler_data};
use saddle_config::strata::{classify_components, genus_of, is_nonempty, Kind};
use saddle_config::{Configuration, Error, StratumSignature};

#[derive(Parser)]
#[command(name = "saddle-config", version, about = "Configurations of ĥomologous saddle connections on flat surfaces")]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, emptiness and hyperelliptic component of a stratum.
    Info {
        #[arg(value_name = "STRATUM", required_unless_present = "stratum")]
        positional: Option<StratumSignature>,
        #[arg(long)]
        stratum: Option<StratumSignature>,
    },
    /// All configurations of a genus-zero quadratic stratum.
    Enumerate {
        #[arg(long)]
        stratum: StratumSignature,
        #[arg(long)]
        family: Option<FamilyTag>,
        #[arg(long)]
        count_only: bool,
    },
    /// Configurations of the hyperelliptic component of a stratum.
    Lift {
        #[arg(long)]
        stratum: StratumSignature,
        /// Print the genus-zero stratum and ramification data instead.
        #[arg(long)]
        source: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Genus of the surface glued from a configuration file.
    Genus {
        file: PathBuf,
        #[arg(long)]
        explain: bool,
    },
    /// Check a configuration file against the admissibility rules.
    Validate { file: PathBuf },
    /// Hyperelliptic tests for a configuration in a stratum.
    TestHyp {
        file: PathBuf,
        #[arg(long)]
        stratum: StratumSignature,
    },
    /// Write every configuration of every small genus-zero stratum.
    Corpus {
        #[arg(long, default_value_t = 12)]
        max_sum: i32,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> Result<String, Failure> {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    text.map_err(|e| Failure::Usage(e.to_string()))
}

fn read_config(path: &Path) -> Result<Configuration, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Configuration::from_json(&text)?)
}

/// Genus-zero quadratic strata without marked points with `sum |k| <= bound`.
fn genus_zero_strata(bound: i32) -> Vec<StratumSignature> {
    fn parts(n: i32, max: i32, acc: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        out.push(acc.clone());
        for k in (1..=max.min(n)).rev() {
            acc.push(k);
            parts(n - k, k, acc, out);
            acc.pop();
        }
    }
    let mut all = vec![];
    parts(bound.max(0), bound.max(0), &mut vec![], &mut all);
    all.into_iter()
        .filter_map(|mut p| {
            let s = p.iter().sum::<i32>() + 4;
            if p.iter().sum::<i32>() + s > bound {
                return None;
            }
            p.extend(std::iter::repeat_n(-1, s as usize));
            StratumSignature::quadratic(p).ok()
        })
        .collect()
}

fn file_name(sig: &StratumSignature) -> String {
    let stem: String = sig
        .to_string()
        .chars()
        .map(|c| match c {
            '(' | ',' => '_',
            ')' => ' ',
            c => c,
        })
        .collect();
    format!("{}.json", stem.trim())
}

fn run(cli: Cli) -> Result<String, Failure> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Info { positional, stratum } => {
            let sig = stratum.or(positional).ok_or_else(|| Failure::Usage("no stratum given".into()))?;
            let genus = genus_of(&sig)?;
            let nonempty = is_nonempty(&sig)?;
            let components = if nonempty { Some(classify_components(&sig)?) } else { None };
            emit(&json!({ "stratum": sig, "genus": genus, "nonempty": nonempty, "components": components }), pretty)
        }
        Command::Enumerate { stratum, family, count_only } => {
            let all: Vec<Configuration> = enumerate_cp1(&stratum)?
                .into_iter()
                .filter(|(f, _)| family.is_none_or(|tag| f.tag == tag))
                .map(|(_, c)| c)
                .collect();
            if count_only {
                Ok(all.len().to_string())
            } else {
                emit(&all, pretty)
            }
        }
        Command::Lift { stratum, source, count_only } => {
            if source {
                let info = classify_components(&stratum)?;
                if !info.has_hyperelliptic {
                    return Err(Error::NoHyperellipticComponent(stratum.to_string()).into());
                }
                let rows: Vec<_> = info
                    .matches
                    .iter()
                    .map(|ctx| {
                        json!({
                            "family": ctx.family,
                            "source": ctx.source,
                            "ramified": ctx.ramified_orders(),
                            "target": target_signature(ctx).ok(),
                        })
                    })
                    .collect();
                return emit(&rows, pretty);
            }
            let all = enumerate_hyperelliptic(&stratum)?;
            if count_only {
                Ok(all.len().to_string())
            } else {
                emit(&all, pretty)
            }
        }
        Command::Genus { file, explain } => {
            let cfg = read_config(&file)?;
            let genus = ambient_genus(&cfg)?;
            if explain {
                let data = euler_data(&cfg)?;
                let oracle = cell_complex_genus_oracle(&cfg)?;
                emit(&json!({ "genus": genus, "euler": data, "oracle": oracle }), pretty)
            } else {
                Ok(genus.to_string())
            }
        }
        Command::Validate { file } => {
            let cfg = read_config(&file)?;
            let report = validate(&cfg);
            let text = emit(&report, pretty)?;
            if report.ok {
                Ok(text)
            } else {
                Err(Failure::Invalid(text))
            }
        }
        Command::TestHyp { file, stratum } => {
            if stratum.kind() != Kind::Quadratic {
                return Err(Error::NotQuadratic.into());
            }
            let cfg = read_config(&file)?;
            emit(&verdict(&cfg, &stratum)?, pretty)
        }
        Command::Corpus { max_sum, out } => {
            fs::create_dir_all(&out).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
            let strata = genus_zero_strata(max_sum);
            let written: Vec<Result<(String, usize), Failure>> = std::thread::scope(|scope| {
                let handles: Vec<_> = strata
                    .iter()
                    .map(|sig| {
                        let out = &out;
                        scope.spawn(move || -> Result<(String, usize), Failure> {
                            let configs: Vec<Configuration> = enumerate_cp1(sig)?.into_iter().map(|(_, c)| c).collect();
                            let path = out.join(file_name(sig));
                            let text = emit(&configs, pretty)?;
                            fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                            Ok((sig.to_string(), configs.len()))
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("corpus worker")).collect()
            });
            let mut rows = Vec::new();
            for w in written {
                let (sig, n) = w?;
                rows.push(json!({ "stratum": sig, "configurations": n }));
            }
            emit(&rows, pretty)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(text)) => {
            println!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
