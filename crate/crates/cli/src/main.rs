use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use setpart_core::enumerate::{enumerate_ordered, enumerate_partitions};
use setpart_core::motzkin::{decode, encode, reflect, LabeledMotzkinPath};
use setpart_core::partition::{BlockWord, OrderedSetPartition, SetPartition};
use setpart_core::qseries::{generating_function, q_factorial, q_stirling, shifted_stirling};
use setpart_core::statistics::{CoordKind, ElementStatistic, StatSum, Statistic};
use setpart_core::verify::{self, Suite, VerificationReport, VerifyOptions};
use setpart_core::{phi_i, phi_with_certificate, Error};

/// Set partitions, their mak-type statistics and q-Stirling numbers.
#[derive(Debug, Parser)]
#[command(name = "setpart", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for verification sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List P_n^k (or OP_n^k with --ordered), one partition per line.
    Enumerate {
        n: usize,
        k: usize,
        #[arg(long)]
        ordered: bool,
    },
    /// Evaluate statistics on one partition.
    Stats {
        partition: String,
        /// Comma-separated names; `coords` expands to the eight coordinate sums.
        #[arg(long, default_value = "mak,makp,lmak,lmakp")]
        stats: String,
        /// Block index for mak_l.
        #[arg(long)]
        l: Option<usize>,
        /// One row of values per statistic, elements in block order.
        #[arg(long)]
        per_element: bool,
    },
    /// Generating function of a statistic over P_n^k or OP_n^k.
    Genfun {
        n: usize,
        k: usize,
        /// A statistic or a sum such as `mak+bmaj`.
        statistic: String,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        ordered: bool,
        #[arg(long, value_enum, default_value_t = Compare::None)]
        compare: Compare,
    },
    /// The q-Stirling number S_q(n, k).
    Qstirling {
        n: usize,
        k: usize,
        /// Divide by q^C(k,2).
        #[arg(long)]
        shifted: bool,
    },
    /// Apply the involution phi.
    Phi {
        partition: String,
        /// Print the gamma matrices as JSON.
        #[arg(long)]
        certificate: bool,
    },
    /// Apply the block exchange phi_i.
    PhiI {
        partition: String,
        #[arg(long)]
        i: usize,
    },
    /// Valued Motzkin path of a partition, or the partition of a path.
    Motzkin {
        /// A partition, or a path with --decode (text or JSON).
        input: String,
        #[arg(long)]
        ascii: bool,
        /// Read a path and print its partition.
        #[arg(long)]
        decode: bool,
        /// Mirror the path before output.
        #[arg(long)]
        reflect: bool,
    },
    /// Run an exhaustive verification suite.
    Verify {
        /// One of the suite names, or `all`.
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 10)]
        max_witnesses: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Compare {
    None,
    Qstirling,
    QstirlingTimesQfact,
}

enum Failure {
    Usage(String),
    Domain(String),
    Verification,
    /// Stdout was closed early, as in `setpart enumerate 12 | head`.
    Closed,
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        writeln!(std::io::stdout().lock(), $($arg)*)
    }};
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownStatistic(_) | Error::UnknownSuite(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            let _ = Cli::command()
                .error(clap::error::ErrorKind::ValueValidation, msg)
                .print();
            ExitCode::from(2)
        }
    }
}

fn print_json(v: &impl serde::Serialize) -> Outcome {
    out!("{}", serde_json::to_string_pretty(v).expect("values serialize"))?;
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Enumerate { n, k, ordered } => enumerate(cli, *n, *k, *ordered),
        Command::Stats {
            partition,
            stats,
            l,
            per_element,
        } => stats_cmd(cli, partition, stats, *l, *per_element),
        Command::Genfun {
            n,
            k,
            statistic,
            l,
            ordered,
            compare,
        } => genfun(cli, *n, *k, statistic, *l, *ordered, *compare),
        Command::Qstirling { n, k, shifted } => {
            let poly = if *shifted {
                if k > n {
                    return Err(Failure::Usage(format!("k = {k} exceeds n = {n}")));
                }
                shifted_stirling(*n, *k)?
            } else {
                q_stirling(*n, *k)
            };
            if cli.json {
                print_json(&poly)?;
            } else {
                out!("{poly}")?;
            }
            Ok(())
        }
        Command::Phi {
            partition,
            certificate,
        } => {
            let p: SetPartition = partition.parse()?;
            let cert = phi_with_certificate(&p)?;
            if *certificate {
                print_json(&cert)?;
            } else if cli.json {
                print_json(&json!({ "source": p, "image": cert.image }))?;
            } else {
                out!("{}", cert.image)?;
            }
            Ok(())
        }
        Command::PhiI { partition, i } => {
            let p: SetPartition = partition.parse()?;
            let image = phi_i(&p, *i)?;
            if cli.json {
                print_json(&json!({ "source": p, "i": i, "image": image }))?;
            } else {
                out!("{image}")?;
            }
            Ok(())
        }
        Command::Motzkin {
            input,
            ascii,
            decode: from_path,
            reflect: mirrored,
        } => motzkin_cmd(cli, input, *ascii, *from_path, *mirrored),
        Command::Verify {
            suite,
            n_max,
            max_witnesses,
        } => verify_cmd(cli, suite, *n_max, *max_witnesses),
    }
}

fn enumerate(cli: &Cli, n: usize, k: usize, ordered: bool) -> Outcome {
    if k > n {
        return Err(Failure::Usage(format!("k = {k} exceeds n = {n}")));
    }
    let lines: Vec<String> = if ordered {
        enumerate_ordered(n, k).map(|p| p.to_string()).collect()
    } else {
        enumerate_partitions(n, k).map(|p| p.to_string()).collect()
    };
    if cli.json {
        print_json(&lines)?;
    } else {
        for line in lines {
            out!("{line}")?;
        }
    }
    Ok(())
}

fn split_names(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name == "coords" {
            out.extend(CoordKind::ALL.iter().map(|c| c.name().to_string()));
        } else {
            out.push(name.to_string());
        }
    }
    out
}

fn stats_cmd(cli: &Cli, text: &str, list: &str, l: Option<usize>, per_element: bool) -> Outcome {
    let p: OrderedSetPartition = text.parse()?;
    let names = split_names(list);
    if per_element {
        let stats = names
            .iter()
            .map(|name| ElementStatistic::parse(name))
            .collect::<Result<Vec<_>, _>>()?;
        let order: Vec<usize> = p.blocks().into_iter().flatten().collect();
        let rows: Vec<(&str, Vec<i64>)> = stats
            .iter()
            .map(|s| {
                let row = s.row(&p);
                (s.name(), order.iter().map(|&e| row[e - 1]).collect())
            })
            .collect();
        if cli.json {
            let rows: serde_json::Map<String, Value> =
                rows.into_iter().map(|(name, row)| (name.to_string(), json!(row))).collect();
            print_json(&json!({ "partition": p, "elements": order, "rows": rows }))?;
        } else {
            let join = |xs: &[String]| xs.join(",");
            let header: Vec<String> = order.iter().map(usize::to_string).collect();
            out!("element,{}", join(&header))?;
            for (name, row) in rows {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                out!("{name},{}", join(&cells))?;
            }
        }
        return Ok(());
    }

    let stats = names
        .iter()
        .map(|name| Statistic::parse(name, l))
        .collect::<Result<Vec<_>, _>>()?;
    let values = stats.iter().map(|s| s.eval(&p)).collect::<Result<Vec<_>, _>>()?;
    if cli.json {
        let map: serde_json::Map<String, Value> = stats
            .iter()
            .zip(&values)
            .map(|(s, v)| (s.name(), json!(v)))
            .collect();
        print_json(&json!({ "partition": p, "stats": map }))?;
    } else {
        let header: Vec<String> = stats.iter().map(Statistic::name).collect();
        let cells: Vec<String> = values.iter().map(i64::to_string).collect();
        out!("{}", header.join(","))?;
        out!("{}", cells.join(","))?;
    }
    Ok(())
}

fn genfun(
    cli: &Cli,
    n: usize,
    k: usize,
    statistic: &str,
    l: Option<usize>,
    ordered: bool,
    compare: Compare,
) -> Outcome {
    let stat = StatSum::parse(statistic, l)?;
    let poly = if ordered {
        generating_function(enumerate_ordered(n, k), |p| stat.eval(p))?
    } else {
        generating_function(enumerate_partitions(n, k), |p| stat.eval(p))?
    };
    let expected = match compare {
        Compare::None => None,
        Compare::Qstirling => Some(q_stirling(n, k)),
        Compare::QstirlingTimesQfact => Some(&q_factorial(k) * &q_stirling(n, k)),
    };
    let difference = expected.as_ref().and_then(|e| e.first_difference(&poly));
    let verdict = expected.as_ref().map(|_| if difference.is_none() { "EQUAL" } else { "DIFFER" });

    if cli.json {
        let witness = difference
            .as_ref()
            .map(|(e, want, got)| json!({ "exponent": e, "expected": want.to_string(), "actual": got.to_string() }));
        print_json(&json!({
            "n": n,
            "k": k,
            "statistic": stat.to_string(),
            "family": if ordered { "ordered" } else { "canonical" },
            "polynomial": poly,
            "expected": expected,
            "verdict": verdict,
            "witness": witness,
        }))?;
    } else {
        out!("{poly}")?;
        if let Some(v) = verdict {
            match &difference {
                None => out!("{v}")?,
                Some((e, want, got)) => {
                    out!("{v}: coefficient of q^{e} is {got}, expected {want}")?
                }
            }
        }
    }
    if difference.is_some() {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn read_path(input: &str) -> Result<LabeledMotzkinPath, Failure> {
    if input.trim_start().starts_with('{') {
        serde_json::from_str(input).map_err(|e| Failure::Usage(format!("invalid path JSON: {e}")))
    } else {
        Ok(input.parse()?)
    }
}

fn motzkin_cmd(cli: &Cli, input: &str, ascii: bool, from_path: bool, mirrored: bool) -> Outcome {
    let mut path = if from_path {
        read_path(input)?
    } else {
        encode(&input.parse::<SetPartition>()?)
    };
    if mirrored {
        path = reflect(&path)?;
    }
    if from_path {
        let p = decode(&path)?;
        if cli.json {
            print_json(&json!({ "path": path, "partition": p }))?;
        } else {
            out!("{p}")?;
        }
    } else if cli.json {
        print_json(&path)?;
    } else if ascii {
        out!("{}", path.render_ascii())?;
    } else {
        out!("{path}")?;
    }
    Ok(())
}

fn verify_cmd(cli: &Cli, suite: &str, n_max: Option<usize>, max_witnesses: usize) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let opts = VerifyOptions {
        n_max,
        max_witnesses,
        threads: cli.threads,
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    for s in suites {
        let report = verify::run_streaming(s, &opts, &mut |f| eprintln!("FAIL [{s}] {f}"))?;
        if !cli.json {
            out!("{}", report.render_text())?;
        }
        reports.push(report);
    }
    if cli.json {
        if reports.len() == 1 {
            print_json(&reports[0])?;
        } else {
            print_json(&reports)?;
        }
    }
    if reports.iter().all(VerificationReport::passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn coords_expands_to_eight_names() {
        assert_eq!(split_names("coords").len(), 8);
        assert_eq!(split_names("mak, bmaj"), vec!["mak", "bmaj"]);
    }
}
