//! `kacmod`: composition factors of Kac modules from the command line.

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kacmod::codes::{code_to_theta, enumerate_codes};
use kacmod::diagrams::{build_diagram, render_ascii, strip_labeling};
use kacmod::factors::{brundan_witness, composition_factors, default_margin, primitive_set_oracle};
use kacmod::operators::lower_theta;
use kacmod::verify::{verify, Check, ORACLE_LIMIT};
use kacmod::{KacError, NqcTable, PartitionWeight, Theta, Weight};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kacmod", version, about = "Composition factors of Kac modules over gl(m|n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the composition factors of K(λ).
    Factors(Opts),
    /// List the index tuples θ labelling the factors.
    Theta(Opts),
    /// List permissible codes with their θ and factor weight.
    Codes(Opts),
    /// Print the relation table of the atypical roots.
    Nqc(Opts),
    /// Draw the composite Young diagram, optionally labelled by --theta.
    Diagram(Opts),
    /// Cross-check the weight through every independent route.
    Verify(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// Weight text; read one weight per line from stdin when omitted.
    weight: Option<String>,
    #[arg(long, value_enum, default_value_t = Notation::Shifted)]
    notation: Notation,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Oracle search margin (verify) or diagram slack (diagram).
    #[arg(long)]
    margin: Option<i64>,
    /// Index tuple selecting a strip labelling, e.g. 1,0,3,0.
    #[arg(long)]
    theta: Option<String>,
    /// Include lowering traces (factors).
    #[arg(long)]
    trace: bool,
    /// Check every factor against the raising criterion (factors).
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Notation {
    Shifted,
    Partition,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    #[value(alias = "ascii")]
    Text,
    Json,
}

/// Exit statuses, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok = 0,
    Invalid = 1,
    VerificationFailed = 2,
}

struct Output {
    body: String,
    status: Status,
}

fn parse_weight(text: &str, notation: Notation) -> Result<Weight, KacError> {
    match notation {
        Notation::Shifted => text.parse(),
        Notation::Partition => Weight::from_partition(&text.parse::<PartitionWeight>()?),
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn checks_text(checks: &[Check]) -> String {
    checks.iter().map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)).collect()
}

fn checks_status(checks: &[Check]) -> Status {
    if checks.iter().all(|c| c.passed) {
        Status::Ok
    } else {
        Status::VerificationFailed
    }
}

fn factors(lambda: &Weight, o: &Opts) -> Result<Output, KacError> {
    let fs = composition_factors(lambda)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for f in &fs.factors {
        let mut row = json!({
            "theta": f.theta,
            "weight": f.mu.to_string(),
            "partition": f.mu.to_partition().to_string(),
        });
        text += &format!("{}\t{}\t{}\n", f.theta, f.mu, f.mu.to_partition());
        if o.trace {
            let trace = lower_theta(lambda, &f.theta)?;
            for (s, w) in trace.intermediates.iter().enumerate().skip(1) {
                text += &format!("    stage {s}: {w} (drop {})\n", trace.kk[s - 1]);
            }
            row["trace"] = serde_json::to_value(&trace).expect("trace serializes");
        }
        rows.push(row);
    }
    if !o.verify {
        return Ok(match o.format {
            Format::Json => Output { body: json_text(&Value::Array(rows)), status: Status::Ok },
            Format::Text => Output { body: text, status: Status::Ok },
        });
    }

    let mut checks = Vec::new();
    for f in &fs.factors {
        let w = brundan_witness(lambda, &f.mu)?;
        checks.push(Check {
            name: "raising witness",
            passed: w.is_some(),
            detail: match w {
                Some(w) => format!("{} raised by {}", f.theta, w.theta_prime),
                None => format!("{} has no witness", f.theta),
            },
        });
    }
    if fs.lambda.degree() <= ORACLE_LIMIT {
        let margin = o.margin.unwrap_or_else(|| default_margin(lambda));
        let oracle = primitive_set_oracle(lambda, margin)?;
        checks.push(Check {
            name: "brute-force oracle",
            passed: oracle == fs.weights(),
            detail: format!("{} weights at margin {margin}", oracle.len()),
        });
    }
    let status = checks_status(&checks);
    let body = match o.format {
        Format::Json => json_text(&json!({ "factors": rows, "checks": checks })),
        Format::Text => text + &checks_text(&checks),
    };
    Ok(Output { body, status })
}

fn thetas(lambda: &Weight, o: &Opts) -> Result<Output, KacError> {
    let table = NqcTable::new(lambda)?;
    let set = kacmod::theta::enumerate(&table);
    let body = match o.format {
        Format::Json => serde_json::to_string(&set).expect("tuples serialize"),
        Format::Text => set.iter().map(|t| format!("{t}\n")).collect(),
    };
    Ok(Output { body, status: Status::Ok })
}

fn codes(lambda: &Weight, o: &Opts) -> Result<Output, KacError> {
    let table = NqcTable::new(lambda)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for code in enumerate_codes(&table) {
        let theta = code_to_theta(&table, &code)?;
        let mu = lower_theta(lambda, &theta)?.result;
        text += &format!("{code}\t{theta}\t{mu}\n");
        rows.push(json!({ "code": code, "text": code.to_string(), "theta": theta, "weight": mu.to_string() }));
    }
    let body = match o.format {
        Format::Json => json_text(&Value::Array(rows)),
        Format::Text => text,
    };
    Ok(Output { body, status: Status::Ok })
}

fn tuple(v: &[impl ToString]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn nqc(lambda: &Weight, o: &Opts) -> Result<Output, KacError> {
    let t = NqcTable::new(lambda)?;
    if o.format == Format::Json {
        return Ok(Output { body: serde_json::to_string(&t).expect("table serializes"), status: Status::Ok });
    }
    let mut s = format!("r = {}\n", t.r);
    if t.r > 0 {
        s += "   ";
        s += &(1..=t.r).map(|u| format!("{u:>3}")).collect::<String>();
        s += "\n";
        for a in 1..=t.r {
            s += &format!("{a:>3}");
            for u in 1..=t.r {
                s += &if u < a { "   ".into() } else { format!("{:>3}", t.relation(a, u)?) };
            }
            s += "\n";
        }
        let k_low: Vec<i64> = (1..=t.r).map(|a| t.k_low(a, 1)).collect::<Result<_, _>>()?;
        s += &format!("p     = {}\np_low = {}\n", tuple(&t.p), tuple(&t.plow));
        s += &format!("k     = {}\nk_low = {}\n", tuple(&t.k_steps()), tuple(&k_low));
    }
    Ok(Output { body: s, status: Status::Ok })
}

fn diagram(lambda: &Weight, o: &Opts) -> Result<Output, KacError> {
    let margin =
        usize::try_from(o.margin.unwrap_or(0)).map_err(|_| KacError::Parse("--margin must be non-negative".into()))?;
    let d = build_diagram(lambda, margin)?;
    let labeling = match &o.theta {
        Some(t) => Some(strip_labeling(lambda, &t.parse::<Theta>()?)?),
        None => None,
    };
    let picture = render_ascii(&d, labeling.as_ref());
    let body = match o.format {
        Format::Json => json_text(&json!({ "diagram": d, "labeling": labeling, "ascii": picture })),
        Format::Text => {
            let mut s = format!(
                "covariant:     {}\ncontravariant: {}\nshift:         {}\n",
                tuple(&d.covariant),
                tuple(&d.contravariant),
                d.shift
            );
            if let Some(l) = &labeling {
                let counts: Vec<String> =
                    l.counts.iter().map(|c| format!("{}:{}+{}", c.label, c.covariant, c.contravariant)).collect();
                s += &format!(
                    "labels:        {}\nremaining:     {}\n",
                    counts.join(" "),
                    l.remaining.partition_weight()
                );
            }
            s + "\n" + &picture
        }
    };
    Ok(Output { body, status: Status::Ok })
}

fn verify_cmd(lambda: &Weight, o: &Opts) -> Result<Output, KacError> {
    let checks = verify(lambda, o.margin)?;
    let status = checks_status(&checks);
    let body = match o.format {
        Format::Json => {
            json_text(&json!({ "weight": lambda.to_string(), "passed": status == Status::Ok, "checks": checks }))
        }
        Format::Text => checks_text(&checks),
    };
    Ok(Output { body, status })
}

type Handler = fn(&Weight, &Opts) -> Result<Output, KacError>;

fn run_one(cmd: &Command, text: &str) -> Output {
    let (o, f): (&Opts, Handler) = match cmd {
        Command::Factors(o) => (o, factors),
        Command::Theta(o) => (o, thetas),
        Command::Codes(o) => (o, codes),
        Command::Nqc(o) => (o, nqc),
        Command::Diagram(o) => (o, diagram),
        Command::Verify(o) => (o, verify_cmd),
    };
    match parse_weight(text, o.notation).and_then(|w| f(&w, o)) {
        Ok(out) => out,
        Err(e) => Output { body: format!("error: {e}\n"), status: Status::Invalid },
    }
}

fn opts(cmd: &Command) -> &Opts {
    match cmd {
        Command::Factors(o)
        | Command::Theta(o)
        | Command::Codes(o)
        | Command::Nqc(o)
        | Command::Diagram(o)
        | Command::Verify(o) => o,
    }
}

fn emit(out: &mut impl Write, err: &mut impl Write, o: Output) -> io::Result<Status> {
    let sink: &mut dyn Write = if o.status == Status::Invalid { err } else { out };
    sink.write_all(o.body.as_bytes())?;
    if !o.body.ends_with('\n') {
        sink.write_all(b"\n")?;
    }
    Ok(o.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let o = opts(&cli.command);

    let result = match &o.weight {
        Some(text) => emit(&mut out, &mut err, run_one(&cli.command, text)),
        None => (|| {
            let mut worst = Status::Ok;
            let mut first = true;
            for line in io::stdin().lock().lines() {
                let line = line?;
                let text = line.trim();
                if text.is_empty() || text.starts_with('#') {
                    continue;
                }
                if o.format == Format::Text {
                    if !first {
                        writeln!(out)?;
                    }
                    writeln!(out, "# {text}")?;
                }
                first = false;
                let mut res = run_one(&cli.command, text);
                if o.format == Format::Json && res.status != Status::Invalid {
                    // One compact document per input line.
                    let v: Value = serde_json::from_str(&res.body).expect("own output is JSON");
                    res.body = serde_json::to_string(&v).expect("values serialize");
                }
                worst = worst.max(emit(&mut out, &mut err, res)?);
            }
            Ok(worst)
        })(),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(Status::Invalid as u8)
        }
    }
}
