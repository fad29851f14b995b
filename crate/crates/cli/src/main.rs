use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use quiverlab::engine::DEFAULT_CAP;
use quiverlab::{
    DimVector, DynkinQuiver, Engine, EnumConfig, Error, ExtMethod, Field, KostantPartition, Lab, Pair,
    RepetitionQuiver, SoclePrediction, Verdict,
};
use serde_json::{json, Value};

const EXIT_FALSE: u8 = 3;
const EXIT_ABSTAIN: u8 = 4;

#[derive(Parser)]
#[command(name = "quiverlab", version, about = "Representations of Dynkin quivers over small prime fields")]
struct Cli {
    /// Quiver spec file ("type A 3" then "arrow 1 2" lines).
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,
    /// Standard orientation by name, e.g. A3, D4, E6.
    #[arg(long, global = true)]
    dynkin: Option<String>,
    /// Field orders used by enumerations.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,3")]
    field: Vec<u64>,
    /// Largest enumeration size allowed.
    #[arg(long, global = true, env = "QUIVERLAB_CAP", default_value_t = DEFAULT_CAP as u64)]
    cap: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Repetition quiver window as "lo,hi".
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GrassMode {
    Count,
    Strata,
    Components,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots in the order of the adapted reduced word.
    Roots,
    /// Kostant partitions of a dimension vector.
    Kp { gamma: String },
    /// dim Hom(M_a, M_b).
    Hom {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
    },
    /// dim Ext^1(M_a, M_b).
    Ext1 {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
    },
    /// Whether a <= b in the degeneration order.
    Order {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
    },
    /// Middle terms of extensions with quotient mu and sub nu.
    ExtSet {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
        #[arg(long, default_value = "u-enumeration")]
        method: ExtMethod,
    },
    /// The generic extension mu * nu.
    GenericExt {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
    },
    /// Minimal realized pairs with quotient dimension alpha.
    ExtMin {
        lambda: String,
        #[arg(long)]
        alpha: String,
    },
    /// Quiver Grassmannian point counts, strata or components.
    Grass {
        mode: GrassMode,
        lambda: String,
        #[arg(long)]
        beta: String,
    },
    SupportPair {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
    },
    Simplicity {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
    },
    Socle {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
    },
    DegreeReport {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
    },
    /// Labeled repetition quiver.
    RepQuiver,
    Epsilon {
        #[arg(num_args = 1..)]
        pair: Vec<String>,
    },
}

struct Report {
    json: Value,
    tsv: Vec<Vec<String>>,
    code: u8,
}

impl Report {
    fn ok(json: Value, tsv: Vec<Vec<String>>) -> Self {
        Report { json, tsv, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::UnsupportedField(_) => 2,
        Error::CapExceeded { .. } => 5,
        _ => 1,
    }
}

fn load_quiver(cli: &Cli) -> Result<DynkinQuiver, Error> {
    match (&cli.quiver, &cli.dynkin) {
        (Some(_), Some(_)) => Err(Error::Parse("give either --quiver or --dynkin, not both".into())),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            DynkinQuiver::from_spec(&text)
        }
        (None, Some(name)) => DynkinQuiver::from_name(name),
        (None, None) => Err(Error::Parse("a quiver is required: --quiver FILE or --dynkin NAME".into())),
    }
}

/// Split a comma at bracket depth zero; the first such comma separates the pair.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Accepts `a b`, `a ,b`, `a,b` and `a;b`.
fn split_pair(args: &[String]) -> Result<(String, String), Error> {
    let pieces: Vec<String> = args
        .iter()
        .map(|a| a.trim().trim_matches(',').trim().to_string())
        .filter(|a| !a.is_empty())
        .collect();
    match pieces.as_slice() {
        [a, b] => Ok((a.clone(), b.clone())),
        [one] => {
            let (a, b) = one
                .split_once(';')
                .or_else(|| split_top_level(one))
                .ok_or_else(|| Error::Parse(format!("expected two partitions in '{one}'")))?;
            Ok((a.trim().to_string(), b.trim().to_string()))
        }
        _ => Err(Error::Parse(format!("expected two partitions, got {}", pieces.len()))),
    }
}

fn parse_pair(lab: &Lab, args: &[String]) -> Result<(KostantPartition, KostantPartition), Error> {
    let (a, b) = split_pair(args)?;
    Ok((lab.parse(&a)?, lab.parse(&b)?))
}

fn parse_window(s: &str) -> Result<(i32, i32), Error> {
    let bad = || Error::Parse(format!("window '{s}' is not 'lo,hi'"));
    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn pair_json(lab: &Lab, (mu, nu): &Pair) -> Value {
    json!({"mu": lab.format(mu), "nu": lab.format(nu)})
}

fn classes_json(lab: &Lab, v: &[KostantPartition]) -> Vec<String> {
    v.iter().map(|l| lab.format(l)).collect()
}

fn rows_of<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<Vec<String>> {
    v.into_iter().map(|x| vec![x.to_string()]).collect()
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let fields = cli.field.iter().map(|&p| Field::new(p)).collect::<Result<Vec<_>, _>>()?;
    let config = EnumConfig::new(fields, cli.cap as u128)?;
    let lab = Arc::new(Lab::new(load_quiver(cli)?));
    let e = Engine::new(lab.clone(), config.clone());
    let enumeration = json!({"method": "enumeration", "fields": config.field_orders()});
    let report = match &cli.command {
        Command::Roots => {
            let q = lab.quiver();
            let word: Vec<usize> = lab.roots().word().iter().map(|&i| q.label(i)).collect();
            let mut tsv = Vec::new();
            let roots: Vec<Value> = (0..lab.roots().len())
                .map(|k| {
                    let r = lab.roots().root(k);
                    let name = lab.format(&lab.root_kp(k));
                    tsv.push(vec![k.to_string(), lab.format_dim(r), name.clone()]);
                    json!({
                        "index": k,
                        "dim": lab.format_dim(r),
                        "name": name,
                        "projective": lab.is_projective_root(k),
                    })
                })
                .collect();
            Report::ok(json!({"quiver": q.name(), "word": word, "roots": roots}), tsv)
        }
        Command::Kp { gamma } => {
            let g = lab.parse_dim(gamma)?;
            let kps = classes_json(&lab, &lab.kps(&g));
            Report::ok(
                json!({"gamma": lab.format_dim(&g), "count": kps.len(), "partitions": kps}),
                rows_of(&kps),
            )
        }
        Command::Hom { pair } | Command::Ext1 { pair } => {
            let (a, b) = parse_pair(&lab, pair)?;
            let (key, value) = match cli.command {
                Command::Hom { .. } => ("hom", lab.hom_dim(&a, &b)),
                _ => ("ext1", lab.ext_dim(&a, &b)),
            };
            Report::ok(
                json!({"a": lab.format(&a), "b": lab.format(&b), key: value, "method": "closed-form"}),
                rows_of([value]),
            )
        }
        Command::Order { pair } => {
            let (a, b) = parse_pair(&lab, pair)?;
            let leq = lab.leq(&a, &b);
            Report {
                json: json!({"a": lab.format(&a), "b": lab.format(&b), "leq": leq, "geq": lab.leq(&b, &a)}),
                tsv: rows_of([leq]),
                code: if leq { 0 } else { EXIT_FALSE },
            }
        }
        Command::ExtSet { pair, method } => {
            let (mu, nu) = parse_pair(&lab, pair)?;
            let r = e.ext_set_with(&mu, &nu, *method)?;
            let classes = classes_json(&lab, &r.classes);
            Report::ok(
                json!({
                    "mu": lab.format(&mu), "nu": lab.format(&nu), "classes": classes,
                    "method": r.method.to_string(), "fields": r.fields, "stable": r.stable,
                }),
                rows_of(&classes),
            )
        }
        Command::GenericExt { pair } => {
            let (mu, nu) = parse_pair(&lab, pair)?;
            let g = lab.format(&e.generic_ext(&mu, &nu)?);
            Report::ok(
                json!({"mu": lab.format(&mu), "nu": lab.format(&nu), "generic": g, "provenance": enumeration}),
                rows_of([g]),
            )
        }
        Command::ExtMin { lambda, alpha } => {
            let l = lab.parse(lambda)?;
            let a = lab.parse_dim(alpha)?;
            let b = l.total().checked_sub(&a).ok_or_else(|| {
                Error::DimensionMismatch(format!("{} exceeds {}", lab.format_dim(&a), lab.format_dim(l.total())))
            })?;
            let pairs = e.ext_min(&l, &a, &b)?;
            Report::ok(
                json!({
                    "lambda": lab.format(&l), "alpha": lab.format_dim(&a), "beta": lab.format_dim(&b),
                    "pairs": pairs.iter().map(|p| pair_json(&lab, p)).collect::<Vec<_>>(),
                    "provenance": enumeration,
                }),
                pairs.iter().map(|(m, n)| vec![lab.format(m), lab.format(n)]).collect(),
            )
        }
        Command::Grass { mode, lambda, beta } => grass(&e, *mode, lambda, beta)?,
        Command::SupportPair { pair } => {
            let (mu, nu) = parse_pair(&lab, pair)?;
            let r = e.is_support_pair(&mu, &nu)?;
            let witness = r.witness.as_ref().map(|w| lab.format(w));
            Report {
                json: json!({
                    "mu": lab.format(&mu), "nu": lab.format(&nu),
                    "support_pair": r.is_support, "witness": witness, "provenance": enumeration,
                }),
                tsv: vec![vec![r.is_support.to_string(), witness.unwrap_or_default()]],
                code: if r.is_support { 0 } else { EXIT_FALSE },
            }
        }
        Command::Simplicity { pair } => {
            let (mu, nu) = parse_pair(&lab, pair)?;
            let v = e.simplicity_necessary(&mu, &nu)?;
            let mut tsv = vec![vec![v.verdict.as_str().to_string()]];
            for r in &v.table {
                tsv.push(
                    [lab.format(&r.lambda)]
                        .into_iter()
                        .chain([r.nu_split, r.nu_lambda, r.mu_split, r.mu_lambda].map(|x| x.to_string()))
                        .collect(),
                );
            }
            let mut json = v.to_json(&lab);
            json["provenance"] = enumeration;
            Report {
                json,
                tsv,
                code: if v.verdict == Verdict::CannotBeSimple { EXIT_FALSE } else { 0 },
            }
        }
        Command::Socle { pair } => {
            let (mu, nu) = parse_pair(&lab, pair)?;
            let (predicted, code) = match e.socle_prediction(&mu, &nu)? {
                SoclePrediction::Predicted(s) => (Some(lab.format(&s)), 0),
                SoclePrediction::Abstain => (None, EXIT_ABSTAIN),
            };
            Report {
                json: json!({
                    "mu": lab.format(&mu), "nu": lab.format(&nu),
                    "predicted": predicted, "abstain": predicted.is_none(), "provenance": enumeration,
                }),
                tsv: rows_of([predicted.unwrap_or_else(|| "abstain".into())]),
                code,
            }
        }
        Command::DegreeReport { pair } => {
            let (mu, nu) = parse_pair(&lab, pair)?;
            let rows = e.degree_report(&mu, &nu)?;
            let tsv = rows
                .iter()
                .map(|r| {
                    vec![
                        lab.format(&r.lambda),
                        r.d.to_string(),
                        r.e.to_string(),
                        r.bound.to_string(),
                        r.generic_pair.to_string(),
                        r.ext_ger.to_string(),
                        r.epsilon.map(|x| x.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "lambda": lab.format(&r.lambda), "d": r.d, "e": r.e, "bound": r.bound,
                        "generic_pair": r.generic_pair, "ext_ger": r.ext_ger, "epsilon": r.epsilon,
                    })
                })
                .collect();
            Report::ok(
                json!({"mu": lab.format(&mu), "nu": lab.format(&nu), "rows": json_rows, "provenance": enumeration}),
                tsv,
            )
        }
        Command::RepQuiver => {
            let rq = repetition(cli, &lab)?;
            let q = lab.quiver();
            let mut tsv = Vec::new();
            let vertices: Vec<Value> = rq
                .labels()
                .iter()
                .map(|(&(i, p), &(k, m))| {
                    let name = lab.format(&lab.root_kp(k));
                    tsv.push(vec![q.label(i).to_string(), p.to_string(), name.clone(), m.to_string()]);
                    json!({"i": q.label(i), "p": p, "root": name, "m": m})
                })
                .collect();
            let heights: Vec<Value> = rq
                .heights_of()
                .iter()
                .enumerate()
                .map(|(i, &x)| json!([q.label(i), x]))
                .collect();
            Report::ok(
                json!({
                    "heights": heights, "window": [rq.window().0, rq.window().1],
                    "v_shift": quiverlab::repetition::V_SHIFT, "vertices": vertices,
                }),
                tsv,
            )
        }
        Command::Epsilon { pair } => {
            let (mu, nu) = parse_pair(&lab, pair)?;
            let rq = repetition(cli, &lab)?;
            let q = lab.quiver();
            let v1 = lab.v_lambda(&rq, &mu)?;
            let w1 = lab.w_gamma(&rq, mu.total())?;
            let v2 = lab.v_lambda(&rq, &nu)?;
            let w2 = lab.w_gamma(&rq, nu.total())?;
            let eps = rq.epsilon(q, &v1, &w1, &v2, &w2)?;
            Report::ok(
                json!({
                    "mu": lab.format(&mu), "nu": lab.format(&nu), "epsilon": eps,
                    "v_mu": v1.to_triples(q), "w_mu": w1.to_triples(q),
                    "v_nu": v2.to_triples(q), "w_nu": w2.to_triples(q),
                }),
                rows_of([eps]),
            )
        }
    };
    Ok(report)
}

fn repetition(cli: &Cli, lab: &Lab) -> Result<RepetitionQuiver, Error> {
    match &cli.window {
        Some(w) => RepetitionQuiver::with_window(lab, parse_window(w)?),
        None => RepetitionQuiver::new(lab),
    }
}

fn grass(e: &Engine, mode: GrassMode, lambda: &str, beta: &str) -> Result<Report, Error> {
    let l = e.parse(lambda)?;
    let b: DimVector = e.parse_dim(beta)?;
    if !b.le(l.total()) {
        return Err(Error::DimensionMismatch(format!(
            "{} is not below {}",
            e.format_dim(&b),
            e.format_dim(l.total())
        )));
    }
    let head = json!({"lambda": e.format(&l), "beta": e.format_dim(&b)});
    let report = match mode {
        GrassMode::Count => {
            let mut counts = Vec::new();
            let mut tsv = Vec::new();
            for &f in &e.config().fields {
                let c = e.point_count(&l, &b, f)?;
                counts.push(json!({"q": f.order(), "count": c as u64}));
                tsv.push(vec![f.order().to_string(), c.to_string()]);
            }
            let mut json = head;
            json["counts"] = Value::from(counts);
            Report::ok(json, tsv)
        }
        GrassMode::Strata => {
            let mut reports = Vec::new();
            let mut tsv = Vec::new();
            for &f in &e.config().fields {
                let r = e.strata(&l, &b, f)?;
                for s in &r.strata {
                    tsv.push(vec![
                        f.order().to_string(),
                        e.format(&s.mu),
                        e.format(&s.nu),
                        s.count.to_string(),
                        s.dim.to_string(),
                    ]);
                }
                reports.push(r.to_json(e));
            }
            Report::ok(Value::from(reports), tsv)
        }
        GrassMode::Components => {
            let realized = e.realized_pairs(&l, &b)?;
            let generic = e.generic_pairs(&l, &b)?;
            let ger = e.ext_ger(&l, &b)?;
            let mut json = head;
            json["generic_pairs"] = Value::from(generic.iter().map(|p| pair_json(e, p)).collect::<Vec<_>>());
            json["ext_ger"] = Value::from(ger.iter().map(|p| pair_json(e, p)).collect::<Vec<_>>());
            json["fields"] = Value::from(realized.fields.clone());
            json["stable"] = Value::from(realized.stable);
            Report::ok(json, ger.iter().map(|(m, n)| vec![e.format(m), e.format(n)]).collect())
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).expect("json")),
                Format::Tsv => report.tsv.iter().map(|r| r.join("\t") + "\n").collect(),
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("quiverlab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn pair_forms() {
        let want = ("[1,1]".to_string(), "[2,2]".to_string());
        assert_eq!(split_pair(&s(&["[1,1]", ",[2,2]"])).unwrap(), want);
        assert_eq!(split_pair(&s(&["[1,1],[2,2]"])).unwrap(), want);
        assert_eq!(split_pair(&s(&["[1,1];[2,2]"])).unwrap(), want);
        assert_eq!(split_pair(&s(&["[1,1]", ",", "[2,2]"])).unwrap(), want);
        assert_eq!(split_pair(&s(&["1,0;0,1"])).unwrap(), ("1,0".into(), "0,1".into()));
        assert!(split_pair(&s(&["[1,1]"])).is_err());
    }

    #[test]
    fn windows() {
        assert_eq!(parse_window("-8,4").unwrap(), (-8, 4));
        assert!(parse_window("3").is_err());
    }
}
