//! `udcrystal` — enumeration, export and verification front-end.
//!
//! Exit codes: 0 verified / success, 1 verification failure (witness in the
//! output), 2 usage error.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use udcrystal::cartan::{CartanData, Word};
use udcrystal::d43::{crystal_graph, enumerate_bl, is_perfect_capped, D43, DEFAULT_PERFECT_CAP};
use udcrystal::expr::parse_expr;
use udcrystal::g2::rep::{check_commutators, check_gradation, check_nilpotency, v1_expand};
use udcrystal::g2::{closed_form_checks, geom_e, geom_eps, geom_gamma, G2Crystal, GeometricPoint};
use udcrystal::schubert::{verma_check, GeometricAction, SchubertCell};
use udcrystal::tropical::{ultra_discretize, DEFAULT_BOX_CAP};
use udcrystal::ud::{auto_derive, case_classify, verify_iso, UdPoint};
use udcrystal::Rational;

#[derive(Parser, Debug)]
#[command(name = "udcrystal", version, about = "G2(1) geometric crystal, its tropicalization and the D4(3) crystals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format: json (default), dot (graphs only) or text.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Action {
    /// The explicit G2(1) action on V_1 (indices 0, 1, 2).
    G2,
    /// The Schubert-cell action on the word (0,1,2,1,2,1).
    Schubert,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the elements of B_l.
    Enumerate {
        #[arg(long)]
        level: i64,
    },
    /// Crystal graph of B_l.
    Graph {
        #[arg(long)]
        level: i64,
    },
    /// Check perfectness conditions (i), (ii), (iv) of B_l.
    VerifyPerfect {
        #[arg(long)]
        level: i64,
        #[arg(long, default_value_t = DEFAULT_PERFECT_CAP)]
        cap: i64,
    },
    /// Check that Ω intertwines the tropical and combinatorial crystals on a box.
    VerifyIso {
        #[arg(long = "box")]
        radius: i64,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        ops: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_BOX_CAP)]
        cap: u64,
    },
    /// Tropicalized e_i shifts, with c live or specialized.
    Derive {
        #[arg(long)]
        index: usize,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
    },
    /// Which of the cases (e1)..(e6) holds at a point of Z^6.
    Classify {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<i64>,
    },
    /// Ultra-discretize a positive rational expression.
    Tropicalize {
        #[arg(long)]
        expr: String,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Apply e_i^c to a positive point and report ε_i, γ_i of the image.
    GeomEval {
        #[arg(long, value_delimiter = ',')]
        point: Vec<Rational>,
        #[arg(long)]
        op: String,
        #[arg(long)]
        c: Rational,
    },
    /// Check the Verma relation for (i, j) at seeded random points.
    Verma {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "g2")]
        action: Action,
    },
    /// Checks on the 15-dimensional representation and the cell formulas.
    RepCheck,
}

/// What a subcommand produced: output and whether it verified.
struct Report {
    json: Value,
    text: Option<String>,
    dot: Option<String>,
    ok: bool,
}

impl Report {
    fn new(json: Value) -> Self {
        Report { json, text: None, dot: None, ok: true }
    }

    fn verdict(mut self, ok: bool) -> Self {
        if let Value::Object(m) = &mut self.json {
            m.insert("status".into(), json!(if ok { "verified" } else { "failed" }));
        }
        self.ok = ok;
        self
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run(cmd: &Command) -> Result<Report, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    Ok(match cmd {
        Command::Enumerate { level } => {
            let c = D43::level(*level).map_err(|e| err(&e))?;
            let elems = enumerate_bl(*level).map_err(|e| err(&e))?;
            let text = elems.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("\n");
            let mut r = Report::new(json!({
                "level": level,
                "count": elems.len(),
                "elements": elems.iter().map(|b| to_json(&c.to_json(b))).collect::<Vec<_>>(),
            }));
            r.text = Some(text);
            r
        }
        Command::Graph { level } => {
            let c = D43::level(*level).map_err(|e| err(&e))?;
            let g = crystal_graph(&c, &enumerate_bl(*level).map_err(|e| err(&e))?);
            let mut r = Report::new(g.to_json());
            r.dot = Some(g.to_dot());
            r
        }
        Command::VerifyPerfect { level, cap } => {
            let rep = is_perfect_capped(*level, *cap).map_err(|e| err(&e))?;
            Report::new(to_json(&rep)).verdict(rep.perfect)
        }
        Command::VerifyIso { radius, ops, jobs, cap } => {
            let rep = verify_iso(*radius, ops, *jobs, *cap).map_err(|e| err(&e))?;
            Report::new(to_json(&rep)).verdict(rep.holds)
        }
        Command::Derive { index, c } => {
            if c.is_some_and(|c| c != 1 && c != -1) {
                return Err("--c must be 1 or -1".into());
            }
            Report::new(auto_derive(*index).map_err(|e| err(&e))?.to_json(*c))
        }
        Command::Classify { point } => {
            let x: [i64; 6] = point.as_slice().try_into().map_err(|_| "--point needs 6 integers".to_string())?;
            match case_classify(&UdPoint(x)) {
                Ok(rep) => {
                    let agree = rep.case == rep.combinatorial_case;
                    Report::new(to_json(&rep)).verdict(agree)
                }
                Err(e) => Report::new(json!({"point": x, "error": e.to_string()})).verdict(false),
            }
        }
        Command::Tropicalize { expr, vars } => {
            let names: Vec<&str> = vars.iter().map(String::as_str).collect();
            let e = parse_expr(expr, &names).map_err(|e| err(&e))?;
            Report::new(ultra_discretize(&e).to_json())
        }
        Command::GeomEval { point, op, c } => {
            let i = match op.as_str() {
                "e0" => 0,
                "e1" => 1,
                "e2" => 2,
                _ => return Err(format!("--op must be e0, e1 or e2, got `{op}`")),
            };
            let x = GeometricPoint::new(point.clone()).map_err(|e| err(&e))?;
            let y = geom_e(i, c, &x).map_err(|e| err(&e))?;
            let eps: Vec<Rational> = (0..3).map(|k| geom_eps(k, &y)).collect::<Result<_, _>>().map_err(|e| err(&e))?;
            let gamma: Vec<Rational> =
                (0..3).map(|k| geom_gamma(k, &y)).collect::<Result<_, _>>().map_err(|e| err(&e))?;
            Report::new(json!({"op": op, "c": c, "point": x, "image": y, "epsilon": eps, "gamma": gamma}))
        }
        Command::Verma { i, j, samples, seed, action } => {
            let cartan = CartanData::g2_affine();
            let cell;
            let act: &dyn GeometricAction = match action {
                Action::G2 => &G2Crystal,
                Action::Schubert => {
                    cell = SchubertCell::new(cartan.clone(), Word::g2_v1()).map_err(|e| err(&e))?;
                    &cell
                }
            };
            let rep = verma_check(&cartan, *i, *j, act, *samples, *seed).map_err(|e| err(&e))?;
            let ok = rep.variant_used.len() == 1;
            Report::new(to_json(&rep)).verdict(ok)
        }
        Command::RepCheck => {
            let cartan = CartanData::g2_affine();
            let outcome = |r: Result<(), udcrystal::g2::rep::RepViolation>| match r {
                Ok(()) => json!("ok"),
                Err(v) => to_json(&v),
            };
            let checks = [
                ("gradation", outcome(check_gradation(&cartan))),
                ("nilpotency", outcome(check_nilpotency())),
                ("commutators", outcome(check_commutators())),
                (
                    "v1_positive",
                    match v1_expand() {
                        Ok(v) if v.len() == 15 => json!("ok"),
                        Ok(v) => json!(format!("{} components", v.len())),
                        Err(e) => json!(e.to_string()),
                    },
                ),
            ];
            let cells: Vec<Value> = closed_form_checks().into_iter().map(|(n, ok)| json!({"name": n, "equal": ok})).collect();
            let ok = checks.iter().all(|(_, v)| v == "ok") && cells.iter().all(|c| c["equal"] == true);
            let mut m = serde_json::Map::new();
            for (k, v) in checks {
                m.insert(k.into(), v);
            }
            m.insert("closed_forms".into(), Value::Array(cells));
            Report::new(Value::Object(m)).verdict(ok)
        }
    })
}

fn render(rep: &Report, format: Format) -> Result<String, String> {
    Ok(match format {
        Format::Json => serde_json::to_string(&rep.json).expect("json") + "\n",
        Format::Dot => rep.dot.clone().ok_or("--format dot is only available for `graph`")?,
        Format::Text => match &rep.text {
            Some(t) => t.clone() + "\n",
            None => serde_json::to_string_pretty(&rep.json).expect("json") + "\n",
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|rep| render(&rep, cli.format).map(|s| (s, rep.ok)));
    let (out, ok) = match result {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &out),
        None => std::io::stdout().write_all(out.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(exit_status(ok))
}

fn exit_status(verified: bool) -> u8 {
    if verified {
        0
    } else {
        1
    }
}
