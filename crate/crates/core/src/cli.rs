//! Command-line front end.
//!
//! Rationals are written as numerator/denominator pairs; floats appear only
//! in the `states` and `limit` commands and always use 17 significant digits
//! so output is byte-stable between runs.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::Error;
use crate::fock::{build_states, gram_exact, gram_recurrence, vacuum_norm_closed, GramMatrix};
use crate::hermite::{hermite_classical, hermite_delta_closed, hermite_delta_rec};
use crate::limits::{limit_table, LimitQuantity};
use crate::params::DeformationParam;
use crate::report::RunReport;
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "deltafock",
    version,
    about = "Exact checks and exports for the deformed Heisenberg algebra and its Fock space"
)]
pub struct Cli {
    /// Output format (verify defaults to a plain text report).
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GramChoice {
    Exact,
    Recurrence,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteChoice {
    Algebra,
    Fock,
    Limits,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuantityChoice {
    Hermite,
    Kernel,
    #[value(name = "vacuum_norm")]
    VacuumNorm,
    Gaussian,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients of the deformed Hermite polynomial H_s by both routes, with the classical H_s.
    Hermite {
        #[arg(long)]
        smax: u32,
        #[arg(long)]
        s: i64,
    },
    /// Gram matrix of the number states in units of sqrt(s_max/pi).
    Gram {
        #[arg(long)]
        smax: u32,
        #[arg(long, value_enum, default_value = "exact")]
        method: GramChoice,
    },
    /// Run a verification suite; exit code 1 if any identity fails.
    Verify {
        #[arg(long)]
        smax: u32,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteChoice,
    },
    /// Sample the real wavefunction amplitudes over one period.
    States {
        #[arg(long)]
        smax: u32,
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Convergence table over a list of s_max values.
    Limit {
        #[arg(long, value_enum)]
        quantity: QuantityChoice,
        /// Comma-separated s_max values.
        #[arg(long, value_delimiter = ',', required = true)]
        smax: Vec<u32>,
        /// Polynomial degree for the hermite quantity.
        #[arg(long, default_value_t = 4)]
        s: u32,
    },
}

/// Failure raised by a command: either bad input or a runtime problem.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidDeformation(_) | Error::IndexOutOfRange { .. } | Error::EmptyParameterList => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

/// Output of a successful command and whether every identity held.
pub struct Output {
    pub text: String,
    pub exit_code: i32,
}

pub fn rational_json(q: &BigRational) -> Value {
    json!({"num": q.numer().to_string(), "den": q.denom().to_string()})
}

/// 17 significant digits, scientific notation.
pub fn float_str(v: f64) -> String {
    format!("{v:.16e}")
}

fn params_json(params: &DeformationParam) -> Value {
    json!({"s_max": params.s_max(), "delta_sq": format!("1/{}", params.s_max())})
}

fn envelope(command: &str, params: Value, data: Vec<Value>, scale: Option<&str>) -> String {
    let mut v = json!({"command": command, "params": params, "data": data});
    if let Some(s) = scale {
        v["scale"] = json!(s);
    }
    let mut text = serde_json::to_string_pretty(&v).expect("serializable");
    text.push('\n');
    text
}

pub fn cmd_hermite(s_max: u32, s: i64, format: Format) -> Result<String, CliError> {
    let params = DeformationParam::new(s_max)?;
    if s < 0 || s > s_max as i64 {
        return Err(CliError::Usage(format!("s = {s} must satisfy 0 <= s <= s_max = {s_max}")));
    }
    let rec = hermite_delta_rec(&params, s)?;
    let closed = hermite_delta_closed(&params, s)?;
    let classical = hermite_classical(s as u32);
    let rows: Vec<(usize, BigRational, BigRational, BigRational)> =
        (0..=s as usize).map(|k| (k, rec.coeff(k), closed.coeff(k), classical.coeff(k))).collect();
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("power,rec_num,rec_den,closed_num,closed_den,classical\n");
            for (k, r, c, h) in rows {
                out.push_str(&format!("{k},{},{},{},{},{}\n", r.numer(), r.denom(), c.numer(), c.denom(), h.numer()));
            }
            out
        }
        Format::Json => {
            let data = rows
                .iter()
                .map(|(k, r, c, h)| {
                    json!({"power": k, "recurrence": rational_json(r), "closed": rational_json(c), "classical": rational_json(h)})
                })
                .collect();
            let mut p = params_json(&params);
            p["s"] = json!(s);
            envelope("hermite", p, data, None)
        }
    })
}

pub fn cmd_gram(s_max: u32, method: GramChoice, format: Format) -> Result<String, CliError> {
    let params = DeformationParam::new(s_max)?;
    let (primary, other): (GramMatrix, Option<GramMatrix>) = match method {
        GramChoice::Exact => (gram_exact(&params)?, None),
        GramChoice::Recurrence => (gram_recurrence(&params, &vacuum_norm_closed(&params))?, None),
        GramChoice::Both => (gram_exact(&params)?, Some(gram_recurrence(&params, &vacuum_norm_closed(&params))?)),
    };
    let matches = |s: usize, sp: usize| other.as_ref().map(|g| g.get(s, sp) == primary.get(s, sp));
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("# scale=sqrt(s_max/pi)\n");
            out.push_str(&format!(
                "# s_max={s_max}; entry = coeff_num/coeff_den * sqrt(radicand_num/radicand_den) * scale\n"
            ));
            out.push_str("s,s_prime,coeff_num,coeff_den,radicand_num,radicand_den");
            out.push_str(if other.is_some() { ",match\n" } else { "\n" });
            for (s, sp, e) in primary.entries() {
                let (c, r) = (e.rational(), e.radicand());
                out.push_str(&format!("{s},{sp},{},{},{},{}", c.numer(), c.denom(), r.numer(), r.denom()));
                if let Some(m) = matches(s, sp) {
                    out.push_str(&format!(",{m}"));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let data = primary
                .entries()
                .map(|(s, sp, e)| {
                    let mut v = json!({"s": s, "s_prime": sp, "coeff": rational_json(e.rational()), "radicand": rational_json(e.radicand())});
                    if let Some(m) = matches(s, sp) {
                        v["match"] = json!(m);
                    }
                    v
                })
                .collect();
            let mut p = params_json(&params);
            p["method"] = json!(format!("{method:?}").to_lowercase());
            envelope("gram", p, data, Some("sqrt(s_max/pi)"))
        }
    })
}

pub fn cmd_verify(s_max: u32, suite: SuiteChoice, format: Option<Format>) -> Result<(String, RunReport), CliError> {
    let params = DeformationParam::new(s_max)?;
    let suite = match suite {
        SuiteChoice::Algebra => Suite::Algebra,
        SuiteChoice::Fock => Suite::Fock,
        SuiteChoice::Limits => Suite::Limits,
        SuiteChoice::All => Suite::All,
    };
    let report = run_suite(suite, &params)?;
    let text = match format {
        None => report.to_string(),
        Some(Format::Csv) => {
            let mut out = String::from("status,label,identity,detail\n");
            for c in &report.checks {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    c.status.as_str(),
                    csv_field(&c.label),
                    csv_field(&c.reference),
                    csv_field(&c.detail)
                ));
            }
            out
        }
        Some(Format::Json) => {
            let mut text = serde_json::to_string_pretty(&json!({
                "command": "verify",
                "params": params_json(&params),
                "data": report.to_json(),
            }))
            .expect("serializable");
            text.push('\n');
            text
        }
    };
    Ok((text, report))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const MIN_SAMPLES: usize = 16;

pub fn cmd_states(s_max: u32, samples: usize, format: Format) -> Result<String, CliError> {
    let params = DeformationParam::new(s_max)?;
    if samples < MIN_SAMPLES {
        return Err(CliError::Usage(format!("--samples must be at least {MIN_SAMPLES}")));
    }
    let states = build_states(&params)?;
    let half = params.phase_half_period();
    let grid: Vec<f64> = (0..samples).map(|i| -half + 2.0 * half * i as f64 / (samples - 1) as f64).collect();
    let rows: Vec<(f64, Vec<f64>)> =
        grid.iter().map(|&phi| (phi, states.iter().map(|st| st.amplitude(&params, phi)).collect())).collect();
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("# f_s(phi) = (-i)^s * column value; the phase (-i)^s is divided out\n");
            let names: Vec<String> = (0..states.len()).map(|s| format!("f_{s}")).collect();
            out.push_str(&format!("phi,{}\n", names.join(",")));
            for (phi, values) in rows {
                let vals: Vec<String> = values.iter().map(|&v| float_str(v)).collect();
                out.push_str(&format!("{},{}\n", float_str(phi), vals.join(",")));
            }
            out
        }
        Format::Json => {
            let data = rows.iter().map(|(phi, values)| json!({"phi": phi, "values": values})).collect();
            let mut p = params_json(&params);
            p["phase"] = json!("(-i)^s divided out");
            envelope("states", p, data, None)
        }
    })
}

pub fn cmd_limit(quantity: QuantityChoice, s_max_list: &[u32], s: u32, format: Format) -> Result<String, CliError> {
    let quantity = match quantity {
        QuantityChoice::Hermite => LimitQuantity::Hermite { s },
        QuantityChoice::Kernel => LimitQuantity::Kernel,
        QuantityChoice::VacuumNorm => LimitQuantity::VacuumNorm,
        QuantityChoice::Gaussian => LimitQuantity::Gaussian,
    };
    let table = limit_table(quantity, s_max_list)?;
    let columns = quantity.columns();
    Ok(match format {
        Format::Csv => {
            let mut out = format!("s_max,{}\n", columns.join(","));
            for (s_max, values) in &table.rows {
                let vals: Vec<String> = values.iter().map(|&v| float_str(v)).collect();
                out.push_str(&format!("{s_max},{}\n", vals.join(",")));
            }
            out
        }
        Format::Json => {
            let data = table
                .rows
                .iter()
                .map(|(s_max, values)| {
                    let mut v = json!({"s_max": s_max});
                    for (name, x) in columns.iter().zip(values) {
                        v[*name] = json!(x);
                    }
                    v
                })
                .collect();
            let mut p = json!({"quantity": quantity.name(), "s_max": s_max_list});
            if let LimitQuantity::Hermite { s } = quantity {
                p["s"] = json!(s);
            }
            envelope("limit", p, data, None)
        }
    })
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let data_format = cli.format.unwrap_or(Format::Csv);
    let (text, exit_code) = match &cli.command {
        Command::Hermite { smax, s } => (cmd_hermite(*smax, *s, data_format)?, EXIT_OK),
        Command::Gram { smax, method } => (cmd_gram(*smax, *method, data_format)?, EXIT_OK),
        Command::Verify { smax, suite } => {
            let (text, report) = cmd_verify(*smax, *suite, cli.format)?;
            (text, report.exit_code())
        }
        Command::States { smax, samples } => (cmd_states(*smax, *samples, data_format)?, EXIT_OK),
        Command::Limit { quantity, smax, s } => (cmd_limit(*quantity, smax, *s, data_format)?, EXIT_OK),
    };
    Ok(Output { text, exit_code })
}

/// Parses `args`, runs the command, writes the output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_FAILURE;
        }
    };
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            w.write_all(output.text.as_bytes())?;
            w.flush()
        }),
        None => io::stdout().lock().write_all(output.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_FAILURE;
    }
    output.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_rows() {
        let csv = cmd_hermite(2, 2, Format::Csv).unwrap();
        assert_eq!(csv.lines().nth(3), Some("2,2,1,2,1,4"));
        let csv = cmd_hermite(5, 0, Format::Csv).unwrap();
        assert_eq!(
            csv.lines().collect::<Vec<_>>(),
            vec!["power,rec_num,rec_den,closed_num,closed_den,classical", "0,1,1,1,1,1"]
        );
        assert!(matches!(cmd_hermite(1, 2, Format::Csv), Err(CliError::Usage(_))));
    }

    #[test]
    fn gram_rows() {
        let csv = cmd_gram(1, GramChoice::Exact, Format::Csv).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "# scale=sqrt(s_max/pi)");
        assert_eq!(&lines[3..], &["0,0,1,2,1,1", "0,1,0,1,1,1", "1,0,0,1,1,1", "1,1,1,1,1,1"]);
        let both = cmd_gram(4, GramChoice::Both, Format::Csv).unwrap();
        assert!(both.lines().skip(3).all(|l| l.ends_with(",true")));
    }

    #[test]
    fn json_envelope() {
        let v: Value = serde_json::from_str(&cmd_gram(2, GramChoice::Exact, Format::Json).unwrap()).unwrap();
        assert_eq!(v["command"], "gram");
        assert_eq!(v["params"]["delta_sq"], "1/2");
        assert_eq!(v["scale"], "sqrt(s_max/pi)");
        assert_eq!(v["data"][0]["coeff"], json!({"num": "3", "den": "8"}));
    }

    #[test]
    fn states_table() {
        let csv = cmd_states(3, 17, Format::Csv).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[1].split(',').count(), 5);
        let mid: Vec<f64> = lines[2 + 8].split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(mid[0], 0.0);
        assert!((mid[1] - std::f64::consts::PI.powf(-0.25)).abs() < 1e-15);
        assert_eq!(mid[2], 0.0);
        assert!(matches!(cmd_states(3, 8, Format::Csv), Err(CliError::Usage(_))));
    }

    #[test]
    fn float_formatting_is_fixed() {
        assert_eq!(float_str(0.1), "1.0000000000000001e-1");
        assert_eq!(float_str(-2.0), "-2.0000000000000000e0");
    }
}
