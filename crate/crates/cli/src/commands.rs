use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use porc_core::acceptance::CRITERIA;
use porc_core::dvrmod::{aut_order, aut_order_formula, hall_value};
use porc_core::exactalg::{is_prime, rational_string};
use porc_core::extcensus::{porc_fit, porc_search, PorcOutcome, DEFAULT_MODULI};
use porc_core::oracle::enumerate_lie_rings;
use porc_core::typelib::type_of_tuple;
use porc_core::{Caps, Census, DvrQuot, Gf, Mat, PorcFormula};
use serde_json::{json, Value};

use crate::args::{AutMethod, Command};
use crate::{CliError, Document, Report};

pub(crate) fn inputs(cmd: &Command) -> Value {
    match cmd {
        Command::Census { n, primes, engine } => json!({"n": n, "primes": primes, "engine": engine.to_string()}),
        Command::PorcFit {
            input,
            modulus,
            degmax,
            n,
        } => {
            json!({"input": input.display().to_string(), "modulus": modulus, "degmax": degmax, "n": n})
        }
        Command::Hall { lambda, mu, nu, q } => {
            json!({"lambda": lambda.to_string(), "mu": mu.to_string(), "nu": nu.to_string(), "q": q})
        }
        Command::Autcount { lambda, q, method } => {
            json!({"lambda": lambda.to_string(), "q": q, "method": format!("{method:?}").to_lowercase()})
        }
        Command::Typeof { q, matrices } => json!({"q": q, "matrices": matrices}),
        Command::Oracle { n, primes } => json!({"n": n, "primes": primes}),
        Command::Selftest { ids } => json!({"ids": ids}),
    }
}

pub(crate) fn execute(cmd: &Command, caps: &Caps) -> Result<Report, CliError> {
    match cmd {
        Command::Census { n, primes, engine } => {
            let mut census = Census::new(*engine, *caps);
            let mut r = Report::new(&["n", "p", "count"]);
            for &n in n {
                for &p in primes {
                    let count = census.census(n, p)?;
                    r.results.push(json!({"n": n, "p": p, "count": count.to_string()}));
                }
            }
            r.diagnostics.insert("engine".into(), json!(engine.to_string()));
            Ok(r)
        }
        Command::PorcFit {
            input,
            modulus,
            degmax,
            n,
        } => porc_fit_cmd(input, *modulus, *degmax, *n),
        Command::Hall { lambda, mu, nu, q } => {
            field(*q)?;
            let count = hall_value(lambda, mu, nu, *q, caps)?;
            let mut r = Report::new(&["lambda", "mu", "nu", "q", "count"]);
            r.results.push(json!({
                "lambda": lambda.to_string(),
                "mu": mu.to_string(),
                "nu": nu.to_string(),
                "q": q,
                "count": count.to_string(),
            }));
            Ok(r)
        }
        Command::Autcount { lambda, q, method } => {
            field(*q)?;
            let count = match method {
                AutMethod::Formula => aut_order_formula(lambda, &BigUint::from(*q)),
                AutMethod::Count => {
                    let k = lambda.largest().max(1);
                    let ring = if is_prime(*q) {
                        DvrQuot::integers(*q, k)?
                    } else {
                        DvrQuot::power_series(*q, k)?
                    };
                    BigUint::from(aut_order(lambda, &ring, caps)?)
                }
            };
            let mut r = Report::new(&["lambda", "q", "count"]);
            r.results
                .push(json!({"lambda": lambda.to_string(), "q": q, "count": count.to_string()}));
            Ok(r)
        }
        Command::Typeof { q, matrices } => {
            let f = field(*q)?;
            let gs = matrices
                .iter()
                .map(|s| parse_matrix(s, &f))
                .collect::<Result<Vec<_>, _>>()?;
            let t = type_of_tuple(&gs, &f)?;
            let columns: Vec<Value> = t
                .columns()
                .iter()
                .map(|c| json!({"degree": c.degree, "partitions": c.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>()}))
                .collect();
            let mut r = Report::new(&["dims", "type"]);
            r.results
                .push(json!({"dims": t.dims(), "type": t.to_string(), "columns": columns}));
            Ok(r)
        }
        Command::Oracle { n, primes } => {
            let mut r = Report::new(&["n", "p", "count"]);
            for &n in n {
                for &p in primes {
                    let count = enumerate_lie_rings(n, p, caps)?.count();
                    r.results.push(json!({"n": n, "p": p, "count": count.to_string()}));
                }
            }
            r.diagnostics.insert("engine".into(), json!("oracle"));
            Ok(r)
        }
        Command::Selftest { ids } => {
            let mut r = Report::new(&["id", "title", "passed", "detail"]);
            for c in CRITERIA.iter().filter(|c| ids.is_empty() || ids.contains(&c.id)) {
                let o = c.run(caps);
                eprintln!("{o}");
                r.failed |= !o.passed;
                r.results
                    .push(json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}));
            }
            Ok(r)
        }
    }
}

fn field(q: u64) -> Result<std::sync::Arc<Gf>, CliError> {
    Ok(Gf::new(q)?)
}

/// `"1,0;0,1"`: rows separated by `;`, entries by `,`.
fn parse_matrix(s: &str, f: &Gf) -> Result<Mat, CliError> {
    let rows: Vec<Vec<u32>> = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .ok()
                        .filter(|&v| v < f.order())
                        .ok_or_else(|| CliError::Input(format!("bad matrix entry {x:?}")))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input(format!("matrix {s:?} is not square")));
    }
    let m = Mat::from_rows(&rows);
    if !m.is_invertible(f) {
        return Err(CliError::Input(format!("matrix {s:?} is not invertible")));
    }
    Ok(m)
}

/// `(p, count)` samples from a census document, restricted to one `n`.
fn read_samples(input: &std::path::Path, n: Option<u32>) -> Result<(u32, BTreeMap<u64, BigInt>), CliError> {
    let text = std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let doc = Document::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let mut rows = Vec::new();
    for row in &doc.results {
        let get = |k: &str| {
            row.get(k)
                .ok_or_else(|| CliError::Input(format!("result row without {k:?}")))
        };
        let rn = get("n")?
            .as_u64()
            .ok_or_else(|| CliError::Input("n is not a number".into()))? as u32;
        let p = get("p")?
            .as_u64()
            .ok_or_else(|| CliError::Input("p is not a number".into()))?;
        let count = match get("count")? {
            Value::String(s) => s.parse::<BigInt>().ok(),
            Value::Number(x) => x.as_i64().map(BigInt::from),
            _ => None,
        }
        .ok_or_else(|| CliError::Input(format!("bad count at p={p}")))?;
        rows.push((rn, p, count));
    }
    let ns: BTreeSet<u32> = rows.iter().map(|r| r.0).collect();
    let n = match (n, ns.len()) {
        (Some(n), _) => n,
        (None, 1) => *ns.iter().next().unwrap(),
        (None, 0) => return Err(CliError::Input("no census rows in input".into())),
        (None, _) => return Err(CliError::Input(format!("input has n = {ns:?}; choose one with --n"))),
    };
    Ok((n, rows.into_iter().filter(|r| r.0 == n).map(|r| (r.1, r.2)).collect()))
}

fn porc_fit_cmd(
    input: &std::path::Path,
    modulus: Option<u64>,
    degmax: u32,
    n: Option<u32>,
) -> Result<Report, CliError> {
    let (n, samples) = read_samples(input, n)?;
    let mut r = Report::new(&["modulus", "residue", "degree", "coefficients", "formula"]);
    r.diagnostics.insert("n".into(), json!(n));
    let formula = match modulus {
        Some(m) => match porc_fit(&samples, m, degmax)? {
            PorcOutcome::Fitted(f) => Some(f),
            PorcOutcome::Rejected(rej) => {
                r.diagnostics.insert("status".into(), json!("rejected"));
                r.diagnostics.insert(
                    "rejection".into(),
                    json!({
                        "modulus": rej.modulus,
                        "degmax": rej.degmax,
                        "residue": rej.residue,
                        "prime": rej.prime,
                        "predicted": rational_string(&rej.predicted),
                        "actual": rej.actual.to_string(),
                        "suggestion": rej.suggestion(),
                    }),
                );
                return Ok(r);
            }
        },
        None => porc_search(&samples, &DEFAULT_MODULI, degmax)?,
    };
    let Some(f) = formula else {
        r.diagnostics.insert("status".into(), json!("no_fit"));
        r.diagnostics.insert("moduli".into(), json!(DEFAULT_MODULI));
        return Ok(r);
    };
    r.results = formula_rows(&f);
    r.diagnostics.insert("status".into(), json!("fitted"));
    r.diagnostics.insert(
        "validation".into(),
        json!({"fitted": f.fitted, "held_out": f.held_out, "excluded": f.excluded}),
    );
    Ok(r)
}

fn formula_rows(f: &PorcFormula) -> Vec<Value> {
    f.classes
        .iter()
        .map(|(res, poly)| {
            json!({
                "modulus": f.modulus,
                "residue": res,
                "degree": poly.degree().unwrap_or(0),
                "coefficients": poly.coeffs().iter().map(rational_string).collect::<Vec<_>>(),
                "formula": poly.to_string().replace('q', "p"),
            })
        })
        .collect()
}
