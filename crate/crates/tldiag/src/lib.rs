//! Argument parsing and command execution for `tldiag`.
//!
//! Every command renders to a string so the binary stays a thin wrapper and
//! the output can be checked in tests.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::fmt::Write as _;
use tl_core::algebra::{faithful, jacobson_dim, module_report, semisimple};
use tl_core::combinat::{compositions, defect_set, dim_radical, walks, Multiindex};
use tl_core::diagrams::LinkPattern;
use tl_core::error::Error;
use tl_core::gram::{
    det_recursive_frac, det_ridout_frac, det_walkproduct_frac, gram_matrix, radical_basis, theta, theta_frac,
};
use tl_core::jones_wenzl::{jw, set_max_projector_size, split, ValencedLinkState};
use tl_core::scalars::{sample_parameters, QParam, Scalar};

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Internal(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::ProjectorTooLarge { .. } => CliError::Domain(e.to_string()),
            Error::InvalidPattern(_) | Error::Index { .. } | Error::DimensionMismatch { .. } => {
                CliError::Parse(e.to_string())
            }
            Error::Scalar(_) => CliError::Internal(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `generic`, `root:a/b`, `sign:+1` or `sign:-1`.
pub fn parse_q(text: &str) -> std::result::Result<QParam, String> {
    text.parse()
}

/// Parses comma-separated positive valences; an item `k^m` repeats `k` m times.
pub fn parse_sigma(text: &str) -> std::result::Result<Multiindex, String> {
    let mut entries = Vec::new();
    for item in text.split(',').map(str::trim) {
        let (value, count) = match item.split_once('^') {
            Some((v, c)) => (v, c.parse::<usize>().map_err(|_| format!("bad repeat count in {item:?}"))?),
            None => (item, 1),
        };
        let value: usize = value.parse().map_err(|_| format!("bad valence {item:?}"))?;
        if value == 0 {
            return Err(format!("valences must be positive, got {item:?}"));
        }
        entries.extend(std::iter::repeat_n(value, count));
    }
    if entries.is_empty() {
        return Err("empty multiindex".into());
    }
    Ok(Multiindex::new(entries))
}

/// Parses a grid bound `N,M`: multiindices with n ≤ N and entries ≤ M.
pub fn parse_grid(text: &str) -> std::result::Result<(usize, usize), String> {
    let (n, m) = text.split_once(',').ok_or_else(|| format!("expected N,M, got {text:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad size bound {n:?}"))?;
    let m = m.trim().parse().map_err(|_| format!("bad valence bound {m:?}"))?;
    Ok((n, m))
}

#[derive(Parser, Debug)]
#[command(name = "tldiag", version, about = "Exact computations in valenced Temperley-Lieb algebras")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    /// Largest Jones-Wenzl projector that may be expanded.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_projector_size: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OutputArgs {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV rows.
    #[arg(long, global = true)]
    pub csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl OutputArgs {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Direct,
    Walkprod,
    Ridout,
    Recursive,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Defect set and standard-module dimensions, with radical dimensions when q is given.
    Dims {
        #[arg(value_parser = parse_sigma)]
        sigma: Multiindex,
        #[arg(value_parser = parse_q)]
        q: Option<QParam>,
    },
    /// Walks over a multiindex ending at height s, with their link patterns.
    Walks {
        #[arg(value_parser = parse_sigma)]
        sigma: Multiindex,
        s: usize,
    },
    /// Gram determinant by one or all routes.
    Gram {
        #[arg(value_parser = parse_sigma, required_unless_present = "grid")]
        sigma: Option<Multiindex>,
        #[arg(required_unless_present = "grid")]
        s: Option<usize>,
        #[arg(value_parser = parse_q, required_unless_present = "grid")]
        q: Option<QParam>,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
        /// Sweep every multiindex with n ≤ N and entries ≤ M over the sample q values.
        #[arg(long, value_name = "N,M", value_parser = parse_grid, num_args = 0..=1, default_missing_value = "8,4")]
        grid: Option<(usize, usize)>,
    },
    /// Gram nullity and the trivalent basis of the radical.
    Radical {
        #[arg(value_parser = parse_sigma, required_unless_present = "grid")]
        sigma: Option<Multiindex>,
        #[arg(required_unless_present = "grid")]
        s: Option<usize>,
        #[arg(value_parser = parse_q, required_unless_present = "grid")]
        q: Option<QParam>,
        #[arg(long, value_name = "N,M", value_parser = parse_grid, num_args = 0..=1, default_missing_value = "8,4")]
        grid: Option<(usize, usize)>,
    },
    /// Semisimplicity verdict with its cross-checks.
    Semisimple {
        #[arg(value_parser = parse_sigma, required_unless_present = "grid")]
        sigma: Option<Multiindex>,
        #[arg(value_parser = parse_q, required_unless_present = "grid")]
        q: Option<QParam>,
        /// Also compute faithfulness and the Jacobson radical dimension.
        #[arg(long)]
        confirm: bool,
        #[arg(long, value_name = "N,M", value_parser = parse_grid, num_args = 0..=1, default_missing_value = "6,3")]
        grid: Option<(usize, usize)>,
    },
    /// Expansion of the Jones-Wenzl projector on s strands.
    Jw {
        s: usize,
        #[arg(value_parser = parse_q)]
        q: QParam,
    },
    /// Theta network evaluation.
    Theta {
        r: usize,
        s: usize,
        t: usize,
        #[arg(value_parser = parse_q)]
        q: QParam,
    },
}

/// Rendered output together with the exit status it should produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, exit_code: 0 }
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    set_max_projector_size(cli.max_projector_size);
    let format = cli.output.format();
    match &cli.command {
        Command::Dims { sigma, q } => cmd_dims(sigma, *q, format).map(Outcome::ok),
        Command::Walks { sigma, s } => Ok(Outcome::ok(cmd_walks(sigma, *s, format))),
        Command::Gram { grid: Some((n, m)), route, .. } => gram_grid(*n, *m, *route, format),
        Command::Gram { sigma, s, q, route, .. } => {
            cmd_gram(sigma.as_ref().unwrap(), s.unwrap(), q.unwrap(), *route, format)
        }
        Command::Radical { grid: Some((n, m)), .. } => radical_grid(*n, *m, format),
        Command::Radical { sigma, s, q, .. } => {
            cmd_radical(sigma.as_ref().unwrap(), s.unwrap(), q.unwrap(), format).map(Outcome::ok)
        }
        Command::Semisimple { grid: Some((n, m)), confirm, .. } => semisimple_grid(*n, *m, *confirm, format),
        Command::Semisimple { sigma, q, confirm, .. } => {
            cmd_semisimple(sigma.as_ref().unwrap(), q.unwrap(), *confirm, format)
        }
        Command::Jw { s, q } => cmd_jw(*s, *q, format).map(Outcome::ok),
        Command::Theta { r, s, t, q } => cmd_theta(*r, *s, *t, *q, format).map(Outcome::ok),
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",") + "\n"
}

fn set_text(values: &[usize]) -> String {
    format!("{{{}}}", values.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn state_text(x: &ValencedLinkState) -> String {
    if x.terms().is_empty() {
        return "0".into();
    }
    x.terms().iter().map(|(w, c)| format!("({c})*{w}")).collect::<Vec<_>>().join(" + ")
}

pub fn cmd_dims(sigma: &Multiindex, q: Option<QParam>, format: Format) -> CliResult<String> {
    let report = match q {
        Some(q) => Some(module_report(sigma, q, false)?),
        None => None,
    };
    let defects = defect_set(sigma);
    let dims: Vec<usize> = defects.iter().map(|&s| walks(sigma, s).len()).collect();
    let dim_tl: usize = dims.iter().map(|d| d * d).sum();
    Ok(match format {
        Format::Json => {
            let mut v = json!({ "sigma": sigma.entries(), "E": defects, "D": dims, "dim_TL": dim_tl });
            if let Some(r) = &report {
                v["q"] = json!(r.q.to_string());
                v["modules"] = r.to_json();
            }
            pretty(&v)
        }
        Format::Csv => {
            let mut out = String::from(if report.is_some() { "s,dim,dim_radical,dim_quotient\n" } else { "s,dim\n" });
            match &report {
                Some(r) => {
                    for row in &r.sectors {
                        out += &csv_row(&[row.s, row.dim, row.dim_radical, row.dim_quotient].map(|x| x.to_string()));
                    }
                }
                None => {
                    for (s, d) in defects.iter().zip(&dims) {
                        out += &csv_row(&[s.to_string(), d.to_string()]);
                    }
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "sigma = {sigma}").unwrap();
            writeln!(out, "E = {}", set_text(&defects)).unwrap();
            writeln!(out, "D = {}", set_text(&dims)).unwrap();
            writeln!(out, "dim TL = {dim_tl}").unwrap();
            if let Some(r) = &report {
                let rad: Vec<usize> = r.sectors.iter().map(|x| x.dim_radical).collect();
                let quo: Vec<usize> = r.sectors.iter().map(|x| x.dim_quotient).collect();
                writeln!(out, "q = {}", r.q).unwrap();
                writeln!(out, "dim rad = {}", set_text(&rad)).unwrap();
                writeln!(out, "dim Q = {}", set_text(&quo)).unwrap();
                writeln!(out, "E' = {}", set_text(&r.simple_sectors())).unwrap();
            }
            out
        }
    })
}

pub fn cmd_walks(sigma: &Multiindex, s: usize, format: Format) -> String {
    let ws = walks(sigma, s);
    let patterns: Vec<LinkPattern> = ws.iter().map(|w| split(sigma, w)).collect();
    match format {
        Format::Json => {
            let rows: Vec<Value> =
                ws.iter().zip(&patterns).map(|(w, p)| json!({ "walk": w.heights(), "pattern": p.to_json() })).collect();
            pretty(&json!({ "sigma": sigma.entries(), "s": s, "walks": rows }))
        }
        Format::Csv => {
            let mut out = String::from("walk,pattern\n");
            for (w, p) in ws.iter().zip(&patterns) {
                out += &csv_row(&[w.to_string(), p.to_string()]);
            }
            out
        }
        Format::Text => {
            let mut out = format!("sigma = {sigma}  s = {s}  count = {}\n", ws.len());
            for (w, p) in ws.iter().zip(&patterns) {
                writeln!(out, "{w}  {p}").unwrap();
            }
            out
        }
    }
}

/// One evaluated determinant route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteValue {
    pub route: &'static str,
    pub symbol: Option<String>,
    pub value: Scalar,
}

/// Evaluates the requested routes; the ones-only route is skipped for other multiindices.
pub fn determinant_routes(sigma: &Multiindex, s: usize, q: QParam, route: Route) -> CliResult<Vec<RouteValue>> {
    sigma.check_domain(q)?;
    let want = |r: Route| route == r || route == Route::All;
    let mut out = Vec::new();
    let mut closed = |name: &'static str, frac: tl_core::scalars::QFacFrac| -> CliResult<()> {
        let value = frac.eval(q).map_err(Error::from)?;
        out.push(RouteValue { route: name, symbol: Some(frac.to_string()), value });
        Ok(())
    };
    if want(Route::Walkprod) {
        closed("walkprod", det_walkproduct_frac(sigma, s))?;
    }
    if want(Route::Ridout) {
        if sigma.is_ones() {
            closed("ridout", det_ridout_frac(sigma.size(), s))?;
        } else if route == Route::Ridout {
            return Err(CliError::Parse(format!("the ridout route needs a multiindex of ones, got {sigma}")));
        }
    }
    if want(Route::Recursive) {
        closed("recursive", det_recursive_frac(sigma, s))?;
    }
    if want(Route::Direct) {
        let value = gram_matrix(sigma, s, q)?.det()?;
        out.insert(0, RouteValue { route: "direct", symbol: None, value });
    }
    Ok(out)
}

fn routes_agree(values: &[RouteValue]) -> bool {
    values.windows(2).all(|w| w[0].value == w[1].value)
}

pub fn cmd_gram(sigma: &Multiindex, s: usize, q: QParam, route: Route, format: Format) -> CliResult<Outcome> {
    let values = determinant_routes(sigma, s, q, route)?;
    let agree = routes_agree(&values);
    let dim = walks(sigma, s).len();
    let verdict = if agree { "AGREE" } else { "DISAGREE" };
    let text = match format {
        Format::Json => {
            let routes: Vec<Value> = values
                .iter()
                .map(|r| json!({ "route": r.route, "symbol": r.symbol, "value": r.value.to_json() }))
                .collect();
            pretty(&json!({
                "sigma": sigma.entries(), "s": s, "q": q.to_string(), "dim": dim,
                "routes": routes, "verdict": verdict,
            }))
        }
        Format::Csv => {
            let mut out = String::from("route,symbol,value\n");
            for r in &values {
                out += &csv_row(&[r.route.to_string(), r.symbol.clone().unwrap_or_default(), r.value.to_string()]);
            }
            out
        }
        Format::Text => {
            let mut out = format!("sigma = {sigma}  s = {s}  q = {q}  dim = {dim}\n");
            for r in &values {
                match &r.symbol {
                    Some(sym) => writeln!(out, "{}: det = {sym} = {}", r.route, r.value).unwrap(),
                    None => writeln!(out, "{}: det = {}", r.route, r.value).unwrap(),
                }
            }
            if values.len() > 1 {
                writeln!(out, "{verdict}").unwrap();
            }
            out
        }
    };
    Ok(Outcome { text, exit_code: if agree { 0 } else { EXIT_DISAGREE } })
}

fn grid_cases(max_size: usize, max_entry: usize) -> Vec<(Multiindex, QParam)> {
    let mut out = Vec::new();
    for sigma in compositions(max_size, max_entry) {
        for q in sample_parameters(5) {
            if sigma.check_domain(q).is_ok() {
                out.push((sigma.clone(), q));
            }
        }
    }
    out
}

fn grid_outcome(header: &str, rows: Vec<Vec<String>>, failures: usize, format: Format) -> Outcome {
    let text = match format {
        Format::Json => {
            let keys: Vec<&str> = header.split(',').collect();
            let records: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(keys.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v))).collect()))
                .collect();
            pretty(&json!({ "cases": records.len(), "failures": failures, "rows": records }))
        }
        _ => {
            let mut out = format!("{header}\n");
            for r in &rows {
                out += &csv_row(r);
            }
            if format == Format::Text {
                writeln!(out, "cases = {}  failures = {failures}", rows.len()).unwrap();
            }
            out
        }
    };
    Outcome { text, exit_code: if failures == 0 { 0 } else { EXIT_DISAGREE } }
}

fn gram_grid(max_size: usize, max_entry: usize, route: Route, format: Format) -> CliResult<Outcome> {
    let mut rows = Vec::new();
    let mut failures = 0;
    for (sigma, q) in grid_cases(max_size, max_entry) {
        for s in defect_set(&sigma) {
            let values = determinant_routes(&sigma, s, q, route)?;
            let agree = routes_agree(&values);
            failures += usize::from(!agree);
            let nonzero = !values[0].value.is_zero();
            rows.push(vec![
                sigma.to_string(),
                q.to_string(),
                s.to_string(),
                values.len().to_string(),
                nonzero.to_string(),
                if agree { "AGREE" } else { "DISAGREE" }.to_string(),
            ]);
        }
    }
    Ok(grid_outcome("sigma,q,s,routes,det_nonzero,verdict", rows, failures, format))
}

pub fn cmd_radical(sigma: &Multiindex, s: usize, q: QParam, format: Format) -> CliResult<String> {
    let g = gram_matrix(sigma, s, q)?;
    let nullity = g.nullity()?;
    let expected = dim_radical(sigma, s, q)?;
    let basis = radical_basis(sigma, s, q)?;
    Ok(match format {
        Format::Json => {
            let states: Vec<Value> = basis.iter().map(|t| t.to_json()).collect();
            pretty(&json!({
                "sigma": sigma.entries(), "s": s, "q": q.to_string(), "dim": g.dim(),
                "det": g.det()?.to_json(), "nullity": nullity, "dim_radical": expected,
                "radical_basis": states,
            }))
        }
        Format::Csv => {
            let mut out = String::from("source,state\n");
            for t in &basis {
                out += &csv_row(&[t.source.to_string(), state_text(&t.state)]);
            }
            out
        }
        Format::Text => {
            let mut out = format!("sigma = {sigma}  s = {s}  q = {q}  dim = {}\n", g.dim());
            writeln!(out, "nullity = {nullity}  dim rad = {expected}  basis size = {}", basis.len()).unwrap();
            for t in &basis {
                writeln!(out, "{} -> {}", t.source, state_text(&t.state)).unwrap();
            }
            out
        }
    })
}

fn radical_grid(max_size: usize, max_entry: usize, format: Format) -> CliResult<Outcome> {
    let mut rows = Vec::new();
    let mut failures = 0;
    for (sigma, q) in grid_cases(max_size, max_entry) {
        for s in defect_set(&sigma) {
            let g = gram_matrix(&sigma, s, q)?;
            let nullity = g.nullity()?;
            let expected = dim_radical(&sigma, s, q)? as usize;
            let basis = radical_basis(&sigma, s, q)?;
            let ok = nullity == expected && basis.len() == expected && basis.iter().all(|t| g.annihilates(&t.state));
            failures += usize::from(!ok);
            rows.push(vec![
                sigma.to_string(),
                q.to_string(),
                s.to_string(),
                g.dim().to_string(),
                nullity.to_string(),
                expected.to_string(),
                if ok { "AGREE" } else { "DISAGREE" }.to_string(),
            ]);
        }
    }
    Ok(grid_outcome("sigma,q,s,dim,nullity,dim_radical,verdict", rows, failures, format))
}

/// The semisimplicity record and whether every computed criterion agrees.
fn semisimple_record(sigma: &Multiindex, q: QParam, confirm: bool) -> CliResult<(Value, bool)> {
    let report = semisimple(sigma, q)?;
    let mut v = report.to_json();
    let mut consistent = report.consistent();
    if confirm {
        let f = faithful(sigma, q)?;
        let j = jacobson_dim(sigma, q)?;
        consistent &= f == report.semisimple && (j == 0) == report.semisimple;
        v["faithful"] = json!(f);
        v["jacobson_dim"] = json!(j);
    }
    v["consistent"] = json!(consistent);
    Ok((v, consistent))
}

pub fn cmd_semisimple(sigma: &Multiindex, q: QParam, confirm: bool, format: Format) -> CliResult<Outcome> {
    let (mut v, consistent) = semisimple_record(sigma, q, confirm)?;
    let code = if consistent { 0 } else { EXIT_DISAGREE };
    let text = match format {
        Format::Json => {
            v["sigma"] = json!(sigma.entries());
            v["q"] = json!(q.to_string());
            pretty(&v)
        }
        Format::Csv => {
            let keys =
                ["semisimple", "gram_nondegenerate", "dimension_count", "faithful", "jacobson_dim", "consistent"];
            let present: Vec<&str> = keys.iter().copied().filter(|k| v.get(*k).is_some()).collect();
            let values: Vec<String> = present.iter().map(|k| v[*k].to_string()).collect();
            format!("{}\n{}", present.join(","), csv_row(&values))
        }
        Format::Text => {
            let mut out = format!("sigma = {sigma}  q = {q}\n");
            for key in ["semisimple", "gram_nondegenerate", "dimension_count", "faithful", "jacobson_dim"] {
                if let Some(x) = v.get(key) {
                    writeln!(out, "{key}: {x}").unwrap();
                }
            }
            if let Some(w) = v.get("witness").filter(|w| !w.is_null()) {
                let kind = if w["total"] == json!(true) { "totally degenerate" } else { "degenerate" };
                writeln!(out, "witness: s = {} ({kind}, nullity {})", w["s"], w["nullity"]).unwrap();
            }
            if !consistent {
                writeln!(out, "DISAGREE").unwrap();
            }
            out
        }
    };
    Ok(Outcome { text, exit_code: code })
}

fn semisimple_grid(max_size: usize, max_entry: usize, confirm: bool, format: Format) -> CliResult<Outcome> {
    let mut rows = Vec::new();
    let mut failures = 0;
    for (sigma, q) in grid_cases(max_size, max_entry) {
        let (v, consistent) = semisimple_record(&sigma, q, confirm)?;
        failures += usize::from(!consistent);
        rows.push(vec![
            sigma.to_string(),
            q.to_string(),
            v["semisimple"].to_string(),
            if consistent { "AGREE" } else { "DISAGREE" }.to_string(),
        ]);
    }
    Ok(grid_outcome("sigma,q,semisimple,verdict", rows, failures, format))
}

pub fn cmd_jw(s: usize, q: QParam, format: Format) -> CliResult<String> {
    let p = jw(s, q)?;
    Ok(match format {
        Format::Json => pretty(&json!({ "s": s, "q": q.to_string(), "projector": p.to_json() })),
        Format::Csv => {
            let mut out = String::from("diagram,coefficient\n");
            for (d, c) in p.terms() {
                out += &csv_row(&[d.to_string(), c.to_string()]);
            }
            out
        }
        Format::Text => {
            let mut out = format!("P_{s}  q = {q}  terms = {}\n", p.len());
            for (d, c) in p.terms() {
                writeln!(out, "{d}  {c}").unwrap();
            }
            out
        }
    })
}

pub fn cmd_theta(r: usize, s: usize, t: usize, q: QParam, format: Format) -> CliResult<String> {
    let value = theta(r, s, t, q)?;
    let symbol = theta_frac(r, s, t).to_string();
    Ok(match format {
        Format::Json => pretty(&json!({
            "r": r, "s": s, "t": t, "q": q.to_string(), "symbol": symbol, "value": value.to_json(),
        })),
        Format::Csv => format!(
            "r,s,t,symbol,value\n{}",
            csv_row(
                &[r, s, t].map(|x| x.to_string()).into_iter().chain([symbol, value.to_string()]).collect::<Vec<_>>()
            )
        ),
        Format::Text => format!("Theta({r},{s},{t}) = {symbol} = {value}\n"),
    })
}
