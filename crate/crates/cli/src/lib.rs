//! Command-line front end: argument parsing, dispatch, text and JSON rendering.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use kummer_core::brauer::{csa_embeds_in, field_embeds_in_csa, rigid_embeds_in_m2hp, CSADescriptor};
use kummer_core::existence::{
    exists_over_even_degree, exists_over_odd_degree, exists_over_prime_field, katsura_refinement, ExistenceVerdict,
};
use kummer_core::golden::{self, GoldenCheck};
use kummer_core::groups::{binary_dihedral_rigid_algebra, rigid_algebra, GroupId};
use kummer_core::kummer::{
    artin_check, assemble_construction, k3_point_count, k3_zeta, ns_rank_bound, singular_config, trace_of, trace_table,
    trace_table_all, ArtinVerdict, Construction, NSCharPoly, TraceRow,
};
use kummer_core::numtheory::{is_prime, Parity, PrimePower};
use kummer_core::weil::{enumerate_elliptic, enumerate_surface_supersingular, WeilDescriptor};
use kummer_core::{Citation, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "kummer",
    version,
    about = "Weil polynomials, rigid group actions and zeta functions of Kummer surfaces"
)]
pub struct Cli {
    /// Emit {query, result, citations} as JSON.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// List elliptic (dim 1) or supersingular surface (dim 2) Weil polynomials over F_q.
    WeilList {
        #[arg(long, value_parser = prime_power)]
        q: PrimePower,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        dim: u8,
    },
    /// Classify a monic polynomial of degree 2 or 4, coefficients given leading first.
    WeilCheck {
        #[arg(long, value_parser = prime_power)]
        q: PrimePower,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1..)]
        coeffs: Vec<i64>,
    },
    /// Whether Q[G]^rig maps to M(2, H_p), or whether one algebra maps into another.
    EmbedCheck(EmbedArgs),
    /// Existence of abelian surfaces with a rigid G-action over a finite field.
    Exists(ExistsArgs),
    /// Singularities of A/G and the rank bound for the resolution.
    SingConfig {
        #[arg(long)]
        group: GroupId,
    },
    /// Assemble the Néron-Severi spectrum, trace and zeta function of a Kummer K3.
    ZetaAssemble {
        #[arg(long, value_parser = prime_power)]
        q: PrimePower,
        #[arg(long, conflicts_with = "notation", required_unless_present = "notation")]
        construction: Option<Construction>,
        /// Spectrum such as 1^21,2.
        #[arg(long)]
        notation: Option<NSCharPoly>,
    },
    /// Reproduce a published table from the decision procedures.
    Tables {
        #[arg(long, value_enum)]
        which: Table,
        #[arg(long, value_parser = prime)]
        p: Option<u64>,
    },
    /// Compare every published table against the computed one.
    Selftest,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = true)]
pub struct EmbedArgs {
    #[arg(long, requires = "p", conflicts_with_all = ["algebra", "into"])]
    pub group: Option<GroupId>,
    #[arg(long, value_parser = prime)]
    pub p: Option<u64>,
    #[arg(long, requires = "into")]
    pub algebra: Option<CSADescriptor>,
    #[arg(long, requires = "algebra")]
    pub into: Option<CSADescriptor>,
}

#[derive(Debug, Args, Serialize)]
pub struct ExistsArgs {
    #[arg(long)]
    pub group: GroupId,
    /// Prime p; the field is F_{p^2} for even parity, F_p otherwise.
    #[arg(long, value_parser = prime, conflicts_with = "q", required_unless_present = "q")]
    pub p: Option<u64>,
    #[arg(long, value_parser = prime_power)]
    pub q: Option<PrimePower>,
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    /// Decide the Katsura list refinement (actions with K3 quotient).
    #[arg(long, conflicts_with = "prime_field")]
    pub katsura: bool,
    /// Sufficient criterion over the prime field F_p.
    #[arg(long)]
    pub prime_field: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityArg {
    Odd,
    Even,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Table {
    Sing,
    Sszeta1,
    Sszeta2,
    Rigidalg,
    Alginj,
}

fn prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("'{s}' is not a positive integer"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p).to_string())
    }
}

fn prime_power(s: &str) -> Result<PrimePower, String> {
    let q: u64 = s.parse().map_err(|_| format!("'{s}' is not a positive integer"))?;
    PrimePower::from_q(q).map_err(|e| e.to_string())
}

/// What a command produced: text lines, the JSON result, and the statements it rests on.
struct Report {
    text: String,
    result: Value,
    citations: Vec<Citation>,
    ok: bool,
}

impl Report {
    fn new(text: String, result: impl Serialize, citations: Vec<Citation>) -> Self {
        Report { text, result: serde_json::to_value(result).expect("serializable"), citations, ok: true }
    }
}

/// A domain rejection with the statement it is measured against.
struct Rejection {
    error: Error,
    citation: Citation,
}

fn cite(citation: Citation) -> impl Fn(Error) -> Rejection {
    move |error| Rejection { error, citation }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let query = serde_json::to_value(&cli.command).expect("serializable");
    match dispatch(&cli.command) {
        Ok(report) => {
            let code = if report.ok { EXIT_OK } else { EXIT_REJECTED };
            let stdout = if cli.json {
                let labels: Vec<&str> = report.citations.iter().map(|c| c.label()).collect();
                let body = json!({ "query": query, "result": report.result, "citations": labels });
                format!("{}\n", serde_json::to_string_pretty(&body).expect("serializable"))
            } else {
                report.text
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(Rejection { error, citation }) => {
            let line = format!("rejected: {error} [{citation}]\n");
            let stdout = if cli.json {
                let body = json!({ "query": query, "error": error.to_string(), "citations": [citation.label()] });
                format!("{}\n", serde_json::to_string_pretty(&body).expect("serializable"))
            } else {
                String::new()
            };
            Outcome { code: EXIT_REJECTED, stdout, stderr: line }
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Report, Rejection> {
    match cmd {
        Command::WeilList { q, dim } => weil_list(q, *dim),
        Command::WeilCheck { q, coeffs } => weil_check(q, coeffs),
        Command::EmbedCheck(args) => embed_check(args),
        Command::Exists(args) => exists(args),
        Command::SingConfig { group } => sing_config(*group),
        Command::ZetaAssemble { q, construction, notation } => zeta_assemble(q, *construction, notation.as_ref()),
        Command::Tables { which, p } => tables(*which, *p),
        Command::Selftest => Ok(selftest()),
    }
}

fn weil_line(w: &WeilDescriptor) -> String {
    format!("{}  [{}; {}; End⁰ = {}] [{}]", w.poly(), w.newton_type(), w.clause(), w.endo(), w.clause().citation())
}

fn weil_list(q: &PrimePower, dim: u8) -> Result<Report, Rejection> {
    let (list, citation) = if dim == 1 {
        (enumerate_elliptic(q), Citation::Thm2_8)
    } else {
        (enumerate_surface_supersingular(q), Citation::Thm2_9)
    };
    let mut text = String::new();
    for w in &list {
        writeln!(text, "{}", weil_line(w)).unwrap();
    }
    Ok(Report::new(text, &list, vec![citation]))
}

fn weil_check(q: &PrimePower, coeffs: &[i64]) -> Result<Report, Rejection> {
    let mut ascending = coeffs.to_vec();
    ascending.reverse();
    let f = kummer_core::numtheory::IntPolynomial::from_i64(&ascending);
    let citation = if f.degree() == Some(2) { Citation::Thm2_8 } else { Citation::Thm2_9 };
    let w = WeilDescriptor::from_polynomial(q, &f).map_err(cite(citation))?;
    Ok(Report::new(format!("{}\n", weil_line(&w)), &w, vec![w.clause().citation()]))
}

#[derive(Serialize)]
struct Embedding {
    source: String,
    target: String,
    embeds: bool,
}

fn embed_check(args: &EmbedArgs) -> Result<Report, Rejection> {
    let c = Citation::Prop6_1;
    let (source, target, embeds) = match (args.group, args.p, &args.algebra, &args.into) {
        (Some(g), Some(p), _, _) => {
            let yes = rigid_embeds_in_m2hp(g, p).map_err(cite(c))?;
            (format!("Q[{g}]^rig = {}", rigid_algebra(g)), format!("M(2,H_{p})"), yes)
        }
        (None, _, Some(b), Some(a)) => {
            let yes = match csa_embeds_in(b, a) {
                Err(Error::OutOfScope(_)) if b.degree() == 1 => field_embeds_in_csa(b.center(), a),
                other => other,
            }
            .map_err(cite(c))?;
            (b.to_string(), a.to_string(), yes)
        }
        _ => {
            return Err(Rejection {
                error: Error::OutOfScope("give --group with --p, or --algebra with --into".into()),
                citation: c,
            })
        }
    };
    let text = format!("{source} → {target}: {}\n", if embeds { "embeds" } else { "does not embed" });
    Ok(Report::new(text, Embedding { source, target, embeds }, vec![c]))
}

fn verdict_text(v: &ExistenceVerdict) -> String {
    let mut text = format!("{v}\n");
    writeln!(text, "  basis: rigid {}, symplectic {}", v.rigid_basis, v.symplectic_basis).unwrap();
    for r in &v.reasons {
        writeln!(text, "  {}: {} [{}]", r.statement, r.holds, r.citation).unwrap();
    }
    for o in &v.weil_options {
        writeln!(
            text,
            "  f = {}: {} [{}], {} ({} polynomial(s))",
            o.shape,
            o.condition,
            o.holds,
            o.basis,
            o.descriptors.len()
        )
        .unwrap();
    }
    text
}

fn exists(args: &ExistsArgs) -> Result<Report, Rejection> {
    let g = args.group;
    let field = |p: Option<u64>, q: Option<PrimePower>, even: bool| -> Result<PrimePower, Error> {
        match (p, q) {
            (_, Some(q)) => Ok(q),
            (Some(p), None) if even => PrimePower::new(p, 2),
            (Some(p), None) => PrimePower::prime(p),
            (None, None) => unreachable!("clap requires --p or --q"),
        }
    };
    let verdict = if args.prime_field {
        let c = cite(Citation::Thm6_6);
        let p = match (args.p, args.q) {
            (Some(p), _) => p,
            (None, Some(q)) if q.n() == 1 => q.p(),
            (None, Some(q)) => return Err(c(Error::OutOfScope(format!("q = {q} is not prime")))),
            _ => unreachable!(),
        };
        exists_over_prime_field(g, p).map_err(c)?
    } else if args.katsura {
        let c = cite(Citation::Thm1_4);
        let q = field(args.p, args.q, args.parity == Some(ParityArg::Even)).map_err(&c)?;
        katsura_refinement(g, &q).map_err(c)?
    } else {
        let even = match (args.parity, args.q) {
            (Some(par), _) => par == ParityArg::Even,
            (None, Some(q)) => q.parity() == Parity::Even,
            (None, None) => true,
        };
        if even {
            let c = cite(Citation::Thm6_2);
            let p = match (args.p, args.q) {
                (Some(p), _) => p,
                (None, Some(q)) if q.n() == 2 => q.p(),
                (None, Some(q)) => {
                    return Err(c(Error::OutOfScope(format!(
                        "the even-degree table is stated over F_(p^2), not q = {q}"
                    ))))
                }
                _ => unreachable!(),
            };
            exists_over_even_degree(g, p).map_err(c)?
        } else {
            let c = cite(Citation::Thm6_7);
            let q = field(args.p, args.q, false).map_err(&c)?;
            exists_over_odd_degree(g, &q).map_err(c)?
        }
    };
    let citations = verdict.citations();
    Ok(Report::new(verdict_text(&verdict), &verdict, citations))
}

fn sing_line(cfg: &kummer_core::kummer::SingularConfig) -> String {
    format!("{cfg}; {}", ns_rank_bound(cfg))
}

fn case_prefix(tag: Option<char>) -> String {
    tag.map(|t| format!("case {t}: ")).unwrap_or_default()
}

fn sing_config(g: GroupId) -> Result<Report, Rejection> {
    let configs = singular_config(g).map_err(cite(Citation::Prop5_1))?;
    let mut text = String::new();
    for cfg in &configs {
        writeln!(text, "{}{}", case_prefix(cfg.case_tag), sing_line(cfg)).unwrap();
    }
    let result: Vec<Value> = configs
        .iter()
        .map(|cfg| json!({ "config": cfg, "multiset": cfg.to_string(), "rank": ns_rank_bound(cfg) }))
        .collect();
    Ok(Report::new(text, result, vec![Citation::Prop5_1]))
}

#[derive(Serialize)]
struct ZetaResult {
    construction: Option<Construction>,
    ns: NSCharPoly,
    trace: i64,
    point_count: num_bigint::BigInt,
    zeta: String,
    artin: ArtinVerdict,
}

fn zeta_assemble(
    q: &PrimePower,
    construction: Option<Construction>,
    notation: Option<&NSCharPoly>,
) -> Result<Report, Rejection> {
    let (ns, mut citations, mut text) = match (construction, notation) {
        (Some(c), _) => {
            let a = assemble_construction(c, q).map_err(cite(c.citation()))?;
            let mut text = String::new();
            writeln!(text, "{c} over F_{q}: {} ({})", a.config, c.citation()).unwrap();
            for o in &a.orbits {
                writeln!(
                    text,
                    "  {} × {} in orbits of size {}, graph action {:?}",
                    o.count, o.ade, o.degree, o.graph_action
                )
                .unwrap();
            }
            writeln!(text, "  h(t) = {} [{}]", a.h.poly, Citation::Lemma7_3).unwrap();
            (a.ns, vec![c.citation(), Citation::Lemma7_3, Citation::Lemma7_2], text)
        }
        (None, Some(n)) => (n.clone(), vec![Citation::Lemma7_2], String::new()),
        (None, None) => unreachable!("clap requires one of the two"),
    };
    let trace = trace_of(&ns);
    let zeta = k3_zeta(q, &ns);
    let artin = artin_check(q, &ns);
    citations.push(Citation::Artin);
    citations.sort();
    citations.dedup();
    let point_count = k3_point_count(q, trace);
    writeln!(text, "NS spectrum {ns}; Tr = {trace}; #X(F_{q}) = {point_count}").unwrap();
    writeln!(text, "Z(t) = {zeta}").unwrap();
    let ok = artin.accepted();
    match &artin {
        ArtinVerdict::Accept => writeln!(text, "Artin constraint: satisfied").unwrap(),
        ArtinVerdict::Reject { reason, citation } => {
            writeln!(text, "Artin constraint: violated, {reason} [{citation}]").unwrap()
        }
    }
    let result = ZetaResult { construction, ns, trace, point_count, zeta: zeta.to_string(), artin };
    let mut report = Report::new(text, result, citations);
    report.ok = ok;
    Ok(report)
}

fn trace_line(r: &TraceRow, p: Option<u64>) -> String {
    let cond = match p {
        Some(p) => format!("{} [{}]", r.condition, r.condition.eval(p)),
        None => r.condition.to_string(),
    };
    format!("Tr {} | {} | {} | {} | {}", r.trace, r.zeta, r.group, cond, r.shape)
}

fn tables(which: Table, p: Option<u64>) -> Result<Report, Rejection> {
    match which {
        Table::Sing => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for g in GroupId::katsura_list() {
                for cfg in singular_config(g).map_err(cite(Citation::Prop5_1))? {
                    writeln!(text, "{g}: {}{}", case_prefix(cfg.case_tag), sing_line(&cfg)).unwrap();
                    rows.push(cfg);
                }
            }
            Ok(Report::new(text, rows, vec![Citation::Prop5_1]))
        }
        Table::Sszeta1 | Table::Sszeta2 => {
            let (parity, c) = if which == Table::Sszeta1 {
                (Parity::Even, Citation::Thm7_7)
            } else {
                (Parity::Odd, Citation::Thm7_12)
            };
            let rows = match p {
                Some(p) => trace_table(parity, p).map_err(cite(c))?,
                None => trace_table_all(parity),
            };
            let text: String = rows.iter().map(|r| trace_line(r, p) + "\n").collect();
            Ok(Report::new(text, rows, vec![c]))
        }
        Table::Rigidalg => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for g in GroupId::all() {
                let a = rigid_algebra(g);
                writeln!(text, "{g}: {a}").unwrap();
                rows.push(json!({ "group": g, "algebra": a, "notation": a.to_string() }));
            }
            for n in 2..=6u32 {
                let a = binary_dihedral_rigid_algebra(n).map_err(cite(Citation::Lemma4_1))?;
                writeln!(text, "Q_4n, n = {n}: {a}").unwrap();
                rows.push(json!({ "group": GroupId::BinaryDihedral(4 * n), "algebra": a, "notation": a.to_string() }));
            }
            Ok(Report::new(text, rows, vec![Citation::Thm4_2, Citation::Lemma4_1]))
        }
        Table::Alginj => alginj(p),
    }
}

fn alginj(p: Option<u64>) -> Result<Report, Rejection> {
    let c = Citation::Prop6_1;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (alg_cell, cond_cell) in golden::EMBEDDINGS {
        let algebra = golden::parse_algebra_cell(alg_cell).map_err(cite(c))?;
        let condition = golden::parse_condition(cond_cell).map_err(cite(c))?;
        let groups: Vec<GroupId> =
            GroupId::katsura_list().into_iter().filter(|g| g.order() > 2 && rigid_algebra(*g) == algebra).collect();
        let names: Vec<String> = groups.iter().map(|g| g.to_string()).collect();
        let mut line = format!("{algebra} ({}) → M(2,H_p) iff {condition}", names.join(", "));
        let mut computed = None;
        if let Some(p) = p {
            let embeds = match groups.first() {
                Some(&g) => Some(rigid_embeds_in_m2hp(g, p).map_err(cite(c))?),
                None => None,
            };
            write!(line, " [{}]", condition.eval(p)).unwrap();
            if let Some(e) = embeds {
                write!(line, "; computed at p = {p}: {e}").unwrap();
            }
            computed = embeds;
        }
        writeln!(text, "{line}").unwrap();
        rows.push(json!({
            "algebra": algebra.to_string(),
            "groups": groups,
            "condition": condition,
            "condition_holds": p.map(|p| condition.eval(p)),
            "embeds": computed,
        }));
    }
    Ok(Report::new(text, rows, vec![c]))
}

fn selftest() -> Report {
    let checks: Vec<GoldenCheck> = golden::run_all();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{c}").unwrap();
    }
    writeln!(text, "{} checks, {failed} mismatches", checks.len()).unwrap();
    let mut citations: Vec<Citation> = checks.iter().map(|c| c.table).collect();
    citations.sort();
    citations.dedup();
    let mut report = Report::new(text, &checks, citations);
    report.ok = failed == 0;
    report
}
