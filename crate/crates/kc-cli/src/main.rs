//! `kc` — command-line front end for the knot complex calculator.
//!
//! Subcommands:
//!   report     full invariant report for one complex
//!   validate   structural checks (gradings, homogeneity, d² = 0)
//!   bound      derived lower bounds: alt, gordian, adjacency
//!   compose    tensor builders/files into a new complex file
//!
//! Exit codes: 0 success, 1 usage error, 2 validation failure,
//! 3 the complex is valid but not of knot type (no rank-one stable slice).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use kc::builders;
use kc::complex::{emit_complex, parse_complex, KnotComplex};
use kc::homology::{self, Analysis, HomologyError, StableKind, TorsionProfile};
use kc::invariants::{
    alt_lower, gordian_lower, torus_adjacency_check, unknotting_report, AltCertificate,
    GordianBound, InvariantError, InvariantReport,
};

#[derive(Parser)]
#[command(
    name = "kc",
    version,
    about = "Exact calculator for bigraded knot complexes over F2[u,w]",
    long_about = "Exact calculator for bigraded knot complexes over F2[u,w].\n\
        Computes slice homology, the nu-minus invariant, ideal sequences,\n\
        torsion depth invariants, and the lower bounds derived from them.\n\n\
        Builder specs: unknot | trefoil | figure8 | torus:p:q | alt:tau:k |\n\
        12n404C | cableA | cableB | sumC | cij:i:j\n\
        Where a spec-or-path is accepted, values containing '/' or '.' are\n\
        read as file paths, anything else is parsed as a builder spec."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the full invariant report of one complex
    Report(InputArgs),
    /// Check a complex: gradings, homogeneous arrows, d² = 0
    Validate(InputArgs),
    /// Lower bounds derived from the invariants
    Bound {
        #[command(subcommand)]
        which: BoundCmd,
    },
    /// Tensor builders and files (connected sum) into one complex file
    Compose(ComposeArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Builder spec, e.g. trefoil or torus:3:4
    #[arg(long, value_name = "SPEC", required_unless_present = "file", conflicts_with = "file")]
    example: Option<String>,
    /// Path to a complex file
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Analyze the mirror of the input instead
    #[arg(long)]
    mirror: bool,
    /// Machine-readable output (stable keys, byte-deterministic)
    #[arg(long)]
    json: bool,
    /// Write output to this path instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Alternation-number lower bound with its certificate
    Alt(InputArgs),
    /// Gordian-distance lower bound between two complexes
    Gordian {
        /// First input (builder spec or file path)
        #[arg(long, value_name = "SPEC|PATH")]
        a: String,
        /// Second input (builder spec or file path)
        #[arg(long, value_name = "SPEC|PATH")]
        b: String,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
        /// Write output to this path instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Algebraic obstruction to a torus-knot adjacency T(p,p2) -> T(q,q2)
    Adjacency {
        p: u32,
        p2: u32,
        q: u32,
        q2: u32,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
        /// Write output to this path instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ComposeArgs {
    /// Summand (builder spec or file path); repeatable
    #[arg(long = "sum", value_name = "SPEC|PATH")]
    sums: Vec<String>,
    /// Mirrored summand (builder spec or file path); repeatable,
    /// applied after the plain summands
    #[arg(long = "mirror", value_name = "SPEC|PATH")]
    mirrors: Vec<String>,
    /// Write the composed complex to this path instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// Failure category, mapped to the exit code.
enum Failure {
    /// Bad invocation or unknown builder spec (exit 1).
    Usage(String),
    /// The input is not a valid complex, or I/O failed (exit 2).
    Invalid(String),
    /// Valid complex without the expected knot-type homology (exit 3).
    NotKnot(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::NotKnot(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) | Failure::NotKnot(m) => m,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Complex(_) | HomologyError::Reduce(_) => Failure::Invalid(e.to_string()),
            _ => Failure::NotKnot(e.to_string()),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Homology(h) => h.into(),
            InvariantError::Builder(_) | InvariantError::NotAscending => {
                Failure::Invalid(e.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Cmd::Report(args) => cmd_report(&args),
        Cmd::Validate(args) => cmd_validate(&args),
        Cmd::Bound { which } => match which {
            BoundCmd::Alt(args) => cmd_bound_alt(&args),
            BoundCmd::Gordian { a, b, json, out } => cmd_bound_gordian(&a, &b, json, out.as_deref()),
            BoundCmd::Adjacency {
                p,
                p2,
                q,
                q2,
                json,
                out,
            } => cmd_bound_adjacency(p, p2, q, q2, json, out.as_deref()),
        },
        Cmd::Compose(args) => cmd_compose(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

/// Build a complex from a builder spec like `torus:3:4`. Unknown names and
/// malformed specs are usage errors; impossible parameters (for instance a
/// non-coprime torus pair) are validation errors.
fn build_example(spec: &str) -> Result<KnotComplex, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse_u32 = |s: &str| -> Result<u32, Failure> {
        s.parse()
            .map_err(|_| Failure::Usage(format!("bad number {s:?} in builder spec {spec:?}")))
    };
    let parse_i64 = |s: &str| -> Result<i64, Failure> {
        s.parse()
            .map_err(|_| Failure::Usage(format!("bad number {s:?} in builder spec {spec:?}")))
    };
    match parts.as_slice() {
        ["unknot"] => Ok(builders::unknot()),
        ["trefoil"] => Ok(builders::trefoil()),
        ["figure8"] => Ok(builders::figure_eight()),
        ["torus", p, q] => builders::torus_knot(parse_u32(p)?, parse_u32(q)?)
            .map_err(|e| Failure::Invalid(e.to_string())),
        ["alt", tau, k] => {
            let tau = parse_i64(tau)?;
            let boxes = vec![(0, 0); parse_u32(k)? as usize];
            Ok(builders::alternating_model(tau, &boxes))
        }
        ["12n404C"] => Ok(builders::example_12n404_summand()),
        ["cableA"] => Ok(builders::example_cable_2_3_2_neg1()),
        ["cableB"] => Ok(builders::example_neg_cable_2_3_2_neg3()),
        ["sumC"] => Ok(builders::example_sum_summand_c()),
        ["cij", i, j] => Ok(builders::virtual_cij(parse_u32(i)?, parse_u32(j)?)),
        _ => Err(Failure::Usage(format!(
            "unknown builder spec {spec:?} (see kc --help for the list)"
        ))),
    }
}

fn load_file(path: &std::path::Path) -> Result<KnotComplex, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    parse_complex(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

/// Resolve a spec-or-path argument: values containing '/' or '.' are file
/// paths, everything else goes through the builder mini-language.
fn load_flexible(value: &str) -> Result<(KnotComplex, String), Failure> {
    if value.contains('/') || value.contains('.') {
        let k = load_file(std::path::Path::new(value))?;
        Ok((k, format!("file:{value}")))
    } else {
        let k = build_example(value)?;
        Ok((k, format!("example:{value}")))
    }
}

/// Load the input of `report`/`validate`/`bound alt`, honoring `--mirror`.
fn load_input(args: &InputArgs) -> Result<(KnotComplex, String), Failure> {
    let (k, mut desc) = match (&args.example, &args.file) {
        (Some(spec), None) => (build_example(spec)?, format!("example:{spec}")),
        (None, Some(path)) => (load_file(path)?, format!("file:{}", path.display())),
        _ => return Err(Failure::Usage("give exactly one of --example/--file".into())),
    };
    let k = if args.mirror {
        desc.push_str(" (mirror)");
        k.dual()
    } else {
        k
    };
    Ok((k, desc))
}

fn write_output(out: Option<&std::path::Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    // Round-tripping through Value sorts the keys, making the output
    // canonical: parse + emit reproduces the bytes exactly.
    let value = serde_json::to_value(value).expect("serializable report");
    let mut s = serde_json::to_string_pretty(&value).expect("serializable report");
    s.push('\n');
    s
}

/// Full report document: input descriptor, the invariant report, and the
/// certificates naming which term achieved each bound.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct ReportDocument {
    input: String,
    kind: String,
    generators: usize,
    generators_reduced: usize,
    #[serde(flatten)]
    report: InvariantReport,
    torsion_profile: TorsionProfile,
    alt_certificate: String,
    u_certificate: String,
}

/// Partial document for a valid complex with torsion-only stable homology;
/// emitted before the run exits with code 3.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct TorsionOnlyDocument {
    input: String,
    kind: String,
    generators: usize,
    generators_reduced: usize,
    t_minus: u32,
    t_plus: u32,
    t: u32,
    hat_rank: usize,
    hat_orders: Vec<u32>,
    torsion_profile: TorsionProfile,
}

fn certificate_key(c: AltCertificate) -> &'static str {
    match c {
        AltCertificate::NuMinusFrakA => "nu_minus_frak_a",
        AltCertificate::THatMinusOne => "t_hat_minus_one",
        AltCertificate::CappedTorsion => "capped_torsion",
    }
}

/// Name the first term (in report order) that attains the unknotting bound.
fn u_certificate(r: &InvariantReport) -> &'static str {
    let terms = [
        ((r.nu_minus + r.nu_minus_mirror) as u32, "nu_minus_sum"),
        (r.t, "t"),
        (r.t_hat, "t_hat"),
        (r.t_hat_mirror, "t_hat_mirror"),
    ];
    terms
        .iter()
        .find(|(v, _)| *v == r.u_lower)
        .map(|&(_, name)| name)
        .expect("u_lower is the max of its terms")
}

fn seq_text(seq: &[u32]) -> String {
    let body = seq
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("({body})")
}

fn profile_text(profile: &TorsionProfile) -> String {
    if profile.classes.is_empty() {
        return "none".into();
    }
    profile
        .classes
        .iter()
        .map(|c| {
            format!(
                "level {} order {} w-death {} u-death {}",
                c.level, c.order, c.w_death, c.u_death
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn cmd_report(args: &InputArgs) -> Result<(), Failure> {
    let started = Instant::now();
    let (k, input) = load_input(args)?;
    let analysis = Analysis::new(&k)?;
    let generators = k.len();
    let generators_reduced = analysis.reduced().len();

    if analysis.kind() == StableKind::TorsionOnly {
        let profile = analysis.torsion_profile()?;
        let dual_profile = Analysis::new(&k.dual())?.torsion_profile()?;
        let t_minus = profile.max_w_death();
        let t_plus = dual_profile.max_w_death();
        let (hat_rank, hat_orders) = homology::hat_homology(&k)?;
        let doc = TorsionOnlyDocument {
            input,
            kind: "torsion_only".into(),
            generators,
            generators_reduced,
            t_minus,
            t_plus,
            t: t_minus.max(t_plus),
            hat_rank,
            hat_orders,
            torsion_profile: profile,
        };
        let text = if args.json {
            to_json(&doc)
        } else {
            let mut s = String::new();
            let _ = writeln!(s, "input               {}", doc.input);
            let _ = writeln!(s, "kind                torsion-only (no free class)");
            let _ = writeln!(
                s,
                "generators          {} ({} reduced)",
                doc.generators, doc.generators_reduced
            );
            let _ = writeln!(
                s,
                "t_minus / t_plus    {} / {}",
                doc.t_minus, doc.t_plus
            );
            let _ = writeln!(
                s,
                "hat homology        rank {} orders {:?}",
                doc.hat_rank, doc.hat_orders
            );
            let _ = writeln!(s, "torsion profile     {}", profile_text(&doc.torsion_profile));
            let _ = writeln!(s, "elapsed             {:?}", started.elapsed());
            s
        };
        write_output(args.out.as_deref(), &text)?;
        return Err(Failure::NotKnot(
            "stable slice has no free class; knot-type invariants are undefined (partial torsion data reported)"
                .into(),
        ));
    }

    let report = unknotting_report(&k)?;
    let profile = analysis.torsion_profile()?;
    let (alt, alt_cert) = alt_lower(&k)?;
    debug_assert_eq!(alt, report.alt_lower);
    let doc = ReportDocument {
        input,
        kind: "knot_like".into(),
        generators,
        generators_reduced,
        alt_certificate: certificate_key(alt_cert).into(),
        u_certificate: u_certificate(&report).into(),
        torsion_profile: profile,
        report,
    };
    let text = if args.json {
        to_json(&doc)
    } else {
        let r = &doc.report;
        let mut s = String::new();
        let _ = writeln!(s, "input               {}", doc.input);
        let _ = writeln!(
            s,
            "generators          {} ({} reduced)",
            doc.generators, doc.generators_reduced
        );
        let _ = writeln!(s, "genus upper bound   {}", r.genus_upper);
        let _ = writeln!(
            s,
            "nu_minus            {} (mirror {})",
            r.nu_minus, r.nu_minus_mirror
        );
        let _ = writeln!(
            s,
            "ideal sequence      {} (mirror {})",
            seq_text(&r.ideal_seq),
            seq_text(&r.ideal_seq_mirror)
        );
        let _ = writeln!(
            s,
            "t_minus/t_plus/t    {} / {} / {}",
            r.t_minus, r.t_plus, r.t
        );
        let _ = writeln!(
            s,
            "t_hat               {} (mirror {})",
            r.t_hat, r.t_hat_mirror
        );
        let _ = writeln!(s, "frak_a              {}", r.frak_a);
        let _ = writeln!(s, "torsion profile     {}", profile_text(&doc.torsion_profile));
        let _ = writeln!(
            s,
            "unknotting bounds   u >= {} (via {}), u- >= {}, u+ >= {}",
            r.u_lower, doc.u_certificate, r.u_minus_lower, r.u_plus_lower
        );
        let _ = writeln!(
            s,
            "alternation bound   alt >= {} (via {})",
            r.alt_lower, doc.alt_certificate
        );
        let _ = writeln!(s, "elapsed             {:?}", started.elapsed());
        s
    };
    write_output(args.out.as_deref(), &text)
}

#[derive(Serialize)]
struct ValidateDocument {
    input: String,
    ok: bool,
    generators: usize,
    arrows: usize,
    genus_upper: i64,
    gradings: &'static str,
    maslov: Vec<i64>,
    alexander: Vec<i64>,
}

fn cmd_validate(args: &InputArgs) -> Result<(), Failure> {
    // Detect whether a file carries explicit gradings before parsing, so the
    // report can say which ones were inferred.
    let inferred = match &args.file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            text.lines()
                .map(str::trim)
                .any(|l| l.starts_with("generator") && l.split_whitespace().count() == 2)
        }
        None => false,
    };
    let (k, input) = load_input(args)?;
    k.validate().map_err(|e| Failure::Invalid(e.to_string()))?;
    let doc = ValidateDocument {
        input,
        ok: true,
        generators: k.len(),
        arrows: k.arrows().count(),
        genus_upper: k.genus_upper(),
        gradings: if inferred { "inferred" } else { "explicit" },
        maslov: (0..k.len()).map(|i| k.maslov(i)).collect(),
        alexander: (0..k.len()).map(|i| k.alexander(i)).collect(),
    };
    let text = if args.json {
        to_json(&doc)
    } else {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "ok: {} generators, {} arrows, genus <= {}, gradings {}",
            doc.generators, doc.arrows, doc.genus_upper, doc.gradings
        );
        if inferred {
            for (i, g) in k.generators().iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  {}: maslov {} alexander {}",
                    g.name, doc.maslov[i], doc.alexander[i]
                );
            }
        }
        s
    };
    write_output(args.out.as_deref(), &text)
}

#[derive(Serialize)]
struct AltDocument {
    input: String,
    alt_lower: u32,
    certificate: String,
    nu_minus: i64,
    frak_a: u32,
    t: u32,
    t_hat: u32,
}

fn cmd_bound_alt(args: &InputArgs) -> Result<(), Failure> {
    let (k, input) = load_input(args)?;
    let report = unknotting_report(&k)?;
    let (alt, cert) = alt_lower(&k)?;
    let doc = AltDocument {
        input,
        alt_lower: alt,
        certificate: certificate_key(cert).into(),
        nu_minus: report.nu_minus,
        frak_a: report.frak_a,
        t: report.t,
        t_hat: report.t_hat,
    };
    let text = if args.json {
        to_json(&doc)
    } else {
        format!(
            "alt >= {} via {}\nterms: nu_minus - frak_a = {}, t_hat - 1 = {}, min(t - 1, nu_minus) = {}\n",
            doc.alt_lower,
            cert,
            (doc.nu_minus - i64::from(doc.frak_a)).max(0),
            i64::from(doc.t_hat) - 1,
            i64::from(doc.t.saturating_sub(1)).min(doc.nu_minus),
        )
    };
    write_output(args.out.as_deref(), &text)
}

#[derive(Serialize)]
struct GordianDocument {
    a: String,
    b: String,
    #[serde(flatten)]
    bound: GordianBound,
}

fn cmd_bound_gordian(a: &str, b: &str, json: bool, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let (ka, desc_a) = load_flexible(a)?;
    let (kb, desc_b) = load_flexible(b)?;
    let bound = gordian_lower(&ka, &kb)?;
    let doc = GordianDocument {
        a: desc_a,
        b: desc_b,
        bound,
    };
    let text = if json {
        to_json(&doc)
    } else {
        let g = &doc.bound;
        format!(
            "gordian distance >= {} via {}\n\
             terms: depth sum = {}, t_minus gap = {}, t_plus gap = {}, t_hat gap = {}, t_hat mirror gap = {}\n",
            g.bound, g.certificate, g.depth_sum, g.t_minus_gap, g.t_plus_gap, g.t_hat_gap, g.t_hat_mirror_gap
        )
    };
    write_output(out, &text)
}

fn cmd_bound_adjacency(
    p: u32,
    p2: u32,
    q: u32,
    q2: u32,
    json: bool,
    out: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let report = torus_adjacency_check(p, p2, q, q2).map_err(Failure::from)?;
    let text = if json {
        to_json(&report)
    } else if report.pass {
        format!(
            "T({},{}) -> T({},{}): both containments hold (u gap {})\n",
            p, p2, q, q2, report.u_gap
        )
    } else {
        let f = report.failure.as_ref().expect("failing report has witness");
        format!(
            "T({},{}) -> T({},{}): obstructed, {:?} fails at monomial (u^{}, w^{})\n",
            p, p2, q, q2, f.check, f.witness.0, f.witness.1
        )
    };
    write_output(out, &text)
}

fn cmd_compose(args: &ComposeArgs) -> Result<(), Failure> {
    if args.sums.is_empty() && args.mirrors.is_empty() {
        return Err(Failure::Usage(
            "compose needs at least one --sum or --mirror summand".into(),
        ));
    }
    let mut acc: Option<KnotComplex> = None;
    for spec in &args.sums {
        let (k, _) = load_flexible(spec)?;
        acc = Some(match acc {
            None => k,
            Some(prev) => prev.tensor(&k),
        });
    }
    for spec in &args.mirrors {
        let (k, _) = load_flexible(spec)?;
        let k = k.dual();
        acc = Some(match acc {
            None => k,
            Some(prev) => prev.tensor(&k),
        });
    }
    let composed = acc.expect("at least one summand");
    composed
        .validate()
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    write_output(args.out.as_deref(), &emit_complex(&composed))
}
