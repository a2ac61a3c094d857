//! `qmilnor`: quadratic invariants of hypersurface singularities from the
//! command line.
//!
//! Exit codes: 0 on success, 1 when the computation fails for a well-formed
//! request, 2 on usage errors. Set `QMILNOR_ASCII=1` for ASCII text output.

mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use qmilnor::batch::{aggregate, parse_batch, run_entry, BatchReport};
use qmilnor::conductor::{verify, Verdict};
use qmilnor::ekl::{quadratic_milnor, ss_form, SingularityInput};
use qmilnor::euler::{chi_split_quadric, primitive_hodge};
use qmilnor::gw::{parse_residues, transfer};
use qmilnor::poly::parse_rational_function;
use qmilnor::tate::{
    abstract_variation_report, affine_quadric_motives, compose, kummer_monodromy, quadric_motive, variation_map,
    variation_quadric, VariationResult, EVEN_SLOT_NOTE, LAMBDA,
};
use qmilnor::{Error, Field, GwElement};

use render::{asciify, gw_text, matrix_lines, rational_json, tate_map_text, Output};

#[derive(Parser)]
#[command(name = "qmilnor", version, about = "Quadratic invariants of isolated hypersurface singularities")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize, compare, specialize or transfer a GW element.
    Gw(GwArgs),
    /// Quadratic Milnor number of a germ at the origin.
    Milnor(PolyArgs),
    /// Both sides of the quadratic conductor formula.
    Conductor(PolyArgs),
    /// Hodge numbers and Euler characteristic of a smooth hypersurface.
    Euler(EulerArgs),
    /// Variation and monodromy data in the Tate calculus.
    Monodromy(MonodromyArgs),
    /// Conductor reports for a JSON list of points, with their transferred sum.
    Batch(BatchArgs),
}

#[derive(Args)]
struct GwArgs {
    /// Element such as "<2> - <1>" or "⟨1, −1⟩".
    #[arg(allow_hyphen_values = true)]
    element: String,
    /// Q, Fp:<p> or Q(t).
    #[arg(long, default_value = "Q")]
    field: String,
    /// Decide equality with a second element.
    #[arg(long, value_name = "ELEMENT", allow_hyphen_values = true)]
    equal: Option<String>,
    /// Specialize an element of GW(Q(t)) to GW(Q).
    #[arg(long, conflicts_with_all = ["transfer"])]
    specialize: bool,
    /// Read entries as polynomials in t modulo G and transfer to GW(Q).
    #[arg(long, value_name = "G", conflicts_with_all = ["equal"])]
    transfer: Option<String>,
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial with the singular point at the origin.
    #[arg(allow_hyphen_values = true)]
    polynomial: String,
    /// Variables in order, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Weights of a quasi-homogeneous polynomial.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u64>>,
    /// Homogeneous or weighted degree r.
    #[arg(long)]
    degree: Option<u64>,
}

#[derive(Args)]
struct EulerArgs {
    /// Degree d of the hypersurface.
    #[arg(long)]
    degree: u32,
    /// Dimension N of the ambient projective space.
    #[arg(long)]
    ambient: u32,
}

#[derive(Args)]
struct MonodromyArgs {
    /// Relative dimension n of the family.
    #[arg(long, required_unless_present = "kummer")]
    dimension: Option<u32>,
    /// Ordinary double point: explicit variation map.
    #[arg(long, conflicts_with = "degree")]
    quadratic: bool,
    /// Homogeneous singularity of degree r: factorization of the variation.
    #[arg(long)]
    degree: Option<u32>,
    /// Monodromy of the nearby Kummer motive.
    #[arg(long, conflicts_with_all = ["dimension", "quadratic", "degree"])]
    kummer: bool,
}

#[derive(Args)]
struct BatchArgs {
    /// JSON file with a list of points, or `-` for standard input.
    file: PathBuf,
}

/// Failure of a subcommand with its exit code.
struct Failure {
    kind: String,
    message: String,
    index: Option<usize>,
    usage: bool,
    source_text: Option<(String, usize)>,
}

impl Failure {
    fn usage(kind: &str, message: impl Into<String>) -> Self {
        Failure { kind: kind.into(), message: message.into(), index: None, usage: true, source_text: None }
    }

    fn in_source(mut self, src: &str, e: &Error) -> Self {
        if let Error::Syntax { pos, .. } | Error::UnknownVariable { pos, .. } = e {
            self.source_text = Some((src.to_string(), *pos));
        }
        self
    }

    fn to_json(&self) -> Value {
        let mut err = json!({"kind": self.kind, "message": self.message});
        if let Some(i) = self.index {
            err["index"] = json!(i);
        }
        json!({ "error": err })
    }

    fn exit_code(&self) -> ExitCode {
        ExitCode::from(if self.usage { 2 } else { 1 })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let index = match &e {
            Error::BatchEntry { index, .. } => Some(*index),
            _ => None,
        };
        Failure { kind: e.kind().into(), message: e.to_string(), index, usage: e.is_usage(), source_text: None }
    }
}

type Run = std::result::Result<Output, Failure>;

fn with_source<T>(src: &str, r: qmilnor::Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::from(e.clone()).in_source(src, &e))
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Checked(true) => "pass",
        Verdict::Checked(false) => "FAIL",
        Verdict::Skipped => "skipped",
    }
}

fn input_line(s: &SingularityInput) -> String {
    format!("f = {} in ({})", s.polynomial().display(s.vars()), s.vars().join(", "))
}

fn run_gw(a: &GwArgs) -> Run {
    let field: Field = a.field.parse().map_err(Failure::from)?;
    if let Some(g_src) = &a.transfer {
        if field != Field::Rationals {
            return Err(Failure::usage("invalid-input", "--transfer reads the element over Q[t]/(G); drop --field"));
        }
        let (num, den) = with_source(g_src, parse_rational_function(g_src, "t"))?;
        if den.degree() != Some(0) {
            return Err(Error::InvalidExtension(format!("`{g_src}` is not a polynomial in t")).into());
        }
        let (pos, neg) = with_source(&a.element, parse_residues(&a.element, &num, "t"))?;
        let t = transfer(&num, &pos, &neg)?;
        let text = format!(
            "Tr over Q[t]/({}) of {}\n  = {}\nrank: {}\n",
            num.display("t"),
            a.element.trim(),
            gw_text(&t),
            t.rank()
        );
        let json = json!({"modulus": num.display("t"), "transfer": t.simplified().to_json(), "rank": t.rank()});
        return Ok(Output { text, json });
    }
    let e = with_source(&a.element, GwElement::parse(&a.element, field))?;
    let mut text = format!("element over {field}: {}\n", gw_text(&e));
    let mut json = json!({"element": e.simplified().to_json(), "rank": e.rank()});
    if a.specialize {
        let s = e.specialize()?;
        text.push_str(&format!("specialization: {}\n", gw_text(&s)));
        json["specialization"] = s.simplified().to_json();
        text.push_str(&format!("rank: {}\n", e.rank()));
        return Ok(Output { text, json });
    }
    text.push_str(&format!("rank: {}\n", e.rank()));
    if field != Field::RationalFunctions {
        let inv = e.invariants()?;
        text.push_str(&format!("discriminant: ⟨{}⟩\n", inv.discriminant.entry(true)));
        json["discriminant"] = json!(inv.discriminant.entry(false));
        if let Some(sig) = inv.signature {
            text.push_str(&format!("signature: {sig}\n"));
            json["signature"] = json!(sig);
        }
        if let Some(h) = inv.hasse {
            let shown: Vec<String> = h.iter().map(|(p, v)| format!("{p}: {v}")).collect();
            text.push_str(&format!("Hasse invariants: {}\n", shown.join(", ")));
            json["hasse"] = Value::Object(h.iter().map(|(p, v)| (p.to_string(), json!(v))).collect());
        }
    }
    if let Some(other) = &a.equal {
        let o = with_source(other, GwElement::parse(other, field))?;
        let eq = e.is_equal(&o)?;
        text.push_str(&format!("equal to {}: {eq}\n", gw_text(&o)));
        json["equal"] = json!(eq);
    }
    Ok(Output { text, json })
}

fn singularity(a: &PolyArgs) -> std::result::Result<SingularityInput, Failure> {
    with_source(&a.polynomial, SingularityInput::from_source(&a.polynomial, &a.vars, a.weights.clone(), a.degree))
}

fn run_milnor(a: &PolyArgs) -> Run {
    let s = singularity(a)?;
    let form = ss_form(&s)?;
    let mu = quadratic_milnor(&s)?;
    let inv = mu.invariants()?;
    let basis: Vec<String> = form.basis.iter().map(|m| m.display(s.vars())).collect();
    let mut text = format!("{}\nMilnor number: {}\n", input_line(&s), form.basis.len());
    if !basis.is_empty() {
        text.push_str(&format!("basis: {}\nScheja–Storch matrix:\n", basis.join(", ")));
        text.push_str(&matrix_lines(&form.gram, "  "));
    }
    text.push_str(&format!("μ^q = {}\nrank: {}\n", gw_text(&mu), mu.rank()));
    let signature = inv.signature.unwrap_or(0);
    text.push_str(&format!("signature: {signature}\ndiscriminant: ⟨{}⟩\n", inv.discriminant.entry(true)));
    let json = json!({
        "polynomial": s.polynomial().display(s.vars()),
        "vars": s.vars(),
        "milnor_number": form.basis.len(),
        "basis": basis,
        "gram": form.gram.iter().map(|r| r.iter().map(rational_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "form": mu.simplified().to_json(),
        "rank": mu.rank(),
        "signature": signature,
        "discriminant": inv.discriminant.entry(false),
    });
    Ok(Output { text, json })
}

fn run_conductor(a: &PolyArgs) -> Run {
    let s = singularity(a)?;
    let report = verify(&s)?;
    let mu = quadratic_milnor(&s)?;
    let weights: Vec<String> = s.weights().iter().map(u64::to_string).collect();
    let mut text = format!("{}\n", input_line(&s));
    text.push_str(&format!(
        "n = {}, r = {}, weights ({})\n",
        s.n(),
        s.degree().map_or("none".into(), |d| d.to_string()),
        weights.join(", ")
    ));
    text.push_str(&format!("μ^q = {}\n", gw_text(&mu)));
    text.push_str(&format!("right side: {}\n", gw_text(&report.rhs)));
    match &report.lhs_full {
        Some(l) => text.push_str(&format!("left side: {}\n", gw_text(l))),
        None => text.push_str("left side: rank only\n"),
    }
    text.push_str(&format!("rank: left {}, right {}\n", report.lhs_rank, report.rhs_rank));
    text.push_str(&format!(
        "verdicts: GW {}, rank {}\n",
        verdict_text(report.gw_verdict),
        verdict_text(Verdict::Checked(report.rank_verdict))
    ));
    if !report.notes.is_empty() {
        text.push_str("notes:\n");
        for n in &report.notes {
            text.push_str(&format!("  - {n}\n"));
        }
    }
    let mut json = report.to_json();
    json["mu"] = mu.simplified().to_json();
    Ok(Output { text, json })
}

fn run_euler(a: &EulerArgs) -> Run {
    let t = primitive_hodge(a.degree, a.ambient)?;
    let chi = t.euler()?;
    let shown: Vec<String> = t.primitive.iter().map(u64::to_string).collect();
    let mut text = format!("smooth hypersurface of degree {} in ℙ^{} (dimension {})\n", t.d, t.big_n, t.n);
    text.push_str(&format!("primitive Hodge numbers h^(n−q,q), q = 0..{}: {}\n", t.n, shown.join(" ")));
    text.push_str(&format!("Euler characteristic: {chi}\n"));
    let mut json = json!({"d": t.d, "N": t.big_n, "n": t.n, "primitive": t.primitive, "euler": chi});
    if t.d == 2 {
        let q = chi_split_quadric(t.n);
        text.push_str(&format!("χ^c of the split quadric: {}\n", gw_text(&q)));
        json["chi_split_quadric"] = q.simplified().to_json();
    }
    Ok(Output { text, json })
}

fn variation_text(n: u32, v: &VariationResult) -> String {
    match v {
        VariationResult::Zero { certificate } => {
            let mut s = String::from("variation: zero map\n");
            for slot in certificate {
                s.push_str(&format!("  Hom({}, {}) = {}\n", summand(slot.source), summand(slot.target), slot.dim));
            }
            s
        }
        VariationResult::Factored { m1, scalar, m2 } => {
            let m = i64::from(n / 2);
            let mut s = format!(
                "variation: h(A) → {} → h_c(A)(−1), λ = {}\n",
                summand((-m - 1, -i64::from(n))),
                render::rational_text(scalar)
            );
            s.push_str(&tate_map_text("m1", m1));
            s.push_str(&tate_map_text("m2", m2));
            s
        }
    }
}

fn summand(s: (i64, i64)) -> String {
    qmilnor::tate::TateObject::new(vec![s]).to_text(qmilnor::gw::Notation::Unicode)
}

fn run_monodromy(a: &MonodromyArgs) -> Run {
    if a.kummer {
        let n = kummer_monodromy();
        let square = compose(&n.twist(-1), &n)?;
        let mut text = tate_map_text("N", &n);
        text.push_str(&format!("N(−1) ∘ N = {}\n", if square.is_zero() { "0" } else { "nonzero" }));
        let json = json!({"kummer": n.to_json(), "square_is_zero": square.is_zero()});
        return Ok(Output { text, json });
    }
    let n = a.dimension.expect("clap requires --dimension");
    if let Some(r) = a.degree {
        let av = abstract_variation_report(r, n)?;
        let mut text = format!("homogeneous singularity of degree {r}, relative dimension {n}\n");
        text.push_str(&format!("{}\n", av.factorization(qmilnor::gw::Notation::Unicode)));
        text.push_str("  α: h(A) → h(C)(−1)[−1], β: h(C)(−1)[−1] → h_c(A)\n");
        if let Some(v) = &av.specialization {
            text.push_str(&variation_text(n, v));
        }
        return Ok(Output { text, json: av.to_json() });
    }
    if !a.quadratic {
        return Err(Failure::usage("invalid-input", "choose --quadratic, --degree R or --kummer"));
    }
    let v = variation_quadric(n)?;
    let (h_a, h_c) = affine_quadric_motives(n)?;
    let q = quadric_motive(n);
    let map = variation_map(n)?;
    let u = qmilnor::gw::Notation::Unicode;
    let mut text = format!("ordinary double point, relative dimension {n}\n");
    text.push_str(&format!("h(Q) = {}\n", q.to_text(u)));
    text.push_str(&format!("h(A) = {}\n", h_a.to_text(u)));
    text.push_str(&format!("h_c(A) = {}\n", h_c.to_text(u)));
    text.push_str(&variation_text(n, &v));
    text.push_str(&tate_map_text("var", &map));
    let mut notes = Vec::new();
    if n.is_multiple_of(2) {
        notes.push(EVEN_SLOT_NOTE.to_string());
    } else {
        notes.push(format!("λ = {LAMBDA} is fixed by the two-branch semistable comparison, not recomputed"));
    }
    text.push_str("notes:\n");
    for note in &notes {
        text.push_str(&format!("  - {note}\n"));
    }
    let json = json!({
        "dimension": n,
        "quadric_motive": q.to_json(),
        "h_A": h_a.to_json(),
        "h_c_A": h_c.to_json(),
        "variation": v.to_json(),
        "matrix": map.to_json(),
        "notes": notes,
    });
    Ok(Output { text, json })
}

fn batch_text(b: &BatchReport) -> String {
    let mut text = String::new();
    for (i, p) in b.points.iter().enumerate() {
        let s = &p.report.input;
        text.push_str(&format!("point {i}: {}\n", input_line(s)));
        text.push_str(&format!(
            "  residue field: {}\n",
            p.residue_field.as_ref().map_or("Q".into(), |g| format!("Q[t]/({g})"))
        ));
        text.push_str(&format!("  right side: {}\n", gw_text(&p.report.rhs)));
        text.push_str(&format!(
            "  verdicts: GW {}, rank {}\n",
            verdict_text(p.report.gw_verdict),
            verdict_text(Verdict::Checked(p.report.rank_verdict))
        ));
        text.push_str(&format!("  contribution: {}\n", gw_text(&p.contribution)));
    }
    text.push_str(&format!("sum: {}\nrank: {}\n", gw_text(&b.sum), b.sum.rank()));
    text
}

fn run_batch(a: &BatchArgs) -> Run {
    let raw = if a.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage("io", e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(&a.file).map_err(|e| Failure::usage("io", format!("{}: {e}", a.file.display())))?
    };
    let v: Value = serde_json::from_str(&raw).map_err(|e| Failure::usage("invalid-json", e.to_string()))?;
    let entries = parse_batch(&v)?;
    let results: Vec<_> = entries.par_iter().map(run_entry).collect();
    let report = aggregate(results)?;
    Ok(Output { text: batch_text(&report), json: report.to_json() })
}

fn dispatch(cli: &Cli) -> Run {
    match &cli.command {
        Command::Gw(a) => run_gw(a),
        Command::Milnor(a) => run_milnor(a),
        Command::Conductor(a) => run_conductor(a),
        Command::Euler(a) => run_euler(a),
        Command::Monodromy(a) => run_monodromy(a),
        Command::Batch(a) => run_batch(a),
    }
}

fn ascii_mode() -> bool {
    std::env::var("QMILNOR_ASCII").is_ok_and(|v| !v.is_empty() && v != "0")
}

fn emit_text(s: &str, to_stderr: bool) {
    let s = if ascii_mode() { asciify(s) } else { s.to_string() };
    if to_stderr {
        eprint!("{s}");
    } else {
        print!("{s}");
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn main() -> ExitCode {
    let json_requested = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = e.print();
                return ExitCode::from(if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    2
                } else {
                    0
                });
            }
            if json_requested {
                let rendered = e.to_string();
                let message = rendered
                    .lines()
                    .take_while(|l| !l.starts_with("Usage:"))
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .collect::<Vec<_>>()
                    .join(" ")
                    .trim_start_matches("error: ")
                    .to_string();
                println!("{}", pretty(&Failure::usage("usage", message).to_json()));
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", pretty(&out.json));
            } else {
                emit_text(&out.text, false);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if cli.json {
                println!("{}", pretty(&f.to_json()));
            } else {
                let mut msg = format!("error: {}\n", f.message);
                if let Some((src, pos)) = &f.source_text {
                    let col = src[..(*pos).min(src.len())].chars().count();
                    msg.push_str(&format!("  {src}\n  {}^\n", " ".repeat(col)));
                }
                emit_text(&msg, true);
            }
            f.exit_code()
        }
    }
}
