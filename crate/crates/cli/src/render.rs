use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use qmilnor::gw::Notation;
use qmilnor::tate::TateMap;
use qmilnor::GwElement;

/// Output of one subcommand in both renderings.
pub struct Output {
    pub text: String,
    pub json: Value,
}

/// Unicode-to-ASCII replacements for text output.
const ASCII: &[(&str, &str)] = &[
    ("⟨", "<"),
    ("⟩", ">"),
    ("\u{2212}", "-"),
    ("–", "-"),
    ("·", "*"),
    ("⊕", "+"),
    ("∘", "o"),
    ("→", "->"),
    ("≅", "~="),
    ("∖", "\\"),
    ("≥", ">="),
    ("χ^c", "chi_c"),
    ("χ", "chi"),
    ("μ", "mu"),
    ("Π", "prod"),
    ("Σ", "sum"),
    ("λ", "lambda"),
    ("α", "alpha"),
    ("β", "beta"),
    ("Δ", "Delta"),
    ("ℚ", "Q"),
    ("ℙ", "P"),
    ("𝔸¹", "A^1"),
    ("𝔸", "A"),
    ("²", "^2"),
    ("¹", "^1"),
    ("…", "..."),
];

pub fn asciify(s: &str) -> String {
    let mut out = s.to_string();
    for (from, to) in ASCII {
        out = out.replace(from, to);
    }
    out
}

pub fn gw_text(e: &GwElement) -> String {
    e.simplified().to_text(Notation::Unicode)
}

pub fn rational_text(x: &BigRational) -> String {
    x.to_string().replace('-', "\u{2212}")
}

pub fn rational_json(x: &BigRational) -> Value {
    match (x.is_integer(), x.to_integer().to_i64()) {
        (true, Some(v)) => json!(v),
        _ => json!(x.to_string()),
    }
}

pub fn matrix_lines(rows: &[Vec<BigRational>], indent: &str) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(rational_text).collect()).collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&format!("{indent}[{}]\n", padded.join(", ")));
    }
    out
}

pub fn tate_map_text(name: &str, m: &TateMap) -> String {
    let mut out =
        format!("{name}: {} → {}\n", m.source().to_text(Notation::Unicode), m.target().to_text(Notation::Unicode));
    // rows index target summands
    out.push_str(&matrix_lines(m.entries(), "  "));
    out
}
