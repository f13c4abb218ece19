//! Serialized documents emitted by the command-line tool.
//!
//! Every document carries `schema_version`, an echo of the normalized command
//! and a tagged payload. Exact coefficients are always integers over an
//! explicit denominator. Floats use the shortest decimal that parses back to
//! the same `f64`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::gauss::SpectralData;
use crate::ntheory::Sign;
use crate::trigmat::{ExplicitInverse, Kind, SymbolicInverse, TrigEntry, TrigMatrix};
use crate::verify::{CheckKind, CheckReport, Outcome, Summary, Tolerances};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: u32,
    pub command: CommandEcho,
    pub payload: Payload,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckKind>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub sign: Sign,
    pub index: u64,
    pub value: f64,
}

impl From<&TrigEntry> for EntryDoc {
    fn from(e: &TrigEntry) -> Self {
        EntryDoc {
            sign: e.sign,
            index: e.index,
            value: e.value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    /// `l` in `ŝ_l` / `ĉ_l`.
    pub index: u64,
    /// Numerators over `s_m` / `c_m`, `m` in representative order.
    pub numerators: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HatValue {
    pub index: u64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenDoc {
    /// Exponent vector of the character over the fixed generators.
    pub character: Vec<u64>,
    pub conductor: u64,
    pub eigenvalue: ComplexDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Payload {
    Matrix {
        kind: Kind,
        modulus: u64,
        representatives: Vec<u64>,
        rows: Vec<Vec<EntryDoc>>,
    },
    Inverse {
        kind: Kind,
        modulus: u64,
        representatives: Vec<u64>,
        hat_values: Vec<HatValue>,
        rows: Vec<Vec<EntryDoc>>,
        /// `max |(M·M̂ − I)_ij|`.
        reconstruction_residual: f64,
    },
    SymbolicInverse {
        kind: Kind,
        modulus: u64,
        representatives: Vec<u64>,
        denominator: u64,
        coefficients: Vec<CoefficientRow>,
    },
    Spectrum {
        kind: Kind,
        modulus: u64,
        generators: Vec<u64>,
        eigenvalues: Vec<EigenDoc>,
        zero_eigenvalues: usize,
        abs_determinant: f64,
    },
    Verify {
        summary: Summary,
        reports: Vec<CheckReport>,
    },
}

fn rows_of(entries: &[TrigEntry], dim: usize) -> Vec<Vec<EntryDoc>> {
    entries
        .chunks(dim.max(1))
        .map(|row| row.iter().map(EntryDoc::from).collect())
        .collect()
}

impl Payload {
    pub fn matrix(m: &TrigMatrix) -> Self {
        Payload::Matrix {
            kind: m.kind(),
            modulus: m.modulus(),
            representatives: m.representatives().members().to_vec(),
            rows: rows_of(m.entries(), m.dim()),
        }
    }

    pub fn inverse(inv: &ExplicitInverse, reconstruction_residual: f64) -> Self {
        let reps = inv.representatives();
        Payload::Inverse {
            kind: inv.kind(),
            modulus: reps.modulus(),
            representatives: reps.members().to_vec(),
            hat_values: reps
                .members()
                .iter()
                .zip(inv.hat_values())
                .map(|(&index, &value)| HatValue { index, value })
                .collect(),
            rows: rows_of(inv.entries(), inv.dim()),
            reconstruction_residual,
        }
    }

    pub fn symbolic(s: &SymbolicInverse) -> Self {
        Payload::SymbolicInverse {
            kind: s.kind(),
            modulus: s.modulus(),
            representatives: s.members().to_vec(),
            denominator: s.denominator(),
            coefficients: s
                .members()
                .iter()
                .zip(s.rows())
                .map(|(&index, row)| CoefficientRow {
                    index,
                    numerators: row.clone(),
                })
                .collect(),
        }
    }

    pub fn spectrum(s: &SpectralData) -> Self {
        let generators = s
            .pairs
            .first()
            .map(|p| p.character.basis().generators().to_vec())
            .unwrap_or_default();
        Payload::Spectrum {
            kind: s.kind,
            modulus: s.modulus,
            generators,
            eigenvalues: s
                .pairs
                .iter()
                .map(|p| EigenDoc {
                    character: p.character.exponents().to_vec(),
                    conductor: p.character.conductor(),
                    eigenvalue: ComplexDoc {
                        re: p.eigenvalue.re,
                        im: p.eigenvalue.im,
                    },
                })
                .collect(),
            zero_eigenvalues: s.zero_count(),
            abs_determinant: s.abs_determinant(),
        }
    }

    pub fn verify(reports: Vec<CheckReport>) -> Self {
        Payload::Verify {
            summary: Summary::of(&reports),
            reports,
        }
    }
}

impl OutputDocument {
    pub fn new(command: CommandEcho, payload: Payload) -> Self {
        OutputDocument {
            schema_version: SCHEMA_VERSION,
            command,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents are serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let rec = |w: &mut csv::Writer<Vec<u8>>, fields: &[String]| {
            w.write_record(fields).expect("in-memory write");
        };
        let s = |x: &dyn ToString| x.to_string();
        match &self.payload {
            Payload::Matrix {
                representatives,
                rows,
                ..
            }
            | Payload::Inverse {
                representatives,
                rows,
                ..
            } => {
                rec(
                    &mut w,
                    &["row", "col", "sign", "index", "value"].map(String::from),
                );
                for (i, row) in rows.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        rec(
                            &mut w,
                            &[
                                s(&representatives[i]),
                                s(&representatives[j]),
                                sign_str(e.sign).into(),
                                s(&e.index),
                                s(&e.value),
                            ],
                        );
                    }
                }
            }
            Payload::SymbolicInverse {
                representatives,
                denominator,
                coefficients,
                ..
            } => {
                rec(
                    &mut w,
                    &["index", "basis", "numerator", "denominator"].map(String::from),
                );
                for row in coefficients {
                    for (m, c) in representatives.iter().zip(&row.numerators) {
                        rec(&mut w, &[s(&row.index), s(m), s(c), s(denominator)]);
                    }
                }
            }
            Payload::Spectrum { eigenvalues, .. } => {
                rec(
                    &mut w,
                    &["character", "conductor", "re", "im"].map(String::from),
                );
                for e in eigenvalues {
                    rec(
                        &mut w,
                        &[
                            exponent_str(&e.character),
                            s(&e.conductor),
                            s(&e.eigenvalue.re),
                            s(&e.eigenvalue.im),
                        ],
                    );
                }
            }
            Payload::Verify { reports, .. } => {
                rec(
                    &mut w,
                    &[
                        "check",
                        "n",
                        "variant",
                        "max_residual",
                        "tolerance",
                        "outcome",
                        "detail",
                    ]
                    .map(String::from),
                );
                for r in reports {
                    rec(
                        &mut w,
                        &[
                            s(&r.check),
                            s(&r.modulus),
                            r.variant.clone().unwrap_or_default(),
                            r.max_residual.map(|x| x.to_string()).unwrap_or_default(),
                            s(&r.tolerance),
                            outcome_str(r.outcome).into(),
                            r.detail.clone().unwrap_or_default(),
                        ],
                    );
                }
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }

    /// Aligned plain-text rendering for people.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Matrix {
                kind,
                modulus,
                representatives,
                rows,
            } => {
                let _ = writeln!(out, "{kind} matrix, n = {modulus}, R = {representatives:?}");
                let sym = kind.symbol();
                write_grid(&mut out, representatives, rows, |e| {
                    format!("{}{sym}_{}", sign_prefix(e.sign), e.index)
                });
                let _ = writeln!(out);
                write_grid(&mut out, representatives, rows, |e| {
                    format!("{:.10}", e.value)
                });
            }
            Payload::Inverse {
                kind,
                modulus,
                representatives,
                hat_values,
                rows,
                reconstruction_residual,
            } => {
                let sym = kind.symbol();
                let _ = writeln!(
                    out,
                    "inverse {kind} matrix, n = {modulus}, R = {representatives:?}"
                );
                write_grid(&mut out, representatives, rows, |e| {
                    format!("{}{sym}^_{}", sign_prefix(e.sign), e.index)
                });
                let _ = writeln!(out);
                for h in hat_values {
                    let _ = writeln!(out, "{sym}^_{:<4} = {:>20.15}", h.index, h.value);
                }
                let _ = writeln!(out);
                write_grid(&mut out, representatives, rows, |e| {
                    format!("{:.10}", e.value)
                });
                let _ = writeln!(out, "\nmax |M·M^ − I| = {reconstruction_residual:e}");
            }
            Payload::SymbolicInverse {
                kind,
                modulus,
                representatives,
                denominator,
                coefficients,
            } => {
                let sym = kind.symbol();
                let _ = writeln!(
                    out,
                    "inverse {kind} coefficients, n = {modulus}, R = {representatives:?}"
                );
                for row in coefficients {
                    let mut terms = String::new();
                    for (m, &c) in representatives.iter().zip(&row.numerators) {
                        if c == 0 {
                            continue;
                        }
                        let sign = if c < 0 { "−" } else { "+" };
                        if terms.is_empty() {
                            if c < 0 {
                                terms.push('−');
                            }
                        } else {
                            let _ = write!(terms, " {sign} ");
                        }
                        if c.abs() != 1 {
                            let _ = write!(terms, "{}", c.abs());
                        }
                        let _ = write!(terms, "{sym}_{m}");
                    }
                    if terms.is_empty() {
                        terms.push('0');
                    }
                    let _ = writeln!(out, "{sym}^_{} = ({terms})/{denominator}", row.index);
                }
            }
            Payload::Spectrum {
                kind,
                modulus,
                generators,
                eigenvalues,
                zero_eigenvalues,
                abs_determinant,
            } => {
                let _ = writeln!(
                    out,
                    "{kind} spectrum, n = {modulus}, generators {generators:?}"
                );
                let _ = writeln!(
                    out,
                    "{:<16} {:>9} {:>22} {:>22}",
                    "character", "conductor", "re", "im"
                );
                for e in eigenvalues {
                    let _ = writeln!(
                        out,
                        "{:<16} {:>9} {:>22.15} {:>22.15}",
                        exponent_str(&e.character),
                        e.conductor,
                        e.eigenvalue.re,
                        e.eigenvalue.im
                    );
                }
                let _ = writeln!(out, "zero eigenvalues: {zero_eigenvalues}");
                let _ = writeln!(out, "|det| = {abs_determinant:e}");
            }
            Payload::Verify { summary, reports } => {
                let _ = writeln!(
                    out,
                    "{:<16} {:>5} {:<7} {:>12} {:>10} {:<5} detail",
                    "check", "n", "variant", "residual", "tol", "result"
                );
                for r in reports {
                    let _ = writeln!(
                        out,
                        "{:<16} {:>5} {:<7} {:>12} {:>10.0e} {:<6} {}",
                        r.check.name(),
                        r.modulus,
                        r.variant.as_deref().unwrap_or("-"),
                        r.max_residual
                            .map(|x| format!("{x:.3e}"))
                            .unwrap_or_else(|| "-".into()),
                        r.tolerance,
                        outcome_str(r.outcome),
                        r.detail.as_deref().unwrap_or("")
                    );
                }
                let _ = writeln!(
                    out,
                    "passed {} failed {} skipped {}",
                    summary.passed, summary.failed, summary.skipped
                );
            }
        }
        out
    }
}

fn write_grid(
    out: &mut String,
    reps: &[u64],
    rows: &[Vec<EntryDoc>],
    cell: impl Fn(&EntryDoc) -> String,
) {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(&cell).collect()).collect();
    let width = cells
        .iter()
        .flatten()
        .map(|c| c.chars().count())
        .max()
        .unwrap_or(1);
    let label = reps.iter().map(|r| r.to_string().len()).max().unwrap_or(1);
    for (j, row) in reps.iter().zip(&cells) {
        let _ = write!(out, "{j:>label$} |");
        for c in row {
            let pad = width - c.chars().count();
            let _ = write!(out, " {}{c}", " ".repeat(pad));
        }
        let _ = writeln!(out);
    }
}

fn sign_prefix(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "",
        Sign::Minus => "-",
    }
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

fn outcome_str(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "FAIL",
        Outcome::Skip => "skip",
    }
}

fn exponent_str(e: &[u64]) -> String {
    let parts: Vec<String> = e.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::spectrum;
    use crate::trigmat::{build_matrix, explicit_inverse, hat_coefficients};
    use crate::verify::{sweep, CheckKind, Tolerances};
    use proptest::prelude::*;

    fn echo(name: &str) -> CommandEcho {
        CommandEcho {
            name: name.into(),
            ..Default::default()
        }
    }

    #[test]
    fn symbolic_payload_has_no_floats() {
        let doc = OutputDocument::new(
            echo("invert"),
            Payload::symbolic(&hat_coefficients(15, Kind::Sine).unwrap()),
        );
        let json = doc.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        fn no_floats(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Number(n) => n.is_i64() || n.is_u64(),
                serde_json::Value::Array(a) => a.iter().all(no_floats),
                serde_json::Value::Object(o) => o.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&value["payload"]));
        assert_eq!(
            value["payload"]["coefficients"][0]["numerators"],
            serde_json::json!([3, -1, 0, 1])
        );
        assert_eq!(value["payload"]["denominator"], 15);
    }

    #[test]
    fn table_renders_fifteen_example() {
        let doc = OutputDocument::new(
            echo("invert"),
            Payload::symbolic(&hat_coefficients(15, Kind::Sine).unwrap()),
        );
        let t = doc.to_table();
        assert!(t.contains("s^_1 = (3s_1 − s_2 + s_7)/15"), "{t}");
        assert!(t.contains("s^_2 = (−s_1 − s_4 − 3s_7)/15"), "{t}");
    }

    #[test]
    fn every_payload_round_trips() {
        let inv = explicit_inverse(15, Kind::Sine).unwrap();
        let docs = vec![
            Payload::matrix(&build_matrix(15, Kind::Sine).unwrap()),
            Payload::inverse(&inv, 1.5e-16),
            Payload::symbolic(inv.coefficients()),
            Payload::spectrum(&spectrum(12, Kind::Sine).unwrap()),
            Payload::verify(
                sweep(
                    3,
                    12,
                    &[CheckKind::Lemma2, CheckKind::Invertibility],
                    &Tolerances::default(),
                )
                .unwrap(),
            ),
        ];
        for p in docs {
            let doc = OutputDocument::new(echo("x"), p);
            let back = OutputDocument::from_json(&doc.to_json()).unwrap();
            assert_eq!(back, doc);
            assert!(!doc.to_csv().is_empty());
            assert!(!doc.to_table().is_empty());
        }
    }

    proptest! {
        #[test]
        fn floats_round_trip_exactly(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let doc = OutputDocument::new(
                echo("x"),
                Payload::Inverse {
                    kind: Kind::Sine,
                    modulus: 3,
                    representatives: vec![1],
                    hat_values: vec![HatValue { index: 1, value: x }],
                    rows: vec![vec![EntryDoc { sign: Sign::Minus, index: 1, value: x }]],
                    reconstruction_residual: x,
                },
            );
            let back = OutputDocument::from_json(&doc.to_json()).unwrap();
            prop_assert_eq!(back, doc);
        }
    }
}
