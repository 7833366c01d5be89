use std::fmt::Write;

use haar_core::algebra::{Poly, RationalFunction};
use haar_core::combinatorics::partitions_of;
use haar_core::optimizer::Trace;
use haar_core::weingarten::WeingartenTable;
use haar_core::{ClassCounts, Dim, Group};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Number, Value};

use crate::Format;

/// Standard errors within which a Monte Carlo estimate counts as agreeing.
pub const AGREEMENT_SE: f64 = 4.0;

pub fn to_f64(q: &BigRational) -> f64 {
    let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

fn big(b: &BigInt) -> Value {
    Value::Number(b.to_string().parse::<Number>().expect("integer literal"))
}

fn coeffs(p: &Poly) -> Value {
    let c: Vec<Value> = if p.is_zero() {
        vec![json!(0)]
    } else {
        p.coeffs().iter().map(big).collect()
    };
    Value::Array(c)
}

fn dim_json(dim: Dim) -> Value {
    match dim {
        Dim::Symbolic => json!("d"),
        Dim::Fixed(d) => json!(d),
    }
}

pub struct VerifyReport {
    pub direct_matches: bool,
    pub estimate: f64,
    pub standard_error: f64,
    pub samples: usize,
    pub seed: u64,
    pub exact: f64,
}

impl VerifyReport {
    pub fn z(&self) -> f64 {
        if self.standard_error > 0.0 {
            (self.estimate - self.exact) / self.standard_error
        } else if (self.estimate - self.exact).abs() < 1e-12 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    pub fn agrees(&self) -> bool {
        self.direct_matches && self.z().abs() <= AGREEMENT_SE
    }
}

pub struct Rendered {
    pub group: Group,
    pub n: usize,
    pub dim: Dim,
    pub value: RationalFunction,
    pub trace: Option<Trace>,
    pub verify: Option<VerifyReport>,
}

impl Rendered {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => self.json(),
            Format::Tsv => self.tsv(),
        }
    }

    fn text(&self) -> String {
        let mut out = format!("{}\n", self.value.render());
        if let Some(t) = &self.trace {
            out.push_str(&t.to_text());
        }
        if let Some(v) = &self.verify {
            let _ = writeln!(out, "direct sum: {}", if v.direct_matches { "equal" } else { "DIFFERENT" });
            let _ = writeln!(
                out,
                "monte carlo: {:.6} ± {:.6} against {:.6} (z = {:+.2}, {} samples, seed {})",
                v.estimate,
                v.standard_error,
                v.exact,
                v.z(),
                v.samples,
                v.seed
            );
            let _ = writeln!(out, "verdict: {}", if v.agrees() { "agree" } else { "DISAGREE" });
        }
        out
    }

    fn json(&self) -> String {
        let mut v = json!({
            "group": self.group.tag(),
            "n": self.n,
            "dim": dim_json(self.dim),
            "numerator": coeffs(self.value.numerator()),
            "denominator": coeffs(self.value.denominator()),
        });
        if let Some(t) = &self.trace {
            v["trace"] = json!(t.events().iter().map(|e| e.to_string()).collect::<Vec<_>>());
        }
        if let Some(r) = &self.verify {
            v["verify"] = json!({
                "direct_matches": r.direct_matches,
                "estimate": r.estimate,
                "standard_error": r.standard_error,
                "samples": r.samples,
                "seed": r.seed,
                "agree": r.agrees(),
            });
        }
        format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
    }

    fn tsv(&self) -> String {
        format!("group\tn\tdim\tvalue\n{}\t{}\t{}\t{}\n", self.group, self.n, self.dim, self.value.render())
    }
}

pub struct CountsTable {
    pub n: usize,
    pub rows: Vec<(Vec<i64>, ClassCounts)>,
}

fn join(list: &[i64]) -> String {
    list.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl CountsTable {
    pub fn render(&self, format: Format) -> String {
        let columns = partitions_of(self.n, None);
        match format {
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|(i, c)| {
                        json!({
                            "I": i,
                            "counts": columns.iter().map(|p| big(&c.get(p))).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let v = json!({
                    "group": "O",
                    "n": self.n,
                    "columns": columns.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "rows": rows,
                });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
            }
            Format::Tsv => {
                let mut out = String::from("I");
                for p in &columns {
                    let _ = write!(out, "\t{p}");
                }
                out.push('\n');
                for (i, c) in &self.rows {
                    out.push_str(&join(i));
                    for p in &columns {
                        let _ = write!(out, "\t{}", c.get(p));
                    }
                    out.push('\n');
                }
                out
            }
            Format::Text => {
                let first = self.rows.iter().map(|(i, _)| join(i).len()).max().unwrap_or(1).max(1);
                let widths: Vec<usize> = columns
                    .iter()
                    .map(|p| {
                        let data = self.rows.iter().map(|(_, c)| c.get(p).to_string().len()).max().unwrap_or(1);
                        data.max(p.to_string().len())
                    })
                    .collect();
                let mut out = format!("{:<first$}", "I");
                for (p, w) in columns.iter().zip(&widths) {
                    let _ = write!(out, "  {:>w$}", p.to_string());
                }
                out.push('\n');
                for (i, c) in &self.rows {
                    let _ = write!(out, "{:<first$}", join(i));
                    for (p, w) in columns.iter().zip(&widths) {
                        let _ = write!(out, "  {:>w$}", c.get(p).to_string());
                    }
                    out.push('\n');
                }
                out
            }
        }
    }
}

pub fn weingarten_table(table: &WeingartenTable, format: Format) -> String {
    let entries = table.entries();
    match format {
        Format::Text => entries.iter().map(|(p, v)| format!("W{p} = {}\n", v.render())).collect(),
        Format::Tsv => {
            let mut out = String::from("partition\tvalue\n");
            for (p, v) in &entries {
                let _ = writeln!(out, "{p}\t{}", v.render());
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|(p, v)| {
                    json!({
                        "partition": p.parts(),
                        "numerator": coeffs(v.numerator()),
                        "denominator": coeffs(v.denominator()),
                    })
                })
                .collect();
            let v = json!({
                "group": table.group().tag(),
                "n": table.n(),
                "dim": dim_json(table.dim()),
                "entries": rows,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
    }
}
