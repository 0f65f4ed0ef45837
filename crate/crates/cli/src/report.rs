//! Human and JSON rendering of command results.

use serde::Serialize;
use serde_json::{json, Value};

use fibrato::bounds::Table;
use fibrato::constructions::Construction;
use fibrato::datum::{DatumInvariantsReport, Violation};
use fibrato::fibration::AuditReport;
use fibrato::germs::{Germ, ResolutionTrace, Singularity};
use fibrato::hurwitz::{BranchDatum, HurwitzError, Realizability};
use fibrato::rational::{render_decimal, Rational};

use crate::search::SearchRow;
use crate::SCHEMA_VERSION;

/// Exact value, with a three-decimal approximation when it is not whole.
pub fn approx(q: &Rational) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("{q}≈{}", render_decimal(q, 3))
    }
}

fn opt(q: &Option<Rational>) -> String {
    q.as_ref().map_or_else(|| "undefined".into(), approx)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub struct Output {
    json: bool,
    value: Option<Value>,
}

impl Output {
    pub fn new(json: bool) -> Self {
        Output { json, value: None }
    }

    fn emit(&mut self, command: &str, body: Value) {
        let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
        if let (Value::Object(head), Value::Object(rest)) = (&mut v, body) {
            head.extend(rest);
        }
        self.value = Some(v);
    }

    pub fn finish(self) {
        if let Some(v) = self.value {
            println!(
                "{}",
                serde_json::to_string_pretty(&v).expect("values serialize")
            );
        }
    }

    pub fn audit(&mut self, report: &AuditReport) {
        if self.json {
            self.emit(
                "audit",
                json!({ "passed": report.passed(), "checks": to_value(&report.checks) }),
            );
            return;
        }
        for c in &report.checks {
            let mut line = format!("{:<8} {}", c.status.to_string(), c.check);
            if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                let kind = if c.strict { "strict" } else { "weak" };
                line.push_str(&format!("  [lhs {}, rhs {}, {kind}]", approx(l), approx(r)));
            }
            if let Some(n) = &c.note {
                line.push_str(&format!("  ({n})"));
            }
            println!("{line}");
        }
        println!("audit: {}", if report.passed() { "PASS" } else { "FAIL" });
    }

    pub fn resolution(
        &mut self,
        g: &Germ,
        t: &ResolutionTrace,
        label: Option<Singularity>,
        trace: bool,
    ) {
        if self.json {
            let mut body = json!({
                "germ": g.to_string(),
                "classification": label.map(|l| l.to_string()),
                "multiplicities": t.multiplicities(),
                "terminal_smooth": t.terminal_smooth,
                "sum_k_km1": t.sum_k_km1(),
                "sum_km1_sq": t.sum_km1_sq(),
            });
            if trace {
                body["trace"] = to_value(&t.points);
            }
            self.emit("resolve", body);
            return;
        }
        println!("germ            {g}");
        if let Some(l) = label {
            println!("classification  {l}");
        }
        println!("multiplicities  {:?}", t.multiplicities());
        println!("sum k(k-1)      {}", t.sum_k_km1());
        println!("sum (k-1)^2     {}", t.sum_km1_sq());
        println!("terminal smooth {}", t.terminal_smooth);
        if trace {
            for (i, p) in t.points.iter().enumerate() {
                let indent = "  ".repeat(p.depth as usize);
                let dir = p
                    .direction
                    .as_ref()
                    .map_or_else(|| "origin".to_string(), |d| format!("dir {d}"));
                println!(
                    "{i:>3} {indent}m={} k={} {} [{dir}] {}",
                    p.multiplicity, p.k, p.classification, p.germ
                );
            }
        }
    }

    pub fn example(
        &mut self,
        c: &Construction,
        r: &DatumInvariantsReport,
        matches: bool,
        audited: &AuditReport,
    ) {
        if self.json {
            self.emit(
                "example",
                json!({
                    "family": c.family.name(),
                    "g": c.g,
                    "expected": to_value(&c.expected),
                    "matches_expected": matches,
                    "report": summary(r),
                    "audit": { "passed": audited.passed(), "checks": to_value(&audited.checks) },
                }),
            );
            return;
        }
        println!("family {} (g = {})", c.family, c.g);
        print_invariants(r);
        println!(
            "expected χ_f={} L_f={}: {}",
            approx(&c.expected.chi),
            approx(&c.expected.speed),
            if matches { "match" } else { "MISMATCH" }
        );
        print_semistable(r);
        println!("audit: {}", if audited.passed() { "PASS" } else { "FAIL" });
    }

    pub fn tables(&mut self, tables: &[Table], csv: bool) {
        if self.json {
            let list: Vec<Value> = tables
                .iter()
                .map(|t| {
                    json!({
                        "table": t.number,
                        "title": t.title,
                        "columns": t.columns,
                        "rows": t.rows.iter().map(|(label, cells)| json!({
                            "label": label,
                            "exact": cells.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            "decimal": cells.iter().map(|c| render_decimal(c, 3)).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            self.emit("tables", json!({ "tables": list }));
            return;
        }
        for (i, t) in tables.iter().enumerate() {
            if csv {
                print!("{}", t.to_csv(i == 0));
            } else {
                if i > 0 {
                    println!();
                }
                print!("{}", t.to_markdown());
            }
        }
    }

    pub fn hurwitz(
        &mut self,
        b: &BranchDatum,
        solved: &Result<u32, HurwitzError>,
        compatible: bool,
        realizable: Option<Realizability>,
    ) {
        let solved_text = match solved {
            Ok(g) => g.to_string(),
            Err(e) => e.to_string(),
        };
        if self.json {
            self.emit(
                "hurwitz",
                json!({
                    "datum": to_value(b),
                    "m_tilde": b.m_tilde(),
                    "solved_source_genus": solved.as_ref().ok(),
                    "solve_error": solved.as_ref().err().map(|e| e.to_string()),
                    "compatible": compatible,
                    "realizability": realizable,
                }),
            );
            return;
        }
        println!(
            "degree {} over genus {}, m = {}, m~ = {}",
            b.d,
            b.g_target,
            b.m,
            b.m_tilde()
        );
        println!("solved source genus: {solved_text}");
        if let Some(g) = b.g_source {
            println!("source genus used:   {g}");
        }
        println!("compatible: {compatible}");
        if let Some(r) = realizable {
            println!(
                "realizability: {}",
                match r {
                    Realizability::Realizable => "realizable",
                    Realizability::Unknown => "unknown (sufficient criterion does not apply)",
                }
            );
        }
    }

    pub fn violations(&mut self, v: &[Violation]) {
        if self.json {
            self.emit(
                "datum",
                json!({ "valid": false, "violations": to_value(&v) }),
            );
            return;
        }
        println!("datum is invalid:");
        for x in v {
            println!("  - {}", x.message);
        }
    }

    pub fn datum(&mut self, r: &DatumInvariantsReport, audited: &AuditReport) {
        if self.json {
            self.emit(
                "datum",
                json!({
                    "valid": true,
                    "report": to_value(r),
                    "audit": { "passed": audited.passed(), "checks": to_value(&audited.checks) },
                }),
            );
            return;
        }
        for s in &r.germs {
            println!(
                "{:<14} {:<22} {:<15} {:?}",
                s.fiber,
                s.germ.to_string(),
                s.classification.to_string(),
                s.multiplicities
            );
        }
        print_invariants(r);
        print_semistable(r);
        println!("audit: {}", if audited.passed() { "PASS" } else { "FAIL" });
    }

    pub fn search(&mut self, genus: u32, rows: &[SearchRow]) {
        if self.json {
            self.emit(
                "search",
                json!({ "experimental": true, "genus": genus, "rows": to_value(&rows) }),
            );
            return;
        }
        println!("EXPERIMENTAL grid search, genus {genus}: candidates only, no claims");
        for row in rows {
            println!("{row}");
        }
        println!("{} candidates", rows.len());
    }
}

fn summary(r: &DatumInvariantsReport) -> Value {
    json!({
        "invariants": to_value(&r.invariants),
        "slope": r.slope.as_ref().map(|q| q.to_string()),
        "speed": r.speed.as_ref().map(|q| q.to_string()),
        "sum_k_km1": r.sum_k_km1,
        "sum_km1_sq": r.sum_km1_sq,
        "detected_vertical_curves": r.detected_vertical_curves,
        "semistable": to_value(&r.semistable),
    })
}

fn print_invariants(r: &DatumInvariantsReport) {
    let inv = &r.invariants;
    println!(
        "g={} g_C={} s={}  Σk(k-1)={} Σ(k-1)²={}",
        inv.g, inv.g_c, inv.s, r.sum_k_km1, r.sum_km1_sq
    );
    println!(
        "χ_f={}, ω_f²={}, δ_f={}, λ_f={}, L_f={}",
        approx(&inv.chi),
        approx(&inv.omega_sq),
        approx(&inv.delta),
        opt(&r.slope),
        opt(&r.speed)
    );
}

fn print_semistable(r: &DatumInvariantsReport) {
    if r.semistable.passed() {
        println!("semi-stable: pass");
    } else {
        println!("semi-stable: FAIL");
        for reason in &r.semistable.reasons {
            println!("  - {reason}");
        }
    }
}
