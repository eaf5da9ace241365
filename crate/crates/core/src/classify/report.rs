//! Text, CSV and JSON renderings. All output is ordered by `n` and contains
//! nothing that depends on timing, so identical inputs give identical bytes.

use serde::Serialize;

use crate::criteria::{CriterionId, CriterionOutcome, Witness};

use super::{Classification, DimensionReport, Summary, Verdict, VerdictStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Serialize)]
struct VerdictRow<'a> {
    n: u64,
    q: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    criterion: Option<CriterionId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tiling: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Witness>,
}

impl<'a> VerdictRow<'a> {
    fn new(v: &'a Verdict) -> Self {
        let (status, criterion, tiling, witness) = match &v.status {
            VerdictStatus::Tiles(source) => ("tiles", None, Some(source.as_str()), None),
            VerdictStatus::NoTiling { criterion, witness } => {
                ("no_tiling", Some(*criterion), None, Some(witness))
            }
            VerdictStatus::Unknown => ("unknown", None, None, None),
        };
        Self {
            n: v.n,
            q: v.q,
            status,
            criterion,
            tiling,
            witness,
        }
    }

    fn cells(&self) -> [String; 5] {
        let witness = match (self.tiling, self.witness) {
            (Some(source), _) => format!("source={source}"),
            (None, Some(w)) => w.to_string(),
            (None, None) => String::new(),
        };
        [
            self.n.to_string(),
            self.q.to_string(),
            self.status.to_string(),
            self.criterion.map(|c| c.to_string()).unwrap_or_default(),
            witness,
        ]
    }
}

const VERDICT_HEADER: [&str; 5] = ["n", "q", "status", "criterion", "witness"];

pub fn render_verdicts(classification: &Classification, format: Format) -> String {
    let rows: Vec<VerdictRow> = classification.verdicts().map(VerdictRow::new).collect();
    match format {
        Format::Json => json(&rows),
        Format::Csv => csv_table(&VERDICT_HEADER, rows.iter().map(VerdictRow::cells)),
        Format::Text => aligned(&VERDICT_HEADER, rows.iter().map(VerdictRow::cells)),
    }
}

#[derive(Serialize)]
struct CheckReport<'a> {
    #[serde(flatten)]
    verdict: VerdictRow<'a>,
    outcomes: &'a [CriterionOutcome],
}

const CHECK_HEADER: [&str; 3] = ["criterion", "status", "witness"];

fn outcome_cells(o: &CriterionOutcome) -> [String; 3] {
    [
        o.criterion.to_string(),
        o.status.to_string(),
        o.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
    ]
}

/// Verdict for one dimension together with every criterion outcome.
pub fn render_check(report: &DimensionReport, format: Format) -> String {
    let verdict = VerdictRow::new(&report.verdict);
    match format {
        Format::Json => json(&CheckReport {
            verdict,
            outcomes: &report.outcomes,
        }),
        Format::Csv => {
            let [n, q, status, criterion, witness] = verdict.cells();
            let header = ["n", "q", "verdict", "criterion", "status", "witness"];
            let mut rows = vec![[n.clone(), q.clone(), status.clone(), criterion, String::new(), witness]];
            rows.extend(report.outcomes.iter().map(|o| {
                let [c, s, w] = outcome_cells(o);
                [n.clone(), q.clone(), status.clone(), c, s, w]
            }));
            csv_table(&header, rows)
        }
        Format::Text => {
            let [n, q, status, criterion, witness] = verdict.cells();
            let mut out = format!("n       {n}\nq       {q}\nstatus  {status}\n");
            if !criterion.is_empty() {
                out.push_str(&format!("by      {criterion}\n"));
            }
            if !witness.is_empty() {
                out.push_str(&format!("witness {witness}\n"));
            }
            out.push('\n');
            out.push_str(&aligned(&CHECK_HEADER, report.outcomes.iter().map(outcome_cells)));
            out
        }
    }
}

pub fn render_summary(summary: &Summary, format: Format) -> String {
    match format {
        Format::Json => json(summary),
        Format::Csv => csv_table(&["section", "key", "value"], summary_rows(summary)),
        Format::Text => {
            let mut out = String::new();
            let mut section = String::new();
            for [s, key, value] in summary_rows(summary) {
                if s != section {
                    if !section.is_empty() {
                        out.push('\n');
                    }
                    out.push_str(&format!("[{s}]\n"));
                    section = s;
                }
                out.push_str(&format!("{key:<24} {value}\n"));
            }
            out
        }
    }
}

fn summary_rows(s: &Summary) -> Vec<[String; 3]> {
    let mut rows = Vec::new();
    let mut push = |section: &str, key: String, value: String| rows.push([section.to_string(), key, value]);
    push("shape", "arms".into(), s.arms().to_string());
    push("shape", "max_n".into(), s.n_max.to_string());
    push("status", "tiles".into(), s.tiles.to_string());
    push("status", "no_tiling".into(), s.no_tiling.to_string());
    push("status", "unknown".into(), s.unknown.to_string());
    push("status", "unknown_dimensions".into(), join(&s.unknown_dimensions));
    for (id, count) in &s.firings {
        push("fires", id.to_string(), count.to_string());
    }
    for (id, count) in &s.attributions {
        push("attributed", id.to_string(), count.to_string());
    }
    for line in &s.residue_lines {
        push(
            "residues",
            format!("n={} mod {}", line.residue, line.modulus),
            format!("{}/{} ruled out", line.ruled_out, line.total),
        );
    }
    for (m, residues) in &s.survivor_residues {
        push("survivors", format!("mod {m}"), join(residues));
    }
    rows
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

fn csv_table<const N: usize>(header: &[&str; N], rows: impl IntoIterator<Item = [String; N]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv of utf-8 input")
}

fn aligned<const N: usize>(header: &[&str; N], rows: impl IntoIterator<Item = [String; N]>) -> String {
    let rows: Vec<[String; N]> = rows.into_iter().collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let mut l = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == N {
                l.push_str(cell);
            } else {
                l.push_str(&format!("{cell:<w$}  "));
            }
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(header);
    for row in &rows {
        line(&row.each_ref().map(String::as_str));
    }
    out
}
