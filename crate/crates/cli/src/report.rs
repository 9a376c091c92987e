//! Report assembly and rendering.

use std::fmt::Write as _;

use distlab_core::check::CheckRecord;
use distlab_core::cyclotomic::{roots_of_unity, unit_index};
use distlab_core::ntheory::omega;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

const S_DEFINITION: &str =
    "S = S' cap Z[G], S' the Z-span of omega(x) = sum_t {xt} sigma_t^{-1} over x in (1/m)Z/Z";

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub m: Option<u64>,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Record {
    pub fn from_check(c: CheckRecord, runtime_ms: Option<u64>) -> Record {
        Record {
            name: c.name,
            m: c.m,
            inputs: c.inputs,
            expected: c.expected,
            computed: c.computed,
            pass: c.pass,
            runtime_ms,
        }
    }
}

/// Per-level constants the checks depend on.
#[derive(Clone, Debug, Serialize)]
pub struct Level {
    pub m: u64,
    pub r: u32,
    pub w: u64,
    #[serde(rename = "Q")]
    pub q: u64,
}

impl Level {
    pub fn new(m: u64) -> Level {
        Level {
            m,
            r: omega(m),
            w: roots_of_unity(m),
            q: unit_index(m),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Assumptions {
    pub w: &'static str,
    #[serde(rename = "Q")]
    pub q: &'static str,
    pub stickelberger_ideal: &'static str,
}

impl Default for Assumptions {
    fn default() -> Self {
        Assumptions {
            w: "number of roots of unity in Q(zeta_m): 2m for odd m, m for even m",
            q: "unit index: 1 for prime powers, 2 otherwise",
            stickelberger_ideal: S_DEFINITION,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub p: i32,
    pub q: i32,
    pub group: String,
}

/// One spectral sequence page, kept for display.
#[derive(Clone, Debug, Serialize)]
pub struct PageTable {
    pub m: u64,
    pub d: String,
    pub page: usize,
    pub q_max: i32,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool_version: &'static str,
    pub suite: String,
    pub levels: Vec<Level>,
    pub assumptions: Assumptions,
    pub records: Vec<Record>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pages: Vec<PageTable>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: &str, ms: &[u64], mut records: Vec<Record>, pages: Vec<PageTable>) -> Report {
        records.sort_by(|a, b| (a.m, &a.name, &a.inputs).cmp(&(b.m, &b.name, &b.inputs)));
        let pass = records.iter().all(|r| r.pass);
        Report {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            suite: suite.to_string(),
            levels: ms.iter().map(|&m| Level::new(m)).collect(),
            assumptions: Assumptions::default(),
            records,
            pages,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "distlab {} | suite {}", self.tool_version, self.suite);
        let header = ["m", "check", "pass", "expected", "computed", "inputs"];
        let rows: Vec<[String; 6]> = self
            .records
            .iter()
            .map(|r| {
                [
                    r.m.map_or("-".into(), |m| m.to_string()),
                    r.name.clone(),
                    if r.pass { "ok" } else { "FAIL" }.to_string(),
                    r.expected.clone(),
                    r.computed.clone(),
                    match r.runtime_ms {
                        Some(t) => format!("{} [{t} ms]", r.inputs),
                        None => r.inputs.clone(),
                    },
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(widths).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    let _ = write!(s, "{c:<w$}  ");
                }
            }
            s.trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&header.map(String::from)));
        for row in &rows {
            let _ = writeln!(out, "{}", line(row));
        }
        for page in &self.pages {
            out.push('\n');
            out.push_str(&page_grid(page));
        }
        let failed = self.records.iter().filter(|r| !r.pass).count();
        let _ = writeln!(
            out,
            "\n{} checks, {} failed: {}",
            self.records.len(),
            failed,
            if self.pass { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// `E_r` as a grid with `q` decreasing down the rows.
fn page_grid(t: &PageTable) -> String {
    let mut out = format!(
        "E_{} of (K, {}) at m = {}, q <= {}\n",
        t.page, t.d, t.m, t.q_max
    );
    if t.cells.is_empty() {
        out.push_str("(no interior cells)\n");
        return out;
    }
    let ps: Vec<i32> = {
        let mut v: Vec<i32> = t.cells.iter().map(|c| c.p).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut qs: Vec<i32> = t.cells.iter().map(|c| c.q).collect();
    qs.sort_unstable_by(|a, b| b.cmp(a));
    qs.dedup();
    let width = t
        .cells
        .iter()
        .map(|c| c.group.len())
        .max()
        .unwrap_or(1)
        .max(4);
    let _ = write!(out, "{:>4} |", "q\\p");
    for p in &ps {
        let _ = write!(out, " {p:>width$}");
    }
    out.push('\n');
    for q in qs {
        let _ = write!(out, "{q:>4} |");
        for p in &ps {
            let g = t
                .cells
                .iter()
                .find(|c| c.p == *p && c.q == q)
                .map_or(".", |c| c.group.as_str());
            let _ = write!(out, " {g:>width$}");
        }
        out.push('\n');
    }
    out
}
