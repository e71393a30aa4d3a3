//! Output records and table rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::classifier::{campbell_classes, expected_table, Classification, OrbitLabel};
use crate::field::Field;
use crate::group::{representative_conics, RepParams};
use crate::pencil::{OrbitDistributions, PencilSolid};
use crate::ParseError;

/// Distributions of one solid. Field order is part of the format.
#[derive(Clone, Debug, Serialize)]
pub struct SolidRecord {
    pub q: usize,
    pub solid: String,
    pub point_od: [u64; 4],
    pub hyperplane_od: [u64; 4],
    pub base_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<OrbitLabel>,
}

impl SolidRecord {
    pub fn new(s: &PencilSolid, d: &OrbitDistributions, label: Option<OrbitLabel>) -> SolidRecord {
        SolidRecord {
            q: s.q(),
            solid: s.to_text(),
            point_od: d.point_od,
            hyperplane_od: d.hyperplane_od,
            base_count: d.base_count,
            label,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyRecord {
    pub solid: String,
    pub label: OrbitLabel,
    pub point_od: [u64; 4],
    pub hyperplane_od: [u64; 4],
}

impl ClassifyRecord {
    pub fn new(s: &PencilSolid, c: &Classification) -> ClassifyRecord {
        ClassifyRecord {
            solid: s.to_text(),
            label: c.label,
            point_od: c.distributions.point_od,
            hyperplane_od: c.distributions.hyperplane_od,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HistogramRecord {
    pub q: usize,
    pub counts: [u64; 15],
    pub total: u64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    JsonLines,
    Latex,
    Csv,
}

impl FromStr for Format {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json-lines" => Ok(Format::JsonLines),
            "latex" => Ok(Format::Latex),
            "csv" => Ok(Format::Csv),
            _ => Err(ParseError::Token(s.to_string())),
        }
    }
}

/// One row of the combined orbit table at a given q.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub label: OrbitLabel,
    pub q: usize,
    /// The two generating conics, 6 hex digits each.
    pub conics: [String; 2],
    /// Parameter values used by this row, e.g. `gamma=2`.
    pub params: String,
    pub point_od: [u64; 4],
    pub hyperplane_od: [u64; 4],
    pub stabilizer: &'static str,
    pub stabilizer_order: u64,
    pub orbit_size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub campbell: Option<String>,
}

fn params_for(label: OrbitLabel, p: &RepParams) -> String {
    match label.index() {
        7 | 10 | 12 => format!("gamma={}", p.gamma_inv_trace.to_hex()),
        13 | 14 => format!("gamma={}", p.gamma_trace.to_hex()),
        15 => format!("b={} c={}", p.b.to_hex(), p.c.to_hex()),
        _ => String::new(),
    }
}

pub fn table_rows(field: &Field, campbell: bool) -> Vec<TableRow> {
    let q = field.q();
    let p = RepParams::search(field);
    expected_table(q as u64)
        .into_iter()
        .map(|row| {
            let (c1, c2) = representative_conics(row.label, &p, field);
            let hex = |c: [crate::Fe; 6]| c.iter().map(|x| x.to_hex()).collect::<String>();
            TableRow {
                label: row.label,
                q,
                conics: [hex(c1), hex(c2)],
                params: params_for(row.label, &p),
                point_od: row.point_od,
                hyperplane_od: row.hyperplane_od,
                stabilizer: row.stabilizer,
                stabilizer_order: row.stabilizer_order,
                orbit_size: row.orbit_size,
                campbell: campbell.then(|| campbell_classes(row.label).join("; ")),
            }
        })
        .collect()
}

fn od_text(od: &[u64; 4]) -> String {
    format!("[{},{},{},{}]", od[0], od[1], od[2], od[3])
}

pub fn render_json_lines(rows: &[TableRow]) -> String {
    rows.iter()
        .map(|r| serde_json::to_string(r).expect("serializable") + "\n")
        .collect()
}

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let campbell = rows.iter().any(|r| r.campbell.is_some());
    let mut header = vec![
        "label",
        "q",
        "conic1",
        "conic2",
        "params",
        "point_od",
        "hyperplane_od",
        "stabilizer",
        "stabilizer_order",
        "orbit_size",
    ];
    if campbell {
        header.push("campbell");
    }
    w.write_record(&header).expect("in-memory write");
    for r in rows {
        let mut rec = vec![
            r.label.to_string(),
            r.q.to_string(),
            r.conics[0].clone(),
            r.conics[1].clone(),
            r.params.clone(),
            od_text(&r.point_od),
            od_text(&r.hyperplane_od),
            r.stabilizer.to_string(),
            r.stabilizer_order.to_string(),
            r.orbit_size.to_string(),
        ];
        if campbell {
            rec.push(r.campbell.clone().unwrap_or_default());
        }
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Conic coefficients as a LaTeX polynomial in X0, X1, X2.
fn conic_latex(hex: &str) -> String {
    const MONOMIALS: [&str; 6] = ["X_0^2", "X_0X_1", "X_0X_2", "X_1^2", "X_1X_2", "X_2^2"];
    let terms: Vec<String> = hex
        .chars()
        .zip(MONOMIALS)
        .filter(|(c, _)| *c != '0')
        .map(|(c, m)| {
            if c == '1' {
                m.to_string()
            } else {
                format!("{c}{m}")
            }
        })
        .collect();
    terms.join("+")
}

fn stabilizer_latex(name: &str) -> String {
    name.replace(" x ", " \\times ")
        .replace("Sym_4", "\\mathrm{Sym}_4")
        .replace("GL(2,q)", "\\mathrm{GL}(2,q)")
}

/// A standalone LaTeX document with one table row per orbit. Field elements
/// are written as hex digits (polynomial bitstrings).
pub fn render_latex(rows: &[TableRow]) -> String {
    let q = rows.first().map_or(0, |r| r.q);
    let campbell = rows.iter().any(|r| r.campbell.is_some());
    let mut s = String::new();
    s.push_str("\\documentclass{article}\n\\usepackage{booktabs}\n\\usepackage{amsmath}\n\\begin{document}\n");
    s.push_str("\\begin{table}\n\\centering\n\\small\n");
    let cols = if campbell { "llllllll" } else { "lllllll" };
    let _ = writeln!(s, "\\begin{{tabular}}{{{cols}}}\n\\toprule");
    s.push_str("Orbit & Generating conics & Parameters & Point OD & Hyperplane OD & Stabiliser & Orbit size");
    if campbell {
        s.push_str(" & Campbell");
    }
    s.push_str(" \\\\\n\\midrule\n");
    for r in rows {
        let _ = write!(
            s,
            "$\\Omega_{{{}}}$ & ${}$, ${}$ & {} & ${}$ & ${}$ & ${}$ (order {}) & {}",
            r.label.index(),
            conic_latex(&r.conics[0]),
            conic_latex(&r.conics[1]),
            r.params.replace("gamma", "$\\gamma$"),
            od_text(&r.point_od),
            od_text(&r.hyperplane_od),
            stabilizer_latex(r.stabilizer),
            r.stabilizer_order,
            r.orbit_size
        );
        if let Some(c) = &r.campbell {
            let _ = write!(s, " & {c}");
        }
        s.push_str(" \\\\\n");
    }
    let _ = writeln!(s, "\\bottomrule\n\\end{{tabular}}\n\\caption{{Orbits of solids of $\\mathrm{{PG}}(5,{q})$.}}\n\\end{{table}}");
    s.push_str("\\end{document}\n");
    s
}

pub fn render(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::JsonLines => render_json_lines(rows),
        Format::Latex => render_latex(rows),
        Format::Csv => render_csv(rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_orbit_sizes_sum() {
        let f = Field::new(2).unwrap();
        let text = render_csv(&table_rows(&f, false));
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let sizes: u64 = r
            .records()
            .map(|rec| rec.unwrap()[9].parse::<u64>().unwrap())
            .sum();
        assert_eq!(sizes, 651);
    }

    #[test]
    fn latex_is_balanced() {
        let f = Field::new(4).unwrap();
        let text = render_latex(&table_rows(&f, true));
        assert!(text.starts_with("\\documentclass"));
        assert!(text.trim_end().ends_with("\\end{document}"));
        assert_eq!(
            text.matches("\\begin{").count(),
            text.matches("\\end{").count()
        );
        assert_eq!(text.matches('{').count(), text.matches('}').count());
        assert_eq!(text.matches("\\\\\n").count(), 16);
    }

    #[test]
    fn conic_polynomials() {
        assert_eq!(conic_latex("010001"), "X_0X_1+X_2^2");
        assert_eq!(conic_latex("200100"), "2X_0^2+X_1^2");
    }
}
