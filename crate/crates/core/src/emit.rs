//! Deterministic documents: summary tables, layout files, SVG figures,
//! convergence reports and verification reports.
//!
//! Every document is a pure function of its inputs. Text uses LF line
//! endings and ends with a newline.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{decimal_root3, decimal_string, PiScaled, Rational, Root3Scalar};
use crate::layout::{BoundingShape, Layout, Point};
use crate::oracle::VerificationReport;
use crate::sequences::{self, PackingCase, SideMode};

/// Fractional digits of the table columns.
pub const RADIUS_DIGITS: u32 = 6;
pub const RHO_A_DIGITS: u32 = 6;
pub const RHO_B_DIGITS: u32 = 9;
pub const RHO_C_DIGITS: u32 = 6;
pub const RHO_D_DIGITS: u32 = 6;
/// Digits of decimals in layout files and convergence reports.
pub const REPORT_DIGITS: u32 = 12;

/// Cell content for indices outside a case's domain.
pub const MISSING: &str = "/";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "md" | "markdown" => Ok(Self::Markdown),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format `{other}` (expected csv, md or json)")),
        }
    }
}

/// A rectangular table of pre-rendered cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Lines appended after the table, e.g. summaries.
    pub notes: Vec<String>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                for note in &self.notes {
                    let _ = writeln!(out, "# {note}");
                }
            }
            Format::Markdown => {
                let _ = writeln!(out, "| {} |", self.columns.join(" | "));
                let _ = writeln!(out, "|{}", "---:|".repeat(self.columns.len()));
                for row in &self.rows {
                    let _ = writeln!(out, "| {} |", row.join(" | "));
                }
                if !self.notes.is_empty() {
                    out.push('\n');
                    for note in &self.notes {
                        let _ = writeln!(out, "{note}");
                    }
                }
            }
            Format::Json => {
                let mut doc = json!({ "columns": self.columns, "rows": self.rows });
                if !self.notes.is_empty() {
                    doc["notes"] = json!(self.notes);
                }
                out = serde_json::to_string_pretty(&doc).expect("tables always serialize");
                out.push('\n');
            }
        }
        out
    }
}

fn dec(x: &PiScaled, digits: u32) -> String {
    decimal_string(x, digits).expect("column digit counts are within range")
}

fn cell(value: Result<PiScaled>, digits: u32) -> String {
    value.map(|v| dec(&v, digits)).unwrap_or_else(|_| MISSING.to_string())
}

/// Rows `1..=i_to` of the triangle summary: `i, N, R_over_r, rho_a, rho_b`,
/// with `rho_b` in paper mode.
pub fn table1(i_to: u64) -> Table {
    let mut t = Table::new(&["i", "N", "R_over_r", "rho_a", "rho_b"]);
    for i in 1..=i_to {
        let radius = sequences::radius_ratio(PackingCase::A, i).expect("i >= 1");
        t.rows.push(vec![
            i.to_string(),
            sequences::count(PackingCase::A, i).expect("i >= 1").to_string(),
            decimal_root3(&radius, RADIUS_DIGITS).expect("digits in range"),
            cell(sequences::density(PackingCase::A, i, SideMode::PaperFormula), RHO_A_DIGITS),
            cell(sequences::density(PackingCase::B, i, SideMode::PaperFormula), RHO_B_DIGITS),
        ]);
    }
    t
}

/// Rows `0..=i_to` of the hexagon summary: `i, N, R_over_r, rho_c, rho_d`.
pub fn table2(i_to: u64) -> Table {
    let mut t = Table::new(&["i", "N", "R_over_r", "rho_c", "rho_d"]);
    for i in 0..=i_to {
        t.rows.push(vec![
            i.to_string(),
            sequences::count(PackingCase::C, i).expect("i >= 0").to_string(),
            (2 * i + 1).to_string(),
            cell(sequences::density(PackingCase::C, i, SideMode::PaperFormula), RHO_C_DIGITS),
            cell(sequences::density(PackingCase::D, i, SideMode::PaperFormula), RHO_D_DIGITS),
        ]);
    }
    t
}

pub fn emit_table1(i_to: u64, format: Format) -> String {
    table1(i_to).render(format)
}

pub fn emit_table2(i_to: u64, format: Format) -> String {
    table2(i_to).render(format)
}

fn big_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// `{a_num, a_den, b_num, b_den}`.
pub fn root3_json(x: &Root3Scalar) -> Value {
    json!({
        "a_num": big_json(x.a().numer()),
        "a_den": big_json(x.a().denom()),
        "b_num": big_json(x.b().numer()),
        "b_den": big_json(x.b().denom()),
    })
}

fn big_from_json(v: &Value) -> Result<BigInt> {
    let bad = || Error::Malformed(format!("expected an integer, found {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
        Value::String(s) => s.parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

/// Inverse of [`root3_json`].
pub fn root3_from_json(v: &Value) -> Result<Root3Scalar> {
    let field = |name: &str| {
        v.get(name)
            .ok_or_else(|| Error::Malformed(format!("missing field `{name}`")))
            .and_then(big_from_json)
    };
    let fraction = |num: BigInt, den: BigInt| {
        if den == BigInt::from(0) {
            Err(Error::Malformed("zero denominator".into()))
        } else {
            Ok(Rational::new(num, den))
        }
    };
    Ok(Root3Scalar::new(
        fraction(field("a_num")?, field("a_den")?)?,
        fraction(field("b_num")?, field("b_den")?)?,
    ))
}

fn r3_dec(x: &Root3Scalar) -> String {
    decimal_root3(x, REPORT_DIGITS).expect("digits in range")
}

pub fn point_json(p: &Point) -> Value {
    json!({
        "x": root3_json(&p.x),
        "y": root3_json(&p.y),
        "x_decimal": r3_dec(&p.x),
        "y_decimal": r3_dec(&p.y),
    })
}

fn mode_json(layout: &Layout) -> Value {
    if layout.case == PackingCase::B {
        json!(layout.mode.to_string())
    } else {
        Value::Null
    }
}

pub fn layout_json(layout: &Layout) -> Value {
    let size = layout.boundary.radius_or_side();
    json!({
        "case": layout.case.to_string(),
        "i": layout.i,
        "mode": mode_json(layout),
        "count": layout.centers.len(),
        "boundary": {
            "kind": layout.boundary.kind(),
            "radius_or_side": root3_json(&size),
            "decimal": r3_dec(&size),
        },
        "centers": layout.centers.iter().map(point_json).collect::<Vec<_>>(),
    })
}

/// Layout as JSON or CSV. Markdown is rendered like CSV inside a table.
pub fn emit_layout(layout: &Layout, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&layout_json(layout)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv | Format::Markdown => {
            let mut t = Table::new(&[
                "index", "x_a_num", "x_a_den", "x_b_num", "x_b_den", "y_a_num", "y_a_den",
                "y_b_num", "y_b_den", "x_decimal", "y_decimal",
            ]);
            for (k, p) in layout.centers.iter().enumerate() {
                let mut row = vec![k.to_string()];
                for c in [&p.x, &p.y] {
                    for q in [c.a(), c.b()] {
                        row.push(q.numer().to_string());
                        row.push(q.denom().to_string());
                    }
                }
                row.push(r3_dec(&p.x));
                row.push(r3_dec(&p.y));
                t.rows.push(row);
            }
            t.render(format)
        }
    }
}

/// Exact content of a parsed layout document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedLayout {
    pub case: PackingCase,
    pub i: u64,
    pub boundary_kind: String,
    pub radius_or_side: Root3Scalar,
    pub centers: Vec<Point>,
}

/// Reads the exact fields back from a JSON layout document.
pub fn parse_layout_json(doc: &str) -> Result<ParsedLayout> {
    let v: Value = serde_json::from_str(doc).map_err(|e| Error::Malformed(e.to_string()))?;
    let missing = |k: &str| Error::Malformed(format!("missing field `{k}`"));
    let case = v["case"]
        .as_str()
        .ok_or_else(|| missing("case"))?
        .parse::<PackingCase>()
        .map_err(Error::Malformed)?;
    let i = v["i"].as_u64().ok_or_else(|| missing("i"))?;
    let boundary = &v["boundary"];
    let boundary_kind = boundary["kind"].as_str().ok_or_else(|| missing("kind"))?.to_string();
    let radius_or_side = root3_from_json(&boundary["radius_or_side"])?;
    let centers = v["centers"]
        .as_array()
        .ok_or_else(|| missing("centers"))?
        .iter()
        .map(|c| Ok(Point::new(root3_from_json(&c["x"])?, root3_from_json(&c["y"])?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ParsedLayout {
        case,
        i,
        boundary_kind,
        radius_or_side,
        centers,
    })
}

fn fmt6(v: f64) -> String {
    let s = format!("{:.6}", v);
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// SVG 1.1 drawing of a layout with `scale` pixels per unit radius.
///
/// The y axis points up in layout coordinates and down in SVG, so y is
/// negated. The view box is the container's bounding box widened by 5% on
/// every side.
pub fn render_figure(layout: &Layout, scale: f64) -> String {
    let (x0, y0, x1, y1) = layout.boundary.bbox_f64();
    let (w, h) = ((x1 - x0) * scale, (y1 - y0) * scale);
    let (mx, my) = (0.05 * w, 0.05 * h);
    let (vx, vy) = (x0 * scale - mx, -y1 * scale - my);
    let (vw, vh) = (w + 2.0 * mx, h + 2.0 * my);
    let stroke = fmt6(0.05 * scale);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        fmt6(vw),
        fmt6(vh),
        fmt6(vx),
        fmt6(vy),
        fmt6(vw),
        fmt6(vh)
    );
    let _ = writeln!(
        s,
        "<title>case {} i={} mode={} N={}</title>",
        layout.case,
        layout.i,
        layout.mode,
        layout.centers.len()
    );
    match &layout.boundary {
        BoundingShape::Circle { radius } => {
            let _ = writeln!(
                s,
                "<circle class=\"boundary\" cx=\"0\" cy=\"0\" r=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{stroke}\"/>",
                fmt6(radius.to_f64() * scale)
            );
        }
        BoundingShape::ConvexPolygon { vertices, .. } => {
            let mut d = String::new();
            for (k, v) in vertices.iter().enumerate() {
                let (x, y) = v.to_f64();
                let _ = write!(
                    d,
                    "{}{} {} ",
                    if k == 0 { "M" } else { "L" },
                    fmt6(x * scale),
                    fmt6(-y * scale)
                );
            }
            d.push('Z');
            let _ = writeln!(
                s,
                "<path class=\"boundary\" d=\"{d}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{stroke}\"/>"
            );
        }
    }
    let _ = writeln!(
        s,
        "<g class=\"circles\" fill=\"#9ecae1\" stroke=\"#08519c\" stroke-width=\"{stroke}\">"
    );
    let r = fmt6(scale);
    for c in &layout.centers {
        let (x, y) = c.to_f64();
        let _ = writeln!(
            s,
            "<circle class=\"disk\" cx=\"{}\" cy=\"{}\" r=\"{r}\"/>",
            fmt6(x * scale),
            fmt6(-y * scale)
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// Counts used for matched-count comparisons in convergence reports.
pub const MATCHED_COUNTS: [u64; 3] = [10, 100, 1000];

/// Signed residuals per case for `i = 1..=i_to`, plus
/// `|residual_d| / |residual_b|` when both B and D are requested.
pub fn convergence_table(cases: &[PackingCase], i_to: u64) -> Table {
    let mut columns = vec!["i".to_string()];
    columns.extend(cases.iter().map(|c| format!("residual_{c}")));
    let with_ratio = cases.contains(&PackingCase::B) && cases.contains(&PackingCase::D);
    if with_ratio {
        columns.push("ratio_d_over_b".into());
    }
    let mut t = Table {
        columns,
        rows: Vec::new(),
        notes: Vec::new(),
    };
    let mode = SideMode::PaperFormula;
    for i in 1..=i_to {
        let mut row = vec![i.to_string()];
        for &case in cases {
            row.push(cell(sequences::residual(case, i, mode), REPORT_DIGITS));
        }
        if with_ratio {
            row.push(
                residual_ratio(i, i)
                    .map(|r| decimal_root3(&r, REPORT_DIGITS).expect("digits in range"))
                    .unwrap_or_else(|_| MISSING.to_string()),
            );
        }
        t.rows.push(row);
    }
    if with_ratio {
        let parts: Vec<String> = MATCHED_COUNTS
            .iter()
            .map(|&n| {
                let ib = sequences::index_for_count(PackingCase::B, n);
                let id = sequences::index_for_count(PackingCase::D, n);
                let ratio = residual_ratio(ib, id).expect("indices are in domain");
                format!(
                    "N={n} (i_b={ib}, i_d={id}) ratio={}",
                    decimal_root3(&ratio, REPORT_DIGITS).expect("digits in range")
                )
            })
            .collect();
        t.notes
            .push(format!("matched counts |residual_d|/|residual_b|: {}", parts.join("; ")));
    }
    t
}

/// Exact `|residual(D, i_d)| / |residual(B, i_b)|` in paper mode.
pub fn residual_ratio(i_b: u64, i_d: u64) -> Result<Root3Scalar> {
    let rb = sequences::residual(PackingCase::B, i_b, SideMode::PaperFormula)?;
    let rd = sequences::residual(PackingCase::D, i_d, SideMode::PaperFormula)?;
    rd.abs().ratio(&rb.abs())
}

pub fn emit_convergence(cases: &[PackingCase], i_to: u64, format: Format) -> String {
    convergence_table(cases, i_to).render(format)
}

/// The four exact limits with 12-digit decimals, one per line.
pub fn limits_document() -> String {
    let mut s = String::new();
    for case in PackingCase::ALL {
        let limit = sequences::density_limit(case);
        let rel = if limit.pi_exponent() == 0 { "=" } else { "≈" };
        let _ = writeln!(s, "{case}: {limit} {rel} {}", dec(&limit, REPORT_DIGITS));
    }
    s
}

pub fn report_json(r: &VerificationReport) -> Value {
    json!({
        "case": r.case.to_string(),
        "i": r.i,
        "mode": r.mode.to_string(),
        "count_ok": r.count_ok,
        "containment_ok": r.containment_ok,
        "separation_ok": r.separation_ok,
        "boundary_tangent_count": r.boundary_tangent_count,
        "mutual_tangent_pairs": r.mutual_tangent_pairs,
        "lattice_fit_count": r.lattice_fit_count,
        "extra_points": r.extra_points.iter().map(point_json).collect::<Vec<_>>(),
    })
}

/// One-line summary of a verification report.
pub fn report_line(r: &VerificationReport) -> String {
    format!(
        "case={} i={} mode={} count_ok={} containment_ok={} separation_ok={} boundary_tangent={} mutual_tangent_pairs={} lattice_fit={} extras={}",
        r.case,
        r.i,
        r.mode,
        r.count_ok,
        r.containment_ok,
        r.separation_ok,
        r.boundary_tangent_count,
        r.mutual_tangent_pairs,
        r.lattice_fit_count,
        r.extra_points.len()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use PackingCase::*;

    const P: SideMode = SideMode::PaperFormula;

    fn row(t: &Table, i: usize) -> Vec<&str> {
        t.rows[i].iter().map(String::as_str).collect()
    }

    #[test]
    fn table1_rows() {
        let t = table1(25);
        assert_eq!(row(&t, 0), ["1", "1", "1.000000", "1.000000", "/"]);
        assert_eq!(row(&t, 9), ["10", "55", "11.392305", "0.423779", "0.790740196"]);
        assert_eq!(row(&t, 24), ["25", "325", "28.712813", "0.394214", "0.856659266"]);
        let csv = t.render(Format::Csv);
        assert!(csv.starts_with("i,N,R_over_r,rho_a,rho_b\n"));
        assert_eq!(csv.lines().count(), 26);
    }

    #[test]
    fn table2_rows() {
        let t = table2(24);
        assert_eq!(row(&t, 0), ["0", "1", "1", "1.000000", "/"]);
        assert_eq!(row(&t, 1), ["1", "7", "3", "0.777778", "0.850511"]);
        assert_eq!(row(&t, 24), ["24", "1801", "49", "0.750104", "0.901325"]);
        assert!(t.render(Format::Csv).starts_with("i,N,R_over_r,rho_c,rho_d\n"));
    }

    #[test]
    fn markdown_and_json_tables() {
        let md = emit_table2(1, Format::Markdown);
        assert_eq!(
            md,
            "| i | N | R_over_r | rho_c | rho_d |\n|---:|---:|---:|---:|---:|\n| 0 | 1 | 1 | 1.000000 | / |\n| 1 | 7 | 3 | 0.777778 | 0.850511 |\n"
        );
        let v: Value = serde_json::from_str(&emit_table1(2, Format::Json)).unwrap();
        assert_eq!(v["rows"][1][4], "0.520899741");
        assert_eq!(v["columns"][0], "i");
    }

    #[test]
    fn layout_documents() {
        let l = Layout::new(A, 1, P).unwrap();
        let v = layout_json(&l);
        assert_eq!(v["count"], 1);
        assert_eq!(v["boundary"]["radius_or_side"], json!({"a_num":1,"a_den":1,"b_num":0,"b_den":1}));
        assert_eq!(v["centers"][0]["x_decimal"], "0.000000000000");

        let v = layout_json(&Layout::new(C, 1, P).unwrap());
        assert_eq!(v["centers"].as_array().unwrap().len(), 7);
        assert_eq!(v["boundary"]["decimal"], "3.000000000000");
        assert_eq!(v["mode"], Value::Null);

        let v = layout_json(&Layout::new(B, 2, SideMode::TangentOffset).unwrap());
        assert_eq!(v["boundary"]["decimal"], "5.464101615138");
        assert_eq!(v["mode"], "tangent");
        assert_eq!(v["boundary"]["kind"], "triangle");
    }

    #[test]
    fn layout_csv() {
        let csv = emit_layout(&Layout::new(A, 2, P).unwrap(), Format::Csv);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "0,0,1,0,1,0,1,2,3,0.000000000000,1.154700538379");
    }

    #[test]
    fn json_roundtrip() {
        let l = Layout::new(D, 3, P).unwrap();
        let parsed = parse_layout_json(&emit_layout(&l, Format::Json)).unwrap();
        assert_eq!(parsed.centers, l.centers);
        assert_eq!(parsed.radius_or_side, l.boundary.radius_or_side());
        assert_eq!(parsed.case, D);
        assert!(parse_layout_json("{}").is_err());
        assert!(parse_layout_json("not json").is_err());
    }

    #[test]
    fn figures() {
        let svg = render_figure(&Layout::new(A, 5, P).unwrap(), 20.0);
        assert_eq!(svg.matches("class=\"disk\"").count(), 15);
        assert_eq!(svg.matches("<circle").count(), 16);
        let svg = render_figure(&Layout::new(D, 2, P).unwrap(), 20.0);
        assert_eq!(svg.matches("class=\"disk\"").count(), 19);
        assert_eq!(svg.matches("<path class=\"boundary\"").count(), 1);
        assert_eq!(svg, render_figure(&Layout::new(D, 2, P).unwrap(), 20.0));
        assert!(!svg.contains("-0.000000"));
    }

    #[test]
    fn convergence_rows() {
        let t = convergence_table(&PackingCase::ALL, 24);
        assert_eq!(t.columns, ["i", "residual_a", "residual_b", "residual_c", "residual_d", "ratio_d_over_b"]);
        assert_eq!(t.rows[0][2], "/");
        assert_eq!(t.rows[0][5], "/");
        assert_eq!(t.rows[1][2], "-0.385999940996");
        assert_eq!(t.rows[1][4], "-0.042240999088");
        // 1/9604
        assert_eq!(t.rows[23][3], "0.000104123282");
        assert_eq!(t.notes.len(), 1);
        assert!(t.notes[0].contains("N=10 (i_b=4, i_d=2)"));
    }

    #[test]
    fn limits_text() {
        let s = limits_document();
        assert_eq!(
            s,
            "a: 3/8 = 0.375000000000\nb: π·√3/6 ≈ 0.906899682117\nc: 3/4 = 0.750000000000\nd: π·√3/6 ≈ 0.906899682117\n"
        );
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fmt6(-0.0), "0.000000");
        assert_eq!(fmt6(-1e-9), "0.000000");
        assert_eq!(fmt6(-1.5), "-1.500000");
    }
}
