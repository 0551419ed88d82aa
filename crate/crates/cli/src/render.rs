use std::fmt::Write as _;

use selmer_core::delta::Place;
use selmer_core::selmer::{behavior_label, reduction_label};
use selmer_core::{ReportJson, SelmerReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

fn interval(lo: u32, hi: u32) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("[{lo}, {hi}]")
    }
}

fn place_name(place: &Place) -> String {
    match place {
        Place::Finite(v) if v.f_v == 1 => format!("v | {}", v.ell),
        Place::Finite(v) => format!("v | {} (f={})", v.ell, v.f_v),
        Place::Archimedean => "infinite".to_string(),
    }
}

pub fn report(r: &SelmerReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json() + "\n",
        Format::Csv => report_csv(r),
        Format::Table => report_table(r),
    }
}

fn report_table(r: &SelmerReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "E = {}, p = {}, m = {}", r.curve, r.p, r.m);
    let rows: Vec<[String; 5]> = r
        .contributions
        .iter()
        .map(|c| {
            [
                place_name(&c.place),
                reduction_label(c).to_string(),
                behavior_label(c.behavior.kind).to_string()
                    + &c.behavior.t.map(|t| format!(" (t={t})")).unwrap_or_default(),
                interval(c.lo, c.hi),
                c.reason.to_string(),
            ]
        })
        .collect();
    let header = ["place", "reduction", "behavior", "delta", "reason"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 5]| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            let _ = write!(s, "{:<w$}", cell, w = widths[i] + 2);
        }
        s.trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header));
    for row in &rows {
        let _ = writeln!(out, "{}", line([&row[0], &row[1], &row[2], &row[3], &row[4]]));
    }
    let _ = writeln!(out, "total: {}", interval(r.total_lo, r.total_hi));
    let _ = writeln!(out, "verdict: {}", r.verdict);
    if !r.hypotheses.selmer_trivial_over_k {
        let _ = writeln!(
            out,
            "note: Sel_p(E/K) = 0 was not asserted (--assume-selmer-trivial); the total is the sum of local terms only"
        );
    }
    out
}

fn report_csv(r: &SelmerReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(["ell", "f_v", "q_v", "reduction", "behavior", "lo", "hi", "reason"]);
    for c in r.to_json_model().contributions {
        let opt = |x: Option<String>| x.unwrap_or_default();
        let _ = w.write_record([
            opt(c.ell.map(|x| x.to_string())),
            opt(c.f_v.map(|x| x.to_string())),
            opt(c.q_v.map(|x| x.to_string())),
            c.reduction,
            c.behavior,
            c.lo.to_string(),
            c.hi.to_string(),
            c.reason.to_string(),
        ]);
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn scan(rows: &[(u64, SelmerReport)], format: Format) -> String {
    match format {
        Format::Json => {
            let models: Vec<ReportJson> = rows.iter().map(|(_, r)| r.to_json_model()).collect();
            serde_json::to_string(&models).expect("reports serialize") + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let _ = w.write_record(["m", "lo", "hi", "verdict"]);
            for (m, r) in rows {
                let _ = w.write_record([m.to_string(), r.total_lo.to_string(), r.total_hi.to_string(), r.verdict.to_string()]);
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
        }
        Format::Table => {
            let mut out = String::new();
            for (m, r) in rows {
                let _ = writeln!(out, "m = {m:<8} total {:<8} {}", interval(r.total_lo, r.total_hi), r.verdict);
            }
            out
        }
    }
}
