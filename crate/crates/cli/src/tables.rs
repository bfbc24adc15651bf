use lrcone::cones::ConeKind;
use lrcone::hilbert::hilbert_basis_bounded;
use lrcone::{Error, Result};
use serde_json::{json, Value};

use crate::commands::pretty;
use crate::{Context, Rendered, TableKind, HILBERT_CEILING};

fn which_name(which: TableKind) -> &'static str {
    match which {
        TableKind::RayCounts => "ray-counts",
        TableKind::RayLists => "ray-lists",
        TableKind::HilbertCounts => "hilbert-counts",
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn table(ctx: &Context, which: TableKind, max_r: usize, s: usize) -> Result<Rendered> {
    if max_r == 0 {
        return Err(Error::Range("--max-r must be at least 1".into()));
    }
    ctx.check_ray_rank(max_r)?;
    let (columns, rows): (Vec<&str>, Vec<Vec<Value>>) = match which {
        TableKind::RayCounts => {
            let mut rows = Vec::new();
            for r in 1..=max_r {
                let lr = ctx.enumerator.enumerate(r, s, ConeKind::LR)?.len();
                let eq = ctx.enumerator.enumerate(r, s, ConeKind::EqLR)?.len();
                rows.push(vec![json!(r), json!(lr), json!(eq)]);
            }
            (vec!["r", "lr_rays", "eqlr_rays"], rows)
        }
        TableKind::RayLists => {
            let mut rows = Vec::new();
            for r in 1..=max_r {
                let set = ctx.enumerator.enumerate(r, s, ConeKind::EqLR)?;
                // rays on LR first, then the strictly equivariant ones
                for strict in [false, true] {
                    for ray in set.rays.iter().filter(|x| (x.point.trace_slack() > 0) == strict) {
                        let side = if strict { "strict" } else { "lr" };
                        rows.push(vec![json!(r), json!(side), json!(ray.point.to_string())]);
                    }
                }
            }
            (vec!["r", "side", "ray"], rows)
        }
        TableKind::HilbertCounts => {
            if max_r > HILBERT_CEILING && !ctx.extended {
                return Err(Error::ResourceLimit(format!(
                    "Hilbert searches are limited to r <= {HILBERT_CEILING}; pass --extended"
                )));
            }
            let mut rows = Vec::new();
            for r in 1..=max_r {
                let rays = ctx.enumerator.enumerate(r, s, ConeKind::EqLR)?;
                let bound = 1 + rays.rays.iter().map(|x| x.point.entry(s, 1)).max().unwrap_or(0) as usize;
                let basis = hilbert_basis_bounded(r, s, ConeKind::EqLR, bound)?;
                rows.push(vec![json!(r), json!(rays.len()), json!(basis.count), json!(bound)]);
            }
            (vec!["r", "eqlr_rays", "hilbert_elements", "bound"], rows)
        }
    };

    let mut tsv = columns.join("\t");
    tsv.push('\n');
    for row in &rows {
        let cells: Vec<String> = row.iter().map(cell_text).collect();
        tsv.push_str(&cells.join("\t"));
        tsv.push('\n');
    }

    let widths: Vec<usize> = (0..columns.len())
        .map(|c| {
            rows.iter()
                .map(|row| cell_text(&row[c]).len())
                .chain([columns[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut text = line(columns.iter().map(|c| c.to_string()).collect());
    for row in &rows {
        text.push_str(&line(row.iter().map(cell_text).collect()));
    }

    let json = json!({
        "command": "tables",
        "which": which_name(which),
        "s": s,
        "columns": columns,
        "rows": rows,
    });
    Ok(Rendered {
        text,
        tsv,
        json: pretty(&json),
    })
}
