use std::fmt::Write as _;

use lrcone::cones::{enumerate_horn, member as is_member, shadow as shadow_of, ConeKind, ConePoint, HornDatum};
use lrcone::hilbert::hilbert_basis_bounded;
use lrcone::oracle::{sample_spectrum_sum, to_json_lines, SamplerConfig, SpectrumMode};
use lrcone::rays::{facet_rays, ImageStatus};
use lrcone::{Error, Result};
use serde_json::{json, Value};

use crate::{Context, Rendered, HILBERT_CEILING};

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn point_json(p: &ConePoint) -> Value {
    serde_json::to_value(p).expect("points always serialize")
}

fn status_name(s: ImageStatus) -> &'static str {
    match s {
        ImageStatus::Extremal => "extremal",
        ImageStatus::Zero => "zero",
        ImageStatus::NonExtremal => "non-extremal",
    }
}

fn horn_json(h: &HornDatum) -> Value {
    json!({
        "text": h.to_string(),
        "inputs": h.inputs().iter().map(|i| i.elements().to_vec()).collect::<Vec<_>>(),
        "output": h.output().elements().to_vec(),
    })
}

pub fn horn(r: usize, s: usize, d: usize) -> Result<Rendered> {
    let data = enumerate_horn(r, s, d)?;
    let mut text = String::new();
    let mut tsv = String::from("d\tdatum\n");
    for h in &data {
        writeln!(text, "{h}").unwrap();
        writeln!(tsv, "{d}\t{h}").unwrap();
    }
    let json = json!({
        "command": "horn",
        "r": r,
        "s": s,
        "d": d,
        "count": data.len(),
        "data": data.iter().map(horn_json).collect::<Vec<_>>(),
    });
    Ok(Rendered {
        text,
        tsv,
        json: pretty(&json),
    })
}

pub fn rays(ctx: &Context, r: usize, s: usize, kind: ConeKind) -> Result<Rendered> {
    ctx.check_ray_rank(r)?;
    let set = ctx.enumerator.enumerate(r, s, kind)?;
    if set.stats.rejected_nonmember > 0 {
        eprintln!(
            "warning: {} recursion candidates were not cone members",
            set.stats.rejected_nonmember
        );
    }
    let mut text = format!("# {kind} r={r} s={s} count={}\n", set.len());
    text.push_str(&set.to_text());
    let mut tsv = String::from("ray\ttrace_slack\n");
    for ray in &set.rays {
        writeln!(tsv, "{}\t{}", ray.point, ray.point.trace_slack()).unwrap();
    }
    let json = json!({
        "command": "rays",
        "r": r,
        "s": s,
        "kind": kind,
        "count": set.len(),
        "rays": set.rays.iter().map(|ray| point_json(&ray.point)).collect::<Vec<_>>(),
    });
    Ok(Rendered {
        text,
        tsv,
        json: pretty(&json),
    })
}

pub fn facet(ctx: &Context, r: usize, s: usize, inputs: &str, output: &str, kind: ConeKind) -> Result<Rendered> {
    ctx.check_ray_rank(r)?;
    let h = HornDatum::parse_parts(inputs, output, r)?;
    if h.s() != s {
        return Err(Error::Shape(format!(
            "facet has {} subsets but s = {s}",
            h.s()
        )));
    }
    let d = h.d();
    let inner = ctx.enumerator.enumerate(d, s, ConeKind::LR)?.points();
    let outer = if d < r {
        ctx.enumerator.enumerate(r - d, s, kind)?.points()
    } else {
        Vec::new()
    };
    let report = facet_rays(&h, kind, &inner, &outer)?;
    let dec = &report.decomposition;
    let counts = [ImageStatus::Extremal, ImageStatus::Zero, ImageStatus::NonExtremal].map(|st| report.count(st));

    let mut text = format!("# facet {h} of {kind} r={r} s={s} d={d}\n");
    writeln!(text, "# type I rays: {}", dec.type1.len()).unwrap();
    for (t, ray) in &dec.type1 {
        writeln!(text, "{t}\t{}", ray.point).unwrap();
    }
    writeln!(
        text,
        "# induction images: {} (extremal {}, zero {}, non-extremal {})",
        report.images.len(),
        counts[0],
        counts[1],
        counts[2]
    )
    .unwrap();
    for img in &report.images {
        let factor = match img.factor {
            lrcone::rays::Factor::Inner => "inner",
            lrcone::rays::Factor::Outer => "outer",
        };
        writeln!(
            text,
            "{factor}\t{}\t{}\t{}",
            img.source,
            img.image,
            status_name(img.status)
        )
        .unwrap();
    }
    let facet_rays = report.rays();
    writeln!(text, "# facet rays: {}", facet_rays.len()).unwrap();
    for p in &facet_rays {
        writeln!(text, "{p}").unwrap();
    }

    let mut tsv = String::from("section\tlabel\tsource\tpoint\tstatus\n");
    for (t, ray) in &dec.type1 {
        writeln!(tsv, "type1\t{t}\t\t{}\textremal", ray.point).unwrap();
    }
    for img in &report.images {
        let factor = if img.factor == lrcone::rays::Factor::Inner { "inner" } else { "outer" };
        writeln!(
            tsv,
            "image\t{factor}\t{}\t{}\t{}",
            img.source,
            img.image,
            status_name(img.status)
        )
        .unwrap();
    }

    let json = json!({
        "command": "facet",
        "r": r,
        "s": s,
        "d": d,
        "kind": kind,
        "datum": horn_json(&h),
        "type1": dec.type1.iter().map(|(t, ray)| json!({
            "j": t.j,
            "a": t.a,
            "ray": point_json(&ray.point),
        })).collect::<Vec<_>>(),
        "images": report.images.iter().map(|img| json!({
            "factor": img.factor,
            "source": point_json(&img.source),
            "image": point_json(&img.image),
            "status": status_name(img.status),
        })).collect::<Vec<_>>(),
        "counts": {
            "extremal": counts[0],
            "zero": counts[1],
            "non_extremal": counts[2],
        },
        "rays": facet_rays.iter().map(point_json).collect::<Vec<_>>(),
    });
    Ok(Rendered {
        text,
        tsv,
        json: pretty(&json),
    })
}

pub fn member(point: &str, kind: ConeKind) -> Result<Rendered> {
    let (x, den) = ConePoint::parse_rational(point)?;
    let verdict = is_member(&x, kind)?;
    let json = json!({
        "command": "member",
        "kind": kind,
        "point": point_json(&x),
        "denominator": den,
        "member": verdict,
    });
    Ok(Rendered {
        text: format!("{verdict}\n"),
        tsv: format!("point\tkind\tmember\n{x}\t{kind}\t{verdict}\n"),
        json: pretty(&json),
    })
}

pub fn shadow(point: &str, j: usize) -> Result<Rendered> {
    let x: ConePoint = point.parse()?;
    let y = shadow_of(&x, j)?;
    let json = json!({
        "command": "shadow",
        "j": j,
        "point": point_json(&x),
        "shadow": point_json(&y),
    });
    Ok(Rendered {
        text: format!("{y}\n"),
        tsv: format!("point\tj\tshadow\n{x}\t{j}\t{y}\n"),
        json: pretty(&json),
    })
}

pub fn hilbert(ctx: &Context, r: usize, s: usize, kind: ConeKind, bound: Option<usize>) -> Result<Rendered> {
    ctx.check_ray_rank(r)?;
    if bound.is_none() && r > HILBERT_CEILING && !ctx.extended {
        return Err(Error::ResourceLimit(format!(
            "a search at the default bound is limited to r <= {HILBERT_CEILING}; pass --bound or --extended"
        )));
    }
    let rays = ctx.enumerator.enumerate(r, s, kind)?;
    let bound = match bound {
        Some(b) => b,
        None => 1 + rays.rays.iter().map(|ray| ray.point.entry(s, 1)).max().unwrap_or(0) as usize,
    };
    let basis = hilbert_basis_bounded(r, s, kind, bound)?;
    let extras: Vec<&ConePoint> = basis.elements.iter().filter(|e| !rays.contains(e)).collect();

    let mut text = format!(
        "# hilbert {kind} r={r} s={s} bound={bound} count={} (complete up to the bound)\n",
        basis.count
    );
    for e in &basis.elements {
        writeln!(text, "{e}").unwrap();
    }
    writeln!(text, "# not on an extremal ray: {}", extras.len()).unwrap();
    for e in &extras {
        writeln!(text, "# {e}").unwrap();
    }
    let mut tsv = String::from("element\ton_extremal_ray\n");
    for e in &basis.elements {
        writeln!(tsv, "{e}\t{}", rays.contains(e)).unwrap();
    }
    let json = json!({
        "command": "hilbert",
        "r": r,
        "s": s,
        "kind": kind,
        "bound": bound,
        "complete_up_to_bound": basis.complete_up_to_bound,
        "count": basis.count,
        "ray_count": rays.len(),
        "elements": basis.elements.iter().map(point_json).collect::<Vec<_>>(),
        "extras": extras.iter().map(|e| point_json(e)).collect::<Vec<_>>(),
    });
    Ok(Rendered {
        text,
        tsv,
        json: pretty(&json),
    })
}

fn parse_spectra(text: &str) -> Result<Vec<Vec<f64>>> {
    text.split(';')
        .map(|block| {
            block
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad eigenvalue {:?}", t.trim())))
                })
                .collect()
        })
        .collect()
}

pub fn sample(spectra: &str, mode: SpectrumMode, trials: usize, seed: u64, scale: f64) -> Result<Rendered> {
    let spectra = parse_spectra(spectra)?;
    let mut config = SamplerConfig::new(mode, trials, seed);
    config.perturbation_scale = scale;
    let samples = sample_spectrum_sum(&spectra, &config)?;
    let worst = samples.iter().map(|s| s.max_violation).fold(0.0, f64::max);
    let mut text = format!("# {trials} samples, largest violation {worst:e}\n");
    let mut tsv = String::from("trial\tresult\tmax_violation\n");
    for s in &samples {
        let result: Vec<String> = s.result.iter().map(|x| format!("{x:.12}")).collect();
        writeln!(text, "{}\t{}\t{:e}", s.trial, result.join(","), s.max_violation).unwrap();
        writeln!(tsv, "{}\t{}\t{:e}", s.trial, result.join(","), s.max_violation).unwrap();
    }
    Ok(Rendered {
        text,
        tsv,
        json: to_json_lines(&samples)?,
    })
}
