//! One renderer per subcommand. Every renderer is a pure function of the job,
//! so identical flags give byte-identical output.

use std::path::Path;

use arq_core::arq::{build_ihat, build_phi, check_w0_word, height_of, w0_word, IhatQuiver, IhatVertex};
use arq_core::coxeter::{beta_family, enumerate_compatible_detailed};
use arq_core::euler::{euler_form_ihat, three_way_agreement};
use arq_core::linalg::{IntMatrix, RatMatrix};
use arq_core::quiverrep::{ar_quiver, build_zi, default_window, ZIVertex};
use arq_core::verify::{run_all, Verdict, VerifyOptions};
use arq_core::{Execution, Family};
use serde_json::{json, Value};

use crate::dot::DotGraph;
use crate::error::{CliError, Result};
use crate::job::{Format, Job};

/// Rendered output plus whether every check behind it passed.
pub struct Rendered {
    pub text: String,
    pub ok: bool,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered { text, ok: true }
    }
}

pub const SCHEMA: u64 = 1;

fn json_text(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

fn tsv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn ihat_id(v: IhatVertex) -> String {
    format!("{}_{}", v.i + 1, v.n)
}

fn zi_id(v: ZIVertex) -> String {
    format!("{}_{}", v.i + 1, v.k)
}

fn word_labels(word: &[usize]) -> Vec<usize> {
    word.iter().map(|&i| i + 1).collect()
}

pub fn ihat(job: &Job, format: Format) -> Result<Rendered> {
    let ihat = build_ihat(job.rs());
    let dynkin = job.dynkin();
    let text = match format {
        Format::Tsv => tsv(
            &["vertex", "i", "n", "parity", "tau", "successors"],
            ihat.vertices().into_iter().map(|v| {
                vec![
                    v.to_string(),
                    (v.i + 1).to_string(),
                    v.n.to_string(),
                    ihat.parity(v.i).to_string(),
                    ihat.tau(v).to_string(),
                    join(ihat.successors(v), ","),
                ]
            }),
        ),
        Format::Json => json_text(json!({
            "schema": SCHEMA,
            "command": "ihat",
            "type": dynkin.to_string(),
            "h": ihat.h(),
            "vertices": ihat.vertices().into_iter().map(|v| json!({
                "id": ihat_id(v),
                "label": v.to_string(),
                "i": v.i + 1,
                "n": v.n,
                "orbit": v.i + 1,
                "parity": ihat.parity(v.i),
                "tau": ihat.tau(v).to_string(),
            })).collect::<Vec<_>>(),
            "edges": ihat.edges().into_iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect::<Vec<_>>(),
        })),
        Format::Dot => {
            let mut g = DotGraph::new(format!("ihat_{dynkin}"));
            for v in ihat.vertices() {
                g.node(
                    ihat_id(v),
                    &[
                        ("label", v.to_string()),
                        ("orbit", (v.i + 1).to_string()),
                        ("parity", ihat.parity(v.i).to_string()),
                    ],
                );
            }
            for (a, b) in ihat.edges() {
                g.edge(ihat_id(a), ihat_id(b), &[]);
            }
            g.render()
        }
    };
    Ok(Rendered::ok(text))
}

/// Columns of `B⁻¹`, where `B` has the canonical `β` family as columns.
fn beta_coordinates(job: &Job) -> Result<IntMatrix> {
    let rs = job.rs();
    let beta = beta_family(&job.ctx, job.ctx.canonical_simple_system())?;
    let cols: Vec<Vec<i64>> = beta.beta.iter().map(|&b| rs.coords(b).to_vec()).collect();
    let inverse = RatMatrix::from_int(&IntMatrix::from_columns(&cols)).inverse()?;
    inverse
        .to_int()
        .ok_or_else(|| CliError::Usage("β family is not a ℤ-basis".into()))
}

struct PhiRow {
    vertex: IhatVertex,
    root: String,
    alpha: Vec<i64>,
    positive: bool,
}

fn phi_rows(job: &Job) -> Result<(IhatQuiver, Vec<PhiRow>)> {
    let rs = job.rs();
    let phi = build_phi(&job.ctx, &job.pi)?;
    let to_beta = beta_coordinates(job)?;
    let mut rows: Vec<PhiRow> = (0..rs.len())
        .map(|id| {
            let alpha = rs.coords(id).to_vec();
            let root = match rs.dynkin().family() {
                Family::A | Family::D => rs.euclidean_label(id).expect("euclidean label for A and D"),
                Family::E => join(to_beta.mul_vec(&alpha), ","),
            };
            PhiRow {
                vertex: phi.apply(id),
                root,
                alpha,
                positive: rs.is_positive(id),
            }
        })
        .collect();
    rows.sort_by_key(|r| (r.vertex.n, r.vertex.i));
    Ok((phi.ihat().clone(), rows))
}

pub fn phi(job: &Job, format: Format) -> Result<Rendered> {
    let (ihat, rows) = phi_rows(job)?;
    let dynkin = job.dynkin();
    let basis = match dynkin.family() {
        Family::A | Family::D => "euclidean",
        Family::E => "beta",
    };
    let text = match format {
        Format::Tsv => tsv(
            &["vertex", "i", "n", "root", "alpha", "positive"],
            rows.iter().map(|r| {
                vec![
                    r.vertex.to_string(),
                    (r.vertex.i + 1).to_string(),
                    r.vertex.n.to_string(),
                    r.root.clone(),
                    join(&r.alpha, ","),
                    u8::from(r.positive).to_string(),
                ]
            }),
        ),
        Format::Json => json_text(json!({
            "schema": SCHEMA,
            "command": "phi",
            "type": dynkin.to_string(),
            "orientation": job.orientation.to_string(),
            "root_notation": basis,
            "rows": rows.iter().map(|r| json!({
                "vertex": r.vertex.to_string(),
                "i": r.vertex.i + 1,
                "n": r.vertex.n,
                "root": r.root,
                "alpha": r.alpha,
                "positive": r.positive,
            })).collect::<Vec<_>>(),
        })),
        Format::Dot => {
            let mut g = DotGraph::new(format!("phi_{dynkin}"));
            for r in &rows {
                let mut attrs = vec![
                    ("label", format!("{}\n{}", r.vertex, r.root)),
                    ("root", r.root.clone()),
                ];
                if r.positive {
                    attrs.push(("style", "filled".into()));
                    attrs.push(("fillcolor", "lightgray".into()));
                }
                g.node(ihat_id(r.vertex), &attrs);
            }
            for (a, b) in ihat.edges() {
                g.edge(ihat_id(a), ihat_id(b), &[]);
            }
            g.render()
        }
    };
    Ok(Rendered::ok(text))
}

pub fn euler(job: &Job, format: Format) -> Result<Rendered> {
    let exec = Execution::default();
    let table = three_way_agreement(&job.ctx, exec)?;
    let ihat = build_ihat(job.rs());
    let itable = euler_form_ihat(&ihat, exec)?;
    let rs = job.rs();
    let basis: Vec<Vec<i64>> = table.basis.iter().map(|&b| rs.coords(b).to_vec()).collect();
    let vertices = ihat.vertices();
    let text = match format {
        Format::Tsv => {
            let mut rows = Vec::new();
            let mut matrix = |name: &str, m: &[Vec<i64>]| {
                for (i, row) in m.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        rows.push(vec![name.to_string(), (i + 1).to_string(), (j + 1).to_string(), x.to_string()]);
                    }
                }
            };
            matrix("basis", &basis);
            matrix("reference", &table.form.gram().to_rows());
            matrix("beta", &table.on_lattice.to_rows());
            for &p in &vertices {
                for &q in &vertices {
                    rows.push(vec![
                        "ihat".into(),
                        p.to_string(),
                        q.to_string(),
                        itable.get(p, q).to_string(),
                    ]);
                }
            }
            tsv(&["table", "row", "column", "value"], rows)
        }
        Format::Json => json_text(json!({
            "schema": SCHEMA,
            "command": "euler",
            "type": rs.dynkin().to_string(),
            "orientation": job.orientation.to_string(),
            "basis": basis,
            "reference": table.form.gram().to_rows(),
            "beta": table.on_lattice.to_rows(),
            "ihat": {
                "vertices": vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "matrix": vertices.iter().map(|&p| itable.row(p).to_vec()).collect::<Vec<_>>(),
            },
        })),
        f => return Err(unsupported("euler", f)),
    };
    Ok(Rendered::ok(text))
}

pub fn w0(job: &Job, format: Format) -> Result<Rendered> {
    let word = w0_word(&job.ctx, &job.pi)?;
    check_w0_word(&job.ctx, &job.pi, &word)?;
    let height = height_of(&job.ctx, &job.pi)?;
    let labels = word_labels(&word);
    let text = match format {
        Format::Tsv => tsv(
            &["type", "orientation", "pi", "length", "word"],
            [vec![
                job.dynkin().to_string(),
                job.orientation.to_string(),
                format!("h:{height}"),
                word.len().to_string(),
                join(&labels, " "),
            ]],
        ),
        Format::Json => json_text(json!({
            "schema": SCHEMA,
            "command": "w0",
            "type": job.dynkin().to_string(),
            "orientation": job.orientation.to_string(),
            "pi": format!("h:{height}"),
            "length": word.len(),
            "word": labels,
        })),
        f => return Err(unsupported("w0", f)),
    };
    Ok(Rendered::ok(text))
}

pub fn compatible(job: &Job, format: Format) -> Result<Rendered> {
    let systems = enumerate_compatible_detailed(&job.ctx, Execution::default())?;
    let heights = systems
        .iter()
        .map(|c| height_of(&job.ctx, &c.system).map(|h| format!("h:{h}")))
        .collect::<arq_core::Result<Vec<_>>>()?;
    let text = match format {
        Format::Tsv => tsv(
            &["pi", "height", "orientation", "word"],
            systems.iter().zip(&heights).enumerate().map(|(k, (c, h))| {
                vec![k.to_string(), h.clone(), c.orientation.to_string(), join(word_labels(&c.word), " ")]
            }),
        ),
        Format::Json => {
            let mut classes: Vec<(String, Vec<usize>, Vec<Value>)> = Vec::new();
            for (k, (c, h)) in systems.iter().zip(&heights).enumerate() {
                let key = c.orientation.to_string();
                let entry = json!({ "pi": k, "height": h });
                match classes.iter_mut().find(|(o, _, _)| *o == key) {
                    Some((_, _, members)) => members.push(entry),
                    None => classes.push((key, word_labels(&c.word), vec![entry])),
                }
            }
            json_text(json!({
                "schema": SCHEMA,
                "command": "compatible",
                "type": job.dynkin().to_string(),
                "orientation": job.orientation.to_string(),
                "count": systems.len(),
                "classes": classes.into_iter().map(|(o, w, m)| json!({
                    "orientation": o,
                    "word": w,
                    "systems": m,
                })).collect::<Vec<_>>(),
            }))
        }
        f => return Err(unsupported("compatible", f)),
    };
    Ok(Rendered::ok(text))
}

pub fn ar(job: &Job, format: Format) -> Result<Rendered> {
    let omega = arq_core::coxeter::orientation_of(&job.ctx, &job.pi)?;
    let zi = build_zi(job.rs(), job.window.unwrap_or_else(|| default_window(job.dynkin())))?;
    let quiver = ar_quiver(&zi, &omega)?;
    let vertices = quiver.vertices();
    let dims = quiver.dims();
    let text = match format {
        Format::Dot => {
            let mut g = DotGraph::new(format!("ar_{}", job.dynkin()));
            for (v, d) in vertices.iter().zip(dims) {
                g.node(
                    zi_id(*v),
                    &[("label", format!("{v}\n{}", join(d, ","))), ("dim", join(d, ","))],
                );
            }
            for &(a, b) in quiver.arrows() {
                g.edge(zi_id(vertices[a]), zi_id(vertices[b]), &[]);
            }
            g.render()
        }
        Format::Tsv => {
            let mut succ = vec![Vec::new(); vertices.len()];
            for &(a, b) in quiver.arrows() {
                succ[a].push(vertices[b].to_string());
            }
            tsv(
                &["vertex", "i", "k", "dim", "successors"],
                vertices.iter().zip(dims).zip(succ).map(|((v, d), s)| {
                    vec![v.to_string(), (v.i + 1).to_string(), v.k.to_string(), join(d, ","), s.join(",")]
                }),
            )
        }
        Format::Json => json_text(json!({
            "schema": SCHEMA,
            "command": "ar",
            "type": job.dynkin().to_string(),
            "orientation": omega.to_string(),
            "vertices": vertices.iter().zip(dims).map(|(v, d)| json!({
                "vertex": v.to_string(),
                "i": v.i + 1,
                "k": v.k,
                "dim": d,
            })).collect::<Vec<_>>(),
            "arrows": quiver.arrows().iter().map(|&(a, b)| json!([vertices[a].to_string(), vertices[b].to_string()])).collect::<Vec<_>>(),
        })),
    };
    Ok(Rendered::ok(text))
}

/// Tables stored as golden files, rendered as TSV.
pub const GOLDEN_TABLES: [&str; 3] = ["phi", "euler", "w0"];

fn render_golden(job: &Job, table: &str) -> Result<String> {
    let rendered = match table {
        "phi" => phi(job, Format::Tsv)?,
        "euler" => euler(job, Format::Tsv)?,
        "w0" => w0(job, Format::Tsv)?,
        other => unreachable!("unknown golden table {other}"),
    };
    Ok(rendered.text)
}

/// Byte comparison against `dir/<TYPE>/<table>.tsv`, reporting the first
/// differing line.
fn golden_verdict(job: &Job, dir: &Path, table: &str) -> Verdict {
    let name = format!("golden {table}");
    let path = dir.join(job.dynkin().to_string()).join(format!("{table}.tsv"));
    let Ok(expected) = std::fs::read(&path) else {
        return Verdict::skip(&name, format!("no golden table at {}", path.display()));
    };
    let actual = match render_golden(job, table) {
        Ok(t) => t.into_bytes(),
        Err(e) => return Verdict::fail(&name, e.to_string()),
    };
    if expected == actual {
        return Verdict::pass(&name);
    }
    let exp: Vec<&[u8]> = expected.split(|&b| b == b'\n').collect();
    let act: Vec<&[u8]> = actual.split(|&b| b == b'\n').collect();
    let line = (0..exp.len().max(act.len()))
        .find(|&k| exp.get(k) != act.get(k))
        .unwrap_or(0);
    let show = |l: Option<&&[u8]>| l.map_or("<missing>".to_string(), |b| String::from_utf8_lossy(b).into_owned());
    Verdict::fail(
        &name,
        format!(
            "{} line {}: expected {:?}, computed {:?}",
            path.display(),
            line + 1,
            show(exp.get(line)),
            show(act.get(line))
        ),
    )
}

pub fn verify(job: &Job, format: Format, golden: Option<&Path>) -> Result<Rendered> {
    let opts = VerifyOptions {
        seed: job.seed,
        ..VerifyOptions::default()
    };
    let mut verdicts = run_all(&job.ctx, opts);
    if let Some(dir) = golden {
        verdicts.extend(GOLDEN_TABLES.iter().map(|t| golden_verdict(job, dir, t)));
    }
    let ok = verdicts.iter().all(|v| v.passed);
    let status = |v: &Verdict| match (v.passed, v.skipped) {
        (_, true) => "SKIP",
        (true, _) => "PASS",
        _ => "FAIL",
    };
    let text = match format {
        Format::Tsv => tsv(
            &["status", "suite", "detail"],
            verdicts
                .iter()
                .map(|v| vec![status(v).into(), v.name.clone(), v.detail.replace(['\t', '\n'], " ")]),
        ),
        Format::Json => json_text(json!({
            "schema": SCHEMA,
            "command": "verify",
            "type": job.dynkin().to_string(),
            "orientation": job.orientation.to_string(),
            "seed": job.seed,
            "passed": ok,
            "verdicts": verdicts.iter().map(|v| json!({
                "suite": v.name,
                "status": status(v),
                "detail": v.detail,
            })).collect::<Vec<_>>(),
        })),
        f => return Err(unsupported("verify", f)),
    };
    Ok(Rendered { text, ok })
}
