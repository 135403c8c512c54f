//! Command-line front end: every pipeline behind one binary with
//! machine-readable JSON reports.

use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use tqft_core::center::{decompose_center, center_from_square, Center};
use tqft_core::criteria::{check_module_positivity, check_positivity, omega_rank_one, CriteriaOptions};
use tqft_core::fixtures;
use tqft_core::fsym::{parse_fsymbols, verify_pentagon_with_tol, FSymbolSet};
use tqft_core::homology::first_homology;
use tqft_core::indicators::{genus1_indicator, indicator_reference_oracle, K0Vector, TorusCurve};
use tqft_core::modular::{parse_modular_data_with_tol, ModularData};
use tqft_core::nimrep::parse_nimrep;
use tqft_core::plumbing::{parse_plumbing, PlumbingTree};
use tqft_core::ring::{frobenius_perron_data, parse_fusion_ring, FusionRing};
use tqft_core::rt::{rt_invariant, verlinde_dimension};
use tqft_core::scalar::Tol;
use tqft_core::surface::{dim_closed_surface, dim_state_space, parse_surface};
use tqft_core::tri::parse_triangulation;
use tqft_core::tube::build_tube_algebra_with_tol;
use tqft_core::tv::{tv_invariant, vec_g_oracle, TvOptions};

#[derive(Parser)]
#[command(name = "tqft", about = "Fusion-category TQFT computations", version)]
struct Cli {
    /// Comparison tolerance for all approximate checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// RNG seed for block decompositions.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Human-readable tables instead of the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    /// Enumeration cap (partial coloring nodes / coloring-space size).
    #[arg(long, global = true, default_value_t = 100_000_000)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Path to an input file; `-` reads standard input.
    #[arg(long)]
    file: Option<String>,
    /// Name of a bundled fixture.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a ring / category / modular-data / triangulation document.
    Validate {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        modular: Option<String>,
        #[arg(long)]
        tri: Option<String>,
        #[arg(long)]
        surface: Option<String>,
    },
    /// Positivity criteria for a ring, optionally with a module action.
    Criteria {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        nimrep: Option<String>,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Tube-algebra center of a category, with an optional square oracle.
    Center {
        #[arg(long)]
        fsymbols: String,
        #[arg(long)]
        oracle: Option<String>,
        #[arg(long)]
        modular: Option<String>,
    },
    /// Turaev–Viro state sum.
    Tv {
        #[arg(long)]
        fsymbols: String,
        #[arg(long)]
        tri: String,
        /// Cross-check against |Hom(H1, Z_n)| / n.
        #[arg(long)]
        oracle: Option<u64>,
        #[arg(long)]
        parallel: bool,
    },
    /// Reshetikhin–Turaev invariant of a plumbing.
    Rt {
        #[arg(long)]
        modular: String,
        #[arg(long)]
        plumbing: String,
    },
    /// State-space dimensions: polygon surfaces or closed genus-g.
    Dims {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        modular: Option<String>,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long, default_value = "pants")]
        method: String,
    },
    /// Genus-1 topological indicators.
    Indicators {
        #[arg(long)]
        fsymbols: String,
        /// Curve as `m,r`.
        #[arg(long)]
        curve: String,
        /// Object label (name or index) of the input category.
        #[arg(long)]
        object: String,
        /// Center vector file (JSON list of [re, im]); defaults to all basis
        /// vectors.
        #[arg(long)]
        center_vector: Option<String>,
        /// Also evaluate the tube-algebra reference oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// End-to-end TV = RT comparison on a lens space.
    Compare {
        #[arg(long)]
        fsymbols: String,
        #[arg(long)]
        lens: u32,
    },
}

fn read_source(spec: &str, kind: &str) -> Result<(String, String)> {
    // A bare name resolves against bundled fixtures first, then the
    // filesystem; explicit paths win when they contain a separator.
    let fixture = match kind {
        "ring" => fixtures::ring_json(spec),
        "modular" => fixtures::modular_json(spec),
        "tri" => fixtures::tri_json(spec),
        "surface" => fixtures::surface_json(spec),
        "nimrep" => fixtures::nimrep_json(spec),
        "plumbing" => fixtures::plumbing_json(spec),
        _ => None,
    };
    if !spec.contains('/') && !spec.contains('.') {
        if let Some(text) = fixture {
            return Ok((format!("fixture:{spec}"), text.to_string()));
        }
    }
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        return Ok(("stdin".into(), buf));
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    Ok((spec.to_string(), text))
}

fn digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    format!("{:x}", hasher.finalize())[..16].to_string()
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Vec<serde_json::Value>,
    seed: u64,
    outputs: serde_json::Value,
}

struct Ctx {
    tol: Tol,
    seed: u64,
    cap: u64,
    pretty: bool,
    inputs: Vec<serde_json::Value>,
}

impl Ctx {
    fn load(&mut self, spec: &str, kind: &str) -> Result<String> {
        let (name, text) = read_source(spec, kind)?;
        self.inputs.push(json!({"kind": kind, "source": name, "sha256": digest(&text)}));
        Ok(text)
    }

    fn load_category(&mut self, spec: &str) -> Result<(FusionRing, FSymbolSet)> {
        let text = self.load(spec, "ring")?;
        let ring = parse_fusion_ring(&text)?;
        let fs = parse_fsymbols(&text, &ring)?;
        Ok((ring, fs))
    }

    fn center_of(&mut self, spec: &str) -> Result<Center> {
        let (_, fs) = self.load_category(spec)?;
        let tube = build_tube_algebra_with_tol(&fs, self.tol)?;
        Ok(decompose_center(&tube, self.seed, self.tol)?)
    }

    fn emit(&self, command: &str, outputs: serde_json::Value) -> Result<()> {
        let report = Report {
            command: command.to_string(),
            inputs: self.inputs.clone(),
            seed: self.seed,
            outputs,
        };
        if self.pretty {
            print_pretty(&report);
        } else {
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Ok(())
    }
}

fn print_pretty(report: &Report) {
    println!("command: {}", report.command);
    for input in &report.inputs {
        println!(
            "input:   {} ({})",
            input["source"].as_str().unwrap_or("?"),
            input["sha256"].as_str().unwrap_or("?")
        );
    }
    fn walk(prefix: &str, v: &serde_json::Value) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, val) in map {
                    walk(&format!("{prefix}{k}."), val);
                }
            }
            other => println!("{:32} {}", prefix.trim_end_matches('.'), other),
        }
    }
    walk("", &report.outputs);
}

fn cx_json(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

fn md_json(md: &ModularData) -> serde_json::Value {
    serde_json::from_str(&md.to_json()).unwrap()
}

fn run(cli: Cli) -> Result<bool> {
    let mut ctx = Ctx {
        tol: Tol::new(cli.tol),
        seed: cli.seed,
        cap: cli.cap,
        pretty: cli.pretty,
        inputs: Vec::new(),
    };
    let mut ok = true;
    match cli.command {
        Command::Validate { ring, modular, tri, surface } => {
            let mut outputs = serde_json::Map::new();
            if let Some(spec) = ring {
                let text = ctx.load(&spec, "ring")?;
                let parsed = parse_fusion_ring(&text)?;
                let dims = frobenius_perron_data(&parsed)?;
                let mut entry = json!({
                    "rank": parsed.rank,
                    "labels": parsed.labels,
                    "fp_dimensions": dims.d,
                    "global_dimension": dims.mu,
                });
                if text.contains("fsymbols") {
                    let fs = parse_fsymbols(&text, &parsed)?;
                    let report = verify_pentagon_with_tol(&fs, ctx.tol);
                    ok &= report.pass;
                    entry["pentagon"] = json!({
                        "instances": report.instances,
                        "max_residual": report.max_residual,
                        "pass": report.pass,
                        "worst": report.worst,
                    });
                    entry["unitarity_residual"] = json!(fs.unitarity_residual());
                }
                outputs.insert("ring".into(), entry);
            }
            if let Some(spec) = modular {
                let text = ctx.load(&spec, "modular")?;
                let md = parse_modular_data_with_tol(&text, ctx.tol)?;
                outputs.insert(
                    "modular".into(),
                    json!({
                        "rank": md.rank,
                        "dims": md.dims(),
                        "dtotal": md.dtotal(),
                        "p_plus": cx_json(md.p_plus()),
                        "p_minus": cx_json(md.p_minus()),
                    }),
                );
            }
            if let Some(spec) = tri {
                let text = ctx.load(&spec, "tri")?;
                let t = parse_triangulation(&text)?;
                let h = first_homology(&t);
                outputs.insert(
                    "triangulation".into(),
                    json!({
                        "tets": t.n_tet,
                        "vertices": t.n_vertices,
                        "edges": t.n_edges,
                        "euler_characteristic": t.euler_characteristic(),
                        "h1": {"betti": h.betti, "torsion": h.torsion},
                    }),
                );
            }
            if let Some(spec) = surface {
                let text = ctx.load(&spec, "surface")?;
                let s = parse_surface(&text)?;
                outputs.insert(
                    "surface".into(),
                    json!({
                        "polygons": s.polygons.len(),
                        "green_pairs": s.pairings.len(),
                        "euler_characteristic": s.euler_characteristic(),
                    }),
                );
            }
            ctx.emit("validate", serde_json::Value::Object(outputs))?;
        }
        Command::Criteria { ring, nimrep, nmax } => {
            let text = ctx.load(&ring, "ring")?;
            let parsed = parse_fusion_ring(&text)?;
            let dims = frobenius_perron_data(&parsed)?;
            let opts = CriteriaOptions { tol: ctx.tol, size_cap: ctx.cap.min(1 << 20) as usize, ..Default::default() };
            let outputs = if let Some(nspec) = nimrep {
                let ntext = ctx.load(&nspec, "nimrep")?;
                let nim = parse_nimrep(&ntext, &parsed)?;
                let reports = check_module_positivity(&parsed, &dims, &nim, nmax, &opts);
                ok &= reports.iter().all(|r| r.pass);
                let omega = omega_rank_one(&parsed, &dims, &nim, ctx.tol);
                ok &= omega.holds;
                json!({"module_reports": reports, "omega_rank_one": omega})
            } else {
                let reports = check_positivity(&parsed, &dims, nmax, &opts);
                ok &= reports.iter().all(|r| r.pass);
                json!({"reports": reports})
            };
            ctx.emit("criteria", outputs)?;
        }
        Command::Center { fsymbols, oracle, modular } => {
            let center = ctx.center_of(&fsymbols)?;
            let mut outputs = json!({
                "center": center.data,
                "modular": md_json(&center.modular),
                "anomaly": cx_json(center.modular.p_plus() / center.modular.dtotal()),
            });
            if let Some(kind) = oracle {
                if kind != "square" {
                    bail!("unknown oracle {kind}; only `square` is available");
                }
                let spec = modular.ok_or_else(|| anyhow!("--oracle square needs --modular FILE"))?;
                let text = ctx.load(&spec, "modular")?;
                let md = parse_modular_data_with_tol(&text, ctx.tol)?;
                let square = center_from_square(&md, ctx.tol)?;
                let mut max_diff = 0.0f64;
                if square.rank == center.rank_z() {
                    for i in 0..square.rank {
                        for j in 0..square.rank {
                            let direct = (center.modular.s(i, j) - square.s(i, j)).norm();
                            let mirror = (center.modular.s(i, j) - square.s(i, j).conj()).norm();
                            max_diff = max_diff.max(direct.min(mirror));
                        }
                    }
                } else {
                    max_diff = f64::INFINITY;
                }
                ok &= max_diff < 1e-6;
                outputs["square_oracle"] = json!({
                    "rank": square.rank,
                    "max_entry_difference": max_diff,
                    "pass": max_diff < 1e-6,
                });
            }
            ctx.emit("center", outputs)?;
        }
        Command::Tv { fsymbols, tri, oracle, parallel } => {
            let (_, fs) = ctx.load_category(&fsymbols)?;
            let ttext = ctx.load(&tri, "tri")?;
            let t = parse_triangulation(&ttext)?;
            let value = tv_invariant(&fs, &t, &TvOptions { node_cap: ctx.cap, parallel })?;
            let mut outputs = json!({"tv": cx_json(value)});
            if let Some(order) = oracle {
                let expect = vec_g_oracle(order, &t);
                let expect_f = *expect.numer() as f64 / *expect.denom() as f64;
                let pass = (value - Complex64::new(expect_f, 0.0)).norm() <= ctx.tol.0;
                ok &= pass;
                outputs["oracle"] = json!({
                    "order": order,
                    "value": [*expect.numer(), *expect.denom()],
                    "pass": pass,
                });
            }
            ctx.emit("tv", outputs)?;
        }
        Command::Rt { modular, plumbing } => {
            let mtext = ctx.load(&modular, "modular")?;
            let md = parse_modular_data_with_tol(&mtext, ctx.tol)?;
            let ptext = ctx.load(&plumbing, "plumbing")?;
            let tree = parse_plumbing(&ptext)?;
            let value = rt_invariant(&md, &tree, ctx.cap as u128)?;
            ctx.emit(
                "rt",
                json!({
                    "rt": cx_json(value),
                    "signature": {"b_plus": tree.b_plus, "b_minus": tree.b_minus, "b_zero": tree.b_zero},
                }),
            )?;
        }
        Command::Dims { ring, surface, modular, genus, method } => {
            let mut outputs = serde_json::Map::new();
            if let (Some(rspec), Some(sspec)) = (&ring, &surface) {
                let rtext = ctx.load(rspec, "ring")?;
                let parsed = parse_fusion_ring(&rtext)?;
                let stext = ctx.load(sspec, "surface")?;
                let surf = parse_surface(&stext)?;
                let dim = dim_state_space(&parsed, &surf)?;
                outputs.insert("polygon_dimension".into(), json!(dim));
            }
            if let (Some(mspec), Some(g)) = (&modular, genus) {
                let mtext = ctx.load(mspec, "modular")?;
                let md = parse_modular_data_with_tol(&mtext, ctx.tol)?;
                let value = match method.as_str() {
                    "pants" => dim_closed_surface(&md, g, ctx.tol)? as f64,
                    "verlinde" => verlinde_dimension(&md, g, ctx.tol)?,
                    other => bail!("unknown method {other}"),
                };
                outputs.insert("genus".into(), json!(g));
                outputs.insert("dimension".into(), json!(value));
            }
            if outputs.is_empty() {
                bail!("dims needs --ring/--surface or --modular/--genus");
            }
            ctx.emit("dims", serde_json::Value::Object(outputs))?;
        }
        Command::Indicators { fsymbols, curve, object, center_vector, oracle } => {
            let center = ctx.center_of(&fsymbols)?;
            let parts: Vec<&str> = curve.split(',').collect();
            if parts.len() != 2 {
                bail!("curve must be `m,r`");
            }
            let curve = TorusCurve::new(parts[0].trim().parse()?, parts[1].trim().parse()?)?;
            let ring = &center.tube.fs.ring;
            let label = ring
                .label_index(&object)
                .or_else(|| object.parse::<usize>().ok().filter(|&i| i < ring.rank))
                .ok_or_else(|| anyhow!("unknown object {object}"))?;
            let v = K0Vector::basis(ring.rank, label);
            let zs: Vec<(String, K0Vector)> = if let Some(path) = center_vector {
                let text = ctx.load(&path, "k0vector")?;
                let raw: Vec<[f64; 2]> = serde_json::from_str(&text)?;
                if raw.len() != center.rank_z() {
                    bail!("center vector length {} != rank_z {}", raw.len(), center.rank_z());
                }
                vec![(
                    "custom".to_string(),
                    K0Vector(raw.iter().map(|p| Complex64::new(p[0], p[1])).collect()),
                )]
            } else {
                (0..center.rank_z())
                    .map(|x| (center.data.labels_z[x].clone(), K0Vector::basis(center.rank_z(), x)))
                    .collect()
            };
            let mut values = Vec::new();
            for (zname, z) in &zs {
                let value = genus1_indicator(&center, curve, &v, z, ctx.tol)?;
                let mut entry = json!({"z": zname, "value": cx_json(value)});
                if oracle && z.0.iter().filter(|c| c.norm() > 0.0).count() == 1 {
                    let x = z.0.iter().position(|c| c.norm() > 0.0).unwrap();
                    let reference = indicator_reference_oracle(&center, curve, label, x)?;
                    let pass = (reference - value).norm() < 1e-6;
                    ok &= pass;
                    entry["oracle"] = json!({"value": cx_json(reference), "pass": pass});
                }
                values.push(entry);
            }
            let f = tqft_core::indicators::curve_completion(TorusCurve::new(
                curve.m / curve.d() as i64,
                curve.r / curve.d() as i64,
            )?);
            let word = tqft_core::sl2z::sl2z_factor(f)?;
            ctx.emit(
                "indicators",
                json!({
                    "curve": {"m": curve.m, "r": curve.r, "d": curve.d()},
                    "object": ring.labels[label],
                    "values": values,
                    "word": word.describe(),
                    "normalization_constant": 1.0,
                }),
            )?;
        }
        Command::Compare { fsymbols, lens } => {
            let (_, fs) = ctx.load_category(&fsymbols)?;
            let tube = build_tube_algebra_with_tol(&fs, ctx.tol)?;
            let center = decompose_center(&tube, ctx.seed, ctx.tol)?;
            let tri_text = fixtures::lens_tri_json(lens)
                .ok_or_else(|| anyhow!("no bundled lens space L({lens},1); p must be 1..=5"))?;
            ctx.inputs.push(json!({"kind": "tri", "source": format!("fixture:lens_{lens}_1"), "sha256": digest(tri_text)}));
            let t = parse_triangulation(tri_text)?;
            let tv = tv_invariant(&fs, &t, &TvOptions { node_cap: ctx.cap, parallel: false })?;
            let tree = PlumbingTree::new(vec![lens as i64], vec![])?;
            let rt = rt_invariant(&center.modular, &tree, ctx.cap as u128)?;
            let diff = (tv - rt).norm();
            let pass = diff < 1e-6;
            ok &= pass;
            ctx.emit(
                "compare",
                json!({
                    "lens": lens,
                    "tv": cx_json(tv),
                    "rt": cx_json(rt),
                    "difference": diff,
                    "pass": pass,
                }),
            )?;
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
