use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use hn_core::{analysis, charp, inversion, Poly, Ring, Scalar};
use serde_json::json;

use hn_cli::io;
use hn_cli::numeric::{self, NumericPoly};
use hn_cli::parse::parse_poly;
use hn_cli::acceptance;

const DEFAULT_SEED: u64 = 0x484e;

/// Exact computations around polynomials with nilpotent Hessians:
/// formal inversion of z - t grad P, nilpotency tests, harmonic-form
/// graphs, characteristic-p vanishing and convergence radii.
#[derive(Parser)]
#[command(name = "hn", version, about)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolyArg {
    /// Polynomial: inline text like "(z1+i*z2)^3", or @file.json
    poly: String,
}

impl PolyArg {
    fn load(&self) -> Result<Poly, String> {
        if let Some(path) = self.poly.strip_prefix('@') {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("{}: {}", path, e))?;
            io::poly_from_str(&text).map_err(|e| e.to_string())
        } else {
            parse_poly(&self.poly, None).map_err(|e| e.to_string())
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Test whether the Hessian matrix of P is nilpotent, three ways
    Check(CheckArgs),
    /// Compute the inverse-potential terms Q_[m] of z - t grad P
    Invert(InvertArgs),
    /// Scan the iterated Laplacians of powers of P for vanishing
    Vc(VcArgs),
    /// Compute the sigma functions U, V, W and verify their relations
    Sigma(SigmaArgs),
    /// Analyze a sum of powers of isotropic linear forms and its graph
    Graph(GraphArgs),
    /// Vanishing of iterated Laplacians over a prime field
    Charp(CharpArgs),
    /// Convergence radii for the inverse map, with a sampled norm
    Radius(RadiusArgs),
    /// Run the full self-test suite
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    poly: PolyArg,
}

#[derive(Args)]
struct InvertArgs {
    #[command(flatten)]
    poly: PolyArg,
    /// Number of potential terms Q_[1..=M]
    #[arg(long, default_value_t = 4)]
    order: u32,
    /// recursion | closed | tree | map | all
    #[arg(long, default_value = "recursion")]
    method: String,
}

#[derive(Args)]
struct VcArgs {
    #[command(flatten)]
    poly: PolyArg,
    /// Largest exponent m to scan
    #[arg(long, default_value_t = 6)]
    mmax: u32,
}

#[derive(Args)]
struct SigmaArgs {
    #[command(flatten)]
    poly: PolyArg,
    /// Number of t-coefficients per function
    #[arg(long, default_value_t = 3)]
    order: u32,
}

#[derive(Args)]
struct GraphArgs {
    /// Path to a spec JSON file {"n":..,"d":..,"forms":[{"c":..,"alpha":[..]}]}
    spec: String,
    /// Write the graph in DOT format instead of a report
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct CharpArgs {
    #[command(flatten)]
    poly: PolyArg,
    /// Prime characteristic (may also come from a "mod p" suffix)
    #[arg(short = 'p', long = "prime")]
    prime: Option<u64>,
    /// How far past the guaranteed threshold to keep scanning
    #[arg(long, default_value_t = 2)]
    margin: u32,
}

#[derive(Args)]
struct RadiusArgs {
    #[command(flatten)]
    poly: PolyArg,
    /// Random starts for the sup-norm estimate
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also emit a CSV table checking the growth bound on Q_[m]
    #[arg(long)]
    probe: bool,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

/// 0 = all assertions pass, 1 = an assertion failed, 2 = bad input.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Check(a) => cmd_check(a, cli.json),
        Command::Invert(a) => cmd_invert(a, cli.json),
        Command::Vc(a) => cmd_vc(a, cli.json),
        Command::Sigma(a) => cmd_sigma(a, cli.json),
        Command::Graph(a) => cmd_graph(a, cli.json),
        Command::Charp(a) => cmd_charp(a, cli.json),
        Command::Radius(a) => cmd_radius(a, cli.json),
        Command::Selftest(a) => cmd_selftest(a, cli.json),
    }
}

fn cmd_check(a: &CheckArgs, as_json: bool) -> Result<bool, String> {
    let p = a.poly.load()?;
    let report = analysis::hn_report(&p).map_err(|e| e.to_string())?;
    let self_inv = if report.is_hn() {
        Some(analysis::is_self_inverting(&p).map_err(|e| e.to_string())?)
    } else {
        None
    };
    if as_json {
        println!(
            "{}",
            json!({
                "hessian_nilpotent": report.is_hn(),
                "by_matrix_power": report.direct,
                "by_trace_powers": report.traces,
                "by_laplacian_powers": report.powers,
                "harmonic": report.harmonic,
                "self_inverting": self_inv,
                "consistent": report.consistent(),
            })
        );
    } else {
        println!(
            "hessian nilpotent: {}",
            if report.is_hn() { "yes" } else { "no" }
        );
        println!("  matrix power:     {}", report.direct);
        println!("  trace powers:     {}", report.traces);
        match report.powers {
            Some(b) => println!("  laplacian powers: {}", b),
            None => println!("  laplacian powers: n/a (order < 2)"),
        }
        println!("  harmonic:         {}", report.harmonic);
        if let Some(si) = self_inv {
            println!("  self-inverting:   {}", si);
        }
    }
    Ok(report.consistent())
}

fn cmd_invert(a: &InvertArgs, as_json: bool) -> Result<bool, String> {
    let p = a.poly.load()?;
    let m = a.order;
    let d = p.degree().ok_or("zero polynomial")?;
    let zt = if d >= 2 { m * (d - 2) + 2 } else { 2 };
    let compute = |method: &str| -> Result<Vec<Poly>, String> {
        match method {
            "recursion" => Ok(inversion::potentials_recursive(&p, m)),
            "closed" => inversion::potentials_closed_hn(&p, m).map_err(|e| e.to_string()),
            "tree" => inversion::potentials_by_trees(&p, m).map_err(|e| e.to_string()),
            "map" => inversion::potentials_by_inversion(&p, m, zt).map_err(|e| e.to_string()),
            other => Err(format!("unknown method '{}'", other)),
        }
    };
    let mut all_agree = true;
    let (label, terms) = if a.method == "all" {
        let base = compute("recursion")?;
        for method in ["tree", "map"] {
            if compute(method)? != base {
                all_agree = false;
            }
        }
        // The closed form only applies to nilpotent Hessians.
        if analysis::is_hn_direct(&p).map_err(|e| e.to_string())? {
            if compute("closed")? != base {
                all_agree = false;
            }
        }
        ("all".to_string(), base)
    } else {
        (a.method.clone(), compute(&a.method)?)
    };
    if as_json {
        let qs: Vec<_> = terms
            .iter()
            .map(|q| serde_json::to_value(io::poly_to_json(q)).unwrap())
            .collect();
        println!(
            "{}",
            json!({ "method": label, "order": m, "agree": all_agree, "potentials": qs })
        );
    } else {
        println!("method: {}", label);
        for (i, q) in terms.iter().enumerate() {
            println!("Q_[{}] = {}", i + 1, q);
        }
        if a.method == "all" {
            println!("methods agree: {}", all_agree);
        }
    }
    Ok(all_agree)
}

fn cmd_vc(a: &VcArgs, as_json: bool) -> Result<bool, String> {
    let p = a.poly.load()?;
    let scan = analysis::vanishing_scan(&p, a.mmax);
    if as_json {
        let rows: Vec<_> = scan.iter().map(|(m, z)| json!({"m": m, "vanishes": z})).collect();
        println!("{}", json!({ "mmax": a.mmax, "scan": rows }));
    } else {
        for (m, z) in &scan {
            println!("laplacian^{} P^{} {}", m, m + 1, if *z { "= 0" } else { "!= 0" });
        }
    }
    Ok(true)
}

fn cmd_sigma(a: &SigmaArgs, as_json: bool) -> Result<bool, String> {
    let p = a.poly.load()?;
    let d = p.degree().ok_or("zero polynomial")?;
    let sf = inversion::sigma_functions(&p, a.order);
    let zt = if d >= 2 { (a.order + 1) * (d - 2) + 2 } else { 2 };
    let ok = inversion::sigma_composition_check(&p, &sf, zt).map_err(|e| e.to_string())?;
    if as_json {
        let dump = |v: &[Poly]| -> Vec<serde_json::Value> {
            v.iter()
                .map(|q| serde_json::to_value(io::poly_to_json(q)).unwrap())
                .collect()
        };
        println!(
            "{}",
            json!({
                "order": a.order,
                "u": dump(&sf.u),
                "v": dump(&sf.v),
                "w": dump(&sf.w),
                "relations_hold": ok,
            })
        );
    } else {
        for (name, terms) in [("U", &sf.u), ("V", &sf.v), ("W", &sf.w)] {
            for (i, q) in terms.iter().enumerate() {
                println!("{}_{} = {}", name, i, q);
            }
        }
        println!("functional equations hold: {}", ok);
    }
    Ok(ok)
}

fn cmd_graph(a: &GraphArgs, as_json: bool) -> Result<bool, String> {
    let text = fs::read_to_string(&a.spec).map_err(|e| format!("{}: {}", a.spec, e))?;
    let spec = io::spec_from_str(&text).map_err(|e| e.to_string())?;
    let g = spec.graph().map_err(|e| e.to_string())?;
    if a.dot {
        print!("{}", io::graph_to_dot(&g));
        return Ok(true);
    }
    let hn = spec.is_hn_by_psi().map_err(|e| e.to_string())?;
    let traces = spec.trace_identity_check(4).map_err(|e| e.to_string())?;
    let span = spec.span_dim().map_err(|e| e.to_string())?;
    let components = g.components();
    // Structural constraints only apply to nilpotent specs of degree >= 4.
    let structure = hn_core::graph::structure_report(&spec).ok();
    if as_json {
        println!(
            "{}",
            json!({
                "k": g.k(),
                "edges": g.edge_count(),
                "span": span,
                "connected": g.is_connected(),
                "edgeless": g.is_edgeless(),
                "components": components,
                "hessian_nilpotent": hn,
                "trace_identity": traces,
                "structure": structure.as_ref().map(|s| json!({
                    "edgeless": s.edgeless,
                    "path_or_cycle": s.is_path_or_cycle,
                    "clause_holds": s.clause_holds,
                    "consistent": s.consistent,
                })),
            })
        );
    } else {
        println!("{}", g);
        println!("span dimension: {}", span);
        println!("components: {}", components.len());
        println!("hessian nilpotent: {}", hn);
        println!("trace identity (m <= 4): {}", traces);
        if let Some(s) = &structure {
            println!(
                "structure: edgeless={} path_or_cycle={} clause={:?} consistent={}",
                s.edgeless, s.is_path_or_cycle, s.clause_holds, s.consistent
            );
        }
    }
    Ok(traces && structure.map_or(true, |s| s.consistent))
}

/// Reduce a characteristic-zero polynomial mod p (denominators must be
/// invertible); polynomials already over F_p pass through.
fn to_char_p(p: &Poly, prime: Option<u64>) -> Result<Poly, String> {
    let ring = p.ring();
    match (ring.characteristic(), prime) {
        (0, None) => Err("no characteristic given; use -p or a 'mod p' suffix".into()),
        (q, None) => {
            let _ = q;
            Ok(p.clone())
        }
        (q, Some(target)) if q != 0 => {
            if q == target {
                Ok(p.clone())
            } else {
                Err(format!("input is already mod {}, not {}", q, target))
            }
        }
        (_, Some(target)) => {
            let uses_i = p
                .terms()
                .any(|(_, c)| matches!(c.to_rational_parts(), Some((_, im)) if !im.is_zero()));
            let new_ring = if uses_i {
                Ring::fp_with_i(target).map_err(|e| e.to_string())?
            } else {
                Ring::fp(target).map_err(|e| e.to_string())?
            };
            let mut terms = Vec::new();
            for (mono, c) in p.terms() {
                let (re, im) = c.to_rational_parts().ok_or("unsupported ring")?;
                let mut s = Scalar::from_rational(new_ring, re).map_err(|e| e.to_string())?;
                if !im.is_zero() {
                    let b = Scalar::from_rational(new_ring, im).map_err(|e| e.to_string())?;
                    let i = Scalar::i(new_ring).map_err(|e| e.to_string())?;
                    s = s.try_add(&b.try_mul(&i).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                }
                terms.push((mono.exps.clone(), s));
            }
            Poly::from_terms(new_ring, p.nvars(), terms).map_err(|e| e.to_string())
        }
    }
}

fn cmd_charp(a: &CharpArgs, as_json: bool) -> Result<bool, String> {
    let p = to_char_p(&a.poly.load()?, a.prime)?;
    let report = charp::vc_charp(&p, a.margin).map_err(|e| e.to_string())?;
    if as_json {
        let rows: Vec<_> = report
            .scan
            .iter()
            .map(|(m, z)| json!({"m": m, "vanishes": z}))
            .collect();
        println!(
            "{}",
            json!({
                "p": report.p,
                "degree": report.degree,
                "threshold": report.threshold,
                "scan": rows,
                "holds": report.holds,
            })
        );
    } else {
        println!("p = {}, deg = {}, guaranteed from m = {}", report.p, report.degree, report.threshold);
        for (m, z) in &report.scan {
            println!("laplacian^{} P^{} {}", m, m + 1, if *z { "= 0" } else { "!= 0" });
        }
        println!("vanishing past threshold: {}", report.holds);
    }
    Ok(report.holds)
}

fn cmd_radius(a: &RadiusArgs, as_json: bool) -> Result<bool, String> {
    let p = a.poly.load()?;
    let np = NumericPoly::from_poly(&p).map_err(|e| e.to_string())?;
    let sup = numeric::sup_norm(&np, a.samples, a.seed);
    let general = numeric::radius_general(&p, sup).ok();
    let hn = numeric::radius_hn(&p, sup).ok();
    let probe = if a.probe {
        let r = general.or(hn).unwrap_or(0.1).min(0.5);
        Some(
            numeric::potential_bound_check(&p, 4, r, 200, 1e-9, a.seed)
                .map_err(|e| e.to_string())?,
        )
    } else {
        None
    };
    if as_json {
        println!(
            "{}",
            json!({
                "seed": a.seed,
                "samples": a.samples,
                "sup_norm": sup,
                "radius_general": general,
                "radius_nilpotent": hn,
                "probe": probe.as_ref().map(|rows| rows
                    .iter()
                    .map(|c| json!({"m": c.m, "observed": c.observed, "bound": c.bound, "holds": c.holds}))
                    .collect::<Vec<_>>()),
            })
        );
    } else {
        println!("seed: {}", a.seed);
        println!("estimated sup |P| on the unit sphere: {}", sup);
        match general {
            Some(r) => println!("radius (general, deg >= 3): {}", r),
            None => println!("radius (general): n/a"),
        }
        match hn {
            Some(r) => println!("radius (nilpotent Hessian, deg >= 4): {}", r),
            None => println!("radius (nilpotent Hessian): n/a"),
        }
        if let Some(rows) = &probe {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|c| {
                    vec![
                        c.m.to_string(),
                        format!("{:e}", c.observed),
                        format!("{:e}", c.bound),
                        c.holds.to_string(),
                    ]
                })
                .collect();
            print!("{}", io::csv_table(&["m", "observed", "bound", "holds"], &table));
        }
    }
    Ok(probe.map_or(true, |rows| rows.iter().all(|c| c.holds)))
}

fn cmd_selftest(a: &SelftestArgs, as_json: bool) -> Result<bool, String> {
    if as_json {
        let mut results = Vec::new();
        let ok = acceptance::all().into_iter().fold(true, |acc, c| {
            let r = (c.run)(a.seed);
            let pass = r.is_ok();
            results.push(json!({
                "id": c.id,
                "name": c.name,
                "pass": pass,
                "detail": r.err(),
            }));
            acc && pass
        });
        println!("{}", json!({ "seed": a.seed, "pass": ok, "criteria": results }));
        Ok(ok)
    } else {
        println!("seed: {}", a.seed);
        Ok(acceptance::run_all(a.seed, |line| println!("{}", line)))
    }
}
