//! `fgq`: build Fock–Goncharov quantum monodromy matrices over quantum tori,
//! check the SL_n^q relations, run the snake-move factorization pipeline, and
//! verify the classical flag-geometry identities on random rational flags.

use clap::{Parser, Subcommand, ValueEnum};
use fgq_core::flags::{
    edge_invariant, random_max_span_quad, random_max_span_triple, triangle_invariant, Flag,
};
use fgq_core::ncmatrix::{classical_triple, m_edge, quantum_side, NcMatrix};
use fgq_core::qtorus::{Rat, TorusElement};
use fgq_core::quantum::{build_system, verify_factorization};
use fgq_core::quiver::{fg_poisson, Side, ThetaVertex};
use fgq_core::snakes::{
    change_of_basis, classify_adjacent, edge_move_matrices, edge_shear_cycle, left_basis,
    line_covector, move_core_matrix, right_basis, triangle_shear_cycle, uturn_matrices, Adjacency,
    Chirality, Snake, SnakeMove,
};
use serde_json::json;

const SCHEMA: &str = "fgq/1";

#[derive(Parser)]
#[command(name = "fgq", version, about = "quantum monodromy matrices and flag-geometry checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Left,
    Right,
    Edge,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Prop {
    Diamond,
    Tail,
    Right,
    Edge,
    Uturn,
    Shears,
}

fn n_arg() -> clap::builder::RangedI64ValueParser {
    clap::value_parser!(i64).range(2..=8)
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangle quiver: vertices, coordinate aliases, Poisson matrix.
    Quiver {
        #[arg(long, value_parser = n_arg())]
        n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the left, right, or edge matrix, classically or quantum.
    Build {
        #[arg(long, value_parser = n_arg())]
        n: i64,
        #[arg(long, value_enum)]
        matrix: MatrixKind,
        /// Entrywise Weyl-ordered quantum matrix instead of the q = 1 layer.
        #[arg(long)]
        quantum: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check that the quantum matrices satisfy the SL_n^q relations.
    Check {
        #[arg(long, value_parser = n_arg())]
        n: i64,
        /// Which matrices to check (comma separated).
        #[arg(long, value_enum, value_delimiter = ',', default_value = "left,right")]
        which: Vec<SideArg>,
        /// Emit the failure report in the given format (only `json`).
        #[arg(long, value_name = "FORMAT")]
        emit_failures: Option<String>,
    },
    /// Solve the snake-move Poisson structures, factor the quantum matrix,
    /// and verify the factorization.
    Factorize {
        #[arg(long, value_parser = n_arg())]
        n: i64,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Emit the solved structures and report in the given format (only `json`).
        #[arg(long, value_name = "FORMAT")]
        emit: Option<String>,
    },
    /// Classical flag-geometry oracle.
    Classical {
        #[command(subcommand)]
        command: ClassicalCommand,
    },
}

#[derive(Subcommand)]
enum ClassicalCommand {
    /// Sample random generic flag configurations and print their invariants.
    Invariants {
        #[arg(long, value_parser = n_arg())]
        n: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify a closed-form identity on random flags; nonzero exit on failure.
    Verify {
        #[arg(long, value_parser = n_arg())]
        n: i64,
        #[arg(long, value_enum)]
        prop: Prop,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

// ---------------------------------------------------------------------------
// Rendering helpers.
// ---------------------------------------------------------------------------

/// "Z'12" → "Z'_{12}".
fn latex_name(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (base, digits) = name.split_at(split);
    if digits.is_empty() {
        base.to_string()
    } else {
        format!("{base}_{{{digits}}}")
    }
}

fn latex_element(e: &TorusElement, bracketed: bool) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let n = e.torus.n;
    let p = &e.torus.poisson;
    let mut parts = Vec::new();
    for (m, c) in e.terms() {
        let mut s = String::new();
        // Inside brackets, show the Weyl term's own coefficient: stored
        // normal forms carry [X^m] = h^{-Σ_{i<j} P_ij m_i m_j} X^m.
        let shown = if bracketed {
            let mut pre = 0i64;
            for i in 0..m.len() {
                for j in (i + 1)..m.len() {
                    pre += p[i][j] * m[i] * m[j];
                }
            }
            c.shifted(pre)
        } else {
            c.clone()
        };
        let coeff = format!("{shown}");
        if coeff != "1" {
            s.push_str(&format!("({coeff})\\,"));
        }
        if bracketed {
            s.push_str("\\left[");
        }
        let mut empty = true;
        for (i, &num) in m.iter().enumerate() {
            if num == 0 {
                continue;
            }
            empty = false;
            let name = latex_name(&e.torus.names[i]);
            if num == n {
                s.push_str(&format!("{name}\\,"));
            } else if num % n == 0 {
                s.push_str(&format!("{name}^{{{}}}\\,", num / n));
            } else {
                let d = num::integer::gcd(num.abs(), n);
                s.push_str(&format!("{name}^{{{}/{}}}\\,", num / d, n / d));
            }
        }
        if empty {
            s.push('1');
        }
        if bracketed {
            s.push_str("\\right]");
        }
        parts.push(s);
    }
    parts.join(" + ")
}

fn print_matrix(m: &NcMatrix, format: Format, bracketed: bool, label: &str) {
    match format {
        Format::Json => {
            let out = json!({ "schema": SCHEMA, "matrix": label, "value": m.to_json() });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Latex => {
            println!("\\begin{{pmatrix}}");
            for i in 0..m.rows {
                let row: Vec<String> =
                    (0..m.cols).map(|j| latex_element(m.get(i, j), bracketed)).collect();
                let tail = if i + 1 < m.rows { " \\\\" } else { "" };
                println!("  {}{}", row.join(" & "), tail);
            }
            println!("\\end{{pmatrix}}");
        }
        Format::Text => {
            println!("{label} ({}x{}):", m.rows, m.cols);
            for i in 0..m.rows {
                for j in 0..m.cols {
                    println!("  [{},{}] = {}", i + 1, j + 1, m.get(i, j));
                }
            }
        }
    }
}

fn rat_str(r: &Rat) -> String {
    format!("{r}")
}

fn flag_json(f: &Flag) -> serde_json::Value {
    let b = &f.basis;
    let rows: Vec<Vec<String>> =
        (0..b.rows).map(|i| (0..b.cols).map(|j| rat_str(&b[(i, j)])).collect()).collect();
    json!(rows)
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

fn cmd_quiver(n: i64, format: Format) {
    let spec = fg_poisson(n);
    match format {
        Format::Json => {
            let out = json!({ "schema": SCHEMA, "quiver": spec.to_json() });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Text => {
            println!("triangle quiver for n = {n}: {} generators", spec.num_gens());
            for (i, name) in spec.names.iter().enumerate() {
                let v = &spec.vertices[i];
                println!("  {name} at ({},{},{})", v.a, v.b, v.c);
            }
            println!("poisson matrix:");
            for row in &spec.poisson {
                println!("  {row:?}");
            }
        }
        Format::Latex => usage_error("`quiver` supports --format json|text"),
    }
}

fn cmd_build(n: i64, matrix: MatrixKind, quantum: bool, format: Format) {
    let spec = fg_poisson(n);
    let (m, label) = match matrix {
        MatrixKind::Left if quantum => (quantum_side(&spec, Side::Left, true), "quantum left"),
        MatrixKind::Right if quantum => (quantum_side(&spec, Side::Right, true), "quantum right"),
        MatrixKind::Left => (classical_triple(&spec, Side::Left, true), "classical left"),
        MatrixKind::Right => (classical_triple(&spec, Side::Right, true), "classical right"),
        MatrixKind::Edge => {
            let t = spec.torus().unwrap();
            let t = if quantum { t } else { t.commutative_shadow() };
            let zs: Vec<TorusElement> = (1..n)
                .map(|j| {
                    TorusElement::generator(&t, spec.index_of_name(&format!("Z{j}")).unwrap())
                })
                .collect();
            (m_edge(&t, &zs, true), if quantum { "quantum edge" } else { "classical edge" })
        }
    };
    print_matrix(&m, format, quantum, label);
}

fn cmd_check(n: i64, which: Vec<SideArg>, emit_failures: Option<String>) -> i32 {
    if let Some(fmt) = &emit_failures {
        if fmt != "json" {
            usage_error("--emit-failures supports only `json`");
        }
    }
    let spec = fg_poisson(n);
    let mut all_passed = true;
    let mut reports = Vec::new();
    for side in which {
        let side: Side = side.into();
        let report = fgq_core::slnq::check_slnq(&quantum_side(&spec, side, true));
        all_passed &= report.passed();
        if emit_failures.is_some() {
            reports.push(json!({ "side": format!("{side:?}"), "report": report.to_json() }));
        } else {
            println!(
                "{side:?} quantum matrix, n = {n}: {}",
                if report.passed() { "all relations hold" } else { "FAILED" }
            );
            if !report.passed() {
                println!("{report}");
            }
        }
    }
    if emit_failures.is_some() {
        let out = json!({ "schema": SCHEMA, "n": n, "checks": reports, "passed": all_passed });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    }
    i32::from(!all_passed)
}

fn cmd_factorize(n: i64, side: SideArg, emit: Option<String>) -> i32 {
    if let Some(fmt) = &emit {
        if fmt != "json" {
            usage_error("--emit supports only `json`");
        }
    }
    let side: Side = side.into();
    let sys = match build_system(n, side) {
        Ok(sys) => sys,
        Err(e) => {
            eprintln!("factorization setup failed: {e}");
            return 1;
        }
    };
    let report = verify_factorization(&sys);
    if emit.is_some() {
        let factors: Vec<serde_json::Value> = sys
            .type_tori
            .iter()
            .zip(&sys.type_matrices)
            .map(|(t, m)| {
                json!({
                    "generators": t.names,
                    "poisson": t.poisson,
                    "matrix": m.to_json(),
                })
            })
            .collect();
        let embedding: Vec<serde_json::Value> = sys
            .embedding
            .src
            .names
            .iter()
            .zip(&sys.embedding.images)
            .map(|(name, img)| json!({ "generator": name, "image": img.to_json() }))
            .collect();
        let out = json!({
            "schema": SCHEMA,
            "n": n,
            "side": format!("{side:?}"),
            "factors": factors,
            "embedding": embedding,
            "glued_matrix": quantum_side(&sys.spec, side, true).to_json(),
            "report": report.to_json(),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("snake-move factorization, n = {n}, side {side:?}:");
        println!("{report}");
    }
    i32::from(!report.passed())
}

fn cmd_invariants(n: i64, seed: u64, trials: u64, format: Format) {
    let nn = n as usize;
    let mut records = Vec::new();
    for t in 0..trials {
        let s = seed.wrapping_add(t);
        let (e, f, g, fp) = random_max_span_quad(s, nn);
        let mut triangles = Vec::new();
        for v in fgq_core::quiver::theta_vertices(n) {
            if v.is_interior() {
                let tau =
                    triangle_invariant(&e, &f, &g, v.a as usize, v.b as usize, v.c as usize);
                triangles.push((v, tau));
            }
        }
        let edges: Vec<(usize, Rat)> =
            (1..nn).map(|j| (j, edge_invariant(&e, &g, &f, &fp, j))).collect();
        records.push((s, e, f, g, fp, triangles, edges));
    }
    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = records
                .iter()
                .map(|(s, e, f, g, fp, triangles, edges)| {
                    let tri: serde_json::Map<String, serde_json::Value> = triangles
                        .iter()
                        .map(|(v, tau)| (format!("{},{},{}", v.a, v.b, v.c), json!(rat_str(tau))))
                        .collect();
                    let eps: serde_json::Map<String, serde_json::Value> =
                        edges.iter().map(|(j, x)| (j.to_string(), json!(rat_str(x)))).collect();
                    json!({
                        "seed": s,
                        "flags": {
                            "E": flag_json(e), "F": flag_json(f),
                            "G": flag_json(g), "F'": flag_json(fp),
                        },
                        "triangle_invariants": tri,
                        "edge_invariants": eps,
                    })
                })
                .collect();
            let out = json!({ "schema": SCHEMA, "n": n, "trials": items });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Text => {
            for (s, _, _, _, _, triangles, edges) in &records {
                println!("seed {s}:");
                for (v, tau) in triangles {
                    println!("  tau({},{},{}) = {}", v.a, v.b, v.c, tau);
                }
                for (j, eps) in edges {
                    println!("  eps({j}) = {eps}");
                }
            }
        }
        Format::Latex => usage_error("`classical invariants` supports --format json|text"),
    }
}

/// One verification trial; returns an error string on the first mismatch.
fn verify_trial(n: i64, prop: Prop, seed: u64) -> Result<(), String> {
    let nn = n as usize;
    let head = ThetaVertex::new(n - 1, 0, 0);
    let check_moves = |e: &Flag, f: &Flag, g: &Flag, chirality: Chirality, tails: bool| {
        let u_fixed = line_covector(e, f, g, head);
        let snakes = Snake::enumerate(n, chirality);
        for s in &snakes {
            for s2 in &snakes {
                let mv = match classify_adjacent(s, s2) {
                    Adjacency::NotAdjacent => continue,
                    Adjacency::Tail if tails => SnakeMove::Tail {
                        position: if chirality == Chirality::Left { 1 } else { nn },
                    },
                    Adjacency::Diamond { position, vertex } if !tails => {
                        SnakeMove::Diamond { position, vertex }
                    }
                    _ => continue,
                };
                let (u, u2) = match chirality {
                    Chirality::Left => {
                        (left_basis(e, f, g, s, &u_fixed), left_basis(e, f, g, s2, &u_fixed))
                    }
                    Chirality::Right => {
                        (right_basis(e, f, g, s, &u_fixed), right_basis(e, f, g, s2, &u_fixed))
                    }
                };
                if change_of_basis(&u, &u2) != move_core_matrix(e, f, g, chirality, &mv) {
                    return Err(format!("{chirality:?} move {mv:?} from {:?}", s.vertices));
                }
            }
        }
        Ok(())
    };
    match prop {
        Prop::Diamond => {
            let (e, f, g) = random_max_span_triple(seed, nn);
            check_moves(&e, &f, &g, Chirality::Left, false)
        }
        Prop::Tail => {
            let (e, f, g) = random_max_span_triple(seed, nn);
            check_moves(&e, &f, &g, Chirality::Left, true)
        }
        Prop::Right => {
            let (e, f, g) = random_max_span_triple(seed, nn);
            check_moves(&g, &e, &f, Chirality::Right, false)?;
            check_moves(&g, &e, &f, Chirality::Right, true)
        }
        Prop::Edge => {
            let (e, f, g, fp) = random_max_span_quad(seed, nn);
            let u_1 = line_covector(&g, &f, &e, head);
            let (b, expected) = edge_move_matrices(&e, &f, &g, &fp, &u_1);
            (b == expected).then_some(()).ok_or_else(|| "edge transition mismatch".into())
        }
        Prop::Uturn => {
            let (e, f, g) = random_max_span_triple(seed, nn);
            let u_1 = line_covector(&e, &f, &g, head);
            let (b, expected) = uturn_matrices(&e, &f, &g, &u_1);
            (b == expected).then_some(()).ok_or_else(|| "u-turn mismatch".into())
        }
        Prop::Shears => {
            let (e, f, g, fp) = random_max_span_quad(seed, nn);
            for a in 1..(n - 1) {
                for b in 1..(n - a) {
                    let c = n - a - b;
                    if c < 1 {
                        continue;
                    }
                    let v = ThetaVertex::new(a, b, c);
                    let p0 = line_covector(&e, &f, &g, ThetaVertex::new(a - 1, b, c));
                    let tau =
                        triangle_invariant(&e, &f, &g, a as usize, b as usize, c as usize);
                    if triangle_shear_cycle(&e, &f, &g, v, true, &p0) != tau
                        || triangle_shear_cycle(&e, &f, &g, v, false, &p0) * tau.clone()
                            != Rat::from_integer(1.into())
                    {
                        return Err(format!("triangle shear cycle at ({a},{b},{c})"));
                    }
                }
            }
            for j in 1..nn {
                let p0 =
                    line_covector(&e, &fp, &g, ThetaVertex::new(j as i64, 0, n - 1 - j as i64));
                let eps = edge_invariant(&e, &g, &f, &fp, j);
                if edge_shear_cycle(&e, &f, &g, &fp, j, true, &p0) != -eps.clone()
                    || edge_shear_cycle(&e, &f, &g, &fp, j, false, &p0) * (-eps)
                        != Rat::from_integer(1.into())
                {
                    return Err(format!("edge shear cycle at j = {j}"));
                }
            }
            Ok(())
        }
    }
}

fn cmd_verify(n: i64, prop: Prop, trials: u64, seed: u64) -> i32 {
    let mut failures = 0u64;
    for t in 0..trials {
        let s = seed.wrapping_add(t);
        if let Err(msg) = verify_trial(n, prop, s) {
            failures += 1;
            println!("FAIL seed {s}: {msg}");
        }
    }
    println!("{}/{} trials passed", trials - failures, trials);
    i32::from(failures > 0)
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Quiver { n, format } => {
            cmd_quiver(n, format);
            0
        }
        Command::Build { n, matrix, quantum, format } => {
            cmd_build(n, matrix, quantum, format);
            0
        }
        Command::Check { n, which, emit_failures } => cmd_check(n, which, emit_failures),
        Command::Factorize { n, side, emit } => cmd_factorize(n, side, emit),
        Command::Classical { command } => match command {
            ClassicalCommand::Invariants { n, seed, trials, format } => {
                cmd_invariants(n, seed, trials, format);
                0
            }
            ClassicalCommand::Verify { n, prop, trials, seed } => cmd_verify(n, prop, trials, seed),
        },
    };
    std::process::exit(code);
}
