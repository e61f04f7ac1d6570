//! `dgd` — Drinfeld double computations for finite groups from the command
//! line: group summaries, Hopf/ribbon axiom certification, irreducible
//! module tables, modular data, fusion rules, and Nichols-algebra degree
//! dimensions.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dgd_core::double::{Double, Suite};
use dgd_core::export;
use dgd_core::group::FiniteGroup;
use dgd_core::linalg::C64;
use dgd_core::mackey::{nichols_degree_dims, nichols_degree_dims_from_braiding, Classification,
    MackeyError, MGLabel};
use dgd_core::modular::Modular;
use dgd_core::RunConfig;

#[derive(Parser)]
#[command(name = "dgd", version, about = "Drinfeld double of a finite group: \
structure certification, irreducible modules, modular data, and fusion rules")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Numerical tolerance for pass/fail decisions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for all randomized checks (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value = "0x5EED", value_parser = parse_seed)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest group order for which triple-tensor identities are checked.
    #[arg(long, global = true, default_value_t = 12)]
    triple_limit: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Summarize a group: order, classes, centralizers, commuting-pair orbits.
    Group { spec: String },
    /// Certify the Hopf/quasitriangular/ribbon axioms of the double.
    Verify {
        spec: String,
        /// all | bialgebra | hopf | quasitriangular | ybe | ribbon | antireal
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// List the irreducible modules with their characters.
    Irreps { spec: String },
    /// Fusion coefficients by brute-force character decomposition.
    Fusion { spec: String },
    /// Modular S, T, and Fourier matrices.
    Modular { spec: String },
    /// Compare Verlinde-formula fusion against brute force.
    Verlinde { spec: String },
    /// Nichols-algebra degree dimensions from a braiding.
    Nichols {
        /// Group spec, or a fixture `flip:d` / `negflip:d`.
        spec: String,
        /// Module label as `class,irrep` (required for group specs).
        #[arg(long)]
        label: Option<String>,
        /// Highest tensor degree to compute.
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        s.parse()
    };
    parsed.map_err(|_| format!("invalid seed '{s}'"))
}

/// Errors mapped onto process exit codes.
enum CliError {
    /// Exit 2: malformed input, unknown spec, failed group axioms, size guard.
    Input(String),
    /// Exit 1: a verification that ran to completion did not pass.
    Check(String),
}

impl From<MackeyError> for CliError {
    fn from(e: MackeyError) -> Self {
        match e {
            MackeyError::NicholsBudget { .. } => CliError::Input(e.to_string()),
            other => CliError::Check(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Parse the group mini-grammar: `cyclic:n`, `dihedral:n`, `sym:n`, `alt:n`,
/// `q8`, `prod(a,b)`, `file:path`, plus the short aliases C<n>, D<n>, S<n>,
/// A<n>.
fn parse_group(spec: &str) -> Result<FiniteGroup, CliError> {
    let spec = spec.trim();
    let fail = |msg: String| Err(CliError::Input(msg));
    let number = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| CliError::Input(format!("invalid group size '{s}' in spec '{spec}'")))
    };
    let build = |r: Result<FiniteGroup, dgd_core::group::GroupError>| {
        r.map_err(|e| CliError::Input(format!("bad group spec '{spec}': {e}")))
    };
    if spec.eq_ignore_ascii_case("q8") {
        return Ok(FiniteGroup::quaternion8());
    }
    if let Some(rest) = spec.strip_prefix("cyclic:") {
        return build(FiniteGroup::cyclic(number(rest)?));
    }
    if let Some(rest) = spec.strip_prefix("dihedral:") {
        return build(FiniteGroup::dihedral(number(rest)?));
    }
    if let Some(rest) = spec.strip_prefix("sym:") {
        return build(FiniteGroup::symmetric(number(rest)?));
    }
    if let Some(rest) = spec.strip_prefix("alt:") {
        return build(FiniteGroup::alternating(number(rest)?));
    }
    if let Some(rest) = spec.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
        // Split at the top-level comma only; factors may nest.
        let mut depth = 0usize;
        let mut split = None;
        for (i, ch) in rest.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    split = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let Some(i) = split else {
            return fail(format!("prod spec '{spec}' needs two comma-separated factors"));
        };
        let left = parse_group(&rest[..i])?;
        let right = parse_group(&rest[i + 1..])?;
        return Ok(FiniteGroup::direct_product(&left, &right));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return group_from_file(path);
    }
    // Short aliases: a family letter followed by the size.
    if spec.len() >= 2 {
        let (head, tail) = spec.split_at(1);
        if tail.chars().all(|c| c.is_ascii_digit()) {
            match head {
                "C" | "c" => return build(FiniteGroup::cyclic(number(tail)?)),
                "D" | "d" => return build(FiniteGroup::dihedral(number(tail)?)),
                "S" | "s" => return build(FiniteGroup::symmetric(number(tail)?)),
                "A" | "a" => return build(FiniteGroup::alternating(number(tail)?)),
                _ => {}
            }
        }
    }
    fail(format!(
        "unrecognized group spec '{spec}' \
         (expected cyclic:n, dihedral:n, sym:n, alt:n, q8, prod(a,b), or file:path)"
    ))
}

/// Load a Cayley table: one row of whitespace-separated 0-based indices per
/// line; blank lines and lines starting with '#' are ignored.
fn group_from_file(path: &str) -> Result<FiniteGroup, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read '{path}': {e}")))?;
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let row =
            row.map_err(|e| CliError::Input(format!("bad table entry in '{path}': {e}")))?;
        rows.push(row);
    }
    FiniteGroup::from_cayley_table(format!("file:{path}"), &rows)
        .map_err(|e| CliError::Input(format!("'{path}' is not a group table: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig {
        tol: cli.tol,
        seed: cli.seed,
        triple_limit: cli.triple_limit,
        ..RunConfig::default()
    };
    if !cli.tol.is_finite() || cli.tol <= 0.0 {
        return Err(CliError::Input("tolerance must be positive".into()));
    }
    let (output, failure) = match &cli.cmd {
        Cmd::Group { spec } => (cmd_group(spec, cli.format)?, None),
        Cmd::Verify { spec, suite } => cmd_verify(spec, suite, &cfg, cli.format)?,
        Cmd::Irreps { spec } => (cmd_irreps(spec, cli.format)?, None),
        Cmd::Fusion { spec } => (cmd_fusion(spec, &cfg, cli.format)?, None),
        Cmd::Modular { spec } => (cmd_modular(spec, &cfg, cli.format)?, None),
        Cmd::Verlinde { spec } => cmd_verlinde(spec, &cfg, cli.format)?,
        Cmd::Nichols { spec, label, nmax } => {
            (cmd_nichols(spec, label.as_deref(), *nmax, &cfg, cli.format)?, None)
        }
    };
    emit(&cli.out, &output)?;
    match failure {
        None => Ok(()),
        Some(e) => Err(e),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Input(format!("cannot write '{}': {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json_doc(v: &Value) -> String {
    export::to_json_string(v)
}

fn cmd_group(spec: &str, format: Format) -> Result<String, CliError> {
    let g = parse_group(spec)?;
    let conj = g.conjugacy();
    let orbits = g.commuting_pair_orbits();
    let class_sizes: Vec<usize> = conj.classes.iter().map(Vec::len).collect();
    let centralizer_orders: Vec<usize> =
        conj.centralizers.iter().map(|c| c.elements.len()).collect();
    Ok(match format {
        Format::Json => json_doc(&json!({
            "format": export::FORMAT_TAG,
            "group": g.name(),
            "order": g.order(),
            "num_classes": conj.classes.len(),
            "class_sizes": class_sizes,
            "centralizer_orders": centralizer_orders,
            "commuting_pair_orbits": orbits.orbit_count(),
        })),
        Format::Csv => {
            let mut s = String::from("key,value\n");
            s.push_str(&format!("group,{}\n", g.name()));
            s.push_str(&format!("order,{}\n", g.order()));
            s.push_str(&format!("num_classes,{}\n", conj.classes.len()));
            s.push_str(&format!(
                "class_sizes,{}\n",
                class_sizes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            ));
            s.push_str(&format!(
                "centralizer_orders,{}\n",
                centralizer_orders.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            ));
            s.push_str(&format!("commuting_pair_orbits,{}\n", orbits.orbit_count()));
            s
        }
        Format::Pretty => format!(
            "group: {}\norder: {}\nconjugacy classes: {}\nclass sizes: {}\n\
             centralizer orders: {}\ncommuting-pair orbits: {}\n",
            g.name(),
            g.order(),
            conj.classes.len(),
            class_sizes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            centralizer_orders.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            orbits.orbit_count(),
        ),
    })
}

fn cmd_verify(
    spec: &str,
    suite: &str,
    cfg: &RunConfig,
    format: Format,
) -> Result<(String, Option<CliError>), CliError> {
    let g = parse_group(spec)?;
    let suites = Suite::parse(suite)
        .ok_or_else(|| CliError::Input(format!("unknown suite '{suite}'")))?;
    let d = Double::new(&g);
    let report = d.verify_axioms(&suites, cfg);
    let rendered = match format {
        Format::Json => {
            let mut v = serde_json::to_value(&report)
                .map_err(|e| CliError::Input(e.to_string()))?;
            v.as_object_mut()
                .expect("report serializes to an object")
                .insert("format".into(), Value::String(export::FORMAT_TAG.into()));
            json_doc(&v)
        }
        Format::Csv => {
            let mut s = String::from("suite,max_deviation,pass\n");
            for r in &report.suites {
                s.push_str(&format!(
                    "{},{},{}\n",
                    r.suite,
                    export::format_real(r.max_deviation),
                    r.pass
                ));
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("group: {} (tolerance {:e})\n", report.group, report.tolerance);
            for r in &report.suites {
                s.push_str(&format!(
                    "suite {}: {} (max deviation {:.3e})\n",
                    r.suite,
                    if r.pass { "pass" } else { "FAIL" },
                    r.max_deviation
                ));
            }
            s.push_str(if report.all_pass { "all suites pass\n" } else { "FAILED\n" });
            s
        }
    };
    let failure = if report.all_pass {
        None
    } else {
        Some(CliError::Check(format!("axiom suites failed for {}", report.group)))
    };
    Ok((rendered, failure))
}

fn classification_for(g: &FiniteGroup) -> Result<Classification<'_>, CliError> {
    Classification::new(g).map_err(CliError::from)
}

fn cmd_irreps(spec: &str, format: Format) -> Result<String, CliError> {
    let g = parse_group(spec)?;
    let cl = classification_for(&g)?;
    Ok(match format {
        Format::Json => json_doc(&export::characters_json(g.name(), &cl)),
        Format::Csv => export::characters_csv(&cl),
        Format::Pretty => {
            let mut s = format!("group: {}\nirreducible modules: {}\n", g.name(), cl.num_labels());
            let mut sum_sq = 0usize;
            for &label in &cl.labels {
                let dim = cl.module_dimension(label);
                sum_sq += dim * dim;
                s.push_str(&format!(
                    "label (class {}, irrep {}): dim {}\n",
                    label.class_index, label.irrep_index, dim
                ));
            }
            s.push_str(&format!("sum of squared dimensions: {sum_sq} = |G|^2\n"));
            s
        }
    })
}

fn modular_for<'a, 'g>(cl: &'a Classification<'g>) -> Modular<'a, 'g> {
    Modular::new(cl)
}

fn cmd_fusion(spec: &str, cfg: &RunConfig, format: Format) -> Result<String, CliError> {
    let g = parse_group(spec)?;
    let cl = classification_for(&g)?;
    let m = modular_for(&cl);
    let data = m.modular_data(cfg.tol).map_err(|e| CliError::Check(e.to_string()))?;
    let table = m.fusion_bruteforce().map_err(|e| CliError::Check(e.to_string()))?;
    Ok(match format {
        Format::Json => json_doc(&export::fusion_json(g.name(), &data, &table, "bruteforce")),
        Format::Csv => export::fusion_csv(&table),
        Format::Pretty => pretty_fusion(g.name(), &table),
    })
}

fn pretty_fusion(name: &str, table: &dgd_core::modular::FusionTable) -> String {
    let l = table.size();
    let mut s = format!(
        "group: {name}\nlabels: {l}\nresidual: {}\nnonzero coefficients:\n",
        export::format_real(table.residual)
    );
    for i in 0..l {
        for j in 0..l {
            for k in 0..l {
                let v = table.get(i, j, k);
                if v != 0 {
                    s.push_str(&format!("N[{i}][{j}][{k}] = {v}\n"));
                }
            }
        }
    }
    s
}

fn cmd_modular(spec: &str, cfg: &RunConfig, format: Format) -> Result<String, CliError> {
    let g = parse_group(spec)?;
    let cl = classification_for(&g)?;
    let m = modular_for(&cl);
    let data = m.modular_data(cfg.tol).map_err(|e| CliError::Check(e.to_string()))?;
    Ok(match format {
        Format::Json => json_doc(&export::modular_json(g.name(), &data)),
        Format::Csv => export::modular_csv(&data),
        Format::Pretty => {
            let l = data.labels.len();
            let mut s = format!("group: {}\nlabels: {l}\n", g.name());
            s.push_str("T diagonal: ");
            let diag: Vec<String> =
                (0..l).map(|i| export::format_complex(data.t[(i, i)])).collect();
            s.push_str(&diag.join(" "));
            s.push('\n');
            for (name, mat) in [("S", &data.s), ("FT", &data.ft)] {
                s.push_str(&format!("{name}:\n"));
                for i in 0..l {
                    let row: Vec<String> =
                        (0..l).map(|j| export::format_complex(mat[(i, j)])).collect();
                    s.push_str(&format!("  {}\n", row.join(" ")));
                }
            }
            s
        }
    })
}

fn cmd_verlinde(
    spec: &str,
    cfg: &RunConfig,
    format: Format,
) -> Result<(String, Option<CliError>), CliError> {
    let g = parse_group(spec)?;
    let cl = classification_for(&g)?;
    let m = modular_for(&cl);
    let data = m.modular_data(cfg.tol).map_err(|e| CliError::Check(e.to_string()))?;
    let brute = m.fusion_bruteforce().map_err(|e| CliError::Check(e.to_string()))?;
    let verlinde = m.verlinde_fusion(&data).map_err(|e| CliError::Check(e.to_string()))?;
    let matches = brute.n == verlinde.n;
    let rendered = match format {
        Format::Json => json_doc(&json!({
            "format": export::FORMAT_TAG,
            "group": g.name(),
            "match": matches,
            "residual_bruteforce": export::format_real(brute.residual),
            "residual_verlinde": export::format_real(verlinde.residual),
            "n": verlinde.n,
        })),
        Format::Csv => format!(
            "match,residual_bruteforce,residual_verlinde\n{},{},{}\n",
            matches,
            export::format_real(brute.residual),
            export::format_real(verlinde.residual)
        ),
        Format::Pretty => format!(
            "group: {}\nmatch: {}\nresidual (brute force): {}\nresidual (Verlinde): {}\n",
            g.name(),
            matches,
            export::format_real(brute.residual),
            export::format_real(verlinde.residual)
        ),
    };
    let failure = if matches {
        None
    } else {
        Some(CliError::Check(format!(
            "Verlinde fusion disagrees with brute force for {}",
            g.name()
        )))
    };
    Ok((rendered, failure))
}

fn cmd_nichols(
    spec: &str,
    label: Option<&str>,
    nmax: usize,
    cfg: &RunConfig,
    format: Format,
) -> Result<String, CliError> {
    let (source, dims) = if let Some(d) = spec.strip_prefix("flip:") {
        let d: usize = d
            .parse()
            .map_err(|_| CliError::Input(format!("invalid fixture dimension in '{spec}'")))?;
        let c = dgd_core::mackey::flip_braiding(d);
        let dims = nichols_degree_dims_from_braiding(&c, d, nmax, cfg.nichols_budget)?;
        (spec.to_string(), dims)
    } else if let Some(d) = spec.strip_prefix("negflip:") {
        let d: usize = d
            .parse()
            .map_err(|_| CliError::Input(format!("invalid fixture dimension in '{spec}'")))?;
        let c = dgd_core::mackey::flip_braiding(d) * C64::new(-1.0, 0.0);
        let dims = nichols_degree_dims_from_braiding(&c, d, nmax, cfg.nichols_budget)?;
        (spec.to_string(), dims)
    } else {
        let g = parse_group(spec)?;
        let label = label.ok_or_else(|| {
            CliError::Input("group specs need --label class,irrep".to_string())
        })?;
        let (k, r) = label
            .split_once(',')
            .ok_or_else(|| CliError::Input(format!("label '{label}' is not class,irrep")))?;
        let want = MGLabel {
            class_index: k
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad class index '{k}'")))?,
            irrep_index: r
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad irrep index '{r}'")))?,
        };
        let cl = classification_for(&g)?;
        if !cl.labels.contains(&want) {
            return Err(CliError::Input(format!(
                "label ({},{}) does not exist for {} ({} labels)",
                want.class_index,
                want.irrep_index,
                g.name(),
                cl.num_labels()
            )));
        }
        let module = cl.induce_module(want, cfg.seed)?;
        let dims = nichols_degree_dims(&module, nmax, cfg.nichols_budget)?;
        (
            format!("{} label ({},{})", g.name(), want.class_index, want.irrep_index),
            dims,
        )
    };
    Ok(match format {
        Format::Json => json_doc(&json!({
            "format": export::FORMAT_TAG,
            "source": source,
            "nmax": nmax,
            "dims": dims,
        })),
        Format::Csv => {
            let mut s = String::from("n,dim\n");
            for (n, d) in dims.iter().enumerate() {
                s.push_str(&format!("{},{d}\n", n + 1));
            }
            s
        }
        Format::Pretty => format!(
            "source: {source}\ndegree dimensions: {}\n",
            dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ),
    })
}
