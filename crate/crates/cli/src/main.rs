//! `multinorm`: command-line access to the cohomology, transfer, duality and
//! multinorm pipelines.
//!
//! Output is JSON by default (`--format text` renders the same data for
//! humans). Exit codes: 0 success, 2 a verification failed, 1 usage or input
//! error. Size caps come from `MULTINORM_ORDER_CAP`, `MULTINORM_RANK_CAP` and
//! `MULTINORM_DEGREE_CAP`.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multinorm_core::cohomology::cohomology_with;
use multinorm_core::duality::{cup_pairing_with, verify_adjointness_with};
use multinorm_core::group::json::GroupSpec;
use multinorm_core::group::{all_subgroups, named::named, normal_subgroups};
use multinorm_core::multinorm::{sha_tate_with, verify_multinorm_pair_with, DecompositionConfig, Verdict};
use multinorm_core::qnumbers::example2::{example2_report_sized, DEFAULT_SEED, SAMPLES_PER_FIELD};
use multinorm_core::qnumbers::{biquadratic_report, hilbert_symbol, parse_rational, Place};
use multinorm_core::transfer::{
    corestriction_deg0, deflation_along, inflation_along, residuation_along, restriction_with, CohomologyMap,
};
use multinorm_core::{Caps, Error, FiniteGroup, GModule, QuotientGroup, Subgroup};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "multinorm", version, about = "Tate cohomology and multinorm verification for finite groups")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for sampled reports.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Res,
    Inf,
    Cor0,
    Def,
    Rsd,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a group: order, exponent, subgroup lattice summary.
    Group {
        #[arg(long)]
        group: String,
    },
    /// Tate cohomology with trivial or permutation coefficients.
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: i32,
        /// `trivial` or `perm:<generators of K>` for Z[G/K].
        #[arg(long, default_value = "trivial")]
        module: String,
    },
    /// A transfer map on trivial coefficients.
    Transfer {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        group: String,
        /// Generators of the subgroup, comma separated element indices.
        #[arg(long, allow_hyphen_values = true)]
        subgroup: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: i32,
    },
    /// The cup pairing between degrees -i and i.
    Pairing {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: u32,
    },
    /// Adjointness of residuation and inflation on G1 x G2.
    Adjointness {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
        #[arg(long)]
        degree: u32,
    },
    /// Kernel of restriction on H^3 for a decomposition configuration.
    Sha {
        #[arg(long)]
        config: PathBuf,
    },
    /// Verify the product checks for G1 x G2, and the kernel embedding if a configuration is given.
    Multinorm {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// The Hilbert symbol (a, b)_v.
    #[command(allow_negative_numbers = true)]
    Hilbert { a: String, b: String, place: String },
    /// Decomposition groups and Tate's kernel for Q(sqrt a, sqrt b).
    #[command(allow_negative_numbers = true)]
    Biquadratic { a: i64, b: i64 },
    /// The failure report for Q(sqrt 13), Q(sqrt 17), Q(sqrt 221).
    Example2 {
        #[arg(long, default_value_t = SAMPLES_PER_FIELD)]
        samples: usize,
    },
}

/// A report and whether the verification it carries passed.
struct Report {
    command: &'static str,
    body: Value,
    passed: bool,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn load_group(s: &str, caps: &Caps) -> Result<FiniteGroup, Error> {
    let g = if Path::new(s).is_file() {
        let text = std::fs::read_to_string(s).map_err(|e| Error::InvalidInput(format!("{s}: {e}")))?;
        let spec: GroupSpec = serde_json::from_str(&text)?;
        spec.build(caps.order)?
    } else {
        named(s)?
    };
    if g.order() > caps.order {
        return Err(Error::TooLarge { cap: caps.order });
    }
    Ok(g)
}

fn parse_subgroup(g: &FiniteGroup, s: &str) -> Result<Subgroup, Error> {
    let gens = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad element index `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Subgroup::generated(g, &gens)
}

fn load_config(path: &Path, caps: &Caps) -> Result<DecompositionConfig, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    DecompositionConfig::from_json(&text, caps)
}

fn group_json(g: &FiniteGroup) -> Value {
    json!({ "name": g.name(), "order": g.order() })
}

fn map_json(m: &CohomologyMap) -> Value {
    json!({
        "kind": m.kind.to_string(),
        "degree": m.source.degree(),
        "source_invariants": m.source.invariant_factors(),
        "target_invariants": m.target.invariant_factors(),
        "source_orders": m.source.orders(),
        "target_orders": m.target.orders(),
        "matrix": m.abstract_matrix.to_dense(),
        "injective": m.is_injective(),
        "surjective": m.is_surjective(),
        "zero": m.is_zero(),
    })
}

/// Above this order the subgroup lattice is not enumerated.
const LATTICE_LIMIT: usize = 200;

fn describe(g: &FiniteGroup) -> Value {
    let small = g.order() <= LATTICE_LIMIT;
    let mut by_order = std::collections::BTreeMap::new();
    if small {
        for s in all_subgroups(g) {
            *by_order.entry(s.order()).or_insert(0usize) += 1;
        }
    }
    let mut element_orders = std::collections::BTreeMap::new();
    for x in g.elements() {
        *element_orders.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    let normal: Option<Vec<Vec<usize>>> =
        small.then(|| normal_subgroups(g).iter().map(|h| h.elements().to_vec()).collect());
    let factors = g.product_structure().map(|p| vec![p.left().order(), p.right().order()]);
    json!({
        "group": group_json(g),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "element_orders": element_orders.into_iter().map(|(o, n)| json!([o, n])).collect::<Vec<_>>(),
        "subgroups_by_order": small.then(|| by_order.into_iter().map(|(o, n)| json!([o, n])).collect::<Vec<_>>()),
        "normal_subgroups": normal,
        "product_factors": factors,
    })
}

fn run(cli: &Cli, caps: &Caps) -> Result<Report, Error> {
    let report = |command, body, passed| Ok(Report { command, body, passed });
    match &cli.command {
        Command::Group { group } => report("group", describe(&load_group(group, caps)?), true),
        Command::Cohomology { group, degree, module } => {
            let g = load_group(group, caps)?;
            let a = match module.as_str() {
                "trivial" => GModule::trivial(&g),
                m => match m.strip_prefix("perm:") {
                    Some(gens) => GModule::permutation(&parse_subgroup(&g, gens)?),
                    None => return Err(Error::InvalidInput(format!("unknown module `{m}`"))),
                },
            };
            let h = cohomology_with(&a, *degree, caps)?;
            let body = json!({
                "group": group_json(&g),
                "module": a.label(),
                "degree": degree,
                "invariant_factors": h.invariant_factors(),
                "free_rank": h.free_rank(),
            });
            report("cohomology", body, true)
        }
        Command::Transfer { kind, group, subgroup, degree } => {
            let g = load_group(group, caps)?;
            let h = parse_subgroup(&g, subgroup)?;
            let z = GModule::trivial(&g);
            let quotient = || QuotientGroup::new(&h).map(|q| q.projection());
            let m = match kind {
                Kind::Res => restriction_with(&z, &h, *degree, caps)?,
                Kind::Inf => inflation_along(&z, &quotient()?, *degree, caps)?,
                Kind::Def => deflation_along(&z, &quotient()?, *degree, caps)?,
                Kind::Rsd => residuation_along(&z, &quotient()?, *degree, None, caps)?,
                Kind::Cor0 => {
                    if *degree != 0 {
                        return Err(Error::DegreeOutOfRange { operation: "cor0", degree: *degree });
                    }
                    corestriction_deg0(&h)?
                }
            };
            let body = json!({ "group": group_json(&g), "subgroup": h.elements(), "map": map_json(&m) });
            report("transfer", body, true)
        }
        Command::Pairing { group, degree } => {
            let g = load_group(group, caps)?;
            let t = cup_pairing_with(&g, *degree, caps)?;
            let cert = t.perfectness();
            let passed = cert.perfect;
            report("pairing", json!({ "group": group_json(&g), "table": to_value(&t), "perfectness": to_value(&cert) }), passed)
        }
        Command::Adjointness { g1, g2, degree } => {
            let g = FiniteGroup::direct_product_capped(&load_group(g1, caps)?, &load_group(g2, caps)?, caps.order)?;
            let r = verify_adjointness_with(&g, *degree, caps)?;
            let passed = r.holds && r.dual_maps_consistent;
            report("adjointness", json!({ "group": group_json(&g), "report": to_value(&r) }), passed)
        }
        Command::Sha { config } => {
            let cfg = load_config(config, caps)?;
            let r = sha_tate_with(&cfg, caps)?;
            let body = json!({ "group": group_json(&cfg.group), "order": r.order(), "report": to_value(&r) });
            report("sha", body, true)
        }
        Command::Multinorm { g1, g2, config } => {
            let g = FiniteGroup::direct_product_capped(&load_group(g1, caps)?, &load_group(g2, caps)?, caps.order)?;
            let cfg = config.as_deref().map(|p| load_config(p, caps)).transpose()?;
            let cfg = match cfg {
                Some(c) if c.group.table() != g.table() => {
                    return Err(Error::InvalidInput("configuration group is not G1 x G2".into()))
                }
                Some(c) => Some(DecompositionConfig::new(&g, rebase(&c, &g)?)?),
                None => None,
            };
            let cert = verify_multinorm_pair_with(&g, cfg.as_ref(), caps)?;
            let passed = cert.verdict == Verdict::VerifiedHolds;
            report("multinorm", json!({ "group": group_json(&g), "certificate": to_value(&cert) }), passed)
        }
        Command::Hilbert { a, b, place } => {
            let (x, y) = (parse_rational(a)?, parse_rational(b)?);
            let v: Place = place.parse()?;
            let body = json!({ "a": x.to_string(), "b": y.to_string(), "place": v, "symbol": hilbert_symbol(x, y, v) });
            report("hilbert", body, true)
        }
        Command::Biquadratic { a, b } => report("biquadratic", to_value(&biquadratic_report(*a, *b)?), true),
        Command::Example2 { samples } => {
            let r = example2_report_sized(cli.seed, *samples);
            let passed = r.multinorm_fails;
            report("example2", to_value(&r), passed)
        }
    }
}

/// Places of `cfg` moved onto `g`, which has the same multiplication table.
fn rebase(cfg: &DecompositionConfig, g: &FiniteGroup) -> Result<Vec<multinorm_core::multinorm::Place>, Error> {
    cfg.places
        .iter()
        .map(|p| {
            Ok(multinorm_core::multinorm::Place { label: p.label.clone(), subgroup: Subgroup::new(g, p.subgroup.elements())? })
        })
        .collect()
}

fn emit(cli: &Cli, report: Report) -> std::io::Result<()> {
    let mut body = match report.body {
        Value::Object(m) => m,
        other => {
            let mut m = serde_json::Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    body.insert("schema_version".into(), json!(SCHEMA_VERSION));
    body.insert("command".into(), json!(report.command));
    body.insert("passed".into(), json!(report.passed));
    let value = Value::Object(body);
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("json") + "\n",
        Format::Text => render::text(&value),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = Caps::from_env().and_then(|caps| run(&cli, &caps));
    match result {
        Ok(report) => {
            let passed = report.passed;
            if let Err(e) = emit(&cli, report) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
