//! Command-line front end: argument and config handling, and one JSON report per run.

use crate::chevmatrix::{
    bigcell_factor, commutator_filtration_check, count_defining_group, enumerate_elementary,
    filtration_quotient_check, h_multiplicativity_check, transport_sign_check, verify_steinberg_relations, BigCell,
    ChevGroup, GroupElement, DEFAULT_BUDGET,
};
use crate::finring::{
    is_local, is_nice_pair, jacobson_radical, local_decomposition, maximal_ideals, parse_elem, parse_ring,
    radical_filtration, units, wedderburn_splitting, Ring, Wedderburn,
};
use crate::steinberg::{k2_order, symbol_generation_check, DEFAULT_COSET_BUDGET};
use crate::words::{reconstruct_ring, transport_check, ReconstructionHarness};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser, Debug, Clone)]
#[command(name = "chevkit", version, about = "Exact checks for Chevalley and Steinberg groups over finite rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Ring, e.g. Z/12, F4, F3[x]/(x^2), Z/2 x Z/3.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Root system label, e.g. A2, B2, G2.
    #[arg(long, global = true)]
    pub phi: Option<String>,
    /// Maximum live rows during coset enumeration.
    #[arg(long, global = true)]
    pub budget_cosets: Option<usize>,
    /// Maximum group elements stored during closure.
    #[arg(long, global = true)]
    pub budget_bfs: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file whose values override the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Include wall-clock timings (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Structure of a finite ring.
    RingInfo,
    /// Exhaustive Steinberg relations, h-multiplicativity and transport signs.
    Verify,
    /// |St|, |G⁺| and K2 by coset enumeration.
    K2,
    /// Big-cell factorization of one matrix, or a census of G(S)⁺.
    Bigcell {
        /// Rows separated by ';', entries by ','. Defaults to the identity.
        #[arg(long)]
        element: Option<String>,
        /// Factor every element of G(S)⁺.
        #[arg(long)]
        census: bool,
    },
    /// Order of G(S)⁺ against the defining group.
    Enumerate,
    /// Reconstruct the ring from root subgroups through a homomorphism source → ring.
    Words {
        /// Source ring; defaults to the target.
        #[arg(long)]
        source: Option<String>,
        /// Images of the source's ring generators.
        #[arg(long, value_delimiter = ',')]
        images: Vec<String>,
    },
    /// Congruence quotient G(S,J^k)/G(S,J^{k+1}) and commutator levels.
    Filtration {
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long, default_value_t = 100)]
        samples: u64,
    },
}

/// Fully resolved settings for a run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunConfig {
    pub command: String,
    pub ring: String,
    pub phi: String,
    pub budget_cosets: usize,
    pub budget_bfs: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub timings: bool,
    pub element: Option<String>,
    pub census: bool,
    pub source: Option<String>,
    pub images: Vec<String>,
    pub level: usize,
    pub samples: u64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    ring: Option<String>,
    phi: Option<String>,
    budget_cosets: Option<usize>,
    budget_bfs: Option<u64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    timings: Option<bool>,
    element: Option<String>,
    census: Option<bool>,
    source: Option<String>,
    images: Option<Vec<String>>,
    level: Option<usize>,
    samples: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig, CliError> {
        let c = &cli.common;
        let (command, element, census, source, images, level, samples) = match &cli.command {
            Command::RingInfo => ("ring-info", None, false, None, vec![], 1, 100),
            Command::Verify => ("verify", None, false, None, vec![], 1, 100),
            Command::K2 => ("k2", None, false, None, vec![], 1, 100),
            Command::Bigcell { element, census } => ("bigcell", element.clone(), *census, None, vec![], 1, 100),
            Command::Enumerate => ("enumerate", None, false, None, vec![], 1, 100),
            Command::Words { source, images } => ("words", None, false, source.clone(), images.clone(), 1, 100),
            Command::Filtration { level, samples } => ("filtration", None, false, None, vec![], *level, *samples),
        };
        let mut cfg = RunConfig {
            command: command.to_string(),
            ring: c.ring.clone().unwrap_or_else(|| "Z/5".into()),
            phi: c.phi.clone().unwrap_or_else(|| "A2".into()),
            budget_cosets: c.budget_cosets.unwrap_or(DEFAULT_COSET_BUDGET),
            budget_bfs: c.budget_bfs.unwrap_or(DEFAULT_BUDGET),
            seed: c.seed.unwrap_or(0),
            out: c.out.clone(),
            timings: c.timings,
            element,
            census,
            source,
            images,
            level,
            samples,
        };
        if let Some(path) = &c.config {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            cfg.apply_toml(&text)?;
        }
        if cfg.budget_cosets == 0 || cfg.budget_bfs == 0 {
            return Err(CliError::Config("budgets must be positive".into()));
        }
        Ok(cfg)
    }

    /// Overrides fields with those present in a TOML document.
    pub fn apply_toml(&mut self, text: &str) -> Result<(), CliError> {
        let f: ConfigFile = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        macro_rules! take {
            ($($name:ident),*) => { $( if let Some(v) = f.$name { self.$name = v; } )* };
        }
        take!(ring, phi, budget_cosets, budget_bfs, seed, timings, census, images, level, samples);
        if f.out.is_some() {
            self.out = f.out;
        }
        if f.element.is_some() {
            self.element = f.element;
        }
        if f.source.is_some() {
            self.source = f.source;
        }
        Ok(())
    }
}

/// The output of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub pass: bool,
    pub checks: Vec<(String, bool)>,
    pub error: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

struct Outcome {
    checks: Vec<(String, bool)>,
    result: Value,
}

fn outcome(checks: Vec<(&str, bool)>, result: Value) -> Outcome {
    Outcome {
        checks: checks.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        result,
    }
}

fn ring(cfg: &RunConfig) -> Result<Ring, String> {
    parse_ring(&cfg.ring).map_err(|e| e.to_string())
}

fn group(cfg: &RunConfig) -> Result<ChevGroup, String> {
    ChevGroup::parse(&cfg.phi, &ring(cfg)?).map_err(|e| e.to_string())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Runs a command and assembles its report.
pub fn run(cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let res = match cfg.command.as_str() {
        "ring-info" => cmd_ring_info(cfg),
        "verify" => cmd_verify(cfg),
        "k2" => cmd_k2(cfg),
        "bigcell" => cmd_bigcell(cfg),
        "enumerate" => cmd_enumerate(cfg),
        "words" => cmd_words(cfg),
        "filtration" => cmd_filtration(cfg),
        other => Err(format!("unknown command {other}")),
    };
    let inputs = json!({
        "ring": cfg.ring,
        "phi": cfg.phi,
        "budget_cosets": cfg.budget_cosets,
        "budget_bfs": cfg.budget_bfs,
        "seed": cfg.seed,
    });
    let elapsed_ms = cfg.timings.then(|| start.elapsed().as_millis());
    match res {
        Ok(o) => Report {
            command: cfg.command.clone(),
            inputs,
            pass: o.checks.iter().all(|c| c.1),
            checks: o.checks,
            error: None,
            result: o.result,
            elapsed_ms,
        },
        Err(e) => Report {
            command: cfg.command.clone(),
            inputs,
            pass: false,
            checks: vec![],
            error: Some(e),
            result: Value::Null,
            elapsed_ms,
        },
    }
}

fn cmd_ring_info(cfg: &RunConfig) -> Result<Outcome, String> {
    let r = ring(cfg)?;
    let s = |e: crate::finring::RingError| e.to_string();
    let maximal: Vec<String> = maximal_ideals(&r).map_err(s)?.iter().map(|m| m.format(&r)).collect();
    let jac = jacobson_radical(&r).map_err(s)?;
    let local = is_local(&r).map_err(s)?;
    let dec = local_decomposition(&r).map_err(s)?;
    let mut result = json!({
        "label": r.label(),
        "cardinality": r.card(),
        "characteristic": r.characteristic(),
        "units": units(&r).len(),
        "maximal_ideals": maximal,
        "jacobson_radical": jac.format(&r),
        "local": local,
        "field": local && jac.is_zero(),
        "idempotents": dec.idempotents.iter().map(|&e| r.format(e)).collect::<Vec<_>>(),
        "local_factors": dec.factors.iter().map(|f| f.label().to_string()).collect::<Vec<_>>(),
    });
    if local {
        let filt = radical_filtration(&r).map_err(s)?;
        result["residue_order"] = json!(filt.residue_order);
        result["nilpotency_degree"] = json!(filt.nilpotency_degree);
        result["radical_chain"] = json!(filt
            .layers
            .iter()
            .map(|(i, sk)| json!({ "ideal": i.format(&r), "s": sk }))
            .collect::<Vec<_>>());
        result["coefficient_field"] = match wedderburn_splitting(&r).map_err(s)? {
            Wedderburn::Split { section, method } => json!({
                "section": section.iter().map(|&e| r.format(e)).collect::<Vec<_>>(),
                "method": method,
            }),
            Wedderburn::Unsplittable { reason } => json!({ "unsplittable": reason }),
        };
    }
    Ok(outcome(vec![], result))
}

fn require_nice(g: &ChevGroup) -> Result<(), String> {
    let n = is_nice_pair(g.root_system(), g.ring());
    if n.nice {
        Ok(())
    } else {
        Err(format!("refused: nice-pair violation ({})", n.reason))
    }
}

fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, String> {
    let g = group(cfg)?;
    require_nice(&g)?;
    let rel = verify_steinberg_relations(&g);
    let hm = h_multiplicativity_check(&g);
    let tr = transport_sign_check(&g);
    Ok(outcome(
        vec![
            ("steinberg_relations", rel.pass()),
            ("h_multiplicative", hm.pass()),
            ("transport_signs", tr.pass()),
        ],
        json!({ "relations": to_value(&rel), "h_multiplicativity": to_value(&hm), "transport": to_value(&tr) }),
    ))
}

fn cmd_k2(cfg: &RunConfig) -> Result<Outcome, String> {
    let g = group(cfg)?;
    let rep = k2_order(&g, cfg.budget_cosets, cfg.budget_bfs).map_err(|e| e.to_string())?;
    let mut checks = vec![
        ("order_divides", rep.divides),
        ("relators_sound", rep.relators_sound),
        ("symbols_in_kernel", rep.symbols_in_kernel),
    ];
    let mut result = json!({ "k2": to_value(&rep) });
    match symbol_generation_check(&g, cfg.budget_cosets, cfg.budget_bfs) {
        Ok(sym) => {
            checks.push(("symbols_generate_k2", sym.pass()));
            result["symbols"] = to_value(&sym);
        }
        Err(e) => result["symbols"] = json!({ "skipped": e.to_string() }),
    }
    Ok(outcome(checks, result))
}

fn parse_matrix(g: &ChevGroup, s: &str) -> Result<GroupElement, String> {
    let r = g.ring();
    let mut entries = Vec::new();
    let rows: Vec<&str> = s.split(';').collect();
    for row in &rows {
        for x in row.split(',') {
            entries.push(parse_elem(r, x.trim()).map_err(|e| e.to_string())?);
        }
    }
    if rows.len() != g.dim() || entries.len() != g.dim() * g.dim() {
        return Err(format!("expected a {0}x{0} matrix", g.dim()));
    }
    Ok(GroupElement::from_entries(g.dim(), entries))
}

fn cmd_bigcell(cfg: &RunConfig) -> Result<Outcome, String> {
    let g = group(cfg)?;
    let r = g.ring();
    let fmt = |v: &[crate::finring::Elem]| v.iter().map(|&e| r.format(e)).collect::<Vec<_>>();
    if cfg.census {
        let store = enumerate_elementary(&g, cfg.budget_bfs).map_err(|e| e.to_string())?;
        let census = BigCell::census(&g, store.elements());
        return Ok(outcome(
            vec![("census", census.pass())],
            json!({ "group_order": store.order(), "census": to_value(&census) }),
        ));
    }
    let x = match &cfg.element {
        Some(s) => parse_matrix(&g, s)?,
        None => g.identity(),
    };
    if !g.satisfies_equations(&x) {
        return Err("element does not satisfy the defining equations".into());
    }
    let result = match bigcell_factor(&g, &x) {
        BigCell::InCell { uminus, torus, uplus } => json!({
            "in_cell": true,
            "uminus": fmt(&uminus),
            "torus": fmt(&torus),
            "uplus": fmt(&uplus),
        }),
        BigCell::NotInCell { pivot, minor, reason } => json!({
            "in_cell": false,
            "pivot": pivot,
            "minor": r.format(minor),
            "reason": reason,
        }),
    };
    Ok(outcome(vec![], result))
}

fn cmd_enumerate(cfg: &RunConfig) -> Result<Outcome, String> {
    let g = group(cfg)?;
    let store = enumerate_elementary(&g, cfg.budget_bfs).map_err(|e| e.to_string())?;
    let full = count_defining_group(&g, cfg.budget_bfs);
    let mut checks = vec![];
    if let Some(n) = full {
        checks.push(("equals_defining_group", n == store.order()));
    }
    Ok(outcome(
        checks,
        json!({ "elementary_order": store.order(), "defining_group_order": full }),
    ))
}

fn cmd_words(cfg: &RunConfig) -> Result<Outcome, String> {
    let source = cfg.source.clone().unwrap_or_else(|| cfg.ring.clone());
    let h = ReconstructionHarness::new(&cfg.phi, &source, &cfg.ring, &cfg.images).map_err(|e| e.to_string())?;
    let rec = reconstruct_ring(&h).map_err(|e| e.to_string())?;
    let tr = transport_check(&h.rep, h.hom.target()).map_err(|e| e.to_string())?;
    Ok(outcome(
        vec![("reconstruction", rec.pass()), ("transport", tr.pass())],
        json!({ "reconstruction": to_value(&rec), "transport": to_value(&tr) }),
    ))
}

fn cmd_filtration(cfg: &RunConfig) -> Result<Outcome, String> {
    let g = group(cfg)?;
    let f = filtration_quotient_check(&g, cfg.level, cfg.seed, cfg.samples, cfg.budget_bfs).map_err(|e| e.to_string())?;
    let c = commutator_filtration_check(&g, cfg.level, cfg.level, cfg.samples, cfg.seed).map_err(|e| e.to_string())?;
    Ok(outcome(
        vec![("quotient", f.pass()), ("commutator_levels", c.pass())],
        json!({ "quotient": to_value(&f), "commutators": to_value(&c) }),
    ))
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("chevkit: {e}");
            return 2;
        }
    };
    let report = run(&cfg);
    let text = report.to_json();
    match &cfg.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("chevkit: {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    if report.pass {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        let mut v = vec!["chevkit".to_string()];
        v.extend(args.iter().map(|s| s.to_string()));
        RunConfig::from_cli(&Cli::try_parse_from(v).unwrap()).unwrap()
    }

    #[test]
    fn ring_info_z12() {
        let r = run(&cfg(&["ring-info", "--ring", "Z/12"]));
        assert!(r.pass);
        assert_eq!(r.result["maximal_ideals"].as_array().unwrap().len(), 2);
        let mut idem: Vec<String> = r.result["idempotents"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect();
        idem.sort();
        assert_eq!(idem, ["4", "9"]);
    }

    #[test]
    fn ring_info_local() {
        let r = run(&cfg(&["ring-info", "--ring", "Z/3[x]/(x^2)"]));
        assert_eq!(r.result["local"], json!(true));
        assert_eq!(r.result["radical_chain"].as_array().unwrap().len(), 1);
        let f = run(&cfg(&["ring-info", "--ring", "Z/5"]));
        assert_eq!(f.result["field"], json!(true));
    }

    #[test]
    fn parse_errors_are_reported() {
        let r = run(&cfg(&["ring-info", "--ring", "Z/"]));
        assert!(!r.pass);
        assert!(r.error.unwrap().contains("position"));
    }

    #[test]
    fn verify_pass_and_refusal() {
        assert!(run(&cfg(&["verify", "--phi", "A2", "--ring", "Z/5"])).pass);
        assert!(run(&cfg(&["verify", "--phi", "B2", "--ring", "Z/5"])).pass);
        let r = run(&cfg(&["verify", "--phi", "G2", "--ring", "Z/6"]));
        assert!(!r.pass);
        assert!(r.error.unwrap().contains("nice"));
    }

    #[test]
    fn k2_of_f2() {
        let r = run(&cfg(&["k2", "--ring", "F2"]));
        assert!(r.pass, "{}", r.to_json());
        assert_eq!(r.result["k2"]["steinberg_order"], json!(168));
        assert_eq!(r.result["k2"]["k2_order"], json!(1));
    }

    #[test]
    fn bigcell_identity_and_census() {
        let r = run(&cfg(&["bigcell", "--ring", "Z/5"]));
        assert_eq!(r.result["in_cell"], json!(true));
        assert!(r.result["uplus"].as_array().unwrap().iter().all(|v| v == "0"));
        let r = run(&cfg(&["bigcell", "--ring", "F2", "--element", "0,1,0;1,0,0;0,0,1"]));
        assert_eq!(r.result["in_cell"], json!(false));
        let r = run(&cfg(&["bigcell", "--ring", "F2", "--census"]));
        assert!(r.pass);
        assert_eq!(r.result["census"]["in_cell"], json!(64));
    }

    #[test]
    fn enumerate_z4() {
        let r = run(&cfg(&["enumerate", "--ring", "Z/4"]));
        assert!(r.pass);
        assert_eq!(r.result["elementary_order"], json!(43008));
    }

    #[test]
    fn words_reduction() {
        let r = run(&cfg(&["words", "--ring", "Z/5", "--source", "Z/10"]));
        assert!(r.pass, "{}", r.to_json());
        assert_eq!(r.result["reconstruction"]["carrier_size"], json!(5));
    }

    #[test]
    fn config_overrides_flags() {
        let mut c = cfg(&["verify", "--ring", "Z/5", "--seed", "3"]);
        c.apply_toml("ring = \"Z/7\"\nbudget_bfs = 10\n").unwrap();
        assert_eq!(c.ring, "Z/7");
        assert_eq!(c.budget_bfs, 10);
        assert_eq!(c.seed, 3);
        assert!(c.apply_toml("bogus = 1").is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let c = cfg(&["filtration", "--ring", "F3[x]/(x^2)", "--samples", "20"]);
        let (a, b) = (run(&c).to_json(), run(&c).to_json());
        assert_eq!(a, b);
        assert!(!a.contains("elapsed_ms"));
    }
}
