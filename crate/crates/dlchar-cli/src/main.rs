//! Command-line frontend: parses inputs, delegates to the library and maps
//! outcomes to exit codes (0 ok, 1 verification failure, 2 usage/parse error,
//! 3 budget exceeded).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use dlchar::characterise::{
    adversarial_fit, build_enk, characterise_aleq, characterise_el_dllite, characterise_elq,
    gen_lowerbound_instance, verify_characterisation, CharBounds, CharError, Mode, VerifyOptions,
};
use dlchar::frontier::frontier;
use dlchar::interp::{
    example_set_from_json, example_set_to_json, fits, pointed_from_json, ExampleSet, FitResult,
};
use dlchar::learn::{mq_learn, oracle_from_concept};
use dlchar::ontology::{canonical_model, parse_ontology, satisfies_ontology, DLLiteOntology};
use dlchar::reason::{find_countermodel, subsumes_empty, ReasonError, SubsumptionVerdict};
use dlchar::syntax::{
    fragment_check, parse_concept, parse_concept_open, render_concept, ConceptExpr, FragmentSpec,
    Signature,
};

#[derive(Parser)]
#[command(name = "dlchar", about = "Finite characterisations for description-logic concepts")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: CommonOpts,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Concept in the surface syntax
    #[arg(long, global = true)]
    concept: Option<String>,
    /// Left concept for subsumption
    #[arg(long, global = true)]
    left: Option<String>,
    /// Right concept for subsumption
    #[arg(long, global = true)]
    right: Option<String>,
    /// Ontology file (one CI per line)
    #[arg(long, global = true)]
    ontology: Option<PathBuf>,
    /// Example-set file (JSON)
    #[arg(long, global = true)]
    examples: Option<PathBuf>,
    /// Pointed-interpretation file (JSON)
    #[arg(long, global = true)]
    interp: Option<PathBuf>,
    /// Fragment operators, comma-separated
    #[arg(long, global = true)]
    fragment: Option<String>,
    /// Signature file (JSON with "concepts" and "roles")
    #[arg(long, global = true)]
    signature: Option<PathBuf>,
    /// Role-depth bound
    #[arg(long, global = true)]
    max_depth: Option<u32>,
    /// Number-restriction bound
    #[arg(long, global = true)]
    max_nr: Option<u32>,
    /// Concept-size bound
    #[arg(long, global = true)]
    max_size: Option<u64>,
    /// Countermodel size cap
    #[arg(long, global = true)]
    model_cap: Option<usize>,
    /// Positive-example construction mode
    #[arg(long, global = true, value_enum)]
    mode: Option<CliMode>,
    /// Candidate budget for enumerations
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Seed for randomized suites (echoed in report headers)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write structured output to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Config file with the same keys; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    PaperExact,
    Bounded,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a concept on an interpretation or fit-check it on examples
    Check,
    /// Test a subsumption between two concepts
    Subsume,
    /// Compute the frontier of an L(>=,and,top) concept
    Frontier,
    /// Build a finite characterisation
    Characterise,
    /// Verify a characterisation against an example set
    Verify,
    /// Build the canonical model of a concept under a DL-Lite ontology
    Canonical,
    /// List fragment concepts fitting an example set
    FitSearch,
    /// Run the membership-query learner against a hidden concept
    LearnDemo,
    /// Emit the depth/width-forcing positive examples
    Enk,
    /// Emit the exponential lower-bound concept family instance
    Lowerbound,
}

/// Resolved run configuration: config-file values overridden by flags.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
struct RunConfig {
    concept: Option<String>,
    left: Option<String>,
    right: Option<String>,
    ontology: Option<PathBuf>,
    examples: Option<PathBuf>,
    interp: Option<PathBuf>,
    fragment: Option<String>,
    signature: Option<PathBuf>,
    max_depth: Option<u32>,
    max_nr: Option<u32>,
    max_size: Option<u64>,
    model_cap: Option<usize>,
    mode: Option<String>,
    budget: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Budget(String),
    Verification,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn from_char_error(e: CharError) -> CliError {
    match e {
        CharError::BudgetExceeded(msg) => CliError::Budget(msg),
        CharError::Reason(ReasonError::BudgetExceeded { budget }) => {
            CliError::Budget(format!("budget {budget} exceeded"))
        }
        other => CliError::Usage(other.to_string()),
    }
}

struct Resolved {
    cfg: RunConfig,
}

impl Resolved {
    fn new(opts: &CommonOpts) -> Result<Self, CliError> {
        let mut cfg = match &opts.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(usage)?;
                serde_json::from_str::<RunConfig>(&text).map_err(usage)?
            }
            None => RunConfig::default(),
        };
        macro_rules! overlay {
            ($($field:ident),*) => {
                $(if opts.$field.is_some() { cfg.$field = opts.$field.clone(); })*
            };
        }
        overlay!(
            concept, left, right, ontology, examples, interp, fragment, signature, max_depth,
            max_nr, max_size, model_cap, budget, seed, out
        );
        if let Some(mode) = opts.mode {
            cfg.mode = Some(
                match mode {
                    CliMode::PaperExact => "paper-exact",
                    CliMode::Bounded => "bounded",
                }
                .to_string(),
            );
        }
        Ok(Resolved { cfg })
    }

    fn bounds(&self) -> CharBounds {
        CharBounds {
            dp: self.cfg.max_depth.unwrap_or(2),
            nr: self.cfg.max_nr.unwrap_or(2),
            size: self.cfg.max_size.unwrap_or(14),
            model_cap: self.cfg.model_cap.unwrap_or(5),
            budget: self.cfg.budget.unwrap_or(100_000),
        }
    }

    fn mode(&self) -> Result<Mode, CliError> {
        match self.cfg.mode.as_deref() {
            None | Some("bounded") => Ok(Mode::BoundedComplete),
            Some("paper-exact") => Ok(Mode::PaperExact),
            Some(other) => Err(CliError::Usage(format!("unknown mode `{other}`"))),
        }
    }

    fn seed(&self) -> u64 {
        self.cfg.seed.unwrap_or(0)
    }

    fn ontology(&self) -> Result<Option<DLLiteOntology>, CliError> {
        match &self.cfg.ontology {
            None => Ok(None),
            Some(path) => {
                let text = fs::read_to_string(path).map_err(usage)?;
                Ok(Some(parse_ontology(&text).map_err(usage)?))
            }
        }
    }

    fn examples(&self) -> Result<Option<(ExampleSet, Signature)>, CliError> {
        match &self.cfg.examples {
            None => Ok(None),
            Some(path) => {
                let text = fs::read_to_string(path).map_err(usage)?;
                Ok(Some(example_set_from_json(&text).map_err(usage)?))
            }
        }
    }

    fn fragment(&self) -> Result<FragmentSpec, CliError> {
        match &self.cfg.fragment {
            Some(text) => FragmentSpec::parse(text).map_err(usage),
            None => Err(CliError::Usage("--fragment is required".into())),
        }
    }

    /// Signature from --signature, otherwise inferred from the other inputs.
    fn signature(
        &self,
        concepts: &[&ConceptExpr],
        extra: Option<&Signature>,
    ) -> Result<Signature, CliError> {
        if let Some(path) = &self.cfg.signature {
            let text = fs::read_to_string(path).map_err(usage)?;
            return serde_json::from_str::<Signature>(&text).map_err(usage);
        }
        let mut sig = extra.cloned().unwrap_or_default();
        if let Some(o) = self.ontology()? {
            sig = sig.union(&o.signature);
        }
        for c in concepts {
            sig.concepts.extend(c.concept_names());
            sig.roles.extend(c.role_names());
        }
        Ok(sig)
    }

    fn concept(&self, field: &Option<String>, name: &str) -> Result<ConceptExpr, CliError> {
        let text = field
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("--{name} is required")))?;
        if let Some(path) = &self.cfg.signature {
            let sig_text = fs::read_to_string(path).map_err(usage)?;
            let sig: Signature = serde_json::from_str(&sig_text).map_err(usage)?;
            parse_concept(text, &sig).map_err(usage)
        } else {
            parse_concept_open(text).map_err(usage)
        }
    }

    fn emit(&self, structured: &impl Serialize) -> Result<(), CliError> {
        if let Some(path) = &self.cfg.out {
            let json = serde_json::to_string_pretty(structured).map_err(usage)?;
            fs::write(path, json).map_err(usage)?;
        }
        Ok(())
    }

    fn emit_text(&self, text: &str) -> Result<(), CliError> {
        if let Some(path) = &self.cfg.out {
            fs::write(path, text).map_err(usage)?;
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let resolved = match Resolved::new(&cli.opts) {
        Ok(r) => r,
        Err(e) => return report_error(e),
    };
    match run(&cli.command, &resolved) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report_error(e),
    }
}

fn report_error(e: CliError) -> ExitCode {
    match &e {
        CliError::Usage(msg) => eprintln!("error: {msg}"),
        CliError::Budget(msg) => eprintln!("budget exceeded: {msg}"),
        CliError::Verification => {}
    }
    ExitCode::from(e.code())
}

fn run(command: &Command, r: &Resolved) -> Result<(), CliError> {
    println!("# dlchar (seed: {})", r.seed());
    match command {
        Command::Check => cmd_check(r),
        Command::Subsume => cmd_subsume(r),
        Command::Frontier => cmd_frontier(r),
        Command::Characterise => cmd_characterise(r),
        Command::Verify => cmd_verify(r),
        Command::Canonical => cmd_canonical(r),
        Command::FitSearch => cmd_fit_search(r),
        Command::LearnDemo => cmd_learn_demo(r),
        Command::Enk => cmd_enk(r),
        Command::Lowerbound => cmd_lowerbound(r),
    }
}

fn cmd_check(r: &Resolved) -> Result<(), CliError> {
    let c = r.concept(&r.cfg.concept, "concept")?;
    if let Some(path) = &r.cfg.interp {
        let text = fs::read_to_string(path).map_err(usage)?;
        let pi = pointed_from_json(&text).map_err(usage)?;
        let sat = pi.satisfies(&c);
        println!("{} at {}: {}", render_concept(&c), pi.point, sat);
        let ext = dlchar::interp::eval_concept(&c, &pi.interp);
        println!("extension: {{{}}}", ext.join(", "));
        r.emit(&serde_json::json!({ "satisfied": sat, "extension": ext }))?;
        return Ok(());
    }
    if let Some((examples, _)) = r.examples()? {
        match fits(&c, &examples) {
            FitResult::Fits => {
                println!("fits: true");
                r.emit(&serde_json::json!({ "fits": true }))?;
            }
            FitResult::Violated { example, polarity } => {
                println!("fits: false (violated {:?} example at {})", polarity, example.point);
                r.emit(&serde_json::json!({
                    "fits": false,
                    "violating_point": example.point,
                    "polarity": polarity,
                }))?;
            }
        }
        return Ok(());
    }
    Err(CliError::Usage("check needs --interp or --examples".into()))
}

fn cmd_subsume(r: &Resolved) -> Result<(), CliError> {
    let left = r.concept(&r.cfg.left, "left")?;
    let right = r.concept(&r.cfg.right, "right")?;
    let o = r.ontology()?;
    let bounds = r.bounds();

    let elq = FragmentSpec::elq();
    let verdict = if o.is_none() && fragment_check(&left, &elq) && fragment_check(&right, &elq) {
        let holds = subsumes_empty(&left, &right).map_err(usage)?;
        println!("{holds}");
        serde_json::json!({ "subsumes": holds, "method": "decomposition" })
    } else {
        match find_countermodel(&left, &right, o.as_ref(), bounds.model_cap) {
            SubsumptionVerdict::FailsWithWitness(w) => {
                println!("false");
                println!("witness: {}", serde_json::to_string(&w).map_err(usage)?);
                serde_json::json!({ "subsumes": false, "witness": w })
            }
            _ => {
                println!("unknown (no countermodel up to size {})", bounds.model_cap);
                serde_json::json!({ "subsumes": "unknown", "model_cap": bounds.model_cap })
            }
        }
    };
    r.emit(&verdict)
}

fn cmd_frontier(r: &Resolved) -> Result<(), CliError> {
    let c = r.concept(&r.cfg.concept, "concept")?;
    let f = frontier(&c).map_err(usage)?;
    for m in &f.members {
        println!("{}", render_concept(m));
    }
    r.emit(&f)
}

fn cmd_characterise(r: &Resolved) -> Result<(), CliError> {
    let c = r.concept(&r.cfg.concept, "concept")?;
    let fragment = r.fragment()?;
    let o = r.ontology()?;
    let bounds = r.bounds();
    let sig = r.signature(&[&c], None)?;

    let (examples, gaps) = match &o {
        Some(o) => {
            let e = characterise_el_dllite(&c, &sig, o, &bounds).map_err(from_char_error)?;
            (e, Vec::new())
        }
        None => {
            let elq = FragmentSpec::elq();
            let aleq = FragmentSpec::aleq();
            if fragment.operators.is_subset(&elq.operators) {
                let built =
                    characterise_elq(&c, &sig, r.mode()?, &bounds).map_err(from_char_error)?;
                (built.examples, built.gaps)
            } else if fragment.operators.is_subset(&aleq.operators) {
                let built = characterise_aleq(&c, &sig, &bounds).map_err(from_char_error)?;
                (built.examples, built.gaps)
            } else {
                return Err(CliError::Usage(format!(
                    "no characterisation builder for fragment {fragment}"
                )));
            }
        }
    };
    println!(
        "characterisation: {} positives, {} negatives",
        examples.positives.len(),
        examples.negatives.len()
    );
    for gap in &gaps {
        println!("coverage gap: {}", render_concept(gap));
    }
    let json = example_set_to_json(&examples, &sig);
    if r.cfg.out.is_some() {
        r.emit_text(&json)?;
    } else {
        println!("{json}");
    }
    Ok(())
}

fn cmd_verify(r: &Resolved) -> Result<(), CliError> {
    let c = r.concept(&r.cfg.concept, "concept")?;
    let fragment = r.fragment()?;
    let o = r.ontology()?;
    let bounds = r.bounds();
    let (examples, file_sig) =
        r.examples()?.ok_or_else(|| CliError::Usage("verify needs --examples".into()))?;
    let sig = r.signature(&[&c], Some(&file_sig))?;

    let mut report = verify_characterisation(
        &c,
        &examples,
        &fragment,
        o.as_ref(),
        &sig,
        &bounds,
        &VerifyOptions::default(),
    )
    .map_err(from_char_error)?;
    if r.cfg.mode.is_some() {
        report.mode = Some(r.mode()?);
    }

    println!(
        "verify {}: {} candidates checked, {} violations",
        report.target,
        report.candidates_checked,
        report.violations.len()
    );
    for v in &report.violations {
        println!("violation: {v:?}");
    }
    r.emit(&report)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

fn cmd_canonical(r: &Resolved) -> Result<(), CliError> {
    let c = r.concept(&r.cfg.concept, "concept")?;
    let o = r
        .ontology()?
        .ok_or_else(|| CliError::Usage("canonical needs --ontology".into()))?;
    let pi = canonical_model(&c, &o).map_err(usage)?;
    println!("domain size: {}", pi.size());
    println!("point: {}", pi.point);
    println!("satisfies ontology: {}", satisfies_ontology(&pi.interp, &o));
    r.emit(&pi)
}

fn cmd_fit_search(r: &Resolved) -> Result<(), CliError> {
    let fragment = r.fragment()?;
    let o = r.ontology()?;
    let bounds = r.bounds();
    let (examples, file_sig) =
        r.examples()?.ok_or_else(|| CliError::Usage("fit-search needs --examples".into()))?;
    let sig = r.signature(&[], Some(&file_sig))?;

    let fitting =
        adversarial_fit(&examples, &fragment, &sig, &bounds, o.as_ref()).map_err(from_char_error)?;
    for c in &fitting {
        println!("{}", render_concept(c));
    }
    let rendered: Vec<String> = fitting.iter().map(render_concept).collect();
    r.emit(&rendered)
}

fn cmd_learn_demo(r: &Resolved) -> Result<(), CliError> {
    let hidden = r.concept(&r.cfg.concept, "concept")?;
    let fragment = r.fragment()?;
    let o = r.ontology()?;
    let bounds = r.bounds();
    let sig = r.signature(&[&hidden], None)?;

    let oracle = oracle_from_concept(&hidden, o.as_ref());
    let transcript = mq_learn(&fragment, &sig, &bounds, &oracle, o.as_ref())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    println!("hypothesis: {}", render_concept(&transcript.hypothesis));
    println!("queries: {}", oracle.query_count());
    for (pi, answer) in &transcript.queried {
        println!("  |I| = {} at {} -> {}", pi.size(), pi.point, answer);
    }
    r.emit(&serde_json::json!({
        "hypothesis": render_concept(&transcript.hypothesis),
        "queries": oracle.query_count(),
    }))
}

fn cmd_enk(r: &Resolved) -> Result<(), CliError> {
    let n = r.cfg.max_depth.unwrap_or(1);
    let k = r.cfg.max_nr.unwrap_or(1);
    let sig = r.signature(&[], None)?;
    if sig.roles.is_empty() {
        return Err(CliError::Usage("enk needs a signature with at least one role".into()));
    }
    let e = build_enk(n, k, &sig).map_err(from_char_error)?;
    println!("E+({n},{k}): {} positive examples", e.positives.len());
    let json = example_set_to_json(&e, &sig);
    if r.cfg.out.is_some() {
        r.emit_text(&json)?;
    } else {
        println!("{json}");
    }
    Ok(())
}

fn cmd_lowerbound(r: &Resolved) -> Result<(), CliError> {
    let n = r.cfg.max_nr.or(r.cfg.max_depth).unwrap_or(1);
    let (c, sig) = gen_lowerbound_instance(n);
    println!("concept: {}", render_concept(&c));
    println!(
        "signature: {} concept names over role R; any characterisation needs at least {} positives",
        sig.concepts.len(),
        1u64 << n
    );
    r.emit(&serde_json::json!({
        "concept": render_concept(&c),
        "signature": sig,
        "min_positive_examples": 1u64 << n,
    }))
}
