mod dsl;
mod render;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use nabt::actions::{check_compatible, circ_product, derivative, Action, Compatibility, MutualActions};
use nabt::corpus::{self, Corpus, NamedGroup, SLOW_GROUPS};
use nabt::group::{commutator_subgroup, PermGroup, Subgroup, DEFAULT_ELEMENT_BOUND};
use nabt::homology::{h2_bar_resolution, module_tensor_aug_ideal, ActedModule, DEFAULT_BAR_BOUND};
use nabt::tensor::{exterior_square, multiplier_from_exterior, nabla, tensor_product, tensor_square, TensorGroup};
use nabt::verify::{run_corpus, CorpusReport, Suite, VerifyConfig};
use nabt::{perm_rep, todd_coxeter, AbelianInvariants, EnumLimits, GroupError, Perm};

use dsl::{parse_action_spec, parse_group_spec, parse_matrices, ActionSpec, GroupSpec, ParseError};

const EXIT_SUITE_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LIMIT: u8 = 3;

/// Non-abelian tensor products, exterior squares and Schur multipliers of
/// small finite groups.
///
/// Groups are written `perm: (0 1)(2 3), (0 2)`, `fp: <a,b | a^2, b^3, (a*b)^2>`
/// or `corpus: Q8`.
#[derive(Parser, Debug)]
#[command(name = "nabt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: GlobalConfig,
}

#[derive(Args, Debug, Clone, Serialize)]
struct GlobalConfig {
    /// Coset definitions allowed per enumeration.
    #[arg(long, global = true, env = "NABT_MAX_COSETS", default_value_t = 1_000_000)]
    max_cosets: usize,

    /// Largest group whose elements are listed explicitly.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_BOUND)]
    element_bound: usize,

    /// Largest group handed to the bar-resolution computation.
    #[arg(long, global = true, default_value_t = DEFAULT_BAR_BOUND)]
    bar_bound: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct ActionArgs {
    /// Action of G on H: conjugation, trivial, or `explicit: <images>; …`
    /// listing the images of H's generators under each generator of G.
    #[arg(long, default_value = "conjugation")]
    action_gh: String,

    /// Action of H on G, in the same form.
    #[arg(long, default_value = "conjugation")]
    action_hg: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order and structural fingerprint of a group.
    Order { group: String },
    /// Invariants of G/[G,G].
    Abelianization { group: String },
    /// Derived or lower central series.
    #[command(group(ArgGroup::new("kind").required(true).args(["derived", "lower_central"])))]
    Series {
        group: String,
        #[arg(long)]
        derived: bool,
        #[arg(long)]
        lower_central: bool,
    },
    /// G ⊗ H for compatible mutual actions.
    Tensor {
        g: String,
        h: String,
        #[command(flatten)]
        actions: ActionArgs,
    },
    /// G ⊗ G with conjugation actions.
    TensorSquare { group: String },
    /// G ∧ G = (G ⊗ G)/∇(G).
    ExteriorSquare { group: String },
    /// Schur multiplier as Ker(G ∧ G → G), checked against the bar complex.
    Schur { group: String },
    /// Second integral homology from the bar complex.
    H2Bar { group: String },
    /// A ⊗ I(H) over the group ring, for a finitely generated abelian A with
    /// an H-action.
    AugTensor {
        /// Rank of the free part of A.
        #[arg(long, default_value_t = 0)]
        module_rank: usize,
        /// Orders of the cyclic torsion factors of A, comma separated.
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<u64>,
        /// One integer matrix per generator of H, separated by `|`: rows by
        /// `;`, entries by spaces. Column j is the image of generator j of A.
        /// Omitted means trivial action.
        #[arg(long, allow_hyphen_values = true)]
        action: Option<String>,
        /// The acting group H.
        #[arg(long)]
        over: String,
    },
    /// Checks both compatibility conditions, reporting a witness on failure.
    Compatible {
        g: String,
        h: String,
        #[command(flatten)]
        actions: ActionArgs,
    },
    /// G ∘ H: the semidirect product modulo the Peiffer subgroup.
    Circ {
        g: String,
        h: String,
        #[command(flatten)]
        actions: ActionArgs,
    },
    /// D_H(G) and D_G(H).
    Derivative {
        g: String,
        h: String,
        #[command(flatten)]
        actions: ActionArgs,
    },
    /// Runs one property suite on the bundled corpus, or on the given groups.
    Verify {
        /// Suite name, e.g. bjr-identities or schur-classes (see `corpus run --suite`)
        suite: String,
        /// Groups to run on instead of the bundled corpus
        groups: Vec<String>,
    },
    /// Runs the bundled corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// Runs every suite, or the selected ones.
    Run {
        /// Repeatable. One of enumeration, compatibility, abelian-consistency,
        /// module-tensor, tensor-audit, crossed-modules, circ-kernels,
        /// bjr-identities, normal-abelian-quotient, intersection-sequence,
        /// schur-epimorphism, schur-classes, derivative-lcs, multiplier,
        /// order-laws
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Adds the order-16 groups and raises the multiplier cut-off to 16.
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Parse { input: String, error: ParseError },
    Group(GroupError),
    Usage(String),
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Group(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Group(
                GroupError::LimitExceeded { .. } | GroupError::BoundExceeded { .. } | GroupError::IncompleteTable,
            ) => EXIT_LIMIT,
            _ => EXIT_INPUT,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Group(e) => match e {
                GroupError::LimitExceeded { .. } => "limit_exceeded",
                GroupError::BoundExceeded { .. } => "bound_exceeded",
                GroupError::IncompleteTable => "incomplete_table",
                GroupError::NotNormal { .. } => "not_normal",
                GroupError::NotCentral { .. } => "not_central",
                GroupError::Incompatible(_) => "incompatible",
                GroupError::InvalidAction(_) => "invalid_action",
                GroupError::NotAHomomorphism { .. } => "not_a_homomorphism",
                GroupError::InvalidPermutation(_) => "invalid_permutation",
                GroupError::InvalidInput(_) => "invalid_input",
            },
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({"kind": self.kind(), "message": self.to_string()});
        if let CliError::Parse { error, .. } = self {
            v["line"] = json!(error.line);
            v["column"] = json!(error.column);
        }
        v
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse { input, error } => write!(f, "cannot parse {input:?}: {error}"),
            CliError::Group(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command produces before it is wrapped into the report document.
struct Outcome {
    inputs: Map<String, Value>,
    result: Value,
    suites: Option<CorpusReport>,
    success: bool,
}

impl Outcome {
    fn new(inputs: Map<String, Value>, result: Value) -> Self {
        Outcome {
            inputs,
            result,
            suites: None,
            success: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = command_name(&cli.command);
    let config = cli.config.clone();
    let outcome = dispatch(&cli.command, &config);
    let mut doc = Map::new();
    doc.insert("command".into(), json!(name));
    doc.insert("config".into(), config_json(&cli.command, &config));
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    let code = match outcome {
        Ok(o) => {
            doc.insert("inputs".into(), Value::Object(o.inputs));
            doc.insert("result".into(), o.result);
            let mut timings = Map::new();
            if let Some(report) = &o.suites {
                doc.insert("suites".into(), serde_json::to_value(&report.suites).expect("serializable"));
                timings.insert("suites".into(), json!(report.timings()));
            }
            timings.insert("total_seconds".into(), json!(start.elapsed().as_secs_f64()));
            doc.insert("timings".into(), Value::Object(timings));
            if o.success {
                0
            } else {
                EXIT_SUITE_FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            doc.insert("error".into(), e.to_json());
            e.exit_code()
        }
    };
    let doc = Value::Object(doc);
    let rendered = match config.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        Format::Text => render::text(&doc),
    };
    // A closed pipe (`| head`) is not worth a panic.
    let _ = std::io::stdout().write_all(rendered.as_bytes());
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Order { .. } => "order",
        Command::Abelianization { .. } => "abelianization",
        Command::Series { .. } => "series",
        Command::Tensor { .. } => "tensor",
        Command::TensorSquare { .. } => "tensor-square",
        Command::ExteriorSquare { .. } => "exterior-square",
        Command::Schur { .. } => "schur",
        Command::H2Bar { .. } => "h2-bar",
        Command::AugTensor { .. } => "aug-tensor",
        Command::Compatible { .. } => "compatible",
        Command::Circ { .. } => "circ",
        Command::Derivative { .. } => "derivative",
        Command::Verify { .. } => "verify",
        Command::Corpus { .. } => "corpus run",
    }
}

fn verify_config(config: &GlobalConfig, slow: bool) -> VerifyConfig {
    let cut = if slow { 16 } else { VerifyConfig::default().multiplier_max_order };
    VerifyConfig {
        max_cosets: config.max_cosets,
        element_bound: config.element_bound,
        bar_bound: config.bar_bound,
        multiplier_max_order: cut,
        pair_max_order: cut,
    }
}

fn config_json(c: &Command, config: &GlobalConfig) -> Value {
    let mut v = serde_json::to_value(config).expect("serializable");
    let slow = match c {
        Command::Corpus {
            action: CorpusCommand::Run { slow, .. },
        } => Some(*slow),
        Command::Verify { .. } => Some(false),
        _ => None,
    };
    if let Some(slow) = slow {
        let vc = verify_config(config, slow);
        v["multiplier_max_order"] = json!(vc.multiplier_max_order);
        v["pair_max_order"] = json!(vc.pair_max_order);
        v["slow"] = json!(slow);
    }
    v
}

fn limits(config: &GlobalConfig) -> CliResult<EnumLimits> {
    Ok(EnumLimits::new(config.max_cosets)?)
}

struct Loaded {
    group: PermGroup,
    /// Coset definitions, for groups given by a presentation.
    cosets_defined: Option<usize>,
}

fn load_group(text: &str, config: &GlobalConfig) -> CliResult<Loaded> {
    let spec = parse_group_spec(text).map_err(|error| CliError::Parse {
        input: text.into(),
        error,
    })?;
    let (group, cosets_defined) = match spec {
        GroupSpec::Perm { degree, generators } => (PermGroup::new(degree, generators)?, None),
        GroupSpec::Fp(p) => {
            let table = todd_coxeter(&p, &[], limits(config)?)?;
            let (g, _) = perm_rep(&table, &p)?;
            (g, Some(table.cosets_defined()))
        }
        GroupSpec::Corpus(name) => (corpus::lookup(&name)?, None),
    };
    let group = group.with_element_bound(config.element_bound);
    group.order()?;
    Ok(Loaded { group, cosets_defined })
}

fn load_action(text: &str) -> CliResult<ActionSpec> {
    parse_action_spec(text).map_err(|error| CliError::Parse {
        input: text.into(),
        error,
    })
}

fn pad_group(g: &PermGroup, degree: usize) -> CliResult<PermGroup> {
    if g.degree() == degree {
        return Ok(g.clone());
    }
    let gens = g.generators().iter().map(|p| dsl::pad(p, degree)).collect();
    Ok(PermGroup::new(degree, gens)?.with_element_bound(g.element_bound()))
}

/// Conjugation `ᵍx = g x g⁻¹` of `target` by `actor` inside a common
/// symmetric group.
fn build_action(spec: &ActionSpec, actor: &PermGroup, target: &PermGroup) -> CliResult<Action> {
    match spec {
        ActionSpec::Conjugation => Ok(Action::conjugation_on(actor, target)?),
        ActionSpec::Trivial => Ok(Action::trivial(actor, target)?),
        ActionSpec::Explicit(autos) => {
            let autos: Vec<Vec<Perm>> = autos
                .iter()
                .map(|images| images.iter().map(|p| dsl::pad(p, target.degree().max(p.degree()))).collect())
                .collect();
            if let Some(p) = autos.iter().flatten().find(|p| p.degree() != target.degree()) {
                return Err(CliError::Usage(format!(
                    "explicit image {p} moves points outside the target's {} points",
                    target.degree()
                )));
            }
            Ok(Action::from_generator_automorphisms(actor, target, &autos)?)
        }
    }
}

/// Both groups and actions; groups are brought to a common degree when
/// either action is conjugation.
fn load_pair(g: &str, h: &str, a: &ActionArgs, config: &GlobalConfig) -> CliResult<(PermGroup, PermGroup, Action, Action)> {
    let mut gg = load_group(g, config)?.group;
    let mut hg = load_group(h, config)?.group;
    let spec_gh = load_action(&a.action_gh)?;
    let spec_hg = load_action(&a.action_hg)?;
    if spec_gh == ActionSpec::Conjugation || spec_hg == ActionSpec::Conjugation {
        let degree = gg.degree().max(hg.degree());
        gg = pad_group(&gg, degree)?;
        hg = pad_group(&hg, degree)?;
    }
    let gh = build_action(&spec_gh, &gg, &hg)?;
    let hg_action = build_action(&spec_hg, &hg, &gg)?;
    Ok((gg, hg, gh, hg_action))
}

fn pair_inputs(g: &str, h: &str, a: &ActionArgs) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("g".into(), json!(g));
    m.insert("h".into(), json!(h));
    m.insert("action_gh".into(), json!(a.action_gh));
    m.insert("action_hg".into(), json!(a.action_hg));
    m
}

fn one_input(key: &str, text: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert(key.into(), json!(text));
    m
}

fn generators_json(g: &PermGroup) -> Value {
    json!(g.generators().iter().map(Perm::to_string).collect::<Vec<_>>())
}

fn subgroup_json(s: &Subgroup) -> CliResult<Value> {
    let t = s.ambient().elements()?;
    let gens: Vec<String> = s.generators().iter().map(|&i| t.perm(i as usize).to_string()).collect();
    Ok(json!({"order": s.order(), "generators": gens}))
}

fn group_json(g: &PermGroup) -> CliResult<Value> {
    Ok(json!({
        "order": g.order()?,
        "degree": g.degree(),
        "generators": generators_json(g),
        "abelian_invariants": g.abelian_invariants()?,
        "fingerprint": g.fingerprint()?,
    }))
}

fn tensor_json(t: &TensorGroup) -> CliResult<Value> {
    let mut v = group_summary(t.carrier())?;
    v["cosets_defined"] = json!(t.cosets_defined());
    v["phi_image_order"] = json!(t.phi().image().order());
    v["phi_kernel_order"] = json!(t.phi().kernel().order());
    v["generated_by_generator_pairs"] = json!(t.generated_by_generator_pairs());
    Ok(v)
}

/// Order, invariants and fingerprint, without the carrier's generators
/// (which depend on the enumeration, not on the group).
fn group_summary(g: &PermGroup) -> CliResult<Value> {
    Ok(json!({
        "order": g.order()?,
        "abelian_invariants": g.abelian_invariants()?,
        "fingerprint": g.fingerprint()?,
    }))
}

/// `{"abelian_invariants": {torsion, rank}, "structure": "Z/2 x Z"}`.
fn invariants_fields(a: &AbelianInvariants) -> Value {
    json!({"abelian_invariants": a, "structure": a.to_string()})
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn dispatch(command: &Command, config: &GlobalConfig) -> CliResult<Outcome> {
    let lim = limits(config)?;
    match command {
        Command::Order { group } => {
            let loaded = load_group(group, config)?;
            let mut result = group_json(&loaded.group)?;
            if let Some(c) = loaded.cosets_defined {
                result["cosets_defined"] = json!(c);
            }
            Ok(Outcome::new(one_input("group", group), result))
        }
        Command::Abelianization { group } => {
            let g = load_group(group, config)?.group;
            let inv = g.abelian_invariants()?;
            Ok(Outcome::new(
                one_input("group", group),
                merge(json!({"order": g.order()?}), invariants_fields(&inv)),
            ))
        }
        Command::Series {
            group,
            derived,
            lower_central: _,
        } => {
            let g = load_group(group, config)?.group;
            let (kind, series) = if *derived {
                ("derived", g.derived_series()?)
            } else {
                ("lower_central", g.lower_central_series()?)
            };
            let terms = series.iter().map(subgroup_json).collect::<CliResult<Vec<_>>>()?;
            let reaches_trivial = series.last().is_some_and(Subgroup::is_trivial);
            let mut inputs = one_input("group", group);
            inputs.insert("series".into(), json!(kind));
            Ok(Outcome::new(
                inputs,
                json!({"series": kind, "terms": terms, "reaches_trivial": reaches_trivial}),
            ))
        }
        Command::Tensor { g, h, actions } => {
            let (gg, hg, gh, hga) = load_pair(g, h, actions, config)?;
            let ma = MutualActions::new(gh, hga)?;
            let t = tensor_product(&ma, lim)?;
            let mut result = tensor_json(&t)?;
            result["g_order"] = json!(gg.order()?);
            result["h_order"] = json!(hg.order()?);
            Ok(Outcome::new(pair_inputs(g, h, actions), result))
        }
        Command::TensorSquare { group } => {
            let g = load_group(group, config)?.group;
            let t = tensor_square(&g, lim)?;
            let mut result = tensor_json(&t)?;
            result["nabla_order"] = json!(nabla(&t)?.order());
            Ok(Outcome::new(one_input("group", group), result))
        }
        Command::ExteriorSquare { group } => {
            let g = load_group(group, config)?.group;
            let e = exterior_square(&g, lim)?;
            let mut result = group_summary(&e.group)?;
            result["square_order"] = json!(e.square.order());
            result["nabla_order"] = json!(e.nabla.order());
            result["kappa_image_order"] = json!(e.kappa.image().order());
            Ok(Outcome::new(one_input("group", group), result))
        }
        Command::Schur { group } => {
            let g = load_group(group, config)?.group;
            let whole = g.whole()?;
            let derived = commutator_subgroup(&whole, &whole)?;
            let m = multiplier_from_exterior(exterior_square(&g, lim)?)?;
            let mut result = merge(invariants_fields(&m.invariants), json!({
                "order": m.kernel.order(),
                "exterior_order": m.exterior.group.order()?,
                "derived_order": derived.order(),
            }));
            let mut success = true;
            match h2_bar_resolution(&g, config.bar_bound) {
                Ok(bar) => {
                    success = bar == m.invariants;
                    result["bar_resolution"] = invariants_fields(&bar);
                    result["agrees_with_bar_resolution"] = json!(success);
                }
                Err(GroupError::BoundExceeded { bound }) => {
                    result["bar_resolution"] = json!(format!("skipped: order above the bar bound {bound}"));
                }
                Err(e) => return Err(e.into()),
            }
            let mut o = Outcome::new(one_input("group", group), result);
            o.success = success;
            Ok(o)
        }
        Command::H2Bar { group } => {
            let g = load_group(group, config)?.group;
            let inv = h2_bar_resolution(&g, config.bar_bound)?;
            Ok(Outcome::new(
                one_input("group", group),
                invariants_fields(&inv),
            ))
        }
        Command::AugTensor {
            module_rank,
            torsion,
            action,
            over,
        } => {
            let h = load_group(over, config)?.group;
            let invariants = AbelianInvariants {
                torsion: torsion.clone(),
                free_rank: *module_rank,
            };
            let module = match action {
                None => ActedModule::trivial(invariants.clone(), &h)?,
                Some(text) => {
                    let matrices = parse_matrices(text).map_err(|error| CliError::Parse {
                        input: text.clone(),
                        error,
                    })?;
                    ActedModule::new(invariants.clone(), &h, &matrices)?
                }
            };
            let result = module_tensor_aug_ideal(&module)?;
            let mut inputs = one_input("over", over);
            inputs.insert("module".into(), invariants_fields(&invariants));
            inputs.insert("action".into(), json!(action.as_deref().unwrap_or("trivial")));
            Ok(Outcome::new(inputs, invariants_fields(&result)))
        }
        Command::Compatible { g, h, actions } => {
            let (_, _, gh, hga) = load_pair(g, h, actions, config)?;
            let ma = MutualActions::new_unchecked(gh, hga)?;
            let result = match check_compatible(&ma) {
                Compatibility::Certified => json!({"compatible": true}),
                Compatibility::Violation(v) => {
                    json!({"compatible": false, "witness": v, "witness_replays": v.replay(&ma)})
                }
            };
            Ok(Outcome::new(pair_inputs(g, h, actions), result))
        }
        Command::Circ { g, h, actions } => {
            let (_, _, gh, hga) = load_pair(g, h, actions, config)?;
            let ma = MutualActions::new(gh, hga)?;
            let c = circ_product(&ma)?;
            let mut result = group_summary(&c.group)?;
            result["semidirect_order"] = json!(c.semidirect.group.order()?);
            result["peiffer_order"] = json!(c.peiffer.subgroup.order());
            result["peiffer_closure_needed"] = json!(c.peiffer.closure_needed);
            result["ker_mu_order"] = json!(c.mu.kernel().order());
            result["ker_nu_order"] = json!(c.nu.kernel().order());
            result["mu_image_order"] = json!(c.mu.image().order());
            result["nu_image_order"] = json!(c.nu.image().order());
            Ok(Outcome::new(pair_inputs(g, h, actions), result))
        }
        Command::Derivative { g, h, actions } => {
            let (_, _, gh, hga) = load_pair(g, h, actions, config)?;
            let result = json!({
                "d_h_of_g": subgroup_json(&derivative(&hga)?)?,
                "d_g_of_h": subgroup_json(&derivative(&gh)?)?,
            });
            Ok(Outcome::new(pair_inputs(g, h, actions), result))
        }
        Command::Verify { suite, groups } => {
            let suite: Suite = suite.parse()?;
            let corpus = if groups.is_empty() {
                Corpus::standard()?
            } else {
                let mut named = Vec::new();
                for text in groups {
                    named.push(NamedGroup {
                        name: text.clone(),
                        group: load_group(text, config)?.group,
                    });
                }
                let mut abelian = Vec::new();
                for n in &named {
                    if n.group.is_abelian()? {
                        abelian.push(n.clone());
                    }
                }
                Corpus {
                    groups: named,
                    abelian_groups: abelian,
                    ..Corpus::empty()
                }
            };
            let mut inputs = one_input("suite", suite.name());
            inputs.insert("groups".into(), json!(groups));
            Ok(suite_outcome(inputs, run_corpus(&corpus, &[suite], &verify_config(config, false))))
        }
        Command::Corpus {
            action: CorpusCommand::Run { suites, slow },
        } => {
            let selected = suites.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>, _>>()?;
            let corpus = if *slow {
                let names: Vec<&str> = corpus::DEFAULT_GROUPS.iter().chain(&SLOW_GROUPS).copied().collect();
                Corpus::with_groups(&names)?
            } else {
                Corpus::standard()?
            };
            let names: Vec<&str> = selected.iter().map(|s| s.name()).collect();
            let inputs = one_input("corpus", if *slow { "standard+slow" } else { "standard" });
            let mut inputs = inputs;
            inputs.insert("suites".into(), json!(names));
            Ok(suite_outcome(inputs, run_corpus(&corpus, &selected, &verify_config(config, *slow))))
        }
    }
}

fn suite_outcome(inputs: Map<String, Value>, report: CorpusReport) -> Outcome {
    let per_suite: BTreeMap<String, Value> = report
        .suites
        .iter()
        .map(|s| {
            (
                s.suite.to_string(),
                json!({"passed": s.passed, "failed": s.failed, "skipped": s.skipped}),
            )
        })
        .collect();
    let result = json!({
        "success": report.success,
        "passed": report.suites.iter().map(|s| s.passed).sum::<usize>(),
        "failed": report.suites.iter().map(|s| s.failed).sum::<usize>(),
        "skipped": report.suites.iter().map(|s| s.skipped).sum::<usize>(),
        "per_suite": per_suite,
    });
    Outcome {
        inputs,
        result,
        success: report.success,
        suites: Some(report),
    }
}
