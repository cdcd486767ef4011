use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use groupwit::descriptor::{GroupDescriptor, SystemDescriptor};
use groupwit::group::construct::by_name;
use groupwit::group::iso::{all_homomorphisms, find_isomorphism};
use groupwit::group::structure::{center, derived_subgroup, is_nilpotent};
use groupwit::hybrid::HybridWreath;
use groupwit::limit::{limit, limit_of_morphism, subsystem_limit};
use groupwit::random::{
    random_embedding_instance, random_normal_hybrid, random_subgroup, random_surjective_system,
    random_system_morphism,
};
use groupwit::witness::certificate::{from_json, to_json, CheckStatus, GroupJson};
use groupwit::witness::goodwit::hand_example;
use groupwit::witness::series::sequences_for;
use groupwit::witness::stretch::{build_stretch_witness, verify_stretch, StretchJson, STRETCH_SAMPLES};
use groupwit::witness::{
    build_good_witness, central_series, comp_membership, square_free_series, verify_witness, witness_nilpotent,
    witness_square_free, VerificationReport,
};
use groupwit::wreath::{embedding_conjugator, standard_embedding, wreath_product, GroupAction};
use groupwit::{Bounds, Error, Group, Subgroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "groupwit", version, about = "Witness systems for compatible finite groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest group whose elements are enumerated.
    #[arg(long, global = true, default_value_t = Bounds::default().enumeration)]
    bound_enum: usize,
    /// Largest group handed to the isomorphism search.
    #[arg(long, global = true, default_value_t = Bounds::default().isomorphism)]
    bound_iso: usize,
    /// Largest group whose automorphisms are enumerated.
    #[arg(long, global = true, default_value_t = Bounds::default().automorphism)]
    bound_aut: usize,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Enumerated)]
    mode: Mode,
    /// Write the main artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the randomized suite and the sampled stretch checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Enumerated,
    Stretch,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    AutoCentral,
    AutoSquareFree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ActionKind {
    Natural,
    Regular,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a group and print its invariants.
    Group { descriptor: String },
    /// Inverse limit of a system given as a JSON file or inline JSON.
    Limit { system: String },
    /// Wreath product of a base group by a permutation group.
    Wreath {
        #[arg(long)]
        base: String,
        #[arg(long)]
        top: String,
        #[arg(long, value_enum, default_value_t = ActionKind::Natural)]
        action: ActionKind,
    },
    /// Hybrid wreath product for the first θ : G → H whose image is the
    /// given group.
    Hybrid {
        #[arg(long = "G")]
        g: String,
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        theta_image: String,
    },
    /// Build or verify a witness certificate.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Test two series against the Comp condition.
    #[command(subcommand)]
    Comp(CompCommand),
    /// Print a normal series and its factor orders.
    #[command(subcommand)]
    Series(SeriesCommand),
    /// Rebuild the named worked examples and print a pass/fail manifest.
    Examples,
    /// Randomized embedding, limit and hybrid laws from `--seed`.
    Suite {
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

#[derive(Args)]
struct Pair {
    #[arg(long = "L1")]
    l1: String,
    #[arg(long = "L2")]
    l2: String,
    #[arg(long, value_enum, default_value_t = SeriesKind::AutoCentral)]
    series: SeriesKind,
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Build a witness for L1 and L2 over the chosen series.
    Build(Pair),
    /// Re-check a certificate file, against `--L1/--L2` when given.
    Verify {
        cert: PathBuf,
        #[arg(long = "L1")]
        l1: Option<String>,
        #[arg(long = "L2")]
        l2: Option<String>,
    },
}

#[derive(Subcommand)]
enum CompCommand {
    /// Report whether the padded sequences of L1 and L2 are in Comp.
    Check(Pair),
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// Upper central series refined to prime steps (nilpotent groups).
    Central {
        group: String,
    },
    /// Sylow series, largest prime at the bottom (square-free order).
    SquareFree {
        group: String,
    },
}

/// What a command produced: a JSON document and whether it is a failure
/// (refuted claim or failing checks).
struct Outcome {
    doc: Value,
    refuted: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, refuted: false }
    }
}

type Result<T> = std::result::Result<T, Error>;

fn bounds(g: &Global) -> Bounds {
    Bounds { enumeration: g.bound_enum, isomorphism: g.bound_iso, automorphism: g.bound_aut }
}

fn group(text: &str, b: &Bounds) -> Result<Group> {
    GroupDescriptor::parse(text)?.build(b.enumeration)
}

fn read_json_arg(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Error::Malformed(format!("cannot read {arg}: {e}")))
}

fn summary(g: &Group) -> Value {
    json!({
        "order": g.order(),
        "degree": g.degree(),
        "abelian": g.is_abelian(),
        "nilpotent": is_nilpotent(g),
        "center_order": center(g).order(),
        "derived_order": derived_subgroup(g).order(),
        "element_orders": g.order_histogram(),
        "generators": GroupJson::of(g).generators,
    })
}

fn report_json(r: &VerificationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| match &c.status {
            CheckStatus::Pass => json!({"check": c.name, "status": "pass"}),
            CheckStatus::Fail(why) => json!({"check": c.name, "status": "fail", "detail": why}),
            CheckStatus::Skipped(why) => json!({"check": c.name, "status": "skipped", "detail": why}),
        })
        .collect();
    json!({"passed": r.passed(), "complete": r.complete(), "checks": checks})
}

fn chains(pair: &Pair, l: [&Group; 2]) -> Result<[Vec<Subgroup>; 2]> {
    let series = |g: &Group| match pair.series {
        SeriesKind::AutoCentral => central_series(g),
        SeriesKind::AutoSquareFree => square_free_series(g),
    };
    Ok([series(l[0])?, series(l[1])?])
}

fn cmd_hybrid(g: &str, h: &str, image: &str, b: &Bounds) -> Result<Outcome> {
    let (g, h, im) = (group(g, b)?, group(h, b)?, group(image, b)?);
    let mut theta = None;
    for f in all_homomorphisms(&g, &h, b.enumeration)? {
        let img = f.image();
        if img.order() == im.order() && find_isomorphism(&img.group(), &im, b.isomorphism)?.is_some() {
            theta = Some(f);
            break;
        }
    }
    let theta = theta.ok_or_else(|| Error::Refuted("no homomorphism has that image".into()))?;
    let hw = HybridWreath::new(&theta, b.enumeration)?;
    let k = hw.kernel();
    let kg = k.group();
    let mut doc = json!({
        "order": hw.order(),
        "points": hw.points(),
        "theta_kernel": theta.kernel().order(),
        "kernel": {"order": k.order(), "abelian": kg.is_abelian(), "element_orders": kg.order_histogram()},
        "base_order": hw.base.order(),
        "image_normal": hw.normal,
    });
    if hw.normal {
        let evs = hw.evaluation_maps()?;
        doc["base_projections_surjective"] = json!(evs.iter().all(|p| p.is_surjective()));
        doc["base_is_limit"] = json!(hw.base_as_limit(b.enumeration)?.identification.is_bijective());
    }
    Ok(Outcome::ok(doc))
}

fn cmd_wreath(base: &str, top: &str, action: ActionKind, b: &Bounds) -> Result<Outcome> {
    let (g, h) = (group(base, b)?, group(top, b)?);
    let act = match action {
        ActionKind::Natural => GroupAction::natural(&h),
        ActionKind::Regular => GroupAction::regular(&h),
    };
    let w = wreath_product(&g, &act, b.enumeration)?;
    let mut doc = json!({"order": w.group.order(), "points": act.len(), "degree": w.group.degree()});
    if act.is_transitive() {
        let tr = groupwit::wreath::PermutationTransversal::minimal(&act, 0)?;
        let e = standard_embedding(&act, &tr)?;
        e.verify()?;
        doc["standard_embedding_of_top"] = json!({"stabilizer_order": e.stabilizer.order(), "verified": true});
    }
    Ok(Outcome::ok(doc))
}

fn cmd_limit(system: &str, b: &Bounds) -> Result<Outcome> {
    let d: SystemDescriptor = serde_json::from_str(&read_json_arg(system)?)?;
    let x = d.build(b.enumeration)?;
    let lim = limit(&x, b.enumeration)?;
    let nodes: Vec<Value> = (0..x.poset().len())
        .map(|i| {
            json!({
                "id": x.poset().label(i),
                "order": x.group(i).order(),
                "projection_surjective": lim.projections[i].is_surjective(),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({
        "order": lim.order(),
        "in_forest": x.poset().is_in_forest(),
        "surjective_system": x.is_surjective(),
        "nodes": nodes,
    })))
}

fn write_artifact(out: &Option<PathBuf>, text: &str) -> Result<Option<String>> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Error::Malformed(format!("cannot write {}: {e}", p.display())))?;
            Ok(Some(p.display().to_string()))
        }
        None => Ok(None),
    }
}

fn cmd_witness_build(pair: &Pair, glob: &Global, b: &Bounds) -> Result<Outcome> {
    let l = [group(&pair.l1, b)?, group(&pair.l2, b)?];
    if l[0].order() != l[1].order() {
        return Err(Error::Refuted(format!("orders {} and {} differ", l[0].order(), l[1].order())));
    }
    let c = chains(pair, [&l[0], &l[1]])?;
    let s = sequences_for([&l[0], &l[1]], [&c[0], &c[1]], b.enumeration)?;
    let comp = comp_membership(&[&s[0], &s[1]], b)?
        .ok_or_else(|| Error::Refuted("the series fail the Comp condition".into()))?;
    if glob.mode == Mode::Stretch {
        let w = build_stretch_witness([&s[0], &s[1]], &comp, b)?;
        let r = verify_stretch(&w, [&l[0], &l[1]], STRETCH_SAMPLES, glob.seed);
        let refuted = !r.passed();
        let text = serde_json::to_string_pretty(&StretchJson::of(&w, r.clone()))?;
        let file = write_artifact(&glob.out, &text)?;
        let mut doc = json!({"mode": "stretch", "order": w.order().to_string(), "report": report_json(&r)});
        if let Some(f) = file {
            doc["certificate"] = json!(f);
        }
        return Ok(Outcome { doc, refuted });
    }
    let cert = build_good_witness([&s[0], &s[1]], &comp, b)?;
    let r = verify_witness(&cert, [&l[0], &l[1]], b);
    let text = to_json(&cert)?;
    let mut doc = json!({
        "mode": "enumerated",
        "order": cert.order(),
        "kernel_order": cert.kernel_order(),
        "series_length": s[0].len(),
        "report": report_json(&r),
    });
    match write_artifact(&glob.out, &text)? {
        Some(f) => doc["certificate"] = json!(f),
        None => doc["certificate"] = serde_json::from_str(&text)?,
    }
    Ok(Outcome { doc, refuted: !r.passed() })
}

fn cmd_witness_verify(path: &PathBuf, l1: &Option<String>, l2: &Option<String>, glob: &Global) -> Result<Outcome> {
    let b = bounds(glob);
    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read certificate: {e}")))?;
    let raw: Value = serde_json::from_str(&text)?;
    if raw.get("generator_images").is_some() {
        return verify_stretch_file(&text, l1, l2, glob);
    }
    let cert = from_json(&text, b.enumeration)?;
    let l = match (l1, l2) {
        (Some(a), Some(c)) => [group(a, &b)?, group(c, &b)?],
        (None, None) => [cert.p[0].target().clone(), cert.p[1].target().clone()],
        _ => return Err(Error::Malformed("give both --L1 and --L2 or neither".into())),
    };
    let r = verify_witness(&cert, [&l[0], &l[1]], &b);
    Ok(Outcome { doc: json!({"order": cert.order(), "report": report_json(&r)}), refuted: !r.passed() })
}

/// Stretch files carry generators only, so the witness is rebuilt from
/// the stored targets and must reproduce the same generators.
fn verify_stretch_file(text: &str, l1: &Option<String>, l2: &Option<String>, glob: &Global) -> Result<Outcome> {
    let b = bounds(glob);
    let stored: StretchJson = serde_json::from_str(text)?;
    let l = match (l1, l2) {
        (Some(a), Some(c)) => [group(a, &b)?, group(c, &b)?],
        _ => [stored.targets[0].build("L1", b.enumeration)?, stored.targets[1].build("L2", b.enumeration)?],
    };
    let c = [square_free_series(&l[0])?, square_free_series(&l[1])?];
    let s = sequences_for([&l[0], &l[1]], [&c[0], &c[1]], b.enumeration)?;
    let comp = comp_membership(&[&s[0], &s[1]], &b)?.ok_or_else(|| Error::Refuted("Comp fails".into()))?;
    let w = build_stretch_witness([&s[0], &s[1]], &comp, &b)?;
    let rebuilt = StretchJson::of(&w, VerificationReport::default());
    let same = rebuilt.witness == stored.witness && rebuilt.generator_images == stored.generator_images;
    let r = verify_stretch(&w, [&l[0], &l[1]], STRETCH_SAMPLES, glob.seed);
    let doc = json!({"order": w.order().to_string(), "matches_file": same, "report": report_json(&r)});
    Ok(Outcome { doc, refuted: !(same && r.passed()) })
}

fn cmd_comp(pair: &Pair, b: &Bounds) -> Result<Outcome> {
    let l = [group(&pair.l1, b)?, group(&pair.l2, b)?];
    let c = chains(pair, [&l[0], &l[1]])?;
    let s = sequences_for([&l[0], &l[1]], [&c[0], &c[1]], b.enumeration)?;
    let len = s[0].len();
    let member = comp_membership(&[&s[0], &s[1]], b)?.is_some();
    let verdict = if member { format!("member of Comp_{len}") } else { format!("not a member of Comp_{len}") };
    Ok(Outcome { doc: json!({"length": len, "member": member, "verdict": verdict}), refuted: !member })
}

fn cmd_series(g: &str, square_free: bool, b: &Bounds) -> Result<Outcome> {
    let g = group(g, b)?;
    let chain = if square_free { square_free_series(&g)? } else { central_series(&g)? };
    let orders: Vec<usize> = chain.iter().map(Subgroup::order).collect();
    let steps: Vec<usize> = orders.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(Outcome::ok(json!({"orders": orders, "factors": steps})))
}

fn manifest_entry(name: &str, run: impl FnOnce() -> Result<(bool, Value)>) -> (bool, Value) {
    match run() {
        Ok((ok, detail)) => (ok, json!({"example": name, "pass": ok, "detail": detail})),
        Err(e) => (false, json!({"example": name, "pass": false, "error": e.to_string()})),
    }
}

fn cmd_examples(b: &Bounds) -> Result<Outcome> {
    let mut entries = Vec::new();
    entries.push(manifest_entry("hybrid F21 by S3", || {
        let o = cmd_hybrid("F21", "S3", "Z3", b)?.doc;
        let ok = o["order"] == 294 && o["kernel"]["order"] == 49 && o["base_order"] == 147;
        Ok((ok, o))
    }));
    entries.push(manifest_entry("hand-built good witness (p = 2, n = 3)", || {
        let ex = hand_example(2, 3, b.enumeration)?;
        let r1 = verify_witness(&ex.certificate, [&ex.targets[0], &ex.targets[1]], b);
        let r2 = verify_witness(&ex.composed, [&ex.composed_targets[0], &ex.composed_targets[1]], b);
        let ok = ex.certificate.order() == 64 && r1.complete() && r2.complete();
        Ok((ok, json!({"order": ex.certificate.order(), "composed_order": ex.composed.order()})))
    }));
    entries.push(manifest_entry("Z6 and S3", || {
        let (a, c) = (by_name("Z6")?, by_name("S3")?);
        let cert = witness_square_free(&a, &c, b)?;
        let r = verify_witness(&cert, [&a, &c], b);
        Ok((cert.order() == 18 && r.complete(), json!({"order": cert.order()})))
    }));
    let names = ["Z8", "Z2xZ4", "Z2^3", "D8", "Q8"];
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            entries.push(manifest_entry(&format!("{} and {}", names[i], names[j]), || {
                let (a, c) = (by_name(names[i])?, by_name(names[j])?);
                let cert = witness_nilpotent(&a, &c, b)?;
                let r = verify_witness(&cert, [&a, &c], b);
                Ok((r.complete(), json!({"order": cert.order(), "kernel_order": cert.kernel_order()})))
            }));
        }
    }
    let refuted = entries.iter().any(|(ok, _)| !ok);
    let list: Vec<Value> = entries.into_iter().map(|(_, v)| v).collect();
    Ok(Outcome { doc: json!({"all_pass": !refuted, "examples": list}), refuted })
}

fn cmd_suite(cases: usize, seed: u64, b: &Bounds) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for n in 0..cases {
        let inst = random_embedding_instance(&mut rng, 60)?;
        let ok = (|| -> Result<()> {
            let iota = standard_embedding(&inst.action, &inst.transversals[0])?;
            let lambda = standard_embedding(&inst.action, &inst.transversals[1])?;
            iota.verify()?;
            embedding_conjugator(&iota, &lambda).map(|_| ())
        })();
        if let Err(e) = ok {
            failures.push(format!("embedding {n}: {e}"));
        }
        let x = random_surjective_system(&mut rng, 5, 24, b.enumeration)?;
        let lx = limit(&x, b.enumeration)?;
        let (y, phi) = random_system_morphism(&mut rng, &x, b.enumeration)?;
        let ly = limit(&y, b.enumeration)?;
        let a = random_subgroup(&mut rng, &ly.group);
        let z: Vec<Subgroup> = ly.projections.iter().map(|p| p.image_of(&a)).collect();
        let left = subsystem_limit(&x, &lx, &phi.preimage_system(&z)?)?;
        let right = limit_of_morphism(&phi, &lx, &ly)?.preimage(&subsystem_limit(&y, &ly, &z)?);
        if left != right || !lx.projections.iter().all(|p| p.is_surjective()) {
            failures.push(format!("system {n}"));
        }
        let (theta, reps) = random_normal_hybrid(&mut rng, 24, 8, 3)?;
        let hw = HybridWreath::with_transversal(&theta, reps, b.enumeration)?;
        if !hw.base_as_limit(b.enumeration)?.identification.is_bijective() {
            failures.push(format!("hybrid {n}"));
        }
    }
    let refuted = !failures.is_empty();
    Ok(Outcome { doc: json!({"seed": seed, "cases": cases, "failures": failures}), refuted })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let b = bounds(&cli.global);
    if cli.global.mode == Mode::Stretch && !matches!(cli.command, Command::Witness(WitnessCommand::Build(_))) {
        return Err(Error::Malformed("--mode stretch applies to witness build only".into()));
    }
    match &cli.command {
        Command::Group { descriptor } => Ok(Outcome::ok(summary(&group(descriptor, &b)?))),
        Command::Limit { system } => cmd_limit(system, &b),
        Command::Wreath { base, top, action } => cmd_wreath(base, top, *action, &b),
        Command::Hybrid { g, h, theta_image } => cmd_hybrid(g, h, theta_image, &b),
        Command::Witness(WitnessCommand::Build(pair)) => cmd_witness_build(pair, &cli.global, &b),
        Command::Witness(WitnessCommand::Verify { cert, l1, l2 }) => cmd_witness_verify(cert, l1, l2, &cli.global),
        Command::Comp(CompCommand::Check(pair)) => cmd_comp(pair, &b),
        Command::Series(SeriesCommand::Central { group }) => cmd_series(group, false, &b),
        Command::Series(SeriesCommand::SquareFree { group }) => cmd_series(group, true, &b),
        Command::Examples => cmd_examples(&b),
        Command::Suite { cases } => cmd_suite(*cases, cli.global.seed, &b),
    }
}

/// 1 refuted, 2 undecided (a bound was hit), 3 malformed input, 4 an
/// internal construction check failed.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Refuted(_) => 1,
        e if e.is_undecided() => 2,
        Error::Construction { .. } => 4,
        _ => 3,
    }
}

/// Pretty JSON on stdout; a closed pipe is not an error.
fn emit(doc: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(o) => {
            emit(&o.doc);
            ExitCode::from(if o.refuted { 1 } else { 0 })
        }
        Err(e) => {
            let status = match exit_code(&e) {
                1 => "refuted",
                2 => "undecided",
                3 => "malformed",
                _ => "internal",
            };
            emit(&json!({"status": status, "error": e.to_string()}));
            eprintln!("groupwit: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
