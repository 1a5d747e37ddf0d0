//! `ums`: command-line front end for the urysohn engine.
//!
//! Exit codes: 0 success, 1 validation or property failure, 2 infeasible input or
//! unmet precondition, 3 parse error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use urysohn::format::{parse_map, parse_modulus, parse_nets, parse_ums, write_map, write_ums};
use urysohn::group::random_automap;
use urysohn::mc::{bicontinuity_check, extend_totally_bounded};
use urysohn::sample::{compatible_instance, compliant_instance, plane_space, InstanceShape};
use urysohn::trace::write_bundle;
use urysohn::{
    amalgamate, compatible, dist_hat, dist_l, dist_s, export_trace, extend_dense, extend_one_point,
    extend_one_point_mc, glue_identity_check, is_compliant, necessity_counterexample,
    parse_rational, parse_trace, separation_witness, verify_trace, AmalgamPolicy, AutoMap, Ball,
    Choice, Error, ExtensionTrace, FiniteMetricSpace, KnParams, McSemigroup, Modulus, Rational,
    Side, TraceBundle,
};

#[derive(Parser)]
#[command(
    name = "ums",
    version,
    about = "Exact constructions in finite Urysohn-type metric spaces"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Midpoint,
    Minimal,
    Maximal,
}

impl From<Policy> for Choice {
    fn from(p: Policy) -> Choice {
        match p {
            Policy::Midpoint => Choice::Midpoint,
            Policy::Minimal => Choice::Minimal,
            Policy::Maximal => Choice::Maximal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    D,
    R,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Campaign {
    All,
    Metric,
    Bilip,
    Mc,
    Group,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

#[derive(Subcommand)]
enum Command {
    /// Check the metric axioms of a UMS file.
    Validate { space: PathBuf },
    /// Glue two spaces along their common labels.
    Amalgamate {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "midpoint")]
        policy: Policy,
    },
    /// Extend a K-bilipschitz, N-bigood map inside a ball and print the trace.
    ExtendBilip {
        space: PathBuf,
        map: PathBuf,
        #[arg(long)]
        center: String,
        #[arg(long, value_parser = rational)]
        radius: Rational,
        /// Points to add; repeat the flag for several.
        #[arg(long = "point", required = true)]
        points: Vec<String>,
        #[arg(long, value_enum, default_value = "d")]
        side: SideArg,
        #[arg(long = "K", value_parser = rational, default_value = "2")]
        k: Rational,
        #[arg(long = "N", value_parser = rational, default_value = "4")]
        n: Rational,
        #[arg(long, value_enum, default_value = "midpoint")]
        policy: Policy,
        /// Also check that the result glues with the identity outside the ball.
        #[arg(long)]
        glue: bool,
    },
    /// Add a point to the domain of a (β, α)-bicontinuous map.
    ExtendMc {
        space: PathBuf,
        map: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
        #[arg(long)]
        point: String,
        /// Nested nets of the domain; runs the net-by-net construction.
        #[arg(long)]
        nets: Option<PathBuf>,
    },
    /// Certify that an incompatible pair of moduli admits no extension.
    Counterexample {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
        #[arg(long, value_parser = rational)]
        s: Option<Rational>,
        #[arg(long, value_parser = rational)]
        t: Option<Rational>,
        /// Side of the square searched for a violating (s, t).
        #[arg(long, value_parser = rational, default_value = "16")]
        bound: Rational,
    },
    /// Build a map separating γ from a countable family of moduli.
    Witness {
        #[arg(long)]
        gamma: PathBuf,
        /// `lipschitz:<n>` or `holder:<roots>:<depth>`.
        #[arg(long, default_value = "lipschitz:4")]
        family: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Distances between two automorphisms of a finite space.
    GroupDist {
        space: PathBuf,
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        basepoint: String,
    },
    /// Re-check every step of an exported trace.
    VerifyTrace { trace: PathBuf },
    /// Seeded property campaigns.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: u64,
        #[arg(long, value_enum, default_value = "all")]
        campaign: Campaign,
    },
}

/// A finished run: exit code plus report text.
struct Outcome {
    code: u8,
    report: String,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome { code: 0, report }
    }

    fn fail(report: String) -> Self {
        Outcome { code: 1, report }
    }
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(..) => 3,
            Failure::Engine(e) => match e {
                Error::Parse { .. } | Error::Structural(_) => 3,
                Error::Precondition(_) | Error::Infeasible { .. } | Error::Degenerate(_) => 2,
                Error::Invariant(_) => 1,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Engine(e) => e.to_string(),
        }
    }
}

type Run = Result<Outcome, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_space(path: &Path) -> Result<FiniteMetricSpace, Failure> {
    Ok(parse_ums(&read(path)?)?)
}

fn read_modulus(path: &Path) -> Result<Modulus, Failure> {
    Ok(parse_modulus(&read(path)?)?)
}

fn label_index(space: &FiniteMetricSpace, label: &str) -> Result<usize, Failure> {
    space
        .index_of(label)
        .ok_or_else(|| Error::Structural(format!("unknown label `{label}`")).into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command);
    let (code, text) = match result {
        Ok(o) => (o.code, o.report),
        Err(f) => (f.code(), format!("error: {}\n", f.message())),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None if code == 0 || code == 1 => print!("{text}"),
        None => eprint!("{text}"),
    }
    ExitCode::from(code)
}

fn run(command: Command) -> Run {
    match command {
        Command::Validate { space } => validate(&space),
        Command::Amalgamate {
            first,
            second,
            policy,
        } => {
            let a = amalgamate(
                &read_space(&first)?,
                &read_space(&second)?,
                &AmalgamPolicy::Choose(policy.into()),
            )?;
            Ok(Outcome::ok(write_ums(&a.space)))
        }
        Command::ExtendBilip {
            space,
            map,
            center,
            radius,
            points,
            side,
            k,
            n,
            policy,
            glue,
        } => {
            let s = read_space(&space)?;
            let f = parse_map(&read(&map)?, &s)?;
            let ball = Ball::new(label_index(&s, &center)?, radius)?;
            let targets = points
                .iter()
                .map(|l| label_index(&s, l))
                .collect::<Result<Vec<_>, _>>()?;
            let kn = KnParams::new(k, n);
            let (space, trace) = extend_bilip(&s, f, ball, kn, &targets, side, policy.into())?;
            let mut report = export_trace(&trace, &space);
            if glue {
                let g = glue_identity_check(&space, &trace.final_map, &trace.ball, &trace.kn)?;
                let _ = writeln!(
                    report,
                    "# glue holds={} outside={} lip={}",
                    g.holds, g.outside_points, g.lip
                );
                if !g.holds {
                    return Ok(Outcome::fail(report));
                }
            }
            Ok(Outcome::ok(report))
        }
        Command::ExtendMc {
            space,
            map,
            alpha,
            beta,
            point,
            nets,
        } => {
            let s = read_space(&space)?;
            let f = parse_map(&read(&map)?, &s)?;
            let (alpha, beta) = (read_modulus(&alpha)?, read_modulus(&beta)?);
            let p = label_index(&s, &point)?;
            match nets {
                None => {
                    let ext = extend_one_point_mc(&s, &f, &alpha, &beta, p)?;
                    let mut report = write_ums(&ext.space);
                    report.push_str(&write_map(&ext.map, &ext.space));
                    Ok(Outcome::ok(report))
                }
                Some(path) => {
                    let levels = parse_nets(&read(&path)?, &s)?;
                    let tr = extend_totally_bounded(&s, &f, &alpha, &beta, p, &levels)?;
                    let mut report = write_ums(&tr.space);
                    report.push_str(&write_map(&tr.final_map, &tr.space));
                    for (i, q) in tr.points.iter().enumerate() {
                        let _ = writeln!(report, "# q{i} = {}", tr.space.label(*q));
                    }
                    for (i, gap) in tr.gaps.iter().enumerate() {
                        let _ = writeln!(report, "# gap {i} {gap}");
                    }
                    Ok(Outcome::ok(report))
                }
            }
        }
        Command::Counterexample {
            alpha,
            beta,
            s,
            t,
            bound,
        } => counterexample(&read_modulus(&alpha)?, &read_modulus(&beta)?, s, t, &bound),
        Command::Witness {
            gamma,
            family,
            depth,
        } => {
            let gamma = read_modulus(&gamma)?;
            let family = parse_family(&family)?;
            let w = separation_witness(&gamma, &family, depth)?;
            let mut report = write_ums(&w.space);
            report.push_str(&write_map(&w.map, &w.space));
            for g in &w.per_generator {
                for (t, gt, dt) in &g.scales {
                    let _ = writeln!(
                        report,
                        "# generator {} t={t} gamma={gt} delta={dt}",
                        g.generator
                    );
                }
            }
            if let Some(b) = &w.bicontinuity_failure {
                let _ = writeln!(report, "# bicontinuity fails: {}", b.describe(&w.space));
            }
            let _ = writeln!(report, "# holds {}", w.holds());
            Ok(if w.holds() {
                Outcome::ok(report)
            } else {
                Outcome::fail(report)
            })
        }
        Command::GroupDist {
            space,
            f,
            g,
            basepoint,
        } => {
            let s = read_space(&space)?;
            let b = label_index(&s, &basepoint)?;
            let f = AutoMap::from_partial(&parse_map(&read(&f)?, &s)?, &s, b)?;
            let g = AutoMap::from_partial(&parse_map(&read(&g)?, &s)?, &s, b)?;
            let hat = dist_hat(&f, &g, &s)?;
            let mut report = String::new();
            let _ = writeln!(report, "lip {}", dist_l(&f, &g, &s)?);
            let _ = writeln!(report, "sum {}", dist_s(&f, &g, &s)?);
            let _ = writeln!(
                report,
                "hat ({}, {}) ~ {:.6}",
                hat.lip,
                hat.sum,
                hat.to_f64()
            );
            Ok(Outcome::ok(report))
        }
        Command::VerifyTrace { trace } => {
            let bundle = parse_trace(&read(&trace)?)?;
            let verdict = verify_trace(&bundle);
            let mut report = String::new();
            for failure in &verdict.failures {
                let _ = writeln!(report, "FAIL {failure}");
            }
            let _ = writeln!(
                report,
                "{} steps, {}",
                bundle.steps.len(),
                if verdict.ok() { "ok" } else { "rejected" }
            );
            Ok(if verdict.ok() {
                Outcome::ok(report)
            } else {
                Outcome::fail(report)
            })
        }
        Command::Fuzz {
            seed,
            count,
            campaign,
        } => Ok(fuzz(seed, count, campaign)),
    }
}

fn validate(path: &Path) -> Run {
    let s = read_space(path)?;
    let report = s.validate();
    let mut text = String::new();
    for line in report.describe(&s) {
        let _ = writeln!(text, "{line}");
    }
    if report.is_valid() {
        let _ = writeln!(text, "{} points, metric", s.len());
        Ok(Outcome::ok(text))
    } else {
        Ok(Outcome::fail(text))
    }
}

fn extend_bilip(
    space: &FiniteMetricSpace,
    f: urysohn::PartialMap,
    ball: Ball,
    kn: KnParams,
    targets: &[usize],
    side: SideArg,
    choice: Choice,
) -> Result<(FiniteMetricSpace, ExtensionTrace), Failure> {
    let side = match side {
        SideArg::D => Side::Domain,
        SideArg::R => Side::Range,
        SideArg::Both => {
            let d = extend_dense(space, &f, &ball, &kn, targets, choice)?;
            return Ok((d.space, d.trace));
        }
    };
    let mut space = space.clone();
    let mut map = f.clone();
    let mut steps = Vec::new();
    for &t in targets {
        let ext = extend_one_point(&space, &map, &ball, &kn, t, side, choice)?;
        space = ext.space;
        map = ext.map;
        steps.extend(ext.step);
    }
    let trace = ExtensionTrace {
        ball,
        kn,
        initial: f,
        steps,
        final_map: map,
    };
    Ok((space, trace))
}

fn counterexample(
    alpha: &Modulus,
    beta: &Modulus,
    s: Option<Rational>,
    t: Option<Rational>,
    bound: &Rational,
) -> Run {
    let (s, t) = match (s, t) {
        (Some(s), Some(t)) => (s, t),
        (None, None) => {
            let report = compatible(alpha, beta, bound);
            match report.witness {
                Some(w) => (w.s, w.t),
                None => {
                    return Err(Error::Precondition(format!(
                        "no violating (s, t) in [0, {bound}]²; the pair may be compatible"
                    ))
                    .into())
                }
            }
        }
        _ => return Err(Error::Structural("give both --s and --t, or neither".into()).into()),
    };
    let c = necessity_counterexample(alpha, beta, &s, &t)?;
    let mut report = format!("{c}\n");
    report.push_str(&write_ums(&c.domain));
    report.push_str(&write_ums(&c.range));
    Ok(if c.certificate_holds() {
        Outcome::fail(report)
    } else {
        Outcome::ok(report)
    })
}

fn parse_family(text: &str) -> Result<McSemigroup, Failure> {
    let bad = || {
        Failure::from(Error::Parse {
            line: 0,
            message: format!("bad family `{text}`"),
        })
    };
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| s.parse::<u32>().map_err(|_| bad());
    match parts[..] {
        ["lipschitz", n] => Ok(McSemigroup::lipschitz(num(n)?)?),
        ["holder", roots, depth] => Ok(McSemigroup::holder(num(roots)?, num(depth)?)?),
        _ => Err(bad()),
    }
}

/// Per-instance generator: independent of the count and of other campaigns.
fn instance_rng(seed: u64, campaign: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(campaign);
    rng.set_word_pos(u128::from(i) << 20);
    ChaCha8Rng::seed_from_u64(rng.gen())
}

type Check = fn(&mut ChaCha8Rng) -> Result<(), String>;

fn fuzz(seed: u64, count: u64, campaign: Campaign) -> Outcome {
    let all: [(Campaign, &str, Check); 4] = [
        (Campaign::Metric, "metric", fuzz_metric),
        (Campaign::Bilip, "bilip", fuzz_bilip),
        (Campaign::Mc, "mc", fuzz_mc),
        (Campaign::Group, "group", fuzz_group),
    ];
    let mut report = String::new();
    let mut failed = false;
    for (tag, (c, name, check)) in all.iter().enumerate() {
        if !matches!(campaign, Campaign::All)
            && std::mem::discriminant(c) != std::mem::discriminant(&campaign)
        {
            continue;
        }
        let mut failures = 0;
        for i in 0..count {
            let mut rng = instance_rng(seed, tag as u64, i);
            if let Err(msg) = check(&mut rng) {
                failures += 1;
                let _ = writeln!(report, "{name} instance {i}: {msg}");
            }
        }
        failed |= failures > 0;
        let _ = writeln!(report, "{name}: {count} instances, {failures} failures");
    }
    if failed {
        Outcome::fail(report)
    } else {
        Outcome::ok(report)
    }
}

fn random_plane(rng: &mut ChaCha8Rng, n: usize, prefix: &str) -> FiniteMetricSpace {
    let mut pts = Vec::new();
    while pts.len() < n {
        let p = (
            Rational::new(rng.gen_range(0..=32).into(), 4.into()),
            Rational::new(rng.gen_range(0..=32).into(), 4.into()),
        );
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    plane_space(&pts, (0..n).map(|i| format!("{prefix}{i}")).collect())
}

fn fuzz_metric(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(3..=7);
    let whole = random_plane(rng, n, "a");
    let shared = rng.gen_range(1..n);
    let x0 = whole.restrict(&(0..=shared).collect::<Vec<_>>());
    let mut x1_points: Vec<usize> = (0..shared).collect();
    x1_points.extend(shared + 1..n);
    let x1 = whole.restrict(&x1_points);
    let choice = [Choice::Minimal, Choice::Midpoint, Choice::Maximal][rng.gen_range(0..3)];
    let a = amalgamate(&x0, &x1, &AmalgamPolicy::Choose(choice)).map_err(|e| e.to_string())?;
    if !a.space.is_metric() {
        return Err("amalgam is not a metric".into());
    }
    for i in 0..x1.len() {
        for j in 0..x1.len() {
            if a.space.dist(a.embedding[i], a.embedding[j]) != x1.dist(i, j) {
                return Err("second space is not embedded isometrically".into());
            }
        }
    }
    let back = parse_ums(&write_ums(&a.space)).map_err(|e| e.to_string())?;
    if back != a.space {
        return Err("UMS round trip changed the space".into());
    }
    Ok(())
}

fn fuzz_bilip(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let shape = InstanceShape {
        domain: rng.gen_range(1..=3),
        targets: rng.gen_range(1..=2),
        outside: rng.gen_range(0..=2),
    };
    let inst = compliant_instance(rng, shape);
    let choice = [Choice::Minimal, Choice::Midpoint, Choice::Maximal][rng.gen_range(0..3)];
    let d = extend_dense(
        &inst.space,
        &inst.map,
        &inst.ball,
        &inst.kn,
        &inst.targets,
        choice,
    )
    .map_err(|e| e.to_string())?;
    let cert = is_compliant(&d.map, &inst.ball, &inst.kn, &d.space).map_err(|e| e.to_string())?;
    if !cert.compliant {
        return Err("extension is not compliant".into());
    }
    let bundle = parse_trace(&write_bundle(&TraceBundle::from_trace(&d.trace, &d.space)))
        .map_err(|e| e.to_string())?;
    let verdict = verify_trace(&bundle);
    if !verdict.ok() {
        return Err(format!("trace rejected: {:?}", verdict.failures));
    }
    Ok(())
}

fn fuzz_mc(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let domain = rng.gen_range(2..=4);
    let inst = compatible_instance(rng, domain);
    let ext = extend_one_point_mc(&inst.space, &inst.map, &inst.alpha, &inst.beta, inst.p)
        .map_err(|e| e.to_string())?;
    if let Some(w) = bicontinuity_check(&ext.map, &inst.alpha, &inst.beta, &ext.space) {
        return Err(w.describe(&ext.space));
    }
    if !ext.space.is_metric() {
        return Err("workspace is not a metric".into());
    }
    Ok(())
}

fn fuzz_group(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(2..=8);
    let s = random_plane(rng, n, "w");
    let f = random_automap(n, 0, rng);
    let g = random_automap(n, 0, rng);
    let h = random_automap(n, 0, rng);
    let d = |a: &AutoMap, b: &AutoMap| dist_hat(a, b, &s).map_err(|e| e.to_string());
    let (fg, gh, fh) = (d(&f, &g)?, d(&g, &h)?, d(&f, &h)?);
    if fg != d(&g, &f)? {
        return Err("distance is not symmetric".into());
    }
    if fg.is_zero() != (f == g) {
        return Err("distance zero does not match equality".into());
    }
    if !fh.within_sum(&fg, &gh) {
        return Err("triangle inequality fails".into());
    }
    Ok(())
}
