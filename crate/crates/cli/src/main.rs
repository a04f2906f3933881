//! `gieseker`: command-line front end for the gieseker-core library.
//!
//! Exit codes: 0 success, 1 failed verdict under `--strict`, 2 usage or
//! malformed input, 3 internal invariant violation (or a failed selftest).

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gieseker_core::charts::{embed_chart, gm_weights, line_bundle_transition, transition_u, transition_z, verify_charts};
use gieseker_core::rational::parse_list;
use gieseker_core::selftest::{self, SelfCheck};
use gieseker_core::semistability::{counterexample_gl2, tf_semistability_verdict};
use gieseker_core::{
    fiber_description, ApartmentPoint, BalancedWeights, CyclicType, Error, LacedBundleData, Lacing, McKayData, Mode,
    Rational, RepresentationWeights, RootDatum, WeightedFiltration,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "gieseker", version, about = "Alcoves, local types, fiber weights and stability checks")]
struct Cli {
    /// Print JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alcove geometry of a root datum.
    Alcove {
        #[command(subcommand)]
        command: AlcoveCommand,
    },
    /// Weight, dual, order and admissibility of a cyclic type.
    Type {
        #[command(flatten)]
        tau: TypeArgs,
        /// Also push the type through a representation.
        #[arg(long, value_enum)]
        push: Option<Rep>,
    },
    /// McKay correspondence data for the cyclic group of order d.
    Mckay {
        #[arg(long)]
        d: i64,
    },
    /// Fiber weights over the exceptional chain for a local type.
    Fibers {
        #[command(flatten)]
        tau: TypeArgs,
    },
    /// Parabolic degree of a laced bundle.
    Pardeg {
        #[arg(long, allow_hyphen_values = true)]
        deg: i64,
        /// Weights with multiplicities, e.g. "0:1,1/2:3".
        #[arg(long)]
        weights: String,
        #[arg(long, value_enum, default_value = "full")]
        lacing: LacingArg,
    },
    /// Slope verdict over a batch of weighted filtrations.
    Verdict {
        #[arg(long, default_value = "semi")]
        mode: Mode,
        /// JSON array of filtrations; "-" reads standard input.
        #[arg(long)]
        filtrations: PathBuf,
        /// Exit with status 1 when the verdict fails.
        #[arg(long)]
        strict: bool,
    },
    /// The rank-2 counterexample to the naive tensor-product test.
    Counterexample,
    /// Transition maps and torus weights of the expanded degeneration charts.
    Charts {
        #[arg(long)]
        d: usize,
        /// Check every chart identity instead of printing the maps.
        #[arg(long)]
        verify: bool,
    },
    /// Run the invariant battery.
    Selftest,
}

#[derive(Subcommand)]
enum AlcoveCommand {
    /// Barycenter, index and denominator of a facet.
    Facet {
        #[command(flatten)]
        lie: LieArg,
        /// Facet members, a nonempty subset of 0..=rank.
        #[arg(long = "M", alias = "members", value_delimiter = ',', required = true)]
        members: Vec<usize>,
    },
    /// Vertices of the alcove.
    Vertices {
        #[command(flatten)]
        lie: LieArg,
    },
    /// Whether a point lies in the closed alcove.
    Contains {
        #[command(flatten)]
        lie: LieArg,
        /// Fundamental-coweight coordinates, e.g. "1/3,1/3".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Parahoric root indices m_r for a set of points.
    Indices {
        #[command(flatten)]
        lie: LieArg,
        /// Points separated by ';', e.g. "0,0;1/3,1/3".
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
}

#[derive(Args)]
struct LieArg {
    /// Lie type label such as A2, E8 or G2.
    #[arg(long = "lie", visible_alias = "type")]
    lie: String,
}

#[derive(Args)]
struct TypeArgs {
    #[command(flatten)]
    lie: LieArg,
    #[arg(long)]
    d: i64,
    /// Residues a_1..a_l, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    a: Vec<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    Adjoint,
    Standard,
}

#[derive(Clone, Copy, ValueEnum)]
enum LacingArg {
    Full,
    Uni,
}

/// What a subcommand prints and how it exits.
struct Output {
    json: String,
    text: String,
    code: u8,
}

impl Output {
    fn new<T: Serialize>(payload: &T, text: String) -> anyhow::Result<Self> {
        Ok(Output {
            json: serde_json::to_string_pretty(payload)?,
            text,
            code: 0,
        })
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

fn datum(lie: &LieArg) -> anyhow::Result<RootDatum> {
    Ok(RootDatum::from_label(&lie.lie)?)
}

fn point(rd: &RootDatum, s: &str) -> anyhow::Result<ApartmentPoint> {
    let coords = parse_list(s)?;
    if coords.len() != rd.rank() {
        return Err(Error::DimensionMismatch {
            expected: rd.rank(),
            got: coords.len(),
        }
        .into());
    }
    Ok(ApartmentPoint::new(coords))
}

fn fmt_point(p: &ApartmentPoint) -> String {
    fmt_list(p.coords())
}

fn fmt_list<T: std::fmt::Display>(xs: &[T]) -> String {
    let items: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("({})", items.join(", "))
}

fn fmt_matrix(m: &[Vec<i64>], indent: &str) -> String {
    m.iter().map(|r| format!("{indent}{}\n", fmt_list(r))).collect()
}

fn alcove(cmd: AlcoveCommand) -> anyhow::Result<Output> {
    match cmd {
        AlcoveCommand::Facet { lie, members } => {
            let rd = datum(&lie)?;
            let f = rd.facet(&members)?;
            let text = format!(
                "type         {}\nM            {}\nh_M          {}\nbarycenter   {}\nd_M          {}\n",
                rd.lie_type,
                fmt_list(&f.members),
                f.index,
                fmt_point(&f.barycenter),
                f.denominator
            );
            Output::new(&f, text)
        }
        AlcoveCommand::Vertices { lie } => {
            let rd = datum(&lie)?;
            let vs = rd.alcove_vertices();
            let text = vs
                .iter()
                .enumerate()
                .map(|(j, v)| format!("theta_{j}  {}\n", fmt_point(v)))
                .collect();
            Output::new(&vs, text)
        }
        AlcoveCommand::Contains { lie, point: s } => {
            let rd = datum(&lie)?;
            let p = point(&rd, &s)?;
            #[derive(Serialize)]
            struct Contains {
                point: ApartmentPoint,
                affine_roots: Vec<Rational>,
                in_alcove: bool,
            }
            let out = Contains {
                affine_roots: rd.basic_affine_roots(&p)?,
                in_alcove: rd.in_alcove(&p)?,
                point: p,
            };
            let text = format!(
                "point          {}\naffine roots   {}\nin alcove      {}\n",
                fmt_point(&out.point),
                fmt_list(&out.affine_roots),
                out.in_alcove
            );
            Output::new(&out, text)
        }
        AlcoveCommand::Indices { lie, points } => {
            let rd = datum(&lie)?;
            let pts = points
                .split(';')
                .map(|s| point(&rd, s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            #[derive(Serialize)]
            struct Index {
                root: Vec<i64>,
                m: i64,
            }
            let rows: Vec<Index> = rd
                .parahoric_indices(&pts)?
                .into_iter()
                .map(|(root, m)| Index { root, m })
                .collect();
            let text = rows.iter().map(|r| format!("{:<24} {}\n", fmt_list(&r.root), r.m)).collect();
            Output::new(&rows, text)
        }
    }
}

fn cyclic_type(rd: &RootDatum, args: &TypeArgs) -> anyhow::Result<CyclicType> {
    let tau = CyclicType::new(args.d, args.a.clone())?;
    if tau.rank() != rd.rank() {
        return Err(Error::DimensionMismatch {
            expected: rd.rank(),
            got: tau.rank(),
        }
        .into());
    }
    Ok(tau)
}

fn type_info(args: TypeArgs, push: Option<Rep>) -> anyhow::Result<Output> {
    let rd = datum(&args.lie)?;
    let tau = cyclic_type(&rd, &args)?;
    #[derive(Serialize)]
    struct TypeInfo {
        lie_type: String,
        tau: CyclicType,
        weight: ApartmentPoint,
        in_alcove: bool,
        balanced_dual: CyclicType,
        order: i64,
        injective: bool,
        missing_residues: Vec<i64>,
        admissible: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        pushed: Option<Vec<i64>>,
    }
    let adm = tau.admissibility(&rd)?;
    let pushed = match push {
        None => None,
        Some(Rep::Adjoint) => Some(tau.push_type(&RepresentationWeights::adjoint(&rd))?),
        Some(Rep::Standard) => Some(tau.push_type(&RepresentationWeights::sl_standard(rd.rank()))?),
    };
    let weight = tau.type_to_weight();
    let info = TypeInfo {
        lie_type: rd.lie_type.to_string(),
        in_alcove: rd.in_alcove(&weight)?,
        weight,
        balanced_dual: tau.balanced_dual(),
        order: tau.order(&rd)?,
        injective: adm.injective,
        admissible: adm.is_admissible(),
        missing_residues: adm.missing_residues,
        pushed,
        tau,
    };
    let mut text = format!(
        "type             {} {}\nweight           {}\nin alcove        {}\nbalanced dual    {}\norder            {}\ninjective        {}\nmissing residues {}\nadmissible       {}\n",
        info.lie_type,
        info.tau,
        fmt_point(&info.weight),
        info.in_alcove,
        info.balanced_dual,
        info.order,
        info.injective,
        fmt_list(&info.missing_residues),
        info.admissible
    );
    if let Some(p) = &info.pushed {
        writeln!(text, "pushed residues  {}", fmt_list(p))?;
    }
    Output::new(&info, text)
}

fn mckay(d: i64) -> anyhow::Result<Output> {
    let data = McKayData::new(d)?;
    let mut text = format!("d = {d}\n s   generators (u^i v^j)   ideal (x^a y^b t^c)     component\n");
    for r in &data.rows {
        let g = format!("u^{} v^{}, u^{} v^{}", r.generators[0][0], r.generators[0][1], r.generators[1][0], r.generators[1][1]);
        let i = format!(
            "x^{} y^{} t^{}, x^{} y^{} t^{}",
            r.ideal[0][0], r.ideal[0][1], r.ideal[0][2], r.ideal[1][0], r.ideal[1][1], r.ideal[1][2]
        );
        writeln!(text, "{:>2}   {g:<22} {i:<23} R_{}", r.s, r.component)?;
    }
    text.push_str("intersection matrix\n");
    text.push_str(&fmt_matrix(&data.intersection_matrix, "  "));
    Output::new(&data, text)
}

fn fibers(args: TypeArgs) -> anyhow::Result<Output> {
    let rd = datum(&args.lie)?;
    let tau = cyclic_type(&rd, &args)?;
    let fd = fiber_description(&rd, &tau)?;
    let mut text = format!(
        "type              {} {}\nbarycentric c     {}\ngroups            {}\ngroup mass        {}\ncharacter order   {}\nties              {}\ntrivial weight    {}\n",
        fd.lie_type,
        fd.tau,
        fmt_list(fd.barycentric.c()),
        fd.groups.iter().map(|g| fmt_list(g)).collect::<Vec<_>>().join(" "),
        fmt_list(&fd.group_mass),
        fmt_list(&fd.character_order),
        fd.ties,
        fmt_point(&fd.trivial_weight)
    );
    for (t, w) in fd.chain_weights.iter().enumerate() {
        writeln!(text, "chain R_{:<9} {}", t + 1, fmt_point(w))?;
    }
    let nodes: Vec<String> = fd.node_weights.iter().map(fmt_point).collect();
    writeln!(text, "fiber chain       {} - {} - {}", fd.left_branch, nodes.join(" - "), fd.right_branch)?;
    Output::new(&fd, text)
}

fn pardeg(deg: i64, weights: &str, lacing: LacingArg) -> anyhow::Result<Output> {
    let lacing = match lacing {
        LacingArg::Full => Lacing::Full,
        LacingArg::Uni => Lacing::Uni,
    };
    let w = BalancedWeights::parse(weights)?;
    let b = LacedBundleData::new(deg, w, lacing);
    #[derive(Serialize)]
    struct ParDeg<'a> {
        bundle: &'a LacedBundleData,
        dual_weights: Vec<Rational>,
        dual_multiplicities: Vec<u64>,
        l: u64,
        par_deg: Rational,
    }
    let out = ParDeg {
        par_deg: b.try_par_deg()?,
        dual_weights: b.weights.dual_weights(),
        dual_multiplicities: b.weights.dual_multiplicities(),
        l: b.weights.l(),
        bundle: &b,
    };
    let text = format!(
        "deg                 {}\nweights             {}\nmultiplicities      {}\ndual weights        {}\ndual multiplicities {}\nl                   {}\npar.deg             {}\n",
        deg,
        fmt_list(b.weights.alpha()),
        fmt_list(b.weights.k()),
        fmt_list(&out.dual_weights),
        fmt_list(&out.dual_multiplicities),
        out.l,
        out.par_deg
    );
    Output::new(&out, text)
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn verdict(mode: Mode, path: &PathBuf, strict: bool) -> anyhow::Result<Output> {
    let filtrations: Vec<WeightedFiltration> =
        serde_json::from_str(&read_input(path)?).with_context(|| format!("parsing filtrations in {}", path.display()))?;
    let v = tf_semistability_verdict(&filtrations, mode);
    let mut text = String::from(" #   gammas               slope\n");
    for (i, (f, s)) in filtrations.iter().zip(&v.slopes).enumerate() {
        let mark = if v.witness == Some(i) { "  <- witness" } else { "" };
        writeln!(text, "{i:>2}   {:<20} {s}{mark}", fmt_list(&f.gammas))?;
    }
    writeln!(text, "mode {:?}: {}{}", mode, if v.pass { "pass" } else { "fail" }, if v.vacuous { " (vacuous)" } else { "" })?;
    let code = if strict && !v.pass { 1 } else { 0 };
    Ok(Output::new(&v, text)?.with_code(code))
}

fn counterexample() -> anyhow::Result<Output> {
    let r = counterexample_gl2();
    let mut text = String::new();
    for s in &r.steps {
        writeln!(text, "{:<30} {:>3}   {}", s.name, s.value, s.note)?;
    }
    writeln!(
        text,
        "verdict (semi)                 {}   witness {}, slope {}",
        if r.verdict.pass { "pass" } else { "fail" },
        r.verdict.witness.map_or_else(|| "-".to_string(), |i| i.to_string()),
        r.verdict.witness_slope.as_ref().map_or_else(|| "-".to_string(), Rational::to_string)
    )?;
    Output::new(&r, text)
}

fn charts(d: usize, verify: bool) -> anyhow::Result<Output> {
    if verify {
        let checks = verify_charts(d)?;
        let mut text = String::new();
        for c in &checks {
            writeln!(text, "{}  {}", if c.pass { "ok  " } else { "FAIL" }, c.name)?;
            if let Some(m) = &c.offending {
                text.push_str(&fmt_matrix(m, "      "));
            }
        }
        let code = if checks.iter().all(|c| c.pass) { 0 } else { 3 };
        return Ok(Output::new(&checks, text)?.with_code(code));
    }
    #[derive(Serialize)]
    struct Chart {
        ell: usize,
        gm_weights: Vec<Vec<i64>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        transition_to_next: Option<Vec<Vec<i64>>>,
    }
    #[derive(Serialize)]
    struct Charts {
        d: usize,
        charts: Vec<Chart>,
        transition_u: Vec<Vec<i64>>,
        embed_chart_1: Vec<Vec<i64>>,
        line_bundle_transition: Vec<Vec<i64>>,
    }
    if d == 0 {
        bail!(Error::InvalidInput("d must be at least 1".into()));
    }
    let charts = (1..=d)
        .map(|ell| {
            Ok(Chart {
                ell,
                gm_weights: gm_weights(ell, d)?,
                transition_to_next: if ell < d { Some(transition_z(ell, d)?.exponents().to_vec()) } else { None },
            })
        })
        .collect::<gieseker_core::Result<Vec<_>>>()?;
    let out = Charts {
        d,
        charts,
        transition_u: transition_u().exponents().to_vec(),
        embed_chart_1: embed_chart(1)?.exponents().to_vec(),
        line_bundle_transition: line_bundle_transition().exponents().to_vec(),
    };
    let mut text = format!("d = {d}\n");
    for c in &out.charts {
        writeln!(text, "chart {}\n  torus weights", c.ell)?;
        text.push_str(&fmt_matrix(&c.gm_weights, "    "));
        if let Some(t) = &c.transition_to_next {
            writeln!(text, "  transition to chart {}", c.ell + 1)?;
            text.push_str(&fmt_matrix(t, "    "));
        }
    }
    text.push_str("transition U\n");
    text.push_str(&fmt_matrix(&out.transition_u, "  "));
    text.push_str("line bundle transition\n");
    text.push_str(&fmt_matrix(&out.line_bundle_transition, "  "));
    Output::new(&out, text)
}

fn selftest() -> anyhow::Result<Output> {
    let checks: Vec<SelfCheck> = selftest::run();
    let mut text = String::new();
    for c in &checks {
        let tag = match (c.pass, c.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        writeln!(text, "{tag}  {}: {}", c.name, c.detail)?;
    }
    let code = if selftest::all_pass(&checks) { 0 } else { 3 };
    Ok(Output::new(&checks, text)?.with_code(code))
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    match cli.command {
        Command::Alcove { command } => alcove(command),
        Command::Type { tau, push } => type_info(tau, push),
        Command::Mckay { d } => mckay(d),
        Command::Fibers { tau } => fibers(tau),
        Command::Pardeg { deg, weights, lacing } => pardeg(deg, &weights, lacing),
        Command::Verdict { mode, filtrations, strict } => verdict(mode, &filtrations, strict),
        Command::Counterexample => counterexample(),
        Command::Charts { d, verify } => charts(d, verify),
        Command::Selftest => selftest(),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvariantViolation(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
